//! Zero-field spectra: the gyroid test character and the diamond closed form.

use wirenet::bloch::{d_closed_form, BlochModel, Character};
use wirenet::geometry::LatticeSpec;

fn main() -> wirenet::Result<()> {
    let g = BlochModel::from_spec(&LatticeSpec::builtin("G")?)?;
    let c = Character::real([-1.0, 1.0, -1.0])?;
    println!("G at (-1, 1, -1): {:?}", g.eigenvalues(&c)?);
    println!("sqrt 5 = {}", 5f64.sqrt());

    let d = BlochModel::from_spec(&LatticeSpec::builtin("D")?)?;
    let c = Character::from_angles([0.4, 1.9, -2.2]);
    println!("D numeric     {:?}", d.eigenvalues(&c)?);
    println!("D closed form {:?}", d_closed_form(&c));
    Ok(())
}
