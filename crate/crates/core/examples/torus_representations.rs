//! Finite representations of rational noncommutative tori: clock and shift,
//! the tensor construction and the irreducible one.

use wirenet::repn::{clock, shift, RationalSkew, RepMode, TorusRep, Twist};

fn main() -> wirenet::Result<()> {
    let (c, s) = (clock(3)?, shift(3)?);
    println!("clock(3) = {c}shift(3) = {s}");

    let skew = RationalSkew::new([1, 2, 3], 4)?;
    let twist = Twist::from_turns([0.1, 0.25, 0.7]);
    for mode in [RepMode::General, RepMode::Reduced] {
        let rep = TorusRep::new(skew, twist, mode)?;
        println!(
            "{mode:?}: dim {}, relation defect {:.1e}, power defect {:.1e}",
            rep.dim,
            rep.defect(),
            rep.power_defect()
        );
    }
    let axis = TorusRep::new(RationalSkew::new([2, 0, 0], 5)?, twist, RepMode::AxisAligned)?;
    println!("AxisAligned at flux 2/5: dim {}", axis.dim);
    Ok(())
}
