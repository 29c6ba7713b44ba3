//! Built-in quotient graphs, their loop coordinates and the phase
//! parameters a constant field induces on them.

use wirenet::geometry::{d_params_from_field, g_params_from_field, ExponentConvention, FieldB, LatticeSpec};

fn main() -> wirenet::Result<()> {
    for name in ["P", "D", "G"] {
        let spec = LatticeSpec::builtin(name)?;
        spec.validate()?;
        println!(
            "{name}: {} vertices, {} edges, loops {:?}, loops generate lattice: {}",
            spec.vertices,
            spec.edges.len(),
            spec.loop_coordinates()?,
            spec.loops_generate_lattice()?
        );
    }
    let b = FieldB::new(0.3, -0.2, 0.7);
    let d = d_params_from_field(&b, ExponentConvention::TorusUnits);
    println!("D chi = {:?}", d.chi);
    println!("D q   = {:?}", d.q);
    println!("eighth-power residual {:.1e}", d.eighth_power_residual());
    let g = g_params_from_field(&b);
    println!("G phi = {:?}, Phi = {}", g.phi, g.phi_product);
    Ok(())
}
