//! Structure of the fermionic diamond algebra, and the square-root elements
//! of the one-parameter families.

use wirenet::closure::{structure_check_family, structure_check_fermionic_d, Family, DEFAULT_TOL};
use wirenet::geometry::DPoint;
use wirenet::phase::Phase;
use wirenet::repn::Twist;

fn main() -> wirenet::Result<()> {
    let fermionic = DPoint::new([Phase::new(1, 4); 3]);
    let r = structure_check_fermionic_d(&fermionic, Twist::from_turns([0.25, 0.25, 0.0]), DEFAULT_TOL)?;
    println!("fermionic: checks {:?}, closure {}/{}", r.checks, r.closure_dim, r.reference_dim);
    println!("  E12 residual {:.3}", r.e12_residual);

    let ph = |n, d| Phase::new(n, d);
    let cases = [
        (Family::III, DPoint::new([Phase::ONE, ph(1, 8), ph(1, 8)])),
        (Family::IV, DPoint::new([ph(1, 8), Phase::ONE, ph(-1, 8)])),
        (Family::V, DPoint::new([ph(1, 8), ph(-1, 8), Phase::ONE])),
    ];
    for (f, p) in cases {
        let r = structure_check_family(&p, f, Twist::from_turns([0.1, 0.2, 0.3]), DEFAULT_TOL)?;
        println!(
            "{f:?}: (A*)^2 {:.1e}, B^2 {:.1e}, [A, rho] {:.3}, twisted {:.1e}, quotient {:?}",
            r.a_adjoint_squared, r.b_squared, r.torus_commutator, r.twisted_commutator, r.quotient
        );
    }
    Ok(())
}
