//! Normal-ordered arithmetic in the diamond torus algebra, the matrix Harper
//! operator, and the exact reduction chain down to a scalar multiple of E12.

use wirenet::geometry::LatticeKind;
use wirenet::symbolic::{verify_x3, verify_x6, SymbolicLattice, TorusElement};

fn main() {
    let d = SymbolicLattice::new(LatticeKind::D);
    let alg = &d.algebra;
    let (u, v) = (TorusElement::generator(0), TorusElement::generator(1));
    println!("UV      = {}", alg.display(&alg.mul(&u, &v)));
    println!("VU      = {}", alg.display(&alg.mul(&v, &u)));
    println!("[U, V]  = {}", alg.display(&alg.commutator(&u, &v)));
    let h = d.harper();
    println!("H Hermitian: {}", h.is_hermitian(alg));
    for ((i, j), x) in h.nonzero_entries() {
        println!("H[{i}][{j}] = {}", alg.display(x));
    }
    for r in [verify_x3(), verify_x6()] {
        println!("{}: {} ({} mismatches)", r.check, r.status, r.mismatches.len());
    }
}
