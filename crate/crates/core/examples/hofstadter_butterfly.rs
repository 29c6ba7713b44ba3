//! Band edges of the cubic lattice for every coprime flux up to a small
//! denominator, printed as a coarse text butterfly.

use wirenet::geometry::LatticeKind;
use wirenet::repn::{butterfly, coprime_fluxes};

fn main() -> wirenet::Result<()> {
    let fluxes = coprime_fluxes(&(1..=7).collect::<Vec<_>>());
    let b = butterfly(LatticeKind::P, 12, &fluxes, 4, 64)?;
    let width = 72;
    for f in &b.fluxes {
        let mut line = vec![' '; width];
        for [lo, hi] in &f.bands {
            let col = |e: f64| (((e + 6.0) / 12.0) * (width - 1) as f64).round() as usize;
            for c in col(*lo)..=col(*hi).min(width - 1) {
                line[c] = '#';
            }
        }
        println!("{:>2}/{:<2} {} gaps={}", f.num, f.den, line.iter().collect::<String>(), f.gaps);
    }
    Ok(())
}
