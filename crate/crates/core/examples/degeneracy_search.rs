//! Grid scan of band degeneracies, compared to the three diamond circles,
//! then refinement of the gyroid's isolated crossings.

use std::f64::consts::TAU;

use wirenet::bloch::{d_locus_distance, degeneracy_scan, refine_degeneracies, BlochModel, RefineConfig};
use wirenet::geometry::LatticeSpec;

fn main() -> wirenet::Result<()> {
    let n = 32;
    let d = BlochModel::from_spec(&LatticeSpec::builtin("D")?)?;
    let scan = degeneracy_scan(&d, n, 1e-6)?;
    let worst = scan.points.iter().map(|p| d_locus_distance(p.angles)).fold(0.0, f64::max);
    println!(
        "D: {} flagged points, farthest {:.3} spacings from the circles",
        scan.points.len(),
        worst / (TAU / n as f64)
    );

    let g = BlochModel::from_spec(&LatticeSpec::builtin("G")?)?;
    let locus = refine_degeneracies(&g, 24, &RefineConfig::for_grid(24))?;
    println!("G: {} candidates, {} clusters", locus.candidates, locus.clusters.len());
    for c in &locus.clusters {
        println!("  at {:.4?} pattern {:?} energies {:.4?}", c.angles, c.multiplicity, c.eigenvalues);
    }
    Ok(())
}
