//! Closure verdicts against the classification theorems at a few exact
//! parameter points.

use wirenet::closure::{classify_point, ClassifyConfig, ParamPoint};
use wirenet::geometry::{DPoint, GPoint};
use wirenet::phase::Phase;

fn main() -> wirenet::Result<()> {
    let ph = |n, d| Phase::new(n, d);
    let points = [
        ParamPoint::D(DPoint::new([Phase::ONE; 3])),
        ParamPoint::D(DPoint::new([ph(1, 8), ph(1, 8), Phase::ONE])),
        ParamPoint::D(DPoint::new([ph(1, 4); 3])),
        ParamPoint::D(DPoint::new([ph(1, 16), ph(1, 8), ph(3, 16)])),
        ParamPoint::G(GPoint::new([ph(1, 4), ph(3, 4), Phase::ONE])),
        ParamPoint::G(GPoint::new([ph(1, 8), ph(3, 8), ph(5, 8)])),
    ];
    let cfg = ClassifyConfig::default();
    for p in &points {
        let v = classify_point(p, &cfg)?;
        println!(
            "{:<10} observed {:<17} closure {:>3}/{:<3} agree={}",
            v.predicted_case,
            format!("{:?}", v.observed),
            v.closure_dim,
            v.reference_full_dim,
            v.agree
        );
    }
    Ok(())
}
