//! Symbolic algebra evaluated in concrete torus representations.

use proptest::prelude::*;

use wirenet::geometry::LatticeKind;
use wirenet::linalg::{hermiticity_defect, max_abs};
use wirenet::repn::{evaluator, harper_rep, LatticeParams, RationalSkew, RepMode, TorusRep, Twist};
use wirenet::symbolic::{verify_x1, PhasePoly, SymbolicLattice, TorusElement, TorusMatrix};

fn kind(i: usize) -> LatticeKind {
    [LatticeKind::P, LatticeKind::D, LatticeKind::G][i]
}

fn element(terms: &[([i32; 3], i64, [i32; 3])]) -> TorusElement {
    let mut x = TorusElement::zero();
    for &(w, c, e) in terms {
        x.add_term(w, &PhasePoly::term(c, e));
    }
    x
}

fn term() -> impl Strategy<Value = ([i32; 3], i64, [i32; 3])> {
    (prop::array::uniform3(-2i32..=2), -3i64..=3, prop::array::uniform3(-4i32..=4))
}

fn rep(skew: ([i64; 3], i64), turns: [f64; 3]) -> TorusRep {
    let s = RationalSkew::new(skew.0, skew.1).unwrap();
    TorusRep::new(s, Twist::from_turns(turns), RepMode::General).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn evaluation_is_a_star_homomorphism(
        k in 0usize..3,
        p in prop::array::uniform3(0i64..3),
        n in 1i64..=3,
        turns in prop::array::uniform3(0.0f64..1.0),
        xs in prop::collection::vec(term(), 1..4),
        ys in prop::collection::vec(term(), 1..4),
    ) {
        let lat = SymbolicLattice::new(kind(k));
        let r = rep((p.map(|v| v % n), n), turns);
        let ev = evaluator(&lat, &r, &LatticeParams::None).unwrap();
        let (x, y) = (element(&xs), element(&ys));
        let alg = &lat.algebra;
        let lhs = ev.element(&alg.mul(&x, &y));
        let rhs = ev.element(&x) * ev.element(&y);
        let scale = 1.0 + max_abs(&rhs);
        prop_assert!(max_abs(&(lhs - rhs)) < 1e-10 * scale);
        let adj = ev.element(&alg.adjoint(&x)) - ev.element(&x).adjoint();
        prop_assert!(max_abs(&adj) < 1e-10 * scale);
    }

    #[test]
    fn harper_is_hermitian_in_every_rep(
        k in 0usize..3,
        p in prop::array::uniform3(0i64..4),
        n in 1i64..=4,
        turns in prop::array::uniform3(0.0f64..1.0),
    ) {
        let lat = SymbolicLattice::new(kind(k));
        let r = rep((p.map(|v| v % n), n), turns);
        let h = harper_rep(&lat, &r, &LatticeParams::None).unwrap();
        prop_assert_eq!(h.nrows(), lat.k() * r.dim);
        prop_assert!(hermiticity_defect(&h) < 1e-12);
    }
}

#[test]
fn matrix_products_evaluate_consistently() {
    for k in 0..3 {
        let lat = SymbolicLattice::new(kind(k));
        let r = rep(([1, 1, 0], 2), [0.13, 0.41, 0.77]);
        let ev = evaluator(&lat, &r, &LatticeParams::None).unwrap();
        let h = lat.harper();
        let h2: TorusMatrix = h.mul(&lat.algebra, &h);
        let direct = ev.matrix(&h) * ev.matrix(&h);
        assert!(max_abs(&(ev.matrix(&h2) - direct)) < 1e-10, "{:?}", kind(k));
    }
}

#[test]
fn inconsistent_symbols_are_rejected() {
    use wirenet::geometry::DPoint;
    use wirenet::phase::Phase;
    let lat = SymbolicLattice::new(LatticeKind::D);
    let r = rep(([0, 0, 0], 1), [0.0; 3]);
    let params = LatticeParams::D(DPoint::new([Phase::new(1, 4); 3]).params());
    assert!(evaluator(&lat, &r, &params).is_err());
}

#[test]
fn first_reduction_step() {
    assert!(verify_x1().passed());
}
