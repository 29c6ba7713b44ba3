//! Finite unitary representations of rational noncommutative 3-tori.
//!
//! `U_i U_j = e^{2πiθ_ij} U_j U_i` with `θ_ij = p_ij/N`, realized by clock and
//! shift matrices. Unit twists sweep the characters of the center.

use std::f64::consts::PI;

use nalgebra::Matrix3;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{DParams, GParams, LatticeKind};
use crate::linalg::{hermitian_eigenvalues, max_abs};
use crate::symbolic::{CMatrix, Evaluator, SymbolicLattice};

const TAU: f64 = 2.0 * PI;
const REP_TOL: f64 = 1e-12;

pub fn unit(turn: f64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * turn)
}

/// `θ_12, θ_13, θ_23 = p_ij / N` with `p_ij` reduced into `[0, N)` and `N`
/// made minimal.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct RationalSkew {
    pub p: [i64; 3],
    pub n: i64,
    /// Factor removed from the denominator during normalization.
    pub reduced_by: i64,
}

impl RationalSkew {
    pub fn new(p: [i64; 3], n: i64) -> Result<RationalSkew> {
        if n < 1 {
            return Err(Error::Representation(format!("denominator {n} < 1")));
        }
        let p = p.map(|x| x.rem_euclid(n));
        let g = p.iter().fold(n, |g, x| g.gcd(x));
        Ok(RationalSkew { p: p.map(|x| x / g), n: n / g, reduced_by: g })
    }

    pub fn from_turns(t: [Rational64; 3]) -> Result<RationalSkew> {
        let n = t.iter().fold(1i64, |l, r| l.lcm(r.denom()));
        RationalSkew::new(t.map(|r| (r * Rational64::from_integer(n)).to_integer()), n)
    }

    pub fn zero() -> RationalSkew {
        RationalSkew { p: [0; 3], n: 1, reduced_by: 1 }
    }

    pub fn turns(&self) -> [f64; 3] {
        self.p.map(|x| x as f64 / self.n as f64)
    }

    pub fn phases(&self) -> [Complex64; 3] {
        self.turns().map(unit)
    }

    pub fn is_commutative(&self) -> bool {
        self.p == [0; 3]
    }

    /// Exponent vector `(p23, −p13, p12)/g` spanning the kernel of the skew form.
    fn kernel(&self) -> Option<[i64; 3]> {
        let [a, b, c] = self.p;
        let v = [c, -b, a];
        let g = v.iter().fold(0i64, |g, x| g.gcd(x));
        (g != 0).then(|| v.map(|x| x / g))
    }
}

#[derive(Copy, Clone, PartialEq, Debug, Serialize)]
pub struct Twist {
    pub lambda: [Complex64; 3],
}

impl Twist {
    pub fn trivial() -> Twist {
        Twist { lambda: [Complex64::new(1.0, 0.0); 3] }
    }

    pub fn new(lambda: [Complex64; 3]) -> Result<Twist> {
        for (i, l) in lambda.iter().enumerate() {
            if (l.norm() - 1.0).abs() > 1e-12 {
                return Err(Error::NonUnitCharacter { index: i, modulus: l.norm() });
            }
        }
        Ok(Twist { lambda })
    }

    pub fn from_turns(t: [f64; 3]) -> Twist {
        Twist { lambda: t.map(unit) }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
pub enum RepMode {
    /// `N³`-dimensional tensor construction, valid for any skew.
    General,
    /// `N`-dimensional clock/shift pair on the single nonzero pair.
    AxisAligned,
    /// Irreducible: dimension `N / gcd` after splitting off the kernel.
    Reduced,
}

#[derive(Clone, Debug)]
pub struct TorusRep {
    pub dim: usize,
    pub gens: [CMatrix; 3],
    pub skew: RationalSkew,
    pub twist: Twist,
    pub mode: RepMode,
}

pub fn clock(n: usize) -> Result<CMatrix> {
    if n < 1 {
        return Err(Error::Representation("clock of size 0".into()));
    }
    Ok(CMatrix::from_diagonal(&nalgebra::DVector::from_fn(n, |j, _| {
        unit(j as f64 / n as f64)
    })))
}

/// `S e_j = e_{j+1}`, so that `C S = ω S C`.
pub fn shift(n: usize) -> Result<CMatrix> {
    if n < 1 {
        return Err(Error::Representation("shift of size 0".into()));
    }
    let mut s = CMatrix::zeros(n, n);
    for j in 0..n {
        s[((j + 1) % n, j)] = Complex64::new(1.0, 0.0);
    }
    Ok(s)
}

fn mpow(m: &CMatrix, e: i64) -> CMatrix {
    let n = m.nrows();
    let base = if e < 0 { m.adjoint() } else { m.clone() };
    (0..e.abs()).fold(CMatrix::identity(n, n), |acc, _| acc * &base)
}

fn kron3(a: &CMatrix, b: &CMatrix, c: &CMatrix) -> CMatrix {
    a.kronecker(b).kronecker(c)
}

/// Unimodular integer matrix `A` with `A·v = e3` for a primitive vector `v`.
fn unimodular_to_e3(v: [i64; 3]) -> Matrix3<i64> {
    let mut a = Matrix3::<i64>::identity();
    let mut v = v;
    // Euclid on pairs of coordinates until only the last is nonzero.
    for (i, j) in [(0usize, 2usize), (1, 2)] {
        while v[i] != 0 {
            let q = v[j].div_euclid(v[i]);
            v[j] -= q * v[i];
            for c in 0..3 {
                a[(j, c)] -= q * a[(i, c)];
            }
            v.swap(i, j);
            a.swap_rows(i, j);
        }
    }
    if v[2] < 0 {
        for c in 0..3 {
            a[(2, c)] = -a[(2, c)];
            // keep det = ±1 by flipping a second row as well
            a[(0, c)] = -a[(0, c)];
        }
    }
    a
}

fn int_inverse(a: &Matrix3<i64>) -> Matrix3<i64> {
    let det = a[(0, 0)] * (a[(1, 1)] * a[(2, 2)] - a[(1, 2)] * a[(2, 1)])
        - a[(0, 1)] * (a[(1, 0)] * a[(2, 2)] - a[(1, 2)] * a[(2, 0)])
        + a[(0, 2)] * (a[(1, 0)] * a[(2, 1)] - a[(1, 1)] * a[(2, 0)]);
    assert!(det.abs() == 1, "not unimodular");
    let mut inv = Matrix3::zeros();
    for i in 0..3 {
        for j in 0..3 {
            let (r0, r1) = match j {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let (c0, c1) = match i {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let minor = a[(r0, c0)] * a[(r1, c1)] - a[(r0, c1)] * a[(r1, c0)];
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            inv[(i, j)] = sign * minor * det;
        }
    }
    inv
}

fn skew_form(p: [i64; 3]) -> Matrix3<i64> {
    let [a, b, c] = p;
    Matrix3::new(0, a, b, -a, 0, c, -b, -c, 0)
}

impl TorusRep {
    pub fn new(skew: RationalSkew, twist: Twist, mode: RepMode) -> Result<TorusRep> {
        let n = skew.n as usize;
        let [l1, l2, l3] = twist.lambda;
        let [p12, p13, p23] = skew.p;
        let gens = match mode {
            RepMode::General => {
                let (c, s) = (clock(n)?, shift(n)?);
                let one = CMatrix::identity(n, n);
                [
                    kron3(&mpow(&c, p12), &mpow(&c, p13), &one) * l1,
                    kron3(&s, &one, &mpow(&c, p23)) * l2,
                    kron3(&one, &s, &s) * l3,
                ]
            }
            RepMode::AxisAligned => {
                let nz: Vec<usize> = (0..3).filter(|&i| skew.p[i] != 0).collect();
                if nz.len() > 1 {
                    return Err(Error::Representation(format!(
                        "axis-aligned mode needs one nonzero skew entry, got {:?}",
                        skew.p
                    )));
                }
                let pair = nz.first().copied().unwrap_or(0);
                let (i, j) = [(0, 1), (0, 2), (1, 2)][pair];
                let one = CMatrix::identity(n, n);
                let mut g = [one.clone(), one.clone(), one];
                g[i] = mpow(&clock(n)?, skew.p[pair]);
                g[j] = shift(n)?;
                let [a, b, c] = g;
                [a * l1, b * l2, c * l3]
            }
            RepMode::Reduced => {
                let rep = reduced_rep(skew, twist);
                rep.verify()?;
                return Ok(rep);
            }
        };
        let rep = TorusRep { dim: gens[0].nrows(), gens, skew, twist, mode };
        rep.verify()?;
        Ok(rep)
    }

    /// Largest deviation from unitarity and from the commutation relations.
    pub fn defect(&self) -> f64 {
        let d = self.dim;
        let id = CMatrix::identity(d, d);
        let mut worst: f64 = 0.0;
        for g in &self.gens {
            worst = worst.max(max_abs(&(g * g.adjoint() - &id)));
        }
        let ph = self.skew.phases();
        for (k, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
            let (a, b) = (&self.gens[i], &self.gens[j]);
            worst = worst.max(max_abs(&(a * b - (b * a) * ph[k])));
        }
        worst
    }

    /// `U_i^N` is a scalar.
    pub fn power_defect(&self) -> f64 {
        self.gens
            .iter()
            .map(|g| {
                let p = mpow(g, self.skew.n);
                let s = p[(0, 0)];
                max_abs(&(p - CMatrix::identity(self.dim, self.dim) * s))
            })
            .fold(0.0, f64::max)
    }

    pub fn verify(&self) -> Result<()> {
        let d = self.defect();
        if d > REP_TOL {
            return Err(Error::Representation(format!("relation defect {d:.3e}")));
        }
        Ok(())
    }
}

fn reduced_rep(skew: RationalSkew, twist: Twist) -> TorusRep {
    let one = CMatrix::identity(1, 1);
    let Some(k) = skew.kernel() else {
        let gens = twist.lambda.map(|l| &one * l);
        return TorusRep { dim: 1, gens, skew, twist, mode: RepMode::Reduced };
    };
    // New basis columns (b1, b2, k): the form vanishes against k.
    let a = unimodular_to_e3(k);
    let basis = int_inverse(&a);
    let p = skew_form(skew.p);
    let b1 = basis.column(0).into_owned();
    let b2 = basis.column(1).into_owned();
    let r = (b1.transpose() * p * b2)[(0, 0)];
    let n = skew.n;
    let g = r.gcd(&n);
    let m = (n / g) as usize;
    let rp = (r / g).rem_euclid(m as i64);
    let x = [
        mpow(&clock(m).expect("m >= 1"), rp) * twist.lambda[0],
        shift(m).expect("m >= 1") * twist.lambda[1],
        CMatrix::identity(m, m) * twist.lambda[2],
    ];
    // U_i = X^{A e_i}.
    let gens = [0, 1, 2].map(|i| {
        let c = a.column(i);
        mpow(&x[0], c[0]) * mpow(&x[1], c[1]) * mpow(&x[2], c[2])
    });
    TorusRep { dim: m, gens, skew, twist, mode: RepMode::Reduced }
}

/// Phase-symbol values of a lattice algebra.
#[derive(Clone, Debug)]
pub enum LatticeParams {
    None,
    D(DParams),
    G(GParams),
}

impl LatticeParams {
    pub fn symbols(&self, kind: LatticeKind, skew: &RationalSkew) -> [Complex64; 3] {
        match self {
            LatticeParams::D(d) => d.chi,
            LatticeParams::G(g) => g.phi,
            LatticeParams::None => symbols_for_skew(kind, skew),
        }
    }
}

/// One choice of phase symbols whose commutators equal the skew phases.
pub fn symbols_for_skew(kind: LatticeKind, skew: &RationalSkew) -> [Complex64; 3] {
    let t = skew.turns();
    match kind {
        LatticeKind::P => t.map(unit),
        LatticeKind::G => [t[0] / 4.0, -t[1] / 4.0, t[2] / 4.0].map(unit),
        LatticeKind::D => {
            // Solve the q exponents for χ² over the reals, then halve.
            let m = nalgebra::Matrix3::new(-1.0, 1.0, 1.0, -3.0, -1.0, -1.0, -1.0, -3.0, 1.0);
            let rhs = nalgebra::Vector3::new(t[0], t[1], t[2]) / 2.0;
            let s = m.lu().solve(&rhs).expect("determinant 16");
            [s[0], s[1], s[2]].map(unit)
        }
    }
}

/// Largest mismatch between the algebra's commutators at `symbols` and the
/// skew phases.
pub fn params_mismatch(lat: &SymbolicLattice, symbols: &[Complex64; 3], skew: &RationalSkew) -> f64 {
    let ph = skew.phases();
    (0..3)
        .map(|i| {
            let e = lat.algebra.commutators[i];
            let v: Complex64 = (0..3).map(|s| symbols[s].powi(e[s])).product();
            (v - ph[i]).norm()
        })
        .fold(0.0, f64::max)
}

pub fn evaluator(
    lat: &SymbolicLattice,
    rep: &TorusRep,
    params: &LatticeParams,
) -> Result<Evaluator> {
    let symbols = params.symbols(lat.kind, &rep.skew);
    let err = params_mismatch(lat, &symbols, &rep.skew);
    if err > 1e-10 {
        return Err(Error::InconsistentParams(format!(
            "commutators differ from skew {:?}/{} by {err:.3e}",
            rep.skew.p, rep.skew.n
        )));
    }
    Ok(Evaluator::new(symbols, rep.gens.clone()))
}

/// The Harper operator of `lat` represented on `k·d` dimensions.
pub fn harper_rep(lat: &SymbolicLattice, rep: &TorusRep, params: &LatticeParams) -> Result<CMatrix> {
    Ok(evaluator(lat, rep, params)?.matrix(&lat.harper()))
}

#[derive(Clone, Debug, Serialize)]
pub struct FluxSpectrum {
    pub num: i64,
    pub den: i64,
    /// Sorted eigenvalues per twist, in twist-grid order.
    pub spectra: Vec<Vec<f64>>,
    pub bands: Vec<[f64; 2]>,
    pub gaps: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Butterfly {
    pub lattice: LatticeKind,
    pub axis: u8,
    pub twist_grid: usize,
    pub fluxes: Vec<FluxSpectrum>,
}

pub fn axis_pair(axis: u8) -> Result<usize> {
    match axis {
        12 => Ok(0),
        13 => Ok(1),
        23 => Ok(2),
        _ => Err(Error::Precondition(format!("axis {axis} not in {{12, 13, 23}}"))),
    }
}

/// `λ_i = e^{2πi·j_i/M}` over all `M³` index triples.
pub fn twist_grid(m: usize) -> Vec<Twist> {
    let mut out = Vec::with_capacity(m * m * m);
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                out.push(Twist::from_turns([a, b, c].map(|j| j as f64 / m as f64)));
            }
        }
    }
    out
}

/// Merged intervals `[min_j, max_j]` of the `j`-th eigenvalue over twists.
pub fn bands(spectra: &[Vec<f64>], touch: f64) -> Vec<[f64; 2]> {
    let Some(first) = spectra.first() else { return vec![] };
    let mut iv: Vec<[f64; 2]> = (0..first.len())
        .map(|j| {
            spectra.iter().fold([f64::INFINITY, f64::NEG_INFINITY], |[lo, hi], s| {
                [lo.min(s[j]), hi.max(s[j])]
            })
        })
        .collect();
    iv.sort_by(|a, b| a[0].total_cmp(&b[0]));
    let mut merged: Vec<[f64; 2]> = vec![];
    for b in iv {
        match merged.last_mut() {
            Some(last) if b[0] <= last[1] + touch => last[1] = last[1].max(b[1]),
            _ => merged.push(b),
        }
    }
    merged
}

/// Fluxes `p/N` with `p` coprime to `N` (and `0/1`).
pub fn coprime_fluxes(denominators: &[i64]) -> Vec<(i64, i64)> {
    let mut out = vec![];
    for &n in denominators {
        if n == 1 {
            out.push((0, 1));
        }
        for p in 1..n {
            if p.gcd(&n) == 1 {
                out.push((p, n));
            }
        }
    }
    out
}

pub fn butterfly(
    kind: LatticeKind,
    axis: u8,
    fluxes: &[(i64, i64)],
    twist_m: usize,
    cap: i64,
) -> Result<Butterfly> {
    let pair = axis_pair(axis)?;
    if let Some(&(_, n)) = fluxes.iter().find(|(_, n)| *n > cap || *n < 1) {
        return Err(Error::Precondition(format!("denominator {n} outside 1..={cap}")));
    }
    let lat = SymbolicLattice::new(kind);
    let twists = twist_grid(twist_m);
    let harper = lat.harper();
    let fluxes = fluxes
        .iter()
        .map(|&(num, den)| {
            let mut p = [0; 3];
            p[pair] = num;
            let skew = RationalSkew::new(p, den)?;
            let spectra: Vec<Vec<f64>> = twists
                .par_iter()
                .map(|t| {
                    let rep = TorusRep::new(skew, *t, RepMode::AxisAligned)?;
                    let ev = evaluator(&lat, &rep, &LatticeParams::None)?;
                    hermitian_eigenvalues(&ev.matrix(&harper))
                })
                .collect::<Result<_>>()?;
            let bands = bands(&spectra, 1e-9);
            Ok(FluxSpectrum { num, den, gaps: bands.len().saturating_sub(1), bands, spectra })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Butterfly { lattice: kind, axis, twist_grid: twist_m, fluxes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::{BlochModel, Character};
    use crate::geometry::builtin_lattice;
    use crate::linalg::spectrum_distance;
    use proptest::prelude::*;

    #[test]
    fn small_clock_and_shift() {
        let (c, s) = (clock(1).unwrap(), shift(1).unwrap());
        assert_eq!(c[(0, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(s[(0, 0)], Complex64::new(1.0, 0.0));
        let (c, s) = (clock(2).unwrap(), shift(2).unwrap());
        assert!((c[(1, 1)] + 1.0).norm() < 1e-15);
        assert!(max_abs(&(&c * &s + &s * &c)) < 1e-15);
        let (c, s) = (clock(5).unwrap(), shift(5).unwrap());
        assert!(max_abs(&(&c * &s - (&s * &c) * unit(0.2))) < 1e-14);
        assert!(clock(0).is_err());
    }

    #[test]
    fn half_flux_anticommutes() {
        let r = TorusRep::new(RationalSkew::new([1, 0, 0], 2).unwrap(), Twist::trivial(), RepMode::AxisAligned)
            .unwrap();
        let [u1, u2, _] = &r.gens;
        assert!(max_abs(&(u1 * u2 + u2 * u1)) < 1e-15);
        assert!(TorusRep::new(RationalSkew::new([1, 1, 0], 2).unwrap(), Twist::trivial(), RepMode::AxisAligned)
            .is_err());
    }

    #[test]
    fn skew_normalization() {
        let s = RationalSkew::new([2, -2, 4], 8).unwrap();
        assert_eq!((s.p, s.n, s.reduced_by), ([1, 3, 2], 4, 2));
        let t = RationalSkew::from_turns([Rational64::new(1, 2), Rational64::new(1, 3), Rational64::new(0, 1)])
            .unwrap();
        assert_eq!((t.p, t.n), ([3, 2, 0], 6));
    }

    #[test]
    fn reduced_dimension() {
        let s = RationalSkew::new([1, 1, 1], 2).unwrap();
        let r = TorusRep::new(s, Twist::trivial(), RepMode::Reduced).unwrap();
        assert_eq!(r.dim, 2);
        let s = RationalSkew::new([2, 3, 0], 6).unwrap();
        assert_eq!(TorusRep::new(s, Twist::trivial(), RepMode::Reduced).unwrap().dim, 6);
        let s = RationalSkew::new([0, 0, 0], 1).unwrap();
        assert_eq!(TorusRep::new(s, Twist::trivial(), RepMode::Reduced).unwrap().dim, 1);
    }

    #[test]
    fn cubic_trivial_rep() {
        let lat = SymbolicLattice::new(LatticeKind::P);
        let r = TorusRep::new(RationalSkew::zero(), Twist::trivial(), RepMode::General).unwrap();
        let h = harper_rep(&lat, &r, &LatticeParams::None).unwrap();
        assert!((h[(0, 0)] - Complex64::new(6.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn inconsistent_params_rejected() {
        let lat = SymbolicLattice::new(LatticeKind::D);
        let r = TorusRep::new(RationalSkew::new([1, 1, 1], 2).unwrap(), Twist::trivial(), RepMode::Reduced)
            .unwrap();
        let p = LatticeParams::D(DParams::from_chi([Complex64::new(1.0, 0.0); 3]));
        assert!(matches!(harper_rep(&lat, &r, &p), Err(Error::InconsistentParams(_))));
    }

    #[test]
    fn symbols_for_skew_are_consistent() {
        let s = RationalSkew::new([1, 3, 5], 7).unwrap();
        for k in [LatticeKind::P, LatticeKind::D, LatticeKind::G] {
            let lat = SymbolicLattice::new(k);
            assert!(params_mismatch(&lat, &symbols_for_skew(k, &s), &s) < 1e-12, "{k}");
        }
    }

    #[test]
    fn cubic_band_count_bound() {
        let b = butterfly(LatticeKind::P, 12, &coprime_fluxes(&[1, 2, 3, 5]), 4, 64).unwrap();
        for f in &b.fluxes {
            assert!(f.bands.len() as i64 <= f.den, "{}/{}", f.num, f.den);
        }
        let zero = &b.fluxes[0];
        assert!((zero.bands[0][0] + 6.0).abs() < 1e-12 && (zero.bands[0][1] - 6.0).abs() < 1e-12);
        assert!(butterfly(LatticeKind::P, 12, &[(1, 70)], 2, 64).is_err());
    }

    fn arb_skew() -> impl Strategy<Value = RationalSkew> {
        (1i64..6, any::<[u8; 3]>()).prop_map(|(n, p)| RationalSkew::new(p.map(|x| x as i64), n).unwrap())
    }

    fn arb_twist() -> impl Strategy<Value = Twist> {
        any::<[u16; 3]>().prop_map(|t| Twist::from_turns(t.map(|x| x as f64 / 65536.0)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn general_and_reduced_reps_satisfy_relations(s in arb_skew(), t in arb_twist()) {
            for mode in [RepMode::General, RepMode::Reduced] {
                let r = TorusRep::new(s, t, mode).unwrap();
                prop_assert!(r.defect() < 1e-12);
                prop_assert!(r.power_defect() < 1e-10);
            }
        }

        #[test]
        fn one_dimensional_reps_are_bloch(t in arb_twist()) {
            for k in [LatticeKind::P, LatticeKind::D, LatticeKind::G] {
                let lat = SymbolicLattice::new(k);
                let r = TorusRep::new(RationalSkew::zero(), t, RepMode::General).unwrap();
                let h = harper_rep(&lat, &r, &LatticeParams::None).unwrap();
                let b = BlochModel::from_spec(&builtin_lattice(k)).unwrap()
                    .matrix(&Character::new(t.lambda).unwrap());
                prop_assert!(max_abs(&(h - b)) < 1e-12);
            }
        }

        #[test]
        fn center_twist_permutes_spectrum(n in 2i64..7, p in 1i64..7, t in arb_twist(), which in 0usize..2) {
            // U3 is a bare scalar here, so only the twists of U1, U2 are inner.
            let skew = RationalSkew::new([p % n, 0, 0], n).unwrap();
            let lat = SymbolicLattice::new(LatticeKind::P);
            let spec = |tw: Twist| {
                let r = TorusRep::new(skew, tw, RepMode::AxisAligned).unwrap();
                hermitian_eigenvalues(&harper_rep(&lat, &r, &LatticeParams::None).unwrap()).unwrap()
            };
            let mut moved = t;
            moved.lambda[which] *= unit(1.0 / skew.n as f64);
            prop_assert!(spectrum_distance(&spec(t), &spec(moved)) < 1e-10);
        }
    }
}
