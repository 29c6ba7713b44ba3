//! Span closure of represented matrix algebras and the Full / Proper /
//! Commutative classification of the Harper algebras.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{DPoint, GPoint, LatticeKind};
use crate::linalg::max_abs;
use crate::phase::Phase;
use crate::repn::{evaluator, LatticeParams, RationalSkew, RepMode, TorusRep, Twist};
use crate::symbolic::{CMatrix, Evaluator, SymbolicLattice, TorusElement};

pub const DEFAULT_TOL: f64 = 1e-8;

/// Matrices generating a unital *-algebra; adjoints are appended when absent.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub mats: Vec<CMatrix>,
}

impl GeneratorSet {
    pub fn new(mats: Vec<CMatrix>) -> Result<GeneratorSet> {
        let Some(first) = mats.first() else {
            return Err(Error::Precondition("empty generator set".into()));
        };
        let d = first.nrows();
        if mats.iter().any(|m| m.nrows() != d || m.ncols() != d) {
            return Err(Error::Precondition("generators differ in shape".into()));
        }
        let mut all = mats.clone();
        for m in &mats {
            let a = m.adjoint();
            if !all.iter().any(|x| max_abs(&(x - &a)) < 1e-14) {
                all.push(a);
            }
        }
        Ok(GeneratorSet { mats: all })
    }

    pub fn dim(&self) -> usize {
        self.mats[0].nrows()
    }

    pub fn commutative(&self, tol: f64) -> bool {
        self.mats.iter().enumerate().all(|(i, a)| {
            self.mats[i + 1..]
                .iter()
                .all(|b| max_abs(&(a * b - b * a)) < tol)
        })
    }
}

#[derive(Clone, Debug)]
pub struct ClosureResult {
    pub dim: usize,
    /// Orthonormal vectorized basis (column-major).
    pub basis: Vec<DVector<Complex64>>,
    pub iterations: usize,
    pub tol: f64,
    side: usize,
}

fn vectorize(m: &CMatrix) -> DVector<Complex64> {
    DVector::from_column_slice(m.as_slice())
}

/// Gram–Schmidt against `basis`, twice; returns the residual and its norm
/// relative to the input norm.
fn orthogonalize(basis: &[DVector<Complex64>], v: &DVector<Complex64>) -> (DVector<Complex64>, f64) {
    let n0 = v.norm();
    if n0 == 0.0 {
        return (v.clone(), 0.0);
    }
    let mut r = v.clone();
    for _ in 0..2 {
        for b in basis {
            let c = b.dotc(&r);
            r.axpy(-c, b, Complex64::new(1.0, 0.0));
        }
    }
    let rel = r.norm() / n0;
    (r, rel)
}

/// Appends the normalized new part of `v` when it exceeds `tol` relative to
/// `max(‖v‖, scale)`.
fn extend_basis(basis: &mut Vec<DVector<Complex64>>, v: &DVector<Complex64>, tol: f64, scale: f64) -> bool {
    let (r, _) = orthogonalize(basis, v);
    let n = r.norm();
    if n > tol * v.norm().max(scale) {
        basis.push(r.unscale(n));
        true
    } else {
        false
    }
}

impl ClosureResult {
    pub fn matrix(&self, i: usize) -> CMatrix {
        CMatrix::from_column_slice(self.side, self.side, self.basis[i].as_slice())
    }

    /// Norm of the part of `m` outside the span, relative to `‖m‖`.
    pub fn residual(&self, m: &CMatrix) -> f64 {
        orthogonalize(&self.basis, &vectorize(m)).1
    }

    pub fn contains(&self, m: &CMatrix) -> bool {
        self.residual(m) < self.tol.sqrt()
    }

    /// Largest commutator norm over pairs of basis elements.
    pub fn max_commutator(&self) -> f64 {
        let mats: Vec<CMatrix> = (0..self.dim).map(|i| self.matrix(i)).collect();
        let mut worst: f64 = 0.0;
        for i in 0..mats.len() {
            for j in i + 1..mats.len() {
                worst = worst.max(max_abs(&(&mats[i] * &mats[j] - &mats[j] * &mats[i])));
            }
        }
        worst
    }
}

/// Smallest unital algebra containing `gens`, grown by left multiplication
/// with generators until no new direction appears. Stops early once the
/// dimension reaches `stop_at`.
pub fn span_closure(gens: &GeneratorSet, tol: f64, stop_at: Option<usize>) -> Result<ClosureResult> {
    if tol <= 0.0 {
        return Err(Error::Precondition("tolerance must be positive".into()));
    }
    let d = gens.dim();
    let max = d * d;
    let stop = stop_at.unwrap_or(max).min(max);
    let mut basis: Vec<DVector<Complex64>> = vec![];
    let mut frontier: Vec<CMatrix> = vec![];
    // Absolute floor so that rounding noise in a vanishing generator is not
    // mistaken for a direction.
    let scale = gens
        .mats
        .iter()
        .map(|g| g.norm() / (d as f64).sqrt())
        .fold(1.0, f64::max);
    let push = |m: CMatrix, basis: &mut Vec<DVector<Complex64>>, frontier: &mut Vec<CMatrix>| {
        if extend_basis(basis, &vectorize(&m), tol, scale) {
            let r = basis.last().expect("just pushed");
            frontier.push(CMatrix::from_column_slice(d, d, r.as_slice()));
        }
    };
    push(CMatrix::identity(d, d), &mut basis, &mut frontier);
    for g in &gens.mats {
        push(g.clone(), &mut basis, &mut frontier);
    }
    let mut iterations = 0;
    while !frontier.is_empty() && basis.len() < stop {
        iterations += 1;
        let current = std::mem::take(&mut frontier);
        let products: Vec<CMatrix> = current
            .par_iter()
            .flat_map_iter(|b| gens.mats.iter().map(move |g| g * b))
            .collect();
        for p in products {
            push(p, &mut basis, &mut frontier);
            if basis.len() > max {
                return Err(Error::ClosureOverflow { dim: basis.len(), max });
            }
            if basis.len() >= stop {
                break;
            }
        }
    }
    Ok(ClosureResult { dim: basis.len(), basis, iterations, tol, side: d })
}

/// `k² ·` dimension of the algebra generated by the represented torus.
pub fn reference_full_dim(k: usize, rep: &TorusRep) -> Result<usize> {
    let g = GeneratorSet::new(rep.gens.to_vec())?;
    Ok(k * k * span_closure(&g, DEFAULT_TOL, None)?.dim)
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
pub enum Observed {
    Commutative,
    Full,
    ProperSubalgebra,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
pub enum DCase {
    IA,
    IB,
    IIA,
    IIB,
    III,
    IV,
    V,
    GenericFull,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
pub enum GCase {
    I,
    II,
    III,
}

impl DCase {
    pub fn label(self) -> &'static str {
        match self {
            DCase::IA => "D(i)(a)",
            DCase::IB => "D(i)(b)",
            DCase::IIA => "D(ii)(a)",
            DCase::IIB => "D(ii)(b)",
            DCase::III => "D(iii)",
            DCase::IV => "D(iv)",
            DCase::V => "D(v)",
            DCase::GenericFull => "D generic",
        }
    }

    pub fn expected(self) -> Observed {
        match self {
            DCase::IA => Observed::Commutative,
            DCase::GenericFull => Observed::Full,
            _ => Observed::ProperSubalgebra,
        }
    }
}

impl GCase {
    pub fn label(self) -> &'static str {
        match self {
            GCase::I => "G(i)",
            GCase::II => "G(ii)",
            GCase::III => "G(iii)",
        }
    }

    pub fn expected(self) -> Observed {
        match self {
            GCase::I => Observed::Full,
            GCase::II => Observed::Commutative,
            GCase::III => Observed::ProperSubalgebra,
        }
    }
}

/// Unit phases with the comparisons the case predicates need.
pub trait UnitPhase: Copy {
    fn one() -> Self;
    fn mul(self, o: Self) -> Self;
    fn pow(self, n: i64) -> Self;
    fn same(self, o: Self) -> bool;

    fn conj(self) -> Self {
        self.pow(-1)
    }
    fn is_one(self) -> bool {
        self.same(Self::one())
    }
    fn is_minus_one(self) -> bool {
        self.pow(2).is_one() && !self.is_one()
    }
    fn monomial(z: [Self; 3], e: [i32; 3]) -> Self {
        (0..3).fold(Self::one(), |acc, i| acc.mul(z[i].pow(e[i] as i64)))
    }
}

impl UnitPhase for Phase {
    fn one() -> Phase {
        Phase::ONE
    }
    fn mul(self, o: Phase) -> Phase {
        self * o
    }
    fn pow(self, n: i64) -> Phase {
        Phase::pow(self, n)
    }
    fn same(self, o: Phase) -> bool {
        self == o
    }
}

impl UnitPhase for Complex64 {
    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }
    fn mul(self, o: Complex64) -> Complex64 {
        self * o
    }
    fn pow(self, n: i64) -> Complex64 {
        self.powi(n as i32)
    }
    fn same(self, o: Complex64) -> bool {
        (self - o).norm() < 1e-10
    }
}

/// The diamond theorem's cases, tested in their listed order.
pub fn predict_case_d<T: UnitPhase>(chi: [T; 3]) -> DCase {
    let [q1, q2, q3] = crate::geometry::D_Q_EXPONENTS.map(|e| T::monomial(chi, e));
    let c2 = chi.map(|c| c.pow(2));
    let c4 = chi.map(|c| c.pow(4));
    let all_q_one = [q1, q2, q3].iter().all(|q| q.is_one());
    if all_q_one {
        if c2.iter().all(|c| c.is_one()) {
            return DCase::IA;
        }
        if c4.iter().filter(|c| c.is_minus_one()).count() == 2 {
            return DCase::IB;
        }
    }
    if [q1, q2, q3].iter().all(|q| q.is_minus_one()) && c4.iter().all(|c| c.is_one()) {
        match c2.iter().filter(|c| c.is_minus_one()).count() {
            3 => return DCase::IIA,
            1 => return DCase::IIB,
            _ => {}
        }
    }
    if all_q_one {
        return DCase::GenericFull;
    }
    let eq = |a: T, b: T| a.same(b);
    if eq(q1.conj(), q2) && eq(q2, q3) && eq(q3, c4[1].conj()) && c2[0].is_one() {
        return DCase::III;
    }
    if eq(q1, q2) && eq(q2, q3) && eq(q3, c4[0].conj()) && c2[1].is_one() {
        return DCase::IV;
    }
    if eq(q1, q2) && eq(q2, q3.conj()) && eq(q1, c4[0].conj()) && eq(c2[0], c2[1].conj()) {
        return DCase::V;
    }
    DCase::GenericFull
}

/// The gyroid theorem's cases.
pub fn predict_case_g<T: UnitPhase>(phi: [T; 3]) -> GCase {
    let big_phi = phi[0].mul(phi[1]).mul(phi[2]);
    let alpha = phi.map(|p| p.pow(4));
    let distinct = !phi[0].same(phi[1]) && !phi[0].same(phi[2]) && !phi[1].same(phi[2]);
    if !big_phi.is_one() || (alpha.iter().any(|a| !a.is_one()) && distinct) {
        return GCase::I;
    }
    if phi.iter().all(|p| p.is_one()) {
        return GCase::II;
    }
    GCase::III
}

/// A parameter point of either lattice, with exact phases.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
pub enum ParamPoint {
    D(DPoint),
    G(GPoint),
}

impl ParamPoint {
    pub fn kind(&self) -> LatticeKind {
        match self {
            ParamPoint::D(_) => LatticeKind::D,
            ParamPoint::G(_) => LatticeKind::G,
        }
    }

    pub fn skew(&self) -> Result<RationalSkew> {
        match self {
            ParamPoint::D(p) => RationalSkew::from_turns(p.skew_turns()),
            ParamPoint::G(p) => RationalSkew::from_turns(p.skew_turns()),
        }
    }

    pub fn params(&self) -> LatticeParams {
        match self {
            ParamPoint::D(p) => LatticeParams::D(p.params()),
            ParamPoint::G(p) => LatticeParams::G(p.params()),
        }
    }

    pub fn predicted(&self) -> (&'static str, Observed) {
        match self {
            ParamPoint::D(p) => {
                let c = predict_case_d(p.chi);
                (c.label(), c.expected())
            }
            ParamPoint::G(p) => {
                let c = predict_case_g(p.phi);
                (c.label(), c.expected())
            }
        }
    }

    /// Largest order of the phases involved.
    pub fn order(&self) -> i64 {
        match self {
            ParamPoint::D(p) => crate::phase::common_order(&p.chi),
            ParamPoint::G(p) => crate::phase::common_order(&p.phi),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyConfig {
    /// Root-of-unity lattice of center characters: `M` values per direction.
    pub lattice_m: usize,
    /// Pseudo-random twists on top of the lattice.
    pub random_twists: usize,
    pub seed: u64,
    pub tol: f64,
    /// Largest phase order accepted.
    pub max_order: i64,
}

impl Default for ClassifyConfig {
    fn default() -> ClassifyConfig {
        ClassifyConfig { lattice_m: 4, random_twists: 5, seed: 42, tol: DEFAULT_TOL, max_order: 16 }
    }
}

/// Twists of the irreducible representation: `M`-th roots of unity for each
/// central value plus seeded random twists.
pub fn classification_twists(skew: &RationalSkew, cfg: &ClassifyConfig) -> Vec<Twist> {
    let m_dim = TorusRep::new(*skew, Twist::trivial(), RepMode::Reduced)
        .map(|r| r.dim)
        .unwrap_or(1) as f64;
    let big_m = cfg.lattice_m.max(1);
    let mut out = vec![];
    for a in 0..big_m {
        for b in 0..big_m {
            for c in 0..big_m {
                let t = [a, b, c].map(|j| j as f64 / big_m as f64);
                out.push(Twist::from_turns([t[0] / m_dim, t[1] / m_dim, t[2]]));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.random_twists {
        out.push(Twist::from_turns([rng.gen(), rng.gen(), rng.gen()]));
    }
    out
}

/// Represented Harper operator and embedded generators at one twist.
pub struct PointContext {
    pub lattice: SymbolicLattice,
    pub rep: TorusRep,
    pub eval: Evaluator,
}

impl PointContext {
    pub fn new(point: &ParamPoint, twist: Twist, mode: RepMode) -> Result<PointContext> {
        let lattice = SymbolicLattice::new(point.kind());
        let rep = TorusRep::new(point.skew()?, twist, mode)?;
        let eval = evaluator(&lattice, &rep, &point.params())?;
        Ok(PointContext { lattice, rep, eval })
    }

    pub fn harper(&self) -> CMatrix {
        self.eval.matrix(&self.lattice.harper())
    }

    pub fn rho(&self, x: &TorusElement) -> CMatrix {
        self.eval.matrix(&self.lattice.rho(x))
    }

    pub fn rho_generators(&self) -> Vec<CMatrix> {
        (0..3).map(|i| self.rho(&TorusElement::generator(i))).collect()
    }

    /// `H` and `ρ` of the torus generators, with adjoints.
    pub fn generators(&self) -> Result<GeneratorSet> {
        let mut g = vec![self.harper()];
        g.extend(self.rho_generators());
        GeneratorSet::new(g)
    }

    pub fn closure(&self, tol: f64) -> Result<ClosureResult> {
        span_closure(&self.generators()?, tol, None)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Sample {
    pub twist_turns: [f64; 3],
    pub closure_dim: usize,
    pub reference_dim: usize,
    pub commutative: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationVerdict {
    pub point: ParamPoint,
    pub skew: RationalSkew,
    pub rep_dim: usize,
    pub observed: Observed,
    pub closure_dim: usize,
    pub reference_full_dim: usize,
    pub predicted_case: String,
    pub predicted: Observed,
    pub agree: bool,
    pub samples: Vec<Sample>,
    pub seed: u64,
}

fn turns_of(t: &Twist) -> [f64; 3] {
    t.lambda.map(|l| (l.arg() / (2.0 * std::f64::consts::PI)).rem_euclid(1.0))
}

/// Closure at every twist sample of the irreducible representation.
///
/// One sample below the reference dimension certifies a proper subalgebra;
/// Full means every sample reached it.
pub fn classify_point(point: &ParamPoint, cfg: &ClassifyConfig) -> Result<ClassificationVerdict> {
    if point.order() > cfg.max_order {
        return Err(Error::Precondition(format!(
            "phase order {} exceeds {}",
            point.order(),
            cfg.max_order
        )));
    }
    let skew = point.skew()?;
    let twists = classification_twists(&skew, cfg);
    let k = point.kind().vertex_count();
    let samples: Vec<Sample> = twists
        .par_iter()
        .map(|t| {
            let ctx = PointContext::new(point, *t, RepMode::Reduced)?;
            let gens = ctx.generators()?;
            let reference = reference_full_dim(k, &ctx.rep)?;
            let commutative = gens.commutative(1e-9);
            let c = span_closure(&gens, cfg.tol, Some(reference))?;
            Ok(Sample {
                twist_turns: turns_of(t),
                closure_dim: c.dim,
                reference_dim: reference,
                commutative,
            })
        })
        .collect::<Result<_>>()?;
    let observed = if samples.iter().all(|s| s.commutative) {
        Observed::Commutative
    } else if samples.iter().any(|s| s.closure_dim < s.reference_dim) {
        Observed::ProperSubalgebra
    } else {
        Observed::Full
    };
    let witness = samples
        .iter()
        .min_by_key(|s| (s.closure_dim as i64 - s.reference_dim as i64, s.closure_dim))
        .expect("at least one twist");
    let (label, predicted) = point.predicted();
    Ok(ClassificationVerdict {
        point: *point,
        skew,
        rep_dim: TorusRep::new(skew, Twist::trivial(), RepMode::Reduced)?.dim,
        observed,
        closure_dim: witness.closure_dim,
        reference_full_dim: witness.reference_dim,
        predicted_case: label.into(),
        predicted,
        agree: observed == predicted,
        samples,
        seed: cfg.seed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SuitePoint {
    pub label: &'static str,
    pub point: ParamPoint,
}

fn d_at(t: [(i64, i64); 3]) -> ParamPoint {
    ParamPoint::D(DPoint::new(t.map(|(n, d)| Phase::new(n, d))))
}

fn g_at(t: [(i64, i64); 3]) -> ParamPoint {
    ParamPoint::G(GPoint::new(t.map(|(n, d)| Phase::new(n, d))))
}

/// Fixed cross-validation suite: every case of both theorems, generic
/// diamond points, and the gyroid point with all `αᵢ = −1`.
pub fn standard_suite() -> Vec<SuitePoint> {
    let z = (0, 1);
    let d = [
        ("D(i)(a) zero field", [z, z, z]),
        ("D(i)(b)", [(1, 8), (1, 8), z]),
        ("D(i)(b)", [(1, 8), z, (1, 8)]),
        ("D(ii)(a)", [(1, 4), (1, 4), (1, 4)]),
        ("D(ii)(b)", [z, (1, 4), z]),
        ("D(ii)(b)", [z, z, (1, 4)]),
        ("D(iii)", [z, (1, 8), (1, 8)]),
        ("D(iii)", [z, (1, 16), (1, 16)]),
        ("D(iv)", [(1, 8), z, (-1, 8)]),
        ("D(iv)", [(1, 16), z, (-1, 16)]),
        ("D(v)", [(1, 8), (-1, 8), z]),
        ("D(v)", [(1, 16), (-1, 16), z]),
        ("D generic", [(1, 16), (1, 8), (3, 16)]),
        ("D generic", [(1, 5), z, z]),
        ("D generic", [(1, 8), z, z]),
        ("D generic", [(1, 3), z, z]),
        ("D generic", [(1, 16), (3, 16), z]),
    ];
    let g = [
        ("G(i) all alpha = -1", [(1, 8), (3, 8), (5, 8)]),
        ("G(i)", [(1, 6), z, z]),
        ("G(i)", [(1, 3), (2, 3), z]),
        ("G(ii) zero field", [z, z, z]),
        ("G(iii) mixed", [(1, 8), (1, 8), (3, 4)]),
        ("G(iii) commutative torus", [(1, 4), (3, 4), z]),
    ];
    d.into_iter()
        .map(|(label, t)| SuitePoint { label, point: d_at(t) })
        .chain(g.into_iter().map(|(label, t)| SuitePoint { label, point: g_at(t) }))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct FermionicReport {
    /// Largest residual of a closure basis element outside the Clifford form.
    pub block_form_residual: f64,
    /// Residuals of `I` and the `[[0, g*], [g, 0]]`.
    pub generator_residuals: Vec<f64>,
    pub e12_residual: f64,
    /// Residual of `H` minus its displayed Clifford-form part, inside `M2(J)`.
    pub h_split_residual: f64,
    pub ideal_dim: usize,
    pub closure_dim: usize,
    pub reference_dim: usize,
    pub checks: [bool; 3],
}

impl FermionicReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| *c)
    }
}

fn block(d: usize, a: &CMatrix, b: &CMatrix, c: &CMatrix, e: &CMatrix) -> CMatrix {
    let mut m = CMatrix::zeros(2 * d, 2 * d);
    m.view_mut((0, 0), (d, d)).copy_from(a);
    m.view_mut((0, d), (d, d)).copy_from(b);
    m.view_mut((d, 0), (d, d)).copy_from(c);
    m.view_mut((d, d), (d, d)).copy_from(e);
    m
}

/// Represented words `U^a V^b W^c` for `0 ≤ a, b, c < N`.
fn word_span(eval: &Evaluator, n: i64) -> Vec<([i32; 3], CMatrix)> {
    let mut out = vec![];
    for a in 0..n as i32 {
        for b in 0..n as i32 {
            for c in 0..n as i32 {
                out.push(([a, b, c], eval.word([a, b, c])));
            }
        }
    }
    out
}

/// Linear span of `x·j·y` over represented words, i.e. the represented ideal
/// generated by the `j`s.
fn ideal_span(words: &[CMatrix], gens: &[CMatrix], tol: f64) -> Vec<DVector<Complex64>> {
    let mut basis = vec![];
    for j in gens {
        for x in words {
            for y in words {
                extend_basis(&mut basis, &vectorize(&(x * j * y)), tol, 1.0);
            }
        }
    }
    basis
}

/// Fermionic structure at a case (ii) diamond point, in the General
/// representation.
pub fn structure_check_fermionic_d(point: &DPoint, twist: Twist, tol: f64) -> Result<FermionicReport> {
    let case = predict_case_d(point.chi);
    if !matches!(case, DCase::IIA | DCase::IIB) {
        return Err(Error::Precondition(format!("{} is not a fermionic point", case.label())));
    }
    fermionic_structure(point, twist, RepMode::General, tol)
}

/// The same checks at any diamond point; away from case (ii) check (c) is
/// expected to fail.
pub fn fermionic_control(point: &DPoint, twist: Twist, tol: f64) -> Result<FermionicReport> {
    fermionic_structure(point, twist, RepMode::Reduced, tol)
}

fn fermionic_structure(point: &DPoint, twist: Twist, mode: RepMode, tol: f64) -> Result<FermionicReport> {
    let pp = ParamPoint::D(*point);
    let ctx = PointContext::new(&pp, twist, mode)?;
    let d = ctx.rep.dim;
    let zero = CMatrix::zeros(d, d);
    let eye = CMatrix::identity(d, d);
    let lat = &ctx.lattice;
    let hat = |x: &TorusElement| ctx.eval.element(&lat.vertex_automorphism(1, x));
    let words = word_span(&ctx.eval, ctx.rep.skew.n);
    let word_mats: Vec<CMatrix> = words.iter().map(|(_, m)| m.clone()).collect();
    // 𝒥 is generated by g* − ĝ.
    let ideal_gens: Vec<CMatrix> = (0..3)
        .map(|i| {
            let g = TorusElement::generator(i);
            ctx.eval.element(&lat.algebra.adjoint(&g)) - hat(&g)
        })
        .collect();
    let ideal = ideal_span(&word_mats, &ideal_gens, tol);
    // Clifford form [[a, b], [b̂, â]] plus M2(𝒥).
    let mut form: Vec<DVector<Complex64>> = vec![];
    let add = |m: CMatrix, form: &mut Vec<DVector<Complex64>>| {
        extend_basis(form, &vectorize(&m), tol, 1.0);
    };
    for (w, m) in &words {
        let wh = hat(&TorusElement::word(*w));
        add(block(d, m, &zero, &zero, &wh), &mut form);
        add(block(d, &zero, m, &wh, &zero), &mut form);
    }
    for j in &ideal {
        let jm = CMatrix::from_column_slice(d, d, j.as_slice());
        add(block(d, &jm, &zero, &zero, &zero), &mut form);
        add(block(d, &zero, &jm, &zero, &zero), &mut form);
        add(block(d, &zero, &zero, &jm, &zero), &mut form);
        add(block(d, &zero, &zero, &zero, &jm), &mut form);
    }
    let closure = ctx.closure(tol)?;
    let block_form_residual = (0..closure.dim)
        .map(|i| orthogonalize(&form, &closure.basis[i]).1)
        .fold(0.0, f64::max);
    let mut generator_residuals = vec![closure.residual(&block(d, &zero, &eye, &eye, &zero))];
    for i in 0..3 {
        let g = ctx.eval.word({
            let mut w = [0; 3];
            w[i] = 1;
            w
        });
        generator_residuals.push(closure.residual(&block(d, &zero, &g.adjoint(), &g, &zero)));
    }
    let e12_residual = closure.residual(&block(d, &zero, &eye, &zero, &zero));
    // H minus [[0, 1 + Û + V̂ + Ŵ], [1 + U + V + W, 0]] sits in the (1,2) block.
    let lower = TorusElement::one()
        + TorusElement::generator(0)
        + TorusElement::generator(1)
        + TorusElement::generator(2);
    let split = block(d, &zero, &hat(&lower), &ctx.eval.element(&lower), &zero);
    let rest = ctx.harper() - split;
    let rest_12 = rest.view((0, d), (d, d)).into_owned();
    let h_split_residual = if max_abs(&rest) < 1e-12 {
        0.0
    } else {
        orthogonalize(&ideal, &vectorize(&rest_12)).1
            + max_abs(&rest.view((d, 0), (d, d)).into_owned())
    };
    let reference = reference_full_dim(2, &ctx.rep)?;
    let limit = tol.sqrt();
    let checks = [
        block_form_residual < limit,
        generator_residuals.iter().all(|r| *r < limit),
        e12_residual > 0.1,
    ];
    Ok(FermionicReport {
        block_form_residual,
        generator_residuals,
        e12_residual,
        h_split_residual,
        ideal_dim: ideal.len(),
        closure_dim: closure.dim,
        reference_dim: reference,
        checks,
    })
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
pub enum Family {
    III,
    IV,
    V,
}

impl Family {
    /// `(g, h, w)`: `A = [[0, g*], [1, 0]]`, `C = [[0, w*], [h, 0]]`, `B = C ρ(h*)`.
    fn roles(self) -> (usize, usize, usize) {
        match self {
            Family::III => (0, 1, 2),
            Family::IV => (1, 0, 2),
            Family::V => (2, 1, 0),
        }
    }

    fn case(self) -> DCase {
        match self {
            Family::III => DCase::III,
            Family::IV => DCase::IV,
            Family::V => DCase::V,
        }
    }

    /// Images of `(U, V, W)` in the half-twisted 2-torus, as words in `(S, T)`.
    fn quotient_words(self) -> [[i32; 2]; 3] {
        let (s, t, st) = ([1, 0], [0, 1], [-1, 1]);
        match self {
            Family::III => [s, t, st],
            Family::IV => [t, s, st],
            Family::V => [st, t, s],
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub family: Family,
    /// `‖H − (A + A* + C + C*)‖`.
    pub h_decomposition: f64,
    /// `‖A² − ρ(g)*‖` and `‖(A*)² − ρ(g)‖`.
    pub a_squared: f64,
    pub a_adjoint_squared: f64,
    /// `‖B² − s̄ ρ(w* h*)‖` with `s` the embedding phase of `h`.
    pub b_squared: f64,
    /// Same with `s` in place of `s̄`.
    pub b_squared_conjugate_phase: f64,
    /// Largest `‖[A, ρ(x)]‖`, `‖[B, ρ(x)]‖` over torus generators.
    pub torus_commutator: f64,
    pub ab_commutator: f64,
    /// Largest `‖A ρ(x) − ρ(x̃) A‖` with `x̃` the vertex-1 image of `x`.
    pub twisted_commutator: f64,
    /// Present only when the Pauli images respect the torus relations.
    pub quotient: Option<QuotientReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientReport {
    pub closure_dim: usize,
    pub full_dim: usize,
    pub e12_residual: f64,
}

impl FamilyReport {
    pub fn squares_hold(&self, tol: f64) -> bool {
        self.a_adjoint_squared < tol && self.b_squared < tol && self.h_decomposition < tol
    }

    pub fn commutes_with_torus(&self, tol: f64) -> bool {
        self.torus_commutator < tol && self.ab_commutator < tol
    }
}

/// Pauli pair with `S T = −T S`.
fn pauli_pair(twist: [Complex64; 2]) -> [CMatrix; 2] {
    let one = Complex64::new(1.0, 0.0);
    let z = Complex64::new(0.0, 0.0);
    let s = CMatrix::from_row_slice(2, 2, &[one, z, z, -one]) * twist[0];
    let t = CMatrix::from_row_slice(2, 2, &[z, one, one, z]) * twist[1];
    [s, t]
}

/// Square-root family structure at a diamond point of family (iii), (iv) or (v).
pub fn structure_check_family(point: &DPoint, family: Family, twist: Twist, tol: f64) -> Result<FamilyReport> {
    let case = predict_case_d(point.chi);
    if case != family.case() {
        return Err(Error::Precondition(format!(
            "{} is not family {:?}",
            case.label(),
            family
        )));
    }
    let pp = ParamPoint::D(*point);
    let ctx = PointContext::new(&pp, twist, RepMode::Reduced)?;
    let lat = &ctx.lattice;
    let alg = &lat.algebra;
    let (gi, hi, wi) = family.roles();
    let gen = TorusElement::generator;
    let el = |x: &TorusElement| ctx.eval.element(x);
    let d = ctx.rep.dim;
    let zero = CMatrix::zeros(d, d);
    let eye = CMatrix::identity(d, d);
    let a = block(d, &zero, &el(&alg.adjoint(&gen(gi))), &eye, &zero);
    let c = block(d, &zero, &el(&alg.adjoint(&gen(wi))), &el(&gen(hi)), &zero);
    let h_star = alg.adjoint(&gen(hi));
    let b = &c * ctx.rho(&h_star);
    let h_decomposition = max_abs(&(ctx.harper() - (&a + a.adjoint() + &c + c.adjoint())));
    let rho_g = ctx.rho(&gen(gi));
    let a_squared = max_abs(&(&a * &a - rho_g.adjoint()));
    let a_adjoint_squared = max_abs(&(a.adjoint() * a.adjoint() - &rho_g));
    let s = crate::symbolic::PhasePoly::monomial(lat.vertex_phases[1][hi]).eval(&ctx.eval.symbols);
    let wh = alg.mul(&alg.adjoint(&gen(wi)), &h_star);
    let rho_wh = ctx.rho(&wh);
    let b_squared = max_abs(&(&b * &b - &rho_wh * s.conj()));
    let b_squared_conjugate_phase = max_abs(&(&b * &b - &rho_wh * s));
    let mut torus_commutator: f64 = 0.0;
    let mut twisted_commutator: f64 = 0.0;
    for i in 0..3 {
        let r = ctx.rho(&gen(i));
        torus_commutator = torus_commutator
            .max(max_abs(&(&a * &r - &r * &a)))
            .max(max_abs(&(&b * &r - &r * &b)));
        // A ρ(x) = ρ(σ⁻¹(x)) A, where σ(x) = s_x x is the vertex-1 embedding.
        let s_x = crate::symbolic::PhasePoly::monomial(lat.vertex_phases[1][i]);
        let y = gen(i).scale(&s_x.conj());
        twisted_commutator = twisted_commutator.max(max_abs(&(&a * &r - ctx.rho(&y) * &a)));
    }
    let ab_commutator = max_abs(&(&a * &b - &b * &a));
    let quotient = if quotient_is_homomorphism(point, family) {
        let images = quotient_images(family);
        let qeval = Evaluator::new(ctx.eval.symbols, images.clone());
        let mut g = vec![qeval.matrix(&lat.harper())];
        for i in 0..3 {
            g.push(qeval.matrix(&lat.rho(&gen(i))));
        }
        let closure = span_closure(&GeneratorSet::new(g)?, tol, None)?;
        let full_dim = 4 * span_closure(&GeneratorSet::new(images.to_vec())?, tol, None)?.dim;
        let z2 = CMatrix::zeros(2, 2);
        let e12 = block(2, &z2, &CMatrix::identity(2, 2), &z2, &z2);
        Some(QuotientReport { closure_dim: closure.dim, full_dim, e12_residual: closure.residual(&e12) })
    } else {
        None
    };
    Ok(FamilyReport {
        family,
        h_decomposition,
        a_squared,
        a_adjoint_squared,
        b_squared,
        b_squared_conjugate_phase,
        torus_commutator,
        ab_commutator,
        twisted_commutator,
        quotient,
    })
}

/// Images of `(U, V, W)` under the quotient map, in the Pauli representation.
fn quotient_images(family: Family) -> [CMatrix; 3] {
    let [sm, tm] = pauli_pair([Complex64::new(1.0, 0.0); 2]);
    let pw = |m: &CMatrix, e: i32| {
        let base = if e < 0 { m.adjoint() } else { m.clone() };
        (0..e.abs()).fold(CMatrix::identity(2, 2), |acc, _| acc * &base)
    };
    family.quotient_words().map(|w| pw(&sm, w[0]) * pw(&tm, w[1]))
}

/// The quotient map respects the torus relations only when every
/// commutation phase is `−1`.
pub fn quotient_is_homomorphism(point: &DPoint, family: Family) -> bool {
    let g = quotient_images(family);
    let q = point.q().map(Phase::value);
    [(0, 1), (0, 2), (1, 2)]
        .iter()
        .enumerate()
        .all(|(k, &(i, j))| max_abs(&(&g[i] * &g[j] - (&g[j] * &g[i]) * q[k])) < 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repn::{clock, shift};

    fn ph(n: i64, d: i64) -> Phase {
        Phase::new(n, d)
    }

    fn dpoint(t: [(i64, i64); 3]) -> DPoint {
        DPoint::new(t.map(|(n, d)| ph(n, d)))
    }

    #[test]
    fn identity_and_pauli_closures() {
        let id = GeneratorSet::new(vec![CMatrix::identity(3, 3)]).unwrap();
        assert_eq!(span_closure(&id, DEFAULT_TOL, None).unwrap().dim, 1);
        let p = GeneratorSet::new(vec![clock(2).unwrap(), shift(2).unwrap()]).unwrap();
        assert_eq!(span_closure(&p, DEFAULT_TOL, None).unwrap().dim, 4);
        let c = GeneratorSet::new(vec![clock(5).unwrap(), shift(5).unwrap()]).unwrap();
        assert_eq!(span_closure(&c, DEFAULT_TOL, None).unwrap().dim, 25);
    }

    #[test]
    fn closure_is_idempotent_and_monotone() {
        let p = GeneratorSet::new(vec![clock(3).unwrap()]).unwrap();
        let first = span_closure(&p, DEFAULT_TOL, None).unwrap();
        assert_eq!(first.dim, 3);
        let again = GeneratorSet::new((0..first.dim).map(|i| first.matrix(i)).collect()).unwrap();
        assert_eq!(span_closure(&again, DEFAULT_TOL, None).unwrap().dim, first.dim);
        let more = GeneratorSet::new(vec![clock(3).unwrap(), shift(3).unwrap()]).unwrap();
        assert!(span_closure(&more, DEFAULT_TOL, None).unwrap().dim >= first.dim);
    }

    #[test]
    fn reference_dims() {
        let triv = TorusRep::new(RationalSkew::zero(), Twist::trivial(), RepMode::General).unwrap();
        assert_eq!(reference_full_dim(1, &triv).unwrap(), 1);
        assert_eq!(reference_full_dim(4, &triv).unwrap(), 16);
        let r = TorusRep::new(RationalSkew::new([1, 0, 0], 3).unwrap(), Twist::trivial(), RepMode::AxisAligned)
            .unwrap();
        assert_eq!(reference_full_dim(2, &r).unwrap(), 4 * 9);
    }

    #[test]
    fn diamond_predicates() {
        assert_eq!(predict_case_d([Phase::ONE; 3]), DCase::IA);
        // χ² = (i, i, 1): q = 1, χ1⁴ = χ2⁴ = −1.
        assert_eq!(predict_case_d([ph(1, 8), ph(1, 8), Phase::ONE]), DCase::IB);
        assert_eq!(predict_case_d([ph(1, 4); 3]), DCase::IIA);
        // χ² = (−1, 1, 1) makes every q = −1.
        assert_eq!(predict_case_d([ph(1, 4), Phase::ONE, Phase::ONE]), DCase::IIB);
        assert_eq!(predict_case_d(dpoint([(0, 1), (1, 16), (1, 16)]).chi), DCase::III);
        assert_eq!(predict_case_d(dpoint([(1, 16), (0, 1), (-1, 16)]).chi), DCase::IV);
        assert_eq!(predict_case_d(dpoint([(1, 16), (-1, 16), (0, 1)]).chi), DCase::V);
        assert_eq!(predict_case_d(dpoint([(1, 16), (1, 8), (3, 16)]).chi), DCase::GenericFull);
        let float = dpoint([(1, 16), (0, 1), (-1, 16)]).params().chi;
        assert_eq!(predict_case_d(float), DCase::IV);
    }

    #[test]
    fn gyroid_predicates() {
        assert_eq!(predict_case_g([ph(1, 8), Phase::ONE, Phase::ONE]), GCase::I);
        assert_eq!(predict_case_g([Phase::ONE; 3]), GCase::II);
        assert_eq!(predict_case_g([ph(1, 8), ph(3, 8), ph(5, 8)]), GCase::I);
        assert_eq!(predict_case_g([ph(1, 8), ph(1, 8), ph(3, 4)]), GCase::III);
        assert_eq!(predict_case_g([ph(1, 4), ph(3, 4), Phase::ONE]), GCase::III);
    }

    #[test]
    fn suite_labels_match_predictions() {
        let suite = standard_suite();
        assert!(suite.len() >= 20);
        for sp in &suite {
            let (label, _) = sp.point.predicted();
            assert!(sp.label.starts_with(label), "{} vs {}", sp.label, label);
            let m = TorusRep::new(sp.point.skew().unwrap(), Twist::trivial(), RepMode::Reduced).unwrap().dim;
            assert!(m <= 8, "{}", sp.label);
        }
    }

    #[test]
    fn zero_field_is_commutative() {
        let v = classify_point(&ParamPoint::D(DPoint::new([Phase::ONE; 3])), &ClassifyConfig::default())
            .unwrap();
        assert_eq!(v.observed, Observed::Commutative);
        assert!(v.agree);
    }

    #[test]
    fn fermionic_point_is_proper() {
        let v = classify_point(&ParamPoint::D(DPoint::new([ph(1, 4); 3])), &ClassifyConfig::default())
            .unwrap();
        assert_eq!(v.observed, Observed::ProperSubalgebra, "{:?}", v.samples);
        assert!(v.agree);
    }

    #[test]
    fn fermionic_structure_passes() {
        let p = DPoint::new([ph(1, 4); 3]);
        let t = Twist::from_turns([0.25, 0.25, 0.0]);
        let r = structure_check_fermionic_d(&p, t, DEFAULT_TOL).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.h_split_residual < 1e-6, "{r:?}");
        let full = dpoint([(1, 16), (1, 8), (3, 16)]);
        assert!(structure_check_fermionic_d(&full, t, DEFAULT_TOL).is_err());
        let c = fermionic_control(&full, t, DEFAULT_TOL).unwrap();
        assert!(!c.checks[2] && c.e12_residual < 1e-6, "{c:?}");
    }

    #[test]
    fn family_squares() {
        let cases = [
            (Family::III, dpoint([(0, 1), (1, 8), (1, 8)])),
            (Family::IV, dpoint([(1, 8), (0, 1), (-1, 8)])),
            (Family::V, dpoint([(1, 8), (-1, 8), (0, 1)])),
        ];
        for (f, p) in cases {
            assert!(quotient_is_homomorphism(&p, f), "{f:?}");
            let far = match f {
                Family::III => dpoint([(0, 1), (1, 16), (1, 16)]),
                Family::IV => dpoint([(1, 16), (0, 1), (-1, 16)]),
                Family::V => dpoint([(1, 16), (-1, 16), (0, 1)]),
            };
            assert!(!quotient_is_homomorphism(&far, f));
            let r = structure_check_family(&p, f, Twist::from_turns([0.1, 0.2, 0.3]), DEFAULT_TOL).unwrap();
            assert!(r.h_decomposition < 1e-12, "{r:?}");
            assert!(r.a_adjoint_squared < 1e-12 && r.a_squared < 1e-12, "{r:?}");
            assert!(r.b_squared < 1e-12, "{r:?}");
            assert!(r.twisted_commutator < 1e-12, "{r:?}");
            // A ρ(V) and ρ(V) A differ by the embedding phase of V.
            assert!(r.torus_commutator > 0.1, "{r:?}");
            let q = r.quotient.clone().unwrap();
            assert_eq!(q.closure_dim, q.full_dim, "{r:?}");
        }
    }

    #[test]
    fn special_bosonic_closure_is_noncommutative() {
        let pt = ParamPoint::D(DPoint::new([ph(1, 8), ph(1, 8), Phase::ONE]));
        let ctx = PointContext::new(&pt, Twist::from_turns([0.13, 0.41, 0.77]), RepMode::Reduced).unwrap();
        assert!(GeneratorSet::new(ctx.rep.gens.to_vec()).unwrap().commutative(1e-12));
        let c = ctx.closure(DEFAULT_TOL).unwrap();
        assert!(c.max_commutator() > 0.1);
    }

    #[test]
    fn vanishing_generator_adds_nothing() {
        let tiny = CMatrix::identity(2, 2).map(|_| Complex64::new(1e-17, 0.0));
        let g = GeneratorSet::new(vec![clock(2).unwrap(), tiny]).unwrap();
        assert_eq!(span_closure(&g, DEFAULT_TOL, None).unwrap().dim, 2);
    }

    fn random_unitary_like(seed: u64, n: usize) -> CMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        CMatrix::from_fn(n, n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(40))]
        #[test]
        fn idempotent_and_monotone(seed in 0u64..1000, n in 1usize..4, diag in proptest::bool::ANY) {
            let mut a = random_unitary_like(seed, n);
            if diag {
                a = CMatrix::from_diagonal(&a.diagonal());
            }
            let g = GeneratorSet::new(vec![a.clone()]).unwrap();
            let c = span_closure(&g, DEFAULT_TOL, None).unwrap();
            let again = GeneratorSet::new((0..c.dim).map(|i| c.matrix(i)).collect()).unwrap();
            proptest::prop_assert_eq!(span_closure(&again, DEFAULT_TOL, None).unwrap().dim, c.dim);
            let more = GeneratorSet::new(vec![a, random_unitary_like(seed + 1, n)]).unwrap();
            proptest::prop_assert!(span_closure(&more, DEFAULT_TOL, None).unwrap().dim >= c.dim);
        }
    }
}
