//! Lattice data for the P, D and G networks, the magnetic bilinear form and
//! the phase parameters each network's torus algebra is written in.

use std::collections::VecDeque;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase::{format_rational, parse_rational, Phase};

/// Exact rational vector in lattice units.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct Vec3(pub [Rational64; 3]);

impl Vec3 {
    pub fn new(x: Rational64, y: Rational64, z: Rational64) -> Vec3 {
        Vec3([x, y, z])
    }

    /// `scale · (x, y, z)` with integer components.
    pub fn scaled(num: i64, den: i64, v: [i64; 3]) -> Vec3 {
        let s = Rational64::new(num, den);
        Vec3(v.map(|c| s * c))
    }

    pub fn zero() -> Vec3 {
        Vec3([Rational64::zero(); 3])
    }

    pub fn dot(&self, o: &Vec3) -> Rational64 {
        (0..3).map(|i| self.0[i] * o.0[i]).sum()
    }

    pub fn cross(&self, o: &Vec3) -> Vec3 {
        let [a1, a2, a3] = self.0;
        let [b1, b2, b3] = o.0;
        Vec3([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
    }

    pub fn scale(&self, s: Rational64) -> Vec3 {
        Vec3(self.0.map(|c| c * s))
    }

    pub fn to_f64(&self) -> [f64; 3] {
        self.0.map(|c| c.to_f64().unwrap())
    }

    fn to_strings(self) -> [String; 3] {
        self.0.map(format_rational)
    }

    fn from_strings(s: &[String; 3]) -> Result<Vec3> {
        Ok(Vec3([
            parse_rational(&s[0])?,
            parse_rational(&s[1])?,
            parse_rational(&s[2])?,
        ]))
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        self + (-o)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3(self.0.map(|c| -c))
    }
}

impl Mul<Vec3> for Rational64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v.scale(self)
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = self.to_strings();
        write!(f, "({x}, {y}, {z})")
    }
}

pub fn det3(a: &Vec3, b: &Vec3, c: &Vec3) -> Rational64 {
    a.dot(&b.cross(c))
}

/// Constant magnetic field; `Θ(v, w) = B·(v × w) / 2π`.
#[derive(Copy, Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct FieldB {
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
}

impl FieldB {
    pub fn new(b1: f64, b2: f64, b3: f64) -> FieldB {
        assert!(
            b1.is_finite() && b2.is_finite() && b3.is_finite(),
            "field components must be finite"
        );
        FieldB { b1, b2, b3 }
    }

    pub fn zero() -> FieldB {
        FieldB::new(0.0, 0.0, 0.0)
    }
}

/// The magnetic skew form evaluated on two lattice vectors.
pub fn theta_of(b: &FieldB, v: &Vec3, w: &Vec3) -> f64 {
    let c = v.cross(w).to_f64();
    (b.b1 * c[0] + b.b2 * c[1] + b.b3 * c[2]) / (2.0 * PI)
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize, Deserialize, Hash)]
pub enum LatticeKind {
    P,
    D,
    G,
}

impl LatticeKind {
    pub fn parse(name: &str) -> Result<LatticeKind> {
        match name.trim() {
            "P" | "p" => Ok(LatticeKind::P),
            "D" | "d" => Ok(LatticeKind::D),
            "G" | "g" => Ok(LatticeKind::G),
            other => Err(Error::UnknownLattice(other.to_string())),
        }
    }

    pub fn vertex_count(self) -> usize {
        match self {
            LatticeKind::P => 1,
            LatticeKind::D => 2,
            LatticeKind::G => 4,
        }
    }
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LatticeKind::P => "P",
            LatticeKind::D => "D",
            LatticeKind::G => "G",
        };
        f.write_str(s)
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub vector: Vec3,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct SpanningTree {
    pub root: usize,
    pub edges: Vec<usize>,
}

/// Quotient graph of a periodic network together with its translation
/// lattice and the rooted spanning tree fixing the matrix gauge.
#[derive(Clone, PartialEq, Debug)]
pub struct LatticeSpec {
    pub name: String,
    pub vertices: usize,
    pub edges: Vec<Edge>,
    pub basis: [Vec3; 3],
    pub tree: SpanningTree,
}

fn quarter(v: [i64; 3]) -> Vec3 {
    Vec3::scaled(1, 4, v)
}

fn half(v: [i64; 3]) -> Vec3 {
    Vec3::scaled(1, 2, v)
}

/// Tetrahedron vectors `e1..e4` of the diamond network.
pub fn diamond_edge_vectors() -> [Vec3; 4] {
    [
        quarter([1, 1, 1]),
        quarter([-1, -1, 1]),
        quarter([-1, 1, -1]),
        quarter([1, -1, -1]),
    ]
}

/// Tetrahedron edges `f2, f3, f4` incident to one vertex; they span fcc.
pub fn diamond_tetra_edges() -> [Vec3; 3] {
    [half([-1, -1, 0]), half([-1, 0, -1]), half([0, -1, -1])]
}

/// bcc generators `g1, g2, g3`.
pub fn gyroid_bcc_basis() -> [Vec3; 3] {
    [half([1, -1, 1]), half([-1, 1, 1]), half([1, 1, -1])]
}

/// Edge vectors `e1..e6` of the gyroid quotient graph.
pub fn gyroid_edge_vectors() -> [Vec3; 6] {
    [
        quarter([-1, 1, 0]),
        quarter([0, -1, 1]),
        quarter([1, 0, -1]),
        quarter([1, 1, 0]),
        quarter([0, -1, -1]),
        quarter([-1, 0, -1]),
    ]
}

pub fn builtin_lattice(kind: LatticeKind) -> LatticeSpec {
    match kind {
        LatticeKind::P => {
            let basis = [
                Vec3::scaled(1, 1, [1, 0, 0]),
                Vec3::scaled(1, 1, [0, 1, 0]),
                Vec3::scaled(1, 1, [0, 0, 1]),
            ];
            LatticeSpec {
                name: "P".into(),
                vertices: 1,
                edges: basis
                    .iter()
                    .map(|v| Edge { tail: 0, head: 0, vector: *v })
                    .collect(),
                basis,
                tree: SpanningTree { root: 0, edges: vec![] },
            }
        }
        LatticeKind::D => LatticeSpec {
            name: "D".into(),
            vertices: 2,
            edges: diamond_edge_vectors()
                .iter()
                .map(|v| Edge { tail: 0, head: 1, vector: *v })
                .collect(),
            basis: diamond_tetra_edges(),
            tree: SpanningTree { root: 0, edges: vec![0] },
        },
        LatticeKind::G => {
            // Vertex 0 is the root A; the orientation of e4, e5, e6 follows
            // the block structure of the Harper operator.
            let e = gyroid_edge_vectors();
            let edge = |tail, head, i: usize| Edge { tail, head, vector: e[i] };
            LatticeSpec {
                name: "G".into(),
                vertices: 4,
                edges: vec![
                    edge(0, 1, 0),
                    edge(0, 2, 1),
                    edge(0, 3, 2),
                    edge(3, 2, 3),
                    edge(3, 1, 4),
                    edge(1, 2, 5),
                ],
                basis: gyroid_bcc_basis(),
                tree: SpanningTree { root: 0, edges: vec![0, 1, 2] },
            }
        }
    }
}

impl LatticeSpec {
    pub fn builtin(name: &str) -> Result<LatticeSpec> {
        LatticeKind::parse(name).map(builtin_lattice)
    }

    /// Which builtin this spec is, if any (compared structurally).
    pub fn kind(&self) -> Option<LatticeKind> {
        [LatticeKind::P, LatticeKind::D, LatticeKind::G]
            .into_iter()
            .find(|k| builtin_lattice(*k) == *self)
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.vertices;
        let bad = |m: String| Err(Error::InvalidLattice(m));
        if k == 0 {
            return bad("no vertices".into());
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.tail >= k || e.head >= k {
                return bad(format!("edge {i} references a missing vertex"));
            }
        }
        if det3(&self.basis[0], &self.basis[1], &self.basis[2]).is_zero() {
            return bad("translation basis is degenerate".into());
        }
        if self.tree.root >= k {
            return bad("tree root out of range".into());
        }
        if self.tree.edges.len() != k - 1 {
            return bad(format!(
                "spanning tree has {} edges, expected {}",
                self.tree.edges.len(),
                k - 1
            ));
        }
        if self.tree.edges.iter().any(|&i| i >= self.edges.len()) {
            return bad("tree references a missing edge".into());
        }
        if !self.reaches_all(self.tree.edges.iter().copied()) {
            return bad("spanning tree does not touch every vertex".into());
        }
        if !self.reaches_all(0..self.edges.len()) {
            return bad("quotient graph is disconnected".into());
        }
        // Fails if an edge closes a loop that is not a lattice vector.
        self.loop_coordinates()?;
        Ok(())
    }

    fn reaches_all(&self, edges: impl Iterator<Item = usize>) -> bool {
        let mut adj = vec![vec![]; self.vertices];
        for i in edges {
            let e = &self.edges[i];
            adj[e.tail].push(e.head);
            adj[e.head].push(e.tail);
        }
        let mut seen = vec![false; self.vertices];
        let mut queue = VecDeque::from([self.tree.root]);
        seen[self.tree.root] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Position of every vertex relative to the root along the tree.
    pub fn tree_offsets(&self) -> Vec<Vec3> {
        let mut off: Vec<Option<Vec3>> = vec![None; self.vertices];
        off[self.tree.root] = Some(Vec3::zero());
        let mut changed = true;
        while changed {
            changed = false;
            for &i in &self.tree.edges {
                let e = &self.edges[i];
                match (off[e.tail], off[e.head]) {
                    (Some(t), None) => {
                        off[e.head] = Some(t + e.vector);
                        changed = true;
                    }
                    (None, Some(h)) => {
                        off[e.tail] = Some(h - e.vector);
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
        off.into_iter().map(|o| o.unwrap_or_else(Vec3::zero)).collect()
    }

    /// Coordinates of `v` in the translation basis (exact).
    pub fn basis_coordinates(&self, v: &Vec3) -> [Rational64; 3] {
        let [a, b, c] = &self.basis;
        let d = det3(a, b, c);
        [det3(v, b, c) / d, det3(a, v, c) / d, det3(a, b, v) / d]
    }

    /// Integer basis coordinates of `t_tail + e − t_head` for every edge:
    /// the lattice translation each hopping term carries in the tree gauge.
    pub fn loop_coordinates(&self) -> Result<Vec<[i32; 3]>> {
        let off = self.tree_offsets();
        self.edges
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let v = off[e.tail] + e.vector - off[e.head];
                let c = self.basis_coordinates(&v);
                if c.iter().all(|x| x.is_integer()) {
                    Ok(c.map(|x| x.to_integer() as i32))
                } else {
                    Err(Error::InvalidLattice(format!(
                        "edge {i} closes the non-lattice vector {v}"
                    )))
                }
            })
            .collect()
    }

    /// Whether the loop translations generate the whole translation group,
    /// i.e. the gcd of their 3x3 minors is 1.
    pub fn loops_generate_lattice(&self) -> Result<bool> {
        let c = self.loop_coordinates()?;
        let mut g = 0i64;
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                for k in j + 1..c.len() {
                    let m = |r: [i32; 3]| r.map(|x| x as i64);
                    let (a, b, d) = (m(c[i]), m(c[j]), m(c[k]));
                    let det = a[0] * (b[1] * d[2] - b[2] * d[1])
                        - a[1] * (b[0] * d[2] - b[2] * d[0])
                        + a[2] * (b[0] * d[1] - b[1] * d[0]);
                    g = g.gcd(&det.abs());
                }
            }
        }
        Ok(g == 1)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&LatticeJson::from(self))?)
    }

    pub fn from_json(s: &str) -> Result<LatticeSpec> {
        let raw: LatticeJson = serde_json::from_str(s)?;
        let spec = raw.into_spec()?;
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Serialize, Deserialize)]
struct LatticeJson {
    name: String,
    vertices: usize,
    edges: Vec<(usize, usize, [String; 3])>,
    basis: [[String; 3]; 3],
    tree: SpanningTree,
}

impl From<&LatticeSpec> for LatticeJson {
    fn from(s: &LatticeSpec) -> LatticeJson {
        LatticeJson {
            name: s.name.clone(),
            vertices: s.vertices,
            edges: s
                .edges
                .iter()
                .map(|e| (e.tail, e.head, e.vector.to_strings()))
                .collect(),
            basis: s.basis.map(|b| b.to_strings()),
            tree: s.tree.clone(),
        }
    }
}

impl LatticeJson {
    fn into_spec(self) -> Result<LatticeSpec> {
        let edges = self
            .edges
            .iter()
            .map(|(t, h, v)| Ok(Edge { tail: *t, head: *h, vector: Vec3::from_strings(v)? }))
            .collect::<Result<Vec<_>>>()?;
        Ok(LatticeSpec {
            name: self.name,
            vertices: self.vertices,
            edges,
            basis: [
                Vec3::from_strings(&self.basis[0])?,
                Vec3::from_strings(&self.basis[1])?,
                Vec3::from_strings(&self.basis[2])?,
            ],
            tree: self.tree,
        })
    }
}

/// How the Θ values on the diamond edges are turned into phases `χ`.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum ExponentConvention {
    /// `χ = exp(iπΘ)`: makes `exp(2πiΘ(f_i, f_j))` equal the `q` monomials.
    TorusUnits,
    /// `χ = exp(iΘ)`, the literal reading.
    RadianUnits,
}

fn unit(angle: f64) -> Complex64 {
    Complex64::from_polar(1.0, angle)
}

/// `q1 = χ̄1²χ2²χ3²`, `q2 = χ̄1⁶χ̄2²χ̄3²`, `q3 = χ̄1²χ̄2⁶χ3²` as exponent triples.
pub const D_Q_EXPONENTS: [[i32; 3]; 3] = [[-2, 2, 2], [-6, -2, -2], [-2, -6, 2]];

fn monomial_value(z: &[Complex64; 3], e: [i32; 3]) -> Complex64 {
    (0..3).map(|i| z[i].powi(e[i])).product()
}

/// Diamond phase parameters; the `q`s are always derived from the `χ`s.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct DParams {
    pub chi: [Complex64; 3],
    pub q: [Complex64; 3],
    /// `exp(2πiΘ(f2,f3))`, `exp(2πiΘ(f2,f4))`, `exp(2πiΘ(f3,f4))` when
    /// built from a field.
    pub geometric_commutators: Option<[Complex64; 3]>,
}

impl DParams {
    pub fn from_chi(chi: [Complex64; 3]) -> DParams {
        let chi = chi.map(|c| c / c.norm());
        let q = D_Q_EXPONENTS.map(|e| monomial_value(&chi, e));
        DParams { chi, q, geometric_commutators: None }
    }

    /// Largest deviation in `χ1⁸ = q̄1q̄2`, `χ2⁸ = q1q̄3`, `χ3⁸ = q1²q̄2q3`.
    pub fn eighth_power_residual(&self) -> f64 {
        let [c1, c2, c3] = self.chi;
        let [q1, q2, q3] = self.q;
        [
            (c1.powi(8) - q1.conj() * q2.conj()).norm(),
            (c2.powi(8) - q1 * q3.conj()).norm(),
            (c3.powi(8) - q1 * q1 * q2.conj() * q3).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Θ on `(−e1, e2)`, `(−e1, e3)`, `(e2, e3)`.
pub fn d_theta_values(b: &FieldB) -> [f64; 3] {
    let [e1, e2, e3, _] = diamond_edge_vectors();
    [
        theta_of(b, &-e1, &e2),
        theta_of(b, &-e1, &e3),
        theta_of(b, &e2, &e3),
    ]
}

pub fn d_params_from_field(b: &FieldB, convention: ExponentConvention) -> DParams {
    let scale = match convention {
        ExponentConvention::TorusUnits => PI,
        ExponentConvention::RadianUnits => 1.0,
    };
    let mut p = DParams::from_chi(d_theta_values(b).map(|t| unit(scale * t)));
    let [f2, f3, f4] = diamond_tetra_edges();
    let comm = |v: &Vec3, w: &Vec3| unit(2.0 * PI * theta_of(b, v, w));
    p.geometric_commutators = Some([comm(&f2, &f3), comm(&f2, &f4), comm(&f3, &f4)]);
    p
}

/// Gyroid phase parameters `φ_i`, `Φ = φ1φ2φ3`, `α_i = φ_i⁴`.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct GParams {
    pub phi: [Complex64; 3],
    pub phi_product: Complex64,
    pub alpha: [Complex64; 3],
}

impl GParams {
    pub fn from_phi(phi: [Complex64; 3]) -> GParams {
        let phi = phi.map(|c| c / c.norm());
        GParams {
            phi,
            phi_product: phi[0] * phi[1] * phi[2],
            alpha: phi.map(|p| p * p * p * p),
        }
    }
}

/// `θ12`, `θ13`, `θ23` on the bcc generators.
pub fn g_theta_values(b: &FieldB) -> [f64; 3] {
    let [g1, g2, g3] = gyroid_bcc_basis();
    [theta_of(b, &g1, &g2), theta_of(b, &g1, &g3), theta_of(b, &g2, &g3)]
}

pub fn g_params_from_field(b: &FieldB) -> GParams {
    let [t12, t13, t23] = g_theta_values(b);
    // φ2 is built from θ31 = −θ13.
    GParams::from_phi([
        unit(0.5 * PI * t12),
        unit(-0.5 * PI * t13),
        unit(0.5 * PI * t23),
    ])
}

/// Exact diamond parameter point, `χ_i = exp(2πi·r_i)`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct DPoint {
    pub chi: [Phase; 3],
}

impl DPoint {
    pub fn new(chi: [Phase; 3]) -> DPoint {
        DPoint { chi }
    }

    pub fn q(&self) -> [Phase; 3] {
        D_Q_EXPONENTS.map(|e| Phase::monomial(&self.chi, e))
    }

    pub fn params(&self) -> DParams {
        DParams::from_chi(self.chi.map(Phase::value))
    }

    /// Commutation phases of `(U,V)`, `(U,W)`, `(V,W)` as rational turns.
    pub fn skew_turns(&self) -> [Rational64; 3] {
        self.q().map(Phase::turn)
    }
}

/// Exact gyroid parameter point, `φ_i = exp(2πi·r_i)`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct GPoint {
    pub phi: [Phase; 3],
}

impl GPoint {
    pub fn new(phi: [Phase; 3]) -> GPoint {
        GPoint { phi }
    }

    pub fn alpha(&self) -> [Phase; 3] {
        self.phi.map(|p| p.pow(4))
    }

    pub fn phi_product(&self) -> Phase {
        self.phi[0] * self.phi[1] * self.phi[2]
    }

    pub fn params(&self) -> GParams {
        GParams::from_phi(self.phi.map(Phase::value))
    }

    /// Commutation phases of `(A,B)`, `(A,C)`, `(B,C)`: `α1`, `ᾱ2`, `α3`.
    pub fn skew_turns(&self) -> [Rational64; 3] {
        let a = self.alpha();
        [a[0].turn(), a[1].conj().turn(), a[2].turn()]
    }
}

/// Rational skew values of a field whose Θ on the given basis is rational.
pub fn rational_theta(b_num: [Rational64; 3], v: &Vec3, w: &Vec3) -> Rational64 {
    // B = 2π·b_num: Θ(v,w) = b_num·(v×w).
    let c = v.cross(w);
    (0..3).map(|i| b_num[i] * c.0[i]).sum::<Rational64>()
}

impl fmt::Display for DPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.chi;
        write!(f, "chi=({a},{b},{c})")
    }
}

impl fmt::Display for GPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.phi;
        write!(f, "phi=({a},{b},{c})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn theta_trivial_values() {
        let b = FieldB::new(0.0, 0.0, 2.0 * PI);
        let x = Vec3::scaled(1, 1, [1, 0, 0]);
        let y = Vec3::scaled(1, 1, [0, 1, 0]);
        assert!((theta_of(&b, &x, &y) - 1.0).abs() < 1e-15);
        assert_eq!(theta_of(&b, &x, &x), 0.0);
    }

    #[test]
    fn theta_on_diamond_vectors_matches_hand_cross_product() {
        // −e1 × e2 = −(1/16)·(1,1,1)×(−1,−1,1) = −(1/16)(2,−2,0); z-part 0.
        // Use a general field to exercise all components.
        let b = FieldB::new(2.0 * PI * 3.0, -2.0 * PI, 2.0 * PI * 5.0);
        let [e1, e2, ..] = diamond_edge_vectors();
        // (1,1,1)×(−1,−1,1) = (1·1−1·(−1), 1·(−1)−1·1, 1·(−1)−1·(−1)) = (2,−2,0)
        // −e1×e2 = −(1/16)(2,−2,0); dot with (3,−1,5) = −(1/16)(6+2) = −1/2.
        assert!((theta_of(&b, &-e1, &e2) + 0.5).abs() < 1e-14);
    }

    #[test]
    fn tetra_edges_are_differences() {
        let [e1, e2, e3, e4] = diamond_edge_vectors();
        let [f2, f3, f4] = diamond_tetra_edges();
        assert_eq!(f2, e2 - e1);
        assert_eq!(f3, e3 - e1);
        assert_eq!(f4, e4 - e1);
        assert_eq!(e1 + e2 + e3 + e4, Vec3::zero());
    }

    #[test]
    fn builtins_validate_and_generate() {
        for k in [LatticeKind::P, LatticeKind::D, LatticeKind::G] {
            let s = builtin_lattice(k);
            s.validate().unwrap();
            assert!(s.loops_generate_lattice().unwrap(), "{k}");
            assert_eq!(s.kind(), Some(k));
            assert_eq!(s.vertices, k.vertex_count());
        }
        let d = builtin_lattice(LatticeKind::D);
        assert_eq!(
            d.loop_coordinates().unwrap(),
            vec![[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]
        );
    }

    #[test]
    fn gyroid_loops_are_bcc_generators() {
        let g = builtin_lattice(LatticeKind::G);
        let loops = g.loop_coordinates().unwrap();
        // Tree edges are trivial; e4 closes C, e5 closes B*, e6 closes A*.
        assert_eq!(&loops[..3], &[[0, 0, 0]; 3]);
        assert_eq!(loops[3], [0, 0, 1]);
        assert_eq!(loops[4], [0, -1, 0]);
        assert_eq!(loops[5], [-1, 0, 0]);
    }

    #[test]
    fn json_round_trip_and_rejections() {
        let g = builtin_lattice(LatticeKind::G);
        let s = g.to_json().unwrap();
        assert!(s.contains("\"1/4\"") || s.contains("\"-1/4\""));
        assert_eq!(LatticeSpec::from_json(&s).unwrap(), g);

        let mut broken = builtin_lattice(LatticeKind::D);
        broken.tree.edges.clear();
        let j = broken.to_json().unwrap();
        assert!(LatticeSpec::from_json(&j).is_err());

        let mut flat = builtin_lattice(LatticeKind::P);
        flat.basis[2] = flat.basis[0];
        assert!(flat.validate().is_err());
        assert!(LatticeSpec::builtin("Q").is_err());
    }

    #[test]
    fn zero_field_params_are_trivial() {
        let d = d_params_from_field(&FieldB::zero(), ExponentConvention::TorusUnits);
        for z in d.chi.iter().chain(d.q.iter()) {
            assert!((z - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
        let g = g_params_from_field(&FieldB::zero());
        assert!((g.phi_product - 1.0).norm() < 1e-15);
        assert!(g.alpha.iter().all(|a| (a - 1.0).norm() < 1e-15));
    }

    #[test]
    fn torus_units_match_geometric_commutators() {
        let b = FieldB::new(0.7, -1.3, 2.1);
        let d = d_params_from_field(&b, ExponentConvention::TorusUnits);
        let geo = d.geometric_commutators.unwrap();
        for i in 0..3 {
            assert!((d.q[i] - geo[i]).norm() < 1e-12, "q{}", i + 1);
        }
        let rad = d_params_from_field(&b, ExponentConvention::RadianUnits);
        assert!((rad.q[0] - geo[0]).norm() > 1e-3);
    }

    #[test]
    fn exact_points_agree_with_float_params() {
        let p = DPoint::new([Phase::new(1, 8), Phase::new(3, 16), Phase::new(5, 8)]);
        let f = p.params();
        for (exact, float) in p.q().iter().zip(f.q) {
            assert!((exact.value() - float).norm() < 1e-12);
        }
        let g = GPoint::new([Phase::new(1, 4), Phase::new(1, 8), Phase::new(3, 8)]);
        let gp = g.params();
        for (exact, float) in g.alpha().iter().zip(gp.alpha) {
            assert!((exact.value() - float).norm() < 1e-12);
        }
        assert_eq!(g.skew_turns()[1], g.alpha()[1].conj().turn());
    }

    #[test]
    fn rational_theta_is_exact() {
        let [g1, g2, _] = gyroid_bcc_basis();
        // B = 2π(0,0,1): g1×g2 = (1/4)·((−1)(1)−(1)(1), (1)(−1)−(1)(1), (1)(1)−(−1)(−1)) = (1/4)(−2,−2,0)
        assert_eq!(rational_theta([r(0, 1), r(0, 1), r(1, 1)], &g1, &g2), r(0, 1));
        assert_eq!(rational_theta([r(1, 1), r(0, 1), r(0, 1)], &g1, &g2), r(-1, 2));
    }
}
