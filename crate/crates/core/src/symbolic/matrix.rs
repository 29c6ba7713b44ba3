use std::ops::{Add, Sub};

use serde_json::Value;

use super::poly::{Exps, PhasePoly};
use super::torus::{TorusAlgebra, TorusElement};
use crate::geometry::LatticeKind;

/// Square matrix of torus elements.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorusMatrix {
    k: usize,
    entries: Vec<TorusElement>,
}

impl TorusMatrix {
    pub fn zeros(k: usize) -> TorusMatrix {
        TorusMatrix { k, entries: vec![TorusElement::zero(); k * k] }
    }

    pub fn identity(k: usize) -> TorusMatrix {
        TorusMatrix::diagonal((0..k).map(|_| TorusElement::one()).collect())
    }

    pub fn diagonal(d: Vec<TorusElement>) -> TorusMatrix {
        let mut m = TorusMatrix::zeros(d.len());
        for (i, x) in d.into_iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    /// `E_ij` with a unit entry, zero-based.
    pub fn unit(k: usize, i: usize, j: usize) -> TorusMatrix {
        let mut m = TorusMatrix::zeros(k);
        m.set(i, j, TorusElement::one());
        m
    }

    pub fn size(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> &TorusElement {
        &self.entries[i * self.k + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: TorusElement) {
        self.entries[i * self.k + j] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(TorusElement::is_zero)
    }

    pub fn scale(&self, c: &PhasePoly) -> TorusMatrix {
        TorusMatrix {
            k: self.k,
            entries: self.entries.iter().map(|x| x.scale(c)).collect(),
        }
    }

    pub fn mul(&self, alg: &TorusAlgebra, o: &TorusMatrix) -> TorusMatrix {
        assert_eq!(self.k, o.k);
        let k = self.k;
        let mut out = TorusMatrix::zeros(k);
        for i in 0..k {
            for j in 0..k {
                let mut acc = TorusElement::zero();
                for l in 0..k {
                    let (a, b) = (self.get(i, l), o.get(l, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + alg.mul(a, b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn adjoint(&self, alg: &TorusAlgebra) -> TorusMatrix {
        let mut out = TorusMatrix::zeros(self.k);
        for i in 0..self.k {
            for j in 0..self.k {
                out.set(j, i, alg.adjoint(self.get(i, j)));
            }
        }
        out
    }

    pub fn is_hermitian(&self, alg: &TorusAlgebra) -> bool {
        self.adjoint(alg) == *self
    }

    /// Nonzero entries as `((i, j), element)`, zero-based.
    pub fn nonzero_entries(&self) -> Vec<((usize, usize), &TorusElement)> {
        (0..self.k * self.k)
            .filter(|&n| !self.entries[n].is_zero())
            .map(|n| ((n / self.k, n % self.k), &self.entries[n]))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.k)
                .map(|i| Value::Array((0..self.k).map(|j| self.get(i, j).to_json()).collect()))
                .collect(),
        )
    }
}

impl Add for &TorusMatrix {
    type Output = TorusMatrix;
    fn add(self, o: &TorusMatrix) -> TorusMatrix {
        TorusMatrix {
            k: self.k,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &TorusMatrix {
    type Output = TorusMatrix;
    fn sub(self, o: &TorusMatrix) -> TorusMatrix {
        TorusMatrix {
            k: self.k,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

/// The torus algebra of a lattice together with its diagonal embedding.
///
/// Vertex `v` sees generator `G_i` as `s_{v,i} G_i`, where `s_{v,i}` is a
/// phase monomial fixed by the spanning-tree gauge.
#[derive(Clone, Debug)]
pub struct SymbolicLattice {
    pub kind: LatticeKind,
    pub algebra: TorusAlgebra,
    pub vertex_phases: Vec<[Exps; 3]>,
}

impl SymbolicLattice {
    pub fn new(kind: LatticeKind) -> SymbolicLattice {
        let z = [0, 0, 0];
        match kind {
            LatticeKind::P => SymbolicLattice {
                kind,
                algebra: TorusAlgebra::cubic(),
                vertex_phases: vec![[z; 3]],
            },
            LatticeKind::D => SymbolicLattice {
                kind,
                algebra: TorusAlgebra::diamond(),
                vertex_phases: vec![[z; 3], [[2, 0, 0], [0, 2, 0], [-2, -2, 0]]],
            },
            LatticeKind::G => SymbolicLattice {
                kind,
                algebra: TorusAlgebra::gyroid(),
                vertex_phases: vec![
                    [z; 3],
                    [[1, 0, 0], [1, 0, 0], [0, -1, -1]],
                    [[0, 1, 0], [-1, 0, -1], [0, 1, 0]],
                    [[-1, -1, 0], [0, 0, 1], [0, 0, 1]],
                ],
            },
        }
    }

    pub fn k(&self) -> usize {
        self.vertex_phases.len()
    }

    pub fn generator(&self, i: usize) -> TorusElement {
        TorusElement::generator(i)
    }

    pub fn generator_adjoint(&self, i: usize) -> TorusElement {
        self.algebra.adjoint(&TorusElement::generator(i))
    }

    /// Automorphism of the torus seen at vertex `v`.
    pub fn vertex_automorphism(&self, v: usize, x: &TorusElement) -> TorusElement {
        let s = &self.vertex_phases[v];
        let mut out = TorusElement::zero();
        for (w, c) in x.terms() {
            let mut e = [0; 3];
            for i in 0..3 {
                for t in 0..3 {
                    e[t] += w[i] * s[i][t];
                }
            }
            out.add_term(*w, &(c * &PhasePoly::monomial(e)));
        }
        out
    }

    /// `ρ(x) = diag(σ_0(x), …, σ_{k−1}(x))`.
    pub fn rho(&self, x: &TorusElement) -> TorusMatrix {
        TorusMatrix::diagonal((0..self.k()).map(|v| self.vertex_automorphism(v, x)).collect())
    }

    /// The matrix Harper operator.
    pub fn harper(&self) -> TorusMatrix {
        let g = |i| self.generator(i);
        let ga = |i| self.generator_adjoint(i);
        let one = TorusElement::one;
        match self.kind {
            LatticeKind::P => {
                let mut h = TorusElement::zero();
                for i in 0..3 {
                    h = h + g(i) + ga(i);
                }
                TorusMatrix::diagonal(vec![h])
            }
            LatticeKind::D => {
                let lower = one() + g(0) + g(1) + g(2);
                let upper = self.algebra.adjoint(&lower);
                let mut h = TorusMatrix::zeros(2);
                h.set(0, 1, upper);
                h.set(1, 0, lower);
                h
            }
            LatticeKind::G => {
                let mut h = TorusMatrix::zeros(4);
                for v in 1..4 {
                    h.set(0, v, one());
                    h.set(v, 0, one());
                }
                h.set(1, 2, g(0));
                h.set(2, 1, ga(0));
                h.set(1, 3, ga(1));
                h.set(3, 1, g(1));
                h.set(2, 3, g(2));
                h.set(3, 2, ga(2));
                h
            }
        }
    }

    /// `X − s·ρ(m) X ρ(m)*`.
    pub fn conj_reduce(&self, x: &TorusMatrix, m: &TorusElement, s: &PhasePoly) -> TorusMatrix {
        self.conj_reduce_weighted(x, &PhasePoly::one(), m, s)
    }

    /// `w·X − s·ρ(m) X ρ(m)*`.
    pub fn conj_reduce_weighted(
        &self,
        x: &TorusMatrix,
        w: &PhasePoly,
        m: &TorusElement,
        s: &PhasePoly,
    ) -> TorusMatrix {
        let r = self.rho(m);
        let conj = r.mul(&self.algebra, x).mul(&self.algebra, &r.adjoint(&self.algebra));
        &x.scale(w) - &conj.scale(s)
    }
}

/// Diamond `x ↦ x̂`: `U ↦ χ1²U`, `V ↦ χ2²V`, `W ↦ χ̄1²χ̄2²W`.
pub fn diamond_hat(x: &TorusElement) -> TorusElement {
    SymbolicLattice::new(LatticeKind::D).vertex_automorphism(1, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::torus::Word;
    use proptest::prelude::*;

    fn lat(kind: LatticeKind) -> SymbolicLattice {
        SymbolicLattice::new(kind)
    }

    #[test]
    fn diamond_rho_matches_displayed_embedding() {
        let d = lat(LatticeKind::D);
        let u = TorusElement::generator(0);
        let r = d.rho(&u);
        assert_eq!(*r.get(0, 0), u);
        assert_eq!(*r.get(1, 1), u.scale(&PhasePoly::monomial([2, 0, 0])));
        assert!(r.get(0, 1).is_zero());
        let w = d.rho(&TorusElement::generator(2));
        assert_eq!(w.get(1, 1).coefficient([0, 0, 1]), PhasePoly::monomial([-2, -2, 0]));
    }

    #[test]
    fn harper_entries_and_hermiticity() {
        let d = lat(LatticeKind::D);
        let h = d.harper();
        let lower = TorusElement::one()
            + TorusElement::generator(0)
            + TorusElement::generator(1)
            + TorusElement::generator(2);
        assert_eq!(*h.get(1, 0), lower);
        let g = lat(LatticeKind::G);
        let hg = g.harper();
        assert_eq!(*hg.get(1, 2), TorusElement::generator(0));
        assert_eq!(*hg.get(1, 3), g.generator_adjoint(1));
        for l in [LatticeKind::P, LatticeKind::D, LatticeKind::G] {
            let s = lat(l);
            assert!(s.harper().is_hermitian(&s.algebra), "{l}");
        }
        let p = lat(LatticeKind::P).harper();
        assert_eq!(p.get(0, 0).terms().count(), 6);
    }

    #[test]
    fn reducing_zero_gives_zero() {
        let d = lat(LatticeKind::D);
        let z = TorusMatrix::zeros(2);
        let out = d.conj_reduce(&z, &TorusElement::generator(0), &PhasePoly::monomial([-2, 0, 0]));
        assert!(out.is_zero());
    }

    #[test]
    fn hat_squares_to_identity_on_fourth_roots() {
        // hat∘hat multiplies U by χ1⁴, V by χ2⁴, W by χ̄1⁴χ̄2⁴.
        let x = TorusElement::generator(0) + TorusElement::generator(2);
        let twice = diamond_hat(&diamond_hat(&x));
        assert_eq!(twice.coefficient([1, 0, 0]), PhasePoly::monomial([4, 0, 0]));
        assert_eq!(twice.coefficient([0, 0, 1]), PhasePoly::monomial([-4, -4, 0]));
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        (-2i32..3, -2i32..3, -2i32..3).prop_map(|(a, b, c)| [a, b, c])
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn rho_is_a_unital_star_homomorphism(x in arb_word(), y in arb_word()) {
            for kind in [LatticeKind::D, LatticeKind::G] {
                let s = lat(kind);
                let (a, b) = (TorusElement::word(x), TorusElement::word(y));
                let alg = &s.algebra;
                prop_assert_eq!(s.rho(&alg.mul(&a, &b)), s.rho(&a).mul(alg, &s.rho(&b)));
                prop_assert_eq!(s.rho(&alg.adjoint(&a)), s.rho(&a).adjoint(alg));
                prop_assert_eq!(s.rho(&TorusElement::one()), TorusMatrix::identity(s.k()));
            }
        }
    }
}
