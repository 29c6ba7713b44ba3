use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use serde_json::{json, Value};

use super::poly::{Exps, PhasePoly};

/// Exponents of `G1^a G2^b G3^c`, always in this normal order.
pub type Word = [i32; 3];

pub const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// Commutation data of a noncommutative 3-torus written over phase symbols:
/// `G_i G_j = m_ij G_j G_i` for `i < j`, where `m_ij` is a phase monomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorusAlgebra {
    /// Monomials for the pairs `(1,2)`, `(1,3)`, `(2,3)`.
    pub commutators: [Exps; 3],
    pub symbol_names: [&'static str; 3],
    pub generator_names: [&'static str; 3],
}

impl TorusAlgebra {
    /// Diamond torus in `U, V, W` with `q1, q2, q3` eliminated into `χ`s.
    pub fn diamond() -> TorusAlgebra {
        TorusAlgebra {
            commutators: crate::geometry::D_Q_EXPONENTS,
            symbol_names: ["chi1", "chi2", "chi3"],
            generator_names: ["U", "V", "W"],
        }
    }

    /// Gyroid torus in `A, B, C`: `AB = φ1⁴BA`, `AC = φ̄2⁴CA`, `BC = φ3⁴CB`.
    pub fn gyroid() -> TorusAlgebra {
        TorusAlgebra {
            commutators: [[4, 0, 0], [0, -4, 0], [0, 0, 4]],
            symbol_names: ["phi1", "phi2", "phi3"],
            generator_names: ["A", "B", "C"],
        }
    }

    /// Cubic torus; the symbols are the three commutation phases themselves.
    pub fn cubic() -> TorusAlgebra {
        TorusAlgebra {
            commutators: [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            symbol_names: ["q12", "q13", "q23"],
            generator_names: ["U1", "U2", "U3"],
        }
    }

    /// Phase monomial produced by normal-ordering `word(x) · word(y)`.
    pub fn reorder_phase(&self, x: Word, y: Word) -> Exps {
        let mut e = [0; 3];
        for (p, &(i, j)) in PAIRS.iter().enumerate() {
            // G_j^{x_j} G_i^{y_i} = m_ij^{−x_j y_i} G_i^{y_i} G_j^{x_j}
            let k = -y[i] * x[j];
            for s in 0..3 {
                e[s] += k * self.commutators[p][s];
            }
        }
        e
    }

    pub fn mul(&self, x: &TorusElement, y: &TorusElement) -> TorusElement {
        let mut out = TorusElement::zero();
        for (wx, cx) in &x.terms {
            for (wy, cy) in &y.terms {
                let phase = PhasePoly::monomial(self.reorder_phase(*wx, *wy));
                let c = &(cx * cy) * &phase;
                out.add_term([wx[0] + wy[0], wx[1] + wy[1], wx[2] + wy[2]], &c);
            }
        }
        out
    }

    pub fn adjoint(&self, x: &TorusElement) -> TorusElement {
        let mut out = TorusElement::zero();
        for (w, c) in &x.terms {
            // (G1^a G2^b G3^c)* = G3^{−c} G2^{−b} G1^{−a}
            let rev = self.mul(
                &self.mul(
                    &TorusElement::word([0, 0, -w[2]]),
                    &TorusElement::word([0, -w[1], 0]),
                ),
                &TorusElement::word([-w[0], 0, 0]),
            );
            out = out + rev.scale(&c.conj());
        }
        out
    }

    pub fn commutator(&self, x: &TorusElement, y: &TorusElement) -> TorusElement {
        self.mul(x, y) - self.mul(y, x)
    }

    pub fn display(&self, x: &TorusElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        x.terms
            .iter()
            .map(|(w, c)| {
                let mono: Vec<String> = (0..3)
                    .filter(|&k| w[k] != 0)
                    .map(|k| match w[k] {
                        1 => self.generator_names[k].to_string(),
                        p => format!("{}^{}", self.generator_names[k], p),
                    })
                    .collect();
                let word = if mono.is_empty() { "1".to_string() } else { mono.join("") };
                format!("({})*{}", c.display_with(self.symbol_names), word)
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Finite sum of normal-ordered words with phase-polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct TorusElement {
    terms: BTreeMap<Word, PhasePoly>,
}

impl TorusElement {
    pub fn zero() -> TorusElement {
        TorusElement::default()
    }

    pub fn one() -> TorusElement {
        TorusElement::word([0, 0, 0])
    }

    pub fn word(w: Word) -> TorusElement {
        TorusElement::term(w, PhasePoly::one())
    }

    pub fn generator(i: usize) -> TorusElement {
        let mut w = [0; 3];
        w[i] = 1;
        TorusElement::word(w)
    }

    pub fn scalar(c: PhasePoly) -> TorusElement {
        TorusElement::term([0, 0, 0], c)
    }

    pub fn term(w: Word, c: PhasePoly) -> TorusElement {
        let mut t = TorusElement::zero();
        t.add_term(w, &c);
        t
    }

    pub fn add_term(&mut self, w: Word, c: &PhasePoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: Word) -> PhasePoly {
        self.terms.get(&w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &PhasePoly)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &PhasePoly) -> TorusElement {
        let mut out = TorusElement::zero();
        for (w, v) in &self.terms {
            out.add_term(*w, &(v * c));
        }
        out
    }

    /// `[[word, [[exponents, coeff], ...]], ...]`
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(w, c)| json!([w, c.to_json()]))
                .collect(),
        )
    }
}

impl Add for TorusElement {
    type Output = TorusElement;
    fn add(mut self, o: TorusElement) -> TorusElement {
        for (w, c) in &o.terms {
            self.add_term(*w, c);
        }
        self
    }
}

impl Add for &TorusElement {
    type Output = TorusElement;
    fn add(self, o: &TorusElement) -> TorusElement {
        self.clone() + o.clone()
    }
}

impl Neg for TorusElement {
    type Output = TorusElement;
    fn neg(self) -> TorusElement {
        self.scale(&PhasePoly::constant(-1))
    }
}

impl Sub for TorusElement {
    type Output = TorusElement;
    fn sub(self, o: TorusElement) -> TorusElement {
        self + (-o)
    }
}

impl Sub for &TorusElement {
    type Output = TorusElement;
    fn sub(self, o: &TorusElement) -> TorusElement {
        self.clone() - o.clone()
    }
}
