use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::phase::Phase;

pub type Exps = [i32; 3];

/// Integer Laurent polynomial in three unit-modulus phase symbols.
///
/// Conjugation inverts every symbol, so `conj` negates exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct PhasePoly {
    terms: BTreeMap<Exps, i64>,
}

fn add_exps(a: Exps, b: Exps) -> Exps {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

impl PhasePoly {
    pub fn zero() -> PhasePoly {
        PhasePoly::default()
    }

    pub fn one() -> PhasePoly {
        PhasePoly::constant(1)
    }

    pub fn constant(c: i64) -> PhasePoly {
        PhasePoly::term(c, [0, 0, 0])
    }

    pub fn monomial(e: Exps) -> PhasePoly {
        PhasePoly::term(1, e)
    }

    pub fn term(c: i64, e: Exps) -> PhasePoly {
        let mut p = PhasePoly::zero();
        p.add_term(e, c);
        p
    }

    /// `1 − monomial(e)`, the factor shape that fills the reduction formulas.
    pub fn one_minus(e: Exps) -> PhasePoly {
        PhasePoly::one() - PhasePoly::monomial(e)
    }

    pub fn add_term(&mut self, e: Exps, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(e).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &i64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Single-term polynomial with coefficient 1, if it is one.
    pub fn as_monomial(&self) -> Option<Exps> {
        match self.terms.iter().next() {
            Some((e, 1)) if self.terms.len() == 1 => Some(*e),
            _ => None,
        }
    }

    pub fn conj(&self) -> PhasePoly {
        PhasePoly {
            terms: self.terms.iter().map(|(e, c)| (e.map(|x| -x), *c)).collect(),
        }
    }

    pub fn scale(&self, c: i64) -> PhasePoly {
        let mut out = PhasePoly::zero();
        for (e, v) in &self.terms {
            out.add_term(*e, v * c);
        }
        out
    }

    pub fn eval(&self, z: &[Complex64; 3]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let m: Complex64 = (0..3).map(|i| z[i].powi(e[i])).product();
                m * *c as f64
            })
            .sum()
    }

    pub fn eval_phases(&self, z: &[Phase; 3]) -> Complex64 {
        self.eval(&z.map(Phase::value))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.terms.iter().map(|(e, c)| json!([e, c])).collect())
    }

    pub fn display_with(&self, names: [&str; 3]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = (0..3)
                .filter(|&k| e[k] != 0)
                .map(|k| match e[k] {
                    1 => names[k].to_string(),
                    p => format!("{}^{}", names[k], p),
                })
                .collect();
            let sign = if *c < 0 { "-" } else if i > 0 { "+" } else { "" };
            let mag = c.abs();
            let body = match (mono.is_empty(), mag) {
                (true, m) => m.to_string(),
                (false, 1) => mono.join("*"),
                (false, m) => format!("{}*{}", m, mono.join("*")),
            };
            if i > 0 {
                out.push(' ');
            }
            out.push_str(sign);
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for PhasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(["x1", "x2", "x3"]))
    }
}

impl AddAssign<&PhasePoly> for PhasePoly {
    fn add_assign(&mut self, o: &PhasePoly) {
        for (e, c) in &o.terms {
            self.add_term(*e, *c);
        }
    }
}

impl Add for &PhasePoly {
    type Output = PhasePoly;
    fn add(self, o: &PhasePoly) -> PhasePoly {
        let mut out = self.clone();
        out += o;
        out
    }
}

impl Add for PhasePoly {
    type Output = PhasePoly;
    fn add(mut self, o: PhasePoly) -> PhasePoly {
        self += &o;
        self
    }
}

impl Neg for &PhasePoly {
    type Output = PhasePoly;
    fn neg(self) -> PhasePoly {
        self.scale(-1)
    }
}

impl Neg for PhasePoly {
    type Output = PhasePoly;
    fn neg(self) -> PhasePoly {
        self.scale(-1)
    }
}

impl Sub for &PhasePoly {
    type Output = PhasePoly;
    fn sub(self, o: &PhasePoly) -> PhasePoly {
        self + &(-o)
    }
}

impl Sub for PhasePoly {
    type Output = PhasePoly;
    fn sub(self, o: PhasePoly) -> PhasePoly {
        &self - &o
    }
}

impl Mul for &PhasePoly {
    type Output = PhasePoly;
    fn mul(self, o: &PhasePoly) -> PhasePoly {
        let mut out = PhasePoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                out.add_term(add_exps(*ea, *eb), ca * cb);
            }
        }
        out
    }
}

impl Mul for PhasePoly {
    type Output = PhasePoly;
    fn mul(self, o: PhasePoly) -> PhasePoly {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_poly() -> impl Strategy<Value = PhasePoly> {
        prop::collection::vec(((-3i32..4, -3i32..4, -3i32..4), -4i64..5), 0..5).prop_map(
            |ts| {
                let mut p = PhasePoly::zero();
                for ((a, b, c), k) in ts {
                    p.add_term([a, b, c], k);
                }
                p
            },
        )
    }

    fn arb_units() -> impl Strategy<Value = [Complex64; 3]> {
        (0.0..6.3f64, 0.0..6.3f64, 0.0..6.3f64)
            .prop_map(|(a, b, c)| [a, b, c].map(|t| Complex64::from_polar(1.0, t)))
    }

    #[test]
    fn zero_terms_are_dropped() {
        let mut p = PhasePoly::monomial([1, 0, 0]);
        p.add_term([1, 0, 0], -1);
        assert!(p.is_zero());
        assert_eq!(&PhasePoly::one() - &PhasePoly::one(), PhasePoly::zero());
    }

    #[test]
    fn display_is_readable() {
        let p = PhasePoly::one_minus([4, 4, 0]);
        assert_eq!(p.display_with(["c1", "c2", "c3"]), "1 - c1^4*c2^4");
    }

    proptest! {
        #[test]
        fn evaluation_is_a_ring_homomorphism(a in arb_poly(), b in arb_poly(), z in arb_units()) {
            let sum = (&a + &b).eval(&z) - (a.eval(&z) + b.eval(&z));
            let prod = (&a * &b).eval(&z) - a.eval(&z) * b.eval(&z);
            let conj = a.conj().eval(&z) - a.eval(&z).conj();
            prop_assert!(sum.norm() < 1e-9);
            prop_assert!(prod.norm() < 1e-8 * (1.0 + a.eval(&z).norm() * b.eval(&z).norm()));
            prop_assert!(conj.norm() < 1e-9);
        }

        #[test]
        fn multiplication_is_commutative_and_distributive(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }
    }
}
