use std::cell::RefCell;
use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::matrix::TorusMatrix;
use super::torus::{TorusElement, Word};

pub type CMatrix = DMatrix<Complex64>;

/// Substitutes numeric phase symbols and unitary generator matrices into
/// symbolic elements.
pub struct Evaluator {
    pub symbols: [Complex64; 3],
    gens: [CMatrix; 3],
    gens_adj: [CMatrix; 3],
    words: RefCell<HashMap<Word, CMatrix>>,
}

impl Evaluator {
    pub fn new(symbols: [Complex64; 3], gens: [CMatrix; 3]) -> Evaluator {
        let gens_adj = [0, 1, 2].map(|i| gens[i].adjoint());
        Evaluator { symbols, gens, gens_adj, words: RefCell::new(HashMap::new()) }
    }

    /// Scalar generators: the commutative evaluation at a character.
    pub fn character(symbols: [Complex64; 3], z: [Complex64; 3]) -> Evaluator {
        Evaluator::new(symbols, z.map(|c| CMatrix::from_element(1, 1, c)))
    }

    pub fn dim(&self) -> usize {
        self.gens[0].nrows()
    }

    fn power(&self, i: usize, e: i32) -> CMatrix {
        let d = self.dim();
        let base = if e >= 0 { &self.gens[i] } else { &self.gens_adj[i] };
        let mut out = CMatrix::identity(d, d);
        for _ in 0..e.abs() {
            out = &out * base;
        }
        out
    }

    pub fn word(&self, w: Word) -> CMatrix {
        if let Some(m) = self.words.borrow().get(&w) {
            return m.clone();
        }
        let m = self.power(0, w[0]) * self.power(1, w[1]) * self.power(2, w[2]);
        self.words.borrow_mut().insert(w, m.clone());
        m
    }

    pub fn element(&self, x: &TorusElement) -> CMatrix {
        let d = self.dim();
        let mut out = CMatrix::zeros(d, d);
        for (w, c) in x.terms() {
            out += self.word(*w) * c.eval(&self.symbols);
        }
        out
    }

    /// Block matrix of side `k·d`.
    pub fn matrix(&self, m: &TorusMatrix) -> CMatrix {
        let (k, d) = (m.size(), self.dim());
        let mut out = CMatrix::zeros(k * d, k * d);
        for ((i, j), x) in m.nonzero_entries() {
            out.view_mut((i * d, j * d), (d, d)).copy_from(&self.element(x));
        }
        out
    }
}
