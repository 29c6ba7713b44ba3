//! Zero-field spectra: Harper matrices at characters of the ordinary 3-torus
//! and the locus where their eigenvalues collide.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::LatticeSpec;
use crate::linalg::{hermitian_eigenvalues, min_gap, multiplicity_pattern};
use crate::symbolic::CMatrix;

const TAU: f64 = 2.0 * PI;

#[derive(Copy, Clone, PartialEq, Debug, Serialize)]
pub struct Character {
    pub z: [Complex64; 3],
}

impl Character {
    pub fn new(z: [Complex64; 3]) -> Result<Character> {
        for (index, c) in z.iter().enumerate() {
            let modulus = c.norm();
            if (modulus - 1.0).abs() > 1e-12 {
                return Err(Error::NonUnitCharacter { index, modulus });
            }
        }
        Ok(Character { z })
    }

    pub fn from_angles(phi: [f64; 3]) -> Character {
        Character { z: phi.map(|t| Complex64::from_polar(1.0, t)) }
    }

    pub fn real(z: [f64; 3]) -> Result<Character> {
        Character::new(z.map(|x| Complex64::new(x, 0.0)))
    }

    /// Angles in `[0, 2π)`.
    pub fn angles(&self) -> [f64; 3] {
        self.z.map(|c| c.arg().rem_euclid(TAU))
    }

    fn monomial(&self, e: [i32; 3]) -> Complex64 {
        (0..3).map(|i| self.z[i].powi(e[i])).product()
    }
}

/// Hopping data of a quotient graph in the tree gauge: each edge contributes
/// `z^ℓ` at `(head, tail)` and its conjugate at `(tail, head)`.
#[derive(Clone, Debug)]
pub struct BlochModel {
    pub k: usize,
    hops: Vec<(usize, usize, [i32; 3])>,
}

impl BlochModel {
    pub fn from_spec(spec: &LatticeSpec) -> Result<BlochModel> {
        spec.validate()?;
        let loops = spec.loop_coordinates()?;
        let hops = spec
            .edges
            .iter()
            .zip(loops)
            .map(|(e, l)| (e.tail, e.head, l))
            .collect();
        Ok(BlochModel { k: spec.vertices, hops })
    }

    pub fn matrix(&self, c: &Character) -> CMatrix {
        let mut h = CMatrix::zeros(self.k, self.k);
        for &(tail, head, l) in &self.hops {
            let z = c.monomial(l);
            h[(head, tail)] += z;
            h[(tail, head)] += z.conj();
        }
        h
    }

    pub fn eigenvalues(&self, c: &Character) -> Result<Vec<f64>> {
        hermitian_eigenvalues(&self.matrix(c))
    }

    pub fn spectrum(&self, c: &Character) -> Result<SpectrumPoint> {
        let eigenvalues = self.eigenvalues(c)?;
        Ok(SpectrumPoint {
            angles: c.angles(),
            min_gap: min_gap(&eigenvalues),
            eigenvalues,
        })
    }
}

pub fn evaluate_at_character(spec: &LatticeSpec, c: &Character) -> Result<CMatrix> {
    Ok(BlochModel::from_spec(spec)?.matrix(c))
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumPoint {
    pub angles: [f64; 3],
    pub eigenvalues: Vec<f64>,
    pub min_gap: f64,
}

pub fn spectrum_at(spec: &LatticeSpec, c: &Character) -> Result<SpectrumPoint> {
    BlochModel::from_spec(spec)?.spectrum(c)
}

/// `±|1 + z1 + z2 + z3|`, the diamond spectrum in closed form.
pub fn d_closed_form(c: &Character) -> [f64; 2] {
    let r = (Complex64::new(1.0, 0.0) + c.z[0] + c.z[1] + c.z[2]).norm();
    [-r, r]
}

fn wrap(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(TAU) - PI;
    if y <= -PI {
        y + TAU
    } else {
        y
    }
}

/// Euclidean distance on the flat torus.
pub fn torus_distance(a: [f64; 3], b: [f64; 3]) -> f64 {
    (0..3).map(|i| wrap(a[i] - b[i]).powi(2)).sum::<f64>().sqrt()
}

/// Distance on the flat torus to the union of the three circles
/// `φ_i = π, φ_j − φ_k ≡ π`.
pub fn d_locus_distance(phi: [f64; 3]) -> f64 {
    // Nearest point of {(π, t, t+π)}: t sits halfway between φ2 and φ3 − π.
    let circle = |i: usize, j: usize, k: usize| {
        (wrap(phi[i] - PI).powi(2) + wrap(phi[j] - phi[k] - PI).powi(2) / 2.0).sqrt()
    };
    circle(0, 1, 2).min(circle(2, 0, 1)).min(circle(1, 2, 0))
}

/// Point `t` on circle `i` of the diamond locus.
pub fn d_locus_point(i: usize, t: f64) -> [f64; 3] {
    let mut p = [0.0; 3];
    let (a, b, c) = [(0, 1, 2), (2, 0, 1), (1, 2, 0)][i];
    p[a] = PI;
    p[b] = (t + PI).rem_euclid(TAU);
    p[c] = t.rem_euclid(TAU);
    p
}

#[derive(Clone, Debug, Serialize)]
pub struct FlaggedPoint {
    pub index: [usize; 3],
    pub angles: [f64; 3],
    pub eigenvalues: Vec<f64>,
    pub min_gap: f64,
    pub multiplicity: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocusReport {
    pub grid: usize,
    pub tol: f64,
    pub points: Vec<FlaggedPoint>,
}

pub fn grid_angles(n: usize, idx: [usize; 3]) -> [f64; 3] {
    idx.map(|i| TAU * i as f64 / n as f64)
}

fn grid_index(n: usize, flat: usize) -> [usize; 3] {
    [flat / (n * n), (flat / n) % n, flat % n]
}

/// Spectra on the whole `n³` grid, in grid-index order.
pub fn grid_spectra(model: &BlochModel, n: usize) -> Result<Vec<Vec<f64>>> {
    (0..n * n * n)
        .into_par_iter()
        .map(|f| model.eigenvalues(&Character::from_angles(grid_angles(n, grid_index(n, f)))))
        .collect()
}

pub fn degeneracy_scan(model: &BlochModel, n: usize, tol: f64) -> Result<LocusReport> {
    if n < 8 {
        return Err(Error::Precondition(format!("grid {n} < 8")));
    }
    if tol <= 0.0 {
        return Err(Error::Precondition("tolerance must be positive".into()));
    }
    let spectra = grid_spectra(model, n)?;
    let points = spectra
        .into_iter()
        .enumerate()
        .filter_map(|(f, eigenvalues)| {
            let g = min_gap(&eigenvalues);
            (g < tol).then(|| {
                let index = grid_index(n, f);
                FlaggedPoint {
                    index,
                    angles: grid_angles(n, index),
                    multiplicity: multiplicity_pattern(&eigenvalues, tol),
                    eigenvalues,
                    min_gap: g,
                }
            })
        })
        .collect();
    Ok(LocusReport { grid: n, tol, points })
}

#[derive(Clone, Debug, Serialize)]
pub struct RefineConfig {
    /// Grid local minima of a band gap below this value are refined.
    pub candidate_gap: f64,
    /// A refined gap below this value counts as a degeneracy.
    pub accept_gap: f64,
    /// Tolerance grouping eigenvalues into a multiplicity pattern.
    pub pattern_tol: f64,
    /// Cluster merge radius in grid spacings.
    pub merge_spacings: f64,
}

impl RefineConfig {
    pub fn for_grid(n: usize) -> RefineConfig {
        RefineConfig {
            candidate_gap: 8.0 * TAU / n as f64,
            accept_gap: 1e-6,
            pattern_tol: 1e-4,
            merge_spacings: 1.5,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Cluster {
    pub angles: [f64; 3],
    pub eigenvalues: Vec<f64>,
    pub multiplicity: Vec<usize>,
    /// Refined candidates merged into this cluster.
    pub members: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RefinedLocus {
    pub grid: usize,
    pub candidates: usize,
    pub clusters: Vec<Cluster>,
}

fn band_gap(model: &BlochModel, j: usize, phi: [f64; 3]) -> f64 {
    let e = model.eigenvalues(&Character::from_angles(phi)).unwrap_or_default();
    e.get(j + 1).zip(e.get(j)).map_or(f64::INFINITY, |(a, b)| a - b)
}

/// Compass search on a band gap, halving the step until it falls below `1e-10`.
fn pattern_search(f: &dyn Fn([f64; 3]) -> f64, start: [f64; 3], step: f64) -> ([f64; 3], f64) {
    let (mut x, mut fx, mut h) = (start, f(start), step);
    while h > 1e-10 {
        let mut improved = false;
        for d in 0..3 {
            for s in [-1.0, 1.0] {
                let mut y = x;
                y[d] += s * h;
                let fy = f(y);
                if fy < fx {
                    (x, fx, improved) = (y, fy, true);
                }
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    (x, fx)
}

/// Newton steps on `gap²` with a central-difference gradient and Hessian.
fn newton_polish(f: &dyn Fn([f64; 3]) -> f64, mut x: [f64; 3]) -> [f64; 3] {
    let g2 = |p: [f64; 3]| f(p).powi(2);
    let h = 1e-5;
    for _ in 0..5 {
        let f0 = g2(x);
        let at = |d: &[(usize, f64)]| {
            let mut y = x;
            for &(i, s) in d {
                y[i] += s * h;
            }
            g2(y)
        };
        let mut grad = nalgebra::Vector3::zeros();
        let mut hess = nalgebra::Matrix3::zeros();
        for i in 0..3 {
            grad[i] = (at(&[(i, 1.0)]) - at(&[(i, -1.0)])) / (2.0 * h);
            hess[(i, i)] = (at(&[(i, 1.0)]) - 2.0 * f0 + at(&[(i, -1.0)])) / (h * h);
            for j in 0..i {
                let v = (at(&[(i, 1.0), (j, 1.0)]) - at(&[(i, 1.0), (j, -1.0)])
                    - at(&[(i, -1.0), (j, 1.0)])
                    + at(&[(i, -1.0), (j, -1.0)]))
                    / (4.0 * h * h);
                hess[(i, j)] = v;
                hess[(j, i)] = v;
            }
        }
        let Some(step) = hess.lu().solve(&grad) else { break };
        let y = [x[0] - step[0], x[1] - step[1], x[2] - step[2]];
        if g2(y) < f0 {
            x = y;
        } else {
            break;
        }
    }
    x
}

fn is_local_min(values: &[f64], n: usize, idx: [usize; 3]) -> bool {
    let v = values[idx[0] * n * n + idx[1] * n + idx[2]];
    for da in [n - 1, 0, 1] {
        for db in [n - 1, 0, 1] {
            for dc in [n - 1, 0, 1] {
                if (da, db, dc) == (0, 0, 0) {
                    continue;
                }
                let j = [(idx[0] + da) % n, (idx[1] + db) % n, (idx[2] + dc) % n];
                if values[j[0] * n * n + j[1] * n + j[2]] < v {
                    return false;
                }
            }
        }
    }
    true
}

/// Grid scan of every adjacent band gap followed by local refinement of
/// each grid minimum and merging of refined points into clusters.
pub fn refine_degeneracies(model: &BlochModel, n: usize, cfg: &RefineConfig) -> Result<RefinedLocus> {
    if n < 8 {
        return Err(Error::Precondition(format!("grid {n} < 8")));
    }
    let spectra = grid_spectra(model, n)?;
    let spacing = TAU / n as f64;
    let mut starts = vec![];
    for j in 0..model.k.saturating_sub(1) {
        let gaps: Vec<f64> = spectra.iter().map(|e| e[j + 1] - e[j]).collect();
        for f in 0..gaps.len() {
            let idx = grid_index(n, f);
            if gaps[f] < cfg.candidate_gap && is_local_min(&gaps, n, idx) {
                starts.push((j, grid_angles(n, idx)));
            }
        }
    }
    let refined: Vec<([f64; 3], f64)> = starts
        .par_iter()
        .map(|&(j, start)| {
            let f = |p: [f64; 3]| band_gap(model, j, p);
            let (x, _) = pattern_search(&f, start, spacing / 2.0);
            let x = newton_polish(&f, x);
            (x.map(|t| t.rem_euclid(TAU)), f(x))
        })
        .collect();
    let mut clusters: Vec<Cluster> = vec![];
    for (x, g) in refined {
        if g >= cfg.accept_gap {
            continue;
        }
        match clusters
            .iter_mut()
            .find(|c| torus_distance(c.angles, x) < cfg.merge_spacings * spacing)
        {
            Some(c) => c.members += 1,
            None => {
                let eigenvalues = model.eigenvalues(&Character::from_angles(x))?;
                clusters.push(Cluster {
                    angles: x,
                    multiplicity: multiplicity_pattern(&eigenvalues, cfg.pattern_tol),
                    eigenvalues,
                    members: 1,
                });
            }
        }
    }
    clusters.sort_by(|a, b| {
        a.angles
            .iter()
            .zip(&b.angles)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(RefinedLocus { grid: n, candidates: starts.len(), clusters })
}
