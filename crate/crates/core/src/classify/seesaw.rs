//! Alternating maximization of a product vector's projection onto a subspace.
//!
//! Fixing all factors but one turns the objective into a Hermitian quadratic
//! form whose top eigenvector is the optimal update, so each sweep is exact
//! per factor and the overlap is monotone. Used as the numerical oracle for
//! "this complement contains no product state" and as the engine behind
//! completion search.

use super::Subspace;
use crate::linalg;
use crate::states::{LocalVector, ProductState};
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeesawConfig {
    pub restarts: usize,
    pub max_iterations: usize,
    pub convergence_tol: f64,
    /// A candidate counts as a product state when its squared projection
    /// onto the subspace reaches this value.
    pub acceptance_threshold: f64,
    pub seed: u64,
}

impl Default for SeesawConfig {
    fn default() -> Self {
        Self {
            restarts: 200,
            max_iterations: 500,
            convergence_tol: 1e-10,
            acceptance_threshold: 1.0 - 1e-6,
            seed: 42,
        }
    }
}

impl SeesawConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }
}

/// A product state found inside the subspace, with unit local factors.
#[derive(Debug, Clone)]
pub struct FoundProduct {
    pub locals: Vec<Vec<C64>>,
    /// Squared norm of the projection onto the subspace, in [0, 1].
    pub overlap: f64,
    /// Index of the restart that produced it.
    pub restart: usize,
}

impl FoundProduct {
    pub fn full_vector(&self) -> Vec<C64> {
        let mut out = vec![C64::ONE];
        for local in &self.locals {
            let mut next = Vec::with_capacity(out.len() * local.len());
            for &p in &out {
                for &a in local {
                    next.push(p * a);
                }
            }
            out = next;
        }
        out
    }

    pub fn to_product_state(&self, label: impl Into<String>) -> ProductState {
        ProductState::new(
            self.locals
                .iter()
                .map(|l| LocalVector::new(l.clone()))
                .collect(),
            label,
        )
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// Accepted product states, mutually orthogonal by deflation.
    pub found: Vec<FoundProduct>,
    /// Best overlap of the last round run (the failed round, when the search
    /// stopped because nothing more was found).
    pub best_overlap: Option<f64>,
    pub rounds: usize,
}

/// Deflating search: after each accepted product state the subspace is
/// restricted to its orthocomplement and the full restart schedule reruns.
pub fn seesaw_product_search(w: &Subspace, cfg: &SeesawConfig) -> SearchOutcome {
    search_with_limit(w, cfg, usize::MAX)
}

/// As `seesaw_product_search`, but stop after `max_finds` accepted states.
pub fn search_with_limit(w: &Subspace, cfg: &SeesawConfig, max_finds: usize) -> SearchOutcome {
    let mut active = w.basis.clone();
    let mut found: Vec<FoundProduct> = Vec::new();
    let mut best_overlap = None;
    let mut rounds = 0;
    while found.len() < max_finds && !active.is_empty() {
        let (overlap, locals, restart) = one_round(&active, &w.dims, cfg);
        rounds += 1;
        best_overlap = Some(overlap);
        if overlap < cfg.acceptance_threshold {
            break;
        }
        let fp = FoundProduct {
            locals,
            overlap,
            restart,
        };
        active = deflate(active, &fp.full_vector());
        found.push(fp);
    }
    SearchOutcome {
        found,
        best_overlap,
        rounds,
    }
}

/// Run the full restart schedule once; return the best (overlap, locals,
/// restart index), ties broken by the smaller restart index.
fn one_round(basis: &[Vec<C64>], dims: &[usize], cfg: &SeesawConfig) -> (f64, Vec<Vec<C64>>, usize) {
    let mut best = (f64::NEG_INFINITY, Vec::new(), 0usize);
    for r in 0..cfg.restarts.max(1) {
        let seed = cfg.seed.wrapping_add((r as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut locals: Vec<Vec<C64>> = dims.iter().map(|&d| random_unit(&mut rng, d)).collect();
        let mut overlap = 0.0f64;
        let mut prev = f64::NEG_INFINITY;
        for _ in 0..cfg.max_iterations {
            for f in 0..dims.len() {
                let h = factor_form(basis, dims, &locals, f);
                let (val, vec) = linalg::hermitian_top_eigenpair(&h);
                locals[f] = vec;
                overlap = val;
            }
            if (overlap - prev).abs() < cfg.convergence_tol {
                break;
            }
            prev = overlap;
        }
        if overlap > best.0 {
            best = (overlap, locals, r);
        }
    }
    (best.0, best.1, best.2)
}

/// Hermitian form H with u^dagger H u = |P_W (u tensor rest)|^2 for unit u on
/// factor `f`, the other factors held fixed.
fn factor_form(basis: &[Vec<C64>], dims: &[usize], locals: &[Vec<C64>], f: usize) -> DMatrix<C64> {
    let arity = dims.len();
    let m = dims[f];
    let total: usize = dims.iter().product();
    let mut h = DMatrix::from_element(m, m, C64::ZERO);
    let mut t = vec![C64::ZERO; m];
    for b in basis {
        t.iter_mut().for_each(|x| *x = C64::ZERO);
        for i in 0..total {
            let mut rest = i;
            let mut coord_f = 0usize;
            let mut other = C64::ONE;
            for axis in (0..arity).rev() {
                let c = rest % dims[axis];
                rest /= dims[axis];
                if axis == f {
                    coord_f = c;
                } else {
                    other *= locals[axis][c];
                }
            }
            t[coord_f] += b[i].conj() * other;
        }
        for rp in 0..m {
            let tc = t[rp].conj();
            for rq in 0..m {
                h[(rp, rq)] += tc * t[rq];
            }
        }
    }
    h
}

/// Orthonormal basis of the orthocomplement of `x` inside span(basis).
/// The basis vector with the largest coefficient on `x` is dropped; the rest
/// are re-orthonormalized against `x`.
fn deflate(basis: Vec<Vec<C64>>, x: &[C64]) -> Vec<Vec<C64>> {
    let coeffs: Vec<f64> = basis.iter().map(|b| linalg::dot(b, x).norm()).collect();
    let pivot = coeffs
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(i, _)| i)
        .unwrap_or(0);
    let kept: Vec<Vec<C64>> = basis
        .into_iter()
        .enumerate()
        .filter(|(i, _)| *i != pivot)
        .map(|(_, b)| b)
        .collect();
    linalg::orthonormalize(kept, std::slice::from_ref(&x.to_vec()), 1e-8)
}

fn random_unit(rng: &mut ChaCha8Rng, dim: usize) -> Vec<C64> {
    let mut v: Vec<C64> = (0..dim)
        .map(|_| {
            let u1: f64 = 1.0 - rng.random::<f64>();
            let u2: f64 = rng.random::<f64>();
            let r = (-2.0 * u1.ln()).sqrt();
            C64::new(r * (TAU * u2).cos(), r * (TAU * u2).sin())
        })
        .collect();
    linalg::normalize(&mut v);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_cfg() -> SeesawConfig {
        SeesawConfig {
            restarts: 20,
            ..SeesawConfig::default()
        }
    }

    #[test]
    fn whole_space_contains_a_product_state() {
        let w = Subspace::full(&[2, 3]);
        let out = search_with_limit(&w, &quick_cfg(), 1);
        assert_eq!(out.found.len(), 1);
        assert!(out.found[0].overlap > 1.0 - 1e-10);
    }

    #[test]
    fn search_is_deterministic() {
        let w = Subspace::full(&[2, 2]);
        let a = search_with_limit(&w, &quick_cfg(), 1);
        let b = search_with_limit(&w, &quick_cfg(), 1);
        assert_eq!(a.found[0].locals, b.found[0].locals);
        assert_eq!(a.found[0].restart, b.found[0].restart);
    }

    #[test]
    fn found_states_lie_in_the_subspace() {
        // Span of |0>|0> and |1>|1>: contains exactly those two products.
        let mut e00 = vec![C64::ZERO; 4];
        e00[0] = C64::ONE;
        let mut e11 = vec![C64::ZERO; 4];
        e11[3] = C64::ONE;
        let w = Subspace {
            dims: vec![2, 2],
            basis: vec![e00, e11],
        };
        let out = seesaw_product_search(&w, &quick_cfg());
        assert_eq!(out.found.len(), 2);
        for f in &out.found {
            let x = f.full_vector();
            let proj: f64 = w.basis.iter().map(|b| linalg::dot(b, &x).norm_sqr()).sum();
            assert!(proj > 1.0 - 1e-8);
        }
        // Deflation keeps the finds mutually orthogonal.
        let ip = linalg::dot(&out.found[0].full_vector(), &out.found[1].full_vector());
        assert!(ip.norm() < 1e-8);
    }
}
