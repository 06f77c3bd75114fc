//! Unnormalized product states over small tensor-product spaces, the DFT
//! state family attached to a tile, and the state <-> coefficient-matrix
//! correspondence for bipartite spaces.

mod dft;

pub use dft::{punctured_tile_set, stopper_state, tile_dft_states};

use crate::error::{Error, Result};
use crate::linalg;
use crate::tiles::Bipartition;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

/// One local factor: a vector of complex amplitudes, no normalization implied.
/// Serializes as an array of `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "Vec<(f64, f64)>", into = "Vec<(f64, f64)>")]
pub struct LocalVector {
    pub amps: Vec<C64>,
}

impl From<Vec<(f64, f64)>> for LocalVector {
    fn from(pairs: Vec<(f64, f64)>) -> Self {
        Self {
            amps: pairs.into_iter().map(|(re, im)| C64::new(re, im)).collect(),
        }
    }
}

impl From<LocalVector> for Vec<(f64, f64)> {
    fn from(v: LocalVector) -> Self {
        v.amps.into_iter().map(|a| (a.re, a.im)).collect()
    }
}

impl LocalVector {
    pub fn new(amps: Vec<C64>) -> Self {
        Self { amps }
    }

    pub fn from_reals(amps: &[f64]) -> Self {
        Self {
            amps: amps.iter().map(|&re| C64::new(re, 0.0)).collect(),
        }
    }

    /// Computational basis vector |idx> in the given dimension.
    pub fn basis(dim: usize, idx: usize) -> Self {
        let mut amps = vec![C64::ZERO; dim];
        amps[idx] = C64::ONE;
        Self { amps }
    }

    /// All-ones vector.
    pub fn uniform(dim: usize) -> Self {
        Self {
            amps: vec![C64::ONE; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.amps.iter().all(|a| a.norm_sqr() == 0.0)
    }

    pub fn inner(&self, other: &Self) -> C64 {
        linalg::dot(&self.amps, &other.amps)
    }

    pub fn norm_sq(&self) -> f64 {
        linalg::norm_sq(&self.amps)
    }

    /// Indices with nonzero amplitude.
    pub fn support(&self) -> Vec<usize> {
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm_sqr() > 0.0)
            .map(|(i, _)| i)
            .collect()
    }
}

/// A product state: one local vector per tensor factor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductState {
    pub label: String,
    pub locals: Vec<LocalVector>,
}

impl ProductState {
    pub fn new(locals: Vec<LocalVector>, label: impl Into<String>) -> Self {
        Self {
            locals,
            label: label.into(),
        }
    }

    pub fn arity(&self) -> usize {
        self.locals.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.locals.iter().map(|l| l.dim()).collect()
    }

    pub fn norm_sq(&self) -> f64 {
        self.locals.iter().map(|l| l.norm_sq()).product()
    }

    /// Amplitudes in the full space, row-major over the factor indices.
    pub fn full_vector(&self) -> Vec<C64> {
        let mut out = vec![C64::ONE];
        for local in &self.locals {
            let mut next = Vec::with_capacity(out.len() * local.dim());
            for &prefix in &out {
                for &a in &local.amps {
                    next.push(prefix * a);
                }
            }
            out = next;
        }
        out
    }

    /// Merge two of three factors into one, per the bipartition's composite
    /// index convention. Inner products are unchanged by this regrouping.
    pub fn regroup(&self, b: Bipartition) -> Result<ProductState> {
        if self.arity() != 3 {
            return Err(Error::WrongArity {
                expected: 3,
                got: self.arity(),
            });
        }
        let (row, (first, second)) = b.axis_split();
        let (f, s) = (&self.locals[first], &self.locals[second]);
        let mut merged = Vec::with_capacity(f.dim() * s.dim());
        for &x in &f.amps {
            for &y in &s.amps {
                merged.push(x * y);
            }
        }
        Ok(ProductState::new(
            vec![self.locals[row].clone(), LocalVector::new(merged)],
            self.label.clone(),
        ))
    }
}

/// Inner product (conjugate-linear in the left argument), computed as the
/// product of the local inner products.
pub fn inner_product(x: &ProductState, y: &ProductState) -> Result<C64> {
    if x.dims() != y.dims() {
        return Err(Error::DimensionMismatch(format!(
            "{:?} vs {:?}",
            x.dims(),
            y.dims()
        )));
    }
    Ok(x.locals
        .iter()
        .zip(&y.locals)
        .map(|(a, b)| a.inner(b))
        .product())
}

/// A labeled set of product states in a fixed ambient space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateSet {
    pub dims: Vec<usize>,
    pub states: Vec<ProductState>,
    #[serde(default)]
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GramReport {
    pub ok: bool,
    /// Worst off-diagonal pair (i, j, |<i|j>|), if the set has >= 2 states.
    pub worst: Option<(usize, usize, f64)>,
}

impl StateSet {
    pub fn new(dims: Vec<usize>, provenance: impl Into<String>) -> Self {
        Self {
            dims,
            states: Vec::new(),
            provenance: provenance.into(),
        }
    }

    pub fn push(&mut self, state: ProductState) -> Result<()> {
        if state.dims() != self.dims {
            return Err(Error::DimensionMismatch(format!(
                "state `{}` has dims {:?}, set has {:?}",
                state.label,
                state.dims(),
                self.dims
            )));
        }
        self.states.push(state);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// All off-diagonal inner products below `tol` in magnitude?
    pub fn gram_check(&self, tol: f64) -> GramReport {
        let mut worst: Option<(usize, usize, f64)> = None;
        for i in 0..self.states.len() {
            for j in i + 1..self.states.len() {
                let ip = inner_product(&self.states[i], &self.states[j])
                    .expect("set states share dims")
                    .norm();
                if worst.map_or(true, |(_, _, w)| ip > w) {
                    worst = Some((i, j, ip));
                }
            }
        }
        GramReport {
            ok: worst.map_or(true, |(_, _, w)| w < tol),
            worst,
        }
    }

    /// Regroup every state into the given bipartition view.
    pub fn regroup(&self, b: Bipartition) -> Result<StateSet> {
        if self.dims.len() != 3 {
            return Err(Error::WrongArity {
                expected: 3,
                got: self.dims.len(),
            });
        }
        let (row, (first, second)) = b.axis_split();
        let mut out = StateSet::new(
            vec![self.dims[row], self.dims[first] * self.dims[second]],
            format!("{}|{}", self.provenance, b),
        );
        for s in &self.states {
            out.push(s.regroup(b)?)?;
        }
        Ok(out)
    }
}

/// Coefficient matrix of a bipartite state, with its entry sum and numerical
/// rank attached. The sum equals the inner product with the all-ones stopper;
/// the rank is 1 exactly for product states.
#[derive(Debug, Clone)]
pub struct CoeffMatrix {
    pub rows: usize,
    pub cols: usize,
    /// Row-major entries.
    pub entries: Vec<C64>,
    pub sum: C64,
    pub rank: usize,
}

pub const RANK_REL_TOL: f64 = 1e-8;

/// Arrange a full-space vector on a bipartite space as its d1 x d2
/// coefficient matrix.
pub fn vector_to_matrix(vector: &[C64], dims: &[usize]) -> Result<CoeffMatrix> {
    if dims.len() != 2 {
        return Err(Error::WrongArity {
            expected: 2,
            got: dims.len(),
        });
    }
    let (d1, d2) = (dims[0], dims[1]);
    if vector.len() != d1 * d2 {
        return Err(Error::DimensionMismatch(format!(
            "vector length {} vs {}x{}",
            vector.len(),
            d1,
            d2
        )));
    }
    let rows: Vec<Vec<C64>> = (0..d1).map(|r| vector[r * d2..(r + 1) * d2].to_vec()).collect();
    let rank = linalg::numerical_rank(&rows, RANK_REL_TOL);
    Ok(CoeffMatrix {
        rows: d1,
        cols: d2,
        entries: vector.to_vec(),
        sum: vector.iter().sum(),
        rank,
    })
}

/// Coefficient matrix of a bipartite product state.
pub fn state_to_matrix(state: &ProductState) -> Result<CoeffMatrix> {
    if state.arity() != 2 {
        return Err(Error::WrongArity {
            expected: 2,
            got: state.arity(),
        });
    }
    vector_to_matrix(&state.full_vector(), &state.dims())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn norm_of_unnormalized_product() {
        // |0-1>|0>|0> has squared norm 2.
        let x = ProductState::new(
            vec![
                LocalVector::from_reals(&[1.0, -1.0]),
                LocalVector::basis(2, 0),
                LocalVector::basis(2, 0),
            ],
            "x",
        );
        assert_eq!(inner_product(&x, &x).unwrap(), c(2.0, 0.0));
    }

    #[test]
    fn stopper_overlap_with_basis_state() {
        let s = stopper_state(&[2, 2]);
        let z = ProductState::new(vec![LocalVector::basis(2, 0), LocalVector::basis(2, 0)], "z");
        assert_eq!(inner_product(&s, &z).unwrap(), C64::ONE);
    }

    #[test]
    fn gram_check_reports_the_offending_pair() {
        let mut set = StateSet::new(vec![2, 2], "test");
        set.push(ProductState::new(
            vec![LocalVector::basis(2, 0), LocalVector::basis(2, 0)],
            "a",
        ))
        .unwrap();
        set.push(ProductState::new(
            vec![LocalVector::basis(2, 0), LocalVector::from_reals(&[1.0, 1.0])],
            "b",
        ))
        .unwrap();
        let report = set.gram_check(1e-9);
        assert!(!report.ok);
        assert_eq!(report.worst, Some((0, 1, 1.0)));
    }

    #[test]
    fn stopper_matrix_is_all_ones() {
        let m = state_to_matrix(&stopper_state(&[3, 5])).unwrap();
        assert_eq!(m.sum, c(15.0, 0.0));
        assert_eq!(m.rank, 1);
        assert!(m.entries.iter().all(|&e| e == C64::ONE));
    }

    #[test]
    fn basis_state_matrix_has_one_entry() {
        let z = ProductState::new(vec![LocalVector::basis(2, 0), LocalVector::basis(3, 0)], "z");
        let m = state_to_matrix(&z).unwrap();
        assert_eq!(m.rank, 1);
        assert_eq!(m.entries[0], C64::ONE);
        assert!(m.entries[1..].iter().all(|&e| e == C64::ZERO));
    }

    #[test]
    fn regroup_preserves_inner_products() {
        let x = ProductState::new(
            vec![
                LocalVector::from_reals(&[1.0, 2.0]),
                LocalVector::from_reals(&[1.0, -1.0, 0.5]),
                LocalVector::new(vec![c(0.0, 1.0), c(1.0, 0.0)]),
            ],
            "x",
        );
        let y = ProductState::new(
            vec![
                LocalVector::from_reals(&[0.0, 1.0]),
                LocalVector::from_reals(&[1.0, 1.0, 1.0]),
                LocalVector::new(vec![c(1.0, 0.0), c(0.0, -1.0)]),
            ],
            "y",
        );
        let direct = inner_product(&x, &y).unwrap();
        for b in Bipartition::ALL {
            let regrouped =
                inner_product(&x.regroup(b).unwrap(), &y.regroup(b).unwrap()).unwrap();
            assert!((direct - regrouped).norm() < 1e-12);
        }
    }
}
