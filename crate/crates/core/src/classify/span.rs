//! Dimension of the span of all product states in a complement.
//!
//! Structural path: under a quasi U-tile partition into m groups, every
//! complement product state lives in one of m mutually orthogonal group
//! subspaces (the weighted zero-sum combinations of the group's all-ones tile
//! states), so the span has dimension n - m exactly.
//!
//! Numerical path: rank of the deflated seesaw finds. A lower bound, tagged
//! as such.

use super::{complement_basis, seesaw_product_search, SeesawConfig, Subspace};
use crate::error::{Error, Result};
use crate::linalg;
use crate::states::{LocalVector, ProductState, StateSet};
use crate::tiles::{QuasiPartition, TileStructure};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

/// The subspace O_j attached to one group: combinations of the group's
/// all-ones tile states whose cell-count-weighted coefficients sum to zero.
#[derive(Debug, Clone)]
pub struct MergedGroupSubspace {
    pub tile_ids: Vec<usize>,
    /// Orthonormal basis in full-space coordinates.
    pub basis: Vec<Vec<C64>>,
    pub dimension: usize,
}

/// The all-ones state of one tile (the zero-harmonic DFT state).
fn tile_uniform_state(s: &TileStructure, tile: usize) -> ProductState {
    let locals = s.tiles[tile]
        .axes
        .iter()
        .zip(&s.dims)
        .map(|(axis, &d)| {
            let mut amps = vec![C64::ZERO; d];
            for &i in axis.indices() {
                amps[i] = C64::ONE;
            }
            LocalVector::new(amps)
        })
        .collect();
    ProductState::new(locals, format!("t{tile}(0)"))
}

/// Build each group's zero-weighted-sum subspace. Dimensions are group size
/// minus one; subspaces are mutually orthogonal across groups.
pub fn merged_group_subspaces(
    s: &TileStructure,
    partition: &QuasiPartition,
) -> Result<Vec<MergedGroupSubspace>> {
    let mut out = Vec::with_capacity(partition.group_count());
    for group in &partition.groups {
        if group.is_empty() {
            return Err(Error::InvalidStructure("empty group".into()));
        }
        let anchors: Vec<(Vec<C64>, f64)> = group
            .iter()
            .map(|&t| {
                let v = tile_uniform_state(s, t).full_vector();
                let w = s.tiles[t].cell_count() as f64;
                (v, w)
            })
            .collect();
        let mut raw = Vec::with_capacity(group.len() - 1);
        let (v0, w0) = &anchors[0];
        for (v, w) in &anchors[1..] {
            let mut diff: Vec<C64> = v.iter().map(|&a| a / *w).collect();
            for (d, &a) in diff.iter_mut().zip(v0) {
                *d -= a / *w0;
            }
            raw.push(diff);
        }
        let basis = linalg::orthonormalize(raw, &[], 1e-10);
        if basis.len() + 1 != group.len() {
            return Err(Error::Internal(format!(
                "group {group:?} subspace has dimension {} instead of {}",
                basis.len(),
                group.len() - 1
            )));
        }
        let dimension = basis.len();
        out.push(MergedGroupSubspace {
            tile_ids: group.clone(),
            basis,
            dimension,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpanMethod {
    Exact,
    Numerical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanEstimate {
    pub dim: usize,
    pub method: SpanMethod,
}

/// Product-span dimension of the complement of `set`.
///
/// With a structure and quasi partition the answer is n - m, exact. Without,
/// it is the rank of the matrix stacking all deflated seesaw finds.
pub fn product_span_dim(
    set: &StateSet,
    structural: Option<(&TileStructure, &QuasiPartition)>,
    cfg: &SeesawConfig,
) -> Result<SpanEstimate> {
    match structural {
        Some((s, partition)) => {
            let covered: usize = partition.groups.iter().map(|g| g.len()).sum();
            if covered != s.tile_count() {
                return Err(Error::InvalidStructure(format!(
                    "partition covers {covered} of {} tiles",
                    s.tile_count()
                )));
            }
            let subspaces = merged_group_subspaces(s, partition)?;
            let dim: usize = subspaces.iter().map(|o| o.dimension).sum();
            debug_assert_eq!(dim, s.tile_count() - partition.group_count());
            Ok(SpanEstimate {
                dim,
                method: SpanMethod::Exact,
            })
        }
        None => {
            let complement = complement_basis(set)?;
            Ok(numerical_span(&complement, cfg))
        }
    }
}

pub(super) fn numerical_span(complement: &Subspace, cfg: &SeesawConfig) -> SpanEstimate {
    let outcome = seesaw_product_search(complement, cfg);
    let rows: Vec<Vec<C64>> = outcome.found.iter().map(|f| f.full_vector()).collect();
    SpanEstimate {
        dim: linalg::numerical_rank(&rows, 1e-8),
        method: SpanMethod::Numerical,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiles::Tile;

    #[test]
    fn group_subspace_dimensions() {
        // 1x4 grid, four unit tiles, grouped as {0,1} and {2,3}.
        let s = TileStructure::new(
            vec![1, 4],
            (0..4).map(|c| Tile::new(vec![vec![0], vec![c]])).collect(),
        );
        let partition = QuasiPartition::new(vec![vec![0, 1], vec![2, 3]], &s);
        let subspaces = merged_group_subspaces(&s, &partition).unwrap();
        assert_eq!(subspaces.len(), 2);
        for o in &subspaces {
            assert_eq!(o.dimension, 1);
        }
        // Cross-group orthogonality.
        let ip = linalg::dot(&subspaces[0].basis[0], &subspaces[1].basis[0]);
        assert!(ip.norm() < 1e-12);
    }
}
