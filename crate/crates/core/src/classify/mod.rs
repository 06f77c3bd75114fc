//! Per-bipartition classification of orthogonal product sets.
//!
//! Two independent routes feed every verdict: the combinatorial route
//! (U-tile / quasi U-tile properties of the generating structure) with exact
//! confidence, and the numerical route (alternating product-state search in
//! the orthogonal complement) with numerical confidence. Structural verdicts
//! win on conflict, loudly.

mod complete;
mod seesaw;
mod span;

pub use complete::{try_complete, CompletionOutcome, COMPLETION_GRAM_TOL};
pub use seesaw::{seesaw_product_search, search_with_limit, FoundProduct, SearchOutcome, SeesawConfig};
pub use span::{merged_group_subspaces, product_span_dim, MergedGroupSubspace, SpanEstimate, SpanMethod};

use crate::error::{Error, Result};
use crate::linalg;
use crate::states::{ProductState, StateSet};
use crate::tiles::{
    find_quasi_u_partition, flatten_to_bipartition, is_u_tile, Bipartition, QuasiPartition,
    TileStructure, UTileVerdict,
};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

/// Absolute tolerance on raw inner products for orthogonality checks.
pub const ORTHOGONALITY_TOL: f64 = 1e-9;

/// A subspace of the full tensor-product space, stored as an orthonormal
/// basis in full-space coordinates.
#[derive(Debug, Clone)]
pub struct Subspace {
    pub dims: Vec<usize>,
    pub basis: Vec<Vec<C64>>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// The whole space, with the canonical basis.
    pub fn full(dims: &[usize]) -> Self {
        let ambient: usize = dims.iter().product();
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![C64::ZERO; ambient];
                v[i] = C64::ONE;
                v
            })
            .collect();
        Self {
            dims: dims.to_vec(),
            basis,
        }
    }
}

/// Orthonormal basis of the orthogonal complement of the span of `set`.
///
/// Requires the set to be pairwise orthogonal; the complement then has
/// dimension (product of dims) - |set| exactly.
pub fn complement_basis(set: &StateSet) -> Result<Subspace> {
    let gram = set.gram_check(ORTHOGONALITY_TOL);
    if let (false, Some((i, j, overlap))) = (gram.ok, gram.worst) {
        return Err(Error::NotOrthogonal { i, j, overlap });
    }
    let ambient = set.ambient_dim();
    let mut span: Vec<Vec<C64>> = Vec::with_capacity(set.len());
    for state in &set.states {
        let mut v = state.full_vector();
        if linalg::normalize(&mut v) == 0.0 {
            return Err(Error::InvalidStructure(format!(
                "state `{}` is the zero vector",
                state.label
            )));
        }
        span.push(v);
    }

    let target = ambient - set.len();
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(target);
    for i in 0..ambient {
        if basis.len() == target {
            break;
        }
        let mut v = vec![C64::ZERO; ambient];
        v[i] = C64::ONE;
        for _ in 0..2 {
            for u in &span {
                linalg::project_out(&mut v, u);
            }
            for u in &basis {
                linalg::project_out(&mut v, u);
            }
        }
        if linalg::normalize(&mut v) > 1e-8 {
            linalg::fix_phase(&mut v);
            basis.push(v);
        }
    }
    if basis.len() != target {
        return Err(Error::Internal(format!(
            "complement extension found {} of {} directions",
            basis.len(),
            target
        )));
    }
    Ok(Subspace {
        dims: set.dims.clone(),
        basis,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "UPB")]
    Upb,
    #[serde(rename = "SUCPB-certified")]
    SucpbCertified,
    #[serde(rename = "UCPB")]
    Ucpb,
    #[serde(rename = "Completable")]
    Completable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Confidence {
    Exact,
    Numerical,
}

/// Machine-checkable evidence attached to a verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "route", rename_all = "snake_case")]
pub enum Evidence {
    /// The generating structure is a U-tile structure.
    UTileStructure,
    /// A quasi U-tile partition certifies a product-span deficit of
    /// complement_dim - product_span_dim dimensions.
    QuasiUPartition {
        partition: QuasiPartition,
        product_span_dim: usize,
    },
    /// Deflated search found fewer orthogonal product states than the
    /// complement dimension.
    SpanDeficit {
        product_span_dim: usize,
        best_overlap: f64,
    },
    /// Deflated search found no product state at all.
    NoProductState { best_overlap: f64 },
    /// Explicit product states completing the set to a full basis.
    Completion { extension: Vec<ProductState> },
    /// The set already spans the whole space.
    AlreadyComplete,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Classification {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bipartition: Option<Bipartition>,
    pub verdict: Verdict,
    pub confidence: Confidence,
    /// Memberships implied by the verdict (a UPB is an SUCPB is a UCPB).
    pub classes: Vec<&'static str>,
    pub complement_dim: usize,
    pub evidence: Evidence,
    pub diagnostics: Vec<String>,
}

fn classes_of(verdict: Verdict) -> Vec<&'static str> {
    match verdict {
        Verdict::Upb => vec!["UPB", "SUCPB", "UCPB"],
        Verdict::SucpbCertified => vec!["SUCPB", "UCPB"],
        Verdict::Ucpb => vec!["UCPB"],
        Verdict::Completable => vec![],
    }
}

/// Does this structure plausibly generate this set? Cheap sanity checks:
/// sizes, and every state supported inside one tile (stopper excepted).
fn structure_matches_set(set: &StateSet, s: &TileStructure) -> std::result::Result<(), String> {
    if s.dims != set.dims {
        return Err(format!("structure dims {:?} != set dims {:?}", s.dims, set.dims));
    }
    if !s.is_valid() {
        return Err("structure is not a valid partition".into());
    }
    let expected = s.cell_count() - s.tile_count() + 1;
    if set.len() != expected {
        return Err(format!(
            "set has {} states, punctured size law gives {expected}",
            set.len()
        ));
    }
    let mut stoppers = 0usize;
    'states: for state in &set.states {
        let supports: Vec<Vec<usize>> = state.locals.iter().map(|l| l.support()).collect();
        if supports
            .iter()
            .zip(&set.dims)
            .all(|(sup, &d)| sup.len() == d)
        {
            stoppers += 1;
            continue;
        }
        for tile in &s.tiles {
            if supports
                .iter()
                .zip(&tile.axes)
                .all(|(sup, axis)| sup.iter().all(|&i| axis.contains(i)))
            {
                continue 'states;
            }
        }
        return Err(format!(
            "state `{}` is not supported inside any tile",
            state.label
        ));
    }
    if stoppers != 1 {
        return Err(format!("expected exactly one full-support state, found {stoppers}"));
    }
    Ok(())
}

/// Classify a bipartite orthogonal product set.
///
/// With a matching tile structure the combinatorial routes give exact
/// verdicts; otherwise the deflated seesaw search decides, tagged numerical.
pub fn classify_bipartite(
    set: &StateSet,
    structure: Option<&TileStructure>,
    cfg: &SeesawConfig,
) -> Result<Classification> {
    if set.dims.len() != 2 {
        return Err(Error::WrongArity {
            expected: 2,
            got: set.dims.len(),
        });
    }
    if set.is_empty() {
        return Err(Error::EmptyStateSet);
    }
    let mut diagnostics = Vec::new();
    let complement = complement_basis(set)?;
    let complement_dim = complement.dim();
    let finish = |verdict: Verdict, confidence, evidence, diagnostics| {
        Ok(Classification {
            bipartition: None,
            verdict,
            confidence,
            classes: classes_of(verdict),
            complement_dim,
            evidence,
            diagnostics,
        })
    };

    if complement_dim == 0 {
        return finish(
            Verdict::Completable,
            Confidence::Exact,
            Evidence::AlreadyComplete,
            diagnostics,
        );
    }

    let structure = match structure {
        Some(s) => match structure_matches_set(set, s) {
            Ok(()) => Some(s),
            Err(why) => {
                diagnostics.push(format!("structure ignored: {why}"));
                None
            }
        },
        None => None,
    };

    if let Some(s) = structure {
        match is_u_tile(s) {
            Ok(v) if v.is_u_tile => {
                // One numerical round as a cross-check; structural wins.
                let probe = search_with_limit(&complement, cfg, 1);
                if !probe.found.is_empty() {
                    diagnostics.push(format!(
                        "conflict: structure is U-tile but the numerical search found a product \
                         state (overlap {:.3e}); structural verdict retained",
                        probe.found[0].overlap
                    ));
                }
                return finish(
                    Verdict::Upb,
                    Confidence::Exact,
                    Evidence::UTileStructure,
                    diagnostics,
                );
            }
            Ok(_) => {}
            Err(Error::CapExceeded { count, cap }) => {
                diagnostics.push(format!(
                    "U-tile check skipped: {count} tiles exceed the cap of {cap}"
                ));
            }
            Err(e) => return Err(e),
        }
        match find_quasi_u_partition(s) {
            Ok(Some(partition)) => {
                let span = s.tile_count() - partition.group_count();
                return finish(
                    Verdict::SucpbCertified,
                    Confidence::Exact,
                    Evidence::QuasiUPartition {
                        partition,
                        product_span_dim: span,
                    },
                    diagnostics,
                );
            }
            Ok(None) => {}
            Err(Error::CapExceeded { count, cap }) => {
                diagnostics.push(format!(
                    "quasi U-tile search skipped: {count} tiles exceed the cap of {cap}"
                ));
            }
            Err(e) => return Err(e),
        }
    }

    let outcome = search_with_limit(&complement, cfg, complement_dim);
    let best_overlap = outcome.best_overlap.unwrap_or(0.0);
    if outcome.found.is_empty() {
        return finish(
            Verdict::Upb,
            Confidence::Numerical,
            Evidence::NoProductState { best_overlap },
            diagnostics,
        );
    }
    if outcome.found.len() == complement_dim {
        let extension: Vec<ProductState> = outcome
            .found
            .iter()
            .enumerate()
            .map(|(i, f)| f.to_product_state(format!("ext{i}")))
            .collect();
        let mut union = set.clone();
        for state in &extension {
            union.push(state.clone())?;
        }
        if union.gram_check(COMPLETION_GRAM_TOL).ok && union.len() == set.ambient_dim() {
            return finish(
                Verdict::Completable,
                Confidence::Numerical,
                Evidence::Completion { extension },
                diagnostics,
            );
        }
        diagnostics.push(format!(
            "completion candidates failed the {COMPLETION_GRAM_TOL:.0e} orthogonality check"
        ));
        return finish(
            Verdict::Completable,
            Confidence::Numerical,
            Evidence::Completion { extension },
            diagnostics,
        );
    }
    let product_span_dim =
        linalg::numerical_rank(&outcome.found.iter().map(|f| f.full_vector()).collect::<Vec<_>>(), 1e-8);
    finish(
        Verdict::SucpbCertified,
        Confidence::Numerical,
        Evidence::SpanDeficit {
            product_span_dim,
            best_overlap,
        },
        diagnostics,
    )
}

/// 3-D U-tile verdict in a tripartite report, or why it was skipped.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ThreeDUTile {
    Decided(UTileVerdict),
    Skipped { why: String },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TripartiteReport {
    pub dims: Vec<usize>,
    pub set_size: usize,
    pub bipartitions: Vec<Classification>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub three_d_u_tile: Option<ThreeDUTile>,
}

/// Classify a tripartite set in each bipartition view, flattening the
/// generating structure alongside when provided.
pub fn classify_tripartite(
    set: &StateSet,
    structure: Option<&TileStructure>,
    cfg: &SeesawConfig,
) -> Result<TripartiteReport> {
    if set.dims.len() != 3 {
        return Err(Error::WrongArity {
            expected: 3,
            got: set.dims.len(),
        });
    }
    let mut bipartitions = Vec::with_capacity(3);
    for b in Bipartition::ALL {
        let view = set.regroup(b)?;
        let flat = match structure {
            Some(s) => Some(flatten_to_bipartition(s, b)?),
            None => None,
        };
        let mut c = classify_bipartite(&view, flat.as_ref(), cfg)?;
        c.bipartition = Some(b);
        bipartitions.push(c);
    }
    let three_d_u_tile = structure.map(|s| match is_u_tile(s) {
        Ok(v) => ThreeDUTile::Decided(v),
        Err(e) => ThreeDUTile::Skipped { why: e.to_string() },
    });
    Ok(TripartiteReport {
        dims: set.dims.clone(),
        set_size: set.len(),
        bipartitions,
        three_d_u_tile,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::LocalVector;

    #[test]
    fn complement_of_a_full_basis_is_empty() {
        let mut set = StateSet::new(vec![2, 2], "opb");
        for i in 0..2 {
            for j in 0..2 {
                set.push(ProductState::new(
                    vec![LocalVector::basis(2, i), LocalVector::basis(2, j)],
                    format!("{i}{j}"),
                ))
                .unwrap();
            }
        }
        let w = complement_basis(&set).unwrap();
        assert_eq!(w.dim(), 0);
        let c = classify_bipartite(&set, None, &SeesawConfig::default()).unwrap();
        assert_eq!(c.verdict, Verdict::Completable);
        assert_eq!(c.confidence, Confidence::Exact);
    }

    #[test]
    fn complement_vectors_are_orthogonal_to_the_set() {
        let mut set = StateSet::new(vec![2, 3], "partial");
        set.push(ProductState::new(
            vec![LocalVector::basis(2, 0), LocalVector::from_reals(&[1.0, 1.0, 0.0])],
            "a",
        ))
        .unwrap();
        set.push(ProductState::new(
            vec![LocalVector::basis(2, 1), LocalVector::basis(3, 2)],
            "b",
        ))
        .unwrap();
        let w = complement_basis(&set).unwrap();
        assert_eq!(w.dim(), 4);
        for u in &w.basis {
            for s in &set.states {
                let ip = linalg::dot(u, &s.full_vector());
                assert!(ip.norm() < 1e-9);
            }
            assert!((linalg::norm(u) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn non_orthogonal_input_is_refused() {
        let mut set = StateSet::new(vec![2, 2], "bad");
        for label in ["a", "b"] {
            set.push(ProductState::new(
                vec![LocalVector::basis(2, 0), LocalVector::basis(2, 0)],
                label,
            ))
            .unwrap();
        }
        assert!(matches!(
            complement_basis(&set),
            Err(Error::NotOrthogonal { .. })
        ));
    }

    #[test]
    fn empty_set_is_an_error() {
        let set = StateSet::new(vec![2, 2], "empty");
        assert!(matches!(
            classify_bipartite(&set, None, &SeesawConfig::default()),
            Err(Error::EmptyStateSet)
        ));
    }
}
