use super::{complement_basis, search_with_limit, SeesawConfig};
use crate::error::Result;
use crate::states::{ProductState, StateSet};

/// Orthogonality tolerance when verifying a numerically found completion.
/// Converged seesaw states sit in the complement to roughly sqrt(machine
/// epsilon), so raw inner products against unnormalized set members land
/// well under this.
pub const COMPLETION_GRAM_TOL: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct CompletionOutcome {
    /// Mutually orthogonal product states found in the complement.
    pub extension: Vec<ProductState>,
    /// Complement dimension, i.e. how many states a full completion needs.
    pub target: usize,
    /// Extension reached the complement dimension.
    pub complete: bool,
    /// Union of set and extension passed the orthogonality and count checks.
    pub verified: bool,
    /// Stopped by the budget rather than by failure to find more states.
    pub budget_exhausted: bool,
}

/// Greedily collect mutually orthogonal product states from the complement
/// of `set` until it is completed to a full product basis, the search stops
/// finding states, or `budget` states have been collected.
pub fn try_complete(set: &StateSet, budget: usize, cfg: &SeesawConfig) -> Result<CompletionOutcome> {
    let complement = complement_basis(set)?;
    let target = complement.dim();
    if target == 0 {
        return Ok(CompletionOutcome {
            extension: Vec::new(),
            target,
            complete: true,
            verified: true,
            budget_exhausted: false,
        });
    }
    let limit = budget.min(target);
    let outcome = search_with_limit(&complement, cfg, limit);
    let extension: Vec<ProductState> = outcome
        .found
        .iter()
        .enumerate()
        .map(|(i, f)| f.to_product_state(format!("ext{i}")))
        .collect();
    let complete = extension.len() == target;
    let budget_exhausted = !complete && extension.len() == limit;
    let verified = if complete {
        let mut union = set.clone();
        for state in &extension {
            union.push(state.clone())?;
        }
        union.len() == set.ambient_dim() && union.gram_check(COMPLETION_GRAM_TOL).ok
    } else {
        false
    };
    Ok(CompletionOutcome {
        extension,
        target,
        complete,
        verified,
        budget_exhausted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::LocalVector;

    #[test]
    fn already_complete_basis_needs_no_extension() {
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
        let out = try_complete(&set, 4, &SeesawConfig::default()).unwrap();
        assert!(out.complete && out.verified);
        assert!(out.extension.is_empty());
    }

    #[test]
    fn single_state_in_a_qubit_pair_completes() {
        let mut set = StateSet::new(vec![2, 2], "one");
        set.push(ProductState::new(
            vec![LocalVector::basis(2, 0), LocalVector::basis(2, 0)],
            "00",
        ))
        .unwrap();
        let cfg = SeesawConfig {
            restarts: 30,
            ..SeesawConfig::default()
        };
        let out = try_complete(&set, 3, &cfg).unwrap();
        assert_eq!(out.extension.len(), 3);
        assert!(out.complete && out.verified);
    }

    #[test]
    fn budget_cuts_the_search_short() {
        let mut set = StateSet::new(vec![2, 2], "one");
        set.push(ProductState::new(
            vec![LocalVector::basis(2, 0), LocalVector::basis(2, 0)],
            "00",
        ))
        .unwrap();
        let cfg = SeesawConfig {
            restarts: 30,
            ..SeesawConfig::default()
        };
        let out = try_complete(&set, 1, &cfg).unwrap();
        assert_eq!(out.extension.len(), 1);
        assert!(!out.complete);
        assert!(out.budget_exhausted);
    }
}
