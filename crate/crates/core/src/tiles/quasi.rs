//! Quasi U-tile partitions.
//!
//! A quasi partition regroups tiles into at least five new tiles, each of
//! which (i) cannot grow into a larger combinatorial rectangle by absorbing
//! other tiles (the full structure excepted), (ii) has members agreeing on one
//! axis index set, and (iii) together form a U-tile structure.
//!
//! Maximality is decided without subset search: a rectangular strict superset
//! of a group exists iff the closure of the group plus any single outside tile
//! stops short of the full tile set.

use super::regions::{closure_membership, is_u_tile, AxisMasks};
use super::{AxisIndexSet, Tile, TileStructure};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// A grouping of tile ids witnessing the quasi U-tile property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiPartition {
    /// Tile-id groups, each sorted; groups ordered by smallest member.
    pub groups: Vec<Vec<usize>>,
    /// For multi-tile groups, the axis on which all members agree.
    pub shared_axes: Vec<Option<usize>>,
}

impl QuasiPartition {
    /// Canonicalize: sort ids within groups, order groups by first member.
    pub fn new(mut groups: Vec<Vec<usize>>, s: &TileStructure) -> Self {
        for g in &mut groups {
            g.sort_unstable();
        }
        groups.sort();
        let shared_axes = groups.iter().map(|g| shared_axis(s, g)).collect();
        Self {
            groups,
            shared_axes,
        }
    }

    pub fn group_count(&self) -> usize {
        self.groups.len()
    }
}

fn shared_axis(s: &TileStructure, group: &[usize]) -> Option<usize> {
    if group.len() < 2 {
        return None;
    }
    let first = &s.tiles[group[0]];
    (0..s.arity()).find(|&a| {
        group
            .iter()
            .all(|&t| s.tiles[t].axes[a] == first.axes[a])
    })
}

fn group_hull(s: &TileStructure, group: &[usize]) -> Vec<AxisIndexSet> {
    (0..s.arity())
        .map(|a| {
            let mut idx = Vec::new();
            for &t in group {
                idx.extend_from_slice(s.tiles[t].axes[a].indices());
            }
            AxisIndexSet::new(idx)
        })
        .collect()
}

fn group_is_rectangle(s: &TileStructure, group: &[usize]) -> bool {
    let mut cells: Vec<usize> = group
        .iter()
        .flat_map(|&t| s.tile_cells_linear(t))
        .collect();
    cells.sort_unstable();
    let before = cells.len();
    cells.dedup();
    if cells.len() != before {
        return false;
    }
    let hull_size: usize = group_hull(s, group).iter().map(|a| a.len()).product();
    hull_size == cells.len()
}

/// Can this group not be extended to a larger combinatorial rectangle by
/// adding other tiles, the full structure excepted?
pub fn group_is_maximal(s: &TileStructure, group: &[usize]) -> Result<bool> {
    if group.is_empty() {
        return Err(Error::InvalidStructure("empty tile group".into()));
    }
    if !group_is_rectangle(s, group) {
        return Err(Error::InvalidStructure(
            "group union is not a combinatorial rectangle".into(),
        ));
    }
    let n = s.tile_count();
    if group.len() == n {
        return Ok(true);
    }
    let ax = AxisMasks::build(s)?;
    let in_group = {
        let mut v = vec![false; n];
        for &t in group {
            v[t] = true;
        }
        v
    };
    let mut seed: Vec<usize> = group.to_vec();
    for t in 0..n {
        if in_group[t] {
            continue;
        }
        seed.push(t);
        let closure = closure_membership(&ax, n, &seed);
        seed.pop();
        if closure.iter().any(|&m| !m) {
            // A proper closed superset exists, hence a larger rectangle.
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of checking a proposed quasi partition against conditions (i)-(iii).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuasiCheck {
    pub ok: bool,
    pub failures: Vec<String>,
    /// The coarse structure formed by the groups (condition (iii) input).
    pub coarse: TileStructure,
}

/// Check a proposed partition: group cover, m >= 5, per-group rectangularity,
/// maximality (i), shared axis (ii), and coarse U-tile (iii).
pub fn validate_quasi_partition(
    s: &TileStructure,
    partition: &QuasiPartition,
) -> Result<QuasiCheck> {
    let n = s.tile_count();
    let mut failures = Vec::new();

    let mut seen = vec![false; n];
    for g in &partition.groups {
        for &t in g {
            if t >= n {
                return Err(Error::InvalidStructure(format!(
                    "group references tile {t}, structure has {n}"
                )));
            }
            if seen[t] {
                failures.push(format!("tile {t} appears in more than one group"));
            }
            seen[t] = true;
        }
    }
    if let Some(t) = seen.iter().position(|&m| !m) {
        failures.push(format!("tile {t} is not covered by any group"));
    }
    if partition.group_count() < 5 {
        failures.push(format!(
            "partition has {} groups, need at least 5",
            partition.group_count()
        ));
    }

    let mut coarse_tiles = Vec::with_capacity(partition.group_count());
    for (gi, g) in partition.groups.iter().enumerate() {
        if !group_is_rectangle(s, g) {
            failures.push(format!("group {gi} {g:?} is not a combinatorial rectangle"));
            continue;
        }
        if g.len() >= 2 && shared_axis(s, g).is_none() {
            failures.push(format!(
                "group {gi} {g:?} members do not share an axis index set"
            ));
        }
        if !group_is_maximal(s, g)? {
            failures.push(format!(
                "group {gi} {g:?} extends to a larger rectangle"
            ));
        }
        coarse_tiles.push(Tile {
            axes: group_hull(s, g),
        });
    }
    let coarse = TileStructure::new(s.dims.clone(), coarse_tiles);
    if failures.is_empty() {
        let verdict = is_u_tile(&coarse)?;
        if !verdict.is_u_tile {
            failures.push("coarse structure is not a U-tile structure".into());
        }
    }
    Ok(QuasiCheck {
        ok: failures.is_empty(),
        failures,
        coarse,
    })
}

/// Search for a quasi U-tile partition of a 2-D structure.
///
/// Candidate groups for a tile are its singleton and its full row/column
/// equivalence classes (identical axis sets): a partial class always extends
/// to the full class, so nothing else can satisfy maximality inside an
/// m >= 5 partition. The first partition found in group-lexicographic order
/// is returned, so the result is the lexicographically smallest one.
pub fn find_quasi_u_partition(s: &TileStructure) -> Result<Option<QuasiPartition>> {
    if s.arity() != 2 {
        return Err(Error::WrongArity {
            expected: 2,
            got: s.arity(),
        });
    }
    let report = s.validate();
    if !report.is_valid() {
        return Err(Error::InvalidStructure(format!(
            "{} violations",
            report.violations.len()
        )));
    }
    let n = s.tile_count();
    if n < 5 {
        return Ok(None);
    }

    // Equivalence classes per axis by identical index set.
    let mut classes: Vec<Vec<Vec<usize>>> = Vec::new();
    for axis in 0..2 {
        let mut by_set: HashMap<&AxisIndexSet, Vec<usize>> = HashMap::new();
        for (t, tile) in s.tiles.iter().enumerate() {
            by_set.entry(&tile.axes[axis]).or_default().push(t);
        }
        let mut cls = vec![Vec::new(); n];
        for (_, members) in by_set {
            for &t in &members {
                cls[t] = members.clone();
            }
        }
        classes.push(cls);
    }

    let mut maximal_memo: HashMap<Vec<usize>, bool> = HashMap::new();
    let mut is_max = |s: &TileStructure, g: &Vec<usize>| -> Result<bool> {
        if let Some(&m) = maximal_memo.get(g) {
            return Ok(m);
        }
        let m = group_is_maximal(s, g)?;
        maximal_memo.insert(g.clone(), m);
        Ok(m)
    };

    // Valid candidate groups containing each tile, in lexicographic order.
    let mut candidates: Vec<Vec<Vec<usize>>> = Vec::with_capacity(n);
    for t in 0..n {
        let mut cand: Vec<Vec<usize>> = vec![vec![t]];
        for axis in 0..2 {
            let class = &classes[axis][t];
            if class.len() > 1 && !cand.contains(class) {
                cand.push(class.clone());
            }
        }
        cand.retain(|g| matches!(is_max(s, g), Ok(true)));
        cand.sort();
        candidates.push(cand);
    }

    fn dfs(
        s: &TileStructure,
        candidates: &[Vec<Vec<usize>>],
        assigned: &mut Vec<bool>,
        groups: &mut Vec<Vec<usize>>,
        remaining: usize,
    ) -> Result<Option<Vec<Vec<usize>>>> {
        if remaining == 0 {
            if groups.len() < 5 {
                return Ok(None);
            }
            let coarse_tiles = groups
                .iter()
                .map(|g| Tile {
                    axes: group_hull(s, g),
                })
                .collect();
            let coarse = TileStructure::new(s.dims.clone(), coarse_tiles);
            if is_u_tile(&coarse)?.is_u_tile {
                return Ok(Some(groups.clone()));
            }
            return Ok(None);
        }
        if groups.len() + remaining < 5 {
            return Ok(None);
        }
        let t = assigned.iter().position(|&a| !a).unwrap();
        for g in &candidates[t] {
            if g.iter().any(|&m| assigned[m]) {
                continue;
            }
            for &m in g {
                assigned[m] = true;
            }
            groups.push(g.clone());
            let found = dfs(s, candidates, assigned, groups, remaining - g.len())?;
            groups.pop();
            for &m in g {
                assigned[m] = false;
            }
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    let mut assigned = vec![false; n];
    let mut groups = Vec::new();
    Ok(dfs(s, &candidates, &mut assigned, &mut groups, n)?
        .map(|groups| QuasiPartition::new(groups, s)))
}

#[cfg(test)]
mod tests {
    use super::*;

    // 2x2 grid split into a top row and two bottom cells.
    fn top_row_and_two_cells() -> TileStructure {
        TileStructure::new(
            vec![2, 2],
            vec![
                Tile::new(vec![vec![0], vec![0, 1]]),
                Tile::new(vec![vec![1], vec![0]]),
                Tile::new(vec![vec![1], vec![1]]),
            ],
        )
    }

    #[test]
    fn partial_class_is_not_maximal() {
        let s = top_row_and_two_cells();
        assert!(!group_is_maximal(&s, &[1]).unwrap());
        assert!(group_is_maximal(&s, &[1, 2]).unwrap());
        assert!(group_is_maximal(&s, &[0]).unwrap());
    }

    #[test]
    fn full_set_exception_applies() {
        let s = top_row_and_two_cells();
        // {0,1} is not a rectangle, but {0,1,2} completes to the full grid.
        assert!(group_is_maximal(&s, &[0, 1, 2]).unwrap());
    }

    #[test]
    fn non_rectangular_group_is_rejected() {
        let s = top_row_and_two_cells();
        assert!(group_is_maximal(&s, &[0, 1]).is_err());
    }

    #[test]
    fn too_few_tiles_means_no_partition() {
        let s = top_row_and_two_cells();
        assert_eq!(find_quasi_u_partition(&s).unwrap(), None);
    }

    #[test]
    fn three_d_input_is_rejected() {
        let s = TileStructure::new(
            vec![1, 1, 1],
            vec![Tile::new(vec![vec![0], vec![0], vec![0]])],
        );
        assert!(matches!(
            find_quasi_u_partition(&s),
            Err(Error::WrongArity { expected: 2, got: 3 })
        ));
    }
}
