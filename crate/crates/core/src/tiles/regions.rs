//! Special regions and the U-tile decision.
//!
//! A subset of tiles whose union is a combinatorial rectangle is exactly a
//! *closed* set of the closure operator "grow the hull box, absorb every tile
//! that meets it": tiles partition the grid, so a tile meeting the box of an
//! exactly-covered region must lie inside it. Special regions are therefore
//! enumerated as the closed sets of that operator (Ganter's NextClosure),
//! never by scanning all subsets.

use super::{AxisIndexSet, TileStructure};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Exhaustive region enumeration refuses structures with more tiles than this.
pub const SUBSET_SEARCH_CAP: usize = 24;

/// A union of two or more tiles forming a combinatorial rectangle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialRegion {
    pub tile_ids: Vec<usize>,
    pub hull: Vec<AxisIndexSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitWitness {
    pub region: SpecialRegion,
    pub part_a: Vec<usize>,
    pub part_b: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UTileVerdict {
    pub is_u_tile: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<SplitWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// Per-tile axis sets as bitmasks, for fast hull/intersection arithmetic.
pub(super) struct AxisMasks {
    pub arity: usize,
    pub masks: Vec<Vec<u128>>,
}

impl AxisMasks {
    pub fn build(s: &TileStructure) -> Result<Self> {
        if let Some(&d) = s.dims.iter().find(|&&d| d > 128) {
            return Err(Error::InvalidStructure(format!(
                "axis dimension {d} exceeds the 128-index limit of the region machinery"
            )));
        }
        let masks = s
            .tiles
            .iter()
            .map(|t| t.axes.iter().map(axis_mask).collect())
            .collect();
        Ok(Self {
            arity: s.arity(),
            masks,
        })
    }

    fn intersects_box(&self, tile: usize, hull: &[u128]) -> bool {
        (0..self.arity).all(|a| self.masks[tile][a] & hull[a] != 0)
    }
}

fn axis_mask(set: &AxisIndexSet) -> u128 {
    set.indices().iter().fold(0u128, |m, &i| m | (1u128 << i))
}

/// Smallest closed tile set containing `seed`, as a membership vector.
pub(super) fn closure_membership(ax: &AxisMasks, n: usize, seed: &[usize]) -> Vec<bool> {
    let mut member = vec![false; n];
    for &t in seed {
        member[t] = true;
    }
    loop {
        let mut hull = vec![0u128; ax.arity];
        for t in 0..n {
            if member[t] {
                for a in 0..ax.arity {
                    hull[a] |= ax.masks[t][a];
                }
            }
        }
        let mut grew = false;
        for t in 0..n {
            if !member[t] && ax.intersects_box(t, &hull) {
                member[t] = true;
                grew = true;
            }
        }
        if !grew {
            return member;
        }
    }
}

/// Closure over mask-encoded tile sets (small structures only).
fn closure_mask(ax: &AxisMasks, n: usize, mask: u32) -> u32 {
    let mut member = mask;
    loop {
        let mut hull = vec![0u128; ax.arity];
        for t in 0..n {
            if member & (1 << t) != 0 {
                for a in 0..ax.arity {
                    hull[a] |= ax.masks[t][a];
                }
            }
        }
        let mut grew = member;
        if member != 0 {
            for t in 0..n {
                if grew & (1 << t) == 0 && ax.intersects_box(t, &hull) {
                    grew |= 1 << t;
                }
            }
        }
        if grew == member {
            return member;
        }
        member = grew;
    }
}

/// All closed tile sets of `s`, enumerated with NextClosure in lectic order.
fn closed_sets(s: &TileStructure) -> Result<Vec<u32>> {
    let n = s.tile_count();
    if n > SUBSET_SEARCH_CAP {
        return Err(Error::CapExceeded {
            count: n,
            cap: SUBSET_SEARCH_CAP,
        });
    }
    let ax = AxisMasks::build(s)?;
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let mut out = Vec::new();
    let mut current = closure_mask(&ax, n, 0);
    out.push(current);
    while current != full {
        let mut next = None;
        for i in (0..n).rev() {
            if current & (1 << i) != 0 {
                continue;
            }
            let below: u32 = (1 << i) - 1;
            let candidate = closure_mask(&ax, n, (current & below) | (1 << i));
            if candidate & below == current & below {
                next = Some(candidate);
                break;
            }
        }
        current = next.expect("full set is closed, so a lectic successor exists");
        out.push(current);
    }
    Ok(out)
}

fn ids_of(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|t| mask & (1 << t) != 0).collect()
}

fn hull_of(s: &TileStructure, ids: &[usize]) -> Vec<AxisIndexSet> {
    (0..s.arity())
        .map(|a| {
            let mut indices = Vec::new();
            for &t in ids {
                indices.extend_from_slice(s.tiles[t].axes[a].indices());
            }
            AxisIndexSet::new(indices)
        })
        .collect()
}

/// Exactly the tile subsets of size >= 2 whose union passes the hull test,
/// sorted lexicographically by tile-id vector.
pub fn enumerate_special_regions(s: &TileStructure) -> Result<Vec<SpecialRegion>> {
    let n = s.tile_count();
    let mut regions: Vec<SpecialRegion> = closed_sets(s)?
        .into_iter()
        .filter(|m| m.count_ones() >= 2)
        .map(|m| {
            let tile_ids = ids_of(m, n);
            let hull = hull_of(s, &tile_ids);
            SpecialRegion { tile_ids, hull }
        })
        .collect();
    regions.sort_by(|a, b| a.tile_ids.cmp(&b.tile_ids));
    Ok(regions)
}

/// Decide the U-tile property: no special region may split into two parts,
/// each itself a tile or a special region. Uniform over 2-D and 3-D; in 3-D
/// a structure needs at least five tiles to qualify.
///
/// The witness, when present, is the smallest splitting region (by size, then
/// tile ids) with its lexicographically first split.
pub fn is_u_tile(s: &TileStructure) -> Result<UTileVerdict> {
    let n = s.tile_count();
    if s.arity() == 3 && n < 5 {
        return Ok(UTileVerdict {
            is_u_tile: false,
            witness: None,
            reason: Some(format!("3-D structures need at least 5 tiles, got {n}")),
        });
    }
    let closed = closed_sets(s)?;
    let mut specials: Vec<u32> = closed.iter().copied().filter(|m| m.count_ones() >= 2).collect();
    // Parts of a split may be single tiles as well.
    let mut parts: Vec<u32> = (0..n).map(|t| 1u32 << t).collect();
    parts.extend(specials.iter().copied());
    parts.sort_by(|a, b| ids_of(*a, n).cmp(&ids_of(*b, n)));
    parts.dedup();
    let is_part = |m: u32| m.count_ones() == 1 || specials.binary_search(&m).is_ok();
    specials.sort_unstable();

    let mut ordered: Vec<u32> = specials.clone();
    ordered.sort_by_key(|m| (m.count_ones(), ids_of(*m, n)));
    for region in ordered {
        let low_bit = region & region.wrapping_neg();
        for &p in &parts {
            // Anchor part_a on the region's lowest tile id; that fixes the
            // orientation and makes the first hit lexicographically least.
            if p & low_bit == 0 || p & !region != 0 || p == region {
                continue;
            }
            let q = region & !p;
            if q != 0 && is_part(q) {
                let tile_ids = ids_of(region, n);
                let hull = hull_of(s, &tile_ids);
                return Ok(UTileVerdict {
                    is_u_tile: false,
                    witness: Some(SplitWitness {
                        region: SpecialRegion { tile_ids, hull },
                        part_a: ids_of(p, n),
                        part_b: ids_of(q, n),
                    }),
                    reason: None,
                });
            }
        }
    }
    Ok(UTileVerdict {
        is_u_tile: true,
        witness: None,
        reason: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiles::Tile;

    fn two_by_two_quarters() -> TileStructure {
        TileStructure::new(
            vec![2, 2],
            vec![
                Tile::new(vec![vec![0], vec![0]]),
                Tile::new(vec![vec![0], vec![1]]),
                Tile::new(vec![vec![1], vec![0]]),
                Tile::new(vec![vec![1], vec![1]]),
            ],
        )
    }

    #[test]
    fn single_tile_structure_has_no_special_regions() {
        let s = TileStructure::new(vec![2, 2], vec![Tile::new(vec![vec![0, 1], vec![0, 1]])]);
        assert!(enumerate_special_regions(&s).unwrap().is_empty());
    }

    #[test]
    fn quarters_of_a_square_split_everywhere() {
        let s = two_by_two_quarters();
        let regions = enumerate_special_regions(&s).unwrap();
        // rows {0,1}, {2,3}; columns {0,2}, {1,3}; and the whole grid.
        assert_eq!(regions.len(), 5);
        let verdict = is_u_tile(&s).unwrap();
        assert!(!verdict.is_u_tile);
        let w = verdict.witness.unwrap();
        assert_eq!(w.region.tile_ids, vec![0, 1]);
        assert_eq!(w.part_a, vec![0]);
        assert_eq!(w.part_b, vec![1]);
    }

    #[test]
    fn cap_is_enforced() {
        let tiles: Vec<Tile> = (0..25).map(|i| Tile::new(vec![vec![0], vec![i]])).collect();
        let s = TileStructure::new(vec![1, 25], tiles);
        assert!(matches!(
            enumerate_special_regions(&s),
            Err(Error::CapExceeded { count: 25, .. })
        ));
    }

    #[test]
    fn three_d_needs_five_tiles() {
        let s = TileStructure::new(
            vec![1, 1, 2],
            vec![
                Tile::new(vec![vec![0], vec![0], vec![0]]),
                Tile::new(vec![vec![0], vec![0], vec![1]]),
            ],
        );
        let verdict = is_u_tile(&s).unwrap();
        assert!(!verdict.is_u_tile);
        assert!(verdict.reason.is_some());
    }
}
