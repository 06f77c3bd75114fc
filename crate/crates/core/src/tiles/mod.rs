//! Tile structures: axis-aligned partitions of a 2-D grid or 3-D cube into
//! combinatorial rectangles (index sets need not be contiguous).

mod flatten;
mod quasi;
mod rect;
mod regions;
mod sweep;

pub use flatten::flatten_to_bipartition;
pub use quasi::{find_quasi_u_partition, group_is_maximal, validate_quasi_partition, QuasiCheck, QuasiPartition};
pub use rect::is_combinatorial_rectangle;
pub use regions::{enumerate_special_regions, is_u_tile, SpecialRegion, SplitWitness, UTileVerdict, SUBSET_SEARCH_CAP};
pub use sweep::enumerate_small_structures;

use serde::{Deserialize, Serialize};

/// Sorted, distinct basis labels along one axis of a tile.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct AxisIndexSet {
    indices: Vec<usize>,
}

impl AxisIndexSet {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        Self { indices }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.indices.binary_search(&idx).is_ok()
    }

    pub fn max(&self) -> Option<usize> {
        self.indices.last().copied()
    }
}

impl From<Vec<usize>> for AxisIndexSet {
    fn from(v: Vec<usize>) -> Self {
        Self::new(v)
    }
}

impl From<AxisIndexSet> for Vec<usize> {
    fn from(s: AxisIndexSet) -> Self {
        s.indices
    }
}

/// One tile: the Cartesian product of its per-axis index sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tile {
    pub axes: Vec<AxisIndexSet>,
}

impl Tile {
    pub fn new(axes: Vec<Vec<usize>>) -> Self {
        Self {
            axes: axes.into_iter().map(AxisIndexSet::new).collect(),
        }
    }

    /// Per-axis cardinalities (p, q[, h]).
    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.len()).collect()
    }

    pub fn cell_count(&self) -> usize {
        self.axes.iter().map(|a| a.len()).product()
    }

    /// Cells as multi-indices, in row-major order over the sorted axis sets.
    pub fn cells(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for axis in &self.axes {
            let mut next = Vec::with_capacity(out.len() * axis.len());
            for prefix in &out {
                for &i in axis.indices() {
                    let mut cell = prefix.clone();
                    cell.push(i);
                    next.push(cell);
                }
            }
            out = next;
        }
        out
    }
}

/// A partition of the full grid into tiles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileStructure {
    pub dims: Vec<usize>,
    pub tiles: Vec<Tile>,
}

/// Which party is split off from a tripartite system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Bipartition {
    #[serde(rename = "A|BC")]
    AVsBC,
    #[serde(rename = "B|CA")]
    BVsCA,
    #[serde(rename = "C|AB")]
    CVsAB,
}

impl Bipartition {
    pub const ALL: [Bipartition; 3] = [Bipartition::AVsBC, Bipartition::BVsCA, Bipartition::CVsAB];

    /// (row axis, (first composite axis, second composite axis)).
    ///
    /// The composite index of coordinates (x, y) on the two merged axes is
    /// `x * dims[second] + y`: A|BC -> (b,c) -> b*dC+c, B|CA -> (c,a) -> c*dA+a,
    /// C|AB -> (a,b) -> a*dB+b.
    pub fn axis_split(self) -> (usize, (usize, usize)) {
        match self {
            Bipartition::AVsBC => (0, (1, 2)),
            Bipartition::BVsCA => (1, (2, 0)),
            Bipartition::CVsAB => (2, (0, 1)),
        }
    }
}

impl std::fmt::Display for Bipartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Bipartition::AVsBC => "A|BC",
            Bipartition::BVsCA => "B|CA",
            Bipartition::CVsAB => "C|AB",
        })
    }
}

/// A violated structure invariant. Violations are data, not failures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    BadDims { dims: Vec<usize> },
    WrongTileArity { tile: usize, got: usize },
    EmptyAxis { tile: usize, axis: usize },
    OutOfRange { tile: usize, axis: usize, index: usize },
    Overlap { cell: Vec<usize>, tiles: (usize, usize) },
    Uncovered { cell: Vec<usize> },
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl TileStructure {
    pub fn new(dims: Vec<usize>, tiles: Vec<Tile>) -> Self {
        Self { dims, tiles }
    }

    pub fn arity(&self) -> usize {
        self.dims.len()
    }

    pub fn tile_count(&self) -> usize {
        self.tiles.len()
    }

    pub fn cell_count(&self) -> usize {
        self.dims.iter().product()
    }

    /// Linear (row-major) index of a cell.
    pub fn linear_index(&self, cell: &[usize]) -> usize {
        let mut idx = 0;
        for (d, &x) in self.dims.iter().zip(cell) {
            idx = idx * d + x;
        }
        idx
    }

    /// Linear cell indices of one tile, ascending.
    pub fn tile_cells_linear(&self, tile: usize) -> Vec<usize> {
        let mut cells: Vec<usize> = self.tiles[tile]
            .cells()
            .iter()
            .map(|c| self.linear_index(c))
            .collect();
        cells.sort_unstable();
        cells
    }

    /// Map each grid cell to the id of the tile covering it.
    /// `None` entries are uncovered; overlaps keep the first owner.
    pub fn cell_owners(&self) -> Vec<Option<usize>> {
        let mut owners = vec![None; self.cell_count()];
        for (t, tile) in self.tiles.iter().enumerate() {
            for cell in tile.cells() {
                if cell.iter().zip(&self.dims).any(|(&x, &d)| x >= d) {
                    continue;
                }
                let idx = self.linear_index(&cell);
                if owners[idx].is_none() {
                    owners[idx] = Some(t);
                }
            }
        }
        owners
    }

    fn coords_of(&self, mut linear: usize) -> Vec<usize> {
        let mut cell = vec![0; self.arity()];
        for axis in (0..self.arity()).rev() {
            cell[axis] = linear % self.dims[axis];
            linear /= self.dims[axis];
        }
        cell
    }

    /// Check every structure invariant and report each violation found.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let arity = self.arity();
        if !(2..=3).contains(&arity) || self.dims.iter().any(|&d| d == 0) {
            report.violations.push(Violation::BadDims {
                dims: self.dims.clone(),
            });
            return report;
        }
        for (t, tile) in self.tiles.iter().enumerate() {
            if tile.axes.len() != arity {
                report.violations.push(Violation::WrongTileArity {
                    tile: t,
                    got: tile.axes.len(),
                });
                continue;
            }
            for (axis, set) in tile.axes.iter().enumerate() {
                if set.is_empty() {
                    report.violations.push(Violation::EmptyAxis { tile: t, axis });
                }
                for &i in set.indices() {
                    if i >= self.dims[axis] {
                        report.violations.push(Violation::OutOfRange {
                            tile: t,
                            axis,
                            index: i,
                        });
                    }
                }
            }
        }
        if !report.is_valid() {
            return report;
        }

        let mut owners: Vec<Option<usize>> = vec![None; self.cell_count()];
        for (t, tile) in self.tiles.iter().enumerate() {
            for cell in tile.cells() {
                let idx = self.linear_index(&cell);
                match owners[idx] {
                    Some(prev) => report.violations.push(Violation::Overlap {
                        cell,
                        tiles: (prev, t),
                    }),
                    None => owners[idx] = Some(t),
                }
            }
        }
        for (idx, owner) in owners.iter().enumerate() {
            if owner.is_none() {
                report.violations.push(Violation::Uncovered {
                    cell: self.coords_of(idx),
                });
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_partition_is_valid() {
        let s = TileStructure::new(vec![1, 1], vec![Tile::new(vec![vec![0], vec![0]])]);
        assert!(s.is_valid());
    }

    #[test]
    fn overlap_is_reported_at_the_offending_cell() {
        let s = TileStructure::new(
            vec![2, 2],
            vec![
                Tile::new(vec![vec![0, 1], vec![0, 1]]),
                Tile::new(vec![vec![0], vec![0]]),
            ],
        );
        let report = s.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Overlap { cell, .. } if cell == &vec![0, 0])));
    }

    #[test]
    fn uncovered_cell_is_reported() {
        let s = TileStructure::new(vec![1, 2], vec![Tile::new(vec![vec![0], vec![0]])]);
        let report = s.validate();
        assert_eq!(
            report.violations,
            vec![Violation::Uncovered { cell: vec![0, 1] }]
        );
    }

    #[test]
    fn out_of_range_index_is_reported() {
        let s = TileStructure::new(vec![2, 2], vec![Tile::new(vec![vec![0, 2], vec![0]])]);
        assert!(s
            .validate()
            .violations
            .iter()
            .any(|v| matches!(v, Violation::OutOfRange { index: 2, .. })));
    }

    #[test]
    fn axis_sets_are_normalized_on_construction() {
        let t = Tile::new(vec![vec![3, 1, 1], vec![0]]);
        assert_eq!(t.axes[0].indices(), &[1, 3]);
    }
}
