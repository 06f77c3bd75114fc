use super::{Tile, TileStructure};
use crate::error::{Error, Result};

const MAX_AREA: usize = 12;
const MAX_TILES_CAP: usize = 6;

/// Exhaustively enumerate every partition of the grid into at most
/// `max_tiles` combinatorial rectangles.
///
/// Backtracking over the lexicographically smallest uncovered cell: each tile
/// placed has that cell as its minimum, so every partition is produced exactly
/// once and the output order is deterministic.
pub fn enumerate_small_structures(dims: &[usize], max_tiles: usize) -> Result<Vec<TileStructure>> {
    let area: usize = dims.iter().product();
    if area == 0 || area > MAX_AREA {
        return Err(Error::SweepCapExceeded(format!(
            "grid area {area} outside 1..={MAX_AREA}"
        )));
    }
    if max_tiles > MAX_TILES_CAP {
        return Err(Error::SweepCapExceeded(format!(
            "max_tiles {max_tiles} exceeds {MAX_TILES_CAP}"
        )));
    }
    if !(2..=3).contains(&dims.len()) {
        return Err(Error::WrongArity {
            expected: 2,
            got: dims.len(),
        });
    }

    let mut out = Vec::new();
    let mut covered = vec![false; area];
    let mut tiles: Vec<Tile> = Vec::new();
    recurse(dims, max_tiles, &mut covered, &mut tiles, &mut out);
    Ok(out)
}

fn coords_of(dims: &[usize], mut linear: usize) -> Vec<usize> {
    let mut cell = vec![0; dims.len()];
    for axis in (0..dims.len()).rev() {
        cell[axis] = linear % dims[axis];
        linear /= dims[axis];
    }
    cell
}

fn linear_of(dims: &[usize], cell: &[usize]) -> usize {
    cell.iter().zip(dims).fold(0, |acc, (&x, &d)| acc * d + x)
}

fn recurse(
    dims: &[usize],
    max_tiles: usize,
    covered: &mut Vec<bool>,
    tiles: &mut Vec<Tile>,
    out: &mut Vec<TileStructure>,
) {
    let anchor = match covered.iter().position(|&c| !c) {
        None => {
            out.push(TileStructure::new(dims.to_vec(), tiles.clone()));
            return;
        }
        Some(i) => i,
    };
    if tiles.len() == max_tiles {
        return;
    }
    let anchor_cell = coords_of(dims, anchor);

    // Per-axis subsets whose minimum is the anchor coordinate.
    let axis_choices: Vec<Vec<Vec<usize>>> = (0..dims.len())
        .map(|a| {
            let lo = anchor_cell[a];
            let tail: Vec<usize> = (lo + 1..dims[a]).collect();
            let mut sets = Vec::new();
            for mask in 0..(1usize << tail.len()) {
                let mut set = vec![lo];
                for (bit, &v) in tail.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        set.push(v);
                    }
                }
                sets.push(set);
            }
            sets
        })
        .collect();

    let mut pick = vec![0usize; dims.len()];
    loop {
        let axes: Vec<Vec<usize>> = pick
            .iter()
            .enumerate()
            .map(|(a, &i)| axis_choices[a][i].clone())
            .collect();
        let tile = Tile::new(axes);
        let cells: Vec<usize> = tile.cells().iter().map(|c| linear_of(dims, c)).collect();
        if cells.iter().all(|&c| !covered[c]) {
            for &c in &cells {
                covered[c] = true;
            }
            tiles.push(tile);
            recurse(dims, max_tiles, covered, tiles, out);
            tiles.pop();
            for &c in &cells {
                covered[c] = false;
            }
        }
        // Odometer over the per-axis choices.
        let mut axis = dims.len();
        loop {
            if axis == 0 {
                return;
            }
            axis -= 1;
            pick[axis] += 1;
            if pick[axis] < axis_choices[axis].len() {
                break;
            }
            pick[axis] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_by_one_has_exactly_one_partition() {
        let all = enumerate_small_structures(&[1, 1], 1).unwrap();
        assert_eq!(all.len(), 1);
    }

    #[test]
    fn one_by_two_has_two_partitions() {
        let all = enumerate_small_structures(&[1, 2], 2).unwrap();
        assert_eq!(all.len(), 2);
    }

    #[test]
    fn two_by_two_with_two_tiles_has_three_partitions() {
        let all = enumerate_small_structures(&[2, 2], 2).unwrap();
        assert_eq!(all.len(), 3);
    }

    #[test]
    fn every_emitted_structure_is_valid() {
        for s in enumerate_small_structures(&[2, 3], 4).unwrap() {
            assert!(s.is_valid());
        }
    }

    #[test]
    fn area_cap_is_enforced() {
        assert!(enumerate_small_structures(&[4, 4], 3).is_err());
        assert!(enumerate_small_structures(&[7, 2], 7).is_err());
    }
}
