use super::{AxisIndexSet, Bipartition, Tile, TileStructure};
use crate::error::{Error, Result};

/// View a 3-D structure as 2-D: rows are the singled-out party's axis and
/// columns carry the composite index of the two merged parties. Tile `i` of
/// the input maps to tile `i` of the output.
pub fn flatten_to_bipartition(s: &TileStructure, b: Bipartition) -> Result<TileStructure> {
    if s.arity() != 3 {
        return Err(Error::WrongArity {
            expected: 3,
            got: s.arity(),
        });
    }
    let (row_axis, (first, second)) = b.axis_split();
    let dims = vec![s.dims[row_axis], s.dims[first] * s.dims[second]];
    let tiles = s
        .tiles
        .iter()
        .map(|t| {
            let mut cols = Vec::with_capacity(t.axes[first].len() * t.axes[second].len());
            for &x in t.axes[first].indices() {
                for &y in t.axes[second].indices() {
                    cols.push(x * s.dims[second] + y);
                }
            }
            Tile {
                axes: vec![t.axes[row_axis].clone(), AxisIndexSet::new(cols)],
            }
        })
        .collect();
    Ok(TileStructure::new(dims, tiles))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_cube_flattens_to_unit_grid() {
        let s = TileStructure::new(
            vec![1, 1, 1],
            vec![Tile::new(vec![vec![0], vec![0], vec![0]])],
        );
        for b in Bipartition::ALL {
            let flat = flatten_to_bipartition(&s, b).unwrap();
            assert_eq!(flat.dims, vec![1, 1]);
            assert!(flat.is_valid());
        }
    }

    #[test]
    fn cell_and_tile_counts_are_preserved() {
        let s = TileStructure::new(
            vec![2, 3, 2],
            vec![
                Tile::new(vec![vec![0, 1], vec![0, 1, 2], vec![0]]),
                Tile::new(vec![vec![0], vec![0, 1, 2], vec![1]]),
                Tile::new(vec![vec![1], vec![0, 1, 2], vec![1]]),
            ],
        );
        for b in Bipartition::ALL {
            let flat = flatten_to_bipartition(&s, b).unwrap();
            assert!(flat.is_valid());
            assert_eq!(flat.cell_count(), s.cell_count());
            assert_eq!(flat.tile_count(), s.tile_count());
            for (t3, t2) in s.tiles.iter().zip(&flat.tiles) {
                assert_eq!(t3.cell_count(), t2.cell_count());
            }
        }
    }

    #[test]
    fn two_d_input_is_rejected() {
        let s = TileStructure::new(vec![1, 1], vec![Tile::new(vec![vec![0], vec![0]])]);
        assert!(flatten_to_bipartition(&s, Bipartition::AVsBC).is_err());
    }
}
