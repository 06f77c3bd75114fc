use super::{LocalVector, ProductState, StateSet};
use crate::error::{Error, Result};
use crate::tiles::{Tile, TileStructure};
use num_complex::Complex64 as C64;
use std::f64::consts::TAU;

fn root_of_unity(order: usize, power: usize) -> C64 {
    let angle = TAU * (power % order) as f64 / order as f64;
    C64::new(angle.cos(), angle.sin())
}

/// Local vector supported on `support` (in the given order) with amplitudes
/// w_{|support|}^{harmonic * position}.
pub(crate) fn dft_local(dim: usize, support: &[usize], harmonic: usize) -> LocalVector {
    let order = support.len();
    let mut amps = vec![C64::ZERO; dim];
    for (e, &idx) in support.iter().enumerate() {
        amps[idx] = root_of_unity(order, harmonic * e);
    }
    LocalVector::new(amps)
}

/// The full DFT state family of one tile: state (k, l[, m]) carries phase
/// harmonics k, l[, m] over the tile's sorted axis sets. Harmonic tuples are
/// enumerated in row-major order.
///
/// Within a tile the family is pairwise orthogonal with squared norms equal
/// to the tile's cell count, and every member is orthogonal to every state of
/// any cell-disjoint tile.
pub fn tile_dft_states(tile: &Tile, dims: &[usize]) -> Vec<ProductState> {
    let shape = tile.shape();
    let mut harmonics = vec![vec![]];
    for &extent in &shape {
        let mut next = Vec::with_capacity(harmonics.len() * extent);
        for h in &harmonics {
            for k in 0..extent {
                let mut h2: Vec<usize> = h.clone();
                h2.push(k);
                next.push(h2);
            }
        }
        harmonics = next;
    }
    harmonics
        .into_iter()
        .map(|h| {
            let locals = tile
                .axes
                .iter()
                .zip(dims)
                .zip(&h)
                .map(|((axis, &d), &k)| dft_local(d, axis.indices(), k))
                .collect();
            let label = h
                .iter()
                .map(|k| k.to_string())
                .collect::<Vec<_>>()
                .join(",");
            ProductState::new(locals, format!("({label})"))
        })
        .collect()
}

/// The all-ones product state.
pub fn stopper_state(dims: &[usize]) -> ProductState {
    ProductState::new(
        dims.iter().map(|&d| LocalVector::uniform(d)).collect(),
        "stopper",
    )
}

/// The punctured tile set: every tile's DFT family with the all-harmonics-zero
/// state removed, plus the stopper. Its size is (product of dims) - n + 1.
pub fn punctured_tile_set(s: &TileStructure) -> Result<StateSet> {
    let report = s.validate();
    if !report.is_valid() {
        return Err(Error::InvalidStructure(format!(
            "{} violations",
            report.violations.len()
        )));
    }
    let mut set = StateSet::new(
        s.dims.clone(),
        format!(
            "punctured[{};{} tiles]",
            s.dims
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join("x"),
            s.tile_count()
        ),
    );
    for (i, tile) in s.tiles.iter().enumerate() {
        for state in tile_dft_states(tile, &s.dims).into_iter().skip(1) {
            let label = format!("t{i}{}", state.label);
            set.push(ProductState { label, ..state })?;
        }
    }
    set.push(stopper_state(&s.dims))?;
    debug_assert_eq!(set.len(), s.cell_count() - s.tile_count() + 1);
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::inner_product;

    #[test]
    fn one_point_tile_gives_the_computational_state() {
        let tile = Tile::new(vec![vec![2], vec![4]]);
        let states = tile_dft_states(&tile, &[3, 5]);
        assert_eq!(states.len(), 1);
        let full = states[0].full_vector();
        assert_eq!(full[2 * 5 + 4], C64::ONE);
        assert_eq!(full.iter().map(|a| a.norm_sqr()).sum::<f64>(), 1.0);
    }

    #[test]
    fn gram_of_a_2x2_tile_family_is_four_times_identity() {
        let tile = Tile::new(vec![vec![0, 1], vec![0, 1]]);
        let states = tile_dft_states(&tile, &[2, 2]);
        assert_eq!(states.len(), 4);
        for i in 0..4 {
            for j in 0..4 {
                let ip = inner_product(&states[i], &states[j]).unwrap();
                let expected = if i == j { 4.0 } else { 0.0 };
                assert!((ip - C64::new(expected, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn disjoint_tiles_give_orthogonal_states() {
        let a = Tile::new(vec![vec![0], vec![0, 2]]);
        let b = Tile::new(vec![vec![1, 2], vec![1]]);
        for x in tile_dft_states(&a, &[3, 3]) {
            for y in tile_dft_states(&b, &[3, 3]) {
                assert!(inner_product(&x, &y).unwrap().norm() < 1e-12);
            }
        }
    }

    #[test]
    fn punctured_set_size_identity() {
        let s = TileStructure::new(
            vec![2, 2],
            vec![
                Tile::new(vec![vec![0], vec![0, 1]]),
                Tile::new(vec![vec![1], vec![0]]),
                Tile::new(vec![vec![1], vec![1]]),
            ],
        );
        let set = punctured_tile_set(&s).unwrap();
        assert_eq!(set.len(), 4 - 3 + 1);
        assert!(set.gram_check(1e-9).ok);
    }

    #[test]
    fn invalid_structure_is_refused() {
        let s = TileStructure::new(vec![2, 2], vec![Tile::new(vec![vec![0], vec![0, 1]])]);
        assert!(punctured_tile_set(&s).is_err());
    }
}
