use super::AxisIndexSet;
use std::collections::HashSet;

/// Hull test: is this cell set exactly the Cartesian product of its per-axis
/// projections? Returns the per-axis hull if so.
///
/// Every checker in this crate reduces to this test in one form or another.
pub fn is_combinatorial_rectangle(
    cells: &[Vec<usize>],
    dims: &[usize],
) -> Option<Vec<AxisIndexSet>> {
    if cells.is_empty() {
        return None;
    }
    let arity = dims.len();
    let mut projections: Vec<Vec<usize>> = vec![Vec::new(); arity];
    let mut seen: HashSet<&[usize]> = HashSet::with_capacity(cells.len());
    for cell in cells {
        if cell.len() != arity || cell.iter().zip(dims).any(|(&x, &d)| x >= d) {
            return None;
        }
        if !seen.insert(cell.as_slice()) {
            return None;
        }
        for (axis, &x) in cell.iter().enumerate() {
            projections[axis].push(x);
        }
    }
    let hull: Vec<AxisIndexSet> = projections.into_iter().map(AxisIndexSet::new).collect();
    let product: usize = hull.iter().map(|a| a.len()).product();
    if product == cells.len() {
        Some(hull)
    } else {
        None
    }
}
