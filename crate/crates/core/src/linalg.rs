//! Small dense complex linear algebra helpers.
//!
//! Everything here operates on plain `Vec<Complex64>` vectors so the rest of
//! the crate stays independent of the backing matrix library. All outputs are
//! deterministic: eigenvectors and orthonormalizations are phase-fixed.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

pub fn dot(x: &[C64], y: &[C64]) -> C64 {
    debug_assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm_sq(x: &[C64]) -> f64 {
    x.iter().map(|a| a.norm_sqr()).sum()
}

pub fn norm(x: &[C64]) -> f64 {
    norm_sq(x).sqrt()
}

pub fn scale(x: &mut [C64], s: C64) {
    for a in x.iter_mut() {
        *a *= s;
    }
}

pub fn normalize(x: &mut [C64]) -> f64 {
    let n = norm(x);
    if n > 0.0 {
        scale(x, C64::new(1.0 / n, 0.0));
    }
    n
}

/// Subtract the projection of `x` onto the unit vector `u`.
pub fn project_out(x: &mut [C64], u: &[C64]) {
    let c = dot(u, x);
    for (a, b) in x.iter_mut().zip(u) {
        *a -= c * b;
    }
}

/// Multiply by a global phase so the largest-magnitude entry is real positive.
/// Ties go to the smallest index, so the result is deterministic.
pub fn fix_phase(x: &mut [C64]) {
    let mut best = 0usize;
    let mut best_mag = 0.0f64;
    for (i, a) in x.iter().enumerate() {
        let m = a.norm_sqr();
        if m > best_mag + 1e-30 {
            best_mag = m;
            best = i;
        }
    }
    let a = x[best];
    let m = a.norm();
    if m > 0.0 {
        scale(x, a.conj() / m);
    }
}

/// Largest eigenvalue and a unit eigenvector of a Hermitian matrix.
pub fn hermitian_top_eigenpair(h: &DMatrix<C64>) -> (f64, Vec<C64>) {
    let eig = h.clone().symmetric_eigen();
    let mut best = 0usize;
    for i in 1..eig.eigenvalues.len() {
        if eig.eigenvalues[i] > eig.eigenvalues[best] {
            best = i;
        }
    }
    let mut v: Vec<C64> = eig.eigenvectors.column(best).iter().copied().collect();
    normalize(&mut v);
    fix_phase(&mut v);
    (eig.eigenvalues[best], v)
}

/// Singular values of the matrix whose rows are `rows`, largest first.
pub fn singular_values(rows: &[Vec<C64>]) -> Vec<f64> {
    if rows.is_empty() {
        return Vec::new();
    }
    let nc = rows[0].len();
    let m = DMatrix::from_fn(rows.len(), nc, |i, j| rows[i][j]);
    let svd = m.svd(false, false);
    let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}

/// Rank with singular values below `rel_tol` times the largest counted as zero.
pub fn numerical_rank(rows: &[Vec<C64>], rel_tol: f64) -> usize {
    let sv = singular_values(rows);
    match sv.first() {
        None => 0,
        Some(&s0) if s0 == 0.0 => 0,
        Some(&s0) => sv.iter().filter(|&&s| s > rel_tol * s0).count(),
    }
}

/// Modified Gram-Schmidt with a second stabilization pass.
///
/// Orthonormalizes `vectors` in order against `against` and against earlier
/// survivors; vectors whose residual norm falls below `tol` are dropped.
pub fn orthonormalize(vectors: Vec<Vec<C64>>, against: &[Vec<C64>], tol: f64) -> Vec<Vec<C64>> {
    let mut out: Vec<Vec<C64>> = Vec::with_capacity(vectors.len());
    for mut v in vectors {
        for _ in 0..2 {
            for u in against {
                project_out(&mut v, u);
            }
            for u in &out {
                project_out(&mut v, u);
            }
        }
        if normalize(&mut v) > tol {
            fix_phase(&mut v);
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn top_eigenpair_of_diagonal() {
        let h = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c(1.0, 0.0),
            c(5.0, 0.0),
            c(3.0, 0.0),
        ]));
        let (val, vec) = hermitian_top_eigenpair(&h);
        assert!((val - 5.0).abs() < 1e-12);
        assert!((vec[1].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rank_thresholding() {
        let rows = vec![
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1e-12, 0.0)],
        ];
        assert_eq!(numerical_rank(&rows, 1e-8), 1);
        assert_eq!(numerical_rank(&rows, 1e-14), 2);
    }

    #[test]
    fn orthonormalize_drops_dependent_vectors() {
        let v1 = vec![c(1.0, 0.0), c(1.0, 0.0)];
        let v2 = vec![c(2.0, 0.0), c(2.0, 0.0)];
        let v3 = vec![c(1.0, 0.0), c(-1.0, 0.0)];
        let basis = orthonormalize(vec![v1, v2, v3], &[], 1e-10);
        assert_eq!(basis.len(), 2);
        assert!(dot(&basis[0], &basis[1]).norm() < 1e-12);
    }
}
