//! Dense linear algebra over a [`Scalar`] field.

use crate::scalar::Scalar;

/// A basis of the right nullspace of `matrix` (row-major), by reduction to
/// row echelon form. Entries with `|x| <= tol` are treated as zero in
/// approximate mode. Each basis vector has a 1 in its free coordinate.
pub fn nullspace<S: Scalar>(matrix: &[Vec<S>], tol: f64) -> Vec<Vec<S>> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<S>> = matrix.to_vec();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let pivot = (row..rows)
            .filter(|&r| !m[r][col].is_negligible(tol))
            .max_by(|&a, &b| m[a][col].magnitude().total_cmp(&m[b][col].magnitude()));
        let Some(p) = pivot else { continue };
        m.swap(row, p);
        let inv = S::one() / m[row][col].clone();
        for c in col..cols {
            m[row][c] = m[row][c].clone() * inv.clone();
        }
        for r in 0..rows {
            if r == row || m[r][col].is_exactly_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..cols {
                let sub = factor.clone() * m[row][c].clone();
                m[r][c] = m[r][c].clone() - sub;
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    (0..cols)
        .filter(|c| !pivot_cols.contains(c))
        .map(|free| {
            let mut v = vec![S::zero(); cols];
            v[free] = S::one();
            for (k, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -m[k][free].clone();
            }
            v
        })
        .collect()
}
