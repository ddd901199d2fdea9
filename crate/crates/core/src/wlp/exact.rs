//! Rank over the rationals by fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::MultiplicationMatrix;

/// Rank of an integer matrix given row-major. Intermediate entries are
/// minors of the input, so every division is exact.
pub fn rank_integer(rows: Vec<Vec<BigInt>>) -> usize {
    let mut a = rows;
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot_row) = (rank..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot_row);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot = &top[rank];
        for row in rest.iter_mut() {
            let factor = row[c].clone();
            for j in (c + 1)..ncols {
                let v = &pivot[c] * &row[j] - &factor * &pivot[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = top[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Characteristic-zero rank of the 0/1 matrix.
pub fn rank_exact(m: &MultiplicationMatrix) -> usize {
    // eliminate along the shorter side
    let dense = m.to_dense();
    let (nr, nc) = (m.nrows(), m.ncols());
    let rows: Vec<Vec<BigInt>> = if nc <= nr {
        dense
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect()
    } else {
        (0..nc)
            .map(|j| (0..nr).map(|i| BigInt::from(dense[i][j])).collect())
            .collect()
    };
    rank_integer(rows)
}
