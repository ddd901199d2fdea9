use crate::error::{Error, Result};
use crate::hilbert::GradedBasis;

/// 0/1 matrix of `x_1 + ... + x_n : [A]_d -> [A]_{d+1}` in the standard
/// monomial bases. Columns are source monomials; each column lists the sorted
/// row indices of `x_i * m` that are still standard.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicationMatrix {
    source_degree: usize,
    nrows: usize,
    columns: Vec<Vec<u32>>,
}

impl MultiplicationMatrix {
    /// Arbitrary 0/1 pattern given column-wise; used for rank tests.
    pub fn from_columns(nrows: usize, mut columns: Vec<Vec<u32>>) -> Self {
        for c in &mut columns {
            c.sort_unstable();
            c.dedup();
            assert!(c.iter().all(|&r| (r as usize) < nrows), "row index out of range");
        }
        MultiplicationMatrix {
            source_degree: 0,
            nrows,
            columns,
        }
    }

    /// Row-major dense 0/1 input.
    pub fn from_dense(rows: &[&[u8]]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let columns = (0..ncols)
            .map(|j| {
                (0..nrows)
                    .filter(|&i| rows[i][j] != 0)
                    .map(|i| i as u32)
                    .collect()
            })
            .collect();
        Self::from_columns(nrows, columns)
    }

    pub fn source_degree(&self) -> usize {
        self.source_degree
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<u32>] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let mut out = vec![vec![0u8; self.ncols()]; self.nrows];
        for (j, col) in self.columns.iter().enumerate() {
            for &i in col {
                out[i as usize][j] = 1;
            }
        }
        out
    }
}

pub fn multiplication_matrix(basis: &GradedBasis, d: usize) -> Result<MultiplicationMatrix> {
    if d > basis.top_degree() {
        return Err(Error::DegreeOutOfRange {
            degree: d,
            min: 0,
            max: basis.top_degree(),
        });
    }
    let source = basis.degree(d);
    let target = basis.degree(d + 1);
    let nvars = source.first().map_or(0, |m| m.nvars());
    let columns = source
        .iter()
        .map(|m| {
            let mut rows: Vec<u32> = (0..nvars)
                .filter_map(|i| target.binary_search(&m.times_var(i)).ok())
                .map(|r| r as u32)
                .collect();
            rows.sort_unstable();
            rows
        })
        .collect();
    Ok(MultiplicationMatrix {
        source_degree: d,
        nrows: target.len(),
        columns,
    })
}
