//! Exact rectangular assignment (Hungarian method with potentials, O(n²m)).

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatrixError {
    #[error("row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("entry ({row}, {col}) = {value} is not a finite non-negative score")]
    BadEntry { row: usize, col: usize, value: f64 },
}

/// Dense row-major matrix of finite, non-negative scores.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl ScoreMatrix {
    pub fn new(rows: &[Vec<f64>]) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(MatrixError::Ragged { row: r, len: row.len(), expected: cols });
            }
            for (c, &value) in row.iter().enumerate() {
                if !value.is_finite() || value < 0.0 {
                    return Err(MatrixError::BadEntry { row: r, col: c, value });
                }
                data.push(value);
            }
        }
        Ok(Self { rows: rows.len(), cols, data })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self, MatrixError> {
        let table: Vec<Vec<f64>> = (0..rows).map(|r| (0..cols).map(|c| f(r, c)).collect()).collect();
        if rows == 0 {
            return Ok(Self { rows: 0, cols, data: Vec::new() });
        }
        Self::new(&table)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    /// `row_to_col[r]` is the matched column of row `r`, if any.
    pub row_to_col: Vec<Option<usize>>,
    pub weight: f64,
}

impl Assignment {
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.row_to_col
            .iter()
            .enumerate()
            .filter_map(|(r, c)| c.map(|c| (r, c)))
    }
}

/// Minimum-cost assignment of every row of an `n × m` cost table (`n ≤ m`)
/// to a distinct column. Returns the column chosen for each row.
pub(crate) fn min_cost_assignment(n: usize, m: usize, cost: impl Fn(usize, usize) -> f64) -> Vec<usize> {
    assert!(n <= m, "min_cost_assignment needs rows <= cols");
    if n == 0 {
        return Vec::new();
    }
    // 1-based potentials; column 0 is a virtual start column
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; m + 1];
    let mut row_of = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];
    for i in 1..=n {
        row_of[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![f64::INFINITY; m + 1];
        let mut used = vec![false; m + 1];
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=m {
                if used[j] {
                    continue;
                }
                let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=m {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut col_of = vec![0usize; n];
    for j in 1..=m {
        if row_of[j] != 0 {
            col_of[row_of[j] - 1] = j - 1;
        }
    }
    col_of
}

/// Exact maximum-weight matching of size `min(rows, cols)`.
pub fn hungarian(matrix: &ScoreMatrix) -> Assignment {
    let (rows, cols) = (matrix.rows(), matrix.cols());
    let mut row_to_col = vec![None; rows];
    if rows == 0 || cols == 0 {
        return Assignment { row_to_col, weight: 0.0 };
    }
    if rows <= cols {
        let cols_of = min_cost_assignment(rows, cols, |r, c| -matrix.get(r, c));
        for (r, c) in cols_of.into_iter().enumerate() {
            row_to_col[r] = Some(c);
        }
    } else {
        let rows_of = min_cost_assignment(cols, rows, |c, r| -matrix.get(r, c));
        for (c, r) in rows_of.into_iter().enumerate() {
            row_to_col[r] = Some(c);
        }
    }
    let weight = row_to_col
        .iter()
        .enumerate()
        .filter_map(|(r, c)| c.map(|c| matrix.get(r, c)))
        .sum();
    Assignment { row_to_col, weight }
}
