//! Dense linear algebra over F_p: row reduction and kernels.

use crate::field::FieldConfig;

/// Row-major dense matrix over F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldConfig,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(field: FieldConfig, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(field: FieldConfig, cols: usize, rows: Vec<Vec<u32>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix row");
            data.extend(r.into_iter().map(|c| c % field.p()));
        }
        Matrix {
            field,
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn push_row(&mut self, row: &[u32]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    /// Reduced row echelon form in place. Columns are scanned left to right
    /// and the pivot is the first row (from the current one down) with a
    /// nonzero entry. Returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, row * self.cols + j);
                }
            }
            let inv = f.inv(self.get(row, col)).unwrap();
            for j in col..self.cols {
                let v = f.mul(self.get(row, j), inv);
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col);
                if factor == 0 {
                    continue;
                }
                for j in col..self.cols {
                    let v = f.sub(self.get(r, j), f.mul(factor, self.get(row, j)));
                    self.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Kernel basis, one vector per free column in increasing order; the
    /// vector for free column `c` has a 1 at `c` and 0 at every other free
    /// column.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0u32; self.cols];
                v[free] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(r, free));
                }
                v
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(0, |acc, j| f.add(acc, f.mul(self.get(i, j), v[j])))
            })
            .collect()
    }
}

/// The first kernel basis vector that is nonzero on `mask`, or on any
/// coordinate when no mask is given.
pub fn first_kernel_vector(m: &Matrix, mask: Option<&[bool]>) -> Option<Vec<u32>> {
    m.kernel_basis().into_iter().find(|v| match mask {
        None => true,
        Some(mask) => v.iter().zip(mask).any(|(&c, &on)| on && c != 0),
    })
}
