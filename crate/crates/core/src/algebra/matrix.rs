use std::ops::{Index, IndexMut};

use super::field::{Fe, Field};
use crate::error::{Error, Result};

/// Dense row-major matrix over a prime field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

/// Solution set `particular + span(kernel)` of a consistent system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Fe>,
    pub kernel: Vec<Vec<Fe>>,
}

impl AffineSolution {
    pub fn is_unique(&self) -> bool {
        self.kernel.is_empty()
    }
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Fe>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::param(format!(
                "{} entries cannot fill a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Fe::ONE;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Fe>>) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::param("ragged rows"));
        }
        let n = rows.len();
        Matrix::new(n, cols, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Fe] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, field: &Field, x: &[Fe]) -> Vec<Fe> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(Fe::ZERO, |acc, (&a, &b)| field.mul_add(acc, a, b))
            })
            .collect()
    }

    pub fn rank(&self, field: &Field) -> usize {
        let mut work = self.data.clone();
        echelon(field, &mut work, self.rows, self.cols, self.cols).len()
    }

    /// Basis of the null space, one vector per free column in increasing
    /// column order.
    pub fn kernel(&self, field: &Field) -> Vec<Vec<Fe>> {
        let mut work = self.data.clone();
        let pivots = echelon(field, &mut work, self.rows, self.cols, self.cols);
        kernel_from_echelon(field, &work, self.cols, self.cols, &pivots)
    }

    /// Solves `A x = b`. `Ok(None)` means the system is inconsistent.
    pub fn solve_affine(&self, field: &Field, b: &[Fe]) -> Result<Option<AffineSolution>> {
        if b.len() != self.rows {
            return Err(Error::param(format!(
                "right-hand side has {} entries, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let width = self.cols + 1;
        let mut work = Vec::with_capacity(self.rows * width);
        for (i, &bi) in b.iter().enumerate() {
            work.extend_from_slice(self.row(i));
            work.push(bi);
        }
        let pivots = echelon(field, &mut work, self.rows, width, self.cols);
        // A nonzero right-hand side left in a zero row means no solution.
        if (pivots.len()..self.rows).any(|r| !work[r * width + self.cols].is_zero()) {
            return Ok(None);
        }
        let mut particular = vec![Fe::ZERO; self.cols];
        for (r, &pc) in pivots.iter().enumerate().rev() {
            let row = &work[r * width..(r + 1) * width];
            let mut acc = row[self.cols];
            for j in pc + 1..self.cols {
                acc = field.sub(acc, field.mul(row[j], particular[j]));
            }
            particular[pc] = acc;
        }
        let kernel = kernel_from_echelon(field, &work, width, self.cols, &pivots);
        Ok(Some(AffineSolution { particular, kernel }))
    }
}

/// In-place row echelon form with unit pivots: leftmost pivot column, first
/// nonzero row at or below the current row. Only the first `pivot_cols`
/// columns may hold pivots. Returns the pivot column of each nonzero row.
fn echelon(field: &Field, data: &mut [Fe], rows: usize, width: usize, pivot_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows {
            break;
        }
        let Some(found) = (r..rows).find(|&i| !data[i * width + c].is_zero()) else {
            continue;
        };
        if found != r {
            for j in c..width {
                data.swap(r * width + j, found * width + j);
            }
        }
        let inv = field.inv(data[r * width + c]).expect("pivot is nonzero");
        for j in c..width {
            data[r * width + j] = field.mul(data[r * width + j], inv);
        }
        let (head, tail) = data.split_at_mut((r + 1) * width);
        let pivot_row = &head[r * width..];
        for row in tail.chunks_exact_mut(width) {
            let factor = row[c];
            if factor.is_zero() {
                continue;
            }
            let neg = field.neg(factor).value();
            for j in c..width {
                row[j] = field.reduce(row[j].value() + neg * pivot_row[j].value());
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn kernel_from_echelon(
    field: &Field,
    data: &[Fe],
    width: usize,
    cols: usize,
    pivots: &[usize],
) -> Vec<Vec<Fe>> {
    let mut is_pivot = vec![false; cols];
    for &pc in pivots {
        is_pivot[pc] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut x = vec![Fe::ZERO; cols];
            x[free] = Fe::ONE;
            for (r, &pc) in pivots.iter().enumerate().rev() {
                let row = &data[r * width..r * width + cols];
                let mut acc = Fe::ZERO;
                for j in pc + 1..cols {
                    acc = field.mul_add(acc, row[j], x[j]);
                }
                x[pc] = field.neg(acc);
            }
            x
        })
        .collect()
}

impl Index<(usize, usize)> for Matrix {
    type Output = Fe;

    fn index(&self, (i, j): (usize, usize)) -> &Fe {
        assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Fe {
        assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(field: &Field, rows: &[&[u64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| field.elem(v)).collect()).collect())
            .unwrap()
    }

    fn v(field: &Field, xs: &[u64]) -> Vec<Fe> {
        xs.iter().map(|&x| field.elem(x)).collect()
    }

    #[test]
    fn identity_system() {
        let f = Field::new(13).unwrap();
        let b = v(&f, &[4, 9, 1]);
        let sol = Matrix::identity(3).solve_affine(&f, &b).unwrap().unwrap();
        assert_eq!(sol.particular, b);
        assert!(sol.is_unique());
    }

    #[test]
    fn zero_system() {
        let f = Field::new(13).unwrap();
        let sol = Matrix::zeros(2, 2).solve_affine(&f, &v(&f, &[0, 0])).unwrap().unwrap();
        assert_eq!(sol.particular, v(&f, &[0, 0]));
        assert_eq!(sol.kernel.len(), 2);
        assert_eq!(Matrix::zeros(2, 2).solve_affine(&f, &v(&f, &[0, 1])).unwrap(), None);
    }

    #[test]
    fn back_substitution() {
        let f = Field::new(5).unwrap();
        let a = mat(&f, &[&[1, 2], &[0, 1]]);
        let sol = a.solve_affine(&f, &v(&f, &[3, 4])).unwrap().unwrap();
        assert_eq!(sol.particular, v(&f, &[0, 4]));
        assert!(sol.kernel.is_empty());
    }

    #[test]
    fn shape_mismatch() {
        let f = Field::new(5).unwrap();
        assert!(matches!(Matrix::zeros(2, 2).solve_affine(&f, &v(&f, &[1])), Err(Error::Parameter(_))));
        assert!(Matrix::new(2, 2, vec![Fe::ZERO; 3]).is_err());
    }

    #[test]
    fn kernel_order_follows_free_columns() {
        let f = Field::new(7).unwrap();
        let a = mat(&f, &[&[1, 0, 2, 3]]);
        let k = a.kernel(&f);
        assert_eq!(k.len(), 3);
        assert_eq!(k[0], v(&f, &[0, 1, 0, 0]));
        assert_eq!(k[1], v(&f, &[5, 0, 1, 0]));
    }

    fn arb_system() -> impl Strategy<Value = (usize, usize, Vec<u64>, Vec<u64>)> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            (
                Just(r),
                Just(c),
                proptest::collection::vec(0u64..7, r * c),
                proptest::collection::vec(0u64..7, r),
            )
        })
    }

    proptest! {
        #[test]
        fn solutions_satisfy_system((r, c, a, b) in arb_system()) {
            let f = Field::new(7).unwrap();
            let m = Matrix::new(r, c, v(&f, &a)).unwrap();
            let b = v(&f, &b);
            let rank = m.rank(&f);
            let kernel = m.kernel(&f);
            prop_assert_eq!(rank + kernel.len(), c);
            for k in &kernel {
                prop_assert!(m.mul_vec(&f, k).iter().all(|x| x.is_zero()));
            }
            if let Some(sol) = m.solve_affine(&f, &b).unwrap() {
                prop_assert_eq!(m.mul_vec(&f, &sol.particular), b);
                prop_assert_eq!(sol.kernel.len(), kernel.len());
            }
        }
    }
}
