use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::AbelianError;

/// Dense integer matrix, row-major, arbitrary-precision entries.
///
/// All arithmetic is exact; there is no overflow path. Matrices with zero
/// rows or zero columns are legal and show up routinely as boundary
/// operators of small complexes.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from integer rows. All rows must have equal length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| BigInt::from(x)))
            .collect();
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn from_bigint_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows.into_iter().flatten().collect();
        IntMatrix { rows: r, cols: c, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(ambient: usize, columns: &[Vec<BigInt>]) -> Result<Self, AbelianError> {
        for (j, col) in columns.iter().enumerate() {
            if col.len() != ambient {
                return Err(AbelianError::DimensionMismatch(format!(
                    "column {j} has length {} but the ambient rank is {ambient}",
                    col.len()
                )));
            }
        }
        let mut m = IntMatrix::zeros(ambient, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, entry) in col.iter().enumerate() {
                m.set(i, j, entry.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = value;
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, AbelianError> {
        if self.cols != other.rows {
            return Err(AbelianError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        // Loop order skips work for every zero on the right, which is the
        // common case here (boundary operators are very sparse).
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for k in 0..other.rows {
            for j in 0..other.cols {
                let b = other.at(k, j);
                if b.is_zero() {
                    continue;
                }
                for i in 0..self.rows {
                    let a = self.at(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>, AbelianError> {
        if self.cols != v.len() {
            return Err(AbelianError::DimensionMismatch(format!(
                "cannot apply {}x{} to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![BigInt::zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if !a.is_zero() && !v[j].is_zero() {
                    out[i] += a * &v[j];
                }
            }
        }
        Ok(out)
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let idx = i * self.cols + c;
            if !self.data[idx].is_zero() {
                let neg = -std::mem::take(&mut self.data[idx]);
                self.data[idx] = neg;
            }
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            let idx = r * self.cols + j;
            if !self.data[idx].is_zero() {
                let neg = -std::mem::take(&mut self.data[idx]);
                self.data[idx] = neg;
            }
        }
    }

    /// row[target] += k * row[source]
    pub fn row_add(&mut self, target: usize, source: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        assert_ne!(target, source);
        for c in 0..self.cols {
            let s = self.at(source, c);
            if s.is_zero() {
                continue;
            }
            let add = k * s;
            let idx = target * self.cols + c;
            self.data[idx] += add;
        }
    }

    /// col[target] += k * col[source]
    pub fn col_add(&mut self, target: usize, source: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        assert_ne!(target, source);
        for r in 0..self.rows {
            let s = self.at(r, source);
            if s.is_zero() {
                continue;
            }
            let add = k * s;
            let idx = r * self.cols + target;
            self.data[idx] += add;
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt, AbelianError> {
        if self.rows != self.cols {
            return Err(AbelianError::DimensionMismatch(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                let swap = (k + 1..n).find(|&i| !m.at(i, k).is_zero());
                match swap {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                    // Bareiss: division by the previous pivot is exact.
                    m.set(i, j, &num / &prev);
                }
            }
            for i in k + 1..n {
                m.set(i, k, BigInt::zero());
            }
            prev = m.at(k, k).clone();
        }
        Ok(sign * m.at(n - 1, n - 1))
    }

    /// Largest absolute value among the entries, zero for empty matrices.
    pub fn max_abs(&self) -> BigInt {
        self.data
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_identity() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let id = IntMatrix::identity(2);
        assert_eq!(a.mul(&id).unwrap(), a);
        assert_eq!(id.mul(&a).unwrap(), a);
    }

    #[test]
    fn determinant_bareiss() {
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(a.determinant().unwrap(), BigInt::from(-8));
        let b = IntMatrix::from_rows(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]);
        assert_eq!(b.determinant().unwrap(), BigInt::zero());
        let c = IntMatrix::from_rows(&[vec![3, 1, 0], vec![0, 2, 5], vec![1, 0, 4]]);
        // cofactor expansion by hand: 3*(8-0) - 1*(0-5) + 0 = 29
        assert_eq!(c.determinant().unwrap(), BigInt::from(29));
    }

    #[test]
    fn determinant_empty_is_one() {
        assert_eq!(IntMatrix::zeros(0, 0).determinant().unwrap(), BigInt::one());
    }

    #[test]
    fn row_and_col_ops() {
        let mut a = IntMatrix::from_rows(&[vec![1, 0], vec![0, 1]]);
        a.row_add(1, 0, &BigInt::from(3));
        assert_eq!(a, IntMatrix::from_rows(&[vec![1, 0], vec![3, 1]]));
        a.col_add(0, 1, &BigInt::from(-2));
        assert_eq!(a, IntMatrix::from_rows(&[vec![1, 0], vec![1, 1]]));
    }

    #[test]
    fn empty_shapes_are_legal() {
        let a = IntMatrix::zeros(2, 0);
        let b = IntMatrix::zeros(0, 3);
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.rows(), 2);
        assert_eq!(prod.cols(), 3);
        assert!(prod.is_zero());
    }
}
