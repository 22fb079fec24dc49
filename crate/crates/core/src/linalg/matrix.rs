use super::{Echelon, Rational, SparseVec, Subspace};
use crate::error::Error;

/// Sparse row-major matrix over ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![SparseVec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: n, cols: n, data: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_rows(cols: usize, data: Vec<SparseVec>) -> Result<Self, Error> {
        for r in &data {
            if let Some(i) = r.max_index() {
                if i >= cols {
                    return Err(Error::DimensionMismatch { expected: cols, found: i + 1 });
                }
            }
        }
        Ok(Self { rows: data.len(), cols, data })
    }

    /// Builds a matrix from its columns.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Result<Self, Error> {
        let t = Matrix::from_rows(rows, columns.to_vec())?;
        Ok(t.transpose())
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged dense matrix");
                SparseVec::from_entries(r.iter().enumerate().map(|(j, &x)| (j, Rational::from_integer(x))))
            })
            .collect();
        Self { rows: rows.len(), cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.data[i].get(j)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.nnz()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut cols: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.cols];
        for (i, r) in self.data.iter().enumerate() {
            for (j, c) in r.iter() {
                cols[j].push((i, c.clone()));
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data: cols.into_iter().map(SparseVec::from_entries).collect() }
    }

    /// Column `j` as a sparse vector.
    pub fn column(&self, j: usize) -> SparseVec {
        SparseVec::from_entries(self.data.iter().enumerate().map(|(i, r)| (i, r.get(j))).filter(|(_, c)| !c.is_zero()))
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_entries(self.data.iter().enumerate().map(|(i, r)| (i, r.dot(v))).filter(|(_, c)| !c.is_zero()))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, Error> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let data = self
            .data
            .iter()
            .map(|r| r.iter().fold(SparseVec::new(), |acc, (k, c)| acc.add_scaled(&other.data[k], c)))
            .collect();
        Ok(Matrix { rows: self.rows, cols: other.cols, data })
    }

    pub fn add_scaled(&self, other: &Matrix, c: &Rational) -> Result<Matrix, Error> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, found: other.rows });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add_scaled(b, c)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    /// Row-major flattening `(i, j) -> i * cols + j`.
    pub fn to_flat(&self) -> SparseVec {
        SparseVec::from_entries(
            self.data.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, c)| (i * self.cols + j, c.clone()))),
        )
    }

    pub fn from_flat(rows: usize, cols: usize, v: &SparseVec) -> Matrix {
        let mut data: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); rows];
        for (k, c) in v.iter() {
            data[k / cols].push((k % cols, c.clone()));
        }
        Matrix { rows, cols, data: data.into_iter().map(SparseVec::from_entries).collect() }
    }

    pub fn row_space(&self) -> Subspace {
        Subspace::span(self.cols, &self.data)
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        for r in &self.data {
            e.insert(r);
        }
        e.rank()
    }

    /// `{v : self * v = 0}`.
    pub fn kernel(&self) -> Subspace {
        self.row_space().annihilator()
    }

    /// Some `v` with `self * v = b`, or `None` when `b` is outside the
    /// column space. Free variables are set to zero.
    pub fn solve(&self, b: &SparseVec) -> Result<Option<SparseVec>, Error> {
        if b.max_index().is_some_and(|i| i >= self.rows) {
            return Err(Error::DimensionMismatch { expected: self.rows, found: b.max_index().unwrap() + 1 });
        }
        let aug_col = self.cols;
        let mut e = Echelon::new(self.cols + 1);
        for (i, r) in self.data.iter().enumerate() {
            let bi = b.get(i);
            let row = if bi.is_zero() { r.clone() } else { r.add(&SparseVec::single(aug_col, bi)) };
            e.insert(&row);
        }
        let rref = e.into_subspace();
        let mut x = Vec::new();
        for row in rref.basis() {
            let (p, _) = row.leading().unwrap();
            if p == aug_col {
                return Ok(None);
            }
            let val = row.get(aug_col);
            if !val.is_zero() {
                x.push((p, val));
            }
        }
        Ok(Some(SparseVec::from_entries(x)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(2).rank(), 2);
        assert_eq!(Matrix::zeros(3, 3).rank(), 0);
        assert_eq!(Matrix::from_dense(&[vec![1, 2], vec![2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(3).kernel().dim(), 0);
        assert_eq!(Matrix::zeros(2, 4).kernel(), Subspace::full(4));
        let k = Matrix::from_dense(&[vec![1, 1]]).kernel();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis()[0], SparseVec::from_entries([(0, r(1)), (1, r(-1))]));
    }

    #[test]
    fn solve_examples() {
        let b = SparseVec::from_entries([(0, r(3)), (1, r(-2))]);
        assert_eq!(Matrix::identity(2).solve(&b).unwrap(), Some(b.clone()));
        let m = Matrix::from_dense(&[vec![1], vec![0]]);
        assert_eq!(m.solve(&SparseVec::unit(1)).unwrap(), None);
        let m = Matrix::from_dense(&[vec![1, 1]]);
        assert_eq!(m.solve(&SparseVec::single(0, r(5))).unwrap(), Some(SparseVec::single(0, r(5))));
    }

    #[test]
    fn flat_round_trip() {
        let m = Matrix::from_dense(&[vec![1, 0, 2], vec![0, -3, 0]]);
        assert_eq!(Matrix::from_flat(2, 3, &m.to_flat()), m);
    }
}
