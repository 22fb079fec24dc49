//! Incremental row echelon forms and subspaces in reduced row-echelon form.

use super::{Rational, SparseVec};
use crate::error::Error;

/// Row echelon form built one row at a time.
///
/// Every stored row has leading coefficient 1 at its pivot and no entries
/// in columns that were already pivots when it was inserted. The form is
/// not reduced until [`Echelon::into_subspace`].
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Self { ncols, rows: Vec::new(), pivot_row: vec![None; ncols] }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Eliminates every pivot column from `v`.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        let mut pos = 0;
        while let Some((col, c)) = v.entry_at(pos) {
            match self.pivot_row[col] {
                // Pivot rows only have entries at columns >= their pivot, so
                // positions before `pos` are untouched.
                Some(r) => {
                    let c = -c;
                    v = v.add_scaled(&self.rows[r], &c);
                }
                None => pos += 1,
            }
        }
        v
    }

    /// Inserts a row; returns `true` if it increased the rank.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        debug_assert!(v.max_index().is_none_or(|i| i < self.ncols));
        if self.is_full() {
            return false;
        }
        let r = self.reduce(v);
        let Some((col, lead)) = r.leading() else {
            return false;
        };
        let inv = lead.recip().expect("nonzero leading entry");
        let r = r.scale(&inv);
        self.pivot_row[col] = Some(self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Back-substitutes to the unique reduced row-echelon basis.
    pub fn into_subspace(self) -> Subspace {
        let Echelon { ncols, rows, .. } = self;
        let mut rows: Vec<SparseVec> = rows;
        rows.sort_by_key(|r| r.leading().map(|(c, _)| c));
        let mut pivot_row = vec![None; ncols];
        for (k, r) in rows.iter().enumerate() {
            pivot_row[r.leading().unwrap().0] = Some(k);
        }
        for k in (0..rows.len()).rev() {
            let mut v = rows[k].clone();
            let mut pos = 1;
            while let Some((col, c)) = v.entry_at(pos) {
                match pivot_row[col] {
                    Some(r) if r != k => {
                        let c = -c;
                        v = v.add_scaled(&rows[r], &c);
                    }
                    _ => pos += 1,
                }
            }
            rows[k] = v;
        }
        Subspace { ambient_dim: ncols, basis: rows }
    }
}

/// Subspace of ℚ^d stored by its reduced row-echelon basis, which is unique;
/// two subspaces are equal exactly when their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: (0..ambient_dim).map(SparseVec::unit).collect() }
    }

    /// Span of the given vectors.
    pub fn span<'a, I: IntoIterator<Item = &'a SparseVec>>(ambient_dim: usize, vectors: I) -> Self {
        let mut e = Echelon::new(ambient_dim);
        for v in vectors {
            e.insert(v);
        }
        e.into_subspace()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|r| r.leading().unwrap().0).collect()
    }

    fn check_len(&self, v: &SparseVec) -> Result<(), Error> {
        match v.max_index() {
            Some(i) if i >= self.ambient_dim => {
                Err(Error::DimensionMismatch { expected: self.ambient_dim, found: i + 1 })
            }
            _ => Ok(()),
        }
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Rational>> {
        let mut rest = v.clone();
        let mut coords = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            let (p, _) = b.leading().unwrap();
            let c = rest.get(p);
            if !c.is_zero() {
                rest = rest.add_scaled(b, &-&c);
            }
            coords.push(c);
        }
        rest.is_zero().then_some(coords)
    }

    /// Membership test. Vectors longer than the ambient space are rejected.
    pub fn member(&self, v: &SparseVec) -> Result<bool, Error> {
        self.check_len(v)?;
        Ok(self.coordinates(v).is_some())
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|b| other.contains(b))
    }

    /// The annihilator `{y : <b, y> = 0 for all basis vectors b}`.
    pub fn annihilator(&self) -> Subspace {
        let pivots = self.pivots();
        let mut is_pivot = vec![false; self.ambient_dim];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut vecs = Vec::new();
        for f in (0..self.ambient_dim).filter(|&f| !is_pivot[f]) {
            let mut entries = vec![(f, Rational::one())];
            for (b, &p) in self.basis.iter().zip(&pivots) {
                let c = b.get(f);
                if !c.is_zero() {
                    entries.push((p, -c));
                }
            }
            vecs.push(SparseVec::from_entries(entries));
        }
        Subspace::span(self.ambient_dim, &vecs)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.same_ambient(other)?;
        Ok(Subspace::span(self.ambient_dim, self.basis.iter().chain(&other.basis)))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.same_ambient(other)?;
        let a = self.annihilator();
        let b = other.annihilator();
        Ok(a.sum(&b)?.annihilator())
    }

    fn same_ambient(&self, other: &Subspace) -> Result<(), Error> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: other.ambient_dim });
        }
        Ok(())
    }

    /// Direct sum of subspaces with pairwise disjoint supports, e.g. the
    /// per-block pieces of a graded space. Rows are merged and re-sorted;
    /// no elimination is needed because supports never overlap.
    pub fn from_disjoint_blocks(ambient_dim: usize, blocks: Vec<Subspace>) -> Self {
        let mut rows: Vec<SparseVec> = blocks.into_iter().flat_map(|b| b.basis).collect();
        rows.sort_by_key(|r| r.leading().map(|(c, _)| c));
        debug_assert!(rows.windows(2).all(|w| w[0].leading().unwrap().0 < w[1].leading().unwrap().0));
        Subspace { ambient_dim, basis: rows }
    }

    /// Embeds a subspace of a coordinate block into a larger space through
    /// the index map `local -> global`. The map must be strictly increasing
    /// for the result to stay in reduced echelon form.
    pub fn embed(&self, ambient_dim: usize, global: &[usize]) -> Subspace {
        debug_assert!(global.windows(2).all(|w| w[0] < w[1]));
        let basis = self.basis.iter().map(|b| b.remap(|i| Some(global[i]))).collect();
        Subspace { ambient_dim, basis }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> SparseVec {
        SparseVec::from_dense(&xs.iter().map(|&x| Rational::from_integer(x)).collect::<Vec<_>>())
    }

    #[test]
    fn rref_is_canonical() {
        let a = Subspace::span(3, &[v(&[1, 2, 3]), v(&[0, 1, 1])]);
        let b = Subspace::span(3, &[v(&[1, 3, 4]), v(&[2, 4, 6])]);
        assert_eq!(a, b);
        assert_eq!(a.basis()[0], v(&[1, 0, 1]));
    }

    #[test]
    fn membership() {
        let s = Subspace::span(2, &[v(&[1, 0])]);
        assert!(s.contains(&v(&[0, 0])));
        assert!(s.contains(&v(&[1, 0])));
        assert!(!s.contains(&v(&[0, 1])));
        assert!(s.member(&SparseVec::unit(5)).is_err());
    }

    #[test]
    fn intersect_examples() {
        let full = Subspace::full(3);
        let b = Subspace::span(3, &[v(&[1, 1, 0])]);
        assert_eq!(full.intersect(&b).unwrap(), b);
        assert_eq!(b.intersect(&b).unwrap(), b);
        let l1 = Subspace::span(2, &[v(&[1, 0])]);
        let l2 = Subspace::span(2, &[v(&[1, 1])]);
        assert_eq!(l1.intersect(&l2).unwrap().dim(), 0);
        assert!(l1.intersect(&Subspace::full(3)).is_err());
    }

    #[test]
    fn annihilator_dimension() {
        let s = Subspace::span(4, &[v(&[1, 2, 0, 1]), v(&[0, 0, 1, 1])]);
        let a = s.annihilator();
        assert_eq!(a.dim(), 2);
        for y in a.basis() {
            for b in s.basis() {
                assert!(y.dot(b).is_zero());
            }
        }
        assert_eq!(a.annihilator(), s);
    }
}
