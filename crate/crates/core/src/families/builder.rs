//! Structure constants of a subalgebra of W(n) given by explicit basis fields.

use rayon::prelude::*;

use super::field::{VectorField, WIndex};
use crate::error::{Error, Result};
use crate::liesuper::{normalize_degree, AlgebraModel, BasisDesc, FamilyTag, WeightVec};
use crate::linalg::{Echelon, Rational, SparseVec};

/// Expresses W(n)-vectors in a fixed independent list of basis vectors.
pub(crate) struct Coordinates {
    nw: usize,
    dim: usize,
    // Rows `[b_k | e_k]` in echelon form; all pivots lie in the W part.
    ech: Echelon,
}

impl Coordinates {
    pub(crate) fn new(nw: usize, basis: &[SparseVec]) -> Result<Self> {
        let dim = basis.len();
        let mut plain = Echelon::new(nw);
        let mut ech = Echelon::new(nw + dim);
        for (k, b) in basis.iter().enumerate() {
            if !plain.insert(b) {
                return Err(Error::InvalidModel(format!("basis vector {k} is linearly dependent")));
            }
            ech.insert(&b.add(&SparseVec::unit(nw + k)));
        }
        Ok(Self { nw, dim, ech })
    }

    /// Coordinates of `v`, or `None` when `v` leaves the span.
    pub(crate) fn coords(&self, v: &SparseVec) -> Option<SparseVec> {
        let r = self.ech.reduce(v);
        if r.leading().is_some_and(|(k, _)| k < self.nw) {
            return None;
        }
        let nw = self.nw;
        debug_assert!(r.max_index().is_none_or(|k| k < nw + self.dim));
        Some(r.remap(|k| Some(k - nw)).neg())
    }
}

/// Builds the model spanned by `elems`, computing the full bracket table
/// from vector-field brackets and weights as eigenvalues of the `cartan`
/// elements. Fails if the span is not closed under the bracket or if a
/// basis vector is not homogeneous.
pub(crate) fn assemble(
    family: FamilyTag,
    n: usize,
    elems: Vec<(BasisDesc, VectorField)>,
    cartan: Vec<usize>,
    modulus: Option<i64>,
) -> Result<AlgebraModel> {
    let idx = WIndex::new(n);
    let dim = elems.len();
    let coords: Vec<SparseVec> = elems.iter().map(|(_, f)| f.to_w_coords(&idx)).collect();
    let system = Coordinates::new(idx.dim(), &coords)?;

    let mut parity = Vec::with_capacity(dim);
    let mut degree = Vec::with_capacity(dim);
    for (k, c) in coords.iter().enumerate() {
        let mut pd = c.indices().map(|w| {
            let (m, _) = idx.term(w);
            ((m.parity() + 1) % 2, normalize_degree(m.degree() as i64 - 1, modulus))
        });
        let first = pd.next().ok_or_else(|| Error::InvalidModel(format!("basis vector {k} is zero")))?;
        if pd.any(|x| x != first) {
            return Err(Error::InvalidModel(format!("basis vector {} is not homogeneous", elems[k].0)));
        }
        parity.push(first.0);
        degree.push(first.1);
    }

    let rows: Vec<Vec<SparseVec>> = (0..dim)
        .into_par_iter()
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let b = elems[i].1.bracket(&elems[j].1);
                    system
                        .coords(&b.to_w_coords(&idx))
                        .ok_or_else(|| Error::NotClosed(format!("[{}, {}] leaves the span", elems[i].0, elems[j].0)))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let table: Vec<SparseVec> = rows.into_iter().flatten().collect();

    let mut weight = vec![WeightVec::zero(cartan.len()); dim];
    for (k, &h) in cartan.iter().enumerate() {
        for (i, w) in weight.iter_mut().enumerate() {
            let v = &table[h * dim + i];
            let lambda = v.get(i);
            if *v != SparseVec::single(i, lambda.clone()) {
                return Err(Error::InvalidModel(format!("{} is not a weight vector", elems[i].0)));
            }
            w.0[k] = lambda
                .to_i64()
                .filter(|_| lambda.is_integer())
                .ok_or_else(|| Error::InvalidModel(format!("non-integer weight on {}", elems[i].0)))?;
        }
    }

    let basis = elems.into_iter().map(|(d, _)| d).collect();
    AlgebraModel::from_parts(family, n, basis, table, parity, degree, weight, cartan, modulus)
}

/// Realizes a descriptor as a vector field.
pub(crate) fn realize(n: usize, desc: &BasisDesc) -> Result<VectorField> {
    use crate::exterior::ExtElem;
    match desc {
        BasisDesc::VectorField { .. } | BasisDesc::Combination(_) => {
            VectorField::from_terms(n, &desc.field_terms().unwrap())
        }
        BasisDesc::Ham { mono, negated } => {
            if mono.indices().any(|i| i > n) {
                return Err(Error::Parse(format!("monomial {mono} outside Λ({n})")));
            }
            let s = if *negated { -Rational::one() } else { Rational::one() };
            super::field::ham_field(&ExtElem::monomial(n, *mono, s))
        }
        BasisDesc::GradingElement => Ok(super::field::grading_field(n)),
        BasisDesc::Symbol(s) => {
            Err(Error::InvalidModel(format!("abstract element [{s}] has no vector-field realization")))
        }
    }
}
