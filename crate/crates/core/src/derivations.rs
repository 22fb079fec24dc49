//! Superderivations: the Leibniz system solved per bidegree shift, the image
//! of ad L′, and transitivity of L′.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::LPrimeModel;
use crate::liesuper::{AlgebraModel, Grading, Shift};
use crate::linalg::{Echelon, Matrix, Rational, SparseVec, Subspace};

/// ℤ₂-parity of a linear map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MapParity {
    Even,
    Odd,
    Mixed,
}

impl MapParity {
    pub fn from_bit(p: u8) -> Self {
        if p.is_multiple_of(2) {
            MapParity::Even
        } else {
            MapParity::Odd
        }
    }

    pub fn bit(self) -> Option<u8> {
        match self {
            MapParity::Even => Some(0),
            MapParity::Odd => Some(1),
            MapParity::Mixed => None,
        }
    }
}

/// Endomorphism of L; column `j` is the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndMap {
    matrix: Matrix,
    parity: MapParity,
}

impl EndMap {
    /// Wraps a square matrix, classifying its parity against `a`. The zero
    /// map is even.
    pub fn new(matrix: Matrix, a: &AlgebraModel) -> Result<Self> {
        if matrix.nrows() != a.dim() || matrix.ncols() != a.dim() {
            return Err(Error::DimensionMismatch { expected: a.dim(), found: matrix.nrows() });
        }
        let mut seen = [false; 2];
        for i in 0..matrix.nrows() {
            for j in matrix.row(i).indices() {
                seen[((a.parity(i) + a.parity(j)) % 2) as usize] = true;
            }
        }
        let parity = match seen {
            [_, false] => MapParity::Even,
            [false, true] => MapParity::Odd,
            [true, true] => MapParity::Mixed,
        };
        Ok(Self { matrix, parity })
    }

    /// Map from flat row-major coordinates `i * dim + j`.
    pub fn from_flat(v: &SparseVec, a: &AlgebraModel) -> Result<Self> {
        let d = a.dim();
        if v.max_index().is_some_and(|k| k >= d * d) {
            return Err(Error::DimensionMismatch { expected: d * d, found: v.max_index().unwrap() + 1 });
        }
        Self::new(Matrix::from_flat(d, d, v), a)
    }

    pub fn identity(a: &AlgebraModel) -> Self {
        Self { matrix: Matrix::identity(a.dim()), parity: MapParity::Even }
    }

    pub fn zero(a: &AlgebraModel) -> Self {
        Self { matrix: Matrix::zeros(a.dim(), a.dim()), parity: MapParity::Even }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn parity(&self) -> MapParity {
        self.parity
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        self.matrix.mul_vec(x)
    }

    pub fn to_flat(&self) -> SparseVec {
        self.matrix.to_flat()
    }
}

fn sign(p: u8) -> Rational {
    if p.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Checks `D[x,y] = [Dx,y] + (−1)^{|D||x|}[x,Dy]` on all basis pairs.
pub fn is_superderivation(d: &EndMap, a: &AlgebraModel) -> Result<bool> {
    let p = d.parity().bit().ok_or_else(|| Error::Parity("map has mixed parity".into()))?;
    if d.dim() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: d.dim() });
    }
    let t = d.matrix().transpose();
    let col = |j: usize| t.row(j);
    let dim = a.dim();
    Ok((0..dim).into_par_iter().all(|x| {
        (x..dim).all(|y| {
            let lhs = d.apply(a.bracket_basis(x, y));
            let r1 = a.bracket(col(x), &SparseVec::unit(y));
            let r2 = a.bracket(&SparseVec::unit(x), col(y));
            lhs == r1.add_scaled(&r2, &sign(p * a.parity(x)))
        })
    }))
}

/// Unknowns of one shift block: matrix entries `(i, j)` in row-major order.
pub(crate) struct Block {
    /// For each column `j`: the `(i, local index)` pairs in this block.
    pub(crate) targets: Vec<Vec<(usize, usize)>>,
}

impl Block {
    pub(crate) fn new(dim: usize, entries: &[(usize, usize)]) -> Self {
        let mut targets = vec![Vec::new(); dim];
        for (k, &(i, j)) in entries.iter().enumerate() {
            targets[j].push((i, k));
        }
        Self { targets }
    }
}

/// Adds the Leibniz equations of pair `(x, y)` restricted to a block.
fn leibniz_rows(a: &AlgebraModel, b: &Block, p: u8, x: usize, y: usize) -> Vec<SparseVec> {
    let mut rows: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
    for (k, c) in a.bracket_basis(x, y).iter() {
        for &(i, u) in &b.targets[k] {
            rows.entry(i).or_default().push((u, c.clone()));
        }
    }
    for &(i, u) in &b.targets[x] {
        for (m, c) in a.bracket_basis(i, y).iter() {
            rows.entry(m).or_default().push((u, -c));
        }
    }
    let s = sign(p * a.parity(x));
    for &(i, u) in &b.targets[y] {
        for (m, c) in a.bracket_basis(x, i).iter() {
            rows.entry(m).or_default().push((u, -(c * &s)));
        }
    }
    rows.into_values().map(SparseVec::from_entries).filter(|r| !r.is_zero()).collect()
}

fn block_kernel(a: &AlgebraModel, p: u8, entries: &[(usize, usize)]) -> Subspace {
    let dim = a.dim();
    let b = Block::new(dim, entries);
    let mut ech = Echelon::new(entries.len());
    'outer: for x in 0..dim {
        for y in x..dim {
            let touched = !b.targets[x].is_empty()
                || !b.targets[y].is_empty()
                || a.bracket_basis(x, y).indices().any(|k| !b.targets[k].is_empty());
            if !touched {
                continue;
            }
            for r in leibniz_rows(a, &b, p, x, y) {
                ech.insert(&r);
                if ech.is_full() {
                    break 'outer;
                }
            }
        }
    }
    ech.into_subspace().annihilator()
}

pub(crate) fn flat_indices(dim: usize, entries: &[(usize, usize)]) -> Vec<usize> {
    entries.iter().map(|&(i, j)| i * dim + j).collect()
}

/// Parity-`p` entries of each shift block.
fn parity_blocks(a: &AlgebraModel, g: &Grading, p: u8) -> Vec<(Shift, Vec<(usize, usize)>)> {
    g.shift_blocks()
        .into_iter()
        .map(|(s, es)| {
            let es: Vec<_> = es.into_iter().filter(|&(i, j)| (a.parity(i) + a.parity(j)) % 2 == p).collect();
            (s, es)
        })
        .filter(|(_, es)| !es.is_empty())
        .collect()
}

/// Parity-`p` superderivations of `a` as a subspace of End(L) in flat
/// coordinates `i * dim + j`, solved independently on each bidegree shift.
pub fn derivation_space(a: &AlgebraModel, p: u8) -> Subspace {
    let dim = a.dim();
    let g = a.grading();
    let blocks = parity_blocks(a, &g, p);
    let pieces: Vec<Subspace> =
        blocks.par_iter().map(|(_, es)| block_kernel(a, p, es).embed(dim * dim, &flat_indices(dim, es))).collect();
    Subspace::from_disjoint_blocks(dim * dim, pieces)
}

/// Even plus odd superderivations.
pub fn derivation_space_all(a: &AlgebraModel) -> Subspace {
    let dim = a.dim();
    Subspace::from_disjoint_blocks(dim * dim, vec![derivation_space(a, 0), derivation_space(a, 1)])
}

/// Reference path: one Leibniz system over every parity-`p` entry, no
/// bigrading.
pub fn derivation_space_whole(a: &AlgebraModel, p: u8) -> Subspace {
    let dim = a.dim();
    let entries: Vec<(usize, usize)> = (0..dim)
        .flat_map(|i| (0..dim).map(move |j| (i, j)))
        .filter(|&(i, j)| (a.parity(i) + a.parity(j)) % 2 == p)
        .collect();
    block_kernel(a, p, &entries).embed(dim * dim, &flat_indices(dim, &entries))
}

/// span{ad u : u ∈ L′ basis} in flat coordinates.
pub fn ad_image(p: &LPrimeModel) -> Subspace {
    let d = p.dim_l();
    let mats: Vec<SparseVec> =
        (0..p.dim_lprime()).into_par_iter().map(|u| p.ad_matrix(&SparseVec::unit(u)).to_flat()).collect();
    Subspace::span(d * d, &mats)
}

/// Outcome of the transitivity test; `witness` is a nonzero element of
/// nonnegative degree killing L′₋₁ when one exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transitivity {
    pub transitive: bool,
    pub witness: Option<SparseVec>,
}

/// Whether `a ∈ ⊕_{i≥0} L′ᵢ` and `[a, L′₋₁] = 0` force `a = 0`.
pub fn transitivity_check(p: &LPrimeModel) -> Transitivity {
    let e = p.ext();
    let dim = e.dim();
    let minus: Vec<usize> = e.degree_component(-1);
    let nonneg: Vec<usize> = (0..dim).filter(|&i| e.degree(i) >= 0).collect();
    // column c of the map a ↦ ([a, v])_v, as one long row per basis vector
    let rows: Vec<SparseVec> = nonneg
        .iter()
        .map(|&c| {
            SparseVec::from_entries(minus.iter().enumerate().flat_map(|(k, &v)| {
                e.bracket_basis(c, v).iter().map(move |(m, x)| (k * dim + m, x.clone())).collect::<Vec<_>>()
            }))
        })
        .collect();
    let m = Matrix::from_rows(minus.len() * dim, rows).expect("indices in range");
    let kernel = m.transpose().kernel();
    match kernel.basis().first() {
        None => Transitivity { transitive: true, witness: None },
        Some(w) => Transitivity { transitive: false, witness: Some(w.remap(|k| Some(nonneg[k]))) },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivationReport {
    pub family: String,
    pub n: usize,
    #[serde(rename = "dim_L")]
    pub dim_l: usize,
    #[serde(rename = "dim_Lprime")]
    pub dim_lprime: usize,
    #[serde(rename = "dim_Der")]
    pub dim_der: usize,
    pub lemma_der_holds: bool,
    pub transitive: bool,
}

/// Computes Der L both ways and compares them as subspaces.
pub fn derivation_report(p: &LPrimeModel) -> DerivationReport {
    let a = p.base();
    let (der, (img, tr)) = rayon::join(|| derivation_space_all(a), || (ad_image(p), transitivity_check(p)));
    DerivationReport {
        family: a.family().to_string(),
        n: a.n(),
        dim_l: a.dim(),
        dim_lprime: p.dim_lprime(),
        dim_der: der.dim(),
        lemma_der_holds: der == img && img.dim() == p.dim_lprime(),
        transitive: tr.transitive,
    }
}
