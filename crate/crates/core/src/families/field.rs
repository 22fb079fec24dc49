use std::fmt;

use crate::error::{Error, Result};
use crate::exterior::{ExtElem, Monomial};
use crate::liesuper::FieldTerm;
use crate::linalg::{Rational, SparseVec};

/// Coordinates on W(n): basis `f∂ⱼ` ordered by monomial (degree, then
/// lexicographic index list) and then by `j`.
#[derive(Clone, Debug)]
pub struct WIndex {
    n: usize,
    monos: Vec<Monomial>,
    pos: Vec<usize>,
}

impl WIndex {
    pub fn new(n: usize) -> Self {
        let monos = Monomial::all(n);
        let mut pos = vec![0; monos.len()];
        for (k, m) in monos.iter().enumerate() {
            pos[m.bits() as usize] = k;
        }
        Self { n, monos, pos }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n * self.monos.len()
    }

    /// Index of `f∂ⱼ` (`j` is 1-based).
    pub fn index(&self, mono: Monomial, j: usize) -> usize {
        self.pos[mono.bits() as usize] * self.n + (j - 1)
    }

    pub fn term(&self, idx: usize) -> (Monomial, usize) {
        (self.monos[idx / self.n], idx % self.n + 1)
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monos
    }
}

/// Vector field `Σ fⱼ∂ⱼ` with `fⱼ ∈ Λ(n)`, i.e. an element of W(n).
#[derive(Clone, PartialEq, Eq)]
pub struct VectorField {
    comps: Vec<ExtElem>,
}

fn sign(p: u8) -> Rational {
    if p.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

impl VectorField {
    pub fn zero(n: usize) -> Self {
        Self { comps: vec![ExtElem::zero(n); n] }
    }

    /// `c·f∂ⱼ`.
    pub fn term(n: usize, mono: Monomial, j: usize, c: Rational) -> Self {
        let mut v = Self::zero(n);
        v.comps[j - 1] = ExtElem::monomial(n, mono, c);
        v
    }

    pub fn from_terms(n: usize, terms: &[FieldTerm]) -> Result<Self> {
        let mut v = Self::zero(n);
        for t in terms {
            if t.j == 0 || t.j > n {
                return Err(Error::IndexOutOfRange { index: t.j, n });
            }
            if t.mono.indices().any(|i| i > n) {
                return Err(Error::Parse(format!("monomial {} outside Λ({n})", t.mono)));
            }
            v.comps[t.j - 1].add_term(t.mono, &t.coeff);
        }
        Ok(v)
    }

    pub fn n(&self) -> usize {
        self.comps.len()
    }

    /// Coefficient `fⱼ` (1-based `j`).
    pub fn component(&self, j: usize) -> &ExtElem {
        &self.comps[j - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(ExtElem::is_zero)
    }

    /// Terms `(c, f, j)` in W-coordinate order.
    pub fn terms(&self, idx: &WIndex) -> Vec<FieldTerm> {
        self.to_w_coords(idx)
            .iter()
            .map(|(k, c)| {
                let (mono, j) = idx.term(k);
                FieldTerm { coeff: c.clone(), mono, j }
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { comps: self.comps.iter().map(|a| a.scale(c)).collect() }
    }

    /// `D(g) = Σ fⱼ ∂ⱼ(g)`.
    pub fn apply(&self, g: &ExtElem) -> ExtElem {
        let mut out = ExtElem::zero(self.n());
        for (j, f) in self.comps.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let dg = g.partial_unchecked(j + 1);
            if !dg.is_zero() {
                out = out.add(&f.mul(&dg));
            }
        }
        out
    }

    /// Parity of `f∂ⱼ` is `|f| + 1`. `None` for mixed fields; zero is even.
    pub fn parity(&self) -> Option<u8> {
        let mut p = None;
        for f in &self.comps {
            for (m, _) in f.terms() {
                let q = (m.parity() + 1) % 2;
                match p {
                    None => p = Some(q),
                    Some(prev) if prev != q => return None,
                    _ => {}
                }
            }
        }
        Some(p.unwrap_or(0))
    }

    /// Splits into (even, odd) parts.
    pub fn parity_parts(&self) -> [VectorField; 2] {
        let n = self.n();
        let mut parts = [Self::zero(n), Self::zero(n)];
        for (j, f) in self.comps.iter().enumerate() {
            for (m, c) in f.terms() {
                parts[((m.parity() + 1) % 2) as usize].comps[j].add_term(m, c);
            }
        }
        parts
    }

    fn bracket_homogeneous(&self, p: u8, other: &Self, q: u8) -> Self {
        let s = sign(p * q);
        let comps =
            (0..self.n()).map(|j| self.apply(&other.comps[j]).sub(&other.apply(&self.comps[j]).scale(&s))).collect();
        Self { comps }
    }

    /// Super bracket `[D₁, D₂]_j = D₁(gⱼ) − (−1)^{|D₁||D₂|} D₂(fⱼ)`, extended
    /// bilinearly over parity components.
    pub fn bracket(&self, other: &Self) -> Self {
        let a = self.parity_parts();
        let b = other.parity_parts();
        let mut out = Self::zero(self.n());
        for (p, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (q, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out = out.add(&x.bracket_homogeneous(p as u8, y, q as u8));
                }
            }
        }
        out
    }

    /// `Σ ∂ⱼ(fⱼ)`.
    pub fn divergence(&self) -> ExtElem {
        let mut out = ExtElem::zero(self.n());
        for (j, f) in self.comps.iter().enumerate() {
            out = out.add(&f.partial_unchecked(j + 1));
        }
        out
    }

    pub fn to_w_coords(&self, idx: &WIndex) -> SparseVec {
        SparseVec::from_entries(
            self.comps
                .iter()
                .enumerate()
                .flat_map(|(j, f)| f.terms().map(move |(m, c)| (idx.index(m, j + 1), c.clone())).collect::<Vec<_>>()),
        )
    }

    pub fn from_w_coords(idx: &WIndex, v: &SparseVec) -> Self {
        let mut out = Self::zero(idx.n());
        for (k, c) in v.iter() {
            let (m, j) = idx.term(k);
            out.comps[j - 1].add_term(m, c);
        }
        out
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx = WIndex::new(self.n());
        write!(f, "{}", crate::liesuper::BasisDesc::Combination(self.terms(&idx)))
    }
}

/// The index involution `i ↦ i′` with `r = ⌊n/2⌋`.
pub fn involution(i: usize, n: usize) -> Result<usize> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    let r = n / 2;
    Ok(if i <= r {
        i + r
    } else if i <= 2 * r {
        i - r
    } else {
        i
    })
}

/// `D_H(f) = (−1)^{|f|} Σ ∂ᵢ(f) ∂ᵢ′`.
pub fn ham_field(f: &ExtElem) -> Result<VectorField> {
    let n = f.n();
    let p = f.parity().ok_or_else(|| Error::Parity("D_H needs an input of definite parity".into()))?;
    let mut out = VectorField::zero(n);
    for i in 1..=n {
        let d = f.partial_unchecked(i);
        let ip = involution(i, n)?;
        out.comps[ip - 1] = out.comps[ip - 1].add(&d);
    }
    Ok(out.scale(&sign(p)))
}

/// The grading operator `𝒞 = Σ xᵢ∂ᵢ`.
pub fn grading_field(n: usize) -> VectorField {
    let mut out = VectorField::zero(n);
    for i in 1..=n {
        out.comps[i - 1] = ExtElem::monomial(n, Monomial::generator(i), Rational::one());
    }
    out
}

/// `ξᵢ = x₁⋯xₙ∂ᵢ`.
pub fn xi_field(i: usize, n: usize) -> Result<VectorField> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    Ok(VectorField::term(n, Monomial::top(n), i, Rational::one()))
}
