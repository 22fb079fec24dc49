//! The exterior superalgebra Λ(n) on odd generators x₁,…,xₙ.
//!
//! A monomial is a subset of the generators stored as a bitmask (bit `k`
//! is x_{k+1}), always read in ascending order. Every sign below is an
//! inversion count against that order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::Rational;

pub const MAX_GENERATORS: usize = 63;

/// Subset of {x₁,…,xₙ}; the empty set is the unit monomial `1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    /// Monomial from 1-based generator indices (order and repeats ignored).
    pub fn from_indices(n: usize, indices: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        for &i in indices {
            check_index(i, n)?;
            bits |= 1 << (i - 1);
        }
        Ok(Monomial(bits))
    }

    pub fn generator(i: usize) -> Self {
        debug_assert!((1..=MAX_GENERATORS).contains(&i));
        Monomial(1 << (i - 1))
    }

    /// x₁x₂⋯xₙ.
    pub fn top(n: usize) -> Self {
        Monomial(if n == 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    pub fn from_bits(bits: u64) -> Self {
        Monomial(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    /// ℤ₂-degree.
    pub fn parity(self) -> u8 {
        (self.degree() % 2) as u8
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> (i - 1) & 1 == 1
    }

    /// 1-based indices in ascending order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |k| bits >> k & 1 == 1).map(|k| k + 1)
    }

    /// All monomials of Λ(n) ordered by degree, then lexicographically by
    /// their ascending index lists.
    pub fn all(n: usize) -> Vec<Monomial> {
        let mut v: Vec<Monomial> = (0..1u64 << n).map(Monomial).collect();
        v.sort_by_key(|m| (m.degree(), m.indices().collect::<Vec<_>>()));
        v
    }
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n || n > MAX_GENERATORS {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    Ok(())
}

/// Product of monomials: `None` when they share a generator, otherwise the
/// sign of sorting `a` followed by `b` together with the union.
pub fn mono_mul(a: Monomial, b: Monomial) -> Option<(i8, Monomial)> {
    if a.0 & b.0 != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut rest = b.0;
    while rest != 0 {
        let k = rest.trailing_zeros();
        // generators of `a` sitting to the right of x_{k+1} in sorted order
        inversions += (a.0 >> k).count_ones();
        rest &= rest - 1;
    }
    let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
    Some((sign, Monomial(a.0 | b.0)))
}

/// ∂ᵢ applied to a monomial: drops xᵢ with sign (−1)^(generators before xᵢ).
pub fn mono_partial(i: usize, m: Monomial) -> Option<(i8, Monomial)> {
    if !m.contains(i) {
        return None;
    }
    let below = (m.0 & ((1u64 << (i - 1)) - 1)).count_ones();
    let sign = if below.is_multiple_of(2) { 1 } else { -1 };
    Some((sign, Monomial(m.0 & !(1u64 << (i - 1)))))
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        for i in self.indices() {
            write!(f, "x{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Monomial {
    type Err = Error;

    /// Parses `"1"` or `"x1x3x4"` (ascending, no repeats).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid monomial `{s}`"));
        if s == "1" {
            return Ok(Monomial::ONE);
        }
        let mut bits = 0u64;
        let mut last = 0usize;
        for part in s.split('x').skip(1) {
            let i: usize = part.parse().map_err(|_| bad())?;
            if i <= last || i > MAX_GENERATORS {
                return Err(bad());
            }
            last = i;
            bits |= 1 << (i - 1);
        }
        if bits == 0 || !s.starts_with('x') {
            return Err(bad());
        }
        Ok(Monomial(bits))
    }
}

/// Element of Λ(n): sparse map monomial → coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtElem {
    n: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl ExtElem {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_GENERATORS, "at most {MAX_GENERATORS} generators");
        Self { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, Monomial::ONE, Rational::one())
    }

    pub fn monomial(n: usize, m: Monomial, c: Rational) -> Self {
        let mut e = Self::zero(n);
        debug_assert!(m.bits() >> n == 0);
        if !c.is_zero() {
            e.terms.insert(m, c);
        }
        e
    }

    /// The generator xᵢ.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        check_index(i, n)?;
        Ok(Self::monomial(n, Monomial::generator(i), Rational::one()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Rational)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &ExtElem) -> ExtElem {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        out
    }

    pub fn sub(&self, other: &ExtElem) -> ExtElem {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> ExtElem {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        ExtElem { n: self.n, terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    /// Parity if every term has the same ℤ₂-degree; `None` for mixed
    /// elements. Zero is reported as even.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.keys().map(|m| m.parity());
        let first = it.next().unwrap_or(0);
        it.all(|p| p == first).then_some(first)
    }

    /// ℤ-degree if homogeneous.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn mul(&self, other: &ExtElem) -> ExtElem {
        assert_eq!(self.n, other.n);
        let mut out = Self::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((s, m)) = mono_mul(*a, *b) {
                    let c = ca * cb;
                    out.add_term(m, &if s < 0 { -c } else { c });
                }
            }
        }
        out
    }

    /// The odd superderivation ∂ᵢ with ∂ᵢ(xⱼ) = δᵢⱼ.
    pub fn partial(&self, i: usize) -> Result<ExtElem> {
        check_index(i, self.n)?;
        Ok(self.partial_unchecked(i))
    }

    pub(crate) fn partial_unchecked(&self, i: usize) -> ExtElem {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            if let Some((s, r)) = mono_partial(i, *m) {
                out.add_term(r, &if s < 0 { -c } else { c.clone() });
            }
        }
        out
    }
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if abs.is_one() {
                write!(f, "{m}")?;
            } else if *m == Monomial::ONE {
                write!(f, "{abs}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Monomial {
        Monomial::generator(i)
    }

    fn mono(n: usize, idx: &[usize]) -> ExtElem {
        ExtElem::monomial(n, Monomial::from_indices(n, idx).unwrap(), Rational::one())
    }

    #[test]
    fn mono_mul_examples() {
        let x12 = Monomial::from_indices(2, &[1, 2]).unwrap();
        assert_eq!(mono_mul(x(1), x(2)), Some((1, x12)));
        assert_eq!(mono_mul(x(2), x(1)), Some((-1, x12)));
        assert_eq!(mono_mul(x(1), x(1)), None);
        let x34 = Monomial::from_indices(4, &[3, 4]).unwrap();
        assert_eq!(mono_mul(x12, x34), Some((1, Monomial::top(4))));
    }

    #[test]
    fn partial_examples() {
        let f = mono(3, &[1, 2]);
        assert_eq!(f.partial(1).unwrap(), mono(3, &[2]));
        assert_eq!(f.partial(2).unwrap(), mono(3, &[1]).scale(&Rational::from(-1)));
        assert!(f.partial(3).unwrap().is_zero());
        assert!(f.partial(0).is_err());
        assert!(f.partial(4).is_err());
    }

    #[test]
    fn ext_mul_examples() {
        let one_plus_x1 = ExtElem::one(4).add(&mono(4, &[1]));
        assert_eq!(one_plus_x1.mul(&mono(4, &[2])), mono(4, &[2]).add(&mono(4, &[1, 2])));
        assert_eq!(mono(4, &[1, 2]).mul(&mono(4, &[3, 4])), mono(4, &[1, 2, 3, 4]));
        let f = mono(4, &[2, 3]).add(&mono(4, &[1]));
        assert_eq!(f.mul(&ExtElem::one(4)), f);
    }

    #[test]
    fn text_form() {
        assert_eq!(Monomial::ONE.to_string(), "1");
        let m: Monomial = "x1x3x4".parse().unwrap();
        assert_eq!(m, Monomial::from_indices(4, &[1, 3, 4]).unwrap());
        assert_eq!(m.to_string(), "x1x3x4");
        assert_eq!("1".parse::<Monomial>().unwrap(), Monomial::ONE);
        assert!("x3x1".parse::<Monomial>().is_err());
        assert!("y1".parse::<Monomial>().is_err());
        assert!("".parse::<Monomial>().is_err());
    }

    #[test]
    fn dimensions() {
        for n in 0..=6 {
            let all = Monomial::all(n);
            assert_eq!(all.len(), 1 << n);
            for k in 0..=n {
                let count = all.iter().filter(|m| m.degree() == k).count();
                let binom = (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
                assert_eq!(count, binom);
            }
        }
    }

    #[test]
    fn super_leibniz_on_all_monomial_pairs() {
        let n = 4;
        let all: Vec<ExtElem> =
            Monomial::all(n).into_iter().map(|m| ExtElem::monomial(n, m, Rational::one())).collect();
        for f in &all {
            let sign = if f.parity() == Some(1) { -Rational::one() } else { Rational::one() };
            for g in &all {
                for i in 1..=n {
                    let lhs = f.mul(g).partial(i).unwrap();
                    let rhs = f.partial(i).unwrap().mul(g).add(&f.mul(&g.partial(i).unwrap()).scale(&sign));
                    assert_eq!(lhs, rhs, "∂{i}({f}·{g})");
                }
            }
        }
    }
}
