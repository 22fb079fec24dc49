//! Finite-dimensional graded Lie superalgebras given by a structure-constant
//! table over an explicit basis.

mod axioms;
mod desc;
mod grading;
mod json;

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

pub use axioms::{check_axioms, check_axioms_sampled, AxiomReport, Violation};
pub use desc::{BasisDesc, FieldTerm};
pub use grading::{Cell, Grading, Shift};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational, SparseVec};

/// Element of an algebra in basis coordinates.
pub type SuperVec = SparseVec;

/// The four Cartan series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    W,
    S,
    STilde,
    H,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::W, Family::S, Family::STilde, Family::H];

    pub fn name(self) -> &'static str {
        match self {
            Family::W => "W",
            Family::S => "S",
            Family::STilde => "Stilde",
            Family::H => "H",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "W" | "w" => Ok(Family::W),
            "S" | "s" => Ok(Family::S),
            "Stilde" | "stilde" | "S~" | "S̃" => Ok(Family::STilde),
            "H" | "h" => Ok(Family::H),
            _ => Err(Error::Parse(format!("unknown family `{s}` (expected W, S, Stilde or H)"))),
        }
    }
}

/// What a model is: one of the simple algebras, the auxiliary H̃(n), or the
/// extended algebra L′ whose adjoint action gives all superderivations of L.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyTag {
    Simple(Family),
    HTilde,
    Extended(Family),
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::Simple(fam) => write!(f, "{fam}"),
            FamilyTag::HTilde => f.write_str("Htilde"),
            FamilyTag::Extended(fam) => write!(f, "{fam}'"),
        }
    }
}

impl FromStr for FamilyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "Htilde" {
            return Ok(FamilyTag::HTilde);
        }
        match s.strip_suffix('\'') {
            Some(base) => Ok(FamilyTag::Extended(base.parse()?)),
            None => Ok(FamilyTag::Simple(s.parse()?)),
        }
    }
}

/// Integer weight vector (α(h₁),…,α(h_l)); the zero vector is the zero root.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVec(pub Vec<i64>);

impl WeightVec {
    pub fn zero(l: usize) -> Self {
        WeightVec(vec![0; l])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Σ tⁱ cᵢ with i running from 1.
    pub fn eval_at_powers(&self, t: &Rational) -> Rational {
        let mut pow = t.clone();
        let mut acc = Rational::zero();
        for &c in &self.0 {
            acc += &pow * &Rational::from_integer(c);
            pow = &pow * t;
        }
        acc
    }
}

impl Add for &WeightVec {
    type Output = WeightVec;
    fn add(self, rhs: &WeightVec) -> WeightVec {
        WeightVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &WeightVec {
    type Output = WeightVec;
    fn sub(self, rhs: &WeightVec) -> WeightVec {
        WeightVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &WeightVec {
    type Output = WeightVec;
    fn neg(self) -> WeightVec {
        WeightVec(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for WeightVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Representative of `d` modulo `m` in `{-1, …, m-2}`; identity without a modulus.
pub fn normalize_degree(d: i64, modulus: Option<i64>) -> i64 {
    match modulus {
        Some(m) => (d + 1).rem_euclid(m) - 1,
        None => d,
    }
}

/// A graded Lie superalgebra with a full structure-constant table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraModel {
    pub(crate) family: FamilyTag,
    pub(crate) n: usize,
    pub(crate) basis: Vec<BasisDesc>,
    /// `table[i * dim + j] = [e_i, e_j]`.
    pub(crate) table: Vec<SuperVec>,
    pub(crate) parity: Vec<u8>,
    pub(crate) degree: Vec<i64>,
    pub(crate) weight: Vec<WeightVec>,
    pub(crate) cartan: Vec<usize>,
    pub(crate) grading_modulus: Option<i64>,
}

impl AlgebraModel {
    /// Assembles a model from raw parts, validating shapes and indices.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        family: FamilyTag,
        n: usize,
        basis: Vec<BasisDesc>,
        table: Vec<SuperVec>,
        parity: Vec<u8>,
        degree: Vec<i64>,
        weight: Vec<WeightVec>,
        cartan: Vec<usize>,
        grading_modulus: Option<i64>,
    ) -> Result<Self> {
        let dim = basis.len();
        let bad = |msg: String| Err(Error::InvalidModel(msg));
        if table.len() != dim * dim {
            return bad(format!("bracket table has {} entries, expected {}", table.len(), dim * dim));
        }
        if parity.len() != dim || degree.len() != dim || weight.len() != dim {
            return bad("parity/degree/weight length differs from basis length".into());
        }
        if let Some(p) = parity.iter().find(|&&p| p > 1) {
            return bad(format!("parity {p} is not 0 or 1"));
        }
        if let Some(&c) = cartan.iter().find(|&&c| c >= dim) {
            return bad(format!("cartan index {c} out of range"));
        }
        if weight.iter().any(|w| w.len() != cartan.len()) {
            return bad("weight vector length differs from cartan rank".into());
        }
        if let Some(k) = table.iter().flat_map(|v| v.max_index()).find(|&k| k >= dim) {
            return bad(format!("bracket refers to basis index {k} >= {dim}"));
        }
        if grading_modulus.is_some_and(|m| m < 2) {
            return bad("grading modulus must be at least 2".into());
        }
        Ok(Self { family, n, basis, table, parity, degree, weight, cartan, grading_modulus })
    }

    pub fn family(&self) -> FamilyTag {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisDesc] {
        &self.basis
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.parity[i]
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degree[i]
    }

    pub fn weight(&self, i: usize) -> &WeightVec {
        &self.weight[i]
    }

    pub fn cartan(&self) -> &[usize] {
        &self.cartan
    }

    /// Cartan rank l.
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn grading_modulus(&self) -> Option<i64> {
        self.grading_modulus
    }

    pub fn normalize_degree(&self, d: i64) -> i64 {
        normalize_degree(d, self.grading_modulus)
    }

    /// `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &SuperVec {
        &self.table[i * self.dim() + j]
    }

    pub fn bracket(&self, a: &SuperVec, b: &SuperVec) -> SuperVec {
        let mut acc = SparseVec::new();
        for (i, ca) in a.iter() {
            for (j, cb) in b.iter() {
                let e = self.bracket_basis(i, j);
                if !e.is_zero() {
                    acc = acc.add_scaled(e, &(ca * cb));
                }
            }
        }
        acc
    }

    /// Parity of a homogeneous element; `None` if mixed. Zero counts as even.
    pub fn parity_of(&self, v: &SuperVec) -> Option<u8> {
        let mut it = v.indices().map(|i| self.parity[i]);
        let first = it.next().unwrap_or(0);
        it.all(|p| p == first).then_some(first)
    }

    /// ℤ-degree (normalized) of a homogeneous element.
    pub fn degree_of(&self, v: &SuperVec) -> Option<i64> {
        let mut it = v.indices().map(|i| self.degree[i]);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Matrix of `x ↦ [u, x]` on this algebra.
    pub fn ad_matrix(&self, u: &SuperVec) -> Matrix {
        let dim = self.dim();
        let cols: Vec<SparseVec> = (0..dim).map(|j| self.bracket(u, &SparseVec::unit(j))).collect();
        Matrix::from_columns(dim, &cols).expect("bracket stays in range")
    }

    pub fn basis_vector(&self, i: usize) -> SuperVec {
        SparseVec::unit(i)
    }

    pub fn cartan_element(&self, k: usize) -> SuperVec {
        SparseVec::unit(self.cartan[k])
    }

    pub fn grading(&self) -> Grading {
        Grading::new(self)
    }

    /// Indices of the basis vectors of a given (normalized) degree.
    pub fn degree_component(&self, d: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree[i] == d).collect()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.degree.iter().copied().min()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.degree.iter().copied().max()
    }

    /// Distinct nonzero weights realized by basis vectors.
    pub fn root_set(&self) -> std::collections::BTreeSet<WeightVec> {
        self.weight.iter().filter(|w| !w.is_zero()).cloned().collect()
    }

    /// Copy of the model with a new basis vector that brackets to zero
    /// with everything (degree 0, weight 0, even). Used to build models
    /// that deliberately violate transitivity.
    pub fn with_central_element(&self, name: &str) -> AlgebraModel {
        let old = self.dim();
        let dim = old + 1;
        let mut table = vec![SparseVec::new(); dim * dim];
        for i in 0..old {
            for j in 0..old {
                table[i * dim + j] = self.table[i * old + j].clone();
            }
        }
        let mut m = self.clone();
        m.basis.push(BasisDesc::Symbol(name.to_string()));
        m.table = table;
        m.parity.push(0);
        m.degree.push(0);
        m.weight.push(WeightVec::zero(self.rank()));
        m
    }

    /// Copy with the structure constant `[e_i, e_j]` multiplied by `factor`.
    pub fn with_scaled_bracket(&self, i: usize, j: usize, factor: &Rational) -> AlgebraModel {
        let mut m = self.clone();
        let dim = self.dim();
        m.table[i * dim + j] = m.table[i * dim + j].scale(factor);
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_normalization() {
        assert_eq!(normalize_degree(3, Some(4)), -1);
        assert_eq!(normalize_degree(-1, Some(4)), -1);
        assert_eq!(normalize_degree(2, Some(4)), 2);
        assert_eq!(normalize_degree(-2, Some(4)), 2);
        assert_eq!(normalize_degree(7, None), 7);
    }

    #[test]
    fn family_tags_parse() {
        for tag in [
            FamilyTag::Simple(Family::STilde),
            FamilyTag::HTilde,
            FamilyTag::Extended(Family::H),
            FamilyTag::Extended(Family::W),
        ] {
            assert_eq!(tag.to_string().parse::<FamilyTag>().unwrap(), tag);
        }
        assert!("K".parse::<Family>().is_err());
    }

    #[test]
    fn weight_powers() {
        let w = WeightVec(vec![2, -1, 0]);
        assert_eq!(w.eval_at_powers(&Rational::from_integer(2)), Rational::zero());
        assert_eq!(w.eval_at_powers(&Rational::from_integer(3)), Rational::from_integer(-3));
    }
}
