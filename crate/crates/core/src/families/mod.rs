//! The Cartan series W(n), S(n), S̃(n), H(n), the auxiliary H̃(n) and the
//! extended algebras L′ with Der L = ad L′.

mod builder;
mod field;

use std::collections::BTreeMap;

pub use field::{grading_field, ham_field, involution, xi_field, VectorField, WIndex};

use crate::error::{Error, Result};
use crate::exterior::{ExtElem, Monomial};
use crate::liesuper::{AlgebraModel, BasisDesc, Family, FamilyTag, FieldTerm, WeightVec};
use crate::linalg::{Matrix, Rational, SparseVec};

/// A validated (family, n) pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    family: Family,
    n: usize,
}

/// Largest n accepted; W(n) has n·2ⁿ basis vectors.
pub const MAX_N: usize = 10;

impl FamilySpec {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        let fail = |msg: &str| Err(Error::FamilyConstraint(msg.to_string()));
        match family {
            Family::W if n < 4 => return fail("W requires n >= 4"),
            Family::S if n < 4 => return fail("S requires n >= 4"),
            Family::STilde if n % 2 == 1 => return fail("S̃ requires even n"),
            Family::STilde if n < 4 => return fail("S̃ requires n >= 4"),
            Family::H if n <= 4 => return fail("H requires n > 4"),
            _ => {}
        }
        if n > MAX_N {
            return Err(Error::FamilyConstraint(format!("n = {n} exceeds the supported maximum {MAX_N}")));
        }
        Ok(Self { family, n })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

fn one() -> Rational {
    Rational::one()
}

/// `(ε-weight, degree)` of a W basis vector `f∂ⱼ` as raw ε-coefficients.
fn w_cell(n: usize, mono: Monomial, j: usize) -> (i64, Vec<i64>) {
    let mut eps = vec![0i64; n];
    for i in mono.indices() {
        eps[i - 1] += 1;
    }
    eps[j - 1] -= 1;
    (mono.degree() as i64 - 1, eps)
}

/// ε-coefficients (on the diagonal torus of gl(n)) of a basis element
/// realized as a vector field; `None` if it is not an ε-weight vector.
pub fn epsilon_weight(n: usize, desc: &BasisDesc) -> Option<Vec<i64>> {
    let field = builder::realize(n, desc).ok()?;
    let idx = WIndex::new(n);
    let coords = field.to_w_coords(&idx);
    let mut it = coords.indices().map(|k| {
        let (m, j) = idx.term(k);
        w_cell(n, m, j).1
    });
    let first = it.next()?;
    it.all(|e| e == first).then_some(first)
}

pub fn build(spec: FamilySpec) -> Result<AlgebraModel> {
    match spec.family {
        Family::W => build_w(spec.n),
        Family::S => build_s(spec.n, false),
        Family::STilde => build_s(spec.n, true),
        Family::H => build_h(spec.n, false),
    }
}

/// Convenience wrapper validating the spec first.
pub fn build_family(family: Family, n: usize) -> Result<AlgebraModel> {
    build(FamilySpec::new(family, n)?)
}

fn build_w(n: usize) -> Result<AlgebraModel> {
    let idx = WIndex::new(n);
    let elems: Vec<_> = (0..idx.dim())
        .map(|k| {
            let (m, j) = idx.term(k);
            (BasisDesc::field(m, j), VectorField::term(n, m, j, one()))
        })
        .collect();
    let cartan = (1..=n).map(|i| idx.index(Monomial::generator(i), i)).collect();
    builder::assemble(FamilyTag::Simple(Family::W), n, elems, cartan, None)
}

/// `hᵢ = xᵢ∂ᵢ − xᵢ₊₁∂ᵢ₊₁`.
fn sl_cartan_field(n: usize, i: usize) -> (BasisDesc, VectorField) {
    let terms = vec![
        FieldTerm { coeff: one(), mono: Monomial::generator(i), j: i },
        FieldTerm { coeff: -one(), mono: Monomial::generator(i + 1), j: i + 1 },
    ];
    let f = VectorField::from_terms(n, &terms).expect("indices in range");
    (BasisDesc::Combination(terms), f)
}

fn build_s(n: usize, tilde: bool) -> Result<AlgebraModel> {
    let idx = WIndex::new(n);
    let mut cells: BTreeMap<(i64, Vec<i64>), Vec<usize>> = BTreeMap::new();
    for k in 0..idx.dim() {
        let (m, j) = idx.term(k);
        cells.entry(w_cell(n, m, j)).or_default().push(k);
    }
    // (degree, leading W index, descriptor, field)
    let mut found: Vec<(i64, usize, BasisDesc, VectorField)> = Vec::new();
    let monos = idx.monomials();
    let mono_pos = |m: Monomial| monos.iter().position(|&x| x == m).expect("monomial of Λ(n)");
    for ((deg, eps), members) in &cells {
        if *deg == 0 && eps.iter().all(|&e| e == 0) {
            for i in 1..n {
                let (d, f) = sl_cartan_field(n, i);
                found.push((0, idx.index(Monomial::generator(i), i), d, f));
            }
            continue;
        }
        if tilde && *deg == -1 {
            let j = (0..n).find(|&j| eps[j] == -1).expect("degree -1 cell") + 1;
            let terms = vec![
                FieldTerm { coeff: one(), mono: Monomial::ONE, j },
                FieldTerm { coeff: -one(), mono: Monomial::top(n), j },
            ];
            let f = VectorField::from_terms(n, &terms)?;
            found.push((-1, members[0], BasisDesc::Combination(terms), f));
            continue;
        }
        // divergence restricted to the cell, columns = cell members
        let cols: Vec<SparseVec> = members
            .iter()
            .map(|&k| {
                let (m, j) = idx.term(k);
                let d = VectorField::term(n, m, j, one()).divergence();
                SparseVec::from_entries(d.terms().map(|(mm, c)| (mono_pos(mm), c.clone())))
            })
            .collect();
        let div = Matrix::from_columns(monos.len(), &cols)?;
        for v in div.kernel().basis() {
            let w = v.remap(|c| Some(members[c]));
            let f = VectorField::from_w_coords(&idx, &w);
            let lead = w.leading().expect("nonzero kernel vector").0;
            found.push((*deg, lead, BasisDesc::from_terms(f.terms(&idx)), f));
        }
    }
    found.sort_by_key(|(d, lead, _, _)| (*d, *lead));
    let cartan = found
        .iter()
        .enumerate()
        .filter(|(_, (d, _, desc, _))| {
            *d == 0
                && matches!(desc, BasisDesc::Combination(t) if t.len() == 2
                && t[0].mono == Monomial::generator(t[0].j)
                && t[1].mono == Monomial::generator(t[1].j)
                && t[1].j == t[0].j + 1
                && t[0].coeff.is_one() && t[1].coeff == -one())
        })
        .map(|(k, _)| k)
        .collect::<Vec<_>>();
    debug_assert_eq!(cartan.len(), n - 1);
    let elems = found.into_iter().map(|(_, _, d, f)| (d, f)).collect();
    let (tag, modulus) =
        if tilde { (FamilyTag::Simple(Family::STilde), Some(n as i64)) } else { (FamilyTag::Simple(Family::S), None) };
    builder::assemble(tag, n, elems, cartan, modulus)
}

fn is_cartan_pair(n: usize, m: Monomial) -> Option<usize> {
    let r = n / 2;
    let ix: Vec<usize> = m.indices().collect();
    (ix.len() == 2 && ix[0] <= r && ix[1] == ix[0] + r).then_some(ix[0])
}

fn build_h(n: usize, tilde: bool) -> Result<AlgebraModel> {
    let top = if tilde { n } else { n - 1 };
    let mut elems = Vec::new();
    let mut cartan = Vec::new();
    for m in Monomial::all(n) {
        let d = m.degree();
        if d == 0 || d > top {
            continue;
        }
        // −D_H(xᵢxᵢ′) = xᵢ∂ᵢ − xᵢ′∂ᵢ′ is the Cartan element hᵢ
        let negated = is_cartan_pair(n, m).is_some();
        if negated {
            cartan.push(elems.len());
        }
        let s = if negated { -one() } else { one() };
        let f = ham_field(&ExtElem::monomial(n, m, s))?;
        elems.push((BasisDesc::Ham { mono: m, negated }, f));
    }
    let tag = if tilde { FamilyTag::HTilde } else { FamilyTag::Simple(Family::H) };
    builder::assemble(tag, n, elems, cartan, None)
}

/// H̃(n) = {D_H(f) | f ∈ Λ(n)}.
pub fn build_htilde(n: usize) -> Result<AlgebraModel> {
    FamilySpec::new(Family::H, n)?;
    build_h(n, true)
}

/// `Σ ∂ᵢ(fᵢ)` of a W(n) element given in W-coordinates.
pub fn divergence(n: usize, v: &SparseVec) -> ExtElem {
    VectorField::from_w_coords(&WIndex::new(n), v).divergence()
}

/// `D_H(f)` in W-coordinates.
pub fn ham(f: &ExtElem) -> Result<SparseVec> {
    Ok(ham_field(f)?.to_w_coords(&WIndex::new(f.n())))
}

/// `ξᵢ` in W-coordinates.
pub fn xi(i: usize, n: usize) -> Result<SparseVec> {
    Ok(xi_field(i, n)?.to_w_coords(&WIndex::new(n)))
}

/// L together with L′ ⊇ L such that Der L = ad L′. The basis of L occupies
/// the first `dim L` indices of L′.
#[derive(Clone, Debug)]
pub struct LPrimeModel {
    base: AlgebraModel,
    ext: AlgebraModel,
}

impl LPrimeModel {
    /// Pairs an algebra with an extension; the first `dim L` basis vectors
    /// of `ext` must be those of `base`.
    pub fn from_parts(base: AlgebraModel, ext: AlgebraModel) -> Result<Self> {
        if ext.dim() < base.dim() || ext.basis()[..base.dim()] != *base.basis() {
            return Err(Error::InvalidModel("extension does not start with the base basis".into()));
        }
        if ext.cartan() != base.cartan() {
            return Err(Error::InvalidModel("extension uses a different Cartan basis".into()));
        }
        Ok(Self { base, ext })
    }

    pub fn base(&self) -> &AlgebraModel {
        &self.base
    }

    pub fn ext(&self) -> &AlgebraModel {
        &self.ext
    }

    pub fn dim_l(&self) -> usize {
        self.base.dim()
    }

    pub fn dim_lprime(&self) -> usize {
        self.ext.dim()
    }

    /// Descriptors of the vectors added to L.
    pub fn extra(&self) -> &[BasisDesc] {
        &self.ext.basis()[self.base.dim()..]
    }

    /// `[u, x]` for `u ∈ L′` and `x ∈ L`, as an element of L.
    pub fn act(&self, u: &SparseVec, x: &SparseVec) -> SparseVec {
        self.ext.bracket(u, x)
    }

    /// `[e′_u, e_x]` on basis vectors (`u` indexes L′, `x` indexes L).
    pub fn act_basis(&self, u: usize, x: usize) -> &SparseVec {
        self.ext.bracket_basis(u, x)
    }

    /// dim L × dim L matrix of `x ↦ [u, x]` on L.
    pub fn ad_matrix(&self, u: &SparseVec) -> Matrix {
        let cols: Vec<SparseVec> = (0..self.dim_l()).map(|j| self.act(u, &SparseVec::unit(j))).collect();
        Matrix::from_columns(self.dim_l(), &cols).expect("L is an ideal of L′")
    }
}

/// Builds L′: L itself for W and S̃, L ⊕ ℂ𝒞 for S, H̃(n) ⊕ ℂ𝒞 for H.
pub fn build_lprime(a: &AlgebraModel) -> Result<LPrimeModel> {
    let FamilyTag::Simple(family) = a.family() else {
        return Err(Error::FamilyConstraint(format!("no L′ construction for {}", a.family())));
    };
    let n = a.n();
    let mut elems = a.basis().iter().map(|d| Ok((d.clone(), builder::realize(n, d)?))).collect::<Result<Vec<_>>>()?;
    match family {
        Family::W | Family::STilde => {}
        Family::S => elems.push((BasisDesc::GradingElement, grading_field(n))),
        Family::H => {
            let top = Monomial::top(n);
            elems.push((BasisDesc::Ham { mono: top, negated: false }, ham_field(&ExtElem::monomial(n, top, one()))?));
            elems.push((BasisDesc::GradingElement, grading_field(n)));
        }
    }
    let ext = builder::assemble(FamilyTag::Extended(family), n, elems, a.cartan().to_vec(), a.grading_modulus())?;
    LPrimeModel::from_parts(a.clone(), ext)
}

/// Cartan basis indices and the weight of every basis vector.
pub fn cartan_and_roots(a: &AlgebraModel) -> (Vec<usize>, Vec<WeightVec>) {
    (a.cartan().to_vec(), (0..a.dim()).map(|i| a.weight(i).clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_validation() {
        assert!(FamilySpec::new(Family::W, 4).is_ok());
        assert_eq!(FamilySpec::new(Family::H, 4).unwrap_err().to_string(), "H requires n > 4");
        assert_eq!(FamilySpec::new(Family::STilde, 5).unwrap_err().to_string(), "S̃ requires even n");
        assert!(FamilySpec::new(Family::S, 3).is_err());
        assert!(FamilySpec::new(Family::H, 5).is_ok());
    }

    #[test]
    fn dimensions() {
        assert_eq!(build_family(Family::W, 4).unwrap().dim(), 64);
        assert_eq!(build_family(Family::S, 4).unwrap().dim(), 49);
        assert_eq!(build_family(Family::STilde, 4).unwrap().dim(), 49);
        assert_eq!(build_family(Family::H, 5).unwrap().dim(), 30);
    }

    #[test]
    fn lprime_dimensions() {
        let dims: Vec<usize> = [(Family::W, 4), (Family::S, 4), (Family::STilde, 4), (Family::H, 5)]
            .iter()
            .map(|&(f, n)| build_lprime(&build_family(f, n).unwrap()).unwrap().dim_lprime())
            .collect();
        assert_eq!(dims, vec![64, 50, 49, 32]);
    }

    #[test]
    fn xi_degree() {
        let v = xi(1, 4).unwrap();
        let idx = WIndex::new(4);
        assert_eq!(v, SparseVec::unit(idx.index(Monomial::top(4), 1)));
    }
}
