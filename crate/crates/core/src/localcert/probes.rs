use std::collections::{BTreeSet, HashSet};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::families::LPrimeModel;
use crate::liesuper::{AlgebraModel, WeightVec};
use crate::linalg::{Rational, SparseVec};

/// An element of L at which the local condition is imposed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Probe {
    pub label: String,
    pub vector: SparseVec,
}

impl Probe {
    pub fn new(label: impl Into<String>, vector: SparseVec) -> Self {
        Self { label: label.into(), vector }
    }
}

/// Integer `t` with `Σ tⁱ cᵢ ≠ 0` for every listed nonzero weight `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparatingScalar {
    pub t: i64,
    /// Each checked weight with its value `Σ tⁱ cᵢ`. Empty when forced.
    pub checks: Vec<(Vec<i64>, String)>,
    pub verified: bool,
}

impl SeparatingScalar {
    /// A value used without any check.
    pub fn forced(t: i64) -> Self {
        Self { t, checks: Vec::new(), verified: false }
    }

    pub fn value(&self) -> Rational {
        Rational::from_integer(self.t)
    }
}

/// Evaluates every weight at `t`; returns the first weight that vanishes.
pub fn check_separating<'a, I>(t: i64, weights: I) -> Result<Vec<(Vec<i64>, String)>, WeightVec>
where
    I: IntoIterator<Item = &'a WeightVec>,
{
    let tv = Rational::from_integer(t);
    let mut checks = Vec::new();
    for w in weights {
        if w.is_zero() {
            continue;
        }
        let v = w.eval_at_powers(&tv);
        if v.is_zero() {
            return Err(w.clone());
        }
        checks.push((w.0.clone(), v.to_string()));
    }
    Ok(checks)
}

/// Smallest integer `t ≥ 2` separating all nonzero weights of L′.
pub fn separating_t(p: &LPrimeModel) -> SeparatingScalar {
    let roots = p.ext().root_set();
    let mut t = 2;
    loop {
        if let Ok(checks) = check_separating(t, &roots) {
            return SeparatingScalar { t, checks, verified: true };
        }
        t += 1;
    }
}

fn h0_vector(a: &AlgebraModel, t: &Rational) -> SparseVec {
    let mut pow = t.clone();
    let mut entries = Vec::new();
    for &h in a.cartan() {
        entries.push((h, pow.clone()));
        pow = &pow * t;
    }
    SparseVec::from_entries(entries)
}

fn cartan_combination(a: &AlgebraModel, coeffs: &[i64]) -> SparseVec {
    SparseVec::from_entries(a.cartan().iter().zip(coeffs).map(|(&h, &c)| (h, Rational::from_integer(c))))
}

/// Primitive integer vector with positive leading entry.
fn normalize_primitive(v: &mut [i64]) {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return;
    }
    let lead_neg = v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0);
    for x in v.iter_mut() {
        *x /= if lead_neg { -g } else { g };
    }
}

/// Coefficient vectors of `h_ik = α(h_k)hᵢ − α(hᵢ)h_k` over all pairs
/// `i < k` and all realized roots, normalized and deduplicated.
fn hik_coefficients(p: &LPrimeModel) -> Vec<((usize, usize), Vec<i64>)> {
    let a = p.base();
    let l = a.rank();
    let roots: BTreeSet<WeightVec> = p.ext().root_set();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    for k in 0..l {
        let mut e = vec![0; l];
        e[k] = 1;
        seen.insert(e);
    }
    let mut out = Vec::new();
    for i in 0..l {
        for k in i + 1..l {
            for r in &roots {
                let mut v = vec![0i64; l];
                v[i] = r.0[k];
                v[k] = -r.0[i];
                if v.iter().all(|&x| x == 0) {
                    continue;
                }
                normalize_primitive(&mut v);
                if seen.insert(v.clone()) {
                    out.push(((i + 1, k + 1), v));
                }
            }
        }
    }
    out
}

fn fmt_coeffs(v: &[i64]) -> String {
    WeightVec(v.to_vec()).to_string()
}

/// The structured probe list: h₀, the Cartan basis, the `h_ik`,
/// the degree −1 basis and its shifts by h₀, their sum, and its shifts by
/// the nonnegative-degree basis, and h₀-shifts of root vectors.
pub fn proof_probes(p: &LPrimeModel, t: &SeparatingScalar) -> Vec<Probe> {
    let a = p.base();
    let desc = |i: usize| a.basis()[i].to_string();
    let h0 = h0_vector(a, &t.value());
    let mut out = vec![Probe::new("h0", h0.clone())];
    for (k, &h) in a.cartan().iter().enumerate() {
        out.push(Probe::new(format!("h{}", k + 1), SparseVec::unit(h)));
    }
    for ((i, k), v) in hik_coefficients(p) {
        out.push(Probe::new(format!("h_{i}{k}{}", fmt_coeffs(&v)), cartan_combination(a, &v)));
    }
    let minus = a.degree_component(-1);
    for &v in &minus {
        out.push(Probe::new(desc(v), SparseVec::unit(v)));
    }
    for &v in &minus {
        out.push(Probe::new(format!("h0 + {}", desc(v)), h0.add(&SparseVec::unit(v))));
    }
    let dsum = SparseVec::from_entries(minus.iter().map(|&v| (v, Rational::one())));
    out.push(Probe::new("dsum", dsum.clone()));
    let nonneg: Vec<usize> = (0..a.dim()).filter(|&i| a.degree(i) >= 0).collect();
    for &x in &nonneg {
        out.push(Probe::new(format!("dsum + {}", desc(x)), dsum.add(&SparseVec::unit(x))));
    }
    for &x in &nonneg {
        if a.degree(x) >= 1 || !a.weight(x).is_zero() {
            out.push(Probe::new(format!("h0 + {}", desc(x)), h0.add(&SparseVec::unit(x))));
        }
    }
    out
}

/// Support size of a random probe.
pub const RANDOM_PROBE_SUPPORT: usize = 8;

/// Seeded random elements on [`RANDOM_PROBE_SUPPORT`] basis vectors with
/// coefficients in 1..=3. The support ignores parity, so most probes mix
/// even and odd parts.
pub fn random_probes(a: &AlgebraModel, count: usize, seed: u64) -> Vec<Probe> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = RANDOM_PROBE_SUPPORT.min(a.dim());
    (1..=count)
        .map(|c| {
            let support = rand::seq::index::sample(&mut rng, a.dim(), k);
            let v =
                SparseVec::from_entries(support.into_iter().map(|i| (i, Rational::from_integer(rng.gen_range(1..=3)))));
            Probe::new(format!("random#{c}"), v)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_normalization() {
        let mut v = vec![0, -2, 4];
        normalize_primitive(&mut v);
        assert_eq!(v, vec![0, 1, -2]);
    }

    #[test]
    fn separating_check_rejects_root() {
        let w = WeightVec(vec![2, -1, 0]);
        assert_eq!(check_separating(2, [&w]).unwrap_err(), w);
        assert!(check_separating(3, [&w]).is_ok());
    }
}
