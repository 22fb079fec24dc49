use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::AlgebraModel;
use crate::linalg::{Rational, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Antisymmetry { i: usize, j: usize },
    Parity { i: usize, j: usize },
    Degree { i: usize, j: usize },
    Weight { i: usize, j: usize },
    Jacobi { i: usize, j: usize, k: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Antisymmetry { i, j } => write!(f, "super-antisymmetry fails for ({i}, {j})"),
            Violation::Parity { i, j } => write!(f, "bracket of ({i}, {j}) is not parity-additive"),
            Violation::Degree { i, j } => write!(f, "bracket of ({i}, {j}) is not degree-additive"),
            Violation::Weight { i, j } => write!(f, "bracket of ({i}, {j}) is not weight-additive"),
            Violation::Jacobi { i, j, k } => write!(f, "super-Jacobi fails for ({i}, {j}, {k})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub violation: Option<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

fn sign(p: u8) -> Rational {
    if p.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn check_pair(a: &AlgebraModel, i: usize, j: usize) -> Option<Violation> {
    let ij = a.bracket_basis(i, j);
    let ji = a.bracket_basis(j, i);
    let s = sign(a.parity(i) * a.parity(j));
    if *ij != ji.scale(&-s) {
        return Some(Violation::Antisymmetry { i, j });
    }
    let p = (a.parity(i) + a.parity(j)) % 2;
    let d = a.normalize_degree(a.degree(i) + a.degree(j));
    let w = a.weight(i) + a.weight(j);
    for k in ij.indices() {
        if a.parity(k) != p {
            return Some(Violation::Parity { i, j });
        }
        if a.degree(k) != d {
            return Some(Violation::Degree { i, j });
        }
        if *a.weight(k) != w {
            return Some(Violation::Weight { i, j });
        }
    }
    None
}

fn bracket_basis_vec(a: &AlgebraModel, i: usize, v: &SparseVec) -> SparseVec {
    v.iter().fold(SparseVec::new(), |acc, (k, c)| acc.add_scaled(a.bracket_basis(i, k), c))
}

fn vec_bracket_basis(a: &AlgebraModel, v: &SparseVec, k: usize) -> SparseVec {
    v.iter().fold(SparseVec::new(), |acc, (i, c)| acc.add_scaled(a.bracket_basis(i, k), c))
}

/// `[x,[y,z]] = [[x,y],z] + (−1)^{|x||y|}[y,[x,z]]` on basis vectors.
fn jacobi_holds(a: &AlgebraModel, i: usize, j: usize, k: usize) -> bool {
    let lhs = bracket_basis_vec(a, i, a.bracket_basis(j, k));
    let r1 = vec_bracket_basis(a, a.bracket_basis(i, j), k);
    let r2 = bracket_basis_vec(a, j, a.bracket_basis(i, k));
    lhs == r1.add_scaled(&r2, &sign(a.parity(i) * a.parity(j)))
}

fn check_all_pairs(a: &AlgebraModel) -> Option<Violation> {
    let dim = a.dim();
    (0..dim).into_par_iter().find_map_first(|i| (0..dim).find_map(|j| check_pair(a, i, j)))
}

/// Checks super-antisymmetry, parity/degree/weight additivity on every
/// basis pair and super-Jacobi on every basis triple. Reports the first
/// violation in lexicographic order.
pub fn check_axioms(a: &AlgebraModel) -> AxiomReport {
    let dim = a.dim();
    let mut report = AxiomReport { pairs_checked: dim * dim, triples_checked: 0, violation: None };
    if let Some(v) = check_all_pairs(a) {
        report.violation = Some(v);
        return report;
    }
    report.triples_checked = dim * dim * dim;
    report.violation = (0..dim).into_par_iter().find_map_first(|i| {
        for j in 0..dim {
            for k in 0..dim {
                if !jacobi_holds(a, i, j, k) {
                    return Some(Violation::Jacobi { i, j, k });
                }
            }
        }
        None
    });
    report
}

/// Like [`check_axioms`] but checks super-Jacobi only on `samples` triples
/// drawn uniformly with a seeded generator. Pair checks stay exhaustive.
pub fn check_axioms_sampled(a: &AlgebraModel, samples: usize, seed: u64) -> AxiomReport {
    let dim = a.dim();
    let mut report = AxiomReport { pairs_checked: dim * dim, triples_checked: 0, violation: None };
    if let Some(v) = check_all_pairs(a) {
        report.violation = Some(v);
        return report;
    }
    if dim == 0 {
        return report;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples: Vec<(usize, usize, usize)> =
        (0..samples).map(|_| (rng.gen_range(0..dim), rng.gen_range(0..dim), rng.gen_range(0..dim))).collect();
    report.triples_checked = samples;
    report.violation = triples
        .par_iter()
        .find_map_first(|&(i, j, k)| (!jacobi_holds(a, i, j, k)).then_some(Violation::Jacobi { i, j, k }));
    report
}
