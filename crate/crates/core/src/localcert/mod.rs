//! Local and 2-local superderivations, and a certifier that turns the
//! local condition at finitely many probe elements into linear constraints
//! on End(L).

mod certify;
mod constraints;
mod probes;

use std::collections::BTreeMap;

pub use certify::{
    certify, certify_2local, certify_with, Certificate, CertifyConfig, TwoLocalReport, Verdict,
    CERTIFICATE_SCHEMA_VERSION,
};
pub use constraints::{
    cartan_collapse_space, constrained_space, constrained_space_whole, witness_space, ConstraintMode, ConstraintSystem,
};
pub use probes::{
    check_separating, proof_probes, random_probes, separating_t, Probe, SeparatingScalar, RANDOM_PROBE_SUPPORT,
};

use crate::derivations::EndMap;
use crate::families::LPrimeModel;
use crate::liesuper::{AlgebraModel, Shift};
use crate::linalg::{Matrix, SparseVec, Subspace};

/// `{[u, x] : u ∈ L′}`.
pub fn orbit(x: &SparseVec, p: &LPrimeModel) -> Subspace {
    let vs: Vec<SparseVec> = (0..p.dim_lprime()).map(|u| p.act(&SparseVec::unit(u), x)).collect();
    Subspace::span(p.dim_l(), &vs)
}

/// Whether `φ(x) = [u, x]` for some `u ∈ L′`.
pub fn is_local_at(phi: &EndMap, x: &SparseVec, p: &LPrimeModel) -> bool {
    orbit(x, p).contains(&phi.apply(x))
}

/// Whether a single `u ∈ L′` satisfies both `φ(x) = [u, x]` and `φ(y) = [u, y]`.
pub fn is_2local_at(phi: &EndMap, x: &SparseVec, y: &SparseVec, p: &LPrimeModel) -> bool {
    let d = p.dim_l();
    let cols: Vec<SparseVec> = (0..p.dim_lprime())
        .map(|u| {
            let e = SparseVec::unit(u);
            let ux = p.act(&e, x);
            let uy = p.act(&e, y).remap(|k| Some(k + d));
            ux.add(&uy)
        })
        .collect();
    let m = Matrix::from_columns(2 * d, &cols).expect("indices below 2·dim L");
    let rhs = phi.apply(x).add(&phi.apply(y).remap(|k| Some(k + d)));
    m.solve(&rhs).expect("rhs length matches").is_some()
}

/// Splits a map into bidegree-homogeneous components keyed by shift.
pub fn bigrade_decompose(phi: &EndMap, a: &AlgebraModel) -> BTreeMap<Shift, EndMap> {
    let g = a.grading();
    let dim = a.dim();
    let mut parts: BTreeMap<Shift, Vec<(usize, crate::linalg::Rational)>> = BTreeMap::new();
    for (k, c) in phi.to_flat().iter() {
        let (i, j) = (k / dim, k % dim);
        parts.entry(g.entry_shift(i, j)).or_default().push((k, c.clone()));
    }
    parts
        .into_iter()
        .map(|(s, es)| {
            let m = EndMap::from_flat(&SparseVec::from_entries(es), a).expect("same dimension");
            (s, m)
        })
        .collect()
}
