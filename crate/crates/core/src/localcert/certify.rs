use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::constraints::ConstraintSystem;
use super::is_2local_at;
use super::probes::{proof_probes, random_probes, separating_t, RANDOM_PROBE_SUPPORT};
use crate::derivations::{ad_image, EndMap};
use crate::families::LPrimeModel;
use crate::linalg::{Rational, SparseVec};

pub const CERTIFICATE_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Certified,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Certified => "CERTIFIED",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifyConfig {
    /// Maximum number of recorded escalation probes; `None` means 4·dim L.
    pub budget: Option<usize>,
    /// Maximum number of escalation candidates tried; `None` means 32·dim L.
    pub max_attempts: Option<usize>,
    pub seed: u64,
    /// Random pairs used by the 2-local spot checks.
    pub twolocal_pairs: usize,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        Self { budget: None, max_attempts: None, seed: 0, twolocal_pairs: 100 }
    }
}

impl CertifyConfig {
    pub fn effective_budget(&self, p: &LPrimeModel) -> usize {
        self.budget.unwrap_or(4 * p.dim_l())
    }

    pub fn effective_max_attempts(&self, p: &LPrimeModel) -> usize {
        self.max_attempts.unwrap_or(32 * p.dim_l())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoLocalReport {
    pub verdict: Verdict,
    pub inner_pairs_checked: usize,
    pub inner_pairs_feasible: usize,
    /// Index of the first random pair at which a non-inner element of the
    /// constrained space fails the joint condition, when one was searched for.
    pub residual_failing_pair: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub family: String,
    pub n: usize,
    pub t: i64,
    pub seed: u64,
    pub budget: usize,
    /// Proof probes that shrank the constrained space.
    pub proof_probe_count: usize,
    /// Escalation candidates tried after the proof probes.
    pub candidates_tried: usize,
    pub probe_labels: Vec<String>,
    #[serde(rename = "dim_C")]
    pub dim_c: usize,
    #[serde(rename = "dim_adLprime")]
    pub dim_ad_lprime: usize,
    pub verdict: Verdict,
    pub twolocal_verdict: Option<Verdict>,
    pub twolocal: Option<TwoLocalReport>,
    pub elapsed_ms: Option<u64>,
    /// A map in the constrained space outside ad L′ (flat coordinates).
    #[serde(skip)]
    pub residual: Option<SparseVec>,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes") + "\n"
    }
}

/// Runs [`certify_with`] under the default configuration.
pub fn certify(p: &LPrimeModel) -> Certificate {
    certify_with(p, &CertifyConfig::default())
}

/// Imposes the proof probes, then seeded random probes until the
/// constrained space equals ad L′, the budget of recorded random probes is
/// spent, or the attempt cap is hit. A probe is recorded only when it
/// shrinks the space, so the recorded list alone reproduces it.
pub fn certify_with(p: &LPrimeModel, cfg: &CertifyConfig) -> Certificate {
    let start = Instant::now();
    let a = p.base();
    let budget = cfg.effective_budget(p);
    let max_attempts = cfg.effective_max_attempts(p);
    let t = separating_t(p);
    let img = ad_image(p);
    let target = img.dim();
    let mut sys = ConstraintSystem::new(p);

    for pr in proof_probes(p, &t) {
        if sys.dim() <= target {
            break;
        }
        sys.try_probe(&pr);
    }
    let proof_count = sys.labels().len();

    let mut tried = 0;
    for pr in random_probes(a, max_attempts, cfg.seed) {
        if sys.dim() <= target || sys.labels().len() - proof_count >= budget {
            break;
        }
        tried += 1;
        sys.try_probe(&pr);
    }

    let space = sys.space();
    let sound = img.is_subspace_of(&space);
    let certified = sound && space.dim() == target;
    let residual = (!certified).then(|| space.basis().iter().find(|v| !img.contains(v)).cloned()).flatten();
    Certificate {
        schema_version: CERTIFICATE_SCHEMA_VERSION,
        family: a.family().to_string(),
        n: a.n(),
        t: t.t,
        seed: cfg.seed,
        budget,
        proof_probe_count: proof_count,
        candidates_tried: tried,
        probe_labels: sys.labels().to_vec(),
        dim_c: space.dim(),
        dim_ad_lprime: target,
        verdict: if certified { Verdict::Certified } else { Verdict::Inconclusive },
        twolocal_verdict: None,
        twolocal: None,
        elapsed_ms: Some(start.elapsed().as_millis() as u64),
        residual,
    }
}

fn random_element(rng: &mut ChaCha8Rng, dim: usize) -> SparseVec {
    let k = RANDOM_PROBE_SUPPORT.min(dim);
    let support = rand::seq::index::sample(rng, dim, k);
    SparseVec::from_entries(support.into_iter().map(|i| (i, Rational::from_integer(rng.gen_range(1..=3)))))
}

/// The 2-local statement follows from the local one, so the verdict is
/// inherited from `c`. Spot checks: inner maps must be jointly feasible on
/// random pairs, and for an inconclusive run the residual map is searched
/// for a failing pair.
pub fn certify_2local(p: &LPrimeModel, c: &Certificate, cfg: &CertifyConfig) -> Certificate {
    let start = Instant::now();
    let a = p.base();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x2_10ca1);
    let mut feasible = 0;
    for _ in 0..cfg.twolocal_pairs {
        let u = random_element(&mut rng, p.dim_lprime());
        let phi = EndMap::new(p.ad_matrix(&u), a).expect("square matrix");
        let x = random_element(&mut rng, a.dim());
        let y = random_element(&mut rng, a.dim());
        if is_2local_at(&phi, &x, &y, p) {
            feasible += 1;
        }
    }
    let residual_failing_pair = c.residual.as_ref().and_then(|r| {
        let phi = EndMap::from_flat(r, a).expect("flat map of L");
        (0..cfg.twolocal_pairs).find(|_| {
            let x = random_element(&mut rng, a.dim());
            let y = random_element(&mut rng, a.dim());
            !is_2local_at(&phi, &x, &y, p)
        })
    });
    let inner_ok = feasible == cfg.twolocal_pairs;
    let verdict = if c.is_certified() && inner_ok { Verdict::Certified } else { Verdict::Inconclusive };
    let mut out = c.clone();
    out.twolocal_verdict = Some(verdict);
    out.twolocal = Some(TwoLocalReport {
        verdict,
        inner_pairs_checked: cfg.twolocal_pairs,
        inner_pairs_feasible: feasible,
        residual_failing_pair,
    });
    out.elapsed_ms = c.elapsed_ms.map(|ms| ms + start.elapsed().as_millis() as u64);
    out
}
