//! Shared fixtures for the benches in `benches/`.

use cartansuper::families::LPrimeModel;
use cartansuper::{build_family, build_lprime, Family};

/// The desk-scale instances: W(4), S(4), S̃(4), H(5).
pub const INSTANCES: [(Family, usize); 4] = [(Family::W, 4), (Family::S, 4), (Family::STilde, 4), (Family::H, 5)];

pub fn label(f: Family, n: usize) -> String {
    format!("{f}({n})")
}

pub fn lprime(f: Family, n: usize) -> LPrimeModel {
    build_lprime(&build_family(f, n).expect("valid spec")).expect("L′ builds")
}
