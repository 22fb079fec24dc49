use rayon::prelude::*;

use super::orbit;
use super::probes::{proof_probes, Probe, SeparatingScalar};
use crate::derivations::{flat_indices, Block};
use crate::families::LPrimeModel;
use crate::liesuper::Shift;
use crate::linalg::{Echelon, Rational, SparseVec, Subspace};

struct BlockState {
    shift: Option<Shift>,
    flat: Vec<usize>,
    block: Block,
    ech: Echelon,
}

impl BlockState {
    fn new(shift: Option<Shift>, dim: usize, entries: &[(usize, usize)]) -> Self {
        Self {
            shift,
            flat: flat_indices(dim, entries),
            block: Block::new(dim, entries),
            ech: Echelon::new(entries.len()),
        }
    }

    fn free_dim(&self) -> usize {
        self.ech.ncols() - self.ech.rank()
    }

    /// Imposes `φ(x) ∈ allowed` where `ann` spans the annihilator of `allowed`.
    fn impose(&mut self, x: &SparseVec, ann: &[Vec<Rational>]) {
        if self.ech.is_full() {
            return;
        }
        // image rows touched by φ(x): (row i, [(local unknown, x_j)])
        let mut rows: Vec<(usize, Vec<(usize, Rational)>)> = Vec::new();
        for (j, xj) in x.iter() {
            for &(i, k) in &self.block.targets[j] {
                match rows.iter_mut().find(|(r, _)| *r == i) {
                    Some((_, v)) => v.push((k, xj.clone())),
                    None => rows.push((i, vec![(k, xj.clone())])),
                }
            }
        }
        if rows.is_empty() {
            return;
        }
        for y in ann {
            let mut entries = Vec::new();
            for (i, terms) in &rows {
                let yi = &y[*i];
                if yi.is_zero() {
                    continue;
                }
                entries.extend(terms.iter().map(|(k, c)| (*k, c * yi)));
            }
            let r = SparseVec::from_entries(entries);
            if !r.is_zero() {
                self.ech.insert(&r);
                if self.ech.is_full() {
                    return;
                }
            }
        }
    }

    fn space(&self, ambient: usize) -> Subspace {
        self.ech.clone().into_subspace().annihilator().embed(ambient, &self.flat)
    }
}

/// The space `{φ ∈ End(L) : φ(x) ∈ [L′, x] for every probe x}`, maintained
/// incrementally.
///
/// In the default blockwise mode each bidegree-shift component of φ is
/// constrained separately. Local maps are stable under the torus and grading
/// automorphisms, so every component of a local map satisfies each probe
/// constraint on its own; the blockwise space still contains every local
/// map.
pub struct ConstraintSystem<'a> {
    p: &'a LPrimeModel,
    blocks: Vec<BlockState>,
    labels: Vec<String>,
    mode: ConstraintMode,
}

/// How a probe constrains each block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ConstraintMode {
    /// `φ_s(x) ∈ [L′, x]`. Holds for every local map.
    #[default]
    Local,
    /// `φ_s(x) ∈ [L′_s, x]`: the witness for the shift-`s` component is
    /// taken from the matching component of L′. Stronger than locality when
    /// x is not homogeneous; no guarantee that local maps satisfy it.
    HomogeneousWitness,
}

impl<'a> ConstraintSystem<'a> {
    /// Blockwise system over the bidegree shifts of L.
    pub fn new(p: &'a LPrimeModel) -> Self {
        let dim = p.dim_l();
        let blocks =
            p.base().grading().shift_blocks().iter().map(|(s, es)| BlockState::new(Some(s.clone()), dim, es)).collect();
        Self { p, blocks, labels: Vec::new(), mode: ConstraintMode::Local }
    }

    /// Blockwise system in the given mode.
    pub fn with_mode(p: &'a LPrimeModel, mode: ConstraintMode) -> Self {
        Self { mode, ..Self::new(p) }
    }

    /// One block holding every matrix entry.
    pub fn whole(p: &'a LPrimeModel) -> Self {
        let dim = p.dim_l();
        let entries: Vec<(usize, usize)> = (0..dim).flat_map(|i| (0..dim).map(move |j| (i, j))).collect();
        Self { p, blocks: vec![BlockState::new(None, dim, &entries)], labels: Vec::new(), mode: ConstraintMode::Local }
    }

    pub fn add_probe(&mut self, probe: &Probe) {
        match self.mode {
            ConstraintMode::Local => {
                let allowed = orbit(&probe.vector, self.p);
                self.impose(&probe.vector, &allowed);
            }
            ConstraintMode::HomogeneousWitness => self.impose_witness(&probe.vector),
        }
        self.labels.push(probe.label.clone());
    }

    /// Adds the probe only if it shrinks the space; returns whether it did.
    pub fn try_probe(&mut self, probe: &Probe) -> bool {
        let before = self.dim();
        self.add_probe(probe);
        if self.dim() < before {
            true
        } else {
            self.labels.pop();
            false
        }
    }

    fn impose_witness(&mut self, x: &SparseVec) {
        let p = self.p;
        let d = p.dim_l();
        let ge = p.ext().grading();
        self.blocks.par_iter_mut().for_each(|b| {
            let s = b.shift.clone().expect("witness mode needs a blockwise system");
            let vs: Vec<SparseVec> =
                (0..p.dim_lprime()).filter(|&u| ge.cell_of(u) == &s).map(|u| p.act(&SparseVec::unit(u), x)).collect();
            let ann: Vec<Vec<Rational>> =
                Subspace::span(d, &vs).annihilator().basis().iter().map(|y| y.to_dense(d)).collect();
            b.impose(x, &ann);
        });
    }

    pub fn mode(&self) -> ConstraintMode {
        self.mode
    }
    /// Imposes `φ(x) ∈ allowed` for an arbitrary subspace.
    pub fn impose(&mut self, x: &SparseVec, allowed: &Subspace) {
        let d = self.p.dim_l();
        let ann: Vec<Vec<Rational>> = allowed.annihilator().basis().iter().map(|y| y.to_dense(d)).collect();
        if ann.is_empty() {
            return;
        }
        self.blocks.par_iter_mut().for_each(|b| b.impose(x, &ann));
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(BlockState::free_dim).sum()
    }

    pub fn space(&self) -> Subspace {
        let d = self.p.dim_l();
        let pieces: Vec<Subspace> = self.blocks.par_iter().map(|b| b.space(d * d)).collect();
        if pieces.len() == 1 {
            return pieces.into_iter().next().unwrap();
        }
        Subspace::from_disjoint_blocks(d * d, pieces)
    }
}

/// Blockwise constrained space for a probe list.
pub fn constrained_space(p: &LPrimeModel, probes: &[Probe]) -> Subspace {
    let mut sys = ConstraintSystem::new(p);
    for pr in probes {
        sys.add_probe(pr);
    }
    sys.space()
}

/// Blockwise space under [`ConstraintMode::HomogeneousWitness`].
pub fn witness_space(p: &LPrimeModel, probes: &[Probe]) -> Subspace {
    let mut sys = ConstraintSystem::with_mode(p, ConstraintMode::HomogeneousWitness);
    for pr in probes {
        sys.add_probe(pr);
    }
    sys.space()
}

/// Reference path without the bigrading: one linear system on all dim(L)²
/// entries.
pub fn constrained_space_whole(p: &LPrimeModel, probes: &[Probe]) -> Subspace {
    let mut sys = ConstraintSystem::whole(p);
    for pr in probes {
        sys.add_probe(pr);
    }
    sys.space()
}

/// Maps with `φ(h₀) = 0` that are local at the Cartan probes `hᵢ` and
/// `h_ik`, where h₀ is built from `t` (checked or not).
pub fn cartan_collapse_space(p: &LPrimeModel, t: &SeparatingScalar) -> Subspace {
    let a = p.base();
    let probes = proof_probes(p, t);
    let mut sys = ConstraintSystem::new(p);
    let h0 = &probes[0];
    debug_assert_eq!(h0.label, "h0");
    sys.impose(&h0.vector, &Subspace::zero(a.dim()));
    let cartan = a.cartan();
    for pr in &probes[1..] {
        if pr.vector.indices().all(|i| cartan.contains(&i)) {
            sys.add_probe(pr);
        }
    }
    sys.space()
}
