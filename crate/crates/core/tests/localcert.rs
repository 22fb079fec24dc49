use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cartansuper::derivations::{ad_image, EndMap};
use cartansuper::families::LPrimeModel;
use cartansuper::liesuper::Cell;
use cartansuper::localcert::*;
use cartansuper::{build_family, build_lprime, Family, Matrix, Rational, SparseVec, Subspace, WeightVec};

fn lprime(f: Family, n: usize) -> LPrimeModel {
    build_lprime(&build_family(f, n).unwrap()).unwrap()
}

fn random_vec(rng: &mut ChaCha8Rng, dim: usize, density: f64) -> SparseVec {
    let mut entries = Vec::new();
    for i in 0..dim {
        if rng.gen_bool(density) {
            entries.push((i, Rational::from(rng.gen_range(-3..=3))));
        }
    }
    SparseVec::from_entries(entries)
}

fn ad(p: &LPrimeModel, u: &SparseVec) -> EndMap {
    EndMap::new(p.ad_matrix(u), p.base()).unwrap()
}

fn probe_pool(p: &LPrimeModel) -> Vec<Probe> {
    let t = separating_t(p);
    let mut pool = proof_probes(p, &t);
    pool.extend(random_probes(p.base(), 40, 11));
    pool
}

#[test]
fn orbit_examples() {
    let p = lprime(Family::W, 4);
    let a = p.base();
    assert_eq!(orbit(&SparseVec::new(), &p).dim(), 0);

    let h1 = a.cartan_element(0);
    let moved: Vec<SparseVec> = (0..a.dim()).filter(|&i| a.weight(i).0[0] != 0).map(SparseVec::unit).collect();
    assert_eq!(orbit(&h1, &p), Subspace::span(a.dim(), &moved));

    let d1 = SparseVec::unit(a.degree_component(-1)[0]);
    let cols: Vec<SparseVec> = (0..p.dim_lprime()).map(|u| p.act(&SparseVec::unit(u), &d1)).collect();
    let m = Matrix::from_columns(a.dim(), &cols).unwrap();
    assert_eq!(orbit(&d1, &p).dim(), p.dim_lprime() - m.kernel().dim());
}

#[test]
fn locality_examples() {
    let p = lprime(Family::W, 4);
    let a = p.base();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let h1 = a.cartan_element(0);
    let h2 = a.cartan_element(1);
    let id = EndMap::identity(a);
    assert!(!is_local_at(&id, &h1, &p));
    assert!(!is_2local_at(&id, &h1, &h2, &p));
    for _ in 0..10 {
        let x = random_vec(&mut rng, a.dim(), 0.2);
        assert!(is_local_at(&EndMap::zero(a), &x, &p));
        let u = random_vec(&mut rng, p.dim_lprime(), 0.2);
        let phi = ad(&p, &u);
        let y = random_vec(&mut rng, a.dim(), 0.2);
        assert!(is_local_at(&phi, &x, &p));
        assert!(is_2local_at(&phi, &x, &y, &p));
    }
}

#[test]
fn locality_is_scale_invariant() {
    let p = lprime(Family::H, 5);
    let a = p.base();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let m = Matrix::from_rows(a.dim(), (0..a.dim()).map(|_| random_vec(&mut rng, a.dim(), 0.1)).collect()).unwrap();
        let phi = EndMap::new(m, a).unwrap_or_else(|_| EndMap::zero(a));
        let x = random_vec(&mut rng, a.dim(), 0.15);
        let lambda = Rational::new(rng.gen_range(1..=5), rng.gen_range(1..=5)).unwrap();
        let lambda = if rng.gen_bool(0.5) { -lambda } else { lambda };
        assert_eq!(orbit(&x, &p), orbit(&x.scale(&lambda), &p));
        assert_eq!(is_local_at(&phi, &x, &p), is_local_at(&phi, &x.scale(&lambda), &p));
    }
}

#[test]
fn two_local_implies_local() {
    let p = lprime(Family::H, 5);
    let a = p.base();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let c = certify_with(&p, &CertifyConfig { budget: Some(5), ..Default::default() });
    let residual = EndMap::from_flat(c.residual.as_ref().unwrap(), a).unwrap();
    for _ in 0..30 {
        let x = random_vec(&mut rng, a.dim(), 0.2);
        let y = random_vec(&mut rng, a.dim(), 0.2);
        if is_2local_at(&residual, &x, &y, &p) {
            assert!(is_local_at(&residual, &x, &p) && is_local_at(&residual, &y, &p));
        }
    }
}

#[test]
fn decomposition_reconstructs() {
    let p = lprime(Family::W, 4);
    let a = p.base();
    let g = a.grading();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..5 {
        let flat = random_vec(&mut rng, a.dim() * a.dim(), 0.05);
        let phi = EndMap::from_flat(&flat, a).unwrap();
        let parts = bigrade_decompose(&phi, a);
        let sum = parts.values().fold(SparseVec::new(), |acc, m| acc.add(&m.to_flat()));
        assert_eq!(sum, flat);
        for (s, m) in &parts {
            for (k, _) in m.to_flat().iter() {
                assert_eq!(&g.entry_shift(k / a.dim(), k % a.dim()), s);
            }
        }
    }
    let theta = WeightVec::zero(4);
    let h1 = bigrade_decompose(&ad(&p, &a.cartan_element(0)), a);
    assert_eq!(h1.keys().collect::<Vec<_>>(), vec![&Cell { degree: 0, weight: theta }]);
    let d1 = a.degree_component(-1).into_iter().find(|&i| a.weight(i).0 == vec![-1, 0, 0, 0]).unwrap();
    let parts = bigrade_decompose(&ad(&p, &SparseVec::unit(d1)), a);
    assert_eq!(parts.keys().collect::<Vec<_>>(), vec![&Cell { degree: -1, weight: WeightVec(vec![-1, 0, 0, 0]) }]);
}

#[test]
fn stilde_shifts_wrap_mod_n() {
    let p = lprime(Family::STilde, 4);
    let a = p.base();
    let g = a.grading();
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let u = random_vec(&mut rng, a.dim(), 0.3);
    for s in bigrade_decompose(&ad(&p, &u), a).keys() {
        assert!((-1..=2).contains(&s.degree));
    }
    for s in g.shift_blocks().keys() {
        assert!((-1..=2).contains(&s.degree));
    }
}

#[test]
fn separating_scalars() {
    let cases = [(Family::W, 4, 2), (Family::S, 4, 3), (Family::STilde, 4, 3), (Family::H, 5, 2), (Family::H, 6, 2)];
    for (f, n, t) in cases {
        let p = lprime(f, n);
        let s = separating_t(&p);
        assert_eq!(s.t, t, "{f}({n})");
        assert!(s.verified);
        let roots = p.ext().root_set();
        assert_eq!(s.checks.len(), roots.len());
        let tv = s.value();
        for r in &roots {
            assert!(!r.eval_at_powers(&tv).is_zero());
        }
        assert!(check_separating(t - 1, &roots).is_err());
    }
}

#[test]
fn proof_probe_shape() {
    let p = lprime(Family::W, 4);
    let a = p.base();
    let t = separating_t(&p);
    let probes = proof_probes(&p, &t);
    let h0 = &probes[0];
    assert_eq!(h0.label, "h0");
    let coeffs: Vec<Rational> = a.cartan().iter().map(|&h| h0.vector.get(h)).collect();
    assert_eq!(coeffs, [2, 4, 8, 16].map(Rational::from).to_vec());
    assert!(probes.len() <= 3 * a.dim());
    assert!(probes.iter().all(|pr| !pr.vector.is_zero()));

    let st = lprime(Family::STilde, 4);
    let probes = proof_probes(&st, &separating_t(&st));
    let d = st.base().degree_component(-1);
    for pr in &probes {
        for i in pr.vector.indices().filter(|i| d.contains(i)) {
            assert!(st.base().basis()[i].to_string().contains("x1x2x3x4"), "{}", pr.label);
        }
    }
}

#[test]
fn constraints_are_sound_and_monotone() {
    for (f, n) in [(Family::H, 5), (Family::W, 4)] {
        let p = lprime(f, n);
        let img = ad_image(&p);
        let pool = probe_pool(&p);
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let us: Vec<SparseVec> = (0..50).map(|_| random_vec(&mut rng, p.dim_lprime(), 0.2)).collect();
        let pairs = if f == Family::W { 4 } else { 20 };
        for _ in 0..pairs {
            let mut idx: Vec<usize> = (0..pool.len()).collect();
            idx.shuffle(&mut rng);
            let k = rng.gen_range(1..pool.len() / 2);
            let small: Vec<Probe> = idx[..k].iter().map(|&i| pool[i].clone()).collect();
            let large: Vec<Probe> = idx[..2 * k].iter().map(|&i| pool[i].clone()).collect();
            let cs = constrained_space(&p, &small);
            let cl = constrained_space(&p, &large);
            assert!(cl.is_subspace_of(&cs));
            assert!(img.is_subspace_of(&cl));
            for u in &us {
                assert!(cl.contains(&ad(&p, u).to_flat()));
            }
        }
    }
}

#[test]
fn blockwise_space_sits_inside_whole_space() {
    let p = lprime(Family::H, 5);
    let probes = proof_probes(&p, &separating_t(&p));
    let block = constrained_space(&p, &probes[..20]);
    let whole = constrained_space_whole(&p, &probes[..20]);
    assert!(block.is_subspace_of(&whole));
    assert!(ad_image(&p).is_subspace_of(&block));
}

#[test]
fn single_cartan_probe_is_weak() {
    let p = lprime(Family::W, 4);
    let h1 = Probe::new("h1", p.base().cartan_element(0));
    assert!(constrained_space(&p, &[h1]).dim() > ad_image(&p).dim());
}

#[test]
fn proof_and_basis_probes_leave_a_gap() {
    let p = lprime(Family::W, 4);
    let a = p.base();
    let mut probes = proof_probes(&p, &separating_t(&p));
    probes.extend((0..a.dim()).map(|i| Probe::new(a.basis()[i].to_string(), SparseVec::unit(i))));
    let c = constrained_space(&p, &probes);
    let img = ad_image(&p);
    assert!(img.is_subspace_of(&c));
    assert!(c.dim() > img.dim());
}

#[test]
fn homogeneous_witness_reading_closes_w4() {
    let p = lprime(Family::W, 4);
    let probes = proof_probes(&p, &separating_t(&p));
    let w = witness_space(&p, &probes);
    assert_eq!(w, ad_image(&p));
    assert!(w.is_subspace_of(&constrained_space(&p, &probes)));
}

#[test]
fn certify_desk_scale_instances() {
    for (f, n) in [(Family::W, 4), (Family::S, 4), (Family::STilde, 4), (Family::H, 5)] {
        let p = lprime(f, n);
        let c = certify(&p);
        assert!(c.is_certified(), "{f}({n}): dim C {} vs {}", c.dim_c, c.dim_ad_lprime);
        assert_eq!(c.dim_c, c.dim_ad_lprime);
        assert!(c.probe_labels.len() - c.proof_probe_count <= c.budget);
        let c2 = certify_2local(&p, &c, &CertifyConfig::default());
        assert_eq!(c2.twolocal_verdict, Some(Verdict::Certified));
        let r = c2.twolocal.unwrap();
        assert_eq!(r.inner_pairs_feasible, 100);
    }
}

#[test]
fn recorded_probes_reproduce_the_space() {
    let p = lprime(Family::S, 4);
    let cfg = CertifyConfig { seed: 4, ..Default::default() };
    let c = certify_with(&p, &cfg);
    let mut pool = proof_probes(&p, &separating_t(&p));
    pool.extend(random_probes(p.base(), cfg.effective_max_attempts(&p), cfg.seed));
    let recorded: Vec<Probe> =
        c.probe_labels.iter().map(|l| pool.iter().find(|pr| &pr.label == l).unwrap().clone()).collect();
    assert_eq!(constrained_space(&p, &recorded), ad_image(&p));
    let again = certify_with(&p, &cfg);
    assert_eq!(again.probe_labels, c.probe_labels);
}

#[test]
fn tiny_budget_is_inconclusive() {
    let p = lprime(Family::W, 4);
    let cfg = CertifyConfig { budget: Some(1), ..Default::default() };
    let c = certify_with(&p, &cfg);
    assert_eq!(c.verdict, Verdict::Inconclusive);
    assert!(c.dim_c > c.dim_ad_lprime);
    assert!(!ad_image(&p).contains(c.residual.as_ref().unwrap()));
    let c2 = certify_2local(&p, &c, &cfg);
    assert_eq!(c2.twolocal_verdict, Some(Verdict::Inconclusive));
}

#[test]
fn forcing_t_one_weakens_h0() {
    let p = lprime(Family::W, 4);
    let good = cartan_collapse_space(&p, &separating_t(&p));
    let forced = cartan_collapse_space(&p, &SeparatingScalar::forced(1));
    assert!(good.is_subspace_of(&forced));
    assert!(forced.dim() > good.dim());
    assert!(check_separating(1, &p.ext().root_set()).is_err());
}
