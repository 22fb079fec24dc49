use std::collections::BTreeSet;

use cartansuper::exterior::{ExtElem, Monomial};
use cartansuper::families::{epsilon_weight, ham, VectorField};
use cartansuper::liesuper::{check_axioms, check_axioms_sampled, Violation};
use cartansuper::{build_family, build_lprime, AlgebraModel, Family, Matrix, Rational, SparseVec, WeightVec};

fn popcount_below(m: u64, j: usize) -> u32 {
    (m & ((1u64 << (j - 1)) - 1)).count_ones()
}

/// dim ker(div) on W(n)_d for d in −1..=n−2, from raw bitmask arithmetic.
fn s_dim_oracle(n: usize) -> usize {
    let mut total = 0;
    for d in -1..=(n as i64 - 2) {
        let k = (d + 1) as u32;
        let monos: Vec<u64> = (0..1u64 << n).filter(|m| m.count_ones() == k).collect();
        let targets: Vec<u64> = (0..1u64 << n).filter(|m| m.count_ones() + 1 == k).collect();
        let mut cols = Vec::new();
        for &m in &monos {
            for j in 1..=n {
                let bit = 1u64 << (j - 1);
                let col = if m & bit == 0 {
                    SparseVec::new()
                } else {
                    let sign = if popcount_below(m, j).is_multiple_of(2) { 1 } else { -1 };
                    let row = targets.iter().position(|&t| t == m & !bit).unwrap();
                    SparseVec::single(row, Rational::from(sign))
                };
                cols.push(col);
            }
        }
        let div = Matrix::from_columns(targets.len().max(1), &cols).unwrap();
        total += cols.len() - div.rank();
    }
    total
}

fn w_eps_weight(n: usize, m: u64, j: usize) -> Vec<i64> {
    let mut w: Vec<i64> = (0..n).map(|k| ((m >> k) & 1) as i64).collect();
    w[j - 1] -= 1;
    w
}

fn h_generator_weight(n: usize, k: usize) -> Vec<i64> {
    let r = n / 2;
    let mut w = vec![0; r];
    if k <= r {
        w[k - 1] = 1;
    } else if k <= 2 * r {
        w[k - r - 1] = -1;
    }
    w
}

fn roots_as_vecs(a: &AlgebraModel) -> BTreeSet<Vec<i64>> {
    a.root_set().into_iter().map(|w| w.0).collect()
}

fn eps_to_s_torus(w: &[i64]) -> Vec<i64> {
    w.windows(2).map(|p| p[0] - p[1]).collect()
}

#[test]
fn dimensions_match_oracles() {
    assert_eq!(build_family(Family::W, 4).unwrap().dim(), 4 * 16);
    assert_eq!(build_family(Family::W, 5).unwrap().dim(), 5 * 32);
    for n in [4, 5] {
        assert_eq!(build_family(Family::S, n).unwrap().dim(), s_dim_oracle(n));
    }
    assert_eq!(s_dim_oracle(4), 49);
    assert_eq!(build_family(Family::STilde, 4).unwrap().dim(), s_dim_oracle(4));
    assert_eq!(build_family(Family::STilde, 6).unwrap().dim(), s_dim_oracle(6));
    for n in [5, 6] {
        let fields: Vec<SparseVec> = Monomial::all(n)
            .into_iter()
            .filter(|m| m.degree() >= 1 && m.degree() < n)
            .map(|m| ham(&ExtElem::monomial(n, m, Rational::one())).unwrap())
            .collect();
        let rank = Matrix::from_columns(n << n, &fields).unwrap().rank();
        assert_eq!(rank, (1 << n) - 2);
        assert_eq!(build_family(Family::H, n).unwrap().dim(), rank);
    }
}

#[test]
fn lprime_dimensions() {
    let cases =
        [(Family::W, 4, 64), (Family::S, 4, 50), (Family::STilde, 4, 49), (Family::H, 5, 32), (Family::H, 6, 64)];
    for (f, n, d) in cases {
        let p = build_lprime(&build_family(f, n).unwrap()).unwrap();
        assert_eq!(p.dim_lprime(), d, "{f}({n})");
        assert_eq!(p.ext().basis()[..p.dim_l()], p.base().basis()[..]);
    }
}

#[test]
fn degree_zero_parts() {
    assert_eq!(build_family(Family::W, 4).unwrap().degree_component(0).len(), 16);
    assert_eq!(build_family(Family::S, 4).unwrap().degree_component(0).len(), 15);
    assert_eq!(build_family(Family::H, 5).unwrap().degree_component(0).len(), 10);
}

#[test]
fn grading_depths() {
    let range = |f, n| {
        let a = build_family(f, n).unwrap();
        (a.min_degree().unwrap(), a.max_degree().unwrap())
    };
    assert_eq!(range(Family::W, 4), (-1, 3));
    assert_eq!(range(Family::S, 4), (-1, 2));
    assert_eq!(range(Family::H, 5), (-1, 2));
    assert_eq!(range(Family::H, 6), (-1, 3));
    assert_eq!(range(Family::STilde, 4), (-1, 2));
    assert_eq!(build_family(Family::STilde, 4).unwrap().grading_modulus(), Some(4));
}

#[test]
fn s_basis_is_divergence_free() {
    for (f, n) in [(Family::S, 4), (Family::S, 5)] {
        let a = build_family(f, n).unwrap();
        for b in a.basis() {
            let terms = b.field_terms().expect("explicit vector field");
            let v = VectorField::from_terms(n, &terms).unwrap();
            assert!(v.divergence().is_zero(), "{b}");
        }
    }
}

#[test]
fn stilde_negative_part_uses_xi() {
    let a = build_family(Family::STilde, 4).unwrap();
    let minus = a.degree_component(-1);
    assert_eq!(minus.len(), 4);
    for i in minus {
        let terms = a.basis()[i].field_terms().unwrap();
        assert_eq!(terms.len(), 2, "{}", a.basis()[i]);
        assert!(terms.iter().any(|t| t.mono == Monomial::top(4) && t.coeff == Rational::from(-1)));
        assert!(terms.iter().any(|t| t.mono.degree() == 0 && t.coeff.is_one()));
    }
}

#[test]
fn w4_roots_match_epsilon_description() {
    let n = 4;
    let mut oracle = BTreeSet::new();
    for m in 0..1u64 << n {
        for j in 1..=n {
            let w = w_eps_weight(n, m, j);
            if w.iter().any(|&c| c != 0) {
                oracle.insert(w);
            }
        }
    }
    assert_eq!(roots_as_vecs(&build_family(Family::W, n).unwrap()), oracle);
}

#[test]
fn s4_and_stilde4_lack_removed_roots() {
    let n = 4;
    let removed: BTreeSet<Vec<i64>> = (1..=n).map(|i| w_eps_weight(n, (1 << n) - 1, i)).collect();
    let mut eps_oracle = BTreeSet::new();
    for m in (0..1u64 << n).filter(|m| m.count_ones() < n as u32) {
        for j in 1..=n {
            eps_oracle.insert(w_eps_weight(n, m, j));
        }
    }
    assert!(eps_oracle.is_disjoint(&removed));
    let torus_oracle: BTreeSet<Vec<i64>> =
        eps_oracle.iter().map(|w| eps_to_s_torus(w)).filter(|w| w.iter().any(|&c| c != 0)).collect();

    let s = build_family(Family::S, n).unwrap();
    let eps: BTreeSet<Vec<i64>> = s.basis().iter().map(|b| epsilon_weight(n, b).expect("ε-homogeneous")).collect();
    assert_eq!(eps, eps_oracle);
    assert_eq!(roots_as_vecs(&s), torus_oracle);

    let st = build_family(Family::STilde, n).unwrap();
    for b in st.basis() {
        if let Some(w) = epsilon_weight(n, b) {
            assert!(!removed.contains(&w), "{b}");
        }
    }
    assert_eq!(roots_as_vecs(&st), torus_oracle);
}

#[test]
fn h_roots_match_signed_sums() {
    for n in [5, 6] {
        let r = n / 2;
        let mut oracle = BTreeSet::new();
        for m in (1..(1u64 << n) - 1).filter(|m| m.count_ones() < n as u32) {
            let mut w = vec![0i64; r];
            for k in (1..=n).filter(|k| m >> (k - 1) & 1 == 1) {
                for (a, b) in w.iter_mut().zip(h_generator_weight(n, k)) {
                    *a += b;
                }
            }
            if w.iter().any(|&c| c != 0) {
                oracle.insert(w);
            }
        }
        let cube: BTreeSet<Vec<i64>> = (0..3usize.pow(r as u32))
            .map(|mut c| {
                (0..r)
                    .map(|_| {
                        let d = (c % 3) as i64 - 1;
                        c /= 3;
                        d
                    })
                    .collect::<Vec<i64>>()
            })
            .filter(|w| w.iter().any(|&c| c != 0))
            .collect();
        assert_eq!(oracle, cube);
        assert_eq!(roots_as_vecs(&build_family(Family::H, n).unwrap()), oracle, "H({n})");
    }
}

#[test]
fn weights_are_additive_under_bracket() {
    let a = build_family(Family::S, 4).unwrap();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let w = a.weight(i) + a.weight(j);
            for k in a.bracket_basis(i, j).indices() {
                assert_eq!(a.weight(k), &w);
            }
        }
    }
}

#[test]
fn full_axiom_scan_at_n4() {
    for f in [Family::W, Family::S, Family::STilde] {
        let r = check_axioms(&build_family(f, 4).unwrap());
        assert!(r.passed(), "{f}: {:?}", r.violation);
    }
    let h = check_axioms(&build_family(Family::H, 5).unwrap());
    assert!(h.passed());
    assert_eq!(h.triples_checked, 30 * 30 * 30);
}

#[test]
fn sampled_axioms_at_n6() {
    for f in [Family::STilde, Family::H] {
        let r = check_axioms_sampled(&build_family(f, 6).unwrap(), 5_000, 7);
        assert!(r.passed(), "{f}: {:?}", r.violation);
        assert_eq!(r.triples_checked, 5_000);
    }
}

#[test]
fn corrupted_bracket_breaks_jacobi() {
    let a = build_family(Family::W, 4).unwrap();
    let (i, j) = (0, 5);
    assert!(!a.bracket_basis(i, j).is_zero());
    let minus = Rational::from(-1);
    let bad = a.with_scaled_bracket(i, j, &minus).with_scaled_bracket(j, i, &minus);
    let r = check_axioms(&bad);
    assert!(matches!(r.violation, Some(Violation::Jacobi { .. })), "{:?}", r.violation);
}

#[test]
fn invalid_specs_are_rejected() {
    let msg = |f, n| build_family(f, n).unwrap_err().to_string();
    assert_eq!(msg(Family::H, 4), "H requires n > 4");
    assert_eq!(msg(Family::STilde, 5), "S̃ requires even n");
    assert_eq!(msg(Family::W, 3), "W requires n >= 4");
    assert_eq!(msg(Family::S, 2), "S requires n >= 4");
}

#[test]
fn json_round_trip_is_bit_exact() {
    for (f, n) in [(Family::W, 4), (Family::STilde, 4), (Family::H, 5)] {
        let a = build_family(f, n).unwrap();
        let s = a.to_json();
        let back = AlgebraModel::from_json(&s).unwrap();
        assert_eq!(back, a);
        assert_eq!(back.to_json(), s);
    }
}

#[test]
fn weight_display() {
    assert_eq!(WeightVec(vec![1, -1, 0]).to_string(), "(1,-1,0)");
}
