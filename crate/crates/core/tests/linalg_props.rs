use proptest::prelude::*;

use cartansuper::{Matrix, Rational, SparseVec, Subspace};

fn arb_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r).prop_map(|rows| Matrix::from_dense(&rows))
    })
}

fn arb_shaped(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(proptest::collection::vec(-3i64..=3, cols), rows)
        .prop_map(|rows| Matrix::from_dense(&rows))
}

fn arb_vec(len: usize) -> impl Strategy<Value = SparseVec> {
    proptest::collection::vec(-4i64..=4, len)
        .prop_map(|v| SparseVec::from_entries(v.into_iter().enumerate().map(|(i, c)| (i, Rational::from(c)))))
}

fn arb_subspace(dim: usize, max_gens: usize) -> impl Strategy<Value = Subspace> {
    proptest::collection::vec(arb_vec(dim), 0..=max_gens).prop_map(move |vs| Subspace::span(dim, &vs))
}

proptest! {
    #[test]
    fn rank_equals_rank_of_transpose(m in arb_matrix(7, 7)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rank_nullity(m in arb_matrix(7, 9)) {
        prop_assert_eq!(m.rank() + m.kernel().dim(), m.ncols());
    }

    #[test]
    fn kernel_vectors_are_killed(m in arb_matrix(6, 8)) {
        for v in m.kernel().basis() {
            prop_assert!(m.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn kernel_membership_matches_product(m in arb_shaped(4, 5), v in arb_vec(5)) {
        let k = m.kernel();
        prop_assert_eq!(k.member(&v).unwrap(), m.mul_vec(&v).is_zero());
    }

    #[test]
    fn solve_finds_preimage_of_image(m in arb_shaped(6, 6), x in arb_vec(6)) {
        let b = m.mul_vec(&x);
        let y = m.solve(&b).unwrap().expect("b lies in the column space");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn solve_reports_infeasible(m in arb_shaped(6, 3), b in arb_vec(6)) {
        let col_space = Subspace::span(6, &(0..3).map(|j| m.column(j)).collect::<Vec<_>>());
        prop_assert_eq!(m.solve(&b).unwrap().is_some(), col_space.contains(&b));
    }

    #[test]
    fn grassmann_formula(u in arb_subspace(6, 4), w in arb_subspace(6, 4)) {
        let s = u.sum(&w).unwrap();
        let i = u.intersect(&w).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        prop_assert!(i.is_subspace_of(&u) && i.is_subspace_of(&w));
        prop_assert!(u.is_subspace_of(&s) && w.is_subspace_of(&s));
    }

    #[test]
    fn annihilator_is_orthogonal_complement(u in arb_subspace(7, 5)) {
        let ann = u.annihilator();
        prop_assert_eq!(ann.dim() + u.dim(), 7);
        for a in ann.basis() {
            for b in u.basis() {
                prop_assert!(a.dot(b).is_zero());
            }
        }
        prop_assert_eq!(ann.annihilator(), u);
    }

    #[test]
    fn coordinates_reconstruct(u in arb_subspace(6, 4), c in proptest::collection::vec(-3i64..=3, 4)) {
        let v = u
            .basis()
            .iter()
            .zip(&c)
            .fold(SparseVec::new(), |acc, (b, &k)| acc.add_scaled(b, &Rational::from(k)));
        let coords = u.coordinates(&v).expect("v is in u");
        let back = u
            .basis()
            .iter()
            .zip(&coords)
            .fold(SparseVec::new(), |acc, (b, k)| acc.add_scaled(b, k));
        prop_assert_eq!(back, v);
    }

    #[test]
    fn matrix_product_is_associative(a in arb_shaped(4, 4), x in arb_vec(4)) {
        let sq = a.mul(&a).unwrap();
        prop_assert_eq!(sq.mul_vec(&x), a.mul_vec(&a.mul_vec(&x)));
    }

    #[test]
    fn flat_round_trip(m in arb_matrix(5, 6)) {
        prop_assert_eq!(Matrix::from_flat(m.nrows(), m.ncols(), &m.to_flat()), m);
    }
}

#[test]
fn rational_arithmetic_stays_exact() {
    let third = Rational::new(1, 3).unwrap();
    let sum = &(&third + &third) + &third;
    assert!(sum.is_one());
    let big = "340282366920938463463374607431768211457/3".parse::<Rational>().unwrap();
    assert_eq!((&big * &Rational::from(3)).to_string(), "340282366920938463463374607431768211457");
}
