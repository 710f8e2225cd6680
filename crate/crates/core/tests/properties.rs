use std::sync::Arc;

use proptest::prelude::*;

use ratloop::catalog::example;
use ratloop::cdga::{DGAlgebra, Element};
use ratloop::linalg::scalar::{int, sign};
use ratloop::linalg::{kernel_basis, rref, solve, SparseMatrix, SparseVec};

fn model(name: &str) -> Arc<DGAlgebra> {
    example(name).unwrap().primary().model.clone().unwrap().source().clone()
}

fn element(a: &DGAlgebra, degree: i32, coeffs: &[i64]) -> Element {
    let dim = a.dim(degree);
    let v = SparseVec::from_entries(coeffs.iter().take(dim).enumerate().map(|(i, c)| (i, int(*c))).collect());
    a.from_coords(degree, &v)
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, 12)
}

fn dense(rows: usize, cols: usize) -> impl Strategy<Value = SparseMatrix> {
    prop::collection::vec(-3i64..=3, rows * cols).prop_map(move |v| {
        let data: Vec<Vec<_>> = v.chunks(cols).map(|r| r.iter().map(|x| int(*x)).collect()).collect();
        SparseMatrix::from_dense(&data)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn leibniz_and_graded_commutativity(p in 0i32..9, q in 0i32..9, x in coeffs(), y in coeffs()) {
        let a = model("s2xs4");
        let u = element(&a, p, &x);
        let v = element(&a, q, &y);
        let lhs = a.d(&a.mul(&u, &v));
        let rhs = a.mul(&a.d(&u), &v).add(&a.mul(&u, &a.d(&v)).scale(&sign(p as i64)));
        prop_assert_eq!(lhs, rhs);
        let swapped = a.mul(&v, &u).scale(&sign((p * q) as i64));
        prop_assert_eq!(a.mul(&u, &v), swapped);
        prop_assert!(a.d(&a.d(&u)).is_zero());
    }

    #[test]
    fn products_are_associative(p in 0i32..6, q in 0i32..6, r in 0i32..6, x in coeffs(), y in coeffs(), z in coeffs()) {
        let a = model("cp3");
        let (u, v, w) = (element(&a, p, &x), element(&a, q, &y), element(&a, r, &z));
        prop_assert_eq!(a.mul(&a.mul(&u, &v), &w), a.mul(&u, &a.mul(&v, &w)));
    }

    #[test]
    fn rank_nullity(m in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| dense(r, c))) {
        let rank = m.rank();
        prop_assert_eq!(rank + kernel_basis(&m).dim(), m.cols());
        prop_assert_eq!(rank, m.transpose().rank());
        let (reduced, pivots) = rref(&m);
        prop_assert_eq!(pivots.len(), rank);
        prop_assert_eq!(rref(&reduced).0, reduced);
    }

    #[test]
    fn solve_recovers_consistent_systems(m in dense(4, 5), x in prop::collection::vec(-3i64..=3, 5)) {
        let x = SparseVec::from_dense(&x.iter().map(|c| int(*c)).collect::<Vec<_>>());
        let b = m.mul_vec(&x);
        let sol = solve(&m, &b).unwrap().expect("b lies in the image");
        prop_assert_eq!(m.mul_vec(&sol), b);
    }

    #[test]
    fn shriek_is_linear_over_the_source(name in prop::sample::select(vec!["cp1_in_cp3", "cp2_in_cp4", "s2xs4_to_s6_deg2", "s2xs2_swap"]),
                                        p in 0i32..9, q in 0i32..9, x in coeffs(), y in coeffs()) {
        let setup = example(name).unwrap().setup().unwrap();
        let (a, b) = (setup.f.source().clone(), setup.f.target().clone());
        let u = element(&a, p, &x);
        let v = element(&b, q, &y);
        let lhs = setup.shriek.apply(&b.mul(&setup.f.apply(&u), &v));
        let rhs = a.mul(&u, &setup.shriek.apply(&v));
        prop_assert_eq!(lhs, rhs);
    }
}
