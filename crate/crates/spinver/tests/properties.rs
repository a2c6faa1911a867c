//! Property tests over randomly generated exact values.

use num_complex::Complex;
use proptest::prelude::*;
use spinver::clifford::{cl_mul, even_part, CliffordElement};
use spinver::exact::{kronecker, mat_mul, ratio, ExactMatrix, GaussianRational};

fn rational_strategy() -> impl Strategy<Value = GaussianRational> {
    ((-4i64..=4, 1i64..=4), (-4i64..=4, 1i64..=4))
        .prop_map(|((rn, rd), (in_, id))| Complex::new(ratio(rn, rd), ratio(in_, id)))
}

fn matrix_strategy(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec(rational_strategy(), rows * cols)
        .prop_map(move |entries| ExactMatrix::new(rows, cols, entries))
}

fn clifford_strategy(n: u32) -> impl Strategy<Value = CliffordElement> {
    prop::collection::vec((0u64..(1 << n), -3i64..=3), 0..4).prop_map(move |terms| {
        let mut acc = CliffordElement::zero(n);
        for (mask, coeff) in terms {
            let idx: Vec<u32> = (0..n).filter(|k| mask & (1 << k) != 0).map(|k| k + 1).collect();
            let blade = CliffordElement::basis_blade(n, &idx).unwrap();
            acc = acc.add(&blade.scale(&spinver::exact::rat(coeff))).unwrap();
        }
        acc
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn matrix_product_is_associative(
        a in matrix_strategy(2, 3),
        b in matrix_strategy(3, 2),
        c in matrix_strategy(2, 2),
    ) {
        let lhs = mat_mul(&mat_mul(&a, &b).unwrap(), &c).unwrap();
        let rhs = mat_mul(&a, &mat_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn conj_transpose_reverses_products(
        a in matrix_strategy(2, 3),
        b in matrix_strategy(3, 2),
    ) {
        let lhs = mat_mul(&a, &b).unwrap().conj_transpose();
        let rhs = mat_mul(&b.conj_transpose(), &a.conj_transpose()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kronecker_mixed_product(
        a in matrix_strategy(2, 2),
        b in matrix_strategy(2, 2),
        c in matrix_strategy(2, 2),
        d in matrix_strategy(2, 2),
    ) {
        let lhs = mat_mul(&kronecker(&a, &b), &kronecker(&c, &d)).unwrap();
        let rhs = kronecker(&mat_mul(&a, &c).unwrap(), &mat_mul(&b, &d).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn nullspace_vectors_annihilate(m in matrix_strategy(3, 4)) {
        let basis = m.nullspace();
        prop_assert_eq!(basis.len(), 4 - m.rank());
        for v in &basis {
            prop_assert!(mat_mul(&m, v).unwrap().is_zero());
        }
    }

    #[test]
    fn clifford_product_is_associative_and_even_part_idempotent(
        a in clifford_strategy(4),
        b in clifford_strategy(4),
        c in clifford_strategy(4),
    ) {
        let lhs = cl_mul(&cl_mul(&a, &b).unwrap(), &c).unwrap();
        let rhs = cl_mul(&a, &cl_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let even = even_part(&a);
        prop_assert_eq!(even_part(&even), even.clone());
    }
}
