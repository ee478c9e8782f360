use num::{One, Signed, Zero};
use proptest::prelude::*;

use quadri_core::exactlin::{
    format_scalar, frac, int, map_of_tensor, parse_scalar, twist, BilinearOp, Matrix, Scalar, TensorElement,
};
use quadri_core::search::random_skew_tensor;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| frac(p, q))
}

fn matrix(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(scalar(), n * n).prop_map(move |v| Matrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
}

fn vector(n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(scalar(), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_text_round_trips(x in scalar()) {
        prop_assert_eq!(parse_scalar(&format_scalar(&x)).unwrap(), x);
    }

    #[test]
    fn matrix_product_is_associative(a in matrix(3), b in matrix(3), c in matrix(3)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn determinant_is_multiplicative(a in matrix(3), b in matrix(3)) {
        prop_assert_eq!(a.mul(&b).determinant(), a.determinant() * b.determinant());
    }

    #[test]
    fn inverse_exists_iff_determinant_nonzero(a in matrix(3)) {
        match a.inverse() {
            Some(inv) => {
                prop_assert!(!a.determinant().is_zero());
                prop_assert_eq!(a.mul(&inv), Matrix::identity(3));
                prop_assert_eq!(a.rank(), 3);
            }
            None => {
                prop_assert!(a.determinant().is_zero());
                prop_assert!(a.rank() < 3);
            }
        }
    }

    #[test]
    fn solve_inverts_mul_vec(a in matrix(3), x in vector(3)) {
        let b = a.mul_vec(&x);
        if let Some(y) = a.solve(&b) {
            prop_assert_eq!(&a.mul_vec(&y), &b);
        }
        if !a.determinant().is_zero() {
            prop_assert_eq!(a.solve(&b), Some(x));
        }
    }

    #[test]
    fn transpose_reverses_products(a in matrix(2), b in matrix(3)) {
        let a3 = Matrix::block(&a, &Matrix::zeros(2, 1), &Matrix::zeros(1, 2), &Matrix::identity(1));
        prop_assert_eq!(a3.mul(&b).transpose(), b.transpose().mul(&a3.transpose()));
        prop_assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn bilinear_apply_is_bilinear(
        flat in prop::collection::vec(scalar(), 8),
        x in vector(2), y in vector(2), z in vector(2), c in scalar(),
    ) {
        let op = BilinearOp::from_flat(2, flat).unwrap();
        let xy: Vec<Scalar> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let lhs = op.apply(&xy, &z);
        let rhs: Vec<Scalar> = op.apply(&x, &z).iter().zip(op.apply(&y, &z)).map(|(a, b)| a + b).collect();
        prop_assert_eq!(lhs, rhs);
        let cz: Vec<Scalar> = z.iter().map(|a| a * &c).collect();
        let scaled: Vec<Scalar> = op.apply(&x, &z).iter().map(|a| a * &c).collect();
        prop_assert_eq!(op.apply(&x, &cz), scaled);
    }

    #[test]
    fn conjugation_is_a_homomorphism(flat in prop::collection::vec(scalar(), 8), f in matrix(2), x in vector(2), y in vector(2)) {
        prop_assume!(!f.determinant().is_zero());
        let op = BilinearOp::from_flat(2, flat).unwrap();
        let f_inv = f.inverse().unwrap();
        let moved = op.conjugate(&f, &f_inv);
        prop_assert_eq!(f.mul_vec(&op.apply(&x, &y)), moved.apply(&f.mul_vec(&x), &f.mul_vec(&y)));
        prop_assert_eq!(moved.conjugate(&f_inv, &f), op);
    }

    #[test]
    fn twist_is_an_involution(m in matrix(3)) {
        let r = TensorElement::new(m).unwrap();
        prop_assert_eq!(twist(&twist(&r)), r.clone());
        prop_assert_eq!(r.is_skew(), twist(&r) == r.neg());
    }

    #[test]
    fn random_skew_tensors_are_skew(dim in 1usize..5, seed in any::<u64>(), bound in 1i64..6) {
        let r = random_skew_tensor(dim, seed, bound);
        prop_assert_eq!(r.dim(), dim);
        prop_assert_eq!(twist(&r), r.neg());
        prop_assert_eq!(&random_skew_tensor(dim, seed, bound), &r);
        for c in r.coeffs().entries() {
            prop_assert!(c.abs() <= int(bound));
        }
    }

    #[test]
    fn omega_inverts_the_tensor_matrix(seed in any::<u64>()) {
        let r = random_skew_tensor(2, seed, 4);
        let m = map_of_tensor(&r);
        match m.omega {
            Some(omega) => {
                prop_assert!(omega.gram().is_skew());
                prop_assert_eq!(omega.gram().mul(r.coeffs()), Matrix::identity(2));
            }
            None => prop_assert!(r.is_zero()),
        }
    }
}

#[test]
fn scalar_parsing_rejects_garbage() {
    assert!(parse_scalar("1/0").is_err());
    assert!(parse_scalar("x").is_err());
    assert_eq!(parse_scalar(" -6/4 ").unwrap(), frac(-3, 2));
    assert_eq!(format_scalar(&frac(4, 2)), "2");
    assert!(Scalar::one() == int(1));
}
