mod common;

use common::{dim, monomial};
use proptest::prelude::*;
use spinor_torsion::monomial::{
    mono_kron, mono_matmul, shape_of, type_of, EntryType, MonomialMatrix,
};
use spinor_torsion::unit::Unit;

fn pair_with_dims() -> impl Strategy<
    Value = (
        MonomialMatrix,
        MonomialMatrix,
        MonomialMatrix,
        MonomialMatrix,
    ),
> {
    (dim(2), dim(2)).prop_flat_map(|(a, b)| (monomial(a), monomial(a), monomial(b), monomial(b)))
}

fn triple() -> impl Strategy<Value = (MonomialMatrix, MonomialMatrix, MonomialMatrix)> {
    dim(4).prop_flat_map(|d| (monomial(d), monomial(d), monomial(d)))
}

proptest! {
    #[test]
    fn mixed_product_law((m, m2, n, n2) in pair_with_dims()) {
        let left = mono_matmul(&mono_kron(&m, &n), &mono_kron(&m2, &n2)).unwrap();
        let right = mono_kron(&mono_matmul(&m, &m2).unwrap(), &mono_matmul(&n, &n2).unwrap());
        prop_assert_eq!(left.to_dense(), right.to_dense());
        prop_assert_eq!(left, right);
    }

    #[test]
    fn product_matches_dense((a, b, _) in triple()) {
        let dense = a.to_dense().mul(&b.to_dense()).unwrap();
        prop_assert_eq!(mono_matmul(&a, &b).unwrap().to_dense(), dense);
    }

    #[test]
    fn kron_matches_dense((m, _, n, _) in pair_with_dims()) {
        prop_assert_eq!(mono_kron(&m, &n).to_dense(), m.to_dense().kron(&n.to_dense()));
    }

    #[test]
    fn product_is_associative((a, b, c) in triple()) {
        let ab_c = mono_matmul(&mono_matmul(&a, &b).unwrap(), &c).unwrap();
        let a_bc = mono_matmul(&a, &mono_matmul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
    }

    #[test]
    fn shape_of_product_composes((a, b, _) in triple()) {
        let ab = mono_matmul(&a, &b).unwrap();
        prop_assert_eq!(shape_of(&ab), shape_of(&a).compose(&shape_of(&b)).unwrap());
    }

    #[test]
    fn shape_of_kron_is_kron((m, _, n, _) in pair_with_dims()) {
        prop_assert_eq!(shape_of(&mono_kron(&m, &n)), shape_of(&m).kron(&shape_of(&n)));
    }

    #[test]
    fn identity_is_neutral((a, _, _) in triple()) {
        let id = MonomialMatrix::identity(a.dim());
        prop_assert_eq!(&mono_matmul(&id, &a).unwrap(), &a);
        prop_assert_eq!(&mono_matmul(&a, &id).unwrap(), &a);
    }

    #[test]
    fn type_reflects_coefficients((a, _, _) in triple()) {
        let real = a.coeffs().iter().all(|u| u.is_real());
        let imag = a.coeffs().iter().all(|u| !u.is_real());
        match type_of(&a) {
            Ok(EntryType::Real) => prop_assert!(real),
            Ok(EntryType::Imaginary) => prop_assert!(imag),
            Err(_) => prop_assert!(!real && !imag),
        }
    }

    #[test]
    fn scaling_commutes_with_product((a, b, _) in triple(), e in 0u8..4) {
        let u = Unit::from_exponent(e);
        prop_assert_eq!(
            mono_matmul(&a.scaled(u), &b).unwrap(),
            mono_matmul(&a, &b).unwrap().scaled(u)
        );
    }
}

#[test]
fn mismatched_dimensions_are_rejected() {
    let a = MonomialMatrix::identity(2);
    let b = MonomialMatrix::identity(4);
    assert!(mono_matmul(&a, &b).is_err());
}
