use proptest::prelude::*;
use qgrass::classical_oracle::{
    brute_force_dimension, classical_bigcell_action, classical_dimension, matrix_action, CellPoint, GMatrix, GrassmannNumber, ParabolicPoint,
};
use rand::rngs::StdRng;
use rand::SeedableRng;

#[test]
fn closed_form_matches_enumeration() {
    for ne in 0..=4 {
        for no in 0..=3 {
            for d in 0..=4 {
                assert_eq!(classical_dimension(ne, no, d), brute_force_dimension(ne, no, d), "({ne}|{no}) degree {d}");
            }
        }
    }
    assert_eq!(classical_dimension(4, 2, 2), 19);
}

#[test]
fn identity_acts_trivially() {
    let mut rng = StdRng::seed_from_u64(11);
    let p = CellPoint::random(&mut rng, 4);
    assert_eq!(classical_bigcell_action(&ParabolicPoint::identity(), &p).unwrap(), p);
    assert_eq!(matrix_action(&GMatrix::identity(5), &p).unwrap(), p);
}

#[test]
fn nilpotent_numbers_are_not_invertible() {
    assert!(GrassmannNumber::theta(0).inverse().is_none());
    let x = GrassmannNumber::int(2).add(&GrassmannNumber::theta(0).mul(&GrassmannNumber::theta(1)));
    assert_eq!(x.mul(&x.inverse().unwrap()), GrassmannNumber::int(1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn action_formula_matches_matrix_product(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = ParabolicPoint::random(&mut rng, 4);
        let h = ParabolicPoint::random(&mut rng, 4);
        let p = CellPoint::random(&mut rng, 4);
        let formula = classical_bigcell_action(&g, &p).unwrap();
        prop_assert_eq!(&formula, &matrix_action(&g.matrix(), &p).unwrap());
        let composed = classical_bigcell_action(&g, &classical_bigcell_action(&h, &p).unwrap()).unwrap();
        prop_assert_eq!(composed, matrix_action(&g.matrix().mul(&h.matrix()), &p).unwrap());
    }
}
