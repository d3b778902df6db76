use std::sync::OnceLock;

use proptest::prelude::*;
use qgrass::classical_oracle::ParabolicPoint;
use qgrass::coeff::Laurent;
use qgrass::manin::build_manin;
use qgrass::parabolic::{build_parabolic, evaluate_at_point, parabolic_coordinates, point_values, LocElement, LocReducer, ParabolicCoordinates, QuotientAlgebra};
use qgrass::superfree::{Element, Word};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn quotient() -> &'static QuotientAlgebra {
    static Q: OnceLock<QuotientAlgebra> = OnceLock::new();
    Q.get_or_init(|| build_parabolic(&build_manin(4, 1).unwrap()))
}

fn coords() -> &'static ParabolicCoordinates {
    static C: OnceLock<ParabolicCoordinates> = OnceLock::new();
    C.get_or_init(|| parabolic_coordinates(quotient()).unwrap())
}

type Term = (Vec<u16>, i64, u32, u32);

fn arb_terms() -> impl Strategy<Value = Vec<Term>> {
    prop::collection::vec((prop::collection::vec(0u16..25, 0..3), -2i64..3, 0u32..2, 0u32..2), 1..3)
}

fn build(lr: &mut LocReducer<'_>, terms: &[Term]) -> LocElement {
    let mut acc = lr.scalar(Laurent::zero());
    for (w, c, k0, k1) in terms {
        let mut x = lr.from_base(&Element::monomial(Word::from_slice(w), Laurent::constant(*c)));
        for (i, k) in [*k0, *k1].into_iter().enumerate() {
            for _ in 0..k {
                let s = lr.inv(i);
                x = lr.mul(&x, &s);
            }
        }
        acc = lr.add(&acc, &x);
    }
    acc
}

#[test]
fn quotient_shape() {
    let q = quotient();
    assert_eq!(q.presentation.rules().len(), 183);
    assert!(q.presentation.check_local_confluence(3).all_pass());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn localization_is_conservative(u in prop::collection::vec(0u16..25, 0..3), v in prop::collection::vec(0u16..25, 0..3)) {
        let q = quotient();
        let (x, y) = (Element::word(Word::from_slice(&u)), Element::word(Word::from_slice(&v)));
        let mut lr = coords().loc.reducer();
        let (lx, ly) = (lr.from_base(&x), lr.from_base(&y));
        let prod = lr.mul(&lx, &ly);
        let base = lr.from_base(&q.normal_form(&(&x * &y)));
        prop_assert!(lr.equal(&prod, &base));
    }

    #[test]
    fn q_one_evaluation_is_multiplicative(a in arb_terms(), b in arb_terms(), seed in any::<u64>()) {
        let c = coords();
        let mut lr = c.loc.reducer();
        let (x, y) = (build(&mut lr, &a), build(&mut lr, &b));
        let xy = lr.mul(&x, &y);
        let point = ParabolicPoint::random(&mut StdRng::seed_from_u64(seed), 4);
        let values = point_values(quotient(), &point.matrix());
        let ex = evaluate_at_point(&c.loc, &x, &values).unwrap();
        let ey = evaluate_at_point(&c.loc, &y, &values).unwrap();
        let exy = evaluate_at_point(&c.loc, &xy, &values).unwrap();
        prop_assert_eq!(exy, ex.mul(&ey));
    }
}
