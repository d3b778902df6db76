use proptest::prelude::*;
use qgrass::manin::{build_manin, Coproduct, ManinError};
use qgrass::rewrite::normalize_tensor;
use qgrass::superfree::{tensor_multiply, Element, Tensor, Word};

fn arb_word() -> impl Strategy<Value = Word> {
    prop::collection::vec(0u16..4, 0..3).prop_map(|w| Word::from_slice(&w))
}

#[test]
fn size_errors() {
    assert!(matches!(build_manin(0, 2), Err(ManinError::BadSize(0))));
    let a = build_manin(1, 1).unwrap();
    assert!(matches!(a.quantum_minor((1, 3), (1, 2)), Err(ManinError::OutOfRange(3, 2, 2))));
}

#[test]
fn m21_bialgebra_passes() {
    let r = build_manin(2, 1).unwrap().verify_bialgebra(2);
    assert!(r.all_pass(), "{}", r.to_text());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coproduct_is_multiplicative(u in arb_word(), v in arb_word()) {
        let a = build_manin(1, 1).unwrap();
        let mut cp = Coproduct::new(&a);
        let product = a.normal_form(&(&Element::word(u.clone()) * &Element::word(v.clone())));
        let lhs = cp.apply(&product);
        let g = a.gens();
        let raw = tensor_multiply(&[g, g], &cp.word(&u), &cp.word(&v)).unwrap();
        let rhs = normalize_tensor(&raw, &mut [a.reducer(), a.reducer()]);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn counit_laws(u in arb_word(), v in arb_word()) {
        let a = build_manin(1, 1).unwrap();
        let x = a.normal_form(&Element::word(u.clone()));
        let d = Coproduct::new(&a).apply(&x);
        let left = d.contract_slot(0, &mut |w| a.counit_word(w));
        let right = d.contract_slot(1, &mut |w| a.counit_word(w));
        prop_assert_eq!(&left, &Tensor::pure(&[&x]));
        prop_assert_eq!(&right, &Tensor::pure(&[&x]));
        let uv = &Element::word(u.clone()) * &Element::word(v.clone());
        prop_assert_eq!(a.counit(&uv), &a.counit(&Element::word(u)) * &a.counit(&Element::word(v)));
    }
}
