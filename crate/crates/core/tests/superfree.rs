use proptest::prelude::*;
use qgrass::coeff::Laurent;
use qgrass::superfree::{free_multiply, tensor_multiply, Element, GeneratorSet, Parity, Tensor, Word};

fn gens() -> GeneratorSet {
    GeneratorSet::new([("x", Parity::Even), ("y", Parity::Even), ("u", Parity::Odd), ("v", Parity::Odd)]).unwrap()
}

fn arb_word() -> impl Strategy<Value = Word> {
    prop::collection::vec(0u16..4, 0..4).prop_map(|w| Word::from_slice(&w))
}

fn arb_element() -> impl Strategy<Value = Element> {
    prop::collection::vec((arb_word(), -3i64..4), 0..4).prop_map(|ts| {
        let mut e = Element::zero();
        for (w, c) in ts {
            e.add_term(w, &Laurent::constant(c));
        }
        e
    })
}

#[test]
fn unknown_names_and_duplicates() {
    assert!(GeneratorSet::new([("x", Parity::Even), ("x", Parity::Odd)]).is_err());
    assert_eq!(gens().lookup("w"), None);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn koszul_sign_on_swapped_factors(a in arb_word(), b in arb_word()) {
        let g = gens();
        let (ea, eb) = (Element::word(a.clone()), Element::word(b.clone()));
        let one = Element::one();
        let left = tensor_multiply(&[&g, &g], &Tensor::pure(&[&ea, &one]), &Tensor::pure(&[&one, &eb])).unwrap();
        let right = tensor_multiply(&[&g, &g], &Tensor::pure(&[&one, &eb]), &Tensor::pure(&[&ea, &one])).unwrap();
        prop_assert_eq!(&left, &Tensor::pure(&[&ea, &eb]));
        let sign = if g.word_parity(&a).is_odd() && g.word_parity(&b).is_odd() { -1 } else { 1 };
        prop_assert_eq!(right, left.scale(&Laurent::constant(sign)));
    }

    #[test]
    fn substitution_is_multiplicative(a in arb_element(), b in arb_element(), imgs in prop::collection::vec(arb_element(), 4)) {
        let f = |g: u16| imgs[g as usize].clone();
        let lhs = free_multiply(&a, &b).substitute(&f);
        let rhs = free_multiply(&a.substitute(&f), &b.substitute(&f));
        prop_assert_eq!(lhs, rhs);
    }
}
