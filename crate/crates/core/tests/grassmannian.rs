use std::sync::OnceLock;

use proptest::prelude::*;
use qgrass::grassmannian::{grq_generators, label_index, GrGenerators, GrPresentation, Tableau};
use qgrass::manin::build_manin;
use qgrass::superfree::{Element, Word};

fn gr() -> &'static GrGenerators {
    static G: OnceLock<GrGenerators> = OnceLock::new();
    G.get_or_init(|| grq_generators(&build_manin(4, 1).unwrap()))
}

#[test]
#[should_panic(expected = "M_q(4|1)")]
fn needs_m41() {
    grq_generators(&build_manin(2, 1).unwrap());
}

#[test]
fn odd_square_and_d55_products_vanish() {
    let g = gr();
    let mut red = g.alg.reducer();
    let d55 = label_index(5, 5).unwrap() as u16;
    assert!(g.realize(&mut red, &Element::word(Word::from_slice(&[d55, d55]))).is_zero());
    for i in 1..=4 {
        let di5 = label_index(i, 5).unwrap() as u16;
        assert!(g.realize(&mut red, &Element::word(Word::from_slice(&[di5, di5]))).is_zero(), "D{i}5^2");
        assert!(g.realize(&mut red, &Element::word(Word::from_slice(&[di5, d55]))).is_zero(), "D{i}5 D55");
    }
}

#[test]
fn degree_two_irreducibles_are_semistandard() {
    let p = GrPresentation::new();
    for w in p.presentation.irreducible_words(2) {
        assert!(Tableau::from_word(&w).is_semistandard(), "{}", w.display(p.gens()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn straightening_agrees_with_the_realization(w in prop::collection::vec(0u16..11, 3)) {
        let g = gr();
        let p = GrPresentation::new();
        let w = Word::from_slice(&w);
        let straightened = p.presentation.normal_form(&Element::word(w.clone()));
        let mut red = g.alg.reducer();
        let direct = g.realize(&mut red, &Element::word(w));
        let via = g.realize(&mut red, &straightened);
        prop_assert_eq!(direct, via);
    }
}
