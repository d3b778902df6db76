use std::sync::OnceLock;

use proptest::prelude::*;
use qgrass::bigcell::{bigcell_coaction_check, bigcell_generators, bigcell_presentation, embed_bigcell, BigCellPresentation};
use qgrass::classical_oracle::{at_q_one, supercommutative, supercommutative_normal_form};
use qgrass::coeff::Laurent;
use qgrass::manin::build_manin;
use qgrass::parabolic::{build_parabolic, parabolic_coordinates};
use qgrass::rewrite::Presentation;
use qgrass::superfree::{Element, Word};

fn cell() -> &'static BigCellPresentation {
    static B: OnceLock<BigCellPresentation> = OnceLock::new();
    B.get_or_init(bigcell_presentation)
}

fn classical() -> &'static Presentation {
    static P: OnceLock<Presentation> = OnceLock::new();
    P.get_or_init(|| supercommutative(bigcell_generators()))
}

fn arb_element() -> impl Strategy<Value = Element> {
    prop::collection::vec((prop::collection::vec(0u16..6, 0..4), -2i32..3, -2i64..3), 0..4).prop_map(|ts| {
        let mut e = Element::zero();
        for (w, k, c) in ts {
            e.add_term(Word::from_slice(&w), &Laurent::monomial(c, k));
        }
        e
    })
}

#[test]
fn embedding_and_extended_coaction() {
    let q = build_parabolic(&build_manin(4, 1).unwrap());
    let c = parabolic_coordinates(&q).unwrap();
    let embed = embed_bigcell(cell(), &c, &q);
    assert!(embed.all_pass(), "{}", embed.to_text());
    let co = bigcell_coaction_check(cell(), &q, &c, 20, true);
    assert!(co.all_pass(), "{}", co.to_text());
    assert!(co.items.iter().any(|i| i.id.contains("coassociativity")), "{}", co.to_text());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_idempotent_and_linear(a in arb_element(), b in arb_element(), k in -2i32..3) {
        let b_ = cell();
        let na = b_.normal_form(&a);
        prop_assert_eq!(b_.normal_form(&na), na.clone());
        let nb = b_.normal_form(&b);
        let c = Laurent::q_pow(k);
        prop_assert_eq!(b_.normal_form(&(&a + &b.scale(&c))), &na + &nb.scale(&c));
    }

    #[test]
    fn reduction_commutes_with_q_one(w in prop::collection::vec(0u16..6, 0..5)) {
        let x = Element::word(Word::from_slice(&w));
        let quantum = at_q_one(&cell().normal_form(&x));
        prop_assert_eq!(quantum, supercommutative_normal_form(classical(), &x));
    }
}
