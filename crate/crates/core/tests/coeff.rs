use std::collections::BTreeMap;

use num_rational::BigRational;
use proptest::prelude::*;
use qgrass::coeff::{express_in_span, rank_at, rank_of_rows, Laurent, SparseRow};

fn arb_laurent() -> impl Strategy<Value = Laurent> {
    prop::collection::vec((-2i32..3, -3i64..4), 0..3).prop_map(Laurent::from_terms)
}

fn arb_rows() -> impl Strategy<Value = Vec<SparseRow>> {
    prop::collection::vec(prop::collection::btree_map(0usize..4, arb_laurent(), 0..4), 1..5)
        .prop_map(|rows| rows.into_iter().map(|r| r.into_iter().filter(|(_, c)| !c.is_zero()).collect()).collect())
}

fn combine(rows: &[SparseRow], cs: &[Laurent]) -> SparseRow {
    let mut out: BTreeMap<usize, Laurent> = BTreeMap::new();
    for (r, c) in rows.iter().zip(cs) {
        for (k, v) in r {
            let e = out.entry(*k).or_insert_with(Laurent::zero);
            *e = &*e + &(v * c);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

#[test]
fn q_minus_q_inverse_column_drops_rank_only_at_one() {
    let rows: Vec<SparseRow> = vec![
        [(0, Laurent::one()), (1, Laurent::q_pow(1))].into_iter().collect(),
        [(0, Laurent::one()), (1, Laurent::q_pow(-1))].into_iter().collect(),
    ];
    assert_eq!(rank_of_rows(&rows), 2);
    assert_eq!(rank_at(&rows, &BigRational::from_integer(1.into())).unwrap(), 1);
    assert_eq!(rank_at(&rows, &BigRational::new(2.into(), 3.into())).unwrap(), 2);
    assert!(rank_at(&rows, &BigRational::from_integer(0.into())).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn specialization_never_raises_rank(rows in arb_rows(), n in 1i64..5, d in 1i64..5) {
        let q0 = BigRational::new(n.into(), d.into());
        prop_assert!(rank_at(&rows, &q0).unwrap() <= rank_of_rows(&rows));
    }

    #[test]
    fn combinations_are_found_in_the_span(rows in arb_rows(), cs in prop::collection::vec(arb_laurent(), 5)) {
        let target = combine(&rows, &cs);
        let solved = express_in_span(&rows, &target);
        prop_assert!(solved.is_some());
        let mut extended = rows.clone();
        extended.push(target);
        prop_assert_eq!(rank_of_rows(&extended), rank_of_rows(&rows));
    }
}
