use proptest::prelude::*;

use qgkit::relfile::{format_relations, parse_relations};
use qgkit::parse::Unknown;
use qgkit::{parse_expression, parse_scalar};
use qgkit_core::freealg::RelationSet;
use qgkit_core::{GeneratorTable, LaurentPoly, NcPoly, RootOrder, Scalar, Word};
use qgkit_core::scalar::Rational;

fn m6() -> RootOrder {
    RootOrder::DEFAULT
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-12i64..=12, -7i64..=7, 1i64..=3), 0..4).prop_map(|ts| {
        LaurentPoly::from_terms(ts.into_iter().map(|(e, n, d)| (e, Rational::new(n.into(), d.into()))))
    })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (laurent(), laurent()).prop_map(|(n, d)| {
        if d.is_zero() {
            Scalar::from_laurent(n, m6())
        } else {
            Scalar::from_parts(n, d, m6()).unwrap()
        }
    })
}

fn table() -> GeneratorTable {
    GeneratorTable::new(&["a", "b", "cbar", "X1p", "e_2"]).unwrap()
}

fn poly() -> impl Strategy<Value = NcPoly> {
    prop::collection::vec((prop::collection::vec(0u16..5, 0..5), scalar()), 0..5).prop_map(|ts| {
        let mut p = NcPoly::zero();
        for (w, c) in ts {
            p = p.add(&NcPoly::monomial(Word::new(w), c));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn scalar_round_trip(s in scalar()) {
        prop_assert_eq!(parse_scalar(&s.to_string(), m6()).unwrap(), s);
    }

    #[test]
    fn poly_round_trip(p in poly()) {
        let t = table();
        let text = p.display(&t).to_string();
        prop_assert_eq!(parse_expression(&text, m6(), &t).unwrap(), p);
    }

    #[test]
    fn relation_file_round_trip(ps in prop::collection::vec(poly(), 0..4)) {
        let t = table();
        let mut rels = RelationSet::new();
        for (k, p) in ps.into_iter().enumerate() {
            rels.push(&format!("r{k}"), p, "test").unwrap();
        }
        let text = format_relations(&rels, &t);
        let mut t2 = t.clone();
        let back = parse_relations(&text, m6(), &mut t2, Unknown::Reject, "test").unwrap();
        prop_assert_eq!(back, rels);
    }
}
