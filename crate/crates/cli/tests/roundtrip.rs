use std::sync::Arc;

use burnside_cli::serial::{element_from_json, element_to_json, parse_rational, rational_to_string};
use burnside_core::{arith, construct_group, BurnsideElement, BurnsideRing};
use proptest::prelude::*;

fn rings() -> Vec<Arc<BurnsideRing>> {
    ["C6", "S3", "Q8", "A4", "D10"]
        .iter()
        .map(|s| BurnsideRing::new(&Arc::new(construct_group(s, 512).unwrap())))
        .collect()
}

proptest! {
    #[test]
    fn rationals_round_trip(n in -10_000i64..10_000, d in 1i64..500) {
        let r = arith::rational(n, d);
        prop_assert_eq!(parse_rational(&rational_to_string(&r)).unwrap(), r);
    }

    #[test]
    fn elements_round_trip(g in 0usize..5, raw in prop::collection::vec((-20i64..=20, 1i64..=9), 12)) {
        let ring = &rings()[g];
        let coeffs = (0..ring.rank()).map(|i| arith::rational(raw[i].0, raw[i].1)).collect();
        let x = BurnsideElement::from_coeffs(ring, coeffs).unwrap();
        let json = element_to_json(&x);
        prop_assert_eq!(&element_from_json(ring, &json).unwrap(), &x);
        let text = serde_json::to_string(&json).unwrap();
        let reparsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(element_to_json(&element_from_json(ring, &reparsed).unwrap()), json);
    }
}
