mod common;

use common::*;
use mdeg_core::determinantal::{build_determinantal, DetSpec};
use mdeg_core::standardization::{standardize, standardize_ideal, verify_standardization};
use mdeg_core::MonomialOrder;

#[test]
fn standardization_preserves_invariants() {
    let suite = standardization_suite();
    assert!(suite.len() >= 10);
    for (name, ideal) in suite {
        let map = standardize(ideal.ring()).unwrap();
        let order = MonomialOrder::grevlex(ideal.ring().nvars());
        let r = verify_standardization(&ideal, &map, &order).unwrap();
        assert!(r.pass, "{name}: {r:?}");
        // the standardization of a standard ring is a renaming
        let j = standardize_ideal(&ideal, &map).unwrap();
        let again = standardize(j.ring()).unwrap();
        assert!(again.is_identity(), "{name}");
    }
}

#[test]
fn fine_determinantal_standardization_splits_each_variable() {
    let ideal = build_determinantal(DetSpec::new(2, 2, 2).unwrap(), fp()).unwrap();
    let map = standardize(ideal.ring()).unwrap();
    assert_eq!(map.target().nvars(), 8);
    assert!(map.images().iter().all(|im| im.len() == 2));
    let j = standardize_ideal(&ideal, &map).unwrap();
    assert_eq!(j.gens()[0].to_string(), "y1_1*y4_1*y1_2*y4_2 - y2_1*y3_1*y3_2*y2_2");
}
