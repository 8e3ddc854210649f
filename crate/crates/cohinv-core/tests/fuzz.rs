//! Extended randomized comparison of the zero decision against the
//! brute-force oracle.  Slower than the acceptance run, so ignored by
//! default:
//!
//! ```sh
//! cargo test -p cohinv-core --test fuzz -- --ignored
//! ```

mod common;

use cohinv_core::field::{BaseField, FieldDesc};
use cohinv_core::milnor::CohClass;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
#[ignore]
fn twenty_thousand_classes_with_composite_slots() {
    let mut rng = StdRng::seed_from_u64(0xfeed_beef);
    let vars: Vec<String> = ["v1", "v2", "v3"].iter().map(|s| s.to_string()).collect();
    let field = FieldDesc::new(BaseField::Q, &["v1", "v2", "v3"], &[]).unwrap();
    // composite rational parts exercise the multilinear expansion
    let pool = [1i64, -1, 2, -2, 3, -3, 5, -5, 6, -6, 7, -7, 10, -10, 15, -15];

    for i in 0..20_000 {
        let degree = rng.gen_range(1..=5);
        let raw = common::random_raw_class_from(&mut rng, &vars, degree, 5, &pool);
        let class = common::engine_class(&field, &raw, degree);
        let engine = class.is_zero();
        let oracle = common::oracle_is_zero(&raw, &vars);
        assert_eq!(engine, oracle, "disagreement on case {i}: {raw:?} -> {class}");

        let var = &vars[rng.gen_range(0..vars.len())];
        let d = class.decompose(var).unwrap();
        let var_class =
            CohClass::symbol(&field, vec![field.square_class_of_indet(var).unwrap()]).unwrap();
        let back = d.unramified.add(&var_class.cup(&d.residue).unwrap()).unwrap();
        assert_eq!(back, class, "round trip failed on case {i}");
    }
}
