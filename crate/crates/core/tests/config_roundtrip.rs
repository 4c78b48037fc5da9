mod common;

use mzsim::config::{parse_config, serialize_config};
use mzsim::SimRng;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn serialize_then_parse_is_identity(seed in any::<u64>()) {
        let doc = common::random_document(&mut SimRng::seed_from_u64(seed));
        doc.validate().unwrap();
        let text = serialize_config(&doc);
        let back = parse_config(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(serialize_config(&back), text);
    }

    #[test]
    fn parser_never_panics(text in "[a-z_ 0-9.#\\n-]{0,200}") {
        let _ = parse_config(&text);
    }
}

#[test]
fn comments_do_not_survive_canonicalization() {
    let text = "# run 1\nexperiment single_bs # lone splitter\ntransmittance 0.25\n";
    let canon = serialize_config(&parse_config(text).unwrap());
    assert!(!canon.contains('#'));
    assert_eq!(parse_config(&canon).unwrap(), parse_config(text).unwrap());
}
