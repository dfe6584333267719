use divcss_web::{action_table, construct, csst_check};

#[test]
fn pasted_matrix_matches_catalog_entry() {
    let e8 = "11110000\n00111100\n00001111\n01010101\n";
    let pasted = construct(e8, 0).unwrap();
    let named = construct("e8", 0).unwrap();
    for key in ["n", "k", "d", "t", "m"] {
        assert_eq!(pasted[key], named[key], "{key}");
    }
    assert_eq!(pasted["source"], "pasted");
}

#[test]
fn rm_action_depends_on_level() {
    let pair = construct("rm_1_4", 0).unwrap()["pair_text"].as_str().unwrap().to_string();
    let t = action_table(&pair, "", 2).unwrap();
    assert_eq!(t["logical"], true);
    assert_eq!(t["class"], "T†");
    let deep = action_table(&pair, "", 3).unwrap();
    assert_eq!(deep["logical"], false);
    assert!(!deep["witness"].is_null());
}

#[test]
fn doubled_e8_search_finds_a_signature() {
    let pair = construct("e8", 1).unwrap()["pair_text"].as_str().unwrap().to_string();
    let v = csst_check(&pair, "search").unwrap();
    assert_eq!(v["verdict"], "found");
    assert!(v["certificate"].is_null());
    assert!(csst_check(&pair, "nonsense").is_err());
}
