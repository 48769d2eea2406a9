use stringy_web::{eichler_report, euler_report, model_names, ring_report};

#[test]
fn every_bundled_model_builds_both_rings() {
    for name in model_names() {
        for kind in ["chow", "k"] {
            let r = ring_report(name, kind).unwrap();
            assert_eq!(r["axioms_pass"], true, "{name} {kind}");
            assert_eq!(r["cch_allometric"], true, "{name}");
        }
    }
    assert!(ring_report("nope", "chow").is_err());
    assert!(ring_report("sym2_p1", "hodge").is_err());
}

#[test]
fn sym2_ring_shows_the_twisted_square() {
    let r = ring_report("sym2_p1", "chow").unwrap();
    assert!(r["table"].as_str().unwrap().contains("(0 1)"));
    assert_eq!(r["euler"], "5");
    assert_eq!(r["cch_strictly_allometric"], true);
}

#[test]
fn eichler_examples() {
    let r = eichler_report("z3", "w,w,w").unwrap();
    assert_eq!(r["equal"], true);
    assert_eq!(r["cover"]["genus"], 1);
    assert!(eichler_report("z3", "w,w").is_err());
    assert_eq!(eichler_report("s3", "(0 1 2),(0 1 2),(0 1 2)").unwrap()["equal"], true);
}

#[test]
fn euler_rows() {
    let rows = euler_report(24, 3).unwrap();
    assert_eq!(rows[2]["stringy"], "324");
    assert!(rows.as_array().unwrap().iter().all(|r| r["equal"] == true));
}
