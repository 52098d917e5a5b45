use serde_json::Value;
use spinsolve_web::{describe_json, reciprocity_json, solve_json};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn accepted_x_have_zero_defect() {
    let family = r#"{"kind":"ngon","n":8}"#;
    let set = parse(solve_json(family).unwrap());
    assert_eq!(set["count"], 12);
    for sol in set["accepted"].as_array().unwrap() {
        let (re, im) = (sol["x"]["re"].as_f64().unwrap(), sol["x"]["im"].as_f64().unwrap());
        let r = parse(reciprocity_json(family, re, im).unwrap());
        assert!(r["defect"].as_array().unwrap().iter().all(|d| d.as_f64().unwrap() < 1e-9), "{r}");
    }
    let off = parse(reciprocity_json(family, 0.3, 0.2).unwrap());
    assert!(off["defect"][2].as_f64().unwrap() > 1e-3);
}

#[test]
fn describe_reports_eigenmatrix() {
    let d = parse(describe_json(r#"{"kind":"hamming","N":3,"q":2}"#).unwrap());
    assert_eq!(d["eigenvalues"], serde_json::json!([3.0, 1.0, -1.0, -3.0]));
    assert_eq!(d["eigenmatrix"][0], serde_json::json!([1.0, 3.0, 3.0, 1.0]));
}
