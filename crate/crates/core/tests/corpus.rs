//! The bundled table of knots with at most ten crossings, rebuilt from braid words.

use khdetect::khovanov::{khovanov_homology, BigradedDimensions};
use khdetect::pd::{braid_closure, parse_pd, PlanarDiagram};
use khdetect::poly::{jones, LaurentPoly, Var};
use serde_json::{json, Value};

const CORPUS: &str = include_str!("../data/knots_le10.json");

/// `(name, strands, word)`.
const BRAIDS: &[(&str, usize, &[i32])] = &[
    ("unknot", 1, &[]),
    ("unknot_kink", 2, &[1]),
    ("3_1", 2, &[1, 1, 1]),
    ("3_1_mirror", 2, &[-1, -1, -1]),
    ("4_1", 3, &[1, -2, 1, -2]),
    ("5_1", 2, &[1, 1, 1, 1, 1]),
    ("5_2", 3, &[1, 1, 1, 2, -1, 2]),
    ("6_1", 4, &[1, 1, 2, -1, -3, 2, -3]),
    ("6_2", 3, &[1, 1, 1, -2, 1, -2]),
    ("6_3", 3, &[1, 1, -2, 1, -2, -2]),
    ("7_1", 2, &[1, 1, 1, 1, 1, 1, 1]),
    ("8_18", 3, &[1, -2, 1, -2, 1, -2, 1, -2]),
    ("8_19", 3, &[1, 2, 1, 2, 1, 2, 1, 2]),
    ("8_20", 3, &[1, 1, 1, -2, -1, -1, -1, -2]),
    ("9_1", 2, &[1, 1, 1, 1, 1, 1, 1, 1, 1]),
    ("10_123", 3, &[1, -2, 1, -2, 1, -2, 1, -2, 1, -2]),
    ("10_124", 3, &[1, 2, 1, 2, 1, 2, 1, 2, 1, 2]),
    ("granny", 3, &[1, 1, 1, 2, 2, 2]),
    ("square", 3, &[1, 1, 1, -2, -2, -2]),
];

/// Reduced Khovanov homology from standard tables, `(q, h)` with dimension one.
fn expected(name: &str) -> Option<Vec<(i64, i64)>> {
    Some(match name {
        "unknot" | "unknot_kink" => vec![(0, 0)],
        "3_1" => vec![(2, 0), (6, 2), (8, 3)],
        "3_1_mirror" => vec![(-8, -3), (-6, -2), (-2, 0)],
        "4_1" => vec![(-4, -2), (-2, -1), (0, 0), (2, 1), (4, 2)],
        "5_1" => vec![(4, 0), (8, 2), (10, 3), (12, 4), (14, 5)],
        _ => return None,
    })
}

fn generated() -> Value {
    let entries: Vec<Value> = BRAIDS
        .iter()
        .map(|(name, strands, word)| {
            let d = braid_closure(*strands, word).unwrap();
            let mut e = json!({ "name": name, "pd": d.to_pd_string() });
            if let Some(x) = expected(name) {
                let b = BigradedDimensions::from_entries(x.into_iter().map(|k| (k, 1)));
                e["expected"] = b.to_json_value();
            }
            e
        })
        .collect();
    Value::Array(entries)
}

#[test]
#[ignore = "rewrites data/knots_le10.json"]
fn regenerate() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/knots_le10.json");
    std::fs::write(path, serde_json::to_string_pretty(&generated()).unwrap() + "\n").unwrap();
}

#[test]
fn file_matches_braid_words() {
    let file: Value = serde_json::from_str(CORPUS).unwrap();
    assert_eq!(file, generated());
}

#[test]
fn size_and_crossings() {
    let file: Vec<Value> = serde_json::from_str(CORPUS).unwrap();
    assert!(file.len() >= 15);
    for e in &file {
        let d = parse_pd(e["pd"].as_str().unwrap()).unwrap();
        assert!(d.crossing_count() <= 10);
    }
}

fn t(terms: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(Var::T, terms.iter().copied())
}

/// Chirality check against tabulated Jones polynomials.
#[test]
fn named_entries_have_tabulated_jones() {
    let d = |name: &str| -> PlanarDiagram {
        let (_, s, w) = BRAIDS.iter().find(|b| b.0 == name).unwrap();
        braid_closure(*s, w).unwrap()
    };
    assert_eq!(jones(&d("3_1")).unwrap(), t(&[(1, 1), (3, 1), (4, -1)]));
    assert_eq!(jones(&d("4_1")).unwrap(), t(&[(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)]));
    assert_eq!(jones(&d("5_1")).unwrap(), t(&[(2, 1), (4, 1), (5, -1), (6, 1), (7, -1)]));
    assert_eq!(jones(&d("unknot_kink")).unwrap(), t(&[(0, 1)]));
    // T(3,4): t^3 + t^5 - t^8
    assert_eq!(jones(&d("8_19")).unwrap(), t(&[(3, 1), (5, 1), (8, -1)]));
    let granny = jones(&d("granny")).unwrap();
    let trefoil = jones(&d("3_1")).unwrap();
    assert_eq!(granny, &trefoil * &trefoil);
    assert_eq!(jones(&d("square")).unwrap(), &trefoil * &trefoil.invert());
}

#[test]
fn expected_fields_match_computation() {
    let file: Vec<Value> = serde_json::from_str(CORPUS).unwrap();
    let mut checked = 0;
    for e in &file {
        let Some(x) = e.get("expected") else { continue };
        let want = BigradedDimensions::from_json(&x.to_string()).unwrap();
        let d = parse_pd(e["pd"].as_str().unwrap()).unwrap();
        assert_eq!(khovanov_homology(&d, true).unwrap(), want, "{}", e["name"]);
        checked += 1;
    }
    assert_eq!(checked, 6);
}
