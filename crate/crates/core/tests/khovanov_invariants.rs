use khdetect::khovanov::{build_complex, homology, khovanov_homology, smooth, HalfInt};
use khdetect::pd::{parse_pd, PlanarDiagram};
use khdetect::poly::{jones, Var};
use serde_json::Value;

const CORPUS: &str = include_str!("../data/knots_le10.json");

fn corpus() -> Vec<(String, PlanarDiagram)> {
    let v: Vec<Value> = serde_json::from_str(CORPUS).unwrap();
    v.iter()
        .map(|e| (e["name"].as_str().unwrap().to_string(), parse_pd(e["pd"].as_str().unwrap()).unwrap()))
        .collect()
}

#[test]
fn euler_characteristic_is_jones() {
    for (name, d) in corpus() {
        let chi = khovanov_homology(&d, true).unwrap().graded_euler_char();
        let j = jones(&d).unwrap().substitute(Var::Q, 2);
        assert_eq!(chi, j, "{name}");
    }
}

#[test]
fn chain_condition_and_halving() {
    for (name, d) in corpus() {
        let red = build_complex(&d, true).unwrap();
        let unred = build_complex(&d, false).unwrap();
        red.check_d_squared().unwrap_or_else(|e| panic!("{name}: {e}"));
        unred.check_d_squared().unwrap_or_else(|e| panic!("{name}: {e}"));
        // the marked circle is pinned to x, halving every chain group
        for h in unred.groups.keys() {
            let u: usize = unred.groups[h].iter().map(|(_, n)| n).sum();
            let r: usize = red.groups.get(h).map_or(0, |g| g.iter().map(|(_, n)| n).sum());
            assert_eq!(u, 2 * r, "{name} h={h}");
        }
        assert_eq!(unred.total_dim(), 2 * red.total_dim(), "{name}");
    }
}

/// Over Q a thin knot has `dim Kh = det + 1` and `dim Khr = det`.
#[test]
fn rational_homology_of_thin_knots() {
    for (name, d) in corpus() {
        let r = khovanov_homology(&d, true).unwrap();
        if r.delta_support().len() != 1 {
            continue;
        }
        let u = khovanov_homology(&d, false).unwrap();
        assert_eq!(u.total_dim(), r.total_dim() + 1, "{name}");
        // det = |V(-1)|, and q^e at q^2 = -1 is (-1)^(e/2)
        let det: i64 = r.graded_euler_char().terms().map(|(e, c)| if (e / 2).rem_euclid(2) == 0 { c } else { -c }).sum();
        assert_eq!(r.total_dim() as i64, det.abs(), "{name}");
    }
}

#[test]
fn basepoint_and_relabel_invariance() {
    for (name, d) in corpus() {
        if d.crossing_count() > 8 || d.is_unknot_diagram() {
            continue;
        }
        let base = khovanov_homology(&d, true).unwrap();
        for arc in [2, d.n_arcs() as u32] {
            let moved = d.rebased(arc).unwrap();
            assert_eq!(khovanov_homology(&moved, true).unwrap(), base, "{name} basepoint {arc}");
        }
        let shifted = d.relabeled(3);
        assert_eq!(khovanov_homology(&shifted, true).unwrap(), base, "{name} relabeled");
    }
}

#[test]
fn mirror_negates_gradings() {
    for (name, d) in corpus() {
        if d.crossing_count() > 8 {
            continue;
        }
        for reduced in [true, false] {
            let k = khovanov_homology(&d, reduced).unwrap();
            let m = khovanov_homology(&d.mirror(), reduced).unwrap();
            assert_eq!(m, k.mirrored(), "{name} reduced={reduced}");
        }
    }
}

#[test]
fn alternating_entries_are_thin() {
    let thin = ["3_1", "3_1_mirror", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3", "7_1", "9_1", "8_18", "granny", "square"];
    for (name, d) in corpus() {
        let r = khovanov_homology(&d, true).unwrap();
        if thin.contains(&name.as_str()) {
            assert_eq!(r.delta_support().len(), 1, "{name}");
        }
    }
}

#[test]
fn trefoil_chiralities_have_opposite_delta() {
    let d = parse_pd("X(1,5,2,4);X(5,3,6,2);X(3,1,4,6)").unwrap();
    let r = khovanov_homology(&d, true).unwrap();
    let m = khovanov_homology(&d.mirror(), true).unwrap();
    assert_eq!(r.total_dim(), 3);
    assert_eq!(m.total_dim(), 3);
    let rd: Vec<HalfInt> = r.delta_support().into_iter().collect();
    let md: Vec<HalfInt> = m.delta_support().into_iter().collect();
    assert_eq!(rd.len(), 1);
    assert_eq!(md, vec![-rd[0]]);
}

#[test]
fn homology_of_built_complex_matches() {
    let d = parse_pd("X(4,2,5,1);X(8,6,1,5);X(6,3,7,4);X(2,7,3,8)").unwrap();
    let c = build_complex(&d, false).unwrap();
    let states: usize = (0..16u64).map(|v| 1usize << smooth(&d, v).n_circles()).sum();
    assert_eq!(c.total_dim(), states);
    let h = homology(&c).unwrap();
    assert_eq!(h.total_dim(), 6);
}
