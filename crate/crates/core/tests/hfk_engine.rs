use std::collections::BTreeSet;

use khdetect::hfk::complex::generators_of;
use khdetect::hfk::{
    build_plane_complex, classify, d_squared_witness, enumerate_differentials, spectral_sequence_candidates,
    Certificate, FilteredComplex, HfkError, HfkShape, Window, DEFAULT_GENUS_BOUND,
};
use khdetect::khovanov::HalfInt;
use khdetect::poly::{alexander_from_hfk, LaurentPoly, Var};

fn t(terms: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(Var::T, terms.iter().copied())
}

fn classes(s: &HfkShape) -> Vec<(i64, i64, u32)> {
    s.classes().iter().map(|c| (c.maslov, c.alexander, c.mult)).collect()
}

#[test]
fn dimension_five_has_two_cases() {
    let r = classify(5, DEFAULT_GENUS_BOUND).unwrap();
    assert_eq!(r.hfk_dimensions, vec![1, 3, 5]);
    assert_eq!(r.accepted.len(), 2);

    let fig8 = &r.accepted[0];
    assert_eq!(classes(&fig8.hfk), vec![(1, 1, 1), (0, 0, 3), (-1, -1, 1)]);
    assert_eq!(alexander_from_hfk(&fig8.hfk), t(&[(1, -1), (0, 3), (-1, -1)]));
    assert_eq!(fig8.delta, Some(HalfInt::from_int(0)));
    assert_eq!(fig8.tau, 0);

    let sqp = &r.accepted[1];
    assert_eq!(classes(&sqp.hfk), vec![(0, 2, 1), (-1, 1, 1), (-2, 0, 1), (-3, -1, 1), (-4, -2, 1)]);
    assert_eq!(alexander_from_hfk(&sqp.hfk), t(&[(2, 1), (1, -1), (0, 1), (-1, -1), (-2, 1)]));
    assert_eq!((sqp.genus, sqp.tau, sqp.s_invariant), (2, 2, Some(4)));
    assert!(sqp.fibered && sqp.is_strongly_quasipositive());
    assert_eq!(sqp.delta, Some(HalfInt::from_int(2)));

    let mirror = sqp.mirror.as_ref().unwrap();
    assert_eq!(mirror.hfk, sqp.hfk.mirrored());
    assert_eq!(mirror.tau, -sqp.tau);
    assert_eq!(mirror.delta, Some(-sqp.delta.unwrap()));
}

#[test]
fn accepted_shapes_satisfy_the_shape_axioms() {
    let r = classify(5, DEFAULT_GENUS_BOUND).unwrap();
    for c in &r.accepted {
        assert!(c.hfk.is_symmetric());
        assert!(c.hfk.maslov_pinned());
        assert_eq!(alexander_from_hfk(&c.hfk).eval_at_one(), 1);
        assert_eq!(c.alexander_at_one, 1);
        assert!(c.hfk.single_delta().is_some());
        assert_eq!(c.hfk.dim0() % 2, 1);
    }
}

#[test]
fn required_rejections_are_present() {
    let r = classify(5, DEFAULT_GENUS_BOUND).unwrap();
    let has = |f: &dyn Fn(&Certificate) -> bool| r.rejected.iter().any(|x| f(&x.certificate));
    assert!(has(&|c| matches!(c, Certificate::Genus { dim0: 5, .. })));
    assert!(has(&|c| matches!(c, Certificate::Euler { value_at_one: 3, .. })));
    assert!(has(&|c| matches!(c, Certificate::Euler { value_at_one: 5, .. })));
    assert!(has(&|c| matches!(c, Certificate::Overflow { genus: 2, minimum_dim: 7, .. })));
    let witnesses: Vec<_> = r
        .rejected
        .iter()
        .filter_map(|x| match &x.certificate {
            Certificate::DSquared { differential, witness } => Some((differential.clone(), witness.clone())),
            _ => None,
        })
        .collect();
    assert_eq!(witnesses.len(), (DEFAULT_GENUS_BOUND - 1) as usize);
    for (d, w) in witnesses {
        assert_eq!(d, "x1->x2, x4->x5");
        assert_eq!((w.target.i, w.target.j), (w.source.i - 1, w.source.j - 1));
    }
}

#[test]
fn report_is_deterministic() {
    let a = classify(5, DEFAULT_GENUS_BOUND).unwrap().to_json_pretty();
    for _ in 0..3 {
        assert_eq!(classify(5, DEFAULT_GENUS_BOUND).unwrap().to_json_pretty(), a);
    }
}

#[test]
fn small_dimensions_route_through_detection() {
    let r = classify(1, DEFAULT_GENUS_BOUND).unwrap();
    assert!(r.accepted.is_empty());
    assert_eq!(r.rejected.len(), 1);
    assert!(r.rejected[0].trace.iter().any(|s| s.rule == "unknot_detection" && s.citation.contains("Theorem 1.2")));

    let r = classify(3, DEFAULT_GENUS_BOUND).unwrap();
    assert!(r.accepted.is_empty());
    assert_eq!(r.rejected.len(), 2);
    assert!(matches!(r.rejected[0].certificate, Certificate::KhDimension { identified: "unknot", kh_dim: 1, required: 3 }));
    assert!(r.rejected[1].trace.iter().any(|s| s.rule == "trefoil_detection" && s.citation.contains("Corollary 8")));

    assert!(matches!(classify(4, 8), Err(HfkError::InvalidDimension(4))));
    assert!(matches!(classify(7, 8), Err(HfkError::InvalidDimension(7))));
    assert!(matches!(classify(5, 1), Err(HfkError::GenusBound(1))));
    assert_eq!(spectral_sequence_candidates(7).unwrap(), vec![1, 3, 5, 7]);
}

#[test]
fn genus_two_search_and_elimination() {
    let e = enumerate_differentials(&HfkShape::five_class(2, 0)).unwrap();
    let taus: BTreeSet<i64> = e.complexes.iter().map(|c| c.tau().unwrap()).collect();
    assert_eq!(taus, BTreeSet::from([-2, 0, 2]));
    let survivors: Vec<i64> = e
        .complexes
        .iter()
        .filter(|c| d_squared_witness(&build_plane_complex(c, Window::symmetric(6)).unwrap()).is_none())
        .map(|c| c.tau().unwrap())
        .collect();
    assert_eq!(survivors.iter().copied().collect::<BTreeSet<_>>(), BTreeSet::from([-2, 2]));
}

#[test]
fn higher_genus_always_eliminated() {
    for g in 3..=8 {
        let e = enumerate_differentials(&HfkShape::five_class(g, 0)).unwrap();
        assert_eq!(e.complexes.len(), 1, "genus {g}");
        let p = build_plane_complex(&e.complexes[0], Window::for_genus(g)).unwrap();
        assert!(d_squared_witness(&p).is_some(), "genus {g}");
    }
}

#[test]
fn enumerated_complexes_are_valid() {
    for g in 2..=5 {
        let e = enumerate_differentials(&HfkShape::five_class(g, 3)).unwrap();
        for c in &e.complexes {
            let n = c.len();
            let d: Vec<Vec<_>> = (0..n).map(|t| (0..n).map(|s| c.entry(t, s).clone()).collect()).collect();
            let again = FilteredComplex::new(c.generators().to_vec(), d).unwrap();
            assert_eq!(&again, c);
            assert_eq!(c.homology_dim(), 1);
        }
    }
}

#[test]
fn zero_differential_is_not_a_survivor() {
    let gens = generators_of(&HfkShape::five_class(2, 0)).unwrap();
    let z = FilteredComplex::zero(gens);
    assert_eq!(z.homology_dim(), 5);
    let e = enumerate_differentials(&HfkShape::five_class(2, 0)).unwrap();
    assert!(e.complexes.iter().all(|c| !c.arrows().is_empty()));
}

#[test]
fn plane_window_translates() {
    let gens = generators_of(&HfkShape::five_class(2, 0)).unwrap();
    let z = FilteredComplex::zero(gens);
    assert!(build_plane_complex(&z, Window::symmetric(3)).is_ok());
    assert!(matches!(build_plane_complex(&z, Window::symmetric(2)), Err(HfkError::WindowTooSmall(1))));
}
