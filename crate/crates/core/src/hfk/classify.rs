//! The case analysis: which knot Floer shapes survive a reduced Khovanov
//! homology of a given small dimension in a single delta grading.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use super::axioms::{rule, AxiomId, AxiomSummary, Facts, AXIOMS, FIGURE_EIGHT_REDUCED_KH};
use super::complex::{enumerate_differentials, FilteredComplex, Generator};
use super::plane::{build_plane_complex, d_squared_witness, Window, Witness};
use super::shape::{HfkClass, HfkShape};
use super::HfkError;
use crate::khovanov::HalfInt;
use crate::poly::alexander_from_hfk;

pub const DEFAULT_GENUS_BOUND: i64 = 8;

/// Every HFK total dimension a spectral sequence from a `kh_dim`-dimensional
/// reduced Khovanov homology can reach.
pub fn spectral_sequence_candidates(kh_dim: i64) -> Result<Vec<u32>, HfkError> {
    if kh_dim < 1 || kh_dim % 2 == 0 {
        return Err(HfkError::InvalidDimension(kh_dim));
    }
    Ok((1..=kh_dim as u32).step_by(2).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub rule: &'static str,
    pub citation: &'static str,
    pub detail: String,
}

fn step(id: AxiomId, detail: impl Into<String>) -> TraceStep {
    let r = rule(id);
    TraceStep { rule: r.name, citation: r.citation, detail: detail.into() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// The identified knot has reduced Khovanov homology of the wrong dimension.
    KhDimension { identified: &'static str, kh_dim: u32, required: u32 },
    /// The detection axiom identifies the knot, closing the branch.
    Identification { identified: &'static str },
    /// No symmetric profile has an even-dimensional middle group.
    Parity { dim0: u32 },
    Genus { dim0: u32, unknot_dim: u32, message: String },
    /// An Euler characteristic that is not `+-1` at `t = 1`.
    Euler { polynomial: String, value_at_one: i64 },
    /// The forced groups need more room than the total dimension allows.
    Overflow { genus: i64, minimum_dim: u32, available: u32 },
    DSquared { differential: String, witness: Witness },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rejection {
    pub branch: String,
    pub certificate: Certificate,
    pub trace: Vec<TraceStep>,
}

/// Verdict of the detection axioms on a small HFK total dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmallDimVerdict {
    pub hfk_dim: u32,
    pub identified: &'static str,
    pub kh_dim_of_identified: u32,
    pub rejection: Rejection,
}

/// Unknot for 1, trefoil for 3, both against a target reduced Khovanov dimension of 5.
pub fn apply_small_dim_axioms(dim: u32) -> Result<SmallDimVerdict, HfkError> {
    small_dim_verdict(dim, 5, Vec::new())
}

fn small_dim_verdict(dim: u32, kh_dim: u32, prefix: Vec<TraceStep>) -> Result<SmallDimVerdict, HfkError> {
    let (id, knot, known_kh) = match dim {
        1 => (AxiomId::UnknotDetection, "unknot", 1),
        3 => (AxiomId::TrefoilDetection, "trefoil", 3),
        _ => return Err(HfkError::InvalidDimension(dim as i64)),
    };
    let mut trace = prefix;
    trace.push(step(id, format!("HFK of total dimension {dim} is the {knot}")));
    let certificate = if known_kh != kh_dim {
        trace.push(step(
            id,
            format!("the {knot} has {known_kh}-dimensional reduced Khovanov homology, not {kh_dim}"),
        ));
        Certificate::KhDimension { identified: knot, kh_dim: known_kh, required: kh_dim }
    } else {
        Certificate::Identification { identified: knot }
    };
    Ok(SmallDimVerdict {
        hfk_dim: dim,
        identified: knot,
        kh_dim_of_identified: known_kh,
        rejection: Rejection { branch: format!("dim HFK = {dim}"), certificate, trace },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeFamily {
    /// Dimensions (1, 3, 1) at a = (1, 0, -1).
    FigureEight,
    /// The five one-dimensional classes of a fibered knot of genus at least 2.
    FiveClass { genus: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibleShape {
    pub family: ShapeFamily,
    /// Maslov gradings relative to a free offset; `m - a = 0`.
    pub shape: HfkShape,
    pub fibered: bool,
    pub trace: Vec<TraceStep>,
}

fn profile_label(p: &BTreeMap<i64, u32>) -> String {
    let parts: Vec<String> = p.iter().rev().map(|(a, m)| format!("{a}:{m}")).collect();
    format!("dims {{{}}}", parts.join(", "))
}

/// Symmetric Alexander profiles of total dimension `total`, grouped as
/// `(dim0, Some(profile))` or `(dim0, None)` when no symmetric profile has that middle.
fn profiles(total: u32, genus_bound: i64) -> Vec<(u32, Option<BTreeMap<i64, u32>>)> {
    let mut out = Vec::new();
    for dim0 in 0..=total {
        let rest = total - dim0;
        if rest % 2 == 1 {
            out.push((dim0, None));
            continue;
        }
        if rest == 0 {
            out.push((dim0, Some(BTreeMap::from([(0, dim0)]))));
            continue;
        }
        // multisets of positive gradings with total multiplicity rest / 2
        let mut acc = Vec::new();
        half_profiles(rest / 2, genus_bound, &mut BTreeMap::new(), &mut acc);
        for half in acc {
            let mut p = BTreeMap::from([(0, dim0)]);
            for (a, m) in half {
                p.insert(a, m);
                p.insert(-a, m);
            }
            p.retain(|_, m| *m > 0);
            out.push((dim0, Some(p)));
        }
    }
    out
}

fn half_profiles(remaining: u32, max_a: i64, cur: &mut BTreeMap<i64, u32>, out: &mut Vec<BTreeMap<i64, u32>>) {
    if remaining == 0 {
        out.push(cur.clone());
        return;
    }
    // gradings chosen in decreasing order
    for a in (1..=max_a).rev() {
        for m in 1..=remaining {
            cur.insert(a, m);
            half_profiles(remaining - m, a - 1, cur, out);
            cur.remove(&a);
        }
    }
}

fn sort_profiles(v: &mut [(u32, Option<BTreeMap<i64, u32>>)]) {
    // by dim0 descending (the order the cases are argued), then genus ascending
    v.sort_by(|x, y| {
        let key = |p: &Option<BTreeMap<i64, u32>>| {
            p.as_ref().map(|p| (*p.keys().max().unwrap(), p.iter().rev().map(|(a, m)| (*a, *m)).collect::<Vec<_>>()))
        };
        y.0.cmp(&x.0).then_with(|| key(&x.1).cmp(&key(&y.1)))
    });
}

/// Every symmetric single-delta profile of total dimension `total_dim`, run
/// through the rejecting axioms in the order the cases are argued.
pub fn admissible_shapes(total_dim: u32, genus_bound: i64) -> Result<(Vec<AdmissibleShape>, Vec<Rejection>), HfkError> {
    if genus_bound < 2 {
        return Err(HfkError::GenusBound(genus_bound));
    }
    let mut candidates = profiles(total_dim, genus_bound);
    sort_profiles(&mut candidates);
    let spectral = step(
        AxiomId::SpectralSequence,
        format!("HFK has total dimension {total_dim} and is supported in one delta grading"),
    );
    let mut shapes = Vec::new();
    let mut rejections = Vec::new();
    let mut parity_seen = BTreeSet::new();
    for (dim0, profile) in candidates {
        let mut trace = vec![spectral.clone()];
        let Some(profile) = profile else {
            if parity_seen.insert(dim0) {
                trace.push(step(AxiomId::ParityAtZero, format!("dim HFK(K,0) = {dim0} is even")));
                rejections.push(Rejection {
                    branch: format!("dim HFK(K,0) = {dim0}"),
                    certificate: Certificate::Parity { dim0 },
                    trace,
                });
            }
            continue;
        };
        let shape = HfkShape::from_profile(&profile, 0);
        let facts = Facts::shape(&shape);
        let branch = profile_label(&profile);
        debug_assert!(!(rule(AxiomId::Symmetry).applies)(&facts));
        debug_assert!(!(rule(AxiomId::ParityAtZero).applies)(&facts));
        trace.push(step(AxiomId::ParityAtZero, format!("dim HFK(K,0) = {dim0} is odd")));
        trace.push(step(AxiomId::Symmetry, "profile is symmetric under a -> -a"));

        if (rule(AxiomId::GenusDetection).applies)(&facts) {
            trace.push(step(AxiomId::GenusDetection, "top Alexander grading 0 forces the unknot"));
            rejections.push(Rejection {
                branch,
                certificate: Certificate::Genus {
                    dim0,
                    unknot_dim: 1,
                    message: format!(
                        "genus detection: only the unknot has top grading 0, dimension would be 1, not {dim0}"
                    ),
                },
                trace,
            });
            continue;
        }
        let g = shape.genus();
        if (rule(AxiomId::GenusOneFibered).applies)(&facts) {
            trace.push(step(AxiomId::FiberedDetection, "dim HFK(K,1) = 1, so K is fibered of genus 1"));
            trace.push(step(AxiomId::GenusOneFibered, "K is a trefoil or the figure-eight"));
            if shape.total_dim() != 3 {
                trace.push(step(AxiomId::TrefoilDetection, "trefoils have 3-dimensional HFK, so K is the figure-eight"));
                shapes.push(AdmissibleShape { family: ShapeFamily::FigureEight, shape, fibered: true, trace });
                continue;
            }
        }
        if (rule(AxiomId::NextToTop).applies)(&facts) {
            trace.push(step(AxiomId::FiberedDetection, format!("dim HFK(K,{g}) = 1, so K is fibered of genus {g}")));
            trace.push(step(AxiomId::NextToTop, format!("HFK(K,{}) must be nonzero", g - 1)));
            let minimum_dim = shape.total_dim() + 2;
            rejections.push(Rejection {
                branch,
                certificate: Certificate::Overflow { genus: g, minimum_dim, available: total_dim },
                trace,
            });
            continue;
        }
        if (rule(AxiomId::EulerCharacteristic).applies)(&facts) {
            let poly = alexander_from_hfk(&shape);
            trace.push(step(AxiomId::EulerCharacteristic, format!("Euler characteristic {poly} is not +-1 at t = 1")));
            rejections.push(Rejection {
                branch,
                certificate: Certificate::Euler { polynomial: poly.to_string(), value_at_one: poly.eval_at_one().abs() },
                trace,
            });
            continue;
        }
        if shape.top_dim() == 1 && g >= 2 && shape.dim_at(g - 1) == 1 && shape.total_dim() == 5 && shape.dim0() == 1 {
            trace.push(step(AxiomId::FiberedDetection, format!("dim HFK(K,{g}) = 1, so K is fibered of genus {g}")));
            trace.push(step(AxiomId::NextToTop, format!("dim HFK(K,{}) = 1 is forced", g - 1)));
            let shape = HfkShape::five_class(g, 0);
            shapes.push(AdmissibleShape { family: ShapeFamily::FiveClass { genus: g }, shape, fibered: true, trace });
            continue;
        }
        return Err(HfkError::Unresolved(branch));
    }
    Ok((shapes, rejections))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Identification {
    FigureEight,
    /// Genus-g fibered and strongly quasipositive; `mirror` when the mirror is.
    StronglyQuasipositive { mirror: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AcceptedCase {
    pub label: String,
    pub hfk: HfkShape,
    pub alexander: String,
    pub alexander_at_one: i64,
    pub genus: i64,
    pub fibered: bool,
    pub tau: i64,
    pub identification: Option<Identification>,
    pub s_invariant: Option<i64>,
    pub delta: Option<HalfInt>,
    pub differential: String,
    pub trace: Vec<TraceStep>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mirror: Option<Box<AcceptedCase>>,
}

impl AcceptedCase {
    pub fn is_strongly_quasipositive(&self) -> bool {
        matches!(self.identification, Some(Identification::StronglyQuasipositive { mirror: false }))
    }
}

/// `d` for an annotated case: read from the figure-eight table, or `s / 2` with
/// `s = +-2g` for a strongly quasipositive knot or its mirror.
pub fn delta_of_case(case: &AcceptedCase) -> Result<HalfInt, HfkError> {
    match case.identification {
        Some(Identification::FigureEight) => {
            let deltas: BTreeSet<i64> = FIGURE_EIGHT_REDUCED_KH.iter().map(|&(q, h)| q - 2 * h).collect();
            match deltas.iter().collect::<Vec<_>>().as_slice() {
                [d] => Ok(HalfInt(**d)),
                _ => Err(HfkError::Unannotated(case.label.clone())),
            }
        }
        Some(Identification::StronglyQuasipositive { mirror }) => {
            let s = 2 * case.genus;
            Ok(HalfInt(if mirror { -s } else { s }))
        }
        None => Err(HfkError::Unannotated(case.label.clone())),
    }
}

/// Maslov grading of the homology of every differential on `shape` compatible
/// with rank counting, relative to the shape's own gradings.
pub fn homology_maslov_levels(shape: &HfkShape) -> BTreeSet<i64> {
    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
    for c in shape.classes() {
        *dims.entry(c.maslov).or_default() += c.mult as usize;
    }
    let (lo, hi) = match (dims.keys().next(), dims.keys().last()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => return BTreeSet::new(),
    };
    let levels: Vec<i64> = (lo..=hi).collect();
    let dim = |m: i64| dims.get(&m).copied().unwrap_or(0);
    // ranks r[k] of d: C_{levels[k]} -> C_{levels[k]-1}
    let mut out = BTreeSet::new();
    let mut r = vec![0usize; levels.len()];
    fn rec(
        k: usize,
        levels: &[i64],
        r: &mut Vec<usize>,
        dim: &dyn Fn(i64) -> usize,
        out: &mut BTreeSet<i64>,
    ) {
        if k == levels.len() {
            let h: Vec<usize> = (0..levels.len())
                .map(|i| dim(levels[i]) - r[i] - if i + 1 < levels.len() { r[i + 1] } else { 0 })
                .collect();
            if h.iter().sum::<usize>() == 1 {
                out.insert(levels[h.iter().position(|&x| x == 1).unwrap()]);
            }
            return;
        }
        let m = levels[k];
        // r[k-1] + r[k] <= dim(levels[k-1])
        let cap = dim(m).min(dim(m - 1));
        for v in 0..=cap {
            if k > 0 && r[k - 1] + v > dim(levels[k - 1]) {
                continue;
            }
            r[k] = v;
            rec(k + 1, levels, r, dim, out);
        }
        r[k] = 0;
    }
    rec(0, &levels, &mut r, &dim, &mut out);
    out
}

/// Generators with multiplicities expanded, by decreasing Maslov grading.
fn expanded_generators(shape: &HfkShape) -> Vec<Generator> {
    let mut classes: Vec<HfkClass> = shape.classes().to_vec();
    classes.sort_by(|x, y| y.maslov.cmp(&x.maslov).then(y.alexander.cmp(&x.alexander)));
    let mut out = Vec::new();
    for c in classes {
        for _ in 0..c.mult {
            out.push(Generator { label: format!("x{}", out.len() + 1), maslov: c.maslov, alexander: c.alexander });
        }
    }
    out
}

fn normalized_alexander(shape: &HfkShape) -> (String, i64) {
    let p = alexander_from_hfk(shape);
    let p = if p.eval_at_one() < 0 { -&p } else { p };
    (p.to_string(), p.eval_at_one())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurvivorSummary {
    pub differential: String,
    pub tau: i64,
    /// Maslov grading of the homology before pinning.
    pub homology_maslov: i64,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferentialSearch {
    pub genus: i64,
    pub allowed_arrows: Vec<String>,
    pub forest: bool,
    pub coefficients: Vec<String>,
    pub matrices_tried: u64,
    pub chain_complexes: u64,
    pub window: Window,
    pub survivors: Vec<SurvivorSummary>,
}

struct FiveClassOutcome {
    search: DifferentialSearch,
    accepted: Vec<(FilteredComplex, i64, Vec<TraceStep>)>,
    rejected: Vec<Rejection>,
}

fn run_five_class(adm: &AdmissibleShape, genus: i64) -> Result<FiveClassOutcome, HfkError> {
    let e = enumerate_differentials(&adm.shape)?;
    let window = Window::for_genus(genus);
    let mut survivors = Vec::new();
    let mut accepted = Vec::new();
    let mut rejected = Vec::new();
    for c in &e.complexes {
        let tau = c.tau()?;
        let maslov: Vec<i64> = c.homology_by_maslov().into_keys().collect();
        let plane = build_plane_complex(c, window)?;
        if !plane.is_translation_invariant() || plane.has_diagonal_arrows() {
            return Err(HfkError::Invariant(format!("plane complex for {} is malformed", c.support_string())));
        }
        let witness = d_squared_witness(&plane);
        survivors.push(SurvivorSummary {
            differential: c.support_string(),
            tau,
            homology_maslov: maslov[0],
            witness: witness.clone(),
        });
        let mut trace = adm.trace.clone();
        trace.push(step(
            AxiomId::FilteredDifferential,
            format!("d = {{{}}} has one-dimensional homology; tau = {tau}", c.support_string()),
        ));
        trace.push(step(
            AxiomId::CfkInfinitySymmetry,
            match &witness {
                Some(w) => format!("vertical plus horizontal differential does not square to zero: {} -> {}", w.source, w.target),
                None => "vertical plus horizontal differential squares to zero on the window interior".to_string(),
            },
        ));
        match witness {
            Some(w) => rejected.push(Rejection {
                branch: format!("genus {genus}, d = {{{}}}", c.support_string()),
                certificate: Certificate::DSquared { differential: c.support_string(), witness: w },
                trace,
            }),
            None => accepted.push((c.clone(), tau, trace)),
        }
    }
    let search = DifferentialSearch {
        genus,
        allowed_arrows: e.allowed.iter().map(|&(s, t)| format!("{}->{}", e.generators[s].label, e.generators[t].label)).collect(),
        forest: e.forest,
        coefficients: std::iter::once("0".to_string())
            .chain(super::complex::coefficient_samples().iter().map(|c| c.to_string()))
            .collect(),
        matrices_tried: e.matrices_tried,
        chain_complexes: e.chain_complexes,
        window,
        survivors,
    };
    Ok(FiveClassOutcome { search, accepted, rejected })
}

/// Builds the accepted case of a surviving five-class complex, pinned so its homology sits in Maslov grading 0.
fn five_class_case(c: &FilteredComplex, genus: i64, tau: i64, mut trace: Vec<TraceStep>) -> Result<AcceptedCase, HfkError> {
    let m_rel = *c.homology_by_maslov().keys().next().ok_or(HfkError::HomologyDimension(0))?;
    let unpinned = HfkShape::new(c.generators().iter().map(|g| HfkClass::new(g.maslov, g.alexander, 1)), false);
    let top = unpinned.maslov_offset() - m_rel;
    let shape = unpinned.pinned_at(top);
    trace.push(step(AxiomId::FilteredDifferential, format!("homology sits in Maslov grading 0, so M = {top}")));
    let mirror = if tau == genus {
        false
    } else if tau == -genus {
        true
    } else {
        return Err(HfkError::Unresolved(format!("genus {genus} survivor with tau = {tau}")));
    };
    let facts = Facts { shape: &shape, tau: Some(tau) };
    debug_assert!((rule(AxiomId::StrongQuasipositivity).applies)(&facts));
    trace.push(step(
        AxiomId::StrongQuasipositivity,
        if mirror {
            format!("fibered with tau = -g = {tau}: the mirror is strongly quasipositive")
        } else {
            format!("fibered with tau = g = {tau}: K is strongly quasipositive")
        },
    ));
    let (alexander, alexander_at_one) = normalized_alexander(&shape);
    let s = 2 * if mirror { -genus } else { genus };
    trace.push(step(AxiomId::SliceGenusBound, format!("s = {s}")));
    trace.push(step(AxiomId::KhovanovThinness, format!("d = s/2 = {}", HalfInt(s))));
    let mut case = AcceptedCase {
        label: if mirror { "mirror".into() } else { format!("genus {genus} fibered strongly quasipositive") },
        hfk: shape,
        alexander,
        alexander_at_one,
        genus,
        fibered: true,
        tau,
        identification: Some(Identification::StronglyQuasipositive { mirror }),
        s_invariant: Some(s),
        delta: None,
        differential: c.support_string(),
        trace,
        mirror: None,
    };
    case.delta = Some(delta_of_case(&case)?);
    Ok(case)
}

fn figure_eight_case(adm: &AdmissibleShape) -> Result<AcceptedCase, HfkError> {
    let mut trace = adm.trace.clone();
    let levels = homology_maslov_levels(&adm.shape);
    let [m_rel] = levels.iter().copied().collect::<Vec<_>>()[..] else {
        return Err(HfkError::Unresolved("figure-eight Maslov grading".into()));
    };
    let top = adm.shape.maslov_offset() - m_rel;
    let shape = adm.shape.pinned_at(top);
    trace.push(step(AxiomId::FilteredDifferential, format!("homology sits in Maslov grading 0, so M = {top}")));
    let gens = expanded_generators(&shape);
    let one = BigRational::one();
    let rep = FilteredComplex::from_arrows(gens, &[(0, 1, one.clone()), (3, 4, one)])?;
    let tau = rep.tau()?;
    let (alexander, alexander_at_one) = normalized_alexander(&shape);
    trace.push(step(AxiomId::FigureEightTable, "reduced Kh(4_1) is supported in delta grading 0"));
    let mut case = AcceptedCase {
        label: "figure-eight".into(),
        hfk: shape,
        alexander,
        alexander_at_one,
        genus: 1,
        fibered: true,
        tau,
        identification: Some(Identification::FigureEight),
        s_invariant: Some(0),
        delta: None,
        differential: rep.support_string(),
        trace,
        mirror: None,
    };
    case.delta = Some(delta_of_case(&case)?);
    Ok(case)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub kh_dim: u32,
    pub genus_bound: i64,
    pub hfk_dimensions: Vec<u32>,
    pub accepted: Vec<AcceptedCase>,
    pub rejected: Vec<Rejection>,
    pub axioms_used: Vec<AxiomSummary>,
    pub differential_searches: Vec<DifferentialSearch>,
    pub notes: Vec<String>,
}

impl ClassificationReport {
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs the case analysis for a reduced Khovanov homology of dimension `kh_dim`
/// (1, 3 or 5) supported in a single delta grading.
pub fn classify(kh_dim: i64, genus_bound: i64) -> Result<ClassificationReport, HfkError> {
    let hfk_dimensions = spectral_sequence_candidates(kh_dim)?;
    if kh_dim > 5 {
        return Err(HfkError::InvalidDimension(kh_dim));
    }
    if genus_bound < 2 {
        return Err(HfkError::GenusBound(genus_bound));
    }
    let kh = kh_dim as u32;
    let mut accepted = Vec::new();
    let mut rejected = Vec::new();
    let mut searches = Vec::new();
    let mut notes = vec![
        "tau is the least Alexander level whose cycles reach the homology; with this sign {x2->x3, x4->x5} gives +2 (the opposite convention also appears in the literature)".to_string(),
        format!("genus > 2 branches are checked for genus up to {genus_bound}"),
        "d^2 is checked only on window-interior nodes of the plane complex".to_string(),
    ];
    for &dim in &hfk_dimensions {
        if dim == 5 {
            continue;
        }
        let prefix = vec![step(
            AxiomId::SpectralSequence,
            format!("reduced Kh of dimension {kh} gives HFK of total dimension {dim}"),
        )];
        rejected.push(small_dim_verdict(dim, kh, prefix)?.rejection);
    }
    if kh == 5 {
        let (shapes, shape_rejections) = admissible_shapes(5, genus_bound)?;
        rejected.extend(shape_rejections);
        let outcomes: Vec<Result<(Option<AcceptedCase>, Option<FiveClassOutcome>), HfkError>> = shapes
            .par_iter()
            .map(|adm| match adm.family {
                ShapeFamily::FigureEight => figure_eight_case(adm).map(|c| (Some(c), None)),
                ShapeFamily::FiveClass { genus } => run_five_class(adm, genus).map(|o| (None, Some(o))),
            })
            .collect();
        let mut sqp: Vec<AcceptedCase> = Vec::new();
        for outcome in outcomes {
            let (case, five) = outcome?;
            if let Some(c) = case {
                accepted.push(c);
            }
            if let Some(o) = five {
                let genus = o.search.genus;
                searches.push(o.search);
                rejected.extend(o.rejected);
                for (c, tau, trace) in o.accepted {
                    sqp.push(five_class_case(&c, genus, tau, trace)?);
                }
            }
        }
        let (selves, mirrors): (Vec<_>, Vec<_>) = sqp.into_iter().partition(|c| c.is_strongly_quasipositive());
        let mut mirrors: Vec<Option<AcceptedCase>> = mirrors.into_iter().map(Some).collect();
        for mut c in selves {
            let twin = mirrors
                .iter_mut()
                .find(|m| m.as_ref().is_some_and(|m| m.hfk == c.hfk.mirrored() && m.genus == c.genus))
                .and_then(Option::take);
            c.mirror = twin.map(Box::new);
            accepted.push(c);
        }
        accepted.extend(mirrors.into_iter().flatten());
        notes.push(
            "the genus 2 strongly quasipositive case is a knot Floer shape, the shape of T(2,5); no knot is identified"
                .to_string(),
        );
    } else {
        notes.push(format!(
            "reduced Khovanov dimension {kh} is closed by the detection axioms; identified branches are listed as rejections of any other knot"
        ));
    }
    let used: BTreeSet<&str> = accepted
        .iter()
        .flat_map(|c| c.trace.iter().chain(c.mirror.iter().flat_map(|m| m.trace.iter())))
        .chain(rejected.iter().flat_map(|r| r.trace.iter()))
        .map(|s| s.rule)
        .collect();
    let axioms_used = AXIOMS.iter().filter(|r| used.contains(r.name)).map(|r| r.summary()).collect();
    Ok(ClassificationReport {
        kh_dim: kh,
        genus_bound,
        hfk_dimensions,
        accepted,
        rejected,
        axioms_used,
        differential_searches: searches,
        notes,
    })
}
