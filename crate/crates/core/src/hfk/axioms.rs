//! Cited theorems, written as data the case analysis consults.
//!
//! Each rule carries its citation, a one-line statement, an applicability
//! predicate over [`Facts`], and what the engine concludes when it applies.

use serde::Serialize;

use super::shape::HfkShape;
use crate::poly::alexander_from_hfk;

/// Reduced Khovanov homology of the figure-eight knot, `(q, h)` with dimension one each.
pub const FIGURE_EIGHT_REDUCED_KH: [(i64, i64); 5] = [(-4, -2), (-2, -1), (0, 0), (2, 1), (4, 2)];

/// What the engine knows about a branch when it consults a rule.
#[derive(Clone, Copy, Debug)]
pub struct Facts<'a> {
    pub shape: &'a HfkShape,
    pub tau: Option<i64>,
}

impl<'a> Facts<'a> {
    pub fn shape(shape: &'a HfkShape) -> Self {
        Facts { shape, tau: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AxiomId {
    SpectralSequence,
    UnknotDetection,
    TrefoilDetection,
    EulerCharacteristic,
    ParityAtZero,
    GenusDetection,
    Symmetry,
    GenusOneFibered,
    FiberedDetection,
    NextToTop,
    FilteredDifferential,
    CfkInfinitySymmetry,
    StrongQuasipositivity,
    KhovanovThinness,
    SliceGenusBound,
    FigureEightTable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    /// Restricts the shapes under consideration.
    Constrain,
    /// The branch cannot occur.
    Reject,
    /// The knot is identified (possibly up to a short list).
    Identify,
    /// Adds a property (fibered, strongly quasipositive, a grading value).
    Annotate,
}

#[derive(Clone, Copy, Debug)]
pub struct AxiomRule {
    pub id: AxiomId,
    pub name: &'static str,
    pub citation: &'static str,
    pub statement: &'static str,
    pub applies: fn(&Facts) -> bool,
    pub conclusion: Conclusion,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomSummary {
    pub name: &'static str,
    pub citation: &'static str,
    pub statement: &'static str,
    pub conclusion: Conclusion,
}

impl AxiomRule {
    pub fn summary(&self) -> AxiomSummary {
        AxiomSummary { name: self.name, citation: self.citation, statement: self.statement, conclusion: self.conclusion }
    }
}

fn always(_: &Facts) -> bool {
    true
}

pub static AXIOMS: [AxiomRule; 16] = [
    AxiomRule {
        id: AxiomId::SpectralSequence,
        name: "spectral_sequence",
        citation: "A spectral sequence from Khovanov homology to knot Floer homology (reduced Kh of K to HFK of the mirror)",
        statement: "dim HFK <= dim reduced Kh with the same parity, and HFK is supported in one delta grading when reduced Kh is",
        applies: |f| f.shape.single_delta().is_some(),
        conclusion: Conclusion::Constrain,
    },
    AxiomRule {
        id: AxiomId::UnknotDetection,
        name: "unknot_detection",
        citation: "Ozsvath-Szabo, Holomorphic disks and genus bounds, Theorem 1.2",
        statement: "HFK of total dimension 1 detects the unknot",
        applies: |f| f.shape.total_dim() == 1,
        conclusion: Conclusion::Identify,
    },
    AxiomRule {
        id: AxiomId::TrefoilDetection,
        name: "trefoil_detection",
        citation: "Hedden-Watson, On the geography and botany of knot Floer homology, Corollary 8 (valid over Q)",
        statement: "HFK of total dimension 3 detects the trefoils",
        applies: |f| f.shape.total_dim() == 3,
        conclusion: Conclusion::Identify,
    },
    AxiomRule {
        id: AxiomId::EulerCharacteristic,
        name: "euler_characteristic",
        citation: "Ozsvath-Szabo, Holomorphic disks and knot invariants (graded Euler characteristic)",
        statement: "sum (-1)^m dim HFK_m(K,a) t^a is the Alexander polynomial, so it evaluates to +-1 at t = 1",
        applies: |f| alexander_from_hfk(f.shape).eval_at_one().abs() != 1,
        conclusion: Conclusion::Reject,
    },
    AxiomRule {
        id: AxiomId::ParityAtZero,
        name: "parity_at_zero",
        citation: "Consequence of the Euler characteristic rule and Alexander(1) = 1",
        statement: "dim HFK(K,0) is odd",
        applies: |f| f.shape.dim0() % 2 == 0,
        conclusion: Conclusion::Reject,
    },
    AxiomRule {
        id: AxiomId::GenusDetection,
        name: "genus_detection",
        citation: "Ozsvath-Szabo, Holomorphic disks and genus bounds, Theorem 1.2",
        statement: "g(K) = max { a : HFK(K,a) != 0 }; genus 0 means the unknot, whose HFK is 1-dimensional",
        applies: |f| f.shape.genus() == 0 && f.shape.total_dim() != 1,
        conclusion: Conclusion::Reject,
    },
    AxiomRule {
        id: AxiomId::Symmetry,
        name: "symmetry",
        citation: "Ozsvath-Szabo, Holomorphic disks and knot invariants, Equation 3",
        statement: "HFK_m(K,a) = HFK_{m-2a}(K,-a)",
        applies: |f| !f.shape.is_symmetric(),
        conclusion: Conclusion::Reject,
    },
    AxiomRule {
        id: AxiomId::GenusOneFibered,
        name: "genus_one_fibered",
        citation: "Ghiggini, Knot Floer homology detects genus-one fibred knots; Juhasz, sutured Floer homology",
        statement: "a genus-one fibered knot is a trefoil or the figure-eight",
        applies: |f| f.shape.genus() == 1 && f.shape.top_dim() == 1,
        conclusion: Conclusion::Identify,
    },
    AxiomRule {
        id: AxiomId::FiberedDetection,
        name: "fibered_detection",
        citation: "Ghiggini; Ni, Knot Floer homology detects fibred knots; Juhasz",
        statement: "dim HFK(K,g) = 1 if and only if K is fibered",
        applies: |f| f.shape.top_dim() == 1,
        conclusion: Conclusion::Annotate,
    },
    AxiomRule {
        id: AxiomId::NextToTop,
        name: "next_to_top",
        citation: "A note on the knot Floer homology of fibered knots (valid over Q)",
        statement: "a fibered knot of genus g > 1 has HFK(K,g-1) != 0",
        applies: |f| f.shape.top_dim() == 1 && f.shape.genus() > 1 && f.shape.dim_at(f.shape.genus() - 1) == 0,
        conclusion: Conclusion::Reject,
    },
    AxiomRule {
        id: AxiomId::FilteredDifferential,
        name: "filtered_differential",
        citation: "Ozsvath-Szabo, Holomorphic disks and knot invariants",
        statement: "HFK carries a differential lowering m by 1 and not raising a whose homology is HF(S^3) = Q in Maslov grading 0",
        applies: always,
        conclusion: Conclusion::Constrain,
    },
    AxiomRule {
        id: AxiomId::CfkInfinitySymmetry,
        name: "cfk_infinity_symmetry",
        citation: "Ozsvath-Szabo, Holomorphic disks and knot invariants, Proposition 3.9",
        statement: "C{j=0} is filtered chain homotopy equivalent to C{i=0}; single delta support forbids diagonal arrows",
        applies: |f| f.shape.single_delta().is_some(),
        conclusion: Conclusion::Constrain,
    },
    AxiomRule {
        id: AxiomId::StrongQuasipositivity,
        name: "strong_quasipositivity",
        citation: "Hedden, Notions of positivity and the Ozsvath-Szabo concordance invariant",
        statement: "a fibered knot with tau = g is strongly quasipositive",
        applies: |f| f.shape.top_dim() == 1 && f.tau.is_some_and(|t| t.abs() == f.shape.genus()),
        conclusion: Conclusion::Annotate,
    },
    AxiomRule {
        id: AxiomId::KhovanovThinness,
        name: "khovanov_thinness",
        citation: "Khovanov, Patterns in knot cohomology I, Proposition 3.6",
        statement: "reduced Kh in one delta grading d makes unreduced Kh thin in d +- 1/2, so s = 2d",
        applies: always,
        conclusion: Conclusion::Annotate,
    },
    AxiomRule {
        id: AxiomId::SliceGenusBound,
        name: "slice_genus_bound",
        citation: "Plamenevskaya, Proposition 4; Shumakovitch, Proposition 1.7; Rudolph (slice genus g4 = g for strongly quasipositive knots)",
        statement: "a strongly quasipositive knot has s = 2 g4 = 2 g",
        applies: |f| f.shape.top_dim() == 1 && f.tau.is_some_and(|t| t.abs() == f.shape.genus()),
        conclusion: Conclusion::Annotate,
    },
    AxiomRule {
        id: AxiomId::FigureEightTable,
        name: "figure_eight_table",
        citation: "Reduced Khovanov homology of the figure-eight knot over Q",
        statement: "reduced Kh(4_1) = Q(-4,-2) + Q(-2,-1) + Q(0,0) + Q(2,1) + Q(4,2), all in delta grading 0",
        applies: |f| f.shape.genus() == 1 && f.shape.total_dim() == 5,
        conclusion: Conclusion::Annotate,
    },
];

pub fn rule(id: AxiomId) -> &'static AxiomRule {
    AXIOMS.iter().find(|r| r.id == id).expect("every id has a rule")
}
