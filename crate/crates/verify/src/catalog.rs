//! The named checks and the statements they cover.

use serde::Serialize;

use crate::checks::{self, ORACLE_TOLERANCE};
use crate::trial::{Outcome, Trial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Exact,
    Numeric,
    Both,
}

pub type CheckFn = fn(&mut Trial) -> polylog_core::Result<Outcome>;

#[derive(Clone, Copy)]
pub struct CheckDescriptor {
    pub id: &'static str,
    /// The mathematical statement the check exercises.
    pub anchor: &'static str,
    pub tier: Tier,
    pub default_trials: usize,
    /// Residual bound used instead of the run tolerance when tighter.
    pub pinned_tolerance: Option<f64>,
    /// Reported but not counted against the run.
    pub diagnostic: bool,
    pub run: CheckFn,
}

impl std::fmt::Debug for CheckDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CheckDescriptor").field("id", &self.id).field("tier", &self.tier).finish()
    }
}

const fn check(id: &'static str, anchor: &'static str, tier: Tier, default_trials: usize, run: CheckFn) -> CheckDescriptor {
    CheckDescriptor { id, anchor, tier, default_trials, pinned_tolerance: None, diagnostic: false, run }
}

use Tier::{Both, Exact, Numeric};

pub static CATALOG: &[CheckDescriptor] = &[
    check("dd_zero", "d∘d = 0 on the Grassmannian complex", Exact, 100, checks::dd_zero),
    check("dprime_dprime_zero", "d′∘d′ = 0 on the Grassmannian complex", Exact, 100, checks::dprime_dprime_zero),
    check("bicomplex_anticommutes", "d∘d′ + d′∘d = 0 in the Grassmannian bicomplex", Exact, 100, checks::bicomplex_anticommutes),
    check(
        "cross_ratio_identity_2did",
        "Δ(0,1)Δ(2,3) = Δ(0,2)Δ(1,3) − Δ(0,3)Δ(1,2) in dimension 2",
        Exact,
        100,
        checks::cross_ratio_identity_2did,
    ),
    check("tau0_2_volume_invariance", "τ₀² does not depend on the volume form", Exact, 100, checks::tau0_2_volume_invariance),
    check(
        "tau0_2_length_invariance",
        "τ₀²∘d does not depend on the lengths of the vectors",
        Exact,
        100,
        checks::tau0_2_length_invariance,
    ),
    check("claim1", "∂ᴰ∘τ₁² = τ₀²∘d on C₄(2)", Exact, 100, checks::claim1),
    check("tau12d_kernel", "τ₁²∘d lands in ker ∂ᴰ", Exact, 100, checks::tau12d_kernel),
    check("gon5term", "projected five-term relation in B₂ for five points in the plane", Both, 50, checks::gon5term),
    check("lemma_4pt", "projected five-term relation in β₂ᴰ", Both, 50, checks::lemma_4pt),
    check(
        "example_four_term",
        "τ₁²∘d of (0, ∞, 1, a, b) gives Cathelineau's four-term relation for D = a(1−a)∂_a + b(1−b)∂_b",
        Both,
        1,
        checks::example_four_term,
    ),
    check("tau0_3_volume", "τ₀³ does not depend on the volume element", Exact, 100, checks::tau0_3_volume),
    check("tau1_3_volume", "τ₁³ does not depend on the volume element", Both, 25, checks::tau1_3_volume),
    check("tau1_3_length", "τ₁³∘d does not depend on the lengths of the vectors", Both, 10, checks::tau1_3_length),
    check("claim3a", "τ₀³∘d = ∂ᴰ∘τ₁³ in F⊗∧²F^×", Exact, 25, checks::claim3a),
    check("tau1_3_alt_form", "τ₁³ = (1/3)·Alt₅{⟦r(0|1234)⟧ᴰ₂⊗(012) + Dlog(012)⊗[r(0|1234)]₂}", Both, 25, checks::tau1_3_alt_form),
    check(
        "triple_ratio_factorization",
        "the triple ratio is a ratio of two projected cross-ratios in three ways",
        Exact,
        100,
        checks::triple_ratio_factorization,
    ),
    check("triple_ratio_symmetry", "the cycle (012)(345) fixes every τ₂³ generator", Exact, 100, checks::triple_ratio_symmetry),
    check("claim3b", "∂ᴰ∘τ₂³ = τ₁³∘d with τ₂³ = (2/45)·Alt₆", Both, 5, checks::claim3b),
    CheckDescriptor {
        diagnostic: true,
        ..check("claim3b_rescaled", "∂ᴰ∘τ₂³ = τ₁³∘d with the prefactor −1/90 in τ₂³", Both, 5, checks::claim3b_rescaled)
    },
    check("corollary_kernel", "τ₁³∘d lands in ker ∂ᴰ", Exact, 25, checks::corollary_tau1_3_d_kernel),
    check("partial_sq_zero", "∂ᴰ∘∂ᴰ₃ = 0 on β₃ᴰ", Exact, 100, checks::partial_sq_zero),
    check(
        "relators_beta2D",
        "two-term, inversion, five-term and distribution relations hold in β₂ᴰ",
        Exact,
        100,
        checks::relators_beta2d,
    ),
    check("relator_five_term_B2", "δ₂ and D₂ vanish on the five-term relation of B₂", Both, 50, checks::relator_five_term_b2),
    check("relator_four_term_beta2", "∂ vanishes on Cathelineau's four-term relation", Both, 100, checks::relator_four_term_beta2),
    check(
        "relator_distribution2_beta2",
        "∂ vanishes on the distribution relation for m = 2 in β₂",
        Exact,
        100,
        checks::relator_distribution2_beta2,
    ),
    check("relator_three_term_beta3", "∂ᴰ₃ vanishes on the three-term relation in β₃", Both, 25, checks::relator_three_term_beta3),
    check("relator_22term", "∂ᴰ₃ vanishes on the 22-term relation in β₃", Both, 10, checks::relator_22term),
    check("remark_alld_1", "τ₀²∘d′ = 0 on C₄(3)", Exact, 50, checks::remark_alld_1),
    check("remark_alld_2", "τ₁²∘d′ = 0 on C₅(3)", Exact, 50, checks::remark_alld_2),
    check("remark_alld_3", "τ₀³∘d′ = 0 on C₅(4)", Exact, 50, checks::remark_alld_3),
    check("remark_alld_n", "τ₀ⁿ∘d′ = 0 on C_{n+2}(n+1), n = 2..5", Exact, 20, checks::remark_alld_n),
    check("tau0_n_reductions", "τ₀ⁿ specializes to τ₀² and, up to sign, to τ₀³", Exact, 100, checks::tau0_n_reductions),
    CheckDescriptor {
        pinned_tolerance: Some(ORACLE_TOLERANCE),
        ..check(
            "numeric_oracles",
            "D₂ satisfies the five-term equation, H the four-term equation, D₂(i) = Catalan's constant",
            Numeric,
            100,
            checks::numeric_oracles,
        )
    },
];

pub fn find(id: &str) -> Option<&'static CheckDescriptor> {
    CATALOG.iter().find(|c| c.id == id)
}

pub fn ids() -> Vec<&'static str> {
    CATALOG.iter().map(|c| c.id).collect()
}

/// Statements that must each be covered by at least one registered check.
pub static STATEMENTS: &[(&str, &[&str])] = &[
    ("boundary maps d and d′ of the Grassmannian complex", &["dd_zero", "dprime_dprime_zero"]),
    ("Grassmannian bicomplex", &["bicomplex_anticommutes"]),
    ("cross-ratio and the identity among 2×2 determinants", &["cross_ratio_identity_2did"]),
    ("δ₂ and the five-term relation in B₂", &["relator_five_term_B2", "gon5term"]),
    ("triple ratio and the τ₂³ generators", &["triple_ratio_factorization", "triple_ratio_symmetry"]),
    ("Cathelineau's ∂ and the four-term relation", &["relator_four_term_beta2"]),
    ("functional equations in β₂", &["relator_distribution2_beta2"]),
    ("functional equations in β₃, including the 22-term relation", &["relator_three_term_beta3", "relator_22term"]),
    ("β₂ᴰ, β₃ᴰ and the differentials ∂ᴰ₂, ∂ᴰ₃", &["partial_sq_zero", "relators_beta2D"]),
    ("functional equations in β₂ᴰ and the fifth-term degeneration", &["relators_beta2D", "example_four_term"]),
    ("τ₀² and its independence of choices", &["tau0_2_volume_invariance", "tau0_2_length_invariance"]),
    ("commutativity of the weight-two square", &["claim1"]),
    ("τ₁²∘d in ker ∂ᴰ", &["tau12d_kernel"]),
    ("projected five-term relations", &["gon5term", "lemma_4pt"]),
    ("the four-term example over ℚ(a, b)", &["example_four_term"]),
    ("τ₀³ and τ₁³ and their independence of choices", &["tau0_3_volume", "tau1_3_volume", "tau1_3_length"]),
    ("left square of the weight-three diagram", &["claim3a"]),
    ("right square of the weight-three diagram", &["claim3b"]),
    ("the alternation-sum form of τ₁³", &["tau1_3_alt_form"]),
    ("weight-three diagram commutes; τ₁³∘d in ker ∂ᴰ", &["claim3a", "claim3b", "corollary_kernel"]),
    ("compositions through d′ vanish", &["remark_alld_1", "remark_alld_2", "remark_alld_3", "remark_alld_n"]),
    ("numeric realizations D₂ and H", &["numeric_oracles"]),
];

/// Statements with no registered check; empty when coverage is complete.
pub fn audit() -> Vec<&'static str> {
    STATEMENTS
        .iter()
        .filter(|(_, ids)| ids.is_empty() || ids.iter().any(|id| find(id).is_none()))
        .map(|(s, _)| *s)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn ids_are_unique() {
        let set: BTreeSet<_> = CATALOG.iter().map(|c| c.id).collect();
        assert_eq!(set.len(), CATALOG.len());
    }

    #[test]
    fn coverage_is_complete() {
        assert!(audit().is_empty(), "{:?}", audit());
    }

    #[test]
    fn required_ids_are_registered() {
        for id in [
            "dd_zero",
            "dprime_dprime_zero",
            "cross_ratio_identity_2did",
            "tau0_2_volume_invariance",
            "tau0_2_length_invariance",
            "claim1",
            "tau12d_kernel",
            "gon5term",
            "lemma_4pt",
            "example_four_term",
            "tau0_3_volume",
            "tau1_3_volume",
            "tau1_3_length",
            "claim3a",
            "tau1_3_alt_form",
            "triple_ratio_factorization",
            "triple_ratio_symmetry",
            "claim3b",
            "partial_sq_zero",
            "relators_beta2D",
            "relator_four_term_beta2",
            "relator_22term",
            "remark_alld_1",
            "remark_alld_2",
            "remark_alld_3",
            "remark_alld_n",
        ] {
            assert!(find(id).is_some(), "{id}");
        }
    }
}
