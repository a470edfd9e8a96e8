//! Generative machinery: composed power maps, permutation completion, the
//! `x^3 + αTr(βx^3 + γx^9)` and `x^{p+1} + αTr(βx^{p+1} + γx^{p^3+1})`
//! families, injection spaces, Artin–Schreier equations, gcd formulas and
//! constant composition codes.

mod artin;
mod ccc;
mod composed;
mod families;
mod gcd;
mod injection;

pub use artin::{artin_schreier_condition, solve_artin_schreier};
pub use ccc::{ccc_from_zdb, CccReport};
pub use composed::{characteristic_h, check_composed_uniformity, extend_to_permutation, ComposedVerdict};
pub use families::{
    newapn_condition, newapn_family, newfun_condition, newfun_family, search_newapn, search_newfun, Family,
    FamilyParams, NewApnOutcome, NewFunOutcome, SearchHit, SearchMode, SearchSummary,
};
pub use gcd::{do_form_decompose, gcd_lemma, ord2, DoTerm, GcdBreakdown};
pub use injection::{injection_space, perturb, quadratic_h_filter, InjectionSpace};

use thiserror::Error;

use crate::gf::Elem;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("not injective on the coset: G({u}) = G({v})")]
    NotInjectiveOnCoset { u: String, v: String },
    #[error("closed-form condition says {closed_form} but brute force says {brute_force} for {params}")]
    ConditionOracleMismatch { closed_form: bool, brute_force: bool, params: String },
    #[error("gcd formula mismatch for p={p}, t={t}, n={n}: {detail}")]
    FormulaMismatch { p: u32, t: u32, n: u32, detail: String },
    #[error("exponent {exponent} is not of the form p^k + p^l")]
    NotDoShape { exponent: u64 },
    #[error("function is not zero-difference balanced")]
    NotZdb,
    #[error("{0}")]
    Precondition(String),
}

pub(crate) fn fmt_pair(ctx: &crate::gf::FieldCtx, u: Elem, v: Elem) -> ConstructionError {
    ConstructionError::NotInjectiveOnCoset { u: ctx.format_elem(u), v: ctx.format_elem(v) }
}
