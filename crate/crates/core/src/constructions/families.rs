use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::ConstructionError;
use crate::funcspace::{FnTable, PolyFn};
use crate::gf::{Elem, FieldCtx};
use crate::spectra::{differential_spectrum, ZdbProbe};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    /// `x^3 + αTr(βx^3 + γx^9)` over `F_{2^n}`, `n` even
    NewApn,
    /// `x^{p+1} + αTr(βx^{p+1} + γx^{p^3+1})` over `F_{p^4}`
    NewFun4,
    /// the same shape over `F_{p^6}`
    NewFun6,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub family: Family,
    pub alpha: Elem,
    pub beta: Elem,
    pub gamma: Elem,
}

impl FamilyParams {
    pub fn new(family: Family, alpha: Elem, beta: Elem, gamma: Elem) -> Self {
        FamilyParams { family, alpha, beta, gamma }
    }

    pub fn describe(&self, ctx: &FieldCtx) -> String {
        format!(
            "alpha={} beta={} gamma={}",
            ctx.format_elem(self.alpha),
            ctx.format_elem(self.beta),
            ctx.format_elem(self.gamma)
        )
    }

    fn check_field(&self, ctx: &FieldCtx) -> Result<(), ConstructionError> {
        let ok = match self.family {
            Family::NewApn => ctx.p() == 2 && ctx.n() % 2 == 0,
            Family::NewFun4 => ctx.n() == 4,
            Family::NewFun6 => ctx.n() == 6,
        };
        if ok {
            Ok(())
        } else {
            Err(ConstructionError::Precondition(format!(
                "{:?} does not live over F_{{{}^{}}}",
                self.family,
                ctx.p(),
                ctx.n()
            )))
        }
    }
}

/// `α Tr(Σ c_j x^{e_j})` expanded into monomials.
fn alpha_trace_terms(ctx: &FieldCtx, alpha: Elem, inner: &[(Elem, u64)]) -> Vec<(u64, Elem)> {
    let q = ctx.q() as u64;
    let mut out = Vec::new();
    for &(c, e) in inner {
        let mut ci = c;
        let mut ei = e;
        for _ in 0..ctx.n() {
            out.push((ei, ctx.mul(alpha, ci)));
            ci = ctx.frobenius(ci);
            ei = crate::funcspace::reduce_exponent(ei * ctx.p() as u64, q);
        }
    }
    out
}

/// Closed-form permutation condition for `G(x) = x + αTr(βx + γx^3)`.
pub fn newapn_condition(ctx: &FieldCtx, prm: &FamilyParams) -> bool {
    let (a, b, g) = (prm.alpha, prm.beta, prm.gamma);
    let gamma_ok = g.is_zero() || ctx.mul(g, ctx.pow(a, 3)) == Elem::ONE;
    gamma_ok && ctx.trace(ctx.mul(b, a)) == 0
}

fn newapn_g(ctx: &Arc<FieldCtx>, prm: &FamilyParams) -> FnTable {
    FnTable::from_fn(ctx, |x| {
        let tr = ctx.trace(ctx.add(ctx.mul(prm.beta, x), ctx.mul(prm.gamma, ctx.pow(x, 3))));
        if tr == 1 {
            ctx.add(x, prm.alpha)
        } else {
            x
        }
    })
}

/// `F(x) = x^3 + αTr(βx^3 + γx^9)` as a polynomial.
pub fn newapn_poly(ctx: &Arc<FieldCtx>, prm: &FamilyParams) -> PolyFn {
    let mut terms = vec![(3, Elem::ONE)];
    terms.extend(alpha_trace_terms(ctx, prm.alpha, &[(prm.beta, 3), (prm.gamma, 9)]));
    PolyFn::new(ctx, terms)
}

#[derive(Clone, Debug, Serialize)]
pub struct NewApnOutcome {
    pub params: String,
    pub condition: bool,
    pub is_permutation: bool,
    /// uniformity of `G(x^3)`, measured only when `G` permutes
    pub delta: Option<u32>,
}

impl NewApnOutcome {
    pub fn is_apn(&self) -> bool {
        self.delta == Some(2)
    }
}

/// Checks the closed form against a brute-force permutation test and, for
/// permutations, measures the uniformity of `F = G(x^3)`.
pub fn newapn_family(ctx: &Arc<FieldCtx>, prm: &FamilyParams) -> Result<(NewApnOutcome, FnTable), ConstructionError> {
    prm.check_field(ctx)?;
    if prm.alpha.is_zero() {
        return Err(ConstructionError::Precondition("alpha must be nonzero".into()));
    }
    let condition = newapn_condition(ctx, prm);
    let is_permutation = newapn_g(ctx, prm).is_permutation();
    if condition != is_permutation {
        return Err(ConstructionError::ConditionOracleMismatch {
            closed_form: condition,
            brute_force: is_permutation,
            params: prm.describe(ctx),
        });
    }
    let table = newapn_poly(ctx, prm).evaluate();
    let delta = is_permutation.then(|| differential_spectrum(&table).delta_max);
    Ok((NewApnOutcome { params: prm.describe(ctx), condition, is_permutation, delta }, table))
}

/// Sufficient (`n = 6`) or exact (`n = 4`) condition for ZDB(p).
pub fn newfun_condition(ctx: &FieldCtx, prm: &FamilyParams) -> bool {
    let p = ctx.p() as u64;
    let minus_one = ctx.p() - 1;
    let (a, b, g) = (prm.alpha, prm.beta, prm.gamma);
    match prm.family {
        Family::NewFun4 => {
            let s = ctx.add(ctx.mul(a, b), ctx.mul(g, ctx.pow(a, p * p * p)));
            ctx.trace(s) != minus_one
        }
        Family::NewFun6 => {
            let g_ok = !g.is_zero() && ctx.pow(g, p * p * p - 1) == ctx.neg(Elem::ONE);
            g_ok && ctx.trace(ctx.mul(a, b)) != minus_one
        }
        Family::NewApn => false,
    }
}

pub fn newfun_poly(ctx: &Arc<FieldCtx>, prm: &FamilyParams) -> PolyFn {
    let p = ctx.p() as u64;
    let mut terms = vec![(p + 1, Elem::ONE)];
    terms.extend(alpha_trace_terms(ctx, prm.alpha, &[(prm.beta, p + 1), (prm.gamma, p * p * p + 1)]));
    PolyFn::new(ctx, terms)
}

#[derive(Clone, Debug, Serialize)]
pub struct NewFunOutcome {
    pub params: String,
    pub condition: bool,
    pub zdb_verified: bool,
}

/// Builds the function, tests ZDB(p) exhaustively and checks it against the closed-form
/// condition: equivalence for `n = 4`, implication for `n = 6`.
pub fn newfun_family(ctx: &Arc<FieldCtx>, prm: &FamilyParams) -> Result<(NewFunOutcome, FnTable), ConstructionError> {
    prm.check_field(ctx)?;
    let table = newfun_poly(ctx, prm).evaluate();
    let condition = newfun_condition(ctx, prm);
    let zdb_verified = ZdbProbe::new(ctx).is_zdb(table.values(), ctx.p());
    let consistent = match prm.family {
        Family::NewFun4 => condition == zdb_verified,
        _ => !condition || zdb_verified,
    };
    if !consistent {
        return Err(ConstructionError::ConditionOracleMismatch {
            closed_form: condition,
            brute_force: zdb_verified,
            params: prm.describe(ctx),
        });
    }
    Ok((NewFunOutcome { params: prm.describe(ctx), condition, zdb_verified }, table))
}

#[derive(Clone, Copy, Debug)]
pub enum SearchMode {
    /// All triples in code order (`α != 0` for the binary family), up to `budget`.
    Exhaustive { budget: Option<u64> },
    /// Uniform samples; `conditioned` rejects triples failing the closed form.
    Samples { count: u64, seed: u64, conditioned: bool },
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchHit {
    #[serde(skip)]
    pub params: FamilyParams,
    pub text: String,
    pub condition: bool,
    pub verified: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SearchSummary {
    pub visited: u64,
    pub hits: u64,
    /// triples where closed form and brute force disagree in the asserted direction
    pub mismatches: Vec<String>,
    /// verified hits that fail the closed-form condition
    pub outside_condition: u64,
}

const CHUNK: u64 = 1 << 12;

fn triples(
    ctx: &FieldCtx,
    family: Family,
    mode: SearchMode,
    accept: impl Fn(&FamilyParams) -> bool,
) -> Vec<FamilyParams> {
    let q = ctx.q() as u64;
    let first_alpha = if family == Family::NewApn { 1 } else { 0 };
    match mode {
        SearchMode::Exhaustive { budget } => {
            let total = (q - first_alpha) * q * q;
            let limit = budget.map_or(total, |b| b.min(total));
            (0..limit)
                .map(|i| {
                    let alpha = Elem((i / (q * q) + first_alpha) as u32);
                    FamilyParams::new(family, alpha, Elem((i / q % q) as u32), Elem((i % q) as u32))
                })
                .collect()
        }
        SearchMode::Samples { count, seed, conditioned } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::with_capacity(count as usize);
            while (out.len() as u64) < count {
                let prm = FamilyParams::new(
                    family,
                    Elem(rng.gen_range(first_alpha as u32..q as u32)),
                    Elem(rng.gen_range(0..q as u32)),
                    Elem(rng.gen_range(0..q as u32)),
                );
                if !conditioned || accept(&prm) {
                    out.push(prm);
                }
            }
            out
        }
    }
}

fn run_search(
    ctx: &Arc<FieldCtx>,
    list: Vec<FamilyParams>,
    eval: impl Fn(&FamilyParams) -> (bool, bool, bool) + Sync,
    on_hit: &mut dyn FnMut(&SearchHit),
) -> SearchSummary {
    let mut summary = SearchSummary::default();
    for chunk in list.chunks(CHUNK as usize) {
        let results: Vec<(FamilyParams, bool, bool, bool)> = chunk
            .par_iter()
            .map(|prm| {
                let (cond, verified, consistent) = eval(prm);
                (*prm, cond, verified, consistent)
            })
            .collect();
        for (prm, condition, verified, consistent) in results {
            summary.visited += 1;
            if !consistent {
                summary.mismatches.push(prm.describe(ctx));
            }
            if verified {
                summary.hits += 1;
                if !condition {
                    summary.outside_condition += 1;
                }
                on_hit(&SearchHit { params: prm, text: prm.describe(ctx), condition, verified });
            }
        }
    }
    summary
}

/// Searches `(α, β, γ)` for permutations `G`; hits are APN-verified.
pub fn search_newapn(ctx: &Arc<FieldCtx>, mode: SearchMode, on_hit: &mut dyn FnMut(&SearchHit)) -> SearchSummary {
    let list = triples(ctx, Family::NewApn, mode, |prm| newapn_condition(ctx, prm));
    run_search(
        ctx,
        list,
        |prm| match newapn_family(ctx, prm) {
            Ok((out, _)) => (out.condition, out.is_permutation && out.is_apn(), !out.is_permutation || out.is_apn()),
            Err(_) => (newapn_condition(ctx, prm), false, false),
        },
        on_hit,
    )
}

/// Searches the odd-characteristic family for ZDB(p) functions.
pub fn search_newfun(
    ctx: &Arc<FieldCtx>,
    family: Family,
    mode: SearchMode,
    on_hit: &mut dyn FnMut(&SearchHit),
) -> SearchSummary {
    let p = ctx.p() as u64;
    let probe = ZdbProbe::new(ctx);
    let u: Vec<Elem> = ctx.elements().map(|x| ctx.pow(x, p + 1)).collect();
    let v: Vec<Elem> = ctx.elements().map(|x| ctx.pow(x, p * p * p + 1)).collect();
    let list = triples(ctx, family, mode, |prm| newfun_condition(ctx, prm));
    run_search(
        ctx,
        list,
        |prm| {
            let multiples: Vec<Elem> = (0..ctx.p()).map(|k| ctx.mul(prm.alpha, ctx.scalar(k as i64))).collect();
            let vals: Vec<u32> = (0..ctx.q())
                .map(|x| {
                    let s = ctx.trace(ctx.add(ctx.mul(prm.beta, u[x]), ctx.mul(prm.gamma, v[x])));
                    ctx.add(u[x], multiples[s as usize]).0
                })
                .collect();
            let cond = newfun_condition(ctx, prm);
            let zdb = probe.is_zdb(&vals, ctx.p());
            let consistent = if family == Family::NewFun4 { cond == zdb } else { !cond || zdb };
            (cond, zdb, consistent)
        },
        on_hit,
    )
}
