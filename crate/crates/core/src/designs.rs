//! Partial difference sets in `(F_{p^n}, +)`: certification by difference
//! counting and by exact character sums, predicted parameters, and the
//! cyclotomic and line-union comparison sets.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cyclotomic::{fourier, fwht, CycInt};
use crate::funcspace::FnTable;
use crate::gf::{is_prime, Elem, FieldCtx, FieldError};

#[derive(Debug, Error)]
pub enum DesignError {
    #[error("image set is empty")]
    EmptySet,
    #[error("0 lies in the candidate set")]
    ContainsZero,
    #[error("|D| = {got}, expected {expected}")]
    SizeMismatch { expected: u64, got: u64 },
    #[error("element {element} has {count} representations, expected {expected}")]
    CountMismatch { element: String, count: u64, expected: u64 },
    #[error("parameters {0} violate the counting identity")]
    CountingIdentity(PdsParams),
    #[error("character equation fails at a = {0}")]
    CharacterMismatch(String),
    #[error("set is not closed under negation")]
    NotRegularSet,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PdsParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

impl fmt::Display for PdsParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.v, self.k, self.lambda, self.mu)
    }
}

/// `(N^2, r(N+ε), -εN + r^2 + 3εr, r^2 + εr)`; negative Latin square type when `ε = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LatinType {
    pub n: u64,
    pub r: u64,
    pub epsilon: i8,
}

impl LatinType {
    pub fn is_negative(&self) -> bool {
        self.epsilon == 1
    }

    pub fn label(&self) -> &'static str {
        if self.is_negative() {
            "negative Latin square"
        } else {
            "Latin square"
        }
    }
}

fn isqrt(v: u64) -> Option<u64> {
    let r = (v as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).find(|&s| s * s == v)
}

impl PdsParams {
    pub fn new(v: u64, k: u64, lambda: u64, mu: u64) -> Self {
        PdsParams { v, k, lambda, mu }
    }

    /// Difference-set parameters `(v, k, λ)` as a PDS with `μ = λ`.
    pub fn ds(v: u64, k: u64, lambda: u64) -> Self {
        PdsParams { v, k, lambda, mu: lambda }
    }

    pub fn is_ds(&self) -> bool {
        self.lambda == self.mu
    }

    /// `k^2 = (k - μ) + k(λ - μ) + μv`.
    pub fn counting_identity(&self) -> bool {
        let (v, k, l, m) = (self.v as i128, self.k as i128, self.lambda as i128, self.mu as i128);
        k * k == (k - m) + k * (l - m) + m * v
    }

    /// Every Latin-type description that reproduces these parameters.
    pub fn latin_types(&self) -> Vec<LatinType> {
        let Some(n) = isqrt(self.v) else { return Vec::new() };
        let mut out = Vec::new();
        for eps in [1i64, -1] {
            let base = n as i64 + eps;
            if base <= 0 || self.k as i64 % base != 0 {
                continue;
            }
            let r = self.k as i64 / base;
            let lambda = -eps * n as i64 + r * r + 3 * eps * r;
            let mu = r * r + eps * r;
            if lambda == self.lambda as i64 && mu == self.mu as i64 {
                out.push(LatinType { n, r: r as u64, epsilon: eps as i8 });
            }
        }
        out
    }

    /// Integer roots `((λ-μ) ± √((μ-λ)^2 - 4(μ-k))) / 2` of the character
    /// equation for regular sets, when the discriminant is a square.
    pub fn character_roots(&self) -> Option<(i64, i64)> {
        let (k, l, m) = (self.k as i64, self.lambda as i64, self.mu as i64);
        let disc = (m - l) * (m - l) - 4 * (m - k);
        let s = isqrt(u64::try_from(disc).ok()?)? as i64;
        if (l - m + s) % 2 != 0 {
            return None;
        }
        Some(((l - m + s) / 2, (l - m - s) / 2))
    }

    /// Eigenvalues `k, r, s` of the strongly regular graph with multiplicities
    /// from `k + f r + g s = 0` and `1 + f + g = v`; `None` if not integral.
    pub fn eigen_multiplicities(&self) -> Option<(i64, i64, i64, i64)> {
        let (r, s) = self.character_roots()?;
        let (v, k) = (self.v as i64, self.k as i64);
        // f + g = v - 1, f r + g s = -k
        let num = -k - (v - 1) * s;
        if r == s || num % (r - s) != 0 {
            return None;
        }
        let f = num / (r - s);
        Some((r, s, f, v - 1 - f))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DesignKind {
    Pds,
    Ds,
}

#[derive(Clone, Debug, Serialize)]
pub struct DesignCertificate {
    pub d: Vec<u32>,
    pub params: PdsParams,
    pub kind: DesignKind,
    pub regular: bool,
    /// `diff_histogram[g]` = number of ordered pairs in `D` with difference `g`
    pub diff_histogram: Vec<u64>,
    /// multiset of `χ_a(D)` over `a != 0`
    pub char_values: BTreeMap<CycInt, u64>,
}

/// `D = image(F) \ {0}`.
pub fn image_pds(f: &FnTable) -> Result<Vec<u32>, DesignError> {
    let d: Vec<u32> = f.image_set().into_iter().filter(|&v| v != 0).collect();
    if d.is_empty() {
        Err(DesignError::EmptySet)
    } else {
        Ok(d)
    }
}

pub fn is_regular_set(ctx: &FieldCtx, d: &[u32]) -> bool {
    let mut member = vec![false; ctx.q()];
    for &x in d {
        member[x as usize] = true;
    }
    d.iter().all(|&x| member[ctx.neg(Elem(x)).idx()])
}

/// Ordered-pair difference counts.
pub fn difference_histogram(ctx: &FieldCtx, d: &[u32]) -> Vec<u64> {
    let mut hist = vec![0u64; ctx.q()];
    for &x in d {
        for &y in d {
            if x != y {
                hist[ctx.sub(Elem(x), Elem(y)).idx()] += 1;
            }
        }
    }
    hist
}

/// `χ_a(D) = Σ_{x∈D} ζ_p^{Tr(ax)}` for every `a`, indexed by code.
pub fn character_values(ctx: &FieldCtx, d: &[u32]) -> Vec<CycInt> {
    let q = ctx.q();
    let p = ctx.p();
    let dual: Vec<usize> = (0..q as u32).into_par_iter().map(|a| ctx.trace_dual(Elem(a))).collect();
    if p == 2 {
        let mut ind = vec![0i64; q];
        for &x in d {
            ind[x as usize] = 1;
        }
        fwht(&mut ind);
        dual.iter().map(|&u| CycInt::from_int(2, ind[u])).collect()
    } else {
        let mut ind = vec![CycInt::zero(p); q];
        for &x in d {
            ind[x as usize] = CycInt::from_int(p, 1);
        }
        fourier(&mut ind, p, ctx.n());
        dual.iter().map(|&u| ind[u].clone()).collect()
    }
}

/// Direct evaluation of one character sum.
pub fn character_value(ctx: &FieldCtx, d: &[u32], a: Elem) -> CycInt {
    let mut counts = vec![0i64; ctx.p() as usize];
    for &x in d {
        counts[ctx.trace(ctx.mul(a, Elem(x))) as usize] += 1;
    }
    CycInt::from_counts(ctx.p(), &counts)
}

/// `X_a = 1 + d χ_a(D)`.
pub fn x_value(chi: &CycInt, d: u64) -> CycInt {
    &CycInt::from_int(chi.p(), 1) + &chi.scale(d as i64)
}

/// Certifies `D` by exhaustive difference counting and then by the
/// character equation for every nonprincipal character.
pub fn verify_design(
    ctx: &FieldCtx,
    d: &[u32],
    params: PdsParams,
    kind: DesignKind,
) -> Result<DesignCertificate, DesignError> {
    let mut d = d.to_vec();
    d.sort_unstable();
    d.dedup();
    if d.first() == Some(&0) {
        return Err(DesignError::ContainsZero);
    }
    if params.v != ctx.q() as u64 || d.len() as u64 != params.k {
        return Err(DesignError::SizeMismatch { expected: params.k, got: d.len() as u64 });
    }
    if !params.counting_identity() {
        return Err(DesignError::CountingIdentity(params));
    }
    let hist = difference_histogram(ctx, &d);
    let mut member = vec![false; ctx.q()];
    for &x in &d {
        member[x as usize] = true;
    }
    for g in 1..ctx.q() {
        let expected = match kind {
            DesignKind::Ds => params.lambda,
            DesignKind::Pds if member[g] => params.lambda,
            DesignKind::Pds => params.mu,
        };
        if hist[g] != expected {
            return Err(DesignError::CountMismatch {
                element: ctx.format_elem(Elem(g as u32)),
                count: hist[g],
                expected,
            });
        }
    }
    let chars = character_values(ctx, &d);
    let p = ctx.p();
    let (k, l, m) = (params.k as i64, params.lambda as i64, params.mu as i64);
    let mut char_values = BTreeMap::new();
    for (a, chi) in chars.iter().enumerate().skip(1) {
        let lhs = chi.norm_sq();
        let rhs = match kind {
            DesignKind::Ds => CycInt::from_int(p, k - l),
            DesignKind::Pds => &CycInt::from_int(p, k - m) + &chi.scale(l - m),
        };
        if lhs != rhs {
            return Err(DesignError::CharacterMismatch(ctx.format_elem(Elem(a as u32))));
        }
        *char_values.entry(chi.clone()).or_insert(0) += 1;
    }
    Ok(DesignCertificate {
        regular: is_regular_set(ctx, &d),
        d,
        params,
        kind,
        diff_histogram: hist,
        char_values,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Prediction {
    pub params: PdsParams,
    pub kind: DesignKind,
    pub latin: Vec<LatinType>,
}

fn exact_div(num: i128, den: i128, what: &str) -> Result<u64, DesignError> {
    if den == 0 || num % den != 0 || num / den < 0 {
        return Err(DesignError::Precondition(format!("{what}: {num}/{den} is not a nonnegative integer")));
    }
    Ok((num / den) as u64)
}

/// Parameters of `image(G(x^{p^t+1})) \ {0}`: Paley-type sets for `t = 0`,
/// otherwise the `n = 2kt`, `ε = (-1)^k` family.
pub fn predicted_params(p: u32, t: u32, n: u32) -> Result<Prediction, DesignError> {
    if !is_prime(p) || n == 0 {
        return Err(DesignError::Precondition("p must be prime and n >= 1".into()));
    }
    let pp = p as i128;
    let v = pp.pow(n);
    let (params, kind) = if t == 0 {
        if p == 2 {
            return Err(DesignError::Precondition("t = 0 needs odd p".into()));
        }
        let k = exact_div(v - 1, 2, "k")?;
        if v % 4 == 3 {
            (PdsParams::ds(v as u64, k, exact_div(v - 3, 4, "λ")?), DesignKind::Ds)
        } else {
            (PdsParams::new(v as u64, k, exact_div(v - 5, 4, "λ")?, exact_div(v - 1, 4, "μ")?), DesignKind::Pds)
        }
    } else {
        if n % (2 * t) != 0 {
            return Err(DesignError::Precondition(format!("2t = {} does not divide n = {n}", 2 * t)));
        }
        let kk = n / (2 * t);
        let eps: i128 = if kk % 2 == 0 { 1 } else { -1 };
        let pt = pp.pow(t);
        let half = pp.pow(n / 2);
        let den = (pt + 1) * (pt + 1);
        let k = exact_div(v - 1, pt + 1, "k")?;
        let lambda = exact_div(v - 3 * pt - 2 - eps * half * pt * pt + eps * half * pt, den, "λ")?;
        let mu = exact_div(v - eps * half + eps * half * pt - pt, den, "μ")?;
        (PdsParams::new(v as u64, k, lambda, mu), DesignKind::Pds)
    };
    Ok(Prediction { latin: params.latin_types(), params, kind })
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut m, mut s) = (q, 0);
    while m % p == 0 {
        m /= p;
        s += 1;
    }
    (m == 1).then_some((p, s))
}

/// Union of the `(q+1)`-th cyclotomic classes `C_j = {w^{i(q+1)+j}}` of
/// `F_{q^{2m}}` for `j ∈ I`, with the classical parameters for `u = |I|`
/// and `η = ((-q)^m - 1)/(q + 1)`.
pub fn cyclotomic_pds(q: u32, m: u32, classes: &[u32]) -> Result<(Arc<FieldCtx>, Vec<u32>, PdsParams), DesignError> {
    let (p, s) = prime_power(q).ok_or_else(|| DesignError::Precondition(format!("{q} is not a prime power")))?;
    let ctx = FieldCtx::build_default(p, 2 * m * s)?;
    let e = q as u64 + 1;
    if classes.iter().any(|&j| j as u64 >= e) {
        return Err(DesignError::Precondition(format!("class index outside 0..={q}")));
    }
    let mut idx: Vec<u32> = classes.to_vec();
    idx.sort_unstable();
    idx.dedup();
    let order = ctx.order() as u64;
    let mut d: Vec<u32> = idx
        .iter()
        .flat_map(|&j| (0..order / e).map(move |i| i * e + j as u64))
        .map(|k| ctx.exp(k).0)
        .collect();
    d.sort_unstable();
    let (qi, u) = (q as i128, idx.len() as i128);
    let v = qi.pow(2 * m);
    let eta = ((-qi).pow(m) - 1) / (qi + 1);
    let k = u * (v - 1) / (qi + 1);
    let lambda = u * u * eta * eta + (3 * u - qi - 1) * eta - 1;
    let mu = u * u * eta * eta + u * eta;
    let params = PdsParams::new(v as u64, k as u64, lambda as u64, mu as u64);
    Ok((ctx, d, params))
}

/// Union of `r` lines through 0 of the plane `F_q^2`, realised as `F_{q^2}`
/// whose lines are the cosets `w^j F_q^*` (plus 0), `0 <= j <= q`.
pub fn pcp_pds(q: u32, lines: &[u32]) -> Result<(Arc<FieldCtx>, Vec<u32>, PdsParams), DesignError> {
    let (ctx, d, _) = cyclotomic_pds(q, 1, lines)?;
    let r = {
        let mut l = lines.to_vec();
        l.sort_unstable();
        l.dedup();
        l.len() as u64
    };
    let q = q as u64;
    let params = PdsParams::new(q * q, r * (q - 1), q + r * r - 3 * r, r * r - r);
    Ok((ctx, d, params))
}
