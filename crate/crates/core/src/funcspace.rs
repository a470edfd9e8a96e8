//! Functions `F_{p^n} → F_{p^n}`: sparse polynomials, value tables, power
//! cosets and injectivity of restrictions.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::gf::{Elem, FieldCtx, FieldError, FieldSpec};

#[derive(Debug, Error)]
pub enum FuncError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("functions live over different fields")]
    FieldMismatch,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("value table has {got} entries, expected {expected}")]
    TableLength { got: usize, expected: usize },
}

/// p-ary digit sum of an integer.
pub fn p_weight(mut e: u64, p: u32) -> u32 {
    let mut w = 0;
    while e > 0 {
        w += (e % p as u64) as u32;
        e /= p as u64;
    }
    w
}

/// Reduces an exponent into `[0, q-1]`: exponents `>= q` go to
/// `((e - 1) mod (q - 1)) + 1`, which keeps `x^e` unchanged on all of the field
/// (including `0^e = 0` for `e > 0`).
pub fn reduce_exponent(e: u64, q: u64) -> u64 {
    if e < q {
        e
    } else {
        (e - 1) % (q - 1) + 1
    }
}

/// A sparse polynomial `Σ c_e x^e` over a shared field.
#[derive(Clone, Debug)]
pub struct PolyFn {
    ctx: Arc<FieldCtx>,
    /// Reduced exponents, descending, coefficients nonzero.
    terms: Vec<(u64, Elem)>,
    /// Terms as supplied, before reduction and merging.
    raw: Vec<(u64, Elem)>,
}

/// Algebraic degree together with the Dembowski–Ostrom shape flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeInfo {
    pub degree: u32,
    /// Every exponent has p-weight exactly 2, i.e. is `p^i + p^j`.
    pub dembowski_ostrom: bool,
}

impl DegreeInfo {
    pub fn is_quadratic(&self) -> bool {
        self.degree == 2
    }
}

impl PolyFn {
    pub fn new(ctx: &Arc<FieldCtx>, terms: impl IntoIterator<Item = (u64, Elem)>) -> Self {
        let q = ctx.q() as u64;
        let raw: Vec<(u64, Elem)> = terms.into_iter().collect();
        let mut merged: BTreeMap<u64, Elem> = BTreeMap::new();
        for &(e, c) in &raw {
            let slot = merged.entry(reduce_exponent(e, q)).or_insert(Elem::ZERO);
            *slot = ctx.add(*slot, c);
        }
        let terms = merged.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        PolyFn { ctx: ctx.clone(), terms, raw }
    }

    /// `x^d`.
    pub fn monomial(ctx: &Arc<FieldCtx>, d: u64) -> Self {
        PolyFn::new(ctx, [(d, Elem::ONE)])
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn terms(&self) -> &[(u64, Elem)] {
        &self.terms
    }

    pub fn raw_terms(&self) -> &[(u64, Elem)] {
        &self.raw
    }

    /// Value at a single point, `0^0 = 1`.
    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.ctx;
        self.terms
            .iter()
            .fold(Elem::ZERO, |acc, &(e, c)| f.add(acc, f.mul(c, f.pow(x, e))))
    }

    /// Exhaustive evaluation into a value table.
    pub fn evaluate(&self) -> FnTable {
        let f = &self.ctx;
        let order = f.order() as u64;
        let logs: Vec<(u64, u64)> = self
            .terms
            .iter()
            .map(|&(e, c)| (e, f.log(c).unwrap() as u64))
            .collect();
        let mut values = Vec::with_capacity(f.q());
        values.push(self.eval(Elem::ZERO).0);
        for lx in 0..order {
            let mut acc = Elem::ZERO;
            for &(e, lc) in &logs {
                acc = f.add(acc, f.exp(lc + (lx * e) % order));
            }
            values.push(acc.0);
        }
        // values are indexed by log so far; scatter into code order
        let mut table = vec![0u32; f.q()];
        table[0] = values[0];
        for lx in 0..order {
            table[f.exp(lx).idx()] = values[lx as usize + 1];
        }
        FnTable { ctx: f.clone(), values: table, origin: Some(self.clone()) }
    }

    pub fn degree_info(&self) -> DegreeInfo {
        let p = self.ctx.p();
        let weights: Vec<u32> = self.terms.iter().map(|&(e, _)| p_weight(e, p)).collect();
        DegreeInfo {
            degree: weights.iter().copied().max().unwrap_or(0),
            dembowski_ostrom: !weights.is_empty() && weights.iter().all(|&w| w == 2),
        }
    }

    /// Maximal p-weight of an exponent; `0` for constants.
    pub fn algebraic_degree(&self) -> u32 {
        self.degree_info().degree
    }

    /// `x ↦ F(c x)`.
    pub fn scale_argument(&self, c: Elem) -> PolyFn {
        let f = &self.ctx;
        PolyFn::new(f, self.terms.iter().map(|&(e, a)| (e, f.mul(a, f.pow(c, e)))))
    }

    /// Renders terms as `w^{k}x^{e} + ...`, omitting unit coefficients.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, &(e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let coeff = match self.ctx.log(c) {
                Some(0) => String::new(),
                Some(1) => "w".into(),
                Some(k) => format!("w^{{{k}}}"),
                None => unreachable!(),
            };
            let mono = match e {
                0 => String::new(),
                1 => "x".into(),
                e => format!("x^{{{e}}}"),
            };
            if coeff.is_empty() && mono.is_empty() {
                out.push('1');
            } else {
                out.push_str(&coeff);
                out.push_str(&mono);
            }
        }
        out
    }

    /// Parses the notation written by [`PolyFn::to_text`]
    /// (`w^{132}x^{192} + x^3 + wx^{72}` and the like).
    pub fn parse_text(ctx: &Arc<FieldCtx>, text: &str) -> Result<Self, FuncError> {
        let clean: String = text
            .chars()
            .filter(|c| !c.is_whitespace() && !matches!(c, '{' | '}' | '$'))
            .collect();
        let mut terms = Vec::new();
        for (i, term) in clean.split('+').enumerate() {
            let err = |msg: &str| FuncError::Parse { line: i + 1, msg: format!("{msg} in term {term:?}") };
            if term.is_empty() {
                return Err(err("empty term"));
            }
            let (coeff_s, mono_s) = match term.find('x') {
                Some(pos) => (&term[..pos], &term[pos..]),
                None => (term, ""),
            };
            let coeff = if coeff_s.is_empty() { Elem::ONE } else { ctx.parse_elem(coeff_s)? };
            let e = if mono_s.is_empty() {
                0
            } else if mono_s == "x" {
                1
            } else {
                mono_s
                    .strip_prefix("x^")
                    .and_then(|s| s.parse::<u64>().ok())
                    .ok_or_else(|| err("bad monomial"))?
            };
            terms.push((e, coeff));
        }
        Ok(PolyFn::new(ctx, terms))
    }

    /// Function file: field block followed by `term <exponent> <element>` lines.
    pub fn to_file(&self) -> String {
        let mut out = self.ctx.spec().to_block();
        for &(e, c) in &self.raw {
            let _ = writeln!(out, "term {e} {}", self.ctx.format_elem(c));
        }
        out
    }

    /// Parses a function file, building the field from its header.
    pub fn parse_file(text: &str) -> Result<Self, FuncError> {
        let spec = FieldSpec::parse_block(text)?;
        let ctx = FieldCtx::build(spec)?;
        Self::parse_file_in(&ctx, text)
    }

    /// Parses the `term` lines of a function file against an existing field;
    /// a field block, if present, must describe the same field.
    pub fn parse_file_in(ctx: &Arc<FieldCtx>, text: &str) -> Result<Self, FuncError> {
        if let Ok(spec) = FieldSpec::parse_block(text) {
            if &spec != ctx.spec() {
                return Err(FuncError::FieldMismatch);
            }
        }
        let mut terms = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            let Some(rest) = line.strip_prefix("term") else { continue };
            let mut parts = rest.split_whitespace();
            let (Some(e), Some(c), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(FuncError::Parse { line: i + 1, msg: "expected `term <exponent> <element>`".into() });
            };
            let e = e
                .parse::<u64>()
                .map_err(|_| FuncError::Parse { line: i + 1, msg: format!("bad exponent {e:?}") })?;
            terms.push((e, ctx.parse_elem(c)?));
        }
        Ok(PolyFn::new(ctx, terms))
    }
}

/// A function given by its full value table, `values[x] = F(x)` by code.
#[derive(Clone, Debug)]
pub struct FnTable {
    ctx: Arc<FieldCtx>,
    values: Vec<u32>,
    origin: Option<PolyFn>,
}

impl FnTable {
    pub fn from_values(ctx: &Arc<FieldCtx>, values: Vec<u32>) -> Result<Self, FuncError> {
        if values.len() != ctx.q() {
            return Err(FuncError::TableLength { got: values.len(), expected: ctx.q() });
        }
        if values.iter().any(|&v| v as usize >= ctx.q()) {
            return Err(FuncError::Parse { line: 0, msg: "value out of range".into() });
        }
        Ok(FnTable { ctx: ctx.clone(), values, origin: None })
    }

    pub fn from_fn(ctx: &Arc<FieldCtx>, f: impl Fn(Elem) -> Elem) -> Self {
        let values = ctx.elements().map(|x| f(x).0).collect();
        FnTable { ctx: ctx.clone(), values, origin: None }
    }

    pub fn identity(ctx: &Arc<FieldCtx>) -> Self {
        Self::from_fn(ctx, |x| x)
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn origin(&self) -> Option<&PolyFn> {
        self.origin.as_ref()
    }

    #[inline]
    pub fn at(&self, x: Elem) -> Elem {
        Elem(self.values[x.idx()])
    }

    /// `x ↦ self(inner(x))`.
    pub fn compose(&self, inner: &FnTable) -> Result<FnTable, FuncError> {
        if self.ctx != inner.ctx {
            return Err(FuncError::FieldMismatch);
        }
        let values = inner.values.iter().map(|&y| self.values[y as usize]).collect();
        Ok(FnTable { ctx: self.ctx.clone(), values, origin: None })
    }

    /// Unique polynomial of degree `< q` with these values, via
    /// `c_e = -Σ_{x≠0} x^{-e} F(x)` for `1 <= e <= q-2`.
    pub fn interpolate(&self) -> PolyFn {
        let f = &self.ctx;
        let order = f.order() as u64;
        let f0 = Elem(self.values[0]);
        let logs: Vec<(u64, Elem)> = f
            .nonzero()
            .map(|x| (f.log(x).unwrap() as u64, self.at(x)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        let mut terms = vec![(0, f0)];
        let mut total = Elem::ZERO;
        for &(_, v) in &logs {
            total = f.add(total, v);
        }
        // x^{q-1} picks up F(0) from the constant term
        terms.push((order, f.neg(f.add(total, f0))));
        for e in 1..order {
            let mut acc = Elem::ZERO;
            for &(lx, v) in &logs {
                let shift = f.exp((order - (lx * e) % order) % order);
                acc = f.add(acc, f.mul(shift, v));
            }
            terms.push((e, f.neg(acc)));
        }
        PolyFn::new(f, terms)
    }

    /// Algebraic degree of the interpolating polynomial.
    pub fn algebraic_degree(&self) -> u32 {
        match &self.origin {
            Some(p) => p.algebraic_degree(),
            None => self.interpolate().algebraic_degree(),
        }
    }

    /// `x ↦ self(x^d)`.
    pub fn compose_power(&self, d: u64) -> FnTable {
        let f = &self.ctx;
        let values = f.elements().map(|x| self.values[f.pow(x, d).idx()]).collect();
        FnTable { ctx: f.clone(), values, origin: None }
    }

    /// Distinct values, sorted by code.
    pub fn image_set(&self) -> Vec<u32> {
        let mut seen = vec![false; self.ctx.q()];
        for &v in &self.values {
            seen[v as usize] = true;
        }
        seen.iter().enumerate().filter(|(_, &s)| s).map(|(i, _)| i as u32).collect()
    }

    pub fn is_permutation(&self) -> bool {
        self.image_set().len() == self.ctx.q()
    }

    /// First pair `u != v` among `points` with equal values.
    pub fn collision_on(&self, points: &[u32]) -> Option<(Elem, Elem)> {
        let mut first = vec![u32::MAX; self.ctx.q()];
        for &u in points {
            let v = self.values[u as usize] as usize;
            if first[v] != u32::MAX && first[v] != u {
                return Some((Elem(first[v]), Elem(u)));
            }
            first[v] = u;
        }
        None
    }

    /// Injectivity of the restriction to a power coset, with a colliding pair
    /// as witness on failure.
    pub fn injectivity_on(&self, coset: &PowerCoset) -> Result<(), (Elem, Elem)> {
        match self.collision_on(&coset.members) {
            Some(w) => Err(w),
            None => Ok(()),
        }
    }

    pub fn is_injective_on(&self, coset: &PowerCoset) -> bool {
        self.injectivity_on(coset).is_ok()
    }
}

/// `C_d = {x^d : x ≠ 0}`, equal to `C_e` for `e = gcd(d, q-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerCoset {
    pub d: u64,
    pub e: u64,
    /// Sorted nonzero codes.
    pub members: Vec<u32>,
}

impl PowerCoset {
    pub fn new(ctx: &FieldCtx, d: u64) -> Self {
        assert!(d >= 1, "power coset needs d >= 1");
        let order = ctx.order() as u64;
        let e = gcd(d, order);
        let mut members: Vec<u32> = (0..order / e).map(|j| ctx.exp(j * e).0).collect();
        members.sort_unstable();
        PowerCoset { d, e, members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.binary_search(&x.0).is_ok()
    }

    /// Members together with `0`.
    pub fn with_zero(&self) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.members.len() + 1);
        v.push(0);
        v.extend_from_slice(&self.members);
        v
    }
}

pub fn power_coset(ctx: &FieldCtx, d: u64) -> PowerCoset {
    PowerCoset::new(ctx, d)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `x ↦ Tr(x)` embedded back into the field, handy for building `G` tables.
pub fn trace_table(ctx: &Arc<FieldCtx>, inner: impl Fn(Elem) -> Elem) -> FnTable {
    FnTable::from_fn(ctx, |x| Elem(ctx.trace(inner(x))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn f256() -> Arc<FieldCtx> {
        FieldCtx::build(FieldSpec::f256_paper()).unwrap()
    }

    #[test]
    fn evaluate_monomials() {
        let f = f256();
        let cube = PolyFn::monomial(&f, 3).evaluate();
        assert_eq!(cube.at(f.w()), f.exp(3));
        let top = PolyFn::monomial(&f, 255).evaluate();
        assert_eq!(top.at(Elem::ZERO), Elem::ZERO);
        assert!(f.nonzero().all(|x| top.at(x) == Elem::ONE));
        let konst = PolyFn::new(&f, [(0, f.exp(7))]).evaluate();
        assert_eq!(konst.at(Elem::ZERO), f.exp(7));
    }

    #[test]
    fn evaluate_agrees_with_pointwise() {
        let f = f256();
        let g = PolyFn::new(&f, [(144, Elem::ONE), (6, Elem::ONE), (3, Elem::ONE)]);
        let t = g.evaluate();
        assert_eq!(t.at(Elem::ZERO), Elem::ZERO);
        for x in f.elements() {
            assert_eq!(t.at(x), g.eval(x));
        }
    }

    #[test]
    fn degrees() {
        let f = f256();
        assert_eq!(PolyFn::monomial(&f, 3).algebraic_degree(), 2);
        let g = PolyFn::new(&f, [(144, Elem::ONE), (6, Elem::ONE), (3, Elem::ONE)]);
        assert_eq!(g.algebraic_degree(), 2);
        let nine = PolyFn::monomial(&f, 9).degree_info();
        assert!(nine.is_quadratic() && nine.dembowski_ostrom);
        assert_eq!(PolyFn::new(&f, [(0, Elem::ONE)]).algebraic_degree(), 0);
        assert_eq!(PolyFn::monomial(&f, 57).algebraic_degree(), 4);
    }

    #[test]
    fn exponent_reduction() {
        let f = f256();
        // x^256 = x, x^510 = x^255
        let g = PolyFn::new(&f, [(256, Elem::ONE)]);
        assert_eq!(g.terms(), &[(1, Elem::ONE)]);
        assert_eq!(g.raw_terms(), &[(256, Elem::ONE)]);
        let h = PolyFn::new(&f, [(510, Elem::ONE)]).evaluate();
        assert_eq!(h.at(Elem::ZERO), Elem::ZERO);
        // merging cancels in characteristic two
        assert!(PolyFn::new(&f, [(3, Elem::ONE), (258, Elem::ONE)]).terms().is_empty());
    }

    #[test]
    fn power_cosets() {
        let f = f256();
        assert_eq!(power_coset(&f, 3).len(), 85);
        assert_eq!(power_coset(&f, 7).len(), 255);
        let f16 = FieldCtx::build_default(2, 4).unwrap();
        assert_eq!(power_coset(&f16, 3).len(), 5);
    }

    #[test]
    fn power_coset_matches_brute_force() {
        for (p, n) in [(2, 4), (2, 6), (3, 3), (5, 2), (2, 8)] {
            let f = FieldCtx::build_default(p, n).unwrap();
            for d in 1..f.q() as u64 {
                let brute: BTreeSet<u32> = f.nonzero().map(|x| f.pow(x, d).0).collect();
                let coset = power_coset(&f, d);
                assert_eq!(coset.members, brute.into_iter().collect::<Vec<_>>(), "d={d}");
                assert_eq!(coset.members, power_coset(&f, coset.e).members);
            }
        }
    }

    #[test]
    fn injectivity() {
        let f = f256();
        let c3 = power_coset(&f, 3);
        assert!(FnTable::identity(&f).is_injective_on(&c3));
        let g = FnTable::from_fn(&f, |x| f.add(x, Elem(f.trace(f.pow(x, 3)))));
        assert!(g.is_permutation());
        assert!(g.is_injective_on(&c3));

        let f16 = FieldCtx::build_default(2, 4).unwrap();
        let c = power_coset(&f16, 3);
        let tr = trace_table(&f16, |x| x);
        let (u, v) = tr.injectivity_on(&c).unwrap_err();
        assert_ne!(u, v);
        assert!(c.contains(u) && c.contains(v));
        assert_eq!(tr.at(u), tr.at(v));
    }

    #[test]
    fn images() {
        let f = f256();
        assert_eq!(PolyFn::monomial(&f, 3).evaluate().image_set().len(), 86);
        assert_eq!(FnTable::identity(&f).image_set().len(), 256);
        assert_eq!(FnTable::from_fn(&f, |_| Elem::ZERO).image_set(), vec![0]);
    }

    #[test]
    fn text_and_file_round_trip() {
        let f = f256();
        let src = "w^{67}x^{192} + w^{182}x^{132} + w^{24}x^{6} + x^3";
        let g = PolyFn::parse_text(&f, src).unwrap();
        assert_eq!(g.terms().len(), 4);
        let norm = |s: &str| s.chars().filter(|c| !c.is_whitespace() && *c != '{' && *c != '}').collect::<String>();
        assert_eq!(norm(&g.to_text()), norm(src));
        let back = PolyFn::parse_file(&g.to_file()).unwrap();
        assert_eq!(back.terms(), g.terms());
        assert_eq!(PolyFn::parse_text(&f, "wx^{72}").unwrap().terms(), &[(72, f.w())]);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        for (p, n) in [(2, 4), (3, 2), (5, 2), (2, 8)] {
            let f = FieldCtx::build_default(p, n).unwrap();
            let q = f.q() as u64;
            let g = PolyFn::new(&f, [(0, f.exp(3)), (q - 1, f.w()), (p as u64 + 1, Elem::ONE), (q - 2, f.exp(5))]);
            let t = g.evaluate();
            let back = FnTable::from_values(&f, t.values().to_vec()).unwrap().interpolate();
            assert_eq!(back.terms(), g.terms(), "F_{{{p}^{n}}}");
        }
        let f = f256();
        let t = PolyFn::monomial(&f, 57).evaluate();
        assert_eq!(FnTable::from_values(&f, t.values().to_vec()).unwrap().algebraic_degree(), 4);
    }

    #[test]
    fn degree_invariant_under_argument_scaling() {
        let f = f256();
        let g = PolyFn::parse_text(&f, "w^{21}x^{144} + w^{183}x^{66} + w^{245}x^{33} + x^3").unwrap();
        for k in [1u64, 17, 200] {
            assert_eq!(g.scale_argument(f.exp(k)).algebraic_degree(), g.algebraic_degree());
        }
    }
}
