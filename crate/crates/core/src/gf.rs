//! Exact arithmetic in `F_{p^n}`.
//!
//! A field is fully materialized at construction: exponent/logarithm tables
//! over a primitive element `w`, a Zech logarithm table for addition in odd
//! characteristic, and the absolute trace of every element. Elements are
//! encoded as integers `Σ c_i p^i` where `Σ c_i w^i` is the polynomial-basis
//! representation, so for `p = 2` an element is a plain bit string.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest group order supported.
pub const MAX_ORDER: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u32),
    #[error("modulus is not a monic polynomial of degree {expected}: {detail}")]
    BadModulus { expected: u32, detail: String },
    #[error("modulus is not irreducible over F_{p}: it has the factor {factor:?} (constant term first)")]
    NotIrreducible { p: u32, factor: Vec<u32> },
    #[error("modulus is not primitive: its root has order {order}, expected {expected}")]
    NotPrimitive { order: u64, expected: u64 },
    #[error("field of order {0} exceeds the supported maximum")]
    TooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse element {0:?}")]
    ParseError(String),
    #[error("exponent {k} out of range (must be below {bound})")]
    ExponentOutOfRange { k: u64, bound: u64 },
    #[error("cannot parse field spec: {0}")]
    SpecParse(String),
}

/// Field element, encoded as `Σ c_i p^i` for the polynomial-basis digits `c_i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Defining data of a field: characteristic, degree and a primitive modulus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub n: u32,
    /// Coefficients of the monic modulus, constant term first (length `n + 1`).
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn new(p: u32, n: u32, modulus: Vec<u32>) -> Self {
        FieldSpec { p, n, modulus }
    }

    /// `F_{2^8}` with modulus `x^8 + x^4 + x^3 + x^2 + 1`.
    pub fn f256_paper() -> Self {
        FieldSpec::new(2, 8, vec![1, 0, 1, 1, 1, 0, 0, 0, 1])
    }

    /// Looks up a named preset.
    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "f256_paper" => Some(Self::f256_paper()),
            _ => None,
        }
    }

    /// The first primitive modulus of degree `n` over `F_p`, in order of the
    /// integer code of its lower coefficients.
    pub fn find_primitive(p: u32, n: u32) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let q = checked_order(p, n)?;
        for code in 1..q {
            let mut modulus = digits_of(code as u32, p, n as usize);
            if modulus[0] == 0 {
                continue;
            }
            modulus.push(1);
            let spec = FieldSpec::new(p, n, modulus);
            if spec.check().is_ok() {
                return Ok(spec);
            }
        }
        unreachable!("every finite field has a primitive modulus")
    }

    /// Parses the text block `p=<int>`, `n=<int>`, `modulus=<c_0,...,c_n>`.
    /// Unknown `key=value` lines are ignored so the block can be embedded in
    /// other files.
    pub fn parse_block(text: &str) -> Result<Self, FieldError> {
        let mut p = None;
        let mut n = None;
        let mut modulus = None;
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                continue;
            };
            let value = value.trim();
            match key.trim() {
                "p" => p = Some(parse_u32(value)?),
                "n" => n = Some(parse_u32(value)?),
                "modulus" => {
                    let coeffs = value
                        .split(',')
                        .map(|c| parse_u32(c.trim()))
                        .collect::<Result<Vec<_>, _>>()?;
                    modulus = Some(coeffs);
                }
                "field" => {
                    if let Some(spec) = FieldSpec::preset(value) {
                        return Ok(spec);
                    }
                    return Err(FieldError::SpecParse(format!("unknown preset {value:?}")));
                }
                _ => {}
            }
        }
        match (p, n, modulus) {
            (Some(p), Some(n), Some(modulus)) => Ok(FieldSpec::new(p, n, modulus)),
            _ => Err(FieldError::SpecParse("expected p=, n= and modulus= lines".into())),
        }
    }

    pub fn to_block(&self) -> String {
        let coeffs: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        format!("p={}\nn={}\nmodulus={}\n", self.p, self.n, coeffs.join(","))
    }

    /// Runs the prime, shape, irreducibility and primitivity checks.
    pub fn check(&self) -> Result<(), FieldError> {
        let p = self.p;
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let q = checked_order(p, self.n)?;
        if self.n == 0 || self.modulus.len() != self.n as usize + 1 {
            return Err(FieldError::BadModulus {
                expected: self.n,
                detail: format!("{} coefficients given", self.modulus.len()),
            });
        }
        if self.modulus.iter().any(|&c| c >= p) {
            return Err(FieldError::BadModulus {
                expected: self.n,
                detail: "coefficient not reduced mod p".into(),
            });
        }
        if self.modulus[self.n as usize] != 1 {
            return Err(FieldError::BadModulus {
                expected: self.n,
                detail: "leading coefficient is not 1".into(),
            });
        }
        let m = Poly::new(self.modulus.clone(), p);
        if let Some(factor) = m.smallest_factor() {
            return Err(FieldError::NotIrreducible { p, factor: factor.c });
        }
        let order = q - 1;
        let x = Poly::new(vec![0, 1], p).rem(&m);
        for r in prime_factors(order) {
            if x.pow_mod(order / r, &m).is_one() {
                return Err(FieldError::NotPrimitive {
                    order: multiplicative_order(&x, &m, order),
                    expected: order,
                });
            }
        }
        Ok(())
    }
}

/// A fully materialized finite field. Immutable; share it behind an `Arc`.
pub struct FieldCtx {
    spec: FieldSpec,
    p: u32,
    n: u32,
    q: u32,
    /// `exp[k] = w^k` for `0 <= k < 2(q-1)`.
    exp: Vec<u32>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
    /// Odd characteristic only: `w^zech[k] = 1 + w^k`, `u32::MAX` when zero.
    zech: Vec<u32>,
    trace: Vec<u32>,
    pow_p: Vec<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("modulus", &self.spec.modulus)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl FieldCtx {
    /// Builds and verifies the field described by `spec`.
    pub fn build(spec: FieldSpec) -> Result<Arc<FieldCtx>, FieldError> {
        spec.check()?;
        let p = spec.p;
        let n = spec.n as usize;
        let q = p.pow(spec.n);
        let order = (q - 1) as usize;

        // Powers of the root in digit form: multiply by x and reduce.
        let mut exp = Vec::with_capacity(2 * order);
        let mut log = vec![0u32; q as usize];
        let mut cur = vec![0u32; n];
        cur[0] = 1;
        let lead_neg: Vec<u32> = spec.modulus[..n].iter().map(|&c| (p - c) % p).collect();
        for k in 0..order {
            let code = code_of(&cur, p);
            exp.push(code);
            log[code as usize] = k as u32;
            // cur <- cur * x mod m
            let top = cur[n - 1];
            for i in (1..n).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..n {
                    cur[i] = (cur[i] + top * lead_neg[i]) % p;
                }
            }
        }
        for k in 0..order {
            exp.push(exp[k]);
        }

        let mut ctx = FieldCtx {
            spec,
            p,
            n: n as u32,
            q,
            exp,
            log,
            zech: Vec::new(),
            trace: Vec::new(),
            pow_p: Vec::new(),
        };
        if p != 2 {
            let mut zech = vec![u32::MAX; order];
            for (k, z) in zech.iter_mut().enumerate() {
                let s = ctx.add_digitwise(Elem(1), Elem(ctx.exp[k]));
                if !s.is_zero() {
                    *z = ctx.log[s.idx()];
                }
            }
            ctx.zech = zech;
        }
        ctx.pow_p = (0..q).map(|x| ctx.pow(Elem(x), p as u64).0).collect();
        let mut trace = Vec::with_capacity(q as usize);
        for x in 0..q {
            let mut acc = Elem(x);
            let mut y = Elem(x);
            for _ in 1..n {
                y = Elem(ctx.pow_p[y.idx()]);
                acc = ctx.add(acc, y);
            }
            debug_assert!(acc.0 < p, "trace left the prime field");
            trace.push(acc.0);
        }
        ctx.trace = trace;
        Ok(Arc::new(ctx))
    }

    /// Builds `F_{p^n}` over the first primitive modulus found by search.
    pub fn build_default(p: u32, n: u32) -> Result<Arc<FieldCtx>, FieldError> {
        if let (2, 8) = (p, n) {
            return FieldCtx::build(FieldSpec::f256_paper());
        }
        FieldCtx::build(FieldSpec::find_primitive(p, n)?)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }
    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }
    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }
    /// Number of elements.
    #[inline]
    pub fn q(&self) -> usize {
        self.q as usize
    }
    /// Order of the multiplicative group.
    #[inline]
    pub fn order(&self) -> usize {
        self.q as usize - 1
    }

    /// The primitive element `w`.
    pub fn w(&self) -> Elem {
        Elem(self.exp[1 % self.order().max(1)])
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(Elem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> {
        (1..self.q).map(Elem)
    }

    /// Embeds an integer into the prime field.
    pub fn scalar(&self, c: i64) -> Elem {
        Elem(c.rem_euclid(self.p as i64) as u32)
    }

    /// `w^k`, `k` taken modulo `q - 1`.
    #[inline]
    pub fn exp(&self, k: u64) -> Elem {
        Elem(self.exp[(k % self.order() as u64) as usize])
    }

    /// Discrete logarithm base `w`; `None` for zero.
    #[inline]
    pub fn log(&self, x: Elem) -> Option<u32> {
        if x.is_zero() {
            None
        } else {
            Some(self.log[x.idx()])
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let la = self.log[a.idx()] as usize;
        let lb = self.log[b.idx()] as usize;
        let order = self.order();
        let d = if lb >= la { lb - la } else { lb + order - la };
        let z = self.zech[d];
        if z == u32::MAX {
            Elem::ZERO
        } else {
            Elem(self.exp[la + z as usize])
        }
    }

    /// Addition on base-`p` digit vectors; the reference for [`FieldCtx::add`].
    pub fn add_digitwise(&self, a: Elem, b: Elem) -> Elem {
        let p = self.p;
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.n {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 || a.is_zero() {
            return a;
        }
        Elem(self.exp[self.log[a.idx()] as usize + self.order() / 2])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        Elem(self.exp[(self.log[a.idx()] + self.log[b.idx()]) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let l = self.log[a.idx()] as usize;
        Ok(Elem(self.exp[(self.order() - l) % self.order()]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` with `0^0 = 1`.
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let order = self.order() as u64;
        let l = self.log[a.idx()] as u64;
        Elem(self.exp[((l * (e % order)) % order) as usize])
    }

    /// `x^p`.
    #[inline]
    pub fn frobenius(&self, x: Elem) -> Elem {
        Elem(self.pow_p[x.idx()])
    }

    /// `x^{p^k}`.
    pub fn frobenius_pow(&self, x: Elem, k: u32) -> Elem {
        let mut y = x;
        for _ in 0..(k % self.n.max(1)) {
            y = self.frobenius(y);
        }
        y
    }

    /// Absolute trace into `F_p`, returned as a residue in `[0, p)`.
    #[inline]
    pub fn trace(&self, x: Elem) -> u32 {
        self.trace[x.idx()]
    }

    /// Polynomial-basis digits of `x`, constant term first.
    pub fn digits(&self, x: Elem) -> Vec<u32> {
        digits_of(x.0, self.p, self.n as usize)
    }

    pub fn from_digits(&self, digits: &[u32]) -> Elem {
        Elem(code_of(digits, self.p))
    }

    /// The polynomial basis `1, w, ..., w^{n-1}` (codes `p^i`).
    pub fn basis(&self) -> Vec<Elem> {
        (0..self.n).map(|i| Elem(self.p.pow(i))).collect()
    }

    /// True iff `x` lies in the prime field.
    pub fn in_prime_field(&self, x: Elem) -> bool {
        x.0 < self.p
    }

    /// Parses `0`, `1`, `w`, `w^k` or `w^{k}`.
    pub fn parse_elem(&self, s: &str) -> Result<Elem, FieldError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace() && *c != '{' && *c != '}').collect();
        match t.as_str() {
            "0" => return Ok(Elem::ZERO),
            "1" => return Ok(Elem::ONE),
            "w" => return Ok(self.w()),
            _ => {}
        }
        let k = t
            .strip_prefix("w^")
            .and_then(|k| k.parse::<u64>().ok())
            .ok_or_else(|| FieldError::ParseError(s.to_string()))?;
        let bound = self.order() as u64;
        if k >= bound {
            return Err(FieldError::ExponentOutOfRange { k, bound });
        }
        Ok(self.exp(k))
    }

    /// Inverse of [`FieldCtx::parse_elem`]: `0`, `1` or `w^k`.
    pub fn format_elem(&self, x: Elem) -> String {
        match self.log(x) {
            None => "0".to_string(),
            Some(0) => "1".to_string(),
            Some(k) => format!("w^{k}"),
        }
    }

    /// `F_p`-linear coordinates of `Tr(b x)` against the polynomial basis: the
    /// vector `u` with `u·x = Tr(b x)` for every `x`, encoded like an element.
    pub fn trace_dual(&self, b: Elem) -> usize {
        let mut code = 0usize;
        let mut place = 1usize;
        for e in self.basis() {
            code += self.trace(self.mul(b, e)) as usize * place;
            place *= self.p as usize;
        }
        code
    }
}

fn parse_u32(s: &str) -> Result<u32, FieldError> {
    s.parse::<u32>().map_err(|_| FieldError::SpecParse(format!("not an integer: {s:?}")))
}

fn checked_order(p: u32, n: u32) -> Result<u64, FieldError> {
    let mut q: u64 = 1;
    for _ in 0..n {
        q = q.saturating_mul(p as u64);
        if q > MAX_ORDER {
            return Err(FieldError::TooLarge(q));
        }
    }
    Ok(q)
}

pub(crate) fn digits_of(mut code: u32, p: u32, n: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(code % p);
        code /= p;
    }
    out
}

fn code_of(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn multiplicative_order(x: &Poly, m: &Poly, group_order: u64) -> u64 {
    let mut ord = group_order;
    for r in prime_factors(group_order) {
        while ord % r == 0 && x.pow_mod(ord / r, m).is_one() {
            ord /= r;
        }
    }
    ord
}

/// Dense polynomial over `F_p`, constant term first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Poly {
    c: Vec<u32>,
    p: u32,
}

impl Poly {
    fn new(mut c: Vec<u32>, p: u32) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { c, p }
    }

    fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn is_one(&self) -> bool {
        self.c == [1]
    }

    fn mul(&self, o: &Poly) -> Poly {
        if self.c.is_empty() || o.c.is_empty() {
            return Poly::new(vec![], self.p);
        }
        let p = self.p as u64;
        let mut out = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u64 * b as u64) % p;
            }
        }
        Poly::new(out.into_iter().map(|v| v as u32).collect(), self.p)
    }

    /// Remainder modulo a monic polynomial.
    fn rem(&self, m: &Poly) -> Poly {
        let p = self.p;
        let dm = m.degree().expect("nonzero modulus");
        let mut r = self.c.clone();
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            if lead != 0 {
                for (i, &mc) in m.c.iter().enumerate() {
                    let sub = (lead as u64 * mc as u64 % p as u64) as u32;
                    r[shift + i] = (r[shift + i] + p - sub) % p;
                }
            }
            r.pop();
        }
        Poly::new(r, p)
    }

    fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut result = Poly::new(vec![1], self.p);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        result
    }

    /// Smallest monic factor of degree `1..=deg/2`, by trial division.
    fn smallest_factor(&self) -> Option<Poly> {
        let n = self.degree()?;
        let p = self.p;
        for d in 1..=n / 2 {
            let count = (p as u64).pow(d as u32);
            for code in 0..count {
                let mut c = digits_of(code as u32, p, d);
                c.push(1);
                let f = Poly::new(c, p);
                if self.rem(&f).c.is_empty() {
                    return Some(f);
                }
            }
        }
        None
    }
}
