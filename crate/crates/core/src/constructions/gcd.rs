use serde::Serialize;

use super::ConstructionError;
use crate::funcspace::PolyFn;

/// 2-adic valuation; `ord2(0)` is reported as 0.
pub fn ord2(mut m: u128) -> u32 {
    if m == 0 {
        return 0;
    }
    let mut k = 0;
    while m % 2 == 0 {
        m /= 2;
        k += 1;
    }
    k
}

fn gcd128(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd128(b, a % b)
    }
}

fn gcd32(a: u32, b: u32) -> u32 {
    gcd128(a as u128, b as u128) as u32
}

fn pow_mod(base: u128, mut e: u32, m: u128) -> u128 {
    let (mut b, mut acc) = (base % m, 1 % m);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Closed forms for `gcd(p^t+1, p^n∓1)` next to the direct Euclid values.
#[derive(Clone, Debug, Serialize)]
pub struct GcdBreakdown {
    pub p: u32,
    pub t: u32,
    pub n: u32,
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
    pub delta_tn: u128,
    pub eta_tn: u128,
    pub eta_prime_tn: u128,
    pub gcd_minus: u128,
    pub gcd_plus: u128,
    /// `p^t + 1 | p^n - 1`, equivalently `2t | n`
    pub divides_minus: bool,
    /// `p^t + 1 | p^n + 1`, equivalently `n = ℓt` with `ℓ` odd
    pub divides_plus: bool,
    /// for `n = 2kt`: `(i, p^t+1 | p^{n/2+i}-1, p^t+1 | p^{n/2+i}+1)` for `1 <= i <= 2t`
    pub shifted: Vec<(u32, bool, bool)>,
}

fn delta(p: u128, t: u32, n: u32) -> u128 {
    let a = ord2(p.pow(t) + 1);
    let b = ord2(p.pow(t) - 1);
    let c = ord2(p.pow(n) - 1);
    1 << (a.min(c) + b.min(c) - (a + b).min(c))
}

/// Evaluates the gcd formulas and every divisibility criterion, failing on
/// any disagreement with direct computation.
pub fn gcd_lemma(p: u32, t: u32, n: u32) -> Result<GcdBreakdown, ConstructionError> {
    let mismatch = |detail: String| ConstructionError::FormulaMismatch { p, t, n, detail };
    let pp = p as u128;
    let pt1 = pp.pow(t) + 1;
    let (a, b) = (ord2(pt1), ord2(pp.pow(t) - 1));
    let (c, d) = (ord2(pp.pow(n) - 1), ord2(pp.pow(n) + 1));
    let delta_tn = delta(pp, t, n);
    let eta_prime_tn = 1u128 << (a.min(c) + a.min(d) - a.min(c + d));
    let eta_num = eta_prime_tn * delta(pp, t, 2 * n);
    if eta_num % delta_tn != 0 {
        return Err(mismatch(format!("η' δ_(t,2n) = {eta_num} not divisible by δ_(t,n) = {delta_tn}")));
    }
    let eta_tn = eta_num / delta_tn;
    if !matches!(delta_tn, 1 | 2) || !matches!(eta_tn, 1 | 2) {
        return Err(mismatch(format!("correction factors δ={delta_tn}, η={eta_tn} outside {{1,2}}")));
    }
    let q = |k: u32| pp.pow(k) - 1;
    let gcd_minus = delta_tn * q(gcd32(2 * t, n)) / q(gcd32(t, n));
    let num = q(gcd32(2 * t, 2 * n)) * q(gcd32(t, n));
    let den = q(gcd32(t, 2 * n)) * q(gcd32(2 * t, n));
    if num % den != 0 {
        return Err(mismatch(format!("quotient {num}/{den} is not integral")));
    }
    let gcd_plus = eta_tn * (num / den);
    let direct_minus = gcd128(pt1, pp.pow(n) - 1);
    let direct_plus = gcd128(pt1, pp.pow(n) + 1);
    if gcd_minus != direct_minus {
        return Err(mismatch(format!("gcd(p^t+1, p^n-1): formula {gcd_minus}, Euclid {direct_minus}")));
    }
    if gcd_plus != direct_plus {
        return Err(mismatch(format!("gcd(p^t+1, p^n+1): formula {gcd_plus}, Euclid {direct_plus}")));
    }
    let divides_minus = n % (2 * t) == 0;
    let divides_plus = n % t == 0 && (n / t) % 2 == 1;
    if divides_minus != (direct_minus == pt1) || divides_plus != (direct_plus == pt1) {
        return Err(mismatch("divisibility criterion disagrees with Euclid".into()));
    }
    let mut shifted = Vec::new();
    if divides_minus {
        let k = n / (2 * t);
        for i in 1..=2 * t {
            let r = pow_mod(pp, n / 2 + i, pt1);
            let (minus, plus) = (r == 1 % pt1, (r + 1) % pt1 == 0);
            let claim_minus = i % (2 * t) == (k * t) % (2 * t);
            let claim_plus = i % (2 * t) == ((k + 1) * t) % (2 * t);
            if minus != claim_minus || plus != claim_plus {
                return Err(mismatch(format!("shifted divisibility fails at i={i}")));
            }
            shifted.push((i, minus, plus));
        }
    }
    Ok(GcdBreakdown {
        p,
        t,
        n,
        a,
        b,
        c,
        d,
        delta_tn,
        eta_tn,
        eta_prime_tn,
        gcd_minus,
        gcd_plus,
        divides_minus,
        divides_plus,
        shifted,
    })
}

/// One exponent `p^k + p^l` of a Dembowski–Ostrom polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoTerm {
    pub exponent: u64,
    pub k: u32,
    pub l: u32,
    /// `(k - l) / t`, or `None` when `t ∤ k - l`
    pub ratio: Option<u32>,
}

impl DoTerm {
    pub fn is_odd(&self) -> bool {
        self.ratio.is_some_and(|r| r % 2 == 1)
    }
}

/// Splits every (unreduced) exponent as `p^k + p^l`, `k >= l`.
pub fn do_form_decompose(f: &PolyFn, t: u32) -> Result<Vec<DoTerm>, ConstructionError> {
    let p = f.ctx().p() as u64;
    let mut out = Vec::new();
    for &(e, _) in f.raw_terms() {
        let mut digits = Vec::new();
        let mut m = e;
        while m > 0 {
            digits.push((m % p) as u32);
            m /= p;
        }
        let places: Vec<u32> = digits
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat(i as u32).take(c as usize))
            .collect();
        let [l, k] = places[..] else {
            return Err(ConstructionError::NotDoShape { exponent: e });
        };
        let diff = k - l;
        let ratio = (t > 0 && diff % t == 0).then(|| diff / t);
        out.push(DoTerm { exponent: e, k, l, ratio });
    }
    Ok(out)
}
