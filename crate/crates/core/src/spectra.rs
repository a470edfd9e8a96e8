//! Differential and Walsh analysis of functions over `F_{p^n}`.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cyclotomic::{fourier, fwht, CycInt};
use crate::funcspace::FnTable;
use crate::gf::{Elem, FieldCtx};

#[derive(Debug, Error)]
pub enum SpectraError {
    #[error("function is not quadratic: {0}")]
    NotQuadratic(String),
    #[error("kernel requested for a = 0")]
    ZeroDirection,
}

/// Counts of `F(x+a) - F(x) = b` over all `a != 0`.
#[derive(Clone, Debug, Serialize)]
pub struct DiffSpectrum {
    pub delta_max: u32,
    /// solution count -> number of `(a, b)` pairs with that count
    pub histogram: BTreeMap<u32, u64>,
    /// `zero_profile[a - 1] = δ_F(a, 0)` for nonzero codes `a`
    pub zero_profile: Vec<u32>,
    #[serde(skip)]
    p: u32,
}

impl DiffSpectrum {
    pub fn is_apn(&self) -> bool {
        self.p == 2 && self.delta_max == 2
    }

    pub fn is_pn(&self) -> bool {
        self.p != 2 && self.delta_max == 1
    }

    pub fn classification(&self) -> ZdbClass {
        ZdbClass::of_profile(&self.zero_profile)
    }
}

/// Zero-difference behaviour of a function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "delta")]
pub enum ZdbClass {
    /// Exactly δ solutions of `F(x+a) = F(x)` for every `a != 0`.
    Zdb(u32),
    /// Between 1 and δ solutions for every `a != 0`, not constant.
    Vanishing(u32),
    Neither,
}

impl ZdbClass {
    pub fn of_profile(profile: &[u32]) -> Self {
        let (Some(&lo), Some(&hi)) = (profile.iter().min(), profile.iter().max()) else {
            return ZdbClass::Zdb(0);
        };
        if lo == hi {
            ZdbClass::Zdb(lo)
        } else if lo >= 1 {
            ZdbClass::Vanishing(hi)
        } else {
            ZdbClass::Neither
        }
    }

    /// Differentially δ-vanishing in the inclusive sense (ZDB(δ') with
    /// `1 <= δ' <= δ` counts).
    pub fn is_vanishing(&self, delta: u32) -> bool {
        match *self {
            ZdbClass::Zdb(d) => d >= 1 && d <= delta,
            ZdbClass::Vanishing(d) => d <= delta,
            ZdbClass::Neither => false,
        }
    }

    pub fn label(&self) -> String {
        match self {
            ZdbClass::Zdb(d) => format!("ZDB({d})"),
            ZdbClass::Vanishing(d) => format!("vanishing({d})"),
            ZdbClass::Neither => "neither".into(),
        }
    }
}

fn diff_row(f: &FieldCtx, vals: &[u32], a: Elem, counts: &mut [u32]) {
    counts.iter_mut().for_each(|c| *c = 0);
    if f.p() == 2 {
        let a = a.0 as usize;
        for x in 0..vals.len() {
            counts[(vals[x ^ a] ^ vals[x]) as usize] += 1;
        }
    } else {
        for x in f.elements() {
            let d = f.sub(Elem(vals[f.add(x, a).idx()]), Elem(vals[x.idx()]));
            counts[d.idx()] += 1;
        }
    }
}

/// Exhaustive differential spectrum, parallel over `a`.
pub fn differential_spectrum(t: &FnTable) -> DiffSpectrum {
    let f = t.ctx();
    let q = f.q();
    let rows: Vec<(u32, u32, BTreeMap<u32, u64>)> = (1..q as u32)
        .into_par_iter()
        .map_init(
            || vec![0u32; q],
            |counts, a| {
                diff_row(f, t.values(), Elem(a), counts);
                let mut hist = BTreeMap::new();
                for &c in counts.iter() {
                    *hist.entry(c).or_insert(0u64) += 1;
                }
                (counts[0], *counts.iter().max().unwrap(), hist)
            },
        )
        .collect();
    let mut histogram = BTreeMap::new();
    let mut delta_max = 0;
    let mut zero_profile = Vec::with_capacity(q - 1);
    for (z, m, h) in rows {
        zero_profile.push(z);
        delta_max = delta_max.max(m);
        for (k, v) in h {
            *histogram.entry(k).or_insert(0) += v;
        }
    }
    DiffSpectrum { delta_max, histogram, zero_profile, p: f.p() }
}

/// `δ_F(a, 0)` for every nonzero `a`, in code order.
pub fn zero_difference_profile(t: &FnTable) -> (Vec<u32>, ZdbClass) {
    let f = t.ctx();
    let vals = t.values();
    let profile: Vec<u32> = (1..f.q() as u32)
        .into_par_iter()
        .map(|a| zero_count(f, vals, Elem(a)))
        .collect();
    let class = ZdbClass::of_profile(&profile);
    (profile, class)
}

fn zero_count(f: &FieldCtx, vals: &[u32], a: Elem) -> u32 {
    if f.p() == 2 {
        let a = a.0 as usize;
        (0..vals.len()).filter(|&x| vals[x ^ a] == vals[x]).count() as u32
    } else {
        f.elements().filter(|&x| vals[f.add(x, a).idx()] == vals[x.idx()]).count() as u32
    }
}

/// Sequential ZDB(δ) test that stops at the first offending `a`.
pub fn is_zdb(t: &FnTable, delta: u32) -> bool {
    let f = t.ctx();
    f.nonzero().all(|a| zero_count(f, t.values(), a) == delta)
}

/// Precomputed translation table for repeated ZDB tests over one field.
#[derive(Clone, Debug)]
pub struct ZdbProbe {
    q: usize,
    binary: bool,
    /// `shift[a * q + x] = x + a` (odd characteristic only)
    shift: Vec<u32>,
}

impl ZdbProbe {
    pub fn new(f: &FieldCtx) -> Self {
        let q = f.q();
        let binary = f.p() == 2;
        let shift = if binary {
            Vec::new()
        } else {
            f.elements().flat_map(|a| f.elements().map(move |x| f.add(x, a).0)).collect()
        };
        ZdbProbe { q, binary, shift }
    }

    /// Same verdict as [`is_zdb`] on a raw value table.
    pub fn is_zdb(&self, vals: &[u32], delta: u32) -> bool {
        let q = self.q;
        (1..q).all(|a| {
            let count = if self.binary {
                (0..q).filter(|&x| vals[x ^ a] == vals[x]).count()
            } else {
                let row = &self.shift[a * q..(a + 1) * q];
                (0..q).filter(|&x| vals[row[x] as usize] == vals[x]).count()
            };
            count == delta as usize
        })
    }
}

/// Walsh coefficients `W(a, b) = Σ_x ζ_p^{Tr(a F(x) + b x)}` for all `a, b`.
#[derive(Clone, Debug)]
pub struct WalshReport {
    p: u32,
    q: usize,
    n: u32,
    values: WalshValues,
}

#[derive(Clone, Debug)]
enum WalshValues {
    Binary(Vec<i64>),
    Cyclotomic(Vec<CycInt>),
}

pub fn walsh(t: &FnTable) -> WalshReport {
    let f = t.ctx();
    let q = f.q();
    let dual: Vec<usize> = f.elements().map(|b| f.trace_dual(b)).collect();
    let vals = t.values();
    let values = if f.p() == 2 {
        let rows: Vec<Vec<i64>> = (0..q as u32)
            .into_par_iter()
            .map(|a| {
                let a = Elem(a);
                let mut s: Vec<i64> = (0..q)
                    .map(|x| if f.trace(f.mul(a, Elem(vals[x]))) == 0 { 1 } else { -1 })
                    .collect();
                fwht(&mut s);
                dual.iter().map(|&u| s[u]).collect()
            })
            .collect();
        WalshValues::Binary(rows.concat())
    } else {
        let p = f.p();
        let rows: Vec<Vec<CycInt>> = (0..q as u32)
            .into_par_iter()
            .map(|a| {
                let a = Elem(a);
                let mut s: Vec<CycInt> = (0..q)
                    .map(|x| CycInt::zeta_pow(p, f.trace(f.mul(a, Elem(vals[x]))) as u64))
                    .collect();
                fourier(&mut s, p, f.n());
                dual.iter().map(|&u| s[u].clone()).collect()
            })
            .collect();
        WalshValues::Cyclotomic(rows.concat())
    };
    WalshReport { p: f.p(), q, n: f.n(), values }
}

/// Reference `O(q^2)` Walsh coefficient by direct character sum.
pub fn walsh_direct(t: &FnTable, a: Elem, b: Elem) -> CycInt {
    let f = t.ctx();
    let mut counts = vec![0i64; f.p() as usize];
    for x in f.elements() {
        let e = f.add(f.mul(a, t.at(x)), f.mul(b, x));
        counts[f.trace(e) as usize] += 1;
    }
    CycInt::from_counts(f.p(), &counts)
}

impl WalshReport {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn at(&self, a: Elem, b: Elem) -> CycInt {
        let i = a.idx() * self.q + b.idx();
        match &self.values {
            WalshValues::Binary(v) => CycInt::from_int(2, v[i]),
            WalshValues::Cyclotomic(v) => v[i].clone(),
        }
    }

    /// Integer coefficient, available in characteristic two.
    pub fn at_int(&self, a: Elem, b: Elem) -> Option<i64> {
        match &self.values {
            WalshValues::Binary(v) => Some(v[a.idx() * self.q + b.idx()]),
            WalshValues::Cyclotomic(v) => v[a.idx() * self.q + b.idx()].as_integer(),
        }
    }

    /// `|W(a, b)|^2` in exact arithmetic.
    pub fn abs_sq(&self, a: Elem, b: Elem) -> CycInt {
        match &self.values {
            WalshValues::Binary(v) => {
                let w = v[a.idx() * self.q + b.idx()];
                CycInt::from_int(2, w * w)
            }
            WalshValues::Cyclotomic(v) => v[a.idx() * self.q + b.idx()].norm_sq(),
        }
    }

    /// Distinct values of `W(a, b)` over `a != 0`.
    pub fn value_set(&self) -> BTreeSet<CycInt> {
        self.multiset().into_keys().collect()
    }

    /// Integer value set over `a != 0` (characteristic two).
    pub fn int_value_set(&self) -> Option<BTreeSet<i64>> {
        match &self.values {
            WalshValues::Binary(v) => Some(v[self.q..].iter().copied().collect()),
            WalshValues::Cyclotomic(_) => None,
        }
    }

    /// Value multiplicities over `a != 0`, all `b`.
    pub fn multiset(&self) -> BTreeMap<CycInt, u64> {
        let mut m = BTreeMap::new();
        match &self.values {
            WalshValues::Binary(v) => {
                let mut ints: BTreeMap<i64, u64> = BTreeMap::new();
                for &w in &v[self.q..] {
                    *ints.entry(w).or_insert(0) += 1;
                }
                for (w, c) in ints {
                    m.insert(CycInt::from_int(2, w), c);
                }
            }
            WalshValues::Cyclotomic(v) => {
                for w in &v[self.q..] {
                    *m.entry(w.clone()).or_insert(0) += 1;
                }
            }
        }
        m
    }

    /// Largest `|W(a, b)|` over `a != 0`.
    pub fn max_modulus(&self) -> f64 {
        match &self.values {
            WalshValues::Binary(v) => v[self.q..].iter().map(|w| w.abs()).max().unwrap_or(0) as f64,
            WalshValues::Cyclotomic(v) => v[self.q..].iter().map(CycInt::modulus).fold(0.0, f64::max),
        }
    }

    /// `2^{n-1} - max|W| / 2` for Boolean components; `None` for odd `p`.
    pub fn nonlinearity(&self) -> Option<u64> {
        match &self.values {
            WalshValues::Binary(v) => {
                let m = v[self.q..].iter().map(|w| w.unsigned_abs()).max().unwrap_or(0);
                Some((1u64 << (self.n - 1)) - m / 2)
            }
            WalshValues::Cyclotomic(_) => None,
        }
    }

    /// `S(b) = Σ_a |W(a, b)|^2` for every linear mask `b`, as exact integers.
    pub fn power_sums(&self) -> Vec<i64> {
        (0..self.q as u32)
            .into_par_iter()
            .map(|b| {
                let b = Elem(b);
                match &self.values {
                    WalshValues::Binary(v) => (0..self.q).map(|a| v[a * self.q + b.idx()].pow(2)).sum(),
                    WalshValues::Cyclotomic(_) => {
                        let mut acc = CycInt::zero(self.p);
                        for a in 0..self.q as u32 {
                            acc = &acc + &self.abs_sq(Elem(a), b);
                        }
                        acc.as_integer().expect("power sum is rational")
                    }
                }
            })
            .collect()
    }

    /// `Σ_b |W(a, b)|^2` for one coefficient `a`; always `q^2`.
    pub fn parseval(&self, a: Elem) -> i64 {
        let mut acc = CycInt::zero(self.p);
        for b in 0..self.q as u32 {
            acc = &acc + &self.abs_sq(a, Elem(b));
        }
        acc.as_integer().expect("parseval sum is rational")
    }
}

/// Outcome of the Walsh power-sum characterisation of ZDB(δ).
#[derive(Clone, Debug, Serialize)]
pub struct PowerSumCheck {
    pub delta: u32,
    /// expected sum at mask `0` and at nonzero masks
    pub expected_zero: i64,
    pub expected_nonzero: i64,
    /// `sums[b] - expected` per mask `b`
    pub residuals: Vec<i64>,
}

impl PowerSumCheck {
    pub fn holds(&self) -> bool {
        self.residuals.iter().all(|&r| r == 0)
    }
}

/// Compares `Σ_a |W(a, b)|^2` against `q^2 - δq` (`b != 0`) and
/// `(δ + 1) q^2 - δq` (`b = 0`); equality at every mask characterises ZDB(δ).
pub fn walsh_power_sum_check(report: &WalshReport, delta: u32) -> PowerSumCheck {
    let q = report.q as i64;
    let d = delta as i64;
    let expected_nonzero = q * q - d * q;
    let expected_zero = (d + 1) * q * q - d * q;
    let residuals = report
        .power_sums()
        .iter()
        .enumerate()
        .map(|(b, &s)| s - if b == 0 { expected_zero } else { expected_nonzero })
        .collect();
    PowerSumCheck { delta, expected_zero, expected_nonzero, residuals }
}

/// `E_a = {s : y ↦ Tr(a(F(y+s) - F(y))) vanishes identically}`.
#[derive(Clone, Debug, Serialize)]
pub struct KernelEa {
    pub a: Elem,
    pub members: Vec<u32>,
    pub dim: u32,
    /// `s` for which the map is a nonzero constant; empty whenever every
    /// difference equation `F(y+s) = F(y)` is solvable.
    pub constant_shifts: Vec<u32>,
}

impl KernelEa {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

const SPOT_SEED: u64 = 0x5eed_e0a1;

/// Rejects functions of algebraic degree above 2, then spot-checks that the
/// third derivative vanishes at `2n` random points.
pub fn check_quadratic(t: &FnTable) -> Result<(), SpectraError> {
    let f = t.ctx();
    let deg = t.algebraic_degree();
    if deg > 2 {
        return Err(SpectraError::NotQuadratic(format!("algebraic degree {deg}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SPOT_SEED);
    let q = f.q() as u32;
    for _ in 0..2 * f.n() {
        let [x, y, z, w] = [0; 4].map(|_| Elem(rng.gen_range(0..q)));
        let mut acc = Elem::ZERO;
        for mask in 0u32..8 {
            let mut pt = x;
            for (i, d) in [y, z, w].into_iter().enumerate() {
                if mask >> i & 1 == 1 {
                    pt = f.add(pt, d);
                }
            }
            let v = t.at(pt);
            acc = if (3 - mask.count_ones()) % 2 == 0 { f.add(acc, v) } else { f.sub(acc, v) };
        }
        if !acc.is_zero() {
            return Err(SpectraError::NotQuadratic(format!(
                "third derivative at x={} along ({}, {}, {}) is {}",
                f.format_elem(x),
                f.format_elem(y),
                f.format_elem(z),
                f.format_elem(w),
                f.format_elem(acc)
            )));
        }
    }
    Ok(())
}

/// Linear kernel `E_a` of a quadratic function. Membership of `s` is decided
/// from `y = 0` and the `n` basis points, since the map is affine in `y`.
pub fn linear_kernel(t: &FnTable, a: Elem) -> Result<KernelEa, SpectraError> {
    if a.is_zero() {
        return Err(SpectraError::ZeroDirection);
    }
    check_quadratic(t)?;
    let f = t.ctx();
    let basis = f.basis();
    let g = |s: Elem, y: Elem| f.trace(f.mul(a, f.sub(t.at(f.add(y, s)), t.at(y))));
    let mut members = Vec::new();
    let mut constant_shifts = Vec::new();
    for s in f.elements() {
        let c = g(s, Elem::ZERO);
        if basis.iter().all(|&e| g(s, e) == c) {
            if c == 0 {
                members.push(s.0);
            } else {
                constant_shifts.push(s.0);
            }
        }
    }
    let mut dim = 0;
    let mut size = 1usize;
    while size < members.len() {
        size *= f.p() as usize;
        dim += 1;
    }
    debug_assert_eq!(size, members.len());
    Ok(KernelEa { a, members, dim, constant_shifts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspace::PolyFn;
    use crate::gf::FieldSpec;
    use rand::Rng;

    fn f256() -> std::sync::Arc<FieldCtx> {
        FieldCtx::build(FieldSpec::f256_paper()).unwrap()
    }

    #[test]
    fn cube_is_apn_and_zdb2() {
        let f = f256();
        let t = PolyFn::monomial(&f, 3).evaluate();
        let ds = differential_spectrum(&t);
        assert_eq!(ds.delta_max, 2);
        assert!(ds.is_apn());
        assert_eq!(ds.classification(), ZdbClass::Zdb(2));
        assert_eq!(ds.histogram.values().sum::<u64>(), 255 * 256);
        assert!(is_zdb(&t, 2));
    }

    #[test]
    fn linear_map_has_full_uniformity() {
        let f = FieldCtx::build_default(2, 5).unwrap();
        let t = PolyFn::new(&f, [(1, f.exp(3)), (4, Elem::ONE)]).evaluate();
        assert_eq!(differential_spectrum(&t).delta_max, 32);
    }

    #[test]
    fn square_is_planar_in_odd_characteristic() {
        let f = FieldCtx::build_default(3, 2).unwrap();
        let ds = differential_spectrum(&PolyFn::monomial(&f, 2).evaluate());
        assert_eq!(ds.delta_max, 1);
        assert!(ds.is_pn());
    }

    #[test]
    fn row_sums_are_q() {
        let f = FieldCtx::build_default(3, 3).unwrap();
        let t = PolyFn::new(&f, [(5, f.exp(2)), (2, Elem::ONE)]).evaluate();
        let mut counts = vec![0; f.q()];
        for a in f.nonzero() {
            diff_row(&f, t.values(), a, &mut counts);
            assert_eq!(counts.iter().sum::<u32>() as usize, f.q());
        }
    }

    #[test]
    fn power_map_profile() {
        let f = f256();
        for d in [3u64, 5, 7, 15, 17] {
            let e = crate::funcspace::gcd(d, 255) as u32;
            let (_, class) = zero_difference_profile(&PolyFn::monomial(&f, d).evaluate());
            assert_eq!(class, ZdbClass::Zdb(e - 1), "d={d}");
        }
        let (_, class) = zero_difference_profile(&FnTable::identity(&f));
        assert_eq!(class, ZdbClass::Zdb(0));
    }

    #[test]
    fn classification_order() {
        assert_eq!(ZdbClass::of_profile(&[2, 2, 2]), ZdbClass::Zdb(2));
        assert_eq!(ZdbClass::of_profile(&[1, 2, 2]), ZdbClass::Vanishing(2));
        assert_eq!(ZdbClass::of_profile(&[0, 2, 2]), ZdbClass::Neither);
        assert!(ZdbClass::Zdb(2).is_vanishing(2));
        assert!(!ZdbClass::Zdb(0).is_vanishing(2));
    }

    #[test]
    fn walsh_trivial_row() {
        let f = FieldCtx::build_default(2, 4).unwrap();
        let w = walsh(&PolyFn::monomial(&f, 3).evaluate());
        assert_eq!(w.at_int(Elem::ZERO, Elem::ZERO), Some(16));
        assert!(f.nonzero().all(|b| w.at_int(Elem::ZERO, b) == Some(0)));
    }

    #[test]
    fn cube_walsh_values() {
        let f = f256();
        let w = walsh(&PolyFn::monomial(&f, 3).evaluate());
        let set = w.int_value_set().unwrap();
        assert_eq!(set, [-32, -16, 0, 16, 32].into_iter().collect());
        assert_eq!(w.nonlinearity(), Some(112));
        let chk = walsh_power_sum_check(&w, 2);
        assert_eq!(chk.expected_nonzero, 65024);
        assert_eq!(chk.expected_zero, 196096);
        assert!(chk.holds());
        assert!(f.elements().all(|a| w.parseval(a) == 65536));
    }

    #[test]
    fn fast_walsh_matches_direct() {
        let f = FieldCtx::build_default(2, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..5 {
            let vals: Vec<u32> = (0..16).map(|_| rng.gen_range(0..16)).collect();
            let t = FnTable::from_values(&f, vals).unwrap();
            let w = walsh(&t);
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(w.at(a, b), walsh_direct(&t, a, b));
                }
            }
        }
    }

    #[test]
    fn odd_walsh_matches_direct() {
        let f = FieldCtx::build_default(3, 2).unwrap();
        let t = PolyFn::new(&f, [(4, Elem::ONE), (2, f.w())]).evaluate();
        let w = walsh(&t);
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(w.at(a, b), walsh_direct(&t, a, b));
            }
        }
        assert!(f.elements().all(|a| w.parseval(a) == 81));
    }

    #[test]
    fn bijection_power_sum() {
        let f = FieldCtx::build_default(3, 2).unwrap();
        let t = PolyFn::monomial(&f, 5).evaluate();
        assert!(t.is_permutation());
        let chk = walsh_power_sum_check(&walsh(&t), 0);
        assert_eq!(chk.expected_nonzero, 81);
        assert!(chk.holds());
    }

    #[test]
    fn kernel_of_cube() {
        let f = f256();
        let t = PolyFn::monomial(&f, 3).evaluate();
        let w = walsh(&t);
        for a in f.nonzero() {
            let k = linear_kernel(&t, a).unwrap();
            assert!(k.members.contains(&0));
            assert!(k.len() == 1 || k.len() == 4);
            assert_eq!(k.dim % 2, 0);
            assert!(k.constant_shifts.is_empty());
            assert_eq!(w.at_int(a, Elem::ZERO).unwrap().pow(2), 256 * k.len() as i64);
        }
    }

    #[test]
    fn kernel_rejects_non_quadratic() {
        let f = f256();
        let t = PolyFn::monomial(&f, 57).evaluate();
        assert!(matches!(linear_kernel(&t, Elem::ONE), Err(SpectraError::NotQuadratic(_))));
        let raw = FnTable::from_values(&f, t.values().to_vec()).unwrap();
        assert!(matches!(linear_kernel(&raw, Elem::ONE), Err(SpectraError::NotQuadratic(_))));
    }
}
