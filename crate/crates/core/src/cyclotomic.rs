//! Exact arithmetic in `Z[ζ_p]`.
//!
//! Values are stored as integer coordinates over `1, ζ, ..., ζ^{p-2}`; the
//! relation `1 + ζ + ... + ζ^{p-1} = 0` is used to eliminate `ζ^{p-1}`.
//! Internally a length-`p` vector is kept with the last entry forced to zero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycInt {
    p: u32,
    c: Vec<i64>,
}

impl CycInt {
    pub fn zero(p: u32) -> Self {
        CycInt { p, c: vec![0; p as usize] }
    }

    pub fn from_int(p: u32, v: i64) -> Self {
        let mut z = Self::zero(p);
        z.c[0] = v;
        z
    }

    /// `ζ^k`.
    pub fn zeta_pow(p: u32, k: u64) -> Self {
        let mut z = Self::zero(p);
        z.c[(k % p as u64) as usize] = 1;
        z.normalized()
    }

    /// `Σ counts[j] ζ^j` for a length-`p` count vector.
    pub fn from_counts(p: u32, counts: &[i64]) -> Self {
        assert_eq!(counts.len(), p as usize);
        CycInt { p, c: counts.to_vec() }.normalized()
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Coordinates over `1, ζ, ..., ζ^{p-2}`.
    pub fn coords(&self) -> &[i64] {
        &self.c[..self.c.len() - 1]
    }

    fn normalized(mut self) -> Self {
        let last = self.c[self.c.len() - 1];
        if last != 0 {
            for v in self.c.iter_mut() {
                *v -= last;
            }
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&v| v == 0)
    }

    /// The value as a rational integer, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        if self.c[1..].iter().all(|&v| v == 0) {
            Some(self.c[0])
        } else {
            None
        }
    }

    /// Complex conjugate, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let p = self.p as usize;
        let mut c = vec![0; p];
        for (i, &v) in self.c.iter().enumerate() {
            c[(p - i) % p] += v;
        }
        CycInt { p: self.p, c }.normalized()
    }

    /// Multiplication by `ζ^k`.
    pub fn rotate(&self, k: usize) -> Self {
        let p = self.p as usize;
        let mut c = vec![0; p];
        for (i, &v) in self.c.iter().enumerate() {
            c[(i + k) % p] = v;
        }
        CycInt { p: self.p, c }.normalized()
    }

    pub fn scale(&self, s: i64) -> Self {
        CycInt { p: self.p, c: self.c.iter().map(|&v| v * s).collect() }
    }

    /// `|self|^2 = self · conj(self)`.
    pub fn norm_sq(&self) -> Self {
        self * &self.conj()
    }

    /// Numerical value with `ζ = e^{2πi/p}`.
    pub fn to_complex(&self) -> (f64, f64) {
        let p = self.p as f64;
        self.c.iter().enumerate().fold((0.0, 0.0), |(re, im), (k, &v)| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / p;
            (re + v as f64 * t.cos(), im + v as f64 * t.sin())
        })
    }

    pub fn modulus(&self) -> f64 {
        let (re, im) = self.to_complex();
        re.hypot(im)
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.as_integer() {
            return write!(f, "{v}");
        }
        let mut first = true;
        for (k, &v) in self.coords().iter().enumerate() {
            if v == 0 {
                continue;
            }
            if !first {
                write!(f, "{}", if v < 0 { " - " } else { " + " })?;
            } else if v < 0 {
                write!(f, "-")?;
            }
            first = false;
            let a = v.abs();
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => write!(f, "z^{k}")?,
                _ => write!(f, "{a}z^{k}")?,
            }
        }
        Ok(())
    }
}

impl serde::Serialize for CycInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Add for &CycInt {
    type Output = CycInt;
    fn add(self, o: &CycInt) -> CycInt {
        debug_assert_eq!(self.p, o.p);
        CycInt { p: self.p, c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, o: &CycInt) -> CycInt {
        debug_assert_eq!(self.p, o.p);
        CycInt { p: self.p, c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        self.scale(-1)
    }
}

impl Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, o: &CycInt) -> CycInt {
        debug_assert_eq!(self.p, o.p);
        let p = self.p as usize;
        let mut c = vec![0i64; p];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[(i + j) % p] += a * b;
            }
        }
        CycInt { p: self.p, c }.normalized()
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for CycInt {
            type Output = CycInt;
            fn $m(self, o: CycInt) -> CycInt { (&self).$m(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

/// Fourier transform over `F_p^n` with values in `Z[ζ_p]`:
/// `out[u] = Σ_x ζ^{u·x} data[x]`, indices being base-`p` digit vectors.
pub fn fourier(data: &mut [CycInt], p: u32, n: u32) {
    let p_us = p as usize;
    let mut stride = 1usize;
    for _ in 0..n {
        let block = stride * p_us;
        for start in (0..data.len()).step_by(block) {
            for off in 0..stride {
                let idx: Vec<usize> = (0..p_us).map(|t| start + off + t * stride).collect();
                let xs: Vec<CycInt> = idx.iter().map(|&i| data[i].clone()).collect();
                for (s, &i) in idx.iter().enumerate() {
                    let mut acc = CycInt::zero(p);
                    for (t, x) in xs.iter().enumerate() {
                        acc = &acc + &x.rotate((s * t) % p_us);
                    }
                    data[i] = acc;
                }
            }
        }
        stride = block;
    }
}

/// In-place Walsh–Hadamard transform: `out[u] = Σ_x (-1)^{u·x} data[x]`.
pub fn fwht(data: &mut [i64]) {
    let len = data.len();
    debug_assert!(len.is_power_of_two());
    let mut h = 1;
    while h < len {
        for i in (0..len).step_by(2 * h) {
            for j in i..i + h {
                let (x, y) = (data[j], data[j + h]);
                data[j] = x + y;
                data[j + h] = x - y;
            }
        }
        h *= 2;
    }
}
