//! Double-double arithmetic (~31 significant decimal digits).
//!
//! The optimal interpolants of small arcs have error amplitudes down to
//! ~1e-11 while every intermediate quantity is O(1), so expanding the
//! error polynomial in plain f64 leaves absolute noise around 1e-16 —
//! far too coarse to witness equioscillation at those amplitudes. The
//! solver pipeline therefore runs on `Dd` values (an unevaluated sum of
//! two f64s, Dekker/Knuth error-free transformations) and rounds to f64
//! only at the public API boundary.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b| (or a == 0)
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn new(hi: f64, lo: f64) -> Dd {
        let (s, e) = quick_two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn sqrt(self) -> Dd {
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ZERO;
        }
        debug_assert!(self.hi > 0.0, "sqrt of negative Dd");
        // One Newton step on y = sqrt(a) starting from the f64 root
        // already reaches full double-double accuracy; do two for margin.
        let mut y = Dd::from(self.hi.sqrt());
        y = (y + self / y) * Dd::from(0.5);
        y = (y + self / y) * Dd::from(0.5);
        y
    }

    pub fn powi(self, n: u32) -> Dd {
        let mut acc = Dd::ONE;
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }

    pub fn is_sign_negative(self) -> bool {
        self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0)
    }
}

impl From<f64> for Dd {
    #[inline]
    fn from(v: f64) -> Dd {
        Dd { hi: v, lo: 0.0 }
    }
}

impl From<i64> for Dd {
    #[inline]
    fn from(v: i64) -> Dd {
        Dd {
            hi: v as f64,
            lo: 0.0,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, rhs: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let e = e + self.lo + rhs.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, rhs: Dd) -> Dd {
        self + (-rhs)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, rhs: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + self.hi * rhs.lo + self.lo * rhs.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * Dd::from(q1);
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * Dd::from(q2);
        let q3 = r.hi / rhs.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd::new(s, e) + Dd::from(q3)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

/// Dense polynomial helpers over `Dd` coefficients (index = power).
pub(crate) mod poly {
    use super::Dd;

    pub fn mul(a: &[Dd], b: &[Dd]) -> Vec<Dd> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Dd::ZERO; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = out[i + j] + ai * bj;
            }
        }
        out
    }

    pub fn add_scaled(acc: &mut Vec<Dd>, p: &[Dd], k: Dd) {
        if acc.len() < p.len() {
            acc.resize(p.len(), Dd::ZERO);
        }
        for (i, &pi) in p.iter().enumerate() {
            acc[i] = acc[i] + pi * k;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_tracks_tiny_tail() {
        let a = Dd::from(1.0) + Dd::from(1e-25);
        assert_eq!(a.hi, 1.0);
        assert_eq!(a.lo, 1e-25);
        let b = a - Dd::from(1.0);
        assert!((b.to_f64() - 1e-25).abs() < 1e-40);
    }

    #[test]
    fn sqrt_two_squares_back() {
        let s = Dd::from(2.0).sqrt();
        let r = s * s - Dd::from(2.0);
        assert!(r.to_f64().abs() < 1e-30, "residual {}", r.to_f64());
    }

    #[test]
    fn div_roundtrip() {
        let a = Dd::from(3.0).sqrt();
        let b = Dd::from(7.0).sqrt();
        let q = a / b;
        let r = q * b - a;
        assert!(r.to_f64().abs() < 1e-30);
    }

    #[test]
    fn poly_mul_binomial_square() {
        // (t^2 - 1)^2 = t^4 - 2t^2 + 1
        let p = [Dd::from(-1.0), Dd::ZERO, Dd::ONE];
        let q = poly::mul(&p, &p);
        let got: Vec<f64> = q.iter().map(|c| c.to_f64()).collect();
        assert_eq!(got, vec![1.0, 0.0, -2.0, 0.0, 1.0]);
    }
}
