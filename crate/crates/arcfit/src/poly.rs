//! Dense univariate polynomial arithmetic and bracketed root isolation.

use serde::{Deserialize, Serialize};

/// Dense polynomial in the monomial basis; `coeffs[k]` multiplies `t^k`.
/// Trailing zeros are trimmed; the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Poly {
    coeffs: Vec<f64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<f64>) -> Poly {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Horner evaluation; the single canonical evaluator.
    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![0.0; n];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.coeffs.get(i).unwrap_or(&0.0) + rhs.coeffs.get(i).unwrap_or(&0.0);
        }
        Poly::new(out)
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![0.0; n];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.coeffs.get(i).unwrap_or(&0.0) - rhs.coeffs.get(i).unwrap_or(&0.0);
        }
        Poly::new(out)
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Poly::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, &c)| (k + 1) as f64 * c)
                .collect(),
        )
    }

    /// Brackets every sign change of `self` on a uniform grid over
    /// `[lo, hi]` and refines each by bisection. Tangential roots that
    /// never flip sign at the grid resolution are not reported.
    pub fn isolate_roots(&self, lo: f64, hi: f64, grid: usize) -> Vec<BracketedRoot> {
        let p = self.clone();
        isolate_roots_fn(move |t| p.eval(t), lo, hi, grid)
    }
}

/// A root found by bisection, with its original bracket and residual.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct BracketedRoot {
    pub lo: f64,
    pub hi: f64,
    pub root: f64,
    pub residual: f64,
}

const BISECT_WIDTH_TOL: f64 = 1e-14;
const BISECT_MAX_ITER: usize = 200;

/// Bisection refinement of a sign-changing bracket; `f(lo)` and `f(hi)`
/// must have opposite (or zero) signs.
pub fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64) -> BracketedRoot {
    let (blo, bhi) = (lo, hi);
    let mut flo = f(lo);
    for _ in 0..BISECT_MAX_ITER {
        if hi - lo <= BISECT_WIDTH_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fmid = f(mid);
        if fmid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if (flo < 0.0) == (fmid < 0.0) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    let root = 0.5 * (lo + hi);
    BracketedRoot {
        lo: blo,
        hi: bhi,
        root,
        residual: f(root).abs(),
    }
}

/// Grid scan + bisection for an arbitrary real function; used both for
/// `Poly` roots and for the solver objectives, which are cheaper to
/// evaluate in closed form than to expand.
pub fn isolate_roots_fn<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    grid: usize,
) -> Vec<BracketedRoot> {
    assert!(lo < hi && grid >= 2, "need lo < hi and grid >= 2");
    let mut roots: Vec<BracketedRoot> = Vec::new();
    let step = (hi - lo) / grid as f64;
    let mut t_prev = lo;
    let mut f_prev = f(lo);
    for i in 1..=grid {
        let t = if i == grid { hi } else { lo + i as f64 * step };
        let ft = f(t);
        if f_prev == 0.0 {
            // grid point exactly on a root
            if roots
                .last()
                .is_none_or(|r| (r.root - t_prev).abs() > step * 0.5)
            {
                roots.push(BracketedRoot {
                    lo: t_prev,
                    hi: t_prev,
                    root: t_prev,
                    residual: 0.0,
                });
            }
        } else if ft != 0.0 && (f_prev < 0.0) != (ft < 0.0) {
            roots.push(bisect(&f, t_prev, t));
        }
        t_prev = t;
        f_prev = ft;
    }
    if f_prev == 0.0
        && roots
            .last()
            .is_none_or(|r| (r.root - hi).abs() > step * 0.5)
    {
        roots.push(BracketedRoot {
            lo: hi,
            hi,
            root: hi,
            residual: 0.0,
        });
    }
    roots
}

/// Grid used when scanning for critical points of low-degree polynomials.
const CRITICAL_GRID: usize = 4096;

/// Location and value of the maximum of `|p|` over `[lo, hi]`, found by
/// examining endpoints and the roots of `p'`.
pub fn max_abs_on_interval(p: &Poly, lo: f64, hi: f64) -> (f64, f64) {
    assert!(lo < hi);
    let mut best = (lo, p.eval(lo).abs());
    let cand_hi = p.eval(hi).abs();
    if cand_hi > best.1 {
        best = (hi, cand_hi);
    }
    for r in p.derivative().isolate_roots(lo, hi, CRITICAL_GRID) {
        let v = p.eval(r.root).abs();
        if v > best.1 {
            best = (r.root, v);
        }
    }
    best
}
