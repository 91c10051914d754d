//! The three optimal-interpolant constructions: closed-form parabolic,
//! bracketed-root cubic, and the quartic pipeline f-root -> y -> beta.
//!
//! All parameter recovery runs in double-double arithmetic; see `dd`.

use serde::{Deserialize, Serialize};

use crate::arc::{ArcSpec, DdParams, InterpolantSolution, Params};
use crate::chebyshev::dd_alternation_cached;
use crate::dd::Dd;
use crate::error::{ArcFitError, Result};
use crate::poly::isolate_roots_fn;

const DD_BISECT_MAX_ITER: usize = 200;

/// Bisection in double-double; the caller guarantees (by the bracketing
/// lemmas) that a sign change exists. A zero value at `lo` is nudged
/// inward, which happens only in the degenerate c = 0 corner.
fn bisect_dd<F: Fn(Dd) -> Dd>(f: &F, mut lo: Dd, mut hi: Dd) -> Result<(Dd, Dd)> {
    let width0 = hi - lo;
    let mut flo = f(lo);
    if flo.to_f64() == 0.0 {
        lo = lo + width0 * Dd::from(1e-9);
        flo = f(lo);
    }
    let fhi = f(hi);
    if flo.is_sign_negative() == fhi.is_sign_negative() {
        return Err(ArcFitError::BracketSign {
            lo: lo.to_f64(),
            hi: hi.to_f64(),
            flo: flo.to_f64(),
            fhi: fhi.to_f64(),
        });
    }
    for _ in 0..DD_BISECT_MAX_ITER {
        if (hi - lo).to_f64() <= 1e-26 {
            break;
        }
        let mid = (lo + hi) * Dd::from(0.5);
        let fmid = f(mid);
        if fmid.to_f64() == 0.0 {
            return Ok((mid, fmid));
        }
        if fmid.is_sign_negative() == flo.is_sign_negative() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    let root = (lo + hi) * Dd::from(0.5);
    Ok((root, f(root)))
}

// ---------------------------------------------------------------------------
// parabolic

fn parabolic_d_dd(c: Dd) -> Dd {
    let sqrt2 = Dd::from(2.0).sqrt();
    let one = Dd::ONE;
    let two = Dd::from(2.0);
    let inner = two * (sqrt2 - one) + (Dd::from(3.0) - two * sqrt2) * c * c;
    (one + sqrt2) * (inner.sqrt() - (two - sqrt2) * c)
}

/// Best parabolic interpolant; `d` has a closed form.
pub fn solve_parabolic(arc: &ArcSpec) -> InterpolantSolution {
    let d = parabolic_d_dd(Dd::from(arc.c));
    InterpolantSolution::assemble(
        *arc,
        Params::Parabolic { d: d.to_f64() },
        &DdParams::Parabolic { d },
    )
}

// ---------------------------------------------------------------------------
// cubic

fn cubic_objective_dd(xi: Dd, c: Dd) -> Dd {
    let sqrt3 = Dd::from(3.0).sqrt();
    let c2 = c * c;
    Dd::from(243.0) * xi.powi(3)
        - Dd::from(27.0) * c * (Dd::from(11.0) - Dd::from(16.0) * sqrt3) * xi * xi
        - Dd::from(3.0)
            * (Dd::from(32.0) * (Dd::ONE + Dd::from(2.0) * sqrt3)
                - Dd::from(3.0) * (Dd::from(81.0) - Dd::from(32.0) * sqrt3) * c2)
            * xi
        - Dd::from(32.0) * (Dd::from(13.0) + Dd::from(2.0) * sqrt3) * c
        - (Dd::from(163.0) - Dd::from(112.0) * sqrt3) * c2 * c
}

/// The cubic resolvent whose unique root on `(c, (4+c)/3)` gives `xi`.
pub fn cubic_objective(xi: f64, c: f64) -> f64 {
    cubic_objective_dd(Dd::from(xi), Dd::from(c)).to_f64()
}

fn cubic_eta_dd(xi: Dd, c: Dd, s: Dd) -> Dd {
    let sqrt3 = Dd::from(3.0).sqrt();
    let q = Dd::from(3.0) * xi + c;
    ((Dd::from(2.0) + sqrt3) / Dd::from(8.0) * q * q
        - xi * c
        - Dd::from(3.0)
        - Dd::from(2.0) * sqrt3)
        / s
}

/// Best cubic interpolant: `xi` by bisection on `(c, (4+c)/3)`, `eta`
/// from the linear relation. The degenerate line-segment solution
/// `xi = c` is excluded by the bracket.
pub fn solve_cubic(arc: &ArcSpec) -> Result<InterpolantSolution> {
    let c = Dd::from(arc.c);
    let s = arc.s_dd();
    let lo = c;
    let hi = (Dd::from(4.0) + c) / Dd::from(3.0);
    let (xi, _) = bisect_dd(&|t| cubic_objective_dd(t, c), lo, hi)?;
    let eta = cubic_eta_dd(xi, c, s);
    Ok(InterpolantSolution::assemble(
        *arc,
        Params::Cubic {
            xi: xi.to_f64(),
            eta: eta.to_f64(),
        },
        &DdParams::Cubic { xi, eta },
    ))
}

// ---------------------------------------------------------------------------
// quartic

struct QuarticCtx {
    c: Dd,
    s2: Dd,
    sigma: [Dd; 3],
    /// u1^2 u2^2 u3^2
    w: Dd,
}

impl QuarticCtx {
    fn new(c: Dd) -> QuarticCtx {
        let alt = dd_alternation_cached(4);
        let s2 = Dd::ONE - c * c;
        QuarticCtx {
            c,
            s2,
            sigma: alt.sigma,
            w: alt.u_prod_sq,
        }
    }

    /// A(x) = -x/32 + c/8 + c^3/8 - sigma3 c x^2 / 512
    fn a(&self, x: Dd) -> Dd {
        let c = self.c;
        -x / Dd::from(32.0) + c / Dd::from(8.0) + c * c * c / Dd::from(8.0)
            - self.sigma[2] * c * x * x / Dd::from(512.0)
    }

    /// B(x) = 1/4 ((sigma3 x^2/64 + c x/4 - s^2)^2
    ///         - (1 - sigma2 + 2 sigma3) c^2 x^2 / 16
    ///         + (2 - sigma1) x^2 / 16 - c (x - 8c))
    fn b(&self, x: Dd) -> Dd {
        let c = self.c;
        let x2 = x * x;
        let q = self.sigma[2] * x2 / Dd::from(64.0) + c * x / Dd::from(4.0) - self.s2;
        (q * q
            - (Dd::ONE - self.sigma[1] + Dd::from(2.0) * self.sigma[2]) * c * c * x2
                / Dd::from(16.0)
            + (Dd::from(2.0) - self.sigma[0]) * x2 / Dd::from(16.0)
            - c * (x - Dd::from(8.0) * c))
            / Dd::from(4.0)
    }

    /// f(x) = B^2 - (64 + w x^2) A^2; zeros are the interpolant candidates.
    fn f(&self, x: Dd) -> Dd {
        let a = self.a(x);
        let b = self.b(x);
        b * b - (Dd::from(64.0) + self.w * x * x) * a * a
    }

    fn recover_y(&self, x: Dd) -> Result<Dd> {
        let a = self.a(x);
        if a.to_f64().abs() < 1e-14 {
            return Err(ArcFitError::SingularRecovery(a.to_f64().abs()));
        }
        Ok(self.b(x) / a)
    }

    fn recover_beta(&self, x: Dd, y: Dd, s: Dd) -> Dd {
        let c = self.c;
        (Dd::ONE - self.sigma[2] * x * x / Dd::from(128.0) - c * (x + y) / Dd::from(8.0)) / s
    }
}

/// The one-variable resolvent of the quartic system.
pub fn quartic_objective(x: f64, c: f64) -> f64 {
    QuarticCtx::new(Dd::from(c)).f(Dd::from(x)).to_f64()
}

/// Recovers `y = 4 alpha + 3 gamma + c` from an `x`-root; the pair must
/// re-satisfy `64 + u1^2 u2^2 u3^2 x^2 - y^2 = 0`.
pub fn recover_y(x: f64, c: f64, _s: f64) -> Result<f64> {
    Ok(QuarticCtx::new(Dd::from(c))
        .recover_y(Dd::from(x))?
        .to_f64())
}

/// Recovers `beta` from the linear relation; requires `s > 0`.
pub fn recover_beta(x: f64, y: f64, c: f64, s: f64) -> Result<f64> {
    if s <= 0.0 {
        return Err(ArcFitError::InvalidPhi(0.0));
    }
    let ctx = QuarticCtx::new(Dd::from(c));
    Ok(ctx
        .recover_beta(Dd::from(x), Dd::from(y), Dd::from(s))
        .to_f64())
}

/// Intermediate quantities of the quartic solve.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct QuarticIntermediates {
    /// x = 4 alpha - 3 gamma - c
    pub x: f64,
    /// y = 4 alpha + 3 gamma + c
    pub y: f64,
    pub f_residual: f64,
    pub bracket: (f64, f64),
}

fn solve_quartic_dd(arc: &ArcSpec) -> Result<(QuarticCtx, Dd, Dd, QuarticIntermediates)> {
    let c = Dd::from(arc.c);
    let ctx = QuarticCtx::new(c);
    let omc = Dd::ONE - c;
    let lo = -(omc * omc);
    let hi = Dd::ZERO;
    let (x, fres) = bisect_dd(&|t| ctx.f(t), lo, hi)?;
    let y = ctx.recover_y(x)?;
    Ok((
        ctx,
        x,
        y,
        QuarticIntermediates {
            x: x.to_f64(),
            y: y.to_f64(),
            f_residual: fres.to_f64(),
            bracket: (lo.to_f64(), hi.to_f64()),
        },
    ))
}

/// Intermediates of the best-quartic solve (for diagnostics and tests).
pub fn quartic_intermediates(arc: &ArcSpec) -> Result<QuarticIntermediates> {
    solve_quartic_dd(arc).map(|(_, _, _, im)| im)
}

/// Best quartic interpolant: `x` is the only zero of the resolvent on
/// `[-(1-c)^2, 0]`; `y`, `beta` follow from the linear relations, then
/// `alpha = (x+y)/8`, `gamma = (y-x-2c)/6`.
pub fn solve_quartic(arc: &ArcSpec) -> Result<InterpolantSolution> {
    let (ctx, x, y, im) = solve_quartic_dd(arc)?;
    let s = arc.s_dd();
    let beta = ctx.recover_beta(x, y, s);
    let alpha = (x + y) / Dd::from(8.0);
    let gamma = (y - x - Dd::from(2.0) * ctx.c) / Dd::from(6.0);
    Ok(InterpolantSolution::assemble(
        *arc,
        Params::Quartic {
            alpha: alpha.to_f64(),
            beta: beta.to_f64(),
            gamma: gamma.to_f64(),
            x: im.x,
            y: im.y,
        },
        &DdParams::Quartic { alpha, beta, gamma },
    ))
}

/// A real zero of the quartic resolvent with the error amplitude of the
/// interpolant it induces.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct QuarticRoot {
    pub x: f64,
    pub amplitude: f64,
}

/// Amplitude of the error function induced by an `x`-root: the leading
/// coefficient of psi is `x^2/64` and `T_8(zeta t)` has leading
/// coefficient `128 zeta^8`.
pub(crate) fn amplitude_from_x(x: f64) -> f64 {
    let zeta = dd_alternation_cached(4).zeta;
    let zeta8 = zeta.powi(8).to_f64();
    x * x / (8192.0 * zeta8)
}

const ROOT_CENSUS_BOUND: f64 = 128.0;
const ROOT_CENSUS_GRID: usize = 131072;
const ROOT_CENSUS_MAX_BOUND: f64 = 4096.0;

/// All real zeros of the quartic resolvent, ascending, annotated with
/// induced amplitudes. Across the whole angle range the real roots stay
/// inside (-84, 51) (the outer negative pair tends to about -83.7 as
/// phi -> 0), so the default bound of 128 covers them with margin; as a
/// safety net the bound is doubled (with the grid scaled to keep its
/// spacing) while the degree-8 resolvent is non-positive at either end.
pub fn quartic_all_real_roots(arc: &ArcSpec) -> Vec<QuarticRoot> {
    let ctx = QuarticCtx::new(Dd::from(arc.c));
    let f = move |x: f64| ctx.f(Dd::from(x)).to_f64();
    let mut bound = ROOT_CENSUS_BOUND;
    while f(-bound) <= 0.0 || f(bound) <= 0.0 {
        bound *= 2.0;
        assert!(
            bound <= ROOT_CENSUS_MAX_BOUND,
            "resolvent census bound blew up"
        );
    }
    let grid = ROOT_CENSUS_GRID * (bound / ROOT_CENSUS_BOUND) as usize;
    isolate_roots_fn(f, -bound, bound, grid)
        .into_iter()
        .map(|r| QuarticRoot {
            x: r.root,
            amplitude: amplitude_from_x(r.root),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chebyshev::alternation_data;
    use std::f64::consts::PI;

    fn arc(phi: f64) -> ArcSpec {
        ArcSpec::new(phi).unwrap()
    }

    #[test]
    fn parabolic_table_spot_checks() {
        for (phi, d, err) in [
            (PI / 2.0, 2.19737, 2.07107e-1),
            (PI / 6.0, 1.13712, 3.15242e-3),
            (PI / 12.0, 1.03427, 2.00378e-4),
        ] {
            let sol = solve_parabolic(&arc(phi));
            let Params::Parabolic { d: got } = sol.params else {
                panic!()
            };
            assert!((got - d).abs() < 5e-6, "d {got} vs {d}");
            assert!((sol.simplified_error - err).abs() < 5e-6 * err);
        }
    }

    #[test]
    fn cubic_objective_closed_forms() {
        let sqrt3 = 3.0_f64.sqrt();
        for phi in [PI / 2.0, PI / 3.0, PI / 5.0] {
            let a = arc(phi);
            let (c, s) = (a.c, a.s);
            let at_c = cubic_objective(c, c);
            assert!((at_c - (-256.0 * (2.0 + sqrt3) * c * s * s)).abs() < 1e-10);
            let at_hi = cubic_objective((4.0 + c) / 3.0, c);
            let expect = 8.0
                * (56.0 - 32.0 * sqrt3
                    + (80.0 * sqrt3 - 68.0) * c
                    + 102.0 * c * c
                    + (7.0 + 8.0 * sqrt3) * c * c * c);
            assert!((at_hi - expect).abs() < 1e-9 * expect.abs().max(1.0));
        }
        // Table root residual at phi = pi/2 (xi printed to 5 decimals)
        assert!(cubic_objective(1.32800, 0.0).abs() < 1e-3 * 857.0);
    }

    #[test]
    fn cubic_table_spot_checks() {
        for (phi, xi, eta, err) in [
            (PI / 2.0, 1.32800, 0.94046, 7.97742e-3),
            (PI / 4.0, 1.09754, 0.31523, 1.36878e-4),
            (PI / 12.0, 1.01136, 0.08926, 1.92912e-7),
        ] {
            let sol = solve_cubic(&arc(phi)).unwrap();
            let Params::Cubic { xi: gx, eta: ge } = sol.params else {
                panic!()
            };
            assert!((gx - xi).abs() < 5e-6);
            assert!((ge - eta).abs() < 5e-6);
            assert!((sol.simplified_error - err).abs() < 5e-6 * err);
            assert!(gx > arc(phi).c, "degenerate line-segment root excluded");
        }
    }

    #[test]
    fn quartic_objective_endpoints() {
        for phi in [PI / 2.0, PI / 4.0, PI / 7.0] {
            let a = arc(phi);
            let s8 = a.s.powi(8);
            assert!((quartic_objective(0.0, a.c) - s8 / 16.0).abs() < 1e-12 * s8.max(1e-6));
            assert!(quartic_objective(-(1.0 - a.c).powi(2), a.c) < 0.0);
        }
    }

    #[test]
    fn recover_y_consistency() {
        let d4 = alternation_data(4).unwrap();
        let w: f64 = d4.zeros_pos.iter().map(|z| z * z).product();
        for phi in [PI / 2.0, PI / 3.0, PI / 8.0] {
            let a = arc(phi);
            let im = quartic_intermediates(&a).unwrap();
            let resid = 64.0 + w * im.x * im.x - im.y * im.y;
            assert!(
                resid.abs() <= 1e-9 * (im.y * im.y).max(1.0),
                "residual {resid}"
            );
            assert!(im.x >= im.bracket.0 && im.x <= 0.0);
        }
        // x = 0, c = 1 forces y = 8
        assert!((recover_y(0.0, 1.0, 0.0).unwrap() - 8.0).abs() < 1e-12);
    }

    #[test]
    fn recover_beta_cases() {
        // at x = 0, y = 8: beta = (1 - c)/s
        let a = arc(PI / 5.0);
        let b = recover_beta(0.0, 8.0, a.c, a.s).unwrap();
        assert!((b - (1.0 - a.c) / a.s).abs() < 1e-12);
        assert!(recover_beta(0.0, 8.0, a.c, 0.0).is_err());
    }

    #[test]
    fn quartic_table_spot_checks() {
        for (phi, alpha, beta, gamma, err) in [
            (PI / 2.0, 0.87518, 0.99857, 1.49995, 1.42325e-4),
            (PI / 4.0, 0.99193, 0.42228, 1.10839, 5.94378e-7),
            (PI / 12.0, 0.99990, 0.13203, 1.01149, 9.23852e-11),
        ] {
            let sol = solve_quartic(&arc(phi)).unwrap();
            let Params::Quartic {
                alpha: ga,
                beta: gb,
                gamma: gg,
                x,
                ..
            } = sol.params
            else {
                panic!()
            };
            assert!((ga - alpha).abs() < 5e-6, "alpha {ga} vs {alpha}");
            assert!((gb - beta).abs() < 5e-6, "beta {gb} vs {beta}");
            assert!((gg - gamma).abs() < 5e-6, "gamma {gg} vs {gamma}");
            assert!(
                (sol.simplified_error - err).abs() < 5e-6 * err,
                "err {} vs {err}",
                sol.simplified_error
            );
            // leading coefficient of psi is x^2/64
            let lead = *sol.psi.coeffs().last().unwrap();
            assert!((lead - x * x / 64.0).abs() < 1e-10 * lead.abs());
        }
    }

    #[test]
    fn psi_vanishes_at_scaled_zeros() {
        let d3 = alternation_data(3).unwrap();
        let d4 = alternation_data(4).unwrap();
        for phi in [PI / 2.0, PI / 3.0, PI / 6.0, PI / 12.0] {
            let cub = solve_cubic(&arc(phi)).unwrap();
            for &z in &d3.zeros_pos {
                assert!(cub.psi.eval(z).abs() <= 1e-10 * cub.amplitude_mu.abs());
                assert!(cub.psi.eval(-z).abs() <= 1e-10 * cub.amplitude_mu.abs());
            }
            let qua = solve_quartic(&arc(phi)).unwrap();
            for &z in &d4.zeros_pos {
                assert!(
                    qua.psi.eval(z).abs() <= 1e-9 * qua.amplitude_mu.abs(),
                    "phi={phi} z={z} residual={}",
                    qua.psi.eval(z).abs() / qua.amplitude_mu.abs()
                );
            }
        }
    }

    #[test]
    fn quartic_resolvent_increasing_on_bracket() {
        for i in 0..50 {
            let phi = PI / 12.0 + (PI / 2.0 - PI / 12.0) * i as f64 / 49.0;
            let a = arc(phi);
            let lo = -(1.0 - a.c).powi(2);
            let mut prev = quartic_objective(lo, a.c);
            for k in 1..=100 {
                let x = lo * (1.0 - k as f64 / 100.0);
                let cur = quartic_objective(x, a.c);
                assert!(cur > prev, "not increasing at phi={phi}, x={x}");
                prev = cur;
            }
        }
    }

    #[test]
    fn root_census_counts() {
        assert_eq!(quartic_all_real_roots(&arc(PI / 4.0)).len(), 6);
        let roots = quartic_all_real_roots(&arc(PI / 2.0));
        assert_eq!(roots.len(), 4);
        // even resolvent at c = 0: roots in +- pairs
        assert!((roots[0].x + roots[3].x).abs() < 1e-9);
        assert!((roots[1].x + roots[2].x).abs() < 1e-9);
    }

    #[test]
    fn second_negative_root_amplitude_pi_6() {
        let roots = quartic_all_real_roots(&arc(PI / 6.0));
        let negatives: Vec<_> = roots.iter().filter(|r| r.x < 0.0).collect();
        assert!(negatives.len() >= 2);
        let second = negatives[negatives.len() - 2];
        assert!(
            (second.amplitude - 4.01760e-5).abs() < 1e-4 * 4.01760e-5,
            "amplitude {}",
            second.amplitude
        );
        let best = solve_quartic(&arc(PI / 6.0)).unwrap();
        assert!(second.amplitude > best.simplified_error);
    }

    #[test]
    fn monotonicity_and_degree_dominance() {
        let grid = [PI / 12.0, PI / 8.0, PI / 6.0, PI / 4.0, PI / 3.0, PI / 2.0];
        let mut prev = [0.0f64; 3];
        for phi in grid {
            let a = arc(phi);
            let errs = [
                solve_parabolic(&a).simplified_error,
                solve_cubic(&a).unwrap().simplified_error,
                solve_quartic(&a).unwrap().simplified_error,
            ];
            for (e, p) in errs.iter().zip(prev) {
                assert!(*e > p, "errors increase with phi");
            }
            assert!(errs[2] < errs[1] && errs[1] < errs[0], "degree dominance");
            prev = errs;
        }
    }

    #[test]
    fn smallest_positive_root_is_not_the_best_for_acute_arcs() {
        // that root serves the complementary (obtuse) arc instead
        let roots = quartic_all_real_roots(&arc(PI / 3.0));
        let best = solve_quartic(&arc(PI / 3.0)).unwrap();
        let pos = roots.iter().find(|r| r.x > 0.0).unwrap();
        assert!(pos.amplitude > best.simplified_error);
    }
}
