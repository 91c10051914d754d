//! Arc specification, Bezier control polygons, and the two error metrics.

use serde::{Deserialize, Serialize};

use crate::dd::{poly as ddp, Dd};
use crate::error::{ArcFitError, Result};
use crate::poly::{max_abs_on_interval, Poly};

/// Smallest accepted half-angle; below this the optimal error amplitudes
/// underflow every verification tolerance.
pub const PHI_MIN: f64 = 1e-3;

/// The target arc: half-angle `phi` with cached cosine and sine.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ArcSpec {
    pub phi: f64,
    pub c: f64,
    pub s: f64,
}

impl ArcSpec {
    pub fn new(phi: f64) -> Result<ArcSpec> {
        if !phi.is_finite() || !(PHI_MIN..=std::f64::consts::FRAC_PI_2 + 1e-12).contains(&phi) {
            return Err(ArcFitError::InvalidPhi(phi));
        }
        // phi == pi/2 rounds to a cosine of ~6e-17; a phi marginally above
        // pi/2 may round negative, which the bracketing lemmas exclude.
        let c = phi.cos().max(0.0);
        let s = Self::s_dd_from_c(c).to_f64();
        Ok(ArcSpec { phi, c, s })
    }

    /// sin(phi) as sqrt(1 - c^2) in double-double, so that c^2 + s^2 = 1
    /// holds to ~1e-32 inside the solvers.
    pub(crate) fn s_dd_from_c(c: f64) -> Dd {
        let cd = Dd::from(c);
        (Dd::ONE - cd * cd).sqrt()
    }

    pub(crate) fn s_dd(&self) -> Dd {
        Self::s_dd_from_c(self.c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Point2 {
        Point2 { x, y }
    }
}

/// Solved parameters, tagged by interpolant degree.
///
/// Quartic control points follow the convention `b1 = (alpha, -beta)`,
/// `b3 = (alpha, beta)` (mirroring the cubic `b1 = (xi, -eta)`); this is
/// the convention under which the quartic error function has its stated
/// form, and it keeps `beta > 0` for every optimal solution.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Params {
    Parabolic {
        d: f64,
    },
    Cubic {
        xi: f64,
        eta: f64,
    },
    Quartic {
        alpha: f64,
        beta: f64,
        gamma: f64,
        x: f64,
        y: f64,
    },
}

impl Params {
    pub fn degree(&self) -> u8 {
        match self {
            Params::Parabolic { .. } => 2,
            Params::Cubic { .. } => 3,
            Params::Quartic { .. } => 4,
        }
    }

    /// The free coordinates (1, 2 or 3 of them) seen by the optimality probe.
    pub fn free(&self) -> Vec<f64> {
        match *self {
            Params::Parabolic { d } => vec![d],
            Params::Cubic { xi, eta } => vec![xi, eta],
            Params::Quartic {
                alpha, beta, gamma, ..
            } => vec![alpha, beta, gamma],
        }
    }

    /// Rebuilds a parameter record of the same degree from free coordinates.
    pub fn from_free(degree: u8, v: &[f64]) -> Result<Params> {
        match (degree, v) {
            (2, [d]) => Ok(Params::Parabolic { d: *d }),
            (3, [xi, eta]) => Ok(Params::Cubic { xi: *xi, eta: *eta }),
            (4, [alpha, beta, gamma]) => Ok(Params::Quartic {
                alpha: *alpha,
                beta: *beta,
                gamma: *gamma,
                x: f64::NAN,
                y: f64::NAN,
            }),
            _ => Err(ArcFitError::InvalidDegree(degree)),
        }
    }
}

/// Degree-n Bezier control points over the parameter interval [-1, 1],
/// mirror-symmetric about the x-axis.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ControlPolygon {
    pub degree: u8,
    pub points: Vec<Point2>,
}

pub(crate) fn polygon_points_dd(c: Dd, s: Dd, params: &DdParams) -> Vec<(Dd, Dd)> {
    match *params {
        DdParams::Parabolic { d } => vec![(c, -s), (d, Dd::ZERO), (c, s)],
        DdParams::Cubic { xi, eta } => vec![(c, -s), (xi, -eta), (xi, eta), (c, s)],
        DdParams::Quartic { alpha, beta, gamma } => vec![
            (c, -s),
            (alpha, -beta),
            (gamma, Dd::ZERO),
            (alpha, beta),
            (c, s),
        ],
    }
}

/// Double-double parameter record used on the solver path.
#[derive(Clone, Copy, Debug)]
pub(crate) enum DdParams {
    Parabolic { d: Dd },
    Cubic { xi: Dd, eta: Dd },
    Quartic { alpha: Dd, beta: Dd, gamma: Dd },
}

/// Builds the symmetric control polygon for the given solved parameters.
pub fn build_polygon(arc: &ArcSpec, params: &Params) -> ControlPolygon {
    let pts = match *params {
        Params::Parabolic { d } => vec![
            Point2::new(arc.c, -arc.s),
            Point2::new(d, 0.0),
            Point2::new(arc.c, arc.s),
        ],
        Params::Cubic { xi, eta } => vec![
            Point2::new(arc.c, -arc.s),
            Point2::new(xi, -eta),
            Point2::new(xi, eta),
            Point2::new(arc.c, arc.s),
        ],
        Params::Quartic {
            alpha, beta, gamma, ..
        } => vec![
            Point2::new(arc.c, -arc.s),
            Point2::new(alpha, -beta),
            Point2::new(gamma, 0.0),
            Point2::new(alpha, beta),
            Point2::new(arc.c, arc.s),
        ],
    };
    ControlPolygon {
        degree: params.degree(),
        points: pts,
    }
}

/// De Casteljau evaluation at `t in [-1, 1]` (local parameter `(1+t)/2`).
pub fn bezier_point(poly: &ControlPolygon, t: f64) -> Result<Point2> {
    if !(-1.0..=1.0).contains(&t) {
        return Err(ArcFitError::ParameterOutOfRange(t));
    }
    let u = 0.5 * (1.0 + t);
    let mut pts = poly.points.clone();
    while pts.len() > 1 {
        for i in 0..pts.len() - 1 {
            pts[i] = Point2::new(
                (1.0 - u) * pts[i].x + u * pts[i + 1].x,
                (1.0 - u) * pts[i].y + u * pts[i + 1].y,
            );
        }
        pts.pop();
    }
    Ok(pts[0])
}

/// Monomial coefficients of the reparameterized Bernstein polynomial
/// `B_j^n(t) = C(n,j) ((1+t)/2)^j ((1-t)/2)^(n-j)`.
fn bernstein_monomial_dd(n: usize, j: usize) -> Vec<Dd> {
    const BINOM: [[f64; 5]; 5] = [
        [1.0, 0.0, 0.0, 0.0, 0.0],
        [1.0, 1.0, 0.0, 0.0, 0.0],
        [1.0, 2.0, 1.0, 0.0, 0.0],
        [1.0, 3.0, 3.0, 1.0, 0.0],
        [1.0, 4.0, 6.0, 4.0, 1.0],
    ];
    let half = Dd::from(0.5);
    let up = [half, half]; // (1+t)/2
    let dn = [half, -half]; // (1-t)/2
    let mut out = vec![Dd::from(BINOM[n][j])];
    for _ in 0..j {
        out = ddp::mul(&out, &up);
    }
    for _ in 0..(n - j) {
        out = ddp::mul(&out, &dn);
    }
    out
}

/// `x(t)^2 + y(t)^2 - 1` in the monomial basis, double-double throughout.
pub(crate) fn psi_dd(points: &[(Dd, Dd)]) -> Vec<Dd> {
    let n = points.len() - 1;
    let mut x = Vec::new();
    let mut y = Vec::new();
    for (j, &(px, py)) in points.iter().enumerate() {
        let basis = bernstein_monomial_dd(n, j);
        ddp::add_scaled(&mut x, &basis, px);
        ddp::add_scaled(&mut y, &basis, py);
    }
    let mut psi = ddp::mul(&x, &x);
    let y2 = ddp::mul(&y, &y);
    for (i, v) in y2.into_iter().enumerate() {
        psi[i] = psi[i] + v;
    }
    psi[0] = psi[0] - Dd::ONE;
    psi
}

pub(crate) fn round_poly(dd: &[Dd]) -> Poly {
    Poly::new(dd.iter().map(|c| c.to_f64()).collect())
}

/// Expands the simplified signed radial error `psi(t) = x(t)^2 + y(t)^2 - 1`.
///
/// The expansion is carried out in double-double arithmetic: the optimal
/// psi has coefficients many orders of magnitude below the control-point
/// coordinates, and a plain f64 convolution would drown them in noise.
pub fn simplified_error_poly(poly: &ControlPolygon) -> Poly {
    let pts: Vec<(Dd, Dd)> = poly
        .points
        .iter()
        .map(|p| (Dd::from(p.x), Dd::from(p.y)))
        .collect();
    round_poly(&psi_dd(&pts))
}

/// Signed radial deviation `||p(t)|| - 1` of a point with simplified
/// error `psi(t)`, through the cancellation-free identity
/// `psi / (1 + sqrt(1 + psi))`.
pub fn radial_signed(psi_t: f64) -> f64 {
    psi_t / (1.0 + (1.0 + psi_t).sqrt())
}

pub(crate) fn radial_error_from_psi(psi: &Poly, samples: usize) -> f64 {
    let g = |t: f64| radial_signed(psi.eval(t)).abs();
    let mut best_i = 0;
    let mut best = f64::NEG_INFINITY;
    for i in 0..=samples {
        let t = -1.0 + 2.0 * i as f64 / samples as f64;
        let v = g(t);
        if v > best {
            best = v;
            best_i = i;
        }
    }
    // golden-section refinement on the bracketing cell pair
    let step = 2.0 / samples as f64;
    let mut a = (-1.0 + best_i as f64 * step - step).max(-1.0);
    let mut b = (-1.0 + best_i as f64 * step + step).min(1.0);
    let inv_phi = 0.5 * (5.0_f64.sqrt() - 1.0);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (g(x1), g(x2));
    while b - a > 1e-12 {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = g(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = g(x1);
        }
    }
    best.max(f1).max(f2)
}

/// The true radial error `max_t | ||p(t)|| - 1 |` over a dense grid with
/// local refinement.
pub fn radial_error(poly: &ControlPolygon, samples: usize) -> f64 {
    assert!(samples >= 64, "need at least 64 samples");
    let psi = simplified_error_poly(poly);
    radial_error_from_psi(&psi, samples)
}

/// A solved interpolant with its polygon, error polynomial and metrics.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InterpolantSolution {
    pub degree: u8,
    pub arc: ArcSpec,
    pub params: Params,
    pub polygon: ControlPolygon,
    pub psi: Poly,
    pub simplified_error: f64,
    pub radial_error: f64,
    /// Multiplicative constant in `psi(t) = mu * T_2n(zeta t)`.
    pub amplitude_mu: f64,
}

impl InterpolantSolution {
    /// Builds a solution record from explicit (not necessarily optimal)
    /// parameters; all derived quantities are recomputed.
    pub fn from_params(arc: ArcSpec, params: Params) -> InterpolantSolution {
        let ddp = match params {
            Params::Parabolic { d } => DdParams::Parabolic { d: Dd::from(d) },
            Params::Cubic { xi, eta } => DdParams::Cubic {
                xi: Dd::from(xi),
                eta: Dd::from(eta),
            },
            Params::Quartic {
                alpha, beta, gamma, ..
            } => DdParams::Quartic {
                alpha: Dd::from(alpha),
                beta: Dd::from(beta),
                gamma: Dd::from(gamma),
            },
        };
        Self::assemble(arc, params, &ddp)
    }

    pub(crate) fn assemble(
        arc: ArcSpec,
        params: Params,
        dd_params: &DdParams,
    ) -> InterpolantSolution {
        let c = Dd::from(arc.c);
        let s = arc.s_dd();
        let pts = polygon_points_dd(c, s, dd_params);
        let psi_c = psi_dd(&pts);
        let psi = round_poly(&psi_c);
        let degree = params.degree();
        // T_2n(0) = (-1)^n
        let t2n_at_0 = if degree.is_multiple_of(2) { 1.0 } else { -1.0 };
        let amplitude_mu = psi_c[0].to_f64() * t2n_at_0;
        let simplified_error = max_abs_on_interval(&psi, -1.0, 1.0).1;
        let radial = radial_error_from_psi(&psi, 4096);
        InterpolantSolution {
            degree,
            arc,
            params,
            polygon: build_polygon(&arc, &params),
            psi,
            simplified_error,
            radial_error: radial,
            amplitude_mu,
        }
    }
}
