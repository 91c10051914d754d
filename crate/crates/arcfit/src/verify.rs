//! Independent checks that a claimed solution is the minimax optimum:
//! equioscillation structure, multi-start local optimality probing,
//! table reproduction, and the root census of the quartic resolvent.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arc::{build_polygon, simplified_error_poly, ArcSpec, InterpolantSolution, Params};
use crate::chebyshev::alternation_data;
use crate::error::{ArcFitError, Result};
use crate::poly::Poly;
use crate::solvers::{quartic_all_real_roots, solve_cubic, solve_parabolic, solve_quartic};

/// Equioscillation structure of an error polynomial: the interior
/// extrema, whether their signs alternate, and how far their magnitudes
/// spread around the common ripple height.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EquioscillationReport {
    /// Interior extrema `(t, psi(t))`, ascending in t.
    pub extrema: Vec<(f64, f64)>,
    pub count: usize,
    pub alternates: bool,
    /// Max relative deviation of |extremum| from the mean magnitude.
    pub magnitude_spread: f64,
    /// `|psi(+-zeta_i)| / amplitude` at the scaled Chebyshev zeros.
    pub zero_residuals: Vec<f64>,
    pub verdict: bool,
}

/// Checks that `psi` has exactly `2n - 1` interior extrema of equal
/// magnitude and alternating sign, and vanishes at the scaled Chebyshev
/// zeros. `tol` bounds both the magnitude spread and the normalized
/// zero residuals for the verdict.
pub fn check_equioscillation(sol: &InterpolantSolution, tol: f64) -> EquioscillationReport {
    let extrema: Vec<(f64, f64)> = sol
        .psi
        .derivative()
        .isolate_roots(-1.0, 1.0, 4096)
        .iter()
        .map(|r| (r.root, sol.psi.eval(r.root)))
        .collect();
    let count = extrema.len();
    let alternates = count > 1
        && extrema
            .windows(2)
            .all(|w| w[0].1.signum() != w[1].1.signum());
    let mean: f64 = extrema.iter().map(|e| e.1.abs()).sum::<f64>() / count.max(1) as f64;
    let magnitude_spread = extrema
        .iter()
        .map(|e| (e.1.abs() - mean).abs() / mean)
        .fold(0.0, f64::max);
    let amplitude = sol.amplitude_mu.abs();
    let zero_residuals: Vec<f64> = alternation_data(sol.degree)
        .map(|d| {
            d.zeros_pos
                .iter()
                .flat_map(|&z| [z, -z])
                .map(|z| sol.psi.eval(z).abs() / amplitude)
                .collect()
        })
        .unwrap_or_default();
    let expected = 2 * sol.degree as usize - 1;
    let verdict = count == expected
        && alternates
        && magnitude_spread <= tol
        && zero_residuals.iter().all(|&r| r <= tol);
    EquioscillationReport {
        extrema,
        count,
        alternates,
        magnitude_spread,
        zero_residuals,
        verdict,
    }
}

/// Configuration of the multi-start optimality probe.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ProbeConfig {
    pub trials: usize,
    /// Relative size of the random start perturbations.
    pub step: f64,
    pub seed: u64,
    /// Grid density for the sampled max inside the search.
    pub samples: usize,
    pub max_iters: usize,
}

impl Default for ProbeConfig {
    fn default() -> ProbeConfig {
        ProbeConfig {
            trials: 100,
            step: 1e-3,
            seed: 0xA5C3,
            samples: 512,
            max_iters: 200,
        }
    }
}

/// Outcome of the optimality probe.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct OptimalityProbe {
    pub trials: usize,
    pub step: f64,
    pub seed: u64,
    /// Smallest max-error any local search reached.
    pub best_found: f64,
    /// Max-error of the seed parameters under the same estimator.
    pub reference: f64,
    pub verdict: bool,
}

/// max |psi| over [-1, 1]: grid scan plus golden-section refinement of
/// every sampled local maximum. Exhaustive for the degrees at hand.
fn max_abs_sampled(psi: &Poly, samples: usize) -> f64 {
    let g = |t: f64| psi.eval(t).abs();
    let vals: Vec<f64> = (0..=samples)
        .map(|i| g(-1.0 + 2.0 * i as f64 / samples as f64))
        .collect();
    let step = 2.0 / samples as f64;
    let inv_phi = 0.5 * (5.0_f64.sqrt() - 1.0);
    let mut best = 0.0f64;
    for i in 0..=samples {
        let local_max =
            (i == 0 || vals[i] >= vals[i - 1]) && (i == samples || vals[i] >= vals[i + 1]);
        if !local_max {
            continue;
        }
        best = best.max(vals[i]);
        let mut a = (-1.0 + i as f64 * step - step).max(-1.0);
        let mut b = (-1.0 + i as f64 * step + step).min(1.0);
        let mut x1 = b - inv_phi * (b - a);
        let mut x2 = a + inv_phi * (b - a);
        let (mut f1, mut f2) = (g(x1), g(x2));
        while b - a > 1e-13 {
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
        best = best.max(f1).max(f2);
    }
    best
}

fn probe_objective(arc: &ArcSpec, degree: u8, v: &[f64], samples: usize) -> f64 {
    let params = Params::from_free(degree, v).expect("dimension fixed by caller");
    let psi = simplified_error_poly(&build_polygon(arc, &params));
    max_abs_sampled(&psi, samples)
}

/// Plain Nelder-Mead in 1-3 dimensions; returns the best point and value.
fn nelder_mead<F: Fn(&[f64]) -> f64>(
    f: &F,
    start: &[f64],
    init_scale: f64,
    max_iters: usize,
) -> (Vec<f64>, f64) {
    let n = start.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((start.to_vec(), f(start)));
    for i in 0..n {
        let mut p = start.to_vec();
        p[i] += init_scale * p[i].abs().max(0.1);
        let fp = f(&p);
        simplex.push((p, fp));
    }
    for _ in 0..max_iters {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let diam: f64 = (0..n)
            .map(|i| (simplex[n].0[i] - simplex[0].0[i]).abs())
            .fold(0.0, f64::max);
        if diam < 1e-13 {
            break;
        }
        let centroid: Vec<f64> = (0..n)
            .map(|i| simplex[..n].iter().map(|p| p.0[i]).sum::<f64>() / n as f64)
            .collect();
        let worst = simplex[n].clone();
        let at = |coef: f64| -> Vec<f64> {
            (0..n)
                .map(|i| centroid[i] + coef * (centroid[i] - worst.0[i]))
                .collect()
        };
        let refl = at(1.0);
        let f_refl = f(&refl);
        if f_refl < simplex[0].1 {
            let exp = at(2.0);
            let f_exp = f(&exp);
            simplex[n] = if f_exp < f_refl {
                (exp, f_exp)
            } else {
                (refl, f_refl)
            };
        } else if f_refl < simplex[n - 1].1 {
            simplex[n] = (refl, f_refl);
        } else {
            let contr = if f_refl < worst.1 { at(0.5) } else { at(-0.5) };
            let f_contr = f(&contr);
            if f_contr < worst.1.min(f_refl) {
                simplex[n] = (contr, f_contr);
            } else {
                // shrink toward the best vertex
                let best = simplex[0].0.clone();
                for p in simplex.iter_mut().skip(1) {
                    for (pi, bi) in p.0.iter_mut().zip(&best) {
                        *pi = 0.5 * (*pi + bi);
                    }
                    p.1 = f(&p.0);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    (simplex[0].0.clone(), simplex[0].1)
}

/// Multi-start local minimization of `max |psi|` over the free
/// parameters, seeded at the solved values. A local witness for the
/// optimality theorems; the randomized starts add confidence but do not
/// make it a global search.
pub fn brute_force_minimax(
    arc: &ArcSpec,
    degree: u8,
    seed_params: &Params,
    cfg: &ProbeConfig,
) -> OptimalityProbe {
    let start = seed_params.free();
    let obj = |v: &[f64]| probe_objective(arc, degree, v, cfg.samples);
    let reference = obj(&start);
    let (_, mut best_found) = nelder_mead(&obj, &start, 1e-4, cfg.max_iters);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.trials {
        let perturbed: Vec<f64> = start
            .iter()
            .map(|&x| x * (1.0 + cfg.step * rng.random_range(-1.0..1.0)))
            .collect();
        let (_, fv) = nelder_mead(&obj, &perturbed, cfg.step, cfg.max_iters);
        best_found = best_found.min(fv);
    }
    OptimalityProbe {
        trials: cfg.trials,
        step: cfg.step,
        seed: cfg.seed,
        best_found,
        reference,
        verdict: best_found >= reference - 1e-12,
    }
}

/// The half-angles tabulated in the reference tables, with print labels.
pub const TABLE_ANGLES: [(&str, f64); 6] = [
    ("pi/2", std::f64::consts::PI / 2.0),
    ("pi/3", std::f64::consts::PI / 3.0),
    ("pi/4", std::f64::consts::PI / 4.0),
    ("pi/6", std::f64::consts::PI / 6.0),
    ("pi/8", std::f64::consts::PI / 8.0),
    ("pi/12", std::f64::consts::PI / 12.0),
];

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableRow {
    pub phi_label: String,
    pub phi: f64,
    /// d | (xi, eta) | (alpha, beta, gamma), by degree.
    pub params: Vec<f64>,
    pub simplified_error: f64,
}

pub fn solve(arc: &ArcSpec, degree: u8) -> Result<InterpolantSolution> {
    match degree {
        2 => Ok(solve_parabolic(arc)),
        3 => solve_cubic(arc),
        4 => solve_quartic(arc),
        _ => Err(ArcFitError::InvalidDegree(degree)),
    }
}

/// Solves at the six tabulated angles and returns rows in table order.
pub fn reproduce_table(degree: u8) -> Result<Vec<TableRow>> {
    TABLE_ANGLES
        .iter()
        .map(|&(label, phi)| {
            let sol = solve(&ArcSpec::new(phi)?, degree)?;
            Ok(TableRow {
                phi_label: label.to_string(),
                phi,
                params: sol.params.free(),
                simplified_error: sol.simplified_error,
            })
        })
        .collect()
}

/// Number of real zeros of the quartic resolvent at each angle of a
/// uniform grid over `[phi_lo, phi_hi]`.
pub fn root_census(phi_lo: f64, phi_hi: f64, grid: usize) -> Result<Vec<(f64, usize)>> {
    if phi_lo >= phi_hi || grid < 1 {
        return Err(ArcFitError::InvalidPhi(phi_lo));
    }
    (0..=grid)
        .map(|i| {
            let phi = phi_lo + (phi_hi - phi_lo) * i as f64 / grid as f64;
            Ok((phi, quartic_all_real_roots(&ArcSpec::new(phi)?).len()))
        })
        .collect()
}

/// Locates the angle where the root count of the resolvent drops from
/// six to four, by bisection on the count.
pub fn census_threshold(mut phi_lo: f64, mut phi_hi: f64) -> Result<f64> {
    let count =
        |phi: f64| -> Result<usize> { Ok(quartic_all_real_roots(&ArcSpec::new(phi)?).len()) };
    if count(phi_lo)? < 6 || count(phi_hi)? > 4 {
        return Err(ArcFitError::InvalidPhi(phi_lo));
    }
    while phi_hi - phi_lo > 1e-4 {
        let mid = 0.5 * (phi_lo + phi_hi);
        if count(mid)? >= 6 {
            phi_lo = mid;
        } else {
            phi_hi = mid;
        }
    }
    Ok(0.5 * (phi_lo + phi_hi))
}
