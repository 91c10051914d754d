//! Chebyshev evaluation and the alternation constants behind each solver.
//!
//! The optimal simplified error function of a degree-n G0 interpolant is
//! `mu * T_{2n}(zeta * t)` with `zeta = cos(pi/(4n))`; its zeros in (0,1)
//! are `cos((2i+1)pi/(4n)) / cos(pi/(4n))`, i = 1..n-1. (Some sources
//! quote the scaling as `cos(pi/(2n))`; that convention does not match
//! the closed-form zeros sqrt(2)-1, {2-sqrt(3), sqrt(3)-1}, ... which are
//! the authoritative values, so we use the 4n convention throughout.)

use std::sync::OnceLock;

use crate::dd::Dd;
use crate::error::{ArcFitError, Result};

/// Evaluates the Chebyshev polynomial `T_m(t)` by the three-term recurrence.
pub fn chebyshev_eval(m: u32, t: f64) -> f64 {
    match m {
        0 => 1.0,
        1 => t,
        _ => {
            let (mut prev, mut cur) = (1.0, t);
            for _ in 2..=m {
                let next = 2.0 * t * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Degree-specific alternation constants: the Chebyshev scaling factor,
/// the positive zeros of `T_{2n}(zeta t)`, and (for n = 4) the elementary
/// symmetric functions of `(1 - u_j^2)`.
#[derive(Clone, Debug)]
pub struct AlternationData {
    pub n: u8,
    /// Scaling factor `cos(pi/(4n))`.
    pub zeta: f64,
    /// The n-1 zeros of `t -> T_{2n}(zeta t)` in (0, 1), ascending.
    pub zeros_pos: Vec<f64>,
    /// For n = 4: `(sigma_1, sigma_2, sigma_3)`, elementary symmetric
    /// functions of `(1-u_1^2, 1-u_2^2, 1-u_3^2)`.
    pub sigma: Option<[f64; 3]>,
}

/// Double-double counterpart used inside the solvers.
#[derive(Clone, Debug)]
pub(crate) struct DdAlternation {
    pub zeta: Dd,
    pub zeros: Vec<Dd>,
    /// sigma_1..sigma_3 for n = 4, zeros elsewhere.
    pub sigma: [Dd; 3],
    /// u_1^2 u_2^2 u_3^2 for n = 4.
    pub u_prod_sq: Dd,
}

fn dd_alternation(n: u8) -> DdAlternation {
    let half = Dd::from(0.5);
    let sqrt2 = Dd::from(2.0).sqrt();
    let sqrt3 = Dd::from(3.0).sqrt();
    // cos(pi/8), cos(pi/16), cos(pi/12) via half-angle chains from
    // cos(pi/4) = sqrt(2)/2 and cos(pi/6) = sqrt(3)/2.
    let cos_pi_8 = ((Dd::ONE + sqrt2 * half) * half).sqrt();
    match n {
        2 => DdAlternation {
            zeta: cos_pi_8,
            zeros: vec![sqrt2 - Dd::ONE],
            sigma: [Dd::ZERO; 3],
            u_prod_sq: Dd::ZERO,
        },
        3 => {
            let cos_pi_12 = ((Dd::ONE + sqrt3 * half) * half).sqrt();
            DdAlternation {
                zeta: cos_pi_12,
                zeros: vec![Dd::from(2.0) - sqrt3, sqrt3 - Dd::ONE],
                sigma: [Dd::ZERO; 3],
                u_prod_sq: Dd::ZERO,
            }
        }
        4 => {
            let cos_pi_16 = ((Dd::ONE + cos_pi_8) * half).sqrt();
            let r = (Dd::from(2.0) + sqrt2).sqrt(); // sqrt(2 + sqrt 2)
            let zeros = vec![
                (Dd::from(2.0) * (Dd::from(2.0) + sqrt2)).sqrt() - Dd::ONE - sqrt2,
                Dd::ONE + sqrt2 - r,
                r - Dd::ONE,
            ];
            let q: Vec<Dd> = zeros.iter().map(|&z| Dd::ONE - z * z).collect();
            let sigma = [
                q[0] + q[1] + q[2],
                q[0] * q[1] + q[0] * q[2] + q[1] * q[2],
                q[0] * q[1] * q[2],
            ];
            let u_prod_sq = zeros.iter().fold(Dd::ONE, |acc, &z| acc * z * z);
            DdAlternation {
                zeta: cos_pi_16,
                zeros,
                sigma,
                u_prod_sq,
            }
        }
        _ => unreachable!("validated by alternation_data"),
    }
}

pub(crate) fn dd_alternation_cached(n: u8) -> &'static DdAlternation {
    static CACHE: [OnceLock<DdAlternation>; 3] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    CACHE[(n - 2) as usize].get_or_init(|| dd_alternation(n))
}

/// Returns the alternation constants for degree `n` in {2, 3, 4}.
pub fn alternation_data(n: u8) -> Result<AlternationData> {
    if !(2..=4).contains(&n) {
        return Err(ArcFitError::InvalidDegree(n));
    }
    let dd = dd_alternation_cached(n);
    Ok(AlternationData {
        n,
        zeta: dd.zeta.to_f64(),
        zeros_pos: dd.zeros.iter().map(|z| z.to_f64()).collect(),
        sigma: (n == 4).then(|| {
            [
                dd.sigma[0].to_f64(),
                dd.sigma[1].to_f64(),
                dd.sigma[2].to_f64(),
            ]
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn chebyshev_values_at_zero_and_zeros() {
        assert_eq!(chebyshev_eval(8, 0.0), 1.0);
        assert_eq!(chebyshev_eval(6, 0.0), -1.0);
        assert!(chebyshev_eval(4, (PI / 8.0).cos()).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_degree() {
        assert!(alternation_data(5).is_err());
        assert!(alternation_data(1).is_err());
    }

    #[test]
    fn closed_form_zeros() {
        let d2 = alternation_data(2).unwrap();
        assert!((d2.zeros_pos[0] - (2.0_f64.sqrt() - 1.0)).abs() < 1e-15);

        let d3 = alternation_data(3).unwrap();
        assert!((d3.zeros_pos[0] - (2.0 - 3.0_f64.sqrt())).abs() < 1e-15);
        assert!((d3.zeros_pos[1] - (3.0_f64.sqrt() - 1.0)).abs() < 1e-15);

        let d4 = alternation_data(4).unwrap();
        let expect = [0.198912, 0.566454, 0.847759];
        for (z, e) in d4.zeros_pos.iter().zip(expect) {
            assert!((z - e).abs() < 1e-6, "zero {z} vs {e}");
        }
    }

    #[test]
    fn zeros_are_scaled_chebyshev_zeros() {
        for n in 2..=4u8 {
            let d = alternation_data(n).unwrap();
            assert!((d.zeta - (PI / (4.0 * n as f64)).cos()).abs() < 1e-15);
            let mut prev = 0.0;
            for (i, &z) in d.zeros_pos.iter().enumerate() {
                assert!(z > prev && z < 1.0, "zeros ordered in (0,1)");
                prev = z;
                assert!(chebyshev_eval(2 * n as u32, d.zeta * z).abs() < 1e-14);
                let closed = ((2 * (i + 1) + 1) as f64 * PI / (4.0 * n as f64)).cos() / d.zeta;
                // zeros_pos is ascending, the cosine formula descending
                let k = d.zeros_pos.len() - 1 - i;
                assert!((d.zeros_pos[k] - closed).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn sigma_matches_reference_and_identity() {
        let d4 = alternation_data(4).unwrap();
        let s = d4.sigma.unwrap();
        assert!((s[0] - 1.92087).abs() < 1e-4);
        assert!((s[1] - 1.11348).abs() < 1e-4);
        assert!((s[2] - 0.18349).abs() < 1e-4);
        // 1 - s1 + s2 - s3 = u1^2 u2^2 u3^2
        let prod: f64 = d4.zeros_pos.iter().map(|z| z * z).product();
        assert!((1.0 - s[0] + s[1] - s[2] - prod).abs() < 1e-14);
        // AM-GM sanity guard
        assert!(s[0] * s[1] >= 9.0 * s[2]);
    }

    #[test]
    fn scaled_chebyshev_has_2n_minus_1_alternating_extrema() {
        for n in 2..=4u32 {
            let zeta = (PI / (4.0 * n as f64)).cos();
            // locate extrema by sign changes of the discrete derivative
            let m = 20000;
            let mut extrema = Vec::new();
            let mut prev_slope = 0.0f64;
            for i in 0..m {
                let t0 = -1.0 + 2.0 * i as f64 / m as f64;
                let t1 = -1.0 + 2.0 * (i + 1) as f64 / m as f64;
                let slope = chebyshev_eval(2 * n, zeta * t1) - chebyshev_eval(2 * n, zeta * t0);
                if prev_slope != 0.0 && slope.signum() != prev_slope.signum() {
                    extrema.push(chebyshev_eval(2 * n, zeta * t0));
                }
                prev_slope = slope;
            }
            assert_eq!(extrema.len(), (2 * n - 1) as usize);
            for w in extrema.windows(2) {
                assert!(w[0].abs() <= 1.0 + 1e-12 && w[0].signum() != w[1].signum());
            }
        }
    }
}
