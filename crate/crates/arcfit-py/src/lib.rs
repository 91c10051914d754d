//! Python bindings for the `arcfit` crate.
//!
//! Exposes the solver (`solve`), the reference tables (`table`), the
//! quartic root census (`roots`) and the verification pipeline
//! (`verify`) as a Python extension module named `arcfit_py`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_err(e: arcfit::ArcFitError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A solved interpolant: parameters, control points, error polynomial
/// and error metrics.
#[pyclass(frozen)]
struct Solution {
    inner: arcfit::InterpolantSolution,
}

#[pymethods]
impl Solution {
    #[getter]
    fn degree(&self) -> u8 {
        self.inner.degree
    }

    #[getter]
    fn phi(&self) -> f64 {
        self.inner.arc.phi
    }

    /// Free parameters: `[d]`, `[xi, eta]` or `[alpha, beta, gamma]`.
    #[getter]
    fn params(&self) -> Vec<f64> {
        self.inner.params.free()
    }

    #[getter]
    fn param_names(&self) -> Vec<&'static str> {
        match self.inner.params {
            arcfit::Params::Parabolic { .. } => vec!["d"],
            arcfit::Params::Cubic { .. } => vec!["xi", "eta"],
            arcfit::Params::Quartic { .. } => vec!["alpha", "beta", "gamma"],
        }
    }

    #[getter]
    fn control_points(&self) -> Vec<(f64, f64)> {
        self.inner
            .polygon
            .points
            .iter()
            .map(|p| (p.x, p.y))
            .collect()
    }

    /// Monomial coefficients of psi(t) = x(t)^2 + y(t)^2 - 1, ascending.
    #[getter]
    fn psi_coefficients(&self) -> Vec<f64> {
        self.inner.psi.coeffs().to_vec()
    }

    #[getter]
    fn simplified_error(&self) -> f64 {
        self.inner.simplified_error
    }

    #[getter]
    fn radial_error(&self) -> f64 {
        self.inner.radial_error
    }

    /// Multiplicative constant in psi(t) = mu * T_2n(zeta t).
    #[getter]
    fn amplitude(&self) -> f64 {
        self.inner.amplitude_mu
    }

    /// Evaluates the simplified error polynomial at `t` in [-1, 1].
    fn psi(&self, t: f64) -> f64 {
        self.inner.psi.eval(t)
    }

    /// Evaluates the interpolant at `t` in [-1, 1].
    fn point(&self, t: f64) -> PyResult<(f64, f64)> {
        let p = arcfit::bezier_point(&self.inner.polygon, t).map_err(value_err)?;
        Ok((p.x, p.y))
    }

    fn __repr__(&self) -> String {
        format!(
            "Solution(degree={}, phi={:.12}, simplified_error={:.5e})",
            self.inner.degree, self.inner.arc.phi, self.inner.simplified_error
        )
    }
}

/// Solves for the optimal degree-2/3/4 interpolant of the arc with
/// half-angle `phi` (radians, in [1e-3, pi/2]).
#[pyfunction]
fn solve(degree: u8, phi: f64) -> PyResult<Solution> {
    let arc = arcfit::ArcSpec::new(phi).map_err(value_err)?;
    let inner = arcfit::solve(&arc, degree).map_err(value_err)?;
    Ok(Solution { inner })
}

/// `(label, phi, params, simplified_error)`.
type TableRow = (String, f64, Vec<f64>, f64);

/// Reference table rows for a degree, as
/// `(label, phi, params, simplified_error)` tuples.
#[pyfunction]
fn table(degree: u8) -> PyResult<Vec<TableRow>> {
    Ok(arcfit::reproduce_table(degree)
        .map_err(value_err)?
        .into_iter()
        .map(|r| (r.phi_label, r.phi, r.params, r.simplified_error))
        .collect())
}

/// All real roots of the quartic resolvent, as
/// `(x, amplitude, optimal)` tuples in ascending `x`.
#[pyfunction]
fn roots(phi: f64) -> PyResult<Vec<(f64, f64, bool)>> {
    let arc = arcfit::ArcSpec::new(phi).map_err(value_err)?;
    let best = arcfit::quartic_intermediates(&arc).map_err(value_err)?.x;
    Ok(arcfit::quartic_all_real_roots(&arc)
        .into_iter()
        .map(|r| (r.x, r.amplitude, (r.x - best).abs() < 1e-9))
        .collect())
}

/// Runs the equioscillation check and the multi-start optimality probe;
/// returns `(pass, magnitude_spread, probe_best_found)`.
#[pyfunction]
#[pyo3(signature = (degree, phi, trials = 100, seed = 0xA5C3))]
fn verify(degree: u8, phi: f64, trials: usize, seed: u64) -> PyResult<(bool, f64, f64)> {
    let arc = arcfit::ArcSpec::new(phi).map_err(value_err)?;
    let sol = arcfit::solve(&arc, degree).map_err(value_err)?;
    let eq = arcfit::check_equioscillation(&sol, 1e-7);
    let cfg = arcfit::ProbeConfig {
        trials,
        seed,
        ..Default::default()
    };
    let probe = arcfit::brute_force_minimax(&arc, degree, &sol.params, &cfg);
    Ok((
        eq.verdict && probe.verdict,
        eq.magnitude_spread,
        probe.best_found,
    ))
}

#[pymodule]
fn arcfit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Solution>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    m.add_function(wrap_pyfunction!(roots, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
