//! Command-line surface: angle parsing, serialization, tables, curves.

use serde::{Deserialize, Serialize};

use crate::arc::{radial_signed, ArcSpec, InterpolantSolution, Params};
use crate::error::{ArcFitError, Result};
use crate::solvers::{quartic_all_real_roots, solve_quartic};
use crate::verify::{
    brute_force_minimax, check_equioscillation, reproduce_table, solve, EquioscillationReport,
    OptimalityProbe, ProbeConfig,
};

/// Parses a half-angle expression: a radian literal, `pi/k`, or `m*pi/k`.
pub fn parse_phi(expr: &str) -> Result<f64> {
    let s = expr.trim();
    let bad = || ArcFitError::PhiParse(expr.to_string());
    if let Some(idx) = s.find("pi") {
        let m: i64 = match s[..idx].trim().strip_suffix('*') {
            Some(m) => m.trim().parse().map_err(|_| bad())?,
            None if s[..idx].trim().is_empty() => 1,
            None => return Err(bad()),
        };
        let rest = s[idx + 2..].trim();
        let k: i64 = match rest.strip_prefix('/') {
            Some(k) => k.trim().parse().map_err(|_| bad())?,
            None if rest.is_empty() => 1,
            None => return Err(bad()),
        };
        if m <= 0 || k <= 0 {
            return Err(bad());
        }
        Ok(m as f64 * std::f64::consts::PI / k as f64)
    } else {
        s.parse::<f64>().map_err(|_| bad())
    }
}

/// Stable JSON shape shared by all commands that emit a solution.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolutionJson {
    pub degree: u8,
    pub phi: f64,
    pub params: Params,
    pub control_points: Vec<[f64; 2]>,
    pub psi_coefficients: Vec<f64>,
    pub amplitude_mu: f64,
    pub simplified_error: f64,
    pub radial_error: f64,
}

impl From<&InterpolantSolution> for SolutionJson {
    fn from(sol: &InterpolantSolution) -> SolutionJson {
        SolutionJson {
            degree: sol.degree,
            phi: sol.arc.phi,
            params: sol.params,
            control_points: sol.polygon.points.iter().map(|p| [p.x, p.y]).collect(),
            psi_coefficients: sol.psi.coeffs().to_vec(),
            amplitude_mu: sol.amplitude_mu,
            simplified_error: sol.simplified_error,
            radial_error: sol.radial_error,
        }
    }
}

fn param_names(degree: u8) -> &'static [&'static str] {
    match degree {
        2 => &["d"],
        3 => &["xi", "eta"],
        _ => &["alpha", "beta", "gamma"],
    }
}

pub fn format_solution_text(sol: &InterpolantSolution) -> String {
    let mut out = String::new();
    out.push_str(&format!("degree {}  phi {:.12}\n", sol.degree, sol.arc.phi));
    for (name, v) in param_names(sol.degree).iter().zip(sol.params.free()) {
        out.push_str(&format!("{name} = {v:.5}\n"));
    }
    out.push_str(&format!(
        "simplified error = {:.5e}\n",
        sol.simplified_error
    ));
    out.push_str(&format!("radial error     = {:.5e}\n", sol.radial_error));
    out.push_str("control points:\n");
    for p in &sol.polygon.points {
        out.push_str(&format!("  ({:.5}, {:.5})\n", p.x, p.y));
    }
    out
}

/// Six-row table in the reference ordering: params to 5 decimals,
/// errors to 6 significant digits.
pub fn format_table(degree: u8) -> Result<String> {
    let rows = reproduce_table(degree)?;
    let mut out = String::new();
    let header: Vec<&str> = std::iter::once("phi")
        .chain(param_names(degree).iter().copied())
        .chain(std::iter::once("simplified error"))
        .collect();
    out.push_str(&header.join("  "));
    out.push('\n');
    for row in rows {
        out.push_str(&format!("{:<6}", row.phi_label));
        for p in &row.params {
            out.push_str(&format!("  {p:.5}"));
        }
        out.push_str(&format!("  {:.5e}\n", row.simplified_error));
    }
    Ok(out)
}

/// CSV error curve: columns `t, psi, radial_signed`.
pub fn error_curve_csv(sol: &InterpolantSolution, samples: usize) -> String {
    let mut out = String::from("t,psi,radial_signed\n");
    for i in 0..=samples {
        let t = -1.0 + 2.0 * i as f64 / samples as f64;
        let psi = sol.psi.eval(t);
        out.push_str(&format!("{t:e},{psi:e},{:e}\n", radial_signed(psi)));
    }
    out
}

/// Fixed-style SVG of the error curve, normalized to the amplitude,
/// with axis lines and marked extrema. Byte-deterministic.
pub fn error_curve_svg(sol: &InterpolantSolution, samples: usize) -> String {
    const W: f64 = 800.0;
    const H: f64 = 400.0;
    const MX: f64 = 40.0;
    const MY: f64 = 20.0;
    let amp = sol.amplitude_mu.abs();
    let tx = |t: f64| MX + (t + 1.0) / 2.0 * (W - 2.0 * MX);
    let ty = |v: f64| H / 2.0 - v / amp * (H / 2.0 - MY) / 1.05;
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {W} {H}\">\n"
    ));
    svg.push_str(&format!(
        "  <rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>\n"
    ));
    svg.push_str(&format!(
        "  <line x1=\"{MX}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#888\" stroke-width=\"1\"/>\n",
        H / 2.0,
        W - MX,
        H / 2.0
    ));
    svg.push_str(&format!(
        "  <line x1=\"{}\" y1=\"{MY}\" x2=\"{}\" y2=\"{}\" stroke=\"#888\" stroke-width=\"1\"/>\n",
        W / 2.0,
        W / 2.0,
        H - MY
    ));
    let mut pts = String::new();
    for i in 0..=samples {
        let t = -1.0 + 2.0 * i as f64 / samples as f64;
        if i > 0 {
            pts.push(' ');
        }
        pts.push_str(&format!("{:.3},{:.3}", tx(t), ty(sol.psi.eval(t))));
    }
    svg.push_str(&format!(
        "  <polyline points=\"{pts}\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n"
    ));
    for r in sol.psi.derivative().isolate_roots(-1.0, 1.0, 4096) {
        svg.push_str(&format!(
            "  <circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"3\" fill=\"#d62728\"/>\n",
            tx(r.root),
            ty(sol.psi.eval(r.root))
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

/// Verification report emitted by `arcfit verify`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub degree: u8,
    pub phi: f64,
    pub equioscillation: EquioscillationReport,
    pub probe: OptimalityProbe,
    pub diagnostics: Vec<String>,
    pub pass: bool,
}

pub const EQUIOSCILLATION_TOL: f64 = 1e-7;

/// Solves and verifies. `inject_line_segment` (degree 3 only) replaces
/// the solved parameters with the degenerate `xi = c` system solution to
/// exercise the failure path.
pub fn run_verify(
    arc: &ArcSpec,
    degree: u8,
    cfg: &ProbeConfig,
    inject_line_segment: bool,
) -> Result<VerifyReport> {
    let sol = if inject_line_segment && degree == 3 {
        let eta = -(3.0 + 2.0 * 3.0_f64.sqrt()) * arc.s;
        InterpolantSolution::from_params(*arc, Params::Cubic { xi: arc.c, eta })
    } else {
        solve(arc, degree)?
    };
    let mut diagnostics = Vec::new();
    if let Params::Cubic { xi, .. } = sol.params {
        if (xi - arc.c).abs() < 1e-9 {
            diagnostics.push("degenerate interpolant: x(t) is constant (line segment)".to_string());
        }
    }
    let equi = check_equioscillation(&sol, EQUIOSCILLATION_TOL);
    let probe = brute_force_minimax(arc, degree, &sol.params, cfg);
    let pass = equi.verdict && probe.verdict && diagnostics.is_empty();
    Ok(VerifyReport {
        degree,
        phi: arc.phi,
        equioscillation: equi,
        probe,
        diagnostics,
        pass,
    })
}

pub fn format_verify_text(rep: &VerifyReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("degree {}  phi {:.12}\n", rep.degree, rep.phi));
    out.push_str(&format!(
        "equioscillation: count={} alternates={} spread={:.3e} -> {}\n",
        rep.equioscillation.count,
        rep.equioscillation.alternates,
        rep.equioscillation.magnitude_spread,
        if rep.equioscillation.verdict {
            "ok"
        } else {
            "FAIL"
        }
    ));
    out.push_str(&format!(
        "optimality probe: best={:.6e} reference={:.6e} ({} trials) -> {}\n",
        rep.probe.best_found,
        rep.probe.reference,
        rep.probe.trials,
        if rep.probe.verdict { "ok" } else { "FAIL" }
    ));
    for d in &rep.diagnostics {
        out.push_str(&format!("diagnostic: {d}\n"));
    }
    out.push_str(if rep.pass { "PASS\n" } else { "FAIL\n" });
    out
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootsReport {
    pub phi: f64,
    pub roots: Vec<RootEntry>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct RootEntry {
    pub x: f64,
    pub amplitude: f64,
    pub optimal: bool,
}

/// All real resolvent roots with induced amplitudes; the root used by
/// the best interpolant is flagged.
pub fn roots_report(arc: &ArcSpec) -> Result<RootsReport> {
    let best = solve_quartic(arc)?;
    let Params::Quartic { x: best_x, .. } = best.params else {
        unreachable!()
    };
    let roots = quartic_all_real_roots(arc)
        .into_iter()
        .map(|r| RootEntry {
            x: r.x,
            amplitude: r.amplitude,
            optimal: (r.x - best_x).abs() < 1e-9,
        })
        .collect();
    Ok(RootsReport {
        phi: arc.phi,
        roots,
    })
}

pub fn format_roots_text(rep: &RootsReport) -> String {
    let mut out = format!("phi {:.12}: {} real roots\n", rep.phi, rep.roots.len());
    for r in &rep.roots {
        out.push_str(&format!(
            "  x = {:+.8}  amplitude = {:.5e}{}\n",
            r.x,
            r.amplitude,
            if r.optimal { "  (optimal)" } else { "" }
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn phi_expressions() {
        assert!((parse_phi("pi/2").unwrap() - PI / 2.0).abs() < 1e-16);
        assert!((parse_phi("3*pi/8").unwrap() - 3.0 * PI / 8.0).abs() < 1e-16);
        assert!((parse_phi("0.7853981633974483").unwrap() - PI / 4.0).abs() < 1e-16);
        assert!(parse_phi("pie").is_err());
        assert!(parse_phi("pi/0").is_err());
        assert!(parse_phi("-1*pi/2").is_err());
        assert!(parse_phi("").is_err());
    }

    #[test]
    fn json_round_trip_is_lossless() {
        let arc = ArcSpec::new(PI / 3.0).unwrap();
        let sol = solve(&arc, 4).unwrap();
        let j = SolutionJson::from(&sol);
        let text = serde_json::to_string(&j).unwrap();
        let back: SolutionJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.simplified_error, j.simplified_error);
        assert_eq!(back.psi_coefficients, j.psi_coefficients);
        assert_eq!(back.control_points, j.control_points);
    }

    #[test]
    fn table_text_matches_reference_rows() {
        let t = format_table(2).unwrap();
        assert!(t.contains("pi/12   1.03427  2.00378e-4"), "table was:\n{t}");
        let t = format_table(3).unwrap();
        assert!(
            t.contains("pi/6    1.04465  0.19043  1.22221e-5"),
            "table was:\n{t}"
        );
        let t = format_table(4).unwrap();
        assert!(
            t.contains("pi/4    0.99193  0.42228  1.10839  5.94378e-7"),
            "table was:\n{t}"
        );
    }

    #[test]
    fn error_curve_endpoints_are_zero() {
        let arc = ArcSpec::new(PI / 5.0).unwrap();
        let sol = solve(&arc, 2).unwrap();
        let csv = error_curve_csv(&sol, 64);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 66);
        for line in [lines[1], lines[65]] {
            let psi: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
            assert!(psi.abs() < 1e-12);
        }
    }

    #[test]
    fn svg_marks_expected_extrema() {
        let arc = ArcSpec::new(PI / 2.0).unwrap();
        let sol = solve(&arc, 4).unwrap();
        let svg = error_curve_svg(&sol, 256);
        assert_eq!(svg.matches("<circle").count(), 7);
        assert!(svg.starts_with("<svg"));
        // deterministic output
        assert_eq!(svg, error_curve_svg(&sol, 256));
    }

    #[test]
    fn injected_line_segment_fails_verification() {
        let arc = ArcSpec::new(PI / 4.0).unwrap();
        let cfg = ProbeConfig {
            trials: 5,
            ..ProbeConfig::default()
        };
        let rep = run_verify(&arc, 3, &cfg, true).unwrap();
        assert!(!rep.pass);
        assert!(rep.diagnostics.iter().any(|d| d.contains("line segment")));
    }
}
