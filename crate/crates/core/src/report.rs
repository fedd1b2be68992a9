//! Report emission: TOML for machines (17 significant digits), aligned
//! tables for people (6 significant digits), CSV for sweeps.

use std::fmt::Write as _;
use std::io;

use crate::correspondence::{Bound, CheckRow, ResidueTable, RowStatus, SweepReport, SweepRow, VerificationReport};
use crate::theta::C64;

/// `x` with 17 significant digits, as a TOML float.
pub fn num17(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

/// `x` with 6 significant digits.
pub fn num6(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.5e}")
    } else {
        format!("{x}")
    }
}

fn complex6(z: C64) -> String {
    let im = num6(z.im.abs());
    format!("{} {} {im}i", num6(z.re), if z.im.is_sign_negative() { '-' } else { '+' })
}

fn complex17(z: C64) -> String {
    format!("[{}, {}]", num17(z.re), num17(z.im))
}

fn quoted(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

fn bound_name(b: Bound) -> &'static str {
    match b {
        Bound::Upper => "upper",
        Bound::Lower => "lower",
    }
}

fn push_checks(out: &mut String, checks: &[CheckRow]) {
    for c in checks {
        out.push_str("\n[[checks]]\n");
        let _ = writeln!(out, "name = {}", quoted(&c.name));
        let _ = writeln!(out, "max_residual = {}", num17(c.max_residual));
        let _ = writeln!(out, "tolerance = {}", num17(c.tolerance));
        let _ = writeln!(out, "bound = \"{}\"", bound_name(c.bound));
        let _ = writeln!(out, "pass = {}", c.pass);
        let _ = writeln!(out, "evaluated = {}", c.evaluated);
        let _ = writeln!(out, "skipped = {}", c.skipped);
        let _ = writeln!(out, "note = {}", quoted(&c.note));
    }
}

/// Machine-readable report. Every parameter needed to reproduce the run is echoed.
pub fn report_toml(command: &str, report: &VerificationReport, tolerances: &[(String, f64)]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "command = {}", quoted(command));
    let _ = writeln!(out, "all_pass = {}", report.all_pass());
    if let Some(e) = report.e_extracted {
        let _ = writeln!(out, "e_extracted = {}", complex17(e));
    }
    if let Some(e) = report.e_from_xs {
        let _ = writeln!(out, "e_from_xs = {}", complex17(e));
    }
    if let Some(c) = report.echo.negative_control {
        let _ = writeln!(out, "negative_control = {}", quoted(c.name()));
    }

    let mp = &report.echo.mp;
    out.push_str("\n[modular]\n");
    let _ = writeln!(out, "r = {}", num17(mp.r()));
    let _ = writeln!(out, "a_plus = {}", num17(mp.a_plus()));
    let _ = writeln!(out, "a_minus = {}", num17(mp.a_minus()));
    out.push_str("\n[modular.truncation]\n");
    let _ = writeln!(out, "rel_tol = {}", num17(mp.policy().rel_tol));
    let _ = writeln!(out, "max_terms = {}", mp.policy().max_terms);

    if let Some(c) = &report.echo.couplings {
        out.push_str("\n[couplings]\n");
        let g: Vec<String> = c.gamma.iter().map(|g| complex17(*g)).collect();
        let _ = writeln!(out, "gamma = [{}]", g.join(", "));
        let _ = writeln!(out, "phi1 = {}", complex17(c.phi1));
    }
    if let Some(g) = &report.echo.grid {
        out.push_str("\n[grid]\n");
        let _ = writeln!(out, "x_min = {}", num17(g.x_min));
        let _ = writeln!(out, "x_max = {}", num17(g.x_max));
        let _ = writeln!(out, "n_points = {}", g.n_points);
        let _ = writeln!(out, "pole_exclusion_radius = {}", num17(g.pole_exclusion_radius));
    }
    out.push_str("\n[tolerances]\n");
    for (k, v) in tolerances {
        let _ = writeln!(out, "{k} = {}", num17(*v));
    }
    push_checks(&mut out, &report.checks);
    out
}

/// Aligned summary table.
pub fn checks_table(checks: &[CheckRow]) -> String {
    let w = checks.iter().map(|c| c.name.len()).max().unwrap_or(4).max(5);
    let mut out = String::new();
    let _ = writeln!(out, "{:<w$}  {:>12}  {:>3}  {:>12}  {:>9}  {:>4}", "check", "residual", "", "tolerance", "points", "");
    for c in checks {
        let op = match c.bound {
            Bound::Upper => "<=",
            Bound::Lower => ">",
        };
        let pts = format!("{}/{}", c.evaluated, c.evaluated + c.skipped);
        let _ = write!(
            out,
            "{:<w$}  {:>12}  {:>3}  {:>12}  {:>9}  {:>4}",
            c.name,
            num6(c.max_residual),
            op,
            num6(c.tolerance),
            pts,
            if c.pass { "PASS" } else { "FAIL" }
        );
        if !c.note.is_empty() {
            let _ = write!(out, "  {}", c.note);
        }
        out.push('\n');
    }
    out
}

pub fn summary_table(report: &VerificationReport) -> String {
    let mut out = checks_table(&report.checks);
    if let Some(e) = report.e_extracted {
        let _ = writeln!(out, "E (median)   = {}", complex6(e));
    }
    if let Some(e) = report.e_from_xs {
        let _ = writeln!(out, "E (from x_s) = {}", complex6(e));
    }
    let failed = report.failures().count();
    let _ = writeln!(out, "{} checks, {} failed", report.checks.len(), failed);
    out
}

pub fn residue_table(t: &ResidueTable) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<14}  {:>26}  {:>26}  {:>12}", "pole", "closed form", "contour", "rel. error");
    for e in t.vb.iter().chain(t.v_minus_x.iter()).chain(t.z.iter()) {
        let _ = writeln!(
            out,
            "{:<14}  {:>26}  {:>26}  {:>12}",
            e.label,
            complex6(e.closed_form),
            complex6(e.contour),
            num6(e.rel_error)
        );
    }
    out
}

/// Header of the sweep CSV.
pub const SWEEP_HEADER: [&str; 5] = ["phi1", "E_re", "E_im", "constancy_residual", "pass"];

/// Writes the sweep rows; degenerate rows have empty numeric fields.
pub fn write_sweep_csv<W: io::Write>(w: W, rows: &[SweepRow]) -> csv::Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(SWEEP_HEADER)?;
    for r in rows {
        let (re, im) = r.e.map_or((String::new(), String::new()), |e| (num17(e.re), num17(e.im)));
        let res = r.constancy_residual.map_or(String::new(), num17);
        wr.write_record([num17(r.phi1), re, im, res, r.pass.to_string()])?;
    }
    wr.flush()?;
    Ok(())
}

pub fn sweep_table(s: &SweepReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:>10}  {:>14}  {:>12}  {:>12}  status", "phi1", "E", "Z(x_s)", "constancy");
    let mut section = |title: String, rows: &[SweepRow]| {
        if !title.is_empty() {
            let _ = writeln!(out, "{title}");
        }
        for r in rows {
            let status = match &r.status {
                RowStatus::Ok if r.pass => "pass".to_string(),
                RowStatus::Ok => "FAIL".to_string(),
                RowStatus::Degenerate(m) => format!("degenerate: {m}"),
                RowStatus::Failed(m) => format!("FAIL: {m}"),
            };
            let opt = |v: Option<f64>| v.map_or("-".to_string(), num6);
            let _ = writeln!(
                out,
                "{:>10.5}  {:>14}  {:>12}  {:>12}  {}",
                r.phi1,
                opt(r.e.map(|e| e.re)),
                opt(r.z_xs.map(|z| z.re)),
                opt(r.constancy_residual),
                status
            );
        }
    };
    section(String::new(), &s.rows);
    for a in [&s.blowup, &s.limit] {
        section(format!("approach phi1 -> {:+.4} from below", a.center), &a.below);
        section(format!("approach phi1 -> {:+.4} from above", a.center), &a.above);
    }
    out.push('\n');
    out.push_str(&checks_table(&s.checks));
    out
}
