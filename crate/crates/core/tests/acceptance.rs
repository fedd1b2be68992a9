//! One line per acceptance criterion; exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use elliptic_lax::correspondence::{
    phi1_values, selfcheck, verify_groups, CheckGroup, CheckRow, CorrespondenceConfig, VerificationReport,
    APPROACH_DELTAS, IDENTITY_POINTS,
};

const E_FROZEN: f64 = 228.38572802180903;

struct Outcome {
    name: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn rows<'a>(rep: &'a VerificationReport, names: &[&str]) -> Result<Vec<&'a CheckRow>, String> {
    names.iter().map(|n| rep.row(n).ok_or_else(|| format!("missing row {n}"))).collect()
}

fn summarize(rows: &[&CheckRow]) -> String {
    rows.iter()
        .map(|r| format!("{}={:.2e}", r.name, r.max_residual))
        .collect::<Vec<_>>()
        .join(" ")
}

fn group(
    name: &'static str,
    cfg: &CorrespondenceConfig,
    groups: &[CheckGroup],
    names: &[&str],
    budget: Option<Duration>,
    extra: impl Fn(&VerificationReport, &[&CheckRow]) -> Result<(), String>,
) -> Outcome {
    let (rep, elapsed) = timed(|| verify_groups(cfg, None, groups));
    let checked = rep.map_err(|e| e.to_string()).and_then(|rep| {
        let rs = rows(&rep, names)?;
        let mut detail = summarize(&rs);
        let mut pass = rs.iter().all(|r| r.pass);
        if let Err(m) = extra(&rep, &rs) {
            pass = false;
            detail.push_str(&format!(" [{m}]"));
        }
        Ok((pass, detail))
    });
    let (mut pass, mut detail) = checked.unwrap_or_else(|e| (false, e));
    if let Some(b) = budget {
        if elapsed > b {
            pass = false;
            detail.push_str(&format!(" [over {:.0?} budget]", b));
        }
    }
    Outcome {
        name,
        pass,
        detail,
        elapsed,
    }
}

fn min_points(rs: &[&CheckRow], n: usize) -> Result<(), String> {
    match rs.iter().find(|r| r.evaluated < n) {
        Some(r) => Err(format!("{} evaluated only {} points", r.name, r.evaluated)),
        None => Ok(()),
    }
}

fn kernel(cfg: &CorrespondenceConfig) -> Outcome {
    let names = ["rde", "gades_plus", "gades_minus", "gamma_qdiff", "zrrel"];
    let (rep, elapsed) = timed(|| selfcheck(&cfg.mp, &cfg.tolerances));
    let (mut pass, mut detail) = match rows(&rep, &names) {
        Ok(rs) => {
            let ok = rs.iter().all(|r| r.pass && r.tolerance <= 1e-12) && min_points(&rs, 100).is_ok();
            (ok, summarize(&rs))
        }
        Err(e) => (false, e),
    };
    if elapsed > Duration::from_secs(2) {
        pass = false;
        detail.push_str(" [over 2 s budget]");
    }
    Outcome {
        name: "difference-equation suite",
        pass,
        detail,
        elapsed,
    }
}

fn sweep(cfg: &CorrespondenceConfig) -> Outcome {
    let (s, elapsed) = timed(|| elliptic_lax::correspondence::sweep_report(cfg, &phi1_values(-0.4, 0.4, 33)));
    let mut pass = s.checks.iter().all(|c| c.pass) && s.rows.len() == 33;
    for a in [&s.blowup, &s.limit] {
        pass &= a.below.len() == APPROACH_DELTAS.len() && a.above.len() == APPROACH_DELTAS.len();
    }
    let rs: Vec<&CheckRow> = s.checks.iter().collect();
    Outcome {
        name: "phi1 sweep and approach sequences",
        pass,
        detail: format!("{} {}", summarize(&rs), s.checks[0].note),
        elapsed,
    }
}

fn main() -> ExitCode {
    let cfg = CorrespondenceConfig::default();
    let secs = Duration::from_secs;
    let none = |_: &VerificationReport, _: &[&CheckRow]| Ok(());
    let outcomes = vec![
        kernel(&cfg),
        group(
            "shift identities and k = pq control",
            &cfg,
            &[CheckGroup::Shift],
            &["shift_minus", "shift_plus", "shift_minus_k_pq", "shift_plus_k_pq"],
            Some(secs(5)),
            |_, rs| min_points(&rs[..2], IDENTITY_POINTS),
        ),
        group(
            "residue data",
            &cfg,
            &[CheckGroup::Residues],
            &["vb_residues", "v_residue_relation", "z_residue_match"],
            None,
            none,
        ),
        group(
            "additive constancy and real E",
            &cfg,
            &[CheckGroup::Energy],
            &["constancy", "e_real"],
            Some(secs(30)),
            |rep, rs| {
                let e = rep.e_extracted.ok_or("no E")?;
                if (e.re - E_FROZEN).abs() > 1e-8 * E_FROZEN {
                    return Err(format!("E = {} differs from {E_FROZEN}", e.re));
                }
                if rs[0].evaluated + rs[0].skipped != cfg.grid.n_points {
                    return Err("grid size".into());
                }
                Ok(())
            },
        ),
        group("eigenvalue cross-check", &cfg, &[CheckGroup::Energy], &["energy_xs"], None, none),
        group(
            "dual-route R(z) and entirety of W",
            &cfg,
            &[CheckGroup::DualRoute],
            &["r_modes", "w_entire"],
            None,
            |_, rs| min_points(&rs[..1], IDENTITY_POINTS),
        ),
        group("C-gauge invariance", &cfg, &[CheckGroup::Gauge], &["c_gauge"], None, none),
        group(
            "special gamma and its perturbation",
            &cfg,
            &[CheckGroup::SpecialGamma],
            &["special_gamma", "special_gamma_perturbed"],
            None,
            none,
        ),
        sweep(&cfg),
    ];

    for o in &outcomes {
        println!(
            "{}  {:<38} {:>8.2?}  {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.name,
            o.elapsed,
            o.detail
        );
    }
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    println!("acceptance: {} criteria, {failed} failed", outcomes.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
