//! Checks tying the Lax side to the van Diejen side at `k = p q^2`,
//! `gamma8 = gamma7`.
//!
//! Every check produces a [`CheckRow`]; a failing identity is a row with
//! `pass = false`, never an error. Errors are reserved for configurations
//! that cannot be evaluated at all.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::contour;
use crate::error::{Error, Result};
use crate::lax::{derive_lax_params, LaxSide, RMode};
use crate::theta::{
    bracket, elliptic_gamma_g, elliptic_gamma_pq, r_minus, r_plus, ModularParams, C64, I,
};
use crate::vandiejen::{gauge_ratio, shift_v, vb_poles, Couplings, Shift, VbPotential};

pub const DEFAULT_R: f64 = 1.0;
pub const DEFAULT_A_PLUS: f64 = 0.9;
pub const DEFAULT_A_MINUS: f64 = 0.52;
pub const DEFAULT_GAMMA: [f64; 8] = [0.11, 0.17, 0.23, 0.29, 0.31, 0.37, 0.41, 0.43];
pub const DEFAULT_PHI1: f64 = -0.05;

/// Largest fraction of grid points a check may skip.
pub const MAX_SKIPPED_FRACTION: f64 = 0.2;

/// Number of points used by the pointwise identity checks.
pub const IDENTITY_POINTS: usize = 50;

/// Approach offsets towards `phi1 = +-gamma7`.
pub const APPROACH_DELTAS: [f64; 5] = [0.03, 0.01, 0.003, 0.001, 0.0003];

pub fn default_modular() -> ModularParams {
    ModularParams::new(DEFAULT_R, DEFAULT_A_PLUS, DEFAULT_A_MINUS).expect("default modular parameters are valid")
}

pub fn default_couplings() -> Couplings {
    Couplings::from_real(DEFAULT_GAMMA, DEFAULT_PHI1)
}

fn default_exclusion() -> f64 {
    1e-2
}

/// Real evaluation grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
    #[serde(default = "default_exclusion")]
    pub pole_exclusion_radius: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            x_min: 0.05,
            x_max: 1.5,
            n_points: 200,
            pole_exclusion_radius: default_exclusion(),
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.x_min.is_finite() && self.x_max.is_finite() && self.x_min < self.x_max) {
            return Err(Error::InvalidParameters(format!(
                "grid needs finite x_min < x_max, got [{}, {}]",
                self.x_min, self.x_max
            )));
        }
        if self.n_points < 16 {
            return Err(Error::InvalidParameters(format!("grid needs n_points >= 16, got {}", self.n_points)));
        }
        if !(self.pole_exclusion_radius.is_finite() && self.pole_exclusion_radius >= 0.0) {
            return Err(Error::InvalidParameters("pole_exclusion_radius must be finite and >= 0".into()));
        }
        Ok(())
    }

    pub fn with_points(self, n_points: usize) -> Self {
        Self { n_points, ..self }
    }

    pub fn points(&self) -> Vec<f64> {
        let n = self.n_points;
        let step = (self.x_max - self.x_min) / (n - 1) as f64;
        (0..n).map(|k| self.x_min + step * k as f64).collect()
    }
}

/// Default tolerance of every named check.
///
/// Rows marked "lower" pass when the residual exceeds the tolerance.
pub const TOLERANCE_DEFAULTS: &[(&str, f64)] = &[
    ("assembled_operator", 1e-8),
    ("c_gauge", 1e-10),
    ("constancy", 1e-8),
    ("e_real", 1e-9),
    ("energy_xs", 1e-8),
    ("evolution_uniqueness", 1.0),
    ("gades_minus", 1e-12),
    ("gades_plus", 1e-12),
    ("gamma_qdiff", 1e-12),
    ("gamma_reflection", 1e-12),
    ("lax_z_bridge", 1e-9),
    ("r_even", 1e-13),
    ("r_modes", 1e-9),
    ("r_periodic", 1e-13),
    ("rde", 1e-12),
    ("shift_minus", 1e-9),
    ("shift_minus_k_pq", 1e-2),
    ("shift_plus", 1e-9),
    ("shift_plus_k_pq", 1e-2),
    ("special_gamma", 1e-8),
    ("special_gamma_perturbed", 1e-3),
    ("sweep_blowup", 1.0),
    ("sweep_limit", 1.0),
    ("sweep_rows", 0.0),
    ("sweep_sign_change", 0.0),
    ("v_residue_relation", 1e-9),
    ("vb_residues", 1e-9),
    ("w_entire", 1e-9),
    ("xs_zeros", 1e-10),
    ("z_ellipticity", 1e-9),
    ("z_residue_match", 1e-9),
    ("zrrel", 1e-12),
];

/// Check name to tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    map: BTreeMap<String, f64>,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            map: TOLERANCE_DEFAULTS.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }
}

impl Tolerances {
    pub fn get(&self, name: &str) -> f64 {
        *self.map.get(name).unwrap_or_else(|| panic!("unknown check name {name}"))
    }

    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::InvalidParameters(format!("tolerance {name} must be finite and >= 0, got {value}")));
        }
        match self.map.get_mut(name) {
            Some(slot) => {
                *slot = value;
                Ok(())
            }
            None => Err(Error::InvalidParameters(format!("unknown check name `{name}`"))),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.map.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrespondenceConfig {
    pub mp: ModularParams,
    pub couplings: Couplings,
    pub grid: GridSpec,
    pub tolerances: Tolerances,
}

impl Default for CorrespondenceConfig {
    fn default() -> Self {
        Self {
            mp: default_modular(),
            couplings: default_couplings(),
            grid: GridSpec::default(),
            tolerances: Tolerances::default(),
        }
    }
}

impl CorrespondenceConfig {
    pub fn new(mp: ModularParams, couplings: Couplings, grid: GridSpec, tolerances: Tolerances) -> Result<Self> {
        let cfg = Self {
            mp,
            couplings,
            grid,
            tolerances,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.couplings.gamma8 != self.couplings.gamma[7] {
            return Err(Error::InvalidParameters("gamma8 must equal gamma7".into()));
        }
        let all = self.couplings.gamma.iter().chain([&self.couplings.phi1]);
        if all.into_iter().any(|g| !(g.re.is_finite() && g.im.is_finite())) {
            return Err(Error::InvalidParameters("couplings must be finite".into()));
        }
        self.grid.validate()
    }

    pub fn with_phi1(&self, phi1: f64) -> Self {
        Self {
            couplings: self.couplings.with_phi1(C64::new(phi1, 0.0)),
            ..self.clone()
        }
    }
}

/// Deliberately wrong variants of the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NegativeControl {
    /// `k = p q` in place of `k = p q^2` on the Lax side.
    KPq,
    /// The interpolant for `F-bar` is perturbed away from the evolution requirement.
    EvolutionPerturbed,
}

impl NegativeControl {
    pub const ALL: [NegativeControl; 2] = [NegativeControl::KPq, NegativeControl::EvolutionPerturbed];

    pub fn name(&self) -> &'static str {
        match self {
            NegativeControl::KPq => "k-pq",
            NegativeControl::EvolutionPerturbed => "evolution-perturbed",
        }
    }
}

impl fmt::Display for NegativeControl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NegativeControl {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown negative control `{s}` (known: k-pq, evolution-perturbed)")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    /// Pass iff `residual <= tolerance`.
    Upper,
    /// Pass iff `residual > tolerance`.
    Lower,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub bound: Bound,
    pub pass: bool,
    pub evaluated: usize,
    pub skipped: usize,
    pub note: String,
}

impl CheckRow {
    fn new(name: &str, residual: f64, tolerance: f64, bound: Bound) -> Self {
        let pass = match bound {
            Bound::Upper => residual <= tolerance,
            Bound::Lower => residual > tolerance,
        };
        Self {
            name: name.to_string(),
            max_residual: residual,
            tolerance,
            bound,
            pass,
            evaluated: 1,
            skipped: 0,
            note: String::new(),
        }
    }

    fn upper(name: &str, residual: f64, tols: &Tolerances) -> Self {
        Self::new(name, residual, tols.get(name), Bound::Upper)
    }

    fn lower(name: &str, residual: f64, tols: &Tolerances) -> Self {
        Self::new(name, residual, tols.get(name), Bound::Lower)
    }

    fn failed(name: &str, bound: Bound, tols: &Tolerances, err: &Error) -> Self {
        Self {
            pass: false,
            evaluated: 0,
            note: err.to_string(),
            ..Self::new(name, f64::NAN, tols.get(name), bound)
        }
    }

    fn counts(mut self, evaluated: usize, skipped: usize) -> Self {
        self.evaluated = evaluated;
        self.skipped = skipped;
        let total = evaluated + skipped;
        if total > 0 && skipped as f64 > MAX_SKIPPED_FRACTION * total as f64 {
            self.pass = false;
            self.note = format!("{skipped} of {total} points skipped");
        }
        self
    }

    fn noted(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    fn from_result(name: &str, bound: Bound, tols: &Tolerances, r: Result<f64>) -> Self {
        match r {
            Ok(v) => Self::new(name, v, tols.get(name), bound),
            Err(e) => Self::failed(name, bound, tols, &e),
        }
    }

    fn from_scan(name: &str, tols: &Tolerances, s: Result<Scan>) -> Self {
        match s {
            Ok(s) => Self::upper(name, s.max, tols).counts(s.evaluated, s.skipped),
            Err(e) => Self::failed(name, Bound::Upper, tols, &e),
        }
    }
}

/// Everything needed to reproduce a report.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterEcho {
    pub mp: ModularParams,
    pub couplings: Option<Couplings>,
    pub grid: Option<GridSpec>,
    pub negative_control: Option<NegativeControl>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub checks: Vec<CheckRow>,
    pub e_extracted: Option<C64>,
    pub e_from_xs: Option<C64>,
    pub echo: ParameterEcho,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn row(&self, name: &str) -> Option<&CheckRow> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm()
}

/// `(0.5 + k alpha) mod 1`.
fn weyl(k: usize, alpha: f64) -> f64 {
    (0.5 + k as f64 * alpha).fract()
}

const GOLDEN: f64 = 0.618_033_988_749_894_9;
const PLASTIC_1: f64 = 0.754_877_666_246_692_7;
const PLASTIC_2: f64 = 0.569_840_290_998_053_3;

struct Scan {
    max: f64,
    evaluated: usize,
    skipped: usize,
}

/// Evaluates `f` at every point, skipping pole hits. Any other error aborts.
fn scan<T, F>(points: T, mut f: F) -> Result<Scan>
where
    T: IntoIterator<Item = C64>,
    F: FnMut(C64) -> Result<Option<f64>>,
{
    let mut s = Scan {
        max: 0.0,
        evaluated: 0,
        skipped: 0,
    };
    let mut nan = false;
    for x in points {
        match f(x) {
            Ok(Some(v)) => {
                s.evaluated += 1;
                nan |= v.is_nan();
                s.max = s.max.max(v);
            }
            Ok(None) | Err(Error::PoleProximity { .. }) => s.skipped += 1,
            Err(e) => return Err(e),
        }
    }
    if nan {
        s.max = f64::NAN;
    }
    Ok(s)
}

/// Largest `|f|` on a circle of radius 0.1 around `x0`.
fn local_scale<F: Fn(C64) -> Result<C64>>(f: F, x0: C64) -> Result<f64> {
    let mut m = 0.0f64;
    for k in 0..8 {
        let w = x0 + 0.1 * (I * (2.0 * PI * (k as f64 + 0.5) / 8.0)).exp();
        m = m.max(f(w)?.norm());
    }
    Ok(m)
}

/// Result of the additive constancy check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constancy {
    pub e_extracted: C64,
    /// `max |Delta - E| / max(1, |E|)`.
    pub max_deviation: f64,
    pub evaluated: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XsEnergy {
    pub x_s: C64,
    pub energy: C64,
    pub z_xs: C64,
    pub e_term_neg_xs: C64,
    pub v_e_xs: C64,
    /// `max(|E(-x_s)| / scale_E, |V_e(x_s)| / scale_Ve)` with local scales.
    pub zero_residual: f64,
}

/// One contour residue compared with its closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidueEntry {
    pub label: String,
    pub location: C64,
    pub closed_form: C64,
    pub contour: C64,
    pub rel_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidueTable {
    pub vb: Vec<ResidueEntry>,
    pub v_minus_x: Vec<ResidueEntry>,
    pub z: Vec<ResidueEntry>,
}

fn entry(label: String, location: C64, closed_form: C64, contour: C64) -> ResidueEntry {
    ResidueEntry {
        label,
        location,
        closed_form,
        contour,
        rel_error: rel(contour, closed_form),
    }
}

fn max_rel(entries: &[ResidueEntry]) -> f64 {
    entries.iter().map(|e| e.rel_error).fold(0.0, |a, b| if b.is_nan() { f64::NAN } else { a.max(b) })
}

/// Both sides evaluated at one configuration.
#[derive(Debug, Clone)]
pub struct Correspondence {
    cfg: CorrespondenceConfig,
    side: LaxSide,
    gamma_tilde: [C64; 8],
    vb_tilde: VbPotential,
    control: Option<NegativeControl>,
}

impl Correspondence {
    pub fn new(cfg: &CorrespondenceConfig) -> Result<Self> {
        Self::with_control(cfg, None)
    }

    pub fn with_control(cfg: &CorrespondenceConfig, control: Option<NegativeControl>) -> Result<Self> {
        cfg.validate()?;
        let mp = cfg.mp;
        let mut lp = derive_lax_params(&mp, &cfg.couplings)?;
        if control == Some(NegativeControl::KPq) {
            lp = lp.with_k(C64::new(mp.p() * mp.q(), 0.0));
        }
        let mut side = LaxSide::new(&mp, &cfg.couplings, lp)?;
        if control == Some(NegativeControl::EvolutionPerturbed) {
            let t = perturbation_scale(&side)? * 1e-3;
            side = side.with_evolution_perturbation(t, perturbation_center(&mp));
        }
        let gamma_tilde = cfg.couplings.tilde(&mp).gamma_tilde;
        Ok(Self {
            cfg: cfg.clone(),
            side,
            gamma_tilde,
            vb_tilde: VbPotential::new(&mp, &gamma_tilde)?,
            control,
        })
    }

    pub fn config(&self) -> &CorrespondenceConfig {
        &self.cfg
    }

    pub fn side(&self) -> &LaxSide {
        &self.side
    }

    pub fn control(&self) -> Option<NegativeControl> {
        self.control
    }

    pub fn gamma_tilde(&self) -> &[C64; 8] {
        &self.gamma_tilde
    }

    pub fn vb_tilde(&self, x: C64) -> Result<C64> {
        self.vb_tilde.eval(x)
    }

    fn mp(&self) -> &ModularParams {
        &self.cfg.mp
    }

    /// Distance from `x` to the nearest singularity of `V_b(gamma~)` or of
    /// the summands of `Z`.
    pub fn pole_distance(&self, x: C64) -> f64 {
        let mp = self.mp();
        let h = 0.5 * I * mp.a_minus();
        let hp = 0.5 * I * mp.a_plus();
        let mut d = f64::INFINITY;
        for xn in vb_poles(mp) {
            d = d.min(mp.lattice_distance(x - xn)).min(mp.lattice_distance(x + xn));
        }
        for w in [x, x - h, x + h] {
            d = d.min(mp.half_lattice_distance(w));
        }
        let g8 = I * self.cfg.couplings.gamma8;
        let lp = self.side.params();
        for s in [g8 + h, I * (lp.phi1 + 0.5 * mp.a_minus()), I * (lp.phi2 + 0.5 * mp.a_minus())] {
            d = d.min(mp.lattice_distance(x + s - hp)).min(mp.lattice_distance(x - s - hp));
        }
        d
    }

    fn admissible(&self, x: C64) -> bool {
        self.pole_distance(x) >= self.cfg.grid.pole_exclusion_radius
    }

    fn grid(&self, n: Option<usize>) -> Vec<C64> {
        let g = n.map_or(self.cfg.grid, |n| self.cfg.grid.with_points(n));
        g.points().into_iter().map(|x| C64::new(x, 0.0)).collect()
    }

    /// `(lhs, rhs)` of the gauge-transformed shift coefficient identity.
    ///
    /// Minus: `(W-/P) q^-1 e^{4irx} prod_{mu<=3} ratio-(gamma_mu)` against `V(gamma~; x)`.
    /// Plus: `(W+/P) q^-1 e^{-4irx} prod_{mu<=3} ratio+(gamma_mu)` against `V(gamma~; -x)`.
    pub fn shift_identity(&self, shift: Shift, x: C64) -> Result<(C64, C64)> {
        let mp = self.mp();
        let z = mp.z_of_x(x);
        let (w, sign, rhs_x) = match shift {
            Shift::Minus => (self.side.w_minus(z)?, 1.0, x),
            Shift::Plus => (self.side.w_plus(z)?, -1.0, -x),
        };
        let mut lhs = w / self.side.p_of_z(z)? / mp.q() * (sign * 4.0 * I * mp.r() * x).exp();
        for g in self.cfg.couplings.gamma.iter().take(4) {
            lhs *= gauge_ratio(mp, *g, x, shift)?;
        }
        Ok((lhs, shift_v(mp, &self.gamma_tilde, rhs_x)?))
    }

    pub fn shift_identity_minus(&self, x: C64) -> Result<(C64, C64)> {
        self.shift_identity(Shift::Minus, x)
    }

    pub fn shift_identity_plus(&self, x: C64) -> Result<(C64, C64)> {
        self.shift_identity(Shift::Plus, x)
    }

    fn shift_scan(&self, shift: Shift) -> Result<Scan> {
        scan(self.grid(Some(IDENTITY_POINTS)), |x| {
            if !self.admissible(x) {
                return Ok(None);
            }
            let (l, r) = self.shift_identity(shift, x)?;
            Ok(Some(rel(l, r)))
        })
    }

    /// `V_b(gamma~; x) - Z(x)`.
    pub fn delta(&self, x: C64) -> Result<C64> {
        Ok(self.vb_tilde.eval(x)? - self.side.z_fn(x)?)
    }

    /// Median of `V_b(gamma~; x) - Z(x)` over the grid and the largest
    /// deviation from it.
    pub fn additive_constancy(&self) -> Result<Constancy> {
        let mut vals = Vec::new();
        let mut skipped = 0;
        for x in self.grid(None) {
            if !self.admissible(x) {
                skipped += 1;
                continue;
            }
            match self.delta(x) {
                Ok(v) => vals.push(v),
                Err(Error::PoleProximity { .. }) => skipped += 1,
                Err(e) => return Err(e),
            }
        }
        if vals.is_empty() {
            return Err(Error::DomainError("no admissible grid point".into()));
        }
        let e = C64::new(median(vals.iter().map(|v| v.re)), median(vals.iter().map(|v| v.im)));
        let norm = e.norm().max(1.0);
        let dev = vals.iter().map(|v| (v - e).norm() / norm).fold(0.0, f64::max);
        Ok(Constancy {
            e_extracted: e,
            max_deviation: dev,
            evaluated: vals.len(),
            skipped,
        })
    }

    /// `E = V_b(gamma~; x_s) - Z(x_s)` with `Z(x_s)` in closed form.
    pub fn energy_from_xs(&self) -> Result<XsEnergy> {
        let xs = self.side.x_s();
        let z_xs = self.side.z_at_xs_closed()?;
        let energy = self.vb_tilde.eval(xs)? - z_xs;
        let e_neg = self.side.e_term(-xs)?;
        let v_e = self.side.v_e(xs)?;
        let se = local_scale(|x| self.side.e_term(x), -xs)?;
        let sv = local_scale(|x| self.side.v_e(x), xs)?;
        Ok(XsEnergy {
            x_s: xs,
            energy,
            z_xs,
            e_term_neg_xs: e_neg,
            v_e_xs: v_e,
            zero_residual: (e_neg.norm() / se).max(v_e.norm() / sv),
        })
    }

    /// Contour residues of `V_b(gamma~)`, `V(gamma~; -x)` and `Z` against
    /// their closed forms.
    pub fn residue_table(&self) -> Result<ResidueTable> {
        let mp = *self.mp();
        let data = *self.vb_tilde.residues();
        let mut vb = Vec::new();
        let mut z = Vec::new();
        for (n, (xn, rho)) in data.poles.iter().zip(data.residues.iter()).enumerate() {
            for (sign, tag) in [(1.0, "+"), (-1.0, "-")] {
                let c = sign * xn;
                let r = contour::residue(|x| self.vb_tilde.eval(x), c)?;
                vb.push(entry(format!("V_b at {tag}x{n}"), c, sign * rho, r.value));
                let r = contour::residue(|x| self.side.z_fn(x), c)?;
                z.push(entry(format!("Z at {tag}x{n}"), c, sign * rho, r.value));
            }
        }
        let sum: C64 = self.gamma_tilde.iter().sum();
        let factor = -(2.0 * mp.r() * (mp.a_minus() + mp.a_plus()) + mp.r() * sum).exp();
        let gt = self.gamma_tilde;
        let mut v_minus_x = Vec::new();
        for (n, (xn, rho)) in data.poles.iter().zip(data.residues.iter()).enumerate() {
            let want = if n < 2 { -rho } else { rho * factor };
            let r = contour::residue(|x| shift_v(&mp, &gt, -x), *xn)?;
            v_minus_x.push(entry(format!("V(-x) at x{n}"), *xn, want, r.value));
        }
        Ok(ResidueTable { vb, v_minus_x, z })
    }

    /// 50 points `z = |z| e^{i theta}` in the annulus `p^0.9 < |z| < p^-0.9`.
    pub fn r_mode_samples(&self) -> Vec<C64> {
        let p = self.mp().p();
        (0..IDENTITY_POINTS)
            .map(|k| {
                let rad = p.powf(1.8 * weyl(k, PLASTIC_1) - 0.9);
                rad * (I * (2.0 * PI * weyl(k, PLASTIC_2))).exp()
            })
            .collect()
    }

    fn r_modes_scan(&self) -> Result<Scan> {
        scan(self.r_mode_samples(), |z| {
            let a = self.side.r_of_z(z, RMode::SSum)?;
            let b = self.side.r_of_z(z, RMode::Eliminated)?;
            Ok(Some(rel(a, b)))
        })
    }

    /// Candidate poles of the S-sum intermediates in the additive variable:
    /// `+-i alpha_j` and their `i a+` translates.
    pub fn w_pole_candidates(&self) -> Vec<C64> {
        let ap = I * self.mp().a_plus();
        let mut v = Vec::new();
        for al in self.side.alpha() {
            for c in [I * al, -I * al] {
                v.push(c);
                v.push(c + ap);
            }
        }
        v
    }

    /// Largest `|Res W| / max|W|` over the candidate poles.
    pub fn w_entirety(&self) -> Result<f64> {
        self.worst_w_residue(&self.side)
    }

    fn worst_w_residue(&self, side: &LaxSide) -> Result<f64> {
        let mut worst = 0.0f64;
        for c in self.w_pole_candidates() {
            let r = contour::residue(|x| side.w_of_x(x), c)?;
            worst = worst.max(r.value.norm() / r.scale);
        }
        Ok(worst)
    }

    fn c_gauge(&self) -> Result<f64> {
        let mp = *self.mp();
        let lp = *self.side.params();
        let other = LaxSide::new(&mp, &self.cfg.couplings, lp.with_gauge(C64::new(2.0, 1.0)))?;
        let s = scan(self.grid(Some(IDENTITY_POINTS)), |x| {
            if !self.admissible(x) {
                return Ok(None);
            }
            let z1 = self.side.z_fn(x)?;
            let z2 = other.z_fn(x)?;
            let via_r = -other.w_of_x(x)? / other.d_of_x(x)?;
            Ok(Some(rel(z2, z1).max(rel(via_r, z1))))
        })?;
        Ok(s.max)
    }

    fn z_ellipticity_scan(&self) -> Result<Scan> {
        let (ip, rp) = (I * self.mp().a_plus(), self.mp().real_period());
        scan(self.grid(Some(IDENTITY_POINTS)), |x| {
            if !self.admissible(x) {
                return Ok(None);
            }
            let z = self.side.z_fn(x)?;
            Ok(Some(rel(self.side.z_fn(x + ip)?, z).max(rel(self.side.z_fn(x + rp)?, z))))
        })
    }

    fn lax_z_bridge_scan(&self) -> Result<Scan> {
        scan(self.grid(Some(IDENTITY_POINTS)), |x| {
            if !self.admissible(x) {
                return Ok(None);
            }
            let z = self.side.z_fn(x)?;
            Ok(Some(rel(-self.side.w_of_x(x)? / self.side.d_of_x(x)?, z)))
        })
    }

    /// The Lax equation divided by `P`, with the `-`/`+` shift terms gauge
    /// transported, applied to `f(x) = e^{c x}`, against `(A+(gamma~) - E) f`.
    pub fn assembled_operator(&self, c: C64, x: C64, e: C64) -> Result<(C64, C64, f64)> {
        let mp = self.mp();
        let f = |w: C64| (c * w).exp();
        let step = I * mp.a_minus();
        let (lm, rm) = self.shift_identity(Shift::Minus, x)?;
        let (lpl, rpl) = self.shift_identity(Shift::Plus, x)?;
        let z = mp.z_of_x(x);
        let rp = -self.side.r_of_z(z, RMode::SSum)? / self.side.p_of_z(z)?;
        let lhs = lm * f(x - step) + lpl * f(x + step) + rp * f(x);
        let vb = self.vb_tilde.eval(x)?;
        let rhs = rm * f(x - step) + rpl * f(x + step) + (vb - e) * f(x);
        let scale = [rm * f(x - step), rpl * f(x + step), vb * f(x), e * f(x)]
            .iter()
            .map(|t| t.norm())
            .fold(0.0, f64::max);
        Ok((lhs, rhs, scale))
    }

    fn assembled_scan(&self, e: C64) -> Result<Scan> {
        let two_ir = 2.0 * I * self.mp().r();
        scan(self.grid(Some(IDENTITY_POINTS)), |x| {
            if !self.admissible(x) {
                return Ok(None);
            }
            let mut worst = 0.0f64;
            for c in [C64::new(0.0, 0.0), two_ir, -two_ir] {
                let (l, r, s) = self.assembled_operator(c, x, e)?;
                worst = worst.max((l - r).norm() / s);
            }
            Ok(Some(worst))
        })
    }

    /// Largest scaled residue of `W` over the candidate poles as the
    /// interpolant is perturbed by `t R+(x +- i(d + a+/2))`, `t = s |c_1|`.
    pub fn uniqueness_probe(&self, scales: &[f64]) -> Result<Vec<(f64, f64)>> {
        let base = perturbation_scale(&self.side)?;
        let d = perturbation_center(self.mp());
        scales
            .iter()
            .map(|&s| {
                let side = self.side.clone().with_evolution_perturbation(base * s, d);
                Ok((s, self.worst_w_residue(&side)?))
            })
            .collect()
    }

    /// Smallest ratio between consecutive probe residues ordered by `|t|`.
    fn uniqueness_growth(&self) -> Result<f64> {
        let mut worst = f64::INFINITY;
        for sign in [1.0, -1.0] {
            let probe = self.uniqueness_probe(&[0.0, sign * 1e-6, sign * 1e-4, sign * 1e-2])?;
            for w in probe.windows(2) {
                worst = worst.min(w[1].1 / w[0].1);
            }
        }
        Ok(worst)
    }
}

fn perturbation_scale(side: &LaxSide) -> Result<C64> {
    Ok(C64::new(side.c_n(1)?.norm(), 0.0))
}

fn perturbation_center(mp: &ModularParams) -> C64 {
    C64::new(0.37 * mp.a_plus(), 0.0)
}

fn median<T: Iterator<Item = f64>>(it: T) -> f64 {
    let mut v: Vec<f64> = it.collect();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// `gamma0 = 0`, `gamma1 = i pi/2r`, `gamma2 = a+/2`, `gamma3 = a+/2 + i pi/2r`,
/// under which all residues of `V_b` vanish.
pub fn special_gamma(mp: &ModularParams, rest: [C64; 4]) -> [C64; 8] {
    let h = C64::new(0.0, PI / (2.0 * mp.r()));
    let half = C64::new(0.5 * mp.a_plus(), 0.0);
    [C64::new(0.0, 0.0), h, half, half + h, rest[0], rest[1], rest[2], rest[3]]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialGamma {
    pub z_xs: C64,
    /// `max |Z(x) - Z(x_s)| / |Z(x_s)|` over the grid.
    pub max_deviation: f64,
    pub evaluated: usize,
    pub skipped: usize,
}

/// Variation of `Z` over the grid for the special couplings, optionally with
/// `gamma2` shifted by `perturb`.
pub fn special_gamma_check(
    mp: &ModularParams,
    rest: [C64; 4],
    phi1: C64,
    grid: &GridSpec,
    perturb: f64,
) -> Result<SpecialGamma> {
    let mut gamma = special_gamma(mp, rest);
    gamma[2] += perturb;
    let cfg = CorrespondenceConfig::new(*mp, Couplings::new(gamma, phi1), *grid, Tolerances::default())?;
    let c = Correspondence::new(&cfg)?;
    let z_xs = c.side.z_at_xs_closed()?;
    let norm = z_xs.norm();
    let s = scan(c.grid(None), |x| {
        if !c.admissible(x) {
            return Ok(None);
        }
        Ok(Some((c.side.z_fn(x)? - z_xs).norm() / norm))
    })?;
    Ok(SpecialGamma {
        z_xs,
        max_deviation: s.max,
        evaluated: s.evaluated,
        skipped: s.skipped,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum RowStatus {
    Ok,
    Degenerate(String),
    Failed(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub phi1: f64,
    pub e: Option<C64>,
    pub z_xs: Option<C64>,
    pub constancy_residual: Option<f64>,
    pub pass: bool,
    pub status: RowStatus,
}

/// `n` equispaced values of `phi1` on `[lo, hi]`.
pub fn phi1_values(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n < 2 {
        return vec![lo];
    }
    (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
}

pub fn sweep_row(cfg: &CorrespondenceConfig, phi1: f64) -> SweepRow {
    let mut row = SweepRow {
        phi1,
        e: None,
        z_xs: None,
        constancy_residual: None,
        pass: false,
        status: RowStatus::Ok,
    };
    let c = match Correspondence::new(&cfg.with_phi1(phi1)) {
        Ok(c) => c,
        Err(Error::DegenerateParameters(m)) => {
            row.status = RowStatus::Degenerate(m);
            return row;
        }
        Err(e) => {
            row.status = RowStatus::Failed(e.to_string());
            return row;
        }
    };
    match (c.additive_constancy(), c.side.z_at_xs_closed()) {
        (Ok(k), Ok(z_xs)) => {
            let total = k.evaluated + k.skipped;
            row.e = Some(k.e_extracted);
            row.z_xs = Some(z_xs);
            row.constancy_residual = Some(k.max_deviation);
            row.pass = k.max_deviation <= cfg.tolerances.get("constancy")
                && k.skipped as f64 <= MAX_SKIPPED_FRACTION * total as f64;
        }
        (Err(e), _) | (_, Err(e)) => row.status = RowStatus::Failed(e.to_string()),
    }
    row
}

/// Evaluates the sweep row by row; degenerate rows are kept and flagged.
pub fn sweep_phi1(cfg: &CorrespondenceConfig, phis: &[f64]) -> Vec<SweepRow> {
    phis.iter().map(|&p| sweep_row(cfg, p)).collect()
}

/// Rows on both sides of `center` at the offsets in [`APPROACH_DELTAS`].
#[derive(Debug, Clone, PartialEq)]
pub struct Approach {
    pub center: f64,
    pub below: Vec<SweepRow>,
    pub above: Vec<SweepRow>,
}

pub fn approach(cfg: &CorrespondenceConfig, center: f64) -> Approach {
    Approach {
        center,
        below: APPROACH_DELTAS.iter().map(|d| sweep_row(cfg, center - d)).collect(),
        above: APPROACH_DELTAS.iter().map(|d| sweep_row(cfg, center + d)).collect(),
    }
}

fn z_xs_seq(rows: &[SweepRow]) -> Option<Vec<C64>> {
    rows.iter().map(|r| if r.pass { r.z_xs } else { None }).collect()
}

impl Approach {
    /// Smallest ratio `|Z(x_s)|_{k+1} / |Z(x_s)|_k` along both sides; above 1
    /// means `|E - E_ref|` grows monotonically towards the center.
    pub fn min_growth(&self) -> f64 {
        self.ratios().into_iter().fold(f64::INFINITY, f64::min)
    }

    /// Largest such ratio; below 1 means monotone decay to the center.
    pub fn max_growth(&self) -> f64 {
        self.ratios().into_iter().fold(f64::NEG_INFINITY, f64::max)
    }

    fn ratios(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for side in [&self.below, &self.above] {
            match z_xs_seq(side) {
                Some(v) => out.extend(v.windows(2).map(|w| w[1].norm() / w[0].norm())),
                None => out.push(f64::NAN),
            }
        }
        out
    }

    /// `1` if `E - E_ref = -Z(x_s)` changes sign across the center at the
    /// closest pair, `-1` if not.
    pub fn sign_change(&self) -> f64 {
        match (self.below.last().and_then(|r| r.z_xs), self.above.last().and_then(|r| r.z_xs)) {
            (Some(a), Some(b)) if a.re * b.re < 0.0 => 1.0,
            (Some(_), Some(_)) => -1.0,
            _ => f64::NAN,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.below.iter().chain(self.above.iter()).all(|r| r.pass)
    }
}

/// The sweep together with the two approach sequences.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub blowup: Approach,
    pub limit: Approach,
    pub checks: Vec<CheckRow>,
}

pub fn sweep_report(cfg: &CorrespondenceConfig, phis: &[f64]) -> SweepReport {
    let tols = &cfg.tolerances;
    let rows = sweep_phi1(cfg, phis);
    let g7 = cfg.couplings.gamma[7].re;
    let blowup = approach(cfg, -g7);
    let limit = approach(cfg, g7);
    let generic: Vec<&SweepRow> = rows.iter().filter(|r| !matches!(r.status, RowStatus::Degenerate(_))).collect();
    let failing = generic.iter().filter(|r| !r.pass).count();
    let mut checks = vec![CheckRow::upper("sweep_rows", failing as f64, tols)
        .counts(generic.len(), rows.len() - generic.len())
        .noted(format!("{} degenerate rows skipped", rows.len() - generic.len()))];
    checks[0].pass = failing == 0 && !generic.is_empty();
    let mut approach_rows = |name: &str, a: &Approach, growth: f64, bound: Bound| {
        let mut row = CheckRow::new(name, growth, tols.get(name), bound);
        row.pass &= a.all_pass();
        checks.push(row.noted(format!("phi1 -> {:+.4}", a.center)));
        let mut sc = CheckRow::lower("sweep_sign_change", a.sign_change(), tols);
        sc.name = format!("{name}_sign_change");
        checks.push(sc);
    };
    approach_rows("sweep_blowup", &blowup, blowup.min_growth(), Bound::Lower);
    approach_rows("sweep_limit", &limit, limit.max_growth(), Bound::Upper);
    SweepReport {
        rows,
        blowup,
        limit,
        checks,
    }
}

fn echo(cfg: &CorrespondenceConfig, control: Option<NegativeControl>) -> ParameterEcho {
    ParameterEcho {
        mp: cfg.mp,
        couplings: Some(cfg.couplings),
        grid: Some(cfg.grid),
        negative_control: control,
    }
}

/// Residue rows only.
pub fn residue_checks(cfg: &CorrespondenceConfig) -> Result<(ResidueTable, Vec<CheckRow>)> {
    let c = Correspondence::new(cfg)?;
    let tols = &cfg.tolerances;
    let t = c.residue_table()?;
    let rows = vec![
        CheckRow::upper("vb_residues", max_rel(&t.vb), tols).counts(t.vb.len(), 0),
        CheckRow::upper("v_residue_relation", max_rel(&t.v_minus_x), tols).counts(t.v_minus_x.len(), 0),
        CheckRow::upper("z_residue_match", max_rel(&t.z), tols).counts(t.z.len(), 0),
    ];
    Ok((t, rows))
}

/// Independent slices of the identity suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckGroup {
    Shift,
    Residues,
    Energy,
    DualRoute,
    Gauge,
    Operator,
    SpecialGamma,
}

impl CheckGroup {
    pub const ALL: [CheckGroup; 7] = [
        CheckGroup::Shift,
        CheckGroup::Residues,
        CheckGroup::Energy,
        CheckGroup::DualRoute,
        CheckGroup::Gauge,
        CheckGroup::Operator,
        CheckGroup::SpecialGamma,
    ];
}

/// Runs the identity suite. Errors only for configurations that cannot be
/// evaluated at all.
pub fn verify(cfg: &CorrespondenceConfig, control: Option<NegativeControl>) -> Result<VerificationReport> {
    verify_groups(cfg, control, &CheckGroup::ALL)
}

/// Runs the listed groups in order.
pub fn verify_groups(
    cfg: &CorrespondenceConfig,
    control: Option<NegativeControl>,
    groups: &[CheckGroup],
) -> Result<VerificationReport> {
    let c = Correspondence::with_control(cfg, control)?;
    let tols = &cfg.tolerances;
    let mut rows = Vec::new();
    let mut e_extracted = None;
    let mut e_from_xs = None;

    for group in groups {
        match group {
            CheckGroup::Shift => {
                rows.push(CheckRow::from_scan("shift_minus", tols, c.shift_scan(Shift::Minus)));
                rows.push(CheckRow::from_scan("shift_plus", tols, c.shift_scan(Shift::Plus)));
                let wrong = Correspondence::with_control(cfg, Some(NegativeControl::KPq))?;
                for (name, shift) in [("shift_minus_k_pq", Shift::Minus), ("shift_plus_k_pq", Shift::Plus)] {
                    rows.push(match wrong.shift_scan(shift) {
                        Ok(s) => CheckRow::lower(name, s.max, tols).counts(s.evaluated, s.skipped),
                        Err(e) => CheckRow::failed(name, Bound::Lower, tols, &e),
                    });
                }
            }
            CheckGroup::Residues => match c.residue_table() {
                Ok(t) => {
                    rows.push(CheckRow::upper("vb_residues", max_rel(&t.vb), tols).counts(t.vb.len(), 0));
                    rows.push(
                        CheckRow::upper("v_residue_relation", max_rel(&t.v_minus_x), tols).counts(t.v_minus_x.len(), 0),
                    );
                    rows.push(CheckRow::upper("z_residue_match", max_rel(&t.z), tols).counts(t.z.len(), 0));
                }
                Err(e) => {
                    for name in ["vb_residues", "v_residue_relation", "z_residue_match"] {
                        rows.push(CheckRow::failed(name, Bound::Upper, tols, &e));
                    }
                }
            },
            CheckGroup::Energy => {
                let constancy = c.additive_constancy();
                e_extracted = constancy.as_ref().ok().map(|k| k.e_extracted);
                match &constancy {
                    Ok(k) => {
                        rows.push(CheckRow::upper("constancy", k.max_deviation, tols).counts(k.evaluated, k.skipped));
                        rows.push(CheckRow::upper("e_real", k.e_extracted.im.abs() / k.e_extracted.norm().max(1.0), tols));
                    }
                    Err(e) => {
                        rows.push(CheckRow::failed("constancy", Bound::Upper, tols, e));
                        rows.push(CheckRow::failed("e_real", Bound::Upper, tols, e));
                    }
                }
                let xs = c.energy_from_xs();
                e_from_xs = xs.as_ref().ok().map(|x| x.energy);
                rows.push(match (&xs, e_extracted) {
                    (Ok(x), Some(e)) => CheckRow::upper("energy_xs", (x.energy - e).norm() / e.norm().max(1.0), tols),
                    (Err(err), _) => CheckRow::failed("energy_xs", Bound::Upper, tols, err),
                    (Ok(_), None) => CheckRow::upper("energy_xs", f64::NAN, tols).noted("no extracted energy"),
                });
                rows.push(CheckRow::from_result("xs_zeros", Bound::Upper, tols, xs.map(|x| x.zero_residual)));
            }
            CheckGroup::DualRoute => {
                rows.push(CheckRow::from_scan("r_modes", tols, c.r_modes_scan()));
                rows.push(CheckRow::from_result("w_entire", Bound::Upper, tols, c.w_entirety()));
            }
            CheckGroup::Gauge => {
                rows.push(CheckRow::from_result("c_gauge", Bound::Upper, tols, c.c_gauge()));
            }
            CheckGroup::Operator => {
                rows.push(CheckRow::from_scan("z_ellipticity", tols, c.z_ellipticity_scan()));
                rows.push(CheckRow::from_scan("lax_z_bridge", tols, c.lax_z_bridge_scan()));
                let e = match e_extracted {
                    Some(e) => Some(e),
                    None => c.additive_constancy().ok().map(|k| k.e_extracted),
                };
                rows.push(match e {
                    Some(e) => CheckRow::from_scan("assembled_operator", tols, c.assembled_scan(e)),
                    None => CheckRow::upper("assembled_operator", f64::NAN, tols).noted("no extracted energy"),
                });
                rows.push(CheckRow::from_result("evolution_uniqueness", Bound::Lower, tols, c.uniqueness_growth()));
            }
            CheckGroup::SpecialGamma => {
                let g = cfg.couplings.gamma;
                let rest = [g[4], g[5], g[6], g[7]];
                let phi1 = cfg.couplings.phi1;
                rows.push(match special_gamma_check(&cfg.mp, rest, phi1, &cfg.grid, 0.0) {
                    Ok(s) => CheckRow::upper("special_gamma", s.max_deviation, tols).counts(s.evaluated, s.skipped),
                    Err(e) => CheckRow::failed("special_gamma", Bound::Upper, tols, &e),
                });
                rows.push(match special_gamma_check(&cfg.mp, rest, phi1, &cfg.grid, 1e-2) {
                    Ok(s) => {
                        CheckRow::lower("special_gamma_perturbed", s.max_deviation, tols).counts(s.evaluated, s.skipped)
                    }
                    Err(e) => CheckRow::failed("special_gamma_perturbed", Bound::Lower, tols, &e),
                });
            }
        }
    }

    Ok(VerificationReport {
        checks: rows,
        e_extracted,
        e_from_xs,
        echo: echo(cfg, control),
    })
}

/// Kernel sample points: `x = (pi/r) u + i (0.4 a+) (2v - 1)`.
pub fn kernel_samples(mp: &ModularParams, n: usize) -> Vec<C64> {
    (0..n)
        .map(|k| {
            C64::new(
                mp.real_period() * weyl(k, PLASTIC_1),
                0.4 * mp.a_plus() * (2.0 * weyl(k, PLASTIC_2) - 1.0),
            )
        })
        .collect()
}

fn kernel_rows(mp: &ModularParams, tols: &Tolerances) -> Vec<CheckRow> {
    let xs = kernel_samples(mp, 100);
    let r = mp.r();
    let hp = 0.5 * I * mp.a_plus();
    let hm = 0.5 * I * mp.a_minus();
    let pts = || xs.iter().copied();
    let real = || (0..100).map(|k| C64::new(mp.real_period() * weyl(k, GOLDEN), 0.0));
    let z_of = |x: C64| mp.z_of_x(x);

    let checks: Vec<(&str, Result<Scan>)> = vec![
        (
            "rde",
            scan(pts(), |x| {
                let a = r_plus(mp, x + hp)?;
                let b = (-2.0 * I * r * x).exp() * r_plus(mp, x - hp)?;
                Ok(Some((a + b).norm() / a.norm()))
            }),
        ),
        (
            "gades_plus",
            scan(pts(), |x| {
                let lhs = elliptic_gamma_g(mp, x + hp)? / elliptic_gamma_g(mp, x - hp)?;
                Ok(Some(rel(lhs, r_minus(mp, x)?)))
            }),
        ),
        (
            "gades_minus",
            scan(pts(), |x| {
                let lhs = elliptic_gamma_g(mp, x + hm)? / elliptic_gamma_g(mp, x - hm)?;
                Ok(Some(rel(lhs, r_plus(mp, x)?)))
            }),
        ),
        (
            "gamma_qdiff",
            scan(pts(), |x| {
                let z = z_of(x);
                let lhs = elliptic_gamma_pq(mp, mp.q() * z)?;
                Ok(Some(rel(lhs, bracket(mp, z)? * elliptic_gamma_pq(mp, z)?)))
            }),
        ),
        (
            "gamma_reflection",
            scan(pts(), |x| {
                let z = z_of(x);
                let v = elliptic_gamma_pq(mp, z)? * elliptic_gamma_pq(mp, mp.p() * mp.q() / z)?;
                Ok(Some((v - 1.0).norm()))
            }),
        ),
        (
            "zrrel",
            scan(pts(), |x| {
                let z = z_of(x);
                let via_r = r_plus(mp, z.ln() / (2.0 * I * r) - hp)?;
                Ok(Some(rel(via_r, bracket(mp, z)?)))
            }),
        ),
        (
            "r_even",
            scan(real(), |x| {
                let v = r_plus(mp, x)?;
                Ok(Some(rel(r_plus(mp, -x)?, v)))
            }),
        ),
        (
            "r_periodic",
            scan(real(), |x| {
                let v = r_plus(mp, x)?;
                Ok(Some(rel(r_plus(mp, x + mp.real_period())?, v)))
            }),
        ),
    ];
    checks
        .into_iter()
        .map(|(name, s)| CheckRow::from_scan(name, tols, s))
        .collect()
}

/// Analytic difference equations and bridges of the kernel at 100 points.
pub fn selfcheck(mp: &ModularParams, tols: &Tolerances) -> VerificationReport {
    VerificationReport {
        checks: kernel_rows(mp, tols),
        e_extracted: None,
        e_from_xs: None,
        echo: ParameterEcho {
            mp: *mp,
            couplings: None,
            grid: None,
            negative_control: None,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        assert!(GridSpec::default().validate().is_ok());
        assert!(GridSpec { n_points: 8, ..GridSpec::default() }.validate().is_err());
        assert!(GridSpec { x_min: 2.0, ..GridSpec::default() }.validate().is_err());
        let pts = GridSpec::default().points();
        assert_eq!(pts.len(), 200);
        assert_eq!(pts[0], 0.05);
        assert!((pts[199] - 1.5).abs() < 1e-15);
    }

    #[test]
    fn tolerance_names() {
        let mut t = Tolerances::default();
        t.set("constancy", 1e-6).unwrap();
        assert_eq!(t.get("constancy"), 1e-6);
        assert!(t.set("nonsense", 1.0).is_err());
        assert!(t.set("constancy", f64::NAN).is_err());
    }

    #[test]
    fn gamma8_must_match() {
        let mut cfg = CorrespondenceConfig::default();
        cfg.couplings.gamma8 = C64::new(0.5, 0.0);
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn negative_control_names_round_trip() {
        for c in NegativeControl::ALL {
            assert_eq!(c.name().parse::<NegativeControl>().unwrap(), c);
        }
        assert!("k-p".parse::<NegativeControl>().is_err());
    }

    #[test]
    fn row_bounds() {
        let t = Tolerances::default();
        assert!(CheckRow::upper("constancy", 1e-9, &t).pass);
        assert!(!CheckRow::upper("constancy", f64::NAN, &t).pass);
        assert!(CheckRow::lower("shift_minus_k_pq", 0.5, &t).pass);
        assert!(!CheckRow::lower("shift_minus_k_pq", 1e-3, &t).pass);
        assert!(!CheckRow::upper("constancy", 0.0, &t).counts(10, 5).pass);
    }

    #[test]
    fn median_even_and_odd() {
        assert_eq!(median([3.0, 1.0, 2.0].into_iter()), 2.0);
        assert_eq!(median([4.0, 1.0, 2.0, 3.0].into_iter()), 2.5);
    }

    #[test]
    fn special_gamma_kills_residues() {
        let mp = default_modular();
        let g = special_gamma(&mp, [C64::new(0.3, 0.0); 4]);
        let r = crate::vandiejen::vb_residues(&mp, &g).unwrap();
        let scale = crate::vandiejen::vb_residues(&mp, &default_couplings().gamma).unwrap();
        for (a, b) in r.residues.iter().zip(scale.residues.iter()) {
            assert!(a.norm() < 1e-14 * b.norm().max(1.0));
        }
    }
}
