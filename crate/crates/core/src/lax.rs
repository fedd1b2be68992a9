//! The Lax side of the correspondence.
//!
//! The three-term q-difference equation
//!
//! ```text
//! W-(z) y(z/q) + W+(z) y(qz) - R(z) y(z) = 0
//! ```
//!
//! is evaluated here in its multiplicative form (brackets `[z]`) and, after the
//! change of variable `z = exp(2 i r (x + i a))` and division by `P(z)`, in its
//! additive form (`R+` products). The two forms are kept as separate code
//! paths so that each can be used to check the other.
//!
//! All parameters are specialized as `a_j = q e^{-2 r gamma_{j-1}}`,
//! `b_j = q e^{-2 r gamma_{j+3}}`, `k = p q^2`, `lambda = q e^{-2 r gamma8}`.
//! The evolved factor `F-bar` never appears explicitly: it is replaced by the
//! even theta function of degree two that interpolates the evolution
//! requirement at `x = i alpha_1, i alpha_2`.

use crate::error::{Error, Result};
use crate::theta::{bracket, r_plus, r_plus_pm, ModularParams, C64, I, POLE_THRESHOLD};
use crate::vandiejen::{shift_v, Couplings};

/// Margin used when testing parameter combinations against the lattice.
pub const GENERICITY_MARGIN: f64 = 1e-4;

/// Lax-side constants derived from the step data and the couplings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaxParams {
    pub a: [C64; 4],
    pub b: [C64; 4],
    pub k: C64,
    pub lambda: C64,
    pub nu: C64,
    pub ell: C64,
    pub xi1: C64,
    pub xi2: C64,
    pub phi1: C64,
    pub phi2: C64,
    /// Gauge constant in `F(z) = C z [z/lambda][k/z lambda]`.
    pub c: C64,
}

impl LaxParams {
    pub fn with_gauge(self, c: C64) -> Self {
        Self { c, ..self }
    }

    /// Replaces `k`; used for negative controls only.
    pub fn with_k(self, k: C64) -> Self {
        Self { k, ..self }
    }
}

fn rel_gap(a: C64, b: C64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm())
}

/// Specializes the Lax constants.
///
/// The square root in `k^2 l^2 = q prod a_j b_j` is resolved as
/// `l = e^{2 r a+ - 5 r a-} prod_mu e^{-r gamma_mu}`.
pub fn derive_lax_params(mp: &ModularParams, cp: &Couplings) -> Result<LaxParams> {
    let r = mp.r();
    let q = C64::new(mp.q(), 0.0);
    let p = mp.p();
    let a = [0, 1, 2, 3].map(|j| q * (-2.0 * r * cp.gamma[j]).exp());
    let b = [0, 1, 2, 3].map(|j| q * (-2.0 * r * cp.gamma[j + 4]).exp());
    let k = p * q * q;
    let nu = (-2.0 * r * cp.gamma8).exp();
    let lambda = q * nu;
    let ell = (2.0 * r * mp.a_plus() - 5.0 * r * mp.a_minus() - r * cp.gamma_sum()).exp();
    let xi1 = q * (-2.0 * r * cp.phi1).exp();
    let xi2 = ell / xi1;
    let phi2 = cp.phi2(mp);
    let lp = LaxParams {
        a,
        b,
        k,
        lambda,
        nu,
        ell,
        xi1,
        xi2,
        phi1: cp.phi1,
        phi2,
        c: C64::new(1.0, 0.0),
    };

    let prod_ab: C64 = a.iter().chain(b.iter()).product();
    let checks = [
        ("k^2 l^2 = q prod a_j b_j", rel_gap(k * k * ell * ell, q * prod_ab)),
        ("xi2 = q e^{-2 r phi2}", rel_gap(xi2, q * (-2.0 * r * phi2).exp())),
        (
            "e^{-2r(phi1+phi2)} = e^{2r a+ - r a-} prod e^{-r gamma}",
            rel_gap(
                (-2.0 * r * (cp.phi1 + phi2)).exp(),
                (2.0 * r * mp.a_plus() - r * mp.a_minus() - r * cp.gamma_sum()).exp(),
            ),
        ),
    ];
    for (what, gap) in checks {
        if gap.is_nan() || gap > 1e-12 {
            return Err(Error::DegenerateParameters(format!("{what} violated (relative gap {gap:.3e})")));
        }
    }
    for (name, v) in [("k", k), ("lambda", lambda), ("ell", ell), ("xi1", xi1), ("xi2", xi2)] {
        if v.norm() == 0.0 || !v.norm().is_finite() {
            return Err(Error::DegenerateParameters(format!("{name} must be finite and nonzero")));
        }
    }
    Ok(lp)
}

/// `alpha_n = phi_n + a-/2 - a+/2`.
pub fn alphas(mp: &ModularParams, phi1: C64, phi2: C64) -> [C64; 2] {
    let s = 0.5 * (mp.a_minus() - mp.a_plus());
    [phi1 + s, phi2 + s]
}

/// Lists every genericity condition that fails by less than `margin`.
pub fn genericity_violations(mp: &ModularParams, cp: &Couplings, margin: f64) -> Vec<String> {
    let phi = [cp.phi1, cp.phi2(mp)];
    let alpha = alphas(mp, phi[0], phi[1]);
    let mut probes: Vec<(String, C64)> = vec![("2 i gamma7".into(), 2.0 * I * cp.gamma[7])];
    for n in 0..2 {
        probes.push((format!("i phi{} + i gamma8", n + 1), I * (phi[n] + cp.gamma8)));
        probes.push((format!("i phi{} - i gamma8", n + 1), I * (phi[n] - cp.gamma8)));
        probes.push((format!("i alpha{}", n + 1), I * alpha[n]));
    }
    probes.push(("i (phi1 - phi2)".into(), I * (phi[0] - phi[1])));
    probes.push(("i (phi1 + phi2 + a-)".into(), I * (phi[0] + phi[1] + mp.a_minus())));
    probes
        .into_iter()
        .filter_map(|(name, w)| {
            let d = mp.lattice_distance(w);
            (d <= margin).then(|| format!("{name} lies {d:.2e} from the lattice"))
        })
        .collect()
}

pub fn check_genericity(mp: &ModularParams, cp: &Couplings) -> Result<()> {
    let bad = genericity_violations(mp, cp, GENERICITY_MARGIN);
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::DegenerateParameters(bad.join("; ")))
    }
}

/// Which closed form of `R(z)` to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RMode {
    /// `S1 + S2 + S3`, with `F-bar` realized through the interpolating theta function.
    SSum,
    /// The form in which `F-bar` has been eliminated in favour of `U(xi_i)`, `F(xi_i)`.
    Eliminated,
}

fn pole_error(what: &'static str, distance: f64) -> Error {
    Error::PoleProximity {
        what,
        distance,
        threshold: POLE_THRESHOLD,
    }
}

/// Both sides of the Lax equation at a fixed parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct LaxSide {
    mp: ModularParams,
    cp: Couplings,
    lp: LaxParams,
    alpha: [C64; 2],
    c_coef: [C64; 2],
    interp_den: [C64; 2],
    perturbation: Option<(C64, C64)>,
}

impl LaxSide {
    pub fn new(mp: &ModularParams, cp: &Couplings, lp: LaxParams) -> Result<Self> {
        check_genericity(mp, cp)?;
        let alpha = alphas(mp, lp.phi1, lp.phi2);
        let half = 0.5 * I * mp.a_plus();
        let interp_den = [
            r_plus_pm(mp, I * alpha[0], I * alpha[1] + half)?,
            r_plus_pm(mp, I * alpha[1], I * alpha[0] + half)?,
        ];
        let mut side = Self {
            mp: *mp,
            cp: *cp,
            lp,
            alpha,
            c_coef: [C64::new(0.0, 0.0); 2],
            interp_den,
            perturbation: None,
        };
        side.c_coef = [side.c_n(1)?, side.c_n(2)?];
        Ok(side)
    }

    /// Derives the Lax constants with gauge `C = 1`.
    pub fn from_couplings(mp: &ModularParams, cp: &Couplings) -> Result<Self> {
        Self::new(mp, cp, derive_lax_params(mp, cp)?)
    }

    pub fn params(&self) -> &LaxParams {
        &self.lp
    }

    pub fn couplings(&self) -> &Couplings {
        &self.cp
    }

    pub fn modular(&self) -> &ModularParams {
        &self.mp
    }

    pub fn alpha(&self) -> [C64; 2] {
        self.alpha
    }

    /// Adds `t R+(x +- i(d + a+/2))` to the interpolant standing in for `C-bar R+(..)`.
    /// Any `t != 0` breaks the evolution requirement.
    pub fn with_evolution_perturbation(mut self, t: C64, d: C64) -> Self {
        self.perturbation = Some((t, d));
        self
    }

    fn phis(&self) -> [C64; 2] {
        [self.lp.phi1, self.lp.phi2]
    }

    /// `c_n`, `n = 1, 2`: the value the evolution requirement prescribes for
    /// `C-bar R+(i alpha_n +- i(gamma8-bar - a-/2))`.
    pub fn c_n(&self, n: usize) -> Result<C64> {
        if !(1..=2).contains(&n) {
            return Err(Error::InvalidParameters(format!("c_n index must be 1 or 2, got {n}")));
        }
        let mp = &self.mp;
        let (r, ap, am) = (mp.r(), mp.a_plus(), mp.a_minus());
        let phi = self.phis();
        let ph = phi[n - 1];
        let hp = 0.5 * I * ap;
        let pref = (8.0 * r * ph - 4.0 * r * ap + 2.0 * r * am).exp() / self.lp.c;
        let mid = r_plus_pm(mp, I * (phi[0] + phi[1]) - hp + 0.5 * I * am, 0.5 * I * am)?;
        let mut num = C64::new(1.0, 0.0);
        for g in &self.cp.gamma {
            num *= r_plus(mp, I * ph - I * g - hp)?;
        }
        let den = r_plus_pm(mp, I * ph - hp, I * self.cp.gamma8)?;
        if den.norm() == 0.0 {
            return Err(Error::DegenerateParameters(format!("c_{n}: i phi{n} +- i gamma8 hits the lattice")));
        }
        Ok(pref * mid * num / den)
    }

    /// The entire function `E-script(x) R+(x +- i a+/2)` that replaces
    /// `C-bar R+(x +- i(gamma8-bar - a-/2))`.
    pub fn fbar_core(&self, x: C64) -> Result<C64> {
        let mp = &self.mp;
        let half = 0.5 * I * mp.a_plus();
        let [a1, a2] = self.alpha;
        let mut v = self.c_coef[0] * r_plus_pm(mp, x, I * a2 + half)? / self.interp_den[0]
            + self.c_coef[1] * r_plus_pm(mp, x, I * a1 + half)? / self.interp_den[1];
        if let Some((t, d)) = self.perturbation {
            v += t * r_plus_pm(mp, x, I * d + half)?;
        }
        Ok(v)
    }

    /// Even elliptic interpolant with a double pole at the origin and
    /// `E(i alpha_n) = c_n / R+(i alpha_n +- i a+/2)`.
    pub fn script_e(&self, x: C64) -> Result<C64> {
        let d = self.mp.lattice_distance(x);
        if d < POLE_THRESHOLD {
            return Err(pole_error("interpolant E", d));
        }
        Ok(self.fbar_core(x)? / r_plus_pm(&self.mp, x, 0.5 * I * self.mp.a_plus())?)
    }

    fn v_e_pole_distance(&self, x: C64) -> f64 {
        let mp = &self.mp;
        let mut d = f64::INFINITY;
        for ph in self.phis() {
            let s = I * (ph + 0.5 * mp.a_minus());
            for w in [x + s, x - s] {
                d = d.min(mp.lattice_distance(w - 0.5 * I * mp.a_plus()));
            }
        }
        d
    }

    fn v_e_prefactor(&self, x: C64) -> Result<C64> {
        let d = self.v_e_pole_distance(x);
        if d < POLE_THRESHOLD {
            return Err(pole_error("V_e", d));
        }
        let mp = &self.mp;
        let mut den = C64::new(1.0, 0.0);
        for ph in self.phis() {
            den *= r_plus_pm(mp, x, I * (ph + 0.5 * mp.a_minus()))?;
        }
        Ok(r_plus_pm(mp, x, I * (self.cp.gamma8 - 0.5 * mp.a_minus()))? / den)
    }

    /// Extra even elliptic summand of `Z`, with `F-bar` eliminated.
    pub fn v_e(&self, x: C64) -> Result<C64> {
        let pref = self.lp.c * (-2.0 * self.mp.r() * self.mp.a_minus()).exp();
        Ok(pref * self.v_e_prefactor(x)? * self.fbar_core(x)?)
    }

    /// `V_e` through the coefficients `d_n`, which presuppose `gamma8 = gamma7`
    /// and the relation between `phi1 + phi2` and the couplings.
    pub fn v_e_explicit(&self, x: C64) -> Result<C64> {
        if self.cp.gamma8 != self.cp.gamma[7] {
            return Err(Error::InvalidParameters("explicit V_e needs gamma8 = gamma7".into()));
        }
        let mp = &self.mp;
        let (r, ap, am) = (mp.r(), mp.a_plus(), mp.a_minus());
        let hp = 0.5 * I * ap;
        let g7 = self.cp.gamma[7];
        let mid = r_plus_pm(mp, 0.5 * I * self.cp.gamma_sum() - 3.0 * hp + I * am, 0.5 * I * am)?;
        let mut dn = [C64::new(0.0, 0.0); 2];
        for (n, ph) in self.phis().into_iter().enumerate() {
            let mut num = C64::new(1.0, 0.0);
            for g in self.cp.gamma.iter().take(7) {
                num *= r_plus(mp, I * ph - I * g - hp)?;
            }
            dn[n] = (8.0 * r * ph - 4.0 * r * ap).exp() * mid * num / r_plus(mp, I * ph + I * g7 - hp)?;
        }
        let [a1, a2] = self.alpha;
        let interp = dn[0] * r_plus_pm(mp, x, I * a2 + hp)? / self.interp_den[0]
            + dn[1] * r_plus_pm(mp, x, I * a1 + hp)? / self.interp_den[1];
        let d = self.v_e_pole_distance(x);
        if d < POLE_THRESHOLD {
            return Err(pole_error("V_e", d));
        }
        let mut den = C64::new(1.0, 0.0);
        for ph in self.phis() {
            den *= r_plus_pm(mp, x, I * (ph + 0.5 * am))?;
        }
        Ok(r_plus_pm(mp, x, I * (g7 - 0.5 * am))? / den * interp)
    }

    /// The summand `E(x)` of `Z(x) = E(x) + E(-x) + V_e(x)`.
    pub fn e_term(&self, x: C64) -> Result<C64> {
        let mp = &self.mp;
        let (r, am) = (mp.r(), mp.a_minus());
        let h = 0.5 * I * am;
        let hp = 0.5 * I * mp.a_plus();
        let mut den_d = f64::INFINITY;
        for ph in self.phis() {
            den_d = den_d.min(mp.lattice_distance(x - I * ph - h - hp));
        }
        // With gamma8 = gamma7 the gamma8 ratio only trades gamma7 for gamma7 - a-.
        let shift = if self.cp.gamma8 == self.cp.gamma[7] {
            let mut g = self.cp.gamma;
            g[7] -= am;
            shift_v(mp, &g, x)?
        } else {
            den_d = den_d.min(mp.lattice_distance(x - I * self.cp.gamma8 - h - hp));
            r_plus(mp, x - I * self.cp.gamma8 + h)? / r_plus(mp, x - I * self.cp.gamma8 - h)?
                * shift_v(mp, &self.cp.gamma, x)?
        };
        if den_d < POLE_THRESHOLD {
            return Err(pole_error("E term", den_d));
        }
        let mut ratio = C64::new(1.0, 0.0);
        for ph in self.phis() {
            ratio *= r_plus(mp, x + I * ph - h)? / r_plus(mp, x - I * ph - h)?;
        }
        Ok(-(-8.0 * I * r * x - 4.0 * r * am).exp() * shift * ratio)
    }

    /// `Z(x) = E(x) + E(-x) + V_e(x)`, equal to `-W(x)/D(x)`.
    pub fn z_fn(&self, x: C64) -> Result<C64> {
        Ok(self.e_term(x)? + self.e_term(-x)? + self.v_e(x)?)
    }

    /// `x_s = -i gamma7 + i a-/2 - i a+/2`, where `E(-x_s)` and `V_e(x_s)` vanish.
    pub fn x_s(&self) -> C64 {
        I * (-self.cp.gamma[7] + 0.5 * self.mp.a_minus() - 0.5 * self.mp.a_plus())
    }

    /// Closed form of `Z(x_s)` for `gamma8 = gamma7`.
    pub fn z_at_xs_closed(&self) -> Result<C64> {
        let mp = &self.mp;
        let (r, ap) = (mp.r(), mp.a_plus());
        let hp = 0.5 * I * ap;
        let g7 = self.cp.gamma[7];
        if mp.lattice_distance(2.0 * I * g7) <= GENERICITY_MARGIN {
            return Err(Error::DegenerateParameters("2 i gamma7 lies on the lattice".into()));
        }
        let mut num = C64::new(1.0, 0.0);
        for g in self.cp.gamma.iter().take(7) {
            num *= r_plus(mp, I * g7 + I * g + hp)?;
        }
        let mut ratio = C64::new(1.0, 0.0);
        for ph in self.phis() {
            ratio *= r_plus(mp, I * g7 - I * ph + hp)? / r_plus(mp, I * g7 + I * ph + hp)?;
        }
        Ok(-(-8.0 * r * g7 - 4.0 * r * ap).exp() * num / r_plus(mp, 2.0 * I * g7 + hp)? * ratio)
    }

    /// `D(x) = P(exp(2 i r (x + i a)))` in additive form.
    pub fn d_of_x(&self, x: C64) -> Result<C64> {
        let mp = &self.mp;
        let (r, ap, am) = (mp.r(), mp.a_plus(), mp.a_minus());
        let h = 0.5 * I * am;
        let base = 2.0 * x + 0.5 * I * ap;
        let pref = self.lp.c * (6.0 * I * r * x - r * ap - r * am).exp();
        Ok(pref
            * r_plus(mp, x + I * self.cp.gamma8 + h)?
            * r_plus(mp, x - I * self.cp.gamma8 - h)?
            * r_plus(mp, base)?
            * r_plus_pm(mp, base, I * am)?)
    }

    fn br(&self, z: C64) -> Result<C64> {
        bracket(&self.mp, z)
    }

    pub fn a_fn(&self, z: C64) -> Result<C64> {
        self.lp.a.iter().try_fold(C64::new(1.0, 0.0), |acc, aj| Ok(acc * self.br(z / aj)?))
    }

    pub fn b_fn(&self, z: C64) -> Result<C64> {
        self.lp.b.iter().try_fold(C64::new(1.0, 0.0), |acc, bj| Ok(acc * self.br(z / bj)?))
    }

    /// `U(z) = A(z) B(z)`.
    pub fn u_fn(&self, z: C64) -> Result<C64> {
        Ok(self.a_fn(z)? * self.b_fn(z)?)
    }

    /// `F(z) = C z [z/lambda][k/(z lambda)]`.
    pub fn f_fn(&self, z: C64) -> Result<C64> {
        let lp = &self.lp;
        Ok(lp.c * z * self.br(z / lp.lambda)? * self.br(lp.k / (z * lp.lambda))?)
    }

    /// `G(z) = z [z/xi1][z/xi2]`.
    pub fn g_fn(&self, z: C64) -> Result<C64> {
        Ok(z * self.br(z / self.lp.xi1)? * self.br(z / self.lp.xi2)?)
    }

    fn q(&self) -> f64 {
        self.mp.q()
    }

    /// `W-(z) = A(k/z) B(z) F(qz) [k/q^2 z^2]`.
    pub fn w_minus(&self, z: C64) -> Result<C64> {
        let (k, q) = (self.lp.k, self.q());
        Ok(self.a_fn(k / z)? * self.b_fn(z)? * self.f_fn(q * z)? * self.br(k / (q * q * z * z))?)
    }

    /// `W+(z) = A(qz) B(k/qz) F(z) [k/z^2]`.
    pub fn w_plus(&self, z: C64) -> Result<C64> {
        let (k, q) = (self.lp.k, self.q());
        Ok(self.a_fn(q * z)? * self.b_fn(k / (q * z))? * self.f_fn(z)? * self.br(k / (z * z))?)
    }

    /// `P(z) = C p^-1 q^-1 z^3 [z/lambda][k/(q z lambda)][k/z^2][k/q z^2][k/q^2 z^2]`.
    pub fn p_of_z(&self, z: C64) -> Result<C64> {
        let lp = &self.lp;
        let (k, q, p) = (lp.k, self.q(), self.mp.p());
        Ok(lp.c / (p * q)
            * z
            * z
            * z
            * self.br(z / lp.lambda)?
            * self.br(k / (q * z * lp.lambda))?
            * self.br(k / (z * z))?
            * self.br(k / (q * z * z))?
            * self.br(k / (q * q * z * z))?)
    }

    /// `F-bar(z)`, assembled from the interpolant in the additive variable.
    pub fn fbar_of_z(&self, z: C64) -> Result<C64> {
        Ok(z * self.fbar_core(self.mp.x_of_z(z))?)
    }

    fn g_pole_distance(&self, z: C64) -> f64 {
        let x = self.mp.x_of_z(z);
        let mut d = f64::INFINITY;
        for al in self.alpha {
            d = d.min(self.mp.lattice_distance(x - I * al));
            d = d.min(self.mp.lattice_distance(x + I * al));
        }
        d
    }

    /// `R(z)`, holomorphic on the punctured plane.
    pub fn r_of_z(&self, z: C64, mode: RMode) -> Result<C64> {
        if z.norm() == 0.0 {
            return Err(Error::DomainError("R(z) needs z != 0".into()));
        }
        let d = self.g_pole_distance(z);
        if d < POLE_THRESHOLD {
            return Err(pole_error("R(z) intermediate", d));
        }
        let (k, q) = (self.lp.k, self.q());
        let kz2 = self.br(k / (z * z))?;
        let kqz2 = self.br(k / (q * z * z))?;
        let kq2z2 = self.br(k / (q * q * z * z))?;
        let g_z = self.g_fn(z)?;
        let g_kqz = self.g_fn(k / (q * z))?;
        let f_z = self.f_fn(z)?;
        let f_qz = self.f_fn(q * z)?;
        let v = match mode {
            RMode::SSum => {
                let s1 = self.u_fn(z)? * f_qz * self.g_fn(k / z)? * kq2z2 / g_z;
                let s2 = self.u_fn(k / (q * z))? * f_z * self.g_fn(q * z)? * kz2 / g_kqz;
                let s3 = -f_z * f_qz * self.fbar_of_z(z)? * kz2 * kqz2 * kq2z2 / (g_z * g_kqz);
                s1 + s2 + s3
            }
            RMode::Eliminated => {
                let t1 = kz2 * self.g_fn(q * z)? * self.u_fn(k / (q * z))? / (g_kqz * f_qz);
                let t2 = kq2z2 * self.g_fn(k / z)? * self.u_fn(z)? / (g_z * f_z);
                let ell = self.lp.ell;
                let mut t3 = C64::new(0.0, 0.0);
                for xi in [self.lp.xi1, self.lp.xi2] {
                    t3 += k * self.br(k / ell)? * kz2 * kq2z2 * kqz2 * self.u_fn(xi)?
                        / (xi * xi
                            * self.br(xi * xi / ell)?
                            * self.br(xi / z)?
                            * self.br(k / (xi * q * z))?
                            * self.f_fn(xi)?);
                }
                (t1 + t2 + t3) * f_z * f_qz
            }
        };
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::DomainError(format!("R({z}) is not finite")))
        }
    }

    /// `W(x) = R(exp(2 i r (x + i a)))`, an entire `pi/r`-periodic function.
    pub fn w_of_x(&self, x: C64) -> Result<C64> {
        self.r_of_z(self.mp.z_of_x(x), RMode::SSum)
    }

    /// `W-(z) y(z/q) + W+(z) y(qz) - R(z) y(z)`.
    pub fn lax_residual<F>(&self, y: F, z: C64) -> Result<C64>
    where
        F: Fn(C64) -> C64,
    {
        let q = self.q();
        Ok(self.w_minus(z)? * y(z / q) + self.w_plus(z)? * y(q * z) - self.r_of_z(z, RMode::SSum)? * y(z))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp() -> ModularParams {
        ModularParams::new(1.0, 0.9, 0.52).unwrap()
    }

    fn cp() -> Couplings {
        Couplings::from_real([0.11, 0.17, 0.23, 0.29, 0.31, 0.37, 0.41, 0.43], -0.05)
    }

    fn rel(a: C64, b: C64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn trivial_plug_in() {
        let mp = mp();
        let zero = Couplings::from_real([0.0; 8], 0.3);
        let lp = derive_lax_params(&mp, &zero).unwrap();
        let q = C64::new(mp.q(), 0.0);
        for v in lp.a.iter().chain(lp.b.iter()) {
            assert!(rel(*v, q) < 1e-15);
        }
        assert!(rel(lp.lambda, q) < 1e-15);
        let ell = (2.0 * mp.a_plus() - 5.0 * mp.a_minus()).exp();
        assert!(rel(lp.ell, C64::new(ell, 0.0)) < 1e-15);
    }

    #[test]
    fn phi_sum_relation() {
        let mp = mp();
        let cp = cp();
        let lp = derive_lax_params(&mp, &cp).unwrap();
        let want = -mp.a_plus() + 0.5 * mp.a_minus() + 0.5 * cp.gamma_sum();
        assert!((lp.phi1 + lp.phi2 - want).norm() < 1e-15);
        assert!(rel(lp.xi1 * lp.xi2, lp.ell) < 1e-14);
    }

    #[test]
    fn degenerate_default_from_resonant_phi() {
        let mp = mp();
        // alpha1 = phi1 + a-/2 - a+/2 = 0
        let bad = cp().with_phi1(C64::new(0.19, 0.0));
        let err = LaxSide::from_couplings(&mp, &bad).unwrap_err();
        assert!(matches!(err, Error::DegenerateParameters(ref m) if m.contains("alpha1")), "{err}");
    }

    #[test]
    fn zeros_of_factors() {
        let side = LaxSide::from_couplings(&mp(), &cp()).unwrap();
        let lp = *side.params();
        assert_eq!(side.u_fn(lp.a[0]).unwrap().norm(), 0.0);
        assert_eq!(side.f_fn(lp.lambda).unwrap().norm(), 0.0);
        assert_eq!(side.w_minus(lp.b[0]).unwrap().norm(), 0.0);
        assert_eq!(side.p_of_z(lp.lambda).unwrap().norm(), 0.0);
    }

    #[test]
    fn c_n_scales_inversely_with_gauge() {
        let mp = mp();
        let cp = cp();
        let lp = derive_lax_params(&mp, &cp).unwrap();
        let s1 = LaxSide::new(&mp, &cp, lp).unwrap();
        let c = C64::new(2.0, 1.0);
        let s2 = LaxSide::new(&mp, &cp, lp.with_gauge(c)).unwrap();
        for n in 1..=2 {
            assert!(rel(s2.c_n(n).unwrap() * c, s1.c_n(n).unwrap()) < 1e-14);
        }
        assert!(s1.c_n(3).is_err());
    }

    #[test]
    fn c_n_swap_under_phi_exchange() {
        let mp = mp();
        let cp = cp();
        let side = LaxSide::from_couplings(&mp, &cp).unwrap();
        let swapped = LaxSide::from_couplings(&mp, &cp.with_phi1(side.params().phi2)).unwrap();
        assert!(rel(swapped.c_n(1).unwrap(), side.c_n(2).unwrap()) < 1e-12);
        assert!(rel(swapped.c_n(2).unwrap(), side.c_n(1).unwrap()) < 1e-12);
    }

    #[test]
    fn interpolant_hits_prescribed_values() {
        let mp = mp();
        let side = LaxSide::from_couplings(&mp, &cp()).unwrap();
        let hp = 0.5 * I * mp.a_plus();
        for n in 0..2 {
            let x = I * side.alpha()[n];
            let want = side.c_n(n + 1).unwrap() / r_plus_pm(&mp, x, hp).unwrap();
            assert!(rel(side.script_e(x).unwrap(), want) < 1e-10);
        }
    }

    #[test]
    fn interpolant_even_and_elliptic() {
        let mp = mp();
        let side = LaxSide::from_couplings(&mp, &cp()).unwrap();
        for x in [C64::new(0.3, 0.1), C64::new(1.2, -0.2)] {
            let v = side.script_e(x).unwrap();
            assert!(rel(side.script_e(-x).unwrap(), v) < 1e-12);
            assert!(rel(side.script_e(x + I * mp.a_plus()).unwrap(), v) < 1e-9);
            assert!(rel(side.script_e(x + mp.real_period()).unwrap(), v) < 1e-12);
        }
    }

    #[test]
    fn v_e_routes_and_zeros() {
        let mp = mp();
        let side = LaxSide::from_couplings(&mp, &cp()).unwrap();
        for x in [C64::new(0.4, 0.0), C64::new(0.9, 0.15)] {
            let v = side.v_e(x).unwrap();
            assert!(rel(side.v_e_explicit(x).unwrap(), v) < 1e-9);
            assert!(rel(side.v_e(-x).unwrap(), v) < 1e-12);
        }
        let z = side.x_s();
        let scale = side.v_e(C64::new(0.4, 0.0)).unwrap().norm();
        assert!(side.v_e(z).unwrap().norm() < 1e-10 * scale);
        assert!(side.v_e(-z).unwrap().norm() < 1e-10 * scale);
    }

    #[test]
    fn e_term_periodicities() {
        let mp = mp();
        let side = LaxSide::from_couplings(&mp, &cp()).unwrap();
        for x in [C64::new(0.33, 0.0), C64::new(0.8, 0.05)] {
            let v = side.e_term(x).unwrap();
            assert!(rel(side.e_term(x + I * mp.a_plus()).unwrap(), v) < 1e-9);
            assert!(rel(side.e_term(x + mp.real_period()).unwrap(), v) < 1e-12);
        }
    }

    #[test]
    fn z_even_and_equal_to_lax_ratio() {
        let mp = mp();
        let side = LaxSide::from_couplings(&mp, &cp()).unwrap();
        for x in [C64::new(0.3, 0.0), C64::new(0.7, 0.0), C64::new(0.4, 0.1)] {
            let zx = side.z_fn(x).unwrap();
            assert!(rel(side.z_fn(-x).unwrap(), zx) < 1e-11);
            let w = side.w_of_x(x).unwrap();
            assert!(rel(-w / side.d_of_x(x).unwrap(), zx) < 1e-9);
        }
    }

    #[test]
    fn d_is_p_in_additive_form() {
        let mp = mp();
        let side = LaxSide::from_couplings(&mp, &cp()).unwrap();
        for x in [C64::new(0.3, 0.0), C64::new(1.0, -0.1)] {
            let z = mp.z_of_x(x);
            assert!(rel(side.d_of_x(x).unwrap(), side.p_of_z(z).unwrap()) < 1e-12);
        }
        // R+(2x + i a+/2) vanishes on the half lattice
        assert!(side.d_of_x(C64::new(0.0, 0.0)).unwrap().norm() < 1e-14);
    }

    #[test]
    fn r_modes_agree() {
        let mp = mp();
        let side = LaxSide::from_couplings(&mp, &cp()).unwrap();
        let z = C64::new(0.3, 0.2);
        let a = side.r_of_z(z, RMode::SSum).unwrap();
        let b = side.r_of_z(z, RMode::Eliminated).unwrap();
        assert!(rel(a, b) < 1e-10, "{a} vs {b}");
    }

    #[test]
    fn lax_residual_trivial_inputs() {
        let mp = mp();
        let side = LaxSide::from_couplings(&mp, &cp()).unwrap();
        let z = mp.z_of_x(C64::new(0.6, 0.0));
        assert_eq!(side.lax_residual(|_| C64::new(0.0, 0.0), z).unwrap(), C64::new(0.0, 0.0));
        let one = side.lax_residual(|_| C64::new(1.0, 0.0), z).unwrap();
        let want = side.w_minus(z).unwrap() + side.w_plus(z).unwrap() - side.r_of_z(z, RMode::SSum).unwrap();
        assert!(rel(one, want) < 1e-14);
    }

    #[test]
    fn xs_zeros() {
        let mp = mp();
        let side = LaxSide::from_couplings(&mp, &cp()).unwrap();
        let xs = side.x_s();
        let scale = side.e_term(xs).unwrap().norm();
        assert!(side.e_term(-xs).unwrap().norm() < 1e-10 * scale);
        assert!(rel(side.z_at_xs_closed().unwrap(), side.z_fn(xs).unwrap()) < 1e-10);
    }
}
