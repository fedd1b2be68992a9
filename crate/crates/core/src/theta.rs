//! Theta-type building blocks.
//!
//! Everything here is a truncated infinite product in one of two nomes,
//! `p = exp(-2 r a+)` and `q = exp(-2 r a-)`. Products are evaluated factor by
//! factor with `1 - exp(w)` computed through a complex `expm1`, so values near
//! a zero keep full relative accuracy. Truncation stops once the geometric
//! tail bound of the remaining factors falls below [`TruncationPolicy::rel_tol`].
//!
//! Two variables are in play:
//!
//! * the additive variable `x`, in which `R+(x)` is even, `pi/r`-periodic and
//!   quasi-periodic under `x -> x + i a+`;
//! * the multiplicative variable `z = exp(2 i r (x + i a))`, `a = (a+ + a-)/2`,
//!   in which the bracket `[z] = prod (1 - z p^m)(1 - p^(m+1)/z)` lives.
//!
//! `[z] = R+(log(z)/(2 i r) - i a+/2)` links the two; it is exercised by the
//! test suite rather than used internally.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const I: C64 = C64::new(0.0, 1.0);

/// Distance in the additive variable below which an evaluation is refused.
pub const POLE_THRESHOLD: f64 = 1e-6;

/// Minimum separation `|a- - n a+|`, `n = 1..=NON_RESONANCE_ORDER`.
pub const NON_RESONANCE_EPS: f64 = 1e-3;
pub const NON_RESONANCE_ORDER: u32 = 8;

const MAX_EXPONENT: f64 = 700.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncationPolicy {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            rel_tol: 1e-16,
            max_terms: 4000,
        }
    }
}

impl TruncationPolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(Error::InvalidParameters(format!(
                "rel_tol must lie in (0, 1), got {}",
                self.rel_tol
            )));
        }
        if self.max_terms < 8 {
            return Err(Error::InvalidParameters(format!(
                "max_terms must be at least 8, got {}",
                self.max_terms
            )));
        }
        Ok(())
    }
}

/// Step and period data `r`, `a+`, `a-`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModularParams {
    r: f64,
    a_plus: f64,
    a_minus: f64,
    policy: TruncationPolicy,
}

impl ModularParams {
    /// Validates positivity (equivalently `0 < p, q < 1`) and non-resonance
    /// of `a-` against multiples of `a+`.
    pub fn new(r: f64, a_plus: f64, a_minus: f64) -> Result<Self> {
        Self::with_policy(r, a_plus, a_minus, TruncationPolicy::default())
    }

    pub fn with_policy(r: f64, a_plus: f64, a_minus: f64, policy: TruncationPolicy) -> Result<Self> {
        for (name, v) in [("r", r), ("a_plus", a_plus), ("a_minus", a_minus)] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidParameters(format!(
                    "{name} must be finite and positive (so that 0 < p, q < 1), got {v}"
                )));
            }
        }
        policy.validate()?;
        for n in 1..=NON_RESONANCE_ORDER {
            let gap = (a_minus - f64::from(n) * a_plus).abs();
            if gap <= NON_RESONANCE_EPS {
                return Err(Error::InvalidParameters(format!(
                    "resonant step: |a_minus - {n} a_plus| = {gap:.3e} <= {NON_RESONANCE_EPS:.0e}"
                )));
            }
        }
        Ok(Self {
            r,
            a_plus,
            a_minus,
            policy,
        })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn a_plus(&self) -> f64 {
        self.a_plus
    }

    pub fn a_minus(&self) -> f64 {
        self.a_minus
    }

    /// `a = (a+ + a-)/2`.
    pub fn a(&self) -> f64 {
        0.5 * (self.a_plus + self.a_minus)
    }

    pub fn p(&self) -> f64 {
        (-2.0 * self.r * self.a_plus).exp()
    }

    pub fn q(&self) -> f64 {
        (-2.0 * self.r * self.a_minus).exp()
    }

    pub fn policy(&self) -> TruncationPolicy {
        self.policy
    }

    /// Real period `pi/r` of the lattice.
    pub fn real_period(&self) -> f64 {
        PI / self.r
    }

    /// Distance from `w` to the lattice generated by `pi/r` and `i a+`.
    pub fn lattice_distance(&self, w: C64) -> f64 {
        let pr = self.real_period();
        let dr = w.re - (w.re / pr).round() * pr;
        let di = w.im - (w.im / self.a_plus).round() * self.a_plus;
        dr.hypot(di)
    }

    /// Distance from `w` to the half lattice `Lambda/2`.
    pub fn half_lattice_distance(&self, w: C64) -> f64 {
        0.5 * self.lattice_distance(2.0 * w)
    }

    /// `z = exp(2 i r (x + i a))`.
    pub fn z_of_x(&self, x: C64) -> C64 {
        (2.0 * I * self.r * x - self.r * (self.a_plus + self.a_minus)).exp()
    }

    /// Inverse of [`Self::z_of_x`] on the principal branch of the logarithm.
    pub fn x_of_z(&self, z: C64) -> C64 {
        z.ln() / (2.0 * I * self.r) - I * self.a()
    }
}

/// `exp(z) - 1` without cancellation for small `|z|`.
pub fn expm1(z: C64) -> C64 {
    let (a, b) = (z.re, z.im);
    let s = (0.5 * b).sin();
    C64::new(a.exp_m1() * b.cos() - 2.0 * s * s, a.exp() * b.sin())
}

fn one_minus_exp(z: C64) -> C64 {
    -expm1(z)
}

fn check_finite(v: C64, what: &str) -> Result<C64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::DomainError(format!("{what} is not finite")))
    }
}

/// `prod_{m>=0} (1 - exp(w - (2m+1) s)) (1 - exp(-w - (2m+1) s))`, with `s > 0`.
fn symmetric_theta_product(s: f64, w: C64, policy: TruncationPolicy) -> Result<C64> {
    if !(w.re.is_finite() && w.im.is_finite()) {
        return Err(Error::DomainError("non-finite theta argument".into()));
    }
    if w.re.abs() - s > MAX_EXPONENT {
        return Err(Error::DomainError(format!(
            "theta factor overflows: |Re w| = {:.3e}",
            w.re.abs()
        )));
    }
    let lead = w.re.abs();
    let tail_den = -(-2.0 * s).exp_m1();
    let mut acc = C64::new(1.0, 0.0);
    let mut m = 0usize;
    loop {
        let damp = (2 * m + 1) as f64 * s;
        if (lead - damp).exp() / tail_den < policy.rel_tol {
            break;
        }
        if m >= policy.max_terms {
            return Err(Error::TruncationFailure {
                max_terms: policy.max_terms,
            });
        }
        acc *= one_minus_exp(w - damp) * one_minus_exp(-w - damp);
        m += 1;
    }
    check_finite(acc, "theta product")
}

/// `R+(x) = prod_{m>=0} [1 - e^{2irx - (2m+1) r a+}][1 - e^{-2irx - (2m+1) r a+}]`.
pub fn r_plus(mp: &ModularParams, x: C64) -> Result<C64> {
    symmetric_theta_product(mp.r * mp.a_plus, 2.0 * I * mp.r * x, mp.policy)
}

/// `R-(x)`: as [`r_plus`] with `a+` and `a-` interchanged.
pub fn r_minus(mp: &ModularParams, x: C64) -> Result<C64> {
    symmetric_theta_product(mp.r * mp.a_minus, 2.0 * I * mp.r * x, mp.policy)
}

/// `R+(x + y) R+(x - y)`.
pub fn r_plus_pm(mp: &ModularParams, x: C64, y: C64) -> Result<C64> {
    Ok(r_plus(mp, x + y)? * r_plus(mp, x - y)?)
}

/// `psi(x) = d/dx log R+(x + i a+/2)`.
///
/// Simple poles with unit residue on the lattice; `psi(x + pi/r) = psi(x)`,
/// `psi(x + i a+) = psi(x) - 2 i r` and `psi(-x) = -psi(x) - 2 i r`.
pub fn r_plus_logderiv(mp: &ModularParams, x: C64) -> Result<C64> {
    let pr = mp.real_period();
    let k = (x.im / mp.a_plus).round();
    let n = (x.re / pr).round();
    let x0 = x - C64::new(n * pr, k * mp.a_plus);
    let dist = x0.norm();
    if dist < POLE_THRESHOLD {
        return Err(Error::PoleProximity {
            what: "log-derivative of R+",
            distance: dist,
            threshold: POLE_THRESHOLD,
        });
    }
    let two_ir = 2.0 * I * mp.r;
    let log_p = -2.0 * mp.r * mp.a_plus;
    let p = log_p.exp();
    let lead = (2.0 * mp.r * x0.im.abs()).exp();
    let w = two_ir * x0;
    let mut sum = C64::new(0.0, 0.0);
    let mut m = 0usize;
    loop {
        let zeta = -w + m as f64 * log_p;
        let eta = w + (m + 1) as f64 * log_p;
        sum += -two_ir * zeta.exp() / expm1(zeta) + two_ir * eta.exp() / expm1(eta);
        m += 1;
        let bound = 4.0 * mp.r * lead * (m as f64 * log_p).exp() / (1.0 - p);
        if m > 1 && bound < mp.policy.rel_tol * (2.0 * mp.r + sum.norm()) {
            break;
        }
        if m >= mp.policy.max_terms {
            return Err(Error::TruncationFailure {
                max_terms: mp.policy.max_terms,
            });
        }
    }
    check_finite(sum - two_ir * k, "log-derivative of R+")
}

/// `[z] = prod_{m>=0} (1 - z p^m)(1 - p^(m+1)/z)`.
pub fn bracket(mp: &ModularParams, z: C64) -> Result<C64> {
    if z == C64::new(0.0, 0.0) || !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::DomainError(format!("bracket argument {z} is zero or not finite")));
    }
    let p = mp.p();
    let zinv = z.inv();
    let lead = z.norm().max(p * zinv.norm());
    let mut acc = C64::new(1.0, 0.0);
    let mut pm = 1.0;
    let mut m = 0usize;
    while lead * pm / (1.0 - p) >= mp.policy.rel_tol {
        if m >= mp.policy.max_terms {
            return Err(Error::TruncationFailure {
                max_terms: mp.policy.max_terms,
            });
        }
        acc *= (1.0 - z * pm) * (1.0 - zinv * (pm * p));
        pm *= p;
        m += 1;
    }
    check_finite(acc, "bracket")
}

/// Elliptic gamma function in the multiplicative convention,
/// `Gamma_{p,q}(z) = prod_{k,l>=0} (1 - p^(k+1) q^(l+1)/z) / (1 - z p^k q^l)`.
///
/// Satisfies `Gamma(q z) = [z] Gamma(z)` and `Gamma(z) Gamma(p q / z) = 1`.
pub fn elliptic_gamma_pq(mp: &ModularParams, z: C64) -> Result<C64> {
    if z == C64::new(0.0, 0.0) || !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::DomainError(format!("elliptic gamma argument {z} is zero or not finite")));
    }
    let (p, q) = (mp.p(), mp.q());
    let zinv = z.inv();
    let lead = z.norm().max(p * q * zinv.norm());
    let tol = mp.policy.rel_tol;
    let mut num = C64::new(1.0, 0.0);
    let mut den = C64::new(1.0, 0.0);
    let mut pk = 1.0;
    let mut k = 0usize;
    while lead * pk / ((1.0 - p) * (1.0 - q)) >= tol {
        if k >= mp.policy.max_terms {
            return Err(Error::TruncationFailure {
                max_terms: mp.policy.max_terms,
            });
        }
        let mut ql = 1.0;
        let mut l = 0usize;
        while lead * pk * ql / (1.0 - q) >= tol * (1.0 - p) {
            if l >= mp.policy.max_terms {
                return Err(Error::TruncationFailure {
                    max_terms: mp.policy.max_terms,
                });
            }
            let d = 1.0 - z * (pk * ql);
            let dist = d.norm() / (2.0 * mp.r);
            if dist < POLE_THRESHOLD {
                return Err(Error::PoleProximity {
                    what: "elliptic gamma Gamma_pq",
                    distance: dist,
                    threshold: POLE_THRESHOLD,
                });
            }
            den *= d;
            num *= 1.0 - zinv * (pk * p * ql * q);
            ql *= q;
            l += 1;
        }
        pk *= p;
        k += 1;
    }
    check_finite(num / den, "elliptic gamma Gamma_pq")
}

/// Elliptic gamma function in the additive convention,
/// `G(x) = prod_{m,n>=0} (1 - e^{-(2m+1) r a+ - (2n+1) r a- - 2irx}) / (1 - e^{-(2m+1) r a+ - (2n+1) r a- + 2irx})`.
///
/// Solves `G(x + i a_d/2) / G(x - i a_d/2) = R_{-d}(x)` for `d = +, -`.
pub fn elliptic_gamma_g(mp: &ModularParams, x: C64) -> Result<C64> {
    let w = 2.0 * I * mp.r * x;
    if !(w.re.is_finite() && w.im.is_finite()) {
        return Err(Error::DomainError("non-finite elliptic gamma argument".into()));
    }
    let (sp, sm) = (mp.r * mp.a_plus, mp.r * mp.a_minus);
    let (p, q) = (mp.p(), mp.q());
    let lead = w.re.abs();
    let tol = mp.policy.rel_tol;
    let mut num = C64::new(1.0, 0.0);
    let mut den = C64::new(1.0, 0.0);
    let mut m = 0usize;
    loop {
        let dm = (2 * m + 1) as f64 * sp;
        if (lead - dm - sm).exp() / ((1.0 - p) * (1.0 - q)) < tol {
            break;
        }
        if m >= mp.policy.max_terms {
            return Err(Error::TruncationFailure {
                max_terms: mp.policy.max_terms,
            });
        }
        let mut n = 0usize;
        loop {
            let damp = dm + (2 * n + 1) as f64 * sm;
            if (lead - damp).exp() / (1.0 - q) < tol * (1.0 - p) {
                break;
            }
            if n >= mp.policy.max_terms {
                return Err(Error::TruncationFailure {
                    max_terms: mp.policy.max_terms,
                });
            }
            let d = one_minus_exp(w - damp);
            let dist = d.norm() / (2.0 * mp.r);
            if dist < POLE_THRESHOLD {
                return Err(Error::PoleProximity {
                    what: "elliptic gamma G",
                    distance: dist,
                    threshold: POLE_THRESHOLD,
                });
            }
            den *= d;
            num *= one_minus_exp(-w - damp);
            n += 1;
        }
        m += 1;
    }
    check_finite(num / den, "elliptic gamma G")
}

/// `rho = lim_{x->0} x / R+(x + i a+/2) = 1 / (2 i r prod_{k>=1} (1 - p^k)^2)`.
pub fn rho_const(mp: &ModularParams) -> Result<C64> {
    let p = mp.p();
    let mut prod = 1.0;
    let mut pk = p;
    let mut k = 0usize;
    while pk / (1.0 - p) >= mp.policy.rel_tol {
        if k >= mp.policy.max_terms {
            return Err(Error::TruncationFailure {
                max_terms: mp.policy.max_terms,
            });
        }
        prod *= (1.0 - pk) * (1.0 - pk);
        pk *= p;
        k += 1;
    }
    Ok((2.0 * I * mp.r * prod).inv())
}

/// `eta = rho / (2 R+(i a- + i a+/2))`.
pub fn eta_const(mp: &ModularParams) -> Result<C64> {
    let den = r_plus(mp, I * (mp.a_minus + 0.5 * mp.a_plus))?;
    if den.norm() < 1e-12 {
        return Err(Error::DegenerateParameters(format!(
            "R+(i a- + i a+/2) = {den:.3e} vanishes; the potential's poles are not simple"
        )));
    }
    Ok(rho_const(mp)? / (2.0 * den))
}
