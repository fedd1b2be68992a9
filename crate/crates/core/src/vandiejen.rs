//! The van Diejen side: shift coefficients `V(gamma; +-x)`, the additive
//! potential `V_b`, the operator `A+` and the gauge factors used to move
//! between sign conventions of the couplings.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::theta::{self, r_minus, r_plus, r_plus_logderiv, ModularParams, C64, I, POLE_THRESHOLD};

/// Eight couplings, the auxiliary `gamma8` and the free spectral variable `phi1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Couplings {
    pub gamma: [C64; 8],
    pub gamma8: C64,
    pub phi1: C64,
}

impl Couplings {
    /// Couplings specialized to `gamma8 = gamma7`.
    pub fn new(gamma: [C64; 8], phi1: C64) -> Self {
        Self {
            gamma,
            gamma8: gamma[7],
            phi1,
        }
    }

    pub fn from_real(gamma: [f64; 8], phi1: f64) -> Self {
        Self::new(gamma.map(|g| C64::new(g, 0.0)), C64::new(phi1, 0.0))
    }

    pub fn gamma_sum(&self) -> C64 {
        self.gamma.iter().sum()
    }

    /// `phi1 + phi2 = -a+ + a-/2 + (1/2) sum gamma`.
    pub fn phi2(&self, mp: &ModularParams) -> C64 {
        -mp.a_plus() + 0.5 * mp.a_minus() + 0.5 * self.gamma_sum() - self.phi1
    }

    pub fn with_phi1(&self, phi1: C64) -> Self {
        Self { phi1, ..*self }
    }

    pub fn tilde(&self, mp: &ModularParams) -> TildeCouplings {
        TildeCouplings::new(self, mp)
    }
}

/// `gamma~_mu = gamma_mu` for `mu <= 6`, `gamma~_7 = gamma_7 - a-`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TildeCouplings {
    pub gamma_tilde: [C64; 8],
}

impl TildeCouplings {
    pub fn new(c: &Couplings, mp: &ModularParams) -> Self {
        let mut gamma_tilde = c.gamma;
        gamma_tilde[7] -= mp.a_minus();
        Self { gamma_tilde }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shift {
    /// `exp(-i a- d/dx)`, i.e. `f(x) -> f(x - i a-)`.
    Minus,
    /// `exp(+i a- d/dx)`.
    Plus,
}

fn check_shift_denominators(mp: &ModularParams, x: C64) -> Result<()> {
    // zeros of R+(2x + i a+/2) and R+(2x + i a+/2 - i a-)
    let d = mp
        .half_lattice_distance(x)
        .min(mp.half_lattice_distance(x - 0.5 * I * mp.a_minus()));
    if d < POLE_THRESHOLD {
        return Err(Error::PoleProximity {
            what: "shift coefficient",
            distance: d,
            threshold: POLE_THRESHOLD,
        });
    }
    Ok(())
}

fn shift_denominator(mp: &ModularParams, x: C64) -> Result<C64> {
    let base = 2.0 * x + 0.5 * I * mp.a_plus();
    Ok(r_plus(mp, base)? * r_plus(mp, base - I * mp.a_minus())?)
}

/// `V(gamma; x) = prod_mu R+(x - i gamma_mu - i a-/2) / [R+(2x + i a+/2) R+(2x + i a+/2 - i a-)]`.
pub fn shift_v(mp: &ModularParams, gamma: &[C64; 8], x: C64) -> Result<C64> {
    check_shift_denominators(mp, x)?;
    let mut num = C64::new(1.0, 0.0);
    for g in gamma {
        num *= r_plus(mp, x - I * g - 0.5 * I * mp.a_minus())?;
    }
    Ok(num / shift_denominator(mp, x)?)
}

/// As [`shift_v`] with the signs of `gamma_0..gamma_3` flipped.
pub fn shift_v_tilde(mp: &ModularParams, gamma: &[C64; 8], x: C64) -> Result<C64> {
    let mut flipped = *gamma;
    for g in flipped.iter_mut().take(4) {
        *g = -*g;
    }
    shift_v(mp, &flipped, x)
}

/// Pole locations `x_n = -i a-/2 + {0, pi/2r, i a+/2, i a+/2 + pi/2r}`.
pub fn vb_poles(mp: &ModularParams) -> [C64; 4] {
    let h = PI / (2.0 * mp.r());
    let base = -0.5 * I * mp.a_minus();
    let half = 0.5 * I * mp.a_plus();
    [base, base + h, base + half, base + half + h]
}

/// Residues of `V_b` at `x_0..x_3`; the residue at `-x_n` is `-rho_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VbResidues {
    pub poles: [C64; 4],
    pub residues: [C64; 4],
}

pub fn vb_residues(mp: &ModularParams, gamma: &[C64; 8]) -> Result<VbResidues> {
    let eta = theta::eta_const(mp)?;
    let h = PI / (2.0 * mp.r());
    let half = 0.5 * I * mp.a_plus();
    let prod = |shift: C64| -> Result<C64> {
        let mut acc = C64::new(1.0, 0.0);
        for g in gamma {
            acc *= r_plus(mp, I * g + shift)?;
        }
        Ok(acc)
    };
    let sum: C64 = gamma.iter().sum();
    let twist = (-2.0 * mp.r() * mp.a_plus() - mp.r() * sum).exp();
    let residues = [
        eta * prod(C64::new(0.0, 0.0))?,
        eta * prod(C64::new(h, 0.0))?,
        eta * twist * prod(half)?,
        eta * twist * prod(half + h)?,
    ];
    Ok(VbResidues {
        poles: vb_poles(mp),
        residues,
    })
}

/// The even elliptic potential with simple poles at `+-x_n` and residues `+-rho_n`,
/// realized as `sum_n rho_n (psi(x - x_n) - psi(x + x_n))`.
///
/// The additive constant is zero in this representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VbPotential {
    mp: ModularParams,
    data: VbResidues,
}

impl VbPotential {
    pub fn new(mp: &ModularParams, gamma: &[C64; 8]) -> Result<Self> {
        Ok(Self {
            mp: *mp,
            data: vb_residues(mp, gamma)?,
        })
    }

    pub fn residues(&self) -> &VbResidues {
        &self.data
    }

    pub fn eval(&self, x: C64) -> Result<C64> {
        let mut acc = C64::new(0.0, 0.0);
        for (xn, rho) in self.data.poles.iter().zip(self.data.residues.iter()) {
            let a = r_plus_logderiv(&self.mp, x - xn).map_err(|e| relabel(e, "V_b"))?;
            let b = r_plus_logderiv(&self.mp, x + xn).map_err(|e| relabel(e, "V_b"))?;
            acc += rho * (a - b);
        }
        Ok(acc)
    }
}

fn relabel(e: Error, what: &'static str) -> Error {
    match e {
        Error::PoleProximity {
            distance, threshold, ..
        } => Error::PoleProximity {
            what,
            distance,
            threshold,
        },
        other => other,
    }
}

pub fn vb(mp: &ModularParams, gamma: &[C64; 8], x: C64) -> Result<C64> {
    VbPotential::new(mp, gamma)?.eval(x)
}

/// `(A+ f)(x) = V(x) f(x - i a-) + V(-x) f(x + i a-) + V_b(x) f(x)`.
pub fn apply_a_plus<F>(mp: &ModularParams, gamma: &[C64; 8], f: F, x: C64) -> Result<C64>
where
    F: Fn(C64) -> C64,
{
    let step = I * mp.a_minus();
    Ok(shift_v(mp, gamma, x)? * f(x - step) + shift_v(mp, gamma, -x)? * f(x + step) + vb(mp, gamma, x)? * f(x))
}

/// Multiplier picked up by the `Shift` part of `A+` under conjugation with
/// `G_mu(x) = G(x + i gamma_mu) / G(x - i gamma_mu)`.
pub fn gauge_ratio(mp: &ModularParams, gamma_mu: C64, x: C64, shift: Shift) -> Result<C64> {
    let h = 0.5 * I * mp.a_minus();
    let g = I * gamma_mu;
    let (num, den) = match shift {
        Shift::Minus => (r_plus(mp, x - g - h)?, r_plus(mp, x + g - h)?),
        Shift::Plus => (r_plus(mp, x + g + h)?, r_plus(mp, x - g + h)?),
    };
    if den.norm() < POLE_THRESHOLD * num.norm().max(1.0) {
        return Err(Error::PoleProximity {
            what: "gauge ratio",
            distance: den.norm(),
            threshold: POLE_THRESHOLD,
        });
    }
    Ok(num / den)
}

/// `g(x) = R-(x - i a-/2) R-(x + i a-/2)`; conjugation by `g` multiplies the
/// `-+` shift coefficient by `q^{-1} e^{+-4irx}`.
pub fn gauge_g(mp: &ModularParams, x: C64) -> Result<C64> {
    let h = 0.5 * I * mp.a_minus();
    Ok(r_minus(mp, x - h)? * r_minus(mp, x + h)?)
}
