//! Residues by trapezoidal quadrature on a small circle.

use std::f64::consts::PI;

use crate::error::Result;
use crate::theta::{C64, I};

pub const DEFAULT_RADIUS: f64 = 1e-4;
pub const DEFAULT_POINTS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidueEstimate {
    pub value: C64,
    /// Largest `|f|` seen on the contour.
    pub scale: f64,
    /// `|residue(radius) - residue(radius/2)|`.
    pub spread: f64,
}

/// `(1/2 pi i) \oint f` over `|x - center| = radius` with `n` equispaced nodes.
///
/// Returns the residue together with the largest `|f|` sampled.
pub fn trapezoid<F>(f: F, center: C64, radius: f64, n: usize) -> Result<(C64, f64)>
where
    F: Fn(C64) -> Result<C64>,
{
    let mut acc = C64::new(0.0, 0.0);
    let mut scale = 0.0f64;
    for k in 0..n {
        let e = (I * (2.0 * PI * k as f64 / n as f64)).exp();
        let v = f(center + radius * e)?;
        scale = scale.max(v.norm());
        acc += v * e;
    }
    Ok((acc * (radius / n as f64), scale))
}

/// Residue at two radii; the second serves as a consistency check.
pub fn residue<F>(f: F, center: C64) -> Result<ResidueEstimate>
where
    F: Fn(C64) -> Result<C64>,
{
    let (value, scale) = trapezoid(&f, center, DEFAULT_RADIUS, DEFAULT_POINTS)?;
    let (half, _) = trapezoid(&f, center, 0.5 * DEFAULT_RADIUS, DEFAULT_POINTS)?;
    Ok(ResidueEstimate {
        value,
        scale,
        spread: (value - half).norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_pole_and_analytic_part() {
        let c = C64::new(0.3, -0.2);
        let f = |x: C64| Ok(C64::new(2.0, 1.0) / (x - c) + (x * x).exp());
        let r = residue(f, c).unwrap();
        assert!((r.value - C64::new(2.0, 1.0)).norm() < 1e-13);
        assert!(r.spread < 1e-12);
    }

    #[test]
    fn analytic_function_has_no_residue() {
        let (v, scale) = trapezoid(|x: C64| Ok(x.sin() / (x - 3.0)), C64::new(0.0, 0.0), 1e-3, 64).unwrap();
        assert!(v.norm() < 1e-16 * scale.max(1.0));
    }
}
