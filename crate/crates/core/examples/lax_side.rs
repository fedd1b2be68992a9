//! Parameters of the Lax pair derived from the couplings, and the functions
//! P(z), R(z) in both evaluation modes.

use elliptic_lax::correspondence::default_couplings;
use elliptic_lax::lax::{derive_lax_params, LaxSide, RMode};
use elliptic_lax::theta::{ModularParams, C64};

fn main() -> elliptic_lax::Result<()> {
    let mp = ModularParams::new(1.0, 0.9, 0.52)?;
    let cp = default_couplings();
    let lp = derive_lax_params(&mp, &cp)?;
    println!("k = {:.6e}  lambda = {:.6}  nu = {:.6}", lp.k, lp.lambda, lp.nu);
    println!("xi1 = {:.6}  xi2 = {:.6}  ell = {:.6e}", lp.xi1, lp.xi2, lp.ell);

    let side = LaxSide::new(&mp, &cp, lp)?;
    println!("c1 = {:.10e}  c2 = {:.10e}", side.c_n(1)?, side.c_n(2)?);

    let z = C64::new(0.3, 0.2);
    let s = side.r_of_z(z, RMode::SSum)?;
    let e = side.r_of_z(z, RMode::Eliminated)?;
    println!("P(z) = {:.12}", side.p_of_z(z)?);
    println!("R(z) via S-sum      = {:.12e}", s);
    println!("R(z) via elimination = {:.12e}  (rel. diff {:.1e})", e, (s - e).norm() / s.norm());
    println!("x_s = {:.10}  Z(x_s) = {:.10e}", side.x_s(), side.z_at_xs_closed()?);
    Ok(())
}
