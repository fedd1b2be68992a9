//! The kernel R+, its multiplicative form [z], and the elliptic gamma function.

use elliptic_lax::theta::{bracket, elliptic_gamma_g, elliptic_gamma_pq, r_minus, r_plus, rho_const, ModularParams, C64, I};

fn main() -> elliptic_lax::Result<()> {
    let mp = ModularParams::new(1.0, 0.9, 0.52)?;
    println!("p = {:.6}, q = {:.6}, real period = {:.6}", mp.p(), mp.q(), mp.real_period());

    let x = C64::new(0.3, 0.2);
    println!("R+(x) = {:.15}", r_plus(&mp, x)?);
    println!("R-(x) = {:.15}", r_minus(&mp, x)?);

    let h = 0.5 * I * mp.a_plus();
    let lhs = r_plus(&mp, x + h)?;
    let rhs = -(-2.0 * I * mp.r() * x).exp() * r_plus(&mp, x - h)?;
    println!("R+(x + i a+/2) + e^(-2irx) R+(x - i a+/2): |diff| = {:.2e}", (lhs - rhs).norm());

    let z = mp.z_of_x(x);
    println!("[z] = {:.15}", bracket(&mp, z)?);
    println!("Gamma(z) = {:.15}", elliptic_gamma_pq(&mp, z)?);
    println!("G(x)     = {:.15}", elliptic_gamma_g(&mp, x)?);

    let hm = 0.5 * I * mp.a_minus();
    let ratio = elliptic_gamma_g(&mp, x + hm)? / elliptic_gamma_g(&mp, x - hm)?;
    println!("G(x + i a-/2) / G(x - i a-/2) - R+(x): {:.2e}", (ratio - r_plus(&mp, x)?).norm());
    println!("rho = {:.15}", rho_const(&mp)?);
    Ok(())
}
