//! The shift coefficient V(gamma; x), the potential V_b and its residues.

use elliptic_lax::correspondence::default_couplings;
use elliptic_lax::theta::{ModularParams, C64};
use elliptic_lax::vandiejen::{shift_v, vb, vb_poles, vb_residues};

fn main() -> elliptic_lax::Result<()> {
    let mp = ModularParams::new(1.0, 0.9, 0.52)?;
    let cp = default_couplings();
    let gt = cp.tilde(&mp).gamma_tilde;
    println!("phi2 = {:.6}", cp.phi2(&mp));
    println!("gamma~ = {:?}", gt.map(|g| (g.re * 1e6).round() / 1e6));

    for x in [0.2, 0.7, 1.2] {
        let x = C64::new(x, 0.0);
        println!("x = {:.1}: V(gamma; x) = {:.10}, V_b(gamma~; x) = {:.10}", x.re, shift_v(&mp, &cp.gamma, x)?, vb(&mp, &gt, x)?);
    }

    let res = vb_residues(&mp, &gt)?;
    for (pole, rho) in vb_poles(&mp).iter().zip(res.residues.iter()) {
        println!("pole {:.6}: residue {:.10e}", pole, rho);
    }
    Ok(())
}
