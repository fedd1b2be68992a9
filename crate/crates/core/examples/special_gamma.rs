//! Couplings (0, i pi/2r, a+/2, a+/2 + i pi/2r, ...) make Z constant; a small
//! perturbation does not.

use elliptic_lax::correspondence::{special_gamma_check, GridSpec};
use elliptic_lax::theta::{ModularParams, C64};

fn main() -> elliptic_lax::Result<()> {
    let mp = ModularParams::new(1.0, 0.9, 0.52)?;
    let rest = [0.31, 0.37, 0.41, 0.43].map(|g| C64::new(g, 0.0));
    let phi1 = C64::new(-0.05, 0.0);
    for perturb in [0.0, 1e-4, 1e-2] {
        let s = special_gamma_check(&mp, rest, phi1, &GridSpec::default(), perturb)?;
        println!("gamma2 shift {perturb:>6.0e}: Z(x_s) = {:.10e}, variation {:.2e}", s.z_xs.re, s.max_deviation);
    }
    Ok(())
}
