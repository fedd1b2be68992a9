//! V_b(gamma~; x) - Z(x) is constant; its value E, read off two ways.

use elliptic_lax::correspondence::{Correspondence, CorrespondenceConfig};
use elliptic_lax::theta::C64;

fn main() -> elliptic_lax::Result<()> {
    let c = Correspondence::new(&CorrespondenceConfig::default())?;
    for x in [0.1, 0.5, 0.9, 1.4] {
        let x = C64::new(x, 0.0);
        println!("x = {:.1}: V_b - Z = {:.14}", x.re, c.delta(x)?.re);
    }
    let k = c.additive_constancy()?;
    println!("E (median over {} points) = {:.14}", k.evaluated, k.e_extracted.re);
    println!("max deviation / max(1, |E|) = {:.2e}", k.max_deviation);
    let xs = c.energy_from_xs()?;
    println!("E (from x_s = {:.8}) = {:.14}", xs.x_s, xs.energy.re);
    Ok(())
}
