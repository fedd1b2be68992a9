//! The W-/P and W+/P shift coefficients against V(gamma~; -x) and V(gamma~; x).

use elliptic_lax::correspondence::{Correspondence, CorrespondenceConfig, NegativeControl};
use elliptic_lax::theta::C64;

fn main() -> elliptic_lax::Result<()> {
    let cfg = CorrespondenceConfig::default();
    let good = Correspondence::new(&cfg)?;
    let bad = Correspondence::with_control(&cfg, Some(NegativeControl::KPq))?;
    println!("{:>6}  {:>12}  {:>12}  {:>12}", "x", "minus", "plus", "k = pq");
    for x in [0.15, 0.4, 0.85, 1.3] {
        let x = C64::new(x, 0.0);
        let rel = |(a, b): (C64, C64)| (a - b).norm() / b.norm();
        println!(
            "{:>6.2}  {:>12.2e}  {:>12.2e}  {:>12.2e}",
            x.re,
            rel(good.shift_identity_minus(x)?),
            rel(good.shift_identity_plus(x)?),
            rel(bad.shift_identity_minus(x)?),
        );
    }
    Ok(())
}
