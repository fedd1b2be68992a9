//! The full identity suite and the kernel self-check, as printed by the CLI.

use elliptic_lax::correspondence::{selfcheck, verify, CorrespondenceConfig};
use elliptic_lax::report::summary_table;

fn main() -> elliptic_lax::Result<()> {
    let cfg = CorrespondenceConfig::default();
    print!("{}", summary_table(&selfcheck(&cfg.mp, &cfg.tolerances)));
    println!();
    print!("{}", summary_table(&verify(&cfg, None)?));
    Ok(())
}
