//! E as a function of phi1, with the approach to -gamma7 and +gamma7.

use elliptic_lax::correspondence::{phi1_values, sweep_report, CorrespondenceConfig};
use elliptic_lax::report::sweep_table;

fn main() {
    let cfg = CorrespondenceConfig::default();
    let s = sweep_report(&cfg, &phi1_values(-0.4, 0.4, 17));
    print!("{}", sweep_table(&s));
}
