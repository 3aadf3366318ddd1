//! Run the verification suite on a few generated instances.

use dlpencil::cli::verify::{run_batch, VerifyConfig};

fn main() {
    let cfg = VerifyConfig {
        seed: 11,
        count: 6,
        ..VerifyConfig::default()
    };
    for r in run_batch(&cfg) {
        let failed: Vec<&str> = r
            .checks
            .iter()
            .filter(|c| c.status == "fail")
            .map(|c| c.name.as_str())
            .collect();
        println!(
            "instance {} seed {:>20} omega {:?}: {} {:?}",
            r.instance, r.seed, r.omega, r.status, failed
        );
    }

    let violated = VerifyConfig {
        inject_violation: true,
        count: 3,
        ..cfg
    };
    for r in run_batch(&violated) {
        println!(
            "instance {}: {} observed {}",
            r.instance,
            r.status,
            r.observed.unwrap_or_default()
        );
    }
}
