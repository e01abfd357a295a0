//! Shifting a sequence right does not change the limit of its binomial averages.

use eulersum::{parse_sequence, run_shift_invariance_experiment, ExperimentConfig};

fn main() -> eulersum::Result<()> {
    let x = parse_sequence::<f64>("sum(const:1;geom:-1)")?;
    let report = run_shift_invariance_experiment(&x, 5, 0.5, ExperimentConfig::new(100))?;
    println!("E_N x        -> {}", report.base);
    for (j, est) in report.shifted.iter().enumerate() {
        println!("E_N T^{} x    -> {est}", j + 1);
    }
    println!("{} shift invariance (largest gap {:.2e})", report.verdict, report.max_gap);
    Ok(())
}
