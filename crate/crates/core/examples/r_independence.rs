//! A limit of binomial averages at r carries over to every smaller r'.

use eulersum::{parse_sequence, run_r_independence_experiment, ExperimentConfig};

fn main() -> eulersum::Result<()> {
    let cfg = ExperimentConfig::new(200).with_tolerance(1e-6);
    for text in ["conv(const:1;finite:1/3,1/3,1/3)", "geom:-1", "geom:-1/2+1/2i"] {
        let x = parse_sequence::<f64>(text)?;
        let report = run_r_independence_experiment(&x, 0.7, 0.3, cfg)?;
        println!("{text}");
        println!("  r  = 0.7: {}", report.at_r);
        println!("  r' = 0.3: {}", report.at_r_prime);
        println!("  {} the same limit", report.verdict);
    }
    Ok(())
}
