//! The convolved sequence (1/3, 2/3, 1, 1, ...) under r = 1/2: its binomial
//! averages tend to 1, not to the r-dependent value 5/6.

use eulersum::{
    binomial_sweep, parse_profile, parse_sequence, render_complex, run_main_theorem_experiment,
    ExperimentConfig, Rational,
};

fn main() -> eulersum::Result<()> {
    let x = parse_sequence::<Rational>("const:1")?;
    let weights = parse_profile::<Rational>("finite:1/3,1/3,1/3")?;
    let half: Rational = "1/2".parse().unwrap();

    let y = x.clone().convolved(weights.clone());
    let prefix: Vec<_> = y.prefix(4)?.iter().map(render_complex).collect();
    println!("lambda * x = ({}, ...)", prefix.join(", "));

    // Exact averages: E_N = 1 - (N + 2) / (3 * 2^N).
    for (n, e) in binomial_sweep(&y, 8, half.clone())?.iter().enumerate() {
        println!("E_{n} = {}", render_complex(e));
    }

    let report = run_main_theorem_experiment(&x, &weights, half, ExperimentConfig::new(60))?;
    println!("estimate   {}", report.convolved);
    println!("correct    {}", render_complex(&report.correct_rhs));
    println!("incorrect  {}", render_complex(&report.incorrect_rhs));
    println!("{} L*sum(lambda)", report.verdict);
    Ok(())
}
