//! W-weighted averages, their convolution form and composition with binomial averages.

use eulersum::{
    equivalence_residual, lambda_profile_of, parse_sequence, parse_weight, power_boundary_term,
    ratio_power_check, render_complex, run_weighted_composition_experiment, weighted_average,
    ExperimentConfig, Rational,
};

fn main() -> eulersum::Result<()> {
    let pow2 = parse_weight::<Rational>("pow:2")?;
    let x = parse_sequence::<Rational>("periodic:3,-1,1/2")?;
    let profile = lambda_profile_of(&pow2)?;
    println!("W = 2^N gives lambda = {profile}");
    for n in [1, 5, 10] {
        println!(
            "N={n}: average {}, residual {}, -lambda_N x_0 = {}",
            render_complex(&weighted_average(&pow2, &x, n)?),
            render_complex(&equivalence_residual(&pow2, &x, n)?),
            render_complex(&power_boundary_term(&profile, &x, n)?)
        );
    }

    let pow_e = parse_weight::<f64>("pow:e")?;
    let alt = parse_sequence::<f64>("geom:-1")?;
    for n in [20, 60] {
        let res = equivalence_residual(&pow_e, &alt, n)?;
        println!("W = e^N, N={n}: |residual| = {:.3e}", res.norm());
    }

    let linear = parse_weight::<Rational>("linear")?;
    let check = ratio_power_check(&linear, 2, 100)?;
    println!(
        "W(N-2)/W(N) at N=100 is within {} of 1",
        check.last_deviation().unwrap()
    );

    // Cesaro means of (-1)^n, then binomial averages: the estimate only creeps toward 0.
    let linear = parse_weight::<f64>("linear")?;
    for n_max in [100, 200, 400] {
        let rep = run_weighted_composition_experiment(
            &linear,
            &alt,
            0.5,
            ExperimentConfig::new(n_max),
        )?;
        println!("N_max={n_max}: {}", rep.composed);
    }
    Ok(())
}
