//! Binomial weights, averages and the recurrence and sup-bound checks.

use eulersum::{
    check_k_step_expansion, check_one_step_recurrence, check_sup_bound, parse_sequence,
    render_complex, weights_row, BinomialRow, Rational,
};

fn main() -> eulersum::Result<()> {
    let third: Rational = "1/3".parse().unwrap();

    let row = weights_row(4, third.clone())?;
    let shown: Vec<_> = row.weights().iter().map(|w| w.to_string()).collect();
    println!("weights N=4, r=1/3: [{}], total {}", shown.join(", "), row.total());

    let x = parse_sequence::<Rational>("periodic:1,-1,1/2")?;
    for n in 1..=5 {
        let one = check_one_step_recurrence(&x, n, third.clone())?;
        let k = check_k_step_expansion(&x, n, 3, third.clone())?;
        println!(
            "N={n}: one-step residual {}, 3-step residual {}",
            render_complex(&one),
            render_complex(&k)
        );
    }

    let report = check_sup_bound(&parse_sequence::<f64>("geom:0.9i")?, 100, 0.75)?;
    println!(
        "|E_N(Tx)| <= max_(M<N) |E_M x| up to N=100: {} (smallest margin {:.3e})",
        report.holds,
        report.min_margin()
    );

    // Float rows stay normalised far out.
    let mut row = BinomialRow::first(0.3)?;
    for _ in 0..10_000 {
        row.advance();
    }
    println!("N=10000, r=0.3: |sum - 1| = {:.2e}", (row.total() - 1.0).abs());
    Ok(())
}
