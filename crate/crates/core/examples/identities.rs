//! Exhaustive checks of the alternating binomial sum and Chu-Vandermonde.

use eulersum::{
    alternating_sum, chu_vandermonde_sweep, find_star_violation, verify_ell_one_slice,
    verify_star_star,
};

fn main() -> eulersum::Result<()> {
    let n_max = 25;
    let closed = verify_star_star(n_max)?;
    println!(
        "S(n,k,l) = C(n-k-1, l-1): {} cases, {} violations",
        closed.cases.len(),
        closed.violation_count()
    );

    if let Some(v) = find_star_violation(n_max)? {
        println!("S(n,k,l) = 1 fails first at ({}, {}, {}) with S = {}", v.n, v.k, v.l, v.lhs);
    }
    println!("S(3,0,2) = {}", alternating_sum(3, 0, 2)?);

    let slice = verify_ell_one_slice(n_max)?;
    println!("l = 1 slice: all equal to 1: {}", slice.all_hold());

    let chu = chu_vandermonde_sweep(12)?;
    println!("Chu-Vandermonde: {} cases, all hold: {}", chu.cases.len(), chu.all_hold());
    Ok(())
}
