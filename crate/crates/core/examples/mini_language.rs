//! The text forms accepted by the command line, parsed and printed back.

use eulersum::{parse_profile, parse_sequence, parse_weight, render_complex, Rational};

fn main() -> eulersum::Result<()> {
    for text in [
        "const:1",
        "geom:-1",
        "periodic:1,-1",
        "shiftR:2(geom:0.5)",
        "scale:1/2+i(periodic:1,0)",
        "sum(const:1;geom:-1)",
        "conv(const:1;finite:1/3,1/3,1/3)",
        "conv(shiftL:1(geom:1/2);geomtail:c=1/2,ratio=1/2)",
    ] {
        let x = parse_sequence::<Rational>(text)?;
        let values: Vec<_> = x.prefix(5)?.iter().map(render_complex).collect();
        println!("{text:<52} -> {x}  [{}]", values.join(", "));
    }

    let p = parse_profile::<Rational>("ratiotel:L=1/2")?;
    println!("{p}: sum = {}", render_complex(&p.total_sum()));

    let w = parse_weight::<f64>("pow:e")?;
    println!("{w}: W(3) = {}", w.value(3)?);

    match parse_sequence::<Rational>("geom:e") {
        Err(err) => println!("geom:e in exact mode: {err}"),
        Ok(x) => println!("unexpected: {x}"),
    }
    Ok(())
}
