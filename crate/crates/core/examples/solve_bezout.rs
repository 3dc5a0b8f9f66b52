//! Decide whether generators have a common zero and extract a Bezout certificate.

use bezout::parse::parse_poly;
use bezout::{buchberger, solve_bezout, Error, PolyTuple, TermOrder};

fn generators(texts: &[&str], n: usize) -> bezout::Result<PolyTuple> {
    PolyTuple::new(
        texts
            .iter()
            .map(|t| parse_poly(t, n))
            .collect::<bezout::Result<_>>()?,
    )
}

fn main() -> bezout::Result<()> {
    let f = generators(&["z1*z2 - 1", "z1"], 2)?;
    let basis = buchberger(&f, TermOrder::GrevLex)?;
    println!(
        "reduced basis: {:?}",
        basis
            .basis
            .iter()
            .map(|b| b.to_string())
            .collect::<Vec<_>>()
    );

    let cert = solve_bezout(&f, TermOrder::GrevLex)?;
    for (g, fj) in cert.g.iter().zip(cert.f.iter()) {
        println!("  ({g}) * ({fj})");
    }
    println!("sums to 1: {}", cert.verified);

    let common_zero = generators(&["z1 - 1", "z2 - 1"], 2)?;
    match solve_bezout(&common_zero, TermOrder::GrevLex) {
        Err(Error::NotUnitIdeal) => {
            println!("(z1 - 1, z2 - 1) vanish together at (1, 1): no certificate")
        }
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
