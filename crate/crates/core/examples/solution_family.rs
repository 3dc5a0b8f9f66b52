//! Every solution of x a^t = 1 differs from a fixed one by aH with H antisymmetric.

use bezout::parse::parse_poly;
use bezout::{annihilation_residual, apply_shift, difference_matrix, AntisymMatrix, PolyTuple};

fn tuple(texts: &[&str]) -> bezout::Result<PolyTuple> {
    PolyTuple::new(
        texts
            .iter()
            .map(|t| parse_poly(t, 1))
            .collect::<bezout::Result<_>>()?,
    )
}

fn main() -> bezout::Result<()> {
    let a = tuple(&["z", "1 - z", "z^2"])?;
    let x = tuple(&["1", "1", "0"])?;
    println!("x . a = {}", x.dot(&a)?);

    let mut h = AntisymMatrix::zero(3, 1);
    h.set(0, 1, parse_poly("z", 1)?)?;
    h.set(1, 2, parse_poly("1 + i*z", 1)?)?;
    println!("(aH) . a = {}", annihilation_residual(&a, &h)?);

    let y = apply_shift(&a, &x, &h)?;
    println!(
        "y = x + aH = [{}]",
        y.iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    println!("y . a = {}", y.dot(&a)?);

    let back = difference_matrix(&x, &y)?;
    println!(
        "recovered H reproduces y: {}",
        apply_shift(&a, &x, &back)? == y
    );
    for ((j, k), p) in back.upper_entries() {
        println!("  H[{}][{}] = {p}", j + 1, k + 1);
    }
    Ok(())
}
