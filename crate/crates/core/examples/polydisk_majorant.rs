//! Polynomial arithmetic, truncation and sup-norm majorants on a polydisk.

use bezout::arith::rational;
use bezout::parse::parse_poly;
use bezout::{GaussianRational, Polydisk};

fn main() -> bezout::Result<()> {
    let p = parse_poly("(1-2i)*z1^2*z2 + 3*z1 - z2/2 + 4", 2)?;
    println!("p = {p}");
    println!("deg p = {}", p.total_degree());

    let (head, tail) = p.truncate_total_degree(1);
    println!("degree <= 1 part: {head}");
    println!("remainder:        {tail}");

    let z = [
        GaussianRational::from_parts(1, 2, 1, 2),
        GaussianRational::from_int(-1),
    ];
    let value = p.evaluate(&z)?;
    let disk = Polydisk::new(2, rational(1, 1))?;
    println!("p(1/2 + i/2, -1) = {value}");
    println!("|p(z)| <= {}", value.modulus_upper_bound());
    println!(
        "majorant on the unit polydisk = {}",
        p.polydisk_majorant(&disk)
    );
    Ok(())
}
