//! Exact arithmetic in Q(i) and the two modulus upper bounds.

use bezout::{GaussianRational, ModulusBound};

fn main() {
    let a = GaussianRational::from_parts(1, 2, -3, 4);
    let b = GaussianRational::from_parts(2, 1, 1, 3);

    println!("a = {a}, b = {b}");
    println!("a + b = {}", &a + &b);
    println!("a * b = {}", &a * &b);
    println!("a / b = {}", a.checked_div(&b).expect("b is nonzero"));
    println!("|a|^2 = {}", a.norm_sqr());
    for policy in [ModulusBound::Sum, ModulusBound::Sqrt] {
        println!(
            "|a| <= {} ({})",
            a.modulus_upper_bound_with(policy),
            policy.as_str()
        );
    }
}
