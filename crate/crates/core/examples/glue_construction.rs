//! Glue local solutions on nested polydisks into a convergent sequence of
//! global polynomial solutions.

use bezout::parse::parse_poly;
use bezout::{
    cauchy_bound, run_glue, solve_bezout, AntisymMatrix, DiskSchedule, LocalSolutionProvider,
    PolyTuple, TermOrder,
};

fn main() -> bezout::Result<()> {
    let f = PolyTuple::new(vec![parse_poly("z1*z2 - 1", 2)?, parse_poly("z1", 2)?])?;
    let base = solve_bezout(&f, TermOrder::GrevLex)?;

    let stages = 4;
    let mut perturbations = Vec::new();
    for k in 1..=stages + 1 {
        let mut h = AntisymMatrix::zero(2, 2);
        h.set(
            0,
            1,
            parse_poly(&format!("(z1 + z2)^{k} / 10^{}", 3 * k), 2)?,
        )?;
        perturbations.push(h);
    }
    let provider = LocalSolutionProvider::new(base, perturbations)?;
    let schedule = DiskSchedule::standard(2, stages + 1);
    let trace = run_glue(&provider, &schedule, stages)?;

    for stage in &trace.stages[1..] {
        println!(
            "stage {}: deg H = {}, deg P = {}, bound = {}",
            stage.k,
            stage.h.max_entry_degree(),
            stage.p.max_entry_degree(),
            stage.bound
        );
    }
    for m in 0..stages {
        println!(
            "cauchy({m}, {stages}) = {}",
            cauchy_bound(&trace, m, stages)?
        );
    }
    let g = &trace.partial_sums[stages];
    println!("g_{stages} . f = {}", g.dot(&trace.f)?);
    Ok(())
}
