//! Independent re-checking of a serialized glue trace.
//!
//! Nothing derived in the trace is trusted: every identity and bound is
//! recomputed from the stored polynomials using only the ring, matrix and
//! majorant primitives. The construction code in [`crate::glue`] is not used.

use num_traits::{One, Signed, Zero};

use crate::arith::{parse_rational, pow2_neg, ModulusBound, Rational};
use crate::error::{Error, Result};
use crate::json::{tuple_from_json, upper_from_json, TraceJson};
use crate::multipoly::{PolyTuple, Polydisk};
use crate::param::AntisymMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    /// Index of the last stage.
    pub max_stage: usize,
    /// Names of the checks that passed, in order.
    pub checks: Vec<String>,
}

struct Stage {
    a: PolyTuple,
    h: AntisymMatrix,
    p: AntisymMatrix,
    bound: Rational,
}

fn fail(check: impl Into<String>) -> Error {
    Error::VerificationFailure(check.into())
}

/// Decodes `doc` and re-verifies every identity.
///
/// Malformed data yields an input error; a failed identity yields
/// [`Error::VerificationFailure`] naming the first failing check.
pub fn verify_trace(doc: &TraceJson) -> Result<VerifyReport> {
    let f = tuple_from_json(&doc.f)?;
    let (size, n) = (f.len(), f.n());
    let policy: ModulusBound = doc.modulus_bound.parse()?;
    let radii = doc
        .schedule
        .iter()
        .map(|r| parse_rational(r))
        .collect::<Result<Vec<Rational>>>()?;
    let tuple = |entries: &[crate::json::PolyJson]| -> Result<PolyTuple> {
        let t = tuple_from_json(entries)?;
        f.check_compatible(&t)?;
        Ok(t)
    };
    let matrix = |upper, what: &str, k: usize| -> Result<AntisymMatrix> {
        upper_from_json(upper, size, n).map_err(|e| match e {
            Error::NotAntisymmetric { row, col } => {
                fail(format!("antisymmetry of {what}_{k}: entry ({row},{col}) is not in the strict upper triangle"))
            }
            other => other,
        })
    };
    let mut stages = Vec::with_capacity(doc.stages.len());
    for s in &doc.stages {
        stages.push(Stage {
            a: tuple(&s.a)?,
            h: matrix(&s.h_upper, "H", s.k)?,
            p: matrix(&s.p_upper, "P", s.k)?,
            bound: parse_rational(&s.bound)?,
        });
    }
    let a_final = tuple(&doc.a_final)?;
    let partial_sums = doc
        .partial_sums
        .iter()
        .map(|g| tuple(g))
        .collect::<Result<Vec<_>>>()?;

    let mut checks = Vec::new();
    let mut pass = |name: String| checks.push(name);

    if stages.is_empty() {
        return Err(fail("trace has no stages"));
    }
    let max_stage = stages.len() - 1;
    for (pos, s) in doc.stages.iter().enumerate() {
        if s.k != pos {
            return Err(fail(format!(
                "stage numbering: position {pos} holds k = {}",
                s.k
            )));
        }
    }
    pass("stage numbering".into());

    if radii.len() < max_stage + 1 {
        return Err(fail(format!(
            "schedule: {} radii for {} stages",
            radii.len(),
            max_stage
        )));
    }
    if !radii[0].is_positive() || radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(fail(
            "schedule: radii must be positive and strictly increasing",
        ));
    }
    pass("schedule".into());
    let disk = |k: usize| Polydisk::new(n, radii[k - 1].clone());

    let s0 = &stages[0];
    if !s0.a.is_zero() || !s0.h.is_zero() || !s0.p.is_zero() || !s0.bound.is_zero() {
        return Err(fail("stage 0: a_0, H_0, P_0 and bound_0 must all be zero"));
    }
    pass("stage 0".into());

    let solution = |k: usize| {
        if k == stages.len() {
            &a_final
        } else {
            &stages[k].a
        }
    };
    for k in 1..=max_stage + 1 {
        if !solution(k).dot(&f)?.is_one() {
            return Err(fail(format!("solution a_{k}: sum_j (a_{k})_j f_j != 1")));
        }
    }
    pass("solutions".into());

    for (k, stage) in stages.iter().enumerate().skip(1) {
        let shifted = solution(k).checked_add(&stage.h.left_mul(&f)?)?;
        if &shifted != solution(k + 1) {
            return Err(fail(format!(
                "transition {k}: a_{} != a_{k} + f H_{k}",
                k + 1
            )));
        }
    }
    pass("transitions".into());

    let remainder =
        |k: usize| -> Result<PolyTuple> { stages[k].h.checked_sub(&stages[k].p)?.left_mul(&f) };
    for (k, stage) in stages.iter().enumerate().skip(1) {
        let recomputed = remainder(k)?.tuple_majorant_with(&disk(k + 1)?, policy);
        let claimed = &stage.bound;
        if claimed < &recomputed {
            return Err(fail(format!(
                "bound {k}: recorded {claimed} is below the recomputed majorant {recomputed}"
            )));
        }
        if claimed >= &pow2_neg(k) {
            return Err(fail(format!(
                "bound {k}: recorded {claimed} is not below 2^-{k}"
            )));
        }
    }
    pass("bounds".into());

    if partial_sums.len() != stages.len() {
        return Err(fail(format!(
            "partial sums: {} recorded for {} stages",
            partial_sums.len(),
            stages.len()
        )));
    }
    let mut p_total = AntisymMatrix::zero(size, n);
    for (m, g) in partial_sums.iter().enumerate() {
        p_total = p_total.checked_add(&stages[m].p)?;
        if !g.dot(&f)?.is_one() {
            return Err(fail(format!("partial sum {m}: sum_j (g_{m})_j f_j != 1")));
        }
        let regrouped = solution(m + 1).checked_sub(&p_total.left_mul(&f)?)?;
        if &regrouped != g {
            return Err(fail(format!(
                "partial sum {m}: g_{m} != a_{} - f (P_0 + ... + P_{m})",
                m + 1
            )));
        }
    }
    pass("partial sums".into());

    for m in 0..max_stage {
        let d = disk(m.max(1))?;
        let target = if m == 0 { Rational::one() } else { pow2_neg(m) };
        let mut total = Rational::zero();
        for k in m + 1..=max_stage {
            total += remainder(k)?.tuple_majorant_with(&d, policy);
            if total >= target {
                return Err(fail(format!(
                    "cauchy ({m},{k}): majorant {total} is not below 2^-{m}"
                )));
            }
        }
    }
    pass("cauchy bounds".into());

    Ok(VerifyReport { max_stage, checks })
}
