//! Gluing local Bezout solutions on nested polydisks into one global solution.
//!
//! Given solutions `a_k` of `a_k f^t = 1` on polydisks of radius `r_k`, the
//! transition `a_{k+1} = a_k + f H_k` has an antisymmetric `H_k`. Each `H_k`
//! is approximated by a polynomial matrix `P_k` (a total-degree truncation)
//! with `f (H_k - P_k)` majorized by `2^{-k}` on the next disk, and
//!
//! ```text
//! g = sum_k (a_{k+1} - a_k - f P_k)
//! ```
//!
//! Every partial sum `g_m = a_{m+1} - f (P_0 + ... + P_m)` is an exact
//! solution, because `f P f^t = 0` for antisymmetric `P`. Convergence is
//! certified through rational majorants of `g_{m'} - g_m`.

use num_traits::{One, Signed, Zero};

use crate::arith::{pow2_neg, rational_int, ModulusBound, Rational};
use crate::error::{Error, Result};
use crate::groebner::BezoutCertificate;
use crate::multipoly::{PolyTuple, Polydisk};
use crate::param::{apply_shift, difference_matrix, AntisymMatrix};

/// Radii `r_1 < r_2 < ...` of the nested polydisks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiskSchedule {
    n: usize,
    radii: Vec<Rational>,
}

impl DiskSchedule {
    pub fn new(n: usize, radii: Vec<Rational>) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::InvalidInput(
                "disk schedule needs at least one radius".into(),
            ));
        }
        if !radii[0].is_positive() {
            return Err(Error::InvalidInput("disk radii must be positive".into()));
        }
        if let Some(w) = radii.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(format!(
                "disk radii must be strictly increasing ({} >= {})",
                w[0], w[1]
            )));
        }
        Ok(DiskSchedule { n, radii })
    }

    /// `r_k = k` for `k = 1..=count`.
    pub fn standard(n: usize, count: usize) -> Self {
        DiskSchedule {
            n,
            radii: (1..=count.max(1) as i64).map(rational_int).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn radii(&self) -> &[Rational] {
        &self.radii
    }

    /// Number of radii, i.e. the largest `k` with a disk.
    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }

    /// Disk `k >= 1`.
    pub fn disk(&self, k: usize) -> Result<Polydisk> {
        if k == 0 || k > self.radii.len() {
            return Err(Error::IndexOutOfRange(format!(
                "disk {k} requested, schedule has disks 1..={}",
                self.radii.len()
            )));
        }
        Polydisk::new(self.n, self.radii[k - 1].clone())
    }
}

/// Produces per-disk solutions `a_k = base.g + f * perturbation_k`.
///
/// Stages past the end of `perturbations` use the zero matrix.
#[derive(Clone, Debug)]
pub struct LocalSolutionProvider {
    base: BezoutCertificate,
    perturbations: Vec<AntisymMatrix>,
}

impl LocalSolutionProvider {
    pub fn new(base: BezoutCertificate, perturbations: Vec<AntisymMatrix>) -> Result<Self> {
        if !base.recheck() {
            return Err(Error::NotASolution(
                "base certificate does not satisfy sum g_j f_j = 1".into(),
            ));
        }
        let (size, n) = (base.f.len(), base.f.n());
        for p in &perturbations {
            if p.size() != size {
                return Err(Error::DimensionMismatch {
                    expected: size,
                    found: p.size(),
                });
            }
            if p.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: p.n(),
                });
            }
        }
        Ok(LocalSolutionProvider {
            base,
            perturbations,
        })
    }

    pub fn f(&self) -> &PolyTuple {
        &self.base.f
    }

    pub fn base(&self) -> &BezoutCertificate {
        &self.base
    }

    pub fn perturbation(&self, k: usize) -> AntisymMatrix {
        k.checked_sub(1)
            .and_then(|i| self.perturbations.get(i).cloned())
            .unwrap_or_else(|| AntisymMatrix::zero(self.base.f.len(), self.base.f.n()))
    }

    /// Solution for disk `k >= 1`, checked to satisfy `a_k f^t = 1`.
    pub fn solution(&self, k: usize) -> Result<PolyTuple> {
        let a = apply_shift(&self.base.f, &self.base.g, &self.perturbation(k))?;
        if !a.dot(&self.base.f)?.is_one() {
            return Err(Error::VerificationFailure(format!(
                "a_{k} is not a Bezout solution"
            )));
        }
        Ok(a)
    }
}

/// One term of the series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueStage {
    pub k: usize,
    /// `a_k`; zero for `k = 0`.
    pub a: PolyTuple,
    /// `H_k` with `a_{k+1} = a_k + f H_k`; zero for `k = 0`.
    pub h: AntisymMatrix,
    pub p: AntisymMatrix,
    /// Majorant of `f (H_k - P_k)` on disk `k + 1`; below `2^{-k}`.
    pub bound: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueTrace {
    pub f: PolyTuple,
    pub schedule: DiskSchedule,
    pub policy: ModulusBound,
    pub stages: Vec<GlueStage>,
    /// `a_{m+1}` for the last stage `m`.
    pub a_final: PolyTuple,
    /// `g_0, ..., g_m`.
    pub partial_sums: Vec<PolyTuple>,
}

impl GlueTrace {
    /// Index of the last stage.
    pub fn max_stage(&self) -> usize {
        self.stages.len() - 1
    }

    /// `a_k` for `0 <= k <= max_stage + 1`.
    pub fn solution(&self, k: usize) -> Option<&PolyTuple> {
        if k == self.stages.len() {
            Some(&self.a_final)
        } else {
            self.stages.get(k).map(|s| &s.a)
        }
    }
}

fn is_solution(f: &PolyTuple, a: &PolyTuple) -> Result<bool> {
    Ok(a.dot(f)?.is_one())
}

/// Recovers `H_k` with `a_next = a_k + f H_k` from two solutions.
pub fn transition_matrix(
    f: &PolyTuple,
    a_k: &PolyTuple,
    a_next: &PolyTuple,
) -> Result<AntisymMatrix> {
    f.check_compatible(a_k)?;
    f.check_compatible(a_next)?;
    if !is_solution(f, a_k)? {
        return Err(Error::NotASolution(
            "a_k does not satisfy a_k f^t = 1".into(),
        ));
    }
    if !is_solution(f, a_next)? {
        return Err(Error::NotASolution(
            "a_{k+1} does not satisfy a_{k+1} f^t = 1".into(),
        ));
    }
    let h = difference_matrix(a_k, a_next)?;
    if apply_shift(f, a_k, &h)? != *a_next {
        return Err(Error::VerificationFailure("a_{k+1} != a_k + f H_k".into()));
    }
    Ok(h)
}

/// Majorant of `f (H - P)` on `disk`.
pub fn approximation_bound(
    f: &PolyTuple,
    h: &AntisymMatrix,
    p: &AntisymMatrix,
    disk: &Polydisk,
    policy: ModulusBound,
) -> Result<Rational> {
    Ok(h.checked_sub(p)?
        .left_mul(f)?
        .tuple_majorant_with(disk, policy))
}

/// Truncates every entry of `H` to the smallest common total degree `d >= -1`
/// whose remainder meets `bound < budget`, returning `(P, bound)`.
pub fn choose_pk(
    f: &PolyTuple,
    h: &AntisymMatrix,
    disk_next: &Polydisk,
    budget: &Rational,
    policy: ModulusBound,
) -> Result<(AntisymMatrix, Rational)> {
    if !budget.is_positive() {
        return Err(Error::InvalidInput(
            "approximation budget must be positive".into(),
        ));
    }
    let top = h.max_entry_degree();
    for d in -1..=top.max(-1) {
        let p = h.map_upper(|e| e.truncate_total_degree(d).0);
        let bound = approximation_bound(f, h, &p, disk_next, policy)?;
        if &bound < budget {
            return Ok((p, bound));
        }
    }
    unreachable!("the full truncation leaves a zero remainder")
}

/// Runs stages `0..=stages` of the construction and verifies every identity.
pub fn run_glue(
    provider: &LocalSolutionProvider,
    schedule: &DiskSchedule,
    stages: usize,
) -> Result<GlueTrace> {
    run_glue_with(provider, schedule, stages, ModulusBound::Sum)
}

pub fn run_glue_with(
    provider: &LocalSolutionProvider,
    schedule: &DiskSchedule,
    stages: usize,
    policy: ModulusBound,
) -> Result<GlueTrace> {
    let f = provider.f().clone();
    let (size, n) = (f.len(), f.n());
    if schedule.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: schedule.n(),
        });
    }
    if schedule.len() < stages + 1 {
        return Err(Error::InvalidInput(format!(
            "{} stages need {} disk radii, schedule has {}",
            stages,
            stages + 1,
            schedule.len()
        )));
    }

    // a_0 = 0 is not a solution, so H_0 is not a transition matrix; the
    // k = 0 term is a_1 - a_0 - f P_0 = a_1 with P_0 = 0.
    let zero_matrix = AntisymMatrix::zero(size, n);
    let mut records = vec![GlueStage {
        k: 0,
        a: PolyTuple::zeros(size, n),
        h: zero_matrix.clone(),
        p: zero_matrix.clone(),
        bound: Rational::zero(),
    }];
    let mut current = provider.solution(1)?;
    let mut partial = current.clone();
    let mut partial_sums = vec![partial.clone()];
    let mut p_total = zero_matrix;

    for k in 1..=stages {
        let next = provider.solution(k + 1)?;
        let h = transition_matrix(&f, &current, &next)?;
        let budget = pow2_neg(k);
        let disk = schedule.disk(k + 1)?;
        let (p, bound) = choose_pk(&f, &h, &disk, &budget, policy)?;
        log::debug!(
            "stage {k}: r = {}, deg P = {}, bound = {bound}",
            disk.radius,
            p.max_entry_degree()
        );

        let term = next.checked_sub(&current)?.checked_sub(&p.left_mul(&f)?)?;
        partial = partial.checked_add(&term)?;
        p_total = p_total.checked_add(&p)?;

        let regrouped = next.checked_sub(&p_total.left_mul(&f)?)?;
        if regrouped != partial {
            return Err(Error::VerificationFailure(format!(
                "telescoping identity fails at m = {k}"
            )));
        }
        if !is_solution(&f, &partial)? {
            return Err(Error::VerificationFailure(format!("g_{k} f^t != 1")));
        }
        if bound >= budget {
            return Err(Error::VerificationFailure(format!("bound_{k} >= 2^-{k}")));
        }

        records.push(GlueStage {
            k,
            a: current,
            h,
            p,
            bound,
        });
        partial_sums.push(partial.clone());
        current = next;
    }

    if !is_solution(&f, &partial_sums[0])? {
        return Err(Error::VerificationFailure("g_0 f^t != 1".into()));
    }

    Ok(GlueTrace {
        f,
        schedule: schedule.clone(),
        policy,
        stages: records,
        a_final: current,
        partial_sums,
    })
}

/// Radius used to majorize `g_{m'} - g_m`: `r_m`, or `r_1` when `m = 0`.
fn cauchy_disk(schedule: &DiskSchedule, m: usize) -> Result<Polydisk> {
    schedule.disk(m.max(1))
}

/// Majorant of `g_{m'} - g_m` on disk `m`, as the sum of the majorants of
/// `f (H_k - P_k)` for `m < k <= m'`. Stays below `2^{-m}`.
pub fn cauchy_bound(trace: &GlueTrace, m: usize, m_prime: usize) -> Result<Rational> {
    if m >= m_prime || m_prime > trace.max_stage() {
        return Err(Error::IndexOutOfRange(format!(
            "need m < m' <= {}, got m = {m}, m' = {m_prime}",
            trace.max_stage()
        )));
    }
    let disk = cauchy_disk(&trace.schedule, m)?;
    let mut total = Rational::zero();
    for stage in &trace.stages[m + 1..=m_prime] {
        total += approximation_bound(&trace.f, &stage.h, &stage.p, &disk, trace.policy)?;
    }
    Ok(total)
}

/// `2^{-m}` as an exact rational, the Cauchy target for index `m`.
pub fn cauchy_target(m: usize) -> Rational {
    if m == 0 {
        Rational::one()
    } else {
        pow2_neg(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rational, GaussianRational};
    use crate::groebner::{solve_bezout, TermOrder};
    use crate::multipoly::MultiPoly;

    fn z(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    fn c(n: usize, v: i64) -> MultiPoly {
        MultiPoly::constant(n, GaussianRational::from_int(v))
    }

    fn tuple(v: Vec<MultiPoly>) -> PolyTuple {
        PolyTuple::new(v).unwrap()
    }

    fn pair_matrix(h: MultiPoly) -> AntisymMatrix {
        let mut m = AntisymMatrix::zero(2, h.n());
        m.set(0, 1, h).unwrap();
        m
    }

    fn line_pair() -> PolyTuple {
        tuple(vec![z(1, 0), &c(1, 1) - &z(1, 0)])
    }

    fn line_provider(count: usize) -> LocalSolutionProvider {
        let f = line_pair();
        let base = BezoutCertificate::checked(f, tuple(vec![c(1, 1), c(1, 1)])).unwrap();
        let perturbations = (1..=count)
            .map(|k| pair_matrix(z(1, 0).pow(k as u32)))
            .collect();
        LocalSolutionProvider::new(base, perturbations).unwrap()
    }

    #[test]
    fn transition_examples() {
        let f = line_pair();
        let a = tuple(vec![c(1, 1), c(1, 1)]);
        assert!(transition_matrix(&f, &a, &a).unwrap().is_zero());

        let next = tuple(vec![z(1, 0), &c(1, 1) + &z(1, 0)]);
        let h = transition_matrix(&f, &a, &next).unwrap();
        assert_eq!(h.get(0, 1), c(1, 1));

        let f2 = tuple(vec![&(&z(2, 0) * &z(2, 1)) - &c(2, 1), z(2, 0)]);
        let ak = tuple(vec![c(2, -1), z(2, 1)]);
        let shifted = apply_shift(&f2, &ak, &pair_matrix(z(2, 0).pow(3))).unwrap();
        let h = transition_matrix(&f2, &ak, &shifted).unwrap();
        assert_eq!(apply_shift(&f2, &ak, &h).unwrap(), shifted);
    }

    #[test]
    fn transition_rejects_non_solutions() {
        let f = line_pair();
        let a = tuple(vec![c(1, 1), c(1, 1)]);
        let bad = tuple(vec![c(1, 1), c(1, 2)]);
        assert!(matches!(
            transition_matrix(&f, &bad, &a),
            Err(Error::NotASolution(_))
        ));
        assert!(matches!(
            transition_matrix(&f, &a, &bad),
            Err(Error::NotASolution(_))
        ));
    }

    #[test]
    fn choose_pk_zero_matrix() {
        let f = line_pair();
        let disk = Polydisk::new(1, rational_int(2)).unwrap();
        let (p, bound) = choose_pk(
            &f,
            &AntisymMatrix::zero(2, 1),
            &disk,
            &pow2_neg(1),
            ModulusBound::Sum,
        )
        .unwrap();
        assert!(p.is_zero());
        assert!(bound.is_zero());
    }

    #[test]
    fn choose_pk_generous_budget_keeps_zero_truncation() {
        let f = line_pair();
        let disk = Polydisk::new(1, rational_int(2)).unwrap();
        let h = pair_matrix(&z(1, 0).pow(2) + &c(1, 3));
        let full = h.left_mul(&f).unwrap().tuple_majorant(&disk);
        let budget = &full + rational_int(1);
        let (p, bound) = choose_pk(&f, &h, &disk, &budget, ModulusBound::Sum).unwrap();
        assert!(p.is_zero());
        assert_eq!(bound, full);
    }

    #[test]
    fn choose_pk_minimal_degree_for_z8() {
        let f = line_pair();
        let disk = Polydisk::new(1, rational_int(2)).unwrap();
        let h = pair_matrix(z(1, 0).pow(8));
        // f H = (-(1 - z) z^8, z^9): majorants 2^8 + 2^9 = 768 and 512.
        for d in -1..=7 {
            let p = h.map_upper(|e| e.truncate_total_degree(d).0);
            let b = approximation_bound(&f, &h, &p, &disk, ModulusBound::Sum).unwrap();
            assert_eq!(b, rational_int(768));
        }
        let (p, bound) = choose_pk(&f, &h, &disk, &pow2_neg(1), ModulusBound::Sum).unwrap();
        assert_eq!(p, h);
        assert!(bound.is_zero());
    }

    #[test]
    fn choose_pk_rejects_nonpositive_budget() {
        let f = line_pair();
        let disk = Polydisk::new(1, rational_int(2)).unwrap();
        assert!(choose_pk(
            &f,
            &AntisymMatrix::zero(2, 1),
            &disk,
            &rational_int(0),
            ModulusBound::Sum
        )
        .is_err());
    }

    #[test]
    fn degenerate_schedule() {
        let f = line_pair();
        let base = BezoutCertificate::checked(f, tuple(vec![c(1, 1), c(1, 1)])).unwrap();
        let provider = LocalSolutionProvider::new(base.clone(), vec![]).unwrap();
        let trace = run_glue(&provider, &DiskSchedule::standard(1, 5), 4).unwrap();
        for stage in &trace.stages[1..] {
            assert_eq!(stage.a, base.g);
            assert!(stage.h.is_zero());
            assert!(stage.bound.is_zero());
        }
        assert!(trace.partial_sums.iter().all(|g| *g == base.g));
        assert!(cauchy_bound(&trace, 0, 4).unwrap().is_zero());
    }

    #[test]
    fn line_pair_trace() {
        let trace = run_glue(&line_provider(5), &DiskSchedule::standard(1, 5), 4).unwrap();
        assert_eq!(trace.stages.len(), 5);
        for s in &trace.stages[1..] {
            assert!(s.bound < pow2_neg(s.k));
        }
        let g4 = &trace.partial_sums[4];
        assert!(g4.dot(&trace.f).unwrap().is_one());
        assert_eq!(trace.partial_sums[0], *trace.solution(1).unwrap());
        let cb = cauchy_bound(&trace, 1, 4).unwrap();
        assert!(cb < rational(1, 2));
        let single = cauchy_bound(&trace, 2, 3).unwrap();
        assert!(single <= trace.stages[3].bound);
    }

    #[test]
    fn two_variable_trace() {
        let f = tuple(vec![&(&z(2, 0) * &z(2, 1)) - &c(2, 1), z(2, 0)]);
        let base = solve_bezout(&f, TermOrder::GrevLex).unwrap();
        let sum = &z(2, 0) + &z(2, 1);
        let mut fact = 1i64;
        let perturbations = (1..=4)
            .map(|k| {
                fact *= k;
                pair_matrix(
                    sum.pow(k as u32)
                        .scale(&GaussianRational::from_parts(1, fact, 0, 1)),
                )
            })
            .collect();
        let provider = LocalSolutionProvider::new(base, perturbations).unwrap();
        let trace = run_glue(&provider, &DiskSchedule::standard(2, 4), 3).unwrap();
        for g in &trace.partial_sums {
            assert!(g.dot(&trace.f).unwrap().is_one());
        }
    }

    #[test]
    fn small_perturbations_give_positive_bounds() {
        let f = line_pair();
        let base = BezoutCertificate::checked(f, tuple(vec![c(1, 1), c(1, 1)])).unwrap();
        let eps = GaussianRational::from_parts(1, 1_000_000_000_000, 0, 1);
        let perturbations = (1..=4)
            .map(|k| pair_matrix(z(1, 0).pow(k).scale(&eps)))
            .collect();
        let provider = LocalSolutionProvider::new(base, perturbations).unwrap();
        let trace = run_glue(&provider, &DiskSchedule::standard(1, 4), 3).unwrap();
        for s in &trace.stages[1..] {
            assert!(s.bound.is_positive());
            assert!(s.bound < pow2_neg(s.k));
        }
    }

    #[test]
    fn schedule_validation() {
        assert!(DiskSchedule::new(1, vec![]).is_err());
        assert!(DiskSchedule::new(1, vec![rational_int(2), rational_int(2)]).is_err());
        assert!(DiskSchedule::new(1, vec![rational_int(0), rational_int(2)]).is_err());
        let s = DiskSchedule::new(1, vec![rational(1, 2), rational_int(3)]).unwrap();
        assert!(s.disk(0).is_err());
        assert!(s.disk(3).is_err());
        assert_eq!(s.disk(2).unwrap().radius, rational_int(3));
        let provider = line_provider(2);
        assert!(run_glue(&provider, &DiskSchedule::standard(1, 2), 2).is_err());
    }

    #[test]
    fn cauchy_bound_index_errors() {
        let trace = run_glue(&line_provider(3), &DiskSchedule::standard(1, 3), 2).unwrap();
        assert!(matches!(
            cauchy_bound(&trace, 1, 1),
            Err(Error::IndexOutOfRange(_))
        ));
        assert!(matches!(
            cauchy_bound(&trace, 0, 3),
            Err(Error::IndexOutOfRange(_))
        ));
    }

    #[test]
    fn provider_rejects_bad_base() {
        let f = line_pair();
        let bad = BezoutCertificate {
            f: f.clone(),
            g: tuple(vec![c(1, 1), c(1, 2)]),
            verified: true,
        };
        assert!(LocalSolutionProvider::new(bad, vec![]).is_err());
    }
}
