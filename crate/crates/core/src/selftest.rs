//! Numeric self-checks of the exact identities the library relies on.
//!
//! Each residual function returns the largest deviation from an identity that
//! holds exactly in exact arithmetic; [`run`] collects them into a [`Report`].

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::approx::gen_random;
use crate::cesaro::{asymptotic_ratio, check_identity_diff, check_identity_sum, CesaroTable};
use crate::error::Result;
use crate::group::RadixStructure;
use crate::kernel::{dirichlet_kernel, zero_identity_i12, zero_identity_ii2};
use crate::transform::{
    character, forward_naive, max_abs_diff, Spectrum, StepFunction, TransformPlan, ORACLE_CAP,
};

pub const IDENTITY_TOL: f64 = 1e-10;
pub const CESARO_TOL: f64 = 1e-12;
pub const CESARO_N: usize = 10_000;
pub const CESARO_ORDERS: [f64; 6] = [-0.75, -0.5, -0.25, 0.25, 0.5, 1.0];

/// Largest grid size for which orthonormality is checked on every index.
pub const FULL_BASIS_LIMIT: usize = 6561;

/// `max_r ‖D_{M_r} − M_r 1_{I_r}‖_∞` over `r = 0..=N`.
pub fn dirichlet_indicator_residual(st: &RadixStructure) -> Result<f64> {
    let mut worst = 0.0f64;
    for r in 0..=st.level() {
        let mr = st.coset_count(r);
        let d = dirichlet_kernel(st, mr)?;
        let block = st.block_len(r);
        for (label, v) in d.values().iter().enumerate() {
            let expected = if label < block { mr as f64 } else { 0.0 };
            worst = worst.max((v - expected).norm());
        }
    }
    Ok(worst)
}

/// `max_j ‖forward(ψ_j) − e_j‖_∞` over the given indices.
pub fn orthonormality_residual(plan: &TransformPlan, indices: &[usize]) -> Result<f64> {
    let st = plan.structure();
    let mut worst = 0.0f64;
    for &j in indices {
        let spec = plan.forward(&character(st, j)?)?;
        worst = worst.max(spec.max_distance(&Spectrum::unit(st, j)?)?);
    }
    Ok(worst)
}

/// Every index when the grid is small, otherwise the first 64, the indices
/// `M_k − 1` and `M_k`, and `extra` seeded random ones.
pub fn basis_sample(st: &RadixStructure, seed: u64, extra: usize) -> Vec<usize> {
    let size = st.size();
    if size <= FULL_BASIS_LIMIT {
        return (0..size).collect();
    }
    let mut idx: Vec<usize> = (0..64.min(size)).collect();
    for &m in &st.cumulative()[1..] {
        idx.push(m - 1);
        if m < size {
            idx.push(m);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    idx.extend((0..extra).map(|_| rng.random_range(0..size)));
    idx.sort_unstable();
    idx.dedup();
    idx
}

/// `‖inverse(forward f) − f‖_∞`.
pub fn round_trip_residual(plan: &TransformPlan, f: &StepFunction) -> Result<f64> {
    let back = plan.inverse(&plan.forward(f)?)?;
    back.max_distance(f)
}

/// `|∫|f|² dμ − Σ |f̂(n)|²|`, relative to `∫|f|² dμ` when that is nonzero.
pub fn parseval_residual(plan: &TransformPlan, f: &StepFunction) -> Result<f64> {
    let spec = plan.forward(f)?;
    let energy = f.values().iter().map(|v| v.norm_sqr()).sum::<f64>() / f.values().len() as f64;
    let coeff_energy: f64 = spec.coeffs().iter().map(|c| c.norm_sqr()).sum();
    let diff = (energy - coeff_energy).abs();
    Ok(if energy > 0.0 { diff / energy } else { diff })
}

/// `max_n |(f ψ_j)^(n) − f̂(n ⊖ j)|`.
pub fn modulation_residual(plan: &TransformPlan, f: &StepFunction, j: usize) -> Result<f64> {
    let st = plan.structure();
    let spec = plan.forward(f)?;
    let shifted = plan.forward(&f.mul(&character(st, j)?)?)?;
    let mut worst = 0.0f64;
    for (n, c) in shifted.coeffs().iter().enumerate() {
        worst = worst.max((c - spec.coeffs()[st.index_sub(n, j)?]).norm());
    }
    Ok(worst)
}

/// `max |forward(f) − forward_naive(f)|` componentwise.
pub fn oracle_residual(plan: &TransformPlan, f: &StepFunction) -> Result<f64> {
    let fast = plan.forward(f)?;
    let slow = forward_naive(f)?;
    Ok(max_abs_diff(fast.coeffs(), slow.coeffs()))
}

/// Worst of the two Cesàro-number identity residuals for one order.
pub fn cesaro_identity_residual(order: f64, n: usize) -> Result<f64> {
    let table = CesaroTable::new(order, n)?;
    let lower = CesaroTable::any_order(order - 1.0, n);
    Ok(check_identity_sum(&table, &lower)?.max(check_identity_diff(&table, &lower)?))
}

/// `(|A_n^α Γ(α+1) / n^α − 1|, |α(α+1)|/n + 1e−6)`.
pub fn asymptotic_residual(order: f64, n: usize) -> (f64, f64) {
    let residual = (asymptotic_ratio(order, n) - 1.0).abs();
    (residual, (order * (order + 1.0)).abs() / n as f64 + 1e-6)
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            residual,
            tolerance,
        }
    }

    pub fn passed(&self) -> bool {
        self.residual <= self.tolerance
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status}  {:<40} residual {:.3e}  tol {:.1e}",
            self.name, self.residual, self.tolerance
        )
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
    /// Suites that do not apply to the chosen structure.
    pub skipped: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    fn push(&mut self, name: impl Into<String>, residual: f64, tolerance: f64) {
        self.checks.push(Check::new(name, residual, tolerance));
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        for s in &self.skipped {
            writeln!(f, "SKIP  {s}")?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        write!(f, "{} checks, {failed} failed", self.checks.len())
    }
}

/// Runs every suite on `st` with seeded random inputs.
pub fn run(st: &RadixStructure, seed: u64) -> Result<Report> {
    let mut report = Report::default();
    let plan = TransformPlan::new(st);
    let n_max = st.level();

    report.push(
        "dirichlet kernel D_{M_r} = M_r 1_{I_r}",
        dirichlet_indicator_residual(st)?,
        IDENTITY_TOL,
    );
    report.push(
        "orthonormality forward(psi_j) = e_j",
        orthonormality_residual(&plan, &basis_sample(st, seed, 32))?,
        IDENTITY_TOL,
    );

    let samples: Vec<StepFunction> = (0..3)
        .map(|i| gen_random(seed.wrapping_add(i), n_max, st))
        .collect::<Result<_>>()?;
    let mut rt = 0.0f64;
    let mut pv = 0.0f64;
    let mut md = 0.0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for f in &samples {
        rt = rt.max(round_trip_residual(&plan, f)?);
        pv = pv.max(parseval_residual(&plan, f)?);
        md = md.max(modulation_residual(
            &plan,
            f,
            rng.random_range(0..st.size()),
        )?);
    }
    report.push("round trip inverse(forward f) = f", rt, IDENTITY_TOL);
    report.push("parseval", pv, IDENTITY_TOL);
    report.push("modulation", md, IDENTITY_TOL);

    if st.size() <= ORACLE_CAP {
        let mut worst = 0.0f64;
        for f in &samples {
            worst = worst.max(oracle_residual(&plan, f)?);
        }
        report.push("fast transform = naive transform", worst, IDENTITY_TOL);
    } else {
        report
            .skipped
            .push(format!("naive oracle (M_N = {} > {ORACLE_CAP})", st.size()));
    }

    for order in CESARO_ORDERS {
        report.push(
            format!("cesaro identities, order {order}"),
            cesaro_identity_residual(order, CESARO_N)?,
            CESARO_TOL,
        );
        let (residual, tol) = asymptotic_residual(order, CESARO_N);
        report.push(format!("cesaro asymptotics, order {order}"), residual, tol);
    }

    zero_identity_suites(st, seed, &samples[0], &mut report)?;
    Ok(report)
}

fn zero_identity_suites(
    st: &RadixStructure,
    seed: u64,
    f: &StepFunction,
    report: &mut Report,
) -> Result<()> {
    let n_max = st.level();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5a5a);
    // I_12 needs r <= k − 2 with k <= N − 1
    if n_max >= 3 {
        let mut worst = 0.0f64;
        for _ in 0..4 {
            let k = rng.random_range(2..n_max);
            let n = rng.random_range(st.coset_count(k)..st.coset_count(k + 1));
            let r = rng.random_range(0..=k - 2);
            let alpha = rng.random_range(0.05..0.95);
            worst = worst.max(zero_identity_i12(f, r, n, alpha)?);
        }
        report.push("zero identity I_12", worst, IDENTITY_TOL);
    } else {
        report
            .skipped
            .push("zero identity I_12 (needs N >= 3)".into());
    }
    if n_max >= 2 {
        let mut worst = 0.0f64;
        for _ in 0..4 {
            let k = rng.random_range(1..n_max);
            let n = rng.random_range(st.coset_count(k)..st.coset_count(k + 1));
            let alpha = rng.random_range(0.05..0.95);
            worst = worst.max(zero_identity_ii2(f, k, n, alpha)?);
        }
        report.push("zero identity II_2", worst, IDENTITY_TOL);
    } else {
        report
            .skipped
            .push("zero identity II_2 (needs N >= 2)".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_structure_passes() {
        let st = RadixStructure::from_spec("2,3,2,3", None).unwrap();
        let report = run(&st, 1).unwrap();
        assert!(report.passed(), "{report}");
        assert!(report.skipped.is_empty());
    }

    #[test]
    fn tiny_structure_skips_inapplicable_suites() {
        let st = RadixStructure::new(vec![3]).unwrap();
        let report = run(&st, 1).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.skipped.len(), 2);
    }

    #[test]
    fn basis_sample_covers_small_grids() {
        let st = RadixStructure::from_spec("2,3", Some(4)).unwrap();
        assert_eq!(basis_sample(&st, 0, 5), (0..36).collect::<Vec<_>>());
        let big = RadixStructure::uniform(3, 9).unwrap();
        let s = basis_sample(&big, 0, 5);
        assert!(s.contains(&19682) && s.contains(&6561) && s.len() < 100);
    }

    #[test]
    fn index_arithmetic_matches_character_products() {
        let st = RadixStructure::from_spec("2,3,4", None).unwrap();
        for (a, b) in [(5, 7), (23, 23), (0, 11)] {
            let prod = character(&st, a)
                .unwrap()
                .mul(&character(&st, b).unwrap())
                .unwrap();
            let direct = character(&st, st.index_add(a, b).unwrap()).unwrap();
            assert!(prod.max_distance(&direct).unwrap() < 1e-12);
            assert_eq!(st.index_sub(st.index_add(a, b).unwrap(), b).unwrap(), a);
        }
    }
}
