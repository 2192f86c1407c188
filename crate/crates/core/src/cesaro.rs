//! Cesàro numbers `A_n^α` and the summation means built on them.
//!
//! Orders are passed as the *actual* order of the mean. The negative-order
//! means `σ_n^{-α}` with `α ∈ (0, 1)` therefore take `order = -α`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::transform::{Spectrum, StepFunction, TransformPlan};

/// `A_0^α, …, A_n^α` for a fixed real order `α`.
#[derive(Clone, Debug, PartialEq)]
pub struct CesaroTable {
    order: f64,
    values: Vec<f64>,
}

impl CesaroTable {
    /// Table of length `n + 1`; the order must exceed −1.
    pub fn new(order: f64, n: usize) -> Result<Self> {
        if order <= -1.0 || !order.is_finite() {
            return Err(Error::OrderOutOfRange(order));
        }
        Ok(Self::any_order(order, n))
    }

    /// Same recurrence without the order restriction. Orders at or below −1
    /// appear as the lower tables of the identities and as the Abel weights
    /// `A^{-α-1}` in the kernel estimates.
    pub fn any_order(order: f64, n: usize) -> Self {
        let mut values = Vec::with_capacity(n + 1);
        let mut a = 1.0f64;
        values.push(a);
        for j in 1..=n {
            a *= (order + j as f64) / j as f64;
            values.push(a);
        }
        CesaroTable { order, values }
    }

    pub fn order(&self) -> f64 {
        self.order
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `A_j^α`.
    pub fn get(&self, j: usize) -> f64 {
        self.values[j]
    }

    /// Largest index `n` held by the table.
    pub fn last_index(&self) -> usize {
        self.values.len() - 1
    }
}

/// `A_0^α … A_n^α` for `α > −1`.
pub fn cesaro_numbers(alpha: f64, n: usize) -> Result<CesaroTable> {
    CesaroTable::new(alpha, n)
}

fn check_pair(table: &CesaroTable, lower: &CesaroTable) -> Result<()> {
    if lower.values.len() != table.values.len() {
        return Err(Error::LengthMismatch {
            expected: table.values.len(),
            found: lower.values.len(),
        });
    }
    let expected = table.order - 1.0;
    if (lower.order - expected).abs() > 1e-12 {
        return Err(Error::OrderMismatch {
            expected,
            found: lower.order,
        });
    }
    Ok(())
}

/// `max_n |A_n^α − Σ_{k≤n} A_k^{α−1}| / |A_n^α|`.
///
/// The running sum is compensated; for negative orders it cancels down to a
/// value far below its largest term.
pub fn check_identity_sum(table: &CesaroTable, lower: &CesaroTable) -> Result<f64> {
    check_pair(table, lower)?;
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    let mut worst = 0.0f64;
    for (&a, &b) in table.values.iter().zip(&lower.values) {
        // Neumaier
        let t = sum + b;
        if sum.abs() >= b.abs() {
            carry += (sum - t) + b;
        } else {
            carry += (b - t) + sum;
        }
        sum = t;
        worst = worst.max(((a - sum) - carry).abs() / a.abs());
    }
    Ok(worst)
}

/// `max_n |A_n^α − A_{n−1}^α − A_n^{α−1}| / |A_n^α|` over `n ≥ 1`.
pub fn check_identity_diff(table: &CesaroTable, lower: &CesaroTable) -> Result<f64> {
    check_pair(table, lower)?;
    Ok(table
        .values
        .windows(2)
        .zip(&lower.values[1..])
        .map(|(w, &b)| ((w[1] - w[0]) - b).abs() / w[1].abs())
        .fold(0.0, f64::max))
}

/// `A_n^α Γ(α+1) / n^α`, which tends to 1.
pub fn asymptotic_ratio(alpha: f64, n: usize) -> f64 {
    assert!(n >= 1, "asymptotic ratio needs n >= 1");
    let a = CesaroTable::any_order(alpha, n).get(n);
    a * statrs::function::gamma::gamma(alpha + 1.0) / (n as f64).powf(alpha)
}

fn synthesize_weighted(s: &Spectrum, weights: impl Iterator<Item = f64>) -> StepFunction {
    let mut coeffs = vec![Complex64::new(0.0, 0.0); s.coeffs().len()];
    for ((slot, &c), w) in coeffs.iter_mut().zip(s.coeffs()).zip(weights) {
        *slot = c * w;
    }
    let plan = TransformPlan::new(s.structure());
    StepFunction::from_raw(s.structure().clone(), plan.synthesize(&coeffs))
}

/// `S_n f = Σ_{k<n} f̂(k) ψ_k`, with `S_0 f = 0`.
pub fn partial_sum(s: &Spectrum, n: usize) -> Result<StepFunction> {
    let size = s.structure().size();
    if n > size {
        return Err(Error::out_of_range("n", n, format!("0..={size}")));
    }
    Ok(synthesize_weighted(s, (0..n).map(|_| 1.0)))
}

/// Fejér mean `σ_n f = Σ_{k≤n} (1 − k/(n+1)) f̂(k) ψ_k`.
///
/// This is the average of `S_1 f, …, S_{n+1} f`, i.e. convolution with
/// `K_{n+1}`.
pub fn fejer_mean(s: &Spectrum, n: usize) -> Result<StepFunction> {
    let size = s.structure().size();
    if n == 0 || n >= size {
        return Err(Error::out_of_range("n", n, format!("1..{size}")));
    }
    let denom = (n + 1) as f64;
    Ok(synthesize_weighted(
        s,
        (0..=n).map(|k| 1.0 - k as f64 / denom),
    ))
}

/// Cesàro mean `σ_n^{order} f = (1/A_n) Σ_{k≤n} A_{n−k} f̂(k) ψ_k`.
///
/// `order` is the actual order of the mean: pass `-α` for `σ_n^{-α}`.
pub fn cesaro_mean(s: &Spectrum, n: usize, order: f64) -> Result<StepFunction> {
    let table = CesaroTable::new(order, n)?;
    let size = s.structure().size();
    if n >= size {
        return Err(Error::out_of_range("n", n, format!("0..{size}")));
    }
    let a_n = table.get(n);
    Ok(synthesize_weighted(
        s,
        (0..=n).map(|k| table.get(n - k) / a_n),
    ))
}
