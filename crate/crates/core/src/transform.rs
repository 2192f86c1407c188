//! Vilenkin characters and the Vilenkin–Fourier (Chrestenson) transform.
//!
//! The fast transform is a tensor product of small DFTs: stage `k` mixes the
//! `m_k` grid points that differ only in digit `k`, so the total work is
//! `M_N · Σ m_k`. The stages run in grid order and leave coefficient `n` at
//! the label carrying the digits of `n`; a precomputed digit-reversal
//! permutation moves it to the canonical position `n = Σ n_j M_j`.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{GroupPoint, MixedRadixIndex, RadixStructure};

/// Largest grid size accepted by the quadratic-time routines by default.
pub const ORACLE_CAP: usize = 20736;

/// `exp(2πi · e / m)` evaluated from the exact rational angle.
///
/// Multiples of a quarter turn come out exact.
pub fn unit_root(e: usize, m: usize) -> Complex64 {
    let e = e % m;
    // 4e/m = quarter + rem/m, rem in [0, m)
    let quarter = (4 * e) / m;
    let rem = 4 * e - quarter * m;
    let base = if rem == 0 {
        Complex64::new(1.0, 0.0)
    } else {
        let (s, c) = (FRAC_PI_2 * rem as f64 / m as f64).sin_cos();
        Complex64::new(c, s)
    };
    match quarter {
        0 => base,
        1 => Complex64::new(-base.im, base.re),
        2 => -base,
        _ => Complex64::new(base.im, -base.re),
    }
}

/// A function on `G_m` constant on the cosets of `I_N`, sampled by coset label.
#[derive(Clone, Debug, PartialEq)]
pub struct StepFunction {
    structure: RadixStructure,
    values: Vec<Complex64>,
}

impl StepFunction {
    pub fn new(structure: RadixStructure, values: Vec<Complex64>) -> Result<Self> {
        check_samples(&structure, &values)?;
        Ok(StepFunction { structure, values })
    }

    pub(crate) fn from_raw(structure: RadixStructure, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), structure.size());
        StepFunction { structure, values }
    }

    pub fn constant(structure: &RadixStructure, c: Complex64) -> Self {
        StepFunction {
            values: vec![c; structure.size()],
            structure: structure.clone(),
        }
    }

    pub fn zero(structure: &RadixStructure) -> Self {
        Self::constant(structure, Complex64::new(0.0, 0.0))
    }

    /// Samples `func` at one point of every level-`N` coset.
    pub fn from_fn(
        structure: &RadixStructure,
        mut func: impl FnMut(&GroupPoint) -> Complex64,
    ) -> Self {
        let values = (0..structure.size())
            .map(|label| func(&structure.point_at(label).expect("label in range")))
            .collect();
        StepFunction {
            structure: structure.clone(),
            values,
        }
    }

    pub fn structure(&self) -> &RadixStructure {
        &self.structure
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn at(&self, x: &GroupPoint) -> Result<Complex64> {
        if x.structure() != &self.structure {
            return Err(Error::StructureMismatch);
        }
        Ok(self.values[x.label()])
    }

    /// `x ↦ f(x + h)`.
    pub fn translate(&self, h: &GroupPoint) -> Result<StepFunction> {
        if h.structure() != &self.structure {
            return Err(Error::StructureMismatch);
        }
        let t = self.structure.translation(h.digits());
        let values = t.iter().map(|&j| self.values[j]).collect();
        Ok(StepFunction::from_raw(self.structure.clone(), values))
    }

    /// `a·self + b·other`.
    pub fn combine(
        &self,
        a: Complex64,
        other: &StepFunction,
        b: Complex64,
    ) -> Result<StepFunction> {
        if other.structure != self.structure {
            return Err(Error::StructureMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&x, &y)| a * x + b * y)
            .collect();
        Ok(StepFunction::from_raw(self.structure.clone(), values))
    }

    pub fn sub(&self, other: &StepFunction) -> Result<StepFunction> {
        self.combine(Complex64::new(1.0, 0.0), other, Complex64::new(-1.0, 0.0))
    }

    /// Pointwise product.
    pub fn mul(&self, other: &StepFunction) -> Result<StepFunction> {
        if other.structure != self.structure {
            return Err(Error::StructureMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&x, &y)| x * y)
            .collect();
        Ok(StepFunction::from_raw(self.structure.clone(), values))
    }

    /// Largest componentwise distance to `other`.
    pub fn max_distance(&self, other: &StepFunction) -> Result<f64> {
        if other.structure != self.structure {
            return Err(Error::StructureMismatch);
        }
        Ok(max_abs_diff(&self.values, &other.values))
    }

    /// Grid average, i.e. `∫ f dμ`.
    pub fn mean(&self) -> Complex64 {
        pairwise_sum(&self.values) / self.values.len() as f64
    }
}

/// The Vilenkin–Fourier coefficients `f̂(0), …, f̂(M_N − 1)` in natural order.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    structure: RadixStructure,
    coeffs: Vec<Complex64>,
}

impl Spectrum {
    pub fn new(structure: RadixStructure, coeffs: Vec<Complex64>) -> Result<Self> {
        check_samples(&structure, &coeffs)?;
        Ok(Spectrum { structure, coeffs })
    }

    pub(crate) fn from_raw(structure: RadixStructure, coeffs: Vec<Complex64>) -> Self {
        debug_assert_eq!(coeffs.len(), structure.size());
        Spectrum { structure, coeffs }
    }

    /// The unit vector `e_j`.
    pub fn unit(structure: &RadixStructure, j: usize) -> Result<Self> {
        if j >= structure.size() {
            return Err(Error::out_of_range(
                "index",
                j,
                format!("0..{}", structure.size()),
            ));
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); structure.size()];
        coeffs[j] = Complex64::new(1.0, 0.0);
        Ok(Spectrum::from_raw(structure.clone(), coeffs))
    }

    pub fn structure(&self) -> &RadixStructure {
        &self.structure
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn max_distance(&self, other: &Spectrum) -> Result<f64> {
        if other.structure != self.structure {
            return Err(Error::StructureMismatch);
        }
        Ok(max_abs_diff(&self.coeffs, &other.coeffs))
    }
}

fn check_samples(structure: &RadixStructure, values: &[Complex64]) -> Result<()> {
    if values.len() != structure.size() {
        return Err(Error::LengthMismatch {
            expected: structure.size(),
            found: values.len(),
        });
    }
    if let Some(i) = values
        .iter()
        .position(|v| !v.re.is_finite() || !v.im.is_finite())
    {
        return Err(Error::NonFinite(i));
    }
    Ok(())
}

pub(crate) fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Pairwise summation in a fixed order, independent of scheduling.
pub(crate) fn pairwise_sum(values: &[Complex64]) -> Complex64 {
    if values.len() <= 32 {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

pub(crate) fn pairwise_sum_real(values: &[f64]) -> f64 {
    if values.len() <= 32 {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum_real(&values[..mid]) + pairwise_sum_real(&values[mid..])
}

/// Generalized Rademacher function `r_k(x) = exp(2πi x_k / m_k)`.
pub fn rademacher(k: usize, x: &GroupPoint) -> Result<Complex64> {
    let s = x.structure();
    s.check_digit_position(k)?;
    Ok(unit_root(x.digit(k), s.radix(k)))
}

/// Vilenkin character `ψ_n(x) = Π_k r_k(x)^{n_k}`.
pub fn vilenkin_char(n: &MixedRadixIndex, x: &GroupPoint) -> Result<Complex64> {
    let s = x.structure();
    if n.digits().len() != s.level() {
        return Err(Error::StructureMismatch);
    }
    Ok(n.digits()
        .iter()
        .zip(x.digits())
        .zip(s.radices())
        .filter(|((&nk, _), _)| nk != 0)
        .map(|((&nk, &xk), &m)| unit_root(nk * xk, m))
        .product())
}

/// Samples of `ψ_n` on the grid.
pub fn character(structure: &RadixStructure, n: usize) -> Result<StepFunction> {
    let idx = structure.index(n)?;
    let period = structure
        .radices()
        .iter()
        .fold(1usize, |acc, &m| lcm(acc, m));
    let values = phase_table(structure, idx.digits(), period)
        .into_iter()
        .map(|e| unit_root(e, period))
        .collect();
    Ok(StepFunction::from_raw(structure.clone(), values))
}

/// Exponents `e(x)` with `ψ_n(x) = exp(2πi e(x) / period)` for every grid
/// label, built one digit at a time.
fn phase_table(structure: &RadixStructure, n_digits: &[usize], period: usize) -> Vec<usize> {
    let mut phases = Vec::with_capacity(structure.size());
    phases.push(0usize);
    for (&nk, &m) in n_digits.iter().zip(structure.radices()) {
        let step = nk * (period / m) % period;
        phases = phases
            .iter()
            .flat_map(|&p| (0..m).map(move |xk| (p + step * xk) % period))
            .collect();
    }
    phases
}

#[derive(Clone, Debug)]
struct RadixKernel {
    radix: usize,
    /// `exp(2πi e / m)` for `e < m`.
    roots: Vec<Complex64>,
}

/// Precomputed tables for repeated transforms on one structure.
#[derive(Clone, Debug)]
pub struct TransformPlan {
    structure: RadixStructure,
    kernels: Vec<RadixKernel>,
    /// `order[n]` is the grid label holding coefficient `n` after the stages.
    order: Vec<usize>,
}

impl TransformPlan {
    pub fn new(structure: &RadixStructure) -> Self {
        let mut kernels: Vec<RadixKernel> = Vec::new();
        for &m in structure.radices() {
            if !kernels.iter().any(|k| k.radix == m) {
                kernels.push(RadixKernel {
                    radix: m,
                    roots: (0..m).map(|e| unit_root(e, m)).collect(),
                });
            }
        }
        // coefficient digits n_k sit at label weight M_N / M_{k+1}
        let mut order = vec![0usize];
        for k in 0..structure.level() {
            let m = structure.radix(k);
            let stride = structure.stride(k);
            let mut next = Vec::with_capacity(order.len() * m);
            for d in 0..m {
                next.extend(order.iter().map(|&o| o + d * stride));
            }
            order = next;
        }
        TransformPlan {
            structure: structure.clone(),
            kernels,
            order,
        }
    }

    pub fn structure(&self) -> &RadixStructure {
        &self.structure
    }

    /// `f̂(n) = (1/M_N) Σ_x f(x) conj(ψ_n(x))`.
    pub fn forward(&self, f: &StepFunction) -> Result<Spectrum> {
        if f.structure() != &self.structure {
            return Err(Error::StructureMismatch);
        }
        let mut work = f.values().to_vec();
        self.run_stages(&mut work, true);
        let scale = 1.0 / self.structure.size() as f64;
        let coeffs = self.order.iter().map(|&j| work[j] * scale).collect();
        Ok(Spectrum::from_raw(self.structure.clone(), coeffs))
    }

    /// `f(x) = Σ_n f̂(n) ψ_n(x)`.
    pub fn inverse(&self, s: &Spectrum) -> Result<StepFunction> {
        if s.structure() != &self.structure {
            return Err(Error::StructureMismatch);
        }
        Ok(StepFunction::from_raw(
            self.structure.clone(),
            self.synthesize(s.coeffs()),
        ))
    }

    /// Inverse transform of a raw coefficient vector in natural order.
    pub(crate) fn synthesize(&self, coeffs: &[Complex64]) -> Vec<Complex64> {
        let mut work = vec![Complex64::new(0.0, 0.0); coeffs.len()];
        for (n, &j) in self.order.iter().enumerate() {
            work[j] = coeffs[n];
        }
        self.run_stages(&mut work, false);
        work
    }

    fn run_stages(&self, data: &mut [Complex64], conjugate: bool) {
        let s = &self.structure;
        let mut scratch = vec![Complex64::new(0.0, 0.0); s.max_radix()];
        for k in 0..s.level() {
            let m = s.radix(k);
            let stride = s.stride(k);
            let kernel = self
                .kernels
                .iter()
                .find(|kr| kr.radix == m)
                .expect("kernel per radix");
            let span = m * stride;
            for block in data.chunks_exact_mut(span) {
                if m == 2 {
                    let (lo, hi) = block.split_at_mut(stride);
                    for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                        let (x, y) = (*a, *b);
                        *a = x + y;
                        *b = x - y;
                    }
                    continue;
                }
                for i in 0..stride {
                    for (t, slot) in scratch[..m].iter_mut().enumerate() {
                        *slot = block[i + t * stride];
                    }
                    for out in 0..m {
                        let mut acc = scratch[0];
                        let mut e = 0;
                        for &v in &scratch[1..m] {
                            e += out;
                            if e >= m {
                                e -= m;
                            }
                            let w = kernel.roots[e];
                            acc += if conjugate { v * w.conj() } else { v * w };
                        }
                        block[i + out * stride] = acc;
                    }
                }
            }
        }
    }
}

/// Fast forward transform.
pub fn forward(f: &StepFunction) -> Spectrum {
    TransformPlan::new(f.structure())
        .forward(f)
        .expect("plan built for the same structure")
}

/// Fast inverse transform (synthesis, no normalization).
pub fn inverse(s: &Spectrum) -> StepFunction {
    TransformPlan::new(s.structure())
        .inverse(s)
        .expect("plan built for the same structure")
}

/// Direct `O(M_N²)` evaluation of the forward transform, capped at
/// [`ORACLE_CAP`] grid points.
pub fn forward_naive(f: &StepFunction) -> Result<Spectrum> {
    forward_naive_with_cap(f, ORACLE_CAP)
}

pub fn forward_naive_with_cap(f: &StepFunction, cap: usize) -> Result<Spectrum> {
    let s = f.structure();
    let size = s.size();
    if size > cap {
        return Err(Error::OracleCapExceeded { size, cap });
    }
    // every character value is a power of exp(-2πi / L), L = lcm of the radices
    let period = s.radices().iter().fold(1usize, |acc, &m| lcm(acc, m));
    let table: Vec<Complex64> = (0..period).map(|e| unit_root(period - e, period)).collect();
    let coeffs = (0..size)
        .map(|n| {
            let nd = s.index(n).expect("n < M_N");
            let phase = phase_table(s, nd.digits(), period);
            let sum: Complex64 = f
                .values()
                .iter()
                .zip(&phase)
                .map(|(&v, &e)| v * table[e])
                .sum();
            sum / size as f64
        })
        .collect();
    Ok(Spectrum::from_raw(s.clone(), coeffs))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}
