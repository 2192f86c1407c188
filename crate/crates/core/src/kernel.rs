//! Dirichlet, Fejér and Cesàro tail kernels, and numeric probes of the
//! kernel facts behind the approximation estimate.
//!
//! A kernel built from characters `ψ_v` with `v < M_L` depends only on the
//! first `L` digits, so the shell profile and the zero identities are
//! evaluated on the level-`L` quotient grid. Integrals there are exact
//! averages over `M_L` points.

use num_complex::Complex64;
use serde::Serialize;

use crate::cesaro::CesaroTable;
use crate::error::{Error, Result};
use crate::group::RadixStructure;
use crate::transform::{
    forward, pairwise_sum, pairwise_sum_real, StepFunction, TransformPlan, ORACLE_CAP,
};

fn synth(st: &RadixStructure, coeffs: &[Complex64]) -> StepFunction {
    let plan = TransformPlan::new(st);
    StepFunction::from_raw(st.clone(), plan.synthesize(coeffs))
}

fn coeffs_with(
    st: &RadixStructure,
    mut weight: impl FnMut(usize) -> f64,
    upto: usize,
) -> Vec<Complex64> {
    let mut coeffs = vec![Complex64::new(0.0, 0.0); st.size()];
    for (v, slot) in coeffs.iter_mut().enumerate().take(upto) {
        *slot = Complex64::new(weight(v), 0.0);
    }
    coeffs
}

fn check_count(st: &RadixStructure, n: usize) -> Result<()> {
    if n == 0 || n > st.size() {
        return Err(Error::out_of_range("n", n, format!("1..={}", st.size())));
    }
    Ok(())
}

/// Level `k` with `M_k <= n < M_{k+1}`, requiring `k + 1 <= N`.
fn level_of(st: &RadixStructure, n: usize) -> Result<usize> {
    if n == 0 || n >= st.size() {
        return Err(Error::out_of_range("n", n, format!("1..{}", st.size())));
    }
    Ok(st.index(n)?.order())
}

/// `D_n = Σ_{k<n} ψ_k`.
pub fn dirichlet_kernel(st: &RadixStructure, n: usize) -> Result<StepFunction> {
    check_count(st, n)?;
    Ok(synth(st, &coeffs_with(st, |_| 1.0, n)))
}

/// `K_n = (1/n) Σ_{k=1}^n D_k = Σ_{j<n} (1 − j/n) ψ_j`.
pub fn fejer_kernel(st: &RadixStructure, n: usize) -> Result<StepFunction> {
    check_count(st, n)?;
    let nf = n as f64;
    Ok(synth(st, &coeffs_with(st, |j| (nf - j as f64) / nf, n)))
}

/// `Σ_{v=lo}^{hi} A_{n−v}^{−α} ψ_v` for `α ∈ (0, 1)`.
pub fn tail_kernel(
    st: &RadixStructure,
    n: usize,
    lo: usize,
    hi: usize,
    alpha: f64,
) -> Result<StepFunction> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::OrderOutOfRange(-alpha));
    }
    if lo > hi || hi >= n || hi >= st.size() {
        return Err(Error::out_of_range(
            "hi",
            hi,
            format!("lo <= hi < min(n, {})", st.size()),
        ));
    }
    let table = CesaroTable::new(-alpha, n)?;
    let coeffs = coeffs_with(st, |v| if v >= lo { table.get(n - v) } else { 0.0 }, hi + 1);
    Ok(synth(st, &coeffs))
}

/// Grid convolution `(f * K)(x) = ∫ f(t) K(x − t) dμ(t)`, quadratic time.
pub fn convolve(f: &StepFunction, kernel: &StepFunction) -> Result<StepFunction> {
    let st = f.structure();
    if kernel.structure() != st {
        return Err(Error::StructureMismatch);
    }
    if st.size() > ORACLE_CAP {
        return Err(Error::OracleCapExceeded {
            size: st.size(),
            cap: ORACLE_CAP,
        });
    }
    let mut acc = vec![Complex64::new(0.0, 0.0); st.size()];
    for (t, &ft) in f.values().iter().enumerate() {
        let minus_t = st.label_digits(st.neg_label(t));
        let shift = st.translation(&minus_t);
        for (slot, &j) in acc.iter_mut().zip(&shift) {
            *slot += ft * kernel.values()[j];
        }
    }
    let scale = 1.0 / st.size() as f64;
    Ok(StepFunction::from_raw(
        st.clone(),
        acc.into_iter().map(|v| v * scale).collect(),
    ))
}

/// Maximum of a kernel over one shell `I_{A−1} \ I_A`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShellStats {
    /// Shell index `A`.
    pub shell: usize,
    pub max: f64,
    /// `M_A^{1−α}`.
    pub normalizer: f64,
    pub ratio: f64,
    pub points: usize,
}

/// Shell decomposition of the tail kernel
/// `Σ_{v=M_{k−1}}^{M_k−1} A_{n−v}^{−α} ψ_v` for `M_k <= n < M_{k+1}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelProfile {
    pub k: usize,
    pub n: usize,
    pub alpha: f64,
    /// Shells `A = 1, …, k−1`.
    pub shells: Vec<ShellStats>,
    /// Maximum over the remaining neighborhood `I_{k−1}`.
    pub core_max: f64,
    /// `∫ |kernel| dμ` over the whole group.
    pub l1_norm: f64,
}

impl KernelProfile {
    pub fn max_ratio(&self) -> f64 {
        self.shells.iter().map(|s| s.ratio).fold(0.0, f64::max)
    }
}

/// Shell profile of the tail kernel at level `k` (`k >= 2`, `k < N`).
///
/// The kernel only involves `ψ_v` with `v < M_k`, so it is materialized on
/// the `M_k`-point quotient grid rather than on the full grid.
pub fn shell_profile(st: &RadixStructure, k: usize, n: usize, alpha: f64) -> Result<KernelProfile> {
    if k < 2 || k >= st.level() {
        return Err(Error::level(k, format!("2..{}", st.level())));
    }
    let (lo_n, hi_n) = (st.coset_count(k), st.coset_count(k + 1));
    if n < lo_n || n >= hi_n {
        return Err(Error::out_of_range("n", n, format!("{lo_n}..{hi_n}")));
    }
    let quotient = st.prefix(k)?;
    let kernel = tail_kernel(&quotient, n, st.coset_count(k - 1), lo_n - 1, alpha)?;
    let abs: Vec<f64> = kernel.values().iter().map(|v| v.norm()).collect();
    let size = quotient.size();

    let shells = (1..k)
        .map(|a| {
            // labels of I_{A-1} \ I_A on the quotient grid
            let (start, end) = (size / st.coset_count(a), size / st.coset_count(a - 1));
            let max = abs[start..end].iter().copied().fold(0.0, f64::max);
            let normalizer = (st.coset_count(a) as f64).powf(1.0 - alpha);
            ShellStats {
                shell: a,
                max,
                normalizer,
                ratio: max / normalizer,
                points: end - start,
            }
        })
        .collect();
    let core_max = abs[..size / st.coset_count(k - 1)]
        .iter()
        .copied()
        .fold(0.0, f64::max);
    Ok(KernelProfile {
        k,
        n,
        alpha,
        shells,
        core_max,
        l1_norm: pairwise_sum_real(&abs) / size as f64,
    })
}

/// `[(1/n) ∫ |Σ_{k=1}^n α_k D_k| dμ] / [(1/√n) (Σ α_k²)^{1/2}]`.
pub fn lemma1_ratio(st: &RadixStructure, coeffs: &[f64]) -> Result<f64> {
    let n = coeffs.len();
    check_count(st, n)?;
    let energy: f64 = coeffs.iter().map(|a| a * a).sum();
    if energy == 0.0 {
        return Err(Error::ZeroVector);
    }
    // Σ_k α_k D_k = Σ_{j<n} (Σ_{k>j} α_k) ψ_j
    let mut spectral = vec![Complex64::new(0.0, 0.0); st.size()];
    let mut tail = 0.0;
    for j in (0..n).rev() {
        tail += coeffs[j];
        spectral[j] = Complex64::new(tail, 0.0);
    }
    let sum = synth(st, &spectral);
    let abs: Vec<f64> = sum.values().iter().map(|v| v.norm()).collect();
    let lhs = pairwise_sum_real(&abs) / st.size() as f64 / n as f64;
    let rhs = energy.sqrt() / (n as f64).sqrt();
    Ok(lhs / rhs)
}

/// Samples of a level-`N` function that is constant on level-`level` cosets,
/// read off at one point per coset.
fn restrict(f: &StepFunction, level: usize) -> Vec<Complex64> {
    let st = f.structure();
    let block = st.block_len(level);
    (0..st.coset_count(level))
        .map(|q| f.values()[q * block])
        .collect()
}

/// `max_x |∫ K(u) g(x+u) dμ(u) − c · g(x)|` on a quotient grid.
fn shifted_integral_residual(
    quotient: &RadixStructure,
    kernel: &[Complex64],
    g: &[Complex64],
    c: Complex64,
) -> f64 {
    let size = quotient.size();
    let mut worst = 0.0f64;
    for x in 0..size {
        let shift = quotient.translation(&quotient.label_digits(x));
        let acc: Complex64 = kernel.iter().zip(&shift).map(|(&k, &j)| k * g[j]).sum();
        worst = worst.max((acc / size as f64 - c * g[x]).norm());
    }
    worst
}

/// Residual of
/// `∫ Σ_{v=M_r}^{M_{r+1}−1} A_{n−v−1}^{−α−1} D_v(u) [S_{M_r}f(x+u) − S_{M_r}f(x)] dμ(u)`,
/// which vanishes identically. Requires `r <= k − 2` for `M_k <= n < M_{k+1}`.
pub fn zero_identity_i12(f: &StepFunction, r: usize, n: usize, alpha: f64) -> Result<f64> {
    let st = f.structure();
    let k = level_of(st, n)?;
    if k < 2 || r > k - 2 {
        return Err(Error::level(r, format!("r <= k - 2 with k = {k}")));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::OrderOutOfRange(-alpha));
    }
    let level = r + 1;
    let quotient = st.prefix(level)?;
    let weights = CesaroTable::any_order(-alpha - 1.0, n);
    let (lo, hi) = (st.coset_count(r), st.coset_count(r + 1));
    // coefficient of ψ_j in Σ_v w_v D_v is Σ_{v > j} w_v
    let mut coeffs = vec![Complex64::new(0.0, 0.0); quotient.size()];
    let mut tail = 0.0;
    for j in (0..hi).rev() {
        if j + 1 >= lo && j + 1 < hi {
            tail += weights.get(n - (j + 1) - 1);
        }
        coeffs[j] = Complex64::new(tail, 0.0);
    }
    let kernel = TransformPlan::new(&quotient).synthesize(&coeffs);

    let projected = crate::cesaro::partial_sum(&forward(f), lo)?;
    let g = restrict(&projected, level);
    // the g(x) term integrates K over the quotient grid as well
    let integral_of_kernel = pairwise_sum(&kernel) / quotient.size() as f64;
    Ok(shifted_integral_residual(
        &quotient,
        &kernel,
        &g,
        integral_of_kernel,
    ))
}

/// Residual of `∫ Σ_{v=M_{k−1}}^{M_k−1} A_{n−v}^{−α} ψ_v(u) S_{M_{k−1}}f(x+u) dμ(u)`,
/// which vanishes by orthogonality. Requires `k >= 1` and `M_k <= n < M_{k+1}`.
pub fn zero_identity_ii2(f: &StepFunction, k: usize, n: usize, alpha: f64) -> Result<f64> {
    let st = f.structure();
    if k < 1 || k >= st.level() {
        return Err(Error::level(k, format!("1..{}", st.level())));
    }
    let (lo_n, hi_n) = (st.coset_count(k), st.coset_count(k + 1));
    if n < lo_n || n >= hi_n {
        return Err(Error::out_of_range("n", n, format!("{lo_n}..{hi_n}")));
    }
    let quotient = st.prefix(k)?;
    let kernel = tail_kernel(&quotient, n, st.coset_count(k - 1), lo_n - 1, alpha)?;
    let projected = crate::cesaro::partial_sum(&forward(f), st.coset_count(k - 1))?;
    let g = restrict(&projected, k);
    Ok(shifted_integral_residual(
        &quotient,
        kernel.values(),
        &g,
        Complex64::new(0.0, 0.0),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::Spectrum;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn s(radices: &[usize]) -> RadixStructure {
        RadixStructure::new(radices.to_vec()).unwrap()
    }

    fn lcg_function(st: &RadixStructure, seed: u64) -> StepFunction {
        let mut state = seed ^ 0x9E37_79B9_7F4A_7C15;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let values = (0..st.size()).map(|_| c(next(), next())).collect();
        StepFunction::new(st.clone(), values).unwrap()
    }

    #[test]
    fn dirichlet_kernel_on_neighborhoods() {
        for radices in [&[2usize, 2, 2, 2][..], &[2, 3, 2, 3], &[3, 5, 2]] {
            let st = s(radices);
            let d1 = dirichlet_kernel(&st, 1).unwrap();
            assert!(d1.values().iter().all(|&v| v == c(1.0, 0.0)));
            for r in 0..=st.level() {
                let d = dirichlet_kernel(&st, st.coset_count(r)).unwrap();
                for (label, v) in d.values().iter().enumerate() {
                    let expected = if label < st.block_len(r) {
                        st.coset_count(r) as f64
                    } else {
                        0.0
                    };
                    assert!((v - c(expected, 0.0)).norm() < 1e-12);
                }
            }
            for n in 1..=st.size() {
                let d = dirichlet_kernel(&st, n).unwrap();
                let max = d.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
                assert!(max <= n as f64 + 1e-10);
                assert!((d.mean() - c(1.0, 0.0)).norm() < 1e-12);
            }
            assert!(dirichlet_kernel(&st, 0).is_err());
            assert!(dirichlet_kernel(&st, st.size() + 1).is_err());
        }
    }

    #[test]
    fn fejer_kernel_is_mean_of_dirichlet_kernels() {
        let st = s(&[2, 2, 2, 2]);
        let k1 = fejer_kernel(&st, 1).unwrap();
        assert!(k1.values().iter().all(|v| (v - c(1.0, 0.0)).norm() < 1e-15));
        for n in 1..=st.size() {
            let kn = fejer_kernel(&st, n).unwrap();
            assert!((kn.mean() - c(1.0, 0.0)).norm() < 1e-12);
            let mut direct = vec![c(0.0, 0.0); st.size()];
            for j in 1..=n {
                let d = dirichlet_kernel(&st, j).unwrap();
                for (a, b) in direct.iter_mut().zip(d.values()) {
                    *a += b / n as f64;
                }
            }
            let direct = StepFunction::new(st.clone(), direct).unwrap();
            assert!(kn.max_distance(&direct).unwrap() < 1e-12);
        }
    }

    #[test]
    fn tail_kernels() {
        let st = s(&[2, 3, 2]);
        let table = CesaroTable::new(-0.3, 9).unwrap();
        let t = tail_kernel(&st, 9, 0, 0, 0.3).unwrap();
        assert!(t
            .values()
            .iter()
            .all(|v| (v - c(table.get(9), 0.0)).norm() < 1e-15));

        let t = tail_kernel(&st, 11, 2, 7, 0.6).unwrap();
        let table = CesaroTable::new(-0.6, 11).unwrap();
        let at_zero: f64 = (2..=7).map(|v| table.get(11 - v)).sum();
        assert!((t.values()[0] - c(at_zero, 0.0)).norm() < 1e-13);

        assert!(tail_kernel(&st, 5, 3, 2, 0.5).is_err());
        assert!(tail_kernel(&st, 5, 1, 5, 0.5).is_err());
        assert!(tail_kernel(&st, 5, 1, 2, 1.0).is_err());
    }

    #[test]
    fn convolution_with_fejer_kernel_reproduces_fejer_mean() {
        let st = s(&[2, 3, 2, 3]);
        let f = lcg_function(&st, 4);
        let spec = forward(&f);
        for n in [1, 5, 12, 35] {
            let mean = crate::cesaro::fejer_mean(&spec, n).unwrap();
            let conv = convolve(&f, &fejer_kernel(&st, n + 1).unwrap()).unwrap();
            assert!(mean.max_distance(&conv).unwrap() < 1e-9);
        }
    }

    #[test]
    fn shell_profile_partitions_the_complement() {
        let st = s(&[2, 3, 2, 3, 2]);
        let k = 3;
        let p = shell_profile(&st, k, st.coset_count(k) + 1, 0.5).unwrap();
        let shell_points: usize = p.shells.iter().map(|s| s.points).sum();
        // quotient grid has M_k points, I_{k-1} holds m_{k-1} of them
        assert_eq!(shell_points + st.radix(k - 1), st.coset_count(k));
        assert!(p.shells.iter().all(|s| s.max >= 0.0 && s.ratio.is_finite()));

        // brute force over the full grid with explicit points
        let full =
            tail_kernel(&st, p.n, st.coset_count(k - 1), st.coset_count(k) - 1, 0.5).unwrap();
        for shell in &p.shells {
            let a = shell.shell;
            let max = (0..st.size())
                .filter_map(|label| {
                    let x = st.point_at(label).unwrap();
                    (x.in_neighborhood(a - 1) && !x.in_neighborhood(a))
                        .then(|| full.values()[label].norm())
                })
                .fold(0.0, f64::max);
            assert!((max - shell.max).abs() < 1e-12);
        }
        let l1: f64 = full.values().iter().map(|v| v.norm()).sum::<f64>() / st.size() as f64;
        assert!((l1 - p.l1_norm).abs() < 1e-12);

        assert!(matches!(
            shell_profile(&st, 1, 3, 0.5),
            Err(Error::LevelOutOfRange { .. })
        ));
        assert!(shell_profile(&st, 3, 5, 0.5).is_err());
    }

    #[test]
    fn lemma1_ratio_cases() {
        let st = s(&[2; 6]);
        assert!((lemma1_ratio(&st, &[1.0]).unwrap() - 1.0).abs() < 1e-14);
        for n in [2, 7, 16, 40] {
            let ones = vec![1.0; n];
            let kn = fejer_kernel(&st, n).unwrap();
            let l1 = kn.values().iter().map(|v| v.norm()).sum::<f64>() / st.size() as f64;
            assert!((lemma1_ratio(&st, &ones).unwrap() - l1).abs() < 1e-12);
        }
        assert!(matches!(
            lemma1_ratio(&st, &[0.0, 0.0]),
            Err(Error::ZeroVector)
        ));
        assert!(lemma1_ratio(&st, &[]).is_err());
    }

    /// Full-grid evaluation with explicit group points.
    fn i12_on_full_grid(f: &StepFunction, r: usize, n: usize, alpha: f64) -> f64 {
        let st = f.structure();
        let w = CesaroTable::any_order(-alpha - 1.0, n);
        let mut kernel = vec![c(0.0, 0.0); st.size()];
        for v in st.coset_count(r)..st.coset_count(r + 1) {
            let d = dirichlet_kernel(st, v).unwrap();
            for (a, b) in kernel.iter_mut().zip(d.values()) {
                *a += w.get(n - v - 1) * b;
            }
        }
        let g = crate::cesaro::partial_sum(&forward(f), st.coset_count(r)).unwrap();
        let mut worst = 0.0f64;
        for xl in 0..st.size() {
            let x = st.point_at(xl).unwrap();
            let mut acc = c(0.0, 0.0);
            for (ul, k) in kernel.iter().enumerate() {
                let u = st.point_at(ul).unwrap();
                let xu = x.add(&u).unwrap();
                acc += k * (g.at(&xu).unwrap() - g.values()[xl]);
            }
            worst = worst.max((acc / st.size() as f64).norm());
        }
        worst
    }

    #[test]
    fn i12_vanishes_and_agrees_with_full_grid() {
        let st = s(&[2, 3, 2, 3]);
        let f = lcg_function(&st, 17);
        for (r, n, alpha) in [(0, 12, 0.5), (1, 12, 0.5), (0, 20, 0.3), (1, 35, 0.8)] {
            let res = zero_identity_i12(&f, r, n, alpha).unwrap();
            assert!(res <= 1e-10, "r={r} n={n}: {res}");
            assert!(i12_on_full_grid(&f, r, n, alpha) <= 1e-10);
        }
        assert!(zero_identity_i12(&StepFunction::zero(&st), 1, 12, 0.5).unwrap() == 0.0);
        assert!(zero_identity_i12(&f, 1, 6, 0.5).is_err());
    }

    #[test]
    fn i12_for_polynomials_is_exactly_zero_structure() {
        // f of degree < M_r: S_{M_r} f = f
        let st = s(&[2, 3, 2, 3]);
        let r = 1;
        let mut coeffs = vec![c(0.0, 0.0); st.size()];
        coeffs[0] = c(0.4, 0.1);
        coeffs[1] = c(-1.0, 2.0);
        let f = crate::transform::inverse(&Spectrum::new(st.clone(), coeffs).unwrap());
        assert!(zero_identity_i12(&f, r, 13, 0.5).unwrap() <= 1e-12);
    }

    #[test]
    fn ii2_vanishes() {
        let st = s(&[3, 2, 3, 2]);
        let one = StepFunction::constant(&st, c(1.0, 0.0));
        for k in 1..st.level() {
            let n = st.coset_count(k);
            assert!(zero_identity_ii2(&one, k, n, 0.5).unwrap() <= 1e-12);
        }
        let f = lcg_function(&st, 23);
        let res = zero_identity_ii2(&f, 2, st.coset_count(2) + 1, 0.3).unwrap();
        assert!(res <= 1e-10);

        // polynomial of degree < M_{k-1}
        let k = 3;
        let mut coeffs = vec![c(0.0, 0.0); st.size()];
        for (j, v) in coeffs.iter_mut().enumerate().take(st.coset_count(k - 1)) {
            *v = c(j as f64, 1.0);
        }
        let poly = crate::transform::inverse(&Spectrum::new(st.clone(), coeffs).unwrap());
        assert!(zero_identity_ii2(&poly, k, st.coset_count(k) + 3, 0.7).unwrap() <= 1e-10);
        assert!(zero_identity_ii2(&f, 0, 1, 0.5).is_err());
        assert!(zero_identity_ii2(&f, 2, 3, 0.5).is_err());
    }
}
