//! L^p norms, moduli of continuity and the approximation experiment for the
//! negative-order Cesàro means.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::cesaro::cesaro_mean;
use crate::error::{Error, Result};
use crate::group::RadixStructure;
use crate::transform::{forward, pairwise_sum_real, Spectrum, StepFunction, TransformPlan};

/// Norm exponent `p ∈ [1, ∞]`. `p = ∞` is the grid supremum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            Ok(Exponent::Infinity)
        } else if p >= 1.0 && p.is_finite() {
            Ok(Exponent::Finite(p))
        } else {
            Err(Error::BadExponent(p))
        }
    }

    pub const ONE: Exponent = Exponent::Finite(1.0);
    pub const TWO: Exponent = Exponent::Finite(2.0);
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "Inf" | "infinity" | "∞" => Ok(Exponent::Infinity),
            other => {
                let p: f64 = other
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent `{other}`")))?;
                Exponent::new(p)
            }
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

fn norm_from_squares(p: Exponent, squares: &[f64]) -> f64 {
    match p {
        Exponent::Infinity => squares.iter().copied().fold(0.0, f64::max).sqrt(),
        Exponent::Finite(p) => {
            let powered: Vec<f64> = if p == 2.0 {
                squares.to_vec()
            } else if p == 1.0 {
                squares.iter().map(|s| s.sqrt()).collect()
            } else {
                squares.iter().map(|s| s.powf(p / 2.0)).collect()
            };
            (pairwise_sum_real(&powered) / squares.len() as f64).powf(1.0 / p)
        }
    }
}

/// `(∫ |f|^p dμ)^{1/p}`, or `max |f|` for `p = ∞`.
pub fn lp_norm(f: &StepFunction, p: Exponent) -> f64 {
    let squares: Vec<f64> = f.values().iter().map(|v| v.norm_sqr()).collect();
    norm_from_squares(p, &squares)
}

/// Accumulates `‖f(· + h) − f‖_p` for several exponents in one sweep.
struct NormAccumulator {
    sum_abs: f64,
    sum_sq: f64,
    max_sq: f64,
    general: Vec<(f64, f64)>,
}

impl NormAccumulator {
    fn new(ps: &[Exponent]) -> Self {
        let general = ps
            .iter()
            .filter_map(|p| match *p {
                Exponent::Finite(q) if q != 1.0 && q != 2.0 => Some((q, 0.0)),
                _ => None,
            })
            .collect();
        NormAccumulator {
            sum_abs: 0.0,
            sum_sq: 0.0,
            max_sq: 0.0,
            general,
        }
    }

    #[inline]
    fn push(&mut self, sq: f64) {
        self.sum_abs += sq.sqrt();
        self.sum_sq += sq;
        if sq > self.max_sq {
            self.max_sq = sq;
        }
        for (q, acc) in &mut self.general {
            *acc += sq.powf(*q / 2.0);
        }
    }

    fn finish(&self, p: Exponent, count: usize) -> f64 {
        let count = count as f64;
        match p {
            Exponent::Infinity => self.max_sq.sqrt(),
            Exponent::Finite(1.0) => self.sum_abs / count,
            Exponent::Finite(2.0) => (self.sum_sq / count).sqrt(),
            Exponent::Finite(q) => {
                let acc = self
                    .general
                    .iter()
                    .find(|(g, _)| *g == q)
                    .map(|(_, a)| *a)
                    .unwrap_or(0.0);
                (acc / count).powf(1.0 / q)
            }
        }
    }
}

/// `d[i][h] = ‖f(· + h) − f‖_{ps[i]}` for every `h ∈ I_r` (labels below
/// `M_N / M_r`). Uses `d(h) = d(−h)`.
fn translation_norms(f: &StepFunction, r: usize, ps: &[Exponent]) -> Vec<Vec<f64>> {
    let st = f.structure();
    let size = st.size();
    let count = st.block_len(r);
    let values = f.values();
    let mut out = vec![vec![0.0; count]; ps.len()];
    for h in 1..count {
        let neg = st.neg_label(h);
        if neg < h {
            for row in &mut out {
                row[h] = row[neg];
            }
            continue;
        }
        let digits = st.label_digits(h);
        // h ∈ I_lead, so translation only permutes labels inside I_lead cosets
        let lead = digits.iter().position(|&d| d != 0).unwrap_or(st.level());
        let block = st.block_len(lead);
        let shift = st.translation_within(lead, &digits);
        let mut acc = NormAccumulator::new(ps);
        for base in (0..size).step_by(block) {
            let chunk = &values[base..base + block];
            for (i, &j) in shift.iter().enumerate() {
                acc.push((chunk[j] - chunk[i]).norm_sqr());
            }
        }
        for (row, &p) in out.iter_mut().zip(ps) {
            row[h] = acc.finish(p, size);
        }
    }
    out
}

/// `ω(1/M_r, f)_p = sup_{h ∈ I_r} ‖f(· + h) − f‖_p`, computed exactly over
/// the `M_N / M_r` translations that act nontrivially on the grid.
pub fn modulus(f: &StepFunction, r: usize, p: Exponent) -> Result<f64> {
    let st = f.structure();
    if r > st.level() {
        return Err(Error::level(r, format!("0..={}", st.level())));
    }
    Ok(translation_norms(f, r, &[p])[0]
        .iter()
        .copied()
        .fold(0.0, f64::max))
}

/// `ω(1/M_0, f)_p, …, ω(1/M_N, f)_p`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModulusProfile {
    pub p: Exponent,
    /// `M_0, …, M_N` of the structure the profile was measured on.
    pub cumulative: Vec<usize>,
    pub omegas: Vec<f64>,
}

impl ModulusProfile {
    pub fn compute(f: &StepFunction, p: Exponent) -> Self {
        Self::compute_many(f, &[p]).pop().expect("one profile")
    }

    /// Profiles for several exponents from a single sweep over translations.
    ///
    /// Cost is `M_N² / 2` point differences.
    pub fn compute_many(f: &StepFunction, ps: &[Exponent]) -> Vec<Self> {
        let st = f.structure();
        let norms = translation_norms(f, 0, ps);
        ps.iter()
            .zip(norms)
            .map(|(&p, d)| {
                // I_r is the label prefix [0, M_N / M_r): prefix maxima
                let mut running = Vec::with_capacity(d.len());
                let mut best = 0.0f64;
                for v in &d {
                    best = best.max(*v);
                    running.push(best);
                }
                let omegas = (0..=st.level())
                    .map(|r| running[st.block_len(r) - 1])
                    .collect();
                ModulusProfile {
                    p,
                    cumulative: st.cumulative().to_vec(),
                    omegas,
                }
            })
            .collect()
    }

    pub fn omega(&self, r: usize) -> f64 {
        self.omegas[r]
    }

    pub fn level(&self) -> usize {
        self.omegas.len() - 1
    }

    /// Tail-sum bound in its two readings, stated and as used in the proof:
    /// `(Σ_{r<k} M_r/M_k · ω(1/M_k), Σ_{r≤k−2} M_r/M_k · ω(1/M_r))`.
    pub fn tail_bounds(&self, k: usize) -> Result<(f64, f64)> {
        if k < 2 || k > self.level() {
            return Err(Error::level(k, format!("2..={}", self.level())));
        }
        let mk = self.cumulative[k] as f64;
        let stated = (0..k)
            .map(|r| self.cumulative[r] as f64 / mk * self.omegas[k])
            .sum();
        let proof = (0..=k - 2)
            .map(|r| self.cumulative[r] as f64 / mk * self.omegas[r])
            .sum();
        Ok((stated, proof))
    }
}

/// `M_k^α ω(1/M_{k−1}, f)_p + Σ_{r=0}^{k−2} (M_r / M_k) ω(1/M_r, f)_p`.
pub fn theorem_bound(profile: &ModulusProfile, k: usize, alpha: f64) -> Result<f64> {
    if k < 2 || k > profile.level() {
        return Err(Error::level(k, format!("2..={}", profile.level())));
    }
    check_alpha(alpha)?;
    let m = &profile.cumulative;
    let mk = m[k] as f64;
    let lead = mk.powf(alpha) * profile.omegas[k - 1];
    let tail: f64 = (0..=k - 2)
        .map(|r| m[r] as f64 / mk * profile.omegas[r])
        .sum();
    Ok(lead + tail)
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::OrderOutOfRange(-alpha))
    }
}

fn error_from_spectrum(
    f: &StepFunction,
    spectrum: &Spectrum,
    n: usize,
    alpha: f64,
    p: Exponent,
) -> Result<f64> {
    check_alpha(alpha)?;
    let mean = cesaro_mean(spectrum, n, -alpha)?;
    Ok(lp_norm(&mean.sub(f)?, p))
}

/// `f − ∫f dμ`. The means reproduce constants, so errors are measured on the
/// centered function; a constant input then gives an exact zero.
fn centered(f: &StepFunction) -> StepFunction {
    let c = f.mean();
    let values = f.values().iter().map(|&v| v - c).collect();
    StepFunction::from_raw(f.structure().clone(), values)
}

/// `‖σ_n^{−α} f − f‖_p` for `α ∈ (0, 1)`.
pub fn approximation_error(f: &StepFunction, n: usize, alpha: f64, p: Exponent) -> Result<f64> {
    let g = centered(f);
    error_from_spectrum(&g, &forward(&g), n, alpha, p)
}

/// How `n` is chosen inside `[M_k, M_{k+1})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NPolicy {
    /// `n = M_k`
    Mk,
    /// `n = M_{k+1} − 1`
    Mk1,
    /// Seeded uniform draw, one per level in increasing `k`.
    Random(u64),
}

impl FromStr for NPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "mk" => return Ok(NPolicy::Mk),
            "mk1" => return Ok(NPolicy::Mk1),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("random:") {
            let rest = rest.strip_prefix("seed=").unwrap_or(rest);
            let seed = rest
                .parse()
                .map_err(|_| Error::Parse(format!("bad seed in n-policy `{s}`")))?;
            return Ok(NPolicy::Random(seed));
        }
        Err(Error::Parse(format!("unknown n-policy `{s}`")))
    }
}

impl fmt::Display for NPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NPolicy::Mk => write!(f, "mk"),
            NPolicy::Mk1 => write!(f, "mk1"),
            NPolicy::Random(seed) => write!(f, "random:{seed}"),
        }
    }
}

/// One level of the convergence experiment.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub k: usize,
    pub n: usize,
    pub error: f64,
    pub bound: f64,
    /// `error / bound`, absent when the bound vanishes.
    pub ratio: Option<f64>,
}

/// Convergence rows for `k ∈ ks` (within `[2, N−1]`), measuring the modulus
/// profile of `f` at exponent `p`.
pub fn convergence_table(
    f: &StepFunction,
    alpha: f64,
    p: Exponent,
    ks: RangeInclusive<usize>,
    policy: NPolicy,
) -> Result<Vec<ConvergenceRow>> {
    check_levels(f.structure(), &ks)?;
    let profile = ModulusProfile::compute(f, p);
    convergence_table_with_profile(f, &profile, alpha, ks, policy)
}

/// As [`convergence_table`] with a precomputed profile.
pub fn convergence_table_with_profile(
    f: &StepFunction,
    profile: &ModulusProfile,
    alpha: f64,
    ks: RangeInclusive<usize>,
    policy: NPolicy,
) -> Result<Vec<ConvergenceRow>> {
    let st = f.structure();
    check_levels(st, &ks)?;
    check_alpha(alpha)?;
    if profile.cumulative != st.cumulative() {
        return Err(Error::StructureMismatch);
    }
    let g = centered(f);
    let spectrum = forward(&g);
    let mut rng = match policy {
        NPolicy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    ks.map(|k| {
        let (lo, hi) = (st.coset_count(k), st.coset_count(k + 1));
        let n = match policy {
            NPolicy::Mk => lo,
            NPolicy::Mk1 => hi - 1,
            NPolicy::Random(_) => rng.as_mut().expect("seeded").random_range(lo..hi),
        };
        let error = error_from_spectrum(&g, &spectrum, n, alpha, profile.p)?;
        let bound = theorem_bound(profile, k, alpha)?;
        let ratio = (bound > 0.0).then(|| error / bound);
        Ok(ConvergenceRow {
            k,
            n,
            error,
            bound,
            ratio,
        })
    })
    .collect()
}

fn check_levels(st: &RadixStructure, ks: &RangeInclusive<usize>) -> Result<()> {
    let top = st.level().saturating_sub(1);
    if ks.is_empty() || *ks.start() < 2 || *ks.end() > top {
        return Err(Error::level(
            *ks.start(),
            format!("levels within 2..={top}"),
        ));
    }
    Ok(())
}

/// Lacunary series `Σ_{j<N} M_j^{−β} ψ_{M_j}` for `β ∈ (0, 1]`.
pub fn gen_lacunary(beta: f64, st: &RadixStructure) -> Result<StepFunction> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::Parse(format!(
            "lacunary beta {beta} must lie in (0, 1]"
        )));
    }
    let mut coeffs = vec![Complex64::new(0.0, 0.0); st.size()];
    for j in 0..st.level() {
        let mj = st.coset_count(j);
        coeffs[mj] = Complex64::new((mj as f64).powf(-beta), 0.0);
    }
    let plan = TransformPlan::new(st);
    Ok(StepFunction::from_raw(st.clone(), plan.synthesize(&coeffs)))
}

/// Indicator of the level-`r` coset with label `label`.
pub fn gen_indicator(r: usize, label: usize, st: &RadixStructure) -> Result<StepFunction> {
    if r > st.level() {
        return Err(Error::level(r, format!("0..={}", st.level())));
    }
    if label >= st.coset_count(r) {
        return Err(Error::out_of_range(
            "label",
            label,
            format!("0..{}", st.coset_count(r)),
        ));
    }
    let block = st.block_len(r);
    let values = (0..st.size())
        .map(|j| {
            if j / block == label {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    Ok(StepFunction::from_raw(st.clone(), values))
}

/// Seeded random function constant on level-`r` cosets, values uniform in
/// the square `[−1, 1]²`.
pub fn gen_random(seed: u64, r: usize, st: &RadixStructure) -> Result<StepFunction> {
    if r > st.level() {
        return Err(Error::level(r, format!("0..={}", st.level())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let block = st.block_len(r);
    let mut values = Vec::with_capacity(st.size());
    for _ in 0..st.coset_count(r) {
        let v = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        values.extend(std::iter::repeat_n(v, block));
    }
    Ok(StepFunction::from_raw(st.clone(), values))
}

/// Textual description of a generated test function, e.g.
/// `lacunary:beta=0.9`, `indicator:r=2,label=0`, `random:seed=42,r=3`,
/// `constant:c=1`.
#[derive(Clone, Debug, PartialEq)]
pub enum FunctionSpec {
    Lacunary { beta: f64 },
    Indicator { r: usize, label: usize },
    Random { seed: u64, r: usize },
    Constant { value: f64 },
}

impl FunctionSpec {
    pub fn build(&self, st: &RadixStructure) -> Result<StepFunction> {
        match *self {
            FunctionSpec::Lacunary { beta } => gen_lacunary(beta, st),
            FunctionSpec::Indicator { r, label } => gen_indicator(r, label, st),
            FunctionSpec::Random { seed, r } => gen_random(seed, r, st),
            FunctionSpec::Constant { value } => {
                Ok(StepFunction::constant(st, Complex64::new(value, 0.0)))
            }
        }
    }
}

impl FromStr for FunctionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, args) = s.split_once(':').unwrap_or((s, ""));
        let mut params = std::collections::BTreeMap::new();
        for item in args.split(',').filter(|a| !a.trim().is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value in `{item}`")))?;
            params.insert(k.trim().to_string(), v.trim().to_string());
        }
        fn get<T: FromStr>(
            params: &std::collections::BTreeMap<String, String>,
            key: &str,
            default: Option<T>,
        ) -> Result<T> {
            match params.get(key) {
                Some(v) => v
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad value `{v}` for `{key}`"))),
                None => default.ok_or_else(|| Error::Parse(format!("missing parameter `{key}`"))),
            }
        }
        match kind {
            "lacunary" => Ok(FunctionSpec::Lacunary {
                beta: get(&params, "beta", Some(0.9))?,
            }),
            "indicator" => Ok(FunctionSpec::Indicator {
                r: get(&params, "r", None)?,
                label: get(&params, "label", Some(0))?,
            }),
            "random" => Ok(FunctionSpec::Random {
                seed: get(&params, "seed", Some(42))?,
                r: get(&params, "r", None)?,
            }),
            "constant" => Ok(FunctionSpec::Constant {
                value: get(&params, "c", Some(1.0))?,
            }),
            other => Err(Error::Parse(format!("unknown function kind `{other}`"))),
        }
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::Lacunary { beta } => write!(f, "lacunary:beta={beta}"),
            FunctionSpec::Indicator { r, label } => write!(f, "indicator:r={r},label={label}"),
            FunctionSpec::Random { seed, r } => write!(f, "random:seed={seed},r={r}"),
            FunctionSpec::Constant { value } => write!(f, "constant:c={value}"),
        }
    }
}
