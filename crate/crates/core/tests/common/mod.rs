//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::sync::{Mutex, MutexGuard};
use std::time::Instant;

/// Serializes the timed tests so wall-clock budgets are not shared.
static TIMING: Mutex<()> = Mutex::new(());

pub fn timing_lock() -> MutexGuard<'static, ()> {
    TIMING.lock().unwrap_or_else(|e| e.into_inner())
}

pub struct Criterion {
    name: &'static str,
    start: Instant,
    budget_s: Option<f64>,
}

impl Criterion {
    pub fn start(name: &'static str, budget_s: Option<f64>) -> Self {
        Criterion {
            name,
            start: Instant::now(),
            budget_s,
        }
    }

    /// Prints one line and panics if the criterion failed.
    pub fn finish(self, ok: bool, detail: String) {
        let secs = self.start.elapsed().as_secs_f64();
        let in_time = self.budget_s.is_none_or(|b| secs < b);
        let budget = self
            .budget_s
            .map(|b| format!(" / budget {b:.0} s"))
            .unwrap_or_default();
        let status = if ok && in_time { "PASS" } else { "FAIL" };
        println!("[{status}] {}: {detail} ({secs:.2} s{budget})", self.name);
        assert!(ok, "{} failed: {detail}", self.name);
        assert!(
            in_time,
            "{} exceeded its runtime budget: {secs:.2} s",
            self.name
        );
    }
}

/// Unnormalized double-double value `hi + lo`.
#[derive(Clone, Copy, Debug)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

impl Dd {
    pub fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    fn norm(hi: f64, lo: f64) -> Self {
        let (s, e) = two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        Dd::norm(s, e + self.lo + o.lo)
    }

    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    pub fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        Dd::norm(p, e + self.hi * o.lo + self.lo * o.hi)
    }

    pub fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul(Dd::new(q1)));
        let q2 = r.hi / o.hi;
        let r = r.sub(o.mul(Dd::new(q2)));
        let q3 = r.hi / o.hi;
        Dd::norm(q1, q2).add(Dd::new(q3))
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// `A_0^α … A_n^α` in double-double arithmetic.
pub fn cesaro_dd(order: f64, n: usize) -> Vec<Dd> {
    let mut out = Vec::with_capacity(n + 1);
    let mut a = Dd::new(1.0);
    out.push(a);
    for j in 1..=n {
        let num = Dd::new(order).add(Dd::new(j as f64));
        a = a.mul(num).div(Dd::new(j as f64));
        out.push(a);
    }
    out
}

/// `Γ(x)` for `x > 0` by upward shift and the Stirling series.
pub fn gamma(x: f64) -> f64 {
    let mut shift = 1.0;
    let mut z = x;
    while z < 20.0 {
        shift *= z;
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let series = inv
        * (1.0 / 12.0
            - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 / 1188.0))));
    let ln = (z - 0.5) * z.ln() - z + 0.5 * (2.0 * std::f64::consts::PI).ln() + series;
    ln.exp() / shift
}

/// Least-squares slope of `ys` against `xs`.
pub fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// Digits of a grid label, most significant (`x_0`) first.
pub fn label_to_digits(radices: &[usize], label: usize) -> Vec<usize> {
    let mut d = vec![0; radices.len()];
    let mut rest = label;
    for k in (0..radices.len()).rev() {
        d[k] = rest % radices[k];
        rest /= radices[k];
    }
    d
}

pub fn digits_to_label(radices: &[usize], digits: &[usize]) -> usize {
    digits
        .iter()
        .zip(radices)
        .fold(0, |acc, (&d, &m)| acc * m + d)
}

/// Label of `x + y` with coordinatewise addition.
pub fn add_labels(radices: &[usize], x: usize, y: usize) -> usize {
    let (dx, dy) = (label_to_digits(radices, x), label_to_digits(radices, y));
    let sum: Vec<usize> = dx
        .iter()
        .zip(&dy)
        .zip(radices)
        .map(|((a, b), m)| (a + b) % m)
        .collect();
    digits_to_label(radices, &sum)
}

/// `ψ_n(x)` straight from the digit definition.
pub fn psi(radices: &[usize], n: usize, x_label: usize) -> vilenkin::Complex64 {
    let x = label_to_digits(radices, x_label);
    let mut rest = n;
    let mut phase = 0.0;
    for (k, &m) in radices.iter().enumerate() {
        let nk = rest % m;
        rest /= m;
        phase += (nk * x[k]) as f64 / m as f64;
    }
    vilenkin::Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * phase)
}

/// Index `A` of the shell `I_{A−1} \ I_A` holding `x`, or `None` on `I_{k−1}`.
pub fn shell_of(radices: &[usize], x_label: usize, k: usize) -> Option<usize> {
    let d = label_to_digits(radices, x_label);
    d.iter().take(k - 1).position(|&v| v != 0).map(|p| p + 1)
}

#[test]
fn oracles_are_sane() {
    let third = Dd::new(1.0).div(Dd::new(3.0));
    assert!(third.mul(Dd::new(3.0)).sub(Dd::new(1.0)).to_f64().abs() < 1e-30);
    assert!((gamma(0.5) - std::f64::consts::PI.sqrt()).abs() < 1e-14);
    assert!((gamma(5.0) - 24.0).abs() < 1e-12);
    assert_eq!(add_labels(&[2, 2, 2], 0b101, 0b011), 0b110);
}
