//! Bounded Vilenkin groups truncated at a finite level.
//!
//! A [`RadixStructure`] fixes the radix sequence `m_0, …, m_{N-1}` and the
//! cumulative products `M_0 = 1, M_{k+1} = m_k M_k`. Points of the group are
//! digit vectors with `x_k ∈ Z_{m_k}`; natural numbers below `M_N` carry the
//! little-endian digit expansion `n = Σ n_j M_j`.
//!
//! Grid layout: every function handled by this crate is constant on cosets of
//! `I_N`, and its samples are stored by *coset label*
//! `label(x) = Σ_j x_j · M_N / M_{j+1}`. The first digit is the most
//! significant one, so the coset `I_r(x)` is the contiguous block of
//! `M_N / M_r` labels starting at `coset_index(x, r) · M_N / M_r`, and `I_r`
//! itself is the label range `[0, M_N / M_r)`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug)]
struct Inner {
    radices: Vec<usize>,
    cumulative: Vec<usize>,
}

/// Radix sequence `m` together with its cumulative products `M_k`.
///
/// Cloning is cheap: the tables are shared.
#[derive(Clone, Debug)]
pub struct RadixStructure(Arc<Inner>);

impl PartialEq for RadixStructure {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.radices == other.0.radices
    }
}

impl Eq for RadixStructure {}

impl RadixStructure {
    /// Builds the structure for `radices`, checking `m_k >= 2` and that `M_N`
    /// fits in `usize`.
    pub fn new(radices: Vec<usize>) -> Result<Self> {
        if radices.is_empty() {
            return Err(Error::EmptyRadices);
        }
        let mut cumulative = Vec::with_capacity(radices.len() + 1);
        cumulative.push(1usize);
        for (position, &radix) in radices.iter().enumerate() {
            if radix < 2 {
                return Err(Error::RadixTooSmall { position, radix });
            }
            let next = cumulative[position]
                .checked_mul(radix)
                .ok_or(Error::Overflow {
                    level: position + 1,
                })?;
            cumulative.push(next);
        }
        Ok(RadixStructure(Arc::new(Inner {
            radices,
            cumulative,
        })))
    }

    /// Parses a radix specification (see [`parse_radices`]) and, when `level`
    /// is given, repeats the sequence periodically or truncates it to exactly
    /// `level` digits.
    pub fn from_spec(spec: &str, level: Option<usize>) -> Result<Self> {
        let base = parse_radices(spec)?;
        let radices = match level {
            None => base,
            Some(0) => return Err(Error::EmptyRadices),
            Some(level) => base.iter().copied().cycle().take(level).collect(),
        };
        Self::new(radices)
    }

    /// `m ≡ radix` at `level` digits.
    pub fn uniform(radix: usize, level: usize) -> Result<Self> {
        Self::new(vec![radix; level])
    }

    /// Number of digits `N`.
    pub fn level(&self) -> usize {
        self.0.radices.len()
    }

    pub fn radices(&self) -> &[usize] {
        &self.0.radices
    }

    pub fn radix(&self, k: usize) -> usize {
        self.0.radices[k]
    }

    /// `M_0, …, M_N`.
    pub fn cumulative(&self) -> &[usize] {
        &self.0.cumulative
    }

    /// `M_k`, the number of cosets of `I_k`.
    pub fn coset_count(&self, k: usize) -> usize {
        self.0.cumulative[k]
    }

    /// `M_N`, the number of grid points.
    pub fn size(&self) -> usize {
        self.0.cumulative[self.level()]
    }

    pub fn max_radix(&self) -> usize {
        self.0.radices.iter().copied().max().unwrap_or(0)
    }

    /// Label weight of digit `k`: `M_N / M_{k+1}`.
    pub fn stride(&self, k: usize) -> usize {
        self.size() / self.0.cumulative[k + 1]
    }

    /// Number of grid points in one coset of `I_r`: `M_N / M_r`.
    pub fn block_len(&self, r: usize) -> usize {
        self.size() / self.0.cumulative[r]
    }

    /// The structure made of the first `level` radices.
    pub fn prefix(&self, level: usize) -> Result<Self> {
        if level == 0 || level > self.level() {
            return Err(Error::level(level, format!("1..={}", self.level())));
        }
        if level == self.level() {
            return Ok(self.clone());
        }
        Self::new(self.0.radices[..level].to_vec())
    }

    pub fn zero(&self) -> GroupPoint {
        GroupPoint {
            structure: self.clone(),
            digits: vec![0; self.level()],
        }
    }

    /// `e_k`: the point whose `k`-th digit is 1 and all others 0.
    pub fn unit(&self, k: usize) -> Result<GroupPoint> {
        self.check_digit_position(k)?;
        let mut p = self.zero();
        p.digits[k] = 1;
        Ok(p)
    }

    pub fn point(&self, digits: Vec<usize>) -> Result<GroupPoint> {
        if digits.len() != self.level() {
            return Err(Error::LengthMismatch {
                expected: self.level(),
                found: digits.len(),
            });
        }
        for (k, &d) in digits.iter().enumerate() {
            if d >= self.radix(k) {
                return Err(Error::out_of_range(
                    "digit",
                    d,
                    format!("0..{} at position {k}", self.radix(k)),
                ));
            }
        }
        Ok(GroupPoint {
            structure: self.clone(),
            digits,
        })
    }

    /// The point whose level-`N` coset label is `label`.
    pub fn point_at(&self, label: usize) -> Result<GroupPoint> {
        if label >= self.size() {
            return Err(Error::out_of_range(
                "label",
                label,
                format!("0..{}", self.size()),
            ));
        }
        Ok(GroupPoint {
            structure: self.clone(),
            digits: self.label_digits(label),
        })
    }

    /// Digit expansion of `n`.
    pub fn index(&self, n: usize) -> Result<MixedRadixIndex> {
        if n >= self.size() {
            return Err(Error::out_of_range(
                "index",
                n,
                format!("0..{}", self.size()),
            ));
        }
        let mut digits = Vec::with_capacity(self.level());
        let mut rest = n;
        for &m in self.radices() {
            digits.push(rest % m);
            rest /= m;
        }
        let order = digits.iter().rposition(|&d| d != 0).unwrap_or(0);
        Ok(MixedRadixIndex {
            value: n,
            digits,
            order,
        })
    }

    /// Digitwise sum `a ⊕ b` of two indices, i.e. the index of `ψ_a ψ_b`.
    pub fn index_add(&self, a: usize, b: usize) -> Result<usize> {
        self.index_combine(a, b, |x, y, m| (x + y) % m)
    }

    /// Digitwise difference `a ⊖ b`, the index of `ψ_a conj(ψ_b)`.
    pub fn index_sub(&self, a: usize, b: usize) -> Result<usize> {
        self.index_combine(a, b, |x, y, m| (x + m - y) % m)
    }

    fn index_combine(
        &self,
        a: usize,
        b: usize,
        op: impl Fn(usize, usize, usize) -> usize,
    ) -> Result<usize> {
        let (da, db) = (self.index(a)?, self.index(b)?);
        let mut n = 0;
        for k in (0..self.level()).rev() {
            let m = self.radix(k);
            n = n * m + op(da.digits[k], db.digits[k], m);
        }
        Ok(n)
    }

    pub(crate) fn check_digit_position(&self, k: usize) -> Result<()> {
        if k >= self.level() {
            return Err(Error::level(k, format!("0..{}", self.level())));
        }
        Ok(())
    }

    pub(crate) fn label_digits(&self, label: usize) -> Vec<usize> {
        let mut digits = vec![0; self.level()];
        let mut rest = label;
        for k in (0..self.level()).rev() {
            let m = self.radix(k);
            digits[k] = rest % m;
            rest /= m;
        }
        digits
    }

    pub(crate) fn digits_label(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(self.radices())
            .fold(0, |acc, (&d, &m)| acc * m + d)
    }

    /// Label of `-x` given the label of `x`.
    pub(crate) fn neg_label(&self, label: usize) -> usize {
        let mut out = 0;
        let mut weight = 1;
        let mut rest = label;
        for k in (0..self.level()).rev() {
            let m = self.radix(k);
            let d = rest % m;
            rest /= m;
            out += ((m - d) % m) * weight;
            weight *= m;
        }
        out
    }

    /// Permutation `t` of the labels of one `I_from` coset with
    /// `t[label(x)] = label(x + h)`, where only digits `from..N` of `h` are
    /// used (the block-relative labels of digits `from..N`).
    pub(crate) fn translation_within(&self, from: usize, h: &[usize]) -> Vec<usize> {
        let mut perm = Vec::with_capacity(self.block_len(from));
        perm.push(0usize);
        for (k, &shift) in h.iter().enumerate().skip(from) {
            let m = self.radix(k);
            let mut next = Vec::with_capacity(perm.len() * m);
            for &p in &perm {
                let base = p * m;
                for x in 0..m {
                    let y = x + shift;
                    next.push(base + if y >= m { y - m } else { y });
                }
            }
            perm = next;
        }
        perm
    }

    /// Full translation permutation: `t[label(x)] = label(x + h)`.
    pub(crate) fn translation(&self, h: &[usize]) -> Vec<usize> {
        self.translation_within(0, h)
    }
}

impl fmt::Display for RadixStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.radices().iter().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for RadixStructure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_spec(s, None)
    }
}

/// Parses a radix specification.
///
/// Accepted forms, separated by commas: a plain radix (`3`), a power
/// (`2^10` is ten copies of 2) and a parenthesised group power
/// (`(2,3)^6` is `2,3` repeated six times). Radix validity (`>= 2`) is left
/// to [`RadixStructure::new`].
pub fn parse_radices(spec: &str) -> Result<Vec<usize>> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err(Error::EmptyRadices);
    }
    let mut out = Vec::new();
    for item in split_top_level(spec)? {
        let item = item.trim();
        let (body, count) = match item.rfind('^') {
            Some(pos) if !item[pos..].contains(')') => {
                let count: usize = item[pos + 1..]
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad repeat count in `{item}`")))?;
                (item[..pos].trim(), count)
            }
            _ => (item, 1),
        };
        let values = if let Some(inner) = body.strip_prefix('(') {
            let inner = inner
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in `{item}`")))?;
            parse_radices(inner)?
        } else {
            vec![body
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad radix `{body}`")))?]
        };
        for _ in 0..count {
            out.extend_from_slice(&values);
        }
    }
    if out.is_empty() {
        return Err(Error::EmptyRadices);
    }
    Ok(out)
}

fn split_top_level(spec: &str) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in spec.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced parentheses in `{spec}`")));
                }
            }
            ',' if depth == 0 => {
                parts.push(&spec[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in `{spec}`")));
    }
    parts.push(&spec[start..]);
    Ok(parts)
}

/// A point of the truncated group: digits `x_k ∈ Z_{m_k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPoint {
    structure: RadixStructure,
    digits: Vec<usize>,
}

impl GroupPoint {
    pub fn structure(&self) -> &RadixStructure {
        &self.structure
    }

    pub fn digits(&self) -> &[usize] {
        &self.digits
    }

    pub fn digit(&self, k: usize) -> usize {
        self.digits[k]
    }

    /// Digitwise `(x_k + y_k) mod m_k`.
    pub fn add(&self, other: &GroupPoint) -> Result<GroupPoint> {
        if self.structure != other.structure {
            return Err(Error::StructureMismatch);
        }
        let digits = self
            .digits
            .iter()
            .zip(&other.digits)
            .zip(self.structure.radices())
            .map(|((&a, &b), &m)| (a + b) % m)
            .collect();
        Ok(GroupPoint {
            structure: self.structure.clone(),
            digits,
        })
    }

    /// Digitwise `(m_k - x_k) mod m_k`.
    pub fn neg(&self) -> GroupPoint {
        let digits = self
            .digits
            .iter()
            .zip(self.structure.radices())
            .map(|(&a, &m)| (m - a) % m)
            .collect();
        GroupPoint {
            structure: self.structure.clone(),
            digits,
        }
    }

    pub fn sub(&self, other: &GroupPoint) -> Result<GroupPoint> {
        self.add(&other.neg())
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    /// Label in `[0, M_r)` of the coset `I_r(x)`:
    /// `Σ_{j<r} x_j · M_r / M_{j+1}`.
    pub fn coset_index(&self, r: usize) -> Result<usize> {
        let s = &self.structure;
        if r > s.level() {
            return Err(Error::level(r, format!("0..={}", s.level())));
        }
        Ok(self.digits[..r]
            .iter()
            .zip(s.radices())
            .fold(0, |acc, (&d, &m)| acc * m + d))
    }

    /// Full level-`N` label, the position of this point's coset on the grid.
    pub fn label(&self) -> usize {
        self.structure.digits_label(&self.digits)
    }

    /// Whether the point lies in `I_r`.
    pub fn in_neighborhood(&self, r: usize) -> bool {
        self.digits.iter().take(r).all(|&d| d == 0)
    }
}

/// A natural number `n < M_N` with its digits `n_j` and order `|n|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedRadixIndex {
    value: usize,
    digits: Vec<usize>,
    order: usize,
}

impl MixedRadixIndex {
    pub fn value(&self) -> usize {
        self.value
    }

    pub fn digits(&self) -> &[usize] {
        &self.digits
    }

    /// `|n| = max{k : n_k ≠ 0}`, with `|0| = 0`.
    pub fn order(&self) -> usize {
        self.order
    }
}
