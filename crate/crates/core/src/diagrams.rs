//! Castelnuovo diagrams and Hilbert functions of points in the plane.
//!
//! A Castelnuovo function is a sequence `s` with `s_i = i + 1` for `i < sigma`
//! followed by a non-increasing tail `s_(sigma-1) >= s_sigma >= ... >= 0`.
//! Its cumulative sums give the Hilbert function of a length-`n` subscheme
//! of the plane, where `n` (the weight) is the sum of the entries.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::laurent::IntLaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("not a Castelnuovo sequence: {0:?}")]
    NotCastelnuovo(Vec<u32>),
    #[error("first difference of {0:?} is not a Castelnuovo sequence")]
    NotHilbertFunction(Vec<u32>),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}

/// True iff `seq`, padded with zeros, is a Castelnuovo function.
///
/// Equivalently: `s_0 = 1` (or the sequence is all zeros) and every step
/// either does not increase or climbs the staircase `s_i = i + 1`.
pub fn is_castelnuovo(seq: &[u32]) -> bool {
    let len = seq.iter().rposition(|&x| x != 0).map_or(0, |p| p + 1);
    if len == 0 {
        return true;
    }
    if seq[0] != 1 {
        return false;
    }
    (1..len).all(|i| step_ok(seq[i - 1] as i64, seq[i] as i64, i as i64))
}

/// Validity of the step from `prev = s_(i-1)` to `cur = s_i`.
#[inline]
pub(crate) fn step_ok(prev: i64, cur: i64, i: i64) -> bool {
    cur >= 0 && (cur <= prev || (cur == prev + 1 && cur == i + 1))
}

/// A Castelnuovo diagram with trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CastelnuovoDiagram {
    s: Vec<u32>,
    weight: u32,
    sigma: usize,
}

impl CastelnuovoDiagram {
    pub fn new(mut s: Vec<u32>) -> Result<Self, DiagramError> {
        while s.last() == Some(&0) {
            s.pop();
        }
        if !is_castelnuovo(&s) {
            return Err(DiagramError::NotCastelnuovo(s));
        }
        Ok(Self::new_unchecked(s))
    }

    /// Caller guarantees `s` is trimmed and Castelnuovo.
    pub(crate) fn new_unchecked(s: Vec<u32>) -> Self {
        debug_assert!(is_castelnuovo(&s) && s.last() != Some(&0));
        let weight = s.iter().sum();
        let sigma = (0..s.len())
            .find(|&i| s[i] >= s.get(i + 1).copied().unwrap_or(0))
            .unwrap_or(0);
        Self { s, weight, sigma }
    }

    /// The values `s_0 .. s_L`, without trailing zeros.
    pub fn values(&self) -> &[u32] {
        &self.s
    }

    /// `s_i`, zero outside the stored range (including negative `i`).
    pub fn get(&self, i: i64) -> u32 {
        if i < 0 {
            0
        } else {
            self.s.get(i as usize).copied().unwrap_or(0)
        }
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// `min { i | s_i >= s_(i+1) }`.
    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// `(weight, sigma)`.
    pub fn stats(&self) -> (u32, usize) {
        (self.weight, self.sigma)
    }

    pub fn hilbert_function(&self) -> HilbertFunction {
        HilbertFunction::from_diagram(self.clone())
    }

    /// `s(t)` as a polynomial.
    pub fn to_laurent(&self) -> IntLaurentPoly {
        IntLaurentPoly::from_dense(0, &self.s)
    }
}

impl fmt::Display for CastelnuovoDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_csv(f, &self.s)
    }
}

fn write_csv(f: &mut fmt::Formatter<'_>, vals: &[u32]) -> fmt::Result {
    for (i, v) in vals.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

/// Splits a comma-separated list, reporting the byte offset of a bad token.
fn parse_csv(text: &str, allow_tail: bool) -> Result<(Vec<u32>, bool), DiagramError> {
    let mut vals = Vec::new();
    let mut saw_tail = false;
    if text.trim().is_empty() {
        return Ok((vals, false));
    }
    let mut pos = 0;
    let tokens: Vec<&str> = text.split(',').collect();
    for (k, tok) in tokens.iter().enumerate() {
        let trimmed = tok.trim();
        let at = pos + (tok.len() - tok.trim_start().len());
        if allow_tail && (trimmed == ".." || trimmed == "...") {
            if k + 1 != tokens.len() {
                return Err(DiagramError::Parse {
                    position: at,
                    message: "'..' must be the last entry".into(),
                });
            }
            saw_tail = true;
        } else {
            let v = trimmed.parse::<u32>().map_err(|_| DiagramError::Parse {
                position: at,
                message: format!("expected a nonnegative integer, found {trimmed:?}"),
            })?;
            vals.push(v);
        }
        pos += tok.len() + 1;
    }
    Ok((vals, saw_tail))
}

impl FromStr for CastelnuovoDiagram {
    type Err = DiagramError;

    /// Parses `"1,2,3,4,4,1,1,1"`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let (vals, _) = parse_csv(text, false)?;
        if let Some(bad) = first_bad_column(&vals) {
            return Err(DiagramError::Parse {
                position: column_offset(text, bad),
                message: format!("column {bad} breaks the Castelnuovo shape"),
            });
        }
        Self::new(vals)
    }
}

/// Index of the first entry at which `vals` stops being Castelnuovo.
fn first_bad_column(vals: &[u32]) -> Option<usize> {
    let len = vals.iter().rposition(|&x| x != 0).map_or(0, |p| p + 1);
    if len == 0 {
        return None;
    }
    if vals[0] != 1 {
        return Some(0);
    }
    (1..len).find(|&i| !step_ok(vals[i - 1] as i64, vals[i] as i64, i as i64))
}

fn column_offset(text: &str, column: usize) -> usize {
    text.split(',').take(column).map(|t| t.len() + 1).sum()
}

/// Hilbert function of degree `n`: `h(m) = sum_(i <= m) s_i`, equal to `n`
/// for `m >= L - 1` and zero for `m < 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HilbertFunction {
    transient: Vec<u32>,
    degree: u32,
    diagram: CastelnuovoDiagram,
}

impl HilbertFunction {
    pub fn from_diagram(diagram: CastelnuovoDiagram) -> Self {
        let mut acc = 0;
        let transient = diagram
            .values()
            .iter()
            .map(|&x| {
                acc += x;
                acc
            })
            .collect();
        Self {
            transient,
            degree: diagram.weight(),
            diagram,
        }
    }

    /// Builds a Hilbert function from its initial values; the last value is
    /// taken as the stable value `n`.
    pub fn from_values(values: &[u32]) -> Result<Self, DiagramError> {
        let mut s = Vec::with_capacity(values.len());
        let mut prev = 0u32;
        for &v in values {
            if v < prev {
                return Err(DiagramError::NotHilbertFunction(values.to_vec()));
            }
            s.push(v - prev);
            prev = v;
        }
        let diagram = CastelnuovoDiagram::new(s)
            .map_err(|_| DiagramError::NotHilbertFunction(values.to_vec()))?;
        Ok(Self::from_diagram(diagram))
    }

    /// `h(m)`.
    pub fn value(&self, m: i64) -> u32 {
        if m < 0 {
            0
        } else {
            self.transient
                .get(m as usize)
                .copied()
                .unwrap_or(self.degree)
        }
    }

    /// `h(0) .. h(L-1)`; the function is constant `n` afterwards.
    pub fn transient(&self) -> &[u32] {
        &self.transient
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn diagram(&self) -> &CastelnuovoDiagram {
        &self.diagram
    }

    pub fn into_diagram(self) -> CastelnuovoDiagram {
        self.diagram
    }
}

impl fmt::Display for HilbertFunction {
    /// `"1,3,6,10,14,15,16,17,.."`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_csv(f, &self.transient)?;
        if self.transient.is_empty() {
            f.write_str("..")
        } else {
            f.write_str(",..")
        }
    }
}

impl FromStr for HilbertFunction {
    type Err = DiagramError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let (vals, tail) = parse_csv(text, true)?;
        if !tail {
            return Err(DiagramError::Parse {
                position: text.len(),
                message: "a Hilbert function must end with '..'".into(),
            });
        }
        if let Some(i) = vals.windows(2).position(|w| w[1] < w[0]) {
            return Err(DiagramError::Parse {
                position: column_offset(text, i + 1),
                message: "Hilbert function values must be non-decreasing".into(),
            });
        }
        let diffs: Vec<u32> = vals
            .iter()
            .scan(0, |prev, &v| {
                let d = v - *prev;
                *prev = v;
                Some(d)
            })
            .collect();
        if let Some(bad) = first_bad_column(&diffs) {
            return Err(DiagramError::Parse {
                position: column_offset(text, bad),
                message: format!("first difference breaks the Castelnuovo shape at degree {bad}"),
            });
        }
        Self::from_values(&vals)
    }
}

/// `a <= b` in the partial order of Hilbert functions of equal degree.
pub fn hf_leq(a: &HilbertFunction, b: &HilbertFunction) -> Result<bool, DiagramError> {
    if a.degree() != b.degree() {
        return Err(DiagramError::DegreeMismatch(a.degree(), b.degree()));
    }
    let len = a.transient.len().max(b.transient.len()) as i64;
    Ok((0..len).all(|m| a.value(m) <= b.value(m)))
}

/// Partial comparison; `None` when the two are incomparable or of different degree.
pub fn hf_cmp(a: &HilbertFunction, b: &HilbertFunction) -> Option<Ordering> {
    match (hf_leq(a, b).ok()?, hf_leq(b, a).ok()?) {
        (true, true) => Some(Ordering::Equal),
        (true, false) => Some(Ordering::Less),
        (false, true) => Some(Ordering::Greater),
        (false, false) => None,
    }
}

/// All Castelnuovo diagrams of weight `n`, in descending lexicographic order
/// of their `s`-sequences. `n = 0` yields the empty diagram only.
pub fn enumerate_diagrams(n: u32) -> Vec<CastelnuovoDiagram> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(CastelnuovoDiagram::new_unchecked(Vec::new()));
        return out;
    }
    let mut cur = vec![1u32];
    extend(&mut cur, n - 1, true, &mut out);
    out
}

/// Fills columns after `cur`; `staircase` means every column so far equals index + 1.
fn extend(cur: &mut Vec<u32>, remaining: u32, staircase: bool, out: &mut Vec<CastelnuovoDiagram>) {
    if remaining == 0 {
        out.push(CastelnuovoDiagram::new_unchecked(cur.clone()));
        return;
    }
    let prev = *cur.last().expect("column 0 is always set");
    if staircase && prev < remaining {
        cur.push(prev + 1);
        extend(cur, remaining - prev - 1, true, out);
        cur.pop();
    }
    for x in (1..=prev.min(remaining)).rev() {
        cur.push(x);
        extend(cur, remaining - x, false, out);
        cur.pop();
    }
}
