//! Adjacent (length-zero) incidence problems between strata.
//!
//! A pair `phi < psi` of Hilbert functions of degree `n` has length zero when
//! nothing in `Gamma_n` lies strictly between them. Such a pair always has
//! `psi - phi = t^u + ... + t^v`, i.e. the diagram of `psi` arises from that
//! of `phi` by moving the top square of column `v + 1` onto column `u`.
//! For these pairs `H_phi` lies in the closure of `H_psi` exactly when the
//! dimension and tangent conditions hold, and that in turn is equivalent to
//! a condition on four generic Betti numbers of `phi` (condition C).

pub mod chow;

use std::fmt;

use thiserror::Error;

use crate::diagrams::{step_ok, CastelnuovoDiagram, HilbertFunction};
use crate::resolution::BettiTable;
use crate::strata::Stratum;

pub use chow::{chow_product, verify_intersections, LinearForm, TruncatedChowElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IncidenceError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("{psi} - {phi} is not of the form t^u + ... + t^v")]
    NotASquareMove { phi: String, psi: String },
    #[error("not length zero: {tau} lies strictly between {phi} and {psi}")]
    NotLengthZero {
        phi: String,
        psi: String,
        tau: String,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// A diagram reachable by moving the top square of column `v + 1` onto column `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareMove {
    pub psi: HilbertFunction,
    pub u: usize,
    pub v: usize,
}

/// Every `psi` with `s_psi = s_phi + t^u - t^(v+1)`, `0 < u <= v`, that is
/// still a Castelnuovo diagram. Ordered by `v`, then `u`.
pub fn square_moves(phi: &HilbertFunction) -> Vec<SquareMove> {
    let s = phi.diagram().values();
    let len = s.len();
    let at = |i: usize| s.get(i).copied().unwrap_or(0) as i64;
    let mut out = Vec::new();
    // Column c = v + 1 loses its top square, column u gains one.
    for c in 2..len {
        // Removing from c must keep the pair (c, c + 1) valid.
        if !step_ok(at(c) - 1, at(c + 1), c as i64 + 1) {
            continue;
        }
        for u in 1..c {
            let val = |i: usize| at(i) + i64::from(i == u) - i64::from(i == c);
            let touched = [u, u + 1, c, c + 1];
            if touched
                .iter()
                .all(|&i| step_ok(val(i - 1), val(i), i as i64))
            {
                let mut t = s.to_vec();
                t[u] += 1;
                t[c] -= 1;
                while t.last() == Some(&0) {
                    t.pop();
                }
                out.push(SquareMove {
                    psi: CastelnuovoDiagram::new_unchecked(t).hilbert_function(),
                    u,
                    v: c - 1,
                });
            }
        }
    }
    out
}

/// Searches for a Hilbert function strictly between `phi` and
/// `phi + t^u + ... + t^v`.
///
/// Any such `tau` is `phi + sum_(i in P) t^i` for a proper nonempty subset
/// `P` of `[u, v]`, and `tau` is valid iff `s_phi + (1 - t) P(t)` is
/// Castelnuovo. That condition is local (each step involves two adjacent
/// columns), so the subsets are scanned with a dynamic program over
/// `(P(i-2), P(i-1), seen a 1, seen a 0)` instead of one by one.
///
/// Returns the chosen subset as flags over `u..=v`.
pub fn find_intermediate(s: &[u32], u: usize, v: usize) -> Option<Vec<bool>> {
    assert!(1 <= u && u <= v);
    let at = |i: usize| s.get(i).copied().unwrap_or(0) as i64;
    const ONE: u8 = 4;
    const ZERO: u8 = 8;
    let steps = v + 3 - u;
    // layers[k][state] = (previous state, choice) for position u + k.
    let mut layers: Vec<[Option<(u8, bool)>; 16]> = Vec::with_capacity(steps);
    let mut reach = [false; 16];
    reach[0] = true;
    for k in 0..steps {
        let i = u + k;
        let mut next: [Option<(u8, bool)>; 16] = [None; 16];
        for st in 0..16u8 {
            if !reach[st as usize] {
                continue;
            }
            let p1 = i64::from(st & 1);
            let p2 = i64::from((st >> 1) & 1);
            let prev_val = at(i - 1) + p1 - p2;
            let choices: &[bool] = if i <= v { &[false, true] } else { &[false] };
            for &c in choices {
                let cur = at(i) + i64::from(c) - p1;
                if !step_ok(prev_val, cur, i as i64) {
                    continue;
                }
                let mut ns = u8::from(c) | ((st & 1) << 1) | (st & (ONE | ZERO));
                if i <= v {
                    ns |= if c { ONE } else { ZERO };
                }
                if next[ns as usize].is_none() {
                    next[ns as usize] = Some((st, c));
                }
            }
        }
        reach = next.map(|x| x.is_some());
        layers.push(next);
    }
    let mut st = (0..16u8).find(|&st| reach[st as usize] && st & ONE != 0 && st & ZERO != 0)?;
    let mut picks = vec![false; steps];
    for k in (0..steps).rev() {
        let (prev, c) = layers[k][st as usize].expect("reachable state has a parent");
        picks[k] = c;
        st = prev;
    }
    picks.truncate(v - u + 1);
    Some(picks)
}

/// A length-zero pair `(phi, psi)` with `psi - phi = t^u + ... + t^v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverPair {
    phi: HilbertFunction,
    psi: HilbertFunction,
    u: usize,
    v: usize,
}

impl CoverPair {
    /// Validates that `(phi, psi)` has length zero.
    pub fn new(phi: HilbertFunction, psi: HilbertFunction) -> Result<Self, IncidenceError> {
        if phi.degree() != psi.degree() {
            return Err(IncidenceError::DegreeMismatch(phi.degree(), psi.degree()));
        }
        let (u, v) = run_of_ones(&phi, &psi).ok_or_else(|| IncidenceError::NotASquareMove {
            phi: phi.to_string(),
            psi: psi.to_string(),
        })?;
        if let Some(pattern) = find_intermediate(phi.diagram().values(), u, v) {
            let tau = intermediate_from_pattern(&phi, u, &pattern);
            return Err(IncidenceError::NotLengthZero {
                phi: phi.to_string(),
                psi: psi.to_string(),
                tau: tau.to_string(),
            });
        }
        Ok(Self { phi, psi, u, v })
    }

    /// Builds a pair from a square move already known to be minimal.
    pub(crate) fn from_parts(
        phi: HilbertFunction,
        psi: HilbertFunction,
        u: usize,
        v: usize,
    ) -> Self {
        debug_assert_eq!(run_of_ones(&phi, &psi), Some((u, v)));
        Self { phi, psi, u, v }
    }

    pub fn phi(&self) -> &HilbertFunction {
        &self.phi
    }

    pub fn psi(&self) -> &HilbertFunction {
        &self.psi
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn v(&self) -> usize {
        self.v
    }
}

fn intermediate_from_pattern(phi: &HilbertFunction, u: usize, pattern: &[bool]) -> HilbertFunction {
    let mut s = phi.diagram().values().to_vec();
    s.resize(s.len().max(u + pattern.len() + 1), 0);
    for (k, &p) in pattern.iter().enumerate() {
        if p {
            s[u + k] += 1;
            s[u + k + 1] -= 1;
        }
    }
    CastelnuovoDiagram::new(s)
        .expect("pattern search only returns valid diagrams")
        .hilbert_function()
}

/// `(u, v)` when `psi - phi = t^u + ... + t^v` with `0 < u <= v`.
fn run_of_ones(phi: &HilbertFunction, psi: &HilbertFunction) -> Option<(usize, usize)> {
    let len = phi.transient().len().max(psi.transient().len()) as i64;
    let diff: Vec<i64> = (0..len)
        .map(|m| psi.value(m) as i64 - phi.value(m) as i64)
        .collect();
    let u = diff.iter().position(|&d| d != 0)?;
    let v = diff.iter().rposition(|&d| d != 0)?;
    (u > 0 && diff[u..=v].iter().all(|&d| d == 1)).then_some((u, v))
}

/// `Some(pair)` iff `(phi, psi)` has length zero.
pub fn is_length_zero(
    phi: &HilbertFunction,
    psi: &HilbertFunction,
) -> Result<Option<CoverPair>, IncidenceError> {
    match CoverPair::new(phi.clone(), psi.clone()) {
        Ok(p) => Ok(Some(p)),
        Err(IncidenceError::DegreeMismatch(a, b)) => Err(IncidenceError::DegreeMismatch(a, b)),
        Err(_) => Ok(None),
    }
}

/// All length-zero pairs with lower end `phi`.
pub fn covers_of(phi: &HilbertFunction) -> Vec<CoverPair> {
    square_moves(phi)
        .into_iter()
        .filter(|m| find_intermediate(phi.diagram().values(), m.u, m.v).is_none())
        .map(|m| CoverPair::from_parts(phi.clone(), m.psi, m.u, m.v))
        .collect()
}

/// The two halves of condition B.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConditionB {
    /// `dim H_phi < dim H_psi`
    pub dim_ok: bool,
    /// `t_psi <= t_phi`
    pub tangent_ok: bool,
}

impl ConditionB {
    pub fn holds(&self) -> bool {
        self.dim_ok && self.tangent_ok
    }
}

/// Window `[u - 3, v + 4]` on which tangent functions of a pair are compared.
pub fn standard_window(p: &CoverPair) -> std::ops::RangeInclusive<i64> {
    (p.u as i64 - 3)..=(p.v as i64 + 4)
}

pub fn condition_b(p: &CoverPair) -> ConditionB {
    condition_b_with(
        p,
        &Stratum::new(p.phi.clone()),
        &Stratum::new(p.psi.clone()),
    )
}

/// Condition B using precomputed strata for `phi` and `psi`.
pub fn condition_b_with(p: &CoverPair, phi: &Stratum, psi: &Stratum) -> ConditionB {
    debug_assert!(phi.hf == p.phi && psi.hf == p.psi);
    ConditionB {
        dim_ok: phi.dim < psi.dim,
        tangent_ok: psi
            .tangent_leq(phi, standard_window(p))
            .expect("standard window covers the pair"),
    }
}

/// Condition C on the generic Betti numbers `a_u, b_(u+1), a_(v+2), b_(v+3)` of `phi`.
pub fn condition_c_from(betti: &BettiTable, u: usize, v: usize) -> bool {
    let (u, v) = (u as i64, v as i64);
    let a_u = betti.a(u);
    let b_u1 = betti.b(u + 1);
    let a_v2 = betti.a(v + 2);
    let b_v3 = betti.b(v + 3);
    if a_u == 0 || b_v3 == 0 {
        return false;
    }
    match v - u {
        0 => true,
        1 => {
            (b_u1 <= a_u && a_u <= b_u1 + 1 && b_v3 == a_v2)
                || (a_u == b_u1 + 1 && b_v3 + 1 == a_v2)
        }
        _ => a_u == b_u1 + 1 && b_v3 == a_v2,
    }
}

pub fn condition_c(p: &CoverPair) -> bool {
    condition_c_from(&crate::resolution::generic_betti(&p.phi), p.u, p.v)
}

/// Type-zero shape on the diagram of `phi`, with `h = s_u`:
///
/// - `v = u + 1` and `s_u = s_(u+1) = s_(u+2) = h >= 1`;
/// - `s_(u-2) = s_(u-1) >= h + 1`;
/// - every later column has height `h - 1`, and there are at least two of
///   them when `h >= 2`.
pub fn type_zero_shape(s: &CastelnuovoDiagram, u: usize, v: usize) -> bool {
    if v != u + 1 || u < 2 {
        return false;
    }
    let g = |i: usize| s.get(i as i64) as i64;
    let h = g(u);
    if h < 1 || g(u - 1) < h + 1 || g(u - 2) != g(u - 1) || (u..=v + 1).any(|j| g(j) != h) {
        return false;
    }
    let tail = &s.values()[(v + 2).min(s.len())..];
    if h == 1 {
        tail.is_empty()
    } else {
        tail.len() >= 2 && tail.iter().all(|&x| x as i64 == h - 1)
    }
}

pub fn is_type_zero(p: &CoverPair) -> bool {
    type_zero_shape(p.phi.diagram(), p.u, p.v)
}

/// Resolution of one length-zero incidence problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IncidenceVerdict {
    pub incident: bool,
    pub dim_ok: bool,
    pub tangent_ok: bool,
    pub condition_c: bool,
    pub type_zero: bool,
    /// `(dim H_phi, dim H_psi)`
    pub dims: (u64, u64),
}

pub fn resolve_incidence(p: &CoverPair) -> IncidenceVerdict {
    resolve_incidence_with(
        p,
        &Stratum::new(p.phi.clone()),
        &Stratum::new(p.psi.clone()),
    )
}

pub fn resolve_incidence_with(p: &CoverPair, phi: &Stratum, psi: &Stratum) -> IncidenceVerdict {
    let b = condition_b_with(p, phi, psi);
    IncidenceVerdict {
        incident: b.holds(),
        dim_ok: b.dim_ok,
        tangent_ok: b.tangent_ok,
        condition_c: condition_c_from(&phi.betti, p.u, p.v),
        type_zero: is_type_zero(p),
        dims: (phi.dim, psi.dim),
    }
}

/// One verdict line: `u=.. v=.. dim φ→ψ: d1→d2 tangent:OK C:OK type0:N ⇒ INCIDENT`.
pub struct VerdictLine<'a>(pub &'a CoverPair, pub &'a IncidenceVerdict);

impl fmt::Display for VerdictLine<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let VerdictLine(p, v) = self;
        let ok = |b: bool| if b { "OK" } else { "FAIL" };
        write!(
            f,
            "u={} v={} dim φ→ψ: {}→{} tangent:{} C:{} type0:{} ⇒ {}",
            p.u,
            p.v,
            v.dims.0,
            v.dims.1,
            ok(v.tangent_ok),
            ok(v.condition_c),
            if v.type_zero { "Y" } else { "N" },
            if v.incident { "INCIDENT" } else { "NOT" }
        )
    }
}
