//! Dimension and tangent function of a stratum `H_phi`.

use std::ops::RangeInclusive;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::diagrams::HilbertFunction;
use crate::laurent::IntLaurentPoly;
use crate::resolution::{generic_betti, h_a, BettiTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrataError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("window [{lo}, {hi}] does not cover the required range [{need_lo}, {need_hi}]")]
    WindowTooSmall {
        lo: i64,
        hi: i64,
        need_lo: i64,
        need_hi: i64,
    },
}

/// `f_phi(t) = (t^-1 - t^-2) s(t^-1) s(t)`.
pub fn dimension_series(phi: &HilbertFunction) -> IntLaurentPoly {
    let s = phi.diagram().to_laurent();
    let front = IntLaurentPoly::from_dense(-2, &[-1i64, 1]);
    &(&front * &s.reverse()) * &s
}

/// `dim H_phi = 1 + n + c_phi`, with `c_phi` the constant term of [`dimension_series`].
///
/// The empty subscheme (`n = 0`) is a single point.
pub fn stratum_dim(phi: &HilbertFunction) -> u64 {
    if phi.degree() == 0 {
        return 0;
    }
    let c = dimension_series(phi)
        .coeff(0)
        .to_i64()
        .expect("c_phi fits in i64");
    let dim = 1 + phi.degree() as i64 + c;
    debug_assert!(dim >= 0);
    dim as u64
}

/// `h^0(P^2, T(m))`, from `0 -> T -> O(2)^3 -> O(3) -> 0` and
/// `H^1(T(m)) = k` exactly when `m = -3`.
pub fn tangent_h_t(m: i64) -> i64 {
    3 * h_a(m + 2) - h_a(m + 3) + i64::from(m == -3)
}

/// Coefficients of a function `Z -> Z` over a contiguous degree range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientWindow {
    lo: i64,
    values: Vec<i64>,
}

impl CoefficientWindow {
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Last degree covered; `lo - 1` for an empty window.
    pub fn hi(&self) -> i64 {
        self.lo + self.values.len() as i64 - 1
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, m: i64) -> Option<i64> {
        if m < self.lo {
            return None;
        }
        self.values.get((m - self.lo) as usize).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (self.lo + i as i64, v))
    }
}

/// `t_phi(m) = h_T(m) - 3 phi(m + 1) + phi(m) + b_(m+3)`.
fn tangent_value(phi: &HilbertFunction, betti: &BettiTable, m: i64) -> i64 {
    tangent_h_t(m) - 3 * phi.value(m + 1) as i64 + phi.value(m) as i64 + betti.b(m + 3) as i64
}

/// Exact values of the tangent function `t_phi` on `range`.
pub fn tangent_function(phi: &HilbertFunction, range: RangeInclusive<i64>) -> CoefficientWindow {
    tangent_window_with(phi, &generic_betti(phi), range)
}

pub(crate) fn tangent_window_with(
    phi: &HilbertFunction,
    betti: &BettiTable,
    range: RangeInclusive<i64>,
) -> CoefficientWindow {
    let lo = *range.start();
    CoefficientWindow {
        lo,
        values: range.map(|m| tangent_value(phi, betti, m)).collect(),
    }
}

/// Degrees where `psi - phi` is nonzero, widened to where the tangent
/// functions may differ: `[min - 3, max + 4]`.
pub(crate) fn required_window(phi: &HilbertFunction, psi: &HilbertFunction) -> Option<(i64, i64)> {
    let len = phi.transient().len().max(psi.transient().len()) as i64;
    let mut diff = (0..len).filter(|&m| phi.value(m) != psi.value(m));
    let first = diff.next()?;
    let last = diff.next_back().unwrap_or(first);
    Some((first - 3, last + 4))
}

/// The tangent condition `t_psi <= t_phi`, checked on `window`.
///
/// The window must contain `[u - 3, v + 4]`, where `[u, v]` spans the degrees
/// at which `phi` and `psi` differ; outside it the two tangent functions agree.
pub fn tangent_leq(
    psi: &HilbertFunction,
    phi: &HilbertFunction,
    window: RangeInclusive<i64>,
) -> Result<bool, StrataError> {
    tangent_leq_with(psi, &generic_betti(psi), phi, &generic_betti(phi), window)
}

pub(crate) fn tangent_leq_with(
    psi: &HilbertFunction,
    psi_betti: &BettiTable,
    phi: &HilbertFunction,
    phi_betti: &BettiTable,
    window: RangeInclusive<i64>,
) -> Result<bool, StrataError> {
    if psi.degree() != phi.degree() {
        return Err(StrataError::DegreeMismatch(psi.degree(), phi.degree()));
    }
    let Some((need_lo, need_hi)) = required_window(phi, psi) else {
        return Ok(true);
    };
    let (lo, hi) = (*window.start(), *window.end());
    if lo > need_lo || hi < need_hi {
        return Err(StrataError::WindowTooSmall {
            lo,
            hi,
            need_lo,
            need_hi,
        });
    }
    Ok(window
        .into_iter()
        .all(|m| tangent_value(psi, psi_betti, m) <= tangent_value(phi, phi_betti, m)))
}

/// Dimension of a stratum together with a window of its tangent function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumInfo {
    pub dim: u64,
    pub tangent: CoefficientWindow,
}

pub fn stratum_info(phi: &HilbertFunction, range: RangeInclusive<i64>) -> StratumInfo {
    StratumInfo {
        dim: stratum_dim(phi),
        tangent: tangent_function(phi, range),
    }
}

/// A stratum's Hilbert function with its generic Betti table and dimension,
/// computed once and shared by every incidence question that mentions it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub hf: HilbertFunction,
    pub betti: BettiTable,
    pub dim: u64,
}

impl Stratum {
    pub fn new(hf: HilbertFunction) -> Self {
        let betti = generic_betti(&hf);
        let dim = stratum_dim(&hf);
        Self { hf, betti, dim }
    }

    /// `t_self <= t_other` on the standard window for the pair.
    pub fn tangent_leq(
        &self,
        other: &Stratum,
        window: RangeInclusive<i64>,
    ) -> Result<bool, StrataError> {
        tangent_leq_with(&self.hf, &self.betti, &other.hf, &other.betti, window)
    }
}
