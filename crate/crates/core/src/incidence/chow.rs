//! Intersection products in `Z[r, s, t] / (r^alpha, s^beta, t^gamma)`.
//!
//! With `r, s, t` the hyperplane classes of `P^(a_u - 1) x P^2 x P^(b_(v+3) - 1)`,
//! a nonzero product of the divisor classes cut out by the incidence
//! equations certifies that those equations have a common solution.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{condition_c_from, CoverPair, IncidenceError};
use crate::resolution::{generic_betti, BettiTable};

/// A linear form `r? + s? + t?` with 0/1 coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub r: bool,
    pub s: bool,
    pub t: bool,
}

impl LinearForm {
    pub const R_S_T: LinearForm = LinearForm {
        r: true,
        s: true,
        t: true,
    };
    pub const S_T: LinearForm = LinearForm {
        r: false,
        s: true,
        t: true,
    };
    pub const R_S: LinearForm = LinearForm {
        r: true,
        s: true,
        t: false,
    };
}

/// An element of the truncated ring, stored as exponent triple -> coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedChowElement {
    caps: [u32; 3],
    coeffs: BTreeMap<[u32; 3], BigInt>,
}

impl TruncatedChowElement {
    /// The unit `1`. A zero cap gives the zero ring.
    pub fn one(caps: [u32; 3]) -> Self {
        let mut coeffs = BTreeMap::new();
        if caps.iter().all(|&c| c >= 1) {
            coeffs.insert([0, 0, 0], BigInt::one());
        }
        Self { caps, coeffs }
    }

    pub fn caps(&self) -> [u32; 3] {
        self.caps
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `r^i s^j t^k`.
    pub fn coeff(&self, exps: [u32; 3]) -> BigInt {
        self.coeffs.get(&exps).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &BigInt)> {
        self.coeffs.iter()
    }

    /// Multiplies by a linear form, dropping monomials that reach a cap.
    pub fn mul_linear(&self, form: LinearForm) -> Self {
        let mut out: BTreeMap<[u32; 3], BigInt> = BTreeMap::new();
        let vars = [form.r, form.s, form.t];
        for (exps, c) in &self.coeffs {
            for (var, _) in vars.iter().enumerate().filter(|(_, &on)| on) {
                let mut e = *exps;
                e[var] += 1;
                if e[var] < self.caps[var] {
                    *out.entry(e).or_insert_with(BigInt::zero) += c;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Self {
            caps: self.caps,
            coeffs: out,
        }
    }
}

/// `prod_i form_i^(mult_i)` in `Z[r, s, t] / (r^caps[0], s^caps[1], t^caps[2])`.
pub fn chow_product(caps: [u32; 3], factors: &[(LinearForm, u32)]) -> TruncatedChowElement {
    let mut acc = TruncatedChowElement::one(caps);
    for &(form, mult) in factors {
        for _ in 0..mult {
            if acc.is_zero() {
                return acc;
            }
            acc = acc.mul_linear(form);
        }
    }
    acc
}

/// Checks that the intersection product attached to a condition-C pair with
/// `v >= u + 1` is nonzero.
///
/// For `v = u + 1` the product is `(s + t)^a_(v+2) (r + s)^b_(u+1)`; for
/// `v >= u + 2` it is `(r + s + t)(s + t)^a_(v+2) (r + s)^b_(u+1)`, and the
/// coefficient of `s^2 t^(a_(v+2) - 1) r^b_(u+1)` must also be positive.
/// The ring is truncated at `(r^a_u, s^3, t^b_(v+3))`.
pub fn verify_intersections(p: &CoverPair) -> Result<bool, IncidenceError> {
    verify_intersections_with(p, &generic_betti(p.phi()))
}

pub(crate) fn verify_intersections_with(
    p: &CoverPair,
    betti: &BettiTable,
) -> Result<bool, IncidenceError> {
    let (u, v) = (p.u(), p.v());
    if v < u + 1 {
        return Err(IncidenceError::Precondition(format!(
            "v = u = {u}: no intersection product to check"
        )));
    }
    if !condition_c_from(betti, u, v) {
        return Err(IncidenceError::Precondition(
            "condition C does not hold".into(),
        ));
    }
    let (u, v) = (u as i64, v as i64);
    let to_u32 = |x: u64| u32::try_from(x).expect("Betti number fits in u32");
    let a_u = to_u32(betti.a(u));
    let b_u1 = to_u32(betti.b(u + 1));
    let a_v2 = to_u32(betti.a(v + 2));
    let b_v3 = to_u32(betti.b(v + 3));
    let caps = [a_u, 3, b_v3];
    let mut factors = vec![(LinearForm::S_T, a_v2), (LinearForm::R_S, b_u1)];
    if v == u + 1 {
        return Ok(!chow_product(caps, &factors).is_zero());
    }
    factors.insert(0, (LinearForm::R_S_T, 1));
    let product = chow_product(caps, &factors);
    let Some(t_exp) = a_v2.checked_sub(1) else {
        return Ok(false);
    };
    Ok(!product.is_zero() && product.coeff([b_u1, 2, t_exp]).is_positive())
}
