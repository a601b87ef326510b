//! Generic graded Betti numbers of the saturated ideal of a stratum.
//!
//! For an ideal with Hilbert function `phi`, the Hilbert series of the ideal
//! is `q(t) / (1 - t)^3` with `q(t) = sum_i (a_i - b_i) t^i`. For a generic
//! member of the stratum no degree carries both a generator and a relation,
//! so `a_i = max(q_i, 0)` and `b_i = max(-q_i, 0)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::diagrams::HilbertFunction;
use crate::laurent::{one_minus_t, IntLaurentPoly};

/// `dim_k A_m` for `A = k[x, y, z]`: `binomial(m + 2, 2)`, zero for `m < 0`.
pub fn h_a(m: i64) -> i64 {
    if m < 0 {
        0
    } else {
        (m + 2) * (m + 1) / 2
    }
}

/// `q(t) = (1 - t)^3 (h_A(t) - phi(t))`.
///
/// Since `(1 - t)^3 h_A(t) = 1` and `(1 - t) phi(t) = s(t)`, this equals
/// `1 - (1 - t)^2 s(t)`.
pub fn numerator(phi: &HilbertFunction) -> IntLaurentPoly {
    let s = phi.diagram().to_laurent();
    &IntLaurentPoly::one() - &(&one_minus_t().pow(2) * &s)
}

/// Generator counts `a` and relation counts `b`, indexed by degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    a: BTreeMap<i64, u64>,
    b: BTreeMap<i64, u64>,
}

impl BettiTable {
    /// Splits a numerator into its positive and negative parts.
    pub fn from_numerator(q: &IntLaurentPoly) -> Self {
        let mut table = Self::default();
        for (d, c) in q.terms() {
            let mag = c.abs().to_u64().expect("Betti numbers fit in u64");
            if c.is_positive() {
                table.a.insert(d, mag);
            } else {
                table.b.insert(d, mag);
            }
        }
        table
    }

    pub fn a(&self, i: i64) -> u64 {
        self.a.get(&i).copied().unwrap_or(0)
    }

    pub fn b(&self, i: i64) -> u64 {
        self.b.get(&i).copied().unwrap_or(0)
    }

    /// `a_i - b_i`.
    pub fn net(&self, i: i64) -> i64 {
        self.a(i) as i64 - self.b(i) as i64
    }

    pub fn generators(&self) -> &BTreeMap<i64, u64> {
        &self.a
    }

    pub fn relations(&self) -> &BTreeMap<i64, u64> {
        &self.b
    }

    /// Smallest degree with a generator.
    pub fn initial_degree(&self) -> Option<i64> {
        self.a.keys().next().copied()
    }

    /// Reassembles `sum_i (a_i - b_i) t^i`.
    pub fn to_numerator(&self) -> IntLaurentPoly {
        IntLaurentPoly::from_terms(
            self.a
                .iter()
                .map(|(&d, &c)| (d, BigInt::from(c)))
                .chain(self.b.iter().map(|(&d, &c)| (d, -BigInt::from(c)))),
        )
    }
}

fn write_map(f: &mut fmt::Formatter<'_>, m: &BTreeMap<i64, u64>) -> fmt::Result {
    f.write_str("{")?;
    for (i, (d, c)) in m.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{d}:{c}")?;
    }
    f.write_str("}")
}

impl fmt::Display for BettiTable {
    /// `a: {1:2}, b: {2:1}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a: ")?;
        write_map(f, &self.a)?;
        f.write_str(", b: ")?;
        write_map(f, &self.b)
    }
}

/// Generic Betti numbers of a general member of the stratum of `phi`.
pub fn generic_betti(phi: &HilbertFunction) -> BettiTable {
    BettiTable::from_numerator(&numerator(phi))
}
