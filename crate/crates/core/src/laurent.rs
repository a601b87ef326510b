//! Integer Laurent polynomials.
//!
//! A polynomial is stored as a sparse map from degree to a nonzero
//! arbitrary-precision coefficient. Every constructor drops zero entries, so
//! structural equality is ring equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Ring operation selector for [`combine`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaurentOp {
    Add,
    Sub,
    Mul,
}

/// A finitely supported function `Z -> Z`, read as `sum c_d t^d`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntLaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl IntLaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * t^degree`.
    pub fn monomial(c: impl Into<BigInt>, degree: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(degree, c.into());
        p
    }

    /// Builds `sum_i values[i] * t^(offset + i)`.
    pub fn from_dense<T: Into<BigInt> + Copy>(offset: i64, values: &[T]) -> Self {
        Self::from_terms(
            values
                .iter()
                .enumerate()
                .map(|(i, &c)| (offset + i as i64, c.into())),
        )
    }

    /// Sums the given `(degree, coefficient)` terms; repeated degrees accumulate.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (d, c) in terms {
            p.add_term(d, c);
        }
        p
    }

    fn add_term(&mut self, degree: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(degree) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `t^degree`; zero outside the support.
    pub fn coeff(&self, degree: i64) -> BigInt {
        self.coeffs.get(&degree).cloned().unwrap_or_default()
    }

    /// Lowest and highest degree with a nonzero coefficient.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let lo = *self.coeffs.keys().next()?;
        let hi = *self.coeffs.keys().next_back()?;
        Some((lo, hi))
    }

    /// Nonzero terms in ascending degree.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(&d, c)| (d, c))
    }

    /// Substitutes `t -> t^-1`.
    pub fn reverse(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&d, c)| (-d, c.clone())).collect(),
        }
    }

    /// Value at `t = 1`, i.e. the sum of all coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Multiplies by `t^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&d, c)| (d + shift, c.clone()))
                .collect(),
        }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let (Some((alo, ahi)), Some((blo, bhi))) = (self.degree_range(), other.degree_range())
        else {
            return Self::zero();
        };
        // Dense accumulation; supports here are a few hundred wide at most.
        let lo = alo + blo;
        let width = (ahi - alo + bhi - blo + 1) as usize;
        let mut acc = vec![BigInt::zero(); width];
        for (&da, ca) in &self.coeffs {
            for (&db, cb) in &other.coeffs {
                acc[(da + db - lo) as usize] += ca * cb;
            }
        }
        Self::from_terms(acc.into_iter().enumerate().map(|(i, c)| (lo + i as i64, c)))
    }
}

/// Exact ring arithmetic on two Laurent polynomials.
pub fn combine(a: &IntLaurentPoly, b: &IntLaurentPoly, op: LaurentOp) -> IntLaurentPoly {
    match op {
        LaurentOp::Add => a + b,
        LaurentOp::Sub => a - b,
        LaurentOp::Mul => a * b,
    }
}

impl Add for &IntLaurentPoly {
    type Output = IntLaurentPoly;

    fn add(self, rhs: &IntLaurentPoly) -> IntLaurentPoly {
        let mut out = self.clone();
        for (&d, c) in &rhs.coeffs {
            out.add_term(d, c.clone());
        }
        out
    }
}

impl Sub for &IntLaurentPoly {
    type Output = IntLaurentPoly;

    fn sub(self, rhs: &IntLaurentPoly) -> IntLaurentPoly {
        let mut out = self.clone();
        for (&d, c) in &rhs.coeffs {
            out.add_term(d, -c.clone());
        }
        out
    }
}

impl Mul for &IntLaurentPoly {
    type Output = IntLaurentPoly;

    fn mul(self, rhs: &IntLaurentPoly) -> IntLaurentPoly {
        self.mul_impl(rhs)
    }
}

impl Neg for &IntLaurentPoly {
    type Output = IntLaurentPoly;

    fn neg(self) -> IntLaurentPoly {
        IntLaurentPoly {
            coeffs: self.coeffs.iter().map(|(&d, c)| (d, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntLaurentPoly {
            type Output = IntLaurentPoly;

            fn $m(self, rhs: IntLaurentPoly) -> IntLaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for IntLaurentPoly {
    /// Renders `c_d*t^d + ...` in ascending degree; the zero polynomial is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (d, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*t^{d}")?;
        }
        Ok(())
    }
}

impl From<i64> for IntLaurentPoly {
    fn from(c: i64) -> Self {
        Self::monomial(c, 0)
    }
}

/// `1 - t`, which shows up in every difference/generating-function identity.
pub fn one_minus_t() -> IntLaurentPoly {
    IntLaurentPoly::from_dense(0, &[1i64, -1])
}

impl IntLaurentPoly {
    /// `self^k` for `k >= 0`.
    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(One::is_one)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(offset: i64, c: &[i64]) -> IntLaurentPoly {
        IntLaurentPoly::from_dense(offset, c)
    }

    #[test]
    fn difference_of_squares() {
        let r = combine(&p(0, &[1, -1]), &p(0, &[1, 1]), LaurentOp::Mul);
        assert_eq!(r, p(0, &[1, 0, -1]));
    }

    #[test]
    fn binomial_cube() {
        let a = p(0, &[1, -1]);
        assert_eq!(&(&a * &a) * &a, p(0, &[1, -3, 3, -1]));
        assert_eq!(a.pow(3), p(0, &[1, -3, 3, -1]));
    }

    #[test]
    fn negative_degrees() {
        // (t^-1 - t^-2)(1 + t^-1) = t^-1 - t^-3
        let a = p(-2, &[-1, 1]);
        let b = p(-1, &[1, 1]);
        assert_eq!(&a * &b, p(-3, &[-1, 0, 1]));
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(p(0, &[1, 2]).reverse(), p(-1, &[2, 1]));
        assert_eq!(
            IntLaurentPoly::monomial(1, 2).reverse(),
            IntLaurentPoly::monomial(1, -2)
        );
        assert!(IntLaurentPoly::zero().reverse().is_zero());
    }

    #[test]
    fn coeff_examples() {
        // constant term of (t^-1 - t^-2)(1 + t^-1 + t^-2)(1 + t + t^2)
        let f = &(&p(-2, &[-1, 1]) * &p(-2, &[1, 1, 1])) * &p(0, &[1, 1, 1]);
        assert_eq!(f.coeff(0), BigInt::from(1));
        assert_eq!(p(0, &[1, 2]).coeff(5), BigInt::zero());
        assert_eq!(p(0, &[1, 2]).coeff(1), BigInt::from(2));
    }

    #[test]
    fn canonical_form_drops_zeros() {
        let a = p(0, &[1, 1]);
        assert!((&a - &a).is_zero());
        assert_eq!(p(0, &[0, 0, 3, 0]), IntLaurentPoly::monomial(3, 2));
        assert_eq!(p(0, &[0, 0, 3, 0]).degree_range(), Some((2, 2)));
    }

    #[test]
    fn display_ascending() {
        assert_eq!(p(-1, &[2, 0, -3]).to_string(), "2*t^-1 + -3*t^1");
        assert_eq!(IntLaurentPoly::zero().to_string(), "0");
    }

    fn small_poly() -> impl Strategy<Value = IntLaurentPoly> {
        (-4i64..4, prop::collection::vec(-5i64..=5, 0..6)).prop_map(|(o, c)| p(o, &c))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn reverse_is_involutive_homomorphism(a in small_poly(), b in small_poly()) {
            prop_assert_eq!(a.reverse().reverse(), a.clone());
            prop_assert_eq!((&a * &b).reverse(), &a.reverse() * &b.reverse());
            for d in -12..12 {
                prop_assert_eq!(a.reverse().coeff(d), a.coeff(-d));
            }
        }
    }
}
