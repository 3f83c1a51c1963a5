//! Dense univariate polynomials over an exact coefficient ring.
//!
//! Masses are polynomials in `x = 1/q`. The coefficient type is generic
//! over the num-traits ring operations; the crate root fixes the concrete
//! aliases used by the mass engine.

use std::fmt;
use std::ops::{Add, Mul};

use num_traits::{FromPrimitive, One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Ring operations a polynomial coefficient needs.
pub trait Coefficient:
    Clone + PartialEq + Zero + One + Add<Output = Self> + Mul<Output = Self>
{
}

impl<T> Coefficient for T where T: Clone + PartialEq + Zero + One + Add<Output = T> + Mul<Output = T>
{}

/// `coeffs[k]` is the coefficient of `x^k`; trailing zeros are always trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Coefficient> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::new(vec![T::one()])
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// `c · x^k`
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Adds `c · x^k` in place.
    pub fn add_term(&mut self, c: T, k: usize) {
        if c.is_zero() {
            return;
        }
        if self.coeffs.len() <= k {
            self.coeffs.resize(k + 1, T::zero());
        }
        let cur = std::mem::replace(&mut self.coeffs[k], T::zero());
        self.coeffs[k] = cur + c;
        self.trim();
    }

    /// `p(x^f)`
    pub fn substitute_power(&self, f: usize) -> Self {
        assert!(f >= 1, "substitution exponent must be positive");
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); (self.coeffs.len() - 1) * f + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * f] = c.clone();
        }
        Poly::new(coeffs)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }

    /// Sum of the coefficients, i.e. the value at `x = 1`.
    pub fn coefficient_sum(&self) -> T {
        self.coeffs.iter().cloned().fold(T::zero(), |a, b| a + b)
    }

    /// Horner evaluation in any scalar the coefficients convert into.
    /// Returns `None` if a coefficient is not representable in `S`.
    pub fn eval<S>(&self, x: &S) -> Option<S>
    where
        T: ToPrimitive,
        S: FromPrimitive + Clone + Zero + Add<Output = S> + Mul<Output = S>,
    {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            let c = c
                .to_u128()
                .and_then(S::from_u128)
                .or_else(|| c.to_i128().and_then(S::from_i128))?;
            acc = acc * x.clone() + c;
        }
        Some(acc)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

impl<T: Coefficient> Add for &Poly<T> {
    type Output = Poly<T>;

    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Coefficient> Add for Poly<T> {
    type Output = Poly<T>;

    fn add(self, rhs: Poly<T>) -> Poly<T> {
        &self + &rhs
    }
}

impl<T: Coefficient> Mul for &Poly<T> {
    type Output = Poly<T>;

    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let cur = std::mem::replace(&mut coeffs[i + j], T::zero());
                coeffs[i + j] = cur + a.clone() * b.clone();
            }
        }
        Poly::new(coeffs)
    }
}

impl<T: Coefficient> Mul for Poly<T> {
    type Output = Poly<T>;

    fn mul(self, rhs: Poly<T>) -> Poly<T> {
        &self * &rhs
    }
}

impl<T: Coefficient> std::iter::Sum for Poly<T> {
    fn sum<I: Iterator<Item = Poly<T>>>(iter: I) -> Self {
        iter.fold(Poly::zero(), |a, b| &a + &b)
    }
}

impl<T: Coefficient> From<Vec<T>> for Poly<T> {
    fn from(v: Vec<T>) -> Self {
        Poly::new(v)
    }
}

/// Ascending coefficient array; the zero polynomial serializes as `[0]`.
impl<T: Coefficient + Serialize> Serialize for Poly<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.coeffs.is_empty() {
            [T::zero()].serialize(serializer)
        } else {
            self.coeffs.serialize(serializer)
        }
    }
}

impl<T: Coefficient + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}x")?,
                _ => write!(f, "{c}x^{k}")?,
            }
        }
        Ok(())
    }
}

impl<T: Coefficient + fmt::Display> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;
    use proptest::prelude::*;

    type P = Poly<u64>;

    #[test]
    fn trims_trailing_zeros() {
        assert_eq!(P::new(vec![1, 0, 0]).coeffs(), &[1]);
        assert!(P::new(vec![0, 0]).is_zero());
        assert_eq!(P::zero().degree(), None);
    }

    #[test]
    fn product_of_sn_totals() {
        let a = P::new(vec![2, 2]);
        let b = P::new(vec![6, 6, 6]);
        assert_eq!((&a * &b).coeffs(), &[12, 24, 24, 12]);
    }

    #[test]
    fn substitution() {
        let p = P::new(vec![1, 2, 3]);
        assert_eq!(p.substitute_power(2).coeffs(), &[1, 0, 2, 0, 3]);
        assert_eq!(p.substitute_power(1), p);
        assert!(P::zero().substitute_power(3).is_zero());
    }

    #[test]
    fn exact_and_float_evaluation() {
        let d = P::new(vec![8, 8, 16, 8]);
        let half = Ratio::<i128>::new(1, 2);
        assert_eq!(d.eval(&half), Some(Ratio::from_integer(17)));
        assert_eq!(d.eval(&0.5f64), Some(17.0));
        let c = P::new(vec![8, 16, 16]);
        assert_eq!(
            c.eval(&Ratio::<i128>::new(1, 3)),
            Some(Ratio::new(16 * 3 + 16 + 72, 9))
        );
    }

    #[test]
    fn display() {
        assert_eq!(P::new(vec![8, 0, 16]).to_string(), "8 + 16x^2");
        assert_eq!(P::zero().to_string(), "0");
    }

    fn arb_poly() -> impl Strategy<Value = Poly<i64>> {
        prop::collection::vec(-50i64..50, 0..6).prop_map(Poly::new)
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn substitution_is_a_ring_map(a in arb_poly(), b in arb_poly(), f in 1usize..4) {
            prop_assert_eq!((&a * &b).substitute_power(f), &a.substitute_power(f) * &b.substitute_power(f));
            prop_assert_eq!((&a + &b).substitute_power(f), &a.substitute_power(f) + &b.substitute_power(f));
        }

        #[test]
        fn evaluation_is_a_ring_map(a in arb_poly(), b in arb_poly(), num in -5i128..5, den in 1i128..6) {
            let x = Ratio::new(num, den);
            let ea = a.eval(&x).unwrap();
            let eb = b.eval(&x).unwrap();
            prop_assert_eq!((&a * &b).eval(&x).unwrap(), ea * eb);
            prop_assert_eq!(a.pow(2).eval(&x).unwrap(), ea * ea);
        }
    }
}
