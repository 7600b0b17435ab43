//! Dense integer polynomials in one variable `q`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Coefficients indexed by degree, no trailing zeros. The zero polynomial has
/// no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `q^k`
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPolynomial { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    /// Horner evaluation.
    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * q + c)
    }
}

/// Exact evaluation of `f` at `p`.
pub fn eval_poly(f: &IntPolynomial, p: &BigInt) -> BigInt {
    f.eval(p)
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl std::iter::Sum for IntPolynomial {
    fn sum<I: Iterator<Item = IntPolynomial>>(iter: I) -> Self {
        iter.fold(IntPolynomial::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let f = IntPolynomial::from_i64s(&[1, 2, 0, 0]);
        assert_eq!(f.degree(), Some(1));
        assert!(IntPolynomial::from_i64s(&[0, 0]).is_zero());
        assert_eq!(IntPolynomial::zero().degree(), None);
        let g = IntPolynomial::from_i64s(&[1, 1]);
        assert!((&g - &g).is_zero());
    }

    #[test]
    fn evaluation() {
        let q1 = IntPolynomial::from_i64s(&[1, 1]);
        assert_eq!(eval_poly(&q1, &BigInt::from(3)), BigInt::from(4));
        assert_eq!(
            eval_poly(&IntPolynomial::zero(), &BigInt::from(7)),
            BigInt::zero()
        );
        let f = IntPolynomial::from_i64s(&[1, 1, 2, 1, 1]);
        assert_eq!(eval_poly(&f, &BigInt::from(2)), BigInt::from(35));
    }

    #[test]
    fn arithmetic() {
        let a = IntPolynomial::from_i64s(&[1, 1]);
        let b = IntPolynomial::from_i64s(&[-1, 1]);
        assert_eq!(&a * &b, IntPolynomial::from_i64s(&[-1, 0, 1]));
        assert_eq!(&a + &b, IntPolynomial::from_i64s(&[0, 2]));
        assert_eq!(a.shift(2), IntPolynomial::from_i64s(&[0, 0, 1, 1]));
        assert_eq!(
            IntPolynomial::monomial(3),
            IntPolynomial::from_i64s(&[0, 0, 0, 1])
        );
    }

    #[test]
    fn display() {
        assert_eq!(
            IntPolynomial::from_i64s(&[1, 1, 2, 1, 1]).to_string(),
            "q^4 + q^3 + 2q^2 + q + 1"
        );
        assert_eq!(IntPolynomial::from_i64s(&[-1, 0, 1]).to_string(), "q^2 - 1");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }
}
