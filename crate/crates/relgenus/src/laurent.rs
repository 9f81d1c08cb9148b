use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

/// Integer Laurent polynomial, used for Alexander polynomials.
///
/// Invariant: `coeffs` is empty exactly for the zero polynomial; otherwise its
/// first and last entries are nonzero. `coeffs[i]` is the coefficient of
/// `t^(low + i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { low: 0, coeffs: vec![] }
    }

    pub fn one() -> Self {
        LaurentPoly { low: 0, coeffs: vec![BigInt::one()] }
    }

    pub fn monomial(coeff: BigInt, exp: i64) -> Self {
        Self::from_coeffs(exp, vec![coeff])
    }

    /// Builds from raw coefficients (`coeffs[i]` ↦ `t^(low+i)`), trimming
    /// zero coefficients at both ends.
    pub fn from_coeffs(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        let leading_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if leading_zeros == self.coeffs.len() {
            self.low = 0;
            self.coeffs.clear();
            return;
        }
        self.coeffs.drain(..leading_zeros);
        self.low += leading_zeros as i64;
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with nonzero coefficient (None for the zero polynomial).
    pub fn low_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn high_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let idx = exp - self.low;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    /// The substitution `t ↦ t⁻¹`.
    pub fn reciprocal(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let high = self.low + self.coeffs.len() as i64 - 1;
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPoly { low: -high, coeffs }
    }

    /// Whether `p(t) = p(t⁻¹)`.
    pub fn is_symmetric(&self) -> bool {
        *self == self.reciprocal()
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn eval_at_minus_one(&self) -> BigInt {
        let mut acc = BigInt::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if (self.low + i as i64).rem_euclid(2) == 0 {
                acc += c;
            } else {
                acc -= c;
            }
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = (self.low + self.coeffs.len() as i64)
            .max(other.low + other.coeffs.len() as i64);
        let mut coeffs = vec![BigInt::zero(); (high - low) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[(other.low - low) as usize + i] += c;
        }
        Self::from_coeffs(low, coeffs)
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(self.low + other.low, coeffs)
    }
}

impl fmt::Display for LaurentPoly {
    /// Renders with descending exponents, e.g. `t^2 - t + 1 - t^-1 + t^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let exp = self.low + i as i64;
            let negative = c.sign() == num_bigint::Sign::Minus;
            let mag = c.magnitude();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one();
            match (exp, unit_coeff) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}t")?,
                (_, true) => write!(f, "t^{exp}")?,
                (_, false) => write!(f, "{mag}t^{exp}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(low: i64, cs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(low, cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn normalization_trims_and_zero_is_canonical() {
        assert_eq!(p(-2, &[0, 0, 5, 0]), p(0, &[5]));
        assert_eq!(p(3, &[0, 0]), LaurentPoly::zero());
        assert!(p(1, &[0]).is_zero());
    }

    #[test]
    fn arithmetic_round_trips() {
        let a = p(-1, &[1, -1, 1]); // t⁻¹ − 1 + t
        let b = p(0, &[2, 3]);
        assert_eq!(a.add(&b).sub(&b), a);
        assert_eq!(a.mul(&b).coeff(-1), BigInt::from(2));
        assert_eq!(a.mul(&LaurentPoly::one()), a);
        assert_eq!(a.mul(&LaurentPoly::zero()), LaurentPoly::zero());
    }

    #[test]
    fn reciprocal_and_symmetry() {
        let trefoil = p(-1, &[1, -1, 1]);
        assert!(trefoil.is_symmetric());
        assert_eq!(trefoil.eval_at_one(), BigInt::one());
        assert_eq!(trefoil.eval_at_minus_one(), BigInt::from(-3));
        let asym = p(0, &[1, 2]);
        assert!(!asym.is_symmetric());
        assert_eq!(asym.reciprocal().low_exp(), Some(-1));
    }

    #[test]
    fn display_formats() {
        assert_eq!(p(-1, &[1, -1, 1]).to_string(), "t - 1 + t^-1");
        assert_eq!(p(-2, &[1, -1, 1, -1, 1]).to_string(), "t^2 - t + 1 - t^-1 + t^-2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::one().to_string(), "1");
        assert_eq!(p(1, &[-3]).to_string(), "-3t");
        assert_eq!(p(-3, &[2, 0, 1]).to_string(), "t^-1 + 2t^-3");
    }
}
