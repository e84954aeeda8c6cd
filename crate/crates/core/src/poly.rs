//! Dense univariate polynomials over ℤ, used for generating functions in
//! `x = u^{1/d}`.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ZPoly {
    /// `c[i]` is the coefficient of `x^i`; no trailing zeros.
    c: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    pub fn monomial(e: usize, coeff: BigInt) -> Self {
        let mut c = vec![BigInt::zero(); e + 1];
        c[e] = coeff;
        ZPoly::from_coeffs(c)
    }

    pub fn from_coeffs(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        ZPoly { c }
    }

    /// `1 - x^e`.
    pub fn one_minus_x_pow(e: usize) -> Self {
        ZPoly::one() - ZPoly::monomial(e, BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    /// Nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.c.iter().enumerate().filter(|(_, v)| !v.is_zero())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        ZPoly::from_coeffs(self.c.iter().map(|x| x * k).collect())
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(ZPoly::one(), |acc, _| &acc * self)
    }

    /// Exact quotient by a divisor with constant term ±1; `None` if the
    /// division leaves a remainder.
    pub fn div_exact(&self, d: &ZPoly) -> Option<ZPoly> {
        let d0 = d.c.first()?;
        if !d0.abs().is_one() {
            return None;
        }
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        let dd = d.degree()?;
        let n = self.degree()?;
        if n < dd {
            return None;
        }
        // Power-series division from the low end, then verify.
        let qlen = n - dd + 1;
        let mut rem = self.c.clone();
        let mut q = vec![BigInt::zero(); qlen];
        for i in 0..qlen {
            let qi = &rem[i] * d0; // d0 = ±1 is its own inverse
            if !qi.is_zero() {
                for (j, dj) in d.c.iter().enumerate() {
                    rem[i + j] -= &qi * dj;
                }
            }
            q[i] = qi;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(ZPoly::from_coeffs(q))
        } else {
            None
        }
    }
}

impl Add for &ZPoly {
    type Output = ZPoly;
    fn add(self, o: &ZPoly) -> ZPoly {
        let n = self.c.len().max(o.c.len());
        let mut c = vec![BigInt::zero(); n];
        for (i, x) in self.c.iter().enumerate() {
            c[i] += x;
        }
        for (i, x) in o.c.iter().enumerate() {
            c[i] += x;
        }
        ZPoly::from_coeffs(c)
    }
}

impl Add for ZPoly {
    type Output = ZPoly;
    fn add(self, o: ZPoly) -> ZPoly {
        &self + &o
    }
}

impl Neg for ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly::from_coeffs(self.c.into_iter().map(|x| -x).collect())
    }
}

impl Sub for ZPoly {
    type Output = ZPoly;
    fn sub(self, o: ZPoly) -> ZPoly {
        &self + &(-o)
    }
}

impl Mul for &ZPoly {
    type Output = ZPoly;
    fn mul(self, o: &ZPoly) -> ZPoly {
        if self.is_zero() || o.is_zero() {
            return ZPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.c.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] += x * y;
                }
            }
        }
        ZPoly::from_coeffs(c)
    }
}

impl Mul for ZPoly {
    type Output = ZPoly;
    fn mul(self, o: ZPoly) -> ZPoly {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> ZPoly {
        ZPoly::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn geometric_series_divides() {
        // (1 - x^6) / (1 - x^2) = 1 + x^2 + x^4
        let q = ZPoly::one_minus_x_pow(6)
            .div_exact(&ZPoly::one_minus_x_pow(2))
            .unwrap();
        assert_eq!(q, p(&[1, 0, 1, 0, 1]));
        assert!(ZPoly::one_minus_x_pow(5)
            .div_exact(&ZPoly::one_minus_x_pow(2))
            .is_none());
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 1]);
        assert_eq!(a.pow(3), p(&[1, 3, 3, 1]));
        assert_eq!(a.clone() - a.clone(), ZPoly::zero());
        assert_eq!((a.pow(2)).div_exact(&a).unwrap(), a);
    }
}
