//! Exact rationals. Everything rational in the library is a [`Rat`], i.e. a
//! `BigRational` kept in lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `⟨c⟩`: 1 if `c` is an integer, 0 otherwise.
pub fn indicator(c: &Rat) -> i64 {
    i64::from(c.is_integer())
}

/// Fractional part in `[0, 1)`.
pub fn frac(c: &Rat) -> Rat {
    c - c.floor()
}

pub fn floor_i64(c: &Rat) -> i64 {
    c.floor().to_integer().to_i64().expect("floor fits in i64")
}

/// Least common multiple of the denominators (1 for an empty input).
pub fn lcm_denominators<'a>(it: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Parses `a`, `-a`, or `a/b`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// `a/b` with `b = 1` shown explicitly; used by the `.spec` format.
pub fn fmt_frac(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Compact form: integers without a denominator.
pub fn fmt_short(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_i64(r: &Rat) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

pub fn is_positive(r: &Rat) -> bool {
    r.is_positive()
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/4", "-5/6", "7", "0"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(parse_rat(&fmt_frac(&r)).unwrap(), r);
        }
        assert_eq!(parse_rat("6/8").unwrap(), rat(3, 4));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn indicator_and_frac() {
        assert_eq!(indicator(&int(3)), 1);
        assert_eq!(indicator(&rat(5, 4)), 0);
        assert_eq!(frac(&rat(-1, 3)), rat(2, 3));
        assert_eq!(floor_i64(&rat(-1, 3)), -1);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 3), 4);
        assert_eq!(binomial(2, 4), 0);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, -1), 0);
    }
}
