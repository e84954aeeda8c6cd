//! Exact scalar types beyond ℚ: prime fields 𝔽_p and cyclotomic integers
//! ℤ[ζ_k]. Both plug into the generic routines of [`crate::linalg`].
//!
//! `Zero::zero()` / `One::one()` cannot know the modulus (resp. conductor),
//! so both types have an "unbound" state holding a plain integer, which
//! adopts the modulus of whatever it is combined with.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::ZPoly;

// ---------------------------------------------------------------- 𝔽_p

/// Element of 𝔽_p (p < 2³²), or an unbound small integer when `p == 0`.
#[derive(Clone, Copy, Debug)]
pub struct Fp {
    v: i64,
    p: u64,
}

impl Fp {
    pub fn new(v: i64, p: u64) -> Self {
        assert!(p > 1 && p < (1 << 32), "modulus out of range");
        Fp { v: v.rem_euclid(p as i64), p }
    }

    pub fn value(self) -> u64 {
        if self.p == 0 {
            self.v as u64
        } else {
            self.v as u64 % self.p
        }
    }

    fn bind(a: Self, b: Self) -> (i64, i64, u64) {
        let p = a.p.max(b.p);
        if p == 0 {
            (a.v, b.v, 0)
        } else {
            let r = |x: i64| x.rem_euclid(p as i64);
            (r(a.v), r(b.v), p)
        }
    }

    fn reduce(v: i128, p: u64) -> Fp {
        if p == 0 {
            Fp { v: i64::try_from(v).expect("unbound Fp overflow"), p }
        } else {
            Fp { v: v.rem_euclid(i128::from(p)) as i64, p }
        }
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp { v: 1, p: self.p };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    fn inv(self) -> Fp {
        assert!(self.p != 0 || self.v.abs() == 1, "inverse of unbound non-unit");
        if self.p == 0 {
            return self;
        }
        assert!(self.v != 0, "division by zero in F_p");
        self.pow(self.p - 2)
    }
}

impl PartialEq for Fp {
    fn eq(&self, o: &Self) -> bool {
        let (a, b, _) = Fp::bind(*self, *o);
        a == b
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp { v: 0, p: 0 }
    }
    fn is_zero(&self) -> bool {
        if self.p == 0 {
            self.v == 0
        } else {
            self.v.rem_euclid(self.p as i64) == 0
        }
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp { v: 1, p: 0 }
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, o: Fp) -> Fp {
        let (a, b, p) = Fp::bind(self, o);
        Fp::reduce(i128::from(a) + i128::from(b), p)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, o: Fp) -> Fp {
        let (a, b, p) = Fp::bind(self, o);
        Fp::reduce(i128::from(a) - i128::from(b), p)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, o: Fp) -> Fp {
        let (a, b, p) = Fp::bind(self, o);
        Fp::reduce(i128::from(a) * i128::from(b), p)
    }
}

impl Div for Fp {
    type Output = Fp;
    fn div(self, o: Fp) -> Fp {
        let p = self.p.max(o.p);
        let o = if p == 0 { o } else { Fp::new(o.v, p) };
        self * o.inv()
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp::reduce(-i128::from(self.v), self.p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The `count` largest primes `p < 2³¹` with `p ≡ 1 (mod k)`.
pub fn primes_one_mod(k: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut p = ((1u64 << 31) - 1) / k * k + 1;
    while out.len() < count {
        if p < (1u64 << 31) && is_prime(p) {
            out.push(p);
        }
        p -= k;
    }
    out
}

/// An element of exact multiplicative order `k` in 𝔽_p (requires `k | p−1`).
pub fn root_of_unity(k: u64, p: u64) -> Fp {
    assert_eq!((p - 1) % k, 0, "k must divide p-1");
    let prime_factors: Vec<u64> = (2..=k).filter(|&q| k % q == 0 && is_prime(q)).collect();
    for g in 2..p {
        let z = Fp::new(g as i64, p).pow((p - 1) / k);
        if prime_factors.iter().all(|&q| z.pow(k / q).value() != 1) {
            return z;
        }
    }
    unreachable!("F_p^* is cyclic")
}

// ---------------------------------------------------------------- ℤ[ζ_k]

/// Arithmetic context for ℤ[ζ_k]: the power basis 1, ζ, …, ζ^{φ(k)−1} and
/// the expansion of every ζ^e in it.
#[derive(Debug)]
pub struct CycloCtx {
    pub k: u64,
    pub phi: usize,
    pow: Vec<Vec<BigInt>>,
    units: Vec<u64>,
}

/// Cyclotomic polynomial Φ_k over ℤ.
pub fn cyclotomic_poly(k: u64) -> ZPoly {
    let mut num = ZPoly::monomial(k as usize, BigInt::one()) - ZPoly::one();
    for d in 1..k {
        if k % d == 0 {
            let phi_d = cyclotomic_poly(d);
            // x^k − 1 over Φ_d: Φ_d has constant term ±1, so exact division works.
            num = num.div_exact(&phi_d).expect("cyclotomic factor divides");
        }
    }
    // Normalise to a monic polynomial with positive leading coefficient.
    let lead = num.coeffs().last().cloned().unwrap_or_else(BigInt::one);
    if lead.is_negative() {
        -num
    } else {
        num
    }
}

impl CycloCtx {
    pub fn new(k: u64) -> Arc<Self> {
        assert!(k >= 1);
        let phi_poly = cyclotomic_poly(k);
        let phi = phi_poly.degree().expect("nonzero");
        let c = phi_poly.coeffs();
        // ζ^φ = −Σ_{i<φ} c_i ζ^i (Φ_k monic).
        let mut pow: Vec<Vec<BigInt>> = Vec::with_capacity(k as usize);
        let mut cur = vec![BigInt::zero(); phi];
        cur[0] = BigInt::one();
        for _ in 0..k {
            pow.push(cur.clone());
            // multiply by ζ
            let top = cur[phi - 1].clone();
            let mut next = vec![BigInt::zero(); phi];
            for i in (1..phi).rev() {
                next[i] = cur[i - 1].clone();
            }
            for i in 0..phi {
                next[i] -= &top * &c[i];
            }
            cur = next;
        }
        let units = (2..k).filter(|j| j.gcd(&k) == 1).collect();
        Arc::new(CycloCtx { k, phi, pow, units })
    }

    /// ζ^e expressed in the power basis.
    pub fn zeta_pow(self: &Arc<Self>, e: i64) -> Cyclo {
        let idx = e.rem_euclid(self.k as i64) as usize;
        Cyclo { ctx: Some(self.clone()), c: self.pow[idx].clone() }
    }
}

/// Element of ℤ[ζ_k] in the power basis, or an unbound integer when `ctx`
/// is `None`. `Div` is exact division and panics when the quotient is not
/// integral.
#[derive(Clone, Debug)]
pub struct Cyclo {
    ctx: Option<Arc<CycloCtx>>,
    c: Vec<BigInt>,
}

impl Cyclo {
    pub fn integer(n: BigInt) -> Self {
        Cyclo { ctx: None, c: vec![n] }
    }

    /// `Σ coeffs[i] ζ^i` (any length; reduced into the power basis).
    pub fn from_powers(ctx: &Arc<CycloCtx>, coeffs: &[BigInt]) -> Self {
        let mut c = vec![BigInt::zero(); ctx.phi];
        for (e, a) in coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (ci, pi) in c.iter_mut().zip(&ctx.pow[e % ctx.k as usize]) {
                *ci += a * pi;
            }
        }
        Cyclo { ctx: Some(ctx.clone()), c }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    fn bound(&self, ctx: &Arc<CycloCtx>) -> Vec<BigInt> {
        match &self.ctx {
            Some(_) => self.c.clone(),
            None => {
                let mut v = vec![BigInt::zero(); ctx.phi];
                v[0] = self.c.first().cloned().unwrap_or_default();
                v
            }
        }
    }

    fn ctx_of(a: &Cyclo, b: &Cyclo) -> Option<Arc<CycloCtx>> {
        match (&a.ctx, &b.ctx) {
            (Some(x), Some(y)) => {
                assert_eq!(x.k, y.k, "mixed cyclotomic conductors");
                Some(x.clone())
            }
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        }
    }

    fn zip_with(a: &Cyclo, b: &Cyclo, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Cyclo {
        match Cyclo::ctx_of(a, b) {
            None => {
                let x = a.c.first().cloned().unwrap_or_default();
                let y = b.c.first().cloned().unwrap_or_default();
                Cyclo { ctx: None, c: vec![f(&x, &y)] }
            }
            Some(ctx) => {
                let (x, y) = (a.bound(&ctx), b.bound(&ctx));
                Cyclo { c: x.iter().zip(&y).map(|(p, q)| f(p, q)).collect(), ctx: Some(ctx) }
            }
        }
    }

    /// Galois conjugate ζ ↦ ζ^j.
    fn conjugate(&self, j: u64) -> Cyclo {
        let Some(ctx) = &self.ctx else { return self.clone() };
        let k = ctx.k;
        let mut c = vec![BigInt::zero(); ctx.phi];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let e = (i as u64 * j % k) as usize;
            for (ci, pi) in c.iter_mut().zip(&ctx.pow[e]) {
                *ci += a * pi;
            }
        }
        Cyclo { ctx: Some(ctx.clone()), c }
    }

    /// `(b*, N(b))` with `b·b* = N(b) ∈ ℤ`: the product of the nontrivial
    /// Galois conjugates and the field norm.
    pub fn norm_cofactor(&self) -> (Cyclo, BigInt) {
        let Some(ctx) = &self.ctx else {
            return (Cyclo::one(), self.c.first().cloned().unwrap_or_default());
        };
        let mut star = Cyclo::one();
        for &j in &ctx.units {
            star = star * self.conjugate(j);
        }
        let n = (self.clone() * star.clone()).c;
        debug_assert!(n[1..].iter().all(Zero::is_zero), "norm must be rational");
        (star, n[0].clone())
    }

    /// Exact division by an integer; panics if inexact.
    pub fn div_integer(&self, n: &BigInt) -> Cyclo {
        Cyclo {
            ctx: self.ctx.clone(),
            c: self
                .c
                .iter()
                .map(|a| {
                    let (q, r) = a.div_rem(n);
                    assert!(r.is_zero(), "inexact division in Z[zeta]");
                    q
                })
                .collect(),
        }
    }

    /// Image in 𝔽_p under ζ ↦ `z`.
    pub fn reduce_mod(&self, z: Fp, p: u64) -> Fp {
        let mut acc = Fp::new(0, p);
        let mut zp = Fp::new(1, p);
        for a in &self.c {
            let r = (a % BigInt::from(p)).to_i64().expect("residue fits");
            acc = acc + Fp::new(r, p) * zp;
            zp = zp * z;
        }
        acc
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, o: &Self) -> bool {
        (self.clone() - o.clone()).is_zero()
    }
}

impl Zero for Cyclo {
    fn zero() -> Self {
        Cyclo { ctx: None, c: vec![BigInt::zero()] }
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
}

impl One for Cyclo {
    fn one() -> Self {
        Cyclo { ctx: None, c: vec![BigInt::one()] }
    }
}

impl Add for Cyclo {
    type Output = Cyclo;
    fn add(self, o: Cyclo) -> Cyclo {
        Cyclo::zip_with(&self, &o, |a, b| a + b)
    }
}

impl Sub for Cyclo {
    type Output = Cyclo;
    fn sub(self, o: Cyclo) -> Cyclo {
        Cyclo::zip_with(&self, &o, |a, b| a - b)
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { ctx: self.ctx, c: self.c.into_iter().map(|x| -x).collect() }
    }
}

impl Mul for Cyclo {
    type Output = Cyclo;
    fn mul(self, o: Cyclo) -> Cyclo {
        match Cyclo::ctx_of(&self, &o) {
            None => Cyclo::zip_with(&self, &o, |a, b| a * b),
            Some(ctx) => {
                if self.ctx.is_none() || o.ctx.is_none() {
                    let (s, v) = if self.ctx.is_none() { (&self, &o) } else { (&o, &self) };
                    let k = s.c.first().cloned().unwrap_or_default();
                    return Cyclo { ctx: Some(ctx), c: v.c.iter().map(|x| x * &k).collect() };
                }
                let phi = ctx.phi;
                let kk = ctx.k as usize;
                // Multiply as polynomials in ζ, then reduce exponents mod k.
                let mut raw = vec![BigInt::zero(); kk];
                for (i, a) in self.c.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in o.c.iter().enumerate() {
                        if !b.is_zero() {
                            raw[(i + j) % kk] += a * b;
                        }
                    }
                }
                let mut c = vec![BigInt::zero(); phi];
                for (e, a) in raw.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    if e < phi {
                        c[e] += a;
                    } else {
                        for (ci, pi) in c.iter_mut().zip(&ctx.pow[e]) {
                            *ci += a * pi;
                        }
                    }
                }
                Cyclo { ctx: Some(ctx), c }
            }
        }
    }
}

impl Div for Cyclo {
    type Output = Cyclo;
    fn div(self, o: Cyclo) -> Cyclo {
        let (star, n) = o.norm_cofactor();
        (self * star).div_integer(&n)
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| match i {
                0 => a.to_string(),
                1 => format!("{a}*zeta"),
                _ => format!("{a}*zeta^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{bareiss_rank, rank};

    #[test]
    fn cyclotomic_polynomials() {
        let c = |k| {
            cyclotomic_poly(k)
                .coeffs()
                .iter()
                .map(|x| x.to_i64().unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(c(1), vec![-1, 1]);
        assert_eq!(c(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(c(6), vec![1, -1, 1]);
        assert_eq!(c(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn zeta_arithmetic() {
        let ctx = CycloCtx::new(5);
        let z = ctx.zeta_pow(1);
        assert_eq!(z.clone() * ctx.zeta_pow(4), Cyclo::one());
        let sum = (0..5).fold(Cyclo::zero(), |s, e| s + ctx.zeta_pow(e));
        assert!(sum.is_zero());
        let a = z.clone() + Cyclo::integer(BigInt::from(2));
        let b = ctx.zeta_pow(3) - Cyclo::one();
        assert_eq!((a.clone() * b.clone()) / b, a);
    }

    #[test]
    fn prime_field_roots() {
        for p in primes_one_mod(5, 2) {
            let z = root_of_unity(5, p);
            assert_eq!(z.pow(5).value(), 1);
            assert_ne!(z.value(), 1);
        }
        let a = Fp::new(3, 7);
        assert_eq!((a / a).value(), 1);
        assert_eq!((Fp::one() - a).value(), 5);
    }

    #[test]
    fn generic_rank_over_all_scalars() {
        // Vandermonde on 3 distinct fifth roots: rank 3.
        let ctx = CycloCtx::new(5);
        let m: Vec<Vec<Cyclo>> = (0..3)
            .map(|i| (0..3).map(|j| ctx.zeta_pow(i * j)).collect())
            .collect();
        assert_eq!(bareiss_rank(m.clone()), 3);
        let p = primes_one_mod(5, 1)[0];
        let z = root_of_unity(5, p);
        let mp: Vec<Vec<Fp>> = m
            .iter()
            .map(|r| r.iter().map(|x| x.reduce_mod(z, p)).collect())
            .collect();
        assert_eq!(rank(mp), 3);
    }
}
