//! The quasi-homogeneous route: spectra from weight vectors via the product
//! generating function, CY-tail predicates, and the shipped datasets of
//! pure and mixed CY tails of surface singularities.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hull::{for_each_box_point, to_rat, Hull};
use crate::linalg::{solve_unique, SolveError};
use crate::poly::ZPoly;
use crate::rat::{fmt_frac, indicator, int, parse_rat, Rat};
use crate::spectra::MixedSpectrum;

/// Weights `w ∈ (0,1)^{n+1}` with common denominator `d` and integer
/// numerators `w̃ = d·w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    weights: Vec<Rat>,
    d: i64,
    twiddle: Vec<i64>,
}

impl WeightVector {
    pub fn new(weights: Vec<Rat>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidInput("empty weight vector".into()));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_positive() || **w >= Rat::one()) {
            return Err(Error::InvalidInput(format!("weight {w} is not in (0,1)")));
        }
        let d = weights
            .iter()
            .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()))
            .to_i64()
            .ok_or_else(|| Error::InvalidInput("weight denominators too large".into()))?;
        let twiddle = weights
            .iter()
            .map(|w| (w * int(d)).to_integer().to_i64().expect("fits"))
            .collect();
        Ok(WeightVector { weights, d, twiddle })
    }

    /// Reciprocal weights `1/d_i`.
    pub fn reciprocal(degrees: &[i64]) -> Result<Self> {
        Self::new(degrees.iter().map(|&k| Rat::new(1.into(), k.into())).collect())
    }

    /// Parses `u1/v1,u2/v2,...`.
    pub fn parse(s: &str) -> Result<Self> {
        let ws = s
            .split(',')
            .map(|t| parse_rat(t.trim()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ws)
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }
    pub fn d(&self) -> i64 {
        self.d
    }
    pub fn twiddle(&self) -> &[i64] {
        &self.twiddle
    }
    /// `n` = number of variables − 1.
    pub fn n(&self) -> i64 {
        self.weights.len() as i64 - 1
    }

    /// `∏ (1/w_i − 1)`.
    pub fn milnor_number(&self) -> Rat {
        self.weights
            .iter()
            .fold(Rat::one(), |acc, w| acc * (w.recip() - Rat::one()))
    }

    /// `𝔐(w)`: exponent vectors of weighted degree exactly 1.
    pub fn degree_one_monomials(&self) -> Vec<Vec<i64>> {
        let lo = vec![0; self.weights.len()];
        let hi: Vec<i64> = self.twiddle.iter().map(|&t| self.d / t).collect();
        let mut out = Vec::new();
        for_each_box_point(&lo, &hi, |m| {
            let s: i64 = m.iter().zip(&self.twiddle).map(|(a, b)| a * b).sum();
            if s == self.d {
                out.push(m.to_vec());
            }
        });
        out
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(fmt_frac).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Weights from a support: the unique `w` with `m·w = 1` for every `m`.
pub fn weights_from_support(support: &[Vec<i64>]) -> Result<WeightVector> {
    let nv = support.first().map_or(0, Vec::len);
    if nv == 0 {
        return Err(Error::InvalidInput("empty support".into()));
    }
    let a: Vec<Vec<Rat>> = support.iter().map(|m| to_rat(m)).collect();
    let b = vec![Rat::one(); a.len()];
    match solve_unique(&a, &b) {
        Ok(w) => WeightVector::new(w),
        Err(SolveError::Underdetermined) => Err(Error::Underdetermined(
            "the support does not determine a unique weight vector".into(),
        )),
        Err(SolveError::Inconsistent) => Err(Error::Inconsistent(
            "the support is not quasi-homogeneous".into(),
        )),
    }
}

fn mixed_entry(n: i64, alpha: Rat, mult: i64) -> (Rat, i64, i64) {
    let w = n + indicator(&alpha);
    (alpha, w, mult)
}

/// Mixed spectrum of a quasi-homogeneous isolated singularity:
/// `∏ (u^{w_i} − u)/(1 − u^{w_i})` expanded exactly in `x = u^{1/d}`,
/// each `u^α` weighted `n + ⟨α⟩`.
pub fn qh_spectrum(w: &WeightVector) -> Result<MixedSpectrum> {
    let d = w.d as usize;
    // ∏(x^{w̃} − x^d) = x^{Σw̃} ∏(1 − x^{d−w̃}).
    let shift: usize = w.twiddle.iter().map(|&t| t as usize).sum();
    let mut num = ZPoly::one();
    let mut den = ZPoly::one();
    for &t in &w.twiddle {
        num = &num * &ZPoly::one_minus_x_pow(d - t as usize);
        den = &den * &ZPoly::one_minus_x_pow(t as usize);
    }
    let q = num.div_exact(&den).ok_or_else(|| {
        Error::NotIsolated(format!("the generating function for weights {w} is not a polynomial"))
    })?;
    let n = w.n();
    let mut out = MixedSpectrum::new();
    for (e, c) in q.terms() {
        let c = c.to_i64().expect("multiplicity fits in i64");
        if c.is_negative() {
            return Err(Error::NotIsolated(format!("negative coefficient at exponent {e}/{d}")));
        }
        let (a, wt, m) = mixed_entry(n, Rat::new(((e + shift) as i64).into(), (d as i64).into()), c);
        out.insert(a, wt, m);
    }
    Ok(out)
}

/// Mixed spectrum of `Σ x_i^{d_i}` by direct enumeration of the monomial
/// basis box `∏ [0, d_i − 2]`.
pub fn fermat_spectrum(degrees: &[i64]) -> Result<MixedSpectrum> {
    if degrees.is_empty() || degrees.iter().any(|&k| k < 2) {
        return Err(Error::InvalidInput("Fermat degrees must be ≥ 2".into()));
    }
    let n = degrees.len() as i64 - 1;
    let lo = vec![0; degrees.len()];
    let hi: Vec<i64> = degrees.iter().map(|k| k - 2).collect();
    let mut out = MixedSpectrum::new();
    for_each_box_point(&lo, &hi, |b| {
        let alpha = b
            .iter()
            .zip(degrees)
            .fold(Rat::zero(), |s, (bi, k)| s + Rat::new((bi + 1).into(), (*k).into()));
        let (a, wt, m) = mixed_entry(n, alpha, 1);
        out.insert(a, wt, m);
    });
    Ok(out)
}

/// CY-tail diagnostics of a weight vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CYTailReport {
    /// `1/d + Σ w_i = 1`.
    pub degree_balanced: bool,
    /// `(1,…,1)` lies in the interior of `Δ_w = conv(𝔐(w) ∪ {0})`.
    pub one_in_interior: bool,
    /// Interior lattice points of `Γ_w = conv(𝔐(w))`.
    pub genus_g: u64,
    /// `g = 0`.
    pub pure: bool,
    /// Exactly one spectral number (with multiplicity) in `(0,1)`.
    pub spectral_check: bool,
    pub mu: i64,
    pub d: i64,
}

impl CYTailReport {
    /// Both defining conditions hold.
    pub fn is_cy_tail(&self) -> bool {
        self.degree_balanced && self.one_in_interior
    }
}

pub fn cy_tail(w: &WeightVector) -> Result<CYTailReport> {
    let monoid = w.degree_one_monomials();
    if monoid.is_empty() {
        return Err(Error::EmptyMonoid);
    }
    let nv = w.weights.len();
    let sum: Rat = w.weights.iter().cloned().sum();
    let degree_balanced = Rat::new(1.into(), w.d.into()) + sum == Rat::one();
    let mut pts: Vec<Vec<Rat>> = monoid.iter().map(|m| to_rat(m)).collect();
    let gamma = Hull::new(pts.clone());
    pts.push(vec![Rat::zero(); nv]);
    let delta = Hull::new(pts);
    let one_in_interior = delta.dim == nv && delta.in_relint(&vec![Rat::one(); nv]);
    let genus_g = gamma.relint_lattice_points().len() as u64;
    let (spectral_check, mu) = match qh_spectrum(w) {
        Ok(s) => {
            let below: i64 = s
                .iter()
                .filter(|(a, _, _)| a.is_positive() && **a < Rat::one())
                .map(|(_, _, m)| m)
                .sum();
            (below == 1, s.total())
        }
        Err(_) => (false, 0),
    };
    Ok(CYTailReport {
        degree_balanced,
        one_in_interior,
        genus_g,
        pure: genus_g == 0,
        spectral_check,
        mu,
        d: w.d,
    })
}

/// `1 + mult(1 + 1/d)` in the mixed spectrum of a pure surface CY tail.
pub fn modality_check(w: &WeightVector) -> Result<i64> {
    if w.n() != 2 {
        return Err(Error::NotPureTail(format!("n = {} but surfaces need n = 2", w.n())));
    }
    let rep = cy_tail(w)?;
    if !rep.is_cy_tail() || !rep.pure {
        return Err(Error::NotPureTail(format!(
            "weights {w}: degree balanced={}, 1 interior={}, g={}",
            rep.degree_balanced, rep.one_in_interior, rep.genus_g
        )));
    }
    let s = qh_spectrum(w)?;
    let target = Rat::one() + Rat::new(1.into(), w.d.into());
    let m: i64 = s.iter().filter(|(a, _, _)| **a == target).map(|(_, _, m)| m).sum();
    Ok(1 + m)
}

// ------------------------------------------------------------ datasets

/// One row of the pure CY-tail dataset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PureTailRow {
    pub yonemura_id: u32,
    pub arnold: String,
    pub polynomial: String,
    pub monomials: Vec<Vec<i64>>,
    pub d: i64,
    pub m_f: i64,
}

/// One row of the mixed CY-tail dataset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedTailRow {
    pub yonemura_id: u32,
    pub polynomial: String,
    pub monomials: Vec<Vec<i64>>,
    pub d: i64,
    pub mu: i64,
    pub g: u64,
}

const PURE_TAILS: &str = include_str!("../data/pure_tails.csv");
const MIXED_TAILS: &str = include_str!("../data/mixed_tails.csv");

fn parse_monomials(s: &str) -> Result<Vec<Vec<i64>>> {
    s.split(';')
        .map(|m| {
            m.split_whitespace()
                .map(|e| e.parse::<i64>().map_err(|err| Error::Parse(format!("{e}: {err}"))))
                .collect()
        })
        .collect()
}

fn records(text: &str) -> Result<Vec<csv::StringRecord>> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes())
        .records()
        .map(|r| r.map_err(|e| Error::Parse(e.to_string())))
        .collect()
}

fn field<T: std::str::FromStr>(r: &csv::StringRecord, i: usize) -> Result<T> {
    r.get(i)
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad field {i} in {r:?}")))
}

pub fn pure_tail_table() -> Result<Vec<PureTailRow>> {
    records(PURE_TAILS)?
        .iter()
        .map(|r| {
            Ok(PureTailRow {
                yonemura_id: field(r, 0)?,
                arnold: field(r, 1)?,
                polynomial: field(r, 2)?,
                monomials: parse_monomials(&field::<String>(r, 3)?)?,
                d: field(r, 4)?,
                m_f: field(r, 5)?,
            })
        })
        .collect()
}

pub fn mixed_tail_table() -> Result<Vec<MixedTailRow>> {
    records(MIXED_TAILS)?
        .iter()
        .map(|r| {
            Ok(MixedTailRow {
                yonemura_id: field(r, 0)?,
                polynomial: field(r, 1)?,
                monomials: parse_monomials(&field::<String>(r, 2)?)?,
                d: field(r, 3)?,
                mu: field(r, 4)?,
                g: field(r, 5)?,
            })
        })
        .collect()
}

/// Outcome of checking one dataset row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowCheck {
    pub yonemura_id: u32,
    pub label: String,
    pub ok: bool,
    pub mismatches: Vec<String>,
}

/// Checks every row of both datasets: CY-tail conditions, purity, `d`,
/// and `m_f` (pure rows) or `μ` and `g` (mixed rows).
pub fn verify_tables() -> Result<Vec<RowCheck>> {
    let mut out = Vec::new();
    for row in pure_tail_table()? {
        let mut bad = Vec::new();
        let w = weights_from_support(&row.monomials)?;
        let rep = cy_tail(&w)?;
        if !rep.is_cy_tail() {
            bad.push(format!("not a CY tail ({rep:?})"));
        }
        if !rep.pure {
            bad.push(format!("g = {} ≠ 0", rep.genus_g));
        }
        if rep.d != row.d {
            bad.push(format!("d = {} ≠ {}", rep.d, row.d));
        }
        match modality_check(&w) {
            Ok(m) if m == row.m_f => {}
            Ok(m) => bad.push(format!("m_f = {m} ≠ {}", row.m_f)),
            Err(e) => bad.push(e.to_string()),
        }
        out.push(RowCheck {
            yonemura_id: row.yonemura_id,
            label: row.arnold.clone(),
            ok: bad.is_empty(),
            mismatches: bad,
        });
    }
    for row in mixed_tail_table()? {
        let mut bad = Vec::new();
        let w = weights_from_support(&row.monomials)?;
        let rep = cy_tail(&w)?;
        if !rep.is_cy_tail() {
            bad.push(format!("not a CY tail ({rep:?})"));
        }
        if rep.pure {
            bad.push("expected a mixed tail".into());
        }
        if rep.d != row.d {
            bad.push(format!("d = {} ≠ {}", rep.d, row.d));
        }
        if rep.mu != row.mu {
            bad.push(format!("μ = {} ≠ {}", rep.mu, row.mu));
        }
        if rep.genus_g != row.g {
            bad.push(format!("g = {} ≠ {}", rep.genus_g, row.g));
        }
        out.push(RowCheck {
            yonemura_id: row.yonemura_id,
            label: row.polynomial.clone(),
            ok: bad.is_empty(),
            mismatches: bad,
        });
    }
    Ok(out)
}
