//! Spectra and mixed spectra as elements of the group rings ℤ[ℚ] and
//! ℤ[ℚ×ℤ], with Sebastiani–Thom convolution and the spectral involution.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{fmt_short, indicator, int, parse_rat, Rat};

/// Finite formal sum `Σ m·[(α, w)]`, sorted by `(α, w)`; zero
/// multiplicities are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MixedSpectrum {
    entries: BTreeMap<(Rat, i64), i64>,
}

/// Finite formal sum `Σ m·[α]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spectrum {
    entries: BTreeMap<Rat, i64>,
}

/// `⟨α|β⟩ = 1 + ⟨α+β⟩ − ⟨α⟩ − ⟨β⟩`, where `⟨c⟩` is 1 on integers.
pub fn bracket(alpha: &Rat, beta: &Rat) -> i64 {
    if alpha.is_integer() || beta.is_integer() {
        0
    } else {
        1 + indicator(&(alpha + beta))
    }
}

impl MixedSpectrum {
    pub fn new() -> Self {
        Self::default()
    }

    /// `m·[(α, w)]`.
    pub fn single(alpha: Rat, weight: i64, mult: i64) -> Self {
        let mut s = Self::new();
        s.insert(alpha, weight, mult);
        s
    }

    pub fn from_entries(it: impl IntoIterator<Item = (Rat, i64, i64)>) -> Self {
        let mut s = Self::new();
        for (a, w, m) in it {
            s.insert(a, w, m);
        }
        s
    }

    /// Adds `mult` to the multiplicity of `(α, w)`.
    pub fn insert(&mut self, alpha: Rat, weight: i64, mult: i64) {
        if mult == 0 {
            return;
        }
        let key = (alpha, weight);
        let v = self.entries.entry(key.clone()).or_insert(0);
        *v += mult;
        if *v == 0 {
            self.entries.remove(&key);
        }
    }

    pub fn get(&self, alpha: &Rat, weight: i64) -> i64 {
        self.entries.get(&(alpha.clone(), weight)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Rat, i64, i64)> {
        self.entries.iter().map(|((a, w), m)| (a, *w, *m))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Σ multiplicities (the Milnor number for a full mixed spectrum).
    pub fn total(&self) -> i64 {
        self.entries.values().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.values().all(|&m| m > 0)
    }

    pub fn add(&self, o: &MixedSpectrum) -> MixedSpectrum {
        let mut s = self.clone();
        for (a, w, m) in o.iter() {
            s.insert(a.clone(), w, m);
        }
        s
    }

    pub fn sub(&self, o: &MixedSpectrum) -> MixedSpectrum {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, k: i64) -> MixedSpectrum {
        MixedSpectrum::from_entries(self.iter().map(|(a, w, m)| (a.clone(), w, m * k)))
    }

    /// Bilinear extension of `(α,w)∗(β,ω) = (α+β, w+ω+⟨α|β⟩)`.
    pub fn convolve(&self, o: &MixedSpectrum) -> MixedSpectrum {
        let mut s = MixedSpectrum::new();
        for (a, w, m) in self.iter() {
            for (b, v, k) in o.iter() {
                s.insert(a + b, w + v + bracket(a, b), m * k);
            }
        }
        s
    }

    /// `(α,w) ↦ (n+1−α, 2n−w)` for α ∉ ℤ and `(n+1−α, 2n+2−w)` for α ∈ ℤ.
    pub fn iota(&self, n: i64) -> MixedSpectrum {
        MixedSpectrum::from_entries(self.iter().map(|(a, w, m)| {
            let w2 = if a.is_integer() { 2 * n + 2 - w } else { 2 * n - w };
            (int(n + 1) - a, w2, m)
        }))
    }

    /// Every `(α, w)` moved to `(α+k, w+2k)`.
    pub fn shift(&self, k: i64) -> MixedSpectrum {
        MixedSpectrum::from_entries(self.iter().map(|(a, w, m)| (a + int(k), w + 2 * k, m)))
    }

    /// Minimum α with nonzero multiplicity.
    pub fn spectral_min(&self) -> Result<Rat> {
        self.project().spectral_min()
    }

    /// Projection to ℤ[ℚ] by summing over weights.
    pub fn project(&self) -> Spectrum {
        Spectrum::from_entries(self.iter().map(|(a, _, m)| (a.clone(), m)))
    }

    /// Checks that this could be the mixed spectrum of an isolated
    /// singularity in `n+1` variables; returns the list of violations.
    pub fn support_check(&self, n: i64) -> SupportReport {
        let mut violations = Vec::new();
        let top = int(n + 1);
        for (a, w, m) in self.iter() {
            let tag = format!("{m}[({},{w})]", fmt_short(a));
            if m < 0 {
                violations.push(format!("{tag}: negative multiplicity"));
            }
            if !a.is_positive() || *a >= top {
                violations.push(format!("{tag}: alpha outside (0,{})", n + 1));
            }
            let (lo, hi) = if a.is_integer() { (1, 2 * n + 1) } else { (0, 2 * n) };
            if w < lo || w > hi {
                violations.push(format!("{tag}: weight outside [{lo},{hi}]"));
            }
        }
        if self.iota(n) != *self {
            violations.push(format!("not fixed by the involution iota_{n}"));
        }
        SupportReport { ok: violations.is_empty(), violations }
    }

    /// Converts entries given in the shifted normalization used by
    /// SINGULAR: `(α̂, ŵ) ↦ (n − α̂, ŵ + ⟨α̂⟩)`.
    pub fn from_singular_normalization(n: i64, s: &MixedSpectrum) -> MixedSpectrum {
        MixedSpectrum::from_entries(
            s.iter().map(|(a, w, m)| (int(n) - a, w + indicator(a), m)),
        )
    }

    /// Parses bracket notation such as `[(1,3)] + 2[(5/4,2)]` or `0`.
    pub fn parse_bracket(s: &str) -> Result<MixedSpectrum> {
        let mut out = MixedSpectrum::new();
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" || compact.is_empty() {
            return Ok(out);
        }
        let bad = || Error::Parse(format!("bad mixed spectrum term in {s:?}"));
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (sign, r) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ => (1, rest),
            };
            let open = r.find("[(").ok_or_else(bad)?;
            let coeff: i64 = if open == 0 { 1 } else { r[..open].parse().map_err(|_| bad())? };
            let close = r.find(")]").ok_or_else(bad)?;
            let inner = &r[open + 2..close];
            let (a, w) = inner.split_once(',').ok_or_else(bad)?;
            out.insert(parse_rat(a)?, w.parse().map_err(|_| bad())?, sign * coeff);
            rest = &r[close + 2..];
        }
        Ok(out)
    }
}

impl fmt::Display for MixedSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (i, (a, w, m)) in self.iter().enumerate() {
            let (sep, m) = match (i, m < 0) {
                (0, true) => ("-", -m),
                (0, false) => ("", m),
                (_, true) => (" - ", -m),
                (_, false) => (" + ", m),
            };
            let c = if m == 1 { String::new() } else { m.to_string() };
            write!(f, "{sep}{c}[({},{w})]", fmt_short(a))?;
        }
        Ok(())
    }
}

/// Outcome of [`MixedSpectrum::support_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportReport {
    pub ok: bool,
    pub violations: Vec<String>,
}

impl Spectrum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(it: impl IntoIterator<Item = (Rat, i64)>) -> Self {
        let mut s = Self::new();
        for (a, m) in it {
            s.insert(a, m);
        }
        s
    }

    pub fn insert(&mut self, alpha: Rat, mult: i64) {
        if mult == 0 {
            return;
        }
        let v = self.entries.entry(alpha.clone()).or_insert(0);
        *v += mult;
        if *v == 0 {
            self.entries.remove(&alpha);
        }
    }

    pub fn get(&self, alpha: &Rat) -> i64 {
        self.entries.get(alpha).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Rat, i64)> {
        self.entries.iter().map(|(a, m)| (a, *m))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.entries.values().sum()
    }

    pub fn add(&self, o: &Spectrum) -> Spectrum {
        let mut s = self.clone();
        for (a, m) in o.iter() {
            s.insert(a.clone(), m);
        }
        s
    }

    pub fn sub(&self, o: &Spectrum) -> Spectrum {
        let mut s = self.clone();
        for (a, m) in o.iter() {
            s.insert(a.clone(), -m);
        }
        s
    }

    /// Plain convolution `[α]∗[β] = [α+β]`.
    pub fn convolve(&self, o: &Spectrum) -> Spectrum {
        let mut s = Spectrum::new();
        for (a, m) in self.iter() {
            for (b, k) in o.iter() {
                s.insert(a + b, m * k);
            }
        }
        s
    }

    pub fn spectral_min(&self) -> Result<Rat> {
        if let Some((a, m)) = self.iter().find(|(_, m)| *m < 0) {
            return Err(Error::NegativeMultiplicity(format!("{m}[{}]", fmt_short(a))));
        }
        self.entries.keys().next().cloned().ok_or(Error::EmptySpectrum)
    }

    /// Lowest common denominator of all α (the order of `T^ss`).
    pub fn monodromy_order(&self) -> num_bigint::BigInt {
        crate::rat::lcm_denominators(self.entries.keys())
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(a, m)| {
                let c = if m == 1 { String::new() } else { m.to_string() };
                format!("{c}[{}]", fmt_short(a))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `[(1,2)]`: the mixed spectrum of `x² + y²`.
pub fn node2() -> MixedSpectrum {
    MixedSpectrum::single(Rat::one(), 2, 1)
}

/// `[(1/2,0)]`: the mixed spectrum of `x²`.
pub fn a1_point() -> MixedSpectrum {
    MixedSpectrum::single(crate::rat::rat(1, 2), 0, 1)
}

impl Zero for MixedSpectrum {
    fn zero() -> Self {
        Self::new()
    }
    fn is_zero(&self) -> bool {
        self.is_empty()
    }
}

impl std::ops::Add for MixedSpectrum {
    type Output = MixedSpectrum;
    fn add(self, o: MixedSpectrum) -> MixedSpectrum {
        MixedSpectrum::add(&self, &o)
    }
}
