//! The toric route to the mixed spectrum (Danilov's Hodge–Deligne numbers of
//! the strata `E_I`, `𝓔_I`, assembled into `h^{p,q}_λ` of the vanishing
//! cohomology) and the Newton–Poincaré route to the plain spectrum.
//!
//! Face-sum conventions, fixed by exact agreement with the weighted route:
//! τ runs over all nonempty faces of `Γ_I` (including `Γ_I`), and the
//! zeroth dilate contributes nothing (`Λ*(0·τ) = 0`).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hull::{combinations, to_rat};
use crate::polytope::{NewtonData, Region};
use crate::poly::ZPoly;
use crate::rat::{binomial, Rat};
use crate::spectra::{MixedSpectrum, Spectrum};

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `h^{p,q}_λ` of the vanishing cohomology, keyed by `(p, q, λ)`, λ ∈ [0,1).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HodgeDeligneTable {
    pub n: i64,
    pub entries: BTreeMap<(i64, i64, Rat), i64>,
}

impl HodgeDeligneTable {
    pub fn get(&self, p: i64, q: i64, lambda: &Rat) -> i64 {
        self.entries.get(&(p, q, lambda.clone())).copied().unwrap_or(0)
    }

    /// `Σ h^{p,q}_λ [(p+λ, p+q)]`.
    pub fn to_mixed(&self) -> MixedSpectrum {
        MixedSpectrum::from_entries(
            self.entries
                .iter()
                .map(|((p, q, l), m)| (l + Rat::from_integer((*p).into()), p + q, *m)),
        )
    }

    /// Whether `h^{p,q}_λ = h^{q,p}_{{−λ}}` holds for every entry.
    pub fn is_conjugation_symmetric(&self) -> bool {
        self.entries.iter().all(|((p, q, l), m)| {
            let conj = if l.is_zero() { l.clone() } else { Rat::one() - l };
            self.get(*q, *p, &conj) == *m
        })
    }
}

fn require_simple(nd: &NewtonData) -> Result<()> {
    if !nd.convenient {
        return Err(Error::NotConvenient);
    }
    if !nd.structure_flags().simple {
        return Err(Error::ConditionIIIViolated(
            "some vertex of the Newton polyhedron lies on more than n+1 facets".into(),
        ));
    }
    Ok(())
}

/// `h^{a,b}(E_I)` for the facet set `I`.
pub fn danilov_e(nd: &NewtonData, facets: &[usize]) -> Result<BTreeMap<(i64, i64), i64>> {
    require_simple(nd)?;
    Ok(danilov_e_unchecked(nd, facets))
}

fn danilov_e_unchecked(nd: &NewtonData, facets: &[usize]) -> BTreeMap<(i64, i64), i64> {
    let mut res = BTreeMap::new();
    let Some(gi) = nd.gamma_i(facets) else { return res };
    let n = nd.n();
    let dim_e = n - facets.len() as i64;
    let subfaces = nd.subfaces(gi);
    let lst = |f: usize, l: i64| if l == 0 { 0 } else { nd.lambda_star(f, l, Region::Face, None) };
    for a in 0..=dim_e {
        for b in 0..=a {
            if a != b && a != dim_e - b {
                continue;
            }
            let mut tot = 0;
            for &t in &subfaces {
                let d = nd.faces[t].dim as i64;
                tot += if a == b && 2 * a < dim_e {
                    sign(d + b) * binomial(d, a)
                } else if a == b && 2 * a > dim_e {
                    sign(d + b + 1) * binomial(d, a + 1)
                } else if a == b {
                    let s: i64 = (0..=d + 1)
                        .map(|l| sign(l) * binomial(d + 1, a + l + 1) * lst(t, l))
                        .sum();
                    sign(b + 1) * (sign(d) * binomial(d, a + 1) + s)
                } else {
                    (0..=d + 1)
                        .map(|l| sign(b + l + 1) * binomial(d + 1, a + l + 1) * lst(t, l))
                        .sum()
                };
            }
            if tot != 0 {
                res.insert((a, b), tot);
                res.insert((b, a), tot);
            }
        }
    }
    res
}

/// `h^{a,b}_λ(𝓔_I)` for the facet set `I`, for all λ in `(1/D)ℤ ∩ [0,1)`.
pub fn danilov_ce(nd: &NewtonData, facets: &[usize]) -> Result<BTreeMap<(i64, i64, Rat), i64>> {
    require_simple(nd)?;
    Ok(danilov_ce_unchecked(nd, facets, &lambdas(nd)))
}

fn lambdas(nd: &NewtonData) -> Vec<Rat> {
    let d = nd.h_denominator();
    (0..d).map(|k| Rat::new(k.into(), d.into())).collect()
}

fn danilov_ce_unchecked(
    nd: &NewtonData,
    facets: &[usize],
    lams: &[Rat],
) -> BTreeMap<(i64, i64, Rat), i64> {
    let mut res = BTreeMap::new();
    let Some(gi) = nd.gamma_i(facets) else { return res };
    let n = nd.n();
    let subfaces = nd.subfaces(gi);
    for a in 0..=n + 1 {
        let tot: i64 = subfaces
            .iter()
            .map(|&t| {
                let d = nd.faces[t].dim as i64;
                sign(d + a) * binomial(d, a)
            })
            .sum();
        if tot != 0 {
            res.insert((a, a, Rat::zero()), tot);
        }
    }
    for lam in lams.iter().filter(|l| !l.is_zero()) {
        let res_lam = Rat::one() - lam;
        for a in 0..=n + 1 {
            let b = n - facets.len() as i64 + 1 - a;
            if b < 0 {
                continue;
            }
            let mut tot = 0;
            for &t in &subfaces {
                let d = nd.faces[t].dim as i64;
                for l in 0..=d + 1 {
                    let c = binomial(d + 1, a + l + 1);
                    if c == 0 {
                        continue;
                    }
                    let hi = nd.lambda_star(t, l + 1, Region::Cone, Some(&res_lam));
                    let lo = if l > 0 { nd.lambda_star(t, l, Region::Cone, Some(&res_lam)) } else { 0 };
                    tot += sign(l + b) * c * (hi - lo);
                }
            }
            if tot != 0 {
                res.insert((a, b, lam.clone()), tot);
            }
        }
    }
    res
}

/// Sums of the per-`I` tables over `|I| = j+1`, keyed by `j`.
type Strata = (
    BTreeMap<(i64, i64, i64), i64>,
    BTreeMap<(i64, i64, i64, Rat), i64>,
);

fn strata_tables(nd: &NewtonData, lams: &[Rat]) -> Strata {
    let mut es = BTreeMap::new();
    let mut ces = BTreeMap::new();
    let m = nd.facets.len();
    for size in 1..=m {
        for set in combinations(m, size) {
            let j = size as i64 - 1;
            for ((a, b), v) in danilov_e_unchecked(nd, &set) {
                *es.entry((j, a, b)).or_insert(0) += v;
            }
            for ((a, b, l), v) in danilov_ce_unchecked(nd, &set, lams) {
                *ces.entry((j, a, b, l)).or_insert(0) += v;
            }
        }
    }
    (es, ces)
}

/// Summed strata tables `E^{[j]}` and `𝓔^{[j]}` (for inspection and tests).
pub fn strata(nd: &NewtonData) -> Result<Strata> {
    require_simple(nd)?;
    Ok(strata_tables(nd, &lambdas(nd)))
}

/// `h^{p,q}_λ(H^n_van)` from the alternating double sum over strata.
pub fn vanishing_table(nd: &NewtonData) -> Result<HodgeDeligneTable> {
    require_simple(nd)?;
    let n = nd.n();
    let lams = lambdas(nd);
    let (es, ces) = strata_tables(nd, &lams);
    let mut entries = BTreeMap::new();
    for p in 0..=n {
        for q in 0..=n {
            for lam in &lams {
                let mut tot = 0;
                for i in -n..=n {
                    let sg = sign(n + p + q + i);
                    if lam.is_zero() {
                        for k in (1.max(-i))..=n + 1 {
                            tot += sg * es.get(&(i + 2 * k - 1, p - k, q - k)).copied().unwrap_or(0);
                        }
                    }
                    for k in (0.max(-i))..=n + 1 {
                        tot += sg
                            * ces
                                .get(&(i + 2 * k, p - k, q - k, lam.clone()))
                                .copied()
                                .unwrap_or(0);
                    }
                }
                if p == 0 && q == 0 && lam.is_zero() {
                    tot += sign(n - 1);
                }
                if tot < 0 {
                    return Err(Error::NegativeEntry(format!(
                        "h^{{{p},{q}}}_{lam} = {tot}"
                    )));
                }
                if tot != 0 {
                    entries.insert((p, q, lam.clone()), tot);
                }
            }
        }
    }
    Ok(HodgeDeligneTable { n, entries })
}

/// Mixed spectrum via [`vanishing_table`].
pub fn newton_mixed_spectrum(nd: &NewtonData) -> Result<MixedSpectrum> {
    Ok(vanishing_table(nd)?.to_mixed())
}

/// Plain spectrum from the face sum
/// `(−1)^{n+1} + Σ_τ (−1)^{n−d_τ}(1−u)^{k_τ} P_{C_τ}(u)`, with
/// `P_{C_τ} = ∏ (1 − u^{h(v_i)})^{−1}` over the primitive vertex rays.
pub fn brieskorn_poincare(nd: &NewtonData) -> Result<Spectrum> {
    if !nd.convenient {
        return Err(Error::NotConvenient);
    }
    if !nd.structure_flags().regular_simplicial {
        return Err(Error::ConditionIIIPrimeViolated(
            "some cone over a face of the Newton boundary is not regular simplicial".into(),
        ));
    }
    let n = nd.n();
    struct Term {
        dim: i64,
        k: usize,
        heights: Vec<Rat>,
    }
    let terms: Vec<Term> = (0..nd.faces.len())
        .map(|f| Term {
            dim: nd.faces[f].dim as i64,
            k: nd.faces[f].k,
            heights: nd
                .primitive_rays(f)
                .iter()
                .map(|r| nd.h_value(&to_rat(r)).expect("convenient"))
                .collect(),
        })
        .collect();
    let d = crate::rat::lcm_denominators(terms.iter().flat_map(|t| t.heights.iter()))
        .to_usize()
        .expect("denominator fits");
    let exps = |t: &Term| -> Vec<usize> {
        t.heights
            .iter()
            .map(|h| (h * Rat::from_integer(d.into())).to_integer().to_usize().expect("fits"))
            .collect()
    };
    let big_e = terms
        .iter()
        .flat_map(exps)
        .fold(1usize, |acc, e| acc.lcm(&e));
    let one_minus_e = ZPoly::one_minus_x_pow(big_e);
    let denom = one_minus_e.pow(n as usize + 1);
    let mut num = denom.scale(&BigInt::from(sign(n + 1)));
    for t in &terms {
        let mut term = ZPoly::one_minus_x_pow(d).pow(t.k);
        for e in exps(t) {
            let factor = one_minus_e
                .div_exact(&ZPoly::one_minus_x_pow(e))
                .expect("x^e - 1 divides x^E - 1");
            term = &term * &factor;
        }
        term = &term * &one_minus_e.pow(n as usize + 1 - t.heights.len());
        num = num + term.scale(&BigInt::from(sign(n - t.dim)));
    }
    let p = num.div_exact(&denom).ok_or_else(|| {
        Error::NotPolynomial("the Newton–Poincaré face sum is not a polynomial".into())
    })?;
    let mut s = Spectrum::new();
    for (e, c) in p.terms() {
        let c = c.to_i64().expect("coefficient fits in i64");
        if c < 0 {
            return Err(Error::NegativeEntry(format!("coefficient {c} at u^{e}/{d}")));
        }
        s.insert(Rat::new(e.into(), d.into()), c);
    }
    Ok(s)
}

/// `h^{n−j,n}_{van,λ}` for `0 ≤ j ≤ n`, keyed by `(j, λ)`.
///
/// Uses the faces of Γ meeting the open positive orthant, grouped by
/// dimension, which agrees with the facet-set description when the
/// polyhedron is simple and remains valid when it is not.
pub fn extremal_strings(nd: &NewtonData) -> Result<BTreeMap<(i64, Rat), i64>> {
    if !nd.convenient {
        return Err(Error::NotConvenient);
    }
    let n = nd.n();
    let full: Vec<usize> = (0..nd.faces.len())
        .filter(|&f| nd.faces[f].k == nd.nvars)
        .collect();
    let of_dim = |dim: i64| full.iter().copied().filter(move |&f| nd.faces[f].dim as i64 == dim);
    let mut out = BTreeMap::new();
    for j in 0..=n {
        // λ ≠ 0: interior points of the cones over j-dimensional faces.
        let mut by_res: BTreeMap<Rat, i64> = BTreeMap::new();
        for f in of_dim(j) {
            for (r, c) in nd.count(f, 1, Region::Cone) {
                if !r.is_zero() {
                    *by_res.entry(r).or_insert(0) += c as i64;
                }
            }
        }
        for (r, c) in by_res {
            out.insert((j, r), c);
        }
        // λ = 0.
        let zero = if j == n {
            0
        } else if j == 0 {
            of_dim(1).map(|f| nd.lambda_star(f, 1, Region::Face, None)).sum::<i64>()
                + of_dim(0).count() as i64
        } else {
            of_dim(j + 1).map(|f| nd.lambda_star(f, 1, Region::Face, None)).sum()
        };
        if zero != 0 {
            out.insert((j, Rat::zero()), zero);
        }
    }
    Ok(out)
}

/// Closed-form spectrum of `x_0⋯x_n + Σ x_i^{r_i}` (with `Σ 1/r_i < 1`):
/// `Σ_{2≤|J|≤n+1} P_{|J|} F_Ĵ` where `P_j = Σ_{i=1}^{j−1} u^i` and `F_Ĵ` is
/// the product of the one-variable spectra `Σ_{i=1}^{r_k−1} u^{i/r_k}` over
/// `k ∉ J`. An oracle independent of the polyhedral face sum.
pub fn t_series_closed_form(exponents: &[i64]) -> Spectrum {
    let nv = exponents.len();
    let mut out = Spectrum::new();
    for size in 2..=nv {
        for set in combinations(nv, size) {
            let mut term =
                Spectrum::from_entries((1..size as i64).map(|i| (Rat::from_integer(i.into()), 1)));
            for k in (0..nv).filter(|k| !set.contains(k)) {
                let r = exponents[k];
                let one = Spectrum::from_entries((1..r).map(|i| (Rat::new(i.into(), r.into()), 1)));
                term = term.convolve(&one);
            }
            out = out.add(&term);
        }
    }
    out
}

/// Support `{(1,…,1)} ∪ {r_i e_i}` of `x_0⋯x_n + Σ x_i^{r_i}`.
pub fn t_series_support(exponents: &[i64]) -> Vec<Vec<i64>> {
    let nv = exponents.len();
    let mut pts = vec![vec![1; nv]];
    for (i, &r) in exponents.iter().enumerate() {
        let mut e = vec![0; nv];
        e[i] = r;
        pts.push(e);
    }
    pts
}

/// Negative entries never appear in a valid table; exposes the check.
pub fn table_is_nonnegative(t: &HodgeDeligneTable) -> bool {
    t.entries.values().all(|v| !v.is_negative())
}
