//! Birational and Hodge-theoretic invariants read off a spectrum or a
//! Newton polyhedron: log canonical threshold, k-log-canonicity, du Bois
//! and rational predicates, and the Kulikov type of CY degenerations.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hull::{for_each_box_point, to_rat};
use crate::polytope::{NewtonData, Region};
use crate::rat::{binomial, floor_i64, int, Rat};
use crate::spectra::MixedSpectrum;

/// Invariants determined by the spectrum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub sigma_min: Rat,
    /// Log canonical threshold `min(1, σ^min)`.
    pub lct: Rat,
    /// Minimal exponent, equal to `σ^min`.
    pub period_exponent: Rat,
    /// `⌊σ^min⌋`.
    pub lambda_f: i64,
    /// Largest `k` with `f` k-log-canonical (`σ^min ≥ 1 + k`); −1 if none.
    pub max_k_lc: i64,
    pub du_bois: bool,
    pub rational: bool,
    /// Upper bound `⌊n − σ^min⌋` for the generation level of Hodge ideals;
    /// the level itself is not determined by the spectrum.
    pub gen_level_bound: i64,
    /// Distinct spectral numbers in `(0, 1]` (jumping numbers there).
    pub jumping_in_unit: Vec<Rat>,
}

pub fn invariants(n: i64, s: &MixedSpectrum) -> Result<InvariantReport> {
    let rep = s.support_check(n);
    if !rep.ok {
        return Err(Error::InvalidSpectrum(rep.violations.join("; ")));
    }
    let sigma_min = s.spectral_min()?;
    let lambda_f = floor_i64(&sigma_min);
    let jumping: BTreeSet<Rat> = s
        .iter()
        .map(|(a, _, _)| a.clone())
        .filter(|a| a.is_positive() && *a <= Rat::one())
        .collect();
    Ok(InvariantReport {
        lct: sigma_min.clone().min(Rat::one()),
        period_exponent: sigma_min.clone(),
        lambda_f,
        max_k_lc: lambda_f - 1,
        du_bois: sigma_min >= Rat::one(),
        rational: sigma_min > Rat::one(),
        gen_level_bound: floor_i64(&(int(n) - &sigma_min)),
        jumping_in_unit: jumping.into_iter().collect(),
        sigma_min,
    })
}

/// `k`-rationality in the strict sense `σ^min > 1 + k` (the name follows
/// the source's own coinage; it is not a standard notion).
pub fn k_rational(s: &MixedSpectrum, k: i64) -> Result<bool> {
    Ok(s.spectral_min()? > int(1 + k))
}

/// Newton-polyhedron tests for log canonicity and rationality.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LcTests {
    pub lc: bool,
    pub rational: bool,
}

/// Scans the positive lattice points with `h ≤ 1` (a finite box, since every
/// coordinate is bounded by the axis intercepts).
fn positive_points_below_one(nd: &NewtonData) -> Result<Vec<(Vec<i64>, i64)>> {
    if !nd.convenient {
        return Err(Error::NotConvenient);
    }
    let d = nd.h_denominator();
    let nv = nd.nvars;
    let lo = vec![1; nv];
    // h(x) ≥ h(x_k e_k) = x_k / a_k where a_k is the axis intercept.
    let hi: Vec<i64> = (0..nv)
        .map(|k| {
            let mut e = vec![0; nv];
            e[k] = 1;
            let hk = nd.h_scaled(&e);
            d / hk.max(1)
        })
        .collect();
    let mut out = Vec::new();
    for_each_box_point(&lo, &hi, |x| {
        let h = nd.h_scaled(x);
        if h <= d {
            out.push((x.to_vec(), h));
        }
    });
    Ok(out)
}

pub fn newton_lc_tests(nd: &NewtonData) -> Result<LcTests> {
    let pts = positive_points_below_one(nd)?;
    let d = nd.h_denominator();
    Ok(LcTests {
        lc: pts.iter().all(|(_, h)| *h >= d),
        rational: pts.is_empty(),
    })
}

/// Sufficient conditions for `σ^min ≥ c` and `σ^min > c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KlcFlags {
    pub ge_c: bool,
    pub gt_c: bool,
}

/// Whether `Γ^{[m]}` (the union of `Γ_I` over `|I| = m+1`) is empty. For
/// `m < 0` the index set includes `I = ∅`, i.e. Γ itself, so it is not.
fn skeleton_empty(nd: &NewtonData, m: i64) -> bool {
    if m < 0 {
        return false;
    }
    !nd.faces.iter().any(|f| f.facets.len() as i64 >= m + 1)
}

pub fn newton_klc_sufficient(nd: &NewtonData, c: i64) -> Result<KlcFlags> {
    if c < 1 {
        return Err(Error::InvalidInput(format!("c = {c} < 1")));
    }
    if !nd.convenient {
        return Err(Error::NotConvenient);
    }
    if !nd.structure_flags().simple {
        return Err(Error::ConditionIIIViolated(
            "some vertex of the Newton polyhedron lies on more than n+1 facets".into(),
        ));
    }
    let n = nd.n();
    let mut cone_zero = true;
    let mut face_zero = true;
    for f in 0..nd.faces.len() {
        let l = c - nd.faces[f].c as i64;
        cone_zero &= nd.lambda_star(f, l, Region::Cone, None) == 0;
        face_zero &= nd.lambda_star(f, l, Region::Face, None) == 0;
    }
    let skel_ge = c == 1 || skeleton_empty(nd, n - 2 * c + 3);
    let skel_gt = c == 1 || skeleton_empty(nd, n - 2 * c + 1);
    Ok(KlcFlags {
        ge_c: skel_ge && cone_zero,
        gt_c: skel_gt && cone_zero && face_zero,
    })
}

/// Kulikov type of the CY degeneration attached to the Newton polyhedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KulikovReport {
    pub kulikov_type: i64,
    pub witness: String,
}

/// Locates `1 = (1,…,1)` relative to Δ and Γ.
///
/// * `h(1) > 1`: `1 ∈ int Δ`, type 1.
/// * `h(1) = 1`, `1` a vertex of Γ: type `n+1`.
/// * `h(1) = 1`, `1 ∈ relint Γ_I`: type `|I| + 1`.
/// * `h(1) < 1`, `1 ∈ int Δ_I`: type `|I|`. This reading needs `1` to be the
///   only positive lattice point with `h ≤ 1`; otherwise
///   `OutsidePositiveOrthantLogic`.
pub fn kulikov_type(nd: &NewtonData) -> Result<KulikovReport> {
    if !nd.convenient {
        return Err(Error::NotConvenient);
    }
    let n = nd.n();
    let ones = vec![1i64; nd.nvars];
    let h1 = nd.h_value(&to_rat(&ones))?;
    let facets_at = |target: &Rat| -> Vec<usize> {
        (0..nd.facets.len())
            .filter(|&i| {
                crate::hull::dot(&nd.facets[i], &to_rat(&ones)) == *target
            })
            .collect()
    };
    if h1 > Rat::one() {
        return Ok(KulikovReport {
            kulikov_type: 1,
            witness: format!("h(1) = {h1} > 1: 1 lies in the interior of Δ"),
        });
    }
    if h1 == Rat::one() {
        let is_vertex = nd.points.iter().any(|p| *p == ones)
            && nd.vertex_faces().any(|f| nd.points[nd.faces[f].points[0]] == ones);
        if is_vertex {
            return Ok(KulikovReport {
                kulikov_type: n + 1,
                witness: "1 is a vertex of Γ".into(),
            });
        }
        let i = facets_at(&Rat::one());
        return Ok(KulikovReport {
            kulikov_type: i.len() as i64 + 1,
            witness: format!("1 lies in the relative interior of Γ_I with I = {i:?}"),
        });
    }
    let others: Vec<Vec<i64>> = positive_points_below_one(nd)?
        .into_iter()
        .map(|(x, _)| x)
        .filter(|x| *x != ones)
        .collect();
    if !others.is_empty() || h1.is_zero() {
        return Err(Error::OutsidePositiveOrthantLogic(format!(
            "h(1) = {h1} < 1 and other positive lattice points have h ≤ 1: {others:?}"
        )));
    }
    let i = facets_at(&h1);
    Ok(KulikovReport {
        kulikov_type: i.len() as i64,
        witness: format!("h(1) = {h1} < 1: 1 lies in the interior of Δ_I with I = {i:?}"),
    })
}

/// Lower bound for the geometric genus of an ordinary `k`-tuple point in
/// dimension `n`: `C(k−1, n+1)`, or `C(k, n+1)` when the primitive part
/// `h^{1,n}` is assumed to vanish.
pub fn genus_bound(n: i64, k: i64, assume_ph_vanishes: bool) -> Result<i64> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("multiplicity k = {k} < 2")));
    }
    Ok(if assume_ph_vanishes { binomial(k, n + 1) } else { binomial(k - 1, n + 1) })
}
