//! Newton polytopes of monomial supports: compact facets, the face lattice
//! of the compact boundary Γ, the h-function, memoised lattice-point
//! counters for dilated faces and cones, and structural predicates.
//!
//! Convention: for a convenient support, the polyhedron Δ is cut out by
//! `x ≥ 0` and `ℓ_i·x ≥ 1` over the compact facets `i`. Relative interiors
//! of faces and of the cones `Δ_τ = conv(0, τ)` are described directly in
//! these inequalities, which makes counting a box scan with integer tests.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hull::{combinations, dot, to_rat, Hull};
use crate::linalg::{bareiss_rank, solve_unique};
use crate::rat::{frac, int, lcm_denominators, Rat};

/// Exponent vectors (and optional coefficients) of a polynomial germ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialData {
    pub nvars: usize,
    pub exponents: Vec<Vec<i64>>,
    pub coefficients: Option<Vec<Rat>>,
}

impl MonomialData {
    pub fn new(exponents: Vec<Vec<i64>>) -> Result<Self> {
        Self::build(exponents, None)
    }

    pub fn with_coefficients(exponents: Vec<Vec<i64>>, coefficients: Vec<Rat>) -> Result<Self> {
        if coefficients.len() != exponents.len() {
            return Err(Error::InvalidInput("one coefficient per monomial expected".into()));
        }
        Self::build(exponents, Some(coefficients))
    }

    fn build(exponents: Vec<Vec<i64>>, coefficients: Option<Vec<Rat>>) -> Result<Self> {
        let nvars = exponents
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidInput("empty monomial list".into()))?;
        if nvars == 0 {
            return Err(Error::InvalidInput("at least one variable is required".into()));
        }
        let mut seen = BTreeSet::new();
        for e in &exponents {
            if e.len() != nvars {
                return Err(Error::InvalidInput(format!(
                    "exponent vector {e:?} has length {} instead of {nvars}",
                    e.len()
                )));
            }
            if e.iter().any(|&x| x < 0) {
                return Err(Error::InvalidInput(format!("negative exponent in {e:?}")));
            }
            if !seen.insert(e.clone()) {
                return Err(Error::InvalidInput(format!("duplicate exponent vector {e:?}")));
            }
        }
        Ok(MonomialData { nvars, exponents, coefficients })
    }

    /// `Σ x_i^{d_i}`.
    pub fn fermat(degrees: &[i64]) -> Self {
        let n = degrees.len();
        let exps = (0..n)
            .map(|i| (0..n).map(|k| if k == i { degrees[i] } else { 0 }).collect())
            .collect();
        MonomialData::new(exps).expect("Fermat support is valid")
    }
}

/// A face τ of Γ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Indices (into [`NewtonData::points`]) of the support points on τ.
    pub points: Vec<usize>,
    /// Affine dimension `d_τ`.
    pub dim: usize,
    /// Compact facets containing τ (the set `I`).
    pub facets: Vec<usize>,
    /// Coordinates that are nonzero somewhere on τ.
    pub support: Vec<usize>,
    /// `k_τ`: dimension of the smallest coordinate plane containing τ.
    pub k: usize,
    /// `c_τ = d(Γ_{I(τ)}) − d_τ`.
    pub c: usize,
    /// Point indices of the vertices of τ.
    pub vertices: Vec<usize>,
}

/// Which polytope attached to a face is being counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region {
    /// The dilate `L·τ`.
    Face,
    /// The dilate `L·Δ_τ`, `Δ_τ = conv(0, τ)`.
    Cone,
}

/// Interior lattice-point count, optionally bucketed by the fractional part
/// of h.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeCount {
    pub value: u64,
    pub by_residue: Option<BTreeMap<Rat, u64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructureFlags {
    pub simple: bool,
    pub regular_simplicial: bool,
}

type CountKey = (usize, i64, Region);

/// Newton polytope data of a monomial support.
#[derive(Debug)]
pub struct NewtonData {
    pub nvars: usize,
    pub points: Vec<Vec<i64>>,
    /// Normals `ℓ_i` of the compact facets (`ℓ_i·x = 1` on Γ_i).
    pub facets: Vec<Vec<Rat>>,
    pub facet_points: Vec<BTreeSet<usize>>,
    /// All faces of Γ, sorted by `(dim, points)`.
    pub faces: Vec<Face>,
    pub convenient: bool,
    /// Integer forms `D·ℓ_i`, with `D` the lcm of all denominators.
    int_facets: Vec<Vec<i64>>,
    denom: i64,
    face_index: HashMap<Vec<usize>, usize>,
    cache: Mutex<BTreeMap<CountKey, BTreeMap<Rat, u64>>>,
}

impl NewtonData {
    /// Builds Δ, its compact facets and the face lattice of Γ.
    pub fn build(m: &MonomialData) -> NewtonData {
        let nv = m.nvars;
        let points = m.exponents.clone();
        let rpts: Vec<Vec<Rat>> = points.iter().map(|p| to_rat(p)).collect();
        let mut facets: BTreeSet<Vec<Rat>> = BTreeSet::new();
        for sub in combinations(points.len(), nv) {
            let a: Vec<Vec<Rat>> = sub.iter().map(|&i| rpts[i].clone()).collect();
            let Ok(l) = solve_unique(&a, &vec![Rat::one(); nv]) else { continue };
            if l.iter().any(|x| !x.is_positive()) {
                continue;
            }
            if rpts.iter().all(|p| dot(&l, p) >= Rat::one()) {
                facets.insert(l);
            }
        }
        let facets: Vec<Vec<Rat>> = facets.into_iter().collect();
        let facet_points: Vec<BTreeSet<usize>> = facets
            .iter()
            .map(|l| (0..points.len()).filter(|&i| dot(l, &rpts[i]).is_one()).collect())
            .collect();

        // Close the facet point-sets under intersection with facets and
        // coordinate hyperplanes.
        let coord_sets: Vec<BTreeSet<usize>> = (0..nv)
            .map(|k| (0..points.len()).filter(|&i| points[i][k] == 0).collect())
            .collect();
        let gens: Vec<&BTreeSet<usize>> = facet_points.iter().chain(coord_sets.iter()).collect();
        let mut all: BTreeSet<BTreeSet<usize>> = facet_points.iter().cloned().collect();
        let mut frontier: Vec<BTreeSet<usize>> = all.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for f in &frontier {
                for g in &gens {
                    let h: BTreeSet<usize> = f.intersection(g).copied().collect();
                    if !h.is_empty() && all.insert(h.clone()) {
                        next.push(h);
                    }
                }
            }
            frontier = next;
        }

        let dim_of = |s: &BTreeSet<usize>| {
            let v: Vec<Vec<Rat>> = s.iter().map(|&i| rpts[i].clone()).collect();
            crate::hull::affine_dim(&v).unwrap_or(0)
        };
        let gamma_dim = |fs: &[usize]| -> usize {
            let mut s: BTreeSet<usize> = (0..points.len()).collect();
            for &i in fs {
                s = s.intersection(&facet_points[i]).copied().collect();
            }
            dim_of(&s)
        };
        let mut faces: Vec<Face> = all
            .iter()
            .map(|s| {
                let fs: Vec<usize> =
                    (0..facets.len()).filter(|&i| s.is_subset(&facet_points[i])).collect();
                let support: Vec<usize> =
                    (0..nv).filter(|&k| s.iter().any(|&i| points[i][k] != 0)).collect();
                let dim = dim_of(s);
                Face {
                    points: s.iter().copied().collect(),
                    dim,
                    c: gamma_dim(&fs) - dim,
                    facets: fs,
                    k: support.len(),
                    support,
                    vertices: Vec::new(),
                }
            })
            .collect();
        // A point of a face is a vertex iff the other points of the face do
        // not already span it. (One-point faces alone miss vertices of Γ
        // that only non-compact facets cut out when Δ is not convenient.)
        for f in faces.iter_mut() {
            f.vertices = f
                .points
                .iter()
                .copied()
                .filter(|&p| {
                    let others: Vec<Vec<Rat>> =
                        f.points.iter().filter(|&&q| q != p).map(|&q| rpts[q].clone()).collect();
                    others.is_empty() || !Hull::new(others).contains(&rpts[p])
                })
                .collect();
        }
        faces.sort_by(|a, b| (a.dim, &a.points).cmp(&(b.dim, &b.points)));
        let face_index = faces.iter().enumerate().map(|(i, f)| (f.points.clone(), i)).collect();

        let convenient = (0..nv).all(|k| {
            points.iter().any(|p| p[k] > 0 && (0..nv).all(|j| j == k || p[j] == 0))
        });
        let denom_big = lcm_denominators(facets.iter().flatten());
        let denom = denom_big.to_i64().expect("facet denominators fit in i64");
        let int_facets = facets
            .iter()
            .map(|l| {
                l.iter()
                    .map(|x| (x * int(denom)).to_integer().to_i64().expect("fits"))
                    .collect()
            })
            .collect();
        NewtonData {
            nvars: nv,
            points,
            facets,
            facet_points,
            faces,
            convenient,
            int_facets,
            denom,
            face_index,
            cache: Mutex::new(BTreeMap::new()),
        }
    }

    /// `n` in the `n+1 = nvars` convention.
    pub fn n(&self) -> i64 {
        self.nvars as i64 - 1
    }

    fn require_convenient(&self) -> Result<()> {
        if self.convenient {
            Ok(())
        } else {
            Err(Error::NotConvenient)
        }
    }

    /// `h(x) = min_i ℓ_i·x`.
    pub fn h_value(&self, x: &[Rat]) -> Result<Rat> {
        self.require_convenient()?;
        Ok(self.h_unchecked(x))
    }

    fn h_unchecked(&self, x: &[Rat]) -> Rat {
        self.facets.iter().map(|l| dot(l, x)).min().expect("at least one facet")
    }

    /// `D·h(x)` for integer `x`, with `D` = [`Self::h_denominator`].
    pub fn h_scaled(&self, x: &[i64]) -> i64 {
        self.int_facets
            .iter()
            .map(|l| l.iter().zip(x).map(|(a, b)| a * b).sum::<i64>())
            .min()
            .expect("at least one facet")
    }

    /// Common denominator of all facet normals.
    pub fn h_denominator(&self) -> i64 {
        self.denom
    }

    pub fn face(&self, points: &[usize]) -> Option<usize> {
        self.face_index.get(points).copied()
    }

    /// Index of `Γ_I = ∩_{i∈I} Γ_i`, or `None` if empty.
    pub fn gamma_i(&self, facets: &[usize]) -> Option<usize> {
        let mut s: BTreeSet<usize> = (0..self.points.len()).collect();
        for &i in facets {
            s = s.intersection(&self.facet_points[i]).copied().collect();
        }
        if s.is_empty() {
            return None;
        }
        self.face(&s.into_iter().collect::<Vec<_>>())
    }

    /// Faces contained in face `f` (including `f`).
    pub fn subfaces(&self, f: usize) -> Vec<usize> {
        let pts: BTreeSet<usize> = self.faces[f].points.iter().copied().collect();
        (0..self.faces.len())
            .filter(|&g| self.faces[g].points.iter().all(|p| pts.contains(p)))
            .collect()
    }

    pub fn vertex_faces(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.faces.len()).filter(|&f| self.faces[f].dim == 0)
    }

    /// Conditions (iii) and (iii′).
    pub fn structure_flags(&self) -> StructureFlags {
        let simple = self.vertex_faces().all(|f| {
            let v = &self.points[self.faces[f].points[0]];
            let zeros = v.iter().filter(|&&x| x == 0).count();
            self.faces[f].facets.len() + zeros == self.nvars
        });
        let regular_simplicial = (0..self.faces.len()).all(|f| {
            let face = &self.faces[f];
            face.vertices.len() == face.dim + 1 && {
                let rays = self.primitive_rays(f);
                minors_gcd(&rays).is_one()
            }
        });
        StructureFlags { simple, regular_simplicial }
    }

    /// Primitive lattice vectors along the vertices of face `f`.
    pub fn primitive_rays(&self, f: usize) -> Vec<Vec<i64>> {
        self.faces[f]
            .vertices
            .iter()
            .map(|&p| {
                let v = &self.points[p];
                let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
                v.iter().map(|&x| x / g).collect()
            })
            .collect()
    }

    /// The smallest face of Γ containing `x / h(x)` for `x` in the open
    /// positive orthant, identified by its facet set and support.
    pub fn minimal_face_through(&self, x: &[Rat]) -> Option<usize> {
        let h = self.h_unchecked(x);
        if !h.is_positive() {
            return None;
        }
        let y: Vec<Rat> = x.iter().map(|c| c / &h).collect();
        let fs: Vec<usize> =
            (0..self.facets.len()).filter(|&i| dot(&self.facets[i], &y).is_one()).collect();
        let sup: Vec<usize> = (0..self.nvars).filter(|&k| !x[k].is_zero()).collect();
        (0..self.faces.len()).find(|&f| self.faces[f].facets == fs && self.faces[f].support == sup)
    }

    // ------------------------------------------------------------ counting

    /// Interior lattice points of `L·τ` or `L·Δ_τ` bucketed by `{h}`.
    pub fn count(&self, f: usize, dilate: i64, region: Region) -> BTreeMap<Rat, u64> {
        let key = (f, dilate, region);
        if let Some(v) = self.cache.lock().expect("count cache").get(&key) {
            return v.clone();
        }
        let v = self.count_uncached(f, dilate, region);
        self.cache.lock().expect("count cache").insert(key, v.clone());
        v
    }

    /// `Λ*` (or `Λ*_λ` when `lambda` is given) of `L·τ` / `L·Δ_τ`.
    pub fn lambda_star(&self, f: usize, dilate: i64, region: Region, lambda: Option<&Rat>) -> i64 {
        if dilate <= 0 {
            return 0;
        }
        let m = self.count(f, dilate, region);
        let v = match lambda {
            None => m.values().sum(),
            Some(l) => m.get(&frac(l)).copied().unwrap_or(0),
        };
        v as i64
    }

    /// Public form of the counter.
    pub fn count_interior(
        &self,
        f: usize,
        dilate: i64,
        region: Region,
        with_residues: bool,
    ) -> Result<LatticeCount> {
        if f >= self.faces.len() {
            return Err(Error::DegenerateFace(format!("no face with index {f}")));
        }
        if dilate < 1 {
            return Err(Error::InvalidInput("dilation factor must be at least 1".into()));
        }
        let m = self.count(f, dilate, region);
        Ok(LatticeCount {
            value: m.values().sum(),
            by_residue: with_residues.then_some(m),
        })
    }

    fn count_uncached(&self, f: usize, dilate: i64, region: Region) -> BTreeMap<Rat, u64> {
        let face = &self.faces[f];
        let sup = &face.support;
        let inside: BTreeSet<usize> = face.facets.iter().copied().collect();
        let hi: Vec<i64> = sup
            .iter()
            .map(|&k| dilate * face.points.iter().map(|&p| self.points[p][k]).max().unwrap_or(0))
            .collect();
        let lo = vec![1i64; sup.len()];
        let d = self.denom;
        let lscaled = dilate * d;
        let mut out: BTreeMap<i64, u64> = BTreeMap::new();
        let mut x = vec![0i64; self.nvars];
        crate::hull::for_each_box_point(&lo, &hi, |y| {
            for (j, &k) in sup.iter().enumerate() {
                x[k] = y[j];
            }
            let vals: Vec<i64> = self
                .int_facets
                .iter()
                .map(|l| l.iter().zip(&x).map(|(a, b)| a * b).sum())
                .collect();
            let t = match region {
                Region::Face => lscaled,
                Region::Cone => match face.facets.first() {
                    Some(&i) => vals[i],
                    None => return,
                },
            };
            let ok = vals.iter().enumerate().all(|(i, &v)| {
                if inside.contains(&i) {
                    v == t
                } else {
                    v > t
                }
            });
            let ok = ok && (region == Region::Face || (t > 0 && t < lscaled));
            if ok {
                *out.entry(t.rem_euclid(d)).or_insert(0) += 1;
            }
        });
        out.into_iter().map(|(r, c)| (Rat::new(r.into(), d.into()), c)).collect()
    }

    /// Every count computed so far, as `((face, dilate, region), residues)`.
    pub fn count_log(&self) -> Vec<(CountKey, BTreeMap<Rat, u64>)> {
        self.cache
            .lock()
            .expect("count cache")
            .iter()
            .map(|(k, v)| (*k, v.clone()))
            .collect()
    }

    /// Brute-force recount of `L·τ` / `L·Δ_τ` from an independently built
    /// convex hull of the dilated vertex set.
    pub fn count_by_oracle(&self, f: usize, dilate: i64, region: Region) -> BTreeMap<Rat, u64> {
        let face = &self.faces[f];
        let mut verts: Vec<Vec<Rat>> = face
            .vertices
            .iter()
            .map(|&p| self.points[p].iter().map(|&c| int(c * dilate)).collect())
            .collect();
        if region == Region::Cone {
            verts.push(vec![Rat::zero(); self.nvars]);
        }
        let hull = Hull::new(verts);
        let mut out = BTreeMap::new();
        for x in hull.relint_lattice_points() {
            let h = self.h_unchecked(&to_rat(&x));
            *out.entry(frac(&h)).or_insert(0) += 1;
        }
        out
    }

    /// Re-verifies every logged count with [`Self::count_by_oracle`].
    /// Returns how many counts were checked, or the first disagreement.
    pub fn audit_counts(&self) -> std::result::Result<usize, String> {
        let log = self.count_log();
        for ((f, l, r), v) in &log {
            let o = self.count_by_oracle(*f, *l, *r);
            if &o != v {
                return Err(format!("face {f} dilate {l} {r:?}: counted {v:?}, oracle {o:?}"));
            }
        }
        Ok(log.len())
    }
}

/// gcd of all maximal minors of the matrix with the given rows.
pub fn minors_gcd(rows: &[Vec<i64>]) -> BigInt {
    let r = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let mut g = BigInt::zero();
    for cols in combinations(n, r) {
        let m: Vec<Vec<Rat>> = rows
            .iter()
            .map(|row| cols.iter().map(|&c| int(row[c])).collect())
            .collect();
        let d = determinant(m);
        g = g.gcd(&d.to_integer());
    }
    g
}

/// Determinant by exact elimination.
pub fn determinant(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c].clone();
        for i in c + 1..n {
            let f = &m[i][c] / &m[c][c];
            for j in c..n {
                let v = &m[i][j] - &f * &m[c][j];
                m[i][j] = v;
            }
        }
    }
    det
}

/// Checks the full-rank sanity of a point set via the generic rank routine.
pub fn points_rank(pts: &[Vec<i64>]) -> usize {
    bareiss_rank(pts.iter().map(|p| to_rat(p)).collect())
}
