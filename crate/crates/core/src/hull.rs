//! Exact convex hulls of finite point sets in ℚ^N, described in their own
//! affine hull: a list of equalities plus one inequality per facet.
//!
//! Facets are found by brute-force enumeration of affinely independent
//! subsets, which is plenty for the small point sets arising here and has
//! no degenerate cases to get wrong.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::linalg::{nullspace, rank};
use crate::rat::{int, Rat};

/// `a·x ≥ b` (for facets) or `a·x = b` (for equalities).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Halfspace {
    pub a: Vec<Rat>,
    pub b: Rat,
}

impl Halfspace {
    pub fn eval(&self, x: &[Rat]) -> Rat {
        dot(&self.a, x) - &self.b
    }
}

#[derive(Clone, Debug)]
pub struct Hull {
    pub dim: usize,
    pub equalities: Vec<Halfspace>,
    pub facets: Vec<Halfspace>,
    pub points: Vec<Vec<Rat>>,
}

pub fn dot(a: &[Rat], x: &[Rat]) -> Rat {
    a.iter().zip(x).fold(Rat::zero(), |s, (p, q)| s + p * q)
}

pub fn to_rat(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| int(x)).collect()
}

/// Affine dimension of a point set (−1 for the empty set, as `None`).
pub fn affine_dim(pts: &[Vec<Rat>]) -> Option<usize> {
    let p0 = pts.first()?;
    let diffs: Vec<Vec<Rat>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect())
        .collect();
    Some(if diffs.is_empty() { 0 } else { rank(diffs) })
}

fn normalise(mut a: Vec<Rat>, mut b: Rat) -> Halfspace {
    // Scale so that the first nonzero coefficient of `a` has absolute value 1
    // while keeping its sign (orientation matters for inequalities).
    if let Some(s) = a.iter().find(|x| !x.is_zero()).map(|x| x.abs()) {
        for x in a.iter_mut() {
            *x = &*x / &s;
        }
        b = b / s;
    }
    Halfspace { a, b }
}

impl Hull {
    pub fn new(points: Vec<Vec<Rat>>) -> Hull {
        assert!(!points.is_empty(), "hull of an empty set");
        let n = points[0].len();
        let p0 = points[0].clone();
        let diffs: Vec<Vec<Rat>> = points
            .iter()
            .map(|p| p.iter().zip(&p0).map(|(a, b)| a - b).collect())
            .collect();
        // Equalities: normals orthogonal to every difference vector.
        let eq_normals = nullspace(&diffs, n);
        let equalities: Vec<Halfspace> = eq_normals
            .iter()
            .map(|c| normalise(c.clone(), dot(c, &p0)))
            .collect();
        let dim = n - eq_normals.len();
        // Basis of the direction space W (complement of the equalities).
        let w_basis = nullspace(&eq_normals, n);
        let mut facets = BTreeSet::new();
        if dim >= 1 {
            let uniq: Vec<Vec<Rat>> = points
                .iter()
                .cloned()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            for subset in combinations(uniq.len(), dim) {
                let q0 = &uniq[subset[0]];
                // a = Σ c_j w_j with a·(q_i − q_0) = 0.
                let rows: Vec<Vec<Rat>> = subset[1..]
                    .iter()
                    .map(|&i| {
                        let d: Vec<Rat> = uniq[i].iter().zip(q0).map(|(x, y)| x - y).collect();
                        w_basis.iter().map(|w| dot(w, &d)).collect()
                    })
                    .collect();
                let cs = nullspace(&rows, w_basis.len());
                if cs.len() != 1 {
                    continue;
                }
                let a: Vec<Rat> = (0..n)
                    .map(|k| {
                        cs[0]
                            .iter()
                            .zip(&w_basis)
                            .fold(Rat::zero(), |s, (c, w)| s + c * &w[k])
                    })
                    .collect();
                let b = dot(&a, q0);
                let vals: Vec<Rat> = uniq.iter().map(|p| dot(&a, p) - &b).collect();
                if vals.iter().all(|v| !v.is_negative()) {
                    facets.insert(normalise(a, b));
                } else if vals.iter().all(|v| !v.is_positive()) {
                    facets.insert(normalise(a.iter().map(|x| -x).collect(), -b));
                }
            }
        }
        Hull { dim, equalities, facets: facets.into_iter().collect(), points }
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.equalities.iter().all(|h| h.eval(x).is_zero())
            && self.facets.iter().all(|h| !h.eval(x).is_negative())
    }

    /// Relative interior membership.
    pub fn in_relint(&self, x: &[Rat]) -> bool {
        self.equalities.iter().all(|h| h.eval(x).is_zero())
            && self.facets.iter().all(|h| h.eval(x).is_positive())
    }

    /// Integer points of the relative interior, found by scanning the
    /// bounding box.
    pub fn relint_lattice_points(&self) -> Vec<Vec<i64>> {
        let n = self.points[0].len();
        let lo: Vec<i64> = (0..n)
            .map(|k| {
                let m = self.points.iter().map(|p| p[k].clone()).min().unwrap();
                crate::rat::floor_i64(&m)
            })
            .collect();
        let hi: Vec<i64> = (0..n)
            .map(|k| {
                let m = self.points.iter().map(|p| p[k].clone()).max().unwrap();
                crate::rat::floor_i64(&m)
            })
            .collect();
        let mut out = Vec::new();
        for_each_box_point(&lo, &hi, |x| {
            if self.in_relint(&to_rat(x)) {
                out.push(x.to_vec());
            }
        });
        out
    }
}

/// Calls `f` on every integer point of the box `lo ≤ x ≤ hi`.
pub fn for_each_box_point(lo: &[i64], hi: &[i64], mut f: impl FnMut(&[i64])) {
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return;
    }
    let mut x = lo.to_vec();
    loop {
        f(&x);
        let mut k = 0;
        loop {
            if k == x.len() {
                return;
            }
            if x[k] < hi[k] {
                x[k] += 1;
                break;
            }
            x[k] = lo[k];
            k += 1;
        }
    }
}

/// All `k`-element index subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Lattice points strictly inside a convex polygon with integer vertices
/// (Andrew's monotone chain + cross-product tests); an independent oracle
/// for the two-dimensional case.
pub fn polygon_interior_count(pts: &[(i64, i64)]) -> usize {
    let mut p: Vec<(i64, i64)> = pts.to_vec();
    p.sort();
    p.dedup();
    if p.len() < 3 {
        return 0;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &(i64, i64)>> =
            if pass == 0 { Box::new(p.iter()) } else { Box::new(p.iter().rev()) };
        for &q in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], q) <= 0 {
                hull.pop();
            }
            hull.push(q);
        }
        hull.pop();
    }
    if hull.len() < 3 {
        return 0;
    }
    let (x0, x1) = (p.iter().map(|q| q.0).min().unwrap(), p.iter().map(|q| q.0).max().unwrap());
    let (y0, y1) = (p.iter().map(|q| q.1).min().unwrap(), p.iter().map(|q| q.1).max().unwrap());
    let mut count = 0;
    for x in x0..=x1 {
        for y in y0..=y1 {
            let inside = (0..hull.len())
                .all(|i| cross(hull[i], hull[(i + 1) % hull.len()], (x, y)) > 0);
            if inside {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i64]]) -> Vec<Vec<Rat>> {
        v.iter().map(|p| to_rat(p)).collect()
    }

    #[test]
    fn triangle_in_space() {
        // conv{3e1,3e2,3e3}: dimension 2, one equality, three facets,
        // one interior lattice point (1,1,1).
        let h = Hull::new(pts(&[&[3, 0, 0], &[0, 3, 0], &[0, 0, 3]]));
        assert_eq!(h.dim, 2);
        assert_eq!(h.equalities.len(), 1);
        assert_eq!(h.facets.len(), 3);
        assert_eq!(h.relint_lattice_points(), vec![vec![1, 1, 1]]);
    }

    #[test]
    fn square_and_polygon_oracle() {
        let h = Hull::new(pts(&[&[0, 0], &[4, 0], &[0, 4], &[4, 4], &[2, 2]]));
        assert_eq!(h.dim, 2);
        assert_eq!(h.facets.len(), 4);
        assert_eq!(h.relint_lattice_points().len(), 9);
        assert_eq!(polygon_interior_count(&[(0, 0), (4, 0), (0, 4), (4, 4)]), 9);
    }

    #[test]
    fn segments_and_points() {
        let h = Hull::new(pts(&[&[2, 0], &[0, 2]]));
        assert_eq!(h.dim, 1);
        assert_eq!(h.relint_lattice_points(), vec![vec![1, 1]]);
        let p = Hull::new(pts(&[&[1, 1]]));
        assert_eq!(p.dim, 0);
        assert_eq!(p.relint_lattice_points(), vec![vec![1, 1]]);
    }

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }
}
