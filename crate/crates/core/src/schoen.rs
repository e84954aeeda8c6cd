//! Nodal hypersurfaces `X₀ ⊂ ℙ^{2m}` of degree `d`: the rank `r` of the
//! evaluation map from degree-`(md − 2m − 1)` forms to the node set. It
//! equals rk N and dim W_{n−1}H^n(X₀); `𝔡 − r` is the phantom rank.
//!
//! Node coordinates live in ℚ(ζ_k) (`k = 1` for rational nodes). The rank
//! is computed modulo two primes `p ≡ 1 (mod k)`, where ζ_k has an image of
//! exact order `k`. Rank mod a prime never exceeds the characteristic-0
//! rank. An exact fraction-free elimination over ℤ[ζ_k] certifies the
//! result, and is always the fallback when the two primes disagree.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::polytope::MonomialData;
use crate::rat::{binomial, fmt_short, parse_rat, Rat};
use crate::scalar::{primes_one_mod, root_of_unity, Cyclo, CycloCtx, Fp};

/// An element `Σ c_i ζ^i` of ℚ(ζ_k), stored by its coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaCoord {
    pub coeffs: Vec<Rat>,
}

impl ZetaCoord {
    pub fn rational(c: Rat) -> Self {
        ZetaCoord { coeffs: vec![c] }
    }

    /// `ζ^e`.
    pub fn zeta_pow(e: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); e + 1];
        coeffs[e] = Rat::one();
        ZetaCoord { coeffs }
    }

    /// Parses `a/b`, or a sum of terms `c`, `c*zeta`, `c*zeta^e`, `zeta^e`,
    /// `-zeta`.
    pub fn parse(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty coordinate".into()));
        }
        let bad = || Error::Parse(format!("bad coordinate {s:?}"));
        // Split into signed terms.
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut coeffs: Vec<Rat> = Vec::new();
        for t in terms {
            let (neg, body) = match t.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, t.strip_prefix('+').unwrap_or(&t)),
            };
            let (c, e) = match body.find("zeta") {
                None => (parse_rat(body)?, 0usize),
                Some(pos) => {
                    let head = body[..pos].trim_end_matches('*');
                    let c = if head.is_empty() { Rat::one() } else { parse_rat(head)? };
                    let tail = &body[pos + 4..];
                    let e = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
                    };
                    (c, e)
                }
            };
            if coeffs.len() <= e {
                coeffs.resize(e + 1, Rat::zero());
            }
            coeffs[e] += if neg { -c } else { c };
        }
        Ok(ZetaCoord { coeffs })
    }

    fn denominator_lcm(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |a, c| a.lcm(c.denom()))
    }
}

impl fmt::Display for ZetaCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = fmt_short(&c.abs());
            let body = match e {
                0 => mag,
                1 if c.abs().is_one() => "zeta".to_string(),
                1 => format!("{mag}*zeta"),
                _ if c.abs().is_one() => format!("zeta^{e}"),
                _ => format!("{mag}*zeta^{e}"),
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            if parts.is_empty() {
                parts.push(if c.is_negative() { format!("-{body}") } else { body });
            } else {
                parts.push(format!("{sign} {body}"));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Node set of a degree-`d` hypersurface in `ℙ^{2m}`.
#[derive(Clone, Debug)]
pub struct NodalFamily {
    pub m: usize,
    pub degree: usize,
    /// Conductor `k` of the coordinate field ℚ(ζ_k); 1 for ℚ.
    pub conductor: u64,
    pub nodes: Vec<Vec<ZetaCoord>>,
    /// Nodes rescaled to ℤ[ζ_k] coordinates.
    integral: Vec<Vec<Cyclo>>,
}

impl NodalFamily {
    pub fn new(m: usize, degree: usize, conductor: u64, nodes: Vec<Vec<ZetaCoord>>) -> Result<Self> {
        if m == 0 || degree == 0 || conductor == 0 {
            return Err(Error::InvalidInput("m, degree and conductor must be positive".into()));
        }
        let ctx = CycloCtx::new(conductor);
        let integral: Vec<Vec<Cyclo>> = nodes
            .iter()
            .enumerate()
            .map(|(i, node)| {
                if node.len() != 2 * m + 1 {
                    return Err(Error::InvalidInput(format!(
                        "node {i} has {} coordinates, expected {}",
                        node.len(),
                        2 * m + 1
                    )));
                }
                let l = node.iter().fold(BigInt::one(), |a, c| a.lcm(&c.denominator_lcm()));
                let coords: Vec<Cyclo> = node
                    .iter()
                    .map(|c| {
                        let ints: Vec<BigInt> =
                            c.coeffs.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
                        Cyclo::from_powers(&ctx, &ints)
                    })
                    .collect();
                if coords.iter().all(Zero::is_zero) {
                    return Err(Error::InvalidInput(format!("node {i} is the zero vector")));
                }
                Ok(coords)
            })
            .collect::<Result<_>>()?;
        let fam = NodalFamily { m, degree, conductor, nodes, integral };
        if let Some((a, b)) = fam.first_duplicate() {
            return Err(Error::InvalidInput(format!("nodes {a} and {b} coincide projectively")));
        }
        Ok(fam)
    }

    fn first_duplicate(&self) -> Option<(usize, usize)> {
        let n = self.integral.len();
        let proportional = |u: &[Cyclo], v: &[Cyclo]| {
            (0..u.len()).all(|i| {
                (i + 1..u.len()).all(|j| (u[i].clone() * v[j].clone() - u[j].clone() * v[i].clone()).is_zero())
            })
        };
        (0..n)
            .into_par_iter()
            .find_map_first(|a| {
                (a + 1..n)
                    .find(|&b| proportional(&self.integral[a], &self.integral[b]))
                    .map(|b| (a, b))
            })
    }

    /// `md − 2m − 1`, the degree of the sections evaluated at the nodes.
    pub fn section_degree(&self) -> i64 {
        (self.m * self.degree) as i64 - 2 * self.m as i64 - 1
    }

    /// `dim H⁰(O(md − 2m − 1)) = C(s + 2m, 2m)`.
    pub fn section_dim(&self) -> i64 {
        let s = self.section_degree();
        if s < 0 {
            0
        } else {
            binomial(s + 2 * self.m as i64, 2 * self.m as i64)
        }
    }

    pub fn delta(&self) -> usize {
        self.nodes.len()
    }

    pub fn integral_nodes(&self) -> &[Vec<Cyclo>] {
        &self.integral
    }
}

/// All exponent vectors of degree `s` in `nv` variables, lexicographic.
pub fn monomials(nv: usize, s: usize) -> Vec<Vec<usize>> {
    fn rec(nv: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() + 1 == nv {
            cur.push(s);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=s).rev() {
            cur.push(e);
            rec(nv, s - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if nv > 0 {
        rec(nv, s, &mut Vec::new(), &mut out);
    }
    out
}

fn powers(x: &Cyclo, up_to: usize) -> Vec<Cyclo> {
    let mut v = Vec::with_capacity(up_to + 1);
    v.push(Cyclo::one());
    for i in 0..up_to {
        v.push(v[i].clone() * x.clone());
    }
    v
}

/// Evaluation matrix over ℤ[ζ_k]: rows are monomials, columns nodes.
fn exact_matrix(fam: &NodalFamily, mons: &[Vec<usize>], s: usize) -> Vec<Vec<Cyclo>> {
    let cols: Vec<Vec<Cyclo>> = fam
        .integral
        .par_iter()
        .map(|node| {
            let pw: Vec<Vec<Cyclo>> = node.iter().map(|x| powers(x, s)).collect();
            mons.iter()
                .map(|e| {
                    e.iter()
                        .enumerate()
                        .fold(Cyclo::one(), |acc, (i, &k)| acc * pw[i][k].clone())
                })
                .collect()
        })
        .collect();
    (0..mons.len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
}

fn modular_matrix(fam: &NodalFamily, mons: &[Vec<usize>], s: usize, p: u64) -> Vec<Vec<Fp>> {
    let z = root_of_unity(fam.conductor, p);
    let cols: Vec<Vec<Fp>> = fam
        .integral
        .par_iter()
        .map(|node| {
            let pw: Vec<Vec<Fp>> = node
                .iter()
                .map(|x| {
                    let b = x.reduce_mod(z, p);
                    let mut v = vec![Fp::new(1, p)];
                    for i in 0..s {
                        v.push(v[i] * b);
                    }
                    v
                })
                .collect();
            mons.iter()
                .map(|e| e.iter().enumerate().fold(Fp::new(1, p), |acc, (i, &k)| acc * pw[i][k]))
                .collect()
        })
        .collect();
    (0..mons.len()).map(|r| cols.iter().map(|c| c[r]).collect()).collect()
}

/// Fraction-free elimination over ℤ[ζ_k]. Each step divides by the previous
/// pivot `b` as `x·b*/N(b)`, with `(b*, N(b))` computed once per step and
/// the row updates done in parallel.
pub fn exact_rank(mut m: Vec<Vec<Cyclo>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev_star = Cyclo::one();
    let mut prev_norm = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let piv = pivot_row[c].clone();
        tail.par_iter_mut().for_each(|row| {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let v = piv.clone() * row[j].clone() - lead.clone() * pivot_row[j].clone();
                row[j] = if v.is_zero() {
                    v
                } else {
                    (v * prev_star.clone()).div_integer(&prev_norm)
                };
            }
            row[c] = Cyclo::zero();
        });
        let (star, norm) = piv.norm_cofactor();
        prev_star = star;
        prev_norm = norm;
        r += 1;
    }
    r
}

/// How [`evaluation_rank_with`] certifies its answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMode {
    /// Two primes; exact elimination only if they disagree.
    Modular,
    /// Two primes; a disagreement is reported instead of resolved.
    ModularStrict,
    /// Two primes and the exact elimination, which must all agree.
    Certified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchoenReport {
    pub r: usize,
    pub rk_n: usize,
    pub dim_w: usize,
    pub phantom: usize,
    pub delta: usize,
    pub section_degree: i64,
    pub section_dim: i64,
    /// `(p, rank mod p)` for each prime used.
    pub modular_ranks: Vec<(u64, usize)>,
    /// Rank from the exact elimination, when it was run.
    pub exact_rank: Option<usize>,
}

pub fn evaluation_rank(fam: &NodalFamily) -> Result<SchoenReport> {
    evaluation_rank_with(fam, RankMode::Modular)
}

pub fn evaluation_rank_with(fam: &NodalFamily, mode: RankMode) -> Result<SchoenReport> {
    let sd = fam.section_degree();
    if sd < 0 {
        return Err(Error::DegenerateSection(format!(
            "md − 2m − 1 = {sd} < 0 for m = {}, d = {}",
            fam.m, fam.degree
        )));
    }
    let s = sd as usize;
    let delta = fam.delta();
    let report = |r: usize, modular_ranks, exact_rank| SchoenReport {
        r,
        rk_n: r,
        dim_w: r,
        phantom: delta - r,
        delta,
        section_degree: sd,
        section_dim: fam.section_dim(),
        modular_ranks,
        exact_rank,
    };
    if delta == 0 {
        return Ok(report(0, Vec::new(), None));
    }
    let mons = monomials(2 * fam.m + 1, s);
    let primes = primes_one_mod(fam.conductor, 2);
    let (r1, r2) = rayon::join(
        || rank(modular_matrix(fam, &mons, s, primes[0])),
        || rank(modular_matrix(fam, &mons, s, primes[1])),
    );
    let modular = vec![(primes[0], r1), (primes[1], r2)];
    let agree = r1 == r2;
    if !agree && mode == RankMode::ModularStrict {
        return Err(Error::RankDisagreement(format!(
            "rank {r1} mod {} but {r2} mod {}",
            primes[0], primes[1]
        )));
    }
    if agree && mode == RankMode::Modular {
        return Ok(report(r1, modular, None));
    }
    let exact = exact_rank(exact_matrix(fam, &mons, s));
    if mode == RankMode::Certified && (r1 != exact || r2 != exact) {
        return Err(Error::RankDisagreement(format!(
            "exact rank {exact}, modular ranks {r1} (p = {}) and {r2} (p = {})",
            primes[0], primes[1]
        )));
    }
    Ok(report(exact, modular, Some(exact)))
}

fn eval_term(coef: &BigInt, exps: &[i64], pw: &[Vec<Cyclo>]) -> Cyclo {
    exps.iter()
        .enumerate()
        .fold(Cyclo::integer(coef.clone()), |acc, (i, &k)| acc * pw[i][k as usize].clone())
}

/// Whether every node lies on `F = 0` and annihilates all partials of `F`.
pub fn node_verify(fam: &NodalFamily, f: &MonomialData) -> Result<bool> {
    let nv = 2 * fam.m + 1;
    if f.nvars != nv {
        return Err(Error::InvalidInput(format!("F has {} variables, expected {nv}", f.nvars)));
    }
    let coeffs = f
        .coefficients
        .clone()
        .ok_or_else(|| Error::InvalidInput("node_verify needs coefficients".into()))?;
    let deg = f.exponents[0].iter().sum::<i64>();
    if f.exponents.iter().any(|e| e.iter().sum::<i64>() != deg) {
        return Err(Error::InvalidInput("F is not homogeneous".into()));
    }
    let l = coeffs.iter().fold(BigInt::one(), |a, c| a.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * Rat::from_integer(l.clone())).to_integer()).collect();
    let maxe = deg.to_usize().unwrap_or(0);
    let ok = fam.integral.par_iter().all(|node| {
        let pw: Vec<Vec<Cyclo>> = node.iter().map(|x| powers(x, maxe)).collect();
        let value = f
            .exponents
            .iter()
            .zip(&ints)
            .fold(Cyclo::zero(), |acc, (e, c)| acc + eval_term(c, e, &pw));
        if !value.is_zero() {
            return false;
        }
        (0..nv).all(|i| {
            let g = f
                .exponents
                .iter()
                .zip(&ints)
                .filter(|(e, _)| e[i] > 0)
                .fold(Cyclo::zero(), |acc, (e, c)| {
                    let mut d = e.clone();
                    d[i] -= 1;
                    acc + eval_term(&(c * BigInt::from(e[i])), &d, &pw)
                });
            g.is_zero()
        })
    });
    Ok(ok)
}

/// `Σ x_i^5 − 5 ∏ x_i` on ℙ⁴.
pub fn dwork_quintic() -> MonomialData {
    let mut exps: Vec<Vec<i64>> = (0..5)
        .map(|i| (0..5).map(|j| if i == j { 5 } else { 0 }).collect())
        .collect();
    exps.push(vec![1; 5]);
    let mut coeffs = vec![Rat::one(); 5];
    coeffs.push(Rat::from_integer((-5).into()));
    MonomialData::with_coefficients(exps, coeffs).expect("valid support")
}

/// The 125 nodes `(1, ζ^{a_1}, …, ζ^{a_4})`, `Σ a_i ≡ 0 (mod 5)`, of the
/// Dwork quintic.
pub fn dwork_nodes() -> Vec<Vec<ZetaCoord>> {
    let mut out = Vec::new();
    for a1 in 0..5 {
        for a2 in 0..5 {
            for a3 in 0..5 {
                let a4 = (15 - a1 - a2 - a3) % 5;
                out.push(vec![
                    ZetaCoord::rational(Rat::one()),
                    ZetaCoord::zeta_pow(a1),
                    ZetaCoord::zeta_pow(a2),
                    ZetaCoord::zeta_pow(a3),
                    ZetaCoord::zeta_pow(a4),
                ]);
            }
        }
    }
    out
}

pub fn dwork_family() -> NodalFamily {
    NodalFamily::new(2, 5, 5, dwork_nodes()).expect("distinct nodes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn rational_family(m: usize, d: usize, pts: &[&[i64]]) -> NodalFamily {
        let nodes = pts
            .iter()
            .map(|p| p.iter().map(|&x| ZetaCoord::rational(int(x))).collect())
            .collect();
        NodalFamily::new(m, d, 1, nodes).unwrap()
    }

    #[test]
    fn coordinate_round_trip() {
        for s in ["1", "-3/2", "zeta", "1 + 2*zeta^3", "-zeta^2 - 1/3*zeta^4"] {
            let c = ZetaCoord::parse(s).unwrap();
            assert_eq!(ZetaCoord::parse(&c.to_string()).unwrap(), c, "{s}");
        }
        assert_eq!(ZetaCoord::parse("zeta^2").unwrap(), ZetaCoord::zeta_pow(2));
        assert!(ZetaCoord::parse("zeta^").is_err());
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(5, 5).len(), 126);
        assert_eq!(monomials(3, 0), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn small_cases() {
        let one = rational_family(1, 3, &[&[1, 0, 0]]);
        let rep = evaluation_rank_with(&one, RankMode::Certified).unwrap();
        assert_eq!((rep.r, rep.phantom), (1, 0));
        let none = rational_family(1, 3, &[]);
        assert_eq!(evaluation_rank(&none).unwrap().r, 0);
        // m = 1, d = 3: sections of degree 0, so at most rank 1.
        let three = rational_family(1, 3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let rep = evaluation_rank_with(&three, RankMode::Certified).unwrap();
        assert_eq!((rep.r, rep.phantom), (1, 2));
        let low = rational_family(1, 2, &[&[1, 0, 0]]);
        assert!(matches!(evaluation_rank(&low), Err(Error::DegenerateSection(_))));
    }

    #[test]
    fn duplicates_rejected() {
        let nodes = vec![
            vec![ZetaCoord::rational(int(1)), ZetaCoord::rational(int(2)), ZetaCoord::rational(int(0))],
            vec![ZetaCoord::rational(int(2)), ZetaCoord::rational(int(4)), ZetaCoord::rational(int(0))],
        ];
        assert!(NodalFamily::new(1, 3, 1, nodes).is_err());
    }

    #[test]
    fn dwork_nodes_verify() {
        let fam = dwork_family();
        assert_eq!(fam.delta(), 125);
        assert!(node_verify(&fam, &dwork_quintic()).unwrap());
        let mut bad = dwork_nodes();
        bad[7][1] = ZetaCoord::rational(rat(2, 1));
        let bad = NodalFamily::new(2, 5, 5, bad).unwrap();
        assert!(!node_verify(&bad, &dwork_quintic()).unwrap());
        let fermat = MonomialData::with_coefficients(
            (0..5).map(|i| (0..5).map(|j| if i == j { 5 } else { 0 }).collect()).collect(),
            vec![Rat::one(); 5],
        )
        .unwrap();
        assert!(!node_verify(&fam, &fermat).unwrap());
    }

    #[test]
    fn dwork_modular_rank() {
        let rep = evaluation_rank(&dwork_family()).unwrap();
        assert_eq!((rep.r, rep.phantom), (101, 24));
        assert_eq!(rep.modular_ranks[0].1, rep.modular_ranks[1].1);
    }
}
