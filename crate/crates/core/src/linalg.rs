//! Exact linear algebra, generic over the coefficient type.
//!
//! The routines only need ring operations plus division that is exact
//! whenever the algorithm asks for it, so the same code runs over ℚ, 𝔽_p
//! and ℚ(ζ_k).

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// An exact scalar: a field, or an integral domain whose `Div` is exact
/// division (only used that way by [`bareiss_rank`]).
pub trait Exact:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
}

impl<T> Exact for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
{
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<T: Exact>(m: &mut [Vec<T>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = T::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let v = m[i][j].clone() - f.clone() * m[r][j].clone();
                    m[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank by Gaussian elimination over a field.
pub fn rank<T: Exact>(mut m: Vec<Vec<T>>) -> usize {
    rref(&mut m).len()
}

/// Fraction-free (Bareiss) rank. Over an integral domain every division is
/// exact, so intermediate entries stay integral.
pub fn bareiss_rank<T: Exact>(mut m: Vec<Vec<T>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = T::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let piv = m[r][c].clone();
        for i in r + 1..rows {
            let lead = m[i][c].clone();
            for j in c + 1..cols {
                let v = (piv.clone() * m[i][j].clone() - lead.clone() * m[r][j].clone())
                    / prev.clone();
                m[i][j] = v;
            }
            m[i][c] = T::zero();
        }
        prev = piv;
        r += 1;
    }
    r
}

/// Basis of `{x : m·x = 0}`.
pub fn nullspace<T: Exact>(m: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let mut a: Vec<Vec<T>> = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); ncols];
            v[f] = T::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    Underdetermined,
    Inconsistent,
}

/// The unique solution of `a·x = b`, if there is one.
pub fn solve_unique<T: Exact>(a: &[Vec<T>], b: &[T]) -> Result<Vec<T>, SolveError> {
    let n = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&n) {
        return Err(SolveError::Inconsistent);
    }
    if pivots.len() < n {
        return Err(SolveError::Underdetermined);
    }
    Ok((0..n).map(|i| aug[i][n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat, Rat};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn rank_agrees_between_methods() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(a.clone()), 2);
        assert_eq!(bareiss_rank(a), 2);
        let b = m(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5], &[1, 1, 1]]);
        assert_eq!(rank(b.clone()), 3);
        assert_eq!(bareiss_rank(b), 3);
    }

    #[test]
    fn solve_and_nullspace() {
        let a = m(&[&[3, 0], &[0, 4]]);
        let x = solve_unique(&a, &[int(1), int(1)]).unwrap();
        assert_eq!(x, vec![rat(1, 3), rat(1, 4)]);
        assert_eq!(
            solve_unique(&m(&[&[1, 1]]), &[int(1)]),
            Err(SolveError::Underdetermined)
        );
        assert_eq!(
            solve_unique(&m(&[&[1, 0], &[1, 0], &[0, 1]]), &[int(1), int(2), int(1)]),
            Err(SolveError::Inconsistent)
        );
        let ns = nullspace(&m(&[&[1, 1, 1]]), 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(v.iter().fold(int(0), |s, x| s + x).is_zero());
        }
    }
}
