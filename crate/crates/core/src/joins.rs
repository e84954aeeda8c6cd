//! Sebastiani–Thom calculus on mixed spectra: joins `f ⊕ g`, generalised
//! suspensions `f + z^r`, and Tate twists.

use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::spectra::MixedSpectrum;

/// Mixed spectrum of `f(x) + g(y)` in disjoint variables.
pub fn join(a: &MixedSpectrum, b: &MixedSpectrum) -> Result<MixedSpectrum> {
    for (s, name) in [(a, "left"), (b, "right")] {
        if !s.is_nonnegative() {
            return Err(Error::NegativeMultiplicity(format!("{name} operand {s}")));
        }
    }
    Ok(a.convolve(b))
}

/// `Σ_{i=1}^{r−1} [(i/r, 0)]`, the mixed spectrum of `z^r` in one variable.
pub fn one_variable(r: i64) -> MixedSpectrum {
    MixedSpectrum::from_entries((1..r).map(|i| (Rat::new(i.into(), r.into()), 0, 1)))
}

/// Mixed spectrum of `f + z^r` with `z` a new variable.
pub fn suspend(s: &MixedSpectrum, r: i64) -> Result<MixedSpectrum> {
    if r < 2 {
        return Err(Error::InvalidInput(format!("suspension order {r} < 2")));
    }
    join(s, &one_variable(r))
}

/// `(α, w) ↦ (α + k, w + 2k)`.
pub fn tate_shift(s: &MixedSpectrum, k: i64) -> MixedSpectrum {
    s.shift(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use crate::spectra::{a1_point, node2};
    use crate::weighted::{qh_spectrum, WeightVector};

    fn e7() -> MixedSpectrum {
        MixedSpectrum::parse_bracket("[(1,3)]+2[(5/4,2)]+3[(3/2,2)]+2[(7/4,2)]+[(2,3)]").unwrap()
    }

    #[test]
    fn node_from_points() {
        assert_eq!(join(&a1_point(), &a1_point()).unwrap(), node2());
        assert_eq!(suspend(&a1_point(), 2).unwrap(), node2());
    }

    #[test]
    fn example_join() {
        let ex = MixedSpectrum::parse_bracket(
            "[(1/2,0)]+2[(2/3,1)]+2[(5/6,1)]+3[(1,2)]+2[(7/6,1)]+2[(4/3,1)]+[(3/2,2)]",
        )
        .unwrap();
        let want = MixedSpectrum::parse_bracket(
            "[(3/2,2)]+2[(5/3,3)]+2[(11/6,3)]+3[(2,4)]+[(5/2,4)]+2[(13/6,3)]+2[(7/3,3)]",
        )
        .unwrap();
        assert_eq!(join(&ex, &node2()).unwrap(), want);
    }

    #[test]
    fn join_matches_weights() {
        let w = WeightVector::new(vec![rat(1, 2), rat(1, 4), rat(1, 4), rat(1, 2)]).unwrap();
        assert_eq!(join(&e7(), &a1_point()).unwrap(), qh_spectrum(&w).unwrap());
    }

    #[test]
    fn suspension_laws() {
        let s = e7();
        for r in 2..7 {
            let t = suspend(&s, r).unwrap();
            assert_eq!(t.spectral_min().unwrap(), s.spectral_min().unwrap() + rat(1, r));
        }
        let twice = suspend(&suspend(&s, 2).unwrap(), 2).unwrap();
        assert_eq!(twice, tate_shift(&s, 1));
        assert_eq!(tate_shift(&s, 0), s);
        assert_eq!(tate_shift(&a1_point(), 1), MixedSpectrum::single(rat(3, 2), 2, 1));
        assert!(suspend(&s, 1).is_err());
        assert!(join(&s.scale(-1), &s).is_err());
    }
}
