//! Exact computation of singularity spectra and mixed spectra.

pub mod error;
pub mod classify;
pub mod hull;
pub mod io;
pub mod joins;
pub mod linalg;
pub mod newton_spectrum;
pub mod nonisolated;
pub mod poly;
pub mod polytope;
pub mod rat;
pub mod scalar;
pub mod schoen;
pub mod spectra;
pub mod weighted;

pub use error::{Error, Result};
pub use rat::Rat;
pub use scalar::{Cyclo, Fp};
pub use spectra::{MixedSpectrum, Spectrum};
