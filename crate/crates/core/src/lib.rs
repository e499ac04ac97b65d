//! Multiple shift complementary sets (MSCS), Golay complementary sets and
//! type-II Z-complementary sets built from multivariable functions over
//! mixed prime alphabets.
//!
//! The crate covers three things:
//!
//! - constructions ([`theorem1_set`], [`theorem2_set`], [`theorem3_set`])
//!   that turn per-prime block parameters into phase sequences over `Z_lambda`;
//! - exact verification of the correlation claims, using cyclotomic
//!   divisibility rather than float thresholds, with a floating-point oracle
//!   running alongside ([`verify_mscs`], [`verify_gcs`], [`verify_type2_zcs`]);
//! - OFDM envelope analysis: IAPR curves, PMEPR and the `M * S` bound.
//!
//! Numerical code is generic over [`Real`] (`f32` or `f64`); the aliases at
//! the crate root fix the scalar to `f64` for everyday use.
//!
//! ```
//! use mscs_core::{example1_params, theorem1_set, verify_mscs, verify_type2_zcs};
//!
//! let set = theorem1_set(&example1_params()).unwrap();
//! assert_eq!((set.size(), set.length()), (3, 27));
//! assert!(verify_mscs(&set, 3).unwrap().passed);
//! assert!(verify_type2_zcs(&set, 24).unwrap().passed);
//! ```

pub mod acceptance;
pub mod construct;
pub mod correlation;
pub mod cyclotomic;
pub mod domain;
pub mod error;
pub mod function;
pub mod pmepr;
pub mod random;
pub mod scalar;
pub mod sequence;

pub use construct::{
    block_factor, example1_params, example2_params, extension_factor, kronecker_compose,
    theorem1_set, theorem2_set, theorem3_set, BlockParams, ConstructionParams, ExtensionParams,
    HeadFunction, HeadTerm, Theorem1Params, Theorem2Params, Theorem3Params,
};
pub use correlation::{
    aacf_set_sum, accf_exact, accf_float, kronecker_accf_identity_check, verify, verify_gcs,
    verify_mscs, verify_type2_zcs, CorrelationReport, Mode, ShiftResult, VerifyOptions,
};
pub use cyclotomic::{cyclotomic_polynomial, CyclotomicSum, ZeroTest};
pub use domain::{MixedDomain, MixedRadixIndex, PrimeBlock, DEFAULT_MAX_LENGTH};
pub use error::{Error, Result};
pub use function::{MultivariableFunction, Var};
pub use pmepr::{DEFAULT_OVERSAMPLING, EnvelopeGrid, PmeprReport};
pub use scalar::Real;
pub use sequence::{Claim, PhaseSequence, Provenance, SequenceSet};

pub use num_complex::Complex;

/// Double-precision complex sample.
pub type C64 = Complex<f64>;
/// Single-precision complex sample.
pub type C32 = Complex<f32>;
pub type Envelope = EnvelopeGrid<f64>;
pub type Envelope32 = EnvelopeGrid<f32>;
pub type Pmepr = PmeprReport<f64>;
pub type Pmepr32 = PmeprReport<f32>;

/// Exact-zero test of a cyclotomic sum.
pub fn is_zero(sum: &CyclotomicSum) -> bool {
    sum.is_zero()
}

/// `f64` envelope of a phase sequence on an `oversampling * L` grid.
pub fn envelope(x: &PhaseSequence, oversampling: usize) -> Result<Envelope> {
    pmepr::envelope(x, oversampling)
}

/// `f64` IAPR curve.
pub fn iapr_curve(x: &PhaseSequence, oversampling: usize) -> Result<Vec<f64>> {
    pmepr::iapr_curve(x, oversampling)
}

/// `f64` PMEPR of one sequence.
pub fn pmepr(x: &PhaseSequence, oversampling: usize) -> Result<f64> {
    pmepr::pmepr(x, oversampling)
}

/// `f64` PMEPR of a set against the `M * S` bound.
pub fn pmepr_set(set: &SequenceSet, shift: usize, oversampling: usize) -> Result<Pmepr> {
    pmepr::pmepr_set(set, shift, oversampling)
}

/// `f64` modulated family of a sequence.
pub fn modulated_family(x: &PhaseSequence, shift: usize) -> Result<Vec<Vec<C64>>> {
    pmepr::modulated_family(x, shift)
}

/// `f64` energy identity deviation.
pub fn energy_identity_check(set: &SequenceSet, shift: usize, oversampling: usize) -> Result<f64> {
    pmepr::energy_identity_check(set, shift, oversampling)
}
