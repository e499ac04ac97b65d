//! OFDM envelope power: IAPR curves, PMEPR and the `M * S` bound for
//! multiple shift complementary sets.
//!
//! The complex envelope of a phase sequence `x` is sampled at normalized
//! times `df * t = j / (N_os * L)`, `j = 0 .. N_os * L`:
//!
//! ```text
//! P(j) = sum_i exp(2 pi i (x_i / lambda + i * j / (N_os * L)))
//! ```
//!
//! which is an unnormalized inverse DFT of the zero-padded lifted sequence.
//! The carrier offset only contributes a unimodular factor and is dropped.

use std::sync::Arc;

use num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{cast, Real};
use crate::sequence::{PhaseSequence, SequenceSet};

pub const DEFAULT_OVERSAMPLING: usize = 64;
/// Numerical slack allowed on the `M * S` bound.
pub const BOUND_SLACK: f64 = 1e-9;

/// Envelope samples on the uniform grid over one symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeGrid<T> {
    oversampling: usize,
    length: usize,
    samples: Vec<Complex<T>>,
}

impl<T: Real> EnvelopeGrid<T> {
    pub fn oversampling(&self) -> usize {
        self.oversampling
    }

    /// Length `L` of the sampled sequence.
    pub fn sequence_len(&self) -> usize {
        self.length
    }

    pub fn samples(&self) -> &[Complex<T>] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Normalized time `df * t` of sample `j`.
    pub fn point(&self, j: usize) -> T {
        cast::<T>(j as f64) / cast::<T>(self.samples.len() as f64)
    }

    /// `|P|^2 / L` at every sample.
    pub fn iapr(&self) -> Vec<T> {
        let l = cast::<T>(self.length as f64);
        self.samples.iter().map(|s| s.norm_sqr() / l).collect()
    }
}

/// Reusable inverse transform for one `(L, N_os)` pair.
struct EnvelopePlan<T: Real> {
    fft: Arc<dyn Fft<T>>,
    oversampling: usize,
    length: usize,
}

impl<T: Real> EnvelopePlan<T> {
    fn new(length: usize, oversampling: usize) -> Result<Self> {
        if oversampling == 0 {
            return Err(Error::param("oversampling factor must be at least 1"));
        }
        if length == 0 {
            return Err(Error::param("cannot sample the envelope of an empty sequence"));
        }
        let fft = FftPlanner::new().plan_fft_inverse(length * oversampling);
        Ok(EnvelopePlan {
            fft,
            oversampling,
            length,
        })
    }

    fn run(&self, lifted: &[Complex<T>]) -> EnvelopeGrid<T> {
        debug_assert_eq!(lifted.len(), self.length);
        let mut buf = vec![Complex::new(T::zero(), T::zero()); self.length * self.oversampling];
        buf[..self.length].copy_from_slice(lifted);
        self.fft.process(&mut buf);
        EnvelopeGrid {
            oversampling: self.oversampling,
            length: self.length,
            samples: buf,
        }
    }
}

/// Envelope of an arbitrary complex sequence.
pub fn envelope_complex<T: Real>(z: &[Complex<T>], oversampling: usize) -> Result<EnvelopeGrid<T>> {
    Ok(EnvelopePlan::new(z.len(), oversampling)?.run(z))
}

pub fn envelope<T: Real>(x: &PhaseSequence, oversampling: usize) -> Result<EnvelopeGrid<T>> {
    envelope_complex(&x.to_complex::<T>(), oversampling)
}

/// Instantaneous-to-average power ratio at each grid point.
pub fn iapr_curve<T: Real>(x: &PhaseSequence, oversampling: usize) -> Result<Vec<T>> {
    Ok(envelope::<T>(x, oversampling)?.iapr())
}

fn max_of<T: Real>(values: &[T]) -> T {
    values.iter().copied().fold(T::zero(), T::max)
}

/// Grid approximation of the peak-to-mean envelope power ratio.
pub fn pmepr<T: Real>(x: &PhaseSequence, oversampling: usize) -> Result<T> {
    Ok(max_of(&iapr_curve::<T>(x, oversampling)?))
}

/// IAPR curve of every member of a set.
pub fn iapr_curves<T: Real>(set: &SequenceSet, oversampling: usize) -> Result<Vec<Vec<T>>> {
    let plan = EnvelopePlan::<T>::new(set.length(), oversampling)?;
    Ok(set
        .sequences()
        .iter()
        .map(|s| plan.run(&s.to_complex()).iapr())
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PmeprReport<T> {
    pub per_sequence: Vec<T>,
    /// Maximum over the members.
    pub set_pmepr: T,
    pub shift: usize,
    /// `M * S`.
    pub bound: T,
    pub bound_satisfied: bool,
    pub oversampling: usize,
}

/// PMEPR of each member against the `M * S` bound. For a verified
/// `(M, L, S)`-MSCS an unsatisfied bound indicates a bug.
pub fn pmepr_set<T: Real>(set: &SequenceSet, shift: usize, oversampling: usize) -> Result<PmeprReport<T>> {
    if shift == 0 {
        return Err(Error::param("shift S must be at least 1"));
    }
    let per_sequence: Vec<T> = iapr_curves::<T>(set, oversampling)?
        .iter()
        .map(|c| max_of(c))
        .collect();
    let set_pmepr = max_of(&per_sequence);
    let bound = cast::<T>((set.size() * shift) as f64);
    Ok(PmeprReport {
        bound_satisfied: set_pmepr <= bound + cast(BOUND_SLACK),
        per_sequence,
        set_pmepr,
        shift,
        bound,
        oversampling,
    })
}

/// Member `u` multiplies entry `k` of the lifted sequence by `zeta^(k u)`,
/// `zeta = exp(2 pi i / S)`, for `u = 0 .. S`.
pub fn modulated_family<T: Real>(x: &PhaseSequence, shift: usize) -> Result<Vec<Vec<Complex<T>>>> {
    if shift == 0 {
        return Err(Error::param("shift S must be at least 1"));
    }
    let base = x.to_complex::<T>();
    let zeta: Vec<Complex<T>> = (0..shift)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / shift as f64;
            Complex::new(cast(theta.cos()), cast(theta.sin()))
        })
        .collect();
    Ok((0..shift)
        .map(|u| {
            base.iter()
                .enumerate()
                .map(|(k, &z)| z * zeta[(k * u) % shift])
                .collect()
        })
        .collect())
}

/// Maximum over the grid of `|sum_i sum_u |P_{a_i^u}|^2 - M L S| / (M L S)`.
///
/// For an `(M, L, S)`-MSCS the power summed over the modulated family is
/// constant in time, so the result is at rounding level.
pub fn energy_identity_check<T: Real>(set: &SequenceSet, shift: usize, oversampling: usize) -> Result<T> {
    let plan = EnvelopePlan::<T>::new(set.length(), oversampling)?;
    let mut total = vec![T::zero(); set.length() * oversampling];
    for seq in set.sequences() {
        for member in modulated_family::<T>(seq, shift)? {
            for (acc, s) in total.iter_mut().zip(plan.run(&member).samples()) {
                *acc = *acc + s.norm_sqr();
            }
        }
    }
    let target = cast::<T>((set.size() * set.length() * shift) as f64);
    Ok(total
        .into_iter()
        .map(|e| ((e - target) / target).abs())
        .fold(T::zero(), T::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{example1_params, example2_params, theorem1_set, theorem3_set};
    use proptest::prelude::*;

    /// Envelope by direct summation, independent of the FFT path.
    fn direct_envelope(x: &PhaseSequence, oversampling: usize) -> Vec<Complex<f64>> {
        let n = x.len() * oversampling;
        (0..n)
            .map(|j| {
                x.values()
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| {
                        let phase = v as f64 / x.modulus() as f64 + (i * j) as f64 / n as f64;
                        Complex::from_polar(1.0, std::f64::consts::TAU * phase)
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn coherent_peak() {
        let x = PhaseSequence::new(4, vec![0; 10]).unwrap();
        let g = envelope::<f64>(&x, 8).unwrap();
        assert_eq!(g.len(), 80);
        assert!((g.samples()[0] - Complex::new(10.0, 0.0)).norm() < 1e-12);
        assert!((iapr_curve::<f64>(&x, 8).unwrap()[0] - 10.0).abs() < 1e-12);
        assert!((pmepr::<f64>(&x, 8).unwrap() - 10.0).abs() < 1e-12);
    }

    #[test]
    fn single_entry() {
        let x = PhaseSequence::new(3, vec![2]).unwrap();
        let g = envelope::<f64>(&x, 16).unwrap();
        assert!(g.samples().iter().all(|s| (s.norm() - 1.0).abs() < 1e-12));
        assert!((pmepr::<f64>(&x, 16).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn grid_points() {
        let x = PhaseSequence::new(2, vec![0, 1, 1]).unwrap();
        let g = envelope::<f64>(&x, 4).unwrap();
        assert_eq!(g.point(0), 0.0);
        assert!((g.point(6) - 0.5).abs() < 1e-15);
        assert!(g.point(g.len() - 1) < 1.0);
    }

    #[test]
    fn rejects_zero_oversampling() {
        let x = PhaseSequence::new(2, vec![0, 1]).unwrap();
        assert!(envelope::<f64>(&x, 0).is_err());
        let set = SequenceSet::new(vec![x.clone()]).unwrap();
        assert!(pmepr_set::<f64>(&set, 0, 4).is_err());
        assert!(modulated_family::<f64>(&x, 0).is_err());
    }

    #[test]
    fn modulated_family_members() {
        let x = PhaseSequence::new(5, vec![1, 4, 0]).unwrap();
        let fam = modulated_family::<f64>(&x, 1).unwrap();
        assert_eq!(fam, vec![x.to_complex::<f64>()]);
        let fam = modulated_family::<f64>(&x, 3).unwrap();
        assert_eq!(fam.len(), 3);
        assert_eq!(fam[0], x.to_complex::<f64>());

        let y = PhaseSequence::new(2, vec![0, 0]).unwrap();
        let fam = modulated_family::<f64>(&y, 2).unwrap();
        assert!((fam[1][0] - Complex::new(1.0, 0.0)).norm() < 1e-12);
        assert!((fam[1][1] - Complex::new(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn example2_pmepr() {
        let set = theorem3_set(&example2_params()).unwrap();
        let r = pmepr_set::<f64>(&set, 2, 64).unwrap();
        assert!((r.set_pmepr - 5.9465).abs() < 0.05, "{}", r.set_pmepr);
        assert!(r.bound_satisfied);
        assert_eq!(r.bound, 6.0);
        let max = r.per_sequence.iter().copied().fold(0.0, f64::max);
        assert_eq!(max, r.set_pmepr);
    }

    #[test]
    fn example1_pmepr_regression() {
        let set = theorem1_set(&example1_params()).unwrap();
        let r = pmepr_set::<f64>(&set, 3, 64).unwrap();
        assert!(r.bound_satisfied);
        assert_eq!(r.bound, 9.0);
        // frozen from the direct-summation envelope at the same grid
        let direct: f64 = set
            .sequences()
            .iter()
            .flat_map(|s| direct_envelope(s, 64))
            .map(|p| p.norm_sqr() / 27.0)
            .fold(0.0, f64::max);
        assert!((r.set_pmepr - direct).abs() < 1e-9);
    }

    #[test]
    fn energy_identity_examples() {
        let e1 = theorem1_set(&example1_params()).unwrap();
        assert!(energy_identity_check::<f64>(&e1, 3, 64).unwrap() < 1e-9);
        let e2 = theorem3_set(&example2_params()).unwrap();
        assert!(energy_identity_check::<f64>(&e2, 2, 64).unwrap() < 1e-9);
    }

    #[test]
    fn energy_identity_negative_control() {
        let e1 = theorem1_set(&example1_params()).unwrap();
        let mut seqs = e1.clone().into_sequences();
        let mut v = seqs[1].values().to_vec();
        v[4] = (v[4] + 3) % 6;
        seqs[1] = PhaseSequence::new(6, v).unwrap();
        let bad = SequenceSet::new(seqs).unwrap();
        assert!(energy_identity_check::<f64>(&bad, 3, 64).unwrap() > 1e-6);
    }

    #[test]
    fn single_precision_path() {
        let set = theorem3_set(&example2_params()).unwrap();
        let r = pmepr_set::<f32>(&set, 2, 64).unwrap();
        assert!((r.set_pmepr - 5.9465).abs() < 0.05);
        assert!(energy_identity_check::<f32>(&set, 2, 16).unwrap() < 1e-4);
    }

    proptest! {
        #[test]
        fn fft_matches_direct_sum(
            modulus in 2u32..=12,
            raw in prop::collection::vec(0i64..100, 1..40),
            oversampling in 1usize..6,
        ) {
            let x = PhaseSequence::from_ints(modulus, &raw).unwrap();
            let g = envelope::<f64>(&x, oversampling).unwrap();
            for (a, b) in g.samples().iter().zip(direct_envelope(&x, oversampling)) {
                prop_assert!((a - b).norm() < 1e-9);
            }
        }

        #[test]
        fn parseval_mean_power(
            modulus in 2u32..=12,
            raw in prop::collection::vec(0i64..100, 1..80),
            oversampling in 1usize..9,
        ) {
            let x = PhaseSequence::from_ints(modulus, &raw).unwrap();
            let l = x.len() as f64;
            let g = envelope::<f64>(&x, oversampling).unwrap();
            let mean = g.samples().iter().map(|s| s.norm_sqr()).sum::<f64>() / g.len() as f64;
            prop_assert!(((mean - l) / l).abs() < 1e-9);
            let iapr = g.iapr();
            prop_assert!(iapr.iter().all(|&v| v >= 0.0));
            let mean_iapr = iapr.iter().sum::<f64>() / iapr.len() as f64;
            prop_assert!((mean_iapr - 1.0).abs() < 1e-9);
        }

        #[test]
        fn doubling_grid_never_lowers_pmepr(
            modulus in 2u32..=12,
            raw in prop::collection::vec(0i64..100, 1..60),
            oversampling in 1usize..16,
        ) {
            let x = PhaseSequence::from_ints(modulus, &raw).unwrap();
            let coarse = pmepr::<f64>(&x, oversampling).unwrap();
            let fine = pmepr::<f64>(&x, 2 * oversampling).unwrap();
            prop_assert!(fine >= coarse - 1e-9);
        }
    }
}
