//! Phase sequences over `Z_lambda` and ordered sets of them.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::construct::ConstructionParams;
use crate::error::{Error, Result};
use crate::scalar::{unit_roots, Real};

/// A length-`L` vector over `Z_lambda`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhaseSequence {
    modulus: u32,
    values: Vec<u32>,
}

impl PhaseSequence {
    /// Fails unless `modulus >= 2` and every value lies in `[0, modulus)`.
    pub fn new(modulus: u32, values: Vec<u32>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::param("modulus must be at least 2"));
        }
        if let Some(v) = values.iter().find(|&&v| v >= modulus) {
            return Err(Error::domain(format!(
                "phase {v} out of range for modulus {modulus}"
            )));
        }
        Ok(PhaseSequence { modulus, values })
    }

    /// Reduces arbitrary integers modulo `modulus`.
    pub fn from_ints(modulus: u32, values: &[i64]) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::param("modulus must be at least 2"));
        }
        let values = values
            .iter()
            .map(|&v| v.rem_euclid(modulus as i64) as u32)
            .collect();
        Ok(PhaseSequence { modulus, values })
    }

    pub(crate) fn from_reduced(modulus: u32, values: Vec<u32>) -> Self {
        debug_assert!(values.iter().all(|&v| v < modulus));
        PhaseSequence { modulus, values }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Lifts each phase `x` to `exp(2 pi i x / lambda)`.
    pub fn to_complex<T: Real>(&self) -> Vec<Complex<T>> {
        let roots = unit_roots::<T>(self.modulus);
        self.values.iter().map(|&v| roots[v as usize]).collect()
    }
}

/// A correlation property a set is claimed (or checked) to have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Claim {
    /// Set AACF sum vanishes at every nonzero shift.
    Gcs,
    /// Set AACF sum vanishes at every nonzero multiple of `shift`.
    Mscs { shift: usize },
    /// Type-II Z-complementary: vanishes for `L - zone < |tau| < L`.
    #[serde(rename = "zcs")]
    Type2Zcs { zone: usize },
}

impl Claim {
    /// The `S` of an MSCS claim; a GCS is an MSCS with `S = 1`.
    pub fn shift(&self) -> Option<usize> {
        match *self {
            Claim::Gcs => Some(1),
            Claim::Mscs { shift } => Some(shift),
            Claim::Type2Zcs { .. } => None,
        }
    }
}

impl std::fmt::Display for Claim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Claim::Gcs => write!(f, "GCS"),
            Claim::Mscs { shift } => write!(f, "MSCS(S={shift})"),
            Claim::Type2Zcs { zone } => write!(f, "type-II ZCS(Z={zone})"),
        }
    }
}

/// Where a set came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "lowercase")]
pub enum Provenance {
    External,
    Construction { params: ConstructionParams },
}

/// `M` phase sequences sharing modulus and length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceSet {
    modulus: u32,
    length: usize,
    sequences: Vec<PhaseSequence>,
    claims: Vec<Claim>,
    provenance: Provenance,
}

impl SequenceSet {
    /// An externally supplied set with no claims.
    pub fn new(sequences: Vec<PhaseSequence>) -> Result<Self> {
        Self::with_metadata(sequences, Vec::new(), Provenance::External)
    }

    pub fn with_metadata(
        sequences: Vec<PhaseSequence>,
        claims: Vec<Claim>,
        provenance: Provenance,
    ) -> Result<Self> {
        let first = sequences
            .first()
            .ok_or_else(|| Error::param("a set needs at least one sequence"))?;
        let (modulus, length) = (first.modulus(), first.len());
        if sequences
            .iter()
            .any(|s| s.modulus() != modulus || s.len() != length)
        {
            return Err(Error::param(
                "all sequences in a set must share modulus and length",
            ));
        }
        Ok(SequenceSet {
            modulus,
            length,
            sequences,
            claims,
            provenance,
        })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Sequence length `L`.
    pub fn length(&self) -> usize {
        self.length
    }

    /// Set size `M`.
    pub fn size(&self) -> usize {
        self.sequences.len()
    }

    pub fn sequences(&self) -> &[PhaseSequence] {
        &self.sequences
    }

    pub fn claims(&self) -> &[Claim] {
        &self.claims
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// The smallest MSCS shift among the claims, if any.
    pub fn claimed_shift(&self) -> Option<usize> {
        self.claims.iter().filter_map(Claim::shift).min()
    }

    pub fn into_sequences(self) -> Vec<PhaseSequence> {
        self.sequences
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex<f64>, re: f64, im: f64) -> bool {
        (a.re - re).abs() < 1e-12 && (a.im - im).abs() < 1e-12
    }

    #[test]
    fn lifts_to_unit_circle() {
        let z = PhaseSequence::new(5, vec![0; 4]).unwrap().to_complex::<f64>();
        assert!(z.iter().all(|&c| close(c, 1.0, 0.0)));

        let z = PhaseSequence::new(2, vec![0, 1]).unwrap().to_complex::<f64>();
        assert!(close(z[0], 1.0, 0.0) && close(z[1], -1.0, 0.0));

        let z = PhaseSequence::new(4, vec![0, 1, 2, 3])
            .unwrap()
            .to_complex::<f64>();
        assert!(close(z[0], 1.0, 0.0));
        assert!(close(z[1], 0.0, 1.0));
        assert!(close(z[2], -1.0, 0.0));
        assert!(close(z[3], 0.0, -1.0));
    }

    #[test]
    fn unit_modulus_everywhere() {
        for modulus in 2..=60u32 {
            let s = PhaseSequence::new(modulus, (0..modulus).collect()).unwrap();
            let z = s.to_complex::<f64>();
            assert_eq!(z.len(), s.len());
            assert!(z.iter().all(|c| (c.norm() - 1.0).abs() < 1e-12));
            let z32 = s.to_complex::<f32>();
            assert!(z32.iter().all(|c| (c.norm() - 1.0).abs() < 1e-6));
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(PhaseSequence::new(4, vec![0, 4]).is_err());
        assert!(PhaseSequence::new(1, vec![0]).is_err());
        let s = PhaseSequence::from_ints(6, &[-1, 7, 12]).unwrap();
        assert_eq!(s.values(), &[5, 1, 0]);
    }

    #[test]
    fn set_requires_uniform_shape() {
        let a = PhaseSequence::new(4, vec![0, 1]).unwrap();
        let b = PhaseSequence::new(4, vec![0, 1, 2]).unwrap();
        let c = PhaseSequence::new(6, vec![0, 1]).unwrap();
        assert!(SequenceSet::new(vec![a.clone(), b]).is_err());
        assert!(SequenceSet::new(vec![a.clone(), c]).is_err());
        assert!(SequenceSet::new(vec![]).is_err());
        let set = SequenceSet::new(vec![a.clone(), a]).unwrap();
        assert_eq!((set.size(), set.length(), set.modulus()), (2, 2, 4));
    }

    #[test]
    fn claimed_shift_prefers_smallest() {
        let a = PhaseSequence::new(2, vec![0, 0, 0, 1]).unwrap();
        let set = SequenceSet::with_metadata(
            vec![a],
            vec![Claim::Type2Zcs { zone: 3 }, Claim::Mscs { shift: 2 }, Claim::Gcs],
            Provenance::External,
        )
        .unwrap();
        assert_eq!(set.claimed_shift(), Some(1));
    }
}
