//! Mixed prime-power index spaces `Z_{p_1}^{m_1} x ... x Z_{p_k}^{m_k}`.
//!
//! A point of the space is a [`MixedRadixIndex`]: one base-`p` digit vector
//! per block, least significant digit first. Flattening to an integer treats
//! block 0 as the least significant block, so for two blocks of lengths
//! `L_0` and `L_1` the integer is `i_0 + L_0 * i_1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on sequence length accepted by materialization.
pub const DEFAULT_MAX_LENGTH: usize = 1_000_000;

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// One `Z_p^m` factor of a [`MixedDomain`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeBlock {
    pub prime: u32,
    pub vars: u32,
}

impl PrimeBlock {
    /// Number of points in this block, `prime^vars`, if it fits in a `u128`.
    fn size(&self) -> Option<u128> {
        (self.prime as u128).checked_pow(self.vars)
    }
}

/// The index space of a multivariable function.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MixedDomain {
    blocks: Vec<PrimeBlock>,
    block_sizes: Vec<usize>,
    len: usize,
}

impl MixedDomain {
    /// Builds a domain from `(prime, vars)` pairs using [`DEFAULT_MAX_LENGTH`].
    pub fn new(blocks: &[(u32, u32)]) -> Result<Self> {
        Self::with_max_length(blocks, DEFAULT_MAX_LENGTH)
    }

    pub fn with_max_length(blocks: &[(u32, u32)], max_length: usize) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::param("a domain needs at least one prime block"));
        }
        let mut total: u128 = 1;
        let mut block_sizes = Vec::with_capacity(blocks.len());
        let mut out = Vec::with_capacity(blocks.len());
        for &(prime, vars) in blocks {
            if !is_prime(prime) {
                return Err(Error::param(format!("{prime} is not prime")));
            }
            if vars == 0 {
                return Err(Error::param("every block needs at least one variable"));
            }
            let block = PrimeBlock { prime, vars };
            let size = block.size().ok_or(Error::Capacity {
                length: u128::MAX,
                max: max_length,
            })?;
            total = total.checked_mul(size).ok_or(Error::Capacity {
                length: u128::MAX,
                max: max_length,
            })?;
            if total > max_length as u128 {
                return Err(Error::Capacity {
                    length: total,
                    max: max_length,
                });
            }
            block_sizes.push(size as usize);
            out.push(block);
        }
        Ok(MixedDomain {
            blocks: out,
            block_sizes,
            len: total as usize,
        })
    }

    pub fn blocks(&self) -> &[PrimeBlock] {
        &self.blocks
    }

    /// Number of points, `prod p^m`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Length of block `b`, `p_b^{m_b}`.
    pub fn block_len(&self, b: usize) -> usize {
        self.block_sizes[b]
    }

    /// Product of the lengths of all blocks before `b`.
    pub fn block_stride(&self, b: usize) -> usize {
        self.block_sizes[..b].iter().product()
    }

    /// Flattens a digit tuple to its integer position.
    pub fn encode(&self, idx: &MixedRadixIndex) -> Result<usize> {
        self.check(idx)?;
        let mut x = 0usize;
        let mut stride = 1usize;
        for (block, digits) in self.blocks.iter().zip(&idx.digits) {
            let mut place = 1usize;
            let mut within = 0usize;
            for &d in digits {
                within += d as usize * place;
                place *= block.prime as usize;
            }
            x += within * stride;
            stride *= place;
        }
        Ok(x)
    }

    /// Splits an integer position in `[0, len)` into its digits.
    pub fn decode(&self, x: usize) -> Result<MixedRadixIndex> {
        if x >= self.len {
            return Err(Error::domain(format!(
                "index {x} out of range for length {}",
                self.len
            )));
        }
        let mut rest = x;
        let digits = self
            .blocks
            .iter()
            .map(|block| {
                (0..block.vars)
                    .map(|_| {
                        let d = (rest % block.prime as usize) as u32;
                        rest /= block.prime as usize;
                        d
                    })
                    .collect()
            })
            .collect();
        Ok(MixedRadixIndex { digits })
    }

    /// Checks that `idx` has the right shape and digit ranges for this domain.
    pub fn check(&self, idx: &MixedRadixIndex) -> Result<()> {
        if idx.digits.len() != self.blocks.len() {
            return Err(Error::domain(format!(
                "index has {} blocks, domain has {}",
                idx.digits.len(),
                self.blocks.len()
            )));
        }
        for (b, (block, digits)) in self.blocks.iter().zip(&idx.digits).enumerate() {
            if digits.len() != block.vars as usize {
                return Err(Error::domain(format!(
                    "block {b} has {} digits, expected {}",
                    digits.len(),
                    block.vars
                )));
            }
            if let Some(&d) = digits.iter().find(|&&d| d >= block.prime) {
                return Err(Error::domain(format!(
                    "digit {d} out of range for base {} in block {b}",
                    block.prime
                )));
            }
        }
        Ok(())
    }
}

/// A point of a [`MixedDomain`]: per block, digits least significant first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MixedRadixIndex {
    pub digits: Vec<Vec<u32>>,
}

impl MixedRadixIndex {
    pub fn new(digits: Vec<Vec<u32>>) -> Self {
        MixedRadixIndex { digits }
    }

    pub fn zero(domain: &MixedDomain) -> Self {
        MixedRadixIndex {
            digits: domain
                .blocks()
                .iter()
                .map(|b| vec![0; b.vars as usize])
                .collect(),
        }
    }

    pub fn digit(&self, var: crate::function::Var) -> u32 {
        self.digits[var.block][var.digit]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u32> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn encode_single_block() {
        let d = MixedDomain::new(&[(3, 3)]).unwrap();
        assert_eq!(d.encode(&MixedRadixIndex::new(vec![vec![2, 1, 0]])).unwrap(), 5);
        assert_eq!(d.encode(&MixedRadixIndex::zero(&d)).unwrap(), 0);
    }

    #[test]
    fn encode_two_blocks() {
        let d = MixedDomain::new(&[(3, 3), (2, 1)]).unwrap();
        let idx = MixedRadixIndex::new(vec![vec![0, 1, 0], vec![1]]);
        assert_eq!(d.encode(&idx).unwrap(), 30);
    }

    #[test]
    fn decode_examples() {
        let d = MixedDomain::new(&[(3, 3)]).unwrap();
        assert_eq!(d.decode(5).unwrap().digits, vec![vec![2, 1, 0]]);
        assert_eq!(d.decode(0).unwrap().digits, vec![vec![0, 0, 0]]);
        let d = MixedDomain::new(&[(3, 3), (2, 1)]).unwrap();
        assert_eq!(d.decode(53).unwrap().digits, vec![vec![2, 2, 2], vec![1]]);
    }

    #[test]
    fn out_of_range() {
        let d = MixedDomain::new(&[(3, 2)]).unwrap();
        assert!(matches!(d.decode(9), Err(Error::Domain(_))));
        let bad = MixedRadixIndex::new(vec![vec![3, 0]]);
        assert!(matches!(d.encode(&bad), Err(Error::Domain(_))));
        let short = MixedRadixIndex::new(vec![vec![0]]);
        assert!(matches!(d.encode(&short), Err(Error::Domain(_))));
    }

    #[test]
    fn rejects_bad_blocks() {
        assert!(matches!(MixedDomain::new(&[]), Err(Error::Parameter(_))));
        assert!(matches!(MixedDomain::new(&[(4, 2)]), Err(Error::Parameter(_))));
        assert!(matches!(MixedDomain::new(&[(3, 0)]), Err(Error::Parameter(_))));
        assert!(matches!(
            MixedDomain::with_max_length(&[(2, 11)], 1024),
            Err(Error::Capacity { length: 2048, max: 1024 })
        ));
        assert!(matches!(MixedDomain::new(&[(2, 200)]), Err(Error::Capacity { .. })));
    }

    #[test]
    fn round_trip_exhaustive() {
        let shapes: &[&[(u32, u32)]] = &[
            &[(2, 1)],
            &[(2, 5)],
            &[(3, 4)],
            &[(5, 2), (2, 3)],
            &[(2, 2), (3, 2), (5, 2)],
            &[(7, 2), (3, 1), (2, 4)],
            &[(2, 13)],
        ];
        for blocks in shapes {
            let d = MixedDomain::new(blocks).unwrap();
            assert!(d.len() <= 10_000);
            for x in 0..d.len() {
                let idx = d.decode(x).unwrap();
                assert_eq!(d.encode(&idx).unwrap(), x);
            }
        }
    }

    #[test]
    fn strides() {
        let d = MixedDomain::new(&[(3, 3), (2, 1), (5, 1)]).unwrap();
        assert_eq!(d.block_stride(0), 1);
        assert_eq!(d.block_stride(1), 27);
        assert_eq!(d.block_stride(2), 54);
        assert_eq!(d.len(), 270);
    }
}
