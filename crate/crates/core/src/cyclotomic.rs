//! Exact arithmetic on sums of `lambda`-th roots of unity.
//!
//! A [`CyclotomicSum`] stores how many times each power of
//! `w = exp(2 pi i / lambda)` occurs. Such a sum is exactly zero iff the
//! polynomial `sum counts[j] x^j` is divisible by the cyclotomic polynomial
//! `Phi_lambda`.

use std::collections::BTreeMap;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{unit_roots, Real};

/// `sum_j counts[j] * w^j` with `w` a primitive `modulus`-th root of unity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicSum {
    modulus: u32,
    counts: Vec<i64>,
}

impl CyclotomicSum {
    pub fn zero(modulus: u32) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        CyclotomicSum {
            modulus,
            counts: vec![0; modulus as usize],
        }
    }

    /// Folds `counts` onto exponents modulo `modulus`.
    pub fn from_counts(modulus: u32, counts: &[i64]) -> Self {
        let mut out = Self::zero(modulus);
        for (j, &c) in counts.iter().enumerate() {
            out.counts[j % modulus as usize] += c;
        }
        out
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn counts(&self) -> &[i64] {
        &self.counts
    }

    /// Adds `times * w^exponent`; the exponent is reduced.
    pub fn add_power(&mut self, exponent: i64, times: i64) {
        let j = exponent.rem_euclid(self.modulus as i64) as usize;
        self.counts[j] += times;
    }

    /// Sum of the raw counts; equals the value when every term is `w^0`.
    pub fn total(&self) -> i64 {
        self.counts.iter().sum()
    }

    /// Complex conjugate: `w^j -> w^(-j)`.
    pub fn conj(&self) -> Self {
        let n = self.modulus as usize;
        let mut out = Self::zero(self.modulus);
        for (j, &c) in self.counts.iter().enumerate() {
            out.counts[(n - j) % n] += c;
        }
        out
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::param(format!(
                "cyclotomic modulus mismatch ({} vs {})",
                self.modulus, other.modulus
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let counts = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CyclotomicSum {
            modulus: self.modulus,
            counts,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let counts = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CyclotomicSum {
            modulus: self.modulus,
            counts,
        })
    }

    /// Product: cyclic convolution of the count vectors.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let n = self.modulus as usize;
        let mut out = Self::zero(self.modulus);
        for (i, &a) in self.counts.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (j, &b) in other.counts.iter().enumerate().filter(|(_, &b)| b != 0) {
                out.counts[(i + j) % n] += a * b;
            }
        }
        Ok(out)
    }

    /// Numerical value.
    pub fn value<T: Real>(&self) -> Complex<T> {
        let roots = unit_roots::<T>(self.modulus);
        self.counts
            .iter()
            .zip(&roots)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (&c, &w)| {
                acc + w * T::from_i64(c).expect("count fits the scalar type")
            })
    }

    /// Exact test for the value being zero.
    pub fn is_zero(&self) -> bool {
        ZeroTest::new(self.modulus).is_zero(self)
    }
}

/// Reusable exact zero test for one modulus (holds `Phi_modulus`).
#[derive(Debug, Clone)]
pub struct ZeroTest {
    modulus: u32,
    phi: Vec<i64>,
}

impl ZeroTest {
    pub fn new(modulus: u32) -> Self {
        ZeroTest {
            modulus,
            phi: cyclotomic_polynomial(modulus),
        }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// True iff `Phi_modulus` divides the count polynomial.
    pub fn is_zero(&self, sum: &CyclotomicSum) -> bool {
        assert_eq!(sum.modulus, self.modulus, "zero test modulus mismatch");
        if sum.counts.iter().all(|&c| c == 0) {
            return true;
        }
        let num: Vec<i128> = sum.counts.iter().map(|&c| c as i128).collect();
        let den: Vec<i128> = self.phi.iter().map(|&c| c as i128).collect();
        let (_, rem) = divide_monic(&num, &den);
        rem.iter().all(|&c| c == 0)
    }
}

/// Polynomial long division by a monic divisor. Coefficients are stored
/// lowest degree first. Returns `(quotient, remainder)`.
fn divide_monic(num: &[i128], den: &[i128]) -> (Vec<i128>, Vec<i128>) {
    let d = den.len() - 1;
    debug_assert_eq!(den[d], 1, "divisor must be monic");
    let mut rem = num.to_vec();
    if rem.len() <= d {
        return (Vec::new(), rem);
    }
    let mut quot = vec![0i128; rem.len() - d];
    for k in (d..rem.len()).rev() {
        let c = rem[k];
        if c == 0 {
            continue;
        }
        quot[k - d] = c;
        for (i, &b) in den.iter().enumerate() {
            rem[k - d + i] = rem[k - d + i]
                .checked_sub(c.checked_mul(b).expect("coefficient overflow"))
                .expect("coefficient overflow");
        }
    }
    rem.truncate(d);
    (quot, rem)
}

/// Coefficients of the cyclotomic polynomial `Phi_n`, lowest degree first.
///
/// Computed as `(x^n - 1) / prod_{d | n, d < n} Phi_d` by exact division.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut memo = BTreeMap::new();
    cyclotomic_memo(n, &mut memo)
        .into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient fits i64"))
        .collect()
}

fn cyclotomic_memo(n: u32, memo: &mut BTreeMap<u32, Vec<i128>>) -> Vec<i128> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut poly = vec![0i128; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in (1..n).rev().filter(|d| n.is_multiple_of(*d)) {
        let phi_d = cyclotomic_memo(d, memo);
        let (q, r) = divide_monic(&poly, &phi_d);
        debug_assert!(r.iter().all(|&c| c == 0));
        poly = q;
    }
    memo.insert(n, poly.clone());
    poly
}

#[cfg(test)]
fn euler_phi(mut n: u32) -> u32 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn phi_105_has_a_two() {
        // smallest index with a coefficient outside {-1, 0, 1}
        let p = cyclotomic_polynomial(105);
        assert_eq!(p.iter().copied().min(), Some(-2));
        assert!((1..105).all(|n| cyclotomic_polynomial(n).iter().all(|c| c.abs() <= 1)));
    }

    #[test]
    fn degree_is_totient() {
        for n in 1..=210 {
            let p = cyclotomic_polynomial(n);
            assert_eq!(p.len() - 1, euler_phi(n) as usize, "n = {n}");
            assert_eq!(*p.last().unwrap(), 1);
        }
    }

    #[test]
    fn handles_highly_composite_moduli() {
        for n in [360u32, 720, 840, 1000] {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, euler_phi(n) as usize);
        }
    }

    #[test]
    fn zero_examples() {
        assert!(CyclotomicSum::from_counts(6, &[1, 0, 1, 0, 1, 0]).is_zero());
        assert!(CyclotomicSum::from_counts(6, &[0, 1, 0, 0, 1, 0]).is_zero());
        for n in 1..=24u32 {
            for j in 0..n as usize {
                let mut s = CyclotomicSum::zero(n);
                s.add_power(j as i64, 3);
                assert!(!s.is_zero());
            }
        }
        assert!(CyclotomicSum::zero(7).is_zero());
        assert!(CyclotomicSum::from_counts(5, &[2, 2, 2, 2, 2]).is_zero());
        assert!(!CyclotomicSum::from_counts(5, &[2, 2, 2, 2, 1]).is_zero());
    }

    #[test]
    fn conj_and_mul() {
        let a = CyclotomicSum::from_counts(4, &[0, 1, 0, 0]); // i
        assert_eq!(a.conj().counts(), &[0, 0, 0, 1]);
        let sq = a.mul(&a).unwrap(); // -1
        assert_eq!(sq.counts(), &[0, 0, 1, 0]);
        assert!(sq.add(&CyclotomicSum::from_counts(4, &[1])).unwrap().is_zero());
        assert!(a.mul(&CyclotomicSum::zero(6)).is_err());
    }

    proptest! {
        #[test]
        fn exact_zero_agrees_with_float(
            modulus in 1u32..=60,
            raw in prop::collection::vec(-4i64..=4, 1..120),
        ) {
            let s = CyclotomicSum::from_counts(modulus, &raw);
            let v = s.value::<f64>().norm();
            if s.is_zero() {
                prop_assert!(v < 1e-9, "exact zero but |value| = {}", v);
            } else {
                prop_assert!(v > 1e-6, "exact nonzero but |value| = {}", v);
            }
        }

        #[test]
        fn product_matches_float(
            modulus in 1u32..=24,
            a in prop::collection::vec(-5i64..=5, 1..24),
            b in prop::collection::vec(-5i64..=5, 1..24),
        ) {
            let x = CyclotomicSum::from_counts(modulus, &a);
            let y = CyclotomicSum::from_counts(modulus, &b);
            let prod = x.mul(&y).unwrap().value::<f64>();
            let want = x.value::<f64>() * y.value::<f64>();
            prop_assert!((prod - want).norm() < 1e-9);
        }

        #[test]
        fn zero_sums_of_full_orbits(modulus in 2u32..=60, d_pick in 0usize..16, shift in 0i64..60, times in 1i64..5) {
            // the d-th roots of unity rotated by any power sum to zero when d > 1
            let divisors: Vec<u32> = (2..=modulus).filter(|d| modulus % d == 0).collect();
            let d = divisors[d_pick % divisors.len()];
            let mut s = CyclotomicSum::zero(modulus);
            for k in 0..d as i64 {
                s.add_power(shift + k * (modulus / d) as i64, times);
            }
            prop_assert!(s.is_zero());
        }
    }
}
