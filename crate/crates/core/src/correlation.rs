//! Aperiodic correlations and verification of complementary-set claims.
//!
//! Two independent evaluation paths are kept side by side: exact
//! [`CyclotomicSum`] counting, and complex floating-point accumulation over
//! the lifted sequences. Verification decides with the exact path and uses
//! the float path as an oracle; any disagreement is recorded in the report.

use num_complex::Complex;
use serde::Serialize;

use crate::construct::kronecker_compose;
use crate::cyclotomic::{CyclotomicSum, ZeroTest};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::sequence::{Claim, PhaseSequence, SequenceSet};

/// Largest modulus verified with exact arithmetic.
pub const EXACT_MODULUS_LIMIT: u32 = 1000;
/// A float sum counts as zero below this magnitude.
pub const ZERO_TOLERANCE: f64 = 1e-9;
/// An exactly nonzero sum must have at least this float magnitude.
pub const NONZERO_FLOOR: f64 = 1e-6;

fn check_pair(a: &PhaseSequence, b: &PhaseSequence, shift: isize) -> Result<()> {
    if a.modulus() != b.modulus() || a.len() != b.len() {
        return Err(Error::param(format!(
            "sequences differ in modulus or length ({}/{} vs {}/{})",
            a.modulus(),
            a.len(),
            b.modulus(),
            b.len()
        )));
    }
    if shift.unsigned_abs() >= a.len() {
        return Err(Error::domain(format!(
            "shift {shift} out of range for length {}",
            a.len()
        )));
    }
    Ok(())
}

/// Index pairs `(i, j)` with `a_i` multiplied by `conj(b_j)` at `shift`.
fn overlap(len: usize, shift: isize) -> impl Iterator<Item = (usize, usize)> {
    let s = shift.unsigned_abs();
    (0..len - s).map(move |i| if shift >= 0 { (i, i + s) } else { (i + s, i) })
}

/// `rho(a, b)(shift) = sum_i w^(a_i - b_(i+shift))`, exactly.
pub fn accf_exact(a: &PhaseSequence, b: &PhaseSequence, shift: isize) -> Result<CyclotomicSum> {
    check_pair(a, b, shift)?;
    let mut sum = CyclotomicSum::zero(a.modulus());
    accumulate(&mut sum, a, b, shift);
    Ok(sum)
}

fn accumulate(sum: &mut CyclotomicSum, a: &PhaseSequence, b: &PhaseSequence, shift: isize) {
    let n = a.modulus();
    let (av, bv) = (a.values(), b.values());
    let mut counts = vec![0i64; n as usize];
    for (i, j) in overlap(a.len(), shift) {
        counts[((av[i] + n - bv[j]) % n) as usize] += 1;
    }
    for (e, c) in counts.into_iter().enumerate() {
        if c != 0 {
            sum.add_power(e as i64, c);
        }
    }
}

/// `sum_i rho(a_i)(shift)` over every member of the set.
pub fn aacf_set_sum(set: &SequenceSet, shift: isize) -> Result<CyclotomicSum> {
    let mut sum = CyclotomicSum::zero(set.modulus());
    for s in set.sequences() {
        check_pair(s, s, shift)?;
        accumulate(&mut sum, s, s, shift);
    }
    Ok(sum)
}

/// Aperiodic cross-correlation of two complex vectors of equal length.
pub fn accf_complex<T: Real>(a: &[Complex<T>], b: &[Complex<T>], shift: isize) -> Complex<T> {
    assert_eq!(a.len(), b.len(), "accf of vectors with different lengths");
    if shift.unsigned_abs() >= a.len() {
        return Complex::new(T::zero(), T::zero());
    }
    overlap(a.len(), shift).fold(Complex::new(T::zero(), T::zero()), |acc, (i, j)| {
        acc + a[i] * b[j].conj()
    })
}

/// Floating-point `rho(a, b)(shift)` over the lifted sequences.
pub fn accf_float<T: Real>(a: &PhaseSequence, b: &PhaseSequence, shift: isize) -> Result<Complex<T>> {
    check_pair(a, b, shift)?;
    Ok(accf_complex(&a.to_complex::<T>(), &b.to_complex::<T>(), shift))
}

/// Floating-point counterpart of [`aacf_set_sum`].
pub fn aacf_set_sum_float<T: Real>(set: &SequenceSet, shift: isize) -> Result<Complex<T>> {
    let lifted: Vec<Vec<Complex<T>>> = set.sequences().iter().map(|s| s.to_complex()).collect();
    set_sum_lifted(&lifted, shift)
}

fn set_sum_lifted<T: Real>(lifted: &[Vec<Complex<T>>], shift: isize) -> Result<Complex<T>> {
    let len = lifted.first().map_or(0, Vec::len);
    if shift.unsigned_abs() >= len {
        return Err(Error::domain(format!(
            "shift {shift} out of range for length {len}"
        )));
    }
    Ok(lifted
        .iter()
        .fold(Complex::new(T::zero(), T::zero()), |acc, z| {
            acc + accf_complex(z, z, shift)
        }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Verdicts from cyclotomic divisibility.
    Exact,
    /// Verdicts from float magnitudes (modulus above [`EXACT_MODULUS_LIMIT`]).
    Numerical,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShiftResult {
    pub shift: usize,
    /// The set AACF sum at this shift is zero.
    pub zero: bool,
    /// Magnitude of the float evaluation.
    pub magnitude: f64,
    /// Exact verdict and float magnitude agree (always true in numerical mode).
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationReport {
    pub claim: Claim,
    pub mode: Mode,
    pub shifts: Vec<ShiftResult>,
    pub passed: bool,
    pub failing_shifts: Vec<usize>,
    /// Shifts where the exact and float paths disagree. Nonempty means a bug.
    pub inconsistent_shifts: Vec<usize>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Stop at the first failing shift.
    pub early_exit: bool,
    /// Use float verdicts even when exact arithmetic is available.
    pub force_numerical: bool,
}

/// The positive shifts a claim constrains, ascending.
pub fn required_shifts(claim: Claim, length: usize) -> Result<Vec<usize>> {
    match claim {
        Claim::Gcs => Ok((1..length).collect()),
        Claim::Mscs { shift: 0 } => Err(Error::domain("MSCS shift S must be at least 1")),
        Claim::Mscs { shift } => Ok((shift..length).step_by(shift).collect()),
        Claim::Type2Zcs { zone } if zone == 0 || zone > length => Err(Error::domain(format!(
            "ZCZ width {zone} must satisfy 1 <= Z <= L = {length}"
        ))),
        Claim::Type2Zcs { zone } => Ok((length - zone + 1..length).collect()),
    }
}

/// Checks `claim` at every required positive shift. Negative shifts follow
/// from `rho(a)(-tau) = conj(rho(a)(tau))`.
pub fn verify(set: &SequenceSet, claim: Claim, opts: VerifyOptions) -> Result<CorrelationReport> {
    let shifts = required_shifts(claim, set.length())?;
    let mode = if opts.force_numerical || set.modulus() > EXACT_MODULUS_LIMIT {
        Mode::Numerical
    } else {
        Mode::Exact
    };
    let tester = (mode == Mode::Exact).then(|| ZeroTest::new(set.modulus()));
    let lifted: Vec<Vec<Complex<f64>>> = set.sequences().iter().map(|s| s.to_complex()).collect();
    let peak = (set.size() * set.length()) as f64;

    let mut report = CorrelationReport {
        claim,
        mode,
        shifts: Vec::with_capacity(shifts.len()),
        passed: true,
        failing_shifts: Vec::new(),
        inconsistent_shifts: Vec::new(),
    };
    for tau in shifts {
        let magnitude = set_sum_lifted(&lifted, tau as isize)?.norm();
        let (zero, consistent) = match &tester {
            Some(t) => {
                let zero = t.is_zero(&aacf_set_sum(set, tau as isize)?);
                let consistent = if zero {
                    magnitude < ZERO_TOLERANCE
                } else {
                    magnitude > NONZERO_FLOOR
                };
                (zero, consistent)
            }
            None => (magnitude < ZERO_TOLERANCE * peak, true),
        };
        if !zero {
            report.passed = false;
            report.failing_shifts.push(tau);
        }
        if !consistent {
            report.inconsistent_shifts.push(tau);
        }
        report.shifts.push(ShiftResult {
            shift: tau,
            zero,
            magnitude,
            consistent,
        });
        if opts.early_exit && !zero {
            break;
        }
    }
    Ok(report)
}

/// `(M, L, S)`-MSCS check: zero at every nonzero multiple of `S`. With
/// `S >= L` no shift is constrained and the check passes.
pub fn verify_mscs(set: &SequenceSet, shift: usize) -> Result<CorrelationReport> {
    verify(set, Claim::Mscs { shift }, VerifyOptions::default())
}

/// Golay complementary set check: zero at every nonzero shift.
pub fn verify_gcs(set: &SequenceSet) -> Result<CorrelationReport> {
    verify(set, Claim::Gcs, VerifyOptions::default())
}

/// Type-II `(M, L, Z)`-ZCS check: zero for `L - Z < tau < L`.
pub fn verify_type2_zcs(set: &SequenceSet, zone: usize) -> Result<CorrelationReport> {
    verify(set, Claim::Type2Zcs { zone }, VerifyOptions::default())
}

/// Both sides of the Kronecker correlation decomposition at one shift.
#[derive(Debug, Clone)]
pub struct KroneckerIdentity {
    pub shift: usize,
    /// `rho(a (x) b)(tau)` computed directly.
    pub direct: CyclotomicSum,
    /// The decomposed right-hand side.
    pub decomposed: CyclotomicSum,
    pub exact_holds: bool,
    pub direct_float: Complex<f64>,
    pub decomposed_float: Complex<f64>,
}

impl KroneckerIdentity {
    pub fn float_deviation(&self) -> f64 {
        (self.direct_float - self.decomposed_float).norm()
    }

    pub fn holds(&self) -> bool {
        self.exact_holds && self.float_deviation() < ZERO_TOLERANCE
    }
}

fn accf_or_zero(a: &PhaseSequence, shift: isize) -> CyclotomicSum {
    if shift.unsigned_abs() >= a.len() {
        return CyclotomicSum::zero(a.modulus());
    }
    let mut sum = CyclotomicSum::zero(a.modulus());
    accumulate(&mut sum, a, a, shift);
    sum
}

/// Evaluates, for `tau = q L_2 + r` with `L_2 = |inner|`,
///
/// ```text
/// rho(outer (x) inner)(tau) = rho(outer)(q) rho(inner)(r)
///                           + [r != 0] rho(outer)(q + 1) rho(inner)(r - L_2)
/// ```
///
/// exactly (products as cyclic convolutions) and in floating point, against
/// the directly computed left-hand side. Shifts past the end contribute 0.
pub fn kronecker_accf_identity(
    outer: &PhaseSequence,
    inner: &PhaseSequence,
    shift: usize,
) -> Result<KroneckerIdentity> {
    let composed = kronecker_compose(outer, inner)?;
    if shift >= composed.len() {
        return Err(Error::domain(format!(
            "shift {shift} out of range for length {}",
            composed.len()
        )));
    }
    let inner_len = inner.len();
    let (q, r) = ((shift / inner_len) as isize, (shift % inner_len) as isize);

    let direct = accf_exact(&composed, &composed, shift as isize)?;
    let mut decomposed = accf_or_zero(outer, q).mul(&accf_or_zero(inner, r))?;
    if r != 0 {
        let tail = accf_or_zero(outer, q + 1).mul(&accf_or_zero(inner, r - inner_len as isize))?;
        decomposed = decomposed.add(&tail)?;
    }
    let exact_holds = direct.sub(&decomposed)?.is_zero();

    // float path: complex Kronecker product, no phase arithmetic
    let (zo, zi) = (outer.to_complex::<f64>(), inner.to_complex::<f64>());
    let kron: Vec<Complex<f64>> = zo
        .iter()
        .flat_map(|&o| zi.iter().map(move |&i| o * i))
        .collect();
    let direct_float = accf_complex(&kron, &kron, shift as isize);
    let mut decomposed_float = accf_complex(&zo, &zo, q) * accf_complex(&zi, &zi, r);
    if r != 0 {
        decomposed_float +=
            accf_complex(&zo, &zo, q + 1) * accf_complex(&zi, &zi, r - inner_len as isize);
    }
    Ok(KroneckerIdentity {
        shift,
        direct,
        decomposed,
        exact_holds,
        direct_float,
        decomposed_float,
    })
}

/// True iff the decomposition holds exactly and in float at `shift`.
pub fn kronecker_accf_identity_check(
    outer: &PhaseSequence,
    inner: &PhaseSequence,
    shift: usize,
) -> Result<bool> {
    kronecker_accf_identity(outer, inner, shift).map(|k| k.holds())
}
