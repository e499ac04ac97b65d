//! Direct constructions of multiple shift complementary sets.
//!
//! Every construction is driven by per-prime [`BlockParams`]. For a block
//! with prime `p`, `m` variables and start index `s` (variables are numbered
//! `1..=m`), the block function is
//!
//! ```text
//! f = (lambda/p) * sum_{i=s}^{m-1} v_perm(i) * v_perm(i+1)
//!   + sum_i g_i * v_i + g + h(v_1, ..., v_{s-1})
//! ```
//!
//! and sequence `gamma` of the set adds `(lambda/p) * gamma * v_perm(s)`.
//! Linear coefficients on `v_1..v_{s-1}` are folded into the tabulated `h`.

use serde::{Deserialize, Serialize};

use crate::domain::{is_prime, MixedDomain, DEFAULT_MAX_LENGTH};
use crate::error::{Error, Result};
use crate::function::{MultivariableFunction, Var};
use crate::sequence::{Claim, PhaseSequence, Provenance, SequenceSet};

/// The free function `h` on the first `s - 1` variables of a block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HeadFunction {
    /// `p^(s-1)` values indexed by `sum_i v_i p^(i-1)`.
    Table(Vec<i64>),
    /// Polynomial terms; each exponent vector has `s - 1` entries.
    Terms(Vec<HeadTerm>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeadTerm {
    pub coeff: i64,
    pub exponents: Vec<u32>,
}

/// Parameters of one prime block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockParams {
    pub prime: u32,
    /// Number of variables `m`.
    pub vars: u32,
    /// First variable of the permuted chain, `1 <= start <= vars`.
    pub start: u32,
    /// `perm[j]` is the image of `start + j`; `None` means identity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perm: Option<Vec<u32>>,
    /// Coefficients `g_1..g_m`; empty means all zero.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub linear: Vec<i64>,
    #[serde(default)]
    pub constant: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub head: Option<HeadFunction>,
}

impl BlockParams {
    /// Block with identity permutation and zero coefficients.
    pub fn plain(prime: u32, vars: u32, start: u32) -> Self {
        BlockParams {
            prime,
            vars,
            start,
            perm: None,
            linear: Vec::new(),
            constant: 0,
            head: None,
        }
    }

    pub fn with_perm(mut self, perm: Vec<u32>) -> Self {
        self.perm = Some(perm);
        self
    }

    pub fn with_linear(mut self, linear: Vec<i64>) -> Self {
        self.linear = linear;
        self
    }

    pub fn with_constant(mut self, constant: i64) -> Self {
        self.constant = constant;
        self
    }

    pub fn with_head(mut self, head: HeadFunction) -> Self {
        self.head = Some(head);
        self
    }

    /// `S` contribution of this block, `p^(s-1)`.
    pub fn shift(&self) -> usize {
        (self.prime as usize).pow(self.start - 1)
    }

    /// Block length `p^m`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        (self.prime as usize).pow(self.vars)
    }

    fn perm_images(&self) -> Vec<u32> {
        self.perm
            .clone()
            .unwrap_or_else(|| (self.start..=self.vars).collect())
    }

    fn validate(&self, modulus: u32) -> Result<()> {
        let p = self.prime;
        if !is_prime(p) {
            return Err(Error::param(format!("p must be prime (got {p})")));
        }
        if !modulus.is_multiple_of(p) {
            return Err(Error::param(format!(
                "p must divide lambda (p = {p}, lambda = {modulus})"
            )));
        }
        if self.vars == 0 {
            return Err(Error::param("m must be at least 1"));
        }
        if self.start == 0 || self.start > self.vars {
            return Err(Error::param(format!(
                "s must satisfy 1 <= s <= m (s = {}, m = {})",
                self.start, self.vars
            )));
        }
        if let Some(perm) = &self.perm {
            let mut sorted = perm.clone();
            sorted.sort_unstable();
            if !sorted.iter().copied().eq(self.start..=self.vars) {
                return Err(Error::param(format!(
                    "perm must be a permutation of {{{}, ..., {}}}",
                    self.start, self.vars
                )));
            }
        }
        if !self.linear.is_empty() && self.linear.len() != self.vars as usize {
            return Err(Error::param(format!(
                "linear needs {} coefficients, got {}",
                self.vars,
                self.linear.len()
            )));
        }
        let head_vars = (self.start - 1) as usize;
        match &self.head {
            Some(_) if head_vars == 0 => {
                return Err(Error::param("h must be absent when s = 1"));
            }
            Some(HeadFunction::Table(t)) if t.len() != (p as usize).pow(head_vars as u32) => {
                return Err(Error::param(format!(
                    "h table needs {} entries, got {}",
                    (p as usize).pow(head_vars as u32),
                    t.len()
                )));
            }
            Some(HeadFunction::Terms(terms))
                if terms.iter().any(|t| t.exponents.len() != head_vars) =>
            {
                return Err(Error::param(format!(
                    "h terms need {head_vars} exponents each"
                )));
            }
            _ => {}
        }
        Ok(())
    }

    /// `h` plus the folded linear terms on `v_1..v_{s-1}`, tabulated.
    fn head_table(&self) -> Vec<i64> {
        let p = self.prime as i64;
        let head_vars = (self.start - 1) as usize;
        let size = (p as usize).pow(head_vars as u32);
        (0..size)
            .map(|pos| {
                let mut rest = pos;
                let digits: Vec<i64> = (0..head_vars)
                    .map(|_| {
                        let d = (rest % p as usize) as i64;
                        rest /= p as usize;
                        d
                    })
                    .collect();
                let mut value: i64 = match &self.head {
                    Some(HeadFunction::Table(t)) => t[pos],
                    Some(HeadFunction::Terms(terms)) => terms
                        .iter()
                        .map(|t| {
                            t.exponents
                                .iter()
                                .zip(&digits)
                                .fold(t.coeff, |acc, (&e, &d)| acc.wrapping_mul(d.pow(e)))
                        })
                        .fold(0i64, i64::wrapping_add),
                    None => 0,
                };
                for (i, &d) in digits.iter().enumerate() {
                    value += self.linear.get(i).copied().unwrap_or(0) * d;
                }
                value
            })
            .collect()
    }

    /// Adds this block's `f_alpha` on block `b` of `f`'s domain.
    fn add_to(&self, f: MultivariableFunction, b: usize) -> Result<MultivariableFunction> {
        let modulus = f.modulus();
        let step = (modulus / self.prime) as i64;
        let perm = self.perm_images();
        let var = |i: u32| Var::new(b, i as usize - 1);
        let mut f = f;
        for pair in perm.windows(2) {
            f = f.with_term(step, &[(var(pair[0]), 1), (var(pair[1]), 1)])?;
        }
        for i in self.start..=self.vars {
            let g = self.linear.get(i as usize - 1).copied().unwrap_or(0);
            f = f.with_linear(g, var(i))?;
        }
        f = f.with_constant(self.constant)?;
        if self.start > 1 {
            let vars: Vec<Var> = (1..self.start).map(var).collect();
            f = f.with_table(&vars, &self.head_table())?;
        }
        Ok(f)
    }

    /// The variable multiplied by `gamma`, `v_perm(s)`, on block `b`.
    fn gamma_var(&self, b: usize) -> Var {
        Var::new(b, self.perm_images()[0] as usize - 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem1Params {
    pub modulus: u32,
    pub block: BlockParams,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem2Params {
    pub modulus: u32,
    pub blocks: Vec<BlockParams>,
}

/// The single extra variable of the length-extending construction:
/// `linear * v + constant` with `v` in `Z_prime`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionParams {
    pub prime: u32,
    #[serde(default)]
    pub linear: i64,
    #[serde(default)]
    pub constant: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem3Params {
    pub modulus: u32,
    pub blocks: Vec<BlockParams>,
    pub extension: ExtensionParams,
}

/// Any construction's parameters, as recorded in set provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "construction", rename_all = "lowercase")]
pub enum ConstructionParams {
    Theorem1(Theorem1Params),
    Theorem2(Theorem2Params),
    Theorem3(Theorem3Params),
}

impl ConstructionParams {
    pub fn build(&self) -> Result<SequenceSet> {
        match self {
            ConstructionParams::Theorem1(p) => theorem1_set(p),
            ConstructionParams::Theorem2(p) => theorem2_set(p),
            ConstructionParams::Theorem3(p) => theorem3_set(p),
        }
    }
}

fn validate_blocks(modulus: u32, blocks: &[BlockParams]) -> Result<()> {
    if modulus < 2 {
        return Err(Error::param("lambda must be at least 2"));
    }
    if blocks.is_empty() {
        return Err(Error::param("at least one prime block is required"));
    }
    for (i, b) in blocks.iter().enumerate() {
        b.validate(modulus)?;
        if blocks[..i].iter().any(|o| o.prime == b.prime) {
            return Err(Error::param(format!(
                "primes must be distinct ({} repeats)",
                b.prime
            )));
        }
    }
    Ok(())
}

/// One sequence per `gamma` in `Z_{p_1} x ... x Z_{p_k}`, `gamma_1` fastest.
fn gamma_sequences(
    base: &MultivariableFunction,
    blocks: &[BlockParams],
) -> Result<Vec<PhaseSequence>> {
    let modulus = base.modulus();
    let count: usize = blocks.iter().map(|b| b.prime as usize).product();
    let mut out = Vec::with_capacity(count);
    for n in 0..count {
        let mut rest = n;
        let mut f = base.clone();
        for (b, block) in blocks.iter().enumerate() {
            let gamma = (rest % block.prime as usize) as i64;
            rest /= block.prime as usize;
            let step = (modulus / block.prime) as i64;
            f = f.with_linear(step * gamma, block.gamma_var(b))?;
        }
        out.push(f.materialize());
    }
    Ok(out)
}

fn product_domain(blocks: &[BlockParams], extension: Option<u32>) -> Result<MixedDomain> {
    let mut shape: Vec<(u32, u32)> = blocks.iter().map(|b| (b.prime, b.vars)).collect();
    shape.extend(extension.map(|p| (p, 1)));
    MixedDomain::with_max_length(&shape, DEFAULT_MAX_LENGTH)
}

fn mscs_claims(shift: usize, zone: Option<usize>) -> Vec<Claim> {
    let mut claims = vec![Claim::Mscs { shift }];
    if shift == 1 {
        claims.push(Claim::Gcs);
    }
    claims.extend(zone.map(|zone| Claim::Type2Zcs { zone }));
    claims
}

/// `p` sequences of length `p^m` forming a `(p, p^m, p^(s-1))`-MSCS, which
/// is also a type-II `(p, p^m, p^m - p^(s-1))`-ZCS.
pub fn theorem1_set(params: &Theorem1Params) -> Result<SequenceSet> {
    let blocks = std::slice::from_ref(&params.block);
    let sequences = product_sequences(params.modulus, blocks)?;
    let shift = params.block.shift();
    let zone = params.block.len() - shift;
    SequenceSet::with_metadata(
        sequences,
        mscs_claims(shift, Some(zone)),
        Provenance::Construction {
            params: ConstructionParams::Theorem1(params.clone()),
        },
    )
}

fn product_sequences(modulus: u32, blocks: &[BlockParams]) -> Result<Vec<PhaseSequence>> {
    validate_blocks(modulus, blocks)?;
    let domain = product_domain(blocks, None)?;
    let mut f = MultivariableFunction::zero(domain, modulus)?;
    for (b, block) in blocks.iter().enumerate() {
        f = block.add_to(f, b)?;
    }
    gamma_sequences(&f, blocks)
}

/// `prod p_a` sequences of length `prod p_a^(m_a)` forming an MSCS with
/// `S = prod p_a^(s_a - 1)`; a GCS when every `s_a = 1`.
pub fn theorem2_set(params: &Theorem2Params) -> Result<SequenceSet> {
    let sequences = product_sequences(params.modulus, &params.blocks)?;
    let shift = params.blocks.iter().map(BlockParams::shift).product();
    let zone = match params.blocks.as_slice() {
        [only] => Some(only.len() - shift),
        _ => None,
    };
    SequenceSet::with_metadata(
        sequences,
        mscs_claims(shift, zone),
        Provenance::Construction {
            params: ConstructionParams::Theorem2(params.clone()),
        },
    )
}

/// Extends a GCS-producing block list by one distinct prime `q` placed in
/// the most significant index position: `prod p_a` sequences of length
/// `q * prod p_a^(m_a)` forming an MSCS with `S = q`.
pub fn theorem3_set(params: &Theorem3Params) -> Result<SequenceSet> {
    validate_blocks(params.modulus, &params.blocks)?;
    if let Some(b) = params.blocks.iter().find(|b| b.start != 1) {
        return Err(Error::param(format!(
            "every base block needs s = 1 (block with p = {} has s = {})",
            b.prime, b.start
        )));
    }
    let ext = &params.extension;
    validate_extension(params.modulus, &params.blocks, ext)?;
    let domain = product_domain(&params.blocks, Some(ext.prime))?;
    let mut f = MultivariableFunction::zero(domain, params.modulus)?;
    for (b, block) in params.blocks.iter().enumerate() {
        f = block.add_to(f, b)?;
    }
    f = f
        .with_linear(ext.linear, Var::new(params.blocks.len(), 0))?
        .with_constant(ext.constant)?;
    let sequences = gamma_sequences(&f, &params.blocks)?;
    SequenceSet::with_metadata(
        sequences,
        mscs_claims(ext.prime as usize, None),
        Provenance::Construction {
            params: ConstructionParams::Theorem3(params.clone()),
        },
    )
}

fn validate_extension(modulus: u32, blocks: &[BlockParams], ext: &ExtensionParams) -> Result<()> {
    if !is_prime(ext.prime) {
        return Err(Error::param(format!(
            "extension prime must be prime (got {})",
            ext.prime
        )));
    }
    if !modulus.is_multiple_of(ext.prime) {
        return Err(Error::param(format!(
            "extension prime must divide lambda (p = {}, lambda = {modulus})",
            ext.prime
        )));
    }
    if blocks.iter().any(|b| b.prime == ext.prime) {
        return Err(Error::param(format!(
            "primes must be distinct ({} repeats)",
            ext.prime
        )));
    }
    Ok(())
}

/// The length-`p^m` sequence of a single block for one `gamma`, i.e. the
/// factor that block contributes to a product construction.
pub fn block_factor(modulus: u32, block: &BlockParams, gamma: u32) -> Result<PhaseSequence> {
    validate_blocks(modulus, std::slice::from_ref(block))?;
    if gamma >= block.prime {
        return Err(Error::domain(format!(
            "gamma {gamma} out of range for p = {}",
            block.prime
        )));
    }
    let domain = MixedDomain::new(&[(block.prime, block.vars)])?;
    let step = (modulus / block.prime) as i64;
    block
        .add_to(MultivariableFunction::zero(domain, modulus)?, 0)?
        .with_linear(step * gamma as i64, block.gamma_var(0))
        .map(|f| f.materialize())
}

/// The length-`q` sequence `linear * v + constant` of an extension prime.
pub fn extension_factor(modulus: u32, ext: &ExtensionParams) -> Result<PhaseSequence> {
    validate_extension(modulus, &[], ext)?;
    let domain = MixedDomain::new(&[(ext.prime, 1)])?;
    Ok(MultivariableFunction::zero(domain, modulus)?
        .with_linear(ext.linear, Var::new(0, 0))?
        .with_constant(ext.constant)?
        .materialize())
}

/// Phase-domain Kronecker product: `out[j * |inner| + i] = outer[j] + inner[i]`.
pub fn kronecker_compose(outer: &PhaseSequence, inner: &PhaseSequence) -> Result<PhaseSequence> {
    let modulus = outer.modulus();
    if inner.modulus() != modulus {
        return Err(Error::param(format!(
            "modulus mismatch ({} vs {})",
            modulus,
            inner.modulus()
        )));
    }
    let values = outer
        .values()
        .iter()
        .flat_map(|&o| inner.values().iter().map(move |&i| (o + i) % modulus))
        .collect();
    PhaseSequence::new(modulus, values)
}

/// The first worked example: `p = 3, m = 3, s = 2, lambda = 6`, identity
/// permutation, `f = 2 v_2 v_3 + 5`. A `(3, 27, 3)`-MSCS.
pub fn example1_params() -> Theorem1Params {
    Theorem1Params {
        modulus: 6,
        block: BlockParams::plain(3, 3, 2).with_constant(5),
    }
}

/// The second worked example: base block `p = 3, m = 3, s = 1` with
/// `f_1 = 2(v_2 v_3 + v_3 v_1) + 2 v_1 + 5 v_2 + v_3`, extension prime 2 with
/// `f_2 = 3 v`, `lambda = 6`. A `(3, 54, 2)`-MSCS.
pub fn example2_params() -> Theorem3Params {
    Theorem3Params {
        modulus: 6,
        blocks: vec![BlockParams::plain(3, 3, 1)
            .with_perm(vec![2, 3, 1])
            .with_linear(vec![2, 5, 1])],
        extension: ExtensionParams {
            prime: 2,
            linear: 3,
            constant: 0,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example1_shape_and_claims() {
        let set = theorem1_set(&example1_params()).unwrap();
        assert_eq!((set.size(), set.length(), set.modulus()), (3, 27, 6));
        assert_eq!(
            set.claims(),
            &[Claim::Mscs { shift: 3 }, Claim::Type2Zcs { zone: 24 }]
        );
        // a^gamma = 2 v2 v3 + 5 + 2 v2 gamma
        for (gamma, s) in set.sequences().iter().enumerate() {
            for x in 0..27usize {
                let (v2, v3) = ((x / 3 % 3) as u32, (x / 9) as u32);
                let want = (2 * v2 * v3 + 5 + 2 * v2 * gamma as u32) % 6;
                assert_eq!(s.values()[x], want);
            }
        }
    }

    #[test]
    fn smallest_golay_pair() {
        let params = Theorem1Params {
            modulus: 2,
            block: BlockParams::plain(2, 1, 1),
        };
        let set = theorem1_set(&params).unwrap();
        assert_eq!(set.sequences()[0].values(), &[0, 0]);
        assert_eq!(set.sequences()[1].values(), &[0, 1]);
        assert!(set.claims().contains(&Claim::Gcs));
    }

    #[test]
    fn example2_formula() {
        let set = theorem3_set(&example2_params()).unwrap();
        assert_eq!((set.size(), set.length()), (3, 54));
        assert_eq!(set.claims(), &[Claim::Mscs { shift: 2 }]);
        for (gamma, s) in set.sequences().iter().enumerate() {
            for x in 0..54usize {
                let i = x % 27;
                let (v1, v2, v3, w) = (i % 3, i / 3 % 3, i / 9, x / 27);
                let f1 = 2 * (v2 * v3 + v3 * v1) + 2 * v1 + 5 * v2 + v3;
                let want = (f1 + 2 * v2 * gamma + 3 * w) % 6;
                assert_eq!(s.values()[x] as usize, want);
            }
        }
    }

    #[test]
    fn head_table_and_folded_linear() {
        // p = 2, m = 3, s = 3: h on (v1, v2), g1, g2 folded into the table
        let block = BlockParams::plain(2, 3, 3)
            .with_linear(vec![1, 2, 3])
            .with_head(HeadFunction::Table(vec![0, 1, 2, 3]));
        let set = theorem1_set(&Theorem1Params { modulus: 4, block }).unwrap();
        for (gamma, s) in set.sequences().iter().enumerate() {
            for x in 0..8usize {
                let (v1, v2, v3) = (x % 2, x / 2 % 2, x / 4);
                let h = v1 + 2 * v2;
                let want = (h + v1 + 2 * v2 + 3 * v3 + 2 * v3 * gamma) % 4;
                assert_eq!(s.values()[x] as usize, want);
            }
        }
    }

    #[test]
    fn head_terms_match_table() {
        let terms = HeadFunction::Terms(vec![
            HeadTerm { coeff: 1, exponents: vec![2, 0] },
            HeadTerm { coeff: 2, exponents: vec![1, 1] },
        ]);
        let table: Vec<i64> = (0..9)
            .map(|pos| {
                let (a, b) = (pos % 3, pos / 3);
                a * a + 2 * a * b
            })
            .collect();
        let t = |head| Theorem1Params {
            modulus: 3,
            block: BlockParams::plain(3, 4, 3).with_head(head),
        };
        let a = theorem1_set(&t(terms)).unwrap();
        let b = theorem1_set(&t(HeadFunction::Table(table))).unwrap();
        assert_eq!(a.sequences(), b.sequences());
    }

    #[test]
    fn parameter_errors() {
        let t1 = |block, modulus| theorem1_set(&Theorem1Params { modulus, block });
        let err = t1(BlockParams::plain(4, 2, 1), 4).unwrap_err();
        assert!(err.to_string().contains("p must be prime"));
        assert!(t1(BlockParams::plain(3, 2, 1), 4).is_err());
        assert!(t1(BlockParams::plain(2, 2, 0), 2).is_err());
        assert!(t1(BlockParams::plain(2, 2, 3), 2).is_err());
        assert!(t1(BlockParams::plain(2, 3, 2).with_perm(vec![2, 2]), 2).is_err());
        assert!(t1(BlockParams::plain(2, 3, 2).with_perm(vec![1, 2]), 2).is_err());
        assert!(t1(BlockParams::plain(2, 3, 2).with_linear(vec![1]), 2).is_err());
        assert!(t1(
            BlockParams::plain(2, 3, 1).with_head(HeadFunction::Table(vec![])),
            2
        )
        .is_err());
        assert!(t1(
            BlockParams::plain(2, 3, 2).with_head(HeadFunction::Table(vec![0; 3])),
            2
        )
        .is_err());

        let dup = Theorem2Params {
            modulus: 6,
            blocks: vec![BlockParams::plain(3, 1, 1), BlockParams::plain(3, 2, 1)],
        };
        assert!(theorem2_set(&dup).is_err());

        let mut t3 = example2_params();
        t3.blocks[0].start = 2;
        t3.blocks[0].perm = None;
        assert!(theorem3_set(&t3).is_err());
        let mut t3 = example2_params();
        t3.extension.prime = 3;
        assert!(theorem3_set(&t3).is_err());
        let mut t3 = example2_params();
        t3.extension.prime = 5;
        assert!(theorem3_set(&t3).is_err());
    }

    #[test]
    fn single_block_theorem2_matches_theorem1() {
        let t1 = example1_params();
        let t2 = Theorem2Params {
            modulus: t1.modulus,
            blocks: vec![t1.block.clone()],
        };
        assert_eq!(
            theorem1_set(&t1).unwrap().sequences(),
            theorem2_set(&t2).unwrap().sequences()
        );
    }

    #[test]
    fn kronecker_examples() {
        let inner = PhaseSequence::new(6, vec![1, 4, 2]).unwrap();
        let unit = PhaseSequence::new(6, vec![0]).unwrap();
        assert_eq!(kronecker_compose(&unit, &inner).unwrap(), inner);
        let outer = PhaseSequence::new(6, vec![0, 3]).unwrap();
        let zeros = PhaseSequence::new(6, vec![0, 0, 0]).unwrap();
        assert_eq!(
            kronecker_compose(&outer, &zeros).unwrap().values(),
            &[0, 0, 0, 3, 3, 3]
        );
        let other = PhaseSequence::new(4, vec![0]).unwrap();
        assert!(kronecker_compose(&other, &inner).is_err());
    }
}
