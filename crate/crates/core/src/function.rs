//! `Z_lambda`-valued functions on a [`MixedDomain`].

use crate::domain::{MixedDomain, MixedRadixIndex};
use crate::error::{Error, Result};
use crate::sequence::PhaseSequence;

/// Variable `digit` of block `block`, both zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub block: usize,
    pub digit: usize,
}

impl Var {
    pub const fn new(block: usize, digit: usize) -> Self {
        Var { block, digit }
    }
}

/// `coeff * prod var^exp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    coeff: u32,
    powers: Vec<(Var, u32)>,
}

impl Term {
    pub fn coeff(&self) -> u32 {
        self.coeff
    }

    pub fn powers(&self) -> &[(Var, u32)] {
        &self.powers
    }
}

/// A lookup table over a subset of variables. The first variable is the
/// least significant position of the table index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    vars: Vec<Var>,
    values: Vec<u32>,
}

impl Table {
    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }
}

/// Polynomial terms plus a constant plus tabulated components, reduced
/// modulo `modulus`. Monomial degree is not capped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultivariableFunction {
    domain: MixedDomain,
    modulus: u32,
    terms: Vec<Term>,
    constant: u32,
    tables: Vec<Table>,
}

fn reduce(c: i64, modulus: u32) -> u32 {
    c.rem_euclid(modulus as i64) as u32
}

impl MultivariableFunction {
    /// The zero function.
    pub fn zero(domain: MixedDomain, modulus: u32) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::param("modulus must be at least 2"));
        }
        Ok(MultivariableFunction {
            domain,
            modulus,
            terms: Vec::new(),
            constant: 0,
            tables: Vec::new(),
        })
    }

    pub fn constant_fn(domain: MixedDomain, modulus: u32, c: i64) -> Result<Self> {
        Self::zero(domain, modulus)?.with_constant(c)
    }

    pub fn domain(&self) -> &MixedDomain {
        &self.domain
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn constant(&self) -> u32 {
        self.constant
    }

    pub fn tables(&self) -> &[Table] {
        &self.tables
    }

    fn check_var(&self, v: Var) -> Result<()> {
        match self.domain.blocks().get(v.block) {
            Some(b) if v.digit < b.vars as usize => Ok(()),
            _ => Err(Error::param(format!(
                "variable (block {}, digit {}) is not in the domain",
                v.block, v.digit
            ))),
        }
    }

    /// Adds `coeff * prod var^exp`. Repeated variables are merged and zero
    /// exponents dropped; a term with zero coefficient is discarded.
    pub fn with_term(mut self, coeff: i64, powers: &[(Var, u32)]) -> Result<Self> {
        let mut merged: Vec<(Var, u32)> = Vec::with_capacity(powers.len());
        for &(v, e) in powers {
            self.check_var(v)?;
            if e == 0 {
                continue;
            }
            match merged.iter_mut().find(|(w, _)| *w == v) {
                Some((_, acc)) => *acc += e,
                None => merged.push((v, e)),
            }
        }
        merged.sort();
        let coeff = reduce(coeff, self.modulus);
        if coeff == 0 {
            return Ok(self);
        }
        if merged.is_empty() {
            self.constant = (self.constant + coeff) % self.modulus;
        } else {
            self.terms.push(Term {
                coeff,
                powers: merged,
            });
        }
        Ok(self)
    }

    pub fn with_linear(self, coeff: i64, v: Var) -> Result<Self> {
        self.with_term(coeff, &[(v, 1)])
    }

    pub fn with_constant(mut self, c: i64) -> Result<Self> {
        self.constant = (self.constant + reduce(c, self.modulus)) % self.modulus;
        Ok(self)
    }

    /// Adds a tabulated component over `vars` (distinct). The table needs one
    /// entry per joint value of the variables.
    pub fn with_table(mut self, vars: &[Var], values: &[i64]) -> Result<Self> {
        let mut expected = 1usize;
        for (k, &v) in vars.iter().enumerate() {
            self.check_var(v)?;
            if vars[..k].contains(&v) {
                return Err(Error::param("table variables must be distinct"));
            }
            expected *= self.domain.blocks()[v.block].prime as usize;
        }
        if values.len() != expected {
            return Err(Error::param(format!(
                "table over {} variables needs {expected} entries, got {}",
                vars.len(),
                values.len()
            )));
        }
        self.tables.push(Table {
            vars: vars.to_vec(),
            values: values.iter().map(|&c| reduce(c, self.modulus)).collect(),
        });
        Ok(self)
    }

    /// Sum of two functions on the same domain and modulus.
    pub fn add(&self, other: &MultivariableFunction) -> Result<Self> {
        if self.domain != other.domain || self.modulus != other.modulus {
            return Err(Error::param(
                "functions must share domain and modulus to be added",
            ));
        }
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        out.tables.extend(other.tables.iter().cloned());
        out.constant = (out.constant + other.constant) % out.modulus;
        Ok(out)
    }

    /// Value at a point of the domain.
    pub fn evaluate(&self, idx: &MixedRadixIndex) -> Result<u32> {
        self.domain.check(idx)?;
        Ok(self.eval_with(|v| idx.digit(v)))
    }

    fn eval_with(&self, digit: impl Fn(Var) -> u32) -> u32 {
        let m = self.modulus as u64;
        let mut acc = self.constant as u64;
        for term in &self.terms {
            let mut prod = term.coeff as u64;
            for &(v, e) in &term.powers {
                prod = prod * pow_mod(digit(v) as u64, e, m) % m;
                if prod == 0 {
                    break;
                }
            }
            acc = (acc + prod) % m;
        }
        for table in &self.tables {
            let mut pos = 0usize;
            let mut place = 1usize;
            for &v in &table.vars {
                pos += digit(v) as usize * place;
                place *= self.domain.blocks()[v.block].prime as usize;
            }
            acc = (acc + table.values[pos] as u64) % m;
        }
        acc as u32
    }

    /// The length-`L` phase sequence `x -> f(decode(x))`.
    pub fn materialize(&self) -> PhaseSequence {
        let blocks = self.domain.blocks();
        let offsets: Vec<usize> = blocks
            .iter()
            .scan(0usize, |acc, b| {
                let start = *acc;
                *acc += b.vars as usize;
                Some(start)
            })
            .collect();
        let radices: Vec<u32> = blocks
            .iter()
            .flat_map(|b| std::iter::repeat_n(b.prime, b.vars as usize))
            .collect();
        let mut digits = vec![0u32; radices.len()];
        let mut values = Vec::with_capacity(self.domain.len());
        for _ in 0..self.domain.len() {
            values.push(self.eval_with(|v| digits[offsets[v.block] + v.digit]));
            for (d, &r) in digits.iter_mut().zip(&radices) {
                *d += 1;
                if *d < r {
                    break;
                }
                *d = 0;
            }
        }
        PhaseSequence::from_reduced(self.modulus, values)
    }
}

fn pow_mod(base: u64, mut exp: u32, m: u64) -> u64 {
    let mut b = base % m;
    let mut acc = 1 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc
}
