//! Versioned JSON interchange format for sequence sets.

use std::io::{Read, Write};

use mscs_core::{Claim, PhaseSequence, Provenance, SequenceSet};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// On-disk form of a [`SequenceSet`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetDocument {
    pub schema_version: u32,
    /// Alphabet size: every entry lies in `[0, lambda)`.
    pub lambda: u32,
    /// Sequence length `L`.
    pub length: usize,
    /// Set size `M`.
    pub size: usize,
    pub claims: Vec<Claim>,
    pub provenance: Provenance,
    pub sequences: Vec<Vec<u32>>,
}

impl SetDocument {
    pub fn from_set(set: &SequenceSet) -> Self {
        SetDocument {
            schema_version: SCHEMA_VERSION,
            lambda: set.modulus(),
            length: set.length(),
            size: set.size(),
            claims: set.claims().to_vec(),
            provenance: set.provenance().clone(),
            sequences: set.sequences().iter().map(|s| s.values().to_vec()).collect(),
        }
    }

    /// Checks the declared shape and ranges and rebuilds the set.
    pub fn to_set(&self) -> Result<SequenceSet, CliError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::Parse(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        if self.sequences.len() != self.size {
            return Err(CliError::Parse(format!(
                "size is {} but {} sequences are present",
                self.size,
                self.sequences.len()
            )));
        }
        if let Some((i, s)) = self.sequences.iter().enumerate().find(|(_, s)| s.len() != self.length) {
            return Err(CliError::Parse(format!(
                "sequence {i} has length {}, expected {}",
                s.len(),
                self.length
            )));
        }
        let sequences = self
            .sequences
            .iter()
            .map(|s| PhaseSequence::new(self.lambda, s.clone()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::Parse(e.to_string()))?;
        SequenceSet::with_metadata(sequences, self.claims.clone(), self.provenance.clone())
            .map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn read(mut reader: impl Read) -> Result<Self, CliError> {
        let mut text = String::new();
        reader
            .read_to_string(&mut text)
            .map_err(|e| CliError::Io(e.to_string()))?;
        serde_json::from_str(&text).map_err(|e| CliError::Parse(e.to_string()))
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn write(&self, mut writer: impl Write) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(self).map_err(|e| CliError::Io(e.to_string()))?;
        writeln!(writer, "{text}").map_err(|e| CliError::Io(e.to_string()))
    }
}
