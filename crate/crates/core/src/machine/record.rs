// Copyright (c) The fgh Authors
// SPDX-License-Identifier: Apache-2.0

//! JSON-lines form of trace entries.
//!
//! One object per entry:
//! `{"index":0,"stack":[["w","1"]],"reg":"2","measure":"w^w"}`.
//! Ordinals use the text notation; counts and the register are decimal
//! strings so no width is lost.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{MachineState, TraceEntry};
use crate::notation::{parse, NotationError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub index: u64,
    pub stack: Vec<(String, String)>,
    pub reg: String,
    pub measure: String,
}

#[derive(Debug, thiserror::Error)]
pub enum RecordError {
    #[error("malformed json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad ordinal {text:?}: {source}")]
    Ordinal { text: String, source: NotationError },
    #[error("bad natural {0:?}")]
    Natural(String),
}

impl From<&TraceEntry> for TraceRecord {
    fn from(entry: &TraceEntry) -> Self {
        TraceRecord {
            index: entry.index,
            stack: entry
                .state
                .runs()
                .iter()
                .map(|r| (r.ordinal().to_string(), r.count().to_string()))
                .collect(),
            reg: entry.state.register().to_string(),
            measure: entry.measure.to_string(),
        }
    }
}

impl TraceRecord {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("plain strings and integers serialize")
    }

    pub fn from_json_line(line: &str) -> Result<Self, RecordError> {
        Ok(serde_json::from_str(line)?)
    }

    /// Rebuilds the machine state described by this record.
    pub fn to_state(&self) -> Result<MachineState, RecordError> {
        let mut runs = Vec::with_capacity(self.stack.len());
        for (ordinal, count) in &self.stack {
            let o = parse(ordinal).map_err(|source| RecordError::Ordinal {
                text: ordinal.clone(),
                source,
            })?;
            runs.push((o, nat(count)?));
        }
        Ok(MachineState::new(runs, nat(&self.reg)?))
    }
}

fn nat(s: &str) -> Result<BigUint, RecordError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(RecordError::Natural(s.to_string()));
    }
    s.parse().map_err(|_| RecordError::Natural(s.to_string()))
}
