// Copyright (c) The fgh Authors
// SPDX-License-Identifier: Apache-2.0

//! From a descending sequence `ω^α = α₀ > α₁ > … > α_m` to a base function
//! `f` whose derivation of `F^f_α(f(0))` keeps its measure above the sequence.
//!
//! [`build_base_function`] picks the least strictly increasing `f` with
//! `f(x) > mc(α_{x+1}) + x + 1` on the prefix. [`analyze`] then walks the
//! derivation along the checkpoints `a_0 < a_1 < …`:
//!
//! * if the stack at `a_i` ends in `0`, `a_{i+1} = a_i + 1`;
//! * otherwise let `b ≥ a_i` be the first step whose stack ends in a
//!   successor `β + 1`, let `n` be the number of steps `i + 1` copies of `β`
//!   with register `1` take to empty, and `a_{i+1} = b + n + 1`.
//!
//! At each checkpoint it checks `h(K^(a_i)) > α_{i+1}` and that the register
//! is at least `f(i)`.

use num_bigint::BigUint;
use serde::Serialize;

use crate::machine::{BaseError, BaseFunction, EvalError, EvalResult, Machine, MachineState, StepError};
use crate::notation::{parse, NotationError};
use crate::ordinal::{Ordinal, OrdinalKind};

/// What a [`DerivedBase`] does beyond the sequence prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GuardPolicy {
    /// Evaluation outside the prefix is an [`BaseError::OutOfDomain`] error.
    Fail,
    /// `f(x) = f(x − 1) + 1` past the prefix.
    #[default]
    Extend,
}

/// A base function tabulated on `0..values.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedBase {
    values: Vec<BigUint>,
    policy: GuardPolicy,
}

impl DerivedBase {
    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    pub fn policy(&self) -> GuardPolicy {
        self.policy
    }

    pub fn with_policy(mut self, policy: GuardPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn eval(&self, x: &BigUint) -> Result<BigUint, BaseError> {
        let len = self.values.len();
        if let Some(v) = usize::try_from(x).ok().and_then(|i| self.values.get(i)) {
            return Ok(v.clone());
        }
        match (self.policy, self.values.last()) {
            (GuardPolicy::Extend, Some(last)) => Ok(last + x - (len - 1)),
            _ => Err(BaseError::OutOfDomain {
                x: x.clone(),
                domain: len,
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("entry {index}: {reason}")]
pub struct ValidationError {
    pub index: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SequenceFileError {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("line {line}: {source}")]
    Ordinal { line: usize, source: NotationError },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescendingSequence {
    alpha: Ordinal,
    entries: Vec<Ordinal>,
}

impl DescendingSequence {
    /// Unvalidated; see [`DescendingSequence::validate`].
    pub fn new(alpha: Ordinal, entries: Vec<Ordinal>) -> Self {
        DescendingSequence { alpha, entries }
    }

    pub fn alpha(&self) -> &Ordinal {
        &self.alpha
    }

    pub fn entries(&self) -> &[Ordinal] {
        &self.entries
    }

    /// Reads the text format: an `alpha: <ordinal>` line, then one ordinal per
    /// line. `#` starts a comment; blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self, SequenceFileError> {
        let mut alpha = None;
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let ordinal = |s: &str| parse(s).map_err(|source| SequenceFileError::Ordinal { line, source });
            if alpha.is_none() {
                let rest = content.strip_prefix("alpha:").ok_or(SequenceFileError::Format {
                    line,
                    message: "expected 'alpha: <ordinal>'".into(),
                })?;
                alpha = Some(ordinal(rest)?);
            } else {
                entries.push(ordinal(content)?);
            }
        }
        let alpha = alpha.ok_or(SequenceFileError::Format {
            line: text.lines().count(),
            message: "missing 'alpha:' line".into(),
        })?;
        Ok(DescendingSequence::new(alpha, entries))
    }

    pub fn validate(&self) -> Result<(), ValidationError> {
        let head = self.alpha.omega_pow().map_err(|e| ValidationError {
            index: 0,
            reason: e.to_string(),
        })?;
        match self.entries.first() {
            Some(first) if *first == head => {}
            Some(first) => {
                return Err(ValidationError {
                    index: 0,
                    reason: format!("first entry {first} must be w^alpha = {head}"),
                })
            }
            None => {
                return Err(ValidationError {
                    index: 0,
                    reason: "sequence is empty".into(),
                })
            }
        }
        for (i, pair) in self.entries.windows(2).enumerate() {
            if pair[1] >= pair[0] {
                return Err(ValidationError {
                    index: i + 1,
                    reason: format!("{} is not below {}", pair[1], pair[0]),
                });
            }
        }
        if self.entries.len() < 3 {
            return Err(ValidationError {
                index: self.entries.len(),
                reason: "need at least three entries".into(),
            });
        }
        Ok(())
    }
}

/// The least `f` that is strictly increasing and satisfies
/// `f(x) > mc(α_{x+1}) + x + 1` for `x < m`.
pub fn build_base_function(seq: &DescendingSequence, policy: GuardPolicy) -> DerivedBase {
    let mut values: Vec<BigUint> = Vec::with_capacity(seq.entries.len().saturating_sub(1));
    for (x, entry) in seq.entries.iter().skip(1).enumerate() {
        let bound = entry.max_coefficient().expect("entries lie below e0") + x + 2u32;
        let next = match values.last() {
            Some(prev) => bound.max(prev + 1u32),
            None => bound,
        };
        values.push(next);
    }
    DerivedBase { values, policy }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScheduleCase {
    /// The stack at `a_i` ends in `0`.
    One,
    Two { b: u64, beta: Ordinal, n: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleEntry {
    pub i: usize,
    pub a: u64,
    /// How `a_{i+1}` was reached; `None` for the last checkpoint computed.
    pub case: Option<ScheduleCase>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexCheck {
    pub i: usize,
    pub a: u64,
    pub measure: Ordinal,
    /// `α_{i+1}`.
    pub bound: Ordinal,
    pub measure_ok: bool,
    pub register: BigUint,
    pub f_i: BigUint,
    pub register_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClaimStatus {
    AllVerified,
    FailedAt(usize),
    FuelExhausted { steps: u64 },
    /// The derivation halted; only possible because the sequence is finite.
    Converged { steps: u64 },
    /// `f` was needed outside the prefix under [`GuardPolicy::Fail`].
    OutOfDomain { step: u64, x: BigUint },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimReport {
    pub checks: Vec<IndexCheck>,
    pub status: ClaimStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    pub f: DerivedBase,
    pub schedule: Vec<ScheduleEntry>,
    pub report: ClaimReport,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AdversaryError {
    #[error("invalid sequence: {0}")]
    Validation(#[from] ValidationError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

pub fn schedule(seq: &DescendingSequence, fuel: u64) -> Result<Vec<ScheduleEntry>, AdversaryError> {
    Ok(analyze(seq, fuel, GuardPolicy::default())?.schedule)
}

pub fn verify_claim(seq: &DescendingSequence, fuel: u64) -> Result<ClaimReport, AdversaryError> {
    Ok(analyze(seq, fuel, GuardPolicy::default())?.report)
}

/// Builds `f`, walks the derivation of `F^f_α(f(0))` through the checkpoints
/// `a_0 … a_{m-1}` and checks both inequalities at each. Fuel counts every
/// step, including the sub-derivations that measure `n`.
pub fn analyze(seq: &DescendingSequence, fuel: u64, policy: GuardPolicy) -> Result<Analysis, AdversaryError> {
    seq.validate()?;
    let derived = build_base_function(seq, policy);
    let f = BaseFunction::Derived(derived.clone());
    let mut walk = Walk {
        machine: Machine::new(&f),
        state: MachineState::initial(seq.alpha.clone(), derived.values[0].clone()),
        index: 0,
        fuel_left: fuel,
        spent: 0,
    };
    let horizon = seq.entries.len() - 1;
    let mut schedule = Vec::new();
    let mut checks = Vec::new();
    let mut stop = None;

    for i in 0..horizon {
        let register = walk.state.register().clone();
        let measure = walk.state.measure();
        let bound = seq.entries[i + 1].clone();
        let f_i = derived.values[i].clone();
        checks.push(IndexCheck {
            i,
            a: walk.index,
            measure_ok: measure > bound,
            register_ok: register >= f_i,
            measure,
            bound,
            register,
            f_i,
        });
        let mut entry = ScheduleEntry {
            i,
            a: walk.index,
            case: None,
        };
        if i + 1 == horizon {
            schedule.push(entry);
            break;
        }
        match walk.transition(i) {
            Ok(case) => {
                entry.case = Some(case);
                schedule.push(entry);
            }
            Err(Halt::Status(status)) => {
                schedule.push(entry);
                stop = Some(status);
                break;
            }
            Err(Halt::Error(e)) => return Err(e.into()),
        }
    }

    let status = match checks.iter().find(|c| !(c.measure_ok && c.register_ok)) {
        Some(failed) => ClaimStatus::FailedAt(failed.i),
        None => stop.unwrap_or(ClaimStatus::AllVerified),
    };
    Ok(Analysis {
        f: derived,
        schedule,
        report: ClaimReport { checks, status },
    })
}

enum Halt {
    Status(ClaimStatus),
    Error(EvalError),
}

struct Walk<'f> {
    machine: Machine<'f>,
    state: MachineState,
    index: u64,
    fuel_left: u64,
    spent: u64,
}

impl Walk<'_> {
    fn advance(&mut self) -> Result<(), Halt> {
        if self.state.is_halted() {
            return Err(Halt::Status(ClaimStatus::Converged { steps: self.index }));
        }
        if self.fuel_left == 0 {
            return Err(Halt::Status(ClaimStatus::FuelExhausted { steps: self.spent }));
        }
        self.machine
            .step_in_place(&mut self.state)
            .map_err(|source| self.step_failure(self.index, source))?;
        self.fuel_left -= 1;
        self.spent += 1;
        self.index += 1;
        Ok(())
    }

    fn step_failure(&self, step: u64, source: StepError) -> Halt {
        match source {
            StepError::Base(BaseError::OutOfDomain { x, .. }) => Halt::Status(ClaimStatus::OutOfDomain { step, x }),
            source => Halt::Error(EvalError { step, source }),
        }
    }

    /// Moves from `a_i` to `a_{i+1}`.
    fn transition(&mut self, i: usize) -> Result<ScheduleCase, Halt> {
        if self.state.top().is_some_and(Ordinal::is_zero) {
            self.advance()?;
            return Ok(ScheduleCase::One);
        }
        loop {
            match self.state.top().map(Ordinal::kind) {
                None => return Err(Halt::Status(ClaimStatus::Converged { steps: self.index })),
                Some(OrdinalKind::Successor) => break,
                Some(_) => self.advance()?,
            }
        }
        let b = self.index;
        let beta = self.state.top().expect("nonempty").predecessor().expect("successor");
        let block = MachineState::new([(beta.clone(), BigUint::from(i + 1))], BigUint::from(1u32));
        let n = match self.machine.run_to_empty(block, self.fuel_left) {
            Ok(EvalResult::Value { steps, .. }) => steps,
            Ok(EvalResult::FuelExhausted { steps, .. }) => {
                return Err(Halt::Status(ClaimStatus::FuelExhausted {
                    steps: self.spent + steps,
                }))
            }
            Err(e) => return Err(self.step_failure(e.step, e.source)),
        };
        self.fuel_left -= n;
        self.spent += n;
        for _ in 0..=n {
            self.advance()?;
        }
        Ok(ScheduleCase::Two { b, beta, n })
    }
}

#[derive(Serialize)]
struct CheckRecord {
    i: usize,
    a: u64,
    measure: String,
    bound: String,
    measure_ok: bool,
    register: String,
    f_i: String,
    register_ok: bool,
}

#[derive(Serialize)]
struct ReportRecord {
    status: String,
    checks: Vec<CheckRecord>,
}

impl ClaimStatus {
    pub fn label(&self) -> String {
        match self {
            ClaimStatus::AllVerified => "AllVerified".into(),
            ClaimStatus::FailedAt(i) => format!("FailedAt({i})"),
            ClaimStatus::FuelExhausted { steps } => format!("FuelExhausted({steps})"),
            ClaimStatus::Converged { steps } => format!("Converged({steps})"),
            ClaimStatus::OutOfDomain { step, x } => format!("OutOfDomain(step={step}, x={x})"),
        }
    }
}

impl ClaimReport {
    /// Per-index records with ordinals in text notation and naturals as decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        let record = ReportRecord {
            status: self.status.label(),
            checks: self
                .checks
                .iter()
                .map(|c| CheckRecord {
                    i: c.i,
                    a: c.a,
                    measure: c.measure.to_string(),
                    bound: c.bound.to_string(),
                    measure_ok: c.measure_ok,
                    register: c.register.to_string(),
                    f_i: c.f_i.to_string(),
                    register_ok: c.register_ok,
                })
                .collect(),
        };
        serde_json::to_value(record).expect("strings and integers serialize")
    }
}
