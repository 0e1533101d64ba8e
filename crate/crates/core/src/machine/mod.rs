// Copyright (c) The fgh Authors
// SPDX-License-Identifier: Apache-2.0

//! The derivation machine for `F^f_α`.
//!
//! A state `(α₀ … αₙ, x)` stands for the term `F_α₀(…F_αₙ(x)…)`. One step
//! rewrites the innermost call:
//!
//! * `αₙ = 0`: pop it, `x := f(x)`
//! * `αₙ = β + 1`: replace it by `x + 1` copies of `β`, `x := 1`
//! * `αₙ` a limit: replace it by `αₙ[x]`
//!
//! The empty stack is a fixed point and its register is the value computed.
//! Copies are run-length encoded so the successor rule costs one push no
//! matter how large the register is.

mod base;
mod record;

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::fundamental::fund_seq_bounded;
use crate::ordinal::{Ordinal, OrdinalError, OrdinalKind, Term, DEFAULT_TOWER_LIMIT};

pub use base::{Affine, BaseError, BaseFunction, ParseBaseError};
pub use record::{RecordError, TraceRecord};

/// Default cap on the register size, in decimal digits.
pub const DEFAULT_MAX_REGISTER_DIGITS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StepError {
    #[error(transparent)]
    Base(#[from] BaseError),
    #[error(transparent)]
    Ordinal(#[from] OrdinalError),
    #[error("register would reach about {digits} decimal digits (limit {limit})")]
    RegisterTooLarge { digits: u64, limit: usize },
}

/// A failed step, tagged with the index of the state being stepped.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("step {step}: {source}")]
pub struct EvalError {
    pub step: u64,
    #[source]
    pub source: StepError,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_register_digits: usize,
    /// Bound on the tower height in `ε₀[x] = ω_x`.
    pub tower_limit: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_register_digits: DEFAULT_MAX_REGISTER_DIGITS,
            tower_limit: DEFAULT_TOWER_LIMIT,
        }
    }
}

impl Limits {
    pub(crate) fn check_register(&self, value: &BigUint) -> Result<(), StepError> {
        let digits = approx_decimal_digits(value);
        if digits > self.max_register_digits as u64 {
            return Err(StepError::RegisterTooLarge {
                digits,
                limit: self.max_register_digits,
            });
        }
        Ok(())
    }
}

// ceil(bits · log10 2); exact or one too many.
fn approx_decimal_digits(value: &BigUint) -> u64 {
    const LOG10_2: f64 = std::f64::consts::LOG10_2;
    ((value.bits() as f64) * LOG10_2).ceil().max(1.0) as u64
}

/// `count` consecutive copies of `ordinal` on the stack.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Run {
    ordinal: Ordinal,
    count: BigUint,
}

impl Run {
    pub fn ordinal(&self) -> &Ordinal {
        &self.ordinal
    }

    pub fn count(&self) -> &BigUint {
        &self.count
    }
}

impl fmt::Debug for Run {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.ordinal, self.count)
    }
}

/// A point of a derivation: a stack of ordinals (front first) and a register.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MachineState {
    stack: Vec<Run>,
    reg: BigUint,
}

impl MachineState {
    /// The singleton stack `[alpha]` with register `x`.
    pub fn initial(alpha: Ordinal, x: BigUint) -> Self {
        MachineState {
            stack: vec![Run {
                ordinal: alpha,
                count: BigUint::one(),
            }],
            reg: x,
        }
    }

    /// Builds a state from runs listed front first. Zero counts are dropped and
    /// adjacent equal ordinals merged, so the result is canonical.
    pub fn new<I>(runs: I, reg: BigUint) -> Self
    where
        I: IntoIterator<Item = (Ordinal, BigUint)>,
    {
        let mut state = MachineState {
            stack: Vec::new(),
            reg,
        };
        for (ordinal, count) in runs {
            state.push(ordinal, count);
        }
        state
    }

    pub fn runs(&self) -> &[Run] {
        &self.stack
    }

    pub fn register(&self) -> &BigUint {
        &self.reg
    }

    pub fn is_halted(&self) -> bool {
        self.stack.is_empty()
    }

    /// The innermost call, i.e. the last stack element.
    pub fn top(&self) -> Option<&Ordinal> {
        self.stack.last().map(|r| &r.ordinal)
    }

    /// Number of ordinals on the logical (expanded) stack.
    pub fn stack_len(&self) -> BigUint {
        self.stack.iter().map(|r| &r.count).sum()
    }

    /// The same stack with `self`'s runs in front of `other`'s, keeping `other`'s register.
    pub fn concat(&self, other: &MachineState) -> MachineState {
        let runs = self.stack.iter().chain(&other.stack);
        MachineState::new(runs.map(|r| (r.ordinal.clone(), r.count.clone())), other.reg.clone())
    }

    fn push(&mut self, ordinal: Ordinal, count: BigUint) {
        if count.is_zero() {
            return;
        }
        match self.stack.last_mut() {
            Some(top) if top.ordinal == ordinal => top.count += count,
            _ => self.stack.push(Run { ordinal, count }),
        }
    }

    fn pop_one(&mut self) {
        let top = self.stack.last_mut().expect("pop on empty stack");
        top.count -= 1u32;
        if top.count.is_zero() {
            self.stack.pop();
        }
    }

    /// `ω^α₀ + … + ω^αₙ` over the logical stack; ε₀ contributes ε₀.
    pub fn measure(&self) -> Ordinal {
        if self.stack.iter().any(|run| run.ordinal.is_epsilon_zero()) {
            return Ordinal::epsilon_zero();
        }
        // Right to left: a monomial added in front of a sum either absorbs
        // into it, merges with its leading term, or becomes the new lead.
        let mut rev: Vec<Term> = Vec::new();
        for run in self.stack.iter().rev() {
            match rev.last_mut() {
                Some(lead) if run.ordinal < *lead.exponent() => {}
                Some(lead) if run.ordinal == *lead.exponent() => lead.coefficient += &run.count,
                _ => rev.push(Term::new(run.ordinal.clone(), run.count.clone())),
            }
        }
        rev.reverse();
        Ordinal::from_terms_unchecked(rev)
    }
}

impl fmt::Display for MachineState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, run) in self.stack.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if run.count.is_one() {
                write!(f, "{}", run.ordinal)?;
            } else {
                write!(f, "{} x{}", run.ordinal, run.count)?;
            }
        }
        write!(f, "], reg={}", self.reg)
    }
}

impl fmt::Debug for MachineState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MachineState({self})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalResult {
    /// The stack emptied after `steps` steps with register `value`.
    Value { value: BigUint, steps: u64 },
    FuelExhausted { last: MachineState, steps: u64 },
}

impl EvalResult {
    pub fn value(&self) -> Option<&BigUint> {
        match self {
            EvalResult::Value { value, .. } => Some(value),
            EvalResult::FuelExhausted { .. } => None,
        }
    }

    pub fn steps(&self) -> u64 {
        match self {
            EvalResult::Value { steps, .. } | EvalResult::FuelExhausted { steps, .. } => *steps,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub index: u64,
    pub state: MachineState,
    pub measure: Ordinal,
}

/// A base function together with resource limits.
#[derive(Debug, Clone, Copy)]
pub struct Machine<'f> {
    f: &'f BaseFunction,
    limits: Limits,
}

impl<'f> Machine<'f> {
    pub fn new(f: &'f BaseFunction) -> Self {
        Self::with_limits(f, Limits::default())
    }

    pub fn with_limits(f: &'f BaseFunction, limits: Limits) -> Self {
        Machine { f, limits }
    }

    pub fn base(&self) -> &'f BaseFunction {
        self.f
    }

    pub fn step(&self, s: &MachineState) -> Result<MachineState, StepError> {
        let mut next = s.clone();
        self.step_in_place(&mut next)?;
        Ok(next)
    }

    /// One step. On error the state is left untouched.
    pub fn step_in_place(&self, s: &mut MachineState) -> Result<(), StepError> {
        let Some(top) = s.top() else {
            return Ok(());
        };
        match top.kind() {
            OrdinalKind::Zero => {
                let y = self.f.eval(&s.reg)?;
                self.limits.check_register(&y)?;
                s.pop_one();
                s.reg = y;
            }
            OrdinalKind::Successor => {
                let beta = top.predecessor()?;
                let copies = &s.reg + 1u32;
                s.pop_one();
                s.push(beta, copies);
                s.reg = BigUint::one();
            }
            OrdinalKind::Limit => {
                let lowered = fund_seq_bounded(top, &s.reg, self.limits.tower_limit)?;
                s.pop_one();
                s.push(lowered, BigUint::one());
            }
        }
        Ok(())
    }

    /// Steps until the stack empties or `fuel` steps have been taken.
    pub fn run_to_empty(&self, state: MachineState, fuel: u64) -> Result<EvalResult, EvalError> {
        let mut s = state;
        let mut steps = 0u64;
        loop {
            if s.is_halted() {
                return Ok(EvalResult::Value { value: s.reg, steps });
            }
            if steps == fuel {
                return Ok(EvalResult::FuelExhausted { last: s, steps });
            }
            self.step_in_place(&mut s)
                .map_err(|source| EvalError { step: steps, source })?;
            steps += 1;
        }
    }

    /// `F^f_alpha(x)`, or fuel exhaustion.
    pub fn run(&self, alpha: &Ordinal, x: &BigUint, fuel: u64) -> Result<EvalResult, EvalError> {
        self.run_to_empty(MachineState::initial(alpha.clone(), x.clone()), fuel)
    }

    pub fn trace(&self, alpha: &Ordinal, x: &BigUint, fuel: u64) -> Trace<'f> {
        Trace {
            machine: *self,
            state: MachineState::initial(alpha.clone(), x.clone()),
            index: 0,
            fuel,
            started: false,
            done: false,
        }
    }

    /// `k`-fold application of `F^f_beta` to `seed`, with one fuel budget for all runs.
    pub fn iterate(&self, beta: &Ordinal, k: &BigUint, seed: &BigUint, fuel: u64) -> Result<EvalResult, EvalError> {
        let mut value = seed.clone();
        let mut used = 0u64;
        let mut remaining = k.clone();
        while !remaining.is_zero() {
            match self.run(beta, &value, fuel - used) {
                Ok(EvalResult::Value { value: v, steps }) => {
                    value = v;
                    used += steps;
                }
                Ok(EvalResult::FuelExhausted { last, steps }) => {
                    return Ok(EvalResult::FuelExhausted {
                        last,
                        steps: used + steps,
                    })
                }
                Err(e) => {
                    return Err(EvalError {
                        step: used + e.step,
                        source: e.source,
                    })
                }
            }
            remaining -= 1u32;
        }
        Ok(EvalResult::Value { value, steps: used })
    }
}

/// Lazily produced derivation. Yields the initial state first and stops after
/// the first empty stack or once `fuel` steps have been taken, so at most
/// `fuel + 1` entries. After an error it yields nothing more.
pub struct Trace<'f> {
    machine: Machine<'f>,
    state: MachineState,
    index: u64,
    fuel: u64,
    started: bool,
    done: bool,
}

impl Trace<'_> {
    fn entry(&self) -> TraceEntry {
        TraceEntry {
            index: self.index,
            state: self.state.clone(),
            measure: self.state.measure(),
        }
    }
}

impl Iterator for Trace<'_> {
    type Item = Result<TraceEntry, EvalError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(Ok(self.entry()));
        }
        if self.state.is_halted() || self.index == self.fuel {
            self.done = true;
            return None;
        }
        if let Err(source) = self.machine.step_in_place(&mut self.state) {
            self.done = true;
            return Some(Err(EvalError {
                step: self.index,
                source,
            }));
        }
        self.index += 1;
        Some(Ok(self.entry()))
    }
}

pub fn initial_state(alpha: Ordinal, x: BigUint) -> MachineState {
    MachineState::initial(alpha, x)
}

pub fn step(f: &BaseFunction, s: &MachineState) -> Result<MachineState, StepError> {
    Machine::new(f).step(s)
}

pub fn run(f: &BaseFunction, alpha: &Ordinal, x: &BigUint, fuel: u64) -> Result<EvalResult, EvalError> {
    Machine::new(f).run(alpha, x, fuel)
}

pub fn run_to_empty(f: &BaseFunction, state: MachineState, fuel: u64) -> Result<EvalResult, EvalError> {
    Machine::new(f).run_to_empty(state, fuel)
}

pub fn trace<'f>(f: &'f BaseFunction, alpha: &Ordinal, x: &BigUint, fuel: u64) -> Trace<'f> {
    Machine::new(f).trace(alpha, x, fuel)
}

pub fn iterate(f: &BaseFunction, beta: &Ordinal, k: &BigUint, seed: &BigUint, fuel: u64) -> Result<EvalResult, EvalError> {
    Machine::new(f).iterate(beta, k, seed, fuel)
}
