// Copyright (c) The fgh Authors
// SPDX-License-Identifier: Apache-2.0

//! Direct-recursion evaluation of `F^f_α`, independent of the machine:
//!
//! ```text
//! F_0(x)     = f(x)
//! F_{β+1}(x) = F_β^(x+1)(1)
//! F_γ(x)     = F_{γ[x]}(x)      γ a limit
//! ```
//!
//! Every call costs one unit of fuel. Native recursion only nests at the
//! successor clause and is capped by [`OracleLimits::max_depth`].

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::fundamental::fund_seq_bounded;
use crate::machine::{BaseError, BaseFunction, EvalResult, Limits, MachineState, StepError};
use crate::ordinal::{Ordinal, OrdinalError, OrdinalKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_depth: usize,
    pub machine: Limits,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_depth: 2_000,
            machine: Limits::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error(transparent)]
    Base(#[from] BaseError),
    #[error(transparent)]
    Ordinal(#[from] OrdinalError),
    #[error("register would reach about {digits} decimal digits (limit {limit})")]
    RegisterTooLarge { digits: u64, limit: usize },
    #[error("recursion nested deeper than {limit}")]
    RecursionLimit { limit: usize },
}

impl From<StepError> for OracleError {
    fn from(e: StepError) -> Self {
        match e {
            StepError::Base(e) => OracleError::Base(e),
            StepError::Ordinal(e) => OracleError::Ordinal(e),
            StepError::RegisterTooLarge { digits, limit } => OracleError::RegisterTooLarge { digits, limit },
        }
    }
}

/// `F^f_alpha(x)` by the defining equations. On fuel exhaustion the pending
/// call `F_β(y)` is reported as the state `([β], y)`.
pub fn eval_recursive(f: &BaseFunction, alpha: &Ordinal, x: &BigUint, fuel: u64) -> Result<EvalResult, OracleError> {
    eval_recursive_with(f, alpha, x, fuel, OracleLimits::default())
}

pub fn eval_recursive_with(
    f: &BaseFunction,
    alpha: &Ordinal,
    x: &BigUint,
    fuel: u64,
    limits: OracleLimits,
) -> Result<EvalResult, OracleError> {
    let mut oracle = Oracle {
        f,
        limits,
        fuel,
        calls: 0,
        depth: 0,
    };
    match oracle.eval(alpha.clone(), x.clone())? {
        Outcome::Done(value) => Ok(EvalResult::Value {
            value,
            steps: oracle.calls,
        }),
        Outcome::Stalled(alpha, x) => Ok(EvalResult::FuelExhausted {
            last: MachineState::initial(alpha, x),
            steps: oracle.calls,
        }),
    }
}

enum Outcome {
    Done(BigUint),
    Stalled(Ordinal, BigUint),
}

struct Oracle<'a> {
    f: &'a BaseFunction,
    limits: OracleLimits,
    fuel: u64,
    calls: u64,
    depth: usize,
}

impl Oracle<'_> {
    fn eval(&mut self, mut alpha: Ordinal, x: BigUint) -> Result<Outcome, OracleError> {
        loop {
            if self.calls == self.fuel {
                return Ok(Outcome::Stalled(alpha, x));
            }
            self.calls += 1;
            match alpha.kind() {
                OrdinalKind::Zero => {
                    let y = self.f.eval(&x)?;
                    self.limits.machine.check_register(&y)?;
                    return Ok(Outcome::Done(y));
                }
                OrdinalKind::Limit => {
                    alpha = fund_seq_bounded(&alpha, &x, self.limits.machine.tower_limit)?;
                }
                OrdinalKind::Successor => {
                    let beta = alpha.predecessor()?;
                    return self.iterate(&beta, &x + 1u32);
                }
            }
        }
    }

    fn iterate(&mut self, beta: &Ordinal, times: BigUint) -> Result<Outcome, OracleError> {
        if self.depth == self.limits.max_depth {
            return Err(OracleError::RecursionLimit {
                limit: self.limits.max_depth,
            });
        }
        self.depth += 1;
        let mut acc = BigUint::one();
        let mut left = times;
        while !left.is_zero() {
            match self.eval(beta.clone(), acc)? {
                Outcome::Done(v) => acc = v,
                stalled => {
                    self.depth -= 1;
                    return Ok(stalled);
                }
            }
            left -= 1u32;
        }
        self.depth -= 1;
        Ok(Outcome::Done(acc))
    }
}
