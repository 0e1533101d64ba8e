// Copyright (c) The fgh Authors
// SPDX-License-Identifier: Apache-2.0

//! Ordinal notations below ε₀ and the relativised fast-growing hierarchy.
//!
//! * [`ordinal`]: Cantor normal forms, comparison, addition, `ω^α`, the
//!   maximal-coefficient norm and the ω-tower.
//! * [`notation`]: the `w^w*3 + w*2 + 5` text format.
//! * [`fundamental`]: fundamental sequences `γ[x]`.
//! * [`machine`]: the small-step derivation machine computing `F^f_α(x)`,
//!   with its ordinal measure and traces.
//! * [`oracle`]: a direct-recursion evaluator for cross-checking the machine.
//! * [`adversary`]: turns a descending ordinal sequence into a base function
//!   whose derivation outruns the sequence, and checks that it does.

pub mod adversary;
pub mod enumerate;
pub mod fundamental;
pub mod machine;
pub mod notation;
pub mod oracle;
pub mod ordinal;

pub use adversary::{ClaimReport, ClaimStatus, DescendingSequence, GuardPolicy};
pub use fundamental::fund_seq;
pub use machine::{BaseFunction, EvalResult, MachineState, TraceEntry};
pub use notation::{parse, render};
pub use ordinal::{Ordinal, OrdinalError, OrdinalKind};
