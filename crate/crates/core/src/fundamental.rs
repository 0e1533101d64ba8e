// Copyright (c) The fgh Authors
// SPDX-License-Identifier: Apache-2.0

//! Fundamental sequences `γ[x]` for limit ordinals up to ε₀.
//!
//! Writing the last term of `γ` as `ω^β·a` and `δ'` for `γ` with that
//! coefficient lowered to `a − 1`:
//!
//! * `β = β₀ + 1`: `γ[x] = δ' + ω^β₀·x`
//! * `β` a limit: `γ[x] = δ' + ω^(β[x])`
//! * `ε₀[x] = ω_x`

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::ordinal::{Ordinal, OrdinalError, OrdinalKind, Term, DEFAULT_TOWER_LIMIT};

pub fn fund_seq(g: &Ordinal, x: &BigUint) -> Result<Ordinal, OrdinalError> {
    fund_seq_bounded(g, x, DEFAULT_TOWER_LIMIT)
}

/// [`fund_seq`] with an explicit bound on the tower height used for `ε₀[x]`.
pub fn fund_seq_bounded(g: &Ordinal, x: &BigUint, tower_limit: usize) -> Result<Ordinal, OrdinalError> {
    if g.kind() != OrdinalKind::Limit {
        return Err(OrdinalError::NotALimit(g.clone()));
    }
    let Some(terms) = g.terms() else {
        return Ordinal::omega_tower_bounded(x, tower_limit);
    };
    let (last, init) = terms.split_last().expect("limits are nonzero");
    let mut out = init.to_vec();
    if !last.coefficient().is_one() {
        out.push(Term::new(last.exponent().clone(), last.coefficient() - 1u32));
    }
    let beta = last.exponent();
    match beta.kind() {
        OrdinalKind::Successor => {
            if !x.is_zero() {
                out.push(Term::new(beta.predecessor()?, x.clone()));
            }
        }
        OrdinalKind::Limit => {
            let lowered = fund_seq_bounded(beta, x, tower_limit)?;
            out.push(Term::new(lowered, BigUint::one()));
        }
        OrdinalKind::Zero => unreachable!("a zero exponent makes g a successor"),
    }
    Ok(Ordinal::from_terms_unchecked(out))
}

/// Checks `γ[mc(β) + 1] > β` for a limit `γ` and `β < γ`, both below ε₀.
pub fn notice1_holds(g: &Ordinal, b: &Ordinal) -> Result<bool, OrdinalError> {
    if g.is_epsilon_zero() {
        return Err(OrdinalError::ArgumentTooLarge { op: "notice1_holds" });
    }
    if b >= g {
        return Err(OrdinalError::NotBelow {
            lower: b.clone(),
            upper: g.clone(),
        });
    }
    let index = b.max_coefficient()? + 1u32;
    Ok(&fund_seq(g, &index)? > b)
}
