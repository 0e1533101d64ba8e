// Copyright (c) The fgh Authors
// SPDX-License-Identifier: Apache-2.0

//! Exhaustive enumeration of small Cantor normal forms, used by the
//! property checks.

use num_bigint::BigUint;

use crate::ordinal::{Ordinal, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Maximum [`Ordinal::nesting_depth`].
    pub max_depth: usize,
    /// Maximum coefficient, which also bounds the naturals used as exponents.
    pub max_coefficient: u32,
    /// Maximum number of terms in every sum, exponents included.
    pub max_terms: usize,
}

impl Bounds {
    /// Below ω_4, coefficients up to 3, at most two terms per sum: 20,101 ordinals.
    pub const STANDARD: Bounds = Bounds {
        max_depth: 2,
        max_coefficient: 3,
        max_terms: 2,
    };
}

/// Every ordinal within `bounds`, in increasing order.
pub fn enumerate(bounds: Bounds) -> Vec<Ordinal> {
    let mut level: Vec<Ordinal> = (0..=bounds.max_coefficient).map(Ordinal::from_nat).collect();
    for _ in 0..bounds.max_depth {
        let mut exponents = level;
        exponents.sort_unstable_by(|a, b| b.cmp(a));
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        extend_sums(&exponents, bounds, &mut prefix, &mut out);
        level = out;
    }
    level.sort();
    level
}

fn extend_sums(exponents: &[Ordinal], bounds: Bounds, prefix: &mut Vec<Term>, out: &mut Vec<Ordinal>) {
    out.push(Ordinal::from_terms_unchecked(prefix.clone()));
    if prefix.len() == bounds.max_terms {
        return;
    }
    for (i, e) in exponents.iter().enumerate() {
        for c in 1..=bounds.max_coefficient {
            prefix.push(Term::new(e.clone(), BigUint::from(c)));
            extend_sums(&exponents[i + 1..], bounds, prefix, out);
            prefix.pop();
        }
    }
}
