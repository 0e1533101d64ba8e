// Copyright (c) The fgh Authors
// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use std::collections::BTreeMap;

use fgh_core::{parse, Ordinal};
use num_bigint::BigUint;
use proptest::prelude::*;

pub fn p(s: &str) -> Ordinal {
    parse(s).unwrap_or_else(|e| panic!("{s:?}: {e}"))
}

pub fn n(x: u64) -> BigUint {
    BigUint::from(x)
}

/// Canonical ordinal from arbitrary (exponent, coefficient) pairs; repeated
/// exponents keep the last coefficient.
pub fn canonical(terms: Vec<(Ordinal, u32)>) -> Ordinal {
    let map: BTreeMap<Ordinal, u32> = terms.into_iter().collect();
    Ordinal::from_terms(map.into_iter().rev().map(|(e, c)| (e, BigUint::from(c)))).unwrap()
}

/// Ordinals of nesting depth at most `depth` with small coefficients.
pub fn ordinal(depth: u32) -> BoxedStrategy<Ordinal> {
    ordinal_within(depth, 8, 5)
}

/// Like [`ordinal`], with naturals below `nat_bound`, coefficients below
/// `coeff_bound` and at most three terms per sum.
pub fn ordinal_within(depth: u32, nat_bound: u32, coeff_bound: u32) -> BoxedStrategy<Ordinal> {
    if depth == 0 {
        (0..nat_bound).prop_map(Ordinal::from_nat).boxed()
    } else {
        proptest::collection::vec((ordinal_within(depth - 1, nat_bound, coeff_bound), 1..coeff_bound), 0..4)
            .prop_map(canonical)
            .boxed()
    }
}

pub fn limit_ordinal(depth: u32) -> BoxedStrategy<Ordinal> {
    ordinal(depth)
        .prop_filter("limit", |a| a.kind() == fgh_core::OrdinalKind::Limit)
        .boxed()
}
