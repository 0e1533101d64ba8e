// Copyright (c) The fgh Authors
// SPDX-License-Identifier: Apache-2.0

mod common;

use std::cmp::Ordering;

use common::{ordinal, p};
use fgh_core::enumerate::{enumerate, Bounds};
use fgh_core::{Ordinal, OrdinalKind};
use num_bigint::BigUint;
use proptest::prelude::*;

/// Cantor's definition: at the greatest exponent where the coefficients
/// differ, the larger coefficient wins. Exponents are ordered by the same rule.
fn cantor_cmp(a: &Ordinal, b: &Ordinal) -> Ordering {
    let coeff = |o: &Ordinal, e: &Ordinal| -> BigUint {
        o.terms()
            .unwrap()
            .iter()
            .find(|t| t.exponent() == e)
            .map(|t| t.coefficient().clone())
            .unwrap_or_default()
    };
    let mut exponents: Vec<Ordinal> = a
        .terms()
        .unwrap()
        .iter()
        .chain(b.terms().unwrap())
        .map(|t| t.exponent().clone())
        .collect();
    exponents.sort_by(|x, y| cantor_cmp(y, x));
    exponents.dedup();
    for e in &exponents {
        match coeff(a, e).cmp(&coeff(b, e)) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    Ordering::Equal
}

/// Below ω^ω, as coefficients indexed by the (natural) exponent. Addition one
/// monomial at a time: adding ω^k wipes every lower power.
fn vec_form(a: &Ordinal) -> Vec<u64> {
    let mut out = vec![0u64; 8];
    for t in a.terms().unwrap() {
        let k: usize = t.exponent().to_nat().unwrap().try_into().unwrap();
        out[k] = t.coefficient().try_into().unwrap();
    }
    out
}

fn vec_add(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut acc = a.to_vec();
    for k in (0..b.len()).rev() {
        for _ in 0..b[k] {
            for lower in acc.iter_mut().take(k) {
                *lower = 0;
            }
            acc[k] += 1;
        }
    }
    acc
}

#[test]
fn compare_agrees_with_cantor_definition() {
    let all = enumerate(Bounds {
        max_depth: 2,
        max_coefficient: 2,
        max_terms: 2,
    });
    assert_eq!(all.len(), 723);
    for a in &all {
        for b in &all {
            assert_eq!(a.cmp(b), cantor_cmp(a, b), "{a} vs {b}");
        }
    }
    assert_eq!(p("w^w*2").cmp(&p("w^(w+1)")), Ordering::Less);
}

#[test]
fn order_axioms_on_small_enumeration() {
    let all = enumerate(Bounds {
        max_depth: 1,
        ..Bounds::STANDARD
    });
    for a in &all {
        for b in &all {
            let ab = a.cmp(b);
            assert_eq!(ab, b.cmp(a).reverse());
            assert_eq!(ab == Ordering::Equal, a == b);
            for c in &all {
                if ab != Ordering::Greater && b <= c {
                    assert!(a <= c, "{a} <= {b} <= {c}");
                }
            }
        }
    }
}

#[test]
fn standard_enumeration_is_totally_ordered() {
    // enumerate() sorts with Ord; every pair must then be in order under the oracle
    // for neighbours, and canonical forms must be distinct.
    let all = enumerate(Bounds::STANDARD);
    for w in all.windows(2) {
        assert_eq!(cantor_cmp(&w[0], &w[1]), Ordering::Less, "{} {}", w[0], w[1]);
    }
}

#[test]
fn add_agrees_with_monomial_absorption() {
    let all = enumerate(Bounds {
        max_depth: 1,
        ..Bounds::STANDARD
    });
    for a in &all {
        for b in &all {
            assert_eq!(vec_form(&(a + b)), vec_add(&vec_form(a), &vec_form(b)), "{a} + {b}");
        }
    }
    assert_eq!(p("w^2 + w*3") + p("w*2 + 5"), p("w^2 + w*5 + 5"));
}

/// Coefficients add when the leading exponent of `b` occurs in `a`, so the
/// norm of a sum is bounded by the sum of norms, and by the max otherwise.
fn check_mc_of_sum(a: &Ordinal, b: &Ordinal) {
    let (ma, mb) = (a.max_coefficient().unwrap(), b.max_coefficient().unwrap());
    let ms = (a + b).max_coefficient().unwrap();
    assert!(ms <= &ma + &mb, "{a} + {b}");
    let merges = match (a.terms().unwrap(), b.terms().unwrap().first()) {
        (ta, Some(lead)) => ta.iter().any(|t| t.exponent() == lead.exponent()),
        _ => false,
    };
    if !merges {
        assert!(ms <= ma.max(mb), "{a} + {b}");
    }
}

#[test]
fn mc_of_sum_is_bounded_exhaustively() {
    let all = enumerate(Bounds {
        max_depth: 1,
        ..Bounds::STANDARD
    });
    for a in &all {
        for b in &all {
            check_mc_of_sum(a, b);
        }
    }
    // the max bound alone fails as soon as coefficients merge
    assert_eq!((p("1") + p("1")).max_coefficient().unwrap(), BigUint::from(2u32));
}

/// The largest numeral in the rendered text; `w` hides a 1 whenever the
/// ordinal is nonzero.
fn mc_from_text(a: &Ordinal) -> u64 {
    let text = a.to_string();
    let numerals = text
        .split(|c: char| !c.is_ascii_digit())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u64>().unwrap());
    numerals.chain((!a.is_zero()).then_some(1)).max().unwrap_or(0)
}

#[test]
fn mc_agrees_with_text_walk() {
    for a in enumerate(Bounds::STANDARD) {
        assert_eq!(a.max_coefficient().unwrap(), BigUint::from(mc_from_text(&a)), "{a}");
    }
    assert_eq!(p("w^w*3 + w*2").max_coefficient().unwrap(), BigUint::from(3u32));
}

proptest! {
    #[test]
    fn add_is_associative(a in ordinal(2), b in ordinal(2), c in ordinal(2)) {
        prop_assert_eq!((&a + &b) + c.clone(), &a + &(&b + &c));
    }

    #[test]
    fn add_identities_and_monotonicity(a in ordinal(3), b in ordinal(3)) {
        let zero = Ordinal::zero();
        prop_assert_eq!(&a + &zero, a.clone());
        prop_assert_eq!(&zero + &b, b.clone());
        let s = &a + &b;
        prop_assert!(a <= s);
        prop_assert!(b <= s);
        if !b.is_zero() {
            prop_assert!(a < s);
        }
    }

    #[test]
    fn omega_pow_strictly_monotone(a in ordinal(2), b in ordinal(2)) {
        let (wa, wb) = (a.omega_pow().unwrap(), b.omega_pow().unwrap());
        prop_assert_eq!(a.cmp(&b), wa.cmp(&wb));
    }

    #[test]
    fn predecessor_inverts_successor(a in ordinal(3)) {
        let succ = &a + &Ordinal::one();
        prop_assert_eq!(succ.kind(), OrdinalKind::Successor);
        let pred = succ.predecessor().unwrap();
        prop_assert!(pred < succ);
        prop_assert_eq!(&pred + &Ordinal::one(), succ);
        prop_assert_eq!(pred, a);
    }

    #[test]
    fn kind_matches_shape(a in ordinal(3)) {
        let expected = match a.terms().unwrap().last() {
            None => OrdinalKind::Zero,
            Some(t) if t.exponent().is_zero() => OrdinalKind::Successor,
            Some(_) => OrdinalKind::Limit,
        };
        prop_assert_eq!(a.kind(), expected);
        prop_assert!(a < Ordinal::epsilon_zero());
    }

    #[test]
    fn mc_of_sum_bounded(a in ordinal(3), b in ordinal(3)) {
        check_mc_of_sum(&a, &b);
    }
}
