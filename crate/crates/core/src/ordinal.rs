// Copyright (c) The fgh Authors
// SPDX-License-Identifier: Apache-2.0

//! Ordinals up to and including ε₀ in Cantor normal form.
//!
//! An [`Ordinal`] below ε₀ is a strictly decreasing sum `ω^e₁·c₁ + … + ω^eₙ·cₙ`
//! whose exponents are themselves ordinals below ε₀ and whose coefficients are
//! positive naturals of unbounded size. ε₀ is a separate constant that never
//! appears inside an exponent. Every value is kept canonical, so structural
//! equality coincides with ordinal equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Default bound on `n` for [`Ordinal::omega_tower`].
pub const DEFAULT_TOWER_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrdinalError {
    #[error("{0} is not a successor ordinal")]
    NotASuccessor(Ordinal),
    #[error("{0} is not a limit ordinal")]
    NotALimit(Ordinal),
    #[error("{0} is not finite")]
    NotFinite(Ordinal),
    #[error("{op} is undefined at e0")]
    ArgumentTooLarge { op: &'static str },
    #[error("omega tower of height {requested} exceeds the depth limit {limit}")]
    DepthExceeded { requested: BigUint, limit: usize },
    #[error("expected {lower} < {upper}")]
    NotBelow { lower: Ordinal, upper: Ordinal },
    #[error("malformed Cantor normal form: {0}")]
    Malformed(String),
}

/// One summand `ω^exponent · coefficient` of a Cantor normal form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub(crate) exponent: Ordinal,
    pub(crate) coefficient: BigUint,
}

impl Term {
    pub(crate) fn new(exponent: Ordinal, coefficient: BigUint) -> Self {
        debug_assert!(!coefficient.is_zero());
        debug_assert!(!exponent.is_epsilon_zero());
        Term {
            exponent,
            coefficient,
        }
    }

    pub fn exponent(&self) -> &Ordinal {
        &self.exponent
    }

    pub fn coefficient(&self) -> &BigUint {
        &self.coefficient
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w^({})*{}", self.exponent, self.coefficient)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Cnf(Arc<[Term]>),
    EpsilonZero,
}

/// An ordinal `≤ ε₀`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ordinal(Repr);

/// The three shapes an ordinal can take, which drive the step rule of the machine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrdinalKind {
    Zero,
    Successor,
    Limit,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal(Repr::Cnf(Vec::new().into()))
    }

    pub fn one() -> Self {
        Self::from_nat(1u32)
    }

    pub fn omega() -> Self {
        Ordinal(Repr::Cnf(vec![Term::new(Self::one(), BigUint::one())].into()))
    }

    pub fn epsilon_zero() -> Self {
        Ordinal(Repr::EpsilonZero)
    }

    pub fn from_nat(n: impl Into<BigUint>) -> Self {
        let n = n.into();
        if n.is_zero() {
            Self::zero()
        } else {
            Ordinal(Repr::Cnf(vec![Term::new(Self::zero(), n)].into()))
        }
    }

    /// `ω^exponent · coefficient`; zero when the coefficient is zero.
    pub fn monomial(exponent: Ordinal, coefficient: BigUint) -> Result<Self, OrdinalError> {
        if exponent.is_epsilon_zero() {
            return Err(OrdinalError::ArgumentTooLarge { op: "omega_pow" });
        }
        if coefficient.is_zero() {
            return Ok(Self::zero());
        }
        Ok(Ordinal(Repr::Cnf(vec![Term::new(exponent, coefficient)].into())))
    }

    /// Builds a Cantor normal form from `(exponent, coefficient)` pairs, rejecting
    /// anything that is not already canonical.
    pub fn from_terms<I>(terms: I) -> Result<Self, OrdinalError>
    where
        I: IntoIterator<Item = (Ordinal, BigUint)>,
    {
        let mut out: Vec<Term> = Vec::new();
        for (exponent, coefficient) in terms {
            if exponent.is_epsilon_zero() {
                return Err(OrdinalError::Malformed("e0 used as an exponent".into()));
            }
            if coefficient.is_zero() {
                return Err(OrdinalError::Malformed("zero coefficient".into()));
            }
            if let Some(prev) = out.last() {
                if prev.exponent <= exponent {
                    return Err(OrdinalError::Malformed(format!(
                        "exponent {exponent} does not decrease after {}",
                        prev.exponent
                    )));
                }
            }
            out.push(Term::new(exponent, coefficient));
        }
        Ok(Ordinal(Repr::Cnf(out.into())))
    }

    /// Callers guarantee the terms are canonical.
    pub(crate) fn from_terms_unchecked(terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].exponent > w[1].exponent));
        Ordinal(Repr::Cnf(terms.into()))
    }

    /// The Cantor normal form terms, leading term first; `None` for ε₀.
    pub fn terms(&self) -> Option<&[Term]> {
        match &self.0 {
            Repr::Cnf(terms) => Some(terms),
            Repr::EpsilonZero => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Cnf(t) if t.is_empty())
    }

    pub fn is_epsilon_zero(&self) -> bool {
        matches!(self.0, Repr::EpsilonZero)
    }

    /// True for ordinals below ω.
    pub fn is_finite(&self) -> bool {
        match &self.0 {
            Repr::Cnf(terms) => terms.iter().all(|t| t.exponent.is_zero()),
            Repr::EpsilonZero => false,
        }
    }

    pub fn kind(&self) -> OrdinalKind {
        match &self.0 {
            Repr::EpsilonZero => OrdinalKind::Limit,
            Repr::Cnf(terms) => match terms.last() {
                None => OrdinalKind::Zero,
                Some(t) if t.exponent.is_zero() => OrdinalKind::Successor,
                Some(_) => OrdinalKind::Limit,
            },
        }
    }

    /// The `β` with `β + 1 = self`.
    pub fn predecessor(&self) -> Result<Ordinal, OrdinalError> {
        if self.kind() != OrdinalKind::Successor {
            return Err(OrdinalError::NotASuccessor(self.clone()));
        }
        let Repr::Cnf(terms) = &self.0 else {
            unreachable!("e0 is a limit")
        };
        let mut terms = terms.to_vec();
        let last = terms.last_mut().expect("successor has a finite part");
        last.coefficient -= 1u32;
        if last.coefficient.is_zero() {
            terms.pop();
        }
        Ok(Ordinal(Repr::Cnf(terms.into())))
    }

    pub fn to_nat(&self) -> Result<BigUint, OrdinalError> {
        if !self.is_finite() {
            return Err(OrdinalError::NotFinite(self.clone()));
        }
        Ok(self
            .terms()
            .and_then(|t| t.first())
            .map(|t| t.coefficient.clone())
            .unwrap_or_default())
    }

    /// `ω^self`.
    pub fn omega_pow(&self) -> Result<Ordinal, OrdinalError> {
        Self::monomial(self.clone(), BigUint::one())
    }

    /// The maximal coefficient norm: the largest natural occurring anywhere in
    /// the normal form, exponents included.
    pub fn max_coefficient(&self) -> Result<BigUint, OrdinalError> {
        let Repr::Cnf(terms) = &self.0 else {
            return Err(OrdinalError::ArgumentTooLarge {
                op: "max_coefficient",
            });
        };
        let mut best = BigUint::zero();
        for t in terms.iter() {
            best = best.max(t.coefficient.clone());
            best = best.max(t.exponent.max_coefficient()?);
        }
        Ok(best)
    }

    /// How deeply ω is nested: 0 below ω, otherwise one more than the deepest
    /// exponent. `depth ≤ d` is the same as lying below `ω_{d+2}`.
    /// `None` for ε₀.
    pub fn nesting_depth(&self) -> Option<usize> {
        let terms = self.terms()?;
        if self.is_finite() {
            return Some(0);
        }
        let deepest = terms
            .iter()
            .map(|t| t.exponent.nesting_depth().expect("exponents are below e0"))
            .max()
            .unwrap_or(0);
        Some(deepest + 1)
    }

    /// `ω₀ = 0`, `ωₙ₊₁ = ω^ωₙ`, guarded by [`DEFAULT_TOWER_LIMIT`].
    pub fn omega_tower(n: usize) -> Result<Ordinal, OrdinalError> {
        Self::omega_tower_bounded(&BigUint::from(n), DEFAULT_TOWER_LIMIT)
    }

    pub fn omega_tower_bounded(n: &BigUint, limit: usize) -> Result<Ordinal, OrdinalError> {
        let height = n
            .to_usize()
            .filter(|&h| h <= limit)
            .ok_or_else(|| OrdinalError::DepthExceeded {
                requested: n.clone(),
                limit,
            })?;
        let mut tower = Self::zero();
        for _ in 0..height {
            tower = tower.omega_pow()?;
        }
        Ok(tower)
    }
}

fn cmp_terms(a: &[Term], b: &[Term]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let ord = x
            .exponent
            .cmp(&y.exponent)
            .then_with(|| x.coefficient.cmp(&y.coefficient));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    a.len().cmp(&b.len())
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::EpsilonZero, Repr::EpsilonZero) => Ordering::Equal,
            (Repr::EpsilonZero, Repr::Cnf(_)) => Ordering::Greater,
            (Repr::Cnf(_), Repr::EpsilonZero) => Ordering::Less,
            (Repr::Cnf(a), Repr::Cnf(b)) => cmp_terms(a, b),
        }
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Ordinal addition: the terms of the left operand below the leading exponent of
// the right operand are absorbed. ε₀ absorbs on both sides since nothing above
// it is representable.
impl Add<&Ordinal> for &Ordinal {
    type Output = Ordinal;

    fn add(self, rhs: &Ordinal) -> Ordinal {
        let (Repr::Cnf(left), Repr::Cnf(right)) = (&self.0, &rhs.0) else {
            return Ordinal::epsilon_zero();
        };
        let Some(lead) = right.first() else {
            return self.clone();
        };
        let mut out: Vec<Term> = left
            .iter()
            .take_while(|t| t.exponent > lead.exponent)
            .cloned()
            .collect();
        let mut rest = right.iter();
        if let Some(t) = left.get(out.len()) {
            if t.exponent == lead.exponent {
                out.push(Term::new(
                    t.exponent.clone(),
                    &t.coefficient + &lead.coefficient,
                ));
                rest.next();
            }
        }
        out.extend(rest.cloned());
        Ordinal(Repr::Cnf(out.into()))
    }
}

impl Add for Ordinal {
    type Output = Ordinal;

    fn add(self, rhs: Ordinal) -> Ordinal {
        &self + &rhs
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}
