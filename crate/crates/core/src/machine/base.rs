// Copyright (c) The fgh Authors
// SPDX-License-Identifier: Apache-2.0

//! Base functions `f: ℕ → ℕ` given by finite descriptions.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::adversary::DerivedBase;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BaseError {
    #[error("f({x}) is outside the covered domain 0..{domain}")]
    OutOfDomain { x: BigUint, domain: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid base function spec {spec:?}: {message}")]
pub struct ParseBaseError {
    pub spec: String,
    pub message: String,
}

/// `x ↦ scale·x + offset` with `scale ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Affine {
    scale: BigUint,
    offset: BigUint,
}

impl Affine {
    pub fn new(scale: impl Into<BigUint>, offset: impl Into<BigUint>) -> Option<Self> {
        let scale = scale.into();
        if scale.is_zero() {
            return None;
        }
        Some(Affine {
            scale,
            offset: offset.into(),
        })
    }

    pub fn scale(&self) -> &BigUint {
        &self.scale
    }

    pub fn offset(&self) -> &BigUint {
        &self.offset
    }

    pub fn apply(&self, x: &BigUint) -> BigUint {
        &self.scale * x + &self.offset
    }
}

/// The parameter `f` of the hierarchy, `F^f_0 = f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseFunction {
    Succ,
    Affine(Affine),
    /// `values[x]` for `x < values.len()`, `tail(x)` beyond.
    Table { values: Vec<BigUint>, tail: Affine },
    /// Built from a descending sequence; see [`crate::adversary`].
    Derived(DerivedBase),
}

impl BaseFunction {
    pub fn affine(scale: u64, offset: u64) -> Self {
        BaseFunction::Affine(Affine::new(scale, offset).expect("scale must be at least 1"))
    }

    pub fn eval(&self, x: &BigUint) -> Result<BigUint, BaseError> {
        match self {
            BaseFunction::Succ => Ok(x + 1u32),
            BaseFunction::Affine(a) => Ok(a.apply(x)),
            BaseFunction::Table { values, tail } => {
                let listed = usize::try_from(x).ok().and_then(|i| values.get(i));
                Ok(listed.cloned().unwrap_or_else(|| tail.apply(x)))
            }
            BaseFunction::Derived(d) => d.eval(x),
        }
    }
}

impl From<DerivedBase> for BaseFunction {
    fn from(d: DerivedBase) -> Self {
        BaseFunction::Derived(d)
    }
}

/// `succ` | `affine:a,b` | `table:v0,v1,...;affine:a,b`
impl FromStr for BaseFunction {
    type Err = ParseBaseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |message: &str| ParseBaseError {
            spec: s.to_string(),
            message: message.to_string(),
        };
        let spec = s.trim();
        if spec == "succ" {
            return Ok(BaseFunction::Succ);
        }
        if let Some(rest) = spec.strip_prefix("affine:") {
            return parse_affine(rest).map(BaseFunction::Affine).map_err(|m| err(&m));
        }
        if let Some(rest) = spec.strip_prefix("table:") {
            let (list, tail) = rest
                .split_once(';')
                .ok_or_else(|| err("table needs ';affine:a,b' tail"))?;
            let tail = tail
                .trim()
                .strip_prefix("affine:")
                .ok_or_else(|| err("table tail must be 'affine:a,b'"))?;
            let tail = parse_affine(tail).map_err(|m| err(&m))?;
            let values = if list.trim().is_empty() {
                Vec::new()
            } else {
                list.split(',')
                    .map(|v| parse_nat(v).map_err(|m| err(&m)))
                    .collect::<Result<_, _>>()?
            };
            return Ok(BaseFunction::Table { values, tail });
        }
        Err(err("expected succ, affine:a,b or table:...;affine:a,b"))
    }
}

fn parse_nat(s: &str) -> Result<BigUint, String> {
    let s = s.trim();
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("{s:?} is not a natural number"));
    }
    Ok(s.parse().expect("decimal digits"))
}

fn parse_affine(s: &str) -> Result<Affine, String> {
    let (a, b) = s.split_once(',').ok_or("affine needs two arguments a,b")?;
    Affine::new(parse_nat(a)?, parse_nat(b)?).ok_or_else(|| "affine scale must be at least 1".to_string())
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "affine:{},{}", self.scale, self.offset)
    }
}

impl fmt::Display for BaseFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseFunction::Succ => f.write_str("succ"),
            BaseFunction::Affine(a) => a.fmt(f),
            BaseFunction::Table { values, tail } => {
                f.write_str("table:")?;
                for (i, v) in values.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, ";{tail}")
            }
            BaseFunction::Derived(d) => write!(f, "derived({} values, {:?})", d.values().len(), d.policy()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(x: u32) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(BaseFunction::Succ.eval(&n(5)).unwrap(), n(6));
        assert_eq!(BaseFunction::affine(2, 3).eval(&n(4)).unwrap(), n(11));
        let table = BaseFunction::Table {
            values: vec![n(7), n(8)],
            tail: Affine::new(1u32, 9u32).unwrap(),
        };
        assert_eq!(table.eval(&n(0)).unwrap(), n(7));
        assert_eq!(table.eval(&n(1)).unwrap(), n(8));
        assert_eq!(table.eval(&n(2)).unwrap(), n(11));
    }

    #[test]
    fn parse_specs() {
        assert_eq!("succ".parse::<BaseFunction>().unwrap(), BaseFunction::Succ);
        assert_eq!("affine:2,1".parse::<BaseFunction>().unwrap(), BaseFunction::affine(2, 1));
        let t: BaseFunction = "table:7, 8;affine:1,9".parse().unwrap();
        assert_eq!(t.to_string(), "table:7,8;affine:1,9");
        assert_eq!(t.to_string().parse::<BaseFunction>().unwrap(), t);
        for bad in ["", "pred", "affine:0,3", "affine:1", "affine:-1,2", "table:1,2", "table:1,x;affine:1,1"] {
            assert!(bad.parse::<BaseFunction>().is_err(), "{bad:?}");
        }
    }
}
