//! Exact coefficients: rational functions in the lowest-weight parameters
//! `d, m, j, r`, extended by the odd unit `chi` of `s(1/1)`.

mod parse;
mod poly;
mod ratfunc;
mod scalar;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use parse::{parse_ratfunc, parse_rational};
pub use poly::{Exps, Poly, NVARS, VAR_NAMES};
pub use ratfunc::RatFunc;
pub use scalar::{Scalar, ScalarParity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("scalar with nonzero odd part is not invertible")]
    OddInverse,
    #[error("parameter {0} bound more than once")]
    DuplicateBinding(Param),
    #[error("m = 0 (massless case) is not supported")]
    Massless,
    #[error("operands were produced under different parameter bindings")]
    BindingMismatch,
    #[error("parse error: {0}")]
    Parse(String),
}

/// A lowest-weight parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    D,
    M,
    J,
    R,
}

impl Param {
    pub const ALL: [Param; NVARS] = [Param::D, Param::M, Param::J, Param::R];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        VAR_NAMES[self.index()]
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = CoeffError;
    fn from_str(s: &str) -> Result<Param, CoeffError> {
        Param::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| CoeffError::Parse(format!("unknown parameter `{s}`")))
    }
}

/// One parameter either bound to an exact rational or left symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamBinding {
    pub param: Param,
    pub value: Option<BigRational>,
}

/// A consistent set of parameter bindings (each parameter at most once,
/// `m != 0`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Bindings {
    values: [Option<BigRational>; NVARS],
}

impl Bindings {
    /// All parameters symbolic.
    pub fn symbolic() -> Bindings {
        Bindings::default()
    }

    pub fn new(list: &[ParamBinding]) -> Result<Bindings, CoeffError> {
        let mut seen = [false; NVARS];
        let mut values: [Option<BigRational>; NVARS] = Default::default();
        for b in list {
            let i = b.param.index();
            if seen[i] {
                return Err(CoeffError::DuplicateBinding(b.param));
            }
            seen[i] = true;
            if b.param == Param::M && b.value.as_ref().is_some_and(|v| v.is_zero()) {
                return Err(CoeffError::Massless);
            }
            values[i] = b.value.clone();
        }
        Ok(Bindings { values })
    }

    pub fn from_pairs(pairs: &[(Param, BigRational)]) -> Result<Bindings, CoeffError> {
        let list: Vec<ParamBinding> = pairs
            .iter()
            .map(|(p, v)| ParamBinding {
                param: *p,
                value: Some(v.clone()),
            })
            .collect();
        Bindings::new(&list)
    }

    pub fn values(&self) -> &[Option<BigRational>; NVARS] {
        &self.values
    }

    pub fn get(&self, p: Param) -> Option<&BigRational> {
        self.values[p.index()].as_ref()
    }

    pub fn is_bound(&self, p: Param) -> bool {
        self.values[p.index()].is_some()
    }

    /// `chi^2 = m/2` under these bindings.
    pub fn chi_squared(&self) -> RatFunc {
        scalar::symbolic_chi_sq()
            .substitute(&self.values)
            .expect("m/2 has no poles")
    }

    /// A parameter's value as a scalar: the bound rational or the symbol.
    pub fn scalar(&self, p: Param) -> Scalar {
        match self.get(p) {
            Some(v) => Scalar::from_rational(v),
            None => Scalar::param(p),
        }
    }

    pub fn to_map(&self) -> BTreeMap<String, String> {
        Param::ALL
            .into_iter()
            .filter_map(|p| self.get(p).map(|v| (p.name().to_string(), v.to_string())))
            .collect()
    }
}

impl fmt::Display for Bindings {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = Param::ALL
            .into_iter()
            .map(|p| match self.get(p) {
                Some(v) => format!("{p}={v}"),
                None => format!("{p}=*"),
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl Serialize for Bindings {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_map().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Bindings {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Bindings, D::Error> {
        let map = BTreeMap::<String, String>::deserialize(d)?;
        let mut list = Vec::new();
        for (k, v) in map {
            let param: Param = k.parse().map_err(serde::de::Error::custom)?;
            let value = parse_rational(&v).map_err(serde::de::Error::custom)?;
            list.push(ParamBinding {
                param,
                value: Some(value),
            });
        }
        Bindings::new(&list).map_err(serde::de::Error::custom)
    }
}

/// Adds two scalars produced under the given bindings.
pub fn scalar_add(a: &(Bindings, Scalar), b: &(Bindings, Scalar)) -> Result<Scalar, CoeffError> {
    if a.0 != b.0 {
        return Err(CoeffError::BindingMismatch);
    }
    Ok(a.1.add(&b.1))
}

/// Multiplies two scalars produced under the given bindings, using the bound
/// value of `chi^2 = m/2`.
pub fn scalar_mul(a: &(Bindings, Scalar), b: &(Bindings, Scalar)) -> Result<Scalar, CoeffError> {
    if a.0 != b.0 {
        return Err(CoeffError::BindingMismatch);
    }
    Ok(a.1.mul_with(&b.1, &a.0.chi_squared()))
}
