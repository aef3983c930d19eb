use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::NVARS;
use super::ratfunc::RatFunc;
use super::{parse_ratfunc, Bindings, CoeffError, Param};

/// Parity of a homogeneous scalar.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarParity {
    Zero,
    Even,
    Odd,
    Mixed,
}

/// `even + odd * chi`, where `chi` is the odd lowest-weight parameter of
/// `s(1/1)` with `chi^2 = m/2`.
///
/// Scalars commute with each other (there is a single odd unit). When an odd
/// scalar is moved past an odd generator or an odd module vector the caller
/// applies the factor `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    even: RatFunc,
    odd: RatFunc,
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar {
            even: RatFunc::zero(),
            odd: RatFunc::zero(),
        }
    }

    pub fn one() -> Scalar {
        Scalar::from_ratfunc(RatFunc::one())
    }

    pub fn from_int(k: i64) -> Scalar {
        Scalar::from_ratfunc(RatFunc::from_int(k))
    }

    pub fn from_rational(q: &BigRational) -> Scalar {
        Scalar::from_ratfunc(RatFunc::from_rational(q))
    }

    pub fn from_ratfunc(even: RatFunc) -> Scalar {
        Scalar {
            even,
            odd: RatFunc::zero(),
        }
    }

    pub fn new(even: RatFunc, odd: RatFunc) -> Scalar {
        Scalar { even, odd }
    }

    pub fn chi() -> Scalar {
        Scalar {
            even: RatFunc::zero(),
            odd: RatFunc::one(),
        }
    }

    pub fn param(p: Param) -> Scalar {
        Scalar::from_ratfunc(RatFunc::var(p.index()))
    }

    pub fn even(&self) -> &RatFunc {
        &self.even
    }

    pub fn odd(&self) -> &RatFunc {
        &self.odd
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.odd.is_zero() && self.even.is_one()
    }

    pub fn parity(&self) -> ScalarParity {
        match (self.even.is_zero(), self.odd.is_zero()) {
            (true, true) => ScalarParity::Zero,
            (false, true) => ScalarParity::Even,
            (true, false) => ScalarParity::Odd,
            (false, false) => ScalarParity::Mixed,
        }
    }

    /// True when the scalar is odd, i.e. moving it past an odd object costs a sign.
    pub fn is_odd(&self) -> bool {
        self.parity() == ScalarParity::Odd
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        Scalar {
            even: self.even.add(&other.even),
            odd: self.odd.add(&other.odd),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        Scalar {
            even: self.even.sub(&other.even),
            odd: self.odd.sub(&other.odd),
        }
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            even: self.even.neg(),
            odd: self.odd.neg(),
        }
    }

    /// Product with `chi^2` replaced by `chi_sq` (the value of `m/2` under the
    /// current bindings).
    pub fn mul_with(&self, other: &Scalar, chi_sq: &RatFunc) -> Scalar {
        let mut even = self.even.mul(&other.even);
        if !self.odd.is_zero() && !other.odd.is_zero() {
            even = even.add(&self.odd.mul(&other.odd).mul(chi_sq));
        }
        let odd = if self.odd.is_zero() && other.odd.is_zero() {
            RatFunc::zero()
        } else {
            self.even.mul(&other.odd).add(&self.odd.mul(&other.even))
        };
        Scalar { even, odd }
    }

    /// Product with symbolic `chi^2 = m/2`.
    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.mul_with(other, &symbolic_chi_sq())
    }

    pub fn scale(&self, q: &RatFunc) -> Scalar {
        Scalar {
            even: self.even.mul(q),
            odd: self.odd.mul(q),
        }
    }

    pub fn invert(&self) -> Result<Scalar, CoeffError> {
        if !self.odd.is_zero() {
            return Err(CoeffError::OddInverse);
        }
        Ok(Scalar::from_ratfunc(self.even.inv()?))
    }

    /// Substitutes the bound parameters and re-canonicalizes.
    pub fn bind(&self, bindings: &Bindings) -> Result<Scalar, CoeffError> {
        let vals = bindings.values();
        Ok(Scalar {
            even: self.even.substitute(vals)?,
            odd: self.odd.substitute(vals)?,
        })
    }

    pub fn substitute(&self, vals: &[Option<BigRational>; NVARS]) -> Result<Scalar, CoeffError> {
        Ok(Scalar {
            even: self.even.substitute(vals)?,
            odd: self.odd.substitute(vals)?,
        })
    }
}

pub(crate) fn symbolic_chi_sq() -> RatFunc {
    RatFunc::var(Param::M.index())
        .div(&RatFunc::from_int(2))
        .expect("2 is invertible")
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parity() {
            ScalarParity::Zero => write!(f, "0"),
            ScalarParity::Even => write!(f, "{}", self.even),
            ScalarParity::Odd => write!(f, "({})*chi", self.odd),
            ScalarParity::Mixed => write!(f, "{} + ({})*chi", self.even, self.odd),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    even: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    odd: Option<String>,
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ScalarRepr {
            even: self.even.to_string(),
            odd: (!self.odd.is_zero()).then(|| self.odd.to_string()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        let repr = ScalarRepr::deserialize(d)?;
        let even = parse_ratfunc(&repr.even).map_err(serde::de::Error::custom)?;
        let odd = match repr.odd {
            Some(s) => parse_ratfunc(&s).map_err(serde::de::Error::custom)?,
            None => RatFunc::zero(),
        };
        Ok(Scalar { even, odd })
    }
}
