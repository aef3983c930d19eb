use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::poly::{Poly, NVARS};
use super::CoeffError;

/// A rational function `num / den` in `Z(d, m, j, r)`.
///
/// Canonical form: `gcd(num, den) = 1` in `Z[d,m,j,r]` (integer content
/// included) and the leading coefficient of `den` is positive. Zero is `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn zero() -> RatFunc {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> RatFunc {
        RatFunc::from_poly(Poly::one())
    }

    pub fn from_poly(num: Poly) -> RatFunc {
        RatFunc {
            num,
            den: Poly::one(),
        }
    }

    pub fn from_int(k: i64) -> RatFunc {
        RatFunc::from_poly(Poly::constant(BigInt::from(k)))
    }

    pub fn from_rational(q: &BigRational) -> RatFunc {
        RatFunc {
            num: Poly::constant(q.numer().clone()),
            den: Poly::constant(q.denom().clone()),
        }
    }

    pub fn var(v: usize) -> RatFunc {
        RatFunc::from_poly(Poly::var(v))
    }

    pub fn new(num: Poly, den: Poly) -> Result<RatFunc, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::ZeroDivisor);
        }
        Ok(RatFunc::canonical(num, den))
    }

    fn canonical(num: Poly, den: Poly) -> RatFunc {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = match den.constant_value() {
            Some(c) => Poly::constant(num.content().gcd(&c)),
            None => Poly::gcd(&num, &den),
        };
        let (mut num, mut den) = if g.constant_value().is_some_and(|c| c.is_one()) {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        if den.leading().is_some_and(|(_, c)| c.is_negative()) {
            num = -num;
            den = -den;
        }
        RatFunc { num, den }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(BigRational::new(n, d))
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.num.uses_var(v) || self.den.uses_var(v)
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if let (Some(a), Some(b)) = (self.to_rational(), other.to_rational()) {
            return RatFunc::from_rational(&(a + b));
        }
        if self.den == other.den {
            return RatFunc::canonical(&self.num + &other.num, self.den.clone());
        }
        RatFunc::canonical(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        if let (Some(a), Some(b)) = (self.to_rational(), other.to_rational()) {
            return RatFunc::from_rational(&(a * b));
        }
        if self.den.is_constant() && other.den.is_constant() {
            return RatFunc::canonical(&self.num * &other.num, &self.den * &other.den);
        }
        // Cross-cancel before multiplying to keep the gcd small.
        let g1 = Poly::gcd(&self.num, &other.den);
        let g2 = Poly::gcd(&other.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = other.den.div_exact(&g1).expect("gcd divides");
        let n2 = other.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        RatFunc::canonical(&n1 * &n2, &d1 * &d2)
    }

    pub fn scale_int(&self, k: &BigInt) -> RatFunc {
        RatFunc::canonical(self.num.scale(k), self.den.clone())
    }

    pub fn inv(&self) -> Result<RatFunc, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::ZeroDivisor);
        }
        Ok(RatFunc::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc, CoeffError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, n: u32) -> RatFunc {
        RatFunc {
            num: self.num.pow(n),
            den: self.den.pow(n),
        }
    }

    /// Substitutes the bound parameters; fails if the denominator vanishes.
    pub fn substitute(&self, values: &[Option<BigRational>; NVARS]) -> Result<RatFunc, CoeffError> {
        if values.iter().all(Option::is_none) {
            return Ok(self.clone());
        }
        let (n, nd) = self.num.substitute(values);
        let (d, dd) = self.den.substitute(values);
        if d.is_zero() {
            return Err(CoeffError::ZeroDivisor);
        }
        // (n/nd) / (d/dd) = (n*dd) / (d*nd)
        Ok(RatFunc::canonical(n.scale(&dd), d.scale(&nd)))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.constant_value().is_some_and(|c| c.is_one()) {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Poly| {
            if p.terms().len() > 1 || (!p.is_constant() && !p.terms()[0].1.is_one()) {
                format!("({})", p)
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}
