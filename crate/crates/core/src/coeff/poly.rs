//! Sparse multivariate polynomials over the integers in the lowest-weight
//! parameters `d, m, j, r`.
//!
//! Terms are kept sorted by descending lexicographic exponent order
//! (`d > m > j > r`), with no zero coefficients, so structural equality is
//! polynomial equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub const NVARS: usize = 4;
pub const VAR_NAMES: [&str; NVARS] = ["d", "m", "j", "r"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exps(pub [u16; NVARS]);

impl Exps {
    pub const ZERO: Exps = Exps([0; NVARS]);

    pub fn var(v: usize, e: u16) -> Exps {
        let mut out = [0; NVARS];
        out[v] = e;
        Exps(out)
    }

    fn add(self, other: Exps) -> Exps {
        let mut out = self.0;
        for (o, e) in out.iter_mut().zip(other.0) {
            *o += e;
        }
        Exps(out)
    }

    fn checked_sub(self, other: Exps) -> Option<Exps> {
        let mut out = self.0;
        for (o, e) in out.iter_mut().zip(other.0) {
            *o = o.checked_sub(e)?;
        }
        Some(Exps(out))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: Vec<(Exps, BigInt)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(Exps::ZERO, c)],
            }
        }
    }

    pub fn var(v: usize) -> Poly {
        Poly::monomial(Exps::var(v, 1), BigInt::one())
    }

    pub fn monomial(e: Exps, c: BigInt) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(e, c)] }
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exps, BigInt)>) -> Poly {
        let mut acc: BTreeMap<Exps, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *acc.entry(e).or_insert_with(BigInt::zero) += c;
        }
        Poly {
            terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(Exps, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        match self.terms.as_slice() {
            [] => true,
            [(e, _)] => e.is_zero(),
            _ => false,
        }
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(e, c)] if e.is_zero() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Exps, BigInt)> {
        self.terms.first()
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    fn mul_term(&self, e: Exps, c: &BigInt) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(f, k)| (f.add(e), k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Nonnegative gcd of the integer coefficients.
    pub fn content(&self) -> BigInt {
        self.terms
            .iter()
            .fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
    }

    pub fn div_exact_int(&self, c: &BigInt) -> Option<Poly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, k) in &self.terms {
            let (q, r) = k.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            terms.push((*e, q));
        }
        Some(Poly { terms })
    }

    /// Exact division; `None` when `other` does not divide `self` in `Z[d,m,j,r]`.
    pub fn div_exact(&self, other: &Poly) -> Option<Poly> {
        assert!(!other.is_zero(), "polynomial division by zero");
        if let Some(c) = other.constant_value() {
            return self.div_exact_int(&c);
        }
        let (lead_e, lead_c) = other.leading().cloned()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((e, c)) = rem.leading().cloned() {
            let qe = e.checked_sub(lead_e)?;
            let (qc, r) = c.div_rem(&lead_c);
            if !r.is_zero() {
                return None;
            }
            rem = &rem - &other.mul_term(qe, &qc);
            quot.push((qe, qc));
        }
        Some(Poly { terms: quot })
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.iter().any(|(e, _)| e.0[v] > 0)
    }

    pub fn degree_in(&self, v: usize) -> u16 {
        self.terms.iter().map(|(e, _)| e.0[v]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(e, _)| e.0.iter().map(|&x| x as u32).sum())
            .max()
            .unwrap_or(0)
    }

    /// Coefficient of `x_v^k`, as a polynomial free of `x_v`.
    pub fn coeff_in(&self, v: usize, k: u16) -> Poly {
        Poly::from_terms(self.terms.iter().filter(|(e, _)| e.0[v] == k).map(|(e, c)| {
            let mut f = *e;
            f.0[v] = 0;
            (f, c.clone())
        }))
    }

    fn coeffs_in(&self, v: usize) -> Vec<Poly> {
        let mut buckets: BTreeMap<u16, Vec<(Exps, BigInt)>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut f = *e;
            f.0[v] = 0;
            buckets.entry(e.0[v]).or_default().push((f, c.clone()));
        }
        buckets.into_values().map(Poly::from_terms).collect()
    }

    /// The gcd of the coefficients with respect to `x_v`.
    fn content_in(&self, v: usize) -> Poly {
        let mut g = Poly::zero();
        for c in self.coeffs_in(v) {
            g = Poly::gcd(&g, &c);
            if g.is_constant() && g.constant_value().is_some_and(|k| k.is_one()) {
                break;
            }
        }
        g
    }

    fn primitive_in(&self, v: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let c = self.content_in(v);
        self.div_exact(&c).expect("content divides")
    }

    fn prem(a: &Poly, b: &Poly, v: usize) -> Poly {
        let db = b.degree_in(v);
        let lc_b = b.coeff_in(v, db);
        let mut r = a.clone();
        while !r.is_zero() && r.degree_in(v) >= db {
            let dr = r.degree_in(v);
            let lc_r = r.coeff_in(v, dr);
            let shift = Poly::monomial(Exps::var(v, dr - db), BigInt::one());
            r = &(&lc_b * &r) - &(&(&lc_r * &shift) * b);
        }
        r
    }

    fn with_positive_lead(self) -> Poly {
        match self.leading() {
            Some((_, c)) if c.is_negative() => -self,
            _ => self,
        }
    }

    /// Greatest common divisor in `Z[d,m,j,r]`, integer content included,
    /// normalized to a positive leading coefficient.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.clone().with_positive_lead();
        }
        if b.is_zero() {
            return a.clone().with_positive_lead();
        }
        match (a.constant_value(), b.constant_value()) {
            (Some(x), Some(y)) => return Poly::constant(x.gcd(&y)),
            (Some(x), None) => return Poly::constant(x.gcd(&b.content())),
            (None, Some(y)) => return Poly::constant(a.content().gcd(&y)),
            (None, None) => {}
        }
        let v = (0..NVARS)
            .find(|&v| a.uses_var(v) || b.uses_var(v))
            .expect("nonconstant polynomial uses a variable");
        if !a.uses_var(v) {
            return Poly::gcd(a, &b.content_in(v));
        }
        if !b.uses_var(v) {
            return Poly::gcd(&a.content_in(v), b);
        }
        let ca = a.content_in(v);
        let cb = b.content_in(v);
        let content = Poly::gcd(&ca, &cb);
        let mut p = a.div_exact(&ca).expect("content divides");
        let mut q = b.div_exact(&cb).expect("content divides");
        if p.degree_in(v) < q.degree_in(v) {
            std::mem::swap(&mut p, &mut q);
        }
        let prim = loop {
            let r = Poly::prem(&p, &q, v);
            if r.is_zero() {
                break q.primitive_in(v);
            }
            if r.degree_in(v) == 0 {
                break Poly::one();
            }
            p = q;
            q = r.primitive_in(v);
        };
        (&content * &prim).with_positive_lead()
    }

    /// Substitutes the bound parameters. Returns `(p, den)` with the
    /// substituted polynomial equal to `p / den`, `den > 0`.
    pub fn substitute(&self, values: &[Option<BigRational>; NVARS]) -> (Poly, BigInt) {
        let mut acc: BTreeMap<Exps, BigRational> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut coeff = BigRational::from_integer(c.clone());
            let mut f = *e;
            for v in 0..NVARS {
                if let Some(val) = &values[v] {
                    if f.0[v] > 0 {
                        coeff *= num_traits::pow(val.clone(), f.0[v] as usize);
                        f.0[v] = 0;
                    }
                }
            }
            *acc.entry(f).or_insert_with(BigRational::zero) += coeff;
        }
        let den = acc
            .values()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let poly = Poly::from_terms(
            acc.into_iter()
                .map(|(e, c)| (e, c.numer() * (&den / c.denom()))),
        );
        (poly, den)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, other: &Poly) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Poly { terms: out }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for (_, c) in &mut self.terms {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -self.clone()
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, other: &Poly) -> Poly {
        self + &(-other)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        Poly::from_terms(self.terms.iter().flat_map(|(e, c)| {
            other.terms.iter().map(move |(f, k)| (e.add(*f), c * k))
        }))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || e.is_zero() {
                factors.push(mag.to_string());
            }
            for (v, &k) in e.0.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(VAR_NAMES[v].to_string()),
                    _ => factors.push(format!("{}^{}", VAR_NAMES[v], k)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d() -> Poly {
        Poly::var(0)
    }
    fn m() -> Poly {
        Poly::var(1)
    }
    fn int(k: i64) -> Poly {
        Poly::constant(BigInt::from(k))
    }

    #[test]
    fn gcd_recovers_common_factor() {
        // (2d + 1)(d - m) and (2d + 1)(m + 3)
        let f = &(&d().scale(&2.into()) + &int(1));
        let a = f * &(&d() - &m());
        let b = f * &(&m() + &int(3));
        assert_eq!(Poly::gcd(&a, &b), f.clone());
    }

    #[test]
    fn gcd_includes_integer_content() {
        let a = &d().scale(&6.into()) + &int(4);
        let b = int(10);
        assert_eq!(Poly::gcd(&a, &b), int(2));
    }

    #[test]
    fn gcd_coprime_is_one() {
        let a = &(&d() * &d()) + &int(1);
        let b = &d() + &m();
        assert_eq!(Poly::gcd(&a, &b), int(1));
    }

    #[test]
    fn exact_division_detects_remainder() {
        let a = &(&d() * &d()) - &int(1);
        let b = &d() - &int(1);
        assert_eq!(a.div_exact(&b), Some(&d() + &int(1)));
        assert_eq!(b.div_exact(&(&d() + &int(2))), None);
    }

    #[test]
    fn substitution_tracks_denominator() {
        let p = &d().scale(&2.into()) + &m();
        let mut vals: [Option<BigRational>; NVARS] = Default::default();
        vals[0] = Some(BigRational::new(1.into(), 3.into()));
        let (q, den) = p.substitute(&vals);
        // 2/3 + m = (3m + 2)/3
        assert_eq!(den, BigInt::from(3));
        assert_eq!(q, &m().scale(&3.into()) + &int(2));
    }

    #[test]
    fn display_is_readable() {
        let p = &(&d().scale(&(-2).into()) * &m()) + &int(1);
        assert_eq!(p.to_string(), "-2*d*m + 1");
    }
}
