//! The universal enveloping superalgebra: PBW monomials over the fixed
//! generator order and normal ordering of arbitrary words.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use crate::algebra::{koszul, AlgebraError, OmegaConvention, Parity, SuperAlgebra};
use crate::coeff::{RatFunc, Scalar};

/// Exponent vector over the algebra's generators. The derived `Ord` is
/// lexicographic on exponents, so the leading monomial of an element is its
/// maximum (`G` leads `K`, which leads `S`, in `s11`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PBWMonomial(Vec<u32>);

impl PBWMonomial {
    pub fn one(n: usize) -> PBWMonomial {
        PBWMonomial(vec![0; n])
    }

    pub fn generator(n: usize, g: usize) -> PBWMonomial {
        let mut e = vec![0; n];
        e[g] = 1;
        PBWMonomial(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> PBWMonomial {
        PBWMonomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn length(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The generators in order, with repetition.
    pub fn word(&self) -> Vec<usize> {
        let mut w = Vec::with_capacity(self.length() as usize);
        for (g, &e) in self.0.iter().enumerate() {
            w.extend(std::iter::repeat_n(g, e as usize));
        }
        w
    }

    pub fn first(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }

    /// Splits off the first factor: `self = g * rest`.
    pub fn split_first(&self) -> Option<(usize, PBWMonomial)> {
        let g = self.first()?;
        let mut rest = self.clone();
        rest.0[g] -= 1;
        Some((g, rest))
    }

    /// `g * self`, assuming `g` does not come after the first factor.
    pub fn prepend(&self, g: usize) -> PBWMonomial {
        let mut out = self.clone();
        out.0[g] += 1;
        out
    }

    pub fn degree(&self, alg: &SuperAlgebra) -> Vec<i32> {
        let mut d = vec![0; alg.grading_rank()];
        for (g, &e) in self.0.iter().enumerate() {
            for (acc, c) in d.iter_mut().zip(alg.degree(g)) {
                *acc += c * e as i32;
            }
        }
        d
    }

    pub fn parity(&self, alg: &SuperAlgebra) -> Parity {
        let odd: u32 = self
            .0
            .iter()
            .enumerate()
            .filter(|(g, _)| alg.parity(*g).is_odd())
            .map(|(_, &e)| e)
            .sum();
        if odd % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// Odd generators appear at most once.
    pub fn is_pbw(&self, alg: &SuperAlgebra) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(g, &e)| e <= 1 || !alg.parity(g).is_odd())
    }

    /// `G^2*K*S`, or `1` for the identity.
    pub fn format(&self, alg: &SuperAlgebra) -> String {
        if self.is_one() {
            return "1".into();
        }
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(g, &e)| {
                let name = &alg.generator(g).name;
                if e == 1 {
                    name.clone()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Inverse of [`PBWMonomial::format`]. Factors must already be in PBW order.
    pub fn parse(alg: &SuperAlgebra, s: &str) -> Result<PBWMonomial, AlgebraError> {
        let mut out = PBWMonomial::one(alg.len());
        let s = s.trim();
        if s == "1" {
            return Ok(out);
        }
        let mut last = None;
        for factor in s.split('*') {
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<u32>()
                        .map_err(|_| AlgebraError::UnknownGenerator(factor.to_string()))?,
                ),
                None => (factor, 1),
            };
            let g = alg.gen(name.trim())?;
            if last.is_some_and(|l| l >= g) || exp == 0 {
                return Err(AlgebraError::Inconsistent(format!(
                    "`{s}` is not a PBW monomial"
                )));
            }
            last = Some(g);
            out.0[g] = exp;
        }
        if !out.is_pbw(alg) {
            return Err(AlgebraError::Inconsistent(format!(
                "`{s}` repeats an odd generator"
            )));
        }
        Ok(out)
    }
}

/// Coefficients of envelope elements: an additive group with a rational
/// action.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale_rational(&self, q: &BigRational) -> Self;
}

impl Coefficient for BigRational {
    fn zero() -> Self {
        <BigRational as num_traits::Zero>::zero()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale_rational(&self, q: &BigRational) -> Self {
        self * q
    }
}

impl Coefficient for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        Scalar::add(self, other)
    }
    fn neg(&self) -> Self {
        Scalar::neg(self)
    }
    fn scale_rational(&self, q: &BigRational) -> Self {
        self.scale(&RatFunc::from_rational(q))
    }
}

/// A finite linear combination of PBW monomials. Zero coefficients are never
/// stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<C> {
    terms: BTreeMap<PBWMonomial, C>,
}

pub type EnvelopeElement = Element<BigRational>;

impl<C: Coefficient> Default for Element<C> {
    fn default() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: Coefficient> Element<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: PBWMonomial, c: C) -> Self {
        let mut out = Self::zero();
        out.add_term(m, &c);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (PBWMonomial, C)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.add_term(m, &c);
        }
        out
    }

    pub fn add_term(&mut self, m: PBWMonomial, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e = e.add(c);
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&PBWMonomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &PBWMonomial) -> Option<&C> {
        self.terms.get(m)
    }

    pub fn leading(&self) -> Option<(&PBWMonomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in other.terms() {
            self.add_term(m.clone(), c);
        }
    }

    pub fn add_scaled(&mut self, other: &Self, q: &BigRational) {
        for (m, c) in other.terms() {
            self.add_term(m.clone(), &c.scale_rational(q));
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        self.map(|c| c.scale_rational(q))
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Element<D> {
        Element::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn format(&self, alg: &SuperAlgebra) -> String
    where
        C: fmt::Display,
    {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| format!("({c})*{}", m.format(alg)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl EnvelopeElement {
    pub fn one(alg: &SuperAlgebra) -> EnvelopeElement {
        Element::monomial(PBWMonomial::one(alg.len()), BigRational::one())
    }

    pub fn generator(alg: &SuperAlgebra, g: usize) -> EnvelopeElement {
        Element::monomial(PBWMonomial::generator(alg.len(), g), BigRational::one())
    }
}

fn inversions(word: &[usize]) -> usize {
    let mut n = 0;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] > word[j] {
                n += 1;
            }
        }
    }
    n
}

fn is_misordered(alg: &SuperAlgebra, a: usize, b: usize) -> bool {
    a > b || (a == b && alg.parity(a).is_odd())
}

/// Normal-orders a word, always rewriting the leftmost misordered pair.
pub fn normal_order(alg: &SuperAlgebra, word: &[usize]) -> EnvelopeElement {
    normal_order_with(alg, word, |_| 0)
}

/// Normal-orders a word; `choose` receives the positions `i` of all
/// misordered pairs `(w[i], w[i+1])` and returns an index into that list.
///
/// Each rewrite either lowers the number of inversions at fixed length or
/// shortens the word, so pending words are processed in decreasing
/// `(length, inversions)` order and identical words merge before expansion.
pub fn normal_order_with(
    alg: &SuperAlgebra,
    word: &[usize],
    mut choose: impl FnMut(&[usize]) -> usize,
) -> EnvelopeElement {
    let half = BigRational::new(1.into(), 2.into());
    let mut pending: BTreeMap<(usize, usize, Vec<usize>), BigRational> = BTreeMap::new();
    pending.insert(
        (word.len(), inversions(word), word.to_vec()),
        BigRational::one(),
    );
    let mut out = EnvelopeElement::zero();
    let push = |pending: &mut BTreeMap<(usize, usize, Vec<usize>), BigRational>,
                    w: Vec<usize>,
                    c: BigRational| {
        if c.is_zero() {
            return;
        }
        let key = (w.len(), inversions(&w), w);
        let e = pending.entry(key).or_insert_with(BigRational::zero);
        *e += c;
    };
    while let Some(((_, _, w), c)) = pending.pop_last() {
        if c.is_zero() {
            continue;
        }
        let positions: Vec<usize> = (0..w.len().saturating_sub(1))
            .filter(|&i| is_misordered(alg, w[i], w[i + 1]))
            .collect();
        if positions.is_empty() {
            let mut exps = vec![0u32; alg.len()];
            for &g in &w {
                exps[g] += 1;
            }
            out.add_term(PBWMonomial(exps), &c);
            continue;
        }
        let i = positions[choose(&positions).min(positions.len() - 1)];
        let (a, b) = (w[i], w[i + 1]);
        let bracket = alg.bracket_gens(a, b);
        let bracket_coeff = if a == b { &c * &half } else { c.clone() };
        for (z, cz) in bracket.terms() {
            let mut nw = Vec::with_capacity(w.len() - 1);
            nw.extend_from_slice(&w[..i]);
            nw.push(z);
            nw.extend_from_slice(&w[i + 2..]);
            push(&mut pending, nw, &bracket_coeff * cz);
        }
        if a != b {
            let mut nw = w.clone();
            nw.swap(i, i + 1);
            let sign = BigRational::from_integer(koszul(alg.parity(a), alg.parity(b)).into());
            push(&mut pending, nw, c * sign);
        }
    }
    out
}

/// Normal-ordered product.
pub fn env_multiply(alg: &SuperAlgebra, a: &EnvelopeElement, b: &EnvelopeElement) -> EnvelopeElement {
    let mut out = EnvelopeElement::zero();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let mut w = ma.word();
            w.extend(mb.word());
            out.add_scaled(&normal_order(alg, &w), &(ca * cb));
        }
    }
    out
}

/// `omega` extended anti-multiplicatively with the unsigned product rule.
pub fn omega_extend(alg: &SuperAlgebra, a: &EnvelopeElement) -> EnvelopeElement {
    omega_extend_with(alg, a, OmegaConvention::Unsigned)
}

pub fn omega_extend_with(
    alg: &SuperAlgebra,
    a: &EnvelopeElement,
    convention: OmegaConvention,
) -> EnvelopeElement {
    let mut out = EnvelopeElement::zero();
    for (m, c) in a.terms() {
        let w = m.word();
        let mut sign = 1i64;
        if convention == OmegaConvention::Signed {
            // Reversing a word of odd factors costs one sign per odd pair.
            let odd = w.iter().filter(|&&g| alg.parity(g).is_odd()).count() as i64;
            if (odd * (odd - 1) / 2) % 2 == 1 {
                sign = -1;
            }
        }
        let image: Vec<usize> = w
            .iter()
            .rev()
            .map(|&g| alg.omega(g).expect("omega defined on catalog generators"))
            .collect();
        out.add_scaled(
            &normal_order(alg, &image),
            &(c * BigRational::from_integer(sign.into())),
        );
    }
    out
}
