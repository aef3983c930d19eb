//! Lie superalgebras given by structure constants, graded by `Z^n`, with the
//! triangular decomposition and the anti-automorphism `omega`.

mod catalog;
mod json;
mod validate;

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::{RatFunc, Scalar};

pub use catalog::{load_algebra, CATALOG};
pub use validate::{jacobi_residual, validate, JacobiFailure, OmegaConvention, OmegaReport, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("inconsistent algebra definition: {0}")]
    Inconsistent(String),
    #[error("algebra JSON: {0}")]
    Json(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Sign `(-1)^{p q}`.
pub fn koszul(p: Parity, q: Parity) -> i64 {
    if p.is_odd() && q.is_odd() {
        -1
    } else {
        1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Plus,
    Zero,
    Minus,
}

impl Part {
    /// Sign of the first nonzero degree component; all-zero degrees are Cartan-like.
    pub fn from_degree(degree: &[i32]) -> Part {
        match degree.iter().find(|&&c| c != 0) {
            Some(&c) if c > 0 => Part::Plus,
            Some(_) => Part::Minus,
            None => Part::Zero,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorInfo {
    pub name: String,
    pub parity: Parity,
    pub degree: Vec<i32>,
    pub part: Part,
}

/// A rational linear combination of generators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LieElement {
    terms: BTreeMap<usize, BigRational>,
}

impl LieElement {
    pub fn zero() -> LieElement {
        LieElement::default()
    }

    pub fn generator(g: usize) -> LieElement {
        LieElement::from_terms([(BigRational::one(), g)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BigRational, usize)>) -> LieElement {
        let mut out = LieElement::zero();
        for (c, g) in terms {
            out.add_term(&c, g);
        }
        out
    }

    pub fn add_term(&mut self, c: &BigRational, g: usize) {
        let entry = self.terms.entry(g).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.terms.iter().map(|(g, c)| (*g, c))
    }

    pub fn scaled(&self, k: &BigRational) -> LieElement {
        LieElement::from_terms(self.terms.iter().map(|(g, c)| (c * k, *g)))
    }

    pub fn plus(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(c, g);
        }
        out
    }
}

/// A `Z^n`-graded Lie superalgebra given by its structure constants.
///
/// Generators are stored in PBW order: the plus part first, then the zero
/// part, then the minus part. For odd `x, y` the bracket means the
/// anticommutator `{x, y}`.
#[derive(Clone, Debug)]
pub struct SuperAlgebra {
    name: String,
    grading_rank: usize,
    generators: Vec<GeneratorInfo>,
    table: Vec<Vec<LieElement>>,
    omega: Vec<Option<usize>>,
}

impl SuperAlgebra {
    /// Builds an algebra from its generators and the nonvanishing relations
    /// `[x, y] = sum c z`. Each unordered pair may be given once, in either
    /// order; the other order follows from graded skew-symmetry.
    pub fn from_relations(
        name: &str,
        grading_rank: usize,
        generators: Vec<GeneratorInfo>,
        relations: &[(String, String, Vec<(BigRational, String)>)],
    ) -> Result<SuperAlgebra, AlgebraError> {
        let n = generators.len();
        for (i, g) in generators.iter().enumerate() {
            if g.degree.len() != grading_rank {
                return Err(AlgebraError::Inconsistent(format!(
                    "generator {} has degree of length {}, expected {}",
                    g.name,
                    g.degree.len(),
                    grading_rank
                )));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(AlgebraError::Inconsistent(format!("duplicate generator {}", g.name)));
            }
            if i > 0 && generators[i - 1].part > g.part {
                return Err(AlgebraError::Inconsistent(
                    "generators must be listed plus part, zero part, minus part".into(),
                ));
            }
        }
        let lookup = |s: &str| {
            generators
                .iter()
                .position(|g| g.name == s)
                .ok_or_else(|| AlgebraError::UnknownGenerator(s.to_string()))
        };
        let mut table = vec![vec![LieElement::zero(); n]; n];
        let mut defined = vec![vec![false; n]; n];
        for (x, y, terms) in relations {
            let (i, j) = (lookup(x)?, lookup(y)?);
            let mut value = LieElement::zero();
            for (c, z) in terms {
                value.add_term(c, lookup(z)?);
            }
            if defined[i][j] {
                return Err(AlgebraError::Inconsistent(format!("[{x}, {y}] defined twice")));
            }
            let sign = -koszul(generators[i].parity, generators[j].parity);
            let mirrored = value.scaled(&BigRational::from_integer(sign.into()));
            if i == j && value != mirrored {
                return Err(AlgebraError::Inconsistent(format!(
                    "[{x}, {x}] must vanish for an even generator"
                )));
            }
            defined[i][j] = true;
            defined[j][i] = true;
            table[i][j] = value;
            table[j][i] = mirrored;
        }
        let mut alg = SuperAlgebra {
            name: name.to_string(),
            grading_rank,
            generators,
            table,
            omega: Vec::new(),
        };
        alg.omega = (0..n)
            .map(|i| alg.index_of(&omega_name(&alg.generators[i].name)))
            .collect();
        Ok(alg)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn grading_rank(&self) -> usize {
        self.grading_rank
    }

    pub fn generators(&self) -> &[GeneratorInfo] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generator(&self, i: usize) -> &GeneratorInfo {
        &self.generators[i]
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.generators[i].parity
    }

    pub fn part(&self, i: usize) -> Part {
        self.generators[i].part
    }

    pub fn degree(&self, i: usize) -> &[i32] {
        &self.generators[i].degree
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn gen(&self, name: &str) -> Result<usize, AlgebraError> {
        self.index_of(name)
            .ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))
    }

    pub fn parts(&self, part: Part) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.part(i) == part).collect()
    }

    pub fn count_parity(&self, parity: Parity) -> usize {
        self.generators.iter().filter(|g| g.parity == parity).count()
    }

    /// Structure constants of `[x, y]` for generators.
    pub fn bracket_gens(&self, x: usize, y: usize) -> &LieElement {
        &self.table[x][y]
    }

    /// Bilinear extension of the structure table.
    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> LieElement {
        let mut out = LieElement::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                let k = ca * cb;
                for (z, cz) in self.table[a][b].terms() {
                    out.add_term(&(&k * cz), z);
                }
            }
        }
        out
    }

    /// Bracket of scalar-weighted combinations:
    /// `[a x, b y] = (-1)^{p(x) p(b)} a b [x, y]`.
    pub fn bracket_scalar(
        &self,
        x: &[(Scalar, usize)],
        y: &[(Scalar, usize)],
        chi_sq: &RatFunc,
    ) -> Vec<(Scalar, usize)> {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (a, gx) in x {
            for (b, gy) in y {
                let mut k = a.mul_with(b, chi_sq);
                if b.is_odd() && self.parity(*gx).is_odd() {
                    k = k.neg();
                }
                for (z, cz) in self.table[*gx][*gy].terms() {
                    let t = k.scale(&RatFunc::from_rational(cz));
                    let e = acc.entry(z).or_insert_with(Scalar::zero);
                    *e = e.add(&t);
                }
            }
        }
        acc.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(g, c)| (c, g))
            .collect()
    }

    /// The anti-automorphism on generators; `None` if the generator has no
    /// partner under the naming rule.
    pub fn omega(&self, x: usize) -> Option<usize> {
        self.omega[x]
    }

    /// Same algebra with one bracket overridden (and its mirror).
    pub fn with_bracket(&self, x: usize, y: usize, value: LieElement) -> SuperAlgebra {
        let mut out = self.clone();
        let sign = -koszul(self.parity(x), self.parity(y));
        out.table[y][x] = value.scaled(&BigRational::from_integer(sign.into()));
        out.table[x][y] = value;
        out
    }

    pub fn validate(&self) -> ValidationReport {
        validate::validate(self)
    }

    pub fn format_element(&self, e: &LieElement) -> String {
        if e.is_zero() {
            return "0".into();
        }
        e.terms()
            .map(|(g, c)| {
                if c.is_one() {
                    self.generators[g].name.clone()
                } else {
                    format!("{}*{}", c, self.generators[g].name)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn to_json(&self) -> String {
        json::to_json(self)
    }

    pub fn from_json(s: &str) -> Result<SuperAlgebra, AlgebraError> {
        json::from_json(s)
    }
}

impl fmt::Display for SuperAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let even = self.count_parity(Parity::Even);
        let odd = self.count_parity(Parity::Odd);
        write!(
            f,
            "{} (Z^{}-graded, {} generators: {} even, {} odd)",
            self.name,
            self.grading_rank,
            self.len(),
            even,
            odd
        )
    }
}

/// `P <-> G`, `H <-> K`, `Q <-> S`, everything else fixed; all sign suffixes
/// flipped (`X+- -> X-+`).
pub fn omega_name(name: &str) -> String {
    let mut chars = name.chars();
    let base = match chars.next() {
        Some('P') => 'G',
        Some('G') => 'P',
        Some('H') => 'K',
        Some('K') => 'H',
        Some('Q') => 'S',
        Some('S') => 'Q',
        Some(c) => c,
        None => return String::new(),
    };
    let suffix: String = chars
        .map(|c| match c {
            '+' => '-',
            '-' => '+',
            c => c,
        })
        .collect();
    format!("{base}{suffix}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_names() {
        assert_eq!(omega_name("P"), "G");
        assert_eq!(omega_name("P+"), "G-");
        assert_eq!(omega_name("X+-"), "X-+");
        assert_eq!(omega_name("Q-"), "S+");
        assert_eq!(omega_name("D"), "D");
    }

    #[test]
    fn part_from_degree_tie_breaks() {
        assert_eq!(Part::from_degree(&[0, 1]), Part::Plus);
        assert_eq!(Part::from_degree(&[0, -1, 1]), Part::Minus);
        assert_eq!(Part::from_degree(&[0, 0, 0]), Part::Zero);
        assert_eq!(Part::from_degree(&[-2, 0]), Part::Minus);
    }
}
