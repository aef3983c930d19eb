//! Lowest-weight Verma modules `V = U(g+) v0`.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, LieElement, Parity, Part, SuperAlgebra};
use crate::coeff::{Bindings, CoeffError, Param, RatFunc, Scalar};
use crate::envelope::{Element, PBWMonomial};

/// A module vector: plus-part monomials with scalar coefficients, each
/// implicitly applied to `v0`.
pub type ModuleVector = Element<Scalar>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VermaError {
    #[error("m = 0 (massless case) is not supported")]
    Massless,
    #[error("parameter {0} does not occur in the lowest weight of {1}")]
    UnusedParameter(Param, String),
    #[error("no eigenvalue rule for zero-part generator {0}")]
    NoEigenvalueRule(String),
    #[error("even raising generator {0} has level 0, so levels would be infinite")]
    InfiniteLevel(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// Multidegree of a homogeneous vector with its level and `D`-eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightLabel {
    pub degree: Vec<i32>,
    pub level: i32,
    pub d_eigenvalue: Scalar,
}

/// A Verma module: the algebra, the lowest-weight data, and a memo of the
/// action on basis monomials.
pub struct VermaModule {
    alg: SuperAlgebra,
    bindings: Bindings,
    chi_sq: RatFunc,
    eigenvalues: Vec<Option<Scalar>>,
    has_chi: bool,
    params: Vec<Param>,
    memo: RefCell<HashMap<(usize, PBWMonomial), ModuleVector>>,
}

impl std::fmt::Debug for VermaModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("VermaModule")
            .field("algebra", &self.alg.name())
            .field("bindings", &self.bindings.to_map())
            .finish()
    }
}

/// Builds the lowest-weight data:
/// `D v0 = -d v0`, `M v0 = m v0`, `J v0 = -j v0`, `R v0 = r v0` (or `2r` for
/// `s22hat`), `X v0 = chi v0`; every minus-part generator kills `v0`.
pub fn make_module(alg: &SuperAlgebra, bindings: &Bindings) -> Result<VermaModule, VermaError> {
    if bindings.get(Param::M).is_some_and(num_traits::Zero::is_zero) {
        return Err(VermaError::Massless);
    }
    let mut eigenvalues = vec![None; alg.len()];
    let mut params = vec![Param::D, Param::M];
    let mut has_chi = false;
    for g in alg.parts(Part::Zero) {
        let name = alg.generator(g).name.as_str();
        let value = match name {
            "D" => bindings.scalar(Param::D).neg(),
            "M" => bindings.scalar(Param::M),
            "J" => {
                params.push(Param::J);
                bindings.scalar(Param::J).neg()
            }
            "R" => {
                params.push(Param::R);
                let r = bindings.scalar(Param::R);
                if alg.name() == "s22hat" {
                    r.add(&r)
                } else {
                    r
                }
            }
            "X" if alg.parity(g).is_odd() => {
                has_chi = true;
                Scalar::chi()
            }
            _ => return Err(VermaError::NoEigenvalueRule(name.to_string())),
        };
        eigenvalues[g] = Some(value);
    }
    params.sort();
    for p in Param::ALL {
        if bindings.is_bound(p) && !params.contains(&p) {
            return Err(VermaError::UnusedParameter(p, alg.name().to_string()));
        }
    }
    for g in alg.parts(Part::Plus) {
        if alg.degree(g)[0] <= 0 && !alg.parity(g).is_odd() {
            return Err(VermaError::InfiniteLevel(alg.generator(g).name.clone()));
        }
    }
    Ok(VermaModule {
        alg: alg.clone(),
        bindings: bindings.clone(),
        chi_sq: bindings.chi_squared(),
        eigenvalues,
        has_chi,
        params,
        memo: RefCell::new(HashMap::new()),
    })
}

impl VermaModule {
    pub fn algebra(&self) -> &SuperAlgebra {
        &self.alg
    }

    pub fn bindings(&self) -> &Bindings {
        &self.bindings
    }

    /// `chi^2 = m/2` under the module's bindings.
    pub fn chi_squared(&self) -> &RatFunc {
        &self.chi_sq
    }

    /// Whether the lowest weight carries the odd eigenvalue `chi`.
    pub fn has_chi(&self) -> bool {
        self.has_chi
    }

    /// Parameters occurring in the lowest weight.
    pub fn parameters(&self) -> &[Param] {
        &self.params
    }

    /// True when every parameter of the lowest weight is bound.
    pub fn is_numeric(&self) -> bool {
        self.params.iter().all(|&p| self.bindings.is_bound(p))
    }

    pub fn unbound_parameters(&self) -> Vec<Param> {
        self.params
            .iter()
            .copied()
            .filter(|&p| !self.bindings.is_bound(p))
            .collect()
    }

    pub fn annihilators(&self) -> Vec<usize> {
        self.alg.parts(Part::Minus)
    }

    pub fn eigenvalue(&self, g: usize) -> Option<&Scalar> {
        self.eigenvalues[g].as_ref()
    }

    pub fn v0(&self) -> ModuleVector {
        ModuleVector::monomial(PBWMonomial::one(self.alg.len()), Scalar::one())
    }

    /// `mono v0` with coefficient 1.
    pub fn basis_vector(&self, mono: &PBWMonomial) -> ModuleVector {
        ModuleVector::monomial(mono.clone(), Scalar::one())
    }

    /// `chi^{p(mono)} mono v0`: the basis of the even sector over the
    /// parameter field. Without `chi` this is just `mono v0`.
    pub fn sector_vector(&self, mono: &PBWMonomial) -> ModuleVector {
        let c = if self.has_chi && mono.parity(&self.alg).is_odd() {
            Scalar::chi()
        } else {
            Scalar::one()
        };
        ModuleVector::monomial(mono.clone(), c)
    }

    /// Plus-part monomials whose first degree component is `n`, leading
    /// monomial first.
    pub fn basis_at_level(&self, n: u32) -> Vec<PBWMonomial> {
        let plus = self.alg.parts(Part::Plus);
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.alg.len()];
        self.enumerate(&plus, 0, n as i32, &mut exps, &mut out);
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    fn enumerate(
        &self,
        plus: &[usize],
        k: usize,
        remaining: i32,
        exps: &mut Vec<u32>,
        out: &mut Vec<PBWMonomial>,
    ) {
        if k == plus.len() {
            if remaining == 0 {
                out.push(PBWMonomial::from_exponents(exps.clone()));
            }
            return;
        }
        let g = plus[k];
        let f = self.alg.degree(g)[0];
        let max = if self.alg.parity(g).is_odd() {
            1
        } else {
            (remaining / f) as u32
        };
        for e in 0..=max {
            let used = f * e as i32;
            if used > remaining {
                break;
            }
            exps[g] = e;
            self.enumerate(plus, k + 1, remaining - used, exps, out);
        }
        exps[g] = 0;
    }

    /// Weight spaces at level `n`: basis monomials grouped by full
    /// multidegree.
    pub fn weight_spaces(&self, n: u32) -> BTreeMap<Vec<i32>, Vec<PBWMonomial>> {
        let mut out: BTreeMap<Vec<i32>, Vec<PBWMonomial>> = BTreeMap::new();
        for m in self.basis_at_level(n) {
            out.entry(m.degree(&self.alg)).or_default().push(m);
        }
        out
    }

    /// The basis of the weight space with the given multidegree.
    pub fn weight_space(&self, degree: &[i32]) -> Vec<PBWMonomial> {
        if degree.first().is_none_or(|&l| l < 0) {
            return Vec::new();
        }
        self.weight_spaces(degree[0] as u32)
            .remove(degree)
            .unwrap_or_default()
    }

    pub fn weight_label(&self, degree: &[i32]) -> WeightLabel {
        let level = degree.first().copied().unwrap_or(0);
        WeightLabel {
            degree: degree.to_vec(),
            level,
            d_eigenvalue: self
                .bindings
                .scalar(Param::D)
                .neg()
                .add(&Scalar::from_int(level as i64)),
        }
    }

    pub fn weight_of(&self, mono: &PBWMonomial) -> WeightLabel {
        self.weight_label(&mono.degree(&self.alg))
    }

    /// The common multidegree of `v`'s monomials, if `v` is nonzero and
    /// homogeneous.
    pub fn degree_of(&self, v: &ModuleVector) -> Option<Vec<i32>> {
        let mut degrees = v.terms().map(|(m, _)| m.degree(&self.alg));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// `c * v` for a scalar `c` standing to the left of `v`.
    pub fn scalar_mul(&self, c: &Scalar, v: &ModuleVector) -> ModuleVector {
        v.map(|x| c.mul_with(x, &self.chi_sq))
    }

    /// `g v`. An odd `g` passing an odd scalar picks up a sign.
    pub fn act(&self, g: usize, v: &ModuleVector) -> ModuleVector {
        let odd = self.alg.parity(g).is_odd();
        let mut out = ModuleVector::zero();
        for (m, c) in v.terms() {
            let c = if odd {
                Scalar::new(c.even().clone(), c.odd().neg())
            } else {
                c.clone()
            };
            let image = self.act_mono(g, m);
            out.add_assign(&self.scalar_mul(&c, &image));
        }
        out
    }

    /// Applies the word `w[0] w[1] ... w[k-1]` to `v`: the last letter acts
    /// first.
    pub fn apply_word(&self, word: &[usize], v: &ModuleVector) -> ModuleVector {
        let mut out = v.clone();
        for &g in word.iter().rev() {
            if out.is_zero() {
                break;
            }
            out = self.act(g, &out);
        }
        out
    }

    /// Applies a Lie-algebra element.
    pub fn act_lie(&self, x: &LieElement, v: &ModuleVector) -> ModuleVector {
        let mut out = ModuleVector::zero();
        for (g, c) in x.terms() {
            out.add_scaled(&self.act(g, v), c);
        }
        out
    }

    /// `g mono v0`, memoized. Peels off the first factor `y` of `mono = y rest`
    /// via `g y = (-1)^{p(g)p(y)} y g + [g, y]`.
    pub fn act_mono(&self, g: usize, mono: &PBWMonomial) -> ModuleVector {
        let key = (g, mono.clone());
        if let Some(v) = self.memo.borrow().get(&key) {
            return v.clone();
        }
        let out = self.act_mono_uncached(g, mono);
        self.memo.borrow_mut().insert(key, out.clone());
        out
    }

    fn act_mono_uncached(&self, g: usize, mono: &PBWMonomial) -> ModuleVector {
        let part = self.alg.part(g);
        let Some((y, rest)) = mono.split_first() else {
            return match part {
                Part::Plus => self.basis_vector(&mono.prepend(g)),
                Part::Zero => match &self.eigenvalues[g] {
                    Some(e) => ModuleVector::monomial(mono.clone(), e.clone()),
                    None => ModuleVector::zero(),
                },
                Part::Minus => ModuleVector::zero(),
            };
        };
        if part == Part::Plus && g <= y {
            if g < y || !self.alg.parity(g).is_odd() {
                return self.basis_vector(&mono.prepend(g));
            }
            // g g = [g, g] / 2 for odd g.
            let half = BigRational::new(1.into(), 2.into());
            let rest_v = self.basis_vector(&rest);
            return self
                .act_lie(self.alg.bracket_gens(g, g), &rest_v)
                .scale_rational(&half);
        }
        let rest_v = self.basis_vector(&rest);
        let inner = self.act_mono(g, &rest);
        let mut out = self.act(y, &inner);
        if self.alg.parity(g).is_odd() && self.alg.parity(y).is_odd() {
            out = out.neg();
        }
        out.add_assign(&self.act_lie(self.alg.bracket_gens(g, y), &rest_v));
        out
    }

    pub fn parity_of(&self, mono: &PBWMonomial) -> Parity {
        mono.parity(&self.alg)
    }

    /// `v0`'s coefficient in `v`.
    pub fn v0_coefficient(&self, v: &ModuleVector) -> Scalar {
        v.coeff(&PBWMonomial::one(self.alg.len()))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// `(monomial, component)` coordinates of `v` over the parameter field:
    /// component 0 holds the even part of each coefficient, 1 the `chi` part.
    pub fn coordinates(&self, v: &ModuleVector) -> Vec<((PBWMonomial, u8), RatFunc)> {
        let mut out = Vec::new();
        for (m, c) in v.terms() {
            if !c.even().is_zero() {
                out.push(((m.clone(), 0), c.even().clone()));
            }
            if !c.odd().is_zero() {
                out.push(((m.clone(), 1), c.odd().clone()));
            }
        }
        out
    }

    /// Parses `[(monomial text, scalar)]` into a module vector.
    pub fn vector_from_terms(&self, terms: &[(String, Scalar)]) -> Result<ModuleVector, VermaError> {
        let mut out = ModuleVector::zero();
        for (m, c) in terms {
            let mono = PBWMonomial::parse(&self.alg, m)?;
            if mono
                .exponents()
                .iter()
                .enumerate()
                .any(|(g, &e)| e > 0 && self.alg.part(g) != Part::Plus)
            {
                return Err(VermaError::Algebra(AlgebraError::Inconsistent(format!(
                    "`{m}` is not a raising monomial"
                ))));
            }
            out.add_term(mono, c);
        }
        Ok(out)
    }

    /// Terms as `(monomial text, scalar)`, leading monomial first.
    pub fn vector_to_terms(&self, v: &ModuleVector) -> Vec<(String, Scalar)> {
        v.terms()
            .rev()
            .map(|(m, c)| (m.format(&self.alg), c.clone()))
            .collect()
    }
}
