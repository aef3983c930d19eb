//! Singular vectors: exact kernel search per weight space, closed forms,
//! verification, and scans of quotient modules `V / U(g+) v_s`.
//!
//! For `s11` the lowest weight carries the odd eigenvalue `chi`. Searches then
//! run over the even sector, spanned over the parameter field by
//! `chi^{p(mono)} mono v0`; the odd sector is `chi` times it.

mod certificate;
mod closed_form;
mod parametric;

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::coeff::{CoeffError, Param, RatFunc, Scalar};
use crate::envelope::PBWMonomial;
use crate::linalg::{self, Matrix};
use crate::verma::{ModuleVector, VermaError, VermaModule};

pub use certificate::{
    check_certificate, normalize, CheckReport, Normalization, Provenance, ResidualDoc,
    SingularCertificate, TermDoc,
};
pub use closed_form::{closed_form, ClosedForm, Discrepancy};
pub use parametric::{budget_from_env, parametric_scan, ParametricReport, BUDGET_ENV, DEFAULT_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingularError {
    #[error("no closed-form singular vector is known for {0}")]
    NoClosedForm(String),
    #[error("parameter {0} must be bound")]
    Unbound(Param),
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),
    #[error("zero denominator: {0}")]
    ZeroDenominator(String),
    #[error("not a singular vector: {0}")]
    NotSingular(String),
    #[error("parametric elimination needs {needed} minors, budget is {budget}")]
    Budget { needed: u128, budget: u128 },
    #[error("certificate: {0}")]
    Certificate(String),
    #[error(transparent)]
    Verma(#[from] VermaError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// Residuals of a candidate vector under the minus-part generators.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub residuals: Vec<(String, ModuleVector)>,
    pub homogeneous: bool,
    pub proportional_to_v0: bool,
    pub singular: bool,
    pub verdict: String,
}

pub fn residuals(module: &VermaModule, v: &ModuleVector) -> Vec<(String, ModuleVector)> {
    let alg = module.algebra();
    module
        .annihilators()
        .into_iter()
        .map(|g| (alg.generator(g).name.clone(), module.act(g, v)))
        .collect()
}

fn is_proportional_to_v0(v: &ModuleVector) -> bool {
    v.terms().all(|(m, _)| m.is_one())
}

/// Checks `g v = 0` for every minus-part generator `g` and `v` outside `C v0`.
pub fn verify(module: &VermaModule, v: &ModuleVector) -> VerifyReport {
    let residuals = residuals(module, v);
    let homogeneous = !v.is_zero() && module.degree_of(v).is_some();
    let proportional_to_v0 = is_proportional_to_v0(v);
    let nonzero: Vec<&str> = residuals
        .iter()
        .filter(|(_, r)| !r.is_zero())
        .map(|(g, _)| g.as_str())
        .collect();
    let verdict = if v.is_zero() {
        "not singular: zero vector".to_string()
    } else if proportional_to_v0 {
        "not singular: proportional to v0".to_string()
    } else if !homogeneous {
        "not singular: not homogeneous".to_string()
    } else if !nonzero.is_empty() {
        format!("not singular: nonzero residuals under {}", nonzero.join(", "))
    } else {
        "singular".to_string()
    };
    VerifyReport {
        singular: verdict == "singular",
        residuals,
        homogeneous,
        proportional_to_v0,
        verdict,
    }
}

/// Combines sector basis vectors with field coefficients.
fn combine(module: &VermaModule, basis: &[ModuleVector], coeffs: &[RatFunc]) -> ModuleVector {
    let mut out = ModuleVector::zero();
    for (b, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            out.add_assign(&module.scalar_mul(&Scalar::from_ratfunc(c.clone()), b));
        }
    }
    out
}

/// Field coordinates of an even-sector vector against the sector basis of
/// its weight space.
fn sector_coordinates(module: &VermaModule, basis: &[PBWMonomial], v: &ModuleVector) -> Vec<RatFunc> {
    let alg = module.algebra();
    basis
        .iter()
        .map(|m| {
            let c = v.coeff(m).cloned().unwrap_or_else(Scalar::zero);
            if module.has_chi() && m.parity(alg).is_odd() {
                c.odd().clone()
            } else {
                c.even().clone()
            }
        })
        .collect()
}

/// Kernel over `Q` when every entry is constant, otherwise over the field of
/// rational functions.
fn kernel(m: &Matrix<RatFunc>, cols: usize) -> Vec<Vec<RatFunc>> {
    let numeric: Option<Matrix<BigRational>> = m
        .iter()
        .map(|row| row.iter().map(RatFunc::to_rational).collect())
        .collect();
    match numeric {
        Some(q) => linalg::nullspace(&q, cols)
            .into_iter()
            .map(|v| v.iter().map(RatFunc::from_rational).collect())
            .collect(),
        None => linalg::nullspace(m, cols),
    }
}

fn independent_rows(rows: &[Vec<RatFunc>], cols: usize) -> Vec<usize> {
    // Transpose so that rows become columns, then read off pivot columns.
    let t: Matrix<RatFunc> = (0..cols)
        .map(|c| rows.iter().map(|r| r[c].clone()).collect())
        .collect();
    let numeric: Option<Matrix<BigRational>> = t
        .iter()
        .map(|row| row.iter().map(RatFunc::to_rational).collect())
        .collect();
    match numeric {
        Some(q) => linalg::independent_columns(&q, rows.len()),
        None => linalg::independent_columns(&t, rows.len()),
    }
}

/// The invariant submodule `I = U(g+) v_s` generated by a singular vector,
/// with its weight spaces computed on demand. Without a generator `I = 0`.
pub struct QuotientContext<'a> {
    module: &'a VermaModule,
    generator: Option<(ModuleVector, Vec<i32>)>,
    cache: RefCell<HashMap<Vec<i32>, Vec<ModuleVector>>>,
}

impl<'a> QuotientContext<'a> {
    /// The zero submodule: quotient scans reduce to plain scans.
    pub fn trivial(module: &'a VermaModule) -> QuotientContext<'a> {
        QuotientContext {
            module,
            generator: None,
            cache: RefCell::new(HashMap::new()),
        }
    }

    /// The submodule generated by a verified singular vector.
    pub fn new(module: &'a VermaModule, v: &ModuleVector) -> Result<QuotientContext<'a>, SingularError> {
        let report = verify(module, v);
        if !report.singular {
            return Err(SingularError::NotSingular(report.verdict));
        }
        let degree = module.degree_of(v).expect("singular vectors are homogeneous");
        Ok(QuotientContext {
            module,
            generator: Some((v.clone(), degree)),
            cache: RefCell::new(HashMap::new()),
        })
    }

    pub fn from_certificate(
        module: &'a VermaModule,
        cert: &SingularCertificate,
    ) -> Result<QuotientContext<'a>, SingularError> {
        let v = cert.module_vector(module)?;
        QuotientContext::new(module, &v)
    }

    pub fn module(&self) -> &VermaModule {
        self.module
    }

    pub fn generator(&self) -> Option<&ModuleVector> {
        self.generator.as_ref().map(|(v, _)| v)
    }

    /// A basis of the even sector of `I` at the given multidegree.
    pub fn submodule_basis(&self, degree: &[i32]) -> Vec<ModuleVector> {
        if let Some(b) = self.cache.borrow().get(degree) {
            return b.clone();
        }
        let out = self.compute_basis(degree);
        self.cache.borrow_mut().insert(degree.to_vec(), out.clone());
        out
    }

    fn compute_basis(&self, degree: &[i32]) -> Vec<ModuleVector> {
        let Some((vs, vdeg)) = &self.generator else {
            return Vec::new();
        };
        let shift: Vec<i32> = degree.iter().zip(vdeg).map(|(a, b)| a - b).collect();
        let module = self.module;
        let candidates: Vec<ModuleVector> = module
            .weight_space(&shift)
            .iter()
            .map(|n| {
                let image = module.apply_word(&n.word(), vs);
                if module.has_chi() && n.parity(module.algebra()).is_odd() {
                    module.scalar_mul(&Scalar::chi(), &image)
                } else {
                    image
                }
            })
            .filter(|v| !v.is_zero())
            .collect();
        if candidates.is_empty() {
            return candidates;
        }
        let basis = module.weight_space(degree);
        let rows: Vec<Vec<RatFunc>> = candidates
            .iter()
            .map(|v| sector_coordinates(module, &basis, v))
            .collect();
        independent_rows(&rows, basis.len())
            .into_iter()
            .map(|i| candidates[i].clone())
            .collect()
    }

    /// Whether an even-sector vector of a single weight lies in `I`.
    pub fn contains(&self, v: &ModuleVector) -> bool {
        if v.is_zero() {
            return true;
        }
        let Some(degree) = self.module.degree_of(v) else {
            return false;
        };
        let sub = self.submodule_basis(&degree);
        let basis = self.module.weight_space(&degree);
        let mut rows: Vec<Vec<RatFunc>> = sub
            .iter()
            .map(|w| sector_coordinates(self.module, &basis, w))
            .collect();
        let before = independent_rows(&rows, basis.len()).len();
        rows.push(sector_coordinates(self.module, &basis, v));
        independent_rows(&rows, basis.len()).len() == before
    }
}

/// Singular vectors of `V` up to `max_level`, optionally restricted to one
/// multidegree: the joint kernel of all minus-part generators, excluding `v0`.
pub fn scan(
    module: &VermaModule,
    max_level: u32,
    weight: Option<&[i32]>,
) -> Result<Vec<SingularCertificate>, SingularError> {
    let ctx = QuotientContext::trivial(module);
    search(&ctx, max_level, weight, Provenance::Scan)
}

/// Singular vectors of `V / I` up to `max_level`: vectors outside `I` whose
/// images under every minus-part generator lie in `I`.
pub fn quotient_scan(
    ctx: &QuotientContext,
    max_level: u32,
) -> Result<Vec<SingularCertificate>, SingularError> {
    let provenance = if ctx.generator.is_some() {
        Provenance::QuotientScan
    } else {
        Provenance::Scan
    };
    search(ctx, max_level, None, provenance)
}

fn search(
    ctx: &QuotientContext,
    max_level: u32,
    only: Option<&[i32]>,
    provenance: Provenance,
) -> Result<Vec<SingularCertificate>, SingularError> {
    let module = ctx.module;
    let mut out = Vec::new();
    let levels: Vec<u32> = match only {
        Some(w) if w.first().is_some_and(|&l| l >= 0) => vec![w[0] as u32],
        Some(_) => Vec::new(),
        None => (0..=max_level).collect(),
    };
    for level in levels {
        for (degree, basis) in module.weight_spaces(level) {
            if only.is_some_and(|w| w != degree.as_slice()) {
                continue;
            }
            for v in weight_space_search(ctx, &degree, &basis) {
                out.push(SingularCertificate::build(module, &v, provenance, ctx.generator())?);
            }
        }
    }
    Ok(out)
}

/// Vectors of the weight space, independent modulo `I_w` (and `v0`), whose
/// minus-part images lie in `I`.
fn weight_space_search(
    ctx: &QuotientContext,
    degree: &[i32],
    basis: &[PBWMonomial],
) -> Vec<ModuleVector> {
    let module = ctx.module;
    let alg = module.algebra();
    let cols: Vec<ModuleVector> = basis.iter().map(|m| module.sector_vector(m)).collect();
    let n = cols.len();

    let annihilators = module.annihilators();
    let mut targets: Vec<Vec<ModuleVector>> = Vec::new();
    let mut offsets = Vec::new();
    let mut unknowns = n;
    for &g in &annihilators {
        let tdeg: Vec<i32> = degree.iter().zip(alg.degree(g)).map(|(a, b)| a + b).collect();
        let sub = ctx.submodule_basis(&tdeg);
        offsets.push(unknowns);
        unknowns += sub.len();
        targets.push(sub);
    }

    let mut row_index: BTreeMap<(usize, PBWMonomial, u8), usize> = BTreeMap::new();
    let mut rows: Matrix<RatFunc> = Vec::new();
    let mut put = |rows: &mut Matrix<RatFunc>, key: (usize, PBWMonomial, u8), col: usize, x: RatFunc| {
        let r = *row_index.entry(key).or_insert_with(|| {
            rows.push(vec![RatFunc::zero(); unknowns]);
            rows.len() - 1
        });
        rows[r][col] = rows[r][col].add(&x);
    };
    for (k, &g) in annihilators.iter().enumerate() {
        for (i, b) in cols.iter().enumerate() {
            for ((m, e), x) in module.coordinates(&module.act(g, b)) {
                put(&mut rows, (k, m, e), i, x);
            }
        }
        for (j, w) in targets[k].iter().enumerate() {
            for ((m, e), x) in module.coordinates(w) {
                put(&mut rows, (k, m, e), offsets[k] + j, x.neg());
            }
        }
    }

    let solutions: Vec<Vec<RatFunc>> = kernel(&rows, unknowns)
        .into_iter()
        .map(|v| v[..n].to_vec())
        .collect();

    let mut excluded: Vec<Vec<RatFunc>> = ctx
        .submodule_basis(degree)
        .iter()
        .map(|w| sector_coordinates(module, basis, w))
        .collect();
    if let Some(i) = basis.iter().position(|m| m.is_one()) {
        let mut e = vec![RatFunc::zero(); n];
        e[i] = RatFunc::one();
        excluded.push(e);
    }
    let base = independent_rows(&excluded, n).len();
    let mut found = Vec::new();
    for s in solutions {
        let mut trial = excluded.clone();
        trial.push(s.clone());
        if independent_rows(&trial, n).len() > base + found.len() {
            excluded.push(s.clone());
            found.push(combine(module, &cols, &s));
        }
    }
    found
}
