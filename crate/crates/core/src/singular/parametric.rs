//! Symbolic scans: for each weight space, the polynomial condition on the
//! parameters under which a singular vector appears.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{combine, kernel, SingularError, TermDoc};
use crate::coeff::{Param, Poly, RatFunc};
use crate::linalg::{self, Matrix};
use crate::verma::{VermaModule, WeightLabel};

pub const BUDGET_ENV: &str = "SSCHR_PARAMETRIC_BUDGET";
/// Maximal number of minors evaluated per weight space.
pub const DEFAULT_BUDGET: u128 = 20_000;

/// Reads the minor budget from the environment, falling back to the default.
pub fn budget_from_env() -> u128 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParametricReport {
    pub weight: WeightLabel,
    pub basis: Vec<String>,
    pub rows: usize,
    /// Singular vectors exist for all parameter values.
    pub always_singular: bool,
    /// Gcd of the maximal minors with powers of `m` and integer content
    /// removed; `0` when `always_singular`.
    pub condition: String,
    #[serde(skip)]
    pub condition_poly: Poly,
    /// Rational roots in `d` when the condition involves `d` alone.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roots: Option<Vec<String>>,
    /// Kernel over the parameter field.
    pub generic_kernel: Vec<Vec<TermDoc>>,
}

impl ParametricReport {
    /// Whether `factor` divides the condition.
    pub fn divisible_by(&self, factor: &Poly) -> bool {
        !self.condition_poly.is_zero() && self.condition_poly.div_exact(factor).is_some()
    }
}

fn strip_mass(p: &Poly) -> Poly {
    let m = Poly::var(Param::M.index());
    let mut out = p.clone();
    while !out.is_zero() && !out.is_constant() {
        match out.div_exact(&m) {
            Some(q) => out = q,
            None => break,
        }
    }
    out
}

fn normalize_condition(p: &Poly) -> Poly {
    if p.is_zero() {
        return Poly::zero();
    }
    let p = strip_mass(p);
    let p = p.div_exact_int(&p.content()).expect("content divides");
    match p.leading() {
        Some((_, c)) if c.is_negative() => -p,
        _ => p,
    }
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut k = 1u64;
    while k * k <= n {
        if n % k == 0 {
            out.push(BigInt::from(k));
            if k * k != n {
                out.push(BigInt::from(n / k));
            }
        }
        k += 1;
    }
    Some(out)
}

/// Rational roots of a polynomial in `d` alone.
fn rational_roots(p: &Poly) -> Option<Vec<BigRational>> {
    let d = Param::D.index();
    if p.is_zero() || Param::ALL.iter().any(|q| q.index() != d && p.uses_var(q.index())) {
        return None;
    }
    let deg = p.degree_in(d);
    let coeffs: Vec<BigInt> = (0..=deg)
        .map(|k| p.coeff_in(d, k).constant_value().unwrap_or_else(BigInt::zero))
        .collect();
    let low = coeffs.iter().position(|c| !c.is_zero())?;
    let mut roots: BTreeSet<BigRational> = BTreeSet::new();
    if low > 0 {
        roots.insert(BigRational::zero());
    }
    let eval = |x: &BigRational| {
        coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    };
    for num in divisors(&coeffs[low])? {
        for den in divisors(&coeffs[deg as usize])? {
            for sign in [BigInt::one(), -BigInt::one()] {
                let x = BigRational::new(&num * &sign, den.clone());
                if eval(&x).is_zero() {
                    roots.insert(x);
                }
            }
        }
    }
    Some(roots.into_iter().collect())
}

fn action_rows(module: &VermaModule, cols: &[crate::verma::ModuleVector]) -> Matrix<RatFunc> {
    let mut keyed: std::collections::BTreeMap<_, Vec<RatFunc>> = std::collections::BTreeMap::new();
    for (k, &g) in module.annihilators().iter().enumerate() {
        for (i, b) in cols.iter().enumerate() {
            for ((m, e), x) in module.coordinates(&module.act(g, b)) {
                let row = keyed
                    .entry((k, m, e))
                    .or_insert_with(|| vec![RatFunc::zero(); cols.len()]);
                row[i] = row[i].add(&x);
            }
        }
    }
    // Rows that are rational multiples of earlier ones only rescale minors.
    let mut rows: Vec<Vec<RatFunc>> = Vec::new();
    let mut seen: Vec<Vec<RatFunc>> = Vec::new();
    for row in keyed.into_values() {
        let Some(lead) = row.iter().find(|x| !x.is_zero()) else {
            continue;
        };
        let scaled: Vec<RatFunc> = match lead.to_rational() {
            Some(c) => {
                let inv = RatFunc::from_rational(&c.recip());
                row.iter().map(|x| x.mul(&inv)).collect()
            }
            None => row.clone(),
        };
        if seen.contains(&scaled) {
            continue;
        }
        seen.push(scaled);
        rows.push(row);
    }
    rows
}

/// Gcd of the numerators of all maximal minors of `rows` (`rows.len() >= n`).
fn minor_gcd(rows: &Matrix<RatFunc>, n: usize, budget: u128) -> Result<Poly, SingularError> {
    let needed = linalg::binomial(rows.len(), n);
    if needed > budget {
        return Err(SingularError::Budget { needed, budget });
    }
    let mut g = Poly::zero();
    let mut done = false;
    linalg::for_each_subset(rows.len(), n, |idx| {
        if done {
            return;
        }
        let minor: Matrix<RatFunc> = idx.iter().map(|&i| rows[i].clone()).collect();
        let det = linalg::determinant(&minor);
        if det.is_zero() {
            return;
        }
        g = Poly::gcd(&g, det.numer());
        if normalize_condition(&g).is_constant() {
            done = true;
        }
    });
    Ok(g)
}

/// For every weight space up to `max_level`, the condition for a singular
/// vector to exist (other than `v0`) and the kernel valid for generic
/// parameters.
pub fn parametric_scan(
    module: &VermaModule,
    max_level: u32,
    budget: u128,
) -> Result<Vec<ParametricReport>, SingularError> {
    let alg = module.algebra();
    let mut out = Vec::new();
    for level in 0..=max_level {
        for (degree, basis) in module.weight_spaces(level) {
            let basis: Vec<_> = basis.into_iter().filter(|m| !m.is_one()).collect();
            if basis.is_empty() {
                continue;
            }
            let cols: Vec<_> = basis.iter().map(|m| module.sector_vector(m)).collect();
            let rows = action_rows(module, &cols);
            let n = cols.len();
            let generic: Vec<Vec<TermDoc>> = kernel(&rows, n)
                .into_iter()
                .map(|s| {
                    module
                        .vector_to_terms(&combine(module, &cols, &s))
                        .into_iter()
                        .map(|(monomial, coeff)| TermDoc { monomial, coeff })
                        .collect()
                })
                .collect();
            let raw = if !generic.is_empty() {
                Poly::zero()
            } else {
                minor_gcd(&rows, n, budget)?
            };
            let condition = normalize_condition(&raw);
            let roots = rational_roots(&condition)
                .map(|rs| rs.iter().map(|r| r.to_string()).collect());
            out.push(ParametricReport {
                weight: module.weight_label(&degree),
                basis: basis.iter().map(|m| m.format(alg)).collect(),
                rows: rows.len(),
                always_singular: condition.is_zero(),
                condition: condition.to_string(),
                condition_poly: condition,
                roots,
                generic_kernel: generic,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::load_algebra;
    use crate::coeff::Bindings;
    use crate::verma::make_module;

    fn poly_2d_plus_1() -> Poly {
        &Poly::var(0).scale(&BigInt::from(2)) + &Poly::one()
    }

    #[test]
    fn s11_level_one_condition() {
        let m = make_module(&load_algebra("s11").unwrap(), &Bindings::symbolic()).unwrap();
        let reports = parametric_scan(&m, 1, DEFAULT_BUDGET).unwrap();
        let r = reports.iter().find(|r| r.weight.level == 1).unwrap();
        assert_eq!(r.condition_poly, poly_2d_plus_1());
        assert_eq!(r.roots.as_deref(), Some(&["-1/2".to_string()][..]));
        assert!(r.generic_kernel.is_empty());
    }

    #[test]
    fn budget_is_enforced() {
        let m = make_module(&load_algebra("s11").unwrap(), &Bindings::symbolic()).unwrap();
        let err = parametric_scan(&m, 3, 0).unwrap_err();
        assert!(matches!(err, SingularError::Budget { .. }));
    }

    #[test]
    fn roots_of_quadratic() {
        // (2d + 1)(d - 3) = 2d^2 - 5d - 3
        let d = Poly::var(0);
        let p = &poly_2d_plus_1() * &(&d - &Poly::constant(BigInt::from(3)));
        let roots = rational_roots(&p).unwrap();
        assert_eq!(roots, vec![BigRational::new((-1).into(), 2.into()), BigRational::from_integer(3.into())]);
    }
}
