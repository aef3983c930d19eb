//! The contravariant form `(X v0, Y v0) = (v0, w(X) Y v0)`, `(v0, v0) = 1`.
//!
//! With an odd lowest weight (`s11`) coefficients are moved to the right of
//! `M v0`, where `chi` squares to `-m/2`, and multiplied there. On the even
//! sector this is plain left linearity.

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::coeff::{Bindings, RatFunc, Scalar};
use crate::envelope::PBWMonomial;
use crate::linalg;
use crate::singular::SingularCertificate;
use crate::verma::{ModuleVector, VermaModule, WeightLabel};

/// `(M v0, v)` for a single raising monomial `M`.
fn pair_monomial(module: &VermaModule, mono: &PBWMonomial, v: &ModuleVector) -> Scalar {
    let alg = module.algebra();
    let word: Vec<usize> = mono
        .word()
        .iter()
        .rev()
        .map(|&g| alg.omega(g).expect("omega is defined on every generator"))
        .collect();
    module.v0_coefficient(&module.apply_word(&word, v))
}

/// The form on two vectors of the same module.
pub fn pair(module: &VermaModule, u: &ModuleVector, v: &ModuleVector) -> Scalar {
    let chi_sq = module.chi_squared();
    let mut out = Scalar::zero();
    for (mono, c) in u.terms() {
        let w = pair_monomial(module, mono, v);
        if w.is_zero() {
            continue;
        }
        if !c.even().is_zero() {
            out = out.add(&Scalar::from_ratfunc(c.even().clone()).mul_with(&w, chi_sq));
        }
        if !c.odd().is_zero() {
            // Odd coefficients multiply as scalars acting from the right.
            let sign = if module.parity_of(mono).is_odd() { -1 } else { 1 };
            let w = Scalar::new(w.even().clone(), w.odd().neg()).scale(&RatFunc::from_int(sign));
            let twisted = Scalar::chi().mul_with(&w, chi_sq);
            out = out.add(&Scalar::from_ratfunc(c.odd().clone()).mul_with(&twisted, chi_sq));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GramReport {
    pub algebra: String,
    pub bindings: Bindings,
    pub weight: WeightLabel,
    /// Sector basis; `chi*M` marks the `chi`-twisted odd monomials.
    pub basis: Vec<String>,
    pub matrix: Vec<Vec<Scalar>>,
    pub rank: usize,
    pub determinant: Scalar,
    pub symmetric: bool,
    /// Sylvester's criterion, only when every entry is a number.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub positive_definite: Option<bool>,
}

fn basis_label(module: &VermaModule, m: &PBWMonomial) -> String {
    let text = m.format(module.algebra());
    if module.has_chi() && module.parity_of(m).is_odd() {
        format!("chi*{text}")
    } else {
        text
    }
}

fn numeric(matrix: &[Vec<RatFunc>]) -> Option<Vec<Vec<BigRational>>> {
    matrix
        .iter()
        .map(|row| row.iter().map(RatFunc::to_rational).collect())
        .collect()
}

/// The Gram matrix on the sector basis of one weight space. Entries are even
/// on that basis, so rank and determinant are taken over the parameter field.
pub fn gram(module: &VermaModule, degree: &[i32]) -> GramReport {
    let basis = module.weight_space(degree);
    let vectors: Vec<ModuleVector> = basis.iter().map(|m| module.sector_vector(m)).collect();
    let matrix: Vec<Vec<Scalar>> = vectors
        .iter()
        .map(|u| vectors.iter().map(|v| pair(module, u, v)).collect())
        .collect();
    let even: Vec<Vec<RatFunc>> = matrix
        .iter()
        .map(|row| row.iter().map(|x| x.even().clone()).collect())
        .collect();
    let n = basis.len();
    let symmetric = (0..n).all(|i| (0..i).all(|j| matrix[i][j] == matrix[j][i]));
    let (rank, determinant, positive_definite) = match numeric(&even) {
        Some(q) => {
            let pd = (1..=n).all(|k| {
                let minor: Vec<Vec<BigRational>> =
                    q[..k].iter().map(|row| row[..k].to_vec()).collect();
                linalg::determinant(&minor).is_positive()
            });
            let det = if n == 0 { BigRational::one() } else { linalg::determinant(&q) };
            (linalg::rank(&q, n), Scalar::from_rational(&det), Some(pd && symmetric))
        }
        None => {
            let det = if n == 0 { RatFunc::one() } else { linalg::determinant(&even) };
            (linalg::rank(&even, n), Scalar::from_ratfunc(det), None)
        }
    };
    GramReport {
        algebra: module.algebra().name().to_string(),
        bindings: module.bindings().clone(),
        weight: module.weight_label(degree),
        basis: basis.iter().map(|m| basis_label(module, m)).collect(),
        matrix,
        rank,
        determinant,
        symmetric,
        positive_definite,
    }
}

/// Gram reports for every weight space at one level.
pub fn gram_level(module: &VermaModule, level: u32) -> Vec<GramReport> {
    module
        .weight_spaces(level)
        .keys()
        .map(|degree| gram(module, degree))
        .collect()
}

/// Total rank deficiency `dim - rank` over the weight spaces of one level.
pub fn rank_deficiency(module: &VermaModule, level: u32) -> usize {
    gram_level(module, level)
        .iter()
        .map(|g| g.basis.len() - g.rank)
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadicalReport {
    pub passed: bool,
    /// Basis vectors that pair nontrivially with the vector.
    pub failures: Vec<String>,
}

/// Whether `v` pairs to zero, on either side, with every sector basis vector
/// of its weight space. Other weight spaces are orthogonal to it anyway.
pub fn radical_check_vector(module: &VermaModule, v: &ModuleVector) -> RadicalReport {
    let Some(degree) = module.degree_of(v) else {
        return RadicalReport {
            passed: false,
            failures: vec!["vector is not homogeneous".into()],
        };
    };
    let failures: Vec<String> = module
        .weight_space(&degree)
        .iter()
        .filter(|m| {
            let b = module.sector_vector(m);
            !pair(module, v, &b).is_zero() || !pair(module, &b, v).is_zero()
        })
        .map(|m| basis_label(module, m))
        .collect();
    RadicalReport {
        passed: failures.is_empty(),
        failures,
    }
}

pub fn radical_check(
    module: &VermaModule,
    cert: &SingularCertificate,
) -> Result<RadicalReport, crate::singular::SingularError> {
    let v = cert.module_vector(module)?;
    Ok(radical_check_vector(module, &v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::load_algebra;
    use crate::coeff::Param;
    use crate::verma::make_module;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn module(alg: &str, pairs: &[(Param, BigRational)]) -> VermaModule {
        make_module(&load_algebra(alg).unwrap(), &Bindings::from_pairs(pairs).unwrap()).unwrap()
    }

    fn vec_of(m: &VermaModule, text: &str) -> ModuleVector {
        m.vector_from_terms(&[(text.to_string(), Scalar::one())]).unwrap()
    }

    #[test]
    fn small_pairings() {
        let m = module("s12", &[(Param::M, q(1, 1))]);
        assert_eq!(pair(&m, &m.v0(), &m.v0()), Scalar::one());
        let g = vec_of(&m, "G");
        assert_eq!(pair(&m, &g, &g), Scalar::one());
        let x = vec_of(&m, "X+");
        assert_eq!(pair(&m, &x, &x), Scalar::from_int(-1));
    }

    #[test]
    fn s11_level_one_gram() {
        // [[m, m/2], [m/2, -md/2]] on {G, chi S}
        let m = module("s11", &[(Param::M, q(1, 1))]);
        let report = gram(&m, &[1]);
        assert_eq!(report.basis, vec!["G".to_string(), "chi*S".to_string()]);
        let d = RatFunc::var(Param::D.index());
        let half = RatFunc::from_rational(&q(1, 2));
        let expected = vec![
            vec![Scalar::one(), Scalar::from_ratfunc(half.clone())],
            vec![Scalar::from_ratfunc(half.clone()), Scalar::from_ratfunc(d.mul(&half).neg())],
        ];
        assert_eq!(report.matrix, expected);
        assert!(report.symmetric);
        assert_eq!(report.rank, 2);
    }

    #[test]
    fn radical_of_non_singular_vector_fails() {
        let m = module("s11", &[(Param::D, q(1, 3)), (Param::M, q(1, 1))]);
        let g = vec_of(&m, "G");
        let report = radical_check_vector(&m, &g);
        assert!(!report.passed);
        assert!(report.failures.contains(&"G".to_string()));
    }
}
