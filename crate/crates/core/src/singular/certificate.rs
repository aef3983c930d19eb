//! Singular-vector certificates and their independent re-check.

use serde::{Deserialize, Serialize};

use super::{verify, QuotientContext, SingularError};
use crate::algebra::load_algebra;
use crate::coeff::{Bindings, Scalar};
use crate::verma::{make_module, ModuleVector, VermaModule, WeightLabel};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub monomial: String,
    pub coeff: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualDoc {
    pub generator: String,
    pub value: Vec<TermDoc>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Scan,
    ClosedForm,
    QuotientScan,
}

/// The monomial whose coefficient was scaled to `coefficient` (1, or `chi`
/// when every coefficient is odd).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Normalization {
    pub monomial: String,
    pub coefficient: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularCertificate {
    pub algebra: String,
    pub bindings: Bindings,
    pub weight: WeightLabel,
    pub vector: Vec<TermDoc>,
    pub residuals: Vec<ResidualDoc>,
    pub provenance: Provenance,
    pub normalization: Normalization,
    /// For quotient scans: the singular vector generating the submodule that
    /// the residuals must lie in.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub submodule_generator: Option<Vec<TermDoc>>,
}

fn to_docs(module: &VermaModule, v: &ModuleVector) -> Vec<TermDoc> {
    module
        .vector_to_terms(v)
        .into_iter()
        .map(|(monomial, coeff)| TermDoc { monomial, coeff })
        .collect()
}

fn from_docs(module: &VermaModule, docs: &[TermDoc]) -> Result<ModuleVector, SingularError> {
    let terms: Vec<(String, Scalar)> = docs
        .iter()
        .map(|t| (t.monomial.clone(), t.coeff.clone()))
        .collect();
    Ok(module.vector_from_terms(&terms)?)
}

/// Scales `v` so that its first coefficient in descending PBW order that is
/// invertible becomes 1. If all coefficients are odd, the leading one becomes
/// `chi`.
pub fn normalize(module: &VermaModule, v: &ModuleVector) -> (ModuleVector, Option<Normalization>) {
    let alg = module.algebra();
    for (m, c) in v.terms().rev() {
        if c.odd().is_zero() && !c.even().is_zero() {
            let inv = c.invert().expect("nonzero even scalar is invertible");
            return (
                module.scalar_mul(&inv, v),
                Some(Normalization {
                    monomial: m.format(alg),
                    coefficient: Scalar::one(),
                }),
            );
        }
    }
    let Some((m, c)) = v.leading() else {
        return (v.clone(), None);
    };
    if !c.even().is_zero() {
        return (v.clone(), None);
    }
    let inv = Scalar::from_ratfunc(c.odd().inv().expect("nonzero odd part"));
    (
        module.scalar_mul(&inv, v),
        Some(Normalization {
            monomial: m.format(alg),
            coefficient: Scalar::chi(),
        }),
    )
}

impl SingularCertificate {
    pub fn build(
        module: &VermaModule,
        v: &ModuleVector,
        provenance: Provenance,
        submodule_generator: Option<&ModuleVector>,
    ) -> Result<SingularCertificate, SingularError> {
        let (v, normalization) = normalize(module, v);
        let normalization =
            normalization.ok_or_else(|| SingularError::NotSingular("zero vector".into()))?;
        let degree = module
            .degree_of(&v)
            .ok_or_else(|| SingularError::NotSingular("not homogeneous".into()))?;
        let alg = module.algebra();
        let residuals = module
            .annihilators()
            .into_iter()
            .map(|g| ResidualDoc {
                generator: alg.generator(g).name.clone(),
                value: to_docs(module, &module.act(g, &v)),
            })
            .collect();
        Ok(SingularCertificate {
            algebra: alg.name().to_string(),
            bindings: module.bindings().clone(),
            weight: module.weight_label(&degree),
            vector: to_docs(module, &v),
            residuals,
            provenance,
            normalization,
            submodule_generator: submodule_generator.map(|g| to_docs(module, g)),
        })
    }

    pub fn module_vector(&self, module: &VermaModule) -> Result<ModuleVector, SingularError> {
        from_docs(module, &self.vector)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<SingularCertificate, SingularError> {
        serde_json::from_str(s).map_err(|e| SingularError::Certificate(e.to_string()))
    }
}

/// Outcome of re-checking a certificate from its own contents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub passed: bool,
    pub problems: Vec<String>,
}

/// Rebuilds the module from the certificate's algebra name and bindings and
/// recomputes everything the certificate claims.
pub fn check_certificate(cert: &SingularCertificate) -> Result<CheckReport, SingularError> {
    let alg = load_algebra(&cert.algebra)?;
    let module = make_module(&alg, &cert.bindings)?;
    let v = cert.module_vector(&module)?;
    let mut problems = Vec::new();

    let report = verify(&module, &v);
    if !report.homogeneous {
        problems.push("vector is not homogeneous".to_string());
    }
    if report.proportional_to_v0 {
        problems.push("vector is proportional to v0".to_string());
    }
    if let Some(degree) = module.degree_of(&v) {
        if module.weight_label(&degree) != cert.weight {
            problems.push("recorded weight does not match the vector".to_string());
        }
    }
    let (renormalized, norm) = normalize(&module, &v);
    if renormalized != v || norm.as_ref() != Some(&cert.normalization) {
        problems.push("vector is not normalized as recorded".to_string());
    }

    let recorded: Vec<(String, Vec<TermDoc>)> = cert
        .residuals
        .iter()
        .map(|r| (r.generator.clone(), r.value.clone()))
        .collect();
    let computed: Vec<(String, Vec<TermDoc>)> = report
        .residuals
        .iter()
        .map(|(g, r)| (g.clone(), to_docs(&module, r)))
        .collect();
    if recorded != computed {
        problems.push("recorded residuals differ from recomputed ones".to_string());
    }

    match (&cert.provenance, &cert.submodule_generator) {
        (Provenance::QuotientScan, Some(gen)) => {
            let vs = from_docs(&module, gen)?;
            let ctx = QuotientContext::new(&module, &vs)?;
            if ctx.contains(&v) {
                problems.push("vector lies in the submodule".to_string());
            }
            for (g, r) in &report.residuals {
                if !ctx.contains(r) {
                    problems.push(format!("residual under {g} is not in the submodule"));
                }
            }
        }
        (Provenance::QuotientScan, None) => {
            problems.push("quotient certificate lacks its submodule generator".to_string());
        }
        _ => {
            for (g, r) in &report.residuals {
                if !r.is_zero() {
                    problems.push(format!("residual under {g} is nonzero"));
                }
            }
        }
    }
    Ok(CheckReport {
        passed: problems.is_empty(),
        problems,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Param, RatFunc};
    use crate::singular::scan;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn round_trip_and_tamper() {
        let alg = load_algebra("s11").unwrap();
        let b = Bindings::from_pairs(&[(Param::D, q(-1, 2)), (Param::M, q(1, 1))]).unwrap();
        let module = make_module(&alg, &b).unwrap();
        let cert = scan(&module, 1, None).unwrap().remove(0);
        let json = cert.to_json();
        let back = SingularCertificate::from_json(&json).unwrap();
        assert_eq!(back, cert);
        assert!(check_certificate(&back).unwrap().passed);

        let mut bad = cert.clone();
        bad.vector[1].coeff = Scalar::new(RatFunc::zero(), RatFunc::from_int(-3));
        let report = check_certificate(&bad).unwrap();
        assert!(!report.passed);
        assert!(report.problems.iter().any(|p| p.contains("residual")));
    }
}
