//! Closed-form singular vectors, one family per super extension.

use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use super::{normalize, SingularError};
use crate::coeff::{Param, RatFunc, Scalar};
use crate::verma::{ModuleVector, VermaModule};

/// A factor of a closed formula that cannot be built in the algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub omitted_factor: String,
    pub missing_generators: Vec<String>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClosedForm {
    /// Normalized: the first invertible coefficient in PBW order is 1.
    pub vector: ModuleVector,
    pub exponent: u32,
    pub discrepancy: Option<Discrepancy>,
}

fn bound(module: &VermaModule, p: Param) -> Result<BigRational, SingularError> {
    module
        .bindings()
        .get(p)
        .cloned()
        .ok_or(SingularError::Unbound(p))
}

fn exponent(value: &BigRational, text: &str) -> Result<u32, SingularError> {
    if !value.is_integer() || value.is_negative() {
        return Err(SingularError::Inadmissible(format!(
            "exponent {text} = {value} is not a nonnegative integer"
        )));
    }
    u32::try_from(value.to_integer())
        .map_err(|_| SingularError::Inadmissible(format!("exponent {text} = {value} is too large")))
}

/// `sum c_i w_i v` for scalars `c_i` and generator words `w_i`.
fn apply(
    module: &VermaModule,
    terms: &[(Scalar, &[&str])],
    v: &ModuleVector,
) -> Result<ModuleVector, SingularError> {
    let alg = module.algebra();
    let mut out = ModuleVector::zero();
    for (c, names) in terms {
        let word = names
            .iter()
            .map(|n| alg.gen(n))
            .collect::<Result<Vec<_>, _>>()?;
        let image = module.apply_word(&word, v);
        out.add_assign(&module.scalar_mul(c, &image));
    }
    Ok(out)
}

fn power(
    module: &VermaModule,
    terms: &[(Scalar, &[&str])],
    k: u32,
    v: ModuleVector,
) -> Result<ModuleVector, SingularError> {
    let mut out = v;
    for _ in 0..k {
        out = apply(module, terms, &out)?;
    }
    Ok(out)
}

fn s(k: i64) -> Scalar {
    Scalar::from_int(k)
}

/// The closed-form singular vector of the module's algebra at its bound
/// parameters:
///
/// * `s11`: `(G^2 - 2mK)^{d+1/2} (G - 2 chi S) v0`
/// * `s12`: `(G^2 - 2mK)^{d-1/2} u0` with
///   `u0 = (G S- X+ + m S+ S- + 2mK) v0 + (d+r+1)/(2d+1) (G^2 - 2mK) v0`
/// * `s21`: `(G+ G- - 2mK)^{d+1} (G- X+ - 2m S) v0`
/// * `s22`: `(G+ G- - 2mK)^d u0` with
///   `u0 = (G-^2 X++ X+- - 2m G-(S+ X+- - S- X++) + 4m^2 (S+ S- + K)) v0`;
///   an extra factor `(G- X+ - 2m S)` would need generators that `s22`
///   lacks and is reported as a discrepancy instead of being applied
/// * `s22hat`: `(G+ G- - 2mK)^d (G- S- X+ + m S+ S- + 2mK) v0`, only when
///   `r = -(d - j + 2)/2`
pub fn closed_form(module: &VermaModule) -> Result<ClosedForm, SingularError> {
    let alg = module.algebra();
    let m = module.bindings().scalar(Param::M);
    let m2 = m.add(&m);
    let v0 = module.v0();
    let d = bound(module, Param::D)?;
    let half = BigRational::new(1.into(), 2.into());
    let one = BigRational::from_integer(1.into());

    let sl2_1: [(Scalar, &[&str]); 2] = [(s(1), &["G", "G"]), (m2.neg(), &["K"])];
    let sl2_2: [(Scalar, &[&str]); 2] = [(s(1), &["G+", "G-"]), (m2.neg(), &["K"])];

    let (raw, k, discrepancy) = match alg.name() {
        "s11" => {
            let k = exponent(&(&d + &half), "d + 1/2")?;
            let chi2 = Scalar::chi().scale(&RatFunc::from_int(-2));
            let base = apply(module, &[(s(1), &["G"]), (chi2, &["S"])], &v0)?;
            (power(module, &sl2_1, k, base)?, k, None)
        }
        "s12" => {
            let r = module.bindings().scalar(Param::R);
            let den = RatFunc::from_rational(&(&d + &d + &one));
            if den.is_zero() {
                return Err(SingularError::ZeroDenominator("2d + 1 = 0".into()));
            }
            let k = exponent(&(&d - &half), "d - 1/2")?;
            let ratio = Scalar::from_rational(&(&d + &one))
                .add(&r)
                .scale(&den.inv().expect("nonzero"));
            let mut u0 = apply(
                module,
                &[
                    (s(1), &["G", "S-", "X+"]),
                    (m.clone(), &["S+", "S-"]),
                    (m2.clone(), &["K"]),
                ],
                &v0,
            )?;
            let tail = apply(module, &sl2_1, &v0)?;
            u0.add_assign(&module.scalar_mul(&ratio, &tail));
            (power(module, &sl2_1, k, u0)?, k, None)
        }
        "s21" => {
            let k = exponent(&(&d + &one), "d + 1")?;
            let base = apply(module, &[(s(1), &["G-", "X+"]), (m2.neg(), &["S"])], &v0)?;
            (power(module, &sl2_2, k, base)?, k, None)
        }
        "s22" => {
            let k = exponent(&d, "d")?;
            let m2sq = m2.mul_with(&m2, module.chi_squared());
            let u0 = apply(
                module,
                &[
                    (s(1), &["G-", "G-", "X++", "X+-"]),
                    (m2.neg(), &["G-", "S+", "X+-"]),
                    (m2.clone(), &["G-", "S-", "X++"]),
                    (m2sq.clone(), &["S+", "S-"]),
                    (m2sq, &["K"]),
                ],
                &v0,
            )?;
            let missing: Vec<String> = ["X+", "S"]
                .iter()
                .filter(|n| alg.index_of(n).is_none())
                .map(|n| n.to_string())
                .collect();
            let discrepancy = Discrepancy {
                omitted_factor: "G- X+ - 2m S".into(),
                missing_generators: missing,
                note: "the factor is not applied; only (G+ G- - 2mK)^d u0 is built and the \
                       kernel computation decides"
                    .into(),
            };
            (power(module, &sl2_2, k, u0)?, k, Some(discrepancy))
        }
        "s22hat" => {
            let j = bound(module, Param::J)?;
            let r = bound(module, Param::R)?;
            let target = -(&d - &j + BigRational::from_integer(2.into())) * &half;
            if r != target {
                return Err(SingularError::Inadmissible(format!(
                    "r = {r} but -(d - j + 2)/2 = {target}"
                )));
            }
            let k = exponent(&d, "d")?;
            let u0 = apply(
                module,
                &[
                    (s(1), &["G-", "S-", "X+"]),
                    (m.clone(), &["S+", "S-"]),
                    (m2.clone(), &["K"]),
                ],
                &v0,
            )?;
            (power(module, &sl2_2, k, u0)?, k, None)
        }
        other => return Err(SingularError::NoClosedForm(other.to_string())),
    };
    if raw.is_zero() {
        return Err(SingularError::NotSingular("closed form vanishes".into()));
    }
    let (vector, _) = normalize(module, &raw);
    Ok(ClosedForm {
        vector,
        exponent: k,
        discrepancy,
    })
}
