//! Exhaustive consistency checks of a structure table.

use num_rational::BigRational;
use serde::Serialize;

use super::{koszul, LieElement, Part, SuperAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OmegaConvention {
    /// `omega(x y) = omega(y) omega(x)`
    Unsigned,
    /// `omega(x y) = (-1)^{p(x) p(y)} omega(y) omega(x)`
    Signed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiFailure {
    pub triple: [String; 3],
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaReport {
    pub defined_everywhere: bool,
    pub involutive: bool,
    pub parity_preserving: bool,
    pub exchanges_parts: bool,
    pub negates_degree: bool,
    /// The product rule that makes `omega` an anti-automorphism on every
    /// generator pair, preferring `Unsigned`; `None` if neither does.
    pub convention: Option<OmegaConvention>,
    pub unsigned_failures: Vec<[String; 2]>,
    pub signed_failures: Vec<[String; 2]>,
}

impl OmegaReport {
    pub fn passes(&self) -> bool {
        self.defined_everywhere
            && self.involutive
            && self.parity_preserving
            && self.exchanges_parts
            && self.negates_degree
            && self.convention.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub algebra: String,
    pub triples_checked: usize,
    pub pairs_checked: usize,
    pub jacobi_failures: Vec<JacobiFailure>,
    pub skew_failures: Vec<[String; 2]>,
    pub degree_failures: Vec<[String; 2]>,
    pub parity_failures: Vec<[String; 2]>,
    pub central_failures: Vec<String>,
    pub part_failures: Vec<String>,
    pub omega: OmegaReport,
}

impl ValidationReport {
    pub fn passes(&self) -> bool {
        self.jacobi_failures.is_empty()
            && self.skew_failures.is_empty()
            && self.degree_failures.is_empty()
            && self.parity_failures.is_empty()
            && self.central_failures.is_empty()
            && self.part_failures.is_empty()
            && self.omega.passes()
    }
}

fn rat(k: i64) -> BigRational {
    BigRational::from_integer(k.into())
}

/// Super-Jacobi residual
/// `(-1)^{p(x)p(z)}[x,[y,z]] + (-1)^{p(y)p(x)}[y,[z,x]] + (-1)^{p(z)p(y)}[z,[x,y]]`.
pub fn jacobi_residual(alg: &SuperAlgebra, x: usize, y: usize, z: usize) -> LieElement {
    let (px, py, pz) = (alg.parity(x), alg.parity(y), alg.parity(z));
    let g = LieElement::generator;
    let t1 = alg.bracket(&g(x), alg.bracket_gens(y, z)).scaled(&rat(koszul(px, pz)));
    let t2 = alg.bracket(&g(y), alg.bracket_gens(z, x)).scaled(&rat(koszul(py, px)));
    let t3 = alg.bracket(&g(z), alg.bracket_gens(x, y)).scaled(&rat(koszul(pz, py)));
    t1.plus(&t2).plus(&t3)
}

fn omega_element(alg: &SuperAlgebra, e: &LieElement) -> Option<LieElement> {
    let mut out = LieElement::zero();
    for (g, c) in e.terms() {
        out.add_term(c, alg.omega(g)?);
    }
    Some(out)
}

pub fn validate(alg: &SuperAlgebra) -> ValidationReport {
    let n = alg.len();
    let name = |i: usize| alg.generator(i).name.clone();
    let pair = |i: usize, j: usize| [name(i), name(j)];

    let mut jacobi_failures = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let r = jacobi_residual(alg, x, y, z);
                if !r.is_zero() {
                    jacobi_failures.push(JacobiFailure {
                        triple: [name(x), name(y), name(z)],
                        residual: alg.format_element(&r),
                    });
                }
            }
        }
    }

    let mut skew_failures = Vec::new();
    let mut degree_failures = Vec::new();
    let mut parity_failures = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let sign = rat(-koszul(alg.parity(i), alg.parity(j)));
            if alg.bracket_gens(i, j) != &alg.bracket_gens(j, i).scaled(&sign) {
                skew_failures.push(pair(i, j));
            }
            let expected: Vec<i32> = alg
                .degree(i)
                .iter()
                .zip(alg.degree(j))
                .map(|(a, b)| a + b)
                .collect();
            let parity = alg.parity(i).add(alg.parity(j));
            for (z, _) in alg.bracket_gens(i, j).terms() {
                if alg.degree(z) != expected.as_slice() {
                    degree_failures.push(pair(i, j));
                }
                if alg.parity(z) != parity {
                    parity_failures.push(pair(i, j));
                }
            }
        }
    }
    degree_failures.dedup();
    parity_failures.dedup();

    let mut central_failures = Vec::new();
    if let Some(m) = alg.index_of("M") {
        if (0..n).any(|x| !alg.bracket_gens(m, x).is_zero()) {
            central_failures.push("M".to_string());
        }
    }
    if let Some(r) = alg.index_of("R") {
        if (0..n).any(|x| !alg.parity(x).is_odd() && !alg.bracket_gens(r, x).is_zero()) {
            central_failures.push("R".to_string());
        }
    }

    let part_failures = (0..n)
        .filter(|&i| alg.part(i) != Part::from_degree(alg.degree(i)))
        .map(name)
        .collect();

    ValidationReport {
        algebra: alg.name().to_string(),
        triples_checked: n * n * n,
        pairs_checked: n * n,
        jacobi_failures,
        skew_failures,
        degree_failures,
        parity_failures,
        central_failures,
        part_failures,
        omega: check_omega(alg),
    }
}

fn check_omega(alg: &SuperAlgebra) -> OmegaReport {
    let n = alg.len();
    let defined_everywhere = (0..n).all(|i| alg.omega(i).is_some());
    if !defined_everywhere {
        return OmegaReport {
            defined_everywhere,
            involutive: false,
            parity_preserving: false,
            exchanges_parts: false,
            negates_degree: false,
            convention: None,
            unsigned_failures: Vec::new(),
            signed_failures: Vec::new(),
        };
    }
    let w = |i: usize| alg.omega(i).expect("checked above");
    let involutive = (0..n).all(|i| w(w(i)) == i);
    let parity_preserving = (0..n).all(|i| alg.parity(w(i)) == alg.parity(i));
    let exchanges_parts = (0..n).all(|i| {
        let expected = match alg.part(i) {
            Part::Plus => Part::Minus,
            Part::Zero => Part::Zero,
            Part::Minus => Part::Plus,
        };
        alg.part(w(i)) == expected
    });
    let negates_degree = (0..n).all(|i| {
        alg.degree(w(i))
            .iter()
            .zip(alg.degree(i))
            .all(|(a, b)| *a == -b)
    });

    let mut unsigned_failures = Vec::new();
    let mut signed_failures = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let lhs = omega_element(alg, alg.bracket_gens(x, y)).expect("omega is total");
            let rhs = alg.bracket_gens(w(y), w(x));
            let names = [alg.generator(x).name.clone(), alg.generator(y).name.clone()];
            if &lhs != rhs {
                unsigned_failures.push(names.clone());
            }
            let signed = rhs.scaled(&rat(koszul(alg.parity(x), alg.parity(y))));
            if lhs != signed {
                signed_failures.push(names);
            }
        }
    }
    let convention = if unsigned_failures.is_empty() {
        Some(OmegaConvention::Unsigned)
    } else if signed_failures.is_empty() {
        Some(OmegaConvention::Signed)
    } else {
        None
    };
    OmegaReport {
        defined_everywhere,
        involutive,
        parity_preserving,
        exchanges_parts,
        negates_degree,
        convention,
        unsigned_failures,
        signed_failures,
    }
}
