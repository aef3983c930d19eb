//! Algebra-definition JSON: generators plus the upper half (`i <= j`) of the
//! bracket table.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{AlgebraError, GeneratorInfo, Part, SuperAlgebra};
use crate::coeff::parse_rational;

#[derive(Serialize, Deserialize)]
struct AlgebraDoc {
    name: String,
    grading_rank: usize,
    generators: Vec<GeneratorInfo>,
    brackets: Vec<BracketDoc>,
}

#[derive(Serialize, Deserialize)]
struct BracketDoc {
    x: String,
    y: String,
    terms: Vec<TermDoc>,
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    coeff: String,
    gen: String,
}

pub fn to_json(alg: &SuperAlgebra) -> String {
    let name = |i: usize| alg.generator(i).name.clone();
    let mut brackets = Vec::new();
    for i in 0..alg.len() {
        for j in i..alg.len() {
            let value = alg.bracket_gens(i, j);
            if value.is_zero() {
                continue;
            }
            brackets.push(BracketDoc {
                x: name(i),
                y: name(j),
                terms: value
                    .terms()
                    .map(|(g, c)| TermDoc {
                        coeff: c.to_string(),
                        gen: name(g),
                    })
                    .collect(),
            });
        }
    }
    let doc = AlgebraDoc {
        name: alg.name().to_string(),
        grading_rank: alg.grading_rank(),
        generators: alg.generators().to_vec(),
        brackets,
    };
    serde_json::to_string_pretty(&doc).expect("algebra JSON serializes")
}

pub fn from_json(s: &str) -> Result<SuperAlgebra, AlgebraError> {
    let doc: AlgebraDoc = serde_json::from_str(s).map_err(|e| AlgebraError::Json(e.to_string()))?;
    for g in &doc.generators {
        if g.part != Part::from_degree(&g.degree) {
            return Err(AlgebraError::Inconsistent(format!(
                "generator {} is listed in the wrong triangular part",
                g.name
            )));
        }
    }
    let mut relations = Vec::with_capacity(doc.brackets.len());
    for b in doc.brackets {
        let mut terms: Vec<(BigRational, String)> = Vec::with_capacity(b.terms.len());
        for t in b.terms {
            let c = parse_rational(&t.coeff).map_err(|e| AlgebraError::Json(e.to_string()))?;
            terms.push((c, t.gen));
        }
        relations.push((b.x, b.y, terms));
    }
    SuperAlgebra::from_relations(&doc.name, doc.grading_rank, doc.generators, &relations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{load_algebra, CATALOG};

    #[test]
    fn catalog_round_trips_bit_identically() {
        for name in CATALOG {
            let alg = load_algebra(name).unwrap();
            let json = to_json(&alg);
            let back = from_json(&json).unwrap();
            assert_eq!(to_json(&back), json, "{name}");
        }
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(from_json("{"), Err(AlgebraError::Json(_))));
        let bad = r#"{"name":"t","grading_rank":1,
            "generators":[{"name":"A","parity":"even","degree":[-1],"part":"plus"}],
            "brackets":[]}"#;
        assert!(matches!(from_json(bad), Err(AlgebraError::Inconsistent(_))));
        let unknown = r#"{"name":"t","grading_rank":1,
            "generators":[{"name":"A","parity":"even","degree":[1],"part":"plus"}],
            "brackets":[{"x":"A","y":"B","terms":[]}]}"#;
        assert!(matches!(from_json(unknown), Err(AlgebraError::UnknownGenerator(_))));
    }
}
