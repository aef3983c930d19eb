//! The seven catalog algebras: the bosonic Schrodinger algebras in 1+1 and
//! 2+1 dimensions and their five super extensions.

use num_rational::BigRational;

use super::{AlgebraError, GeneratorInfo, Part, Parity, SuperAlgebra};

pub const CATALOG: [&str; 7] = ["sch1", "sch2", "s11", "s12", "s21", "s22", "s22hat"];

pub fn load_algebra(name: &str) -> Result<SuperAlgebra, AlgebraError> {
    let (rank, gens, rels) = match name {
        "sch1" => (1, sch1_generators(&[], &[], &[]), sch1_relations()),
        "s11" => (1, s11_generators(), s11_relations()),
        "s12" => (2, s12_generators(), s12_relations()),
        "sch2" => (2, sch2_generators(&[], &[], &[]), sch2_relations()),
        "s21" => (2, s21_generators(), s21_relations()),
        "s22" => (3, s22_generators(), s22_relations()),
        "s22hat" => (3, s22hat_generators(), s22hat_relations()),
        other => return Err(AlgebraError::UnknownAlgebra(other.to_string())),
    };
    SuperAlgebra::from_relations(name, rank, gens, &rels)
}

type Rel = (String, String, Vec<(BigRational, String)>);

fn rel(x: &str, y: &str, terms: &[(i64, &str)]) -> Rel {
    (
        x.to_string(),
        y.to_string(),
        terms
            .iter()
            .map(|(c, z)| (BigRational::from_integer((*c).into()), z.to_string()))
            .collect(),
    )
}

fn gen(name: &str, parity: Parity, degree: &[i32]) -> GeneratorInfo {
    GeneratorInfo {
        name: name.to_string(),
        parity,
        degree: degree.to_vec(),
        part: Part::from_degree(degree),
    }
}

use Parity::{Even as E, Odd as O};

type GenSpec<'a> = (&'a str, Parity, &'a [i32]);

fn assemble(plus: &[GenSpec], zero: &[GenSpec], minus: &[GenSpec]) -> Vec<GeneratorInfo> {
    plus.iter()
        .chain(zero)
        .chain(minus)
        .map(|(n, p, d)| gen(n, *p, d))
        .collect()
}

fn sch1_generators(plus: &[GenSpec], zero: &[GenSpec], minus: &[GenSpec]) -> Vec<GeneratorInfo> {
    let mut p: Vec<GenSpec> = vec![("G", E, &[1]), ("K", E, &[2])];
    p.extend_from_slice(plus);
    let mut z: Vec<GenSpec> = vec![("D", E, &[0]), ("M", E, &[0])];
    z.extend_from_slice(zero);
    let mut m: Vec<GenSpec> = vec![("H", E, &[-2]), ("P", E, &[-1])];
    m.extend_from_slice(minus);
    assemble(&p, &z, &m)
}

fn sch1_relations() -> Vec<Rel> {
    vec![
        rel("H", "D", &[(2, "H")]),
        rel("H", "K", &[(1, "D")]),
        rel("D", "K", &[(2, "K")]),
        rel("P", "G", &[(1, "M")]),
        rel("H", "G", &[(1, "P")]),
        rel("D", "G", &[(1, "G")]),
        rel("P", "D", &[(1, "P")]),
        rel("P", "K", &[(1, "G")]),
    ]
}

fn s11_generators() -> Vec<GeneratorInfo> {
    sch1_generators(&[("S", O, &[1])], &[("X", O, &[0])], &[("Q", O, &[-1])])
}

fn s11_relations() -> Vec<Rel> {
    let mut r = sch1_relations();
    r.extend([
        rel("Q", "Q", &[(-2, "H")]),
        rel("S", "S", &[(-2, "K")]),
        rel("X", "X", &[(-1, "M")]),
        rel("Q", "X", &[(-1, "P")]),
        rel("S", "X", &[(-1, "G")]),
        rel("Q", "S", &[(-1, "D")]),
        rel("Q", "D", &[(1, "Q")]),
        rel("Q", "K", &[(1, "S")]),
        rel("D", "S", &[(1, "S")]),
        rel("H", "S", &[(1, "Q")]),
        rel("Q", "G", &[(1, "X")]),
        rel("P", "S", &[(1, "X")]),
    ]);
    r
}

fn s12_generators() -> Vec<GeneratorInfo> {
    assemble(
        &[
            ("G", E, &[1, 0]),
            ("K", E, &[2, 0]),
            ("S+", O, &[1, 1]),
            ("S-", O, &[1, -1]),
            ("X+", O, &[0, 1]),
        ],
        &[("D", E, &[0, 0]), ("R", E, &[0, 0]), ("M", E, &[0, 0])],
        &[
            ("H", E, &[-2, 0]),
            ("P", E, &[-1, 0]),
            ("Q+", O, &[-1, 1]),
            ("Q-", O, &[-1, -1]),
            ("X-", O, &[0, -1]),
        ],
    )
}

fn s12_relations() -> Vec<Rel> {
    let mut r = sch1_relations();
    r.extend([
        rel("Q+", "Q-", &[(-2, "H")]),
        rel("S+", "S-", &[(-2, "K")]),
        rel("X+", "X-", &[(-1, "M")]),
        rel("Q+", "X-", &[(-1, "P")]),
        rel("Q-", "X+", &[(-1, "P")]),
        rel("S+", "X-", &[(-1, "G")]),
        rel("S-", "X+", &[(-1, "G")]),
        rel("Q+", "S-", &[(-1, "D"), (-1, "R")]),
        rel("Q-", "S+", &[(-1, "D"), (1, "R")]),
    ]);
    for s in ["+", "-"] {
        let sign = if s == "+" { 1 } else { -1 };
        let (q, sg, x) = (format!("Q{s}"), format!("S{s}"), format!("X{s}"));
        r.extend([
            rel(&q, "D", &[(1, &q)]),
            rel(&q, "K", &[(1, &sg)]),
            rel("D", &sg, &[(1, &sg)]),
            rel("H", &sg, &[(1, &q)]),
            rel(&q, "G", &[(1, &x)]),
            rel("P", &sg, &[(1, &x)]),
            rel("R", &q, &[(sign, &q)]),
            rel("R", &sg, &[(sign, &sg)]),
            rel("R", &x, &[(sign, &x)]),
        ]);
    }
    r
}

fn sch2_generators(plus: &[GenSpec], zero: &[GenSpec], minus: &[GenSpec]) -> Vec<GeneratorInfo> {
    let grading = |d: &[i32]| {
        let mut v = d.to_vec();
        v.resize(plus.first().or(minus.first()).map_or(2, |g| g.2.len()), 0);
        v
    };
    let base_plus = [("G+", [1, 1]), ("G-", [1, -1]), ("K", [2, 0])];
    let base_minus = [("H", [-2, 0]), ("P+", [-1, 1]), ("P-", [-1, -1])];
    let mut out: Vec<GeneratorInfo> = base_plus
        .iter()
        .map(|(n, d)| gen(n, E, &grading(d)))
        .collect();
    out.extend(plus.iter().map(|(n, p, d)| gen(n, *p, d)));
    out.extend(["D", "J", "M"].iter().map(|n| gen(n, E, &grading(&[0, 0]))));
    out.extend(zero.iter().map(|(n, p, d)| gen(n, *p, d)));
    out.extend(base_minus.iter().map(|(n, d)| gen(n, E, &grading(d))));
    out.extend(minus.iter().map(|(n, p, d)| gen(n, *p, d)));
    out
}

fn sch2_relations() -> Vec<Rel> {
    let mut r = vec![
        rel("H", "D", &[(2, "H")]),
        rel("H", "K", &[(1, "D")]),
        rel("D", "K", &[(2, "K")]),
        rel("P+", "G-", &[(2, "M")]),
        rel("P-", "G+", &[(2, "M")]),
    ];
    for s in ["+", "-"] {
        let sign = if s == "+" { 1 } else { -1 };
        let (g, p) = (format!("G{s}"), format!("P{s}"));
        r.extend([
            rel("H", &g, &[(1, &p)]),
            rel("D", &g, &[(1, &g)]),
            rel(&p, "D", &[(1, &p)]),
            rel(&p, "K", &[(1, &g)]),
            rel("J", &g, &[(sign, &g)]),
            rel("J", &p, &[(sign, &p)]),
        ]);
    }
    r
}

fn s21_generators() -> Vec<GeneratorInfo> {
    sch2_generators(
        &[("S", O, &[1, 0]), ("X+", O, &[0, 1])],
        &[],
        &[("Q", O, &[-1, 0]), ("X-", O, &[0, -1])],
    )
}

fn s21_relations() -> Vec<Rel> {
    let mut r = sch2_relations();
    r.extend([
        rel("Q", "Q", &[(-2, "H")]),
        rel("S", "S", &[(-2, "K")]),
        rel("X+", "X-", &[(-2, "M")]),
        rel("Q", "S", &[(-1, "D")]),
        rel("Q", "D", &[(1, "Q")]),
        rel("Q", "K", &[(1, "S")]),
        rel("D", "S", &[(1, "S")]),
        rel("H", "S", &[(1, "Q")]),
    ]);
    for s in ["+", "-"] {
        let sign = if s == "+" { 1 } else { -1 };
        let (g, p, x) = (format!("G{s}"), format!("P{s}"), format!("X{s}"));
        r.extend([
            rel("Q", &x, &[(-1, &p)]),
            rel("S", &x, &[(-1, &g)]),
            rel("Q", &g, &[(1, &x)]),
            rel(&p, "S", &[(1, &x)]),
            rel("J", &x, &[(sign, &x)]),
        ]);
    }
    r
}

fn s22_generators() -> Vec<GeneratorInfo> {
    sch2_generators(
        &[
            ("S+", O, &[1, 0, 1]),
            ("S-", O, &[1, 0, -1]),
            ("X++", O, &[0, 1, 1]),
            ("X+-", O, &[0, 1, -1]),
        ],
        &[("R", E, &[0, 0, 0])],
        &[
            ("Q+", O, &[-1, 0, 1]),
            ("Q-", O, &[-1, 0, -1]),
            ("X-+", O, &[0, -1, 1]),
            ("X--", O, &[0, -1, -1]),
        ],
    )
}

fn flip(s: &str) -> &'static str {
    if s == "+" {
        "-"
    } else {
        "+"
    }
}

fn s22_relations() -> Vec<Rel> {
    let mut r = sch2_relations();
    r.extend([
        rel("Q+", "Q-", &[(-2, "H")]),
        rel("S+", "S-", &[(-2, "K")]),
        rel("X++", "X--", &[(-2, "M")]),
        rel("X+-", "X-+", &[(-2, "M")]),
        rel("Q+", "S-", &[(-1, "D"), (-1, "R")]),
        rel("Q-", "S+", &[(-1, "D"), (1, "R")]),
    ]);
    for a in ["+", "-"] {
        let sign_a = if a == "+" { 1 } else { -1 };
        let (q, s) = (format!("Q{a}"), format!("S{a}"));
        r.extend([
            rel(&q, "D", &[(1, &q)]),
            rel(&q, "K", &[(1, &s)]),
            rel("D", &s, &[(1, &s)]),
            rel("H", &s, &[(1, &q)]),
            rel("R", &q, &[(sign_a, &q)]),
            rel("R", &s, &[(sign_a, &s)]),
        ]);
        for sigma in ["+", "-"] {
            let sign_sigma = if sigma == "+" { 1 } else { -1 };
            let (g, p) = (format!("G{sigma}"), format!("P{sigma}"));
            // {Q_a, X_{sigma, -a}} = -P_sigma, {S_a, X_{sigma, -a}} = -G_sigma
            let x_opp = format!("X{sigma}{}", flip(a));
            r.push(rel(&q, &x_opp, &[(-1, &p)]));
            r.push(rel(&s, &x_opp, &[(-1, &g)]));
            // [G_sigma, Q_a] = -X_{sigma a}, [P_sigma, S_a] = X_{sigma a}
            let x = format!("X{sigma}{a}");
            r.push(rel(&g, &q, &[(-1, &x)]));
            r.push(rel(&p, &s, &[(1, &x)]));
            // R and J act on X_{sigma a} by a and sigma.
            r.push(rel("R", &x, &[(sign_a, &x)]));
            r.push(rel("J", &x, &[(sign_sigma, &x)]));
        }
    }
    r
}

fn s22hat_generators() -> Vec<GeneratorInfo> {
    sch2_generators(
        &[
            ("S+", O, &[1, -1, 2]),
            ("S-", O, &[1, 1, -2]),
            ("X+", O, &[0, 0, 2]),
        ],
        &[("R", E, &[0, 0, 0])],
        &[
            ("Q+", O, &[-1, -1, 2]),
            ("Q-", O, &[-1, 1, -2]),
            ("X-", O, &[0, 0, -2]),
        ],
    )
}

fn s22hat_relations() -> Vec<Rel> {
    let mut r = sch2_relations();
    r.extend([
        rel("Q+", "Q-", &[(-2, "H")]),
        rel("S+", "S-", &[(-2, "K")]),
        rel("X+", "X-", &[(-1, "M")]),
        rel("Q+", "S-", &[(-1, "D"), (-1, "J"), (-1, "R")]),
        rel("Q-", "S+", &[(-1, "D"), (1, "J"), (1, "R")]),
    ]);
    for a in ["+", "-"] {
        let sign = if a == "+" { 1 } else { -1 };
        let b = flip(a);
        let (q, s, x) = (format!("Q{a}"), format!("S{a}"), format!("X{a}"));
        let (g, p) = (format!("G{a}"), format!("P{a}"));
        let (x_opp, g_opp, p_opp) = (format!("X{b}"), format!("G{b}"), format!("P{b}"));
        r.extend([
            rel(&q, &x_opp, &[(-1, &p_opp)]),
            rel(&s, &x_opp, &[(-1, &g_opp)]),
            rel(&q, "D", &[(1, &q)]),
            rel(&q, "K", &[(1, &s)]),
            rel("D", &s, &[(1, &s)]),
            rel("H", &s, &[(1, &q)]),
            rel(&q, &g, &[(2, &x)]),
            rel(&p, &s, &[(2, &x)]),
            rel("J", &q, &[(-sign, &q)]),
            rel("J", &s, &[(-sign, &s)]),
            rel("R", &q, &[(2 * sign, &q)]),
            rel("R", &s, &[(2 * sign, &s)]),
            rel("R", &x, &[(2 * sign, &x)]),
        ]);
    }
    r
}
