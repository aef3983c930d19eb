//! Acceptance suite. Each test prints one `[PASS]` or `[FAIL]` line for its
//! criterion (visible with `--nocapture`) and then asserts it.

use std::io::Write;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sschr::algebra::{load_algebra, OmegaConvention, CATALOG};
use sschr::coeff::{parse_rational, Bindings, Param, Poly, RatFunc, Scalar};
use sschr::shapovalov::{gram, pair, radical_check, rank_deficiency};
use sschr::singular::{
    closed_form, parametric_scan, quotient_scan, scan, verify, QuotientContext, SingularCertificate,
    DEFAULT_BUDGET,
};
use sschr::verma::{make_module, ModuleVector, VermaModule};

fn q(s: &str) -> BigRational {
    parse_rational(s).unwrap()
}

/// A module with `m = 1` unless `m` is given.
fn module(alg: &str, params: &[(Param, &str)]) -> VermaModule {
    let mut pairs: Vec<(Param, BigRational)> = params.iter().map(|(p, v)| (*p, q(v))).collect();
    if !params.iter().any(|(p, _)| *p == Param::M) {
        pairs.push((Param::M, q("1")));
    }
    make_module(&load_algebra(alg).unwrap(), &Bindings::from_pairs(&pairs).unwrap()).unwrap()
}

fn module_of(cert: &SingularCertificate) -> VermaModule {
    make_module(&load_algebra(&cert.algebra).unwrap(), &cert.bindings).unwrap()
}

/// Written to stderr directly so the line shows even when the harness
/// captures output.
fn report(n: u32, title: &str, pass: bool, detail: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    let line = format!("[{tag}] criterion {n}: {title} ({detail})\n");
    std::io::stderr().write_all(line.as_bytes()).unwrap();
}

fn level_of(module: &VermaModule, v: &ModuleVector) -> u32 {
    module.degree_of(v).expect("homogeneous")[0] as u32
}

/// Closed form plus scan to two levels past it: exactly one certificate,
/// equal to the closed form. Returns the certificate or a failure message.
fn closed_form_agreement(module: &VermaModule) -> Result<SingularCertificate, String> {
    let label = format!("{} {:?}", module.algebra().name(), module.bindings().to_map());
    let cf = closed_form(module).map_err(|e| format!("{label}: {e}"))?;
    let check = verify(module, &cf.vector);
    if !check.singular {
        return Err(format!("{label}: closed form {}", check.verdict));
    }
    let level = level_of(module, &cf.vector);
    let certs = scan(module, level + 2, None).map_err(|e| format!("{label}: {e}"))?;
    if certs.len() != 1 {
        return Err(format!("{label}: scan to level {} found {} vectors", level + 2, certs.len()));
    }
    let found = certs[0].module_vector(module).unwrap();
    if found != cf.vector {
        return Err(format!("{label}: scan vector differs from closed form"));
    }
    Ok(certs.into_iter().next().unwrap())
}

fn empty_scan(module: &VermaModule, max_level: u32) -> Result<(), String> {
    let certs = scan(module, max_level, None).unwrap();
    if certs.is_empty() {
        Ok(())
    } else {
        Err(format!(
            "{} {:?}: {} vectors up to level {max_level}, first at weight {:?}",
            module.algebra().name(),
            module.bindings().to_map(),
            certs.len(),
            certs[0].weight.degree
        ))
    }
}

const S11_ADMISSIBLE: [&str; 3] = ["-1/2", "1/2", "3/2"];
const S11_INADMISSIBLE: [&str; 4] = ["-1", "0", "1/4", "1"];

fn s11_certificates() -> Vec<Result<SingularCertificate, String>> {
    S11_ADMISSIBLE
        .iter()
        .map(|d| closed_form_agreement(&module("s11", &[(Param::D, d)])))
        .collect()
}

fn s12_admissible() -> Vec<VermaModule> {
    let mut out = Vec::new();
    for d in ["1/2", "3/2", "5/2"] {
        for r in ["0", "1"] {
            out.push(module("s12", &[(Param::D, d), (Param::R, r)]));
        }
    }
    out
}

fn s21_admissible() -> Vec<VermaModule> {
    let mut out = Vec::new();
    for d in ["-1", "0", "1"] {
        for j in ["0", "1"] {
            out.push(module("s21", &[(Param::D, d), (Param::J, j)]));
        }
    }
    out
}

fn s22_module(d: &str) -> VermaModule {
    module("s22", &[(Param::D, d), (Param::J, "0"), (Param::R, "0")])
}

const S22HAT_D: [&str; 2] = ["0", "1"];
const S22HAT_J: [&str; 3] = ["0", "1", "2"];
const S22HAT_R: [&str; 5] = ["-3", "-2", "-3/2", "-1", "0"];

/// Scan of one grid point up to two levels past the closed-form level `2d + 2`.
fn s22hat_scan(d: &str, j: &str, r: &str) -> (VermaModule, Vec<SingularCertificate>) {
    let m = module("s22hat", &[(Param::D, d), (Param::J, j), (Param::R, r)]);
    let level = 2 * q(d).to_integer().to_string().parse::<u32>().unwrap() + 4;
    let certs = scan(&m, level, None).unwrap();
    (m, certs)
}

fn s22hat_target(d: &str, j: &str) -> BigRational {
    -(q(d) - q(j) + q("2")) / q("2")
}

/// Every certificate produced by the closed-form and grid criteria.
fn all_certificates() -> Vec<SingularCertificate> {
    let mut out: Vec<SingularCertificate> = s11_certificates().into_iter().flatten().collect();
    for m in s12_admissible().iter().chain(s21_admissible().iter()) {
        out.extend(closed_form_agreement(m).ok());
    }
    for d in ["0", "1"] {
        let m = s22_module(d);
        out.extend(scan(&m, 2 * d.parse::<u32>().unwrap() + 4, None).unwrap());
    }
    for d in S22HAT_D {
        for j in S22HAT_J {
            for r in S22HAT_R {
                out.extend(s22hat_scan(d, j, r).1);
            }
        }
    }
    out
}

#[test]
fn criterion_1_catalog_validity() {
    let start = Instant::now();
    let mut problems = Vec::new();
    let mut triples = 0;
    for name in CATALOG {
        let r = load_algebra(name).unwrap().validate();
        triples += r.triples_checked;
        if !r.jacobi_failures.is_empty() || !r.skew_failures.is_empty() || !r.degree_failures.is_empty() {
            problems.push(format!(
                "{name}: {} Jacobi, {} skew, {} degree failures",
                r.jacobi_failures.len(),
                r.skew_failures.len(),
                r.degree_failures.len()
            ));
        }
    }
    let elapsed = start.elapsed();
    let pass = problems.is_empty() && elapsed < Duration::from_secs(10);
    report(
        1,
        "catalog validity",
        pass,
        &format!("{triples} triples, {elapsed:.2?}; {}", problems.join("; ")),
    );
    assert!(pass, "{problems:?} in {elapsed:?}");
}

#[test]
fn criterion_2_omega() {
    let mut problems = Vec::new();
    for name in CATALOG {
        let o = load_algebra(name).unwrap().validate().omega;
        if !(o.defined_everywhere && o.involutive && o.exchanges_parts && o.parity_preserving) {
            problems.push(format!("{name}: omega is not an involution exchanging the parts"));
        }
        if o.convention != Some(OmegaConvention::Unsigned) || !o.unsigned_failures.is_empty() {
            problems.push(format!("{name}: anti-automorphism fails on {:?}", o.unsigned_failures));
        }
    }
    let pass = problems.is_empty();
    report(2, "omega involution and anti-automorphism", pass, &problems.join("; "));
    assert!(pass, "{problems:?}");
}

#[test]
fn criterion_3_s11() {
    let start = Instant::now();
    let mut problems: Vec<String> = s11_certificates().into_iter().filter_map(Result::err).collect();
    for d in S11_INADMISSIBLE {
        if let Err(e) = empty_scan(&module("s11", &[(Param::D, d)]), 8) {
            problems.push(e);
        }
    }
    let elapsed = start.elapsed();
    let pass = problems.is_empty() && elapsed < Duration::from_secs(60);
    report(3, "s11 closed form and scan", pass, &format!("{elapsed:.2?}; {}", problems.join("; ")));
    assert!(pass, "{problems:?} in {elapsed:?}");
}

#[test]
fn criterion_4_s12_and_s21() {
    let mut problems = Vec::new();
    for m in s12_admissible().iter().chain(s21_admissible().iter()) {
        if let Err(e) = closed_form_agreement(m) {
            problems.push(e);
        }
    }
    for d in ["-1/2", "1/4", "2"] {
        for r in ["0", "1"] {
            if let Err(e) = empty_scan(&module("s12", &[(Param::D, d), (Param::R, r)]), 8) {
                problems.push(e);
            }
        }
    }
    for d in ["-2", "-1/2", "1/2"] {
        for j in ["0", "1"] {
            if let Err(e) = empty_scan(&module("s21", &[(Param::D, d), (Param::J, j)]), 8) {
                problems.push(e);
            }
        }
    }

    // Boundary of the exponent range: which d carry a singular vector at the
    // closed-form weight.
    let mut boundary = Vec::new();
    for d in ["-1", "-1/2", "0", "1/2", "1", "3/2", "2"] {
        let s12 = module("s12", &[(Param::D, d), (Param::R, "0")]);
        let s21 = module("s21", &[(Param::D, d), (Param::J, "0")]);
        let at_weight = |m: &VermaModule| {
            scan(m, 6, None)
                .unwrap()
                .iter()
                .filter(|c| c.weight.degree[1..].iter().all(|&x| x == 0))
                .map(|c| c.weight.level)
                .collect::<Vec<_>>()
        };
        boundary.push(format!("d={d}: s12 {:?} s21 {:?}", at_weight(&s12), at_weight(&s21)));
    }
    let pass = problems.is_empty();
    report(
        4,
        "s12 and s21 closed forms and scans",
        pass,
        &format!(
            "levels of zero-charge singular vectors: {}; {}",
            boundary.join(", "),
            problems.join("; ")
        ),
    );
    assert!(pass, "{problems:?}");
}

#[test]
fn criterion_5_s22() {
    let mut problems = Vec::new();
    let mut discrepancy = String::new();
    for d in ["0", "1"] {
        let m = s22_module(d);
        let level = 2 * d.parse::<u32>().unwrap() + 4;
        let certs = scan(&m, level, None).unwrap();
        if certs.len() != 1 {
            problems.push(format!("d={d}: {} vectors up to level {level}", certs.len()));
            continue;
        }
        let cf = closed_form(&m).unwrap();
        match &cf.discrepancy {
            Some(disc) if disc.missing_generators == ["X+", "S"] => {
                discrepancy = format!(
                    "omitted factor {} (missing {})",
                    disc.omitted_factor,
                    disc.missing_generators.join(", ")
                )
            }
            other => problems.push(format!("d={d}: discrepancy report {other:?}")),
        }
        if d == "0" && certs[0].module_vector(&m).unwrap() != cf.vector {
            problems.push("d=0: scan vector is not u0".into());
        }
    }
    let pass = problems.is_empty();
    report(5, "s22 scan and u0", pass, &format!("{discrepancy}; {}", problems.join("; ")));
    assert!(pass, "{problems:?}");
}

#[test]
fn criterion_6_s22hat_grid() {
    let mut mismatches = Vec::new();
    let mut points = 0;
    for d in S22HAT_D {
        for j in S22HAT_J {
            for r in S22HAT_R {
                points += 1;
                let (_, certs) = s22hat_scan(d, j, r);
                let expected = q(r) == s22hat_target(d, j);
                if certs.is_empty() == expected {
                    mismatches.push(format!(
                        "(d={d}, j={j}, r={r}): {} vectors at {:?}",
                        certs.len(),
                        certs.iter().map(|c| c.weight.degree.clone()).collect::<Vec<_>>()
                    ));
                }
            }
        }
    }
    let m = module("s22hat", &[(Param::D, "1"), (Param::J, "1"), (Param::R, "-1")]);
    let closed_ok = closed_form(&m).map(|cf| verify(&m, &cf.vector).singular).unwrap_or(false);
    let pass = mismatches.is_empty() && closed_ok;
    report(
        6,
        "s22hat scan nonempty exactly on r = -(d - j + 2)/2",
        pass,
        &format!(
            "closed form at d=1, j=1, r=-1 verifies: {closed_ok}; {} of {points} grid points disagree: {}",
            mismatches.len(),
            mismatches.join("; ")
        ),
    );
    assert!(pass, "{mismatches:?}");
}

#[test]
fn criterion_7_quotients() {
    let start = Instant::now();
    let certs = all_certificates();
    let mut nonempty = Vec::new();
    for cert in &certs {
        let m = module_of(cert);
        let ctx = QuotientContext::from_certificate(&m, cert).unwrap();
        let found = quotient_scan(&ctx, 8).unwrap();
        if !found.is_empty() {
            nonempty.push(format!(
                "{} {:?} quotient by weight {:?}: {} vectors at {:?}",
                cert.algebra,
                cert.bindings.to_map(),
                cert.weight.degree,
                found.len(),
                found.iter().map(|c| c.weight.degree.clone()).collect::<Vec<_>>()
            ));
        }
    }
    let pass = nonempty.is_empty();
    report(
        7,
        "quotients have no singular vectors up to level 8",
        pass,
        &format!(
            "{} certificates, {:.2?}; {} nonempty: {}",
            certs.len(),
            start.elapsed(),
            nonempty.len(),
            nonempty.join("; ")
        ),
    );
    assert!(pass, "{nonempty:?}");
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(rng.gen_range(-5i64..6).into(), rng.gen_range(1i64..4).into())
}

fn random_module(rng: &mut ChaCha8Rng) -> VermaModule {
    let alg = load_algebra(CATALOG[rng.gen_range(0..CATALOG.len())]).unwrap();
    let params = make_module(&alg, &Bindings::symbolic()).unwrap().parameters().to_vec();
    let pairs: Vec<(Param, BigRational)> = params
        .into_iter()
        .map(|p| {
            let mut v = random_rational(rng);
            while p == Param::M && v == BigRational::from_integer(0.into()) {
                v = random_rational(rng);
            }
            (p, v)
        })
        .collect();
    make_module(&alg, &Bindings::from_pairs(&pairs).unwrap()).unwrap()
}

/// A random even-sector vector of one weight space.
fn random_vector(rng: &mut ChaCha8Rng, module: &VermaModule, degree: &[i32]) -> ModuleVector {
    let basis = module.weight_space(degree);
    let mut v = ModuleVector::zero();
    for mono in &basis {
        if rng.gen_bool(0.7) {
            let c = Scalar::from_rational(&random_rational(rng));
            v.add_assign(&module.scalar_mul(&c, &module.sector_vector(mono)));
        }
    }
    v
}

fn random_degree(rng: &mut ChaCha8Rng, module: &VermaModule, max_level: u32) -> Vec<i32> {
    let level = rng.gen_range(0..=max_level);
    let spaces: Vec<Vec<i32>> = module.weight_spaces(level).into_keys().collect();
    spaces[rng.gen_range(0..spaces.len())].clone()
}

#[test]
fn criterion_8_form() {
    let mut problems = Vec::new();

    for name in CATALOG {
        let m = make_module(&load_algebra(name).unwrap(), &Bindings::symbolic()).unwrap();
        if !pair(&m, &m.v0(), &m.v0()).is_one() {
            problems.push(format!("{name}: (v0, v0) != 1"));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut contravariance_failures = 0;
    let mut nontrivial = 0;
    for _ in 0..200 {
        let m = random_module(&mut rng);
        let alg = m.algebra();
        let x = rng.gen_range(0..alg.len());
        let wx = alg.omega(x).unwrap();
        let du = random_degree(&mut rng, &m, 3);
        let u = random_vector(&mut rng, &m, &du);
        // Aim v at the weight where the pairing can be nonzero.
        let target: Vec<i32> = du.iter().zip(alg.degree(x)).map(|(a, b)| a + b).collect();
        let dv = if target[0] >= 0 && !m.weight_space(&target).is_empty() {
            target
        } else {
            random_degree(&mut rng, &m, 3)
        };
        let v = random_vector(&mut rng, &m, &dv);
        let left = pair(&m, &m.act(x, &u), &v);
        let right = pair(&m, &u, &m.act(wx, &v));
        if !left.is_zero() {
            nontrivial += 1;
        }
        if left != right {
            contravariance_failures += 1;
        }
    }
    if contravariance_failures > 0 {
        problems.push(format!("contravariance fails in {contravariance_failures} of 200 cases"));
    }

    let mut cross_weight = 0;
    for _ in 0..100 {
        let m = random_module(&mut rng);
        let a = random_degree(&mut rng, &m, 3);
        let b = random_degree(&mut rng, &m, 3);
        if a[0] == b[0] {
            continue;
        }
        let ua = m.weight_space(&a);
        let ub = m.weight_space(&b);
        let x = m.sector_vector(&ua[rng.gen_range(0..ua.len())]);
        let y = m.sector_vector(&ub[rng.gen_range(0..ub.len())]);
        cross_weight += 1;
        if !pair(&m, &x, &y).is_zero() {
            problems.push(format!("{}: basis vectors of levels {} and {} pair nontrivially", m.algebra().name(), a[0], b[0]));
        }
    }

    let certs = all_certificates();
    for cert in &certs {
        let m = module_of(cert);
        let r = radical_check(&m, cert).unwrap();
        if !r.passed {
            problems.push(format!(
                "{} {:?} weight {:?}: not in the radical, pairs with {:?}",
                cert.algebra,
                cert.bindings.to_map(),
                cert.weight.degree,
                r.failures
            ));
        }
    }

    // Rank drop per level over the s11 grid.
    for d in S11_ADMISSIBLE.iter().chain(S11_INADMISSIBLE.iter()) {
        let m = module("s11", &[(Param::D, d)]);
        let first_drop = (0..=8).find(|&l| rank_deficiency(&m, l) > 0);
        let expected = S11_ADMISSIBLE.contains(d).then(|| {
            let k = (q(d) + q("1/2")).to_integer().to_string().parse::<u32>().unwrap();
            2 * k + 1
        });
        if first_drop != expected {
            problems.push(format!("s11 d={d}: first rank drop at {first_drop:?}, expected {expected:?}"));
        }
    }

    let pass = problems.is_empty();
    report(
        8,
        "contravariant form",
        pass,
        &format!(
            "200 contravariance cases ({nontrivial} nonzero), {cross_weight} cross-weight pairs, {} certificates; {}",
            certs.len(),
            problems.join("; ")
        ),
    );
    assert!(pass, "{problems:?}");
}

#[test]
fn criterion_9_parametric() {
    let mut problems = Vec::new();

    let s12 = make_module(&load_algebra("s12").unwrap(), &Bindings::symbolic()).unwrap();
    let g = gram(&s12, &[0, 1]);
    let minus_m = Scalar::from_ratfunc(RatFunc::var(Param::M.index()).neg());
    if g.matrix != vec![vec![minus_m]] || g.rank != 1 || g.basis != ["X+"] {
        problems.push(format!("s12 Gram at (0, 1): {:?} on {:?}", g.matrix, g.basis));
    }

    let s11 = make_module(&load_algebra("s11").unwrap(), &Bindings::symbolic()).unwrap();
    let reports = parametric_scan(&s11, 1, DEFAULT_BUDGET).unwrap();
    let two_d_plus_one = &Poly::var(Param::D.index()).scale(&2.into()) + &Poly::one();
    match reports.iter().find(|r| r.weight.level == 1) {
        Some(r) => {
            let proportional = r
                .condition_poly
                .div_exact(&two_d_plus_one)
                .is_some_and(|quot| quot.is_constant() && !quot.is_zero());
            if !proportional {
                problems.push(format!("s11 level 1 condition is {}", r.condition));
            }
        }
        None => problems.push("no level 1 report for s11".into()),
    }

    let pass = problems.is_empty();
    report(9, "parametric spot checks", pass, &problems.join("; "));
    assert!(pass, "{problems:?}");
}
