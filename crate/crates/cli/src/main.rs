use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde::Serialize;
use sschr::algebra::{load_algebra, Part, CATALOG};
use sschr::coeff::{parse_rational, Bindings, Param};
use sschr::shapovalov::{gram, gram_level, radical_check, GramReport};
use sschr::singular::{
    budget_from_env, check_certificate, closed_form, parametric_scan, quotient_scan, scan, verify,
    QuotientContext, SingularCertificate, SingularError, TermDoc,
};
use sschr::verma::{make_module, VermaModule};

/// Largest level accepted in parametric mode.
const PARAMETRIC_MAX_LEVEL: u32 = 4;

#[derive(Parser)]
#[command(name = "sschr", version, about = "Singular vectors of super Schrodinger Verma modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the algebra catalog.
    Algebras {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check super-Jacobi, grading and the anti-automorphism of one algebra.
    Validate {
        algebra: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search every weight space up to a level for singular vectors.
    Scan {
        algebra: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 4)]
        max_level: u32,
        /// Report the vanishing condition of each weight space with the
        /// unbound parameters kept symbolic.
        #[arg(long)]
        parametric: bool,
        /// Directory for certificates (numeric mode) or report file
        /// (parametric mode).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and verify the closed-form singular vector.
    ClosedForm {
        algebra: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a certificate file from its own contents.
    Verify { certificate: PathBuf },
    /// Search the quotient by the submodule a certificate generates.
    QuotientScan {
        certificate: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_level: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gram matrices of the contravariant form.
    Gram {
        algebra: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, conflicts_with = "weight")]
        level: Option<u32>,
        /// Full multidegree, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weight: Option<Vec<i32>>,
        /// Allow unbound parameters.
        #[arg(long)]
        parametric: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed form, scan, quotient scan and radical check in one run.
    Prop {
        algebra: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 8)]
        quotient_level: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = rational)]
    d: Option<BigRational>,
    #[arg(long, allow_hyphen_values = true, value_parser = rational)]
    m: Option<BigRational>,
    #[arg(long, allow_hyphen_values = true, value_parser = rational)]
    j: Option<BigRational>,
    #[arg(long, allow_hyphen_values = true, value_parser = rational)]
    r: Option<BigRational>,
}

fn rational(s: &str) -> Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Outcome of a command that ran to completion.
enum Status {
    Ok,
    Failed,
}

/// Errors caused by the input rather than by the mathematics.
#[derive(Debug)]
struct InvalidInput(String);

impl std::fmt::Display for InvalidInput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InvalidInput {}

fn invalid(msg: impl Into<String>) -> anyhow::Error {
    InvalidInput(msg.into()).into()
}

fn singular_error(e: SingularError) -> anyhow::Error {
    match e {
        SingularError::NotSingular(_) => e.into(),
        other => invalid(other.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<InvalidInput>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(command: Command) -> anyhow::Result<Status> {
    match command {
        Command::Algebras { out } => algebras(out.as_deref()),
        Command::Validate { algebra, out } => validate(&algebra, out.as_deref()),
        Command::Scan { algebra, params, max_level, parametric, out } => {
            if parametric {
                parametric_command(&algebra, &params, max_level, out.as_deref())
            } else {
                scan_command(&algebra, &params, max_level, out.as_deref())
            }
        }
        Command::ClosedForm { algebra, params, out } => closed_form_command(&algebra, &params, out.as_deref()),
        Command::Verify { certificate } => verify_command(&certificate),
        Command::QuotientScan { certificate, max_level, out } => {
            quotient_command(&certificate, max_level, out.as_deref())
        }
        Command::Gram { algebra, params, level, weight, parametric, out } => {
            gram_command(&algebra, &params, level, weight, parametric, out.as_deref())
        }
        Command::Prop { algebra, params, quotient_level, out } => {
            prop_command(&algebra, &params, quotient_level, out.as_deref())
        }
    }
}

fn build_module(algebra: &str, params: &ParamArgs, numeric: bool) -> anyhow::Result<VermaModule> {
    let alg = load_algebra(algebra).map_err(|e| invalid(e.to_string()))?;
    let pairs: Vec<(Param, BigRational)> = [
        (Param::D, &params.d),
        (Param::M, &params.m),
        (Param::J, &params.j),
        (Param::R, &params.r),
    ]
    .into_iter()
    .filter_map(|(p, v)| v.clone().map(|v| (p, v)))
    .collect();
    let bindings = Bindings::from_pairs(&pairs).map_err(|e| invalid(e.to_string()))?;
    let module = make_module(&alg, &bindings).map_err(|e| invalid(e.to_string()))?;
    if numeric && !module.is_numeric() {
        let missing: Vec<String> = module.unbound_parameters().iter().map(|p| format!("--{p}")).collect();
        return Err(invalid(format!(
            "{algebra} needs {} in numeric mode",
            missing.join(", ")
        )));
    }
    Ok(module)
}

fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_text(path, &text)
}

fn write_text(path: &Path, text: &str) -> anyhow::Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn read_certificate(path: &Path) -> anyhow::Result<SingularCertificate> {
    let text = fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    SingularCertificate::from_json(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn format_terms(terms: &[TermDoc]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .map(|t| {
            let c = t.coeff.to_string();
            let mono = if t.monomial == "1" { "v0".to_string() } else { format!("{} v0", t.monomial) };
            if c == "1" {
                mono
            } else {
                format!("({c}) {mono}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn certificate_name(cert: &SingularCertificate, index: usize) -> String {
    let degree: Vec<String> = cert.weight.degree.iter().map(|d| d.to_string()).collect();
    format!("{}_{:02}_w{}.json", cert.algebra, index, degree.join("_"))
}

/// Prints one line per certificate and writes them to `out` when given.
fn emit_certificates(certs: &[SingularCertificate], out: Option<&Path>) -> anyhow::Result<()> {
    for (i, cert) in certs.iter().enumerate() {
        println!("  weight {:?}: {}", cert.weight.degree, format_terms(&cert.vector));
        if let Some(dir) = out {
            write_text(&dir.join(certificate_name(cert, i)), &(cert.to_json() + "\n"))?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct CatalogEntry {
    name: String,
    grading_rank: usize,
    generators: Vec<String>,
    plus: Vec<String>,
    zero: Vec<String>,
    minus: Vec<String>,
    odd: Vec<String>,
}

fn algebras(out: Option<&Path>) -> anyhow::Result<Status> {
    let mut entries = Vec::new();
    for name in CATALOG {
        let alg = load_algebra(name)?;
        let names = |part: Part| -> Vec<String> {
            alg.parts(part).iter().map(|&g| alg.generator(g).name.clone()).collect()
        };
        let entry = CatalogEntry {
            name: name.to_string(),
            grading_rank: alg.grading_rank(),
            generators: alg.generators().iter().map(|g| g.name.clone()).collect(),
            plus: names(Part::Plus),
            zero: names(Part::Zero),
            minus: names(Part::Minus),
            odd: (0..alg.len())
                .filter(|&g| alg.parity(g).is_odd())
                .map(|g| alg.generator(g).name.clone())
                .collect(),
        };
        println!("{alg}");
        println!("  plus:  {}", entry.plus.join(" "));
        println!("  zero:  {}", entry.zero.join(" "));
        println!("  minus: {}", entry.minus.join(" "));
        entries.push(entry);
    }
    if let Some(path) = out {
        write_json(path, &entries)?;
    }
    Ok(Status::Ok)
}

fn validate(algebra: &str, out: Option<&Path>) -> anyhow::Result<Status> {
    let alg = load_algebra(algebra).map_err(|e| invalid(e.to_string()))?;
    let report = alg.validate();
    println!("{alg}");
    println!("  triples checked:      {}", report.triples_checked);
    println!("  pairs checked:        {}", report.pairs_checked);
    println!("  Jacobi failures:      {}", report.jacobi_failures.len());
    println!("  skew failures:        {}", report.skew_failures.len());
    println!("  degree failures:      {}", report.degree_failures.len());
    println!("  parity failures:      {}", report.parity_failures.len());
    println!("  omega convention:     {:?}", report.omega.convention);
    if let Some(path) = out {
        write_json(path, &report)?;
    }
    if report.passes() {
        println!("all checks pass");
        Ok(Status::Ok)
    } else {
        println!("validation failed");
        Ok(Status::Failed)
    }
}

fn scan_command(algebra: &str, params: &ParamArgs, max_level: u32, out: Option<&Path>) -> anyhow::Result<Status> {
    let module = build_module(algebra, params, true)?;
    let certs = scan(&module, max_level, None).map_err(singular_error)?;
    println!(
        "{algebra} {}: {} singular vector(s) up to level {max_level}",
        module.bindings(),
        certs.len()
    );
    emit_certificates(&certs, out)?;
    Ok(Status::Ok)
}

fn parametric_command(algebra: &str, params: &ParamArgs, max_level: u32, out: Option<&Path>) -> anyhow::Result<Status> {
    if max_level > PARAMETRIC_MAX_LEVEL {
        return Err(invalid(format!(
            "parametric mode is limited to level {PARAMETRIC_MAX_LEVEL}"
        )));
    }
    let module = build_module(algebra, params, false)?;
    let reports = parametric_scan(&module, max_level, budget_from_env()).map_err(singular_error)?;
    println!("{algebra} {}:", module.bindings());
    for r in &reports {
        let text = if r.always_singular {
            "singular for all parameters".to_string()
        } else if r.condition_poly.is_constant() {
            "never singular".to_string()
        } else {
            let roots = r.roots.as_ref().map(|rs| format!(", d in {{{}}}", rs.join(", "))).unwrap_or_default();
            format!("singular iff {} = 0{roots}", r.condition)
        };
        println!("  weight {:?} (dim {}): {text}", r.weight.degree, r.basis.len());
    }
    if let Some(path) = out {
        write_json(path, &reports)?;
    }
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct ClosedFormDoc {
    exponent: u32,
    verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    discrepancy: Option<sschr::singular::Discrepancy>,
    certificate: Option<SingularCertificate>,
}

fn closed_form_command(algebra: &str, params: &ParamArgs, out: Option<&Path>) -> anyhow::Result<Status> {
    let module = build_module(algebra, params, true)?;
    let cf = closed_form(&module).map_err(singular_error)?;
    let report = verify(&module, &cf.vector);
    let terms: Vec<TermDoc> = module
        .vector_to_terms(&cf.vector)
        .into_iter()
        .map(|(monomial, coeff)| TermDoc { monomial, coeff })
        .collect();
    println!("{algebra} {}: exponent {}", module.bindings(), cf.exponent);
    println!("  {}", format_terms(&terms));
    println!("  {}", report.verdict);
    if let Some(disc) = &cf.discrepancy {
        println!(
            "  omitted factor {} (missing generators: {}): {}",
            disc.omitted_factor,
            disc.missing_generators.join(", "),
            disc.note
        );
    }
    let certificate = if report.singular {
        Some(SingularCertificate::build(&module, &cf.vector, sschr::singular::Provenance::ClosedForm, None)?)
    } else {
        None
    };
    if let Some(path) = out {
        write_json(
            path,
            &ClosedFormDoc {
                exponent: cf.exponent,
                verdict: report.verdict.clone(),
                discrepancy: cf.discrepancy.clone(),
                certificate,
            },
        )?;
    }
    Ok(if report.singular { Status::Ok } else { Status::Failed })
}

fn verify_command(path: &Path) -> anyhow::Result<Status> {
    let cert = read_certificate(path)?;
    let report = check_certificate(&cert).map_err(singular_error)?;
    if report.passed {
        println!("{}: certificate verified", path.display());
        Ok(Status::Ok)
    } else {
        println!("{}: certificate rejected", path.display());
        for p in &report.problems {
            println!("  {p}");
        }
        Ok(Status::Failed)
    }
}

fn quotient_command(path: &Path, max_level: u32, out: Option<&Path>) -> anyhow::Result<Status> {
    let cert = read_certificate(path)?;
    if !check_certificate(&cert).map_err(singular_error)?.passed {
        println!("{}: certificate rejected", path.display());
        return Ok(Status::Failed);
    }
    let alg = load_algebra(&cert.algebra).map_err(|e| invalid(e.to_string()))?;
    let module = make_module(&alg, &cert.bindings).map_err(|e| invalid(e.to_string()))?;
    let ctx = QuotientContext::from_certificate(&module, &cert).map_err(singular_error)?;
    let found = quotient_scan(&ctx, max_level).map_err(singular_error)?;
    println!(
        "{} {}: quotient by weight {:?}: {} singular vector(s) up to level {max_level}",
        cert.algebra,
        cert.bindings,
        cert.weight.degree,
        found.len()
    );
    emit_certificates(&found, out)?;
    Ok(Status::Ok)
}

fn print_gram(g: &GramReport) {
    println!("  weight {:?}: basis [{}]", g.weight.degree, g.basis.join(", "));
    for row in &g.matrix {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        println!("    [{}]", cells.join(", "));
    }
    println!("    rank {} of {}, det {}", g.rank, g.basis.len(), g.determinant);
}

fn gram_command(
    algebra: &str,
    params: &ParamArgs,
    level: Option<u32>,
    weight: Option<Vec<i32>>,
    parametric: bool,
    out: Option<&Path>,
) -> anyhow::Result<Status> {
    let module = build_module(algebra, params, !parametric)?;
    let reports = match (level, weight) {
        (_, Some(w)) => {
            if w.len() != module.algebra().grading_rank() {
                return Err(invalid(format!(
                    "{algebra} weights have {} components",
                    module.algebra().grading_rank()
                )));
            }
            if w[0] < 0 || module.weight_space(&w).is_empty() {
                return Err(invalid(format!("weight {w:?} does not occur in the module")));
            }
            vec![gram(&module, &w)]
        }
        (Some(l), None) => gram_level(&module, l),
        (None, None) => return Err(invalid("gram needs --level or --weight")),
    };
    println!("{algebra} {}:", module.bindings());
    for g in &reports {
        print_gram(g);
    }
    if let Some(path) = out {
        write_json(path, &reports)?;
    }
    Ok(Status::Ok)
}

fn prop_command(algebra: &str, params: &ParamArgs, quotient_level: u32, out: Option<&Path>) -> anyhow::Result<Status> {
    let module = build_module(algebra, params, true)?;
    let mut ok = true;
    let cf = closed_form(&module).map_err(singular_error)?;
    let closed = verify(&module, &cf.vector);
    let level = module.degree_of(&cf.vector).map_or(0, |d| d[0].max(0) as u32);
    println!("{algebra} {}", module.bindings());
    println!("  closed form at level {level}: {}", closed.verdict);
    if let Some(disc) = &cf.discrepancy {
        println!("  omitted factor {}: missing {}", disc.omitted_factor, disc.missing_generators.join(", "));
    }
    ok &= closed.singular;

    let certs = scan(&module, level + 2, None).map_err(singular_error)?;
    let agrees = certs.len() == 1 && certs[0].module_vector(&module).is_ok_and(|v| v == cf.vector);
    println!(
        "  scan to level {}: {} singular vector(s){}",
        level + 2,
        certs.len(),
        if agrees { ", equal to the closed form" } else { "" }
    );
    emit_certificates(&certs, out)?;
    ok &= agrees;

    for cert in &certs {
        let radical = radical_check(&module, cert).map_err(singular_error)?;
        let ctx = QuotientContext::from_certificate(&module, cert).map_err(singular_error)?;
        let found = quotient_scan(&ctx, quotient_level).map_err(singular_error)?;
        println!(
            "  weight {:?}: radical {}, quotient to level {quotient_level}: {} singular vector(s)",
            cert.weight.degree,
            if radical.passed { "ok" } else { "FAILED" },
            found.len()
        );
        for f in &found {
            println!("    weight {:?}: {}", f.weight.degree, format_terms(&f.vector));
        }
        ok &= radical.passed && found.is_empty();
    }
    println!("  {}", if ok { "reproduced" } else { "NOT reproduced" });
    Ok(if ok { Status::Ok } else { Status::Failed })
}
