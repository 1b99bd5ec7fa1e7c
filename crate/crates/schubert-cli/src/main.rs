//! Command line front end: compute and render double Schubert polynomials,
//! run the verification suites, expand products in the Schubert basis, and
//! display degeneracy-locus classes in Chern notation.

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use schubert::families::{
    double_schubert, grassmannian_closed, schubert_polynomial, SchubertRequest, Variant,
};
use schubert::loci::{
    locus_presentation, ssc_presentation, AtomKernel, BundleRef, ChernFactor, LocusPresentation,
};
use schubert::partitions::StrictPartition;
use schubert::poly::{ci, Polynomial};
use schubert::quotient::structure_constants;
use schubert::verify::run_suite;
use schubert::weyl::{
    max_grassmannian, Family, Generator, GroupContext, SignedPermutation, WeylError,
};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "schubert",
    version,
    about = "Exact double Schubert polynomials for the classical families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one polynomial and render it
    Poly(PolyArgs),
    /// Run a named verification suite
    Verify(VerifyArgs),
    /// Expand a product of two classes in the Schubert basis
    Structure(StructureArgs),
    /// Display a degeneracy-locus class in Chern notation
    Locus(LocusArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Latex,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    #[value(name = "I", alias = "1")]
    I,
    #[value(name = "II", alias = "2")]
    II,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::I => Variant::I,
            VariantArg::II => Variant::II,
        }
    }
}

#[derive(Args)]
#[command(group(ArgGroup::new("input").required(true).args(["w", "lambda"])))]
struct PolyArgs {
    /// Family letter: A, B, C, or D
    #[arg(long)]
    family: String,
    /// Rank of the group
    #[arg(long)]
    n: usize,
    /// Element in one line notation, e.g. "-2,1,3", or the keyword "box"
    #[arg(long, allow_hyphen_values = true)]
    w: Option<String>,
    /// Strict partition naming the maximal Grassmannian element, e.g. "3,1"
    #[arg(long)]
    lambda: Option<String>,
    /// Set the second alphabet to zero
    #[arg(long)]
    single: bool,
    /// Evaluate the closed Grassmannian sum instead of the operator definition
    #[arg(long, requires = "lambda")]
    closed: bool,
    /// Which closed form to use in type D
    #[arg(long, value_enum, ignore_case = true, default_value_t = VariantArg::I)]
    variant: VariantArg,
    /// Cross check the closed sum against the operator definition
    #[arg(long, requires = "closed")]
    verify: bool,
    /// Output format
    #[arg(long, value_enum, ignore_case = true, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name
    #[arg(long)]
    suite: String,
    /// Rank cap for the swept suites
    #[arg(long)]
    n: Option<usize>,
    /// Worker threads for the sweep
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct StructureArgs {
    /// Family letter: A, B, C, or D
    #[arg(long)]
    family: String,
    /// Rank of the expansion
    #[arg(long)]
    n: usize,
    /// Left factor in one line notation
    #[arg(long, allow_hyphen_values = true)]
    u: String,
    /// Right factor in one line notation
    #[arg(long, allow_hyphen_values = true)]
    v: String,
}

#[derive(Args)]
struct LocusArgs {
    /// Family letter: B, C, or D
    #[arg(long)]
    family: String,
    /// Rank of the bundles
    #[arg(long)]
    n: usize,
    /// Strict partition of isotropic intersection conditions, e.g. "2,1"
    #[arg(long)]
    lambda: String,
    /// Which closed form to use in type D
    #[arg(long, value_enum, ignore_case = true, default_value_t = VariantArg::I)]
    variant: VariantArg,
    /// Output format
    #[arg(long, value_enum, ignore_case = true, default_value_t = Format::Text)]
    format: Format,
}

/// Usage failures exit 2, verification failures exit 1.
enum Failure {
    Usage(String),
    Check(String),
}

impl From<WeylError> for Failure {
    fn from(e: WeylError) -> Failure {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Poly(a) => cmd_poly(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Structure(a) => cmd_structure(a),
        Command::Locus(a) => cmd_locus(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn family_letter(family: Family) -> &'static str {
    match family {
        Family::A => "A",
        Family::B => "B",
        Family::C => "C",
        Family::D => "D",
    }
}

fn parse_element(text: &str, n: usize) -> Result<SignedPermutation, Failure> {
    if text.trim().eq_ignore_ascii_case("box") {
        return Ok(SignedPermutation::from_generator(Generator::Box, n));
    }
    Ok(SignedPermutation::parse(text)?)
}

/// Terms as JSON records sorted graded lex descending, stable across runs.
fn sorted_terms(poly: &Polynomial) -> Result<Vec<serde_json::Value>, Failure> {
    let value = poly.to_json_terms().map_err(Failure::Usage)?;
    let mut arr = value.as_array().cloned().unwrap_or_default();
    let key = |t: &serde_json::Value| -> (u64, Vec<u64>) {
        let mut exps: Vec<u64> = Vec::new();
        for axis in ["x", "y"] {
            if let Some(a) = t.get(axis).and_then(|v| v.as_array()) {
                exps.extend(a.iter().filter_map(|e| e.as_u64()));
            }
        }
        (exps.iter().sum(), exps)
    };
    arr.sort_by(|a, b| key(b).cmp(&key(a)));
    Ok(arr)
}

fn cmd_poly(a: PolyArgs) -> Result<(), Failure> {
    let family = Family::parse(&a.family)?;
    let lambda = a.lambda.as_deref().map(StrictPartition::parse).transpose()?;
    let element = match (&a.w, &lambda) {
        (Some(text), _) => parse_element(text, a.n)?,
        (None, Some(l)) => {
            let ctx = GroupContext::new(family, a.n)?;
            max_grassmannian(&ctx, l)?
        }
        (None, None) => unreachable!("the input group is required"),
    };
    let poly = if a.closed {
        let l = lambda.as_ref().expect("--closed requires --lambda");
        let closed = grassmannian_closed(family, a.n, l, a.variant.into())?;
        if a.verify {
            let req = SchubertRequest::new(family, a.n, element.clone(), true)?;
            if closed != double_schubert(&req)? {
                return Err(Failure::Check(format!(
                    "closed sum disagrees with the operator definition for lambda = [{}]",
                    join_u32(l.parts())
                )));
            }
        }
        if a.single {
            closed.set_y_zero()
        } else {
            closed
        }
    } else {
        let req = SchubertRequest::new(family, a.n, element.clone(), !a.single)?;
        schubert_polynomial(&req)?
    };
    match a.format {
        Format::Text => println!("{}", poly.render_text()),
        Format::Latex => println!("{}", poly.render_latex()),
        Format::Json => {
            let mut record = serde_json::json!({
                "family": family_letter(family),
                "n": a.n,
                "element": element.entries(),
                "terms": sorted_terms(&poly)?,
            });
            if let Some(l) = &lambda {
                record["lambda"] = serde_json::json!(l.parts());
            }
            println!("{record}");
        }
    }
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> Result<(), Failure> {
    let report = run_suite(&a.suite, a.n, a.jobs)?;
    for line in &report.lines {
        println!("  {}: {}", line.label, if line.passed { "pass" } else { "FAIL" });
    }
    println!("{}", report.summary());
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check(format!("suite {} reported failures", report.suite)))
    }
}

fn join_u32(parts: &[u32]) -> String {
    parts.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn join_i32(entries: &[i32]) -> String {
    entries.iter().map(i32::to_string).collect::<Vec<_>>().join(",")
}

fn cmd_structure(a: StructureArgs) -> Result<(), Failure> {
    let family = Family::parse(&a.family)?;
    let u = SignedPermutation::parse(&a.u)?;
    let v = SignedPermutation::parse(&a.v)?;
    let expansion = structure_constants(family, &u, &v, a.n)?;
    let mut printed = 0usize;
    for (w, c) in &expansion.coefficients {
        if *c == ci(0) {
            continue;
        }
        println!("{c} * [{}]", join_i32(w.entries()));
        printed += 1;
    }
    if printed == 0 {
        println!("0");
    }
    Ok(())
}

fn bundle_text(bundle: &BundleRef, n: usize) -> String {
    match bundle {
        BundleRef::EStar => "E*".to_string(),
        BundleRef::FStar(m) if *m == n => "F*".to_string(),
        BundleRef::FStar(m) => format!("F*{m}"),
        BundleRef::FHatStar => "Fhat*".to_string(),
    }
}

fn bundle_latex(bundle: &BundleRef, n: usize) -> String {
    match bundle {
        BundleRef::EStar => "E^*".to_string(),
        BundleRef::FStar(m) if *m == n => "F^*".to_string(),
        BundleRef::FStar(m) => format!("F^*_{{{m}}}"),
        BundleRef::FHatStar => "\\hat{F}^*".to_string(),
    }
}

fn kernel_text(kernel: AtomKernel) -> &'static str {
    match kernel {
        AtomKernel::Q => "Q",
        AtomKernel::P => "P",
    }
}

fn render_factor(factor: &ChernFactor, n: usize, latex: bool) -> String {
    match factor {
        ChernFactor::Chern { degree, bundle } => {
            if latex {
                format!("c_{{{degree}}}({})", bundle_latex(bundle, n))
            } else {
                format!("c{degree}({})", bundle_text(bundle, n))
            }
        }
        ChernFactor::Segre { degree, bundle } => {
            if latex {
                format!("s_{{{degree}}}({})", bundle_latex(bundle, n))
            } else {
                format!("s{degree}({})", bundle_text(bundle, n))
            }
        }
        ChernFactor::Atom { kernel, parts, bundle } => {
            if latex {
                format!(
                    "\\tilde{{{}}}_{{{}}}({})",
                    kernel_text(*kernel),
                    join_u32(parts.parts()),
                    bundle_latex(bundle, n)
                )
            } else {
                format!(
                    "{}[{}]({})",
                    kernel_text(*kernel),
                    join_u32(parts.parts()),
                    bundle_text(bundle, n)
                )
            }
        }
        ChernFactor::Det { rows } => {
            let entry = |d: i64, m: usize| -> String {
                if d < 0 {
                    "0".to_string()
                } else if latex {
                    format!("c_{{{d}}}(F^*_{{{m}}})")
                } else {
                    format!("c{d}(F*{m})")
                }
            };
            if latex {
                let body = rows
                    .iter()
                    .map(|row| {
                        row.iter().map(|&(d, m)| entry(d, m)).collect::<Vec<_>>().join(" & ")
                    })
                    .collect::<Vec<_>>()
                    .join(" \\\\ ");
                format!("\\det\\begin{{pmatrix}} {body} \\end{{pmatrix}}")
            } else {
                let body = rows
                    .iter()
                    .map(|row| {
                        row.iter().map(|&(d, m)| entry(d, m)).collect::<Vec<_>>().join(", ")
                    })
                    .collect::<Vec<_>>()
                    .join("; ");
                format!("det[{body}]")
            }
        }
    }
}

fn render_presentation(pres: &LocusPresentation, latex: bool) -> String {
    if pres.terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, term) in pres.terms.iter().enumerate() {
        let neg = term.sign < 0;
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if term.factors.is_empty() {
            out.push('1');
        } else {
            let rendered: Vec<String> =
                term.factors.iter().map(|f| render_factor(f, pres.n, latex)).collect();
            out.push_str(&rendered.join(if latex { " " } else { "*" }));
        }
    }
    out
}

fn cmd_locus(a: LocusArgs) -> Result<(), Failure> {
    let family = Family::parse(&a.family)?;
    let lambda = StrictPartition::parse(&a.lambda)?;
    let variant: Variant = a.variant.into();
    let pres = match (family, variant) {
        (Family::C, Variant::I) if lambda.len() == 1 => {
            ssc_presentation(lambda.part(1) as usize, a.n)?
        }
        _ => locus_presentation(family, &lambda, a.n, variant)?,
    };
    let value = pres.evaluate();
    match a.format {
        Format::Text => {
            println!("{}", render_presentation(&pres, false));
            println!("  = {}", value.render_text());
        }
        Format::Latex => {
            println!("{}", render_presentation(&pres, true));
            println!("  = {}", value.render_latex());
        }
        Format::Json => {
            let record = serde_json::json!({
                "family": family_letter(family),
                "n": a.n,
                "lambda": pres.lambda.parts(),
                "notation": render_presentation(&pres, false),
                "terms": sorted_terms(&value)?,
            });
            println!("{record}");
        }
    }
    Ok(())
}
