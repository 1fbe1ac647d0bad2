//! Command line front end.
//!
//! Subcommands: `normalize` (expression to normal form), `hom` (graded Hom
//! bases), `tensor-r` (bimodule tensor products), `act` (the diagram action
//! on complexes of projectives), `k0` (Grothendieck-group classes),
//! `verify` (the full verification suite) and `render` (SVG output).
//!
//! Exit codes: 2 parse error, 3 elaboration error, 4 verification failure,
//! 5 I/O error.

use clap::{ArgAction, Parser, Subcommand};
use gausscat_cli::describe;
use gausscat_cli::elaborate::{elaborate, ElabError};
use gausscat_cli::parser::{parse, ParseError};
use gausscat_cli::render::render_svg;
use gausscat_core::bimodules::{eta_object, tensor_over_r, GradedBimodule, TensorTower};
use gausscat_core::diagrams::{hom_basis, Morphism, NormalForm};
use gausscat_core::json::{
    self, bimodule_from_descriptor, bimodule_to_descriptor, diag_complex_from_descriptor,
    proj_complex_from_descriptor, proj_complex_to_descriptor, ComplexDescriptor, Report,
};
use gausscat_core::modules_r::dim_vector_class;
use gausscat_core::twisted::gauss_class;
use gausscat_core::verify;
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use thiserror::Error;

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    BadInput(String),
    #[error("{0}")]
    Elaborate(#[from] ElabError),
    #[error("{0}")]
    Semantic(String),
    #[error("verification failed: {0} check(s) did not pass")]
    Verification(usize),
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::BadInput(_) => 2,
            CliError::Elaborate(_) | CliError::Semantic(_) => 3,
            CliError::Verification(_) => 4,
            CliError::Io { .. } => 5,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "gausscat",
    about = "A diagrammatic calculus whose Grothendieck group is the Gaussian integers",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normalize a diagram expression to its GF(2) combination of normal forms.
    Normalize {
        /// Expression, e.g. "cup ; cap" or "hf * id1".
        expr: String,
        /// Emit machine-readable JSON.
        #[arg(long)]
        json: bool,
        /// Reject strand mismatches instead of composing to zero.
        #[arg(long, default_value_t = true, action = ArgAction::Set)]
        strict: bool,
    },
    /// Print the graded Hom basis between two strand counts.
    Hom {
        /// Source strand count.
        k: usize,
        /// Target strand count.
        l: usize,
        /// Single degree to print.
        #[arg(long, conflicts_with = "all_degrees", allow_hyphen_values = true)]
        deg: Option<i64>,
        /// Print a table over a degree range instead.
        #[arg(long, requires = "min", requires = "max")]
        all_degrees: bool,
        /// Lowest degree of the table.
        #[arg(long, allow_hyphen_values = true)]
        min: Option<i64>,
        /// Highest degree of the table.
        #[arg(long, allow_hyphen_values = true)]
        max: Option<i64>,
        /// Cap on the alpha exponent (default: GAUSSCAT_MAX_N or 10).
        #[arg(long)]
        max_n: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Tensor two bimodules over the algebra.
    TensorR {
        /// Built-in name (r, m, m2, m3) or a JSON descriptor path.
        left: String,
        /// Built-in name or JSON descriptor path.
        right: String,
        #[arg(long)]
        json: bool,
    },
    /// Act with an elementary diagram object on a complex of projectives.
    Act {
        /// Object such as "q1", "q2" or "q1[1]".
        object: String,
        /// Path to a complex descriptor with base "projectives".
        complex: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Grothendieck-group class of a complex (over either base).
    K0 {
        complex: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run the verification suites; nonzero exit on failure.
    Verify {
        /// all, diagrams, twisted, algebra, bimodules or k0.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        json: bool,
    },
    /// Render the normal form of an expression to SVG.
    Render {
        expr: String,
        /// Output path.
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = true, action = ArgAction::Set)]
        strict: bool,
    },
}

#[derive(Serialize)]
struct TermOut {
    k: usize,
    l: usize,
    n: u32,
    degree: i64,
}

#[derive(Serialize)]
struct MorphismOut {
    source: json::DiagTermDescriptor,
    target: json::DiagTermDescriptor,
    terms: Vec<TermOut>,
    degree: Option<i64>,
}

fn morphism_out(m: &Morphism) -> MorphismOut {
    MorphismOut {
        source: json::DiagTermDescriptor { k: m.source().strands, m: m.source().shift },
        target: json::DiagTermDescriptor { k: m.target().strands, m: m.target().shift },
        terms: m
            .terms()
            .map(|nf| TermOut {
                k: nf.source_strands,
                l: nf.target_strands,
                n: nf.alpha,
                degree: nf.degree() + m.source().shift - m.target().shift,
            })
            .collect(),
        degree: m.degree(),
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable output"));
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn load_complex(path: &Path) -> Result<ComplexDescriptor, CliError> {
    let text = read_file(path)?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::BadInput(format!("{}: {e}", path.display())))
}

fn max_n_default() -> u32 {
    std::env::var("GAUSSCAT_MAX_N")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(10)
}

fn run_normalize(expr: &str, json_out: bool, strict: bool) -> Result<(), CliError> {
    let ast = parse(expr)?;
    let m = elaborate(&ast, strict)?;
    if json_out {
        print_json(&morphism_out(&m));
    } else if m.is_zero() {
        println!("0");
    } else {
        for nf in m.terms() {
            let degree = nf.degree() + m.source().shift - m.target().shift;
            println!(
                "1\u{b7}({},{},{})  deg {}",
                nf.source_strands, nf.target_strands, nf.alpha, degree
            );
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct HomRow {
    degree: i64,
    basis: Vec<TermOut>,
    names: Vec<String>,
}

fn hom_rows(k: usize, l: usize, degrees: impl Iterator<Item = i64>, max_n: u32) -> Vec<HomRow> {
    degrees
        .map(|d| {
            let basis: Vec<NormalForm> =
                hom_basis(k, l, d).into_iter().filter(|nf| nf.alpha <= max_n).collect();
            HomRow {
                degree: d,
                names: basis.iter().map(describe::short_name).collect(),
                basis: basis
                    .into_iter()
                    .map(|nf| TermOut {
                        k: nf.source_strands,
                        l: nf.target_strands,
                        n: nf.alpha,
                        degree: nf.degree(),
                    })
                    .collect(),
            }
        })
        .collect()
}

fn run_hom(
    k: usize,
    l: usize,
    deg: Option<i64>,
    all: bool,
    min: Option<i64>,
    max: Option<i64>,
    max_n: Option<u32>,
    json_out: bool,
) -> Result<(), CliError> {
    let cap = max_n.unwrap_or_else(max_n_default);
    let rows = if all {
        let (lo, hi) = (min.unwrap(), max.unwrap());
        if lo > hi {
            return Err(CliError::BadInput("--min must not exceed --max".into()));
        }
        hom_rows(k, l, lo..=hi, cap)
    } else {
        let d = deg.ok_or_else(|| CliError::BadInput("pass --deg or --all-degrees".into()))?;
        hom_rows(k, l, std::iter::once(d), cap)
    };
    if json_out {
        print_json(&rows);
    } else {
        for row in &rows {
            if row.basis.is_empty() {
                println!("deg {}: (empty)", row.degree);
            } else {
                for (t, name) in row.basis.iter().zip(&row.names) {
                    println!("deg {}: {}  =  1\u{b7}({},{},{})", row.degree, name, t.k, t.l, t.n);
                }
            }
        }
    }
    Ok(())
}

fn resolve_bimodule(spec: &str, tower: &TensorTower) -> Result<GradedBimodule, CliError> {
    match spec {
        "r" | "R" => Ok(tower.power(0).clone()),
        "m" | "M" => Ok(tower.power(1).clone()),
        "m2" | "M2" => Ok(tower.power(2).clone()),
        "m3" | "M3" => Ok(tower.power(3).clone()),
        path => {
            let text = read_file(Path::new(path))?;
            let descriptor: json::BimoduleDescriptor = serde_json::from_str(&text)
                .map_err(|e| CliError::BadInput(format!("{path}: {e}")))?;
            bimodule_from_descriptor(&descriptor).map_err(CliError::Semantic)
        }
    }
}

fn run_tensor_r(left: &str, right: &str, json_out: bool) -> Result<(), CliError> {
    let tower = TensorTower::new(3);
    let a = resolve_bimodule(left, &tower)?;
    let b = resolve_bimodule(right, &tower)?;
    let t = tensor_over_r(&a, &b);
    if json_out {
        print_json(&bimodule_to_descriptor(&t.module));
    } else {
        println!("dimension {}", t.module.dim());
        let dims: Vec<String> = t
            .module
            .graded_dimension()
            .into_iter()
            .map(|(d, c)| format!("{d}: {c}"))
            .collect();
        println!("graded dimension {{{}}}", dims.join(", "));
        for b in t.module.basis() {
            println!("  {}  ({} | {})  deg {}", b.label, b.left, b.right, b.degree);
        }
    }
    Ok(())
}

/// Parses an object spec like `q2` or `q1[-1]`.
fn parse_object(spec: &str) -> Result<(usize, i64), CliError> {
    let bad = || CliError::BadInput(format!("bad object {spec:?}; expected q<k> or q<k>[m]"));
    let rest = spec.strip_prefix('q').ok_or_else(bad)?;
    let (digits, shift) = match rest.find('[') {
        Some(idx) => {
            let tail = &rest[idx..];
            let inner = tail.strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
            (&rest[..idx], inner.parse::<i64>().map_err(|_| bad())?)
        }
        None => (rest, 0),
    };
    let strands: usize = digits.parse().map_err(|_| bad())?;
    Ok((strands, shift))
}

fn run_act(object: &str, complex: &Path, json_out: bool) -> Result<(), CliError> {
    let (strands, shift) = parse_object(object)?;
    let descriptor = load_complex(complex)?;
    let ComplexDescriptor::Projectives { terms, twist } = &descriptor else {
        return Err(CliError::Semantic(
            "the action applies to complexes over base \"projectives\"".into(),
        ));
    };
    let x = proj_complex_from_descriptor(terms, twist)
        .map_err(|e| CliError::Semantic(e.to_string()))?;
    if let Err(v) = x.validate() {
        return Err(CliError::Semantic(format!("input complex invalid: {v}")));
    }
    let tower = TensorTower::new(strands.max(2).min(4));
    let image = eta_object(&tower, strands, shift, &x)
        .map_err(|e| CliError::Semantic(e.to_string()))?;
    let out = proj_complex_to_descriptor(&image);
    if json_out {
        print_json(&out);
    } else {
        let ComplexDescriptor::Projectives { terms, twist } = &out else { unreachable!() };
        for (i, t) in terms.iter().enumerate() {
            println!("term {i}: P({})[{}]", t.vertex, t.m);
        }
        for e in twist {
            println!("twist {} -> {}: {}", e.i, e.j, e.paths.join("+"));
        }
        let class = dim_vector_class(&image);
        println!("class {class}");
    }
    Ok(())
}

#[derive(Serialize)]
#[serde(untagged)]
enum ClassOut {
    Gauss { base: String, re: i64, im: i64 },
    Dim { base: String, x: i64, y: i64 },
}

fn run_k0(complex: &Path, json_out: bool) -> Result<(), CliError> {
    let descriptor = load_complex(complex)?;
    let out = match &descriptor {
        ComplexDescriptor::Diagrams { terms, twist } => {
            let x = diag_complex_from_descriptor(terms, twist)
                .map_err(|e| CliError::Semantic(e.to_string()))?;
            if let Err(v) = x.validate() {
                return Err(CliError::Semantic(format!("input complex invalid: {v}")));
            }
            let c = gauss_class(&x);
            ClassOut::Gauss { base: "diagrams".into(), re: c.re, im: c.im }
        }
        ComplexDescriptor::Projectives { terms, twist } => {
            let x = proj_complex_from_descriptor(terms, twist)
                .map_err(|e| CliError::Semantic(e.to_string()))?;
            if let Err(v) = x.validate() {
                return Err(CliError::Semantic(format!("input complex invalid: {v}")));
            }
            let c = dim_vector_class(&x);
            ClassOut::Dim { base: "projectives".into(), x: c.x, y: c.y }
        }
    };
    if json_out {
        print_json(&out);
    } else {
        match out {
            ClassOut::Gauss { re, im, .. } => println!("{}{:+}i", re, im),
            ClassOut::Dim { x, y, .. } => println!("({x}, {y})"),
        }
    }
    Ok(())
}

fn run_verify(suite: &str, json_out: bool) -> Result<(), CliError> {
    let tower = TensorTower::new(4);
    let reports: Vec<Report> = if suite == "all" {
        verify::run_all(&tower)
    } else {
        vec![verify::run_suite(suite, &tower).ok_or_else(|| {
            CliError::BadInput(format!(
                "unknown suite {suite:?}; expected all, {}",
                verify::SUITES.join(", ")
            ))
        })?]
    };
    let failures: usize = reports
        .iter()
        .flat_map(|r| &r.checks)
        .filter(|c| c.status != "ok")
        .count();
    if json_out {
        print_json(&reports);
    } else {
        for report in &reports {
            println!("== suite {}", report.suite);
            for check in &report.checks {
                match &check.witness {
                    Some(w) if check.status != "ok" => {
                        println!("  FAIL {} ({w})", check.check)
                    }
                    _ => println!("  {} {}", check.status, check.check),
                }
            }
        }
    }
    if failures > 0 {
        return Err(CliError::Verification(failures));
    }
    Ok(())
}

fn run_render(expr: &str, output: &Path, strict: bool) -> Result<(), CliError> {
    let ast = parse(expr)?;
    let m = elaborate(&ast, strict)?;
    let svg = render_svg(&m);
    std::fs::write(output, svg).map_err(|e| CliError::Io {
        path: output.display().to_string(),
        message: e.to_string(),
    })?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Normalize { expr, json, strict } => run_normalize(&expr, json, strict),
        Command::Hom { k, l, deg, all_degrees, min, max, max_n, json } => {
            run_hom(k, l, deg, all_degrees, min, max, max_n, json)
        }
        Command::TensorR { left, right, json } => run_tensor_r(&left, &right, json),
        Command::Act { object, complex, json } => run_act(&object, &complex, json),
        Command::K0 { complex, json } => run_k0(&complex, json),
        Command::Verify { suite, json } => run_verify(&suite, json),
        Command::Render { expr, output, strict } => run_render(&expr, &output, strict),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
