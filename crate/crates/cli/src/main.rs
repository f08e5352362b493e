use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mixed_turan::constructions::{
    bk_matrix, bk_matrix_odd, brute_force_max, family_for_matrix, maximal_matrix_graph, weighted_degree_spread,
};
use mixed_turan::format::{emit_family, emit_graph};
use mixed_turan::numeric::{binomial2, fmt_rat, parse_rat, to_f64};
use mixed_turan::selftest::{criteria, DEFAULT_SEED};
use mixed_turan::simplex::{condense_indices, RatioSolution};
use mixed_turan::{classify, enumerate_candidates, ess_bounds, ratio_min, theta, verify, Error, MixedAdjacencyMatrix};
use num_rational::BigRational;
use serde_json::{json, Value};

mod input;
mod render;

use input::{load_family, load_matrix, InputError, InputErrorKind};

const EXIT_FAILURE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(name = "mixturan", version, about = "Exact Turán density coefficients of mixed graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for candidate search (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Include wall-clock timings; output is otherwise deterministic.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct FamilyArgs {
    /// Graph files (or directories of them); `-` reads standard input.
    inputs: Vec<PathBuf>,

    /// Further family files or directories.
    #[arg(long)]
    family: Vec<PathBuf>,
}

impl FamilyArgs {
    fn paths(&self) -> Vec<PathBuf> {
        self.inputs.iter().chain(&self.family).cloned().collect()
    }
}

#[derive(Subcommand)]
enum Command {
    /// θ of a graph or family, with certificate and witness.
    Theta {
        #[command(flatten)]
        family: FamilyArgs,
        /// Re-check the result independently; exit 4 on failure.
        #[arg(long)]
        verify: bool,
    },
    /// Which route the engine takes.
    Classify(FamilyArgs),
    /// Rational lower and upper bounds.
    Bounds(FamilyArgs),
    /// Candidate templates with their ratio minima.
    Candidates(FamilyArgs),
    /// Exhaustive maximum of α + ρβ over free graphs on n vertices.
    Oracle {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_parser = parse_rho)]
        rho: BigRational,
        #[arg(long)]
        n: usize,
    },
    /// Forbidden family whose θ equals the ratio minimum of a template.
    Family {
        matrix: PathBuf,
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        minimal_family: bool,
    },
    /// The template B_k, with its ratio minimum as comments.
    Bk {
        k: usize,
        /// Drop the first row and column.
        #[arg(long)]
        odd: bool,
    },
    /// A heaviest blowup of a template on n vertices.
    Construct {
        matrix: PathBuf,
        #[arg(long, value_parser = parse_rho)]
        rho: BigRational,
        #[arg(long)]
        n: usize,
    },
    /// Run the reproduction suite.
    Selftest {
        /// Treat optional criteria as required.
        #[arg(long)]
        strict: bool,
    },
}

fn parse_rho(s: &str) -> Result<BigRational, String> {
    parse_rat(s).ok_or_else(|| format!("`{s}` is not an exact rational such as 3/2"))
}

enum Failure {
    Input(InputError),
    Engine(Error),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

fn engine_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => EXIT_PARSE,
        Error::CapExceeded { .. } => EXIT_CAP,
        _ => EXIT_FAILURE,
    }
}

struct Out {
    format: Format,
    timings: bool,
    start: Instant,
}

impl Out {
    fn timing_json(&self) -> Value {
        if self.timings {
            json!({ "total_ms": self.start.elapsed().as_secs_f64() * 1e3 })
        } else {
            json!({})
        }
    }

    fn emit(&self, text: String, mut value: Value) {
        match self.format {
            Format::Text => {
                print!("{text}");
                if self.timings {
                    println!("time: {:.3} ms", self.start.elapsed().as_secs_f64() * 1e3);
                }
            }
            Format::Json => {
                if let Value::Object(map) = &mut value {
                    map.entry("timings").or_insert_with(|| self.timing_json());
                }
                println!("{}", serde_json::to_string_pretty(&value).expect("json"));
            }
        }
    }
}

fn ratio_summary(s: &RatioSolution) -> (String, Value) {
    match s.finite_value() {
        None => ("infinity".into(), json!({ "value": null, "value_float": null, "certificate": null })),
        Some(v) => (
            v.to_string(),
            json!({
                "value": v.to_string(),
                "value_float": render::value_float(v),
                "certificate": s.certificate.as_ref().map(|c| c.to_string()),
                "argmin": s.argmin.as_ref().map(render::point),
            }),
        ),
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let out = Out {
        format: cli.format,
        timings: cli.timings,
        start: Instant::now(),
    };
    match &cli.command {
        Command::Theta { family, verify: check } => {
            let fam = load_family(&family.paths())?;
            let res = theta(&fam)?;
            let report = if *check && res.kind == mixed_turan::ThetaKind::Finite {
                Some(verify(&fam, &res)?)
            } else {
                None
            };
            let mut text = render::theta_text(&res);
            let mut value = render::theta_json(&res, out.timing_json());
            if let Some(r) = &report {
                text.push_str(&format!("verification:\n{r}"));
                if let Value::Object(map) = &mut value {
                    map.insert(
                        "verification".into(),
                        json!(r
                            .checks
                            .iter()
                            .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
                            .collect::<Vec<_>>()),
                    );
                }
            }
            out.emit(text, value);
            if let Some(r) = report {
                if !r.passed() {
                    return Err(Failure::Verify(format!("failed checks: {}", r.failed().join(", "))));
                }
            }
        }
        Command::Classify(family) => {
            let fam = load_family(&family.paths())?;
            let c = classify(&fam)?;
            let kind = match c.tag {
                mixed_turan::Tag::Infinite => "infinite",
                mixed_turan::Tag::One => "one",
                _ => "finite",
            };
            let text = format!(
                "{kind}\nroute: {}\nchromatic number: {}\ncollapsed chromatic number: {}\n",
                c.tag,
                c.chi,
                c.chi_collapse.map_or("none".to_string(), |x| x.to_string())
            );
            out.emit(
                text,
                json!({ "kind": kind, "route": c.tag.to_string(), "chi": c.chi, "chi_collapse": c.chi_collapse }),
            );
        }
        Command::Bounds(family) => {
            let fam = load_family(&family.paths())?;
            let (lo, hi) = ess_bounds(&fam)?;
            out.emit(
                format!("[{}, {}]\n", fmt_rat(&lo), fmt_rat(&hi)),
                json!({ "lower": render::rational(&lo), "upper": render::rational(&hi) }),
            );
        }
        Command::Candidates(family) => {
            let fam = load_family(&family.paths())?;
            let cands = enumerate_candidates(&fam)?;
            let mut text = format!("{} candidates\n", cands.len());
            let mut list = vec![];
            for m in &cands {
                let s = ratio_min(m)?;
                let (shown, mut v) = ratio_summary(&s);
                let code = m.canonical_code()?;
                text.push_str(&format!("\n# {code}: {shown}\n{m}"));
                if let Value::Object(map) = &mut v {
                    map.insert("code".into(), json!(code));
                    map.insert("matrix".into(), render::matrix(m));
                }
                list.push(v);
            }
            out.emit(text, json!({ "count": cands.len(), "candidates": list }));
        }
        Command::Oracle { family, rho, n } => {
            let fam = load_family(&family.paths())?;
            let rep = brute_force_max(&fam, rho, *n)?;
            let text = format!(
                "best: {}\nscanned: {}\n# witness\n{}",
                fmt_rat(&rep.best_value),
                rep.graphs_scanned,
                emit_graph(&rep.witness)
            );
            out.emit(
                text,
                json!({
                    "n": rep.n,
                    "rho": render::rational(&rep.rho),
                    "best": render::rational(&rep.best_value),
                    "best_float": to_f64(&rep.best_value),
                    "scanned": rep.graphs_scanned,
                    "witness": emit_graph(&rep.witness),
                }),
            );
        }
        Command::Family { matrix, minimal_family } => {
            let m = load_matrix(matrix)?;
            let fam = family_for_matrix(&m, *minimal_family)?;
            let text = emit_family(&fam);
            out.emit(
                text.clone(),
                json!({ "count": fam.len(), "members": fam.iter().map(emit_graph).collect::<Vec<_>>() }),
            );
        }
        Command::Bk { k, odd } => {
            let m: MixedAdjacencyMatrix = if *odd { bk_matrix_odd(*k)? } else { bk_matrix(*k) };
            let s = ratio_min(&m)?;
            let (shown, mut v) = ratio_summary(&s);
            let mut text = format!("# ratio minimum: {shown}\n");
            if let Some(c) = &s.certificate {
                text.push_str(&format!("# certificate: {c}\n"));
            }
            text.push_str(&m.to_string());
            if let Value::Object(map) = &mut v {
                map.insert("matrix".into(), render::matrix(&m));
            }
            out.emit(text, v);
        }
        Command::Construct { matrix, rho, n } => {
            let m = load_matrix(matrix)?;
            let keep = condense_indices(&m, rho);
            let c = m.principal_submatrix(&keep)?;
            let (g, x) = maximal_matrix_graph(&c, rho, *n)?;
            let density = g.weighted_count(rho) / BigRational::from_integer(binomial2(*n).into());
            let spread = weighted_degree_spread(&g, rho);
            let text = format!(
                "# parts {:?} on template rows {:?}\n# weighted density {} ≈ {:.6}\n# weighted degree spread {}\n{}",
                x.parts,
                keep,
                fmt_rat(&density),
                to_f64(&density),
                fmt_rat(&spread),
                emit_graph(&g)
            );
            out.emit(
                text,
                json!({
                    "rows": keep,
                    "parts": x.parts,
                    "weighted_density": render::rational(&density),
                    "weighted_density_float": to_f64(&density),
                    "spread": render::rational(&spread),
                    "graph": emit_graph(&g),
                }),
            );
        }
        Command::Selftest { strict } => {
            let mut text = String::new();
            let mut items = vec![];
            let mut failed = vec![];
            for c in criteria() {
                let r = c.run(cli.seed);
                let optional = if r.required { "" } else { " (optional)" };
                text.push_str(&format!("{:<3} {} {}{}: {}", r.id, r.status(), r.title, optional, r.detail));
                if cli.timings {
                    text.push_str(&format!(" [{:.3}s]", r.elapsed.as_secs_f64()));
                }
                text.push('\n');
                let mut item = json!({
                    "id": r.id,
                    "title": r.title,
                    "status": r.status(),
                    "required": r.required,
                    "detail": r.detail,
                });
                if cli.timings {
                    item["elapsed_ms"] = json!(r.elapsed.as_secs_f64() * 1e3);
                }
                items.push(item);
                if !r.passed && (r.required || *strict) {
                    failed.push(r.id);
                }
            }
            out.emit(text, json!({ "criteria": items }));
            if !failed.is_empty() {
                return Err(Failure::Verify(format!("failed criteria: {}", failed.join(", "))));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        // Only fails if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Input(e) => {
                    let code = match &e.error {
                        InputErrorKind::Io(_) => EXIT_FAILURE,
                        InputErrorKind::Engine(inner) => engine_code(inner),
                    };
                    (code, e.to_string())
                }
                Failure::Engine(e) => (engine_code(&e), e.to_string()),
                Failure::Verify(m) => (EXIT_VERIFY, m),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
