//! Command-line front end: quantum traces, Chebyshev threading, identity
//! verification and the Jones-Wenzl calculator over the fixture surfaces
//! or user-supplied surface/curve JSON.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage or
//! input errors.

use clap::{Args, Parser, Subcommand};
use qtrace_core::cheb::SignState;
use qtrace_core::scalar::{choose_modulus, ScalarContext};
use qtrace_core::statesum::{trace_embedded, trace_simple};
use qtrace_core::surface::{fixture, fixture_json, SurfaceData, Triangulation, FIXTURE_NAMES};
use qtrace_core::thread::{
    thread_s, thread_t, thread_t_root, verify_centrality, verify_frobenius, verify_identities,
    verify_skein_generic, FrobeniusReport, IdentityReport, SequenceTrace,
};
use qtrace_core::{jw, suite};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qtrace",
    version,
    about = "Exact quantum traces of curves on triangulated punctured surfaces"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct SurfaceArgs {
    /// built-in fixture surface (punctured_torus, twice_punctured_plane)
    #[arg(long, conflicts_with = "input")]
    fixture: Option<String>,
    /// surface/curve JSON file in the fixture schema
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Quantum trace of a curve as a canonical noncommutative Laurent sum
    Trace {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// curve name within the surface data
        #[arg(long)]
        curve: String,
        /// coefficient field: `generic` or `root:M`
        #[arg(long, default_value = "generic")]
        mode: String,
        /// algebra parameter: `omega` or `iota` (iota = w^(N^2))
        #[arg(long, default_value = "omega")]
        param: String,
        /// the level N entering iota = w^(N^2)
        #[arg(long, default_value_t = 1)]
        n: i64,
        /// evaluation route: `auto`, `simple` or `embedded`
        #[arg(long, default_value = "auto")]
        method: String,
    },
    /// Chebyshev threading along a curve
    Thread {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        curve: String,
        /// polynomial family: `S` (second kind, generic) or `T` (first
        /// kind, collapsed at a root of unity)
        #[arg(long)]
        poly: String,
        #[arg(long)]
        n: i64,
        /// coefficient field: `generic` or `root:M`; T requires a root
        /// where A^4 is a primitive N-th root of unity
        #[arg(long)]
        mode: Option<String>,
        /// emit a JSON report with sequence counts and factor traces
        #[arg(long)]
        report: Option<String>,
    },
    /// Verify the identities the engine is built around
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// Jones-Wenzl idempotents
    Jw {
        #[command(subcommand)]
        what: JwCmd,
    },
    /// Commutation matrix of a triangulation
    Sigma {
        #[command(flatten)]
        surface: SurfaceArgs,
    },
    /// Built-in fixtures
    Fixtures {
        #[command(subcommand)]
        what: FixturesCmd,
    },
    /// Run the full acceptance suite
    Suite {
        /// emit a JSON report
        #[arg(long)]
        report: Option<String>,
    },
}

#[derive(Args, Clone)]
struct RootModeArgs {
    #[arg(long)]
    n: i64,
    /// root mode `root:M`; defaults to the modulus chosen for N and epsilon
    #[arg(long)]
    mode: Option<String>,
    /// sign selecting the modulus: -1 for M = 4N, +1 for M = 2N
    #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
    epsilon: i64,
    /// emit a JSON report
    #[arg(long)]
    report: Option<String>,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// T_N(trace), Frobenius of the iota-trace, and the collapsed thread
    Frobenius {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        curve: String,
        #[command(flatten)]
        root: RootModeArgs,
    },
    /// Product-to-sum identities between collapsed threads
    Identities {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[command(flatten)]
        root: RootModeArgs,
    },
    /// Centrality of T_N(Tr(L0)) and the puncture loop in the image
    Centrality {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[command(flatten)]
        root: RootModeArgs,
    },
}

#[derive(Subcommand)]
enum JwCmd {
    /// Expand JW_n as a linear combination of planar diagrams
    Expand {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value = "generic")]
        mode: String,
    },
    /// Closed-form biangle trace of a stated Jones-Wenzl box
    TraceBiangle {
        #[arg(long)]
        n: u64,
        /// left-side state, bottom to top, e.g. +-
        #[arg(long, allow_hyphen_values = true)]
        s1: String,
        /// right-side state, bottom to top
        #[arg(long, allow_hyphen_values = true)]
        s2: String,
        #[arg(long, default_value = "generic")]
        mode: String,
    },
    /// Closed-form triangle trace of a stated Jones-Wenzl box
    TraceTriangle {
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        s1: String,
        #[arg(long, allow_hyphen_values = true)]
        s2: String,
        #[arg(long, default_value = "generic")]
        mode: String,
    },
}

#[derive(Subcommand)]
enum FixturesCmd {
    /// List fixture names
    List,
    /// Print a fixture's JSON
    Show { name: String },
}

enum CliError {
    Usage(String),
    Failed,
}

impl From<String> for CliError {
    fn from(s: String) -> Self {
        CliError::Usage(s)
    }
}

type CliResult = Result<(), CliError>;

fn parse_mode(mode: &str) -> Result<ScalarContext, String> {
    if mode == "generic" {
        return Ok(ScalarContext::generic());
    }
    if let Some(m) = mode.strip_prefix("root:") {
        let m: u64 = m
            .parse()
            .map_err(|_| format!("bad modulus in mode {mode:?}"))?;
        if m == 0 {
            return Err("modulus must be positive".into());
        }
        return Ok(ScalarContext::root_of_unity(m));
    }
    Err(format!(
        "unknown mode {mode:?} (expected `generic` or `root:M`)"
    ))
}

fn root_context(root: &RootModeArgs) -> Result<ScalarContext, String> {
    match &root.mode {
        Some(m) => parse_mode(m),
        None => choose_modulus(root.n, root.epsilon).map_err(|e| e.to_string()),
    }
}

struct Loaded {
    data: SurfaceData,
    triangulation: Triangulation,
}

fn load_surface(args: &SurfaceArgs) -> Result<Loaded, String> {
    let json = match (&args.fixture, &args.input) {
        (Some(name), None) => fixture_json(name).map_err(|e| e.to_string())?.to_string(),
        (None, Some(path)) => {
            std::fs::read_to_string(path).map_err(|e| format!("cannot read {path:?}: {e}"))?
        }
        _ => return Err("exactly one of --fixture or --input is required".into()),
    };
    let data = SurfaceData::parse(&json).map_err(|e| e.to_string())?;
    let triangulation = data.triangulation().map_err(|e| e.to_string())?;
    Ok(Loaded {
        data,
        triangulation,
    })
}

fn sequences_json(sequences: &[SequenceTrace]) -> serde_json::Value {
    serde_json::Value::Array(
        sequences
            .iter()
            .map(|s| {
                serde_json::json!({
                    "exponents": s.exponents,
                    "a0": s.a0.describe(),
                    "b": s.b.iter().map(|b| b.describe()).collect::<Vec<_>>(),
                    "coefficient": s.coefficient.to_string(),
                })
            })
            .collect(),
    )
}

fn frobenius_json(rep: &FrobeniusReport) -> serde_json::Value {
    serde_json::json!({
        "ok": rep.ok,
        "t_n_of_trace": rep.t_n_of_trace.to_string(),
        "via_frobenius": rep.via_frobenius.to_string(),
        "via_thread": rep.via_thread.as_ref().map(|t| t.to_string()),
        "diffs": rep.diffs,
    })
}

fn identity_json(rep: &IdentityReport) -> serde_json::Value {
    serde_json::json!({
        "ok": rep.all_ok(),
        "checks": rep.checks.iter().map(|c| serde_json::json!({
            "name": c.name,
            "ok": c.ok,
            "diff": c.diff,
        })).collect::<Vec<_>>(),
    })
}

fn run(cli: Cli) -> CliResult {
    match cli.cmd {
        Cmd::Trace {
            surface,
            curve,
            mode,
            param,
            n,
            method,
        } => {
            let loaded = load_surface(&surface)?;
            let c = loaded
                .data
                .curve(&loaded.triangulation, &curve)
                .map_err(|e| e.to_string())?;
            let scalars = parse_mode(&mode)?;
            let param_exp = match param.as_str() {
                "omega" => 1,
                "iota" => n * n,
                other => return Err(format!("unknown param {other:?}").into()),
            };
            let result = match method.as_str() {
                "simple" => trace_simple(&loaded.triangulation, &c, &scalars, param_exp)
                    .map_err(|e| e.to_string())?,
                "embedded" => trace_embedded(&loaded.triangulation, &c, &scalars, param_exp)
                    .map_err(|e| e.to_string())?,
                "auto" => {
                    if c.is_lambda_simple() {
                        trace_simple(&loaded.triangulation, &c, &scalars, param_exp)
                            .map_err(|e| e.to_string())?
                    } else {
                        trace_embedded(&loaded.triangulation, &c, &scalars, param_exp)
                            .map_err(|e| e.to_string())?
                    }
                }
                other => return Err(format!("unknown method {other:?}").into()),
            };
            println!("{result}");
            Ok(())
        }
        Cmd::Thread {
            surface,
            curve,
            poly,
            n,
            mode,
            report,
        } => {
            let loaded = load_surface(&surface)?;
            let c = loaded
                .data
                .curve(&loaded.triangulation, &curve)
                .map_err(|e| e.to_string())?;
            match poly.as_str() {
                "S" => {
                    let scalars = parse_mode(mode.as_deref().unwrap_or("generic"))?;
                    let rep = thread_s(&loaded.triangulation, &c, n, &scalars)
                        .map_err(|e| e.to_string())?;
                    if report.as_deref() == Some("json") {
                        let j = serde_json::json!({
                            "result": rep.result.to_string(),
                            "admissible_count": rep.admissible_count,
                            "surviving_monomials": rep.surviving_monomials,
                            "sequences": sequences_json(&rep.sequences),
                        });
                        println!("{}", serde_json::to_string_pretty(&j).unwrap());
                    } else {
                        println!("{}", rep.result);
                    }
                    Ok(())
                }
                "T" => {
                    let scalars = match &mode {
                        Some(m) => parse_mode(m)?,
                        None => choose_modulus(n, -1).map_err(|e| e.to_string())?,
                    };
                    if c.is_lambda_simple() {
                        let rep = thread_t_root(&loaded.triangulation, &c, n, &scalars)
                            .map_err(|e| e.to_string())?;
                        if report.as_deref() == Some("json") {
                            let j = serde_json::json!({
                                "result": rep.result.to_string(),
                                "admissible_count": rep.admissible_count,
                                "surviving_monomials": rep.surviving_monomials,
                                "sequences": sequences_json(&rep.sequences),
                            });
                            println!("{}", serde_json::to_string_pretty(&j).unwrap());
                        } else {
                            println!("{}", rep.result);
                        }
                    } else {
                        let result = thread_t(&loaded.triangulation, &c, n, &scalars)
                            .map_err(|e| e.to_string())?;
                        if report.as_deref() == Some("json") {
                            let j = serde_json::json!({ "result": result.to_string() });
                            println!("{}", serde_json::to_string_pretty(&j).unwrap());
                        } else {
                            println!("{result}");
                        }
                    }
                    Ok(())
                }
                other => {
                    Err(format!("unknown polynomial family {other:?} (expected S or T)").into())
                }
            }
        }
        Cmd::Verify { what } => match what {
            VerifyCmd::Frobenius {
                surface,
                curve,
                root,
            } => {
                let loaded = load_surface(&surface)?;
                let c = loaded
                    .data
                    .curve(&loaded.triangulation, &curve)
                    .map_err(|e| e.to_string())?;
                let scalars = root_context(&root)?;
                let rep = verify_frobenius(&loaded.triangulation, &c, root.n, &scalars)
                    .map_err(|e| e.to_string())?;
                if root.report.as_deref() == Some("json") {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&frobenius_json(&rep)).unwrap()
                    );
                } else if rep.ok {
                    println!("OK");
                } else {
                    for d in &rep.diffs {
                        println!("MISMATCH {d}");
                    }
                }
                if rep.ok {
                    Ok(())
                } else {
                    Err(CliError::Failed)
                }
            }
            VerifyCmd::Identities { surface, root } => {
                let name = surface
                    .fixture
                    .clone()
                    .ok_or_else(|| "verify identities requires --fixture".to_string())?;
                let f = fixture(&name).map_err(|e| e.to_string())?;
                let scalars = root_context(&root)?;
                let rep = verify_identities(&f, root.n, &scalars).map_err(|e| e.to_string())?;
                let generic = verify_skein_generic(&f, &ScalarContext::generic())
                    .map_err(|e| e.to_string())?;
                let mut all = rep.clone();
                all.checks.extend(generic.checks);
                if root.report.as_deref() == Some("json") {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&identity_json(&all)).unwrap()
                    );
                } else {
                    for c in &all.checks {
                        println!("{} {}", if c.ok { "OK  " } else { "FAIL" }, c.name);
                    }
                }
                if all.all_ok() {
                    Ok(())
                } else {
                    Err(CliError::Failed)
                }
            }
            VerifyCmd::Centrality { surface, root } => {
                let name = surface
                    .fixture
                    .clone()
                    .ok_or_else(|| "verify centrality requires --fixture".to_string())?;
                let f = fixture(&name).map_err(|e| e.to_string())?;
                let scalars = root_context(&root)?;
                let rep = verify_centrality(&f, root.n, &scalars).map_err(|e| e.to_string())?;
                if root.report.as_deref() == Some("json") {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&identity_json(&rep)).unwrap()
                    );
                } else {
                    for c in &rep.checks {
                        println!("{} {}", if c.ok { "OK  " } else { "FAIL" }, c.name);
                    }
                }
                if rep.all_ok() {
                    Ok(())
                } else {
                    Err(CliError::Failed)
                }
            }
        },
        Cmd::Jw { what } => match what {
            JwCmd::Expand { n, mode } => {
                let scalars = parse_mode(&mode)?;
                let el = jw::jw_expand(n, &scalars).map_err(|e| e.to_string())?;
                for (d, c) in el.terms() {
                    let pairs: Vec<String> = d
                        .pairs()
                        .iter()
                        .map(|&(a, b)| {
                            let name = |p: usize| {
                                if p < d.left_points() {
                                    format!("L{p}")
                                } else {
                                    format!("R{}", p - d.left_points())
                                }
                            };
                            format!("{}-{}", name(a), name(b))
                        })
                        .collect();
                    println!("({c}) * {{{}}}", pairs.join(", "));
                }
                Ok(())
            }
            JwCmd::TraceBiangle { n, s1, s2, mode } => {
                let scalars = parse_mode(&mode)?;
                let s1 = SignState::from_str_signs(&s1)
                    .ok_or_else(|| "states must be strings over +-".to_string())?;
                let s2 = SignState::from_str_signs(&s2)
                    .ok_or_else(|| "states must be strings over +-".to_string())?;
                if s1.len() != n as usize || s2.len() != n as usize {
                    return Err("state length must equal n".to_string().into());
                }
                let v = jw::jw_biangle_trace(n, &s1, &s2, &scalars).map_err(|e| e.to_string())?;
                println!("{v}");
                Ok(())
            }
            JwCmd::TraceTriangle { n, s1, s2, mode } => {
                let scalars = parse_mode(&mode)?;
                let s1 = SignState::from_str_signs(&s1)
                    .ok_or_else(|| "states must be strings over +-".to_string())?;
                let s2 = SignState::from_str_signs(&s2)
                    .ok_or_else(|| "states must be strings over +-".to_string())?;
                if s1.len() != n as usize || s2.len() != n as usize {
                    return Err("state length must equal n".to_string().into());
                }
                let v = jw::jw_triangle_trace(n, &s1, &s2, &scalars).map_err(|e| e.to_string())?;
                println!("{v}");
                Ok(())
            }
        },
        Cmd::Sigma { surface } => {
            let loaded = load_surface(&surface)?;
            let sigma = loaded.triangulation.sigma_matrix();
            let names = loaded.triangulation.edge_names();
            for i in 0..sigma.size() {
                let row: Vec<String> = (0..sigma.size())
                    .map(|j| format!("{:>3}", sigma.get(i, j)))
                    .collect();
                println!("{:>6}: {}", names[i], row.join(" "));
            }
            Ok(())
        }
        Cmd::Fixtures { what } => match what {
            FixturesCmd::List => {
                for name in FIXTURE_NAMES {
                    println!("{name}");
                }
                Ok(())
            }
            FixturesCmd::Show { name } => {
                let json = fixture_json(&name).map_err(|e| e.to_string())?;
                print!("{json}");
                Ok(())
            }
        },
        Cmd::Suite { report } => {
            let mut results = Vec::new();
            let ok = suite::run_all(|name, passed, detail| {
                if report.is_none() {
                    if passed {
                        println!("PASS  {name}");
                    } else {
                        println!("FAIL  {name}: {}", detail.unwrap_or(""));
                    }
                }
                results.push(serde_json::json!({
                    "name": name,
                    "ok": passed,
                    "detail": detail,
                }));
            });
            if report.as_deref() == Some("json") {
                let j = serde_json::json!({ "ok": ok, "criteria": results });
                println!("{}", serde_json::to_string_pretty(&j).unwrap());
            }
            if ok {
                Ok(())
            } else {
                Err(CliError::Failed)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failed) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
