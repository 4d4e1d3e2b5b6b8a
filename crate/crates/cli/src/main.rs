use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gds_core::catalog::{parse_manifold, shipped_names};
use gds_core::lattice::{
    flat_oracle_ground_dim, full_oracle_ground_dim, ground_dim, Model, DEFAULT_MAX_EDGES, DEFAULT_MAX_FLAT_BITS,
};
use gds_core::reports::{CharClassReport, ManifoldSummary};
use gds_core::tqft::{compare_theories, quantum_partition, state_dim, PreparedManifold, TheoryHandle};
use gds_core::validation::{criterion_ids, run_criterion, ValidationOptions, ValidationReport};
use gds_core::Error;
use serde::Serialize;

const MANIFOLD_GRAMMAR: &str = "\
manifold expressions:
  <builtin>                  rp2_6, torus_7, klein_8, rp3_11, cp2_9
  circle(k)                  boundary of a k-gon, k >= 3
  sphere(d)                  boundary of the (d+1)-simplex, d >= 1
  product(expr,expr)         ordered simplicial product
  union(expr,expr)           disjoint union
  file:<path>                JSON {\"name\": ..., \"facets\": [[...], ...]}
theories:
  tc | dw0 | gds | beta2 | dw^n | explicit Lagrangian such as \"a^3 + w1*a^2 + w2*a\"
  symbols w1..w9 and a, with '*', '^' and '+'";

#[derive(Parser)]
#[command(name = "gds", version, about = "Toric code, generalized double semion and gauge-gravity TQFT computations")]
#[command(after_help = MANIFOLD_GRAMMAR)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Cap on worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Edge budget of the full-Hilbert-space oracle.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_EDGES)]
    max_edges: usize,
    /// Cocycle-bit budget of the flat-space oracle.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_FLAT_BITS)]
    max_flat_bits: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in triangulations with f-vectors and Betti numbers.
    Manifolds,
    /// Z/2 Betti numbers, Euler characteristic and components.
    Homology {
        #[arg(long)]
        manifold: String,
    },
    /// Wu and Stiefel-Whitney classes in the cohomology basis.
    Sw {
        #[arg(long)]
        manifold: String,
    },
    /// Ground-state dimension of a lattice model.
    Ground {
        #[arg(long)]
        manifold: String,
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long, value_enum, default_value_t = MethodArg::Fast)]
        method: MethodArg,
    },
    /// State-space dimension of a theory on a closed (n-1)-manifold; n is dim + 1.
    Statedim {
        #[arg(long)]
        manifold: String,
        #[arg(long)]
        theory: String,
    },
    /// Partition function of a theory on a closed n-manifold; n is the manifold dimension.
    Partition {
        #[arg(long)]
        manifold: String,
        #[arg(long)]
        theory: String,
    },
    /// State spaces of several theories on several manifolds of one dimension.
    Compare {
        #[arg(long = "theory", required = true)]
        theories: Vec<String>,
        #[arg(long = "manifold", required = true)]
        manifolds: Vec<String>,
    },
    /// Run the acceptance suite.
    Validate {
        #[arg(long, default_value_t = ValidationOptions::default().seed)]
        seed: u64,
        /// Run only these criteria (1-12).
        #[arg(long = "only")]
        only: Vec<u32>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Tc,
    Gds,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Fast,
    Flat,
    Full,
}

enum Failure {
    /// Bad manifold or theory text: exit 2 with the grammar.
    Usage(Error),
    /// Engine error or failed validation: exit 1.
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

fn usage(e: Error) -> Failure {
    match e {
        Error::UnknownManifold(_)
        | Error::LagrangianSyntax(_)
        | Error::NotHomogeneous
        | Error::DegreeMismatch { .. }
        | Error::EmptyInput => Failure::Usage(e),
        other => Failure::Compute(other.to_string()),
    }
}

fn prepare(expr: &str) -> Result<PreparedManifold, Failure> {
    let record = parse_manifold(expr).map_err(usage)?;
    Ok(PreparedManifold::from_record(&record)?)
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
    } else {
        println!("{}", text());
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn bits(xs: &[u8]) -> String {
    xs.iter().map(u8::to_string).collect()
}

fn run(cli: Cli) -> Result<(), Failure> {
    let json = cli.json;
    match cli.command {
        Command::Manifolds => {
            let rows: Vec<ManifoldSummary> = shipped_names()
                .into_iter()
                .map(|n| parse_manifold(n).map(|r| ManifoldSummary::new(&r)))
                .collect::<Result<_, _>>()?;
            emit(json, &rows, || {
                rows.iter()
                    .map(|r| format!("{:<10} dim {}  f = ({})  b = ({})", r.name, r.dim, join(&r.f_vector), join(&r.betti)))
                    .chain(["parametric: circle(k), sphere(d), product(a,b), union(a,b)".to_string()])
                    .collect::<Vec<_>>()
                    .join("\n")
            });
        }
        Command::Homology { manifold } => {
            let record = parse_manifold(&manifold).map_err(usage)?;
            let s = ManifoldSummary::new(&record);
            emit(json, &s, || {
                format!(
                    "{}\ndim {}\nf-vector {}\nbetti {}\neuler characteristic {}\ncomponents {}",
                    s.name,
                    s.dim,
                    join(&s.f_vector),
                    join(&s.betti),
                    s.euler_characteristic,
                    s.components
                )
            });
        }
        Command::Sw { manifold } => {
            let m = prepare(&manifold)?;
            let r = CharClassReport::new(&m)?;
            emit(json, &r, || {
                let mut lines = vec![format!("{} (dim {}, betti {})", r.manifold, r.dim, join(&r.betti))];
                for (k, (v, w)) in r.wu.iter().zip(&r.sw).enumerate() {
                    lines.push(format!("v{k} [{}]  w{k} [{}]", bits(v), bits(w)));
                }
                lines.push(format!("orientable {}", r.orientable));
                lines.push(format!("<w{}, [M]> = {}", r.dim, u8::from(r.top_sw_number)));
                lines.join("\n")
            });
        }
        Command::Ground { manifold, model, method } => {
            let record = parse_manifold(&manifold).map_err(usage)?;
            let model = match model {
                ModelArg::Tc => Model::ToricCode,
                ModelArg::Gds => Model::Gds,
            };
            let (name, k) = (&record.name, &record.complex);
            let report = match method {
                MethodArg::Fast => ground_dim(name, k, model)?,
                MethodArg::Flat => flat_oracle_ground_dim(name, k, model, cli.max_flat_bits)?,
                MethodArg::Full => full_oracle_ground_dim(name, k, model, cli.max_edges)?,
            };
            emit(json, &report, || {
                let method_name = serde_json::to_value(report.method).expect("method serializes");
                let mut line = format!(
                    "{} {} {}: dim {}",
                    report.manifold,
                    report.model,
                    method_name.as_str().unwrap_or_default(),
                    report.dim
                );
                if method == MethodArg::Fast {
                    line.push_str(&format!(", permitted classes [{}]", join(&report.permitted)));
                }
                line
            });
        }
        Command::Statedim { manifold, theory } => {
            let m = prepare(&manifold)?;
            let t = TheoryHandle::parse(&theory, m.dim() + 1).map_err(usage)?;
            let r = state_dim(&t, &m)?;
            emit(json, &r, || r.dim.to_string());
        }
        Command::Partition { manifold, theory } => {
            let m = prepare(&manifold)?;
            let t = TheoryHandle::parse(&theory, m.dim()).map_err(usage)?;
            let r = quantum_partition(&t, &m)?;
            emit(json, &r, || r.value().to_string());
        }
        Command::Compare { theories, manifolds } => {
            let ms: Vec<PreparedManifold> = manifolds.iter().map(|e| prepare(e)).collect::<Result<_, _>>()?;
            let d = ms[0].dim();
            if let Some(bad) = ms.iter().find(|m| m.dim() != d) {
                return Err(Failure::Usage(Error::DegreeMismatch { lagrangian: d + 1, required: bad.dim() + 1 }));
            }
            let ts: Vec<TheoryHandle> =
                theories.iter().map(|t| TheoryHandle::parse(t, d + 1).map_err(usage)).collect::<Result<_, _>>()?;
            let table = compare_theories(&ts, &ms)?;
            emit(json, &table, || table.to_text());
        }
        Command::Validate { seed, only } => {
            let options = ValidationOptions {
                seed,
                max_edges: cli.max_edges,
                max_flat_bits: cli.max_flat_bits,
                ..ValidationOptions::default()
            };
            let ids = if only.is_empty() { criterion_ids() } else { only };
            let mut criteria = Vec::new();
            for id in ids {
                let Some(c) = run_criterion(id, &options) else {
                    return Err(Failure::Compute(format!("no acceptance criterion {id}")));
                };
                if !json {
                    let status = if c.passed { "PASS" } else { "FAIL" };
                    println!("AC{:<2} {status} {} ({:.0} ms)", c.id, c.title, c.elapsed_ms);
                    for d in c.details.iter().filter(|d| d.starts_with("FAIL")) {
                        println!("     {d}");
                    }
                }
                criteria.push(c);
            }
            let report = ValidationReport { seed, passed: criteria.iter().all(|c| c.passed), criteria };
            if json {
                println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
            }
            if !report.passed {
                return Err(Failure::Compute("validation failed".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot set up {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}\n\n{MANIFOLD_GRAMMAR}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
