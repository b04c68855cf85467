//! Command-line surface.
//!
//! Exit codes: `0` success, `1` cross-check failure, `2` usage or input
//! error. Errors go to stderr as `{"code", "message", "context"}`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use clusterkit_core::geometry::{decompose, Triangulation};
use clusterkit_core::quiver::complete_extension;
use clusterkit_core::scattering::{self, BrokenLine};
use clusterkit_core::snake::SnakeDiagram;
use clusterkit_core::{Error, LaurentPoly, LinearExtension, Quiver, Var, Vertex};
use serde_json::{json, Value};

use crate::crosscheck::{self, box_scope, variable_scope};
use crate::io::{laurent_to_json, parse_list, parse_quiver};
use crate::models::{self, Model};
use crate::{draw, random, report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "clusterkit", version, about = "Cluster variables of type-A quivers by several combinatorial models")]
pub struct Cli {
    /// Worker threads; overrides CLUSTERKIT_THREADS.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct Target {
    /// Quiver file in text or JSON form; `-` reads stdin.
    #[arg(long)]
    pub quiver: PathBuf,
    /// Comma-separated d-vector.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "subquiver")]
    pub dvector: Option<String>,
    /// Vertices of a linear full subquiver, for its cluster variable.
    #[arg(long)]
    pub subquiver: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Expands a cluster monomial.
    Expand {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value = "mutation")]
        model: Model,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Counts the witnesses of a model.
    Count {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum)]
        model: Model,
        /// Print every witness as a JSON line.
        #[arg(long)]
        list_witnesses: bool,
    },
    /// Splits a d-vector into cluster-variable d-vectors.
    Decompose {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        dvector: String,
    },
    /// Lists the pipelines of a d-vector.
    Pipelines {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        dvector: String,
        /// Write a drawing to this file.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Snake diagram of a linear subquiver or an orientation sequence.
    Snake {
        #[arg(long, requires = "subquiver")]
        quiver: Option<PathBuf>,
        #[arg(long)]
        subquiver: Option<String>,
        /// Orientation sequence of a linear quiver, e.g. `0,0,1`.
        #[arg(long, conflicts_with_all = ["quiver", "subquiver"])]
        delta: Option<String>,
        /// Write a drawing to this file.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Matching to highlight, by index.
        #[arg(long, default_value_t = 0)]
        matching: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Broken lines of a cluster variable.
    BrokenLines {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        subquiver: String,
        /// Use principal coefficients.
        #[arg(long)]
        principal: bool,
        /// Print an SVG projection instead, e.g. `plane=1,2`.
        #[arg(long)]
        svg: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Runs several models on the same d-vectors and compares them.
    Crosscheck {
        #[arg(long, conflicts_with = "random")]
        quiver: Option<PathBuf>,
        /// Number of random quivers instead of a file.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        min_vertices: usize,
        #[arg(long, default_value_t = 6)]
        max_vertices: usize,
        /// Comma-separated model names; all models by default.
        #[arg(long, value_delimiter = ',', value_enum)]
        models: Option<Vec<Model>>,
        /// Check cluster monomials in the box `[lo, hi]^n` instead of
        /// cluster variables, e.g. `0,2`.
        #[arg(long = "box", allow_hyphen_values = true)]
        bounds: Option<String>,
        /// Record wall-clock time per model.
        #[arg(long)]
        timings: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Dumps every cluster variable with its d-vector as JSON.
    EnumerateVariables {
        #[arg(long)]
        quiver: PathBuf,
    },
    /// Markdown table of the non-initial cluster variables.
    ReportTable {
        #[arg(long)]
        quiver: PathBuf,
    },
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub exit: i32,
    pub code: String,
    pub message: String,
    pub context: Value,
}

impl Failure {
    fn input(e: Error, context: Value) -> Failure {
        Failure { exit: EXIT_INPUT, code: e.code().into(), message: e.to_string(), context }
    }

    fn usage(message: impl Into<String>) -> Failure {
        Failure { exit: EXIT_INPUT, code: "Usage".into(), message: message.into(), context: json!({}) }
    }

    fn io(e: std::io::Error, path: &std::path::Path) -> Failure {
        Failure { exit: EXIT_INPUT, code: "Io".into(), message: e.to_string(), context: json!({ "path": path }) }
    }

    pub fn envelope(&self) -> Value {
        json!({ "code": self.code, "message": self.message, "context": self.context })
    }
}

type Outcome = std::result::Result<i32, Failure>;

fn read_quiver(path: &std::path::Path) -> std::result::Result<Quiver, Failure> {
    let src = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| Failure::io(e, path))?
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::io(e, path))?
    };
    parse_quiver(&src).map_err(|e| Failure::input(e, json!({ "path": path })))
}

fn list<T: std::str::FromStr>(s: &str, what: &str) -> std::result::Result<Vec<T>, Failure> {
    parse_list(s).map_err(|e| Failure::input(e, json!({ "argument": what, "value": s })))
}

fn dvector_of(q: &Quiver, t: &Target) -> std::result::Result<Vec<i64>, Failure> {
    let a = match (&t.dvector, &t.subquiver) {
        (Some(d), _) => list(d, "dvector")?,
        (None, Some(s)) => {
            let vs: Vec<Vertex> = list(s, "subquiver")?;
            let p = q.linear_subquiver(&vs).map_err(|e| Failure::input(e, json!({ "subquiver": vs })))?;
            p.indicator(q)
        }
        (None, None) => return Err(Failure::usage("one of --dvector or --subquiver is required")),
    };
    if a.len() != q.n() {
        return Err(Failure::input(
            Error::Parse(format!("d-vector has {} entries for {} vertices", a.len(), q.n())),
            json!({ "dvector": a }),
        ));
    }
    Ok(a)
}

fn write_file(path: &std::path::Path, contents: &str) -> std::result::Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure::io(e, path))
}

fn out_err(e: std::io::Error) -> Failure {
    Failure { exit: EXIT_INPUT, code: "Io".into(), message: e.to_string(), context: json!({ "stream": "stdout" }) }
}

fn rational(x: &num_rational::BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn broken_line_json(l: &BrokenLine, nq: usize) -> Value {
    let extra: Vec<Var> = (nq as Var + 1..=2 * nq as Var).collect();
    let bits: String = l.s.iter().map(|&b| if b { '1' } else { '0' }).collect();
    json!({
        "s": bits,
        "walls": l.walls,
        "directions": l.directions,
        "bends": l.bends.iter().map(|b| b.iter().map(rational).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "endpoint": l.endpoint.iter().map(rational).collect::<Vec<_>>(),
        "mono": LaurentPoly::monomial(l.mono()).canonical_string(),
        "mono_specialized": LaurentPoly::monomial(l.mono().without(&extra)).canonical_string(),
    })
}

fn execute(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Expand { target, model, format } => {
            let q = read_quiver(&target.quiver)?;
            let a = dvector_of(&q, &target)?;
            let ctx = json!({ "model": model.name(), "dvector": a });
            let p = models::expand(model, &q, &a).map_err(|e| Failure::input(e, ctx))?;
            match format {
                Format::Text => writeln!(out, "{}", p.canonical_string()),
                Format::Json => writeln!(out, "{}", laurent_to_json(&p)),
            }
            .map_err(out_err)?;
        }
        Command::Count { target, model, list_witnesses } => {
            let q = read_quiver(&target.quiver)?;
            let a = dvector_of(&q, &target)?;
            let ctx = json!({ "model": model.name(), "dvector": a });
            if list_witnesses {
                for w in models::witnesses(model, &q, &a).map_err(|e| Failure::input(e, ctx))? {
                    writeln!(out, "{w}").map_err(out_err)?;
                }
            } else {
                let k = models::count(model, &q, &a).map_err(|e| Failure::input(e, ctx))?;
                writeln!(out, "{k}").map_err(out_err)?;
            }
        }
        Command::Decompose { quiver, dvector } => {
            let q = read_quiver(&quiver)?;
            let a: Vec<i64> = list(&dvector, "dvector")?;
            let d = decompose(&q, &a).map_err(|e| Failure::input(e, json!({ "dvector": a })))?;
            for (part, k) in d.grouped() {
                writeln!(out, "{}", json!({ "part": part, "multiplicity": k })).map_err(out_err)?;
            }
            if d.negative.iter().any(|&x| x != 0) {
                writeln!(out, "{}", json!({ "initial": d.negative })).map_err(out_err)?;
            }
        }
        Command::Pipelines { quiver, dvector, svg } => {
            let q = read_quiver(&quiver)?;
            let a: Vec<i64> = list(&dvector, "dvector")?;
            let d = decompose(&q, &a).map_err(|e| Failure::input(e, json!({ "dvector": a })))?;
            for p in &d.pipelines {
                writeln!(out, "{}", json!({ "ends": [p.ends.0, p.ends.1], "crossed": p.crossed })).map_err(out_err)?;
            }
            if let Some(path) = svg {
                let t = Triangulation::from_quiver(&q).map_err(|e| Failure::input(e, json!({})))?;
                write_file(&path, &draw::pipelines_svg(&t, &d.pipelines))?;
            }
        }
        Command::Snake { quiver, subquiver, delta, svg, matching, format } => {
            let (ext, relabel): (LinearExtension, Option<Vec<Vertex>>) = match (quiver, subquiver, delta) {
                (Some(path), Some(s), None) => {
                    let q = read_quiver(&path)?;
                    let vs: Vec<Vertex> = list(&s, "subquiver")?;
                    let p = q.linear_subquiver(&vs).map_err(|e| Failure::input(e, json!({ "subquiver": vs })))?;
                    let c = complete_extension(&q, &p).map_err(|e| Failure::input(e, json!({ "subquiver": vs })))?;
                    (c.extension.clone(), Some(c.to_global.clone()))
                }
                (None, None, Some(d)) => {
                    let delta: Vec<u8> = list(&d, "delta")?;
                    let ext = LinearExtension::new(&delta).map_err(|e| Failure::input(e, json!({ "delta": delta })))?;
                    (ext, None)
                }
                _ => return Err(Failure::usage("give either --quiver with --subquiver, or --delta")),
            };
            let d = SnakeDiagram::new(&ext);
            let ms = d.matchings().map_err(|e| Failure::input(e, json!({})))?;
            let global = |v: Vertex| relabel.as_ref().map_or(v, |r| r[v as usize - 1]);
            let labels = |m: &clusterkit_core::snake::PerfectMatching| -> Vec<Vertex> {
                m.edges.iter().map(|&e| global(ext.label(d.label(e).site()))).collect()
            };
            match format {
                Format::Text => {
                    writeln!(out, "tiles {} matchings {}", d.n(), ms.len()).map_err(out_err)?;
                    for m in &ms {
                        let ls: Vec<String> = labels(m).iter().map(|v| v.to_string()).collect();
                        writeln!(out, "{}", ls.join(" ")).map_err(out_err)?;
                    }
                }
                Format::Json => {
                    let all: Vec<Vec<Vertex>> = ms.iter().map(labels).collect();
                    writeln!(out, "{}", json!({ "tiles": d.tiles(), "matchings": all })).map_err(out_err)?;
                }
            }
            if let Some(path) = svg {
                let m = ms.get(matching).ok_or_else(|| {
                    Failure::input(
                        Error::AssumptionViolated(format!("only {} matchings", ms.len())),
                        json!({ "matching": matching }),
                    )
                })?;
                write_file(&path, &d.to_svg(Some(m)))?;
            }
        }
        Command::BrokenLines { quiver, subquiver, principal, svg, format } => {
            let q = read_quiver(&quiver)?;
            let vs: Vec<Vertex> = list(&subquiver, "subquiver")?;
            let ctx = json!({ "subquiver": vs });
            let p = q.linear_subquiver(&vs).map_err(|e| Failure::input(e, ctx.clone()))?;
            let lines = scattering::broken_lines(&q, &p, principal).map_err(|e| Failure::input(e, ctx.clone()))?;
            if let Some(spec) = svg {
                let plane = spec.strip_prefix("plane=").unwrap_or(&spec);
                let ij: Vec<usize> = list(plane, "svg")?;
                let dim = lines.first().map_or(q.n(), |l| l.endpoint.len());
                let [i, j] = ij.as_slice() else { return Err(Failure::usage("--svg expects plane=i,j")) };
                if !(1..=dim).contains(i) || !(1..=dim).contains(j) || i == j {
                    return Err(Failure::usage(format!("plane coordinates must be distinct and in 1..={dim}")));
                }
                write!(out, "{}", draw::broken_lines_svg(&lines, *i, *j)).map_err(out_err)?;
                return Ok(EXIT_OK);
            }
            match format {
                Format::Json => {
                    let all: Vec<Value> = lines.iter().map(|l| broken_line_json(l, q.n())).collect();
                    writeln!(out, "{}", Value::Array(all)).map_err(out_err)?;
                }
                Format::Text => {
                    for l in &lines {
                        let j = broken_line_json(l, q.n());
                        writeln!(out, "s={} walls={} mono={}", j["s"].as_str().unwrap_or(""), j["walls"], j["mono"].as_str().unwrap_or(""))
                            .map_err(out_err)?;
                        for (k, b) in l.bends.iter().enumerate() {
                            let coords: Vec<String> = b.iter().map(rational).collect();
                            writeln!(out, "  Q{} = ({})", k + 1, coords.join(", ")).map_err(out_err)?;
                        }
                    }
                }
            }
        }
        Command::Crosscheck { quiver, random: count, seed, min_vertices, max_vertices, models, bounds, timings, format } => {
            let quivers = match (quiver, count) {
                (Some(path), None) => vec![read_quiver(&path)?],
                (None, Some(k)) => {
                    if min_vertices == 0 || min_vertices > max_vertices || max_vertices > random::MAX_VERTICES {
                        return Err(Failure::usage(format!(
                            "vertex bounds must satisfy 1 <= min <= max <= {}",
                            random::MAX_VERTICES
                        )));
                    }
                    random::sample(seed, k, min_vertices, max_vertices)
                }
                _ => return Err(Failure::usage("give either --quiver or --random")),
            };
            let models = models.unwrap_or_else(|| Model::ALL.to_vec());
            let bounds = bounds.map(|b| list::<i64>(&b, "box")).transpose()?;
            let mut items = Vec::new();
            for (k, q) in quivers.iter().enumerate() {
                let scope = match &bounds {
                    Some(b) => {
                        let [lo, hi] = b.as_slice() else { return Err(Failure::usage("--box expects lo,hi")) };
                        box_scope(q, *lo, *hi)
                    }
                    None => variable_scope(q),
                };
                items.extend(scope.into_iter().map(|a| (k, a)));
            }
            let report = crosscheck::run(&quivers, &items, &models, timings);
            match format {
                Format::Text => write!(out, "{}", report.to_text()),
                Format::Json => writeln!(out, "{}", serde_json::to_string(&report).expect("serializable")),
            }
            .map_err(out_err)?;
            return Ok(if report.pass() { EXIT_OK } else { EXIT_CHECK_FAILED });
        }
        Command::EnumerateVariables { quiver } => {
            let q = read_quiver(&quiver)?;
            let t = report::variable_table(&q).map_err(|e| Failure::input(e, json!({})))?;
            writeln!(out, "{t}").map_err(out_err)?;
        }
        Command::ReportTable { quiver } => {
            let q = read_quiver(&quiver)?;
            let t = report::report_table(&q).map_err(|e| Failure::input(e, json!({})))?;
            write!(out, "{t}").map_err(out_err)?;
        }
    }
    Ok(EXIT_OK)
}

fn thread_count(flag: Option<usize>) -> std::result::Result<Option<usize>, Failure> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("CLUSTERKIT_THREADS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| Failure::usage(format!("CLUSTERKIT_THREADS must be a positive integer, got `{v}`"))),
        Err(_) => Ok(None),
    }
}

/// Parses `args`, runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let f = Failure::usage(e.to_string().trim_end().to_string());
            let _ = writeln!(err, "{}", f.envelope());
            return f.exit;
        }
    };
    let result = thread_count(cli.threads).and_then(|threads| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(k) = threads {
            if k == 0 {
                return Err(Failure::usage("thread count must be positive"));
            }
            builder = builder.num_threads(k);
        }
        let pool = builder.build().map_err(|e| Failure::usage(e.to_string()))?;
        let mut buf: Vec<u8> = Vec::new();
        let code = pool.install(|| execute(cli.command, &mut buf));
        out.write_all(&buf).map_err(out_err)?;
        code
    });
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "{}", f.envelope());
            f.exit
        }
    }
}
