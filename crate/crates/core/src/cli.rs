//! The `qpicard` command line.
//!
//! Every argument that takes JSON also accepts `@path` to read the document
//! from a file, so artifacts written by one subcommand can be fed to the
//! next. Exit status is 0 on success, 1 on domain errors and 2 on malformed
//! input; errors are printed to stderr as `{"error": {"code", "message"}}`.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use crate::constructions::{
    avoid_three, plane_avoider, transformed_trig_preimage, trig_example, trig_preimage, AvoidanceReport,
};
use crate::density::{known_avoided_plane, run_density_scan, Plane, DEFAULT_EXCLUSION_EPS};
use crate::error::Error;
use crate::picard::{
    build_problem, five_value_harness, monomial_curve_check, monomial_curve_check_exact, FiveValueInput,
    ProblemSummary,
};
use crate::quaternion::{slice_point, ImaginaryUnit, Quaternion};
use crate::slice::{NamedSeries, SliceFunction};
use crate::zeros::{find_roots_detailed, qc_grid, Fiber, SearchRect};

#[derive(Parser, Debug)]
#[command(name = "qpicard", version, about = "Value distribution of quaternionic slice regular functions")]
pub struct Cli {
    /// Seed for every sampled quantity.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate f at a quaternion, or its stem function at a complex number.
    Eval {
        /// Named series, identity, function JSON or avoidance report.
        #[arg(long, default_value = "sinJcosK")]
        function: String,
        /// Quaternion `[w,x,y,z]`.
        #[arg(long, conflicts_with = "z")]
        q: Option<String>,
        /// Complex number `[re,im]`.
        #[arg(long)]
        z: Option<String>,
    },
    /// Solve f(q) = c.
    Preimage {
        #[arg(long)]
        target: String,
        /// Function JSON or avoidance report; defaults to the trig example.
        #[arg(long)]
        function: Option<String>,
        /// Search rectangle `[x_min,x_max,y_min,y_max]` for general functions.
        #[arg(long, default_value = "[-10,10,0,10]")]
        rect: String,
    },
    /// Zeros of Q_c in a rectangle of the upper half-plane.
    Zeros {
        #[arg(long, default_value = "sinJcosK")]
        function: String,
        #[arg(long)]
        target: String,
        #[arg(long, default_value = "[-5,5,0,5]")]
        rect: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Grid resolution of the CSV export of |Q_c|.
        #[arg(long, default_value_t = 100)]
        grid: usize,
    },
    /// A function omitting three given values.
    Avoid3 {
        /// `[[w,x,y,z] × 3]`.
        #[arg(long)]
        points: String,
    },
    /// A function omitting the plane p0 + span{u, v}.
    AvoidPlane {
        #[arg(long)]
        p0: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Build the five-value problem and trace φ∘(F − c₅).
    Check5 {
        /// `[[w,x,y,z] × 5]` or `{"targets": [...]}`; random when omitted.
        #[arg(long)]
        targets: Option<String>,
        #[arg(long)]
        function: Option<String>,
        #[arg(long, default_value = "[-3,3,0,3]")]
        rect: String,
        #[arg(long, default_value_t = 41)]
        grid: usize,
    },
    /// Laurent certificate for the monomial curve (α_i z^{m_i}).
    MonomialCheck {
        /// Five exponents.
        #[arg(long)]
        m: String,
        /// Five nonzero reals; random when omitted.
        #[arg(long)]
        alpha: Option<String>,
        /// Targets; the standard basis with c₅ = 0 when omitted.
        #[arg(long)]
        targets: Option<String>,
        /// Collect coefficients in exact rational arithmetic.
        #[arg(long)]
        exact: bool,
    },
    /// Lattice scan of the image inside a ball.
    DensityScan {
        #[arg(long, default_value = "sinJcosK")]
        function: String,
        #[arg(long, default_value_t = 3.0)]
        radius: f64,
        #[arg(long, default_value_t = 0.5)]
        step: f64,
        /// `auto` (the provably omitted plane, if known), `none`, `slice-i`
        /// or a plane `{"point","u","v"}`.
        #[arg(long, default_value = "auto")]
        exclude: String,
        #[arg(long, default_value_t = DEFAULT_EXCLUSION_EPS)]
        eps: f64,
    },
}

/// A failed run.
#[derive(Debug)]
pub enum CliError {
    /// Input that does not parse or violates a schema.
    Malformed(String),
    /// A well-formed request the mathematics rejects.
    Domain(Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) | CliError::Io(_) => 1,
            CliError::Malformed(_) => 2,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Domain(e) => e.code(),
            CliError::Malformed(_) => "MalformedInput",
            CliError::Io(_) => "Io",
        }
    }

    pub fn to_json(&self) -> Value {
        let message = match self {
            CliError::Domain(e) => e.to_string(),
            CliError::Malformed(m) => m.clone(),
            CliError::Io(e) => e.to_string(),
        };
        json!({"error": {"code": self.code(), "message": message}})
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(m) => CliError::Malformed(m),
            other => CliError::Domain(other),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read_arg(raw: &str) -> CliResult<String> {
    match raw.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::Malformed(format!("{path}: {e}"))),
        None => Ok(raw.to_string()),
    }
}

fn parse_json<T: DeserializeOwned>(raw: &str, what: &str) -> CliResult<T> {
    let text = read_arg(raw)?;
    serde_json::from_str(&text).map_err(|e| CliError::Malformed(format!("{what}: {e}")))
}

fn parse_quaternion(raw: &str, what: &str) -> CliResult<Quaternion> {
    let q: Quaternion = parse_json(raw, what)?;
    if !q.is_finite() {
        return Err(CliError::Malformed(format!("{what}: components must be finite")));
    }
    Ok(q)
}

fn parse_rect(raw: &str) -> CliResult<SearchRect> {
    let r: [f64; 4] = parse_json(raw, "rect")?;
    SearchRect::new(r[0], r[1], r[2], r[3]).map_err(|e| CliError::Malformed(e.to_string()))
}

/// A function given by name, as function JSON, or as an avoidance report.
pub fn parse_function(raw: &str) -> CliResult<SliceFunction> {
    let text = read_arg(raw)?;
    let trimmed = text.trim();
    if trimmed == "identity" {
        return Ok(SliceFunction::identity());
    }
    if let Ok(kind) = NamedSeries::from_name(trimmed) {
        return Ok(SliceFunction::named(kind));
    }
    let value: Value =
        serde_json::from_str(trimmed).map_err(|e| CliError::Malformed(format!("function: {e}")))?;
    if value.get("g").is_some() {
        let report: AvoidanceReport =
            serde_json::from_value(value).map_err(|e| CliError::Malformed(format!("avoidance report: {e}")))?;
        return Ok(report.g);
    }
    serde_json::from_value(value).map_err(|e| CliError::Malformed(format!("function: {e}")))
}

fn parse_targets(raw: &str) -> CliResult<[Quaternion; 5]> {
    let text = read_arg(raw)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| CliError::Malformed(format!("targets: {e}")))?;
    let input: FiveValueInput = if value.is_array() {
        FiveValueInput {
            targets: serde_json::from_value(value).map_err(|e| CliError::Malformed(format!("targets: {e}")))?,
        }
    } else {
        serde_json::from_value(value).map_err(|e| CliError::Malformed(format!("targets: {e}")))?
    };
    input.targets_array().map_err(CliError::from)
}

fn random_targets(rng: &mut ChaCha8Rng) -> [Quaternion; 5] {
    loop {
        let c: [Quaternion; 5] = std::array::from_fn(|_| {
            Quaternion::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            )
        });
        if build_problem(&c).is_ok() {
            return c;
        }
    }
}

enum Output {
    Json(Value),
    Csv(String),
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn require_json(format: Format, command: &str) -> CliResult<()> {
    match format {
        Format::Json => Ok(()),
        Format::Csv => Err(CliError::Malformed(format!("{command} has no CSV output"))),
    }
}

fn dispatch(cli: &Cli) -> CliResult<Output> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    match &cli.command {
        Command::Eval { function, q, z } => {
            require_json(cli.format, "eval")?;
            let f = parse_function(function)?;
            match (q, z) {
                (Some(q), _) => {
                    let q = parse_quaternion(q, "q")?;
                    Ok(Output::Json(json!({"q": q, "value": f.eval(q)})))
                }
                (None, Some(z)) => {
                    let [re, im]: [f64; 2] = parse_json(z, "z")?;
                    let z = Complex64::new(re, im);
                    Ok(Output::Json(json!({"z": [re, im], "stem": f.stem_eval(z)})))
                }
                (None, None) => Err(CliError::Malformed("eval needs --q or --z".into())),
            }
        }
        Command::Preimage { target, function, rect } => {
            require_json(cli.format, "preimage")?;
            let c = parse_quaternion(target, "target")?;
            let q = match function {
                None => trig_preimage(c)?,
                Some(raw) => {
                    let f = parse_function(raw)?;
                    general_preimage(&f, c, parse_rect(rect)?)?
                }
            };
            Ok(Output::Json(json!({"q": q})))
        }
        Command::Zeros { function, target, rect, tol, grid } => {
            let f = parse_function(function)?;
            let c = parse_quaternion(target, "target")?;
            let rect = parse_rect(rect)?;
            match cli.format {
                Format::Json => {
                    let search = find_roots_detailed(&f, c, rect, *tol)?;
                    Ok(Output::Json(json!({
                        "target": c,
                        "rect": [rect.x_min, rect.x_max, rect.y_min, rect.y_max],
                        "roots": search.roots,
                        "total_winding": search.total_winding,
                        "stats": search.stats,
                    })))
                }
                Format::Csv => {
                    if *grid < 2 {
                        return Err(CliError::Malformed("grid needs at least 2 points per side".into()));
                    }
                    let mut out = String::from("x,y,abs_q\n");
                    for (x, y, a) in qc_grid(&f, c, &rect, *grid) {
                        writeln!(out, "{x},{y},{a}").expect("string write");
                    }
                    Ok(Output::Csv(out))
                }
            }
        }
        Command::Avoid3 { points } => {
            require_json(cli.format, "avoid3")?;
            let p: [Quaternion; 3] = parse_json(points, "points")?;
            Ok(Output::Json(to_value(&avoid_three(p[0], p[1], p[2])?)))
        }
        Command::AvoidPlane { p0, u, v } => {
            require_json(cli.format, "avoid-plane")?;
            let report = plane_avoider(
                parse_quaternion(p0, "p0")?,
                parse_quaternion(u, "u")?,
                parse_quaternion(v, "v")?,
            )?;
            Ok(Output::Json(to_value(&report)))
        }
        Command::Check5 { targets, function, rect, grid } => {
            require_json(cli.format, "check5")?;
            let c = match targets {
                Some(raw) => parse_targets(raw)?,
                None => random_targets(&mut rng),
            };
            let prob = build_problem(&c)?;
            let f = match function {
                Some(raw) => parse_function(raw)?,
                None => trig_example(),
            };
            let harness = five_value_harness(&prob, &f, &parse_rect(rect)?, *grid)?;
            Ok(Output::Json(json!({
                "problem": ProblemSummary::from(&prob),
                "function": f,
                "harness": harness,
            })))
        }
        Command::MonomialCheck { m, alpha, targets, exact } => {
            require_json(cli.format, "monomial-check")?;
            let m: [i64; 5] = parse_json(m, "m")?;
            if m.iter().any(|k| k.abs() > 64) {
                return Err(CliError::Malformed("exponents must lie in [-64, 64]".into()));
            }
            let alpha: [f64; 5] = match alpha {
                Some(raw) => parse_json(raw, "alpha")?,
                None => std::array::from_fn(|_| {
                    let a: f64 = rng.random_range(0.5..2.0);
                    if rng.random::<bool>() { a } else { -a }
                }),
            };
            let c = match targets {
                Some(raw) => parse_targets(raw)?,
                None => [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K, Quaternion::ZERO],
            };
            let cert = if *exact {
                build_problem(&c)?;
                monomial_curve_check_exact(&c, alpha, m)?
            } else {
                monomial_curve_check(&build_problem(&c)?, alpha, m)?
            };
            Ok(Output::Json(to_value(&cert)))
        }
        Command::DensityScan { function, radius, step, exclude, eps } => {
            require_json(cli.format, "density-scan")?;
            let f = parse_function(function)?;
            let exclusion = match exclude.as_str() {
                "auto" => known_avoided_plane(&f),
                "none" => None,
                "slice-i" => Some(Plane::SLICE_I),
                raw => Some(parse_json::<Plane>(raw, "exclude")?),
            };
            Ok(Output::Json(to_value(&run_density_scan(&f, *radius, *step, exclusion, *eps)?)))
        }
    }
}

/// A point `q` with `f(q) = c` found through the zeros of `Q_c`.
fn general_preimage(f: &SliceFunction, c: Quaternion, rect: SearchRect) -> crate::error::Result<Quaternion> {
    if let Some(q) = transformed_trig_preimage(f, c) {
        return q;
    }
    let search = find_roots_detailed(f, c, rect, 1e-14)?;
    for r in &search.roots {
        let q = match r.fiber {
            Fiber::Point { h } => slice_point(r.x, r.y, h),
            Fiber::Sphere => slice_point(r.x, r.y, ImaginaryUnit::I),
            Fiber::Empty => continue,
        };
        if (f.eval(q) - c).norm() <= 1e-8 * (1.0 + c.norm()) {
            return Ok(q);
        }
    }
    Err(Error::Unreachable(format!("{c} is not attained in the search rectangle")))
}

/// Runs a parsed command line, writing the artifact to `--output` or stdout.
pub fn execute(cli: &Cli) -> std::result::Result<(), CliError> {
    let text = match dispatch(cli)? {
        Output::Json(v) => serde_json::to_string_pretty(&v).expect("json") + "\n",
        Output::Csv(s) => s,
    };
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(CliError::Io),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(CliError::Io),
    }
}

/// Entry point of the `qpicard` binary; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if !e.use_stderr() {
                // --help and --version
                let _ = e.print();
                return 0;
            }
            let err = CliError::Malformed(e.to_string());
            eprintln!("{}", err.to_json());
            return err.exit_code();
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}
