//! `mzsv`: evaluate, expand and verify harmonic-sum and zeta-star identities.

mod suites;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mzsv_core::exact::scaled::ScaledContext;
use mzsv_core::exact::{Companion, MhsEngine};
use mzsv_core::families::{
    build_lhs, build_rhs, enumerate_specs, verify_range, Family, FamilySpec, SweepRanges,
};
use mzsv_core::index::{parse_index, pi_expand_weighted};
use mzsv_core::numeric::{self, NumericError};
use mzsv_core::report::{Report, ReportItem};
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "mzsv", version, about = "Verify multiple harmonic sum and zeta-star identity families")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for sweeps and suites.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    workers: u32,
    /// Seed for randomized grids.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Maximum number of cached harmonic-sum tables.
    #[arg(long, global = true, default_value_t = 4096)]
    memo_cap: usize,
    /// Omit timings so reports are byte-identical across runs.
    #[arg(long, global = true)]
    no_timing: bool,
    /// Absolute tolerance for numeric checks.
    #[arg(long, global = true, default_value_t = numeric::DEFAULT_TOL)]
    tol: f64,
    /// Tolerance for checks that recognize a rational multiple of a power of π.
    #[arg(long, global = true, default_value_t = 1e-30)]
    recognition_tol: f64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Mollified {
    Big,
    Small,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Suite {
    Ittw,
    Lemma31,
    Middlestep,
    PaperExamples,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate H_n, H*_n or a mollified sum exactly (or ζ/ζ* numerically with --zeta).
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        index: String,
        #[arg(long, required_unless_present = "zeta")]
        n: Option<u64>,
        #[arg(long)]
        star: bool,
        #[arg(long, value_enum, conflicts_with = "star")]
        mollified: Option<Mollified>,
        /// Evaluate the infinite sum to --tol instead.
        #[arg(long, conflicts_with = "mollified")]
        zeta: bool,
    },
    /// Print the weighted Π-expansion of an index.
    Expand {
        #[arg(long, allow_hyphen_values = true)]
        base: String,
        #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
        coeff: i64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        sign: i64,
    },
    /// Verify one family instance exactly for n = 1..=n-max.
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 30)]
        n_max: u64,
    },
    /// Verify every family instance inside a parameter box exactly.
    Sweep {
        /// Family to sweep; all nine when omitted.
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value_t = 2)]
        r_max: usize,
        #[arg(long, default_value_t = 2)]
        a_max: u32,
        #[arg(long, default_value_t = 2)]
        b_max: u32,
        #[arg(long, value_delimiter = ',', default_values_t = vec![3, 4])]
        c_values: Vec<u32>,
        #[arg(long, default_value_t = 2)]
        t_max: u32,
        #[arg(long, default_value_t = 50)]
        n_max: u64,
    },
    /// Verify the zeta-star form of a family instance numerically.
    VerifyMzsv {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Run a named suite.
    Suite {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        n: Option<u64>,
    },
}

#[derive(Args, Debug, Clone)]
struct SpecArgs {
    #[arg(long)]
    family: String,
    #[arg(long, value_delimiter = ',')]
    a: Vec<u32>,
    #[arg(long, value_delimiter = ',')]
    b: Vec<u32>,
    #[arg(long, value_delimiter = ',')]
    c: Vec<u32>,
    #[arg(long, default_value_t = 0)]
    t: u32,
}

/// Failure modes that map to exit codes.
#[derive(Debug)]
pub(crate) enum CliError {
    Usage(String),
}

impl From<NumericError> for CliError {
    fn from(e: NumericError) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// What a command produces.
enum Output {
    /// A bare value printed as-is in text mode.
    Value { text: String, report: Report },
    Report(Report),
}

pub(crate) struct Context {
    pub global: Global,
}

impl Context {
    pub fn elapsed(&self, start: Instant) -> Option<f64> {
        (!self.global.no_timing).then(|| start.elapsed().as_secs_f64() * 1e3)
    }

    fn config(&self, command: Value) -> Value {
        let g = &self.global;
        json!({
            "args": command,
            "format": format!("{:?}", g.format).to_lowercase(),
            "workers": g.workers,
            "seed": g.seed,
            "memo_cap": g.memo_cap,
            "no_timing": g.no_timing,
            "tol": g.tol,
            "recognition_tol": g.recognition_tol,
        })
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

impl SpecArgs {
    fn to_spec(&self) -> Result<FamilySpec, CliError> {
        let family: Family = self.family.parse().map_err(usage)?;
        let spec = FamilySpec::new(family, self.a.clone(), self.b.clone(), self.c.clone(), self.t);
        spec.validate().map_err(usage)?;
        Ok(spec)
    }
}

pub(crate) fn spec_params(spec: &FamilySpec) -> Value {
    serde_json::to_value(spec).expect("spec serializes")
}

fn run(ctx: &Context, command: &Command) -> Result<Output, CliError> {
    match command {
        Command::Eval { index, n, star, mollified, zeta } => {
            let s = parse_index(index).map_err(usage)?;
            let config = ctx.config(json!({"command": "eval", "index": index, "n": n, "star": star,
                "mollified": mollified.map(|m| format!("{m:?}").to_lowercase()), "zeta": zeta}));
            let start = Instant::now();
            let (label, value) = if *zeta {
                let v = if *star { numeric::zeta_star(&s, ctx.global.tol)? } else { numeric::zeta(&s, ctx.global.tol)? };
                let digits = (-ctx.global.tol.log10()).ceil().max(1.0) as usize + 2;
                let label = if *star { "zeta*" } else { "zeta" };
                (label.to_string(), v.value.to_string_radix(10, Some(digits)))
            } else {
                let n = n.expect("clap requires n without --zeta");
                let engine = MhsEngine::new(n as usize, ctx.global.memo_cap);
                let value = match mollified {
                    Some(m) => {
                        let companion = if *m == Mollified::Big { Companion::Big } else { Companion::Small };
                        engine.mollified(companion, n, &s).map_err(usage)?
                    }
                    None if *star => engine.mhs_star(n, &s),
                    None => engine.mhs(n, &s),
                };
                let label = match (mollified, star) {
                    (Some(Mollified::Big), _) => "mollified-big",
                    (Some(Mollified::Small), _) => "mollified-small",
                    (None, true) => "H*",
                    (None, false) => "H",
                };
                (label.to_string(), value.to_string())
            };
            let item = ReportItem::exact(label, json!({"index": s.to_string()}), *n, value.clone(), value.clone(), true)
                .with_elapsed(ctx.elapsed(start));
            Ok(Output::Value { text: value, report: Report::new("eval", config, vec![item]) })
        }
        Command::Expand { base, coeff, sign } => {
            let s = parse_index(base).map_err(usage)?;
            let sum = pi_expand_weighted(&s, *coeff, *sign).map_err(usage)?;
            let text = sum.to_string();
            let config = ctx.config(json!({"command": "expand", "base": base, "coeff": coeff, "sign": sign}));
            let item = ReportItem::exact("expand", json!({"base": s.to_string()}), None, s.to_string(), text.clone(), true);
            Ok(Output::Value { text, report: Report::new("expand", config, vec![item]) })
        }
        Command::Verify { spec, n_max } => {
            let spec = spec.to_spec()?;
            if *n_max == 0 {
                return Err(usage("--n-max must be at least 1"));
            }
            let config = ctx.config(json!({"command": "verify", "spec": spec_params(&spec), "n_max": n_max}));
            let scaled = ScaledContext::new(*n_max as usize);
            let cells = verify_range(&scaled, &spec).map_err(usage)?;
            let params = spec_params(&spec);
            let items = cells
                .into_iter()
                .map(|cell| {
                    let item = ReportItem::exact(
                        spec.to_string(),
                        params.clone(),
                        Some(cell.n),
                        cell.lhs.to_string(),
                        cell.rhs.to_string(),
                        cell.equal,
                    );
                    let elapsed = (!ctx.global.no_timing).then_some(cell.elapsed_ms);
                    item.with_elapsed(elapsed)
                })
                .collect();
            Ok(Output::Report(Report::new("verify", config, items)))
        }
        Command::Sweep { family, r_max, a_max, b_max, c_values, t_max, n_max } => {
            let families: Vec<Family> = match family {
                Some(f) => vec![f.parse().map_err(usage)?],
                None => Family::ALL.to_vec(),
            };
            if *n_max == 0 {
                return Err(usage("--n-max must be at least 1"));
            }
            let ranges = SweepRanges {
                r_max: *r_max,
                a_max: *a_max,
                b_max: *b_max,
                c_values: c_values.clone(),
                t_max: *t_max,
            };
            let config = ctx.config(json!({"command": "sweep", "families": families, "ranges": ranges, "n_max": n_max}));
            let scaled = ScaledContext::new(*n_max as usize);
            let specs: Vec<FamilySpec> = families.iter().flat_map(|&f| enumerate_specs(f, &ranges)).collect();
            let items: Vec<ReportItem> = specs
                .par_iter()
                .map(|spec| {
                    let start = Instant::now();
                    let cells = verify_range(&scaled, spec).expect("enumerated specs are valid");
                    let failed: Vec<u64> = cells.iter().filter(|c| !c.equal).map(|c| c.n).collect();
                    let lhs = build_lhs(spec).expect("valid").to_string();
                    let rhs_spec = build_rhs(spec).expect("valid");
                    let rhs = format!(
                        "{}*Π({}) coeff {} {:?}",
                        rhs_spec.sign, rhs_spec.base, rhs_spec.coeff_base, rhs_spec.companion
                    )
                    .to_lowercase();
                    let mut item = ReportItem::exact(spec.to_string(), spec_params(spec), Some(*n_max), lhs, rhs, failed.is_empty());
                    if !failed.is_empty() {
                        item.label = format!("{} (fails at n = {:?})", spec, failed);
                    }
                    item.with_elapsed(ctx.elapsed(start))
                })
                .collect();
            Ok(Output::Report(Report::new("sweep", config, items)))
        }
        Command::VerifyMzsv { spec } => {
            let spec = spec.to_spec()?;
            let config = ctx.config(json!({"command": "verify-mzsv", "spec": spec_params(&spec)}));
            let start = Instant::now();
            let check = numeric::verify_mzsv_family(&spec, ctx.global.tol)?;
            let item = ReportItem::numeric(&check, spec_params(&spec)).with_elapsed(ctx.elapsed(start));
            Ok(Output::Report(Report::new("verify-mzsv", config, vec![item])))
        }
        Command::Suite { suite, n } => {
            let name = suite.to_possible_value().expect("no skipped variants").get_name().to_string();
            let config = ctx.config(json!({"command": "suite", "suite": name, "n": n}));
            let items = match suite {
                Suite::Ittw => suites::ittw(ctx, n.unwrap_or(1))?,
                Suite::Lemma31 => suites::lemma31(ctx, n.unwrap_or(10))?,
                Suite::Middlestep => suites::middlestep(ctx, n.unwrap_or(2))?,
                Suite::PaperExamples => suites::paper_examples(ctx)?,
            };
            Ok(Output::Report(Report::new(format!("suite {name}"), config, items)))
        }
    }
}

fn emit(format: Format, output: &Output) -> bool {
    let (report, text) = match output {
        Output::Value { text, report } => (report, Some(text)),
        Output::Report(report) => (report, None),
    };
    match (format, text) {
        (Format::Text, Some(text)) => println!("{text}"),
        (Format::Text, None) => print!("{}", report.to_text()),
        (Format::Json, _) => println!("{}", report.to_json()),
        (Format::Csv, _) => print!("{}", report.to_csv()),
    }
    report.all_passed()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !(cli.global.tol > 0.0 && cli.global.tol.is_finite()) {
        eprintln!("error: --tol must be positive");
        return ExitCode::from(2);
    }
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.global.workers as usize).build_global() {
        eprintln!("error: cannot start worker pool: {e}");
        return ExitCode::from(2);
    }
    let ctx = Context { global: cli.global.clone() };
    match run(&ctx, &cli.command) {
        Ok(output) => {
            if emit(cli.global.format, &output) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
