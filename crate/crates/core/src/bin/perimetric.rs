use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use perimetric::catalog::{generate, ExampleId, Params};
use perimetric::certifier::check_inclusions_with;
use perimetric::dynamics::{
    analyze_dynamics, fuzz_theorems, picard_iterate, theorem_verdict_with, Outcome, Start,
    DEFAULT_MAX_PERIOD,
};
use perimetric::format::parse_document;
use perimetric::rational::parse_rational;
use perimetric::report::{self, OutputFormat};
use perimetric::{
    certify_with, CertificationReport, ContractionClass, Error, Execution, Instance, Semantics,
    Verdict,
};

const OK: u8 = 0;
const NEGATIVE: u8 = 1;
const INPUT_ERROR: u8 = 2;
const BREACH: u8 = 3;

#[derive(Parser)]
#[command(name = "perimetric", version, about = "Certify contraction conditions of self-maps on finite metric spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the metric axioms of an input file or example.
    Validate(Common),
    /// Compute tight constants, verdicts and witnesses.
    Certify {
        #[command(flatten)]
        common: Common,
        /// Class id, or `all`.
        #[arg(long, default_value = "all")]
        class: String,
        #[arg(long, value_enum, default_value_t = SemanticsArg::Both)]
        semantics: SemanticsArg,
    },
    /// Fixed points, periodic points and orbit shapes.
    Dynamics {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = DEFAULT_MAX_PERIOD)]
        max_period: usize,
    },
    /// Picard iteration from one start point, with a-priori bounds.
    Iterate {
        #[command(flatten)]
        common: Common,
        /// Start label, or an exact coordinate for piecewise maps. Defaults to
        /// the first point.
        #[arg(long)]
        start: Option<String>,
        #[arg(long, default_value = "0")]
        tol: String,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        /// Four-point class whose bound is attached to the trace.
        #[arg(long)]
        class: Option<String>,
        /// Semantics of the constant used for the bound.
        #[arg(long, value_enum, default_value_t = SemanticsArg::Universal)]
        semantics: SemanticsArg,
    },
    /// Compare constants across the class inclusion results.
    Inclusions(Common),
    /// Emit a built-in example with its expected results.
    Example(Common),
    /// Check the fixed-point theorem conclusions on one input, or on random
    /// members with `--fuzz`.
    Verdict {
        #[command(flatten)]
        common: Common,
        /// Sweep seeded random member instances instead of reading an input
        #[arg(long)]
        fuzz: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Draws per space size.
        #[arg(long, default_value_t = 500)]
        attempts: usize,
        /// Space sizes, as `lo..=hi` or a single number.
        #[arg(long, default_value = "4..=7")]
        points: String,
    },
}

#[derive(Args)]
struct Common {
    /// Instance file or example id such as E3.9.
    input: Option<String>,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Example parameter, `key=value`; repeatable.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    /// Worker threads for tuple enumeration; 1 runs serially.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SemanticsArg {
    Universal,
    CyclicBest,
    Both,
}

impl SemanticsArg {
    fn list(self) -> Vec<Semantics> {
        match self {
            SemanticsArg::Universal => vec![Semantics::Universal],
            SemanticsArg::CyclicBest => vec![Semantics::CyclicBest],
            SemanticsArg::Both => Semantics::BOTH.to_vec(),
        }
    }
}

enum Failure {
    Input(String),
    Breach(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Run = Result<(String, u8), Failure>;

impl Common {
    fn format(&self) -> OutputFormat {
        match self.format {
            FormatArg::Text => OutputFormat::Text,
            FormatArg::Json => OutputFormat::Json,
        }
    }

    fn execution(&self) -> Result<Execution, Failure> {
        match self.jobs {
            Some(0) => Err(Failure::Input("--jobs must be at least 1".into())),
            Some(1) => Ok(Execution::Serial),
            Some(n) => {
                set_threads(n);
                Ok(Execution::Parallel)
            }
            None => Ok(Execution::Parallel),
        }
    }

    fn input(&self) -> Result<&str, Failure> {
        self.input
            .as_deref()
            .ok_or_else(|| Failure::Input("an input file or example id is required".into()))
    }

    fn example(&self) -> Result<Option<(ExampleId, Params)>, Failure> {
        let input = self.input()?;
        if Path::new(input).exists() {
            return Ok(None);
        }
        let id: ExampleId = input
            .parse()
            .map_err(|_| Failure::Input(format!("`{input}` is neither a readable file nor an example id")))?;
        let mut params = Params::default();
        for p in &self.params {
            params.set(p)?;
        }
        Ok(Some((id, params)))
    }

    fn load(&self) -> Result<Instance, Failure> {
        if let Some((id, params)) = self.example()? {
            return Ok(generate(id, &params)?.instance);
        }
        let input = self.input()?;
        let text = std::fs::read_to_string(input)
            .map_err(|e| Failure::Input(format!("cannot read {input}: {e}")))?;
        let doc = parse_document(&text).map_err(|e| Failure::Input(format!("{input}: {e}")))?;
        let validation = doc.validate()?;
        if !validation.is_ok() {
            return Err(Failure::Input(format!("{input}: invalid metric\n{validation}")));
        }
        Ok(doc.instance()?)
    }
}

#[cfg(feature = "parallel")]
fn set_threads(n: usize) {
    // only the first call can configure the global pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
}

#[cfg(not(feature = "parallel"))]
fn set_threads(_: usize) {}

fn parse_class(id: &str) -> Result<ContractionClass, Failure> {
    id.parse()
        .map_err(|_| Failure::Input(format!("unknown class `{id}`")))
}

fn validate(common: &Common) -> Run {
    let format = common.format();
    if let Some((id, params)) = common.example()? {
        let inst = generate(id, &params)?.instance;
        let space = inst.space();
        let report = perimetric::space::validate_metric(space.labels(), &space.matrix())?;
        return Ok((report::render_validation(space.labels(), &report, format), OK));
    }
    let input = common.input()?;
    let text = std::fs::read_to_string(input)
        .map_err(|e| Failure::Input(format!("cannot read {input}: {e}")))?;
    let doc = parse_document(&text).map_err(|e| Failure::Input(format!("{input}: {e}")))?;
    let report = doc.validate()?;
    let out = report::render_validation(&doc.labels, &report, format);
    if !report.is_ok() {
        return Ok((out, INPUT_ERROR));
    }
    doc.instance()?;
    Ok((out, OK))
}

fn certify(common: &Common, class: &str, semantics: SemanticsArg) -> Run {
    let inst = common.load()?;
    let execution = common.execution()?;
    let classes = if class == "all" {
        ContractionClass::ALL
            .into_iter()
            .filter(|c| c.arity() <= inst.len())
            .collect()
    } else {
        vec![parse_class(class)?]
    };
    let mut reports: Vec<CertificationReport> = Vec::new();
    for c in classes {
        for s in semantics.list() {
            reports.push(certify_with(c, &inst, s, execution)?);
        }
    }
    let negative = reports.iter().any(|r| r.verdict == Verdict::NotMember);
    Ok((
        report::render_certifications(&inst, &reports, common.format()),
        if negative { NEGATIVE } else { OK },
    ))
}

fn dynamics(common: &Common, max_period: usize) -> Run {
    let inst = common.load()?;
    let d = analyze_dynamics(&inst, max_period)?;
    let code = if d.fixed_points.is_empty() { NEGATIVE } else { OK };
    Ok((report::render_dynamics(&inst, &d, common.format()), code))
}

fn iterate(
    common: &Common,
    start: Option<&str>,
    tol: &str,
    budget: usize,
    class: Option<&str>,
    semantics: SemanticsArg,
) -> Run {
    let inst = common.load()?;
    let tol = parse_rational(tol).map_err(|e| Failure::Input(format!("bad --tol: {e}")))?;
    let start = match start {
        None => Start::Point(perimetric::PointId(0)),
        Some(s) => match inst.point(s) {
            Ok(p) => Start::Point(p),
            Err(_) => Start::Coord(
                parse_rational(s)
                    .map_err(|_| Failure::Input(format!("`{s}` is neither a label nor a coordinate")))?,
            ),
        },
    };
    let mut trace = picard_iterate(&inst, start, &tol, budget)?;
    if let Some(class) = class {
        let class = parse_class(class)?;
        let semantics = match semantics {
            SemanticsArg::CyclicBest => Semantics::CyclicBest,
            _ => Semantics::Universal,
        };
        let rep = certify_with(class, &inst, semantics, common.execution()?)?;
        if !rep.is_member() {
            return Err(Failure::Input(format!(
                "no bound: {class} constant under {semantics} is {}, not below {}",
                rep.constant, rep.threshold
            )));
        }
        let constant = rep.constant.finite().cloned().expect("members are finite");
        trace.attach_bounds(class, &constant)?;
    }
    Ok((report::render_trace(&inst, &trace, common.format()), OK))
}

fn inclusions(common: &Common) -> Run {
    let inst = common.load()?;
    let rows = check_inclusions_with(&inst, common.execution()?)?;
    let out = report::render_inclusions(&rows, common.format());
    if let Some(bad) = rows.iter().find(|r| !r.consistent) {
        return Err(Failure::Breach(format!("{out}inclusion {} is inconsistent", bad.id)));
    }
    Ok((out, OK))
}

fn example(common: &Common) -> Run {
    let (id, params) = common
        .example()?
        .ok_or_else(|| Failure::Input("example expects an example id".into()))?;
    let g = generate(id, &params)?;
    let execution = common.execution()?;
    let outcomes = g
        .expectations
        .iter()
        .map(|e| e.check(&g.instance, execution))
        .collect::<Result<Vec<_>, _>>()?;
    let out = report::render_example(&g, &outcomes, common.format());
    let code = if outcomes.iter().all(|o| o.holds) { OK } else { BREACH };
    Ok((out, code))
}

fn parse_sizes(points: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::Input(format!("bad --points `{points}`"));
    let (lo, hi) = match points.split_once("..=") {
        Some((lo, hi)) => (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?),
        None => {
            let n = points.trim().parse().map_err(|_| bad())?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

fn verdict(common: &Common, fuzz: bool, seed: u64, attempts: usize, points: &str) -> Run {
    if fuzz {
        let summary = fuzz_theorems(seed, parse_sizes(points)?, attempts)?;
        let out = report::render_fuzz(&summary, common.format());
        return Ok((out, if summary.clean() { OK } else { BREACH }));
    }
    let inst = common.load()?;
    let checks = theorem_verdict_with(&inst, common.execution()?)?;
    let out = report::render_theorems(&checks, common.format());
    let code = if checks.iter().any(|c| c.outcome == Outcome::Counterexample) {
        BREACH
    } else if checks.iter().all(|c| !c.member) {
        NEGATIVE
    } else {
        OK
    };
    Ok((out, code))
}

fn run(cli: Cli) -> Run {
    match &cli.command {
        Command::Validate(common) => validate(common),
        Command::Certify {
            common,
            class,
            semantics,
        } => certify(common, class, *semantics),
        Command::Dynamics { common, max_period } => dynamics(common, *max_period),
        Command::Iterate {
            common,
            start,
            tol,
            budget,
            class,
            semantics,
        } => iterate(common, start.as_deref(), tol, *budget, class.as_deref(), *semantics),
        Command::Inclusions(common) => inclusions(common),
        Command::Example(common) => example(common),
        Command::Verdict {
            common,
            fuzz,
            seed,
            attempts,
            points,
        } => verdict(common, *fuzz, *seed, *attempts, points),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(INPUT_ERROR)
        }
        Err(Failure::Breach(msg)) => {
            eprintln!("invariant breach: {msg}");
            ExitCode::from(BREACH)
        }
    }
}
