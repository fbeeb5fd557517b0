use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use mostset_core::automata::{density_language_membership, majority_product, DEFAULT_MAX_STATES};
use mostset_core::collections::{
    acceptance_prefix, most_intersect_estimated, most_intersect_finite, most_intersect_indexed,
    IndexedFamily,
};
use mostset_core::density::{
    most, most_of_naturals, most_sim, partial_density, EstimatorPolicy, EventuallyPeriodicSet,
};
use mostset_core::hypergraph::InfiniteHypergraph;
use mostset_core::Element;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::format::{
    density_to_value, dfa_to_value, element_to_value, parse_collection, parse_dfas, parse_element,
    parse_family, parse_hypergraph, parse_ratio, ratio_to_value, set_from_value, set_to_value,
    FamilyFile,
};
use crate::report::{Format, Report};
use crate::selftest;

type Result<T> = std::result::Result<T, CliError>;

pub const MAX_STATES_VAR: &str = "MOSTSET_MAX_STATES";

const DEFAULT_ACCEPTANCE_N: u64 = 32;
const DEFAULT_ESTIMATE_N: u64 = 1000;

#[derive(Debug, Parser)]
#[command(
    name = "mostset",
    version,
    about = "Most-intersections, densities and majority automata"
)]
#[command(arg_required_else_help = true)]
pub struct Cli {
    /// Run the bundled examples and compare against their expected output.
    #[arg(long)]
    pub selftest: bool,

    /// Output format used by --selftest.
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact density of an eventually periodic set.
    Density(Inputs),
    /// Whether a set holds most of a universe (ℕ by default).
    Most(Inputs),
    /// Whether two sets agree on Most.
    Mostsim(Inputs),
    /// Most-intersection of a finite collection or an indexed family.
    IntersectMost(Inputs),
    /// Acceptance bits of one element along a family.
    Acceptance(Inputs),
    /// Density language of automata, or membership in one.
    DensityLanguage(Inputs),
    /// Average state of a hypergraph.
    AverageState(Inputs),
    /// Partial-density estimates.
    Estimate(Inputs),
}

#[derive(Debug, Args)]
pub struct Inputs {
    /// Input file; same as --input.
    #[arg(value_name = "FILE")]
    pub file: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Inline eventually periodic set as JSON. Repeatable.
    #[arg(long = "set", value_name = "JSON")]
    pub sets: Vec<String>,
    #[arg(long, value_name = "FILE")]
    pub family: Option<PathBuf>,
    #[arg(long, value_name = "FILE", num_args = 1..)]
    pub dfas: Vec<PathBuf>,
    #[arg(long, value_name = "N")]
    pub n: Option<u64>,
    #[arg(long, value_name = "P/Q")]
    pub tol: Option<String>,
    #[arg(long)]
    pub element: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Also run --selftest (accepted anywhere on the command line).
    #[arg(long)]
    pub selftest: bool,
}

/// Where input files come from.
pub trait Source {
    fn read(&self, path: &Path) -> Result<String>;
}

pub struct FileSystem;

impl Source for FileSystem {
    fn read(&self, path: &Path) -> Result<String> {
        std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}

/// Everything an invocation produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one invocation. `argv` includes the program name; `max_states` is
/// the raw value of `MOSTSET_MAX_STATES`, if set.
pub fn run<I, T>(argv: I, source: &dyn Source, max_states: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let rendered = err.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    match execute(&cli, source, max_states) {
        Ok((report, format, code)) => Outcome {
            code,
            stdout: report.emit(format),
            stderr: String::new(),
        },
        Err(err) => Outcome {
            code: err.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        },
    }
}

fn execute(
    cli: &Cli,
    source: &dyn Source,
    max_states: Option<&str>,
) -> Result<(Report, Format, i32)> {
    let max_states = match max_states {
        None => DEFAULT_MAX_STATES,
        Some(raw) => raw
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&m| m > 0)
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "{MAX_STATES_VAR}={raw:?} is not a positive integer"
                ))
            })?,
    };
    let sub_selftest = matches!(&cli.command, Some(c) if c.inputs().selftest);
    if cli.selftest || sub_selftest {
        let format = cli
            .command
            .as_ref()
            .map_or(cli.format, |c| c.inputs().format);
        let (report, ok) = selftest::run_all(max_states);
        return Ok((report, format, if ok { 0 } else { 1 }));
    }
    let command = cli
        .command
        .as_ref()
        .ok_or_else(|| CliError::Usage("a subcommand is required".into()))?;
    let ctx = Context { source, max_states };
    let inputs = command.inputs();
    let report = match command {
        Command::Density(i) => ctx.density(i),
        Command::Most(i) => ctx.most(i),
        Command::Mostsim(i) => ctx.mostsim(i),
        Command::IntersectMost(i) => ctx.intersect_most(i),
        Command::Acceptance(i) => ctx.acceptance(i),
        Command::DensityLanguage(i) => ctx.density_language(i),
        Command::AverageState(i) => ctx.average_state(i),
        Command::Estimate(i) => ctx.estimate(i),
    }?;
    Ok((report, inputs.format, 0))
}

impl Command {
    fn inputs(&self) -> &Inputs {
        match self {
            Command::Density(i)
            | Command::Most(i)
            | Command::Mostsim(i)
            | Command::IntersectMost(i)
            | Command::Acceptance(i)
            | Command::DensityLanguage(i)
            | Command::AverageState(i)
            | Command::Estimate(i) => i,
        }
    }
}

trait ToJson {
    fn to_json(&self) -> Value;
}

impl ToJson for Element {
    fn to_json(&self) -> Value {
        element_to_value(self)
    }
}

impl ToJson for String {
    fn to_json(&self) -> Value {
        Value::String(self.clone())
    }
}

fn list<'a, T: ToJson + 'a>(items: impl IntoIterator<Item = &'a T>) -> Value {
    Value::Array(items.into_iter().map(ToJson::to_json).collect())
}

struct Context<'a> {
    source: &'a dyn Source,
    max_states: usize,
}

impl Context<'_> {
    fn input_path<'i>(&self, inputs: &'i Inputs) -> Result<Option<&'i Path>> {
        match (&inputs.file, &inputs.input) {
            (Some(_), Some(_)) => Err(CliError::Usage("give the input file once".into())),
            (Some(p), None) | (None, Some(p)) => Ok(Some(p)),
            (None, None) => Ok(None),
        }
    }

    fn require_input(&self, inputs: &Inputs, what: &str) -> Result<String> {
        let path = self
            .input_path(inputs)?
            .ok_or_else(|| CliError::Usage(format!("{what} needs --input FILE")))?;
        self.source.read(path)
    }

    /// Sets from `--set` flags followed by those in the input file, which
    /// holds one set or an array of them.
    fn sets(&self, inputs: &Inputs) -> Result<Vec<EventuallyPeriodicSet>> {
        let mut out = inputs
            .sets
            .iter()
            .map(|s| crate::format::parse_set(s))
            .collect::<Result<Vec<_>>>()?;
        if let Some(path) = self.input_path(inputs)? {
            let text = self.source.read(path)?;
            let value: Value = serde_json::from_str(&text)
                .map_err(|e| CliError::Parse(format!("malformed set file: {e}")))?;
            match &value {
                Value::Array(items) => {
                    for item in items {
                        out.push(set_from_value(item)?);
                    }
                }
                _ => out.push(set_from_value(&value)?),
            }
        }
        Ok(out)
    }

    fn sets_exactly<const K: usize>(
        &self,
        inputs: &Inputs,
        what: &str,
    ) -> Result<[EventuallyPeriodicSet; K]> {
        let sets = self.sets(inputs)?;
        let found = sets.len();
        sets.try_into()
            .map_err(|_| CliError::Usage(format!("{what} takes {K} set(s), got {found}")))
    }

    fn family(&self, inputs: &Inputs) -> Result<Option<FamilyFile>> {
        match &inputs.family {
            Some(path) => Ok(Some(parse_family(&self.source.read(path)?)?)),
            None => Ok(None),
        }
    }

    fn require_family(&self, inputs: &Inputs, what: &str) -> Result<FamilyFile> {
        self.family(inputs)?
            .ok_or_else(|| CliError::Usage(format!("{what} needs --family FILE")))
    }

    fn policy(&self, inputs: &Inputs) -> Result<EstimatorPolicy> {
        let mut policy = EstimatorPolicy::default();
        if let Some(tol) = &inputs.tol {
            policy.tolerance = parse_ratio(tol)?;
        }
        Ok(policy)
    }

    fn n(&self, inputs: &Inputs, default: u64) -> Result<u64> {
        match inputs.n {
            Some(0) => Err(CliError::Usage("--n must be at least 1".into())),
            Some(n) => Ok(n),
            None => Ok(default),
        }
    }

    fn density(&self, inputs: &Inputs) -> Result<Report> {
        let [set] = self.sets_exactly::<1>(inputs, "density")?;
        let d = set.density();
        Ok(Report::new().with("num", d.numer()).with("den", d.denom()))
    }

    fn most(&self, inputs: &Inputs) -> Result<Report> {
        let (universe, set) = match self.sets(inputs)?.as_slice() {
            [a] => (EventuallyPeriodicSet::naturals(), a.clone()),
            [u, a] => (u.clone(), a.clone()),
            other => {
                return Err(CliError::Usage(format!(
                    "most takes a set, or a universe and a set; got {} sets",
                    other.len()
                )))
            }
        };
        let verdict = most(&universe, &set)?;
        Ok(Report::new()
            .with("most", verdict)
            .with(
                "inside",
                density_to_value(universe.intersect(&set).density()),
            )
            .with(
                "outside",
                density_to_value(universe.difference(&set).density()),
            ))
    }

    fn mostsim(&self, inputs: &Inputs) -> Result<Report> {
        let [a, b] = self.sets_exactly::<2>(inputs, "mostsim")?;
        Ok(Report::new()
            .with("mostsim", most_sim(&a, &b))
            .with("most", json!([most_of_naturals(&a), most_of_naturals(&b)])))
    }

    fn intersect_most(&self, inputs: &Inputs) -> Result<Report> {
        if let Some(family) = self.family(inputs)? {
            return match family {
                FamilyFile::Sets(f) => exact_most(&f),
                FamilyFile::Languages(f) => exact_most(&f),
            };
        }
        let sets = parse_collection(&self.require_input(inputs, "intersect-most")?)?;
        let result = most_intersect_finite(&sets)?;
        Ok(Report::new().with("result", list(&result)))
    }

    fn acceptance(&self, inputs: &Inputs) -> Result<Report> {
        let family = self.require_family(inputs, "acceptance")?;
        let raw = inputs
            .element
            .as_deref()
            .ok_or_else(|| CliError::Usage("acceptance needs --element".into()))?;
        let n = self.n(inputs, DEFAULT_ACCEPTANCE_N)?;
        Ok(match family {
            FamilyFile::Sets(f) => acceptance_report(&f, parse_element(raw)?, n),
            FamilyFile::Languages(f) => acceptance_report(&f, raw.to_string(), n),
        })
    }

    fn density_language(&self, inputs: &Inputs) -> Result<Report> {
        if let Some(family) = self.family(inputs)? {
            let FamilyFile::Languages(f) = family else {
                return Err(CliError::Usage(
                    "density-language needs a language family".into(),
                ));
            };
            let Some(word) = inputs.element.as_deref() else {
                return exact_most(&f);
            };
            let m = density_language_membership(&f, word)?;
            return Ok(Report::new()
                .with("element", word)
                .with("member", m.member)
                .with("density", density_to_value(m.density))
                .with("certificate", set_to_value(&m.certificate)));
        }
        if inputs.dfas.is_empty() {
            return Err(CliError::Usage(
                "density-language needs --dfas FILE... or --family FILE".into(),
            ));
        }
        let mut dfas = Vec::new();
        for path in &inputs.dfas {
            dfas.extend(parse_dfas(&self.source.read(path)?)?);
        }
        let dfa = majority_product(&dfas, self.max_states)?;
        let Value::Object(fields) = dfa_to_value(&dfa) else {
            unreachable!("DFA encodes as an object")
        };
        let mut report = Report::new();
        for (k, v) in fields {
            report = report.with(&k, v);
        }
        if let Some(word) = &inputs.element {
            report = report.with("member", dfa.accepts(word)?);
        }
        Ok(report)
    }

    fn average_state(&self, inputs: &Inputs) -> Result<Report> {
        if let Some(family) = self.family(inputs)? {
            return match family {
                FamilyFile::Sets(f) => infinite_average(f),
                FamilyFile::Languages(f) => infinite_average(f),
            };
        }
        let h = parse_hypergraph(&self.require_input(inputs, "average-state")?)?;
        let avg = h.average_state();
        Ok(Report::new()
            .with("result", list(&avg))
            .with("balanced", avg.is_empty())
            .with("order", h.order())
            .with("size", h.size()))
    }

    fn estimate(&self, inputs: &Inputs) -> Result<Report> {
        let n = self.n(inputs, DEFAULT_ESTIMATE_N)?;
        let policy = self.policy(inputs)?;
        let provenance = json!({
            "mode": "estimated",
            "n": n,
            "window": policy.window,
            "tol": ratio_to_value(policy.tolerance),
        });
        if let Some(family) = self.family(inputs)? {
            let report = match family {
                FamilyFile::Sets(f) => estimated_most(&f, n, &policy),
                FamilyFile::Languages(f) => estimated_most(&f, n, &policy),
            };
            return Ok(report.with("provenance", provenance));
        }
        let [set] = self.sets_exactly::<1>(inputs, "estimate")?;
        let est = partial_density(|i| set.member(i), n, &policy);
        Ok(Report::new()
            .with("partial", ratio_to_value(est.partial_value))
            .with("converged", est.converged)
            .with("oscillation", ratio_to_value(est.oscillation))
            .with("provenance", provenance))
    }
}

fn density_list<T: ToJson>(
    items: impl IntoIterator<Item = (T, mostset_core::density::Density)>,
) -> Value {
    Value::Array(
        items
            .into_iter()
            .map(|(e, d)| json!({"element": e.to_json(), "num": d.numer(), "den": d.denom()}))
            .collect(),
    )
}

fn exact_most<F>(family: &F) -> Result<Report>
where
    F: IndexedFamily,
    F::Element: ToJson,
{
    let result = most_intersect_indexed(family)?;
    Ok(Report::new()
        .with("result", list(result.keys()))
        .with("densities", density_list(result)))
}

fn infinite_average<F>(family: F) -> Result<Report>
where
    F: IndexedFamily,
    F::Element: ToJson,
{
    let candidates = family.candidates();
    let h = InfiniteHypergraph::new(family);
    let avg = h.average_state(candidates)?;
    Ok(Report::new()
        .with("result", list(avg.keys()))
        .with("balanced", avg.is_empty())
        .with("densities", density_list(avg)))
}

fn acceptance_report<F>(family: &F, element: F::Element, n: u64) -> Report
where
    F: IndexedFamily,
    F::Element: ToJson,
{
    let bits: Vec<u8> = acceptance_prefix(family, &element, n)
        .into_iter()
        .map(u8::from)
        .collect();
    let certificate = family
        .certificate(&element)
        .map_or(Value::Null, |c| set_to_value(&c));
    Report::new()
        .with("element", element.to_json())
        .with("n", n)
        .with("bits", bits)
        .with("certificate", certificate)
}

fn estimated_most<F>(family: &F, n: u64, policy: &EstimatorPolicy) -> Report
where
    F: IndexedFamily,
    F::Element: ToJson,
{
    let est = most_intersect_estimated(family, n, policy);
    let estimates: Vec<Value> = est
        .estimates
        .iter()
        .map(|(e, x)| {
            json!({
                "element": e.to_json(),
                "partial": ratio_to_value(x.partial_value),
                "converged": x.converged,
                "oscillation": ratio_to_value(x.oscillation),
            })
        })
        .collect();
    Report::new()
        .with("result", list(&est.members))
        .with("estimates", estimates)
}
