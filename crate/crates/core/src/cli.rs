//! Command-line front end for the `ksq` binary.
//!
//! Exit codes: 0 on success, 1 when `jqd minimize` finds no signed
//! distribution over the requested support, 2 on any input error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::assignments::{ks_colorability, Colorability};
use crate::catalog::{self, CatalogEntry};
use crate::distributions::{
    construct_jqd, context_marginals, negativity, negativity_l1, verify_observable_completeness,
    verify_observable_exclusivity, AnyDistribution, DistributionDocument, EventProbabilities,
    QuasiDistribution,
};
use crate::error::{Error, Result};
use crate::inequality::evaluate_inequality;
use crate::io::ScenarioFile;
use crate::optimize::{min_negativity_jqd, support_for, MarginalConstraintSet, SupportClass};
use crate::quantum::{born_probabilities, projector_from_vector, ComplexVector, QuantumState};
use crate::scalar::{parse_rational, Scalar};
use crate::scenario::{augment_scenario, Scenario};

#[derive(Debug, Parser)]
#[command(name = "ksq", version, about = "Contextuality scenarios, KS colorability and quasiprobability analysis")]
pub struct Cli {
    /// Emit a single JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Load the scenario from a JSON file.
    #[arg(long, global = true, conflicts_with = "catalog")]
    pub file: Option<PathBuf>,

    /// Use a built-in scenario (kcbs, specker, cabello18).
    #[arg(long, global = true)]
    pub catalog: Option<String>,

    /// Write the command's artifact (distribution, LP solution or scenario).
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Built-in scenarios.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Decide whether exclusive and complete assignments exist.
    CheckKs,
    /// Joint quasiprobability distributions.
    Jqd {
        #[command(subcommand)]
        action: JqdAction,
    },
    /// Context marginals of a distribution.
    Marginals(ProbabilitySource),
    /// Evaluate a linear noncontextuality inequality.
    Inequality {
        /// Comma-separated coefficients, one per event (default all 1).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Option<Vec<String>>,
        /// Bound to compare against the computed classical bound.
        #[arg(long, allow_hyphen_values = true)]
        bound: Option<String>,
        #[command(flatten)]
        source: ProbabilitySource,
    },
    /// Erase completeness and close the scenario with a null event.
    Augment,
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
}

#[derive(Debug, Subcommand)]
pub enum JqdAction {
    /// Build the relaxed-completeness distribution over ω₀..ω_N.
    Construct(ProbabilitySource),
    /// Minimal-negativity distribution matching the same marginals.
    Minimize {
        #[arg(long, value_enum, default_value_t = SupportArg::Exclusive)]
        support: SupportArg,
        #[command(flatten)]
        source: ProbabilitySource,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SupportArg {
    Exclusive,
    Full,
}

#[derive(Debug, Args, Default)]
pub struct ProbabilitySource {
    /// maxmixed, symmetric, basis, or a density-matrix JSON file.
    #[arg(long, conflicts_with_all = ["probs", "dist"])]
    pub state: Option<String>,
    /// Comma-separated event probabilities, e.g. 1/3,0.25,...
    #[arg(long, value_delimiter = ',', conflicts_with = "dist")]
    pub probs: Option<Vec<String>>,
    /// A distribution file in the export format.
    #[arg(long)]
    pub dist: Option<PathBuf>,
}

/// The JSON report every command produces.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<ScenarioSummary>,
    pub result: Value,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSummary {
    pub name: String,
    pub events: usize,
    pub contexts: usize,
    pub complete: usize,
}

impl ScenarioSummary {
    fn of(s: &Scenario) -> Self {
        ScenarioSummary {
            name: s.name().to_string(),
            events: s.event_count(),
            contexts: s.contexts().len(),
            complete: s.complete_count(),
        }
    }
}

struct Outcome {
    report: Report,
    text: String,
    exit: i32,
}

enum CliError {
    Input(Error),
    Negative(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Input(e)
    }
}

pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let (code, stdout, stderr) = run(&cli);
    // a closed pipe on stdout is not worth a panic
    if !stdout.is_empty() {
        let _ = writeln!(std::io::stdout(), "{stdout}");
    }
    if !stderr.is_empty() {
        let _ = writeln!(std::io::stderr(), "{stderr}");
    }
    code
}

/// Runs a parsed command; returns exit code, stdout and stderr text.
pub fn run(cli: &Cli) -> (i32, String, String) {
    let name = command_name(&cli.command);
    match dispatch(cli) {
        Ok(out) => {
            let stdout = if cli.json {
                serde_json::to_string_pretty(&out.report).expect("reports serialize")
            } else {
                out.text
            };
            (out.exit, stdout, String::new())
        }
        Err(err) => {
            let (code, e) = match err {
                CliError::Input(e) => (2, e),
                CliError::Negative(e) => (1, e),
            };
            let stdout = if cli.json {
                serde_json::to_string_pretty(&json!({"command": name, "error": e.to_string()}))
                    .expect("reports serialize")
            } else {
                String::new()
            };
            (code, stdout, format!("error: {e}"))
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Catalog { .. } => "catalog list",
        Command::CheckKs => "check-ks",
        Command::Jqd { action: JqdAction::Construct(_) } => "jqd construct",
        Command::Jqd { action: JqdAction::Minimize { .. } } => "jqd minimize",
        Command::Marginals(_) => "marginals",
        Command::Inequality { .. } => "inequality",
        Command::Augment => "augment",
    }
}

fn dispatch(cli: &Cli) -> std::result::Result<Outcome, CliError> {
    match &cli.command {
        Command::Catalog { action: CatalogAction::List } => Ok(catalog_list()),
        Command::CheckKs => check_ks(&load(cli)?),
        Command::Jqd { action: JqdAction::Construct(src) } => jqd_construct(cli, &load(cli)?, src),
        Command::Jqd { action: JqdAction::Minimize { support, source } } => {
            jqd_minimize(cli, &load(cli)?, source, *support)
        }
        Command::Marginals(src) => marginals(&load(cli)?, src),
        Command::Inequality { coeffs, bound, source } => {
            inequality(&load(cli)?, coeffs.as_deref(), bound.as_deref(), source)
        }
        Command::Augment => augment(cli, &load(cli)?),
    }
}

/// A scenario with whatever realization and named states came with it.
struct Loaded {
    scenario: Arc<Scenario>,
    vectors: Option<Vec<ComplexVector>>,
    entry: Option<CatalogEntry>,
}

fn load(cli: &Cli) -> Result<Loaded> {
    match (&cli.file, &cli.catalog) {
        (Some(path), _) => {
            let (scenario, vectors) = ScenarioFile::read(path)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
                .into_parts();
            Ok(Loaded {
                scenario,
                vectors,
                entry: None,
            })
        }
        (None, Some(name)) => {
            let entry = catalog::lookup(name)?;
            Ok(Loaded {
                scenario: Arc::clone(&entry.scenario),
                vectors: entry.vectors.clone(),
                entry: Some(entry),
            })
        }
        (None, None) => Err(Error::Parse("a scenario is required: pass --file or --catalog".into())),
    }
}

fn report(command: &str, s: Option<&Scenario>, result: Value, warnings: Vec<String>) -> Report {
    Report {
        command: command.to_string(),
        scenario: s.map(ScenarioSummary::of),
        result,
        warnings,
    }
}

fn catalog_list() -> Outcome {
    let entries: Vec<CatalogEntry> = catalog::catalog();
    let mut text = String::new();
    let mut rows = Vec::new();
    for e in &entries {
        let s = &e.scenario;
        text += &format!(
            "{}: N={}, contexts={}, complete={}\n",
            s.name(),
            s.event_count(),
            s.contexts().len(),
            s.complete_count()
        );
        rows.push(json!({
            "name": s.name(),
            "events": s.event_count(),
            "contexts": s.contexts().len(),
            "complete": s.complete_count(),
            "dimension": e.dimension(),
            "states": e.states.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>(),
        }));
    }
    Outcome {
        report: report("catalog list", None, Value::Array(rows), Vec::new()),
        text: text.trim_end().to_string(),
        exit: 0,
    }
}

fn check_ks(loaded: &Loaded) -> std::result::Result<Outcome, CliError> {
    let s = &loaded.scenario;
    let r = ks_colorability(s)?;
    let (verdict, witness) = match &r.result {
        Colorability::Sat(w) => ("SAT", Some(w.to_string())),
        Colorability::Unsat => ("UNSAT", None),
    };
    let mut text = format!("{}: {verdict}", s.name());
    if let Some(w) = &witness {
        text += &format!("\nwitness: {w}");
    }
    text += &format!("\nnodes visited: {}", r.nodes_visited);
    Ok(Outcome {
        report: report(
            "check-ks",
            Some(s),
            json!({"result": verdict, "witness": witness, "nodes_visited": r.nodes_visited}),
            Vec::new(),
        ),
        text,
        exit: 0,
    })
}

enum Probs {
    Rational(EventProbabilities<BigRational>),
    Float(EventProbabilities<f64>),
}

fn parse_probs(list: &[String]) -> Result<EventProbabilities<BigRational>> {
    EventProbabilities::new(list.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>()?)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum DensityFile {
    Wrapped { rho: Vec<Vec<[f64; 2]>> },
    Bare(Vec<Vec<[f64; 2]>>),
}

fn resolve_state(loaded: &Loaded, name: &str, d: usize) -> Result<QuantumState> {
    match name {
        "maxmixed" => Ok(QuantumState::maximally_mixed(d)),
        "basis" => {
            let mut e = vec![0.0; d];
            e[0] = 1.0;
            Ok(QuantumState::pure(&ComplexVector::real(&e)?))
        }
        _ => {
            if let Some(state) = loaded.entry.as_ref().and_then(|e| e.state(name)) {
                return Ok(state.clone());
            }
            let path = Path::new(name);
            if !path.exists() {
                return Err(Error::Parse(format!(
                    "unknown state {name:?}: expected maxmixed, basis, a named catalog state, or a density-matrix file"
                )));
            }
            let rows = match serde_json::from_str::<DensityFile>(&std::fs::read_to_string(path)?)? {
                DensityFile::Wrapped { rho } | DensityFile::Bare(rho) => rho,
            };
            QuantumState::from_rows(&rows)
        }
    }
}

fn state_probabilities(loaded: &Loaded, name: &str, warnings: &mut Vec<String>) -> Result<Probs> {
    let vectors = loaded.vectors.as_ref().ok_or_else(|| {
        Error::InvalidQuantum(format!(
            "scenario {:?} has no vectors; use --probs instead of --state",
            loaded.scenario.name()
        ))
    })?;
    let d = vectors[0].dim();
    let state = resolve_state(loaded, name, d)?;
    if state.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: state.dim(),
        });
    }
    let projectors: Vec<_> = vectors.iter().map(projector_from_vector).collect();
    let p = born_probabilities(&state, &projectors)?;
    Ok(match p.rationalize() {
        Some(exact) => {
            warnings.push("Born probabilities recovered as exact rationals".into());
            Probs::Rational(exact)
        }
        None => Probs::Float(p),
    })
}

fn resolve_probs(loaded: &Loaded, src: &ProbabilitySource, warnings: &mut Vec<String>) -> Result<Probs> {
    let p = match (&src.probs, &src.state) {
        (Some(list), _) => Probs::Rational(parse_probs(list)?),
        (None, Some(state)) => state_probabilities(loaded, state, warnings)?,
        (None, None) => {
            return Err(Error::Parse("pass --state or --probs".into()));
        }
    };
    let n = match &p {
        Probs::Rational(p) => p.len(),
        Probs::Float(p) => p.len(),
    };
    if n != loaded.scenario.event_count() {
        return Err(Error::LengthMismatch {
            expected: loaded.scenario.event_count(),
            found: n,
        });
    }
    Ok(p)
}

fn read_distribution(path: &Path, s: &Arc<Scenario>) -> Result<AnyDistribution> {
    let doc: DistributionDocument = serde_json::from_str(&std::fs::read_to_string(path)?)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    AnyDistribution::from_document(&doc, Arc::clone(s))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    std::fs::write(path, serde_json::to_string_pretty(value)? + "\n")?;
    Ok(())
}

fn marginal_json<T: Scalar>(table: &crate::distributions::MarginalTable<T>) -> Value {
    let map: serde_json::Map<String, Value> = table.entries().map(|(k, w)| (k, w.to_json())).collect();
    Value::Object(map)
}

fn render_marginal<T: Scalar>(table: &crate::distributions::MarginalTable<T>) -> String {
    // wide contexts list only their nonzero outcomes
    let wide = table.members().len() > 2;
    table
        .entries()
        .filter(|(_, w)| !wide || !w.is_negligible())
        .map(|(k, w)| format!("{k}:{}", w.render()))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Marginal verification of a distribution, as JSON rows and text lines.
fn verification<T: Scalar>(q: &QuasiDistribution<T>) -> Result<(Value, String, bool)> {
    let s = q.scenario();
    let ex = verify_observable_exclusivity(q)?;
    let co = verify_observable_completeness(q)?;
    let tables = context_marginals(q)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut all_pass = true;
    for ((ctx, table), (e, c)) in s.contexts().iter().zip(&tables).zip(ex.iter().zip(&co)) {
        let nonneg = table.is_nonnegative();
        all_pass &= e.exclusive && c.passes && nonneg;
        rows.push(json!({
            "context": e.context,
            "members": ctx.members,
            "complete": ctx.complete,
            "marginal": marginal_json(table),
            "nonnegative": nonneg,
            "exclusive": e.exclusive,
            "none_weight": c.none_weight.to_json(),
            "completeness": c.passes,
        }));
        let labels: Vec<&str> = ctx.members.iter().map(|&i| s.events()[i].as_str()).collect();
        let mut line = format!(
            "  [{}]{} {}  exclusive={} none={}",
            labels.join(","),
            if ctx.complete { " (complete)" } else { "" },
            render_marginal(table),
            e.exclusive,
            c.none_weight.render(),
        );
        if ctx.complete {
            line += &format!(" completeness={}", c.passes);
        }
        text += &line;
        text.push('\n');
    }
    Ok((Value::Array(rows), text, all_pass))
}

fn construct_generic<T: Scalar>(
    cli: &Cli,
    s: &Arc<Scenario>,
    p: &EventProbabilities<T>,
    warnings: Vec<String>,
) -> Result<Outcome> {
    let q = construct_jqd(s, p)?;
    let null_weight = q.support()[0].1.clone();
    let neg = negativity(&q);
    let (contexts, vtext, all_pass) = verification(&q)?;
    if let Some(path) = &cli.output {
        write_json(path, &q.to_document())?;
    }
    let support: Vec<Value> = q
        .support()
        .iter()
        .map(|(a, w)| json!({"bits": a.to_string(), "weight": w.to_json()}))
        .collect();
    let mut text = format!("{} ({} mode)\nsupport:\n", s.name(), T::MODE);
    for (k, (a, w)) in q.support().iter().enumerate() {
        text += &format!("  ω{k} {a} {}\n", w.render());
    }
    text += &format!(
        "weight(ω0) = {}\nnegativity = {}\njpd = {}\nmarginals:\n{vtext}all marginal checks pass: {all_pass}",
        null_weight.render(),
        neg.render(),
        neg.is_negligible()
    );
    Ok(Outcome {
        report: report(
            "jqd construct",
            Some(s),
            json!({
                "mode": T::MODE,
                "support": support,
                "null_weight": null_weight.to_json(),
                "negativity": neg.to_json(),
                "negativity_l1": negativity_l1(&q).to_json(),
                "jpd": neg.is_negligible(),
                "contexts": contexts,
                "all_checks_pass": all_pass,
            }),
            warnings,
        ),
        text,
        exit: 0,
    })
}

fn jqd_construct(cli: &Cli, loaded: &Loaded, src: &ProbabilitySource) -> std::result::Result<Outcome, CliError> {
    if src.dist.is_some() {
        return Err(Error::Parse("jqd construct takes --state or --probs, not --dist".into()).into());
    }
    let mut warnings = Vec::new();
    let s = &loaded.scenario;
    Ok(match resolve_probs(loaded, src, &mut warnings)? {
        Probs::Rational(p) => construct_generic(cli, s, &p, warnings)?,
        Probs::Float(p) => construct_generic(cli, s, &p, warnings)?,
    })
}

fn minimize_generic<T: Scalar>(
    cli: &Cli,
    s: &Arc<Scenario>,
    targets: &MarginalConstraintSet<T>,
    construct_negativity: Option<T>,
    class: SupportArg,
    warnings: Vec<String>,
) -> std::result::Result<Outcome, CliError> {
    let support_class = match class {
        SupportArg::Exclusive => SupportClass::Exclusive,
        SupportArg::Full => SupportClass::Full,
    };
    let support = support_for(s, support_class)?;
    let sol = match min_negativity_jqd(s, targets, &support) {
        Ok(sol) => sol,
        Err(Error::Infeasible) => return Err(CliError::Negative(Error::Infeasible)),
        Err(e) => return Err(e.into()),
    };
    if let Some(path) = &cli.output {
        write_json(path, &sol.to_document(s.name()))?;
    }
    let class_name = match class {
        SupportArg::Exclusive => "exclusive",
        SupportArg::Full => "full",
    };
    let mut text = format!(
        "{} ({} mode, {} support of {} assignments)\nobjective (negative mass) = {}\njpd exists = {}\n",
        s.name(),
        T::MODE,
        class_name,
        support.len(),
        sol.objective.render(),
        sol.objective.is_negligible()
    );
    if let Some(c) = &construct_negativity {
        text += &format!("construction negativity = {}\n", c.render());
    }
    text += "weights:\n";
    for (a, w) in sol.support.iter().zip(&sol.weights) {
        if !w.is_negligible() {
            text += &format!("  {a} {}\n", w.render());
        }
    }
    let weights: Vec<Value> = sol
        .support
        .iter()
        .zip(&sol.weights)
        .map(|(a, w)| json!({"bits": a.to_string(), "weight": w.to_json()}))
        .collect();
    Ok(Outcome {
        report: report(
            "jqd minimize",
            Some(s),
            json!({
                "mode": T::MODE,
                "support_class": class_name,
                "support_size": support.len(),
                "status": sol.status,
                "objective": sol.objective.to_json(),
                "jpd": sol.objective.is_negligible(),
                "construct_negativity": construct_negativity.map(|c| c.to_json()),
                "weights": weights,
            }),
            warnings,
        ),
        text: text.trim_end().to_string(),
        exit: 0,
    })
}

fn default_distribution(loaded: &Loaded) -> Option<AnyDistribution> {
    match loaded.entry.as_ref()?.name() {
        catalog::SPECKER => Some(AnyDistribution::Rational(catalog::specker_jqd_fixture())),
        _ => None,
    }
}

fn distribution_source(loaded: &Loaded, src: &ProbabilitySource, warnings: &mut Vec<String>) -> Result<Option<AnyDistribution>> {
    if let Some(path) = &src.dist {
        return Ok(Some(read_distribution(path, &loaded.scenario)?));
    }
    if src.state.is_none() && src.probs.is_none() {
        if let Some(d) = default_distribution(loaded) {
            warnings.push("using the catalog's fixture distribution".into());
            return Ok(Some(d));
        }
    }
    Ok(None)
}

fn jqd_minimize(
    cli: &Cli,
    loaded: &Loaded,
    src: &ProbabilitySource,
    class: SupportArg,
) -> std::result::Result<Outcome, CliError> {
    let s = &loaded.scenario;
    let mut warnings = Vec::new();
    // the construction is a feasible point whenever its ω-support is available
    let omega_in_support = class == SupportArg::Full || s.contexts().iter().all(|c| c.len() >= 2);
    if let Some(dist) = distribution_source(loaded, src, &mut warnings)? {
        return match dist {
            AnyDistribution::Rational(q) => {
                let t = MarginalConstraintSet::from_distribution(&q)?;
                minimize_generic(cli, s, &t, None, class, warnings)
            }
            AnyDistribution::Float(q) => {
                let t = MarginalConstraintSet::from_distribution(&q)?;
                minimize_generic(cli, s, &t, None, class, warnings)
            }
        };
    }
    match resolve_probs(loaded, src, &mut warnings)? {
        Probs::Rational(p) => {
            let t = MarginalConstraintSet::from_event_probabilities(s, &p)?;
            let c = omega_in_support.then(|| negativity(&construct_jqd(s, &p).expect("length checked")));
            minimize_generic(cli, s, &t, c, class, warnings)
        }
        Probs::Float(p) => {
            let t = MarginalConstraintSet::from_event_probabilities(s, &p)?;
            let c = omega_in_support.then(|| negativity(&construct_jqd(s, &p).expect("length checked")));
            minimize_generic(cli, s, &t, c, class, warnings)
        }
    }
}

fn marginals_generic<T: Scalar>(q: &QuasiDistribution<T>, warnings: Vec<String>) -> Result<Outcome> {
    let (contexts, text, all_pass) = verification(q)?;
    Ok(Outcome {
        report: report(
            "marginals",
            Some(q.scenario()),
            json!({"mode": T::MODE, "contexts": contexts, "all_checks_pass": all_pass}),
            warnings,
        ),
        text: format!("{} ({} mode)\n{text}all marginal checks pass: {all_pass}", q.scenario().name(), T::MODE),
        exit: 0,
    })
}

fn marginals(loaded: &Loaded, src: &ProbabilitySource) -> std::result::Result<Outcome, CliError> {
    let s = &loaded.scenario;
    let mut warnings = Vec::new();
    if let Some(dist) = distribution_source(loaded, src, &mut warnings)? {
        return Ok(match dist {
            AnyDistribution::Rational(q) => marginals_generic(&q, warnings)?,
            AnyDistribution::Float(q) => marginals_generic(&q, warnings)?,
        });
    }
    warnings.push("marginals of the relaxed-completeness construction".into());
    Ok(match resolve_probs(loaded, src, &mut warnings)? {
        Probs::Rational(p) => marginals_generic(&construct_jqd(s, &p)?, warnings)?,
        Probs::Float(p) => marginals_generic(&construct_jqd(s, &p)?, warnings)?,
    })
}

fn inequality_generic<T: Scalar>(
    s: &Scenario,
    coeffs: &[T],
    stated: Option<T>,
    p: &EventProbabilities<T>,
    mut warnings: Vec<String>,
) -> Result<Outcome> {
    let r = evaluate_inequality(s, coeffs, p)?;
    if let Some(b) = &stated {
        if (r.classical_bound.clone() - b.clone()).sign().is_gt() {
            warnings.push(format!(
                "stated bound {} is below the classical bound {}",
                b.render(),
                r.classical_bound.render()
            ));
        }
    }
    let text = format!(
        "{}: value = {}, classical bound = {}{}\n{}",
        s.name(),
        r.value.render(),
        r.classical_bound.render(),
        stated.as_ref().map(|b| format!(", stated bound = {}", b.render())).unwrap_or_default(),
        if r.violated { "violation" } else { "no violation" }
    );
    Ok(Outcome {
        report: report(
            "inequality",
            Some(s),
            json!({
                "mode": T::MODE,
                "coefficients": coeffs.iter().map(Scalar::to_json).collect::<Vec<_>>(),
                "classical_bound": r.classical_bound.to_json(),
                "value": r.value.to_json(),
                "violated": r.violated,
                "stated_bound": stated.map(|b| b.to_json()),
            }),
            warnings,
        ),
        text,
        exit: 0,
    })
}

fn inequality(
    loaded: &Loaded,
    coeffs: Option<&[String]>,
    bound: Option<&str>,
    src: &ProbabilitySource,
) -> std::result::Result<Outcome, CliError> {
    let s = &loaded.scenario;
    let n = s.event_count();
    let coeffs: Vec<BigRational> = match coeffs {
        Some(list) => list.iter().map(|c| parse_rational(c)).collect::<Result<_>>()?,
        None => vec![<BigRational as Scalar>::one(); n],
    };
    if coeffs.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: coeffs.len(),
        }
        .into());
    }
    let bound = bound.map(parse_rational).transpose()?;
    let mut warnings = Vec::new();
    Ok(match resolve_probs(loaded, src, &mut warnings)? {
        Probs::Rational(p) => inequality_generic(s, &coeffs, bound, &p, warnings)?,
        Probs::Float(p) => {
            let c: Vec<f64> = coeffs.iter().map(Scalar::to_f64).collect();
            inequality_generic(s, &c, bound.map(|b| b.to_f64()), &p, warnings)?
        }
    })
}

fn augment(cli: &Cli, loaded: &Loaded) -> std::result::Result<Outcome, CliError> {
    let s = &loaded.scenario;
    let a = augment_scenario(s);
    // the null event has no ray, so vectors cannot be carried over
    let file = ScenarioFile::new(a.clone(), None)?;
    let mut warnings = Vec::new();
    if loaded.vectors.is_some() {
        warnings.push("vectors dropped: the null event has no quantum realization".into());
    }
    let text = match &cli.output {
        Some(path) => {
            file.write(path)?;
            format!(
                "{}: {} events, {} contexts, {} complete -> {}",
                a.name(),
                a.event_count(),
                a.contexts().len(),
                a.complete_count(),
                path.display()
            )
        }
        None => file.to_json(),
    };
    Ok(Outcome {
        report: report(
            "augment",
            Some(&a),
            json!({
                "output": cli.output.as_ref().map(|p| p.display().to_string()),
                "scenario": serde_json::to_value(&file).map_err(Error::from)?,
            }),
            warnings,
        ),
        text,
        exit: 0,
    })
}
