//! Command-line front end. All results are printed as JSON; forests and
//! move graphs can also be written as DOT.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::degeneration::{self, StopRule};
use crate::dual_graph::{self, CentralFiberGraph};
use crate::hurwitz::{self, MoveSet};
use crate::lattices::{self, HatOutcome, Lattice2};
use crate::monodromy::{self, HurwitzTuple, MonodromyError};
use crate::severi::SeveriState;
use crate::surfaces::{self, SurfaceModel};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "torus-severi", version, about = "Severi degenerations on E x P1 and covers of a torus")]
pub struct Cli {
    /// Worker threads for parallel enumerations.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degeneration terms of a hyperplane section of a state.
    Terms(TermsArgs),
    /// Iterated degeneration forest from one or more root states.
    Forest(ForestArgs),
    /// Dimension d+g-2+b, or the dimension of a state file.
    Dim(DimArgs),
    /// gamma = -(K+D).tau + b on a built-in surface.
    Gamma(GammaArgs),
    /// Genus bound p_a(X) + T <= g for a central-fiber graph.
    Genusbound(GenusboundArgs),
    /// Sublattices of Z^2.
    #[command(subcommand)]
    Lattice(LatticeCommand),
    /// Permutation monodromy of covers of a torus.
    #[command(subcommand)]
    Mono(MonoCommand),
    /// Hurwitz tuples and their orbits under branch-point moves.
    #[command(subcommand)]
    Hurwitz(HurwitzCommand),
}

#[derive(Debug, Args)]
pub struct TermsArgs {
    #[arg(long)]
    pub state: PathBuf,
    /// Use the enumerator for simple states V(a,b).
    #[arg(long, conflicts_with = "general")]
    pub simple: bool,
    /// Use the enumerator for normalized states (default).
    #[arg(long)]
    pub general: bool,
    /// Also compare the two enumerators on a simple state.
    #[arg(long)]
    pub compare: bool,
}

#[derive(Debug, Args)]
pub struct ForestArgs {
    #[arg(long = "root", required = true)]
    pub roots: Vec<PathBuf>,
    /// Do not expand nodes at or below this dimension.
    #[arg(long, default_value_t = 0)]
    pub floor: i64,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Write the forest as DOT to this path ("-" for stdout).
    #[arg(long)]
    pub dot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DimArgs {
    #[arg(long, conflicts_with_all = ["d", "g", "b"])]
    pub state: Option<PathBuf>,
    #[arg(long, requires_all = ["g", "b"])]
    pub d: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<i64>,
    #[arg(long)]
    pub b: Option<i64>,
}

#[derive(Debug, Args)]
pub struct GammaArgs {
    /// ExP1, P1xP1, P2, Bl_P1xP1 or Bl_P2.
    #[arg(long)]
    pub model: String,
    /// Divisor D as label=coef pairs, e.g. "e=1".
    #[arg(long, allow_hyphen_values = true)]
    pub divisor: String,
    /// Class tau as label=coef pairs, e.g. "f=3,e=2".
    #[arg(long, allow_hyphen_values = true)]
    pub tau: String,
    #[arg(long, default_value_t = 0)]
    pub b: i64,
    /// Genus used for the bound g-1+gamma.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub g: i64,
}

#[derive(Debug, Args)]
pub struct GenusboundArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub g: i64,
}

#[derive(Debug, Subcommand)]
pub enum LatticeCommand {
    /// Hermite and Smith forms of the lattice spanned by rows "a,b;c,d;...".
    Snf {
        #[arg(long, allow_hyphen_values = true)]
        rows: String,
    },
    /// All sublattices of index e.
    Sublattices {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        e: i64,
    },
    /// Build (Lhat, v) for a lattice and a degree D.
    Hat {
        #[arg(long, allow_hyphen_values = true)]
        rows: String,
        #[arg(long = "D")]
        big_d: i64,
    },
    /// Component counts for degree d covers.
    Counts {
        #[arg(long)]
        d: i64,
        /// Exclude d~ = d from the global pairs.
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum MonoCommand {
    /// Validity of a tuple file.
    Check(TupleArgs),
    /// Invariant lattice of a tuple.
    Lattice {
        #[command(flatten)]
        tuple: TupleArgs,
        /// Base sheet (1-based).
        #[arg(long, default_value_t = 1)]
        base: usize,
    },
    /// Factorization through the invariant lattice, with the kernel and
    /// block-pair checks.
    Factor(TupleArgs),
    /// Exhaustive verification over all valid tuples.
    Scan {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        b: usize,
    },
}

#[derive(Debug, Args)]
pub struct TupleArgs {
    #[arg(long)]
    pub tuple: PathBuf,
    #[arg(long, default_value_t = 10_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
}

#[derive(Debug, Subcommand)]
pub enum HurwitzCommand {
    /// Orbit count under braid, handle and conjugation moves.
    Orbits {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        g: i64,
        /// Write the move graph as DOT to this path ("-" for stdout).
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Number of tuples per invariant lattice.
    Census {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        g: i64,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain { invariant: String, message: String, violations: Vec<String> },
    Budget(String),
}

impl CliError {
    fn domain(invariant: &str, message: impl ToString) -> Self {
        CliError::Domain { invariant: invariant.to_string(), message: message.to_string(), violations: Vec::new() }
    }

    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain { .. } => EXIT_DOMAIN,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }
}

impl From<MonodromyError> for CliError {
    fn from(e: MonodromyError) -> Self {
        match &e {
            MonodromyError::Budget { .. } => CliError::Budget(e.to_string()),
            MonodromyError::InvalidTuple(v) => CliError::Domain {
                invariant: "tuple".into(),
                message: e.to_string(),
                violations: v.iter().map(|x| x.name().to_string()).collect(),
            },
            _ => CliError::domain(&error_name(&e.to_string()), &e),
        }
    }
}

impl From<hurwitz::HurwitzError> for CliError {
    fn from(e: hurwitz::HurwitzError) -> Self {
        match e {
            hurwitz::HurwitzError::Monodromy(m) => m.into(),
            other => CliError::domain(&error_name(&other.to_string()), &other),
        }
    }
}

impl From<degeneration::DegenerationError> for CliError {
    fn from(e: degeneration::DegenerationError) -> Self {
        let (invariant, violations) = match &e {
            degeneration::DegenerationError::State(s) => {
                ("invalid-state".to_string(), s.violations().iter().map(|v| v.name().to_string()).collect())
            }
            _ => (error_name(&e.to_string()), Vec::new()),
        };
        CliError::Domain { invariant, message: e.to_string(), violations }
    }
}

/// Error messages start with the invariant name followed by a colon.
fn error_name(message: &str) -> String {
    message.split(':').next().unwrap_or("error").trim().replace(' ', "-")
}

type Outcome = Result<(serde_json::Value, i32), CliError>;

/// Parses `args` (including the program name), runs the command, writes its
/// output to `out`, and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = write!(out, "{e}");
            return code;
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            let _ = writeln!(out, "{}", json!({"error": "usage", "message": "--threads must be positive"}));
            return EXIT_USAGE;
        }
        // Ignored if the global pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match dispatch(cli.command, out) {
        Ok((value, code)) => {
            if !value.is_null() {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("serializable"));
            }
            code
        }
        Err(e) => {
            let value = match &e {
                CliError::Usage(m) => json!({"error": "usage", "message": m}),
                CliError::Budget(m) => json!({"error": "budget", "message": m}),
                CliError::Domain { invariant, message, violations } => {
                    json!({"error": invariant, "message": message, "violations": violations})
                }
            };
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("serializable"));
            e.exit_code()
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable")
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    if path.as_os_str() == "-" {
        write!(out, "{text}").map_err(|e| CliError::Usage(e.to_string()))
    } else {
        std::fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }
}

fn parse_rows(s: &str) -> Result<Vec<(i64, i64)>, CliError> {
    s.split(';')
        .filter(|r| !r.trim().is_empty())
        .map(|r| {
            let v: Vec<i64> = r
                .split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|e| CliError::Usage(format!("rows {s:?}: {e}")))?;
            match v[..] {
                [x, y] => Ok((x, y)),
                _ => Err(CliError::Usage(format!("rows {s:?}: each row needs two entries"))),
            }
        })
        .collect()
}

fn parse_lattice(s: &str) -> Result<Lattice2, CliError> {
    lattices::hnf(&parse_rows(s)?).map_err(|e| CliError::domain("rank-deficient", e))
}

fn parse_class(model: &SurfaceModel, s: &str) -> Result<surfaces::DivisorClass, CliError> {
    let terms: Vec<(String, i64)> = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (label, coef) = t.split_once('=').ok_or_else(|| CliError::Usage(format!("expected label=coef, got {t:?}")))?;
            let coef = coef.trim().parse().map_err(|e| CliError::Usage(format!("{t:?}: {e}")))?;
            Ok((label.trim().to_string(), coef))
        })
        .collect::<Result<_, CliError>>()?;
    let borrowed: Vec<(&str, i64)> = terms.iter().map(|(l, c)| (l.as_str(), *c)).collect();
    model.class(&borrowed).map_err(|e| CliError::Usage(e.to_string()))
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Terms(a) => terms(a),
        Command::Forest(a) => forest(a, out),
        Command::Dim(a) => dim(a),
        Command::Gamma(a) => gamma(a),
        Command::Genusbound(a) => {
            let graph: CentralFiberGraph = read_json(&a.graph)?;
            let report = dual_graph::genus_bound_check(&graph, a.g).map_err(|e| CliError::domain(e.name(), &e))?;
            Ok((to_value(&report), EXIT_OK))
        }
        Command::Lattice(c) => lattice(c),
        Command::Mono(c) => mono(c),
        Command::Hurwitz(c) => hurwitz_cmd(c, out),
    }
}

fn terms(a: TermsArgs) -> Outcome {
    let state: SeveriState = read_json(&a.state)?;
    let parent_dimension = state.dimension().map_err(degeneration::DegenerationError::from)?;
    let list = if a.simple { degeneration::successors_simple(&state)? } else { degeneration::successors_general(&state)? };
    let terms: Vec<serde_json::Value> = list
        .iter()
        .map(|t| {
            let mut v = to_value(t);
            v["child_dimension"] = json!(t.child.dimension().expect("children are valid"));
            v
        })
        .collect();
    let mut value = json!({
        "theorem": if a.simple { "simple" } else { "general" },
        "parent_dimension": parent_dimension,
        "count": terms.len(),
        "terms": terms,
    });
    if a.compare {
        value["comparison"] = to_value(&degeneration::compare_theorems(&state)?);
    }
    Ok((value, EXIT_OK))
}

fn forest(a: ForestArgs, out: &mut dyn Write) -> Outcome {
    let roots: Vec<SeveriState> = a.roots.iter().map(|p| read_json(p)).collect::<Result<_, _>>()?;
    let stop = StopRule { floor: Some(a.floor), max_depth: a.depth, node_budget: a.budget as usize };
    let forest = degeneration::build_forest(&roots, stop)?;
    let code = if forest.truncated { EXIT_BUDGET } else { EXIT_OK };
    if let Some(path) = &a.dot {
        write_text(path, &forest.to_dot(), out)?;
        if path.as_os_str() == "-" {
            return Ok((serde_json::Value::Null, code));
        }
    }
    Ok((to_value(&forest), code))
}

fn dim(a: DimArgs) -> Outcome {
    if let Some(path) = a.state {
        let state: SeveriState = read_json(&path)?;
        let d = state.dimension().map_err(degeneration::DegenerationError::from)?;
        return Ok((json!(d), EXIT_OK));
    }
    match (a.d, a.g, a.b) {
        (Some(d), Some(g), Some(b)) => Ok((json!(surfaces::dim_v_ab(d, g, b)), EXIT_OK)),
        _ => Err(CliError::Usage("dim needs --state or all of --d, --g, --b".into())),
    }
}

fn gamma(a: GammaArgs) -> Outcome {
    let model = SurfaceModel::builtin(&a.model).map_err(|e| CliError::Usage(e.to_string()))?;
    let divisor = parse_class(&model, &a.divisor)?;
    let tau = parse_class(&model, &a.tau)?;
    let gamma = model.gamma(&divisor, &tau, a.b).map_err(|e| CliError::domain("gamma", e))?;
    let bound = surfaces::dim_bound(a.g, gamma);
    Ok((json!({"gamma": gamma, "dim_bound": bound, "applicable": bound.is_some()}), EXIT_OK))
}

fn lattice(c: LatticeCommand) -> Outcome {
    let value = match c {
        LatticeCommand::Snf { rows } => {
            let l = parse_lattice(&rows)?;
            let (d1, d2) = lattices::snf(&l);
            json!({"hnf": l, "index": l.index(), "snf": [d1, d2], "m": lattices::m_invariant(&l), "reduced": lattices::is_reduced(&l)})
        }
        LatticeCommand::Sublattices { e } => {
            let list = lattices::sublattices(e).map_err(|x| CliError::domain("positive-index", x))?;
            json!({"e": e, "count": list.len(), "sigma": lattices::sigma(e), "lattices": list})
        }
        LatticeCommand::Hat { rows, big_d } => {
            let l = parse_lattice(&rows)?;
            let outcome = lattices::construct_hat(&l, big_d).map_err(|e| CliError::domain("hat-degree", e))?;
            let mut v = to_value(&outcome);
            if let HatOutcome::Feasible(h) = &outcome {
                v["conditions_hold"] = json!(lattices::hat_conditions_hold(&l, big_d, &h.lhat, h.v));
            }
            v["Ltilde"] = to_value(&l);
            v["D"] = json!(big_d);
            v
        }
        LatticeCommand::Counts { d, strict } => {
            let count = lattices::hurwitz_component_count(d).map_err(|e| CliError::domain("cover-degree", e))?;
            let pairs = lattices::global_component_pairs(d, strict);
            json!({"d": d, "hurwitz_components": count, "strict": strict, "global_pairs": pairs, "global_components": pairs.len()})
        }
    };
    Ok((value, EXIT_OK))
}

fn mono(c: MonoCommand) -> Outcome {
    let value = match c {
        MonoCommand::Check(a) => {
            let t: HurwitzTuple = read_json(&a.tuple)?;
            let violations = t.check();
            let names: Vec<&str> = violations.iter().map(|v| v.name()).collect();
            let code = if violations.is_empty() { EXIT_OK } else { EXIT_DOMAIN };
            return Ok((json!({"valid": violations.is_empty(), "violations": names, "details": violations}), code));
        }
        MonoCommand::Lattice { tuple, base } => {
            let t: HurwitzTuple = read_json(&tuple.tuple)?;
            if base == 0 {
                return Err(CliError::Usage("--base is 1-based".into()));
            }
            let l = monodromy::invariant_lattice_from(&t, base - 1)?;
            json!({"lattice": l, "index": l.index(), "primitive": l.is_full(), "full_monodromy": monodromy::is_full_monodromy(&t, tuple.budget)?})
        }
        MonoCommand::Factor(a) => {
            let t: HurwitzTuple = read_json(&a.tuple)?;
            let f = monodromy::factorize(&t)?;
            let kernel = match monodromy::kernel_order_check(&t, a.budget) {
                Ok(k) => to_value(&k),
                Err(MonodromyError::Inapplicable(why)) => json!({"inapplicable": why}),
                Err(e) => return Err(e.into()),
            };
            json!({"factorization": f, "kernel": kernel, "block_pairs_transitive": monodromy::transitive_on_block_pairs(&t)?})
        }
        MonoCommand::Scan { d, b } => {
            if !(1..=hurwitz::MAX_DEGREE).contains(&d) || b > hurwitz::MAX_BRANCH_POINTS {
                return Err(CliError::Budget(format!(
                    "scan needs 1 <= d <= {} and b <= {}",
                    hurwitz::MAX_DEGREE,
                    hurwitz::MAX_BRANCH_POINTS
                )));
            }
            to_value(&monodromy::scan(d, b))
        }
    };
    Ok((value, EXIT_OK))
}

fn hurwitz_cmd(c: HurwitzCommand, out: &mut dyn Write) -> Outcome {
    let guard = |e: hurwitz::HurwitzError| match e {
        hurwitz::HurwitzError::Guard { .. } => CliError::Budget(e.to_string()),
        other => other.into(),
    };
    match c {
        HurwitzCommand::Orbits { d, g, dot } => {
            let tuples = hurwitz::enumerate_tuples(d, g).map_err(guard)?;
            let moves = MoveSet::standard(d);
            let report = hurwitz::orbits(&tuples, &moves)?;
            if let Some(path) = &dot {
                write_text(path, &hurwitz::move_graph_dot(&tuples, &moves), out)?;
                if path.as_os_str() == "-" {
                    return Ok((serde_json::Value::Null, EXIT_OK));
                }
            }
            let predicted = lattices::hurwitz_component_count(d as i64).ok();
            let mut v = to_value(&report);
            v["predicted_components"] = json!(predicted);
            Ok((v, EXIT_OK))
        }
        HurwitzCommand::Census { d, g } => {
            let tuples = hurwitz::enumerate_tuples(d, g).map_err(guard)?;
            let census = hurwitz::invariant_census(&tuples)?;
            let rows: Vec<serde_json::Value> = census
                .iter()
                .map(|(l, n)| json!({"lattice": l, "index": l.index(), "tuples": n}))
                .collect();
            Ok((json!({"d": d, "g": g, "tuples": tuples.len(), "lattices": rows}), EXIT_OK))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let code = run(std::iter::once("torus-severi").chain(args.iter().copied()), &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn dim_and_counts() {
        assert_eq!(run_capture(&["dim", "--d", "3", "--g", "2", "--b", "3"]), (0, "6\n".to_string()));
        let (code, out) = run_capture(&["lattice", "counts", "--d", "6"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["hurwitz_components"], 8);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_capture(&["dim", "--d", "3"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["nonsense"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["lattice", "snf", "--rows", "1,0"]).0, EXIT_DOMAIN);
        assert_eq!(run_capture(&["hurwitz", "orbits", "--d", "7", "--g", "2"]).0, EXIT_BUDGET);
    }

    #[test]
    fn gamma_command() {
        let (code, out) = run_capture(&["gamma", "--model", "ExP1", "--divisor", "e=1", "--tau", "f=4,e=2", "--g", "3"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["gamma"], 4);
        assert_eq!(v["dim_bound"], 6);
    }
}
