//! Command-line front end for `kstrata`.
//!
//! Every subcommand builds a serde value; `--json` prints it as pretty JSON
//! and the default mode renders the same value as indented text. Exit codes:
//! 0 on success, 2 on invalid input, 1 on internal failure or a failed
//! verification.

use std::ffi::OsString;
use std::fmt::Debug;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use kstrata::batch::{classify_batch, Execution};
use kstrata::degeneration::{
    enumerate_zero_splits, genus0_has_cylinder, genus0_has_simple_cylinder, merge_feasible_same_sign,
    DegenerationError, DegenerationMove, MoveKind, ZeroSplit,
};
use kstrata::framing::{arf, relative_arf, spin, Parity, SymplecticFramingValues};
use kstrata::genus_one::{self, GenusOneComponent, MergeOutcome};
use kstrata::prong::{enumerate_local_classes, global_classes_genus_one_split, local_classes, prong_hom_image};
use kstrata::quartic::{verify_fixture, Construction, Fixture, SporadicError};
use kstrata::signature::parse_order_list;
use kstrata::{full_component_breakdown, primitive_nonhyperelliptic_components, ClassifyError, Signature};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{code}: {message}")]
    Invalid { code: String, message: String },
    #[error("internal: {0}")]
    Internal(String),
}

impl CliError {
    fn invalid(code: &str, message: impl ToString) -> Self {
        Self::Invalid {
            code: code.to_string(),
            message: message.to_string(),
        }
    }

    /// Uses the error's variant name as its code.
    fn from_error<E: Debug + std::fmt::Display>(e: E) -> Self {
        Self::invalid(&variant_name(&e), e)
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Invalid { .. } => 2,
            Self::Internal(_) => 1,
        }
    }
}

fn variant_name<E: Debug>(e: &E) -> String {
    let text = format!("{e:?}");
    let end = text.find(|c: char| !c.is_alphanumeric()).unwrap_or(text.len());
    text[..end].to_string()
}

fn classify_error(e: ClassifyError) -> CliError {
    match e {
        ClassifyError::ZeroOrderPresent => CliError::invalid("ZeroOrderPresent", e),
        ClassifyError::Signature(inner) => CliError::from_error(inner),
        ClassifyError::GenusOne(inner) => CliError::from_error(inner),
    }
}

#[derive(Debug, Parser)]
#[command(name = "kstrata", version, about = "Connected components of strata of k-differentials")]
struct Cli {
    /// Emit JSON instead of indented text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

/// A signature given either piecewise or as `k:<k> g:<g> orders:(o1,...)`.
/// Orders are stored sorted in descending order.
#[derive(Debug, Args)]
struct SignatureArgs {
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    genus: Option<u32>,
    /// Comma-separated orders, e.g. `4,-1,-1`.
    #[arg(long, allow_hyphen_values = true)]
    orders: Option<String>,
    #[arg(long, conflicts_with_all = ["k", "genus", "orders"])]
    signature: Option<String>,
}

impl SignatureArgs {
    fn is_empty(&self) -> bool {
        self.k.is_none() && self.genus.is_none() && self.orders.is_none() && self.signature.is_none()
    }

    fn resolve(&self) -> Result<Signature, CliError> {
        if let Some(text) = &self.signature {
            return text.parse().map_err(CliError::from_error);
        }
        let (Some(k), Some(genus), Some(orders)) = (self.k, self.genus, &self.orders) else {
            return Err(CliError::invalid(
                "Usage",
                "give --k, --genus and --orders, or --signature",
            ));
        };
        let orders = parse_orders(orders)?;
        Signature::new(k, genus, &orders).map_err(CliError::from_error)
    }
}

fn parse_orders(text: &str) -> Result<Vec<i64>, CliError> {
    parse_order_list(text).map_err(|m| CliError::invalid("Parse", m))
}

fn parse_pair(text: &str, what: &str) -> Result<(i64, i64), CliError> {
    match parse_orders(text)?.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(CliError::invalid("Parse", format!("{what} needs exactly two values, got {text:?}"))),
    }
}

/// Parses `a1:b1,a2:b2,...`.
fn parse_framing_pairs(text: &str) -> Result<Vec<(i64, i64)>, CliError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|item| {
            let fail = || CliError::invalid("Parse", format!("{item:?} is not of the form a:b"));
            let (a, b) = item.split_once(':').ok_or_else(fail)?;
            Ok((a.trim().parse().map_err(|_| fail())?, b.trim().parse().map_err(|_| fail())?))
        })
        .collect()
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count and label primitive nonhyperelliptic components.
    Classify {
        #[command(flatten)]
        signature: SignatureArgs,
        /// One signature per line in `k:<k> g:<g> orders:(...)` form; `#` starts a comment.
        #[arg(long, conflicts_with_all = ["k", "genus", "orders", "signature"])]
        orders_file: Option<PathBuf>,
        /// Classify a file on a single thread.
        #[arg(long, requires = "orders_file")]
        sequential: bool,
    },
    /// Components for every divisor d of k that the orders allow.
    Breakdown {
        #[command(flatten)]
        signature: SignatureArgs,
    },
    /// Genus-one components indexed by rotation number.
    Genus1 {
        #[command(flatten)]
        signature: SignatureArgs,
    },
    /// Merge two singularities, keeping the genus.
    Merge {
        #[command(flatten)]
        signature: SignatureArgs,
        /// The two orders to merge, e.g. `3,-1`.
        #[arg(long, allow_hyphen_values = true)]
        entries: String,
        /// Genus one only: rotation number of the source component.
        #[arg(long)]
        rotation: Option<u64>,
    },
    /// Split a zero, lowering the genus by one.
    Split {
        #[command(flatten)]
        signature: SignatureArgs,
        /// Order of the zero to split.
        #[arg(long)]
        zero: i64,
        /// The two new orders; every admissible pair is listed when omitted.
        #[arg(long, allow_hyphen_values = true)]
        pair: Option<String>,
        /// Genus one only: rotation number of the source component.
        #[arg(long, requires = "pair")]
        rotation: Option<u64>,
    },
    /// Arf invariant from framing values on a symplectic basis.
    Arf {
        /// Framing values `w(a_i):w(b_i)`, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        pairs: String,
        /// Relative framing of an arc joining two punctures.
        #[arg(long, allow_hyphen_values = true)]
        relative: Option<i64>,
    },
    /// Spin parity of a k-framing for odd k and even orders.
    Spin {
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        orders: String,
        /// Framing values `w(a_i):w(b_i)`, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        pairs: String,
    },
    /// Prong-matching counts.
    Prong {
        #[command(subcommand)]
        command: ProngCommand,
    },
    /// Cylinder criteria for genus-zero strata.
    Cylinder {
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        orders: String,
    },
    /// Exact verification of a sporadic plane-quartic construction.
    QuarticVerify {
        /// `OddArf_h0_0` or `OddArf_h0_1`.
        #[arg(long)]
        construction: String,
        #[arg(long, default_value_t = kstrata::quartic::sporadic::DEFAULT_PRECISION)]
        precision: usize,
        /// Replace the embedded polynomials with a fixture file.
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum ProngCommand {
    /// Local classes at a pair of nodes with upper orders a and b.
    Local {
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
    },
    /// Image of the prong matching homomorphism for a genus-one (a, -a) stratum.
    Image {
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        /// Torsion order; the rotation is |a|/e.
        #[arg(long)]
        e: i64,
    },
    /// Global classes after splitting into a genus-one component.
    Global {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        rotation: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        /// Remaining orders of the genus-one component.
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        rest: String,
    },
}

#[derive(Serialize)]
struct BatchEntry {
    line: usize,
    input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<kstrata::ComponentReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize)]
struct GenusOneReport {
    signature: Signature,
    gcd: u64,
    components: Vec<GenusOneComponent>,
}

#[derive(Serialize)]
struct MergeReport {
    #[serde(rename = "move")]
    mv: DegenerationMove,
    /// `null` when the statement does not cover the pair.
    same_sign_feasible: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    genus_one: Option<MergeOutcome>,
}

#[derive(Serialize)]
struct SplitOption {
    #[serde(flatten)]
    split: ZeroSplit,
    result: Signature,
}

#[derive(Serialize)]
struct SplitList {
    source: Signature,
    zero: i64,
    splits: Vec<SplitOption>,
}

#[derive(Serialize)]
struct SplitReport {
    #[serde(rename = "move")]
    mv: DegenerationMove,
    #[serde(skip_serializing_if = "Option::is_none")]
    sphere_split_allowed: Option<bool>,
}

#[derive(Serialize)]
struct ArfReport {
    pairs: Vec<(i64, i64)>,
    arf: Parity,
    #[serde(skip_serializing_if = "Option::is_none")]
    relative_arf: Option<Parity>,
}

#[derive(Serialize)]
struct SpinReport {
    framing: SymplecticFramingValues,
    spin: Parity,
}

#[derive(Serialize)]
struct LocalProngReport {
    k: u32,
    a: i64,
    b: i64,
    classes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    enumerated: Option<u64>,
}

#[derive(Serialize)]
struct CylinderReport {
    k: u32,
    orders: Vec<i64>,
    cylinder: bool,
    simple_cylinder: bool,
}

/// Output plus, for a run that completed but did not succeed, its exit code
/// and diagnostic.
struct Outcome {
    value: Value,
    failure: Option<(i32, &'static str)>,
}

fn emit<T: Serialize>(value: &T) -> Result<Outcome, CliError> {
    serde_json::to_value(value)
        .map(|value| Outcome { value, failure: None })
        .map_err(|e| CliError::Internal(e.to_string()))
}

fn index_of(sig: &Signature, order: i64, skip: Option<usize>) -> Result<usize, CliError> {
    sig.orders()
        .iter()
        .enumerate()
        .position(|(i, &o)| o == order && Some(i) != skip)
        .ok_or_else(|| CliError::invalid("NotInSignature", format!("order {order} is not available in {sig}")))
}

fn classify_file(path: &PathBuf, execution: Execution) -> Result<Outcome, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::invalid("Io", format!("{}: {e}", path.display())))?;
    let mut entries = Vec::new();
    let mut parsed = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match line.parse::<Signature>() {
            Ok(sig) => {
                parsed.push((entries.len(), sig));
                entries.push(BatchEntry { line: n + 1, input: line.to_string(), report: None, error: None });
            }
            Err(e) => entries.push(BatchEntry {
                line: n + 1,
                input: line.to_string(),
                report: None,
                error: Some(e.to_string()),
            }),
        }
    }
    let sigs: Vec<Signature> = parsed.iter().map(|(_, s)| s.clone()).collect();
    for ((slot, _), result) in parsed.iter().zip(classify_batch(&sigs, execution)) {
        match result {
            Ok(report) => entries[*slot].report = Some(report),
            Err(e) => entries[*slot].error = Some(e.to_string()),
        }
    }
    let mut out = emit(&entries)?;
    if entries.iter().any(|e| e.error.is_some()) {
        out.failure = Some((2, "one or more signatures could not be classified"));
    }
    Ok(out)
}

fn execute(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Classify { signature, orders_file, sequential } => {
            if let Some(path) = orders_file {
                let execution = if sequential { Execution::Sequential } else { Execution::Parallel };
                return classify_file(&path, execution);
            }
            if signature.is_empty() {
                return Err(CliError::invalid("Usage", "give a signature or --orders-file"));
            }
            let sig = signature.resolve()?;
            emit(&primitive_nonhyperelliptic_components(&sig).map_err(classify_error)?)
        }
        Command::Breakdown { signature } => {
            let sig = signature.resolve()?;
            emit(&full_component_breakdown(&sig).map_err(classify_error)?)
        }
        Command::Genus1 { signature } => {
            let sig = signature.resolve()?;
            let components = genus_one::components(&sig).map_err(CliError::from_error)?;
            emit(&GenusOneReport { gcd: sig.gcd_orders(), signature: sig, components })
        }
        Command::Merge { signature, entries, rotation } => {
            let sig = signature.resolve()?;
            let (x, y) = parse_pair(&entries, "--entries")?;
            let i = index_of(&sig, x, None)?;
            let j = index_of(&sig, y, Some(i))?;
            let mv = DegenerationMove::evaluate(&sig, MoveKind::Merge { i, j });
            let same_sign_feasible = match merge_feasible_same_sign(&sig, i, j) {
                Ok(v) => Some(v),
                Err(DegenerationError::MixedSignPair(..) | DegenerationError::WrongGenus { .. }) => None,
                Err(e) => return Err(CliError::from_error(e)),
            };
            let genus_one = rotation
                .map(|r| genus_one::merge(&sig, r, i, j).map_err(CliError::from_error))
                .transpose()?;
            emit(&MergeReport { mv, same_sign_feasible, genus_one })
        }
        Command::Split { signature, zero, pair, rotation } => {
            let sig = signature.resolve()?;
            let zero_index = index_of(&sig, zero, None)?;
            let Some(pair) = pair else {
                let splits = enumerate_zero_splits(sig.k(), zero)
                    .map_err(CliError::from_error)?
                    .into_iter()
                    .map(|split| {
                        kstrata::degeneration::split_result(&sig, zero_index, split.a, split.b)
                            .map(|result| SplitOption { split, result })
                            .map_err(CliError::from_error)
                    })
                    .collect::<Result<_, _>>()?;
                return emit(&SplitList { source: sig, zero, splits });
            };
            let (a, b) = parse_pair(&pair, "--pair")?;
            let mv = DegenerationMove::evaluate(&sig, MoveKind::Split { zero_index, a, b });
            let sphere_split_allowed = rotation
                .map(|r| genus_one::split_to_sphere(&sig, r, zero_index, a, b).map_err(CliError::from_error))
                .transpose()?;
            emit(&SplitReport { mv, sphere_split_allowed })
        }
        Command::Arf { pairs, relative } => {
            let pairs = parse_framing_pairs(&pairs)?;
            emit(&ArfReport {
                arf: arf(&pairs),
                relative_arf: relative.map(|s| relative_arf(s, &pairs)),
                pairs,
            })
        }
        Command::Spin { k, orders, pairs } => {
            let framing = SymplecticFramingValues::from_orders(k, parse_framing_pairs(&pairs)?, &parse_orders(&orders)?);
            let spin = spin(&framing).map_err(CliError::from_error)?;
            emit(&SpinReport { framing, spin })
        }
        Command::Prong { command } => match command {
            ProngCommand::Local { k, a, b } => {
                let classes = local_classes(k, a, b).map_err(CliError::from_error)?;
                let enumerated = enumerate_local_classes(k, a, b).ok();
                emit(&LocalProngReport { k, a, b, classes, enumerated })
            }
            ProngCommand::Image { k, a, e } => emit(&prong_hom_image(k, a, e).map_err(CliError::from_error)?),
            ProngCommand::Global { k, rotation, a, b, rest } => {
                let rest = parse_orders(&rest)?;
                let classes =
                    global_classes_genus_one_split(k, rotation, a, b, &rest).map_err(CliError::from_error)?;
                emit(&serde_json::json!({ "k": k, "rotation": rotation, "a": a, "b": b, "rest": rest, "classes": classes }))
            }
        },
        Command::Cylinder { k, orders } => {
            let orders = parse_orders(&orders)?;
            let cylinder = genus0_has_cylinder(k, &orders).map_err(CliError::from_error)?;
            let simple_cylinder = genus0_has_simple_cylinder(k, &orders).map_err(CliError::from_error)?;
            emit(&CylinderReport { k, orders, cylinder, simple_cylinder })
        }
        Command::QuarticVerify { construction, precision, fixture } => {
            let construction: Construction = construction.parse().map_err(CliError::from_error)?;
            let fixture = match fixture {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| CliError::invalid("Io", format!("{}: {e}", path.display())))?;
                    Fixture::parse(&text).map_err(CliError::from_error)?
                }
                None => construction.fixture(),
            };
            let report = verify_fixture(construction, &fixture, precision).map_err(|e| match e {
                SporadicError::Fixture { .. } | SporadicError::UnknownConstruction(_) => CliError::from_error(e),
                SporadicError::Series(_) => CliError::from_error(e),
                other => CliError::Internal(other.to_string()),
            })?;
            let mut out = emit(&report)?;
            if !report.passed {
                out.failure = Some((1, "one or more checks failed"));
            }
            Ok(out)
        }
    }
}

/// Renders a JSON value as indented `key: value` lines.
pub fn render_text(value: &Value) -> String {
    let mut out = String::new();
    render_into(value, 0, &mut out);
    out
}

fn scalar(value: &Value) -> Option<String> {
    match value {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|v| !v.is_object() && !v.is_array()) => Some(format!(
            "[{}]",
            items.iter().map(|v| scalar(v).unwrap_or_default()).collect::<Vec<_>>().join(", ")
        )),
        Value::Array(items) if items.iter().all(|v| v.as_array().is_some_and(|a| a.iter().all(Value::is_number))) => {
            Some(format!(
                "[{}]",
                items.iter().map(|v| scalar(v).unwrap_or_default()).collect::<Vec<_>>().join(", ")
            ))
        }
        _ => None,
    }
}

fn render_into(value: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (key, v) in map {
                match scalar(v) {
                    Some(s) => out.push_str(&format!("{pad}{key}: {s}\n")),
                    None if v.as_array().is_some_and(Vec::is_empty) || v.as_object().is_some_and(|m| m.is_empty()) => {
                        out.push_str(&format!("{pad}{key}: []\n"))
                    }
                    None => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render_into(v, indent + 2, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        let mut nested = String::new();
                        render_into(item, indent + 2, &mut nested);
                        let body = nested.trim_start_matches(' ');
                        out.push_str(&format!("{pad}- {body}"));
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{rendered}");
            return if code == 0 { 0 } else { 2 };
        }
    };
    let json = cli.json;
    match execute(cli.command) {
        Ok(Outcome { value, failure }) => {
            let text = if json {
                match serde_json::to_string_pretty(&value) {
                    Ok(s) => s + "\n",
                    Err(e) => {
                        let _ = writeln!(err, "error: internal: {e}");
                        return 1;
                    }
                }
            } else {
                render_text(&value)
            };
            if out.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            match failure {
                None => 0,
                Some((code, message)) => {
                    let _ = writeln!(err, "error: {message}");
                    code
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
