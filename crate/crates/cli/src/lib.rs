//! Command-line front end for `motive-forge`.
//!
//! [`run`] parses an argument vector, performs the computation and returns
//! the exit status together with everything destined for stdout/stderr, so
//! the binary is a thin wrapper and the whole surface is testable in-process.
//!
//! Exit codes: `0` success, `1` computation error (caps, overflow, failed
//! invariants), `2` usage error.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use motive_forge::configurations::{union_class, validate_configuration, Configuration};
use motive_forge::flags::{flag_motive, leray_hirsch, tower_motive, FiberData};
use motive_forge::gbundle::{
    binomial, nested_filtration_report, reductive_group_class, torus_filtration_pieces,
    FiltrationNode,
};
use motive_forge::rootsys::Interpretation;
use motive_forge::wonderful::{Face, Wonderful};
use motive_forge::{
    CartanType, Error, LPolynomial, ParabolicSubset, RootSystem, TateSum, WeylGroup,
    DEFAULT_CELL_CAP, DEFAULT_WEYL_CAP,
};
use serde::Serialize;
use serde_json::{json, Value};

/// Value of the `"schema"` field in every JSON document.
pub const SCHEMA: &str = "motive-forge/1";

const TYPE_HINT: &str = "Cartan types are a family letter A-G followed by a rank, e.g. A2, B3, D4, G2 \
                         (C2 is read as B2)";

#[derive(Debug, Parser)]
#[command(
    name = "motive-forge",
    version,
    about = "Exact motivic decompositions of flag varieties, wonderful compactifications and G-bundles",
    after_help = "Cartan types match ^[ABCDEFG][1-9][0-9]*$ (C2 is normalized to B2). \
                  Parabolic subsets are comma-separated 1-based simple-root indices, \
                  e.g. \"1,3\"; use \"\" or \"-\" for the empty subset."
)]
struct Cli {
    /// Emit a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Cap on any single enumeration (Weyl group elements, cell-table entries).
    #[arg(long, global = true, env = "MOTIVE_FORGE_CAP", value_name = "N")]
    cap: Option<usize>,

    /// Write the output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Weyl group order, exponents, Poincaré polynomial and longest word.
    Weyl {
        #[arg(value_name = "TYPE")]
        ty: CartanType,
    },
    /// Motive of the flag variety G/P_I.
    Flag {
        #[arg(value_name = "TYPE")]
        ty: CartanType,
        /// The subset I defining P_I (default: empty, i.e. G/B).
        #[arg(long, short, default_value = "", value_name = "I")]
        parabolic: String,
    },
    /// Cells, motive and orbit class of an orbit closure in the wonderful compactification.
    Wonderful {
        #[arg(value_name = "TYPE")]
        ty: CartanType,
        /// Face I of the orbit closure D_I (default: all simple roots, the whole compactification).
        #[arg(long, value_name = "I")]
        face: Option<String>,
        #[command(flatten)]
        interp: InterpArg,
        /// Also compute the orbit class through the fibration oracle and compare.
        #[arg(long)]
        oracle: bool,
        /// Check Poincaré duality of the closure motive.
        #[arg(long)]
        check_duality: bool,
    },
    /// Class of the split reductive group with the given root system.
    GroupClass {
        #[arg(value_name = "TYPE")]
        ty: CartanType,
        /// Rank of the central torus.
        #[arg(long, short = 'z', default_value_t = 0, value_name = "Z")]
        central_rank: u32,
    },
    /// Leray–Hirsch decomposition of a cellular fibration.
    LerayHirsch {
        /// Fiber: Chow ranks "1,1,1", a flag "A2/1,2" or FiberData JSON.
        #[arg(long, value_name = "FIBER")]
        fiber: String,
        /// Base motive: TateSum JSON, pure Chow ranks "1,1" or a flag "A1/" (default: a point).
        #[arg(long, default_value = "1", value_name = "MOTIVE")]
        base: String,
    },
    /// Ambient motive of an iterated tower of cellular fibrations.
    Tower {
        /// Fibers from the top of the tower down; the rightmost is applied first.
        #[arg(value_name = "FIBER")]
        fibers: Vec<String>,
        #[arg(long, default_value = "1", value_name = "MOTIVE")]
        base: String,
    },
    /// Nested face-lattice filtration of the compactly supported motive of G.
    Filtration {
        #[arg(value_name = "TYPE")]
        ty: CartanType,
        /// Class of the base: LPolynomial JSON, a polynomial like "1 + L", or "1".
        #[arg(long, default_value = "1", value_name = "CLASS")]
        base: String,
        #[command(flatten)]
        interp: InterpArg,
    },
    /// Validate a mixed Tate configuration and compute its union class.
    Config {
        /// Configuration JSON file, or "-" for stdin.
        #[arg(value_name = "FILE", required_unless_present = "boundary", conflicts_with = "boundary")]
        file: Option<PathBuf>,
        /// Use the boundary of the wonderful compactification of this type instead.
        #[arg(long, value_name = "TYPE")]
        boundary: Option<CartanType>,
        #[command(flatten)]
        interp: InterpArg,
    },
    /// Graded pieces of the slice filtration of a rank-r torus bundle.
    TorusFiltration {
        #[arg(value_name = "R")]
        rank: u32,
        /// Motive of the base: TateSum JSON, pure Chow ranks "1,1" or a flag "A1/".
        #[arg(long, default_value = "1", value_name = "MOTIVE")]
        base: String,
    },
}

#[derive(Debug, Args)]
struct InterpArg {
    /// Reading of I_u in the cell dimension formula.
    #[arg(long = "interpretation", default_value_t = Interpretation::Ascent, value_name = "ascent|support")]
    interpretation: Interpretation,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

struct Report {
    json: Value,
    text: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => return clap_outcome(e),
    };
    let report = match dispatch(&cli) {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => return usage(msg),
        Err(Failure::Compute(e)) => {
            return Outcome {
                code: 1,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    let body = if cli.json {
        let mut doc = report.json;
        if let Value::Object(map) = &mut doc {
            map.insert("schema".into(), Value::from(SCHEMA));
        }
        let mut s = serde_json::to_string(&doc).expect("JSON values always serialize");
        s.push('\n');
        s
    } else {
        report.text
    };
    match &cli.out {
        None => Outcome {
            code: 0,
            stdout: body,
            stderr: String::new(),
        },
        Some(path) => match std::fs::write(path, body) {
            Ok(()) => Outcome {
                code: 0,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => Outcome {
                code: 1,
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
            },
        },
    }
}

fn usage(msg: String) -> Outcome {
    Outcome {
        code: 2,
        stdout: String::new(),
        stderr: format!("error: {msg} (see motive-forge --help)\n"),
    }
}

fn clap_outcome(e: clap::Error) -> Outcome {
    match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
            code: 0,
            stdout: e.to_string(),
            stderr: String::new(),
        },
        _ => {
            let rendered = e.to_string();
            let first = rendered
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ")
                .to_string();
            let msg = if first.contains("Cartan type") && !first.contains("e.g.") {
                format!("{first}; {TYPE_HINT}")
            } else {
                first
            };
            usage(msg)
        }
    }
}

struct Caps {
    weyl: usize,
    cells: usize,
}

fn dispatch(cli: &Cli) -> CliResult<Report> {
    let caps = match cli.cap {
        Some(c) => Caps { weyl: c, cells: c },
        None => Caps {
            weyl: DEFAULT_WEYL_CAP,
            cells: DEFAULT_CELL_CAP,
        },
    };
    match &cli.command {
        Command::Weyl { ty } => weyl(*ty, &caps),
        Command::Flag { ty, parabolic } => flag(*ty, parabolic, &caps),
        Command::Wonderful {
            ty,
            face,
            interp,
            oracle,
            check_duality,
        } => wonderful(*ty, face.as_deref(), interp.interpretation, *oracle, *check_duality, &caps),
        Command::GroupClass { ty, central_rank } => group_class(*ty, *central_rank, &caps),
        Command::LerayHirsch { fiber, base } => {
            let f = parse_fiber(fiber, &caps)?;
            let b = parse_motive(base, &caps)?;
            lh_report(&f, &b)
        }
        Command::Tower { fibers, base } => {
            let fs = fibers
                .iter()
                .map(|f| parse_fiber(f, &caps))
                .collect::<CliResult<Vec<_>>>()?;
            let b = parse_motive(base, &caps)?;
            tower(&fs, &b)
        }
        Command::Filtration { ty, base, interp } => {
            filtration(*ty, &parse_class(base)?, interp.interpretation, &caps)
        }
        Command::Config {
            file,
            boundary,
            interp,
        } => config(file.as_ref(), *boundary, interp.interpretation, &caps),
        Command::TorusFiltration { rank, base } => torus(*rank, &parse_motive(base, &caps)?),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("engine types serialize to JSON")
}

fn group_of(ty: CartanType, caps: &Caps) -> CliResult<WeylGroup> {
    Ok(RootSystem::build(ty)?.weyl_group(caps.weyl)?)
}

fn subset_arg(s: &str, rank: usize) -> CliResult<ParabolicSubset> {
    ParabolicSubset::parse(s, rank).map_err(|e| Failure::Usage(e.to_string()))
}

fn one_based(s: ParabolicSubset) -> Vec<usize> {
    s.indices().map(|i| i + 1).collect()
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn weyl(ty: CartanType, caps: &Caps) -> CliResult<Report> {
    let rs = RootSystem::build(ty)?;
    let expected = rs.weyl_order_from_exponents()?;
    if expected > caps.weyl as u128 {
        return Err(Error::CapExceeded {
            what: "Weyl group",
            size: expected,
            cap: caps.weyl,
        }
        .into());
    }
    let g = rs.weyl_group(caps.weyl)?;
    let poincare = g.poincare();
    let factorized = poincare == rs.poincare_from_exponents()? && expected == g.order() as u128;
    if !factorized {
        return Err(Error::InternalConsistency(format!(
            "Poincaré polynomial of {} does not factor over its exponents",
            rs.name()
        ))
        .into());
    }
    let w0 = g.longest_element();
    let mut text = String::new();
    writeln!(text, "type: {}", rs.name()).unwrap();
    writeln!(text, "rank: {}", rs.rank()).unwrap();
    writeln!(text, "positive roots: {}", rs.num_positive()).unwrap();
    writeln!(text, "exponents: {}", join(rs.exponents())).unwrap();
    writeln!(text, "order: {}", g.order()).unwrap();
    writeln!(text, "length histogram: {}", join(g.length_histogram())).unwrap();
    writeln!(text, "poincare: {}", poincare.display_with('t')).unwrap();
    writeln!(text, "longest word: {w0} (length {})", w0.length()).unwrap();
    let json = json!({
        "type": rs.name(),
        "rank": rs.rank(),
        "num_positive_roots": rs.num_positive(),
        "exponents": rs.exponents(),
        "order": g.order(),
        "length_histogram": g.length_histogram(),
        "poincare": to_value(&poincare),
        "longest_word": w0.word_one_based(),
    });
    Ok(Report { json, text })
}

fn flag(ty: CartanType, parabolic: &str, caps: &Caps) -> CliResult<Report> {
    let g = group_of(ty, caps)?;
    let rs = g.root_system();
    let subset = subset_arg(parabolic, rs.rank())?;
    let levi = rs.levi_subsystem(subset)?;
    let motive = flag_motive(&g, subset)?;
    let dim = rs.num_positive() - levi.num_positive();
    let dual = motive.self_duality_check(dim as i64)?;
    let ranks = motive.pure_coefficients()?;
    let class = motive.euler_class()?;
    let mut text = String::new();
    writeln!(text, "flag variety: {}/P{subset} (Levi {})", rs.name(), levi.name()).unwrap();
    writeln!(text, "dimension: {dim}").unwrap();
    writeln!(text, "motive: {motive}").unwrap();
    writeln!(text, "chow ranks: {}", join(&ranks)).unwrap();
    writeln!(text, "class: {class}").unwrap();
    writeln!(text, "poincare duality: {}", if dual { "ok" } else { "FAILS" }).unwrap();
    let json = json!({
        "type": rs.name(),
        "parabolic": one_based(subset),
        "levi": levi.name(),
        "dim": dim,
        "motive": to_value(&motive),
        "chow_ranks": ranks,
        "class": to_value(&class),
        "self_dual": dual,
    });
    Ok(Report { json, text })
}

fn wonderful(
    ty: CartanType,
    face: Option<&str>,
    interpretation: Interpretation,
    oracle: bool,
    check_duality: bool,
    caps: &Caps,
) -> CliResult<Report> {
    let g = group_of(ty, caps)?;
    let rs = g.root_system();
    let subset = match face {
        Some(s) => subset_arg(s, rs.rank())?,
        None => rs.full_subset(),
    };
    let face = Face::new(rs, subset)?;
    let w = Wonderful::new(&g)
        .with_interpretation(interpretation)
        .with_cell_cap(caps.cells);
    let histogram = w.cell_histogram(subset)?;
    let motive = w.closure_motive(subset)?;
    let closure = w.closure_class(subset)?;
    let orbit = w.orbit_class(subset)?;

    let mut text = String::new();
    writeln!(text, "type: {}", rs.name()).unwrap();
    writeln!(text, "face: {subset} (orbit dimension {}, codimension {})", face.dim, face.codim).unwrap();
    writeln!(text, "interpretation: {interpretation}").unwrap();
    writeln!(text, "cell histogram: {}", join(&histogram)).unwrap();
    writeln!(text, "closure motive: {motive}").unwrap();
    writeln!(text, "closure class: {closure}").unwrap();
    writeln!(text, "orbit class: {orbit}").unwrap();
    let mut json = json!({
        "type": rs.name(),
        "face": to_value(&face),
        "interpretation": interpretation,
        "histogram": histogram,
        "motive": to_value(&motive),
        "closure_class": to_value(&closure),
        "orbit_class": to_value(&orbit),
    });
    if oracle {
        let expected = w.orbit_class_oracle(subset)?;
        let verdict = if expected == orbit { "agree" } else { "disagree" };
        writeln!(text, "oracle class: {expected} ({verdict})").unwrap();
        json["oracle"] = json!({ "class": to_value(&expected), "verdict": verdict });
    }
    if check_duality {
        let dual = motive.self_duality_check(face.dim as i64)?;
        writeln!(
            text,
            "poincare duality (n = {}): {}",
            face.dim,
            if dual { "ok" } else { "FAILS" }
        )
        .unwrap();
        json["self_dual"] = Value::Bool(dual);
    }
    Ok(Report { json, text })
}

fn group_class(ty: CartanType, z: u32, caps: &Caps) -> CliResult<Report> {
    let rs = RootSystem::build(ty)?;
    let class = reductive_group_class(&rs, z, caps.weyl)?;
    let text = format!("class of {} with central torus of rank {z}: {class}\n", rs.name());
    let json = json!({ "type": rs.name(), "central_rank": z, "class": to_value(&class) });
    Ok(Report { json, text })
}

/// `"1,1,1"`, `"A2/1,2"` or `{"chow_ranks":…}`.
fn parse_fiber(s: &str, caps: &Caps) -> CliResult<FiberData> {
    let s = s.trim();
    if s.starts_with('{') {
        return serde_json::from_str(s).map_err(|e| Failure::Usage(format!("fiber JSON: {e}")));
    }
    if let Some((ty, sub)) = s.split_once('/') {
        let ty: CartanType = ty.parse().map_err(|e: Error| Failure::Usage(format!("{e}; {TYPE_HINT}")))?;
        let g = group_of(ty, caps)?;
        let subset = subset_arg(sub, g.root_system().rank())?;
        return Ok(FiberData::from_flag(&g, subset)?);
    }
    let ranks = parse_ranks(s)?;
    FiberData::new(ranks).map_err(|e| Failure::Usage(e.to_string()))
}

fn parse_ranks(s: &str) -> CliResult<Vec<u64>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<u64>()
                .map_err(|_| Failure::Usage(format!("`{s}` is not a list of Chow ranks")))
        })
        .collect()
}

/// `{"terms":…}`, pure Chow ranks `"1,1"`, or a flag `"A1/"`.
fn parse_motive(s: &str, caps: &Caps) -> CliResult<TateSum> {
    let s = s.trim();
    if s.starts_with('{') {
        return serde_json::from_str(s).map_err(|e| Failure::Usage(format!("TateSum JSON: {e}")));
    }
    if let Some((ty, sub)) = s.split_once('/') {
        let ty: CartanType = ty.parse().map_err(|e: Error| Failure::Usage(format!("{e}; {TYPE_HINT}")))?;
        let g = group_of(ty, caps)?;
        let subset = subset_arg(sub, g.root_system().rank())?;
        return Ok(flag_motive(&g, subset)?);
    }
    Ok(TateSum::pure_from_ranks(&parse_ranks(s)?)?)
}

/// `{"coeffs":…}` or a polynomial in `L`.
fn parse_class(s: &str) -> CliResult<LPolynomial> {
    let s = s.trim();
    if s.starts_with('{') {
        return serde_json::from_str(s).map_err(|e| Failure::Usage(format!("LPolynomial JSON: {e}")));
    }
    s.parse().map_err(|e: Error| Failure::Usage(e.to_string()))
}

fn motive_lines(text: &mut String, motive: &TateSum) -> CliResult<Value> {
    writeln!(text, "motive: {motive}").unwrap();
    let mut extra = json!({ "motive": to_value(motive) });
    if motive.is_pure_tate() {
        let ranks = motive.pure_coefficients()?;
        writeln!(text, "chow ranks: {}", join(&ranks)).unwrap();
        extra["chow_ranks"] = to_value(&ranks);
    }
    if let Ok(class) = motive.euler_class() {
        writeln!(text, "class: {class}").unwrap();
        extra["class"] = to_value(&class);
    }
    Ok(extra)
}

fn lh_report(fiber: &FiberData, base: &TateSum) -> CliResult<Report> {
    let motive = leray_hirsch(fiber, base)?;
    let mut text = String::new();
    writeln!(text, "fiber chow ranks: {}", join(fiber.chow_ranks())).unwrap();
    writeln!(text, "base: {base}").unwrap();
    let mut json = motive_lines(&mut text, &motive)?;
    json["fiber"] = to_value(fiber);
    json["base"] = to_value(base);
    Ok(Report { json, text })
}

const SUMMAND_NOTE: &str = "contains M(X) as a summand";
const CHAR_P_NOTE: &str = "over a field of positive characteristic the summand statement is \
                           conditional (minuscule case, or the conjectures of Grothendieck and Murre)";

fn tower(fibers: &[FiberData], base: &TateSum) -> CliResult<Report> {
    let motive = tower_motive(fibers, base)?;
    let mut text = String::new();
    writeln!(text, "fibers: {}", fibers.len()).unwrap();
    writeln!(text, "base: {base}").unwrap();
    let mut json = motive_lines(&mut text, &motive)?;
    writeln!(text, "note: the tower's ambient motive {SUMMAND_NOTE}").unwrap();
    writeln!(text, "note: {CHAR_P_NOTE}").unwrap();
    json["fibers"] = to_value(&fibers);
    json["base"] = to_value(base);
    json["note"] = Value::from(SUMMAND_NOTE);
    json["conditional"] = Value::from(CHAR_P_NOTE);
    Ok(Report { json, text })
}

const CURVE_NOTE: &str = "for G-bundles over a curve C the Gysin triangle collapses at the class \
                          level to [G]·[C ∖ pts] + m·[G] = [G]·[C]; Zariski-local triviality is assumed";

fn filtration(
    ty: CartanType,
    base: &LPolynomial,
    interpretation: Interpretation,
    caps: &Caps,
) -> CliResult<Report> {
    let g = group_of(ty, caps)?;
    let w = Wonderful::new(&g)
        .with_interpretation(interpretation)
        .with_cell_cap(caps.cells);
    let tree = nested_filtration_report(&w, base)?;
    let mut text = String::new();
    writeln!(text, "type: {} (interpretation {interpretation})", g.root_system().name()).unwrap();
    writeln!(text, "base class: {base}").unwrap();
    writeln!(text, "triangles [boundary] + [orbit] = [closure]:").unwrap();
    write_node(&mut text, &tree, 1);
    writeln!(text, "note: {CURVE_NOTE}").unwrap();
    let json = json!({
        "type": g.root_system().name(),
        "interpretation": interpretation,
        "base": to_value(base),
        "tree": to_value(&tree),
        "note": CURVE_NOTE,
    });
    Ok(Report { json, text })
}

fn write_node(text: &mut String, node: &FiltrationNode, depth: usize) {
    writeln!(
        text,
        "{:indent$}face {}: ({}) + ({}) = ({}) [{}]",
        "",
        node.face.subset,
        node.left,
        node.right,
        node.middle,
        node.verdict,
        indent = 2 * depth
    )
    .unwrap();
    for c in &node.children {
        write_node(text, c, depth + 1);
    }
}

fn config(
    file: Option<&PathBuf>,
    boundary: Option<CartanType>,
    interpretation: Interpretation,
    caps: &Caps,
) -> CliResult<Report> {
    let c: Configuration = match (file, boundary) {
        (_, Some(ty)) => {
            let g = group_of(ty, caps)?;
            Wonderful::new(&g)
                .with_interpretation(interpretation)
                .with_cell_cap(caps.cells)
                .boundary_configuration()?
        }
        (Some(path), None) => {
            let mut raw = String::new();
            let read = if path.as_os_str() == "-" {
                std::io::stdin().read_to_string(&mut raw).map(|_| ())
            } else {
                std::fs::read_to_string(path).map(|s| raw = s)
            };
            read.map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str(&raw).map_err(|e| Failure::Usage(format!("configuration JSON: {e}")))?
        }
        (None, None) => unreachable!("clap requires a file or --boundary"),
    };
    let report = validate_configuration(&c);
    if !report.valid {
        return Err(Error::InvalidConfiguration(report).into());
    }
    let class = union_class(&c)?;
    let mut text = String::new();
    writeln!(text, "components: {}", c.components.len()).unwrap();
    for (k, comp) in c.components.iter().enumerate() {
        writeln!(text, "  {}. {}: {}", k + 1, comp.name, comp.class).unwrap();
    }
    writeln!(text, "validation: ok").unwrap();
    writeln!(text, "union class: {class}").unwrap();
    let json = json!({
        "configuration": to_value(&c),
        "validation": to_value(&report),
        "union_class": to_value(&class),
    });
    Ok(Report { json, text })
}

fn torus(r: u32, base: &TateSum) -> CliResult<Report> {
    let filt = torus_filtration_pieces(r, base)?;
    let total = filt.total_slice_rank()?;
    // Σ_p C(r,p)(−L)^p against (1−L)^r
    let mut lhs = LPolynomial::zero();
    for p in 0..=r {
        let c = i64::try_from(binomial(r, p)?).map_err(|_| Error::Overflow("binomial coefficient"))?;
        let sign = if p % 2 == 0 { 1 } else { -1 };
        lhs = lhs.checked_add(&LPolynomial::monomial(p, sign * c))?;
    }
    let rhs = LPolynomial::from_dense(&[1, -1]).checked_pow(r)?;
    let identity = lhs == rhs;
    let mut text = String::new();
    writeln!(text, "torus rank: {r}").unwrap();
    writeln!(text, "base: {base}").unwrap();
    for piece in &filt.pieces {
        writeln!(text, "  λ_{} (rank {}): {}", piece.p, piece.rank, piece.piece).unwrap();
    }
    writeln!(text, "total slice rank: {total}").unwrap();
    writeln!(
        text,
        "Σ C(r,p)(−L)^p = (1−L)^r: {}",
        if identity { "ok" } else { "FAILS" }
    )
    .unwrap();
    let json = json!({
        "torus_rank": r,
        "base": to_value(base),
        "pieces": to_value(&filt.pieces),
        "total_slice_rank": total,
        "euler_identity": identity,
    });
    Ok(Report { json, text })
}
