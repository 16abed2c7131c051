//! `mubkit`: build and check supersquares and mutually unbiased bases.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage or parse error,
//! 3 incomplete search.

mod render;

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use mubkit::gf2n::{dual_basis, is_selfdual};
use mubkit::json as mj;
use mubkit::mub::{build_mub_set, classify_states, structure, verify_states, Separability};
use mubkit::pauli::TranslationFrame;
use mubkit::squares::{
    build_complete_set, classify, default_basis, is_extraordinary_square, is_physical_striation, is_supersquare,
    search_complete_sets, verify_complete_set, CompleteSet, SearchOptions, SetType, Square, VerifyReport,
};
use mubkit::{Error, Field, FieldBasis, PhaseSpace, Point};

#[derive(Parser)]
#[command(
    name = "mubkit",
    version,
    about = "Exact supersquares and mutually unbiased bases over GF(2^n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Element table, traces, the trace-zero subgroup K and the selfdual basis.
    FieldInfo {
        #[arg(long, default_value_t = 4)]
        d: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Complete sets of mutually orthogonal extraordinary supersquares.
    #[command(subcommand)]
    Squares(SquaresCmd),
    /// Mutually unbiased bases built from a complete set.
    #[command(subcommand)]
    Mub(MubCmd),
}

#[derive(Subcommand)]
enum SquaresCmd {
    /// Build a complete set of the requested type.
    Gen {
        #[command(flatten)]
        set: SetArgs,
        /// Perturb the square with this letter (A, B, ...) by swapping two cells.
        #[arg(long)]
        perturb: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check a square or complete-set JSON file.
    Verify {
        input: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Latin / row-Latin / column-Latin / plain, per square.
    Classify {
        /// Square or complete-set JSON; without it the set is built from the flags.
        input: Option<PathBuf>,
        #[command(flatten)]
        set: SetArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Enumerate every complete set and report a census by type.
    Search {
        #[arg(long, default_value_t = 4)]
        d: usize,
        #[arg(long, env = "MUBKIT_WORKERS", default_value_t = 1)]
        workers: usize,
        /// Seconds before giving up with a partial census.
        #[arg(long)]
        time_budget: Option<f64>,
        /// Stop after this many sets.
        #[arg(long)]
        limit: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Subcommand)]
enum MubCmd {
    /// Operator words, basis states and the class correspondence.
    Gen {
        #[command(flatten)]
        set: SetArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Re-check a MUB set JSON file exactly.
    Verify {
        input: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// The entanglement structure (n_f, n_b, n_ns).
    Structure {
        /// MUB set JSON; without it the set is built from the flags.
        input: Option<PathBuf>,
        #[command(flatten)]
        set: SetArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Clone)]
struct SetArgs {
    #[arg(long, default_value_t = 4)]
    d: usize,
    #[arg(long = "type", default_value = "II")]
    set_type: String,
    /// First basis vector as x,y (tokens 0, 1, m, m3, mu^3 or bitmasks).
    #[arg(long)]
    v1: Option<String>,
    #[arg(long)]
    v2: Option<String>,
    /// Field basis E for the translation operators, e.g. m,m2; F is its dual.
    #[arg(long)]
    basis: Option<String>,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Ascii,
    Json,
}

#[derive(Args, Clone)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Ascii)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure with its exit code.
struct Fail {
    code: u8,
    message: String,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Consistency(_)) { 1 } else { 2 };
        Fail {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Fail {
    Fail {
        code: 2,
        message: msg.into(),
    }
}

/// Result of a command: text to emit and the exit code.
struct Output {
    text: String,
    code: u8,
}

fn emit(out: &OutputArgs, json: impl FnOnce() -> Value, ascii: impl FnOnce() -> String, code: u8) -> Output {
    let text = match out.format {
        Format::Json => mj::to_canonical_string(&json()) + "\n",
        Format::Ascii => ascii(),
    };
    Output { text, code }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out_args, result) = match &cli.command {
        Command::FieldInfo { d, out } => (out, field_info(*d, out)),
        Command::Squares(SquaresCmd::Gen {
            set,
            perturb,
            seed,
            out,
        }) => (out, squares_gen(set, perturb.as_deref(), *seed, out)),
        Command::Squares(SquaresCmd::Verify { input, out }) => (out, squares_verify(input, out)),
        Command::Squares(SquaresCmd::Classify { input, set, out }) => {
            (out, squares_classify(input.as_deref(), set, out))
        }
        Command::Squares(SquaresCmd::Search {
            d,
            workers,
            time_budget,
            limit,
            out,
        }) => (out, squares_search(*d, *workers, *time_budget, *limit, out)),
        Command::Mub(MubCmd::Gen { set, out }) => (out, mub_gen(set, out)),
        Command::Mub(MubCmd::Verify { input, out }) => (out, mub_verify(input, out)),
        Command::Mub(MubCmd::Structure { input, set, out }) => (out, mub_structure(input.as_deref(), set, out)),
    };
    match result {
        Ok(output) => {
            match &out_args.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &output.text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => {
                    // A closed pipe (e.g. `| head`) is not an error worth reporting.
                    let _ = std::io::stdout().write_all(output.text.as_bytes());
                }
            }
            ExitCode::from(output.code)
        }
        Err(fail) => {
            eprintln!("error: {}", fail.message);
            ExitCode::from(fail.code)
        }
    }
}

fn space(d: usize) -> Result<PhaseSpace, Fail> {
    Ok(PhaseSpace::of_order(d)?)
}

fn parse_point(ps: &PhaseSpace, text: &str) -> Result<Point, Fail> {
    let trimmed = text.trim().trim_start_matches('(').trim_end_matches(')');
    let parts: Vec<&str> = trimmed.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(usage(format!("point {text:?} must be written x,y")));
    }
    let f = ps.field();
    Ok(Point::new(f.parse(parts[0])?, f.parse(parts[1])?))
}

fn build_set(set: &SetArgs) -> Result<(PhaseSpace, CompleteSet), Fail> {
    let ps = space(set.d)?;
    let t = SetType::parse(&set.set_type)?;
    let (dv1, dv2) = default_basis(&ps, t);
    let v1 = set
        .v1
        .as_deref()
        .map(|s| parse_point(&ps, s))
        .transpose()?
        .unwrap_or(dv1);
    let v2 = set
        .v2
        .as_deref()
        .map(|s| parse_point(&ps, s))
        .transpose()?
        .unwrap_or(dv2);
    let c = build_complete_set(&ps, t, v1, v2)?;
    Ok((ps, c))
}

fn frame(field: Field, basis: Option<&str>) -> Result<TranslationFrame, Fail> {
    let Some(text) = basis else {
        return Ok(TranslationFrame::selfdual(field));
    };
    let elems = text
        .split(',')
        .map(|t| field.parse(t.trim()))
        .collect::<mubkit::Result<Vec<_>>>()?;
    let e = FieldBasis::new(&field, elems)?;
    let f = dual_basis(&field, &e)?;
    Ok(TranslationFrame::new(field, e, f)?)
}

fn read_json(path: &Path) -> Result<Value, Fail> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(mj::parse_text(&text)?)
}

/// The order stored in a square, set or MUB document.
fn doc_order(v: &Value) -> Result<usize, Fail> {
    let d = v
        .get("d")
        .or_else(|| v.get("squares").and_then(|s| s.get(0)).and_then(|s| s.get("d")))
        .and_then(Value::as_u64)
        .ok_or_else(|| usage("cannot find the order d in the document"))?;
    Ok(d as usize)
}

fn field_info(d: usize, out: &OutputArgs) -> Result<Output, Fail> {
    let ps = space(d)?;
    let f = *ps.field();
    let elems = f.elements_by_log();
    let k: Vec<_> = ps.trace_zero_subgroup().elements().to_vec();
    let sd = f.selfdual_basis();
    let verified = is_selfdual(&f, &sd);
    let json = || {
        json!({
            "field": mj::field_to_json(&f),
            "elements": elems.iter().map(|&e| json!({
                "name": f.display(e),
                "mask": e.bits(),
                "trace": f.trace(e).bits(),
            })).collect::<Vec<_>>(),
            "K": k.iter().map(|e| e.bits()).collect::<Vec<_>>(),
            "selfdual_basis": sd.elements().iter().map(|e| e.bits()).collect::<Vec<_>>(),
            "selfdual_verified": verified,
        })
    };
    let ascii = || render::field_info(&f, &k, &sd, verified);
    Ok(emit(out, json, ascii, if verified { 0 } else { 1 }))
}

fn squares_gen(set: &SetArgs, perturb: Option<&str>, seed: u64, out: &OutputArgs) -> Result<Output, Fail> {
    let (ps, c) = build_set(set)?;
    let mut squares = c.squares();
    if let Some(letter) = perturb {
        let idx = render::letter_index(letter)
            .filter(|&i| i < squares.len())
            .ok_or_else(|| {
                usage(format!(
                    "--perturb expects a square letter A..{}",
                    render::square_letter(squares.len() - 1)
                ))
            })?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        squares[idx] = squares[idx].perturb(&mut rng)?;
    }
    let json = || {
        let mut v = mj::complete_set_to_json(&c);
        v["squares"] = Value::Array(squares.iter().map(mj::square_to_json).collect());
        v
    };
    let ascii = || render::complete_set(&ps, &c, &squares);
    Ok(emit(out, json, ascii, 0))
}

fn square_report(ps: &PhaseSpace, s: &Square) -> VerifyReport {
    let mut report = VerifyReport::default();
    let fail = |ok: bool, msg: &str| if ok { vec![] } else { vec![msg.to_string()] };
    report.push(
        "supersquare",
        fail(is_supersquare(ps, s), "the classes are not cosets of one subgroup"),
    );
    report.push(
        "extraordinary",
        fail(
            is_extraordinary_square(ps, s),
            "the class through the origin is not an extraordinary subgroup",
        ),
    );
    report.push(
        "physical_striation",
        fail(
            is_physical_striation(ps, s),
            "some class is not invariant under the extraordinary subgroup",
        ),
    );
    report
}

fn squares_verify(input: &Path, out: &OutputArgs) -> Result<Output, Fail> {
    let v = read_json(input)?;
    let ps = space(doc_order(&v)?)?;
    let report = if v.get("squares").is_some() {
        let doc = mj::complete_set_from_json(&ps, &v)?;
        verify_complete_set(&ps, &doc.squares)
    } else {
        square_report(&ps, &mj::square_from_json(&ps, &v)?)
    };
    let code = if report.passed() { 0 } else { 1 };
    let json = || json!({ "passed": report.passed(), "checks": serde_json::to_value(&report.checks).unwrap() });
    Ok(emit(out, json, || format!("{report}\n"), code))
}

fn squares_classify(input: Option<&Path>, set: &SetArgs, out: &OutputArgs) -> Result<Output, Fail> {
    let (ps, squares) = match input {
        Some(path) => {
            let v = read_json(path)?;
            let ps = space(doc_order(&v)?)?;
            let squares = if v.get("squares").is_some() {
                mj::complete_set_from_json(&ps, &v)?.squares
            } else {
                vec![mj::square_from_json(&ps, &v)?]
            };
            (ps, squares)
        }
        None => {
            let (ps, c) = build_set(set)?;
            (ps, c.squares())
        }
    };
    let kinds: Vec<&str> = squares.iter().map(|s| classify(&ps, s).name()).collect();
    let json = || json!({ "d": ps.d(), "kinds": kinds });
    let ascii = || {
        kinds
            .iter()
            .enumerate()
            .map(|(i, k)| format!("{} {k}\n", render::square_letter(i)))
            .collect::<String>()
    };
    Ok(emit(out, json, ascii, 0))
}

fn squares_search(
    d: usize,
    workers: usize,
    budget: Option<f64>,
    limit: Option<usize>,
    out: &OutputArgs,
) -> Result<Output, Fail> {
    let ps = space(d)?;
    let time_budget = match budget {
        Some(s) if !(s.is_finite() && s >= 0.0) => return Err(usage("--time-budget must be a non-negative number")),
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    let outcome = search_complete_sets(
        &ps,
        &SearchOptions {
            workers,
            time_budget,
            limit,
        },
    )?;
    let census = outcome.census();
    let code = if outcome.complete { 0 } else { 3 };
    let json = || {
        json!({
            "d": d,
            "complete": outcome.complete,
            "census": census.iter().map(|(t, n)| (t.name().to_string(), json!(n))).collect::<serde_json::Map<_, _>>(),
            "sets": outcome.sets.iter().map(|s| json!({
                "type": s.set_type().name(),
                "v1": s.basis().map_or(Value::Null, |b| mj::point_to_json(b.0)),
                "v2": s.basis().map_or(Value::Null, |b| mj::point_to_json(b.1)),
                "generators": s.generators().into_iter().map(mj::subgroup_to_json).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    };
    let ascii = || render::census(&ps, &outcome);
    Ok(emit(out, json, ascii, code))
}

fn mub_gen(set: &SetArgs, out: &OutputArgs) -> Result<Output, Fail> {
    let (ps, c) = build_set(set)?;
    let fr = frame(*ps.field(), set.basis.as_deref())?;
    let m = build_mub_set(&fr, &c)?;
    let s = if ps.d() == 8 { Some(structure(&m)?) } else { None };
    let json = || {
        let mut v = mj::mub_set_to_json(&m);
        v["unbiased"] = json!(true);
        v
    };
    let ascii = || render::mub_set(&ps, &m, s);
    Ok(emit(out, json, ascii, 0))
}

fn structure_of_states(bases: &[Vec<mubkit::mub::UnnormalizedState>]) -> Result<[usize; 3], Fail> {
    let mut counts = [0; 3];
    for b in bases {
        let idx = match classify_states(b)? {
            Separability::Factorized => 0,
            Separability::Biseparable => 1,
            Separability::Nonseparable => 2,
        };
        counts[idx] += 1;
    }
    Ok(counts)
}

fn mub_verify(input: &Path, out: &OutputArgs) -> Result<Output, Fail> {
    let v = read_json(input)?;
    let ps = space(doc_order(&v)?)?;
    let doc = mj::mub_set_from_json(&ps, &v)?;
    let pairs: Vec<_> = doc.bases.iter().map(|b| (b.words.clone(), b.states.clone())).collect();
    let mut report = verify_states(doc.d, &pairs);
    if let Some(claimed) = doc.structure {
        let states: Vec<_> = doc.bases.iter().map(|b| b.states.clone()).collect();
        let failures = match structure_of_states(&states) {
            Ok(actual) if actual == claimed => vec![],
            Ok(actual) => vec![format!("claimed {claimed:?}, states give {actual:?}")],
            Err(f) => vec![f.message],
        };
        report.push("structure", failures);
    }
    let code = if report.passed() { 0 } else { 1 };
    let json = || json!({ "passed": report.passed(), "checks": serde_json::to_value(&report.checks).unwrap() });
    Ok(emit(out, json, || format!("{report}\n"), code))
}

fn mub_structure(input: Option<&Path>, set: &SetArgs, out: &OutputArgs) -> Result<Output, Fail> {
    let (d, counts) = match input {
        Some(path) => {
            let v = read_json(path)?;
            let ps = space(doc_order(&v)?)?;
            let doc = mj::mub_set_from_json(&ps, &v)?;
            let states: Vec<_> = doc.bases.into_iter().map(|b| b.states).collect();
            (ps.d(), structure_of_states(&states)?)
        }
        None => {
            let (ps, c) = build_set(set)?;
            let fr = frame(*ps.field(), set.basis.as_deref())?;
            let s = structure(&build_mub_set(&fr, &c)?)?;
            (ps.d(), [s.n_f, s.n_b, s.n_ns])
        }
    };
    let json = || json!({ "d": d, "structure": counts });
    let ascii = || format!("({},{},{})\n", counts[0], counts[1], counts[2]);
    Ok(emit(out, json, ascii, 0))
}
