//! `tlab`: command-line front end to the t-structure laboratory.

mod commands;
mod render;
mod sugar;

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use tlab::Error;

use commands::{parse_window, Inputs, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    Koszul,
    Cech,
    Cohomology,
    Member,
    Truncate,
    Classify,
    Generate,
    Resolve,
    Enumerate,
    Selftest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "tlab", version, about = "t-structures over Z/n: oracles, truncations and enumeration")]
pub struct Args {
    #[arg(value_enum)]
    pub verb: Verb,
    /// Modulus n of the base ring Z/n.
    #[arg(long)]
    pub ring: Option<u64>,
    /// JSON input document (`-` for stdin). Flags override its fields.
    #[arg(long = "in")]
    pub input: Option<String>,
    /// Write the output document here instead of stdout.
    #[arg(long)]
    pub out: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Coresolution depth for `resolve`.
    #[arg(long, default_value_t = 5)]
    pub depth: usize,
    /// Cutoff window `a:b`.
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    pub window: Option<(i64, i64)>,
    /// Worker threads for `selftest` (0 = all cores).
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Filtration as JSON (`cutoffs` or `jumps` form).
    #[arg(long, allow_hyphen_values = true)]
    pub filtration: Option<String>,
    /// Complex as JSON or shorthand: `stalk(d,[n])`, `K(d)[k]`.
    #[arg(long, allow_hyphen_values = true)]
    pub complex: Option<String>,
    /// Generator list, e.g. `[K(2)[-1], K(3)[0]]`.
    #[arg(long, allow_hyphen_values = true)]
    pub gens: Option<String>,
    /// Ring elements for `koszul` and `cech`, comma separated.
    #[arg(long)]
    pub elements: Option<String>,
    /// Oracle side for `member`: aisle, coaisle or co-t.
    #[arg(long)]
    pub side: Option<String>,
    /// Single oracle for `member`, by registered name.
    #[arg(long)]
    pub oracle: Option<String>,
    /// Infinite cutoffs for `enumerate`: none, neg-only or both.
    #[arg(long)]
    pub infinities: Option<String>,
}

const EXIT_DOMAIN: u8 = 2;
const EXIT_DISAGREEMENT: u8 = 3;

fn read_input(path: &str) -> Result<String, Error> {
    let mut s = String::new();
    if path == "-" {
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Invalid(format!("cannot read stdin: {e}")))?;
    } else {
        s = fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {path}: {e}")))?;
    }
    Ok(s)
}

/// Hash of every input that can affect the output.
fn input_hash(args: &Args, doc: Option<&str>) -> String {
    let canonical = json!({
        "verb": format!("{:?}", args.verb).to_lowercase(),
        "ring": args.ring,
        "in": doc,
        "seed": args.seed,
        "depth": args.depth,
        "window": args.window,
        "filtration": args.filtration,
        "complex": args.complex,
        "gens": args.gens,
        "elements": args.elements,
        "side": args.side,
        "oracle": args.oracle,
        "infinities": args.infinities,
    });
    hex::encode(Sha256::digest(canonical.to_string().as_bytes()))
}

fn dispatch(args: &Args, doc: Option<Value>) -> Result<Outcome, Error> {
    let inputs = Inputs::new(args, doc);
    match args.verb {
        Verb::Koszul => commands::koszul_cmd(&inputs),
        Verb::Cech => commands::cech_cmd(&inputs),
        Verb::Cohomology => commands::cohomology_cmd(&inputs),
        Verb::Member => commands::member_cmd(&inputs),
        Verb::Truncate => commands::truncate_cmd(&inputs),
        Verb::Classify => commands::classify_cmd(&inputs),
        Verb::Generate => commands::generate_cmd(&inputs),
        Verb::Resolve => commands::resolve_cmd(&inputs),
        Verb::Enumerate => commands::enumerate_cmd(&inputs),
        Verb::Selftest => commands::selftest_cmd(&inputs),
    }
}

fn emit(args: &Args, text: &str) -> io::Result<()> {
    match &args.out {
        Some(path) => fs::write(path, text),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

fn run(args: &Args) -> ExitCode {
    let raw = match args.input.as_deref().map(read_input).transpose() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("tlab: {e}");
            return ExitCode::from(EXIT_DOMAIN);
        }
    };
    let hash = input_hash(args, raw.as_deref());
    let verb = format!("{:?}", args.verb).to_lowercase();
    let mut doc = json!({
        "tool": "tlab",
        "version": env!("CARGO_PKG_VERSION"),
        "verb": verb,
        "input_sha256": hash,
    });
    let parsed = match raw.as_deref().map(serde_json::from_str::<Value>).transpose() {
        Ok(v) => v,
        Err(e) => {
            eprintln!("tlab: input document is not JSON: {e}");
            return ExitCode::from(EXIT_DOMAIN);
        }
    };
    let (code, ok) = match dispatch(args, parsed) {
        Ok(outcome) => {
            doc["result"] = outcome.result;
            doc["status"] = json!(if outcome.disagreement { "disagreement" } else { "ok" });
            if outcome.disagreement {
                (EXIT_DISAGREEMENT, false)
            } else {
                (0, true)
            }
        }
        Err(e) => {
            eprintln!("tlab: {e}");
            let pointer = match &e {
                Error::Parse { pointer, .. } => Some(pointer.clone()),
                _ => None,
            };
            doc["error"] = json!({ "message": e.to_string(), "pointer": pointer });
            // a failed self-check is a defect, not bad input
            let code = if matches!(e, Error::Verification(_)) { EXIT_DISAGREEMENT } else { EXIT_DOMAIN };
            doc["status"] = json!(if code == EXIT_DISAGREEMENT { "disagreement" } else { "error" });
            (code, false)
        }
    };
    let text = match args.format {
        Format::Json => serde_json::to_string_pretty(&doc).expect("serializable") + "\n",
        Format::Text => render::text(&doc),
    };
    if let Err(e) = emit(args, &text) {
        eprintln!("tlab: cannot write output: {e}");
        return ExitCode::from(EXIT_DOMAIN);
    }
    if !ok && code == EXIT_DISAGREEMENT {
        eprintln!("tlab: internal consistency check failed");
    }
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let args = Args::parse();
    run(&args)
}
