use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use hflab::construct::{group_extension, prime, quotient, scheme_to_hyperfield, SquareClassSubgroup};
use hflab::corpus::{extension_entry, finite_field_entry, krasner_entry, padic_entry, CorpusEntry};
use hflab::document::{canonical_json, DocumentError, HyperfieldDocument, ValueSetDocument};
use hflab::fields::{gauss_extend, q_2adic, q_finite_field, q_local, q_padic, FiniteFieldSpec, PadicOracleConfig};
use hflab::hyperfield::{check_axioms, find_isomorphisms, FiniteHyperfield};
use hflab::report;
use hflab::rigidity::{basic_part, detect_valuation_subgroups};
use hflab::witt::witt_ring;

#[derive(Parser)]
#[command(name = "hflab", version, about = "Finite hyperfields, quadratic form schemes and Witt rings")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Krasner,
    Fq,
    Local,
    Padic,
    #[value(name = "2adic")]
    TwoAdic,
    Extension,
    Scheme,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a hyperfield document.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        r: Option<usize>,
        /// A file, `-`, or one of `krasner`, `fqN`, `padicP`, `2adic`.
        #[arg(long)]
        base: Option<String>,
        /// Hensel lifting depth for the p-adic oracles.
        #[arg(long)]
        precision: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the axiom suite on a document.
    Check { file: String },
    /// Find isomorphisms between two documents.
    Iso {
        a: String,
        b: String,
        #[arg(long)]
        all: bool,
    },
    /// The prime hyperfield of a document.
    Prime {
        file: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quotient by a multiplicative subgroup.
    Quotient {
        file: String,
        #[arg(long, value_delimiter = ',')]
        subgroup: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Group extension of rank R.
    Extend {
        file: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Witt ring summary.
    Witt { file: String },
    /// Rigid elements and basic part of a subgroup.
    Rigid {
        file: String,
        #[arg(long, value_delimiter = ',')]
        subgroup: Vec<String>,
    },
    /// Valuation-shaped subgroups.
    Detect { file: String },
    /// Gauss valuation of a rational function.
    Gauss {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        expr: String,
    },
}

/// Exit 1: the input is well formed but fails a check. Exit 2: bad input.
enum Failure {
    Validation(String),
    Malformed(String),
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        match e {
            DocumentError::AxiomsFailed(_) => Failure::Validation(e.to_string()),
            other => Failure::Malformed(other.to_string()),
        }
    }
}

fn malformed(e: impl std::fmt::Display) -> Failure {
    Failure::Malformed(e.to_string())
}

fn validation(e: impl std::fmt::Display) -> Failure {
    Failure::Validation(e.to_string())
}

struct Output {
    text: String,
    code: u8,
    out: Option<PathBuf>,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0, out: None }
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| malformed(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| malformed(format!("{path}: {e}")))
    }
}

fn load(path: &str) -> Result<(FiniteHyperfield, Map<String, Value>), Failure> {
    let doc = HyperfieldDocument::parse(&read_input(path)?)?;
    let h = doc.to_hyperfield()?;
    Ok((h, doc.metadata))
}

fn render(format: Format, value: &Value, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => canonical_json(value),
        Format::Text => {
            let mut s = text();
            if !s.ends_with('\n') {
                s.push('\n');
            }
            s
        }
    }
}

fn document(format: Format, h: &FiniteHyperfield, metadata: Map<String, Value>, out: Option<PathBuf>) -> Output {
    let text = match format {
        Format::Json => HyperfieldDocument::from_hyperfield(h, metadata).to_canonical_string(),
        Format::Text => format!("{h}\n"),
    };
    Output { text, code: 0, out }
}

/// Named bases use the default oracle precision.
fn builtin_base(name: &str) -> Result<Option<CorpusEntry>, Failure> {
    if name == "krasner" {
        return Ok(Some(krasner_entry()));
    }
    if name == "2adic" {
        return padic_entry(2).map(Some).map_err(validation);
    }
    if let Some(q) = name.strip_prefix("fq").and_then(|s| s.trim_start_matches(':').parse::<u32>().ok()) {
        return finite_field_entry(q).map(Some).map_err(malformed);
    }
    if let Some(p) = name.strip_prefix("padic").and_then(|s| s.trim_start_matches(':').parse::<u64>().ok()) {
        return padic_entry(p).map(Some).map_err(validation);
    }
    Ok(None)
}

fn require<T>(v: Option<T>, flag: &str, kind: &str) -> Result<T, Failure> {
    v.ok_or_else(|| malformed(format!("--kind {kind} needs {flag}")))
}

fn padic_config(p: u64, precision: Option<u32>) -> Result<PadicOracleConfig, Failure> {
    match precision {
        Some(n) => PadicOracleConfig::new(p, n).map_err(malformed),
        None => PadicOracleConfig::default_for(p).map_err(malformed),
    }
}

fn meta(pairs: Vec<(&str, Value)>) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

#[allow(clippy::too_many_arguments)]
fn gen(
    format: Format,
    kind: Kind,
    q: Option<u32>,
    p: Option<u64>,
    r: Option<usize>,
    base: Option<String>,
    precision: Option<u32>,
    out: Option<PathBuf>,
) -> Result<Output, Failure> {
    let (h, metadata) = match kind {
        Kind::Krasner => (FiniteHyperfield::krasner(), meta(vec![("generator", "krasner".into())])),
        Kind::Fq => {
            let q = require(q, "--q", "fq")?;
            let spec = FiniteFieldSpec::from_q(q).map_err(malformed)?;
            (q_finite_field(spec), meta(vec![("generator", "fq".into()), ("q", q.into())]))
        }
        Kind::Local => {
            let q = require(q, "--q", "local")?;
            let spec = FiniteFieldSpec::from_q(q).map_err(malformed)?;
            (q_local(spec).map_err(malformed)?, meta(vec![("generator", "local".into()), ("q", q.into())]))
        }
        Kind::Padic => {
            let p = require(p, "--p", "padic")?;
            let cfg = padic_config(p, precision)?;
            let h = q_padic(p, cfg).map_err(validation)?;
            (h, meta(vec![("generator", "padic".into()), ("p", p.into()), ("precision", cfg.precision.into())]))
        }
        Kind::TwoAdic => {
            let cfg = padic_config(2, precision)?;
            (q_2adic(cfg).map_err(validation)?, meta(vec![("generator", "2adic".into()), ("precision", cfg.precision.into())]))
        }
        Kind::Extension => {
            let base = require(base, "--base", "extension")?;
            let r = require(r, "--r", "extension")?;
            match builtin_base(&base)? {
                Some(entry) => {
                    let e = extension_entry(&entry, r).map_err(validation)?;
                    (e.hyperfield, e.metadata)
                }
                None => {
                    let (h0, m0) = load(&base)?;
                    let (h, _) = group_extension(&h0, r).map_err(validation)?;
                    let mut m = meta(vec![("generator", "extension".into()), ("r", r.into())]);
                    m.insert("base".into(), Value::Object(m0));
                    (h, m)
                }
            }
        }
        Kind::Scheme => {
            let base = require(base, "--base", "scheme")?;
            let doc = ValueSetDocument::parse(&read_input(&base)?)?;
            let table = doc.to_table()?;
            let h = scheme_to_hyperfield(&table).map_err(validation)?;
            (h, meta(vec![("generator", "scheme".into())]))
        }
    };
    Ok(document(format, &h, metadata, out))
}

fn subgroup_from(h: &FiniteHyperfield, labels: &[String]) -> Result<SquareClassSubgroup, Failure> {
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let refs = if refs.is_empty() { vec![h.label(h.one())] } else { refs };
    SquareClassSubgroup::from_labels(h, &refs).map_err(malformed)
}

fn run(cli: Cli) -> Result<Output, Failure> {
    let f = cli.format;
    match cli.command {
        Command::Gen { kind, q, p, r, base, precision, out } => gen(f, kind, q, p, r, base, precision, out),
        Command::Check { file } => {
            let doc = HyperfieldDocument::parse(&read_input(&file)?)?;
            let tables = doc.to_tables()?;
            let rep = check_axioms(&tables);
            let text = render(f, &report::axiom_report_json(&rep), || rep.to_string());
            Ok(Output { text, code: if rep.all_pass() { 0 } else { 1 }, out: None })
        }
        Command::Iso { a, b, all } => {
            let (h1, _) = load(&a)?;
            let (h2, _) = load(&b)?;
            let isos = find_isomorphisms(&h1, &h2, if all { usize::MAX } else { 1 });
            let value = json!(isos.iter().map(report::morphism_json).collect::<Vec<_>>());
            let text = render(f, &value, || {
                if isos.is_empty() {
                    return "no isomorphism".into();
                }
                isos.iter()
                    .map(|m| m.label_pairs().iter().map(|(x, y)| format!("{x} ↦ {y}")).collect::<Vec<_>>().join(", "))
                    .collect::<Vec<_>>()
                    .join("\n")
            });
            Ok(Output { text, code: if isos.is_empty() { 1 } else { 0 }, out: None })
        }
        Command::Prime { file, out } => {
            let (h, mut m) = load(&file)?;
            m.insert("operation".into(), "prime".into());
            Ok(document(f, &prime(&h), m, out))
        }
        Command::Quotient { file, subgroup, out } => {
            let (h, mut m) = load(&file)?;
            let t = subgroup_from(&h, &subgroup)?;
            let (q, _) = quotient(&h, &t).map_err(validation)?;
            m.insert("operation".into(), json!({ "quotient": t.labels() }));
            Ok(document(f, &q, m, out))
        }
        Command::Extend { file, r, out } => {
            let (h, m0) = load(&file)?;
            let (e, _) = group_extension(&h, r).map_err(validation)?;
            let mut m = meta(vec![("generator", "extension".into()), ("r", r.into())]);
            m.insert("base".into(), Value::Object(m0));
            Ok(document(f, &e, m, out))
        }
        Command::Witt { file } => {
            let (h, _) = load(&file)?;
            let ring = witt_ring(&h).map_err(validation)?;
            let text = render(f, &report::witt_ring_json(&ring), || {
                let mut s = format!(
                    "|W| = {}\norder of <1> = {}\nI^2 = 0: {}\n",
                    ring.len(),
                    ring.order_of_one(),
                    ring.fundamental_ideal_square_vanishes()
                );
                for (i, c) in ring.classes().iter().enumerate() {
                    s.push_str(&format!("{i}: {c}\n"));
                }
                s
            });
            Ok(Output::ok(text))
        }
        Command::Rigid { file, subgroup } => {
            let (h, _) = load(&file)?;
            let t = subgroup_from(&h, &subgroup)?;
            let r = basic_part(&h, &t);
            let text = render(f, &report::rigidity_report_json(&r), || {
                format!(
                    "T = {:?}\nB(T) = {:?}\n(H*:T) = {}\n(H*:B(T)) = {}\nexceptional: {}",
                    t.labels(),
                    r.basic_labels(),
                    r.subgroup_index,
                    r.basic_index.map_or("-".to_string(), |i| i.to_string()),
                    r.exceptional
                )
            });
            Ok(Output::ok(text))
        }
        Command::Detect { file } => {
            let (h, _) = load(&file)?;
            let d = detect_valuation_subgroups(&h).map_err(validation)?;
            let text = render(f, &report::decomposition_json(&d), || {
                let mut s = format!("{} subgroups examined\n", d.subgroups_examined);
                for c in &d.candidates {
                    let uppers: Vec<Vec<String>> = c.uppers.iter().map(|u| u.labels()).collect();
                    s.push_str(&format!("T = {:?}: {} (H*:U) = {} U ∈ {:?}\n", c.subgroup.labels(), c.shape.name(), c.upper_index, uppers));
                }
                s
            });
            Ok(Output::ok(text))
        }
        Command::Gauss { p, expr } => {
            let v = gauss_extend(p, &expr).map_err(malformed)?;
            let text = render(f, &json!(v), || v.map_or("inf".to_string(), |x| x.to_string()));
            Ok(Output::ok(text))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(o) => {
            let written = match &o.out {
                Some(path) => fs::write(path, &o.text),
                None => io::stdout().write_all(o.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("hflab: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(o.code)
        }
        Err(Failure::Validation(msg)) => {
            println!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Malformed(msg)) => {
            eprintln!("hflab: {msg}");
            ExitCode::from(2)
        }
    }
}
