//! Command-line front end. Every verb produces one JSON value which is
//! printed as is (`--format json`) or flattened into `key: value` lines.

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{format_rational, ExactVector};
use crate::flags::{
    catalogue, congruent_intersection, maximal_antipodal, noncongruent_intersection, tightness_count, BasePoint,
    Subject,
};
use crate::oracle;
use crate::rootsys::{Family, RootSystem};
use crate::triads::{
    check_axioms, exchange, fundamental_cell, gamma_contains, gamma_contains_reduced, is_regular, st_point,
    st_point_direct, PiPoint, SymmetricTriad,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "flagtriad", version, about = "Symmetric triads and intersections of real flag manifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
    #[arg(long, global = true, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, clap::Args)]
pub struct Source {
    /// Catalogue pair: su2n-so-sp, su-n-so-rank1 or su-n-so.
    #[arg(long)]
    pub pair: Option<String>,
    /// Size parameter of the catalogue pair.
    #[arg(long)]
    pub n: Option<usize>,
    /// Triad in the exchange format.
    #[arg(long)]
    pub triad_file: Option<std::path::PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Roots of a classical or exceptional root system.
    Roots {
        #[arg(long)]
        family: String,
        #[arg(long)]
        rank: usize,
    },
    /// Show a triad and its axiom report.
    Triad {
        #[command(flatten)]
        source: Source,
        /// Print the triad in the exchange format only.
        #[arg(long)]
        emit: bool,
    },
    /// Regularity of a point `H = pi * q`.
    Regular {
        #[command(flatten)]
        source: Source,
        #[arg(long = "H", allow_hyphen_values = true)]
        h: String,
    },
    /// Fundamental cell data.
    Cell {
        #[command(flatten)]
        source: Source,
    },
    /// Membership of `H` in Gamma.
    Gamma {
        #[command(flatten)]
        source: Source,
        #[arg(long = "H", allow_hyphen_values = true)]
        h: String,
    },
    /// The regular point `H_0` of order `n`.
    StPoint {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        order: Option<u64>,
    },
    /// The intersection of the two real flag manifolds at `H`.
    Intersect {
        #[command(flatten)]
        source: Source,
        #[arg(long = "H", allow_hyphen_values = true)]
        h: String,
        #[arg(long, allow_hyphen_values = true)]
        x0: Option<String>,
    },
    /// The maximal antipodal set `W(Delta) x0`.
    Antipodal {
        #[arg(long)]
        family: String,
        #[arg(long)]
        rank: usize,
        #[arg(long, allow_hyphen_values = true)]
        x0: String,
    },
    /// Cardinality of the discrete intersection and the reference count.
    Tight {
        #[command(flatten)]
        source: Source,
        #[arg(long, allow_hyphen_values = true)]
        x0: Option<String>,
    },
    /// Numerical certificate for a catalogue pair.
    Oracle {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "H", allow_hyphen_values = true)]
        h: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of points in the dimension grid.
        #[arg(long, default_value_t = 200)]
        grid: usize,
    },
}

fn vec_json(v: &ExactVector) -> Value {
    json!(v.to_strings())
}

fn list_json(vs: &[ExactVector]) -> Value {
    Value::Array(vs.iter().map(vec_json).collect())
}

fn read_triad(path: &std::path::Path) -> Result<SymmetricTriad> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    exchange::parse_triad(&text)
}

enum Loaded {
    Catalogue(catalogue::CatalogueEntry),
    File(SymmetricTriad),
}

impl Loaded {
    fn triad(&self) -> Result<SymmetricTriad> {
        match self {
            Loaded::File(t) => Ok(t.clone()),
            Loaded::Catalogue(e) => match e.triad() {
                Some(t) => Ok(t.clone()),
                None => Err(Error::Invalid(format!("{} is a congruent pair, not a triad", e.name))),
            },
        }
    }
}

fn load(source: &Source) -> Result<Loaded> {
    match (&source.pair, &source.triad_file) {
        (Some(_), Some(_)) => Err(Error::Invalid("give either --pair or --triad-file".into())),
        (Some(p), None) => Ok(Loaded::Catalogue(catalogue::lookup(p, source.n)?)),
        (None, Some(f)) => Ok(Loaded::File(read_triad(f)?)),
        (None, None) => Err(Error::Invalid("one of --pair or --triad-file is required".into())),
    }
}

fn triad_json(t: &SymmetricTriad) -> Value {
    let mults = |m: Option<&std::collections::BTreeMap<ExactVector, u32>>| {
        m.map(|m| {
            Value::Array(
                m.iter()
                    .filter(|(r, _)| r.is_lex_positive())
                    .map(|(r, k)| json!({"root": r.to_strings(), "mult": k}))
                    .collect(),
            )
        })
        .unwrap_or(Value::Null)
    };
    json!({
        "ambient_dim": t.ambient_dim(),
        "dim_a": t.dim_a(),
        "sigma_tilde": list_json(t.sigma_tilde()),
        "sigma": list_json(t.sigma()),
        "w": list_json(t.w()),
        "m": mults(t.m()),
        "n": mults(t.n()),
    })
}

fn family_system(family: &str, rank: usize) -> Result<RootSystem> {
    RootSystem::build(Family::parse(family)?, rank)
}

/// A verb result: structured data, or text printed verbatim.
pub enum Output {
    Value(Value),
    Text(String),
}

fn run_verb(verb: Verb) -> Result<Output> {
    if let Verb::Triad { source, emit: true } = &verb {
        let t = load(source)?.triad()?;
        return Ok(Output::Text(exchange::emit_triad(&t) + "\n"));
    }
    evaluate_verb(verb).map(Output::Value)
}

fn evaluate_verb(verb: Verb) -> Result<Value> {
    match verb {
        Verb::Roots { family, rank } => {
            let r = family_system(&family, rank)?;
            Ok(json!({
                "label": r.label().to_string(),
                "ambient_dim": r.ambient_dim(),
                "rank": r.rank(),
                "count": r.roots().len(),
                "simple": list_json(r.simple()),
                "positive": list_json(&r.positive_roots()),
            }))
        }
        Verb::Triad { source, .. } => {
            let loaded = load(&source)?;
            if let Loaded::Catalogue(e) = &loaded {
                if let Some(r) = e.restricted() {
                    return Ok(json!({
                        "pair": e.name,
                        "type": e.expected_type,
                        "restricted_roots": list_json(r.roots()),
                        "multiplicity": r.roots().first().map(|x| r.multiplicity(x)),
                    }));
                }
            }
            let t = loaded.triad()?;
            let report = check_axioms(&t);
            let mut out = triad_json(&t);
            out["axioms_passed"] = json!(report.passed());
            out["axioms"] = serde_json::to_value(&report).expect("serializes");
            if let Loaded::Catalogue(e) = &loaded {
                out["pair"] = json!(e.name);
                out["type"] = json!(e.expected_type);
                out["is_triad"] = json!(e.is_triad);
            }
            Ok(out)
        }
        Verb::Regular { source, h } => {
            let loaded = load(&source)?;
            let h = PiPoint::parse(&h)?;
            let (sigma, w) = match &loaded {
                Loaded::Catalogue(e) if e.restricted().is_some() => {
                    (e.restricted().expect("checked").roots().to_vec(), Vec::new())
                }
                _ => {
                    let t = loaded.triad()?;
                    is_regular(&t, &h)?;
                    (t.sigma().to_vec(), t.w().to_vec())
                }
            };
            let violations = crate::triads::regularity_violations(&sigma, &w, &h);
            Ok(json!({
                "H": format!("{h}"),
                "regular": violations.is_empty(),
                "violations": violations.iter().map(|v| json!({
                    "root": v.root.to_strings(),
                    "class": v.class,
                    "pairing": format_rational(&v.pairing),
                })).collect::<Vec<_>>(),
            }))
        }
        Verb::Cell { source } => {
            let t = load(&source)?.triad()?;
            let cell = fundamental_cell(&t)?;
            Ok(json!({
                "alpha_tilde": vec_json(&cell.alpha_tilde),
                "simple_sigma": list_json(&cell.simple_sigma),
                "m": cell.m_coeffs,
                "m_sum": cell.m_sum(),
                "vertices": cell.h_basis.iter().map(|h| vec_json(h.q())).collect::<Vec<_>>(),
            }))
        }
        Verb::Gamma { source, h } => {
            let t = load(&source)?.triad()?;
            let h = PiPoint::parse(&h)?;
            Ok(json!({
                "H": format!("{h}"),
                "in_gamma": gamma_contains(&t, &h)?,
                "in_gamma_reduced": gamma_contains_reduced(&t, &h)?,
            }))
        }
        Verb::StPoint { source, order } => {
            let t = load(&source)?.triad()?;
            let (h, n) = match order {
                Some(n) => (st_point(&t, n)?, n),
                None => st_point_direct(&t, None)?,
            };
            Ok(json!({
                "order": n,
                "H0": vec_json(h.q()),
                "regular": is_regular(&t, &h)?.regular,
                "n_H0_in_gamma": gamma_contains(&t, &h.scale(&crate::exact::int(n as i64)))?,
            }))
        }
        Verb::Intersect { source, h, x0 } => {
            let loaded = load(&source)?;
            let h = PiPoint::parse(&h)?;
            let result = match &loaded {
                Loaded::Catalogue(e) => {
                    let x0 = match x0 {
                        Some(x) => BasePoint::parse(&x)?,
                        None => BasePoint::new(e.default_x0.clone())?,
                    };
                    match &e.data {
                        catalogue::PairData::Congruent(r) => congruent_intersection(r, &x0, &h)?,
                        catalogue::PairData::Noncongruent(t) => {
                            noncongruent_intersection(t, &x0, &h, e.is_triad.then_some(&e.embedding))?
                        }
                    }
                }
                Loaded::File(t) => {
                    let x0 = BasePoint::parse(&x0.ok_or_else(|| Error::Invalid("--x0 is required".into()))?)?;
                    noncongruent_intersection(t, &x0, &h, None)?
                }
            };
            Ok(serde_json::to_value(&result).expect("serializes"))
        }
        Verb::Antipodal { family, rank, x0 } => {
            let r = family_system(&family, rank)?;
            let x0 = BasePoint::parse(&x0)?;
            let set = maximal_antipodal(&r, &x0)?;
            Ok(json!({"count": set.len(), "points": list_json(&set)}))
        }
        Verb::Tight { source, x0 } => {
            let loaded = load(&source)?;
            let (subject_triad, restricted, default_x0, sb) = match &loaded {
                Loaded::Catalogue(e) => {
                    let x = match &x0 {
                        Some(x) => ExactVector::parse(x)?,
                        None => e.default_x0.clone(),
                    };
                    let sb = e.sb_reference(&x);
                    (e.triad().cloned(), e.restricted().cloned(), x, sb)
                }
                Loaded::File(t) => {
                    let x = ExactVector::parse(&x0.clone().ok_or_else(|| Error::Invalid("--x0 is required".into()))?)?;
                    (Some(t.clone()), None, x, None)
                }
            };
            let base = BasePoint::new(default_x0)?;
            let count = match (&subject_triad, &restricted) {
                (_, Some(r)) => tightness_count(Subject::Restricted(r), &base, sb)?,
                (Some(t), None) => tightness_count(Subject::Triad(t), &base, sb)?,
                (None, None) => unreachable!("a source is either a triad or a root system"),
            };
            Ok(serde_json::to_value(&count).expect("serializes"))
        }
        Verb::Oracle { pair, n, h, seed, grid } => {
            let size = n.unwrap_or(3);
            let model = oracle::build_pair(&pair, size)?;
            let h = match h {
                Some(h) => PiPoint::parse(&h)?,
                None => PiPoint::new(oracle::extract::generic_point(&model).scale(&crate::exact::ratio(2, 7))),
            };
            let report = oracle::certify(&pair, size, &h, grid, seed)?;
            Ok(serde_json::to_value(&report).expect("serializes"))
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|x| x.is_string()) => {
            format!("({})", items.iter().map(scalar).collect::<Vec<_>>().join(", "))
        }
        other => other.to_string(),
    }
}

fn render_table(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                render_table(x, &key, out);
            }
        }
        Value::Array(items) if !items.iter().all(|x| x.is_string()) => {
            if items.is_empty() {
                out.push_str(&format!("{prefix}: []\n"));
            }
            for (i, x) in items.iter().enumerate() {
                render_table(x, &format!("{prefix}[{i}]"), out);
            }
        }
        other => out.push_str(&format!("{prefix}: {}\n", scalar(other))),
    }
}

/// Renders a verb result in the requested format.
pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("serializes") + "\n",
        Format::Table => {
            if let Ok(report) = serde_json::from_value::<oracle::Report>(value.clone()) {
                return report.to_table();
            }
            let mut out = String::new();
            render_table(value, "", &mut out);
            out
        }
    }
}

/// Parses `args` (program name first), runs the verb and prints the result.
/// Returns the process exit code: 0 on success, 1 on a domain error, 2 on a
/// usage error. A failed oracle certificate counts as a domain error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run_verb(cli.verb) {
        Ok(Output::Text(text)) => {
            print!("{text}");
            0
        }
        Ok(Output::Value(value)) => {
            print!("{}", render(&value, cli.format));
            let failed = value.get("checks").is_some() && value["checks"].as_array().is_some_and(|c| {
                c.iter().any(|x| x["passed"] == Value::Bool(false))
            });
            i32::from(failed)
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

/// Convenience for tests: the JSON result of a command line, or the error.
pub fn evaluate<I, T>(args: I) -> Result<Value>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| Error::Invalid(e.to_string()))?;
    evaluate_verb(cli.verb)
}

