//! `qbic`: counts, zeta functions, Betti numbers and degrees of q-bic
//! forms, with every closed formula checked against enumeration.

mod render;
mod spec_file;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use qbic::combinatorics::{hermitian_max_count, hermitian_plane_count, Parity};
use qbic::degree::{closed_form_degrees, fano_degree_coefficient};
use qbic::enumerate::{fano_count, filtration_count, hermitian_fano_count};
use qbic::oracle::{run_suite, Grid};
use qbic::zeta::{betti_closed_form, betti_from_zeta, coxeter_zeta, fano_zeta, hypersurface_point_count};
use qbic::{classify_type, EnumConfig, Error, Integer, QBicForm, ScanStats, TypeMatch, Zeta};

use spec_file::FormSpecFile;

#[derive(Parser, Debug)]
#[command(name = "qbic", version, about = "Exact computations with q-bic forms over finite fields")]
struct Cli {
    /// Worker threads for enumeration; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    /// Cap on enumeration work, in subspace visits.
    #[arg(long, global = true, default_value_t = qbic::enumerate::DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Output {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inspect a form description.
    Form {
        #[arg(value_enum)]
        action: FormAction,
        file: PathBuf,
    },
    /// Count subspaces, by closed formula and by enumeration.
    Count {
        #[arg(value_enum)]
        kind: CountKind,
        file: PathBuf,
        #[command(flatten)]
        opts: CountOpts,
    },
    /// Zeta function of a Fano scheme (`--m`) or a Coxeter stratum (`--k`).
    Zeta {
        #[arg(long)]
        q: u64,
        #[arg(long, conflicts_with = "k", required_unless_present = "k")]
        m: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        /// Number of point counts to list.
        #[arg(long, default_value_t = 4)]
        s_max: u32,
    },
    /// Betti numbers of the Fano scheme of m-planes in a q-bic of dimension 2m+1.
    Betti {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u32,
    },
    /// Plucker degree of a Fano scheme by coefficient extraction.
    Degree {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        q: u64,
    },
    /// Run the oracle suite.
    Verify {
        #[arg(long, value_enum, default_value_t = GridName::Default)]
        grid: GridName,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormAction {
    Info,
    Classify,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum CountKind {
    Fano,
    Hermitian,
    Filtration,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GridName {
    Default,
    Empty,
}

#[derive(Args, Debug)]
struct CountOpts {
    /// Plane dimension for `fano`.
    #[arg(long)]
    r: Option<usize>,
    /// Plane dimension for `hermitian`, filtration step for `filtration`.
    #[arg(long)]
    k: Option<usize>,
    /// Count points over `F_{q^{2s}}`.
    #[arg(long, default_value_t = 1)]
    s: u32,
    #[arg(long, conflicts_with = "enumerate_only")]
    formula_only: bool,
    #[arg(long)]
    enumerate_only: bool,
}

/// Outcome of a command: the report and whether its checks agreed.
struct Report {
    value: Value,
    mismatch: bool,
    budget_hit: bool,
}

impl Report {
    fn ok(value: Value) -> Self {
        Report {
            value,
            mismatch: false,
            budget_hit: false,
        }
    }
}

fn dec(x: &Integer) -> Value {
    Value::String(x.to_string())
}

fn usage(message: impl Into<String>) -> Error {
    Error::ParameterOutOfRange(message.into())
}

fn load(path: &PathBuf) -> qbic::Result<QBicForm> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        location: path.display().to_string(),
        message: e.to_string(),
    })?;
    FormSpecFile::from_json(&text)?.build()
}

fn subspace_json(u: &qbic::Subspace) -> Value {
    json!(u.to_indices())
}

fn form_info(form: &QBicForm) -> Map<String, Value> {
    let k = form.kernels();
    let field = form.field();
    let mut m = Map::new();
    m.insert("q".into(), json!(form.q()));
    m.insert("s".into(), json!(form.s()));
    m.insert(
        "field".into(),
        json!({"p": field.characteristic(), "e": field.degree(), "modulus": field.modulus()}),
    );
    m.insert("dim".into(), json!(form.dim()));
    m.insert("rank".into(), json!(k.rank));
    m.insert("corank".into(), json!(k.corank));
    m.insert("radical".into(), subspace_json(&k.radical));
    m.insert("radical_dim".into(), json!(k.radical.dim()));
    m.insert("right_kernel".into(), subspace_json(&k.right_kernel));
    m.insert("left_kernel".into(), subspace_json(&k.left_kernel));
    m.insert("smooth".into(), form.is_smooth().map_or(Value::Null, Value::Bool));
    m.insert("cone".into(), json!(form.is_cone()));
    m.insert("hermitian_matrix".into(), json!(form.is_hermitian_matrix()));
    m
}

fn cmd_form(action: FormAction, form: &QBicForm) -> Report {
    let mut m = form_info(form);
    if let FormAction::Classify = action {
        let p = classify_type(form);
        m.insert("chain_dims".into(), json!(p.chain_dims()));
        match &p.type_match {
            TypeMatch::Unique(t) => {
                m.insert("type".into(), json!(t.to_string()));
            }
            TypeMatch::Ambiguous(ts) => {
                m.insert("type".into(), Value::Null);
                m.insert("ambiguous".into(), json!(ts.iter().map(|t| t.to_string()).collect::<Vec<_>>()));
            }
            TypeMatch::Unmatched => {
                m.insert("type".into(), Value::Null);
            }
        }
    }
    Report::ok(Value::Object(m))
}

/// Whether the closed counting formulas describe this form: a smooth form
/// with Hermitian Gram matrix over `F_{q^2}`, hence isomorphic to Fermat.
fn formulas_apply(form: &QBicForm) -> bool {
    form.s() == 1 && form.is_hermitian_matrix() && form.is_smooth().unwrap_or(false)
}

fn count_formula(kind: CountKind, form: &QBicForm, level: usize, s: u32) -> qbic::Result<Option<(&'static str, Integer)>> {
    if !formulas_apply(form) {
        return Ok(None);
    }
    let q = form.q();
    let n = form.dim() - 1;
    Ok(match kind {
        CountKind::Fano if level == 0 && n >= 2 => {
            Some(("hypersurface_point_count", hypersurface_point_count(q, n as u32, s)?))
        }
        CountKind::Fano if n == 2 * level + 1 => Some(("hermitian_max_count", hermitian_max_count(q, level, Parity::Even))),
        CountKind::Fano if n == 2 * level + 2 => {
            Some(("fano_zeta", fano_zeta::<Integer>(q, level as u32)?.point_count(s)))
        }
        CountKind::Hermitian if 2 * level < n => Some(("hermitian_plane_count", hermitian_plane_count(q, n, level)?)),
        CountKind::Filtration if (level == 0 || s == 1) && n >= 2 => {
            Some(("hypersurface_point_count", hypersurface_point_count(q, n as u32, s)?))
        }
        _ => None,
    })
}

fn cmd_count(kind: CountKind, form: &QBicForm, opts: &CountOpts, cfg: &EnumConfig) -> qbic::Result<Report> {
    let level = match kind {
        CountKind::Fano => opts.r.ok_or_else(|| usage("count fano needs --r"))?,
        _ => opts.k.ok_or_else(|| usage(format!("count {kind:?} needs --k").to_lowercase()))?,
    };
    if opts.s == 0 {
        return Err(usage("--s must be at least 1"));
    }
    let s = match kind {
        CountKind::Hermitian => form.s(),
        _ => opts.s,
    };
    let formula = if opts.enumerate_only {
        None
    } else {
        count_formula(kind, form, level, s)?
    };
    if opts.formula_only && formula.is_none() {
        return Err(usage("no closed formula applies to this form and these parameters"));
    }
    let mut budget_hit = false;
    let scan: Option<ScanStats> = if opts.formula_only {
        None
    } else {
        let res = match kind {
            CountKind::Fano => fano_count(form, level, s, cfg),
            CountKind::Hermitian => hermitian_fano_count(form, level, cfg),
            CountKind::Filtration => filtration_count(form, level, s, cfg),
        };
        match res {
            Ok(st) => Some(st),
            Err(Error::BudgetExceeded { .. }) if formula.is_some() => {
                budget_hit = true;
                None
            }
            Err(e) => return Err(e),
        }
    };
    let enumerated = scan.map(|st| Integer::from(st.count));
    let matches = match (&formula, &enumerated) {
        (Some((_, f)), Some(e)) => Some(f == e),
        _ => None,
    };
    let count = formula.as_ref().map(|(_, v)| v.clone()).or_else(|| enumerated.clone());
    let key = match kind {
        CountKind::Fano => "r",
        _ => "k",
    };
    let mut m = Map::new();
    m.insert("kind".into(), json!(format!("{kind:?}").to_lowercase()));
    m.insert(
        "params".into(),
        json!({"q": form.q(), "n": form.dim() - 1, key: level, "s": s}),
    );
    m.insert("formula".into(), json!(formula.as_ref().map(|(name, _)| *name)));
    m.insert("formula_value".into(), formula.as_ref().map_or(Value::Null, |(_, v)| dec(v)));
    m.insert("enumerated".into(), enumerated.as_ref().map_or(Value::Null, dec));
    m.insert("count".into(), count.as_ref().map_or(Value::Null, dec));
    m.insert("match".into(), json!(matches));
    if let Some(st) = scan {
        m.insert("covered".into(), json!(st.covered.to_string()));
        m.insert("visits".into(), json!(st.visits));
    }
    if budget_hit {
        m.insert("skipped".into(), json!("enumeration budget exceeded"));
    }
    Ok(Report {
        value: Value::Object(m),
        mismatch: matches == Some(false),
        budget_hit,
    })
}

fn zeta_json(z: &Zeta, s_max: u32) -> Value {
    let exps: Map<String, Value> = z.exponents().map(|(i, e)| (i.to_string(), dec(e))).collect();
    json!({
        "q": z.q(),
        "exponents": exps,
        "point_counts": z.point_counts(s_max).iter().map(dec).collect::<Vec<_>>(),
    })
}

fn cmd_zeta(q: u64, m: Option<u32>, k: Option<u32>, s_max: u32) -> qbic::Result<Report> {
    let (kind, z) = match (m, k) {
        (Some(m), _) => (json!({"fano": {"m": m}}), fano_zeta::<Integer>(q, m)?),
        (None, Some(k)) => (json!({"coxeter": {"k": k}}), coxeter_zeta::<Integer>(q, k)?),
        (None, None) => return Err(usage("zeta needs --m or --k")),
    };
    let mut v = zeta_json(&z, s_max);
    v["variety"] = kind;
    Ok(Report::ok(v))
}

fn cmd_betti(q: u64, m: u32) -> qbic::Result<Report> {
    let closed = (0..=2 * m + 2)
        .map(|k| betti_closed_form::<Integer>(q, m, k))
        .collect::<qbic::Result<Vec<_>>>()?;
    let from_zeta = betti_from_zeta(&fano_zeta::<Integer>(q, m)?, m + 1)?;
    let matches = closed == from_zeta.b;
    Ok(Report {
        value: json!({
            "q": q,
            "m": m,
            "betti": closed.iter().map(dec).collect::<Vec<_>>(),
            "from_zeta": from_zeta.b.iter().map(dec).collect::<Vec<_>>(),
            "euler_characteristic": dec(&from_zeta.euler_characteristic()),
            "match": matches,
        }),
        mismatch: !matches,
        budget_hit: false,
    })
}

fn cmd_degree(n: usize, r: usize, q: u64) -> qbic::Result<Report> {
    let coefficient = fano_degree_coefficient(n, r, q)?;
    let closed = closed_form_degrees(n, r, q)?;
    let closed_map: Map<String, Value> = closed.iter().map(|(name, v)| (name.to_string(), dec(v))).collect();
    let matches = (!closed.is_empty()).then(|| closed.iter().all(|(_, v)| *v == coefficient));
    Ok(Report {
        value: json!({
            "n": n,
            "r": r,
            "q": q,
            "coefficient": dec(&coefficient),
            "closed_form": closed.first().map(|(_, v)| dec(v)),
            "closed_forms": closed_map,
            "match": matches,
        }),
        mismatch: matches == Some(false),
        budget_hit: false,
    })
}

fn cmd_verify(grid: GridName, cfg: &EnumConfig, timing: bool) -> qbic::Result<Report> {
    let grid = match grid {
        GridName::Default => Grid::default_grid(),
        GridName::Empty => Grid::empty(),
    };
    let card = run_suite(&grid, cfg)?;
    Ok(Report {
        value: card.to_json(timing),
        mismatch: card.mismatches().count() > 0,
        budget_hit: card.skipped().count() > 0,
    })
}

fn run(cli: &Cli) -> qbic::Result<Report> {
    let cfg = EnumConfig::default().with_workers(cli.workers).with_budget(cli.budget);
    match &cli.command {
        Command::Form { action, file } => Ok(cmd_form(*action, &load(file)?)),
        Command::Count { kind, file, opts } => cmd_count(*kind, &load(file)?, opts, &cfg),
        Command::Zeta { q, m, k, s_max } => cmd_zeta(*q, *m, *k, *s_max),
        Command::Betti { q, m } => cmd_betti(*q, *m),
        Command::Degree { n, r, q } => cmd_degree(*n, *r, *q),
        Command::Verify { grid } => cmd_verify(*grid, &cfg, cli.timing),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(mut report) => {
            if cli.timing {
                if let Value::Object(m) = &mut report.value {
                    m.insert("elapsed_ms".into(), json!(start.elapsed().as_millis() as u64));
                }
            }
            println!("{}", render::render(&report.value, cli.output == Output::Table));
            if report.mismatch {
                ExitCode::from(1)
            } else if report.budget_hit {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
