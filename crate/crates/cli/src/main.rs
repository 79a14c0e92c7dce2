use std::collections::BTreeMap;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use tuttex::binomial::{self, ClassicName};
use tuttex::complete::{self, InvMode, ZnMode};
use tuttex::exactalg::parse_rational;
use tuttex::identities::{self, SuiteOptions};
use tuttex::{mobius, tutte, Error, MultiGraph, MultiPoly, Rational, Var};

/// Exact multivariate Tutte polynomials and identity checks.
#[derive(Parser, Debug)]
#[command(name = "tuttex", version)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Emit JSON instead of canonical text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Subst {
    /// Exact substitution `name=p/q`, repeatable.
    #[arg(long = "set", value_name = "NAME=VALUE")]
    set: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Z_G(q, v) by subset expansion.
    Z { graph: PathBuf, #[command(flatten)] subst: Subst },
    /// Z_G(q, v) / q.
    Zhat { graph: PathBuf, #[command(flatten)] subst: Subst },
    /// Connected spanning subgraph polynomial C_G(v).
    Connected { graph: PathBuf, #[command(flatten)] subst: Subst },
    /// Chromatic polynomial P_G(q).
    Chromatic { graph: PathBuf, #[command(flatten)] subst: Subst },
    /// C_G(v, lambda), weighted by lambda^(cyclomatic number).
    Lambda { graph: PathBuf, #[command(flatten)] subst: Subst },
    /// Z of a blow-up G[n], or G'[n] with --clique.
    Blowup {
        graph: PathBuf,
        /// Comma-separated multiplicities in vertex order.
        #[arg(long)]
        n: String,
        #[arg(long)]
        clique: bool,
        #[command(flatten)]
        subst: Subst,
    },
    /// Complete-graph and generalized sequences as a JSON array.
    Seq {
        /// cn, zn, inv, zna or ync.
        name: String,
        #[arg(long)]
        n: u32,
        /// linear/nonlinear for cn, from_cn/direct_q for zn, recursion/brute for inv.
        #[arg(long)]
        mode: Option<String>,
        /// Comma-separated rationals: a_1.. for zna, c_1.. for ync.
        #[arg(long)]
        coeffs: Option<String>,
        #[command(flatten)]
        subst: Subst,
    },
    /// Table of a binomial-type family, keyed by "n1,n2,...".
    Family {
        /// exp, one_plus_x, geometric, affine(a,b), bell, laguerre or complete.
        name: String,
        #[arg(long, default_value_t = 6)]
        cap: u32,
    },
    /// The matrix mu_{q1,q2} on the partitions of {1..n}.
    Mobius {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q1: Option<String>,
        #[arg(long)]
        q2: Option<String>,
    },
    /// Run an identity suite; one JSON report per line.
    Check {
        suite: String,
        #[arg(long)]
        max_n: Option<u32>,
        /// Graph files (a graph object or an array of them); default corpus if absent.
        #[arg(long, num_args = 1..)]
        corpus: Vec<PathBuf>,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Resource(_) => 3,
        Error::Consistency(_) => 1,
        _ => 2,
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<MultiGraph, Error> {
    MultiGraph::from_json_str(&read(path)?)
}

fn load_corpus(paths: &[PathBuf]) -> Result<Vec<MultiGraph>, Error> {
    let mut out = Vec::new();
    for p in paths {
        let value: Value = serde_json::from_str(&read(p)?)
            .map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
        match &value {
            Value::Array(items) => {
                for g in items {
                    out.push(MultiGraph::from_json(g)?);
                }
            }
            _ => out.push(MultiGraph::from_json(&value)?),
        }
    }
    Ok(out)
}

fn parse_subst(s: &Subst) -> Result<BTreeMap<Var, Rational>, Error> {
    let mut map = BTreeMap::new();
    for item in &s.set {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| Error::Usage(format!("--set expects NAME=VALUE, got {item:?}")))?;
        if name.trim().is_empty() {
            return Err(Error::Usage(format!("empty variable name in {item:?}")));
        }
        map.insert(Var::new(name.trim()), parse_rational(value)?);
    }
    Ok(map)
}

fn render(p: &MultiPoly, as_json: bool) -> String {
    if as_json {
        p.to_json().to_string()
    } else {
        p.to_string()
    }
}

fn compute(kind: &str, path: &Path, subst: &Subst, as_json: bool) -> Result<String, Error> {
    let values = parse_subst(subst)?;
    let g = load_graph(path)?;
    let p = match kind {
        "z" => tutte::z_subset(&g)?,
        "zhat" => tutte::zhat(&g)?,
        "connected" => tutte::connected_poly(&g)?,
        "chromatic" => tutte::chromatic(&g)?,
        "lambda" => tutte::connected_lambda(&g)?,
        _ => unreachable!("kinds come from the subcommand table"),
    };
    Ok(render(&p.evaluate(&values), as_json))
}

fn parse_list(text: &str) -> Result<Vec<MultiPoly>, Error> {
    text.split(',')
        .map(|s| parse_rational(s).map(MultiPoly::constant))
        .collect()
}

fn seq(name: &str, n: u32, mode: Option<&str>, coeffs: Option<&str>, subst: &Subst) -> Result<Vec<MultiPoly>, Error> {
    let values = parse_subst(subst)?;
    let s = match name {
        "cn" => match mode.unwrap_or("linear") {
            "linear" => complete::cn_linear(n)?,
            "nonlinear" => complete::cn_nonlinear(n)?,
            m => return Err(Error::Usage(format!("unknown cn mode {m:?}"))),
        },
        "zn" => {
            let m = mode.map(complete::parse_zn_mode).transpose()?.unwrap_or(ZnMode::DirectQ);
            complete::zn_sequence(n, m)?
        }
        "inv" => {
            let m = mode.map(complete::parse_inv_mode).transpose()?.unwrap_or(InvMode::Recursion);
            complete::inversion_enumerator(n, m)?
        }
        "zna" => {
            let mut a = vec![MultiPoly::one()];
            match coeffs {
                Some(text) => a.extend(parse_list(text)?),
                None => {
                    let one_v = MultiPoly::one() + MultiPoly::var("v");
                    a.extend((1..=n).map(|k| one_v.pow(k * (k - 1) / 2)));
                }
            }
            complete::zn_of_family(&a, n)?
        }
        "ync" => {
            let c = match coeffs {
                Some(text) => parse_list(text)?,
                None if n == 0 => Vec::new(),
                None => complete::cn_linear(n)?.entries,
            };
            complete::yn_of_family(&c, n)?
        }
        other => return Err(Error::Usage(format!("unknown sequence {other:?}; expected cn, zn, inv, zna or ync"))),
    };
    Ok(s.entries.iter().map(|p| p.evaluate(&values)).collect())
}

fn family(name: &str, cap: u32) -> Result<Value, Error> {
    let f = if name == "complete" {
        binomial::complete_graph_family(cap)?
    } else {
        binomial::classic_family(&ClassicName::parse(name)?, cap)?
    };
    Ok(f.to_json())
}

fn mobius_matrix(n: usize, q1: Option<&str>, q2: Option<&str>) -> Result<Value, Error> {
    let value = |text: Option<&str>, name: &str| -> Result<MultiPoly, Error> {
        match text {
            None => Ok(MultiPoly::var(name)),
            Some(t) => parse_rational(t).map(MultiPoly::constant),
        }
    };
    let m = mobius::mu_q1q2_matrix(
        tuttex::partitions::standard_ground(n),
        &value(q1, "q1")?,
        &value(q2, "q2")?,
    )?;
    Ok(m.to_json())
}

fn run(cli: Cli, out: &mut impl Write) -> Result<u8, Error> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build_global()
            .map_err(|e| Error::Usage(format!("thread pool: {e}")))?;
    }
    let as_json = cli.json;
    let text = match &cli.command {
        Command::Z { graph, subst } => compute("z", graph, subst, as_json)?,
        Command::Zhat { graph, subst } => compute("zhat", graph, subst, as_json)?,
        Command::Connected { graph, subst } => compute("connected", graph, subst, as_json)?,
        Command::Chromatic { graph, subst } => compute("chromatic", graph, subst, as_json)?,
        Command::Lambda { graph, subst } => compute("lambda", graph, subst, as_json)?,
        Command::Blowup { graph, n, clique, subst } => {
            let values = parse_subst(subst)?;
            let g = load_graph(graph)?;
            let sizes: Vec<u32> = n
                .split(',')
                .map(|s| s.trim().parse().map_err(|_| Error::Parse(format!("bad multiplicity {s:?}"))))
                .collect::<Result<_, _>>()?;
            let b = if *clique { g.blowup_clique(&sizes)? } else { g.blowup_independent(&sizes)? };
            render(&tutte::z_subset(&b)?.evaluate(&values), as_json)
        }
        Command::Seq { name, n, mode, coeffs, subst } => {
            let entries = seq(name, *n, mode.as_deref(), coeffs.as_deref(), subst)?;
            let items: Vec<Value> = entries
                .iter()
                .map(|p| if as_json { p.to_json() } else { json!(p.to_string()) })
                .collect();
            Value::Array(items).to_string()
        }
        Command::Family { name, cap } => family(name, *cap)?.to_string(),
        Command::Mobius { n, q1, q2 } => mobius_matrix(*n, q1.as_deref(), q2.as_deref())?.to_string(),
        Command::Check { suite, max_n, corpus } => {
            let graphs = if corpus.is_empty() {
                identities::default_corpus()
            } else {
                load_corpus(corpus)?
            };
            let reports = identities::run_suite(&graphs, suite, &SuiteOptions { max_n: *max_n })?;
            let mut code = 0;
            for r in &reports {
                writeln!(out, "{}", r.to_line()).map_err(|e| Error::Resource(e.to_string()))?;
                if !r.passed() {
                    code = 1;
                }
            }
            return Ok(code);
        }
    };
    writeln!(out, "{text}").map_err(|e| Error::Resource(e.to_string()))?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let _ = out.flush();
            eprintln!("tuttex: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
