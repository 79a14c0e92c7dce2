//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! All comparisons are exact (tolerance zero). Each criterion has a wall-clock
//! budget; exceeding it is a failure even if every identity holds.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use tuttex::binomial::{self, BinomialFamily};
use tuttex::complete::{self, InvMode, ZnMode};
use tuttex::identities::{self, SuiteOptions};
use tuttex::{mobius, CheckReport, MultiGraph, MultiPoly, Var};

type Outcome = Result<Vec<CheckReport>, String>;

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Duration,
    run: fn(&[MultiGraph]) -> Outcome,
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn suite(corpus: &[MultiGraph], name: &str) -> Outcome {
    identities::run_suite(corpus, name, &SuiteOptions::default()).map_err(|e| e.to_string())
}

fn err(e: tuttex::Error) -> String {
    e.to_string()
}

fn require(cond: bool, what: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn find<'a>(reports: &'a [CheckReport], name: &str) -> Result<&'a CheckReport, String> {
    reports
        .iter()
        .find(|r| r.check == name)
        .ok_or_else(|| format!("no {name} report"))
}

/// Every graph the filter selects must appear in the report's graph list.
fn covers(r: &CheckReport, corpus: &[MultiGraph], keep: impl Fn(&MultiGraph) -> bool) -> Result<(), String> {
    for g in corpus.iter().filter(|g| keep(g)) {
        if !r.graphs.contains(&g.fingerprint()) {
            return Err(format!("{} skipped {}", r.check, g.fingerprint()));
        }
    }
    Ok(())
}

fn oracle(corpus: &[MultiGraph]) -> Outcome {
    let out = suite(corpus, "oracle")?;
    covers(find(&out, "oracle")?, corpus, |g| {
        g.is_loopless() && g.num_vertices() <= 5 && g.num_edges() <= 8
    })?;
    Ok(out)
}

fn partitions(corpus: &[MultiGraph]) -> Outcome {
    let out = suite(corpus, "partitions")?;
    for name in ["partitions.q1q2", "partitions.q1=0", "partitions.q1=1", "partitions.independent"] {
        covers(find(&out, name)?, corpus, |g| g.is_loopless() && g.num_vertices() <= 6)?;
    }
    Ok(out)
}

fn convolutions(corpus: &[MultiGraph]) -> Outcome {
    let out = suite(corpus, "convolutions")?;
    for name in ["convolutions.lin0", "convolutions.lin1", "convolutions.lin2", "convolutions.lin2a"] {
        covers(find(&out, name)?, corpus, |g| g.is_loopless())?;
    }
    Ok(out)
}

fn nonlinear(corpus: &[MultiGraph]) -> Outcome {
    let mut out = suite(corpus, "nonlinear")?;
    out.extend(suite(corpus, "genborgs")?);
    covers(find(&out, "nonlinear")?, corpus, |g| g.num_vertices() >= 2)?;
    covers(find(&out, "genborgs")?, corpus, |_| true)?;
    Ok(out)
}

fn blowup(_: &[MultiGraph]) -> Outcome {
    let out = suite(&[], "blowup")?;
    let b = find(&out, "blowup")?;
    require(b.graphs.len() == 2, "blow-ups must cover K_1 and K_2")?;
    find(&out, "blowup.chromatic")?;
    Ok(out)
}

fn complete_sequences(_: &[MultiGraph]) -> Outcome {
    let lin = complete::cn_linear(10).map_err(err)?;
    let non = complete::cn_nonlinear(10).map_err(err)?;
    require(lin.entries == non.entries, "cn linear and nonlinear differ at N = 10")?;
    let v1 = [(Var::new("v"), tuttex::Rational::from_integer(1.into()))].into_iter().collect();
    require(
        lin.get(4).evaluate(&v1) == MultiPoly::int(38),
        "C_4(1) is not 38",
    )?;
    let zc = complete::zn_sequence(10, ZnMode::FromCn).map_err(err)?;
    let zd = complete::zn_sequence(10, ZnMode::DirectQ).map_err(err)?;
    require(zc.entries == zd.entries, "zn modes differ at N = 10")?;
    let out = complete::complete_suite(10).map_err(err)?;
    let series = find(&out, "complete.series")?;
    require(series.instances >= 9, "EGF check must reach x^8")?;
    let forms = find(&out, "complete.partition_forms")?;
    require(forms.instances >= 7 * 4, "partition forms must reach n = 7")?;
    Ok(out
        .into_iter()
        .filter(|r| !r.check.starts_with("complete.inversion"))
        .collect())
}

fn inversions(_: &[MultiGraph]) -> Outcome {
    for n in 1..=7 {
        let rec = complete::inversion_enumerator(n, InvMode::Recursion).map_err(err)?;
        let brute = complete::inversion_enumerator(n, InvMode::Brute).map_err(err)?;
        require(rec.entries == brute.entries, &format!("inversion modes differ at N = {n}"))?;
    }
    Ok(vec![
        complete::check_inversion_modes(7).map_err(err)?,
        complete::check_cn_in_relation(8).map_err(err)?,
    ])
}

fn families(corpus: &[MultiGraph]) -> Outcome {
    let mut out = suite(corpus, "families")?;
    out.extend(suite(corpus, "abel")?);
    let rt = find(&out, "round_trip")?;
    require(
        rt.graphs.iter().any(|g| g.starts_with("random1d")) && rt.graphs.iter().any(|g| g.starts_with("random2d")),
        "round trip needs 1-D and 2-index sequences",
    )?;
    let conv = find(&out, "convolutions")?;
    require(conv.graphs.iter().any(|g| g == "bipartite"), "multi-index convolutions missing")?;
    let knuth = find(&out, "knuth")?;
    for name in ["exp", "affine(1,1)"] {
        require(knuth.graphs.iter().any(|g| g == name), &format!("knuth missing {name}"))?;
    }
    // the 1+x family under its own name, to n = 6
    let f: BinomialFamily = binomial::classic_family(&binomial::ClassicName::parse("one_plus_x").map_err(err)?, 6).map_err(err)?;
    out.push(binomial::check_knuth(&f, 6).map_err(err)?);
    find(&out, "abel")?;
    Ok(out)
}

fn moebius(corpus: &[MultiGraph]) -> Outcome {
    let mut out = Vec::new();
    for n in 1..=5 {
        out.push(mobius::check_composition(n).map_err(err)?);
        out.push(mobius::check_specializations(n).map_err(err)?);
    }
    out.push(mobius::check_lemma_partitions(6).map_err(err)?);
    out.push(mobius::check_rota(7).map_err(err)?);
    out.push(mobius::check_diag_conjugation(4, &Var::new("r")).map_err(err)?);
    for g in corpus.iter().filter(|g| g.is_loopless() && g.num_vertices() <= 5) {
        out.push(mobius::check_coherent_family(g).map_err(err)?);
    }
    Ok(out)
}

fn sign(corpus: &[MultiGraph]) -> Outcome {
    let out = suite(corpus, "sign")?;
    covers(find(&out, "sign")?, corpus, |_| true)?;
    Ok(out)
}

fn check_all_stdout() -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_tuttex"))
        .args(["check", "all"])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("check all exited with {:?}", out.status.code()));
    }
    Ok(out.stdout)
}

fn determinism(_: &[MultiGraph]) -> Outcome {
    let a = check_all_stdout()?;
    let b = check_all_stdout()?;
    require(!a.is_empty(), "empty report stream")?;
    require(a == b, "two runs of check all differ")?;
    Ok(Vec::new())
}

const CRITERIA: [Criterion; 11] = [
    Criterion { id: 1, title: "coloring oracle vs subset expansion", limit: secs(10), run: oracle },
    Criterion { id: 2, title: "partition identities", limit: secs(60), run: partitions },
    Criterion { id: 3, title: "subset convolutions", limit: secs(30), run: convolutions },
    Criterion { id: 4, title: "nonlinear identity and Gessel/Borgs expansion", limit: secs(60), run: nonlinear },
    Criterion { id: 5, title: "blow-up generating functions", limit: secs(120), run: blowup },
    Criterion { id: 6, title: "complete-graph sequences", limit: secs(120), run: complete_sequences },
    Criterion { id: 7, title: "inversion enumerator", limit: secs(60), run: inversions },
    Criterion { id: 8, title: "binomial-type families", limit: secs(120), run: families },
    Criterion { id: 9, title: "partition-lattice Moebius identities", limit: secs(120), run: moebius },
    Criterion { id: 10, title: "sign inequality", limit: secs(30), run: sign },
    Criterion { id: 11, title: "byte-identical check all", limit: secs(120), run: determinism },
];

fn main() -> ExitCode {
    let corpus = identities::default_corpus();
    let mut failed = 0;
    for c in &CRITERIA {
        let start = Instant::now();
        let result = (c.run)(&corpus);
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Err(e) => (false, e),
            Ok(reports) => match reports.iter().find(|r| !r.passed()) {
                Some(r) => (false, r.to_line()),
                None if reports.is_empty() => (true, "ok".to_string()),
                None => {
                    let n: u64 = reports.iter().map(|r| r.instances).sum();
                    (true, format!("{} reports, {n} exact comparisons", reports.len()))
                }
            },
        };
        let in_time = elapsed <= c.limit;
        let status = if ok && in_time { "PASS" } else { "FAIL" };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {:>2} {status}  {} ({:.2}s, limit {}s): {detail}{}",
            c.id,
            c.title,
            elapsed.as_secs_f64(),
            c.limit.as_secs(),
            if in_time { "" } else { " [over time]" },
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
