//! Command-line front end. Each command renders to a string and an exit code:
//! 0 on success, 1 when an inequality or cache check fails, 2 on bad input.

pub mod cache;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::botany::{bounds, Botany, BotanyResult, RankEntry};
use crate::deltaseq::rank_report_for_tuple;
use crate::gradedroot::GradedRoot;
use crate::inequality::{
    scan_hat_monotonicity, verify_branched, verify_branched_hat, verify_degree_map,
    verify_monotone, verify_pinch, DegreeMove, VerificationReport,
};
use crate::seifert::SeifertTuple;
use cache::CacheEntry;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "hfrank", version, about = "Heegaard Floer ranks of Seifert homology spheres")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced and hat ranks of Σ(p_1, …, p_l).
    Rank {
        #[arg(required = true, num_args = 1..)]
        tuple: Vec<i64>,
        #[command(flatten)]
        format: TableFormat,
    },
    /// Draw the graded root of a sphere or of an explicit tau sequence.
    Root {
        tuple: Vec<i64>,
        #[arg(long, num_args = 1.., allow_negative_numbers = true, conflicts_with = "tuple")]
        tau: Option<Vec<i64>>,
        #[arg(long, value_enum, default_value_t = RootFormat::Ascii)]
        format: RootFormat,
    },
    /// Every sphere with a given reduced rank.
    Botany {
        #[arg(required_unless_present_any = ["table", "check_cache"])]
        n: Option<i64>,
        /// All rows from 0 to this rank.
        #[arg(long, conflicts_with = "n")]
        table: Option<i64>,
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Recompute every cached entry and compare.
        #[arg(long, requires = "cache")]
        check_cache: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check one of the rank inequalities and print its report.
    Verify {
        #[command(subcommand)]
        which: VerifyCommand,
    },
    /// Comparable pairs whose hat ranks decrease.
    Scan {
        #[arg(long, default_value_t = 13)]
        bound: i64,
        #[arg(long, default_value_t = 3)]
        l: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
pub struct TableFormat {
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RootFormat {
    Ascii,
    Dot,
    Svg,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// n·rank(Σ(t)) ≤ rank of the n-fold cover along the largest fiber.
    Branched {
        #[arg(required = true)]
        tuple: Vec<i64>,
        #[arg(long)]
        n: i64,
        /// Compare hat ranks instead.
        #[arg(long)]
        hat: bool,
    },
    /// rank(Σ(t, qr)) ≤ rank(Σ(t, q, r)); pass `t -- q r`.
    Pinch {
        tuple: Vec<i64>,
        #[arg(last = true, required = true, num_args = 2)]
        qr: Vec<i64>,
    },
    /// rank(Σ(t)) ≤ rank(Σ(t')) for t ≤ t'; pass `t -- t'`.
    Monotone {
        #[arg(required = true)]
        tuple: Vec<i64>,
        #[arg(last = true, required = true)]
        larger: Vec<i64>,
    },
    /// Follow moves from Y' down to Y: pinch:q,r, branched:fiber,n or regular:n.
    Degree {
        #[arg(required = true)]
        tuple: Vec<i64>,
        #[arg(long = "move", value_parser = parse_move)]
        moves: Vec<DegreeMove>,
    },
}

fn parse_move(s: &str) -> Result<DegreeMove, String> {
    let (kind, args) = s.split_once(':').ok_or("expected kind:args")?;
    let nums: Vec<i64> = args
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    match (kind, nums.as_slice()) {
        ("pinch", &[q, r]) => Ok(DegreeMove::Pinch { q, r }),
        ("branched", &[fiber, n]) => Ok(DegreeMove::BranchedFiber { fiber, n }),
        ("regular", &[n]) => Ok(DegreeMove::BranchedRegular { n }),
        _ => Err(format!("unrecognized move {s:?}")),
    }
}

/// What a command printed and how it exits.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: EXIT_OK, ..Self::default() }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Self { stderr: format!("error: {msg}\n"), code: EXIT_USAGE, ..Self::default() }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command),
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                Outcome { stderr: rendered, code: EXIT_USAGE, ..Outcome::default() }
            } else {
                Outcome::ok(rendered)
            }
        }
    }
}

pub fn execute(command: Command) -> Outcome {
    match command {
        Command::Rank { tuple, format } => cmd_rank(&tuple, &format),
        Command::Root { tuple, tau, format } => cmd_root(&tuple, tau.as_deref(), format),
        Command::Botany { n, table, cache, check_cache, json } => {
            if check_cache {
                cmd_check_cache(cache.as_deref().expect("clap requires --cache"))
            } else {
                cmd_botany(n, table, cache.as_deref(), json)
            }
        }
        Command::Verify { which } => cmd_verify(which),
        Command::Scan { bound, l, json } => cmd_scan(bound, l, json),
    }
}

#[derive(Serialize)]
struct RankRow {
    tuple: SeifertTuple,
    rank_red: i64,
    rank_hat: i64,
    n_cutoff: i64,
    kappa: i64,
    min_tau: i64,
    c: i64,
}

pub fn cmd_rank(raw: &[i64], format: &TableFormat) -> Outcome {
    let t = match SeifertTuple::new(raw) {
        Ok(t) => t,
        Err(e) => return Outcome::usage(e),
    };
    let (report, entry) = match (rank_report_for_tuple(&t), RankEntry::compute(&t)) {
        (Ok(r), Ok(e)) => (r, e),
        (Err(e), _) | (_, Err(e)) => return Outcome::usage(e),
    };
    let row = RankRow {
        tuple: t.clone(),
        rank_red: report.rank_red,
        rank_hat: report.rank_hat,
        n_cutoff: entry.n_cutoff,
        kappa: report.kappa,
        min_tau: report.min_tau,
        c: report.c,
    };
    let out = if format.json {
        serde_json::to_string(&row).unwrap() + "\n"
    } else if format.csv {
        let joined: Vec<String> = t.multiplicities().iter().map(i64::to_string).collect();
        format!(
            "tuple,rank_red,rank_hat,n_cutoff,kappa,min_tau,c\n\"{}\",{},{},{},{},{},{}\n",
            joined.join(","),
            row.rank_red,
            row.rank_hat,
            row.n_cutoff,
            row.kappa,
            row.min_tau,
            row.c
        )
    } else {
        format!(
            "tuple     {}\nrank_red  {}\nrank_hat  {}\nN         {}\nkappa     {}\nmin_tau   {}\nc         {}\n",
            t, row.rank_red, row.rank_hat, row.n_cutoff, row.kappa, row.min_tau, row.c
        )
    };
    Outcome::ok(out)
}

pub fn cmd_root(raw: &[i64], tau: Option<&[i64]>, format: RootFormat) -> Outcome {
    let root = match tau {
        Some(tau) => GradedRoot::from_tau(tau).map_err(|e| e.to_string()),
        None => root_of_tuple(raw),
    };
    let root = match root {
        Ok(r) => r,
        Err(e) => return Outcome::usage(e),
    };
    let name = match format {
        RootFormat::Ascii => "ascii",
        RootFormat::Dot => "dot",
        RootFormat::Svg => "svg",
    };
    match root.render(name) {
        Ok(s) => Outcome::ok(s),
        Err(e) => Outcome::usage(e),
    }
}

fn root_of_tuple(raw: &[i64]) -> Result<GradedRoot, String> {
    if raw.is_empty() {
        return Err("give a tuple or --tau".into());
    }
    let t = SeifertTuple::new(raw).map_err(|e| e.to_string())?;
    let tau = if t.is_degenerate() {
        vec![0]
    } else {
        t.sphere_data()
            .and_then(|s| s.tau_sequence())
            .map_err(|e| e.to_string())?
    };
    GradedRoot::from_tau(&tau).map_err(|e| e.to_string())
}

fn row_json(rows: &[&BotanyResult]) -> String {
    if let [single] = rows {
        serde_json::to_string(single).unwrap() + "\n"
    } else {
        serde_json::to_string(rows).unwrap() + "\n"
    }
}

pub fn cmd_botany(n: Option<i64>, table: Option<i64>, cache_path: Option<&Path>, json: bool) -> Outcome {
    let target = table.or(n).unwrap_or(0);
    if target < 0 {
        return Outcome::usage("rank must be nonnegative");
    }
    let cached = match cache_path.map(cache::load).transpose() {
        Ok(c) => c.unwrap_or_default(),
        Err(e) => return Outcome::usage(e),
    };
    let mut botany = Botany::with_memo(cached.iter().map(|(t, e)| (t.clone(), e.ranks())));
    let rows: Vec<BotanyResult> = match table {
        Some(n_max) => match botany.table(n_max) {
            Ok(rows) => rows.into_values().collect(),
            Err(e) => return Outcome::usage(e),
        },
        None => match botany.solve(target) {
            Ok(r) => vec![r],
            Err(e) => return Outcome::usage(e),
        },
    };
    if let Some(path) = cache_path {
        let mut fresh: Vec<CacheEntry> = botany
            .memo()
            .iter()
            .filter(|(t, _)| !cached.contains_key(*t))
            .map(|(t, e)| CacheEntry::new(t.clone(), *e))
            .collect();
        fresh.sort_by(|a, b| a.tuple.cmp(&b.tuple));
        if let Err(e) = cache::append(path, &fresh) {
            return Outcome::usage(e);
        }
    }
    let out = if json {
        row_json(&rows.iter().collect::<Vec<_>>())
    } else {
        rows.iter().map(BotanyResult::csv).collect()
    };
    let (l_max, p_max) = bounds(target);
    Outcome {
        stdout: out,
        stderr: format!("scanned l <= {l_max}, p <= {p_max}; {} ranks computed\n", botany.computed()),
        code: EXIT_OK,
    }
}

pub fn cmd_check_cache(path: &Path) -> Outcome {
    let cached = match cache::load(path) {
        Ok(c) => c,
        Err(e) => return Outcome::usage(e),
    };
    let mut entries: Vec<&CacheEntry> = cached.values().collect();
    entries.sort_by(|a, b| a.tuple.cmp(&b.tuple));
    let mut out = String::new();
    let mut bad = 0usize;
    for e in &entries {
        match RankEntry::compute(&e.tuple) {
            Ok(fresh) if fresh == e.ranks() => {}
            Ok(fresh) => {
                bad += 1;
                let _ = writeln!(out, "mismatch {}: cached {:?}, computed {:?}", e.tuple, e.ranks(), fresh);
            }
            Err(err) => {
                bad += 1;
                let _ = writeln!(out, "error {}: {err}", e.tuple);
            }
        }
    }
    let _ = writeln!(out, "{} entries checked, {} mismatches", entries.len(), bad);
    Outcome {
        stdout: out,
        code: if bad == 0 { EXIT_OK } else { EXIT_FAIL },
        ..Outcome::default()
    }
}

fn report_outcome(report: Result<VerificationReport, String>) -> Outcome {
    match report {
        Ok(r) => Outcome {
            stdout: serde_json::to_string_pretty(&r).unwrap() + "\n",
            code: if r.holds() { EXIT_OK } else { EXIT_FAIL },
            ..Outcome::default()
        },
        Err(e) => Outcome::usage(e),
    }
}

pub fn cmd_verify(which: VerifyCommand) -> Outcome {
    let tuple = |raw: &[i64]| SeifertTuple::new(raw).map_err(|e| e.to_string());
    let report = match which {
        VerifyCommand::Branched { tuple: raw, n, hat } => tuple(&raw).and_then(|t| {
            if hat {
                verify_branched_hat(&t, n)
            } else {
                verify_branched(&t, n)
            }
            .map_err(|e| e.to_string())
        }),
        VerifyCommand::Pinch { tuple: raw, qr } => {
            verify_pinch(&raw, qr[0], qr[1]).map_err(|e| e.to_string())
        }
        VerifyCommand::Monotone { tuple: raw, larger } => tuple(&raw)
            .and_then(|a| Ok((a, tuple(&larger)?)))
            .and_then(|(a, b)| verify_monotone(&a, &b).map_err(|e| e.to_string())),
        VerifyCommand::Degree { tuple: raw, moves } => {
            tuple(&raw).and_then(|t| verify_degree_map(&t, &moves).map_err(|e| e.to_string()))
        }
    };
    report_outcome(report)
}

pub fn cmd_scan(bound: i64, l: usize, json: bool) -> Outcome {
    if l < 3 {
        return Outcome::usage("tuples need at least three fibers");
    }
    let found = match scan_hat_monotonicity(bound, l) {
        Ok(v) => v,
        Err(e) => return Outcome::usage(e),
    };
    let out = if json {
        serde_json::to_string(&found).unwrap() + "\n"
    } else {
        let mut s = String::new();
        for v in &found {
            let _ = writeln!(s, "{} <= {}: hat {} > {}", v.smaller, v.larger, v.hat_smaller, v.hat_larger);
        }
        let _ = writeln!(s, "{} violations with l = {l}, entries <= {bound}", found.len());
        s
    };
    Outcome {
        stdout: out,
        code: if found.is_empty() { EXIT_OK } else { EXIT_FAIL },
        ..Outcome::default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &str) -> Outcome {
        run(std::iter::once("hfrank").chain(args.split_whitespace()))
    }

    #[test]
    fn rank_text() {
        let out = run_args("rank 2 3 7");
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("rank_red  1\n"));
        assert!(run_args("rank 2 3 5").stdout.contains("rank_red  0\n"));
    }

    #[test]
    fn rank_json_and_bad_input() {
        let out = run_args("rank 2 3 5 7 --json");
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["rank_red"], 13);
        assert_eq!(run_args("rank 2 4 7").code, EXIT_USAGE);
        assert_eq!(run_args("rank").code, EXIT_USAGE);
        assert_eq!(run_args("rank 2 x").code, EXIT_USAGE);
    }

    #[test]
    fn root_formats() {
        let fig = run_args("root --tau -2 -1 -2 0 -2");
        assert_eq!(fig.code, 0, "{}", fig.stderr);
        assert!(fig.stdout.starts_with("   | :\n"));
        let dot = run_args("root 2 3 7 --format dot");
        assert!(dot.stdout.starts_with("digraph graded_root {"));
        assert_eq!(run_args("root").code, EXIT_USAGE);
        assert_eq!(run_args("root 2 3 7 --format png").code, EXIT_USAGE);
    }

    #[test]
    fn botany_rows() {
        assert_eq!(run_args("botany 1").stdout, "1,2,3,7\n1,2,3,11\n");
        assert_eq!(run_args("botany 0").stdout, "0,\n0,2,3,5\n");
        assert_eq!(run_args("botany 0 --json").stdout, "{\"n\":0,\"tuples\":[[],[2,3,5]]}\n");
        assert_eq!(run_args("botany -1").code, EXIT_USAGE);
    }

    #[test]
    fn verify_exit_codes() {
        let pinch = run_args("verify pinch 2 3 -- 5 7");
        assert_eq!(pinch.code, 0, "{}", pinch.stderr);
        assert!(pinch.stdout.contains("\"verdict\": \"holds\""));
        assert_eq!(run_args("verify branched 2 3 7 --n 5").code, 0);
        assert_eq!(run_args("verify monotone 2 3 7 -- 2 3 13").code, 0);
        assert_eq!(run_args("verify monotone 2 3 13 -- 2 3 7").code, EXIT_USAGE);
        assert_eq!(run_args("verify degree 2 3 5 7 --move pinch:5,7").code, 0);
        assert_eq!(run_args("verify degree 2 3 7 --move pinch:5,7").code, EXIT_USAGE);
        assert_eq!(run_args("verify degree 2 3 7 --move bogus:1").code, EXIT_USAGE);
    }

    #[test]
    fn scan_exit_code_tracks_violations() {
        assert_eq!(run_args("scan --bound 7").code, EXIT_OK);
        assert_eq!(run_args("scan --bound 13").code, EXIT_FAIL);
        assert_eq!(run_args("scan --bound 7 --l 2").code, EXIT_USAGE);
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ranks.jsonl");
        let p = path.to_str().unwrap();
        let first = run_args(&format!("botany 2 --cache {p}"));
        assert_eq!(first.code, 0);
        let lines = std::fs::read_to_string(&path).unwrap().lines().count();
        assert!(lines > 0);
        let second = run_args(&format!("botany 2 --cache {p}"));
        assert_eq!(second.stdout, first.stdout);
        assert!(second.stderr.contains(" 0 ranks computed"));
        assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), lines);
        let check = run_args(&format!("botany --check-cache --cache {p}"));
        assert_eq!(check.code, 0, "{}", check.stdout);

        let tampered = "{\"tuple\":[2,3,7],\"rank_red\":4,\"rank_hat\":3,\"n_cutoff\":5,\"version\":\"0\"}\n";
        cache::append(&path, &[serde_json::from_str(tampered).unwrap()]).unwrap();
        let check = run_args(&format!("botany --check-cache --cache {p}"));
        assert_eq!(check.code, EXIT_FAIL);
        assert!(check.stdout.contains("mismatch [2,3,7]"));

        std::fs::write(&path, "not json\n").unwrap();
        assert_eq!(run_args(&format!("botany 1 --cache {p}")).code, EXIT_USAGE);
    }
}
