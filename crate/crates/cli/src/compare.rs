use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use pickroute::dp::{derive_singleblock_table, table_diff, TableCell};
use pickroute::oracle::{brute_force_config_opt, enumeration_size, held_karp_opt, validate_tour_subgraph, DEFAULT_LIMIT};
use pickroute::walk::walk_edges;
use pickroute::{generate_instance, tour_length, Instance, Solution, WarehouseLayout};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::report::{RunReport, Summary};
use crate::{run_method, Method};

/// Inclusive range written `lo:hi`, or a single value.
#[derive(Debug, Clone, Copy)]
pub struct Span {
    lo: u64,
    hi: u64,
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
        let (lo, hi) = match s.split_once(':') {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s}"));
        }
        Ok(Span { lo, hi })
    }
}

#[derive(clap::Args)]
pub struct CompareArgs {
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "1:5")]
    m_range: Span,
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    n_set: Vec<usize>,
    #[arg(long, default_value = "0:10")]
    k_range: Span,
    #[arg(long = "W-range", default_value = "1:10")]
    w_range: Span,
    #[arg(long = "H-range", default_value = "2:20")]
    h_range: Span,
    /// Largest assignment space the enumeration oracle is run on.
    #[arg(long, default_value_t = 200_000)]
    brute_guard: u128,
    /// Worker threads; rayon's default when omitted.
    #[arg(long)]
    threads: Option<usize>,
    /// Add per-method wall time to each report line.
    #[arg(long)]
    timings: bool,
    /// Print the derived single-block transition table's differences from
    /// the published one instead of running instances.
    #[arg(long)]
    golden_table: bool,
    /// Report path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn draw(rng: &mut ChaCha8Rng, args: &CompareArgs) -> Result<Instance> {
    let m = rng.gen_range(args.m_range.lo..=args.m_range.hi) as usize;
    let n = args.n_set[rng.gen_range(0..args.n_set.len())];
    let w = rng.gen_range(args.w_range.lo..=args.w_range.hi);
    let h = rng.gen_range(args.h_range.lo..=args.h_range.hi);
    let k = rng.gen_range(args.k_range.lo..=args.k_range.hi);
    let seed = rng.gen();
    let cap = WarehouseLayout::new(m, n, w, h)?.pick_capacity();
    Ok(generate_instance(m, n, w, h, k.min(cap) as usize, seed)?)
}

fn check(instance: &Instance, solution: &Solution) -> Option<String> {
    let verdict = validate_tour_subgraph(instance, &solution.edges);
    if !verdict.is_valid() {
        return Some(verdict.to_string());
    }
    match tour_length(instance, &solution.edges) {
        Ok(len) if len == solution.cost => {}
        Ok(len) => return Some(format!("edge length {len} differs from cost {}", solution.cost)),
        Err(e) => return Some(e.to_string()),
    }
    let depot = (instance.depot().aisle, instance.depot_position());
    if solution.walk.first() != Some(&depot) || solution.walk.last() != Some(&depot) {
        return Some("walk does not start and end at the depot".into());
    }
    if walk_edges(instance, &solution.walk).as_ref() != Some(&solution.edges) {
        return Some("walk does not traverse the solution edges".into());
    }
    None
}

fn timed<T>(timings: bool, wall: &mut Vec<(&'static str, f64)>, name: &'static str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    if timings {
        wall.push((name, start.elapsed().as_secs_f64() * 1e3));
    }
    out
}

fn compare_one(index: usize, instance: &Instance, args: &CompareArgs) -> RunReport {
    let mut report = RunReport::new(index, instance);
    let mut wall = Vec::new();
    if instance.layout().cross_aisles() <= 3 {
        for method in [Method::Reduced, Method::Baseline] {
            let name = method.name();
            match timed(args.timings, &mut wall, name, || run_method(instance, method)) {
                Ok(sol) => {
                    report.costs.insert(name, sol.cost);
                    report.stages.insert(name, sol.stages);
                    report.expansions.insert(name, sol.expansions);
                    if let Some(why) = check(instance, &sol) {
                        report.invalid.insert(name, why);
                    }
                }
                Err(e) => {
                    report.invalid.insert(name, e.to_string());
                }
            }
        }
    }
    if instance.picks().len() < DEFAULT_LIMIT {
        if let Ok(cost) = timed(args.timings, &mut wall, "held_karp", || held_karp_opt(instance, DEFAULT_LIMIT)) {
            report.costs.insert("held_karp", cost);
        }
    }
    if enumeration_size(instance).is_ok_and(|s| s <= args.brute_guard) {
        match timed(args.timings, &mut wall, "brute_force", || brute_force_config_opt(instance)) {
            Ok((cost, _)) => {
                report.costs.insert("brute_force", cost);
            }
            Err(e) => {
                report.invalid.insert("brute_force", e.to_string());
            }
        }
    }
    if args.timings {
        report.wall_ms = Some(wall.into_iter().collect());
    }
    report.agree = report.costs_agree();
    report
}

fn golden_table(out: &mut dyn Write) -> Result<bool> {
    let derived = derive_singleblock_table();
    let diffs = table_diff(&derived);
    let show = |c: &TableCell| match c {
        TableCell::Invalid => "-".to_string(),
        TableCell::Valid { target, vertical } => format!("{target} ({vertical})"),
    };
    for d in &diffs {
        let line = json!({
            "row": d.row,
            "column": d.column,
            "derived": show(&d.derived),
            "reference": show(&d.reference),
        });
        writeln!(out, "{line}")?;
    }
    writeln!(out, "{}", json!({ "cells": derived.cells.len(), "differences": diffs.len() }))?;
    Ok(true)
}

/// Returns whether every instance agreed and validated.
pub fn run(args: &CompareArgs) -> Result<bool> {
    let mut out: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    if args.golden_table {
        let ok = golden_table(&mut out)?;
        out.flush()?;
        return Ok(ok);
    }
    if args.n_set.is_empty() {
        bail!("--n-set is empty");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let instances = (0..args.count).map(|_| draw(&mut rng, args)).collect::<Result<Vec<_>>>()?;

    let work = || -> Vec<RunReport> {
        instances.par_iter().enumerate().map(|(i, inst)| compare_one(i, inst, args)).collect()
    };
    let reports = match args.threads {
        Some(t) => rayon::ThreadPoolBuilder::new().num_threads(t).build()?.install(work),
        None => work(),
    };

    let mut summary = Summary {
        count: reports.len(),
        disagreements: 0,
        invalid: 0,
        held_karp_runs: 0,
        brute_force_runs: 0,
    };
    for r in &reports {
        writeln!(out, "{}", serde_json::to_string(r)?)?;
        summary.disagreements += usize::from(!r.agree);
        summary.invalid += usize::from(!r.invalid.is_empty());
        summary.held_karp_runs += usize::from(r.costs.contains_key("held_karp"));
        summary.brute_force_runs += usize::from(r.costs.contains_key("brute_force"));
    }
    writeln!(out, "{}", json!({ "summary": summary }))?;
    out.flush()?;
    eprintln!("disagreements={} invalid={}", summary.disagreements, summary.invalid);
    Ok(summary.disagreements == 0 && summary.invalid == 0)
}
