mod compare;
mod render;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use pickroute::dp::{solve_baseline, solve_reduced};
use pickroute::io::{parse_instance, parse_solution, serialize_instance, serialize_solution};
use pickroute::oracle::{held_karp_solution, DEFAULT_LIMIT};
use pickroute::{generate_instance, Instance};

#[derive(Parser)]
#[command(name = "pickroute", version, about = "Exact picker routing in rectangular warehouses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance.
    Gen(GenArgs),
    /// Solve an instance and write its solution file.
    Solve(SolveArgs),
    /// Generate instances and cross-check every solver and oracle on them.
    Compare(compare::CompareArgs),
    /// Draw an instance and its tour as SVG.
    Render(RenderArgs),
}

#[derive(clap::Args)]
struct GenArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long = "W")]
    w: u64,
    #[arg(long = "H")]
    h: u64,
    #[arg(long, default_value_t = 0)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Reduced,
    Baseline,
    Oracle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Reduced => "reduced",
            Method::Baseline => "baseline",
            Method::Oracle => "oracle",
        }
    }
}

#[derive(clap::Args)]
struct SolveArgs {
    /// Instance file.
    instance: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Reduced)]
    method: Method,
    /// Solution output path; stdout summary only when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct RenderArgs {
    instance: PathBuf,
    solution: PathBuf,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn read_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn gen(args: &GenArgs) -> Result<()> {
    let instance = generate_instance(args.m, args.n, args.w, args.h, args.k, args.seed)?;
    if args.n > 3 {
        eprintln!("warning: n = {}: solvers support n ≤ 3", args.n);
    }
    write_output(args.out.as_deref(), &serialize_instance(&instance))
}

pub fn run_method(instance: &Instance, method: Method) -> pickroute::Result<pickroute::Solution> {
    match method {
        Method::Reduced => solve_reduced(instance),
        Method::Baseline => solve_baseline(instance),
        Method::Oracle => held_karp_solution(instance, DEFAULT_LIMIT),
    }
}

fn solve(args: &SolveArgs) -> Result<()> {
    let instance = read_instance(&args.instance)?;
    let solution = run_method(&instance, args.method)?;
    if let Some(path) = &args.out {
        fs::write(path, serialize_solution(&solution)).with_context(|| format!("writing {}", path.display()))?;
    }
    println!(
        "cost={} stages={} expansions={} method={}",
        solution.cost,
        solution.stages,
        solution.expansions,
        args.method.name()
    );
    Ok(())
}

fn render(args: &RenderArgs) -> Result<()> {
    let instance = read_instance(&args.instance)?;
    let text = fs::read_to_string(&args.solution).with_context(|| format!("reading {}", args.solution.display()))?;
    let solution = parse_solution(&text).with_context(|| format!("parsing {}", args.solution.display()))?;
    let svg = render::render_svg(&instance, &solution)?;
    write_output(args.out.as_deref(), &svg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen(a) => gen(a).map(|_| true),
        Command::Solve(a) => solve(a).map(|_| true),
        Command::Compare(a) => compare::run(a),
        Command::Render(a) => render(a).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

