//! `pca-forge` command-line front end.
//!
//! Exit codes: 0 success, 1 claimed property violated, 2 usage or
//! validation error, 3 iteration cap reached.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pca_forge::bounds::{figure_1a, figure_1b, sweep, Axis, Outcome};
use pca_forge::construct::{
    build_apca_cyclic, build_apca_derandomized, build_apca_frobenius, build_apca_randomized,
    build_concat, build_pca_moser_tardos, BuildOptions,
};
use pca_forge::coverage::{completeness_of, coverage_profile, defect_allowance};
use pca_forge::io::{self, Claims, WriteOptions};
use pca_forge::{CyclicVariant, Error, Formula, Params, Report, Sweep};

#[derive(Parser, Debug)]
#[command(name = "pca-forge", version, about = "Partial covering arrays: bounds, builders, verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate existence bounds at one parameter point.
    Bounds(BoundsArgs),
    /// Build and verify an array.
    Generate(GenerateArgs),
    /// Check an array file against a coverage claim.
    Verify(VerifyArgs),
    /// Tabulate bounds along the m or k axis.
    Compare(CompareArgs),
}

#[derive(Args, Debug)]
struct ParamArgs {
    /// Strength.
    #[arg(long)]
    t: usize,
    /// Number of columns.
    #[arg(long)]
    k: usize,
    /// Alphabet size.
    #[arg(long)]
    v: u64,
    /// Distinct tuples required per t-set [default: v^t].
    #[arg(long)]
    m: Option<u64>,
    /// Tolerated fraction of defective t-sets.
    #[arg(long, default_value_t = 0.01)]
    epsilon: f64,
}

impl ParamArgs {
    fn params(&self, seed: u64) -> Result<Params, Error> {
        match self.m {
            Some(m) => Params::new(self.t, self.k, self.v, m, self.epsilon, seed),
            None => Params::covering(self.t, self.k, self.v, self.epsilon, seed),
        }
    }
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Every formula.
    #[arg(long, conflicts_with = "formula")]
    all: bool,
    /// Formula label or alias (eq5, eq6, eq8); repeatable.
    #[arg(long, required_unless_present = "all")]
    formula: Vec<Formula>,
    /// How the cyclic PCA bound is read.
    #[arg(long, alias = "eq8-variant")]
    cyclic_variant: Option<CyclicVariant>,
    /// Print CSV instead of a table.
    #[arg(long)]
    csv: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Algorithm {
    /// Moser–Tardos resampling, partial m-covering.
    Mt,
    /// Sample-and-restart ε-almost covering.
    Apca,
    /// Cyclic development of a random base.
    Cyclic,
    /// Affine development over GF(v) plus constant rows.
    Frobenius,
    /// Partial array stacked over a cyclic almost-covering array.
    Concat,
    /// Column-by-column conditional expectation, m = v^t.
    Derand,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    alg: Algorithm,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, env = "PCA_FORGE_SEED", default_value_t = 0)]
    seed: u64,
    /// Array output path.
    #[arg(long)]
    out: PathBuf,
    /// First symbol written, 0 or 1.
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    base: u8,
    /// JSON report path [default: stdout].
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    max_iterations: Option<u64>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Array file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Strength [default: from the file header].
    #[arg(long)]
    t: Option<usize>,
    /// Required distinct tuples [default: file header, else v^t].
    #[arg(long)]
    m: Option<u64>,
    /// Check the ε-almost property instead of every t-set.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Report (q,t)-completeness.
    #[arg(long)]
    q: Option<f64>,
    /// Write defective t-sets here.
    #[arg(long)]
    defects_csv: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Figure {
    #[value(name = "1a")]
    A,
    #[value(name = "1b")]
    B,
}

#[derive(Args, Debug)]
struct CompareArgs {
    /// Preset: 1a sweeps m in 4073..=4096 at t=6,k=20,v=4; 1b sweeps
    /// k in 12,16,..,60 at t=6,v=4,m=4092.
    #[arg(long, value_enum, conflicts_with_all = ["axis", "t", "k", "v", "m", "formula"])]
    figure: Option<Figure>,
    #[arg(long, required_unless_present = "figure", requires_all = ["from", "to", "t", "k", "v"])]
    axis: Option<Axis>,
    #[arg(long)]
    from: Option<u64>,
    #[arg(long)]
    to: Option<u64>,
    #[arg(long, default_value_t = 1)]
    step: u64,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    v: Option<u64>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long, default_value_t = 0.01)]
    epsilon: f64,
    /// Formulas to tabulate [default: lll and pca-cyclic].
    #[arg(long)]
    formula: Vec<Formula>,
    /// How the cyclic PCA bound is read [default: printed].
    #[arg(long, alias = "eq8-variant")]
    cyclic_variant: Option<CyclicVariant>,
    /// CSV output path [default: stdout].
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::IterationCap { .. } => 3,
            Error::VerificationFailed(_) => 1,
            _ => 2,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 2, msg: msg.into() }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Bounds(a) => cmd_bounds(a),
        Command::Generate(a) => cmd_generate(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Compare(a) => cmd_compare(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn with_variant(formula: Formula, variant: Option<CyclicVariant>) -> Formula {
    match (formula, variant) {
        (Formula::PcaCyclic(_), Some(v)) => Formula::PcaCyclic(v),
        _ => formula,
    }
}

fn dedup(formulas: impl IntoIterator<Item = Formula>) -> Vec<Formula> {
    let mut out: Vec<Formula> = Vec::new();
    for f in formulas {
        if !out.contains(&f) {
            out.push(f);
        }
    }
    out
}

fn cmd_bounds(a: BoundsArgs) -> Result<u8, Failure> {
    let params = a.params.params(0)?;
    let chosen = if a.all {
        Formula::ALL.to_vec()
    } else {
        a.formula.clone()
    };
    let formulas = dedup(chosen.into_iter().map(|f| with_variant(f, a.cyclic_variant)));
    let table = sweep(&formulas, Axis::M, &[params.m], &params)?;
    if a.csv {
        print!("{}", io::sweep_csv(&table));
        return Ok(0);
    }
    println!("{:<18} {:>10}  {:>14}  source", "formula", "n_rows", "real_bound");
    for (f, outcome) in &table.points[0].results {
        match outcome {
            Outcome::Feasible(b) => println!(
                "{:<18} {:>10}  {:>14}  {}",
                f.label(),
                b.n_rows,
                io::format_g6(b.real_bound),
                b.source
            ),
            Outcome::Gap(why) => {
                println!("{:<18} {:>10}  {:>14}  {why}", f.label(), "-", "-")
            }
        }
    }
    if formulas
        .iter()
        .any(|f| matches!(f, Formula::ReferenceUpper | Formula::ReferenceLower))
    {
        println!("(ref-upper and ref-lower omit their o(1) factors)");
    }
    Ok(0)
}

fn cmd_generate(a: GenerateArgs) -> Result<u8, Failure> {
    let params = a.params.params(a.seed)?;
    let opts = BuildOptions {
        max_iterations: a.max_iterations,
    };
    let report: Report = match a.alg {
        Algorithm::Mt => build_pca_moser_tardos(&params, &opts)?,
        Algorithm::Apca => build_apca_randomized(&params, &opts)?,
        Algorithm::Cyclic => build_apca_cyclic(&params, &opts)?,
        Algorithm::Frobenius => build_apca_frobenius(&params, &opts)?,
        Algorithm::Concat => build_concat(&params, &opts)?,
        Algorithm::Derand => build_apca_derandomized(&params, &opts)?,
    };
    let claims = Some(Claims {
        t: params.t,
        m: params.m,
        epsilon: params.epsilon,
    });
    io::write_array(&report.array, &a.out, &WriteOptions { base: a.base, claims })?;
    let json = format!("{:#}\n", report.to_json());
    match &a.report {
        Some(path) => fs::write(path, json).map_err(|e| usage(format!("{}: {e}", path.display())))?,
        None => print!("{json}"),
    }
    eprintln!(
        "{}: {} x {} array, {} ({} defective), written to {}",
        report.algorithm,
        report.array.rows(),
        report.array.cols(),
        report.verifier,
        report.defective,
        a.out.display()
    );
    Ok(0)
}

fn cmd_verify(a: VerifyArgs) -> Result<u8, Failure> {
    let file = io::read_array_file(&a.input)?;
    let array = &file.array;
    let t = a
        .t
        .or(file.claims.map(|c| c.t))
        .ok_or_else(|| usage("--t is required when the file carries no claims"))?;
    if t < 2 || t > array.cols() {
        return Err(usage(format!("t={t} must lie in 2..={}", array.cols())));
    }
    let full = pca_forge::params::full_count(array.v(), t)?;
    let m = a.m.or(file.claims.map(|c| c.m)).unwrap_or(full);
    if m == 0 || m > full {
        return Err(Error::MOutOfRange { m, max: full }.into());
    }
    if let Some(e) = a.epsilon {
        if !(0.0..=1.0).contains(&e) {
            return Err(Error::EpsilonOutOfRange(e).into());
        }
    }
    if let Some(q) = a.q {
        if !(0.0..=1.0).contains(&q) {
            return Err(usage(format!("q={q} must lie in [0, 1]")));
        }
    }
    let profile = coverage_profile(array, t)?;
    let defects = profile.defective(m);
    let tsets = profile.counts.len() as u64;
    println!("array: {} x {}, v={}", array.rows(), array.cols(), array.v());
    println!("t-sets: {tsets}");
    println!(
        "min_count: {}",
        if tsets == 0 { 0 } else { profile.min_count }
    );
    println!("defective (m={m}): {}", defects.len());
    if let Some(q) = a.q {
        println!("completeness(q={q}): {}", io::format_g6(completeness_of(&profile, q)));
    }
    if let Some(path) = &a.defects_csv {
        io::write_defects_csv(&defects, path)?;
    }
    let holds = match a.epsilon {
        Some(e) => {
            let allowed = defect_allowance(e, tsets);
            println!("allowed (eps={e}): {allowed}");
            defects.len() as u64 <= allowed
        }
        None => defects.is_empty(),
    };
    if holds {
        println!("verdict: holds");
        Ok(0)
    } else {
        let w = &defects[0];
        let cols: Vec<String> = w.tset.iter().map(ToString::to_string).collect();
        println!("verdict: violated");
        println!(
            "witness: columns [{}] cover {} of {full} tuples, {m} required",
            cols.join(", "),
            w.count
        );
        Ok(1)
    }
}

fn cmd_compare(a: CompareArgs) -> Result<u8, Failure> {
    let table: Sweep = match a.figure {
        Some(Figure::A) => figure_1a(a.cyclic_variant.unwrap_or_default()),
        Some(Figure::B) => figure_1b(a.cyclic_variant.unwrap_or_default()),
        None => custom_sweep(&a)?,
    };
    let csv = io::sweep_csv(&table);
    match &a.out {
        Some(path) => io::write_sweep_csv(&table, path)?,
        None => print!("{csv}"),
    }
    Ok(0)
}

fn custom_sweep(a: &CompareArgs) -> Result<Sweep, Failure> {
    let axis = a.axis.ok_or_else(|| usage("--axis or --figure is required"))?;
    let missing = |name: &str| usage(format!("--{name} is required for a custom sweep"));
    let (from, to) = (a.from.ok_or_else(|| missing("from"))?, a.to.ok_or_else(|| missing("to"))?);
    if from > to || a.step == 0 {
        return Err(usage(format!("empty range {from}..={to} step {}", a.step)));
    }
    let (t, k, v) = (
        a.t.ok_or_else(|| missing("t"))?,
        a.k.ok_or_else(|| missing("k"))?,
        a.v.ok_or_else(|| missing("v"))?,
    );
    // the swept coordinate is overwritten per point, so the base only has
    // to be valid itself
    let base = match a.m {
        Some(m) if axis == Axis::K => Params::new(t, k, v, m, a.epsilon, 0)?,
        _ => Params::covering(t, k, v, a.epsilon, 0)?,
    };
    let formulas = if a.formula.is_empty() {
        vec![Formula::Lll, Formula::PcaCyclic(a.cyclic_variant.unwrap_or_default())]
    } else {
        dedup(a.formula.iter().map(|&f| with_variant(f, a.cyclic_variant)))
    };
    let values: Vec<u64> = (from..=to).step_by(a.step as usize).collect();
    Ok(sweep(&formulas, axis, &values, &base)?)
}
