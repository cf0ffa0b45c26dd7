//! Command-line front end: datum summaries, canonical-basis table
//! generation with an on-disk cache, spherical structure-constant tables,
//! and verification campaigns.
//!
//! Exit codes: 0 success, 1 verification failure, 2 configuration error,
//! 3 violated internal assertion.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

use hecke_core::cache;
use hecke_core::coxeter::CoxeterDatum;
use hecke_core::folding::{fold, DiagramAutomorphism};
use hecke_core::hecke::HeckeAlgebra;
use hecke_core::satake::j_ring_table;
use hecke_core::verify;
use hecke_core::weyl::{DatumSpec, RootDatum};
use hecke_core::{Error, Result};

mod config;
use config::JobConfig;

#[derive(Parser)]
#[command(
    name = "hecke",
    version,
    about = "Exact Kazhdan-Lusztig bases and spherical structure constants \
             of (weighted) affine Hecke algebras"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Default)]
pub struct CommonOpts {
    /// Plain key=value configuration file; command-line flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Cartan datum, e.g. "A2~" (affine) or "A3" (finite).
    #[arg(long)]
    datum: Option<String>,
    /// Diagram automorphism as a node permutation, e.g. "0,2,1".
    /// Mutually exclusive with --weights: folding determines L.
    #[arg(long)]
    fold: Option<String>,
    /// Explicit generator weights, e.g. "2,2,2".
    #[arg(long)]
    weights: Option<String>,
    /// Hard Coxeter-length cutoff for Hecke arithmetic.
    #[arg(long)]
    cutoff: Option<usize>,
    /// Dominant bound: include M_x with L(M_x) <= bound (satake), or
    /// elements of length <= bound (kl, verify ranges).
    #[arg(long)]
    bound: Option<u64>,
    /// Worker threads for independent cells.
    #[arg(long)]
    jobs: Option<usize>,
    /// Cache directory (overrides $HECKE_CACHE_DIR and the config file).
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Output file path (defaults to stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit canonically ordered JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a summary of the configured (weighted) Coxeter datum.
    Datum(CommonOpts),
    /// Compute canonical-basis polynomials up to the bound and persist
    /// them to the cache.
    Kl(CommonOpts),
    /// Emit the spherical structure-constant table.
    Satake(CommonOpts),
    /// Run a named cross-check suite.
    Verify {
        #[command(flatten)]
        common: CommonOpts,
        /// One of: r-recursion, bar, 41c, weightmult, tensor, sl2, xi.
        #[arg(long)]
        suite: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Config(_)
        | Error::InvalidDatum(_)
        | Error::InvalidAutomorphism(_)
        | Error::OrderCap { .. }
        | Error::Cutoff { .. }
        | Error::Format(_)
        | Error::Io(_)
        | Error::Json(_) => 2,
        Error::Inexact(_)
        | Error::NonTermination(_)
        | Error::DegreeViolation { .. }
        | Error::NegativeResidue(_)
        | Error::Assertion(_) => 3,
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Datum(opts) => cmd_datum(&JobConfig::resolve(&opts)?),
        Cmd::Kl(opts) => cmd_kl(&JobConfig::resolve(&opts)?),
        Cmd::Satake(opts) => cmd_satake(&JobConfig::resolve(&opts)?),
        Cmd::Verify { common, suite } => cmd_verify(&JobConfig::resolve(&common)?, &suite),
    }
}

/// Build the configured algebra: plain, weight-overridden, or folded.
fn build_algebra(cfg: &JobConfig) -> Result<HeckeAlgebra> {
    let datum = Arc::new(RootDatum::build(DatumSpec::parse(&cfg.datum)?)?);
    let group = match &cfg.fold {
        Some(perm) => {
            let f = fold(datum, &DiagramAutomorphism::parse(perm)?)?;
            f.group
        }
        None => CoxeterDatum::standard(datum, cfg.weights.clone())?,
    };
    Ok(HeckeAlgebra::new(Arc::new(group), cfg.cutoff))
}

fn in_pool<T: Send>(jobs: usize, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Config(format!("cannot build a {jobs}-thread pool: {e}")))?;
    pool.install(f)
}

fn write_output(cfg: &JobConfig, content: &str) -> Result<()> {
    match &cfg.out {
        Some(path) => std::fs::write(path, content)?,
        None => println!("{content}"),
    }
    Ok(())
}

fn cmd_datum(cfg: &JobConfig) -> Result<ExitCode> {
    let h = build_algebra(cfg)?;
    let g = &h.group;
    println!("datum: {}", cfg.label());
    println!("generators: {}", g.num_generators());
    println!("weights: {:?}", g.weights);
    println!("coxeter matrix (0 = infinite):");
    for row in &g.coxeter_matrix {
        println!("  {row:?}");
    }
    if let Some(s) = g.special {
        println!("special (affine) generator: index {s}");
        println!("|W0| = {}, L(M0) = {}", g.finite_elements().len(), h.l_m0());
        let reps = g.dominant_coset_reps(cfg.bound.max(h.l_m0()));
        let sample: Vec<Vec<i64>> = reps
            .iter()
            .map(|m| g.datum.dominant_rep(&m.translation))
            .collect();
        println!("Q+ sample (L(M_x) ascending): {sample:?}");
    } else {
        println!("finite datum: {} elements", g.finite_elements().len());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_kl(cfg: &JobConfig) -> Result<ExitCode> {
    let h = build_algebra(cfg)?;
    let label = cfg.label();
    let warmed = cache::load(&h, &cfg.cache_dir, &label)?;
    if warmed > 0 {
        println!("cache: warmed {warmed} canonical elements");
    } else {
        println!("cache: cold");
    }
    let range = (cfg.bound as usize).min(cfg.cutoff);
    let elems = h.group.enumerate_to_length(range);
    for w in &elems {
        h.canonical(w)?;
    }
    let path = cache::save(&h, &cfg.cache_dir, &label)?;
    println!(
        "computed canonical basis for {} elements (length <= {range}); table at {}",
        elems.len(),
        path.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_satake(cfg: &JobConfig) -> Result<ExitCode> {
    let h = build_algebra(cfg)?;
    if h.group.special.is_none() {
        return Err(Error::Config(
            "satake tables need an affine datum (the spherical subalgebra \
             of a finite datum is trivial)"
                .into(),
        ));
    }
    let label = cfg.label();
    cache::load(&h, &cfg.cache_dir, &label)?;
    let reps = h.group.dominant_coset_reps(cfg.bound);
    if reps.is_empty() {
        return Err(Error::Config(format!(
            "no dominant elements with L(M_x) <= {}; raise --bound",
            cfg.bound
        )));
    }
    let table = in_pool(cfg.jobs, || j_ring_table(&h, &reps))?;
    cache::save(&h, &cfg.cache_dir, &label)?;
    if cfg.json {
        let doc = table.to_json(&h.group.weights, &label);
        write_output(cfg, &serde_json::to_string_pretty(&doc)?)?;
    } else {
        let mut text = table.render_text();
        // The folded rank-1 case realizes the SL2 representation ring.
        if h.group.num_generators() == 2 && cfg.fold.is_some() {
            let n = reps.len();
            let matches = (0..n).all(|a| {
                (0..n).all(|b| {
                    let cg: std::collections::BTreeMap<usize, BigInt> =
                        hecke_core::charoracle::sl2_clebsch_gordan(a, b)
                            .into_iter()
                            .map(|(c, m)| (c, BigInt::from(m)))
                            .collect();
                    table.row(a, b) == cg
                })
            });
            text.push_str(&format!("\nmatches SL2 Clebsch-Gordan: {matches}"));
        }
        write_output(cfg, &text)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(cfg: &JobConfig, suite: &str) -> Result<ExitCode> {
    let rep = in_pool(cfg.jobs, || {
        verify::run_named(suite, &cfg.datum, cfg.bound)
    })?;
    println!("{}", rep.render());
    if rep.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}
