use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use ccs_core::finite_type::{
    alexander_degree, conway_coeffs, k5n_from_kauffman, obstruction_o, v3_from_jones,
    v5_from_kauffman, DegreeMode,
};
use ccs_core::floer_rank::{
    hf_rank, slope_pair_constraints, MinusTypeRule, PlusTypeRule, RankProfile,
};
use ccs_core::knot_model::{normalize_slope, parse_knot_code, KnotDiagram, Slope};
use ccs_core::quantum_so3::{
    jones_at_root, lens_space_tau, tau_so3_surgery, zero_type_obstruction_general,
    ColoredJonesVector,
};
use ccs_core::skein_engine::{
    alexander_conway, jones_from_kauffman, kauffman_polynomial, seifert_matrix, SkeinCache,
};
use ccs_pipeline::{
    cache_from_env, emit, ingest, ingest_str, load_config, run_pipeline, Config, Format, Ingested,
};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "ccs",
    version,
    about = "Obstructions to chirally cosmetic surgeries on knots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TableArgs {
    /// Knot table CSV; defaults to the vendored table up to ten crossings.
    #[arg(long)]
    table: Option<PathBuf>,
    /// key = value configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    max_crossings: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Print polynomial and finite type invariants of a knot.
    Invariants {
        /// Knot name from the table, a PD code such as PD[X(1,5,2,4),...], or a DT code such as DT[4,6,2].
        knot: String,
        #[command(flatten)]
        table: TableArgs,
    },
    /// Classify every knot of a table.
    Classify {
        #[command(flatten)]
        table: TableArgs,
    },
    /// Quantum SO(3) test for a surgery slope.
    So3 {
        #[arg(long, default_value_t = 5)]
        r: u32,
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
        /// Colored Jones data as JSON, required when r > 5.
        #[arg(long)]
        colors: Option<PathBuf>,
        knot: String,
        #[command(flatten)]
        table: TableArgs,
    },
    /// Heegaard Floer rank of a surgery and the slope constraints of a profile.
    Rank {
        #[arg(long, allow_hyphen_values = true)]
        nu: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        nu_mirror: i64,
        #[arg(long)]
        ck: i64,
        #[arg(long)]
        genus: i64,
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
    },
    /// Full report reproducing the summary tables.
    Report {
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        table: TableArgs,
    },
}

/// Errors that abort before any knot is processed.
struct Usage(anyhow::Error);

fn parse_slope(s: &str) -> Result<Slope> {
    let (m, n) = s.split_once('/').unwrap_or((s, "1"));
    let m: i64 = m
        .trim()
        .parse()
        .with_context(|| format!("bad slope numerator in {s:?}"))?;
    let n: i64 = n
        .trim()
        .parse()
        .with_context(|| format!("bad slope denominator in {s:?}"))?;
    normalize_slope(m, n).map_err(|e| anyhow!("{e}"))
}

fn load_table(t: &TableArgs) -> Result<(Ingested, Config)> {
    let mut cfg = match &t.config {
        Some(p) => load_config(p)?,
        None => Config::default(),
    };
    if t.max_crossings.is_some() {
        cfg.max_crossings = t.max_crossings;
    }
    let table = match &t.table {
        Some(p) => ingest(p)?,
        None => ingest_str(ccs_pipeline::FIXTURE_CSV)?,
    };
    Ok((table, cfg))
}

fn resolve_knot(knot: &str, t: &TableArgs) -> Result<(String, KnotDiagram)> {
    if knot.contains("X(") || knot.contains("X[") || knot.trim_start().starts_with("DT") {
        return Ok((
            "input".into(),
            parse_knot_code(knot).map_err(|e| anyhow!("{e}"))?,
        ));
    }
    let (table, _) = load_table(t)?;
    let row = table
        .rows
        .into_iter()
        .find(|r| r.name == knot)
        .ok_or_else(|| anyhow!("no knot named {knot:?} in the table"))?;
    Ok((row.name, row.diagram))
}

fn invariants(knot: &str, t: &TableArgs) -> Result<()> {
    let (name, d) = resolve_knot(knot, t)?;
    let cfg = match &t.config {
        Some(p) => load_config(p)?,
        None => Config::default(),
    };
    let f = kauffman_polynomial(&d, &mut SkeinCache::new(), &cfg.limits)?;
    let jones = jones_from_kauffman(&f)?;
    let sm = seifert_matrix(&d)?;
    let (delta, conway) = alexander_conway(&sm);
    let (a2, a4) = conway_coeffs(&conway);
    let v3 = v3_from_jones(&jones);
    let mut out = std::io::stdout().lock();
    writeln!(out, "knot        {name}")?;
    writeln!(out, "crossings   {}", d.n_crossings())?;
    writeln!(out, "writhe      {}", d.writhe())?;
    writeln!(out, "jones       {jones}")?;
    writeln!(out, "alexander   {delta}")?;
    writeln!(out, "conway      {conway}")?;
    writeln!(out, "kauffman    {f}")?;
    writeln!(out, "determinant {}", sm.determinant())?;
    writeln!(out, "signature   {}", sm.signature())?;
    writeln!(
        out,
        "d(K)        {} (top exponent {})",
        alexander_degree(&delta, DegreeMode::Breadth),
        alexander_degree(&delta, DegreeMode::TopExponent)
    )?;
    writeln!(out, "a2 a4       {a2} {a4}")?;
    writeln!(out, "v3          {v3}")?;
    writeln!(out, "v5          {}", v5_from_kauffman(&f)?)?;
    for n in 2..=5 {
        writeln!(out, "k5,{n}        {}", k5n_from_kauffman(&f, n)?)?;
    }
    writeln!(out, "O(K)        {}", obstruction_o(a2, a4, &v3))?;
    Ok(())
}

fn so3(r: u32, slope: &str, colors: Option<&PathBuf>, knot: &str, t: &TableArgs) -> Result<()> {
    let s = parse_slope(slope)?;
    let (name, d) = resolve_knot(knot, t)?;
    let cfg = Config::default();
    let jones = jones_from_kauffman(&kauffman_polynomial(
        &d,
        &mut SkeinCache::new(),
        &cfg.limits,
    )?)?;
    let colors = match colors {
        Some(p) => ColoredJonesVector::from_json(&std::fs::read_to_string(p)?)?.1,
        None => ColoredJonesVector::from_jones(r, &jones)?,
    };
    if colors.r != r {
        bail!("colored Jones data is for r = {}, not {r}", colors.r);
    }
    let tau = tau_so3_surgery(r, &colors, &s)?;
    let lens = lens_space_tau(r, &s)?;
    let mut out = std::io::stdout().lock();
    writeln!(out, "knot            {name}")?;
    writeln!(out, "slope           {s}")?;
    if r == 5 {
        writeln!(
            out,
            "V(zeta_5) real  {}",
            jones_at_root(&jones, 5).is_real()
        )?;
    }
    writeln!(out, "tau_{r}(surgery)  {tau}")?;
    writeln!(out, "tau_{r}(L(m,n))   {lens}")?;
    writeln!(
        out,
        "0-type verdict  {:?}",
        zero_type_obstruction_general(&colors, &s)?
    )?;
    Ok(())
}

fn rank(nu: i64, nu_mirror: i64, ck: i64, genus: i64, slope: &str) -> Result<()> {
    let s = parse_slope(slope)?;
    let p = RankProfile::new(nu, nu_mirror, ck, genus)?;
    let c = slope_pair_constraints(&p);
    let mut out = std::io::stdout().lock();
    writeln!(out, "rank HF({s})  {}", hf_rank(&p, &s))?;
    match c.plus_type {
        PlusTypeRule::Forbidden => writeln!(out, "plus type     forbidden")?,
        PlusTypeRule::SlopesAtLeast(t) => writeln!(out, "plus type     both slopes >= {t}")?,
    }
    match &c.minus_type {
        MinusTypeRule::SumZero => writeln!(out, "minus type    n + n' = 0")?,
        MinusTypeRule::Equalities {
            threshold,
            below,
            above_allowed,
        } => {
            writeln!(
                out,
                "minus type    (n+n')/m = {below} when m/n <= {threshold}"
            )?;
            if *above_allowed {
                writeln!(
                    out,
                    "              (n+n')/m = (4nu-2)(-n')/(m C_K) when m/n >= {threshold}"
                )?;
            } else {
                writeln!(out, "              none with m/n >= {threshold}")?;
            }
        }
    }
    writeln!(out, "|(n+n')/m| <  {}", c.bound)?;
    Ok(())
}

fn batch(t: &TableArgs) -> Result<ccs_pipeline::Report, Usage> {
    let (table, cfg) = load_table(t).map_err(Usage)?;
    let cache = cache_from_env()
        .context("opening the invariant cache")
        .map_err(Usage)?;
    Ok(run_pipeline(&table, &cfg, cache.as_ref()))
}

fn run(cli: Cli) -> Result<ExitCode, Usage> {
    let per_knot = |r: Result<()>| match r {
        Ok(()) => Ok(ExitCode::SUCCESS),
        Err(e) => {
            eprintln!("error: {e:#}");
            Ok(ExitCode::from(2))
        }
    };
    match cli.command {
        Command::Invariants { knot, table } => per_knot(invariants(&knot, &table)),
        Command::So3 {
            r,
            slope,
            colors,
            knot,
            table,
        } => {
            parse_slope(&slope).map_err(Usage)?;
            per_knot(so3(r, &slope, colors.as_ref(), &knot, &table))
        }
        Command::Rank {
            nu,
            nu_mirror,
            ck,
            genus,
            slope,
        } => {
            parse_slope(&slope).map_err(Usage)?;
            per_knot(rank(nu, nu_mirror, ck, genus, &slope))
        }
        Command::Classify { table } => {
            let report = batch(&table)?;
            let mut out = std::io::stdout().lock();
            for k in &report.knots {
                let _ = writeln!(out, "{}\t{}\t{}", k.name, k.status, k.fired.join(","));
            }
            for f in &report.failures {
                let _ = writeln!(
                    out,
                    "{}\tFailed\t{}: {}",
                    f.name.as_deref().unwrap_or("?"),
                    f.stage,
                    f.message
                );
            }
            Ok(if report.has_failures() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Report {
            format,
            output,
            table,
        } => {
            let format: Format = format.parse().map_err(|e: String| Usage(anyhow!(e)))?;
            let report = batch(&table)?;
            let bytes = emit(&report, format);
            match output {
                Some(p) => std::fs::write(&p, bytes)
                    .with_context(|| format!("writing {}", p.display()))
                    .map_err(Usage)?,
                None => {
                    let _ = std::io::stdout().lock().write_all(&bytes);
                }
            }
            Ok(if report.has_failures() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
