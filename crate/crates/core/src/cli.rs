//! Command-line front end.
//!
//! Diagnostics go to standard error and data to standard output or files.
//! Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 no
//! gauge decomposition found, 4 resource budget exceeded, 5 ring
//! orthogonality or commutation failure in a construction.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::constructions::{self, ClassicalCode, SubsystemCodeSpec};
use crate::distance::{dressed_distance, DistanceMode, DistanceQuery};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::io::{self, SplitReportJson, TableauJson};
use crate::par::{self, Execution};
use crate::repcount;
use crate::ring::RingMatrix;
use crate::split::{
    split_generators, split_operators, SplitConfig, SplitReport, DEFAULT_COMBINATION_BUDGET,
    DEFAULT_GAUGES_PER_STAB, DEFAULT_MAX_SIZE,
};
use crate::tableau::{
    build_css_tableau, compute_group_params, multiply_stabilizer_rows, verify_subsystem,
    verify_symplectic, CodeParams, CssCode, Tableau,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "stabsplit",
    version,
    about = "Split CSS stabilizers into low-weight gauge operators"
)]
pub struct Cli {
    /// Worker threads for the parallel scans; 1 runs everything serially.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Write the JSON run report to this file.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Print the JSON run report instead of the human summary.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include wall-clock timing in the report (makes it non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the symplectic tableau of a CSS code.
    Build {
        #[arg(long)]
        hx: PathBuf,
        #[arg(long)]
        hz: PathBuf,
        /// Tableau JSON output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split stabilizers into gauge generators (alg 1) or operators (alg 2).
    Split {
        #[arg(long)]
        tableau: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        alg: u8,
        /// 1-based tableau rows to replace, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        rows: Vec<usize>,
        #[arg(long)]
        w: usize,
        #[arg(long, default_value_t = DEFAULT_GAUGES_PER_STAB)]
        gauges_per_stab: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_SIZE)]
        max_size: usize,
        /// Largest C(pool, gauges-per-stab) allowed in a combination scan.
        #[arg(long, default_value_t = DEFAULT_COMBINATION_BUDGET)]
        budget: u128,
        /// Script of "target <- s1 s2 ..." stabilizer merges applied first.
        #[arg(long)]
        seed_preprocess: Option<PathBuf>,
        /// Weight limit for the distance of the result (alg 1 only).
        #[arg(long, default_value_t = 4)]
        distance_limit: usize,
        /// Output: tableau JSON for alg 1, gauge group matrix for alg 2.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Product constructions.
    Construct {
        #[arg(value_enum)]
        kind: ConstructKind,
        /// Catalog names: the base matrix, then the generator (slp) if any.
        #[arg(long, num_args = 1..=2)]
        catalog: Vec<String>,
        /// Base matrix file (binary for shp, ring for lp and slp).
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// Generator matrix file (shp: optional, slp: required).
        #[arg(long)]
        generator: Option<PathBuf>,
        /// Ring files hold exponent tables (-1 for zero).
        #[arg(long)]
        exponents: bool,
        /// Directory for the emitted matrices.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Bounded brute-force distance.
    Distance {
        #[arg(long)]
        tableau: PathBuf,
        #[arg(long, default_value_t = 3)]
        weight_limit: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Dressed)]
        mode: ModeArg,
        /// Run searches beyond the default scale guard.
        #[arg(long)]
        force: bool,
    },
    /// Parameters of a tableau or of a gauge group given as a matrix.
    Params {
        #[arg(long, conflicts_with = "gauge")]
        tableau: Option<PathBuf>,
        /// Matrix file with 2n columns, one gauge generator per row.
        #[arg(long)]
        gauge: Option<PathBuf>,
    },
    /// Count representations of an r-pair gauge block.
    CountReps {
        #[arg(long)]
        r: usize,
        /// Also run the exhaustive count (r <= 2).
        #[arg(long)]
        brute_force: bool,
        /// Print the pair table (r <= 2).
        #[arg(long)]
        pair_table: bool,
    },
    /// Check that a tableau is a valid subsystem tableau.
    Verify {
        #[arg(long)]
        tableau: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    Shp,
    Lp,
    Slp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Bare,
    Dressed,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SplitFailed { .. } => 3,
        Error::ResourceBudget { .. } | Error::Refused(_) => 4,
        Error::RingOrthogonality { .. }
        | Error::RingMismatch { .. }
        | Error::CommutationCheck(_) => 5,
        Error::Internal(_) => 1,
        _ => 2,
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub tool: String,
    pub version: String,
    pub command: Vec<String>,
    /// Input path to SHA-256 digest.
    pub inputs: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<CodeParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split: Option<SplitReportJson>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

struct Run {
    inputs: BTreeMap<String, String>,
    params: Option<CodeParams>,
    split: Option<SplitReportJson>,
    result: Value,
    human: Vec<String>,
    ok: bool,
}

impl Run {
    fn new() -> Self {
        Self {
            inputs: BTreeMap::new(),
            params: None,
            split: None,
            result: Value::Null,
            human: Vec::new(),
            ok: true,
        }
    }

    fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = std::fs::read(path)?;
        self.inputs
            .insert(path.display().to_string(), io::sha256_hex(&bytes));
        String::from_utf8(bytes)
            .map_err(|_| Error::InvalidConfig(format!("{} is not UTF-8", path.display())))
    }

    fn say(&mut self, line: impl Into<String>) {
        self.human.push(line.into());
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run_from_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    let echo: Vec<String> = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let start = Instant::now();
    let threads = cli.threads;
    let outcome = par::with_threads(threads, || execute(&cli));
    match outcome {
        Ok(run) => {
            let report = RunReport {
                schema: SCHEMA_VERSION,
                tool: env!("CARGO_PKG_NAME").into(),
                version: env!("CARGO_PKG_VERSION").into(),
                command: echo,
                inputs: run.inputs,
                params: run.params,
                split: run.split,
                result: run.result,
                timing_ms: cli.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
            };
            let json = serde_json::to_string_pretty(&report).expect("report serializes");
            if let Some(path) = &cli.report {
                if let Err(e) = std::fs::write(path, format!("{json}\n")) {
                    let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                    return 2;
                }
            }
            if cli.json {
                let _ = writeln!(stdout, "{json}");
            } else {
                for line in &run.human {
                    let _ = writeln!(stdout, "{line}");
                }
            }
            if run.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cli: &Cli) -> Result<Run> {
    let exec = Execution::from_threads(cli.threads);
    let mut run = Run::new();
    match &cli.command {
        Command::Build { hx, hz, out } => cmd_build(&mut run, hx, hz, out.as_deref())?,
        Command::Split {
            tableau,
            alg,
            rows,
            w,
            gauges_per_stab,
            max_size,
            budget,
            seed_preprocess,
            distance_limit,
            out,
        } => {
            let replace = rows
                .iter()
                .map(|&r| {
                    r.checked_sub(1)
                        .ok_or_else(|| Error::InvalidConfig("rows are 1-based".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            let cfg = SplitConfig::new(*w, replace)
                .with_gauges_per_stab(*gauges_per_stab)
                .with_max_size(*max_size)
                .with_budget(*budget)
                .with_execution(exec);
            cmd_split(
                &mut run,
                tableau,
                *alg,
                cfg,
                seed_preprocess.as_deref(),
                *distance_limit,
                out.as_deref(),
            )?
        }
        Command::Construct {
            kind,
            catalog,
            matrix,
            generator,
            exponents,
            out_dir,
        } => cmd_construct(
            &mut run,
            *kind,
            catalog,
            matrix.as_deref(),
            generator.as_deref(),
            *exponents,
            out_dir.as_deref(),
        )?,
        Command::Distance {
            tableau,
            weight_limit,
            mode,
            force,
        } => {
            let t = read_tableau(&mut run, tableau)?;
            let mode = match mode {
                ModeArg::Bare => DistanceMode::Bare,
                ModeArg::Dressed => DistanceMode::Dressed,
            };
            let q = DistanceQuery::from_tableau(&t, *weight_limit)
                .with_mode(mode)
                .with_force(*force)
                .with_execution(exec);
            let out = dressed_distance(&q)?;
            let witness = out
                .witness
                .as_ref()
                .map(|w| crate::pauli::PauliOperator::from_symplectic(w).to_string());
            run.result = json!({
                "distance": out.distance,
                "weight_limit": out.weight_limit,
                "witness": witness,
            });
            match out.distance {
                Some(d) => run.say(format!(
                    "distance {d} (witness {})",
                    witness.unwrap_or_default()
                )),
                None => run.say(format!("no logical of weight <= {weight_limit}")),
            }
        }
        Command::Params { tableau, gauge } => {
            let params = match (tableau, gauge) {
                (Some(p), None) => {
                    let t = read_tableau(&mut run, p)?;
                    compute_group_params(&t.gauge_group(), t.n())?
                }
                (None, Some(p)) => {
                    let m = io::parse_matrix_text(&run.read(p)?)?;
                    if m.ncols() % 2 != 0 {
                        return Err(Error::InvalidConfig(
                            "gauge matrix needs an even number of columns".into(),
                        ));
                    }
                    compute_group_params(&m, m.ncols() / 2)?
                }
                _ => {
                    return Err(Error::InvalidConfig(
                        "pass exactly one of --tableau and --gauge".into(),
                    ))
                }
            };
            run.say(params.summary());
            run.params = Some(params);
        }
        Command::CountReps {
            r,
            brute_force,
            pair_table,
        } => {
            let f = repcount::formula_count(*r)?;
            run.say(f.summary());
            if f.provisional {
                run.say(format!(
                    "multiplicity 2^r r! = {} is conjectured, not enumerated",
                    f.multiplicity
                ));
            }
            let mut result = json!({
                "r": f.r,
                "raw": f.raw.to_string(),
                "multiplicity": f.multiplicity.to_string(),
                "unique": f.unique.to_string(),
                "provisional": f.provisional,
            });
            if *brute_force {
                let b = repcount::brute_force_count(*r)?;
                run.say(format!("exhaustive: {}", b.summary()));
                run.say(format!("choices per position: {:?}", b.filter_counts));
                result["brute_force"] = json!({
                    "raw": b.raw.to_string(),
                    "unique": b.unique.to_string(),
                    "filter_counts": b.filter_counts,
                });
                run.ok = b.raw == f.raw && b.unique == f.unique;
            }
            if *pair_table {
                if *r > repcount::MAX_BRUTE_FORCE_R {
                    return Err(Error::Refused(
                        "pair table printing is limited to r <= 2".into(),
                    ));
                }
                let p = repcount::PairTable::new(*r)?;
                let rows = p.table.to_bit_strings();
                run.human.extend(rows.iter().cloned());
                result["pair_table"] = json!(rows);
            }
            run.result = result;
        }
        Command::Verify { tableau } => {
            let t = read_tableau(&mut run, tableau)?;
            let symplectic = verify_symplectic(&t);
            let subsystem = verify_subsystem(&t);
            run.ok = symplectic && subsystem;
            run.result = json!({ "symplectic": symplectic, "subsystem": subsystem });
            run.say(format!("verify: {}", if run.ok { "pass" } else { "FAIL" }));
        }
    }
    Ok(run)
}

fn read_tableau(run: &mut Run, path: &Path) -> Result<Tableau> {
    io::tableau_from_json(&run.read(path)?)
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents)?;
    Ok(())
}

fn cmd_build(run: &mut Run, hx: &Path, hz: &Path, out: Option<&Path>) -> Result<()> {
    let hx = io::parse_matrix_text(&run.read(hx)?)?;
    let hz = io::parse_matrix_text(&run.read(hz)?)?;
    let t = build_css_tableau(&CssCode::new(hx, hz)?)?;
    if let Some(out) = out {
        write_file(out, &format!("{}\n", io::tableau_to_json(&t)?))?;
    }
    let params = t.params();
    run.say(params.summary());
    run.result = serde_json::to_value(TableauJson::from_tableau(&t))?;
    run.params = Some(params);
    Ok(())
}

fn cmd_split(
    run: &mut Run,
    tableau: &Path,
    alg: u8,
    cfg: SplitConfig,
    preprocess: Option<&Path>,
    distance_limit: usize,
    out: Option<&Path>,
) -> Result<()> {
    let mut t = read_tableau(run, tableau)?;
    if let Some(script) = preprocess {
        for (target, sources) in io::parse_preprocess_script(&run.read(script)?)? {
            t = multiply_stabilizer_rows(&t, target, &sources)?;
        }
    }
    let n = t.n();
    let report: SplitReport;
    if alg == 1 {
        let out_split = split_generators(&t, &cfg)?;
        let limit = distance_limit.min(n);
        let q =
            DistanceQuery::from_tableau(&out_split.tableau, limit).with_execution(cfg.execution);
        let mut params = out_split.params;
        params.d = match dressed_distance(&q) {
            Ok(d) => d.distance,
            Err(Error::Refused(why)) => {
                eprintln!("distance skipped: {why}");
                None
            }
            Err(e) => return Err(e),
        };
        if let Some(out) = out {
            write_file(
                out,
                &format!("{}\n", io::tableau_to_json(&out_split.tableau)?),
            )?;
        }
        run.say(format!(
            "{} at X weight {}, Z weight {}",
            params.summary(),
            out_split.report.x_weight,
            out_split.report.z_weight
        ));
        run.say("gauge generators:".to_string());
        for (gx, gz) in out_split.gauges.g_x.iter().zip(&out_split.gauges.g_z) {
            run.say(format!("  {}  {}", pauli(gx), pauli(gz)));
        }
        run.params = Some(params);
        run.result = serde_json::to_value(TableauJson::from_tableau(&out_split.tableau))?;
        report = out_split.report;
    } else {
        let out_split = split_operators(&t, &cfg)?;
        let params = out_split.params()?;
        if let Some(out) = out {
            write_file(out, &io::format_matrix_text(&out_split.gauge_group()))?;
        }
        run.say(format!(
            "{} at X weight {}, Z weight {}",
            params.summary(),
            out_split.report.x_weight,
            out_split.report.z_weight
        ));
        run.params = Some(params);
        run.result = json!({
            "x_gauges": out_split.gauges.g_x.iter().map(pauli).collect::<Vec<_>>(),
            "z_gauges": out_split.gauges.g_z.iter().map(pauli).collect::<Vec<_>>(),
        });
        report = out_split.report;
    }
    run.say("row  kind  weight  residual  gauges".to_string());
    for e in &report.entries {
        run.say(format!(
            "{:>3}  {:?}     {:>6}  {:>8}  {}",
            e.target_row + 1,
            e.kind,
            e.target_weight,
            e.residual_weight,
            e.gauges.iter().map(pauli).collect::<Vec<_>>().join(" ")
        ));
    }
    run.split = Some(SplitReportJson::from(&report));
    Ok(())
}

fn pauli(v: &crate::gf2::BitVector) -> String {
    crate::pauli::PauliOperator::from_symplectic(v).to_string()
}

fn binary_input(
    run: &mut Run,
    catalog: Option<&String>,
    file: Option<&Path>,
) -> Result<Option<BitMatrix>> {
    match (catalog, file) {
        (Some(name), _) => Ok(Some(constructions::catalog_binary(name)?)),
        (None, Some(p)) => Ok(Some(io::parse_matrix_text(&run.read(p)?)?)),
        (None, None) => Ok(None),
    }
}

fn ring_input(
    run: &mut Run,
    catalog: Option<&String>,
    file: Option<&Path>,
    exponents: bool,
) -> Result<Option<RingMatrix>> {
    match (catalog, file) {
        (Some(name), _) => Ok(Some(constructions::catalog_ring(name)?)),
        (None, Some(p)) => {
            let text = run.read(p)?;
            Ok(Some(if exponents {
                io::parse_exponent_matrix_text(&text)?
            } else {
                io::parse_ring_matrix_text(&text)?
            }))
        }
        (None, None) => Ok(None),
    }
}

fn cmd_construct(
    run: &mut Run,
    kind: ConstructKind,
    catalog: &[String],
    matrix: Option<&Path>,
    generator: Option<&Path>,
    exponents: bool,
    out_dir: Option<&Path>,
) -> Result<()> {
    let missing = || Error::InvalidConfig("pass --catalog or --matrix".into());
    if !catalog.is_empty() && (matrix.is_some() || generator.is_some()) {
        return Err(Error::InvalidConfig(
            "--catalog cannot be combined with matrix files".into(),
        ));
    }
    let spec: SubsystemCodeSpec = match kind {
        ConstructKind::Lp => {
            let a = ring_input(run, catalog.first(), matrix, exponents)?.ok_or_else(missing)?;
            let code = constructions::lp(&a)?;
            let params = build_css_tableau(&code)?.params();
            if let Some(dir) = out_dir {
                std::fs::create_dir_all(dir)?;
                write_file(&dir.join("hx.txt"), &io::format_matrix_text(code.hx()))?;
                write_file(&dir.join("hz.txt"), &io::format_matrix_text(code.hz()))?;
            }
            run.say(params.summary());
            run.result = json!({
                "x_check_weights": distinct(code.hx()),
                "z_check_weights": distinct(code.hz()),
            });
            run.params = Some(params);
            return Ok(());
        }
        ConstructKind::Shp => {
            let h = binary_input(run, catalog.first(), matrix)?.ok_or_else(missing)?;
            let g = binary_input(run, catalog.get(1), generator)?;
            let c = match g {
                Some(g) => ClassicalCode { h, g },
                None => constructions::generator_from_parity(&h),
            };
            if !c.g.mul_transpose(&c.h).is_zero() {
                return Err(Error::InvalidConfig(
                    "generator is not orthogonal to H".into(),
                ));
            }
            constructions::shp(&c)?
        }
        ConstructKind::Slp => {
            let a = ring_input(run, catalog.first(), matrix, exponents)?.ok_or_else(missing)?;
            let g = ring_input(run, catalog.get(1), generator, exponents)?
                .ok_or_else(|| Error::InvalidConfig("slp needs a generator matrix".into()))?;
            constructions::slp(&a, &g)?
        }
    };
    let params = spec.params()?;
    let (seed, replace) = spec.gauge_fixed_seed()?;
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir)?;
        for (name, m) in [
            ("gx", &spec.g_x),
            ("gz", &spec.g_z),
            ("lx", &spec.l_x),
            ("lz", &spec.l_z),
            ("sx", &spec.s_x),
            ("sz", &spec.s_z),
        ] {
            write_file(&dir.join(format!("{name}.txt")), &io::format_matrix_text(m))?;
        }
        write_file(&dir.join("seed-hx.txt"), &io::format_matrix_text(seed.hx()))?;
        write_file(&dir.join("seed-hz.txt"), &io::format_matrix_text(seed.hz()))?;
    }
    let rows_1based: Vec<usize> = replace.iter().map(|r| r + 1).collect();
    run.say(params.summary());
    run.say(format!(
        "stabilizer weights {:?}, gauge weights {:?}",
        spec.stabilizer_weights(),
        spec.gauge_weights()
    ));
    run.say(format!(
        "gauge-fixed seed: split --alg 2 --rows {}",
        rows_1based
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    ));
    run.result = json!({
        "stabilizer_weights": spec.stabilizer_weights(),
        "gauge_weights": spec.gauge_weights(),
        "seed_replace_rows": rows_1based,
    });
    run.params = Some(params);
    Ok(())
}

fn distinct(m: &BitMatrix) -> Vec<usize> {
    let mut w = m.row_weights();
    w.sort_unstable();
    w.dedup();
    w
}

/// Exit code helper for the binary.
pub fn main_exit() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_from_args(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
