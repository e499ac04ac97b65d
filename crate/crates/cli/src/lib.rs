//! Command-line front end: `generate`, `verify`, `pmepr` and `selftest`.
//!
//! Exit status: 0 on success, 1 when a verification or bound check fails,
//! 2 on usage, parameter or parse errors. Errors are printed as a single
//! line `error: <kind>: <message>` on standard error.

pub mod document;
pub mod error;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use mscs_core::acceptance::{self, CriterionOutcome, Scale};
use mscs_core::correlation::{verify, VerifyOptions};
use mscs_core::pmepr::{iapr_curves, pmepr_set};
use mscs_core::random::{random_theorem1, random_theorem2, random_theorem3, seeded};
use mscs_core::{
    example2_params, BlockParams, Claim, ConstructionParams, CorrelationReport, ExtensionParams,
    HeadFunction, SequenceSet, Theorem1Params, Theorem2Params, Theorem3Params,
    DEFAULT_OVERSAMPLING,
};
use serde::Serialize;

pub use document::SetDocument;
pub use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "mscs", version, about = "Construct and verify multiple shift complementary sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a set from construction parameters and write it as JSON.
    Generate(GenerateArgs),
    /// Check a set's correlation claims exactly.
    Verify(VerifyArgs),
    /// PMEPR of each sequence, the set PMEPR and the M*S bound.
    Pmepr(PmeprArgs),
    /// Run the bundled acceptance checks.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Which construction: 1 (single prime), 2 (several primes), 3 (length extension).
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub theorem: u8,
    /// JSON parameter file; replaces all construction flags.
    #[arg(long, conflicts_with_all = ["prime", "block", "random"])]
    pub params: Option<PathBuf>,
    #[arg(short = 'p', long)]
    pub prime: Option<u32>,
    /// Number of variables m.
    #[arg(short = 'm', long)]
    pub vars: Option<u32>,
    /// First permuted variable s (1 <= s <= m).
    #[arg(short = 's', long, default_value_t = 1)]
    pub start: u32,
    /// Alphabet size lambda.
    #[arg(short = 'l', long, visible_alias = "lambda")]
    pub modulus: Option<u32>,
    /// Images of s, s+1, ..., m under the permutation.
    #[arg(long, value_delimiter = ',')]
    pub perm: Option<Vec<u32>>,
    /// Linear coefficients g_1, ..., g_m.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub linear: Option<Vec<i64>>,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub constant: i64,
    /// Table of h over v_1..v_{s-1}, p^(s-1) entries.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub head: Option<Vec<i64>>,
    /// Prime block `P:M[:S]` for constructions 2 and 3 (repeat per prime).
    #[arg(long)]
    pub block: Vec<String>,
    /// Extension prime for construction 3.
    #[arg(long)]
    pub ext_prime: Option<u32>,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub ext_linear: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub ext_constant: i64,
    /// Draw coefficients, h tables and permutations at random.
    #[arg(long)]
    pub random: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output path (standard output if absent).
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
    /// Verify every claim before writing; exit 1 on failure.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub input: PathBuf,
    /// Check the GCS property instead of the document's claims.
    #[arg(long, conflicts_with_all = ["mscs", "zcs"])]
    pub gcs: bool,
    /// Check an (M, L, S)-MSCS claim with this S.
    #[arg(long, value_name = "S")]
    pub mscs: Option<usize>,
    /// Check a type-II ZCS claim with this zone width.
    #[arg(long, value_name = "Z")]
    pub zcs: Option<usize>,
    #[arg(long)]
    pub early_exit: bool,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct PmeprArgs {
    pub input: PathBuf,
    /// Envelope samples per subcarrier spacing.
    #[arg(long, default_value_t = DEFAULT_OVERSAMPLING)]
    pub oversampling: usize,
    /// S for the M*S bound (defaults to the document's claim).
    #[arg(long)]
    pub shift: Option<usize>,
    /// Write IAPR curves as CSV: one row per grid point.
    #[arg(long)]
    pub iapr_out: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Run the randomized sweeps at full size.
    #[arg(long)]
    pub full: bool,
}

/// Parses `args` and runs the command, returning the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Generate(a) => cmd_generate(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Pmepr(a) => cmd_pmepr(&a, out),
        Command::Selftest(a) => cmd_selftest(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn io_err(e: impl std::fmt::Display) -> CliError {
    CliError::Io(e.to_string())
}

fn parse_block(text: &str) -> Result<(u32, u32, u32), CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    let num = |s: &str| {
        s.parse::<u32>()
            .map_err(|_| CliError::Usage(format!("bad --block {text:?}; expected P:M[:S]")))
    };
    match parts.as_slice() {
        [p, m] => Ok((num(p)?, num(m)?, 1)),
        [p, m, s] => Ok((num(p)?, num(m)?, num(s)?)),
        _ => Err(CliError::Usage(format!("bad --block {text:?}; expected P:M[:S]"))),
    }
}

fn require<T: Copy>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("{flag} is required")))
}

/// Resolves the generate flags (or parameter file) to construction parameters.
pub fn construction_params(a: &GenerateArgs) -> Result<ConstructionParams, CliError> {
    if let Some(path) = &a.params {
        let file = File::open(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        return serde_json::from_reader(BufReader::new(file)).map_err(|e| CliError::Parse(e.to_string()));
    }
    let modulus = require(a.modulus, "--modulus")?;
    let mut rng = seeded(a.seed);
    match a.theorem {
        1 => {
            let prime = require(a.prime, "--prime")?;
            let vars = require(a.vars, "--vars")?;
            let block = if a.random {
                random_theorem1(&mut rng, prime, vars, a.start, modulus).block
            } else {
                BlockParams {
                    prime,
                    vars,
                    start: a.start,
                    perm: a.perm.clone(),
                    linear: a.linear.clone().unwrap_or_default(),
                    constant: a.constant,
                    head: a.head.clone().map(HeadFunction::Table),
                }
            };
            Ok(ConstructionParams::Theorem1(Theorem1Params { modulus, block }))
        }
        theorem => {
            if a.block.is_empty() {
                return Err(CliError::Usage("at least one --block is required".into()));
            }
            let shapes = a
                .block
                .iter()
                .map(|b| parse_block(b))
                .collect::<Result<Vec<_>, _>>()?;
            let blocks = if a.random {
                random_theorem2(&mut rng, modulus, &shapes).blocks
            } else {
                shapes
                    .iter()
                    .map(|&(p, m, s)| BlockParams::plain(p, m, s))
                    .collect()
            };
            if theorem == 2 {
                return Ok(ConstructionParams::Theorem2(Theorem2Params { modulus, blocks }));
            }
            let prime = require(a.ext_prime, "--ext-prime")?;
            let extension = if a.random {
                random_theorem3(&mut rng, modulus, &[], prime).extension
            } else {
                ExtensionParams {
                    prime,
                    linear: a.ext_linear,
                    constant: a.ext_constant,
                }
            };
            Ok(ConstructionParams::Theorem3(Theorem3Params {
                modulus,
                blocks,
                extension,
            }))
        }
    }
}

fn check_claims(
    set: &SequenceSet,
    claims: &[Claim],
    opts: VerifyOptions,
) -> Result<Vec<CorrelationReport>, CliError> {
    claims
        .iter()
        .map(|&c| verify(set, c, opts).map_err(CliError::from))
        .collect()
}

pub fn cmd_generate(a: &GenerateArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let params = construction_params(a)?;
    let set = params.build()?;
    if a.verify {
        let reports = check_claims(&set, set.claims(), VerifyOptions::default())?;
        if let Some(r) = reports.iter().find(|r| !r.passed || !r.inconsistent_shifts.is_empty()) {
            writeln!(
                out,
                "verification of {} failed at shifts {:?}; nothing written",
                r.claim, r.failing_shifts
            )
            .map_err(io_err)?;
            return Ok(1);
        }
    }
    let doc = SetDocument::from_set(&set);
    match &a.output {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            doc.write(BufWriter::new(file))?;
        }
        None => doc.write(&mut *out)?,
    }
    Ok(0)
}

pub fn load_document(path: &Path) -> Result<(SetDocument, SequenceSet), CliError> {
    let file = File::open(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let doc = SetDocument::read(BufReader::new(file))?;
    let set = doc.to_set()?;
    Ok((doc, set))
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let (_, set) = load_document(&a.input)?;
    let claims = if a.gcs {
        vec![Claim::Gcs]
    } else if a.mscs.is_some() || a.zcs.is_some() {
        a.mscs
            .map(|shift| Claim::Mscs { shift })
            .into_iter()
            .chain(a.zcs.map(|zone| Claim::Type2Zcs { zone }))
            .collect()
    } else {
        set.claims().to_vec()
    };
    if claims.is_empty() {
        return Err(CliError::Usage(
            "document has no claims; pass --gcs, --mscs S or --zcs Z".into(),
        ));
    }
    let opts = VerifyOptions {
        early_exit: a.early_exit,
        ..Default::default()
    };
    let reports = check_claims(&set, &claims, opts)?;
    if a.json {
        serde_json::to_writer_pretty(&mut *out, &reports).map_err(io_err)?;
        writeln!(out).map_err(io_err)?;
    } else {
        for r in &reports {
            writeln!(
                out,
                "{} {} ({:?}, {} shifts tested){}",
                if r.passed { "PASS" } else { "FAIL" },
                r.claim,
                r.mode,
                r.shifts.len(),
                if r.passed {
                    String::new()
                } else {
                    format!(" failing shifts: {:?}", r.failing_shifts)
                }
            )
            .map_err(io_err)?;
            if !r.inconsistent_shifts.is_empty() {
                writeln!(out, "INCONSISTENT exact/float verdicts at {:?}", r.inconsistent_shifts)
                    .map_err(io_err)?;
            }
        }
    }
    let ok = reports.iter().all(|r| r.passed && r.inconsistent_shifts.is_empty());
    Ok(if ok { 0 } else { 1 })
}

#[derive(Debug, Serialize)]
struct PmeprOutput {
    per_sequence: Vec<f64>,
    set_pmepr: f64,
    shift: Option<usize>,
    bound: Option<f64>,
    bound_satisfied: Option<bool>,
    oversampling: usize,
}

/// Writes IAPR curves as CSV: header, then `(df*t, iapr_0, ..., iapr_{M-1})` rows.
pub fn write_iapr_csv(curves: &[Vec<f64>], writer: impl Write) -> Result<(), CliError> {
    let rows = curves.first().map_or(0, Vec::len);
    let mut w = csv::Writer::from_writer(writer);
    let mut header = vec!["delta_f_t".to_string()];
    header.extend((0..curves.len()).map(|i| format!("iapr_{i}")));
    w.write_record(&header).map_err(io_err)?;
    for j in 0..rows {
        let mut row = vec![(j as f64 / rows as f64).to_string()];
        row.extend(curves.iter().map(|c| c[j].to_string()));
        w.write_record(&row).map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

/// Reads back the CSV written by [`write_iapr_csv`] as one curve per column.
pub fn read_iapr_csv(reader: impl std::io::Read) -> Result<(Vec<f64>, Vec<Vec<f64>>), CliError> {
    let mut r = csv::Reader::from_reader(reader);
    let columns = r.headers().map_err(|e| CliError::Parse(e.to_string()))?.len();
    let mut points = Vec::new();
    let mut curves = vec![Vec::new(); columns.saturating_sub(1)];
    for record in r.records() {
        let record = record.map_err(|e| CliError::Parse(e.to_string()))?;
        let mut values = record.iter().map(|v| {
            v.parse::<f64>()
                .map_err(|e| CliError::Parse(format!("{v:?}: {e}")))
        });
        points.push(values.next().transpose()?.unwrap_or_default());
        for (curve, v) in curves.iter_mut().zip(values) {
            curve.push(v?);
        }
    }
    Ok((points, curves))
}

pub fn cmd_pmepr(a: &PmeprArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    if a.oversampling == 0 {
        return Err(CliError::Usage("--oversampling must be at least 1".into()));
    }
    let (_, set) = load_document(&a.input)?;
    let curves = iapr_curves::<f64>(&set, a.oversampling)?;
    let shift = a.shift.or_else(|| set.claimed_shift());
    let report = match shift {
        Some(s) => {
            let r = pmepr_set::<f64>(&set, s, a.oversampling)?;
            PmeprOutput {
                per_sequence: r.per_sequence,
                set_pmepr: r.set_pmepr,
                shift: Some(s),
                bound: Some(r.bound),
                bound_satisfied: Some(r.bound_satisfied),
                oversampling: a.oversampling,
            }
        }
        None => {
            let per_sequence: Vec<f64> = curves
                .iter()
                .map(|c| c.iter().copied().fold(0.0, f64::max))
                .collect();
            PmeprOutput {
                set_pmepr: per_sequence.iter().copied().fold(0.0, f64::max),
                per_sequence,
                shift: None,
                bound: None,
                bound_satisfied: None,
                oversampling: a.oversampling,
            }
        }
    };
    if let Some(path) = &a.iapr_out {
        let file = File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        write_iapr_csv(&curves, BufWriter::new(file))?;
    }
    if a.json {
        serde_json::to_writer_pretty(&mut *out, &report).map_err(io_err)?;
        writeln!(out).map_err(io_err)?;
    } else {
        for (i, v) in report.per_sequence.iter().enumerate() {
            writeln!(out, "sequence {i}: PMEPR {v:.6}").map_err(io_err)?;
        }
        writeln!(out, "set PMEPR: {:.6}", report.set_pmepr).map_err(io_err)?;
        match (report.shift, report.bound, report.bound_satisfied) {
            (Some(s), Some(b), Some(ok)) => writeln!(
                out,
                "bound M*S: {b} (M={}, S={s}): {}",
                set.size(),
                if ok { "satisfied" } else { "VIOLATED" }
            ),
            _ => writeln!(out, "bound M*S: unavailable (no MSCS claim; pass --shift)"),
        }
        .map_err(io_err)?;
        writeln!(out, "oversampling: {}", report.oversampling).map_err(io_err)?;
    }
    Ok(if report.bound_satisfied == Some(false) { 1 } else { 0 })
}

/// IAPR export check on the second worked example, going through the CSV
/// writer and reader.
pub fn iapr_export_outcome() -> Result<CriterionOutcome, CliError> {
    let set = mscs_core::theorem3_set(&example2_params())?;
    let curves = iapr_curves::<f64>(&set, DEFAULT_OVERSAMPLING)?;
    let mut buf = Vec::new();
    write_iapr_csv(&curves, &mut buf)?;
    let (_, parsed) = read_iapr_csv(buf.as_slice())?;
    let report = pmepr_set::<f64>(&set, 2, DEFAULT_OVERSAMPLING)?;
    Ok(acceptance::check_iapr_export(&parsed, report.set_pmepr))
}

pub fn cmd_selftest(a: &SelftestArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let scale = if a.full { Scale::FULL } else { Scale::REDUCED };
    let mut outcomes = acceptance::run(scale);
    outcomes.push(iapr_export_outcome()?);
    for o in &outcomes {
        writeln!(out, "{o}").map_err(io_err)?;
    }
    let failed: Vec<String> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| format!("{} ({})", o.id, o.name))
        .collect();
    if failed.is_empty() {
        writeln!(out, "selftest passed: {} criteria", outcomes.len()).map_err(io_err)?;
        Ok(0)
    } else {
        writeln!(out, "selftest failed: {}", failed.join(", ")).map_err(io_err)?;
        Ok(1)
    }
}
