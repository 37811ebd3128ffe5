//! Command-line front end: `e`, `satake`, `coeff` and `verify`.
//!
//! Exit codes: 0 success, 2 configuration error, 3 verification failure, 4 internal invariant
//! violation.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeffs::{GroupAlgebraElement, Namespace, TermJson};
use crate::macdonald::{is_monic, MacdonaldEngine};
use crate::rootdata::{Lattice, LatticeSpec, RootDatumConfig, RootSystem, Weight};
use crate::satake::{SatakeData, SatakeEngine, SatakeRecordJson, Tau, UnramifiedCharacter};
use crate::verify::{run_suite, SuiteOptions};
use crate::weyl::WeylGroup;
use crate::{Error, Rat, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "macdonald-hecke", version, about = "Nonsymmetric Macdonald polynomials at q = ∞ and Satake transforms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// E_λ(∞, t) in generic parameters.
    #[command(name = "e", alias = "E")]
    E(JobArgs),
    /// The Satake basis 𝓔_λ for a group datum, with the cross-path residual.
    Satake(JobArgs),
    /// Matrix coefficients E_χ(t_{−λ}) of the unramified principal series.
    Coeff(JobArgs),
    /// Runs every consistency check and reports pass/fail per check.
    Verify(JobArgs),
}

#[derive(Args, Debug, Default)]
struct JobArgs {
    /// JSON job file; cannot be combined with other job flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Cartan type: A, B, C, D, E, F, G or BC.
    #[arg(long = "type")]
    kind: Option<String>,
    #[arg(long)]
    rank: Option<usize>,
    /// P, Q, or a basis such as "[[1,0],[0,2]]" in fundamental-weight coordinates.
    #[arg(long)]
    lattice: Option<String>,
    /// A weight in fundamental-weight coordinates, e.g. "2,-1"; repeatable.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Vec<String>,
    /// All lattice weights with coordinates bounded by this radius.
    #[arg(long = "box")]
    box_radius: Option<i64>,
    /// Residue field cardinality, or "formal".
    #[arg(long)]
    tau: Option<String>,
    /// d(a_0),…,d(a_n), comma separated.
    #[arg(long)]
    d: Option<String>,
    /// d(2a_0),…,d(2a_n), comma separated.
    #[arg(long)]
    d2: Option<String>,
    /// Character values on the lattice basis, each "re" or "re:im"; rationals or decimals.
    #[arg(long = "char", allow_hyphen_values = true)]
    chi: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// Largest ℓ(w_λ) in the verification grid.
    #[arg(long)]
    max_len: Option<usize>,
    #[arg(long, hide = true)]
    corrupt_t0: Option<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Either `"generic"` or an explicit datum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SatakeSpec {
    Generic(GenericTag),
    Data(SatakeData),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GenericTag {
    #[serde(rename = "generic")]
    Generic,
}

/// A complete job description; the JSON form of the command-line flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub datum: RootDatumConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub satake: Option<SatakeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<Weight>>,
    #[serde(default, rename = "box", skip_serializing_if = "Option::is_none")]
    pub box_radius: Option<i64>,
    #[serde(default, rename = "char", skip_serializing_if = "Option::is_none")]
    pub chi: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_len: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corrupt_t0: Option<String>,
}

fn parse_ints(s: &str, what: &str) -> Result<Vec<i64>> {
    s.trim()
        .trim_matches(|c| c == '[' || c == ']' || c == '(' || c == ')')
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Config(format!("bad {what} {s:?}"))))
        .collect()
}

impl JobArgs {
    fn has_job_flags(&self) -> bool {
        self.kind.is_some()
            || self.rank.is_some()
            || self.lattice.is_some()
            || !self.lambda.is_empty()
            || self.box_radius.is_some()
            || self.tau.is_some()
            || self.d.is_some()
            || self.d2.is_some()
            || self.chi.is_some()
            || self.out.is_some()
            || self.format.is_some()
            || self.jobs.is_some()
            || self.max_len.is_some()
            || self.corrupt_t0.is_some()
    }

    fn into_config(self) -> Result<JobConfig> {
        if let Some(path) = &self.config {
            if self.has_job_flags() {
                return Err(Error::Config("--config cannot be combined with other job flags".into()));
            }
            let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            return serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())));
        }
        let kind = self.kind.ok_or_else(|| Error::Config("--type is required".into()))?;
        let rank = self.rank.ok_or_else(|| Error::Config("--rank is required".into()))?;
        let lattice: LatticeSpec = match &self.lattice {
            Some(s) => s.parse()?,
            None => "P".parse()?,
        };
        let satake = if self.tau.is_some() || self.d.is_some() || self.d2.is_some() {
            let tau: Tau = self.tau.as_deref().unwrap_or("formal").parse()?;
            let d = match &self.d {
                Some(s) => parse_ints(s, "d")?,
                None => vec![1; rank + 1],
            };
            let d2 = match &self.d2 {
                Some(s) => parse_ints(s, "d2")?,
                None => vec![0; rank + 1],
            };
            Some(SatakeSpec::Data(SatakeData { tau, d, d2 }))
        } else {
            None
        };
        let weights = if self.lambda.is_empty() {
            None
        } else {
            Some(self.lambda.iter().map(|s| parse_ints(s, "weight").map(Weight)).collect::<Result<Vec<_>>>()?)
        };
        let chi = self.chi.map(|s| s.split(',').map(|v| v.trim().to_string()).collect());
        Ok(JobConfig {
            datum: RootDatumConfig { type_label: kind, rank, lattice },
            satake,
            weights,
            box_radius: self.box_radius,
            chi,
            out: self.out,
            format: self.format.unwrap_or_default(),
            jobs: self.jobs,
            max_len: self.max_len,
            corrupt_t0: self.corrupt_t0,
        })
    }
}

/// `E_λ` as emitted by the `e` subcommand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ERecord {
    pub lambda: Weight,
    pub params: Vec<String>,
    pub monic: bool,
    pub terms: Vec<TermJson>,
}

impl ERecord {
    pub fn new(lambda: &Weight, e: &GroupAlgebraElement) -> Result<Self> {
        Ok(ERecord { lambda: lambda.clone(), params: e.namespace().names().to_vec(), monic: is_monic(e, lambda), terms: e.to_json()? })
    }

    /// Rebuilds the element from its serialized terms.
    pub fn element(&self) -> Result<GroupAlgebraElement> {
        GroupAlgebraElement::from_json(&Namespace::new(self.params.clone()), &self.terms)
    }
}

/// One row of the `coeff` table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffRecord {
    pub lambda: Weight,
    pub chi: Vec<String>,
    pub value: String,
    pub re: f64,
    pub im: f64,
    pub residual: String,
}

struct Job {
    config: JobConfig,
    mac: Arc<MacdonaldEngine>,
}

impl Job {
    fn new(config: JobConfig) -> Result<Self> {
        let (rs, lat) = config.datum.build()?;
        let rs: Arc<RootSystem> = Arc::new(rs);
        let lat: Arc<Lattice> = Arc::new(lat);
        let mac = Arc::new(MacdonaldEngine::new(Arc::new(WeylGroup::new(rs, lat)?))?);
        Ok(Job { config, mac })
    }

    fn weights(&self) -> Result<Vec<Weight>> {
        let lattice = self.mac.weyl().lattice();
        let mut out = match (&self.config.weights, self.config.box_radius) {
            (Some(_), Some(_)) => return Err(Error::Config("give either weights or a box, not both".into())),
            (Some(ws), None) => ws.clone(),
            (None, Some(r)) if r >= 0 => lattice.box_points(r),
            (None, Some(r)) => return Err(Error::Config(format!("box radius {r} is negative"))),
            (None, None) => return Err(Error::Config("no weights: give --lambda or --box".into())),
        };
        let n = self.mac.weyl().rank();
        for w in &out {
            if w.len() != n {
                return Err(Error::Config(format!("weight {w} needs {n} coordinates")));
            }
            lattice.check(w)?;
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    fn satake_data(&self) -> Result<SatakeData> {
        match &self.config.satake {
            Some(SatakeSpec::Data(d)) => Ok(d.clone()),
            _ => Ok(SatakeData::split(self.mac.weyl().rank(), Tau::Formal(crate::satake::FormalTag::Formal))),
        }
    }

    fn satake(&self) -> Result<SatakeEngine> {
        SatakeEngine::new(self.mac.clone(), &self.satake_data()?)
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn json_lines<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut out = String::new();
    for r in rows {
        out.push_str(&serde_json::to_string(r)?);
        out.push('\n');
    }
    Ok(out)
}

/// Output of one subcommand: rendered text and whether every self-check passed.
pub struct Output {
    pub text: String,
    pub ok: bool,
}

fn cmd_e(job: &Job) -> Result<Output> {
    let ws = job.weights()?;
    let es = job.mac.e_many(&ws)?;
    let records = ws.iter().zip(&es).map(|(w, e)| ERecord::new(w, e)).collect::<Result<Vec<_>>>()?;
    let ok = records.iter().all(|r| r.monic);
    let text = match job.config.format {
        Format::Json => json_lines(&records)?,
        Format::Csv => {
            let mut s = String::from("lambda,weight,coeff\n");
            for (w, e) in ws.iter().zip(&es) {
                for (mu, c) in e.terms() {
                    let _ = writeln!(s, "{},{},{}", csv_field(&w.to_string()), csv_field(&mu.to_string()), csv_field(&c.display(e.namespace())));
                }
            }
            s
        }
    };
    Ok(Output { text, ok })
}

/// A `𝓔_λ` row with its cross-path residual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatakeRow {
    #[serde(flatten)]
    pub record: SatakeRecordJson,
    pub residual: String,
}

fn cmd_satake(job: &Job) -> Result<Output> {
    let ws = job.weights()?;
    let sat = job.satake()?;
    let rows = ws
        .par_iter()
        .map(|w| {
            let residual = sat.cross_path_residual(w)?;
            Ok(SatakeRow { record: sat.record(w)?, residual: residual.to_string() })
        })
        .collect::<Result<Vec<_>>>()?;
    let ok = rows.iter().all(|r| r.residual == "0");
    let text = match job.config.format {
        Format::Json => json_lines(&rows)?,
        Format::Csv => {
            let mut s = String::from("lambda,weight,t_num_halfexp,coeff,residual\n");
            for r in &rows {
                for t in &r.record.terms {
                    let _ = writeln!(
                        s,
                        "{},{},{},{},{}",
                        csv_field(&r.record.lambda.to_string()),
                        csv_field(&t.weight.to_string()),
                        t.t_num_halfexp,
                        t.coeff,
                        csv_field(&r.residual)
                    );
                }
            }
            s
        }
    };
    Ok(Output { text, ok })
}

fn cmd_coeff(job: &Job) -> Result<Output> {
    let ws = job.weights()?;
    let sat = job.satake()?;
    let chi_spec = job.config.chi.clone().ok_or_else(|| Error::Config("coeff needs a character (--char)".into()))?;
    let chi = UnramifiedCharacter::parse(&chi_spec)?;
    if sat.data().tau.numeric().is_none() {
        return Err(Error::Mode("coeff needs a numeric tau".into()));
    }
    let rows = ws
        .par_iter()
        .map(|w| {
            let v = sat.matrix_coefficient(w, &chi)?;
            let z = v.to_f64();
            Ok(CoeffRecord { lambda: w.clone(), chi: chi_spec.clone(), value: v.to_string(), re: z.re, im: z.im, residual: sat.cross_path_residual(w)?.to_string() })
        })
        .collect::<Result<Vec<_>>>()?;
    let ok = rows.iter().all(|r| r.residual == "0");
    let text = match job.config.format {
        Format::Json => json_lines(&rows)?,
        Format::Csv => {
            let mut s = String::from("lambda,value,re,im,residual\n");
            for r in &rows {
                let _ = writeln!(s, "{},{},{:e},{:e},{}", csv_field(&r.lambda.to_string()), csv_field(&r.value), r.re, r.im, csv_field(&r.residual));
            }
            s
        }
    };
    Ok(Output { text, ok })
}

fn cmd_verify(job: &Job) -> Result<Output> {
    let rank = job.mac.weyl().rank();
    let mut opts = SuiteOptions::new(rank);
    if let Some(l) = job.config.max_len {
        opts.max_len = l;
    }
    if let Some(f) = &job.config.corrupt_t0 {
        opts.corrupt_t0 = Some(f.parse::<Rat>().map_err(|_| Error::Config(format!("bad factor {f:?}")))?);
    }
    if let Some(SatakeSpec::Data(d)) = &job.config.satake {
        opts.satake.push(("custom".into(), d.clone()));
    }
    let report = run_suite(job.mac.clone(), &opts)?;
    let text = match job.config.format {
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        Format::Csv => {
            let mut s = String::from("check,passed,detail\n");
            for c in &report.checks {
                let _ = writeln!(s, "{},{},{}", c.name, c.passed, csv_field(&c.detail));
            }
            s
        }
    };
    Ok(Output { text, ok: report.passed() })
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Invariant(_) | Error::Divisibility { .. } | Error::Limit { .. } => EXIT_INTERNAL,
        _ => EXIT_CONFIG,
    }
}

fn execute(command: Command) -> Result<(Output, Option<PathBuf>)> {
    let (args, f): (JobArgs, fn(&Job) -> Result<Output>) = match command {
        Command::E(a) => (a, cmd_e),
        Command::Satake(a) => (a, cmd_satake),
        Command::Coeff(a) => (a, cmd_coeff),
        Command::Verify(a) => (a, cmd_verify),
    };
    let config = args.into_config()?;
    let out = config.out.clone();
    let jobs = config.jobs;
    let job = Job::new(config)?;
    let output = match jobs {
        Some(0) => return Err(Error::Config("--jobs must be positive".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(|e| Error::Config(e.to_string()))?;
            pool.install(|| f(&job))?
        }
        None => f(&job)?,
    };
    Ok((output, out))
}

/// Parses `args` (including the program name), runs the job and returns the exit code. Output
/// goes to `--out` or `stdout`; diagnostics go to `stderr`.
pub fn run_with(args: impl IntoIterator<Item = OsString>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok((output, path)) => {
            let written = match &path {
                Some(p) => std::fs::write(p, &output.text),
                None => stdout.write_all(output.text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_CONFIG;
            }
            if output.ok {
                EXIT_OK
            } else {
                let _ = writeln!(stderr, "verification failed");
                EXIT_VERIFY
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Entry point for the binary.
pub fn run() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("macdonald-hecke").chain(args.iter().copied()).map(OsString::from);
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap() + &String::from_utf8(err).unwrap())
    }

    #[test]
    fn e_zero() {
        let (code, text) = call(&["e", "--type", "A", "--rank", "1", "--lambda", "0"]);
        assert_eq!(code, 0, "{text}");
        let rec: ERecord = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        assert_eq!(rec.element().unwrap(), GroupAlgebraElement::exp(&Namespace::new(rec.params.clone()), Weight(vec![0])));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["e", "--type", "X", "--rank", "1", "--lambda", "0"]).0, EXIT_CONFIG);
        assert_eq!(call(&["e", "--type", "A", "--rank", "1", "--lattice", "Q", "--lambda", "1"]).0, EXIT_CONFIG);
        assert_eq!(call(&["coeff", "--type", "A", "--rank", "1", "--lambda", "0", "--tau", "formal", "--char", "2"]).0, EXIT_CONFIG);
        assert_eq!(call(&["verify", "--type", "A", "--rank", "1", "--lattice", "Q", "--max-len", "2", "--corrupt-t0", "2"]).0, EXIT_VERIFY);
    }

    #[test]
    fn coeff_at_zero() {
        let (code, text) = call(&["coeff", "--type", "A", "--rank", "1", "--lambda", "0", "--tau", "3", "--char", "2:1"]);
        assert_eq!(code, 0, "{text}");
        let rec: CoeffRecord = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        assert_eq!(rec.value, "1/4");
    }
}
