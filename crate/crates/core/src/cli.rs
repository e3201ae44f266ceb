//! Command-line front end. Exit codes: `0` pass, `2` a mathematical condition
//! failed, `1` bad usage or input.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cohomology::{h_table, Certificate, CohomTable};
use crate::conditions::{check_conditions, ConditionReport, NondegStatus, NondegStrategy};
use crate::error::Error;
use crate::generate::{generate, Mode};
use crate::kronecker::{kronecker_conditions, scan_explicit, scan_lines, splitting_type, symbolic_gamma, gamma_eval, ScanReport};
use crate::linalg::{format_rat, parse_rat, Rat};
use crate::moduli::moduli_dim;
use crate::monad::Monad;
use crate::report::{sha256_hex, Report};
use crate::spec_file::{parse_spec_str, SpecFile};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MATH: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "instanton", version, about = "Exact checks for orthogonal instanton bundles given by tensors B ⊗ C")]
struct Cli {
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the rank, non-degeneracy and symmetric-isomorphism conditions.
    Verify {
        spec: PathBuf,
        /// Bundle rank; defaults to the value in the spec file.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print α and β and check that β·α = 0.
    Monad {
        spec: PathBuf,
        #[arg(long)]
        r: Option<usize>,
    },
    /// Splitting type on the line through P and Q.
    Splitting {
        spec: PathBuf,
        #[arg(long = "P", allow_hyphen_values = true)]
        p: String,
        #[arg(long = "Q", allow_hyphen_values = true)]
        q: String,
        /// Also print γ with entries as bilinear forms in P and Q.
        #[arg(long)]
        symbolic: bool,
    },
    /// Classify random lines, or the single line given by --P and --Q.
    ScanLines {
        spec: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Coordinates are drawn from [-box, box].
        #[arg(long = "box", default_value_t = 100)]
        bound: i64,
        #[arg(long = "P", allow_hyphen_values = true, requires = "q")]
        p: Option<String>,
        #[arg(long = "Q", allow_hyphen_values = true, requires = "p")]
        q: Option<String>,
    },
    /// Kronecker module conditions.
    Kronecker {
        spec: PathBuf,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Table of h^i(E(k)) for kmin <= k <= kmax.
    Cohomology {
        spec: PathBuf,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value_t = -4, allow_hyphen_values = true)]
        kmin: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        kmax: i64,
    },
    /// Dimension of the moduli space.
    ModuliDim {
        #[arg(long)]
        c: usize,
        #[arg(long)]
        n: usize,
    },
    /// Random spec passing all conditions with r = (n-1)c.
    Generate {
        #[arg(long)]
        c: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Sum)]
        mode: ModeArg,
        /// Number of terms in sum mode.
        #[arg(long, default_value_t = 3)]
        terms: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the spec here instead of printing it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Pure,
    Sum,
}

/// Result of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<Report>,
}

struct Done {
    results: Value,
    warnings: Vec<String>,
    text: String,
    pass: bool,
}

struct Input {
    spec: SpecFile,
    sha: String,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::RankMismatch { .. } | Error::GenerationExhausted { .. } | Error::Singular => EXIT_MATH,
        _ => EXIT_USAGE,
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

fn load(path: &PathBuf) -> Result<Input, Error> {
    let bytes = std::fs::read(path)?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| Error::Usage(format!("{} is not UTF-8", path.display())))?;
    Ok(Input { spec: parse_spec_str(&text)?, sha: sha256_hex(&bytes) })
}

fn parse_point(s: &str, what: &str) -> Result<Vec<Rat>, Error> {
    s.split(',')
        .map(|x| parse_rat(x).ok_or_else(|| Error::Usage(format!("{what}: cannot parse coordinate {x:?}"))))
        .collect()
}

fn fmt_point(p: &[Rat]) -> String {
    p.iter().map(format_rat).collect::<Vec<_>>().join(",")
}

fn status_text(s: &NondegStatus) -> String {
    match s {
        NondegStatus::CertifiedFullRank => "certified (full rank)".into(),
        NondegStatus::CertifiedPureTensor => "certified (pure tensor of invertible factors)".into(),
        NondegStatus::SampledNoCounterexample { samples } => format!("no counterexample in {samples} samples"),
        NondegStatus::CounterexampleFound { witness } => {
            let j = |v: &[num_bigint::BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            format!("degenerate: h = ({}), v = ({})", j(&witness.h), j(&witness.v))
        }
        NondegStatus::Unknown => "unknown".into(),
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

fn conditions_text(rep: &ConditionReport) -> String {
    let mut t = String::new();
    let _ = writeln!(t, "c = {}, n = {}, r = {}", rep.c, rep.n, rep.r);
    let _ = writeln!(t, "(A1) rank A = {}, 2c + r = {}: {}", rep.rank_a, rep.a1_expected, ok(rep.a1_ok));
    let _ = writeln!(t, "(A2) non-degenerate: {}", status_text(&rep.a2_status));
    let _ = writeln!(t, "(A3) symmetric isomorphism on {} indices: {}", rep.q_subset.len(), ok(rep.a3_ok));
    let _ = writeln!(t, "precheck: {:?}", rep.precheck);
    let _ = writeln!(t, "result: {}", if rep.passes() { "PASS" } else { "FAIL" });
    t
}

fn table_text(t: &CohomTable) -> String {
    let mut s = String::new();
    let _ = write!(s, "{:>6}", "");
    for k in t.kmin..=t.kmax {
        let _ = write!(s, "{:>8}", format!("k={k}"));
    }
    s.push('\n');
    for i in (0..=t.n).rev() {
        let _ = write!(s, "{:>6}", format!("h{i}"));
        for k in t.kmin..=t.kmax {
            let e = t.entry(i, k).expect("full table");
            let mark = match e.cert {
                Certificate::Direct => "",
                Certificate::ForcedZero => "z",
                Certificate::SerreDual => "*",
            };
            let _ = write!(s, "{:>8}", format!("{}{mark}", e.dim));
        }
        s.push('\n');
    }
    s.push_str("(* by Serre duality, z forced zero)\n");
    for d in &t.discrepancies {
        let _ = writeln!(s, "discrepancy: h{}(E({})) = {}, expected {}", d.i, d.k, d.computed, d.expected);
    }
    for k in &t.euler_mismatches {
        let _ = writeln!(s, "Euler characteristic mismatch at k = {k}");
    }
    s
}

fn scan_text(rep: &ScanReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "samples {}: trivial {}, jumping {}, degenerate {} (fraction trivial {:.4})",
        rep.samples, rep.trivial, rep.jumping, rep.degenerate, rep.fraction_trivial
    );
    if !rep.witnesses.is_empty() {
        let nv = rep.witnesses[0].p.len();
        let head: Vec<String> = (0..nv).map(|j| format!("p{j}")).chain((0..nv).map(|j| format!("q{j}"))).collect();
        let _ = writeln!(s, "{},det", head.join(","));
        for w in &rep.witnesses {
            let _ = writeln!(s, "{},{},{}", fmt_point(&w.p), fmt_point(&w.q), format_rat(&w.det));
        }
    }
    s
}

fn dispatch(cmd: &Command) -> Result<(Option<String>, Done), Error> {
    let r_of = |input: &Input, r: Option<usize>| r.unwrap_or(input.spec.r);
    match cmd {
        Command::Verify { spec, r, samples, seed } => {
            let input = load(spec)?;
            let form = input.spec.form()?;
            let rep = check_conditions(&form, r_of(&input, *r), NondegStrategy { samples: *samples, seed: *seed, bound: 10 });
            Ok((
                Some(input.sha),
                Done { text: conditions_text(&rep), warnings: rep.warnings.clone(), pass: rep.passes(), results: to_value(&rep) },
            ))
        }
        Command::Monad { spec, r } => {
            let input = load(spec)?;
            let form = input.spec.form()?;
            let m = Monad::build(&form, r_of(&input, *r))?;
            let complex = m.is_complex();
            let text = format!(
                "alpha ({}x{}):\n{}\nbeta^T ({}x{}):\n{}\nbeta * alpha = 0: {complex}\n",
                m.alpha.rows(),
                m.alpha.cols(),
                m.alpha,
                m.beta.cols(),
                m.beta.rows(),
                m.beta.transpose(),
            );
            let results = json!({
                "c": m.c, "n": m.n, "r": m.r, "dim_w": m.dim_w(), "w_subset": m.w_subset,
                "alpha": to_value(&m.alpha), "beta": to_value(&m.beta), "beta_t": to_value(&m.beta.transpose()),
                "is_complex": complex,
            });
            Ok((Some(input.sha), Done { results, warnings: vec![], text, pass: complex }))
        }
        Command::Splitting { spec, p, q, symbolic } => {
            let input = load(spec)?;
            let form = input.spec.form()?;
            let (p, q) = (parse_point(p, "--P")?, parse_point(q, "--Q")?);
            let g = gamma_eval(&form, &p, &q)?;
            let v = splitting_type(&form, &p, &q)?;
            let mut text = format!("gamma(P, Q) =\n{}det = {}\n", g.m, format_rat(&v.determinant));
            if let Some(pf) = &v.pfaffian {
                let _ = writeln!(text, "pfaffian = {}", format_rat(pf));
            }
            let _ = writeln!(text, "verdict: {:?}", v.verdict);
            let mut results = json!({ "gamma": to_value(&g), "split": to_value(&v) });
            if *symbolic {
                let sym = symbolic_gamma(&form);
                text.push_str("gamma as bilinear forms in p, q:\n");
                for row in &sym {
                    let cells: Vec<String> = row.iter().map(|b| b.to_string()).collect();
                    let _ = writeln!(text, "[{}]", cells.join(", "));
                }
                results["symbolic"] = to_value(&sym);
            }
            Ok((Some(input.sha), Done { results, warnings: vec![], text, pass: true }))
        }
        Command::ScanLines { spec, samples, seed, bound, p, q } => {
            let input = load(spec)?;
            let form = input.spec.form()?;
            let rep = match (p, q) {
                (Some(p), Some(q)) => scan_explicit(&form, &[(parse_point(p, "--P")?, parse_point(q, "--Q")?)])?,
                _ => {
                    if *samples == 0 {
                        return Err(Error::Usage("--samples must be at least 1".into()));
                    }
                    if *bound < 1 {
                        return Err(Error::Usage("--box must be at least 1".into()));
                    }
                    scan_lines(&form, *samples, *seed, *bound)
                }
            };
            Ok((Some(input.sha), Done { text: scan_text(&rep), results: to_value(&rep), warnings: vec![], pass: true }))
        }
        Command::Kronecker { spec, r, samples, seed } => {
            let input = load(spec)?;
            let form = input.spec.form()?;
            let k = kronecker_conditions(&form, r_of(&input, *r), *samples, *seed);
            let mut warnings = vec![];
            if k.k3_ok && !k.matches_printed {
                warnings.push(format!(
                    "rank of gamma-hat is {} = 2c + r; the reading 2n + r would give {}",
                    k.rank_gamma_hat, k.printed_2n_plus_r
                ));
            }
            let text = format!(
                "(K1) {}\n(K2) {}\n(K3) rank = {}, 2c + r = {}: {} (2n + r = {})\nresult: {}\n",
                status_text(&k.k1),
                status_text(&k.k2),
                k.rank_gamma_hat,
                k.expected_2c_plus_r,
                ok(k.k3_ok),
                k.printed_2n_plus_r,
                if k.passes() { "PASS" } else { "FAIL" }
            );
            Ok((Some(input.sha), Done { pass: k.passes(), results: to_value(&k), warnings, text }))
        }
        Command::Cohomology { spec, r, kmin, kmax } => {
            let input = load(spec)?;
            let form = input.spec.form()?;
            let t = h_table(&form, r_of(&input, *r), *kmin, *kmax)?;
            Ok((Some(input.sha), Done { text: table_text(&t), pass: t.is_consistent(), results: to_value(&t), warnings: vec![] }))
        }
        Command::ModuliDim { c, n } => {
            let m = moduli_dim(*c, *n)?;
            let mut warnings = vec![];
            if m.possibly_empty {
                warnings.push("negative expected dimension: the moduli space may be empty".into());
            }
            let text = format!("dim = {} (ambient {} minus group {})\n", m.dim, m.ambient_dim, m.group_dim);
            Ok((None, Done { results: to_value(&m), warnings, text, pass: true }))
        }
        Command::Generate { c, n, mode, terms, seed, out } => {
            let mode = match mode {
                ModeArg::Pure => Mode::Pure,
                ModeArg::Sum => Mode::Sum(*terms),
            };
            let g = generate(*c, *n, mode, *seed)?;
            let spec_json = g.spec.to_json();
            let mut text = format!("verified after {} attempt(s)\n", g.attempts);
            match out {
                Some(path) => {
                    std::fs::write(path, format!("{spec_json}\n"))?;
                    let _ = writeln!(text, "wrote {}", path.display());
                }
                None => {
                    text.push_str(&spec_json);
                    text.push('\n');
                }
            }
            Ok((None, Done { results: to_value(&g), warnings: g.conditions.warnings.clone(), text, pass: true }))
        }
    }
}

fn error_json(e: &Error) -> String {
    let violations: Vec<Value> = match e {
        Error::Schema(v) => v.iter().map(|x| json!({ "pointer": x.pointer, "message": x.message })).collect(),
        _ => vec![],
    };
    serde_json::to_string_pretty(&json!({ "error": e.to_string(), "violations": violations })).expect("serializes")
}

/// Runs one command line (`argv[0]` is the program name).
pub fn run_command<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if code == EXIT_PASS { (rendered, String::new()) } else { (String::new(), rendered) };
            return Outcome { code, stdout, stderr, report: None };
        }
    };
    let start = Instant::now();
    match dispatch(&cli.command) {
        Ok((sha, done)) => {
            let report = Report {
                command: argv.iter().skip(1).cloned().collect(),
                input_sha256: sha,
                results: done.results,
                warnings: done.warnings,
                timing_ms: start.elapsed().as_millis() as u64,
            };
            let stdout = if cli.json {
                format!("{}\n", report.to_json())
            } else {
                let mut t = done.text;
                for w in &report.warnings {
                    let _ = writeln!(t, "warning: {w}");
                }
                t
            };
            Outcome { code: if done.pass { EXIT_PASS } else { EXIT_MATH }, stdout, stderr: String::new(), report: Some(report) }
        }
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: if cli.json { format!("{}\n", error_json(&e)) } else { String::new() },
            stderr: format!("error: {e}\n"),
            report: None,
        },
    }
}
