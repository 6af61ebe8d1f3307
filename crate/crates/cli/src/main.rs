use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;

use fai_core::immunity::{analyze, fai, FunctionReport};
use fai_core::pai_lcd::{pai_search_exhaustive, pai_search_sampled, CarletFengReport, Enumeration, PaiCertificate};
use fai_core::{suites, BooleanFunction, FieldGF2n, LinearCode};

/// Algebraic immunity, fast algebraic immunity and LCD codes from punctured
/// Reed-Muller codes.
///
/// Exit status: 0 on success, 1 when a checked property fails, 2 on usage or
/// input errors.
#[derive(Parser, Debug)]
#[command(name = "fai", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for every random choice (ChaCha8, one stream per trial).
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Number of random trials for sweeps and sampled searches.
    #[arg(long, global = true)]
    trials: Option<usize>,

    /// Emit one JSON object per record instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Primitive polynomial for the point enumeration, as hex with the
    /// leading term (e.g. 0x13 for x^4+x+1).
    #[arg(long, global = true, value_parser = parse_modulus)]
    modulus: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Degree, weight, LDA, AI, profile, FAI and 𝓕𝓐𝓘 of each function.
    Analyze {
        /// `n:HEX` truth tables or `n:{i,j,...}` support lists.
        #[arg(required = true)]
        functions: Vec<String>,
    },
    /// Generator matrix of RM(d, n).
    Rm {
        d: usize,
        n: usize,
        /// Keep only the support columns of this function.
        #[arg(long)]
        punctured_by: Option<String>,
    },
    /// Hull dimension and LCD status of a generator matrix file.
    LcdCheck { file: PathBuf },
    /// PAI certificate of a function, or of every PAI function found by a search.
    PaiVerify {
        function: Option<String>,
        /// Search on n variables: exhaustive for n <= 4, sampled above.
        #[arg(long, conflicts_with = "function")]
        search: Option<usize>,
    },
    /// Cyclic supports {α^ℓ, …, α^(ℓ+m−1)} (with 0 adjoined when n is a power of two).
    CarletFeng {
        n: usize,
        /// Offset ℓ; every offset when omitted.
        offset: Option<i64>,
        /// Number of consecutive powers (default 2^(n−1)).
        #[arg(long)]
        m: Option<usize>,
    },
    /// Run a property suite.
    Sweep {
        /// One of: mobius, ai-oracle, fai-oracle, fai-bounds, invariance,
        /// perturbation, codes, pai-lcd, carlet-feng.
        suite: String,
        n: usize,
        trials: Option<usize>,
    },
}

fn parse_modulus(s: &str) -> std::result::Result<u32, String> {
    let digits = s.trim_start_matches("0x").trim_start_matches("0X");
    u32::from_str_radix(digits, 16).map_err(|e| format!("bad modulus {s:?}: {e}"))
}

/// Text and JSON output accumulated for one command.
struct Report {
    json: bool,
    echo: String,
    text: String,
    failed: bool,
}

impl Report {
    fn new(json: bool, echo: String) -> Self {
        Self {
            json,
            echo,
            text: String::new(),
            failed: false,
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        if !self.json {
            self.text += s.as_ref();
            self.text.push('\n');
        }
    }

    fn record<T: Serialize>(&mut self, command: &str, value: &T) -> Result<()> {
        #[derive(Serialize)]
        struct Tagged<'a, T> {
            command: &'a str,
            echo: &'a str,
            #[serde(flatten)]
            value: &'a T,
        }
        if self.json {
            self.text += &serde_json::to_string(&Tagged {
                command,
                echo: &self.echo,
                value,
            })?;
            self.text.push('\n');
        }
        Ok(())
    }
}

fn parse_function(token: &str) -> Result<BooleanFunction> {
    token.parse()
        .with_context(|| format!("invalid function {token:?}"))
}

fn enumeration(n: usize, modulus: Option<u32>) -> Result<Enumeration> {
    Ok(match modulus {
        Some(m) => Enumeration::with_field(&FieldGF2n::with_modulus(n, m)?),
        None => Enumeration::new(n)?,
    })
}

fn modulus_line(n: usize, modulus: Option<u32>) -> Result<String> {
    if n < 2 {
        return Ok("modulus none (GF(2))".into());
    }
    let field = match modulus {
        Some(m) => FieldGF2n::with_modulus(n, m)?,
        None => FieldGF2n::new(n)?,
    };
    Ok(format!("modulus {}", field.modulus_string()))
}

fn show_profile(p: &[Option<usize>]) -> String {
    let parts: Vec<String> = p
        .iter()
        .map(|m| m.map_or_else(|| "⊥".to_string(), |v| v.to_string()))
        .collect();
    format!("({})", parts.join(","))
}

fn show_opt(v: Option<usize>) -> String {
    v.map_or_else(|| "⊥".to_string(), |v| v.to_string())
}

fn cmd_analyze(tokens: &[String], out: &mut Report) -> Result<()> {
    for token in tokens {
        let f = parse_function(token)?;
        if f.is_zero() {
            bail!("{token}: FAI is undefined for the zero function");
        }
        let r: FunctionReport = analyze(&f)?;
        out.record("analyze", &r)?;
        let divergence = fai(&f)?.formula_diverges();
        out.line(format!("function {}", r.tt));
        out.line(format!("  n        {}", r.n));
        out.line(format!("  deg      {}", r.deg));
        out.line(format!("  wt       {}", r.wt));
        out.line(format!("  lda(f)   {}", show_opt(r.lda_f)));
        out.line(format!("  lda(1+f) {}", show_opt(r.lda_fc)));
        out.line(format!("  ai       {}", r.ai));
        out.line(format!("  profile  {}", show_profile(&r.profile)));
        out.line(format!("  fai      {}", r.fai));
        out.line(format!("  ffai     {}", show_opt(r.ffai)));
        out.line(format!("  witness  g = {} (total {})", r.witness_g, r.witness_total));
        if divergence {
            out.line(format!(
                "  min_k(k + mu_k) = {} (attained only by g = 1)",
                r.profile_formula
            ));
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct CodeRecord {
    length: usize,
    dim: usize,
    lcd: bool,
    hull: usize,
    hull_direct: usize,
    self_orthogonal: bool,
    even_like: bool,
    rows: Vec<String>,
}

fn code_record(c: &LinearCode) -> CodeRecord {
    CodeRecord {
        length: c.length(),
        dim: c.dim(),
        lcd: c.is_lcd(),
        hull: c.hull_dim(),
        hull_direct: c.hull_dim_direct(),
        self_orthogonal: c.is_self_orthogonal(),
        even_like: c.is_even_like(),
        rows: c.generator().row_vecs().iter().map(|r| r.to_string01()).collect(),
    }
}

fn cmd_rm(cli: &Cli, d: usize, n: usize, punctured_by: Option<&str>, out: &mut Report) -> Result<()> {
    if n == 0 || n > 12 || d > n {
        bail!("rm needs 0 <= d <= n <= 12 and n >= 1, got d = {d}, n = {n}");
    }
    let en = enumeration(n, cli.modulus)?;
    let mut code = en.punctured_rm(d as i64, &en.support_columns(&BooleanFunction::one(n)?)?)?;
    if let Some(token) = punctured_by {
        let f = parse_function(token)?;
        if f.num_vars() != n {
            bail!("{token} has {} variables, expected {n}", f.num_vars());
        }
        code = en.punctured_rm(d as i64, &en.support_columns(&f)?)?;
    }
    out.record("rm", &code_record(&code))?;
    out.line(format!("# {}", modulus_line(n, cli.modulus)?));
    if !out.json {
        out.text += &code.to_text();
    }
    Ok(())
}

fn cmd_lcd_check(file: &PathBuf, out: &mut Report) -> Result<()> {
    let text = fs::read_to_string(file).with_context(|| format!("cannot read {}", file.display()))?;
    let code = LinearCode::from_text(&text).with_context(|| format!("malformed matrix in {}", file.display()))?;
    let r = code_record(&code);
    out.record("lcd-check", &r)?;
    out.line(format!("length={} dim={} hull={} lcd={}", r.length, r.dim, r.hull, r.lcd));
    out.line(format!(
        "self_orthogonal={} even_like={} hull_by_intersection={}",
        r.self_orthogonal, r.even_like, r.hull_direct
    ));
    Ok(())
}

fn certificate_lines(out: &mut Report, cert: &PaiCertificate) {
    let per_e: Vec<String> = cert
        .per_e_lcd
        .iter()
        .enumerate()
        .map(|(i, b)| format!("e{}={}", i + 1, b))
        .collect();
    out.line(format!(
        "{} weight={} fai={} pai_by_def={} pai_by_lcd={} lcd[{}]",
        cert.tt,
        cert.weight,
        cert.fai,
        cert.pai_by_def,
        cert.pai_by_lcd,
        per_e.join(" ")
    ));
}

fn cmd_pai_verify(cli: &Cli, function: Option<&str>, search: Option<usize>, out: &mut Report) -> Result<()> {
    let functions = match (function, search) {
        (Some(token), None) => vec![parse_function(token)?],
        (None, Some(n)) if (1..=4).contains(&n) => pai_search_exhaustive(n)?,
        (None, Some(n)) if (5..=8).contains(&n) => {
            let en = enumeration(n, cli.modulus)?;
            pai_search_sampled(&en, cli.trials.unwrap_or(1000), cli.seed)?
        }
        (None, Some(n)) => bail!("search supports 1 <= n <= 8, got {n}"),
        _ => bail!("give a function or --search <n>"),
    };
    let Some(n) = functions.first().map(BooleanFunction::num_vars).or(search) else {
        bail!("no function to verify");
    };
    let en = enumeration(n, cli.modulus)?;
    out.line(modulus_line(n, cli.modulus)?);
    let mut disagreements = 0;
    for f in &functions {
        if f.is_zero() {
            bail!("{f}: FAI is undefined for the zero function");
        }
        let cert = en.certificate(f)?;
        disagreements += usize::from(cert.pai_by_def != cert.pai_by_lcd);
        out.record("pai-verify", &cert)?;
        certificate_lines(out, &cert);
    }
    if search.is_some() {
        out.line(format!(
            "found {} PAI functions; {} disagree with the LCD test",
            functions.len(),
            disagreements
        ));
    }
    out.failed = disagreements > 0;
    Ok(())
}

fn carlet_feng_lines(out: &mut Report, r: &CarletFengReport) {
    let cert = &r.certificate;
    out.line(format!(
        "offset={} m={} weight={} parity_as_expected={} fai={} pai_by_def={} pai_by_lcd={}",
        r.offset, r.m, r.weight, r.weight_parity_expected, cert.fai, cert.pai_by_def, cert.pai_by_lcd
    ));
    out.line(format!("  support {:?}", r.support));
    out.line(format!("  function {}", cert.tt));
    for (e, (len, dim, lcd)) in r.lcd_codes.iter().enumerate() {
        out.line(format!("  e={} code [{len}, {dim}] lcd={lcd}", e + 1));
    }
}

fn cmd_carlet_feng(cli: &Cli, n: usize, offset: Option<i64>, m: Option<usize>, out: &mut Report) -> Result<()> {
    if !(2..=12).contains(&n) {
        bail!("carlet-feng supports 2 <= n <= 12, got {n}");
    }
    let en = enumeration(n, cli.modulus)?;
    let offsets: Vec<i64> = match offset {
        Some(l) => vec![l],
        None => (0..(1i64 << n) - 1).collect(),
    };
    out.line(modulus_line(n, cli.modulus)?);
    let mut pai = 0;
    for &l in &offsets {
        let r = en.carlet_feng_report(l, m)?;
        pai += usize::from(r.certificate.pai_by_def);
        out.failed |= r.certificate.pai_by_def != r.certificate.pai_by_lcd;
        out.record("carlet-feng", &r)?;
        carlet_feng_lines(out, &r);
    }
    out.line(format!("{pai} of {} offsets give PAI functions", offsets.len()));
    Ok(())
}

fn cmd_sweep(cli: &Cli, suite: &str, n: usize, trials: Option<usize>, out: &mut Report) -> Result<()> {
    let trials = trials.or(cli.trials).unwrap_or(1000);
    let report = suites::run_suite(suite, n, trials, cli.seed)?;
    out.record("sweep", &report)?;
    if !out.json {
        out.text += &report.to_text();
    }
    out.failed = !report.passed();
    Ok(())
}

fn run(cli: &Cli) -> Result<Report> {
    let mut out = Report::new(cli.json, echo());
    out.line(format!("# {}", out.echo));
    match &cli.command {
        Command::Analyze { functions } => cmd_analyze(functions, &mut out)?,
        Command::Rm { d, n, punctured_by } => cmd_rm(cli, *d, *n, punctured_by.as_deref(), &mut out)?,
        Command::LcdCheck { file } => cmd_lcd_check(file, &mut out)?,
        Command::PaiVerify { function, search } => cmd_pai_verify(cli, function.as_deref(), *search, &mut out)?,
        Command::CarletFeng { n, offset, m } => cmd_carlet_feng(cli, *n, *offset, *m, &mut out)?,
        Command::Sweep { suite, n, trials } => cmd_sweep(cli, suite, *n, *trials, &mut out)?,
    }
    Ok(out)
}

/// The command line as given, minus the program name and `--out`.
fn echo() -> String {
    let mut args: Vec<String> = Vec::new();
    let mut skip = false;
    for a in std::env::args().skip(1) {
        if skip {
            skip = false;
            continue;
        }
        if a == "--out" {
            skip = true;
            continue;
        }
        if a.starts_with("--out=") {
            continue;
        }
        args.push(a);
    }
    format!("fai {}", args.join(" "))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, &report.text).with_context(|| format!("cannot write {}", path.display())),
        None => std::io::stdout()
            .write_all(report.text.as_bytes())
            .context("cannot write to stdout"),
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    eprintln!("# duration {:.3}s", start.elapsed().as_secs_f64());
    if report.failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
