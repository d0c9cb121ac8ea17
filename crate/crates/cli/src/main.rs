use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hquant::expr;
use hquant::report::{run_cells, Status};
use hquant::suites::{self, Suite, SuiteConfig};
use hquant::{Error, LieContext, QuantizationContext, Variant};

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_INADMISSIBLE: u8 = 4;

#[derive(Parser)]
#[command(name = "hquant", version, about = "Twisted Hopf structures on Cartan type H algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads (0 = all cores).
    #[arg(long, global = true, env = "HQUANT_THREADS")]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Coproduct, antipode or counit of an element.
    Compute {
        #[arg(value_enum)]
        op: Op,
        #[command(flatten)]
        ctx: ContextArgs,
        /// Element, e.g. "DH[1;1]" or "2*DHp[0;2]@3 - DHp[1;1]@3".
        #[arg(long)]
        elt: String,
        /// Evaluate the series at t = t0 (restricted variants with q = 1 only).
        #[arg(long)]
        t0: Option<i64>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(Suite::NAMES))]
        suite: String,
        #[command(flatten)]
        ctx: ContextArgs,
        /// Seed for sampled checks.
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Number of sampled indices in the horizontal suite.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Record wall-clock time per check.
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Delta,
    Antipode,
    Counit,
}

#[derive(Args)]
struct ContextArgs {
    /// char0-vertical, char0-horizontal, ut-vertical, utq-vertical,
    /// ut-horizontal, utq-horizontal or jordanian.
    #[arg(long)]
    variant: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<i32>,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<i32>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    q: Option<u32>,
    /// Truncation order of the t-series.
    #[arg(long = "N")]
    order: Option<usize>,
}

struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Parse { .. } => EXIT_PARSE,
            Error::Inadmissible(_) | Error::NotReducible { .. } => EXIT_INADMISSIBLE,
            Error::InvalidParameters(_) | Error::NotPrime(_) | Error::ContextMismatch(_) | Error::RankMismatch(..) => {
                EXIT_CONFIG
            }
            _ => EXIT_FAIL,
        };
        Failure(code, e.to_string())
    }
}

fn config(msg: impl Into<String>) -> Failure {
    Failure(EXIT_CONFIG, msg.into())
}

fn variant(args: &ContextArgs, elt_prime: Option<u32>) -> Result<Variant, Failure> {
    let name = args.variant.as_deref().unwrap_or(if elt_prime.is_some() { "ut-vertical" } else { "char0-vertical" });
    let name = match name {
        "char0" => "char0-vertical",
        "ut" => "ut-vertical",
        "utq" => "utq-vertical",
        other => other,
    };
    let k = args.k.unwrap_or(1);
    let p = match (args.p, elt_prime) {
        (Some(a), Some(b)) if a != b => return Err(config(format!("--p {a} disagrees with the element's @{b}"))),
        (a, b) => a.or(b),
    };
    let modular = name != "char0-vertical" && name != "char0-horizontal";
    if !modular && p.is_some() {
        return Err(config(format!("{name} is a characteristic-zero variant; drop --p")));
    }
    let p = if modular { p.unwrap_or(if name == "jordanian" { 5 } else { 3 }) } else { 0 };
    let q = args.q.unwrap_or(0);
    let m = args.m.unwrap_or(if name == "jordanian" { -2 } else if k == 2 { 1 } else { 2 });
    Ok(match name {
        "char0-vertical" => Variant::Char0Vertical { k },
        "char0-horizontal" => Variant::Char0Horizontal { k, m },
        "ut-vertical" => Variant::ModularUtVertical { k, p },
        "utq-vertical" => Variant::ModularUtqVertical { k, p, q },
        "ut-horizontal" => Variant::ModularUtHorizontal { k, m, p },
        "utq-horizontal" => Variant::ModularUtqHorizontal { k, m, p, q },
        "jordanian" => Variant::JordanianSp2n { k, m, p, q },
        other => return Err(config(format!("unknown variant {other}"))),
    })
}

fn compute(args: &ContextArgs, op: Op, elt: &str, t0: Option<i64>, format: Format) -> Result<(), Failure> {
    let e = expr::parse(elt)?;
    let v = variant(args, e.prime()?)?;
    let rank = e.rank()?;
    let n = match (args.n, rank) {
        (Some(a), Some(b)) if a != b => return Err(config(format!("--n {a} disagrees with the element's rank {b}"))),
        (a, b) => a.or(b).unwrap_or(if matches!(v, Variant::JordanianSp2n { .. }) { 2 } else { 1 }),
    };
    if v.is_horizontal() && n < 2 {
        return Err(config("horizontal variants need n >= 2"));
    }
    let lie = match v.prime() {
        Some(p) => LieContext::ModularH { n, p },
        None if e.has_negative_entries() => LieContext::FullH { n },
        None => LieContext::HPlus { n },
    };
    let order = args.order.unwrap_or(match v.prime() {
        Some(p) => p as usize - 1,
        None => 3,
    });
    let qc = QuantizationContext::on(v, lie, order)?;
    if t0.is_some() && v.q() != Some(1) {
        return Err(config("--t0 needs a restricted variant with q = 1"));
    }
    let x = e.eval(qc.algebra())?;
    let field = qc.algebra().field();
    let lines: Vec<(usize, String)> = match op {
        Op::Counit => vec![(0, qc.algebra().epsilon0(&x).to_string())],
        Op::Delta => {
            let d = qc.delta_element(&x)?;
            match t0 {
                Some(t) => vec![(0, d.evaluate(&field.from_i64(t)).to_string())],
                None => d.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.to_string())).collect(),
            }
        }
        Op::Antipode => {
            let s = qc.antipode_element(&x)?;
            match t0 {
                Some(t) => vec![(0, s.evaluate(&field.from_i64(t)).to_string())],
                None => s.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.to_string())).collect(),
            }
        }
    };
    let op_name = match op {
        Op::Delta => "delta",
        Op::Antipode => "antipode",
        Op::Counit => "counit",
    };
    let mut out = io::stdout().lock();
    match format {
        Format::Text => {
            if lines.is_empty() {
                writeln!(out, "0").ok();
            }
            for (d, s) in &lines {
                match (op, t0) {
                    (Op::Counit, _) | (_, Some(_)) => writeln!(out, "{s}").ok(),
                    _ => writeln!(out, "t^{d}: {s}").ok(),
                };
            }
        }
        Format::Json => {
            let terms: Vec<serde_json::Value> =
                lines.iter().map(|(d, s)| serde_json::json!({"degree": d, "value": s})).collect();
            let rec = serde_json::json!({
                "operation": op_name,
                "variant": v.name(),
                "context": qc.algebra().context().to_string(),
                "mode": qc.mode().to_string(),
                "element": x.to_string(),
                "t0": t0,
                "terms": terms,
            });
            writeln!(out, "{rec}").ok();
        }
    }
    Ok(())
}

fn verify(args: &ContextArgs, suite: &str, seed: u64, samples: usize, timing: bool, format: Format) -> Result<bool, Failure> {
    if args.variant.is_some() {
        return Err(config("verify selects its own variants; drop --variant"));
    }
    let suite: Suite = suite.parse()?;
    let cfg = SuiteConfig { n: args.n, p: args.p, q: args.q, order: args.order, k: args.k, m: args.m, seed, samples };
    let cells = suites::cells(suite, &cfg)?;
    let mut all_pass = true;
    let mut out = io::stdout().lock();
    let (mut pass, mut fail) = (0, 0);
    // chunks keep the stream moving on long suites
    for chunk in cells.chunks(64) {
        for rec in run_cells(chunk, timing) {
            match rec.status {
                Status::Pass => pass += 1,
                Status::Fail => {
                    fail += 1;
                    all_pass = false;
                }
                Status::Skipped => {}
            }
            let line = match format {
                Format::Text => rec.to_text_line(),
                Format::Json => rec.to_json_line(),
            };
            writeln!(out, "{line}").ok();
        }
        out.flush().ok();
    }
    if let Format::Text = format {
        writeln!(out, "{pass} passed, {fail} failed").ok();
    }
    Ok(all_pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads;
    let format = cli.format;
    let result = hquant::par::with_threads(threads.filter(|&t| t > 0), move || match &cli.command {
        Command::Compute { op, ctx, elt, t0 } => compute(ctx, *op, elt, *t0, format).map(|_| true),
        Command::Verify { suite, ctx, seed, samples, timing } => verify(ctx, suite, *seed, *samples, *timing, format),
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
