use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use einctl::commands::{self, TriangleArgs};
use einctl::{parse_signatures, render, run_suite, CliError, Suite, SuiteConfig};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "einctl", version, about = "Exact computations on Ein^{p,q} and o(p+1,q+1)")]
struct Cli {
    /// Render matrices as aligned text instead of compact JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Sig {
    #[arg(long)]
    p: usize,
    #[arg(long)]
    q: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Apply the flow tau^s to a null point.
    Flow {
        #[command(flatten)]
        sig: Sig,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Treat the point as a ray of the double cover.
        #[arg(long)]
        ray: bool,
    },
    /// Nilpotence degree of a subalgebra given by a basis file.
    Degree {
        #[arg(long)]
        basis: PathBuf,
    },
    /// The centralizer of the flow, or of a subalgebra of q given by a file.
    Centralizer {
        #[command(flatten)]
        sig: Sig,
        #[arg(long)]
        of: Option<PathBuf>,
    },
    /// The holonomy matrix h(s,t).
    Holonomy {
        #[command(flatten)]
        sig: Sig,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Stereographic chart: a null point to R^{p,q} or back.
    Chart {
        #[command(flatten)]
        sig: Sig,
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        vector: Option<String>,
    },
    /// Limit of the flow as s grows, with its attractor vertex.
    Limit {
        #[command(flatten)]
        sig: Sig,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Also integrate the flow numerically.
        #[arg(long)]
        float: bool,
        #[arg(long, default_value_t = 1e8)]
        s: f64,
    },
    /// Development of a triangle curve or of a curve file.
    Develop {
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        r: Option<String>,
        #[arg(long, conflicts_with_all = ["a", "x", "c", "r"])]
        curve: Option<PathBuf>,
    },
    /// Run the randomized verification suites and print a report.
    Verify {
        /// Comma-separated subset of forms,liealg,nilpotency,model,holonomy,centralizer.
        #[arg(long)]
        suites: Option<String>,
        /// Signature list such as "1,2;1,3;2,2".
        #[arg(long)]
        signatures: Option<String>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, env = "EINCTL_SEED", default_value_t = 42)]
        seed: u64,
        /// Time budget per random witness search, in milliseconds.
        #[arg(long, default_value_t = 1000)]
        witness_budget_ms: u64,
        /// Include wall-clock durations (the report is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
}

fn sig(s: &Sig) -> Result<ein_core::Signature, CliError> {
    commands::signature(s.p, s.q)
}

fn run(cmd: Cmd) -> Result<(Value, bool), CliError> {
    let v = match cmd {
        Cmd::Flow { sig: s, point, s: sv, ray } => commands::flow(sig(&s)?, &point, &sv, ray)?,
        Cmd::Degree { basis } => commands::degree(&basis)?,
        Cmd::Centralizer { sig: s, of } => commands::centralizer(sig(&s)?, of.as_deref())?,
        Cmd::Holonomy { sig: s, s: sv, t } => commands::holonomy(sig(&s)?, &sv, &t)?,
        Cmd::Chart { sig: s, point, vector } => commands::chart(sig(&s)?, point.as_deref(), vector.as_deref())?,
        Cmd::Limit { sig: s, point, float, s: sv } => commands::limit(sig(&s)?, &point, float, sv)?,
        Cmd::Develop { curve: Some(path), .. } => commands::develop_file(&path)?,
        Cmd::Develop { p, q, a, x, c, r, curve: None } => {
            let missing = || CliError::Input("triangle needs --p --q --a --x --c --r (or --curve FILE)".into());
            let s = commands::signature(p.ok_or_else(missing)?, q.ok_or_else(missing)?)?;
            let (a, x, c, r) = (a.ok_or_else(missing)?, x.ok_or_else(missing)?, c.ok_or_else(missing)?, r.ok_or_else(missing)?);
            commands::develop_triangle(s, &TriangleArgs { a: &a, x: &x, c: &c, r: &r })?
        }
        Cmd::Verify { suites, signatures, trials, seed, witness_budget_ms, timings } => {
            let mut cfg = SuiteConfig { trials, seed, timings, witness_budget: Duration::from_millis(witness_budget_ms), ..SuiteConfig::default() };
            if let Some(list) = suites {
                cfg.suites = list.split(',').map(str::parse::<Suite>).collect::<Result<_, _>>()?;
            }
            if let Some(list) = signatures {
                cfg.signatures = parse_signatures(&list)?;
            }
            let report = run_suite(&cfg)?;
            let ok = report.all_passed();
            let fails = report.summary.fail;
            let v = serde_json::to_value(&report).expect("report serializes");
            if !ok {
                print_value(&v, false);
                return Err(CliError::ChecksFailed(fails));
            }
            return Ok((v, true));
        }
    };
    Ok((v, true))
}

fn print_value(v: &Value, pretty: bool) {
    let text = if pretty { render::pretty(v) } else { serde_json::to_string(v).expect("value serializes") + "\n" };
    // a closed pipe (e.g. `| head`) is not an error worth a panic
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
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
    match run(cli.cmd) {
        Ok((v, _)) => {
            print_value(&v, cli.pretty);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("einctl: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
