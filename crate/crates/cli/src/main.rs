use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ibench_core::check::{CheckReport, Status};
use ibench_core::config::{parse_suite, ConfigError, RunConfig, CONFIG_ENV};
use ibench_core::registry;

#[derive(Parser)]
#[command(name = "ibench", version, about = "Exact checks of Dunkl-operator integrability identities")]
#[command(allow_negative_numbers = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a suite: hecke, yangian, reflection, hamiltonian, models or all.
    Verify {
        suite: String,
        /// Run only these checks (repeatable).
        #[arg(long = "check")]
        checks: Vec<String>,
        /// One JSON record per check, then a summary record.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Print the check catalog.
    ListChecks {
        #[arg(long)]
        json: bool,
    },
    /// Parameter utilities.
    Params {
        #[command(subcommand)]
        command: ParamsCommand,
    },
}

#[derive(Subcommand)]
enum ParamsCommand {
    /// Resolve and validate the configuration, printing the parameters.
    Validate {
        #[command(flatten)]
        config: ConfigArgs,
    },
}

#[derive(Args)]
struct ConfigArgs {
    /// Key-value configuration file.
    #[arg(long, env = CONFIG_ENV)]
    config: Option<PathBuf>,
    /// Extra `key=value` assignments, applied after the file (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
    #[arg(long = "n")]
    n: Option<String>,
    #[arg(long = "N")]
    particles: Option<String>,
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long)]
    b: Option<String>,
    #[arg(long)]
    b_prime: Option<String>,
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    gamma: Option<String>,
    #[arg(long)]
    tau1: Option<String>,
    #[arg(long)]
    tau2: Option<String>,
    /// Rows separated by `;`.
    #[arg(long)]
    involution: Option<String>,
    #[arg(long)]
    g: Option<String>,
    #[arg(long)]
    b1: Option<String>,
    #[arg(long)]
    b2: Option<String>,
    #[arg(long)]
    states: Option<String>,
    #[arg(long)]
    points: Option<String>,
    #[arg(long)]
    series_order: Option<String>,
    #[arg(long)]
    charges_kmax: Option<String>,
    /// rational, mod-p or mod-p:<prime>.
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    guard: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    allow_inconsistent: bool,
    #[arg(long)]
    allow_large: bool,
    /// none, v-numerator+1, g-denominator-flip or b-inconsistent.
    #[arg(long)]
    perturb: Option<String>,
    #[arg(long)]
    box_lo: Option<String>,
    #[arg(long)]
    box_hi: Option<String>,
}

impl ConfigArgs {
    fn build(&self) -> Result<RunConfig, Vec<ConfigError>> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path).map_err(|e| {
                vec![ConfigError {
                    field: "config".into(),
                    reason: format!("{}: {e}", path.display()),
                }]
            })?;
            cfg.apply_document(&text)?;
        }
        let mut errors = Vec::new();
        for s in &self.sets {
            match s.split_once('=') {
                Some((k, v)) => errors.extend(cfg.set(k.trim(), v).err()),
                None => errors.push(ConfigError {
                    field: "set".into(),
                    reason: format!("'{s}' is not key=value"),
                }),
            }
        }
        let flags = [
            ("n", &self.n),
            ("N", &self.particles),
            ("lambda", &self.lambda),
            ("beta", &self.beta),
            ("b", &self.b),
            ("b_prime", &self.b_prime),
            ("c", &self.c),
            ("gamma", &self.gamma),
            ("tau1", &self.tau1),
            ("tau2", &self.tau2),
            ("involution", &self.involution),
            ("g", &self.g),
            ("b1", &self.b1),
            ("b2", &self.b2),
            ("states", &self.states),
            ("points", &self.points),
            ("series_order", &self.series_order),
            ("charges_kmax", &self.charges_kmax),
            ("field", &self.field),
            ("guard", &self.guard),
            ("seed", &self.seed),
            ("perturb", &self.perturb),
            ("box_lo", &self.box_lo),
            ("box_hi", &self.box_hi),
        ];
        for (k, v) in flags {
            if let Some(v) = v {
                errors.extend(cfg.set(k, v).err());
            }
        }
        if self.strict {
            cfg.strict = true;
        }
        if self.allow_inconsistent {
            cfg.allow_inconsistent = true;
        }
        if self.allow_large {
            cfg.allow_large = true;
        }
        if errors.is_empty() {
            Ok(cfg)
        } else {
            Err(errors)
        }
    }
}

fn config_failure(errors: &[ConfigError], json: bool) -> ExitCode {
    for e in errors {
        if json {
            let rec = serde_json::json!({"error": "config", "field": e.field, "reason": e.reason});
            emit(&format!("{rec}\n"));
        } else {
            eprintln!("config error: {e}");
        }
    }
    ExitCode::from(2)
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Skipped => "SKIP",
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn render_reports(reports: &[CheckReport], json: bool) -> String {
    let count = |s| reports.iter().filter(|r| r.status == s).count();
    let (pass, fail, skip) = (count(Status::Pass), count(Status::Fail), count(Status::Skipped));
    let mut out = String::new();
    if json {
        for r in reports {
            let _ = writeln!(out, "{}", serde_json::to_string(r).expect("report serializes"));
        }
        let _ = writeln!(out, "{}", serde_json::json!({"summary": {"pass": pass, "fail": fail, "skipped": skip}}));
        return out;
    }
    for r in reports {
        let _ = write!(
            out,
            "{} {:<38} n={} N={} samples={} {}ms",
            status_word(r.status),
            r.id,
            r.n,
            r.particles,
            r.samples,
            r.ms
        );
        if let Some(note) = &r.note {
            let _ = write!(out, "  [{note}]");
        }
        out.push('\n');
        if r.status == Status::Fail {
            if let Some(w) = &r.witness {
                let _ = writeln!(out, "     witness: {}", serde_json::to_string(w).expect("witness serializes"));
            }
        }
    }
    let _ = writeln!(out, "{pass} passed, {fail} failed, {skip} skipped");
    out
}

fn verify(suite: &str, checks: &[String], json: bool, args: &ConfigArgs) -> ExitCode {
    let Some(suite) = parse_suite(suite) else {
        let e = ConfigError {
            field: "suite".into(),
            reason: format!("unknown suite '{suite}' (hecke, yangian, reflection, hamiltonian, models, all)"),
        };
        return config_failure(&[e], json);
    };
    let mut cfg = match args.build() {
        Ok(c) => c,
        Err(e) => return config_failure(&e, json),
    };
    cfg.suite = suite;
    let selection = if checks.is_empty() {
        Ok(registry::selected(suite))
    } else {
        let ids: Vec<&str> = checks.iter().map(String::as_str).collect();
        registry::lookup(&ids).map_err(|e| vec![e])
    };
    let reports = match selection.and_then(|sel| registry::run_checks(&cfg, &sel)) {
        Ok(r) => r,
        Err(e) => return config_failure(&e, json),
    };
    emit(&render_reports(&reports, json));
    if reports.iter().any(|r| r.status == Status::Fail) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { suite, checks, json, config } => verify(&suite, &checks, json, &config),
        Command::ListChecks { json } => {
            let mut out = String::new();
            for c in registry::catalog() {
                if json {
                    let _ = writeln!(out, "{}", serde_json::to_string(&c).expect("catalog serializes"));
                } else {
                    let _ = writeln!(out, "{:<12} {:<38} {}", c.suite.name(), c.id, c.reference);
                }
            }
            emit(&out);
            ExitCode::SUCCESS
        }
        Command::Params {
            command: ParamsCommand::Validate { config },
        } => match config.build().and_then(|c| c.resolve()) {
            Ok(p) => {
                emit(&format!("{}\n", serde_json::to_string_pretty(&p).expect("params serialize")));
                ExitCode::SUCCESS
            }
            Err(e) => config_failure(&e, false),
        },
    }
}
