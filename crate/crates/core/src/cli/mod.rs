//! Command-line front end: configuration, subcommands and exit codes.

pub mod config;
pub mod report;
pub mod verify;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::chars::{canonical_irreps, Character, Irrep, RootOfUnity};
use crate::cohomx::{self, BaseCase};
use crate::error::Error;

pub use config::RunConfig;
pub use report::{Format, Item, Report};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "divext", version, about = "Ext groups of mod-p representations of D^× and brute-force checks")]
pub struct Cli {
    /// Config file of key=value lines.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Override one config key (key=value); repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    /// p,f,d,r
    #[arg(long, global = true)]
    pub params: Option<String>,
    /// padic, padic:E or function-field
    #[arg(long = "case", global = true)]
    pub case: Option<String>,
    #[arg(long, global = true)]
    pub precision: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long = "cap-enum", global = true)]
    pub cap_enum: Option<u64>,
    #[arg(long = "cap-table", global = true)]
    pub cap_table: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ext^n between two irreducible representations.
    Ext {
        #[arg(long = "deg")]
        deg: u32,
        /// "trivial", inline JSON, or @file.
        #[arg(long, default_value = "trivial")]
        pi: String,
        #[arg(long = "pi2", default_value = "trivial")]
        pi2: String,
    },
    /// Ext^1 matrix over canonical irreps.
    Table,
    /// Run a verification suite over the configured grids.
    Verify {
        #[arg(value_enum, default_value = "all")]
        suite: verify::Suite,
    },
    /// List canonical irreps.
    Classify,
    /// H^1(I_1) ⊗ χ as a representation of D_a^×/I_1.
    H1 {
        /// "trivial", inline JSON, or @file.
        #[arg(long, default_value = "trivial")]
        chi: String,
        #[arg(long)]
        dual: bool,
    },
    /// Cohomology and Ext table for the quaternion algebra over Q_p.
    Quaternion {
        /// Character of level 1 or 2; all representatives when absent.
        #[arg(long)]
        chi: Option<String>,
    },
}

/// Rendered output and exit code of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Unsupported(_) => EXIT_UNSUPPORTED,
        Error::NotFound(_) | Error::PrecisionBudget(_) => EXIT_FAIL,
        _ => EXIT_CONFIG,
    }
}

fn config_error(msg: String) -> Outcome {
    Outcome { code: EXIT_CONFIG, stdout: String::new(), stderr: msg }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_PASS };
            return Outcome { code, stdout: String::new(), stderr: e.render().to_string() };
        }
    };
    let cfg = match RunConfig::from_cli(&cli) {
        Ok(c) => c,
        Err(e) => return config_error(format!("configuration error: {e}")),
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build() {
        Ok(p) => p,
        Err(e) => return config_error(format!("thread pool: {e}")),
    };
    let result = pool.install(|| dispatch(&cli.command, &cfg));
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            return Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}") };
        }
    };
    let code = if report.failed > 0 { EXIT_FAIL } else { EXIT_PASS };
    let text = report.render(cfg.format);
    match &cfg.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: report.status_line() },
            Err(e) => config_error(format!("cannot write {}: {e}", path.display())),
        },
        None => Outcome { code, stdout: text, stderr: report.status_line() },
    }
}

fn dispatch(cmd: &Command, cfg: &RunConfig) -> crate::Result<Report> {
    match cmd {
        Command::Ext { deg, pi, pi2 } => cmd_ext(cfg, *deg, pi, pi2),
        Command::Table => cmd_table(cfg),
        Command::Verify { suite } => verify::run_suite(cfg, *suite),
        Command::Classify => cmd_classify(cfg),
        Command::H1 { chi, dual } => cmd_h1(cfg, chi, *dual),
        Command::Quaternion { chi } => cmd_quaternion(cfg, chi.as_deref()),
    }
}

fn load_json(s: &str) -> crate::Result<serde_json::Value> {
    let text = match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?,
        None => s.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_irrep(cfg: &RunConfig, s: &str) -> crate::Result<Irrep> {
    if s.trim() == "trivial" {
        return Ok(Irrep::trivial(cfg.params));
    }
    Irrep::from_json(cfg.params, &load_json(s)?)
}

pub fn parse_character(cfg: &RunConfig, s: &str) -> crate::Result<Character> {
    if s.trim() == "trivial" {
        return Ok(Character::trivial(cfg.params, 1));
    }
    Character::from_json(cfg.params, &load_json(s)?)
}

fn cmd_ext(cfg: &RunConfig, deg: u32, pi: &str, pi2: &str) -> crate::Result<Report> {
    let a = parse_irrep(cfg, pi)?;
    let b = parse_irrep(cfg, pi2)?;
    let r = cohomx::ext_degree(&a, &b, deg, cfg.case)?;
    let mut report = cfg.report(format!("ext --deg {deg}"));
    report.push(Item::info(
        format!("Ext^{deg}"),
        r.rendered.clone(),
        json!({ "case": case_label(cfg.case), "pi": a.to_json(), "pi2": b.to_json(), "ext": r.to_json() }),
    ));
    Ok(report)
}

/// `α` values for `κ`: all of order dividing one of the configured orders.
pub fn kappa_alphas(cfg: &RunConfig) -> crate::Result<Vec<RootOfUnity>> {
    let mut out = vec![RootOfUnity::TRIVIAL];
    for &n in &cfg.alpha_orders {
        if crate::numth::gcd(n, cfg.params.p) != 1 {
            continue;
        }
        for u in 0..n {
            let z = RootOfUnity::new(u as i64, n)?;
            if !out.contains(&z) {
                out.push(z);
            }
        }
    }
    out.sort();
    Ok(out)
}

fn cmd_table(cfg: &RunConfig) -> crate::Result<Report> {
    let case = cfg.case;
    let irreps = canonical_irreps(cfg.params, &kappa_alphas(cfg)?)?;
    if irreps.len() > 512 {
        return Err(Error::EnumerationCap { size: irreps.len() as u64, cap: 512 });
    }
    let mut report = cfg.report("table".into());
    let mut matrix = Vec::new();
    let mut symmetric = true;
    let mut diagonal_ok = true;
    let mut values = std::collections::BTreeSet::new();
    for x in &irreps {
        let mut row = Vec::new();
        for y in &irreps {
            let e = cohomx::ext_n(x, y, 1, case)?.total;
            let swapped = cohomx::ext_n(&y.dual(), &x.dual(), 1, case)?.total;
            symmetric &= e == swapped;
            if x == y {
                diagonal_ok &= e.h1f_mult >= 1 && e.finite >= 1;
            }
            values.insert(e.render());
            row.push(e.render());
        }
        matrix.push(row);
    }
    report.push(Item::check(
        "dual-swap symmetry".into(),
        symmetric,
        format!("{} irreps", irreps.len()),
        json!(null),
    ));
    report.push(Item::check("diagonal contains ef+1".into(), diagonal_ok, String::new(), json!(null)));
    if cfg.params.d == 2 {
        let allowed: std::collections::BTreeSet<String> = [
            cohomx::ExtDim::zero(case),
            cohomx::ExtDim::finite(1, case),
            cohomx::ExtDim { finite: 1, h1f_mult: 1, case },
            cohomx::ExtDim { finite: 2, h1f_mult: 1, case },
        ]
        .iter()
        .map(|e| e.render())
        .collect();
        report.push(Item::check(
            "quaternion value set".into(),
            values.is_subset(&allowed),
            values.iter().cloned().collect::<Vec<_>>().join(", "),
            json!({ "allowed": allowed }),
        ));
    }
    report.push(Item::info(
        "Ext^1 matrix".into(),
        format!("{}x{}", irreps.len(), irreps.len()),
        json!({ "irreps": irreps.iter().map(Irrep::to_json).collect::<Vec<_>>(), "matrix": matrix }),
    ));
    Ok(report)
}

fn cmd_classify(cfg: &RunConfig) -> crate::Result<Report> {
    let irreps = canonical_irreps(cfg.params, &kappa_alphas(cfg)?)?;
    let mut report = cfg.report("classify".into());
    for pi in irreps {
        report.push(Item::info(
            format!("a={} M={} alpha={}", pi.level(), pi.chi().exponent(), pi.kappa().alpha()),
            format!("dim {}", pi.dim()),
            pi.to_json(),
        ));
    }
    Ok(report)
}

fn cmd_h1(cfg: &RunConfig, chi: &str, dual: bool) -> crate::Result<Report> {
    let c = parse_character(cfg, chi)?;
    let h = cohomx::h1_structure(&c, dual);
    let m = cohomx::mult_trivial_h1(&c, dual, cfg.case);
    let mut report = cfg.report(format!("h1{}", if dual { " --dual" } else { "" }));
    report.push(Item::info(
        "H^1 structure".into(),
        format!("trivial multiplicity {}", m.render()),
        json!({ "structure": h, "trivial_multiplicity": m }),
    ));
    Ok(report)
}

fn cmd_quaternion(cfg: &RunConfig, chi: Option<&str>) -> crate::Result<Report> {
    let chars = match chi {
        Some(s) => vec![parse_character(cfg, s)?],
        None => verify::quaternion_representatives(cfg.params)?,
    };
    let mut report = cfg.report("quaternion".into());
    let cohom = (0..5).map(cohomx::quaternion_qp_cohom).collect::<crate::Result<Vec<_>>>()?;
    report.push(Item::info(
        "H^*(I_1)".into(),
        cohom.iter().map(|c| c.dim.to_string()).collect::<Vec<_>>().join(","),
        json!(cohom),
    ));
    for c in chars {
        let row = (0..=6).map(|n| cohomx::quaternion_qp_table(&c, n, cfg.case)).collect::<crate::Result<Vec<_>>>()?;
        report.push(Item::info(
            format!("Ext^n(1, {c})"),
            row.iter().map(|e| e.render()).collect::<Vec<_>>().join(" | "),
            json!({ "character": c, "ext": row }),
        ));
    }
    Ok(report)
}

pub(crate) fn case_label(case: BaseCase) -> String {
    match case {
        BaseCase::PAdic { e, f } => format!("padic(e={e},f={f})"),
        BaseCase::FunctionField => "function-field".into(),
    }
}
