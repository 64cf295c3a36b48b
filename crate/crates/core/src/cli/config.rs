//! `key = value` configuration with layered overrides.

use std::collections::BTreeMap;
use std::path::PathBuf;

use sha2::{Digest, Sha256};

use crate::cohomx::BaseCase;
use crate::error::{Error, Result};
use crate::gf::Params;

use super::report::{Format, Report};
use super::Cli;

/// Checked-in defaults, including the `verify all` grids.
pub const DEFAULT_CONFIG: &str = include_str!("../../config/verify.conf");

pub const TOOL: &str = "divext";

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: Params,
    pub case: BaseCase,
    pub precision: usize,
    pub seed: u64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub jobs: usize,
    pub cap_enum: u64,
    pub cap_table: u64,
    pub alpha_orders: Vec<u64>,
    /// Every effective key, after all overrides.
    pub entries: BTreeMap<String, String>,
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_kv(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", n + 1)))?;
        out.insert(k.trim().replace('-', "_"), v.trim().to_string());
    }
    Ok(out)
}

fn get<T: std::str::FromStr>(m: &BTreeMap<String, String>, key: &str) -> Result<T> {
    let v = m.get(key).ok_or_else(|| Error::Parse(format!("missing config key {key}")))?;
    v.parse().map_err(|_| Error::Parse(format!("bad value for {key}: {v:?}")))
}

pub fn parse_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|t| t.trim())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("expected an integer, got {t:?}"))))
        .collect()
}

/// Grid entries `a,b,c; d,e,f` as lists of fields.
pub fn parse_grid(s: &str) -> Vec<Vec<String>> {
    s.split(';')
        .map(|e| e.split(',').map(|t| t.trim().to_string()).collect::<Vec<_>>())
        .filter(|e| !(e.len() == 1 && e[0].is_empty()))
        .collect()
}

impl RunConfig {
    pub fn from_entries(entries: BTreeMap<String, String>, out: Option<PathBuf>, jobs: Option<usize>) -> Result<Self> {
        let params = Params::new(get(&entries, "p")?, get(&entries, "f")?, get(&entries, "d")?, get(&entries, "r")?)?;
        let case_s: String = get(&entries, "case")?;
        let case = match case_s.as_str() {
            "padic" => BaseCase::parse(&format!("padic:{}", get::<u32>(&entries, "e")?), params.f)?,
            s => BaseCase::parse(s, params.f)?,
        };
        let format: String = get(&entries, "format")?;
        let format = match format.as_str() {
            "json" => Format::Json,
            "csv" => Format::Csv,
            "md" | "markdown" => Format::Md,
            f => return Err(Error::Parse(format!("unknown format {f:?}"))),
        };
        let default_jobs = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
        let jobs = match jobs {
            Some(j) => j,
            None => entries.get("jobs").map(|j| j.parse()).transpose().map_err(|_| Error::Parse("bad jobs".into()))?.unwrap_or(default_jobs),
        };
        Ok(RunConfig {
            params,
            case,
            precision: get(&entries, "precision")?,
            seed: get(&entries, "seed")?,
            format,
            out,
            jobs: jobs.max(1),
            cap_enum: get(&entries, "cap_enum")?,
            cap_table: get(&entries, "cap_table")?,
            alpha_orders: parse_list(&get::<String>(&entries, "alpha_orders")?)?,
            entries,
        })
    }

    /// Built-in defaults, then `--config`, then `--set`, then dedicated flags.
    pub fn from_cli(cli: &Cli) -> Result<Self> {
        let mut entries = parse_kv(DEFAULT_CONFIG)?;
        if let Some(path) = &cli.config {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            entries.extend(parse_kv(&text)?);
        }
        for kv in &cli.set {
            entries.extend(parse_kv(kv)?);
        }
        if let Some(ps) = &cli.params {
            let v = parse_list(ps)?;
            if v.len() != 4 {
                return Err(Error::Parse("--params takes p,f,d,r".into()));
            }
            for (k, x) in ["p", "f", "d", "r"].iter().zip(v) {
                entries.insert(k.to_string(), x.to_string());
            }
        }
        let mut set = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                entries.insert(k.into(), v);
            }
        };
        set("case", cli.case.clone());
        set("precision", cli.precision.map(|x| x.to_string()));
        set("seed", cli.seed.map(|x| x.to_string()));
        set("format", cli.format.map(|f| f.as_str().to_string()));
        set("cap_enum", cli.cap_enum.map(|x| x.to_string()));
        set("cap_table", cli.cap_table.map(|x| x.to_string()));
        Self::from_entries(entries, cli.out.clone(), cli.jobs)
    }

    pub fn default_config() -> Result<Self> {
        Self::from_entries(parse_kv(DEFAULT_CONFIG)?, None, None)
    }

    pub fn grid(&self, key: &str) -> Vec<Vec<String>> {
        self.entries.get(key).map(|s| parse_grid(s)).unwrap_or_default()
    }

    /// SHA-256 over the command and every key that can change the output.
    pub fn hash(&self, command: &str) -> String {
        let mut h = Sha256::new();
        h.update(command.as_bytes());
        h.update(b"\n");
        for (k, v) in &self.entries {
            if k == "jobs" {
                continue;
            }
            h.update(format!("{k}={v}\n").as_bytes());
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn report(&self, command: String) -> Report {
        Report::new(TOOL, env!("CARGO_PKG_VERSION"), self.hash(&command), command)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_parse() {
        let c = RunConfig::default_config().unwrap();
        assert_eq!(c.params, Params::new(5, 1, 2, 1).unwrap());
        assert_eq!(c.case, BaseCase::PAdic { e: 1, f: 1 });
        assert_eq!(c.grid("frattini").len(), 3);
        assert_eq!(c.grid("frattini")[1], vec!["2", "1", "3", "4"]);
    }

    #[test]
    fn overrides_and_hash() {
        let mut m = parse_kv(DEFAULT_CONFIG).unwrap();
        let a = RunConfig::from_entries(m.clone(), None, Some(1)).unwrap();
        m.extend(parse_kv("seed = 7\ncase = function-field").unwrap());
        let b = RunConfig::from_entries(m, None, Some(4)).unwrap();
        assert_eq!(b.seed, 7);
        assert_eq!(b.case, BaseCase::FunctionField);
        assert_ne!(a.hash("x"), b.hash("x"));
        assert_eq!(a.hash("x"), a.hash("x"));
        assert_ne!(a.hash("x"), a.hash("y"));
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(parse_kv("nonsense").is_err());
        assert!(parse_list("1,x").is_err());
    }
}
