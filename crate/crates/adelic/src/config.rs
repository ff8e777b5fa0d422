//! Flat key=value run configuration with lossless round-tripping.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::PrimeWindow;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Defaults shared by CLI subcommands. All bounds must sit within the module
/// guardrails; `load` rejects anything outside them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub window: PrimeWindow,
    pub q_list: Vec<String>,
    pub curve_list: Vec<String>,
    pub d_max: u32,
    pub h_max: i64,
    pub max_exceptions: usize,
    pub format: OutputFormat,
    pub output: Option<String>,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            window: PrimeWindow { lo: 5, hi: 500 },
            q_list: vec!["2".into()],
            curve_list: vec!["1,0".into()],
            d_max: 3,
            h_max: 10,
            max_exceptions: 3,
            format: OutputFormat::Csv,
            output: None,
        }
    }
}

impl RunConfig {
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("lo={}\n", self.window.lo));
        out.push_str(&format!("hi={}\n", self.window.hi));
        out.push_str(&format!("q={}\n", self.q_list.join(";")));
        out.push_str(&format!("curves={}\n", self.curve_list.join(";")));
        out.push_str(&format!("dmax={}\n", self.d_max));
        out.push_str(&format!("hmax={}\n", self.h_max));
        out.push_str(&format!("max_exceptions={}\n", self.max_exceptions));
        out.push_str(&format!(
            "format={}\n",
            match self.format {
                OutputFormat::Csv => "csv",
                OutputFormat::Json => "json",
            }
        ));
        if let Some(o) = &self.output {
            out.push_str(&format!("output={o}\n"));
        }
        out
    }

    pub fn from_kv(s: &str) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        for line in s.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("bad config line {line:?}")))?;
            let parse_err = |k: &str| Error::Config(format!("bad value for {k}: {value:?}"));
            match key {
                "lo" => cfg.window.lo = value.parse().map_err(|_| parse_err(key))?,
                "hi" => cfg.window.hi = value.parse().map_err(|_| parse_err(key))?,
                "q" => cfg.q_list = value.split(';').map(String::from).collect(),
                "curves" => cfg.curve_list = value.split(';').map(String::from).collect(),
                "dmax" => cfg.d_max = value.parse().map_err(|_| parse_err(key))?,
                "hmax" => cfg.h_max = value.parse().map_err(|_| parse_err(key))?,
                "max_exceptions" => cfg.max_exceptions = value.parse().map_err(|_| parse_err(key))?,
                "format" => {
                    cfg.format = match value {
                        "csv" => OutputFormat::Csv,
                        "json" => OutputFormat::Json,
                        _ => return Err(parse_err(key)),
                    }
                }
                "output" => cfg.output = Some(value.to_string()),
                other => return Err(Error::Config(format!("unknown config key {other:?}"))),
            }
        }
        if cfg.window.hi < cfg.window.lo {
            return Err(Error::Config("hi < lo".into()));
        }
        if cfg.d_max > crate::adele::MAX_SCAN_DEGREE || cfg.h_max > crate::adele::MAX_SCAN_HEIGHT {
            return Err(Error::Config("scan bounds exceed guardrails".into()));
        }
        Ok(cfg)
    }
}
