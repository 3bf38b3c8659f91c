//! Plain-text `key = value` run configuration.

use std::path::Path;

use ccs_core::criteria_classifier::{Boundary, ClassifierOptions};
use ccs_core::finite_type::DegreeMode;
use ccs_core::skein_engine::SkeinLimits;
use thiserror::Error;

/// Environment variable naming the invariant cache directory.
pub const CACHE_DIR_ENV: &str = "CCS_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub max_crossings: Option<usize>,
    pub limits: SkeinLimits,
    pub degree_mode: DegreeMode,
    pub ic_boundary: Boundary,
    /// SO(3) test slopes are `m/n` with `1 <= m <= so3_max_m`, `1 <= |n| <= so3_max_n`.
    pub so3_max_m: i64,
    pub so3_max_n: i64,
    pub threads: Option<usize>,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            max_crossings: None,
            limits: SkeinLimits::default(),
            degree_mode: DegreeMode::Breadth,
            ic_boundary: Boundary::Strict,
            so3_max_m: 6,
            so3_max_n: 6,
            threads: None,
        }
    }
}

impl Config {
    pub fn classifier_options(&self) -> ClassifierOptions {
        ClassifierOptions {
            ic_boundary: self.ic_boundary,
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("config line {line}: {message}")]
    Line { line: usize, message: String },
}

pub fn load_config(path: impl AsRef<Path>) -> Result<Config, ConfigError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config(&text)
}

fn num<T: std::str::FromStr>(v: &str) -> Result<T, String> {
    v.parse().map_err(|_| format!("not a number: {v:?}"))
}

pub fn parse_config(text: &str) -> Result<Config, ConfigError> {
    let mut c = Config::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| ConfigError::Line {
            line: i + 1,
            message,
        };
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| err(format!("expected key = value, got {line:?}")))?;
        let (k, v) = (k.trim(), v.trim());
        let res: Result<(), String> = match k {
            "max_crossings" => num(v).map(|n| c.max_crossings = Some(n)),
            "max_state_sum_crossings" => num(v).map(|n| c.limits.max_state_sum_crossings = n),
            "max_kauffman_crossings" => num(v).map(|n| c.limits.max_kauffman_crossings = n),
            "max_recursion_nodes" => num(v).map(|n| c.limits.max_recursion_nodes = n),
            "degree_mode" => match v {
                "breadth" => {
                    let _: () = c.degree_mode = DegreeMode::Breadth;
                    Ok(())
                }
                "top" => {
                    let _: () = c.degree_mode = DegreeMode::TopExponent;
                    Ok(())
                }
                _ => Err(format!("degree_mode must be breadth or top, got {v:?}")),
            },
            "ic_boundary" => match v {
                "strict" => {
                    let _: () = c.ic_boundary = Boundary::Strict;
                    Ok(())
                }
                "inclusive" => {
                    let _: () = c.ic_boundary = Boundary::Inclusive;
                    Ok(())
                }
                _ => Err(format!(
                    "ic_boundary must be strict or inclusive, got {v:?}"
                )),
            },
            "so3_max_m" => num(v).map(|n| c.so3_max_m = n),
            "so3_max_n" => num(v).map(|n| c.so3_max_n = n),
            "threads" => num(v).map(|n| c.threads = Some(n)),
            _ => Err(format!("unknown key {k:?}")),
        };
        res.map_err(err)?;
    }
    if c.so3_max_m < 1 || c.so3_max_n < 1 {
        return Err(ConfigError::Line {
            line: 0,
            message: "so3_max_m and so3_max_n must be positive".into(),
        });
    }
    Ok(c)
}
