//! Job configuration: defaults, a plain key=value config file, the
//! HECKE_CACHE_DIR environment variable, and command-line flags, in
//! increasing order of precedence (flags win).

use std::collections::BTreeMap;
use std::path::PathBuf;

use hecke_core::{Error, Result};

use crate::CommonOpts;

pub const CACHE_ENV_VAR: &str = "HECKE_CACHE_DIR";

const DEFAULT_CUTOFF: usize = 16;
const DEFAULT_BOUND: u64 = 7;

#[derive(Debug, Clone)]
pub struct JobConfig {
    pub datum: String,
    pub fold: Option<String>,
    pub weights: Option<Vec<u64>>,
    pub cutoff: usize,
    pub bound: u64,
    pub jobs: usize,
    pub cache_dir: PathBuf,
    pub out: Option<PathBuf>,
    pub json: bool,
}

impl JobConfig {
    pub fn resolve(opts: &CommonOpts) -> Result<JobConfig> {
        let file = match &opts.config {
            Some(path) => parse_config_file(&std::fs::read_to_string(path)?)?,
            None => BTreeMap::new(),
        };
        let get = |key: &str| file.get(key).cloned();

        let datum = opts
            .datum
            .clone()
            .or_else(|| get("datum"))
            .ok_or_else(|| Error::Config("no datum given (use --datum or a config file)".into()))?;
        let fold = opts.fold.clone().or_else(|| get("fold"));
        let weights_raw = opts.weights.clone().or_else(|| get("weights"));
        if fold.is_some() && weights_raw.is_some() {
            return Err(Error::Config(
                "--fold and --weights are mutually exclusive: folding determines L".into(),
            ));
        }
        let weights = weights_raw.map(|s| parse_list::<u64>(&s, "weights")).transpose()?;
        let cutoff = opts
            .cutoff
            .or(get("cutoff").map(|s| parse_one(&s, "cutoff")).transpose()?)
            .unwrap_or(DEFAULT_CUTOFF);
        let bound = opts
            .bound
            .or(get("bound").map(|s| parse_one(&s, "bound")).transpose()?)
            .unwrap_or(DEFAULT_BOUND);
        let jobs = opts
            .jobs
            .or(get("jobs").map(|s| parse_one(&s, "jobs")).transpose()?)
            .unwrap_or(1);
        if jobs == 0 {
            return Err(Error::Config("--jobs must be positive".into()));
        }
        let cache_dir = opts
            .cache_dir
            .clone()
            .or_else(|| std::env::var_os(CACHE_ENV_VAR).map(PathBuf::from))
            .or_else(|| get("cache_dir").map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(".hecke-cache"));
        let out = opts.out.clone().or_else(|| get("out").map(PathBuf::from));
        let json = opts.json || get("json").map(|s| s == "true" || s == "1").unwrap_or(false);

        Ok(JobConfig {
            datum,
            fold,
            weights,
            cutoff,
            bound,
            jobs,
            cache_dir,
            out,
            json,
        })
    }

    /// Canonical label identifying the weighted datum; part of the cache
    /// key.
    pub fn label(&self) -> String {
        let mut label = self.datum.clone();
        if let Some(f) = &self.fold {
            label.push_str(&format!("|fold={f}"));
        }
        if let Some(w) = &self.weights {
            let joined: Vec<String> = w.iter().map(|x| x.to_string()).collect();
            label.push_str(&format!("|weights={}", joined.join(",")));
        }
        label
    }
}

fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!("config line {}: expected key=value", lineno + 1))
        })?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn parse_one<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::Config(format!("bad {what} value {s:?}")))
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',').map(|t| parse_one(t, what)).collect()
}
