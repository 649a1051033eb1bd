//! Run settings and the key-value configuration file.

use std::collections::BTreeMap;

use polylog_core::realization::Precision;

use crate::error::VerifyError;

/// Global flags for a run.
#[derive(Clone, Debug)]
pub struct Settings {
    pub seed: u64,
    /// Overrides every check's default trial count.
    pub trials: Option<usize>,
    pub precision: Precision,
    pub tolerance: f64,
    pub nvars: usize,
    pub coeff_bound: i64,
    /// Derivation images in the variables t1..tk; random per trial when absent.
    pub derivation: Option<Vec<String>>,
    /// Per-check overrides keyed by check id.
    pub per_check: BTreeMap<String, CheckOverrides>,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            seed: 1,
            trials: None,
            precision: Precision::default(),
            tolerance: 1e-10,
            nvars: 2,
            coeff_bound: 20,
            derivation: None,
            per_check: BTreeMap::new(),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct CheckOverrides {
    pub trials: Option<usize>,
    pub nvars: Option<usize>,
    pub coeff_bound: Option<i64>,
    pub derivation: Option<Vec<String>>,
}

/// Settings as seen by one check.
#[derive(Clone, Debug)]
pub struct CheckParams {
    pub trials: usize,
    pub precision: Precision,
    pub tolerance: f64,
    pub nvars: usize,
    pub coeff_bound: i64,
    pub derivation: Option<Vec<String>>,
}

impl Settings {
    pub fn params(&self, id: &str, default_trials: usize) -> CheckParams {
        let o = self.per_check.get(id).cloned().unwrap_or_default();
        CheckParams {
            trials: o.trials.or(self.trials).unwrap_or(default_trials),
            precision: self.precision,
            tolerance: self.tolerance,
            nvars: o.nvars.unwrap_or(self.nvars),
            coeff_bound: o.coeff_bound.unwrap_or(self.coeff_bound),
            derivation: o.derivation.or_else(|| self.derivation.clone()),
        }
    }

    /// Applies `key = value` lines. Keys are `seed`, `trials`, `precision`,
    /// `tol`, `vars`, `coeff_bound`, `derivation`, or `<check id>.<key>` for
    /// `trials`, `vars`, `coeff_bound` and `derivation`. Derivation images are
    /// separated by `;`. Blank lines and `#` comments are ignored.
    pub fn apply_config(&mut self, text: &str) -> Result<(), VerifyError> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| VerifyError::Config { line: n + 1, message: msg.to_string() };
            let (key, value) = line.split_once('=').ok_or_else(|| bad("expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            let int = |v: &str| v.parse::<i64>().map_err(|_| bad(&format!("{key}: not an integer")));
            let count = |v: &str| v.parse::<usize>().map_err(|_| bad(&format!("{key}: not a count")));
            let images = |v: &str| v.split(';').map(|s| s.trim().to_string()).collect::<Vec<_>>();
            match key.split_once('.') {
                None => match key {
                    "seed" => self.seed = value.parse().map_err(|_| bad("seed: not a u64"))?,
                    "trials" => self.trials = Some(count(value)?),
                    "precision" => self.precision = Precision(value.parse().map_err(|_| bad("precision: not a u32"))?),
                    "tol" => self.tolerance = value.parse().map_err(|_| bad("tol: not a float"))?,
                    "vars" => self.nvars = count(value)?,
                    "coeff_bound" => self.coeff_bound = int(value)?,
                    "derivation" => self.derivation = Some(images(value)),
                    _ => return Err(bad(&format!("unknown key {key:?}"))),
                },
                Some((id, field)) => {
                    let o = self.per_check.entry(id.to_string()).or_default();
                    match field {
                        "trials" => o.trials = Some(count(value)?),
                        "vars" => o.nvars = Some(count(value)?),
                        "coeff_bound" => o.coeff_bound = Some(int(value)?),
                        "derivation" => o.derivation = Some(images(value)),
                        _ => return Err(bad(&format!("unknown per-check key {field:?}"))),
                    }
                }
            }
        }
        Ok(())
    }
}
