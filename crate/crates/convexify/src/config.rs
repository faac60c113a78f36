//! Runtime configuration: tolerances, enumeration budgets, RNG seed, output
//! directory, and the plot toggle. A JSON config file can be supplied via
//! the CONVEXIFY_CONFIG environment variable; CLI flags override it.

use crate::Error;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct Config {
    /// Bracket width target for bisection-based measures (c, gauge d).
    pub bisection_tol: f64,
    /// Tolerance for float comparisons in verifiers and tests.
    pub float_tol: f64,
    /// Subset-enumeration budget for v (number of candidate subsets).
    pub budget: usize,
    /// Cardinality cap for average sets A(k).
    pub cap: usize,
    pub seed: u64,
    pub outdir: String,
    pub plot: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            bisection_tol: 1e-6,
            float_tol: 1e-9,
            budget: 2_000_000,
            cap: 200_000,
            seed: 0,
            outdir: ".".into(),
            plot: false,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<(), Error> {
        if self.bisection_tol <= 0.0 || self.float_tol <= 0.0 {
            return Err(Error::Input("tolerances must be positive".into()));
        }
        if self.budget == 0 || self.cap == 0 {
            return Err(Error::Input("budgets must be positive".into()));
        }
        Ok(())
    }

    /// Loads the file named by CONVEXIFY_CONFIG if set, else the default.
    pub fn from_env() -> Result<Config, Error> {
        match std::env::var("CONVEXIFY_CONFIG") {
            Ok(path) => {
                let text = std::fs::read_to_string(&path)?;
                let cfg: Config = serde_json::from_str(&text)?;
                cfg.validate()?;
                Ok(cfg)
            }
            Err(_) => Ok(Config::default()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        assert!(Config::default().validate().is_ok());
    }

    #[test]
    fn bad_tolerances_rejected() {
        let cfg = Config {
            bisection_tol: 0.0,
            ..Config::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn config_round_trips_json() {
        let cfg = Config {
            seed: 7,
            plot: true,
            ..Config::default()
        };
        let s = serde_json::to_string(&cfg).unwrap();
        let back: Config = serde_json::from_str(&s).unwrap();
        assert_eq!(back.seed, 7);
        assert!(back.plot);
    }
}
