//! Run configuration: a TOML file plus command-line overrides, resolved into a fully
//! defaulted [`RunConfig`].

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::decision::TopsisWeights;
use crate::objectives::OperatorNorm;
use crate::optimizer::MomdwaParams;
use crate::quantum::{build_q1_with, build_q2_with, build_q3_with, Q1Params, Q2Params, Q3Params};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemName {
    Q1,
    Q2,
    Q3,
    Schaffer,
    Fonseca,
}

impl ProblemName {
    pub fn as_str(self) -> &'static str {
        match self {
            ProblemName::Q1 => "q1",
            ProblemName::Q2 => "q2",
            ProblemName::Q3 => "q3",
            ProblemName::Schaffer => "schaffer",
            ProblemName::Fonseca => "fonseca",
        }
    }

    pub fn is_quantum(self) -> bool {
        matches!(self, ProblemName::Q1 | ProblemName::Q2 | ProblemName::Q3)
    }
}

impl fmt::Display for ProblemName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProblemName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q1" => Ok(ProblemName::Q1),
            "q2" => Ok(ProblemName::Q2),
            "q3" => Ok(ProblemName::Q3),
            "schaffer" => Ok(ProblemName::Schaffer),
            "fonseca" => Ok(ProblemName::Fonseca),
            other => Err(Error::Config(format!(
                "problem: unknown problem `{other}` (expected q1, q2, q3, schaffer or fonseca)"
            ))),
        }
    }
}

/// A problem together with its resolved physical constants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemSetup {
    Q1(Q1Params),
    Q2(Q2Params),
    Q3(Q3Params),
    Schaffer,
    Fonseca,
}

impl ProblemSetup {
    pub fn name(&self) -> ProblemName {
        match self {
            ProblemSetup::Q1(_) => ProblemName::Q1,
            ProblemSetup::Q2(_) => ProblemName::Q2,
            ProblemSetup::Q3(_) => ProblemName::Q3,
            ProblemSetup::Schaffer => ProblemName::Schaffer,
            ProblemSetup::Fonseca => ProblemName::Fonseca,
        }
    }
}

/// The on-disk configuration document. Every key is optional; unknown keys are rejected.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub problem: Option<ProblemName>,
    pub objectives: Option<usize>,
    pub seed: Option<u64>,
    pub alpha: Option<usize>,
    pub epsilon_fidelity: Option<f64>,
    pub topsis_weights: Option<Vec<f64>>,
    pub operator_norm: Option<OperatorNorm>,
    pub renormalize: Option<bool>,
    pub output_dir: Option<PathBuf>,
    pub optimizer: Option<MomdwaParams>,
    /// Problem-specific constants; checked against the chosen problem during resolution.
    pub physics: Option<toml::Table>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub problem: Option<ProblemName>,
    pub objectives: Option<usize>,
    pub seed: Option<u64>,
    pub output_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub problem: ProblemSetup,
    pub objectives: usize,
    pub seed: u64,
    pub optimizer: MomdwaParams,
    /// Fine points per coarse control interval.
    pub alpha: usize,
    pub epsilon_fidelity: f64,
    pub topsis_weights: TopsisWeights,
    pub operator_norm: OperatorNorm,
    pub renormalize: bool,
    /// Where the run writes its files; not part of the echoed configuration.
    #[serde(skip)]
    pub output_dir: PathBuf,
}

impl RunConfig {
    pub fn resolve(file: ConfigFile, overrides: &Overrides) -> Result<Self> {
        let name = overrides.problem.or(file.problem).ok_or_else(|| {
            Error::Config("problem: missing (set it in the file or pass --problem)".into())
        })?;
        let seed = overrides
            .seed
            .or(file.seed)
            .ok_or_else(|| Error::Config("seed: missing; runs must be seeded explicitly".into()))?;
        let objectives = overrides.objectives.or(file.objectives).unwrap_or(2);
        let valid_objectives: &[usize] = if name.is_quantum() { &[2, 3] } else { &[2] };
        if !valid_objectives.contains(&objectives) {
            return Err(Error::Config(format!(
                "objectives: {name} supports {valid_objectives:?}, got {objectives}"
            )));
        }

        let alpha = file.alpha.unwrap_or(30);
        if alpha == 0 {
            return Err(Error::Config("alpha: must be at least 1".into()));
        }
        let epsilon_fidelity = file.epsilon_fidelity.unwrap_or(0.995);
        if !(0.0..=1.0).contains(&epsilon_fidelity) {
            return Err(Error::Config(format!(
                "epsilon_fidelity: must lie in [0, 1], got {epsilon_fidelity}"
            )));
        }

        let topsis_weights = match file.topsis_weights {
            Some(w) => {
                if w.len() != objectives {
                    return Err(Error::Config(format!(
                        "topsis_weights: {} weights given for {objectives} objectives",
                        w.len()
                    )));
                }
                TopsisWeights::new(w).map_err(|e| Error::Config(format!("topsis_weights: {e}")))?
            }
            None if name.is_quantum() => TopsisWeights::default_for(objectives)?,
            None => TopsisWeights::new(vec![0.5, 0.5])?,
        };

        let optimizer = file.optimizer.unwrap_or_default();
        optimizer.validate()?;

        let problem = resolve_physics(name, file.physics)?;
        let output_dir = overrides
            .output_dir
            .clone()
            .or(file.output_dir)
            .unwrap_or_else(|| PathBuf::from(format!("runs/{name}-k{objectives}-seed{seed}")));

        Ok(Self {
            problem,
            objectives,
            seed,
            optimizer,
            alpha,
            epsilon_fidelity,
            topsis_weights,
            operator_norm: file.operator_norm.unwrap_or_default(),
            renormalize: file.renormalize.unwrap_or(false),
            output_dir,
        })
    }
}

fn resolve_physics(name: ProblemName, physics: Option<toml::Table>) -> Result<ProblemSetup> {
    let table = physics.unwrap_or_default();
    fn parse<T: serde::de::DeserializeOwned>(name: ProblemName, table: toml::Table) -> Result<T> {
        table
            .try_into()
            .map_err(|e| Error::Config(format!("physics ({name}): {}", e.to_string().trim_end())))
    }
    let setup = match name {
        ProblemName::Q1 => {
            let p: Q1Params = parse(name, table)?;
            build_q1_with(&p)?;
            ProblemSetup::Q1(p)
        }
        ProblemName::Q2 => {
            let p: Q2Params = parse(name, table)?;
            build_q2_with(&p)?;
            ProblemSetup::Q2(p)
        }
        ProblemName::Q3 => {
            let p: Q3Params = parse(name, table)?;
            build_q3_with(&p)?;
            ProblemSetup::Q3(p)
        }
        ProblemName::Schaffer | ProblemName::Fonseca => {
            if let Some(key) = table.keys().next() {
                return Err(Error::Config(format!(
                    "physics.{key}: {name} has no physical constants"
                )));
            }
            if name == ProblemName::Schaffer {
                ProblemSetup::Schaffer
            } else {
                ProblemSetup::Fonseca
            }
        }
    };
    Ok(setup)
}

/// Reads `path` (if any), applies `overrides`, and resolves every default.
pub fn load_config(path: Option<&Path>, overrides: &Overrides) -> Result<RunConfig> {
    let file = match path {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    RunConfig::resolve(file, overrides)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn resolve(text: &str, overrides: Overrides) -> Result<RunConfig> {
        RunConfig::resolve(ConfigFile::parse(text)?, &overrides)
    }

    fn q1_seeded() -> Overrides {
        Overrides {
            problem: Some(ProblemName::Q1),
            seed: Some(7),
            ..Overrides::default()
        }
    }

    fn config_message(r: Result<RunConfig>) -> String {
        match r {
            Err(Error::Config(msg)) => msg,
            other => panic!("expected a configuration error, got {other:?}"),
        }
    }

    #[test]
    fn empty_file_gives_documented_defaults() {
        let c = resolve("", q1_seeded()).unwrap();
        assert_eq!(c.optimizer.population_size, 100);
        assert_eq!(c.optimizer.repository_capacity, 100);
        assert_eq!(c.optimizer.max_generations, 500);
        assert_eq!(c.alpha, 30);
        assert_eq!(c.epsilon_fidelity, 0.995);
        assert_eq!(c.topsis_weights.as_slice(), &[0.7, 0.3]);
        assert_eq!(c.problem, ProblemSetup::Q1(Q1Params::default()));
        let q1 = build_q1_with(&Q1Params::default()).unwrap();
        assert_eq!(q1.search_dim(), 40);
    }

    #[test]
    fn three_objectives_default_weights() {
        let c = resolve("objectives = 3", q1_seeded()).unwrap();
        assert_eq!(c.topsis_weights.as_slice(), &[0.6, 0.2, 0.2]);
    }

    #[test]
    fn weight_count_must_match() {
        let msg = config_message(resolve(
            "objectives = 3\ntopsis_weights = [0.5, 0.5]",
            q1_seeded(),
        ));
        assert!(msg.contains("topsis_weights"), "{msg}");
    }

    #[test]
    fn seed_is_mandatory() {
        let o = Overrides {
            problem: Some(ProblemName::Q2),
            ..Overrides::default()
        };
        assert!(config_message(resolve("", o)).contains("seed"));
    }

    #[test]
    fn unknown_keys_are_named() {
        let msg = config_message(resolve("sead = 3", q1_seeded()));
        assert!(msg.contains("sead"), "{msg}");
        let msg = config_message(resolve("[optimizer]\npopulaton_size = 3", q1_seeded()));
        assert!(msg.contains("populaton_size"), "{msg}");
        let msg = config_message(resolve(
            "[physics]\ntheta = [1.0, 1.0, 1.0, 1.0, 1.0]",
            q1_seeded(),
        ));
        assert!(msg.contains("theta"), "{msg}");
    }

    #[test]
    fn overrides_win() {
        let o = Overrides {
            problem: Some(ProblemName::Q2),
            objectives: Some(3),
            seed: Some(11),
            output_dir: Some("elsewhere".into()),
        };
        let c = resolve(
            "problem = \"q1\"\nseed = 1\nobjectives = 2\noutput_dir = \"x\"",
            o,
        )
        .unwrap();
        assert_eq!(c.problem.name(), ProblemName::Q2);
        assert_eq!((c.objectives, c.seed), (3, 11));
        assert_eq!(c.output_dir, PathBuf::from("elsewhere"));
    }

    #[test]
    fn physics_overrides_apply() {
        let text = "problem = \"q3\"\nseed = 1\n[physics]\nnu1 = 0.3\ntotal_time = 2.0";
        let c = resolve(text, Overrides::default()).unwrap();
        match c.problem {
            ProblemSetup::Q3(p) => {
                assert_eq!(p.nu1, 0.3);
                assert_eq!(p.total_time, 2.0);
                assert_eq!(p.nu2, 0.1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn invalid_values_rejected() {
        for text in [
            "alpha = 0",
            "epsilon_fidelity = 1.5",
            "topsis_weights = [1.0, -1.0]",
            "objectives = 4",
            "[optimizer]\nthreshold = 0.0",
            "[physics]\ncontrol_bound = -1.0",
        ] {
            assert!(resolve(text, q1_seeded()).is_err(), "{text}");
        }
        let o = Overrides {
            problem: Some(ProblemName::Schaffer),
            seed: Some(1),
            ..Overrides::default()
        };
        assert!(resolve("objectives = 3", o.clone()).is_err());
        assert!(config_message(resolve("[physics]\ntotal_time = 1.0", o))
            .contains("physics.total_time"));
        assert!("q4".parse::<ProblemName>().is_err());
    }

    #[test]
    fn benchmark_defaults() {
        let o = Overrides {
            problem: Some(ProblemName::Fonseca),
            seed: Some(1),
            ..Overrides::default()
        };
        let c = resolve("", o).unwrap();
        assert_eq!(c.problem, ProblemSetup::Fonseca);
        assert_eq!(c.topsis_weights.as_slice(), &[0.5, 0.5]);
    }

    #[test]
    fn echo_round_trips_through_json() {
        let c = resolve("objectives = 3\n[physics]\nepsilon = 0.2", q1_seeded()).unwrap();
        let json = serde_json::to_string(&c).unwrap();
        let back: RunConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(back.problem, c.problem);
        assert_eq!(back.optimizer, c.optimizer);
        assert_eq!(back.topsis_weights, c.topsis_weights);
    }
}
