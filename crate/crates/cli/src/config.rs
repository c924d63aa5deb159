//! Experiment configuration: a JSON file whose fields can be overridden by
//! command-line flags.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::Value;
use szego_core::measures::MeasureSpec;
use szego_core::sof::SofMode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Moments,
    Schur,
    Rule,
    Zeros,
    Interlace,
    Fsequence,
    Support,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Moments => "moments",
            Task::Schur => "schur",
            Task::Rule => "rule",
            Task::Zeros => "zeros",
            Task::Interlace => "interlace",
            Task::Fsequence => "fsequence",
            Task::Support => "support",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    F1,
    F2,
    Combo,
}

/// Raw file contents; every field is optional until the task is known.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub task: Option<Task>,
    pub measure: Option<Value>,
    pub n: Option<usize>,
    pub n_max: Option<usize>,
    pub n_min: Option<usize>,
    pub anchor_angles: Option<Vec<f64>>,
    pub omega0: Option<f64>,
    pub epsilon: Option<f64>,
    pub family: Option<Family>,
    pub a1: Option<f64>,
    pub a2: Option<f64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

/// Flag values that take precedence over the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub n: Option<usize>,
    pub n_max: Option<usize>,
    pub n_min: Option<usize>,
    pub anchor_angles: Vec<f64>,
    pub omega0: Option<f64>,
    pub epsilon: Option<f64>,
    pub family: Option<Family>,
    pub a1: Option<f64>,
    pub a2: Option<f64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

/// A configuration problem, reported with exit code 2.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfigError {
    pub code: &'static str,
    pub message: String,
}

impl ConfigError {
    pub fn new(code: &'static str, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    fn field(name: &str, problem: impl fmt::Display) -> Self {
        Self::new("invalid_field", format!("field `{name}`: {problem}"))
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// Fully resolved parameters of one run.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub task: Task,
    pub measure: MeasureSpec,
    pub n: Option<usize>,
    pub n_max: Option<usize>,
    pub n_min: Option<usize>,
    pub anchor_angles: Vec<f64>,
    pub omega0: f64,
    pub epsilon: Option<f64>,
    pub family: Family,
    pub a1: Option<f64>,
    pub a2: Option<f64>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

pub fn read_file(path: &Path) -> Result<FileConfig, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError::new("io", format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        ConfigError::new(
            "parse",
            format!("{}: line {} column {}: {e}", path.display(), e.line(), e.column()),
        )
    })
}

/// Parses the `measure` entry: an inline object or a path to a JSON file,
/// resolved relative to `base`.
pub fn parse_measure(value: Option<&Value>, base: &Path) -> Result<MeasureSpec, ConfigError> {
    let spec: MeasureSpec = match value {
        None => MeasureSpec::Lebesgue,
        Some(Value::String(p)) => {
            let path = base.join(p);
            let text = std::fs::read_to_string(&path)
                .map_err(|e| ConfigError::new("io", format!("cannot read measure {}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| {
                ConfigError::new(
                    "parse",
                    format!("{}: line {} column {}: {e}", path.display(), e.line(), e.column()),
                )
            })?
        }
        Some(v) => serde_json::from_value(v.clone()).map_err(|e| ConfigError::field("measure", e))?,
    };
    spec.validate().map_err(|e| ConfigError::field("measure", e))?;
    Ok(spec)
}

impl ExperimentConfig {
    /// Merges file and flags, then checks that `task` has what it needs.
    pub fn resolve(task: Task, file: FileConfig, base: &Path, flags: Overrides) -> Result<Self, ConfigError> {
        if let Some(t) = file.task {
            if t != task {
                return Err(ConfigError::new(
                    "task_mismatch",
                    format!("config is for task `{}`, not `{}`", t.name(), task.name()),
                ));
            }
        }
        let measure = parse_measure(file.measure.as_ref(), base)?;
        let cfg = Self {
            task,
            measure,
            n: flags.n.or(file.n),
            n_max: flags.n_max.or(file.n_max),
            n_min: flags.n_min.or(file.n_min),
            anchor_angles: if flags.anchor_angles.is_empty() {
                file.anchor_angles.unwrap_or_default()
            } else {
                flags.anchor_angles
            },
            omega0: flags.omega0.or(file.omega0).unwrap_or(0.0),
            epsilon: flags.epsilon.or(file.epsilon),
            family: flags.family.or(file.family).unwrap_or_else(|| {
                if flags.a1.or(file.a1).is_some() || flags.a2.or(file.a2).is_some() {
                    Family::Combo
                } else {
                    Family::F1
                }
            }),
            a1: flags.a1.or(file.a1),
            a2: flags.a2.or(file.a2),
            format: flags.format.or(file.format).unwrap_or_default(),
            out: flags.out.or(file.out),
        };
        cfg.check()?;
        Ok(cfg)
    }

    fn require<T: Copy>(name: &str, v: Option<T>, task: Task) -> Result<T, ConfigError> {
        v.ok_or_else(|| ConfigError::new("missing_field", format!("field `{name}`: required for task `{}`", task.name())))
    }

    fn check(&self) -> Result<(), ConfigError> {
        let t = self.task;
        match t {
            Task::Moments | Task::Schur | Task::Rule | Task::Fsequence => {
                let n = Self::require("n", self.n, t)?;
                if n == 0 {
                    return Err(ConfigError::field("n", "must be at least 1"));
                }
            }
            Task::Zeros | Task::Interlace => {
                if self.n.is_none() {
                    Self::require("n_max", self.n_max, t)?;
                }
            }
            Task::Support => {
                Self::require("n_max", self.n_max, t)?;
                let eps = Self::require("epsilon", self.epsilon, t)?;
                if !(eps > 0.0 && eps.is_finite()) {
                    return Err(ConfigError::field("epsilon", "must be positive"));
                }
                if self.anchor_angles.is_empty() {
                    return Err(ConfigError::new(
                        "missing_field",
                        "field `anchor_angles`: required for task `support`",
                    ));
                }
            }
        }
        if let (Some(lo), Some(hi)) = (self.n_min, self.top_order()) {
            if lo > hi {
                return Err(ConfigError::field("n_min", format!("{lo} exceeds the top order {hi}")));
            }
        }
        if !self.omega0.is_finite() {
            return Err(ConfigError::field("omega0", "must be finite"));
        }
        if let Some(bad) = self.anchor_angles.iter().find(|a| !a.is_finite()) {
            return Err(ConfigError::field("anchor_angles", format!("{bad} is not finite")));
        }
        if self.family == Family::Combo {
            let (a1, a2) = (self.a1.unwrap_or(0.0), self.a2.unwrap_or(0.0));
            if a1 == 0.0 && a2 == 0.0 {
                return Err(ConfigError::field("a1", "a1 and a2 must not both vanish for the combo family"));
            }
        }
        Ok(())
    }

    /// Highest order the task touches.
    pub fn top_order(&self) -> Option<usize> {
        match self.task {
            Task::Zeros | Task::Interlace | Task::Support => self.n_max.or(self.n),
            _ => self.n,
        }
    }

    /// Anchor used by single-anchor tasks: the first listed angle, else `omega0`.
    pub fn anchor(&self) -> f64 {
        self.anchor_angles.first().copied().unwrap_or(self.omega0)
    }

    pub fn mode(&self) -> SofMode {
        match self.family {
            Family::F1 => SofMode::F1,
            Family::F2 => SofMode::F2,
            Family::Combo => SofMode::Combo {
                a1: self.a1.unwrap_or(0.0),
                a2: self.a2.unwrap_or(0.0),
            },
        }
    }
}
