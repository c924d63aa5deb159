mod config;
mod tasks;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use config::{ConfigError, ExperimentConfig, Family, FileConfig, Format, Overrides, Task};

/// Szegő quadrature, semi-orthogonal functions and support estimation on
/// the unit circle.
#[derive(Parser, Debug)]
#[command(name = "szego", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Trigonometric moments c_0..c_n.
    Moments(Common),
    /// Schur parameters a_1..a_n.
    Schur(Common),
    /// n-point Szegő rule whose nodes include the anchor.
    Rule(Common),
    /// Zeros of a SOF family for each order.
    Zeros(Common),
    /// Interlacing of consecutive members of a SOF family.
    Interlace(Common),
    /// Quadrature nodes and weights from the F-sequence.
    Fsequence(Common),
    /// Support estimate from anchored zero accumulation.
    Support(Common),
    /// Check a config file without running it.
    Validate {
        #[arg(long, value_name = "PATH")]
        config: Option<PathBuf>,
        #[arg(value_name = "PATH", conflicts_with = "config")]
        path: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Default)]
struct Common {
    /// JSON experiment config.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Write the artifact here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    n_min: Option<usize>,
    /// Anchor angle in radians; repeat for several anchors.
    #[arg(long = "anchor-angle", value_name = "ANGLE", allow_negative_numbers = true)]
    anchor_angle: Vec<f64>,
    #[arg(long, allow_negative_numbers = true)]
    omega0: Option<f64>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long, value_enum)]
    family: Option<Family>,
    #[arg(long, allow_negative_numbers = true)]
    a1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    a2: Option<f64>,
}

impl Common {
    fn split(self) -> (Option<PathBuf>, Overrides) {
        (
            self.config,
            Overrides {
                n: self.n,
                n_max: self.n_max,
                n_min: self.n_min,
                anchor_angles: self.anchor_angle,
                omega0: self.omega0,
                epsilon: self.epsilon,
                family: self.family,
                a1: self.a1,
                a2: self.a2,
                format: self.format,
                out: self.out,
            },
        )
    }
}

enum Failure {
    Config(ConfigError),
    Numerical(szego_core::Error),
}

impl Failure {
    fn exit(&self) -> ExitCode {
        let (code, message, status) = match self {
            Failure::Config(e) => (e.code, e.message.clone(), 2),
            Failure::Numerical(e) => (e.code(), e.to_string(), 3),
        };
        let body = serde_json::json!({ "error": { "code": code, "message": message } });
        eprintln!("{body}");
        ExitCode::from(status)
    }
}

impl From<szego_core::Error> for Failure {
    fn from(e: szego_core::Error) -> Self {
        match e {
            szego_core::Error::InvalidMeasure(_) | szego_core::Error::InvalidFamily(_) => {
                Failure::Config(ConfigError::new(e.code(), e.to_string()))
            }
            other => Failure::Numerical(other),
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e)
    }
}

fn load(path: Option<&Path>) -> Result<(FileConfig, PathBuf), ConfigError> {
    match path {
        None => Ok((FileConfig::default(), PathBuf::from("."))),
        Some(p) => {
            let base = p.parent().map(Path::to_path_buf).unwrap_or_default();
            Ok((config::read_file(p)?, base))
        }
    }
}

fn configure_threads() -> Result<(), ConfigError> {
    let Ok(raw) = std::env::var("SZEGO_QUAD_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| ConfigError::new("invalid_env", format!("SZEGO_QUAD_THREADS must be a count, got {raw:?}")))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| ConfigError::new("invalid_env", e.to_string()))?;
    }
    Ok(())
}

fn execute(task: Task, common: Common) -> Result<(), Failure> {
    configure_threads()?;
    let (path, flags) = common.split();
    let (file, base) = load(path.as_deref())?;
    let cfg = ExperimentConfig::resolve(task, file, &base, flags)?;
    let artifact = tasks::run(&cfg)?;
    match &cfg.out {
        Some(out) => std::fs::write(out, artifact)
            .map_err(|e| ConfigError::new("io", format!("cannot write {}: {e}", out.display())))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(artifact.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| ConfigError::new("io", e.to_string()))?;
        }
    }
    Ok(())
}

fn validate(path: &Path) -> Result<(), Failure> {
    let (file, base) = load(Some(path))?;
    let task = file
        .task
        .ok_or_else(|| ConfigError::new("missing_field", "field `task`: required to validate a config"))?;
    ExperimentConfig::resolve(task, file, &base, Overrides::default())?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Moments(c) => execute(Task::Moments, c),
        Command::Schur(c) => execute(Task::Schur, c),
        Command::Rule(c) => execute(Task::Rule, c),
        Command::Zeros(c) => execute(Task::Zeros, c),
        Command::Interlace(c) => execute(Task::Interlace, c),
        Command::Fsequence(c) => execute(Task::Fsequence, c),
        Command::Support(c) => execute(Task::Support, c),
        Command::Validate { config, path } => match config.or(path) {
            Some(p) => validate(&p).map(|_| println!("ok")),
            None => Err(Failure::Config(ConfigError::new("missing_field", "a config path is required"))),
        },
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.exit(),
    }
}
