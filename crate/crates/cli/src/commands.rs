use std::fs;
use std::path::{Path, PathBuf};

use pinvnet::datasets::{self, Dataset};
use pinvnet::presets::ExperimentPreset;
use pinvnet::trainer::{self, RunSummary, TrainConfig};
use pinvnet::{Activation, Error, Network, TrainerKind};
use serde_json::json;

use crate::plot;

pub const EXIT_INVALID: u8 = 2;
pub const EXIT_IO: u8 = 3;
pub const EXIT_MISMATCH: u8 = 4;
pub const EXIT_NO_INVERSE: u8 = 5;
pub const EXIT_NOT_2D: u8 = 6;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let code = match &err {
            Error::Io { .. } | Error::MalformedRow { .. } | Error::EmptyDataset => EXIT_IO,
            Error::UnsupportedInverse(_) => EXIT_NO_INVERSE,
            Error::DimensionMismatch { .. }
            | Error::ConfigMismatch(_)
            | Error::LabelOutOfRange { .. }
            | Error::LengthMismatch { .. } => EXIT_MISMATCH,
            _ => EXIT_INVALID,
        };
        Self::new(code, err.to_string())
    }
}

type CliResult<T = ()> = Result<T, CliError>;

fn write_file(path: &Path, contents: &str) -> CliResult {
    fs::write(path, contents)
        .map_err(|e| CliError::new(EXIT_IO, format!("{}: {e}", path.display())))
}

pub fn generate(
    name: &str,
    out: Option<PathBuf>,
    seed: u64,
    count: Option<usize>,
    noise: f64,
    inner_factor: f64,
) -> CliResult {
    let data = match name {
        "spirals" => datasets::gen_two_spirals(
            count.unwrap_or(datasets::SPIRAL_POINTS_PER_CLASS),
            noise,
            seed,
        )?,
        "circles" => datasets::gen_circles(
            count.unwrap_or(datasets::CIRCLE_POINTS_PER_CLASS),
            inner_factor,
            noise,
            seed,
        )?,
        "xor" => datasets::gen_xor(count.unwrap_or(datasets::XOR_COUNT), seed)?,
        other => {
            return Err(CliError::new(
                EXIT_INVALID,
                format!("unknown dataset `{other}` (expected spirals, circles or xor)"),
            ))
        }
    };
    let path = out.unwrap_or_else(|| PathBuf::from(format!("{name}.csv")));
    write_file(&path, &data.to_csv())?;
    println!(
        "{}",
        json!({
            "path": path.display().to_string(),
            "rows": data.len(),
            "class_counts": data.class_counts(),
        })
    );
    Ok(())
}

pub struct TrainArgs {
    pub target: String,
    pub data: Option<PathBuf>,
    pub seed: Option<u64>,
    pub out_dir: Option<PathBuf>,
    pub trainer: Option<String>,
    pub activation: Option<String>,
    pub epochs: Option<usize>,
    pub learning_rate: Option<f64>,
}

fn resolve_run(args: &TrainArgs) -> CliResult<(TrainConfig, Dataset, String)> {
    if let Ok(preset) = args.target.parse::<ExperimentPreset>() {
        let seed = args.seed.unwrap_or(0);
        if preset.needs_data_file() && args.data.is_none() {
            return Err(CliError::new(
                EXIT_INVALID,
                "the wbc preset needs --data <breast-cancer-wisconsin.data>",
            ));
        }
        let data = match &args.data {
            Some(path) => datasets::load_dataset(path)?,
            None => preset.dataset(seed, None)?,
        };
        return Ok((preset.config(seed), data, preset.name().to_owned()));
    }

    let path = Path::new(&args.target);
    if !path.is_file() {
        return Err(CliError::new(
            EXIT_INVALID,
            format!("`{}` is neither a preset name nor a config file", args.target),
        ));
    }
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::new(EXIT_IO, format!("{}: {e}", path.display())))?;
    let mut config = TrainConfig::from_json(&text)?;
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    let data_path = args
        .data
        .as_ref()
        .ok_or_else(|| CliError::new(EXIT_INVALID, "a config-file run needs --data <file>"))?;
    let data = datasets::load_dataset(data_path)?;
    let name = path
        .file_stem()
        .map_or_else(|| "run".to_owned(), |s| s.to_string_lossy().into_owned());
    Ok((config, data, name))
}

pub fn train(args: TrainArgs) -> CliResult {
    let (mut config, data, name) = resolve_run(&args)?;
    if let Some(kind) = &args.trainer {
        config.trainer_kind = kind.parse::<TrainerKind>()?;
    }
    if let Some(act) = &args.activation {
        config.activation = act.parse::<Activation>()?;
    }
    if let Some(epochs) = args.epochs {
        config.epochs = epochs;
    }
    if let Some(lr) = args.learning_rate {
        config.learning_rate = lr;
    }
    config.validate()?;

    let split = datasets::split(&data, config.validation_fraction, config.seed)?;
    let run = trainer::train(&split, &config)?;
    let summary = RunSummary::from_history(&run.history, &config)?;

    let out_dir = args
        .out_dir
        .unwrap_or_else(|| PathBuf::from("runs").join(&name));
    fs::create_dir_all(&out_dir)
        .map_err(|e| CliError::new(EXIT_IO, format!("{}: {e}", out_dir.display())))?;
    write_file(&out_dir.join("model.json"), &run.network.to_json())?;
    write_file(&out_dir.join("history.csv"), &trainer::history_to_csv(&run.history))?;
    let summary_json = serde_json::to_string_pretty(&summary).expect("summary serializes");
    write_file(&out_dir.join("summary.json"), &summary_json)?;
    write_file(&out_dir.join("train.csv"), &split.train.to_csv())?;
    write_file(&out_dir.join("validation.csv"), &split.validation.to_csv())?;

    eprintln!(
        "{name}: {} epochs, best val_accuracy {:.4} at epoch {}, wrote {}",
        config.epochs,
        summary.best.val_accuracy,
        summary.best.epoch,
        out_dir.display()
    );
    println!("{summary_json}");
    Ok(())
}

/// Loads a dataset and widens its class count to what the model predicts.
fn dataset_for_model(net: &Network, path: &Path) -> CliResult<Dataset> {
    let data = datasets::load_dataset(path)?;
    let classes = match net.output_dim() {
        1 => 2,
        n => n,
    };
    if data.class_count() > classes {
        return Err(CliError::new(
            EXIT_MISMATCH,
            format!(
                "dataset has {} classes but the model predicts {classes}",
                data.class_count()
            ),
        ));
    }
    Ok(data.with_class_count(classes)?)
}

pub fn eval(model: &Path, dataset: &Path) -> CliResult {
    let net = Network::load(model)?;
    let data = dataset_for_model(&net, dataset)?;
    let e = trainer::evaluate(&net, &data)?;
    println!("{}", json!({ "mse": e.mse, "accuracy": e.accuracy }));
    Ok(())
}

pub fn plot(model: &Path, dataset: &Path, out: Option<PathBuf>, grid_steps: usize) -> CliResult {
    let net = Network::load(model)?;
    let data = dataset_for_model(&net, dataset)?;
    if data.dim() != 2 || net.input_dim() != 2 {
        return Err(CliError::new(
            EXIT_NOT_2D,
            format!(
                "plot needs 2-D features (dataset has {}, model expects {})",
                data.dim(),
                net.input_dim()
            ),
        ));
    }
    if grid_steps == 0 {
        return Err(CliError::new(EXIT_INVALID, "--grid-steps must be positive"));
    }
    let svg_path = out.unwrap_or_else(|| PathBuf::from("plot.svg"));
    let grid_path = svg_path.with_extension("grid.csv");

    let bounds = plot::Bounds::around(data.features());
    let grid = plot::predict_grid(&net, bounds, grid_steps)?;
    write_file(&grid_path, &plot::grid_csv(&grid))?;
    write_file(&svg_path, &plot::render_svg(&net, &data, bounds, &grid)?)?;
    println!(
        "{}",
        json!({
            "svg": svg_path.display().to_string(),
            "grid": grid_path.display().to_string(),
            "grid_rows": grid.len(),
        })
    );
    Ok(())
}
