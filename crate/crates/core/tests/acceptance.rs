//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! ```text
//! cargo test -p pinvnet --test acceptance            # everything
//! cargo test -p pinvnet --test acceptance -- xor wbc # criteria whose key matches
//! ```
//!
//! The WBC criteria read `data/breast-cancer-wisconsin.data` at the workspace
//! root, or the path in `PINVNET_WBC_DATA`.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use pinvnet::datasets::{self, MissingPolicy};
use pinvnet::network::neuron_backward;
use pinvnet::presets::ExperimentPreset;
use pinvnet::trainer::{self, history_to_csv};
use pinvnet::{linalg, Activation, Layer, Network, NeuronParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EXPERIMENT_SEEDS: std::ops::Range<u64> = 0..5;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn wbc_path() -> PathBuf {
    std::env::var_os("PINVNET_WBC_DATA").map_or_else(
        || PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/breast-cancer-wisconsin.data"),
        PathBuf::from,
    )
}

// ---------------------------------------------------------------------------
// Pseudoinverse and block corrections
// ---------------------------------------------------------------------------

/// Largest residual over the four Penrose conditions, from explicit products
/// of the 1×m matrix `a` and the m×1 matrix `p`.
fn penrose_residual(a: &[f64], p: &[f64]) -> f64 {
    let m = a.len();
    let aap: f64 = (0..m).map(|i| a[i] * p[i]).sum();
    let mut worst = 0.0_f64;
    for j in 0..m {
        worst = worst.max((aap * a[j] - a[j]).abs());
    }
    for i in 0..m {
        let v: f64 = (0..m).map(|k| p[i] * a[k] * p[k]).sum();
        worst = worst.max((v - p[i]).abs());
    }
    for i in 0..m {
        for j in 0..m {
            worst = worst.max((p[i] * a[j] - p[j] * a[i]).abs());
        }
    }
    worst
}

fn penrose_suite() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let len = rng.random_range(1..=64);
        let row: Vec<f64> = loop {
            let r: Vec<f64> = (0..len).map(|_| rng.random_range(-10.0..=10.0)).collect();
            if r.iter().any(|&v| v != 0.0) {
                break r;
            }
        };
        let p = linalg::row_pseudoinverse(&row).expect("nonzero row");
        worst = worst.max(penrose_residual(&row, &p));
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-9 && elapsed < Duration::from_secs(1),
        format!("1000 rows, max residual {worst:.2e} (tol 1e-9), {elapsed:.2?} (limit 1s)"),
    )
}

fn single_neuron(w: f64, b: f64) -> Network {
    let n = NeuronParams::new(vec![w], vec![b]).unwrap();
    Network::new(1, vec![Layer::new(vec![n], Activation::identity()).unwrap()]).unwrap()
}

fn exact_fit() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut worst = 0.0_f64;
    for _ in 0..10_000 {
        let [c, w, b, t]: [f64; 4] = std::array::from_fn(|_| rng.random_range(-10.0..=10.0));
        let mut net = single_neuron(w, b);
        let (_, trace) = net.forward(&[c]).unwrap();
        net.backward(&trace, &[t], 1.0).unwrap();
        let out = net.predict(&[c]).unwrap()[0];
        worst = worst.max((out - t).abs());
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-9 && elapsed < Duration::from_secs(1),
        format!("10000 neurons, max |out − target| {worst:.2e} (tol 1e-9), {elapsed:.2?} (limit 1s)"),
    )
}

fn block_split() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let (mut worst_sum, mut worst_block) = (0.0_f64, 0.0_f64);
    for _ in 0..1000 {
        let n = rng.random_range(1..=32);
        let draw = |rng: &mut ChaCha8Rng| -> Vec<f64> { (0..n).map(|_| rng.random_range(-10.0..=10.0)).collect() };
        let (w, b, c) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
        let target: f64 = rng.random_range(-10.0..=10.0);
        let params = NeuronParams::new(w, b).unwrap();
        let (updated, _) = neuron_backward(&params, &c, target, 1.0).unwrap();
        let mut sum = 0.0;
        for i in 0..n {
            let block = c[i] * updated.weights()[i] + updated.biases()[i];
            worst_block = worst_block.max((block - target / n as f64).abs());
            sum += block;
        }
        worst_sum = worst_sum.max((sum - target).abs());
    }
    outcome(
        worst_sum <= 1e-9 && worst_block <= 1e-9,
        format!("1000 neurons, max sum error {worst_sum:.2e}, max block error {worst_block:.2e} (tol 1e-9)"),
    )
}

// ---------------------------------------------------------------------------
// Activations
// ---------------------------------------------------------------------------

fn kinds() -> [Activation; 4] {
    [
        Activation::identity(),
        Activation::softplus(),
        Activation::leaky_relu(0.01).unwrap(),
        Activation::tanh(),
    ]
}

fn activation_suites() -> Outcome {
    let mut failures = Vec::new();

    // Round trip on x ∈ [−30, 30], step 1e-3.
    let grid = |lo: f64, hi: f64, step: f64| {
        let n = ((hi - lo) / step).round() as usize;
        (0..=n).map(move |k| lo + k as f64 * step)
    };
    let mut worst_rt = 0.0_f64;
    for act in [Activation::identity(), Activation::leaky_relu(0.01).unwrap(), Activation::softplus()] {
        for x in grid(-30.0, 30.0, 1e-3) {
            let y = act.apply(x);
            if act == Activation::softplus() && y < act.clamp_epsilon() {
                continue;
            }
            let err = (act.invert(y).unwrap() - x).abs();
            worst_rt = worst_rt.max(err);
            if err > 1e-7 {
                failures.push(format!("{act} round trip at x={x}: {err:.2e}"));
                break;
            }
        }
    }

    // Strict monotonicity over sorted random samples.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut xs: Vec<f64> = (0..10_000).map(|_| rng.random_range(-10.0..=10.0)).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    for act in kinds() {
        if let Some(w) = xs.windows(2).find(|w| act.apply(w[0]) >= act.apply(w[1])) {
            failures.push(format!("{act} not increasing between {} and {}", w[0], w[1]));
        }
    }

    // Derivative vs central difference, step 1e-5, relative error ≤ 1e-4.
    let h: f64 = 1e-5;
    let mut worst_fd = 0.0_f64;
    for act in kinds() {
        for x in grid(-10.0, 10.0, 1e-3) {
            if matches!(act.kind(), pinvnet::ActivationKind::LeakyRelu { .. }) && x.abs() < 1e-3 {
                continue;
            }
            let analytic = act.derivative(x);
            let fd = if act == Activation::tanh() && x.abs() > 9.0 {
                // tanh(x+h) − tanh(x−h) = sinh(2h) / (cosh(x+h)·cosh(x−h)),
                // free of the cancellation that swamps the plain f64 quotient.
                (2.0 * h).sinh() / ((x + h).cosh() * (x - h).cosh()) / (2.0 * h)
            } else {
                (act.apply(x + h) - act.apply(x - h)) / (2.0 * h)
            };
            let rel = (analytic - fd).abs() / analytic.abs().max(fd.abs());
            worst_fd = worst_fd.max(rel);
            if rel > 1e-4 {
                failures.push(format!("{act} derivative at x={x}: rel {rel:.2e}"));
                break;
            }
        }
    }

    let detail = format!("round trip max {worst_rt:.2e} (tol 1e-7), derivative max rel {worst_fd:.2e} (tol 1e-4), monotone on 10000 samples");
    if failures.is_empty() {
        outcome(true, detail)
    } else {
        outcome(false, format!("{detail}; {}", failures.join("; ")))
    }
}

// ---------------------------------------------------------------------------
// Gradient-descent baseline
// ---------------------------------------------------------------------------

fn loss(net: &Network, input: &[f64], target: &[f64]) -> f64 {
    let out = net.predict(input).unwrap();
    0.5 * out.iter().zip(target).map(|(o, t)| (o - t).powi(2)).sum::<f64>()
}

/// Copy of `net` with one parameter shifted by `delta`.
fn perturbed(net: &Network, layer: usize, neuron: usize, index: usize, is_bias: bool, delta: f64) -> Network {
    let layers = net
        .layers()
        .iter()
        .enumerate()
        .map(|(li, l)| {
            let neurons = l
                .neurons()
                .iter()
                .enumerate()
                .map(|(ni, n)| {
                    let mut w = n.weights().to_vec();
                    let mut b = n.biases().to_vec();
                    if li == layer && ni == neuron {
                        if is_bias {
                            b[index] += delta;
                        } else {
                            w[index] += delta;
                        }
                    }
                    NeuronParams::new(w, b).unwrap()
                })
                .collect();
            Layer::new(neurons, l.activation()).unwrap()
        })
        .collect();
    Network::new(net.input_dim(), layers).unwrap()
}

fn gd_gradient_check() -> Outcome {
    let h = 1e-5;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut worst = 0.0_f64;
    let mut checked = 0;
    for trial in 0..20 {
        let net = Network::init(&[3, 2], 2, Activation::softplus(), 1000 + trial).unwrap();
        let input: Vec<f64> = (0..2).map(|_| rng.random_range(-2.0..=2.0)).collect();
        let target: Vec<f64> = (0..2).map(|_| rng.random_range(0.0..=1.0)).collect();
        let (_, trace) = net.forward(&input).unwrap();
        let grads = net.gradients(&trace, &target).unwrap();
        for (li, g) in grads.iter().enumerate() {
            for ni in 0..g.weights.len() {
                for i in 0..g.weights[ni].len() {
                    for (is_bias, analytic) in [(false, g.weights[ni][i]), (true, g.biases[ni][i])] {
                        let plus = loss(&perturbed(&net, li, ni, i, is_bias, h), &input, &target);
                        let minus = loss(&perturbed(&net, li, ni, i, is_bias, -h), &input, &target);
                        let fd = (plus - minus) / (2.0 * h);
                        let denom = analytic.abs().max(fd.abs());
                        let rel = if denom == 0.0 { 0.0 } else { (analytic - fd).abs() / denom };
                        worst = worst.max(rel);
                        checked += 1;
                    }
                }
            }
        }
    }
    outcome(
        worst <= 1e-4,
        format!("20 random 2-3-2 softplus nets, {checked} partials, max rel error {worst:.2e} (tol 1e-4)"),
    )
}

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

struct PresetRuns {
    best: Vec<(u64, f64, usize)>,
    elapsed: Duration,
    seed0_history_csv: String,
}

fn run_preset(preset: ExperimentPreset, seed: u64) -> pinvnet::Result<Vec<pinvnet::EpochMetrics>> {
    let wbc = wbc_path();
    let data = preset.dataset(seed, Some(&wbc))?;
    let config = preset.config(seed);
    let split = datasets::split(&data, config.validation_fraction, seed)?;
    Ok(trainer::train(&split, &config)?.history)
}

fn run_seeds(preset: ExperimentPreset) -> pinvnet::Result<PresetRuns> {
    let start = Instant::now();
    let mut best = Vec::new();
    let mut seed0_history_csv = String::new();
    for seed in EXPERIMENT_SEEDS {
        let history = run_preset(preset, seed)?;
        assert_eq!(history.len(), preset.epochs());
        let b = trainer::best_epoch(&history)?;
        best.push((seed, b.val_accuracy, b.epoch));
        if seed == 0 {
            seed0_history_csv = history_to_csv(&history);
        }
    }
    Ok(PresetRuns {
        best,
        elapsed: start.elapsed(),
        seed0_history_csv,
    })
}

fn experiment(runs: &pinvnet::Result<PresetRuns>, threshold: f64, limit: Option<Duration>) -> Outcome {
    let runs = match runs {
        Ok(r) => r,
        Err(e) => return outcome(false, format!("run failed: {e}")),
    };
    let (seed, acc, epoch) = runs
        .best
        .iter()
        .copied()
        .fold((0, f64::NEG_INFINITY, 0), |a, b| if b.1 > a.1 { b } else { a });
    let per_seed: Vec<String> = runs.best.iter().map(|(s, a, _)| format!("{s}:{a:.3}")).collect();
    let in_time = limit.is_none_or(|l| runs.elapsed < l);
    let limit_text = limit.map_or_else(String::new, |l| format!(" (limit {l:.0?})"));
    outcome(
        acc >= threshold && in_time,
        format!(
            "best val_accuracy {acc:.4} (seed {seed}, epoch {epoch}) vs ≥ {threshold}; per seed [{}]; {:.1?}{limit_text}",
            per_seed.join(" "),
            runs.elapsed
        ),
    )
}

fn determinism(all: &BTreeMap<&'static str, pinvnet::Result<PresetRuns>>) -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for preset in ExperimentPreset::ALL {
        let first = match all.get(preset.name()) {
            Some(Ok(r)) => r.seed0_history_csv.clone(),
            _ => match run_preset(preset, 0) {
                Ok(h) => history_to_csv(&h),
                Err(e) => return outcome(false, format!("{preset}: {e}")),
            },
        };
        let second = match run_preset(preset, 0) {
            Ok(h) => history_to_csv(&h),
            Err(e) => return outcome(false, format!("{preset}: {e}")),
        };
        let same = first == second;
        ok &= same;
        notes.push(format!("{preset} {}", if same { "identical" } else { "DIFFERS" }));
    }
    outcome(ok, format!("seed 0 history CSVs: {}", notes.join(", ")))
}

fn loader() -> Outcome {
    let path = wbc_path();
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) => return outcome(false, format!("{}: {e}", path.display())),
    };
    let raw = datasets::parse_wbc_records(&text).map(|r| r.len());
    let data = datasets::parse_wbc(&text, MissingPolicy::DropRow);
    match (raw, data) {
        (Ok(raw), Ok(d)) => {
            let in_range = d.features().iter().flatten().all(|&v| (0.1..=1.0).contains(&v));
            let labels_ok = d.labels().iter().all(|&l| l <= 1);
            outcome(
                raw == 699 && d.len() == 683 && in_range && labels_ok,
                format!("{raw} raw rows (want 699), {} after drop_row (want 683), features in [0.1, 1.0]: {in_range}", d.len()),
            )
        }
        (Err(e), _) | (_, Err(e)) => outcome(false, e.to_string()),
    }
}

fn main() {
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let wanted = |key: &str| filters.is_empty() || filters.iter().any(|f| key.contains(f.as_str()));

    let mut results: Vec<(&str, Outcome)> = Vec::new();
    let mut report = |key: &'static str, out: Outcome| {
        println!("[{}] {key}: {}", if out.passed { "PASS" } else { "FAIL" }, out.detail);
        results.push((key, out));
    };

    if wanted("penrose") {
        report("penrose", penrose_suite());
    }
    if wanted("exact_fit") {
        report("exact_fit", exact_fit());
    }
    if wanted("block_split") {
        report("block_split", block_split());
    }
    if wanted("activations") {
        report("activations", activation_suites());
    }
    if wanted("gd_gradient") {
        report("gd_gradient", gd_gradient_check());
    }

    let mut runs = BTreeMap::new();
    let need_runs = ["xor", "wbc", "spirals_circles", "determinism"].iter().any(|k| wanted(k));
    if need_runs {
        for preset in ExperimentPreset::ALL {
            let key = match preset {
                ExperimentPreset::Spirals | ExperimentPreset::Circles => "spirals_circles",
                ExperimentPreset::Xor => "xor",
                ExperimentPreset::Wbc => "wbc",
            };
            if wanted(key) || wanted("determinism") {
                runs.insert(preset.name(), run_seeds(preset));
            }
        }
    }
    let missing = || Err(pinvnet::Error::InvalidConfig("not run".into()));
    if wanted("xor") {
        let r = runs.remove("xor").unwrap_or_else(missing);
        report("xor", experiment(&r, 0.70, Some(Duration::from_secs(120))));
        runs.insert("xor", r);
    }
    if wanted("wbc") {
        let r = runs.remove("wbc").unwrap_or_else(missing);
        report("wbc", experiment(&r, 0.85, Some(Duration::from_secs(300))));
        runs.insert("wbc", r);
    }
    if wanted("spirals_circles") {
        let s = runs.remove("spirals").unwrap_or_else(missing);
        let c = runs.remove("circles").unwrap_or_else(missing);
        let (so, co) = (experiment(&s, 0.55, None), experiment(&c, 0.55, None));
        report(
            "spirals_circles",
            outcome(so.passed && co.passed, format!("spirals: {}; circles: {}", so.detail, co.detail)),
        );
        runs.insert("spirals", s);
        runs.insert("circles", c);
    }
    if wanted("determinism") {
        report("determinism", determinism(&runs));
    }
    if wanted("loader") {
        report("loader", loader());
    }

    let failed: Vec<&str> = results.iter().filter(|(_, o)| !o.passed).map(|(k, _)| *k).collect();
    println!(
        "\nacceptance: {} passed, {} failed{}",
        results.len() - failed.len(),
        failed.len(),
        if failed.is_empty() { String::new() } else { format!(" ({})", failed.join(", ")) }
    );
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
