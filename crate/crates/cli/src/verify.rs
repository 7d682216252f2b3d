//! Aggregated invariant suites behind the `verify` subcommand. Each suite
//! sweeps one exact identity or certified inequality over a seeded family
//! and reduces to a worst-witness report; the subcommand exits nonzero as
//! soon as any suite's slack dips below the tolerance.

use anyhow::{bail, Result};
use rayon::prelude::*;
use serde::Serialize;

use indicatrix::rational::{rat, rat_int, to_f64};
use indicatrix::{
    clipped_length_bound, dilate, fat_cantor_complement, fat_cantor_envelope, gauge_decay_bound,
    gauge_sum, jensen_bound, mask_subset, pierpont, random_open_set, random_pl_function,
    rate_implication_check, tent_train, BoundReport, CircleOpenSet, FatCantorSpec, GaugeFunction,
    LengthFamily, Rational, RateVariant, Shape, Witness,
};

pub const SUITES: [&str; 9] = [
    "sharp", "clipped", "collar", "banach", "jensen", "decay", "envelope", "rates", "planar",
];

/// One suite's reduced outcome: headline numbers from the worst sample.
#[derive(Debug, Serialize)]
pub struct SuiteOutcome {
    pub suite: String,
    pub passed: bool,
    pub samples: usize,
    pub quantity: f64,
    pub bound: f64,
    pub slack: f64,
    pub witnesses: Vec<Witness>,
}

pub fn run(suite: &str, trials: u64, seed: u64, tolerance: f64) -> Result<Vec<SuiteOutcome>> {
    if !(tolerance > 0.0) {
        bail!("tolerance must be positive, got {tolerance}");
    }
    let names: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&suite) {
        vec![suite]
    } else {
        bail!("unknown suite {suite:?}; available: all, {}", SUITES.join(", "));
    };
    names
        .into_iter()
        .map(|name| {
            let samples = samples_for(name, trials, seed)?;
            let count = samples.len();
            let report = BoundReport::from_samples(samples);
            Ok(SuiteOutcome {
                suite: name.to_string(),
                passed: report.passes(tolerance),
                samples: count,
                quantity: report.quantity,
                bound: report.bound,
                slack: report.slack,
                witnesses: report.witnesses,
            })
        })
        .collect()
}

type Sample = (String, f64, f64);

fn samples_for(name: &str, trials: u64, seed: u64) -> Result<Vec<Sample>> {
    match name {
        "sharp" => Ok(par_sweep(trials, |t| sharp_trial(seed, t))),
        "clipped" => Ok(par_sweep(trials, |t| clipped_trial(seed, t))),
        "collar" => Ok(par_sweep(trials, |t| collar_trial(seed, t))),
        "banach" => Ok(par_sweep(trials, |t| banach_trial(seed, t))),
        "jensen" => par_try_sweep(trials, |t| jensen_trial(seed, t)),
        "decay" => par_try_sweep(trials, |t| decay_trial(seed, t)),
        "envelope" => envelope_samples(),
        "rates" => rates_samples(),
        "planar" => planar_samples(),
        other => bail!("unknown suite {other:?}"),
    }
}

fn par_sweep(trials: u64, f: impl Fn(u64) -> Vec<Sample> + Send + Sync) -> Vec<Sample> {
    (0..trials)
        .into_par_iter()
        .map(f)
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn par_try_sweep(
    trials: u64,
    f: impl Fn(u64) -> Result<Vec<Sample>> + Send + Sync,
) -> Result<Vec<Sample>> {
    let nested: Vec<Vec<Sample>> = (0..trials)
        .into_par_iter()
        .map(f)
        .collect::<Result<Vec<_>>>()?;
    Ok(nested.into_iter().flatten().collect())
}

fn trial_set(seed: u64, t: u64, max_arcs: u64, denom: u64) -> CircleOpenSet {
    random_open_set(1 + (t % max_arcs) as u32, denom, seed.wrapping_add(t)).unwrap()
}

/// Exact sharpness: below the smallest length or gap, incidence is exactly
/// `2hN`; the sample records the absolute defect against a zero bound.
fn sharp_trial(seed: u64, t: u64) -> Vec<Sample> {
    let e = trial_set(seed, t, 6, 256);
    let arcs = e.arcs();
    let mut min = arcs[0].length().clone();
    for a in arcs {
        min = min.min(a.length().clone());
    }
    for i in 0..arcs.len() {
        let gap = if i + 1 < arcs.len() {
            arcs[i + 1].start() - &arcs[i].end()
        } else {
            arcs[0].start() + rat(1, 1) - arcs[i].end()
        };
        min = min.min(gap);
    }
    let n = rat_int(e.count() as i64);
    [rat(1, 2), rat(3, 4)]
        .into_iter()
        .map(|frac| {
            let h = &min * &frac;
            let defect = to_f64(&(e.tau(&h) - rat_int(2) * &h * &n)).abs();
            (format!("trial {t}, h = separation * {frac}"), defect, 0.0)
        })
        .collect()
}

fn clipped_trial(seed: u64, t: u64) -> Vec<Sample> {
    let e = trial_set(seed, t, 8, 4096);
    [rat(1, 512), rat(3, 256), rat(1, 16), rat(1, 5), rat(1, 2)]
        .into_iter()
        .map(|h| {
            let tau = to_f64(&e.tau(&h));
            let bound = to_f64(&clipped_length_bound(&e, &h));
            (format!("trial {t}, h = {h}"), tau, bound)
        })
        .collect()
}

fn collar_trial(seed: u64, t: u64) -> Vec<Sample> {
    let e = trial_set(seed, t, 8, 1024);
    [rat(1, 128), rat(1, 32), rat(1, 4)]
        .into_iter()
        .map(|h| {
            let tau = to_f64(&e.tau(&h));
            let collar = 2.0 * to_f64(&e.inner_collar(&h).unwrap());
            (format!("trial {t}, h = {h}"), tau, collar)
        })
        .collect()
}

/// Exact identity between the level integral of the crossing count and the
/// total variation, reported as an absolute defect against zero.
fn banach_trial(seed: u64, t: u64) -> Vec<Sample> {
    let f = random_pl_function(2 + (t % 19) as u32, 64, seed.wrapping_add(t)).unwrap();
    let defect = to_f64(&(f.indicatrix_integral() - f.total_variation())).abs();
    vec![(format!("trial {t}"), defect, 0.0)]
}

fn standard_gauges() -> Vec<GaugeFunction> {
    vec![
        GaugeFunction::constant(),
        GaugeFunction::power(0.5).unwrap(),
        GaugeFunction::logpow(1.0).unwrap(),
        GaugeFunction::mixed(0.3, 0.5, 1.0).unwrap(),
        GaugeFunction::reciprocal(),
    ]
}

fn jensen_trial(seed: u64, t: u64) -> Result<Vec<Sample>> {
    let e = trial_set(seed, t, 6, 128);
    let family = LengthFamily::from_set(&e);
    standard_gauges()
        .iter()
        .map(|phi| {
            let sum = gauge_sum(&family, phi).finite().expect("finite family");
            let bound = jensen_bound(&e, phi)?;
            Ok((format!("trial {t}, {phi}"), sum, bound))
        })
        .collect()
}

/// Inside a gauge's window the decay bound dominates the clipped bound;
/// configurations with arcs past the window are skipped, not failed.
fn decay_trial(seed: u64, t: u64) -> Result<Vec<Sample>> {
    let e = trial_set(seed, t, 6, 256);
    let family = LengthFamily::from_set(&e);
    let longest = e.lengths().cloned().fold(rat(0, 1), Rational::max);
    let mut samples = Vec::new();
    for phi in standard_gauges() {
        let window = 1.0 / phi.c();
        if to_f64(&longest) >= window {
            continue;
        }
        for h in [rat(1, 64), rat(1, 8)] {
            if to_f64(&h) >= window {
                continue;
            }
            let clipped = to_f64(&clipped_length_bound(&e, &h));
            let decay = gauge_decay_bound(&family, &phi, to_f64(&h))?;
            samples.push((format!("trial {t}, {phi}, h = {h}"), clipped, decay));
        }
    }
    Ok(samples)
}

fn envelope_samples() -> Result<Vec<Sample>> {
    let stage = 10u32;
    let mut samples = Vec::new();
    for lambda in [rat(1, 4), rat(1, 5), rat(3, 10)] {
        let spec = FatCantorSpec::new(lambda.clone(), stage)?;
        let (e, _) = fat_cantor_complement(&spec);
        let lam_f = to_f64(&lambda);
        let tail = (2.0 * lam_f).powi(stage as i32 + 1) / (1.0 - 2.0 * lam_f);
        let mut power = lambda.clone();
        for k in 1..=7u32 {
            for mult in [rat(1, 1), rat(3, 4)] {
                let h = &power * &mult;
                let tau = to_f64(&e.tau(&h));
                let (lower, upper) = fat_cantor_envelope(&lambda, to_f64(&h))?;
                let label = format!("lam {lam_f}, h = lam^{k} * {mult}");
                samples.push((format!("{label}, upper side"), tau, upper));
                samples.push((format!("{label}, lower side"), lower - tail, tau));
            }
            power *= &lambda;
        }
    }
    Ok(samples)
}

fn rates_samples() -> Result<Vec<Sample>> {
    let functions = [
        ("tent train", tent_train(4)?),
        ("peak train", pierpont(&rat_int(2), 12)?),
    ];
    let variants = [
        ("log", RateVariant::Log),
        ("sqrt-log", RateVariant::SqrtLog),
        ("p = 1", RateVariant::PowerP(1.0)),
        ("p = 2", RateVariant::PowerP(2.0)),
    ];
    let mut samples = Vec::new();
    for (name, f) in &functions {
        for (label, variant) in variants {
            let report = rate_implication_check(f, variant)?;
            for w in &report.witnesses {
                samples.push((format!("{name}, {label}, {}", w.point), w.quantity, w.bound));
            }
        }
    }
    Ok(samples)
}

/// Raster chain at desk resolution: disagreement cells stay inside the
/// dilated complement collar, the collar inside the dilated boundary
/// neighborhood, and the scaling estimates keep `d_X <= d_B + 0.05`.
fn planar_samples() -> Result<Vec<Sample>> {
    let shapes = [
        ("disk", Shape::Disk { r: 0.3 }),
        ("square", Shape::Square { side: 0.5 }),
        ("cantor slab", Shape::CantorProduct { lambda: rat(1, 4), stage: 3 }),
    ];
    let resolution = 256usize;
    let cell = 1.0 / (resolution * resolution) as f64;
    let mut samples = Vec::new();
    for (name, shape) in &shapes {
        let raster = shape.rasterize(resolution)?;
        let complement = raster.distance_to_complement();
        let interface = raster.distance_to_interface();
        for h in [1.0 / 16.0, 1.0 / 8.0] {
            let deficit = raster.deficit_mask(&complement, h);
            let gamma = interface.within(h);
            let dilated_deficit = dilate(&deficit, resolution);
            for v in [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0)] {
                let eside = raster.eside_disagreement_mask(h, v);
                let escaped = eside
                    .iter()
                    .zip(&dilated_deficit)
                    .filter(|(&inside, &cover)| inside && !cover)
                    .count();
                samples.push((
                    format!("{name}, h = {h}, v = {v:?}, escaped cells"),
                    escaped as f64 * cell,
                    0.0,
                ));
            }
            let escaped = if mask_subset(&deficit, &dilate(&gamma, resolution)) { 0.0 } else { 1.0 };
            samples.push((format!("{name}, h = {h}, collar escape"), escaped, 0.0));
        }
        let hs = [1.0 / 8.0, 1.0 / 16.0, 1.0 / 32.0, 1.0 / 64.0];
        let est = raster.dimension_estimates(&hs)?;
        samples.push((format!("{name}, d_X vs d_B"), est.d_x, est.d_b + 0.05));
    }
    Ok(samples)
}
