//! Command-line front end over the incidence library: exact set
//! incidence, certified moduli, gauge sums, envelope sweeps, the planar
//! analogue, and the aggregated invariant suites.
//!
//! Every value flag can instead come from a flat `key = value` config
//! file via `--config`; explicit flags win. Parse and usage problems
//! exit 2 (parse errors name the byte offset), a failed `verify` run
//! exits 1, everything else 0.

mod export;
mod verify;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use export::Sweep;
use indicatrix::rational::{frac_string, parse_rational, rat, to_f64};
use indicatrix::{
    bt_index, fat_cantor_complement, fat_cantor_envelope, gauge_sum, parse_function_spec,
    parse_set_spec, FatCantorSpec, GaugeFunction, LengthFamily, Rational, RasterSet, Shape,
};

#[derive(Parser)]
#[command(
    name = "indicatrix",
    version,
    about = "Exact incidence and modulus computations for circle sets and piecewise-linear functions",
    propagate_version = true
)]
struct Cli {
    /// Flat `key = value` file supplying any value flag left unset
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact incidence |E Δ (E - h)| of a set with its own translate
    Tau(TauArgs),
    /// Supremal incidence over all offsets 0 < h <= t
    Tausup(TausupArgs),
    /// Certified L^p modulus of continuity of a piecewise-linear function
    Modulus(ModulusArgs),
    /// Level strips of the crossing count, as a sweep table
    Indicatrix(IndicatrixArgs),
    /// Gauge-weighted sum over a family of component lengths
    Gaugesum(GaugesumArgs),
    /// Scaling index of a length family
    Btindex(BtindexArgs),
    /// Run invariant suites and emit a JSON report; exits 1 on failure
    Verify(VerifyArgs),
    /// Sweep a fat Cantor complement's incidence against its envelope
    Fcs(FcsArgs),
    /// Directional incidence of a rasterized planar set
    Tau2(Tau2Args),
    /// Convert a sweep table between CSV and JSON
    Export(ExportArgs),
}

#[derive(Args)]
struct TauArgs {
    /// Set literal `a/b+l/m, ...` (or `full`), `fatcantor:lam,stage`, or `random:n,denom,seed`
    #[arg(long, value_name = "SET")]
    set: Option<String>,
    /// Rational offset, e.g. `1/8`
    #[arg(long, value_name = "RAT")]
    h: Option<String>,
}

#[derive(Args)]
struct TausupArgs {
    /// Set literal (same grammar as `tau`)
    #[arg(long, value_name = "SET")]
    set: Option<String>,
    /// Rational offset cap in (0, 1/2]
    #[arg(long, value_name = "RAT")]
    t: Option<String>,
}

#[derive(Args)]
struct ModulusArgs {
    /// Function spec: `tent:n`, `pierpont:b,cap`, `terekhin:cap`,
    /// `randompl:n,denom,seed`, or explicit `(x1,y1) (x2,y2) ...` nodes
    #[arg(long = "fn", value_name = "SPEC")]
    function: Option<String>,
    /// Rational step bound, e.g. `1/64`
    #[arg(long, value_name = "RAT")]
    t: Option<String>,
    /// Exponent p >= 1 [default: 1]
    #[arg(long, value_name = "P")]
    p: Option<String>,
    /// Offset grid refinement [default: 24]
    #[arg(long, value_name = "N")]
    grid: Option<String>,
}

#[derive(Args)]
struct IndicatrixArgs {
    /// Function spec (same grammar as `modulus`)
    #[arg(long = "fn", value_name = "SPEC")]
    function: Option<String>,
    /// Output path, `.csv` or `.json`; stdout CSV when omitted
    #[arg(long, value_name = "PATH")]
    out: Option<String>,
}

#[derive(Args)]
struct GaugesumArgs {
    /// Length family: `geom:m,rho,a,r` (infinite), `geom:m,rho,a,r,s`
    /// (s stages), or `list:1/2,1/8,...`
    #[arg(long, value_name = "FAMILY")]
    family: Option<String>,
    /// Gauge: `const`, `recip`, `power:a`, `logpow:a`, or `mixed:a,b,c`
    #[arg(long, value_name = "GAUGE")]
    gauge: Option<String>,
}

#[derive(Args)]
struct BtindexArgs {
    /// Length family (same grammar as `gaugesum`)
    #[arg(long, value_name = "FAMILY")]
    family: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, or `all` [default: all]
    #[arg(long, value_name = "NAME")]
    suite: Option<String>,
    /// Trials per randomized suite [default: 64]
    #[arg(long, value_name = "N")]
    trials: Option<String>,
    /// Base seed for the randomized families [default: 0]
    #[arg(long, value_name = "SEED")]
    seed: Option<String>,
    /// Slack tolerance [default: 1e-9]
    #[arg(long, value_name = "TOL")]
    tolerance: Option<String>,
    /// Write the JSON report here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<String>,
}

#[derive(Args)]
struct FcsArgs {
    /// Removed-length ratio, a rational in (0, 1/2)
    #[arg(long, value_name = "RAT")]
    lam: Option<String>,
    /// Construction depth
    #[arg(long, value_name = "N")]
    stage: Option<String>,
    /// Offset grid `geom:start,stop[,factor]`: rational start and factor
    /// (default 1/2), float stop
    #[arg(long, value_name = "GRID")]
    hgrid: Option<String>,
    /// Output path, `.csv` or `.json`; stdout CSV when omitted
    #[arg(long, value_name = "PATH")]
    out: Option<String>,
}

#[derive(Args)]
struct Tau2Args {
    /// Shape: `disk:r`, `square:side`, or `cantor:lam,stage`
    #[arg(long, value_name = "SHAPE")]
    shape: Option<String>,
    /// Load the raster from a PGM file instead of rasterizing a shape
    #[arg(long, value_name = "PATH")]
    raster: Option<String>,
    /// Raster resolution for `--shape` [default: 512]
    #[arg(long, value_name = "N")]
    res: Option<String>,
    /// Offset length (optional when only saving)
    #[arg(long, value_name = "H")]
    h: Option<String>,
    /// Direction `dx,dy` [default: 1,0]
    #[arg(long, value_name = "DIR")]
    v: Option<String>,
    /// Write the raster as PGM plus a JSON sidecar to this path
    #[arg(long, value_name = "PATH")]
    save: Option<String>,
}

#[derive(Args)]
struct ExportArgs {
    /// Input table, `.csv` or `.json`
    #[arg(long, value_name = "PATH")]
    input: Option<String>,
    /// Output table, `.csv` or `.json`
    #[arg(long, value_name = "PATH")]
    out: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

/// Copies config values into flags still unset after argument parsing.
macro_rules! fill {
    ($cfg:expr, $($field:expr => $key:literal),+ $(,)?) => {
        $(
            if $field.is_none() {
                if let Some(v) = $cfg.get($key) {
                    $field = Some(v.clone());
                }
            }
        )+
    };
}

fn run(cli: Cli) -> Result<ExitCode> {
    init_threads()?;
    let cfg = match &cli.config {
        Some(path) => load_config(path)?,
        None => BTreeMap::new(),
    };
    match cli.command {
        Command::Tau(mut a) => {
            fill!(cfg, a.set => "set", a.h => "h");
            let e = parse_set_spec(need(&a.set, "set")?)?;
            let h = parse_rational(need(&a.h, "h")?)?;
            println!("{}", frac_string(&e.tau(&h)));
        }
        Command::Tausup(mut a) => {
            fill!(cfg, a.set => "set", a.t => "t");
            let e = parse_set_spec(need(&a.set, "set")?)?;
            let t = parse_rational(need(&a.t, "t")?)?;
            println!("{}", frac_string(&e.tau_sup(&t)?));
        }
        Command::Modulus(mut a) => {
            fill!(cfg, a.function => "fn", a.t => "t", a.p => "p", a.grid => "grid");
            let f = parse_function_spec(need(&a.function, "fn")?)?;
            let t = parse_rational(need(&a.t, "t")?)?;
            let p: f64 = parse_num(a.p.as_deref().unwrap_or("1"), "p")?;
            let grid: usize = parse_num(a.grid.as_deref().unwrap_or("24"), "grid")?;
            let m = f.modulus(&t, p, grid)?;
            println!("{} {}", m.value, m.error_bound);
        }
        Command::Indicatrix(mut a) => {
            fill!(cfg, a.function => "fn", a.out => "out");
            let f = parse_function_spec(need(&a.function, "fn")?)?;
            let mut sweep = Sweep::new(&["y_lo", "y_hi", "crossings", "components"]);
            for s in f.indicatrix_profile().strips() {
                sweep.push(vec![
                    json!(frac_string(&s.y_lo)),
                    json!(frac_string(&s.y_hi)),
                    json!(s.crossings),
                    json!(s.components),
                ]);
            }
            sweep.emit(a.out.as_deref().map(Path::new))?;
        }
        Command::Gaugesum(mut a) => {
            fill!(cfg, a.family => "family", a.gauge => "gauge");
            let family: LengthFamily = need(&a.family, "family")?.parse()?;
            let phi: GaugeFunction = need(&a.gauge, "gauge")?.parse()?;
            println!("{}", gauge_sum(&family, &phi));
        }
        Command::Btindex(mut a) => {
            fill!(cfg, a.family => "family");
            let family: LengthFamily = need(&a.family, "family")?.parse()?;
            let idx = bt_index(&family)?;
            if idx.truncated {
                println!("{} (truncated family)", idx.value);
            } else {
                println!("{}", idx.value);
            }
        }
        Command::Verify(mut a) => {
            fill!(
                cfg,
                a.suite => "suite",
                a.trials => "trials",
                a.seed => "seed",
                a.tolerance => "tolerance",
                a.out => "out"
            );
            let suite = a.suite.as_deref().unwrap_or("all");
            let trials: u64 = parse_num(a.trials.as_deref().unwrap_or("64"), "trials")?;
            let seed: u64 = parse_num(a.seed.as_deref().unwrap_or("0"), "seed")?;
            let tolerance: f64 = parse_num(a.tolerance.as_deref().unwrap_or("1e-9"), "tolerance")?;
            let outcomes = verify::run(suite, trials, seed, tolerance)?;
            let mut report = serde_json::to_string_pretty(&outcomes)?;
            report.push('\n');
            match &a.out {
                Some(path) => fs::write(path, &report)
                    .with_context(|| format!("writing report to {path}"))?,
                None => print!("{report}"),
            }
            let mut failed = false;
            for o in outcomes.iter().filter(|o| !o.passed) {
                failed = true;
                match o.witnesses.first() {
                    Some(w) => eprintln!(
                        "suite {} failed at {}: quantity {} vs bound {} (slack {})",
                        o.suite, w.point, w.quantity, w.bound, o.slack
                    ),
                    None => eprintln!("suite {} failed with no samples", o.suite),
                }
            }
            if failed {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Fcs(mut a) => {
            fill!(cfg, a.lam => "lam", a.stage => "stage", a.hgrid => "hgrid", a.out => "out");
            let lam = parse_rational(need(&a.lam, "lam")?)?;
            let stage: u32 = parse_num(need(&a.stage, "stage")?, "stage")?;
            let spec = FatCantorSpec::new(lam.clone(), stage)?;
            let (e, _) = fat_cantor_complement(&spec);
            let mut sweep = Sweep::new(&["h", "tau", "lower", "upper"]);
            for h in parse_hgrid(need(&a.hgrid, "hgrid")?)? {
                let hf = to_f64(&h);
                let tau = to_f64(&e.tau(&h));
                let (lower, upper) = fat_cantor_envelope(&lam, hf)?;
                sweep.push(vec![json!(hf), json!(tau), json!(lower), json!(upper)]);
            }
            sweep.emit(a.out.as_deref().map(Path::new))?;
        }
        Command::Tau2(mut a) => {
            fill!(
                cfg,
                a.shape => "shape",
                a.raster => "raster",
                a.res => "res",
                a.h => "h",
                a.v => "v",
                a.save => "save"
            );
            let raster = match (&a.shape, &a.raster) {
                (Some(_), Some(_)) => bail!("give either --shape or --raster, not both"),
                (Some(s), None) => {
                    let res: usize = parse_num(a.res.as_deref().unwrap_or("512"), "res")?;
                    s.parse::<Shape>()?.rasterize(res)?
                }
                (None, Some(p)) => RasterSet::read_pgm(Path::new(p))?,
                (None, None) => bail!("missing --shape or --raster (or a config key)"),
            };
            if let Some(path) = &a.save {
                raster.write_pgm(Path::new(path))?;
            }
            match &a.h {
                Some(h) => {
                    let h: f64 = parse_num(h, "h")?;
                    let v = parse_direction(a.v.as_deref().unwrap_or("1,0"))?;
                    println!("{}", raster.tau_directional(h, v));
                }
                None if a.save.is_some() => {}
                None => bail!("missing --h (or `h` in the config file)"),
            }
        }
        Command::Export(mut a) => {
            fill!(cfg, a.input => "input", a.out => "out");
            export::convert(
                Path::new(need(&a.input, "input")?),
                Path::new(need(&a.out, "out")?),
            )?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Caps the rayon pool when `INDICATRIX_THREADS` is set.
fn init_threads() -> Result<()> {
    match std::env::var("INDICATRIX_THREADS") {
        Ok(v) => {
            let n: usize = v
                .trim()
                .parse()
                .with_context(|| format!("INDICATRIX_THREADS = {v:?} is not a thread count"))?;
            if n == 0 {
                bail!("INDICATRIX_THREADS must be at least 1");
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .context("building the global thread pool")?;
            Ok(())
        }
        Err(_) => Ok(()),
    }
}

/// Flat config: one `key = value` per line, `#` comments, keys named
/// after the long flags they fill.
fn load_config(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            anyhow!("{}:{}: expected `key = value`, got {raw:?}", path.display(), lineno + 1)
        })?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

fn need<'a>(value: &'a Option<String>, key: &str) -> Result<&'a str> {
    value
        .as_deref()
        .ok_or_else(|| anyhow!("missing --{key} (or `{key}` in the config file)"))
}

fn parse_num<T: FromStr>(s: &str, what: &str) -> Result<T>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    s.trim()
        .parse()
        .with_context(|| format!("{what}: cannot parse {s:?}"))
}

/// `geom:start,stop[,factor]`: rational offsets from `start` shrinking
/// by `factor` (default 1/2) while still at least `stop`.
fn parse_hgrid(s: &str) -> Result<Vec<Rational>> {
    let body = s
        .trim()
        .strip_prefix("geom:")
        .ok_or_else(|| anyhow!("hgrid must look like geom:start,stop[,factor], got {s:?}"))?;
    let parts: Vec<&str> = body.split(',').collect();
    if parts.len() != 2 && parts.len() != 3 {
        bail!("hgrid must look like geom:start,stop[,factor], got {s:?}");
    }
    let start = parse_rational(parts[0].trim())?;
    let stop: f64 = match parse_rational(parts[1].trim()) {
        Ok(r) => to_f64(&r),
        Err(_) => parse_num(parts[1], "hgrid stop")?,
    };
    let factor = if parts.len() == 3 { parse_rational(parts[2].trim())? } else { rat(1, 2) };
    if to_f64(&start) <= 0.0 || stop <= 0.0 {
        bail!("hgrid start and stop must be positive");
    }
    if to_f64(&factor) <= 0.0 || to_f64(&factor) >= 1.0 {
        bail!("hgrid factor must lie in (0, 1), got {}", frac_string(&factor));
    }
    let mut grid = Vec::new();
    let mut h = start.clone();
    while to_f64(&h) >= stop {
        grid.push(h.clone());
        h *= &factor;
        if grid.len() > 100_000 {
            bail!("hgrid has more than 100000 points; raise stop or shrink factor");
        }
    }
    if grid.is_empty() {
        bail!("empty hgrid: start {} is already below stop {stop}", frac_string(&start));
    }
    Ok(grid)
}

fn parse_direction(s: &str) -> Result<(f64, f64)> {
    let (dx, dy) = s
        .trim()
        .split_once(',')
        .ok_or_else(|| anyhow!("direction must look like dx,dy, got {s:?}"))?;
    let v: (f64, f64) = (parse_num(dx, "direction dx")?, parse_num(dy, "direction dy")?);
    if v.0 == 0.0 && v.1 == 0.0 {
        bail!("direction must be a nonzero vector");
    }
    Ok(v)
}
