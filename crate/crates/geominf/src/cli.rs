//! Command-line interface.
//!
//! ```text
//! geominf <command> [--flag value ...]
//!
//! commands:
//!   influence   per-coordinate influence estimates
//!               --set SPEC --measure MSPEC --n N --samples S --seed SEED
//!   bounds      max-influence and influence-sum inequality reports
//!               --set SPEC --measure MSPEC --n N --samples S --seed SEED
//!               [--baselines PATH]
//!   russo       location-family measure curve
//!               --set SPEC --measure MSPEC --n N --alpha-grid LO:HI:COUNT
//!               --samples S --seed SEED
//!   threshold   threshold location alpha with nu_alpha^n(A) = delta,
//!               or the sharp-threshold width report with --width EPS
//!               --set SPEC --n N --delta D | --width EPS
//!               --samples S --seed SEED [--baselines PATH]
//!   power       exact max-statistic test power
//!               --theta0 T0 --theta1 T1 --beta B --n N
//!   rotate      influence sums under Haar rotations
//!               --set SPEC --n N --rotations K --samples S --seed SEED
//!               [--baselines PATH]
//!   iso         one-dimensional enlargement inequality
//!               --measure MSPEC --intervals "a,b;c,d;..." --r R
//!   box-table   closed-form box-family influence table
//!               --rho RHO --nmax NMAX
//!
//! common flags: --output PATH (default stdout; also writes
//! PATH.manifest.json), --format csv|json (default csv).
//!
//! set specs (numbers comma-separated; `base=` consumes the rest of the
//! spec verbatim and may nest):
//!   halfspace:u=1,0,0;b=0.5      {x : u.x <= b}, u normalized internally
//!   box:a=0.1,0.2                prod_i (-inf, a_i]
//!   ball:c=0,0;R=1.5             {x : |x - c| <= R}
//!   maxthr:K=2.0                 {x : max_i x_i > K}   (dimension from --n)
//!   sumthr:K=0.0                 {x : sum_i x_i >= K}  (dimension from --n)
//!   compl:base=<spec>            complement
//!   rot:seed=7;base=<spec>       Haar rotation of the base set
//!   empty | full
//!
//! measure specs:
//!   gaussian                     standard normal factors
//!   gaussian:mean=0;var=1
//!   boltzmann:rho=1.5            density ~ exp(-|x|^rho)
//!   uniform                      uniform on [0,1]
//!   shifted:alpha=0.3;base=<measure spec>
//!
//! exit codes: 0 all checks passed, 2 at least one bound check failed,
//! 1 usage or configuration error. In the interval grammar `inf` and `-inf`
//! denote unbounded endpoints. Seeds are always explicit; there is no
//! environment fallback.
//! ```

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use crate::bounds::{
    box_exact, check_1d_iso, check_kkl, check_lowmax_sum, check_talagrand_sum, Baselines,
    BoundReport, RhoOrGauss,
};
use crate::error::{Error, Result};
use crate::influence::influence_profile;
use crate::interval::{Interval, IntervalUnion};
use crate::measure::{Measure1D, ProductSpace};
use crate::report::{emit, Format, RunManifest, Table};
use crate::rotation::rotation_scan;
use crate::russo::{max_test_power, measure_curve, threshold_alpha, width_check};
use crate::set::{McConfig, SetDescriptor};

pub fn run(args: Vec<String>) -> i32 {
    match run_inner(args) {
        Ok(all_passed) => {
            if all_passed {
                0
            } else {
                2
            }
        }
        Err(e) => {
            eprintln!("{e}");
            1
        }
    }
}

struct Flags {
    command: String,
    values: BTreeMap<String, String>,
    echo: String,
}

impl Flags {
    fn parse(args: Vec<String>) -> Result<Flags> {
        let echo = args.join(" ");
        let mut it = args.into_iter();
        let command = it
            .next()
            .ok_or_else(|| Error::Usage("missing command; see the module docs".into()))?;
        let mut values = BTreeMap::new();
        while let Some(flag) = it.next() {
            let name = flag
                .strip_prefix("--")
                .ok_or_else(|| Error::Usage(format!("expected --flag, got '{flag}'")))?;
            let value = it
                .next()
                .ok_or_else(|| Error::Usage(format!("flag --{name} needs a value")))?;
            values.insert(name.to_string(), value);
        }
        Ok(Flags { command, values, echo })
    }

    fn get(&self, name: &str) -> Option<&str> {
        self.values.get(name).map(|s| s.as_str())
    }

    fn required(&self, name: &str) -> Result<&str> {
        self.get(name).ok_or_else(|| Error::Usage(format!("flag --{name} is required")))
    }

    fn parse_f64(&self, name: &str) -> Result<f64> {
        self.required(name)?
            .parse()
            .map_err(|_| Error::Usage(format!("flag --{name} must be a number")))
    }

    fn parse_usize(&self, name: &str) -> Result<usize> {
        self.required(name)?
            .parse()
            .map_err(|_| Error::Usage(format!("flag --{name} must be a nonnegative integer")))
    }

    fn seed(&self) -> Result<u64> {
        self.get("seed")
            .ok_or_else(|| {
                Error::Usage("missing seed: --seed is required (explicit seeds only)".into())
            })?
            .parse()
            .map_err(|_| Error::Usage("flag --seed must be a 64-bit integer".into()))
    }

    fn samples(&self) -> Result<usize> {
        let s = match self.get("samples") {
            Some(v) => v
                .parse()
                .map_err(|_| Error::Usage("flag --samples must be a nonnegative integer".into()))?,
            None => 100_000,
        };
        if s < 100 {
            return Err(Error::Usage("need --samples >= 100".into()));
        }
        Ok(s)
    }

    fn format(&self) -> Result<Format> {
        match self.get("format") {
            Some(f) => Format::parse(f),
            None => Ok(Format::Csv),
        }
    }

    fn output(&self) -> Option<PathBuf> {
        self.get("output").map(PathBuf::from)
    }

    fn baselines(&self) -> Result<Baselines> {
        match self.get("baselines") {
            Some(path) => Baselines::load(std::path::Path::new(path)),
            None => Ok(Baselines::shipped()),
        }
    }
}

fn run_inner(args: Vec<String>) -> Result<bool> {
    let started = Instant::now();
    let flags = Flags::parse(args)?;
    let (table, reports) = match flags.command.as_str() {
        "influence" => cmd_influence(&flags)?,
        "bounds" => cmd_bounds(&flags)?,
        "russo" => cmd_russo(&flags)?,
        "threshold" => cmd_threshold(&flags)?,
        "power" => cmd_power(&flags)?,
        "rotate" => cmd_rotate(&flags)?,
        "iso" => cmd_iso(&flags)?,
        "box-table" => cmd_box_table(&flags)?,
        other => {
            return Err(Error::Usage(format!(
                "unknown command '{other}' (influence, bounds, russo, threshold, power, rotate, iso, box-table)"
            )))
        }
    };
    let output = flags.output();
    emit(&table, flags.format()?, output.as_deref())?;
    let passed = reports.iter().filter(|r| r.pass).count();
    if let Some(path) = &output {
        let manifest = RunManifest {
            command_line: flags.echo.clone(),
            version: env!("CARGO_PKG_VERSION").into(),
            wall_ms: started.elapsed().as_millis(),
            checks_total: reports.len(),
            checks_passed: passed,
        };
        manifest.write(path)?;
    }
    Ok(passed == reports.len())
}

/// Splits `kind:params`; a missing colon means a bare kind.
fn split_kind(spec: &str) -> (&str, &str) {
    match spec.split_once(':') {
        Some((k, rest)) => (k, rest),
        None => (spec, ""),
    }
}

/// Parses `key=value;key=value;...` where a `base=` key swallows the rest of
/// the string verbatim (so specs can nest).
fn parse_params(rest: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    let mut remaining = rest;
    while !remaining.is_empty() {
        let (key, after_key) = remaining
            .split_once('=')
            .ok_or_else(|| Error::Usage(format!("expected key=value in '{remaining}'")))?;
        if key == "base" {
            out.insert("base".into(), after_key.to_string());
            return Ok(out);
        }
        let (value, rest2) = match after_key.split_once(';') {
            Some((v, r)) => (v, r),
            None => (after_key, ""),
        };
        out.insert(key.to_string(), value.to_string());
        remaining = rest2;
    }
    Ok(out)
}

fn parse_vec(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| Error::Usage(format!("bad number '{p}'"))))
        .collect()
}

fn param<'a>(params: &'a BTreeMap<String, String>, key: &str, kind: &str) -> Result<&'a str> {
    params
        .get(key)
        .map(|s| s.as_str())
        .ok_or_else(|| Error::Usage(format!("set spec '{kind}' needs parameter {key}=")))
}

/// Parses the set mini-language; `n` fixes the dimension of kinds that do
/// not carry one.
pub fn parse_set_spec(spec: &str, n: usize) -> Result<SetDescriptor> {
    let (kind, rest) = split_kind(spec);
    let params = parse_params(rest)?;
    let set = match kind {
        "halfspace" => {
            let u = parse_vec(param(&params, "u", kind)?)?;
            let b: f64 = param(&params, "b", kind)?
                .parse()
                .map_err(|_| Error::Usage("halfspace b must be a number".into()))?;
            SetDescriptor::halfspace(u, b)?
        }
        "box" => SetDescriptor::box_lower(parse_vec(param(&params, "a", kind)?)?),
        "ball" => {
            let c = parse_vec(param(&params, "c", kind)?)?;
            let radius: f64 = param(&params, "R", kind)?
                .parse()
                .map_err(|_| Error::Usage("ball R must be a number".into()))?;
            SetDescriptor::ball(c, radius)?
        }
        "maxthr" => {
            let level: f64 = param(&params, "K", kind)?
                .parse()
                .map_err(|_| Error::Usage("maxthr K must be a number".into()))?;
            SetDescriptor::max_threshold(level, n)
        }
        "sumthr" => {
            let level: f64 = param(&params, "K", kind)?
                .parse()
                .map_err(|_| Error::Usage("sumthr K must be a number".into()))?;
            SetDescriptor::sum_threshold(level, n)
        }
        "compl" => SetDescriptor::complement(parse_set_spec(param(&params, "base", kind)?, n)?),
        "rot" => {
            let seed: u64 = param(&params, "seed", kind)?
                .parse()
                .map_err(|_| Error::Usage("rot seed must be an integer".into()))?;
            let base = parse_set_spec(param(&params, "base", kind)?, n)?;
            let g = crate::rotation::haar_sample(base.dim(), seed)?;
            crate::rotation::rotate_set(&base, &g)?
        }
        "empty" => SetDescriptor::Empty { dim: n },
        "full" => SetDescriptor::Full { dim: n },
        other => return Err(Error::Usage(format!("unknown set spec kind '{other}'"))),
    };
    if set.dim() != n {
        return Err(Error::Usage(format!(
            "set spec '{spec}' has dimension {}, but --n is {n}",
            set.dim()
        )));
    }
    Ok(set)
}

/// Parses the measure mini-language.
pub fn parse_measure_spec(spec: &str) -> Result<Measure1D> {
    let (kind, rest) = split_kind(spec);
    let params = parse_params(rest)?;
    Ok(match kind {
        "gaussian" => {
            let mean: f64 = params.get("mean").map_or(Ok(0.0), |v| {
                v.parse().map_err(|_| Error::Usage("gaussian mean must be a number".into()))
            })?;
            let var: f64 = params.get("var").map_or(Ok(1.0), |v| {
                v.parse().map_err(|_| Error::Usage("gaussian var must be a number".into()))
            })?;
            Measure1D::gaussian(mean, var)?
        }
        "boltzmann" => {
            let rho: f64 = param(&params, "rho", kind)?
                .parse()
                .map_err(|_| Error::Usage("boltzmann rho must be a number".into()))?;
            Measure1D::boltzmann(rho)?
        }
        "uniform" => Measure1D::uniform01(),
        "shifted" => {
            let alpha: f64 = param(&params, "alpha", kind)?
                .parse()
                .map_err(|_| Error::Usage("shifted alpha must be a number".into()))?;
            parse_measure_spec(param(&params, "base", kind)?)?.translate(alpha)
        }
        other => return Err(Error::Usage(format!("unknown measure spec kind '{other}'"))),
    })
}

fn rho_or_gauss_of(m: &Measure1D) -> RhoOrGauss {
    match m.is_boltzmann() {
        Some(rho) => RhoOrGauss::Boltzmann(rho),
        None => RhoOrGauss::Gaussian,
    }
}

fn report_row(table: &mut Table, r: &BoundReport) {
    table.push(vec![
        r.name.as_str().into(),
        r.context.n.into(),
        r.context.measure.as_str().into(),
        r.context.t.into(),
        r.lhs.into(),
        r.rhs_at_c1.into(),
        r.implied_constant.into(),
        r.baseline_constant.into(),
        r.pass.into(),
    ]);
}

fn report_table() -> Table {
    Table::new(&[
        "check", "n", "measure", "t", "lhs", "rhs_at_c1", "implied_constant", "baseline", "pass",
    ])
}

fn cmd_influence(flags: &Flags) -> Result<(Table, Vec<BoundReport>)> {
    let n = flags.parse_usize("n")?;
    let m = parse_measure_spec(flags.required("measure")?)?;
    let set = parse_set_spec(flags.required("set")?, n)?;
    let cfg = McConfig::new(flags.samples()?, flags.seed()?);
    let space = ProductSpace::iid(&m, n)?;
    let profile = influence_profile(&set, &space, cfg)?;
    let mut table = Table::new(&["i", "value", "stderr"]);
    for est in &profile.estimates {
        table.push(vec![est.coordinate.into(), est.value.into(), est.stderr.into()]);
    }
    Ok((table, vec![]))
}

fn cmd_bounds(flags: &Flags) -> Result<(Table, Vec<BoundReport>)> {
    let n = flags.parse_usize("n")?;
    let m = parse_measure_spec(flags.required("measure")?)?;
    let set = parse_set_spec(flags.required("set")?, n)?;
    let cfg = McConfig::new(flags.samples()?, flags.seed()?);
    let baselines = flags.baselines()?;
    let space = ProductSpace::iid(&m, n)?;
    let profile = influence_profile(&set, &space, cfg)?;
    let (t, _) = set.measure_mc(&space, cfg)?;
    let rg = rho_or_gauss_of(&m);
    let seed = cfg.seed;
    let mut reports = vec![
        check_kkl(&profile, t, n, rg, baselines.get("kkl.floor")?, seed)?,
        check_talagrand_sum(&profile, t, rg, baselines.get("talagrand_sum.floor")?, seed)?,
    ];
    if profile.max > 0.0 && profile.max < 1.0 {
        reports.push(check_lowmax_sum(
            &profile,
            t,
            profile.max,
            rg,
            baselines.get("lowmax_sum.floor")?,
            seed,
        )?);
    }
    let mut table = report_table();
    for r in &reports {
        report_row(&mut table, r);
    }
    Ok((table, reports))
}

fn cmd_russo(flags: &Flags) -> Result<(Table, Vec<BoundReport>)> {
    let n = flags.parse_usize("n")?;
    let m = parse_measure_spec(flags.required("measure")?)?;
    let set = parse_set_spec(flags.required("set")?, n)?;
    let cfg = McConfig::new(flags.samples()?, flags.seed()?);
    let grid_spec = flags.required("alpha-grid")?;
    let parts: Vec<&str> = grid_spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Usage("--alpha-grid must be LO:HI:COUNT".into()));
    }
    let lo: f64 =
        parts[0].parse().map_err(|_| Error::Usage("alpha-grid LO must be a number".into()))?;
    let hi: f64 =
        parts[1].parse().map_err(|_| Error::Usage("alpha-grid HI must be a number".into()))?;
    let count: usize =
        parts[2].parse().map_err(|_| Error::Usage("alpha-grid COUNT must be an integer".into()))?;
    if count < 2 || hi <= lo {
        return Err(Error::Usage("alpha-grid needs HI > LO and COUNT >= 2".into()));
    }
    let alphas: Vec<f64> =
        (0..count).map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64).collect();
    let curve = measure_curve(&set, &m, &alphas, n, cfg)?;
    let mut table = Table::new(&["alpha", "value", "stderr"]);
    for ((a, v), se) in curve.alphas.iter().zip(&curve.values).zip(&curve.stderrs) {
        table.push(vec![(*a).into(), (*v).into(), (*se).into()]);
    }
    Ok((table, vec![]))
}

fn cmd_threshold(flags: &Flags) -> Result<(Table, Vec<BoundReport>)> {
    let n = flags.parse_usize("n")?;
    let set = parse_set_spec(flags.required("set")?, n)?;
    let cfg = McConfig::new(flags.samples()?, flags.seed()?);
    if let Some(eps_str) = flags.get("width") {
        let eps: f64 =
            eps_str.parse().map_err(|_| Error::Usage("--width must be a number".into()))?;
        let baselines = flags.baselines()?;
        let rep = width_check(&set, eps, n, cfg, baselines.get("width_max_threshold.hi")?)?;
        let mut table = Table::new(&["n", "width", "rhs", "implied_c"]);
        table.push(vec![
            n.into(),
            rep.lhs.into(),
            rep.rhs_at_c1.into(),
            rep.implied_constant.into(),
        ]);
        return Ok((table, vec![rep]));
    }
    let m = parse_measure_spec(flags.get("measure").unwrap_or("gaussian"))?;
    let delta = flags.parse_f64("delta")?;
    let alpha = threshold_alpha(&set, &m, delta, n, cfg)?;
    let mut table = Table::new(&["delta", "alpha"]);
    table.push(vec![delta.into(), alpha.into()]);
    Ok((table, vec![]))
}

fn cmd_power(flags: &Flags) -> Result<(Table, Vec<BoundReport>)> {
    let rep = max_test_power(
        flags.parse_f64("theta0")?,
        flags.parse_f64("theta1")?,
        flags.parse_f64("beta")?,
        flags.parse_usize("n")?,
    )?;
    let mut table = Table::new(&["theta0", "theta1", "beta", "n", "critical", "power"]);
    table.push(vec![
        rep.theta0.into(),
        rep.theta1.into(),
        rep.beta.into(),
        rep.n.into(),
        rep.critical.into(),
        rep.power.into(),
    ]);
    Ok((table, vec![]))
}

fn cmd_rotate(flags: &Flags) -> Result<(Table, Vec<BoundReport>)> {
    let n = flags.parse_usize("n")?;
    let set = parse_set_spec(flags.required("set")?, n)?;
    let rotations = flags.parse_usize("rotations")?;
    let cfg = McConfig::new(flags.samples()?, flags.seed()?);
    let baselines = flags.baselines()?;
    let space = ProductSpace::iid(&Measure1D::std_gaussian(), n)?;
    let scan = rotation_scan(&set, &space, rotations, cfg, baselines.get("rotation_mean.floor")?)?;
    let mut table = Table::new(&["rotation_index", "influence_sum", "stderr"]);
    for (j, (sum, se)) in scan.sums.iter().enumerate() {
        table.push(vec![j.into(), (*sum).into(), (*se).into()]);
    }
    Ok((table, vec![scan.report]))
}

fn parse_intervals(spec: &str) -> Result<IntervalUnion> {
    let mut parts = Vec::new();
    for chunk in spec.split(';') {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            continue;
        }
        let (a, b) = chunk
            .split_once(',')
            .ok_or_else(|| Error::Usage(format!("interval '{chunk}' must be 'lo,hi'")))?;
        let parse_end = |s: &str| -> Result<f64> {
            match s.trim() {
                "inf" | "+inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                v => v.parse().map_err(|_| Error::Usage(format!("bad endpoint '{v}'"))),
            }
        };
        let lo = parse_end(a)?;
        let hi = parse_end(b)?;
        if lo > hi {
            return Err(Error::Usage(format!("interval '{chunk}' has lo > hi")));
        }
        parts.push(Interval::new(lo, hi));
    }
    Ok(IntervalUnion::from_components(parts))
}

fn cmd_iso(flags: &Flags) -> Result<(Table, Vec<BoundReport>)> {
    let m = parse_measure_spec(flags.required("measure")?)?;
    let s = parse_intervals(flags.required("intervals")?)?;
    let r = flags.parse_f64("r")?;
    let rep = check_1d_iso(&s, &m, r)?;
    let mut table = report_table();
    report_row(&mut table, &rep);
    Ok((table, vec![rep]))
}

fn cmd_box_table(flags: &Flags) -> Result<(Table, Vec<BoundReport>)> {
    let rho = flags.parse_f64("rho")?;
    let nmax = flags.parse_usize("nmax")?;
    if nmax < 1 {
        return Err(Error::Usage("--nmax must be at least 1".into()));
    }
    let mut table = Table::new(&["n", "corner", "influence", "scaled"]);
    let mut n = 1usize;
    while n <= nmax {
        let be = box_exact(n, rho)?;
        let scaled = if n >= 2 {
            be.influence_sum / (n as f64).ln().powf(1.0 - 1.0 / rho)
        } else {
            be.influence_sum
        };
        table.push(vec![n.into(), be.corner.into(), be.influence.into(), scaled.into()]);
        n *= 2;
    }
    Ok((table, vec![]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_specs_parse() {
        let h = parse_set_spec("halfspace:u=1,0;b=0.5", 2).unwrap();
        assert!(h.indicator(&[0.0, 9.0]));
        let b = parse_set_spec("box:a=0.1,0.2", 2).unwrap();
        assert!(b.indicator(&[0.0, 0.0]));
        let m = parse_set_spec("maxthr:K=2.0", 3).unwrap();
        assert_eq!(m.dim(), 3);
        let nested = parse_set_spec("compl:base=halfspace:u=1,0;b=0.5", 2).unwrap();
        assert!(!nested.indicator(&[0.0, 9.0]));
        let rot = parse_set_spec("rot:seed=7;base=ball:c=0,0;R=1.0", 2).unwrap();
        assert!(rot.indicator(&[0.0, 0.0]));
        assert!(parse_set_spec("bogus:x=1", 2).is_err());
        assert!(parse_set_spec("halfspace:u=1,0;b=0.5", 3).is_err());
        assert!(parse_set_spec("halfspace:u=1,0", 2).is_err());
    }

    #[test]
    fn measure_specs_parse() {
        assert_eq!(parse_measure_spec("gaussian").unwrap(), Measure1D::std_gaussian());
        let b = parse_measure_spec("boltzmann:rho=1.5").unwrap();
        assert_eq!(b.is_boltzmann(), Some(1.5));
        let s = parse_measure_spec("shifted:alpha=0.25;base=gaussian").unwrap();
        assert_eq!(s.center(), 0.25);
        assert!(parse_measure_spec("boltzmann:rho=0.5").is_err());
        assert!(parse_measure_spec("nope").is_err());
    }

    #[test]
    fn interval_specs_parse() {
        let u = parse_intervals("-inf,0;1,2").unwrap();
        assert_eq!(u.components().len(), 2);
        assert!(u.contains(-5.0) && u.contains(1.5) && !u.contains(0.5));
        assert!(parse_intervals("3,1").is_err());
        assert!(parse_intervals("oops").is_err());
    }

    #[test]
    fn missing_seed_is_a_distinct_usage_error() {
        let code = run(vec![
            "influence".into(),
            "--set".into(),
            "halfspace:u=1,0;b=0".into(),
            "--measure".into(),
            "gaussian".into(),
            "--n".into(),
            "2".into(),
            "--samples".into(),
            "1000".into(),
        ]);
        assert_eq!(code, 1);
    }

    #[test]
    fn unknown_command_errors() {
        assert_eq!(run(vec!["frobnicate".into()]), 1);
        assert_eq!(run(vec![]), 1);
    }

    #[test]
    fn power_command_runs_to_stdout() {
        let code = run(vec![
            "power".into(),
            "--theta0".into(),
            "0".into(),
            "--theta1".into(),
            "0.5".into(),
            "--beta".into(),
            "0.05".into(),
            "--n".into(),
            "100".into(),
        ]);
        assert_eq!(code, 0);
    }
}
