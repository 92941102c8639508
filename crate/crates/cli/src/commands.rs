//! Subcommand implementations.

use std::path::Path;

use qexp_core::io::{parse_channel, parse_matrix, parse_prior, parse_source, MatrixJson};
use qexp_core::{
    capacity, channel_exponent, channel_exponent_for_prior, divergence_detailed, e0, e0_source_iid,
    e0_source_type, information, source_exponent, CqChannel, DivergenceKind, ExponentOptions,
    ExponentResult, ExtendedValue, InfoVariant, OptimizerOptions, Prior,
};
use qexp_propcheck::{all_passed, run_all, Config};
use serde::Serialize;

use crate::args::{
    CapacityArgs, CheckArgs, DivergenceArgs, E0CurveArgs, ExponentArgs, InfoArgs, PriorArgs, Units,
};
use crate::output::{
    curve_csv, emit, manifest_path, read_file, to_json, CliError, CliResult, CurveRow, RunManifest,
};

fn kind(name: &str) -> CliResult<DivergenceKind> {
    Ok(name.parse::<DivergenceKind>()?)
}

fn load_channel(path: &Path) -> CliResult<CqChannel> {
    Ok(parse_channel(&read_file(path)?)?)
}

fn load_prior(args: &PriorArgs, k: usize) -> CliResult<Prior> {
    match &args.prior {
        Some(p) => Ok(parse_prior(&read_file(p)?)?),
        None if args.uniform => Ok(Prior::uniform(k)),
        None => Err(CliError::Input("a prior is required (--prior FILE or --uniform)".into())),
    }
}

fn prior_inputs<'a>(args: &'a PriorArgs, main: &'a Path) -> Vec<&'a Path> {
    let mut v = vec![main];
    if let Some(p) = &args.prior {
        v.push(p.as_path());
    }
    v
}

#[derive(Serialize)]
struct DivergenceEntry {
    alpha: ExtendedValue,
    value: ExtendedValue,
    limit_estimate: bool,
}

#[derive(Serialize)]
struct DivergenceOutput {
    kind: &'static str,
    units: &'static str,
    results: Vec<DivergenceEntry>,
    manifest: RunManifest,
}

pub fn divergence(a: &DivergenceArgs, units: Units) -> CliResult<()> {
    let k = kind(&a.kind)?;
    let rho = parse_matrix(&read_file(&a.rho)?)?;
    let sigma = parse_matrix(&read_file(&a.sigma)?)?;
    let results = a
        .alphas
        .iter()
        .map(|&alpha| {
            let v = divergence_detailed(k, &rho, &sigma, alpha)?;
            Ok(DivergenceEntry {
                alpha: ExtendedValue::from_f64(alpha),
                value: v.value.map(|x| x * units.scale()),
                limit_estimate: v.limit_estimate,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let alphas: Vec<String> = a.alphas.iter().map(|x| x.to_string()).collect();
    let out = DivergenceOutput {
        kind: k.name(),
        units: units.name(),
        results,
        manifest: RunManifest::new("divergence", &[&a.rho, &a.sigma], 0)
            .param("kind", k.name())
            .param("alpha", alphas.join(","))
            .param("units", units.name()),
    };
    emit(&(to_json(&out) + "\n"), None)
}

#[derive(Serialize)]
struct InfoOutput {
    variant: String,
    kind: &'static str,
    alpha: ExtendedValue,
    units: &'static str,
    value: ExtendedValue,
    mean: MatrixJson,
    iterations: usize,
    residual: f64,
    limit_estimate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    prior: Option<Vec<f64>>,
    manifest: RunManifest,
}

pub fn info(a: &InfoArgs, units: Units, command: &str) -> CliResult<()> {
    let k = kind(&a.kind)?;
    let variant = InfoVariant::from_index(a.variant)?;
    let ch = load_channel(&a.channel)?;
    let p = load_prior(&a.prior, ch.input_size())?;
    let r = information(variant, k, &p, &ch, a.alpha, &OptimizerOptions::default())?;
    let out = InfoOutput {
        variant: variant.to_string(),
        kind: k.name(),
        alpha: ExtendedValue::from_f64(a.alpha),
        units: units.name(),
        value: r.value.map(|x| x * units.scale()),
        mean: MatrixJson::from_matrix(r.mean.matrix()),
        iterations: r.iterations,
        residual: r.residual,
        limit_estimate: r.limit_estimate,
        prior: None,
        manifest: RunManifest::new(command, &prior_inputs(&a.prior, &a.channel), 0)
            .param("i", a.variant)
            .param("kind", k.name())
            .param("alpha", a.alpha)
            .param("uniform", a.prior.uniform)
            .param("units", units.name()),
    };
    emit(&(to_json(&out) + "\n"), None)
}

pub fn capacity_cmd(a: &CapacityArgs, units: Units) -> CliResult<()> {
    let k = kind(&a.kind)?;
    let variant = InfoVariant::from_index(a.variant)?;
    let ch = load_channel(&a.channel)?;
    let opts = ExponentOptions {
        seed: a.seed,
        ..ExponentOptions::default()
    };
    let c = capacity(variant, k, &ch, a.alpha, &opts)?;
    let m = information(variant, k, &c.prior, &ch, a.alpha, &opts.optimizer)?;
    let out = InfoOutput {
        variant: variant.to_string(),
        kind: k.name(),
        alpha: ExtendedValue::from_f64(a.alpha),
        units: units.name(),
        value: c.value.map(|x| x * units.scale()),
        mean: MatrixJson::from_matrix(m.mean.matrix()),
        iterations: c.iterations,
        residual: m.residual,
        limit_estimate: m.limit_estimate,
        prior: Some(c.prior.weights().to_vec()),
        manifest: RunManifest::new("capacity", &[&a.channel], a.seed)
            .param("i", a.variant)
            .param("kind", k.name())
            .param("alpha", a.alpha)
            .param("units", units.name()),
    };
    emit(&(to_json(&out) + "\n"), None)
}

fn write_curve(
    x_name: &str,
    rows: &[CurveRow],
    output: &crate::args::CurveOutput,
    manifest: RunManifest,
) -> CliResult<()> {
    let csv = curve_csv(x_name, rows)?;
    emit(&csv, output.out.as_deref())?;
    if let Some(path) = manifest_path(output.out.as_deref(), output.manifest.as_deref()) {
        emit(&(to_json(&manifest) + "\n"), Some(&path))?;
    }
    Ok(())
}

pub fn e0_curve(a: &E0CurveArgs, units: Units) -> CliResult<()> {
    let k = kind(&a.kind)?;
    let opts = OptimizerOptions::default();
    let scale = units.scale();
    let grid: Vec<String> = a.s_grid.iter().map(|s| s.to_string()).collect();
    let (rows, manifest) = if let Some(path) = &a.channel {
        let variant = InfoVariant::from_index(a.variant)?;
        let ch = load_channel(path)?;
        let p = load_prior(&a.prior, ch.input_size())?;
        let rows = a
            .s_grid
            .iter()
            .map(|&s| {
                Ok(CurveRow {
                    x: s,
                    value: e0(variant, k, s, &p, &ch, &opts)?.map(|x| x * scale),
                    argmax_s: None,
                    unbounded: false,
                })
            })
            .collect::<CliResult<Vec<_>>>()?;
        let m = RunManifest::new("e0-curve", &prior_inputs(&a.prior, path), 0)
            .param("i", a.variant)
            .param("uniform", a.prior.uniform);
        (rows, m)
    } else {
        let path = a.source.as_ref().expect("clap requires --channel or --source");
        let src = parse_source(&read_file(path)?)?;
        let rows = a
            .s_grid
            .iter()
            .map(|&s| {
                let v = if a.type_dependent {
                    e0_source_type(k, s, &src, &opts)?
                } else {
                    e0_source_iid(k, s, &src, &opts)?
                };
                Ok(CurveRow {
                    x: s,
                    value: ExtendedValue::from_f64(v * scale),
                    argmax_s: None,
                    unbounded: false,
                })
            })
            .collect::<CliResult<Vec<_>>>()?;
        let m = RunManifest::new("e0-curve", &[path.as_path()], 0)
            .param("type_dependent", a.type_dependent);
        (rows, m)
    };
    let manifest = manifest
        .param("kind", k.name())
        .param("s_grid", grid.join(","))
        .param("units", units.name());
    write_curve("s", &rows, &a.output, manifest)
}

fn exponent_row(rate: f64, r: &ExponentResult, scale: f64) -> CurveRow {
    CurveRow {
        x: rate,
        value: r.value.map(|x| x * scale),
        argmax_s: Some(r.argmax_s.s()),
        unbounded: r.unbounded,
    }
}

pub fn exponent(a: &ExponentArgs, units: Units) -> CliResult<()> {
    if !(a.s_max > 0.0) {
        return Err(CliError::Input(format!("--s-max must be positive, got {}", a.s_max)));
    }
    let opts = ExponentOptions {
        upper: a.s_max,
        seed: a.seed,
        ..ExponentOptions::default()
    };
    let scale = units.scale();
    let rates: Vec<String> = a.rates.iter().map(|r| r.to_string()).collect();
    let (rows, manifest) = if let Some(path) = &a.channel {
        let ch = load_channel(path)?;
        let fixed = if a.prior.prior.is_some() || a.prior.uniform {
            Some(load_prior(&a.prior, ch.input_size())?)
        } else {
            None
        };
        let rows = a
            .rates
            .iter()
            .map(|&rate| {
                let nats = rate / scale;
                let r = match &fixed {
                    Some(p) => channel_exponent_for_prior(nats, p, &ch, &opts)?,
                    None => channel_exponent(nats, &ch, &opts)?.exponent,
                };
                Ok(exponent_row(rate, &r, scale))
            })
            .collect::<CliResult<Vec<_>>>()?;
        let m = RunManifest::new("exponent", &prior_inputs(&a.prior, path), a.seed)
            .param("target", "channel")
            .param("prior_optimized", fixed.is_none())
            .param("uniform", a.prior.uniform);
        (rows, m)
    } else {
        let path = a.source.as_ref().expect("clap requires --channel or --source");
        let src = parse_source(&read_file(path)?)?;
        let fixed = match &a.fixed_type {
            Some(t) => Some(parse_prior(&read_file(t)?)?),
            None => None,
        };
        let rows = a
            .rates
            .iter()
            .map(|&rate| {
                let r = source_exponent(rate / scale, &src, fixed.as_ref(), &opts)?;
                Ok(exponent_row(rate, &r, scale))
            })
            .collect::<CliResult<Vec<_>>>()?;
        let mut inputs = vec![path.as_path()];
        if let Some(t) = &a.fixed_type {
            inputs.push(t.as_path());
        }
        let m = RunManifest::new("exponent", &inputs, a.seed)
            .param("target", "source")
            .param("type_dependent", fixed.is_some());
        (rows, m)
    };
    let manifest = manifest
        .param("rate", rates.join(","))
        .param("s_max", a.s_max)
        .param("units", units.name());
    write_curve("R", &rows, &a.output, manifest)
}

pub fn check(a: &CheckArgs) -> CliResult<()> {
    let mut config = Config::select(&a.suite)?;
    config.trials = a.trials;
    config.dim = a.dim;
    let reports = run_all(&config, a.seed)?;
    emit(&(to_json(&reports) + "\n"), a.out.as_deref())?;
    if let Some(out) = &a.out {
        let manifest = RunManifest::new("check", &[], a.seed)
            .param("suite", &a.suite)
            .param("trials", a.trials.map(|t| t.to_string()).unwrap_or_default())
            .param("dim", a.dim.map(|d| d.to_string()).unwrap_or_default());
        let path = manifest_path(Some(out), None).expect("path from --out");
        emit(&(to_json(&manifest) + "\n"), Some(&path))?;
    }
    if all_passed(&reports) {
        Ok(())
    } else {
        Err(CliError::ChecksFailed)
    }
}
