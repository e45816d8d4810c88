//! `fim`: JSON reports on truncated `FI^m`-modules.

use std::io::Read;
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use fim_core::cohomology::{is_semi_induced, nagpal_complex, torsion_split, NagpalOptions, ShiftPolicy};
use fim_core::homology::{default_search, h0, hd_set_from_table, homology_tables, semi_induced_resolution};
use fim_core::module::{preset, ModuleFile, PresetName};
use fim_core::regularity::{cmreg, theorem_a_complex};
use fim_core::{DegreeBox, DegreeVector, Error, FieldSpec, TruncatedModule, Window};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Verb {
    Validate,
    Dims,
    H0,
    Homology,
    Hd,
    Torsion,
    Lc,
    Cmreg,
    TheoremA,
    Resolve,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Policy {
    GradedLex,
    Uniform,
}

#[derive(Debug, Parser)]
#[command(name = "fim", version, about = "Homology, local cohomology and regularity of truncated FI^m-modules")]
struct Cli {
    #[arg(value_enum)]
    verb: Verb,
    /// Preset module: paper-example-V, paper-example-K, constant, point(n), induced(r), regular(r).
    #[arg(long, conflicts_with = "module")]
    preset: Option<String>,
    /// Module file in JSON format, `-` for stdin, or a preset name.
    #[arg(long)]
    module: Option<String>,
    /// Upper corner of the degree box, e.g. `6,6`; a single number is used in every coordinate.
    #[arg(long)]
    window: Option<String>,
    /// Characteristic of the coefficient field.
    #[arg(long, default_value_t = fim_core::linalg::DEFAULT_PRIME)]
    p: u32,
    /// Lower corner of regularity and HD searches (default: minus the window).
    #[arg(long, allow_hyphen_values = true)]
    lower: Option<String>,
    /// Depth of the Koszul test for semi-inducedness.
    #[arg(long, default_value_t = 2)]
    imax: usize,
    /// Include the Nagpal complex audit trail.
    #[arg(long)]
    trace: bool,
    /// Indent the JSON output.
    #[arg(long)]
    pretty: bool,
    /// Homological or cohomological index.
    #[arg(long)]
    i: Option<usize>,
    /// Starting degree for theorem-a.
    #[arg(long)]
    r: Option<String>,
    /// Step vector for theorem-a.
    #[arg(long)]
    c: Option<String>,
    /// Number of steps for theorem-a and resolve.
    #[arg(long, default_value_t = 2)]
    length: usize,
    /// Order in which Nagpal shifts are tried.
    #[arg(long, value_enum, default_value_t = Policy::GradedLex)]
    policy: Policy,
    /// Distance from the top of the window at which torsion is no longer certified.
    #[arg(long, default_value_t = 1)]
    margin: usize,
    /// Maximal number of Nagpal steps.
    #[arg(long, default_value_t = 4)]
    max_length: usize,
}

const DEFAULT_WINDOW: usize = 5;

fn parse_vec(s: &str) -> anyhow::Result<Vec<i64>> {
    s.trim_matches(|c| c == '(' || c == ')' || c == '[' || c == ']')
        .split(',')
        .map(|t| t.trim().parse::<i64>().with_context(|| format!("bad integer `{t}` in `{s}`")))
        .collect()
}

fn parse_naturals(s: &str) -> anyhow::Result<Vec<usize>> {
    parse_vec(s)?
        .into_iter()
        .map(|x| usize::try_from(x).map_err(|_| anyhow!("negative coordinate in `{s}`")))
        .collect()
}

fn window_for(m: usize, spec: Option<&str>) -> anyhow::Result<DegreeBox> {
    let upper = match spec {
        None => vec![DEFAULT_WINDOW; m],
        Some(s) => {
            let v = parse_naturals(s)?;
            match v.len() {
                1 => vec![v[0]; m],
                k if k == m => v,
                k => bail!("window `{s}` has {k} coordinates, module has m = {m}"),
            }
        }
    };
    Ok(DegreeBox::new(upper))
}

/// Ambient `m` of a preset, or `None` when it follows the window.
fn preset_m(name: &PresetName) -> Option<usize> {
    match name {
        PresetName::ExampleV | PresetName::ExampleK => Some(2),
        PresetName::Constant => None,
        PresetName::Point(n) | PresetName::Induced(n) | PresetName::Regular(n) => Some(n.len()),
    }
}

struct Loaded {
    source: String,
    module: TruncatedModule,
}

fn load_preset(name: &str, cli: &Cli, field: FieldSpec) -> anyhow::Result<Loaded> {
    let parsed: PresetName = name.parse()?;
    let m = match preset_m(&parsed) {
        Some(m) => m,
        None => cli.window.as_deref().map(|w| parse_naturals(w).map(|v| v.len())).transpose()?.unwrap_or(1),
    };
    let window = window_for(m, cli.window.as_deref())?;
    Ok(Loaded {
        source: parsed.to_string(),
        module: preset(&parsed, field, &window)?,
    })
}

fn load(cli: &Cli) -> anyhow::Result<Loaded> {
    let field = FieldSpec::new(cli.p)?;
    if let Some(name) = &cli.preset {
        return load_preset(name, cli, field);
    }
    let Some(src) = &cli.module else {
        bail!("one of --preset or --module is required");
    };
    let text = if src == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else if Path::new(src).exists() {
        std::fs::read_to_string(src).with_context(|| format!("reading {src}"))?
    } else {
        return load_preset(src, cli, field);
    };
    let file: ModuleFile = serde_json::from_str(&text).map_err(|e| Error::Format(format!("{src}: {e}")))?;
    let mut module = file.to_module()?;
    if let Some(w) = &cli.window {
        let window = window_for(module.m(), Some(w))?;
        module = module.restrict(&window)?;
    }
    Ok(Loaded {
        source: src.clone(),
        module,
    })
}

fn nagpal_options(cli: &Cli) -> NagpalOptions {
    NagpalOptions {
        policy: match cli.policy {
            Policy::GradedLex => ShiftPolicy::GradedLex,
            Policy::Uniform => ShiftPolicy::Uniform,
        },
        max_length: cli.max_length,
        margin: cli.margin,
        imax: cli.imax,
        ..NagpalOptions::default()
    }
}

fn lower_bound(cli: &Cli, m: usize) -> anyhow::Result<Option<DegreeVector>> {
    cli.lower
        .as_deref()
        .map(|s| {
            let v = parse_vec(s)?;
            match v.len() {
                1 => Ok(DegreeVector(vec![v[0]; m])),
                k if k == m => Ok(DegreeVector(v)),
                k => bail!("lower bound `{s}` has {k} coordinates, module has m = {m}"),
            }
        })
        .transpose()
}

enum Outcome {
    Ok(Value),
    Invalid(Value),
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let Loaded { source, module } = load(cli)?;
    let v = Arc::new(module);
    let m = v.m();
    let mut report = serde_json::Map::new();
    report.insert("format".into(), json!(1));
    report.insert("verb".into(), json!(format!("{:?}", cli.verb).to_lowercase()));
    report.insert("module".into(), json!(source));
    report.insert("p".into(), json!(v.field().characteristic()));
    report.insert("window".into(), json!(v.window().upper));

    if cli.verb != Verb::Validate {
        let violations = v.validate();
        if !violations.is_empty() {
            report.insert("valid".into(), json!(false));
            report.insert("violations".into(), json!(violations));
            return Ok(Outcome::Invalid(Value::Object(report)));
        }
    }
    let opts = nagpal_options(cli);
    let policy = json!({"shift_policy": opts.policy.id(), "imax": opts.imax, "margin": opts.margin, "basis": "lex-first-pivots"});

    match cli.verb {
        Verb::Validate => {
            let violations = v.validate();
            let valid = violations.is_empty();
            report.insert("valid".into(), json!(valid));
            report.insert("violations".into(), json!(violations));
            if !valid {
                return Ok(Outcome::Invalid(Value::Object(report)));
            }
        }
        Verb::Dims => {
            report.insert("dims".into(), serde_json::to_value(v.dims())?);
        }
        Verb::H0 => {
            let h = h0(&v);
            report.insert("support".into(), json!(h.dims.support()));
            report.insert("h0".into(), serde_json::to_value(&h.dims)?);
        }
        Verb::Homology => {
            let i = cli.i.unwrap_or(1);
            let tables = homology_tables(&v, i);
            report.insert("i".into(), json!(i));
            report.insert("support".into(), json!(tables[i].support()));
            report.insert("homology".into(), serde_json::to_value(&tables[i])?);
        }
        Verb::Hd => {
            let i = cli.i.unwrap_or(0);
            let mut search = default_search(v.window());
            if let Some(l) = lower_bound(cli, m)? {
                search = Window::new(l, search.upper)?;
            }
            let tables = homology_tables(&v, i);
            let hd = hd_set_from_table(&tables[i], search)?;
            report.insert("i".into(), json!(i));
            report.insert("naturals".into(), serde_json::to_value(hd.naturals()?)?);
            report.insert("hd".into(), serde_json::to_value(&hd)?);
        }
        Verb::Torsion => {
            let split = torsion_split(&v, cli.margin)?;
            report.insert("reliable".into(), json!(split.reliable.upper));
            report.insert("torsion".into(), serde_json::to_value(split.torsion.restrict(&split.reliable)?.dims())?);
            report.insert("free".into(), serde_json::to_value(split.free.restrict(&split.reliable)?.dims())?);
            report.insert("semi_induced".into(), serde_json::to_value(is_semi_induced(&v, cli.imax))?);
        }
        Verb::Lc => {
            let i = cli.i.unwrap_or(0);
            let complex = nagpal_complex(&v, &opts)?;
            let h = complex.local_cohomology(i).unwrap_or_else(|| {
                Err(Error::WindowExhausted {
                    reason: format!("Nagpal complex stopped after {} steps", complex.steps.len()),
                    largest_shift: complex.steps.last().map(|s| s.shift.clone()),
                })
            })?;
            report.insert("i".into(), json!(i));
            report.insert("policy".into(), policy);
            report.insert("reliable".into(), json!(h.window().upper));
            report.insert("support".into(), json!(h.dims().support()));
            report.insert("dims".into(), serde_json::to_value(h.dims())?);
            if cli.trace {
                report.insert("trace".into(), serde_json::to_value(complex.trace())?);
            }
        }
        Verb::Cmreg => {
            let lower = lower_bound(cli, m)?;
            let reg = cmreg(&v, lower.clone(), &opts)?;
            let plus = fim_core::regularity::cmreg_plus(&v, lower, &opts)?;
            report.insert("policy".into(), policy);
            report.insert("naturals".into(), serde_json::to_value(&reg.naturals)?);
            report.insert("cmreg".into(), serde_json::to_value(&reg.set)?);
            report.insert("cmreg_plus".into(), serde_json::to_value(&plus.set)?);
            report.insert("cohomology_range".into(), json!(reg.cohomology_range));
            report.insert("complete".into(), json!(reg.complete));
            if cli.trace {
                report.insert("trace".into(), serde_json::to_value(nagpal_complex(&v, &opts)?.trace())?);
            }
        }
        Verb::TheoremA => {
            let r = parse_naturals(cli.r.as_deref().ok_or_else(|| anyhow!("theorem-a needs --r"))?)?;
            let c = match &cli.c {
                Some(c) => parse_naturals(c)?,
                None => vec![1; m],
            };
            let t = theorem_a_complex(&v, &r, &c, cli.length, &opts)?;
            report.insert("policy".into(), policy);
            report.insert("report".into(), serde_json::to_value(&t.report)?);
        }
        Verb::Resolve => {
            let res = semi_induced_resolution(&v, cli.length)?;
            report.insert("length".into(), json!(cli.length));
            report.insert("resolution".into(), serde_json::to_value(res.report())?);
        }
    }
    Ok(Outcome::Ok(Value::Object(report)))
}

fn emit(value: &Value, pretty: bool) {
    let text = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    };
    println!("{}", text.expect("JSON values serialize"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Ok(v)) => {
            emit(&v, cli.pretty);
            ExitCode::SUCCESS
        }
        Ok(Outcome::Invalid(v)) => {
            emit(&v, cli.pretty);
            ExitCode::from(1)
        }
        Err(e) => {
            let (code, extra) = match e.downcast_ref::<Error>() {
                Some(Error::WindowExhausted { largest_shift, .. }) => (2, json!({ "largest_shift": largest_shift })),
                _ => (1, json!({})),
            };
            let mut out = json!({"format": 1, "error": format!("{e:#}")});
            if let (Some(o), Some(x)) = (out.as_object_mut(), extra.as_object()) {
                o.extend(x.clone());
            }
            emit(&out, cli.pretty);
            eprintln!("fim: {e:#}");
            ExitCode::from(code)
        }
    }
}
