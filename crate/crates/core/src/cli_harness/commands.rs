//! The subcommands. Each produces a [`Report`]: a structured document, a
//! plain-text table and an exit status.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use serde::Serialize;
use serde_json::{json, Value};

use super::args::{Command, Format, RunConfig};
use super::classes::{chain_terms, parse_element, ClassFile};
use super::suites::Suites;
use crate::algebra_models::{fixture_source, parse_model, validate, AlgebraModel, ValidationReport};
use crate::cyclic::{hc_minus_table, Bv, StringBracket};
use crate::error::{Error, Result};
use crate::graded_core::Vector;
use crate::hochschild::{hochschild_table, ChainSpace, DimEntry, Path};
use crate::mc_moduli::{grid, integer_grid, nilpotent_iteration, McPoint, Mc, Origin, Strategy, TangentComplex};
use crate::rho_bridge::{resolve_classes, verify_theorem1, ClassChoice, Theorem1Summary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_AXIOM: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_UNCERTIFIED: i32 = 4;

/// Report schema version, bumped on incompatible changes.
pub const REPORT_VERSION: u32 = 1;

pub struct Report {
    pub exit: i32,
    pub json: Value,
    pub table: String,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("reports are plain JSON");
                s.push('\n');
                s
            }
            Format::Table => self.table.clone(),
        }
    }
}

fn meaning(exit: i32) -> &'static str {
    match exit {
        EXIT_OK => "ok",
        EXIT_INPUT => "input error",
        EXIT_AXIOM => "axiom failure",
        EXIT_VERIFY => "verification failure",
        _ => "not certified: some results did not stabilize",
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Input(_) | Error::Parse { .. } | Error::Truncation(_) => EXIT_INPUT,
        Error::Axiom { .. } => EXIT_AXIOM,
        Error::Integrity(_) | Error::Verification(_) => EXIT_VERIFY,
    }
}

fn envelope(cfg: &RunConfig, exit: i32, body: (&str, Value)) -> Value {
    json!({
        "version": REPORT_VERSION,
        "command": cfg.command,
        "config": cfg,
        "status": { "exit": exit, "meaning": meaning(exit) },
        body.0: body.1,
    })
}

/// Runs one configured command; errors become reports with their exit status.
pub fn run(cfg: &RunConfig) -> Report {
    let r = match cfg.command {
        Command::Check => check(cfg),
        Command::Hochschild => hochschild(cfg),
        Command::Cyclic => cyclic(cfg),
        Command::Bracket => bracket(cfg),
        Command::Mc => mc(cfg),
        Command::Theorem1 => theorem1(cfg),
        Command::Report => report(cfg),
    };
    match r {
        Ok((exit, result, table)) => Report { exit, json: envelope(cfg, exit, ("result", result)), table },
        Err(e) => {
            let exit = exit_code(&e);
            Report { exit, json: envelope(cfg, exit, ("error", json!(e.to_string()))), table: format!("error: {e}\n") }
        }
    }
}

type Outcome = Result<(i32, Value, String)>;

fn source(cfg: &RunConfig) -> Result<String> {
    match std::fs::read_to_string(&cfg.model) {
        Ok(s) => Ok(s),
        Err(e) => fixture_source(&cfg.model)
            .map(str::to_string)
            .ok_or_else(|| Error::Input(format!("cannot read `{}` ({e}) and there is no bundled fixture of that name", cfg.model))),
    }
}

/// Parses, applies the convention override and validates.
fn load(cfg: &RunConfig) -> Result<(AlgebraModel, ValidationReport)> {
    let mut m = parse_model(&source(cfg)?)?;
    if let Some(c) = cfg.convention {
        m.convention = c;
    }
    let r = validate(&m);
    if !r.passes_under(m.convention) {
        let f: Vec<_> = r.failures().filter(|k| k.convention.is_none() || k.convention == Some(m.convention)).collect();
        let witness = f.iter().map(|k| format!("{} at {}", k.axiom, k.witness.as_deref().unwrap_or(""))).collect::<Vec<_>>().join("; ");
        return Err(Error::Axiom { axiom: f[0].axiom.clone(), witness });
    }
    Ok((m, r))
}

fn working_model(cfg: &RunConfig) -> Result<(AlgebraModel, Path)> {
    let (m, _) = load(cfg)?;
    if cfg.as_a_infinity {
        return Ok((m.as_a_infinity(), Path::Bar));
    }
    let path = Path::for_model(&m);
    Ok((m, path))
}

fn weights(cfg: &RunConfig, m: &AlgebraModel) -> RangeInclusive<i64> {
    if let Some(w) = &cfg.weights {
        return w.clone();
    }
    let lo = (0..m.dim()).map(|i| m.weight(i)).min().unwrap_or(0);
    let hi = (0..m.dim()).map(|i| m.weight(i)).max().unwrap_or(0);
    match (lo, hi) {
        (0, 0) => 0..=0,
        (lo, _) if lo < 0 => -2..=2,
        _ => 0..=4,
    }
}

fn model_json(m: &AlgebraModel, path: Path) -> Value {
    json!({ "name": m.name, "dim": m.dim(), "kind": m.kind, "path": path, "trace_degree": m.trace_degree() })
}

fn check(cfg: &RunConfig) -> Outcome {
    let mut m = parse_model(&source(cfg)?)?;
    if let Some(c) = cfg.convention {
        m.convention = c;
    }
    let r = validate(&m);
    let passing = r.passing_conventions();
    let ok = match cfg.convention {
        Some(c) => r.passes_under(c),
        None => !passing.is_empty(),
    };
    let exit = if ok { EXIT_OK } else { EXIT_AXIOM };
    let mut t = format!("model {} ({} basis elements)\n", m.name, m.dim());
    for k in &r.checks {
        let conv = k.convention.map(|c| format!(" [{c}]")).unwrap_or_default();
        let w = k.witness.as_deref().map(|w| format!("  at {w}")).unwrap_or_default();
        let _ = writeln!(t, "  {:<4} {}{conv}{w}", if k.passed { "ok" } else { "FAIL" }, k.axiom);
    }
    let names: Vec<String> = passing.iter().map(ToString::to_string).collect();
    let _ = writeln!(t, "passing conventions: {}", if names.is_empty() { "none".into() } else { names.join(", ") });
    Ok((exit, json!({ "model": m.name, "checks": r.checks, "passing_conventions": passing }), t))
}

fn dim_table(title: &str, rows: &[DimEntry]) -> String {
    let mut t = format!("{title}\n{:>7} {:>7} {:>6} {:>9} {:>11}\n", "weight", "degree", "dim", "complete", "stabilized");
    for e in rows {
        let _ = writeln!(t, "{:>7} {:>7} {:>6} {:>9} {:>11}", e.weight, e.degree, e.dim, e.complete, e.stabilized);
    }
    t
}

fn certified(cfg: &RunConfig, rows: &[DimEntry]) -> i32 {
    if cfg.certify && rows.iter().any(|e| !e.stabilized) {
        EXIT_UNCERTIFIED
    } else {
        EXIT_OK
    }
}

fn hochschild(cfg: &RunConfig) -> Outcome {
    let (m, path) = working_model(cfg)?;
    let sp = ChainSpace::new(&m, path, cfg.w + 2)?;
    let ws = weights(cfg, &m);
    let rows = hochschild_table(&sp, cfg.coefficients, cfg.degrees.clone(), ws, cfg.w)?;
    let title = format!("{}: Hochschild {:?} at W={}", m.name, cfg.coefficients, cfg.w);
    let exit = certified(cfg, &rows);
    Ok((exit, json!({ "model": model_json(&m, path), "coefficients": cfg.coefficients, "rows": rows }), dim_table(&title, &rows)))
}

fn cyclic(cfg: &RunConfig) -> Outcome {
    let (m, path) = working_model(cfg)?;
    let sp = ChainSpace::new(&m, path, cfg.w + cfg.u_max + 2)?;
    let ws = weights(cfg, &m);
    let rows = hc_minus_table(&sp, cfg.side, cfg.degrees.clone(), ws, cfg.w, cfg.u_max)?;
    let title = format!("{}: HC⁻ {:?} at (W, U) = ({}, {})", m.name, cfg.side, cfg.w, cfg.u_max);
    let exit = certified(cfg, &rows);
    Ok((exit, json!({ "model": model_json(&m, path), "side": cfg.side, "rows": rows }), dim_table(&title, &rows)))
}

fn class_choice(cfg: &RunConfig, m: &AlgebraModel) -> Result<Option<ClassChoice>> {
    if cfg.classes.is_empty() {
        return Ok(None);
    }
    let mut picks = Vec::new();
    let mut given = Vec::new();
    for c in &cfg.classes {
        if let Ok(text) = std::fs::read_to_string(c) {
            let f: ClassFile = serde_json::from_str(&text).map_err(|e| Error::Input(format!("class file `{c}`: {e}")))?;
            given.push(f.to_class(m)?);
            continue;
        }
        let parts: Vec<&str> = c.split(',').map(str::trim).collect();
        let bad = || Error::Input(format!("`{c}` is neither a class file nor degree,weight,index"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let p: i64 = parts[0].parse().map_err(|_| bad())?;
        let wt: i64 = parts[1].parse().map_err(|_| bad())?;
        let i: usize = parts[2].parse().map_err(|_| bad())?;
        picks.push((p, wt, i));
    }
    match (picks.is_empty(), given.is_empty()) {
        (false, true) => Ok(Some(ClassChoice::Basis(picks))),
        (true, false) => Ok(Some(ClassChoice::Given(given))),
        _ => Err(Error::Input("mix of class files and basis indices; use one kind".into())),
    }
}

fn bracket(cfg: &RunConfig) -> Outcome {
    let (m, path) = working_model(cfg)?;
    let choice = class_choice(cfg, &m)?.ok_or_else(|| Error::Input("bracket needs two --class arguments".into()))?;
    let sp = ChainSpace::new(&m, path, cfg.w + cfg.u_max + 2)?;
    let bv = Bv::new(&sp, cfg.w)?;
    let sb = StringBracket::new(&bv, cfg.u_max)?;
    let (cls, unstabilized) = resolve_classes(&sb, &choice)?;
    let [a, b] = cls.as_slice() else {
        return Err(Error::Input(format!("bracket needs exactly two classes, got {}", cls.len())));
    };
    let ba = sb.script_b(a)?;
    let bb = sb.script_b(b)?;
    let cup = bv.cup(&ba, &bb)?;
    let out = sb.bracket(a, b)?;
    let zero_class = sb.is_null(&out)?;
    let coords = sb.homology(out.weight, out.degree)?.coords(&sb.hc(out.weight, out.degree)?.coords(out.degree, &out.comps));
    let coords: Option<Vec<(usize, String)>> = coords.map(|v| v.iter().map(|(i, c)| (*i, c.to_string())).collect());
    let exit = if cfg.certify && !unstabilized.is_empty() { EXIT_UNCERTIFIED } else { EXIT_OK };
    let result = json!({
        "model": model_json(&m, path),
        "alpha": ClassFile::from_class(&m, a),
        "beta": ClassFile::from_class(&m, b),
        "ledger": {
            "script_b_alpha": { "degree": ba.degree, "terms": chain_terms(&m, &ba.rep) },
            "script_b_beta": { "degree": bb.degree, "terms": chain_terms(&m, &bb.rep) },
            "cup": { "degree": cup.degree, "weight": cup.weight, "terms": chain_terms(&m, &cup.rep) },
            "sign": if a.degree % 2 == 0 { 1 } else { -1 },
        },
        "bracket": ClassFile::from_class(&m, &out),
        "lie_degree": sb.lie_degree(&out),
        "is_zero_class": zero_class,
        "basis_coordinates": coords,
        "unstabilized": unstabilized,
    });
    let mut t = format!("{}: {{α,β}} for α in ({}, {}), β in ({}, {})\n", m.name, a.degree, a.weight, b.degree, b.weight);
    let _ = writeln!(t, "  𝓑•α: {} terms, 𝓑•β: {} terms, ⊔: {} terms", ba.rep.len(), bb.rep.len(), cup.rep.len());
    let _ = writeln!(t, "  bracket in degree {} weight {}: {}", out.degree, out.weight, if zero_class { "zero class".to_string() } else { format!("{} terms in α₀", out.leading().len()) });
    if let Some(c) = &result["basis_coordinates"].as_array() {
        let c: Vec<String> = c.iter().map(|x| format!("{}:{}", x[0], x[1].as_str().unwrap_or(""))).collect();
        let _ = writeln!(t, "  basis coordinates: [{}]", c.join(", "));
    }
    Ok((exit, result, t))
}

fn points(cfg: &RunConfig, mc: &Mc) -> Result<Vec<McPoint>> {
    let m = mc.model;
    let values = integer_grid(*cfg.grid.start(), *cfg.grid.end());
    let supplied = || -> Result<Vec<McPoint>> {
        cfg.mc_points
            .iter()
            .map(|s| Ok(McPoint { element: parse_element(m, s)?, origin: Origin::Supplied }))
            .collect()
    };
    match cfg.strategy {
        Strategy::VerifyOnly => {
            if cfg.mc_points.is_empty() {
                return Err(Error::Input("verify-only needs at least one --mc-point".into()));
            }
            supplied()
        }
        Strategy::Grid if !cfg.mc_points.is_empty() => supplied(),
        Strategy::Grid => Ok(grid(mc, &values)),
        Strategy::NilpotentIteration => nilpotent_iteration(mc, &values),
    }
}

#[derive(Serialize)]
struct PointRow {
    point: String,
    origin: Origin,
    residual: String,
    is_mc: bool,
    h0_dim: Option<usize>,
    radical_dim: Option<usize>,
    self_duality: Option<String>,
}

fn mc(cfg: &RunConfig) -> Outcome {
    let (m, path) = working_model(cfg)?;
    let mc = Mc::new(&m, path)?;
    let pts = points(cfg, &mc)?;
    let mut rows = Vec::new();
    for p in &pts {
        mc.check_odd(&p.element)?;
        let r = mc.residual(&p.element);
        let is_mc = r.is_zero();
        let tc = if is_mc { Some(TangentComplex::new(&mc, &p.element)?) } else { None };
        rows.push(PointRow {
            point: m.format_element(&p.element),
            origin: p.origin,
            residual: m.format_element(&r),
            is_mc,
            h0_dim: tc.as_ref().map(|t| t.h0_dim()),
            radical_dim: tc.as_ref().map(|t| t.h0_radical_dim()),
            self_duality: tc.as_ref().map(|t| format!("{:?}", t.duality)),
        });
    }
    let rejected = rows.iter().filter(|r| !r.is_mc).count();
    let exit = if rejected > 0 { EXIT_VERIFY } else { EXIT_OK };
    let mut t = format!("{}: {} points ({:?}), {} rejected\n", m.name, rows.len(), cfg.strategy, rejected);
    for r in &rows {
        let h0 = r.h0_dim.map(|d| d.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(t, "  {:<24} residual {:<12} H0 {h0}", r.point, r.residual);
    }
    Ok((exit, json!({ "model": model_json(&m, path), "strategy": cfg.strategy, "points": rows, "rejected": rejected }), t))
}

fn theorem_table(m: &AlgebraModel, s: &Theorem1Summary) -> String {
    let mut t = format!(
        "{}: {}/{} equalities hold over {} classes and {} points ({} with nonzero value); fields agree {}/{}\n",
        m.name,
        s.holds,
        s.pairs,
        s.classes.len(),
        s.points,
        s.nonzero,
        s.fields_agree,
        s.fields
    );
    let _ = writeln!(t, "{:>10} {:>10} {:<24} {:>12} {:>12} {:>6}", "alpha", "beta", "point", "lhs", "rhs", "holds");
    let n = s.classes.len().max(1);
    let label = |i: usize| format!("#{i}{:?}", s.classes[i]);
    for (k, r) in s.records.iter().enumerate() {
        let rhs = r.rhs.as_ref().map(ToString::to_string).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            t,
            "{:>10} {:>10} {:<24} {:>12} {:>12} {:>6}",
            label((k / n) % n),
            label(k % n),
            r.point,
            r.lhs.to_string(),
            rhs,
            r.holds
        );
    }
    if !s.unstabilized.is_empty() {
        let _ = writeln!(t, "unstabilized pieces: {:?}", s.unstabilized);
    }
    t
}

fn theorem1(cfg: &RunConfig) -> Outcome {
    let (m, path) = working_model(cfg)?;
    let choice = match class_choice(cfg, &m)? {
        Some(c) => c,
        None => ClassChoice::Stabilized { degrees: cfg.degrees.clone().filter(|p| p % 2 == 0).collect(), weights: weights(cfg, &m) },
    };
    let mc = Mc::new(&m, path)?;
    let pts: Vec<Vector<usize>> = points(cfg, &mc)?.into_iter().map(|p| p.element).collect();
    let s = verify_theorem1(&m, path, (cfg.w, cfg.u_max), &choice, &pts)?;
    let exit = if !s.verified() {
        EXIT_VERIFY
    } else if cfg.certify && !s.unstabilized.is_empty() {
        EXIT_UNCERTIFIED
    } else {
        EXIT_OK
    };
    let t = theorem_table(&m, &s);
    Ok((exit, json!({ "model": model_json(&m, path), "summary": s }), t))
}

fn report(cfg: &RunConfig) -> Outcome {
    let suites = Suites::new();
    let ids: Vec<usize> = if cfg.only.is_empty() { (1..=12).collect() } else { cfg.only.clone() };
    let outcomes: Vec<_> = ids.iter().map(|&i| suites.run(i)).collect();
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let mut t = String::new();
    for o in &outcomes {
        let _ = writeln!(t, "{} criterion {:>2} {}: {} exact checks; {}", if o.passed { "PASS" } else { "FAIL" }, o.id, o.name, o.checks, o.detail);
    }
    let exit = if failed > 0 { EXIT_VERIFY } else { EXIT_OK };
    Ok((exit, json!({ "criteria": outcomes, "failed": failed }), t))
}

/// Parses arguments, runs, writes the rendered report and returns the exit status.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    use clap::Parser;
    let cli = match super::args::Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let cfg = match RunConfig::from_cli(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return exit_code(&e);
        }
    };
    let report = run(&cfg);
    let text = report.render(cfg.format);
    match &cfg.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("cannot write {}: {e}", p.display());
                return EXIT_INPUT;
            }
        }
        None => print!("{text}"),
    }
    report.exit
}
