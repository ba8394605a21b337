use std::fs::OpenOptions;
use std::io::Write;

use anyhow::{anyhow, bail, Context, Result};
use gswf_core::bfn::{level_weights, walsh_transform, Spectrum};
use gswf_core::catalog::{entries, eta, CatalogEntry, PRESET_NAMES};
use gswf_core::curves::{instability_curve, majority_stability_curve};
use gswf_core::rationality::{w_formula, w_monte_carlo, w_oracle};
use gswf_core::search::{extremal_w, random_search, ClassFilter, Objective};
use gswf_core::theorems::{majority_first_level_weight, neutral_lower_bound, run_all, run_check, CHECK_NAMES};
use gswf_core::{BooleanFunction, BoundReport, EvenProductDistribution, ExtremalResult, Gswf, Preset, TripleDistribution, WResult};
use serde::Serialize;

use crate::cli::{
    CatalogAction, CurveArgs, CurveKind, Format, MethodArg, ModeArg, ObjectiveArg, RationalityArgs, SearchArgs,
    SimulateArgs, SpectrumArgs, VerifyArgs,
};
use crate::inputs::{parse_f64_list, parse_function, parse_n_list, resolve_dist, resolve_triple, Dist};
use crate::output::{num, opt, short_hex, write_csv, write_json, SCHEMA_VERSION};

/// Exit status when a check fails.
pub const EXIT_CHECK_FAILED: u8 = 1;

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    command: &'a str,
    #[serde(flatten)]
    body: T,
}

fn envelope<T: Serialize>(command: &str, body: T) -> Envelope<'_, T> {
    Envelope {
        schema_version: SCHEMA_VERSION,
        command,
        body,
    }
}

// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct SpectrumOut {
    function: BooleanFunction,
    n: usize,
    expectation: f64,
    coefficients: Vec<f64>,
    level_weights: Vec<f64>,
}

fn subset_label(mask: usize) -> String {
    let voters: Vec<String> = (0..usize::BITS as usize)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", voters.join(","))
}

pub fn spectrum(a: &SpectrumArgs, format: Format, w: &mut dyn Write) -> Result<u8> {
    let f = parse_function(&a.function)?;
    let s = walsh_transform(&f);
    let out = SpectrumOut {
        n: f.n(),
        expectation: f.expectation(),
        coefficients: s.coeffs().to_vec(),
        level_weights: level_weights(&s),
        function: f,
    };
    match format {
        Format::Json => write_json(w, &envelope("spectrum", &out))?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = out
                .coefficients
                .iter()
                .enumerate()
                .map(|(m, c)| vec![m.to_string(), subset_label(m), m.count_ones().to_string(), num(*c)])
                .collect();
            write_csv(w, &["mask", "subset", "level", "coefficient"], &rows)?;
        }
        Format::Pretty => {
            writeln!(w, "function n={} table={} E[f]={}", out.n, short_hex(&out.function), out.expectation)?;
            for (m, c) in out.coefficients.iter().enumerate().filter(|(_, c)| c.abs() > 1e-15) {
                writeln!(w, "  f^{:<12} level {:>2}  {:+.15}", subset_label(m), m.count_ones(), c)?;
            }
            writeln!(w, "level weights: {:?}", out.level_weights)?;
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------------

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum DistOut {
    EvenProduct {
        alpha: f64,
        beta: f64,
        gamma: f64,
        deltas: [f64; 3],
    },
    General {
        #[serde(flatten)]
        probs: TripleDistribution,
    },
}

fn dist_out(d: &Dist) -> DistOut {
    match d {
        Dist::Even(e) => DistOut::EvenProduct {
            alpha: e.alpha(),
            beta: e.beta(),
            gamma: e.gamma(),
            deltas: e.deltas(),
        },
        Dist::General(t) => DistOut::General { probs: *t },
    }
}

#[derive(Serialize)]
struct RefBound {
    name: String,
    relation: &'static str,
    value: f64,
    holds: bool,
}

#[derive(Serialize)]
struct RationalityOut {
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    preset: Option<Preset>,
    functions: Gswf,
    distribution: DistOut,
    results: Vec<WResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_abs_diff: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    reference_bounds: Vec<RefBound>,
}

fn reference_bounds(preset: Option<&Preset>, n: usize, d: &Dist, w: f64) -> Result<Vec<RefBound>> {
    let Dist::Even(d) = d else { return Ok(vec![]) };
    let uniform = *d == EvenProductDistribution::uniform();
    let mut out = vec![];
    match preset {
        Some(Preset::AndDualMajority) if uniform => {
            let v = 0.471f64.powi(n as i32);
            out.push(RefBound {
                name: "0.471^n".into(),
                relation: "<=",
                value: v,
                holds: w <= v,
            });
        }
        Some(Preset::Condorcet) => {
            let v = neutral_lower_bound(majority_first_level_weight(n)?, d);
            out.push(RefBound {
                name: "(1/4 - d_m)(1 + sum of cubed deltas)".into(),
                relation: ">=",
                value: v,
                holds: w >= v - 1e-12,
            });
        }
        Some(Preset::ThresholdInstability { q }) if uniform => {
            out.push(RefBound {
                name: "eta = 2^(n H(q) - 1) / (n + 1)".into(),
                relation: "ratio",
                value: eta(n, *q)?,
                holds: true,
            });
        }
        _ => {}
    }
    Ok(out)
}

fn require_seed(seed: Option<u64>) -> Result<u64> {
    seed.ok_or_else(|| anyhow!("Monte Carlo needs --seed"))
}

fn evaluate(g: &Gswf, d: &Dist, method: MethodArg, samples: u64, seed: Option<u64>) -> Result<Vec<WResult>> {
    let general = |what: &str| anyhow!("--triples gives a general distribution; {what} is only valid for even product distributions (use --method oracle or mc)");
    Ok(match (method, d) {
        (MethodArg::Auto | MethodArg::Formula, Dist::Even(e)) => vec![w_formula(g, e)?],
        (MethodArg::Formula, Dist::General(_)) => return Err(general("the formula")),
        (MethodArg::Both, Dist::General(_)) => return Err(general("--method both")),
        (MethodArg::Auto | MethodArg::Oracle, _) => vec![w_oracle(g, &d.triple_distribution())?],
        (MethodArg::Both, Dist::Even(e)) => vec![w_formula(g, e)?, w_oracle(g, &d.triple_distribution())?],
        (MethodArg::Mc, _) => vec![w_monte_carlo(g, &d.triple_distribution(), samples, require_seed(seed)?)?],
    })
}

fn write_w_report(out: &RationalityOut, command: &str, format: Format, w: &mut dyn Write) -> Result<()> {
    match format {
        Format::Json => write_json(w, &envelope(command, out))?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = out
                .results
                .iter()
                .map(|r| {
                    let c = r.cross_terms.map(|c| c.map(num));
                    vec![
                        serde_json::to_value(r.method)
                            .ok()
                            .and_then(|v| v.as_str().map(str::to_owned))
                            .unwrap_or_default(),
                        r.n.to_string(),
                        num(r.w),
                        num(r.base),
                        c.as_ref().map(|c| c[0].clone()).unwrap_or_default(),
                        c.as_ref().map(|c| c[1].clone()).unwrap_or_default(),
                        c.as_ref().map(|c| c[2].clone()).unwrap_or_default(),
                        opt(r.samples),
                        opt(r.seed),
                        opt(r.stderr.map(num)),
                    ]
                })
                .collect();
            write_csv(
                w,
                &["method", "n", "w", "base", "cross_fg", "cross_gh", "cross_hf", "samples", "seed", "stderr"],
                &rows,
            )?;
        }
        Format::Pretty => {
            let name = out.preset.as_ref().map(|p| p.name()).unwrap_or("custom");
            writeln!(
                w,
                "GSWF {name} n={}  f={} g={} h={}",
                out.n,
                short_hex(&out.functions.f),
                short_hex(&out.functions.g),
                short_hex(&out.functions.h)
            )?;
            match &out.distribution {
                DistOut::EvenProduct { alpha, beta, gamma, deltas } => writeln!(
                    w,
                    "distribution: even product alpha={alpha} beta={beta} gamma={gamma}  deltas=({}, {}, {})",
                    deltas[0], deltas[1], deltas[2]
                )?,
                DistOut::General { probs } => {
                    writeln!(w, "distribution: general per-voter {:?}", probs.probs())?
                }
            }
            for r in &out.results {
                let m = serde_json::to_value(r.method)?;
                writeln!(w, "[{}] W = {:.15}", m.as_str().unwrap_or("?"), r.w)?;
                writeln!(w, "    base p1p2p3 + (1-p1)(1-p2)(1-p3) = {:.15}", r.base)?;
                if let (Some(c), Some(d)) = (r.cross_terms, r.deltas) {
                    writeln!(w, "    <<f,g>>_{:<+.6} = {:+.15}", d[0], c[0])?;
                    writeln!(w, "    <<g,h>>_{:<+.6} = {:+.15}", d[1], c[1])?;
                    writeln!(w, "    <<h,f>>_{:<+.6} = {:+.15}", d[2], c[2])?;
                }
                if let (Some(s), Some(e)) = (r.samples, r.stderr) {
                    writeln!(w, "    samples={s} seed={} stderr={e:.3e}", opt(r.seed))?;
                }
            }
            if let Some(d) = out.max_abs_diff {
                writeln!(w, "max |difference| = {d:.3e}")?;
            }
            for b in &out.reference_bounds {
                writeln!(w, "reference {} {} {:.6e}  ({})", b.relation, b.name, b.value, if b.holds { "holds" } else { "violated" })?;
            }
        }
    }
    Ok(())
}

pub fn rationality(a: &RationalityArgs, format: Format, w: &mut dyn Write) -> Result<u8> {
    let r = resolve_triple(&a.triple)?;
    let d = resolve_dist(&a.dist)?;
    let results = evaluate(&r.gswf, &d, a.method, a.samples, a.seed)?;
    let max_abs_diff = (results.len() > 1).then(|| {
        let lo = results.iter().map(|r| r.w).fold(f64::INFINITY, f64::min);
        let hi = results.iter().map(|r| r.w).fold(f64::NEG_INFINITY, f64::max);
        hi - lo
    });
    let out = RationalityOut {
        n: r.gswf.n(),
        reference_bounds: reference_bounds(r.preset.as_ref(), r.gswf.n(), &d, results[0].w)?,
        preset: r.preset,
        functions: r.gswf,
        distribution: dist_out(&d),
        results,
        max_abs_diff,
    };
    write_w_report(&out, "rationality", format, w)?;
    Ok(0)
}

pub fn simulate(a: &SimulateArgs, format: Format, w: &mut dyn Write) -> Result<u8> {
    let r = resolve_triple(&a.triple)?;
    let d = resolve_dist(&a.dist)?;
    let results = vec![w_monte_carlo(&r.gswf, &d.triple_distribution(), a.samples, a.seed)?];
    let out = RationalityOut {
        n: r.gswf.n(),
        preset: r.preset,
        functions: r.gswf,
        distribution: dist_out(&d),
        results,
        max_abs_diff: None,
        reference_bounds: vec![],
    };
    write_w_report(&out, "simulate", format, w)?;
    Ok(0)
}

// ---------------------------------------------------------------------------

fn failed(r: &BoundReport) -> bool {
    !r.pass && !r.inverted
}

pub fn verify(a: &VerifyArgs, format: Format, w: &mut dyn Write) -> Result<u8> {
    if a.list {
        for name in CHECK_NAMES {
            writeln!(w, "{name}")?;
        }
        return Ok(0);
    }
    let reports = if a.all {
        run_all(a.seed)?
    } else {
        let mut v = a
            .check
            .iter()
            .map(|name| run_check(name, a.seed))
            .collect::<gswf_core::Result<Vec<_>>>()?;
        v.sort_by(|x, y| x.name.cmp(&y.name));
        v
    };
    match format {
        Format::Json => write_json(w, &reports)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.name.clone(),
                        r.pass.to_string(),
                        r.inverted.to_string(),
                        r.claim_holds.to_string(),
                        r.applicable.to_string(),
                        num(r.lhs),
                        r.relation.symbol().to_owned(),
                        num(r.rhs),
                        num(r.margin),
                        num(r.tolerance),
                        r.evaluated.to_string(),
                    ]
                })
                .collect();
            write_csv(
                w,
                &["name", "pass", "inverted", "claim_holds", "applicable", "lhs", "relation", "rhs", "margin", "tolerance", "evaluated"],
                &rows,
            )?;
        }
        Format::Pretty => {
            for r in &reports {
                let tag = if r.pass { "PASS" } else { "FAIL" };
                let inv = if r.inverted { " (inverted)" } else { "" };
                writeln!(
                    w,
                    "{tag} {}{inv}: {:.6e} {} {:.6e}  margin {:+.3e}  [{} evaluated]",
                    r.name,
                    r.lhs,
                    r.relation.symbol(),
                    r.rhs,
                    r.margin,
                    r.evaluated
                )?;
                for p in r.parts.iter().filter(|p| !p.claim_holds) {
                    writeln!(w, "    claim fails in {}: {:.6e} {} {:.6e}", p.name, p.lhs, p.relation.symbol(), p.rhs)?;
                }
            }
            let bad = reports.iter().filter(|r| failed(r)).count();
            writeln!(w, "{} checks, {} failed", reports.len(), bad)?;
        }
    }
    Ok(if reports.iter().any(failed) { EXIT_CHECK_FAILED } else { 0 })
}

// ---------------------------------------------------------------------------

pub fn search(a: &SearchArgs, format: Format, w: &mut dyn Write) -> Result<u8> {
    let base: ClassFilter = a.class.parse()?;
    let pick = |s: &Option<String>| -> Result<ClassFilter> {
        Ok(match s {
            Some(s) => s.parse()?,
            None => base.clone(),
        })
    };
    let (ff, fg, fh) = (pick(&a.class_f)?, pick(&a.class_g)?, pick(&a.class_h)?);
    let Dist::Even(d) = resolve_dist(&a.dist)? else {
        bail!("search evaluates W by the spectral formula; --triples is not accepted");
    };
    let objective = match a.objective {
        ObjectiveArg::MinW => Objective::MinW,
        ObjectiveArg::MaxW => Objective::MaxW,
    };
    let result: ExtremalResult = match a.mode {
        ModeArg::Exhaustive => extremal_w(a.n, [&ff, &fg, &fh], &d, objective, a.exclude_dictators)?,
        ModeArg::Random => {
            let seed = a.seed.ok_or_else(|| anyhow!("--mode random needs --seed"))?;
            random_search(a.n, [&ff, &fg, &fh], &d, objective, a.trials, seed, a.exclude_dictators)?
        }
    };
    if let Some(p) = &a.append {
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(p)
            .with_context(|| format!("cannot open {}", p.display()))?;
        serde_json::to_writer(&mut file, &envelope("search", &result))?;
        writeln!(file)?;
    }
    match format {
        Format::Json => write_json(w, &envelope("search", &result))?,
        Format::Csv => {
            let obj = serde_json::to_value(result.objective)?;
            let mode = serde_json::to_value(result.mode)?;
            let row = vec![
                obj.as_str().unwrap_or_default().to_owned(),
                num(result.value),
                result.witness.f.to_hex(),
                result.witness.g.to_hex(),
                result.witness.h.to_hex(),
                num(result.distribution[0]),
                num(result.distribution[1]),
                num(result.distribution[2]),
                result.evaluated.to_string(),
                mode.as_str().unwrap_or_default().to_owned(),
                opt(result.seed),
            ];
            write_csv(
                w,
                &["objective", "value", "f", "g", "h", "alpha", "beta", "gamma", "evaluated", "mode", "seed"],
                &[row],
            )?;
        }
        Format::Pretty => {
            writeln!(
                w,
                "{:?} W = {:.15} over {} triples",
                result.objective, result.value, result.evaluated
            )?;
            writeln!(
                w,
                "witness f={} g={} h={}  (n={})",
                short_hex(&result.witness.f),
                short_hex(&result.witness.g),
                short_hex(&result.witness.h),
                result.witness.n()
            )?;
            writeln!(w, "classes: f in {}, g in {}, h in {}", ff, fg, fh)?;
            writeln!(w, "tie-break: {}", result.tie_break)?;
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct CatalogOut {
    entries: Vec<CatalogEntry>,
    presets: Vec<&'static str>,
    checks: Vec<&'static str>,
}

pub fn catalog(action: &CatalogAction, format: Format, w: &mut dyn Write) -> Result<u8> {
    let CatalogAction::List = action;
    let out = CatalogOut {
        entries: entries(),
        presets: PRESET_NAMES.to_vec(),
        checks: CHECK_NAMES.to_vec(),
    };
    match format {
        Format::Json => write_json(w, &envelope("catalog", &out))?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = out
                .entries
                .iter()
                .map(|e| vec![e.kind.into(), e.name.into(), e.syntax.into(), e.constraints.into()])
                .collect();
            write_csv(w, &["kind", "name", "syntax", "constraints"], &rows)?;
        }
        Format::Pretty => {
            for e in &out.entries {
                writeln!(w, "{:<7} {:<22} {:<52} {}", e.kind, e.name, e.syntax, e.constraints)?;
            }
            writeln!(w, "hex tables: hex:<n>:<digits>, most significant input first")?;
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------------

pub fn curve(a: &CurveArgs, format: Format, w: &mut dyn Write) -> Result<u8> {
    let ns = parse_n_list(&a.n)?;
    if ns.is_empty() {
        bail!("--n selects no odd voter counts");
    }
    match a.kind {
        CurveKind::MajorityStability => {
            let rows = majority_stability_curve(&ns, &parse_f64_list(&a.rho)?)?;
            match format {
                Format::Json | Format::Pretty => write_json(w, &rows)?,
                Format::Csv => {
                    let rows: Vec<Vec<String>> = rows
                        .iter()
                        .map(|r| vec![r.n.to_string(), num(r.rho), num(r.value), num(r.reference), num(r.abs_err)])
                        .collect();
                    write_csv(w, &["n", "rho", "value", "reference", "abs_err"], &rows)?;
                }
            }
        }
        CurveKind::Instability => {
            let rows = instability_curve(&ns, a.q)?;
            match format {
                Format::Json | Format::Pretty => write_json(w, &rows)?,
                Format::Csv => {
                    let rows: Vec<Vec<String>> = rows
                        .iter()
                        .map(|r| {
                            vec![
                                r.n.to_string(),
                                num(r.q),
                                r.k.to_string(),
                                num(r.w),
                                num(r.eta),
                                num(r.ratio),
                                num(r.min_expectation),
                            ]
                        })
                        .collect();
                    write_csv(w, &["n", "q", "k", "W", "eta", "ratio", "min_expectation"], &rows)?;
                }
            }
        }
    }
    Ok(0)
}
