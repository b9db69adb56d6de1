//! Subcommand implementations: grid construction, parallel evaluation in
//! deterministic order, and report assembly.

use crate::emit::{emit, GridPoint, Item, Record};
use crate::{
    parse_f64_list, parse_u32_list, parse_u64_list, ApproxArgs, BoundsArgs, CountArgs, Format,
    Resolver, TractArgs, VerifyArgs, VolumeArgs, WidthsArgs,
};
use hypercross::bounds::{
    corner_upper_asymptotic, count_volume_sandwich, exponential_upper, find_t_star,
    symmetric_sandwich, upper_bound_delta,
};
use hypercross::counting::{count_recursive, CrossKind, CrossParams, MultiIndex};
use hypercross::spectral::{
    bernstein_check, gauss_jacobi, jackson_check, korobov_norm, nonperiodic_projection_demo,
    project, JacobiParams, SparseCoefficients,
};
use hypercross::verify::{run_suite, suite_ids, SuiteConfig};
use hypercross::volume::{
    volume, volume_bounds, volume_closed_polynomial, volume_quadrature_oracle,
};
use hypercross::widths::{
    classify_tractability, dn_report, n_eps_report, SettingKind, SmoothnessParams,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};

pub enum CliError {
    Usage(String),
    Runtime(String),
}

impl From<hypercross::Error> for CliError {
    fn from(e: hypercross::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

fn usage(msg: String) -> CliError {
    CliError::Usage(msg)
}

fn parse_kind(text: &str) -> Result<CrossKind, CliError> {
    match text {
        "corner" => Ok(CrossKind::Corner),
        "symmetric" => Ok(CrossKind::Symmetric),
        other => Err(usage(format!(
            "--kind must be corner or symmetric, got {other}"
        ))),
    }
}

/// Evaluate a grid in parallel, keeping output in grid order and reporting
/// progress on stderr for long sweeps.
fn sweep<I, F>(inputs: Vec<I>, f: F) -> Result<Vec<Record>, CliError>
where
    I: Send + Sync,
    F: Fn(&I) -> Result<Record, CliError> + Sync,
{
    let total = inputs.len();
    let done = AtomicUsize::new(0);
    let step = (total / 10).max(1);
    let results: Vec<Result<Record, CliError>> = inputs
        .par_iter()
        .map(|input| {
            let rec = f(input);
            let d = done.fetch_add(1, Ordering::Relaxed) + 1;
            if total > 200 && d.is_multiple_of(step) {
                eprintln!("progress: {d}/{total}");
            }
            rec
        })
        .collect();
    results.into_iter().collect()
}

// ---------------------------------------------------------------------------
// count
// ---------------------------------------------------------------------------

pub fn run_count(
    resolver: &Resolver,
    args: CountArgs,
    format: Format,
    cap: u64,
) -> Result<(), CliError> {
    let s_list =
        parse_u32_list(&resolver.required(args.s, "s").map_err(usage)?, "s").map_err(usage)?;
    let t_list = parse_f64_list(&resolver.required(args.threshold, "T").map_err(usage)?, "T")
        .map_err(usage)?;
    let a_list =
        parse_f64_list(&resolver.required(args.shift, "a").map_err(usage)?, "a").map_err(usage)?;
    let kind = parse_kind(
        &resolver
            .pick(args.kind, "kind")
            .unwrap_or_else(|| "corner".into()),
    )?;
    let deltas = match resolver.pick(args.delta, "delta") {
        Some(text) => parse_f64_list(&text, "delta").map_err(usage)?,
        None => vec![0.5, 1.0],
    };

    let mut grid = Vec::new();
    for &s in &s_list {
        for &t in &t_list {
            for &a in &a_list {
                grid.push((s, t, a));
            }
        }
    }
    let records = sweep(grid, |&(s, t, a)| {
        let params = CrossParams::new(s, t, a, kind)?;
        let exact = count_recursive(&params, cap)?.exact;
        let mut values = vec![Item::num("exact", exact as f64)];
        let vol = volume(s, t, a)?;
        values.push(Item::num("volume", vol.value));
        if t > a.powi(s as i32) {
            let vb = volume_bounds(s, t, a)?;
            values.push(Item::num("bound:volume-lower", vb.lower));
            values.push(Item::num("bound:volume-upper", vb.upper));
        }
        for &d in &deltas {
            if d > 0.0 && d <= 1.0 && d < a && t >= d.powi(s as i32) {
                let b = upper_bound_delta(s, t, a, d)?;
                let e = exponential_upper(s, t, a, d)?;
                let (shifted, expo) = match kind {
                    CrossKind::Corner => (b.corner, e.corner),
                    CrossKind::Symmetric => (b.symmetric, e.symmetric),
                };
                values.push(Item::num(format!("bound:delta-upper:d={d}"), shifted));
                values.push(Item::num(format!("bound:exponential:d={d}"), expo));
            }
        }
        match kind {
            CrossKind::Corner => {
                if a > 0.5 {
                    let asy = corner_upper_asymptotic(s, t, a)?;
                    values.push(Item::flagged(
                        "bound:asymptotic-upper",
                        asy.value,
                        asy.formula_domain_ok,
                    ));
                }
            }
            CrossKind::Symmetric => {
                if a > 0.5 && t >= 1.0 {
                    let sw = symmetric_sandwich(s, t, a, cap)?;
                    values.push(Item::num("bound:symmetric-lower", sw.lower.value));
                    values.push(Item::num("bound:symmetric-upper", sw.upper.value));
                }
            }
        }
        Ok(Record {
            grid: GridPoint {
                s: Some(s),
                threshold: Some(t),
                a: Some(a),
                kind: Some(kind.to_string()),
                ..Default::default()
            },
            values,
        })
    })?;
    emit(format, &records);
    Ok(())
}

// ---------------------------------------------------------------------------
// volume
// ---------------------------------------------------------------------------

pub fn run_volume(resolver: &Resolver, args: VolumeArgs, format: Format) -> Result<(), CliError> {
    let s_list =
        parse_u32_list(&resolver.required(args.s, "s").map_err(usage)?, "s").map_err(usage)?;
    let t_list = parse_f64_list(&resolver.required(args.threshold, "T").map_err(usage)?, "T")
        .map_err(usage)?;
    let a_list =
        parse_f64_list(&resolver.required(args.shift, "a").map_err(usage)?, "a").map_err(usage)?;
    let oracle_tol = args.oracle_tol;

    let mut grid = Vec::new();
    for &s in &s_list {
        for &t in &t_list {
            for &a in &a_list {
                grid.push((s, t, a));
            }
        }
    }
    let records = sweep(grid, |&(s, t, a)| {
        let v = volume(s, t, a)?;
        let mut values = vec![
            Item::num("volume", v.value),
            Item::num("volume:log", v.log_value),
        ];
        if t > a.powi(s as i32) {
            let vb = volume_bounds(s, t, a)?;
            values.push(Item::num("bound:volume-lower", vb.lower));
            values.push(Item::num("bound:volume-upper", vb.upper));
            if let Ok(cp) = volume_closed_polynomial(s, t, a) {
                values.push(Item::num("oracle:closed-polynomial", cp.value));
            }
            if let Some(tol) = oracle_tol {
                if s <= 5 {
                    let q = volume_quadrature_oracle(s, t, a, tol)?;
                    values.push(Item::num("oracle:quadrature", q.value));
                }
            }
        }
        Ok(Record {
            grid: GridPoint {
                s: Some(s),
                threshold: Some(t),
                a: Some(a),
                ..Default::default()
            },
            values,
        })
    })?;
    emit(format, &records);
    Ok(())
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

pub fn run_bounds(
    resolver: &Resolver,
    args: BoundsArgs,
    format: Format,
    cap: u64,
) -> Result<(), CliError> {
    let s_list =
        parse_u32_list(&resolver.required(args.s, "s").map_err(usage)?, "s").map_err(usage)?;
    let t_list = parse_f64_list(&resolver.required(args.threshold, "T").map_err(usage)?, "T")
        .map_err(usage)?;
    let a_list =
        parse_f64_list(&resolver.required(args.shift, "a").map_err(usage)?, "a").map_err(usage)?;

    let mut grid = Vec::new();
    for &s in &s_list {
        for &t in &t_list {
            for &a in &a_list {
                grid.push((s, t, a));
            }
        }
    }
    let mut records = sweep(grid, |&(s, t, a)| {
        let mut values = Vec::new();
        let sw = count_volume_sandwich(s, t, a, cap)?;
        values.push(Item::num("sandwich:inclusion:lower", sw.lower.value));
        values.push(Item::num("sandwich:inclusion:middle", sw.middle.value));
        values.push(Item::num("sandwich:inclusion:upper", sw.upper.value));
        values.push(Item::flagged(
            "sandwich:inclusion:holds",
            f64::from(u8::from(sw.holds)),
            !sw.vacuous,
        ));
        if a > 0.5 && t >= 1.0 {
            let sym = symmetric_sandwich(s, t, a, cap)?;
            values.push(Item::num("sandwich:symmetric:lower", sym.lower.value));
            values.push(Item::num("sandwich:symmetric:middle", sym.middle.value));
            values.push(Item::num("sandwich:symmetric:upper", sym.upper.value));
            values.push(Item::flagged(
                "sandwich:symmetric:holds",
                f64::from(u8::from(sym.holds)),
                !sym.vacuous,
            ));
        }
        Ok(Record {
            grid: GridPoint {
                s: Some(s),
                threshold: Some(t),
                a: Some(a),
                ..Default::default()
            },
            values,
        })
    })?;
    if let Some(horizon) = args.horizon {
        for &s in &s_list {
            for &a in &a_list {
                if a <= 0.5 {
                    continue;
                }
                let search = find_t_star(s, a, horizon, cap.max(1_000_000_000))?;
                let mut values = vec![Item::num("t-star:samples", search.samples_checked as f64)];
                match search.t_star {
                    Some(ts) => values.push(Item::flagged("t-star", ts, true)),
                    None => values.push(Item::flagged("t-star", f64::NAN, false)),
                }
                records.push(Record {
                    grid: GridPoint {
                        s: Some(s),
                        a: Some(a),
                        threshold: Some(horizon),
                        ..Default::default()
                    },
                    values,
                });
            }
        }
    }
    emit(format, &records);
    Ok(())
}

// ---------------------------------------------------------------------------
// widths
// ---------------------------------------------------------------------------

fn setting_for(kind: CrossKind) -> SettingKind {
    match kind {
        CrossKind::Symmetric => SettingKind::PeriodicSymmetric,
        CrossKind::Corner => SettingKind::NonperiodicCorner,
    }
}

pub fn run_widths(
    resolver: &Resolver,
    args: WidthsArgs,
    format: Format,
    cap: u64,
) -> Result<(), CliError> {
    let s_list =
        parse_u32_list(&resolver.required(args.s, "s").map_err(usage)?, "s").map_err(usage)?;
    let a_list =
        parse_f64_list(&resolver.required(args.shift, "a").map_err(usage)?, "a").map_err(usage)?;
    let r_list =
        parse_f64_list(&resolver.required(args.r, "r").map_err(usage)?, "r").map_err(usage)?;
    let kind = parse_kind(
        &resolver
            .pick(args.kind, "kind")
            .unwrap_or_else(|| "symmetric".into()),
    )?;
    let setting = setting_for(kind);
    let n_list = match resolver.pick(args.n, "N") {
        Some(text) => parse_u64_list(&text, "N").map_err(usage)?,
        None => Vec::new(),
    };
    let eps_list = match resolver.pick(args.eps, "eps") {
        Some(text) => parse_f64_list(&text, "eps").map_err(usage)?,
        None => Vec::new(),
    };
    if n_list.is_empty() && eps_list.is_empty() {
        return Err(usage("widths needs --N and/or --eps".into()));
    }
    let q_list = match resolver.pick(args.q, "q") {
        Some(text) => parse_f64_list(&text, "q").map_err(usage)?,
        None => match setting {
            SettingKind::PeriodicSymmetric => vec![2.0],
            SettingKind::NonperiodicCorner => vec![1.0],
        },
    };

    enum Query {
        Dn(u64),
        Eps(f64),
    }
    let mut grid = Vec::new();
    for &s in &s_list {
        for &a in &a_list {
            for &r in &r_list {
                for &n in &n_list {
                    grid.push((s, a, r, Query::Dn(n)));
                }
                for &e in &eps_list {
                    grid.push((s, a, r, Query::Eps(e)));
                }
            }
        }
    }
    let q_list_ref = &q_list;
    let records = sweep(grid, move |(s, a, r, query)| {
        let sp = SmoothnessParams::new(*s, *r, *a, setting)?;
        let mut gp = GridPoint {
            s: Some(*s),
            a: Some(*a),
            r: Some(*r),
            kind: Some(kind.to_string()),
            ..Default::default()
        };
        let report = match query {
            Query::Dn(n) => {
                gp.n = Some(*n);
                dn_report(&sp, *n, q_list_ref, cap)?
            }
            Query::Eps(eps) => {
                gp.eps = Some(*eps);
                n_eps_report(&sp, *eps, q_list_ref, cap)?
            }
        };
        let mut values = vec![Item::num("exact", report.exact)];
        for b in report.bounds {
            values.push(Item::flagged(
                format!("bound:{}", b.label),
                b.value,
                b.valid,
            ));
        }
        Ok(Record { grid: gp, values })
    })?;
    emit(format, &records);
    Ok(())
}

// ---------------------------------------------------------------------------
// tract
// ---------------------------------------------------------------------------

pub fn run_tract(
    resolver: &Resolver,
    args: TractArgs,
    format: Format,
    cap: u64,
) -> Result<(), CliError> {
    let a_list =
        parse_f64_list(&resolver.required(args.shift, "a").map_err(usage)?, "a").map_err(usage)?;
    let r_list = parse_f64_list(
        &resolver.pick(args.r, "r").unwrap_or_else(|| "1".into()),
        "r",
    )
    .map_err(usage)?;
    let kind = parse_kind(
        &resolver
            .pick(args.kind, "kind")
            .unwrap_or_else(|| "symmetric".into()),
    )?;
    let setting = setting_for(kind);
    let smax = args.smax;
    let eps = args.eps;

    let mut grid = Vec::new();
    for &a in &a_list {
        for &r in &r_list {
            grid.push((a, r));
        }
    }
    let records = sweep(grid, move |&(a, r)| {
        let v = classify_tractability(a, r, setting, smax, eps, cap)?;
        let mut values = vec![Item::text("class", v.class.to_string())];
        if let Some(p) = v.p_exp_upper {
            values.push(Item::num("p-exp-upper", p));
        }
        for (s, n) in &v.evidence {
            values.push(Item::num(format!("evidence:n_eps:s={s}"), *n as f64));
        }
        Ok(Record {
            grid: GridPoint {
                a: Some(a),
                r: Some(r),
                eps: Some(eps),
                kind: Some(kind.to_string()),
                ..Default::default()
            },
            values,
        })
    })?;
    emit(format, &records);
    Ok(())
}

// ---------------------------------------------------------------------------
// approx
// ---------------------------------------------------------------------------

pub fn run_approx(
    resolver: &Resolver,
    args: ApproxArgs,
    format: Format,
    cap: u64,
    seed: u64,
) -> Result<(), CliError> {
    let s_list =
        parse_u32_list(&resolver.required(args.s, "s").map_err(usage)?, "s").map_err(usage)?;
    let r_list =
        parse_f64_list(&resolver.required(args.r, "r").map_err(usage)?, "r").map_err(usage)?;
    let a_list =
        parse_f64_list(&resolver.required(args.shift, "a").map_err(usage)?, "a").map_err(usage)?;
    let t_list = parse_f64_list(&resolver.required(args.threshold, "T").map_err(usage)?, "T")
        .map_err(usage)?;
    let trials = args.trials;

    let loaded: Option<String> = match &args.coeffs {
        Some(path) => Some(
            std::fs::read_to_string(path)
                .map_err(|e| usage(format!("coefficient file {path:?}: {e}")))?,
        ),
        None => None,
    };

    let mut records = Vec::new();
    for &s in &s_list {
        for &r in &r_list {
            for &a in &a_list {
                for &t in &t_list {
                    if t < 1.0 {
                        return Err(usage("approx needs T >= 1".into()));
                    }
                    if let Some(json) = &loaded {
                        let c = SparseCoefficients::from_json(s, CrossKind::Symmetric, json)?;
                        let mut values = vec![
                            Item::num("coeffs:count", c.len() as f64),
                            Item::num("coeffs:l2-norm", c.l2_norm()),
                            Item::num("coeffs:korobov-norm", korobov_norm(&c, r, a)),
                        ];
                        if !c.is_empty() {
                            values.push(Item::num(
                                "coeffs:jackson-ratio",
                                jackson_check(&c, t, r, a)?,
                            ));
                            let inside = project(&c, t, a);
                            values.push(Item::num("coeffs:retained", inside.len() as f64));
                            values.push(Item::text("coeffs:projected-json", inside.to_json()));
                            if !inside.is_empty() {
                                values.push(Item::num(
                                    "coeffs:bernstein-ratio",
                                    bernstein_check(&inside, t, r, a)?,
                                ));
                            }
                        }
                        records.push(Record {
                            grid: GridPoint {
                                s: Some(s),
                                threshold: Some(t),
                                a: Some(a),
                                r: Some(r),
                                ..Default::default()
                            },
                            values,
                        });
                        continue;
                    }
                    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (u64::from(s) << 32));
                    let mut worst_jackson = 0.0f64;
                    let mut worst_bernstein = 0.0f64;
                    let mut used = 0u32;
                    for _ in 0..trials {
                        let mut c = SparseCoefficients::new(s, CrossKind::Symmetric);
                        for _ in 0..8 {
                            let idx: Vec<i64> = (0..s).map(|_| rng.gen_range(-6i64..=6)).collect();
                            let amp =
                                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                            c.insert(MultiIndex(idx), amp)?;
                        }
                        if c.is_empty() {
                            continue;
                        }
                        used += 1;
                        worst_jackson = worst_jackson.max(jackson_check(&c, t, r, a)?);
                        let inside = project(&c, t, a);
                        if !inside.is_empty() {
                            worst_bernstein =
                                worst_bernstein.max(bernstein_check(&inside, t, r, a)?);
                        }
                    }
                    let mut values = vec![
                        Item::num("trials", f64::from(used)),
                        Item::num("jackson:max-ratio", worst_jackson),
                        Item::num("bernstein:max-ratio", worst_bernstein),
                    ];
                    if let (Some(alpha), Some(beta)) = (args.alpha, args.beta) {
                        let jp = JacobiParams::new(alpha, beta)?;
                        let demo = nonperiodic_projection_demo(&jp, s, r, t, t * 8.0, cap, |k| {
                            let lambda: f64 =
                                k.iter().map(|&ki| ki as f64 + jp.korobov_shift()).product();
                            lambda.powf(-r - 1.0)
                        })?;
                        values.push(Item::num("jacobi:shift", demo.shift));
                        values.push(Item::num("jacobi:projection-error", demo.projection_error));
                        if let Some(ratio) = demo.jackson_ratio {
                            values.push(Item::num("jacobi:jackson-ratio", ratio));
                        }
                        for (label, ok) in &demo.applicable_bounds {
                            values.push(Item::flagged(format!("jacobi:{label}"), 1.0, *ok));
                        }
                        let (nodes, weights) = gauss_jacobi(10, &jp)?;
                        values.push(Item::num("jacobi:rule-mass", weights.iter().sum()));
                        values.push(Item::num("jacobi:first-node", nodes[0]));
                    }
                    records.push(Record {
                        grid: GridPoint {
                            s: Some(s),
                            threshold: Some(t),
                            a: Some(a),
                            r: Some(r),
                            ..Default::default()
                        },
                        values,
                    });
                }
            }
        }
    }
    emit(format, &records);
    Ok(())
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

pub fn run_verify(args: VerifyArgs, format: Format, cap: u64, seed: u64) -> ExitCode {
    let Some(ids) = suite_ids(&args.suite) else {
        eprintln!(
            "error: unknown suite {:?} (use all, counting, remainder, volume, bounds, widths, tract, spectral)",
            args.suite
        );
        return ExitCode::from(2);
    };
    let cfg = SuiteConfig { cap, seed };
    let results = run_suite(&ids, &cfg);
    let mut first_fail: Option<&str> = None;
    for r in &results {
        match format {
            Format::Json => println!(
                "{}",
                serde_json::to_string(r).expect("serializable check result")
            ),
            Format::Csv => println!(
                "{},{},{},{:.3},\"{}\"",
                r.id,
                r.name,
                if r.passed { "PASS" } else { "FAIL" },
                r.seconds,
                r.details.replace('"', "'")
            ),
        }
        if !r.passed && first_fail.is_none() {
            first_fail = Some(r.name);
        }
    }
    match first_fail {
        None => ExitCode::SUCCESS,
        Some(name) => {
            eprintln!("verification failed: first violated invariant is {name}");
            ExitCode::from(1)
        }
    }
}
