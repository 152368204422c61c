use std::collections::BTreeMap;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::Value;

use super::golden;
use super::record::{append_new, read_records, SweepRecord};
use super::{usage, CliError, Common, Outcome, EXIT_DISAGREEMENT, EXIT_OK};
use crate::algebra::{binomial_usize, Field, HomogeneousPoly, Scalar};
use crate::binary::{minimal_certificate, sylvester_certificate, BinaryForm};
use crate::interpolation::{
    best_report, castelnuovo_check, conditions_matrix, random_member, sample_config,
    specialized_dim, system_dim, DimReport,
};
use crate::numerology::{
    ah_status, conum_verdict, dimbase_check_with, expected_dim, waring_verdict, win_check, AhTag,
    Conditions, ConumVerdict, SpecializedSpec, SystemSpec,
};
use crate::probes::{
    map_rank_and_degree, singularity_report, square_detect, veronese_secant_dim, Finiteness,
    MapVerdict,
};

fn code(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_DISAGREEMENT
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// The serialized name of a unit enum variant.
fn tag_name<T: serde::Serialize>(t: &T) -> String {
    match serde_json::to_value(t) {
        Ok(Value::String(s)) => s,
        _ => String::new(),
    }
}

fn elapsed_ms(t0: Instant) -> u64 {
    t0.elapsed().as_millis() as u64
}

fn save(path: Option<&Path>, records: &[SweepRecord]) -> Result<(), CliError> {
    if let Some(p) = path {
        append_new(p, records)?;
    }
    Ok(())
}

/// Record of one measured dimension. `agreement` is present only where a prediction exists.
pub(super) fn dim_record(command: &str, r: &DimReport, wall_ms: u64) -> SweepRecord {
    let base = r.spec.base;
    let mut rec = SweepRecord::new(command, base.d, base.n, r.field, r.seed)
        .with("expected", r.expected)
        .with("actual", r.actual)
        .with("trials", r.trials);
    rec.l = Some(base.l);
    rec.h = Some(r.spec.h);
    if let Some(tag) = prediction(r) {
        rec = rec
            .with("predicted", r.predicted)
            .with("tag", tag_name(&tag))
            .with("agreement", r.agreement);
    } else {
        rec = rec.with("matches_expected", r.actual == r.expected.max(-1));
    }
    rec.wall_ms = wall_ms;
    rec
}

/// The tag of the prediction behind `r.predicted`, if the theory makes one.
fn prediction(r: &DimReport) -> Option<AhTag> {
    let tag = ah_status(r.spec.base).tag;
    (r.spec.h == 0 && tag != AhTag::OutOfTheoremRange).then_some(tag)
}

pub(super) fn dims(out: &mut dyn Write, d: u32, n: u32, l: u32, h: u32, c: &Common) -> Outcome {
    let spec = SpecializedSpec::of(d, n, l, h).map_err(usage)?;
    let fields = c.fields(d)?;
    let mut reports = Vec::new();
    let mut records = Vec::new();
    for f in fields {
        let t0 = Instant::now();
        let r = specialized_dim(spec, f, c.trials, c.seed).map_err(usage)?;
        records.push(dim_record("dims", &r, elapsed_ms(t0)));
        reports.push(r);
    }
    save(c.out.as_deref(), &records)?;
    let name = if h == 0 {
        spec.base.to_string()
    } else {
        spec.to_string()
    };
    for r in &reports {
        writeln!(out, "{name} over {}: actual {}", r.field, r.actual)?;
    }
    let best = best_report(reports).expect("at least one field");
    writeln!(out, "expected {}, actual {}", best.expected, best.actual)?;
    match prediction(&best) {
        Some(AhTag::Exceptional) => {
            writeln!(
                out,
                "exceptional: predicted {}, agreement {}",
                best.predicted,
                yes_no(best.agreement)
            )?;
            Ok(code(best.agreement))
        }
        Some(_) => {
            writeln!(out, "agreement: {}", yes_no(best.agreement))?;
            Ok(code(best.agreement))
        }
        None => {
            let matches = best.actual == best.expected.max(-1);
            writeln!(
                out,
                "no prediction; matches the expected count: {}",
                yes_no(matches)
            )?;
            Ok(EXIT_OK)
        }
    }
}

/// Every `l` whose expected dimension is at least `-(n+1)`.
pub(super) fn default_l_range(d: u32, n: u32) -> RangeInclusive<u32> {
    let c = binomial_usize((n + d) as usize, n as usize);
    0..=((c + n as usize) / (n as usize + 1)) as u32
}

pub(super) const DESK_SCALE: usize = 3000;

pub(super) fn ah_verify(
    out: &mut dyn Write,
    d: RangeInclusive<u32>,
    n: RangeInclusive<u32>,
    l: Option<RangeInclusive<u32>>,
    c: &Common,
) -> Outcome {
    let fields = c.fields(*d.end())?;
    let mut cells = Vec::new();
    for di in d.clone() {
        for ni in n.clone() {
            if di < 3 || ni < 2 {
                return Err(usage(format!("need d >= 3 and n >= 2, got ({di},{ni})")));
            }
            if binomial_usize((ni + di) as usize, ni as usize) > DESK_SCALE {
                return Err(usage(format!(
                    "({di},{ni}) exceeds the oracle's reach of {DESK_SCALE} monomials"
                )));
            }
            for li in l.clone().unwrap_or_else(|| default_l_range(di, ni)) {
                cells.push(SystemSpec { d: di, n: ni, l: li });
            }
        }
    }
    let results = cells
        .par_iter()
        .map(|&s| {
            let spec = SpecializedSpec { base: s, h: 0 };
            fields
                .iter()
                .map(|&f| {
                    let t0 = Instant::now();
                    let r = specialized_dim(spec, f, c.trials, c.seed)?;
                    Ok((dim_record("ah-verify", &r, elapsed_ms(t0)), r))
                })
                .collect::<Result<Vec<_>, crate::interpolation::InterpolationError>>()
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(usage)?;
    let mut records = Vec::new();
    let mut flagged = Vec::new();
    for per_field in results {
        let (recs, reports): (Vec<_>, Vec<_>) = per_field.into_iter().unzip();
        records.extend(recs);
        let best = best_report(reports).expect("at least one field");
        if best.actual != best.expected.max(-1) {
            flagged.push((best.spec.base, best.expected, best.actual));
        }
    }
    save(c.out.as_deref(), &records)?;

    let in_range = |&(a, b, e): &(u32, u32, u32)| {
        d.contains(&a) && n.contains(&b) && l.as_ref().map_or(e <= *default_l_range(a, b).end(), |r| r.contains(&e))
    };
    let known: Vec<(u32, u32, u32)> = golden::ah_exceptions().into_iter().filter(in_range).collect();
    let found: Vec<(u32, u32, u32)> = flagged.iter().map(|(s, _, _)| (s.d, s.n, s.l)).collect();
    let ok = found == known && flagged.iter().all(|&(_, _, a)| a == 0);

    writeln!(out, "{:>3} {:>3} {:>4} {:>9} {:>7}", "d", "n", "l", "expected", "actual")?;
    for (s, e, a) in &flagged {
        writeln!(out, "{:>3} {:>3} {:>4} {:>9} {:>7}", s.d, s.n, s.l, e, a)?;
    }
    writeln!(
        out,
        "cells: {}, disagreements: {}, exceptional list reproduced: {}",
        cells.len(),
        flagged.len(),
        yes_no(ok)
    )?;
    Ok(code(ok))
}

fn show(c: Option<bool>) -> &'static str {
    match c {
        Some(true) => "true",
        Some(false) => "false",
        None => "-",
    }
}

fn print_conditions(out: &mut dyn Write, c: &Conditions) -> Result<(), CliError> {
    let rows = [
        ("L", c.l),
        ("H", c.h),
        ("LH", c.lh),
        ("C", c.c),
        ("D4", c.d4),
        ("D3", c.d3),
        ("bound", c.bound),
        ("ee_full", c.ee_full),
        ("ee_residual", c.ee_residual),
        ("expected_trace", c.expected_trace),
    ];
    for (name, v) in rows.iter().filter(|(_, v)| v.is_some()) {
        writeln!(out, "  {name}: {}", show(*v))?;
    }
    Ok(())
}

pub(super) fn win(
    out: &mut dyn Write,
    d: u32,
    n: u32,
    l: u32,
    h: u32,
    dimbase: bool,
    c: &Common,
) -> Outcome {
    let spec = SpecializedSpec::of(d, n, l, h).map_err(usage)?;
    let fields = c.fields(d)?;
    let numerical = n >= 3 && d >= 3 && l > h && !dimbase;
    let verdict = if numerical {
        win_check(spec)
    } else {
        let mut oracle = |s: SystemSpec| {
            fields
                .iter()
                .filter_map(|&f| system_dim(s, f, c.trials, c.seed).ok())
                .map(|r| r.actual)
                .min()
                .unwrap_or_else(|| expected_dim(s).max(-1))
        };
        dimbase_check_with(spec, &mut oracle)
    }
    .map_err(usage)?;

    let t0 = Instant::now();
    let reports = fields
        .iter()
        .map(|&f| specialized_dim(spec, f, c.trials, c.seed))
        .collect::<Result<Vec<_>, _>>()
        .map_err(usage)?;
    let best = best_report(reports).expect("at least one field");
    let residual = if h > 0 {
        Some(castelnuovo_check(spec, best.field, c.seed).map_err(usage)?)
    } else {
        None
    };
    let measured = best.actual == best.expected
        && best.expected >= 0
        && residual.map_or(true, |r| r.exact && r.h_d_minus_1 > 0);
    let ok = !verdict.win || measured;

    let mut rec = SweepRecord::new("win", d, n, best.field, c.seed)
        .with("win", verdict.win)
        .with("rule_set", tag_name(&verdict.rule_set))
        .with("indeterminate", verdict.indeterminate)
        .with("expected", best.expected)
        .with("actual", best.actual)
        .with("measured", measured)
        .with("agreement", ok);
    rec.l = Some(l);
    rec.h = Some(h);
    if let Some(r) = residual {
        rec = rec
            .with("h_d_minus_1", r.h_d_minus_1)
            .with("h_n_minus_1", r.h_n_minus_1)
            .with("exact", r.exact);
    }
    rec.wall_ms = elapsed_ms(t0);
    save(c.out.as_deref(), &[rec])?;

    writeln!(out, "{spec}: rule set {}", tag_name(&verdict.rule_set))?;
    print_conditions(out, &verdict.conditions)?;
    writeln!(
        out,
        "win: {}{}",
        yes_no(verdict.win),
        if verdict.indeterminate { " (indeterminate)" } else { "" }
    )?;
    writeln!(out, "expected {}, actual {}", best.expected, best.actual)?;
    if let Some(r) = residual {
        writeln!(
            out,
            "residual {}, trace {}, total {}, exact: {}",
            r.h_d_minus_1,
            r.h_n_minus_1,
            r.total,
            yes_no(r.exact)
        )?;
    }
    writeln!(out, "measured conditions hold: {}", yes_no(measured))?;
    Ok(code(ok))
}

pub(super) fn delta_table(out: &mut dyn Write) -> Outcome {
    let table = golden::render_delta_table().map_err(usage)?;
    write!(out, "{table}")?;
    let ok = table == golden::DELTA_TABLE;
    if !ok {
        writeln!(out, "mismatch against the shipped table:")?;
        write!(out, "{}", golden::DELTA_TABLE)?;
    }
    Ok(code(ok))
}

pub(super) fn secant(out: &mut dyn Write, d: u32, n: u32, k: u32, c: &Common) -> Outcome {
    let dual_spec = SystemSpec::new(d, n, k + 1).map_err(usage)?;
    let fields = c.fields(d)?;
    let field = fields[0];
    let t0 = Instant::now();
    let r = veronese_secant_dim(d, n, k, field, c.trials, c.seed).map_err(usage)?;
    let dual = system_dim(dual_spec, field, c.trials, c.seed).map_err(usage)?;
    let ok = r.measured_dim == r.big_n - 1 - dual.actual;
    let mut rec = SweepRecord::new("secant", d, n, field, c.seed)
        .with("measured_dim", r.measured_dim)
        .with("expected_dim", r.expected_dim)
        .with("defect", r.defect)
        .with("dual_dim", dual.actual)
        .with("agreement", ok);
    rec.k = Some(k);
    rec.wall_ms = elapsed_ms(t0);
    save(c.out.as_deref(), &[rec])?;

    writeln!(out, "secant {k} of the degree-{d} Veronese of P^{n} in P^{}", r.big_n)?;
    writeln!(
        out,
        "dimension {}, expected {}, defect {}",
        r.measured_dim, r.expected_dim, r.defect
    )?;
    writeln!(
        out,
        "dual {dual_spec}: dimension {}, duality holds: {}",
        dual.actual,
        yes_no(ok)
    )?;
    Ok(code(ok))
}

/// Label of a member's singularities, as stored in records.
pub(super) fn sing_label(
    f: &HomogeneousPoly,
    points: &[Vec<Scalar>],
    slices: usize,
    seed: u64,
) -> Result<&'static str, CliError> {
    if f.degree() % 2 == 0 && square_detect(f).is_some() {
        return Ok("square");
    }
    let r = singularity_report(f, points, slices, seed).map_err(usage)?;
    Ok(match r.finiteness {
        Finiteness::Infinite => "curve",
        _ if r.all_nodes(f.n()) => "nodes",
        _ => "degenerate",
    })
}

/// What the theory says the label should be, when it says anything.
pub(super) fn expected_label(spec: SystemSpec) -> Option<&'static str> {
    let SystemSpec { d, n, l } = spec;
    if n == 2 {
        let m = d / 2;
        let conic_like = d % 2 == 0 && l as usize + 1 == binomial_usize(m as usize + 2, 2);
        return (conic_like && ah_status(spec).dim == 0).then_some("square");
    }
    match conum_verdict(spec).ok()? {
        ConumVerdict::Nodal => Some("nodes"),
        ConumVerdict::NonNodal(why) if why.contains("double") => Some("square"),
        ConumVerdict::NonNodal(_) => Some("curve"),
        ConumVerdict::Indeterminate => None,
    }
}

pub(super) fn sing_probe(
    out: &mut dyn Write,
    d: u32,
    n: u32,
    l: u32,
    slices: usize,
    c: &Common,
) -> Outcome {
    let spec = SpecializedSpec::of(d, n, l, 0).map_err(usage)?;
    if d < 2 {
        return Err(usage("need d >= 2"));
    }
    let field = c.fields(d)?[0];
    let t0 = Instant::now();
    let config = sample_config(spec, field, c.seed).map_err(usage)?;
    let f = match random_member(spec, &config, c.seed + 1) {
        Ok(f) => f,
        Err(crate::interpolation::InterpolationError::Empty(_)) => {
            writeln!(out, "{}: empty system", spec.base)?;
            return Ok(EXIT_OK);
        }
        Err(e) => return Err(usage(e)),
    };
    let points: Vec<Vec<Scalar>> = config.points().cloned().collect();
    let label = sing_label(&f, &points, slices, c.seed)?;
    let expected = expected_label(spec.base);
    let ok = expected.map_or(true, |e| e == label);
    let mut rec = SweepRecord::new("sing-probe", d, n, field, c.seed).with("sing", label);
    rec.l = Some(l);
    if let Some(e) = expected {
        rec = rec.with("predicted", e).with("agreement", ok);
    }
    rec.wall_ms = elapsed_ms(t0);
    save(c.out.as_deref(), &[rec])?;

    writeln!(out, "{}: random member over {field}: {label}", spec.base)?;
    match expected {
        Some(e) => writeln!(out, "predicted {e}, agreement {}", yes_no(ok))?,
        None => writeln!(out, "no prediction")?,
    }
    Ok(code(ok))
}

fn random_binary(field: Field, d: u32, rng: &mut ChaCha8Rng) -> Result<BinaryForm, CliError> {
    let c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-100..=100)).collect();
    BinaryForm::from_i64(field, &c).map_err(usage)
}

pub(super) fn uniqueness(out: &mut dyn Write, d: u32, n: u32, c: &Common) -> Outcome {
    if d == 0 || n == 0 {
        return Err(usage("need d, n >= 1"));
    }
    let v = waring_verdict(d, n);
    writeln!(out, "({d},{n}): {} ({})", tag_name(&v.tag), v.citation)?;
    match v.s() {
        Some(s) => writeln!(out, "k+1 = {s} (integral)")?,
        None => writeln!(out, "C(d+n,n)/(n+1) is not integral")?,
    }
    let mut ok = true;
    if (d, n) == (5, 2) {
        let field = c.fields(d * d)?[0];
        let spec = SpecializedSpec::of(5, 2, 6, 0).map_err(usage)?;
        let config = sample_config(spec, field, c.seed).map_err(usage)?;
        let forms = conditions_matrix(spec, &config)
            .map_err(usage)?
            .matrix
            .kernel()
            .into_iter()
            .map(|v| HomogeneousPoly::from_coeffs(field, 2, 5, v))
            .collect::<Result<Vec<_>, _>>()
            .map_err(usage)?;
        let points: Vec<Vec<Scalar>> = config.points().cloned().collect();
        for t in 0..u64::from(c.trials) {
            let r = map_rank_and_degree(&forms, &points, c.seed + t).map_err(usage)?;
            ok &= r.verdict == MapVerdict::Birational && r.fiber_count == Some(1);
            writeln!(
                out,
                "evidence: map degree {} at target {t}",
                r.fiber_count.map_or("?".into(), |x| x.to_string())
            )?;
        }
    } else if n == 1 && d % 2 == 1 && d >= 3 {
        let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
        let f = random_binary(Field::Rational, d, &mut rng)?;
        let cert = sylvester_certificate(&f).map_err(usage)?;
        ok = cert.unique && cert.apolar;
        writeln!(
            out,
            "evidence: random form has a unique decomposition with {} summands: {}",
            cert.s,
            yes_no(ok)
        )?;
    }
    Ok(code(ok))
}

pub(super) fn sylvester(out: &mut dyn Write, d: u32, c: &Common) -> Outcome {
    if d < 3 || d % 2 == 0 {
        return Err(usage(format!("need odd d >= 3, got {d}")));
    }
    let field = match c.mode {
        super::Mode::Prime => c.fields(d)?[0],
        _ => Field::Rational,
    };
    let k = d.div_ceil(2);
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let mut unique = 0;
    for _ in 0..c.trials {
        let f = random_binary(field, d, &mut rng)?;
        let cert = sylvester_certificate(&f).map_err(usage)?;
        if cert.unique && cert.apolar && cert.s == k {
            unique += 1;
        }
    }
    let mut recovered = 0;
    for s in 1..k {
        let terms: Vec<(Scalar, Scalar, Scalar)> = (0..s)
            .map(|_| {
                (
                    field.random_nonzero(&mut rng, 100),
                    field.random(&mut rng, 100),
                    field.random(&mut rng, 100),
                )
            })
            .collect();
        let f = BinaryForm::power_sum(field, d, &terms);
        if !f.is_zero() && minimal_certificate(&f).map_err(usage)?.s == s {
            recovered += 1;
        }
    }
    let ok = unique == c.trials && recovered == k - 1;
    writeln!(out, "degree {d} over {field}: {unique}/{} forms unique with {k} summands", c.trials)?;
    writeln!(out, "power sums with fewer summands recovered: {recovered}/{}", k - 1)?;
    Ok(code(ok))
}

pub(super) fn report(out: &mut dyn Write, path: Option<&Path>) -> Outcome {
    let mut ok = true;
    let delta = golden::render_delta_table().map_err(usage)? == golden::DELTA_TABLE;
    let ah = golden::ah_exceptions() == crate::numerology::AH_EXCEPTIONS.to_vec();
    let uniq = golden::uniqueness_table()
        .into_iter()
        .all(|(d, n, tag)| waring_verdict(d, n).tag == tag);
    writeln!(out, "shipped delta table reproduced: {}", yes_no(delta))?;
    writeln!(out, "shipped exceptional list matches: {}", yes_no(ah))?;
    writeln!(out, "shipped uniqueness table matches: {}", yes_no(uniq))?;
    ok &= delta && ah && uniq;
    if let Some(p) = path {
        let records = read_records(p)?;
        let mut per_command: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
        for r in &records {
            let e = per_command.entry(r.command.as_str()).or_default();
            e.0 += 1;
            if super::sweep::disagrees(r) {
                e.1 += 1;
            }
        }
        writeln!(out, "{:<12} {:>8} {:>14}", "command", "records", "disagreements")?;
        for (cmd, (count, bad)) in &per_command {
            writeln!(out, "{cmd:<12} {count:>8} {bad:>14}")?;
            ok &= *bad == 0;
        }
        let errors = records.iter().filter(|r| r.outcome.contains_key("error")).count();
        writeln!(out, "records: {}, failed cells: {errors}", records.len())?;
        let fields: std::collections::BTreeSet<&str> =
            records.iter().map(|r| r.field.as_str()).collect();
        writeln!(out, "fields: {}", fields.into_iter().collect::<Vec<_>>().join(", "))?;
    }
    Ok(code(ok))
}
