use serde::Serialize;
use serde_json::{json, Value};

use cantorval::digits::{restricted_in_maximal_interval, to_restricted_digits};
use cantorval::distribution::{char_fn_many, classify as classify_law, VerdictKind, Witness};
use cantorval::geometry::{
    box_counting_estimate_with_limits, cover_table, cylinder_cover_with_limits, gaps_with_limits,
    maximal_interval, similarity_dimension, RatioFamily,
};
use cantorval::rational::{format_ratio, parse_ratio, to_f64};
use cantorval::sampling::{
    cdf_bracket_with_limits, empirical_check, sample_many_eta, sample_many_xi,
};
use cantorval::{Base, DigitLaw, DigitString, Error, IntervalUnion, Limits, Result};

use crate::output::{real, Report};
use crate::spec::{parse_depths, parse_eta, parse_grid, read_law};
use crate::{GeomArgs, GeometryAction, LawArgs};

fn to_json<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("plain data serializes")
}

fn law_of(args: &LawArgs) -> Result<DigitLaw> {
    read_law(args.law.as_deref(), args.law_file.as_deref())
}

fn enum_name<T: Serialize>(value: &T) -> String {
    match to_json(value) {
        Value::String(s) => s,
        _ => String::new(),
    }
}

pub fn classify(args: &LawArgs, depth: u32) -> Result<Report> {
    let law = law_of(args)?;
    let verdict = classify_law(&law, depth)?;
    let mut r = Report::new(
        "classify",
        vec!["kind", "reason", "u", "v", "limsup_lower_bound", "depth"],
    );
    let (u, v) = match &verdict.witness {
        Some(Witness::Criteria(c)) => (real(c.u), real(c.v)),
        Some(Witness::Split(sp)) => (real(sp.u), real(sp.v)),
        None => (String::new(), String::new()),
    };
    r.row(vec![
        enum_name(&verdict.kind),
        verdict.reason.as_ref().map(enum_name).unwrap_or_default(),
        u,
        v,
        real(verdict.limsup_lower_bound),
        depth.to_string(),
    ]);
    r.set("law", to_json(&law));
    r.set("verdict", to_json(&verdict));
    if verdict.kind == VerdictKind::Unknown {
        r.exit_code = 3;
    }
    Ok(r)
}

pub fn charfn(args: &LawArgs, grid: &str, depth: u32) -> Result<Report> {
    let law = law_of(args)?;
    let ts = parse_grid(grid)?;
    let values = char_fn_many(&law, &ts, depth)?;
    let mut r = Report::new(
        "charfn",
        vec!["t", "re", "im", "abs", "radius", "low_confidence"],
    );
    let mut items = Vec::with_capacity(values.len());
    for v in &values {
        let abs = v.value().norm();
        r.row(vec![
            real(v.t),
            real(v.re),
            real(v.im),
            real(abs),
            real(v.radius),
            v.low_confidence.to_string(),
        ]);
        items.push(json!({
            "t": v.t,
            "re": v.re,
            "im": v.im,
            "abs": abs,
            "radius": v.radius,
            "low_confidence": v.low_confidence,
        }));
    }
    r.set("law", to_json(&law));
    r.set("depth", depth);
    r.set("values", items);
    Ok(r)
}

fn union_report(
    command: &'static str,
    key: &str,
    base: Base,
    depth: usize,
    u: &IntervalUnion,
) -> Report {
    let mut r = Report::new(command, vec!["lo", "hi", "length"]);
    for iv in u.parts() {
        r.row(vec![
            format_ratio(iv.lo()),
            format_ratio(iv.hi()),
            format_ratio(&iv.width()),
        ]);
    }
    r.set("s", base.s());
    r.set("depth", depth);
    r.set("count", u.len());
    r.set("total_length", format_ratio(&u.total_length()));
    r.set(key, to_json(u));
    r
}

fn default_depths(s: u32) -> Vec<usize> {
    match s {
        4 => (4..=10).collect(),
        5 | 6 => (3..=8).collect(),
        _ => (2..=5).collect(),
    }
}

pub fn geometry(action: GeometryAction, limits: &Limits) -> Result<Report> {
    match action {
        GeometryAction::Gaps(GeomArgs { s, depth }) => {
            let base = Base::new(s)?;
            let g = gaps_with_limits(base, depth, limits)?;
            Ok(union_report("geometry/gaps", "gaps", base, depth, &g))
        }
        GeometryAction::Cover(GeomArgs { s, depth }) => {
            let base = Base::new(s)?;
            let c = cylinder_cover_with_limits(base, depth, limits)?;
            Ok(union_report(
                "geometry/cover",
                "components",
                base,
                depth,
                &c,
            ))
        }
        GeometryAction::Measure(GeomArgs { s, depth }) => {
            let base = Base::new(s)?;
            let rows = cover_table(base, depth, limits)?;
            let mut r = Report::new("geometry/measure", vec!["depth", "count", "measure"]);
            for row in &rows {
                r.row(vec![
                    row.depth.to_string(),
                    row.count.to_string(),
                    format_ratio(&row.measure),
                ]);
            }
            let last = rows.last().expect("depth 0 is always present");
            r.set("s", s);
            r.set("depth", depth);
            r.set("measure", format_ratio(&last.measure));
            r.set("rows", to_json(&rows));
            Ok(r)
        }
        GeometryAction::Dims { s, depths } => {
            let base = Base::new(s)?;
            let depths = match depths {
                Some(text) => parse_depths(&text)?,
                None => default_depths(s),
            };
            let closed_form = similarity_dimension(&RatioFamily::boundary(base))?;
            let est = box_counting_estimate_with_limits(base, &depths, limits)?;
            let mut r = Report::new(
                "geometry/dims",
                vec!["depth", "boxes", "closed_form", "slope"],
            );
            for c in &est.counts {
                r.row(vec![
                    c.depth.to_string(),
                    c.boxes.to_string(),
                    real(closed_form),
                    real(est.slope),
                ]);
            }
            r.set("s", s);
            r.set("closed_form", closed_form);
            r.set("slope", est.slope);
            r.set("counts", to_json(&est.counts));
            Ok(r)
        }
        GeometryAction::Interval { s } => {
            let base = Base::new(s)?;
            let iv = maximal_interval(base);
            let mut r = Report::new("geometry/interval", vec!["lo", "hi"]);
            r.row(vec![format_ratio(iv.lo()), format_ratio(iv.hi())]);
            r.set("s", s);
            r.set("lo", format_ratio(iv.lo()));
            r.set("hi", format_ratio(iv.hi()));
            Ok(r)
        }
    }
}

pub fn convert(s: u32, x: Option<&str>, value: Option<&str>) -> Result<Report> {
    let base = Base::new(s)?;
    let (input, out) = match (x, value) {
        (Some(text), None) => {
            let d = DigitString::parse(base, text)?;
            let out = to_restricted_digits(&d)?;
            (d.to_string(), out)
        }
        (None, Some(text)) => {
            let y = parse_ratio(text)?;
            (format_ratio(&y), restricted_in_maximal_interval(base, &y)?)
        }
        _ => {
            return Err(Error::InvalidArgument(
                "give exactly one of --x and --value".into(),
            ))
        }
    };
    let value = format_ratio(&out.value());
    let mut r = Report::new("convert", vec!["input", "output", "value"]);
    r.row(vec![input.clone(), out.to_string(), value.clone()]);
    r.set("s", s);
    r.set("input", input);
    r.set("output", out.to_string());
    r.set("value", value);
    Ok(r)
}

fn check_budget(what: &'static str, needed: usize, limits: &Limits) -> Result<()> {
    if needed > limits.max_items {
        return Err(Error::Resource {
            what,
            needed: needed as u128,
            limit: limits.max_items as u128,
        });
    }
    Ok(())
}

pub fn sample(
    args: &LawArgs,
    eta: Option<&str>,
    n: usize,
    depth: usize,
    seed: u64,
    limits: &Limits,
) -> Result<Report> {
    check_budget("sample digits", n.saturating_mul(depth), limits)?;
    let mut r = Report::new("sample", vec!["index", "value"]);
    let values = match eta {
        Some(text) => {
            let (m, q0) = parse_eta(text)?;
            r.set("eta", json!({ "m": m, "q0": q0 }));
            sample_many_eta(m, q0, depth, n, seed)?
        }
        None => {
            let law = law_of(args)?;
            r.set("law", to_json(&law));
            sample_many_xi(&law, depth, n, seed)?
        }
    };
    for (i, v) in values.iter().enumerate() {
        r.row(vec![i.to_string(), real(*v)]);
    }
    r.set("n", n);
    r.set("depth", depth);
    r.set("seed", seed);
    r.set("samples", values);
    Ok(r)
}

#[allow(clippy::too_many_arguments)]
pub fn cdf(
    args: &LawArgs,
    depth: usize,
    x: Option<&str>,
    check: bool,
    samples: usize,
    seed: u64,
    limits: &Limits,
) -> Result<Report> {
    let law = law_of(args)?;
    let mut r = Report::new("cdf", vec!["x", "lo", "hi", "empirical"]);
    r.set("law", to_json(&law));
    r.set("depth", depth);
    if check {
        check_budget("sample digits", samples.saturating_mul(depth), limits)?;
        let report = empirical_check(&law, depth, samples, seed)?;
        for row in &report.rows {
            r.row(vec![
                real(row.x),
                real(row.lo),
                real(row.hi),
                real(row.empirical),
            ]);
        }
        r.set("seed", seed);
        r.set("passed", report.statistic <= 0.0);
        r.set("check", to_json(&report));
        return Ok(r);
    }
    let points =
        x.ok_or_else(|| Error::InvalidArgument("--x is required without --check".into()))?;
    let mut brackets = Vec::new();
    for p in points.split(',') {
        let at = parse_ratio(p)?;
        let b = cdf_bracket_with_limits(&law, depth, &at, limits)?;
        r.row(vec![
            real(to_f64(&at)),
            real(b.lo),
            real(b.hi),
            String::new(),
        ]);
        brackets.push(to_json(&b));
    }
    r.set("brackets", brackets);
    Ok(r)
}
