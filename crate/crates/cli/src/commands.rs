use std::collections::BTreeSet;
use std::path::PathBuf;

use eicf_core::eicf::{tails_equivalent, witness_transformation, Overlap, TailMatch};
use eicf_core::{
    alternate_expansion, convergent_certificate, enumerate_inf_rationals, expand_approx, expand_rational,
    is_strong_approximant, neighbors_in_f, neighbors_in_f_bounded, ApproxError, ApproxReal, EicfError, EicfSeq,
    ExtRational, FareyError,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::{parse_input, parse_rational, require_digits, Input};
use crate::render::{render, write_atomic, Layer, RenderSpec};
use crate::CliError;

/// Default `--terms`.
pub const DEFAULT_TERMS: usize = 20;
const DEFAULT_APPROXIMANT_DEN: u64 = 12;
const DEFAULT_RENDER_DEN: u64 = 8;

#[derive(Debug, Clone, Default)]
pub struct Options {
    pub digits: Option<u32>,
    pub terms: Option<usize>,
    pub max_den: Option<u64>,
}

impl Options {
    fn terms(&self) -> usize {
        self.terms.unwrap_or(DEFAULT_TERMS)
    }
}

/// Output of one command: echoed input, result, and notes. `text` is the
/// human-readable form.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub input: Value,
    pub result: Value,
    pub diagnostics: Vec<String>,
    #[serde(skip)]
    pub text: String,
}

impl Report {
    fn new(input: Value, result: Value, text: String) -> Self {
        Report { input, result, diagnostics: Vec::new(), text }
    }

    pub fn failed(input: Value, err: &CliError) -> Self {
        Report {
            input,
            result: Value::Null,
            diagnostics: vec![format!("error: {err}")],
            text: String::new(),
        }
    }
}

impl From<EicfError> for CliError {
    fn from(e: EicfError) -> Self {
        match e {
            EicfError::PrecisionExhausted { ref produced } => {
                CliError::Precision(format!("{e} after {} terms {produced}", produced.len()))
            }
            EicfError::RationalHit { .. } => CliError::Precision(e.to_string()),
            EicfError::Parse(_) => CliError::Parse(e.to_string()),
            _ => CliError::Contract(e.to_string()),
        }
    }
}

impl From<ApproxError> for CliError {
    fn from(e: ApproxError) -> Self {
        match e {
            ApproxError::Undecidable(_) => CliError::Precision(e.to_string()),
            _ => CliError::Contract(e.to_string()),
        }
    }
}

impl From<FareyError> for CliError {
    fn from(e: FareyError) -> Self {
        match e {
            FareyError::PrecisionExhausted | FareyError::RationalHit(_) => CliError::Precision(e.to_string()),
            _ => CliError::Contract(e.to_string()),
        }
    }
}

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}

/// Convergents worth listing: all of them for a finite sequence, at least
/// `terms` for one with an alternating tail.
fn listed_convergents(s: &EicfSeq, terms: usize) -> Vec<ExtRational> {
    let n = if s.is_finite() { s.len() } else { s.len().max(terms) };
    s.convergent_pairs().take(n).map(|p| p.value()).collect()
}

/// The expansion of an input to at most `terms` terms (rationals in full).
fn expansion_of(input: &Input, opts: &Options) -> Result<EicfSeq, CliError> {
    match input {
        Input::Exact(q) => Ok(expand_rational(q)),
        Input::Seq(s) => Ok(s.clone()),
        Input::Approx { value, .. } => {
            require_digits(input)?;
            Ok(expand_approx(value, opts.terms())?)
        }
    }
}

pub fn cmd_classify(arg: &str) -> Result<Report, CliError> {
    let q = parse_rational(arg)?;
    let class = q.classify();
    Ok(Report::new(
        json!({ "value": arg }),
        json!({ "value": q.to_string(), "class": class.to_string() }),
        format!("{q}: {class}"),
    ))
}

pub fn cmd_expand(arg: &str, opts: &Options) -> Result<Report, CliError> {
    let input = parse_input(arg, opts.digits)?;
    let first = expansion_of(&input, opts)?;
    let mut expansions = vec![first.canonical()];
    if !first.is_finite() {
        expansions.push(alternate_expansion(&first)?);
    }
    let class = match &input {
        Input::Approx { .. } => None,
        _ => Some(first.value().classify().to_string()),
    };
    let rows: Vec<Value> = expansions
        .iter()
        .map(|s| json!({ "eicf": s.to_string(), "convergents": strings(&listed_convergents(s, opts.terms())) }))
        .collect();
    let mut text = String::new();
    for s in &expansions {
        text.push_str(&format!("{s}\n  convergents: {}\n", strings(&listed_convergents(s, opts.terms())).join(", ")));
    }
    Ok(Report::new(
        json!({ "value": arg, "kind": input.kind() }),
        json!({ "class": class, "expansions": rows }),
        text.trim_end().to_string(),
    ))
}

pub fn cmd_eval(arg: &str) -> Result<Report, CliError> {
    let s = match parse_input(arg, None)? {
        Input::Seq(s) => s,
        other => return Err(CliError::Parse(format!("expected an EICF such as [2,2,-2], got {} input", other.kind()))),
    };
    let v = s.value();
    Ok(Report::new(
        json!({ "eicf": arg }),
        json!({ "value": v.to_string(), "class": v.classify().to_string() }),
        v.to_string(),
    ))
}

pub fn cmd_convergents(arg: &str, opts: &Options) -> Result<Report, CliError> {
    let input = parse_input(arg, opts.digits)?;
    let s = expansion_of(&input, opts)?;
    let rows: Vec<Value> = s
        .convergent_pairs()
        .take(listed_convergents(&s, opts.terms()).len())
        .enumerate()
        .map(|(i, p)| json!({ "n": i + 1, "p": p.p.to_string(), "q": p.q.to_string(), "value": p.value().to_string() }))
        .collect();
    let text = rows
        .iter()
        .map(|r| format!("w{} = {}", r["n"], r["value"].as_str().unwrap_or_default()))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Report::new(
        json!({ "value": arg, "kind": input.kind() }),
        json!({ "eicf": s.to_string(), "convergents": rows }),
        text,
    ))
}

pub fn cmd_equivalent(a: &str, b: &str, min_overlap: usize, opts: &Options) -> Result<Report, CliError> {
    let (ia, ib) = (parse_input(a, opts.digits)?, parse_input(b, opts.digits)?);
    let (sa, sb) = (expansion_of(&ia, opts)?, expansion_of(&ib, opts)?);
    let verdict = tails_equivalent(&sa, &sb, min_overlap);
    let input = json!({ "a": a, "b": b, "min_overlap": min_overlap });
    let (name, m, n, overlap, negated) = match verdict {
        TailMatch::Direct { m, n, overlap } => ("Direct", m, n, overlap, false),
        TailMatch::Negated { m, n, overlap } => ("Negated", m, n, overlap, true),
        TailMatch::NoMatchWithinBounds => {
            let result = json!({ "verdict": "NoMatchWithinBounds", "a": sa.to_string(), "b": sb.to_string() });
            let text = format!("{sa}\n{sb}\nNoMatchWithinBounds (min overlap {min_overlap})");
            return Ok(Report::new(input, result, text));
        }
    };
    let g = witness_transformation(&sa, &sb, m, n, negated)?;
    let overlap = match overlap {
        Overlap::Terms(k) => json!(k),
        Overlap::Exact => json!("exact"),
    };
    let member = g.in_extended_theta();
    let result = json!({
        "verdict": name,
        "m": m,
        "n": n,
        "overlap": overlap,
        "witness": g.to_string(),
        "in_extended_theta": member,
        "a": sa.to_string(),
        "b": sb.to_string(),
    });
    let text = format!(
        "{sa}\n{sb}\n{name} m={m} n={n} overlap={overlap}\nwitness [{g}] in extended theta: {member}"
    );
    Ok(Report::new(input, result, text))
}

pub fn cmd_approximants(arg: &str, opts: &Options) -> Result<Report, CliError> {
    let input = parse_input(arg, opts.digits)?;
    let max_den = opts.max_den.unwrap_or(DEFAULT_APPROXIMANT_DEN);
    let x = match &input {
        Input::Approx { value, .. } => value.clone(),
        _ => return Err(CliError::Precision(format!("{arg} is rational; give a decimal or sqrt(n)"))),
    };
    let inside = enumerate_inf_rationals(max_den, &ExtRational::from(x.lo()), &ExtRational::from(x.hi()))?;
    if let Some(u) = inside.first() {
        return Err(CliError::Precision(format!(
            "x must not be an ∞-rational at this precision: {x} contains {u}"
        )));
    }
    require_digits(&input)?;

    let convergents = convergents_up_to(&x, max_den);
    let two = BigRational::from_integer(2.into());
    let window = (ExtRational::from(x.mid() - &two), ExtRational::from(x.mid() + &two));
    let mut candidates = enumerate_inf_rationals(max_den, &window.0, &window.1)?;
    candidates.sort_by(|p, q| p.denom().cmp(q.denom()).then(p.compare(q).expect("finite")));

    let mut rows = Vec::new();
    let mut diagnostics = Vec::new();
    let mut text = String::new();
    for u in candidates {
        match is_strong_approximant(&u, &x) {
            Ok(true) => {}
            Ok(false) => continue,
            Err(e) => {
                diagnostics.push(format!("{u}: {e}"));
                continue;
            }
        }
        let index = convergents.iter().position(|w| *w == u).map(|i| i + 1);
        let certificate = convergent_certificate(&u, &x);
        let cert_text = match &certificate {
            Ok(Some(v)) => v.to_string(),
            Ok(None) => "none".to_string(),
            Err(e) => format!("undecidable ({e})"),
        };
        text.push_str(&format!(
            "{u}\tconvergent {}\tcertificate {cert_text}\n",
            index.map_or("?".to_string(), |i| format!("w{i}"))
        ));
        rows.push(json!({
            "u": u.to_string(),
            "convergent_index": index,
            "certificate": certificate.ok().flatten().map(|v| v.to_string()),
        }));
    }
    let mut report = Report::new(
        json!({ "x": arg, "max_den": max_den }),
        json!({ "approximants": rows }),
        text.trim_end().to_string(),
    );
    report.diagnostics = diagnostics;
    Ok(report)
}

/// Convergents of `x` until the denominator passes `max_den` or the
/// precision runs out.
fn convergents_up_to(x: &ApproxReal, max_den: u64) -> Vec<ExtRational> {
    let bound = BigInt::from(max_den);
    let mut n = 8;
    loop {
        let (s, complete) = match expand_approx(x, n) {
            Ok(s) => (s, true),
            Err(EicfError::PrecisionExhausted { produced }) => (produced, false),
            Err(_) => return Vec::new(),
        };
        let w: Vec<ExtRational> = s.convergent_pairs().map(|p| p.value()).collect();
        if !complete || w.last().is_some_and(|q| q.denom() > &bound) {
            return w;
        }
        n *= 2;
    }
}

pub fn cmd_neighbors(v: &str, lo: &str, hi: &str, opts: &Options) -> Result<Report, CliError> {
    let (v, lo_q, hi_q) = (parse_rational(v)?, parse_rational(lo)?, parse_rational(hi)?);
    let list = match opts.max_den {
        Some(d) => neighbors_in_f_bounded(&v, &lo_q, &hi_q, &BigInt::from(d))?,
        None => neighbors_in_f(&v, &lo_q, &hi_q)?,
    };
    let names = strings(&list);
    Ok(Report::new(
        json!({ "v": v.to_string(), "lo": lo, "hi": hi, "max_den": opts.max_den }),
        json!({ "neighbors": names }),
        names.join(" "),
    ))
}

#[derive(Debug, Clone)]
pub struct RenderArgs {
    pub x_min: String,
    pub x_max: String,
    pub height_scale: String,
    pub show: String,
    pub path: Option<String>,
    pub out: Option<PathBuf>,
}

fn parse_bound(s: &str) -> Result<BigRational, CliError> {
    let v = match parse_input(s, None)? {
        Input::Exact(q) => q.to_rational(),
        Input::Approx { value, .. } => Some(value.mid().clone()),
        Input::Seq(_) => None,
    };
    v.ok_or_else(|| CliError::Parse(format!("expected a finite number, got {s:?}")))
}

pub fn render_spec(args: &RenderArgs, opts: &Options) -> Result<RenderSpec, CliError> {
    let mut show: BTreeSet<Layer> = args
        .show
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect::<Result<_, _>>()?;
    let path = match &args.path {
        Some(p) => {
            show.insert(Layer::Path);
            Some(p.parse::<EicfSeq>().map_err(|e| CliError::Parse(e.to_string()))?)
        }
        None => None,
    };
    let spec = RenderSpec {
        x_min: parse_bound(&args.x_min)?,
        x_max: parse_bound(&args.x_max)?,
        max_denominator: opts.max_den.unwrap_or(DEFAULT_RENDER_DEN),
        height_scale: parse_bound(&args.height_scale)?,
        show,
        path,
    };
    spec.validate()?;
    Ok(spec)
}

pub fn cmd_render(args: &RenderArgs, opts: &Options) -> Result<Report, CliError> {
    let spec = render_spec(args, opts)?;
    let rendered = render(&spec)?;
    let input = json!({
        "x_min": args.x_min,
        "x_max": args.x_max,
        "max_den": spec.max_denominator,
        "height_scale": args.height_scale,
        "show": spec.show,
        "path": args.path,
        "out": args.out.as_ref().map(|p| p.display().to_string()),
    });
    let counts = serde_json::to_value(&rendered.counts).expect("plain struct");
    match &args.out {
        Some(out) => {
            write_atomic(out, &rendered.svg)?;
            let text = format!(
                "wrote {} ({} tree edges, {} graph edges, {} Ford circles, {} path edges)",
                out.display(),
                rendered.counts.tree_edges,
                rendered.counts.graph_edges,
                rendered.counts.ford_circles,
                rendered.counts.path_edges
            );
            Ok(Report::new(input, json!({ "out": out.display().to_string(), "counts": counts }), text))
        }
        None => Ok(Report::new(
            input,
            json!({ "svg": rendered.svg, "counts": counts }),
            rendered.svg.trim_end().to_string(),
        )),
    }
}
