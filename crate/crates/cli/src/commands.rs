//! The five verbs. Each takes a parsed document and returns the JSON result.

use std::thread;

use onemotive::curves::{abel_jacobi_plus, curve_motives, curve_report, dual_graph};
use onemotive::duality::{cartier_dual, double_dual_compare, pairing_mod_m, symmetric_avatar};
use onemotive::iso::iso_test;
use onemotive::realizations::{realization_sequences_check, t_de_rham, t_hodge, t_mod_m};
use onemotive::report::Report;
use onemotive::Config;
use serde_json::{json, Value};

use crate::convert::*;
use crate::schema::{schema_validate, DocKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verb {
    Realize,
    Dualize,
    Check,
    Curve,
    Aj,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Options {
    pub levels: Vec<u64>,
    pub cfg: Config,
    /// Significant digits of output floats.
    pub precision: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { levels: vec![2, 3, 4], cfg: Config::default(), precision: 15 }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{}", schema_message(.0))]
    Schema(Report),
    #[error("invalid input{}: {err}", at.as_ref().map(|i| format!(" at item {i}")).unwrap_or_default())]
    Input { at: Option<usize>, err: onemotive::Error },
    #[error("{0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

fn schema_message(r: &Report) -> String {
    let bad: Vec<String> = r
        .details
        .iter()
        .filter(|f| f.status != onemotive::report::Status::Pass)
        .map(|f| format!("field \"{}\": {}", f.name, f.message))
        .collect();
    format!("schema validation failed: {}", bad.join("; "))
}

/// Result of a verb: the JSON document and whether any check in it failed.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub value: Value,
    pub failed: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.failed {
            2
        } else {
            0
        }
    }
}

fn validated(doc: &Value, kind: DocKind) -> Result<(), CliError> {
    let rep = schema_validate(doc, kind);
    if rep.passed() {
        Ok(())
    } else {
        Err(CliError::Schema(rep))
    }
}

fn input(err: onemotive::Error) -> CliError {
    CliError::Input { at: None, err }
}

/// Applies `f` to every item of a list in parallel, keeping input order; a single document is one item.
fn per_item(
    doc: &Value,
    kind: DocKind,
    f: impl Fn(&Value) -> Result<Outcome, CliError> + Sync,
) -> Result<Outcome, CliError> {
    let Some(items) = doc.as_array() else {
        validated(doc, kind)?;
        return f(doc);
    };
    for it in items {
        validated(it, kind)?;
    }
    let results: Vec<Result<Outcome, CliError>> = thread::scope(|s| {
        let handles: Vec<_> = items.iter().map(|it| s.spawn(|| f(it))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut values = Vec::with_capacity(items.len());
    let mut failed = false;
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(o) => {
                failed |= o.failed;
                values.push(o.value);
            }
            Err(CliError::Input { err, .. }) => return Err(CliError::Input { at: Some(i), err }),
            Err(e) => return Err(e),
        }
    }
    Ok(Outcome { value: Value::Array(values), failed })
}

fn realize(doc: &Value, opts: &Options) -> Result<Outcome, CliError> {
    let m = motive_from_json(doc, &opts.cfg).map_err(input)?;
    let h = t_hodge(&m);
    let type_rep = h.type_report(&opts.cfg);
    let dr = t_de_rham(&m);
    let mut failed = !type_rep.passed();
    let mut levels = Vec::new();
    for &l in &opts.levels {
        let fl = t_mod_m(&m, l).map_err(input)?;
        let ex = fl.exactness_report();
        failed |= !ex.passed();
        levels.push(json!({"level": l, "group": group_json(&fl.group), "exactness": report_json(&ex)}));
    }
    let value = json!({
        "motive": motive_json(&m),
        "hodge": hodge_json(&h),
        "hodge_type": report_json(&type_rep),
        "de_rham": {
            "dim": dr.dim,
            "f0_dim": dr.f0_dim,
            "lie_dim": dr.lie_dim,
            "ext_abelian_dim": dr.ext_abelian_dim,
            "ext_lattice_dim": dr.ext_lattice_dim,
        },
        "finite_levels": levels,
    });
    Ok(Outcome { value, failed })
}

fn dualize(doc: &Value, opts: &Options) -> Result<Outcome, CliError> {
    let m = motive_from_json(doc, &opts.cfg).map_err(input)?;
    let (d, psi) = cartier_dual(&m, &opts.cfg).map_err(input)?;
    let av = symmetric_avatar(&m, &opts.cfg).map_err(input)?;
    let mut failed = false;
    let mut pairings = Vec::new();
    for &l in &opts.levels {
        let p = pairing_mod_m(&m, l, &opts.cfg).map_err(input)?;
        failed |= !p.perfect;
        pairings.push(json!({"level": l, "gram": imat_json(&p.gram), "perfect": p.perfect}));
    }
    let value = json!({
        "dual": motive_json(&d),
        "psi": imat_json(&psi),
        "avatar": {
            "lattice_rank": av.lattice_rank,
            "dual_lattice_rank": av.dual_lattice_rank,
            "abelian_omega": cmat_json(av.abelian.omega()),
            "dual_abelian_omega": cmat_json(av.dual_abelian.omega()),
            "u": cmat_json(&av.u),
            "v": av.v.iter().map(|p| complex_list_json(&p.value)).collect::<Vec<_>>(),
        },
        "pairings": pairings,
    });
    Ok(Outcome { value, failed })
}

fn check(doc: &Value, opts: &Options) -> Result<Outcome, CliError> {
    validated(doc, DocKind::Check)?;
    let (docs, pairs): (Vec<&Value>, Vec<(usize, usize)>) = match (doc.as_array(), doc.get("motives")) {
        (Some(list), _) => (list.iter().collect(), Vec::new()),
        (None, Some(Value::Array(list))) => {
            let pairs = doc
                .get("iso_pairs")
                .and_then(Value::as_array)
                .map(|ps| ps.iter().map(|p| (p[0].as_u64().unwrap_or(0) as usize, p[1].as_u64().unwrap_or(0) as usize)).collect())
                .unwrap_or_default();
            (list.iter().collect(), pairs)
        }
        _ => (vec![doc], Vec::new()),
    };
    let mut motives = Vec::with_capacity(docs.len());
    for (i, d) in docs.iter().enumerate() {
        motives.push(motive_from_json(d, &opts.cfg).map_err(|err| CliError::Input { at: Some(i), err })?);
    }
    let reports: Vec<(Report, Report)> = thread::scope(|s| {
        let hs: Vec<_> = motives
            .iter()
            .map(|m| s.spawn(|| (realization_sequences_check(m, &opts.levels, &opts.cfg), double_dual_compare(m, &opts.cfg))))
            .collect();
        hs.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut failed = false;
    let mut per = Vec::new();
    for (i, (real, dd)) in reports.iter().enumerate() {
        failed |= !real.passed() || !dd.passed();
        per.push(json!({"index": i, "realizations": report_json(real), "double_dual": report_json(dd)}));
    }
    let iso: Vec<Value> = pairs
        .iter()
        .map(|&(i, j)| {
            let out = iso_test(&motives[i], &motives[j], &opts.cfg);
            let detail = match &out {
                onemotive::iso::IsoOutcome::VerifiedIso(_) => "isomorphism found and verified".to_string(),
                onemotive::iso::IsoOutcome::VerifiedDistinct(why) | onemotive::iso::IsoOutcome::Unknown(why) => why.clone(),
            };
            json!({"pair": [i, j], "outcome": out.label(), "detail": detail})
        })
        .collect();
    Ok(Outcome { value: json!({"motives": per, "iso": iso, "passed": !failed}), failed })
}

fn curve(doc: &Value, opts: &Options) -> Result<Outcome, CliError> {
    let c = curve_from_json(doc, &opts.cfg).map_err(input)?;
    let ms = curve_motives(&c, &opts.cfg).map_err(input)?;
    let rep = curve_report(&c, &opts.cfg).map_err(input)?;
    let gr = dual_graph(&c);
    let label = |p: usize| c.points()[p].label.clone();
    let value = json!({
        "alb_plus": motive_json(&ms.alb_plus),
        "alb_minus": motive_json(&ms.alb_minus),
        "pic_plus": motive_json(&ms.pic_plus),
        "pic_minus": motive_json(&ms.pic_minus),
        "dual_graph": {
            "vertices": c.components().iter().map(|k| k.label.clone()).collect::<Vec<_>>(),
            "edges": gr.edges.iter().map(|&(p, q)| json!([label(p), label(q)])).collect::<Vec<_>>(),
            "connected_components": gr.connected,
            "b1": gr.b1,
        },
        "report": report_json(&rep),
    });
    Ok(Outcome { value, failed: !rep.passed() })
}

fn aj(doc: &Value, opts: &Options) -> Result<Outcome, CliError> {
    let c = curve_from_json(&doc["curve"], &opts.cfg).map_err(input)?;
    let d = divisor_from_json(&doc["divisor"]);
    let p = abel_jacobi_plus(&c, &d, &opts.cfg).map_err(input)?;
    let t = p.model.t();
    let value = json!({
        "model": motive_json(&p.model),
        "lie": complex_list_json(&p.lie),
        "torus_values": complex_list_json(&p.torus_values()),
        "abelian": complex_list_json(&p.lie[t..]),
        "is_identity": p.is_identity(opts.cfg.tol.max(1e-9)),
    });
    Ok(Outcome { value, failed: false })
}

/// Runs a verb on a parsed document; floats in the result are rounded to `opts.precision` digits.
pub fn run(verb: Verb, doc: &Value, opts: &Options) -> Result<Outcome, CliError> {
    if opts.levels.iter().any(|&l| l < 2) {
        return Err(CliError::Usage("levels must be at least 2".into()));
    }
    let out = match verb {
        Verb::Realize => per_item(doc, DocKind::OneMotive, |d| realize(d, opts)),
        Verb::Dualize => per_item(doc, DocKind::OneMotive, |d| dualize(d, opts)),
        Verb::Check => check(doc, opts),
        Verb::Curve => per_item(doc, DocKind::CurveConfig, |d| curve(d, opts)),
        Verb::Aj => per_item(doc, DocKind::AbelJacobi, |d| aj(d, opts)),
    }?;
    Ok(Outcome { value: round_floats(out.value, opts.precision), ..out })
}

/// Parses, runs, and renders: the text written to the output and the exit code.
pub fn run_text(verb: Verb, text: &str, opts: &Options) -> Result<(String, i32), CliError> {
    let doc: Value = serde_json::from_str(text)?;
    let out = run(verb, &doc, opts)?;
    let mut s = serde_json::to_string_pretty(&out.value)?;
    s.push('\n');
    Ok((s, out.exit_code()))
}
