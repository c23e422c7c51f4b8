use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{json, Value};

use pkernel::action::{validate_tpa, TwistedPartialAction};
use pkernel::json as io;
use pkernel::kernel::{
    classify_extensions, extension_if_unobstructed, obstruction, survey, AbstractKernel, Selection, SurveyOutcome,
};
use pkernel::semigroup::{all_ideals, analyze_inverse};
use pkernel::sigma::sigma_quotient;
use pkernel::{Carrier, Clifford, Error, FiniteGroup, FiniteSemigroup, Result, Session};

use crate::{Command, InputArg, Outcome};

struct Loaded {
    role: String,
    path: PathBuf,
    value: Value,
    base: PathBuf,
}

const ROLES: [&str; 6] = ["semigroup", "algebra", "group", "kernel", "tpa", "multiplier"];

fn detect(v: &Value) -> Option<&'static str> {
    if v.get("reps").is_some() {
        Some("kernel")
    } else if v.get("theta").is_some() {
        Some("tpa")
    } else if v.get("carrier").is_some() {
        Some("multiplier")
    } else if v.get("table").is_some() {
        Some("semigroup")
    } else {
        None
    }
}

fn load(inputs: &[InputArg]) -> Result<Vec<Loaded>> {
    inputs
        .iter()
        .map(|i| {
            let (value, base) = io::read(&i.path)?;
            let role = match &i.role {
                Some(r) if ROLES.contains(&r.as_str()) => r.clone(),
                Some(r) => return Err(Error::Malformed(format!("unknown input role \"{r}\""))),
                None => detect(&value)
                    .ok_or_else(|| Error::Malformed(format!("cannot tell what {} contains", i.path.display())))?
                    .to_string(),
            };
            Ok(Loaded {
                role,
                path: i.path.clone(),
                value,
                base,
            })
        })
        .collect()
}

fn find<'a>(inputs: &'a [Loaded], roles: &[&str]) -> Result<&'a Loaded> {
    inputs
        .iter()
        .find(|i| roles.contains(&i.role.as_str()))
        .ok_or_else(|| Error::Malformed(format!("missing input with role {}", roles.join(" or "))))
}

fn semigroup(l: &Loaded) -> Result<FiniteSemigroup> {
    io::semigroup_from_value(&l.value, &l.base)
}

fn group(l: &Loaded) -> Result<FiniteGroup> {
    io::group_from_value(&l.value, &l.base)
}

fn tpa(l: &Loaded) -> Result<TwistedPartialAction> {
    validate_tpa(io::tpa_parts_from_value(&l.value, &l.base)?)
}

fn kernel(session: &Session, inputs: &[Loaded]) -> Result<AbstractKernel> {
    let l = find(inputs, &["kernel", "tpa"])?;
    if l.role == "kernel" {
        io::kernel_from_value(session, &l.value, &l.base)
    } else {
        AbstractKernel::of_tpa(session, &tpa(l)?)
    }
}

pub fn run(session: &Session, command: Command, inputs: &[InputArg], seed: Option<u64>) -> Result<Outcome> {
    let inputs = load(inputs)?;
    if inputs.is_empty() {
        return Err(Error::Malformed("no --input given".into()));
    }
    match command {
        Command::Validate => validate(session, &inputs),
        Command::Analyze => analyze(session, &semigroup(find(&inputs, &["semigroup", "algebra"])?)?),
        Command::Cohomology { degree } => cohomology(session, &inputs, degree),
        Command::Obstruction => obstruction_report(session, &inputs, seed),
        Command::Extend => extend(session, &inputs),
        Command::Classify => classify(session, &inputs),
        Command::Survey => survey_report(session, &inputs),
    }
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

fn validate(session: &Session, inputs: &[Loaded]) -> Result<Outcome> {
    let mut out = Vec::new();
    for l in inputs {
        let summary = match l.role.as_str() {
            "semigroup" | "algebra" => {
                let s = semigroup(l)?;
                let inverse = analyze_inverse(&s).ok();
                json!({
                    "order": s.order(),
                    "inverse": inverse.is_some(),
                    "clifford": inverse.is_some_and(|i| i.is_clifford),
                })
            }
            "group" => json!({"order": group(l)?.order()}),
            "kernel" => {
                let k = io::kernel_from_value(session, &l.value, &l.base)?;
                json!({
                    "group_order": k.group().order(),
                    "domains": k.group().elements().map(|g| k.domain(g).members().to_vec()).collect::<Vec<_>>(),
                })
            }
            "tpa" => {
                let t = tpa(l)?;
                json!({"group_order": t.group().order(), "untwisted": t.is_untwisted()})
            }
            "multiplier" => {
                let m = io::standalone_multiplier(&l.value, &l.base)?;
                json!({"invertible": m.is_invertible(), "central": m.is_central()})
            }
            _ => unreachable!("roles are checked on load"),
        };
        out.push(json!({"path": display(&l.path), "role": l.role, "valid": true, "summary": summary}));
    }
    Ok(Outcome::Done(json!({"inputs": out})))
}

fn analyze(session: &Session, s: &FiniteSemigroup) -> Result<Outcome> {
    let s = Arc::new(s.clone());
    let whole = Carrier::full(&s);
    let monoid = session.monoid(&whole)?;
    let ideals: Vec<Vec<usize>> = all_ideals(&s)
        .iter()
        .filter(|i| !i.is_empty())
        .map(|i| i.members().to_vec())
        .collect();
    let mut v = json!({
        "order": s.order(),
        "commutative": s.is_commutative(),
        "identity": s.identity(),
        "ideals": ideals,
        "multipliers": monoid.len(),
        "invertible_multipliers": monoid.units().len(),
    });
    match analyze_inverse(&s) {
        Ok(inv) => {
            v["inverse"] = json!(inv.inverse);
            v["idempotents"] = json!(inv.idempotents);
            v["center"] = json!(inv.center);
            v["clifford"] = json!(inv.is_clifford);
            if inv.is_clifford {
                let a = Clifford::new(s.clone())?;
                let q = sigma_quotient(session, &a)?;
                v["sigma"] = json!({"elements": q.elements.len(), "classes": q.classes.len()});
            }
        }
        Err(e) => {
            v["inverse"] = Value::Null;
            v["clifford"] = json!(false);
            v["not_inverse"] = io::error_to_value(&e);
        }
    }
    Ok(Outcome::Done(v))
}

fn cohomology(session: &Session, inputs: &[Loaded], degree: Option<usize>) -> Result<Outcome> {
    let k = kernel(session, inputs)?;
    let module = k.module(session)?;
    let degrees = match degree {
        Some(d) if (1..=3).contains(&d) => vec![d],
        Some(d) => return Err(Error::ShapeMismatch(format!("degree {d} is outside 1..=3"))),
        None => vec![1, 2, 3],
    };
    let reports = degrees
        .into_iter()
        .map(|d| Ok(io::cohomology_to_value(&module, &module.cohomology(session, d)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Outcome::Done(json!({"center": module.algebra().members(), "cohomology": reports})))
}

fn obstruction_report(session: &Session, inputs: &[Loaded], seed: Option<u64>) -> Result<Outcome> {
    let k = kernel(session, inputs)?;
    let module = k.module(session)?;
    let selection = seed.map_or(Selection::Least, Selection::Seeded);
    let o = obstruction(session, &k, &module, selection)?;
    let n = k.group().order();
    let mut factors = serde_json::Map::new();
    for x in 0..n {
        for y in 0..n {
            let w = &o.factor_set[x * n + y];
            if !w.is_identity() {
                factors.insert(format!("{x},{y}"), io::multiplier_to_value(w));
            }
        }
    }
    let v = json!({
        "factor_set": factors,
        "beta": io::cochain_to_value(&module, &o.cocycle),
        "H3": o.h3.order(),
        "class": if o.is_trivial() { json!("trivial") } else { json!(o.class) },
    });
    Ok(if o.is_trivial() { Outcome::Done(v) } else { Outcome::Negative(v) })
}

fn obstructed(class: usize) -> Outcome {
    Outcome::Negative(json!({"obstructed": true, "class": class}))
}

fn extend(session: &Session, inputs: &[Loaded]) -> Result<Outcome> {
    let k = kernel(session, inputs)?;
    let module = k.module(session)?;
    match extension_if_unobstructed(session, &k, &module) {
        Ok((t, ext)) => Ok(Outcome::Done(json!({
            "action": io::tpa_to_value(&t),
            "extension": io::extension_to_value(&ext, 0),
        }))),
        Err(Error::Obstructed { class }) => Ok(obstructed(class)),
        Err(e) => Err(e),
    }
}

fn classify(session: &Session, inputs: &[Loaded]) -> Result<Outcome> {
    let k = kernel(session, inputs)?;
    let module = k.module(session)?;
    match classify_extensions(session, &k, &module) {
        Ok(c) => Ok(Outcome::Done(json!({
            "H2": io::cohomology_to_value(&module, &c.h2),
            "classes": c.extensions.len(),
            "extensions": c
                .extensions
                .iter()
                .map(|e| io::extension_to_value(&e.extension, e.class))
                .collect::<Vec<_>>(),
        }))),
        Err(Error::Obstructed { class }) => Ok(obstructed(class)),
        Err(e) => Err(e),
    }
}

fn survey_report(session: &Session, inputs: &[Loaded]) -> Result<Outcome> {
    let a = Arc::new(Clifford::new(Arc::new(semigroup(find(inputs, &["algebra", "semigroup"])?)?))?);
    let g = group(find(inputs, &["group"])?)?;
    let entries = survey(session, &a, &g)?;
    let mut tally = json!({"rejected": 0, "extendable": 0, "obstructed": 0});
    let rows: Vec<Value> = entries
        .iter()
        .map(|e| {
            let (key, outcome) = match &e.outcome {
                SurveyOutcome::Rejected(err) => ("rejected", json!({"rejected": io::error_to_value(err)})),
                SurveyOutcome::Obstructed { class, h3_order } => {
                    ("obstructed", json!({"obstructed": {"class": class, "H3": h3_order}}))
                }
                SurveyOutcome::Extendable { h2_order, h3_order } => {
                    ("extendable", json!({"extendable": {"H2": h2_order, "H3": h3_order}}))
                }
                SurveyOutcome::Failed(err) => ("failed", json!({"failed": io::error_to_value(err)})),
            };
            tally[key] = json!(tally[key].as_u64().unwrap_or(0) + 1);
            json!({"assignment": e.assignment, "outcome": outcome})
        })
        .collect();
    Ok(Outcome::Done(json!({"kernels": rows, "tally": tally})))
}
