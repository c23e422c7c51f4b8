//! JSON input and output. Any place that takes a semigroup accepts either an
//! inline object or a string path, resolved relative to the file that
//! contains the reference.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::action::{validate_tpa, TpaParts, TwistedPartialAction};
use crate::cohomology::{Cochain, CohomologyGroup, PartialGModule};
use crate::error::{Error, Result};
use crate::kernel::{AbstractKernel, Extension};
use crate::multiplier::{inner_multiplier, Multiplier};
use crate::semigroup::{validate_semigroup, Carrier, Clifford, FiniteGroup, FiniteSemigroup, Ideal, NONE};
use crate::sigma::PartialIso;
use crate::Session;

fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

/// Reads a JSON document and returns it with the directory used to resolve
/// its references.
pub fn read(path: &Path) -> Result<(Value, PathBuf)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok((v, base))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| malformed(format!("missing field \"{key}\"")))
}

fn as_index(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| malformed(format!("{what} must be a non-negative integer")))
}

fn index_list(v: &Value, what: &str) -> Result<Vec<usize>> {
    v.as_array()
        .ok_or_else(|| malformed(format!("{what} must be an array")))?
        .iter()
        .map(|x| as_index(x, what))
        .collect()
}

/// An object keyed by decimal indices, e.g. `{"0": …, "3": …}`.
fn keyed(v: &Value, what: &str) -> Result<BTreeMap<usize, Value>> {
    let obj = v.as_object().ok_or_else(|| malformed(format!("{what} must be an object")))?;
    obj.iter()
        .map(|(k, x)| {
            let i = k
                .trim()
                .parse()
                .map_err(|_| malformed(format!("{what} key \"{k}\" is not an index")))?;
            Ok((i, x.clone()))
        })
        .collect()
}

fn resolve(v: &Value, base: &Path) -> Result<(Value, PathBuf)> {
    match v {
        Value::String(p) => read(&base.join(p)),
        other => Ok((other.clone(), base.to_path_buf())),
    }
}

pub fn semigroup_from_value(v: &Value, base: &Path) -> Result<FiniteSemigroup> {
    let (v, _) = resolve(v, base)?;
    let rows: Vec<Vec<usize>> = field(&v, "table")?
        .as_array()
        .ok_or_else(|| malformed("table must be an array of rows"))?
        .iter()
        .map(|r| index_list(r, "table entry"))
        .collect::<Result<_>>()?;
    if let Some(order) = v.get("order") {
        let order = as_index(order, "order")?;
        if order != rows.len() {
            return Err(malformed(format!("order {order} but {} rows", rows.len())));
        }
    }
    let s = validate_semigroup(&rows)?;
    match v.get("labels") {
        None | Some(Value::Null) => Ok(s),
        Some(l) => {
            let labels = l
                .as_array()
                .ok_or_else(|| malformed("labels must be an array"))?
                .iter()
                .map(|x| x.as_str().map(str::to_string).ok_or_else(|| malformed("labels must be strings")))
                .collect::<Result<Vec<_>>>()?;
            s.with_labels(labels)
        }
    }
}

pub fn group_from_value(v: &Value, base: &Path) -> Result<FiniteGroup> {
    FiniteGroup::new(Arc::new(semigroup_from_value(v, base)?))
}

/// `{"dom": [...]?, "ran": [...]?, "map": {"i": j}}`; a bare map object is
/// also accepted.
pub fn partial_iso_from_value(v: &Value, parent: &Arc<FiniteSemigroup>) -> Result<PartialIso> {
    let map = v.get("map").unwrap_or(v);
    let pairs: Vec<(usize, usize)> = keyed(map, "map")?
        .into_iter()
        .map(|(x, y)| Ok((x, as_index(&y, "map value")?)))
        .collect::<Result<_>>()?;
    let n = parent.order();
    if let Some(&(x, y)) = pairs.iter().find(|(x, y)| *x >= n || *y >= n) {
        return Err(Error::IndexOutOfRange {
            row: x,
            col: 0,
            value: y.max(x),
            order: n,
        });
    }
    let p = PartialIso::from_pairs(parent, &pairs)?;
    for (key, side) in [("dom", p.dom()), ("ran", p.ran())] {
        if let Some(given) = v.get(key) {
            let mut given = index_list(given, key)?;
            given.sort_unstable();
            if given != side.members() {
                return Err(Error::DomainMismatch(format!("{key} does not match the map")));
            }
        }
    }
    Ok(p)
}

fn translation(v: &Value, n: usize, what: &str) -> Result<Vec<usize>> {
    let arr = v.as_array().ok_or_else(|| malformed(format!("{what} must be an array")))?;
    if arr.len() != n {
        return Err(malformed(format!("{what} has {} entries for order {n}", arr.len())));
    }
    arr.iter()
        .map(|x| match x {
            Value::Null => Ok(NONE),
            x => as_index(x, what),
        })
        .collect()
}

/// `{"left": [...], "right": [...]}` indexed by parent elements (entries
/// outside the carrier may be null), or `{"inner": s}`.
pub fn multiplier_from_value(v: &Value, carrier: &Carrier) -> Result<Multiplier> {
    if let Some(s) = v.get("inner") {
        return inner_multiplier(carrier, as_index(s, "inner")?);
    }
    let n = carrier.parent().order();
    let left = translation(field(v, "left")?, n, "left")?;
    let right = translation(field(v, "right")?, n, "right")?;
    if let Some(&x) = carrier
        .members()
        .iter()
        .find(|&&x| left[x] >= n || right[x] >= n)
    {
        return Err(Error::NotMultiplier(format!("translation undefined or out of range at {x}")));
    }
    Multiplier::new(carrier.clone(), &left, &right)
}

/// A standalone multiplier document with its own `"carrier"` reference.
pub fn standalone_multiplier(v: &Value, base: &Path) -> Result<Multiplier> {
    let s = Arc::new(semigroup_from_value(field(v, "carrier")?, base)?);
    multiplier_from_value(v, &Carrier::full(&s))
}

fn clifford_from_value(v: &Value, base: &Path) -> Result<Arc<Clifford>> {
    Ok(Arc::new(Clifford::new(Arc::new(semigroup_from_value(v, base)?))?))
}

fn per_element(v: &Value, n: usize, what: &str) -> Result<Vec<Value>> {
    let m = keyed(v, what)?;
    if let Some(&k) = m.keys().find(|&&k| k >= n) {
        return Err(malformed(format!("{what} has key {k} outside the group")));
    }
    (0..n)
        .map(|g| m.get(&g).cloned().ok_or_else(|| malformed(format!("{what} is missing {g}"))))
        .collect()
}

/// `{"algebra": ref, "group": ref, "reps": {"g": partial-iso}}`.
pub fn kernel_from_value(session: &Session, v: &Value, base: &Path) -> Result<AbstractKernel> {
    let a = clifford_from_value(field(v, "algebra")?, base)?;
    let g = group_from_value(field(v, "group")?, base)?;
    let reps = per_element(field(v, "reps")?, g.order(), "reps")?
        .iter()
        .map(|r| partial_iso_from_value(r, a.semigroup()))
        .collect::<Result<Vec<_>>>()?;
    AbstractKernel::new(session, a, &g, reps)
}

/// `{"group", "algebra", "domains"?, "theta", "twist"?}`; domains default to
/// the ranges of the maps and missing twists to identities.
pub fn tpa_parts_from_value(v: &Value, base: &Path) -> Result<TpaParts> {
    let a = clifford_from_value(field(v, "algebra")?, base)?;
    let g = group_from_value(field(v, "group")?, base)?;
    let n = g.order();
    let theta = per_element(field(v, "theta")?, n, "theta")?
        .iter()
        .map(|t| partial_iso_from_value(t, a.semigroup()))
        .collect::<Result<Vec<_>>>()?;
    let mut parts = TpaParts::untwisted(a.clone(), g.clone(), theta)?;
    if let Some(d) = v.get("domains") {
        parts.domains = per_element(d, n, "domains")?
            .iter()
            .map(|x| Ideal::new(a.semigroup(), index_list(x, "domain")?))
            .collect::<Result<_>>()?;
    }
    if let Some(t) = v.get("twist") {
        let obj = t.as_object().ok_or_else(|| malformed("twist must be an object"))?;
        for (key, m) in obj {
            let ix: Vec<usize> = key
                .split(',')
                .map(|p| p.trim().parse().map_err(|_| malformed(format!("twist key \"{key}\""))))
                .collect::<Result<_>>()?;
            let [x, y] = ix[..] else {
                return Err(malformed(format!("twist key \"{key}\" must be \"g,h\"")));
            };
            if x >= n || y >= n {
                return Err(malformed(format!("twist key \"{key}\" outside the group")));
            }
            let slot = &mut parts.twist[x * n + y];
            *slot = multiplier_from_value(m, &slot.carrier().clone())?;
        }
    }
    Ok(parts)
}

pub fn tpa_from_value(v: &Value, base: &Path) -> Result<TwistedPartialAction> {
    validate_tpa(tpa_parts_from_value(v, base)?)
}

pub fn semigroup_to_value(s: &FiniteSemigroup) -> Value {
    let mut m = Map::new();
    m.insert("order".into(), json!(s.order()));
    m.insert("table".into(), json!(s.rows()));
    if let Some(l) = s.labels() {
        m.insert("labels".into(), json!(l));
    }
    Value::Object(m)
}

fn index_object(pairs: impl IntoIterator<Item = (usize, usize)>) -> Value {
    Value::Object(pairs.into_iter().map(|(x, y)| (x.to_string(), json!(y))).collect())
}

pub fn partial_iso_to_value(p: &PartialIso) -> Value {
    json!({
        "dom": p.dom().members(),
        "ran": p.ran().members(),
        "map": index_object(p.dom().members().iter().map(|&x| (x, p.apply(x)))),
    })
}

pub fn multiplier_to_value(m: &Multiplier) -> Value {
    let n = m.carrier().parent().order();
    let side = |f: &dyn Fn(usize) -> usize| -> Vec<Value> {
        (0..n)
            .map(|x| if m.carrier().contains(x) { json!(f(x)) } else { Value::Null })
            .collect()
    };
    json!({"left": side(&|x| m.left(x)), "right": side(&|x| m.right(x))})
}

pub fn tpa_to_value(t: &TwistedPartialAction) -> Value {
    let n = t.group().order();
    let mut twist = Map::new();
    for x in 0..n {
        for y in 0..n {
            let w = t.twist(x, y);
            if !w.is_identity() {
                twist.insert(format!("{x},{y}"), multiplier_to_value(w));
            }
        }
    }
    json!({
        "group": semigroup_to_value(t.group().semigroup()),
        "algebra": semigroup_to_value(t.algebra().semigroup()),
        "domains": Value::Object((0..n).map(|g| (g.to_string(), json!(t.domain(g).members()))).collect()),
        "theta": Value::Object((0..n).map(|g| (g.to_string(), partial_iso_to_value(t.theta(g)))).collect()),
        "twist": twist,
    })
}

/// The non-identity values of a cochain, each as the map it induces on its
/// slot carrier.
pub fn cochain_to_value(module: &PartialGModule, c: &Cochain) -> Value {
    let values: Vec<Value> = (0..c.values().len())
        .filter(|&s| c.values()[s] != 0)
        .map(|s| {
            let args = module.tuple(c.degree(), s);
            let m = module.value(c, &args);
            json!({
                "args": args,
                "map": index_object(m.carrier().members().iter().map(|&x| (x, m.right(x)))),
            })
        })
        .collect();
    json!({"degree": c.degree(), "values": values})
}

pub fn cohomology_to_value(module: &PartialGModule, h: &CohomologyGroup) -> Value {
    json!({
        "n": h.degree,
        "Z": h.cocycles.len(),
        "B": h.coboundaries.len(),
        "H": h.order(),
        "orders": h.orders,
        "classes": h.representatives.iter().map(|c| cochain_to_value(module, c)).collect::<Vec<_>>(),
    })
}

pub fn extension_to_value(e: &Extension, class: usize) -> Value {
    json!({
        "order": e.total.order(),
        "table": e.total.rows(),
        "i": e.i,
        "j": e.j,
        "pairs": e.pairs,
        "class": class,
    })
}

/// Variant name of an error, e.g. `"NonAssociative"`.
pub fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

pub fn error_to_value(e: &Error) -> Value {
    let mut v = json!({"error": error_kind(e), "message": e.to_string()});
    let detail = match e {
        Error::NonAssociative { s, t, u } => Some(json!({"triple": [s, t, u]})),
        Error::IndexOutOfRange { row, col, value, order } => {
            Some(json!({"row": row, "col": col, "value": value, "order": order}))
        }
        Error::TpaViolation { axiom, witness } | Error::PaViolation { axiom, witness } => {
            Some(json!({"axiom": axiom, "witness": witness}))
        }
        Error::PhViolation { which, g, h } => Some(json!({"which": which, "g": g, "h": h})),
        Error::CapExceeded { what, count, cap } => Some(json!({"what": what, "count": count, "cap": cap})),
        Error::NotCentral { args } | Error::NotCocycle { args } => Some(json!({"args": args})),
        Error::AssociativityFailure { witness } => Some(json!({"witness": witness})),
        Error::Obstructed { class } => Some(json!({"class": class})),
        _ => None,
    };
    if let Some(d) = detail {
        v["detail"] = d;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn dir() -> PathBuf {
        PathBuf::from(".")
    }

    #[test]
    fn semigroup_round_trip() {
        for (_, s) in catalog::small_semigroups() {
            let v = semigroup_to_value(&s);
            assert_eq!(semigroup_from_value(&v, &dir()).unwrap(), s);
        }
    }

    #[test]
    fn malformed_tables_are_diagnosed() {
        let v = json!({"order": 2, "table": [[0, 1], [1, 0]]});
        assert!(semigroup_from_value(&v, &dir()).is_ok());
        let v = json!({"order": 2, "table": [[0, 2], [1, 0]]});
        assert!(matches!(semigroup_from_value(&v, &dir()), Err(Error::IndexOutOfRange { .. })));
        let v = json!({"order": 3, "table": [[0, 1], [1, 0]]});
        assert!(matches!(semigroup_from_value(&v, &dir()), Err(Error::Malformed(_))));
        let v = json!({"table": [[1, 0], [0, 0]]});
        let e = semigroup_from_value(&v, &dir()).unwrap_err();
        assert_eq!(error_kind(&e), "NonAssociative");
        assert_eq!(error_to_value(&e)["detail"]["triple"], json!([0, 0, 1]));
    }

    #[test]
    fn corpus_actions_round_trip() {
        for (name, parts) in catalog::tpa_corpus() {
            let t = validate_tpa(parts).unwrap();
            let back = tpa_from_value(&tpa_to_value(&t), &dir()).unwrap();
            assert_eq!(back.thetas(), t.thetas(), "{name}");
            for x in t.group().elements() {
                for y in t.group().elements() {
                    assert_eq!(back.twist(x, y).key(), t.twist(x, y).key(), "{name}");
                }
            }
        }
    }

    #[test]
    fn inner_twist_and_partial_iso_syntax() {
        let v = json!({
            "group": {"table": [[0, 1], [1, 0]]},
            "algebra": {"table": [[0, 1], [1, 0]]},
            "theta": {"0": {"0": 0, "1": 1}, "1": {"map": {"0": 0, "1": 1}, "dom": [0, 1]}},
            "twist": {"1,1": {"inner": 1}},
        });
        let t = tpa_from_value(&v, &dir()).unwrap();
        assert!(!t.is_untwisted());
        let bad = json!({"map": {"0": 0, "1": 1}, "dom": [0]});
        let s = Arc::new(catalog::cyclic(2));
        assert!(matches!(partial_iso_from_value(&bad, &s), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn file_references_resolve_relative_to_the_referrer() {
        let dir = std::env::temp_dir().join(format!("pkernel-json-{}", std::process::id()));
        std::fs::create_dir_all(dir.join("sub")).unwrap();
        std::fs::write(dir.join("sub/z2.json"), semigroup_to_value(&catalog::cyclic(2)).to_string()).unwrap();
        let kernel = json!({
            "algebra": "sub/z2.json",
            "group": "sub/z2.json",
            "reps": {"0": {"0": 0, "1": 1}, "1": {"0": 0, "1": 1}},
        });
        std::fs::write(dir.join("k.json"), kernel.to_string()).unwrap();
        let (v, base) = read(&dir.join("k.json")).unwrap();
        let k = kernel_from_value(&Session::default(), &v, &base).unwrap();
        assert_eq!(k.group().order(), 2);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
