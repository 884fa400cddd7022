//! JSON documents. Indices are 1-based and scalars are strings `"p/q"` or `"p"`.
//!
//! Every top-level document carries `"format": 1`; nested objects do not.

use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::algebra::{DerModule, LieDerPair, Representation, ThreeLieAlgebra};
use crate::basis::PairIndex;
use crate::cohomology::CohomologyReport;
use crate::complex::{Cochain, PairCochain};
use crate::deformations::{Deformation, FormalIso};
use crate::error::{Error, Result};
use crate::extensions::CentralExtension;
use crate::linalg::LinearMap;
use crate::report::ValidationReport;
use crate::scalar::{self, Scalar};

pub const FORMAT_VERSION: u64 = 1;

/// Wraps an object as a top-level document.
pub fn document(body: Value) -> Value {
    let mut out = Map::new();
    out.insert("format".into(), json!(FORMAT_VERSION));
    match body {
        Value::Object(map) => {
            for (k, v) in map {
                if k != "format" {
                    out.insert(k, v);
                }
            }
        }
        other => {
            out.insert("value".into(), other);
        }
    }
    Value::Object(out)
}

/// Checks the `"format"` field of a top-level document.
pub fn check_document(v: &Value) -> Result<()> {
    match v.get("format") {
        Some(f) if f.as_u64() == Some(FORMAT_VERSION) => Ok(()),
        Some(f) => Err(Error::parse("$.format", format!("unsupported format {f}"))),
        None => Err(Error::parse("$.format", "missing format field")),
    }
}

fn field<'a>(v: &'a Value, path: &str, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::parse(format!("{path}.{key}"), "missing field"))
}

fn usize_field(v: &Value, path: &str, key: &str) -> Result<usize> {
    field(v, path, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::parse(format!("{path}.{key}"), "expected a nonnegative integer"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::parse(path, "expected an array"))
}

fn index(v: &Value, path: &str, bound: usize) -> Result<usize> {
    let i = v
        .as_u64()
        .ok_or_else(|| Error::parse(path, "expected a 1-based index"))? as usize;
    if i == 0 || i > bound {
        return Err(Error::parse(path, format!("index {i} outside 1..={bound}")));
    }
    Ok(i - 1)
}

pub fn scalar_to_json(x: &Scalar) -> Value {
    Value::String(scalar::format(x))
}

pub fn scalar_from_json(v: &Value, path: &str) -> Result<Scalar> {
    match v {
        Value::String(s) => scalar::parse(s).map_err(|e| Error::parse(path, e.to_string())),
        Value::Number(n) if n.is_i64() => Ok(scalar::int(n.as_i64().expect("checked"))),
        _ => Err(Error::parse(path, "expected a rational string such as \"3/4\"")),
    }
}

/// Sparse vector `{"1": "p/q", ...}`, zero entries omitted.
fn vector_to_json(v: &[Scalar]) -> Value {
    let mut map = Map::new();
    for (i, x) in v.iter().enumerate() {
        if !x.is_zero() {
            map.insert((i + 1).to_string(), scalar_to_json(x));
        }
    }
    Value::Object(map)
}

fn vector_from_json(v: &Value, path: &str, dim: usize) -> Result<Vec<Scalar>> {
    let map = v
        .as_object()
        .ok_or_else(|| Error::parse(path, "expected an object of index → value"))?;
    let mut out = scalar::zeros(dim);
    for (k, x) in map {
        let p = format!("{path}.{k}");
        let i: usize = k
            .parse()
            .map_err(|_| Error::parse(&p, "keys must be 1-based indices"))?;
        if i == 0 || i > dim {
            return Err(Error::parse(&p, format!("index {i} outside 1..={dim}")));
        }
        out[i - 1] = scalar_from_json(x, &p)?;
    }
    Ok(out)
}

pub fn algebra_to_json(alg: &ThreeLieAlgebra) -> Value {
    let brackets: Vec<Value> = alg
        .constants()
        .iter()
        .map(|(t, v)| json!({"triple": [t[0] + 1, t[1] + 1, t[2] + 1], "value": vector_to_json(v)}))
        .collect();
    json!({"dim": alg.dim(), "brackets": brackets})
}

/// Parses structure constants without checking the fundamental identity.
pub fn algebra_from_json_unchecked(v: &Value, path: &str) -> Result<ThreeLieAlgebra> {
    let dim = usize_field(v, path, "dim")?;
    let mut constants = Vec::new();
    if let Some(list) = v.get("brackets") {
        for (b, entry) in array(list, &format!("{path}.brackets"))?.iter().enumerate() {
            let p = format!("{path}.brackets[{b}]");
            let triple = array(field(entry, &p, "triple")?, &format!("{p}.triple"))?;
            if triple.len() != 3 {
                return Err(Error::parse(format!("{p}.triple"), "expected three indices"));
            }
            let mut key = [0; 3];
            for (slot, t) in key.iter_mut().zip(triple) {
                *slot = index(t, &format!("{p}.triple"), dim)?;
            }
            let value = vector_from_json(field(entry, &p, "value")?, &format!("{p}.value"), dim)?;
            constants.push((key, value));
        }
    }
    ThreeLieAlgebra::new_unchecked(dim, constants)
}

pub fn algebra_from_json(v: &Value, path: &str) -> Result<ThreeLieAlgebra> {
    let alg = algebra_from_json_unchecked(v, path)?;
    ThreeLieAlgebra::new(alg.dim(), alg.constants().clone())
}

pub fn map_to_json(m: &LinearMap) -> Value {
    let entries: Vec<Value> = (0..m.rows())
        .map(|r| Value::Array(m.row(r).iter().map(scalar_to_json).collect()))
        .collect();
    json!({"rows": m.rows(), "cols": m.cols(), "entries": entries})
}

pub fn map_from_json(v: &Value, path: &str) -> Result<LinearMap> {
    let rows = usize_field(v, path, "rows")?;
    let cols = usize_field(v, path, "cols")?;
    let entries = array(field(v, path, "entries")?, &format!("{path}.entries"))?;
    if entries.len() != rows {
        return Err(Error::parse(format!("{path}.entries"), format!("expected {rows} rows")));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (r, row) in entries.iter().enumerate() {
        let p = format!("{path}.entries[{r}]");
        let row = array(row, &p)?;
        if row.len() != cols {
            return Err(Error::parse(&p, format!("expected {cols} entries")));
        }
        for (c, x) in row.iter().enumerate() {
            data.push(scalar_from_json(x, &format!("{p}[{c}]"))?);
        }
    }
    LinearMap::new(rows, cols, data)
}

pub fn representation_to_json(rep: &Representation) -> Value {
    let pairs = rep.pair_index();
    let rho: Vec<Value> = rep
        .matrices()
        .iter()
        .enumerate()
        .filter(|(_, m)| !m.is_zero())
        .map(|(code, m)| {
            let (i, j) = pairs.pair(code);
            let rows: Vec<Value> = (0..m.rows())
                .map(|r| Value::Array(m.row(r).iter().map(scalar_to_json).collect()))
                .collect();
            json!({"pair": [i + 1, j + 1], "matrix": rows})
        })
        .collect();
    json!({"algDim": rep.alg_dim(), "modDim": rep.mod_dim(), "rho": rho})
}

fn pair_key(v: &Value, path: &str, dim: usize) -> Result<(usize, usize)> {
    let pair = array(v, path)?;
    if pair.len() != 2 {
        return Err(Error::parse(path, "expected two indices"));
    }
    let i = index(&pair[0], path, dim)?;
    let j = index(&pair[1], path, dim)?;
    if i >= j {
        return Err(Error::parse(path, "pair must be strictly increasing"));
    }
    Ok((i, j))
}

pub fn representation_from_json(v: &Value, path: &str) -> Result<Representation> {
    let n = usize_field(v, path, "algDim")?;
    let m = usize_field(v, path, "modDim")?;
    let pairs = PairIndex::new(n);
    let mut rho = vec![LinearMap::zeros(m, m); pairs.len()];
    let mut seen = vec![false; pairs.len()];
    if let Some(list) = v.get("rho") {
        for (e, entry) in array(list, &format!("{path}.rho"))?.iter().enumerate() {
            let p = format!("{path}.rho[{e}]");
            let (i, j) = pair_key(field(entry, &p, "pair")?, &format!("{p}.pair"), n)?;
            let code = pairs.code(i, j).expect("i < j");
            if seen[code] {
                return Err(Error::parse(format!("{p}.pair"), "duplicate pair"));
            }
            seen[code] = true;
            let matrix = json!({"rows": m, "cols": m, "entries": field(entry, &p, "matrix")?.clone()});
            rho[code] = map_from_json(&matrix, &format!("{p}.matrix"))?;
        }
    }
    Representation::new(n, m, rho)
}

pub fn pair_to_json(pair: &LieDerPair) -> Value {
    json!({"algebra": algebra_to_json(pair.algebra()), "phi": map_to_json(pair.phi())})
}

pub fn pair_from_json(v: &Value, path: &str) -> Result<LieDerPair> {
    let algebra = algebra_from_json(field(v, path, "algebra")?, &format!("{path}.algebra"))?;
    let phi = map_from_json(field(v, path, "phi")?, &format!("{path}.phi"))?;
    LieDerPair::new(algebra, phi)
}

pub fn dermod_to_json(dermod: &DerModule) -> Value {
    json!({"rep": representation_to_json(dermod.rep()), "phiM": map_to_json(dermod.phi_m())})
}

/// `{"rep": ..., "phiM": ...}` or `{"adjoint": true}`.
pub fn dermod_from_json(v: &Value, path: &str, pair: &LieDerPair) -> Result<DerModule> {
    if v.get("adjoint").and_then(Value::as_bool) == Some(true) {
        return Ok(DerModule::adjoint(pair));
    }
    let rep = representation_from_json(field(v, path, "rep")?, &format!("{path}.rep"))?;
    let phi_m = map_from_json(field(v, path, "phiM")?, &format!("{path}.phiM"))?;
    DerModule::new(pair, rep, phi_m)
}

pub fn cochain_to_json(f: &Cochain) -> Value {
    let shape = f.shape();
    let index = PairIndex::new(f.alg_dim());
    let mut entries = Vec::new();
    for base in 0..shape.bases() {
        let (pairs, last) = shape.decode(base);
        let value = f.value(&pairs, last);
        if scalar::is_zero_vec(value) {
            continue;
        }
        let pairs: Vec<Value> = pairs
            .iter()
            .map(|&c| {
                let (i, j) = index.pair(c);
                json!([i + 1, j + 1])
            })
            .collect();
        entries.push(json!({"pairs": pairs, "last": last + 1, "value": vector_to_json(value)}));
    }
    json!({
        "degree": f.degree(),
        "algDim": f.alg_dim(),
        "modDim": f.mod_dim(),
        "entries": entries,
    })
}

pub fn cochain_from_json(v: &Value, path: &str) -> Result<Cochain> {
    let degree = usize_field(v, path, "degree")?;
    let n = usize_field(v, path, "algDim")?;
    let m = usize_field(v, path, "modDim")?;
    let mut f = Cochain::zero(degree, n, m)?;
    let index = PairIndex::new(n);
    let mut seen = std::collections::BTreeSet::new();
    if let Some(list) = v.get("entries") {
        for (e, entry) in array(list, &format!("{path}.entries"))?.iter().enumerate() {
            let p = format!("{path}.entries[{e}]");
            let pairs = array(field(entry, &p, "pairs")?, &format!("{p}.pairs"))?;
            if pairs.len() + 1 != degree {
                return Err(Error::parse(
                    format!("{p}.pairs"),
                    format!("a degree-{degree} cochain has {} pair slots", degree - 1),
                ));
            }
            let codes = pairs
                .iter()
                .enumerate()
                .map(|(s, x)| {
                    let (i, j) = pair_key(x, &format!("{p}.pairs[{s}]"), n)?;
                    Ok(index.code(i, j).expect("i < j"))
                })
                .collect::<Result<Vec<_>>>()?;
            let last = index_field(entry, &p, n)?;
            if !seen.insert((codes.clone(), last)) {
                return Err(Error::parse(&p, "duplicate entry"));
            }
            let value = vector_from_json(field(entry, &p, "value")?, &format!("{p}.value"), m)?;
            f.set(&codes, last, value)?;
        }
    }
    Ok(f)
}

fn index_field(entry: &Value, path: &str, bound: usize) -> Result<usize> {
    index(field(entry, path, "last")?, &format!("{path}.last"), bound)
}

pub fn pair_cochain_to_json(pc: &PairCochain) -> Value {
    match pc.fbar() {
        Some(g) => json!({"f": cochain_to_json(pc.f()), "fbar": cochain_to_json(g)}),
        None => json!({"f": cochain_to_json(pc.f()), "fbar": Value::Null}),
    }
}

pub fn pair_cochain_from_json(v: &Value, path: &str) -> Result<PairCochain> {
    let f = cochain_from_json(field(v, path, "f")?, &format!("{path}.f"))?;
    let fbar = match v.get("fbar") {
        None | Some(Value::Null) => None,
        Some(g) => Some(cochain_from_json(g, &format!("{path}.fbar"))?),
    };
    PairCochain::new(f, fbar)
}

pub fn deformation_to_json(d: &Deformation) -> Value {
    json!({
        "order": d.order(),
        "mu": d.mu().iter().map(cochain_to_json).collect::<Vec<_>>(),
        "phi": d.phi().iter().map(map_to_json).collect::<Vec<_>>(),
    })
}

pub fn deformation_from_json(v: &Value, path: &str, base: &LieDerPair) -> Result<Deformation> {
    let order = usize_field(v, path, "order")?;
    let mu = array(field(v, path, "mu")?, &format!("{path}.mu"))?
        .iter()
        .enumerate()
        .map(|(i, x)| cochain_from_json(x, &format!("{path}.mu[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let phi = array(field(v, path, "phi")?, &format!("{path}.phi"))?
        .iter()
        .enumerate()
        .map(|(i, x)| map_from_json(x, &format!("{path}.phi[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    if mu.len() != order || phi.len() != order {
        return Err(Error::parse(
            path,
            format!("order {order} needs {order} terms in mu and phi (order 0 comes from the pair)"),
        ));
    }
    Deformation::new(base.clone(), mu, phi)
}

pub fn iso_to_json(iso: &FormalIso) -> Value {
    json!({"order": iso.order(), "maps": iso.maps().iter().map(map_to_json).collect::<Vec<_>>()})
}

pub fn extension_to_json(ext: &CentralExtension) -> Value {
    json!({
        "base": pair_to_json(ext.base()),
        "fiberPhi": map_to_json(ext.fiber().phi_m()),
        "total": pair_to_json(ext.total()),
        "i": map_to_json(ext.inclusion()),
        "p": map_to_json(ext.projection()),
        "s": map_to_json(&ext.canonical_section()),
    })
}

pub fn extension_from_json(v: &Value, path: &str) -> Result<CentralExtension> {
    let base = pair_from_json(field(v, path, "base")?, &format!("{path}.base"))?;
    let fiber_phi = map_from_json(field(v, path, "fiberPhi")?, &format!("{path}.fiberPhi"))?;
    let total = pair_from_json(field(v, path, "total")?, &format!("{path}.total"))?;
    let i = map_from_json(field(v, path, "i")?, &format!("{path}.i"))?;
    let p = map_from_json(field(v, path, "p")?, &format!("{path}.p"))?;
    CentralExtension::new(base, fiber_phi, total, i, p)
}

pub fn cohomology_to_json(r: &CohomologyReport) -> Value {
    let mut out = json!({
        "degree": r.degree,
        "dimC": r.dim_cn,
        "dimCNext": r.dim_cn_next,
        "rankPrev": r.rank_prev,
        "rankCurr": r.rank_curr,
        "betti": r.betti,
    });
    if let Some(reps) = &r.representatives {
        out["representatives"] = Value::Array(reps.iter().map(pair_cochain_to_json).collect());
    }
    out
}

pub fn report_to_json(r: &ValidationReport) -> Value {
    json!({
        "ok": r.is_ok(),
        "total": r.total,
        "violations": r
            .violations
            .iter()
            .map(|v| json!({"identity": v.identity, "indices": v.indices}))
            .collect::<Vec<_>>(),
    })
}

/// Deterministic pretty printing with a trailing newline.
pub fn to_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn algebra_round_trip() {
        let alg = fixtures::simple4();
        let v = algebra_to_json(&alg);
        assert_eq!(algebra_from_json(&v, "$").unwrap(), alg);
    }

    #[test]
    fn parse_errors_name_the_path() {
        let v = json!({"dim": 3, "brackets": [{"triple": [1, 2, 4], "value": {}}]});
        let err = algebra_from_json(&v, "$").unwrap_err();
        assert!(err.to_string().contains("$.brackets[0].triple"), "{err}");
        let v = json!({"rows": 1, "cols": 1, "entries": [["0.5"]]});
        let err = map_from_json(&v, "$").unwrap_err();
        assert!(err.to_string().contains("$.entries[0][0]"), "{err}");
    }

    #[test]
    fn documents_carry_the_format() {
        let doc = document(json!({"a": 1}));
        assert_eq!(doc["format"], json!(1));
        assert!(check_document(&doc).is_ok());
        assert!(check_document(&json!({"a": 1})).is_err());
        assert!(check_document(&json!({"format": 2})).is_err());
    }

    #[test]
    fn cochain_round_trip() {
        let mu = Cochain::from_bracket(&fixtures::nilpotent4());
        let v = cochain_to_json(&mu);
        assert_eq!(cochain_from_json(&v, "$").unwrap(), mu);
        let pc = PairCochain::degree2(mu, &fixtures::diag(&[1, 2, 3, 4])).unwrap();
        assert_eq!(pair_cochain_from_json(&pair_cochain_to_json(&pc), "$").unwrap(), pc);
    }
}
