//! Reading input documents named on the command line.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;
use trider_core::deformations::Deformation;
use trider_core::extensions::{CentralExtension, LieExtension};
use trider_core::{format, DerModule, LieDerPair, LinearMap, PairCochain, ThreeLieAlgebra};

use crate::args::Options;

/// A message for the `error` status.
#[derive(Debug)]
pub struct InputError(pub String);

pub type Result<T> = std::result::Result<T, InputError>;

fn in_file<T>(path: &Path, r: trider_core::Result<T>) -> Result<T> {
    r.map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn require<'a>(flag: &str, p: &'a Option<PathBuf>) -> Result<&'a Path> {
    p.as_deref()
        .ok_or_else(|| InputError(format!("missing required flag --{flag}")))
}

pub fn load(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| InputError(format!("{}: malformed JSON: {e}", path.display())))?;
    in_file(path, format::check_document(&v))?;
    Ok(v)
}

/// `--algebra`, without checking the fundamental identity.
pub fn raw_algebra(opts: &Options) -> Result<ThreeLieAlgebra> {
    let path = require("algebra", &opts.algebra)?;
    in_file(path, format::algebra_from_json_unchecked(&load(path)?, "$"))
}

pub fn algebra(opts: &Options) -> Result<ThreeLieAlgebra> {
    let path = require("algebra", &opts.algebra)?;
    in_file(path, format::algebra_from_json(&load(path)?, "$"))
}

pub fn map(flag: &str, p: &Option<PathBuf>) -> Result<LinearMap> {
    let path = require(flag, p)?;
    in_file(path, format::map_from_json(&load(path)?, "$"))
}

pub fn optional_map(flag: &str, p: &Option<PathBuf>) -> Result<Option<LinearMap>> {
    p.as_ref().map(|_| map(flag, p)).transpose()
}

/// `--pair`, or `--algebra` with `--phi` (zero when absent).
pub fn pair(opts: &Options) -> Result<LieDerPair> {
    if let Some(path) = &opts.pair {
        return in_file(path, format::pair_from_json(&load(path)?, "$"));
    }
    if opts.algebra.is_none() {
        return Err(InputError("missing required flag --pair (or --algebra)".into()));
    }
    let alg = algebra(opts)?;
    match optional_map("phi", &opts.phi)? {
        Some(phi) => {
            let path = opts.phi.as_deref().expect("present");
            in_file(path, LieDerPair::new(alg, phi))
        }
        None => Ok(LieDerPair::with_zero_derivation(alg)),
    }
}

/// `--dermod`, or `--rep` with `--phim` (zero when absent).
pub fn dermod(opts: &Options, pair: &LieDerPair) -> Result<DerModule> {
    if let Some(path) = &opts.dermod {
        return in_file(path, format::dermod_from_json(&load(path)?, "$", pair));
    }
    let path = opts
        .rep
        .as_deref()
        .ok_or_else(|| InputError("missing required flag --dermod (or --rep)".into()))?;
    let rep = in_file(path, format::representation_from_json(&load(path)?, "$"))?;
    let m = rep.mod_dim();
    let phi_m = optional_map("phim", &opts.phim)?.unwrap_or_else(|| LinearMap::zeros(m, m));
    in_file(path, DerModule::new(pair, rep, phi_m))
}

pub fn cochains(opts: &Options, count: usize) -> Result<Vec<PairCochain>> {
    if opts.cochain.len() != count {
        return Err(InputError(format!(
            "expected --cochain {count} time(s), got {}",
            opts.cochain.len()
        )));
    }
    opts.cochain
        .iter()
        .map(|path| in_file(path, format::pair_cochain_from_json(&load(path)?, "$")))
        .collect()
}

pub fn deformation(opts: &Options, pair: &LieDerPair) -> Result<Deformation> {
    let path = require("deformation", &opts.deformation)?;
    in_file(path, format::deformation_from_json(&load(path)?, "$", pair))
}

pub fn extension(opts: &Options) -> Result<(CentralExtension, Value)> {
    let path = require("extension", &opts.extension)?;
    let doc = load(path)?;
    Ok((in_file(path, format::extension_from_json(&doc, "$"))?, doc))
}

fn algebra_part(v: &Value, path: &str) -> trider_core::Result<ThreeLieAlgebra> {
    match v.get("algebra") {
        Some(a) => format::algebra_from_json(a, &format!("{path}.algebra")),
        None => format::algebra_from_json(v, path),
    }
}

/// An extension of 3-Lie algebras: `base` and `total` may be algebras or pairs.
pub fn lie_extension(opts: &Options) -> Result<(LieExtension, Value)> {
    let path = require("extension", &opts.extension)?;
    let doc = load(path)?;
    let field = |k: &str| {
        doc.get(k)
            .ok_or_else(|| InputError(format!("{}: parse error at $.{k}: missing field", path.display())))
    };
    let base = in_file(path, algebra_part(field("base")?, "$.base"))?;
    let total = in_file(path, algebra_part(field("total")?, "$.total"))?;
    let i = in_file(path, format::map_from_json(field("i")?, "$.i"))?;
    let p = in_file(path, format::map_from_json(field("p")?, "$.p"))?;
    Ok((in_file(path, LieExtension::new(base, total, i, p))?, doc))
}

/// `--section`, else the `"s"` field of the extension document, else the canonical one.
pub fn section(opts: &Options, ext_doc: &Value, n: usize, m: usize) -> Result<LinearMap> {
    if opts.section.is_some() {
        return map("section", &opts.section);
    }
    if let Some(s) = ext_doc.get("s") {
        let path = opts.extension.as_deref().expect("extension loaded");
        return in_file(path, format::map_from_json(s, "$.s"));
    }
    Ok(trider_core::extensions::canonical_section(n, m))
}
