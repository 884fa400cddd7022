use serde_json::{json, Value};
use trider_core::cohomology::cohomologous;
use trider_core::deformations::{
    extend_deformation, infinitesimal, obstruction, trivialize_up_to, Infinitesimal, Trivialization,
};
use trider_core::extensions::{build_central_extension, classify_extensions, extend_derivation_pair, extract_cocycle};
use trider_core::format::{self as fmt, map_to_json};
use trider_core::{
    betti, derivation_report, derivation_space, is_coboundary, is_cocycle, semidirect, DerModule, Error,
    ValidationReport,
};

use crate::args::{Options, Verb};
use crate::input::{self, InputError};
use crate::report::{Report, Status};

pub enum Failure {
    Input(InputError),
    Library(Error),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

type Outcome = std::result::Result<Report, Failure>;

pub fn dispatch(verb: Verb, opts: &Options) -> Report {
    let name = verb.name();
    let result = match verb {
        Verb::Validate => validate(opts),
        Verb::DerSpace => der_space(opts),
        Verb::Semidirect => semidirect_cmd(opts),
        Verb::Cohomology => cohomology(opts),
        Verb::CocycleCheck => cocycle_check(opts),
        Verb::ExtensionBuild => extension_build(opts),
        Verb::ExtensionExtract => extension_extract(opts),
        Verb::ExtensionClassify => extension_classify(opts),
        Verb::DerExtend => der_extend(opts),
        Verb::DeformValidate => deform_validate(opts),
        Verb::DeformObstruct => deform_obstruct(opts),
        Verb::DeformExtend => deform_extend(opts),
        Verb::DeformTrivialize => deform_trivialize(opts),
    };
    match result {
        Ok(r) => r,
        Err(Failure::Input(InputError(msg))) => Report::error(name, msg),
        Err(Failure::Library(Error::Violated { what, report })) => {
            let mut r = Report::new(name, Status::Violated, json!({ "report": fmt::report_to_json(&report) }));
            r.diagnostics.push(format!("{what}: {report}"));
            r
        }
        Err(Failure::Library(e)) => Report::error(name, e.to_string()),
    }
}

fn verdict(ok: bool) -> Status {
    if ok {
        Status::Ok
    } else {
        Status::Violated
    }
}

fn found(ok: bool) -> Status {
    if ok {
        Status::Ok
    } else {
        Status::NoneExists
    }
}

fn checked(name: &str, report: &ValidationReport, payload: &mut serde_json::Map<String, Value>) -> bool {
    payload.insert(name.to_string(), fmt::report_to_json(report));
    report.is_ok()
}

fn validate(opts: &Options) -> Outcome {
    let cap = opts.max_violations;
    let mut payload = serde_json::Map::new();
    let mut notes = Vec::new();
    let (alg, phi) = if let Some(path) = &opts.pair {
        let doc = input::load(path)?;
        let a = doc
            .get("algebra")
            .ok_or_else(|| InputError(format!("{}: parse error at $.algebra: missing field", path.display())))?;
        let p = doc
            .get("phi")
            .ok_or_else(|| InputError(format!("{}: parse error at $.phi: missing field", path.display())))?;
        let alg = fmt::algebra_from_json_unchecked(a, "$.algebra")
            .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
        let phi = fmt::map_from_json(p, "$.phi").map_err(|e| InputError(format!("{}: {e}", path.display())))?;
        (alg, Some(phi))
    } else {
        (input::raw_algebra(opts)?, input::optional_map("phi", &opts.phi)?)
    };
    payload.insert("dim".into(), json!(alg.dim()));
    let report = alg.validate(cap);
    let mut ok = checked("algebra", &report, &mut payload);
    if !report.is_ok() {
        notes.push(format!("fundamental identity: {report}"));
    }
    if let Some(phi) = &phi {
        let r = derivation_report(&alg, phi, cap)?;
        if !r.is_ok() {
            notes.push(format!("derivation: {r}"));
        }
        ok &= checked("derivation", &r, &mut payload);
    }
    if opts.dermod.is_some() || opts.rep.is_some() {
        if !ok {
            return Err(InputError("module checks need a valid pair; fix the reported violations first".into()).into());
        }
        let pair = trider_core::LieDerPair::new(alg.clone(), phi.clone().unwrap_or_else(|| {
            trider_core::LinearMap::zeros(alg.dim(), alg.dim())
        }))?;
        let (rep, phi_m) = raw_dermod(opts, &pair)?;
        let r = match &phi_m {
            Some(phi_m) => trider_core::algebra::der_module_report(&pair, &rep, phi_m, cap)?,
            None => rep.validate(&alg, cap)?,
        };
        if !r.is_ok() {
            notes.push(format!("module: {r}"));
        }
        ok &= checked("module", &r, &mut payload);
    }
    let mut out = Report::new("validate", verdict(ok), Value::Object(payload));
    out.diagnostics = notes;
    Ok(out)
}

fn wrap<T>(path: &std::path::Path, r: trider_core::Result<T>) -> std::result::Result<T, InputError> {
    r.map_err(|e| InputError(format!("{}: {e}", path.display())))
}

/// Representation and module derivation without the compatibility check.
fn raw_dermod(
    opts: &Options,
    pair: &trider_core::LieDerPair,
) -> std::result::Result<(trider_core::Representation, Option<trider_core::LinearMap>), Failure> {
    if let Some(path) = &opts.dermod {
        let doc = input::load(path)?;
        if doc.get("adjoint").and_then(Value::as_bool) == Some(true) {
            let d = DerModule::adjoint(pair);
            return Ok((d.rep().clone(), Some(d.phi_m().clone())));
        }
        let rep = doc
            .get("rep")
            .ok_or_else(|| InputError(format!("{}: parse error at $.rep: missing field", path.display())))?;
        let rep = wrap(path, fmt::representation_from_json(rep, "$.rep"))?;
        let phi_m = match doc.get("phiM") {
            Some(v) => Some(wrap(path, fmt::map_from_json(v, "$.phiM"))?),
            None => None,
        };
        return Ok((rep, phi_m));
    }
    let path = opts.rep.as_deref().expect("checked by caller");
    let rep = fmt::representation_from_json(&input::load(path)?, "$")
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Ok((rep, input::optional_map("phim", &opts.phim)?))
}

fn der_space(opts: &Options) -> Outcome {
    let alg = input::algebra(opts)?;
    let basis = derivation_space(&alg);
    Ok(Report::new(
        "der-space",
        Status::Ok,
        json!({"dim": basis.len(), "basis": basis.iter().map(map_to_json).collect::<Vec<_>>()}),
    ))
}

fn semidirect_cmd(opts: &Options) -> Outcome {
    let pair = input::pair(opts)?;
    let dermod = input::dermod(opts, &pair)?;
    let total = semidirect(&pair, &dermod)?;
    Ok(Report::new("semidirect", Status::Ok, json!({"pair": fmt::pair_to_json(&total)})))
}

fn degree(opts: &Options) -> std::result::Result<usize, Failure> {
    opts.degree
        .ok_or_else(|| InputError("missing required flag --degree".into()).into())
}

fn cohomology(opts: &Options) -> Outcome {
    let pair = input::pair(opts)?;
    let dermod = input::dermod(opts, &pair)?;
    let r = betti(&pair, &dermod, degree(opts)?, true)?;
    Ok(Report::new("cohomology", Status::Ok, fmt::cohomology_to_json(&r)))
}

fn cocycle_check(opts: &Options) -> Outcome {
    let pair = input::pair(opts)?;
    let dermod = input::dermod(opts, &pair)?;
    if opts.cochain.len() == 2 {
        let pcs = input::cochains(opts, 2)?;
        let v = cohomologous(&pair, &dermod, &pcs[0], &pcs[1])?;
        let payload = json!({
            "cohomologous": v.is_some(),
            "preimage": v.as_ref().map(fmt::pair_cochain_to_json),
        });
        return Ok(Report::new("cocycle-check", found(v.is_some()), payload));
    }
    let pc = input::cochains(opts, 1)?.remove(0);
    let cocycle = is_cocycle(&pair, &dermod, &pc)?;
    let pre = if cocycle { is_coboundary(&pair, &dermod, &pc)? } else { None };
    let payload = json!({
        "degree": pc.degree(),
        "cocycle": cocycle,
        "coboundary": pre.is_some(),
        "preimage": pre.as_ref().map(fmt::pair_cochain_to_json),
    });
    Ok(Report::new("cocycle-check", verdict(cocycle), payload))
}

fn degree2_parts(pc: &trider_core::PairCochain) -> std::result::Result<(trider_core::Cochain, trider_core::LinearMap), Failure> {
    match pc.fbar() {
        Some(chi) if pc.degree() == 2 => Ok((pc.f().clone(), chi.to_linear_map()?)),
        _ => Err(InputError("an extension cocycle is a degree-2 pair cochain (ψ, χ)".into()).into()),
    }
}

fn extension_build(opts: &Options) -> Outcome {
    let pair = input::pair(opts)?;
    let fiber = input::dermod(opts, &pair)?;
    let pc = input::cochains(opts, 1)?.remove(0);
    let (psi, chi) = degree2_parts(&pc)?;
    let ext = build_central_extension(&pair, &fiber, &psi, &chi)?;
    Ok(Report::new("extension-build", Status::Ok, json!({"extension": fmt::extension_to_json(&ext)})))
}

fn extension_extract(opts: &Options) -> Outcome {
    let (ext, doc) = input::extension(opts)?;
    let sec = input::section(opts, &doc, ext.base().dim(), ext.fiber().mod_dim())?;
    let pc = extract_cocycle(&ext, &sec)?;
    Ok(Report::new("extension-extract", Status::Ok, json!({"cocycle": fmt::pair_cochain_to_json(&pc)})))
}

fn extension_classify(opts: &Options) -> Outcome {
    let pair = input::pair(opts)?;
    let fiber = input::dermod(opts, &pair)?;
    let pcs = input::cochains(opts, 2)?;
    let c = classify_extensions(&pair, &fiber, &pcs[0], &pcs[1])?;
    let payload = json!({
        "equivalent": c.equivalent,
        "witness": c.witness.as_ref().map(map_to_json),
        "isomorphism": c.isomorphism.as_ref().map(map_to_json),
    });
    Ok(Report::new("extension-classify", found(c.equivalent), payload))
}

fn der_extend(opts: &Options) -> Outcome {
    let (ext, doc) = input::lie_extension(opts)?;
    let (n, m) = (ext.base().dim(), ext.fiber_dim());
    let pair_phi = |k: &str| {
        doc.get(k)
            .and_then(|v| v.get("phi"))
            .map(|v| fmt::map_from_json(v, &format!("$.{k}.phi")))
            .transpose()
    };
    let phi_l = match input::optional_map("phi", &opts.phi)? {
        Some(p) => p,
        None => pair_phi("base")?.ok_or_else(|| InputError("missing required flag --phi".into()))?,
    };
    let phi_m = match input::optional_map("phim", &opts.phim)? {
        Some(p) => p,
        None => match doc.get("fiberPhi") {
            Some(v) => fmt::map_from_json(v, "$.fiberPhi")?,
            None => return Err(InputError("missing required flag --phim".into()).into()),
        },
    };
    let sec = input::section(opts, &doc, n, m)?;
    let ob = trider_core::extensions::derivation_obstruction(&ext, &phi_l, &phi_m, &sec)?;
    let ext_pair = extend_derivation_pair(&ext, &phi_l, &phi_m, &sec)?;
    let payload = json!({
        "extensible": ext_pair.is_some(),
        "obstruction": fmt::cochain_to_json(&ob),
        "lambda": ext_pair.as_ref().map(|e| map_to_json(&e.lambda)),
        "phiTotal": ext_pair.as_ref().map(|e| map_to_json(&e.phi_total)),
    });
    Ok(Report::new("der-extend", found(ext_pair.is_some()), payload))
}

fn deform_validate(opts: &Options) -> Outcome {
    let pair = input::pair(opts)?;
    let d = input::deformation(opts, &pair)?;
    let check = d.validate(opts.max_violations);
    let inf = infinitesimal(&d)?;
    let mut payload = json!({
        "order": d.order(),
        "firstFailingOrder": check.first_failing_order,
        "report": fmt::report_to_json(&check.report),
    });
    match inf {
        Infinitesimal::Constant => payload["infinitesimal"] = Value::Null,
        Infinitesimal::Term { order, term, is_cocycle } => {
            payload["infinitesimal"] = json!({
                "order": order,
                "term": fmt::pair_cochain_to_json(&term),
                "isCocycle": is_cocycle,
            })
        }
    }
    let mut r = Report::new("deform-validate", verdict(check.is_ok()), payload);
    if !check.is_ok() {
        r = r.note(format!("deformation equations: {}", check.report));
    }
    Ok(r)
}

fn deform_obstruct(opts: &Options) -> Outcome {
    let pair = input::pair(opts)?;
    let d = input::deformation(opts, &pair)?;
    let ob = obstruction(&d)?;
    let dermod = DerModule::adjoint(&pair);
    let coboundary = is_coboundary(&pair, &dermod, &ob.cochain)?.is_some();
    let payload = json!({
        "order": d.order() + 1,
        "obstruction": fmt::pair_cochain_to_json(&ob.cochain),
        "isCocycle": ob.is_cocycle,
        "isCoboundary": coboundary,
    });
    Ok(Report::new("deform-obstruct", found(coboundary), payload))
}

fn deform_extend(opts: &Options) -> Outcome {
    let pair = input::pair(opts)?;
    let d = input::deformation(opts, &pair)?;
    let next = extend_deformation(&d)?;
    let payload = json!({
        "extensible": next.is_some(),
        "mu_next": next.as_ref().map(|(mu, _)| fmt::cochain_to_json(mu)),
        "phi_next": next.as_ref().map(|(_, phi)| map_to_json(phi)),
    });
    Ok(Report::new("deform-extend", found(next.is_some()), payload))
}

fn deform_trivialize(opts: &Options) -> Outcome {
    let pair = input::pair(opts)?;
    let d = input::deformation(opts, &pair)?;
    let (status, outcome, order, iso, def, steps) = match trivialize_up_to(&d, opts.max_steps)? {
        Trivialization::Trivial { iso, deformation, steps } => (Status::Ok, "trivial", None, iso, deformation, steps),
        Trivialization::Obstructed { order, iso, deformation, steps } => {
            (Status::NoneExists, "obstructed", Some(order), iso, deformation, steps)
        }
        Trivialization::BudgetExhausted { iso, deformation, steps } => {
            (Status::NoneExists, "budget-exhausted", None, iso, deformation, steps)
        }
    };
    let payload = json!({
        "outcome": outcome,
        "obstructedAt": order,
        "steps": steps,
        "iso": fmt::iso_to_json(&iso),
        "deformation": fmt::deformation_to_json(&def),
    });
    Ok(Report::new("deform-trivialize", status, payload))
}
