//! JSON encoding of the domain types.
//!
//! Output is canonical: object keys come out sorted (`serde_json::Map` is a
//! `BTreeMap`), rationals are reduced `"p/q"` strings, and every value is
//! written from its normalized form. Subgroups and bimodule classes embedded
//! in a datum take the datum's ambient group; the `*_file` variants carry
//! their own `"ambient"` field.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::abelian::{AbelianGroup, GroupElement, Subgroup};
use crate::bimodule::BimoduleClass;
use crate::cyclo::CycloNumber;
use crate::datum::{
    GradingDatum, GradingIsomorphism, HomogeneousElement, RealizedGrading, ValidationReport, ValidationViolation,
};
use crate::duality::{Character, Phase};
use crate::error::{Error, Result};
use crate::incidence::IncidenceElement;
use crate::oracle::{GradingViolation, LinkEntry, LinkReport, LinkViolation, VerificationReport};
use crate::poset::Poset;

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.as_object()
        .ok_or_else(|| bad(format!("expected an object with key {key:?}")))?
        .get(key)
        .ok_or_else(|| bad(format!("missing key {key:?}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("{what}: expected an array")))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| bad(format!("{what}: expected an object")))
}

fn string<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| bad(format!("{what}: expected a string")))
}

fn uint(v: &Value, what: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| bad(format!("{what}: expected a non-negative integer")))
}

fn boolean(v: &Value, what: &str) -> Result<bool> {
    v.as_bool().ok_or_else(|| bad(format!("{what}: expected a boolean")))
}

fn strings(v: &Value, what: &str) -> Result<Vec<String>> {
    array(v, what)?.iter().map(|s| string(s, what).map(str::to_owned)).collect()
}

fn uints(v: &Value, what: &str) -> Result<Vec<usize>> {
    array(v, what)?.iter().map(|x| uint(x, what).map(|x| x as usize)).collect()
}

/// Parses a JSON document.
pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| bad(e.to_string()))
}

/// Compact canonical text: sorted keys, no insignificant whitespace.
pub fn to_text(v: &Value) -> String {
    serde_json::to_string(v).expect("serializing a JSON value cannot fail")
}

// ---------------------------------------------------------------- scalars

pub fn rational_to_json(q: &BigRational) -> Value {
    Value::String(format!("{}/{}", q.numer(), q.denom()))
}

pub fn rational_from_json(v: &Value) -> Result<BigRational> {
    let s = string(v, "rational")?;
    let err = || bad(format!("expected a fraction \"p/q\", got {s:?}"));
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let p: BigInt = p.trim().parse().map_err(|_| err())?;
    let q: BigInt = q.trim().parse().map_err(|_| err())?;
    if q == BigInt::from(0) {
        return Err(err());
    }
    Ok(BigRational::new(p, q))
}

pub fn phase_to_json(p: Phase) -> Value {
    Value::String(p.to_string())
}

pub fn phase_from_json(v: &Value) -> Result<Phase> {
    string(v, "phase")?.parse()
}

pub fn cyclo_to_json(c: &CycloNumber) -> Value {
    let coeffs: Vec<Value> = c.coefficients().iter().map(rational_to_json).collect();
    json!({ "conductor": c.conductor(), "coeffs": coeffs })
}

pub fn cyclo_from_json(v: &Value) -> Result<CycloNumber> {
    let n = uint(field(v, "conductor")?, "conductor")?;
    let coeffs = array(field(v, "coeffs")?, "coeffs")?
        .iter()
        .map(rational_from_json)
        .collect::<Result<Vec<_>>>()?;
    CycloNumber::from_coefficients(n, &coeffs)
        .ok_or_else(|| bad(format!("conductor {n} does not match {} coefficients", coeffs.len())))
}

// ----------------------------------------------------------------- groups

pub fn group_to_json(g: &AbelianGroup) -> Value {
    json!({ "free_rank": g.free_rank(), "torsion": g.torsion() })
}

pub fn group_from_json(v: &Value) -> Result<AbelianGroup> {
    let r = uint(field(v, "free_rank")?, "free_rank")? as usize;
    let t = array(field(v, "torsion")?, "torsion")?
        .iter()
        .map(|d| uint(d, "torsion"))
        .collect::<Result<Vec<_>>>()?;
    AbelianGroup::new(r, t)
}

pub fn element_to_json(g: &GroupElement) -> Value {
    json!(g.coords())
}

pub fn element_from_json(v: &Value, g: &AbelianGroup) -> Result<GroupElement> {
    let coords = array(v, "element")?
        .iter()
        .map(|x| x.as_i64().ok_or_else(|| bad("element: expected integer coordinates")))
        .collect::<Result<Vec<_>>>()?;
    g.element(&coords)
}

fn elements_from_json(v: &Value, g: &AbelianGroup) -> Result<Vec<GroupElement>> {
    array(v, "generators")?.iter().map(|e| element_from_json(e, g)).collect()
}

pub fn subgroup_to_json(h: &Subgroup) -> Value {
    let gens: Vec<Value> = h.generators().iter().map(element_to_json).collect();
    json!({ "generators": gens })
}

pub fn subgroup_from_json(v: &Value, g: &AbelianGroup) -> Result<Subgroup> {
    Subgroup::generated(g, &elements_from_json(field(v, "generators")?, g)?)
}

/// A subgroup together with its ambient group.
pub fn subgroup_file_to_json(h: &Subgroup) -> Value {
    let mut v = subgroup_to_json(h);
    v["ambient"] = group_to_json(h.ambient());
    v
}

pub fn subgroup_file_from_json(v: &Value) -> Result<Subgroup> {
    let g = group_from_json(field(v, "ambient")?)?;
    subgroup_from_json(v, &g)
}

/// Values are listed on the domain's canonical generators. On input they are
/// read against whatever generators the `"domain"` object lists.
pub fn character_to_json(c: &Character) -> Value {
    let values: Vec<Value> = c.values().into_iter().map(phase_to_json).collect();
    json!({ "domain": subgroup_to_json(c.domain()), "values": values })
}

pub fn character_from_json(v: &Value, g: &AbelianGroup) -> Result<Character> {
    let dom = field(v, "domain")?;
    let gens = elements_from_json(field(dom, "generators")?, g)?;
    let domain = Subgroup::generated(g, &gens)?;
    let values = array(field(v, "values")?, "values")?
        .iter()
        .map(phase_from_json)
        .collect::<Result<Vec<_>>>()?;
    Character::from_values_on(&domain, &gens, &values)
}

pub fn characters_to_json(cs: &[Character]) -> Value {
    Value::Array(cs.iter().map(character_to_json).collect())
}

pub fn characters_from_json(v: &Value, g: &AbelianGroup) -> Result<Vec<Character>> {
    array(v, "characters")?.iter().map(|c| character_from_json(c, g)).collect()
}

// -------------------------------------------------------------- bimodules

pub fn bimodule_to_json(m: &BimoduleClass) -> Value {
    let pairs: Vec<Value> = m
        .pairs()
        .iter()
        .map(|(c, g)| json!({ "char": character_to_json(c), "deg": element_to_json(g) }))
        .collect();
    json!({ "left": subgroup_to_json(m.left()), "right": subgroup_to_json(m.right()), "pairs": pairs })
}

pub fn bimodule_from_json(v: &Value, g: &AbelianGroup) -> Result<BimoduleClass> {
    let left = subgroup_from_json(field(v, "left")?, g)?;
    let right = subgroup_from_json(field(v, "right")?, g)?;
    let pairs = array(field(v, "pairs")?, "pairs")?
        .iter()
        .map(|p| Ok((character_from_json(field(p, "char")?, g)?, element_from_json(field(p, "deg")?, g)?)))
        .collect::<Result<Vec<_>>>()?;
    BimoduleClass::new(&left, &right, pairs)
}

/// A bimodule class together with its ambient group.
pub fn bimodule_file_to_json(m: &BimoduleClass) -> Value {
    let mut v = bimodule_to_json(m);
    v["ambient"] = group_to_json(m.left().ambient());
    v
}

pub fn bimodule_file_from_json(v: &Value) -> Result<BimoduleClass> {
    let g = group_from_json(field(v, "ambient")?)?;
    bimodule_from_json(v, &g)
}

// ------------------------------------------------------ posets, incidence

pub fn poset_to_json(p: &Poset) -> Value {
    let covers: Vec<Value> = p.covers().iter().map(|&(x, y)| json!([p.label(x), p.label(y)])).collect();
    json!({ "elements": p.labels(), "covers": covers })
}

/// Reads `"covers"` as a generating relation; the order is its reflexive
/// transitive closure.
pub fn poset_from_json(v: &Value) -> Result<Poset> {
    let elements = strings(field(v, "elements")?, "elements")?;
    let pairs = array(field(v, "covers")?, "covers")?
        .iter()
        .map(|c| match strings(c, "cover")?.as_slice() {
            [x, y] => Ok((x.clone(), y.clone())),
            _ => Err(bad("cover: expected a pair of labels")),
        })
        .collect::<Result<Vec<_>>>()?;
    for (x, y) in &pairs {
        if !elements.contains(x) || !elements.contains(y) {
            return Err(bad(format!("cover ({x}, {y}) names an unknown element")));
        }
    }
    Poset::from_relation(&elements, &pairs)
}

pub fn incidence_to_json(e: &IncidenceElement) -> Value {
    let p = e.poset();
    Value::Array(
        e.terms()
            .iter()
            .map(|(&(x, y), c)| json!({ "from": p.label(x), "to": p.label(y), "coeff": cyclo_to_json(c) }))
            .collect(),
    )
}

pub fn incidence_from_json(v: &Value, p: &Arc<Poset>) -> Result<IncidenceElement> {
    let index = |t: &Value, key: &str| -> Result<usize> {
        let l = string(field(t, key)?, key)?;
        p.index_of(l).ok_or_else(|| bad(format!("unknown poset element {l:?}")))
    };
    let terms = array(v, "incidence element")?
        .iter()
        .map(|t| Ok(((index(t, "from")?, index(t, "to")?), cyclo_from_json(field(t, "coeff")?)?)))
        .collect::<Result<Vec<_>>>()?;
    IncidenceElement::from_terms(p, terms)
}

// ------------------------------------------------------------------ data

fn bimodule_key(sk: &Poset, i: usize, j: usize) -> String {
    format!("{},{}", sk.label(i), sk.label(j))
}

fn blocks_to_json(sk: &Poset, blocks: &[Subgroup]) -> Value {
    let m: Map<String, Value> =
        blocks.iter().enumerate().map(|(i, h)| (sk.label(i).to_owned(), subgroup_to_json(h))).collect();
    Value::Object(m)
}

fn blocks_from_json(v: &Value, g: &AbelianGroup) -> Result<BTreeMap<String, Subgroup>> {
    object(v, "blocks")?.iter().map(|(l, h)| Ok((l.clone(), subgroup_from_json(h, g)?))).collect()
}

pub fn datum_to_json(d: &GradingDatum) -> Value {
    let sk = d.skeleton();
    let bims: Map<String, Value> = d
        .cover_bimodules()
        .iter()
        .map(|(&(i, j), m)| (bimodule_key(sk, i, j), bimodule_to_json(m)))
        .collect();
    json!({
        "ambient": group_to_json(d.ambient()),
        "skeleton": poset_to_json(sk),
        "blocks": blocks_to_json(sk, d.blocks()),
        "bimodules": Value::Object(bims),
    })
}

pub fn datum_from_json(v: &Value) -> Result<GradingDatum> {
    let g = group_from_json(field(v, "ambient")?)?;
    let skeleton = poset_from_json(field(v, "skeleton")?)?;
    let blocks = blocks_from_json(field(v, "blocks")?, &g)?;
    let mut bims = BTreeMap::new();
    for (key, m) in object(field(v, "bimodules")?, "bimodules")? {
        let (a, b) = key
            .split_once(',')
            .ok_or_else(|| bad(format!("bimodule key {key:?} is not of the form \"x,y\"")))?;
        bims.insert((a.to_owned(), b.to_owned()), bimodule_from_json(m, &g)?);
    }
    GradingDatum::from_labels(g, skeleton, &blocks, &bims)
}

/// The poset `X` (`"elements"`, `"covers"`) plus the homogeneous basis, with
/// the skeleton, blocks and vertex characters needed to read it back.
pub fn realized_to_json(r: &RealizedGrading) -> Value {
    let sk = r.skeleton();
    let mut v = poset_to_json(r.poset());
    let vertices: Vec<Value> = r
        .vertices()
        .iter()
        .map(|(b, c)| json!({ "block": sk.label(*b), "char": character_to_json(c) }))
        .collect();
    let basis: Vec<Value> = r
        .basis()
        .iter()
        .map(|h| json!({ "element": incidence_to_json(&h.element), "degree": element_to_json(&h.degree) }))
        .collect();
    v["ambient"] = group_to_json(r.ambient());
    v["skeleton"] = poset_to_json(sk);
    v["blocks"] = blocks_to_json(sk, r.blocks());
    v["vertices"] = Value::Array(vertices);
    v["conductor"] = json!(r.conductor());
    v["basis"] = Value::Array(basis);
    v
}

pub fn realized_from_json(v: &Value) -> Result<RealizedGrading> {
    let g = group_from_json(field(v, "ambient")?)?;
    let skeleton = Arc::new(poset_from_json(field(v, "skeleton")?)?);
    let by_label = blocks_from_json(field(v, "blocks")?, &g)?;
    let block_index = |l: &str| skeleton.index_of(l).ok_or_else(|| bad(format!("unknown block {l:?}")));
    let mut blocks = vec![None; skeleton.len()];
    for (l, h) in by_label {
        blocks[block_index(&l)?] = Some(h);
    }
    let blocks = blocks.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| bad("a block is missing"))?;
    let poset = Arc::new(poset_from_json(v)?);
    let vertices = array(field(v, "vertices")?, "vertices")?
        .iter()
        .map(|x| {
            let b = block_index(string(field(x, "block")?, "block")?)?;
            Ok((b, character_from_json(field(x, "char")?, &g)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let basis = array(field(v, "basis")?, "basis")?
        .iter()
        .map(|b| {
            Ok(HomogeneousElement {
                element: incidence_from_json(field(b, "element")?, &poset)?,
                degree: element_from_json(field(b, "degree")?, &g)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    RealizedGrading::from_parts(g, skeleton, blocks, poset, vertices, basis)
}

// --------------------------------------------------------------- reports

pub fn validation_report_to_json(r: &ValidationReport) -> Value {
    let exps: Vec<Value> = r.exponents.iter().map(|(l, e)| json!({ "block": l, "exponent": e })).collect();
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|x| {
            json!({
                "condition": x.condition,
                "kind": x.kind,
                "from": x.from,
                "to": x.to,
                "message": x.message,
            })
        })
        .collect();
    json!({
        "valid": r.is_valid(),
        "conductor": r.conductor,
        "exponents": exps,
        "violations": violations,
    })
}

pub fn validation_report_from_json(v: &Value) -> Result<ValidationReport> {
    let exponents = array(field(v, "exponents")?, "exponents")?
        .iter()
        .map(|x| Ok((string(field(x, "block")?, "block")?.to_owned(), uint(field(x, "exponent")?, "exponent")?)))
        .collect::<Result<Vec<_>>>()?;
    let violations = array(field(v, "violations")?, "violations")?
        .iter()
        .map(|x| {
            let s = |k: &str| -> Result<String> { Ok(string(field(x, k)?, k)?.to_owned()) };
            let condition = u8::try_from(uint(field(x, "condition")?, "condition")?)
                .map_err(|_| bad("condition: out of range"))?;
            Ok(ValidationViolation { condition, kind: s("kind")?, from: s("from")?, to: s("to")?, message: s("message")? })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ValidationReport { conductor: uint(field(v, "conductor")?, "conductor")?, exponents, violations })
}

fn grading_violation_to_json(x: &GradingViolation) -> Value {
    match x {
        GradingViolation::BasisSize { expected, found } => {
            json!({ "kind": "BasisSize", "expected": expected, "found": found })
        }
        GradingViolation::DependentBasisElement { index } => json!({ "kind": "DependentBasisElement", "index": index }),
        GradingViolation::Product { left, right, degree } => {
            json!({ "kind": "Product", "left": left, "right": right, "degree": element_to_json(degree) })
        }
        GradingViolation::IdentityNotHomogeneous => json!({ "kind": "IdentityNotHomogeneous" }),
    }
}

fn grading_violation_from_json(v: &Value, g: &AbelianGroup) -> Result<GradingViolation> {
    let n = |k: &str| -> Result<usize> { Ok(uint(field(v, k)?, k)? as usize) };
    Ok(match string(field(v, "kind")?, "kind")? {
        "BasisSize" => GradingViolation::BasisSize { expected: n("expected")?, found: n("found")? },
        "DependentBasisElement" => GradingViolation::DependentBasisElement { index: n("index")? },
        "Product" => GradingViolation::Product {
            left: n("left")?,
            right: n("right")?,
            degree: element_from_json(field(v, "degree")?, g)?,
        },
        "IdentityNotHomogeneous" => GradingViolation::IdentityNotHomogeneous,
        k => return Err(bad(format!("unknown violation kind {k:?}"))),
    })
}

pub fn verification_report_to_json(r: &VerificationReport) -> Value {
    let violations: Vec<Value> = r.violations.iter().map(grading_violation_to_json).collect();
    json!({
        "clean": r.is_clean(),
        "dimension": r.dimension,
        "basis_rank": r.basis_rank,
        "products_checked": r.products_checked,
        "violations": violations,
    })
}

/// Degrees inside violation records are read in `g`.
pub fn verification_report_from_json(v: &Value, g: &AbelianGroup) -> Result<VerificationReport> {
    let n = |k: &str| -> Result<usize> { Ok(uint(field(v, k)?, k)? as usize) };
    Ok(VerificationReport {
        dimension: n("dimension")?,
        basis_rank: n("basis_rank")?,
        products_checked: n("products_checked")?,
        violations: array(field(v, "violations")?, "violations")?
            .iter()
            .map(|x| grading_violation_from_json(x, g))
            .collect::<Result<Vec<_>>>()?,
    })
}

pub fn link_report_to_json(r: &LinkReport) -> Value {
    let entries: Vec<Value> = r
        .entries
        .iter()
        .map(|e| {
            json!({
                "from": e.from,
                "to": e.to,
                "total": e.total,
                "from_vertices": e.from_vertices,
                "to_vertices": e.to_vertices,
            })
        })
        .collect();
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|x| json!({ "from": x.from, "to": x.to, "vertex": x.vertex, "expected": x.expected, "found": x.found }))
        .collect();
    json!({ "clean": r.is_clean(), "entries": entries, "violations": violations })
}

pub fn link_report_from_json(v: &Value) -> Result<LinkReport> {
    let s = |x: &Value, k: &str| -> Result<String> { Ok(string(field(x, k)?, k)?.to_owned()) };
    let n = |x: &Value, k: &str| -> Result<usize> { Ok(uint(field(x, k)?, k)? as usize) };
    let entries = array(field(v, "entries")?, "entries")?
        .iter()
        .map(|e| {
            Ok(LinkEntry {
                from: s(e, "from")?,
                to: s(e, "to")?,
                total: n(e, "total")?,
                from_vertices: uints(field(e, "from_vertices")?, "from_vertices")?,
                to_vertices: uints(field(e, "to_vertices")?, "to_vertices")?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let violations = array(field(v, "violations")?, "violations")?
        .iter()
        .map(|x| {
            Ok(LinkViolation {
                from: s(x, "from")?,
                to: s(x, "to")?,
                vertex: s(x, "vertex")?,
                expected: n(x, "expected")?,
                found: n(x, "found")?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LinkReport { entries, violations })
}

// ---------------------------------------------------- isomorphism results

/// `{"isomorphic", "witness"}` for `bimodule_iso`; the witness sends pair
/// `i` of the first class to pair `witness[i]` of the second.
pub fn bimodule_iso_to_json(w: Option<&[usize]>) -> Value {
    json!({ "isomorphic": w.is_some(), "witness": w })
}

pub fn bimodule_iso_from_json(v: &Value) -> Result<Option<Vec<usize>>> {
    let iso = boolean(field(v, "isomorphic")?, "isomorphic")?;
    let w = field(v, "witness")?;
    match (iso, w.is_null()) {
        (false, true) => Ok(None),
        (true, false) => Ok(Some(uints(w, "witness")?)),
        _ => Err(bad("witness must be present exactly when isomorphic")),
    }
}

/// The witness maps each skeleton label of `d` to its image in `d_prime` and
/// lists the twisting character on each block of `d`.
pub fn grading_iso_to_json(d: &GradingDatum, d_prime: &GradingDatum, w: Option<&GradingIsomorphism>) -> Value {
    let witness = w.map(|w| {
        let (p, q) = (d.skeleton(), d_prime.skeleton());
        let alpha: Map<String, Value> =
            w.alpha.iter().enumerate().map(|(i, &a)| (p.label(i).to_owned(), json!(q.label(a)))).collect();
        let mu: Map<String, Value> =
            w.mu.iter().enumerate().map(|(i, c)| (p.label(i).to_owned(), character_to_json(c))).collect();
        json!({ "alpha": alpha, "mu": mu })
    });
    json!({ "isomorphic": w.is_some(), "witness": witness })
}

pub fn grading_iso_from_json(
    v: &Value,
    d: &GradingDatum,
    d_prime: &GradingDatum,
) -> Result<Option<GradingIsomorphism>> {
    let iso = boolean(field(v, "isomorphic")?, "isomorphic")?;
    let w = field(v, "witness")?;
    if !iso {
        return if w.is_null() { Ok(None) } else { Err(bad("witness given for a non-isomorphic pair")) };
    }
    let (p, q) = (d.skeleton(), d_prime.skeleton());
    let alpha_v = object(field(w, "alpha")?, "alpha")?;
    let mu_v = object(field(w, "mu")?, "mu")?;
    let mut alpha = Vec::with_capacity(p.len());
    let mut mu = Vec::with_capacity(p.len());
    for l in p.labels() {
        let a = string(alpha_v.get(l).ok_or_else(|| bad(format!("alpha misses {l:?}")))?, "alpha")?;
        alpha.push(q.index_of(a).ok_or_else(|| bad(format!("unknown element {a:?}")))?);
        mu.push(character_from_json(mu_v.get(l).ok_or_else(|| bad(format!("mu misses {l:?}")))?, d.ambient())?);
    }
    Ok(Some(GradingIsomorphism { alpha, mu }))
}

// ----------------------------------------------------------------- errors

/// `{"error": kind, "message": text}`, with the structured fields of the
/// variants that carry them.
pub fn error_to_json(e: &Error) -> Value {
    let mut v = json!({ "error": e.kind(), "message": e.to_string() });
    match e {
        Error::DegreeConflict { character, first, second } => {
            v["character"] = json!(character);
            v["first"] = json!(first);
            v["second"] = json!(second);
        }
        Error::ChainInconsistency { from, to, via_first, via_second } => {
            v["from"] = json!(from);
            v["to"] = json!(to);
            v["via_first"] = json!(via_first);
            v["via_second"] = json!(via_second);
        }
        _ => {}
    }
    v
}
