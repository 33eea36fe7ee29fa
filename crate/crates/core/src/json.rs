//! JSON encodings of fields, elements, forms, ring elements, cycles and
//! reports. Every number is written as a string; integer inputs are accepted
//! as strings or as JSON integers.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::fields::{format_poly, Elem, Field, FieldKind, Place};
use crate::gersten::{ClosedPoint, ConicPoint, Curve, QuadraticZeroCycle, ZeroCycle, LINE_VARIABLE};
use crate::milnorwitt::{MilnorPart, MwElement};
use crate::poly::Poly;
use crate::quadforms::DiagonalForm;
use crate::rational_points::{
    AnisotropyCertificate, CheckValue, DegreeOneVerdict, DegreeOneWitness, Lift, LiftCase, MainTheoremReport,
    OddPointSearch,
};
use crate::wittgw::{Decision, GwElement, WittClass};

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing key {key:?}")))
}

fn get_str<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    get(v, key)?.as_str().ok_or_else(|| bad(format!("{key:?} must be a string")))
}

fn get_array<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>> {
    get(v, key)?.as_array().ok_or_else(|| bad(format!("{key:?} must be an array")))
}

/// An integer given as a string or a JSON integer.
pub fn int_from_json(v: &Value) -> Result<i64> {
    match v {
        Value::String(s) => s.trim().parse().map_err(|_| bad(format!("not an integer: {s:?}"))),
        Value::Number(n) => n.as_i64().ok_or_else(|| bad(format!("not an integer: {n}"))),
        _ => Err(bad(format!("not an integer: {v}"))),
    }
}

pub fn int_to_json(n: i64) -> Value {
    Value::String(n.to_string())
}

fn str_of(v: &Value) -> Result<&str> {
    v.as_str().ok_or_else(|| bad(format!("expected a string, got {v}")))
}

pub fn decision_to_json(d: Decision) -> Value {
    Value::String(
        match d {
            Decision::Yes => "yes",
            Decision::No => "no",
            Decision::Undecidable => "undecidable",
        }
        .into(),
    )
}

pub fn decision_from_json(v: &Value) -> Result<Decision> {
    match str_of(v)? {
        "yes" => Ok(Decision::Yes),
        "no" => Ok(Decision::No),
        "undecidable" => Ok(Decision::Undecidable),
        s => Err(bad(format!("unknown decision {s:?}"))),
    }
}

// --- fields and elements ---

pub fn field_to_json(k: &Field) -> Value {
    match k.kind() {
        FieldKind::Rationals => json!({"kind": "rationals"}),
        FieldKind::Prime(p) => json!({"kind": "prime", "p": p.to_string()}),
        FieldKind::Extension { base, minpoly, name } => json!({
            "kind": "extension",
            "base": field_to_json(base),
            "name": name,
            "minpoly": format_poly(base, &minpoly.0, name),
        }),
        FieldKind::Function { base, var } => json!({"kind": "function", "base": field_to_json(base), "var": var}),
    }
}

/// Parses a field descriptor. Extensions are checked for irreducibility.
pub fn field_from_json(v: &Value) -> Result<Field> {
    match get_str(v, "kind")? {
        "rationals" => Ok(Field::rationals()),
        "prime" => {
            let p = int_from_json(get(v, "p")?)?;
            if p < 2 {
                return Err(Error::InvalidField(format!("{p} is not prime")));
            }
            Field::prime(p as u64)
        }
        "extension" => {
            let base = field_from_json(get(v, "base")?)?;
            let name = get_str(v, "name")?;
            let f = poly_from_str(&base, get_str(v, "minpoly")?, name)?;
            Field::extension(&base, f, name)
        }
        "function" => Field::function_field(&field_from_json(get(v, "base")?)?, get_str(v, "var")?),
        s => Err(bad(format!("unknown field kind {s:?}"))),
    }
}

/// A polynomial over `k` written in the variable `var`.
pub fn poly_from_str(k: &Field, s: &str, var: &str) -> Result<Poly> {
    let kt = Field::function_field(k, var)?;
    let x = kt.parse(s)?;
    let (n, d) = kt.num_den(&x);
    if !d.is_constant() {
        return Err(bad(format!("{s:?} is not a polynomial")));
    }
    let c = k.inv(&d.0[0])?;
    Ok(n.scale(&c, k))
}

pub fn elem_to_json(k: &Field, x: &Elem) -> Value {
    json!({"field": field_to_json(k), "repr": k.format(x)})
}

pub fn elem_from_json(v: &Value) -> Result<(Field, Elem)> {
    let k = field_from_json(get(v, "field")?)?;
    let x = k.parse(get_str(v, "repr")?)?;
    Ok((k, x))
}

// --- forms and ring elements ---

pub fn form_to_json(q: &DiagonalForm) -> Value {
    let k = q.field();
    json!({"field": field_to_json(k), "entries": q.entries().iter().map(|x| k.format(x)).collect::<Vec<_>>()})
}

/// Parses a form; the field may be omitted when `default` is given.
pub fn form_from_json(v: &Value, default: Option<&Field>) -> Result<DiagonalForm> {
    let k = match (v.get("field"), default) {
        (Some(f), d) => {
            let k = field_from_json(f)?;
            if d.is_some_and(|d| *d != k) {
                return Err(Error::DescriptorMismatch);
            }
            k
        }
        (None, Some(d)) => d.clone(),
        (None, None) => return Err(bad("missing key \"field\"")),
    };
    let entries = get_array(v, "entries")?
        .iter()
        .map(|e| match e {
            Value::Number(_) => Ok(k.from_i64(int_from_json(e)?)),
            _ => k.parse(str_of(e)?),
        })
        .collect::<Result<Vec<_>>>()?;
    DiagonalForm::new(&k, entries)
}

pub fn witt_to_json(w: &WittClass) -> Value {
    form_to_json(w.rep())
}

pub fn witt_from_json(v: &Value, default: Option<&Field>) -> Result<WittClass> {
    WittClass::from_form(&form_from_json(v, default)?)
}

pub fn gw_to_json(g: &GwElement) -> Value {
    json!({"rank": int_to_json(g.rank()), "witt": witt_to_json(g.witt())})
}

/// Parses a Grothendieck-Witt element. A bare form is read as its class.
pub fn gw_from_json(v: &Value, default: Option<&Field>) -> Result<GwElement> {
    if v.get("entries").is_some() {
        return GwElement::from_form(&form_from_json(v, default)?);
    }
    GwElement::make(int_from_json(get(v, "rank")?)?, witt_from_json(get(v, "witt")?, default)?)
}

pub fn mw_to_json(x: &MwElement) -> Value {
    let k = x.field();
    let milnor: Vec<Value> = match x.milnor() {
        MilnorPart::Absent => vec![],
        MilnorPart::Int(n) => vec![int_to_json(*n)],
        MilnorPart::Unit(u) => vec![Value::String(k.format(u))],
        MilnorPart::Symbols(s) => {
            s.iter().map(|(n, a, b)| json!([n.to_string(), k.format(a), k.format(b)])).collect()
        }
    };
    json!({"degree": int_to_json(x.degree()), "milnor": milnor, "ideal": witt_to_json(x.ideal())})
}

/// Parses a Milnor-Witt element. Degree 0 takes `[n]`, degree 1 takes `[u]`,
/// degree 2 takes a list of `[n, a, b]` standing for `Σ n {a, b}`, and
/// negative degrees take `[]`.
pub fn mw_from_json(v: &Value, default: Option<&Field>) -> Result<MwElement> {
    let degree = int_from_json(get(v, "degree")?)?;
    let ideal = witt_from_json(get(v, "ideal")?, default)?;
    let k = ideal.field().clone();
    let m = get_array(v, "milnor")?;
    let one = |what: &str| -> Result<&Value> {
        if m.len() != 1 {
            return Err(bad(format!("degree {degree} takes one {what}")));
        }
        Ok(&m[0])
    };
    let milnor = match degree {
        d if d < 0 => {
            if !m.is_empty() {
                return Err(bad("negative degrees take no Milnor part"));
            }
            MilnorPart::Absent
        }
        0 => MilnorPart::Int(int_from_json(one("integer")?)?),
        1 => MilnorPart::Unit(k.parse(str_of(one("unit")?)?)?),
        2 => MilnorPart::Symbols(
            m.iter()
                .map(|t| {
                    let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(|| bad("symbols are [n, a, b]"))?;
                    Ok((int_from_json(&t[0])?, k.parse(str_of(&t[1])?)?, k.parse(str_of(&t[2])?)?))
                })
                .collect::<Result<Vec<_>>>()?,
        ),
        d => return Err(Error::UnsupportedDegree(d)),
    };
    MwElement::new(degree, milnor, ideal)
}

// --- places, curves, points, cycles ---

/// A place of `k(t)`: `"inf"` or a monic irreducible polynomial in `t`.
pub fn place_to_json(k: &Field, v: &Place) -> Value {
    match v {
        Place::Infinite => Value::String("inf".into()),
        Place::Finite(f) => Value::String(format_poly(k, &f.0, LINE_VARIABLE)),
    }
}

pub fn place_from_json(k: &Field, v: &Value) -> Result<Place> {
    let s = str_of(v)?;
    if s.trim() == "inf" {
        return Ok(Place::Infinite);
    }
    Ok(Place::Finite(poly_from_str(k, s, LINE_VARIABLE)?))
}

pub fn curve_to_json(c: &Curve) -> Value {
    match c {
        Curve::ProjectiveLine(k) => json!({"kind": "p1", "field": field_to_json(k)}),
        Curve::Conic { field, a, b, c } => json!({
            "kind": "conic",
            "field": field_to_json(field),
            "coeffs": [field.format(a), field.format(b), field.format(c)],
        }),
    }
}

pub fn curve_from_json(v: &Value) -> Result<Curve> {
    let k = field_from_json(get(v, "field")?)?;
    match get_str(v, "kind")? {
        "p1" => Curve::projective_line(&k),
        "conic" => {
            let c = get_array(v, "coeffs")?;
            if c.len() != 3 {
                return Err(bad("a conic takes three coefficients"));
            }
            let e = c
                .iter()
                .map(|x| match x {
                    Value::Number(_) => Ok(k.from_i64(int_from_json(x)?)),
                    _ => k.parse(str_of(x)?),
                })
                .collect::<Result<Vec<_>>>()?;
            Curve::conic(&k, e[0].clone(), e[1].clone(), e[2].clone())
        }
        s => Err(bad(format!("unknown curve kind {s:?}"))),
    }
}

pub fn point_to_json(curve: &Curve, x: &ClosedPoint) -> Value {
    let k = curve.field();
    match x {
        ClosedPoint::Finite(_) | ClosedPoint::Infinity => json!({"place": place_to_json(k, &x.place().unwrap())}),
        ClosedPoint::Conic(p) => {
            let l = p.residue_field();
            json!({"residue": field_to_json(l), "coords": p.coords().iter().map(|c| l.format(c)).collect::<Vec<_>>()})
        }
    }
}

pub fn point_from_json(curve: &Curve, v: &Value) -> Result<ClosedPoint> {
    let x = match curve {
        Curve::ProjectiveLine(k) => ClosedPoint::from_place(&place_from_json(k, get(v, "place")?)?),
        Curve::Conic { .. } => {
            let l = field_from_json(get(v, "residue")?)?;
            let c = get_array(v, "coords")?;
            if c.len() != 3 {
                return Err(bad("conic points take three coordinates"));
            }
            let e = c.iter().map(|x| l.parse(str_of(x)?)).collect::<Result<Vec<_>>>()?;
            ClosedPoint::Conic(ConicPoint::new(curve, &l, [e[0].clone(), e[1].clone(), e[2].clone()])?)
        }
    };
    x.validate(curve)?;
    Ok(x)
}

pub fn cycle_to_json(z: &QuadraticZeroCycle) -> Value {
    let c = z.curve();
    let support: Vec<Value> =
        z.support().iter().map(|(x, g)| json!({"point": point_to_json(c, x), "gw": gw_to_json(g)})).collect();
    json!({"curve": curve_to_json(c), "support": support})
}

/// Parses a quadratic zero-cycle; coefficients are read over the residue
/// field of their point, whose descriptor may be omitted.
pub fn cycle_from_json(v: &Value) -> Result<QuadraticZeroCycle> {
    let curve = curve_from_json(get(v, "curve")?)?;
    cycle_on_from_json(&curve, v)
}

pub fn cycle_on_from_json(curve: &Curve, v: &Value) -> Result<QuadraticZeroCycle> {
    let mut terms = Vec::new();
    for t in get_array(v, "support")? {
        let x = point_from_json(curve, get(t, "point")?)?;
        let l = x.residue_field(curve)?;
        terms.push((x, gw_from_json(get(t, "gw")?, Some(&l))?));
    }
    QuadraticZeroCycle::new(curve, terms)
}

pub fn zero_cycle_to_json(z: &ZeroCycle) -> Value {
    let support: Vec<Value> =
        z.support.iter().map(|(x, n)| json!({"point": point_to_json(&z.curve, x), "mult": int_to_json(*n)})).collect();
    json!({"curve": curve_to_json(&z.curve), "support": support})
}

pub fn zero_cycle_from_json(v: &Value) -> Result<ZeroCycle> {
    let curve = curve_from_json(get(v, "curve")?)?;
    let support = get_array(v, "support")?
        .iter()
        .map(|t| Ok((point_from_json(&curve, get(t, "point")?)?, int_from_json(get(t, "mult")?)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ZeroCycle { curve, support })
}

pub fn points_to_json(curve: &Curve, pts: &[ClosedPoint]) -> Value {
    Value::Array(
        pts.iter()
            .map(|x| {
                let mut m = point_to_json(curve, x).as_object().cloned().unwrap_or_default();
                m.insert("degree".into(), int_to_json(x.degree() as i64));
                Value::Object(m)
            })
            .collect(),
    )
}

pub fn witness_to_json(curve: &Curve, w: &DegreeOneWitness) -> Value {
    Value::Array(
        w.terms
            .iter()
            .map(|(x, n)| {
                json!({"point": point_to_json(curve, x), "degree": int_to_json(x.degree() as i64), "mult": int_to_json(*n)})
            })
            .collect(),
    )
}

pub fn witness_from_json(curve: &Curve, v: &Value) -> Result<DegreeOneWitness> {
    let a = v.as_array().ok_or_else(|| bad("a witness is an array of {point, mult}"))?;
    let terms = a
        .iter()
        .map(|t| Ok((point_from_json(curve, get(t, "point")?)?, int_from_json(get(t, "mult")?)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(DegreeOneWitness { terms })
}

// --- reports ---

pub fn odd_search_to_json(curve: &Curve, s: &OddPointSearch) -> Value {
    json!({
        "height": s.height.to_string(),
        "rational_candidates": s.rational_candidates.to_string(),
        "cubic_candidates": s.cubic_candidates.to_string(),
        "norm_survivors": s.norm_survivors.to_string(),
        "found": points_to_json(curve, &s.found),
    })
}

pub fn certificate_to_json(curve: &Curve, c: &AnisotropyCertificate) -> Value {
    json!({"anisotropic_at": c.place.to_string(), "odd_search": odd_search_to_json(curve, &c.odd_search)})
}

pub fn degree_one_to_json(curve: &Curve, v: &DegreeOneVerdict) -> Value {
    match v {
        DegreeOneVerdict::Yes(w) => json!({"verdict": "yes", "witness": witness_to_json(curve, w)}),
        DegreeOneVerdict::No(c) => json!({"verdict": "no", "certificate": certificate_to_json(curve, c)}),
        DegreeOneVerdict::Unknown(why) => json!({"verdict": "unknown", "reason": why}),
    }
}

pub fn lift_to_json(l: &Lift) -> Value {
    let curve = l.cycle.curve();
    let k = curve.field();
    let mut m = Map::new();
    match &l.case {
        LiftCase::NonFormallyReal { inverse } => {
            m.insert("case".into(), json!("non_formally_real"));
            m.insert("inverse".into(), witt_to_json(inverse));
        }
        LiftCase::FormallyReal { point, scalar, height } => {
            let kx = point.residue_field(curve).unwrap_or_else(|_| k.clone());
            m.insert("case".into(), json!("formally_real"));
            m.insert("point".into(), point_to_json(curve, point));
            m.insert("scalar".into(), elem_to_json(&kx, scalar));
            m.insert("height".into(), json!(height.to_string()));
        }
    }
    m.insert("cycle".into(), cycle_to_json(&l.cycle));
    m.insert("qdeg".into(), gw_to_json(&l.qdeg));
    m.insert("verified".into(), decision_to_json(l.verified));
    Value::Object(m)
}

pub fn check_to_json(c: &CheckValue) -> Value {
    match c {
        CheckValue::Bool(b) => Value::Bool(*b),
        CheckValue::Int(n) => int_to_json(*n),
        CheckValue::Text(s) => Value::String(s.clone()),
    }
}

pub fn report_to_json(r: &MainTheoremReport) -> Value {
    let c = &r.curve;
    let checks: Map<String, Value> = r.checks.iter().map(|(k, v)| (k.clone(), check_to_json(v))).collect();
    let mut m = Map::new();
    m.insert("curve".into(), curve_to_json(c));
    m.insert("verdict".into(), json!(r.verdict.as_str()));
    m.insert("witness".into(), r.witness.as_ref().map_or(json!([]), |w| witness_to_json(c, w)));
    m.insert("lift".into(), r.lift.as_ref().map_or(json!({}), lift_to_json));
    if let Some(cert) = &r.certificate {
        m.insert("certificate".into(), certificate_to_json(c, cert));
    }
    m.insert("checks".into(), Value::Object(checks));
    m.insert("statement".into(), json!(r.statement));
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_round_trip() {
        let q = Field::rationals();
        let l = Field::extension(&q, Poly::from_i64s(&q, &[-2, 0, 0, 1]), "a").unwrap();
        let m = Field::extension(&l, Poly::from_coeffs(vec![l.neg(&l.generator().unwrap()), l.zero(), l.one()]), "b").unwrap();
        for k in [q.clone(), Field::prime(7).unwrap(), l.clone(), m, Field::function_field(&l, "t").unwrap()] {
            assert_eq!(field_from_json(&field_to_json(&k)).unwrap(), k);
        }
        let x = l.parse("a^2 - 1/3").unwrap();
        assert_eq!(elem_from_json(&elem_to_json(&l, &x)).unwrap(), (l, x));
    }

    #[test]
    fn ring_elements_round_trip() {
        let q = Field::rationals();
        let g = GwElement::from_form(&DiagonalForm::from_i64s(&q, &[1, -2, 3]).unwrap()).unwrap();
        assert_eq!(gw_from_json(&gw_to_json(&g), None).unwrap(), g);
        let qt = Field::function_field(&q, "t").unwrap();
        let t = qt.parse("t").unwrap();
        let x = crate::milnorwitt::mw_unit_symbol(&qt, &t).unwrap();
        assert_eq!(mw_from_json(&mw_to_json(&x), None).unwrap(), x);
    }

    #[test]
    fn rejects_bad_payloads() {
        assert!(field_from_json(&json!({"kind": "prime", "p": "1"})).is_err());
        assert!(field_from_json(&json!({"kind": "prime", "p": 2.5})).is_err());
        assert!(form_from_json(&json!({"field": {"kind": "rationals"}, "entries": ["0"]}), None).is_err());
        assert!(gw_from_json(&json!({"rank": "2", "witt": {"field": {"kind": "rationals"}, "entries": ["1"]}}), None).is_err());
    }
}
