//! Canonical JSON forms.
//!
//! Everything goes through `serde_json::Value`, whose object map is sorted,
//! so printing a value yields byte-stable output with sorted keys. Field
//! elements are written as bitmasks and there are no floats.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::gauss::GaussInt;
use crate::gf2n::Field;
use crate::mub::{structure, MubBasis, MubSet, UnnormalizedState};
use crate::pauli::PauliWord;
use crate::phasespace::{PhaseSpace, Point, Subgroup};
use crate::squares::{CompleteSet, SetType, Square};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(format!("missing key \"{key}\"")))
}

fn as_u64(v: &Value, what: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| parse_err(format!("{what} must be a non-negative integer")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| parse_err(format!("{what} must be an array")))
}

/// Pretty-printed canonical text.
pub fn to_canonical_string(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("Value always serializes")
}

pub fn parse_text(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_err(format!("malformed JSON: {e}")))
}

pub fn field_to_json(field: &Field) -> Value {
    json!({ "n": field.degree(), "poly": field.poly() })
}

pub fn field_from_json(v: &Value) -> Result<Field> {
    let n = as_u64(get(v, "n")?, "n")?;
    let poly = as_u64(get(v, "poly")?, "poly")?;
    let n = u32::try_from(n).map_err(|_| parse_err("n out of range"))?;
    let poly = u32::try_from(poly).map_err(|_| parse_err("poly out of range"))?;
    Field::with_poly(n, poly)
}

pub fn point_to_json(p: Point) -> Value {
    json!([p.x.bits(), p.y.bits()])
}

pub fn point_from_json(ps: &PhaseSpace, v: &Value) -> Result<Point> {
    let a = as_array(v, "point")?;
    if a.len() != 2 {
        return Err(parse_err("point must be [x, y]"));
    }
    let mask = |v: &Value| -> Result<u32> {
        u32::try_from(as_u64(v, "coordinate")?).map_err(|_| parse_err("coordinate out of range"))
    };
    ps.point(mask(&a[0])?, mask(&a[1])?)
}

fn points_to_json(points: &[Point]) -> Value {
    Value::Array(points.iter().map(|&p| point_to_json(p)).collect())
}

fn points_from_json(ps: &PhaseSpace, v: &Value) -> Result<Vec<Point>> {
    as_array(v, "point list")?
        .iter()
        .map(|p| point_from_json(ps, p))
        .collect()
}

pub fn subgroup_to_json(g: &Subgroup) -> Value {
    points_to_json(g.points())
}

pub fn subgroup_from_json(ps: &PhaseSpace, v: &Value) -> Result<Subgroup> {
    ps.subgroup(points_from_json(ps, v)?)
}

/// `{"d", "classes"}` with classes in label order, points sorted.
pub fn square_to_json(s: &Square) -> Value {
    json!({
        "d": s.d(),
        "classes": s.classes().iter().map(|c| points_to_json(c)).collect::<Vec<_>>(),
    })
}

pub fn square_from_json(ps: &PhaseSpace, v: &Value) -> Result<Square> {
    let d = as_u64(get(v, "d")?, "d")? as usize;
    if d != ps.d() {
        return Err(parse_err(format!("square has d = {d}, expected {}", ps.d())));
    }
    let classes = as_array(get(v, "classes")?, "classes")?
        .iter()
        .map(|c| points_from_json(ps, c))
        .collect::<Result<Vec<_>>>()?;
    Square::new(ps, classes).map_err(|e| parse_err(e.to_string()))
}

pub fn complete_set_to_json(set: &CompleteSet) -> Value {
    let (v1, v2) = match set.basis() {
        Some((a, b)) => (point_to_json(a), point_to_json(b)),
        None => (Value::Null, Value::Null),
    };
    json!({
        "type": set.set_type().name(),
        "v1": v1,
        "v2": v2,
        "squares": set.supersquares().iter().map(|s| square_to_json(s.square())).collect::<Vec<_>>(),
    })
}

/// A parsed complete-set document; squares are kept as given so that
/// verification can reject broken ones.
#[derive(Clone, Debug)]
pub struct CompleteSetDoc {
    pub set_type: SetType,
    pub basis: Option<(Point, Point)>,
    pub squares: Vec<Square>,
}

pub fn complete_set_from_json(ps: &PhaseSpace, v: &Value) -> Result<CompleteSetDoc> {
    let set_type = SetType::parse(
        get(v, "type")?
            .as_str()
            .ok_or_else(|| parse_err("type must be a string"))?,
    )?;
    let basis = match (v.get("v1"), v.get("v2")) {
        (Some(a), Some(b)) if !a.is_null() && !b.is_null() => Some((point_from_json(ps, a)?, point_from_json(ps, b)?)),
        _ => None,
    };
    let squares = as_array(get(v, "squares")?, "squares")?
        .iter()
        .map(|s| square_from_json(ps, s))
        .collect::<Result<Vec<_>>>()?;
    Ok(CompleteSetDoc {
        set_type,
        basis,
        squares,
    })
}

/// Builds the set from the squares' origin classes.
pub fn complete_set_from_doc(ps: &PhaseSpace, doc: &CompleteSetDoc) -> Result<CompleteSet> {
    let gens = doc
        .squares
        .iter()
        .map(|s| ps.subgroup(s.classes()[s.origin_class()].iter().copied()))
        .collect::<Result<Vec<_>>>()?;
    CompleteSet::from_generators(ps, &gens, doc.set_type, doc.basis)
}

pub fn state_to_json(s: &UnnormalizedState) -> Value {
    json!({
        "num": s.entries().iter().map(|z| json!([z.re, z.im])).collect::<Vec<_>>(),
        "norm_sq": s.norm_sq(),
    })
}

pub fn state_from_json(v: &Value) -> Result<UnnormalizedState> {
    let entries = as_array(get(v, "num")?, "num")?
        .iter()
        .map(|z| {
            let pair = as_array(z, "entry")?;
            let part = |k: usize| {
                pair.get(k)
                    .and_then(Value::as_i64)
                    .ok_or_else(|| parse_err("entry must be [re, im]"))
            };
            if pair.len() != 2 {
                return Err(parse_err("entry must be [re, im]"));
            }
            Ok(GaussInt::new(part(0)?, part(1)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let declared = get(v, "norm_sq")?
        .as_i64()
        .ok_or_else(|| parse_err("norm_sq must be an integer"))?;
    let actual: i64 = entries.iter().map(|z| z.norm()).sum();
    if declared != actual {
        return Err(parse_err(format!(
            "norm_sq is {declared} but the entries give {actual}"
        )));
    }
    UnnormalizedState::new(entries).map_err(|e| parse_err(e.to_string()))
}

pub fn word_to_json(w: &PauliWord) -> Value {
    serde_json::to_value(w).expect("words serialize")
}

pub fn word_from_json(v: &Value) -> Result<PauliWord> {
    serde_json::from_value(v.clone()).map_err(|e| parse_err(format!("bad Pauli word: {e}")))
}

pub fn basis_to_json(b: &MubBasis) -> Value {
    let mut m = Map::new();
    m.insert("source".into(), subgroup_to_json(b.source()));
    m.insert(
        "words".into(),
        Value::Array(b.words().iter().map(word_to_json).collect()),
    );
    m.insert(
        "states".into(),
        Value::Array(b.states().iter().map(state_to_json).collect()),
    );
    m.insert(
        "class_of_state".into(),
        b.class_of_state().map_or(Value::Null, |c| json!(c)),
    );
    Value::Object(m)
}

/// Parsed basis document: the words and states as printed.
#[derive(Clone, Debug)]
pub struct BasisDoc {
    pub source: Vec<Point>,
    pub words: Vec<PauliWord>,
    pub states: Vec<UnnormalizedState>,
    pub class_of_state: Option<Vec<usize>>,
}

pub fn basis_from_json(ps: &PhaseSpace, v: &Value) -> Result<BasisDoc> {
    let source = points_from_json(ps, get(v, "source")?)?;
    let words = as_array(get(v, "words")?, "words")?
        .iter()
        .map(word_from_json)
        .collect::<Result<_>>()?;
    let states = as_array(get(v, "states")?, "states")?
        .iter()
        .map(state_from_json)
        .collect::<Result<_>>()?;
    let class_of_state = match v.get("class_of_state") {
        None | Some(Value::Null) => None,
        Some(c) => Some(
            as_array(c, "class_of_state")?
                .iter()
                .map(|k| as_u64(k, "state index").map(|k| k as usize))
                .collect::<Result<_>>()?,
        ),
    };
    Ok(BasisDoc {
        source,
        words,
        states,
        class_of_state,
    })
}

pub fn mub_set_to_json(m: &MubSet) -> Value {
    let mut out = Map::new();
    out.insert("d".into(), json!(m.dim()));
    out.insert("set".into(), complete_set_to_json(m.source_set()));
    out.insert(
        "bases".into(),
        Value::Array(m.bases().iter().map(basis_to_json).collect()),
    );
    if m.dim() == 8 {
        if let Ok(s) = structure(m) {
            out.insert("structure".into(), json!([s.n_f, s.n_b, s.n_ns]));
        }
    }
    Value::Object(out)
}

#[derive(Clone, Debug)]
pub struct MubSetDoc {
    pub d: usize,
    pub bases: Vec<BasisDoc>,
    pub structure: Option<[usize; 3]>,
}

pub fn mub_set_from_json(ps: &PhaseSpace, v: &Value) -> Result<MubSetDoc> {
    let d = as_u64(get(v, "d")?, "d")? as usize;
    if d != ps.d() {
        return Err(parse_err(format!("MUB set has d = {d}, expected {}", ps.d())));
    }
    let bases = as_array(get(v, "bases")?, "bases")?
        .iter()
        .map(|b| basis_from_json(ps, b))
        .collect::<Result<_>>()?;
    let structure = match v.get("structure") {
        None | Some(Value::Null) => None,
        Some(s) => {
            let a = as_array(s, "structure")?;
            if a.len() != 3 {
                return Err(parse_err("structure must have three entries"));
            }
            Some([
                as_u64(&a[0], "n_f")? as usize,
                as_u64(&a[1], "n_b")? as usize,
                as_u64(&a[2], "n_ns")? as usize,
            ])
        }
    };
    Ok(MubSetDoc { d, bases, structure })
}
