//! Browser bindings. Every export takes plain values and returns a JSON
//! string; failures come back as `{"error": "..."}` so the page never has to
//! catch exceptions.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use mubkit::mub::{build_mub_set, classify_basis, structure};
use mubkit::pauli::TranslationFrame;
use mubkit::squares::{
    build_complete_set, classify, default_basis, is_extraordinary_square, is_physical_striation, is_supersquare,
    CompleteSet, SetType, Square,
};
use mubkit::{Error, PhaseSpace, Point};

fn respond(result: Result<Value, Error>) -> String {
    let v = result.unwrap_or_else(|e| json!({ "error": e.to_string() }));
    v.to_string()
}

fn parse_point(ps: &PhaseSpace, text: &str) -> Result<Point, Error> {
    let parts: Vec<&str> = text
        .trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .collect();
    if parts.len() != 2 {
        return Err(Error::Usage(format!("point {text:?} must be written x,y")));
    }
    let f = ps.field();
    Ok(Point::new(f.parse(parts[0].trim())?, f.parse(parts[1].trim())?))
}

/// Empty strings select the default basis for the type.
fn build(d: usize, set_type: &str, v1: &str, v2: &str) -> Result<(PhaseSpace, CompleteSet), Error> {
    let ps = PhaseSpace::of_order(d)?;
    if d > 8 {
        return Err(Error::Unsupported("the demo handles d = 4 and d = 8".into()));
    }
    let t = SetType::parse(set_type)?;
    let (dv1, dv2) = default_basis(&ps, t);
    let v1 = if v1.trim().is_empty() {
        dv1
    } else {
        parse_point(&ps, v1)?
    };
    let v2 = if v2.trim().is_empty() {
        dv2
    } else {
        parse_point(&ps, v2)?
    };
    let set = build_complete_set(&ps, t, v1, v2)?;
    Ok((ps, set))
}

fn point_name(ps: &PhaseSpace, p: Point) -> String {
    let f = ps.field();
    format!("({},{})", f.display(p.x), f.display(p.y))
}

fn axis(ps: &PhaseSpace) -> Vec<String> {
    ps.field()
        .elements_by_log()
        .into_iter()
        .map(|e| ps.field().display(e))
        .collect()
}

/// The complete set as labelled grids (top row first) with each square's
/// kind and generator.
#[wasm_bindgen]
pub fn complete_set(d: usize, set_type: &str, v1: &str, v2: &str) -> String {
    respond(build(d, set_type, v1, v2).map(|(ps, set)| {
        let (b1, b2) = set.basis().expect("constructed sets carry their basis");
        json!({
            "d": d,
            "type": set.set_type().name(),
            "v1": point_name(&ps, b1),
            "v2": point_name(&ps, b2),
            "axis": axis(&ps),
            "squares": set.supersquares().iter().map(|s| json!({
                "grid": s.square().grid(&ps),
                "kind": classify(&ps, s.square()).name(),
                "generator": s.generator().points().iter().map(|&p| point_name(&ps, p)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }))
}

/// Operator words and basis states for every square, with the
/// entanglement class of each basis.
#[wasm_bindgen]
pub fn mub_table(d: usize, set_type: &str, v1: &str, v2: &str) -> String {
    respond(build(d, set_type, v1, v2).and_then(|(ps, set)| {
        let m = build_mub_set(&TranslationFrame::selfdual(*ps.field()), &set)?;
        let bases = m
            .bases()
            .iter()
            .map(|b| {
                let states: Vec<String> = match b.class_of_state() {
                    Some(order) => order.iter().map(|&i| b.states()[i].to_string()).collect(),
                    None => b.states().iter().map(ToString::to_string).collect(),
                };
                Ok(json!({
                    "operators": b.words().iter().map(|w| w.compact()).collect::<Vec<_>>(),
                    "states": states,
                    "separability": classify_basis(b)?.name(),
                }))
            })
            .collect::<Result<Vec<_>, Error>>()?;
        let s = structure(&m)?;
        Ok(json!({ "d": d, "bases": bases, "structure": [s.n_f, s.n_b, s.n_ns] }))
    }))
}

/// Checks an edited grid, given as rows of labels (top row first).
#[wasm_bindgen]
pub fn check_grid(d: usize, grid_json: &str) -> String {
    let run = || -> Result<Value, Error> {
        let ps = PhaseSpace::of_order(d)?;
        let grid: Vec<Vec<usize>> =
            serde_json::from_str(grid_json).map_err(|e| Error::Usage(format!("grid must be rows of labels: {e}")))?;
        let square = Square::from_grid(&ps, &grid)?;
        Ok(json!({
            "supersquare": is_supersquare(&ps, &square),
            "extraordinary": is_extraordinary_square(&ps, &square),
            "physical_striation": is_physical_striation(&ps, &square),
            "kind": classify(&ps, &square).name(),
        }))
    };
    respond(run())
}
