//! Complete sets of d+1 mutually orthogonal extraordinary supersquares:
//! the explicit Type I-IV constructions and the verification report.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{are_orthogonal, is_physical_striation, is_supersquare, supersquare_from_subgroup, Square, Supersquare};
use crate::error::{Error, Result};
use crate::gf2n::Elem;
use crate::phasespace::{PhaseSpace, Point, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SetType {
    I,
    II,
    III,
    IV,
    Unclassified,
}

impl SetType {
    pub fn name(self) -> &'static str {
        match self {
            SetType::I => "I",
            SetType::II => "II",
            SetType::III => "III",
            SetType::IV => "IV",
            SetType::Unclassified => "Unclassified",
        }
    }

    pub fn parse(s: &str) -> Result<SetType> {
        match s.trim().to_ascii_uppercase().as_str() {
            "I" | "1" => Ok(SetType::I),
            "II" | "2" => Ok(SetType::II),
            "III" | "3" => Ok(SetType::III),
            "IV" | "4" => Ok(SetType::IV),
            "UNCLASSIFIED" => Ok(SetType::Unclassified),
            _ => Err(Error::Usage(format!("unknown set type {s:?}"))),
        }
    }
}

impl fmt::Display for SetType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// d+1 supersquares with their generating subgroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteSet {
    set_type: SetType,
    basis: Option<(Point, Point)>,
    supersquares: Vec<Supersquare>,
}

impl CompleteSet {
    pub fn from_generators(
        ps: &PhaseSpace,
        generators: &[Subgroup],
        set_type: SetType,
        basis: Option<(Point, Point)>,
    ) -> Result<CompleteSet> {
        let supersquares = generators
            .iter()
            .map(|g| supersquare_from_subgroup(ps, g))
            .collect::<Result<Vec<_>>>()?;
        Ok(CompleteSet {
            set_type,
            basis,
            supersquares,
        })
    }

    pub fn set_type(&self) -> SetType {
        self.set_type
    }

    pub fn basis(&self) -> Option<(Point, Point)> {
        self.basis
    }

    pub fn supersquares(&self) -> &[Supersquare] {
        &self.supersquares
    }

    pub fn generators(&self) -> Vec<&Subgroup> {
        self.supersquares.iter().map(Supersquare::generator).collect()
    }

    pub fn squares(&self) -> Vec<Square> {
        self.supersquares.iter().map(|s| s.square().clone()).collect()
    }

    /// Generators in sorted order; equal keys mean the same set of squares.
    pub fn canonical_key(&self) -> Vec<Subgroup> {
        let mut gens: Vec<Subgroup> = self.generators().into_iter().cloned().collect();
        gens.sort();
        gens
    }
}

fn require_basis(ps: &PhaseSpace, v1: Point, v2: Point) -> Result<Elem> {
    ps.check(v1)?;
    ps.check(v2)?;
    let k = ps.det(v1, v2);
    if k.is_zero() {
        return Err(Error::Domain("v1 and v2 are dependent: det(v1,v2) = 0".into()));
    }
    Ok(k)
}

/// The d+1 lines through the origin, listed as `F_d(v1 + l v2)` for `l`
/// over the field followed by `F_d v2`. At d = 4 the order follows the
/// two-qubit listing `v1, v2, v1 + m v2, v1 + m^2 v2, v1 + v2`.
pub fn type_one(ps: &PhaseSpace, v1: Point, v2: Point) -> Result<CompleteSet> {
    require_basis(ps, v1, v2)?;
    let f = ps.field();
    let directions: Vec<Point> = if ps.d() == 4 {
        let m = f.generator();
        vec![v1, v2, v1 + ps.scale(m, v2), v1 + ps.scale(f.mul(m, m), v2), v1 + v2]
    } else {
        let mut dirs: Vec<Point> = f.elements_by_log().into_iter().map(|l| v1 + ps.scale(l, v2)).collect();
        dirs.push(v2);
        dirs
    };
    let gens = directions.into_iter().map(|u| ps.line(u)).collect::<Result<Vec<_>>>()?;
    CompleteSet::from_generators(ps, &gens, SetType::I, Some((v1, v2)))
}

/// The two-qubit Type II set; needs `det(v1, v2) = 1`.
pub fn type_two_d4(ps: &PhaseSpace, v1: Point, v2: Point) -> Result<CompleteSet> {
    if ps.d() != 4 {
        return Err(Error::Usage(format!(
            "type II (d=4) construction called with d={}",
            ps.d()
        )));
    }
    let k = require_basis(ps, v1, v2)?;
    if k != Elem::ONE {
        return Err(Error::Domain(format!(
            "type II at d=4 needs det(v1,v2) = 1, got {}",
            ps.field().display(k)
        )));
    }
    let f = ps.field();
    let m = f.generator();
    let m2 = f.mul(m, m);
    let s = |c: Elem, p: Point| ps.scale(c, p);
    let z2 = [Elem::ZERO, Elem::ONE];
    let pair = |a: Point, b: Point| ps.affine_span(a, b, &z2, &z2);
    let gens = vec![
        ps.line(v1)?,
        pair(v2, v1 + s(m, v2))?,
        pair(s(m, v2), s(m2, v1) + s(m2, v2))?,
        pair(s(m2, v2), s(m, v1) + s(m, v2))?,
        pair(v1 + v2, s(m, v1) + s(m2, v2))?,
    ];
    CompleteSet::from_generators(ps, &gens, SetType::II, Some((v1, v2)))
}

// Coefficient of one generator vector: `Some(e)` is `k^e`, `None` is absent.
type Coeff = (Option<u32>, Option<u32>);

enum Gen {
    /// `F_8 (a v1 + b v2)`
    Line(Coeff),
    /// `Z_2 (a v1 + b v2) + (K k^-1)(c v1 + d v2)`
    Mixed(Coeff, Coeff),
}

use Gen::{Line, Mixed};

const N: Option<u32> = None;
const fn k(e: u32) -> Option<u32> {
    Some(e)
}

const TYPE_TWO: [Gen; 9] = [
    Mixed((k(4), k(0)), (k(0), N)),
    Mixed((k(2), N), (k(2), k(5))),
    Mixed((k(4), N), (k(6), k(3))),
    Mixed((k(5), N), (k(4), k(2))),
    Mixed((k(6), N), (k(0), k(1))),
    Mixed((k(1), k(1)), (N, k(6))),
    Mixed((N, k(1)), (k(6), k(6))),
    Mixed((N, k(4)), (k(3), k(5))),
    Mixed((k(2), k(3)), (k(0), k(6))),
];

const TYPE_THREE: [Gen; 9] = [
    Line((N, k(0))),
    Line((k(0), k(0))),
    Line((k(1), k(0))),
    Mixed((k(2), k(0)), (k(0), N)),
    Mixed((k(2), N), (k(4), k(5))),
    Mixed((k(4), N), (k(5), k(3))),
    Mixed((k(5), N), (k(0), k(2))),
    Mixed((k(6), N), (k(4), k(1))),
    Mixed((k(0), k(5)), (k(5), k(1))),
];

const TYPE_FOUR: [Gen; 9] = [
    Line((N, k(0))),
    Mixed((k(2), k(0)), (k(0), N)),
    Mixed((k(2), N), (k(0), k(5))),
    Mixed((k(4), N), (k(0), k(3))),
    Mixed((k(5), N), (k(0), k(2))),
    Mixed((k(6), N), (k(0), k(1))),
    Mixed((k(2), k(6)), (k(0), k(0))),
    Mixed((k(2), k(2)), (k(0), k(4))),
    Mixed((k(5), k(5)), (k(0), k(6))),
];

fn build_d8(ps: &PhaseSpace, v1: Point, v2: Point, table: &[Gen; 9], set_type: SetType) -> Result<CompleteSet> {
    if ps.d() != 8 {
        return Err(Error::Usage(format!(
            "type {set_type} construction needs d=8, got d={}",
            ps.d()
        )));
    }
    let det = require_basis(ps, v1, v2)?;
    let f = ps.field();
    if !f.trace(det).is_zero() {
        return Err(Error::Domain(format!(
            "det(v1,v2) = {} not in K\\{{0}}",
            f.display(det)
        )));
    }
    let kt = ps.scaled_trace_zero(det)?;
    let vec_of = |(a, b): Coeff| {
        let term = |c: Option<u32>, v: Point| match c {
            Some(e) => ps.scale(f.pow(det, e as u64), v),
            None => Point::ORIGIN,
        };
        term(a, v1) + term(b, v2)
    };
    let gens = table
        .iter()
        .map(|g| match *g {
            Line(c) => ps.line(vec_of(c)),
            Mixed(a, b) => ps.affine_span(vec_of(a), vec_of(b), &[Elem::ZERO, Elem::ONE], &kt),
        })
        .collect::<Result<Vec<_>>>()?;
    CompleteSet::from_generators(ps, &gens, set_type, Some((v1, v2)))
}

/// Type II at d = 8; needs `det(v1, v2)` nonzero with trace zero.
pub fn type_two_d8(ps: &PhaseSpace, v1: Point, v2: Point) -> Result<CompleteSet> {
    build_d8(ps, v1, v2, &TYPE_TWO, SetType::II)
}

/// Type III at d = 8: three lines and six mixed generators.
pub fn type_three_d8(ps: &PhaseSpace, v1: Point, v2: Point) -> Result<CompleteSet> {
    build_d8(ps, v1, v2, &TYPE_THREE, SetType::III)
}

/// Type IV at d = 8: one line and eight mixed generators.
pub fn type_four_d8(ps: &PhaseSpace, v1: Point, v2: Point) -> Result<CompleteSet> {
    build_d8(ps, v1, v2, &TYPE_FOUR, SetType::IV)
}

/// Dispatches to the constructor for `set_type` at the space's order.
pub fn build_complete_set(ps: &PhaseSpace, set_type: SetType, v1: Point, v2: Point) -> Result<CompleteSet> {
    match (set_type, ps.d()) {
        (SetType::I, _) => type_one(ps, v1, v2),
        (SetType::II, 4) => type_two_d4(ps, v1, v2),
        (SetType::II, 8) => type_two_d8(ps, v1, v2),
        (SetType::III, 8) => type_three_d8(ps, v1, v2),
        (SetType::IV, 8) => type_four_d8(ps, v1, v2),
        (SetType::Unclassified, _) => Err(Error::Usage("Unclassified is not a constructible type".into())),
        (t, d) => Err(Error::Usage(format!("type {t} is not available for d = {d}"))),
    }
}

/// The basis used when none is given: `(1,0), (0,1)` for Type I,
/// `(1,m^2), (1,m)` for Type II at d = 4 and `(1,m), (m^3,m^2)` for
/// Types II-IV at d = 8.
pub fn default_basis(ps: &PhaseSpace, set_type: SetType) -> (Point, Point) {
    let f = ps.field();
    match (set_type, ps.d()) {
        (SetType::II, 4) => (Point::new(Elem::ONE, f.mu_pow(2)), Point::new(Elem::ONE, f.mu_pow(1))),
        (SetType::II | SetType::III | SetType::IV, 8) => {
            (Point::new(Elem::ONE, f.mu_pow(1)), Point::new(f.mu_pow(3), f.mu_pow(2)))
        }
        _ => (Point::new(Elem::ONE, Elem::ZERO), Point::new(Elem::ZERO, Elem::ONE)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn push(&mut self, name: &str, failures: Vec<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed: failures.is_empty(),
            failures,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{:<28} {}", c.name, if c.passed { "pass" } else { "FAIL" })?;
            for detail in &c.failures {
                writeln!(f, "    {detail}")?;
            }
        }
        write!(f, "overall: {}", if self.passed() { "pass" } else { "FAIL" })
    }
}

fn square_name(i: usize) -> String {
    match u8::try_from(i).ok().filter(|&i| i < 26) {
        Some(i) => ((b'A' + i) as char).to_string(),
        None => format!("#{}", i + 1),
    }
}

/// Checks cardinality, supersquare + extraordinary generator, pairwise
/// orthogonality, trivial generator intersections and the striation
/// invariance for every square.
pub fn verify_complete_set(ps: &PhaseSpace, squares: &[Square]) -> VerifyReport {
    let d = ps.d();
    let mut report = VerifyReport::default();

    let card = if squares.len() == d + 1 {
        vec![]
    } else {
        vec![format!("{} squares, expected {}", squares.len(), d + 1)]
    };
    report.push("cardinality", card);

    let wrong_order: Vec<String> = squares
        .iter()
        .enumerate()
        .filter(|(_, s)| s.d() != d)
        .map(|(i, s)| format!("square {} has order {}", square_name(i), s.d()))
        .collect();
    if !wrong_order.is_empty() {
        report.push("order", wrong_order);
        return report;
    }

    let mut extraordinary = Vec::new();
    let mut gens: Vec<Option<Subgroup>> = Vec::new();
    for (i, s) in squares.iter().enumerate() {
        let origin: Vec<Point> = s.classes()[s.origin_class()].clone();
        let g = ps.subgroup(origin).ok();
        if !is_supersquare(ps, s) {
            extraordinary.push(format!("square {} is not a supersquare", square_name(i)));
        } else if !g.as_ref().is_some_and(|g| ps.is_extraordinary(g)) {
            extraordinary.push(format!(
                "square {}: generating subgroup is not extraordinary",
                square_name(i)
            ));
        }
        gens.push(g);
    }
    report.push("extraordinary_supersquare", extraordinary);

    let mut orth = Vec::new();
    let mut meets = Vec::new();
    for i in 0..squares.len() {
        for j in i + 1..squares.len() {
            if !are_orthogonal(ps, &squares[i], &squares[j]) {
                orth.push(format!(
                    "squares {} and {} are not orthogonal",
                    square_name(i),
                    square_name(j)
                ));
            }
            match (&gens[i], &gens[j]) {
                (Some(a), Some(b)) if a.meets_trivially(b) => {}
                (Some(_), Some(_)) => meets.push(format!(
                    "generators of {} and {} share a nonzero point",
                    square_name(i),
                    square_name(j)
                )),
                _ => meets.push(format!(
                    "squares {} and {}: origin class is not a subgroup",
                    square_name(i),
                    square_name(j)
                )),
            }
        }
    }
    report.push("orthogonality", orth);
    report.push("trivial_intersections", meets);

    let striation: Vec<String> = squares
        .iter()
        .enumerate()
        .filter(|(_, s)| !is_physical_striation(ps, s))
        .map(|(i, _)| format!("square {} is not a physical striation", square_name(i)))
        .collect();
    report.push("physical_striation", striation);
    report
}
