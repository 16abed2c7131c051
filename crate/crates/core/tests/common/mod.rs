#![allow(dead_code)]

use std::path::Path;

use mubkit::squares::{type_two_d4, type_two_d8, CompleteSet, Square};
use mubkit::{Field, PhaseSpace, Point};

/// Labelled grids, each `# name` header followed by rows listed top first.
pub fn load_grids(name: &str) -> Vec<(String, Vec<Vec<usize>>)> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let mut out: Vec<(String, Vec<Vec<usize>>)> = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        if let Some(label) = line.strip_prefix('#') {
            out.push((label.trim().to_string(), Vec::new()));
        } else {
            let row = line.split_whitespace().map(|t| t.parse().unwrap()).collect();
            out.last_mut().expect("grid header").1.push(row);
        }
    }
    out
}

pub fn fixture_squares(ps: &PhaseSpace, name: &str) -> Vec<(String, Square)> {
    load_grids(name)
        .into_iter()
        .map(|(label, grid)| {
            let sq = Square::from_grid(ps, &grid).unwrap();
            (label, sq)
        })
        .collect()
}

pub fn pt(field: &Field, x: &str, y: &str) -> Point {
    Point::new(field.parse(x).unwrap(), field.parse(y).unwrap())
}

/// The two-qubit Type II set with v1 = (1, m^2), v2 = (1, m).
pub fn type_two_d4_example(ps: &PhaseSpace) -> CompleteSet {
    let f = ps.field();
    type_two_d4(ps, pt(f, "1", "m2"), pt(f, "1", "m")).unwrap()
}

/// The three-qubit Type II set with v1 = (1, m), v2 = (m^3, m^2).
pub fn type_two_d8_example(ps: &PhaseSpace) -> CompleteSet {
    let f = ps.field();
    type_two_d8(ps, pt(f, "1", "m"), pt(f, "m3", "m2")).unwrap()
}

/// Phase-free operator words per square of the two-qubit Type II set.
pub const OPERATORS_D4: [(&str, [&str; 3]); 5] = [
    ("A", ["XY", "YZ", "ZX"]),
    ("B", ["YX", "IX", "YI"]),
    ("C", ["XZ", "IZ", "XI"]),
    ("D", ["ZY", "IY", "ZI"]),
    ("E", ["ZZ", "XX", "YY"]),
];

/// Basis vectors (up to normalization) per square of the same set.
pub const VECTORS_D4: [[[(i64, i64); 4]; 4]; 5] = [
    [
        [(0, -1), (0, 1), (1, 0), (1, 0)],
        [(0, 1), (0, 1), (-1, 0), (1, 0)],
        [(0, 1), (0, -1), (1, 0), (1, 0)],
        [(0, -1), (0, -1), (1, 0), (-1, 0)],
    ],
    [
        [(0, 1), (0, 1), (-1, 0), (-1, 0)],
        [(0, 1), (0, -1), (1, 0), (-1, 0)],
        [(0, 1), (0, -1), (-1, 0), (1, 0)],
        [(0, 1), (0, 1), (1, 0), (1, 0)],
    ],
    [
        [(1, 0), (0, 0), (1, 0), (0, 0)],
        [(0, 0), (0, 1), (0, 0), (0, 1)],
        [(0, -1), (0, 0), (0, 1), (0, 0)],
        [(0, 0), (1, 0), (0, 0), (-1, 0)],
    ],
    [
        [(0, 1), (-1, 0), (0, 0), (0, 0)],
        [(0, 0), (0, 0), (0, 1), (-1, 0)],
        [(0, 0), (0, 0), (-1, 0), (0, 1)],
        [(-1, 0), (0, 1), (0, 0), (0, 0)],
    ],
    [
        [(1, 0), (0, 0), (0, 0), (1, 0)],
        [(0, -1), (0, 0), (0, 0), (0, 1)],
        [(0, 0), (0, 1), (0, 1), (0, 0)],
        [(0, 0), (1, 0), (-1, 0), (0, 0)],
    ],
];

/// Phase-free operator words per square of the three-qubit Type II set.
pub const OPERATORS_D8: [(&str, [&str; 7]); 9] = [
    ("A", ["XYY", "ZYX", "YIZ", "ZIX", "YYZ", "IYI", "XIY"]),
    ("B", ["XZY", "ZYI", "YXY", "YXI", "ZYY", "XZI", "IIY"]),
    ("C", ["ZIZ", "IZI", "XZX", "ZZZ", "YZY", "XIX", "YIY"]),
    ("D", ["YYY", "IYY", "YII", "IXZ", "YZX", "IZX", "YXZ"]),
    ("E", ["ZYZ", "IZY", "ZXX", "ZZY", "IXX", "ZII", "IYZ"]),
    ("F", ["XYZ", "YZI", "ZXZ", "XYI", "IIZ", "ZXI", "YZZ"]),
    ("G", ["YXX", "ZXY", "XIZ", "YIX", "IXI", "XXZ", "ZIY"]),
    ("H", ["XYX", "IXY", "XZZ", "XXY", "IZZ", "XII", "IYX"]),
    ("I", ["IIX", "XXX", "XXI", "YYX", "YYI", "ZZI", "ZZX"]),
];
