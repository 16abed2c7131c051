//! Squares over the phase space: partitions into `d` classes of `d` points.
//!
//! Rendering convention: the grid cell in column `c` (left to right) and row
//! `r` (bottom to top) shows the label of the point `(x1, x2)` with `x1` the
//! `c`-th and `x2` the `r`-th element in the order `0, 1, m, m^2, ...`.
//! So `x1` runs along the horizontal axis and `x2` along the vertical one.

mod complete;
mod search;

pub use complete::{
    build_complete_set, default_basis, type_four_d8, type_one, type_three_d8, type_two_d4, type_two_d8,
    verify_complete_set, Check, CompleteSet, SetType, VerifyReport,
};
pub use search::{search_complete_sets, template_matches, SearchOptions, SearchOutcome};

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::phasespace::{PhaseSpace, Point, Subgroup};

/// A partition of F_d x F_d into `d` classes of `d` points. Class `j`
/// (0-based) carries label `j + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Square {
    d: usize,
    classes: Vec<Vec<Point>>,
    // class index of every point, by packed key
    label_of: Vec<u8>,
}

impl Square {
    pub fn new(ps: &PhaseSpace, classes: Vec<Vec<Point>>) -> Result<Square> {
        let d = ps.d();
        if classes.len() != d {
            return Err(Error::Construction(format!(
                "expected {d} classes, got {}",
                classes.len()
            )));
        }
        let mut label_of = vec![u8::MAX; ps.size()];
        let mut classes = classes;
        for (j, class) in classes.iter_mut().enumerate() {
            if class.len() != d {
                return Err(Error::Construction(format!(
                    "class {} has {} points instead of {d}",
                    j + 1,
                    class.len()
                )));
            }
            class.sort();
            for &p in class.iter() {
                ps.check(p)?;
                let key = ps.key(p);
                if label_of[key] != u8::MAX {
                    return Err(Error::Construction(format!(
                        "point ({},{}) appears in more than one class",
                        p.x.bits(),
                        p.y.bits()
                    )));
                }
                label_of[key] = j as u8;
            }
        }
        Ok(Square { d, classes, label_of })
    }

    /// Reads a rendered grid (top row first) back into a square.
    pub fn from_grid(ps: &PhaseSpace, grid: &[Vec<usize>]) -> Result<Square> {
        let d = ps.d();
        if grid.len() != d || grid.iter().any(|row| row.len() != d) {
            return Err(Error::Construction(format!("grid must be {d} x {d}")));
        }
        let axis = ps.field().elements_by_log();
        let mut classes = vec![Vec::new(); d];
        for (t, row) in grid.iter().enumerate() {
            let x2 = axis[d - 1 - t];
            for (c, &label) in row.iter().enumerate() {
                if !(1..=d).contains(&label) {
                    return Err(Error::Construction(format!("label {label} outside 1..={d}")));
                }
                classes[label - 1].push(Point::new(axis[c], x2));
            }
        }
        Square::new(ps, classes)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn classes(&self) -> &[Vec<Point>] {
        &self.classes
    }

    /// 1-based label.
    pub fn label(&self, ps: &PhaseSpace, p: Point) -> usize {
        self.label_of[ps.key(p)] as usize + 1
    }

    /// Index of the class holding the origin.
    pub fn origin_class(&self) -> usize {
        self.label_of[0] as usize
    }

    /// Labels laid out per the rendering convention, top row first.
    pub fn grid(&self, ps: &PhaseSpace) -> Vec<Vec<usize>> {
        let axis = ps.field().elements_by_log();
        (0..self.d)
            .map(|t| {
                let x2 = axis[self.d - 1 - t];
                axis.iter().map(|&x1| self.label(ps, Point::new(x1, x2))).collect()
            })
            .collect()
    }

    /// The partition as a set of point sets, forgetting labels.
    pub fn partition(&self) -> BTreeSet<Vec<Point>> {
        self.classes.iter().cloned().collect()
    }

    /// Same partition up to relabelling, and the origin classes coincide.
    pub fn matches_up_to_labels(&self, other: &Square) -> bool {
        self.partition() == other.partition()
            && self.classes[self.origin_class()] == other.classes[other.origin_class()]
    }

    /// Plain-text grid; cells of the origin class get a `*` suffix.
    pub fn ascii(&self, ps: &PhaseSpace) -> String {
        let width = self.d.to_string().len() + 1;
        let marked = self.origin_class() + 1;
        let mut out = String::from("row=x2 bottom-up, col=x1 left-right\n");
        for row in self.grid(ps) {
            let cells: Vec<String> = row
                .iter()
                .map(|&l| {
                    let s = if l == marked { format!("{l}*") } else { l.to_string() };
                    format!("{s:>width$}")
                })
                .collect();
            let _ = writeln!(out, "{}", cells.join(" ").trim_end());
        }
        out
    }

    /// Swaps the class membership of two points taken from two distinct
    /// classes that avoid the origin.
    pub fn perturb<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Square> {
        let origin = self.origin_class();
        let others: Vec<usize> = (0..self.d).filter(|&j| j != origin).collect();
        if others.len() < 2 {
            return Err(Error::Unsupported("need two non-origin classes to perturb".into()));
        }
        let picked: Vec<usize> = others.choose_multiple(rng, 2).copied().collect();
        let (i, j) = (picked[0], picked[1]);
        let a = rng.gen_range(0..self.d);
        let b = rng.gen_range(0..self.d);
        let mut classes = self.classes.clone();
        let tmp = classes[i][a];
        classes[i][a] = classes[j][b];
        classes[j][b] = tmp;
        let mut label_of = self.label_of.clone();
        for (idx, class) in classes.iter_mut().enumerate() {
            class.sort();
            for &p in class.iter() {
                label_of[key_of(self.d, p)] = idx as u8;
            }
        }
        Ok(Square {
            d: self.d,
            classes,
            label_of,
        })
    }
}

fn key_of(d: usize, p: Point) -> usize {
    (p.x.bits() as usize) << d.trailing_zeros() | p.y.bits() as usize
}

/// A square built as the quotient of the phase space by a subgroup of order d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Supersquare {
    generator: Subgroup,
    coset_reps: Vec<Point>,
    square: Square,
}

impl Supersquare {
    pub fn generator(&self) -> &Subgroup {
        &self.generator
    }

    /// Representatives of classes 2..=d.
    pub fn coset_reps(&self) -> &[Point] {
        &self.coset_reps
    }

    /// Representative of the class with 1-based `label`; the origin for label 1.
    pub fn rep(&self, label: usize) -> Point {
        if label == 1 {
            Point::ORIGIN
        } else {
            self.coset_reps[label - 2]
        }
    }

    pub fn square(&self) -> &Square {
        &self.square
    }
}

/// Class 1 is the subgroup; the other cosets are labelled in increasing
/// order of their minimal point, which is also their representative.
pub fn supersquare_from_subgroup(ps: &PhaseSpace, generator: &Subgroup) -> Result<Supersquare> {
    let d = ps.d();
    if generator.len() != d {
        return Err(Error::Domain(format!(
            "generating subgroup has {} points instead of {d}",
            generator.len()
        )));
    }
    let generator = ps.subgroup(generator.points().iter().copied())?;
    let mut seen = vec![false; ps.size()];
    let mut classes = Vec::with_capacity(d);
    let mut reps = Vec::with_capacity(d - 1);
    for p in ps.points() {
        if seen[ps.key(p)] {
            continue;
        }
        let coset: Vec<Point> = generator.points().iter().map(|&g| p + g).collect();
        for &q in &coset {
            seen[ps.key(q)] = true;
        }
        // points are visited in order, so p is the minimum of its coset
        if !p.is_origin() {
            reps.push(p);
        }
        classes.push(coset);
    }
    let square = Square::new(ps, classes)?;
    Ok(Supersquare {
        generator,
        coset_reps: reps,
        square,
    })
}

/// The class through the origin, when it is a subgroup.
fn origin_subgroup(ps: &PhaseSpace, square: &Square) -> Option<Subgroup> {
    ps.subgroup(square.classes()[square.origin_class()].iter().copied())
        .ok()
}

/// Some class is a subgroup and every other class is one of its cosets.
pub fn is_supersquare(ps: &PhaseSpace, square: &Square) -> bool {
    // any subgroup class contains the origin, so only one candidate
    let Some(g) = origin_subgroup(ps, square) else {
        return false;
    };
    square.classes().iter().all(|class| {
        let base = class[0];
        class.iter().all(|&p| g.contains(p + base))
    })
}

/// The class through the origin is an extraordinary subgroup and every class
/// is invariant under translation by its elements.
pub fn is_physical_striation(ps: &PhaseSpace, square: &Square) -> bool {
    let Some(ray) = origin_subgroup(ps, square) else {
        return false;
    };
    if !ps.is_extraordinary(&ray) {
        return false;
    }
    square.classes().iter().enumerate().all(|(j, class)| {
        ray.nonzero()
            .all(|a| class.iter().all(|&p| square.label(ps, p + a) == j + 1))
    })
}

/// Some class is an extraordinary subgroup.
pub fn is_extraordinary_square(ps: &PhaseSpace, square: &Square) -> bool {
    origin_subgroup(ps, square).is_some_and(|g| ps.is_extraordinary(&g))
}

/// All `d^2` label pairs are distinct.
pub fn are_orthogonal(ps: &PhaseSpace, s: &Square, t: &Square) -> bool {
    if s.d() != t.d() {
        return false;
    }
    let d = s.d();
    let mut seen = vec![false; d * d];
    ps.points().all(|p| {
        let idx = (s.label(ps, p) - 1) * d + t.label(ps, p) - 1;
        !std::mem::replace(&mut seen[idx], true)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SquareKind {
    Latin,
    RowLatin,
    ColumnLatin,
    Plain,
}

impl SquareKind {
    pub fn name(self) -> &'static str {
        match self {
            SquareKind::Latin => "Latin",
            SquareKind::RowLatin => "row-Latin",
            SquareKind::ColumnLatin => "column-Latin",
            SquareKind::Plain => "square",
        }
    }
}

/// Row and column permutation tests on the rendered grid.
pub fn classify(ps: &PhaseSpace, square: &Square) -> SquareKind {
    let grid = square.grid(ps);
    let d = square.d();
    let is_perm = |cells: Vec<usize>| {
        let mut seen = vec![false; d];
        cells.into_iter().all(|l| !std::mem::replace(&mut seen[l - 1], true))
    };
    let rows = grid.iter().all(|row| is_perm(row.clone()));
    let cols = (0..d).all(|c| is_perm(grid.iter().map(|row| row[c]).collect()));
    match (rows, cols) {
        (true, true) => SquareKind::Latin,
        (true, false) => SquareKind::RowLatin,
        (false, true) => SquareKind::ColumnLatin,
        (false, false) => SquareKind::Plain,
    }
}
