//! The discrete phase space F_d x F_d.
//!
//! A point is a pair of field elements; subgroups are F_2-subspaces of the
//! phase space seen as F_2^(2n). Points order by `(x mask, y mask)`, which is
//! also the order of their packed key `x << n | y`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf2n::{Elem, Field};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Elem,
    pub y: Elem,
}

impl Point {
    pub const ORIGIN: Point = Point {
        x: Elem::ZERO,
        y: Elem::ZERO,
    };

    pub const fn new(x: Elem, y: Elem) -> Point {
        Point { x, y }
    }

    pub fn is_origin(self) -> bool {
        self == Point::ORIGIN
    }
}

impl std::ops::Add for Point {
    type Output = Point;

    fn add(self, other: Point) -> Point {
        Point {
            x: Elem::from_bits(self.x.bits() ^ other.x.bits()),
            y: Elem::from_bits(self.y.bits() ^ other.y.bits()),
        }
    }
}

/// An additively closed subset of the phase space containing the origin,
/// kept as a sorted point list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    points: Vec<Point>,
}

impl Subgroup {
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.points.binary_search(&p).is_ok()
    }

    /// Nonzero elements, in canonical order.
    pub fn nonzero(&self) -> impl Iterator<Item = Point> + '_ {
        self.points.iter().copied().filter(|p| !p.is_origin())
    }

    /// An F_2 basis chosen greedily in canonical point order.
    pub fn generators(&self) -> Vec<Point> {
        let mut gens: Vec<Point> = Vec::new();
        let mut span: BTreeSet<Point> = BTreeSet::from([Point::ORIGIN]);
        for p in self.nonzero() {
            if !span.contains(&p) {
                let shifted: Vec<Point> = span.iter().map(|&s| s + p).collect();
                span.extend(shifted);
                gens.push(p);
            }
        }
        gens
    }

    /// Only the origin is shared.
    pub fn meets_trivially(&self, other: &Subgroup) -> bool {
        self.nonzero().all(|p| !other.contains(p))
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({},{})", p.x.bits(), p.y.bits())?;
        }
        write!(f, "}}")
    }
}

/// The elements of trace zero, in mask order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceZeroSet {
    elements: Vec<Elem>,
}

impl TraceZeroSet {
    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.elements.contains(&a)
    }
}

/// F_d x F_d together with its field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhaseSpace {
    field: Field,
    // row i: the F_2 vectors b with tr(det(e_i, b)) = 1, e_i the i-th key bit
    form_rows: [u16; 10],
}

impl PhaseSpace {
    pub fn new(field: Field) -> PhaseSpace {
        let n = field.degree();
        let mut ps = PhaseSpace {
            field,
            form_rows: [0; 10],
        };
        for i in 0..2 * n {
            let a = ps.point_of_key(1 << i);
            let mut row = 0u16;
            for j in 0..2 * n {
                let b = ps.point_of_key(1 << j);
                if ps.field.trace(ps.det(a, b)) == Elem::ONE {
                    row |= 1 << j;
                }
            }
            ps.form_rows[i as usize] = row;
        }
        ps
    }

    pub fn of_order(d: usize) -> Result<PhaseSpace> {
        Ok(PhaseSpace::new(Field::of_order(d)?))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// `d`, the field order.
    pub fn d(&self) -> usize {
        self.field.order()
    }

    /// Number of points, `d^2`.
    pub fn size(&self) -> usize {
        self.d() * self.d()
    }

    /// Packed index `x << n | y`.
    pub fn key(&self, p: Point) -> usize {
        (p.x.bits() as usize) << self.field.degree() | p.y.bits() as usize
    }

    pub fn point_of_key(&self, key: usize) -> Point {
        let n = self.field.degree();
        Point {
            x: Elem::from_bits((key >> n) as u8),
            y: Elem::from_bits((key & ((1 << n) - 1)) as u8),
        }
    }

    pub fn point(&self, x: u32, y: u32) -> Result<Point> {
        Ok(Point::new(self.field.elem(x)?, self.field.elem(y)?))
    }

    pub fn check(&self, p: Point) -> Result<Point> {
        self.field.check(p.x)?;
        self.field.check(p.y)?;
        Ok(p)
    }

    /// All points in canonical order.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.size()).map(move |k| self.point_of_key(k))
    }

    pub fn scale(&self, c: Elem, p: Point) -> Point {
        Point::new(self.field.mul(c, p.x), self.field.mul(c, p.y))
    }

    /// `x1 y2 - x2 y1`, which is `x1 y2 + x2 y1` in characteristic 2.
    pub fn det(&self, a: Point, b: Point) -> Elem {
        let f = &self.field;
        f.add(f.mul(a.x, b.y), f.mul(b.x, a.y))
    }

    /// `tr(det(a, b))` through the precomputed F_2 form.
    pub(crate) fn form(&self, a: usize, b: usize) -> bool {
        let mut acc = 0u16;
        let mut bits = a;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            acc ^= self.form_rows[i];
            bits &= bits - 1;
        }
        (acc as usize & b).count_ones() & 1 == 1
    }

    pub fn trace_zero_subgroup(&self) -> TraceZeroSet {
        TraceZeroSet {
            elements: self
                .field
                .elements()
                .filter(|&a| self.field.trace(a).is_zero())
                .collect(),
        }
    }

    /// `{ s c : s in set }`, sorted by mask.
    pub fn scale_set(&self, set: &[Elem], c: Elem) -> Result<Vec<Elem>> {
        if c.is_zero() {
            return Err(Error::Domain("cannot scale a set by zero".into()));
        }
        let mut out: Vec<Elem> = set.iter().map(|&s| self.field.mul(s, c)).collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// `K k^-1`, the scalar set used by the non-line generators.
    pub fn scaled_trace_zero(&self, k: Elem) -> Result<Vec<Elem>> {
        let inv = self.field.inv(k)?;
        self.scale_set(self.trace_zero_subgroup().elements(), inv)
    }

    /// Validates closure and wraps a point set as a subgroup.
    pub fn subgroup(&self, points: impl IntoIterator<Item = Point>) -> Result<Subgroup> {
        let set: BTreeSet<Point> = points.into_iter().collect();
        for &p in &set {
            self.check(p)?;
        }
        if !set.contains(&Point::ORIGIN) {
            return Err(Error::Construction("subgroup must contain the origin".into()));
        }
        if !set.len().is_power_of_two() {
            return Err(Error::Construction(format!("{} points is not a power of 2", set.len())));
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&(a + b)) {
                    return Err(Error::Construction(format!(
                        "not closed: ({},{}) + ({},{}) missing",
                        a.x.bits(),
                        a.y.bits(),
                        b.x.bits(),
                        b.y.bits()
                    )));
                }
            }
        }
        Ok(Subgroup {
            points: set.into_iter().collect(),
        })
    }

    /// The F_2 span of `gens`.
    pub fn span(&self, gens: &[Point]) -> Subgroup {
        let mut set: BTreeSet<Point> = BTreeSet::from([Point::ORIGIN]);
        for &g in gens {
            let shifted: Vec<Point> = set.iter().map(|&s| s + g).collect();
            set.extend(shifted);
        }
        Subgroup {
            points: set.into_iter().collect(),
        }
    }

    /// `F_d u`.
    pub fn line(&self, u: Point) -> Result<Subgroup> {
        self.check(u)?;
        if u.is_origin() {
            return Err(Error::Domain("a line needs a nonzero direction".into()));
        }
        let mut points: Vec<Point> = self.field.elements().map(|c| self.scale(c, u)).collect();
        points.sort();
        Ok(Subgroup { points })
    }

    /// `{ s a + t b : s in first, t in second }`, which must be a subgroup
    /// of order `|first| |second|`.
    pub fn affine_span(&self, a: Point, b: Point, first: &[Elem], second: &[Elem]) -> Result<Subgroup> {
        let points: Vec<Point> = first
            .iter()
            .flat_map(|&s| second.iter().map(move |&t| (s, t)))
            .map(|(s, t)| self.scale(s, a) + self.scale(t, b))
            .collect();
        let g = self.subgroup(points)?;
        if g.len() != first.len() * second.len() {
            return Err(Error::Construction(format!(
                "span is not direct: {} points instead of {}",
                g.len(),
                first.len() * second.len()
            )));
        }
        Ok(g)
    }

    /// `Z_2 a + (K k^-1) b` with `k = det(a, b)`, required to be a nonzero
    /// element of trace zero.
    pub fn scaled_span(&self, a: Point, b: Point) -> Result<Subgroup> {
        let k = self.det(a, b);
        if k.is_zero() || !self.field.trace(k).is_zero() {
            return Err(Error::Domain(format!(
                "det = {} is not a nonzero trace-zero element",
                self.field.display(k)
            )));
        }
        let kt = self.scaled_trace_zero(k)?;
        self.affine_span(a, b, &[Elem::ZERO, Elem::ONE], &kt)
    }

    /// Every pair of elements has a trace-zero determinant.
    pub fn is_extraordinary(&self, g: &Subgroup) -> bool {
        g.points()
            .iter()
            .all(|&a| g.points().iter().all(|&b| self.field.trace(self.det(a, b)).is_zero()))
    }

    pub fn is_line(&self, g: &Subgroup) -> bool {
        match g.nonzero().next() {
            Some(u) => g.len() == self.d() && self.line(u).map(|l| &l == g).unwrap_or(false),
            None => false,
        }
    }

    /// All subgroups of order `d`, sorted.
    pub fn enumerate_subgroups(&self) -> Vec<Subgroup> {
        self.enumerate_rref(false)
    }

    /// Subgroups of order `d` passing the extraordinariness test.
    ///
    /// For `d <= 8` this filters the full enumeration with the pairwise
    /// definition. Larger orders prune row by row on the F_2 form, since
    /// the full enumeration is out of reach at d = 32.
    pub fn enumerate_extraordinary_subgroups(&self) -> Vec<Subgroup> {
        if self.field.degree() <= 3 {
            self.enumerate_subgroups()
                .into_iter()
                .filter(|g| self.is_extraordinary(g))
                .collect()
        } else {
            self.enumerate_rref(true)
        }
    }

    /// The union of the two explicit forms: lines `F_d u`, and
    /// `Z_2 v1 + (K k^-1) v2` over all pairs with `det(v1, v2) = k` a nonzero
    /// trace-zero element.
    pub fn characterized_subgroups(&self) -> Vec<Subgroup> {
        let mut out: BTreeSet<Subgroup> = BTreeSet::new();
        for u in self.points().skip(1) {
            out.insert(self.line(u).expect("nonzero direction"));
        }
        for a in self.points() {
            for b in self.points() {
                if let Ok(g) = self.scaled_span(a, b) {
                    out.insert(g);
                }
            }
        }
        out.into_iter().collect()
    }

    // Reduced row echelon forms of n x 2n matrices over F_2; pivots are the
    // leading (highest) bits. With `isotropic`, rows must be pairwise
    // orthogonal under the trace form, checked as soon as a row is fixed.
    fn enumerate_rref(&self, isotropic: bool) -> Vec<Subgroup> {
        let n = self.field.degree() as usize;
        let width = 2 * n;
        let mut out = Vec::new();
        let mut pivots = Vec::with_capacity(n);
        self.pivot_sets(width, n, 0, &mut pivots, &mut |piv: &[usize]| {
            // piv sorted descending; row i has leading bit piv[i]
            let mut rows = vec![0usize; n];
            self.fill_rows(piv, 0, &mut rows, isotropic, &mut out);
        });
        out.sort();
        out
    }

    fn pivot_sets(&self, width: usize, n: usize, start: usize, acc: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if acc.len() == n {
            let mut piv = acc.clone();
            piv.sort_unstable_by(|a, b| b.cmp(a));
            visit(&piv);
            return;
        }
        for c in start..width {
            acc.push(c);
            self.pivot_sets(width, n, c + 1, acc, visit);
            acc.pop();
        }
    }

    fn fill_rows(&self, piv: &[usize], i: usize, rows: &mut [usize], isotropic: bool, out: &mut Vec<Subgroup>) {
        if i == piv.len() {
            let gens: Vec<Point> = rows.iter().map(|&r| self.point_of_key(r)).collect();
            out.push(self.span(&gens));
            return;
        }
        let lead = piv[i];
        let free: Vec<usize> = (0..lead).filter(|c| !piv.contains(c)).collect();
        for pattern in 0usize..1 << free.len() {
            let mut row = 1usize << lead;
            for (bit, &c) in free.iter().enumerate() {
                if pattern >> bit & 1 == 1 {
                    row |= 1 << c;
                }
            }
            if isotropic && rows[..i].iter().any(|&r| self.form(r, row)) {
                continue;
            }
            rows[i] = row;
            self.fill_rows(piv, i + 1, rows, isotropic, out);
        }
    }
}

/// Number of n-dimensional subspaces of F_2^(2n) (Gaussian binomial).
pub fn subgroup_count(n: u32) -> u64 {
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..n as u64 {
        num *= (1u64 << (2 * n as u64 - i)) - 1;
        den *= (1u64 << (n as u64 - i)) - 1;
    }
    num / den
}
