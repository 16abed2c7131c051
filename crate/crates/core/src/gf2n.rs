//! Arithmetic in GF(2^n) for 2 <= n <= 5.
//!
//! Elements are stored in the polynomial basis `{1, m, m^2, ..., m^(n-1)}`
//! where `m` is the class of `x` modulo the defining polynomial. Bit `i` of
//! the mask is the coefficient of `m^i`. Printing as powers of `m` goes
//! through the discrete log table.

use std::fmt;

use crate::error::{Error, Result};

/// Smallest supported extension degree.
pub const MIN_DEGREE: u32 = 2;
/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 5;

/// An element of GF(2^n), as an n-bit coefficient mask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(u8);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// Raw mask. No range check against any field.
    pub const fn from_bits(bits: u8) -> Elem {
        Elem(bits)
    }

    pub const fn bits(self) -> u8 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A concrete field GF(2^n) with fixed defining polynomial and `m = x` as
/// primitive element.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Field {
    n: u32,
    poly: u32,
    exp: [u8; 32],
    log: [u8; 32],
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {:#b}", self.n, self.poly)
    }
}

impl Field {
    /// The field of degree `n` with the default polynomial: `x^2+x+1`,
    /// `x^3+x+1`, and the smallest primitive polynomial for n = 4, 5.
    pub fn new(n: u32) -> Result<Field> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&n) {
            return Err(Error::Usage(format!(
                "extension degree {n} outside supported range {MIN_DEGREE}..={MAX_DEGREE}"
            )));
        }
        Field::with_poly(n, default_poly(n))
    }

    /// The field with `d` elements. Only `d = 2^n`, `2 <= n <= 5`.
    pub fn of_order(d: usize) -> Result<Field> {
        if d < 2 || !d.is_power_of_two() {
            return Err(Error::Usage(format!(
                "order {d} is not a power of 2 (only characteristic 2 is supported)"
            )));
        }
        Field::new(d.trailing_zeros())
    }

    /// Build a field from an explicit polynomial bitmask (LSB = constant term).
    /// The polynomial has to be irreducible and `x` has to be primitive.
    pub fn with_poly(n: u32, poly: u32) -> Result<Field> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&n) {
            return Err(Error::Usage(format!("extension degree {n} not supported")));
        }
        if poly >> n != 1 {
            return Err(Error::Usage(format!("polynomial {poly:#b} does not have degree {n}")));
        }
        if !is_irreducible(poly) {
            return Err(Error::Domain(format!("polynomial {poly:#b} is reducible over F_2")));
        }
        let order = (1u32 << n) - 1;
        let mut exp = [0u8; 32];
        let mut log = [0u8; 32];
        let mut acc = 1u32;
        for e in 0..order {
            if e > 0 && acc == 1 {
                return Err(Error::Domain(format!("x has order {e} modulo {poly:#b}, not {order}")));
            }
            exp[e as usize] = acc as u8;
            log[acc as usize] = e as u8;
            acc = reduce(acc << 1, poly, n);
        }
        if acc != 1 {
            return Err(Error::Domain(format!("x is not primitive modulo {poly:#b}")));
        }
        Ok(Field { n, poly, exp, log })
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn poly(&self) -> u32 {
        self.poly
    }

    /// Number of elements, `d = 2^n`.
    pub fn order(&self) -> usize {
        1 << self.n
    }

    /// Validates a mask and wraps it.
    pub fn elem(&self, bits: u32) -> Result<Elem> {
        if bits >= self.order() as u32 {
            return Err(Error::Usage(format!(
                "mask {bits} is not an element of GF({})",
                self.order()
            )));
        }
        Ok(Elem(bits as u8))
    }

    pub fn contains(&self, a: Elem) -> bool {
        (a.0 as usize) < self.order()
    }

    /// All elements in mask order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order() as u8).map(Elem)
    }

    /// All elements in the order `0, 1, m, m^2, ...`, the axis order of the
    /// rendered squares.
    pub fn elements_by_log(&self) -> Vec<Elem> {
        std::iter::once(Elem::ZERO)
            .chain((0..self.order() - 1).map(|e| Elem(self.exp[e])))
            .collect()
    }

    /// The primitive element `m`.
    pub fn generator(&self) -> Elem {
        Elem(2)
    }

    /// `m^e`, exponent taken modulo `2^n - 1`.
    pub fn mu_pow(&self, e: i64) -> Elem {
        let q = (self.order() - 1) as i64;
        Elem(self.exp[e.rem_euclid(q) as usize])
    }

    /// Usage error if either operand is out of range.
    pub fn check(&self, a: Elem) -> Result<Elem> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::Usage(format!(
                "element mask {} does not belong to GF({})",
                a.0,
                self.order()
            )))
        }
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        debug_assert!(self.contains(a) && self.contains(b));
        Elem(a.0 ^ b.0)
    }

    /// Checked addition; rejects masks from a larger field.
    pub fn try_add(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.add(self.check(a)?, self.check(b)?))
    }

    /// Carry-less product reduced modulo the defining polynomial.
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        debug_assert!(self.contains(a) && self.contains(b));
        let (a, b) = (a.0 as u32, b.0 as u32);
        let mut prod = 0u32;
        for i in 0..self.n {
            if b >> i & 1 == 1 {
                prod ^= a << i;
            }
        }
        Elem(reduce(prod, self.poly, self.n) as u8)
    }

    pub fn try_mul(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(self.check(a)?, self.check(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        let mut acc = Elem::ONE;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        let e = self.discrete_log(a)? as i64;
        Ok(self.mu_pow(-e))
    }

    /// `a + a^2 + a^4 + ... + a^(2^(n-1))`; always 0 or 1.
    pub fn trace(&self, a: Elem) -> Elem {
        let mut acc = Elem::ZERO;
        let mut term = a;
        for _ in 0..self.n {
            acc = self.add(acc, term);
            term = self.mul(term, term);
        }
        debug_assert!(acc.0 <= 1, "trace left the prime field");
        acc
    }

    /// The exponent `e` in `0..2^n - 1` with `m^e = a`.
    pub fn discrete_log(&self, a: Elem) -> Result<u32> {
        self.check(a)?;
        if a.is_zero() {
            return Err(Error::Domain("discrete log of zero".into()));
        }
        Ok(self.log[a.0 as usize] as u32)
    }

    /// `"0"`, `"1"`, `"m"`, `"m2"`, ...
    pub fn display(&self, a: Elem) -> String {
        match a.0 {
            0 => "0".to_string(),
            _ => match self.log[a.0 as usize] {
                0 => "1".to_string(),
                1 => "m".to_string(),
                e => format!("m{e}"),
            },
        }
    }

    /// Parses a display token (`m`, `m3`, `0`, `1`) or a decimal mask.
    pub fn parse(&self, token: &str) -> Result<Elem> {
        let t = token.trim();
        let t = t.strip_prefix("mu").or_else(|| t.strip_prefix('m'));
        match t {
            Some("") => Ok(self.generator()),
            Some(rest) => {
                let rest = rest.strip_prefix('^').unwrap_or(rest);
                let e: i64 = rest
                    .parse()
                    .map_err(|_| Error::Usage(format!("bad field element token {token:?}")))?;
                Ok(self.mu_pow(e))
            }
            None => {
                let bits: u32 = token
                    .trim()
                    .parse()
                    .map_err(|_| Error::Usage(format!("bad field element token {token:?}")))?;
                self.elem(bits)
            }
        }
    }

    /// The basis used by the translation operators. n = 2 and n = 3 give
    /// `{m, m^2}` and `{m^3, m^5, m^6}`; larger n take the first selfdual
    /// basis found in lexicographic order of discrete logs.
    pub fn selfdual_basis(&self) -> FieldBasis {
        match self.n {
            2 => FieldBasis::new(self, vec![self.mu_pow(1), self.mu_pow(2)]),
            3 => FieldBasis::new(self, vec![self.mu_pow(3), self.mu_pow(5), self.mu_pow(6)]),
            _ => search_selfdual(self).ok_or_else(|| Error::Consistency("no selfdual basis found".into())),
        }
        .expect("selfdual basis exists in characteristic 2")
    }
}

/// Default defining polynomial for each supported degree.
fn default_poly(n: u32) -> u32 {
    match n {
        2 => 0b111,
        3 => 0b1011,
        _ => (1u32 << n..1u32 << (n + 1))
            .filter(|&p| p & 1 == 1)
            .find(|&p| is_irreducible(p) && is_primitive(p, n))
            .expect("a primitive polynomial exists for every degree"),
    }
}

fn degree_of(p: u32) -> u32 {
    31 - p.leading_zeros()
}

fn reduce(mut value: u32, poly: u32, n: u32) -> u32 {
    while value >> n != 0 {
        let shift = degree_of(value) - n;
        value ^= poly << shift;
    }
    value
}

fn poly_rem(mut a: u32, b: u32) -> u32 {
    let db = degree_of(b);
    while a != 0 && degree_of(a) >= db {
        a ^= b << (degree_of(a) - db);
    }
    a
}

/// Trial division by every polynomial of degree 1..=deg/2.
pub fn is_irreducible(poly: u32) -> bool {
    let deg = degree_of(poly);
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for q in (1u32 << d)..(1u32 << (d + 1)) {
            if poly_rem(poly, q) == 0 {
                return false;
            }
        }
    }
    true
}

fn is_primitive(poly: u32, n: u32) -> bool {
    let order = (1u32 << n) - 1;
    let mut acc = 1u32;
    for e in 1..=order {
        acc = reduce(acc << 1, poly, n);
        if acc == 1 {
            return e == order;
        }
    }
    false
}

fn search_selfdual(field: &Field) -> Option<FieldBasis> {
    let n = field.n as usize;
    let nonzero: Vec<Elem> = (0..field.order() - 1).map(|e| field.mu_pow(e as i64)).collect();
    // tr(e e) = tr(e)^2 = tr(e), so only trace-one elements qualify
    let candidates: Vec<Elem> = nonzero.into_iter().filter(|&e| field.trace(e) == Elem::ONE).collect();
    let mut chosen = Vec::with_capacity(n);
    fn rec(field: &Field, cands: &[Elem], start: usize, n: usize, chosen: &mut Vec<Elem>) -> bool {
        if chosen.len() == n {
            return true;
        }
        for i in start..cands.len() {
            let c = cands[i];
            if chosen.iter().all(|&e| field.trace(field.mul(e, c)).is_zero()) {
                chosen.push(c);
                if rec(field, cands, i + 1, n, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    if rec(field, &candidates, 0, n, &mut chosen) {
        FieldBasis::new(field, chosen).ok()
    } else {
        None
    }
}

/// An F_2-basis of GF(2^n): `n` linearly independent elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldBasis {
    elements: Vec<Elem>,
}

impl FieldBasis {
    pub fn new(field: &Field, elements: Vec<Elem>) -> Result<FieldBasis> {
        if elements.len() != field.n as usize {
            return Err(Error::Domain(format!(
                "a basis of GF({}) needs {} elements, got {}",
                field.order(),
                field.n,
                elements.len()
            )));
        }
        for &e in &elements {
            field.check(e)?;
        }
        if f2_rank(elements.iter().map(|e| e.0 as u32)) != elements.len() {
            return Err(Error::Domain("basis elements are linearly dependent over F_2".into()));
        }
        Ok(FieldBasis { elements })
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Rank over F_2 of a family of bit vectors.
pub(crate) fn f2_rank(vectors: impl IntoIterator<Item = u32>) -> usize {
    let mut pivots: Vec<u32> = Vec::new();
    for mut v in vectors {
        for &p in &pivots {
            v = v.min(v ^ p);
        }
        if v != 0 {
            pivots.push(v);
            pivots.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    pivots.len()
}

/// The basis `F` with `tr(e_i f_j) = delta_ij`.
///
/// Writes `f_j` in the polynomial basis and solves `M c_j = e_j` where
/// `M[i][k] = tr(e_i m^k)`, by Gauss-Jordan elimination over F_2.
pub fn dual_basis(field: &Field, basis: &FieldBasis) -> Result<FieldBasis> {
    let n = field.n as usize;
    // augmented rows: bits 0..n are M[i][k], bits n..2n the identity
    let mut rows: Vec<u64> = basis
        .elements
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            let mut row = 1u64 << (n + i);
            for k in 0..n {
                if field.trace(field.mul(e, Elem(1 << k))) == Elem::ONE {
                    row |= 1 << k;
                }
            }
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| rows[r] >> col & 1 == 1)
            .ok_or_else(|| Error::Domain("trace form is singular on this basis".into()))?;
        rows.swap(col, pivot);
        for r in 0..n {
            if r != col && rows[r] >> col & 1 == 1 {
                rows[r] ^= rows[col];
            }
        }
    }
    // rows now read [I | M^-1]; f_j has coordinates (M^-1)[k][j]
    let inverse: Vec<u64> = rows.iter().map(|r| r >> n).collect();
    let dual = (0..n)
        .map(|j| {
            let bits = (0..n).fold(0u8, |acc, k| acc | (((inverse[k] >> j) & 1) as u8) << k);
            Elem(bits)
        })
        .collect();
    FieldBasis::new(field, dual)
}

/// `tr(e_i e_j) = delta_ij` for all pairs.
pub fn is_selfdual(field: &Field, basis: &FieldBasis) -> bool {
    let es = basis.elements();
    es.iter().enumerate().all(|(i, &a)| {
        es.iter().enumerate().all(|(j, &b)| {
            let t = field.trace(field.mul(a, b));
            t == if i == j { Elem::ONE } else { Elem::ZERO }
        })
    })
}

/// `dual` is the dual basis of `basis`.
pub fn is_dual_pair(field: &Field, basis: &FieldBasis, dual: &FieldBasis) -> bool {
    basis.len() == dual.len()
        && basis.elements().iter().enumerate().all(|(i, &a)| {
            dual.elements().iter().enumerate().all(|(j, &b)| {
                let t = field.trace(field.mul(a, b));
                t == if i == j { Elem::ONE } else { Elem::ZERO }
            })
        })
}

/// Coordinates of `x` on the basis dual to `dual`: `x = sum_i tr(x f_i) e_i`
/// whenever `(e, f)` is a dual pair.
pub fn coordinates(field: &Field, x: Elem, dual: &FieldBasis) -> Vec<u8> {
    dual.elements()
        .iter()
        .map(|&f| field.trace(field.mul(x, f)).bits())
        .collect()
}
