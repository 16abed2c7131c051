//! Gaussian integers and dense matrices over them.
//!
//! Entries stay small (Pauli products are units, projectors are sums of at
//! most d units) so `i64` components are ample; all arithmetic is exact and
//! overflow panics instead of wrapping.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

impl GaussInt {
    pub const ZERO: GaussInt = GaussInt { re: 0, im: 0 };
    pub const ONE: GaussInt = GaussInt { re: 1, im: 0 };
    pub const I: GaussInt = GaussInt { re: 0, im: 1 };
    pub const UNITS: [GaussInt; 4] = [
        GaussInt { re: 1, im: 0 },
        GaussInt { re: 0, im: 1 },
        GaussInt { re: -1, im: 0 },
        GaussInt { re: 0, im: -1 },
    ];

    pub const fn new(re: i64, im: i64) -> GaussInt {
        GaussInt { re, im }
    }

    pub fn conj(self) -> GaussInt {
        GaussInt::new(self.re, -self.im)
    }

    /// `|z|^2`.
    pub fn norm(self) -> i64 {
        self.re
            .checked_mul(self.re)
            .and_then(|a| self.im.checked_mul(self.im).and_then(|b| a.checked_add(b)))
            .expect("Gaussian integer norm overflow")
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn is_unit(self) -> bool {
        self.norm() == 1
    }

    pub fn scale(self, k: i64) -> GaussInt {
        GaussInt::new(self.re * k, self.im * k)
    }

    /// Both components even.
    pub fn is_even(self) -> bool {
        self.re % 2 == 0 && self.im % 2 == 0
    }

    /// `self / other` when the division is exact.
    pub fn div_exact(self, other: GaussInt) -> Option<GaussInt> {
        let n = other.norm();
        if n == 0 {
            return None;
        }
        let num = self * other.conj();
        if num.re % n == 0 && num.im % n == 0 {
            Some(GaussInt::new(num.re / n, num.im / n))
        } else {
            None
        }
    }

    /// Euclidean division with the quotient rounded to the nearest lattice point.
    fn div_round(self, other: GaussInt) -> (GaussInt, GaussInt) {
        let n = other.norm();
        let num = self * other.conj();
        let round = |v: i64| (2 * v + n).div_euclid(2 * n);
        let q = GaussInt::new(round(num.re), round(num.im));
        (q, self - q * other)
    }

    pub fn gcd(a: GaussInt, b: GaussInt) -> GaussInt {
        let (mut a, mut b) = (a, b);
        while !b.is_zero() {
            let (_, r) = a.div_round(b);
            a = b;
            b = r;
        }
        a
    }

    /// The associate in the quadrant `re > 0, im >= 0`, with the unit used.
    pub fn normalize_unit(self) -> (GaussInt, GaussInt) {
        if self.is_zero() {
            return (self, GaussInt::ONE);
        }
        for u in GaussInt::UNITS {
            let v = self * u;
            if v.re > 0 && v.im >= 0 {
                return (v, u);
            }
        }
        unreachable!("every nonzero Gaussian integer has an associate in the first quadrant")
    }
}

impl From<i64> for GaussInt {
    fn from(re: i64) -> Self {
        GaussInt::new(re, 0)
    }
}

impl Add for GaussInt {
    type Output = GaussInt;
    fn add(self, o: GaussInt) -> GaussInt {
        GaussInt::new(
            self.re.checked_add(o.re).expect("overflow"),
            self.im.checked_add(o.im).expect("overflow"),
        )
    }
}

impl AddAssign for GaussInt {
    fn add_assign(&mut self, o: GaussInt) {
        *self = *self + o;
    }
}

impl Sub for GaussInt {
    type Output = GaussInt;
    fn sub(self, o: GaussInt) -> GaussInt {
        self + (-o)
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt::new(-self.re, -self.im)
    }
}

impl Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, o: GaussInt) -> GaussInt {
        let m = |a: i64, b: i64| a.checked_mul(b).expect("overflow");
        GaussInt::new(m(self.re, o.re) - m(self.im, o.im), m(self.re, o.im) + m(self.im, o.re))
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, 1) => write!(f, "i"),
            (0, -1) => write!(f, "-i"),
            (0, im) => write!(f, "{im}i"),
            (re, 1) => write!(f, "{re}+i"),
            (re, -1) => write!(f, "{re}-i"),
            (re, im) if im > 0 => write!(f, "{re}+{im}i"),
            (re, im) => write!(f, "{re}{im}i"),
        }
    }
}

/// `sum conj(u_i) v_i`.
pub fn inner(u: &[GaussInt], v: &[GaussInt]) -> GaussInt {
    u.iter().zip(v).fold(GaussInt::ZERO, |acc, (&a, &b)| acc + a.conj() * b)
}

/// `v = c u` for some Gaussian rational `c != 0`: both nonzero and all 2x2
/// cross products vanish.
pub fn proportional(u: &[GaussInt], v: &[GaussInt]) -> bool {
    if u.len() != v.len() || u.iter().all(|z| z.is_zero()) || v.iter().all(|z| z.is_zero()) {
        return false;
    }
    let pivot = u.iter().position(|z| !z.is_zero()).unwrap();
    if v[pivot].is_zero() {
        return false;
    }
    u.iter().zip(v).all(|(&a, &b)| a * v[pivot] == b * u[pivot])
}

/// Rank over Q(i) by fraction-free (Bareiss) elimination.
pub fn rank(rows: &[Vec<GaussInt>]) -> usize {
    let mut m: Vec<Vec<GaussInt>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev = GaussInt::ONE;
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let num = m[r][c] * m[i][j] - m[i][c] * m[r][j];
                m[i][j] = num.div_exact(prev).expect("Bareiss division is exact");
            }
            m[i][c] = GaussInt::ZERO;
        }
        prev = m[r][c];
        r += 1;
        if r == nrows {
            break;
        }
    }
    r
}

/// Dense square matrix `entries / 2^denom_exp`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussMatrix {
    dim: usize,
    entries: Vec<GaussInt>,
    denom_exp: u32,
}

impl GaussMatrix {
    pub fn zero(dim: usize) -> GaussMatrix {
        GaussMatrix {
            dim,
            entries: vec![GaussInt::ZERO; dim * dim],
            denom_exp: 0,
        }
    }

    pub fn identity(dim: usize) -> GaussMatrix {
        let mut m = GaussMatrix::zero(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = GaussInt::ONE;
        }
        m
    }

    pub fn from_rows(rows: &[&[GaussInt]]) -> GaussMatrix {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        GaussMatrix {
            dim,
            entries: rows.iter().flat_map(|r| r.iter().copied()).collect(),
            denom_exp: 0,
        }
    }

    /// Builds `entries / 2^denom_exp` and normalizes.
    pub fn with_denominator(dim: usize, entries: Vec<GaussInt>, denom_exp: u32) -> GaussMatrix {
        assert_eq!(entries.len(), dim * dim);
        GaussMatrix {
            dim,
            entries,
            denom_exp,
        }
        .normalized()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn denom_exp(&self) -> u32 {
        self.denom_exp
    }

    /// Fraction-free numerator entry.
    pub fn at(&self, row: usize, col: usize) -> GaussInt {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[GaussInt] {
        &self.entries
    }

    pub fn column(&self, col: usize) -> Vec<GaussInt> {
        (0..self.dim).map(|r| self.at(r, col)).collect()
    }

    /// Divides out common factors of 2 while the denominator allows.
    pub fn normalized(mut self) -> GaussMatrix {
        while self.denom_exp > 0 && self.entries.iter().all(|z| z.is_even()) {
            for z in &mut self.entries {
                *z = GaussInt::new(z.re / 2, z.im / 2);
            }
            self.denom_exp -= 1;
        }
        self
    }

    fn lifted(&self, exp: u32) -> Vec<GaussInt> {
        let k = 1i64 << (exp - self.denom_exp);
        self.entries.iter().map(|z| z.scale(k)).collect()
    }

    pub fn add(&self, other: &GaussMatrix) -> GaussMatrix {
        assert_eq!(self.dim, other.dim);
        let e = self.denom_exp.max(other.denom_exp);
        let (a, b) = (self.lifted(e), other.lifted(e));
        GaussMatrix::with_denominator(self.dim, a.iter().zip(&b).map(|(&x, &y)| x + y).collect(), e)
    }

    pub fn sub(&self, other: &GaussMatrix) -> GaussMatrix {
        self.add(&other.scale(-GaussInt::ONE))
    }

    pub fn scale(&self, c: GaussInt) -> GaussMatrix {
        GaussMatrix::with_denominator(self.dim, self.entries.iter().map(|&z| z * c).collect(), self.denom_exp)
    }

    /// Divides by `2^k`.
    pub fn halve(&self, k: u32) -> GaussMatrix {
        GaussMatrix::with_denominator(self.dim, self.entries.clone(), self.denom_exp + k)
    }

    pub fn mul(&self, other: &GaussMatrix) -> GaussMatrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = vec![GaussInt::ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * other.entries[k * n + j];
                }
            }
        }
        GaussMatrix::with_denominator(n, out, self.denom_exp + other.denom_exp)
    }

    /// Kronecker product `self (x) other`.
    pub fn kron(&self, other: &GaussMatrix) -> GaussMatrix {
        let (n, m) = (self.dim, other.dim);
        let dim = n * m;
        let mut out = vec![GaussInt::ZERO; dim * dim];
        for i in 0..n {
            for j in 0..n {
                let a = self.entries[i * n + j];
                for k in 0..m {
                    for l in 0..m {
                        out[(i * m + k) * dim + j * m + l] = a * other.entries[k * m + l];
                    }
                }
            }
        }
        GaussMatrix::with_denominator(dim, out, self.denom_exp + other.denom_exp)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> GaussMatrix {
        let n = self.dim;
        let entries = (0..n * n)
            .map(|idx| self.entries[(idx % n) * n + idx / n].conj())
            .collect();
        GaussMatrix {
            dim: n,
            entries,
            denom_exp: self.denom_exp,
        }
    }

    /// Numerator of the trace; the trace itself is this over `2^denom_exp`.
    pub fn trace_numerator(&self) -> GaussInt {
        (0..self.dim).fold(GaussInt::ZERO, |acc, i| acc + self.at(i, i))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|z| z.is_zero())
    }

    /// `Some(c)` when the matrix equals `c * I` with `c` a Gaussian integer.
    pub fn as_scalar(&self) -> Option<GaussInt> {
        if self.denom_exp != 0 {
            return None;
        }
        let c = self.at(0, 0);
        let n = self.dim;
        let ok = (0..n).all(|i| (0..n).all(|j| self.at(i, j) == if i == j { c } else { GaussInt::ZERO }));
        ok.then_some(c)
    }

    pub fn apply(&self, v: &[GaussInt]) -> Vec<GaussInt> {
        assert_eq!(self.denom_exp, 0, "apply expects an integral matrix");
        (0..self.dim)
            .map(|i| (0..self.dim).fold(GaussInt::ZERO, |acc, j| acc + self.at(i, j) * v[j]))
            .collect()
    }
}
