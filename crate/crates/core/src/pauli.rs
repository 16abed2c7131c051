//! Pauli operators and the translation operators of the phase space.
//!
//! `T_(x,y) = X^{a_1} Z^{b_1} (x) ... (x) X^{a_n} Z^{b_n}` with
//! `a_i = tr(x f_i)` and `b_i = tr(y e_i)` for a dual pair `(E, F)`. Qubit 1
//! is the leftmost tensor factor, i.e. the most significant index bit.
//!
//! The matrix keeps the raw product (so `XZ = -iY` per qubit); the word
//! names the Hermitian Pauli operator with phases dropped.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauss::{GaussInt, GaussMatrix};
use crate::gf2n::{coordinates, is_dual_pair, Field, FieldBasis};
use crate::phasespace::Point;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// The letter for `X^a Z^b`.
    pub fn from_bits(a: u8, b: u8) -> Pauli {
        match (a & 1, b & 1) {
            (0, 0) => Pauli::I,
            (1, 0) => Pauli::X,
            (0, 1) => Pauli::Z,
            _ => Pauli::Y,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn parse(c: char) -> Result<Pauli> {
        match c.to_ascii_uppercase() {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            _ => Err(Error::Usage(format!("'{c}' is not a Pauli letter"))),
        }
    }
}

/// Standard 2x2 Pauli matrix, `Y = [[0, -i], [i, 0]]`.
pub fn pauli_matrix(p: Pauli) -> GaussMatrix {
    let (o, z, i) = (GaussInt::ONE, GaussInt::ZERO, GaussInt::I);
    match p {
        Pauli::I => GaussMatrix::identity(2),
        Pauli::X => GaussMatrix::from_rows(&[&[z, o], &[o, z]]),
        Pauli::Y => GaussMatrix::from_rows(&[&[z, -i], &[i, z]]),
        Pauli::Z => GaussMatrix::from_rows(&[&[o, z], &[z, -o]]),
    }
}

/// Kronecker product.
pub fn tensor(a: &GaussMatrix, b: &GaussMatrix) -> GaussMatrix {
    a.kron(b)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PauliWord(Vec<Pauli>);

impl PauliWord {
    pub fn new(letters: Vec<Pauli>) -> PauliWord {
        PauliWord(letters)
    }

    /// Accepts compact (`"XIZ"`) or separated (`"XxIxZ"`, `"X⊗I⊗Z"`) forms.
    pub fn parse(s: &str) -> Result<PauliWord> {
        let letters: Vec<char> = s.chars().filter(|c| !matches!(c, 'x' | '⊗' | ' ' | '*')).collect();
        if letters.is_empty() {
            return Err(Error::Usage(format!("empty Pauli word '{s}'")));
        }
        letters
            .into_iter()
            .map(Pauli::parse)
            .collect::<Result<Vec<_>>>()
            .map(PauliWord)
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Letters without separators, e.g. `XIZ`.
    pub fn compact(&self) -> String {
        self.0.iter().map(|p| p.letter()).collect()
    }

    pub fn matrix(&self) -> GaussMatrix {
        self.0
            .iter()
            .map(|&p| pauli_matrix(p))
            .reduce(|acc, m| acc.kron(&m))
            .unwrap_or_else(|| GaussMatrix::identity(1))
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.letter().to_string()).collect();
        f.write_str(&parts.join("x"))
    }
}

#[derive(Clone, Debug)]
pub struct TranslationOp {
    point: Point,
    x_bits: Vec<u8>,
    z_bits: Vec<u8>,
    matrix: GaussMatrix,
    word: PauliWord,
}

impl TranslationOp {
    pub fn point(&self) -> Point {
        self.point
    }

    pub fn matrix(&self) -> &GaussMatrix {
        &self.matrix
    }

    pub fn word(&self) -> &PauliWord {
        &self.word
    }

    /// Exponents `a_i` of X, qubit 1 first.
    pub fn x_bits(&self) -> &[u8] {
        &self.x_bits
    }

    /// Exponents `b_i` of Z, qubit 1 first.
    pub fn z_bits(&self) -> &[u8] {
        &self.z_bits
    }

    /// `s` with `T^2 = s I`.
    pub fn square_sign(&self) -> i8 {
        square_sign(self)
    }
}

/// A dual pair of bases fixing the coordinates used by `T_(x,y)`.
#[derive(Clone, Debug)]
pub struct TranslationFrame {
    field: Field,
    e: FieldBasis,
    f: FieldBasis,
}

impl TranslationFrame {
    pub fn new(field: Field, e: FieldBasis, f: FieldBasis) -> Result<TranslationFrame> {
        if !is_dual_pair(&field, &e, &f) {
            return Err(Error::Domain("F is not the dual basis of E".into()));
        }
        Ok(TranslationFrame { field, e, f })
    }

    /// `E = F` = the field's selfdual basis.
    pub fn selfdual(field: Field) -> TranslationFrame {
        let e = field.selfdual_basis();
        TranslationFrame { field, f: e.clone(), e }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn basis_e(&self) -> &FieldBasis {
        &self.e
    }

    pub fn basis_f(&self) -> &FieldBasis {
        &self.f
    }

    pub fn dim(&self) -> usize {
        self.field.order()
    }

    pub fn operator(&self, p: Point) -> Result<TranslationOp> {
        translation_operator(&self.field, p, &self.e, &self.f)
    }
}

pub fn translation_operator(field: &Field, p: Point, e: &FieldBasis, f: &FieldBasis) -> Result<TranslationOp> {
    if !is_dual_pair(field, e, f) {
        return Err(Error::Domain("F is not the dual basis of E".into()));
    }
    field.check(p.x)?;
    field.check(p.y)?;
    let x_bits = coordinates(field, p.x, f);
    let z_bits = coordinates(field, p.y, e);
    let x = pauli_matrix(Pauli::X);
    let z = pauli_matrix(Pauli::Z);
    let mut matrix = GaussMatrix::identity(1);
    let mut letters = Vec::with_capacity(x_bits.len());
    for (&a, &b) in x_bits.iter().zip(&z_bits) {
        let mut factor = GaussMatrix::identity(2);
        if a == 1 {
            factor = factor.mul(&x);
        }
        if b == 1 {
            factor = factor.mul(&z);
        }
        matrix = matrix.kron(&factor);
        letters.push(Pauli::from_bits(a, b));
    }
    Ok(TranslationOp {
        point: p,
        x_bits,
        z_bits,
        matrix,
        word: PauliWord(letters),
    })
}

/// Exact test `T1 T2 = T2 T1`.
pub fn commutes(t1: &TranslationOp, t2: &TranslationOp) -> bool {
    t1.matrix.mul(&t2.matrix) == t2.matrix.mul(&t1.matrix)
}

/// `tr(x1 y2) = tr(x2 y1)`.
pub fn trace_condition(field: &Field, p1: Point, p2: Point) -> bool {
    field.trace(field.mul(p1.x, p2.y)) == field.trace(field.mul(p2.x, p1.y))
}

/// `(-1)^k` with `k` the number of qubits carrying `XZ`.
pub fn square_sign(t: &TranslationOp) -> i8 {
    let k = t
        .x_bits
        .iter()
        .zip(&t.z_bits)
        .filter(|&(&a, &b)| a == 1 && b == 1)
        .count();
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The unit `u` with `a = u b`, if any.
pub fn unit_ratio(a: &GaussMatrix, b: &GaussMatrix) -> Option<GaussInt> {
    GaussInt::UNITS.into_iter().find(|&u| *a == b.scale(u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2n::Elem;
    use crate::phasespace::PhaseSpace;

    fn g(re: i64, im: i64) -> GaussInt {
        GaussInt::new(re, im)
    }

    fn frame(n: u32) -> TranslationFrame {
        TranslationFrame::selfdual(Field::new(n).unwrap())
    }

    fn pt(field: &Field, x: &str, y: &str) -> Point {
        Point::new(field.parse(x).unwrap(), field.parse(y).unwrap())
    }

    #[test]
    fn pauli_algebra() {
        let (x, y, z) = (pauli_matrix(Pauli::X), pauli_matrix(Pauli::Y), pauli_matrix(Pauli::Z));
        assert_eq!(x.mul(&z), y.scale(g(0, -1)));
        for m in [&x, &y, &z] {
            assert_eq!(m.mul(m), GaussMatrix::identity(2));
        }
        assert_eq!(z.at(1, 1), g(-1, 0));
    }

    #[test]
    fn tensor_products() {
        let i = pauli_matrix(Pauli::I);
        let z = pauli_matrix(Pauli::Z);
        assert_eq!(tensor(&i, &i), GaussMatrix::identity(4));
        let zz = tensor(&z, &z);
        let diag: Vec<GaussInt> = (0..4).map(|k| zz.at(k, k)).collect();
        assert_eq!(diag, vec![g(1, 0), g(-1, 0), g(-1, 0), g(1, 0)]);
        let xii = tensor(&pauli_matrix(Pauli::X), &tensor(&i, &i));
        for r in 0..8 {
            for c in 0..8 {
                let want = if c == (r + 4) % 8 {
                    GaussInt::ONE
                } else {
                    GaussInt::ZERO
                };
                assert_eq!(xii.at(r, c), want);
            }
        }
    }

    #[test]
    fn translation_examples() {
        let fr = frame(2);
        let f = *fr.field();
        let t = fr.operator(pt(&f, "0", "1")).unwrap();
        assert_eq!(t.word().compact(), "ZZ");
        assert_eq!(t.matrix(), &PauliWord::parse("ZZ").unwrap().matrix());

        let t = fr.operator(pt(&f, "1", "1")).unwrap();
        assert_eq!(t.word().compact(), "YY");
        assert_eq!(t.matrix(), &PauliWord::parse("YY").unwrap().matrix().scale(g(-1, 0)));
        assert_eq!(t.square_sign(), 1);

        let fr8 = frame(3);
        let f8 = *fr8.field();
        let t = fr8.operator(pt(&f8, "0", "m3")).unwrap();
        assert_eq!(t.word().to_string(), "ZxIxI");
    }

    #[test]
    fn square_sign_matches_matrix() {
        for n in [2, 3] {
            let fr = frame(n);
            let ps = PhaseSpace::new(*fr.field());
            for p in ps.points() {
                let t = fr.operator(p).unwrap();
                let s = g(t.square_sign() as i64, 0);
                assert_eq!(t.matrix().mul(t.matrix()), GaussMatrix::identity(fr.dim()).scale(s));
            }
        }
    }

    #[test]
    fn rejects_non_dual_pair() {
        let f = Field::new(2).unwrap();
        let e = FieldBasis::new(&f, vec![Elem::ONE, f.parse("m").unwrap()]).unwrap();
        assert!(matches!(TranslationFrame::new(f, e.clone(), e), Err(Error::Domain(_))));
    }

    #[test]
    fn polynomial_basis_with_its_dual() {
        let f = Field::new(3).unwrap();
        let e = FieldBasis::new(&f, vec![Elem::ONE, f.mu_pow(1), f.mu_pow(2)]).unwrap();
        let dual = crate::gf2n::dual_basis(&f, &e).unwrap();
        let fr = TranslationFrame::new(f, e, dual).unwrap();
        let ps = PhaseSpace::new(f);
        for p in ps.points() {
            for q in ps.points() {
                let (tp, tq) = (fr.operator(p).unwrap(), fr.operator(q).unwrap());
                assert_eq!(commutes(&tp, &tq), trace_condition(&f, p, q));
            }
        }
    }

    #[test]
    fn commutation_examples() {
        let fr = frame(2);
        let f = *fr.field();
        let op = |x, y| fr.operator(pt(&f, x, y)).unwrap();
        assert!(commutes(&op("0", "1"), &op("0", "m")));
        assert!(!commutes(&op("m", "0"), &op("0", "m")));
        assert!(trace_condition(&f, pt(&f, "1", "m2"), pt(&f, "m", "1")));
    }

    #[test]
    fn trace_condition_equals_commutation() {
        for n in [2, 3] {
            let fr = frame(n);
            let ps = PhaseSpace::new(*fr.field());
            let ops: Vec<TranslationOp> = ps.points().map(|p| fr.operator(p).unwrap()).collect();
            for a in &ops {
                for b in &ops {
                    assert_eq!(commutes(a, b), trace_condition(fr.field(), a.point(), b.point()));
                }
            }
        }
    }

    #[test]
    fn group_law_and_unitarity() {
        for n in [2, 3] {
            let fr = frame(n);
            let ps = PhaseSpace::new(*fr.field());
            let ops: Vec<TranslationOp> = ps.points().map(|p| fr.operator(p).unwrap()).collect();
            let id = GaussMatrix::identity(fr.dim());
            for a in &ops {
                assert_eq!(a.matrix().mul(&a.matrix().adjoint()), id);
                for b in &ops {
                    let sum = &ops[ps.key(a.point() + b.point())];
                    assert!(unit_ratio(&a.matrix().mul(b.matrix()), sum.matrix()).is_some());
                }
            }
        }
    }

    #[test]
    fn word_parsing_and_display() {
        let w = PauliWord::parse("X⊗Y⊗Z").unwrap();
        assert_eq!(w.to_string(), "XxYxZ");
        assert_eq!(PauliWord::parse("XxYxZ").unwrap(), w);
        assert!(PauliWord::parse("XQ").is_err());
        assert_eq!(serde_json::to_string(&w).unwrap(), r#"["X","Y","Z"]"#);
    }
}
