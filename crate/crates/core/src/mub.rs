//! Mutually unbiased bases from complete sets of supersquares.
//!
//! Each generating subgroup gives a family of commuting translation
//! operators. Its common eigenbasis comes from exact rank-one projectors;
//! the remaining classes of the square are matched to states by translating
//! one chosen ray state with the class representatives.

use std::fmt;

use crate::error::{Error, Result};
use crate::gauss::{inner, proportional, rank, GaussInt, GaussMatrix};
use crate::pauli::{PauliWord, TranslationFrame, TranslationOp};
use crate::phasespace::{PhaseSpace, Point, Subgroup};
use crate::squares::{verify_complete_set, CompleteSet, Supersquare, VerifyReport};

/// `entries / sqrt(norm_sq)`, content-reduced with the first nonzero entry
/// normalized to the quadrant `re > 0, im >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnnormalizedState {
    entries: Vec<GaussInt>,
    norm_sq: i64,
}

impl UnnormalizedState {
    pub fn new(entries: Vec<GaussInt>) -> Result<UnnormalizedState> {
        let content = entries.iter().fold(GaussInt::ZERO, |acc, &z| GaussInt::gcd(acc, z));
        if content.is_zero() {
            return Err(Error::Domain("state vector is zero".into()));
        }
        let mut entries: Vec<GaussInt> = entries
            .iter()
            .map(|&z| z.div_exact(content).expect("gcd divides every entry"))
            .collect();
        let lead = entries.iter().find(|z| !z.is_zero()).copied().expect("nonzero vector");
        let (_, unit) = lead.normalize_unit();
        for z in &mut entries {
            *z = *z * unit;
        }
        let norm_sq = entries.iter().map(|z| z.norm()).sum();
        Ok(UnnormalizedState { entries, norm_sq })
    }

    pub fn entries(&self) -> &[GaussInt] {
        &self.entries
    }

    pub fn norm_sq(&self) -> i64 {
        self.norm_sq
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn is_proportional(&self, other: &[GaussInt]) -> bool {
        proportional(&self.entries, other)
    }
}

impl fmt::Display for UnnormalizedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        write!(f, "({})/sqrt({})", parts.join(", "), self.norm_sq)
    }
}

/// Eigenvalues chosen for each generator; `lambda_j^2` is the generator's
/// square sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenvalueAssignment {
    pub generators: Vec<Point>,
    pub lambdas: Vec<GaussInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MubBasis {
    source: Subgroup,
    words: Vec<PauliWord>,
    states: Vec<UnnormalizedState>,
    assignments: Vec<EigenvalueAssignment>,
    class_of_state: Option<Vec<usize>>,
}

impl MubBasis {
    pub fn source(&self) -> &Subgroup {
        &self.source
    }

    /// Hermitian words of the nonzero points of the source, in point order.
    pub fn words(&self) -> &[PauliWord] {
        &self.words
    }

    pub fn states(&self) -> &[UnnormalizedState] {
        &self.states
    }

    pub fn assignments(&self) -> &[EigenvalueAssignment] {
        &self.assignments
    }

    /// The chosen ray state, from the all-principal assignment.
    pub fn ray_state(&self) -> &UnnormalizedState {
        &self.states[0]
    }

    /// `class_of_state[k - 1]` is the index of the state of class `k`.
    pub fn class_of_state(&self) -> Option<&[usize]> {
        self.class_of_state.as_deref()
    }

    /// The state assigned to the class with 1-based `label`.
    pub fn state_of_class(&self, label: usize) -> Option<&UnnormalizedState> {
        let idx = self.class_of_state.as_ref()?.get(label.checked_sub(1)?)?;
        self.states.get(*idx)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MubSet {
    bases: Vec<MubBasis>,
    source_set: CompleteSet,
}

impl MubSet {
    pub fn bases(&self) -> &[MubBasis] {
        &self.bases
    }

    pub fn source_set(&self) -> &CompleteSet {
        &self.source_set
    }

    pub fn dim(&self) -> usize {
        self.bases.first().map_or(0, |b| b.states.len())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Separability {
    Factorized,
    Biseparable,
    Nonseparable,
}

impl Separability {
    pub fn name(self) -> &'static str {
        match self {
            Separability::Factorized => "factorized",
            Separability::Biseparable => "biseparable",
            Separability::Nonseparable => "nonseparable",
        }
    }
}

/// `(n_f, n_b, n_ns)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EntanglementStructure {
    pub n_f: usize,
    pub n_b: usize,
    pub n_ns: usize,
}

impl EntanglementStructure {
    pub fn total(&self) -> usize {
        self.n_f + self.n_b + self.n_ns
    }
}

impl fmt::Display for EntanglementStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n_f, self.n_b, self.n_ns)
    }
}

/// A cut of three qubits into one qubit and the other two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bipartition {
    Q1,
    Q2,
    Q3,
}

impl Bipartition {
    pub const ALL: [Bipartition; 3] = [Bipartition::Q1, Bipartition::Q2, Bipartition::Q3];

    /// The single qubit, 1-based.
    pub fn qubit(self) -> usize {
        match self {
            Bipartition::Q1 => 1,
            Bipartition::Q2 => 2,
            Bipartition::Q3 => 3,
        }
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bipartition::Q1 => "1|23",
            Bipartition::Q2 => "2|13",
            Bipartition::Q3 => "3|12",
        })
    }
}

fn ensure_dim(frame: &TranslationFrame, subgroup: &Subgroup) -> Result<()> {
    let d = frame.dim();
    if subgroup.len() != d {
        return Err(Error::Domain(format!(
            "subgroup has {} points instead of {d}",
            subgroup.len()
        )));
    }
    Ok(())
}

fn principal(sign: i8) -> GaussInt {
    if sign == 1 {
        GaussInt::ONE
    } else {
        GaussInt::I
    }
}

/// Exact rank-one projector for one assignment, `prod_j (I + conj(l_j) T_j) / 2`.
fn projector(ops: &[TranslationOp], lambdas: &[GaussInt], d: usize) -> Result<GaussMatrix> {
    let id = GaussMatrix::identity(d);
    let mut p = id.clone();
    for (t, &l) in ops.iter().zip(lambdas) {
        p = p.mul(&id.add(&t.matrix().scale(l.conj())));
    }
    let p = p.halve(ops.len() as u32);
    let trace_is_one = p.trace_numerator() == GaussInt::from(1i64 << p.denom_exp());
    if !trace_is_one || p.mul(&p) != p || p.adjoint() != p {
        return Err(Error::Consistency(
            "projector is not rank one; the generators do not commute".into(),
        ));
    }
    Ok(p)
}

/// Common eigenbasis of `T_g`, `g` in `a1`, extracting the first nonzero
/// projector column.
pub fn common_eigenbasis(frame: &TranslationFrame, a1: &Subgroup) -> Result<MubBasis> {
    common_eigenbasis_with_column(frame, a1, 0)
}

/// As [`common_eigenbasis`], taking the `choice`-th nonzero column (cyclically)
/// of each projector.
pub fn common_eigenbasis_with_column(frame: &TranslationFrame, a1: &Subgroup, choice: usize) -> Result<MubBasis> {
    ensure_dim(frame, a1)?;
    let d = frame.dim();
    let generators = a1.generators();
    let ops: Vec<TranslationOp> = generators.iter().map(|&g| frame.operator(g)).collect::<Result<_>>()?;
    let words = a1
        .nonzero()
        .map(|p| frame.operator(p).map(|t| t.word().clone()))
        .collect::<Result<_>>()?;
    let mut states = Vec::with_capacity(d);
    let mut assignments = Vec::with_capacity(d);
    for s in 0..1usize << ops.len() {
        let lambdas: Vec<GaussInt> = ops
            .iter()
            .enumerate()
            .map(|(j, t)| {
                let l = principal(t.square_sign());
                if s >> j & 1 == 1 {
                    -l
                } else {
                    l
                }
            })
            .collect();
        let p = projector(&ops, &lambdas, d)?;
        let nonzero: Vec<usize> = (0..d).filter(|&c| (0..d).any(|r| !p.at(r, c).is_zero())).collect();
        let col = nonzero[choice % nonzero.len()];
        states.push(UnnormalizedState::new(p.column(col))?);
        assignments.push(EigenvalueAssignment {
            generators: generators.clone(),
            lambdas,
        });
    }
    let basis = MubBasis {
        source: a1.clone(),
        words,
        states,
        assignments,
        class_of_state: None,
    };
    check_basis(frame, &basis)?;
    Ok(basis)
}

/// Pairwise orthogonality and the eigenvector certificate.
fn check_basis(frame: &TranslationFrame, basis: &MubBasis) -> Result<()> {
    for (i, u) in basis.states.iter().enumerate() {
        for (j, v) in basis.states.iter().enumerate().skip(i + 1) {
            if !inner(u.entries(), v.entries()).is_zero() {
                return Err(Error::Consistency(format!("states {i} and {j} are not orthogonal")));
            }
        }
    }
    for g in basis.source.nonzero() {
        let t = frame.operator(g)?;
        for (i, u) in basis.states.iter().enumerate() {
            let image = t.matrix().apply(u.entries());
            let is_eigen = GaussInt::UNITS
                .iter()
                .any(|&phase| image.iter().zip(u.entries()).all(|(&a, &b)| a == b * phase));
            if !is_eigen {
                return Err(Error::Consistency(format!(
                    "state {i} is not an eigenvector of {}",
                    t.word()
                )));
            }
        }
    }
    Ok(())
}

/// Matches each class `k` of `square` to the state proportional to
/// `T_{a_k} |ray>`, with `a_k` the class representative.
pub fn apply_correspondence(frame: &TranslationFrame, basis: &MubBasis, square: &Supersquare) -> Result<MubBasis> {
    if square.generator() != &basis.source {
        return Err(Error::Domain("supersquare is not generated by the basis source".into()));
    }
    let d = frame.dim();
    let ray = basis.ray_state();
    let mut class_of_state = Vec::with_capacity(d);
    let mut used = vec![false; d];
    for label in 1..=d {
        let a = square.rep(label);
        let image = frame.operator(a)?.matrix().apply(ray.entries());
        let hit = basis
            .states
            .iter()
            .position(|s| s.is_proportional(&image))
            .ok_or_else(|| {
                Error::Consistency(format!(
                    "translate of the ray state by class {label} is not a basis state"
                ))
            })?;
        if std::mem::replace(&mut used[hit], true) {
            return Err(Error::Consistency(format!(
                "class {label} maps to an already assigned state"
            )));
        }
        class_of_state.push(hit);
    }
    let mut out = basis.clone();
    out.class_of_state = Some(class_of_state);
    Ok(out)
}

/// `d |<u,v>|^2 = N_u N_v`.
pub fn is_unbiased_pair(u: &UnnormalizedState, v: &UnnormalizedState, d: usize) -> bool {
    let overlap = inner(u.entries(), v.entries()).norm() as i128;
    (d as i128) * overlap == (u.norm_sq() as i128) * (v.norm_sq() as i128)
}

/// One basis per supersquare of `set`, each with its class correspondence,
/// checked for orthonormality and mutual unbiasedness.
pub fn build_mub_set(frame: &TranslationFrame, set: &CompleteSet) -> Result<MubSet> {
    let ps = PhaseSpace::new(*frame.field());
    let report = verify_complete_set(&ps, &set.squares());
    if !report.passed() {
        return Err(Error::Domain(format!("not a complete set:\n{report}")));
    }
    let d = frame.dim();
    let bases = set
        .supersquares()
        .iter()
        .map(|s| apply_correspondence(frame, &common_eigenbasis(frame, s.generator())?, s))
        .collect::<Result<Vec<_>>>()?;
    for (i, b) in bases.iter().enumerate() {
        for (j, c) in bases.iter().enumerate().skip(i + 1) {
            for (k, u) in b.states.iter().enumerate() {
                for (l, v) in c.states.iter().enumerate() {
                    if !is_unbiased_pair(u, v, d) {
                        return Err(Error::Consistency(format!(
                            "bases {} and {} are biased at states {k} and {l}",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
    }
    Ok(MubSet {
        bases,
        source_set: set.clone(),
    })
}

/// Re-checks printed bases: `d + 1` bases of `d` states, each basis
/// orthogonal and made of eigenvectors of its words, all cross pairs
/// unbiased.
pub fn verify_states(d: usize, bases: &[(Vec<PauliWord>, Vec<UnnormalizedState>)]) -> VerifyReport {
    let mut report = VerifyReport::default();
    let mut card = Vec::new();
    if bases.len() != d + 1 {
        card.push(format!("{} bases, expected {}", bases.len(), d + 1));
    }
    for (i, (_, states)) in bases.iter().enumerate() {
        if states.len() != d || states.iter().any(|s| s.dim() != d) {
            card.push(format!("basis {} does not hold {d} states of dimension {d}", i + 1));
        }
    }
    let shapes_ok = card.is_empty();
    report.push("cardinality", card);
    if !shapes_ok {
        return report;
    }

    let mut orth = Vec::new();
    let mut eigen = Vec::new();
    for (i, (words, states)) in bases.iter().enumerate() {
        for (k, u) in states.iter().enumerate() {
            for (l, v) in states.iter().enumerate().skip(k + 1) {
                if !inner(u.entries(), v.entries()).is_zero() {
                    orth.push(format!("basis {}: states {k} and {l} overlap", i + 1));
                }
            }
        }
        for w in words {
            if w.len() != d.trailing_zeros() as usize {
                eigen.push(format!("basis {}: word {w} has the wrong length", i + 1));
                continue;
            }
            let m = w.matrix();
            for (k, u) in states.iter().enumerate() {
                if !u.is_proportional(&m.apply(u.entries())) {
                    eigen.push(format!("basis {}: state {k} is not an eigenvector of {w}", i + 1));
                }
            }
        }
    }
    report.push("orthogonality", orth);
    report.push("eigenvectors", eigen);

    let mut biased = Vec::new();
    for (i, (_, b)) in bases.iter().enumerate() {
        for (j, (_, c)) in bases.iter().enumerate().skip(i + 1) {
            for (k, u) in b.iter().enumerate() {
                for (l, v) in c.iter().enumerate() {
                    if !is_unbiased_pair(u, v, d) {
                        biased.push(format!("bases {} and {}: states {k} and {l}", i + 1, j + 1));
                    }
                }
            }
        }
    }
    report.push("unbiasedness", biased);
    report
}

fn cut_rank(u: &UnnormalizedState, qubit: usize, n: usize) -> usize {
    let shift = n - qubit;
    let mut rows = vec![Vec::new(), Vec::new()];
    for (idx, &z) in u.entries().iter().enumerate() {
        rows[idx >> shift & 1].push(z);
    }
    rank(&rows)
}

/// Rank of the 2x4 reshaping of a three-qubit state across `cut`.
pub fn schmidt_rank(u: &UnnormalizedState, cut: Bipartition) -> Result<usize> {
    if u.dim() != 8 {
        return Err(Error::Unsupported(format!(
            "Schmidt rank needs three qubits, got dimension {}",
            u.dim()
        )));
    }
    Ok(cut_rank(u, cut.qubit(), 3))
}

/// Schmidt ranks over every one-versus-rest cut: three cuts at d = 8, one
/// at d = 4.
pub fn rank_profile(u: &UnnormalizedState) -> Result<Vec<usize>> {
    match u.dim() {
        4 => Ok(vec![cut_rank(u, 1, 2)]),
        8 => Bipartition::ALL.iter().map(|&c| schmidt_rank(u, c)).collect(),
        d => Err(Error::Unsupported(format!(
            "entanglement classification is defined for d = 4 and 8, not {d}"
        ))),
    }
}

pub fn classify_basis(basis: &MubBasis) -> Result<Separability> {
    classify_states(&basis.states)
}

/// Classifies by the rank profile of the first state, after checking that
/// every state shares it.
pub fn classify_states(states: &[UnnormalizedState]) -> Result<Separability> {
    let first = states.first().ok_or_else(|| Error::Domain("empty basis".into()))?;
    let profile = rank_profile(first)?;
    for (i, s) in states.iter().enumerate() {
        if rank_profile(s)? != profile {
            return Err(Error::Consistency(format!(
                "state {i} has a different rank profile from the first state"
            )));
        }
    }
    Ok(if profile.iter().all(|&r| r == 1) {
        Separability::Factorized
    } else if profile.iter().all(|&r| r == 2) {
        Separability::Nonseparable
    } else {
        Separability::Biseparable
    })
}

pub fn structure(set: &MubSet) -> Result<EntanglementStructure> {
    let mut out = EntanglementStructure {
        n_f: 0,
        n_b: 0,
        n_ns: 0,
    };
    for b in &set.bases {
        match classify_basis(b)? {
            Separability::Factorized => out.n_f += 1,
            Separability::Biseparable => out.n_b += 1,
            Separability::Nonseparable => out.n_ns += 1,
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2n::{Elem, Field};
    use crate::squares::{supersquare_from_subgroup, type_one};

    fn g(re: i64, im: i64) -> GaussInt {
        GaussInt::new(re, im)
    }

    fn state(v: &[(i64, i64)]) -> UnnormalizedState {
        UnnormalizedState::new(v.iter().map(|&(a, b)| g(a, b)).collect()).unwrap()
    }

    fn setup(n: u32) -> (PhaseSpace, TranslationFrame) {
        let f = Field::new(n).unwrap();
        (PhaseSpace::new(f), TranslationFrame::selfdual(f))
    }

    #[test]
    fn content_reduction() {
        let s = state(&[(0, 2), (2, 0), (0, 0), (-2, 0)]);
        assert_eq!(s.entries(), &[g(1, 0), g(0, -1), g(0, 0), g(0, 1)]);
        assert_eq!(s.norm_sq(), 3);
        let t = state(&[(1, 1), (1, -1)]);
        assert_eq!(t.entries(), &[g(1, 0), g(0, -1)]);
        assert!(UnnormalizedState::new(vec![GaussInt::ZERO; 4]).is_err());
    }

    #[test]
    fn unbiased_examples() {
        let u = state(&[(1, 0), (0, 0), (0, 0), (0, 0)]);
        let v = state(&[(1, 0), (1, 0), (1, 0), (1, 0)]);
        assert!(is_unbiased_pair(&u, &v, 4));
        assert!(!is_unbiased_pair(&v, &v, 4));
    }

    #[test]
    fn diagonal_family_gives_computational_basis() {
        for n in [2, 3] {
            let (ps, fr) = setup(n);
            let axis = ps.line(Point::new(Elem::ZERO, Elem::ONE)).unwrap();
            let b = common_eigenbasis(&fr, &axis).unwrap();
            let mut hits: Vec<usize> = b
                .states()
                .iter()
                .map(|s| {
                    assert_eq!(s.norm_sq(), 1);
                    s.entries().iter().position(|z| !z.is_zero()).unwrap()
                })
                .collect();
            hits.sort();
            assert_eq!(hits, (0..ps.d()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn non_commuting_family_is_rejected() {
        let (ps, fr) = setup(2);
        let f = ps.field();
        let bad = ps.span(&[Point::new(f.mu_pow(1), Elem::ZERO), Point::new(Elem::ZERO, f.mu_pow(1))]);
        assert!(matches!(common_eigenbasis(&fr, &bad), Err(Error::Consistency(_))));
    }

    #[test]
    fn correspondence_is_column_independent() {
        let (ps, fr) = setup(3);
        let set = type_one(
            &ps,
            Point::new(Elem::ONE, Elem::ZERO),
            Point::new(Elem::ZERO, Elem::ONE),
        )
        .unwrap();
        for sq in set.supersquares() {
            let a =
                apply_correspondence(&fr, &common_eigenbasis_with_column(&fr, sq.generator(), 0).unwrap(), sq).unwrap();
            let b =
                apply_correspondence(&fr, &common_eigenbasis_with_column(&fr, sq.generator(), 3).unwrap(), sq).unwrap();
            for label in 1..=ps.d() {
                let (u, v) = (a.state_of_class(label).unwrap(), b.state_of_class(label).unwrap());
                assert!(u.is_proportional(v.entries()));
            }
        }
    }

    #[test]
    fn rank_examples() {
        let product = state(&[(1, 0), (0, 0), (0, 0), (0, 0), (0, 0), (0, 0), (0, 0), (0, 0)]);
        let ghz = state(&[(1, 0), (0, 0), (0, 0), (0, 0), (0, 0), (0, 0), (0, 0), (1, 0)]);
        // (|00> + |11>) (x) |0>: indices 000 and 110
        let bell0 = state(&[(1, 0), (0, 0), (0, 0), (0, 0), (0, 0), (0, 0), (1, 0), (0, 0)]);
        for c in Bipartition::ALL {
            assert_eq!(schmidt_rank(&product, c).unwrap(), 1);
            assert_eq!(schmidt_rank(&ghz, c).unwrap(), 2);
        }
        assert_eq!(schmidt_rank(&bell0, Bipartition::Q1).unwrap(), 2);
        assert_eq!(schmidt_rank(&bell0, Bipartition::Q2).unwrap(), 2);
        assert_eq!(schmidt_rank(&bell0, Bipartition::Q3).unwrap(), 1);
        let four = state(&[(1, 0), (0, 0), (0, 0), (1, 0)]);
        assert!(matches!(
            schmidt_rank(&four, Bipartition::Q1),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn computational_basis_is_factorized() {
        let (ps, fr) = setup(3);
        let axis = ps.line(Point::new(Elem::ZERO, Elem::ONE)).unwrap();
        let b = common_eigenbasis(&fr, &axis).unwrap();
        assert_eq!(classify_basis(&b).unwrap(), Separability::Factorized);
    }

    #[test]
    fn type_one_d4_builds_five_unbiased_bases() {
        let (ps, fr) = setup(2);
        let f = ps.field();
        let set = type_one(
            &ps,
            Point::new(Elem::ONE, f.mu_pow(2)),
            Point::new(Elem::ONE, f.mu_pow(1)),
        )
        .unwrap();
        let m = build_mub_set(&fr, &set).unwrap();
        assert_eq!(m.bases().len(), 5);
        assert!(m.bases().iter().all(|b| b.class_of_state().is_some()));
    }

    #[test]
    fn verify_states_flags_a_biased_pair() {
        let (ps, fr) = setup(2);
        let f = ps.field();
        let set = type_one(
            &ps,
            Point::new(Elem::ONE, f.mu_pow(2)),
            Point::new(Elem::ONE, f.mu_pow(1)),
        )
        .unwrap();
        let m = build_mub_set(&fr, &set).unwrap();
        let mut bases: Vec<(Vec<PauliWord>, Vec<UnnormalizedState>)> = m
            .bases()
            .iter()
            .map(|b| (b.words().to_vec(), b.states().to_vec()))
            .collect();
        assert!(verify_states(4, &bases).passed());
        bases[1].1 = bases[0].1.clone();
        let report = verify_states(4, &bases);
        assert!(!report.check("unbiasedness").unwrap().passed);
        assert!(!report.check("eigenvectors").unwrap().passed);
    }

    #[test]
    fn translation_closure() {
        let (ps, fr) = setup(2);
        let f = ps.field();
        let sub = ps.line(Point::new(Elem::ONE, f.mu_pow(1))).unwrap();
        let sq = supersquare_from_subgroup(&ps, &sub).unwrap();
        let b = apply_correspondence(&fr, &common_eigenbasis(&fr, &sub).unwrap(), &sq).unwrap();
        for p in ps.points() {
            let t = fr.operator(p).unwrap();
            for s in b.states() {
                let image = t.matrix().apply(s.entries());
                assert!(b.states().iter().any(|u| u.is_proportional(&image)));
            }
        }
    }
}
