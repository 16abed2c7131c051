//! Plain-text output.

use std::fmt::Write as _;

use mubkit::mub::{EntanglementStructure, MubSet};
use mubkit::squares::{classify, CompleteSet, SearchOutcome, Square};
use mubkit::{Elem, Field, FieldBasis, PhaseSpace, Point, Subgroup};

pub fn square_letter(i: usize) -> String {
    match u8::try_from(i).ok().filter(|&i| i < 26) {
        Some(i) => ((b'A' + i) as char).to_string(),
        None => format!("#{}", i + 1),
    }
}

pub fn letter_index(s: &str) -> Option<usize> {
    let c = s.trim();
    let mut chars = c.chars();
    match (chars.next(), chars.next()) {
        (Some(ch), None) if ch.is_ascii_alphabetic() => Some((ch.to_ascii_uppercase() as u8 - b'A') as usize),
        _ => None,
    }
}

fn point(f: &Field, p: Point) -> String {
    format!("({},{})", f.display(p.x), f.display(p.y))
}

fn subgroup(f: &Field, g: &Subgroup) -> String {
    let pts: Vec<String> = g.points().iter().map(|&p| point(f, p)).collect();
    format!("{{{}}}", pts.join(", "))
}

fn elems(f: &Field, es: &[Elem]) -> String {
    let names: Vec<String> = es.iter().map(|&e| f.display(e)).collect();
    format!("{{{}}}", names.join(", "))
}

fn poly_string(poly: u32) -> String {
    let mut terms = Vec::new();
    for k in (0..32).rev().filter(|k| poly >> k & 1 == 1) {
        terms.push(match k {
            0 => "1".to_string(),
            1 => "x".to_string(),
            k => format!("x^{k}"),
        });
    }
    terms.join("+")
}

pub fn field_info(f: &Field, k: &[Elem], sd: &FieldBasis, verified: bool) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "GF({}) with m a root of {}", f.order(), poly_string(f.poly()));
    let _ = writeln!(s, "{:<8}{:<8}trace", "element", "mask");
    for e in f.elements_by_log() {
        let _ = writeln!(
            s,
            "{:<8}{:<8}{}",
            f.display(e),
            format!("{:0w$b}", e.bits(), w = f.degree() as usize),
            f.trace(e).bits()
        );
    }
    let _ = writeln!(s, "K = {}", elems(f, k));
    let _ = writeln!(
        s,
        "selfdual basis {}: {}",
        elems(f, sd.elements()),
        if verified { "verified" } else { "NOT selfdual" }
    );
    s
}

pub fn complete_set(ps: &PhaseSpace, c: &CompleteSet, squares: &[Square]) -> String {
    let f = ps.field();
    let mut s = String::new();
    let _ = write!(s, "Type {} complete set, d = {}", c.set_type(), ps.d());
    if let Some((v1, v2)) = c.basis() {
        let _ = write!(s, ", v1 = {}, v2 = {}", point(f, v1), point(f, v2));
    }
    s.push('\n');
    for (i, (ss, sq)) in c.supersquares().iter().zip(squares).enumerate() {
        let _ = writeln!(
            s,
            "\n{}) {}  generator {}",
            square_letter(i),
            classify(ps, sq).name(),
            subgroup(f, ss.generator())
        );
        s.push_str(&sq.ascii(ps));
    }
    s
}

pub fn census(ps: &PhaseSpace, out: &SearchOutcome) -> String {
    let f = ps.field();
    let mut s = String::new();
    let _ = writeln!(
        s,
        "d = {}: {} complete sets{}",
        ps.d(),
        out.sets.len(),
        if out.complete { "" } else { " (INCOMPLETE)" }
    );
    for (t, n) in out.census() {
        let _ = writeln!(s, "  {:<13}{n}", t.name());
    }
    for (i, set) in out.sets.iter().enumerate() {
        let basis = set.basis().map_or(String::new(), |(a, b)| {
            format!(" v1={} v2={}", point(f, a), point(f, b))
        });
        let _ = writeln!(s, "\n#{} type {}{basis}", i + 1, set.set_type());
        for g in set.generators() {
            let _ = writeln!(s, "  {}", subgroup(f, g));
        }
    }
    s
}

pub fn mub_set(ps: &PhaseSpace, m: &MubSet, structure: Option<EntanglementStructure>) -> String {
    let f = ps.field();
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{} mutually unbiased bases for d = {} (Type {})",
        m.bases().len(),
        ps.d(),
        m.source_set().set_type()
    );
    for (i, b) in m.bases().iter().enumerate() {
        let words: Vec<String> = b.words().iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "\n{}) generator {}", square_letter(i), subgroup(f, b.source()));
        let _ = writeln!(s, "   operators: {}", words.join("; "));
        if let Some(classes) = b.class_of_state() {
            for (label, &idx) in classes.iter().enumerate() {
                let _ = writeln!(s, "   class {}: {}", label + 1, b.states()[idx]);
            }
        }
    }
    let _ = writeln!(s, "\nall cross-basis pairs unbiased: yes");
    if let Some(st) = structure {
        let _ = writeln!(s, "entanglement structure (n_f,n_b,n_ns) = {st}");
    }
    s
}
