//! Acceptance gate: one line per criterion, nonzero exit on any failure.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use mubkit::gauss::GaussInt;
use mubkit::mub::{build_mub_set, classify_basis, is_unbiased_pair, structure, MubSet, Separability};
use mubkit::pauli::{commutes, trace_condition, TranslationFrame, TranslationOp};
use mubkit::squares::{
    classify, is_physical_striation, is_supersquare, search_complete_sets, supersquare_from_subgroup, type_four_d8,
    type_one, type_three_d8, type_two_d8, verify_complete_set, CompleteSet, SearchOptions, SetType, SquareKind,
};
use mubkit::{Elem, Field, PhaseSpace, Point, Result as MResult};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn space(n: u32) -> PhaseSpace {
    PhaseSpace::new(Field::new(n).unwrap())
}

fn frame(ps: &PhaseSpace) -> TranslationFrame {
    TranslationFrame::selfdual(*ps.field())
}

fn diagonal_square() -> Outcome {
    let ps = space(2);
    let f = ps.field();
    let diag = ps
        .subgroup(["0", "1", "m", "m2"].map(|a| pt(f, a, a)))
        .map_err(|e| e.to_string())?;
    let ss = supersquare_from_subgroup(&ps, &diag).map_err(|e| e.to_string())?;
    let class = |pairs: [(&str, &str); 4]| {
        let mut v: Vec<Point> = pairs.iter().map(|&(x, y)| pt(f, x, y)).collect();
        v.sort();
        v
    };
    let expected: BTreeSet<Vec<Point>> = [
        class([("0", "0"), ("1", "1"), ("m", "m"), ("m2", "m2")]),
        class([("0", "1"), ("1", "0"), ("m", "m2"), ("m2", "m")]),
        class([("0", "m"), ("1", "m2"), ("m", "0"), ("m2", "1")]),
        class([("0", "m2"), ("1", "m"), ("m", "1"), ("m2", "0")]),
    ]
    .into_iter()
    .collect();
    ensure(ss.square().partition() == expected, "partition differs")?;
    Ok("4 classes equal".into())
}

fn grids(n: u32, set: fn(&PhaseSpace) -> CompleteSet, fixture: &str, kinds: &[SquareKind]) -> Outcome {
    let ps = space(n);
    let set = set(&ps);
    let expected = fixture_squares(&ps, fixture);
    ensure(expected.len() == set.supersquares().len(), "square count differs")?;
    for ((label, want), (ss, &kind)) in expected.iter().zip(set.supersquares().iter().zip(kinds)) {
        ensure(
            ss.square().matches_up_to_labels(want),
            format!("square {label}: partition differs"),
        )?;
        let ones: Vec<Point> = ps.points().filter(|&p| want.label(&ps, p) == 1).collect();
        ensure(
            ones.as_slice() == ss.generator().points(),
            format!("square {label}: class 1 differs"),
        )?;
        let got = classify(&ps, ss.square());
        ensure(
            got == kind,
            format!("square {label}: {} instead of {}", got.name(), kind.name()),
        )?;
    }
    Ok(format!("{} squares match", expected.len()))
}

fn word_sets(ps: &PhaseSpace, set: &CompleteSet) -> Vec<BTreeSet<String>> {
    let fr = frame(ps);
    set.generators()
        .iter()
        .map(|g| g.nonzero().map(|p| fr.operator(p).unwrap().word().compact()).collect())
        .collect()
}

fn operator_table_d4() -> Outcome {
    let ps = space(2);
    let got = word_sets(&ps, &type_two_d4_example(&ps));
    for ((label, row), words) in OPERATORS_D4.iter().zip(&got) {
        let want: BTreeSet<String> = row.iter().map(|s| s.to_string()).collect();
        ensure(&want == words, format!("row {label}: got {words:?}"))?;
    }
    Ok("5 rows equal".into())
}

fn vectors_d4() -> Outcome {
    let ps = space(2);
    let m = build_mub_set(&frame(&ps), &type_two_d4_example(&ps)).map_err(|e| e.to_string())?;
    let all: Vec<_> = m.bases().iter().flat_map(|b| b.states()).collect();
    for (r, row) in VECTORS_D4.iter().enumerate() {
        for v in row {
            let v: Vec<GaussInt> = v.iter().map(|&(a, b)| GaussInt::new(a, b)).collect();
            let hits = all.iter().filter(|s| s.is_proportional(&v)).count();
            ensure(hits == 1, format!("row {}: {v:?} matches {hits} states", r + 1))?;
        }
    }
    let pairs = unbiased_pairs(&m)?;
    ensure(pairs == 160, format!("{pairs} cross pairs"))?;
    Ok("20 vectors matched, 160 pairs unbiased".into())
}

fn unbiased_pairs(m: &MubSet) -> Result<usize, String> {
    let d = m.dim();
    let mut pairs = 0;
    for (i, b) in m.bases().iter().enumerate() {
        for c in &m.bases()[i + 1..] {
            for u in b.states() {
                for v in c.states() {
                    ensure(is_unbiased_pair(u, v, d), "biased pair")?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(pairs)
}

fn operator_table_d8() -> Outcome {
    let ps = space(3);
    let got: BTreeSet<BTreeSet<String>> = word_sets(&ps, &type_two_d8_example(&ps)).into_iter().collect();
    let want: BTreeSet<BTreeSet<String>> = OPERATORS_D8
        .iter()
        .map(|(_, row)| row.iter().map(|s| s.to_string()).collect())
        .collect();
    ensure(got == want, "row sets differ")?;
    Ok("9 rows equal".into())
}

fn structure_d8() -> Outcome {
    let ps = space(3);
    let m = build_mub_set(&frame(&ps), &type_two_d8_example(&ps)).map_err(|e| e.to_string())?;
    for b in m.bases() {
        let kind = classify_basis(b).map_err(|e| e.to_string())?;
        ensure(kind == Separability::Biseparable, format!("basis is {}", kind.name()))?;
    }
    let s = structure(&m).map_err(|e| e.to_string())?;
    ensure((s.n_f, s.n_b, s.n_ns) == (0, 9, 0), format!("structure {s}"))?;
    Ok(format!("structure {s}"))
}

fn trace_zero_d8() -> Outcome {
    let ps = space(3);
    let f = ps.field();
    let k: BTreeSet<Elem> = ps.trace_zero_subgroup().elements().iter().copied().collect();
    let want: BTreeSet<Elem> = [Elem::ZERO, f.mu_pow(1), f.mu_pow(2), f.mu_pow(4)]
        .into_iter()
        .collect();
    ensure(k == want, "K differs")?;
    Ok("K = {0, m, m2, m4}".into())
}

fn commutation_oracle() -> Outcome {
    let mut total = 0;
    for n in [2, 3] {
        let ps = space(n);
        let fr = frame(&ps);
        let ops: Vec<TranslationOp> = ps.points().map(|p| fr.operator(p).unwrap()).collect();
        for a in &ops {
            for b in &ops {
                ensure(
                    commutes(a, b) == trace_condition(ps.field(), a.point(), b.point()),
                    format!("mismatch at {:?} {:?}", a.point(), b.point()),
                )?;
                total += 1;
            }
        }
    }
    ensure(total == 256 + 4096, "pair count")?;
    Ok(format!("{total} pairs, zero mismatches"))
}

fn theorem_suite() -> Outcome {
    let ps = space(2);
    let gens: Vec<_> = ps
        .enumerate_subgroups()
        .into_iter()
        .filter(|g| ps.is_extraordinary(g))
        .collect();
    let mut checked = 0;
    for (i, g) in gens.iter().enumerate() {
        let sq = supersquare_from_subgroup(&ps, g)
            .map_err(|e| e.to_string())?
            .square()
            .clone();
        ensure(
            is_physical_striation(&ps, &sq) == is_supersquare(&ps, &sq),
            format!("canonical square of {g}"),
        )?;
        checked += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(i as u64);
        for _ in 0..20 {
            let p = sq.perturb(&mut rng).map_err(|e| e.to_string())?;
            ensure(
                is_physical_striation(&ps, &p) == is_supersquare(&ps, &p),
                format!("perturbation of {g}"),
            )?;
            checked += 1;
        }
    }
    ensure(gens.len() == 15, format!("{} extraordinary subgroups", gens.len()))?;
    Ok(format!("{} subgroups, {checked} squares, zero exceptions", gens.len()))
}

fn census_d4() -> Outcome {
    let ps = space(2);
    let out = search_complete_sets(&ps, &SearchOptions::default()).map_err(|e| e.to_string())?;
    ensure(out.complete, "search incomplete")?;
    let census = out.census();
    let unclassified = census.get(&SetType::Unclassified).copied().unwrap_or(0);
    ensure(unclassified == 0, format!("{unclassified} unclassified sets"))?;
    let parts: Vec<String> = census.iter().map(|(t, n)| format!("{t}: {n}")).collect();
    Ok(format!("{} sets ({})", out.sets.len(), parts.join(", ")))
}

type Builder = fn(&PhaseSpace, Point, Point) -> MResult<CompleteSet>;

fn type_coverage_d8() -> Outcome {
    let ps = space(3);
    let builders: [(&str, Builder); 4] = [
        ("I", type_one),
        ("II", type_two_d8),
        ("III", type_three_d8),
        ("IV", type_four_d8),
    ];
    let mut summary = Vec::new();
    for (name, build) in builders {
        let mut count = 0;
        'outer: for v1 in ps.points() {
            for v2 in ps.points() {
                if let Ok(set) = build(&ps, v1, v2) {
                    let report = verify_complete_set(&ps, &set.squares());
                    ensure(report.passed(), format!("type {name} at {v1:?}, {v2:?}:\n{report}"))?;
                    count += 1;
                    if count == 3 {
                        break 'outer;
                    }
                }
            }
        }
        ensure(count == 3, format!("type {name}: only {count} bases"))?;
        summary.push(format!("{name}: 3"));
    }
    Ok(summary.join(", "))
}

fn mub_exactness() -> Outcome {
    let mut built = 0;
    for n in [2u32, 3] {
        let ps = space(n);
        let f = ps.field();
        let (v1, v2) = (Point::new(Elem::ONE, f.mu_pow(1)), Point::new(f.mu_pow(3), f.mu_pow(2)));
        let mut sets = vec![type_one(&ps, v1, v2).map_err(|e| e.to_string())?];
        if n == 2 {
            sets.push(type_two_d4_example(&ps));
        } else {
            for b in [type_two_d8, type_three_d8, type_four_d8] {
                sets.push(b(&ps, v1, v2).map_err(|e| e.to_string())?);
            }
        }
        for set in sets {
            // build_mub_set itself rejects non-orthogonal or biased output
            let m = build_mub_set(&frame(&ps), &set).map_err(|e| e.to_string())?;
            ensure(m.bases().len() == ps.d() + 1, "wrong basis count")?;
            for b in m.bases() {
                for (i, u) in b.states().iter().enumerate() {
                    for v in &b.states()[i + 1..] {
                        let ip = mubkit::gauss::inner(u.entries(), v.entries());
                        ensure(ip.is_zero(), "non-orthogonal states")?;
                    }
                }
            }
            let d = ps.d();
            ensure(unbiased_pairs(&m)? == d * d * d * (d + 1) / 2, "cross pair count")?;
            built += 1;
        }
    }
    Ok(format!("{built} MUB sets exact"))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    use SquareKind::*;
    let secs = |s: u64| Some(Duration::from_secs(s));
    let criteria = [
        Criterion {
            id: 1,
            name: "diagonal Latin square partition",
            limit: secs(1),
            run: diagonal_square,
        },
        Criterion {
            id: 2,
            name: "two-qubit Type II grids",
            limit: secs(1),
            run: || {
                grids(
                    2,
                    type_two_d4_example,
                    "type2_d4_grids.txt",
                    &[Latin, ColumnLatin, Plain, RowLatin, Plain],
                )
            },
        },
        Criterion {
            id: 3,
            name: "three-qubit Type II grids",
            limit: secs(1),
            run: || {
                grids(
                    3,
                    type_two_d8_example,
                    "type2_d8_grids.txt",
                    &[Latin, Latin, Plain, Latin, Plain, RowLatin, ColumnLatin, Plain, Plain],
                )
            },
        },
        Criterion {
            id: 4,
            name: "two-qubit operator table",
            limit: secs(1),
            run: operator_table_d4,
        },
        Criterion {
            id: 5,
            name: "two-qubit MUB vectors",
            limit: secs(1),
            run: vectors_d4,
        },
        Criterion {
            id: 6,
            name: "three-qubit operator table",
            limit: secs(5),
            run: operator_table_d8,
        },
        Criterion {
            id: 7,
            name: "three-qubit structure (0,9,0)",
            limit: secs(5),
            run: structure_d8,
        },
        Criterion {
            id: 8,
            name: "trace-zero subgroup K at d=8",
            limit: None,
            run: trace_zero_d8,
        },
        Criterion {
            id: 9,
            name: "commutation iff trace condition",
            limit: secs(30),
            run: commutation_oracle,
        },
        Criterion {
            id: 10,
            name: "striation iff supersquare",
            limit: secs(10),
            run: theorem_suite,
        },
        Criterion {
            id: 11,
            name: "d=4 census: Types I and II only",
            limit: secs(60),
            run: census_d4,
        },
        Criterion {
            id: 12,
            name: "d=8 Types I-IV verify",
            limit: secs(60),
            run: type_coverage_d8,
        },
        Criterion {
            id: 13,
            name: "MUB cardinality and exactness",
            limit: None,
            run: mub_exactness,
        },
    ];

    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = match (result, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:?}, limit {limit:?}")),
            (r, _) => r,
        };
        let ms = elapsed.as_secs_f64() * 1000.0;
        match result {
            Ok(detail) => println!("PASS  {:>2}  {:<36} {ms:>9.1} ms  {detail}", c.id, c.name),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {:>2}  {:<36} {ms:>9.1} ms  {detail}", c.id, c.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
