mod common;

use std::collections::BTreeSet;

use common::pt;
use mubkit::mub::{build_mub_set, structure, EntanglementStructure};
use mubkit::pauli::TranslationFrame;
use mubkit::squares::{
    search_complete_sets, type_four_d8, type_one, type_three_d8, type_two_d4, type_two_d8, verify_complete_set,
    CompleteSet, SearchOptions, SetType,
};
use mubkit::{Elem, Error, PhaseSpace, Point, Result};

type Builder = fn(&PhaseSpace, Point, Point) -> Result<CompleteSet>;

#[test]
fn d4_census_has_only_the_two_types() {
    let ps = PhaseSpace::of_order(4).unwrap();
    let out = search_complete_sets(&ps, &SearchOptions::default()).unwrap();
    assert!(out.complete);
    let census = out.census();
    assert_eq!(
        census.keys().copied().collect::<Vec<_>>(),
        vec![SetType::I, SetType::II]
    );
    for set in &out.sets {
        assert!(verify_complete_set(&ps, &set.squares()).passed());
    }
}

#[test]
fn d8_search_results_are_complete_sets() {
    let ps = PhaseSpace::of_order(8).unwrap();
    let out = search_complete_sets(
        &ps,
        &SearchOptions {
            workers: 4,
            ..Default::default()
        },
    )
    .unwrap();
    assert!(out.complete);
    let census = out.census();
    for t in [SetType::I, SetType::II, SetType::III, SetType::IV] {
        assert!(census.get(&t).copied().unwrap_or(0) > 0, "no {t} witness");
    }
    let keys: BTreeSet<_> = out.sets.iter().map(|s| s.canonical_key()).collect();
    assert_eq!(keys.len(), out.sets.len());
    for set in out.sets.iter().step_by(7) {
        assert!(verify_complete_set(&ps, &set.squares()).passed());
    }
}

#[test]
fn d8_types_verify_for_several_bases() {
    let ps = PhaseSpace::of_order(8).unwrap();
    let builders: [(SetType, Builder); 4] = [
        (SetType::I, type_one),
        (SetType::II, type_two_d8),
        (SetType::III, type_three_d8),
        (SetType::IV, type_four_d8),
    ];
    for (t, build) in builders {
        let mut ok = BTreeSet::new();
        for v1 in ps.points() {
            for v2 in ps.points() {
                if let Ok(set) = build(&ps, v1, v2) {
                    assert_eq!(set.set_type(), t);
                    assert!(
                        verify_complete_set(&ps, &set.squares()).passed(),
                        "{t} at {v1:?} {v2:?}"
                    );
                    ok.insert((v1, v2));
                }
                if ok.len() >= 3 {
                    break;
                }
            }
            if ok.len() >= 3 {
                break;
            }
        }
        assert!(ok.len() >= 3, "{t}");
    }
}

#[test]
fn constructor_preconditions() {
    let p4 = PhaseSpace::of_order(4).unwrap();
    let f4 = p4.field();
    // det((1,0),(0,m)) = m != 1
    let err = type_two_d4(&p4, pt(f4, "1", "0"), pt(f4, "0", "m")).unwrap_err();
    assert!(matches!(err, Error::Domain(_)));

    let p8 = PhaseSpace::of_order(8).unwrap();
    let f8 = p8.field();
    // det = 1 and tr(1) = 1 in F_8, so 1 is not in K
    let err = type_two_d8(&p8, pt(f8, "1", "0"), pt(f8, "0", "1")).unwrap_err();
    assert!(err.to_string().contains("not in K"));
    assert!(matches!(
        type_three_d8(&p4, pt(f4, "1", "0"), pt(f4, "0", "1")),
        Err(Error::Usage(_))
    ));
    assert!(type_one(&p8, pt(f8, "1", "1"), pt(f8, "1", "1")).is_err());
}

#[test]
fn every_mub_set_is_exact() {
    for d in [4usize, 8] {
        let ps = PhaseSpace::of_order(d).unwrap();
        let fr = TranslationFrame::selfdual(*ps.field());
        let v1 = Point::new(Elem::ONE, ps.field().mu_pow(1));
        let v2 = Point::new(ps.field().mu_pow(3), ps.field().mu_pow(2));
        let builders: Vec<Builder> = if d == 4 {
            vec![type_one]
        } else {
            vec![type_one, type_two_d8, type_three_d8, type_four_d8]
        };
        for build in builders {
            let set = build(&ps, v1, v2).unwrap();
            let m = build_mub_set(&fr, &set).unwrap();
            assert_eq!(m.bases().len(), d + 1);
        }
    }
}

#[test]
fn standard_type_one_structure() {
    // frozen from a full rank-profile classification of every basis
    let ps = PhaseSpace::of_order(8).unwrap();
    let fr = TranslationFrame::selfdual(*ps.field());
    let set = type_one(
        &ps,
        Point::new(Elem::ONE, Elem::ZERO),
        Point::new(Elem::ZERO, Elem::ONE),
    )
    .unwrap();
    let s = structure(&build_mub_set(&fr, &set).unwrap()).unwrap();
    assert_eq!(
        s,
        EntanglementStructure {
            n_f: 3,
            n_b: 0,
            n_ns: 6
        }
    );
    assert!(s.n_f >= 2);
    assert_eq!(s.total(), 9);
}
