mod common;

use common::{data_dir, product, t2};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use recollement::glue::{ClauseOutcome, Property};
use recollement::io::{read_json, GlueScenario, RestrictScenario};
use recollement::subobjects::DEFAULT_SUBOBJECT_BUDGET;
use recollement::{Error, Exec, Functor, RecollementInstance, Subcategory, TorsionPair};

fn pair_a(inst: &RecollementInstance, x: &str, y: &str) -> TorsionPair {
    let c = inst.base();
    let x = Subcategory::parse(c.atoms(), x).unwrap();
    let y = Subcategory::parse(c.atoms(), y).unwrap();
    c.validate_pair(x, y).unwrap().unwrap()
}

fn pair_l(inst: &RecollementInstance, x: &[String], y: &[String]) -> TorsionPair {
    let c = inst.lambda();
    let x = Subcategory::from_names(c.atoms(), x).unwrap();
    let y = Subcategory::from_names(c.atoms(), y).unwrap();
    c.validate_pair(x, y).unwrap().unwrap()
}

#[test]
fn golden_glue_scenarios() {
    let inst = t2();
    for file in ["glue-first.json", "glue-second.json"] {
        let s: GlueScenario = read_json(&data_dir().join("pairs").join(file)).unwrap();
        let (ax, ay) = s.a.subcategories(inst.base().atoms()).unwrap();
        let (cx, cy) = s.c.subcategories(inst.base().atoms()).unwrap();
        let a = inst.base().validate_pair(ax, ay).unwrap().unwrap();
        let c = inst.base().validate_pair(cx, cy).unwrap().unwrap();
        let glued = inst.glue(&a, &c).unwrap();
        let (ex, ey) = s.expected.subcategories(inst.lambda().atoms()).unwrap();
        assert_eq!((glued.x, glued.y), (ex, ey), "{file}");
    }
}

#[test]
fn golden_restriction() {
    let inst = t2();
    let s: RestrictScenario = read_json(&data_dir().join("pairs/restrict.json")).unwrap();
    let tp = pair_l(&inst, &s.pair.x, &s.pair.y);
    let ra = inst.restrict_to_a(&tp).unwrap();
    assert!(ra.verdict.holds());
    let (ax, ay) = s.expected_a.subcategories(inst.base().atoms()).unwrap();
    assert_eq!((ra.pair.x, ra.pair.y), (ax, ay));
    let rc = inst.restrict_to_c(&tp).unwrap();
    assert_eq!(rc.condition, s.expected_c_condition);
    assert_eq!(
        rc.condition_witness.as_deref(),
        Some("j_*(S(2)) = (0|S(2)) ∉ Y")
    );
    assert!(rc.verdict.fails());
    let (cx, cy) = s
        .expected_c_candidate
        .subcategories(inst.base().atoms())
        .unwrap();
    assert_eq!((rc.candidate.x, rc.candidate.y), (cx, cy));
    let cs = inst.containments(&tp).unwrap();
    assert!(!cs[0].holds && !cs[1].holds);
}

#[test]
fn trivial_cases() {
    let inst = t2();
    let all = pair_a(&inst, "S(2),P(1),S(1)", "0");
    let glued = inst.glue(&all, &all).unwrap();
    assert_eq!(glued.x, Subcategory::all(11));
    assert!(glued.y.is_empty());
    let ra = inst.restrict_to_a(&glued).unwrap();
    assert_eq!(ra.pair.x, Subcategory::all(3));
    assert!(inst.containments(&glued).unwrap().iter().all(|c| c.holds));
    let none = inst
        .lambda()
        .validate_pair(Subcategory::empty(11), Subcategory::all(11))
        .unwrap()
        .unwrap();
    let rc = inst.restrict_to_c(&none).unwrap();
    assert!(rc.condition);
    assert!(rc.candidate.x.is_empty());
}

#[test]
fn enumeration_sweeps() {
    let inst = t2();
    let pairs = inst
        .lambda()
        .enumerate_torsion_pairs(Exec::Parallel)
        .unwrap();
    assert_eq!(
        pairs,
        inst.lambda()
            .enumerate_torsion_pairs(Exec::Sequential)
            .unwrap()
    );
    for tp in &pairs {
        assert!(inst.restrict_to_a(tp).unwrap().verdict.holds());
        inst.restrict_to_c(tp).unwrap();
        let (report, _) = inst.containment_check(tp).unwrap();
        assert!(report.all_passed(), "{report}");
        if let Some((x, y)) = inst.reconstruct(tp).unwrap() {
            assert_eq!((x, y), (tp.x, tp.y));
        }
    }
}

#[test]
fn roundtrips() {
    for inst in [t2(), product()] {
        let pairs = inst
            .base()
            .enumerate_torsion_pairs(Exec::Sequential)
            .unwrap();
        assert_eq!(pairs.len(), 5);
        for a in &pairs {
            for c in &pairs {
                let report = inst.roundtrip_check(a, c).unwrap();
                assert!(report.all_passed(), "{report}");
            }
        }
    }
}

#[test]
fn glue_is_monotone() {
    let inst = t2();
    let pairs = inst
        .base()
        .enumerate_torsion_pairs(Exec::Sequential)
        .unwrap();
    for a1 in &pairs {
        for a2 in pairs.iter().filter(|p| a1.x.is_subset(&p.x)) {
            for c1 in &pairs {
                for c2 in pairs.iter().filter(|p| c1.x.is_subset(&p.x)) {
                    let g1 = inst.glue(a1, c1).unwrap();
                    let g2 = inst.glue(a2, c2).unwrap();
                    assert!(g1.x.is_subset(&g2.x));
                }
            }
        }
    }
}

#[test]
fn constructive_decomposition() {
    let inst = t2();
    let a = pair_a(&inst, "P(1),S(1)", "S(2)");
    let c = pair_a(&inst, "S(2)", "S(1)");
    let glued = inst.glue(&a, &c).unwrap();
    for (i, b) in inst.lambda().atoms().atoms().iter().enumerate() {
        let d = inst.glued_decomposition_constructive(b, &a, &c).unwrap();
        if glued.x.contains(i) {
            assert!(d.free_part.is_empty());
        }
        if glued.y.contains(i) {
            assert!(d.torsion_part.is_empty());
        }
    }
    let atoms = inst.lambda().atoms();
    let ss = atoms.index_of("(S(2)|S(2))").unwrap();
    let s0 = atoms.index_of("(S(2)|0)").unwrap();
    let b = inst.lambda().sum_of(&[ss, s0]);
    let d = inst.glued_decomposition_constructive(&b, &a, &c).unwrap();
    assert_eq!(d.torsion_part.display(atoms), "(S(2)|S(2))");
    assert_eq!(d.free_part.display(atoms), "(S(2)|0)");

    let pairs = inst
        .base()
        .enumerate_torsion_pairs(Exec::Sequential)
        .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in 0..25 {
        let (b, _) = inst.lambda().random_sum(&mut rng, 3);
        let a = &pairs[k % 5];
        let c = &pairs[(k / 5) % 5];
        inst.glued_decomposition_constructive(&b, a, c).unwrap();
    }
}

#[test]
fn closure_clauses_regular() {
    let inst = t2();
    let b = DEFAULT_SUBOBJECT_BUDGET;
    let simple = pair_a(&inst, "S(2)", "S(1)");
    let out = inst
        .check_glue_clause(&simple, &simple, Property::Cohereditary, b)
        .unwrap();
    assert_eq!(out, ClauseOutcome::Verified);
    let proj = pair_a(&inst, "P(1),S(1)", "S(2)");
    let all = pair_a(&inst, "S(2),P(1),S(1)", "0");
    let out = inst
        .check_glue_clause(&proj, &all, Property::Tilting, b)
        .unwrap();
    assert_eq!(out, ClauseOutcome::Verified);
    for p in [Property::Hereditary, Property::Cotilting] {
        assert!(matches!(
            inst.check_glue_clause(&simple, &simple, p, b),
            Err(Error::NotExact {
                functor: Functor::IUpper
            })
        ));
    }
    let report = inst
        .check_glue_closure_properties(&simple, &simple, b)
        .unwrap();
    let hered = report
        .iter()
        .find(|c| c.property == Property::Hereditary)
        .unwrap();
    assert_eq!(
        hered.outcome,
        ClauseOutcome::Skipped("i^* not exact".into())
    );
}

#[test]
fn closure_clauses_zero_mode() {
    let inst = product();
    let b = DEFAULT_SUBOBJECT_BUDGET;
    let pairs = inst
        .base()
        .enumerate_torsion_pairs(Exec::Sequential)
        .unwrap();
    let mut verified = [0usize; 4];
    for a in &pairs {
        for c in &pairs {
            for r in inst.check_glue_closure_properties(a, c, b).unwrap() {
                assert!(
                    matches!(
                        r.outcome,
                        ClauseOutcome::Verified | ClauseOutcome::InputsLackProperty(_)
                    ),
                    "{:?}",
                    r
                );
                if r.outcome == ClauseOutcome::Verified {
                    verified[Property::ALL.iter().position(|p| *p == r.property).unwrap()] += 1;
                }
            }
        }
    }
    assert!(verified.iter().all(|&v| v > 0), "{verified:?}");
}

#[test]
fn ttf_gluing() {
    let inst = product();
    let triples = inst.outer_ttf_triples(Exec::Sequential).unwrap();
    assert_eq!(triples.len(), 4);
    for a in &triples {
        for c in &triples {
            inst.glue_ttf(a, c).unwrap();
        }
    }
    let trivial = triples
        .iter()
        .find(|t| t.x.is_empty() && t.z.is_empty())
        .unwrap();
    let g = inst.glue_ttf(trivial, trivial).unwrap();
    assert!(g.x.is_empty() && g.z.is_empty() && g.y == Subcategory::all(6));
    // Im i_* sits in the middle of a TTF triple with Ker i^* = Ker i^!
    let lam = inst.lambda();
    let ker = |f: &dyn Fn(usize) -> bool| {
        let idx: Vec<usize> = (0..lam.atom_count()).filter(|&i| f(i)).collect();
        Subcategory::from_indices(&idx, lam.atom_count()).unwrap()
    };
    let ker_i = ker(&|i| inst.profile(i).i_upper.is_empty());
    let im_i = ker(&|i| inst.profile(i).j_upper.is_empty());
    assert!(lam.is_ttf(&ker_i, &im_i, &ker_i).unwrap().holds());

    let regular = t2();
    let triples = regular.outer_ttf_triples(Exec::Sequential).unwrap();
    assert!(matches!(
        regular.glue_ttf(&triples[0], &triples[0]),
        Err(Error::NotExact {
            functor: Functor::IUpper
        })
    ));
}
