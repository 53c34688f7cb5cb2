mod common;

use std::sync::OnceLock;

use common::t2;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use recollement::{
    Exec, ModCategory, RecollementInstance, Representation, Subcategory, TorsionPair,
};

struct Fixture {
    inst: RecollementInstance,
    pairs: Vec<TorsionPair>,
}

fn fixture() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let inst = t2();
        let pairs = inst
            .lambda()
            .enumerate_torsion_pairs(Exec::Parallel)
            .unwrap();
        Fixture { inst, pairs }
    })
}

fn counts(cat: &ModCategory, m: &Representation) -> Vec<usize> {
    cat.decompose(m).unwrap().counts().to_vec()
}

fn sum_in(
    cat: &ModCategory,
    rng: &mut ChaCha8Rng,
    class: &Subcategory,
    k: usize,
) -> Representation {
    let idx: Vec<usize> = class.indices().collect();
    let picks: Vec<usize> = (0..k)
        .map(|_| idx[rand::Rng::gen_range(rng, 0..idx.len())])
        .collect();
    cat.sum_of(&picks)
}

#[test]
fn enumeration_matches_brute_force_validation() {
    // oracle: every mask validated directly, without the perpendicular
    // closure filter used by the enumeration
    let f = fixture();
    let lam = f.inst.lambda();
    let n = lam.atom_count();
    let mut brute = Vec::new();
    for mask in 0..1u64 << n {
        let x = Subcategory::from_mask(mask, n).unwrap();
        let y = lam.perp_right(&x);
        if lam.is_torsion_pair(&x, &y).unwrap().holds() {
            brute.push((x, y));
        }
    }
    let listed: Vec<_> = f.pairs.iter().map(|p| (p.x, p.y)).collect();
    assert_eq!(brute, listed);
}

#[test]
fn torsion_classes_are_closed_under_extensions() {
    let f = fixture();
    let lam = f.inst.lambda();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut applicable = 0;
    for _ in 0..400 {
        let (mono, epi) = lam.random_short_exact(&mut rng);
        let u = lam.decompose(mono.source()).unwrap().support_mask();
        let b = lam.decompose(mono.target()).unwrap().support_mask();
        let q = lam.decompose(epi.target()).unwrap().support_mask();
        for tp in &f.pairs {
            if tp.x.contains_all(u) && tp.x.contains_all(q) {
                applicable += 1;
                assert!(tp.x.contains_all(b));
            }
            if tp.y.contains_all(u) && tp.y.contains_all(q) {
                assert!(tp.y.contains_all(b));
            }
        }
    }
    assert!(applicable > 100);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn trace_is_additive(seed in any::<u64>(), k in 0usize..46) {
        let f = fixture();
        let lam = f.inst.lambda();
        let tp = &f.pairs[k % f.pairs.len()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (m, _) = lam.random_sum(&mut rng, 3);
        let (n, _) = lam.random_sum(&mut rng, 3);
        let mn = lam.algebra().direct_sum(&[m.clone(), n.clone()]).object;
        let t = |r: &Representation| counts(lam, lam.torsion_sequence(&tp.x, r).0.source());
        let sum: Vec<usize> = t(&m).iter().zip(t(&n)).map(|(a, b)| a + b).collect();
        prop_assert_eq!(t(&mn), sum);
    }

    #[test]
    fn perpendiculars_form_a_galois_connection(mask in 0u64..1 << 11) {
        let lam = fixture().inst.lambda();
        let s = Subcategory::from_mask(mask, 11).unwrap();
        let r = lam.perp_right(&s);
        let closure = lam.perp_left(&r);
        prop_assert!(s.is_subset(&closure));
        prop_assert_eq!(lam.perp_right(&closure), r);
        prop_assert!(lam.perp_left(&s).is_subset(&lam.perp_left(&lam.perp_right(&lam.perp_left(&s)))));
    }

    #[test]
    fn images_stay_in_x_and_kernels_stay_in_y(seed in any::<u64>(), k in 0usize..46) {
        let f = fixture();
        let lam = f.inst.lambda();
        let alg = lam.algebra();
        let tp = &f.pairs[k % f.pairs.len()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, _) = lam.random_sum(&mut rng, 3);
        if !tp.x.is_empty() {
            let m = sum_in(lam, &mut rng, &tp.x, 2);
            let g = lam.random_morphism(&mut rng, &m, &n);
            let im = lam.decompose(&alg.image(&g).object).unwrap();
            prop_assert!(tp.x.contains_all(im.support_mask()));
        }
        if !tp.y.is_empty() {
            let m = sum_in(lam, &mut rng, &tp.y, 2);
            let g = lam.random_morphism(&mut rng, &m, &n);
            let ker = lam.decompose(&alg.kernel(&g).0).unwrap();
            prop_assert!(tp.y.contains_all(ker.support_mask()));
        }
    }

    #[test]
    fn larger_budgets_never_change_a_determined_verdict(k in 0usize..46, small in 1usize..40) {
        let f = fixture();
        let lam = f.inst.lambda();
        let tp = &f.pairs[k % f.pairs.len()];
        let big = 1 << 16;
        for (lo, hi) in [
            (lam.is_hereditary(tp, small).unwrap(), lam.is_hereditary(tp, big).unwrap()),
            (lam.is_cohereditary(tp, small).unwrap(), lam.is_cohereditary(tp, big).unwrap()),
        ] {
            prop_assert!(!matches!(hi, recollement::Verdict::Undetermined(_)));
            if !matches!(lo, recollement::Verdict::Undetermined(_)) {
                prop_assert_eq!(lo.holds(), hi.holds());
            }
        }
    }
}

/// Every map `M → X`-atom stacked per vertex: `M` embeds into an object of
/// `add X` iff the stack is injective at every vertex.
fn embeds_into(cat: &ModCategory, m: &Representation, x: &Subcategory) -> bool {
    let alg = cat.algebra();
    let maps: Vec<_> = x
        .indices()
        .flat_map(|i| alg.hom_basis(m, cat.atoms().atom(i)))
        .collect();
    (0..alg.vertex_count()).all(|v| {
        let d = m.dims()[v];
        d == 0
            || maps
                .iter()
                .map(|g| g.map(v).clone())
                .reduce(|a, b| a.vstack(&b))
                .is_some_and(|s| s.rank() == d)
    })
}

/// Dually, `M` is a quotient of an object of `add Y` iff the images of all
/// maps from `Y`-atoms span `M` at every vertex.
fn covered_by(cat: &ModCategory, m: &Representation, y: &Subcategory) -> bool {
    let alg = cat.algebra();
    let maps: Vec<_> = y
        .indices()
        .flat_map(|j| alg.hom_basis(cat.atoms().atom(j), m))
        .collect();
    (0..alg.vertex_count()).all(|v| {
        let d = m.dims()[v];
        d == 0
            || maps
                .iter()
                .map(|g| g.map(v).clone())
                .reduce(|a, b| a.hstack(&b))
                .is_some_and(|s| s.rank() == d)
    })
}

#[test]
fn tilting_reduction_to_atoms_agrees_on_random_sums() {
    let f = fixture();
    let lam = f.inst.lambda();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for tp in &f.pairs {
        let tilting = lam.is_tilting(tp).unwrap().holds();
        let cotilting = lam.is_cotilting(tp).unwrap().holds();
        let atoms_embed =
            (0..lam.atom_count()).all(|i| embeds_into(lam, lam.atoms().atom(i), &tp.x));
        let atoms_covered =
            (0..lam.atom_count()).all(|i| covered_by(lam, lam.atoms().atom(i), &tp.y));
        assert_eq!(tilting, atoms_embed);
        assert_eq!(cotilting, atoms_covered);
        for _ in 0..10 {
            let (m, _) = lam.random_sum(&mut rng, 4);
            if tilting {
                assert!(embeds_into(lam, &m, &tp.x));
            }
            if cotilting {
                assert!(covered_by(lam, &m, &tp.y));
            }
        }
    }
}
