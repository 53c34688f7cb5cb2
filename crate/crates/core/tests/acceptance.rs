//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints one pass/fail line; exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::{data_dir, product, t2};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use recollement::glue::{ClauseOutcome, Property};
use recollement::io::{read_json, GlueScenario, PairSpec, RestrictScenario};
use recollement::subobjects::DEFAULT_SUBOBJECT_BUDGET;
use recollement::{
    Error, Exec, Functor, ModCategory, RecollementInstance, Subcategory, TorsionPair,
};

type Outcome = Result<(), String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(err: Error) -> String {
    err.to_string()
}

fn pair(cat: &ModCategory, spec: &PairSpec) -> Result<TorsionPair, String> {
    let (x, y) = spec.subcategories(cat.atoms()).map_err(e)?;
    cat.validate_pair(x, y).map_err(e)?
}

fn pair_str(cat: &ModCategory, x: &str, y: &str) -> Result<TorsionPair, String> {
    let x = Subcategory::parse(cat.atoms(), x).map_err(e)?;
    let y = Subcategory::parse(cat.atoms(), y).map_err(e)?;
    cat.validate_pair(x, y).map_err(e)?
}

const LAMBDA_ATOMS: [&str; 11] = [
    "(S(2)|0)",
    "(P(1)|0)",
    "(S(2)|S(2))",
    "(P(1)|S(2))",
    "(0|S(2))",
    "(P(1)|P(1))",
    "(S(1)|0)",
    "(S(1)|P(1))",
    "(S(1)|S(1))",
    "(0|P(1))",
    "(0|S(1))",
];

fn atom_inventory(inst: &RecollementInstance) -> Outcome {
    let names = inst.lambda().atoms().names();
    let mut got: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut want = LAMBDA_ATOMS.to_vec();
    got.sort_unstable();
    want.sort_unstable();
    ensure(got == want, || format!("atoms {names:?}"))?;
    ensure(inst.lambda().atoms().is_certified(), || {
        "fingerprint matrix singular".into()
    })
}

fn recollement_axioms(inst: &RecollementInstance) -> Outcome {
    let report = inst.verify_recollement();
    ensure(report.all_passed(), || report.to_string())?;
    ensure(report.checks.len() >= 11, || {
        "report is missing checks".into()
    })
}

fn canonical_sequences(inst: &RecollementInstance) -> Outcome {
    for b in inst.modules() {
        inst.canonical_sequences(b).map_err(e)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for k in 0..100 {
        let (b, _) = inst.lambda().random_sum(&mut rng, 4);
        inst.canonical_sequences(&inst.tri().view(&b))
            .map_err(|err| format!("random sum {k}: {err}"))?;
    }
    for c in inst.base().atoms().atoms() {
        inst.j_lower_j_rstar_sequence(c).map_err(e)?;
    }
    Ok(())
}

fn exactness_probes(inst: &RecollementInstance) -> Outcome {
    for f in Functor::ALL.into_iter().filter(|&f| f != Functor::IUpper) {
        if let Some(ce) = inst.probe_exactness(f, 1000, 0, Exec::Parallel) {
            return Err(format!("spurious counterexample: {ce}"));
        }
    }
    let b = inst.module(inst.lambda().atoms().index_of("(P(1)|S(2))").map_err(e)?);
    let ce = inst
        .i_upper_witness(b)
        .ok_or("i^* preserved 0 → (P(1)|0) → (P(1)|S(2)) → (0|S(2)) → 0")?;
    ensure(
        ce.description
            .starts_with("0 → (P(1)|0) → (P(1)|S(2)) → (0|S(2)) → 0")
            && ce.position == 0,
        || ce.to_string(),
    )?;
    // the witness is a genuine short exact sequence of mod Λ
    ensure(
        inst.lambda().algebra().is_short_exact(&ce.mono, &ce.epi),
        || "witness not short exact".into(),
    )?;
    ensure(
        inst.probe_exactness(Functor::IUpper, 1000, 0, Exec::Parallel)
            .is_some(),
        || "random probe missed i^*".into(),
    )
}

fn census(inst: &RecollementInstance, named: &[&PairSpec]) -> Outcome {
    let base = inst.base();
    let pairs = base.enumerate_torsion_pairs(Exec::Parallel).map_err(e)?;
    ensure(pairs.len() == 5, || format!("{} pairs", pairs.len()))?;
    for spec in named {
        let tp = pair(base, spec)?;
        ensure(pairs.iter().any(|p| (p.x, p.y) == (tp.x, tp.y)), || {
            format!("{} missing", tp.display(base.atoms()))
        })?;
    }
    Ok(())
}

fn glue_golden(inst: &RecollementInstance, sc: &GlueScenario, sizes: (usize, usize)) -> Outcome {
    let a = pair(inst.base(), &sc.a)?;
    let c = pair(inst.base(), &sc.c)?;
    let glued = inst.glue(&a, &c).map_err(e)?;
    let (ex, ey) = sc
        .expected
        .subcategories(inst.lambda().atoms())
        .map_err(e)?;
    ensure((ex.size(), ey.size()) == sizes, || {
        "expected file has the wrong shape".into()
    })?;
    ensure((glued.x, glued.y) == (ex, ey), || {
        glued.display(inst.lambda().atoms())
    })?;
    ensure(glued.is_validated(), || "glued pair not validated".into())
}

fn restriction_golden(inst: &RecollementInstance, sc: &RestrictScenario) -> Outcome {
    let tp = pair(inst.lambda(), &sc.pair)?;
    let ra = inst.restrict_to_a(&tp).map_err(e)?;
    let ea = sc
        .expected_a
        .subcategories(inst.base().atoms())
        .map_err(e)?;
    ensure(ra.verdict.holds() && (ra.pair.x, ra.pair.y) == ea, || {
        ra.pair.display(inst.base().atoms())
    })?;
    let rc = inst.restrict_to_c(&tp).map_err(e)?;
    ensure(!rc.condition, || "condition unexpectedly holds".into())?;
    ensure(
        rc.condition_witness.as_deref() == Some("j_*(S(2)) = (0|S(2)) ∉ Y"),
        || format!("{:?}", rc.condition_witness),
    )?;
    let ec = sc
        .expected_c_candidate
        .subcategories(inst.base().atoms())
        .map_err(e)?;
    ensure((rc.candidate.x, rc.candidate.y) == ec, || {
        rc.candidate.display(inst.base().atoms())
    })?;
    ensure(rc.verdict.fails(), || "candidate validated".into())
}

fn restrict_a_sweep(inst: &RecollementInstance, pairs: &[TorsionPair]) -> Outcome {
    for tp in pairs {
        let ra = inst.restrict_to_a(tp).map_err(e)?;
        // re-check with the independent pair test, not just the stored verdict
        let v = inst
            .base()
            .is_torsion_pair(&ra.pair.x, &ra.pair.y)
            .map_err(e)?;
        ensure(ra.verdict.holds() && v.holds(), || {
            tp.display(inst.lambda().atoms())
        })?;
    }
    Ok(())
}

fn biconditional_sweep(inst: &RecollementInstance, pairs: &[TorsionPair]) -> Outcome {
    let mut with_condition = 0;
    for tp in pairs {
        let (report, cs) = inst.containment_check(tp).map_err(e)?;
        ensure(report.all_passed(), || report.to_string())?;
        ensure(
            cs[0].holds == cs[1].holds && cs[2].holds == cs[3].holds,
            || tp.display(inst.lambda().atoms()),
        )?;
        let rc = inst.restrict_to_c(tp).map_err(e)?;
        let v = inst
            .base()
            .is_torsion_pair(&rc.candidate.x, &rc.candidate.y)
            .map_err(e)?;
        ensure(v.holds() == rc.condition, || {
            tp.display(inst.lambda().atoms())
        })?;
        with_condition += usize::from(rc.condition);
    }
    ensure(with_condition > 0 && with_condition < pairs.len(), || {
        "sweep does not exercise both sides of the biconditional".into()
    })
}

fn roundtrip(inst: &RecollementInstance, pairs: &[TorsionPair]) -> Outcome {
    let outer = inst
        .base()
        .enumerate_torsion_pairs(Exec::Parallel)
        .map_err(e)?;
    let mut n = 0;
    for a in &outer {
        for c in &outer {
            let report = inst.roundtrip_check(a, c).map_err(e)?;
            ensure(report.all_passed(), || report.to_string())?;
            let g = inst.glue(a, c).map_err(e)?;
            let ra = inst.restrict_to_a(&g).map_err(e)?;
            let rc = inst.restrict_to_c(&g).map_err(e)?;
            ensure(
                (ra.pair.x, ra.pair.y, rc.candidate.x, rc.candidate.y) == (a.x, a.y, c.x, c.y),
                || "restrict(glue) differs from the input".into(),
            )?;
            n += 1;
        }
    }
    ensure(n == 25, || format!("{n} combinations"))?;
    for tp in pairs {
        if let Some((x, y)) = inst.reconstruct(tp).map_err(e)? {
            ensure((x, y) == (tp.x, tp.y), || tp.display(inst.lambda().atoms()))?;
        }
    }
    Ok(())
}

fn closure_clauses(regular: &RecollementInstance, zero: &RecollementInstance) -> Outcome {
    let budget = DEFAULT_SUBOBJECT_BUDGET;
    let base = regular.base();
    let simple = pair_str(base, "S(2)", "S(1)")?;
    let proj = pair_str(base, "P(1),S(1)", "S(2)")?;
    let all = pair_str(base, "S(2),P(1),S(1)", "0")?;
    let out = regular
        .check_glue_clause(&simple, &simple, Property::Cohereditary, budget)
        .map_err(e)?;
    ensure(out == ClauseOutcome::Verified, || {
        format!("cohereditary: {out:?}")
    })?;
    let out = regular
        .check_glue_clause(&proj, &all, Property::Tilting, budget)
        .map_err(e)?;
    ensure(out == ClauseOutcome::Verified, || {
        format!("tilting: {out:?}")
    })?;
    for p in [Property::Hereditary, Property::Cotilting] {
        match regular.check_glue_clause(&simple, &simple, p, budget) {
            Err(Error::NotExact {
                functor: Functor::IUpper,
            }) => {}
            other => return Err(format!("{p} in regular mode: {other:?}")),
        }
    }
    let outer = zero
        .base()
        .enumerate_torsion_pairs(Exec::Parallel)
        .map_err(e)?;
    let mut verified = [0usize; 4];
    for a in &outer {
        for c in &outer {
            for r in zero
                .check_glue_closure_properties(a, c, budget)
                .map_err(e)?
            {
                match r.outcome {
                    ClauseOutcome::Verified => {
                        verified[Property::ALL.iter().position(|&p| p == r.property).unwrap()] += 1
                    }
                    ClauseOutcome::InputsLackProperty(_) => {}
                    other => return Err(format!("{} in zero mode: {other:?}", r.property)),
                }
            }
        }
    }
    ensure(verified.iter().all(|&v| v > 0), || {
        format!("verified counts {verified:?}")
    })?;
    let triples = zero.outer_ttf_triples(Exec::Parallel).map_err(e)?;
    ensure(!triples.is_empty(), || "no TTF triples".into())?;
    for a in &triples {
        for c in &triples {
            zero.glue_ttf(a, c).map_err(e)?;
        }
    }
    Ok(())
}

fn constructive_vs_trace(inst: &RecollementInstance) -> Outcome {
    let outer = inst
        .base()
        .enumerate_torsion_pairs(Exec::Parallel)
        .map_err(e)?;
    let lam = inst.lambda();
    let compare = |b: &recollement::Representation, a: &TorsionPair, c: &TorsionPair| -> Outcome {
        let d = inst.glued_decomposition_constructive(b, a, c).map_err(e)?;
        let glued = inst.glue(a, c).map_err(e)?;
        let (t_mono, t_epi) = lam.torsion_sequence(&glued.x, b);
        let tx = lam.decompose(t_mono.source()).map_err(e)?;
        let ty = lam.decompose(t_epi.target()).map_err(e)?;
        ensure(tx == d.torsion_part && ty == d.free_part, || {
            format!(
                "{} / {}",
                d.torsion_part.display(lam.atoms()),
                d.free_part.display(lam.atoms())
            )
        })?;
        // torsion sequences need not split, so only dimension vectors add up
        let dims = |r: &recollement::Representation| r.dims().to_vec();
        let dx = dims(d.mono.source());
        let dy = dims(d.epi.target());
        ensure(
            dims(b)
                .iter()
                .zip(dx.iter().zip(&dy))
                .all(|(t, (p, q))| *t == p + q),
            || "dimension vectors do not add up".into(),
        )?;
        Ok(())
    };
    for b in lam.atoms().atoms() {
        for a in &outer {
            for c in &outer {
                compare(b, a, c)?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for k in 0..100 {
        let (b, _) = lam.random_sum(&mut rng, 4);
        compare(&b, &outer[k % 5], &outer[(k / 5) % 5])?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let inst = t2();
    let zero = product();
    let first: GlueScenario = read_json(&data_dir().join("pairs/glue-first.json")).unwrap();
    let second: GlueScenario = read_json(&data_dir().join("pairs/glue-second.json")).unwrap();
    let restrict: RestrictScenario = read_json(&data_dir().join("pairs/restrict.json")).unwrap();
    let lambda_pairs = inst
        .lambda()
        .enumerate_torsion_pairs(Exec::Parallel)
        .unwrap();

    let criteria: Vec<Criterion> = vec![
        (
            "atom inventory of mod Λ",
            Box::new(|| atom_inventory(&inst)),
        ),
        ("recollement axioms", Box::new(|| recollement_axioms(&inst))),
        (
            "canonical sequences exact",
            Box::new(|| canonical_sequences(&inst)),
        ),
        ("exactness probes", Box::new(|| exactness_probes(&inst))),
        (
            "mod kA2 torsion-pair census",
            Box::new(|| census(&inst, &[&first.a, &second.a])),
        ),
        (
            "gluing golden test 1",
            Box::new(|| glue_golden(&inst, &first, (5, 2))),
        ),
        (
            "gluing golden test 2",
            Box::new(|| glue_golden(&inst, &second, (3, 3))),
        ),
        (
            "restriction golden test",
            Box::new(|| restriction_golden(&inst, &restrict)),
        ),
        (
            "A-side restriction sweep",
            Box::new(|| restrict_a_sweep(&inst, &lambda_pairs)),
        ),
        (
            "biconditional sweeps",
            Box::new(|| biconditional_sweep(&inst, &lambda_pairs)),
        ),
        (
            "roundtrip and reconstruction",
            Box::new(|| roundtrip(&inst, &lambda_pairs)),
        ),
        (
            "closure clauses",
            Box::new(|| closure_clauses(&inst, &zero)),
        ),
        (
            "constructive vs trace decomposition",
            Box::new(|| constructive_vs_trace(&inst)),
        ),
    ];

    println!("acceptance: {} torsion pairs in mod Λ", lambda_pairs.len());
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match run() {
            Ok(()) => println!("[PASS] {:>2}. {name} ({:.2?})", k + 1, t.elapsed()),
            Err(w) => {
                failed += 1;
                println!("[FAIL] {:>2}. {name}: {w}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed in {:.2?}",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
