use std::fs;

use recollement::io::{read_json, GlueScenario, PairSpec, RestrictScenario};
use recollement::{Error, Result, TorsionPair};
use serde_json::json;

use crate::commands::{scenario_instance, write_restriction};
use crate::context::{Context, Output};

const EXPECTED: &str = "expected/example-3-6.txt";

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

struct Golden {
    out: Output,
    failures: Vec<String>,
}

impl Golden {
    fn check(&mut self, name: &str, ok: bool) {
        self.out
            .line(format!("[{}] {name}", if ok { "PASS" } else { "FAIL" }));
        if !ok {
            self.failures.push(name.to_string());
        }
    }
}

fn pair_from(spec: &PairSpec, atoms: &recollement::AtomList) -> Result<TorsionPair> {
    let (x, y) = spec.subcategories(atoms)?;
    Ok(TorsionPair::candidate(x, y))
}

fn validated(cat: &recollement::ModCategory, spec: &PairSpec) -> Result<TorsionPair> {
    let (x, y) = spec.subcategories(cat.atoms())?;
    cat.validate_pair(x, y)?
        .map_err(|w| Error::Input(format!("shipped pair is not a torsion pair: {w}")))
}

/// Reproduces the worked example over kA2 and compares the transcript with
/// the shipped expected output.
pub fn example(ctx: &Context, bless: bool) -> Result<Output> {
    let first: GlueScenario = read_json(&ctx.data_dir.join("pairs/glue-first.json"))?;
    let second: GlueScenario = read_json(&ctx.data_dir.join("pairs/glue-second.json"))?;
    let restrict: RestrictScenario = read_json(&ctx.data_dir.join("pairs/restrict.json"))?;
    let inst = scenario_instance(ctx, &first.instance)?;
    let (base, lam) = (inst.base(), inst.lambda());
    let mut g = Golden {
        out: Output::new(),
        failures: Vec::new(),
    };

    g.out
        .line(format!("mod Λ for {} ({} mode)", inst.name(), inst.mode()));
    g.out
        .line(format!("  atoms: {}", lam.atoms().names().join(", ")));
    g.check(
        "11 indecomposables of mod Λ with the expected labels",
        lam.atoms().names() == LAMBDA_ATOMS,
    );
    g.check("fingerprint matrix invertible", lam.atoms().is_certified());
    let axioms = inst.verify_recollement();
    g.check("recollement axioms on the atom grid", axioms.all_passed());

    let census = base.enumerate_torsion_pairs(ctx.exec)?;
    g.out.line(format!(
        "torsion pairs in mod {}: {}",
        base.algebra().name(),
        census.len()
    ));
    for tp in &census {
        g.out.line(format!("  {}", tp.display(base.atoms())));
    }
    g.check("mod kA2 has exactly 5 torsion pairs", census.len() == 5);
    for spec in [&first.a, &second.a] {
        let tp = pair_from(spec, base.atoms())?;
        g.check(
            &format!("{} is among them", tp.display(base.atoms())),
            census.iter().any(|c| (c.x, c.y) == (tp.x, tp.y)),
        );
    }

    let mut glued_pairs = Vec::new();
    for sc in [&first, &second] {
        let a = validated(base, &sc.a)?;
        let c = validated(base, &sc.c)?;
        let glued = inst.glue(&a, &c)?;
        g.out.line(format!(
            "glue {} with {}",
            a.display(base.atoms()),
            c.display(base.atoms())
        ));
        g.out
            .line(format!("  X = {}", glued.x.display(lam.atoms())));
        g.out
            .line(format!("  Y = {}", glued.y.display(lam.atoms())));
        let expected = pair_from(&sc.expected, lam.atoms())?;
        g.check(
            "glued pair matches the expected pair",
            (glued.x, glued.y) == (expected.x, expected.y),
        );
        g.check("glued pair is a torsion pair", glued.is_validated());
        glued_pairs.push(glued);
    }

    let tp = validated(lam, &restrict.pair)?;
    write_restriction(&mut g.out, &inst, &tp)?;
    let ra = inst.restrict_to_a(&tp)?;
    let rc = inst.restrict_to_c(&tp)?;
    let ea = pair_from(&restrict.expected_a, base.atoms())?;
    let ec = pair_from(&restrict.expected_c_candidate, base.atoms())?;
    g.check(
        "A-side restriction is the expected torsion pair",
        ra.verdict.holds() && (ra.pair.x, ra.pair.y) == (ea.x, ea.y),
    );
    g.check(
        "j_*j^*(Y) ⊆ Y fails as expected",
        rc.condition == restrict.expected_c_condition,
    );
    g.check(
        "C-side candidate is the expected pair and is not a torsion pair",
        (rc.candidate.x, rc.candidate.y) == (ec.x, ec.y) && rc.verdict.fails(),
    );

    g.out.line("pairs of mod Λ:");
    for (label, tp) in [
        ("first glued", &glued_pairs[0]),
        ("second glued", &glued_pairs[1]),
        ("restricted", &tp),
    ] {
        g.out
            .line(format!("  {label}: {}", tp.display(lam.atoms())));
    }
    g.out.line(format!(
        "  A-side restriction: {}",
        ra.pair.display(base.atoms())
    ));

    let path = ctx.data_dir.join(EXPECTED);
    let transcript = g.out.text.clone();
    if bless {
        fs::write(&path, &transcript)
            .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        g.out.line(format!("wrote {}", path.display()));
    } else {
        let expected = fs::read_to_string(&path)
            .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        let diff: Vec<String> = expected
            .lines()
            .zip(transcript.lines())
            .enumerate()
            .filter(|(_, (e, a))| e != a)
            .map(|(i, (e, a))| format!("line {}: expected `{e}`, got `{a}`", i + 1))
            .collect();
        let same = diff.is_empty() && expected.lines().count() == transcript.lines().count();
        for d in diff.iter().take(5) {
            g.out.line(format!("  {d}"));
        }
        g.check(&format!("output matches {EXPECTED}"), same);
    }

    if g.failures.is_empty() {
        g.out.line("ALL GOLDEN CHECKS PASS");
    } else {
        g.out
            .line(format!("{} GOLDEN CHECKS FAILED", g.failures.len()));
        g.out.fail(1);
    }
    g.out.json = json!({
        "passed": g.failures.is_empty(),
        "failures": g.failures,
        "glued": glued_pairs.iter().map(|p| PairSpec::from_pair(p, lam.atoms())).collect::<Vec<_>>(),
        "restricted_a": PairSpec::from_pair(&ra.pair, base.atoms()),
    });
    Ok(g.out)
}
