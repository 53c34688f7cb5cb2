//! Gluing torsion pairs along the recollement and restricting them back.
//!
//! Given pairs `(X', Y')` in `mod A` and `(X'', Y'')` in `mod C`, the glued
//! pair in `mod Λ` is
//!
//! ```text
//! X = { B | i^*(B) ∈ X' and j^*(B) ∈ X'' }
//! Y = { B | i^!(B) ∈ Y' and j^*(B) ∈ Y'' }
//! ```
//!
//! Membership of a sum is membership of every summand, so both classes are
//! computed per `Λ`-atom from the cached functor profiles. Images of classes
//! under a functor are taken as the additive closure of the atoms occurring
//! in the images of the class's atoms.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::atoms::Decomposition;
use crate::error::{Error, Result};
use crate::recollement::{Functor, RecollementInstance};
use crate::rep::{RepMorphism, Representation};
use crate::report::{Check, Report};
use crate::torsion::{Subcategory, TorsionPair, TtfTriple, Verdict};

/// The four closure properties carried over by gluing under exactness
/// hypotheses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    Hereditary,
    Cohereditary,
    Tilting,
    Cotilting,
}

impl Property {
    pub const ALL: [Property; 4] = [
        Property::Cohereditary,
        Property::Hereditary,
        Property::Tilting,
        Property::Cotilting,
    ];

    /// Functors that must be exact for the glued pair to inherit the
    /// property.
    pub fn hypotheses(self) -> &'static [Functor] {
        match self {
            Property::Cohereditary => &[Functor::IShriek],
            Property::Hereditary => &[Functor::IUpper],
            Property::Tilting => &[Functor::IShriek, Functor::JLower],
            Property::Cotilting => &[Functor::IUpper, Functor::JRStar],
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::Hereditary => "hereditary",
            Property::Cohereditary => "cohereditary",
            Property::Tilting => "tilting",
            Property::Cotilting => "cotilting",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", content = "detail", rename_all = "snake_case")]
pub enum ClauseOutcome {
    /// Hypotheses hold, inputs have the property, and so does the glued pair.
    Verified,
    /// Hypotheses hold and inputs have the property, but the glued pair does
    /// not.
    Violated(String),
    /// Some input lacks the property.
    InputsLackProperty(String),
    /// An exactness hypothesis fails on this instance.
    Skipped(String),
    Undetermined(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseResult {
    pub property: Property,
    #[serde(flatten)]
    pub outcome: ClauseOutcome,
}

/// `0 → X_B → B → Y_B → 0` built by pullbacks and a pushout, together with
/// the trace-based decomposition it is compared against.
#[derive(Clone, Debug)]
pub struct GluedDecomposition {
    pub mono: RepMorphism,
    pub epi: RepMorphism,
    pub torsion_part: Decomposition,
    pub free_part: Decomposition,
}

/// The image `(i^*(X), i^!(Y))` of a pair in `mod Λ`.
#[derive(Clone, Debug)]
pub struct RestrictionA {
    pub pair: TorsionPair,
    pub verdict: Verdict,
}

/// The image `(j^*(X), j^*(Y))` together with the condition
/// `j_*j^*(Y) ⊆ Y` that decides whether it is a torsion pair.
#[derive(Clone, Debug)]
pub struct RestrictionC {
    pub candidate: TorsionPair,
    pub verdict: Verdict,
    pub condition: bool,
    pub condition_witness: Option<String>,
}

/// One containment `F(class) ⊆ class` with a witness when it fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Containment {
    pub label: String,
    pub holds: bool,
    pub witness: Option<String>,
}

impl RecollementInstance {
    fn require_pair(&self, tp: &TorsionPair, over_lambda: bool) -> Result<()> {
        let n = if over_lambda {
            self.lambda().atom_count()
        } else {
            self.base().atom_count()
        };
        if tp.x.atom_count() != n || tp.y.atom_count() != n {
            return Err(Error::DimensionMismatch(format!(
                "pair over {} atoms used where {n} atoms are expected",
                tp.x.atom_count()
            )));
        }
        if !tp.is_validated() {
            return Err(Error::Input("torsion pair has not been validated".into()));
        }
        Ok(())
    }

    fn lambda_sub(&self, mask: u64) -> Subcategory {
        Subcategory::from_mask(mask, self.lambda().atom_count()).expect("mask within atom list")
    }

    fn base_sub(&self, mask: u64) -> Subcategory {
        Subcategory::from_mask(mask, self.base().atom_count()).expect("mask within atom list")
    }

    /// `{ B | i^*(B) ∈ a and j^*(B) ∈ c }` as a set of `Λ`-atoms.
    pub fn glue_torsion_class(&self, a: &Subcategory, c: &Subcategory) -> Subcategory {
        self.glue_class(a, c, |p| &p.i_upper)
    }

    /// `{ B | i^!(B) ∈ a and j^*(B) ∈ c }` as a set of `Λ`-atoms.
    pub fn glue_torsionfree_class(&self, a: &Subcategory, c: &Subcategory) -> Subcategory {
        self.glue_class(a, c, |p| &p.i_shriek)
    }

    fn glue_class(
        &self,
        a: &Subcategory,
        c: &Subcategory,
        outer: impl Fn(&crate::recollement::AtomProfile) -> &Decomposition,
    ) -> Subcategory {
        let mask = self
            .profiles()
            .iter()
            .enumerate()
            .filter(|(_, p)| {
                a.contains_all(outer(p).support_mask()) && c.contains_all(p.j_upper.support_mask())
            })
            .fold(0u64, |m, (i, _)| m | 1 << i);
        self.lambda_sub(mask)
    }

    /// The glued torsion pair, validated in `mod Λ`.
    pub fn glue(&self, tp_a: &TorsionPair, tp_c: &TorsionPair) -> Result<TorsionPair> {
        self.require_pair(tp_a, false)?;
        self.require_pair(tp_c, false)?;
        let x = self.glue_torsion_class(&tp_a.x, &tp_c.x);
        let y = self.glue_torsionfree_class(&tp_a.y, &tp_c.y);
        if self.lambda().perp_right(&x) != y {
            return Err(Error::invariant(
                "glue",
                format!(
                    "Y = {} differs from X^⊥ = {}",
                    y.display(self.lambda().atoms()),
                    self.lambda().perp_right(&x).display(self.lambda().atoms())
                ),
            ));
        }
        self.lambda()
            .validate_pair(x, y)?
            .map_err(|w| Error::invariant("glue", format!("glued pair is not a torsion pair: {w}")))
    }

    /// Union of the supports of `F(atom)` over the selected `Λ`-atoms.
    fn image_class(
        &self,
        s: &Subcategory,
        f: impl Fn(&crate::recollement::AtomProfile) -> &Decomposition,
    ) -> Subcategory {
        let mask = s
            .indices()
            .fold(0u64, |m, i| m | f(self.profile(i)).support_mask());
        self.base_sub(mask)
    }

    /// `(i^*(X), i^!(Y))`, always a torsion pair in `mod A`.
    pub fn restrict_to_a(&self, tp: &TorsionPair) -> Result<RestrictionA> {
        self.require_pair(tp, true)?;
        let x = self.image_class(&tp.x, |p| &p.i_upper);
        let y = self.image_class(&tp.y, |p| &p.i_shriek);
        Ok(match self.base().validate_pair(x, y)? {
            Ok(pair) => RestrictionA {
                pair,
                verdict: Verdict::Holds,
            },
            Err(w) => RestrictionA {
                pair: TorsionPair::candidate(x, y),
                verdict: Verdict::Fails(w),
            },
        })
    }

    /// `(j^*(X), j^*(Y))` and the condition `j_*j^*(Y) ⊆ Y`; the two must
    /// agree, and an [`Error::Invariant`] is raised if they do not.
    pub fn restrict_to_c(&self, tp: &TorsionPair) -> Result<RestrictionC> {
        self.require_pair(tp, true)?;
        let x = self.image_class(&tp.x, |p| &p.j_upper);
        let y = self.image_class(&tp.y, |p| &p.j_upper);
        let containment = self.j_rstar_j_upper_in_y(tp)?;
        let verdict = self.base().is_torsion_pair(&x, &y)?;
        if containment.holds != verdict.holds() {
            return Err(Error::invariant(
                "restriction to C",
                format!(
                    "j_*j^*(Y) ⊆ Y is {} but the candidate pair verdict is {verdict}",
                    containment.holds
                ),
            ));
        }
        let candidate = match self.base().validate_pair(x, y)? {
            Ok(p) => p,
            Err(_) => TorsionPair::candidate(x, y),
        };
        Ok(RestrictionC {
            candidate,
            verdict,
            condition: containment.holds,
            condition_witness: containment.witness,
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn containment(
        &self,
        label: &str,
        class_name: &str,
        class: &Subcategory,
        sources: &Subcategory,
        image_of: impl Fn(&crate::recollement::AtomProfile) -> &Decomposition,
        functor_name: &str,
        apply: impl Fn(&Representation) -> Representation,
    ) -> Result<Containment> {
        let base = self.base().atoms();
        let lam = self.lambda().atoms();
        let outer = sources
            .indices()
            .fold(0u64, |m, i| m | image_of(self.profile(i)).support_mask());
        for c in (0..base.len()).filter(|c| outer >> c & 1 == 1) {
            let img = apply(base.atom(c));
            let d = self.lambda().decompose(&img)?;
            if !class.contains_all(d.support_mask()) {
                return Ok(Containment {
                    label: label.into(),
                    holds: false,
                    witness: Some(format!(
                        "{functor_name}({}) = {} ∉ {class_name}",
                        base.name(c),
                        d.display(lam),
                    )),
                });
            }
        }
        Ok(Containment {
            label: label.into(),
            holds: true,
            witness: None,
        })
    }

    fn j_rstar_j_upper_in_y(&self, tp: &TorsionPair) -> Result<Containment> {
        self.containment(
            "j_*j^*(Y) ⊆ Y",
            "Y",
            &tp.y,
            &tp.y,
            |p| &p.j_upper,
            "j_*",
            |c| self.tri().embed(&self.j_rstar(c)),
        )
    }

    /// The four containments `j_*j^*(Y) ⊆ Y`, `j_!j^*(X) ⊆ X`,
    /// `i_*i^!(Y) ⊆ Y` and `i_*i^*(X) ⊆ X`, in that order.
    pub fn containments(&self, tp: &TorsionPair) -> Result<[Containment; 4]> {
        self.require_pair(tp, true)?;
        let embed_j_lower = |c: &Representation| self.tri().embed(&self.j_lower(c));
        let embed_i_star = |c: &Representation| self.tri().embed(&self.i_star(c));
        Ok([
            self.j_rstar_j_upper_in_y(tp)?,
            self.containment(
                "j_!j^*(X) ⊆ X",
                "X",
                &tp.x,
                &tp.x,
                |p| &p.j_upper,
                "j_!",
                embed_j_lower,
            )?,
            self.containment(
                "i_*i^!(Y) ⊆ Y",
                "Y",
                &tp.y,
                &tp.y,
                |p| &p.i_shriek,
                "i_*",
                embed_i_star,
            )?,
            self.containment(
                "i_*i^*(X) ⊆ X",
                "X",
                &tp.x,
                &tp.x,
                |p| &p.i_upper,
                "i_*",
                embed_i_star,
            )?,
        ])
    }

    /// Evaluates the four containments and checks that they agree in pairs:
    /// `j_*j^*(Y) ⊆ Y ⇔ j_!j^*(X) ⊆ X` and `i_*i^!(Y) ⊆ Y ⇔ i_*i^*(X) ⊆ X`.
    pub fn containment_check(&self, tp: &TorsionPair) -> Result<(Report, [Containment; 4])> {
        let cs = self.containments(tp)?;
        let mut report = Report::new("containment biconditionals");
        for (l, r) in [(0, 1), (2, 3)] {
            let name = format!("{} ⇔ {}", cs[l].label, cs[r].label);
            let witnesses = if cs[l].holds == cs[r].holds {
                vec![]
            } else {
                vec![format!(
                    "{} is {}, {} is {}",
                    cs[l].label, cs[l].holds, cs[r].label, cs[r].holds
                )]
            };
            report.push(Check::from_witnesses(name, witnesses));
        }
        Ok((report, cs))
    }

    /// Rebuilds `(X, Y)` from its restrictions by the gluing formulas.
    /// Returns `None` when `j_*j^*(Y) ⊄ Y`, where the formulas need not apply.
    pub fn reconstruct(&self, tp: &TorsionPair) -> Result<Option<(Subcategory, Subcategory)>> {
        let ra = self.restrict_to_a(tp)?;
        let rc = self.restrict_to_c(tp)?;
        if !rc.condition {
            return Ok(None);
        }
        Ok(Some((
            self.glue_torsion_class(&ra.pair.x, &rc.candidate.x),
            self.glue_torsionfree_class(&ra.pair.y, &rc.candidate.y),
        )))
    }

    /// Glue then restrict must return the inputs; the glued pair must also be
    /// rebuilt exactly by [`RecollementInstance::reconstruct`].
    pub fn roundtrip_check(&self, tp_a: &TorsionPair, tp_c: &TorsionPair) -> Result<Report> {
        let glued = self.glue(tp_a, tp_c)?;
        let base = self.base().atoms();
        let lam = self.lambda().atoms();
        let mut report = Report::new(format!(
            "roundtrip of {} and {}",
            tp_a.display(base),
            tp_c.display(base)
        ));
        let ra = self.restrict_to_a(&glued)?;
        let mut w = Vec::new();
        if (ra.pair.x, ra.pair.y) != (tp_a.x, tp_a.y) {
            w.push(format!("(i^*(X), i^!(Y)) = {}", ra.pair.display(base)));
        }
        report.push(Check::from_witnesses(
            "restriction to A recovers the A-side pair",
            w,
        ));
        let rc = self.restrict_to_c(&glued)?;
        let mut w = Vec::new();
        if !rc.condition {
            w.push(rc.condition_witness.clone().unwrap_or_default());
        }
        if (rc.candidate.x, rc.candidate.y) != (tp_c.x, tp_c.y) {
            w.push(format!("(j^*(X), j^*(Y)) = {}", rc.candidate.display(base)));
        }
        report.push(Check::from_witnesses(
            "restriction to C recovers the C-side pair",
            w,
        ));
        let mut w = Vec::new();
        match self.reconstruct(&glued)? {
            Some((x, y)) if (x, y) == (glued.x, glued.y) => {}
            Some((x, y)) => w.push(format!("rebuilt ({}, {})", x.display(lam), y.display(lam))),
            None => w.push("j_*j^*(Y) ⊄ Y".into()),
        }
        report.push(Check::from_witnesses(
            "membership formulas rebuild the glued pair",
            w,
        ));
        Ok(report)
    }

    /// Builds `0 → X_B → B → Y_B → 0` for the glued pair by the explicit
    /// sequence of pullbacks and a pushout:
    ///
    /// 1. `K` = pullback of `Im η_B ↪ j_*j^*(B)` and `j_*(X'') ↪ j_*j^*(B)`,
    ///    where `0 → X'' → j^*(B) → Y'' → 0` is the `C`-side decomposition;
    /// 2. `M` = pullback of `B ↠ Im η_B` and `K ↪ Im η_B`;
    /// 3. `X_B` = pullback of the unit `M → i_*i^*(M)` and
    ///    `i_*(X') ↪ i_*i^*(M)`, from the `A`-side decomposition of `i^*(M)`;
    /// 4. `Y_B` = pushout of `M ↪ B` and `M → i_*i^*(M) ↠ i_*(Y')`.
    ///
    /// The result is checked to be short exact, to have its end terms in the
    /// glued classes, and to agree with the trace decomposition of `B`.
    pub fn glued_decomposition_constructive(
        &self,
        b: &Representation,
        tp_a: &TorsionPair,
        tp_c: &TorsionPair,
    ) -> Result<GluedDecomposition> {
        let glued = self.glue(tp_a, tp_c)?;
        let tri = self.tri();
        let lam = self.lambda().algebra();
        let base = self.base().algebra();
        let bt = tri.view(b);
        let step = |label: &str, r: Result<crate::rep::Square>| {
            r.map_err(|e| Error::invariant(label, e.to_string()))
        };

        // 1
        let eta = tri.embed_morphism(&self.unit_eta(&bt));
        let im = lam.image(&eta);
        let (_, t_incl) = base.trace(self.base().atoms(), tp_c.x.mask(), &bt.y);
        let (_, h) = base.cokernel(&t_incl);
        let jh = tri.embed_morphism(&self.j_rstar_mor(&h));
        let (_, k0) = lam.kernel(&jh);
        let k_sq = step("pullback K", lam.pullback(&im.mono, &k0))?;
        // 2
        let m_sq = step("pullback M", lam.pullback(&im.epi, &k_sq.left))?;
        let m_incl = m_sq.left;
        if !m_incl.is_mono() {
            return Err(Error::invariant("pullback M", "M → B is not mono"));
        }
        // 3
        let mt = tri.view(m_incl.source());
        let unit = tri.embed_morphism(&self.unit_i_upper(&mt));
        let i_upper_m = self.i_upper(&mt);
        let (_, xa_incl) = base.trace(self.base().atoms(), tp_a.x.mask(), &i_upper_m);
        let (_, ya_proj) = base.cokernel(&xa_incl);
        let ixa = tri.embed_morphism(&self.i_star_mor(&xa_incl));
        let x_sq = step("pullback X", lam.pullback(&unit, &ixa))?;
        let mono = lam.compose(&m_incl, &x_sq.left)?;
        // 4
        let to_ya = lam.compose(&tri.embed_morphism(&self.i_star_mor(&ya_proj)), &unit)?;
        let y_sq = step("pushout Y", lam.pushout(&m_incl, &to_ya))?;
        let epi = y_sq.left;

        if !lam.is_short_exact(&mono, &epi) {
            return Err(Error::invariant(
                "pushout Y",
                "0 → X_B → B → Y_B → 0 is not exact",
            ));
        }
        let torsion_part = self.lambda().decompose(mono.source())?;
        let free_part = self.lambda().decompose(epi.target())?;
        let lam_atoms = self.lambda().atoms();
        if !glued.x.contains_all(torsion_part.support_mask()) {
            return Err(Error::invariant(
                "pullback X",
                format!(
                    "X_B = {} is not in the glued X",
                    torsion_part.display(lam_atoms)
                ),
            ));
        }
        if !glued.y.contains_all(free_part.support_mask()) {
            return Err(Error::invariant(
                "pushout Y",
                format!(
                    "Y_B = {} is not in the glued Y",
                    free_part.display(lam_atoms)
                ),
            ));
        }
        let (t_mono, t_epi) = self.lambda().torsion_sequence(&glued.x, b);
        let trace_x = self.lambda().decompose(t_mono.source())?;
        let trace_y = self.lambda().decompose(t_epi.target())?;
        if trace_x != torsion_part || trace_y != free_part {
            return Err(Error::invariant(
                "trace comparison",
                format!(
                    "constructed {} / {} but trace gives {} / {}",
                    torsion_part.display(lam_atoms),
                    free_part.display(lam_atoms),
                    trace_x.display(lam_atoms),
                    trace_y.display(lam_atoms)
                ),
            ));
        }
        Ok(GluedDecomposition {
            mono,
            epi,
            torsion_part,
            free_part,
        })
    }

    /// Checks whether the glued pair inherits `property` from the inputs.
    /// Fails with [`Error::NotExact`] when an exactness hypothesis of the
    /// clause does not hold on this instance.
    pub fn check_glue_clause(
        &self,
        tp_a: &TorsionPair,
        tp_c: &TorsionPair,
        property: Property,
        budget: usize,
    ) -> Result<ClauseOutcome> {
        self.require_exact(property.hypotheses())?;
        let base = self.base();
        let eval = |cat: &crate::category::ModCategory, tp: &TorsionPair| -> Result<Verdict> {
            match property {
                Property::Hereditary => cat.is_hereditary(tp, budget),
                Property::Cohereditary => cat.is_cohereditary(tp, budget),
                Property::Tilting => cat.is_tilting(tp),
                Property::Cotilting => cat.is_cotilting(tp),
            }
        };
        for (side, tp) in [("A", tp_a), ("C", tp_c)] {
            match eval(base, tp)? {
                Verdict::Holds => {}
                Verdict::Fails(w) => {
                    return Ok(ClauseOutcome::InputsLackProperty(format!(
                        "{side}-side pair: {w}"
                    )))
                }
                Verdict::Undetermined(w) => return Ok(ClauseOutcome::Undetermined(w)),
            }
        }
        let glued = self.glue(tp_a, tp_c)?;
        Ok(match eval(self.lambda(), &glued)? {
            Verdict::Holds => ClauseOutcome::Verified,
            Verdict::Fails(w) => ClauseOutcome::Violated(w),
            Verdict::Undetermined(w) => ClauseOutcome::Undetermined(w),
        })
    }

    /// All four closure clauses; clauses whose exactness hypotheses fail are
    /// reported as skipped with the failing functor named.
    pub fn check_glue_closure_properties(
        &self,
        tp_a: &TorsionPair,
        tp_c: &TorsionPair,
        budget: usize,
    ) -> Result<Vec<ClauseResult>> {
        Property::ALL
            .into_iter()
            .map(|property| {
                let outcome = match self.check_glue_clause(tp_a, tp_c, property, budget) {
                    Err(Error::NotExact { functor }) => {
                        ClauseOutcome::Skipped(format!("{functor} not exact"))
                    }
                    other => other?,
                };
                Ok(ClauseResult { property, outcome })
            })
            .collect()
    }

    /// Glues TTF triples; needs `i^*` and `i^!` exact. The third class is
    /// `{ B | i^*(B) ∈ Z' and j^*(B) ∈ Z'' }`.
    pub fn glue_ttf(&self, a: &TtfTriple, c: &TtfTriple) -> Result<TtfTriple> {
        self.require_exact(&[Functor::IUpper, Functor::IShriek])?;
        let left = self.glue(&a.left(), &c.left())?;
        let right = self.glue(&a.right(), &c.right())?;
        if left.y != right.x {
            return Err(Error::invariant(
                "TTF glue",
                "the glued middle class differs between the two pairs",
            ));
        }
        let z = self.glue_torsion_class(&a.z, &c.z);
        if z != right.y {
            return Err(Error::invariant(
                "TTF glue",
                "the third class from i^* differs from the one from i^!",
            ));
        }
        self.lambda()
            .validate_ttf(left.x, left.y, z)?
            .map_err(|w| Error::invariant("TTF glue", w))
    }

    /// All TTF triples of `mod A` (equivalently of `mod C`).
    pub fn outer_ttf_triples(&self, exec: crate::par::Exec) -> Result<Vec<TtfTriple>> {
        let pairs = self.base().enumerate_torsion_pairs(exec)?;
        let mut out = Vec::new();
        for l in &pairs {
            for r in pairs.iter().filter(|r| r.x == l.y) {
                out.push(TtfTriple {
                    x: l.x,
                    y: l.y,
                    z: r.y,
                });
            }
        }
        Ok(out)
    }
}
