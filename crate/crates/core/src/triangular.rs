//! Triangular matrix algebras `Λ = (A M; 0 A)` for `M = A` (regular) and
//! `M = 0` (product), and their modules written as triples `(X, Y, f)` with
//! `f: M ⊗ Y → X`.
//!
//! A triple is the same thing as a representation of the bound quiver built
//! from two copies of the quiver of `A` (an `X` copy and a `Y` copy) joined by
//! one arrow `f:v` from `Y:v` to `X:v` per vertex, with the commutativity
//! relations `a_X ∘ f_v = f_w ∘ a_Y`. The `f` arrows are absent for `M = 0`.
//! [`TriangularAlgebra::embed`] and [`TriangularAlgebra::view`] translate
//! between the two descriptions, so every Hom/kernel/subobject computation
//! in `mod Λ` goes through the generic representation code.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Fp, Matrix};
use crate::quiver::{Algebra, Arrow, Quiver, Relation};
use crate::rep::{RepMorphism, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BimoduleMode {
    /// `M = A`: the triangular matrix algebra `T₂(A)`.
    Regular,
    /// `M = 0`: the product `A × A`.
    Zero,
}

impl fmt::Display for BimoduleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BimoduleMode::Regular => "regular",
            BimoduleMode::Zero => "zero",
        })
    }
}

#[derive(Clone, Debug)]
pub struct TriangularAlgebra {
    base: Algebra,
    mode: BimoduleMode,
    lambda: Algebra,
}

/// A `Λ`-module `(X, Y, f: M ⊗ Y → X)`; `f` is stored as a map `Y → X` and
/// is zero when `M = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriModule {
    pub x: Representation,
    pub y: Representation,
    pub f: RepMorphism,
}

/// A pair `(a: X → X', b: Y → Y')` with `a ∘ f = f' ∘ b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriMorphism {
    pub source: TriModule,
    pub target: TriModule,
    pub a: RepMorphism,
    pub b: RepMorphism,
}

impl TriangularAlgebra {
    pub fn new(base: Algebra, mode: BimoduleMode) -> Result<Self> {
        let q = base.quiver();
        let n = q.vertex_count();
        let m = q.arrows().len();
        let mut vertices = Vec::with_capacity(2 * n);
        vertices.extend(q.vertices().iter().map(|v| format!("X:{v}")));
        vertices.extend(q.vertices().iter().map(|v| format!("Y:{v}")));
        let mut arrows = Vec::with_capacity(2 * m + n);
        for (copy, shift) in [("X", 0), ("Y", n)] {
            arrows.extend(q.arrows().iter().map(|a| Arrow {
                name: format!("{copy}:{}", a.name),
                source: a.source + shift,
                target: a.target + shift,
            }));
        }
        if mode == BimoduleMode::Regular {
            arrows.extend(q.vertices().iter().enumerate().map(|(v, label)| Arrow {
                name: format!("f:{label}"),
                source: n + v,
                target: v,
            }));
        }
        let quiver = Quiver::new(vertices, arrows)?;

        let mut relations = Vec::new();
        for shift in [0, m] {
            for r in base.relations() {
                relations.push(Relation {
                    terms: r
                        .terms
                        .iter()
                        .map(|(c, path)| (*c, path.iter().map(|&a| a + shift).collect()))
                        .collect(),
                });
            }
        }
        if mode == BimoduleMode::Regular {
            let p = base.prime();
            for (i, a) in q.arrows().iter().enumerate() {
                let f_src = 2 * m + a.source;
                let f_tgt = 2 * m + a.target;
                relations.push(Relation {
                    terms: vec![
                        (Fp::new(1, p)?, vec![f_src, i]),
                        (Fp::new(-1, p)?, vec![m + i, f_tgt]),
                    ],
                });
            }
        }
        let name = match mode {
            BimoduleMode::Regular => format!("T2({})", base.name()),
            BimoduleMode::Zero => format!("{0}x{0}", base.name()),
        };
        let lambda = Algebra::new(name, base.prime(), quiver, relations)?;
        Ok(TriangularAlgebra { base, mode, lambda })
    }

    pub fn base(&self) -> &Algebra {
        &self.base
    }

    pub fn lambda(&self) -> &Algebra {
        &self.lambda
    }

    pub fn mode(&self) -> BimoduleMode {
        self.mode
    }

    fn n(&self) -> usize {
        self.base.vertex_count()
    }

    fn m(&self) -> usize {
        self.base.arrow_count()
    }

    /// Validates a triple. `f_maps` are the per-vertex blocks of `f: Y → X`.
    pub fn module(
        &self,
        x: Representation,
        y: Representation,
        f_maps: Vec<Matrix>,
    ) -> Result<TriModule> {
        self.base.validate_representation(&x)?;
        self.base.validate_representation(&y)?;
        let f = RepMorphism::new(&self.base, y.clone(), x.clone(), f_maps)?;
        if self.mode == BimoduleMode::Zero && !f.is_zero() {
            return Err(Error::Input("structure map must vanish when M = 0".into()));
        }
        Ok(TriModule { x, y, f })
    }

    /// `(X, Y, 0)`.
    pub fn split_module(&self, x: Representation, y: Representation) -> TriModule {
        let f = self.base.zero_morphism(&y, &x);
        TriModule { x, y, f }
    }

    pub fn zero_module(&self) -> TriModule {
        let z = Representation::zero(&self.base);
        self.split_module(z.clone(), z)
    }

    /// Validates the compatibility square `a ∘ f = f' ∘ b`.
    pub fn morphism(
        &self,
        source: TriModule,
        target: TriModule,
        a: RepMorphism,
        b: RepMorphism,
    ) -> Result<TriMorphism> {
        if a.source() != &source.x
            || a.target() != &target.x
            || b.source() != &source.y
            || b.target() != &target.y
        {
            return Err(Error::DimensionMismatch(
                "triple morphism components have wrong endpoints".into(),
            ));
        }
        let lhs = self.base.compose(&a, &source.f)?;
        let rhs = self.base.compose(&target.f, &b)?;
        if lhs.maps() != rhs.maps() {
            return Err(Error::NotAMorphism {
                arrow: "f (triple compatibility)".into(),
            });
        }
        Ok(TriMorphism {
            source,
            target,
            a,
            b,
        })
    }

    /// The triple as a representation of the `Λ` quiver.
    pub fn embed(&self, t: &TriModule) -> Representation {
        let mut dims = t.x.dim_vector();
        dims.extend_from_slice(t.y.dims());
        let mut maps: Vec<Matrix> = t.x.maps().to_vec();
        maps.extend_from_slice(t.y.maps());
        if self.mode == BimoduleMode::Regular {
            maps.extend_from_slice(t.f.maps());
        }
        Representation::new_unchecked(dims, maps)
    }

    /// Inverse of [`TriangularAlgebra::embed`].
    pub fn view(&self, r: &Representation) -> TriModule {
        let (n, m) = (self.n(), self.m());
        let x = Representation::new_unchecked(r.dims()[..n].to_vec(), r.maps()[..m].to_vec());
        let y = Representation::new_unchecked(r.dims()[n..].to_vec(), r.maps()[m..2 * m].to_vec());
        let f = match self.mode {
            BimoduleMode::Regular => {
                RepMorphism::new_unchecked(y.clone(), x.clone(), r.maps()[2 * m..].to_vec())
            }
            BimoduleMode::Zero => self.base.zero_morphism(&y, &x),
        };
        TriModule { x, y, f }
    }

    pub fn embed_morphism(&self, g: &TriMorphism) -> RepMorphism {
        let mut maps = g.a.maps().to_vec();
        maps.extend_from_slice(g.b.maps());
        RepMorphism::new_unchecked(self.embed(&g.source), self.embed(&g.target), maps)
    }

    pub fn view_morphism(&self, g: &RepMorphism) -> TriMorphism {
        let n = self.n();
        let source = self.view(g.source());
        let target = self.view(g.target());
        let a =
            RepMorphism::new_unchecked(source.x.clone(), target.x.clone(), g.maps()[..n].to_vec());
        let b =
            RepMorphism::new_unchecked(source.y.clone(), target.y.clone(), g.maps()[n..].to_vec());
        TriMorphism {
            source,
            target,
            a,
            b,
        }
    }

    /// Basis of `Hom_Λ(b1, b2)`, solved as one joint linear system.
    pub fn hom_tri(&self, b1: &TriModule, b2: &TriModule) -> Vec<TriMorphism> {
        self.lambda
            .hom_basis(&self.embed(b1), &self.embed(b2))
            .iter()
            .map(|g| self.view_morphism(g))
            .collect()
    }

    pub fn direct_sum(&self, summands: &[TriModule]) -> TriModule {
        let reps: Vec<Representation> = summands.iter().map(|t| self.embed(t)).collect();
        self.view(&self.lambda.direct_sum(&reps).object)
    }

    pub fn identity(&self, t: &TriModule) -> TriMorphism {
        TriMorphism {
            source: t.clone(),
            target: t.clone(),
            a: self.base.identity(&t.x),
            b: self.base.identity(&t.y),
        }
    }

    pub fn compose(&self, g: &TriMorphism, f: &TriMorphism) -> Result<TriMorphism> {
        Ok(TriMorphism {
            source: f.source.clone(),
            target: g.target.clone(),
            a: self.base.compose(&g.a, &f.a)?,
            b: self.base.compose(&g.b, &f.b)?,
        })
    }
}

impl TriModule {
    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl TriMorphism {
    pub fn is_iso(&self) -> bool {
        self.a.is_iso() && self.b.is_iso()
    }
}
