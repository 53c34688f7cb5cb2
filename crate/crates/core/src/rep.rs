//! Finite-dimensional representations of a bound quiver and the abelian
//! structure of their category: Hom spaces, kernels, cokernels, images,
//! direct sums, pullbacks and pushouts.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quiver::{Algebra, Relation};

/// A representation: one vector space `F_p^{dims[v]}` per vertex and one
/// matrix of shape `dims[target] × dims[source]` per arrow.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Representation {
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep{:?}{:?}", self.dims, self.maps)
    }
}

impl Representation {
    /// Validates shapes and relations.
    pub fn new(alg: &Algebra, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        if dims.len() != alg.vertex_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} vertex dimensions given, algebra has {} vertices",
                dims.len(),
                alg.vertex_count()
            )));
        }
        if maps.len() != alg.arrow_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} arrow maps given, algebra has {} arrows",
                maps.len(),
                alg.arrow_count()
            )));
        }
        for (a, m) in alg.quiver().arrows().iter().zip(&maps) {
            if m.shape() != (dims[a.target], dims[a.source]) || m.modulus() != alg.prime() {
                return Err(Error::DimensionMismatch(format!(
                    "arrow `{}` needs a {}x{} matrix over F_{}, got {}x{} over F_{}",
                    a.name,
                    dims[a.target],
                    dims[a.source],
                    alg.prime(),
                    m.rows(),
                    m.cols(),
                    m.modulus()
                )));
            }
        }
        let rep = Representation { dims, maps };
        alg.validate_representation(&rep)?;
        Ok(rep)
    }

    pub(crate) fn new_unchecked(dims: Vec<usize>, maps: Vec<Matrix>) -> Self {
        Representation { dims, maps }
    }

    pub fn zero(alg: &Algebra) -> Self {
        let dims = vec![0; alg.vertex_count()];
        let maps = alg
            .quiver()
            .arrows()
            .iter()
            .map(|_| Matrix::zeros(alg.prime(), 0, 0))
            .collect();
        Representation { dims, maps }
    }

    /// The simple representation at vertex `v`.
    pub fn simple(alg: &Algebra, v: usize) -> Self {
        let mut dims = vec![0; alg.vertex_count()];
        dims[v] = 1;
        let maps = alg
            .quiver()
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(alg.prime(), dims[a.target], dims[a.source]))
            .collect();
        Representation { dims, maps }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> Vec<usize> {
        self.dims.clone()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }
}

/// A family of vertex maps commuting with the arrow actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMorphism {
    source: Representation,
    target: Representation,
    maps: Vec<Matrix>,
}

impl RepMorphism {
    /// Checks shapes and every commuting square.
    pub fn new(
        alg: &Algebra,
        source: Representation,
        target: Representation,
        maps: Vec<Matrix>,
    ) -> Result<Self> {
        if maps.len() != alg.vertex_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} vertex maps given, algebra has {} vertices",
                maps.len(),
                alg.vertex_count()
            )));
        }
        for (v, m) in maps.iter().enumerate() {
            if m.shape() != (target.dims[v], source.dims[v]) {
                return Err(Error::DimensionMismatch(format!(
                    "vertex {} map must be {}x{}, got {}x{}",
                    alg.quiver().vertices()[v],
                    target.dims[v],
                    source.dims[v],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        for (i, a) in alg.quiver().arrows().iter().enumerate() {
            let lhs = &maps[a.target] * &source.maps[i];
            let rhs = &target.maps[i] * &maps[a.source];
            if lhs != rhs {
                return Err(Error::NotAMorphism {
                    arrow: a.name.clone(),
                });
            }
        }
        Ok(RepMorphism {
            source,
            target,
            maps,
        })
    }

    pub(crate) fn new_unchecked(
        source: Representation,
        target: Representation,
        maps: Vec<Matrix>,
    ) -> Self {
        RepMorphism {
            source,
            target,
            maps,
        }
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, v: usize) -> &Matrix {
        &self.maps[v]
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    pub fn is_mono(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_epi(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    /// All vertex-map entries as one column vector.
    pub fn to_vector(&self) -> Matrix {
        let p = self.maps.first().map_or(2, Matrix::modulus);
        let data: Vec<i64> = self
            .maps
            .iter()
            .flat_map(|m| m.data().iter().map(|&v| v as i64))
            .collect();
        Matrix::new(p, data.len(), 1, &data).expect("prime already checked")
    }

    pub fn scale(&self, s: u32) -> RepMorphism {
        RepMorphism {
            maps: self.maps.iter().map(|m| m.scale(s)).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &RepMorphism) -> Result<RepMorphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::DimensionMismatch(
                "adding morphisms with different endpoints".into(),
            ));
        }
        Ok(RepMorphism {
            maps: self
                .maps
                .iter()
                .zip(&other.maps)
                .map(|(a, b)| a + b)
                .collect(),
            ..self.clone()
        })
    }

    pub fn neg(&self) -> RepMorphism {
        RepMorphism {
            maps: self.maps.iter().map(|m| -m).collect(),
            ..self.clone()
        }
    }
}

/// Result of an image factorisation `f = mono ∘ epi`.
#[derive(Clone, Debug)]
pub struct Image {
    pub object: Representation,
    pub epi: RepMorphism,
    pub mono: RepMorphism,
}

/// `⊕ summands` with its canonical injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub object: Representation,
    pub injections: Vec<RepMorphism>,
    pub projections: Vec<RepMorphism>,
}

/// A commuting square `P → A, P → B` (pullback) or `A → Q, B → Q` (pushout).
#[derive(Clone, Debug)]
pub struct Square {
    pub object: Representation,
    pub left: RepMorphism,
    pub right: RepMorphism,
}

fn eval_relation(alg: &Algebra, rel: &Relation, rep: &Representation) -> Matrix {
    let arrows = alg.quiver().arrows();
    let first = &rel.terms[0].1;
    let (s, t) = (
        arrows[first[0]].source,
        arrows[*first.last().unwrap()].target,
    );
    let mut acc = Matrix::zeros(alg.prime(), rep.dims[t], rep.dims[s]);
    for (c, path) in &rel.terms {
        let mut m = Matrix::identity(alg.prime(), rep.dims[s]);
        for &a in path {
            m = &rep.maps[a] * &m;
        }
        acc = &acc + &m.scale(c.value());
    }
    acc
}

impl Algebra {
    /// Fails with the offending relation when one does not act as zero.
    pub fn validate_representation(&self, rep: &Representation) -> Result<()> {
        for rel in self.relations() {
            if !eval_relation(self, rel, rep).is_zero() {
                return Err(Error::RelationViolated {
                    relation: rel.display(self.quiver()),
                });
            }
        }
        Ok(())
    }

    pub fn identity(&self, m: &Representation) -> RepMorphism {
        let maps = m
            .dims
            .iter()
            .map(|&d| Matrix::identity(self.prime(), d))
            .collect();
        RepMorphism::new_unchecked(m.clone(), m.clone(), maps)
    }

    pub fn zero_morphism(&self, source: &Representation, target: &Representation) -> RepMorphism {
        let maps = (0..self.vertex_count())
            .map(|v| Matrix::zeros(self.prime(), target.dims[v], source.dims[v]))
            .collect();
        RepMorphism::new_unchecked(source.clone(), target.clone(), maps)
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: &RepMorphism, f: &RepMorphism) -> Result<RepMorphism> {
        if f.target.dims != g.source.dims {
            return Err(Error::DimensionMismatch(format!(
                "compose: f lands in {:?}, g starts at {:?}",
                f.target.dims, g.source.dims
            )));
        }
        let maps = g.maps.iter().zip(&f.maps).map(|(a, b)| a * b).collect();
        Ok(RepMorphism::new_unchecked(
            f.source.clone(),
            g.target.clone(),
            maps,
        ))
    }

    /// A basis of `Hom(m, n)`, in the canonical order of the null-space of
    /// the commuting-square system.
    pub fn hom_basis(&self, m: &Representation, n: &Representation) -> Vec<RepMorphism> {
        let p = self.prime();
        let nv = self.vertex_count();
        let mut offsets = Vec::with_capacity(nv + 1);
        let mut total = 0;
        for v in 0..nv {
            offsets.push(total);
            total += n.dims[v] * m.dims[v];
        }
        offsets.push(total);
        let var = |v: usize, r: usize, c: usize| offsets[v] + r * m.dims[v] + c;

        let eq_count: usize = self
            .quiver()
            .arrows()
            .iter()
            .map(|a| n.dims[a.target] * m.dims[a.source])
            .sum();
        let mut sys = Matrix::zeros(p, eq_count, total);
        let mut row = 0;
        for (i, a) in self.quiver().arrows().iter().enumerate() {
            let (v, w) = (a.source, a.target);
            let ma = &m.maps[i];
            let na = &n.maps[i];
            for r in 0..n.dims[w] {
                for c in 0..m.dims[v] {
                    // (X_w · M_a)[r, c]
                    for k in 0..m.dims[w] {
                        let col = var(w, r, k);
                        let cur = sys.get(row, col) as i64;
                        sys.set(row, col, cur + ma.get(k, c) as i64);
                    }
                    // − (N_a · X_v)[r, c]
                    for k in 0..n.dims[v] {
                        let col = var(v, k, c);
                        let cur = sys.get(row, col) as i64;
                        sys.set(row, col, cur - na.get(r, k) as i64);
                    }
                    row += 1;
                }
            }
        }
        let null = sys.nullspace_basis();
        (0..null.cols())
            .map(|j| {
                let maps = (0..nv)
                    .map(|v| {
                        let mut x = Matrix::zeros(p, n.dims[v], m.dims[v]);
                        for r in 0..n.dims[v] {
                            for c in 0..m.dims[v] {
                                x.set(r, c, null.get(var(v, r, c), j) as i64);
                            }
                        }
                        x
                    })
                    .collect();
                RepMorphism::new_unchecked(m.clone(), n.clone(), maps)
            })
            .collect()
    }

    pub fn hom_dim(&self, m: &Representation, n: &Representation) -> usize {
        self.hom_basis(m, n).len()
    }

    /// `Σ coeffs[i] · basis[i]`; all basis elements must share endpoints.
    pub fn linear_combination(
        &self,
        source: &Representation,
        target: &Representation,
        basis: &[RepMorphism],
        coeffs: &[u32],
    ) -> RepMorphism {
        let mut acc = self.zero_morphism(source, target);
        for (b, &c) in basis.iter().zip(coeffs) {
            if c != 0 {
                acc = acc.add(&b.scale(c)).expect("shared endpoints");
            }
        }
        acc
    }

    /// The subrepresentation of `m` spanned at each vertex by the columns of
    /// `bases[v]`, together with its inclusion. Fails when the family is not
    /// stable under the arrows.
    pub fn subrepresentation(
        &self,
        m: &Representation,
        bases: Vec<Matrix>,
    ) -> Result<(Representation, RepMorphism)> {
        let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
        let mut maps = Vec::with_capacity(self.arrow_count());
        for (i, a) in self.quiver().arrows().iter().enumerate() {
            let image = &m.maps[i] * &bases[a.source];
            let induced = Matrix::solve(&bases[a.target], &image)?.ok_or_else(|| {
                Error::Input(format!(
                    "subspace family is not stable under arrow `{}`",
                    a.name
                ))
            })?;
            maps.push(induced);
        }
        let sub = Representation::new_unchecked(dims, maps);
        let incl = RepMorphism::new_unchecked(sub.clone(), m.clone(), bases);
        Ok((sub, incl))
    }

    /// Quotient of `m` by the image of a monomorphism-like family of vertex
    /// bases, returned as the cokernel projection.
    fn quotient_by(
        &self,
        m: &Representation,
        bases: &[Matrix],
    ) -> Result<(Representation, RepMorphism)> {
        let nv = self.vertex_count();
        let mut projections = Vec::with_capacity(nv);
        let mut sections = Vec::with_capacity(nv);
        for v in 0..nv {
            let q = Matrix::quotient_map(&bases[v], m.dims[v])?;
            let s = q
                .right_inverse()
                .ok_or_else(|| Error::invariant("cokernel", "quotient map not surjective"))?;
            projections.push(q);
            sections.push(s);
        }
        let dims: Vec<usize> = projections.iter().map(Matrix::rows).collect();
        let maps = self
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| &(&projections[a.target] * &m.maps[i]) * &sections[a.source])
            .collect();
        let quot = Representation::new_unchecked(dims, maps);
        let proj = RepMorphism::new_unchecked(m.clone(), quot.clone(), projections);
        Ok((quot, proj))
    }

    /// Kernel object with its inclusion into `f.source()`.
    pub fn kernel(&self, f: &RepMorphism) -> (Representation, RepMorphism) {
        let bases = f.maps.iter().map(Matrix::nullspace_basis).collect();
        self.subrepresentation(&f.source, bases)
            .expect("kernels are always subrepresentations")
    }

    /// Cokernel object with its projection from `f.target()`.
    pub fn cokernel(&self, f: &RepMorphism) -> (Representation, RepMorphism) {
        let bases: Vec<Matrix> = f.maps.iter().map(Matrix::column_space_basis).collect();
        self.quotient_by(&f.target, &bases)
            .expect("images are always subrepresentations")
    }

    /// Image factorisation `source ↠ im f ↪ target`.
    pub fn image(&self, f: &RepMorphism) -> Image {
        let bases: Vec<Matrix> = f.maps.iter().map(Matrix::column_space_basis).collect();
        let corestrictions: Vec<Matrix> = bases
            .iter()
            .zip(&f.maps)
            .map(|(b, m)| {
                Matrix::solve(b, m)
                    .expect("shapes agree")
                    .expect("columns lie in their own span")
            })
            .collect();
        let (object, mono) = self
            .subrepresentation(&f.target, bases)
            .expect("images are always subrepresentations");
        let epi = RepMorphism::new_unchecked(f.source.clone(), object.clone(), corestrictions);
        Image { object, epi, mono }
    }

    pub fn direct_sum(&self, summands: &[Representation]) -> DirectSum {
        let p = self.prime();
        let nv = self.vertex_count();
        let dims: Vec<usize> = (0..nv)
            .map(|v| summands.iter().map(|s| s.dims[v]).sum())
            .collect();
        let maps = (0..self.arrow_count())
            .map(|i| {
                summands
                    .iter()
                    .fold(Matrix::zeros(p, 0, 0), |acc, s| acc.block_diag(&s.maps[i]))
            })
            .collect();
        let object = Representation::new_unchecked(dims.clone(), maps);
        let mut injections = Vec::with_capacity(summands.len());
        let mut projections = Vec::with_capacity(summands.len());
        let mut offset = vec![0usize; nv];
        for s in summands {
            let mut inj = Vec::with_capacity(nv);
            let mut proj = Vec::with_capacity(nv);
            for v in 0..nv {
                let mut i = Matrix::zeros(p, dims[v], s.dims[v]);
                i.paste(offset[v], 0, &Matrix::identity(p, s.dims[v]));
                proj.push(i.transpose());
                inj.push(i);
                offset[v] += s.dims[v];
            }
            injections.push(RepMorphism::new_unchecked(s.clone(), object.clone(), inj));
            projections.push(RepMorphism::new_unchecked(object.clone(), s.clone(), proj));
        }
        DirectSum {
            object,
            injections,
            projections,
        }
    }

    /// Pullback of `f: A → C` and `g: B → C`, realised as the kernel of
    /// `(f, −g): A ⊕ B → C`.
    pub fn pullback(&self, f: &RepMorphism, g: &RepMorphism) -> Result<Square> {
        if f.target.dims != g.target.dims {
            return Err(Error::DimensionMismatch(
                "pullback: codomains differ".into(),
            ));
        }
        let sum = self.direct_sum(&[f.source.clone(), g.source.clone()]);
        let maps = f
            .maps
            .iter()
            .zip(&g.maps)
            .map(|(a, b)| a.hstack(&-b))
            .collect();
        let diff = RepMorphism::new_unchecked(sum.object.clone(), f.target.clone(), maps);
        let (object, incl) = self.kernel(&diff);
        Ok(Square {
            left: self.compose(&sum.projections[0], &incl)?,
            right: self.compose(&sum.projections[1], &incl)?,
            object,
        })
    }

    /// Pushout of `f: C → A` and `g: C → B`, realised as the cokernel of
    /// `(f; −g): C → A ⊕ B`.
    pub fn pushout(&self, f: &RepMorphism, g: &RepMorphism) -> Result<Square> {
        if f.source.dims != g.source.dims {
            return Err(Error::DimensionMismatch("pushout: domains differ".into()));
        }
        let sum = self.direct_sum(&[f.target.clone(), g.target.clone()]);
        let maps = f
            .maps
            .iter()
            .zip(&g.maps)
            .map(|(a, b)| a.vstack(&-b))
            .collect();
        let diff = RepMorphism::new_unchecked(f.source.clone(), sum.object.clone(), maps);
        let (object, proj) = self.cokernel(&diff);
        Ok(Square {
            left: self.compose(&proj, &sum.injections[0])?,
            right: self.compose(&proj, &sum.injections[1])?,
            object,
        })
    }

    /// Whether `0 → A --i--> B --q--> C → 0` is exact.
    pub fn is_short_exact(&self, i: &RepMorphism, q: &RepMorphism) -> bool {
        self.exactness_failure(Some(i), Some(q)).is_none() && i.is_mono() && q.is_epi()
    }

    /// First position (0-based) at which a sequence of composable morphisms
    /// fails to be exact, treating the sequence as bounded by zeros on both
    /// ends. Position `k` is the object `source(maps[k])` (and the final
    /// position is `target(maps.last())`).
    pub fn first_inexact_position(&self, maps: &[RepMorphism]) -> Option<usize> {
        let n = maps.len();
        for k in 0..=n {
            let incoming = if k == 0 { None } else { Some(&maps[k - 1]) };
            let outgoing = maps.get(k);
            if self.exactness_failure(incoming, outgoing).is_some() {
                return Some(k);
            }
        }
        None
    }

    /// Checks `im(incoming) = ker(outgoing)` at one object; `None` stands for
    /// the zero map.
    fn exactness_failure(
        &self,
        incoming: Option<&RepMorphism>,
        outgoing: Option<&RepMorphism>,
    ) -> Option<&'static str> {
        let nv = self.vertex_count();
        for v in 0..nv {
            let im_rank = incoming.map_or(0, |f| f.maps[v].rank());
            let (ker_dim, composite_zero) = match outgoing {
                Some(g) => {
                    let kd = g.maps[v].cols() - g.maps[v].rank();
                    let zero = incoming.is_none_or(|f| (&g.maps[v] * &f.maps[v]).is_zero());
                    (kd, zero)
                }
                None => {
                    let d = incoming.map_or(0, |f| f.maps[v].rows());
                    (d, true)
                }
            };
            if !composite_zero {
                return Some("composite is nonzero");
            }
            if im_rank != ker_dim {
                return Some("image smaller than kernel");
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    fn a2() -> Algebra {
        let q = Quiver::from_labels(&["1", "2"], &[("a", "1", "2")]).unwrap();
        Algebra::new("kA2", 2, q, vec![]).unwrap()
    }

    fn rep(alg: &Algebra, dims: [usize; 2], a: &[i64]) -> Representation {
        let m = Matrix::new(2, dims[1], dims[0], a).unwrap();
        Representation::new(alg, dims.to_vec(), vec![m]).unwrap()
    }

    fn s1(alg: &Algebra) -> Representation {
        rep(alg, [1, 0], &[])
    }
    fn s2(alg: &Algebra) -> Representation {
        rep(alg, [0, 1], &[])
    }
    fn p1(alg: &Algebra) -> Representation {
        rep(alg, [1, 1], &[1])
    }

    fn square() -> Algebra {
        let q = Quiver::from_labels(
            &["s", "u", "d", "t"],
            &[
                ("alpha", "s", "u"),
                ("beta", "u", "t"),
                ("gamma", "s", "d"),
                ("delta", "d", "t"),
            ],
        )
        .unwrap();
        Algebra::with_named_relations(
            "square",
            2,
            q,
            &[vec![
                (1, vec!["alpha".into(), "beta".into()]),
                (-1, vec!["gamma".into(), "delta".into()]),
            ]],
        )
        .unwrap()
    }

    #[test]
    fn validation() {
        let alg = a2();
        assert!(alg
            .validate_representation(&Representation::zero(&alg))
            .is_ok());
        assert!(alg.validate_representation(&p1(&alg)).is_ok());

        let sq = square();
        let one = Matrix::identity(2, 1);
        let zero = Matrix::zeros(2, 1, 1);
        // beta·alpha = 1 but delta·gamma = 0
        let bad = Representation::new(
            &sq,
            vec![1, 1, 1, 1],
            vec![one.clone(), one.clone(), one.clone(), zero],
        );
        assert!(matches!(bad, Err(Error::RelationViolated { .. })));
        let good = Representation::new(&sq, vec![1, 1, 1, 1], vec![one.clone(); 4]);
        assert!(good.is_ok());
        assert!(Representation::new(&sq, vec![1, 1, 1], vec![]).is_err());
    }

    #[test]
    fn hom_spaces() {
        let alg = a2();
        assert!(alg.hom_basis(&s1(&alg), &s2(&alg)).is_empty());
        assert_eq!(alg.hom_dim(&p1(&alg), &p1(&alg)), 1);
        assert_eq!(alg.hom_dim(&s2(&alg), &p1(&alg)), 1);
        assert_eq!(alg.hom_dim(&p1(&alg), &s1(&alg)), 1);
        assert_eq!(alg.hom_dim(&s1(&alg), &p1(&alg)), 0);
        assert_eq!(alg.hom_dim(&p1(&alg), &s2(&alg)), 0);
        let m = p1(&alg);
        let mm = alg.direct_sum(&[m.clone(), m.clone()]).object;
        assert_eq!(alg.hom_dim(&m, &mm), 2 * alg.hom_dim(&m, &m));
        for f in alg.hom_basis(&mm, &mm) {
            RepMorphism::new(
                &alg,
                f.source().clone(),
                f.target().clone(),
                f.maps().to_vec(),
            )
            .unwrap();
        }
    }

    #[test]
    fn morphism_validation() {
        let alg = a2();
        // S(1) -> P(1) with nonzero map at vertex 1 does not commute
        let bad = RepMorphism::new(
            &alg,
            s1(&alg),
            p1(&alg),
            vec![Matrix::identity(2, 1), Matrix::zeros(2, 1, 0)],
        );
        assert!(matches!(bad, Err(Error::NotAMorphism { .. })));
    }

    fn socle(alg: &Algebra) -> RepMorphism {
        alg.hom_basis(&s2(alg), &p1(alg)).remove(0)
    }

    #[test]
    fn kernels() {
        let alg = a2();
        let m = p1(&alg);
        assert!(alg.kernel(&alg.identity(&m)).0.is_zero());
        let z = alg.zero_morphism(&m, &s1(&alg));
        assert_eq!(alg.kernel(&z).0, m);
        assert!(alg.kernel(&socle(&alg)).0.is_zero());
        let (k, incl) = alg.kernel(&z);
        assert!(incl.is_mono());
        assert!(alg.compose(&z, &incl).unwrap().is_zero());
        let _ = k;
    }

    #[test]
    fn cokernels() {
        let alg = a2();
        let m = p1(&alg);
        assert!(alg.cokernel(&alg.identity(&m)).0.is_zero());
        let z = alg.zero_morphism(&Representation::zero(&alg), &m);
        assert_eq!(alg.cokernel(&z).0, m);
        let (c, proj) = alg.cokernel(&socle(&alg));
        assert_eq!(c, s1(&alg));
        assert!(proj.is_epi());
        assert!(alg.compose(&proj, &socle(&alg)).unwrap().is_zero());
    }

    #[test]
    fn images_and_sums() {
        let alg = a2();
        let m = p1(&alg);
        let im = alg.image(&alg.identity(&m));
        assert_eq!(im.object, m);
        assert_eq!(p1(&alg).dim_vector(), vec![1, 1]);
        let sum = alg.direct_sum(&[s1(&alg), s2(&alg)]).object;
        assert_eq!(sum.dim_vector(), vec![1, 1]);
        assert_ne!(alg.hom_dim(&sum, &sum), alg.hom_dim(&p1(&alg), &p1(&alg)));
        let f = socle(&alg);
        let im = alg.image(&f);
        assert_eq!(alg.compose(&im.mono, &im.epi).unwrap(), f);
    }

    #[test]
    fn pullbacks_and_pushouts() {
        let alg = a2();
        let m = p1(&alg);
        let id = alg.identity(&m);
        let pb = alg.pullback(&id, &id).unwrap();
        assert_eq!(pb.object.dim_vector(), m.dim_vector());
        assert_eq!(pb.left, pb.right);

        let f = alg.hom_basis(&m, &s1(&alg)).remove(0);
        let zero_in = alg.zero_morphism(&Representation::zero(&alg), &s1(&alg));
        let pb = alg.pullback(&f, &zero_in).unwrap();
        assert_eq!(pb.object, alg.kernel(&f).0);

        let to_zero = alg.zero_morphism(&s2(&alg), &Representation::zero(&alg));
        let po = alg.pushout(&socle(&alg), &to_zero).unwrap();
        assert_eq!(po.object, s1(&alg));
    }

    #[test]
    fn exactness_positions() {
        let alg = a2();
        let i = socle(&alg);
        let (_, q) = alg.cokernel(&i);
        assert!(alg.is_short_exact(&i, &q));
        assert_eq!(alg.first_inexact_position(&[i.clone(), q.clone()]), None);
        // dropping the inclusion breaks exactness at P(1)
        let z = alg.zero_morphism(&s2(&alg), &p1(&alg));
        assert_eq!(alg.first_inexact_position(&[z, q]), Some(0));
    }
}
