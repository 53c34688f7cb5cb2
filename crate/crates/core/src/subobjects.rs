//! Subobject lattices, traces and rejects.

use crate::atoms::AtomList;
use crate::error::{Error, Result};
use crate::linalg::{all_subspaces, Matrix};
use crate::quiver::Algebra;
use crate::rep::{RepMorphism, Representation};

/// Default cap on examined subspace assignments.
pub const DEFAULT_SUBOBJECT_BUDGET: usize = 1_000_000;

impl Algebra {
    /// Every subrepresentation of `m`, as inclusions, in a fixed order
    /// (always including `0` and `m`).
    ///
    /// Vertex subspaces are chosen vertex by vertex and a partial choice is
    /// pruned as soon as an arrow between two chosen vertices fails to map one
    /// subspace into the other. `budget` bounds the number of partial and
    /// complete assignments examined.
    pub fn subobject_embeddings(
        &self,
        m: &Representation,
        budget: usize,
    ) -> Result<Vec<RepMorphism>> {
        let p = self.prime();
        let nv = self.vertex_count();
        let mut candidates = Vec::with_capacity(nv);
        for v in 0..nv {
            candidates.push(all_subspaces(p, m.dims()[v], budget)?);
        }
        let mut out = Vec::new();
        let mut chosen: Vec<Matrix> = Vec::with_capacity(nv);
        let mut visited = 0usize;
        self.extend_subobjects(m, &candidates, &mut chosen, &mut visited, budget, &mut out)?;
        Ok(out)
    }

    fn extend_subobjects(
        &self,
        m: &Representation,
        candidates: &[Vec<Matrix>],
        chosen: &mut Vec<Matrix>,
        visited: &mut usize,
        budget: usize,
        out: &mut Vec<RepMorphism>,
    ) -> Result<()> {
        let v = chosen.len();
        if v == candidates.len() {
            let (_, incl) = self.subrepresentation(m, chosen.clone())?;
            out.push(incl);
            return Ok(());
        }
        for sub in &candidates[v] {
            *visited += 1;
            if *visited > budget {
                return Err(Error::Budget { limit: budget });
            }
            chosen.push(sub.clone());
            if self.stable_so_far(m, chosen) {
                self.extend_subobjects(m, candidates, chosen, visited, budget, out)?;
            }
            chosen.pop();
        }
        Ok(())
    }

    /// Checks arrows touching the newest vertex whose other end is chosen.
    fn stable_so_far(&self, m: &Representation, chosen: &[Matrix]) -> bool {
        let last = chosen.len() - 1;
        self.quiver().arrows().iter().enumerate().all(|(i, a)| {
            if a.source > last || a.target > last || (a.source != last && a.target != last) {
                return true;
            }
            let image = m.map(i) * &chosen[a.source];
            let span = &chosen[a.target];
            span.hstack(&image).rank() == span.cols()
        })
    }

    /// Largest subobject of `m` generated by images of maps from the
    /// selected atoms: the sum of the images of all basis morphisms.
    pub fn trace(
        &self,
        atoms: &AtomList,
        selected: u64,
        m: &Representation,
    ) -> (Representation, RepMorphism) {
        let p = self.prime();
        let nv = self.vertex_count();
        let mut spans: Vec<Matrix> = m.dims().iter().map(|&d| Matrix::zeros(p, d, 0)).collect();
        for i in (0..atoms.len()).filter(|i| selected >> i & 1 == 1) {
            for f in self.hom_basis(atoms.atom(i), m) {
                for v in 0..nv {
                    spans[v] = spans[v].hstack(f.map(v));
                }
            }
        }
        let bases = spans.iter().map(Matrix::column_space_basis).collect();
        self.subrepresentation(m, bases)
            .expect("a sum of images is a subrepresentation")
    }

    /// Intersection of the kernels of all basis morphisms from `m` into the
    /// selected atoms. Zero exactly when `m` embeds into a sum of them.
    pub fn reject(
        &self,
        atoms: &AtomList,
        selected: u64,
        m: &Representation,
    ) -> (Representation, RepMorphism) {
        let p = self.prime();
        let nv = self.vertex_count();
        let mut stacks: Vec<Matrix> = m.dims().iter().map(|&d| Matrix::zeros(p, 0, d)).collect();
        for i in (0..atoms.len()).filter(|i| selected >> i & 1 == 1) {
            for f in self.hom_basis(m, atoms.atom(i)) {
                for v in 0..nv {
                    stacks[v] = stacks[v].vstack(f.map(v));
                }
            }
        }
        let bases = stacks.iter().map(Matrix::nullspace_basis).collect();
        self.subrepresentation(m, bases)
            .expect("an intersection of kernels is a subrepresentation")
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

    fn atoms(alg: &Algebra) -> AtomList {
        AtomList::new(
            alg,
            vec!["S(1)".into(), "S(2)".into(), "P(1)".into()],
            vec![
                rep(alg, [1, 0], &[]),
                rep(alg, [0, 1], &[]),
                rep(alg, [1, 1], &[1]),
            ],
        )
        .unwrap()
    }

    const S1: u64 = 1;
    const S2: u64 = 2;
    const P1: u64 = 4;

    #[test]
    fn subobjects_of_small_modules() {
        let alg = a2();
        let at = atoms(&alg);
        let subs = alg.subobject_embeddings(at.atom(0), 100).unwrap();
        assert_eq!(subs.len(), 2);

        let subs = alg.subobject_embeddings(at.atom(2), 100).unwrap();
        let dims: Vec<Vec<usize>> = subs.iter().map(|s| s.source().dim_vector()).collect();
        assert_eq!(dims, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);

        let ss = alg
            .direct_sum(&[at.atom(0).clone(), at.atom(0).clone()])
            .object;
        let subs = alg.subobject_embeddings(&ss, 100).unwrap();
        assert_eq!(subs.len(), 5);
        for s in &subs {
            assert!(s.is_mono());
        }
        assert!(matches!(
            alg.subobject_embeddings(&ss, 3),
            Err(Error::Budget { limit: 3 })
        ));
    }

    #[test]
    fn traces() {
        let alg = a2();
        let at = atoms(&alg);
        let m = at.atom(2);
        assert!(alg.trace(&at, 0, m).0.is_zero());
        let (t, incl) = alg.trace(&at, S2, m);
        assert_eq!(t.dim_vector(), vec![0, 1]);
        assert!(incl.is_mono());
        assert!(alg.trace(&at, P1 | S1, at.atom(1)).0.is_zero());
        // idempotent
        let (tt, _) = alg.trace(&at, S2, &t);
        assert_eq!(tt, t);
    }

    #[test]
    fn rejects() {
        let alg = a2();
        let at = atoms(&alg);
        assert_eq!(alg.reject(&at, 0, at.atom(2)).0, *at.atom(2));
        assert!(alg.reject(&at, P1 | S1, at.atom(1)).0.is_zero());
        assert_eq!(alg.reject(&at, S2, at.atom(0)).0, *at.atom(0));
    }
}
