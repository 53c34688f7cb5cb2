//! A module category presented by an algebra and a certified atom list.

use rand::Rng;

use crate::atoms::{AtomList, Decomposition};
use crate::error::Result;
use crate::quiver::Algebra;
use crate::rep::{RepMorphism, Representation};

#[derive(Clone, Debug)]
pub struct ModCategory {
    algebra: Algebra,
    atoms: AtomList,
}

impl ModCategory {
    pub fn new(algebra: Algebra, atoms: AtomList) -> Self {
        ModCategory { algebra, atoms }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn atoms(&self) -> &AtomList {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    /// Bitmask selecting every atom.
    pub fn all_mask(&self) -> u64 {
        if self.atoms.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.atoms.len()) - 1
        }
    }

    pub fn decompose(&self, m: &Representation) -> Result<Decomposition> {
        self.atoms.decompose(&self.algebra, m)
    }

    /// Whether `m` lies in `add` of the selected atoms.
    pub fn in_add(&self, m: &Representation, mask: u64) -> Result<bool> {
        Ok(self.decompose(m)?.support_mask() & !mask == 0)
    }

    pub fn fingerprint(&self, m: &Representation) -> Vec<usize> {
        self.atoms.fingerprint(&self.algebra, m)
    }

    pub fn hom_dim(&self, m: &Representation, n: &Representation) -> usize {
        self.algebra.hom_dim(m, n)
    }

    /// Whether two objects are isomorphic (equal fingerprints and dimension
    /// vectors), valid for a certified atom list.
    pub fn isomorphic(&self, m: &Representation, n: &Representation) -> bool {
        m.dims() == n.dims() && self.fingerprint(m) == self.fingerprint(n)
    }

    /// Sum of the given atoms (with repetition), in the order given.
    pub fn sum_of(&self, indices: &[usize]) -> Representation {
        let parts: Vec<Representation> = indices
            .iter()
            .map(|&i| self.atoms.atom(i).clone())
            .collect();
        self.algebra.direct_sum(&parts).object
    }

    /// A direct sum of between one and `max_summands` uniformly drawn atoms.
    pub fn random_sum<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        max_summands: usize,
    ) -> (Representation, Vec<usize>) {
        let k = rng.gen_range(1..=max_summands.max(1));
        let picks: Vec<usize> = (0..k).map(|_| rng.gen_range(0..self.atoms.len())).collect();
        (self.sum_of(&picks), picks)
    }

    /// A uniformly random element of `Hom(m, n)`.
    pub fn random_morphism<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        m: &Representation,
        n: &Representation,
    ) -> RepMorphism {
        let basis = self.algebra.hom_basis(m, n);
        let p = self.algebra.prime();
        let coeffs: Vec<u32> = basis.iter().map(|_| rng.gen_range(0..p)).collect();
        self.algebra.linear_combination(m, n, &basis, &coeffs)
    }

    /// `0 → U → B → B/U → 0` where `B` is a random sum of at most three
    /// atoms and `U` the image of a random map from another such sum.
    pub fn random_short_exact<R: Rng + ?Sized>(&self, rng: &mut R) -> (RepMorphism, RepMorphism) {
        let (b, _) = self.random_sum(rng, 3);
        let (s, _) = self.random_sum(rng, 3);
        let g = self.random_morphism(rng, &s, &b);
        let mono = self.algebra.image(&g).mono;
        let (_, q) = self.algebra.cokernel(&mono);
        (mono, q)
    }
}
