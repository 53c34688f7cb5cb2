//! Declared-complete lists of indecomposables and decomposition of
//! arbitrary representations by Hom fingerprints.
//!
//! For a representation-finite algebra, a module is determined up to
//! isomorphism by the dimensions `dim Hom(atom_i, M)`. The integer matrix
//! `F[i][j] = dim Hom(atom_i, atom_j)` is then invertible over the rationals,
//! and the multiplicities of `M` solve `F · c = fingerprint(M)`.

use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::quiver::Algebra;
use crate::rep::Representation;

type Q = Ratio<i64>;

/// Atom multiplicities of a representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decomposition {
    counts: Vec<usize>,
}

impl Decomposition {
    pub fn from_counts(counts: Vec<usize>) -> Self {
        Decomposition { counts }
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    /// Indices of atoms occurring with positive multiplicity.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, _)| i)
    }

    /// Bitmask of the support (atom lists are capped at 64 entries).
    pub fn support_mask(&self) -> u64 {
        self.support().fold(0, |m, i| m | (1 << i))
    }

    /// Atom names with repetition, in atom-list order.
    pub fn names(&self, atoms: &AtomList) -> Vec<String> {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat_n(atoms.name(i).to_string(), c))
            .collect()
    }

    pub fn union(&self, other: &Decomposition) -> Decomposition {
        Decomposition {
            counts: self
                .counts
                .iter()
                .zip(&other.counts)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn display(&self, atoms: &AtomList) -> String {
        let names = self.names(atoms);
        if names.is_empty() {
            "0".to_string()
        } else {
            names.join(" ⊕ ")
        }
    }
}

/// Named indecomposables with a cached Hom-dimension table.
#[derive(Clone)]
pub struct AtomList {
    names: Vec<String>,
    atoms: Vec<Representation>,
    hom_table: Vec<Vec<usize>>,
    inverse: Option<Vec<Vec<Q>>>,
}

impl fmt::Debug for AtomList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AtomList")
            .field("names", &self.names)
            .field("certified", &self.is_certified())
            .finish()
    }
}

/// Hard cap from the bitmask representation of subcategories.
pub const MAX_ATOMS: usize = 64;

impl AtomList {
    /// Builds the list and certifies completeness by inverting the
    /// fingerprint matrix. Fails with [`Error::SingularFingerprint`] otherwise.
    pub fn new(alg: &Algebra, names: Vec<String>, atoms: Vec<Representation>) -> Result<Self> {
        let list = AtomList::new_uncertified(alg, names, atoms)?;
        if list.inverse.is_none() {
            return Err(Error::SingularFingerprint);
        }
        Ok(list)
    }

    /// Same as [`AtomList::new`] but keeps a list whose fingerprint matrix is
    /// singular. Decomposition is unavailable on such a list; it exists for
    /// diagnostics on corrupted inputs.
    pub fn new_uncertified(
        alg: &Algebra,
        names: Vec<String>,
        atoms: Vec<Representation>,
    ) -> Result<Self> {
        if names.len() != atoms.len() {
            return Err(Error::Input("atom names and atoms differ in length".into()));
        }
        if atoms.len() > MAX_ATOMS {
            return Err(Error::BoundExceeded {
                count: atoms.len(),
                bound: MAX_ATOMS,
            });
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Input(format!("duplicate atom name `{n}`")));
            }
        }
        for a in &atoms {
            alg.validate_representation(a)?;
            if a.is_zero() {
                return Err(Error::Input(
                    "the zero representation is not an atom".into(),
                ));
            }
        }
        let hom_table: Vec<Vec<usize>> = atoms
            .iter()
            .map(|a| atoms.iter().map(|b| alg.hom_dim(a, b)).collect())
            .collect();
        let inverse = invert(&hom_table);
        Ok(AtomList {
            names,
            atoms,
            hom_table,
            inverse,
        })
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn atoms(&self) -> &[Representation] {
        &self.atoms
    }

    pub fn atom(&self, i: usize) -> &Representation {
        &self.atoms[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Unknown {
                kind: "atom",
                name: name.to_string(),
            })
    }

    /// `F[i][j] = dim Hom(atom_i, atom_j)`.
    pub fn hom_table(&self) -> &[Vec<usize>] {
        &self.hom_table
    }

    pub fn hom_dim(&self, i: usize, j: usize) -> usize {
        self.hom_table[i][j]
    }

    /// Whether the fingerprint matrix is invertible.
    pub fn is_certified(&self) -> bool {
        self.inverse.is_some()
    }

    /// `[dim Hom(atom_i, m)]_i`.
    pub fn fingerprint(&self, alg: &Algebra, m: &Representation) -> Vec<usize> {
        self.atoms.iter().map(|a| alg.hom_dim(a, m)).collect()
    }

    /// Multiplicities of the atoms in `m`, cross-checked against dimension
    /// vectors.
    pub fn decompose(&self, alg: &Algebra, m: &Representation) -> Result<Decomposition> {
        let inverse = self.inverse.as_ref().ok_or(Error::SingularFingerprint)?;
        if m.is_zero() {
            return Ok(Decomposition {
                counts: vec![0; self.len()],
            });
        }
        let fp = self.fingerprint(alg, m);
        let mut counts = Vec::with_capacity(self.len());
        for row in inverse {
            let c: Q = row
                .iter()
                .zip(&fp)
                .map(|(r, &f)| *r * Q::from_integer(f as i64))
                .sum();
            if !c.is_integer() || *c.numer() < 0 {
                return Err(Error::AtomListIncomplete(format!(
                    "fingerprint {fp:?} gives multiplicity {c}"
                )));
            }
            counts.push(c.to_integer() as usize);
        }
        let mut dims = vec![0usize; m.dims().len()];
        for (a, &c) in self.atoms.iter().zip(&counts) {
            for (d, &ad) in dims.iter_mut().zip(a.dims()) {
                *d += c * ad;
            }
        }
        if dims != m.dims() {
            return Err(Error::AtomListIncomplete(format!(
                "fingerprint {fp:?} predicts dimension vector {dims:?}, object has {:?}",
                m.dims()
            )));
        }
        Ok(Decomposition { counts })
    }

    /// Whether `m` is isomorphic to atom `i`.
    pub fn is_atom(&self, alg: &Algebra, m: &Representation, i: usize) -> bool {
        m.dims() == self.atoms[i].dims() && self.fingerprint(alg, m) == self.column(i)
    }

    fn column(&self, j: usize) -> Vec<usize> {
        self.hom_table.iter().map(|row| row[j]).collect()
    }
}

/// Gauss-Jordan inverse over the rationals; `None` when singular.
fn invert(table: &[Vec<usize>]) -> Option<Vec<Vec<Q>>> {
    let n = table.len();
    let mut a: Vec<Vec<Q>> = table
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Q> = row.iter().map(|&v| Q::from_integer(v as i64)).collect();
            r.extend((0..n).map(|j| Q::from_integer((i == j) as i64)));
            r
        })
        .collect();
    for col in 0..n {
        let pr = (col..n).find(|&r| a[r][col] != Q::from_integer(0))?;
        a.swap(col, pr);
        let piv = a[col][col];
        for v in a[col].iter_mut() {
            *v /= piv;
        }
        for r in 0..n {
            if r != col && a[r][col] != Q::from_integer(0) {
                let factor = a[r][col];
                let pivot_row = a[col].clone();
                for (v, pv) in a[r].iter_mut().zip(pivot_row) {
                    *v -= factor * pv;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}
