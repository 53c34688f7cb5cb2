//! JSON file formats for algebras, atom lists, recollement instances and
//! torsion-pair inputs.
//!
//! Matrices are flat row-major integer arrays, reduced mod `p` on load; their
//! shape comes from the dimension vectors. Arrows missing from a `maps`
//! object are zero. Atoms are referred to by name everywhere.
//!
//! ```json
//! { "name": "kA2", "prime": 2, "vertices": ["1", "2"],
//!   "arrows": [{ "name": "a", "source": "1", "target": "2" }],
//!   "relations": [], "atoms": "kA2.atoms.json" }
//!
//! { "atoms": [{ "name": "P(1)", "dims": [1, 1], "maps": { "a": [1] } }] }
//!
//! { "name": "t2_kA2", "algebra": "kA2.json", "mode": "regular",
//!   "atoms": "t2_kA2.atoms.json" }
//!
//! { "atoms": [{ "name": "(P(1)|S(2))", "x": "P(1)", "y": "S(2)",
//!               "f": { "1": [], "2": [1] } }] }
//! ```
//!
//! In a `Λ`-atom, `x` and `y` name a base atom, are `"0"`, or are an inline
//! `{ "dims", "maps" }` object; `f` gives the block of `f: Y → X` at each
//! vertex (shape `dim X_v × dim Y_v`), with missing vertices zero.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::atoms::AtomList;
use crate::category::ModCategory;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quiver::{Algebra, Arrow, Quiver};
use crate::recollement::RecollementInstance;
use crate::rep::Representation;
use crate::torsion::{Subcategory, TorsionPair};
use crate::triangular::{BimoduleMode, TriModule, TriangularAlgebra};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermSpec {
    pub coeff: i64,
    /// Arrow names in traversal order.
    pub path: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub name: String,
    #[serde(default = "default_prime")]
    pub prime: u32,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<TermSpec>>,
    /// Path of the atom file, relative to this file.
    pub atoms: String,
}

fn default_prime() -> u32 {
    2
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepSpec {
    pub dims: Vec<usize>,
    #[serde(default)]
    pub maps: BTreeMap<String, Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AtomSpec {
    pub name: String,
    #[serde(flatten)]
    pub rep: RepSpec,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AtomFile {
    pub atoms: Vec<AtomSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PartSpec {
    Named(String),
    Inline(RepSpec),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TriAtomSpec {
    pub name: String,
    pub x: PartSpec,
    pub y: PartSpec,
    #[serde(default)]
    pub f: BTreeMap<String, Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TriAtomFile {
    pub atoms: Vec<TriAtomSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceFile {
    pub name: String,
    /// Path of the base algebra file, relative to this file.
    pub algebra: String,
    pub mode: ModeSpec,
    /// Path of the `Λ`-atom file, relative to this file.
    pub atoms: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeSpec {
    Regular,
    Zero,
}

impl From<ModeSpec> for BimoduleMode {
    fn from(m: ModeSpec) -> Self {
        match m {
            ModeSpec::Regular => BimoduleMode::Regular,
            ModeSpec::Zero => BimoduleMode::Zero,
        }
    }
}

/// A pair of atom-name lists.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSpec {
    pub x: Vec<String>,
    pub y: Vec<String>,
}

impl PairSpec {
    pub fn from_pair(pair: &TorsionPair, atoms: &AtomList) -> Self {
        PairSpec {
            x: pair.x.names_in_order(atoms),
            y: pair.y.names_in_order(atoms),
        }
    }

    pub fn subcategories(&self, atoms: &AtomList) -> Result<(Subcategory, Subcategory)> {
        Ok((
            Subcategory::from_names(atoms, &self.x)?,
            Subcategory::from_names(atoms, &self.y)?,
        ))
    }
}

/// A gluing scenario: pairs in the two outer categories and the expected
/// glued pair.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GlueScenario {
    pub instance: String,
    pub a: PairSpec,
    pub c: PairSpec,
    pub expected: PairSpec,
}

/// A restriction scenario: a pair in `mod Λ` and its expected images.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RestrictScenario {
    pub instance: String,
    pub pair: PairSpec,
    pub expected_a: PairSpec,
    pub expected_c_candidate: PairSpec,
    pub expected_c_condition: bool,
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| Error::Json {
        path: path.display().to_string(),
        source,
    })
}

fn sibling(base: &Path, rel: &str) -> PathBuf {
    base.parent().unwrap_or_else(|| Path::new(".")).join(rel)
}

fn matrix(p: u32, rows: usize, cols: usize, flat: &[i64], what: &str) -> Result<Matrix> {
    Matrix::new(p, rows, cols, flat).map_err(|_| {
        Error::Input(format!(
            "{what}: expected {} entries for a {rows}x{cols} matrix, got {}",
            rows * cols,
            flat.len()
        ))
    })
}

/// Builds the algebra described by `file`, with `prime` overriding the
/// file's field.
pub fn algebra_from_file(file: &AlgebraFile, prime: Option<u32>) -> Result<Algebra> {
    let p = prime.unwrap_or(file.prime);
    let quiver = Quiver::new(file.vertices.clone(), Vec::new()).and_then(|q| {
        let arrows = file
            .arrows
            .iter()
            .map(|a| {
                Ok(Arrow {
                    name: a.name.clone(),
                    source: q.vertex_index(&a.source)?,
                    target: q.vertex_index(&a.target)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Quiver::new(file.vertices.clone(), arrows)
    })?;
    let relations: Vec<Vec<(i64, Vec<String>)>> = file
        .relations
        .iter()
        .map(|r| r.iter().map(|t| (t.coeff, t.path.clone())).collect())
        .collect();
    Algebra::with_named_relations(file.name.clone(), p, quiver, &relations)
}

pub fn rep_from_spec(alg: &Algebra, spec: &RepSpec, what: &str) -> Result<Representation> {
    let q = alg.quiver();
    if spec.dims.len() != q.vertex_count() {
        return Err(Error::Input(format!(
            "{what}: {} dimensions for {} vertices",
            spec.dims.len(),
            q.vertex_count()
        )));
    }
    for name in spec.maps.keys() {
        q.arrow_index(name)?;
    }
    let maps = q
        .arrows()
        .iter()
        .map(|a| {
            let (r, c) = (spec.dims[a.target], spec.dims[a.source]);
            match spec.maps.get(&a.name) {
                Some(flat) => matrix(
                    alg.prime(),
                    r,
                    c,
                    flat,
                    &format!("{what}, arrow {}", a.name),
                ),
                None => Ok(Matrix::zeros(alg.prime(), r, c)),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Representation::new(alg, spec.dims.clone(), maps)
}

pub fn spec_from_rep(alg: &Algebra, rep: &Representation) -> RepSpec {
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .zip(rep.maps())
        .filter(|(_, m)| !m.is_zero())
        .map(|(a, m)| (a.name.clone(), m.data().iter().map(|&v| v as i64).collect()))
        .collect();
    RepSpec {
        dims: rep.dims().to_vec(),
        maps,
    }
}

pub fn atoms_from_file(alg: &Algebra, file: &AtomFile) -> Result<AtomList> {
    let mut names = Vec::with_capacity(file.atoms.len());
    let mut reps = Vec::with_capacity(file.atoms.len());
    for a in &file.atoms {
        reps.push(rep_from_spec(alg, &a.rep, &format!("atom {}", a.name))?);
        names.push(a.name.clone());
    }
    AtomList::new(alg, names, reps)
}

/// Loads an algebra file and its atom list.
pub fn load_category(path: &Path, prime: Option<u32>) -> Result<ModCategory> {
    let file: AlgebraFile = read_json(path)?;
    let alg = algebra_from_file(&file, prime)?;
    let atoms: AtomFile = read_json(&sibling(path, &file.atoms))?;
    let list = atoms_from_file(&alg, &atoms)?;
    Ok(ModCategory::new(alg, list))
}

fn part(base: &ModCategory, spec: &PartSpec, what: &str) -> Result<Representation> {
    match spec {
        PartSpec::Named(n) if n == "0" => Ok(Representation::zero(base.algebra())),
        PartSpec::Named(n) => Ok(base.atoms().atom(base.atoms().index_of(n)?).clone()),
        PartSpec::Inline(r) => rep_from_spec(base.algebra(), r, what),
    }
}

pub fn tri_module_from_spec(
    tri: &TriangularAlgebra,
    base: &ModCategory,
    spec: &TriAtomSpec,
) -> Result<TriModule> {
    let what = format!("Λ-atom {}", spec.name);
    let x = part(base, &spec.x, &what)?;
    let y = part(base, &spec.y, &what)?;
    let alg = base.algebra();
    let q = alg.quiver();
    for v in spec.f.keys() {
        q.vertex_index(v)?;
    }
    let f_maps = q
        .vertices()
        .iter()
        .enumerate()
        .map(|(v, label)| {
            let (r, c) = (x.dims()[v], y.dims()[v]);
            match spec.f.get(label) {
                Some(flat) => matrix(
                    alg.prime(),
                    r,
                    c,
                    flat,
                    &format!("{what}, f at vertex {label}"),
                ),
                None => Ok(Matrix::zeros(alg.prime(), r, c)),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    tri.module(x, y, f_maps)
}

/// Loads an instance file. With `certify = false` a singular `Λ` fingerprint
/// matrix is tolerated so that damaged atom files can be diagnosed.
pub fn load_instance(
    path: &Path,
    prime: Option<u32>,
    certify: bool,
) -> Result<RecollementInstance> {
    let file: InstanceFile = read_json(path)?;
    let base = load_category(&sibling(path, &file.algebra), prime)?;
    let tri = TriangularAlgebra::new(base.algebra().clone(), file.mode.into())?;
    let atoms: TriAtomFile = read_json(&sibling(path, &file.atoms))?;
    let modules = atoms
        .atoms
        .iter()
        .map(|a| Ok((a.name.clone(), tri_module_from_spec(&tri, &base, a)?)))
        .collect::<Result<Vec<_>>>()?;
    let list = base.atoms().clone();
    if certify {
        RecollementInstance::new(file.name, tri, list, modules)
    } else {
        RecollementInstance::new_uncertified(file.name, tri, list, modules)
    }
}
