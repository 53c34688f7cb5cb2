//! Exact computations with recollements of module categories over finite
//! fields: bound quiver representations, torsion theories given by atom
//! lists, and the glueing and restriction of torsion pairs and TTF triples
//! along the recollement `(mod A, mod T₂(A), mod A)`.

pub mod atoms;
pub mod category;
pub mod error;
pub mod glue;
pub mod io;
pub mod linalg;
pub mod par;
pub mod quiver;
pub mod recollement;
pub mod rep;
pub mod report;
pub mod subobjects;
pub mod torsion;
pub mod triangular;

pub use atoms::{AtomList, Decomposition};
pub use category::ModCategory;
pub use error::{Error, Result};
pub use linalg::{Fp, Matrix};
pub use par::Exec;
pub use quiver::{Algebra, Quiver};
pub use recollement::{Functor, RecollementInstance};
pub use rep::{RepMorphism, Representation};
pub use report::{Check, Report};
pub use torsion::{Subcategory, TorsionPair, TtfTriple, Verdict};
pub use triangular::{BimoduleMode, TriModule, TriMorphism, TriangularAlgebra};
