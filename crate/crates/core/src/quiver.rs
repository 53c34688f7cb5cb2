//! Bound quivers over `F_p`.
//!
//! Paths are written in traversal order: the path `[α, β]` means "α then β"
//! and acts on a representation as the matrix product `map_β · map_α`.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{check_prime, reduce, Fp};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::Input(format!("duplicate vertex label `{v}`")));
            }
        }
        for (i, a) in arrows.iter().enumerate() {
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(Error::Input(format!(
                    "arrow `{}` references a missing vertex",
                    a.name
                )));
            }
            if arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::Input(format!("duplicate arrow name `{}`", a.name)));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Builds a quiver from labels, resolving arrow endpoints by vertex label.
    pub fn from_labels(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self> {
        let vs: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let index = |label: &str| {
            vs.iter()
                .position(|v| v == label)
                .ok_or_else(|| Error::Unknown {
                    kind: "vertex",
                    name: label.to_string(),
                })
        };
        let mut arr = Vec::with_capacity(arrows.len());
        for &(name, s, t) in arrows {
            arr.push(Arrow {
                name: name.to_string(),
                source: index(s)?,
                target: index(t)?,
            });
        }
        Quiver::new(vs, arr)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == label)
            .ok_or_else(|| Error::Unknown {
                kind: "vertex",
                name: label.to_string(),
            })
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::Unknown {
                kind: "arrow",
                name: name.to_string(),
            })
    }
}

/// A linear combination of parallel paths, required to act as zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    /// `(coefficient, path)`; each path is a non-empty list of arrow indices.
    pub terms: Vec<(Fp, Vec<usize>)>,
}

impl Relation {
    /// Source and target vertex shared by all paths.
    pub fn endpoints(&self, quiver: &Quiver) -> Result<(usize, usize)> {
        let mut ends = None;
        for (_, path) in &self.terms {
            let Some(&first) = path.first() else {
                return Err(Error::Input("relation contains an empty path".into()));
            };
            let arrows = quiver.arrows();
            for w in path.windows(2) {
                if arrows[w[0]].target != arrows[w[1]].source {
                    return Err(Error::Input(format!(
                        "path is not composable at `{}` then `{}`",
                        arrows[w[0]].name, arrows[w[1]].name
                    )));
                }
            }
            let here = (arrows[first].source, arrows[*path.last().unwrap()].target);
            match ends {
                None => ends = Some(here),
                Some(e) if e != here => {
                    return Err(Error::Input(
                        "relation mixes paths with different endpoints".into(),
                    ))
                }
                _ => {}
            }
        }
        ends.ok_or_else(|| Error::Input("relation has no terms".into()))
    }

    pub fn display(&self, quiver: &Quiver) -> String {
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|(c, path)| {
                // written right-to-left like composition
                let word: Vec<&str> = path
                    .iter()
                    .rev()
                    .map(|&a| quiver.arrows()[a].name.as_str())
                    .collect();
                format!("{}*{}", c, word.join(""))
            })
            .collect();
        terms.join(" + ")
    }
}

/// A bound quiver algebra `F_p Q / I` described by generators of `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    name: String,
    prime: u32,
    quiver: Quiver,
    relations: Vec<Relation>,
}

impl Algebra {
    pub fn new(
        name: impl Into<String>,
        prime: u32,
        quiver: Quiver,
        relations: Vec<Relation>,
    ) -> Result<Self> {
        check_prime(prime)?;
        for r in &relations {
            r.endpoints(&quiver)?;
            if r.terms.iter().any(|(c, _)| c.modulus() != prime) {
                return Err(Error::Input(
                    "relation coefficient over the wrong field".into(),
                ));
            }
        }
        Ok(Algebra {
            name: name.into(),
            prime,
            quiver,
            relations,
        })
    }

    /// Parses relations given as `(coefficient, [arrow names in traversal order])`.
    pub fn with_named_relations(
        name: impl Into<String>,
        prime: u32,
        quiver: Quiver,
        relations: &[Vec<(i64, Vec<String>)>],
    ) -> Result<Self> {
        let mut rels = Vec::with_capacity(relations.len());
        for r in relations {
            let mut terms = Vec::with_capacity(r.len());
            for (c, path) in r {
                let idx = path
                    .iter()
                    .map(|a| quiver.arrow_index(a))
                    .collect::<Result<Vec<_>>>()?;
                terms.push((Fp::new(*c, prime)?, idx));
            }
            rels.push(Relation { terms });
        }
        Algebra::new(name, prime, quiver, rels)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn arrow_count(&self) -> usize {
        self.quiver.arrows().len()
    }

    /// Reduces an integer into this algebra's field.
    pub fn scalar(&self, v: i64) -> u32 {
        reduce(v, self.prime)
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} over F_{}: {} vertices, {} arrows",
            self.name,
            self.prime,
            self.vertex_count(),
            self.arrow_count()
        )?;
        for r in &self.relations {
            write!(f, ", relation {}", r.display(&self.quiver))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_quivers() {
        assert!(Quiver::from_labels(&["1", "1"], &[]).is_err());
        assert!(Quiver::from_labels(&["1"], &[("a", "1", "2")]).is_err());
        assert!(Quiver::from_labels(&["1", "2"], &[("a", "1", "2"), ("a", "2", "1")]).is_err());
    }

    #[test]
    fn relation_endpoints_checked() {
        let q = Quiver::from_labels(
            &["1", "2", "3"],
            &[("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3")],
        )
        .unwrap();
        let ok = vec![(1, vec!["a".into(), "b".into()]), (-1, vec!["c".into()])];
        let alg = Algebra::with_named_relations("sq", 3, q.clone(), &[ok]).unwrap();
        assert_eq!(alg.relations()[0].terms[1].0.value(), 2);
        let not_composable = vec![(1, vec!["b".into(), "a".into()])];
        assert!(Algebra::with_named_relations("x", 2, q.clone(), &[not_composable]).is_err());
        let mixed = vec![(1, vec!["a".into()]), (1, vec!["c".into()])];
        assert!(Algebra::with_named_relations("x", 2, q, &[mixed]).is_err());
    }
}
