//! JSON algebra documents.
//!
//! Arrows name their endpoints by vertex name, relation paths list arrow
//! names in the order they are traversed, and coefficients are rational
//! strings such as `"1"` or `"-3/2"`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use tiltstab_core::linalg::Q;
use tiltstab_core::quiver::{Arrow, BoundQuiverAlgebra, Relation};

use crate::CliError;

pub const DEFAULT_NIL_BOUND: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: String,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nil_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gldim_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tilt_bound: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<TermSpec>>,
    #[serde(default)]
    pub options: Options,
}

fn schema(msg: impl Into<String>) -> CliError {
    CliError::Schema(msg.into())
}

pub fn parse_rational(s: &str) -> Result<Q, CliError> {
    s.trim().parse::<Q>().map_err(|_| schema(format!("`{s}` is not a rational literal of the form p/q")))
}

pub fn format_rational(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

impl AlgebraDocument {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| schema(format!("line {}, column {}: {e}", e.line(), e.column())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn builtin(name: &str) -> Option<Self> {
        let arrow = |name: &str, from: &str, to: &str| ArrowSpec { name: name.into(), from: from.into(), to: to.into() };
        match name {
            "p1-constructible" => Some(AlgebraDocument {
                vertices: vec!["1".into(), "2".into()],
                arrows: vec![arrow("c", "1", "2"), arrow("v", "2", "1")],
                relations: vec![vec![TermSpec { coeff: "1/1".into(), path: vec!["c".into(), "v".into()] }]],
                options: Options { nil_bound: Some(3), ..Options::default() },
            }),
            "kronecker" => Some(AlgebraDocument {
                vertices: vec!["1".into(), "2".into()],
                arrows: vec![arrow("a", "1", "2"), arrow("b", "1", "2")],
                relations: Vec::new(),
                options: Options { nil_bound: Some(2), ..Options::default() },
            }),
            _ => None,
        }
    }

    pub fn to_algebra(&self) -> Result<BoundQuiverAlgebra, CliError> {
        let mut seen = BTreeSet::new();
        for v in &self.vertices {
            if !seen.insert(v.as_str()) {
                return Err(schema(format!("vertices: duplicate name `{v}`")));
            }
        }
        let vertex = |field: &str, name: &str| {
            self.vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| schema(format!("{field}: unknown vertex `{name}`")))
        };
        let mut arrows = Vec::with_capacity(self.arrows.len());
        let mut names = BTreeSet::new();
        for (i, a) in self.arrows.iter().enumerate() {
            if !names.insert(a.name.as_str()) {
                return Err(schema(format!("arrows[{i}]: duplicate name `{}`", a.name)));
            }
            arrows.push(Arrow {
                name: a.name.clone(),
                source: vertex(&format!("arrows[{i}].from"), &a.from)?,
                target: vertex(&format!("arrows[{i}].to"), &a.to)?,
            });
        }
        let mut relations = Vec::with_capacity(self.relations.len());
        for (r, rel) in self.relations.iter().enumerate() {
            let mut terms = Vec::with_capacity(rel.len());
            for (t, term) in rel.iter().enumerate() {
                let field = format!("relations[{r}][{t}]");
                let coeff = parse_rational(&term.coeff).map_err(|e| schema(format!("{field}.coeff: {e}")))?;
                let mut path = Vec::with_capacity(term.path.len());
                for name in &term.path {
                    let k = arrows
                        .iter()
                        .position(|a| &a.name == name)
                        .ok_or_else(|| schema(format!("{field}.path: unknown arrow `{name}`")))?;
                    if let Some(&prev) = path.last() {
                        let p: &Arrow = &arrows[prev];
                        if p.target != arrows[k].source {
                            return Err(schema(format!(
                                "{field}.path: arrow `{}` does not start where `{}` ends",
                                arrows[k].name, p.name
                            )));
                        }
                    }
                    path.push(k);
                }
                terms.push((coeff, path));
            }
            relations.push(Relation { terms });
        }
        let nil = self.options.nil_bound.unwrap_or(DEFAULT_NIL_BOUND);
        BoundQuiverAlgebra::new(self.vertices.clone(), arrows, relations, nil).map_err(CliError::Math)
    }

    /// Document describing an algebra; relations are emitted as stored.
    pub fn from_algebra(alg: &BoundQuiverAlgebra, options: Options) -> Self {
        let vertices: Vec<String> = alg.vertices().to_vec();
        let arrows = alg
            .arrows()
            .iter()
            .map(|a| ArrowSpec { name: a.name.clone(), from: vertices[a.source].clone(), to: vertices[a.target].clone() })
            .collect();
        let relations = alg
            .relations()
            .iter()
            .map(|r| {
                r.terms
                    .iter()
                    .map(|(c, p)| TermSpec {
                        coeff: format_rational(c),
                        path: p.iter().map(|&k| alg.arrows()[k].name.clone()).collect(),
                    })
                    .collect()
            })
            .collect();
        let options = Options { nil_bound: Some(options.nil_bound.unwrap_or(alg.nil_bound())), ..options };
        AlgebraDocument { vertices, arrows, relations, options }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_have_expected_dimensions() {
        let vc = AlgebraDocument::builtin("p1-constructible").unwrap().to_algebra().unwrap();
        assert_eq!(vc.dim(), 5);
        let k = AlgebraDocument::builtin("kronecker").unwrap().to_algebra().unwrap();
        assert_eq!(k.dim(), 4);
    }

    #[test]
    fn the_other_composite_is_a_different_valid_algebra() {
        let mut doc = AlgebraDocument::builtin("p1-constructible").unwrap();
        doc.relations[0][0].path = vec!["v".into(), "c".into()];
        let alg = doc.to_algebra().unwrap();
        assert_eq!(alg.dim(), 5);
        let vc = AlgebraDocument::builtin("p1-constructible").unwrap().to_algebra().unwrap();
        assert_ne!(alg.cartan(), vc.cartan());
    }

    #[test]
    fn schema_errors_name_the_field() {
        let mut doc = AlgebraDocument::builtin("p1-constructible").unwrap();
        doc.relations[0][0].path = vec!["c".into(), "c".into()];
        let err = doc.to_algebra().unwrap_err().to_string();
        assert!(err.contains("relations[0][0].path"), "{err}");
        let err = AlgebraDocument::from_json("{\"vertices\": [\"1\"], \"arrows\": [], \"extra\": 1}").unwrap_err();
        assert!(matches!(err, CliError::Schema(_)));
        assert!(parse_rational("1/0").is_err());
        assert_eq!(parse_rational("-3/6").unwrap(), Q::new((-1).into(), 2.into()));
    }

    #[test]
    fn emit_then_parse_round_trips() {
        for name in ["p1-constructible", "kronecker"] {
            let alg = AlgebraDocument::builtin(name).unwrap().to_algebra().unwrap();
            let text = AlgebraDocument::from_algebra(&alg, Options::default()).to_json();
            let back = AlgebraDocument::from_json(&text).unwrap().to_algebra().unwrap();
            assert_eq!(back.basis(), alg.basis());
            assert_eq!(back.cartan(), alg.cartan());
        }
    }
}
