//! DOT and JSON renderings of labeled quivers.

use std::fmt::Write as _;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::canonical_algebra::{vertex_kinds, Arrow, LabeledQuiver, PathRelation, VertexKind};
use crate::coxring::Monomial;
use crate::error::{Error, Result};
use crate::picard::{PicElt, Rational, WplData};

pub const SCHEMA_VERSION: u32 = 1;

/// `a/b`, or `a` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let den: num_bigint::BigInt = b.trim().parse().ok()?;
            if den == num_bigint::BigInt::from(0) {
                return None;
            }
            Some(Rational::new(a.trim().parse().ok()?, den))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// `v0`, `v{arm}{j}` (1-based arm), `v1` for the sink.
pub fn vertex_name(kind: VertexKind) -> String {
    match kind {
        VertexKind::Source => "v0".into(),
        VertexKind::Arm { arm, j } => format!("v{}{}", arm + 1, j),
        VertexKind::Sink => "v1".into(),
    }
}

/// `O`, `O(x1)`, `O(2x2)`, `O(c)`.
pub fn bundle_name(kind: VertexKind) -> String {
    match kind {
        VertexKind::Source => "O".into(),
        VertexKind::Arm { arm, j: 1 } => format!("O(x{})", arm + 1),
        VertexKind::Arm { arm, j } => format!("O({j}x{})", arm + 1),
        VertexKind::Sink => "O(c)".into(),
    }
}

pub fn to_dot(w: &WplData, q: &LabeledQuiver) -> String {
    let kinds = vertex_kinds(w);
    let mut out = String::from("digraph {\n");
    for k in &kinds {
        writeln!(
            out,
            "  {} [label=\"{}\"];",
            vertex_name(*k),
            bundle_name(*k)
        )
        .unwrap();
    }
    for a in &q.arrows {
        writeln!(
            out,
            "  {} -> {} [label=\"{}\"];",
            vertex_name(kinds[a.src]),
            vertex_name(kinds[a.dst]),
            a.label
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDoc {
    pub id: usize,
    pub degree: PicElt,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowDoc {
    pub src: usize,
    pub dst: usize,
    pub label: Monomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub coeff: String,
    /// Arrow indices from source to target.
    pub path: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationDoc {
    pub src: usize,
    pub dst: usize,
    pub k: u32,
    pub terms: Vec<TermDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverDoc {
    pub schema: u32,
    pub weights: Vec<i64>,
    pub lambda: Vec<String>,
    pub vertices: Vec<VertexDoc>,
    pub arrows: Vec<ArrowDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<RelationDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_max: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closure_verified: Option<bool>,
}

impl QuiverDoc {
    pub fn new(w: &WplData, q: &LabeledQuiver) -> Self {
        let kinds = vertex_kinds(w);
        QuiverDoc {
            schema: SCHEMA_VERSION,
            weights: w.weights().to_vec(),
            lambda: w.lambdas().iter().map(format_rational).collect(),
            vertices: q
                .vertices
                .iter()
                .enumerate()
                .map(|(id, d)| VertexDoc {
                    id,
                    degree: d.clone(),
                    name: vertex_name(kinds[id]),
                })
                .collect(),
            arrows: q
                .arrows
                .iter()
                .map(|a| ArrowDoc {
                    src: a.src,
                    dst: a.dst,
                    label: a.label.clone(),
                })
                .collect(),
            relations: None,
            k_max: None,
            closure_verified: None,
        }
    }

    /// Attaches relations; each is placed by the endpoints and `t`-degree of its first path.
    pub fn with_relations(mut self, q: &LabeledQuiver, relations: &[PathRelation]) -> Self {
        let docs = relations
            .iter()
            .map(|r| {
                let path = &r.terms[0].1;
                RelationDoc {
                    src: q.arrows[path[0]].src,
                    dst: q.arrows[*path.last().unwrap()].dst,
                    k: path.iter().map(|&a| q.arrows[a].label.t).sum(),
                    terms: r
                        .terms
                        .iter()
                        .map(|(c, p)| TermDoc {
                            coeff: format_rational(c),
                            path: p.clone(),
                        })
                        .collect(),
                }
            })
            .collect();
        self.relations = Some(docs);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("quiver documents serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse {
            offset: 0,
            message: e.to_string(),
        })
    }

    pub fn wpl(&self) -> Result<WplData> {
        let lambda = self
            .lambda
            .iter()
            .map(|s| parse_rational(s).ok_or_else(|| Error::Lambda(format!("cannot parse {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        WplData::new(&self.weights, lambda)
    }

    pub fn quiver(&self) -> LabeledQuiver {
        LabeledQuiver::new(
            self.vertices.iter().map(|v| v.degree.clone()).collect(),
            self.arrows
                .iter()
                .map(|a| Arrow {
                    src: a.src,
                    dst: a.dst,
                    label: a.label.clone(),
                })
                .collect(),
        )
    }

    pub fn relations(&self) -> Option<Vec<PathRelation>> {
        self.relations.as_ref().map(|rs| {
            rs.iter()
                .map(|r| PathRelation {
                    terms: r
                        .terms
                        .iter()
                        .map(|t| {
                            (
                                parse_rational(&t.coeff).expect("coefficient"),
                                t.path.clone(),
                            )
                        })
                        .collect(),
                })
                .collect()
        })
    }
}
