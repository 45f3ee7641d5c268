//! Combinatorial stable-map types: a morphism of dual graphs together with
//! per-component degrees and behavior tags.
//!
//! A source vertex maps either to a target vertex or, when contracted, to a
//! target node (an edge of the target graph). A source edge maps to a target
//! edge (the node) or is collapsed into a target vertex.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{graph_validate, is_stable_component, DualGraph, GraphViolation, RawGraph};

/// How a source component maps to its image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Behavior {
    /// Mapped to a point.
    Contracted,
    /// Finite and separable.
    Separable,
    /// Finite with inseparable degree `degree ≥ 2`.
    Inseparable { degree: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexImage {
    Vertex(String),
    Node { node: usize },
}

impl VertexImage {
    pub fn vertex(id: &str) -> Self {
        VertexImage::Vertex(id.to_string())
    }

    pub fn as_vertex(&self) -> Option<&str> {
        match self {
            VertexImage::Vertex(v) => Some(v),
            VertexImage::Node { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeImage {
    /// The node maps to the target node with this edge index.
    Edge(usize),
    /// The node maps into the interior of a target component.
    Vertex(String),
}

/// Unchecked map data, as read from JSON. `edge_map` is aligned with the
/// source edge list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawStableMap {
    pub source: RawGraph,
    pub target: RawGraph,
    pub vertex_map: BTreeMap<String, VertexImage>,
    #[serde(default)]
    pub edge_map: Vec<EdgeImage>,
    #[serde(default)]
    pub leg_map: BTreeMap<String, String>,
    pub degree: BTreeMap<String, u32>,
    pub behavior: BTreeMap<String, Behavior>,
    pub total_degree: u32,
    /// Optional recorded arithmetic genus of the source.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Source,
    Target,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind")]
pub enum MapViolation {
    #[error("{side:?} graph: {violation}")]
    Graph {
        side: Side,
        violation: GraphViolation,
    },
    #[error("{table} has no entry for source vertex {vertex:?}")]
    MissingAssignment { table: String, vertex: String },
    #[error("{table} refers to unknown vertex {vertex:?}")]
    UnknownVertex { table: String, vertex: String },
    #[error("{table} refers to unknown target edge {edge}")]
    UnknownEdge { table: String, edge: usize },
    #[error("edge_map has {found} entries for {expected} source edges")]
    EdgeMapLength { expected: usize, found: usize },
    #[error("vertex {vertex:?}: behavior and degree {degree} disagree (contracted iff degree 0)")]
    ContractedWithDegree { vertex: String, degree: u32 },
    #[error("vertex {vertex:?}: inseparable degree {inseparable} does not divide degree {degree}")]
    InvalidInseparableDegree {
        vertex: String,
        degree: u32,
        inseparable: u32,
    },
    #[error("vertex {vertex:?} maps to a node but is not contracted")]
    NonContractedOnNode { vertex: String },
    #[error("collapsed edge {edge} has endpoints over different places")]
    CollapsedEdgeSplit { edge: usize },
    #[error("edge {edge}: endpoint {vertex:?} does not map next to the image node")]
    NonAdjacentImage { edge: usize, vertex: String },
    #[error("leg {label:?}: {detail}")]
    LegMismatch { label: String, detail: String },
    #[error("recorded genus {recorded} differs from arithmetic genus {computed}")]
    GenusMismatch { recorded: i64, computed: i64 },
}

/// A validated stable-map type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableMapType {
    source: DualGraph,
    target: DualGraph,
    raw: RawStableMap,
}

impl Serialize for StableMapType {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.raw.serialize(serializer)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FinitenessAttributes {
    pub is_finite: bool,
    pub has_inseparable_part: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContractedStability {
    pub id: String,
    pub genus: u32,
    pub special_points: usize,
    pub stable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MapStabilityReport {
    pub stable: bool,
    pub contracted: Vec<ContractedStability>,
    pub failing: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GenusError {
    #[error("n + (2h-2)d = {0} is odd")]
    ParityError(i64),
    #[error("formula gives negative genus {0}")]
    NegativeGenus(i64),
}

/// Genus of a simply branched degree-`d` cover of a genus-`h` curve with
/// `n` branch points: `2g - 2 = n + (2h - 2) d`.
pub fn riemann_hurwitz_genus(d: i64, h: i64, n: i64) -> Result<i64, GenusError> {
    let rhs = n + (2 * h - 2) * d;
    if rhs.rem_euclid(2) != 0 {
        return Err(GenusError::ParityError(rhs));
    }
    let g = (rhs + 2) / 2;
    if g < 0 {
        return Err(GenusError::NegativeGenus(g));
    }
    Ok(g)
}

pub fn map_validate(raw: RawStableMap) -> Result<StableMapType, Vec<MapViolation>> {
    let mut violations = Vec::new();
    let source = graph_validate(raw.source.clone());
    let target = graph_validate(raw.target.clone());
    let (source, target) = match (source, target) {
        (Ok(s), Ok(t)) => (s, t),
        (s, t) => {
            for (side, res) in [(Side::Source, s.err()), (Side::Target, t.err())] {
                for violation in res.into_iter().flatten() {
                    violations.push(MapViolation::Graph { side, violation });
                }
            }
            return Err(violations);
        }
    };

    let missing = |table: &str, vertex: &str| MapViolation::MissingAssignment {
        table: table.into(),
        vertex: vertex.into(),
    };
    let unknown = |table: &str, vertex: &str| MapViolation::UnknownVertex {
        table: table.into(),
        vertex: vertex.into(),
    };

    for (table, keys) in [
        ("vertex_map", raw.vertex_map.keys().collect::<Vec<_>>()),
        ("degree", raw.degree.keys().collect()),
        ("behavior", raw.behavior.keys().collect()),
    ] {
        for key in keys {
            if !source.contains(key) {
                violations.push(unknown(table, key));
            }
        }
    }

    for v in source.vertices() {
        let id = v.id.as_str();
        let image = raw.vertex_map.get(id);
        let degree = raw.degree.get(id);
        let behavior = raw.behavior.get(id);
        if image.is_none() {
            violations.push(missing("vertex_map", id));
        }
        if degree.is_none() {
            violations.push(missing("degree", id));
        }
        if behavior.is_none() {
            violations.push(missing("behavior", id));
        }
        match image {
            Some(VertexImage::Vertex(w)) if !target.contains(w) => {
                violations.push(unknown("vertex_map", w));
            }
            Some(VertexImage::Node { node }) if *node >= target.edges().len() => {
                violations.push(MapViolation::UnknownEdge {
                    table: "vertex_map".into(),
                    edge: *node,
                });
            }
            _ => {}
        }
        if let (Some(&degree), Some(behavior)) = (degree, behavior) {
            let contracted = *behavior == Behavior::Contracted;
            if contracted != (degree == 0) {
                violations.push(MapViolation::ContractedWithDegree {
                    vertex: id.into(),
                    degree,
                });
            }
            if let Behavior::Inseparable { degree: insep } = *behavior {
                if insep < 2 || degree % insep != 0 {
                    violations.push(MapViolation::InvalidInseparableDegree {
                        vertex: id.into(),
                        degree,
                        inseparable: insep,
                    });
                }
            }
            if !contracted && matches!(image, Some(VertexImage::Node { .. })) {
                violations.push(MapViolation::NonContractedOnNode { vertex: id.into() });
            }
        }
    }

    if raw.edge_map.len() != source.edges().len() {
        violations.push(MapViolation::EdgeMapLength {
            expected: source.edges().len(),
            found: raw.edge_map.len(),
        });
    } else {
        for (e, ([u, v], image)) in source.edges().iter().zip(&raw.edge_map).enumerate() {
            let (Some(iu), Some(iv)) = (raw.vertex_map.get(u), raw.vertex_map.get(v)) else {
                continue;
            };
            match image {
                EdgeImage::Vertex(w) => {
                    if !target.contains(w) {
                        violations.push(unknown("edge_map", w));
                    } else if iu.as_vertex() != Some(w) || iv.as_vertex() != Some(w) {
                        violations.push(MapViolation::CollapsedEdgeSplit { edge: e });
                    }
                }
                EdgeImage::Edge(j) => {
                    let Some([a, b]) = target.edges().get(*j) else {
                        violations.push(MapViolation::UnknownEdge {
                            table: "edge_map".into(),
                            edge: *j,
                        });
                        continue;
                    };
                    for (end, img) in [(u, iu), (v, iv)] {
                        let near = match img {
                            VertexImage::Node { node } => node == j,
                            VertexImage::Vertex(w) => w == a || w == b,
                        };
                        if !near {
                            violations.push(MapViolation::NonAdjacentImage {
                                edge: e,
                                vertex: end.clone(),
                            });
                        }
                    }
                }
            }
        }
    }

    let source_labels: BTreeSet<_> = source.legs().iter().map(|l| l.label.as_str()).collect();
    let target_labels: BTreeSet<_> = target.legs().iter().map(|l| l.label.as_str()).collect();
    let leg_mismatch = |label: &str, detail: String| MapViolation::LegMismatch {
        label: label.into(),
        detail,
    };
    for key in raw.leg_map.keys() {
        if !source_labels.contains(key.as_str()) {
            violations.push(leg_mismatch(key, "not a source marking".into()));
        }
    }
    let mut hit = BTreeMap::new();
    for leg in source.legs() {
        let Some(t) = raw.leg_map.get(&leg.label) else {
            violations.push(leg_mismatch(&leg.label, "no image in leg_map".into()));
            continue;
        };
        if let Some(prev) = hit.insert(t.as_str(), leg.label.as_str()) {
            violations.push(leg_mismatch(
                &leg.label,
                format!("shares target marking {t:?} with {prev:?}"),
            ));
        }
        match target.leg(t) {
            None => violations.push(leg_mismatch(&leg.label, format!("unknown target marking {t:?}"))),
            Some(tl) => {
                let over = raw.vertex_map.get(&leg.vertex).and_then(VertexImage::as_vertex);
                if over.is_some_and(|w| w != tl.vertex) || over.is_none() {
                    violations.push(leg_mismatch(
                        &leg.label,
                        format!("lies on {:?}, which does not map to {:?}", leg.vertex, tl.vertex),
                    ));
                }
            }
        }
    }
    for t in target_labels {
        if !hit.contains_key(t) {
            violations.push(leg_mismatch(t, "target marking has no preimage".into()));
        }
    }

    if let Some(recorded) = raw.genus {
        let computed = source.arithmetic_genus();
        if recorded != computed {
            violations.push(MapViolation::GenusMismatch { recorded, computed });
        }
    }

    if violations.is_empty() {
        Ok(StableMapType {
            source,
            target,
            raw,
        })
    } else {
        Err(violations)
    }
}

impl RawStableMap {
    pub fn validate(self) -> Result<StableMapType, Vec<MapViolation>> {
        map_validate(self)
    }
}

impl StableMapType {
    pub fn source(&self) -> &DualGraph {
        &self.source
    }

    pub fn target(&self) -> &DualGraph {
        &self.target
    }

    pub fn raw(&self) -> &RawStableMap {
        &self.raw
    }

    pub fn total_degree(&self) -> u32 {
        self.raw.total_degree
    }

    pub fn image(&self, vertex: &str) -> &VertexImage {
        &self.raw.vertex_map[vertex]
    }

    pub fn degree(&self, vertex: &str) -> u32 {
        self.raw.degree[vertex]
    }

    pub fn behavior(&self, vertex: &str) -> Behavior {
        self.raw.behavior[vertex]
    }

    /// Sum of degrees of the non-contracted source components over `target_vertex`.
    pub fn degree_over(&self, target_vertex: &str) -> u32 {
        self.source
            .vertices()
            .iter()
            .filter(|v| self.behavior(&v.id) != Behavior::Contracted)
            .filter(|v| self.image(&v.id).as_vertex() == Some(target_vertex))
            .map(|v| self.degree(&v.id))
            .sum()
    }

    /// Every target component is covered with total degree `d`.
    pub fn degree_conservation(&self) -> bool {
        self.target
            .vertices()
            .iter()
            .all(|w| self.degree_over(&w.id) == self.raw.total_degree)
    }

    /// Three-point condition on the contracted components.
    pub fn map_stability(&self) -> MapStabilityReport {
        let contracted: Vec<_> = self
            .source
            .vertices()
            .iter()
            .filter(|v| self.behavior(&v.id) == Behavior::Contracted)
            .map(|v| {
                let special_points = self.source.special_points(&v.id);
                ContractedStability {
                    id: v.id.clone(),
                    genus: v.genus,
                    special_points,
                    stable: is_stable_component(v.genus, special_points),
                }
            })
            .collect();
        let failing: Vec<_> = contracted
            .iter()
            .filter(|c| !c.stable)
            .map(|c| c.id.clone())
            .collect();
        MapStabilityReport {
            stable: failing.is_empty(),
            contracted,
            failing,
        }
    }

    pub fn finiteness_attributes(&self) -> FinitenessAttributes {
        let behaviors: Vec<_> = self.raw.behavior.values().collect();
        FinitenessAttributes {
            is_finite: !behaviors.iter().any(|b| **b == Behavior::Contracted),
            has_inseparable_part: behaviors
                .iter()
                .any(|b| matches!(b, Behavior::Inseparable { .. })),
        }
    }

    /// Renames vertices of source and target and applies `marking` to the
    /// markings on both sides simultaneously.
    pub fn relabel(
        &self,
        source_vertex: impl Fn(&str) -> String,
        target_vertex: impl Fn(&str) -> String,
        marking: impl Fn(&str) -> String,
    ) -> Result<StableMapType, Vec<MapViolation>> {
        let raw = &self.raw;
        let source = self.source.relabel(&source_vertex, &marking).map_err(|v| {
            v.into_iter()
                .map(|violation| MapViolation::Graph {
                    side: Side::Source,
                    violation,
                })
                .collect::<Vec<_>>()
        })?;
        let target = self.target.relabel(&target_vertex, &marking).map_err(|v| {
            v.into_iter()
                .map(|violation| MapViolation::Graph {
                    side: Side::Target,
                    violation,
                })
                .collect::<Vec<_>>()
        })?;
        let rekey = |m: &BTreeMap<String, u32>| -> BTreeMap<String, u32> {
            m.iter().map(|(k, v)| (source_vertex(k), *v)).collect()
        };
        map_validate(RawStableMap {
            source: source.into_raw(),
            target: target.into_raw(),
            vertex_map: raw
                .vertex_map
                .iter()
                .map(|(k, img)| {
                    let img = match img {
                        VertexImage::Vertex(w) => VertexImage::Vertex(target_vertex(w)),
                        node => node.clone(),
                    };
                    (source_vertex(k), img)
                })
                .collect(),
            edge_map: raw
                .edge_map
                .iter()
                .map(|img| match img {
                    EdgeImage::Vertex(w) => EdgeImage::Vertex(target_vertex(w)),
                    edge => edge.clone(),
                })
                .collect(),
            leg_map: raw
                .leg_map
                .iter()
                .map(|(a, b)| (marking(a), marking(b)))
                .collect(),
            degree: rekey(&raw.degree),
            behavior: raw
                .behavior
                .iter()
                .map(|(k, b)| (source_vertex(k), *b))
                .collect(),
            total_degree: raw.total_degree,
            genus: raw.genus,
        })
    }

    /// Isomorphism of map types preserving marking labels: bijections of
    /// source and target vertices respecting genus, markings, degrees,
    /// behaviors, the vertex map and the edge multisets. Parallel target
    /// edges are not distinguished from each other.
    pub fn is_isomorphic(&self, other: &StableMapType) -> bool {
        if self.raw.total_degree != other.raw.total_degree
            || self.source.vertices().len() != other.source.vertices().len()
            || self.target.vertices().len() != other.target.vertices().len()
            || self.source.edges().len() != other.source.edges().len()
            || self.target.edges().len() != other.target.edges().len()
            || self.raw.leg_map != other.raw.leg_map
        {
            return false;
        }
        let target_ids: Vec<&str> = self.target.vertices().iter().map(|v| v.id.as_str()).collect();
        let other_target: Vec<&str> = other.target.vertices().iter().map(|v| v.id.as_str()).collect();
        let source_ids: Vec<&str> = self.source.vertices().iter().map(|v| v.id.as_str()).collect();
        let other_source: Vec<&str> = other.source.vertices().iter().map(|v| v.id.as_str()).collect();

        let target_sig = |m: &StableMapType, id: &str| {
            let legs: BTreeSet<String> = m.target.legs_on(id).map(|l| l.label.clone()).collect();
            (m.target.genus_of(id), legs)
        };
        let source_sig = |m: &StableMapType, id: &str| {
            let legs: BTreeSet<String> = m.source.legs_on(id).map(|l| l.label.clone()).collect();
            (m.source.genus_of(id), legs, m.degree(id), m.behavior(id))
        };

        for_each_bijection(&target_ids, &other_target, &|a, b| target_sig(self, a) == target_sig(other, b), &mut |tmap| {
            let edge_ends = |m: &StableMapType, j: usize, rename: &dyn Fn(&str) -> String| {
                let [a, b] = &m.target.edges()[j];
                let mut e = [rename(a), rename(b)];
                e.sort();
                e
            };
            let t_rename = |id: &str| tmap[id].to_string();
            let t_same = |id: &str| id.to_string();
            let mut mine: Vec<_> = (0..self.target.edges().len()).map(|j| edge_ends(self, j, &t_rename)).collect();
            let mut theirs: Vec<_> = (0..other.target.edges().len()).map(|j| edge_ends(other, j, &t_same)).collect();
            mine.sort();
            theirs.sort();
            if mine != theirs {
                return false;
            }
            let image_sig = |m: &StableMapType, img: &VertexImage, rename: &dyn Fn(&str) -> String| match img {
                VertexImage::Vertex(w) => vec![rename(w)],
                VertexImage::Node { node } => edge_ends(m, *node, rename).to_vec(),
            };
            for_each_bijection(
                &source_ids,
                &other_source,
                &|a, b| {
                    source_sig(self, a) == source_sig(other, b)
                        && image_sig(self, self.image(a), &t_rename) == image_sig(other, other.image(b), &t_same)
                },
                &mut |smap| {
                    let s_rename = |id: &str| smap[id].to_string();
                    let edge_sig = |m: &StableMapType, e: usize, sr: &dyn Fn(&str) -> String, tr: &dyn Fn(&str) -> String| {
                        let [u, v] = &m.source.edges()[e];
                        let mut ends = [sr(u), sr(v)];
                        ends.sort();
                        let img = match &m.raw.edge_map[e] {
                            EdgeImage::Vertex(w) => vec![tr(w)],
                            EdgeImage::Edge(j) => edge_ends(m, *j, tr).to_vec(),
                        };
                        (ends, img)
                    };
                    let mut mine: Vec<_> = (0..self.source.edges().len())
                        .map(|e| edge_sig(self, e, &s_rename, &t_rename))
                        .collect();
                    let mut theirs: Vec<_> = (0..other.source.edges().len())
                        .map(|e| edge_sig(other, e, &t_same, &t_same))
                        .collect();
                    mine.sort();
                    theirs.sort();
                    mine == theirs
                },
            )
        })
    }
}

/// Calls `found` on bijections `from → to` compatible with `allowed`,
/// stopping at the first one for which it returns true.
fn for_each_bijection<'a>(
    from: &[&'a str],
    to: &[&'a str],
    allowed: &dyn Fn(&str, &str) -> bool,
    found: &mut dyn FnMut(&BTreeMap<&'a str, &'a str>) -> bool,
) -> bool {
    fn go<'a>(
        i: usize,
        from: &[&'a str],
        to: &[&'a str],
        used: &mut Vec<bool>,
        current: &mut BTreeMap<&'a str, &'a str>,
        allowed: &dyn Fn(&str, &str) -> bool,
        found: &mut dyn FnMut(&BTreeMap<&'a str, &'a str>) -> bool,
    ) -> bool {
        if i == from.len() {
            return found(current);
        }
        for j in 0..to.len() {
            if used[j] || !allowed(from[i], to[j]) {
                continue;
            }
            used[j] = true;
            current.insert(from[i], to[j]);
            if go(i + 1, from, to, used, current, allowed, found) {
                return true;
            }
            current.remove(from[i]);
            used[j] = false;
        }
        false
    }
    if from.len() != to.len() {
        return false;
    }
    go(0, from, to, &mut vec![false; to.len()], &mut BTreeMap::new(), allowed, found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four_pointed(id: &str) -> RawGraph {
        RawGraph::default()
            .vertex(id, 0)
            .leg("0", id)
            .leg("1", id)
            .leg("∞", id)
            .leg("λ", id)
    }

    fn labels() -> BTreeMap<String, String> {
        ["0", "1", "∞", "λ"]
            .iter()
            .map(|l| (l.to_string(), l.to_string()))
            .collect()
    }

    fn identity_map() -> RawStableMap {
        RawStableMap {
            source: four_pointed("C"),
            target: four_pointed("D"),
            vertex_map: [("C".to_string(), VertexImage::vertex("D"))].into(),
            edge_map: vec![],
            leg_map: labels(),
            degree: [("C".to_string(), 1)].into(),
            behavior: [("C".to_string(), Behavior::Separable)].into(),
            total_degree: 1,
            genus: None,
        }
    }

    // Two inseparable double covers of the target components, with an
    // elliptic component over the target node.
    fn chain_map() -> RawStableMap {
        RawStableMap {
            source: RawGraph::default()
                .vertex("A", 0)
                .vertex("E", 1)
                .vertex("B", 0)
                .edge("A", "E")
                .edge("E", "B")
                .leg("0", "A")
                .leg("λ", "A")
                .leg("1", "B")
                .leg("∞", "B"),
            target: RawGraph::default()
                .vertex("D0", 0)
                .vertex("D1", 0)
                .edge("D0", "D1")
                .leg("0", "D0")
                .leg("λ", "D0")
                .leg("1", "D1")
                .leg("∞", "D1"),
            vertex_map: [
                ("A".to_string(), VertexImage::vertex("D0")),
                ("E".to_string(), VertexImage::Node { node: 0 }),
                ("B".to_string(), VertexImage::vertex("D1")),
            ]
            .into(),
            edge_map: vec![EdgeImage::Edge(0), EdgeImage::Edge(0)],
            leg_map: labels(),
            degree: [("A".to_string(), 2), ("E".to_string(), 0), ("B".to_string(), 2)].into(),
            behavior: [
                ("A".to_string(), Behavior::Inseparable { degree: 2 }),
                ("E".to_string(), Behavior::Contracted),
                ("B".to_string(), Behavior::Inseparable { degree: 2 }),
            ]
            .into(),
            total_degree: 2,
            genus: Some(1),
        }
    }

    #[test]
    fn identity_is_valid_and_finite() {
        let m = identity_map().validate().unwrap();
        assert!(m.degree_conservation());
        assert!(m.map_stability().stable);
        assert_eq!(
            m.finiteness_attributes(),
            FinitenessAttributes {
                is_finite: true,
                has_inseparable_part: false
            }
        );
    }

    #[test]
    fn contracted_with_degree() {
        let mut raw = identity_map();
        raw.behavior.insert("C".into(), Behavior::Contracted);
        raw.degree.insert("C".into(), 2);
        let err = raw.validate().unwrap_err();
        assert!(err.contains(&MapViolation::ContractedWithDegree {
            vertex: "C".into(),
            degree: 2
        }));
    }

    #[test]
    fn chain_conserves_degree() {
        let m = chain_map().validate().unwrap();
        assert!(m.degree_conservation());
        assert!(m.map_stability().stable);
        assert_eq!(
            m.finiteness_attributes(),
            FinitenessAttributes {
                is_finite: false,
                has_inseparable_part: true
            }
        );
        let mut raw = chain_map();
        raw.degree.insert("A".into(), 1);
        raw.behavior.insert("A".into(), Behavior::Separable);
        let broken = raw.validate().unwrap();
        assert!(!broken.degree_conservation());
    }

    #[test]
    fn constant_map() {
        let raw = RawStableMap {
            source: four_pointed("C"),
            target: RawGraph::default()
                .vertex("D", 0)
                .leg("0", "D")
                .leg("1", "D")
                .leg("∞", "D")
                .leg("λ", "D"),
            vertex_map: [("C".to_string(), VertexImage::vertex("D"))].into(),
            edge_map: vec![],
            leg_map: labels(),
            degree: [("C".to_string(), 0)].into(),
            behavior: [("C".to_string(), Behavior::Contracted)].into(),
            total_degree: 0,
            genus: None,
        };
        let m = raw.validate().unwrap();
        assert_eq!(
            m.finiteness_attributes(),
            FinitenessAttributes {
                is_finite: false,
                has_inseparable_part: false
            }
        );
        assert!(m.degree_conservation());
    }

    #[test]
    fn stability_of_contracted_components() {
        // elliptic tail with one node
        let mut raw = identity_map();
        raw.source = raw.source.vertex("E", 1).edge("C", "E");
        raw.vertex_map.insert("E".into(), VertexImage::vertex("D"));
        raw.edge_map = vec![EdgeImage::Vertex("D".into())];
        raw.degree.insert("E".into(), 0);
        raw.behavior.insert("E".into(), Behavior::Contracted);
        let m = raw.clone().validate().unwrap();
        let report = m.map_stability();
        assert!(report.stable);
        assert_eq!(report.contracted[0].special_points, 1);

        // rational bridge with two special points
        let mut raw = identity_map();
        raw.source = RawGraph::default()
            .vertex("C", 0)
            .vertex("R", 0)
            .vertex("C2", 0)
            .edge("C", "R")
            .edge("R", "C2")
            .leg("0", "C")
            .leg("1", "C")
            .leg("∞", "C2")
            .leg("λ", "C2");
        raw.vertex_map = [
            ("C".to_string(), VertexImage::vertex("D")),
            ("R".to_string(), VertexImage::vertex("D")),
            ("C2".to_string(), VertexImage::vertex("D")),
        ]
        .into();
        raw.edge_map = vec![EdgeImage::Vertex("D".into()); 2];
        raw.degree = [("C".to_string(), 1), ("R".to_string(), 0), ("C2".to_string(), 1)].into();
        raw.behavior = [
            ("C".to_string(), Behavior::Separable),
            ("R".to_string(), Behavior::Contracted),
            ("C2".to_string(), Behavior::Separable),
        ]
        .into();
        raw.total_degree = 2;
        let m = raw.validate().unwrap();
        let report = m.map_stability();
        assert!(!report.stable);
        assert_eq!(report.failing, vec!["R".to_string()]);
    }

    #[test]
    fn adjacency_and_leg_violations() {
        let mut raw = chain_map();
        raw.edge_map[0] = EdgeImage::Vertex("D1".into());
        assert!(raw
            .validate()
            .unwrap_err()
            .contains(&MapViolation::CollapsedEdgeSplit { edge: 0 }));

        let mut raw = chain_map();
        raw.leg_map.insert("0".into(), "1".into());
        let err = raw.validate().unwrap_err();
        assert!(err.iter().any(|v| matches!(v, MapViolation::LegMismatch { .. })));

        let mut raw = chain_map();
        raw.behavior.insert("E".into(), Behavior::Separable);
        raw.degree.insert("E".into(), 1);
        assert!(raw
            .validate()
            .unwrap_err()
            .contains(&MapViolation::NonContractedOnNode { vertex: "E".into() }));

        let mut raw = chain_map();
        raw.genus = Some(2);
        assert!(raw
            .validate()
            .unwrap_err()
            .contains(&MapViolation::GenusMismatch { recorded: 2, computed: 1 }));
    }

    #[test]
    fn hurwitz_formula() {
        assert_eq!(riemann_hurwitz_genus(2, 0, 4), Ok(1));
        assert_eq!(riemann_hurwitz_genus(3, 0, 4), Ok(0));
        for h in 0..5 {
            assert_eq!(riemann_hurwitz_genus(1, h, 0), Ok(h));
        }
        assert_eq!(riemann_hurwitz_genus(2, 0, 3), Err(GenusError::ParityError(-1)));
        assert_eq!(riemann_hurwitz_genus(3, 0, 2), Err(GenusError::NegativeGenus(-1)));
    }

    #[test]
    fn json_round_trip_and_behavior_encoding() {
        let m = chain_map().validate().unwrap();
        let json = serde_json::to_value(&m).unwrap();
        assert_eq!(json["behavior"]["A"], serde_json::json!({"kind":"inseparable","degree":2}));
        assert_eq!(json["vertex_map"]["E"], serde_json::json!({"node":0}));
        assert_eq!(json["edge_map"][0], serde_json::json!({"edge":0}));
        let back: RawStableMap = serde_json::from_value(json).unwrap();
        assert_eq!(back, chain_map());
    }

    #[test]
    fn isomorphism_ignores_names() {
        let m = chain_map().validate().unwrap();
        let renamed = m
            .relabel(|v| format!("x{v}"), |w| format!("y{w}"), |l| l.to_string())
            .unwrap();
        assert!(m.is_isomorphic(&renamed));
        let swapped = m
            .relabel(|v| v.to_string(), |w| w.to_string(), |l| match l {
                "0" => "1".into(),
                "1" => "0".into(),
                other => other.into(),
            })
            .unwrap();
        assert!(!m.is_isomorphic(&swapped));
    }
}
