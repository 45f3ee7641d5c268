//! Dual graphs of nodal pointed curves.
//!
//! Vertices are irreducible components labelled with their geometric genus,
//! edges are nodes (loops allowed), legs are marked points.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub genus: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Leg {
    pub label: String,
    pub vertex: String,
}

/// Unchecked graph data, as read from JSON.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGraph {
    pub vertices: Vec<Vertex>,
    #[serde(default)]
    pub edges: Vec<[String; 2]>,
    #[serde(default)]
    pub legs: Vec<Leg>,
}

impl RawGraph {
    pub fn vertex(mut self, id: &str, genus: u32) -> Self {
        self.vertices.push(Vertex {
            id: id.to_string(),
            genus,
        });
        self
    }

    pub fn edge(mut self, a: &str, b: &str) -> Self {
        self.edges.push([a.to_string(), b.to_string()]);
        self
    }

    pub fn leg(mut self, label: &str, vertex: &str) -> Self {
        self.legs.push(Leg {
            label: label.to_string(),
            vertex: vertex.to_string(),
        });
        self
    }

    pub fn validate(self) -> Result<DualGraph, Vec<GraphViolation>> {
        graph_validate(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind")]
pub enum GraphViolation {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("vertex id {id:?} is used more than once")]
    DuplicateVertex { id: String },
    #[error("marking {label:?} is used more than once")]
    DuplicateMarking { label: String },
    #[error("{element} refers to missing vertex {vertex:?}")]
    DanglingReference { element: String, vertex: String },
    #[error("graph is disconnected: components {components:?}")]
    Disconnected { components: Vec<Vec<String>> },
}

/// A validated dual graph: connected, distinct markings, no dangling ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    raw: RawGraph,
    index: BTreeMap<String, usize>,
}

/// Checks the graph invariants, reporting every violation found.
pub fn graph_validate(raw: RawGraph) -> Result<DualGraph, Vec<GraphViolation>> {
    let mut violations = Vec::new();
    if raw.vertices.is_empty() {
        violations.push(GraphViolation::EmptyGraph);
    }
    let mut index = BTreeMap::new();
    for (i, v) in raw.vertices.iter().enumerate() {
        if index.insert(v.id.clone(), i).is_some() {
            violations.push(GraphViolation::DuplicateVertex { id: v.id.clone() });
        }
    }
    let mut labels = BTreeSet::new();
    for leg in &raw.legs {
        if !labels.insert(leg.label.as_str()) {
            violations.push(GraphViolation::DuplicateMarking {
                label: leg.label.clone(),
            });
        }
        if !index.contains_key(&leg.vertex) {
            violations.push(GraphViolation::DanglingReference {
                element: format!("leg {:?}", leg.label),
                vertex: leg.vertex.clone(),
            });
        }
    }
    let mut uf = UnionFind::new(raw.vertices.len());
    for (e, [a, b]) in raw.edges.iter().enumerate() {
        let mut ok = true;
        for end in [a, b] {
            if !index.contains_key(end) {
                violations.push(GraphViolation::DanglingReference {
                    element: format!("edge {e}"),
                    vertex: end.clone(),
                });
                ok = false;
            }
        }
        if ok {
            uf.union(index[a], index[b]);
        }
    }
    if !raw.vertices.is_empty() {
        let mut groups: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for (i, v) in raw.vertices.iter().enumerate() {
            groups.entry(uf.find(i)).or_default().push(v.id.clone());
        }
        if groups.len() > 1 {
            violations.push(GraphViolation::Disconnected {
                components: groups.into_values().collect(),
            });
        }
    }
    if violations.is_empty() {
        Ok(DualGraph { raw, index })
    } else {
        Err(violations)
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if two distinct classes were merged.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexStability {
    pub id: String,
    pub genus: u32,
    pub special_points: usize,
    pub stable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub stable: bool,
    pub vertices: Vec<VertexStability>,
    pub failing: Vec<String>,
}

/// The stability inequality `2g - 2 + n > 0` for a component with `n` special points.
pub fn is_stable_component(genus: u32, special_points: usize) -> bool {
    2 * genus as i64 - 2 + special_points as i64 > 0
}

impl DualGraph {
    pub fn raw(&self) -> &RawGraph {
        &self.raw
    }

    pub fn into_raw(self) -> RawGraph {
        self.raw
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.raw.vertices
    }

    pub fn edges(&self) -> &[[String; 2]] {
        &self.raw.edges
    }

    pub fn legs(&self) -> &[Leg] {
        &self.raw.legs
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub fn genus_of(&self, id: &str) -> Option<u32> {
        self.index.get(id).map(|&i| self.raw.vertices[i].genus)
    }

    pub fn leg(&self, label: &str) -> Option<&Leg> {
        self.raw.legs.iter().find(|l| l.label == label)
    }

    pub fn legs_on<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a Leg> + 'a {
        self.raw.legs.iter().filter(move |l| l.vertex == id)
    }

    /// Number of edge endpoints at `id`; a loop counts twice.
    pub fn valence(&self, id: &str) -> usize {
        self.raw
            .edges
            .iter()
            .map(|[a, b]| (a == id) as usize + (b == id) as usize)
            .sum()
    }

    /// Legs plus edge endpoints on the vertex.
    pub fn special_points(&self, id: &str) -> usize {
        self.legs_on(id).count() + self.valence(id)
    }

    /// True if `a == b` or some edge joins them.
    pub fn adjacent_or_equal(&self, a: &str, b: &str) -> bool {
        a == b
            || self
                .raw
                .edges
                .iter()
                .any(|[x, y]| (x == a && y == b) || (x == b && y == a))
    }

    /// First Betti number `E - V + 1` of the (connected) graph.
    pub fn betti_number(&self) -> i64 {
        self.raw.edges.len() as i64 - self.raw.vertices.len() as i64 + 1
    }

    /// `Σ g_v + b₁(G)`.
    pub fn arithmetic_genus(&self) -> i64 {
        let geometric: i64 = self.raw.vertices.iter().map(|v| v.genus as i64).sum();
        geometric + self.betti_number()
    }

    pub fn pointed_stability(&self) -> StabilityReport {
        let vertices: Vec<_> = self
            .raw
            .vertices
            .iter()
            .map(|v| {
                let special_points = self.special_points(&v.id);
                VertexStability {
                    id: v.id.clone(),
                    genus: v.genus,
                    special_points,
                    stable: is_stable_component(v.genus, special_points),
                }
            })
            .collect();
        let failing: Vec<_> = vertices
            .iter()
            .filter(|v| !v.stable)
            .map(|v| v.id.clone())
            .collect();
        StabilityReport {
            stable: failing.is_empty(),
            vertices,
            failing,
        }
    }

    /// Contracts edge `index`. A non-loop edge merges its endpoints into the
    /// first one with genus `g_a + g_b`; a loop is removed and adds 1 to the genus.
    pub fn contract_edge(&self, index: usize) -> DualGraph {
        let [a, b] = self.raw.edges[index].clone();
        let mut raw = self.raw.clone();
        raw.edges.remove(index);
        if a == b {
            let i = self.index[&a];
            raw.vertices[i].genus += 1;
        } else {
            let gb = self.genus_of(&b).unwrap();
            raw.vertices.retain(|v| v.id != b);
            raw.vertices
                .iter_mut()
                .find(|v| v.id == a)
                .unwrap()
                .genus += gb;
            for end in raw.edges.iter_mut().flat_map(|e| e.iter_mut()) {
                if *end == b {
                    *end = a.clone();
                }
            }
            for leg in &mut raw.legs {
                if leg.vertex == b {
                    leg.vertex = a.clone();
                }
            }
        }
        graph_validate(raw).expect("contraction preserves validity")
    }

    /// Renames vertices and markings; both maps must be injective on the ids used.
    pub fn relabel(
        &self,
        vertex: impl Fn(&str) -> String,
        marking: impl Fn(&str) -> String,
    ) -> Result<DualGraph, Vec<GraphViolation>> {
        let raw = RawGraph {
            vertices: self
                .raw
                .vertices
                .iter()
                .map(|v| Vertex {
                    id: vertex(&v.id),
                    genus: v.genus,
                })
                .collect(),
            edges: self
                .raw
                .edges
                .iter()
                .map(|[a, b]| [vertex(a), vertex(b)])
                .collect(),
            legs: self
                .raw
                .legs
                .iter()
                .map(|l| Leg {
                    label: marking(&l.label),
                    vertex: vertex(&l.vertex),
                })
                .collect(),
        };
        graph_validate(raw)
    }
}

impl Serialize for DualGraph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.raw.serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_elliptic_vertex() {
        let g = RawGraph::default().vertex("C", 1).leg("0", "C").validate().unwrap();
        assert_eq!(g.arithmetic_genus(), 1);
        assert!(g.pointed_stability().stable);
    }

    #[test]
    fn disconnected() {
        let err = RawGraph::default()
            .vertex("A", 0)
            .vertex("B", 0)
            .validate()
            .unwrap_err();
        assert_eq!(
            err,
            vec![GraphViolation::Disconnected {
                components: vec![vec!["A".into()], vec!["B".into()]]
            }]
        );
    }

    #[test]
    fn duplicate_marking() {
        let err = RawGraph::default()
            .vertex("A", 0)
            .leg("1", "A")
            .leg("1", "A")
            .validate()
            .unwrap_err();
        assert_eq!(
            err,
            vec![GraphViolation::DuplicateMarking { label: "1".into() }]
        );
    }

    #[test]
    fn dangling_and_empty() {
        let err = RawGraph::default()
            .vertex("A", 0)
            .edge("A", "Z")
            .leg("0", "Y")
            .validate()
            .unwrap_err();
        assert_eq!(err.len(), 2);
        assert!(err
            .iter()
            .all(|v| matches!(v, GraphViolation::DanglingReference { .. })));
        assert_eq!(
            RawGraph::default().validate().unwrap_err(),
            vec![GraphViolation::EmptyGraph]
        );
        let dup = RawGraph::default().vertex("A", 0).vertex("A", 1).validate();
        assert!(dup
            .unwrap_err()
            .contains(&GraphViolation::DuplicateVertex { id: "A".into() }));
    }

    #[test]
    fn genus_examples() {
        let banana = RawGraph::default()
            .vertex("A", 0)
            .vertex("B", 0)
            .edge("A", "B")
            .edge("A", "B")
            .validate()
            .unwrap();
        assert_eq!(banana.arithmetic_genus(), 1);
        // elliptic vertex with three rational vertices hanging off in a tree
        let tree = RawGraph::default()
            .vertex("C1", 1)
            .vertex("C0'", 0)
            .vertex("C0_1", 0)
            .vertex("C0_2", 0)
            .edge("C1", "C0'")
            .edge("C0'", "C0_1")
            .edge("C0'", "C0_2")
            .validate()
            .unwrap();
        assert_eq!(tree.betti_number(), 0);
        assert_eq!(tree.arithmetic_genus(), 1);
        let looped = RawGraph::default().vertex("A", 0).edge("A", "A").validate().unwrap();
        assert_eq!(looped.arithmetic_genus(), 1);
        assert_eq!(looped.valence("A"), 2);
    }

    #[test]
    fn stability_examples() {
        let four = RawGraph::default()
            .vertex("D", 0)
            .leg("0", "D")
            .leg("1", "D")
            .leg("∞", "D")
            .leg("λ", "D")
            .validate()
            .unwrap();
        assert!(four.pointed_stability().stable);
        let two = RawGraph::default()
            .vertex("D", 0)
            .leg("0", "D")
            .leg("1", "D")
            .validate()
            .unwrap();
        let report = two.pointed_stability();
        assert!(!report.stable);
        assert_eq!(report.failing, vec!["D".to_string()]);
        let split = RawGraph::default()
            .vertex("D0", 0)
            .vertex("D1", 0)
            .edge("D0", "D1")
            .leg("0", "D0")
            .leg("λ", "D0")
            .leg("1", "D1")
            .leg("∞", "D1")
            .validate()
            .unwrap();
        assert!(split.pointed_stability().stable);
    }

    #[test]
    fn contraction() {
        let g = RawGraph::default()
            .vertex("A", 0)
            .vertex("B", 1)
            .edge("A", "B")
            .edge("A", "B")
            .edge("B", "B")
            .leg("x", "B")
            .validate()
            .unwrap();
        let c = g.contract_edge(0);
        assert_eq!(c.vertices(), &[Vertex { id: "A".into(), genus: 1 }]);
        assert_eq!(c.edges().len(), 2);
        assert_eq!(c.legs()[0].vertex, "A");
        assert_eq!(c.arithmetic_genus(), g.arithmetic_genus());
        let l = g.contract_edge(2);
        assert_eq!(l.genus_of("B"), Some(2));
        assert_eq!(l.arithmetic_genus(), g.arithmetic_genus());
    }

    #[test]
    fn json_schema_shape() {
        let json = r#"{"vertices":[{"id":"C0","genus":0},{"id":"C1","genus":1}],"edges":[["C0","C1"]],"legs":[{"label":"0","vertex":"C0"}]}"#;
        let raw: RawGraph = serde_json::from_str(json).unwrap();
        let g = raw.validate().unwrap();
        assert_eq!(serde_json::to_string(&g).unwrap(), json);
    }
}
