//! Simple hypergraphs and their structural predicates.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Default vertex cap for [`Hypergraph::is_triangulated`].
pub const TRIANGULATED_VERTEX_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An edge: a set of at least two vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Edge(VertexSet);

impl Edge {
    pub fn vertices(&self) -> &VertexSet {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformityProfile {
    pub is_uniform: bool,
    /// Common edge size; `None` for edgeless or non-uniform hypergraphs.
    pub d: Option<usize>,
    /// Uniform, and any two intersecting edges share exactly `d - 1` vertices.
    pub is_special_class: bool,
}

/// A simple hypergraph: labelled vertices `0..n` and an antichain of edges.
///
/// Edge order is the input order and is significant for orderings used by
/// the Lyubeznik predicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    labels: Vec<String>,
    edges: Vec<Edge>,
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

impl Hypergraph {
    /// Validates and builds a hypergraph from labels and vertex-index edges.
    pub fn build(labels: Vec<String>, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = HashMap::new();
        for label in &labels {
            if seen.insert(label.as_str(), ()).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        let n = labels.len();
        let mut sets = Vec::with_capacity(edges.len());
        for (idx, edge) in edges.iter().enumerate() {
            if let Some(&v) = edge.iter().find(|&&v| v >= n) {
                return Err(Error::UnknownVertex(v.to_string()));
            }
            let set: VertexSet = edge.iter().copied().collect();
            if set.len() < 2 {
                return Err(Error::EdgeTooSmall {
                    edge: idx,
                    size: set.len(),
                });
            }
            sets.push(set);
        }
        for a in 0..sets.len() {
            for b in a + 1..sets.len() {
                if sets[a] == sets[b] {
                    return Err(Error::DuplicateEdge {
                        first: a,
                        second: b,
                    });
                }
                if sets[a].is_subset(&sets[b]) {
                    return Err(Error::ComparableEdges {
                        smaller: a,
                        larger: b,
                    });
                }
                if sets[b].is_subset(&sets[a]) {
                    return Err(Error::ComparableEdges {
                        smaller: b,
                        larger: a,
                    });
                }
            }
        }
        Ok(Self {
            labels,
            edges: sets.into_iter().map(Edge).collect(),
        })
    }

    /// Builds from vertex labels and edges given by label.
    pub fn from_labels(vertices: &[&str], edges: &[&[&str]]) -> Result<Self> {
        let index: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let edges = edges
            .iter()
            .map(|e| {
                e.iter()
                    .map(|l| index.get(l).copied().ok_or_else(|| Error::UnknownVertex(l.to_string())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::build(vertices.iter().map(|s| s.to_string()).collect(), edges)
    }

    /// Builds on vertices labelled `x1, .., xn`.
    pub fn from_edges(n: usize, edges: &[&[usize]]) -> Result<Self> {
        Self::build(
            (1..=n).map(|i| format!("x{i}")).collect(),
            edges.iter().map(|e| e.to_vec()).collect(),
        )
    }

    pub fn edgeless(labels: Vec<String>) -> Result<Self> {
        Self::build(labels, vec![])
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.0]
    }

    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.labels.iter().position(|l| l == label).map(VertexId)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, s: usize) -> Result<&Edge> {
        self.edges.get(s).ok_or(Error::IndexOutOfRange {
            index: s,
            len: self.edges.len(),
        })
    }

    pub(crate) fn set(&self, s: usize) -> &VertexSet {
        &self.edges[s].0
    }

    /// Edges as vertex-index lists, in edge order.
    pub fn edge_lists(&self) -> Vec<Vec<usize>> {
        self.edges.iter().map(|e| e.0.to_vec()).collect()
    }

    pub fn edge_index(&self, set: &VertexSet) -> Option<usize> {
        self.edges.iter().position(|e| &e.0 == set)
    }

    pub fn is_edge(&self, set: &VertexSet) -> bool {
        self.edge_index(set).is_some()
    }

    pub fn union_of(&self, indices: &[usize]) -> VertexSet {
        let mut u = VertexSet::new();
        for &i in indices {
            u.union_with(self.set(i));
        }
        u
    }

    pub fn max_edge_size(&self) -> usize {
        self.edges.iter().map(Edge::len).max().unwrap_or(0)
    }

    pub fn min_edge_size(&self) -> usize {
        self.edges.iter().map(Edge::len).min().unwrap_or(0)
    }

    pub fn is_graph(&self) -> bool {
        self.edges.iter().all(|e| e.len() == 2)
    }

    fn check_vertex(&self, x: VertexId) -> Result<()> {
        if x.0 < self.n() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(x.0.to_string()))
        }
    }

    fn check_vertices(&self, w: &VertexSet) -> Result<()> {
        match w.iter().find(|&v| v >= self.n()) {
            Some(v) => Err(Error::UnknownVertex(v.to_string())),
            None => Ok(()),
        }
    }

    /// Indices of the edges contained in `w`, in edge order.
    pub fn induced_edge_indices(&self, w: &VertexSet) -> Vec<usize> {
        (0..self.m()).filter(|&s| self.set(s).is_subset(w)).collect()
    }

    /// The induced subhypergraph on `w`, with vertices renumbered densely in
    /// increasing id order. Edge order is inherited.
    pub fn induced_subhypergraph(&self, w: &VertexSet) -> Result<Self> {
        self.check_vertices(w)?;
        let ids = w.to_vec();
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in ids.iter().enumerate() {
            new_id[v] = i;
        }
        let edges = self
            .induced_edge_indices(w)
            .into_iter()
            .map(|s| Edge(self.set(s).iter().map(|v| new_id[v]).collect()))
            .collect();
        Ok(Self {
            labels: ids.iter().map(|&v| self.labels[v].clone()).collect(),
            edges,
        })
    }

    /// `H \ S`: same vertices, edge `s` removed.
    pub fn delete_edge(&self, s: usize) -> Result<Self> {
        self.edge(s)?;
        let mut edges = self.edges.clone();
        edges.remove(s);
        Ok(Self {
            labels: self.labels.clone(),
            edges,
        })
    }

    /// Same vertices with edges in lexicographic order.
    pub fn lexicographic(&self) -> Self {
        let mut edges = self.edges.clone();
        edges.sort();
        Self {
            labels: self.labels.clone(),
            edges,
        }
    }

    /// `N(S)`: vertices outside `S` lying on an edge that meets `S`.
    pub fn edge_neighborhood(&self, s: usize) -> Result<VertexSet> {
        let edge = &self.edge(s)?.0;
        let mut out = VertexSet::new();
        for e in &self.edges {
            if e.0.intersects(edge) {
                out.union_with(&e.0);
            }
        }
        Ok(out.difference(edge))
    }

    /// Open and closed vertex neighbourhoods `N(x)` and `N[x]`.
    pub fn vertex_neighborhood(&self, x: VertexId) -> Result<(VertexSet, VertexSet)> {
        self.check_vertex(x)?;
        let closed = self.closed_neighborhood_within(x.0, None);
        let mut open = closed.clone();
        open.remove(x.0);
        Ok((open, closed))
    }

    fn closed_neighborhood_within(&self, x: usize, within: Option<&VertexSet>) -> VertexSet {
        let mut out = VertexSet::singleton(x);
        for e in &self.edges {
            if e.0.contains(x) && within.is_none_or(|w| e.0.is_subset(w)) {
                out.union_with(&e.0);
            }
        }
        out
    }

    pub fn uniformity_profile(&self) -> UniformityProfile {
        let d = self.edges.first().map(Edge::len);
        let is_uniform = self.edges.iter().all(|e| Some(e.len()) == d);
        let is_special_class = is_uniform
            && d.is_none_or(|d| {
                (0..self.m()).all(|a| {
                    (a + 1..self.m()).all(|b| {
                        let k = self.set(a).intersection(self.set(b)).len();
                        k == 0 || k == d - 1
                    })
                })
            });
        UniformityProfile {
            is_uniform,
            d: if is_uniform { d } else { None },
            is_special_class,
        }
    }

    fn uniform_d(&self) -> Result<Option<usize>> {
        let p = self.uniformity_profile();
        if p.is_uniform {
            Ok(p.d)
        } else {
            Err(Error::NotUniform)
        }
    }

    // Every d-subset of `closed` is an edge iff the number of edges inside
    // `closed` equals C(|closed|, d), since every edge has exactly d vertices.
    fn all_d_subsets_are_edges(&self, closed: &VertexSet, d: usize) -> bool {
        let inside = self.edges.iter().filter(|e| e.0.is_subset(closed)).count() as u128;
        inside == binomial(closed.len(), d)
    }

    fn simplicial_within(&self, x: usize, d: Option<usize>, within: &VertexSet) -> bool {
        match d {
            None => true,
            Some(d) => self.all_d_subsets_are_edges(&self.closed_neighborhood_within(x, Some(within)), d),
        }
    }

    /// Whether every d-subset of `N[x]` is an edge. Vertices of an edgeless
    /// hypergraph are simplicial.
    pub fn is_simplicial_vertex(&self, x: VertexId) -> Result<bool> {
        let d = self.uniform_d()?;
        self.check_vertex(x)?;
        Ok(self.simplicial_within(x.0, d, &self.vertices()))
    }

    /// Least-id simplicial vertex, if any.
    pub fn find_simplicial_vertex(&self) -> Result<Option<VertexId>> {
        let d = self.uniform_d()?;
        let all = self.vertices();
        Ok((0..self.n()).find(|&x| self.simplicial_within(x, d, &all)).map(VertexId))
    }

    pub fn is_triangulated(&self) -> Result<bool> {
        self.is_triangulated_capped(TRIANGULATED_VERTEX_CAP)
    }

    /// Whether every induced subhypergraph has a simplicial vertex.
    ///
    /// A simplicial vertex of `H` stays simplicial in every induced
    /// subhypergraph containing it, so `H` is triangulated iff some simplicial
    /// vertex can be deleted leaving a triangulated remainder, and any
    /// simplicial vertex may be chosen. The elimination therefore never needs
    /// to backtrack.
    pub fn is_triangulated_capped(&self, cap: usize) -> Result<bool> {
        let d = self.uniform_d()?;
        if self.n() > cap {
            return Err(Error::SizeCapExceeded {
                what: "vertex count",
                size: self.n(),
                cap,
            });
        }
        let mut remaining = self.vertices();
        while let Some(v) = remaining.iter().find(|&x| self.simplicial_within(x, d, &remaining)) {
            remaining.remove(v);
        }
        Ok(remaining.is_empty())
    }

    /// Special class and triangulated.
    pub fn is_special_triangulated(&self) -> Result<bool> {
        Ok(self.uniformity_profile().is_special_class && self.is_triangulated()?)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn p3() -> Hypergraph {
        Hypergraph::from_labels(&["x", "y", "z"], &[&["x", "y"], &["y", "z"]]).unwrap()
    }

    pub fn c3() -> Hypergraph {
        Hypergraph::from_labels(&["x", "y", "z"], &[&["x", "y"], &["x", "z"], &["y", "z"]]).unwrap()
    }

    pub fn p4() -> Hypergraph {
        Hypergraph::from_labels(&["w", "x", "y", "z"], &[&["w", "x"], &["x", "y"], &["y", "z"]]).unwrap()
    }

    pub fn c4() -> Hypergraph {
        Hypergraph::from_labels(
            &["w", "x", "y", "z"],
            &[&["w", "x"], &["x", "y"], &["y", "z"], &["z", "w"]],
        )
        .unwrap()
    }

    pub fn example_six() -> Hypergraph {
        Hypergraph::from_edges(6, &[&[0, 1, 2], &[1, 2, 3], &[1, 4, 5]]).unwrap()
    }

    /// Star hypergraph with d = 3, n = 2 on `{z1, z2, x1, x2}`.
    pub fn star32() -> Hypergraph {
        Hypergraph::from_labels(
            &["z1", "z2", "x1", "x2"],
            &[&["z1", "z2", "x1"], &["z1", "z2", "x2"]],
        )
        .unwrap()
    }

    fn set(h: &Hypergraph, labels: &[&str]) -> VertexSet {
        labels.iter().map(|l| h.vertex(l).unwrap().0).collect()
    }

    #[test]
    fn build_path() {
        let h = p3();
        assert_eq!((h.n(), h.m()), (3, 2));
        assert!(h.is_graph());
    }

    #[test]
    fn build_rejects_comparable_edges() {
        let err = Hypergraph::from_labels(&["x", "y", "z"], &[&["x", "y"], &["x", "y", "z"]]).unwrap_err();
        assert_eq!(err, Error::ComparableEdges { smaller: 0, larger: 1 });
    }

    #[test]
    fn build_errors() {
        assert!(matches!(
            Hypergraph::from_edges(3, &[&[0]]),
            Err(Error::EdgeTooSmall { edge: 0, size: 1 })
        ));
        assert!(matches!(
            Hypergraph::from_edges(3, &[&[0, 7]]),
            Err(Error::UnknownVertex(_))
        ));
        assert!(matches!(
            Hypergraph::from_edges(3, &[&[0, 1], &[1, 0]]),
            Err(Error::DuplicateEdge { first: 0, second: 1 })
        ));
        assert!(matches!(
            Hypergraph::from_labels(&["x", "x"], &[]),
            Err(Error::DuplicateLabel(_))
        ));
    }

    #[test]
    fn build_example_six() {
        let h = example_six();
        assert_eq!((h.n(), h.m()), (6, 3));
        assert_eq!(h.uniformity_profile().d, Some(3));
    }

    #[test]
    fn induced_subhypergraphs() {
        let h = p4();
        let sub = h.induced_subhypergraph(&set(&h, &["w", "x", "y"])).unwrap();
        assert_eq!(sub.edge_lists(), vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(sub.labels(), ["w", "x", "y"]);
        assert_eq!(h.induced_subhypergraph(&h.vertices()).unwrap(), h);

        let c = c4();
        let sub = c.induced_subhypergraph(&set(&c, &["w", "y"])).unwrap();
        assert_eq!((sub.n(), sub.m()), (2, 0));

        assert!(matches!(
            h.induced_subhypergraph(&VertexSet::singleton(9)),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn delete_edges() {
        let h = p3().delete_edge(0).unwrap();
        assert_eq!((h.n(), h.edge_lists()), (3, vec![vec![1, 2]]));
        assert_eq!(h.delete_edge(0).unwrap().m(), 0);
        let path = c3().delete_edge(0).unwrap();
        assert_eq!(path.edge_lists(), vec![vec![0, 2], vec![1, 2]]);
        assert!(matches!(p3().delete_edge(2), Err(Error::IndexOutOfRange { index: 2, len: 2 })));
    }

    #[test]
    fn edge_neighborhoods() {
        let h = p4();
        assert_eq!(h.edge_neighborhood(1).unwrap(), set(&h, &["w", "z"]));
        let single = Hypergraph::from_edges(2, &[&[0, 1]]).unwrap();
        assert!(single.edge_neighborhood(0).unwrap().is_empty());
        let ex = example_six();
        assert_eq!(ex.edge_neighborhood(0).unwrap().to_vec(), vec![3, 4, 5]);
        assert!(ex.edge_neighborhood(3).is_err());
    }

    #[test]
    fn vertex_neighborhoods() {
        let h = c3();
        let (open, closed) = h.vertex_neighborhood(VertexId(0)).unwrap();
        assert_eq!((open.to_vec(), closed.to_vec()), (vec![1, 2], vec![0, 1, 2]));
        let e = Hypergraph::edgeless(vec!["x".into()]).unwrap();
        let (open, closed) = e.vertex_neighborhood(VertexId(0)).unwrap();
        assert!(open.is_empty());
        assert_eq!(closed.to_vec(), vec![0]);
        let s = star32();
        let (open, _) = s.vertex_neighborhood(VertexId(0)).unwrap();
        assert_eq!(open, set(&s, &["z2", "x1", "x2"]));
        assert!(h.vertex_neighborhood(VertexId(5)).is_err());
    }

    #[test]
    fn simplicial_vertices() {
        assert!((0..3).all(|x| c3().is_simplicial_vertex(VertexId(x)).unwrap()));
        assert!((0..4).all(|x| !c4().is_simplicial_vertex(VertexId(x)).unwrap()));
        let h = p4();
        assert!(h.is_simplicial_vertex(h.vertex("w").unwrap()).unwrap());
        assert!(!h.is_simplicial_vertex(h.vertex("x").unwrap()).unwrap());
        let mixed = Hypergraph::from_edges(4, &[&[0, 1], &[1, 2, 3]]).unwrap();
        assert_eq!(mixed.is_simplicial_vertex(VertexId(0)), Err(Error::NotUniform));
    }

    #[test]
    fn triangulated() {
        assert!(!c4().is_triangulated().unwrap());
        assert!(c3().is_triangulated().unwrap());
        assert!(p4().is_triangulated().unwrap());
        let big = Hypergraph::edgeless((0..17).map(|i| i.to_string()).collect()).unwrap();
        assert!(matches!(big.is_triangulated(), Err(Error::SizeCapExceeded { .. })));
    }

    #[test]
    fn simplicial_vertex_search() {
        assert_eq!(c4().find_simplicial_vertex().unwrap(), None);
        assert_eq!(p4().find_simplicial_vertex().unwrap(), Some(VertexId(0)));
    }

    #[test]
    fn uniformity_profiles() {
        let p = example_six().uniformity_profile();
        assert_eq!((p.is_uniform, p.d, p.is_special_class), (true, Some(3), false));
        let p = star32().uniformity_profile();
        assert!(p.is_uniform && p.is_special_class);
        let p = p3().uniformity_profile();
        assert_eq!((p.d, p.is_special_class), (Some(2), true));
        let p = Hypergraph::from_edges(4, &[&[0, 1], &[1, 2, 3]]).unwrap().uniformity_profile();
        assert!(!p.is_uniform && !p.is_special_class);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(16, 8), 12870);
    }
}
