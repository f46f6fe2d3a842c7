//! Bouquets in graphs and the invariants `d_G`, `d'_G`.
//!
//! A bouquet is a star subgraph: a root joined to one or more flowers. A set
//! of bouquets is strongly disjoint when the bouquets are vertex-disjoint and
//! one stem can be chosen from each so that the chosen stems form an induced
//! matching.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{self_disjoint_core, EdgeFamily};
use crate::hypergraph::{Hypergraph, VertexId};
use crate::vertex_set::VertexSet;

/// A star with at least one flower. A bouquet with a single flower is an
/// edge with no distinguished end, so it is stored with the smaller vertex
/// as root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bouquet {
    root: VertexId,
    flowers: VertexSet,
}

impl Bouquet {
    pub fn new(root: VertexId, flowers: VertexSet) -> Result<Self> {
        if flowers.is_empty() || flowers.contains(root.0) {
            return Err(Error::NotStronglyDisjoint(format!(
                "bouquet at {root} needs flowers other than its root"
            )));
        }
        if flowers.len() == 1 {
            let f = flowers.first().unwrap();
            if f < root.0 {
                return Ok(Self {
                    root: VertexId(f),
                    flowers: VertexSet::singleton(root.0),
                });
            }
        }
        Ok(Self { root, flowers })
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn flowers(&self) -> &VertexSet {
        &self.flowers
    }

    pub fn stems(&self) -> Vec<VertexSet> {
        self.flowers
            .iter()
            .map(|f| [self.root.0, f].into_iter().collect())
            .collect()
    }

    pub fn vertices(&self) -> VertexSet {
        let mut v = self.flowers.clone();
        v.insert(self.root.0);
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BouquetInvariants {
    pub d_g: usize,
    pub d_g_prime: usize,
    /// Lexicographically least optimal edge set for `d_G`, as bouquets.
    pub d_g_witness: Vec<Bouquet>,
    pub d_g_prime_witness: Vec<Bouquet>,
}

fn require_graph(g: &Hypergraph) -> Result<()> {
    if g.is_graph() {
        Ok(())
    } else {
        Err(Error::NotAGraph)
    }
}

/// Groups vertex-disjoint stars given by edge indices into bouquets, or
/// `None` if some component is not a star.
fn stars(g: &Hypergraph, edges: &[usize]) -> Option<Vec<Bouquet>> {
    let mut degree = vec![0usize; g.n()];
    for &s in edges {
        for v in g.set(s) {
            degree[v] += 1;
        }
    }
    let mut roots: Vec<(usize, VertexSet)> = Vec::new();
    for &s in edges {
        let [u, v] = <[usize; 2]>::try_from(g.set(s).to_vec()).ok()?;
        let (root, flower) = match (degree[u], degree[v]) {
            (1, 1) => (u.min(v), u.max(v)),
            (_, 1) => (u, v),
            (1, _) => (v, u),
            _ => return None,
        };
        match roots.iter_mut().find(|(r, _)| *r == root) {
            Some((_, flowers)) => flowers.insert(flower),
            None => roots.push((root, VertexSet::singleton(flower))),
        }
    }
    roots.sort_by_key(|(r, _)| *r);
    Some(
        roots
            .into_iter()
            .map(|(r, f)| Bouquet::new(VertexId(r), f).expect("flowers differ from root"))
            .collect(),
    )
}

/// Whether one stem per bouquet can be chosen to form an induced matching.
fn has_stem_selection(g: &Hypergraph, bouquets: &[Bouquet]) -> bool {
    fn rec(g: &Hypergraph, bouquets: &[Bouquet], chosen: &mut Vec<VertexSet>) -> bool {
        let Some((first, rest)) = bouquets.split_first() else {
            return true;
        };
        for stem in first.stems() {
            // Only edges joining the new stem to an earlier one can spoil
            // inducedness; stems are vertex-disjoint.
            let clash = chosen.iter().any(|c| {
                let u = c.union(&stem);
                g.edges().iter().any(|e| e.vertices().is_subset(&u) && e.vertices() != c && e.vertices() != &stem)
            });
            if !clash {
                chosen.push(stem);
                if rec(g, rest, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    rec(g, bouquets, &mut Vec::new())
}

pub fn bouquet_invariants(g: &Hypergraph) -> Result<BouquetInvariants> {
    require_graph(g)?;
    let mut best = BouquetInvariants {
        d_g: 0,
        d_g_prime: 0,
        d_g_witness: vec![],
        d_g_prime_witness: vec![],
    };
    let mut edges = Vec::new();
    let mut degree = vec![0usize; g.n()];
    search(g, 0, &mut edges, &mut degree, &mut best);
    Ok(best)
}

// Star forests are closed under taking subsets, so depth-first search in
// increasing edge order visits each one once, in lexicographic order.
fn search(g: &Hypergraph, start: usize, edges: &mut Vec<usize>, degree: &mut [usize], best: &mut BouquetInvariants) {
    if !edges.is_empty() {
        if let Some(bouquets) = stars(g, edges) {
            let (i, j) = (edges.len(), bouquets.len());
            if (i > best.d_g || j > best.d_g_prime) && has_stem_selection(g, &bouquets) {
                if i > best.d_g {
                    best.d_g = i;
                    best.d_g_witness = bouquets.clone();
                }
                if j > best.d_g_prime {
                    best.d_g_prime = j;
                    best.d_g_prime_witness = bouquets;
                }
            }
        }
    }
    for s in start..g.m() {
        let ends = g.set(s).to_vec();
        for &v in &ends {
            degree[v] += 1;
        }
        edges.push(s);
        let forest = edges
            .iter()
            .all(|&e| g.set(e).iter().any(|v| degree[v] == 1));
        if forest {
            search(g, s + 1, edges, degree, best);
        }
        edges.pop();
        for &v in &ends {
            degree[v] -= 1;
        }
    }
}

/// The stems of a strongly disjoint set of bouquets, as a family of type
/// `(flowers, flowers + bouquets)`.
pub fn bouquets_to_family(g: &Hypergraph, bouquets: &[Bouquet]) -> Result<EdgeFamily> {
    require_graph(g)?;
    let mut seen = VertexSet::new();
    let mut indices = Vec::new();
    for b in bouquets {
        let vs = b.vertices();
        if vs.iter().any(|v| v >= g.n()) {
            return Err(Error::UnknownVertex(b.root.to_string()));
        }
        if seen.intersects(&vs) {
            return Err(Error::NotStronglyDisjoint("bouquets share a vertex".into()));
        }
        seen.union_with(&vs);
        for stem in b.stems() {
            indices.push(
                g.edge_index(&stem)
                    .ok_or_else(|| Error::NotStronglyDisjoint(format!("stem {stem:?} is not an edge")))?,
            );
        }
    }
    if !has_stem_selection(g, bouquets) {
        return Err(Error::NotStronglyDisjoint("no stem selection forms an induced matching".into()));
    }
    indices.sort_unstable();
    EdgeFamily::new(g, indices)
}

/// Splits a self disjoint family of a graph into its bouquets, ordered by
/// root.
pub fn family_to_bouquets(g: &Hypergraph, fam: &EdgeFamily) -> Result<Vec<Bouquet>> {
    require_graph(g)?;
    if fam.is_empty() {
        return Ok(vec![]);
    }
    if self_disjoint_core(g, fam.indices()).is_none() {
        return Err(Error::NotSelfDisjoint);
    }
    stars(g, fam.indices()).ok_or(Error::NotSelfDisjoint)
}
