//! Seeded random instances.
//!
//! Every generator draws from a [`ChaCha8Rng`], so the same seed always gives
//! the same hypergraph. [`rng_for`] gives trial `k` of a campaign its own
//! stream.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::vertex_set::VertexSet;

pub fn rng_for(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InstanceClass {
    /// Edges of 2 to 4 vertices.
    General,
    Uniform(usize),
    /// Triangulated, `d`-uniform, intersecting edges meet in `d - 1`
    /// vertices.
    Special(usize),
    Chordal,
    /// Every edge has a vertex lying on no other edge.
    FreeVertex,
}

impl fmt::Display for InstanceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::General => f.write_str("general"),
            Self::Uniform(d) => write!(f, "uniform:{d}"),
            Self::Special(d) => write!(f, "special:{d}"),
            Self::Chordal => f.write_str("chordal"),
            Self::FreeVertex => f.write_str("free"),
        }
    }
}

impl FromStr for InstanceClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidField(format!("instance class `{s}`"));
        let uniformity = |d: &str| match d.parse::<usize>() {
            Ok(d) if d >= 2 => Ok(d),
            _ => Err(bad()),
        };
        match s.split_once(':') {
            None => match s {
                "general" => Ok(Self::General),
                "chordal" => Ok(Self::Chordal),
                "free" => Ok(Self::FreeVertex),
                _ => Err(bad()),
            },
            Some(("uniform", d)) => uniformity(d).map(Self::Uniform),
            Some(("special", d)) => uniformity(d).map(Self::Special),
            Some(_) => Err(bad()),
        }
    }
}

impl Serialize for InstanceClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for InstanceClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

fn labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize, size: usize) -> VertexSet {
    let mut all: Vec<usize> = (0..n).collect();
    all.partial_shuffle(rng, size);
    all[..size].iter().copied().collect()
}

/// Adds random sets while the family stays simple, until `m` edges or too
/// many rejections. May return fewer than `m` edges.
fn fill(rng: &mut ChaCha8Rng, n: usize, m: usize, mut size: impl FnMut(&mut ChaCha8Rng) -> usize) -> Hypergraph {
    let mut edges: Vec<VertexSet> = Vec::new();
    let mut rejections = 0;
    while edges.len() < m && rejections < 50 * m.max(1) {
        let k = size(rng).min(n);
        if k < 2 {
            break;
        }
        let e = random_subset(rng, n, k);
        if edges.iter().any(|f| f.is_subset(&e) || e.is_subset(f)) {
            rejections += 1;
        } else {
            edges.push(e);
        }
    }
    Hypergraph::build(labels(n), edges.iter().map(VertexSet::to_vec).collect()).expect("edges are simple")
}

pub fn general(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Hypergraph {
    fill(rng, n, m, |r| r.gen_range(2..=4))
}

pub fn uniform(rng: &mut ChaCha8Rng, d: usize, n: usize, m: usize) -> Hypergraph {
    fill(rng, n, m, |_| d)
}

/// Chordal graph on `n` vertices: each new vertex is joined to a random
/// clique of earlier vertices, so the reverse insertion order is a perfect
/// elimination order.
pub fn chordal(rng: &mut ChaCha8Rng, n: usize) -> Hypergraph {
    let mut adj = vec![VertexSet::new(); n];
    let mut edges = Vec::new();
    for v in 1..n {
        if rng.gen_bool(0.15) {
            continue;
        }
        let u = rng.gen_range(0..v);
        let mut clique = vec![u];
        let mut around = adj[u].to_vec();
        around.shuffle(rng);
        for w in around {
            if rng.gen_bool(0.5) && clique.iter().all(|&c| adj[c].contains(w)) {
                clique.push(w);
            }
        }
        clique.sort_unstable();
        for c in clique {
            adj[c].insert(v);
            adj[v].insert(c);
            edges.push(vec![c, v]);
        }
    }
    Hypergraph::build(labels(n), edges).expect("chordal edges are simple")
}

/// Triangulated special-class hypergraph on `n >= d` vertices, grown from a
/// single edge. Each new vertex `w` either joins a `(d-1)`-subset of an
/// edge, or an edge `E` (adding every `d`-subset of `E ∪ {w}` through `w`).
/// Moves that would leave the special class are skipped, and `w` is
/// simplicial when added, so the reverse insertion order eliminates
/// simplicial vertices.
pub fn special(rng: &mut ChaCha8Rng, d: usize, n: usize) -> Hypergraph {
    assert!(d >= 2 && n >= d, "need n >= d >= 2");
    if d == 2 {
        return chordal(rng, n);
    }
    let mut edges: Vec<VertexSet> = vec![(0..d).collect()];
    for w in d..n {
        // A vertex that fits nowhere stays isolated.
        for _ in 0..20 {
            let base = edges[rng.gen_range(0..edges.len())].clone();
            let faces: Vec<VertexSet> = if rng.gen_bool(0.3) {
                base.iter().map(|x| base.difference(&VertexSet::singleton(x))).collect()
            } else {
                let drop = base.to_vec()[rng.gen_range(0..d)];
                vec![base.difference(&VertexSet::singleton(drop))]
            };
            let new: Vec<VertexSet> = faces
                .into_iter()
                .map(|mut f| {
                    f.insert(w);
                    f
                })
                .collect();
            let fits = new.iter().all(|e| {
                edges.iter().chain(new.iter()).all(|f| {
                    let k = e.intersection(f).len();
                    f == e || k == 0 || k == d - 1
                })
            });
            if fits {
                edges.extend(new);
                break;
            }
        }
    }
    Hypergraph::build(labels(n), edges.iter().map(VertexSet::to_vec).collect()).expect("edges are simple")
}

/// `m` edges, each with a private vertex plus a nonempty subset of a shared
/// pool of 1 to 4 vertices. Private vertices come first.
pub fn free_vertex(rng: &mut ChaCha8Rng, m: usize) -> Hypergraph {
    let pool = rng.gen_range(1..=4);
    let edges = (0..m)
        .map(|e| {
            let k = rng.gen_range(1..=pool);
            let mut edge: Vec<usize> = random_subset(rng, pool, k).iter().map(|v| m + v).collect();
            edge.insert(0, e);
            edge
        })
        .collect();
    Hypergraph::build(labels(m + pool), edges).expect("private vertices keep edges simple")
}

/// An instance of `class` with `n` vertices and up to `m` edges. Chordal and
/// special instances ignore `m`; free-vertex instances ignore `n`.
pub fn generate(class: InstanceClass, n: usize, m: usize, rng: &mut ChaCha8Rng) -> Hypergraph {
    match class {
        InstanceClass::General => general(rng, n, m),
        InstanceClass::Uniform(d) => uniform(rng, d, n, m),
        InstanceClass::Special(d) => special(rng, d, n.max(d)),
        InstanceClass::Chordal => chordal(rng, n),
        InstanceClass::FreeVertex => free_vertex(rng, m),
    }
}
