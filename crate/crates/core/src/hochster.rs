//! Betti numbers from reduced homology of restricted independence complexes.
//!
//! `β_{i,j} = Σ_{|W| = j} dim H̃_{j-i-1}(Δ_W)` where `Δ` is the complex of
//! vertex sets containing no edge. A vertex of `W` covered by no edge inside
//! `W` is a cone point of `Δ_W`, so such `W` contribute nothing and are
//! skipped.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::betti::BettiTable;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::linalg::{FieldChoice, Matrix};
use crate::vertex_set::VertexSet;

/// Default vertex cap for [`betti_table`].
pub const HOCHSTER_VERTEX_CAP: usize = 14;

/// The independence complex of `H_W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplexSlice {
    ground: VertexSet,
    /// `faces[s]` lists the faces with `s` vertices as bitmasks over global
    /// vertex ids, in increasing numeric order.
    faces: Vec<Vec<u64>>,
}

impl SimplicialComplexSlice {
    pub fn ground(&self) -> &VertexSet {
        &self.ground
    }

    pub fn faces_of_size(&self, s: usize) -> &[u64] {
        self.faces.get(s).map_or(&[], Vec::as_slice)
    }

    /// Faces with `k + 1` vertices.
    pub fn faces_of_dim(&self, k: isize) -> &[u64] {
        self.faces_of_size((k + 1) as usize)
    }

    pub fn dim(&self) -> isize {
        self.faces.len() as isize - 2
    }

    pub fn face_count(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }
}

fn edge_masks(h: &Hypergraph) -> Vec<u64> {
    h.edges()
        .iter()
        .map(|e| e.vertices().as_bits().expect("vertex ids below 64"))
        .collect()
}

fn build_complex(ground: u64, edges: &[u64]) -> SimplicialComplexSlice {
    let inside: Vec<u64> = edges.iter().copied().filter(|&e| e & !ground == 0).collect();
    // Edges grouped by their largest vertex: adding vertex v to a face can
    // only complete edges whose maximum is v.
    let mut by_top: HashMap<u32, Vec<u64>> = HashMap::new();
    for &e in &inside {
        by_top.entry(63 - e.leading_zeros()).or_default().push(e);
    }
    let verts: Vec<u32> = (0..64).filter(|v| ground >> v & 1 == 1).collect();
    let mut faces: Vec<Vec<u64>> = vec![vec![0]];
    let mut stack = vec![(0u64, 0usize)];
    while let Some((face, next)) = stack.pop() {
        for (pos, &v) in verts.iter().enumerate().skip(next) {
            let grown = face | 1 << v;
            if by_top.get(&v).is_some_and(|es| es.iter().any(|&e| e & !grown == 0)) {
                continue;
            }
            let s = grown.count_ones() as usize;
            if faces.len() <= s {
                faces.push(Vec::new());
            }
            faces[s].push(grown);
            stack.push((grown, pos + 1));
        }
    }
    for f in &mut faces {
        f.sort_unstable();
    }
    SimplicialComplexSlice {
        ground: VertexSet::from_bits(ground),
        faces,
    }
}

/// Faces of `H_W`'s independence complex: subsets of `W` containing no edge.
pub fn independence_complex(h: &Hypergraph, w: &VertexSet) -> Result<SimplicialComplexSlice> {
    if let Some(v) = w.iter().find(|&v| v >= h.n()) {
        return Err(Error::UnknownVertex(v.to_string()));
    }
    let ground = w.as_bits().ok_or(Error::SizeCapExceeded {
        what: "largest vertex id",
        size: w.iter().last().unwrap_or(0),
        cap: 63,
    })?;
    if h.n() > 64 {
        return Err(Error::SizeCapExceeded {
            what: "vertex count",
            size: h.n(),
            cap: 64,
        });
    }
    Ok(build_complex(ground, &edge_masks(h)))
}

/// Boundary map from faces of size `s` to faces of size `s - 1`, with the
/// sign `(-1)^p` for removing the vertex at 0-based position `p`.
fn boundary(c: &SimplicialComplexSlice, s: usize) -> Matrix {
    let rows = c.faces_of_size(s - 1);
    let cols = c.faces_of_size(s);
    let index: HashMap<u64, usize> = rows.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut m = Matrix::zeros(rows.len(), cols.len());
    for (col, &face) in cols.iter().enumerate() {
        let mut rest = face;
        let mut pos = 0;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest &= rest - 1;
            m.set(index[&(face & !bit)], col, if pos % 2 == 0 { 1 } else { -1 });
            pos += 1;
        }
    }
    m
}

/// `dims[k + 1] = dim H̃_k` for `k = -1, .., dim C`.
pub fn reduced_homology_dims(c: &SimplicialComplexSlice, field: FieldChoice) -> Vec<usize> {
    let top = c.faces.len();
    // rank[s] is the rank of the boundary out of faces of size s.
    let mut rank = vec![0usize; top + 1];
    for (s, r) in rank.iter_mut().enumerate().take(top).skip(1) {
        *r = boundary(c, s).rank(field);
    }
    (0..top).map(|s| c.faces[s].len() - rank[s] - rank[s + 1]).collect()
}

pub fn betti_table(h: &Hypergraph, field: FieldChoice) -> Result<BettiTable> {
    betti_table_capped(h, field, HOCHSTER_VERTEX_CAP)
}

pub fn betti_table_capped(h: &Hypergraph, field: FieldChoice, cap: usize) -> Result<BettiTable> {
    let n = h.n();
    if n > cap.min(30) {
        return Err(Error::SizeCapExceeded {
            what: "vertex count",
            size: n,
            cap: cap.min(30),
        });
    }
    let edges = edge_masks(h);
    let merged = (1u64..1 << n)
        .into_par_iter()
        .filter_map(|w| {
            let covered = edges.iter().filter(|&&e| e & !w == 0).fold(0, |acc, e| acc | e);
            (covered == w).then(|| {
                let j = w.count_ones() as usize;
                let dims = reduced_homology_dims(&build_complex(w, &edges), field);
                // dims[s] = H̃_{s-1}, contributing to i = j - s.
                dims.into_iter()
                    .enumerate()
                    .filter(|&(s, d)| d > 0 && s <= j)
                    .map(|(s, d)| ((j - s, j), d as u64))
                    .collect::<Vec<_>>()
            })
        })
        .fold(BTreeMap::new, |mut acc, contributions| {
            for (k, d) in contributions {
                *acc.entry(k).or_insert(0) += d;
            }
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, d) in b {
                *a.entry(k).or_insert(0) += d;
            }
            a
        });
    let mut table = BettiTable::trivial(n, field);
    for ((i, j), v) in merged {
        table.add(i, j, v);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::tests::{c3, p3};

    fn faces(c: &SimplicialComplexSlice) -> Vec<Vec<usize>> {
        c.faces.iter().flatten().map(|&f| VertexSet::from_bits(f).to_vec()).collect()
    }

    #[test]
    fn complexes() {
        let t = c3();
        let c = independence_complex(&t, &t.vertices()).unwrap();
        assert_eq!(faces(&c), vec![vec![], vec![0], vec![1], vec![2]]);
        let p = p3();
        let c = independence_complex(&p, &p.vertices()).unwrap();
        assert_eq!(faces(&c), vec![vec![], vec![0], vec![1], vec![2], vec![0, 2]]);
        let e = Hypergraph::edgeless(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let c = independence_complex(&e, &e.vertices()).unwrap();
        assert_eq!((c.face_count(), c.dim()), (8, 2));
        assert!(independence_complex(&p, &VertexSet::singleton(5)).is_err());
    }

    #[test]
    fn homology_of_standard_complexes() {
        let q = FieldChoice::Rational;
        let circle = SimplicialComplexSlice {
            ground: VertexSet::from_bits(0b111),
            faces: vec![vec![0], vec![1, 2, 4], vec![3, 5, 6]],
        };
        assert_eq!(reduced_homology_dims(&circle, q), vec![0, 0, 1]);
        let two_points = SimplicialComplexSlice {
            ground: VertexSet::from_bits(0b11),
            faces: vec![vec![0], vec![1, 2]],
        };
        assert_eq!(reduced_homology_dims(&two_points, q), vec![0, 1]);
        let e = Hypergraph::edgeless((0..3).map(|i| i.to_string()).collect()).unwrap();
        let simplex = independence_complex(&e, &e.vertices()).unwrap();
        assert_eq!(reduced_homology_dims(&simplex, q), vec![0, 0, 0, 0]);
        let void = independence_complex(&e, &VertexSet::new()).unwrap();
        assert_eq!(reduced_homology_dims(&void, q), vec![1]);
    }

    #[test]
    fn small_tables() {
        let q = FieldChoice::Rational;
        let t = betti_table(&p3(), q).unwrap();
        assert_eq!(t.entries().collect::<Vec<_>>(), vec![((0, 0), 1), ((1, 2), 2), ((2, 3), 1)]);
        let t = betti_table(&c3(), q).unwrap();
        assert_eq!((t.pd(), t.reg()), (2, 1));
        let single = Hypergraph::from_edges(4, &[&[0, 1, 2]]).unwrap();
        let t = betti_table(&single, q).unwrap();
        assert_eq!(t.entries().collect::<Vec<_>>(), vec![((0, 0), 1), ((1, 3), 1)]);
        let e = Hypergraph::edgeless(vec!["a".into()]).unwrap();
        assert_eq!(betti_table(&e, q).unwrap(), BettiTable::trivial(1, q));
    }

    #[test]
    fn vertex_cap() {
        let big = Hypergraph::edgeless((0..15).map(|i| i.to_string()).collect()).unwrap();
        assert!(matches!(
            betti_table(&big, FieldChoice::Rational),
            Err(Error::SizeCapExceeded { cap: 14, .. })
        ));
        assert!(betti_table_capped(&big, FieldChoice::Rational, 15).is_ok());
    }
}
