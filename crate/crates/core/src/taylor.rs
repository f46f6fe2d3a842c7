//! The Taylor complex tensored with the residue field.
//!
//! Generators are chains `e_{ℓ_1 < .. < ℓ_i}` of edge positions under an
//! [`EdgeOrdering`], graded by the size of the union of their edges. After
//! tensoring, the differential keeps exactly the faces obtained by dropping
//! a member that lies inside the union of the others:
//!
//! `∂(e_ℓ) = Σ_{S_{ℓ_k} ⊆ ∪_{t≠k} S_{ℓ_t}} (-1)^k e_{ℓ \ ℓ_k}`
//!
//! with `k` the 1-based position. Dropping such a member leaves the union
//! unchanged, so the complex splits into one slice per internal degree `j`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::betti::BettiTable;
use crate::error::{Error, Result};
use crate::family::{count_families_of_type, for_each_combination, is_irredundant};
use crate::hypergraph::Hypergraph;
use crate::linalg::{FieldChoice, Matrix};
use crate::vertex_set::VertexSet;

/// Edge cap for the Taylor engine: its basis has `2^m` elements.
pub const TAYLOR_EDGE_CAP: usize = 12;

/// A total order on the edges: `positions[p]` is the edge index at position `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeOrdering {
    positions: Vec<usize>,
}

impl EdgeOrdering {
    pub fn identity(m: usize) -> Self {
        Self {
            positions: (0..m).collect(),
        }
    }

    pub fn new(h: &Hypergraph, positions: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; h.m()];
        if positions.len() != h.m() {
            return Err(Error::InvalidOrdering(format!(
                "{} positions for {} edges",
                positions.len(),
                h.m()
            )));
        }
        for &s in &positions {
            if s >= h.m() || std::mem::replace(&mut seen[s], true) {
                return Err(Error::InvalidOrdering(format!("edge {s} missing, repeated or out of range")));
            }
        }
        Ok(Self { positions })
    }

    /// The given blocks in order, then the remaining edges by index.
    pub fn from_blocks(h: &Hypergraph, blocks: &[&[usize]]) -> Result<Self> {
        let mut positions: Vec<usize> = blocks.concat();
        let listed: VertexSet = positions.iter().copied().collect();
        positions.extend((0..h.m()).filter(|s| !listed.contains(*s)));
        Self::new(h, positions)
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn edge_at(&self, p: usize) -> usize {
        self.positions[p]
    }

    pub fn position_of(&self, s: usize) -> Option<usize> {
        self.positions.iter().position(|&e| e == s)
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// Strictly increasing positions under an ordering, with the degree of the
/// generator they name.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymbolChain {
    positions: Vec<usize>,
    degree: usize,
}

impl SymbolChain {
    pub fn new(h: &Hypergraph, ord: &EdgeOrdering, positions: Vec<usize>) -> Result<Self> {
        if ord.len() != h.m() {
            return Err(Error::InvalidOrdering("ordering does not match the hypergraph".into()));
        }
        if let Some(&p) = positions.iter().find(|&&p| p >= h.m()) {
            return Err(Error::InvalidChain(format!("position {p} out of range")));
        }
        if positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidChain(format!("{positions:?} is not strictly increasing")));
        }
        let edges: Vec<usize> = positions.iter().map(|&p| ord.edge_at(p)).collect();
        let degree = h.union_of(&edges).len();
        Ok(Self { positions, degree })
    }

    /// The chain naming a set of edges under `ord`.
    pub fn from_edges(h: &Hypergraph, ord: &EdgeOrdering, edges: &[usize]) -> Result<Self> {
        let mut positions = edges
            .iter()
            .map(|&s| ord.position_of(s).ok_or(Error::IndexOutOfRange { index: s, len: h.m() }))
            .collect::<Result<Vec<_>>>()?;
        positions.sort_unstable();
        if positions.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidChain("repeated edge".into()));
        }
        Self::new(h, ord, positions)
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn size(&self) -> usize {
        self.positions.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn edges(&self, ord: &EdgeOrdering) -> Vec<usize> {
        self.positions.iter().map(|&p| ord.edge_at(p)).collect()
    }

    fn without(&self, k: usize) -> Self {
        let mut positions = self.positions.clone();
        positions.remove(k);
        Self {
            positions,
            degree: self.degree,
        }
    }
}

/// `∂̄` of a single generator as `(sign, chain)` terms.
pub fn reduced_boundary(h: &Hypergraph, ord: &EdgeOrdering, chain: &SymbolChain) -> Vec<(i64, SymbolChain)> {
    let edges = chain.edges(ord);
    (0..edges.len())
        .filter(|&k| {
            let others: Vec<usize> = edges.iter().enumerate().filter(|&(t, _)| t != k).map(|(_, &s)| s).collect();
            h.set(edges[k]).is_subset(&h.union_of(&others))
        })
        .map(|k| (if (k + 1) % 2 == 0 { 1 } else { -1 }, chain.without(k)))
        .collect()
}

/// Whether `∂̄` kills the generator; independent of the ordering.
pub fn in_kernel(h: &Hypergraph, ord: &EdgeOrdering, chain: &SymbolChain) -> bool {
    is_irredundant(h, &chain.edges(ord))
}

/// The whole reduced Taylor complex for a fixed ordering, with chains stored
/// as position bitmasks.
pub struct ReducedTaylor<'a> {
    h: &'a Hypergraph,
    ord: EdgeOrdering,
    edge_sets: Vec<VertexSet>,
    slices: BTreeMap<(usize, usize), Vec<u32>>,
    index: HashMap<u32, usize>,
}

impl<'a> ReducedTaylor<'a> {
    pub fn new(h: &'a Hypergraph, ord: EdgeOrdering) -> Result<Self> {
        let m = h.m();
        if m > TAYLOR_EDGE_CAP {
            return Err(Error::BudgetExceeded {
                edges: m,
                cap: TAYLOR_EDGE_CAP,
            });
        }
        if ord.len() != m {
            return Err(Error::InvalidOrdering("ordering does not match the hypergraph".into()));
        }
        let edge_sets: Vec<VertexSet> = ord.positions().iter().map(|&s| h.set(s).clone()).collect();
        let mut unions = vec![VertexSet::new(); 1 << m];
        let mut slices: BTreeMap<(usize, usize), Vec<u32>> = BTreeMap::new();
        for mask in 0u32..1 << m {
            if mask != 0 {
                let low = mask.trailing_zeros() as usize;
                unions[mask as usize] = unions[(mask & (mask - 1)) as usize].union(&edge_sets[low]);
            }
            let key = (mask.count_ones() as usize, unions[mask as usize].len());
            slices.entry(key).or_default().push(mask);
        }
        let mut index = HashMap::new();
        for chains in slices.values() {
            for (i, &c) in chains.iter().enumerate() {
                index.insert(c, i);
            }
        }
        Ok(Self {
            h,
            ord,
            edge_sets,
            slices,
            index,
        })
    }

    pub fn ordering(&self) -> &EdgeOrdering {
        &self.ord
    }

    pub fn slice(&self, i: usize, j: usize) -> &[u32] {
        self.slices.get(&(i, j)).map_or(&[], Vec::as_slice)
    }

    pub fn degrees(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.slices.keys().copied()
    }

    fn union_without(&self, mask: u32, skip: usize) -> VertexSet {
        let mut u = VertexSet::new();
        let mut rest = mask & !(1 << skip);
        while rest != 0 {
            u.union_with(&self.edge_sets[rest.trailing_zeros() as usize]);
            rest &= rest - 1;
        }
        u
    }

    fn terms(&self, mask: u32) -> Vec<(i64, u32)> {
        let mut out = Vec::new();
        let mut rest = mask;
        let mut k = 0;
        while rest != 0 {
            let p = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            k += 1;
            if self.edge_sets[p].is_subset(&self.union_without(mask, p)) {
                out.push((if k % 2 == 0 { 1 } else { -1 }, mask & !(1 << p)));
            }
        }
        out
    }

    /// Matrix of `∂̄` from slice `(i, j)` to slice `(i - 1, j)`.
    pub fn boundary_matrix(&self, i: usize, j: usize) -> Matrix {
        let cols = self.slice(i, j);
        let rows = if i == 0 { &[][..] } else { self.slice(i - 1, j) };
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (c, &mask) in cols.iter().enumerate() {
            for (sign, face) in self.terms(mask) {
                m.set(self.index[&face], c, sign);
            }
        }
        m
    }

    pub fn boundary_squares_to_zero(&self) -> bool {
        self.slices.keys().all(|&(i, j)| {
            i < 2 || self.boundary_matrix(i - 1, j).mul(&self.boundary_matrix(i, j)).is_zero()
        })
    }

    pub fn betti_table(&self, field: FieldChoice) -> BettiTable {
        let mut ranks: HashMap<(usize, usize), usize> = HashMap::new();
        for &(i, j) in self.slices.keys() {
            ranks.insert((i, j), self.boundary_matrix(i, j).rank(field));
        }
        let mut table = BettiTable::empty(self.h.n(), field);
        for (&(i, j), chains) in &self.slices {
            let out = ranks[&(i, j)];
            let incoming = ranks.get(&(i + 1, j)).copied().unwrap_or(0);
            table.add(i, j, (chains.len() - out - incoming) as u64);
        }
        table
    }

    fn chain(&self, mask: u32) -> SymbolChain {
        let positions: Vec<usize> = (0..self.edge_sets.len()).filter(|p| mask >> p & 1 == 1).collect();
        let edges: Vec<usize> = positions.iter().map(|&p| self.ord.edge_at(p)).collect();
        SymbolChain {
            degree: self.h.union_of(&edges).len(),
            positions,
        }
    }

    fn mask(&self, chain: &SymbolChain) -> u32 {
        chain.positions().iter().fold(0, |acc, &p| acc | 1 << p)
    }

    /// Whether the basis vector of `chain` lies in the image of `∂̄`.
    pub fn in_image(&self, chain: &SymbolChain, field: FieldChoice) -> bool {
        let (i, j) = (chain.size(), chain.degree());
        let a = self.boundary_matrix(i + 1, j);
        let mut v = vec![0i64; a.rows()];
        v[self.index[&self.mask(chain)]] = 1;
        a.in_column_span(&v, field)
    }

    /// Chains of size `i` and degree `j` in the kernel whose basis vector is
    /// not in the image.
    pub fn b_set(&self, i: usize, j: usize, field: FieldChoice) -> Vec<SymbolChain> {
        let a = self.boundary_matrix(i + 1, j);
        let base_rank = a.rank(field);
        self.slice(i, j)
            .iter()
            .filter(|&&mask| self.terms(mask).is_empty())
            .filter(|&&mask| {
                let mut v = vec![0i64; a.rows()];
                v[self.index[&mask]] = 1;
                a.with_column(&v).rank(field) > base_rank
            })
            .map(|&mask| self.chain(mask))
            .collect()
    }
}

/// Betti table from the reduced Taylor complex under the input edge order.
pub fn betti_via_taylor(h: &Hypergraph, field: FieldChoice) -> Result<BettiTable> {
    Ok(ReducedTaylor::new(h, EdgeOrdering::identity(h.m()))?.betti_table(field))
}

pub fn b_set(h: &Hypergraph, i: usize, j: usize, field: FieldChoice) -> Result<Vec<SymbolChain>> {
    Ok(ReducedTaylor::new(h, EdgeOrdering::identity(h.m()))?.b_set(i, j, field))
}

/// Every `i` distinct edges with union of size `j` form an irredundant
/// family. Under this condition `B_{i,j}` spans the homology in degree
/// `(i, j)`.
pub fn spanning_condition(h: &Hypergraph, i: usize, j: usize) -> bool {
    !for_each_combination(h.m(), i, &mut |fam| h.union_of(fam).len() == j && !is_irredundant(h, fam))
}

/// For every `i` distinct edges with union `U` of size `j` and every further
/// edge `S ⊆ U`, no member of the `i` lies in `S` together with the union of
/// the other members. Under this condition `B_{i,j}` is independent modulo
/// the image.
pub fn separation_condition(h: &Hypergraph, i: usize, j: usize) -> bool {
    !for_each_combination(h.m(), i, &mut |fam| {
        let union = h.union_of(fam);
        if union.len() != j {
            return false;
        }
        (0..h.m()).filter(|s| !fam.contains(s)).any(|s| {
            let extra = h.set(s);
            extra.is_subset(&union)
                && (0..fam.len()).any(|k| {
                    let mut cover = extra.clone();
                    for (l, &t) in fam.iter().enumerate() {
                        if l != k {
                            cover.union_with(h.set(t));
                        }
                    }
                    h.set(fam[k]).is_subset(&cover)
                })
        })
    })
}

/// Combinatorial bounds on one Betti number and the conditions behind them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiBounds {
    pub i: usize,
    pub j: usize,
    pub b_set_size: usize,
    pub self_semi_induced: usize,
    pub self_contained: usize,
    /// `β ≥ #self semi-induced` and `β ≥ |B|`; `None` when the separation
    /// condition fails.
    pub lower: Option<usize>,
    /// `β ≤ #self-contained` and `β ≤ |B|`; `None` when the spanning
    /// condition fails.
    pub upper: Option<usize>,
}

pub fn betti_bounds(h: &Hypergraph, i: usize, j: usize, field: FieldChoice) -> Result<BettiBounds> {
    let b = b_set(h, i, j, field)?.len();
    let counts = count_families_of_type(h, i, j);
    Ok(BettiBounds {
        i,
        j,
        b_set_size: b,
        self_semi_induced: counts.self_semi_induced,
        self_contained: counts.self_contained,
        lower: separation_condition(h, i, j).then_some(counts.self_semi_induced.max(b)),
        upper: spanning_condition(h, i, j).then_some(counts.self_contained.min(b)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::tests::{c3, c4, p3};

    fn chain(h: &Hypergraph, p: &[usize]) -> SymbolChain {
        SymbolChain::new(h, &EdgeOrdering::identity(h.m()), p.to_vec()).unwrap()
    }

    #[test]
    fn boundaries() {
        let id = EdgeOrdering::identity(2);
        assert!(reduced_boundary(&p3(), &id, &chain(&p3(), &[0, 1])).is_empty());
        assert!(reduced_boundary(&p3(), &id, &chain(&p3(), &[1])).is_empty());
        let t = c3();
        let id = EdgeOrdering::identity(3);
        let terms: Vec<(i64, Vec<usize>)> = reduced_boundary(&t, &id, &chain(&t, &[0, 1, 2]))
            .into_iter()
            .map(|(s, c)| (s, c.positions().to_vec()))
            .collect();
        assert_eq!(terms, vec![(-1, vec![1, 2]), (1, vec![0, 2]), (-1, vec![0, 1])]);
    }

    #[test]
    fn kernel_membership() {
        let id = EdgeOrdering::identity(3);
        assert!(in_kernel(&p3(), &EdgeOrdering::identity(2), &chain(&p3(), &[0, 1])));
        assert!(!in_kernel(&c3(), &id, &chain(&c3(), &[0, 1, 2])));
        assert!(in_kernel(&c3(), &id, &chain(&c3(), &[2])));
    }

    #[test]
    fn chain_validation() {
        let h = p3();
        let id = EdgeOrdering::identity(2);
        assert!(SymbolChain::new(&h, &id, vec![1, 0]).is_err());
        assert!(SymbolChain::new(&h, &id, vec![0, 2]).is_err());
        assert!(EdgeOrdering::new(&h, vec![0, 0]).is_err());
        assert!(EdgeOrdering::new(&h, vec![0]).is_err());
        let rev = EdgeOrdering::new(&h, vec![1, 0]).unwrap();
        let c = SymbolChain::from_edges(&h, &rev, &[0]).unwrap();
        assert_eq!(c.positions(), &[1]);
    }

    #[test]
    fn taylor_tables() {
        let q = FieldChoice::Rational;
        let t = betti_via_taylor(&p3(), q).unwrap();
        assert_eq!(t.entries().collect::<Vec<_>>(), vec![((0, 0), 1), ((1, 2), 2), ((2, 3), 1)]);
        let t = betti_via_taylor(&c3(), q).unwrap();
        assert_eq!(t.entries().collect::<Vec<_>>(), vec![((0, 0), 1), ((1, 2), 3), ((2, 3), 2)]);
        let single = Hypergraph::from_edges(3, &[&[0, 1, 2]]).unwrap();
        assert_eq!(betti_via_taylor(&single, q).unwrap().get(1, 3), 1);
    }

    #[test]
    fn boundary_squares() {
        for h in [p3(), c3(), c4()] {
            let t = ReducedTaylor::new(&h, EdgeOrdering::identity(h.m())).unwrap();
            assert!(t.boundary_squares_to_zero());
        }
    }

    #[test]
    fn b_sets() {
        let q = FieldChoice::Rational;
        let b: Vec<Vec<usize>> = b_set(&p3(), 2, 3, q).unwrap().iter().map(|c| c.positions().to_vec()).collect();
        assert_eq!(b, vec![vec![0, 1]]);
        let single = Hypergraph::from_edges(3, &[&[0, 1, 2]]).unwrap();
        assert_eq!(b_set(&single, 1, 3, q).unwrap().len(), 1);
        assert!(b_set(&c3(), 3, 3, q).unwrap().is_empty());
        // In C3 every pair is in the kernel; the image of the triple has rank 1.
        assert_eq!(b_set(&c3(), 2, 3, q).unwrap().len(), 3);
    }

    #[test]
    fn image_membership() {
        let h = c3();
        let t = ReducedTaylor::new(&h, EdgeOrdering::identity(3)).unwrap();
        assert!(!t.in_image(&chain(&h, &[0, 1]), FieldChoice::Rational));
        // In C4, wx and yz cover every vertex and the edge xy absorbs no member.
        let c = c4();
        let t = ReducedTaylor::new(&c, EdgeOrdering::identity(4)).unwrap();
        assert!(t.in_image(&chain(&c, &[0, 2]), FieldChoice::Rational));
    }

    #[test]
    fn conditions() {
        let h = c3();
        assert!(spanning_condition(&h, 1, 2));
        assert!(!spanning_condition(&h, 3, 3));
        assert!(spanning_condition(&h, 2, 3));
        assert!(!separation_condition(&h, 2, 3));
        // j = t * i forces both
        assert!(spanning_condition(&c4(), 2, 4) && separation_condition(&c4(), 2, 4));
        let bounds = betti_bounds(&p3(), 2, 3, FieldChoice::Rational).unwrap();
        assert_eq!((bounds.lower, bounds.upper), (Some(1), Some(1)));
    }

    #[test]
    fn edge_cap() {
        let edges: Vec<Vec<usize>> = (0..13).map(|i| vec![2 * i, 2 * i + 1]).collect();
        let h = Hypergraph::build((0..26).map(|i| i.to_string()).collect(), edges).unwrap();
        assert!(matches!(
            betti_via_taylor(&h, FieldChoice::Rational),
            Err(Error::BudgetExceeded { edges: 13, cap: 12 })
        ));
    }
}
