//! L-admissible symbols and certificates of nonvanishing Betti numbers.
//!
//! Under an ordering of the edges, a chain `ℓ_1 < .. < ℓ_i` of positions is
//! L-admissible when for every `t` and every position `q < ℓ_t`, the edge at
//! `q` is not contained in the union taken from `ℓ_t` up to `ℓ_i`. Which
//! union and which `t` are meant is configurable through
//! [`AdmissibilityRule`].

use serde::{Deserialize, Serialize};

use crate::betti::BettiTable;
use crate::error::{Error, Result};
use crate::family::{
    is_induced_matching, is_self_ordered, is_self_semi_induced, self_semi_disjoint_core, EdgeFamily,
};
use crate::hochster::{betti_table_capped, HOCHSTER_VERTEX_CAP};
use crate::hypergraph::Hypergraph;
use crate::linalg::FieldChoice;
use crate::taylor::{betti_via_taylor, EdgeOrdering, SymbolChain};
use crate::vertex_set::VertexSet;

/// Which edges make up the union in the admissibility condition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UnionScope {
    /// Only the chain members at positions `ℓ_t, .., ℓ_i`.
    #[default]
    SymbolMembers,
    /// Every edge at a position between `ℓ_t` and `ℓ_i`.
    IndexRange,
}

/// Which chain positions `t` are constrained.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PositionRange {
    /// `t = 1, .., i`.
    #[default]
    All,
    /// `t = 1, .., i - 1`.
    BeforeLast,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AdmissibilityRule {
    pub union: UnionScope,
    pub positions: PositionRange,
}

impl AdmissibilityRule {
    pub const ALL: [Self; 4] = [
        Self {
            union: UnionScope::SymbolMembers,
            positions: PositionRange::All,
        },
        Self {
            union: UnionScope::SymbolMembers,
            positions: PositionRange::BeforeLast,
        },
        Self {
            union: UnionScope::IndexRange,
            positions: PositionRange::All,
        },
        Self {
            union: UnionScope::IndexRange,
            positions: PositionRange::BeforeLast,
        },
    ];
}

fn admissible_positions(h: &Hypergraph, ord: &EdgeOrdering, chain: &[usize], rule: AdmissibilityRule) -> bool {
    let i = chain.len();
    let limit = match rule.positions {
        PositionRange::All => i,
        PositionRange::BeforeLast => i.saturating_sub(1),
    };
    let Some(&last) = chain.last() else {
        return true;
    };
    (0..limit).all(|t| {
        let union: VertexSet = match rule.union {
            UnionScope::SymbolMembers => {
                let mut u = VertexSet::new();
                for &p in &chain[t..] {
                    u.union_with(h.set(ord.edge_at(p)));
                }
                u
            }
            UnionScope::IndexRange => {
                let mut u = VertexSet::new();
                for p in chain[t]..=last {
                    u.union_with(h.set(ord.edge_at(p)));
                }
                u
            }
        };
        (0..chain[t]).all(|q| !h.set(ord.edge_at(q)).is_subset(&union))
    })
}

pub fn is_l_admissible(h: &Hypergraph, ord: &EdgeOrdering, chain: &SymbolChain, rule: AdmissibilityRule) -> bool {
    admissible_positions(h, ord, chain.positions(), rule)
}

fn insert_sorted(chain: &[usize], p: usize) -> Option<Vec<usize>> {
    match chain.binary_search(&p) {
        Ok(_) => None,
        Err(at) => {
            let mut grown = chain.to_vec();
            grown.insert(at, p);
            Some(grown)
        }
    }
}

/// Admissible, and no admissible chain of the same multidegree strictly
/// contains it. Only edges inside the symbol's union keep the multidegree.
///
/// Admissible chains are closed under taking subchains, and any chain between
/// the symbol and a larger one of the same multidegree has that multidegree
/// too, so checking single additions decides maximality.
pub fn is_maximal_l_admissible(
    h: &Hypergraph,
    ord: &EdgeOrdering,
    chain: &SymbolChain,
    rule: AdmissibilityRule,
) -> bool {
    let c = chain.positions();
    let union = chain_union(h, ord, c);
    admissible_positions(h, ord, c, rule)
        && (0..h.m())
            .filter(|&p| h.set(ord.edge_at(p)).is_subset(&union))
            .filter_map(|p| insert_sorted(c, p))
            .all(|grown| !admissible_positions(h, ord, &grown, rule))
}

/// Maximality checked against every strictly larger chain of the same
/// multidegree. Exponential; meant for testing the single-addition shortcut.
pub fn is_maximal_l_admissible_exhaustive(
    h: &Hypergraph,
    ord: &EdgeOrdering,
    chain: &SymbolChain,
    rule: AdmissibilityRule,
) -> bool {
    let c: VertexSet = chain.positions().iter().copied().collect();
    let union = chain_union(h, ord, chain.positions());
    admissible_positions(h, ord, chain.positions(), rule)
        && (0u32..1 << h.m()).all(|mask| {
            let positions: Vec<usize> = (0..h.m()).filter(|p| mask >> p & 1 == 1).collect();
            let set: VertexSet = positions.iter().copied().collect();
            set == c
                || !c.is_subset(&set)
                || chain_union(h, ord, &positions) != union
                || !admissible_positions(h, ord, &positions, rule)
        })
}

fn chain_union(h: &Hypergraph, ord: &EdgeOrdering, positions: &[usize]) -> VertexSet {
    let edges: Vec<usize> = positions.iter().map(|&p| ord.edge_at(p)).collect();
    h.union_of(&edges)
}

/// Size of the longest admissible chain, an upper bound for the projective
/// dimension.
pub fn max_admissible_size(h: &Hypergraph, ord: &EdgeOrdering, rule: AdmissibilityRule) -> usize {
    fn dfs(h: &Hypergraph, ord: &EdgeOrdering, rule: AdmissibilityRule, chain: &mut Vec<usize>) -> usize {
        let start = chain.last().map_or(0, |&p| p + 1);
        let mut best = chain.len();
        for p in start..h.m() {
            chain.push(p);
            if admissible_positions(h, ord, chain, rule) {
                best = best.max(dfs(h, ord, rule, chain));
            }
            chain.pop();
        }
        best
    }
    dfs(h, ord, rule, &mut Vec::new())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    InducedMatching,
    SelfSemiInduced,
    SelfOrdered,
    SelfSemiDisjoint,
}

/// A claim that `β_{i,j} ≠ 0`, backed by a family of the given kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    /// Order matters for [`CertificateKind::SelfOrdered`].
    pub family: EdgeFamily,
    pub claimed: (usize, usize),
    /// Edge ordering under which the family's symbol is maximal admissible,
    /// for the ordered and semi-disjoint kinds.
    pub ordering: Option<Vec<usize>>,
}

impl Certificate {
    /// A certificate claiming the family's own type.
    pub fn new(h: &Hypergraph, kind: CertificateKind, indices: Vec<usize>) -> Result<Self> {
        let family = EdgeFamily::new(h, indices)?;
        Ok(Self {
            kind,
            claimed: family.family_type(),
            family,
            ordering: None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateVerdict {
    pub kind: CertificateKind,
    pub claimed: (usize, usize),
    pub betti: u64,
    /// The ordering that was checked, with the outcome of the maximality
    /// check of the family's symbol under it.
    pub ordering: Option<Vec<usize>>,
    pub maximal_symbol: Option<bool>,
}

/// For a self semi-disjoint family: restricts to the induced subhypergraph on
/// the family's union and orders its edges as `(S \ S_0), (rest), S_0`.
/// Returns the restriction, the ordering and the family's positions in it.
fn semi_disjoint_ordering(h: &Hypergraph, fam: &[usize], core: &[usize]) -> Result<(Hypergraph, EdgeOrdering, Vec<usize>)> {
    let w = h.union_of(fam);
    let kept = h.induced_edge_indices(&w);
    let sub = h.induced_subhypergraph(&w)?;
    let local = |s: usize| kept.iter().position(|&k| k == s).expect("family edges lie inside their union");
    let outer: Vec<usize> = fam.iter().filter(|s| !core.contains(s)).map(|&s| local(s)).collect();
    let inner: Vec<usize> = core.iter().map(|&s| local(s)).collect();
    let members: Vec<usize> = fam.iter().map(|&s| local(s)).collect();
    let rest: Vec<usize> = (0..sub.m()).filter(|s| !members.contains(s)).collect();
    let ord = EdgeOrdering::new(&sub, [outer, rest, inner].concat())?;
    Ok((sub, ord, members))
}

fn premise(h: &Hypergraph, cert: &Certificate) -> Result<Option<(Vec<usize>, bool)>> {
    let fam = cert.family.indices();
    if cert.claimed != cert.family.family_type() {
        return Err(Error::PremiseFails(format!(
            "claimed type {:?} but the family has type {:?}",
            cert.claimed,
            cert.family.family_type()
        )));
    }
    let fail = |what: &str| Err(Error::PremiseFails(format!("family {fam:?} is not {what}")));
    let rule = AdmissibilityRule::default();
    match cert.kind {
        CertificateKind::InducedMatching if !is_induced_matching(h, fam) => fail("an induced matching"),
        CertificateKind::SelfSemiInduced if !is_self_semi_induced(h, fam) => fail("self semi-induced"),
        CertificateKind::InducedMatching | CertificateKind::SelfSemiInduced => Ok(None),
        CertificateKind::SelfOrdered => {
            if !is_self_ordered(h, fam) {
                return fail("self ordered in the given order");
            }
            let ord = EdgeOrdering::from_blocks(h, &[fam])?;
            let chain = SymbolChain::from_edges(h, &ord, fam)?;
            Ok(Some((ord.positions().to_vec(), is_maximal_l_admissible(h, &ord, &chain, rule))))
        }
        CertificateKind::SelfSemiDisjoint => {
            let Some(core) = self_semi_disjoint_core(h, fam) else {
                return fail("self semi-disjoint");
            };
            let (sub, ord, members) = semi_disjoint_ordering(h, fam, &core)?;
            let chain = SymbolChain::from_edges(&sub, &ord, &members)?;
            Ok(Some((ord.positions().to_vec(), is_maximal_l_admissible(&sub, &ord, &chain, rule))))
        }
    }
}

/// Re-validates the premise of `cert` and checks the claimed entry of an
/// already computed table.
pub fn certify_against(h: &Hypergraph, cert: &Certificate, table: &BettiTable) -> Result<CertificateVerdict> {
    let checked = premise(h, cert)?;
    let (i, j) = cert.claimed;
    let betti = table.get(i, j);
    if betti == 0 {
        return Err(Error::BettiVanishes { i, j });
    }
    let (ordering, maximal_symbol) = checked.map_or((None, None), |(o, m)| (Some(o), Some(m)));
    Ok(CertificateVerdict {
        kind: cert.kind,
        claimed: cert.claimed,
        betti,
        ordering,
        maximal_symbol,
    })
}

/// Re-validates the premise of `cert`, computes the exact table and checks
/// that the claimed entry is nonzero.
pub fn certify_nonvanishing(h: &Hypergraph, cert: &Certificate, field: FieldChoice) -> Result<CertificateVerdict> {
    premise(h, cert)?;
    let table = match betti_table_capped(h, field, HOCHSTER_VERTEX_CAP) {
        Ok(t) => t,
        Err(_) => betti_via_taylor(h, field)?,
    };
    certify_against(h, cert, &table)
}
