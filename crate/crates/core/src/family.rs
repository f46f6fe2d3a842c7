//! Classification of edge families.
//!
//! A family `{S_1, .., S_i}` has type `(i, j)` where `j` is the size of the
//! union of its members. The predicates here follow their definitions
//! literally; in particular only the self ordered predicate looks at the
//! order of the members.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::vertex_set::VertexSet;

/// An ordered family of distinct edge indices together with its degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeFamily {
    indices: Vec<usize>,
    degree: usize,
}

impl EdgeFamily {
    pub fn new(h: &Hypergraph, indices: Vec<usize>) -> Result<Self> {
        validate(h, &indices)?;
        let degree = h.union_of(&indices).len();
        Ok(Self { indices, degree })
    }

    /// The degenerate family of type `(0, 0)`.
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn size(&self) -> usize {
        self.indices.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn family_type(&self) -> (usize, usize) {
        (self.size(), self.degree)
    }

    pub fn sorted(&self) -> Self {
        let mut indices = self.indices.clone();
        indices.sort_unstable();
        Self {
            indices,
            degree: self.degree,
        }
    }
}

fn validate(h: &Hypergraph, indices: &[usize]) -> Result<()> {
    let mut seen = HashSet::new();
    for &s in indices {
        h.edge(s)?;
        if !seen.insert(s) {
            return Err(Error::DuplicateIndex(s));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyClassification {
    pub matching: bool,
    pub semi_induced: bool,
    pub self_semi_induced: bool,
    pub self_contained: bool,
    pub induced: bool,
    pub self_disjoint: bool,
    /// Induced matching core witnessing `self_disjoint`.
    pub self_disjoint_core: Option<Vec<usize>>,
    pub self_semi_disjoint: bool,
    /// Semi-induced matching core witnessing `self_semi_disjoint`.
    pub self_semi_disjoint_core: Option<Vec<usize>>,
    /// Evaluated for the order in which the family was given.
    pub self_ordered: bool,
}

impl FamilyClassification {
    /// Names of the implications between classes that fail. Always empty
    /// unless something is badly wrong.
    pub fn implication_violations(&self) -> Vec<&'static str> {
        let rules = [
            (self.induced, self.matching, "induced => matching"),
            (self.induced, self.self_semi_induced, "induced => self semi-induced"),
            (self.self_semi_induced, self.semi_induced, "self semi-induced => semi-induced"),
            (self.self_semi_induced, self.self_contained, "self semi-induced => self-contained"),
            (self.self_semi_induced, self.self_semi_disjoint, "self semi-induced => self semi-disjoint"),
            (self.induced, self.self_disjoint, "induced => self disjoint"),
            (self.self_disjoint, self.self_semi_disjoint, "self disjoint => self semi-disjoint"),
            (self.self_ordered, self.self_contained, "self ordered => self-contained"),
        ];
        rules
            .into_iter()
            .filter(|&(premise, conclusion, _)| premise && !conclusion)
            .map(|(_, _, name)| name)
            .collect()
    }
}

/// No member lies inside the union of the other members.
pub fn is_irredundant(h: &Hypergraph, fam: &[usize]) -> bool {
    (0..fam.len()).all(|k| {
        let mut others = VertexSet::new();
        for (l, &s) in fam.iter().enumerate() {
            if l != k {
                others.union_with(h.set(s));
            }
        }
        !h.set(fam[k]).is_subset(&others)
    })
}

pub fn is_matching(h: &Hypergraph, fam: &[usize]) -> bool {
    let mut seen = VertexSet::new();
    for &s in fam {
        if seen.intersects(h.set(s)) {
            return false;
        }
        seen.union_with(h.set(s));
    }
    true
}

fn outside(h: &Hypergraph, fam: &[usize]) -> impl Iterator<Item = usize> {
    let members: VertexSet = fam.iter().copied().collect();
    (0..h.m()).filter(move |s| !members.contains(*s))
}

/// The union of the family induces exactly the family's edges.
pub fn is_semi_induced(h: &Hypergraph, fam: &[usize]) -> bool {
    let union = h.union_of(fam);
    outside(h, fam).all(|s| !h.set(s).is_subset(&union))
}

pub fn is_induced_matching(h: &Hypergraph, fam: &[usize]) -> bool {
    is_matching(h, fam) && is_semi_induced(h, fam)
}

pub fn is_self_semi_induced(h: &Hypergraph, fam: &[usize]) -> bool {
    is_semi_induced(h, fam) && is_irredundant(h, fam)
}

/// Irredundant, and every outside edge inside the union absorbs some member
/// into the union of itself and the remaining members.
pub fn is_self_contained(h: &Hypergraph, fam: &[usize]) -> bool {
    if !is_irredundant(h, fam) {
        return false;
    }
    let union = h.union_of(fam);
    outside(h, fam).all(|s| {
        let edge = h.set(s);
        !edge.is_subset(&union)
            || (0..fam.len()).any(|k| {
                let mut cover = edge.clone();
                for (l, &t) in fam.iter().enumerate() {
                    if l != k {
                        cover.union_with(h.set(t));
                    }
                }
                h.set(fam[k]).is_subset(&cover)
            })
    })
}

/// Searches for a core `S_0` of an irredundant family: an induced matching
/// (or, with `semi`, a semi-induced matching) contained in the family such
/// that every other member differs from some core member in one vertex.
///
/// Larger cores are tried first; the core may be the whole family.
fn core_search(h: &Hypergraph, fam: &[usize], semi: bool) -> Option<Vec<usize>> {
    if fam.is_empty() {
        return Some(Vec::new());
    }
    if !is_irredundant(h, fam) {
        return None;
    }
    let near = |a: usize, b: usize| h.set(a).difference_len(h.set(b)) == 1;
    let mut sorted = fam.to_vec();
    sorted.sort_unstable();
    // Members without a partner at distance one can only be covered by
    // being in the core themselves.
    let (forced, optional): (Vec<usize>, Vec<usize>) = sorted
        .iter()
        .partition(|&&a| !sorted.iter().any(|&b| b != a && near(a, b)));
    let valid_core = |core: &[usize]| {
        let ok = if semi {
            is_semi_induced(h, core)
        } else {
            is_induced_matching(h, core)
        };
        ok && sorted
            .iter()
            .filter(|a| !core.contains(a))
            .all(|&a| core.iter().any(|&b| near(a, b)))
    };
    if !semi && !is_matching(h, &forced) {
        return None;
    }
    for size in (0..=optional.len()).rev() {
        let mut found = None;
        for_each_combination(optional.len(), size, &mut |pick| {
            let mut core = forced.clone();
            core.extend(pick.iter().map(|&p| optional[p]));
            if core.is_empty() {
                return false;
            }
            core.sort_unstable();
            if valid_core(&core) {
                found = Some(core);
                true
            } else {
                false
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Calls `f` on each `k`-combination of `0..n` in lexicographic order until
/// it returns `true`.
pub(crate) fn for_each_combination(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            if rec(x + 1, n, k, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(0, n, k, &mut Vec::with_capacity(k), f)
}

pub fn self_disjoint_core(h: &Hypergraph, fam: &[usize]) -> Option<Vec<usize>> {
    core_search(h, fam, false)
}

pub fn self_semi_disjoint_core(h: &Hypergraph, fam: &[usize]) -> Option<Vec<usize>> {
    core_search(h, fam, true)
}

/// Self ordered in the given order: a singleton, or irredundant and every
/// outside edge `S` admits a position `k < i` with
/// `S_k ⊆ S ∪ S_{k+1} ∪ .. ∪ S_i`.
pub fn is_self_ordered(h: &Hypergraph, fam: &[usize]) -> bool {
    match fam.len() {
        0 => false,
        1 => true,
        i => {
            if !is_irredundant(h, fam) {
                return false;
            }
            let mut suffix = vec![VertexSet::new(); i + 1];
            for k in (0..i).rev() {
                suffix[k] = suffix[k + 1].union(h.set(fam[k]));
            }
            outside(h, fam).all(|s| {
                (0..i - 1).any(|k| h.set(fam[k]).is_subset(&h.set(s).union(&suffix[k + 1])))
            })
        }
    }
}

/// Lexicographically least ordering of `fam` (as a set) that makes it self
/// ordered, if any.
pub fn least_self_order(h: &Hypergraph, fam: &[usize]) -> Option<Vec<usize>> {
    let mut members = fam.to_vec();
    members.sort_unstable();
    match members.len() {
        0 => return None,
        1 => return Some(members),
        _ => {}
    }
    if !is_irredundant(h, &members) {
        return None;
    }
    let outside: Vec<usize> = outside(h, &members).collect();
    let union = h.union_of(&members);
    // A member can only absorb into S ∪ (later members) if S meets the union.
    if outside.iter().any(|&s| h.set(s).is_disjoint(&union)) {
        return None;
    }
    let mut search = OrderSearch {
        h,
        members: &members,
        outside: &outside,
        failed: HashSet::new(),
    };
    let mut order = Vec::with_capacity(members.len());
    search
        .extend(&VertexSet::new(), &VertexSet::new(), &mut order)
        .then_some(order)
}

struct OrderSearch<'a> {
    h: &'a Hypergraph,
    members: &'a [usize],
    outside: &'a [usize],
    failed: HashSet<(VertexSet, VertexSet)>,
}

impl OrderSearch<'_> {
    fn rest_union(&self, placed: &VertexSet, skip: usize) -> VertexSet {
        let mut u = VertexSet::new();
        for (p, &s) in self.members.iter().enumerate() {
            if p != skip && !placed.contains(p) {
                u.union_with(self.h.set(s));
            }
        }
        u
    }

    /// `placed` holds member positions already ordered, `covered` holds
    /// positions in `outside` that some earlier member absorbs into.
    fn extend(&mut self, placed: &VertexSet, covered: &VertexSet, order: &mut Vec<usize>) -> bool {
        let i = self.members.len();
        if placed.len() == i - 1 {
            if covered.len() != self.outside.len() {
                return false;
            }
            let last = (0..i).find(|p| !placed.contains(*p)).unwrap();
            order.push(self.members[last]);
            return true;
        }
        let key = (placed.clone(), covered.clone());
        if self.failed.contains(&key) {
            return false;
        }
        for p in 0..i {
            if placed.contains(p) {
                continue;
            }
            let rest = self.rest_union(placed, p);
            let member = self.h.set(self.members[p]);
            let mut next_covered = covered.clone();
            for (o, &s) in self.outside.iter().enumerate() {
                if !covered.contains(o) && member.is_subset(&self.h.set(s).union(&rest)) {
                    next_covered.insert(o);
                }
            }
            let mut next_placed = placed.clone();
            next_placed.insert(p);
            // Every still uncovered edge needs some later non-final member
            // able to absorb it, even with the largest possible suffix.
            let coverable = (0..self.outside.len()).filter(|o| !next_covered.contains(*o)).all(|o| {
                let s = self.h.set(self.outside[o]);
                (0..i).filter(|q| !next_placed.contains(*q)).any(|q| {
                    self.h
                        .set(self.members[q])
                        .is_subset(&s.union(&self.rest_union(&next_placed, q)))
                })
            });
            if !coverable {
                continue;
            }
            order.push(self.members[p]);
            if self.extend(&next_placed, &next_covered, order) {
                return true;
            }
            order.pop();
        }
        self.failed.insert(key);
        false
    }
}

/// Evaluates every class predicate on `fam`.
pub fn classify(h: &Hypergraph, fam: &EdgeFamily) -> Result<FamilyClassification> {
    classify_indices(h, fam.indices())
}

pub fn classify_indices(h: &Hypergraph, fam: &[usize]) -> Result<FamilyClassification> {
    validate(h, fam)?;
    let matching = is_matching(h, fam);
    let semi_induced = is_semi_induced(h, fam);
    let irredundant = is_irredundant(h, fam);
    let self_disjoint_core = self_disjoint_core(h, fam);
    let self_semi_disjoint_core = self_semi_disjoint_core(h, fam);
    Ok(FamilyClassification {
        matching,
        semi_induced,
        self_semi_induced: semi_induced && irredundant,
        self_contained: is_self_contained(h, fam),
        induced: matching && semi_induced,
        self_disjoint: self_disjoint_core.is_some(),
        self_disjoint_core,
        self_semi_disjoint: self_semi_disjoint_core.is_some(),
        self_semi_disjoint_core,
        self_ordered: is_self_ordered(h, fam),
    })
}

/// Number of families of type `(i, j)` in each class, counted as sets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeCounts {
    pub self_semi_induced: usize,
    pub self_contained: usize,
    pub induced: usize,
}

pub fn count_families_of_type(h: &Hypergraph, i: usize, j: usize) -> TypeCounts {
    let mut counts = TypeCounts::default();
    for_each_combination(h.m(), i, &mut |fam| {
        if h.union_of(fam).len() == j {
            let ssi = is_self_semi_induced(h, fam);
            counts.self_semi_induced += ssi as usize;
            counts.induced += (ssi && is_matching(h, fam)) as usize;
            counts.self_contained += is_self_contained(h, fam) as usize;
        }
        false
    });
    counts
}
