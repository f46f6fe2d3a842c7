//! Splitting edges of triangulated hypergraphs in the special class, where
//! the hypergraph is `d`-uniform and intersecting edges share `d - 1`
//! vertices.
//!
//! For a simplicial vertex `x` and an edge `S` through it, with `t = |N(S)|`,
//! `H1 = H \ S` and `H2` the induced subhypergraph on `V \ (S ∪ N(S))`:
//!
//! ```text
//! β_{i,j}(H) = β_{i,j}(H1) + Σ_ℓ C(t, ℓ) β_{i-1-ℓ, j-d-ℓ}(H2)
//! ```

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::AtomicUsize;
use std::sync::atomic::Ordering::Relaxed;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::betti::BettiTable;
use crate::error::{Error, Result};
use crate::family::{for_each_combination, is_induced_matching, self_disjoint_core};
use crate::hochster::{betti_table_capped, HOCHSTER_VERTEX_CAP};
use crate::hypergraph::{binomial, Hypergraph, VertexId};
use crate::invariants::{compute_invariants, INVARIANT_EDGE_BUDGET};
use crate::io::to_json;
use crate::linalg::FieldChoice;
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingDecomposition {
    pub x: VertexId,
    /// Index of the splitting edge in `H`.
    pub s: usize,
    pub d: usize,
    /// `N(S)` in increasing order; `t` is its length.
    pub z: Vec<VertexId>,
    /// `S_ℓ` for each `z_ℓ`: an edge with `S_ℓ \ S = {z_ℓ}` and `x ∉ S_ℓ`.
    pub neighbor_edges: Vec<usize>,
    /// `H \ S`, edge indices shifted down past `s`.
    pub h1: Hypergraph,
    /// Induced on `V \ (S ∪ N(S))`, vertices renumbered.
    pub h2: Hypergraph,
    /// Vertex of `H` for each vertex of `H2`.
    pub h2_vertices: Vec<usize>,
    /// Edge of `H` for each edge of `H2`.
    pub h2_edges: Vec<usize>,
}

impl SplittingDecomposition {
    pub fn t(&self) -> usize {
        self.z.len()
    }

    /// Edge of `H` for an edge of `H1`.
    pub fn h1_edge_in_h(&self, k: usize) -> usize {
        if k < self.s {
            k
        } else {
            k + 1
        }
    }
}

fn special_d(h: &Hypergraph) -> Result<Option<usize>> {
    let p = h.uniformity_profile();
    if !p.is_special_class {
        return Err(Error::NotSpecialClass);
    }
    Ok(p.d)
}

pub fn split(h: &Hypergraph, x: VertexId, s: usize) -> Result<SplittingDecomposition> {
    let d = special_d(h)?.ok_or(Error::IndexOutOfRange { index: s, len: 0 })?;
    let edge = h.edge(s)?.vertices().clone();
    if !edge.contains(x.0) {
        return Err(Error::VertexNotInEdge { vertex: x.0, edge: s });
    }
    if !h.is_simplicial_vertex(x)? {
        return Err(Error::NotSimplicial(x.0));
    }
    let nbhd = h.edge_neighborhood(s)?;
    let mut neighbor_edges = Vec::with_capacity(nbhd.len());
    for z in nbhd.iter() {
        let through_z = |avoid_x: bool| {
            (0..h.m())
                .filter(|&e| {
                    let set = h.set(e);
                    set.contains(z) && set.difference_len(&edge) == 1 && !(avoid_x && set.contains(x.0))
                })
                .min_by(|&a, &b| h.set(a).cmp(h.set(b)))
        };
        let chosen = match through_z(true) {
            Some(e) => e,
            None => {
                let e = through_z(false).expect("z lies on an edge meeting S");
                let y = edge
                    .difference(h.set(e))
                    .iter()
                    .find(|&v| v != x.0)
                    .expect("S_ℓ misses a vertex of S");
                let mut swapped = h.set(e).clone();
                swapped.remove(x.0);
                swapped.insert(y);
                h.edge_index(&swapped).ok_or(Error::NotSimplicial(x.0))?
            }
        };
        neighbor_edges.push(chosen);
    }
    let mut rest = h.vertices().difference(&edge);
    rest = rest.difference(&nbhd);
    let h2_edges = h.induced_edge_indices(&rest);
    Ok(SplittingDecomposition {
        x,
        s,
        d,
        z: nbhd.iter().map(VertexId).collect(),
        neighbor_edges,
        h1: h.delete_edge(s)?,
        h2: h.induced_subhypergraph(&rest)?,
        h2_vertices: rest.to_vec(),
        h2_edges,
    })
}

/// Least-id simplicial vertex lying on an edge, with the lexicographically
/// least edge through it. `None` for edgeless input.
pub fn choose_split(h: &Hypergraph) -> Result<Option<(VertexId, usize)>> {
    if h.m() == 0 {
        return Ok(None);
    }
    let covered = h.union_of(&(0..h.m()).collect::<Vec<_>>());
    for x in covered.iter() {
        if h.is_simplicial_vertex(VertexId(x))? {
            let s = (0..h.m())
                .filter(|&e| h.set(e).contains(x))
                .min_by(|&a, &b| h.set(a).cmp(h.set(b)))
                .expect("x lies on an edge");
            return Ok(Some((VertexId(x), s)));
        }
    }
    Err(Error::NotTriangulated)
}

type Entries = BTreeMap<(usize, usize), u64>;

/// Adds the contribution of `H2` to the table of `H1`.
pub fn combine(t: usize, d: usize, h1: &Entries, h2: &Entries) -> Entries {
    let mut out = h1.clone();
    for (&(a, b), &v) in h2 {
        for l in 0..=t {
            *out.entry((a + 1 + l, b + d + l)).or_default() += binomial(t, l) as u64 * v;
        }
    }
    out
}

/// Sorted edge lists after relabeling vertices by degree refinement, ties
/// broken by id. Equal keys mean isomorphic hypergraphs; the converse may
/// fail.
fn canonical_key(h: &Hypergraph) -> Vec<Vec<usize>> {
    let n = h.n();
    let mut color: Vec<usize> = vec![0; n];
    for e in h.edges() {
        for v in e.vertices() {
            color[v] += 1;
        }
    }
    for _ in 0..2 {
        let mut signature: Vec<(usize, Vec<Vec<usize>>)> = (0..n)
            .map(|v| {
                let mut around: Vec<Vec<usize>> = h
                    .edges()
                    .iter()
                    .filter(|e| e.contains(v))
                    .map(|e| {
                        let mut c: Vec<usize> = e.vertices().iter().map(|u| color[u]).collect();
                        c.sort_unstable();
                        c
                    })
                    .collect();
                around.sort();
                (color[v], around)
            })
            .collect();
        let mut distinct = signature.clone();
        distinct.sort();
        distinct.dedup();
        for (v, sig) in signature.drain(..).enumerate() {
            color[v] = distinct.binary_search(&sig).expect("signature present");
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (color[v], v));
    let mut relabel = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        relabel[old] = new;
    }
    let mut edges: Vec<Vec<usize>> = h
        .edges()
        .iter()
        .map(|e| {
            let mut r: Vec<usize> = e.vertices().iter().map(|v| relabel[v]).collect();
            r.sort_unstable();
            r
        })
        .collect();
    edges.sort();
    edges
}

/// Counters from one run of the recursion.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursionStats {
    pub splits: usize,
    pub memo_hits: usize,
    /// Pieces with edges but no simplicial vertex, computed by Hochster's
    /// formula instead. Deleting a splitting edge can destroy
    /// triangulatedness once `d >= 3`: all 3-subsets of a 4-set minus one
    /// edge has no simplicial vertex.
    pub fallbacks: usize,
}

struct Recursion {
    d: usize,
    field: FieldChoice,
    memo: Mutex<HashMap<Vec<Vec<usize>>, Entries>>,
    splits: AtomicUsize,
    memo_hits: AtomicUsize,
    fallbacks: AtomicUsize,
}

impl Recursion {
    fn run(&self, h: &Hypergraph) -> Result<Entries> {
        let mut base = Entries::from([((0, 0), 1)]);
        match h.m() {
            0 => return Ok(base),
            1 => {
                base.insert((1, self.d), 1);
                return Ok(base);
            }
            _ => {}
        }
        let key = canonical_key(h);
        if let Some(hit) = self.memo.lock().expect("memo lock").get(&key) {
            self.memo_hits.fetch_add(1, Relaxed);
            return Ok(hit.clone());
        }
        let (x, s) = match choose_split(h) {
            Ok(choice) => choice.expect("edges present"),
            Err(Error::NotTriangulated) => {
                self.fallbacks.fetch_add(1, Relaxed);
                let out: Entries = betti_table_capped(h, self.field, HOCHSTER_VERTEX_CAP)?.entries().collect();
                self.memo.lock().expect("memo lock").insert(key, out.clone());
                return Ok(out);
            }
            Err(e) => return Err(e),
        };
        self.splits.fetch_add(1, Relaxed);
        let dec = split(h, x, s)?;
        let (r1, r2) = rayon::join(|| self.run(&dec.h1), || self.run(&dec.h2));
        let out = combine(dec.t(), self.d, &r1?, &r2?);
        self.memo.lock().expect("memo lock").insert(key, out.clone());
        Ok(out)
    }
}

fn require_special_triangulated(h: &Hypergraph) -> Result<Option<usize>> {
    let d = special_d(h)?;
    if !h.is_triangulated()? {
        return Err(Error::NotTriangulated);
    }
    Ok(d)
}

/// Betti table by the splitting recursion.
pub fn betti_recursive(h: &Hypergraph, field: FieldChoice) -> Result<BettiTable> {
    betti_recursive_with_stats(h, field).map(|(t, _)| t)
}

pub fn betti_recursive_with_stats(h: &Hypergraph, field: FieldChoice) -> Result<(BettiTable, RecursionStats)> {
    let Some(d) = require_special_triangulated(h)? else {
        return Ok((BettiTable::trivial(h.n(), field), RecursionStats::default()));
    };
    let rec = Recursion {
        d,
        field,
        memo: Mutex::new(HashMap::new()),
        splits: AtomicUsize::new(0),
        memo_hits: AtomicUsize::new(0),
        fallbacks: AtomicUsize::new(0),
    };
    let mut table = BettiTable::empty(h.n(), field);
    for ((i, j), v) in rec.run(h)? {
        table.set(i, j, v);
    }
    let stats = RecursionStats {
        splits: rec.splits.into_inner(),
        memo_hits: rec.memo_hits.into_inner(),
        fallbacks: rec.fallbacks.into_inner(),
    };
    Ok((table, stats))
}

/// Entries in the top degree `j = |V(H)|` where the reduced recursion
/// `β_{i,j}(H) = β_{i,j}(H1) + β_{i-1-t, j-d-t}(H2)` fails, as
/// `(i, lhs, rhs)`.
pub fn reduced_recursion_mismatches(
    dec: &SplittingDecomposition,
    h: &BettiTable,
    h1: &BettiTable,
    h2: &BettiTable,
) -> Vec<(usize, u64, u64)> {
    let j = h.n();
    let (t, d) = (dec.t(), dec.d);
    (0..=j)
        .filter_map(|i| {
            let lhs = h.get(i, j);
            let tail = match (i.checked_sub(1 + t), j.checked_sub(d + t)) {
                (Some(a), Some(b)) => h2.get(a, b),
                _ => 0,
            };
            let rhs = h1.get(i, j) + tail;
            (lhs != rhs).then_some((i, lhs, rhs))
        })
        .collect()
}

fn violation(check: &str, detail: String, h: &Hypergraph) -> Error {
    Error::ViolationFound {
        check: check.into(),
        detail,
        instance: to_json(h),
    }
}

fn require_budget(h: &Hypergraph, budget: usize) -> Result<()> {
    if h.m() > budget {
        return Err(Error::BudgetExceeded { edges: h.m(), cap: budget });
    }
    Ok(())
}

/// Every type `(i, j)` with `i ≥ 1` realized by a self disjoint set, with
/// the lexicographically least such set.
pub fn self_disjoint_types(h: &Hypergraph, budget: usize) -> Result<BTreeMap<(usize, usize), Vec<usize>>> {
    require_budget(h, budget)?;
    let mut out = BTreeMap::new();
    for i in 1..=h.m() {
        for_each_combination(h.m(), i, &mut |fam| {
            let j = h.union_of(fam).len();
            if !out.contains_key(&(i, j)) && self_disjoint_core(h, fam).is_some() {
                out.insert((i, j), fam.to_vec());
            }
            false
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonvanishingReport {
    pub table: BettiTable,
    /// A self disjoint set for every nonzero entry with `i ≥ 1`.
    pub witnesses: BTreeMap<String, Vec<usize>>,
    pub pd: usize,
    pub reg: usize,
    pub d1: usize,
    pub d2: usize,
    pub d1_prime: usize,
    pub d2_prime: usize,
    pub a: usize,
}

/// On a triangulated special-class hypergraph checks that `β_{i,j} ≠ 0`
/// exactly when a self disjoint set of type `(i, j)` exists, that
/// `pd = d1 = d2`, `reg = d1' = d2'` and `d1' = (d - 1) a`.
pub fn check_nonvanishing_characterization(h: &Hypergraph, field: FieldChoice) -> Result<NonvanishingReport> {
    let d = require_special_triangulated(h)?;
    let table = betti_recursive(h, field)?;
    let types = self_disjoint_types(h, INVARIANT_EDGE_BUDGET)?;
    let nonzero: Vec<(usize, usize)> = table.entries().map(|(k, _)| k).filter(|&(i, _)| i >= 1).collect();
    let mut keys: Vec<(usize, usize)> = nonzero.iter().chain(types.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    for (i, j) in keys {
        let has_set = types.contains_key(&(i, j));
        if table.is_nonzero(i, j) != has_set {
            return Err(violation(
                "nonvanishing iff self disjoint set",
                format!("beta_{{{i},{j}}} = {} but self disjoint set of that type exists: {has_set}", table.get(i, j)),
                h,
            ));
        }
    }
    let inv = compute_invariants(h, INVARIANT_EDGE_BUDGET)?;
    let (pd, reg) = (table.pd(), table.reg());
    if !(pd == inv.d1 && pd == inv.d2) {
        return Err(violation(
            "pd = d1 = d2",
            format!("pd = {pd}, d1 = {}, d2 = {}", inv.d1, inv.d2),
            h,
        ));
    }
    if !(reg == inv.d1_prime && reg == inv.d2_prime) {
        return Err(violation(
            "reg = d1' = d2'",
            format!("reg = {reg}, d1' = {}, d2' = {}", inv.d1_prime, inv.d2_prime),
            h,
        ));
    }
    let d = d.unwrap_or(0);
    if inv.d1_prime != d.saturating_sub(1) * inv.a {
        return Err(violation(
            "d1' = (d - 1) a",
            format!("d1' = {}, d = {d}, a = {}", inv.d1_prime, inv.a),
            h,
        ));
    }
    Ok(NonvanishingReport {
        witnesses: types.into_iter().map(|((i, j), f)| (format!("{i},{j}"), f)).collect(),
        table,
        pd,
        reg,
        d1: inv.d1,
        d2: inv.d2,
        d1_prime: inv.d1_prime,
        d2_prime: inv.d2_prime,
        a: inv.a,
    })
}

/// Every induced matching and every self disjoint set of `H \ S` is one of
/// `H`. Returns the number of families checked.
pub fn check_persistence(h: &Hypergraph, x: VertexId, s: usize) -> Result<usize> {
    let dec = split(h, x, s)?;
    require_budget(&dec.h1, INVARIANT_EDGE_BUDGET)?;
    let mut cases = 0;
    let mut failure = None;
    for i in 1..=dec.h1.m() {
        for_each_combination(dec.h1.m(), i, &mut |fam| {
            let lifted: Vec<usize> = fam.iter().map(|&k| dec.h1_edge_in_h(k)).collect();
            if is_induced_matching(&dec.h1, fam) {
                cases += 1;
                if !is_induced_matching(h, &lifted) {
                    failure = Some(format!("induced matching {lifted:?} of H \\ S is not induced in H"));
                    return true;
                }
            }
            if self_disjoint_core(&dec.h1, fam).is_some() {
                cases += 1;
                if self_disjoint_core(h, &lifted).is_none() {
                    failure = Some(format!("self disjoint set {lifted:?} of H \\ S is not self disjoint in H"));
                    return true;
                }
            }
            false
        });
        if let Some(detail) = failure {
            return Err(violation("persistence under edge deletion", detail, h));
        }
    }
    Ok(cases)
}

/// For every self disjoint set `S'` of `H2` (including the empty one),
/// `S' ∪ {S, S_1, .., S_t}` is self disjoint in `H` with `t + 1` more edges
/// and `d + t` more vertices. Returns the number of sets checked.
pub fn check_extension(h: &Hypergraph, dec: &SplittingDecomposition) -> Result<usize> {
    require_budget(&dec.h2, INVARIANT_EDGE_BUDGET)?;
    let mut anchor = vec![dec.s];
    anchor.extend(&dec.neighbor_edges);
    let anchor_degree = h.union_of(&anchor).len();
    let mut cases = 0;
    let mut failure = None;
    let mut test = |fam: &[usize]| -> bool {
        if !fam.is_empty() && self_disjoint_core(&dec.h2, fam).is_none() {
            return false;
        }
        cases += 1;
        let mut ext: Vec<usize> = fam.iter().map(|&k| dec.h2_edges[k]).collect();
        ext.extend(&anchor);
        let (i, j) = (fam.len(), dec.h2.union_of(fam).len());
        let ext_type = (ext.len(), h.union_of(&ext).len());
        let expected = (i + 1 + dec.t(), j + dec.d + dec.t());
        if ext_type != expected || anchor_degree != dec.d + dec.t() || self_disjoint_core(h, &ext).is_none() {
            failure = Some(format!(
                "extension {ext:?} of type {ext_type:?} (expected {expected:?}) is not self disjoint"
            ));
            return true;
        }
        false
    };
    for i in 0..=dec.h2.m() {
        if for_each_combination(dec.h2.m(), i, &mut test) {
            break;
        }
    }
    match failure {
        Some(detail) => Err(violation("extension by a splitting edge", detail, h)),
        None => Ok(cases),
    }
}

/// Vertex set of `H` covered by `S` and its neighbor edges.
pub fn anchor_vertices(h: &Hypergraph, dec: &SplittingDecomposition) -> VertexSet {
    let mut anchor = vec![dec.s];
    anchor.extend(&dec.neighbor_edges);
    h.union_of(&anchor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hochster::betti_table;
    use crate::hypergraph::tests::{c4, p3, p4, star32};
    use crate::named;

    const Q: FieldChoice = FieldChoice::Rational;

    #[test]
    fn split_p3_at_endpoint() {
        let h = p3();
        let dec = split(&h, VertexId(0), 0).unwrap();
        assert_eq!((dec.t(), dec.neighbor_edges.clone()), (1, vec![1]));
        assert_eq!(dec.h1.edge_lists(), vec![vec![1, 2]]);
        assert_eq!((dec.h2.n(), dec.h2.m()), (0, 0));
    }

    #[test]
    fn split_single_edge() {
        let h = Hypergraph::from_edges(4, &[&[0, 1, 2]]).unwrap();
        let dec = split(&h, VertexId(1), 0).unwrap();
        assert_eq!(dec.t(), 0);
        assert_eq!((dec.h1.m(), dec.h2.n(), dec.h2.m()), (0, 1, 0));
    }

    #[test]
    fn split_star_at_leaf() {
        let h = star32();
        let x1 = h.vertex("x1").unwrap();
        let s = h.edge_index(&[0, 1, x1.0].into_iter().collect()).unwrap();
        let dec = split(&h, x1, s).unwrap();
        assert_eq!((dec.t(), dec.h2.m()), (1, 0));
    }

    #[test]
    fn swap_keeps_x_out_of_neighbor_edges() {
        // Triangle xyz with pendant zw: splitting at x through xz the only edge
        // adding y contains x, so it is swapped for yz.
        let h = Hypergraph::from_edges(4, &[&[0, 1], &[0, 2], &[1, 2], &[2, 3]]).unwrap();
        let dec = split(&h, VertexId(0), 1).unwrap();
        for &e in &dec.neighbor_edges {
            assert!(!h.set(e).contains(0));
            assert_eq!(h.set(e).difference_len(h.set(1)), 1);
        }
        assert_eq!(dec.t(), 2);
    }

    #[test]
    fn split_errors() {
        assert_eq!(split(&c4(), VertexId(0), 0).unwrap_err(), Error::NotSimplicial(0));
        assert!(matches!(split(&p3(), VertexId(0), 1), Err(Error::VertexNotInEdge { .. })));
        let mixed = Hypergraph::from_edges(4, &[&[0, 1, 2], &[1, 3]]).unwrap();
        assert_eq!(split(&mixed, VertexId(0), 0).unwrap_err(), Error::NotSpecialClass);
    }

    #[test]
    fn base_cases() {
        let edgeless = Hypergraph::edgeless(vec!["a".into()]).unwrap();
        let t = betti_recursive(&edgeless, Q).unwrap();
        assert_eq!(t.entries().collect::<Vec<_>>(), vec![((0, 0), 1)]);
        let one = Hypergraph::from_edges(3, &[&[0, 1, 2]]).unwrap();
        let t = betti_recursive(&one, Q).unwrap();
        assert_eq!(t.entries().collect::<Vec<_>>(), vec![((0, 0), 1), ((1, 3), 1)]);
    }

    #[test]
    fn matches_hochster() {
        for h in [p3(), p4(), named::path(6), named::fan(4), named::complete_graph(4), star32(), named::star_hypergraph(3, 4)] {
            assert_eq!(betti_recursive(&h, Q).unwrap(), betti_table(&h, Q).unwrap());
        }
        assert_eq!(betti_recursive(&c4(), Q).unwrap_err(), Error::NotTriangulated);
    }

    #[test]
    fn star_hypergraph_pd_reg() {
        let t = betti_recursive(&named::star_hypergraph(3, 4), Q).unwrap();
        assert_eq!((t.pd(), t.reg()), (4, 2));
    }

    #[test]
    fn characterization_on_small_cases() {
        for h in [p4(), named::path(6), named::complete_uniform(3, 4), named::star_hypergraph(3, 3)] {
            check_nonvanishing_characterization(&h, Q).unwrap();
        }
        let r = check_nonvanishing_characterization(&named::complete_uniform(3, 4), Q).unwrap();
        assert_eq!((r.pd, r.d1, r.reg, r.d1_prime), (2, 2, 2, 2));
    }

    #[test]
    fn deleting_a_splitting_edge_can_break_triangulation() {
        let h = named::complete_uniform(3, 4);
        let dec = split(&h, VertexId(0), 0).unwrap();
        assert!(!dec.h1.is_triangulated().unwrap());
        let (t, stats) = betti_recursive_with_stats(&h, Q).unwrap();
        assert_eq!(t, betti_table(&h, Q).unwrap());
        assert_eq!((stats.splits, stats.fallbacks), (1, 1));
    }

    #[test]
    fn persistence_and_extension_on_small_cases() {
        let k4 = named::complete_graph(4);
        for x in 0..4 {
            for s in (0..k4.m()).filter(|&s| k4.set(s).contains(x)) {
                check_persistence(&k4, VertexId(x), s).unwrap();
            }
        }
        let h = p4();
        let dec = split(&h, VertexId(0), 0).unwrap();
        assert!(check_extension(&h, &dec).unwrap() >= 1);
        let h = named::star_hypergraph(3, 3);
        let dec = split(&h, VertexId(2), 0).unwrap();
        check_persistence(&h, VertexId(2), 0).unwrap();
        assert_eq!(check_extension(&h, &dec).unwrap(), 1);
        assert_eq!(anchor_vertices(&h, &dec).len(), 5);
    }

    #[test]
    fn reduced_form_on_fan() {
        let h = named::fan(4);
        let (x, s) = choose_split(&h).unwrap().unwrap();
        let dec = split(&h, x, s).unwrap();
        let tables = [&h, &dec.h1].map(|g| betti_table(g, Q).unwrap());
        let h2 = betti_table(&dec.h2, Q).unwrap();
        assert!(reduced_recursion_mismatches(&dec, &tables[0], &tables[1], &h2).is_empty());
    }
}
