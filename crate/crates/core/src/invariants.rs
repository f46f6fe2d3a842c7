//! Exact matching-type invariants with optimal witness families.
//!
//! Every class involved except plain matchings requires irredundance, and
//! matchings are irredundant, so one depth-first search over irredundant
//! edge sets covers them all. Irredundance is inherited by subfamilies,
//! which is what makes the pruning exact.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bouquet::{bouquet_invariants, BouquetInvariants};
use crate::error::{Error, Result};
use crate::family::{
    is_self_contained, is_semi_induced, least_self_order, self_disjoint_core, self_semi_disjoint_core, EdgeFamily,
};
use crate::hypergraph::Hypergraph;
use crate::vertex_set::VertexSet;

/// Default edge budget for [`compute_invariants`].
pub const INVARIANT_EDGE_BUDGET: usize = 16;

/// Names of the invariants, serialized as `m`, `a`, `a_3`, `b_prime`, ...
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Invariant {
    M,
    A,
    AT(usize),
    B,
    BPrime,
    C,
    CPrime,
    D1,
    D2,
    D1Prime,
    D2Prime,
    E,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::M => f.write_str("m"),
            Self::A => f.write_str("a"),
            Self::AT(t) => write!(f, "a_{t}"),
            Self::B => f.write_str("b"),
            Self::BPrime => f.write_str("b_prime"),
            Self::C => f.write_str("c"),
            Self::CPrime => f.write_str("c_prime"),
            Self::D1 => f.write_str("d1"),
            Self::D2 => f.write_str("d2"),
            Self::D1Prime => f.write_str("d1_prime"),
            Self::D2Prime => f.write_str("d2_prime"),
            Self::E => f.write_str("e"),
        }
    }
}

impl FromStr for Invariant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "m" => Self::M,
            "a" => Self::A,
            "b" => Self::B,
            "b_prime" => Self::BPrime,
            "c" => Self::C,
            "c_prime" => Self::CPrime,
            "d1" => Self::D1,
            "d2" => Self::D2,
            "d1_prime" => Self::D1Prime,
            "d2_prime" => Self::D2Prime,
            "e" => Self::E,
            other => Self::AT(
                other
                    .strip_prefix("a_")
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| format!("unknown invariant `{other}`"))?,
            ),
        })
    }
}

impl From<Invariant> for String {
    fn from(i: Invariant) -> String {
        i.to_string()
    }
}

impl TryFrom<String> for Invariant {
    type Error = String;

    fn try_from(s: String) -> std::result::Result<Self, String> {
        s.parse()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphInvariants {
    /// Largest total number of flowers in a strongly disjoint set of bouquets.
    pub d_g: usize,
    /// Largest number of bouquets in a strongly disjoint set of bouquets.
    pub d_g_prime: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub m: usize,
    pub a: usize,
    /// `a_{H,t}` for every edge size `t` present.
    pub a_t: BTreeMap<usize, usize>,
    pub b: usize,
    pub b_prime: usize,
    pub c: usize,
    pub c_prime: usize,
    pub d1: usize,
    pub d2: usize,
    pub d1_prime: usize,
    pub d2_prime: usize,
    pub e: usize,
    /// Present for graphs (including edgeless hypergraphs).
    pub graph: Option<GraphInvariants>,
    /// Lexicographically least optimal family for each invariant; empty when
    /// the value is 0 for lack of any qualifying family.
    pub witnesses: BTreeMap<Invariant, EdgeFamily>,
}

impl InvariantReport {
    pub fn get(&self, inv: Invariant) -> usize {
        match inv {
            Invariant::M => self.m,
            Invariant::A => self.a,
            Invariant::AT(t) => self.a_t.get(&t).copied().unwrap_or(0),
            Invariant::B => self.b,
            Invariant::BPrime => self.b_prime,
            Invariant::C => self.c,
            Invariant::CPrime => self.c_prime,
            Invariant::D1 => self.d1,
            Invariant::D2 => self.d2,
            Invariant::D1Prime => self.d1_prime,
            Invariant::D2Prime => self.d2_prime,
            Invariant::E => self.e,
        }
    }

    /// The ordering inequalities between invariants that fail.
    pub fn inequality_violations(&self) -> Vec<String> {
        let checks = [
            ("a <= m", self.a <= self.m),
            ("a <= b", self.a <= self.b),
            ("b <= d2", self.b <= self.d2),
            ("b <= e", self.b <= self.e),
            ("a <= d1", self.a <= self.d1),
            ("d1 <= d2", self.d1 <= self.d2),
            ("c <= e", self.c <= self.e),
            ("b' <= d2'", self.b_prime <= self.d2_prime),
            ("d1' <= d2'", self.d1_prime <= self.d2_prime),
        ];
        checks.iter().filter(|c| !c.1).map(|c| c.0.to_string()).collect()
    }

    /// Rows `name value witness` in a stable order.
    pub fn render(&self) -> String {
        let mut names: Vec<Invariant> = vec![Invariant::M, Invariant::A];
        names.extend(self.a_t.keys().map(|&t| Invariant::AT(t)));
        names.extend([
            Invariant::B,
            Invariant::BPrime,
            Invariant::C,
            Invariant::CPrime,
            Invariant::D1,
            Invariant::D2,
            Invariant::D1Prime,
            Invariant::D2Prime,
            Invariant::E,
        ]);
        let mut out = String::new();
        for inv in names {
            let witness = self.witnesses.get(&inv).map_or_else(String::new, |w| format!("{:?}", w.indices()));
            out.push_str(&format!("{:<9} {:>3}  {}\n", inv.to_string(), self.get(inv), witness));
        }
        if let Some(g) = &self.graph {
            out.push_str(&format!("{:<9} {:>3}\n{:<9} {:>3}\n", "d_G", g.d_g, "d_G_prime", g.d_g_prime));
        }
        out
    }
}

#[derive(Clone, Debug, Default)]
struct Best {
    value: usize,
    witness: Vec<usize>,
}

impl Best {
    fn offer(&mut self, value: usize, witness: &[usize]) {
        if value > self.value || (value == self.value && value > 0 && witness < self.witness.as_slice()) {
            self.value = value;
            self.witness = witness.to_vec();
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.offer(other.value, &other.witness);
        self
    }
}

#[derive(Clone, Debug, Default)]
struct Search {
    best: BTreeMap<Invariant, Best>,
}

impl Search {
    fn get(&mut self, inv: Invariant) -> &mut Best {
        self.best.entry(inv).or_default()
    }

    fn value(&self, inv: Invariant) -> usize {
        self.best.get(&inv).map_or(0, |b| b.value)
    }

    fn merge(mut self, other: Self) -> Self {
        for (k, v) in other.best {
            let mine = self.best.remove(&k).unwrap_or_default();
            self.best.insert(k, mine.merge(v));
        }
        self
    }

    fn visit(&mut self, h: &Hypergraph, fam: &[usize], union: &VertexSet, matching: bool) {
        let (i, j) = (fam.len(), union.len());
        let excess = j - i;
        if matching {
            self.get(Invariant::M).offer(i, fam);
        }
        let semi = is_semi_induced(h, fam);
        if semi {
            self.get(Invariant::B).offer(i, fam);
            self.get(Invariant::BPrime).offer(excess, fam);
            if matching {
                self.get(Invariant::A).offer(i, fam);
                let t = h.set(fam[0]).len();
                if fam.iter().all(|&s| h.set(s).len() == t) {
                    self.get(Invariant::AT(t)).offer(i, fam);
                }
            }
        }
        if semi || is_self_contained(h, fam) {
            self.get(Invariant::E).offer(i, fam);
        }
        let improves = |s: &Self, size: Invariant, excess_inv: Invariant| {
            i >= s.value(size) || excess >= s.value(excess_inv)
        };
        let disjoint =
            improves(self, Invariant::D1, Invariant::D1Prime) && self_disjoint_core(h, fam).is_some();
        if disjoint {
            self.get(Invariant::D1).offer(i, fam);
            self.get(Invariant::D1Prime).offer(excess, fam);
        }
        if improves(self, Invariant::D2, Invariant::D2Prime)
            && (disjoint || self_semi_disjoint_core(h, fam).is_some())
        {
            self.get(Invariant::D2).offer(i, fam);
            self.get(Invariant::D2Prime).offer(excess, fam);
        }
        if improves(self, Invariant::C, Invariant::CPrime) {
            if let Some(order) = least_self_order(h, fam) {
                self.get(Invariant::C).offer(i, &order);
                self.get(Invariant::CPrime).offer(excess, &order);
            }
        }
    }

    fn dfs(&mut self, h: &Hypergraph, fam: &mut Vec<usize>, union: &VertexSet, matching: bool) {
        self.visit(h, fam, union, matching);
        let start = fam.last().map_or(0, |&s| s + 1);
        for s in start..h.m() {
            let edge = h.set(s);
            if edge.is_subset(union) {
                continue;
            }
            // The new edge must not swallow an old member either.
            let grown = union.union(edge);
            let keeps = fam.iter().enumerate().all(|(k, &old)| {
                let mut others = edge.clone();
                for (l, &t) in fam.iter().enumerate() {
                    if l != k {
                        others.union_with(h.set(t));
                    }
                }
                !h.set(old).is_subset(&others)
            });
            if keeps {
                fam.push(s);
                self.dfs(h, fam, &grown, matching && union.is_disjoint(edge));
                fam.pop();
            }
        }
    }
}

/// All invariants of `h`, enumerating exactly when `h` has at most `budget`
/// edges.
pub fn compute_invariants(h: &Hypergraph, budget: usize) -> Result<InvariantReport> {
    if h.m() > budget {
        return Err(Error::BudgetExceeded { edges: h.m(), cap: budget });
    }
    let search = (0..h.m())
        .into_par_iter()
        .map(|s| {
            let mut search = Search::default();
            search.dfs(h, &mut vec![s], h.set(s), true);
            search
        })
        .reduce(Search::default, Search::merge);
    let mut sizes: Vec<usize> = h.edges().iter().map(|e| e.len()).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let value = |inv| search.value(inv);
    let graph = if h.is_graph() {
        let BouquetInvariants { d_g, d_g_prime, .. } = bouquet_invariants(h)?;
        Some(GraphInvariants { d_g, d_g_prime })
    } else {
        None
    };
    let mut witnesses = BTreeMap::new();
    for (&inv, best) in &search.best {
        if best.value > 0 {
            witnesses.insert(inv, EdgeFamily::new(h, best.witness.clone())?);
        }
    }
    let keys = [
        Invariant::M,
        Invariant::A,
        Invariant::B,
        Invariant::BPrime,
        Invariant::C,
        Invariant::CPrime,
        Invariant::D1,
        Invariant::D2,
        Invariant::D1Prime,
        Invariant::D2Prime,
        Invariant::E,
    ];
    for inv in keys.into_iter().chain(sizes.iter().map(|&t| Invariant::AT(t))) {
        witnesses.entry(inv).or_insert_with(EdgeFamily::empty);
    }
    Ok(InvariantReport {
        m: value(Invariant::M),
        a: value(Invariant::A),
        a_t: sizes.iter().map(|&t| (t, value(Invariant::AT(t)))).collect(),
        b: value(Invariant::B),
        b_prime: value(Invariant::BPrime),
        c: value(Invariant::C),
        c_prime: value(Invariant::CPrime),
        d1: value(Invariant::D1),
        d2: value(Invariant::D2),
        d1_prime: value(Invariant::D1Prime),
        d2_prime: value(Invariant::D2Prime),
        e: value(Invariant::E),
        graph,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::tests::{c3, c4, example_six, p3, p4};
    use crate::named;

    fn inv(h: &Hypergraph) -> InvariantReport {
        compute_invariants(h, INVARIANT_EDGE_BUDGET).unwrap()
    }

    #[test]
    fn small_graphs() {
        let r = inv(&c3());
        assert_eq!((r.b, r.e), (1, 2));
        let r = inv(&p3());
        assert_eq!((r.a, r.b), (1, 2));
        let r = inv(&p4());
        assert_eq!((r.a, r.m), (1, 2));
        let r = inv(&named::path(6));
        assert_eq!(r.b, 3);
        assert_eq!(r.graph.as_ref().unwrap().d_g, 4);
        let r = inv(&c4());
        assert_eq!((r.e, r.c), (2, 1));
    }

    #[test]
    fn example_six_invariants() {
        let r = inv(&example_six());
        assert_eq!((r.d1, r.d2), (2, 3));
        assert_eq!(r.witnesses[&Invariant::D1].indices(), &[0, 1]);
        assert_eq!(r.witnesses[&Invariant::D2].indices(), &[0, 1, 2]);
        assert!(r.graph.is_none());
        assert!(r.inequality_violations().is_empty());
    }

    #[test]
    fn edgeless_is_all_zero() {
        let r = inv(&Hypergraph::edgeless(vec!["x".into(), "y".into()]).unwrap());
        for k in [Invariant::M, Invariant::A, Invariant::B, Invariant::C, Invariant::E, Invariant::D2Prime] {
            assert_eq!(r.get(k), 0);
            assert!(r.witnesses[&k].is_empty());
        }
        assert_eq!(r.graph, Some(GraphInvariants { d_g: 0, d_g_prime: 0 }));
    }

    #[test]
    fn single_edge() {
        let r = inv(&Hypergraph::from_edges(4, &[&[0, 1, 2, 3]]).unwrap());
        assert_eq!((r.b, r.b_prime), (1, 3));
        assert_eq!(r.a_t, BTreeMap::from([(4, 1)]));
    }

    #[test]
    fn budget() {
        let h = named::path(18);
        assert!(matches!(compute_invariants(&h, 16), Err(Error::BudgetExceeded { edges: 17, cap: 16 })));
    }

    #[test]
    fn witnesses_are_least() {
        // In P4 the induced matchings of size 1 are the three edges; the least is edge 0.
        let r = inv(&p4());
        assert_eq!(r.witnesses[&Invariant::A].indices(), &[0]);
        assert_eq!(r.witnesses[&Invariant::M].indices(), &[0, 2]);
    }

    #[test]
    fn invariant_names_round_trip() {
        for k in [Invariant::M, Invariant::AT(3), Invariant::BPrime, Invariant::D2Prime] {
            assert_eq!(k.to_string().parse::<Invariant>().unwrap(), k);
        }
        assert!("zz".parse::<Invariant>().is_err());
        let json = serde_json::to_string(&BTreeMap::from([(Invariant::AT(2), 1)])).unwrap();
        assert_eq!(json, r#"{"a_2":1}"#);
    }
}
