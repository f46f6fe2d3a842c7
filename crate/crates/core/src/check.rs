//! Runs every applicable property against one instance.
//!
//! Each check reports how many cases it examined and the first failure, if
//! any. A check with no applicable case is reported as not applicable, with
//! the reason.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::betti::BettiTable;
use crate::error::Result;
use crate::family::{classify_indices, for_each_combination, least_self_order, FamilyClassification};
use crate::generate::rng_for;
use crate::hochster::betti_table_capped;
use crate::hypergraph::{Hypergraph, VertexId, TRIANGULATED_VERTEX_CAP};
use crate::invariants::{compute_invariants, Invariant, InvariantReport, INVARIANT_EDGE_BUDGET};
use crate::linalg::FieldChoice;
use crate::lyubeznik::{
    certify_against, is_l_admissible, is_maximal_l_admissible, max_admissible_size, AdmissibilityRule, Certificate,
    CertificateKind, CertificateVerdict,
};
use crate::splitting::{
    betti_recursive, check_extension, check_nonvanishing_characterization, check_persistence, combine,
    reduced_recursion_mismatches, split,
};
use crate::taylor::{separation_condition, spanning_condition, EdgeOrdering, ReducedTaylor, SymbolChain};
use crate::EdgeFamily;

/// Default cap on vertices for the exact Betti engines.
pub const CHECK_VERTEX_CAP: usize = 10;
/// Default cap on edges for the Taylor engine.
pub const CHECK_EDGE_CAP: usize = 10;
/// Checks that visit every edge family run only up to this many edges.
pub const FAMILY_ENUMERATION_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckConfig {
    pub field: FieldChoice,
    pub vertex_cap: usize,
    pub edge_cap: usize,
    pub rule: AdmissibilityRule,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            field: FieldChoice::Rational,
            vertex_cap: CHECK_VERTEX_CAP,
            edge_cap: CHECK_EDGE_CAP,
            rule: AdmissibilityRule::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
    /// Observations that are reported but never fail.
    Info,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub status: CheckStatus,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub instance: Hypergraph,
    pub field: FieldChoice,
    pub table: Option<BettiTable>,
    pub invariants: Option<InvariantReport>,
    /// Certificates for the witnesses of `a`, `b`, `c` and `d2`.
    pub certificates: Vec<CertificateVerdict>,
    pub checks: Vec<CheckOutcome>,
}

impl InstanceReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn outcome(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::NotApplicable => "n/a",
                CheckStatus::Info => "info",
            };
            out.push_str(&format!("{status:<5} {:<36} {:>6}", c.name, c.cases));
            if let Some(d) = &c.detail {
                out.push_str("  ");
                out.push_str(d);
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Default)]
struct Tally {
    cases: usize,
    failure: Option<String>,
}

impl Tally {
    fn case(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(detail());
        }
    }
}

#[derive(Default)]
struct Recorder {
    checks: Vec<CheckOutcome>,
}

impl Recorder {
    fn tally(&mut self, name: &str, t: Tally) {
        let status = match (&t.failure, t.cases) {
            (Some(_), _) => CheckStatus::Fail,
            (None, 0) => CheckStatus::NotApplicable,
            (None, _) => CheckStatus::Pass,
        };
        self.checks.push(CheckOutcome {
            name: name.into(),
            status,
            cases: t.cases,
            detail: t.failure,
        });
    }

    fn skip(&mut self, name: &str, reason: &str) {
        self.checks.push(CheckOutcome {
            name: name.into(),
            status: CheckStatus::NotApplicable,
            cases: 0,
            detail: Some(reason.into()),
        });
    }

    fn info(&mut self, name: &str, cases: usize, detail: Option<String>) {
        self.checks.push(CheckOutcome {
            name: name.into(),
            status: CheckStatus::Info,
            cases,
            detail,
        });
    }
}

/// What the checks need to know about one edge family.
struct Facts {
    fam: Vec<usize>,
    j: usize,
    irredundant: bool,
    class: FamilyClassification,
    self_order: Option<Vec<usize>>,
}

impl Facts {
    fn i(&self) -> usize {
        self.fam.len()
    }
}

fn all_families(h: &Hypergraph) -> Vec<Facts> {
    let mut out = Vec::new();
    for i in 1..=h.m() {
        for_each_combination(h.m(), i, &mut |fam| {
            let class = classify_indices(h, fam).expect("indices in range");
            out.push(Facts {
                fam: fam.to_vec(),
                j: h.union_of(fam).len(),
                irredundant: crate::family::is_irredundant(h, fam),
                self_order: least_self_order(h, fam),
                class,
            });
            false
        });
    }
    out
}

/// Exact table from Hochster's formula, or the Taylor complex when there
/// are too many vertices.
pub fn exact_table(h: &Hypergraph, cfg: &CheckConfig) -> Option<BettiTable> {
    if h.n() <= cfg.vertex_cap {
        betti_table_capped(h, cfg.field, cfg.vertex_cap).ok()
    } else if h.m() <= cfg.edge_cap {
        crate::taylor::betti_via_taylor(h, cfg.field).ok()
    } else {
        None
    }
}

pub fn check_instance(h: &Hypergraph, cfg: &CheckConfig) -> InstanceReport {
    let mut rec = Recorder::default();
    let families = (h.m() <= FAMILY_ENUMERATION_CAP).then(|| all_families(h));
    let inv = compute_invariants(h, INVARIANT_EDGE_BUDGET).ok();
    let table = exact_table(h, cfg);

    classification_checks(h, families.as_deref(), &mut rec);
    invariant_checks(h, inv.as_ref(), &mut rec);
    let certificates = match &table {
        Some(table) => {
            table_checks(h, cfg, table, inv.as_ref(), families.as_deref(), &mut rec);
            witness_certificates(h, table, inv.as_ref())
        }
        None => {
            for name in TABLE_CHECKS {
                rec.skip(name, "instance exceeds the Betti engine caps");
            }
            Vec::new()
        }
    };
    lyubeznik_checks(h, cfg.rule, families.as_deref(), &mut rec);
    triangulated_checks(h, cfg, table.as_ref(), &mut rec);

    InstanceReport {
        instance: h.clone(),
        field: cfg.field,
        table,
        invariants: inv,
        certificates,
        checks: rec.checks,
    }
}

const TABLE_CHECKS: [&str; 15] = [
    "engines_agree",
    "field_agreement",
    "induced_monotonicity",
    "degree_window",
    "regularity_window",
    "top_degree_induced_matchings",
    "reg_lower_bound_a_t",
    "pd_reg_lower_bounds",
    "boundary_squares_to_zero",
    "kernel_iff_irredundant",
    "image_criteria",
    "b_set_sandwich",
    "taylor_bounds",
    "pd_at_most_e",
    "nonvanishing_certificates",
];

fn classification_checks(h: &Hypergraph, families: Option<&[Facts]>, rec: &mut Recorder) {
    let names = ["classification_implications", "classification_order_invariance", "graph_semi_disjoint_is_disjoint"];
    let Some(families) = families else {
        for name in names {
            rec.skip(name, "too many edges to enumerate families");
        }
        return;
    };
    let mut implications = Tally::default();
    let mut order = Tally::default();
    let mut graph = Tally::default();
    for f in families {
        let v = f.class.implication_violations();
        implications.case(v.is_empty(), || format!("family {:?}: {}", f.fam, v.join(", ")));
        let mut rev = f.fam.clone();
        rev.reverse();
        let r = classify_indices(h, &rev).expect("indices in range");
        let key = |c: &FamilyClassification| {
            (
                c.matching,
                c.semi_induced,
                c.self_semi_induced,
                c.self_contained,
                c.induced,
                c.self_disjoint,
                c.self_semi_disjoint,
            )
        };
        order.case(key(&f.class) == key(&r), || format!("family {:?} changes class when reversed", f.fam));
        if h.is_graph() && f.class.self_semi_disjoint {
            graph.case(f.class.self_disjoint, || {
                format!("family {:?} is self semi-disjoint but not self disjoint", f.fam)
            });
        }
    }
    rec.tally(names[0], implications);
    rec.tally(names[1], order);
    if h.is_graph() {
        rec.tally(names[2], graph);
    } else {
        rec.skip(names[2], "not a graph");
    }
}

fn invariant_checks(h: &Hypergraph, inv: Option<&InvariantReport>, rec: &mut Recorder) {
    let names = ["invariant_inequalities", "graph_bouquet_invariants", "uniform_reg_witness", "uniform_a_d_equals_a"];
    let Some(inv) = inv else {
        for name in names {
            rec.skip(name, "too many edges for the invariant search");
        }
        return;
    };
    let mut t = Tally::default();
    let v = inv.inequality_violations();
    t.case(v.is_empty(), || v.join("; "));
    rec.tally(names[0], t);

    match &inv.graph {
        Some(g) => {
            let mut t = Tally::default();
            t.case(inv.d1 == g.d_g && inv.d2 == g.d_g, || {
                format!("d1 = {}, d2 = {}, d_G = {}", inv.d1, inv.d2, g.d_g)
            });
            t.case(inv.d1_prime == g.d_g_prime && inv.d2_prime == g.d_g_prime, || {
                format!("d1' = {}, d2' = {}, d_G' = {}", inv.d1_prime, inv.d2_prime, g.d_g_prime)
            });
            rec.tally(names[1], t);
        }
        None => rec.skip(names[1], "not a graph"),
    }

    match h.uniformity_profile().d {
        Some(d) => {
            let mut t = Tally::default();
            t.case(inv.d1_prime == (d - 1) * inv.a, || {
                format!("d1' = {}, (d - 1) a = {}", inv.d1_prime, (d - 1) * inv.a)
            });
            rec.tally(names[2], t);
            let mut t = Tally::default();
            let a_d = inv.get(Invariant::AT(d));
            t.case(a_d == inv.a, || format!("a_{d} = {a_d}, a = {}", inv.a));
            rec.tally(names[3], t);
        }
        None => {
            rec.skip(names[2], "not uniform or edgeless");
            rec.skip(names[3], "not uniform or edgeless");
        }
    }
}

fn table_checks(
    h: &Hypergraph,
    cfg: &CheckConfig,
    table: &BettiTable,
    inv: Option<&InvariantReport>,
    families: Option<&[Facts]>,
    rec: &mut Recorder,
) {
    engine_checks(h, cfg, table, rec);
    window_checks(h, table, inv, families, rec);
    taylor_checks(h, cfg, table, inv, families, rec);
    certificate_checks(h, table, families, rec);
}

fn engine_checks(h: &Hypergraph, cfg: &CheckConfig, table: &BettiTable, rec: &mut Recorder) {
    let mut t = Tally::default();
    let mut compare = |name: &str, other: Result<BettiTable>| {
        if let Ok(other) = other {
            t.case(other.same_entries(table), || {
                format!("{name} differs at {:?}", other.diff(table))
            });
        }
    };
    if h.n() <= cfg.vertex_cap {
        compare("hochster", betti_table_capped(h, cfg.field, cfg.vertex_cap));
    }
    if h.m() <= cfg.edge_cap {
        compare("taylor", crate::taylor::betti_via_taylor(h, cfg.field));
    }
    if h.n() <= TRIANGULATED_VERTEX_CAP && h.uniformity_profile().is_special_class {
        compare("recursive", betti_recursive(h, cfg.field));
    }
    // The table itself came from one of the engines.
    if t.cases >= 2 {
        rec.tally("engines_agree", t);
    } else {
        rec.skip("engines_agree", "fewer than two engines apply");
    }

    if h.n() <= cfg.vertex_cap {
        let other_field = match cfg.field {
            FieldChoice::Rational => FieldChoice::Prime(2),
            FieldChoice::Prime(_) => FieldChoice::Rational,
        };
        if let Ok(other) = betti_table_capped(h, other_field, cfg.vertex_cap) {
            let diff = other.diff(table);
            if diff.is_empty() {
                let mut t = Tally::default();
                t.case(true, String::new);
                rec.tally("field_agreement", t);
            } else {
                rec.info("field_agreement", 1, Some(format!("{other_field} differs at {diff:?}")));
            }
        }
    } else {
        rec.skip("field_agreement", "vertex cap");
    }

    if h.n() <= cfg.vertex_cap {
        let mut t = Tally::default();
        let all = h.vertices();
        let subsets: Vec<crate::VertexSet> = if h.n() <= 7 {
            (0u64..(1 << h.n()) - 1).map(crate::VertexSet::from_bits).collect()
        } else {
            all.iter().map(|v| all.difference(&crate::VertexSet::singleton(v))).collect()
        };
        for w in subsets {
            let sub = h.induced_subhypergraph(&w).expect("w inside V");
            let small = betti_table_capped(&sub, cfg.field, cfg.vertex_cap).expect("smaller than h");
            let bad = small.entries().find(|&((i, j), v)| v > table.get(i, j));
            t.case(bad.is_none(), || format!("restriction to {:?} has larger entry {bad:?}", w.to_vec()));
        }
        rec.tally("induced_monotonicity", t);
    } else {
        rec.skip("induced_monotonicity", "vertex cap");
    }
}

fn window_checks(
    h: &Hypergraph,
    table: &BettiTable,
    inv: Option<&InvariantReport>,
    families: Option<&[Facts]>,
    rec: &mut Recorder,
) {
    if h.m() == 0 {
        for name in ["degree_window", "regularity_window", "top_degree_induced_matchings"] {
            rec.skip(name, "no edges");
        }
    } else {
        let (t, t_min, n) = (h.max_edge_size(), h.min_edge_size(), h.n());
        let mut w = Tally::default();
        for ((i, j), _) in table.entries().filter(|&((i, _), _)| i >= 1) {
            w.case(i + t_min - 1 <= j && j <= n.min(t * i), || {
                format!("beta_{{{i},{j}}} lies outside [{}, {}]", i + t_min - 1, n.min(t * i))
            });
        }
        rec.tally("degree_window", w);
        let mut r = Tally::default();
        let (pd, reg) = (table.pd(), table.reg());
        r.case(t_min - 1 <= reg && reg <= (t - 1) * pd, || {
            format!("reg = {reg} outside [{}, {}]", t_min - 1, (t - 1) * pd)
        });
        rec.tally("regularity_window", r);
        match families {
            Some(families) => {
                let mut c = Tally::default();
                for i in 1..=h.m() {
                    let count = families
                        .iter()
                        .filter(|f| f.i() == i && f.j == t * i && f.class.induced)
                        .count() as u64;
                    c.case(count == table.get(i, t * i), || {
                        format!("beta_{{{i},{}}} = {} but {count} induced matchings", t * i, table.get(i, t * i))
                    });
                }
                rec.tally("top_degree_induced_matchings", c);
            }
            None => rec.skip("top_degree_induced_matchings", "too many edges to enumerate families"),
        }
    }

    let Some(inv) = inv else {
        rec.skip("reg_lower_bound_a_t", "too many edges for the invariant search");
        rec.skip("pd_reg_lower_bounds", "too many edges for the invariant search");
        return;
    };
    let (pd, reg) = (table.pd(), table.reg());
    let mut a = Tally::default();
    for (&t, &at) in &inv.a_t {
        a.case(reg >= (t - 1) * at, || format!("reg = {reg} < (t - 1) a_{t} = {}", (t - 1) * at));
    }
    rec.tally("reg_lower_bound_a_t", a);
    let mut b = Tally::default();
    for (name, bound, value) in [
        ("pd >= b", inv.b, pd),
        ("pd >= c", inv.c, pd),
        ("pd >= d2", inv.d2, pd),
        ("reg >= b'", inv.b_prime, reg),
        ("reg >= c'", inv.c_prime, reg),
        ("reg >= d2'", inv.d2_prime, reg),
    ] {
        b.case(value >= bound, || format!("{name} fails: {value} < {bound}"));
    }
    rec.tally("pd_reg_lower_bounds", b);
}

fn taylor_checks(
    h: &Hypergraph,
    cfg: &CheckConfig,
    table: &BettiTable,
    inv: Option<&InvariantReport>,
    families: Option<&[Facts]>,
    rec: &mut Recorder,
) {
    let names = [
        "boundary_squares_to_zero",
        "kernel_iff_irredundant",
        "image_criteria",
        "b_set_sandwich",
        "taylor_bounds",
        "pd_at_most_e",
    ];
    let (Some(families), true) = (families, h.m() <= cfg.edge_cap) else {
        for name in names {
            rec.skip(name, "edge cap");
        }
        return;
    };
    let id = EdgeOrdering::identity(h.m());
    let rt = ReducedTaylor::new(h, id.clone()).expect("within the Taylor cap");
    let mut t = Tally::default();
    t.case(rt.boundary_squares_to_zero(), || "a composite boundary map is nonzero".into());
    rec.tally(names[0], t);

    let chain = |fam: &[usize]| SymbolChain::new(h, &id, fam.to_vec()).expect("sorted indices");
    let mut kernel = Tally::default();
    for f in families {
        kernel.case(crate::taylor::in_kernel(h, &id, &chain(&f.fam)) == f.irredundant, || {
            format!("kernel membership of {:?} disagrees with irredundance", f.fam)
        });
    }
    rec.tally(names[1], kernel);

    let mut b_sets: BTreeMap<(usize, usize), BTreeSet<Vec<usize>>> = BTreeMap::new();
    let degrees: BTreeSet<(usize, usize)> = families.iter().map(|f| (f.i(), f.j)).collect();
    for &(i, j) in &degrees {
        let b = rt.b_set(i, j, cfg.field);
        b_sets.insert((i, j), b.into_iter().map(|c| c.positions().to_vec()).collect());
    }

    let mut image = Tally::default();
    for f in families.iter().filter(|f| f.irredundant) {
        let union = h.union_of(&f.fam);
        let in_image = !b_sets[&(f.i(), f.j)].contains(&f.fam);
        let outside: Vec<usize> = (0..h.m()).filter(|s| !f.fam.contains(s) && h.set(*s).is_subset(&union)).collect();
        image.case(!in_image || !outside.is_empty(), || {
            format!("{:?} is a boundary but no other edge lies in its union", f.fam)
        });
        let forced = outside.iter().any(|&s| {
            f.fam.iter().all(|&k| {
                let mut cover = h.set(s).clone();
                for &l in f.fam.iter().filter(|&&l| l != k) {
                    cover.union_with(h.set(l));
                }
                !h.set(k).is_subset(&cover)
            })
        });
        image.case(!forced || in_image, || {
            format!("{:?} has an edge inside its union absorbing no member but is not a boundary", f.fam)
        });
    }
    rec.tally(names[2], image);

    let mut sandwich = Tally::default();
    let mut bounds = Tally::default();
    for &(i, j) in &degrees {
        let b = b_sets[&(i, j)].len();
        let of_type = families.iter().filter(|f| f.i() == i && f.j == j);
        let ssi = of_type.clone().filter(|f| f.class.self_semi_induced).count();
        let sc = of_type.filter(|f| f.class.self_contained).count();
        sandwich.case(ssi <= b && b <= sc, || format!("({i},{j}): #ssi = {ssi}, |B| = {b}, #sc = {sc}"));
        let beta = table.get(i, j) as usize;
        if spanning_condition(h, i, j) {
            bounds.case(beta <= b && beta <= sc, || {
                format!("({i},{j}) spanning: beta = {beta}, |B| = {b}, #sc = {sc}")
            });
        }
        if separation_condition(h, i, j) {
            bounds.case(beta >= b && beta >= ssi, || {
                format!("({i},{j}) separated: beta = {beta}, |B| = {b}, #ssi = {ssi}")
            });
        }
    }
    rec.tally(names[3], sandwich);
    rec.tally(names[4], bounds);

    match inv {
        Some(inv) => {
            let mut e = Tally::default();
            let applies = (inv.e.max(1)..=h.m()).all(|i| (0..=h.n()).all(|j| spanning_condition(h, i, j)));
            if applies {
                e.case(table.pd() <= inv.e, || format!("pd = {} > e = {}", table.pd(), inv.e));
            }
            rec.tally(names[5], e);
        }
        None => rec.skip(names[5], "too many edges for the invariant search"),
    }
}

fn certificate_checks(h: &Hypergraph, table: &BettiTable, families: Option<&[Facts]>, rec: &mut Recorder) {
    let Some(families) = families else {
        rec.skip("nonvanishing_certificates", "too many edges to enumerate families");
        return;
    };
    let mut t = Tally::default();
    for f in families {
        let mut certs = Vec::new();
        if f.class.induced {
            certs.push((CertificateKind::InducedMatching, f.fam.clone()));
        }
        if f.class.self_semi_induced {
            certs.push((CertificateKind::SelfSemiInduced, f.fam.clone()));
        }
        if let Some(order) = &f.self_order {
            certs.push((CertificateKind::SelfOrdered, order.clone()));
        }
        if f.class.self_semi_disjoint {
            certs.push((CertificateKind::SelfSemiDisjoint, f.fam.clone()));
        }
        for (kind, fam) in certs {
            let cert = Certificate::new(h, kind, fam.clone()).expect("valid family");
            let verdict = certify_against(h, &cert, table);
            t.case(
                matches!(&verdict, Ok(v) if v.maximal_symbol != Some(false)),
                || match verdict {
                    Ok(_) => format!("{kind:?} certificate {fam:?}: symbol is not maximal L-admissible"),
                    Err(e) => format!("{kind:?} certificate {fam:?}: {e}"),
                },
            );
        }
    }
    rec.tally("nonvanishing_certificates", t);
}

fn witness_certificates(h: &Hypergraph, table: &BettiTable, inv: Option<&InvariantReport>) -> Vec<CertificateVerdict> {
    let Some(inv) = inv else {
        return Vec::new();
    };
    [
        (Invariant::A, CertificateKind::InducedMatching),
        (Invariant::B, CertificateKind::SelfSemiInduced),
        (Invariant::C, CertificateKind::SelfOrdered),
        (Invariant::D2, CertificateKind::SelfSemiDisjoint),
    ]
    .into_iter()
    .filter_map(|(which, kind)| {
        let fam: &EdgeFamily = inv.witnesses.get(&which)?;
        if fam.is_empty() {
            return None;
        }
        let cert = Certificate::new(h, kind, fam.indices().to_vec()).ok()?;
        certify_against(h, &cert, table).ok()
    })
    .collect()
}

fn lyubeznik_checks(h: &Hypergraph, rule: AdmissibilityRule, families: Option<&[Facts]>, rec: &mut Recorder) {
    let names = [
        "lyubeznik_self_semi_induced",
        "lyubeznik_self_ordered",
        "lyubeznik_irredundant",
        "lyubeznik_semi_disjoint",
    ];
    let Some(families) = families else {
        for name in names {
            rec.skip(name, "too many edges to enumerate families");
        }
        return;
    };
    let m = h.m();
    let ordering = |blocks: &[&[usize]], rest_reversed: bool| {
        let mut listed: Vec<usize> = blocks.concat();
        let mut rest: Vec<usize> = (0..m).filter(|s| !listed.contains(s)).collect();
        if rest_reversed {
            rest.reverse();
        }
        listed.extend(rest);
        EdgeOrdering::new(h, listed).expect("a permutation")
    };
    let admissible = |ord: &EdgeOrdering, fam: &[usize]| {
        is_l_admissible(h, ord, &SymbolChain::from_edges(h, ord, fam).expect("edges in range"), rule)
    };

    let mut ssi = Tally::default();
    let mut ordered = Tally::default();
    let mut irredundant = Tally::default();
    let mut semi_disjoint = Tally::default();
    for f in families {
        let fam = f.fam.as_slice();
        if f.class.self_semi_induced {
            let mut orders = vec![EdgeOrdering::identity(m), ordering(&[], true)];
            let mask = fam.iter().fold(0u64, |acc, &s| acc | 1 << s);
            for k in 0..2 {
                let mut p: Vec<usize> = (0..m).collect();
                p.shuffle(&mut rng_for(mask, k));
                orders.push(EdgeOrdering::new(h, p).expect("a permutation"));
            }
            for ord in &orders {
                ssi.case(admissible(ord, fam), || {
                    format!("self semi-induced {fam:?} is not admissible under {:?}", ord.positions())
                });
            }
        } else {
            // A single ordering under which the family fails.
            let outside = (0..m).find(|s| !fam.contains(s) && h.set(*s).is_subset(&h.union_of(fam)));
            let witness = match (outside, absorbed_member(h, fam)) {
                (Some(s), _) => Some(ordering(&[&[s], fam], false)),
                (None, Some(k)) if fam.len() >= 3 => {
                    let others: Vec<usize> = fam.iter().copied().filter(|&l| l != k).collect();
                    Some(ordering(&[&[k], &others], false))
                }
                _ => None,
            };
            if let Some(ord) = witness {
                ssi.case(!admissible(&ord, fam), || {
                    format!("{fam:?} is not self semi-induced yet admissible under {:?}", ord.positions())
                });
            }
        }

        if let Some(order) = &f.self_order {
            for rev in [false, true] {
                let ord = ordering(&[order], rev);
                let chain = SymbolChain::from_edges(h, &ord, order).expect("edges in range");
                ordered.case(is_maximal_l_admissible(h, &ord, &chain, rule), || {
                    format!("self ordered {order:?} is not maximal under {:?}", ord.positions())
                });
            }
        }

        if f.irredundant {
            let mut rev = fam.to_vec();
            rev.reverse();
            for first in [fam, rev.as_slice()] {
                let ord = ordering(&[first], false);
                irredundant.case(admissible(&ord, fam), || {
                    format!("irredundant {fam:?} is not admissible under {:?}", ord.positions())
                });
            }
        } else if let Some(k) = absorbed_member(h, fam) {
            // Redundancy shows only when an absorbed member comes first.
            let others: Vec<usize> = fam.iter().copied().filter(|&l| l != k).collect();
            let ord = ordering(&[&[k], &others], false);
            irredundant.case(!admissible(&ord, fam), || {
                format!("redundant {fam:?} is admissible under {:?}", ord.positions())
            });
        }

        if let Some(core) = &f.class.self_semi_disjoint_core {
            let outer: Vec<usize> = fam.iter().copied().filter(|s| !core.contains(s)).collect();
            let rest: Vec<usize> = (0..m).filter(|s| !fam.contains(s)).collect();
            for blocks in [[&outer[..], &rest[..], &core[..]], [&outer[..], &core[..], &rest[..]]] {
                let ord = EdgeOrdering::new(h, blocks.concat()).expect("a permutation");
                semi_disjoint.case(admissible(&ord, fam), || {
                    format!("self semi-disjoint {fam:?} (core {core:?}) is not admissible under {:?}", ord.positions())
                });
            }
        }
    }
    rec.tally(names[0], ssi);
    rec.tally(names[1], ordered);
    rec.tally(names[2], irredundant);
    rec.tally(names[3], semi_disjoint);
}

fn absorbed_member(h: &Hypergraph, fam: &[usize]) -> Option<usize> {
    fam.iter().copied().find(|&k| {
        let others: Vec<usize> = fam.iter().copied().filter(|&l| l != k).collect();
        h.set(k).is_subset(&h.union_of(&others))
    })
}

fn triangulated_checks(h: &Hypergraph, cfg: &CheckConfig, table: Option<&BettiTable>, rec: &mut Recorder) {
    let names = [
        "lyubeznik_length_bound",
        "nonvanishing_characterization",
        "chordal_graph_invariants",
        "persistence_under_deletion",
        "self_disjoint_extension",
        "splitting_recursion",
        "reduced_recursion",
        "split_class_preservation",
    ];
    match table {
        Some(table) if h.m() <= FAMILY_ENUMERATION_CAP => {
            let mut t = Tally::default();
            let bound = max_admissible_size(h, &EdgeOrdering::identity(h.m()), cfg.rule);
            t.case(table.pd() <= bound, || format!("pd = {} > longest admissible chain {bound}", table.pd()));
            rec.tally(names[0], t);
        }
        _ => rec.skip(names[0], "no table or too many edges"),
    }

    let special = h.uniformity_profile().is_special_class
        && h.m() >= 1
        && h.n() <= TRIANGULATED_VERTEX_CAP
        && h.m() <= INVARIANT_EDGE_BUDGET
        && h.is_triangulated().unwrap_or(false);
    let Some(table) = table.filter(|_| special) else {
        for name in &names[1..] {
            rec.skip(name, "not triangulated in the special class, or beyond caps");
        }
        return;
    };

    let mut t = Tally::default();
    let result = check_nonvanishing_characterization(h, cfg.field);
    t.case(result.is_ok(), || result.as_ref().err().map(ToString::to_string).unwrap_or_default());
    rec.tally(names[1], t);

    if h.is_graph() {
        let mut t = Tally::default();
        match compute_invariants(h, INVARIANT_EDGE_BUDGET) {
            Ok(inv) => {
                let g = inv.graph.clone().expect("graphs have bouquet invariants");
                t.case(table.pd() == g.d_g, || format!("pd = {} but d_G = {}", table.pd(), g.d_g));
                t.case(table.reg() == g.d_g_prime, || format!("reg = {} but d_G' = {}", table.reg(), g.d_g_prime));
                t.case(g.d_g_prime == inv.a, || format!("d_G' = {} but a = {}", g.d_g_prime, inv.a));
            }
            Err(e) => t.case(false, || e.to_string()),
        }
        rec.tally(names[2], t);
    } else {
        rec.skip(names[2], "not a graph");
    }

    let mut persistence = Tally::default();
    let mut extension = Tally::default();
    let mut recursion = Tally::default();
    let mut reduced = Tally::default();
    let (mut splits, mut broken) = (0, Vec::new());
    let covered = h.union_of(&(0..h.m()).collect::<Vec<_>>());
    for x in covered.iter().filter(|&x| h.is_simplicial_vertex(VertexId(x)).unwrap_or(false)) {
        for s in (0..h.m()).filter(|&s| h.set(s).contains(x)) {
            let label = || format!("x = {}, S = {:?}", h.label(VertexId(x)), h.edge_lists()[s]);
            let r = check_persistence(h, VertexId(x), s);
            persistence.case(r.is_ok(), || format!("{}: {}", label(), r.as_ref().unwrap_err()));
            let dec = match split(h, VertexId(x), s) {
                Ok(dec) => dec,
                Err(e) => {
                    recursion.case(false, || format!("{}: {e}", label()));
                    continue;
                }
            };
            let r = check_extension(h, &dec);
            extension.case(r.is_ok(), || format!("{}: {}", label(), r.as_ref().unwrap_err()));
            let parts = [&dec.h1, &dec.h2].map(|g| betti_table_capped(g, cfg.field, cfg.vertex_cap.max(h.n())));
            if let [Ok(t1), Ok(t2)] = &parts {
                let d = dec.d;
                let entries = |t: &BettiTable| t.entries().collect::<BTreeMap<_, _>>();
                let combined = combine(dec.t(), d, &entries(t1), &entries(t2));
                recursion.case(combined == entries(table), || format!("{}: recursion gives {combined:?}", label()));
                let bad = reduced_recursion_mismatches(&dec, table, t1, t2);
                reduced.case(bad.is_empty(), || format!("{}: top-degree mismatches {bad:?}", label()));
            }
            splits += 1;
            let keeps = |g: &Hypergraph| g.m() == 0 || g.is_special_triangulated().unwrap_or(false);
            if !keeps(&dec.h1) || !keeps(&dec.h2) {
                broken.push(label());
            }
        }
    }
    rec.tally(names[3], persistence);
    rec.tally(names[4], extension);
    rec.tally(names[5], recursion);
    rec.tally(names[6], reduced);
    let detail = (!broken.is_empty()).then(|| {
        format!(
            "{} of {splits} splits leave H1 or H2 outside the class, first at {}",
            broken.len(),
            broken[0]
        )
    });
    rec.info(names[7], splits, detail);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::tests::{c3, c4, example_six, p3, p4};
    use crate::named;

    fn assert_clean(h: &Hypergraph) -> InstanceReport {
        let r = check_instance(h, &CheckConfig::default());
        let failures: Vec<_> = r.failures().collect();
        assert!(failures.is_empty(), "{failures:#?}");
        r
    }

    #[test]
    fn small_examples_pass() {
        for h in [p3(), c3(), p4(), c4(), example_six(), named::path(6), named::fan(4)] {
            assert_clean(&h);
        }
    }

    #[test]
    fn example_six_semi_disjoint_certificate() {
        let r = assert_clean(&example_six());
        assert!(r
            .certificates
            .iter()
            .any(|c| c.kind == CertificateKind::SelfSemiDisjoint && c.claimed == (3, 6) && c.betti == 1));
    }

    #[test]
    fn chordal_graph_runs_triangulated_checks() {
        let r = assert_clean(&named::fan(4));
        for name in ["chordal_graph_invariants", "nonvanishing_characterization", "splitting_recursion"] {
            assert_eq!(r.outcome(name).unwrap().status, CheckStatus::Pass, "{name}");
        }
        let r = assert_clean(&c4());
        assert_eq!(r.outcome("chordal_graph_invariants").unwrap().status, CheckStatus::NotApplicable);
    }

    #[test]
    fn class_preservation_is_informational() {
        let r = assert_clean(&named::complete_uniform(3, 4));
        let o = r.outcome("split_class_preservation").unwrap();
        assert_eq!(o.status, CheckStatus::Info);
        assert!(o.detail.is_some());
    }

    #[test]
    fn edgeless_instance() {
        let h = Hypergraph::edgeless(vec!["a".into(), "b".into()]).unwrap();
        let r = assert_clean(&h);
        assert_eq!(r.table.unwrap().pd(), 0);
    }

    #[test]
    fn report_serializes() {
        let r = check_instance(&p3(), &CheckConfig::default());
        let json = serde_json::to_string(&r).unwrap();
        let back: InstanceReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
