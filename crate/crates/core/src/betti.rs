//! Graded Betti tables and the invariants read off them.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::linalg::FieldChoice;

/// `β_{i,j}(R/I)` for a hypergraph on `n` vertices. Only nonzero entries are
/// stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "TableRepr", try_from = "TableRepr")]
pub struct BettiTable {
    n: usize,
    field: FieldChoice,
    entries: BTreeMap<(usize, usize), u64>,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    n: usize,
    field: FieldChoice,
    /// `[i, j, value]` triples in increasing `(i, j)` order.
    entries: Vec<[u64; 3]>,
    pd: usize,
    reg: usize,
}

impl From<BettiTable> for TableRepr {
    fn from(t: BettiTable) -> Self {
        Self {
            n: t.n,
            field: t.field,
            pd: t.pd(),
            reg: t.reg(),
            entries: t.entries.iter().map(|(&(i, j), &v)| [i as u64, j as u64, v]).collect(),
        }
    }
}

impl TryFrom<TableRepr> for BettiTable {
    type Error = String;

    fn try_from(r: TableRepr) -> Result<Self, String> {
        let mut t = BettiTable::empty(r.n, r.field);
        for [i, j, v] in r.entries {
            t.add(i as usize, j as usize, v);
        }
        if t.pd() != r.pd || t.reg() != r.reg {
            return Err("pd/reg do not match the entries".into());
        }
        Ok(t)
    }
}

impl BettiTable {
    /// A table with no entries at all, not even `β_{0,0}`.
    pub fn empty(n: usize, field: FieldChoice) -> Self {
        Self {
            n,
            field,
            entries: BTreeMap::new(),
        }
    }

    /// The table of the polynomial ring itself: only `β_{0,0} = 1`.
    pub fn trivial(n: usize, field: FieldChoice) -> Self {
        let mut t = Self::empty(n, field);
        t.add(0, 0, 1);
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldChoice {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn add(&mut self, i: usize, j: usize, v: u64) {
        if v > 0 {
            *self.entries.entry((i, j)).or_insert(0) += v;
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        if v == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    /// Nonzero entries in increasing `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_nonzero(&self, i: usize, j: usize) -> bool {
        self.get(i, j) > 0
    }

    pub fn pd(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn reg(&self) -> usize {
        self.entries.keys().map(|&(i, j)| j - i).max().unwrap_or(0)
    }

    /// Entries on which the two tables differ, as `((i, j), self, other)`.
    pub fn diff(&self, other: &Self) -> Vec<((usize, usize), u64, u64)> {
        let keys: std::collections::BTreeSet<_> = self.entries.keys().chain(other.entries.keys()).collect();
        keys.into_iter()
            .filter_map(|&(i, j)| {
                let (a, b) = (self.get(i, j), other.get(i, j));
                (a != b).then_some(((i, j), a, b))
            })
            .collect()
    }

    /// Same entries, regardless of field or vertex count.
    pub fn same_entries(&self, other: &Self) -> bool {
        self.entries == other.entries
    }

    /// Betti diagram with rows `j - i` and columns `i`, followed by a
    /// `pd`/`reg` footer.
    pub fn render(&self) -> String {
        let (pd, reg) = (self.pd(), self.reg());
        let cell = |v: u64| if v == 0 { ".".to_string() } else { v.to_string() };
        let mut rows: Vec<(String, Vec<String>)> = Vec::new();
        let totals: Vec<u64> = (0..=pd)
            .map(|i| self.entries.iter().filter(|(k, _)| k.0 == i).map(|(_, v)| v).sum())
            .collect();
        rows.push(("total:".into(), totals.iter().map(|&v| v.to_string()).collect()));
        for r in 0..=reg {
            rows.push((format!("{r}:"), (0..=pd).map(|i| cell(self.get(i, i + r))).collect()));
        }
        let label_w = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
        let col_w: Vec<usize> = (0..=pd)
            .map(|i| rows.iter().map(|(_, c)| c[i].len()).max().unwrap_or(1).max(i.to_string().len()))
            .collect();
        let mut out = String::new();
        let _ = write!(out, "{:label_w$}", "");
        for (i, w) in col_w.iter().enumerate() {
            let _ = write!(out, " {i:>w$}");
        }
        out.push('\n');
        for (label, cells) in &rows {
            let _ = write!(out, "{label:>label_w$}");
            for (c, w) in cells.iter().zip(&col_w) {
                let _ = write!(out, " {c:>w$}");
            }
            out.push('\n');
        }
        let _ = writeln!(out, "pd = {pd}, reg = {reg} (field {})", self.field);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3_table() -> BettiTable {
        let mut t = BettiTable::trivial(3, FieldChoice::Rational);
        t.add(1, 2, 2);
        t.add(2, 3, 1);
        t
    }

    #[test]
    fn pd_and_reg() {
        let t = p3_table();
        assert_eq!((t.pd(), t.reg()), (2, 1));
        let e = BettiTable::trivial(4, FieldChoice::Rational);
        assert_eq!((e.pd(), e.reg()), (0, 0));
    }

    #[test]
    fn render_layout() {
        let expected = "       0 1 2\ntotal: 1 2 1\n    0: 1 . .\n    1: . 2 1\npd = 2, reg = 1 (field q)\n";
        assert_eq!(p3_table().render(), expected);
    }

    #[test]
    fn serde_round_trip() {
        let t = p3_table();
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(
            json,
            r#"{"n":3,"field":"q","entries":[[0,0,1],[1,2,2],[2,3,1]],"pd":2,"reg":1}"#
        );
        assert_eq!(serde_json::from_str::<BettiTable>(&json).unwrap(), t);
        let bad = r#"{"n":3,"field":"q","entries":[[0,0,1]],"pd":2,"reg":1}"#;
        assert!(serde_json::from_str::<BettiTable>(bad).is_err());
    }

    #[test]
    fn diffs() {
        let mut other = p3_table();
        other.set(2, 3, 0);
        other.add(1, 3, 4);
        assert_eq!(p3_table().diff(&other), vec![((1, 3), 0, 4), ((2, 3), 1, 0)]);
        assert!(p3_table().diff(&p3_table()).is_empty());
    }
}
