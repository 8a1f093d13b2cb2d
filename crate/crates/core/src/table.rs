//! Graded Betti tables: sparse `(i, j) -> β_{i,j}` with homological index
//! `i` and row `j` (internal degree `i + j`).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use serde_json::json;

use crate::error::{Error, Result};
use crate::hilbert::upoly;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BettiTable {
    entries: BTreeMap<(usize, usize), u128>,
    n_vars: usize,
    /// Cells that were not computed (oracle budget); empty for complete tables.
    gaps: BTreeSet<(usize, usize)>,
}

fn json_u128(v: u128) -> serde_json::Value {
    match u64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

impl BettiTable {
    pub fn new(n_vars: usize) -> Self {
        BettiTable {
            entries: BTreeMap::new(),
            n_vars,
            gaps: BTreeSet::new(),
        }
    }

    /// Table from `(i, j, b)` triples; zero entries are dropped.
    pub fn from_entries(n_vars: usize, entries: impl IntoIterator<Item = (usize, usize, u128)>) -> Self {
        let mut t = BettiTable::new(n_vars);
        for (i, j, b) in entries {
            t.add(i, j, b);
        }
        t
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn get(&self, i: usize, j: usize) -> u128 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: usize, j: usize, b: u128) {
        if b == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), b);
        }
    }

    pub fn add(&mut self, i: usize, j: usize, b: u128) {
        let v = self.get(i, j) + b;
        self.set(i, j, v);
    }

    /// Nonzero entries as `((i, j), b)` in `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u128)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn gaps(&self) -> &BTreeSet<(usize, usize)> {
        &self.gaps
    }

    pub fn is_complete(&self) -> bool {
        self.gaps.is_empty()
    }

    pub(crate) fn mark_gap(&mut self, i: usize, j: usize) {
        self.entries.remove(&(i, j));
        self.gaps.insert((i, j));
    }

    /// Largest row index with a nonzero entry.
    pub fn regularity(&self) -> usize {
        self.entries.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    /// Largest column index with a nonzero entry.
    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    /// `Σ (-1)^i β_{i,j} t^{i+j}`, which equals the Hilbert numerator over
    /// `(1-t)^{n_vars}` for a complete table.
    pub fn euler_polynomial(&self) -> Vec<BigInt> {
        let top = self.entries.keys().map(|&(i, j)| i + j).max().unwrap_or(0);
        let mut out = vec![BigInt::default(); top + 1];
        for (&(i, j), &b) in &self.entries {
            let b = BigInt::from(b);
            if i % 2 == 0 {
                out[i + j] += b;
            } else {
                out[i + j] -= b;
            }
        }
        upoly::trim(out)
    }

    /// True when every entry of `self` is at least the matching entry of `other`.
    pub fn dominates(&self, other: &BettiTable) -> bool {
        other.entries().all(|((i, j), b)| self.get(i, j) >= b)
    }

    /// Entrywise maximum.
    pub fn max_with(&self, other: &BettiTable) -> BettiTable {
        let mut out = self.clone();
        for ((i, j), b) in other.entries() {
            if b > out.get(i, j) {
                out.set(i, j, b);
            }
        }
        out.n_vars = self.n_vars.max(other.n_vars);
        out
    }

    /// Cells where the two tables differ, as `(i, j, self, other)`.
    pub fn diff(&self, other: &BettiTable) -> Vec<(usize, usize, u128, u128)> {
        let keys: BTreeSet<_> = self.entries.keys().chain(other.entries.keys()).copied().collect();
        keys.into_iter()
            .filter_map(|(i, j)| {
                let (a, b) = (self.get(i, j), other.get(i, j));
                (a != b).then_some((i, j, a, b))
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<_> = self
            .entries()
            .map(|((i, j), b)| json!({ "i": i, "j": j, "b": json_u128(b) }))
            .collect();
        let mut v = json!({
            "entries": entries,
            "reg": self.regularity(),
            "pd": self.projective_dimension(),
        });
        if !self.gaps.is_empty() {
            let gaps: Vec<_> = self.gaps.iter().map(|&(i, j)| json!({ "i": i, "j": j })).collect();
            v["gaps"] = json!(gaps);
        }
        v
    }

    pub fn from_json(value: &serde_json::Value, n_vars: usize) -> Result<Self> {
        let entries = value["entries"]
            .as_array()
            .ok_or_else(|| Error::invalid("betti table JSON needs an \"entries\" array"))?;
        let mut t = BettiTable::new(n_vars);
        for e in entries {
            let field = |k: &str| -> Result<u128> {
                match &e[k] {
                    serde_json::Value::Number(x) => x.as_u64().map(u128::from),
                    serde_json::Value::String(s) => s.parse().ok(),
                    _ => None,
                }
                .ok_or_else(|| Error::invalid(format!("bad or missing \"{k}\" in betti entry")))
            };
            t.add(field("i")? as usize, field("j")? as usize, field("b")?);
        }
        Ok(t)
    }

    /// Diagram with rows `j`, columns `i` and a `total:` row; zeros print
    /// as `.` and uncomputed cells as `?`.
    pub fn pretty(&self) -> String {
        let max_i = self
            .entries
            .keys()
            .chain(self.gaps.iter())
            .map(|&(i, _)| i)
            .max()
            .unwrap_or(0);
        let max_j = self
            .entries
            .keys()
            .chain(self.gaps.iter())
            .map(|&(_, j)| j)
            .max()
            .unwrap_or(0);
        let cell = |i: usize, j: usize| -> String {
            if self.gaps.contains(&(i, j)) {
                "?".into()
            } else {
                match self.get(i, j) {
                    0 => ".".into(),
                    b => b.to_string(),
                }
            }
        };
        let totals: Vec<String> = (0..=max_i)
            .map(|i| {
                if self.gaps.iter().any(|&(gi, _)| gi == i) {
                    "?".into()
                } else {
                    (0..=max_j).map(|j| self.get(i, j)).sum::<u128>().to_string()
                }
            })
            .collect();
        let mut width = vec![1usize; max_i + 1];
        for i in 0..=max_i {
            width[i] = width[i].max(totals[i].len()).max(i.to_string().len());
            for j in 0..=max_j {
                width[i] = width[i].max(cell(i, j).len());
            }
        }
        let label_w = "total:".len().max(format!("{max_j}:").len());
        let mut s = String::new();
        let row = |s: &mut String, label: &str, cells: Vec<String>| {
            let _ = write!(s, "{label:>label_w$}");
            for (i, c) in cells.iter().enumerate() {
                let _ = write!(s, " {c:>w$}", w = width[i]);
            }
            s.push('\n');
        };
        row(&mut s, "", (0..=max_i).map(|i| i.to_string()).collect());
        row(&mut s, "total:", totals.clone());
        for j in 0..=max_j {
            row(&mut s, &format!("{j}:"), (0..=max_i).map(|i| cell(i, j)).collect());
        }
        s
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> BettiTable {
        BettiTable::from_entries(6, [(0, 0, 1), (1, 1, 3), (2, 1, 2)])
    }

    #[test]
    fn invariants() {
        let t = triangle();
        assert_eq!(t.regularity(), 1);
        assert_eq!(t.projective_dimension(), 2);
        assert_eq!(t.euler_polynomial(), upoly::from_i64(&[1, 0, -3, 2]));
        let mut u = t.clone();
        u.set(2, 1, 0);
        assert_eq!(u.len(), 2);
        assert!(t.dominates(&u));
        assert!(!u.dominates(&t));
        assert_eq!(t.diff(&u), vec![(2, 1, 2, 0)]);
    }

    #[test]
    fn pretty_diagram() {
        let expected = "       0 1 2\ntotal: 1 3 2\n    0: 1 . .\n    1: . 3 2\n";
        assert_eq!(triangle().pretty(), expected);
    }

    #[test]
    fn json_round_trip() {
        let t = triangle();
        let v = t.to_json();
        assert_eq!(v["reg"], 1);
        assert_eq!(v["pd"], 2);
        assert_eq!(BettiTable::from_json(&v, 6).unwrap(), t);
        assert_eq!(
            v.to_string(),
            r#"{"entries":[{"b":1,"i":0,"j":0},{"b":3,"i":1,"j":1},{"b":2,"i":2,"j":1}],"pd":2,"reg":1}"#
        );
    }

    #[test]
    fn gaps_render() {
        let mut t = triangle();
        t.mark_gap(2, 1);
        assert!(!t.is_complete());
        assert!(t.pretty().contains('?'));
        assert!(t.to_json()["gaps"].is_array());
    }
}
