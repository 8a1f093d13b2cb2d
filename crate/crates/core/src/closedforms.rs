//! Closed-form Betti tables: lines, complete graphs, cycles, the two
//! auxiliary modules attached to a line closed up by `x_1 y_n - x_n y_1`,
//! and the three-legged families T3 / G3, plus the pendant-edge recursion
//! and duality for Cohen–Macaulay tables.
//!
//! All tables are for quotients of the ring in `2n` variables. Binomials
//! with an argument out of range are zero, so the formulas are total.

use crate::error::{Error, Result};
use crate::graphs::FamilySpec;
use crate::table::BettiTable;

/// `C(a, b)`, zero unless `0 <= b <= a`.
pub fn binom(a: i64, b: i64) -> u128 {
    if a < 0 || b < 0 || b > a {
        return 0;
    }
    let b = b.min(a - b);
    (0..b).fold(1u128, |acc, k| acc * (a - k) as u128 / (k + 1) as u128)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasicFamily {
    Line,
    Complete,
}

/// The two modules from the exact sequence
/// `0 -> (I_L : g)/I_L -> S/I_L -> S/(I_L : g) -> 0`, where `I_L` is the
/// ideal of the line on `n` vertices and `g = x_1 y_n - x_n y_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AuxiliaryKind {
    /// `(I_L : g) / I_L`
    ColonQuotient,
    /// `S / (I_L : g)`
    SaturationQuotient,
}

fn check_n(name: &str, n: usize, min: usize) -> Result<i64> {
    if n < min {
        return Err(Error::invalid(format!("{name} requires n >= {min}, got n = {n}")));
    }
    Ok(n as i64)
}

/// Adds an entry given by homological index and total degree.
fn put(t: &mut BettiTable, i: i64, degree: i64, b: u128) {
    if b == 0 {
        return;
    }
    assert!(i >= 0 && degree >= i, "entry ({i}, degree {degree}) below the diagonal");
    t.add(i as usize, (degree - i) as usize, b);
}

pub fn betti_basic(kind: BasicFamily, n: usize) -> Result<BettiTable> {
    let n = check_n("betti_basic", n, 1)?;
    let mut t = BettiTable::new(2 * n as usize);
    match kind {
        BasicFamily::Complete => {
            put(&mut t, 0, 0, 1);
            for i in 1..n {
                put(&mut t, i, i + 1, i as u128 * binom(n, i + 1));
            }
        }
        BasicFamily::Line => {
            for i in 0..n {
                put(&mut t, i, 2 * i, binom(n - 1, i));
            }
        }
    }
    Ok(t)
}

/// `c_i = (n - 1 - i) C(n, i)` for `0 <= i <= n - 1`.
pub fn c_sequence(n: usize, i: usize) -> Result<u128> {
    if n == 0 || i > n - 1 {
        return Err(Error::invalid(format!("c_i needs 0 <= i <= n - 1, got n = {n}, i = {i}")));
    }
    Ok((n - 1 - i) as u128 * binom(n as i64, i as i64))
}

/// `c_i` with the convention that indices outside `0..=n-1` give zero.
fn c(n: i64, i: i64) -> u128 {
    if i < 0 || i > n - 1 {
        0
    } else {
        (n - 1 - i) as u128 * binom(n, i)
    }
}

pub fn betti_auxiliary(kind: AuxiliaryKind, n: usize) -> Result<BettiTable> {
    let n = check_n("betti_auxiliary", n, 3)?;
    let mut t = BettiTable::new(2 * n as usize);
    match kind {
        AuxiliaryKind::ColonQuotient => {
            for i in 0..=n - 2 {
                put(&mut t, i, n - 2 + i, c(n, i));
            }
            put(&mut t, n - 1, 2 * n - 2, 1);
        }
        AuxiliaryKind::SaturationQuotient => {
            put(&mut t, 0, 0, 1);
            for i in 1..=n - 3 {
                put(&mut t, i, 2 * i, binom(n - 1, i));
                put(&mut t, i, n - 3 + i, c(n, i - 1));
            }
            put(&mut t, n - 2, 2 * n - 5, c(n, n - 3));
            put(&mut t, n - 1, 2 * n - 4, binom(n - 1, 2));
        }
    }
    Ok(t)
}

/// Cycle on `n >= 3` vertices: `C(n, i)` in degree `2i` for `i <= n - 2`,
/// `c_{i-2}` in degree `n - 2 + i` for `2 <= i <= n - 1` and
/// `C(n-1, 2) - 1` in degree `2n - 2` at `i = n`; coinciding cells add.
pub fn betti_cycle(n: usize) -> Result<BettiTable> {
    let n = check_n("cycle", n, 3)?;
    let mut t = BettiTable::new(2 * n as usize);
    for i in 0..=n - 2 {
        put(&mut t, i, 2 * i, binom(n, i));
    }
    for i in 2..=n - 1 {
        put(&mut t, i, n - 2 + i, c(n, i - 2));
    }
    put(&mut t, n, 2 * n - 2, binom(n - 1, 2) - 1);
    Ok(t)
}

pub fn betti_t3(n: usize) -> Result<BettiTable> {
    let n = check_n("t3", n, 4)?;
    let m = n - 4;
    let mut t = BettiTable::new(2 * n as usize);
    for i in 0..=n - 2 {
        put(&mut t, i, 2 * i, binom(m, i) + 3 * binom(m, i - 1) + 4 * binom(m, i - 2));
    }
    for i in 3..=n - 1 {
        put(&mut t, i, 2 * i - 1, 2 * binom(m, i - 3));
    }
    Ok(t)
}

pub fn betti_g3(n: usize) -> Result<BettiTable> {
    let n = check_n("g3", n, 3)?;
    let m = n - 3;
    let mut t = BettiTable::new(2 * n as usize);
    for i in 0..=n - 2 {
        put(&mut t, i, 2 * i, 3 * binom(m, i - 1) + binom(m, i));
    }
    for i in 2..=n - 1 {
        put(&mut t, i, 2 * i - 1, 2 * binom(m, i - 2));
    }
    Ok(t)
}

/// Closed-form table of any family member.
pub fn closed_betti(spec: &FamilySpec) -> Result<BettiTable> {
    spec.validate()?;
    match *spec {
        FamilySpec::Line { n } => betti_basic(BasicFamily::Line, n),
        FamilySpec::Complete { n } => betti_basic(BasicFamily::Complete, n),
        FamilySpec::Cycle { n } => betti_cycle(n),
        FamilySpec::T3 { .. } => betti_t3(spec.n()),
        FamilySpec::G3 { .. } => betti_g3(spec.n()),
    }
}

/// Table after attaching a pendant edge at a free vertex of a graph whose
/// table lives on the diagonal and the row below it: every entry becomes
/// the sum of itself and its predecessor on the same diagonal.
pub fn recursion_step(t: &BettiTable) -> Result<BettiTable> {
    if let Some(((i, j), _)) = t.entries().find(|&((i, j), _)| !(j == i || j + 1 == i)) {
        return Err(Error::Shape(format!(
            "entry ({i}, {j}) is off the diagonal and the subdiagonal"
        )));
    }
    let mut out = BettiTable::new(t.n_vars() + 2);
    for ((i, j), b) in t.entries() {
        out.add(i, j, b);
        out.add(i + 1, j + 1, b);
    }
    Ok(out)
}

/// Betti table of the canonical module of a Cohen–Macaulay module of
/// codimension `codim`: index `i` goes to `codim - i` and total degree `d`
/// to `n_vars - d`.
pub fn dual_table(t: &BettiTable, codim: usize) -> Result<BettiTable> {
    let nv = t.n_vars() as i64;
    let mut out = BettiTable::new(t.n_vars());
    for ((i, j), b) in t.entries() {
        let ni = codim as i64 - i as i64;
        let nd = nv - (i + j) as i64;
        if ni < 0 || nd < ni {
            return Err(Error::Shape(format!(
                "entry ({i}, {j}) has no dual with codim {codim} in {nv} variables"
            )));
        }
        out.add(ni as usize, (nd - ni) as usize, b);
    }
    Ok(out)
}

/// Table of `M(-s)`: every row moves down by `s` (up for negative `s`).
pub fn shift_rows(t: &BettiTable, s: i64) -> Result<BettiTable> {
    let mut out = BettiTable::new(t.n_vars());
    for ((i, j), b) in t.entries() {
        let nj = j as i64 + s;
        if nj < 0 {
            return Err(Error::Shape(format!("shift {s} moves ({i}, {j}) to a negative row")));
        }
        out.add(i, nj as usize, b);
    }
    Ok(out)
}
