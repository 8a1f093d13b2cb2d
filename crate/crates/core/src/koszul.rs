//! Graded Betti numbers of `S/J` from the homology of the Koszul complex
//! `Λ(V) ⊗ S/J` on all `2n` variables, one strand at a time, with ranks
//! taken over GF(p).
//!
//! Binomial edge ideals are homogeneous for the grading `deg x_v = deg y_v
//! = e_v` in `N^n` and also for the number of `x` variables, so every
//! strand splits into independent blocks indexed by a vertex degree `α`
//! and an `x`-count `c`. Swapping `x` and `y` maps `J` to itself and block
//! `(α, c)` onto `(α, |α| - c)`, so only half the blocks need a rank.

use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::hilbert::{for_each_standard_monomial, hilbert_from_gb, HilbertSeries};
use crate::polyring::{edge_ideal_basis, normal_form, GroebnerBasis, Monomial, PrimeField};
use crate::sparse::RankWorkspace;
use crate::table::BettiTable;

/// Largest graph the oracle accepts (subsets of the `2n` variables are
/// stored in 32-bit masks).
pub const ORACLE_MAX_VERTICES: usize = 16;

/// Default cap on the estimated number of nonzeros of a single strand.
pub const DEFAULT_BUDGET: u128 = 200_000_000;

/// Standard monomials of one degree, sorted descending in the ring's order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasis {
    pub degree: usize,
    pub monomials: Vec<Monomial>,
}

impl GradedBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

pub fn standard_monomials(basis: &GroebnerBasis, d: usize) -> GradedBasis {
    let ring = *basis.ring();
    let init = basis.initial_ideal();
    let mut monomials = Vec::new();
    for_each_standard_monomial(&init, ring.nvars(), d, |e, deg| {
        if deg == d {
            monomials.push(Monomial::from_exponents(e.to_vec()));
        }
    });
    monomials.sort_by(|a, b| ring.cmp(b, a));
    GradedBasis { degree: d, monomials }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    /// Largest homological index; defaults to `2n`.
    pub max_i: Option<usize>,
    /// Largest row; defaults to `n - 1`.
    pub max_j: Option<usize>,
    pub budget: u128,
    /// Use the `x <-> y` symmetry to skip mirrored blocks.
    pub symmetry: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            max_i: None,
            max_j: None,
            budget: DEFAULT_BUDGET,
            symmetry: true,
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Nonzero estimate for the differential out of `Λ^k ⊗ (S/J)_e`.
pub fn strand_estimate(nvars: usize, k: usize, hf_e: u128) -> u128 {
    binomial(nvars, k).saturating_mul(hf_e).saturating_mul(k.max(1) as u128)
}

fn pack(v: &[u8]) -> u128 {
    v.iter().enumerate().fold(0u128, |acc, (i, &e)| acc | (e as u128) << (8 * i))
}

/// Standard monomials up to a degree bound with multiplication-by-variable
/// tables, shared read-only by every block.
struct Engine {
    field: PrimeField,
    n: usize,
    nvars: usize,
    /// x-count of each monomial id.
    xcount: Vec<u8>,
    /// Distinct vertex degrees of monomials of degree `<= cell_degree`:
    /// packed key, total degree, ids.
    classes: Vec<(u128, usize, Vec<u32>)>,
    /// `nf[m * nvars + v]` = normal form of `v * m` as `(id, coefficient)`.
    nf: Vec<Vec<(u32, u32)>>,
}

impl Engine {
    fn new(basis: &GroebnerBasis, cell_degree: usize) -> Engine {
        let ring = *basis.ring();
        let (n, nvars) = (ring.n(), ring.nvars());
        let init = basis.initial_ideal();
        let mut exps: Vec<Vec<u8>> = Vec::new();
        for_each_standard_monomial(&init, nvars, cell_degree + 1, |e, _| exps.push(e.to_vec()));
        // ids sorted by degree so cell monomials form a prefix
        exps.sort_by_key(|e| e.iter().map(|&x| x as usize).sum::<usize>());
        let degree = |e: &[u8]| e.iter().map(|&x| x as usize).sum::<usize>();
        let id_of: FxHashMap<&[u8], u32> = exps.iter().enumerate().map(|(i, e)| (e.as_slice(), i as u32)).collect();
        let xcount: Vec<u8> = exps.iter().map(|e| e[..n].iter().sum()).collect();
        let cells_end = exps.iter().position(|e| degree(e) > cell_degree).unwrap_or(exps.len());

        let mut class_index: FxHashMap<u128, usize> = FxHashMap::default();
        let mut classes: Vec<(u128, usize, Vec<u32>)> = Vec::new();
        let mut vdeg = vec![0u8; n];
        for (id, e) in exps[..cells_end].iter().enumerate() {
            for v in 0..n {
                vdeg[v] = e[v] + e[n + v];
            }
            let key = pack(&vdeg);
            let slot = *class_index.entry(key).or_insert_with(|| {
                classes.push((key, degree(e), Vec::new()));
                classes.len() - 1
            });
            classes[slot].2.push(id as u32);
        }

        let field = ring.field();
        let mut nf = Vec::with_capacity(cells_end * nvars);
        for e in &exps[..cells_end] {
            let m = Monomial::from_exponents(e.clone());
            for v in 0..nvars {
                let prod = m.mul_var(v);
                let entry = match id_of.get(prod.exponents()) {
                    Some(&id) => vec![(id, 1)],
                    None => normal_form(&ring, &ring.term(prod, 1), basis.generators())
                        .terms()
                        .iter()
                        .map(|(t, c)| (id_of[t.exponents()], *c))
                        .collect(),
                };
                nf.push(entry);
            }
        }
        Engine {
            field,
            n,
            nvars,
            xcount,
            classes,
            nf,
        }
    }

    /// All vertex degrees `α = β + γ` with `β` a class of a needed cell
    /// degree and `γ ∈ {0,1,2}^n` of a needed exterior degree, each with
    /// the classes that reach it.
    fn blocks(&self, needed: &BTreeSet<(usize, usize)>) -> Vec<(u128, usize, Vec<u32>)> {
        let mut by_alpha: FxHashMap<u128, Vec<u32>> = FxHashMap::default();
        let mut gamma = vec![0u8; self.n];
        for (ci, (key, e, _)) in self.classes.iter().enumerate() {
            let ks: Vec<usize> = needed.iter().filter(|&&(_, ce)| ce == *e).map(|&(k, _)| k).collect();
            if ks.is_empty() {
                continue;
            }
            let kmax = *ks.iter().max().unwrap();
            fn rec(
                v: usize,
                sum: usize,
                kmax: usize,
                ks: &[usize],
                gamma: &mut Vec<u8>,
                emit: &mut dyn FnMut(&[u8]),
            ) {
                if v == gamma.len() {
                    if ks.contains(&sum) {
                        emit(gamma);
                    }
                    return;
                }
                for g in 0..=2u8 {
                    if sum + g as usize > kmax {
                        break;
                    }
                    gamma[v] = g;
                    rec(v + 1, sum + g as usize, kmax, ks, gamma, emit);
                }
                gamma[v] = 0;
            }
            rec(0, 0, kmax, &ks, &mut gamma, &mut |g| {
                by_alpha.entry(key + pack(g)).or_default().push(ci as u32);
            });
        }
        let mut out: Vec<(u128, usize, Vec<u32>)> = by_alpha
            .into_iter()
            .map(|(a, cls)| {
                let d = (0..self.n).map(|v| ((a >> (8 * v)) & 0xff) as usize).sum();
                (a, d, cls)
            })
            .collect();
        out.sort_unstable_by_key(|b| b.0);
        out
    }

    /// Cell counts and differential ranks in one vertex degree, added into
    /// `acc` (indexed by `(k, e)` via `slot`).
    fn process_block(
        &self,
        alpha: u128,
        d: usize,
        class_ids: &[u32],
        needed: &BTreeSet<(usize, usize)>,
        ranked: &BTreeSet<(usize, usize)>,
        symmetry: bool,
        acc: &mut Acc,
        ws: &mut Workspace,
    ) {
        let n = self.n;
        let width = self.nvars + 1;
        let mut cells = std::mem::take(&mut ws.cells);
        if cells.len() < (d + 1) * width {
            cells.resize_with((d + 1) * width, Vec::new);
        }
        cells.iter_mut().for_each(Vec::clear);
        for &ci in class_ids {
            let (key, e, ref ids) = self.classes[ci as usize];
            let gamma = alpha - key;
            let k = d - e;
            if !needed.contains(&(k, e)) {
                continue;
            }
            let mut both = 0u32;
            let ones = &mut ws.ones;
            ones.clear();
            for v in 0..n {
                match (gamma >> (8 * v)) & 0xff {
                    0 => {}
                    1 => ones.push(v),
                    _ => both |= 1 << v | 1 << (n + v),
                }
            }
            for choice in 0u32..1 << ones.len() {
                let mut s = both;
                for (b, &v) in ones.iter().enumerate() {
                    s |= if choice >> b & 1 == 1 { 1 << v } else { 1 << (n + v) };
                }
                let sx = (s & ((1u32 << n) - 1)).count_ones() as usize;
                for &m in ids {
                    let c = sx + self.xcount[m as usize] as usize;
                    if symmetry && 2 * c > d {
                        continue;
                    }
                    cells[c * width + k].push((s, m));
                }
            }
        }
        for c in 0..=d {
            let weight: u128 = if symmetry && 2 * c < d { 2 } else { 1 };
            for k in 0..width {
                let block = &cells[c * width + k];
                if block.is_empty() || k > d {
                    continue;
                }
                let e = d - k;
                acc.add_dim(k, e, weight * block.len() as u128);
                if k >= 1 && ranked.contains(&(k, e)) {
                    acc.add_rank(k, e, weight * self.block_rank(block, ws) as u128);
                }
            }
        }
        ws.cells = cells;
    }

    /// Rank of the differential on the span of `cells` (all with `|S| = k`).
    fn block_rank(&self, cells: &[(u32, u32)], ws: &mut Workspace) -> usize {
        let field = self.field;
        let targets = &mut ws.targets;
        targets.clear();
        if ws.rows.len() < cells.len() {
            ws.rows.resize_with(cells.len(), Vec::new);
        }
        let rows = &mut ws.rows[..cells.len()];
        for (&(s, m), row) in cells.iter().zip(rows.iter_mut()) {
            row.clear();
            let mut bits = s;
            let mut t = 0;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let rest = s & !(1u32 << v);
                for &(id, coef) in &self.nf[m as usize * self.nvars + v] {
                    let next = targets.len() as u32;
                    let col = *targets.entry((rest as u64) << 32 | id as u64).or_insert(next);
                    let val = if t % 2 == 1 { field.neg(coef) } else { coef };
                    row.push((col, val));
                }
                t += 1;
            }
            row.sort_unstable_by_key(|x| x.0);
        }
        let ncols = targets.len();
        ws.rank.rank(field, ncols, rows)
    }
}

/// Buffers reused across blocks by one worker.
#[derive(Default)]
struct Workspace {
    cells: Vec<Vec<(u32, u32)>>,
    ones: Vec<usize>,
    targets: FxHashMap<u64, u32>,
    rows: Vec<Vec<(u32, u32)>>,
    rank: RankWorkspace,
}

/// Per-`(k, e)` sums of block dimensions and ranks.
#[derive(Clone)]
struct Acc {
    emax: usize,
    dims: Vec<u128>,
    ranks: Vec<u128>,
}

impl Acc {
    fn new(kmax: usize, emax: usize) -> Acc {
        let size = (kmax + 1) * (emax + 1);
        Acc {
            emax,
            dims: vec![0; size],
            ranks: vec![0; size],
        }
    }

    fn slot(&self, k: usize, e: usize) -> usize {
        k * (self.emax + 1) + e
    }

    fn add_dim(&mut self, k: usize, e: usize, v: u128) {
        let s = self.slot(k, e);
        self.dims[s] += v;
    }

    fn add_rank(&mut self, k: usize, e: usize, v: u128) {
        let s = self.slot(k, e);
        self.ranks[s] += v;
    }

    fn dim(&self, k: usize, e: usize) -> u128 {
        self.dims[self.slot(k, e)]
    }

    fn rank(&self, k: usize, e: usize) -> u128 {
        self.ranks[self.slot(k, e)]
    }

    fn merge(mut self, other: Acc) -> Acc {
        for (a, b) in self.dims.iter_mut().zip(other.dims) {
            *a += b;
        }
        for (a, b) in self.ranks.iter_mut().zip(other.ranks) {
            *a += b;
        }
        self
    }
}

/// Dimensions of `Λ^k ⊗ (S/J)_e` and ranks of `∂_k` on them, for every
/// `(k, e)` in `needed` (ranks only for those in `ranked`).
fn strand_sums(
    basis: &GroebnerBasis,
    needed: &BTreeSet<(usize, usize)>,
    ranked: &BTreeSet<(usize, usize)>,
    symmetry: bool,
) -> Acc {
    let nvars = basis.ring().nvars();
    let emax = needed.iter().map(|&(_, e)| e).max().unwrap_or(0);
    if needed.is_empty() {
        return Acc::new(nvars, emax);
    }
    let engine = Engine::new(basis, emax);
    let blocks = engine.blocks(needed);
    blocks
        .par_iter()
        .fold(
            || (Acc::new(nvars, emax), Workspace::default()),
            |(mut acc, mut ws), (alpha, d, cls)| {
                engine.process_block(*alpha, *d, cls, needed, ranked, symmetry, &mut acc, &mut ws);
                (acc, ws)
            },
        )
        .map(|(acc, _)| acc)
        .reduce(|| Acc::new(nvars, emax), Acc::merge)
}

/// Rank of `∂_i : Λ^i ⊗ (S/J)_{d-i} -> Λ^{i-1} ⊗ (S/J)_{d-i+1}`.
pub fn koszul_rank(basis: &GroebnerBasis, i: usize, d: usize) -> u128 {
    let nvars = basis.ring().nvars();
    if i == 0 || i > nvars || d < i {
        return 0;
    }
    let cell: BTreeSet<(usize, usize)> = [(i, d - i)].into();
    strand_sums(basis, &cell, &cell, false).rank(i, d - i)
}

fn check_vertices(n: usize) -> Result<()> {
    if n > ORACLE_MAX_VERTICES {
        return Err(Error::EnumerationCap {
            n,
            cap: ORACLE_MAX_VERTICES,
        });
    }
    Ok(())
}

/// Betti table of `S/J` from a Gröbner basis. Strands over budget are left
/// as gaps rather than failing.
pub fn betti_table_partial(basis: &GroebnerBasis, opts: &OracleOptions) -> Result<BettiTable> {
    let ring = basis.ring();
    let (n, nvars) = (ring.n(), ring.nvars());
    check_vertices(n)?;
    let max_i = opts.max_i.unwrap_or(nvars).min(nvars);
    let max_j = opts.max_j.unwrap_or(n.saturating_sub(1));
    let series: HilbertSeries = hilbert_from_gb(basis);
    let hf = |e: usize| series.hilbert_function(e).to_u128().unwrap_or(u128::MAX);
    let over = |k: usize, e: usize| strand_estimate(nvars, k, hf(e)) > opts.budget;

    let mut table = BettiTable::new(nvars);
    let mut window = BTreeSet::new();
    for i in 0..=max_i {
        for j in 0..=max_j {
            if over(i, j) || (j >= 1 && i < nvars && over(i + 1, j - 1)) {
                table.mark_gap(i, j);
            } else {
                window.insert((i, j));
            }
        }
    }
    let mut needed = window.clone();
    for &(i, j) in &window {
        if j >= 1 && i < nvars {
            needed.insert((i + 1, j - 1));
        }
    }
    let ranked: BTreeSet<_> = needed.iter().copied().filter(|&(k, _)| k >= 1).collect();
    let acc = strand_sums(basis, &needed, &ranked, opts.symmetry);
    for &(i, j) in &window {
        let dim = acc.dim(i, j);
        let out = if i >= 1 { acc.rank(i, j) } else { 0 };
        let inc = if j >= 1 && i < nvars { acc.rank(i + 1, j - 1) } else { 0 };
        let b = dim
            .checked_sub(out + inc)
            .expect("Koszul ranks exceed the chain dimension");
        table.set(i, j, b);
    }
    Ok(table)
}

/// First over-budget cell of a partial table as an error.
pub fn require_complete(table: BettiTable, basis: &GroebnerBasis, budget: u128) -> Result<BettiTable> {
    match table.gaps().iter().next() {
        None => Ok(table),
        Some(&(i, j)) => {
            let nvars = basis.ring().nvars();
            let series = hilbert_from_gb(basis);
            let hf = |e: usize| series.hilbert_function(e).to_u128().unwrap_or(u128::MAX);
            let est = strand_estimate(nvars, i, hf(j));
            let estimate = if est > budget || j == 0 {
                est
            } else {
                strand_estimate(nvars, i + 1, hf(j - 1))
            };
            Err(Error::OutOfBudget {
                i,
                j,
                d: i + j,
                estimate,
                budget,
            })
        }
    }
}

/// Betti table of `S/J_G` over GF(`prime`); fails if any strand in the
/// window is over budget.
pub fn betti_table(g: &Graph, prime: u32, opts: &OracleOptions) -> Result<BettiTable> {
    check_vertices(g.n())?;
    let basis = edge_ideal_basis(g, prime)?;
    let table = betti_table_partial(&basis, opts)?;
    require_complete(table, &basis, opts.budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::FamilySpec;
    use crate::hilbert::hilbert_from_gb;
    use crate::polyring::{DEFAULT_PRIME, MonomialOrder, PolyRing};

    fn basis(spec: FamilySpec) -> GroebnerBasis {
        edge_ideal_basis(&spec.build().unwrap(), DEFAULT_PRIME).unwrap()
    }

    fn table(spec: FamilySpec) -> BettiTable {
        betti_table(&spec.build().unwrap(), DEFAULT_PRIME, &OracleOptions::default()).unwrap()
    }

    #[test]
    fn standard_monomial_counts() {
        let tri = basis(FamilySpec::Cycle { n: 3 });
        assert_eq!(standard_monomials(&tri, 2).len(), 18);
        assert_eq!(standard_monomials(&tri, 0).monomials, vec![Monomial::one(6)]);
        let edge = basis(FamilySpec::Line { n: 2 });
        let b = standard_monomials(&edge, 2);
        assert_eq!(b.len(), 9);
        let ring = edge.ring();
        assert!(b.monomials.windows(2).all(|w| ring.cmp(&w[0], &w[1]).is_gt()));
    }

    #[test]
    fn ranks() {
        let edge = basis(FamilySpec::Line { n: 2 });
        assert_eq!(koszul_rank(&edge, 1, 1), 4);
        assert_eq!(koszul_rank(&edge, 0, 3), 0);
        // the free module: Koszul complex exact, top differential injective
        let ring = PolyRing::new(2, DEFAULT_PRIME, MonomialOrder::default()).unwrap();
        let free = crate::polyring::buchberger(&ring, &[]);
        assert_eq!(koszul_rank(&free, 4, 4), 1);
        let t = betti_table_partial(&free, &OracleOptions { max_j: Some(2), ..Default::default() }).unwrap();
        assert_eq!(t, BettiTable::from_entries(4, [(0, 0, 1)]));
    }

    #[test]
    fn rank_nullity_per_strand() {
        // dim ker ∂_i + rank ∂_i = #columns, with ker ⊇ im ∂_{i+1}
        let b = basis(FamilySpec::Cycle { n: 3 });
        for d in 0..6 {
            for i in 1..=6 {
                if d < i {
                    continue;
                }
                let cols = binomial(6, i) * standard_monomials(&b, d - i).len() as u128;
                let r = koszul_rank(&b, i, d);
                let r_next = koszul_rank(&b, i + 1, d);
                assert!(r + r_next <= cols, "i={i} d={d}");
            }
        }
    }

    #[test]
    fn small_tables() {
        assert_eq!(
            table(FamilySpec::Cycle { n: 3 }),
            BettiTable::from_entries(6, [(0, 0, 1), (1, 1, 3), (2, 1, 2)])
        );
        assert_eq!(
            table(FamilySpec::T3 { r: 2, s: 1, t: 1 }),
            BettiTable::from_entries(8, [(0, 0, 1), (1, 1, 3), (2, 2, 4), (3, 2, 2)])
        );
        assert_eq!(
            table(FamilySpec::Cycle { n: 4 }),
            BettiTable::from_entries(8, [(0, 0, 1), (1, 1, 4), (2, 2, 9), (3, 2, 8), (4, 2, 2)])
        );
        // a single edge is a hypersurface
        assert_eq!(
            table(FamilySpec::Line { n: 2 }),
            BettiTable::from_entries(4, [(0, 0, 1), (1, 1, 1)])
        );
    }

    #[test]
    fn symmetry_does_not_change_results() {
        for spec in [FamilySpec::Cycle { n: 4 }, FamilySpec::G3 { r: 1, s: 1, t: 1 }, FamilySpec::Complete { n: 4 }] {
            let b = basis(spec);
            let with = betti_table_partial(&b, &OracleOptions::default()).unwrap();
            let without = betti_table_partial(&b, &OracleOptions { symmetry: false, ..Default::default() }).unwrap();
            assert_eq!(with, without, "{spec}");
        }
    }

    #[test]
    fn euler_identity() {
        for spec in [FamilySpec::Cycle { n: 4 }, FamilySpec::Complete { n: 4 }, FamilySpec::Line { n: 4 }] {
            let b = basis(spec);
            let t = betti_table_partial(&b, &OracleOptions::default()).unwrap();
            assert_eq!(t.euler_polynomial(), hilbert_from_gb(&b).numerator, "{spec}");
        }
    }

    #[test]
    fn budget_gaps() {
        let g = FamilySpec::Cycle { n: 4 }.build().unwrap();
        let opts = OracleOptions { budget: 100, ..Default::default() };
        let err = betti_table(&g, DEFAULT_PRIME, &opts).unwrap_err();
        assert!(matches!(err, Error::OutOfBudget { .. }), "{err}");
        let b = edge_ideal_basis(&g, DEFAULT_PRIME).unwrap();
        let partial = betti_table_partial(&b, &opts).unwrap();
        assert!(!partial.is_complete());
        assert_eq!(partial.get(0, 0), 1);
    }

    #[test]
    fn vertex_cap() {
        let g = FamilySpec::Line { n: 17 }.build().unwrap();
        assert!(matches!(
            betti_table(&g, DEFAULT_PRIME, &OracleOptions::default()),
            Err(Error::EnumerationCap { n: 17, cap: 16 })
        ));
    }
}
