//! Rank of sparse matrices over GF(p) by Gaussian elimination with an
//! approximate Markowitz pivot rule: take a shortest remaining row, then
//! the column in it with the fewest entries.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::polyring::PrimeField;

/// Sparse matrix given row by row; entries are `(column, value)` with
/// values already reduced mod p. Duplicate columns in a row are summed.
#[derive(Debug, Clone, Default)]
pub struct SparseMatrix {
    ncols: usize,
    rows: Vec<Vec<(u32, u32)>>,
}

impl SparseMatrix {
    pub fn new(ncols: usize) -> Self {
        SparseMatrix { ncols, rows: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn push_row(&mut self, field: PrimeField, mut row: Vec<(u32, u32)>) {
        row.sort_unstable_by_key(|e| e.0);
        let mut merged: Vec<(u32, u32)> = Vec::with_capacity(row.len());
        for (c, v) in row {
            debug_assert!((c as usize) < self.ncols);
            match merged.last_mut() {
                Some(last) if last.0 == c => last.1 = field.add(last.1, v),
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|e| e.1 != 0);
        self.rows.push(merged);
    }

    pub fn rank(self, field: PrimeField) -> usize {
        sparse_rank(field, self.ncols, self.rows)
    }
}

/// `a - f * b` on sorted sparse rows.
fn axpy(field: PrimeField, a: &[(u32, u32)], f: u32, b: &[(u32, u32)], out: &mut Vec<(u32, u32)>) {
    out.clear();
    let nf = field.neg(f);
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (ca, va) = a[i];
        let (cb, vb) = b[j];
        if ca < cb {
            out.push((ca, va));
            i += 1;
        } else if cb < ca {
            out.push((cb, field.mul(nf, vb)));
            j += 1;
        } else {
            let v = field.add(va, field.mul(nf, vb));
            if v != 0 {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|&(c, v)| (c, field.mul(nf, v))));
}

/// Reusable buffers for [`RankWorkspace::rank`]; keeping one per worker
/// avoids reallocating for every small block.
#[derive(Debug, Default)]
pub struct RankWorkspace {
    col_rows: Vec<Vec<u32>>,
    col_count: Vec<u32>,
    alive: Vec<bool>,
    heap: BinaryHeap<Reverse<(usize, u32)>>,
    scratch: Vec<(u32, u32)>,
}

pub fn sparse_rank(field: PrimeField, ncols: usize, mut rows: Vec<Vec<(u32, u32)>>) -> usize {
    RankWorkspace::default().rank(field, ncols, &mut rows)
}

impl RankWorkspace {
    /// Rank of the matrix with the given sorted sparse rows; the rows are
    /// consumed as scratch space.
    pub fn rank(&mut self, field: PrimeField, ncols: usize, rows: &mut [Vec<(u32, u32)>]) -> usize {
        let nonempty = rows.iter().filter(|r| !r.is_empty()).count();
        if nonempty <= 1 || ncols <= 1 {
            return nonempty.min(ncols);
        }
        if self.col_rows.len() < ncols {
            self.col_rows.resize_with(ncols, Vec::new);
        }
        let col_rows = &mut self.col_rows[..ncols];
        col_rows.iter_mut().for_each(Vec::clear);
        self.col_count.clear();
        self.col_count.resize(ncols, 0);
        let col_count = &mut self.col_count;
        self.alive.clear();
        self.alive.resize(rows.len(), true);
        let alive = &mut self.alive;
        let heap = &mut self.heap;
        heap.clear();
        for (r, row) in rows.iter().enumerate() {
            for &(c, _) in row.iter() {
                col_rows[c as usize].push(r as u32);
                col_count[c as usize] += 1;
            }
            if !row.is_empty() {
                heap.push(Reverse((row.len(), r as u32)));
            }
        }
        let scratch = &mut self.scratch;
        let mut rank = 0;
        while let Some(Reverse((len, p))) = heap.pop() {
            let p = p as usize;
            if !alive[p] || rows[p].len() != len {
                continue;
            }
            alive[p] = false;
            if len == 0 {
                continue;
            }
            rank += 1;
            let pivot_row = std::mem::take(&mut rows[p]);
            let &(q, a) = pivot_row.iter().min_by_key(|&&(c, _)| (col_count[c as usize], c)).unwrap();
            for &(c, _) in &pivot_row {
                col_count[c as usize] -= 1;
            }
            let touched = std::mem::take(&mut col_rows[q as usize]);
            if pivot_row.len() == 1 {
                // singleton row: the column just disappears from the others
                for &s in &touched {
                    let s = s as usize;
                    if !alive[s] {
                        continue;
                    }
                    if let Ok(pos) = rows[s].binary_search_by_key(&q, |e| e.0) {
                        rows[s].remove(pos);
                        col_count[q as usize] -= 1;
                        heap.push(Reverse((rows[s].len(), s as u32)));
                    }
                }
            } else {
                let inv_a = field.inv(a);
                for &s in &touched {
                    let s = s as usize;
                    if !alive[s] {
                        continue;
                    }
                    let Ok(pos) = rows[s].binary_search_by_key(&q, |e| e.0) else {
                        continue;
                    };
                    let f = field.mul(rows[s][pos].1, inv_a);
                    for &(c, _) in &rows[s] {
                        col_count[c as usize] -= 1;
                    }
                    axpy(field, &rows[s], f, &pivot_row, scratch);
                    for &(c, _) in scratch.iter() {
                        col_count[c as usize] += 1;
                    }
                    // record fill-in; stale entries in col_rows are skipped later
                    std::mem::swap(&mut rows[s], scratch);
                    let old = &*scratch;
                    let mut oi = 0;
                    for &(c, _) in &rows[s] {
                        while oi < old.len() && old[oi].0 < c {
                            oi += 1;
                        }
                        if oi >= old.len() || old[oi].0 != c {
                            col_rows[c as usize].push(s as u32);
                        }
                    }
                    heap.push(Reverse((rows[s].len(), s as u32)));
                }
            }
            col_rows[q as usize] = touched;
            col_rows[q as usize].clear();
            rows[p] = pivot_row;
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dense_rank(field: PrimeField, mut m: Vec<Vec<u32>>, ncols: usize) -> usize {
        let mut rank = 0;
        for c in 0..ncols {
            let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
                continue;
            };
            m.swap(rank, p);
            let inv = field.inv(m[rank][c]);
            for r in 0..m.len() {
                if r != rank && m[r][c] != 0 {
                    let f = field.mul(m[r][c], inv);
                    for k in 0..ncols {
                        let v = field.mul(f, m[rank][k]);
                        m[r][k] = field.sub(m[r][k], v);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn to_sparse(field: PrimeField, m: &[Vec<u32>], ncols: usize) -> SparseMatrix {
        let mut s = SparseMatrix::new(ncols);
        for row in m {
            let entries = row.iter().enumerate().filter(|e| *e.1 != 0).map(|(c, &v)| (c as u32, v)).collect();
            s.push_row(field, entries);
        }
        s
    }

    #[test]
    fn small_cases() {
        let f = PrimeField::new(7).unwrap();
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(to_sparse(f, &m, 3).rank(f), 2);
        assert_eq!(SparseMatrix::new(5).rank(f), 0);
        let mut dup = SparseMatrix::new(2);
        dup.push_row(f, vec![(0, 3), (0, 4), (1, 1)]);
        assert_eq!(dup.nnz(), 1);
    }

    proptest! {
        #[test]
        fn matches_dense(
            rows in 1usize..12,
            cols in 1usize..12,
            seed in proptest::collection::vec(0u32..5, 144),
        ) {
            let f = PrimeField::new(5).unwrap();
            let m: Vec<Vec<u32>> = (0..rows)
                .map(|r| (0..cols).map(|c| {
                    let v = seed[r * 12 + c];
                    // keep it sparse-ish
                    if v < 3 { 0 } else { v - 2 }
                }).collect())
                .collect();
            let expected = dense_rank(f, m.clone(), cols);
            prop_assert_eq!(to_sparse(f, &m, cols).rank(f), expected);
        }
    }
}
