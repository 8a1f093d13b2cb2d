//! Hilbert series of `S/J` as `numerator(t) / (1-t)^d` with integer
//! numerators, computed from the initial ideal of a Gröbner basis, plus the
//! closed forms for cycles, T3 and G3 and the pendant-edge transform.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::FxHashMap;
use serde_json::json;

use crate::error::{Error, Result};
use crate::graphs::FamilySpec;
use crate::polyring::{GroebnerBasis, Monomial};

/// `numerator / (1-t)^denom_power`. The numerator is stored low degree
/// first with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HilbertSeries {
    pub numerator: Vec<BigInt>,
    pub denom_power: u32,
}

/// Dense integer polynomial helpers (coefficients low degree first).
pub(crate) mod upoly {
    use num_bigint::BigInt;
    use num_traits::Zero;

    pub fn trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }

    pub fn from_i64(c: &[i64]) -> Vec<BigInt> {
        trim(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len().max(b.len())];
        for (i, c) in a.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in b.iter().enumerate() {
            out[i] += c;
        }
        trim(out)
    }

    pub fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    /// `t^k * a`.
    pub fn shift(a: &[BigInt], k: usize) -> Vec<BigInt> {
        if a.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); k];
        out.extend_from_slice(a);
        out
    }

    pub fn pow(a: &[BigInt], e: usize) -> Vec<BigInt> {
        let mut acc = vec![BigInt::from(1)];
        for _ in 0..e {
            acc = mul(&acc, a);
        }
        acc
    }

    /// `(1 - t)^e`.
    pub fn one_minus_t_pow(e: usize) -> Vec<BigInt> {
        pow(&from_i64(&[1, -1]), e)
    }

    pub fn eval_at_one(a: &[BigInt]) -> BigInt {
        a.iter().sum()
    }

    /// Exact division by `(1 - t)`; caller checks `a(1) = 0`.
    pub fn div_one_minus_t(a: &[BigInt]) -> Vec<BigInt> {
        // a = (1 - t) q  =>  q_k = a_0 + ... + a_k
        let mut q = Vec::with_capacity(a.len());
        let mut run = BigInt::zero();
        for c in a.iter().take(a.len().saturating_sub(1)) {
            run += c;
            q.push(run.clone());
        }
        trim(q)
    }
}

impl HilbertSeries {
    pub fn new(numerator: Vec<BigInt>, denom_power: u32) -> Self {
        HilbertSeries {
            numerator: upoly::trim(numerator),
            denom_power,
        }
    }

    pub fn from_coefficients(coeffs: &[i64], denom_power: u32) -> Self {
        Self::new(upoly::from_i64(coeffs), denom_power)
    }

    /// Cancels factors `(1 - t)` from numerator and denominator; the
    /// remaining power is the Krull dimension.
    pub fn reduce(&self) -> HilbertSeries {
        let mut num = self.numerator.clone();
        let mut d = self.denom_power;
        while d > 0 && !num.is_empty() && upoly::eval_at_one(&num).is_zero() {
            num = upoly::div_one_minus_t(&num);
            d -= 1;
        }
        HilbertSeries::new(num, d)
    }

    /// Same power series, whatever the representation.
    pub fn same_series(&self, other: &HilbertSeries) -> bool {
        let a = upoly::mul(&self.numerator, &upoly::one_minus_t_pow(other.denom_power as usize));
        let b = upoly::mul(&other.numerator, &upoly::one_minus_t_pow(self.denom_power as usize));
        a == b
    }

    /// Numerator over `(1-t)^target`, requires `target >= denom_power`.
    pub fn numerator_over(&self, target: u32) -> Vec<BigInt> {
        assert!(target >= self.denom_power);
        upoly::mul(&self.numerator, &upoly::one_minus_t_pow((target - self.denom_power) as usize))
    }

    /// Coefficient of `t^d` in the expansion.
    pub fn hilbert_function(&self, d: usize) -> BigInt {
        let dp = self.denom_power as usize;
        let mut acc = BigInt::zero();
        for (k, h) in self.numerator.iter().enumerate().take(d + 1) {
            let m = d - k;
            let term = if dp == 0 {
                if m == 0 {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            } else {
                binomial_big(m + dp - 1, dp - 1)
            };
            acc += h * term;
        }
        acc
    }

    /// Leading coefficient of the numerator (zero for the zero series).
    pub fn highest_coefficient(&self) -> BigInt {
        self.numerator.last().cloned().unwrap_or_default()
    }

    /// Series of `S'/J_{G'}` where `G'` attaches a pendant edge at a free
    /// vertex of `G`: two more variables and one regular quadric, so the
    /// numerator picks up `(1 - t^2)` and the denominator `(1-t)^2`.
    pub fn attach_edge_transform(&self) -> HilbertSeries {
        HilbertSeries::new(
            upoly::mul(&self.numerator, &upoly::from_i64(&[1, 0, -1])),
            self.denom_power + 2,
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        let num: Vec<serde_json::Value> = self
            .numerator
            .iter()
            .map(|c| match c.to_i64() {
                Some(v) => json!(v),
                None => json!(c.to_string()),
            })
            .collect();
        json!({ "num": num, "denomPow": self.denom_power })
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let mut first = true;
        for (k, c) in self.numerator.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}")?;
                    }
                    write!(f, "t")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")/(1-t)^{}", self.denom_power)
    }
}

pub(crate) fn binomial_big(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|o| o.divides(&g)) {
            out.push(g);
        }
    }
    out.sort();
    out
}

fn is_pure_power(m: &Monomial) -> bool {
    m.exponents().iter().filter(|&&e| e > 0).count() <= 1
}

struct NumeratorMemo {
    memo: FxHashMap<Vec<Monomial>, Vec<BigInt>>,
}

impl NumeratorMemo {
    fn numerator(&mut self, gens: Vec<Monomial>) -> Vec<BigInt> {
        let gens = minimalize(gens);
        if gens.is_empty() {
            return vec![BigInt::one()];
        }
        if let Some(hit) = self.memo.get(&gens) {
            return hit.clone();
        }
        let pairwise_coprime = gens
            .iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
        let result = if pairwise_coprime {
            gens.iter().fold(vec![BigInt::one()], |acc, g| {
                let mut factor = vec![BigInt::zero(); g.degree() as usize + 1];
                factor[0] = BigInt::one();
                factor[g.degree() as usize] = BigInt::from(-1);
                upoly::mul(&acc, &factor)
            })
        } else {
            let nvars = gens[0].nvars();
            let mut counts = vec![0usize; nvars];
            for g in gens.iter().filter(|g| !is_pure_power(g)) {
                for (v, &e) in g.exponents().iter().enumerate() {
                    if e > 0 {
                        counts[v] += 1;
                    }
                }
            }
            let pivot = (0..nvars).max_by_key(|&v| (counts[v], std::cmp::Reverse(v))).unwrap();
            // H(I) = H(I + x) + t H(I : x)
            let mut plus: Vec<Monomial> = gens.iter().filter(|g| g.exponents()[pivot] == 0).cloned().collect();
            plus.push(Monomial::var(nvars, pivot));
            let colon: Vec<Monomial> = gens.iter().map(|g| g.colon_var(pivot)).collect();
            let a = self.numerator(plus);
            let b = self.numerator(colon);
            upoly::add(&a, &upoly::shift(&b, 1))
        };
        self.memo.insert(gens, result.clone());
        result
    }
}

/// Numerator `N(t)` with `H(S/I, t) = N(t) / (1-t)^nvars` for a monomial
/// ideal `I`, by pivot splitting on a variable.
pub fn monomial_ideal_numerator(gens: &[Monomial]) -> Vec<BigInt> {
    let mut memo = NumeratorMemo { memo: FxHashMap::default() };
    memo.numerator(gens.to_vec())
}

/// Unreduced series of `S/J` over `(1-t)^{2n}`.
pub fn hilbert_from_gb(basis: &GroebnerBasis) -> HilbertSeries {
    let nvars = basis.ring().nvars();
    let init = basis.initial_ideal();
    let num = if init.is_empty() {
        vec![BigInt::one()]
    } else {
        monomial_ideal_numerator(&init)
    };
    HilbertSeries::new(num, nvars as u32)
}

/// Calls `visit` on every monomial of degree `<= max_degree` outside the
/// ideal generated by `gens` (depth-first, variables added in
/// nondecreasing index order, pruning at the first divisible monomial).
pub fn for_each_standard_monomial(gens: &[Monomial], nvars: usize, max_degree: usize, mut visit: impl FnMut(&[u8], usize)) {
    let mut exps = vec![0u8; nvars];
    fn in_ideal(gens: &[Monomial], exps: &[u8]) -> bool {
        gens.iter().any(|g| g.exponents().iter().zip(exps).all(|(a, b)| a <= b))
    }
    fn rec(
        gens: &[Monomial],
        exps: &mut Vec<u8>,
        from: usize,
        deg: usize,
        max_degree: usize,
        visit: &mut dyn FnMut(&[u8], usize),
    ) {
        visit(exps, deg);
        if deg == max_degree {
            return;
        }
        for v in from..exps.len() {
            exps[v] += 1;
            if !in_ideal(gens, exps) {
                rec(gens, exps, v, deg + 1, max_degree, visit);
            }
            exps[v] -= 1;
        }
    }
    if in_ideal(gens, &exps) {
        return;
    }
    rec(gens, &mut exps, 0, 0, max_degree, &mut visit);
}

/// Number of standard monomials in each degree `0..=max_degree`.
pub fn count_standard_monomials(gens: &[Monomial], nvars: usize, max_degree: usize) -> Vec<u64> {
    let mut counts = vec![0u64; max_degree + 1];
    for_each_standard_monomial(gens, nvars, max_degree, |_, d| counts[d] += 1);
    counts
}

/// Closed-form series: cycles over `(1-t)^{n+1}`, T3 over `(1-t)^{n+2}`,
/// G3 over `(1-t)^{n+1}`.
pub fn closed_hilbert(spec: &FamilySpec) -> Result<HilbertSeries> {
    spec.validate()?;
    let one_plus_t = upoly::from_i64(&[1, 1]);
    match *spec {
        FamilySpec::Cycle { n } => {
            let base = upoly::pow(&one_plus_t, n - 1);
            let mut num = upoly::mul(&base, &upoly::from_i64(&[1, 0, -1]));
            let mut tail = vec![0i64; n + 2];
            tail[n] = n as i64 - 1;
            tail[n + 1] = 1;
            num = upoly::add(&num, &upoly::from_i64(&tail));
            Ok(HilbertSeries::new(num, n as u32 + 1))
        }
        FamilySpec::T3 { .. } => {
            let n = spec.n();
            let num = upoly::mul(&upoly::from_i64(&[1, 2, 0, -2]), &upoly::pow(&one_plus_t, n - 4));
            Ok(HilbertSeries::new(num, n as u32 + 2))
        }
        FamilySpec::G3 { .. } => {
            let n = spec.n();
            let num = upoly::mul(&upoly::from_i64(&[1, 2]), &upoly::pow(&one_plus_t, n - 3));
            Ok(HilbertSeries::new(num, n as u32 + 1))
        }
        FamilySpec::Line { .. } | FamilySpec::Complete { .. } => Err(Error::Unsupported(format!(
            "no closed Hilbert series for {spec}; use the Betti tables of lines and complete graphs"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{edge_ideal_basis, DEFAULT_PRIME};

    fn series_of(spec: FamilySpec) -> HilbertSeries {
        let g = spec.build().unwrap();
        hilbert_from_gb(&edge_ideal_basis(&g, DEFAULT_PRIME).unwrap())
    }

    #[test]
    fn hypersurface() {
        let h = series_of(FamilySpec::Line { n: 2 });
        assert_eq!(h, HilbertSeries::from_coefficients(&[1, 0, -1], 4));
        assert_eq!(h.reduce(), HilbertSeries::from_coefficients(&[1, 1], 3));
    }

    #[test]
    fn small_examples() {
        assert_eq!(
            series_of(FamilySpec::Cycle { n: 3 }).reduce(),
            HilbertSeries::from_coefficients(&[1, 2], 4)
        );
        assert_eq!(
            series_of(FamilySpec::T3 { r: 2, s: 1, t: 1 }).reduce(),
            HilbertSeries::from_coefficients(&[1, 2, 0, -2], 6)
        );
        assert_eq!(
            series_of(FamilySpec::Cycle { n: 4 }).reduce(),
            HilbertSeries::from_coefficients(&[1, 3, 2, -2], 5)
        );
    }

    #[test]
    fn reduce_is_idempotent() {
        let h = HilbertSeries::from_coefficients(&[1, 2], 4);
        assert_eq!(h.reduce(), h);
    }

    #[test]
    fn closed_forms() {
        let c3 = closed_hilbert(&FamilySpec::Cycle { n: 3 }).unwrap();
        assert_eq!(c3, HilbertSeries::from_coefficients(&[1, 2], 4));
        let g4 = closed_hilbert(&FamilySpec::G3 { r: 2, s: 1, t: 1 }).unwrap();
        assert_eq!(g4, HilbertSeries::from_coefficients(&[1, 3, 2], 5));
        let t5 = closed_hilbert(&FamilySpec::T3 { r: 3, s: 1, t: 1 }).unwrap();
        assert_eq!(t5, HilbertSeries::from_coefficients(&[1, 3, 2, -2, -2], 7));
        assert!(matches!(closed_hilbert(&FamilySpec::Line { n: 3 }), Err(Error::Unsupported(_))));
    }

    #[test]
    fn cycle_top_coefficient() {
        // the t^{n-1} coefficient has absolute value C(n-1,2) - 1
        for n in 4..=9usize {
            let h = closed_hilbert(&FamilySpec::Cycle { n }).unwrap().reduce();
            assert_eq!(h.numerator.len(), n, "degree n-1 for n={n}");
            let expected = ((n - 1) * (n - 2) / 2 - 1) as i64;
            assert_eq!(h.highest_coefficient(), BigInt::from(-expected), "n={n}");
        }
        let c3 = closed_hilbert(&FamilySpec::Cycle { n: 3 }).unwrap();
        assert_eq!(c3.highest_coefficient(), BigInt::from(2));
        assert_eq!(c3.numerator.len(), 2);
    }

    #[test]
    fn hilbert_function_values() {
        let tri = HilbertSeries::from_coefficients(&[1, 2], 4);
        assert_eq!(tri.hilbert_function(0), BigInt::from(1));
        assert_eq!(tri.hilbert_function(1), BigInt::from(6));
        assert_eq!(tri.hilbert_function(2), BigInt::from(18));
        let artinian = HilbertSeries::from_coefficients(&[1, 3, 1], 0);
        assert_eq!(artinian.hilbert_function(1), BigInt::from(3));
        assert_eq!(artinian.hilbert_function(5), BigInt::from(0));
    }

    #[test]
    fn edge_transform() {
        let tri = HilbertSeries::from_coefficients(&[1, 2], 4);
        let g4 = closed_hilbert(&FamilySpec::G3 { r: 2, s: 1, t: 1 }).unwrap();
        assert!(tri.attach_edge_transform().same_series(&g4));
        let edge = HilbertSeries::from_coefficients(&[1, 1], 3);
        assert_eq!(edge.attach_edge_transform().reduce(), HilbertSeries::from_coefficients(&[1, 2, 1], 4));
        let line3 = series_of(FamilySpec::Line { n: 3 });
        assert!(edge.attach_edge_transform().same_series(&line3));
        let mut h = tri.clone();
        for _ in 0..3 {
            h = h.attach_edge_transform();
        }
        let expected = upoly::mul(&tri.numerator, &upoly::pow(&upoly::from_i64(&[1, 0, -1]), 3));
        assert_eq!(h.numerator, expected);
    }

    #[test]
    fn standard_monomial_counts_match_numerator() {
        for spec in [
            FamilySpec::Cycle { n: 4 },
            FamilySpec::T3 { r: 2, s: 1, t: 1 },
            FamilySpec::Complete { n: 4 },
            FamilySpec::Line { n: 4 },
        ] {
            let g = spec.build().unwrap();
            let gb = edge_ideal_basis(&g, DEFAULT_PRIME).unwrap();
            let h = hilbert_from_gb(&gb);
            let nvars = 2 * g.n();
            let counts = count_standard_monomials(&gb.initial_ideal(), nvars, nvars);
            for (d, c) in counts.iter().enumerate() {
                assert_eq!(h.hilbert_function(d), BigInt::from(*c), "{spec} degree {d}");
            }
        }
    }

    #[test]
    fn display() {
        let h = HilbertSeries::from_coefficients(&[1, 2, 0, -2], 6);
        assert_eq!(h.to_string(), "(1 + 2t - 2t^3)/(1-t)^6");
        assert_eq!(h.to_json().to_string(), r#"{"denomPow":6,"num":[1,2,0,-2]}"#);
    }
}
