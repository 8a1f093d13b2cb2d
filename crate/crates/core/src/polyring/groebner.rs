//! Division with remainder and Buchberger's algorithm with the
//! Gebauer–Möller pair criteria.

use super::monomial::Monomial;
use super::poly::{PolyRing, Polynomial};

/// Result of dividing `f` by a list: `f = sum(q_k * b_k) + remainder`.
#[derive(Debug, Clone)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

/// Multivariate division. At every step the highest term of the
/// not-yet-processed part is reduced by the first basis element (in list
/// order) whose leading monomial divides it; irreducible terms move to the
/// remainder.
pub fn divide(ring: &PolyRing, f: &Polynomial, basis: &[Polynomial]) -> Division {
    let field = ring.field();
    let mut quotients = vec![ring.zero(); basis.len()];
    let lead: Vec<Option<(&Monomial, u32)>> = basis
        .iter()
        .map(|b| b.leading_monomial().map(|m| (m, field.inv(b.leading_coefficient().unwrap()))))
        .collect();
    let mut rest = f.clone();
    let mut remainder_terms = Vec::new();
    while let Some((m, c)) = rest.terms().first().cloned() {
        let hit = lead
            .iter()
            .enumerate()
            .find_map(|(k, l)| l.filter(|(lm, _)| lm.divides(&m)).map(|(lm, inv)| (k, lm, inv)));
        match hit {
            Some((k, lm, inv)) => {
                let coeff = field.mul(c, inv);
                let shift = m.div(lm);
                rest = ring.sub_mul_term(&rest, coeff, &shift, &basis[k]);
                quotients[k] = ring.add(&quotients[k], &ring.term(shift, coeff));
            }
            None => {
                let lt = ring.term(m, c);
                rest = ring.sub(&rest, &lt);
                remainder_terms.push(lt);
            }
        }
    }
    let mut remainder = ring.zero();
    for t in remainder_terms {
        remainder = ring.add(&remainder, &t);
    }
    Division { quotients, remainder }
}

/// Remainder of [`divide`].
pub fn normal_form(ring: &PolyRing, f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let field = ring.field();
    let lead: Vec<Option<(&Monomial, u32)>> = basis
        .iter()
        .map(|b| b.leading_monomial().map(|m| (m, field.inv(b.leading_coefficient().unwrap()))))
        .collect();
    let mut rest = f.clone();
    let mut remainder = ring.zero();
    while let Some((m, c)) = rest.terms().first().cloned() {
        let hit = lead
            .iter()
            .enumerate()
            .find_map(|(k, l)| l.filter(|(lm, _)| lm.divides(&m)).map(|(lm, inv)| (k, lm, inv)));
        match hit {
            Some((k, lm, inv)) => {
                rest = ring.sub_mul_term(&rest, field.mul(c, inv), &m.div(lm), &basis[k]);
            }
            None => {
                let lt = ring.term(m, c);
                rest = ring.sub(&rest, &lt);
                // terms arrive in descending order, so appending keeps the remainder sorted
                remainder = ring.add(&remainder, &lt);
            }
        }
    }
    remainder
}

/// A reduced Gröbner basis: monic generators, sorted by descending leading
/// monomial, no term of any generator divisible by another's leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: PolyRing,
    generators: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn characteristic(&self) -> u32 {
        self.ring.characteristic()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        normal_form(&self.ring, f, &self.generators)
    }

    /// Minimal generators of the initial ideal, sorted descending.
    pub fn initial_ideal(&self) -> Vec<Monomial> {
        initial_ideal(self)
    }

    /// Buchberger's criterion checked directly: every S-polynomial reduces to zero.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| self.normal_form(&self.ring.s_polynomial(&g[i], &g[j])).is_zero()))
    }

    /// No term of a generator is divisible by the leading monomial of another.
    pub fn is_reduced(&self) -> bool {
        let g = &self.generators;
        g.iter().enumerate().all(|(i, gi)| {
            gi.leading_coefficient() == Some(1)
                && g.iter().enumerate().all(|(j, gj)| {
                    i == j || {
                        let lm = gj.leading_monomial().unwrap();
                        gi.terms().iter().all(|(m, _)| !lm.divides(m))
                    }
                })
        })
    }
}

/// Minimal generators of the initial ideal of a reduced basis.
pub fn initial_ideal(basis: &GroebnerBasis) -> Vec<Monomial> {
    let lms: Vec<Monomial> = basis.generators.iter().filter_map(|g| g.leading_monomial().cloned()).collect();
    let mut minimal: Vec<Monomial> = lms
        .iter()
        .enumerate()
        .filter(|(i, m)| !lms.iter().enumerate().any(|(j, o)| j != *i && o.divides(m) && (o != *m || j < *i)))
        .map(|(_, m)| m.clone())
        .collect();
    minimal.sort_by(|a, b| basis.ring.cmp(b, a));
    minimal
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Builder<'r> {
    ring: &'r PolyRing,
    polys: Vec<Polynomial>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Builder<'_> {
    fn lm(&self, k: usize) -> &Monomial {
        self.polys[k].leading_monomial().expect("basis elements are nonzero")
    }

    fn active_basis(&self) -> Vec<Polynomial> {
        self.polys.iter().zip(&self.active).filter(|(_, &a)| a).map(|(p, _)| p.clone()).collect()
    }

    /// Gebauer–Möller update with the new element `h` (already monic,
    /// reduced against the active basis).
    fn update(&mut self, h: Polynomial) {
        let hi = self.polys.len();
        self.polys.push(h);
        self.active.push(false);
        let lm_h = self.lm(hi).clone();

        let mut c: Vec<Pair> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| Pair {
                i: g,
                j: hi,
                lcm: self.lm(g).lcm(&lm_h),
            })
            .collect();
        let mut d: Vec<Pair> = Vec::new();
        while let Some(p) = c.pop() {
            let coprime = self.lm(p.i).is_coprime(&lm_h);
            let dominated = c.iter().chain(d.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                d.push(p);
            }
        }
        // product criterion
        d.retain(|p| !self.lm(p.i).is_coprime(&lm_h));

        // chain criterion on old pairs
        let old = std::mem::take(&mut self.pairs);
        for p in old {
            let keep = !lm_h.divides(&p.lcm)
                || self.lm(p.i).lcm(&lm_h) == p.lcm
                || self.lm(p.j).lcm(&lm_h) == p.lcm;
            if keep {
                self.pairs.push(p);
            }
        }
        self.pairs.extend(d);

        for g in 0..hi {
            if self.active[g] && lm_h.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
        self.active[hi] = true;
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        let ring = self.ring;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| ring.cmp(&a.lcm, &b.lcm).then((a.i, a.j).cmp(&(b.i, b.j))))
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(ring: &PolyRing, gens: &[Polynomial]) -> GroebnerBasis {
    let mut b = Builder {
        ring,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    let mut input: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).map(|g| ring.monic(g)).collect();
    input.sort_by(|f, g| ring.cmp(f.leading_monomial().unwrap(), g.leading_monomial().unwrap()));
    input.dedup();
    for g in input {
        let h = normal_form(ring, &g, &b.active_basis());
        if !h.is_zero() {
            b.update(ring.monic(&h));
        }
    }
    while let Some(p) = b.pop_pair() {
        let s = ring.s_polynomial(&b.polys[p.i], &b.polys[p.j]);
        let h = normal_form(ring, &s, &b.active_basis());
        if !h.is_zero() {
            b.update(ring.monic(&h));
        }
    }
    let minimal = b.active_basis();
    reduce_basis(ring, minimal)
}

/// Interreduces a minimal basis and sorts it.
fn reduce_basis(ring: &PolyRing, minimal: Vec<Polynomial>) -> GroebnerBasis {
    let mut gens = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let others: Vec<Polynomial> = minimal.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, p)| p.clone()).collect();
        let (lm, _) = g.terms()[0].clone();
        let tail = ring.sub(g, &ring.term(lm.clone(), 1));
        let reduced_tail = normal_form(ring, &tail, &others);
        gens.push(ring.add(&ring.term(lm, 1), &reduced_tail));
    }
    gens.sort_by(|f, g| ring.cmp(g.leading_monomial().unwrap(), f.leading_monomial().unwrap()));
    GroebnerBasis { ring: *ring, generators: gens }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::monomial::MonomialOrder;

    fn mono(ring: &PolyRing, xs: &[usize], ys: &[usize]) -> Monomial {
        let mut m = Monomial::one(ring.nvars());
        for &i in xs {
            m = m.mul_var(ring.x(i));
        }
        for &i in ys {
            m = m.mul_var(ring.y(i));
        }
        m
    }

    #[test]
    fn normal_form_examples_lex() {
        // with leading term x1*y2
        let r = PolyRing::new(3, 32003, MonomialOrder::Lex).unwrap();
        let f = r.edge_binomial(1, 2);
        assert!(normal_form(&r, &f, std::slice::from_ref(&f)).is_zero());
        let x2y1 = r.term(mono(&r, &[2], &[1]), 1);
        assert_eq!(normal_form(&r, &x2y1, std::slice::from_ref(&f)), x2y1);
        let big = r.term(mono(&r, &[1], &[2, 3]), 1);
        let nf = normal_form(&r, &big, std::slice::from_ref(&f));
        assert_eq!(nf, r.term(mono(&r, &[2], &[1, 3]), 1));
        // re-adding the multiple recovers f
        let back = r.add(&nf, &r.mul(&f, &r.var(r.y(3))));
        assert_eq!(back, big);
    }

    #[test]
    fn normal_form_examples_degrevlex() {
        // leading term is x2*y1 here
        let r = PolyRing::new(3, 32003, MonomialOrder::DegRevLex).unwrap();
        let f = r.edge_binomial(1, 2);
        let x1y2 = r.term(mono(&r, &[1], &[2]), 1);
        assert_eq!(normal_form(&r, &x1y2, std::slice::from_ref(&f)), x1y2);
        let big = r.term(mono(&r, &[2], &[1, 3]), 1);
        assert_eq!(normal_form(&r, &big, std::slice::from_ref(&f)), r.term(mono(&r, &[1], &[2, 3]), 1));
    }

    #[test]
    fn division_recombines() {
        let r = PolyRing::new(3, 32003, MonomialOrder::DegRevLex).unwrap();
        let basis = vec![r.edge_binomial(1, 2), r.edge_binomial(2, 3)];
        let f = r.from_terms([
            (mono(&r, &[1, 2], &[2, 3]), 3),
            (mono(&r, &[3], &[1]), -2),
            (mono(&r, &[2, 2], &[1]), 5),
        ]);
        let div = divide(&r, &f, &basis);
        let mut acc = div.remainder.clone();
        for (q, b) in div.quotients.iter().zip(&basis) {
            acc = r.add(&acc, &r.mul(q, b));
        }
        assert_eq!(acc, f);
        assert_eq!(div.remainder, normal_form(&r, &f, &basis));
    }

    #[test]
    fn single_binomial_is_its_own_basis() {
        let r = PolyRing::new(2, 32003, MonomialOrder::DegRevLex).unwrap();
        let f = r.edge_binomial(1, 2);
        let gb = buchberger(&r, std::slice::from_ref(&f));
        assert_eq!(gb.generators(), &[r.monic(&f)]);
        assert!(gb.is_reduced());
    }

    #[test]
    fn empty_input() {
        let r = PolyRing::new(2, 32003, MonomialOrder::DegRevLex).unwrap();
        let gb = buchberger(&r, &[]);
        assert!(gb.is_empty());
        assert!(gb.initial_ideal().is_empty());
    }

    #[test]
    fn input_order_does_not_matter() {
        let r = PolyRing::new(4, 32003, MonomialOrder::DegRevLex).unwrap();
        let mut gens = vec![r.edge_binomial(1, 2), r.edge_binomial(2, 3), r.edge_binomial(3, 4), r.edge_binomial(1, 4)];
        let a = buchberger(&r, &gens);
        gens.reverse();
        let b = buchberger(&r, &gens);
        assert_eq!(a, b);
        assert!(a.s_pairs_reduce_to_zero());
        assert!(a.is_reduced());
    }

    #[test]
    fn non_binomial_ideal() {
        // twisted cubic-ish example in 4 variables (n = 2): x1^2 - y1*x2, x1*x2 - y1*y2, x2^2 - x1*y2
        let r = PolyRing::new(2, 101, MonomialOrder::DegRevLex).unwrap();
        let gens = vec![
            r.from_terms([(mono(&r, &[1, 1], &[]), 1), (mono(&r, &[2], &[1]), -1), (mono(&r, &[], &[1, 2]), 3)]),
            r.from_terms([(mono(&r, &[1, 2], &[]), 1), (mono(&r, &[], &[1, 2]), -1)]),
            r.from_terms([(mono(&r, &[2, 2], &[]), 1), (mono(&r, &[1], &[2]), -1)]),
        ];
        let gb = buchberger(&r, &gens);
        assert!(gb.s_pairs_reduce_to_zero());
        assert!(gb.is_reduced());
        for g in &gens {
            assert!(gb.normal_form(g).is_zero());
        }
    }
}
