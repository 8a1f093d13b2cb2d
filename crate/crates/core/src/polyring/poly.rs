use std::cmp::Ordering;
use std::fmt::Write as _;

use super::field::PrimeField;
use super::monomial::{Monomial, MonomialOrder};
use crate::error::Result;

/// `K[x_1..x_n, y_1..y_n]` with `K = GF(p)` and a fixed monomial order.
/// Polynomials carry no ring data of their own; every operation goes
/// through the ring, which fixes the order and characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PolyRing {
    n: usize,
    order: MonomialOrder,
    field: PrimeField,
}

/// Terms sorted strictly descending in the ring's order, no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, u32)>,
}

impl Polynomial {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<u32> {
        self.terms.first().map(|t| t.1)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }
}

impl PolyRing {
    /// Ring in `2n` variables over GF(`p`).
    pub fn new(n: usize, p: u32, order: MonomialOrder) -> Result<Self> {
        Ok(PolyRing {
            n,
            order,
            field: PrimeField::new(p)?,
        })
    }

    /// Number of graph vertices; the ring has twice as many variables.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        2 * self.n
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    /// Index of `x_i` (1-based vertex).
    pub fn x(&self, i: usize) -> usize {
        i - 1
    }

    /// Index of `y_i` (1-based vertex).
    pub fn y(&self, i: usize) -> usize {
        self.n + i - 1
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::default()
    }

    pub fn one(&self) -> Polynomial {
        self.term(Monomial::one(self.nvars()), 1)
    }

    pub fn term(&self, m: Monomial, c: u32) -> Polynomial {
        let c = c % self.characteristic();
        if c == 0 {
            return self.zero();
        }
        Polynomial { terms: vec![(m, c)] }
    }

    pub fn var(&self, idx: usize) -> Polynomial {
        self.term(Monomial::var(self.nvars(), idx), 1)
    }

    /// Builds a polynomial from arbitrary `(monomial, signed coefficient)` pairs.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, i64)>) -> Polynomial {
        let mut acc = self.zero();
        for (m, c) in terms {
            let t = self.term(m, self.field.from_i64(c));
            acc = self.add(&acc, &t);
        }
        acc
    }

    /// The binomial `x_i y_j - x_j y_i`.
    pub fn edge_binomial(&self, i: usize, j: usize) -> Polynomial {
        let nv = self.nvars();
        let a = Monomial::var(nv, self.x(i)).mul_var(self.y(j));
        let b = Monomial::var(nv, self.x(j)).mul_var(self.y(i));
        self.from_terms([(a, 1), (b, -1)])
    }

    fn combine(&self, f: &Polynomial, g: &Polynomial, g_scale: u32, g_shift: Option<&Monomial>) -> Polynomial {
        // f + g_scale * g_shift * g, merging two descending term lists
        let field = self.field;
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let mut gi = g.terms.iter().map(|(m, c)| {
            let m = match g_shift {
                Some(s) => m.mul(s),
                None => m.clone(),
            };
            (m, field.mul(*c, g_scale))
        });
        let mut fi = f.terms.iter().cloned();
        let mut a = fi.next();
        let mut b = gi.next();
        loop {
            match (a.take(), b.take()) {
                (None, None) => break,
                (Some(x), None) => {
                    out.push(x);
                    out.extend(fi.by_ref());
                    break;
                }
                (None, Some(y)) => {
                    out.push(y);
                    out.extend(gi.by_ref());
                    break;
                }
                (Some(x), Some(y)) => match self.cmp(&x.0, &y.0) {
                    Ordering::Greater => {
                        out.push(x);
                        a = fi.next();
                        b = Some(y);
                    }
                    Ordering::Less => {
                        out.push(y);
                        a = Some(x);
                        b = gi.next();
                    }
                    Ordering::Equal => {
                        let c = field.add(x.1, y.1);
                        if c != 0 {
                            out.push((x.0, c));
                        }
                        a = fi.next();
                        b = gi.next();
                    }
                },
            }
        }
        Polynomial { terms: out }
    }

    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.combine(f, g, 1, None)
    }

    pub fn sub(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.combine(f, g, self.field.neg(1), None)
    }

    /// `f - c * m * g`.
    pub fn sub_mul_term(&self, f: &Polynomial, c: u32, m: &Monomial, g: &Polynomial) -> Polynomial {
        self.combine(f, g, self.field.neg(c), Some(m))
    }

    pub fn mul_term(&self, f: &Polynomial, c: u32, m: &Monomial) -> Polynomial {
        let c = c % self.characteristic();
        if c == 0 {
            return self.zero();
        }
        Polynomial {
            terms: f.terms.iter().map(|(fm, fc)| (fm.mul(m), self.field.mul(*fc, c))).collect(),
        }
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let mut acc = self.zero();
        for (m, c) in &g.terms {
            acc = self.add(&acc, &self.mul_term(f, *c, m));
        }
        acc
    }

    pub fn scale(&self, f: &Polynomial, c: u32) -> Polynomial {
        self.mul_term(f, c, &Monomial::one(self.nvars()))
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self, f: &Polynomial) -> Polynomial {
        match f.leading_coefficient() {
            None | Some(1) => f.clone(),
            Some(c) => self.scale(f, self.field.inv(c)),
        }
    }

    /// S-polynomial of two nonzero polynomials.
    pub fn s_polynomial(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let (fm, fc) = &f.terms[0];
        let (gm, gc) = &g.terms[0];
        let l = fm.lcm(gm);
        let a = self.mul_term(f, self.field.inv(*fc), &l.div(fm));
        let b = self.mul_term(g, self.field.inv(*gc), &l.div(gm));
        self.sub(&a, &b)
    }

    /// Human-readable form, e.g. `x1*y2 - x2*y1`; terms in descending order,
    /// coefficients printed as symmetric representatives.
    pub fn display(&self, f: &Polynomial) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in f.terms.iter().enumerate() {
            let c = self.field.to_signed(*c);
            let neg = c < 0;
            let abs = c.unsigned_abs();
            match (k, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            if m.is_one() {
                let _ = write!(s, "{abs}");
            } else {
                if abs != 1 {
                    let _ = write!(s, "{abs}*");
                }
                let _ = m.fmt_vars(&mut s);
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_binomial_display() {
        let lex = PolyRing::new(3, 32003, MonomialOrder::Lex).unwrap();
        assert_eq!(lex.display(&lex.edge_binomial(1, 2)), "x1*y2 - x2*y1");
        let drl = PolyRing::new(3, 32003, MonomialOrder::DegRevLex).unwrap();
        assert_eq!(drl.display(&drl.edge_binomial(1, 2)), "-x2*y1 + x1*y2");
    }

    #[test]
    fn arithmetic() {
        let r = PolyRing::new(2, 7, MonomialOrder::DegRevLex).unwrap();
        let f = r.edge_binomial(1, 2);
        assert!(r.sub(&f, &f).is_zero());
        let two_f = r.add(&f, &f);
        assert_eq!(r.scale(&f, 2), two_f);
        let sq = r.mul(&f, &f);
        assert_eq!(sq.len(), 3);
        assert!(sq.is_homogeneous());
        assert_eq!(r.monic(&f).leading_coefficient(), Some(1));
    }
}
