//! Exact polynomial arithmetic over GF(p) in the `2n` variables
//! `x_1..x_n, y_1..y_n`, Gröbner bases and initial ideals.

pub mod field;
pub mod groebner;
pub mod monomial;
pub mod poly;

pub use field::{PrimeField, ALT_PRIME, DEFAULT_PRIME};
pub use groebner::{buchberger, divide, initial_ideal, normal_form, Division, GroebnerBasis};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{PolyRing, Polynomial};

use crate::graphs::Graph;

/// Generators `x_i y_j - x_j y_i` of `J_G`, one per edge `{i, j}` with `i < j`,
/// in sorted edge order.
pub fn binomial_edge_ideal(ring: &PolyRing, g: &Graph) -> Vec<Polynomial> {
    assert_eq!(ring.n(), g.n(), "ring and graph disagree on n");
    g.edges().into_iter().map(|(i, j)| ring.edge_binomial(i, j)).collect()
}

/// Reduced Gröbner basis of `J_G` in the default order over GF(`p`).
pub fn edge_ideal_basis(g: &Graph, p: u32) -> crate::error::Result<GroebnerBasis> {
    let ring = PolyRing::new(g.n(), p, MonomialOrder::default())?;
    Ok(buchberger(&ring, &binomial_edge_ideal(&ring, g)))
}
