//! Binomial edge ideals `J_G` of simple graphs: Gröbner bases, Hilbert
//! series, minimal primes, graded Betti numbers via Koszul homology, the
//! closed-form Betti tables of lines, complete graphs, cycles and the
//! three-legged families T3 / G3, and induced-subgraph regularity bounds.

pub mod bounds;
pub mod closedforms;
pub mod corpus;
pub mod error;
pub mod graphs;
pub mod hilbert;
pub mod koszul;
pub mod polyring;
pub mod primes;
pub mod sparse;
pub mod table;
pub mod verify;

pub use error::{Error, Result};
pub use graphs::{FamilySpec, Graph, VertexSet};
