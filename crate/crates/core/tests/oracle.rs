//! Cross-checks between the Koszul oracle and the other routes on random
//! and hand-built graphs.

use bei::bounds::{betti_lower_bounds, reg_bounds};
use bei::closedforms::{betti_cycle, closed_betti};
use bei::corpus::{default_corpus, random_connected, DEFAULT_SEED};
use bei::graphs::{family_members, FamilySpec, Graph};
use bei::hilbert::{count_standard_monomials, hilbert_from_gb};
use bei::koszul::{betti_table, OracleOptions};
use bei::polyring::{edge_ideal_basis, DEFAULT_PRIME};
use bei::table::BettiTable;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn oracle(g: &Graph) -> BettiTable {
    betti_table(g, DEFAULT_PRIME, &OracleOptions::default()).unwrap()
}

#[test]
fn bounds_are_sound_on_the_corpus() {
    for g in default_corpus(DEFAULT_SEED) {
        let t = oracle(&g);
        let b = reg_bounds(&g);
        let reg = t.regularity();
        assert!(b.lower <= reg && reg <= b.upper, "{:?}: {} <= {reg} <= {}", g.edges(), b.lower, b.upper);
        assert!(t.dominates(&betti_lower_bounds(&g)), "{:?}", g.edges());
    }
}

#[test]
fn bounds_are_tight_on_family_members() {
    let mut members = vec![FamilySpec::Cycle { n: 4 }, FamilySpec::Cycle { n: 5 }];
    members.extend(family_members("t3", 5));
    members.extend(family_members("g3", 4));
    for spec in members {
        let g = spec.build().unwrap();
        let t = oracle(&g);
        assert_eq!(reg_bounds(&g).lower, g.n() - 2, "{spec}");
        assert_eq!(t.regularity(), g.n() - 2, "{spec}");
        assert_eq!(betti_lower_bounds(&g), closed_betti(&spec).unwrap(), "{spec}");
    }
}

#[test]
fn chorded_hexagon_contains_the_pentagon_table() {
    let mut edges: Vec<(usize, usize)> = (1..6).map(|i| (i, i + 1)).collect();
    edges.extend([(1, 6), (1, 3)]);
    let g = Graph::new(6, &edges).unwrap();
    let lower = betti_lower_bounds(&g);
    assert!(lower.dominates(&betti_cycle(5).unwrap()));
    let t = oracle(&g);
    assert!(t.dominates(&lower), "{:?}", t.diff(&lower));
    assert_eq!(t.get(2, 1), 2);
}

#[test]
fn standard_monomials_count_the_chain_groups() {
    // the degree-0 Koszul strand in degree d has dimension HF(d)
    let g = FamilySpec::Cycle { n: 5 }.build().unwrap();
    let basis = edge_ideal_basis(&g, DEFAULT_PRIME).unwrap();
    let series = hilbert_from_gb(&basis);
    let counts = count_standard_monomials(&basis.initial_ideal(), 10, 6);
    for (d, &c) in counts.iter().enumerate() {
        assert_eq!(series.hilbert_function(d), c.into(), "degree {d}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn low_betti_numbers_and_euler(seed in any::<u64>(), n in 2usize..=5, density in 0.1f64..0.9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_connected(&mut rng, n, density);
        let t = oracle(&g);
        prop_assert_eq!(t.get(1, 1), g.edge_count() as u128);
        prop_assert_eq!(t.get(2, 1), 2 * g.triangle_count() as u128);
        let series = hilbert_from_gb(&edge_ideal_basis(&g, DEFAULT_PRIME).unwrap());
        prop_assert_eq!(t.euler_polynomial(), series.numerator_over(2 * n as u32));
        prop_assert!(t.regularity() < n);
    }
}
