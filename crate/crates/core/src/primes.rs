//! Minimal primes of `J_G`. They are indexed by the cut-sets `T` of `G`
//! (`T = ∅`, or every `i ∈ T` joins components when put back), and the
//! prime for `T` has height `n - c(T) + |T|`, where `c(T)` counts the
//! components of `G` with `T` removed.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{Graph, VertexSet};

/// Largest `n` for the exhaustive subset enumeration.
pub const PRIMES_MAX_VERTICES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeComponent {
    #[serde(rename = "cutSet", serialize_with = "as_list")]
    pub cut_set: VertexSet,
    #[serde(serialize_with = "as_lists")]
    pub components: Vec<VertexSet>,
    pub height: usize,
}

fn as_list<S: serde::Serializer>(v: &VertexSet, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter())
}

fn as_lists<S: serde::Serializer>(v: &[VertexSet], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_vec()))
}

/// `c(T)` for every `T`, indexed by the bitmask of `T`.
fn component_counts(g: &Graph) -> Vec<u8> {
    let n = g.n();
    let adj: Vec<u32> = (1..=n).map(|v| g.neighbors(v).0 as u32).collect();
    let full: u32 = (1u32 << n) - 1;
    (0..1u32 << n)
        .map(|removed| {
            let mut rest = full & !removed;
            let mut count = 0u8;
            while rest != 0 {
                let mut comp = rest & rest.wrapping_neg();
                let mut frontier = comp;
                while frontier != 0 {
                    let mut next = 0u32;
                    let mut f = frontier;
                    while f != 0 {
                        next |= adj[f.trailing_zeros() as usize];
                        f &= f - 1;
                    }
                    frontier = next & rest & !comp;
                    comp |= frontier;
                }
                rest &= !comp;
                count += 1;
            }
            count
        })
        .collect()
}

/// All minimal primes, ordered by `|T|` and then by the sorted vertex list
/// of `T`. For a disconnected graph the same description applies with
/// `c(∅)` equal to the number of components.
pub fn minimal_primes(g: &Graph) -> Result<Vec<PrimeComponent>> {
    let n = g.n();
    if n > PRIMES_MAX_VERTICES {
        return Err(Error::EnumerationCap {
            n,
            cap: PRIMES_MAX_VERTICES,
        });
    }
    let counts = component_counts(g);
    let mut out: Vec<PrimeComponent> = (0..counts.len() as u32)
        .filter(|&t| {
            let c = counts[t as usize];
            let mut bits = t;
            while bits != 0 {
                let i = bits & bits.wrapping_neg();
                if counts[(t & !i) as usize] >= c {
                    return false;
                }
                bits &= !i;
            }
            true
        })
        .map(|t| {
            let cut_set = VertexSet(t as u64);
            PrimeComponent {
                cut_set,
                components: g.connected_components(cut_set),
                height: n - counts[t as usize] as usize + cut_set.len(),
            }
        })
        .collect();
    out.sort_by(|a, b| {
        (a.cut_set.len(), a.cut_set.to_vec()).cmp(&(b.cut_set.len(), b.cut_set.to_vec()))
    });
    Ok(out)
}

/// `dim S/J_G = 2n - min height`.
pub fn krull_dim(g: &Graph) -> Result<usize> {
    let primes = minimal_primes(g)?;
    let min_height = primes.iter().map(|p| p.height).min().unwrap_or(0);
    Ok(2 * g.n() - min_height)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::FamilySpec;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn build(spec: FamilySpec) -> Graph {
        spec.build().unwrap()
    }

    #[test]
    fn examples() {
        let tri = minimal_primes(&build(FamilySpec::Cycle { n: 3 })).unwrap();
        assert_eq!(tri.len(), 1);
        assert_eq!((tri[0].cut_set, tri[0].height), (VertexSet::EMPTY, 2));

        let line = minimal_primes(&build(FamilySpec::Line { n: 3 })).unwrap();
        let cuts: Vec<_> = line.iter().map(|p| (p.cut_set, p.height)).collect();
        assert_eq!(cuts, vec![(VertexSet::EMPTY, 2), (set(&[2]), 2)]);
        assert_eq!(line[1].components, vec![set(&[1]), set(&[3])]);

        let c4 = minimal_primes(&build(FamilySpec::Cycle { n: 4 })).unwrap();
        let cuts: Vec<_> = c4.iter().map(|p| (p.cut_set, p.height)).collect();
        assert_eq!(cuts, vec![(VertexSet::EMPTY, 3), (set(&[1, 3]), 4), (set(&[2, 4]), 4)]);
    }

    #[test]
    fn dimensions() {
        assert_eq!(krull_dim(&build(FamilySpec::Cycle { n: 3 })).unwrap(), 4);
        assert_eq!(krull_dim(&build(FamilySpec::Cycle { n: 5 })).unwrap(), 6);
        assert_eq!(krull_dim(&build(FamilySpec::T3 { r: 3, s: 1, t: 1 })).unwrap(), 7);
        assert_eq!(krull_dim(&build(FamilySpec::G3 { r: 2, s: 2, t: 1 })).unwrap(), 6);
        assert_eq!(krull_dim(&build(FamilySpec::Complete { n: 5 })).unwrap(), 6);
    }

    #[test]
    fn agrees_with_graph_predicate() {
        let g = build(FamilySpec::T3 { r: 3, s: 2, t: 2 });
        let primes = minimal_primes(&g).unwrap();
        let from_scan: Vec<VertexSet> = primes.iter().map(|p| p.cut_set).collect();
        let mut brute: Vec<VertexSet> =
            (0..1u64 << g.n()).map(VertexSet).filter(|&t| g.is_cut_set(t)).collect();
        brute.sort_by_key(|t| (t.len(), t.to_vec()));
        assert_eq!(from_scan, brute);
        for p in &primes {
            assert_eq!(p.components, g.connected_components(p.cut_set));
        }
    }

    #[test]
    fn free_vertices_avoid_cut_sets() {
        for spec in [FamilySpec::T3 { r: 2, s: 2, t: 3 }, FamilySpec::G3 { r: 2, s: 1, t: 2 }, FamilySpec::Line { n: 6 }] {
            let g = build(spec);
            let free = g.free_vertices();
            for p in minimal_primes(&g).unwrap() {
                assert!(p.cut_set.intersection(free).is_empty(), "{spec}");
            }
        }
    }

    #[test]
    fn disconnected_and_caps() {
        let g = Graph::new(4, &[(1, 2), (3, 4)]).unwrap();
        let primes = minimal_primes(&g).unwrap();
        assert_eq!(primes.len(), 1);
        assert_eq!(primes[0].height, 2);
        assert_eq!(krull_dim(&g).unwrap(), 6);
        let big = build(FamilySpec::Line { n: 25 });
        assert!(matches!(minimal_primes(&big), Err(Error::EnumerationCap { n: 25, cap: 24 })));
    }

    #[test]
    fn json_shape() {
        let line = minimal_primes(&build(FamilySpec::Line { n: 3 })).unwrap();
        assert_eq!(
            serde_json::to_string(&line[1]).unwrap(),
            r#"{"cutSet":[2],"components":[[1],[3]],"height":2}"#
        );
    }
}
