//! Matching an unknown bipartite graph against the family by invariants:
//! bipart sizes, degrees, and common-neighbour profiles.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::graphfam::{
    binomial, build_bigraph, BiGraph, FamilySpec, Mode, Side,
};
use crate::projgeom::gaussian_binomial;

/// Isomorphism invariant of a bipartite graph with a fixed side order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    sides: [SideFingerprint; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct SideFingerprint {
    size: usize,
    degrees: Vec<usize>,
    /// distinct sorted common-neighbour count vectors, one per vertex class
    profiles: BTreeSet<Vec<usize>>,
}

fn side_fingerprint(g: &BiGraph, side: Side, sample_only: bool) -> SideFingerprint {
    let n = g.nbhds(side);
    let mut degrees: Vec<usize> = n.iter().map(|r| r.count()).collect();
    degrees.sort_unstable();
    let verts: Vec<usize> = if sample_only { (0..n.len().min(1)).collect() } else { (0..n.len()).collect() };
    let profiles = verts
        .par_iter()
        .map(|&v| {
            let mut p: Vec<usize> = (0..n.len()).filter(|&w| w != v).map(|w| n[v].and_count(&n[w])).collect();
            p.sort_unstable();
            p
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    SideFingerprint {
        size: n.len(),
        degrees,
        profiles,
    }
}

impl Fingerprint {
    /// Full invariant (profiles of every vertex).
    pub fn of(g: &BiGraph) -> Fingerprint {
        Fingerprint {
            sides: [side_fingerprint(g, Side::A, false), side_fingerprint(g, Side::B, false)],
        }
    }

    /// Cheaper form for graphs known to be transitive on each side.
    pub fn of_transitive(g: &BiGraph) -> Fingerprint {
        Fingerprint {
            sides: [side_fingerprint(g, Side::A, true), side_fingerprint(g, Side::B, true)],
        }
    }

    pub fn swapped(&self) -> Fingerprint {
        Fingerprint {
            sides: [self.sides[1].clone(), self.sides[0].clone()],
        }
    }

    /// `Some(false)` if equal as is, `Some(true)` if equal after swapping
    /// sides.
    pub fn matches(&self, other: &Fingerprint) -> Option<bool> {
        if self == other {
            Some(false)
        } else if *self == other.swapped() {
            Some(true)
        } else {
            None
        }
    }
}

/// Candidate thick specs (already normalized, deduplicated) whose bipart
/// sizes are {na, nb}.
pub fn thick_candidates(na: usize, nb: usize, orders: &[u32]) -> Vec<FamilySpec> {
    let want = |x: u128, y: u128| (x == na as u128 && y == nb as u128) || (x == nb as u128 && y == na as u128);
    let top = na.max(nb) as u128;
    let mut out = BTreeSet::new();
    for &q in orders {
        let q64 = q as u64;
        for n in 2usize.. {
            if gaussian_binomial(n as u32 + 1, 1, q64) > top {
                break;
            }
            let sizes: Vec<u128> = (0..n).map(|d| gaussian_binomial(n as u32 + 1, d as u32 + 1, q64)).collect();
            for i in 0..n {
                for j in i..n {
                    if !want(sizes[i], sizes[j]) {
                        continue;
                    }
                    for k in -1..=i as i32 {
                        for mode in [Mode::Exact, Mode::AtLeast] {
                            let s = FamilySpec::thick(q, n, i as i32, j as i32, k, mode);
                            out.insert(s.normalize().0);
                        }
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Candidate thin specs in the determining range with bipart sizes {na, nb}.
pub fn thin_candidates(na: usize, nb: usize) -> Vec<FamilySpec> {
    let want = |x: u128, y: u128| (x == na as u128 && y == nb as u128) || (x == nb as u128 && y == na as u128);
    let mut out = BTreeSet::new();
    for n in 2..=na.max(nb).min(63) {
        for i in 1..=n / 2 {
            for j in i..=n / 2 {
                if !want(binomial(n as u32, i as u32), binomial(n as u32, j as u32)) {
                    continue;
                }
                for k in 0..=i as i32 {
                    for mode in [Mode::Exact, Mode::AtLeast] {
                        let s = FamilySpec::thin(n, i as i32, j as i32, k, mode);
                        if s.in_thin_scope() {
                            out.insert(s);
                        }
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

/// The candidates whose built graph has the same fingerprint as `fp`, with
/// whether the sides had to be swapped.
pub fn census_matches(fp: &Fingerprint, candidates: &[FamilySpec]) -> Vec<(FamilySpec, bool)> {
    candidates
        .iter()
        .filter_map(|s| {
            let built = build_bigraph(s).ok()?;
            let swapped = fp.matches(&Fingerprint::of_transitive(&built.graph))?;
            Some((*s, swapped))
        })
        .collect()
}
