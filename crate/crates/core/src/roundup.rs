//! Graph-theoretic round-up triples and quadruples, the (min) poset
//! property, and geometric regularity oracles.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::graphfam::{BiGraph, Side};
use crate::projgeom::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TripleVerdict {
    pub is_roundup: bool,
    pub witness_common: Option<usize>,
    pub violator: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuadVerdict {
    pub is_roundup: bool,
    pub witness: Option<usize>,
    pub violator: Option<usize>,
}

fn check_distinct(g: &BiGraph, side: Side, vs: &[usize]) -> Result<()> {
    let n = g.size(side);
    for (x, &a) in vs.iter().enumerate() {
        if a >= n {
            return Err(Error::PreconditionViolation(format!("vertex {a} out of range")));
        }
        if vs[..x].contains(&a) {
            return Err(Error::PreconditionViolation(format!("repeated vertex {a}")));
        }
    }
    Ok(())
}

/// Opposite-side vertices adjacent to exactly two, and to all three.
fn triple_sets(n: &[BitSet], t: [usize; 3]) -> (BitSet, BitSet) {
    let (a, b, c) = (&n[t[0]], &n[t[1]], &n[t[2]]);
    let ab = a.and(b);
    let all = ab.and(c);
    let mut two = ab.or(&a.and(c));
    two.or_with(&b.and(c));
    two.and_not_with(&all);
    (two, all)
}

pub fn triple_verdict(g: &BiGraph, side: Side, t: [usize; 3]) -> Result<TripleVerdict> {
    check_distinct(g, side, &t)?;
    let (two, all) = triple_sets(g.nbhds(side), t);
    let violator = two.first();
    let witness_common = all.first();
    Ok(TripleVerdict {
        is_roundup: violator.is_none() && witness_common.is_some(),
        witness_common,
        violator,
    })
}

/// Fast boolean form of `triple_verdict` without validation.
#[inline]
pub fn is_roundup_triple(n: &[BitSet], t: [usize; 3]) -> bool {
    let (two, all) = triple_sets(n, t);
    two.is_empty() && !all.is_empty()
}

fn quad_sets(n: &[BitSet], t: [usize; 4]) -> (BitSet, BitSet) {
    // bit-sliced counters: ≥1, ≥2, ≥3
    let len = n[t[0]].len();
    let mut ge1 = BitSet::new(len);
    let mut ge2 = BitSet::new(len);
    let mut ge3 = BitSet::new(len);
    for &v in &t {
        let x = &n[v];
        ge3.or_with(&ge2.and(x));
        ge2.or_with(&ge1.and(x));
        ge1.or_with(x);
    }
    let exactly_two = ge2.and_not(&ge3);
    (exactly_two, ge3)
}

pub fn quad_verdict(g: &BiGraph, side: Side, t: [usize; 4]) -> Result<QuadVerdict> {
    check_distinct(g, side, &t)?;
    let (two, three) = quad_sets(g.nbhds(side), t);
    let violator = two.first();
    let witness = three.first();
    Ok(QuadVerdict {
        is_roundup: violator.is_none() && witness.is_some(),
        witness,
        violator,
    })
}

#[inline]
pub fn is_roundup_quad(n: &[BitSet], t: [usize; 4]) -> bool {
    let (two, three) = quad_sets(n, t);
    two.is_empty() && !three.is_empty()
}

fn regular(f: &FieldSpec, vs: &[&Subspace]) -> Result<bool> {
    let j = vs[0].pdim();
    for (x, v) in vs.iter().enumerate() {
        if v.ambient_dim() != vs[0].ambient_dim() || v.field_order() != vs[0].field_order() {
            return Err(Error::AmbientMismatch);
        }
        if v.pdim() != j {
            return Err(Error::DimensionMismatch("unequal dimensions".into()));
        }
        if vs[..x].contains(v) {
            return Ok(false);
        }
    }
    let mut meet = vs[0].clone();
    let mut join = vs[0].clone();
    for v in &vs[1..] {
        meet = meet.meet(f, v)?;
        join = join.join(f, v)?;
    }
    Ok(meet.pdim() == j - 1 && join.pdim() == j + 1)
}

/// Three distinct j-spaces through a common (j−1)-space spanning a (j+1)-space.
pub fn is_regular_triple(f: &FieldSpec, t: [&Subspace; 3]) -> Result<bool> {
    regular(f, &t)
}

pub fn is_regular_quad(f: &FieldSpec, t: [&Subspace; 4]) -> Result<bool> {
    regular(f, &t)
}

/// All round-up triples on `side`, each sorted ascending, in lexicographic
/// order. A third member must be adjacent to every common neighbor of the
/// first two, which prunes the search to a bitset intersection.
pub fn roundup_triples(g: &BiGraph, side: Side) -> Vec<[usize; 3]> {
    let n = g.nbhds(side);
    let opp = g.nbhds(side.other());
    let nv = n.len();
    (0..nv)
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut out = Vec::new();
            for b in a + 1..nv {
                let common = n[a].and(&n[b]);
                if common.is_empty() {
                    continue;
                }
                let mut cand = BitSet::full(nv);
                for x in common.iter() {
                    cand.and_with(&opp[x]);
                    if cand.count() <= 2 {
                        break;
                    }
                }
                for c in cand.iter().filter(|&c| c > b) {
                    if is_roundup_triple(n, [a, b, c]) {
                        out.push([a, b, c]);
                    }
                }
            }
            out
        })
        .collect()
}

/// Whether the neighborhood family F(v) = {Γ(v) ∩ Γ(w) : w ≠ v} satisfies
/// the (min) poset property.
pub fn satisfies_min(g: &BiGraph, side: Side, v: usize) -> bool {
    let n = g.nbhds(side);
    let set: HashSet<BitSet> = (0..n.len())
        .filter(|&w| w != v)
        .map(|w| n[v].and(&n[w]))
        .collect();
    let mut fam: Vec<BitSet> = set.iter().cloned().collect();
    fam.sort();
    let maximal: Vec<&BitSet> = fam
        .iter()
        .filter(|x| !fam.iter().any(|y| y != *x && x.is_subset(y)))
        .collect();
    // (c) holds in any finite poset; (b) every two maximal elements have a glb
    let glb = |x: &BitSet, y: &BitSet| -> Option<BitSet> {
        let meet = x.and(y);
        if set.contains(&meet) {
            return Some(meet);
        }
        let mut union: Option<BitSet> = None;
        for z in fam.iter().filter(|z| z.is_subset(&meet)) {
            match union.as_mut() {
                Some(u) => u.or_with(z),
                None => union = Some(z.clone()),
            }
        }
        union.filter(|u| set.contains(u))
    };
    for (a, x) in maximal.iter().enumerate() {
        for y in &maximal[a + 1..] {
            if glb(x, y).is_none() {
                return false;
            }
        }
    }
    // (a) any glb that exists is the intersection
    (0..fam.len()).into_par_iter().all(|a| {
        fam[a + 1..].iter().all(|y| match glb(&fam[a], y) {
            Some(m) => m == fam[a].and(y),
            None => true,
        })
    })
}

/// True iff every vertex u is Γ(v) ∩ Γ(w) = {u} for some opposite v, w.
pub fn every_vertex_is_pair_intersection(g: &BiGraph) -> bool {
    [Side::A, Side::B].into_iter().all(|s| {
        let n = g.nbhds(s);
        let target = g.size(s.other());
        let hit = (0..n.len())
            .into_par_iter()
            .fold(
                || BitSet::new(target),
                |mut acc, a| {
                    for b in a + 1..n.len() {
                        if n[a].and_count(&n[b]) == 1 {
                            acc.insert(n[a].and(&n[b]).first().unwrap());
                        }
                    }
                    acc
                },
            )
            .reduce(|| BitSet::new(target), |a, b| a.or(&b));
        hit.count() == target
    })
}
