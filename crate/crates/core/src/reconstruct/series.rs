//! The four derived series of bipartite graphs obtained by replacing the
//! j-side by cliques of the clique system one level down or up, and their
//! stopping indices.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graphfam::BiGraph;

use super::flag::Flag;
use super::grassmann::CliqueSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Quantifier {
    /// adjacent to some member
    Exists,
    /// adjacent to every member
    Forall,
    /// some member adjacent, and along every line: none, one, or all
    Exists1,
    /// some member adjacent, and along every line: none, all but one, or all
    ForallMinus1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeriesKind {
    /// at-least graphs: ∃ / ∀ steps, ∃ stops at complete bipartite
    II,
    /// exact graphs: ∃₁ / ∀₋₁ steps, both stop at the empty graph
    III,
}

fn admissible(q: Quantifier, hits: usize, len: usize) -> bool {
    match q {
        Quantifier::Exists1 => hits <= 1 || hits == len,
        Quantifier::ForallMinus1 => hits == 0 || hits + 1 >= len,
        _ => unreachable!(),
    }
}

/// One step on raw rows: `rows[x]` is the neighbourhood of an i-vertex in
/// the current level, `cliques[c]` a clique of that level, `lines_of[c]`
/// the Grassmann lines inside clique c (only used by the type III
/// quantifiers).
pub fn step_rows(rows: &[BitSet], cliques: &[BitSet], lines_of: &[Vec<BitSet>], q: Quantifier) -> Vec<BitSet> {
    let nc = cliques.len();
    rows.par_iter()
        .map(|r| {
            BitSet::from_indices(
                nc,
                (0..nc).filter(|&c| match q {
                    Quantifier::Exists => r.intersects(&cliques[c]),
                    Quantifier::Forall => cliques[c].is_subset(r),
                    _ => {
                        r.intersects(&cliques[c])
                            && lines_of[c].iter().all(|l| admissible(q, r.and_count(l), l.count()))
                    }
                }),
            )
        })
        .collect()
}

/// One series step on a graph whose A side is the i-side and whose B side
/// carries the clique system `cs`; the new B side is the given class of
/// maximal cliques.
pub fn series_step(g: &BiGraph, cs: &CliqueSystem, class: u8, q: Quantifier) -> BiGraph {
    let cliques = cs.class(class);
    let lines_of: Vec<Vec<BitSet>> = cliques
        .iter()
        .map(|c| cs.lines.iter().filter(|l| l.is_subset(c)).cloned().collect())
        .collect();
    BiGraph::from_rows(cliques.len(), step_rows(g.rows(), &cliques, &lines_of, q))
}

/// Stopping indices (m₋∃, m₊∃, m₋∀, m₊∀) of the four series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StopIndices {
    pub minus_exists: usize,
    pub plus_exists: usize,
    pub minus_forall: usize,
    pub plus_forall: usize,
}

impl StopIndices {
    pub fn as_array(&self) -> [usize; 4] {
        [self.minus_exists, self.plus_exists, self.minus_forall, self.plus_forall]
    }

    /// The same series read in the dual flag.
    pub fn reversed(&self) -> StopIndices {
        StopIndices {
            minus_exists: self.plus_exists,
            plus_exists: self.minus_exists,
            minus_forall: self.plus_forall,
            plus_forall: self.minus_forall,
        }
    }

    /// (n, i, j, k) from the closed-form relations.
    pub fn parameters(&self) -> Option<(usize, i32, i32, i32)> {
        let k = self.minus_exists as i32 - 1;
        let nij = self.plus_exists as i32 - k;
        let j = self.minus_forall as i32 + k - 1;
        let i = self.plus_forall as i32 + k - 1;
        let n = nij + i + j;
        (n >= 2 && i >= 0 && j >= 0).then_some((n as usize, i, j, k))
    }
}

fn intersections(a: &[BitSet], b: &[BitSet]) -> Vec<Vec<BitSet>> {
    a.par_iter()
        .map(|x| {
            b.iter()
                .map(|y| x.and(y))
                .filter(|l| l.count() >= 2)
                .collect()
        })
        .collect()
}

fn is_complete(rows: &[BitSet]) -> bool {
    !rows.is_empty() && rows.iter().all(|r| r.count() == r.len())
}

fn is_empty(rows: &[BitSet]) -> bool {
    rows.iter().all(BitSet::is_empty)
}

/// Runs one series along the flag from the origin level, returning the
/// stopping index.
fn run_one(rows0: &[BitSet], flag: &Flag, kind: SeriesKind, minus: bool, exists: bool) -> Result<usize> {
    let q = match (kind, exists) {
        (SeriesKind::II, true) => Quantifier::Exists,
        (SeriesKind::II, false) => Quantifier::Forall,
        (SeriesKind::III, true) => Quantifier::Exists1,
        (SeriesKind::III, false) => Quantifier::ForallMinus1,
    };
    let nl = flag.levels();
    let mut rows = rows0.to_vec();
    let mut level = flag.origin();
    for m in 1.. {
        let next = if minus { level.checked_sub(1) } else { Some(level + 1).filter(|&t| t < nl) };
        let Some(next) = next else {
            return Err(Error::SeriesDiverged(m));
        };
        let cliques: Vec<BitSet> = if minus { flag.up(next).to_vec() } else { flag.down(next) };
        let lines_of = if kind == SeriesKind::III {
            // lines of the current level: below-element ∩ above-element
            let (below, above) = (level.checked_sub(1), Some(level + 1).filter(|&t| t < nl));
            let (Some(b), Some(a)) = (below, above) else {
                return Err(Error::SeriesDiverged(m));
            };
            let stars = flag.up(b).to_vec();
            let tops = flag.down(a);
            if minus {
                intersections(&stars, &tops)
            } else {
                intersections(&tops, &stars)
            }
        } else {
            Vec::new()
        };
        rows = step_rows(&rows, &cliques, &lines_of, q);
        level = next;
        let stop = match (kind, exists) {
            (SeriesKind::II, true) => is_complete(&rows).then_some(m),
            (SeriesKind::II, false) => is_empty(&rows).then_some(m),
            (SeriesKind::III, true) => is_empty(&rows).then_some(m - 1),
            (SeriesKind::III, false) => is_empty(&rows).then_some(m),
        };
        if let Some(s) = stop {
            return Ok(s);
        }
    }
    unreachable!()
}

/// All four stopping indices for the i-side neighbourhoods `rows0`, given
/// over the origin level of `flag`.
pub fn run_series(rows0: &[BitSet], flag: &Flag, kind: SeriesKind) -> Result<StopIndices> {
    Ok(StopIndices {
        minus_exists: run_one(rows0, flag, kind, true, true)?,
        plus_exists: run_one(rows0, flag, kind, false, true)?,
        minus_forall: run_one(rows0, flag, kind, true, false)?,
        plus_forall: run_one(rows0, flag, kind, false, false)?,
    })
}
