//! Thin-case tools: common-neighbour tables of set-system graphs, graphs
//! derived from them, and the model of (ℓ−1)-sets of a (2ℓ−1)-set as
//! halving partitions of a 2ℓ-set.

use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graphfam::{build_bigraph, thin_subsets, BiGraph, FamilySpec, Side, SimpleGraph, Vertices};

/// For each overlap size t = 0..=j, the number of common neighbours of two
/// distinct j-sets meeting in t elements (`None` if no such pair exists).
/// Fails if the count is not constant over all pairs with the same overlap.
pub fn common_neighbor_table(spec: &FamilySpec) -> Result<Vec<Option<usize>>> {
    if !spec.is_thin() {
        return Err(Error::UnsupportedSpec(spec.to_string()));
    }
    let fg = build_bigraph(spec)?;
    let Vertices::Thin(sets) = &fg.b else { unreachable!() };
    let nb = fg.graph.cols();
    let j = spec.j as usize;
    let per_vertex: Vec<Vec<Option<usize>>> = (0..sets.len())
        .into_par_iter()
        .map(|x| {
            let mut row = vec![None; j + 1];
            for y in x + 1..sets.len() {
                let t = (sets[x] & sets[y]).count_ones() as usize;
                let c = nb[x].and_count(&nb[y]);
                match row[t] {
                    None => row[t] = Some(c),
                    Some(d) if d != c => return vec![Some(usize::MAX); j + 1],
                    _ => {}
                }
            }
            row
        })
        .collect();
    let mut table = vec![None; j + 1];
    for row in per_vertex {
        for (t, c) in row.into_iter().enumerate() {
            let Some(c) = c else { continue };
            match table[t] {
                _ if c == usize::MAX => {
                    return Err(Error::UnrecognizedStructure(format!("overlap {t}: count not constant")))
                }
                None => table[t] = Some(c),
                Some(d) if d != c => {
                    return Err(Error::UnrecognizedStructure(format!("overlap {t}: counts {d} and {c}")))
                }
                _ => {}
            }
        }
    }
    Ok(table)
}

/// Common neighbours of two j-sets meeting in t elements.
pub fn common_neighbor_profile(spec: &FamilySpec, t: usize) -> Result<usize> {
    common_neighbor_table(spec)?
        .get(t)
        .copied()
        .flatten()
        .ok_or_else(|| Error::InvalidSpec(format!("no two {}-sets meet in {t} elements", spec.j)))
}

/// Graph on one bipart: two vertices adjacent when their number of common
/// neighbours satisfies `pred`.
pub fn derived_relation_graph(g: &BiGraph, side: Side, pred: impl Fn(usize) -> bool + Sync) -> SimpleGraph {
    let n = g.nbhds(side);
    let adj: Vec<BitSet> = (0..n.len())
        .into_par_iter()
        .map(|x| BitSet::from_indices(n.len(), (0..n.len()).filter(|&y| y != x && pred(n[x].and_count(&n[y])))))
        .collect();
    SimpleGraph::from_adj(adj)
}

/// An (ℓ, ℓ)-partition of {0, …, 2ℓ−1}, stored as the half containing 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionVertex {
    half: u64,
    ell: usize,
}

impl PartitionVertex {
    pub fn new(part: u64, ell: usize) -> PartitionVertex {
        assert!(ell >= 1 && 2 * ell < 64 && part.count_ones() as usize == ell);
        let full = (1u64 << (2 * ell)) - 1;
        let half = if part & 1 == 1 { part } else { full & !part };
        PartitionVertex { half, ell }
    }

    pub fn half(&self) -> u64 {
        self.half
    }

    pub fn other_half(&self) -> u64 {
        ((1u64 << (2 * self.ell)) - 1) & !self.half
    }

    /// The (ℓ−1)-subset of {0, …, 2ℓ−2}: the half containing 2ℓ−1, minus it.
    pub fn to_set(&self) -> u64 {
        let top = 1u64 << (2 * self.ell - 1);
        let h = if self.half & top != 0 { self.half } else { self.other_half() };
        h & !top
    }

    pub fn from_set(s: u64, ell: usize) -> PartitionVertex {
        PartitionVertex::new(s | 1 << (2 * ell - 1), ell)
    }

    pub fn permuted(&self, sigma: &[usize]) -> PartitionVertex {
        let mut img = 0u64;
        for (x, &y) in sigma.iter().enumerate() {
            if self.half >> x & 1 == 1 {
                img |= 1 << y;
            }
        }
        PartitionVertex::new(img, self.ell)
    }

    /// The sizes {a, ℓ−a} of the meets of the halves, smaller first.
    pub fn crossing(&self, other: &PartitionVertex) -> (usize, usize) {
        let a = (self.half & other.half).count_ones() as usize;
        (a.min(self.ell - a), a.max(self.ell - a))
    }
}

/// The model for thin Γ^{2ℓ−1}_{ℓ−1,ℓ−1;k}: its vertices as partitions.
#[derive(Clone, Debug)]
pub struct PartitionModel {
    pub ell: usize,
    pub sets: Vec<u64>,
    pub parts: Vec<PartitionVertex>,
}

pub fn partition_model(ell: usize) -> Result<PartitionModel> {
    if !(2..32).contains(&ell) {
        return Err(Error::InvalidSpec(format!("ell = {ell}")));
    }
    let sets = thin_subsets(2 * ell - 1, ell - 1);
    let parts = sets.iter().map(|&s| PartitionVertex::from_set(s, ell)).collect();
    Ok(PartitionModel { ell, sets, parts })
}

impl PartitionModel {
    /// A generator of Sym(2ℓ) and a pair of sets whose exact-k adjacency it
    /// does not preserve; `None` if the adjacency is Sym(2ℓ)-invariant.
    pub fn invariance_witness(&self, k: usize) -> Option<(Vec<usize>, u64, u64)> {
        let m = 2 * self.ell;
        let mut t: Vec<usize> = (0..m).collect();
        t.swap(0, 1);
        let c: Vec<usize> = (0..m).map(|x| (x + 1) % m).collect();
        let adjacent = |a: u64, b: u64| (a & b).count_ones() as usize == k;
        for sigma in [t, c] {
            for (x, px) in self.sets.iter().zip(&self.parts) {
                let ix = px.permuted(&sigma).to_set();
                for (y, py) in self.sets.iter().zip(&self.parts) {
                    let iy = py.permuted(&sigma).to_set();
                    if adjacent(*x, *y) != adjacent(ix, iy) {
                        return Some((sigma, *x, *y));
                    }
                }
            }
        }
        None
    }

    /// All k < ℓ−1 (k = ℓ−1 is equality) for which the exact-k adjacency
    /// is Sym(2ℓ)-invariant.
    pub fn invariant_ks(&self) -> Vec<usize> {
        (0..self.ell - 1).filter(|&k| self.invariance_witness(k).is_none()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphfam::Mode;

    #[test]
    fn profiles() {
        let s = FamilySpec::thin(10, 3, 3, 0, Mode::Exact);
        assert_eq!(common_neighbor_table(&s).unwrap(), vec![Some(4), Some(10), Some(20), None]);
        let s = FamilySpec::thin(10, 3, 3, 2, Mode::Exact);
        assert_eq!(common_neighbor_table(&s).unwrap(), vec![Some(0), Some(4), Some(8), None]);
        let s = FamilySpec::thin(10, 3, 3, 2, Mode::AtLeast);
        assert_eq!(common_neighbor_table(&s).unwrap(), vec![Some(0), Some(4), Some(10), None]);
    }

    #[test]
    fn derived_graphs() {
        let g = build_bigraph(&FamilySpec::thin(10, 3, 3, 1, Mode::Exact)).unwrap().graph;
        let d = derived_relation_graph(&g, Side::A, |c| c == 30);
        assert_eq!(d.srg_parameters(), Some((120, 63, 30, 36)));
        let all = derived_relation_graph(&g, Side::A, |_| true);
        assert_eq!(all.valence(), Some(119));
    }

    #[test]
    fn partitions() {
        let m = partition_model(4).unwrap();
        assert_eq!(m.sets.len(), 35);
        for (s, p) in m.sets.iter().zip(&m.parts) {
            assert_eq!(p.to_set(), *s);
            assert_eq!(p.half() & 1, 1);
        }
        // sets meeting in m elements give halves meeting in m+1 and ℓ−m−1
        let (a, b) = (m.parts[0], m.parts[1]);
        let t = (m.sets[0] & m.sets[1]).count_ones() as usize;
        assert_eq!(a.crossing(&b), ((t + 1).min(3 - t), (t + 1).max(3 - t)));
        assert_eq!(m.invariant_ks(), vec![1]);
        assert!(m.invariance_witness(0).is_some());
        assert!(partition_model(3).unwrap().invariant_ks().is_empty());
    }
}
