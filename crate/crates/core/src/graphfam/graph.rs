use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;

/// Bipartite graph between sides A (rows) and B (columns). Adjacency is
/// kept in both orientations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiGraph {
    rows: Vec<BitSet>,
    cols: Vec<BitSet>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shape {
    Empty,
    CompleteBipartite,
    Matching,
    ComplementOfMatching,
    Nontrivial,
}

impl BiGraph {
    pub fn from_rows(nb: usize, rows: Vec<BitSet>) -> BiGraph {
        let mut cols = vec![BitSet::new(rows.len()); nb];
        for (a, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), nb);
            for b in r.iter() {
                cols[b].insert(a);
            }
        }
        BiGraph { rows, cols }
    }

    pub fn from_fn(na: usize, nb: usize, adj: impl Fn(usize, usize) -> bool) -> BiGraph {
        let rows = (0..na)
            .map(|a| BitSet::from_indices(nb, (0..nb).filter(|&b| adj(a, b))))
            .collect();
        BiGraph::from_rows(nb, rows)
    }

    #[inline]
    pub fn na(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn nb(&self) -> usize {
        self.cols.len()
    }

    pub fn size(&self, side: Side) -> usize {
        match side {
            Side::A => self.na(),
            Side::B => self.nb(),
        }
    }

    #[inline]
    pub fn adj(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    #[inline]
    pub fn row(&self, a: usize) -> &BitSet {
        &self.rows[a]
    }

    #[inline]
    pub fn col(&self, b: usize) -> &BitSet {
        &self.cols[b]
    }

    pub fn rows(&self) -> &[BitSet] {
        &self.rows
    }

    pub fn cols(&self) -> &[BitSet] {
        &self.cols
    }

    /// Neighborhoods of the vertices on `side`.
    pub fn nbhds(&self, side: Side) -> &[BitSet] {
        match side {
            Side::A => &self.rows,
            Side::B => &self.cols,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum()
    }

    pub fn degrees(&self, side: Side) -> Vec<usize> {
        self.nbhds(side).iter().map(BitSet::count).collect()
    }

    /// Common degree of `side`, if all its vertices share one.
    pub fn valence(&self, side: Side) -> Option<usize> {
        let d = self.degrees(side);
        match d.first() {
            Some(&x) if d.iter().all(|&y| y == x) => Some(x),
            Some(_) => None,
            None => Some(0),
        }
    }

    pub fn bivalence(&self) -> Option<(usize, usize)> {
        Some((self.valence(Side::A)?, self.valence(Side::B)?))
    }

    pub fn transpose(&self) -> BiGraph {
        BiGraph {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
        }
    }

    pub fn complement(&self) -> BiGraph {
        BiGraph {
            rows: self.rows.iter().map(BitSet::complement).collect(),
            cols: self.cols.iter().map(BitSet::complement).collect(),
        }
    }

    pub fn classify_trivial(&self) -> Shape {
        let (na, nb) = (self.na(), self.nb());
        let e = self.edge_count();
        if e == 0 {
            Shape::Empty
        } else if e == na * nb {
            Shape::CompleteBipartite
        } else if na == nb && self.rows.iter().chain(&self.cols).all(|r| r.count() == 1) {
            Shape::Matching
        } else if na == nb
            && self
                .rows
                .iter()
                .chain(&self.cols)
                .all(|r| r.count() + 1 == r.len())
        {
            Shape::ComplementOfMatching
        } else {
            Shape::Nontrivial
        }
    }

    pub fn twin_free(&self) -> bool {
        [Side::A, Side::B].into_iter().all(|s| {
            let mut v: Vec<&BitSet> = self.nbhds(s).iter().collect();
            v.sort_unstable();
            v.windows(2).all(|w| w[0] != w[1])
        })
    }

    /// |Γ(v1) \ Γ(v2)| for two distinct vertices on the same side.
    pub fn distinguishing_neighbors(&self, side: Side, v1: usize, v2: usize) -> usize {
        assert_ne!(v1, v2, "distinguishing_neighbors needs distinct vertices");
        let n = self.nbhds(side);
        n[v1].count() - n[v1].and_count(&n[v2])
    }

    /// Minimum of `distinguishing_neighbors` over all ordered same-side pairs.
    pub fn min_distinguishing(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in [Side::A, Side::B] {
            let n = self.nbhds(s);
            for x in 0..n.len() {
                for y in 0..n.len() {
                    if x != y {
                        let d = n[x].count() - n[x].and_count(&n[y]);
                        best = Some(best.map_or(d, |b| b.min(d)));
                    }
                }
            }
        }
        best
    }

    /// The graph on A ∪ B (A first) as a simple graph.
    pub fn to_simple(&self) -> SimpleGraph {
        let (na, nb) = (self.na(), self.nb());
        let mut adj = Vec::with_capacity(na + nb);
        for r in &self.rows {
            adj.push(BitSet::from_indices(na + nb, r.iter().map(|b| na + b)));
        }
        for c in &self.cols {
            adj.push(BitSet::from_indices(na + nb, c.iter()));
        }
        SimpleGraph { adj }
    }
}

/// Undirected graph without loops.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    adj: Vec<BitSet>,
}

impl SimpleGraph {
    pub fn from_adj(adj: Vec<BitSet>) -> SimpleGraph {
        for (v, r) in adj.iter().enumerate() {
            assert!(!r.contains(v), "loop at {v}");
            for w in r.iter() {
                assert!(adj[w].contains(v), "asymmetric edge {v}-{w}");
            }
        }
        SimpleGraph { adj }
    }

    pub fn from_fn(nv: usize, adj: impl Fn(usize, usize) -> bool) -> SimpleGraph {
        SimpleGraph::from_adj(
            (0..nv)
                .map(|v| BitSet::from_indices(nv, (0..nv).filter(|&w| w != v && adj(v, w))))
                .collect(),
        )
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn adj(&self, v: usize, w: usize) -> bool {
        self.adj[v].contains(w)
    }

    #[inline]
    pub fn nbhd(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn nbhds(&self) -> &[BitSet] {
        &self.adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(BitSet::count).collect()
    }

    pub fn valence(&self) -> Option<usize> {
        let d = self.degrees();
        match d.first() {
            Some(&x) if d.iter().all(|&y| y == x) => Some(x),
            Some(_) => None,
            None => Some(0),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::count).sum::<usize>() / 2
    }

    pub fn complement(&self) -> SimpleGraph {
        SimpleGraph {
            adj: self
                .adj
                .iter()
                .enumerate()
                .map(|(v, r)| {
                    let mut c = r.complement();
                    c.remove(v);
                    c
                })
                .collect(),
        }
    }

    /// Two copies of the vertex set with cross edges where adjacent, and
    /// additionally between the two copies of each vertex when `extended`.
    pub fn bipartite_double(&self, extended: bool) -> BiGraph {
        let rows = self
            .adj
            .iter()
            .enumerate()
            .map(|(v, r)| {
                let mut r = r.clone();
                if extended {
                    r.insert(v);
                }
                r
            })
            .collect();
        BiGraph::from_rows(self.order(), rows)
    }

    /// Parameters (v, k, λ, μ) if the graph is strongly regular.
    pub fn srg_parameters(&self) -> Option<(usize, usize, usize, usize)> {
        let k = self.valence()?;
        let (mut lambda, mut mu) = (None, None);
        for v in 0..self.order() {
            for w in v + 1..self.order() {
                let c = self.adj[v].and_count(&self.adj[w]);
                let slot = if self.adj(v, w) { &mut lambda } else { &mut mu };
                match *slot {
                    None => *slot = Some(c),
                    Some(x) if x != c => return None,
                    _ => {}
                }
            }
        }
        Some((self.order(), k, lambda.unwrap_or(0), mu.unwrap_or(0)))
    }
}
