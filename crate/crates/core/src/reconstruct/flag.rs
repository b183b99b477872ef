//! A chain of consecutive "levels" of subspaces with incidence between
//! neighbouring levels, recovered purely from graph data and extended
//! until both ends are single elements (the empty space and the whole
//! space).

use std::collections::{HashMap, HashSet};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graphfam::{BiGraph, Side, SimpleGraph};

use super::grassmann::maximal_cliques;

#[derive(Clone, Debug)]
pub struct Flag {
    sizes: Vec<usize>,
    /// `up[t][x]`: elements of level t+1 incident with element x of level t.
    up: Vec<Vec<BitSet>>,
    /// Index of the level that holds the vertices of the input side.
    origin: usize,
}

fn transpose(rows: &[BitSet], width: usize) -> Vec<BitSet> {
    let mut out = vec![BitSet::new(rows.len()); width];
    for (x, r) in rows.iter().enumerate() {
        for y in r.iter() {
            out[y].insert(x);
        }
    }
    out
}

impl Flag {
    /// Three levels from a clique system: the class-0 cliques below the
    /// side, the class-1 cliques above it.
    pub fn from_classes(nv: usize, below: Vec<BitSet>, above: Vec<BitSet>) -> Flag {
        let up_mid = transpose(&above, nv);
        Flag {
            sizes: vec![below.len(), nv, above.len()],
            up: vec![below, up_mid],
            origin: 1,
        }
    }

    /// Levels from nested subsets of a ground set, grouped by size; each
    /// group must be strictly larger than the previous one and consecutive
    /// groups are related by inclusion.
    pub fn from_chain(groups: Vec<Vec<BitSet>>, origin: usize) -> Flag {
        let sizes = groups.iter().map(Vec::len).collect();
        let up = groups
            .windows(2)
            .map(|w| {
                w[0].iter()
                    .map(|x| BitSet::from_indices(w[1].len(), (0..w[1].len()).filter(|&y| x.is_subset(&w[1][y]))))
                    .collect()
            })
            .collect();
        Flag { sizes, up, origin }
    }

    pub fn levels(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn origin(&self) -> usize {
        self.origin
    }

    /// Elements of level t+1 above each element of level t.
    pub fn up(&self, t: usize) -> &[BitSet] {
        &self.up[t]
    }

    /// Elements of level t−1 below each element of level t.
    pub fn down(&self, t: usize) -> Vec<BitSet> {
        transpose(&self.up[t - 1], self.sizes[t])
    }

    /// Reverses the order of levels (the dual flag).
    pub fn reversed(&self) -> Flag {
        let nl = self.sizes.len();
        let mut up = Vec::with_capacity(nl - 1);
        for t in (1..nl).rev() {
            up.push(self.down(t));
        }
        Flag {
            sizes: self.sizes.iter().rev().copied().collect(),
            up,
            origin: nl - 1 - self.origin,
        }
    }

    fn grassmann(members_of: &[BitSet], nx: usize) -> SimpleGraph {
        // x ~ x' when both lie in a common element of the neighbouring level
        let mut adj = vec![BitSet::new(nx); nx];
        for m in members_of {
            for x in m.iter() {
                adj[x].or_with(m);
            }
        }
        for (x, a) in adj.iter_mut().enumerate() {
            a.remove(x);
        }
        SimpleGraph::from_adj(adj)
    }

    /// New level next to a boundary level: the maximal cliques of that
    /// level's Grassmann graph that are not already represented by the
    /// neighbouring level.
    fn new_level(members_of: &[BitSet], nx: usize) -> Result<Vec<BitSet>> {
        let g = Self::grassmann(members_of, nx);
        // each element lies in r neighbouring elements of a common size s
        // that pairwise share only it, so its degree is r(s − 1)
        let s = members_of.first().map(BitSet::count).unwrap_or(0);
        let mut r = vec![0usize; nx];
        for m in members_of {
            if m.count() != s {
                return Err(Error::NotGrassmann("irregular level".into()));
            }
            for x in m.iter() {
                r[x] += 1;
            }
        }
        if s < 2 || (0..nx).any(|x| r[x] != r[0] || g.nbhd(x).count() != r[x] * (s - 1)) {
            return Err(Error::NotGrassmann("irregular level".into()));
        }
        let known: HashSet<&BitSet> = members_of.iter().collect();
        let (cliques, _) = maximal_cliques(&g).ok_or_else(|| Error::NotGrassmann("level is not Grassmann".into()))?;
        let fresh: Vec<BitSet> = cliques.into_iter().filter(|c| !known.contains(c)).collect();
        if fresh.is_empty() {
            return Err(Error::NotGrassmann("level cannot be extended".into()));
        }
        Ok(fresh)
    }

    /// Adds one level below the bottom. Returns false at a one-element level.
    pub fn extend_down(&mut self) -> Result<bool> {
        if self.sizes[0] <= 1 {
            return Ok(false);
        }
        let members_of = self.down(1);
        let fresh = Self::new_level(&members_of, self.sizes[0])?;
        self.sizes.insert(0, fresh.len());
        self.up.insert(0, fresh);
        self.origin += 1;
        Ok(true)
    }

    /// Adds one level above the top. Returns false at a one-element level.
    pub fn extend_up(&mut self) -> Result<bool> {
        let top = self.sizes.len() - 1;
        if self.sizes[top] <= 1 {
            return Ok(false);
        }
        let members_of = self.up[top - 1].clone();
        let fresh = Self::new_level(&members_of, self.sizes[top])?;
        self.sizes.push(fresh.len());
        self.up.push(transpose(&fresh, self.sizes[top]));
        Ok(true)
    }

    /// Extends both ends until they are single elements.
    pub fn complete(&mut self, max_levels: usize) -> Result<()> {
        while self.extend_down()? {
            if self.levels() > max_levels {
                return Err(Error::SeriesDiverged(max_levels));
            }
        }
        while self.extend_up()? {
            if self.levels() > max_levels {
                return Err(Error::SeriesDiverged(max_levels));
            }
        }
        Ok(())
    }

    /// Whether each pair of consecutive levels is biregular, as it is for
    /// any geometric flag.
    pub fn is_biregular(&self) -> bool {
        self.up.iter().enumerate().all(|(t, rows)| {
            let mut col = vec![0usize; self.sizes[t + 1]];
            for r in rows {
                for y in r.iter() {
                    col[y] += 1;
                }
            }
            let r0 = rows.first().map(BitSet::count);
            rows.iter().all(|r| Some(r.count()) == r0) && col.iter().all(|&c| c == col[0] && c > 0)
        })
    }

    /// Projective dimension of the space when both ends are complete.
    pub fn ambient_dim(&self) -> Option<usize> {
        let nl = self.sizes.len();
        (nl >= 3 && self.sizes[0] == 1 && self.sizes[nl - 1] == 1).then(|| nl - 2)
    }
}

/// All nonempty intersections of neighbourhoods of `side` vertices,
/// grouped by size (ascending). For a containment graph these are the
/// subspaces between the two dimensions.
pub fn neighbourhood_closure(g: &BiGraph, side: Side, cap: usize) -> Result<Vec<Vec<BitSet>>> {
    let n = g.nbhds(side);
    let mut seen: HashSet<BitSet> = n.iter().cloned().collect();
    let mut frontier: Vec<BitSet> = seen.iter().cloned().collect();
    frontier.sort();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for nb in n {
                let x = s.and(nb);
                if !x.is_empty() && !seen.contains(&x) {
                    seen.insert(x.clone());
                    next.push(x);
                    if seen.len() > cap {
                        return Err(Error::TooLarge {
                            count: seen.len() as u64,
                            cap: cap as u64,
                        });
                    }
                }
            }
        }
        next.sort();
        frontier = next;
    }
    let mut by_size: HashMap<usize, Vec<BitSet>> = HashMap::new();
    for s in seen {
        by_size.entry(s.count()).or_default().push(s);
    }
    let mut groups: Vec<(usize, Vec<BitSet>)> = by_size.into_iter().collect();
    groups.sort_by_key(|(c, _)| *c);
    Ok(groups
        .into_iter()
        .map(|(_, mut v)| {
            v.sort();
            v
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphfam::{build_bigraph, FamilySpec, Mode};

    #[test]
    fn containment_closure_gives_all_levels() {
        // points vs planes of PG(3,2): points, lines, planes
        let g = build_bigraph(&FamilySpec::thick(2, 3, 0, 2, 0, Mode::Exact)).unwrap();
        let groups = neighbourhood_closure(&g.graph, Side::B, 10_000).unwrap();
        let sizes: Vec<usize> = groups.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![15, 35, 15]);
        let mut f = Flag::from_chain(groups, 2);
        f.complete(16).unwrap();
        assert_eq!(f.sizes(), &[1, 15, 35, 15, 1]);
        assert_eq!(f.ambient_dim(), Some(3));
        assert_eq!(f.reversed().sizes(), &[1, 15, 35, 15, 1]);
    }

    #[test]
    fn extension_from_line_level() {
        let g = build_bigraph(&FamilySpec::thick(2, 4, 1, 2, 1, Mode::Exact)).unwrap();
        let groups = neighbourhood_closure(&g.graph, Side::B, 10_000).unwrap();
        assert_eq!(groups.len(), 2);
        let mut f = Flag::from_chain(groups, 1);
        f.complete(16).unwrap();
        assert_eq!(f.sizes(), &[1, 31, 155, 155, 31, 1]);
    }
}
