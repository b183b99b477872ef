//! The Grassmann graph Γ₁ recovered from round-up tuples, its maximal
//! cliques, and their two classes.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graphfam::{BiGraph, Side, SimpleGraph};
use crate::roundup::{is_roundup_quad, roundup_triples};

/// Γ₁ on `side`: adjacency = contained in a common round-up triple (or
/// quadruple when `use_quads`).
pub fn grassmann_from_roundups(g: &BiGraph, side: Side, use_quads: bool) -> Result<SimpleGraph> {
    let nv = g.size(side);
    let mut adj = vec![BitSet::new(nv); nv];
    if use_quads {
        let pairs = roundup_quad_pairs(g, side).ok_or(Error::NoRoundups("quadruples"))?;
        for (a, b) in pairs {
            adj[a].insert(b);
            adj[b].insert(a);
        }
    } else {
        let triples = roundup_triples(g, side);
        if triples.is_empty() {
            return Err(Error::NoRoundups("triples"));
        }
        for [a, b, c] in triples {
            for (x, y) in [(a, b), (a, c), (b, c)] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
    }
    Ok(SimpleGraph::from_adj(adj))
}

/// Pairs contained in round-up quadruples. All pairs of a round-up
/// quadruple share one neighborhood-overlap count, so the count is read off
/// from a quadruple through vertex 0 and the scan is restricted to pairs
/// with that count; each pair is then confirmed by an actual quadruple.
fn roundup_quad_pairs(g: &BiGraph, side: Side) -> Option<Vec<(usize, usize)>> {
    let n = g.nbhds(side);
    let nv = n.len();
    if nv < 4 {
        return None;
    }
    let mut by_count: HashMap<usize, Vec<usize>> = HashMap::new();
    for v in 1..nv {
        by_count.entry(n[0].and_count(&n[v])).or_default().push(v);
    }
    let mut classes: Vec<(usize, Vec<usize>)> = by_count.into_iter().collect();
    classes.sort_by_key(|(c, members)| (members.len(), *c));
    let count = classes.iter().find_map(|(c, s)| {
        let rel = |x: usize, y: usize| n[x].and_count(&n[y]) == *c;
        for (p, &a) in s.iter().enumerate() {
            for (r, &b) in s.iter().enumerate().skip(p + 1) {
                if !rel(a, b) {
                    continue;
                }
                for &d in &s[r + 1..] {
                    if rel(a, d) && rel(b, d) && is_roundup_quad(n, [0, a, b, d]) {
                        return Some(*c);
                    }
                }
            }
        }
        None
    })?;
    let rel: Vec<BitSet> = (0..nv)
        .into_par_iter()
        .map(|x| BitSet::from_indices(nv, (0..nv).filter(|&y| y != x && n[x].and_count(&n[y]) == count)))
        .collect();
    let mut covered: Vec<BitSet> = vec![BitSet::new(nv); nv];
    let mut pairs = Vec::new();
    for u in 0..nv {
        for v in rel[u].iter().filter(|&v| v > u) {
            if covered[u].contains(v) {
                continue;
            }
            let w_set = rel[u].and(&rel[v]);
            let quad = w_set.iter().find_map(|w| {
                rel[w]
                    .and(&w_set)
                    .iter()
                    .filter(|&x| x > w)
                    .find(|&x| is_roundup_quad(n, [u, v, w, x]))
                    .map(|x| [u, v, w, x])
            });
            if let Some(q) = quad {
                for a in 0..4 {
                    for b in a + 1..4 {
                        covered[q[a]].insert(q[b]);
                        covered[q[b]].insert(q[a]);
                    }
                }
            }
        }
    }
    for u in 0..nv {
        for v in covered[u].iter().filter(|&v| v > u) {
            pairs.push((u, v));
        }
    }
    if pairs.is_empty() {
        None
    } else {
        Some(pairs)
    }
}

/// Bron–Kerbosch with pivoting; gives up once `out` holds more than
/// `limit` cliques.
fn bron_kerbosch(adj: &[BitSet], r: &mut Vec<usize>, p: BitSet, mut x: BitSet, out: &mut Vec<Vec<usize>>, limit: usize) {
    if out.len() > limit {
        return;
    }
    if p.is_empty() {
        if x.is_empty() {
            out.push(r.clone());
        }
        return;
    }
    let pivot = p
        .or(&x)
        .iter()
        .max_by_key(|&u| p.and_count(&adj[u]))
        .expect("nonempty");
    let mut p = p;
    for v in p.and_not(&adj[pivot]).iter() {
        r.push(v);
        bron_kerbosch(adj, r, p.and(&adj[v]), x.and(&adj[v]), out, limit);
        r.pop();
        if out.len() > limit {
            return;
        }
        p.remove(v);
        x.insert(v);
    }
}

/// The common neighbourhood split as K ∪ C₁ ∪ C₂: K adjacent to all of
/// it, C₁ and C₂ cliques with no edges between them. This is its shape in
/// any Grassmann graph (K is the pencil shared by the two cliques through
/// the edge); `None` for any other shape.
fn two_clique_split(adj: &[BitSet], common: &BitSet) -> Option<(BitSet, Vec<BitSet>)> {
    let mut core = BitSet::new(common.len());
    let mut rest = BitSet::new(common.len());
    for w in common.iter() {
        if adj[w].and_count(common) + 1 == common.count() {
            core.insert(w);
        } else {
            rest.insert(w);
        }
    }
    let mut parts = Vec::new();
    while let Some(w) = rest.first() {
        let mut c = rest.and(&adj[w]);
        c.insert(w);
        // a clique, and nothing else of the remainder is adjacent to it
        if c.iter().any(|x| adj[x].and_count(&rest) + 1 != c.count()) {
            return None;
        }
        rest.and_not_with(&c);
        parts.push(c);
        if parts.len() > 2 {
            return None;
        }
    }
    Some((core, parts))
}

/// Maximal cliques containing the edge uv (at most three are listed).
fn cliques_through_edge(g: &SimpleGraph, u: usize, v: usize) -> Vec<Vec<usize>> {
    let adj = g.nbhds();
    let p = adj[u].and(&adj[v]);
    if let Some((core, parts)) = two_clique_split(adj, &p) {
        let base = |extra: Option<&BitSet>| -> Vec<usize> {
            let mut c = vec![u, v];
            c.extend(core.iter());
            if let Some(e) = extra {
                c.extend(e.iter());
            }
            c
        };
        return if parts.is_empty() { vec![base(None)] } else { parts.iter().map(|c| base(Some(c))).collect() };
    }
    let mut out = Vec::new();
    let mut r = vec![u, v];
    bron_kerbosch(adj, &mut r, p, BitSet::new(g.order()), &mut out, 2);
    out
}

/// All maximal cliques of size ≥ 2, each reported once (from its two
/// smallest members), sorted, and whether every edge lies in exactly two
/// of them. `None` if some edge lies in more than two maximal cliques
/// (never the case in a Grassmann graph); the enumeration stops early then.
pub fn maximal_cliques(g: &SimpleGraph) -> Option<(Vec<BitSet>, bool)> {
    let nv = g.order();
    let per_vertex: Vec<Option<(Vec<BitSet>, bool)>> = (0..nv)
        .into_par_iter()
        .map(|u| {
            let mut found = Vec::new();
            let mut two = true;
            for v in g.nbhd(u).iter().filter(|&v| v > u) {
                let cl = cliques_through_edge(g, u, v);
                if cl.len() > 2 {
                    return None;
                }
                two &= cl.len() == 2;
                for mut c in cl {
                    c.sort_unstable();
                    if c[0] == u && c[1] == v {
                        found.push(BitSet::from_indices(nv, c));
                    }
                }
            }
            Some((found, two))
        })
        .collect();
    let mut two = true;
    let mut all: Vec<BitSet> = Vec::new();
    for pv in per_vertex {
        let (f, t) = pv?;
        two &= t;
        all.extend(f);
    }
    all.sort();
    Some((all, two))
}

/// Γ₁ together with its maximal cliques split into two classes and the
/// Grassmann lines (intersections across classes with ≥ 2 members).
#[derive(Clone, Debug)]
pub struct CliqueSystem {
    pub grassmann: SimpleGraph,
    pub cliques: Vec<BitSet>,
    pub class_of: Vec<u8>,
    pub lines: Vec<BitSet>,
}

impl CliqueSystem {
    pub fn class(&self, c: u8) -> Vec<BitSet> {
        self.cliques
            .iter()
            .zip(&self.class_of)
            .filter(|(_, &k)| k == c)
            .map(|(q, _)| q.clone())
            .collect()
    }
}

pub fn clique_system(g1: &SimpleGraph) -> Result<CliqueSystem> {
    if g1.edge_count() == 0 {
        return Err(Error::NotGrassmann("no edges".into()));
    }
    let Some((cliques, two)) = maximal_cliques(g1) else {
        return Err(Error::NotGrassmann("an edge lies in more than two maximal cliques".into()));
    };
    if !two {
        return Err(Error::NotGrassmann(format!(
            "an edge lies in other than two of {} maximal cliques",
            cliques.len()
        )));
    }
    let nc = cliques.len();
    let meets: Vec<Vec<usize>> = (0..nc)
        .into_par_iter()
        .map(|a| (0..nc).filter(|&b| b != a && cliques[a].and_count(&cliques[b]) >= 2).collect())
        .collect();
    let mut class_of = vec![u8::MAX; nc];
    class_of[0] = 0;
    let mut stack = vec![0];
    while let Some(a) = stack.pop() {
        for &b in &meets[a] {
            if class_of[b] == u8::MAX {
                class_of[b] = 1 - class_of[a];
                stack.push(b);
            } else if class_of[b] == class_of[a] {
                return Err(Error::NotGrassmann("clique graph is not bipartite".into()));
            }
        }
    }
    if class_of.contains(&u8::MAX) {
        return Err(Error::NotGrassmann("clique graph is disconnected".into()));
    }
    let mut lines = Vec::new();
    for a in 0..nc {
        for &b in &meets[a] {
            if class_of[a] == 0 && class_of[b] == 1 {
                lines.push(cliques[a].and(&cliques[b]));
            }
        }
    }
    lines.sort();
    lines.dedup();
    Ok(CliqueSystem {
        grassmann: g1.clone(),
        cliques,
        class_of,
        lines,
    })
}

/// Whether every pair of distinct vertices lies in exactly one maximal clique.
pub fn unique_max_clique_test(g1: &SimpleGraph) -> bool {
    let nv = g1.order();
    if nv < 2 {
        return true;
    }
    if g1.edge_count() * 2 != nv * (nv - 1) {
        return false;
    }
    // complete graph: the whole vertex set is the only maximal clique
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::graphfam::{build_bigraph, FamilySpec, Mode, Vertices};

    fn oracle(v: &Vertices, q: u32) -> SimpleGraph {
        let f = FieldSpec::new(q).unwrap();
        let Vertices::Thick(s) = v else { panic!() };
        SimpleGraph::from_fn(s.len(), |a, b| {
            s[a].meet(&f, &s[b]).unwrap().pdim() == s[a].pdim() - 1
        })
    }

    #[test]
    fn triples_give_plane_grassmann_graph() {
        let g = build_bigraph(&FamilySpec::thick(2, 5, 2, 2, 1, Mode::AtLeast)).unwrap();
        let g1 = grassmann_from_roundups(&g.graph, Side::B, false).unwrap();
        assert_eq!(g1, oracle(&g.b, 2));
    }

    #[test]
    fn quads_give_line_grassmann_graph() {
        let g = build_bigraph(&FamilySpec::thick(3, 3, 1, 1, 0, Mode::Exact)).unwrap();
        let g1 = grassmann_from_roundups(&g.graph, Side::B, true).unwrap();
        assert_eq!(g1, oracle(&g.b, 3));
        assert!(matches!(
            grassmann_from_roundups(&g.graph, Side::B, false),
            Err(Error::NoRoundups(_))
        ));
    }

    #[test]
    fn line_grassmann_cliques_of_pg32() {
        let g = build_bigraph(&FamilySpec::thick(2, 3, 1, 1, 0, Mode::Exact)).unwrap();
        let g1 = oracle(&g.b, 2);
        assert_eq!(g1.order(), 35);
        let cs = clique_system(&g1).unwrap();
        assert_eq!(cs.cliques.len(), 30);
        assert!(cs.cliques.iter().all(|c| c.count() == 7));
        assert_eq!(cs.class(0).len(), 15);
        assert_eq!(cs.class(1).len(), 15);
        // each line is a pencil: 3 lines through a point in a plane
        assert!(cs.lines.iter().all(|l| l.count() == 3));
        assert_eq!(cs.lines.len(), 15 * 7);
        assert!(!unique_max_clique_test(&g1));
    }

    #[test]
    fn degenerate_inputs() {
        let k5 = SimpleGraph::from_fn(5, |_, _| true);
        assert!(unique_max_clique_test(&k5));
        assert!(matches!(clique_system(&k5), Err(Error::NotGrassmann(_))));
        let c5 = SimpleGraph::from_fn(5, |a, b| (a + 1) % 5 == b || (b + 1) % 5 == a);
        assert!(matches!(clique_system(&c5), Err(Error::NotGrassmann(_))));
        let g = build_bigraph(&FamilySpec::thick(2, 3, 0, 2, 0, Mode::Exact)).unwrap();
        let g1 = grassmann_from_roundups(&g.graph, Side::A, false).unwrap();
        assert!(unique_max_clique_test(&g1));
    }
}
