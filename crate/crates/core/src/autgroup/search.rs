//! Individualization–refinement search: automorphism generators and a
//! canonical labeling in one pass.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graphfam::SimpleGraph;

use super::perm::Perm;

/// Ordered partition of the vertex set into cells.
#[derive(Clone, Debug)]
struct Partition {
    lab: Vec<u32>,
    pos: Vec<u32>,
    /// start of the cell containing each position
    start: Vec<u32>,
    /// cell length, indexed by cell start
    len: Vec<u32>,
    cells: usize,
}

impl Partition {
    fn from_colors(colors: &[usize]) -> Partition {
        let n = colors.len();
        let mut lab: Vec<u32> = (0..n as u32).collect();
        lab.sort_by_key(|&v| (colors[v as usize], v));
        let mut p = Partition {
            pos: vec![0; n],
            start: vec![0; n],
            len: vec![0; n],
            lab,
            cells: 0,
        };
        let mut s = 0;
        for i in 0..n {
            let v = p.lab[i] as usize;
            p.pos[v] = i as u32;
            if i > 0 && colors[v] != colors[p.lab[i - 1] as usize] {
                p.len[s] = (i - s) as u32;
                p.cells += 1;
                s = i;
            }
            p.start[i] = s as u32;
        }
        if n > 0 {
            p.len[s] = (n - s) as u32;
            p.cells += 1;
        }
        p
    }

    fn n(&self) -> usize {
        self.lab.len()
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.n()
    }

    fn cell_starts(&self) -> impl Iterator<Item = usize> + '_ {
        let mut i = 0;
        std::iter::from_fn(move || {
            if i >= self.n() {
                return None;
            }
            let s = i;
            i += self.len[s] as usize;
            Some(s)
        })
    }

    /// Equitable refinement, starting from the given splitter cells.
    fn refine(&mut self, adj: &[Vec<u32>], splitters: &[usize]) {
        let n = self.n();
        let mut queue: std::collections::VecDeque<usize> = splitters.iter().copied().collect();
        let mut inq = vec![false; n];
        for &s in splitters {
            inq[s] = true;
        }
        let mut count = vec![0u32; n];
        let mut touched_cells: Vec<usize> = Vec::new();
        let mut touched: Vec<u32> = Vec::new();
        while let Some(w) = queue.pop_front() {
            inq[w] = false;
            if self.cells == n {
                break;
            }
            let wl = self.len[w] as usize;
            for p in w..w + wl {
                let x = self.lab[p] as usize;
                for &u in &adj[x] {
                    if count[u as usize] == 0 {
                        touched.push(u);
                    }
                    count[u as usize] += 1;
                }
            }
            for &u in &touched {
                let c = self.start[self.pos[u as usize] as usize] as usize;
                touched_cells.push(c);
            }
            touched_cells.sort_unstable();
            touched_cells.dedup();
            for &c in &touched_cells {
                let cl = self.len[c] as usize;
                if cl == 1 {
                    continue;
                }
                let seg = &mut self.lab[c..c + cl];
                let k0 = count[seg[0] as usize];
                if seg.iter().all(|&v| count[v as usize] == k0) {
                    continue;
                }
                seg.sort_unstable_by_key(|&v| (count[v as usize], v));
                let mut s = c;
                for p in c..c + cl {
                    let v = self.lab[p] as usize;
                    self.pos[v] = p as u32;
                    if p > c && count[v] != count[self.lab[p - 1] as usize] {
                        self.len[s] = (p - s) as u32;
                        self.cells += 1;
                        if !inq[s] {
                            inq[s] = true;
                            queue.push_back(s);
                        }
                        s = p;
                    }
                    self.start[p] = s as u32;
                }
                self.len[s] = (c + cl - s) as u32;
                if !inq[s] {
                    inq[s] = true;
                    queue.push_back(s);
                }
            }
            for &u in &touched {
                count[u as usize] = 0;
            }
            touched.clear();
            touched_cells.clear();
        }
    }

    /// Splits v off the front of its cell; returns the new singleton cell.
    fn individualize(&mut self, v: usize) -> usize {
        let p = self.pos[v] as usize;
        let c = self.start[p] as usize;
        let cl = self.len[c] as usize;
        let w = self.lab[c];
        self.lab.swap(c, p);
        self.pos[v] = c as u32;
        self.pos[w as usize] = p as u32;
        self.len[c] = 1;
        self.len[c + 1] = (cl - 1) as u32;
        for q in c + 1..c + cl {
            self.start[q] = (c + 1) as u32;
        }
        self.cells += 1;
        c
    }

    /// First smallest non-singleton cell.
    fn target_cell(&self) -> Option<usize> {
        self.cell_starts()
            .filter(|&s| self.len[s] > 1)
            .min_by_key(|&s| (self.len[s], s))
    }
}

/// Colour classes of the coarsest equitable refinement of `init`, numbered
/// in cell order.
pub fn color_refine(g: &SimpleGraph, init: &[usize]) -> Vec<usize> {
    let adj = adjacency(g);
    let mut p = Partition::from_colors(init);
    let all: Vec<usize> = p.cell_starts().collect();
    p.refine(&adj, &all);
    let mut colors = vec![0; g.order()];
    for (ci, s) in p.cell_starts().enumerate() {
        for q in s..s + p.len[s] as usize {
            colors[p.lab[q] as usize] = ci;
        }
    }
    colors
}

fn adjacency(g: &SimpleGraph) -> Vec<Vec<u32>> {
    (0..g.order()).map(|v| g.nbhd(v).iter().map(|u| u as u32).collect()).collect()
}

struct Leaf {
    path: Vec<u32>,
    lab: Vec<u32>,
    cert: Vec<u64>,
}

/// Result of a complete search.
#[derive(Clone, Debug)]
pub struct SearchResult {
    pub generators: Vec<Perm>,
    /// canonical position → vertex
    pub labeling: Vec<u32>,
    /// adjacency matrix rows of the canonically relabelled graph
    pub certificate: Vec<u64>,
    pub nodes: u64,
}

struct Search<'a> {
    adj: &'a [Vec<u32>],
    n: usize,
    words: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    gens: Vec<Perm>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn certificate(&self, lab: &[u32]) -> Vec<u64> {
        let mut inv = vec![0u32; self.n];
        for (p, &v) in lab.iter().enumerate() {
            inv[v as usize] = p as u32;
        }
        let mut cert = vec![0u64; self.n * self.words];
        for (p, &v) in lab.iter().enumerate() {
            let row = &mut cert[p * self.words..(p + 1) * self.words];
            for &u in &self.adj[v as usize] {
                let q = inv[u as usize] as usize;
                // most significant bit first so that lexicographic word
                // order is lexicographic bit order
                row[q >> 6] |= 1 << (63 - (q & 63));
            }
        }
        cert
    }

    fn auto_between(a: &[u32], b: &[u32]) -> Perm {
        let mut img = vec![0u32; a.len()];
        for (x, y) in a.iter().zip(b) {
            img[*x as usize] = *y;
        }
        Perm::from_images(img)
    }

    fn common_prefix(a: &[u32], b: &[u32]) -> usize {
        a.iter().zip(b).take_while(|(x, y)| x == y).count()
    }

    /// Orbit representatives (union–find roots) of the subgroup generated
    /// by the found automorphisms that fix `path` pointwise.
    fn orbits(&self, path: &[u32]) -> Vec<u32> {
        let mut parent: Vec<u32> = (0..self.n as u32).collect();
        fn find(p: &mut [u32], mut x: u32) -> u32 {
            while p[x as usize] != x {
                p[x as usize] = p[p[x as usize] as usize];
                x = p[x as usize];
            }
            x
        }
        for g in &self.gens {
            if path.iter().all(|&v| g.apply(v as usize) == v as usize) {
                for x in 0..self.n {
                    let (a, b) = (find(&mut parent, x as u32), find(&mut parent, g.apply(x) as u32));
                    if a != b {
                        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                        parent[hi as usize] = lo;
                    }
                }
            }
        }
        (0..self.n as u32).map(|x| find(&mut parent, x)).collect()
    }

    /// Returns the depth to jump back to, if a subtree was shown to be an
    /// automorphic image of one already explored.
    fn dfs(&mut self, part: Partition, path: &mut Vec<u32>) -> Result<Option<usize>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudgetExceeded(self.budget));
        }
        let depth = path.len();
        if part.is_discrete() {
            let cert = self.certificate(&part.lab);
            let Some(first) = &self.first else {
                let leaf = Leaf {
                    path: path.clone(),
                    lab: part.lab.clone(),
                    cert: cert.clone(),
                };
                self.first = Some(leaf);
                self.best = Some(Leaf {
                    path: path.clone(),
                    lab: part.lab,
                    cert,
                });
                return Ok(None);
            };
            if cert == first.cert {
                let g = Self::auto_between(&first.lab, &part.lab);
                let back = Self::common_prefix(&first.path, path);
                if !g.is_identity() {
                    self.gens.push(g);
                }
                return Ok(Some(back));
            }
            let best = self.best.as_ref().unwrap();
            match cert.cmp(&best.cert) {
                Ordering::Equal => {
                    let g = Self::auto_between(&best.lab, &part.lab);
                    let back = Self::common_prefix(&best.path, path);
                    if !g.is_identity() {
                        self.gens.push(g);
                    }
                    return Ok(Some(back));
                }
                Ordering::Greater => {
                    self.best = Some(Leaf {
                        path: path.clone(),
                        lab: part.lab,
                        cert,
                    });
                }
                Ordering::Less => {}
            }
            return Ok(None);
        }
        let c = part.target_cell().expect("non-discrete partition has a target");
        let mut children: Vec<u32> = part.lab[c..c + part.len[c] as usize].to_vec();
        children.sort_unstable();
        let mut explored: Vec<u32> = Vec::new();
        let mut orbit_cache: Option<(usize, Vec<u32>)> = None;
        for v in children {
            if !explored.is_empty() {
                if orbit_cache.as_ref().map(|(k, _)| *k) != Some(self.gens.len()) {
                    orbit_cache = Some((self.gens.len(), self.orbits(path)));
                }
                let orb = &orbit_cache.as_ref().unwrap().1;
                if explored.iter().any(|&u| orb[u as usize] == orb[v as usize]) {
                    continue;
                }
            }
            explored.push(v);
            let mut child = part.clone();
            let s = child.individualize(v as usize);
            child.refine(self.adj, &[s]);
            path.push(v);
            let r = self.dfs(child, path);
            path.pop();
            if let Some(back) = r? {
                if back < depth {
                    return Ok(Some(back));
                }
            }
        }
        Ok(None)
    }
}

/// Runs the search on `g` with an initial colouring.
pub fn search(g: &SimpleGraph, colors: &[usize], budget: u64) -> Result<SearchResult> {
    let n = g.order();
    let adj = adjacency(g);
    let mut part = Partition::from_colors(colors);
    let all: Vec<usize> = part.cell_starts().collect();
    part.refine(&adj, &all);
    let mut s = Search {
        adj: &adj,
        n,
        words: n.div_ceil(64),
        first: None,
        best: None,
        gens: Vec::new(),
        nodes: 0,
        budget,
    };
    if n > 0 {
        s.dfs(part, &mut Vec::new())?;
    }
    let (labeling, certificate) = match s.best {
        Some(b) => (b.lab, b.cert),
        None => (Vec::new(), Vec::new()),
    };
    let mut generators = s.gens;
    generators.sort();
    generators.dedup();
    Ok(SearchResult {
        generators,
        labeling,
        certificate,
        nodes: s.nodes,
    })
}
