//! Automorphism groups and canonical forms of the family graphs, exact
//! group orders, and the groups generated by the geometric symmetries
//! (collineations, field automorphisms, dualities, side swaps) used as an
//! independent check.

mod perm;
mod schreier;
mod search;

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::graphfam::{build_bigraph, BiGraph, FamilySpec, Geometry, Mode, SimpleGraph, Vertices};
use crate::projgeom::Subspace;

pub use perm::Perm;
pub use schreier::StabChain;
pub use search::{color_refine, search, SearchResult};

/// Default bound on the number of vertices handed to the search.
pub const DEFAULT_AUT_CAP: usize = 600;
/// Default bound on search-tree nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 5_000_000;

/// A permutation group given by generators, with its stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    pub degree: usize,
    pub generators: Vec<Perm>,
    pub chain: StabChain,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> PermGroup {
        let chain = StabChain::new(degree, &generators);
        PermGroup {
            degree,
            generators,
            chain,
        }
    }

    pub fn order(&self) -> u128 {
        self.chain.order()
    }
}

pub fn group_order(g: &PermGroup) -> u128 {
    g.order()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// canonical position → vertex
    pub labeling: Vec<u32>,
    /// equal for two graphs exactly when they are isomorphic
    pub certificate: Vec<u8>,
}

fn check_cap(g: &SimpleGraph, cap: usize) -> Result<()> {
    if g.order() > cap {
        return Err(Error::TooLarge {
            count: g.order() as u64,
            cap: cap as u64,
        });
    }
    Ok(())
}

/// Automorphism group and canonical form in one search (uncoloured, so
/// automorphisms exchanging the biparts of a bipartite graph are found).
pub fn analyze(g: &SimpleGraph, cap: usize, budget: u64) -> Result<(PermGroup, CanonicalForm)> {
    check_cap(g, cap)?;
    let r = search(g, &vec![0; g.order()], budget)?;
    let mut certificate = (g.order() as u64).to_le_bytes().to_vec();
    for w in &r.certificate {
        certificate.extend_from_slice(&w.to_be_bytes());
    }
    Ok((
        PermGroup::new(g.order(), r.generators),
        CanonicalForm {
            labeling: r.labeling,
            certificate,
        },
    ))
}

pub fn automorphisms(g: &SimpleGraph) -> Result<PermGroup> {
    analyze(g, DEFAULT_AUT_CAP, DEFAULT_NODE_BUDGET).map(|r| r.0)
}

pub fn canonical(g: &SimpleGraph) -> Result<CanonicalForm> {
    analyze(g, DEFAULT_AUT_CAP, DEFAULT_NODE_BUDGET).map(|r| r.1)
}

/// |PGL(n+1, q)|.
pub fn pgl_order(n: usize, q: u32) -> u128 {
    let q = q as u128;
    let qn = q.pow(n as u32 + 1);
    (0..=n as u32).map(|t| qn - q.pow(t)).product::<u128>() / (q - 1)
}

/// |PΓL(n+1, q)| = e·|PGL(n+1, q)| for q = p^e.
pub fn pgammal_order(n: usize, q: u32) -> Result<u128> {
    let f = FieldSpec::new(q)?;
    Ok(f.degree() as u128 * pgl_order(n, q))
}

/// Among `specs`, one whose graph is isomorphic to `g` (certificate match).
pub fn pick_isomorphic(g: &BiGraph, specs: &[FamilySpec]) -> Option<FamilySpec> {
    let cap = 4 * DEFAULT_AUT_CAP;
    let target = analyze(&g.to_simple(), cap, DEFAULT_NODE_BUDGET).ok()?.1;
    specs.iter().copied().find(|s| {
        build_bigraph(s)
            .ok()
            .and_then(|b| analyze(&b.graph.to_simple(), cap, DEFAULT_NODE_BUDGET).ok())
            .is_some_and(|(_, c)| c.certificate == target.certificate)
    })
}

fn matrix_gens(f: &FieldSpec, dim: usize) -> Vec<Vec<Vec<u8>>> {
    let id = |d: usize| -> Vec<Vec<u8>> { (0..d).map(|r| (0..d).map(|c| (r == c) as u8).collect()).collect() };
    let mut out = Vec::new();
    let mut t = id(dim);
    t[0][1] = 1;
    out.push(t);
    let w = f.primitive();
    if w != 1 {
        let mut d = id(dim);
        d[0][0] = w;
        out.push(d);
    }
    let mut sw = id(dim);
    sw.swap(0, 1);
    out.push(sw);
    let cyc: Vec<Vec<u8>> = (0..dim).map(|r| (0..dim).map(|c| (c == (r + 1) % dim) as u8).collect()).collect();
    out.push(cyc);
    out
}

/// Permutations of the vertex set of `build(spec)` (A side first, then B)
/// induced by geometric symmetries. Thick: collineations, the Frobenius
/// map, a polarity when i + j = n − 1, and the side swap when i = j.
/// Thin: Sym(n), complementation of one or both sides of size n/2 where
/// it preserves adjacency, and the side swap when i = j.
pub fn geometric_generators(spec: &FamilySpec) -> Result<PermGroup> {
    spec.validate()?;
    let fg = build_bigraph(spec)?;
    let (na, nb) = (fg.graph.na(), fg.graph.nb());
    let deg = na + nb;
    let mut gens = Vec::new();
    match (&fg.a, &fg.b, spec.geometry) {
        (Vertices::Thick(a), Vertices::Thick(b), Geometry::Thick { q }) => {
            let f = FieldSpec::new(q)?;
            let ia: HashMap<&Subspace, u32> = a.iter().enumerate().map(|(x, s)| (s, x as u32)).collect();
            let ib: HashMap<&Subspace, u32> = b.iter().enumerate().map(|(x, s)| (s, (na + x) as u32)).collect();
            // a subspace may be on both sides; each side is looked up in
            // its own index
            let side_map = |m: &dyn Fn(&Subspace) -> Subspace| -> Perm {
                let mut img = Vec::with_capacity(deg);
                img.extend(a.iter().map(|s| ia[&m(s)]));
                img.extend(b.iter().map(|s| ib[&m(s)]));
                Perm::from_images(img)
            };
            for m in matrix_gens(&f, spec.n + 1) {
                gens.push(side_map(&|s: &Subspace| s.transform(&f, &m)));
            }
            if f.degree() > 1 {
                gens.push(side_map(&|s: &Subspace| s.map_entries(&f, |x| f.frobenius(x))));
            }
            if spec.i + spec.j == spec.n as i32 - 1 {
                let mut img = Vec::with_capacity(deg);
                img.extend(a.iter().map(|s| ib[&s.dual_complement(&f)]));
                img.extend(b.iter().map(|s| ia[&s.dual_complement(&f)]));
                gens.push(Perm::from_images(img));
            }
            if spec.i == spec.j {
                gens.push(swap_perm(na));
            }
        }
        (Vertices::Thin(a), Vertices::Thin(b), Geometry::Thin) => {
            let n = spec.n;
            let ia: HashMap<u64, u32> = a.iter().enumerate().map(|(x, &s)| (s, x as u32)).collect();
            let ib: HashMap<u64, u32> = b.iter().enumerate().map(|(x, &s)| (s, (na + x) as u32)).collect();
            let side_map = |m: &dyn Fn(u64) -> u64, flip_a: bool, flip_b: bool| -> Perm {
                let mut img = Vec::with_capacity(deg);
                img.extend(a.iter().map(|&s| if flip_a { ia[&m(s)] } else { ia[&s] }));
                img.extend(b.iter().map(|&s| if flip_b { ib[&m(s)] } else { ib[&s] }));
                Perm::from_images(img)
            };
            for sigma in sym_generators(n) {
                gens.push(side_map(&|s| permute_mask(s, &sigma), true, true));
            }
            let full = if n == 64 { !0 } else { (1u64 << n) - 1 };
            let (i, j, k) = (spec.i, spec.j, spec.k);
            if spec.mode == Mode::Exact {
                if 2 * j == n as i32 && 2 * k == i {
                    gens.push(side_map(&|s| full & !s, false, true));
                }
                if 2 * i == n as i32 && 2 * k == j {
                    gens.push(side_map(&|s| full & !s, true, false));
                }
            }
            // complementing both sides keeps |I ∩ J| when |I| = |J| = n/2
            if 2 * i == n as i32 && 2 * j == n as i32 {
                gens.push(side_map(&|s| full & !s, true, true));
            }
            if spec.i == spec.j {
                gens.push(swap_perm(na));
            }
        }
        _ => return Err(Error::UnsupportedSpec(spec.to_string())),
    }
    Ok(PermGroup::new(deg, gens))
}

fn swap_perm(half: usize) -> Perm {
    Perm::from_images((0..2 * half as u32).map(|x| (x + half as u32) % (2 * half as u32)).collect())
}

/// A transposition and an n-cycle.
fn sym_generators(n: usize) -> Vec<Vec<usize>> {
    let mut t: Vec<usize> = (0..n).collect();
    t.swap(0, 1);
    let c: Vec<usize> = (0..n).map(|x| (x + 1) % n).collect();
    vec![t, c]
}

fn permute_mask(s: u64, sigma: &[usize]) -> u64 {
    let mut out = 0;
    for (x, &y) in sigma.iter().enumerate() {
        if s >> x & 1 == 1 {
            out |= 1 << y;
        }
    }
    out
}

/// Sym(n+1) acting on thin (n, m, m) graphs with n = 2m + 1 through the
/// halving partitions of {0, …, n}: a set S ↦ {S ∪ {n}, complement}.
pub fn partition_model_generators(spec: &FamilySpec) -> Result<PermGroup> {
    let n = spec.n;
    if !spec.is_thin() || spec.i != spec.j || n != 2 * spec.i as usize + 1 {
        return Err(Error::UnsupportedSpec(spec.to_string()));
    }
    let fg = build_bigraph(spec)?;
    let (Vertices::Thin(a), Vertices::Thin(b)) = (&fg.a, &fg.b) else {
        unreachable!()
    };
    let na = a.len();
    let ia: HashMap<u64, u32> = a.iter().enumerate().map(|(x, &s)| (s, x as u32)).collect();
    let full = (1u64 << (n + 1)) - 1;
    let marker = 1u64 << n;
    let act = |s: u64, sigma: &[usize]| -> u64 {
        let part = permute_mask(s | marker, sigma);
        let part = if part & marker != 0 { part } else { full & !part };
        part & !marker
    };
    let mut gens = Vec::new();
    for sigma in sym_generators(n + 1) {
        let mut img = Vec::with_capacity(2 * na);
        img.extend(a.iter().map(|&s| ia[&act(s, &sigma)]));
        img.extend(b.iter().map(|&s| ia[&act(s, &sigma)] + na as u32));
        gens.push(Perm::from_images(img));
    }
    gens.push(swap_perm(na));
    Ok(PermGroup::new(2 * na, gens))
}

/// Whether every generator is an automorphism of `g`.
pub fn preserves(g: &SimpleGraph, group: &PermGroup) -> bool {
    group.generators.iter().all(|p| {
        (0..g.order()).all(|v| g.nbhd(v).iter().all(|u| g.adj(p.apply(v), p.apply(u))))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphfam::{FamilySpec, Mode};

    fn heawood() -> SimpleGraph {
        build_bigraph(&FamilySpec::thick(2, 2, 0, 1, 0, Mode::Exact)).unwrap().graph.to_simple()
    }

    /// Brute-force automorphism count by backtracking.
    fn brute_aut_count(g: &SimpleGraph) -> u64 {
        // vertices in breadth-first order, so every new vertex is pinned
        // down by an already mapped neighbour
        let n = g.order();
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            order.push(s);
            let mut head = order.len() - 1;
            while head < order.len() {
                for w in g.nbhd(order[head]).iter() {
                    if !seen[w] {
                        seen[w] = true;
                        order.push(w);
                    }
                }
                head += 1;
            }
        }
        fn go(g: &SimpleGraph, order: &[usize], img: &mut Vec<usize>, used: &mut Vec<bool>) -> u64 {
            let t = img.len();
            if t == order.len() {
                return 1;
            }
            let v = order[t];
            let mut total = 0;
            for w in 0..g.order() {
                if used[w] || g.nbhd(v).count() != g.nbhd(w).count() {
                    continue;
                }
                if (0..t).all(|u| g.adj(order[u], v) == g.adj(img[u], w)) {
                    used[w] = true;
                    img.push(w);
                    total += go(g, order, img, used);
                    img.pop();
                    used[w] = false;
                }
            }
            total
        }
        go(g, &order, &mut Vec::new(), &mut vec![false; n])
    }

    #[test]
    fn heawood_group() {
        let g = heawood();
        assert_eq!(brute_aut_count(&g), 336);
        let a = automorphisms(&g).unwrap();
        assert!(preserves(&g, &a));
        assert_eq!(a.order(), 336);
        let geo = geometric_generators(&FamilySpec::thick(2, 2, 0, 1, 0, Mode::Exact)).unwrap();
        assert!(preserves(&g, &geo));
        assert_eq!(geo.order(), 336);
    }

    #[test]
    fn half_size_thin_groups() {
        // j = n/2: complementation and twins give automorphisms that no
        // permutation of the ground set induces
        let spec = FamilySpec::thin(4, 2, 2, 1, Mode::Exact);
        let g = build_bigraph(&spec).unwrap().graph.to_simple();
        assert_eq!(brute_aut_count(&g), 768);
        assert_eq!(automorphisms(&g).unwrap().order(), 768);
    }

    /// Brute-force confirmation on 40 vertices (a few minutes).
    #[test]
    #[ignore]
    fn half_size_thin_groups_brute_force() {
        for (spec, order) in [
            (FamilySpec::thin(6, 3, 3, 1, Mode::Exact), 5760),
            (FamilySpec::thin(6, 3, 3, 2, Mode::AtLeast), 2880),
        ] {
            let g = build_bigraph(&spec).unwrap().graph.to_simple();
            assert_eq!(brute_aut_count(&g), order as u64, "{spec}");
            assert_eq!(automorphisms(&g).unwrap().order(), order, "{spec}");
        }
    }

    #[test]
    fn small_groups() {
        let k33 = SimpleGraph::from_fn(6, |a, b| (a < 3) != (b < 3));
        assert_eq!(automorphisms(&k33).unwrap().order(), 72);
        let path = SimpleGraph::from_fn(3, |a, b| a.abs_diff(b) == 1);
        let c = color_refine(&path, &[0, 0, 0]);
        assert_eq!(c[0], c[2]);
        assert_ne!(c[0], c[1]);
        assert_eq!(automorphisms(&path).unwrap().order(), 2);
        let h = color_refine(&heawood(), &[0; 14]);
        assert!(h.iter().all(|&x| x == 0));
        let pet = SimpleGraph::from_fn(10, |a, b| {
            let s = |x: usize| -> u32 {
                // 2-subsets of {0..4}
                let pairs: Vec<(u32, u32)> = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
                (1 << pairs[x].0) | (1 << pairs[x].1)
            };
            s(a) & s(b) == 0
        });
        assert_eq!(automorphisms(&pet).unwrap().order(), 120);
        assert_eq!(brute_aut_count(&pet), 120);
    }

    #[test]
    fn orders() {
        assert_eq!(pgl_order(2, 2), 168);
        assert_eq!(pgl_order(3, 2), 20160);
        assert_eq!(pgammal_order(2, 4).unwrap(), 2 * pgl_order(2, 4));
        assert_eq!(PermGroup::new(3, vec![]).order(), 1);
    }

    #[test]
    fn frobenius_on_pg24() {
        // collineations and Frobenius on the points of PG(2,4)
        let g = geometric_generators(&FamilySpec::thick(4, 2, 0, 1, 0, Mode::Exact)).unwrap();
        // polarity and the side action double the order
        assert_eq!(g.order(), 2 * pgammal_order(2, 4).unwrap());
    }

    #[test]
    fn canonical_is_invariant() {
        let g = build_bigraph(&FamilySpec::thick(2, 3, 0, 1, 0, Mode::Exact)).unwrap().graph.to_simple();
        let n = g.order();
        let p: Vec<usize> = (0..n).map(|x| (x * 7 + 3) % n).collect();
        let h = SimpleGraph::from_fn(n, |a, b| g.adj(p[a], p[b]));
        assert_eq!(canonical(&g).unwrap(), CanonicalForm {
            labeling: canonical(&g).unwrap().labeling,
            certificate: canonical(&h).unwrap().certificate,
        });
        let dual = build_bigraph(&FamilySpec::thick(2, 3, 0, 1, 0, Mode::Exact).dual()).unwrap().graph.to_simple();
        assert_eq!(canonical(&dual).unwrap().certificate, canonical(&g).unwrap().certificate);
        let other = build_bigraph(&FamilySpec::thick(2, 3, 0, 2, 0, Mode::Exact)).unwrap().graph.to_simple();
        assert_ne!(canonical(&other).unwrap().certificate, canonical(&g).unwrap().certificate);
    }

    #[test]
    fn thin_exceptions() {
        let s = FamilySpec::thin(7, 3, 3, 1, Mode::Exact);
        let g = build_bigraph(&s).unwrap().graph.to_simple();
        let pm = partition_model_generators(&s).unwrap();
        assert!(preserves(&g, &pm));
        assert_eq!(pm.order(), 80640);
        assert_eq!(geometric_generators(&s).unwrap().order(), 2 * 5040);
        assert_eq!(automorphisms(&g).unwrap().order(), 80640);
    }
}
