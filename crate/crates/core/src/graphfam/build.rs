use rayon::prelude::*;

use super::graph::{BiGraph, SimpleGraph};
use super::spec::{FamilySpec, Geometry, Mode};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::projgeom::{enumerate_subspaces, gaussian_binomial, PointIndex, Subspace};

pub const DEFAULT_VERTEX_CAP: u64 = 20_000;

/// Ordered vertex list of one side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Vertices {
    Thick(Vec<Subspace>),
    /// Subsets of {0, …, n−1} as bitmasks, in lexicographic order.
    Thin(Vec<u64>),
}

impl Vertices {
    pub fn len(&self) -> usize {
        match self {
            Vertices::Thick(v) => v.len(),
            Vertices::Thin(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug)]
pub struct FamilyGraph {
    pub spec: FamilySpec,
    pub a: Vertices,
    pub b: Vertices,
    pub graph: BiGraph,
}

#[derive(Clone, Debug)]
pub struct FamilySimple {
    pub spec: FamilySpec,
    pub verts: Vertices,
    pub graph: SimpleGraph,
}

#[inline]
fn related(mode: Mode, k: i32, d: i32) -> bool {
    match mode {
        Mode::Exact => d == k,
        Mode::AtLeast => d >= k,
    }
}

/// Number of vertices on a side of the given dimension or size.
pub fn side_count(spec: &FamilySpec, dim: i32) -> u128 {
    match spec.geometry {
        Geometry::Thick { q } => gaussian_binomial(spec.n as u32 + 1, (dim + 1) as u32, q as u64),
        Geometry::Thin => binomial(spec.n as u32, dim as u32),
    }
}

pub fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, t| acc * (n - t) as u128 / (t + 1) as u128)
}

/// All `size`-subsets of {0, …, n−1} in lexicographic order.
pub fn thin_subsets(n: usize, size: usize) -> Vec<u64> {
    crate::projgeom::combinations(n, size)
        .into_iter()
        .map(|c| c.iter().fold(0u64, |m, &x| m | 1 << x))
        .collect()
}

fn check_cap(spec: &FamilySpec, dims: &[i32], cap: u64) -> Result<()> {
    for &d in dims {
        let c = side_count(spec, d);
        if c > cap as u128 {
            return Err(Error::TooLarge {
                count: c.min(u64::MAX as u128) as u64,
                cap,
            });
        }
    }
    Ok(())
}

struct ThickSide {
    verts: Vec<Subspace>,
    masks: Vec<BitSet>,
}

fn thick_side(n: usize, dim: i32, f: &FieldSpec, pts: &PointIndex) -> Result<ThickSide> {
    let verts = enumerate_subspaces(n, dim, f, u64::MAX)?;
    let masks = verts.par_iter().map(|u| pts.mask(u)).collect();
    Ok(ThickSide { verts, masks })
}

pub fn build_bigraph(spec: &FamilySpec) -> Result<FamilyGraph> {
    build_bigraph_capped(spec, DEFAULT_VERTEX_CAP)
}

pub fn build_bigraph_capped(spec: &FamilySpec, cap: u64) -> Result<FamilyGraph> {
    spec.validate()?;
    check_cap(spec, &[spec.i, spec.j], cap)?;
    let (k, mode) = (spec.k, spec.mode);
    match spec.geometry {
        Geometry::Thick { q } => {
            let f = FieldSpec::new(q)?;
            let pts = PointIndex::new(spec.n, &f)?;
            let a = thick_side(spec.n, spec.i, &f, &pts)?;
            let b = thick_side(spec.n, spec.j, &f, &pts)?;
            let nb = b.verts.len();
            let rows = a
                .masks
                .par_iter()
                .map(|ma| {
                    BitSet::from_indices(
                        nb,
                        (0..nb).filter(|&y| {
                            related(mode, k, pts.dim_from_count(ma.and_count(&b.masks[y])))
                        }),
                    )
                })
                .collect();
            Ok(FamilyGraph {
                spec: *spec,
                a: Vertices::Thick(a.verts),
                b: Vertices::Thick(b.verts),
                graph: BiGraph::from_rows(nb, rows),
            })
        }
        Geometry::Thin => {
            let a = thin_subsets(spec.n, spec.i as usize);
            let b = thin_subsets(spec.n, spec.j as usize);
            let nb = b.len();
            let rows = a
                .par_iter()
                .map(|&u| {
                    BitSet::from_indices(
                        nb,
                        (0..nb).filter(|&y| related(mode, k, (u & b[y]).count_ones() as i32)),
                    )
                })
                .collect();
            Ok(FamilyGraph {
                spec: *spec,
                a: Vertices::Thin(a),
                b: Vertices::Thin(b),
                graph: BiGraph::from_rows(nb, rows),
            })
        }
    }
}

/// Simple graph on the j-objects: distinct u, v adjacent when their
/// intersection satisfies the k/mode condition. `spec.i` is ignored.
pub fn build_simple(spec: &FamilySpec) -> Result<FamilySimple> {
    build_simple_capped(spec, DEFAULT_VERTEX_CAP)
}

pub fn build_simple_capped(spec: &FamilySpec, cap: u64) -> Result<FamilySimple> {
    let spec = FamilySpec { i: spec.j, ..*spec };
    spec.validate()?;
    check_cap(&spec, &[spec.j], cap)?;
    let (k, mode) = (spec.k, spec.mode);
    match spec.geometry {
        Geometry::Thick { q } => {
            let f = FieldSpec::new(q)?;
            let pts = PointIndex::new(spec.n, &f)?;
            let side = thick_side(spec.n, spec.j, &f, &pts)?;
            let nv = side.verts.len();
            let adj = side
                .masks
                .par_iter()
                .enumerate()
                .map(|(x, mx)| {
                    BitSet::from_indices(
                        nv,
                        (0..nv).filter(|&y| {
                            y != x && related(mode, k, pts.dim_from_count(mx.and_count(&side.masks[y])))
                        }),
                    )
                })
                .collect();
            Ok(FamilySimple {
                spec,
                verts: Vertices::Thick(side.verts),
                graph: SimpleGraph::from_adj(adj),
            })
        }
        Geometry::Thin => {
            let v = thin_subsets(spec.n, spec.j as usize);
            let nv = v.len();
            let adj = v
                .par_iter()
                .enumerate()
                .map(|(x, &u)| {
                    BitSet::from_indices(
                        nv,
                        (0..nv).filter(|&y| y != x && related(mode, k, (u & v[y]).count_ones() as i32)),
                    )
                })
                .collect();
            Ok(FamilySimple {
                spec,
                verts: Vertices::Thin(v),
                graph: SimpleGraph::from_adj(adj),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphfam::graph::{Shape, Side};

    #[test]
    fn fano_incidence() {
        let g = build_bigraph(&FamilySpec::thick(2, 2, 0, 1, 0, Mode::Exact)).unwrap();
        assert_eq!((g.graph.na(), g.graph.nb()), (7, 7));
        assert_eq!(g.graph.bivalence(), Some((3, 3)));
        // oracle: point lies on line ⇔ point vector in row space
        let f = FieldSpec::new(2).unwrap();
        let (Vertices::Thick(p), Vertices::Thick(l)) = (&g.a, &g.b) else { panic!() };
        for (x, pt) in p.iter().enumerate() {
            for (y, ln) in l.iter().enumerate() {
                assert_eq!(g.graph.adj(x, y), ln.contains(&f, pt));
            }
        }
    }

    #[test]
    fn thin_kneser_bivalence() {
        let g = build_bigraph(&FamilySpec::thin(6, 2, 2, 0, Mode::Exact)).unwrap();
        assert_eq!(g.graph.bivalence(), Some((6, 6)));
    }

    #[test]
    fn identical_lines_give_matching() {
        let g = build_bigraph(&FamilySpec::thick(2, 3, 1, 1, 1, Mode::Exact)).unwrap();
        assert_eq!(g.graph.na(), 35);
        assert_eq!(g.graph.classify_trivial(), Shape::Matching);
    }

    #[test]
    fn simple_graphs() {
        let s = build_simple(&FamilySpec::thin(10, 3, 3, 1, Mode::Exact)).unwrap();
        assert_eq!(s.graph.order(), 120);
        assert_eq!(s.graph.valence(), Some(63));
        let t = build_simple(&FamilySpec::thick(2, 3, 1, 1, 0, Mode::Exact)).unwrap();
        let b = build_bigraph(&FamilySpec::thick(2, 3, 1, 1, 0, Mode::Exact)).unwrap();
        assert_eq!(t.graph.order(), 35);
        assert_eq!(t.graph.valence(), b.graph.valence(Side::A));
        let e = build_simple(&FamilySpec::thick(2, 3, 1, 1, 1, Mode::AtLeast)).unwrap();
        assert_eq!(e.graph.edge_count(), 0);
    }

    #[test]
    fn complement_of_disjointness_is_meeting() {
        let a = build_bigraph(&FamilySpec::thick(2, 3, 1, 1, -1, Mode::Exact)).unwrap();
        let b = build_bigraph(&FamilySpec::thick(2, 3, 1, 1, 0, Mode::AtLeast)).unwrap();
        assert_eq!(a.graph.complement(), b.graph);
        let c = build_bigraph(&FamilySpec::thick(2, 4, 1, 2, -1, Mode::Exact)).unwrap();
        let d = build_bigraph(&FamilySpec::thick(2, 4, 1, 2, 0, Mode::AtLeast)).unwrap();
        assert_eq!(c.graph.complement(), d.graph);
    }

    #[test]
    fn doubles_match_bipartite_families() {
        let s = build_simple(&FamilySpec::thick(2, 5, 2, 2, 1, Mode::AtLeast)).unwrap();
        let b = build_bigraph(&FamilySpec::thick(2, 5, 2, 2, 1, Mode::AtLeast)).unwrap();
        assert_eq!(s.graph.bipartite_double(true), b.graph);
        let s = build_simple(&FamilySpec::thin(7, 3, 3, 1, Mode::Exact)).unwrap();
        let b = build_bigraph(&FamilySpec::thin(7, 3, 3, 1, Mode::Exact)).unwrap();
        assert_eq!(s.graph.bipartite_double(false), b.graph);
    }

    #[test]
    fn too_large_is_rejected() {
        let r = build_bigraph_capped(&FamilySpec::thick(3, 5, 2, 2, 1, Mode::Exact), 2000);
        assert!(matches!(r, Err(Error::TooLarge { .. })));
    }
}
