use proptest::prelude::*;

use weylgraph::autgroup::canonical;
use weylgraph::field::FieldSpec;
use weylgraph::graphfam::io::{parse, write_bigraph, GraphFile};
use weylgraph::graphfam::{build_bigraph, BiGraph, FamilySpec, Mode, Vertices};
use weylgraph::projgeom::Subspace;
use weylgraph::reconstruct::reconstruct;
use weylgraph::suites::{admissible_thick, admissible_thin};

fn thin_sets(v: &Vertices) -> &[u64] {
    match v {
        Vertices::Thin(s) => s,
        Vertices::Thick(_) => unreachable!(),
    }
}

fn thick_spaces(v: &Vertices) -> &[Subspace] {
    match v {
        Vertices::Thick(s) => s,
        Vertices::Thin(_) => unreachable!(),
    }
}

/// Γ(n; i, j; k) and Γ(n; i, n−j; i−k) agree once every j-set is replaced
/// by its complement.
#[test]
fn thin_complement_identity() {
    for n in 2..=8usize {
        let full = (1u64 << n) - 1;
        for i in 1..n as i32 {
            for j in 1..n as i32 {
                for k in 0..=i.min(j) {
                    let s = FamilySpec::thin(n, i, j, k, Mode::Exact);
                    let t = FamilySpec::thin(n, i, n as i32 - j, i - k, Mode::Exact);
                    if s.validate().is_err() || t.validate().is_err() {
                        continue;
                    }
                    let (gs, gt) = (build_bigraph(&s).unwrap(), build_bigraph(&t).unwrap());
                    let bt = thin_sets(&gt.b);
                    let pos = |m: u64| bt.iter().position(|&x| x == m).unwrap();
                    let map: Vec<usize> = thin_sets(&gs.b).iter().map(|&m| pos(full & !m)).collect();
                    for a in 0..gs.graph.na() {
                        for (b, &b2) in map.iter().enumerate() {
                            assert_eq!(gs.graph.adj(a, b), gt.graph.adj(a, b2), "{s} vs {t}");
                        }
                    }
                }
            }
        }
    }
}

/// Polarity maps Γ(n; i, j; k) onto Γ(n; n−1−j, n−1−i; n−1+k−i−j) with the
/// biparts exchanged.
#[test]
fn thick_duality_identity() {
    for q in [2u32, 3] {
        let f = FieldSpec::new(q).unwrap();
        for s in admissible_thick(&[q], 4) {
            let d = s.dual();
            if d.validate().is_err() {
                // the meet condition is forced either way: empty or complete
                let g = build_bigraph(&s).unwrap().graph;
                let e = g.adj(0, 0);
                assert!((0..g.na()).all(|a| (0..g.nb()).all(|b| g.adj(a, b) == e)), "{s}");
                continue;
            }
            let (gs, gd) = (build_bigraph(&s).unwrap(), build_bigraph(&d).unwrap());
            let index = |v: &[Subspace], x: Subspace| v.iter().position(|y| *y == x).unwrap();
            // A of s (i-spaces) go to B of d, B of s to A of d
            let a2b: Vec<usize> = thick_spaces(&gs.a).iter().map(|x| index(thick_spaces(&gd.b), x.dual_complement(&f))).collect();
            let b2a: Vec<usize> = thick_spaces(&gs.b).iter().map(|x| index(thick_spaces(&gd.a), x.dual_complement(&f))).collect();
            for a in 0..gs.graph.na() {
                for b in 0..gs.graph.nb() {
                    assert_eq!(gs.graph.adj(a, b), gd.graph.adj(b2a[b], a2b[a]), "{s} vs {d}");
                }
            }
        }
    }
}

#[test]
fn bivalences_are_constant() {
    let mut specs = admissible_thick(&[2, 3], 3);
    specs.extend(admissible_thin(8));
    for s in specs {
        let g = build_bigraph(&s).unwrap().graph;
        assert!(g.bivalence().is_some(), "{s}");
    }
}

#[test]
fn reconstruction_is_dual_invariant() {
    for s in [
        FamilySpec::thick(2, 4, 1, 1, 0, Mode::AtLeast),
        FamilySpec::thick(2, 4, 1, 2, 0, Mode::Exact),
        FamilySpec::thick(3, 3, 1, 1, 0, Mode::Exact),
        FamilySpec::thick(2, 4, 0, 2, 0, Mode::Exact),
    ] {
        let a = reconstruct(&build_bigraph(&s).unwrap().graph).unwrap();
        let b = reconstruct(&build_bigraph(&s.dual()).unwrap().graph).unwrap();
        assert_eq!(a.params, b.params, "{s}");
        assert_eq!(a.params, Some(s.normalize().0));
    }
}

fn relabel(g: &BiGraph, pa: &[usize], pb: &[usize]) -> BiGraph {
    BiGraph::from_fn(g.na(), g.nb(), |a, b| g.adj(pa[a], pb[b]))
}

fn small_specs() -> Vec<FamilySpec> {
    vec![
        FamilySpec::thick(2, 3, 1, 1, 0, Mode::Exact),
        FamilySpec::thick(2, 3, 1, 1, 0, Mode::AtLeast),
        FamilySpec::thick(2, 3, 0, 1, 0, Mode::Exact),
        FamilySpec::thick(3, 3, 1, 1, 0, Mode::Exact),
        FamilySpec::thin(7, 2, 3, 1, Mode::Exact),
        FamilySpec::thin(8, 3, 3, 1, Mode::AtLeast),
    ]
}

fn spec_and_perms() -> impl Strategy<Value = (FamilySpec, Vec<usize>, Vec<usize>)> {
    prop::sample::select(small_specs()).prop_flat_map(|s| {
        let g = build_bigraph(&s).unwrap().graph;
        let pa = Just((0..g.na()).collect::<Vec<_>>()).prop_shuffle();
        let pb = Just((0..g.nb()).collect::<Vec<_>>()).prop_shuffle();
        (Just(s), pa, pb)
    })
}

fn random_bigraph() -> impl Strategy<Value = BiGraph> {
    (1usize..20, 1usize..20).prop_flat_map(|(na, nb)| {
        prop::collection::vec(any::<bool>(), na * nb).prop_map(move |bits| BiGraph::from_fn(na, nb, |a, b| bits[a * nb + b]))
    })
}

fn thick_spec() -> impl Strategy<Value = FamilySpec> {
    (prop::sample::select(vec![2u32, 3, 4, 5, 7]), 1usize..6, -1i32..5, -1i32..5, -2i32..5, any::<bool>()).prop_map(
        |(q, n, i, j, k, exact)| FamilySpec::thick(q, n, i, j, k, if exact { Mode::Exact } else { Mode::AtLeast }),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reconstruction_ignores_labels((s, pa, pb) in spec_and_perms()) {
        let g = relabel(&build_bigraph(&s).unwrap().graph, &pa, &pb);
        let r = reconstruct(&g).unwrap();
        prop_assert_eq!(r.params, Some(s.normalize().0));
    }

    #[test]
    fn certificates_ignore_labels((s, pa, pb) in spec_and_perms()) {
        let g = build_bigraph(&s).unwrap().graph;
        let h = relabel(&g, &pa, &pb);
        let cg = canonical(&g.to_simple()).unwrap().certificate;
        let ch = canonical(&h.to_simple()).unwrap().certificate;
        prop_assert_eq!(cg, ch);
    }
}

proptest! {
    #[test]
    fn graph_files_round_trip(g in random_bigraph()) {
        match parse(&write_bigraph(&g, None)).unwrap() {
            GraphFile::Bi { graph, spec } => {
                prop_assert_eq!(graph.rows(), g.rows());
                prop_assert!(spec.is_none());
            }
            GraphFile::Simple { .. } => prop_assert!(false, "wrong kind"),
        }
    }

    #[test]
    fn spec_text_round_trips(s in thick_spec()) {
        let back: FamilySpec = s.to_string().parse().unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn normalization_is_idempotent(s in prop::sample::select(admissible_thick(&[2, 3, 4, 5, 7], 5))) {
        let (once, _) = s.normalize();
        let (twice, flags) = once.normalize();
        prop_assert_eq!(once, twice);
        prop_assert!(!flags.swapped && !flags.dualized);
    }

    #[test]
    fn complement_is_an_involution(g in random_bigraph()) {
        let cc = g.complement().complement();
        let tt = g.transpose().transpose();
        prop_assert_eq!(cc.rows(), g.rows());
        prop_assert_eq!(tt.rows(), g.rows());
    }
}
