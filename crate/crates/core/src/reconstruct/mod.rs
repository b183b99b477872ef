//! Recovering the family parameters of an unlabeled (bi)graph.
//!
//! The pipeline tries, in order: trivial shapes, containment (flag)
//! graphs, round-up triples with the ∃/∀ series, the bipartite complement,
//! round-up quadruples with the ∃₁/∀₋₁ series, and finally a census over
//! all family members with matching bipart sizes. Every candidate is
//! confirmed by building it and comparing invariants, so a stage that
//! misfires just hands over to the next one.

mod census;
mod flag;
mod grassmann;
mod series;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::field::SUPPORTED_ORDERS;
use crate::graphfam::{build_bigraph, BiGraph, FamilySpec, Mode, Shape, Side, SimpleGraph};
use crate::projgeom::gaussian_binomial;
use crate::roundup::{every_vertex_is_pair_intersection, satisfies_min};

pub use census::{census_matches, thick_candidates, thin_candidates, Fingerprint};
pub use flag::{neighbourhood_closure, Flag};
pub use grassmann::{clique_system, grassmann_from_roundups, maximal_cliques, unique_max_clique_test, CliqueSystem};
pub use series::{run_series, series_step, step_rows, Quantifier, SeriesKind, StopIndices};

/// Upper bound on flag length and series iterations.
pub const MAX_LEVELS: usize = 16;
const CLOSURE_CAP: usize = 500_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DetectedType {
    I,
    II,
    III,
    Trivial(Shape),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Normalizations {
    /// polarity (thick) or set complementation (thin) applied
    pub dual: bool,
    /// the input's first bipart is the j-side of `params`
    pub swap: bool,
    /// parameters were read off the bipartite complement
    pub complement: bool,
    /// simple input: `Some(false)` plain double, `Some(true)` extended
    pub double: Option<bool>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificates {
    pub seed: u64,
    /// sizes of the two clique classes of Γ₁
    pub clique_counts: Vec<usize>,
    /// level sizes of the recovered flag
    pub series_trace: Vec<usize>,
    /// which stage produced the answer
    pub route: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconstructionReport {
    pub detected_type: DetectedType,
    /// normalized parameters; absent for trivial shapes
    pub params: Option<FamilySpec>,
    /// (m₋∃, m₊∃, m₋∀, m₊∀) expressed for `params` (for the complement
    /// route: for the complement's parameters)
    pub stop_indices: Option<[usize; 4]>,
    pub normalizations: Normalizations,
    pub certificates: Certificates,
    /// other normalized specs (of the other geometry) whose graphs are
    /// isomorphic to the input; such coincidences cannot be told apart
    pub alternatives: Vec<FamilySpec>,
}

impl ReconstructionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Raw finding of one stage, before normalization and verification.
struct Finding {
    ty: DetectedType,
    spec: FamilySpec,
    stops: Option<StopIndices>,
    complement: bool,
    certs: Certificates,
}

/// Stop indices of `raw` rewritten for its normalized form: each side swap
/// exchanges the ∀ pair, each dualization the ∃ pair.
fn normalize_stops(s: StopIndices, swapped: bool, dualized: bool) -> StopIndices {
    let mut s = s;
    if swapped {
        std::mem::swap(&mut s.minus_forall, &mut s.plus_forall);
    }
    if dualized {
        std::mem::swap(&mut s.minus_exists, &mut s.plus_exists);
    }
    s
}

/// (q, n) with (q^{n+1} − 1)/(q − 1) = size.
fn point_counts(size: usize) -> Vec<(u32, usize)> {
    let mut out = Vec::new();
    for q in SUPPORTED_ORDERS {
        for n in 1usize..64 {
            let c = gaussian_binomial(n as u32 + 1, 1, q as u64);
            if c == size as u128 {
                out.push((q, n));
            }
            if c > size as u128 {
                break;
            }
        }
    }
    out
}

/// Geometry of a completed flag: `Some(None)` thin, `Some(Some(q))` thick.
fn flag_geometry(f: &Flag) -> Option<(Option<u32>, usize)> {
    let nl = f.levels();
    if nl < 3 || f.sizes()[0] != 1 || f.sizes()[nl - 1] != 1 {
        return None;
    }
    if f.sizes()[1] == nl - 1 {
        return Some((None, nl - 1));
    }
    let n = nl - 2;
    point_counts(f.sizes()[1])
        .into_iter()
        .find(|&(_, m)| m == n)
        .map(|(q, _)| (Some(q), n))
}

/// Containment graphs: recovers (n, i, j) from the neighbourhood-intersection
/// chain, extended at both ends to the empty and the whole space.
pub fn reconstruct_flag_type_i(g: &BiGraph) -> Result<FamilySpec> {
    flag_type_i(g).map(|(s, _)| s)
}

fn flag_type_i(g: &BiGraph) -> Result<(FamilySpec, Flag)> {
    let groups = neighbourhood_closure(g, Side::B, CLOSURE_CAP).map_err(|_| Error::NotTypeI)?;
    let ng = groups.len();
    if ng < 2 {
        return Err(Error::NotTypeI);
    }
    let mut f = Flag::from_chain(groups, ng - 1);
    if !f.is_biregular() {
        return Err(Error::NotTypeI);
    }
    f.complete(MAX_LEVELS + 2).map_err(|_| Error::NotTypeI)?;
    let (geom, n) = flag_geometry(&f).ok_or(Error::NotTypeI)?;
    let bottom = f.origin() + 1 - ng;
    let spec = match geom {
        Some(q) => {
            let a = bottom as i32 - 1;
            FamilySpec::thick(q, n, a, a + ng as i32 - 1, a, Mode::Exact)
        }
        None => {
            let a = bottom as i32;
            FamilySpec::thin(n, a, a + ng as i32 - 1, a, Mode::Exact)
        }
    };
    spec.validate()?;
    Ok((spec, f))
}

/// Type I/II via round-up triples on the given side (taken as the j-side).
fn triples_route(g: &BiGraph, side: Side) -> Result<Finding> {
    let g1 = grassmann_from_roundups(g, side, false)?;
    if unique_max_clique_test(&g1) {
        // points against hyperplanes: only the size is left to read
        let n_pts = g.size(side);
        let (q, n) = point_counts(n_pts)
            .into_iter()
            .find(|&(q, n)| {
                let s = FamilySpec::thick(q, n, 0, n as i32 - 1, 0, Mode::Exact);
                s.validate().is_ok() && build_bigraph(&s).map(|b| Fingerprint::of_transitive(&b.graph).matches(&Fingerprint::of_transitive(g)).is_some()).unwrap_or(false)
            })
            .ok_or_else(|| Error::UnrecognizedStructure("point count".into()))?;
        return Ok(Finding {
            ty: DetectedType::I,
            spec: FamilySpec::thick(q, n, 0, n as i32 - 1, 0, Mode::Exact),
            stops: None,
            complement: false,
            certs: Certificates {
                route: "triples/unique-clique".into(),
                ..Default::default()
            },
        });
    }
    series_route(g, side, &g1, SeriesKind::II)
}

fn series_route(g: &BiGraph, side: Side, g1: &SimpleGraph, kind: SeriesKind) -> Result<Finding> {
    let cs = clique_system(g1)?;
    let nv = g.size(side);
    let mut f = Flag::from_classes(nv, cs.class(0), cs.class(1));
    let clique_counts = vec![f.sizes()[0], f.sizes()[2]];
    f.complete(MAX_LEVELS + 2)?;
    let (q, n) = match flag_geometry(&f) {
        Some((Some(q), n)) => (q, n),
        _ => return Err(Error::UnrecognizedStructure("flag is not projective".into())),
    };
    let rows0: Vec<BitSet> = match side {
        Side::B => g.rows().to_vec(),
        Side::A => g.cols().to_vec(),
    };
    let mut stops = run_series(&rows0, &f, kind)?;
    if stops.minus_exists > stops.plus_exists {
        f = f.reversed();
        stops = run_series(&rows0, &f, kind)?;
    }
    let (n2, i, j, k) = stops
        .parameters()
        .ok_or_else(|| Error::UnrecognizedStructure("stop indices".into()))?;
    if n2 != n || j != f.origin() as i32 - 1 {
        return Err(Error::UnrecognizedStructure("stop indices disagree with flag".into()));
    }
    let mode = match kind {
        SeriesKind::II => Mode::AtLeast,
        SeriesKind::III => Mode::Exact,
    };
    let spec = FamilySpec::thick(q, n, i, j, k, mode);
    spec.validate()?;
    Ok(Finding {
        ty: match kind {
            SeriesKind::II => DetectedType::II,
            SeriesKind::III => DetectedType::III,
        },
        spec,
        stops: Some(stops),
        complement: false,
        certs: Certificates {
            clique_counts,
            series_trace: f.sizes().to_vec(),
            route: match kind {
                SeriesKind::II => "triples/series".into(),
                SeriesKind::III => "quadruples/series".into(),
            },
            ..Default::default()
        },
    })
}

fn quads_route(g: &BiGraph, side: Side) -> Result<Finding> {
    let g1 = grassmann_from_roundups(g, side, true)?;
    series_route(g, side, &g1, SeriesKind::III)
}

/// Normalizes a finding and checks it against the input.
fn confirm(fp: &Fingerprint, fd: Finding) -> Option<ReconstructionReport> {
    let (norm, flags) = fd.spec.normalize();
    if norm.validate().is_err() || (norm.is_thin() && !norm.in_thin_scope()) {
        return None;
    }
    let built = build_bigraph(&norm).ok()?;
    let swapped = if fd.complement {
        let c = BiGraph::complement(&built.graph);
        fp.matches(&Fingerprint::of_transitive(&c))?
    } else {
        fp.matches(&Fingerprint::of_transitive(&built.graph))?
    };
    let (params, stops) = if fd.complement {
        // the complement of Γ_{i,j;≥0} (or of Γ_{0,j;0}) is Γ_{i,j;−1}
        let orig = FamilySpec { k: -1, mode: Mode::Exact, ..norm };
        (orig, fd.stops.map(|s| normalize_stops(s, flags.swapped, flags.dualized)))
    } else {
        (norm, fd.stops.map(|s| normalize_stops(s, flags.swapped, flags.dualized)))
    };
    Some(ReconstructionReport {
        detected_type: fd.ty,
        params: Some(params),
        stop_indices: stops.map(|s| s.as_array()),
        normalizations: Normalizations {
            dual: flags.dualized,
            swap: swapped,
            complement: fd.complement,
            double: None,
        },
        certificates: fd.certs,
        alternatives: Vec::new(),
    })
}

/// Findings on the bipartite complement, turned into exact k = −1 graphs:
/// Γ_{i,j;≥0} (through triples) and, for points, Γ_{0,j;0} (containment).
fn complement_route(g: &BiGraph) -> Option<Finding> {
    let c = g.complement();
    if c.classify_trivial() != Shape::Nontrivial {
        return None;
    }
    let wrap = |fd: Finding, route: &str| Finding {
        complement: true,
        certs: Certificates {
            route: route.into(),
            ..fd.certs
        },
        ..fd
    };
    if let Ok((spec, f)) = flag_type_i(&c) {
        if !spec.is_thin() && spec.i.min(spec.j) == 0 {
            let fd = Finding {
                ty: DetectedType::I,
                spec,
                stops: None,
                complement: false,
                certs: Certificates {
                    series_trace: f.sizes().to_vec(),
                    ..Default::default()
                },
            };
            return Some(wrap(fd, "complement/flag"));
        }
    }
    for side in [Side::B, Side::A] {
        if let Ok(fd) = triples_route(&c, side) {
            if fd.ty == DetectedType::II && fd.spec.k == 0 {
                return Some(wrap(fd, "complement/triples/series"));
            }
        }
    }
    None
}

/// Full pipeline on a bipartite graph.
pub fn reconstruct(g: &BiGraph) -> Result<ReconstructionReport> {
    let mut r = reconstruct_one(g)?;
    if let Some(p) = r.params {
        // thin and thick graphs can coincide (small cases over GF(2))
        let others = if p.is_thin() {
            thick_candidates(g.na(), g.nb(), &SUPPORTED_ORDERS)
        } else {
            thin_candidates(g.na(), g.nb())
        };
        if !others.is_empty() {
            let fp = Fingerprint::of(g);
            for (s, _) in census_matches(&fp, &others) {
                if s != p && !r.alternatives.contains(&s) && crate::autgroup::pick_isomorphic(g, &[s]).is_some() {
                    r.alternatives.push(s);
                }
            }
        }
    }
    Ok(r)
}

fn reconstruct_one(g: &BiGraph) -> Result<ReconstructionReport> {
    let shape = g.classify_trivial();
    if shape != Shape::Nontrivial {
        return Ok(ReconstructionReport {
            detected_type: DetectedType::Trivial(shape),
            params: None,
            stop_indices: None,
            normalizations: Normalizations::default(),
            certificates: Certificates {
                route: "trivial".into(),
                ..Default::default()
            },
            alternatives: Vec::new(),
        });
    }
    let fp = Fingerprint::of(g);
    let mut stages: Vec<String> = Vec::new();
    // bipart sizes already rule out most geometries
    let thick = thick_candidates(g.na(), g.nb(), &SUPPORTED_ORDERS);
    let thin = thin_candidates(g.na(), g.nb());
    let odd_q = thick.iter().any(|s| s.q().is_some_and(|q| q >= 3) && s.mode == Mode::Exact);
    if thick.is_empty() {
        stages.push("no thick geometry has these bipart sizes".into());
    }

    if satisfies_min(g, Side::A, 0) || satisfies_min(g, Side::B, 0) || every_vertex_is_pair_intersection(g) {
        match flag_type_i(g) {
            Ok((spec, f)) => {
                let fd = Finding {
                    ty: DetectedType::I,
                    spec,
                    stops: None,
                    complement: false,
                    certs: Certificates {
                        series_trace: f.sizes().to_vec(),
                        route: "flag".into(),
                        ..Default::default()
                    },
                };
                if let Some(r) = confirm(&fp, fd) {
                    return Ok(r);
                }
                stages.push("flag: mismatch".into());
            }
            Err(e) => stages.push(format!("flag: {e}")),
        }
    }

    for side in [Side::B, Side::A].into_iter().filter(|_| !thick.is_empty()) {
        match triples_route(g, side) {
            Ok(fd) => {
                if let Some(r) = confirm(&fp, fd) {
                    return Ok(r);
                }
                stages.push("triples: mismatch".into());
            }
            Err(e) => stages.push(format!("triples: {e}")),
        }
    }

    if let Some(fd) = (!thick.is_empty()).then(|| complement_route(g)).flatten() {
        if let Some(r) = confirm(&fp, fd) {
            return Ok(r);
        }
        stages.push("complement: mismatch".into());
    }

    for side in [Side::B, Side::A].into_iter().filter(|_| odd_q) {
        match quads_route(g, side) {
            Ok(fd) => {
                if let Some(r) = confirm(&fp, fd) {
                    return Ok(r);
                }
                stages.push("quadruples: mismatch".into());
            }
            Err(e) => stages.push(format!("quadruples: {e}")),
        }
    }

    let mut candidates = thick;
    candidates.extend(thin);
    let matches = census_matches(&fp, &candidates);
    let mut specs: Vec<FamilySpec> = matches.iter().map(|(s, _)| *s).collect();
    specs.sort();
    specs.dedup();
    let chosen = match specs.len() {
        0 => None,
        1 => Some(specs[0]),
        _ => crate::autgroup::pick_isomorphic(g, &specs),
    };
    if let Some(spec) = chosen {
        let ty = if spec.mode == Mode::Exact { DetectedType::III } else { DetectedType::II };
        let fd = Finding {
            ty,
            spec,
            stops: None,
            complement: false,
            certs: Certificates {
                route: "census".into(),
                ..Default::default()
            },
        };
        if let Some(r) = confirm(&fp, fd) {
            return Ok(r);
        }
    }
    stages.push(format!("census: {} candidates", specs.len()));
    Err(Error::UnrecognizedStructure(stages.join("; ")))
}

/// Simple graphs: reconstructed through the plain, then the extended,
/// bipartite double.
pub fn reconstruct_simple(g: &SimpleGraph) -> Result<ReconstructionReport> {
    let mut last = None;
    for extended in [false, true] {
        let d = g.bipartite_double(extended);
        match reconstruct(&d) {
            Ok(mut r) => {
                let ok = match r.params {
                    Some(p) => p.i == p.j && (p.mode == Mode::AtLeast) == extended,
                    None => false,
                };
                if ok {
                    r.normalizations.double = Some(extended);
                    return Ok(r);
                }
                last = Some(Error::UnrecognizedStructure(format!("double gives {:?}", r.params)));
            }
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::UnrecognizedStructure("simple graph".into())))
}
