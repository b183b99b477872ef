//! Verification suites. Every check compares an expected value with an
//! observed one; a suite passes when no check fails.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::autgroup::{analyze, geometric_generators, partition_model_generators, CanonicalForm, DEFAULT_NODE_BUDGET};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::graphfam::{build_bigraph, FamilySpec, Mode, Shape, Side, Vertices};
use crate::projgeom::{find_disjoint_space, PointIndex, Subspace};
use crate::reconstruct::{reconstruct, ReconstructionReport};
use crate::roundup::{is_regular_quad, is_regular_triple, quad_verdict, triple_verdict};
use crate::suites::{admissible_thick, admissible_thin, is_thin_exception, predicted_shape, thick_suite, thin_suite};
use crate::thinext::{common_neighbor_table, derived_relation_graph};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

pub const SUITES: [&str; 9] = [
    "paper-tables",
    "trivial-shapes",
    "roundup-equivalence",
    "reconstruction-roundtrip",
    "aut-groups",
    "thin-exceptions",
    "certificates",
    "twin-free",
    "disjoint-space",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub checks: Vec<Check>,
    pub seconds: f64,
}

fn token(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join("_")
}

impl SuiteResult {
    fn new(suite: &str) -> SuiteResult {
        SuiteResult {
            suite: suite.into(),
            checks: Vec::new(),
            seconds: 0.0,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail).collect()
    }

    fn check(&mut self, name: impl Into<String>, expected: impl ToString, observed: impl ToString) {
        let (expected, observed) = (expected.to_string(), observed.to_string());
        let status = if expected == observed { Status::Pass } else { Status::Fail };
        self.checks.push(Check {
            name: name.into(),
            expected,
            observed,
            status,
        });
    }

    fn skip(&mut self, name: impl Into<String>, why: impl ToString) {
        self.checks.push(Check {
            name: name.into(),
            expected: "-".into(),
            observed: why.to_string(),
            status: Status::Skip,
        });
    }

    /// `CHECK <name> <expected> <observed> <PASS|FAIL|SKIP>` lines.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let st = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            writeln!(out, "CHECK {} {} {} {}", token(&c.name), token(&c.expected), token(&c.observed), st).unwrap();
        }
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(out, "SUITE {} {} {:.2}s", self.suite, verdict, self.seconds).unwrap();
        out
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub seed: u64,
    /// random samples per round-up family
    pub samples: usize,
    /// random find_disjoint_space instances
    pub instances: usize,
}

impl Default for Options {
    fn default() -> Options {
        Options {
            seed: DEFAULT_SEED,
            samples: 1_000_000,
            instances: 10_000,
        }
    }
}

pub fn run_suite(name: &str, opts: &Options) -> Result<SuiteResult> {
    let t = Instant::now();
    let mut r = match name {
        "paper-tables" => paper_tables()?,
        "trivial-shapes" => trivial_shapes()?,
        "roundup-equivalence" => roundup_equivalence(opts.seed, opts.samples)?,
        "reconstruction-roundtrip" => reconstruction_roundtrip()?,
        "aut-groups" => aut_groups()?,
        "thin-exceptions" => thin_exceptions()?,
        "certificates" => certificates()?,
        "twin-free" => twin_free()?,
        "disjoint-space" => disjoint_space(opts.seed, opts.instances)?,
        _ => return Err(Error::Parse(format!("unknown suite {name:?}"))),
    };
    r.seconds = t.elapsed().as_secs_f64();
    Ok(r)
}

fn opt_list(v: &[Option<usize>]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.map_or("-".into(), |x| x.to_string())).collect();
    format!("[{}]", parts.join(","))
}

/// Tables of the small thin cases plus the strongly regular graph.
pub fn paper_tables() -> Result<SuiteResult> {
    let mut r = thin_tables()?;
    r.checks.extend(srg_check()?.checks);
    r.suite = "paper-tables".into();
    Ok(r)
}

fn choose(n: i64, k: i64) -> u128 {
    if k < 0 || n < 0 || k > n {
        0
    } else {
        crate::graphfam::binomial(n as u32, k as u32)
    }
}

/// Common neighbours of two m-subsets of an n-set meeting in t points, in
/// the thin (n, m, m; k) graph, by counting how a neighbour splits over
/// A ∩ B, A \ B, B \ A and the rest.
pub fn closed_form_common(n: usize, m: usize, k: usize, t: usize, mode: Mode) -> u128 {
    let (n, m, k, t) = (n as i64, m as i64, k as i64, t as i64);
    let rel = |x: i64| match mode {
        Mode::Exact => x == k,
        Mode::AtLeast => x >= k,
    };
    let mut total = 0;
    for a in 0..=t {
        for x in 0..=m - t {
            for y in 0..=m - t {
                if rel(a + x) && rel(a + y) {
                    total += choose(t, a) * choose(m - t, x) * choose(m - t, y) * choose(n - 2 * m + t, m - a - x - y);
                }
            }
        }
    }
    total
}

/// Valences and common-neighbour tables of the (10,3,3) and (12,4,4)
/// graphs.
pub fn thin_tables() -> Result<SuiteResult> {
    let mut r = SuiteResult::new("thin-tables");
    let ten = |k, mode| FamilySpec::thin(10, 3, 3, k, mode);
    let twelve = |k, mode| FamilySpec::thin(12, 4, 4, k, mode);
    let valences = [
        (ten(0, Mode::Exact), 35),
        (ten(1, Mode::Exact), 63),
        (ten(2, Mode::Exact), 21),
        (ten(2, Mode::AtLeast), 22),
        (twelve(0, Mode::Exact), 70),
        (twelve(1, Mode::Exact), 224),
        (twelve(2, Mode::Exact), 168),
        (twelve(3, Mode::Exact), 32),
        (twelve(2, Mode::AtLeast), 201),
        (twelve(3, Mode::AtLeast), 33),
    ];
    for (s, v) in valences {
        let g = build_bigraph(&s)?.graph;
        let obs = match g.bivalence() {
            Some((a, b)) if a == b => a.to_string(),
            other => format!("{other:?}"),
        };
        r.check(format!("valence {s}"), v, obs);
    }
    let tables: [(FamilySpec, [usize; 4]); 9] = [
        (ten(0, Mode::Exact), [4, 10, 20, 0]),
        (ten(2, Mode::Exact), [0, 4, 8, 0]),
        (ten(2, Mode::AtLeast), [0, 4, 10, 0]),
        (twelve(0, Mode::Exact), [1, 5, 15, 35]),
        (twelve(1, Mode::Exact), [96, 100, 100, 126]),
        (twelve(2, Mode::Exact), [36, 54, 64, 84]),
        (twelve(3, Mode::Exact), [0, 0, 4, 10]),
        (twelve(2, Mode::AtLeast), [36, 72, 102, 138]),
        (twelve(3, Mode::AtLeast), [0, 0, 4, 12]),
    ];
    for (s, row) in tables {
        let width = s.j as usize;
        let want: Vec<Option<usize>> = row[..width].iter().map(|&x| Some(x)).chain([None]).collect();
        let obs = common_neighbor_table(&s)?;
        r.check(format!("common-neighbours {s}"), opt_list(&want), opt_list(&obs));
        let formula: Vec<Option<usize>> = (0..width)
            .map(|t| Some(closed_form_common(s.n, width, s.k as usize, t, s.mode) as usize))
            .chain([None])
            .collect();
        r.check(format!("closed-form {s}"), opt_list(&formula), opt_list(&obs));
    }
    Ok(r)
}

/// Same-bipart vertices of thin (10,3,3;1) with exactly 30 common
/// neighbours form SRG(120,63,30,36).
pub fn srg_check() -> Result<SuiteResult> {
    let mut r = SuiteResult::new("srg");
    let g = build_bigraph(&FamilySpec::thin(10, 3, 3, 1, Mode::Exact))?.graph;
    for side in [Side::A, Side::B] {
        let d = derived_relation_graph(&g, side, |c| c == 30);
        r.check(
            format!("srg count=30 side {side:?}"),
            format!("{:?}", Some((120, 63, 30, 36))),
            format!("{:?}", d.srg_parameters()),
        );
    }
    Ok(r)
}

/// Classification into matchings, complete bipartite and empty graphs
/// agrees with the predicted shape of every admissible tuple.
pub fn trivial_shapes() -> Result<SuiteResult> {
    let mut r = SuiteResult::new("trivial-shapes");
    let mut specs = admissible_thick(&[2, 3], 4);
    specs.extend(admissible_thin(8));
    let obs: Vec<Result<Shape>> = specs
        .par_iter()
        .map(|s| build_bigraph(s).map(|g| g.graph.classify_trivial()))
        .collect();
    for (s, o) in specs.iter().zip(obs) {
        r.check(format!("shape {s}"), format!("{:?}", predicted_shape(s)), format!("{:?}", o?));
    }
    Ok(r)
}

fn thick_vertices(v: &Vertices) -> &[Subspace] {
    match v {
        Vertices::Thick(s) => s,
        Vertices::Thin(_) => panic!("thick spec built thin vertices"),
    }
}

/// Regular triples (or quadruples) through the q+1 members of each pencil:
/// a pair with meet of dimension j−1 determines the pencil as the members
/// between meet and join.
fn pencils(f: &FieldSpec, verts: &[Subspace], size: usize) -> Result<Vec<Vec<usize>>> {
    let pts = PointIndex::new(verts[0].ambient_dim(), f)?;
    let masks: Vec<BitSet> = verts.iter().map(|v| pts.mask(v)).collect();
    let j = verts[0].pdim();
    let meet_count = crate::projgeom::points_in(j - 1, f.order() as u64) as usize;
    let mut out: Vec<Vec<usize>> = (0..verts.len())
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut local = Vec::new();
            for b in a + 1..verts.len() {
                if masks[a].and_count(&masks[b]) != meet_count {
                    continue;
                }
                let join = pts.mask(&verts[a].join(f, &verts[b]).expect("same ambient"));
                let meet = masks[a].and(&masks[b]);
                let mut pencil: Vec<usize> = (0..verts.len())
                    .filter(|&c| masks[c].is_subset(&join) && meet.is_subset(&masks[c]))
                    .collect();
                pencil.sort_unstable();
                // each pencil is reported once, from its first two members
                if pencil.len() == size && pencil[0] == a && pencil[1] == b {
                    local.push(pencil);
                }
            }
            local
        })
        .collect();
    out.sort();
    Ok(out)
}

fn distinct(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    sample(rng, n, k).into_vec()
}

/// Graph-theoretic round-up verdicts against the geometric regularity
/// oracle.
pub fn roundup_equivalence(seed: u64, samples: usize) -> Result<SuiteResult> {
    let mut r = SuiteResult::new("roundup-equivalence");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // exhaustive on lines of PG(3,2)
    let s = FamilySpec::thick(2, 3, 1, 1, 0, Mode::AtLeast);
    let f = FieldSpec::new(2)?;
    let fg = build_bigraph(&s)?;
    let v = thick_vertices(&fg.b);
    let nv = v.len();
    let mismatches: usize = (0..nv)
        .into_par_iter()
        .map(|a| {
            let mut bad = 0;
            for b in a + 1..nv {
                for c in b + 1..nv {
                    let t = [a, b, c];
                    let verdict = triple_verdict(&fg.graph, Side::B, t).expect("valid triple").is_roundup;
                    let oracle = is_regular_triple(&f, [&v[a], &v[b], &v[c]]).expect("same ambient");
                    bad += (verdict != oracle) as usize;
                }
            }
            bad
        })
        .sum();
    r.check(format!("triples exhaustive {s} ({} triples)", nv * (nv - 1) * (nv - 2) / 6), 0, mismatches);

    // all regular triples plus random ones on planes of PG(5,2)
    let s = FamilySpec::thick(2, 5, 2, 2, 1, Mode::AtLeast);
    let fg = build_bigraph(&s)?;
    let v = thick_vertices(&fg.b);
    let regular = pencils(&f, v, 3)?;
    let bad = regular
        .par_iter()
        .filter(|t| {
            let t = [t[0], t[1], t[2]];
            !(is_regular_triple(&f, [&v[t[0]], &v[t[1]], &v[t[2]]]).unwrap_or(false)
                && triple_verdict(&fg.graph, Side::B, t).is_ok_and(|x| x.is_roundup))
        })
        .count();
    r.check(format!("regular triples {s} ({} triples)", regular.len()), 0, bad);
    let draws: Vec<[usize; 3]> = (0..samples)
        .map(|_| {
            let d = distinct(&mut rng, v.len(), 3);
            [d[0], d[1], d[2]]
        })
        .collect();
    let bad = draws
        .par_iter()
        .filter(|t| {
            let verdict = triple_verdict(&fg.graph, Side::B, **t).expect("valid triple").is_roundup;
            verdict != is_regular_triple(&f, [&v[t[0]], &v[t[1]], &v[t[2]]]).expect("same ambient")
        })
        .count();
    r.check(format!("random triples {s} ({samples} samples)"), 0, bad);

    // all regular quadruples plus random ones on lines of PG(3,3)
    let s = FamilySpec::thick(3, 3, 1, 1, 0, Mode::Exact);
    let f = FieldSpec::new(3)?;
    let fg = build_bigraph(&s)?;
    let v = thick_vertices(&fg.b);
    let regular = pencils(&f, v, 4)?;
    let bad = regular
        .par_iter()
        .filter(|t| {
            let t = [t[0], t[1], t[2], t[3]];
            !(is_regular_quad(&f, [&v[t[0]], &v[t[1]], &v[t[2]], &v[t[3]]]).unwrap_or(false)
                && quad_verdict(&fg.graph, Side::B, t).is_ok_and(|x| x.is_roundup))
        })
        .count();
    r.check(format!("regular quadruples {s} ({} quadruples)", regular.len()), 0, bad);
    let draws: Vec<[usize; 4]> = (0..samples)
        .map(|_| {
            let d = distinct(&mut rng, v.len(), 4);
            [d[0], d[1], d[2], d[3]]
        })
        .collect();
    let bad = draws
        .par_iter()
        .filter(|t| {
            let verdict = quad_verdict(&fg.graph, Side::B, **t).expect("valid quadruple").is_roundup;
            verdict != is_regular_quad(&f, [&v[t[0]], &v[t[1]], &v[t[2]], &v[t[3]]]).expect("same ambient")
        })
        .count();
    r.check(format!("random quadruples {s} ({samples} samples)"), 0, bad);
    Ok(r)
}

/// Specs exercised by the round trip, the certificate and the twin checks.
pub fn roundtrip_suite() -> Vec<FamilySpec> {
    let mut specs = thick_suite(&[2, 3], 5, 2000);
    specs.extend(thin_suite(2, 9));
    specs
}

/// The four closed forms for the stop indices of a graph with parameters
/// (n, i, j, k).
pub fn expected_stops(s: &FamilySpec) -> [i64; 4] {
    let (n, i, j, k) = (s.n as i64, s.i as i64, s.j as i64, s.k as i64);
    [k + 1, n + k - i - j, j - k + 1, i - k + 1]
}

/// Outcome of reconstructing one suite graph.
pub fn roundtrip_check(s: &FamilySpec) -> (bool, Option<bool>, String) {
    let rep: Result<ReconstructionReport> = build_bigraph(s).and_then(|g| reconstruct(&g.graph));
    match rep {
        Ok(rep) => {
            let ok = rep.params == Some(*s) || rep.alternatives.contains(s);
            // stop indices describe the complement's parameters when the
            // complement route was taken
            let stops_ok = match (rep.stop_indices, rep.params) {
                (Some(m), Some(p)) => {
                    let p = if rep.normalizations.complement {
                        FamilySpec { k: 0, mode: Mode::AtLeast, ..p }
                    } else {
                        p
                    };
                    Some(m.map(|x| x as i64) == expected_stops(&p))
                }
                _ => None,
            };
            let obs = rep.params.map_or("none".into(), |p| p.to_string());
            (ok, stops_ok, format!("{obs} via {}", rep.certificates.route))
        }
        Err(e) => (false, None, e.to_string()),
    }
}

pub fn reconstruction_roundtrip() -> Result<SuiteResult> {
    let mut r = SuiteResult::new("reconstruction-roundtrip");
    for s in roundtrip_suite() {
        let (ok, stops, obs) = roundtrip_check(&s);
        r.check(format!("roundtrip {s}"), s.to_string(), if ok { s.to_string() } else { obs });
        if let Some(st) = stops {
            r.check(format!("stop-identities {s}"), true, st);
        }
    }
    Ok(r)
}

/// Specs whose automorphism group is compared with the geometric one.
pub fn aut_suite() -> Vec<FamilySpec> {
    let mut specs = vec![
        FamilySpec::thick(2, 2, 0, 1, 0, Mode::Exact),
        FamilySpec::thick(2, 3, 1, 1, 0, Mode::Exact),
        FamilySpec::thick(2, 3, 1, 2, 1, Mode::Exact),
    ];
    specs.extend(thin_suite(2, 8).into_iter().filter(|s| !is_thin_exception(s)));
    specs
}

fn aut_order(s: &FamilySpec) -> Result<u128> {
    let g = build_bigraph(s)?.graph.to_simple();
    Ok(analyze(&g, g.order(), DEFAULT_NODE_BUDGET)?.0.order())
}

pub fn aut_groups() -> Result<SuiteResult> {
    let mut r = SuiteResult::new("aut-groups");
    r.check("order heawood", 336, aut_order(&FamilySpec::thick(2, 2, 0, 1, 0, Mode::Exact))?);
    for s in aut_suite() {
        let geo = geometric_generators(&s)?.order();
        let aut = aut_order(&s)?;
        r.check(format!("order {s}"), geo, aut);
        if geo != aut {
            let twins = twin_pairs(&build_bigraph(&s)?.graph);
            r.skip(format!("note {s}"), format!("{twins} twin pairs; ratio {}", aut as f64 / geo as f64));
        }
    }
    Ok(r)
}

/// Thin graphs with automorphisms beyond the permutations of the ground
/// set: orders strictly exceed the induced group and match the models.
pub fn thin_exceptions() -> Result<SuiteResult> {
    let mut r = SuiteResult::new("thin-exceptions");
    let cases = [
        // PG(3,2) points against non-incident planes
        (FamilySpec::thin(6, 2, 2, 1, Mode::Exact), geometric_generators(&FamilySpec::thick(2, 3, 0, 2, -1, Mode::Exact))?.order()),
        (FamilySpec::thin(7, 3, 3, 1, Mode::Exact), partition_model_generators(&FamilySpec::thin(7, 3, 3, 1, Mode::Exact))?.order()),
    ];
    for (s, model) in cases {
        let induced = geometric_generators(&s)?.order();
        let aut = aut_order(&s)?;
        r.check(format!("exceeds-induced {s}"), format!(">{induced}"), if aut > induced { format!(">{induced}") } else { aut.to_string() });
        r.check(format!("model-order {s}"), model, aut);
    }
    r.check("model-order-value (6,2,2;1)", 40320, cases[0].1);
    r.check("model-order-value (7,3,3;1)", 80640, cases[1].1);
    Ok(r)
}

/// Graph isomorphisms between thin and thick graphs that are known to
/// exist over GF(2).
pub fn known_coincidences() -> Vec<(FamilySpec, FamilySpec)> {
    vec![
        (FamilySpec::thin(6, 2, 2, 1, Mode::Exact), FamilySpec::thick(2, 3, 0, 2, -1, Mode::Exact).normalize().0),
        (FamilySpec::thin(7, 3, 3, 1, Mode::Exact), FamilySpec::thick(2, 3, 1, 1, 0, Mode::Exact).normalize().0),
    ]
}

/// Largest bipart for which certificates are computed.
pub const CERT_MAX_BIPART: usize = 2000;

fn certificate(s: &FamilySpec) -> Result<CanonicalForm> {
    let g = build_bigraph(s)?.graph.to_simple();
    Ok(analyze(&g, g.order(), DEFAULT_NODE_BUDGET)?.1)
}

/// Canonical certificates separate the normalized specs and identify dual
/// pairs.
pub fn certificates() -> Result<SuiteResult> {
    let mut r = SuiteResult::new("certificates");
    let specs: Vec<FamilySpec> = roundtrip_suite()
        .into_iter()
        .filter(|s| {
            let sizes = crate::graphfam::side_count(s, s.i).max(crate::graphfam::side_count(s, s.j));
            sizes <= CERT_MAX_BIPART as u128
        })
        .collect();
    let mut by_cert: BTreeMap<Vec<u8>, Vec<FamilySpec>> = BTreeMap::new();
    for s in &specs {
        by_cert.entry(certificate(s)?.certificate).or_default().push(*s);
    }
    let known = known_coincidences();
    let mut collisions = Vec::new();
    for group in by_cert.values().filter(|g| g.len() > 1) {
        let explained = group.len() == 2
            && known.iter().any(|&(a, b)| (group[0] == a && group[1] == b) || (group[0] == b && group[1] == a));
        if !explained {
            collisions.push(format!("{group:?}"));
        }
    }
    r.check(format!("distinct certificates ({} specs)", specs.len()), 0, collisions.len());
    for c in collisions {
        r.skip("collision", c);
    }
    for s in specs.iter().filter(|s| !s.is_thin()) {
        let d = s.dual();
        if d == *s {
            continue;
        }
        let same = certificate(s)?.certificate == certificate(&d)?.certificate;
        r.check(format!("dual-certificate {s}"), true, same);
    }
    for (a, b) in known_coincidences() {
        r.check(format!("coincidence {a} ~ {b}"), true, certificate(&a)?.certificate == certificate(&b)?.certificate);
    }
    Ok(r)
}

/// Largest bipart for which all pairs are checked for distinguishing
/// neighbours.
pub const DISTINGUISH_MAX_BIPART: usize = 500;

/// Same-bipart pairs with equal neighbourhoods.
pub fn twin_pairs(g: &crate::graphfam::BiGraph) -> usize {
    [Side::A, Side::B]
        .iter()
        .map(|&side| {
            let mut count: HashMap<&BitSet, usize> = HashMap::new();
            for nb in g.nbhds(side) {
                *count.entry(nb).or_default() += 1;
            }
            count.values().map(|&c| c * (c - 1) / 2).sum::<usize>()
        })
        .sum()
}

/// Every suite graph is twin-free; on the projective graphs any two
/// same-bipart vertices are told apart by at least two neighbours.
pub fn twin_free() -> Result<SuiteResult> {
    let mut r = SuiteResult::new("twin-free");
    for s in roundtrip_suite() {
        let g = build_bigraph(&s)?.graph;
        r.check(format!("twin-free {s}"), true, g.twin_free());
        if !g.twin_free() {
            r.skip(format!("note {s}"), format!("{} twin pairs", twin_pairs(&g)));
        }
        if !s.is_thin() && g.na().max(g.nb()) <= DISTINGUISH_MAX_BIPART {
            let d = g.min_distinguishing().unwrap_or(usize::MAX);
            r.check(format!("distinguishing>=2 {s}"), true, d >= 2);
        }
    }
    Ok(r)
}

/// A uniformly random subspace of projective dimension `d` in PG(n, q).
pub fn random_subspace(rng: &mut ChaCha8Rng, f: &FieldSpec, n: usize, d: i32) -> Result<Subspace> {
    let mut rows: Vec<Vec<u8>> = Vec::new();
    let mut cur = Subspace::empty(n, f);
    while cur.pdim() < d {
        let v: Vec<u8> = (0..=n).map(|_| rng.gen_range(0..f.order()) as u8).collect();
        if v.iter().all(|&x| x == 0) || cur.contains_vector(f, &v) {
            continue;
        }
        rows.push(v);
        cur = Subspace::canonicalize(n, f, &rows)?;
    }
    Ok(cur)
}

/// Seeded random instances of the disjoint-space construction; the output
/// has the promised dimension and misses every given subspace.
pub fn disjoint_space(seed: u64, instances: usize) -> Result<SuiteResult> {
    let mut r = SuiteResult::new("disjoint-space");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cache: HashMap<(u32, usize), (FieldSpec, PointIndex)> = HashMap::new();
    let mut bad = Vec::new();
    for t in 0..instances {
        let q = [2u32, 3][rng.gen_range(0..2)];
        let a = rng.gen_range(2..=5usize);
        let b = rng.gen_range(0..a as i32);
        if !cache.contains_key(&(q, a)) {
            let f = FieldSpec::new(q)?;
            let p = PointIndex::new(a, &f)?;
            cache.insert((q, a), (f, p));
        }
        let (f, pts) = &cache[&(q, a)];
        let dims = [b, rng.gen_range(-1..b), rng.gen_range(-1..b), rng.gen_range(-1..=(b - 2).max(-1))];
        let bb = random_subspace(&mut rng, f, a, dims[0])?;
        let b1 = random_subspace(&mut rng, f, a, dims[1])?;
        let b2 = random_subspace(&mut rng, f, a, dims[2])?;
        let b3 = random_subspace(&mut rng, f, a, dims[3])?;
        let ok = match find_disjoint_space(f, &bb, &b1, &b2, &b3) {
            Ok(c) => {
                let m = pts.mask(&c);
                c.pdim() == a as i32 - b - 1 && [&bb, &b1, &b2, &b3].iter().all(|x| !m.intersects(&pts.mask(x)))
            }
            Err(_) => false,
        };
        if !ok {
            bad.push(format!("instance {t}: q={q} a={a} b={b}"));
        }
    }
    r.check(format!("disjoint-space ({instances} instances, seed {seed})"), 0, bad.len());
    for b in bad.into_iter().take(10) {
        r.skip("failed", b);
    }
    Ok(r)
}
