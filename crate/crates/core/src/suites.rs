//! Parameter suites and the checks run by `weylgraph verify`.

use std::collections::BTreeSet;

use crate::graphfam::{side_count, FamilySpec, Geometry, Mode, Shape};

/// All admissible thick tuples −1 ≤ k ≤ i ≤ j ≤ n−1, i ≥ 0, in both modes.
pub fn admissible_thick(qs: &[u32], max_n: usize) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for &q in qs {
        for n in 2..=max_n {
            for i in 0..n as i32 {
                for j in i..n as i32 {
                    for k in -1..=i {
                        for mode in [Mode::Exact, Mode::AtLeast] {
                            out.push(FamilySpec::thick(q, n, i, j, k, mode));
                        }
                    }
                }
            }
        }
    }
    out
}

/// All admissible thin tuples 0 ≤ k ≤ i ≤ j ≤ n−1, i ≥ 1, in both modes.
pub fn admissible_thin(max_n: usize) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for i in 1..n as i32 {
            for j in i..n as i32 {
                for k in 0..=i {
                    for mode in [Mode::Exact, Mode::AtLeast] {
                        out.push(FamilySpec::thin(n, i, j, k, mode));
                    }
                }
            }
        }
    }
    out
}

fn flip(s: Shape) -> Shape {
    match s {
        Shape::Empty => Shape::CompleteBipartite,
        Shape::CompleteBipartite => Shape::Empty,
        Shape::Matching => Shape::ComplementOfMatching,
        Shape::ComplementOfMatching => Shape::Matching,
        Shape::Nontrivial => Shape::Nontrivial,
    }
}

fn sorted(s: FamilySpec) -> FamilySpec {
    if s.i > s.j {
        s.swapped()
    } else {
        s
    }
}

/// Shape forced by the direct rules, without using any isomorphism.
fn direct_shape(s: &FamilySpec) -> Option<Shape> {
    let n = s.n as i32;
    let (i, j, k) = (s.i, s.j, s.k);
    let bottom = if s.is_thin() { 1 } else { 0 };
    match s.mode {
        Mode::Exact => {
            if i == j && j == k && k >= bottom {
                Some(Shape::Matching)
            } else if s.is_thin() && i + j == n && k == 0 {
                Some(Shape::Matching)
            } else if i == j && (j == n - 1 || j == bottom) && k + 1 == j {
                Some(Shape::ComplementOfMatching)
            } else if n + k < i + j {
                Some(Shape::Empty)
            } else {
                None
            }
        }
        Mode::AtLeast => {
            let floor = if s.is_thin() { 0 } else { -1 };
            if n + k <= i + j || k == floor {
                Some(Shape::CompleteBipartite)
            } else if i == j && j == k {
                Some(Shape::Matching)
            } else {
                None
            }
        }
    }
}

/// The trivial shape predicted for an admissible tuple: the direct rules
/// applied to the tuple and to its images under duality (thick) or side
/// complementation (thin); `Nontrivial` when no rule applies.
pub fn predicted_shape(s: &FamilySpec) -> Shape {
    let s = sorted(*s);
    if let Some(x) = direct_shape(&s) {
        return x;
    }
    let n = s.n as i32;
    match s.geometry {
        Geometry::Thick { .. } => {
            if let Some(x) = direct_shape(&sorted(s.dual())) {
                return x;
            }
            if s.mode == Mode::AtLeast && s.k == s.i + s.j + 1 - n {
                let e = FamilySpec { k: s.k - 1, mode: Mode::Exact, ..s };
                if let Some(x) = direct_shape(&e).or_else(|| direct_shape(&sorted(e.dual()))) {
                    return flip(x);
                }
            }
        }
        Geometry::Thin => {
            let images = [
                FamilySpec { j: n - s.j, k: s.i - s.k, ..s },
                FamilySpec { i: n - s.i, k: s.j - s.k, ..s },
            ];
            for im in images {
                let im = sorted(im);
                if im.k < 0 || im.k > im.i || im.i < 1 || im.j > n - 1 {
                    continue;
                }
                match s.mode {
                    Mode::Exact => {
                        if let Some(x) = direct_shape(&im) {
                            return x;
                        }
                    }
                    Mode::AtLeast => {
                        // Γ_{≥k} is the bipartite complement of Γ_{≥k'+1}
                        let c = FamilySpec { k: im.k + 1, ..im };
                        if c.k <= c.i {
                            if let Some(x) = direct_shape(&c) {
                                return flip(x);
                            }
                        }
                    }
                }
            }
        }
    }
    Shape::Nontrivial
}

/// Normalized thick specs with both biparts of at most `max_bipart`
/// vertices (triviality is not checked here).
pub fn thick_suite(qs: &[u32], max_n: usize, max_bipart: u128) -> Vec<FamilySpec> {
    let mut out = BTreeSet::new();
    for s in admissible_thick(qs, max_n) {
        if predicted_shape(&s) != Shape::Nontrivial {
            continue;
        }
        let (norm, _) = s.normalize();
        if side_count(&norm, norm.i) <= max_bipart && side_count(&norm, norm.j) <= max_bipart {
            out.insert(norm);
        }
    }
    out.into_iter().collect()
}

/// Normalized thin specs in the determining range.
pub fn thin_suite(min_n: usize, max_n: usize) -> Vec<FamilySpec> {
    let mut out = BTreeSet::new();
    for s in admissible_thin(max_n) {
        if s.n < min_n || predicted_shape(&s) != Shape::Nontrivial {
            continue;
        }
        let (norm, _) = s.normalize();
        if norm.in_thin_scope() {
            out.insert(norm);
        }
    }
    out.into_iter().collect()
}

/// Thin specs with an automorphism group beyond Sym(n) (and complements).
pub fn is_thin_exception(s: &FamilySpec) -> bool {
    s.is_thin()
        && s.mode == Mode::Exact
        && ((s.n, s.i, s.j, s.k) == (6, 2, 2, 1)
            || (s.n % 4 == 3 && s.n >= 7 && s.i == s.j && 2 * s.i + 1 == s.n as i32 && 2 * s.k + 1 == s.i))
}
