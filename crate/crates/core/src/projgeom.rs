//! Subspaces of PG(n, q) in canonical reduced row-echelon form, their
//! enumeration, lattice operations, residues, and the constructive
//! disjoint-space finder.

use std::collections::HashMap;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::field::FieldSpec;

/// Default cap on the number of subspaces produced by one enumeration.
pub const DEFAULT_ENUM_CAP: u64 = 2_000_000;

/// A subspace of PG(n, q). `rows` is the unique reduced row-echelon basis;
/// the empty subspace has no rows and projective dimension −1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    n: usize,
    q: u8,
    rows: Vec<Vec<u8>>,
}

impl Subspace {
    pub fn empty(n: usize, f: &FieldSpec) -> Subspace {
        Subspace {
            n,
            q: f.order() as u8,
            rows: Vec::new(),
        }
    }

    pub fn whole(n: usize, f: &FieldSpec) -> Subspace {
        let rows = (0..=n)
            .map(|r| (0..=n).map(|c| u8::from(r == c)).collect())
            .collect();
        Subspace {
            n,
            q: f.order() as u8,
            rows,
        }
    }

    /// Row space of `rows`, each of which must have `n + 1` entries.
    pub fn canonicalize(n: usize, f: &FieldSpec, rows: &[Vec<u8>]) -> Result<Subspace> {
        if let Some(r) = rows.iter().find(|r| r.len() != n + 1) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} in PG({n}, q)",
                r.len()
            )));
        }
        Ok(Subspace {
            n,
            q: f.order() as u8,
            rows: rref(f, rows.to_vec()),
        })
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn field_order(&self) -> u32 {
        self.q as u32
    }

    /// Projective dimension (vector rank − 1).
    #[inline]
    pub fn pdim(&self) -> i32 {
        self.rows.len() as i32 - 1
    }

    #[inline]
    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).expect("rref rows are nonzero"))
            .collect()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.n != other.n || self.q != other.q {
            Err(Error::AmbientMismatch)
        } else {
            Ok(())
        }
    }

    /// Whether the vector `v` lies in this subspace.
    pub fn contains_vector(&self, f: &FieldSpec, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        for (row, piv) in self.rows.iter().zip(self.pivots()) {
            let c = w[piv];
            if c != 0 {
                for (x, &r) in w.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }

    pub fn contains(&self, f: &FieldSpec, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains_vector(f, r))
    }

    pub fn join(&self, f: &FieldSpec, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Subspace {
            n: self.n,
            q: self.q,
            rows: rref(f, rows),
        })
    }

    pub fn meet(&self, f: &FieldSpec, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let d = self.dual_complement(f).join(f, &other.dual_complement(f))?;
        Ok(d.dual_complement(f))
    }

    /// Annihilator under the standard dot product.
    pub fn dual_complement(&self, f: &FieldSpec) -> Subspace {
        let width = self.n + 1;
        let pivots = self.pivots();
        let mut basis = Vec::new();
        for free in (0..width).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u8; width];
            v[free] = 1;
            for (row, &piv) in self.rows.iter().zip(&pivots) {
                v[piv] = f.neg(row[free]);
            }
            basis.push(v);
        }
        Subspace {
            n: self.n,
            q: self.q,
            rows: rref(f, basis),
        }
    }

    /// Image under the row-vector action v ↦ v·M.
    pub fn transform(&self, f: &FieldSpec, m: &[Vec<u8>]) -> Subspace {
        let rows = self.rows.iter().map(|r| vec_mat(f, r, m)).collect();
        Subspace {
            n: self.n,
            q: self.q,
            rows: rref(f, rows),
        }
    }

    /// Image under a coordinatewise field automorphism.
    pub fn map_entries(&self, f: &FieldSpec, sigma: impl Fn(u8) -> u8) -> Subspace {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| sigma(x)).collect())
            .collect();
        Subspace {
            n: self.n,
            q: self.q,
            rows: rref(f, rows),
        }
    }
}

pub fn vec_mat(f: &FieldSpec, v: &[u8], m: &[Vec<u8>]) -> Vec<u8> {
    let width = m[0].len();
    let mut out = vec![0u8; width];
    for (i, &a) in v.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (o, &b) in out.iter_mut().zip(&m[i]) {
            *o = f.add(*o, f.mul(a, b));
        }
    }
    out
}

/// Reduced row-echelon form with zero rows dropped.
pub fn rref(f: &FieldSpec, mut rows: Vec<Vec<u8>>) -> Vec<Vec<u8>> {
    let width = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][col]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col] == 0 {
                continue;
            }
            let c = row[col];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = f.sub(*x, f.mul(c, y));
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

/// Gaussian binomial [m choose r]_q by the product formula.
pub fn gaussian_binomial(m: u32, r: u32, q: u64) -> u128 {
    if r > m {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for t in 0..r {
        num *= q.pow(m - t) - 1;
        den *= q.pow(t + 1) - 1;
    }
    num / den
}

/// Number of points of PG(d, q), i.e. of a projective d-space.
pub fn points_in(d: i32, q: u64) -> u64 {
    if d < 0 {
        0
    } else {
        ((q as u128).pow(d as u32 + 1) as u64 - 1) / (q - 1)
    }
}

/// All `d`-subspaces of PG(n, q) in lexicographic order of canonical matrices.
pub fn enumerate_subspaces(n: usize, d: i32, f: &FieldSpec, cap: u64) -> Result<Vec<Subspace>> {
    if d < -1 || d > n as i32 {
        return Err(Error::PreconditionViolation(format!(
            "dimension {d} outside [-1, {n}]"
        )));
    }
    let count = gaussian_binomial(n as u32 + 1, (d + 1) as u32, f.order() as u64);
    if count > cap as u128 {
        return Err(Error::TooLarge {
            count: count.min(u64::MAX as u128) as u64,
            cap,
        });
    }
    let width = n + 1;
    let rank = (d + 1) as usize;
    let q = f.order() as u8;
    let mut out = Vec::with_capacity(count as usize);
    for pivots in combinations(width, rank) {
        // free positions: (row, col) with col > pivot[row] and col not a pivot
        let free: Vec<(usize, usize)> = (0..rank)
            .flat_map(|r| {
                let pv = &pivots;
                (pv[r] + 1..width)
                    .filter(move |c| !pv.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let mut digits = vec![0u8; free.len()];
        loop {
            let mut rows = vec![vec![0u8; width]; rank];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = 1;
            }
            for (&(r, c), &x) in free.iter().zip(&digits) {
                rows[r][c] = x;
            }
            out.push(Subspace { n, q, rows });
            if !increment(&mut digits, q) {
                break;
            }
        }
    }
    out.sort();
    Ok(out)
}

fn increment(digits: &mut [u8], base: u8) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// k-subsets of 0..m in lexicographic order.
pub fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > m {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if c[i] < m - k + i {
                c[i] += 1;
                for t in i + 1..k {
                    c[t] = c[t - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The point set of PG(n, q) with an index, for bitmask membership queries.
#[derive(Clone, Debug)]
pub struct PointIndex {
    n: usize,
    field: FieldSpec,
    points: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

impl PointIndex {
    pub fn new(n: usize, f: &FieldSpec) -> Result<PointIndex> {
        let pts = enumerate_subspaces(n, 0, f, DEFAULT_ENUM_CAP)?;
        let points: Vec<Vec<u8>> = pts.into_iter().map(|p| p.rows[0].clone()).collect();
        let index = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        Ok(PointIndex {
            n,
            field: f.clone(),
            points,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &[u8] {
        &self.points[i]
    }

    /// Index of the point spanned by a nonzero vector.
    pub fn index_of(&self, v: &[u8]) -> Option<usize> {
        let lead = *v.iter().find(|&&x| x != 0)?;
        let inv = self.field.inv(lead);
        let norm: Vec<u8> = v.iter().map(|&x| self.field.mul(x, inv)).collect();
        self.index.get(&norm).copied()
    }

    /// Membership bitmask of the points of `u`.
    pub fn mask(&self, u: &Subspace) -> BitSet {
        let f = &self.field;
        let mut m = BitSet::new(self.points.len());
        let rank = u.rows.len();
        if rank == 0 {
            return m;
        }
        let q = f.order() as u8;
        let width = self.n + 1;
        // coefficient vectors with leading coefficient 1 hit each point once
        for lead in 0..rank {
            let mut digits = vec![0u8; rank - lead - 1];
            loop {
                let mut v = u.rows[lead].clone();
                for (t, &c) in digits.iter().enumerate() {
                    if c != 0 {
                        let row = &u.rows[lead + 1 + t];
                        for x in 0..width {
                            v[x] = f.add(v[x], f.mul(c, row[x]));
                        }
                    }
                }
                m.insert(self.index[&v]);
                if !increment(&mut digits, q) {
                    break;
                }
            }
        }
        m
    }

    /// Projective dimension of a subspace with `count` points.
    pub fn dim_from_count(&self, count: usize) -> i32 {
        let q = self.field.order() as u64;
        let mut d = -1;
        while points_in(d, q) < count as u64 {
            d += 1;
        }
        debug_assert_eq!(points_in(d, q), count as u64);
        d
    }
}

/// Quotient by a fixed subspace K: subspaces through K correspond to
/// subspaces of a projective space of dimension n − pdim(K) − 1.
#[derive(Clone, Debug)]
pub struct Residue {
    base: Subspace,
    pivots: Vec<usize>,
    free_cols: Vec<usize>,
}

impl Residue {
    pub fn new(base: Subspace) -> Residue {
        let pivots = base.pivots();
        let free_cols = (0..=base.n).filter(|c| !pivots.contains(c)).collect();
        Residue {
            base,
            pivots,
            free_cols,
        }
    }

    pub fn base(&self) -> &Subspace {
        &self.base
    }

    /// Projective dimension of the residue space.
    pub fn dim(&self) -> usize {
        self.free_cols.len() - 1
    }

    fn reduce(&self, f: &FieldSpec, v: &[u8]) -> Vec<u8> {
        let mut w = v.to_vec();
        for (row, &piv) in self.base.rows.iter().zip(&self.pivots) {
            let c = w[piv];
            if c != 0 {
                for (x, &r) in w.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
        self.free_cols.iter().map(|&c| w[c]).collect()
    }

    pub fn project(&self, f: &FieldSpec, w: &Subspace) -> Result<Subspace> {
        self.base.check_ambient(w)?;
        if !w.contains(f, &self.base) {
            return Err(Error::NotContaining);
        }
        let rows = w.rows.iter().map(|r| self.reduce(f, r)).collect();
        Ok(Subspace {
            n: self.dim(),
            q: self.base.q,
            rows: rref(f, rows),
        })
    }

    /// Image of an arbitrary subspace W in the residue, i.e. ⟨W, K⟩/K.
    pub fn project_span(&self, f: &FieldSpec, w: &Subspace) -> Result<Subspace> {
        let span = w.join(f, &self.base)?;
        self.project(f, &span)
    }

    pub fn lift(&self, f: &FieldSpec, w: &Subspace) -> Result<Subspace> {
        if w.n != self.dim() || w.q != self.base.q {
            return Err(Error::AmbientMismatch);
        }
        let width = self.base.n + 1;
        let mut rows = self.base.rows.clone();
        for r in &w.rows {
            let mut v = vec![0u8; width];
            for (&c, &x) in self.free_cols.iter().zip(r) {
                v[c] = x;
            }
            rows.push(v);
        }
        Ok(Subspace {
            n: self.base.n,
            q: self.base.q,
            rows: rref(f, rows),
        })
    }
}

/// Constructs an (a−b−1)-space disjoint from B ∪ B1 ∪ B2 ∪ B3 in PG(a, q),
/// where pdim B = b, pdim B1, B2 ≤ b−1 and pdim B3 ≤ b−2. Each induction
/// step takes the lexicographically first point outside the union and
/// recurses in its residue.
pub fn find_disjoint_space(
    f: &FieldSpec,
    b: &Subspace,
    b1: &Subspace,
    b2: &Subspace,
    b3: &Subspace,
) -> Result<Subspace> {
    let a = b.n;
    let bd = b.pdim();
    for x in [b1, b2, b3] {
        b.check_ambient(x)?;
    }
    if a < 2 || bd < 0 || bd >= a as i32 {
        return Err(Error::PreconditionViolation(format!(
            "need a >= 2 and 0 <= b < a, got a = {a}, b = {bd}"
        )));
    }
    if b1.pdim() > bd - 1 || b2.pdim() > bd - 1 || b3.pdim() > (bd - 2).max(-1) {
        return Err(Error::PreconditionViolation(
            "dimension bounds on B1, B2, B3 violated".into(),
        ));
    }
    disjoint_rec(f, [b.clone(), b1.clone(), b2.clone(), b3.clone()], a as i32 - bd - 1)
}

fn disjoint_rec(f: &FieldSpec, avoid: [Subspace; 4], want: i32) -> Result<Subspace> {
    let n = avoid[0].n;
    let pts = PointIndex::new(n, f)?;
    let x = (0..pts.len())
        .map(|i| pts.point(i))
        .find(|p| avoid.iter().all(|s| !s.contains_vector(f, p)))
        .ok_or_else(|| Error::PreconditionViolation("union covers the space".into()))?;
    let xs = Subspace::canonicalize(n, f, &[x.to_vec()])?;
    if want == 0 {
        return Ok(xs);
    }
    let res = Residue::new(xs);
    let images = [
        res.project_span(f, &avoid[0])?,
        res.project_span(f, &avoid[1])?,
        res.project_span(f, &avoid[2])?,
        res.project_span(f, &avoid[3])?,
    ];
    let inner = disjoint_rec(f, images, want - 1)?;
    res.lift(f, &inner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn gf(q: u32) -> FieldSpec {
        FieldSpec::new(q).unwrap()
    }

    fn span(f: &FieldSpec, n: usize, rows: &[&[u8]]) -> Subspace {
        Subspace::canonicalize(n, f, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    // independent oracle: explicit point set of a row space
    fn point_set(f: &FieldSpec, u: &Subspace) -> BTreeSet<Vec<u8>> {
        let rank = u.rows().len();
        let q = f.order() as u8;
        let mut out = BTreeSet::new();
        let mut c = vec![0u8; rank];
        loop {
            let mut v = vec![0u8; u.ambient_dim() + 1];
            for (r, &a) in c.iter().enumerate() {
                for (x, &y) in v.iter_mut().zip(&u.rows()[r]) {
                    *x = f.add(*x, f.mul(a, y));
                }
            }
            if let Some(&lead) = v.iter().find(|&&x| x != 0) {
                let inv = f.inv(lead);
                out.insert(v.iter().map(|&x| f.mul(x, inv)).collect());
            }
            if !increment(&mut c, q) {
                break;
            }
        }
        out
    }

    #[test]
    fn canonicalize_edge_cases() {
        let f = gf(2);
        let e = Subspace::canonicalize(3, &f, &[]).unwrap();
        assert_eq!(e.pdim(), -1);
        let id: Vec<Vec<u8>> = (0..4).map(|r| (0..4).map(|c| u8::from(r == c)).collect()).collect();
        assert_eq!(Subspace::canonicalize(3, &f, &id).unwrap().pdim(), 3);
        assert!(matches!(
            Subspace::canonicalize(3, &f, &[vec![1, 0]]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn different_bases_same_line() {
        let f = gf(2);
        let a = span(&f, 3, &[&[1, 1, 0, 0], &[0, 1, 1, 0]]);
        let b = span(&f, 3, &[&[1, 0, 1, 0], &[0, 1, 1, 0]]);
        assert_eq!(point_set(&f, &a), point_set(&f, &b));
        assert_eq!(point_set(&f, &a).len(), 3);
        assert_eq!(a, b);
    }

    #[test]
    fn enumeration_counts() {
        let f = gf(2);
        assert_eq!(enumerate_subspaces(3, 0, &f, DEFAULT_ENUM_CAP).unwrap().len(), 15);
        assert_eq!(enumerate_subspaces(3, 1, &f, DEFAULT_ENUM_CAP).unwrap().len(), 35);
        for q in [2, 3] {
            let f = gf(q);
            for n in 0..=5 {
                assert_eq!(enumerate_subspaces(n, -1, &f, DEFAULT_ENUM_CAP).unwrap().len(), 1);
            }
        }
        assert!(matches!(
            enumerate_subspaces(5, 2, &gf(3), 1000),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn enumeration_matches_gaussian_binomial_and_is_distinct() {
        for q in [2u32, 3] {
            let f = gf(q);
            for n in 0..=5usize {
                for d in -1..=n as i32 {
                    let expect = gaussian_binomial(n as u32 + 1, (d + 1) as u32, q as u64);
                    if expect > 20_000 {
                        continue;
                    }
                    let all = enumerate_subspaces(n, d, &f, DEFAULT_ENUM_CAP).unwrap();
                    assert_eq!(all.len() as u128, expect, "n={n} d={d} q={q}");
                    assert!(all.windows(2).all(|w| w[0] < w[1]));
                }
            }
        }
    }

    #[test]
    fn lattice_identities() {
        let f = gf(2);
        let whole = Subspace::whole(3, &f);
        let empty = Subspace::empty(3, &f);
        for u in enumerate_subspaces(3, 1, &f, DEFAULT_ENUM_CAP).unwrap() {
            assert_eq!(u.meet(&f, &whole).unwrap(), u);
            assert_eq!(u.join(&f, &empty).unwrap(), u);
        }
        let p = span(&f, 3, &[&[1, 0, 0, 0]]);
        let r = span(&f, 3, &[&[0, 1, 0, 0]]);
        assert_eq!(p.join(&f, &r).unwrap().pdim(), 1);
        assert_eq!(p.meet(&f, &r).unwrap().pdim(), -1);
        let other = Subspace::whole(2, &f);
        assert_eq!(p.meet(&f, &other), Err(Error::AmbientMismatch));
    }

    #[test]
    fn planes_spanning_pg4_meet_in_a_point() {
        let f = gf(2);
        let a = span(&f, 4, &[&[1, 0, 0, 0, 0], &[0, 1, 0, 0, 0], &[0, 0, 1, 0, 0]]);
        let b = span(&f, 4, &[&[0, 0, 1, 0, 0], &[0, 0, 0, 1, 0], &[0, 0, 0, 0, 1]]);
        assert_eq!(a.join(&f, &b).unwrap().pdim(), 4);
        let m = a.meet(&f, &b).unwrap();
        assert_eq!(m.pdim(), 0);
        let oracle: BTreeSet<_> = point_set(&f, &a).intersection(&point_set(&f, &b)).cloned().collect();
        assert_eq!(point_set(&f, &m), oracle);
    }

    #[test]
    fn meet_matches_point_intersection_exhaustively() {
        for q in [2u32, 3] {
            let f = gf(q);
            let lines = enumerate_subspaces(3, 1, &f, DEFAULT_ENUM_CAP).unwrap();
            let planes = enumerate_subspaces(3, 2, &f, DEFAULT_ENUM_CAP).unwrap();
            for u in lines.iter().take(20) {
                for v in planes.iter().chain(lines.iter()) {
                    let m = u.meet(&f, v).unwrap();
                    let oracle: BTreeSet<_> =
                        point_set(&f, u).intersection(&point_set(&f, v)).cloned().collect();
                    assert_eq!(point_set(&f, &m), oracle);
                    let j = u.join(&f, v).unwrap();
                    assert_eq!(u.pdim() + v.pdim(), m.pdim() + j.pdim());
                }
            }
        }
    }

    #[test]
    fn duality_is_inclusion_reversing_involution() {
        let f = gf(2);
        assert_eq!(Subspace::empty(3, &f).dual_complement(&f), Subspace::whole(3, &f));
        let lines = enumerate_subspaces(3, 1, &f, DEFAULT_ENUM_CAP).unwrap();
        for u in &lines {
            let d = u.dual_complement(&f);
            assert_eq!(d.pdim(), 3 - 1 - u.pdim());
            assert_eq!(d.dual_complement(&f), *u);
        }
        for u in &lines {
            for v in &lines {
                let k = u.meet(&f, v).unwrap().pdim();
                let kd = u.dual_complement(&f).meet(&f, &v.dual_complement(&f)).unwrap().pdim();
                assert_eq!(kd, 3 - 1 + k - u.pdim() - v.pdim());
            }
        }
    }

    #[test]
    fn residue_round_trip() {
        let f = gf(2);
        let k = span(&f, 4, &[&[1, 0, 0, 0, 0]]);
        let res = Residue::new(k.clone());
        assert_eq!(res.dim(), 3);
        assert_eq!(res.project(&f, &k).unwrap().pdim(), -1);
        assert_eq!(res.project(&f, &Subspace::whole(4, &f)).unwrap().pdim(), 3);
        let lines = enumerate_subspaces(4, 1, &f, DEFAULT_ENUM_CAP).unwrap();
        let mut through = 0;
        for l in &lines {
            if l.contains(&f, &k) {
                through += 1;
                let p = res.project(&f, l).unwrap();
                assert_eq!(p.pdim(), 0);
                assert_eq!(res.lift(&f, &p).unwrap(), *l);
            } else {
                assert_eq!(res.project(&f, l), Err(Error::NotContaining));
            }
        }
        // lines through a point of PG(4,2) ↔ points of PG(3,2)
        assert_eq!(through, 15);
    }

    #[test]
    fn disjoint_line_in_plane_avoiding_a_point() {
        let f = gf(2);
        let b = span(&f, 2, &[&[0, 0, 1]]);
        let e = Subspace::empty(2, &f);
        let c = find_disjoint_space(&f, &b, &e, &e, &e).unwrap();
        assert_eq!(c.pdim(), 1);
        assert_eq!(c.meet(&f, &b).unwrap().pdim(), -1);
    }

    #[test]
    fn disjoint_line_in_pg3_exists_and_oracle_agrees() {
        let f = gf(2);
        let b = span(&f, 3, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let p = span(&f, 3, &[&[0, 0, 1, 0]]);
        let e = Subspace::empty(3, &f);
        let c = find_disjoint_space(&f, &b, &p, &p, &e).unwrap();
        assert_eq!(c.pdim(), 1);
        for x in [&b, &p] {
            assert_eq!(c.meet(&f, x).unwrap().pdim(), -1);
        }
        let lines = enumerate_subspaces(3, 1, &f, DEFAULT_ENUM_CAP).unwrap();
        let ok = lines
            .iter()
            .filter(|l| l.meet(&f, &b).unwrap().pdim() < 0 && l.meet(&f, &p).unwrap().pdim() < 0)
            .count();
        assert!(ok > 0);
    }

    #[test]
    fn disjoint_space_rejects_bad_bounds() {
        let f = gf(2);
        let b = span(&f, 2, &[&[0, 0, 1]]);
        let p = span(&f, 2, &[&[1, 0, 0]]);
        let e = Subspace::empty(2, &f);
        assert!(matches!(
            find_disjoint_space(&f, &b, &p, &e, &e),
            Err(Error::PreconditionViolation(_))
        ));
    }

    #[test]
    fn counting_inequality_holds() {
        for q in [2i128, 3, 4, 5, 7] {
            for a in 3..=10u32 {
                let lhs = q.pow(a + 1);
                let rhs = q.pow(a) + 2 * q.pow(a - 1) - q.pow(a - 2) - q.pow(a - 3);
                assert!(lhs > rhs, "q={q} a={a}");
            }
        }
    }
}
