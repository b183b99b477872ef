//! Deterministic Schreier–Sims: base and strong generating set, exact order.

use std::collections::HashSet;

use super::perm::Perm;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Perm>,
    /// transversal[p] maps the base point to p
    transversal: Vec<Option<Perm>>,
    orbit: Vec<usize>,
    /// (orbit point, generator index) pairs whose Schreier generator sifted
    done: HashSet<(usize, usize)>,
}

/// Stabilizer chain of the group generated by a set of permutations.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Perm]) -> StabChain {
        let mut c = StabChain {
            degree,
            levels: Vec::new(),
        };
        for g in gens {
            assert_eq!(g.degree(), degree);
            let (h, j) = c.strip(g.clone(), 0);
            if j < c.levels.len() || !h.is_identity() {
                c.install(h, 0, j);
                for m in (0..=j).rev() {
                    c.close(m);
                }
            }
        }
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Membership test.
    pub fn contains(&self, g: &Perm) -> bool {
        let (h, j) = self.strip(g.clone(), 0);
        j == self.levels.len() && h.is_identity()
    }

    /// Sifts g through the levels from `from`; returns the residue and the
    /// level where it dropped out (= number of levels if it passed all).
    fn strip(&self, mut h: Perm, from: usize) -> (Perm, usize) {
        for (l, lev) in self.levels.iter().enumerate().skip(from) {
            let b = h.apply(lev.base);
            match &lev.transversal[b] {
                None => return (h, l),
                Some(u) => h = h.then(&u.inverse()),
            }
        }
        (h, self.levels.len())
    }

    fn extend_orbit(&mut self, l: usize) {
        let lev = &mut self.levels[l];
        let mut i = 0;
        // re-scan the whole orbit with every generator; new points appended
        while i < lev.orbit.len() {
            let p = lev.orbit[i];
            for s in 0..lev.gens.len() {
                let q = lev.gens[s].apply(p);
                if lev.transversal[q].is_none() {
                    let u = lev.transversal[p].as_ref().unwrap().then(&lev.gens[s]);
                    lev.transversal[q] = Some(u);
                    lev.orbit.push(q);
                }
            }
            i += 1;
        }
    }

    /// Adds h to the generators of levels from..=to (h fixes the base
    /// points of all levels before `to`), opening level `to` if needed.
    fn install(&mut self, h: Perm, from: usize, to: usize) {
        if to == self.levels.len() {
            let base = h.first_moved().expect("non-identity residue");
            let mut transversal = vec![None; self.degree];
            transversal[base] = Some(Perm::identity(self.degree));
            self.levels.push(Level {
                base,
                gens: Vec::new(),
                transversal,
                orbit: vec![base],
                done: HashSet::new(),
            });
        }
        for m in from..=to {
            self.levels[m].gens.push(h.clone());
            self.extend_orbit(m);
        }
    }

    /// Sifts every Schreier generator of level l, installing residues,
    /// until the chain from l down is complete.
    fn close(&mut self, l: usize) {
        loop {
            let mut pending = None;
            'scan: for idx in 0..self.levels[l].orbit.len() {
                let p = self.levels[l].orbit[idx];
                for s in 0..self.levels[l].gens.len() {
                    if !self.levels[l].done.insert((p, s)) {
                        continue;
                    }
                    let lev = &self.levels[l];
                    let t = lev.transversal[p].as_ref().unwrap().then(&lev.gens[s]);
                    let q = lev.gens[s].apply(p);
                    let sg = t.then(&lev.transversal[q].as_ref().unwrap().inverse());
                    let (h, j) = self.strip(sg, l + 1);
                    if j < self.levels.len() || !h.is_identity() {
                        pending = Some((h, j));
                        break 'scan;
                    }
                }
            }
            let Some((h, j)) = pending else { break };
            self.install(h, l + 1, j);
            for m in (l + 1..=j).rev() {
                self.close(m);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Perm {
        Perm::from_images((0..n as u32).map(|i| (i + 1) % n as u32).collect())
    }

    fn transposition(n: usize, a: usize, b: usize) -> Perm {
        let mut v: Vec<u32> = (0..n as u32).collect();
        v.swap(a, b);
        Perm::from_images(v)
    }

    #[test]
    fn symmetric_groups() {
        assert_eq!(StabChain::new(4, &[cycle(4), transposition(4, 0, 1)]).order(), 24);
        assert_eq!(StabChain::new(8, &[cycle(8), transposition(8, 0, 1)]).order(), 40320);
        assert_eq!(StabChain::new(5, &[]).order(), 1);
        assert_eq!(StabChain::new(6, &[cycle(6)]).order(), 6);
    }

    #[test]
    fn alternating_and_membership() {
        // 3-cycles generate Alt(5)
        let a = Perm::from_images(vec![1, 2, 0, 3, 4]);
        let b = Perm::from_images(vec![0, 1, 3, 4, 2]);
        let c = Perm::from_images(vec![0, 2, 3, 1, 4]);
        let g = StabChain::new(5, &[a, b, c]);
        assert_eq!(g.order(), 60);
        assert!(!g.contains(&transposition(5, 0, 1)));
        assert!(g.contains(&Perm::from_images(vec![1, 0, 3, 2, 4])));
    }
}
