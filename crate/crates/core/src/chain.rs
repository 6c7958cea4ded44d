//! Deterministic Schreier–Sims.
//!
//! Base points are always the smallest point moved by the generator that
//! forces a new level, so the chain (and every transversal size) depends only
//! on the generator list.

use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub struct ChainLevel {
    base_point: u32,
    /// Strong generators fixing every earlier base point.
    generators: Vec<Permutation>,
    /// Orbit of the base point in discovery order.
    orbit: Vec<u32>,
    /// `transversal[q]` maps the base point to `q`, for `q` in the orbit.
    transversal: Vec<Option<Permutation>>,
}

impl ChainLevel {
    fn new(base_point: u32, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base_point as usize] = Some(Permutation::identity(degree));
        ChainLevel {
            base_point,
            generators: Vec::new(),
            orbit: vec![base_point],
            transversal,
        }
    }

    pub fn base_point(&self) -> u32 {
        self.base_point
    }

    pub fn orbit(&self) -> &[u32] {
        &self.orbit
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn representative(&self, point: u32) -> Option<&Permutation> {
        self.transversal[point as usize].as_ref()
    }

    fn add_generator(&mut self, g: Permutation) {
        self.generators.push(g);
        self.rebuild_orbit();
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.transversal.len();
        self.transversal.iter_mut().for_each(|t| *t = None);
        self.transversal[self.base_point as usize] = Some(Permutation::identity(degree));
        self.orbit.clear();
        self.orbit.push(self.base_point);
        let mut i = 0;
        while i < self.orbit.len() {
            let q = self.orbit[i];
            for s in &self.generators {
                let r = s.apply(q);
                if self.transversal[r as usize].is_none() {
                    let u = self.transversal[q as usize].as_ref().unwrap().mul(s);
                    self.transversal[r as usize] = Some(u);
                    self.orbit.push(r);
                }
            }
            i += 1;
        }
    }
}

/// Base and strong generating set with per-level transversals.
#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<ChainLevel>,
}

impl StabilizerChain {
    pub fn build(degree: usize, generators: &[Permutation]) -> Self {
        let mut chain = StabilizerChain {
            degree,
            levels: Vec::new(),
        };
        let gens: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        if gens.is_empty() {
            return chain;
        }
        for g in &gens {
            if chain
                .levels
                .iter()
                .all(|l| g.apply(l.base_point) == l.base_point)
            {
                let b = g.smallest_moved_point().unwrap();
                chain.levels.push(ChainLevel::new(b, degree));
            }
        }
        for g in &gens {
            let fixes = chain
                .levels
                .iter()
                .take_while(|l| g.apply(l.base_point) == l.base_point)
                .count();
            for level in &mut chain.levels[..=fixes] {
                level.generators.push(g.clone());
            }
        }
        for level in &mut chain.levels {
            level.rebuild_orbit();
        }
        chain.complete();
        chain
    }

    /// Holt's SCHREIERSIMS loop: test every Schreier generator of level `i`
    /// against the chain below it, descending only once level `i` is closed.
    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let lvl = i as usize;
            let orbit = self.levels[lvl].orbit.clone();
            let gens = self.levels[lvl].generators.clone();
            for &q in &orbit {
                let uq = self.levels[lvl].transversal[q as usize].clone().unwrap();
                for s in &gens {
                    let r = s.apply(q);
                    let ur = self.levels[lvl].transversal[r as usize].as_ref().unwrap();
                    let schreier = uq.mul(s).mul(&ur.inverse());
                    let (residue, stop) = self.strip_from(schreier, lvl + 1);
                    if residue.is_identity() {
                        continue;
                    }
                    if stop == self.levels.len() {
                        let b = residue.smallest_moved_point().unwrap();
                        self.levels.push(ChainLevel::new(b, self.degree));
                    }
                    for level in &mut self.levels[lvl + 1..=stop] {
                        level.add_generator(residue.clone());
                    }
                    i = stop as isize;
                    continue 'outer;
                }
            }
            i -= 1;
        }
    }

    /// Sifts `g` through levels `from..`; returns the residue and the level
    /// where sifting stopped (`levels.len()` if it went all the way through).
    fn strip_from(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (j, level) in self.levels.iter().enumerate().skip(from) {
            let q = g.apply(level.base_point);
            match &level.transversal[q as usize] {
                None => return (g, j),
                Some(u) => g = g.mul(&u.inverse()),
            }
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[ChainLevel] {
        &self.levels
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    /// Product of the transversal sizes.
    pub fn order(&self) -> u64 {
        self.levels.iter().map(|l| l.orbit.len() as u64).product()
    }

    /// Sifting membership test; `g` must have the chain's degree.
    pub fn contains(&self, g: &Permutation) -> bool {
        let (residue, _) = self.strip_from(g.clone(), 0);
        residue.is_identity()
    }

    /// Every element, as products of transversal representatives (unsorted).
    pub fn enumerate(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let reps: Vec<&Permutation> = level
                .orbit
                .iter()
                .map(|&q| level.transversal[q as usize].as_ref().unwrap())
                .collect();
            let mut next = Vec::with_capacity(out.len() * reps.len());
            for x in &out {
                for u in &reps {
                    next.push(x.mul(u));
                }
            }
            out = next;
        }
        out
    }

    /// Generators of the stabilizer of the first base point.
    pub fn first_stabilizer_generators(&self) -> Vec<Permutation> {
        self.levels
            .get(1)
            .map(|l| l.generators.clone())
            .unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn orders_of_small_groups() {
        let a5 = StabilizerChain::build(5, &[p("(0,1,2,3,4)", 5), p("(0,1,2)", 5)]);
        assert_eq!(a5.order(), 60);
        let trivial = StabilizerChain::build(4, &[]);
        assert_eq!(trivial.order(), 1);
        let s6 = StabilizerChain::build(6, &[p("(0,1,2,3,4,5)", 6), p("(0,1)", 6)]);
        assert_eq!(s6.order(), 720);
    }

    #[test]
    fn base_is_smallest_moved_point() {
        let c = StabilizerChain::build(6, &[p("(2,3,4)", 6)]);
        assert_eq!(c.base(), vec![2]);
    }

    #[test]
    fn membership_and_enumeration_agree() {
        let a5 = StabilizerChain::build(5, &[p("(0,1,2,3,4)", 5), p("(0,1,2)", 5)]);
        assert!(!a5.contains(&p("(0,1)", 5)));
        assert!(a5.contains(&p("(0,1,2)", 5)));
        assert!(a5.contains(&Permutation::identity(5)));
        let mut all = a5.enumerate();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 60);
        assert!(all.iter().all(|g| a5.contains(g)));
    }
}
