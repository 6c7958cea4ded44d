//! Indexed element tables for small groups.
//!
//! Elements are numbered in the canonical (lexicographic) order, so index 0 is
//! the identity. Products come from a Cayley table when the group is small
//! enough, otherwise from composing permutations and looking the result up.

use std::collections::HashMap;

use crate::error::Result;
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Largest order for which a full Cayley table is materialized.
pub const CAYLEY_LIMIT: usize = 4096;

pub struct GroupTable {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    cayley: Option<Vec<u32>>,
    inverse: Vec<u32>,
    orders: Vec<u32>,
    /// Generators of the whole group, as indices.
    generators: Vec<u32>,
}

impl GroupTable {
    pub fn new(group: &PermGroup) -> Result<Self> {
        let elements = group.elements()?;
        let gens: Vec<Permutation> = group.generators().to_vec();
        Ok(Self::from_sorted_elements(elements, &gens))
    }

    /// `elements` must be sorted and closed; `gens` must generate it.
    pub(crate) fn from_sorted_elements(elements: Vec<Permutation>, gens: &[Permutation]) -> Self {
        let n = elements.len();
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i as u32))
            .collect();
        let cayley = (n <= CAYLEY_LIMIT).then(|| {
            let mut t = vec![0u32; n * n];
            for (i, a) in elements.iter().enumerate() {
                for (j, b) in elements.iter().enumerate() {
                    t[i * n + j] = index[&a.mul(b)];
                }
            }
            t
        });
        let inverse = elements.iter().map(|x| index[&x.inverse()]).collect();
        let orders = elements.iter().map(|x| x.order() as u32).collect();
        let generators = gens.iter().map(|g| index[g]).collect();
        GroupTable {
            elements,
            index,
            cayley,
            inverse,
            orders,
            generators,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.cayley {
            Some(t) => t[a as usize * self.elements.len() + b as usize],
            None => self.index[&self.elements[a as usize].mul(&self.elements[b as usize])],
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    /// `g^-1 a g`.
    #[inline]
    pub fn conj(&self, a: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), a), g)
    }

    #[inline]
    pub fn order_of(&self, a: u32) -> u32 {
        self.orders[a as usize]
    }

    pub fn element(&self, a: u32) -> &Permutation {
        &self.elements[a as usize]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, p: &Permutation) -> Option<u32> {
        self.index.get(p).copied()
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn whole(&self) -> IndexSubgroup {
        let mut elements = Bitset::new(self.len());
        (0..self.len() as u32).for_each(|i| elements.insert(i));
        IndexSubgroup {
            generators: self.generators.clone(),
            elements,
            order: self.len(),
        }
    }

    pub fn trivial(&self) -> IndexSubgroup {
        let mut elements = Bitset::new(self.len());
        elements.insert(0);
        IndexSubgroup {
            generators: Vec::new(),
            elements,
            order: 1,
        }
    }

    /// `<base, g>`, grown by whole right cosets of `base`.
    pub fn extend(&self, base: &IndexSubgroup, g: u32) -> IndexSubgroup {
        if base.elements.contains(g) {
            return base.clone();
        }
        let mut gens = base.generators.clone();
        gens.push(g);
        let base_elems: Vec<u32> = base.elements.iter().collect();
        let mut elements = base.elements.clone();
        let mut reps = vec![0u32];
        let mut order = base.order;
        let mut k = 0;
        while k < reps.len() {
            let r = reps[k];
            for &s in &gens {
                let y = self.mul(r, s);
                if !elements.contains(y) {
                    for &h in &base_elems {
                        elements.insert(self.mul(h, y));
                    }
                    order += base_elems.len();
                    reps.push(y);
                }
            }
            k += 1;
        }
        IndexSubgroup {
            generators: gens,
            elements,
            order,
        }
    }

    pub fn generate(&self, gens: &[u32]) -> IndexSubgroup {
        gens.iter()
            .fold(self.trivial(), |acc, &g| self.extend(&acc, g))
    }

    /// Derived subgroup of `h`: normal closure in `h` of the generator commutators.
    pub fn derived(&self, h: &IndexSubgroup) -> IndexSubgroup {
        let g = &h.generators;
        let mut queue = Vec::new();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                let (a, b) = (g[i], g[j]);
                queue.push(self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b)));
            }
        }
        let mut d = self.trivial();
        while let Some(x) = queue.pop() {
            if d.elements.contains(x) {
                continue;
            }
            d = self.extend(&d, x);
            for &s in g {
                queue.push(self.conj(x, s));
            }
        }
        d
    }

    /// `h^g`.
    pub fn conjugate(&self, h: &IndexSubgroup, g: u32) -> IndexSubgroup {
        let mut elements = Bitset::new(self.len());
        for x in h.elements.iter() {
            elements.insert(self.conj(x, g));
        }
        IndexSubgroup {
            generators: h.generators.iter().map(|&x| self.conj(x, g)).collect(),
            elements,
            order: h.order,
        }
    }

    /// Orbit of `h` under conjugation by the whole group, starting with `h`.
    pub fn conjugacy_orbit(&self, h: &IndexSubgroup) -> Vec<IndexSubgroup> {
        let mut seen: HashMap<Bitset, ()> = HashMap::new();
        seen.insert(h.elements.clone(), ());
        let mut orbit = vec![h.clone()];
        let mut k = 0;
        while k < orbit.len() {
            for &g in &self.generators {
                let c = self.conjugate(&orbit[k], g);
                if !seen.contains_key(&c.elements) {
                    seen.insert(c.elements.clone(), ());
                    orbit.push(c);
                }
            }
            k += 1;
        }
        orbit
    }

    /// Some `g` with `a^g = b`, by scanning the group.
    pub fn conjugator(&self, a: &IndexSubgroup, b: &IndexSubgroup) -> Option<u32> {
        if a.order != b.order {
            return None;
        }
        (0..self.len() as u32).find(|&g| {
            a.generators
                .iter()
                .all(|&x| b.elements.contains(self.conj(x, g)))
        })
    }

    /// Conjugacy classes as (representative, size), the representative being
    /// the smallest index in its class.
    pub fn conjugacy_classes(&self) -> Vec<(u32, usize)> {
        let n = self.len();
        let mut class_of = vec![u32::MAX; n];
        let mut out = Vec::new();
        for i in 0..n as u32 {
            if class_of[i as usize] != u32::MAX {
                continue;
            }
            let id = out.len() as u32;
            class_of[i as usize] = id;
            let mut orbit = vec![i];
            let mut k = 0;
            while k < orbit.len() {
                for &g in &self.generators {
                    let y = self.conj(orbit[k], g);
                    if class_of[y as usize] == u32::MAX {
                        class_of[y as usize] = id;
                        orbit.push(y);
                    }
                }
                k += 1;
            }
            out.push((i, orbit.len()));
        }
        out
    }

    /// Size of the conjugacy class of each element.
    pub fn class_sizes(&self) -> Vec<usize> {
        let n = self.len();
        let mut sizes = vec![0usize; n];
        for (rep, size) in self.conjugacy_classes() {
            let mut orbit = vec![rep];
            sizes[rep as usize] = size;
            let mut k = 0;
            while k < orbit.len() {
                for &g in &self.generators {
                    let y = self.conj(orbit[k], g);
                    if sizes[y as usize] == 0 {
                        sizes[y as usize] = size;
                        orbit.push(y);
                    }
                }
                k += 1;
            }
        }
        sizes
    }

    pub fn to_perm_group(&self, parent: &PermGroup, h: &IndexSubgroup) -> PermGroup {
        parent.subgroup(
            h.generators
                .iter()
                .map(|&g| self.element(g).clone())
                .collect(),
        )
    }
}

/// A subgroup of an indexed group: generators plus membership bitset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSubgroup {
    pub generators: Vec<u32>,
    pub elements: Bitset,
    pub order: usize,
}

impl IndexSubgroup {
    pub fn contains(&self, x: u32) -> bool {
        self.elements.contains(x)
    }

    pub fn is_subset_of(&self, other: &IndexSubgroup) -> bool {
        self.elements.is_subset_of(&other.elements)
    }

    /// Stable 64-bit FNV-1a hash of the sorted element indices.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for x in self.elements.iter() {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        }
        h
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(n: usize) -> Self {
        Bitset {
            words: vec![0; n.div_ceil(64)],
        }
    }

    #[inline]
    pub fn insert(&mut self, i: u32) {
        self.words[(i >> 6) as usize] |= 1 << (i & 63);
    }

    #[inline]
    pub fn contains(&self, i: u32) -> bool {
        self.words[(i >> 6) as usize] >> (i & 63) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset_of(&self, other: &Bitset) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros();
                w &= w - 1;
                Some((k as u32) << 6 | t)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    fn table(n: usize, gens: &[&str]) -> (PermGroup, GroupTable) {
        let g = PermGroup::new(n, gens.iter().map(|s| p(s, n)).collect()).unwrap();
        let t = GroupTable::new(&g).unwrap();
        (g, t)
    }

    #[test]
    fn identity_is_index_zero() {
        let (_, t) = table(4, &["(0,1,2,3)", "(0,1)"]);
        assert!(t.element(0).is_identity());
        assert_eq!(t.len(), 24);
        for a in 0..24 {
            assert_eq!(t.mul(a, t.inv(a)), 0);
            assert_eq!(t.mul(0, a), a);
        }
    }

    #[test]
    fn extend_and_derived() {
        let (_, t) = table(4, &["(0,1,2,3)", "(0,1)"]);
        let s4 = t.whole();
        let d = t.derived(&s4);
        assert_eq!(d.order, 12);
        assert_eq!(d.elements.len(), 12);
        assert_eq!(t.derived(&d).order, 4);
        let c = t.generate(&[t.index_of(&p("(0,1,2,3)", 4)).unwrap()]);
        assert_eq!(c.order, 4);
        assert_eq!(t.derived(&c).order, 1);
    }

    #[test]
    fn orbit_of_subgroup() {
        let (_, t) = table(4, &["(0,1,2,3)", "(0,1)"]);
        let c2 = t.generate(&[t.index_of(&p("(0,1)", 4)).unwrap()]);
        assert_eq!(t.conjugacy_orbit(&c2).len(), 6);
        let v4 = t.derived(&t.derived(&t.whole()));
        assert_eq!(t.conjugacy_orbit(&v4).len(), 1);
    }

    #[test]
    fn bitset_iter() {
        let mut b = Bitset::new(200);
        for i in [0, 5, 63, 64, 199] {
            b.insert(i);
        }
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![0, 5, 63, 64, 199]);
        assert_eq!(b.len(), 5);
    }

    #[test]
    fn hashed_products_match_cayley() {
        let (g, t) = table(5, &["(0,1,2,3,4)", "(0,1)"]);
        let no_cayley = GroupTable {
            cayley: None,
            ..GroupTable::new(&g).unwrap()
        };
        for a in 0..120 {
            for b in (0..120).step_by(7) {
                assert_eq!(t.mul(a, b), no_cayley.mul(a, b));
            }
        }
    }
}
