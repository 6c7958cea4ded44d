//! Permutation groups given by generators, with a lazily built stabilizer chain.
//!
//! Queries that need more than the chain (center, normalizers, Sylow
//! subgroups, conjugacy classes) scan the element list and respect the
//! group's enumeration limit.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use crate::chain::StabilizerChain;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default cap on `|G|` for anything that materializes every element.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 200_000;

pub const MAX_DEGREE: usize = 4096;

#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    label: Option<String>,
    enumeration_limit: u64,
    chain: OnceLock<StabilizerChain>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("label", &self.label)
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::InvalidParameter(format!(
                "degree must be in 1..={MAX_DEGREE}, got {degree}"
            )));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        Ok(Self::from_parts(
            degree,
            generators,
            DEFAULT_ENUMERATION_LIMIT,
        ))
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_parts(degree.max(1), Vec::new(), DEFAULT_ENUMERATION_LIMIT)
    }

    fn from_parts(degree: usize, generators: Vec<Permutation>, limit: u64) -> Self {
        let generators = generators
            .into_iter()
            .filter(|g| !g.is_identity())
            .collect();
        PermGroup {
            degree,
            generators,
            label: None,
            enumeration_limit: limit,
            chain: OnceLock::new(),
        }
    }

    /// A group on the same points with the same limits as `self`.
    pub fn subgroup(&self, generators: Vec<Permutation>) -> PermGroup {
        Self::from_parts(self.degree, generators, self.enumeration_limit)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn with_enumeration_limit(mut self, limit: u64) -> Self {
        self.enumeration_limit = limit;
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn enumeration_limit(&self) -> u64 {
        self.enumeration_limit
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn chain(&self) -> &StabilizerChain {
        self.chain
            .get_or_init(|| StabilizerChain::build(self.degree, &self.generators))
    }

    pub fn order(&self) -> u64 {
        self.chain().order()
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: p.degree(),
            });
        }
        Ok(self.chain().contains(p))
    }

    pub(crate) fn has(&self, p: &Permutation) -> bool {
        self.chain().contains(p)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g[i].mul(&g[j]) == g[j].mul(&g[i])))
    }

    /// Same element set (orders equal and mutual generator containment).
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && other.generators.iter().all(|g| self.has(g))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.has(g))
    }

    pub(crate) fn check_enumerable(&self, what: &'static str) -> Result<()> {
        let order = self.order();
        if order > self.enumeration_limit {
            return Err(Error::TooLarge {
                what,
                order,
                limit: self.enumeration_limit,
            });
        }
        Ok(())
    }

    /// All elements, sorted lexicographically by image array.
    pub fn elements(&self) -> Result<Vec<Permutation>> {
        self.check_enumerable("element enumeration")?;
        let mut all = self.chain().enumerate();
        all.sort_unstable();
        Ok(all)
    }

    /// Order by breadth-first closure under the generators, bypassing the
    /// stabilizer chain. Used to cross-check it.
    pub fn closure_order(&self) -> Result<u64> {
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut queue = vec![self.identity()];
        seen.insert(self.identity());
        while let Some(x) = queue.pop() {
            for g in &self.generators {
                let y = x.mul(g);
                if !seen.contains(&y) {
                    if seen.len() as u64 >= self.enumeration_limit {
                        return Err(Error::TooLarge {
                            what: "closure enumeration",
                            order: seen.len() as u64 + 1,
                            limit: self.enumeration_limit,
                        });
                    }
                    seen.insert(y.clone());
                    queue.push(y);
                }
            }
        }
        Ok(seen.len() as u64)
    }

    pub fn prime_spectrum(&self) -> Vec<u64> {
        prime_factors(self.order())
    }

    /// `|G|_p`, the largest power of `p` dividing `|G|`.
    pub fn p_part(&self, p: u64) -> u64 {
        let mut n = self.order();
        let mut part = 1;
        while n.is_multiple_of(p) {
            n /= p;
            part *= p;
        }
        part
    }

    /// Smallest normal subgroup containing `seeds`.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> Result<PermGroup> {
        for s in seeds {
            if !self.contains(s)? {
                return Err(Error::NotMember);
            }
        }
        Ok(self.normal_closure_unchecked(seeds.to_vec()))
    }

    fn normal_closure_unchecked(&self, seeds: Vec<Permutation>) -> PermGroup {
        let mut closure = self.subgroup(Vec::new());
        let mut queue: Vec<Permutation> = seeds;
        while let Some(x) = queue.pop() {
            if x.is_identity() || closure.has(&x) {
                continue;
            }
            let mut gens = closure.generators.clone();
            gens.push(x.clone());
            closure = self.subgroup(gens);
            for g in &self.generators {
                queue.push(x.conj(g));
            }
        }
        closure
    }

    /// Commutator subgroup `G' = <[x, y]>`, as the normal closure of the
    /// generator commutators.
    pub fn derived_subgroup(&self) -> PermGroup {
        let g = &self.generators;
        let mut seeds = Vec::new();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                seeds.push(g[i].commutator(&g[j]));
            }
        }
        self.normal_closure_unchecked(seeds)
    }

    /// Orders of `G, G', G'', ...` until the series stabilizes.
    pub fn derived_series_orders(&self) -> Vec<u64> {
        let mut out = vec![self.order()];
        let mut cur = self.derived_subgroup();
        loop {
            let o = cur.order();
            if o == *out.last().unwrap() {
                return out;
            }
            out.push(o);
            if o == 1 {
                return out;
            }
            cur = cur.derived_subgroup();
        }
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subgroup().order() == self.order()
    }

    pub fn is_solvable(&self) -> bool {
        *self.derived_series_orders().last().unwrap() == 1
    }

    /// Nontrivial with no proper nontrivial normal subgroups.
    pub fn is_simple(&self) -> Result<bool> {
        if self.order() == 1 {
            return Ok(false);
        }
        if self.is_abelian() {
            return Ok(is_prime(self.order()));
        }
        if !self.is_perfect() {
            return Ok(false);
        }
        for (rep, _) in self.conjugacy_classes()? {
            if !rep.is_identity()
                && self.normal_closure_unchecked(vec![rep]).order() != self.order()
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn center(&self) -> Result<PermGroup> {
        self.check_enumerable("center")?;
        let central: Vec<Permutation> = self
            .elements()?
            .into_iter()
            .filter(|z| self.generators.iter().all(|g| z.mul(g) == g.mul(z)))
            .collect();
        Ok(self.generated_by_elements(central))
    }

    pub fn centralizer(&self, x: &Permutation) -> Result<PermGroup> {
        if !self.contains(x)? {
            return Err(Error::NotMember);
        }
        self.check_enumerable("centralizer")?;
        let elts: Vec<Permutation> = self
            .elements()?
            .into_iter()
            .filter(|z| z.mul(x) == x.mul(z))
            .collect();
        Ok(self.generated_by_elements(elts))
    }

    /// `C_G(H)`: elements commuting with every element of `H`.
    pub fn centralizer_of(&self, h: &PermGroup) -> Result<PermGroup> {
        if !h.is_subgroup_of(self) {
            return Err(Error::NotSubgroup);
        }
        self.check_enumerable("centralizer")?;
        let elts: Vec<Permutation> = self
            .elements()?
            .into_iter()
            .filter(|z| h.generators.iter().all(|x| z.mul(x) == x.mul(z)))
            .collect();
        Ok(self.generated_by_elements(elts))
    }

    /// `N_G(H)` by a full element scan.
    pub fn normalizer(&self, h: &PermGroup) -> Result<PermGroup> {
        if !h.is_subgroup_of(self) {
            return Err(Error::NotSubgroup);
        }
        self.check_enumerable("normalizer")?;
        let elts: Vec<Permutation> = self
            .elements()?
            .into_iter()
            .filter(|g| h.generators.iter().all(|x| h.has(&x.conj(g))))
            .collect();
        Ok(self.generated_by_elements(elts))
    }

    /// Subgroup generated by a list of elements that is known to be closed.
    /// Generators are picked greedily from the list in order.
    pub(crate) fn generated_by_elements(&self, elts: Vec<Permutation>) -> PermGroup {
        let target = elts.len() as u64;
        let mut sub = self.subgroup(Vec::new());
        for x in elts {
            if sub.order() == target {
                break;
            }
            if !sub.has(&x) {
                let mut gens = sub.generators.clone();
                gens.push(x);
                sub = self.subgroup(gens);
            }
        }
        sub
    }

    /// A Sylow `p`-subgroup, grown from a cyclic subgroup of maximal `p`-power
    /// order by repeatedly adjoining a `p`-element of the normalizer.
    pub fn sylow(&self, p: u64) -> Result<PermGroup> {
        if !is_prime(p) || !self.order().is_multiple_of(p) {
            return Err(Error::Precondition(format!(
                "{p} is not a prime divisor of |G| = {}",
                self.order()
            )));
        }
        self.check_enumerable("sylow")?;
        let target = self.p_part(p);
        let elts = self.elements()?;
        let start = elts
            .iter()
            .filter(|x| is_power_of(x.order(), p))
            .max_by(|a, b| a.order().cmp(&b.order()).then_with(|| b.cmp(a)))
            .unwrap()
            .clone();
        let mut sylow = self.subgroup(vec![start]);
        while sylow.order() < target {
            let normalizer: Vec<&Permutation> = elts
                .iter()
                .filter(|g| sylow.generators.iter().all(|x| sylow.has(&x.conj(g))))
                .collect();
            let next = normalizer
                .into_iter()
                .filter(|y| is_power_of(y.order(), p) && !sylow.has(y))
                .max_by(|a, b| a.order().cmp(&b.order()).then_with(|| b.cmp(a)))
                .expect(
                    "a non-Sylow p-subgroup lies properly inside a p-subgroup of its normalizer",
                )
                .clone();
            let mut gens = sylow.generators.clone();
            gens.push(next);
            sylow = self.subgroup(gens);
        }
        debug_assert_eq!(sylow.order(), target);
        Ok(sylow)
    }

    /// True iff the elements of order prime to `p` form a subgroup, which is
    /// then the normal `p`-complement.
    pub fn is_p_nilpotent(&self, p: u64) -> Result<bool> {
        self.check_enumerable("p-nilpotency test")?;
        let complement_order = self.order() / self.p_part(p);
        let p_regular: Vec<Permutation> = self
            .elements()?
            .into_iter()
            .filter(|x| x.order() % p != 0)
            .collect();
        if p_regular.len() as u64 != complement_order {
            return Ok(false);
        }
        let mut sub = self.subgroup(Vec::new());
        for x in &p_regular {
            if !sub.has(x) {
                let mut gens = sub.generators.clone();
                gens.push(x.clone());
                sub = self.subgroup(gens);
                if sub.order() > complement_order {
                    return Ok(false);
                }
            }
        }
        Ok(sub.order() == complement_order)
    }

    /// Conjugacy classes as (smallest member, class size), ordered by representative.
    pub fn conjugacy_classes(&self) -> Result<Vec<(Permutation, u64)>> {
        self.check_enumerable("conjugacy classes")?;
        let elts = self.elements()?;
        let index: HashMap<&Permutation, usize> =
            elts.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let mut seen = vec![false; elts.len()];
        let mut out = Vec::new();
        for i in 0..elts.len() {
            if seen[i] {
                continue;
            }
            seen[i] = true;
            let mut orbit = vec![elts[i].clone()];
            let mut k = 0;
            while k < orbit.len() {
                for g in &self.generators {
                    let y = orbit[k].conj(g);
                    let j = index[&y];
                    if !seen[j] {
                        seen[j] = true;
                        orbit.push(y);
                    }
                }
                k += 1;
            }
            out.push((elts[i].clone(), orbit.len() as u64));
        }
        Ok(out)
    }

    /// Set of distinct element orders with counts.
    pub(crate) fn element_order_counts(&self) -> Result<Vec<(u64, u64)>> {
        let mut counts: HashMap<u64, u64> = HashMap::new();
        for x in self.elements()? {
            *counts.entry(x.order()).or_default() += 1;
        }
        let mut v: Vec<_> = counts.into_iter().collect();
        v.sort_unstable();
        Ok(v)
    }

    /// Is every element order a power of `p` (including 1)?
    pub fn is_p_group(&self, p: u64) -> bool {
        is_power_of(self.order(), p)
    }

    /// Generators conjugated by `g`.
    pub fn conjugate_by(&self, g: &Permutation) -> PermGroup {
        let mut sub = self.subgroup(self.generators.iter().map(|x| x.conj(g)).collect());
        sub.label = self.label.clone();
        sub
    }

    /// Orbit of `point` under the group.
    pub fn orbit(&self, point: u32) -> Vec<u32> {
        let mut seen = HashSet::new();
        seen.insert(point);
        let mut orbit = vec![point];
        let mut i = 0;
        while i < orbit.len() {
            for g in &self.generators {
                let q = g.apply(orbit[i]);
                if seen.insert(q) {
                    orbit.push(q);
                }
            }
            i += 1;
        }
        orbit
    }

    /// Stabilizer of the first base point of the chain.
    pub fn first_point_stabilizer(&self) -> PermGroup {
        self.subgroup(self.chain().first_stabilizer_generators())
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Distinct prime divisors, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Is `n` a power of `p` (`p^0 = 1` counts)?
pub fn is_power_of(mut n: u64, p: u64) -> bool {
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}
