//! Subgroup lattices of small groups, and targeted searches for individual
//! witness subgroups in groups too large for a full lattice.
//!
//! Lattices are enumerated up to conjugacy: starting from the trivial group,
//! every class representative is extended by every cyclic subgroup, and each
//! new subgroup's whole conjugacy orbit is recorded at once. Since `<H, g>^x =
//! <H^x, g^x>`, extending one representative per class by all cyclic
//! subgroups reaches every class.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{is_power_of, PermGroup};
use crate::perm::Permutation;
use crate::table::{Bitset, GroupTable, IndexSubgroup};

/// Default cap on `|G|` for full lattice enumeration.
pub const DEFAULT_LATTICE_LIMIT: u64 = 30_000;

/// Lattices up to this order are the "fast tier".
pub const FAST_LATTICE_LIMIT: u64 = 2_500;

#[derive(Clone, Debug)]
pub struct SubgroupRecord {
    pub generators: Vec<Permutation>,
    pub order: u64,
    /// FNV-1a hash of the sorted element indices within the parent.
    pub element_fingerprint: u64,
    pub class_id: Option<usize>,
    pub derived: Option<Box<SubgroupRecord>>,
    pub(crate) index: IndexSubgroup,
}

impl SubgroupRecord {
    fn from_index(table: &GroupTable, index: IndexSubgroup, class_id: Option<usize>) -> Self {
        SubgroupRecord {
            generators: index
                .generators
                .iter()
                .map(|&g| table.element(g).clone())
                .collect(),
            order: index.order as u64,
            element_fingerprint: index.fingerprint(),
            class_id,
            derived: None,
            index,
        }
    }

    pub fn contains_index(&self, x: u32) -> bool {
        self.index.contains(x)
    }

    pub fn elements(&self) -> &Bitset {
        &self.index.elements
    }

    /// Same element set as `other` (exact comparison, not the hash).
    pub fn same_elements(&self, other: &SubgroupRecord) -> bool {
        self.index.elements == other.index.elements
    }
}

#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub representative: IndexSubgroup,
    pub members: Vec<IndexSubgroup>,
}

/// All subgroups of a group, grouped into conjugacy classes.
pub struct Lattice {
    parent: PermGroup,
    table: GroupTable,
    classes: Vec<SubgroupClass>,
}

impl Lattice {
    pub fn new(group: &PermGroup) -> Result<Self> {
        Self::with_limit(group, DEFAULT_LATTICE_LIMIT)
    }

    pub fn with_limit(group: &PermGroup, limit: u64) -> Result<Self> {
        let order = group.order();
        if order > limit {
            return Err(Error::TooLarge {
                what: "subgroup lattice (use conjugacy-class mode or targeted witnesses)",
                order,
                limit,
            });
        }
        let table = GroupTable::new(group)?;
        let classes = enumerate_classes(&table);
        Ok(Lattice {
            parent: group.clone(),
            table,
            classes,
        })
    }

    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn subgroup_count(&self) -> usize {
        self.classes.iter().map(|c| c.members.len()).sum()
    }

    /// One record per subgroup, sorted by (order, fingerprint).
    pub fn all_subgroups(&self) -> Vec<SubgroupRecord> {
        let mut out: Vec<SubgroupRecord> = self
            .classes
            .iter()
            .enumerate()
            .flat_map(|(cid, c)| {
                c.members
                    .iter()
                    .map(move |m| SubgroupRecord::from_index(&self.table, m.clone(), Some(cid)))
            })
            .collect();
        out.sort_by(|a, b| {
            (a.order, a.element_fingerprint, &a.index.elements).cmp(&(
                b.order,
                b.element_fingerprint,
                &b.index.elements,
            ))
        });
        out
    }

    /// Class representatives with class sizes.
    pub fn subgroup_classes(&self) -> Vec<(SubgroupRecord, usize)> {
        self.classes
            .iter()
            .enumerate()
            .map(|(cid, c)| {
                (
                    SubgroupRecord::from_index(&self.table, c.representative.clone(), Some(cid)),
                    c.members.len(),
                )
            })
            .collect()
    }

    /// Fills in `record.derived`.
    pub fn attach_derived(&self, record: &mut SubgroupRecord) {
        let d = self.table.derived(&record.index);
        record.derived = Some(Box::new(SubgroupRecord::from_index(&self.table, d, None)));
    }

    pub fn derived_index(&self, h: &IndexSubgroup) -> IndexSubgroup {
        self.table.derived(h)
    }

    pub fn to_perm_group(&self, h: &IndexSubgroup) -> PermGroup {
        self.table.to_perm_group(&self.parent, h)
    }

    pub fn record_group(&self, r: &SubgroupRecord) -> PermGroup {
        self.parent.subgroup(r.generators.clone())
    }

    /// Id of the conjugacy class containing `h`.
    pub fn class_of(&self, h: &IndexSubgroup) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.members.iter().any(|m| m.elements == h.elements))
    }
}

/// One generator per cyclic subgroup, in canonical element order.
fn cyclic_generators(table: &GroupTable) -> Vec<u32> {
    let n = table.len();
    let mut covered = vec![false; n];
    let mut out = Vec::new();
    for x in 1..n as u32 {
        if covered[x as usize] {
            continue;
        }
        out.push(x);
        let ord = table.order_of(x);
        let mut y = x;
        for k in 1..=ord {
            if crate::perm::gcd(k as u64, ord as u64) == 1 {
                covered[y as usize] = true;
            }
            y = table.mul(y, x);
        }
    }
    out
}

fn canonical_member(members: &[IndexSubgroup]) -> IndexSubgroup {
    members
        .iter()
        .min_by(|a, b| (a.fingerprint(), &a.elements).cmp(&(b.fingerprint(), &b.elements)))
        .unwrap()
        .clone()
}

fn enumerate_classes(table: &GroupTable) -> Vec<SubgroupClass> {
    let cyclic = cyclic_generators(table);
    let mut known: HashMap<Bitset, usize> = HashMap::new();
    let mut classes: Vec<SubgroupClass> = Vec::new();
    let add_class =
        |h: IndexSubgroup, known: &mut HashMap<Bitset, usize>, classes: &mut Vec<SubgroupClass>| {
            let members = table.conjugacy_orbit(&h);
            let id = classes.len();
            for m in &members {
                known.insert(m.elements.clone(), id);
            }
            classes.push(SubgroupClass {
                representative: h,
                members,
            });
        };
    add_class(table.trivial(), &mut known, &mut classes);
    let mut next = 0;
    while next < classes.len() {
        let rep = classes[next].representative.clone();
        next += 1;
        let extensions: Vec<IndexSubgroup> = cyclic
            .par_iter()
            .filter(|&&g| !rep.contains(g))
            .map(|&g| table.extend(&rep, g))
            .collect();
        for k in extensions {
            if !known.contains_key(&k.elements) {
                add_class(k, &mut known, &mut classes);
            }
        }
    }
    for c in &mut classes {
        c.representative = canonical_member(&c.members);
        c.members
            .sort_by(|a, b| (a.fingerprint(), &a.elements).cmp(&(b.fingerprint(), &b.elements)));
    }
    classes.sort_by(|a, b| {
        (
            a.representative.order,
            a.representative.fingerprint(),
            &a.representative.elements,
        )
            .cmp(&(
                b.representative.order,
                b.representative.fingerprint(),
                &b.representative.elements,
            ))
    });
    classes
}

/// A subgroup found by a targeted search, with its derived subgroup.
#[derive(Clone, Debug)]
pub struct Witness {
    pub subgroup: PermGroup,
    pub derived: PermGroup,
}

impl Witness {
    pub fn new(subgroup: PermGroup) -> Self {
        let derived = subgroup.derived_subgroup();
        Witness { subgroup, derived }
    }
}

#[derive(Clone, Debug)]
pub enum PiWitness {
    Found(Box<Witness>),
    /// `G` is `p`-nilpotent, so no witness is promised for this prime.
    Inapplicable,
}

impl PiWitness {
    pub fn found(&self) -> Option<&Witness> {
        match self {
            PiWitness::Found(w) => Some(w),
            PiWitness::Inapplicable => None,
        }
    }
}

/// For each prime `p | |G|` at which `G` is not `p`-nilpotent, a subgroup
/// `<x, P>` with `P` Sylow and `x ∈ N_G(P) \ C_G(P)`. Its derived subgroup is
/// then a nontrivial `p`-group.
pub fn pi_witnesses(g: &PermGroup) -> Result<BTreeMap<u64, PiWitness>> {
    let mut out = BTreeMap::new();
    for p in g.prime_spectrum() {
        if g.is_p_nilpotent(p)? {
            out.insert(p, PiWitness::Inapplicable);
            continue;
        }
        let sylow = g.sylow(p)?;
        let normalizer = g.normalizer(&sylow)?;
        let x = normalizer
            .elements()?
            .into_iter()
            .find(|x| sylow.generators().iter().any(|y| x.mul(y) != y.mul(x)))
            .ok_or_else(|| {
                Error::Precondition(format!(
                    "N(P) = C(P) for p = {p}, yet the group is not {p}-nilpotent"
                ))
            })?;
        let mut gens = vec![x];
        gens.extend(sylow.generators().iter().cloned());
        out.insert(
            p,
            PiWitness::Found(Box::new(Witness::new(g.subgroup(gens)))),
        );
    }
    Ok(out)
}

/// A dihedral subgroup `<r, s>` of order `2z`: `r` of order `z`, `s` an
/// involution outside `<r>` with `s r s = r^-1`.
pub fn dihedral_witness(g: &PermGroup, z: u64) -> Result<Option<Witness>> {
    let elts = g.elements()?;
    let involutions: Vec<&Permutation> = elts.iter().filter(|x| x.order() == 2).collect();
    for r in elts.iter().filter(|x| x.order() == z) {
        let r_inv = r.inverse();
        let found = involutions
            .iter()
            .find(|s| **s != r && s.mul(r).mul(s) == r_inv);
        if let Some(s) = found {
            let gens = if z == 1 {
                vec![(*s).clone()]
            } else {
                vec![r.clone(), (*s).clone()]
            };
            return Ok(Some(Witness::new(g.subgroup(gens))));
        }
    }
    Ok(None)
}

/// The Sylow-2 normalizer chain of `Sz(8)`.
#[derive(Clone, Debug)]
pub struct SuzukiWitnesses {
    /// Sylow 2-subgroup, order 64.
    pub f: PermGroup,
    /// `Z(F)`, order 8.
    pub zf: PermGroup,
    /// Cyclic complement of order 7 in `T`.
    pub h: PermGroup,
    /// `N_G(F) = F H`.
    pub t: PermGroup,
    /// `Z(F) H`.
    pub s: PermGroup,
    pub s_derived: PermGroup,
    pub t_derived: PermGroup,
}

pub fn suzuki_witnesses(g: &PermGroup) -> Result<SuzukiWitnesses> {
    if g.order() != 29120 || g.degree() != 65 {
        return Err(Error::Precondition(format!(
            "expected Sz(8) on 65 points (order 29120), got order {} on {} points",
            g.order(),
            g.degree()
        )));
    }
    let f = g.sylow(2)?;
    let zf = f.center()?;
    let t = g.normalizer(&f)?;
    let h_gen = t
        .elements()?
        .into_iter()
        .find(|x| x.order() == 7)
        .ok_or_else(|| Error::Precondition("no element of order 7 in N(F)".into()))?;
    let h = g.subgroup(vec![h_gen.clone()]);
    let mut s_gens = zf.generators().to_vec();
    s_gens.push(h_gen);
    let s = g.subgroup(s_gens);
    let s_derived = s.derived_subgroup();
    let t_derived = t.derived_subgroup();
    if !s_derived.same_elements(&zf) || !t_derived.same_elements(&f) {
        return Err(Error::Precondition(format!(
            "Sz(8) normalizer chain: |S'| = {}, |T'| = {}",
            s_derived.order(),
            t_derived.order()
        )));
    }
    Ok(SuzukiWitnesses {
        f,
        zf,
        h,
        t,
        s,
        s_derived,
        t_derived,
    })
}

/// Malnormality of `H` in `G`: `H ∩ H^g = 1` for every `g ∈ G \ H`.
pub fn frobenius_complement_check(g: &PermGroup, h: &PermGroup) -> Result<bool> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    if h.order() <= 1 || h.order() >= g.order() {
        return Err(Error::Precondition(format!(
            "complement order must satisfy 1 < |H| < |G| (|H| = {}, |G| = {})",
            h.order(),
            g.order()
        )));
    }
    let h_elts: Vec<Permutation> = h.elements()?.into_iter().skip(1).collect();
    for x in g.elements()? {
        if h.has(&x) {
            continue;
        }
        if h_elts.iter().any(|y| h.has(&y.conj(&x))) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Is the witness's derived subgroup a nontrivial `p`-group?
pub fn is_p_group_witness(w: &Witness, p: u64) -> bool {
    w.derived.order() > 1 && is_power_of(w.derived.order(), p)
}

/// Every subgroup as an element set, by fixpoint closure over all
/// (subgroup, element) pairs. Bit positions index `GroupTable::new(g)`.
/// Quadratic in the number of subgroups; intended as a test oracle.
pub fn naive_subgroup_sets(g: &PermGroup) -> Result<HashSet<Bitset>> {
    let table = GroupTable::new(g)?;
    let n = table.len() as u32;
    let mut found: HashSet<Bitset> = HashSet::new();
    let mut frontier: Vec<(Bitset, Vec<u32>)> = vec![(table.trivial().elements, vec![])];
    found.insert(table.trivial().elements);
    while let Some((h, h_gens)) = frontier.pop() {
        for x in 0..n {
            if h.contains(x) {
                continue;
            }
            let mut gens = h_gens.clone();
            gens.push(x);
            let mut bits = Bitset::new(n as usize);
            bits.insert(0);
            let mut queue = vec![0u32];
            while let Some(y) = queue.pop() {
                for &s in &gens {
                    let c = table.mul(y, s);
                    if !bits.contains(c) {
                        bits.insert(c);
                        queue.push(c);
                    }
                }
            }
            if found.insert(bits.clone()) {
                frontier.push((bits, gens));
            }
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, parse_and_make};
    use std::collections::HashSet;

    #[test]
    fn small_lattice_counts() {
        let cases = [
            ("S3", 6, 4),
            ("A5", 59, 9),
            ("C7", 2, 2),
            ("C12", 6, 6),
            ("S4", 30, 11),
        ];
        for (expr, total, classes) in cases {
            let l = Lattice::new(&parse_and_make(expr).unwrap()).unwrap();
            assert_eq!(l.subgroup_count(), total, "{expr}");
            assert_eq!(l.classes().len(), classes, "{expr}");
        }
    }

    #[test]
    fn a5_class_orders() {
        let l = Lattice::new(&catalog::alternating(5).unwrap()).unwrap();
        let orders: Vec<u64> = l.subgroup_classes().iter().map(|c| c.0.order).collect();
        assert_eq!(orders, vec![1, 2, 3, 4, 5, 6, 10, 12, 60]);
        let sizes: Vec<usize> = l.subgroup_classes().iter().map(|c| c.1).collect();
        assert_eq!(sizes, vec![1, 15, 10, 5, 6, 10, 6, 5, 1]);
    }

    #[test]
    fn lattice_matches_naive_closure() {
        for expr in [
            "S3",
            "D8",
            "A4",
            "prod(C2,C2)",
            "frob(7,3)",
            "D12",
            "C12",
            "prod(S3,C2)",
        ] {
            let g = parse_and_make(expr).unwrap();
            let l = Lattice::new(&g).unwrap();
            let ours: HashSet<Bitset> = l
                .all_subgroups()
                .iter()
                .map(|r| r.elements().clone())
                .collect();
            assert_eq!(ours, naive_subgroup_sets(&g).unwrap(), "{expr}");
        }
    }

    #[test]
    fn records_are_closed_and_lagrange_holds() {
        let g = parse_and_make("S4").unwrap();
        let l = Lattice::new(&g).unwrap();
        let t = l.table();
        for r in l.all_subgroups() {
            assert_eq!(24 % r.order, 0);
            let elts: Vec<u32> = r.elements().iter().collect();
            assert_eq!(elts.len() as u64, r.order);
            for &a in &elts {
                assert!(r.contains_index(t.inv(a)));
                for &b in &elts {
                    assert!(r.contains_index(t.mul(a, b)));
                }
            }
        }
    }

    #[test]
    fn lattice_limit() {
        let g = parse_and_make("S5").unwrap();
        assert!(matches!(
            Lattice::with_limit(&g, 100),
            Err(Error::TooLarge {
                order: 120,
                limit: 100,
                ..
            })
        ));
    }

    #[test]
    fn attach_derived_fills_record() {
        let l = Lattice::new(&parse_and_make("S3").unwrap()).unwrap();
        let mut top = l.subgroup_classes().last().unwrap().0.clone();
        assert_eq!(top.order, 6);
        l.attach_derived(&mut top);
        assert_eq!(top.derived.unwrap().order, 3);
    }

    #[test]
    fn pi_witness_examples() {
        let a5 = catalog::alternating(5).unwrap();
        let w = pi_witnesses(&a5).unwrap();
        let derived: Vec<u64> = w
            .values()
            .map(|x| x.found().unwrap().derived.order())
            .collect();
        assert_eq!(derived, vec![4, 3, 5]);
        for (p, x) in &w {
            assert!(is_p_group_witness(x.found().unwrap(), *p));
        }
        let s3 = catalog::symmetric(3).unwrap();
        let w = pi_witnesses(&s3).unwrap();
        assert!(matches!(w[&2], PiWitness::Inapplicable));
        let f = w[&3].found().unwrap();
        assert_eq!((f.subgroup.order(), f.derived.order()), (6, 3));
    }

    #[test]
    fn dihedral_witness_examples() {
        let s3 = catalog::symmetric(3).unwrap();
        let w = dihedral_witness(&s3, 3).unwrap().unwrap();
        assert_eq!(w.subgroup.order(), 6);
        let l11 = catalog::psl2(11).unwrap();
        let w = dihedral_witness(&l11, 6).unwrap().unwrap();
        assert_eq!(w.subgroup.order(), 12);
        assert_eq!(w.derived.order(), 3);
        let v4 = dihedral_witness(&catalog::alternating(4).unwrap(), 2)
            .unwrap()
            .unwrap();
        assert_eq!(v4.subgroup.order(), 4);
        assert!(dihedral_witness(&catalog::cyclic(6).unwrap(), 3)
            .unwrap()
            .is_none());
    }

    #[test]
    fn frobenius_complement_examples() {
        let g = catalog::metacyclic_frobenius(7, 3).unwrap();
        assert!(frobenius_complement_check(&g, &catalog::frobenius_complement(&g)).unwrap());
        let d10 = catalog::dihedral(10).unwrap();
        let refl = d10.subgroup(vec![d10.generators()[1].clone()]);
        assert!(frobenius_complement_check(&d10, &refl).unwrap());
        // S3 x C2 with H generated by ((0,1), 1): the C2 factor is central
        let g = parse_and_make("prod(S3,C2)").unwrap();
        let x = Permutation::parse_cycles("(0,1)", 5).unwrap();
        let h = g.subgroup(vec![x]);
        assert!(!frobenius_complement_check(&g, &h).unwrap());
        assert!(frobenius_complement_check(&g, &g).is_err());
        let outside = g.subgroup(vec![Permutation::parse_cycles("(0,3)", 5).unwrap()]);
        assert_eq!(
            frobenius_complement_check(&g, &outside).unwrap_err(),
            Error::NotSubgroup
        );
    }

    #[test]
    fn suzuki_rejects_other_groups() {
        assert!(suzuki_witnesses(&catalog::alternating(5).unwrap()).is_err());
    }
}
