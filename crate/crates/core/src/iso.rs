//! Isomorphism testing for small groups.
//!
//! Cheap invariants ([`IsoFingerprint`]) reject most non-isomorphic pairs.
//! Survivors go to a backtracking search that maps a short generating
//! sequence of `A` onto order- and class-size-compatible tuples of `B` and
//! checks that the induced map is a well-defined bijective homomorphism.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::group::{is_power_of, prime_factors, PermGroup};
use crate::perm::Permutation;
use crate::table::{GroupTable, IndexSubgroup};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IsoFingerprint {
    pub order: u64,
    pub element_order_histogram: BTreeMap<u64, u64>,
    pub is_abelian: bool,
    pub center_order: u64,
    pub derived_series_orders: Vec<u64>,
    /// Elementary divisors, ascending; empty for nonabelian groups.
    pub abelian_invariants: Vec<u64>,
}

impl IsoFingerprint {
    /// Short human-readable tag, e.g. `60:nonabelian:z1:[60]`.
    pub fn summary(&self) -> String {
        if self.is_abelian {
            let inv: Vec<String> = self.abelian_invariants.iter().map(u64::to_string).collect();
            format!("{}:abelian:[{}]", self.order, inv.join(","))
        } else {
            let ds: Vec<String> = self
                .derived_series_orders
                .iter()
                .map(u64::to_string)
                .collect();
            format!(
                "{}:nonabelian:z{}:[{}]",
                self.order,
                self.center_order,
                ds.join(",")
            )
        }
    }
}

pub fn fingerprint(g: &PermGroup) -> Result<IsoFingerprint> {
    g.check_enumerable("fingerprint")?;
    let histogram: BTreeMap<u64, u64> = g.element_order_counts()?.into_iter().collect();
    let is_abelian = g.is_abelian();
    let center_order = if is_abelian {
        g.order()
    } else {
        g.center()?.order()
    };
    let abelian_invariants = if is_abelian {
        abelian_invariants(g.order(), &histogram)
    } else {
        Vec::new()
    };
    Ok(IsoFingerprint {
        order: g.order(),
        element_order_histogram: histogram,
        is_abelian,
        center_order,
        derived_series_orders: g.derived_series_orders(),
        abelian_invariants,
    })
}

/// Elementary divisors of an abelian group from its element-order histogram:
/// `#{x : x^(p^k) = 1} = p^(s_k)`, and `s_k - s_(k-1)` counts the cyclic
/// factors of order at least `p^k`.
fn abelian_invariants(order: u64, histogram: &BTreeMap<u64, u64>) -> Vec<u64> {
    let mut out = Vec::new();
    for p in prime_factors(order) {
        let log_p = |mut n: u64| {
            let mut k = 0;
            while n > 1 {
                n /= p;
                k += 1;
            }
            k
        };
        let mut s = vec![0u32];
        let mut pk = 1u64;
        loop {
            pk *= p;
            let count: u64 = histogram
                .iter()
                .filter(|(o, _)| pk.is_multiple_of(**o))
                .map(|(_, c)| c)
                .sum();
            s.push(log_p(count));
            if s[s.len() - 1] == s[s.len() - 2] {
                break;
            }
        }
        let at_least: Vec<u32> = s.windows(2).map(|w| w[1] - w[0]).collect();
        for k in 0..at_least.len() {
            let exactly = at_least[k] - at_least.get(k + 1).copied().unwrap_or(0);
            for _ in 0..exactly {
                out.push(p.pow(k as u32 + 1));
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn is_isomorphic(a: &PermGroup, b: &PermGroup) -> Result<bool> {
    Ok(find_isomorphism(a, b)?.is_some())
}

/// An isomorphism `A -> B` as images of a generating sequence of `A`.
pub fn find_isomorphism(
    a: &PermGroup,
    b: &PermGroup,
) -> Result<Option<Vec<(Permutation, Permutation)>>> {
    let fa = fingerprint(a)?;
    let fb = fingerprint(b)?;
    if fa != fb {
        return Ok(None);
    }
    let perfect = fa.derived_series_orders == [fa.order] && fa.order > 1;
    if perfect {
        for p in prime_factors(fa.order) {
            if fingerprint(&a.sylow(p)?)? != fingerprint(&b.sylow(p)?)? {
                return Ok(None);
            }
        }
    }
    let ta = GroupTable::new(a)?;
    let tb = GroupTable::new(b)?;
    Ok(backtrack_isomorphism(&ta, &tb).map(|(gens, imgs)| {
        gens.iter()
            .zip(&imgs)
            .map(|(&x, &y)| (ta.element(x).clone(), tb.element(y).clone()))
            .collect()
    }))
}

/// Are `a` and `b` conjugate by some element of `parent`?
pub fn are_conjugate(parent: &PermGroup, a: &PermGroup, b: &PermGroup) -> Result<bool> {
    if a.order() != b.order() {
        return Ok(false);
    }
    Ok(parent
        .elements()?
        .iter()
        .any(|x| a.generators().iter().all(|y| b.has(&y.conj(x)))))
}

/// Greedy short generating sequence: repeatedly adjoin the element that
/// enlarges the generated subgroup most (ties to the smallest index).
fn generating_sequence(t: &GroupTable) -> Vec<u32> {
    let n = t.len();
    let cyclic: Vec<u32> = {
        let mut covered = vec![false; n];
        let mut reps = Vec::new();
        for x in 1..n as u32 {
            if !covered[x as usize] {
                reps.push(x);
                let mut y = x;
                while y != 0 {
                    covered[y as usize] = true;
                    y = t.mul(y, x);
                }
            }
        }
        reps
    };
    let mut cur = t.trivial();
    let mut seq = Vec::new();
    while cur.order < n {
        let candidates: Vec<u32> = if seq.is_empty() {
            t.conjugacy_classes()
                .into_iter()
                .map(|c| c.0)
                .filter(|&x| x != 0)
                .collect()
        } else {
            cyclic
                .iter()
                .copied()
                .filter(|&x| !cur.contains(x))
                .collect()
        };
        let (best, ext) = candidates
            .par_iter()
            .map(|&x| (x, t.extend(&cur, x)))
            .reduce_with(|a, b| {
                if b.1.order > a.1.order || (b.1.order == a.1.order && b.0 < a.0) {
                    b
                } else {
                    a
                }
            })
            .expect("a proper subgroup leaves candidates");
        seq.push(best);
        cur = ext;
    }
    seq
}

/// Extends `gens[i] -> imgs[i]` multiplicatively over `<gens>`; `None` if the
/// map is not a well-defined injective homomorphism there.
fn induced_map(ta: &GroupTable, tb: &GroupTable, gens: &[u32], imgs: &[u32]) -> Option<Vec<u32>> {
    let mut map = vec![u32::MAX; ta.len()];
    let mut used = crate::table::Bitset::new(tb.len());
    map[0] = 0;
    used.insert(0);
    let mut queue = vec![0u32];
    let mut k = 0;
    while k < queue.len() {
        let x = queue[k];
        k += 1;
        for (&g, &h) in gens.iter().zip(imgs) {
            let y = ta.mul(x, g);
            let fy = tb.mul(map[x as usize], h);
            match map[y as usize] {
                u32::MAX => {
                    if used.contains(fy) {
                        return None;
                    }
                    used.insert(fy);
                    map[y as usize] = fy;
                    queue.push(y);
                }
                existing if existing != fy => return None,
                _ => {}
            }
        }
    }
    Some(map)
}

fn backtrack_isomorphism(ta: &GroupTable, tb: &GroupTable) -> Option<(Vec<u32>, Vec<u32>)> {
    if ta.len() != tb.len() {
        return None;
    }
    if ta.len() == 1 {
        return Some((vec![], vec![]));
    }
    let gens = generating_sequence(ta);
    let size_a = ta.class_sizes();
    let size_b = tb.class_sizes();
    let reps_b: Vec<u32> = tb.conjugacy_classes().into_iter().map(|c| c.0).collect();
    let candidates: Vec<Vec<u32>> = gens
        .iter()
        .enumerate()
        .map(|(i, &g)| {
            let pool: Box<dyn Iterator<Item = u32>> = if i == 0 {
                // inner automorphisms of B let the first image be a class representative
                Box::new(reps_b.iter().copied())
            } else {
                Box::new(0..tb.len() as u32)
            };
            pool.filter(|&y| {
                tb.order_of(y) == ta.order_of(g) && size_b[y as usize] == size_a[g as usize]
            })
            .collect()
        })
        .collect();
    let mut imgs = Vec::with_capacity(gens.len());
    search(ta, tb, &gens, &candidates, &mut imgs).then_some((gens, imgs))
}

fn search(
    ta: &GroupTable,
    tb: &GroupTable,
    gens: &[u32],
    candidates: &[Vec<u32>],
    imgs: &mut Vec<u32>,
) -> bool {
    let depth = imgs.len();
    if depth == gens.len() {
        return true;
    }
    for &y in &candidates[depth] {
        imgs.push(y);
        if let Some(map) = induced_map(ta, tb, &gens[..=depth], imgs) {
            let complete = depth + 1 < gens.len() || map.iter().all(|&m| m != u32::MAX);
            if complete && search(ta, tb, gens, candidates, imgs) {
                return true;
            }
        }
        imgs.pop();
    }
    false
}

/// Isomorphism test between two subgroups of one indexed parent, trying
/// conjugacy inside the parent first.
pub fn is_isomorphic_in_parent(
    parent: &PermGroup,
    table: &GroupTable,
    a: &IndexSubgroup,
    b: &IndexSubgroup,
) -> Result<bool> {
    if a.order != b.order {
        return Ok(false);
    }
    if table.conjugator(a, b).is_some() {
        return Ok(true);
    }
    is_isomorphic(
        &table.to_perm_group(parent, a),
        &table.to_perm_group(parent, b),
    )
}

#[derive(Clone, Debug)]
pub struct IsoClass {
    /// Index (into the input) of the canonical representative.
    pub representative: usize,
    /// Input indices, ascending.
    pub members: Vec<usize>,
    pub fingerprint: IsoFingerprint,
}

/// Partitions `groups` into isomorphism classes. Representatives are the
/// smallest members by (order, fingerprint, sorted element list) and classes
/// are listed in representative order.
pub fn classify(groups: &[PermGroup]) -> Result<Vec<IsoClass>> {
    classify_with(groups, is_isomorphic)
}

/// Like [`classify`], for subgroups of a common `parent`: conjugate pairs are
/// merged without a backtracking search.
pub fn classify_in(parent: &PermGroup, groups: &[PermGroup]) -> Result<Vec<IsoClass>> {
    classify_with(groups, |a, b| {
        if are_conjugate(parent, a, b)? {
            return Ok(true);
        }
        is_isomorphic(a, b)
    })
}

fn classify_with(
    groups: &[PermGroup],
    iso: impl Fn(&PermGroup, &PermGroup) -> Result<bool>,
) -> Result<Vec<IsoClass>> {
    let keyed: Vec<(IsoFingerprint, Vec<Permutation>)> = groups
        .par_iter()
        .map(|g| Ok((fingerprint(g)?, g.elements()?)))
        .collect::<Result<_>>()?;
    let mut order: Vec<usize> = (0..groups.len()).collect();
    order.sort_by(|&i, &j| {
        let (fi, ei) = &keyed[i];
        let (fj, ej) = &keyed[j];
        (fi.order, fi, ei, i).cmp(&(fj.order, fj, ej, j))
    });
    let mut classes: Vec<IsoClass> = Vec::new();
    for i in order {
        let fp = &keyed[i].0;
        let mut home = None;
        for (c, class) in classes.iter().enumerate() {
            if &class.fingerprint == fp && iso(&groups[class.representative], &groups[i])? {
                home = Some(c);
                break;
            }
        }
        match home {
            Some(c) => classes[c].members.push(i),
            None => classes.push(IsoClass {
                representative: i,
                members: vec![i],
                fingerprint: fp.clone(),
            }),
        }
    }
    for c in &mut classes {
        c.members.sort_unstable();
    }
    Ok(classes)
}

/// True iff every nonidentity element of `g` has order a power of `p`.
pub fn is_p_group(g: &PermGroup, p: u64) -> bool {
    is_power_of(g.order(), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, parse_and_make};

    fn g(expr: &str) -> PermGroup {
        parse_and_make(expr).unwrap()
    }

    #[test]
    fn fingerprint_examples() {
        let c4 = fingerprint(&g("C4")).unwrap();
        assert_eq!(
            c4.element_order_histogram,
            BTreeMap::from([(1, 1), (2, 1), (4, 2)])
        );
        assert!(c4.is_abelian);
        assert_eq!(c4.abelian_invariants, vec![4]);
        let v4 = fingerprint(&g("prod(C2,C2)")).unwrap();
        assert_eq!(v4.element_order_histogram, BTreeMap::from([(1, 1), (2, 3)]));
        assert_eq!(v4.abelian_invariants, vec![2, 2]);
        let a5 = fingerprint(&g("A5")).unwrap();
        assert_eq!((a5.order, a5.is_abelian, a5.center_order), (60, false, 1));
        assert_eq!(a5.derived_series_orders, vec![60]);
        assert!(a5.abelian_invariants.is_empty());
        let c12 = fingerprint(&g("prod(C4,C6)")).unwrap();
        assert_eq!(c12.abelian_invariants, vec![2, 3, 4]);
        let h: u64 = c12.element_order_histogram.values().sum();
        assert_eq!(h, 24);
    }

    #[test]
    fn isomorphism_examples() {
        assert!(!is_isomorphic(&g("C4"), &g("prod(C2,C2)")).unwrap());
        assert!(is_isomorphic(&g("D6"), &g("S3")).unwrap());
        assert!(is_isomorphic(&g("PSL2_5"), &g("A5")).unwrap());
        assert!(is_isomorphic(&g("PSL2_4"), &g("A5")).unwrap());
        assert!(is_isomorphic(&g("prod(C2,C3)"), &g("C6")).unwrap());
        assert!(!is_isomorphic(&g("D8"), &g("prod(C2,C4)")).unwrap());
        assert!(is_isomorphic(&g("prod(D6,C2)"), &g("D12")).unwrap());
    }

    #[test]
    fn regular_and_natural_s3_are_isomorphic() {
        let s3_on_6 = {
            let a = Permutation::parse_cycles("(0,1,2)(3,4,5)", 6).unwrap();
            let b = Permutation::parse_cycles("(0,3)(1,5)(2,4)", 6).unwrap();
            PermGroup::new(6, vec![a, b]).unwrap()
        };
        let iso = find_isomorphism(&s3_on_6, &g("S3")).unwrap().unwrap();
        assert!(!iso.is_empty());
    }

    #[test]
    fn classify_examples() {
        let groups = vec![g("C6"), g("S3"), g("prod(C2,C3)")];
        let classes = classify(&groups).unwrap();
        assert_eq!(classes.len(), 2);
        let members: Vec<Vec<usize>> = classes.iter().map(|c| c.members.clone()).collect();
        assert!(members.contains(&vec![0, 2]));
        assert!(members.contains(&vec![1]));
        assert!(classify(&[]).unwrap().is_empty());
    }

    #[test]
    fn a5_subgroups_fall_into_nine_types() {
        let a5 = catalog::alternating(5).unwrap();
        let l = crate::subgroups::Lattice::new(&a5).unwrap();
        let all: Vec<PermGroup> = l
            .all_subgroups()
            .iter()
            .map(|r| l.record_group(r))
            .collect();
        assert_eq!(all.len(), 59);
        assert_eq!(classify(&all).unwrap().len(), 9);
        assert_eq!(classify_in(&a5, &all).unwrap().len(), 9);
    }

    #[test]
    fn parent_shortcut_agrees() {
        let s4 = g("S4");
        let l = crate::subgroups::Lattice::new(&s4).unwrap();
        let recs = l.all_subgroups();
        let t = l.table();
        // the two classes of V4 in S4 are isomorphic but not conjugate
        let v4s: Vec<_> = recs.iter().filter(|r| r.order == 4).collect();
        for a in &v4s {
            for b in &v4s {
                let expected = is_isomorphic(&l.record_group(a), &l.record_group(b)).unwrap();
                let got = is_isomorphic_in_parent(&s4, t, &a.index, &b.index).unwrap();
                assert_eq!(got, expected);
            }
        }
    }
}
