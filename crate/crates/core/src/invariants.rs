//! d- and GR-invariants, the `|π(G)| + 2` bound, and the probes built on them.
//!
//! * `d(G)`: isomorphism classes among `{H' : H <= G}`.
//! * `GR(G)`: distinct sets among `{H' : H <= G}`.
//!
//! Both are computed from subgroup class representatives: conjugate subgroups
//! have conjugate derived subgroups, and the GR count adds up the conjugacy
//! orbit sizes of the pairwise non-conjugate derived subgroups.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use serde::Serialize;

use crate::catalog;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::iso::{self, IsoFingerprint};
use crate::perm::gcd;
use crate::subgroups::{self, Lattice, PiWitness, FAST_LATTICE_LIMIT};
use crate::table::{Bitset, IndexSubgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Fast,
    Slow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundVerdict {
    #[serde(rename = "equals_pi_plus_2")]
    EqualsPiPlus2,
    Exceeds,
    Below,
    /// Witnesses did not push the lower bound past `|π| + 2`.
    Inconclusive,
    NotApplicable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    Exhaustive,
    WitnessBased,
    None,
}

/// One isomorphism class of derived subgroups.
#[derive(Clone, Debug)]
pub struct DerivedClass {
    pub representative: PermGroup,
    pub fingerprint: IsoFingerprint,
}

#[derive(Clone, Debug)]
pub struct DInvariant {
    pub value: usize,
    pub classes: Vec<DerivedClass>,
}

/// Derived subgroups of a lattice, one per conjugacy class, with orbit sizes.
fn derived_classes(lattice: &Lattice) -> Vec<(IndexSubgroup, usize)> {
    let table = lattice.table();
    let mut known: HashMap<Bitset, ()> = HashMap::new();
    let mut out = Vec::new();
    for class in lattice.classes() {
        let d = lattice.derived_index(&class.representative);
        if known.contains_key(&d.elements) {
            continue;
        }
        let orbit = table.conjugacy_orbit(&d);
        for m in &orbit {
            known.insert(m.elements.clone(), ());
        }
        out.push((d, orbit.len()));
    }
    out
}

fn classify_derived(lattice: &Lattice, derived: &[IndexSubgroup]) -> Result<DInvariant> {
    let groups: Vec<PermGroup> = derived.iter().map(|d| lattice.to_perm_group(d)).collect();
    let classes = iso::classify(&groups)?;
    Ok(DInvariant {
        value: classes.len(),
        classes: classes
            .into_iter()
            .map(|c| DerivedClass {
                representative: groups[c.representative].clone(),
                fingerprint: c.fingerprint,
            })
            .collect(),
    })
}

pub fn d_from_lattice(lattice: &Lattice) -> Result<DInvariant> {
    let derived: Vec<IndexSubgroup> = derived_classes(lattice).into_iter().map(|d| d.0).collect();
    classify_derived(lattice, &derived)
}

/// d computed from every subgroup rather than from class representatives.
pub fn d_from_all_subgroups(lattice: &Lattice) -> Result<DInvariant> {
    let mut seen: HashMap<Bitset, ()> = HashMap::new();
    let mut derived = Vec::new();
    for class in lattice.classes() {
        for h in &class.members {
            let d = lattice.derived_index(h);
            if seen.insert(d.elements.clone(), ()).is_none() {
                derived.push(d);
            }
        }
    }
    classify_derived(lattice, &derived)
}

pub fn gr_from_lattice(lattice: &Lattice) -> u64 {
    derived_classes(lattice).iter().map(|d| d.1 as u64).sum()
}

/// GR counted directly over every subgroup.
pub fn gr_from_all_subgroups(lattice: &Lattice) -> u64 {
    let mut seen: HashMap<Bitset, ()> = HashMap::new();
    for class in lattice.classes() {
        for h in &class.members {
            seen.insert(lattice.derived_index(h).elements, ());
        }
    }
    seen.len() as u64
}

pub fn d_invariant(g: &PermGroup) -> Result<DInvariant> {
    d_from_lattice(&Lattice::new(g)?)
}

pub fn gr_invariant(g: &PermGroup) -> Result<u64> {
    Ok(gr_from_lattice(&Lattice::new(g)?))
}

/// Lower bound on `d(G)` from targeted witnesses: the number of distinct
/// fingerprints among derived subgroups of the trivial group, `G`, the
/// π-witnesses, Sylow subgroups and their normalizers, the first point
/// stabilizer, and dihedral subgroups. Distinct fingerprints are never
/// isomorphic, so the count never overshoots.
#[derive(Clone, Debug)]
pub struct WitnessBound {
    pub lower_bound: usize,
    /// Source label and fingerprint of each distinct class found.
    pub classes: Vec<(String, IsoFingerprint)>,
}

pub fn witness_lower_bound(g: &PermGroup) -> Result<WitnessBound> {
    let mut pool: Vec<(String, PermGroup)> = vec![
        ("trivial".into(), g.subgroup(vec![])),
        ("G".into(), g.derived_subgroup()),
    ];
    for (p, w) in subgroups::pi_witnesses(g)? {
        if let PiWitness::Found(w) = w {
            pool.push((format!("pi-witness {p}"), w.derived));
        }
    }
    for p in g.prime_spectrum() {
        let sylow = g.sylow(p)?;
        pool.push((format!("sylow {p}"), sylow.derived_subgroup()));
        let n = g.normalizer(&sylow)?;
        pool.push((format!("sylow-normalizer {p}"), n.derived_subgroup()));
    }
    pool.push((
        "point stabilizer".into(),
        g.first_point_stabilizer().derived_subgroup(),
    ));
    let mut orders: Vec<u64> = g.element_order_counts()?.into_iter().map(|c| c.0).collect();
    orders.retain(|&z| z >= 3);
    for z in orders {
        if let Some(w) = subgroups::dihedral_witness(g, z)? {
            pool.push((format!("dihedral {}", 2 * z), w.derived));
        }
    }
    let mut classes: Vec<(String, IsoFingerprint)> = Vec::new();
    for (label, d) in pool {
        let fp = iso::fingerprint(&d)?;
        if !classes.iter().any(|c| c.1 == fp) {
            classes.push((label, fp));
        }
    }
    Ok(WitnessBound {
        lower_bound: classes.len(),
        classes,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundCheck {
    pub verdict: BoundVerdict,
    pub evidence: Evidence,
    /// Exact d for exhaustive checks, otherwise the witness lower bound.
    pub d: Option<usize>,
    pub pi_plus_2: usize,
}

/// Compares `d(G)` with `|π(G)| + 2`, exhaustively when `|G| <= lattice_limit`
/// and from witnesses otherwise.
pub fn bound_check(g: &PermGroup, lattice_limit: u64) -> Result<BoundCheck> {
    let pi_plus_2 = g.prime_spectrum().len() + 2;
    if g.is_abelian() {
        return Ok(BoundCheck {
            verdict: BoundVerdict::NotApplicable,
            evidence: Evidence::None,
            d: None,
            pi_plus_2,
        });
    }
    if g.order() <= lattice_limit {
        let d = d_invariant(g)?.value;
        let verdict = match d.cmp(&pi_plus_2) {
            std::cmp::Ordering::Equal => BoundVerdict::EqualsPiPlus2,
            std::cmp::Ordering::Greater => BoundVerdict::Exceeds,
            std::cmp::Ordering::Less => BoundVerdict::Below,
        };
        return Ok(BoundCheck {
            verdict,
            evidence: Evidence::Exhaustive,
            d: Some(d),
            pi_plus_2,
        });
    }
    let lb = witness_lower_bound(g)?.lower_bound;
    Ok(BoundCheck {
        verdict: if lb > pi_plus_2 {
            BoundVerdict::Exceeds
        } else {
            BoundVerdict::Inconclusive
        },
        evidence: Evidence::WitnessBased,
        d: Some(lb),
        pi_plus_2,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProbeStatus {
    Pass,
    Flagged,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductProbe {
    pub d_a: usize,
    pub d_b: usize,
    pub observed: usize,
    pub predicted: usize,
    pub coprime: bool,
    /// Perfection of the diagonal when `A ≅ B` is nonabelian simple.
    pub diagonal_perfect: Option<bool>,
    pub status: ProbeStatus,
}

/// Observed `d(A × B)` against `d(A) d(B)`. Coprime orders must match
/// exactly; otherwise a shortfall is flagged rather than failed.
pub fn product_probe(a: &PermGroup, b: &PermGroup) -> Result<ProductProbe> {
    let d_a = d_invariant(a)?.value;
    let d_b = d_invariant(b)?.value;
    let product = catalog::direct_product(a, b)?;
    let observed = d_invariant(&product)?.value;
    let predicted = d_a * d_b;
    let coprime = gcd(a.order(), b.order()) == 1;
    let simple_pair = !a.is_abelian() && a.is_simple()? && iso::is_isomorphic(a, b)?;
    let diagonal_perfect = if simple_pair {
        let pairs = iso::find_isomorphism(a, b)?.expect("checked isomorphic");
        let diag = catalog::diagonal(a.degree(), b.degree(), &pairs)?;
        Some(diag.is_perfect())
    } else {
        None
    };
    let status = if coprime {
        if observed == predicted {
            ProbeStatus::Pass
        } else {
            ProbeStatus::Fail
        }
    } else {
        let target = if simple_pair {
            predicted + 1
        } else {
            predicted
        };
        if observed >= target {
            ProbeStatus::Pass
        } else {
            ProbeStatus::Flagged
        }
    };
    Ok(ProductProbe {
        d_a,
        d_b,
        observed,
        predicted,
        coprime,
        diagonal_perfect,
        status,
    })
}

/// For a Frobenius group `G = K ⋊ H`: does `G' = K H'` hold as sets?
pub fn frobenius_derived_check(g: &PermGroup, k: &PermGroup, h: &PermGroup) -> Result<bool> {
    if !subgroups::frobenius_complement_check(g, h)? {
        return Err(Error::Precondition(
            "H is not a Frobenius complement in G".into(),
        ));
    }
    if !k.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    let normal = g
        .generators()
        .iter()
        .all(|x| k.generators().iter().all(|y| k.has(&y.conj(x))));
    if !normal || k.order() * h.order() != g.order() {
        return Err(Error::Precondition(format!(
            "K must be normal of order |G|/|H| = {} (got order {}, normal: {normal})",
            g.order() / h.order(),
            k.order()
        )));
    }
    let mut gens = k.generators().to_vec();
    gens.extend(h.derived_subgroup().generators().iter().cloned());
    Ok(g.derived_subgroup().same_elements(&g.subgroup(gens)))
}

/// Shipped candidates for the equal-order probe (all of order 60).
pub const CONJECTURE_CANDIDATES: &[&str] = &[
    "A5",
    "C60",
    "prod(C2,C30)",
    "D60",
    "prod(A4,C5)",
    "prod(S3,D10)",
    "prod(C3,D20)",
    "prod(C5,D12)",
    "prod(S3,C10)",
    "prod(D10,C6)",
    "prod(frob(5,4),C3)",
];

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureRow {
    pub group: String,
    pub d: usize,
    pub gr: u64,
    pub nonabelian_simple: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjecturePair {
    pub group: String,
    pub simple: String,
    pub d_match: bool,
    pub gr_match: bool,
}

/// d and GR of every shipped candidate (plus `C_order`) of the given order.
pub fn conjecture_rows(order: u64) -> Result<Vec<ConjectureRow>> {
    let mut exprs: Vec<String> = CONJECTURE_CANDIDATES
        .iter()
        .map(|s| s.to_string())
        .collect();
    exprs.push(format!("C{order}"));
    let mut rows = Vec::new();
    let mut seen = Vec::new();
    for e in exprs {
        let spec: catalog::GroupSpec = e.parse()?;
        if spec.expected_order() != Some(order) || seen.contains(&e) {
            continue;
        }
        seen.push(e.clone());
        let g = catalog::make(&spec)?;
        let lattice = Lattice::with_limit(&g, FAST_LATTICE_LIMIT)?;
        rows.push(ConjectureRow {
            group: e,
            d: d_from_lattice(&lattice)?.value,
            gr: gr_from_lattice(&lattice),
            nonabelian_simple: !g.is_abelian() && g.is_simple()?,
        });
    }
    Ok(rows)
}

/// Pairs `(G, S)` of equal order with `S` nonabelian simple, `G ≇ S`, and a
/// matching d or GR value.
pub fn conjecture_probe(order: u64) -> Result<Vec<ConjecturePair>> {
    let rows = conjecture_rows(order)?;
    let mut out = Vec::new();
    for s in rows.iter().filter(|r| r.nonabelian_simple) {
        let sg = catalog::parse_and_make(&s.group)?;
        for g in &rows {
            if g.group == s.group {
                continue;
            }
            let (d_match, gr_match) = (g.d == s.d, g.gr == s.gr);
            if !(d_match || gr_match) {
                continue;
            }
            if iso::is_isomorphic(&catalog::parse_and_make(&g.group)?, &sg)? {
                continue;
            }
            out.push(ConjecturePair {
                group: g.group.clone(),
                simple: s.group.clone(),
                d_match,
                gr_match,
            });
        }
    }
    Ok(out)
}

/// Which fields a report should compute.
#[derive(Clone, Copy, Debug)]
pub struct ReportRequest {
    pub d: bool,
    pub gr: bool,
    pub pi: bool,
    pub bound: bool,
    pub witnesses: bool,
    pub lattice_limit: u64,
}

impl Default for ReportRequest {
    fn default() -> Self {
        ReportRequest {
            d: true,
            gr: true,
            pi: true,
            bound: true,
            witnesses: false,
            lattice_limit: FAST_LATTICE_LIMIT,
        }
    }
}

/// Per-group result record; field names are part of the JSON report format.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub group: String,
    pub order: u64,
    pub pi: Vec<u64>,
    pub d_value: Option<usize>,
    pub d_class_reps: Vec<IsoFingerprint>,
    pub gr_value: Option<u64>,
    pub bound_verdict: BoundVerdict,
    pub bound_evidence: Evidence,
    /// Witness lower bound on d when the lattice is out of reach.
    pub d_lower_bound: Option<usize>,
    pub witnesses: BTreeMap<String, String>,
    pub tier: Tier,
    #[serde(skip)]
    pub timings: BTreeMap<String, f64>,
}

pub fn report(g: &PermGroup, req: &ReportRequest) -> Result<InvariantReport> {
    let label = g.label().unwrap_or("G").to_string();
    let order = g.order();
    let mut timings = BTreeMap::new();
    let mut clock = |name: &str, start: Instant| {
        timings.insert(name.to_string(), start.elapsed().as_secs_f64());
    };
    let exhaustive = order <= req.lattice_limit;
    let tier = if order <= FAST_LATTICE_LIMIT {
        Tier::Fast
    } else {
        Tier::Slow
    };
    let lattice = if exhaustive && (req.d || req.gr) {
        let t = Instant::now();
        let l = Lattice::with_limit(g, req.lattice_limit)?;
        clock("lattice", t);
        Some(l)
    } else {
        None
    };
    if (req.d || req.gr) && lattice.is_none() {
        return Err(Error::TooLarge {
            what: "subgroup lattice (use conjugacy-class mode or targeted witnesses)",
            order,
            limit: req.lattice_limit,
        });
    }
    let d = match (&lattice, req.d) {
        (Some(l), true) => {
            let t = Instant::now();
            let d = d_from_lattice(l)?;
            clock("d", t);
            Some(d)
        }
        _ => None,
    };
    let gr = match (&lattice, req.gr) {
        (Some(l), true) => {
            let t = Instant::now();
            let v = gr_from_lattice(l);
            clock("gr", t);
            Some(v)
        }
        _ => None,
    };
    let pi_plus_2 = g.prime_spectrum().len() + 2;
    let (mut bound_verdict, mut bound_evidence, mut d_lower_bound) =
        (BoundVerdict::NotApplicable, Evidence::None, None);
    if req.bound && !g.is_abelian() {
        let t = Instant::now();
        match &d {
            Some(d) => {
                bound_evidence = Evidence::Exhaustive;
                bound_verdict = match d.value.cmp(&pi_plus_2) {
                    std::cmp::Ordering::Equal => BoundVerdict::EqualsPiPlus2,
                    std::cmp::Ordering::Greater => BoundVerdict::Exceeds,
                    std::cmp::Ordering::Less => BoundVerdict::Below,
                };
            }
            None => {
                let check = bound_check(g, req.lattice_limit)?;
                bound_verdict = check.verdict;
                bound_evidence = check.evidence;
                if check.evidence == Evidence::WitnessBased {
                    d_lower_bound = check.d;
                }
            }
        }
        clock("bound", t);
    }
    let mut witnesses = BTreeMap::new();
    if req.witnesses {
        let t = Instant::now();
        for (p, w) in subgroups::pi_witnesses(g)? {
            let summary = match w {
                PiWitness::Found(w) => format!(
                    "subgroup of order {} with derived subgroup of order {}",
                    w.subgroup.order(),
                    w.derived.order()
                ),
                PiWitness::Inapplicable => format!("inapplicable ({p}-nilpotent)"),
            };
            witnesses.insert(p.to_string(), summary);
        }
        clock("witnesses", t);
    }
    Ok(InvariantReport {
        group: label,
        order,
        pi: if req.pi {
            g.prime_spectrum()
        } else {
            Vec::new()
        },
        d_value: d.as_ref().map(|d| d.value),
        d_class_reps: d
            .map(|d| d.classes.into_iter().map(|c| c.fingerprint).collect())
            .unwrap_or_default(),
        gr_value: gr,
        bound_verdict,
        bound_evidence,
        d_lower_bound,
        witnesses,
        tier,
        timings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::parse_and_make;

    fn g(expr: &str) -> PermGroup {
        parse_and_make(expr).unwrap()
    }

    #[test]
    fn a5_invariants() {
        let a5 = g("A5");
        let d = d_invariant(&a5).unwrap();
        assert_eq!(d.value, 5);
        let orders: Vec<u64> = d.classes.iter().map(|c| c.fingerprint.order).collect();
        assert_eq!(orders, vec![1, 3, 4, 5, 60]);
        assert_eq!(gr_invariant(&a5).unwrap(), 23);
    }

    #[test]
    fn abelian_groups_have_d_and_gr_one() {
        for e in ["C1", "C12", "prod(C2,C2)", "prod(C4,C6)"] {
            assert_eq!(d_invariant(&g(e)).unwrap().value, 1, "{e}");
            assert_eq!(gr_invariant(&g(e)).unwrap(), 1, "{e}");
        }
    }

    #[test]
    fn dihedral_two_power_values() {
        for n in 3..=7u32 {
            let grp = g(&format!("D{}", 1u64 << n));
            let expected = n as usize - 1;
            assert_eq!(d_invariant(&grp).unwrap().value, expected, "n = {n}");
            assert_eq!(gr_invariant(&grp).unwrap(), expected as u64, "n = {n}");
        }
    }

    #[test]
    fn class_rep_route_matches_full_list() {
        for e in [
            "S3",
            "S4",
            "A5",
            "D16",
            "prod(S3,C5)",
            "frob(13,4)",
            "prod(D8,C3)",
            "D60",
        ] {
            let l = Lattice::new(&g(e)).unwrap();
            assert_eq!(
                d_from_lattice(&l).unwrap().value,
                d_from_all_subgroups(&l).unwrap().value,
                "{e}"
            );
            assert_eq!(gr_from_lattice(&l), gr_from_all_subgroups(&l), "{e}");
        }
    }

    #[test]
    fn gr_bounds_d() {
        for e in ["S4", "S5", "D12", "A4", "prod(S3,S3)"] {
            let l = Lattice::new(&g(e)).unwrap();
            assert!(
                gr_from_lattice(&l) >= d_from_lattice(&l).unwrap().value as u64,
                "{e}"
            );
        }
    }

    #[test]
    fn bound_check_examples() {
        let a5 = bound_check(&g("A5"), FAST_LATTICE_LIMIT).unwrap();
        assert_eq!(
            (a5.verdict, a5.d, a5.pi_plus_2),
            (BoundVerdict::EqualsPiPlus2, Some(5), 5)
        );
        let l7 = bound_check(&g("PSL2_7"), FAST_LATTICE_LIMIT).unwrap();
        assert_eq!(l7.verdict, BoundVerdict::Exceeds);
        let s5 = bound_check(&g("S5"), FAST_LATTICE_LIMIT).unwrap();
        assert_eq!((s5.verdict, s5.d), (BoundVerdict::Exceeds, Some(7)));
        let c = bound_check(&g("C12"), FAST_LATTICE_LIMIT).unwrap();
        assert_eq!(c.verdict, BoundVerdict::NotApplicable);
        let s3 = bound_check(&g("S3"), FAST_LATTICE_LIMIT).unwrap();
        assert_eq!(s3.verdict, BoundVerdict::Below);
    }

    #[test]
    fn witness_bound_never_exceeds_exact_value() {
        for e in ["A5", "S4", "PSL2_7", "PSL2_8", "S5"] {
            let grp = g(e);
            let lb = witness_lower_bound(&grp).unwrap().lower_bound;
            assert!(lb <= d_invariant(&grp).unwrap().value, "{e}");
        }
        let a5 = witness_lower_bound(&g("A5")).unwrap();
        assert_eq!(a5.lower_bound, 5);
    }

    #[test]
    fn frobenius_examples() {
        for (p, k) in [(7, 3), (5, 4), (11, 5), (13, 4)] {
            let grp = catalog::metacyclic_frobenius(p, k).unwrap();
            let kernel = catalog::frobenius_kernel(&grp);
            let comp = catalog::frobenius_complement(&grp);
            assert!(frobenius_derived_check(&grp, &kernel, &comp).unwrap());
            assert_eq!(grp.derived_subgroup().order(), p as u64);
        }
        let s4 = g("S4");
        let c2 = s4.subgroup(vec![crate::Permutation::parse_cycles("(0,1)", 4).unwrap()]);
        assert!(frobenius_derived_check(&s4, &s4, &c2).is_err());
    }

    #[test]
    fn product_probe_examples() {
        let p = product_probe(&g("D8"), &g("C3")).unwrap();
        assert_eq!((p.d_a, p.d_b, p.observed, p.coprime), (2, 1, 2, true));
        assert_eq!(p.status, ProbeStatus::Pass);
        let p = product_probe(&g("S3"), &g("C5")).unwrap();
        assert_eq!(
            (p.observed, p.predicted, p.status),
            (2, 2, ProbeStatus::Pass)
        );
    }

    #[test]
    fn conjecture_probe_edges() {
        assert!(conjecture_probe(59).unwrap().is_empty());
        let pairs = conjecture_probe(60).unwrap();
        assert!(pairs.iter().all(|p| p.simple == "A5" && p.group != "A5"));
        let rows = conjecture_rows(60).unwrap();
        assert_eq!(rows.len(), CONJECTURE_CANDIDATES.len());
        assert_eq!(rows.iter().filter(|r| r.nonabelian_simple).count(), 1);
    }

    #[test]
    fn report_fields() {
        let r = report(&g("A5"), &ReportRequest::default()).unwrap();
        assert_eq!(r.d_value, Some(5));
        assert_eq!(r.d_value, Some(r.d_class_reps.len()));
        assert_eq!(r.gr_value, Some(23));
        assert_eq!(r.pi, vec![2, 3, 5]);
        assert_eq!(r.bound_verdict, BoundVerdict::EqualsPiPlus2);
        assert_eq!(r.tier, Tier::Fast);
        let too_big = ReportRequest {
            lattice_limit: 50,
            ..ReportRequest::default()
        };
        assert!(matches!(
            report(&g("A5"), &too_big),
            Err(Error::TooLarge { limit: 50, .. })
        ));
    }
}
