//! Verification suites: numbered claims about d, GR and the witness
//! constructions, each evaluated to pass / fail / flagged / skipped.

use std::collections::HashSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{self, parse_and_make, GroupSpec};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::invariants::{self, BoundVerdict, Evidence, ProbeStatus};
use crate::iso;
use crate::subgroups::{self, Lattice, PiWitness, FAST_LATTICE_LIMIT};
use crate::table::Bitset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteTier {
    Fast,
    Full,
}

impl FromStr for SuiteTier {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(SuiteTier::Fast),
            "full" => Ok(SuiteTier::Full),
            _ => Err(Error::InvalidParameter(format!(
                "unknown tier `{s}` (expected fast or full)"
            ))),
        }
    }
}

impl fmt::Display for SuiteTier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SuiteTier::Fast => "fast",
            SuiteTier::Full => "full",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimStatus {
    Pass,
    Fail,
    Flagged,
    Skipped,
}

impl fmt::Display for ClaimStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClaimStatus::Pass => "pass",
            ClaimStatus::Fail => "fail",
            ClaimStatus::Flagged => "flagged",
            ClaimStatus::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub id: &'static str,
    pub description: &'static str,
    pub anchor: &'static str,
    pub status: ClaimStatus,
    pub details: String,
    #[serde(skip)]
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub tier: SuiteTier,
    pub claims: Vec<Claim>,
    pub exit_status: i32,
}

impl SuiteResult {
    pub fn failures(&self) -> usize {
        self.claims
            .iter()
            .filter(|c| c.status == ClaimStatus::Fail)
            .count()
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub tier: SuiteTier,
    pub data_dir: PathBuf,
}

impl SuiteConfig {
    pub fn new(tier: SuiteTier, data_dir: impl Into<PathBuf>) -> Self {
        SuiteConfig {
            tier,
            data_dir: data_dir.into(),
        }
    }

    fn full(&self) -> bool {
        self.tier == SuiteTier::Full
    }
}

pub const SUITES: &[&str] = &["paper"];

type Outcome = Result<(ClaimStatus, String)>;

struct ClaimDef {
    id: &'static str,
    description: &'static str,
    anchor: &'static str,
    run: fn(&SuiteConfig) -> Outcome,
}

const CLAIMS: &[ClaimDef] = &[
    ClaimDef {
        id: "1",
        description: "d(A5) = 5 with derived classes 1, C3, C5, V4, A5",
        anchor: "a5-unique-simple-d5",
        run: claim_d_a5,
    },
    ClaimDef {
        id: "2",
        description: "GR(A5) = 23",
        anchor: "a5-gr-count",
        run: claim_gr_a5,
    },
    ClaimDef {
        id: "3",
        description: "d(D_{2^n}) = GR(D_{2^n}) = n - 1 for n = 4..10",
        anchor: "dihedral-2power-family",
        run: claim_dihedral,
    },
    ClaimDef {
        id: "4",
        description: "d(D64) = d(A5) = 5 while D64 and A5 are not isomorphic",
        anchor: "equal-d-nonisomorphic-pair",
        run: claim_counterexample,
    },
    ClaimDef {
        id: "5",
        description: "simple groups with three prime divisors other than A5 have d > |pi| + 2",
        anchor: "k3-strict-bound",
        run: claim_k3_bound,
    },
    ClaimDef {
        id: "5b",
        description: "every simple catalog group has d >= |pi| + 2",
        anchor: "simple-group-bound",
        run: claim_simple_bound,
    },
    ClaimDef {
        id: "6",
        description: "every prime of every simple catalog group has a witness with nontrivial p-group derived subgroup",
        anchor: "prime-witnesses",
        run: claim_pi_witnesses,
    },
    ClaimDef {
        id: "7",
        description: "N(P) = C(P) implies p-nilpotence on catalog groups of order <= 2000",
        anchor: "burnside-transfer",
        run: claim_burnside,
    },
    ClaimDef {
        id: "8",
        description: "Frobenius groups K H satisfy G' = K H'",
        anchor: "frobenius-derived",
        run: claim_frobenius,
    },
    ClaimDef {
        id: "9",
        description: "Sz(8): |Z(F)| = 8, S' = Z(F), T' = F, S' and T' not isomorphic",
        anchor: "suzuki-normalizer-chain",
        run: claim_suzuki,
    },
    ClaimDef {
        id: "10",
        description: "d(A x B) = d(A) d(B) for coprime (A5,C7), (D8,C3), (S3,C5)",
        anchor: "coprime-product",
        run: claim_coprime_products,
    },
    ClaimDef {
        id: "10b",
        description: "non-coprime product probe (D8,D8) against d(A) d(B)",
        anchor: "product-lower-bound",
        run: claim_noncoprime_product,
    },
    ClaimDef {
        id: "11",
        description: "the diagonal of A5 x A5 is perfect",
        anchor: "perfect-diagonal",
        run: claim_diagonal,
    },
    ClaimDef {
        id: "12",
        description: "PSL(2,41) has a D42 whose derived subgroup has order divisible by 3 and 7",
        anchor: "psl2-dihedral-witness",
        run: claim_psl2_41,
    },
    ClaimDef {
        id: "13",
        description: "A_n, ..., A_4, V4, 1 are pairwise non-isomorphic derived subgroups in S_n (n = 5,6,7); d(S5) = 7",
        anchor: "symmetric-lower-bound",
        run: claim_symmetric,
    },
    ClaimDef {
        id: "14",
        description: "engine property checks: lattice oracle, isomorphism ground truth, chain orders, derived normality",
        anchor: "engine-properties",
        run: claim_properties,
    },
    ClaimDef {
        id: "15",
        description: "equal-order probe at order 60: non-isomorphic groups sharing d or GR with A5",
        anchor: "equal-order-probe",
        run: claim_conjecture_probe,
    },
];

pub fn run_suite(name: &str, config: &SuiteConfig) -> Result<SuiteResult> {
    if !SUITES.contains(&name) {
        return Err(Error::InvalidParameter(format!(
            "unknown suite `{name}` (available: {})",
            SUITES.join(", ")
        )));
    }
    let claims: Vec<Claim> = CLAIMS.par_iter().map(|c| evaluate(c, config)).collect();
    let exit_status = if claims.iter().any(|c| c.status == ClaimStatus::Fail) {
        1
    } else {
        0
    };
    Ok(SuiteResult {
        suite: name.to_string(),
        tier: config.tier,
        claims,
        exit_status,
    })
}

fn evaluate(def: &ClaimDef, config: &SuiteConfig) -> Claim {
    let start = Instant::now();
    let (status, details) = match (def.run)(config) {
        Ok(r) => r,
        Err(Error::Io { path, msg }) => (ClaimStatus::Skipped, format!("data file {path}: {msg}")),
        Err(e) => (ClaimStatus::Fail, format!("error: {e}")),
    };
    Claim {
        id: def.id,
        description: def.description,
        anchor: def.anchor,
        status,
        details,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn verdict(ok: bool, details: String) -> Outcome {
    Ok((
        if ok {
            ClaimStatus::Pass
        } else {
            ClaimStatus::Fail
        },
        details,
    ))
}

fn full_only() -> Outcome {
    Ok((ClaimStatus::Skipped, "full tier only".into()))
}

fn data_group(config: &SuiteConfig, name: &str, file: &str) -> Result<PermGroup> {
    let path = config.data_dir.join(file);
    if !path.exists() {
        return Err(Error::Io {
            path: path.display().to_string(),
            msg: "not found".into(),
        });
    }
    catalog::make(&GroupSpec::FromFile {
        name: name.into(),
        path: path.display().to_string(),
    })
}

/// Nonabelian simple catalog groups covered by a tier.
fn simple_groups(config: &SuiteConfig) -> Result<Vec<(String, PermGroup)>> {
    let mut out = Vec::new();
    for e in [
        "A5", "PSL2_4", "PSL2_5", "PSL2_7", "PSL2_8", "PSL2_9", "A6", "PSL2_11", "PSL2_13",
        "PSL2_17",
    ] {
        out.push((e.to_string(), parse_and_make(e)?));
    }
    if config.full() {
        for e in ["PSL2_16", "PSL2_25", "PSL2_27", "PSL2_41"] {
            out.push((e.to_string(), parse_and_make(e)?));
        }
        for (name, file) in [
            ("PSL3_3", "psl3_3.grp"),
            ("U3_3", "u3_3.grp"),
            ("U4_2", "u4_2.grp"),
            ("SZ8", "sz8.grp"),
        ] {
            out.push((name.to_string(), data_group(config, name, file)?));
        }
    }
    Ok(out)
}

/// Catalog groups built from expressions (no data files) up to `max_order`.
fn small_catalog(max_order: u64) -> Result<Vec<(String, PermGroup)>> {
    let mut out = Vec::new();
    for spec in catalog::standard_catalog("data") {
        if matches!(spec, GroupSpec::FromFile { .. }) {
            continue;
        }
        if spec.expected_order().is_some_and(|o| o <= max_order) {
            out.push((spec.to_string(), catalog::make(&spec)?));
        }
    }
    Ok(out)
}

fn claim_d_a5(_: &SuiteConfig) -> Outcome {
    let d = invariants::d_invariant(&parse_and_make("A5")?)?;
    let expected = ["C1", "C3", "prod(C2,C2)", "C5", "A5"];
    let mut matched = 0;
    for e in expected {
        let target = parse_and_make(e)?;
        if d.classes
            .iter()
            .any(|c| iso::is_isomorphic(&c.representative, &target).unwrap_or(false))
        {
            matched += 1;
        }
    }
    let orders: Vec<u64> = d.classes.iter().map(|c| c.fingerprint.order).collect();
    verdict(
        d.value == 5 && matched == 5,
        format!("d = {}, class orders {orders:?}", d.value),
    )
}

fn claim_gr_a5(_: &SuiteConfig) -> Outcome {
    let gr = invariants::gr_invariant(&parse_and_make("A5")?)?;
    verdict(gr == 23, format!("GR = {gr}"))
}

fn claim_dihedral(_: &SuiteConfig) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 4..=10u32 {
        let g = catalog::dihedral(1 << n)?;
        let l = Lattice::with_limit(&g, FAST_LATTICE_LIMIT)?;
        let d = invariants::d_from_lattice(&l)?.value;
        let gr = invariants::gr_from_lattice(&l);
        ok &= d == n as usize - 1 && gr == n as u64 - 1;
        parts.push(format!("D{}: d={d} GR={gr}", 1u64 << n));
    }
    verdict(ok, parts.join(", "))
}

fn claim_counterexample(_: &SuiteConfig) -> Outcome {
    let d64 = parse_and_make("D64")?;
    let a5 = parse_and_make("A5")?;
    let (x, y) = (
        invariants::d_invariant(&d64)?.value,
        invariants::d_invariant(&a5)?.value,
    );
    let iso = iso::is_isomorphic(&d64, &a5)?;
    verdict(
        x == 5 && y == 5 && !iso,
        format!("d(D64) = {x}, d(A5) = {y}, isomorphic = {iso}"),
    )
}

/// Groups with exactly three prime divisors: the bound is strict except at A5.
fn claim_k3_bound(config: &SuiteConfig) -> Outcome {
    let a5 = parse_and_make("A5")?;
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, g) in simple_groups(config)? {
        if g.prime_spectrum().len() != 3 {
            continue;
        }
        let check = invariants::bound_check(&g, FAST_LATTICE_LIMIT)?;
        parts.push(describe_bound(&name, &check));
        ok &= match check.verdict {
            BoundVerdict::EqualsPiPlus2 => iso::is_isomorphic(&g, &a5)?,
            BoundVerdict::Exceeds => !iso::is_isomorphic(&g, &a5)?,
            _ => false,
        };
    }
    verdict(ok, parts.join("; "))
}

/// `d >= |pi| + 2` for every simple catalog group; equality away from A5 is
/// flagged.
fn claim_simple_bound(config: &SuiteConfig) -> Outcome {
    let a5 = parse_and_make("A5")?;
    let mut status = ClaimStatus::Pass;
    let mut parts = Vec::new();
    let mut equal = Vec::new();
    for (name, g) in simple_groups(config)? {
        let check = invariants::bound_check(&g, FAST_LATTICE_LIMIT)?;
        parts.push(describe_bound(&name, &check));
        match check.verdict {
            BoundVerdict::Exceeds => {}
            BoundVerdict::EqualsPiPlus2 => {
                if !iso::is_isomorphic(&g, &a5)? {
                    equal.push(name);
                    status = ClaimStatus::Flagged;
                }
            }
            BoundVerdict::Inconclusive => {
                if status == ClaimStatus::Pass {
                    status = ClaimStatus::Flagged;
                }
            }
            BoundVerdict::Below | BoundVerdict::NotApplicable => status = ClaimStatus::Fail,
        }
    }
    let mut details = parts.join("; ");
    if !equal.is_empty() {
        details.push_str(&format!("; equality outside A5: {}", equal.join(", ")));
    }
    Ok((status, details))
}

fn describe_bound(name: &str, check: &invariants::BoundCheck) -> String {
    let d = check.d.unwrap_or(0);
    match check.evidence {
        Evidence::WitnessBased => format!("{name}: d >= {d} vs {} (witness)", check.pi_plus_2),
        _ => format!("{name}: d = {d} vs {} (exhaustive)", check.pi_plus_2),
    }
}

fn claim_pi_witnesses(config: &SuiteConfig) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, g) in simple_groups(config)? {
        let ws = subgroups::pi_witnesses(&g)?;
        let mut orders = Vec::new();
        for (p, w) in &ws {
            match w {
                PiWitness::Found(w) if subgroups::is_p_group_witness(w, *p) => {
                    orders.push(format!("{p}:{}", w.derived.order()))
                }
                _ => {
                    ok = false;
                    orders.push(format!("{p}:missing"));
                }
            }
        }
        if name == "A5" {
            let derived: Vec<u64> = ws
                .values()
                .filter_map(|w| w.found().map(|w| w.derived.order()))
                .collect();
            ok &= derived == [4, 3, 5];
        }
        parts.push(format!("{name} [{}]", orders.join(" ")));
    }
    verdict(ok, parts.join("; "))
}

fn claim_burnside(_: &SuiteConfig) -> Outcome {
    let groups = small_catalog(2000)?;
    let results: Vec<Result<(usize, usize, Vec<String>)>> = groups
        .par_iter()
        .map(|(name, g)| {
            let (mut applicable, mut checked, mut bad) = (0, 0, Vec::new());
            for p in g.prime_spectrum() {
                let sylow = g.sylow(p)?;
                let n = g.normalizer(&sylow)?;
                let c = g.centralizer_of(&sylow)?;
                checked += 1;
                if n.order() == c.order() {
                    applicable += 1;
                    if !g.is_p_nilpotent(p)? {
                        bad.push(format!("{name} p={p}"));
                    }
                }
            }
            Ok((applicable, checked, bad))
        })
        .collect();
    let (mut applicable, mut checked, mut violations) = (0, 0, Vec::new());
    for r in results {
        let (a, c, b) = r?;
        applicable += a;
        checked += c;
        violations.extend(b);
    }
    verdict(
        violations.is_empty(),
        format!(
            "{} groups, {checked} (group, prime) pairs, {applicable} with N(P) = C(P), {} violations {violations:?}",
            groups.len(),
            violations.len()
        ),
    )
}

fn claim_frobenius(config: &SuiteConfig) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (p, k) in [(7, 3), (5, 4), (11, 5), (13, 4)] {
        let g = catalog::metacyclic_frobenius(p, k)?;
        let holds = invariants::frobenius_derived_check(
            &g,
            &catalog::frobenius_kernel(&g),
            &catalog::frobenius_complement(&g),
        )?;
        ok &= holds;
        parts.push(format!("frob({p},{k}): {holds}"));
    }
    if config.full() {
        let w = subgroups::suzuki_witnesses(&data_group(config, "SZ8", "sz8.grp")?)?;
        let holds = invariants::frobenius_derived_check(&w.t, &w.f, &w.h)?
            && w.t_derived.same_elements(&w.f);
        ok &= holds;
        parts.push(format!("Sz(8) T = N(F): {holds}"));
    }
    verdict(ok, parts.join(", "))
}

fn claim_suzuki(config: &SuiteConfig) -> Outcome {
    if !config.full() {
        return full_only();
    }
    let w = subgroups::suzuki_witnesses(&data_group(config, "SZ8", "sz8.grp")?)?;
    let iso = iso::is_isomorphic(&w.s_derived, &w.t_derived)?;
    verdict(
        w.zf.order() == 8
            && w.s_derived.same_elements(&w.zf)
            && w.t_derived.same_elements(&w.f)
            && !iso,
        format!(
            "|F| = {}, |Z(F)| = {}, |T| = {}, |S'| = {}, |T'| = {}, S' ~ T' = {iso}",
            w.f.order(),
            w.zf.order(),
            w.t.order(),
            w.s_derived.order(),
            w.t_derived.order()
        ),
    )
}

fn claim_coprime_products(_: &SuiteConfig) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (a, b) in [("A5", "C7"), ("D8", "C3"), ("S3", "C5")] {
        let p = invariants::product_probe(&parse_and_make(a)?, &parse_and_make(b)?)?;
        ok &= p.coprime && p.status == ProbeStatus::Pass;
        parts.push(format!(
            "{a} x {b}: observed {} = {} x {}",
            p.observed, p.d_a, p.d_b
        ));
    }
    verdict(ok, parts.join(", "))
}

fn claim_noncoprime_product(_: &SuiteConfig) -> Outcome {
    let p = invariants::product_probe(&parse_and_make("D8")?, &parse_and_make("D8")?)?;
    let status = match p.status {
        ProbeStatus::Pass => ClaimStatus::Pass,
        ProbeStatus::Flagged => ClaimStatus::Flagged,
        ProbeStatus::Fail => ClaimStatus::Fail,
    };
    Ok((
        status,
        format!(
            "D8 x D8: observed d = {}, d(D8)^2 = {}",
            p.observed, p.predicted
        ),
    ))
}

fn claim_diagonal(_: &SuiteConfig) -> Outcome {
    let a5 = parse_and_make("A5")?;
    let pairs = iso::find_isomorphism(&a5, &a5)?
        .ok_or_else(|| Error::Precondition("no automorphism found".into()))?;
    let diag = catalog::diagonal(a5.degree(), a5.degree(), &pairs)?;
    let perfect = diag.is_perfect();
    verdict(
        perfect && diag.order() == 60,
        format!("|T| = {}, T' = T: {perfect}", diag.order()),
    )
}

fn claim_psl2_41(config: &SuiteConfig) -> Outcome {
    if !config.full() {
        return full_only();
    }
    let g = parse_and_make("PSL2_41")?;
    match subgroups::dihedral_witness(&g, 21)? {
        Some(w) => {
            let d = w.derived.order();
            verdict(
                w.subgroup.order() == 42 && d % 21 == 0,
                format!("|D| = {}, |D'| = {d}", w.subgroup.order()),
            )
        }
        None => verdict(false, "no D42 found".into()),
    }
}

fn claim_symmetric(_: &SuiteConfig) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 5..=7u32 {
        let sn = catalog::symmetric(n)?;
        let mut derived = Vec::new();
        for k in (4..=n).rev() {
            let sk = sn.subgroup(
                catalog::symmetric(k)?
                    .generators()
                    .iter()
                    .map(|x| widen(x, n))
                    .collect(),
            );
            derived.push(sk.derived_subgroup());
        }
        let v4 = derived.last().expect("n >= 4").derived_subgroup();
        derived.push(v4.clone());
        derived.push(v4.derived_subgroup());
        let fps = derived
            .iter()
            .map(iso::fingerprint)
            .collect::<Result<Vec<_>>>()?;
        let distinct: HashSet<_> = fps.iter().collect();
        let inside = derived.iter().all(|d| d.is_subgroup_of(&sn));
        ok &= distinct.len() == n as usize - 1 && inside;
        let orders: Vec<u64> = derived.iter().map(|d| d.order()).collect();
        parts.push(format!("S{n}: {} classes {orders:?}", distinct.len()));
    }
    let d5 = invariants::d_invariant(&parse_and_make("S5")?)?.value;
    ok &= d5 == 7;
    parts.push(format!("d(S5) = {d5}"));
    verdict(ok, parts.join("; "))
}

fn widen(x: &crate::Permutation, n: u32) -> crate::Permutation {
    let mut images: Vec<u32> = x.images().to_vec();
    images.extend(images.len() as u32..n);
    crate::Permutation::from_images(images).expect("extension of a permutation")
}

fn claim_properties(_: &SuiteConfig) -> Outcome {
    let report = property_checks()?;
    verdict(report.failures.is_empty(), report.summary())
}

fn claim_conjecture_probe(_: &SuiteConfig) -> Outcome {
    let pairs = invariants::conjecture_probe(60)?;
    let both: Vec<&invariants::ConjecturePair> =
        pairs.iter().filter(|p| p.d_match && p.gr_match).collect();
    let listed: Vec<String> = pairs
        .iter()
        .map(|p| {
            format!(
                "{} vs {} (d {}, GR {})",
                p.group,
                p.simple,
                if p.d_match { "equal" } else { "differs" },
                if p.gr_match { "equal" } else { "differs" }
            )
        })
        .collect();
    let details = if listed.is_empty() {
        "no candidate shares d or GR with A5".to_string()
    } else {
        listed.join("; ")
    };
    Ok((
        if both.is_empty() {
            ClaimStatus::Pass
        } else {
            ClaimStatus::Flagged
        },
        details,
    ))
}

/// Outcome of the engine self-checks.
#[derive(Clone, Debug, Default)]
pub struct PropertyReport {
    pub lattice_groups: usize,
    pub iso_pairs: usize,
    pub chain_groups: usize,
    pub derived_groups: usize,
    pub failures: Vec<String>,
}

impl PropertyReport {
    pub fn summary(&self) -> String {
        format!(
            "lattice oracle on {} groups, {} isomorphism pairs, chain order on {} groups, derived normality on {} groups, {} failures {:?}",
            self.lattice_groups,
            self.iso_pairs,
            self.chain_groups,
            self.derived_groups,
            self.failures.len(),
            self.failures
        )
    }
}

/// Isomorphism pairs of order <= 64 whose answer is known by construction.
pub fn iso_ground_truth() -> Vec<(String, String, bool)> {
    let mut out = Vec::new();
    for m in 2..=8u64 {
        for n in 2..=8u64 {
            if m * n <= 64 {
                out.push((
                    format!("prod(C{m},C{n})"),
                    format!("C{}", m * n),
                    crate::perm::gcd(m, n) == 1,
                ));
            }
        }
    }
    for n in [6u64, 8, 10, 12, 16, 20, 32] {
        out.push((format!("D{n}"), format!("C{n}"), false));
    }
    out.extend(
        [
            ("D4", "prod(C2,C2)", true),
            ("D12", "prod(S3,C2)", true),
            ("D6", "S3", true),
            ("prod(C2,C2)", "C4", false),
            ("D8", "prod(C4,C2)", false),
            ("D24", "prod(S3,C4)", false),
            ("D24", "prod(D12,C2)", false),
            ("prod(D6,C2)", "D12", true),
            ("prod(S3,C3)", "prod(C3,S3)", true),
            ("A4", "D12", false),
            ("S4", "prod(A4,C2)", false),
            ("frob(5,4)", "prod(D10,C2)", false),
            ("D20", "prod(D10,C2)", true),
            ("prod(C2,prod(C2,C2))", "prod(C4,C2)", false),
            ("frob(7,3)", "C21", false),
            ("D64", "prod(D32,C2)", false),
            ("D40", "prod(D20,C2)", false),
        ]
        .iter()
        .map(|(a, b, t)| (a.to_string(), b.to_string(), *t)),
    );
    out
}

/// Lattice vs naive closure (order <= 200), isomorphism ground truth,
/// chain order vs closure and derived-subgroup normality (order <= 2000).
pub fn property_checks() -> Result<PropertyReport> {
    let mut report = PropertyReport::default();

    let small = small_catalog(200)?;
    let lattice_fail: Vec<Result<Option<String>>> = small
        .par_iter()
        .map(|(name, g)| {
            let l = Lattice::new(g)?;
            let ours: HashSet<Bitset> = l
                .all_subgroups()
                .iter()
                .map(|r| r.elements().clone())
                .collect();
            let naive = subgroups::naive_subgroup_sets(g)?;
            Ok((ours != naive || ours.len() != l.subgroup_count())
                .then(|| format!("lattice {name}")))
        })
        .collect();
    report.lattice_groups = small.len();
    for r in lattice_fail {
        report.failures.extend(r?);
    }

    let pairs = iso_ground_truth();
    report.iso_pairs = pairs.len();
    for (a, b, truth) in pairs {
        if iso::is_isomorphic(&parse_and_make(&a)?, &parse_and_make(&b)?)? != truth {
            report.failures.push(format!("iso {a} ~ {b}"));
        }
    }

    let mid = small_catalog(2000)?;
    report.chain_groups = mid.len();
    report.derived_groups = mid.len();
    for (name, g) in &mid {
        if g.order() != g.closure_order()? {
            report.failures.push(format!("chain order {name}"));
        }
        let d = g.derived_subgroup();
        let normal = g
            .generators()
            .iter()
            .all(|x| d.generators().iter().all(|y| d.has(&y.conj(x))));
        let abelian_quotient = g
            .generators()
            .iter()
            .all(|x| g.generators().iter().all(|y| d.has(&x.commutator(y))));
        if !normal || !abelian_quotient {
            report.failures.push(format!("derived {name}"));
        }
    }
    Ok(report)
}
