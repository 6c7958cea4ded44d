//! Acceptance criteria, one line per criterion. Runs without libtest so the
//! lines always print; exits nonzero if any criterion fails.

use std::collections::HashSet;
use std::path::PathBuf;
use std::process::ExitCode;

use ds_core::catalog::{self, parse_and_make, GroupSpec};
use ds_core::invariants::{self, BoundVerdict, Evidence, ProbeStatus};
use ds_core::iso;
use ds_core::subgroups::{self, PiWitness};
use ds_core::suite;
use ds_core::{PermGroup, Result};

fn data(name: &str, file: &str) -> Result<PermGroup> {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", file]
        .iter()
        .collect();
    catalog::make(&GroupSpec::FromFile {
        name: name.into(),
        path: path.display().to_string(),
    })
}

fn g(expr: &str) -> PermGroup {
    parse_and_make(expr).expect("catalog expression")
}

type Check = Result<(bool, String)>;
type Criterion = (u32, &'static str, fn() -> Check);

fn c1() -> Check {
    let d = invariants::d_invariant(&g("A5"))?;
    let mut found = Vec::new();
    for expected in ["C1", "C3", "C5", "prod(C2,C2)", "A5"] {
        let target = g(expected);
        let hits = d
            .classes
            .iter()
            .filter(|c| iso::is_isomorphic(&c.representative, &target).unwrap())
            .count();
        found.push(hits == 1);
    }
    Ok((
        d.value == 5 && found.iter().all(|&f| f),
        format!(
            "d(A5) = {}, classes {{1, C3, C5, V4, A5}} matched: {:?}",
            d.value, found
        ),
    ))
}

fn c2() -> Check {
    let gr = invariants::gr_invariant(&g("A5"))?;
    Ok((gr == 23, format!("GR(A5) = {gr}")))
}

fn c3() -> Check {
    let mut ok = true;
    let mut seen = Vec::new();
    for n in 4..=10u32 {
        let grp = catalog::dihedral(1 << n)?;
        let d = invariants::d_invariant(&grp)?.value;
        let gr = invariants::gr_invariant(&grp)?;
        ok &= d == (n - 1) as usize && gr == (n - 1) as u64;
        seen.push(format!("n={n}:{d}/{gr}"));
    }
    Ok((ok, seen.join(" ")))
}

fn c4() -> Check {
    let (d64, a5) = (g("D64"), g("A5"));
    let x = invariants::d_invariant(&d64)?.value;
    let y = invariants::d_invariant(&a5)?.value;
    let iso = iso::is_isomorphic(&d64, &a5)?;
    Ok((
        x == 5 && y == 5 && !iso,
        format!("d(D64) = {x}, d(A5) = {y}, isomorphic {iso}"),
    ))
}

fn c5() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for q in [7, 8, 9, 17] {
        let c = invariants::bound_check(&catalog::psl2(q)?, 2500)?;
        ok &= c.evidence == Evidence::Exhaustive
            && c.d.unwrap() > 5
            && c.verdict == BoundVerdict::Exceeds;
        parts.push(format!("PSL(2,{q}) d={}", c.d.unwrap()));
    }
    for (name, file) in [("PSL3_3", "psl3_3.grp"), ("U3_3", "u3_3.grp")] {
        let c = invariants::bound_check(&data(name, file)?, 2500)?;
        ok &= c.evidence == Evidence::WitnessBased && c.d.unwrap() > 5;
        parts.push(format!("{name} d>={}", c.d.unwrap()));
    }
    let a5 = invariants::bound_check(&g("A5"), 2500)?;
    ok &= a5.verdict == BoundVerdict::EqualsPiPlus2;
    parts.push(format!("A5 d={} = |pi|+2", a5.d.unwrap()));
    Ok((ok, parts.join(", ")))
}

fn c6() -> Check {
    let mut ok = true;
    let mut groups: Vec<(String, PermGroup)> = [
        "A5", "A6", "PSL2_7", "PSL2_8", "PSL2_11", "PSL2_13", "PSL2_17", "PSL2_41",
    ]
    .iter()
    .map(|e| (e.to_string(), g(e)))
    .collect();
    for (name, file) in [
        ("PSL3_3", "psl3_3.grp"),
        ("U3_3", "u3_3.grp"),
        ("SZ8", "sz8.grp"),
    ] {
        groups.push((name.into(), data(name, file)?));
    }
    for (_, grp) in &groups {
        for (p, w) in subgroups::pi_witnesses(grp)? {
            ok &= matches!(&w, PiWitness::Found(w) if subgroups::is_p_group_witness(w, p));
        }
    }
    let mut a5 = Vec::new();
    for (w, expected) in
        subgroups::pi_witnesses(&g("A5"))?
            .values()
            .zip(["prod(C2,C2)", "C3", "C5"])
    {
        let derived = &w.found().expect("A5 is not p-nilpotent").derived;
        ok &= iso::is_isomorphic(derived, &g(expected))?;
        a5.push(derived.order());
    }
    Ok((
        ok,
        format!(
            "{} simple groups, A5 witness derived orders {a5:?} (V4, C3, C5)",
            groups.len()
        ),
    ))
}

fn c7() -> Check {
    let mut cases = 0;
    let mut violations = 0;
    for spec in catalog::standard_catalog("data") {
        if matches!(spec, GroupSpec::FromFile { .. }) || spec.expected_order().unwrap() > 2000 {
            continue;
        }
        let grp = catalog::make(&spec)?;
        for p in grp.prime_spectrum() {
            let sylow = grp.sylow(p)?;
            if grp.normalizer(&sylow)?.order() == grp.centralizer_of(&sylow)?.order() {
                cases += 1;
                if !grp.is_p_nilpotent(p)? {
                    violations += 1;
                }
            }
        }
    }
    Ok((
        violations == 0 && cases > 0,
        format!("{cases} cases with N(P) = C(P), {violations} violations"),
    ))
}

fn c8() -> Check {
    let mut ok = true;
    for (p, k) in [(7, 3), (5, 4), (11, 5), (13, 4)] {
        let grp = catalog::metacyclic_frobenius(p, k)?;
        ok &= invariants::frobenius_derived_check(
            &grp,
            &catalog::frobenius_kernel(&grp),
            &catalog::frobenius_complement(&grp),
        )?;
    }
    let sz = subgroups::suzuki_witnesses(&data("SZ8", "sz8.grp")?)?;
    let t_ok = invariants::frobenius_derived_check(&sz.t, &sz.f, &sz.h)?
        && sz.t_derived.same_elements(&sz.f);
    Ok((
        ok && t_ok,
        format!("frob(7,3), frob(5,4), frob(11,5), frob(13,4): {ok}; Sz(8) T' = F: {t_ok}"),
    ))
}

fn c9() -> Check {
    let sz = subgroups::suzuki_witnesses(&data("SZ8", "sz8.grp")?)?;
    let iso = iso::is_isomorphic(&sz.s_derived, &sz.t_derived)?;
    let ok = sz.zf.order() == 8
        && sz.s_derived.same_elements(&sz.zf)
        && sz.t_derived.same_elements(&sz.f)
        && !iso;
    Ok((
        ok,
        format!(
            "|Z(F)| = {}, |S'| = {}, |T'| = {}, S' ~ T': {iso}",
            sz.zf.order(),
            sz.s_derived.order(),
            sz.t_derived.order()
        ),
    ))
}

fn c10() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for (a, b) in [("A5", "C7"), ("D8", "C3"), ("S3", "C5")] {
        let p = invariants::product_probe(&g(a), &g(b))?;
        ok &= p.coprime && p.observed == p.d_a * p.d_b;
        parts.push(format!("{a}x{b}: {}={}*{}", p.observed, p.d_a, p.d_b));
    }
    let p = invariants::product_probe(&g("D8"), &g("D8"))?;
    ok &= p.status != ProbeStatus::Fail;
    parts.push(format!(
        "D8xD8 observed {} vs {} ({:?})",
        p.observed, p.predicted, p.status
    ));
    Ok((ok, parts.join(", ")))
}

fn c11() -> Check {
    let a5 = g("A5");
    let pairs = iso::find_isomorphism(&a5, &a5)?.expect("identity automorphism");
    let diag = catalog::diagonal(5, 5, &pairs)?;
    let product = catalog::direct_product(&a5, &a5)?;
    let ok = diag.is_subgroup_of(&product) && diag.order() == 60 && diag.is_perfect();
    Ok((
        ok,
        format!("|T| = {}, T' = T: {}", diag.order(), diag.is_perfect()),
    ))
}

fn c12() -> Check {
    let w = subgroups::dihedral_witness(&g("PSL2_41"), 21)?;
    Ok(match w {
        Some(w) => {
            let d = w.derived.order();
            (
                w.subgroup.order() == 42 && d % 3 == 0 && d % 7 == 0,
                format!("D42 found, |D'| = {d}"),
            )
        }
        None => (false, "no D42".into()),
    })
}

fn c13() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 5..=7u32 {
        let sn = catalog::symmetric(n)?;
        let mut derived: Vec<PermGroup> = Vec::new();
        for k in 4..=n {
            // S_k on the first k points, as a subgroup of S_n.
            let long: Vec<u32> = (0..k).collect();
            let gens = vec![
                ds_core::Permutation::from_cycles(n as usize, &[&long])?,
                ds_core::Permutation::from_cycles(n as usize, &[&[0, 1]])?,
            ];
            let sk = sn.subgroup(gens);
            derived.push(sk.derived_subgroup());
        }
        let v4 = derived[0].derived_subgroup();
        derived.push(v4.derived_subgroup());
        derived.push(v4);
        let mut pairwise = true;
        for i in 0..derived.len() {
            for j in i + 1..derived.len() {
                pairwise &= !iso::is_isomorphic(&derived[i], &derived[j])?;
            }
        }
        let distinct: HashSet<u64> = derived.iter().map(|d| d.order()).collect();
        ok &= pairwise && distinct.len() == (n - 1) as usize;
        parts.push(format!("S{n}: {} classes", distinct.len()));
    }
    let d5 = invariants::d_invariant(&g("S5"))?.value;
    ok &= d5 == 7;
    parts.push(format!("d(S5) = {d5}"));
    Ok((ok, parts.join(", ")))
}

fn c14() -> Check {
    let r = suite::property_checks()?;
    Ok((r.failures.is_empty(), r.summary()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        (1, "d(A5) = 5 with classes 1, C3, C5, V4, A5", c1),
        (2, "GR(A5) = 23", c2),
        (3, "d = GR = n-1 on D_{2^n}, n = 4..10", c3),
        (4, "D64 and A5 share d = 5, not isomorphic", c4),
        (5, "three-prime simple groups exceed |pi|+2 except A5", c5),
        (6, "prime witnesses in simple groups", c6),
        (7, "N(P) = C(P) implies p-nilpotent", c7),
        (8, "Frobenius groups: G' = K H'", c8),
        (9, "Sz(8) normalizer chain", c9),
        (
            10,
            "coprime products multiply d; D8 x D8 probe reported",
            c10,
        ),
        (11, "diagonal of A5 x A5 is perfect", c11),
        (
            12,
            "D42 in PSL(2,41) with derived order divisible by 3 and 7",
            c12,
        ),
        (13, "S_n derived chain lower bound; d(S5) = 7", c13),
        (14, "engine property suites", c14),
    ];
    let mut failed = 0;
    for (id, name, check) in criteria {
        let (ok, details) = match check() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {id:>2} {}: {name} [{details}]",
            if ok { "PASS" } else { "FAIL" }
        );
    }
    println!("{} of 14 criteria pass", 14 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
