//! Named verification suites: each check pins one of the structural or
//! homological statements the workbench is built to test, at desk scale and
//! in exact arithmetic. The CLI `verify` subcommand and the acceptance test
//! target both run these.

use crate::algebra::{
    diagram_algebra, group_algebra, inclusion_map, max_diagram_to_group, rho_idempotent,
    search_sroka_idempotent, verify_fp_scaling, DiagramAlgebra, DiagramContext,
};
use crate::bar::{compare, group_homology, tor, tor_induced_map, TorOptions, TorResult};
use crate::braid::{
    braids_equal, compose_partial, normal_form, BraidWord, PartialBraid,
};
use crate::diagram::{compose, enumerate_diagrams, Flavor, LabeledDiagram, Node, Params};
use crate::error::{Error, Result};
use crate::group::{
    semidirect_multiply, FiniteGroupSpec, GRingAction, GroupDesc, GroupElement, TopGroup,
};
use crate::linkstate::enumerate_link_states;
use crate::oracle;
use crate::scalar::{RingSpec, Scalar};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::time::Instant;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub claim: String,
    pub pass: bool,
    pub details: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
    pub wall_ms: u128,
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// column cap for bar complexes; the default admits every suite
    pub col_cap: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            col_cap: 2_000_000,
        }
    }
}

pub const SUITES: [&str; 8] = [
    "rook",
    "brauer",
    "tl",
    "rookbrauer",
    "motzkin",
    "sroka",
    "braid",
    "stability",
];

/// Run one named suite.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let checks = match name {
        "rook" => {
            let mut v = dimension_counts(Flavor::Rook)?;
            v.extend(associativity(Flavor::Rook, cfg)?);
            v.extend(idempotent_ideal_lemmas()?);
            v.extend(rook_homology_theorem(cfg)?);
            v
        }
        "brauer" => {
            let mut v = dimension_counts(Flavor::Brauer)?;
            v.extend(associativity(Flavor::Brauer, cfg)?);
            v.extend(fp_scaling()?);
            v.extend(brauer_homology_theorem(cfg)?);
            v
        }
        "tl" => {
            let mut v = dimension_counts(Flavor::TemperleyLieb)?;
            v.extend(associativity(Flavor::TemperleyLieb, cfg)?);
            v.extend(tor_engine_oracle(cfg)?);
            v.extend(tl_homology_theorem(cfg)?);
            v
        }
        "rookbrauer" => {
            let mut v = dimension_counts(Flavor::RookBrauer)?;
            v.extend(associativity(Flavor::RookBrauer, cfg)?);
            v.extend(rookbrauer_homology_theorem(cfg)?);
            v
        }
        "motzkin" => {
            let mut v = dimension_counts(Flavor::Motzkin)?;
            v.extend(associativity(Flavor::Motzkin, cfg)?);
            v.extend(motzkin_homology_theorem(cfg)?);
            v
        }
        "sroka" => sroka_suite(cfg)?,
        "braid" => braid_suite(cfg)?,
        "stability" => stability_suite(cfg)?,
        other => return Err(Error::Invalid(format!("unknown suite {other:?}"))),
    };
    let pass = checks.iter().all(|c| c.pass);
    Ok(SuiteReport {
        suite: name.to_string(),
        checks,
        pass,
        wall_ms: start.elapsed().as_millis(),
    })
}

fn check(id: impl Into<String>, claim: impl Into<String>, pass: bool, details: impl Into<String>) -> CheckResult {
    CheckResult {
        id: id.into(),
        claim: claim.into(),
        pass,
        details: details.into(),
    }
}

fn trivial() -> FiniteGroupSpec {
    FiniteGroupSpec::trivial()
}

fn c2() -> FiniteGroupSpec {
    FiniteGroupSpec::cyclic(2).unwrap()
}

fn params(ring: RingSpec, delta: i64, eps: i64, group: &FiniteGroupSpec) -> Params {
    Params::new(
        Scalar::from_int(ring, delta),
        Scalar::from_int(ring, eps),
        GRingAction::trivial(ring, group.clone()),
    )
    .expect("same ring")
}

fn ctx(
    flavor: Flavor,
    n: usize,
    group: &FiniteGroupSpec,
    ring: RingSpec,
    delta: i64,
    eps: i64,
) -> DiagramContext {
    DiagramContext::new(flavor, n, group.clone(), params(ring, delta, eps, group))
        .expect("valid context")
}

fn build(flavor: Flavor, n: usize, group: &FiniteGroupSpec, ring: RingSpec, delta: i64, eps: i64) -> Result<DiagramAlgebra> {
    diagram_algebra(ctx(flavor, n, group, ring, delta, eps), usize::MAX)
}

const CAP: usize = usize::MAX;

// ---------------------------------------------------------------------------
// criterion 1: dimension counts

pub fn dimension_counts(flavor: Flavor) -> Result<Vec<CheckResult>> {
    let (sizes, expected, label): (Vec<usize>, Vec<u128>, &str) = match flavor {
        Flavor::TemperleyLieb => (
            (1..=5).collect(),
            (1..=5).map(oracle::catalan).collect(),
            "Catalan numbers",
        ),
        Flavor::Motzkin => (
            (1..=4).collect(),
            (1..=4).map(|n| oracle::motzkin(2 * n)).collect(),
            "even-index Motzkin numbers",
        ),
        Flavor::Brauer => (
            (1..=4).collect(),
            (1..=4).map(oracle::double_factorial_odd).collect(),
            "odd double factorials",
        ),
        Flavor::Rook => (
            (1..=3).collect(),
            (1..=3).map(oracle::rook_count).collect(),
            "partial-injection counts",
        ),
        Flavor::RookBrauer => (
            (1..=4).collect(),
            (1..=4).map(|n| oracle::involutions(2 * n)).collect(),
            "involution counts",
        ),
    };
    let t = trivial();
    let mut got = Vec::new();
    for &n in &sizes {
        got.push(enumerate_diagrams(n, flavor, &t, CAP)?.len() as u128);
    }
    let pass = got == expected;
    Ok(vec![check(
        format!("dims-{}", flavor.name()),
        format!("basis sizes of the {} family match the {label}", flavor.name()),
        pass,
        format!("counted {got:?}, expected {expected:?}"),
    )])
}

// ---------------------------------------------------------------------------
// criterion 2: associativity

pub fn associativity(flavor: Flavor, cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let f5 = RingSpec::prime_field(5).unwrap();
    let mut out = Vec::new();
    // exhaustive at n = 2
    let mut all_ok = true;
    let mut detail = String::new();
    'outer: for group in [trivial(), c2()] {
        for (delta, eps) in [(0i64, 1i64), (1, 1), (2, 3)] {
            let c = ctx(flavor, 2, &group, f5, delta, eps);
            let basis = c.basis(CAP)?;
            for x in &basis {
                for y in &basis {
                    let xy = c.compose(x, y)?;
                    for z in &basis {
                        let yz = c.compose(y, z)?;
                        let lhs = c.compose(&xy.1, z)?;
                        let rhs = c.compose(x, &yz.1)?;
                        let ls = xy.0.mul(&lhs.0)?;
                        let rs = yz.0.mul(&rhs.0)?;
                        if lhs.1 != rhs.1 || ls != rs {
                            all_ok = false;
                            detail = format!(
                                "failure at {group:?} ({delta},{eps}) on {x:?}, {y:?}, {z:?}"
                            );
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    out.push(check(
        format!("assoc-{}-n2", flavor.name()),
        "composition associates exactly on all basis triples at n = 2",
        all_ok,
        if all_ok { "all triples agree".into() } else { detail },
    ));
    // randomized at n = 3
    let mut rng = StdRng::seed_from_u64(cfg.seed ^ 0xa550c);
    let group = c2();
    let c = ctx(flavor, 3, &group, f5, 2, 3);
    let basis = c.basis(CAP)?;
    let mut ok = true;
    let mut detail = String::from("1000 random triples agree");
    for _ in 0..1000 {
        let x = &basis[rng.gen_range(0..basis.len())];
        let y = &basis[rng.gen_range(0..basis.len())];
        let z = &basis[rng.gen_range(0..basis.len())];
        let xy = c.compose(x, y)?;
        let yz = c.compose(y, z)?;
        let lhs = c.compose(&xy.1, z)?;
        let rhs = c.compose(x, &yz.1)?;
        if lhs.1 != rhs.1 || xy.0.mul(&lhs.0)? != yz.0.mul(&rhs.0)? {
            ok = false;
            detail = format!("failure on {x:?}, {y:?}, {z:?}");
            break;
        }
    }
    out.push(check(
        format!("assoc-{}-n3", flavor.name()),
        "composition associates on randomized triples at n = 3",
        ok,
        detail,
    ));
    Ok(out)
}

// ---------------------------------------------------------------------------
// criterion 3: idempotent and ideal lemmas

pub fn idempotent_ideal_lemmas() -> Result<Vec<CheckResult>> {
    let f5 = RingSpec::prime_field(5).unwrap();
    let mut idem_ok = true;
    let mut basis_ok = true;
    let mut detail = String::new();
    for flavor in [Flavor::Rook, Flavor::RookBrauer, Flavor::Motzkin] {
        for n in 1..=3usize {
            let dalg = build(flavor, n, &trivial(), f5, 2, 3)?;
            for i in 1..=n {
                let e = rho_idempotent(&dalg, i)?;
                let sq = dalg.algebra.elem_mul(&e, &e);
                if sq != e {
                    idem_ok = false;
                    detail = format!("idempotent fails: {flavor:?} n={n} i={i}");
                }
                // span of X rho_i = diagrams with right node i unmatched
                let rho = LabeledDiagram::rho(n, i, &trivial());
                let mut reached = BTreeSet::new();
                for x in &dalg.diagrams {
                    let (s, d) = dalg.ctx.compose(x, &rho)?;
                    if !s.is_zero() {
                        reached.insert(d);
                    }
                }
                let expected: BTreeSet<LabeledDiagram> = dalg
                    .diagrams
                    .iter()
                    .filter(|d| d.shape().partner((n + i - 1) as Node).is_none())
                    .cloned()
                    .collect();
                if reached != expected {
                    basis_ok = false;
                    detail = format!("ideal basis fails: {flavor:?} n={n} i={i}");
                }
            }
        }
    }
    Ok(vec![
        check(
            "rho-idempotent",
            "scaled edge-deletion elements square to themselves when the contraction parameter is invertible",
            idem_ok,
            if idem_ok { "all flavors with missing edges, n <= 3".into() } else { detail.clone() },
        ),
        check(
            "rho-ideal-basis",
            "the left ideal generated by an edge deletion is spanned by diagrams whose corresponding right node is unmatched",
            basis_ok,
            if basis_ok { "all flavors with missing edges, n <= 3".into() } else { detail },
        ),
    ])
}

// ---------------------------------------------------------------------------
// criterion 4: scaling identity of the mirror diagram

pub fn fp_scaling() -> Result<Vec<CheckResult>> {
    let f5 = RingSpec::prime_field(5).unwrap();
    let mut ok = true;
    let mut detail = String::from("all link states at n in {2,3,4}, both groups");
    for group in [trivial(), c2()] {
        for n in [2usize, 3, 4] {
            let c = ctx(Flavor::Brauer, n, &group, f5, 2, 1);
            for i in (0..=n).rev() {
                if (n - i) % 2 != 0 {
                    continue;
                }
                for p in enumerate_link_states(n, i, Flavor::Brauer, &group, CAP)? {
                    if !verify_fp_scaling(&c, &p, CAP)? {
                        ok = false;
                        detail = format!("fails at n={n}, i={i}, p={p:?}, group={group:?}");
                    }
                }
            }
        }
    }
    Ok(vec![check(
        "fp-scaling",
        "right-multiplying any ideal basis diagram by the mirror diagram scales it by the loop parameter to half the closed-pair count",
        ok,
        detail,
    )])
}

// ---------------------------------------------------------------------------
// criterion 5: Tor engine against the periodic-resolution oracle

pub fn tor_engine_oracle(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let f2 = RingSpec::prime_field(2).unwrap();
    let desc = GroupDesc::Plain(c2());
    let got_f2 = group_homology(&desc, f2, &TorOptions::field(5).with_col_cap(cfg.col_cap))?;
    let want_f2 = oracle::cyclic_group_homology_dims(2, f2, 5);
    let got_q = group_homology(
        &desc,
        RingSpec::Rationals,
        &TorOptions::field(3).with_col_cap(cfg.col_cap),
    )?;
    let want_q = oracle::cyclic_group_homology_dims(2, RingSpec::Rationals, 3);
    let pass = got_f2.dims() == Some(want_f2.as_slice()) && got_q.dims() == Some(want_q.as_slice());
    Ok(vec![check(
        "tor-oracle",
        "bar-complex Tor of the order-2 group algebra matches the two-periodic resolution",
        pass,
        format!(
            "mod 2: {:?} vs {:?}; rationals: {:?} vs {:?}",
            got_f2.dims(),
            want_f2,
            got_q.dims(),
            want_q
        ),
    )])
}

// ---------------------------------------------------------------------------
// shared helper: compare diagram-algebra Tor with a group-algebra Tor

fn tor_of(dalg: &DiagramAlgebra, qmax: usize, cfg: &SuiteConfig) -> Result<TorResult> {
    tor(
        &dalg.algebra,
        &dalg.character,
        &TorOptions::field(qmax).with_col_cap(cfg.col_cap),
    )
}

fn compare_check(
    id: &str,
    claim: &str,
    left: &TorResult,
    right: &TorResult,
    qmax: usize,
) -> Result<CheckResult> {
    let report = compare(left, right)?;
    let pass = report.per_degree.iter().take(qmax + 1).all(|&b| b);
    Ok(check(
        id,
        claim,
        pass,
        format!("{:?} vs {:?}", left.dims(), right.dims()),
    ))
}

// criterion 6: rook homology

pub fn rook_homology_theorem(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let f2 = RingSpec::prime_field(2).unwrap();
    let mut out = Vec::new();
    // C_2-rook_2 vs C_2^2 x| Sigma_2
    let dalg = build(Flavor::Rook, 2, &c2(), f2, 1, 1)?;
    let left = tor_of(&dalg, 3, cfg)?;
    let right = group_homology(
        &GroupDesc::Semidirect {
            base: c2(),
            n: 2,
            top: TopGroup::Symmetric,
        },
        f2,
        &TorOptions::field(3).with_col_cap(cfg.col_cap),
    )?;
    out.push(compare_check(
        "rook-c2-n2",
        "Tor of the C2-labelled rook algebra at n=2 equals the homology of the wreath-type product of C2 with the symmetric group",
        &left,
        &right,
        3,
    )?);
    // rook_3 vs Sigma_3
    let dalg = build(Flavor::Rook, 3, &trivial(), f2, 1, 1)?;
    let left = tor_of(&dalg, 3, cfg)?;
    let right = group_homology(
        &GroupDesc::Semidirect {
            base: trivial(),
            n: 3,
            top: TopGroup::Symmetric,
        },
        f2,
        &TorOptions::field(3).with_col_cap(cfg.col_cap),
    )?;
    out.push(compare_check(
        "rook-n3",
        "Tor of the rook algebra at n=3 equals the homology of the symmetric group on three letters",
        &left,
        &right,
        3,
    )?);
    Ok(out)
}

// criterion 7: Brauer homology

pub fn brauer_homology_theorem(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let f2 = RingSpec::prime_field(2).unwrap();
    let mut out = Vec::new();
    let dalg = build(Flavor::Brauer, 2, &trivial(), f2, 1, 1)?;
    let left = tor_of(&dalg, 4, cfg)?;
    let right = group_homology(
        &GroupDesc::Semidirect {
            base: trivial(),
            n: 2,
            top: TopGroup::Symmetric,
        },
        f2,
        &TorOptions::field(4).with_col_cap(cfg.col_cap),
    )?;
    out.push(compare_check(
        "brauer-n2",
        "Tor of the Brauer algebra at invertible loop parameter equals symmetric-group homology",
        &left,
        &right,
        4,
    )?);
    let dalg = build(Flavor::Brauer, 2, &c2(), f2, 1, 1)?;
    let left = tor_of(&dalg, 2, cfg)?;
    let right = group_homology(
        &GroupDesc::Semidirect {
            base: c2(),
            n: 2,
            top: TopGroup::Symmetric,
        },
        f2,
        &TorOptions::field(2).with_col_cap(cfg.col_cap),
    )?;
    out.push(compare_check(
        "brauer-c2-n2",
        "Tor of the C2-labelled Brauer algebra equals the homology of the wreath-type product",
        &left,
        &right,
        2,
    )?);
    Ok(out)
}

// criterion 8: Temperley-Lieb homology

pub fn tl_homology_theorem(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let mut vanish_ok = true;
    let mut detail = String::new();
    for (n, qmax) in [(2usize, 4usize), (3, 4), (4, 3)] {
        let dalg = build(Flavor::TemperleyLieb, n, &trivial(), RingSpec::Rationals, 1, 1)?;
        let t = tor_of(&dalg, qmax, cfg)?;
        let dims = t.dims().unwrap();
        if dims[0] != 1 || dims[1..].iter().any(|&d| d != 0) {
            vanish_ok = false;
            detail = format!("n={n}: dims {dims:?}");
        }
    }
    out.push(check(
        "tl-vanishing",
        "rational Tor of Temperley-Lieb algebras at invertible loop parameter vanishes in positive degrees",
        vanish_ok,
        if vanish_ok { "n = 2, 3, 4".into() } else { detail },
    ));
    let f2 = RingSpec::prime_field(2).unwrap();
    let dalg = build(Flavor::TemperleyLieb, 1, &c2(), f2, 1, 1)?;
    let left = tor_of(&dalg, 5, cfg)?;
    let right = group_homology(&GroupDesc::Plain(c2()), f2, &TorOptions::field(5).with_col_cap(cfg.col_cap))?;
    out.push(compare_check(
        "tl-c2-n1",
        "Tor of the C2-labelled Temperley-Lieb algebra at n=1 equals the homology of C2",
        &left,
        &right,
        5,
    )?);
    Ok(out)
}

// criterion 9: rook-Brauer homology

pub fn rookbrauer_homology_theorem(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let f2 = RingSpec::prime_field(2).unwrap();
    let mut out = Vec::new();
    for delta in [0i64, 1] {
        let rb = build(Flavor::RookBrauer, 2, &trivial(), f2, delta, 1)?;
        let left = tor_of(&rb, 3, cfg)?;
        let b = build(Flavor::Brauer, 2, &trivial(), f2, delta, 1)?;
        let right = tor_of(&b, 3, cfg)?;
        out.push(compare_check(
            &format!("rookbrauer-delta{delta}"),
            "Tor of the rook-Brauer algebra at invertible contraction parameter equals Tor of its Brauer subalgebra",
            &left,
            &right,
            3,
        )?);
    }
    Ok(out)
}

// criterion 10: Motzkin homology

pub fn motzkin_homology_theorem(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let f2 = RingSpec::prime_field(2).unwrap();
    let mut out = Vec::new();
    for ring in [RingSpec::Rationals, f2] {
        for delta in [0i64, 1] {
            let m = build(Flavor::Motzkin, 2, &trivial(), ring, delta, 1)?;
            let left = tor_of(&m, 3, cfg)?;
            let tl = build(Flavor::TemperleyLieb, 2, &trivial(), ring, delta, 1)?;
            let right = tor_of(&tl, 3, cfg)?;
            out.push(compare_check(
                &format!("motzkin-{}-delta{delta}", ring.name()),
                "Tor of the Motzkin algebra at invertible contraction parameter equals Tor of its Temperley-Lieb subalgebra",
                &left,
                &right,
                3,
            )?);
        }
    }
    Ok(out)
}

// criterion 11: non-invertible-parameter results

pub fn sroka_suite(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    // TL_3 at delta = 0 over the rationals is acyclic
    let dalg = build(Flavor::TemperleyLieb, 3, &trivial(), RingSpec::Rationals, 0, 1)?;
    let t = tor_of(&dalg, 3, cfg)?;
    out.push(check(
        "sroka-tl3",
        "rational Tor of the odd Temperley-Lieb algebra vanishes in positive degrees without invertibility",
        t.dims() == Some(&[1, 0, 0, 0]),
        format!("dims {:?}", t.dims()),
    ));
    // C2-TL_1 at delta = 0 over F_2 is the C2 group algebra
    let f2 = RingSpec::prime_field(2).unwrap();
    let dalg = build(Flavor::TemperleyLieb, 1, &c2(), f2, 0, 1)?;
    let t = tor_of(&dalg, 5, cfg)?;
    out.push(check(
        "sroka-tl1-c2",
        "Tor of the C2-labelled Temperley-Lieb algebra at n=1 is the full periodic homology of C2, with no parameter conditions",
        t.dims() == Some(&[1, 1, 1, 1, 1, 1]),
        format!("dims {:?}", t.dims()),
    ));
    // Brauer_3 at delta = 0 over the rationals vs Sigma_3
    let dalg = build(Flavor::Brauer, 3, &trivial(), RingSpec::Rationals, 0, 1)?;
    let left = tor_of(&dalg, 3, cfg)?;
    let right = group_homology(
        &GroupDesc::Semidirect {
            base: trivial(),
            n: 3,
            top: TopGroup::Symmetric,
        },
        RingSpec::Rationals,
        &TorOptions::field(3).with_col_cap(cfg.col_cap),
    )?;
    out.push(compare_check(
        "sroka-brauer3",
        "Tor of the odd Brauer algebra equals symmetric-group homology without invertibility",
        &left,
        &right,
        3,
    )?);
    // the six-condition idempotent search succeeds for every valid link state
    let mut ok = true;
    let mut detail = String::from("all valid link states at n = 3, both flavors, both groups");
    for flavor in [Flavor::Brauer, Flavor::TemperleyLieb] {
        for group in [trivial(), c2()] {
            let c = ctx(flavor, 3, &group, RingSpec::Rationals, 0, 1);
            for i in [1usize, 3] {
                for p in enumerate_link_states(3, i, flavor, &group, CAP)? {
                    match search_sroka_idempotent(&c, &p, CAP) {
                        Ok(_) => {}
                        Err(e) => {
                            ok = false;
                            detail = format!("{flavor:?} {group:?} i={i} p={p:?}: {e}");
                        }
                    }
                }
            }
        }
    }
    out.push(check(
        "sroka-search",
        "a diagram satisfying the six stabilizing conditions exists for every link state with no missing edges and at least one defect",
        ok,
        detail,
    ));
    Ok(out)
}

// criterion 12: braided suite

pub fn braid_suite(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let lhs = BraidWord::parse(3, "s1 s2 s1")?;
    let rhs = BraidWord::parse(3, "s2 s1 s2")?;
    out.push(check(
        "braid-relation",
        "the defining braid relation holds under normal forms",
        braids_equal(&lhs, &rhs),
        "s1 s2 s1 = s2 s1 s2 in B_3",
    ));

    let mut rng = StdRng::seed_from_u64(cfg.seed ^ 0xb7a1d);
    let mut ok = true;
    let mut detail = String::from("500 insertion trials at n <= 5");
    for _ in 0..500 {
        let n = rng.gen_range(2..=5);
        let len = rng.gen_range(0..12);
        let letters: Vec<(usize, i8)> = (0..len)
            .map(|_| (rng.gen_range(1..n), if rng.gen_bool(0.5) { 1 } else { -1 }))
            .collect();
        let word = BraidWord::new(n, letters.clone())?;
        let nf = normal_form(&word);
        let pos = rng.gen_range(0..=letters.len());
        let ins: Vec<(usize, i8)> = match rng.gen_range(0..3) {
            0 => {
                let i = rng.gen_range(1..n);
                vec![(i, 1), (i, -1)]
            }
            1 if n >= 3 => {
                let i = rng.gen_range(1..n - 1);
                vec![(i, 1), (i + 1, 1), (i, 1), (i + 1, -1), (i, -1), (i + 1, -1)]
            }
            _ if n >= 4 => {
                let i = rng.gen_range(1..n - 2);
                vec![(i, 1), (i + 2, 1), (i, -1), (i + 2, -1)]
            }
            _ => vec![],
        };
        let mut new_letters = letters;
        for (k, l) in ins.into_iter().enumerate() {
            new_letters.insert(pos + k, l);
        }
        if normal_form(&BraidWord::new(n, new_letters)?) != nf {
            ok = false;
            detail = "a relation insertion changed the normal form".into();
            break;
        }
    }
    out.push(check(
        "braid-insertions",
        "normal forms are invariant under insertions of the defining relations",
        ok,
        detail,
    ));

    // partial-braid associativity, 300 random triples at n <= 4
    let f5 = RingSpec::prime_field(5).unwrap();
    let eps = Scalar::from_int(f5, 3);
    let g = c2();
    let mut ok = true;
    let mut detail = String::from("300 random triples at n <= 4");
    for trial in 0..300 {
        let n = rng.gen_range(1..=4);
        let labelled = trial % 2 == 0;
        let grp = labelled.then_some(&g);
        let a = random_partial(&mut rng, n, grp);
        let b = random_partial(&mut rng, n, grp);
        let c = random_partial(&mut rng, n, grp);
        let (s_ab, ab) = compose_partial(&a, &b, &eps, grp)?;
        let (s1, left) = compose_partial(&ab, &c, &eps, grp)?;
        let (s_bc, bc) = compose_partial(&b, &c, &eps, grp)?;
        let (s2, right) = compose_partial(&a, &bc, &eps, grp)?;
        if left != right || s_ab.mul(&s1)? != s_bc.mul(&s2)? {
            ok = false;
            detail = format!("associativity failed at n={n}");
            break;
        }
    }
    out.push(check(
        "braid-partial-assoc",
        "partial-braid composition is associative including scalars",
        ok,
        detail,
    ));

    // full-rank closure realizes braid multiplication
    let mut ok = true;
    let mut detail = String::from("200 random pairs at n <= 4");
    let eps_q = Scalar::from_int(RingSpec::Rationals, 7);
    for _ in 0..200 {
        let n = rng.gen_range(2..=4);
        let mut mk = || -> Result<BraidWord> {
            let len = rng.gen_range(0..10);
            BraidWord::new(
                n,
                (0..len)
                    .map(|_| (rng.gen_range(1..n), if rng.gen_bool(0.5) { 1i8 } else { -1 }))
                    .collect(),
            )
        };
        let wa = mk()?;
        let wb = mk()?;
        let a = PartialBraid::full(n, &wa, None)?;
        let b = PartialBraid::full(n, &wb, None)?;
        let (s, c) = compose_partial(&a, &b, &eps_q, None)?;
        let mut cat = wa.letters.clone();
        cat.extend(wb.letters);
        let expect = normal_form(&BraidWord::new(n, cat)?);
        if !s.is_one() || c.braid != expect || !c.is_full_rank() {
            ok = false;
            detail = "full-rank composition disagreed with braid multiplication".into();
            break;
        }
    }
    out.push(check(
        "braid-max-rank",
        "maximum-rank partial braids compose with scalar one and realize braid-group multiplication",
        ok,
        detail,
    ));
    Ok(out)
}

fn random_partial(rng: &mut StdRng, n: usize, group: Option<&FiniteGroupSpec>) -> PartialBraid {
    let k = rng.gen_range(0..=n);
    let mut pick = |rng: &mut StdRng| {
        let mut v: Vec<usize> = (0..n).collect();
        for i in (1..v.len()).rev() {
            let j = rng.gen_range(0..=i);
            v.swap(i, j);
        }
        let mut chosen = v[..k].to_vec();
        chosen.sort_unstable();
        chosen
    };
    let left = pick(rng);
    let right = pick(rng);
    let len = rng.gen_range(0..6);
    let letters: Vec<(usize, i8)> = (0..len)
        .filter_map(|_| {
            (k >= 2).then(|| (rng.gen_range(1..k), if rng.gen_bool(0.5) { 1i8 } else { -1 }))
        })
        .collect();
    let word = BraidWord::new(k, letters).expect("valid letters");
    let labels = group.map(|g| {
        let elems = g.elements();
        (0..k)
            .map(|_| elems[rng.gen_range(0..elems.len())].clone())
            .collect()
    });
    PartialBraid::new(n, left, right, &word, labels).expect("valid partial braid")
}

// criterion 13: stability spot-check

pub fn stability_suite(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let f2 = RingSpec::prime_field(2).unwrap();
    let mut out = Vec::new();
    let rook2 = build(Flavor::Rook, 2, &trivial(), f2, 1, 1)?;
    let rook3 = build(Flavor::Rook, 3, &trivial(), f2, 1, 1)?;
    let t2 = tor_of(&rook2, 1, cfg)?;
    let t3 = tor_of(&rook3, 1, cfg)?;
    let sym = |n: usize| GroupDesc::Semidirect {
        base: trivial(),
        n,
        top: TopGroup::Symmetric,
    };
    let g2 = group_homology(&sym(2), f2, &TorOptions::field(1).with_col_cap(cfg.col_cap))?;
    let g3 = group_homology(&sym(3), f2, &TorOptions::field(1).with_col_cap(cfg.col_cap))?;
    let d = |t: &TorResult| t.dims().map(|d| d[1]);
    let agree = d(&t2) == d(&t3) && d(&g2) == d(&g3) && d(&t2) == d(&g2);
    out.push(check(
        "stability-dims",
        "first Tor of rook algebras at n = 2, 3 agrees with first symmetric-group homology",
        agree,
        format!(
            "rook: {:?}, {:?}; groups: {:?}, {:?}",
            d(&t2),
            d(&t3),
            d(&g2),
            d(&g3)
        ),
    ));
    let incl = inclusion_map(&rook2, &rook3)?;
    let ranks = tor_induced_map(
        (&rook2.algebra, &rook2.character),
        (&rook3.algebra, &rook3.character),
        &incl,
        &TorOptions::field(1).with_col_cap(cfg.col_cap),
    )?;
    let full = d(&t2).zip(d(&t3)).map(|(a, b)| a.min(b));
    out.push(check(
        "stability-induced",
        "the inclusion induces a full-rank map on first Tor",
        Some(ranks[1]) == full && ranks[0] == 1,
        format!("induced ranks {ranks:?}, expected degree-1 rank {full:?}"),
    ));
    Ok(out)
}

// ---------------------------------------------------------------------------
// extra structural checks shared by tests

/// Flavor closure, extension multiplicativity, rank subadditivity and
/// max-rank closure, exercised together on small sizes.
pub fn structural_properties(flavor: Flavor) -> Result<Vec<CheckResult>> {
    let f5 = RingSpec::prime_field(5).unwrap();
    let group = c2();
    let mut closure_ok = true;
    let mut rank_ok = true;
    let mut ext_ok = true;
    let mut max_ok = true;
    for n in 1..=2usize {
        let c = ctx(flavor, n, &group, f5, 2, 3);
        let basis = c.basis(CAP)?;
        let cn = ctx(flavor, n + 1, &group, f5, 2, 3);
        for x in &basis {
            for y in &basis {
                let (s, d) = c.compose(x, y)?;
                if !crate::diagram::validate_flavor(&d.shape(), flavor) {
                    closure_ok = false;
                }
                if d.rank() > x.rank().min(y.rank()) {
                    rank_ok = false;
                }
                let ex = crate::diagram::extend(x, &group);
                let ey = crate::diagram::extend(y, &group);
                let (s2, d2) = cn.compose(&ex, &ey)?;
                if s2 != s || d2 != crate::diagram::extend(&d, &group) {
                    ext_ok = false;
                }
                if x.rank() == n && y.rank() == n && (!s.is_one() || d.rank() != n) {
                    max_ok = false;
                }
            }
        }
    }
    // max-rank closure exhaustively at n = 3 (unlabelled to keep it quick)
    {
        let c = ctx(flavor, 3, &trivial(), f5, 2, 3);
        let basis = c.basis(CAP)?;
        for x in basis.iter().filter(|d| d.rank() == 3) {
            for y in basis.iter().filter(|d| d.rank() == 3) {
                let (s, d) = c.compose(x, y)?;
                if !s.is_one() || d.rank() != 3 {
                    max_ok = false;
                }
            }
        }
    }
    Ok(vec![
        check("closure", "composition stays inside the flavor", closure_ok, flavor.name()),
        check("rank-subadditive", "rank of a product is at most the minimum rank", rank_ok, flavor.name()),
        check("extension-multiplicative", "extension commutes with composition including scalars", ext_ok, flavor.name()),
        check("max-closure", "maximum-rank diagrams compose with scalar one to maximum rank", max_ok, flavor.name()),
    ])
}

/// Convenience wrapper used by tests and the CLI: run every suite.
pub fn run_all(cfg: &SuiteConfig) -> Result<Vec<SuiteReport>> {
    SUITES.iter().map(|s| run_suite(s, cfg)).collect()
}
