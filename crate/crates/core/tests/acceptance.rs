//! Acceptance suite: one verdict line per criterion, every bound pinned in
//! code. Run with `cargo test --test acceptance -- --nocapture` to see the
//! lines as they pass; any failure carries its first counterexample.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use cleg::cf::{self, CFString};
use cleg::classify::{self, SphericalKind, SymplecticCount};
use cleg::lisca;
use cleg::plumbing;
use cleg::rational::{rat, rat_int};
use cleg::seifert::{self, SeifertData};
use cleg::verify::{self, CheckResult, GridSpec, SuiteReport};
use cleg::Sign;

/// Grid for criteria 1-3: all (a1, a2ext) with |a1| + |a2ext| <= 5,
/// entries in 2..=6 (14,650 pairs).
const PAIR_LEN: usize = 5;
const PAIR_ENTRY: i64 = 6;
/// Criterion 4-9 structural grids.
const TRIDIAG_LEN: usize = 4;
const LISCA_PMAX: i64 = 2500;
const SECTION_M_MAX: i64 = 30;
const XI_E0_MAX: i64 = 4;
const XI_P_MAX: i64 = 60;

fn pass(criterion: &str, detail: String) {
    println!("acceptance {criterion}: PASS ({detail})");
}

fn require(check: &CheckResult, criterion: &str) {
    assert!(
        check.passed(),
        "acceptance {criterion}: FAIL at {:?} ({} instances)",
        check.failures.first(),
        check.instances
    );
}

fn suite_check<'a>(report: &'a SuiteReport, label: &str) -> &'a CheckResult {
    report
        .checks
        .iter()
        .find(|c| c.label.starts_with(label))
        .unwrap_or_else(|| panic!("missing check {label:?} in suite {}", report.suite))
}

#[test]
fn criteria_1_2_3_block_inverse_theta_paths_and_gate() {
    let grid = GridSpec {
        max_string_len: PAIR_LEN,
        max_entry: PAIR_ENTRY,
        ..GridSpec::default()
    };
    assert_eq!(verify::string_pairs(PAIR_LEN, PAIR_ENTRY).len(), 14_650);
    let report = verify::suite_theta(&grid);

    let blocks = suite_check(&report, "block inverse");
    require(blocks, "1");
    pass(
        "1",
        format!(
            "closed-form inverse = elimination inverse on {} pairs",
            blocks.instances
        ),
    );

    let paths = suite_check(&report, "theta formula");
    require(paths, "2");
    pass(
        "2",
        format!("both theta routes equal on {} pairs", paths.instances),
    );

    let gate = suite_check(&report, "theta > -2");
    require(gate, "3");
    assert!(
        gate.instances > 0,
        "acceptance 3: the membership gate never fired"
    );
    pass(
        "3",
        format!("theta > -2 on all {} member instances", gate.instances),
    );

    // the identities behind the formula ride on the same grid
    let lemmas = suite_check(&report, "bilinear-form");
    require(lemmas, "1");
    let rows = suite_check(&report, "stripped-inverse");
    require(rows, "1");
}

#[test]
fn criterion_4_concrete_anchors() {
    // theta of the minus structure at (e0, p/q) = (0, 2)
    assert_eq!(
        plumbing::theta_nonbalanced(0, &rat(2, 1), Sign::Minus).unwrap(),
        rat(-4, 3),
        "acceptance 4: theta- anchor"
    );
    // canonical theta on a1 = [2], all-2 central string of k entries is k
    for k in 1..=6usize {
        let a2 = CFString::strict(vec![2i64; k]).unwrap();
        let t =
            plumbing::theta_canonical_checked(&CFString::strict(vec![2i64]).unwrap(), &a2).unwrap();
        assert_eq!(
            t.theta,
            rat(k as i64, 1),
            "acceptance 4: all-2 family at k={k}"
        );
    }
    // tridiagonal identities on the full string grid
    let grid = GridSpec {
        max_string_len: TRIDIAG_LEN,
        max_entry: PAIR_ENTRY,
        ..GridSpec::default()
    };
    let report = verify::suite_matrix(&grid);
    for check in &report.checks {
        require(check, "4");
    }
    pass(
        "4",
        format!(
            "theta- = -4/3, all-2 family theta = k, tridiagonal identities on {} instances",
            report.instances()
        ),
    );
}

#[test]
fn criterion_5_membership_suite() {
    let grid = GridSpec {
        p_max: LISCA_PMAX,
        ..GridSpec::default()
    };
    let report = verify::suite_lisca(&grid);
    for check in &report.checks {
        require(check, "5");
    }
    let members = lisca::grid(LISCA_PMAX).len();
    assert!(members > 0);
    pass(
        "5",
        format!("{members} members to p <= {LISCA_PMAX}: certificates, I-bound, class test"),
    );
}

#[test]
fn criterion_6_parameter_identities() {
    // floor-formula uniqueness by brute force over e0 in [0, 100]
    for m in 2..=SECTION_M_MAX {
        for h in 1..m {
            if h.gcd(&m) != 1 {
                continue;
            }
            let e0 = seifert::unique_e0(m, h).unwrap();
            let b = m * m - m * h + 1;
            let sols: Vec<i64> = (0..=100)
                .filter(|e| (e + 1) * b < m * m && m * m < (e + 2) * b)
                .collect();
            assert_eq!(sols, vec![e0], "acceptance 6: uniqueness at m={m}, h={h}");
            for level in 0..=e0 {
                let rep = seifert::dihedral_parameter_report(m, h, level).unwrap();
                assert!(
                    rep.inverse_ok && rep.sum_ok,
                    "acceptance 6: identities failed at m={m}, h={h}, e0={level}"
                );
                assert_eq!(rep.p_prime, (m - h) * (m - h));
            }
            // n = 1 member round-trips through its dihedral parameters
            let y1 = seifert::y_mhn(m, h, 1).unwrap();
            let d = seifert::dihedral_from_seifert(&y1).unwrap();
            assert_eq!(
                (d.p, d.q),
                (
                    BigInt::from(2 * m * m - m * h + 1),
                    BigInt::from(m * m - m * h + 1)
                ),
                "acceptance 6: round trip at m={m}, h={h}"
            );
        }
    }
    pass(
        "6",
        format!("identities, uniqueness and round trips for m <= {SECTION_M_MAX}"),
    );
}

#[test]
fn criterion_7_nonbalanced_obstruction() {
    let mut checked = 0usize;
    let mut member_checked = 0usize;
    let mut nonmember_hits = Vec::new();
    for e0 in 0..=XI_E0_MAX {
        for p in 2..=XI_P_MAX {
            for q in 1..p {
                if p.gcd(&q) != 1 {
                    continue;
                }
                checked += 1;
                let pq = rat(p, q);
                let tm = plumbing::theta_nonbalanced(e0, &pq, Sign::Minus).unwrap();
                assert!(
                    !tm.denom().is_one(),
                    "acceptance 7: integral theta- at e0={e0}, p/q={p}/{q}"
                );
                let tp = plumbing::theta_nonbalanced(e0, &pq, Sign::Plus).unwrap();
                // the -2 exclusion is proved exactly on the smooth-bounding
                // set, where the twisted string is a member
                let s = cf::expand(&pq).unwrap();
                let mut entries = vec![BigInt::from(2); e0 as usize];
                let mut tail = s.entries().to_vec();
                tail[0] += 1;
                entries.extend(tail);
                let rs = CFString::strict(entries).unwrap().evaluate().unwrap();
                let rp = i64::try_from(rs.numer()).unwrap();
                let rq = i64::try_from(rs.denom()).unwrap();
                if lisca::membership(rp, rq).unwrap().is_some() {
                    member_checked += 1;
                    assert_ne!(
                        tp,
                        rat_int(-2),
                        "acceptance 7: member with theta+ = -2 at e0={e0}, p/q={p}/{q}"
                    );
                } else if tp == rat_int(-2) {
                    nonmember_hits.push((e0, p, q));
                }
            }
        }
    }
    assert!(member_checked > 0);
    // the unconditional reading is falsified exactly here
    assert!(
        nonmember_hits.contains(&(0, 38, 7)),
        "expected the known non-member theta+ = -2 witness at e0=0, p/q=38/7"
    );
    pass(
        "7",
        format!(
            "theta- never integral on {checked} instances; theta+ != -2 on all \
             {member_checked} member instances ({} non-member hits of -2)",
            nonmember_hits.len()
        ),
    );
}

#[test]
fn criterion_8_classification_table() {
    // spherical table counts 2 / 6 / 4 / 3 / 2 / 3
    assert_eq!(
        classify::spherical_table(SphericalKind::Lens { m: 3, h: 1 }).unwrap(),
        2
    );
    assert_eq!(
        classify::spherical_table(SphericalKind::DihedralNeg { m: 2, h: 1, n: 2 }).unwrap(),
        6
    );
    assert_eq!(
        classify::spherical_table(SphericalKind::DihedralNeg { m: 2, h: 1, n: 3 }).unwrap(),
        4
    );
    assert_eq!(
        classify::spherical_table(SphericalKind::DihedralNeg { m: 3, h: 2, n: 1 }).unwrap(),
        4
    );
    assert_eq!(
        classify::spherical_table(SphericalKind::DihedralNeg { m: 1, h: 0, n: 1 }).unwrap(),
        3
    );
    assert_eq!(
        classify::spherical_table(SphericalKind::DihedralNeg { m: 1, h: 0, n: 5 }).unwrap(),
        2
    );
    assert_eq!(
        classify::spherical_table(SphericalKind::TMinus3).unwrap(),
        3
    );

    // classifier reproduces the special cases
    let m2 = SeifertData::normalize(-1, [rat(1, 2), rat(1, 2), rat(1, 2)]).unwrap();
    assert_eq!(
        classify::symplectic_verdict(&m2).unwrap().symplectic,
        SymplecticCount::Exactly(3),
        "acceptance 8: M_2"
    );
    for p in 3..8 {
        let mp = SeifertData::normalize(-1, [rat(1, 2), rat(1, p), rat(1, 2)]).unwrap();
        assert_eq!(
            classify::symplectic_verdict(&mp).unwrap().symplectic,
            SymplecticCount::Exactly(2),
            "acceptance 8: M_p at p={p}"
        );
    }
    let t3r = SeifertData::normalize(-1, [rat(2, 3), rat(1, 2), rat(1, 3)]).unwrap();
    assert_eq!(
        classify::symplectic_verdict(&t3r).unwrap().symplectic,
        SymplecticCount::Exactly(3),
        "acceptance 8: reversed tetrahedral space"
    );

    // every verdict on the table respects the at-most-six corollary
    let mut verdicts = Vec::new();
    for m in 1..=4i64 {
        let hs: Vec<i64> = if m == 1 {
            vec![0]
        } else {
            (1..m).filter(|h| h.gcd(&m) == 1).collect()
        };
        for h in hs {
            for n in 1..=4 {
                let y = seifert::y_mhn(m, h, n).unwrap();
                verdicts.push(classify::symplectic_verdict(&y).unwrap());
            }
        }
    }
    assert!(
        classify::corollary_bound_check(&verdicts),
        "acceptance 8: corollary bound"
    );
    pass(
        "8",
        format!(
            "table counts and special cases; {} verdicts under the bound",
            verdicts.len()
        ),
    );
}

#[test]
fn criterion_9_structural_suites() {
    let grid = GridSpec::default();
    let cf_report = verify::suite_cf(&grid);
    for check in &cf_report.checks {
        require(check, "9");
    }
    let classify_report = verify::suite_classify(&grid);
    for check in &classify_report.checks {
        require(check, "9");
    }
    pass(
        "9",
        format!(
            "cf suite ({} instances) and classifier suite ({} instances) zero-failure",
            cf_report.instances(),
            classify_report.instances()
        ),
    );
}
