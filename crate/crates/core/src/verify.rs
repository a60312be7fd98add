//! Grid-based invariant suites. Each suite sweeps an exhaustive grid and
//! reports the instance count with any counterexamples; all checks are
//! exact, so a single failure is meaningful.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cf::{self, CFString};
use crate::classify::{self, Smooth, SymplecticCount};
use crate::error::Result;
use crate::lisca;
use crate::plumbing;
use crate::rational::{rat, rat_int, Rational};
use crate::seifert::{self, SeifertData};
use crate::tridiag;
use crate::Sign;

/// Bounds for the verification grids.
#[derive(Clone, Copy, Debug)]
pub struct GridSpec {
    /// Combined length bound for the `(a1, a2ext)` string pairs.
    pub max_string_len: usize,
    /// Largest continued-fraction entry on string grids.
    pub max_entry: i64,
    pub m_max: i64,
    pub n_max: i64,
    pub e0_min: i64,
    pub e0_max: i64,
    pub p_max: i64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            max_string_len: 5,
            max_entry: 6,
            m_max: 30,
            n_max: 6,
            e0_min: 0,
            e0_max: 4,
            p_max: 2500,
        }
    }
}

/// One named check: how many instances ran, which ones failed.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub label: String,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn instances(&self) -> usize {
        self.checks.iter().map(|c| c.instances).sum()
    }

    pub fn first_failure(&self) -> Option<&str> {
        self.checks
            .iter()
            .flat_map(|c| c.failures.first())
            .map(String::as_str)
            .next()
    }
}

const MAX_RECORDED_FAILURES: usize = 5;

struct Check {
    label: String,
    instances: usize,
    failures: Vec<String>,
}

impl Check {
    fn new(label: &str) -> Self {
        Check {
            label: label.to_string(),
            instances: 0,
            failures: Vec::new(),
        }
    }

    fn claim(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok && self.failures.len() < MAX_RECORDED_FAILURES {
            self.failures.push(describe());
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            label: self.label,
            instances: self.instances,
            failures: self.failures,
        }
    }
}

/// All strict strings with lengths `1..=max_len` and entries `2..=max_entry`.
pub fn strict_strings(max_len: usize, max_entry: i64) -> Vec<CFString> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for prefix in &stack {
            for e in 2..=max_entry {
                let mut s = prefix.clone();
                s.push(e);
                out.push(CFString::strict(s.clone()).unwrap());
                next.push(s);
            }
        }
        stack = next;
    }
    out
}

/// String pairs `(a1, a2ext)` with `len(a1) + len(a2ext) <= max_len`.
pub fn string_pairs(max_len: usize, max_entry: i64) -> Vec<(CFString, CFString)> {
    let singles = strict_strings(max_len.saturating_sub(1), max_entry);
    let mut out = Vec::new();
    for a1 in &singles {
        for a2 in &singles {
            if a1.len() + a2.len() <= max_len {
                out.push((a1.clone(), a2.clone()));
            }
        }
    }
    out
}

/// All reduced fractions `p/q > 1` with `p <= p_max`.
fn fractions_above_one(p_max: i64) -> Vec<Rational> {
    let mut out = Vec::new();
    for p in 2..=p_max {
        for q in 1..p {
            if p.gcd(&q) == 1 {
                out.push(rat(p, q));
            }
        }
    }
    out
}

/// Continued-fraction calculus: round trips, dual involution and length
/// identity, reversal, framing splits, and the two-run reduction.
pub fn suite_cf(grid: &GridSpec) -> SuiteReport {
    let mut round = Check::new("expand/evaluate round trip (p <= 400)");
    for v in fractions_above_one(grid.p_max.min(400)) {
        let ok = cf::expand(&v).and_then(|s| s.evaluate()) == Ok(v.clone());
        round.claim(ok, || format!("round trip failed at {v}"));
    }

    let strings = strict_strings((grid.max_string_len + 1).min(6), grid.max_entry);
    let mut dual = Check::new("dual involution and value");
    let mut ilen = Check::new("I = n3 - n1 - 1 length identity");
    let mut rever = Check::new("reversal equals p/mod_inverse(q, p)");
    for s in &strings {
        let v = s.evaluate().unwrap();
        let d = s.dual().unwrap();
        let dv = Rational::new(v.numer().clone(), v.numer() - v.denom());
        dual.claim(d.evaluate() == Ok(dv) && d.dual().unwrap() == *s, || {
            format!("dual failed at {s}")
        });
        let expect = BigInt::from(d.len() as i64) - BigInt::from(s.len() as i64) - BigInt::one();
        ilen.claim(s.i_value() == expect, || {
            format!("I identity failed at {s}")
        });
        rever.claim(
            s.reversed_value().unwrap() == s.reversed().evaluate().unwrap(),
            || format!("reversal failed at {s}"),
        );
    }

    let mut split = Check::new("framing split reconstructs");
    for p in 1..=grid.max_entry * 8 {
        for q in 1..=grid.max_entry * 2 {
            for sg in [-1i64, 1] {
                let x = rat(sg * p, q);
                let (n, s) = cf::split_framing(&x);
                let ok = (-Rational::from(n) + s.recip_value().unwrap()) == x
                    && (x.denom().is_one() || (s.is_strict() && !s.is_empty()));
                split.claim(ok, || format!("split failed at {x}"));
            }
        }
    }

    let mut tworun = Check::new("two-run reduction equality");
    for s in &strings {
        let two = BigInt::from(2);
        let t = s.entries().iter().take_while(|a| **a == two).count();
        if t == 0 || t == s.len() {
            continue;
        }
        if s.entries()[t] <= two {
            continue;
        }
        let (lhs, rhs) = cf::two_run_reduction(s).unwrap();
        tworun.claim(lhs == rhs, || format!("two-run reduction failed at {s}"));
    }

    SuiteReport {
        suite: "cf".into(),
        checks: vec![
            round.finish(),
            dual.finish(),
            ilen.finish(),
            rever.finish(),
            split.finish(),
            tworun.finish(),
        ],
    }
}

/// Membership suite: certificate soundness, witness-orbit closure, the
/// `I <= 1` bound, and the `I = 1` class characterization.
pub fn suite_lisca(grid: &GridSpec) -> SuiteReport {
    let mut sound = Check::new("certificates re-verify");
    let mut closure = Check::new("membership closed under q -> q*");
    let mut ibound = Check::new("I <= 1 on members");
    let mut classv = Check::new("I = 1 iff q = mh - 1 form");
    let members = lisca::grid(grid.p_max);
    for &(p, q) in &members {
        let cert = lisca::membership(p, q).unwrap().unwrap();
        sound.claim(cert.verify(p, q), || {
            format!("unsound certificate at ({p},{q})")
        });
        let qs = crate::rational::mod_inverse_i64(q, p).unwrap();
        closure.claim(lisca::membership(p, qs).unwrap().is_some(), || {
            format!("q*-closure failed at ({p},{q})")
        });
        let i = cf::expand(&rat(p, q)).unwrap().i_value();
        ibound.claim(i <= BigInt::one(), || format!("I > 1 at ({p},{q})"));
        let m = (p as f64).sqrt().round() as i64;
        let is_class_v = (1..m).any(|h| q == m * h - 1 && h.gcd(&m) == 1);
        classv.claim((i == BigInt::one()) == is_class_v, || {
            format!("class characterization failed at ({p},{q})")
        });
    }
    SuiteReport {
        suite: "lisca".into(),
        checks: vec![
            sound.finish(),
            closure.finish(),
            ibound.finish(),
            classv.finish(),
        ],
    }
}

/// Tridiagonal block identities: determinant contract, edge columns
/// against elimination, the dot-product identity with its bordered
/// determinant, and the leading entry of the trailing-minor vector.
pub fn suite_matrix(grid: &GridSpec) -> SuiteReport {
    let len = grid.max_string_len.clamp(1, 4);
    let strings = strict_strings(len, grid.max_entry);
    let mut det = Check::new("det M = (-1)^n s");
    let mut edges = Check::new("edge columns match elimination");
    let mut dot = Check::new("dot identity and bordered determinant");
    let mut vfirst = Check::new("v leading entry equals t");
    for s in &strings {
        let v = s.evaluate().unwrap();
        let d = tridiag::signed_det(s).unwrap();
        let expect = if s.len() % 2 == 0 {
            v.numer().clone()
        } else {
            -v.numer()
        };
        det.claim(d == expect, || {
            format!("determinant contract failed at {s}")
        });

        let direct = tridiag::matrix(s).unwrap().inverse().unwrap();
        let (first, last) = tridiag::edge_columns(s).unwrap();
        let n = s.len();
        let ok = (0..n).all(|i| direct[(i, 0)] == first[i] && direct[(i, n - 1)] == last[i])
            && tridiag::inverse(s).unwrap() == direct;
        edges.claim(ok, || format!("edge columns failed at {s}"));

        let di = tridiag::dot_identity(s).unwrap();
        dot.claim(di.lhs == di.rhs && di.det_m1 == di.det_m1_formula, || {
            format!("dot identity failed at {s}")
        });

        let uv = tridiag::uv_vectors(s).unwrap();
        vfirst.claim(&uv.v[0] == v.denom(), || {
            format!("v leading entry failed at {s}")
        });
    }
    // relaxed first-entry-1 blocks keep the determinant and inverse contracts
    let mut relaxed = Check::new("relaxed leading-1 blocks");
    for tail in strict_strings(len.saturating_sub(1).max(1), grid.max_entry) {
        let mut e = vec![BigInt::one()];
        e.extend(tail.entries().iter().cloned());
        let s = CFString::relaxed(e);
        let v = s.evaluate().unwrap();
        let ok = if v.is_zero() {
            tridiag::inverse(&s) == Err(crate::Error::SingularMatrix)
        } else {
            let d = tridiag::signed_det(&s).unwrap();
            let expect = if s.len().is_multiple_of(2) {
                v.numer().clone()
            } else {
                -v.numer()
            };
            d == expect
                && tridiag::inverse(&s).unwrap() == tridiag::matrix(&s).unwrap().inverse().unwrap()
        };
        relaxed.claim(ok, || format!("relaxed block failed at {s}"));
    }
    SuiteReport {
        suite: "matrix".into(),
        checks: vec![
            det.finish(),
            edges.finish(),
            dot.finish(),
            vfirst.finish(),
            relaxed.finish(),
        ],
    }
}

/// The plumbing suite over all `(a1, a2ext)` pairs on the grid: block
/// inverse against elimination, both theta routes, the membership-gated
/// lower bound `theta > -2`, the bilinear-form identities, and the
/// defining row relation of the stripped inverse.
pub fn suite_theta(grid: &GridSpec) -> SuiteReport {
    let pairs = string_pairs(grid.max_string_len, grid.max_entry);
    let mut blocks = Check::new("block inverse equals elimination inverse");
    let mut paths = Check::new("theta formula equals theta matrix");
    let mut gate = Check::new("theta > -2 on lens-reduction members");
    let mut gate_fired = 0usize;
    let mut lemmas = Check::new("bilinear-form identities");
    let mut rows = Check::new("stripped-inverse row relation");
    for (a1, a2ext) in &pairs {
        let q = plumbing::assemble(a1, a2ext).unwrap();
        let direct = q.matrix.inverse().unwrap();
        let block = q.inverse_blocks().unwrap();
        blocks.claim(block == direct, || {
            format!("block inverse failed at a1={a1}, a2ext={a2ext}")
        });

        let f = plumbing::theta_formula(a1, a2ext).unwrap();
        let m = plumbing::theta_matrix(a1, a2ext).unwrap();
        paths.claim(f == m, || {
            format!("theta routes split at a1={a1}, a2ext={a2ext}")
        });

        let v = a2ext.evaluate().unwrap();
        let d = v.numer() - v.denom();
        if d > BigInt::one() {
            let q1 = v.denom().mod_floor(&d);
            let p_i = i64::try_from(&d).unwrap();
            let q_i = i64::try_from(&q1).unwrap();
            if lisca::membership(p_i, q_i).unwrap().is_some() {
                gate_fired += 1;
                gate.claim(f.theta > rat_int(-2), || {
                    format!("theta gate failed at a1={a1}, a2ext={a2ext}")
                });
            }
        }

        let report = plumbing::lemma_report(a1, a2ext).unwrap();
        lemmas.claim(report.all_hold(), || {
            let bad: Vec<&str> = report
                .pairs
                .iter()
                .filter(|p| !p.holds())
                .map(|p| p.label)
                .collect();
            format!("identities {bad:?} failed at a1={a1}, a2ext={a2ext}")
        });

        rows.claim(q.row_relation_holds().unwrap(), || {
            format!("row relation failed at a1={a1}, a2ext={a2ext}")
        });
    }
    debug_assert_eq!(gate_fired, gate.instances);
    SuiteReport {
        suite: "theta".into(),
        checks: vec![
            blocks.finish(),
            paths.finish(),
            gate.finish(),
            lemmas.finish(),
            rows.finish(),
        ],
    }
}

/// Dihedral-family parameter identities, floor-formula uniqueness, the
/// parameter round trips, and the non-balanced theta obstructions.
pub fn suite_sections67(grid: &GridSpec) -> SuiteReport {
    let mut ids = Check::new("parameter identities (inverse congruence, framing sum)");
    let mut uniq = Check::new("floor formula is the unique admissible level");
    let mut round = Check::new("family member matches its dihedral presentation");
    for m in 2..=grid.m_max {
        for h in 1..m {
            if h.gcd(&m) != 1 {
                continue;
            }
            let e0_star = seifert::unique_e0(m, h).unwrap();
            for e0 in 0..=e0_star {
                let rep = seifert::dihedral_parameter_report(m, h, e0).unwrap();
                ids.claim(rep.all_hold(), || {
                    format!("identities failed at m={m}, h={h}, e0={e0}")
                });
            }
            let b = m * m - m * h + 1;
            let sols: Vec<i64> = (0..=100)
                .filter(|e| (e + 1) * b < m * m && m * m < (e + 2) * b)
                .collect();
            uniq.claim(sols == vec![e0_star], || {
                format!("uniqueness failed at m={m}, h={h}: {sols:?}")
            });

            // n = 1 member lives at e0*, with the stated dihedral parameters
            let y1 = seifert::y_mhn(m, h, 1).unwrap();
            let d = seifert::dihedral_from_seifert(&y1).unwrap();
            let expect = (
                BigInt::from(2 * m * m - m * h + 1),
                BigInt::from(m * m - m * h + 1),
            );
            round.claim(
                (d.p.clone(), d.q.clone()) == expect && y1.e0() == e0_star,
                || format!("n=1 presentation failed at m={m}, h={h}"),
            );
            // n >= 2 members
            for n in 2..=grid.n_max.min(4) {
                let yn = seifert::y_mhn(m, h, n).unwrap();
                let d = seifert::dihedral_from_seifert(&yn).unwrap();
                let expect = (
                    BigInt::from((n + 1) * m * m - m * h + 1),
                    BigInt::from(n * m * m - m * h + 1),
                );
                round.claim((d.p, d.q) == expect, || {
                    format!("n={n} presentation failed at m={m}, h={h}")
                });
            }
        }
    }

    let mut minus = Check::new("minus-structure theta never integral");
    let mut plus = Check::new("plus-structure twist route and fraction identity");
    let mut plus_gate = Check::new("plus-structure theta avoids -2 on smooth-bounding members");
    let p_cap = grid.p_max.min(60);
    for e0 in grid.e0_min.max(0)..=grid.e0_max {
        for p in 2..=p_cap {
            for q in 1..p {
                if p.gcd(&q) != 1 {
                    continue;
                }
                let pq = rat(p, q);
                let tm = plumbing::theta_nonbalanced(e0, &pq, Sign::Minus).unwrap();
                minus.claim(!tm.denom().is_one(), || {
                    format!("integral theta- at e0={e0}, p/q={p}/{q}")
                });
                let tp = plumbing::theta_nonbalanced(e0, &pq, Sign::Plus).unwrap();
                let twist = plumbing::theta_plus_via_twist(e0, &pq).unwrap();
                let (fl, fr) = plumbing::framing_fraction_identity(e0, &pq).unwrap();
                plus.claim(tp == twist && fl == fr, || {
                    format!("plus-structure routes split at e0={e0}, p/q={p}/{q}")
                });
                // theta+ = -2 is excluded only where the twisted framing
                // string is a member, i.e. where a smooth ball exists at
                // all; outside that set the smooth obstruction applies and
                // theta+ = -2 does occur (first at e0 = 0, p/q = 38/7).
                let s = cf::expand(&pq).unwrap();
                let mut entries = vec![BigInt::from(2); e0 as usize];
                let mut tail = s.entries().to_vec();
                tail[0] += 1;
                entries.extend(tail);
                let rs = CFString::strict(entries).unwrap().evaluate().unwrap();
                let rp = i64::try_from(rs.numer()).unwrap();
                let rq = i64::try_from(rs.denom()).unwrap();
                if lisca::membership(rp, rq).unwrap().is_some() {
                    plus_gate.claim(tp != rat_int(-2), || {
                        format!("member with theta+ = -2 at e0={e0}, p/q={p}/{q}")
                    });
                }
            }
        }
    }

    SuiteReport {
        suite: "sections67".into(),
        checks: vec![
            ids.finish(),
            uniq.finish(),
            round.finish(),
            minus.finish(),
            plus.finish(),
            plus_gate.finish(),
        ],
    }
}

/// Complementary-leg spaces on the verification grid: plumbing spaces with
/// `e0 <= -2`, the dihedral-reversed family, and their reverses.
pub fn classifier_grid(grid: &GridSpec) -> Vec<SeifertData> {
    let mut out = Vec::new();
    for (a1, a2ext) in string_pairs(grid.max_string_len.min(4), grid.max_entry.min(5)) {
        if a2ext.len() < 2 {
            continue;
        }
        if let Ok(y) = SeifertData::from_plumbing(&a1, &a2ext) {
            out.push(y.clone());
            out.push(y.reversed());
        }
    }
    for m in 1..=grid.m_max.min(4) {
        let hs: Vec<i64> = if m == 1 {
            vec![0]
        } else {
            (1..m).filter(|h| h.gcd(&m) == 1).collect()
        };
        for h in hs {
            for n in 1..=grid.n_max.min(4) {
                if let Ok(y) = seifert::y_mhn(m, h, n) {
                    out.push(y.clone());
                    out.push(y.reversed());
                }
            }
        }
    }
    out.sort_by(|a, b| {
        (a.e0(), &a.r()[0], &a.r()[1], &a.r()[2]).cmp(&(b.e0(), &b.r()[0], &b.r()[1], &b.r()[2]))
    });
    out.dedup();
    out
}

/// Classifier-level invariants over the grid: presentation table, reversal
/// involution, verdict containments, the orientation dichotomy, and the
/// theta gate behind every asserted filling.
pub fn suite_classify(grid: &GridSpec) -> SuiteReport {
    let spaces = classifier_grid(grid);
    let mut table = Check::new("presentation n vs e0 table with refinement");
    let mut invol = Check::new("orientation reversal involution, e0 sum -3");
    let mut contain = Check::new("asserted fillings smoothly bound");
    let mut dichotomy = Check::new("at most one orientation admits fillings");
    let mut gate = Check::new("asserted fillings pass the lens theta gate");
    let mut agree = Check::new("verdicts computed without internal route splits");
    for y in &spaces {
        let fig = y.to_figure2().unwrap();
        table.claim(fig.n_e0_table_consistent(y.e0()).unwrap(), || {
            format!("presentation table failed at {y}")
        });
        let rev = y.reversed();
        invol.claim(rev.reversed() == *y && rev.e0() + y.e0() == -3, || {
            format!("reversal involution failed at {y}")
        });

        let v = classify::symplectic_verdict(y);
        let v = match v {
            Ok(v) => v,
            Err(e) => {
                agree.claim(false, || format!("verdict error at {y}: {e}"));
                continue;
            }
        };
        agree.claim(true, || unreachable!());
        contain.claim(
            !v.symplectic.asserts_existence() || v.smooth == Smooth::Bounds,
            || format!("containment failed at {y}"),
        );
        let vr = classify::symplectic_verdict(&rev).unwrap();
        dichotomy.claim(
            v.symplectic == SymplecticCount::None || vr.symplectic == SymplecticCount::None,
            || format!("dichotomy failed at {y}"),
        );
        if v.symplectic.asserts_existence() {
            let (p, q) = classify::companion_lens(y).unwrap();
            gate.claim(
                classify::lens_theta_canonical(p, q).unwrap() == rat_int(-2),
                || format!("theta gate failed at {y} with lens ({p},{q})"),
            );
        }
    }
    SuiteReport {
        suite: "classify".into(),
        checks: vec![
            table.finish(),
            invol.finish(),
            contain.finish(),
            dichotomy.finish(),
            gate.finish(),
            agree.finish(),
        ],
    }
}

pub const SUITE_NAMES: [&str; 6] = ["cf", "lisca", "matrix", "theta", "sections67", "classify"];

/// Runs one suite by name.
pub fn run_suite(name: &str, grid: &GridSpec) -> Result<SuiteReport> {
    match name {
        "cf" => Ok(suite_cf(grid)),
        "lisca" => Ok(suite_lisca(grid)),
        "matrix" => Ok(suite_matrix(grid)),
        "theta" => Ok(suite_theta(grid)),
        "sections67" => Ok(suite_sections67(grid)),
        "classify" => Ok(suite_classify(grid)),
        other => Err(crate::error::Error::Domain(format!(
            "unknown suite {other:?}; expected one of {SUITE_NAMES:?} or \"all\""
        ))),
    }
}
