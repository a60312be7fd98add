//! Normalized Seifert data for small Seifert fibered spaces, the one-fiber
//! surgery presentation, plumbing conversions, orientation reversal, and
//! the dihedral parameter identities.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cf::{self, CFString};
use crate::error::{domain, Error, Result};
use crate::rational::{ceil_int, floor_int, fmt_rational, rat, rat_int, to_i64, Rational};

/// `Y(e0; r1, r2, r3)` with each `r_i` in `(0, 1)`.
///
/// When two coefficients sum to `1` the constructor reorders the legs so
/// that the complementary pair sits in positions 1 and 3; the permutation
/// applied is kept for display purposes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeifertData {
    e0: i64,
    r: [Rational; 3],
    /// `original_order[i]` = input slot now stored at position `i`.
    original_order: [usize; 3],
}

impl SeifertData {
    /// Normalizes arbitrary nonzero coefficients: integer parts fold into
    /// `e0`, leaving every `r_i` in `(0, 1)`. Coefficients that are whole
    /// integers leave fewer than three singular fibers and are rejected.
    pub fn normalize(e0: i64, coeffs: [Rational; 3]) -> Result<SeifertData> {
        let mut shift = BigInt::from(e0);
        let mut r: Vec<Rational> = Vec::with_capacity(3);
        for c in coeffs {
            let f = floor_int(&c);
            let frac = c - Rational::from(f.clone());
            if frac.is_zero() {
                return Err(domain(
                    "integer Seifert coefficient leaves fewer than three singular fibers",
                ));
            }
            shift += f;
            r.push(frac);
        }
        let e0 = to_i64(&shift, "normalized e0")?;
        let r: [Rational; 3] = [r[0].clone(), r[1].clone(), r[2].clone()];
        Ok(Self::reorder(e0, r))
    }

    fn reorder(e0: i64, r: [Rational; 3]) -> SeifertData {
        let one = Rational::one();
        let pair = [(0, 2), (0, 1), (1, 2)]
            .into_iter()
            .find(|&(i, j)| &r[i] + &r[j] == one);
        let order = match pair {
            Some((0, 2)) | None => [0, 1, 2],
            Some((0, 1)) => [0, 2, 1],
            _ => [1, 0, 2],
        };
        let r = [
            r[order[0]].clone(),
            r[order[1]].clone(),
            r[order[2]].clone(),
        ];
        SeifertData {
            e0,
            r,
            original_order: order,
        }
    }

    pub fn e0(&self) -> i64 {
        self.e0
    }

    pub fn r(&self) -> &[Rational; 3] {
        &self.r
    }

    pub fn original_order(&self) -> [usize; 3] {
        self.original_order
    }

    /// Position pair of a complementary pair, `(0, 2)` after reordering.
    pub fn complementary_pair(&self) -> Option<(usize, usize)> {
        (&self.r[0] + &self.r[2] == Rational::one()).then_some((0, 2))
    }

    pub fn has_complementary_legs(&self) -> bool {
        self.complementary_pair().is_some()
    }

    /// `e0 + r1 + r2 + r3 != 0`.
    pub fn is_rational_homology_sphere(&self) -> bool {
        let s: Rational = self.r.iter().sum::<Rational>() + rat_int(self.e0);
        !s.is_zero()
    }

    fn require_complementary(&self) -> Result<()> {
        if !self.has_complementary_legs() {
            return Err(domain(format!("{self} has no complementary pair")));
        }
        Ok(())
    }

    /// The three leg strings `expand(1/r_i)` with complementarity metadata.
    pub fn leg_structure(&self) -> Result<LegStructure> {
        let legs: Vec<CFString> = self
            .r
            .iter()
            .map(|r| cf::expand(&r.recip()))
            .collect::<Result<_>>()?;
        let legs: [CFString; 3] = [legs[0].clone(), legs[1].clone(), legs[2].clone()];
        let complementary_pair = self.complementary_pair();
        let uniquely_complementary = complementary_pair.is_some()
            && !has_complementary_prefix(&legs[1], &legs[0])
            && !has_complementary_prefix(&legs[1], &legs[2]);
        Ok(LegStructure {
            legs,
            complementary_pair,
            uniquely_complementary,
        })
    }

    /// Re-expresses the middle-leg framing over a `-1` central framing and
    /// splits it: the one-fiber surgery presentation.
    pub fn to_figure2(&self) -> Result<Figure2Form> {
        self.require_complementary()?;
        let t = rat_int(-1 - self.e0);
        let x = (t - &self.r[1]).recip();
        let (n, a2) = cf::split_framing(&x);
        Ok(Figure2Form {
            ab: self.r[0].recip(),
            n,
            a2,
        })
    }

    /// `(-3 - e0; 1 - r1, 1 - r2, 1 - r3)`; an involution.
    pub fn reversed(&self) -> SeifertData {
        let one = Rational::one();
        SeifertData::reorder(
            -3 - self.e0,
            [&one - &self.r[0], &one - &self.r[1], &one - &self.r[2]],
        )
    }

    /// Leg strings of the negative-definite plumbing: requires `e0 <= -2`;
    /// `a1 = expand(1/r1)`, `a2ext = (-e0) :: expand(1/r2)`.
    pub fn to_plumbing(&self) -> Result<(CFString, CFString)> {
        self.require_complementary()?;
        if self.e0 > -2 {
            return Err(domain(format!(
                "plumbing legs need e0 <= -2, got e0 = {}",
                self.e0
            )));
        }
        let a1 = cf::expand(&self.r[0].recip())?;
        let leg2 = cf::expand(&self.r[1].recip())?;
        let mut entries = vec![BigInt::from(-self.e0)];
        entries.extend(leg2.entries().iter().cloned());
        Ok((a1, CFString::strict(entries)?))
    }

    /// Inverse of [`SeifertData::to_plumbing`]. The central-framing-only
    /// string (`a2ext` of length 1) is a lens-space degeneration with no
    /// middle fiber and is rejected.
    pub fn from_plumbing(a1: &CFString, a2ext: &CFString) -> Result<SeifertData> {
        if !a1.is_strict() || a1.is_empty() || !a2ext.is_strict() {
            return Err(domain("plumbing legs must be nonempty strict strings"));
        }
        if a2ext.len() < 2 {
            return Err(domain(
                "a2ext must carry the central framing and a nonempty middle leg",
            ));
        }
        let e0 = -to_i64(&a2ext.entries()[0], "central framing")?;
        let r1 = a1.evaluate()?.recip();
        let tail = CFString::strict(a2ext.entries()[1..].to_vec())?;
        let r2 = tail.evaluate()?.recip();
        let r3 = Rational::one() - &r1;
        Ok(SeifertData::reorder(e0, [r1, r2, r3]))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "e0": self.e0,
            "r": self.r.iter().map(fmt_rational).collect::<Vec<_>>(),
        })
    }
}

impl std::fmt::Display for SeifertData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Y({}; {}, {}, {})",
            self.e0,
            fmt_rational(&self.r[0]),
            fmt_rational(&self.r[1]),
            fmt_rational(&self.r[2])
        )
    }
}

/// Does any nonempty prefix of `leg` form a complementary pair with a
/// prefix of `other`? Prefix values `a/b` and `a/(a-b)` are complementary
/// exactly when their reciprocals sum to one.
fn has_complementary_prefix(leg: &CFString, other: &CFString) -> bool {
    let one = Rational::one();
    for i in 1..=leg.len() {
        let p = CFString::strict(leg.entries()[..i].to_vec()).unwrap();
        let Ok(pv) = p.evaluate() else { continue };
        for j in 1..=other.len() {
            let q = CFString::strict(other.entries()[..j].to_vec()).unwrap();
            let Ok(qv) = q.evaluate() else { continue };
            if pv.recip() + qv.recip() == one {
                return true;
            }
        }
    }
    false
}

/// Legs as strings plus complementarity flags.
#[derive(Clone, Debug)]
pub struct LegStructure {
    pub legs: [CFString; 3],
    pub complementary_pair: Option<(usize, usize)>,
    pub uniquely_complementary: bool,
}

/// The one-fiber presentation: complementary legs `a/b` and `a/(a-b)`, a
/// `(-n)`-framed central curve, and the middle chain `a2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Figure2Form {
    /// `1/r1 = a/b > 1`.
    pub ab: Rational,
    pub n: BigInt,
    pub a2: CFString,
}

impl Figure2Form {
    /// The middle-curve framing `-n + 1/value(a2)` (with `1/[] = 0`).
    pub fn coefficient(&self) -> Result<Rational> {
        Ok(-Rational::from(self.n.clone()) + self.a2.recip_value()?)
    }

    /// Empty middle chain: the companion lens space degenerates to the
    /// 3-sphere.
    pub fn is_degenerate(&self) -> bool {
        self.a2.is_empty()
    }

    /// Reconstructs the Seifert data; inverse of [`SeifertData::to_figure2`].
    pub fn to_seifert(&self) -> Result<SeifertData> {
        if self.ab <= Rational::one() {
            return Err(domain(format!(
                "ab must exceed 1, got {}",
                fmt_rational(&self.ab)
            )));
        }
        let x = self.coefficient()?;
        if x.is_zero() {
            return Err(domain(
                "zero middle framing does not describe a Seifert space",
            ));
        }
        let xi = x.recip();
        let t = ceil_int(&xi);
        let r2 = Rational::from(t.clone()) - xi;
        if r2.is_zero() {
            return Err(domain(
                "integral reciprocal framing is a lens-space degeneration with no middle fiber",
            ));
        }
        let e0 = to_i64(&(-BigInt::one() - t), "e0")?;
        let r1 = self.ab.recip();
        let r3 = Rational::one() - &r1;
        Ok(SeifertData::reorder(e0, [r1, r2, r3]))
    }

    /// The surgery-presentation invariant `n` determines `e0` of the
    /// normalized form: `n = 1` gives `e0 >= 0`, `n >= 2` gives `e0 = -1`,
    /// `n <= -1` gives `e0 = -2`, `n = 0` gives `e0 <= -3`; with the
    /// sharper interval refinement at the two unbounded rows.
    pub fn n_e0_table_consistent(&self, e0: i64) -> Result<bool> {
        let n = &self.n;
        let zero = BigInt::zero();
        let one = BigInt::one();
        let two = BigInt::from(2);
        let coarse = if *n == one {
            e0 >= 0
        } else if *n >= two {
            e0 == -1
        } else if *n <= -one.clone() {
            e0 == -2
        } else {
            e0 <= -3
        };
        if !coarse {
            return Ok(false);
        }
        let x = self.coefficient()?;
        if *n == one {
            // x in (-1/k, -1/(k+1)) forces e0 = k - 1
            let k = e0 + 1;
            Ok(rat(-1, k) < x && x < rat(-1, k + 1))
        } else if *n == zero {
            // x in (1/(k+1), 1/k) forces e0 = -k - 2
            let k = -e0 - 2;
            Ok(rat(1, k + 1) < x && x < rat(1, k))
        } else {
            Ok(true)
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ab": fmt_rational(&self.ab),
            "n": self.n.to_string(),
            "a2": self.a2.to_string(),
        })
    }
}

/// The unique `e0 >= 0` with `(e0+1)B < m^2 < (e0+2)B` for
/// `B = m^2 - mh + 1`; equals `floor(m^2 / B) - 1`.
pub fn unique_e0(m: i64, h: i64) -> Result<i64> {
    if !(0 < h && h < m) {
        return Err(domain(format!(
            "unique_e0 needs 0 < h < m, got m={m}, h={h}"
        )));
    }
    let m2 = m.checked_mul(m).ok_or_else(|| domain("m too large"))?;
    let b = m2 - m * h + 1;
    let e0 = m2 / b - 1;
    if !((e0 + 1) * b < m2 && m2 < (e0 + 2) * b) {
        return Err(Error::Internal(format!(
            "floor formula violated its double inequality at m={m}, h={h}"
        )));
    }
    Ok(e0)
}

/// The middle-leg fraction `m^2 / (n m^2 - mh + 1)` family member.
///
/// Defined for coprime `0 < h < m` with `n >= 2`, for `m = 1, h = 0` with
/// `n >= 1`, and for coprime `0 < h < m` with `n = 1`, which lives at
/// `e0 = unique_e0(m, h)` with middle leg `(m^2 - (e0+1)B)/B`.
pub fn y_mhn(m: i64, h: i64, n: i64) -> Result<SeifertData> {
    let half = rat(1, 2);
    if m == 1 {
        if h != 0 || n < 1 {
            return Err(domain(format!(
                "m = 1 needs h = 0 and n >= 1, got h={h}, n={n}"
            )));
        }
        return SeifertData::normalize(-1, [half.clone(), rat(1, n + 1), half]);
    }
    if !(0 < h && h < m && h.gcd(&m) == 1) {
        return Err(domain(format!("need coprime 0 < h < m, got m={m}, h={h}")));
    }
    if n >= 2 {
        let denom = n
            .checked_mul(m * m)
            .and_then(|x| x.checked_sub(m * h - 1))
            .ok_or_else(|| domain("parameters too large"))?;
        return SeifertData::normalize(-1, [half.clone(), rat(m * m, denom), half]);
    }
    if n == 1 {
        let e0 = unique_e0(m, h)?;
        let b = m * m - m * h + 1;
        let s = rat(m * m - (e0 + 1) * b, b);
        return SeifertData::normalize(e0, [half.clone(), s, half]);
    }
    Err(domain(format!("n must be >= 1, got {n}")))
}

/// Orientation of a dihedral presentation relative to the input.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DihedralOrientation {
    /// `-Y = D(p, q)`; the input had `e0 >= -1`.
    ReversedIsD,
    /// `Y = D(p, q)`; the input had `e0 <= -2`.
    IsD,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DihedralPresentation {
    pub p: BigInt,
    pub q: BigInt,
    pub orientation: DihedralOrientation,
}

/// `(p~, q~) = ((e0+2)p + q, p)` for `Y(e0; 1/2, q/p, 1/2)` with
/// `e0 >= -1`; then `-Y = D(p~, q~)`.
pub fn dihedral_params(e0: i64, pq: &Rational) -> Result<(BigInt, BigInt)> {
    if e0 < -1 {
        return Err(domain(format!(
            "dihedral parameters need e0 >= -1, got {e0}"
        )));
    }
    if *pq <= Rational::one() {
        return Err(domain(format!(
            "middle leg reciprocal must exceed 1, got {pq}"
        )));
    }
    let (p, q) = (pq.numer().clone(), pq.denom().clone());
    Ok((BigInt::from(e0 + 2) * &p + &q, p))
}

/// Inverse of [`dihedral_params`]: recovers `(e0, p/q)` from `(p~, q~)`.
pub fn seifert_from_dihedral(pt: &BigInt, qt: &BigInt) -> Result<(i64, Rational)> {
    if !(pt > qt && *qt >= BigInt::one()) || pt.gcd(qt) != BigInt::one() {
        return Err(domain(format!(
            "need coprime p~ > q~ >= 1, got ({pt}, {qt})"
        )));
    }
    if (pt % qt).is_zero() {
        return Err(domain("p~/q~ must not be an integer"));
    }
    let e0_plus_2 = pt.div_floor(qt);
    let q = pt - &e0_plus_2 * qt;
    let e0 = to_i64(&(e0_plus_2 - BigInt::from(2)), "e0")?;
    if e0 < -1 {
        return Err(Error::Internal("recovered e0 below -1".into()));
    }
    Ok((e0, Rational::new(qt.clone(), q)))
}

/// Dihedral presentation of a `Y(e0; 1/2, s, 1/2)` space with either
/// orientation; `e0 <= -2` inputs are routed through orientation reversal.
pub fn dihedral_from_seifert(y: &SeifertData) -> Result<DihedralPresentation> {
    let half = rat(1, 2);
    if !(y.r[0] == half && y.r[2] == half) {
        return Err(domain(format!(
            "{y} is not of the shape Y(e0; 1/2, s, 1/2)"
        )));
    }
    if y.e0 >= -1 {
        let (p, q) = dihedral_params(y.e0, &y.r[1].recip())?;
        Ok(DihedralPresentation {
            p,
            q,
            orientation: DihedralOrientation::ReversedIsD,
        })
    } else {
        let rev = y.reversed();
        let (p, q) = dihedral_params(rev.e0, &rev.r[1].recip())?;
        Ok(DihedralPresentation {
            p,
            q,
            orientation: DihedralOrientation::IsD,
        })
    }
}

/// The parameter identities of the dihedral family member attached to
/// `(m, h, e0)`: values and pass flags for the inverse congruence and the
/// framing-sum relation `p - 2 = (e0+1)p' + q'`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParameterReport {
    pub m: i64,
    pub h: i64,
    pub e0: i64,
    pub p: i64,
    pub q: i64,
    pub p_prime: i64,
    pub q_prime: i64,
    /// `p' (mh - 1 - p e0) == 1 mod p`
    pub inverse_ok: bool,
    /// `p - 2 == (e0+1) p' + q'`
    pub sum_ok: bool,
}

impl ParameterReport {
    pub fn all_hold(&self) -> bool {
        self.inverse_ok && self.sum_ok
    }
}

/// Computes `p = m^2 - mh + 1`, `q = (e0+1)(mh-1) - e0 m^2`,
/// `p' = (m-h)^2`, `q' = (2e0+1)mh - (e0+1)h^2 - e0 m^2 - 1` and verifies
/// the two identities tying them together.
pub fn dihedral_parameter_report(m: i64, h: i64, e0: i64) -> Result<ParameterReport> {
    if !(0 < h && h < m && h.gcd(&m) == 1) {
        return Err(domain(format!("need coprime 0 < h < m, got m={m}, h={h}")));
    }
    let m2 = m.checked_mul(m).ok_or_else(|| domain("m too large"))?;
    let p = m2 - m * h + 1;
    let q = (e0 + 1) * (m * h - 1) - e0 * m2;
    if q <= 0 {
        return Err(domain(format!("q = {q} <= 0 at m={m}, h={h}, e0={e0}")));
    }
    let p_prime = (m - h) * (m - h);
    let q_prime = (2 * e0 + 1) * m * h - (e0 + 1) * h * h - e0 * m2 - 1;
    let lhs = (p_prime as i128) * ((m * h - 1 - p * e0) as i128);
    let inverse_ok = lhs.rem_euclid(p as i128) == 1 % p as i128;
    let sum_ok = p - 2 == (e0 + 1) * p_prime + q_prime;
    Ok(ParameterReport {
        m,
        h,
        e0,
        p,
        q,
        p_prime,
        q_prime,
        inverse_ok,
        sum_ok,
    })
}
