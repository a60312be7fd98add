//! The star-shaped plumbing intersection form, its closed-form block
//! inverse, and the theta invariants computed from it.
//!
//! The plumbing is described by two strict strings: `a1` (one complementary
//! leg, value `pt/qt`) and `a2ext` (the central framing `a2_0 >= 2` followed
//! by the middle leg, value `p/q`). The other complementary leg `a3` is the
//! Riemenschneider dual of `a1`. The intersection matrix is block
//! tridiagonal with blocks `A = M(a1 reversed)`, `B = M(a2ext)`,
//! `C = M(a3)` and unit links `(n1, n1+1)` and `(n1+1, n1+n2+2)` in 1-based
//! indexing; storing the reversed `a1` in `A` is load-bearing for the
//! rotation-vector indexing, so it is centralized here.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cf::CFString;
use crate::error::{domain, Error, Result};
use crate::matrix::ExactMatrix;
use crate::rational::{fmt_rational, rat_int, Rational};
use crate::tridiag;
use crate::Sign;

/// An assembled intersection matrix together with its leg strings.
#[derive(Clone, Debug)]
pub struct PlumbingQ {
    pub a1: CFString,
    pub a2ext: CFString,
    pub a3: CFString,
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
    pub matrix: ExactMatrix,
}

fn require_strict(s: &CFString, what: &str) -> Result<()> {
    if !s.is_strict() || s.is_empty() {
        return Err(domain(format!("{what} must be a nonempty strict string")));
    }
    Ok(())
}

/// Builds the intersection matrix for legs `a1`, `a2ext`.
pub fn assemble(a1: &CFString, a2ext: &CFString) -> Result<PlumbingQ> {
    require_strict(a1, "a1")?;
    require_strict(a2ext, "a2ext")?;
    let a3 = a1.dual()?;
    let (n1, n2, n3) = (a1.len(), a2ext.len() - 1, a3.len());
    let size = n1 + n2 + 1 + n3;
    let a = tridiag::matrix(&a1.reversed())?;
    let b = tridiag::matrix(a2ext)?;
    let c = tridiag::matrix(&a3)?;
    let mut q = ExactMatrix::zeros(size, size);
    let mut paste = |block: &ExactMatrix, at: usize| {
        for i in 0..block.nrows() {
            for j in 0..block.ncols() {
                q[(at + i, at + j)] = block[(i, j)].clone();
            }
        }
    };
    paste(&a, 0);
    paste(&b, n1);
    paste(&c, n1 + n2 + 1);
    if n1 > 0 {
        q[(n1 - 1, n1)] = Rational::one();
        q[(n1, n1 - 1)] = Rational::one();
    }
    q[(n1, n1 + n2 + 1)] = Rational::one();
    q[(n1 + n2 + 1, n1)] = Rational::one();
    debug_assert!(q.is_symmetric());
    Ok(PlumbingQ {
        a1: a1.clone(),
        a2ext: a2ext.clone(),
        a3,
        n1,
        n2,
        n3,
        matrix: q,
    })
}

/// `[a2_n2, ..., a2_1, a2_0 - 1]`: the reversed central string with its
/// last entry lowered; relaxed because that entry can be `1`.
fn reversed_lowered(a2ext: &CFString) -> CFString {
    let mut e: Vec<BigInt> = a2ext.entries().iter().rev().cloned().collect();
    let last = e.len() - 1;
    e[last] -= 1;
    CFString::relaxed(e)
}

/// `[a2_0 - 1, a2_1, ...]`: the central string with its framing lowered,
/// the center block of the inverse.
fn lowered(a2ext: &CFString) -> CFString {
    let mut e: Vec<BigInt> = a2ext.entries().to_vec();
    e[0] -= 1;
    CFString::relaxed(e)
}

struct InverseData {
    pt: BigInt,
    q: BigInt,
    p_minus_q: BigInt,
    u_a: Vec<BigInt>,
    v_b: Vec<BigInt>,
    v_c: Vec<BigInt>,
}

fn inverse_data(q: &PlumbingQ) -> Result<InverseData> {
    let pt = q.a1.evaluate()?.numer().clone();
    let val = q.a2ext.evaluate()?;
    let (p, qq) = (val.numer().clone(), val.denom().clone());
    let p_minus_q = &p - &qq;
    if p_minus_q.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let u_a = tridiag::uv_vectors(&q.a1.reversed())?.u;
    let v_b = tridiag::uv_vectors(&q.a2ext)?.v;
    let v_c = tridiag::uv_vectors(&q.a3)?.v;
    Ok(InverseData {
        pt,
        q: qq,
        p_minus_q,
        u_a,
        v_b,
        v_c,
    })
}

impl PlumbingQ {
    /// The inverse assembled from closed-form blocks: diagonal
    /// `A^{-1} + G`, `Btilde^{-1}`, `C^{-1} + H` with rank-one `G, H`, and
    /// rank-one off-diagonal blocks `D`, `E`, `F`.
    pub fn inverse_blocks(&self) -> Result<ExactMatrix> {
        let d = inverse_data(self)?;
        let (n1, n2p1, n3) = (self.n1, self.n2 + 1, self.n3);
        let size = n1 + n2p1 + n3;
        let pt2 = &d.pt * &d.pt;
        let c_g = Rational::new(-d.q.clone(), &pt2 * &d.p_minus_q);
        let c_d = Rational::new(-BigInt::one(), &d.pt * &d.p_minus_q);

        let mut out = ExactMatrix::zeros(size, size);
        let a_inv = tridiag::inverse(&self.a1.reversed())?;
        let b_inv = tridiag::inverse(&lowered(&self.a2ext))?;
        let c_inv = tridiag::inverse(&self.a3)?;
        for i in 0..n1 {
            for j in 0..n1 {
                out[(i, j)] = a_inv[(i, j)].clone() + &c_g * Rational::from(&d.u_a[i] * &d.u_a[j]);
            }
            for j in 0..n2p1 {
                let e = &c_d * Rational::from(&d.u_a[i] * &d.v_b[j]);
                out[(i, n1 + j)] = e.clone();
                out[(n1 + j, i)] = e;
            }
            for j in 0..n3 {
                let e = &c_g * Rational::from(&d.u_a[i] * &d.v_c[j]);
                out[(i, n1 + n2p1 + j)] = e.clone();
                out[(n1 + n2p1 + j, i)] = e;
            }
        }
        for i in 0..n2p1 {
            for j in 0..n2p1 {
                out[(n1 + i, n1 + j)] = b_inv[(i, j)].clone();
            }
            for j in 0..n3 {
                let e = &c_d * Rational::from(&d.v_b[i] * &d.v_c[j]);
                out[(n1 + i, n1 + n2p1 + j)] = e.clone();
                out[(n1 + n2p1 + j, n1 + i)] = e;
            }
        }
        for i in 0..n3 {
            for j in 0..n3 {
                out[(n1 + n2p1 + i, n1 + n2p1 + j)] =
                    c_inv[(i, j)].clone() + &c_g * Rational::from(&d.v_c[i] * &d.v_c[j]);
            }
        }
        Ok(out)
    }

    /// Rotation-vector component supported on the central chain:
    /// `(0 x n1, a2_0 - 2, ..., a2_n2 - 2, 0 x n3)`.
    pub fn x_vector(&self) -> Vec<Rational> {
        let two = BigInt::from(2);
        let mut x = vec![Rational::zero(); self.n1];
        x.extend(
            self.a2ext
                .entries()
                .iter()
                .map(|a| Rational::from(a - &two)),
        );
        x.extend(vec![Rational::zero(); self.n3]);
        x
    }

    /// Rotation-vector component supported on the complementary legs:
    /// `(a1_n1 - 2, ..., a1_1 - 2, 0 x (n2+1), a3_1 - 2, ..., a3_n3 - 2)`.
    pub fn y_vector(&self) -> Vec<Rational> {
        let two = BigInt::from(2);
        let mut y: Vec<Rational> = self
            .a1
            .entries()
            .iter()
            .rev()
            .map(|a| Rational::from(a - &two))
            .collect();
        y.extend(vec![Rational::zero(); self.n2 + 1]);
        y.extend(self.a3.entries().iter().map(|a| Rational::from(a - &two)));
        y
    }

    /// `x + y`, the rotation vector of the canonical structure.
    pub fn r_can(&self) -> Vec<Rational> {
        self.x_vector()
            .into_iter()
            .zip(self.y_vector())
            .map(|(a, b)| a + b)
            .collect()
    }

    pub fn size(&self) -> usize {
        self.n1 + self.n2 + 1 + self.n3
    }

    /// The row relation behind the block-inverse proof: with the `A^{-1}`
    /// and `C^{-1}` summands deleted from the inverse, row `n1` plus row
    /// `n1+n2+2` equals row `n1+1` (1-based) of what remains.
    pub fn row_relation_holds(&self) -> Result<bool> {
        let mut stripped = self.inverse_blocks()?;
        let a_inv = tridiag::inverse(&self.a1.reversed())?;
        let c_inv = tridiag::inverse(&self.a3)?;
        for i in 0..self.n1 {
            for j in 0..self.n1 {
                stripped[(i, j)] -= a_inv[(i, j)].clone();
            }
        }
        let off = self.n1 + self.n2 + 1;
        for i in 0..self.n3 {
            for j in 0..self.n3 {
                stripped[(off + i, off + j)] -= c_inv[(i, j)].clone();
            }
        }
        let size = self.size();
        Ok((0..size)
            .all(|j| &stripped[(self.n1 - 1, j)] + &stripped[(off, j)] == stripped[(self.n1, j)]))
    }
}

/// Signature, Euler characteristic, both theta routes' shared output.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ThetaResult {
    pub theta: Rational,
    pub c1_squared: Rational,
    pub sigma: i64,
    pub chi: i64,
    pub d3: Rational,
}

impl ThetaResult {
    fn from_theta(theta: Rational, size: usize) -> Self {
        let sigma = -(size as i64);
        let chi = size as i64 + 1;
        let c1_squared = &theta + rat_int(3 * sigma + 2 * chi);
        let d3 = (&theta + rat_int(2)) / rat_int(4);
        ThetaResult {
            theta,
            c1_squared,
            sigma,
            chi,
            d3,
        }
    }

    fn from_c1(c1_squared: Rational, size: usize) -> Self {
        let sigma = -(size as i64);
        let chi = size as i64 + 1;
        let theta = &c1_squared - rat_int(3 * sigma + 2 * chi);
        let d3 = (&theta + rat_int(2)) / rat_int(4);
        ThetaResult {
            theta,
            c1_squared,
            sigma,
            chi,
            d3,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "theta": fmt_rational(&self.theta),
            "c1_squared": fmt_rational(&self.c1_squared),
            "sigma": self.sigma,
            "chi": self.chi,
            "d3": fmt_rational(&self.d3),
        })
    }
}

/// Theta of the canonical structure by the closed formula
/// `1 - I(p/q) - 1/[a2 reversed, lowered] + 2(pt-2)/(pt(p-q))
///  - (pt-2)^2 q / (pt^2 (p-q))`.
pub fn theta_formula(a1: &CFString, a2ext: &CFString) -> Result<ThetaResult> {
    require_strict(a1, "a1")?;
    require_strict(a2ext, "a2ext")?;
    let pt = a1.evaluate()?.numer().clone();
    let val = a2ext.evaluate()?;
    let (p, q) = (val.numer().clone(), val.denom().clone());
    let p_minus_q = &p - &q;
    let i = Rational::from(a2ext.i_value());
    let tail = reversed_lowered(a2ext).evaluate()?;
    if tail.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let pt_minus_2 = &pt - BigInt::from(2);
    let term4 = Rational::new(BigInt::from(2) * &pt_minus_2, &pt * &p_minus_q);
    let term5 = Rational::new(&pt_minus_2 * &pt_minus_2 * &q, &pt * &pt * &p_minus_q);
    let theta = Rational::one() - i - tail.recip() + term4 - term5;

    let n3 = a1.dual()?.len();
    let size = a1.len() + a2ext.len() + n3;
    Ok(ThetaResult::from_theta(theta, size))
}

/// Theta of the canonical structure by the matrix route:
/// `c1^2 = r_can^T Q^{-1} r_can` with the inverse computed by exact
/// elimination, then `theta = c1^2 - 3 sigma - 2 chi`.
pub fn theta_matrix(a1: &CFString, a2ext: &CFString) -> Result<ThetaResult> {
    let q = assemble(a1, a2ext)?;
    let inv = q.matrix.inverse()?;
    let r = q.r_can();
    let c1 = inv.quad_form(&r, &r)?;
    Ok(ThetaResult::from_c1(c1, q.size()))
}

/// The quantities entering the block-inverse lemmas.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProofQuantities {
    pub alpha: Rational,
    pub beta: Rational,
    pub x: Vec<Rational>,
    pub y: Vec<Rational>,
    pub qstar_tilde: BigInt,
}

/// One checked identity: both sides of a bilinear-form evaluation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LemmaPair {
    pub label: &'static str,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl LemmaPair {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug)]
pub struct LemmaReport {
    pub quantities: ProofQuantities,
    pub pairs: Vec<LemmaPair>,
}

impl LemmaReport {
    pub fn all_hold(&self) -> bool {
        self.pairs.iter().all(LemmaPair::holds)
    }
}

/// Evaluates the six bilinear-form identities used to derive the theta
/// formula, each against its closed form.
pub fn lemma_report(a1: &CFString, a2ext: &CFString) -> Result<LemmaReport> {
    let q = assemble(a1, a2ext)?;
    let inv = q.matrix.inverse()?;
    let val1 = a1.evaluate()?;
    let (pt, qt) = (val1.numer().clone(), val1.denom().clone());
    let val2 = a2ext.evaluate()?;
    let (p, qq) = (val2.numer().clone(), val2.denom().clone());
    let p_minus_q = &p - &qq;
    let q_over = Rational::new(qq.clone(), p_minus_q.clone());

    let alpha = -Rational::one() + Rational::new(BigInt::one() + &qt, pt.clone());
    let beta = Rational::new(BigInt::one() - &qt, pt.clone());
    let qstar_tilde = crate::rational::mod_inverse(&qt, &pt)?;

    let x = q.x_vector();
    let y = q.y_vector();
    let size = q.size();
    let mut y_a1 = vec![Rational::zero(); size];
    let mut y_a3 = vec![Rational::zero(); size];
    y_a1[..q.n1].clone_from_slice(&y[..q.n1]);
    let off = q.n1 + q.n2 + 1;
    y_a3[off..].clone_from_slice(&y[off..]);

    let one = Rational::one();
    let inv_pmq = Rational::new(BigInt::one(), p_minus_q.clone());

    let mut pairs = Vec::new();
    // x^T Q^{-1} x = 2 n2 + 3 - sum(a2) - 1/[reversed lowered]
    let sum_a2: BigInt = q.a2ext.entries().iter().sum();
    let tail = reversed_lowered(&q.a2ext).evaluate()?;
    pairs.push(LemmaPair {
        label: "x_Qinv_x",
        lhs: inv.quad_form(&x, &x)?,
        rhs: rat_int(2 * q.n2 as i64 + 3) - Rational::from(sum_a2) - tail.recip(),
    });
    // x^T Q^{-1} y = (alpha + beta)(1 - 1/(p-q))
    pairs.push(LemmaPair {
        label: "x_Qinv_y",
        lhs: inv.quad_form(&x, &y)?,
        rhs: (&alpha + &beta) * (&one - &inv_pmq),
    });
    // y_a1^T Q^{-1} y_a3 = -alpha beta q/(p-q)
    pairs.push(LemmaPair {
        label: "ya1_Qinv_ya3",
        lhs: inv.quad_form(&y_a1, &y_a3)?,
        rhs: -(&alpha * &beta) * &q_over,
    });
    // y_a1^T Q^{-1} y_a1 = -2 alpha - alpha^2 q/(p-q) - (n3 - 1) + (qt - qt*)/pt
    let qt_drift = Rational::new(&qt - &qstar_tilde, pt.clone());
    pairs.push(LemmaPair {
        label: "ya1_Qinv_ya1",
        lhs: inv.quad_form(&y_a1, &y_a1)?,
        rhs: rat_int(-2) * &alpha - (&alpha * &alpha) * &q_over - rat_int(q.n3 as i64 - 1)
            + &qt_drift,
    });
    // y_a3^T Q^{-1} y_a3 = -2 beta - beta^2 q/(p-q) - (n1 - 1) + (qt* - qt)/pt
    pairs.push(LemmaPair {
        label: "ya3_Qinv_ya3",
        lhs: inv.quad_form(&y_a3, &y_a3)?,
        rhs: rat_int(-2) * &beta - (&beta * &beta) * &q_over - rat_int(q.n1 as i64 - 1) - &qt_drift,
    });
    // y^T Q^{-1} y = 2(pt-2)/pt - (n1 + n3 - 2) - ((pt-2)/pt)^2 q/(p-q)
    let ratio = Rational::new(&pt - BigInt::from(2), pt.clone());
    pairs.push(LemmaPair {
        label: "y_Qinv_y",
        lhs: inv.quad_form(&y, &y)?,
        rhs: rat_int(2) * &ratio - rat_int((q.n1 + q.n3) as i64 - 2) - (&ratio * &ratio) * &q_over,
    });

    Ok(LemmaReport {
        quantities: ProofQuantities {
            alpha,
            beta,
            x,
            y,
            qstar_tilde,
        },
        pairs,
    })
}

/// Theta of the two non-balanced structures on `Y(e0; 1/2, q/p, 1/2)` for
/// `e0 >= 0`, where `p/q > 1` expands as `[a_1, ..., a_k]`.
///
/// With `p'/q' = [a_1, ..., a_{k-1}]` (`p' = 1, q' = 0` for `k = 1`) and
/// denominator `(e0+1)p + q`:
/// minus: `-(sum(a) - (3k + e0 - 2)) - ((e0+1)p' + q')/((e0+1)p + q)`;
/// plus adds one and subtracts `((e0-3)p + q + 4)/((e0+1)p + q)`.
pub fn theta_nonbalanced(e0: i64, pq: &Rational, sign: Sign) -> Result<Rational> {
    if e0 < 0 {
        return Err(domain(format!(
            "non-balanced theta needs e0 >= 0, got {e0}"
        )));
    }
    if *pq <= Rational::one() {
        return Err(domain(format!(
            "non-balanced theta needs p/q > 1, got {pq}"
        )));
    }
    let s = crate::cf::expand(pq)?;
    let k = s.len() as i64;
    let (p, q) = (pq.numer().clone(), pq.denom().clone());
    let (pp, qp) = if s.len() == 1 {
        (BigInt::one(), BigInt::zero())
    } else {
        let head = CFString::strict(s.entries()[..s.len() - 1].to_vec())?;
        let v = head.evaluate()?;
        (v.numer().clone(), v.denom().clone())
    };
    let denom = BigInt::from(e0 + 1) * &p + &q;
    let frac1 = Rational::new(BigInt::from(e0 + 1) * &pp + &qp, denom.clone());
    let sum_a: BigInt = s.entries().iter().sum();
    match sign {
        Sign::Minus => Ok(-(Rational::from(sum_a) - rat_int(3 * k + e0 - 2)) - frac1),
        Sign::Plus => {
            let frac2 = Rational::new(BigInt::from(e0 - 3) * &p + &q + BigInt::from(4), denom);
            Ok(-(Rational::from(sum_a) - rat_int(3 * k + e0 - 1)) - frac1 - frac2)
        }
    }
}

/// Independent route to the plus-structure theta: `-I(r/s) - frac1 - frac2`
/// where `r/s` is the value of `[2 x e0, a_1 + 1, a_2, ..., a_k]`, expanded
/// afresh so the `I`-value comes from the canonical expansion.
pub fn theta_plus_via_twist(e0: i64, pq: &Rational) -> Result<Rational> {
    if e0 < 0 || *pq <= Rational::one() {
        return Err(domain("twist route needs e0 >= 0 and p/q > 1"));
    }
    let s = crate::cf::expand(pq)?;
    let mut entries = vec![BigInt::from(2); usize::try_from(e0).unwrap()];
    let mut tail = s.entries().to_vec();
    tail[0] += 1;
    entries.extend(tail);
    let rs = CFString::strict(entries)?.evaluate()?;
    let i = crate::cf::expand(&rs)?.i_value();
    let (p, q) = (pq.numer().clone(), pq.denom().clone());
    let (pp, qp) = if s.len() == 1 {
        (BigInt::one(), BigInt::zero())
    } else {
        let v = CFString::strict(s.entries()[..s.len() - 1].to_vec())?.evaluate()?;
        (v.numer().clone(), v.denom().clone())
    };
    let denom = BigInt::from(e0 + 1) * &p + &q;
    let frac1 = Rational::new(BigInt::from(e0 + 1) * &pp + &qp, denom.clone());
    let frac2 = Rational::new(BigInt::from(e0 - 3) * &p + &q + BigInt::from(4), denom);
    Ok(-Rational::from(i) - frac1 - frac2)
}

/// The denominator identity behind the twist route:
/// `((e0+1)p' + q')/((e0+1)p + q) = 1/[a_k, ..., a_2, a_1 + 1, 2 x e0]`.
pub fn framing_fraction_identity(e0: i64, pq: &Rational) -> Result<(Rational, Rational)> {
    if e0 < 0 || *pq <= Rational::one() {
        return Err(domain("identity needs e0 >= 0 and p/q > 1"));
    }
    let s = crate::cf::expand(pq)?;
    let (p, q) = (pq.numer().clone(), pq.denom().clone());
    let (pp, qp) = if s.len() == 1 {
        (BigInt::one(), BigInt::zero())
    } else {
        let v = CFString::strict(s.entries()[..s.len() - 1].to_vec())?.evaluate()?;
        (v.numer().clone(), v.denom().clone())
    };
    let lhs = Rational::new(
        BigInt::from(e0 + 1) * &pp + &qp,
        BigInt::from(e0 + 1) * &p + &q,
    );
    let mut entries: Vec<BigInt> = s.entries().iter().rev().cloned().collect();
    entries[s.len() - 1] += 1;
    entries.extend(vec![BigInt::from(2); usize::try_from(e0).unwrap()]);
    let rhs = CFString::strict(entries)?.evaluate()?.recip();
    Ok((lhs, rhs))
}

/// Convenience: run both theta routes and insist they agree.
pub fn theta_canonical_checked(a1: &CFString, a2ext: &CFString) -> Result<ThetaResult> {
    let f = theta_formula(a1, a2ext)?;
    let m = theta_matrix(a1, a2ext)?;
    if f != m {
        return Err(Error::Internal(format!(
            "theta routes disagree for a1={a1}, a2ext={a2ext}: formula {} vs matrix {}",
            fmt_rational(&f.theta),
            fmt_rational(&m.theta)
        )));
    }
    Ok(f)
}
