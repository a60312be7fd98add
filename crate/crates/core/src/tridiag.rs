//! The tridiagonal building block `M(m_1, ..., m_n)` with diagonal
//! `-m_1, ..., -m_n` and unit off-diagonals, together with its
//! leading/trailing minor vectors and closed-form inverse data.
//!
//! Entries come from a continued-fraction string; the sanctioned shapes are
//! strict strings and the relaxed variant whose first entry is `1` (which
//! appears as the center block of the plumbing inverse when the central
//! framing is `-2`).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cf::CFString;
use crate::error::{domain, Error, Result};
use crate::matrix::ExactMatrix;
use crate::rational::Rational;

/// Leading and trailing minor magnitudes of a tridiagonal block.
///
/// `u = [u_0, ..., u_{n-1}]` with `u_i` the absolute determinant of the
/// top-left `i x i` block (`u_0 = 1`); `v = [v_{n-1}, ..., v_0]` with `v_j`
/// the absolute determinant of the bottom-right `j x j` block.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UVVectors {
    pub u: Vec<BigInt>,
    pub v: Vec<BigInt>,
}

fn check_entries(s: &CFString) -> Result<()> {
    if s.is_empty() {
        return Err(domain("tridiagonal block needs at least one entry"));
    }
    let one = BigInt::one();
    let two = BigInt::from(2);
    let ok = s
        .entries()
        .iter()
        .enumerate()
        .all(|(i, a)| if i == 0 { *a >= one } else { *a >= two });
    if !ok {
        return Err(domain(format!(
            "tridiagonal entries must be >= 2 (first entry may be 1), got {s}"
        )));
    }
    Ok(())
}

/// The matrix `M(m_1, ..., m_n)`.
pub fn matrix(s: &CFString) -> Result<ExactMatrix> {
    check_entries(s)?;
    let n = s.len();
    let mut m = ExactMatrix::zeros(n, n);
    for (i, a) in s.entries().iter().enumerate() {
        m[(i, i)] = -Rational::from(a.clone());
        if i + 1 < n {
            m[(i, i + 1)] = Rational::one();
            m[(i + 1, i)] = Rational::one();
        }
    }
    Ok(m)
}

/// Numerator sequence `s_0 = 1, s_1 = m_1, s_i = m_i s_{i-1} - s_{i-2}` of
/// the leading convergents; `|det|` of the leading `i x i` blocks.
fn leading_minors(entries: &[BigInt]) -> Vec<BigInt> {
    let mut s = Vec::with_capacity(entries.len() + 1);
    s.push(BigInt::one());
    for (i, m) in entries.iter().enumerate() {
        let prev = s[i].clone();
        let prev2 = if i == 0 {
            BigInt::zero()
        } else {
            s[i - 1].clone()
        };
        s.push(m * prev - prev2);
    }
    s.iter().map(|x| x.abs()).collect()
}

pub fn uv_vectors(s: &CFString) -> Result<UVVectors> {
    check_entries(s)?;
    let n = s.len();
    let lead = leading_minors(s.entries());
    let u = lead[..n].to_vec();
    let rev: Vec<BigInt> = s.entries().iter().rev().cloned().collect();
    let trail = leading_minors(&rev);
    let mut v = trail[..n].to_vec();
    v.reverse();
    Ok(UVVectors { u, v })
}

/// `det M`; always equals `(-1)^n s` for value `s/t` of the string.
pub fn signed_det(s: &CFString) -> Result<BigInt> {
    check_entries(s)?;
    let lead = leading_minors(s.entries());
    let n = s.len();
    let d = lead[n].clone();
    Ok(if n.is_multiple_of(2) { d } else { -d })
}

/// Closed-form inverse: `(M^{-1})_{ij} = -u_i v_j / s` for `i <= j` in the
/// stored index convention, symmetric below.
pub fn inverse(s: &CFString) -> Result<ExactMatrix> {
    let UVVectors { u, v } = uv_vectors(s)?;
    let n = s.len();
    let det = signed_det(s)?;
    let snum = det.abs();
    if snum.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let mut m = ExactMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let e = Rational::new(-(&u[i] * &v[j]), snum.clone());
            m[(i, j)] = e.clone();
            m[(j, i)] = e;
        }
    }
    Ok(m)
}

/// First and last columns of `M^{-1}`: `-(1/s) v` and `-(1/s) u`.
pub fn edge_columns(s: &CFString) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let UVVectors { u, v } = uv_vectors(s)?;
    let snum = signed_det(s)?.abs();
    if snum.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let col = |w: &[BigInt]| {
        w.iter()
            .map(|x| Rational::new(-x.clone(), snum.clone()))
            .collect()
    };
    Ok((col(&v), col(&u)))
}

/// The first-column dot-product identity and the bordered determinant that
/// proves it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DotIdentity {
    /// `first_col(M^{-1}) . (m_1 - 2, ..., m_n - 2)`
    pub lhs: Rational,
    /// `-1 + (1 + t)/s`
    pub rhs: Rational,
    /// Determinant of `M` with its first column replaced by `(m_i - 2)`.
    pub det_m1: BigInt,
    /// `(-1)^{n+1} (s - t - 1)`
    pub det_m1_formula: BigInt,
}

/// Evaluates the dot-product identity for a strict string of value `s/t`.
pub fn dot_identity(s: &CFString) -> Result<DotIdentity> {
    if !s.is_strict() {
        return Err(domain("dot identity needs a strict string"));
    }
    let v = s.evaluate()?;
    let (snum, t) = (v.numer().clone(), v.denom().clone());
    let (first, _) = edge_columns(s)?;
    let two = BigInt::from(2);
    let lhs: Rational = first
        .iter()
        .zip(s.entries())
        .map(|(c, a)| c * Rational::from(a - &two))
        .sum();
    let rhs = -Rational::one() + Rational::new(BigInt::one() + &t, snum.clone());

    let n = s.len();
    let mut m1 = matrix(s)?;
    for (i, a) in s.entries().iter().enumerate() {
        m1[(i, 0)] = Rational::from(a - &two);
    }
    let det_m1_r = m1.determinant()?;
    debug_assert!(det_m1_r.denom().is_one());
    let det_m1 = det_m1_r.numer().clone();
    let k = snum - t - BigInt::one();
    let det_m1_formula = if n.is_multiple_of(2) { -k } else { k };
    Ok(DotIdentity {
        lhs,
        rhs,
        det_m1,
        det_m1_formula,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn strict(e: &[i64]) -> CFString {
        CFString::strict(e.to_vec()).unwrap()
    }

    fn bigs(e: &[i64]) -> Vec<BigInt> {
        e.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn uv_examples() {
        let uv = uv_vectors(&strict(&[2])).unwrap();
        assert_eq!((uv.u, uv.v), (bigs(&[1]), bigs(&[1])));
        let uv = uv_vectors(&strict(&[3, 2])).unwrap();
        assert_eq!((uv.u, uv.v), (bigs(&[1, 3]), bigs(&[2, 1])));
        let uv = uv_vectors(&strict(&[2, 2, 2])).unwrap();
        assert_eq!((uv.u, uv.v), (bigs(&[1, 2, 3]), bigs(&[3, 2, 1])));
    }

    #[test]
    fn signed_det_examples() {
        assert_eq!(signed_det(&strict(&[2])).unwrap(), BigInt::from(-2));
        assert_eq!(signed_det(&strict(&[5, 2])).unwrap(), BigInt::from(9));
        assert_eq!(signed_det(&strict(&[2, 2, 3])).unwrap(), BigInt::from(-7));
        // relaxed first entry 1: [1,2] has value 1/2, det = (+1) * 1
        let relaxed = CFString::relaxed(vec![1, 2]);
        assert_eq!(signed_det(&relaxed).unwrap(), BigInt::from(1));
        assert_eq!(
            signed_det(&CFString::relaxed(vec![1])).unwrap(),
            BigInt::from(-1)
        );
    }

    #[test]
    fn edge_column_examples() {
        let (first, last) = edge_columns(&strict(&[3])).unwrap();
        assert_eq!(first, vec![rat(-1, 3)]);
        assert_eq!(last, vec![rat(-1, 3)]);
        let (first, _) = edge_columns(&strict(&[3, 2])).unwrap();
        assert_eq!(first, vec![rat(-2, 5), rat(-1, 5)]);
        let (_, last) = edge_columns(&strict(&[2, 2])).unwrap();
        assert_eq!(last, vec![rat(-1, 3), rat(-2, 3)]);
    }

    #[test]
    fn closed_form_inverse_matches_elimination() {
        for s in crate::verify::strict_strings(4, 6) {
            let closed = inverse(&s).unwrap();
            let direct = matrix(&s).unwrap().inverse().unwrap();
            assert_eq!(closed, direct, "inverse of {s}");
        }
        // relaxed first entry 1
        for tail in crate::verify::strict_strings(3, 5) {
            let mut e = vec![BigInt::from(1)];
            e.extend(tail.entries().iter().cloned());
            let s = CFString::relaxed(e);
            let closed = inverse(&s).unwrap();
            let direct = matrix(&s).unwrap().inverse().unwrap();
            assert_eq!(closed, direct, "relaxed inverse of {s}");
        }
    }

    #[test]
    fn dot_identity_examples() {
        let d = dot_identity(&strict(&[3])).unwrap();
        assert_eq!(d.lhs, rat(-1, 3));
        assert_eq!(d.rhs, rat(-1, 3));
        let d = dot_identity(&strict(&[4, 3])).unwrap();
        assert_eq!(d.rhs, rat(-7, 11));
        assert_eq!(d.lhs, d.rhs);
        // all-2 chain: zero vector dotted, and rhs = -1 + (1+n)/(n+1) = 0
        for n in 1..8 {
            let d = dot_identity(&strict(&vec![2i64; n])).unwrap();
            assert_eq!(d.lhs, rat(0, 1));
            assert_eq!(d.rhs, rat(0, 1));
            assert_eq!(d.det_m1, d.det_m1_formula);
        }
    }

    #[test]
    fn v_first_entry_is_denominator() {
        for s in crate::verify::strict_strings(4, 6) {
            let uv = uv_vectors(&s).unwrap();
            let val = s.evaluate().unwrap();
            assert_eq!(&uv.v[0], val.denom(), "v leading entry of {s}");
            let det = signed_det(&s).unwrap();
            let expect = if s.len() % 2 == 0 {
                val.numer().clone()
            } else {
                -val.numer()
            };
            assert_eq!(det, expect, "det contract of {s}");
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(matrix(&CFString::strict(Vec::<BigInt>::new()).unwrap()).is_err());
        assert!(matrix(&CFString::relaxed(vec![2, 1, 2])).is_err());
        assert!(matrix(&CFString::relaxed(vec![0, 2])).is_err());
    }
}
