//! Hirzebruch-Jung continued fractions.
//!
//! `[a_0, a_1, ..., a_n]` denotes `a_0 - 1/(a_1 - 1/(... - 1/a_n))`. Strict
//! strings have every entry `>= 2`; they are exactly the unique expansions of
//! rationals `> 1`. Relaxed strings allow arbitrary entries and may fail to
//! evaluate, which is reported as [`Error::DivisionByZero`] rather than a
//! wrong value.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::rational::{floor_int, mod_inverse, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Strictness {
    /// All entries `>= 2`; evaluates to a rational `> 1`.
    Strict,
    /// Arbitrary integer entries; evaluation may fail.
    Relaxed,
}

/// A finite Hirzebruch-Jung coefficient string.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CFString {
    entries: Vec<BigInt>,
    strictness: Strictness,
}

fn to_bigs<T: Into<BigInt>>(entries: impl IntoIterator<Item = T>) -> Vec<BigInt> {
    entries.into_iter().map(Into::into).collect()
}

impl CFString {
    /// A strict string; every entry must be `>= 2`. The empty string is
    /// allowed and stands for the framing-split boundary case `1/[] = 0`.
    pub fn strict<T: Into<BigInt>>(entries: impl IntoIterator<Item = T>) -> Result<Self> {
        let entries = to_bigs(entries);
        let two = BigInt::from(2);
        if let Some(bad) = entries.iter().find(|a| **a < two) {
            return Err(domain(format!("strict string entry {bad} < 2")));
        }
        Ok(CFString {
            entries,
            strictness: Strictness::Strict,
        })
    }

    /// A relaxed string; no entry restrictions.
    pub fn relaxed<T: Into<BigInt>>(entries: impl IntoIterator<Item = T>) -> Self {
        CFString {
            entries: to_bigs(entries),
            strictness: Strictness::Relaxed,
        }
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn strictness(&self) -> Strictness {
        self.strictness
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_strict(&self) -> bool {
        self.strictness == Strictness::Strict
    }

    fn require_strict(&self, op: &str) -> Result<()> {
        if !self.is_strict() {
            return Err(domain(format!("{op} requires a strict string")));
        }
        if self.is_empty() {
            return Err(domain(format!("{op} requires a nonempty string")));
        }
        Ok(())
    }

    /// Value of the nested expression. Errors on the empty string (which has
    /// no finite value) and on relaxed strings whose tail evaluates to zero.
    pub fn evaluate(&self) -> Result<Rational> {
        if self.is_empty() {
            return Err(domain("empty continued fraction has no finite value"));
        }
        let mut acc: Option<Rational> = None;
        for a in self.entries.iter().rev() {
            let a = Rational::from(a.clone());
            acc = Some(match acc {
                None => a,
                Some(t) => {
                    if t.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    a - t.recip()
                }
            });
        }
        Ok(acc.unwrap())
    }

    /// `1/value`, with the convention that the empty string contributes `0`.
    pub fn recip_value(&self) -> Result<Rational> {
        if self.is_empty() {
            return Ok(Rational::zero());
        }
        let v = self.evaluate()?;
        if v.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(v.recip())
    }

    /// The dual string computed by the Riemenschneider point rule: row `i`
    /// of the dot diagram carries `a_i - 1` dots, each row starting under
    /// the last dot of the previous one, and the dual is read off columns.
    /// Sends the expansion of `p/q` to the expansion of `p/(p-q)`.
    pub fn dual(&self) -> Result<CFString> {
        self.require_strict("dual")?;
        let mut widths = Vec::with_capacity(self.len());
        let mut cols = 1usize;
        let two = BigInt::from(2);
        for a in &self.entries {
            let w = usize::try_from(a - &two)
                .map_err(|_| domain(format!("entry {a} too large for dual expansion")))?;
            cols = cols
                .checked_add(w)
                .ok_or_else(|| domain("dual expansion length overflows"))?;
            widths.push(w);
        }
        // difference array over columns; row i covers [start, start + w_i]
        let mut diff = vec![0i64; cols + 1];
        let mut start = 0usize;
        for w in widths {
            diff[start] += 1;
            diff[start + w + 1] -= 1;
            start += w;
        }
        let mut out = Vec::with_capacity(cols);
        let mut depth = 0i64;
        for d in diff.iter().take(cols) {
            depth += d;
            out.push(BigInt::from(depth + 1));
        }
        CFString::strict(out)
    }

    /// `p/q*` where the string has value `p/q` and `q*` is the inverse of
    /// `q` mod `p`. Equals the value of the reversed string.
    pub fn reversed_value(&self) -> Result<Rational> {
        self.require_strict("reversed_value")?;
        let v = self.evaluate()?;
        let (p, q) = (v.numer().clone(), v.denom().clone());
        if q.is_one() {
            // value p/1: the reversed string still evaluates to p/1
            return Ok(v);
        }
        let qs = mod_inverse(&q, &p)?;
        Ok(Rational::new(p, qs))
    }

    /// The string literally reversed, same strictness.
    pub fn reversed(&self) -> CFString {
        let mut entries = self.entries.clone();
        entries.reverse();
        CFString {
            entries,
            strictness: self.strictness,
        }
    }

    /// Lisca's complexity count `I = sum(a_i - 3)`.
    pub fn i_value(&self) -> BigInt {
        let three = BigInt::from(3);
        self.entries.iter().map(|a| a - &three).sum()
    }
}

impl fmt::Display for CFString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for CFString {
    type Err = Error;

    /// Parses `"[2,2,3]"` (strict when all entries are `>= 2`, relaxed
    /// otherwise) and `"[]"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected bracketed string, got {s:?}")))?;
        let inner = inner.trim();
        if inner.is_empty() {
            return CFString::strict(Vec::<BigInt>::new());
        }
        let mut entries = Vec::new();
        for tok in inner.split(',') {
            let a: BigInt = tok
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad entry {tok:?} in {s:?}")))?;
            entries.push(a);
        }
        let two = BigInt::from(2);
        if entries.iter().all(|a| *a >= two) {
            CFString::strict(entries)
        } else {
            Ok(CFString::relaxed(entries))
        }
    }
}

/// The unique strict expansion of a rational `r > 1`.
///
/// Uses the ceiling recurrence `a_0 = ceil(r)`, tail `= expand(1/(a_0 - r))`;
/// the reciprocal's denominator strictly decreases, so it terminates.
pub fn expand(r: &Rational) -> Result<CFString> {
    if *r <= Rational::one() {
        return Err(domain(format!("expansion needs a value > 1, got {r}")));
    }
    let mut p = r.numer().clone();
    let mut q = r.denom().clone();
    let mut entries = Vec::new();
    loop {
        let a = p.div_ceil(&q);
        let rem = &a * &q - &p; // numerator of a - p/q, in [0, q)
        entries.push(a);
        if rem.is_zero() {
            break;
        }
        debug_assert!(rem < q);
        p = std::mem::replace(&mut q, rem);
    }
    CFString::strict(entries)
}

/// The unique split `x = -n + 1/v` with `v` strict (value `> 1`) or empty.
///
/// Total over all rationals: `n = -floor(x)` and the remainder `x + n` lies
/// in `[0, 1)`; a zero remainder yields the empty string under the
/// convention `1/[] = 0`, which happens exactly at integer `x`.
pub fn split_framing(x: &Rational) -> (BigInt, CFString) {
    let n = -floor_int(x);
    let rem = x + Rational::from(n.clone());
    let s = if rem.is_zero() {
        CFString::strict(Vec::<BigInt>::new()).unwrap()
    } else {
        expand(&rem.recip()).expect("reciprocal of a value in (0,1) is > 1")
    };
    (n, s)
}

/// Both sides of the leading-two-run reduction identity.
///
/// For `s = [2 x t, a_t, ...]` with `t >= 1` and `a_t > 2`, of value `p/q`,
/// returns `((p-q)/q', value of [a_t - 1, a_{t+1}, ...])` where
/// `0 < q' < p-q` is the reduction of `q` mod `p-q`. The two components are
/// always equal; callers assert this.
pub fn two_run_reduction(s: &CFString) -> Result<(Rational, Rational)> {
    s.require_strict("two_run_reduction")?;
    let two = BigInt::from(2);
    let t = s.entries.iter().take_while(|a| **a == two).count();
    if t == 0 || t == s.len() {
        return Err(domain(
            "string must be a nonempty 2-run followed by an entry > 2",
        ));
    }
    let v = s.evaluate()?;
    let d = v.numer() - v.denom();
    let q1 = v.denom().mod_floor(&d);
    if q1.is_zero() {
        return Err(Error::Internal(
            "reduction of q mod p-q vanished on admissible shape".into(),
        ));
    }
    let lhs = Rational::new(d, q1);
    let mut tail: Vec<BigInt> = s.entries[t..].to_vec();
    tail[0] -= 1;
    let rhs = CFString::strict(tail)?.evaluate()?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn strict(e: &[i64]) -> CFString {
        CFString::strict(e.to_vec()).unwrap()
    }

    #[test]
    fn expand_examples() {
        assert_eq!(expand(&rat(3, 1)).unwrap(), strict(&[3]));
        assert_eq!(expand(&rat(7, 5)).unwrap(), strict(&[2, 2, 3]));
        assert_eq!(expand(&rat(9, 2)).unwrap(), strict(&[5, 2]));
        assert!(expand(&rat(1, 1)).is_err());
        assert!(expand(&rat(2, 3)).is_err());
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(strict(&[2, 2]).evaluate().unwrap(), rat(3, 2));
        assert_eq!(CFString::relaxed(vec![1]).evaluate().unwrap(), rat(1, 1));
        assert_eq!(strict(&[4, 2]).evaluate().unwrap(), rat(7, 2));
        // all-2 string of length n evaluates to (n+1)/n
        for n in 1..20 {
            let s = strict(&vec![2i64; n]);
            assert_eq!(s.evaluate().unwrap(), rat(n as i64 + 1, n as i64));
        }
    }

    #[test]
    fn relaxed_zero_tail_is_an_error_not_a_value() {
        // [1,1] evaluates to 0; using it as a tail divides by zero
        assert_eq!(CFString::relaxed(vec![1, 1]).evaluate().unwrap(), rat(0, 1));
        assert_eq!(
            CFString::relaxed(vec![2, 1, 1]).evaluate(),
            Err(Error::DivisionByZero)
        );
        assert_eq!(
            CFString::relaxed(vec![1, 1]).recip_value(),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn dual_examples() {
        assert_eq!(strict(&[2]).dual().unwrap(), strict(&[2]));
        assert_eq!(strict(&[2, 2, 3]).dual().unwrap(), strict(&[4, 2]));
        // 9/2 <-> 9/7
        assert_eq!(strict(&[5, 2]).dual().unwrap(), strict(&[2, 2, 2, 3]));
        assert_eq!(
            strict(&[5, 2]).dual().unwrap().evaluate().unwrap(),
            rat(9, 7)
        );
        assert_eq!(strict(&[3]).dual().unwrap(), strict(&[2, 2]));
    }

    #[test]
    fn dual_matches_value_route_on_grid() {
        // dual(s) must be the expansion of p/(p-q)
        for s in crate::verify::strict_strings(4, 6) {
            let v = s.evaluate().unwrap();
            let d = s.dual().unwrap();
            let dv = Rational::new(v.numer().clone(), v.numer() - v.denom());
            assert_eq!(d.evaluate().unwrap(), dv, "dual of {s}");
            assert_eq!(d.dual().unwrap(), s, "involution at {s}");
        }
    }

    #[test]
    fn reversed_value_examples() {
        assert_eq!(strict(&[3, 2]).reversed_value().unwrap(), rat(5, 3));
        assert_eq!(strict(&[5, 2]).reversed_value().unwrap(), rat(9, 5));
        // palindrome
        assert_eq!(strict(&[2, 2, 2]).reversed_value().unwrap(), rat(4, 3));
        // matches literally reversing the string
        for s in crate::verify::strict_strings(4, 5) {
            assert_eq!(
                s.reversed_value().unwrap(),
                s.reversed().evaluate().unwrap(),
                "reversal of {s}"
            );
        }
    }

    #[test]
    fn i_value_examples() {
        assert_eq!(strict(&[3]).i_value(), BigInt::from(0));
        assert_eq!(strict(&[5, 2]).i_value(), BigInt::from(1));
        assert_eq!(strict(&[2, 2, 3]).i_value(), BigInt::from(-2));
    }

    #[test]
    fn split_framing_examples() {
        let (n, s) = split_framing(&rat(-7, 3));
        assert_eq!((n, s), (BigInt::from(3), strict(&[2, 2])));
        let (n, s) = split_framing(&rat(-2, 1));
        assert_eq!(n, BigInt::from(2));
        assert!(s.is_empty());
        // -5/4 = -2 + 1/(4/3), and 4/3 = [2,2,2]
        let (n, s) = split_framing(&rat(-5, 4));
        assert_eq!((n, s), (BigInt::from(2), strict(&[2, 2, 2])));
        // positive and zero inputs also split (needed by the surgery
        // presentations with e0 <= -2)
        let (n, s) = split_framing(&rat(2, 1));
        assert_eq!(n, BigInt::from(-2));
        assert!(s.is_empty());
        let (n, s) = split_framing(&rat(3, 5));
        assert_eq!((n, s), (BigInt::from(0), strict(&[2, 3])));
    }

    #[test]
    fn split_framing_reconstructs() {
        for p in 1..40i64 {
            for q in 1..12i64 {
                for sign in [-1, 1] {
                    let x = rat(sign * p, q);
                    let (n, s) = split_framing(&x);
                    let back = -Rational::from(n) + s.recip_value().unwrap();
                    assert_eq!(back, x);
                    if !x.denom().is_one() {
                        assert!(!s.is_empty() && s.is_strict());
                    }
                }
            }
        }
    }

    #[test]
    fn two_run_reduction_examples() {
        let (l, r) = two_run_reduction(&strict(&[2, 3])).unwrap();
        assert_eq!((l.clone(), r.clone()), (rat(2, 1), rat(2, 1)));
        let (l, r) = two_run_reduction(&strict(&[2, 2, 4])).unwrap();
        assert_eq!((l, r), (rat(3, 1), rat(3, 1)));
        let (l, r) = two_run_reduction(&strict(&[2, 5])).unwrap();
        assert_eq!((l, r), (rat(4, 1), rat(4, 1)));
        assert!(two_run_reduction(&strict(&[3, 2])).is_err());
        assert!(two_run_reduction(&strict(&[2, 2])).is_err());
    }

    #[test]
    fn display_and_parse() {
        let s = strict(&[2, 2, 3]);
        assert_eq!(s.to_string(), "[2,2,3]");
        assert_eq!("[2,2,3]".parse::<CFString>().unwrap(), s);
        let e: CFString = "[]".parse().unwrap();
        assert!(e.is_empty() && e.is_strict());
        let r: CFString = "[2,1,3]".parse().unwrap();
        assert_eq!(r.strictness(), Strictness::Relaxed);
        assert!("2,2".parse::<CFString>().is_err());
    }
}
