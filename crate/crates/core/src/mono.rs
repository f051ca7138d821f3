//! Exponent tuples of `E^t_m`, base-p digits, multinomial coefficients and the
//! digit-product counting formulas built on them.
//!
//! Tuples are ordered descending-lexicographically, so `(t, 0, ..., 0)` has rank 0
//! and `(0, ..., 0, t)` is last. Every coordinate vector in [`crate::vero`] uses
//! this order.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoError {
    #[error("index {index} out of range for {len} exponent tuples")]
    IndexOutOfRange { index: u64, len: u128 },
    #[error("exponent tuple {0} is not in E^{1}_{2}")]
    NotInSet(ExponentTuple, u32, usize),
    #[error("cannot parse exponent tuple {0:?}")]
    BadTuple(String),
}

/// `(e_0, ..., e_m)` with nonnegative entries; its degree is the entry sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentTuple(Vec<u32>);

impl ExponentTuple {
    pub fn new(exps: Vec<u32>) -> Self {
        ExponentTuple(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    /// Projective dimension `m` of the source space (tuple length minus one).
    pub fn m(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Unit tuple `t * e_i` of length `m + 1`.
    pub fn pure_power(m: usize, i: usize, t: u32) -> Self {
        let mut v = vec![0; m + 1];
        v[i] = t;
        ExponentTuple(v)
    }
}

impl fmt::Display for ExponentTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for ExponentTuple {
    type Err = MonoError;

    /// `e0,e1,...` with optional surrounding parentheses.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        inner
            .split(',')
            .map(|x| x.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map(ExponentTuple)
            .map_err(|_| MonoError::BadTuple(s.to_string()))
    }
}

impl From<Vec<u32>> for ExponentTuple {
    fn from(v: Vec<u32>) -> Self {
        ExponentTuple(v)
    }
}

/// Exact `C(n, k)` by the running update `C(n, i+1) = C(n, i) (n-i) / (i+1)`.
///
/// Panics if the value does not fit in a `u128`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(u128::from(n - i)).expect("binomial coefficient overflows u128") / u128::from(i + 1);
    }
    acc
}

/// `|E^t_m| = C(m + t, t)`.
pub fn num_exponents(m: usize, t: u32) -> u128 {
    binomial(m as u64 + u64::from(t), u64::from(t))
}

/// All of `E^t_m` in descending lexicographic order.
pub fn enumerate_exponents(m: usize, t: u32) -> Vec<ExponentTuple> {
    let mut out = Vec::with_capacity(num_exponents(m, t) as usize);
    let mut cur = vec![0u32; m + 1];
    fill(&mut cur, 0, t, &mut out);
    out
}

fn fill(cur: &mut [u32], pos: usize, rem: u32, out: &mut Vec<ExponentTuple>) {
    if pos + 1 == cur.len() {
        cur[pos] = rem;
        out.push(ExponentTuple(cur.to_vec()));
        return;
    }
    for v in (0..=rem).rev() {
        cur[pos] = v;
        fill(cur, pos + 1, rem - v, out);
    }
}

/// Position of `e` in [`enumerate_exponents`]`(e.m(), e.degree())`.
pub fn rank(e: &ExponentTuple) -> u64 {
    let m = e.m();
    let mut rem = e.degree();
    let mut idx: u128 = 0;
    for (i, &ei) in e.0.iter().enumerate().take(m) {
        // Tuples agreeing before position i and larger at i come first.
        let slots = m - i - 1;
        for v in (ei + 1)..=rem {
            idx += num_exponents(slots, rem - v);
        }
        rem -= ei;
    }
    idx as u64
}

pub fn unrank(m: usize, t: u32, index: u64) -> Result<ExponentTuple, MonoError> {
    let len = num_exponents(m, t);
    if u128::from(index) >= len {
        return Err(MonoError::IndexOutOfRange { index, len });
    }
    let mut idx = u128::from(index);
    let mut rem = t;
    let mut out = vec![0u32; m + 1];
    for (i, slot) in out.iter_mut().take(m).enumerate() {
        let slots = m - i - 1;
        let mut v = rem;
        loop {
            let block = num_exponents(slots, rem - v);
            if idx < block {
                break;
            }
            idx -= block;
            v -= 1;
        }
        *slot = v;
        rem -= v;
    }
    out[m] = rem;
    Ok(ExponentTuple(out))
}

/// Base-p digits `n_0, n_1, ...` of a nonnegative integer, least significant first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitVector {
    pub digits: Vec<u32>,
    pub base: u32,
}

impl DigitVector {
    pub fn value(&self) -> u128 {
        self.digits.iter().rev().fold(0u128, |acc, &d| acc * u128::from(self.base) + u128::from(d))
    }

    /// Digit at position `lambda`, zero beyond the stored length.
    pub fn digit(&self, lambda: usize) -> u32 {
        self.digits.get(lambda).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }
}

pub fn base_p_digits(n: u64, p: u32) -> DigitVector {
    let mut digits = Vec::new();
    let mut n = n;
    while n > 0 {
        digits.push((n % u64::from(p)) as u32);
        n /= u64::from(p);
    }
    DigitVector { digits, base: p }
}

/// Exact `t! / (e_0! ... e_m!)`, or 0 when the entries do not sum to `t`.
///
/// Built as the product `C(e_0, e_0) C(e_0+e_1, e_1) ...` of exact binomials. This
/// is the oracle for [`multinomial_mod_p`] and shares no code with it.
pub fn multinomial_exact(t: u32, e: &ExponentTuple) -> BigUint {
    if e.degree() != t {
        return BigUint::default();
    }
    let mut acc = BigUint::one();
    let mut partial: u64 = 0;
    for &ei in e.exps() {
        partial += u64::from(ei);
        let mut c = BigUint::one();
        for i in 0..u64::from(ei) {
            c = c * (partial - i) / (i + 1);
        }
        acc *= c;
    }
    acc
}

/// Multinomial coefficient reduced mod `p`, computed digit by digit as the product
/// over `lambda` of `(t_lambda; e_{0,lambda}, ..., e_{m,lambda})` mod p.
pub fn multinomial_mod_p(t: u32, e: &ExponentTuple, p: u32) -> u32 {
    if e.degree() != t {
        return 0;
    }
    let p64 = u64::from(p);
    let mut t_rest = u64::from(t);
    let mut rest: Vec<u64> = e.exps().iter().map(|&x| u64::from(x)).collect();
    let mut acc: u64 = 1;
    while t_rest > 0 {
        let t_digit = t_rest % p64;
        let mut digit_sum = 0;
        let mut denom: u64 = 1;
        for r in rest.iter_mut() {
            let d = *r % p64;
            *r /= p64;
            digit_sum += d;
            denom = denom * factorial_mod(d, p64) % p64;
        }
        if digit_sum != t_digit {
            return 0;
        }
        acc = acc * factorial_mod(t_digit, p64) % p64 * inverse_mod(denom, p64) % p64;
        t_rest /= p64;
    }
    acc as u32
}

fn factorial_mod(n: u64, p: u64) -> u64 {
    (1..=n).fold(1 % p, |acc, i| acc * i % p)
}

fn inverse_mod(a: u64, p: u64) -> u64 {
    // a^(p-2) mod p; a is a product of factorials of digits, hence a unit.
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1 % p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// True iff adding `e_0 + ... + e_m` in base `p` produces no carries, i.e.
/// `t_lambda = sum_i e_{i,lambda}` at every position.
pub fn carry_free(t: u32, e: &ExponentTuple, p: u32) -> bool {
    if e.degree() != t {
        return false;
    }
    let td = base_p_digits(u64::from(t), p);
    let ed: Vec<DigitVector> = e.exps().iter().map(|&x| base_p_digits(u64::from(x), p)).collect();
    let width = ed.iter().map(DigitVector::len).max().unwrap_or(0).max(td.len());
    (0..width).all(|lambda| {
        let s: u32 = ed.iter().map(|d| d.digit(lambda)).sum();
        s == td.digit(lambda)
    })
}

/// `prod_lambda C(m + t_lambda, t_lambda)`: the number of `e` in `E^t_m` whose
/// multinomial is nonzero mod `p`.
pub fn count_nonvanishing(m: usize, t: u32, p: u32) -> u128 {
    base_p_digits(u64::from(t), p).digits.iter().map(|&d| num_exponents(m, d)).product()
}

/// Projective dimension of the nucleus of the Veronese variety `V^t_m` in
/// characteristic `p` (valid for fields with at least `t` elements):
/// `C(m+t, t) - prod_lambda C(m + t_lambda, t_lambda) - 1`. `-1` means empty.
pub fn nucleus_dim_formula(m: usize, t: u32, p: u32) -> i128 {
    num_exponents(m, t) as i128 - count_nonvanishing(m, t, p) as i128 - 1
}

/// Dimension of the span of all `t`-th powers in the `t`-th symmetric power of an
/// `(m+1)`-dimensional space over a field of characteristic `p` with at least `t`
/// elements. The field-size hypothesis is the caller's responsibility.
pub fn span_of_powers_dim(m: usize, t: u32, p: u32) -> u128 {
    count_nonvanishing(m, t, p)
}

/// Which of the four parameter regimes `(m, t, p)` falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EmptyCase {
    /// `m = 0` or `t <= 1`.
    TrivialParams,
    /// `2 <= t < p`.
    SmallT,
    /// `m = 1`, `t >= p`, and every base-p digit of `t` below the leading one is `p - 1`.
    CurveSpecial,
    /// Everything else; the nucleus is nonempty.
    NonEmpty,
}

impl EmptyCase {
    pub fn is_empty_nucleus(self) -> bool {
        self != EmptyCase::NonEmpty
    }
}

impl fmt::Display for EmptyCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EmptyCase::TrivialParams => "TrivialParams",
            EmptyCase::SmallT => "SmallT",
            EmptyCase::CurveSpecial => "CurveSpecial",
            EmptyCase::NonEmpty => "NonEmpty",
        };
        f.write_str(s)
    }
}

pub fn classify_empty(m: usize, t: u32, p: u32) -> EmptyCase {
    if m == 0 || t <= 1 {
        return EmptyCase::TrivialParams;
    }
    if t < p {
        return EmptyCase::SmallT;
    }
    if m == 1 {
        let d = base_p_digits(u64::from(t), p);
        let (_, below) = d.digits.split_last().expect("t >= p has at least two digits");
        if below.iter().all(|&x| x == p - 1) {
            return EmptyCase::CurveSpecial;
        }
    }
    EmptyCase::NonEmpty
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tup(v: &[u32]) -> ExponentTuple {
        ExponentTuple::new(v.to_vec())
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_exponents(1, 2), vec![tup(&[2, 0]), tup(&[1, 1]), tup(&[0, 2])]);
        assert_eq!(
            enumerate_exponents(2, 2),
            vec![tup(&[2, 0, 0]), tup(&[1, 1, 0]), tup(&[1, 0, 1]), tup(&[0, 2, 0]), tup(&[0, 1, 1]), tup(&[0, 0, 2])]
        );
        assert_eq!(enumerate_exponents(0, 5), vec![tup(&[5])]);
        assert_eq!(enumerate_exponents(3, 0), vec![tup(&[0, 0, 0, 0])]);
    }

    #[test]
    fn rank_unrank_examples() {
        assert_eq!(rank(&tup(&[2, 0])), 0);
        assert_eq!(unrank(1, 2, 2).unwrap(), tup(&[0, 2]));
        assert_eq!(rank(&unrank(2, 3, 7).unwrap()), 7);
        assert_eq!(unrank(1, 2, 3), Err(MonoError::IndexOutOfRange { index: 3, len: 3 }));
    }

    #[test]
    fn rank_matches_enumeration() {
        for m in 0..5 {
            for t in 0..7 {
                let all = enumerate_exponents(m, t);
                assert_eq!(all.len() as u128, num_exponents(m, t));
                for (i, e) in all.iter().enumerate() {
                    assert_eq!(rank(e), i as u64);
                    assert_eq!(&unrank(m, t, i as u64).unwrap(), e);
                }
            }
        }
    }

    #[test]
    fn digits_examples() {
        assert_eq!(base_p_digits(3, 2).digits, vec![1, 1]);
        assert!(base_p_digits(0, 5).is_empty());
        let d = base_p_digits(90, 3);
        assert_eq!(d.digits, vec![0, 0, 1, 0, 1]);
        assert_eq!(9 + 81, 90);
        assert_eq!(d.value(), 90);
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial_exact(3, &tup(&[1, 1, 1])), BigUint::from(6u32));
        assert_eq!(multinomial_exact(2, &tup(&[1, 1, 0])), BigUint::from(2u32));
        assert_eq!(multinomial_exact(4, &tup(&[1, 1, 1, 2])), BigUint::default());
        assert_eq!(multinomial_exact(6, &tup(&[2, 2, 2])), BigUint::from(90u32));

        assert_eq!(multinomial_mod_p(3, &tup(&[1, 1, 1]), 2), 0);
        assert_eq!(multinomial_mod_p(2, &tup(&[1, 1, 0]), 2), 0);
        assert_eq!(multinomial_mod_p(6, &tup(&[2, 2, 2]), 3), 0);
        assert_eq!(multinomial_mod_p(2, &tup(&[1, 1]), 3), 2);
        assert_eq!(multinomial_mod_p(4, &tup(&[1, 1, 1, 2]), 3), 0);
    }

    #[test]
    fn carry_free_examples() {
        assert!(!carry_free(3, &tup(&[1, 1, 1]), 2));
        assert!(carry_free(3, &tup(&[3, 0]), 2));
        assert!(!carry_free(6, &tup(&[2, 2, 2]), 3));
        assert!(carry_free(6, &tup(&[3, 3]), 3) == (multinomial_mod_p(6, &tup(&[3, 3]), 3) != 0));
    }

    #[test]
    fn counting_examples() {
        assert_eq!(count_nonvanishing(2, 2, 2), 3);
        assert_eq!(count_nonvanishing(2, 3, 2), 9);
        assert_eq!(count_nonvanishing(3, 4, 7), num_exponents(3, 4));
        assert_eq!(nucleus_dim_formula(2, 2, 2), 2);
        assert_eq!(nucleus_dim_formula(2, 3, 2), 0);
        assert_eq!(nucleus_dim_formula(1, 3, 2), -1);
        assert_eq!(span_of_powers_dim(2, 3, 2), 9);
        assert_eq!(span_of_powers_dim(1, 3, 2), 4);
        assert_eq!(span_of_powers_dim(2, 2, 3), 6);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_empty(2, 2, 3), EmptyCase::SmallT);
        assert_eq!(classify_empty(1, 3, 2), EmptyCase::CurveSpecial);
        assert_eq!(classify_empty(2, 3, 2), EmptyCase::NonEmpty);
        assert_eq!(classify_empty(0, 9, 2), EmptyCase::TrivialParams);
        assert_eq!(classify_empty(4, 1, 2), EmptyCase::TrivialParams);
        // 17 = 122 in base 3; 8 = 22 and 26 = 222 are of the special form.
        assert_eq!(classify_empty(1, 17, 3), EmptyCase::CurveSpecial);
        assert_eq!(classify_empty(1, 8, 3), EmptyCase::CurveSpecial);
        assert_eq!(classify_empty(1, 26, 3), EmptyCase::CurveSpecial);
        assert_eq!(classify_empty(1, 16, 3), EmptyCase::NonEmpty);
    }

    #[test]
    fn tuple_parsing() {
        assert_eq!("1,1,1".parse::<ExponentTuple>().unwrap(), tup(&[1, 1, 1]));
        assert_eq!("(2, 0)".parse::<ExponentTuple>().unwrap(), tup(&[2, 0]));
        assert!("1,,2".parse::<ExponentTuple>().is_err());
        assert_eq!(tup(&[1, 0, 2]).to_string(), "(1,0,2)");
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 5), 0);
        assert_eq!(binomial(306, 6), 1_085_371_516_236);
    }
}
