//! Finite fields GF(p^k) in the polynomial basis.
//!
//! An element is stored as its *code*, the integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! of its coefficient vector (least degree first). Codes double as the enumeration
//! order: `0, 1, ..., q-1`, which is lexicographic on coefficients read from the
//! highest degree down. Constants of the prime subfield have code equal to their
//! residue.
//!
//! Multiplication goes through discrete log / antilog tables built once per field,
//! which is why the order is capped at [`MAX_ORDER`].

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u32),
    #[error("extension degree must be at least 1")]
    InvalidDegree,
    #[error("field order {p}^{k} exceeds the supported bound {MAX_ORDER}")]
    FieldTooLarge { p: u32, k: u32 },
    #[error("modulus must be monic of degree {expected} with coefficients below {p}")]
    InvalidModulus { expected: u32, p: u32 },
    #[error("modulus {0} is reducible")]
    ReducibleModulus(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("coefficient vector does not describe an element of GF({0})")]
    InvalidCoefficients(u32),
    #[error("cannot parse field spec {0:?}; expected p^k or p^k/c0,c1,...,ck")]
    BadSpec(String),
}

/// An element of some [`Field`]. Carries a fingerprint of its field so that mixing
/// elements of different fields is caught by the checked operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    code: u32,
    field_id: u64,
}

impl FieldElement {
    /// Integer code of the coefficient vector.
    pub fn code(self) -> u32 {
        self.code
    }

    pub fn is_zero(self) -> bool {
        self.code == 0
    }
}

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    id: u64,
    // exp[i] = g^i for i in 0..2(q-1); log[a] for a != 0.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// The field GF(p^k) = GF(p)[x] / (modulus). Cheap to clone.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; {})", self.p(), self.k(), self.modulus_string())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for Field {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_order(p: u32, k: u32) -> Result<u32, GfError> {
    let mut q: u64 = 1;
    for _ in 0..k {
        q *= u64::from(p);
        if q > u64::from(MAX_ORDER) {
            return Err(GfError::FieldTooLarge { p, k });
        }
    }
    Ok(q as u32)
}

// Dense polynomials over GF(p), least degree first, no trailing zeros.
fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = pow_mod(b[db], p - 2, p);
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr] * lead_inv % p;
        for (i, &bi) in b.iter().enumerate() {
            let idx = dr - db + i;
            r[idx] = (r[idx] + p - c * bi % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn pow_mod(mut base: u32, mut exp: u32, p: u32) -> u32 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn digits(mut n: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = n % p;
            n /= p;
            d
        })
        .collect()
}

/// True iff the monic `modulus` (degree >= 1) has no monic factor of degree
/// 1..=deg/2 over GF(p).
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for n in 0..count {
            let mut divisor = digits(n as u32, p, d as u32);
            divisor.push(1);
            if poly_rem(modulus, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `k`, comparing the
/// coefficient tuples `(c_0, ..., c_{k-1})` from `c_0` onwards.
pub fn default_modulus(p: u32, k: u32) -> Vec<u32> {
    let count = checked_order(p, k).unwrap_or(MAX_ORDER);
    for n in 0..count {
        // c_0 is the most significant digit of n.
        let mut coeffs = digits(n, p, k);
        coeffs.reverse();
        coeffs.push(1);
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn field_id(p: u32, modulus: &[u32]) -> u64 {
    // FNV-1a over (p, modulus).
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for w in std::iter::once(p).chain(modulus.iter().copied()) {
        for b in w.to_le_bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

impl Field {
    /// GF(p^k). With `modulus = None` the default modulus is used; a given modulus is
    /// `k + 1` coefficients, least degree first, and must be monic and irreducible.
    pub fn new(p: u32, k: u32, modulus: Option<&[u32]>) -> Result<Self, GfError> {
        if !is_prime(p) {
            return Err(GfError::NonPrimeCharacteristic(p));
        }
        if k == 0 {
            return Err(GfError::InvalidDegree);
        }
        let q = checked_order(p, k)?;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k as usize + 1 || m[k as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(GfError::InvalidModulus { expected: k, p });
                }
                if !is_irreducible(m, p) {
                    return Err(GfError::ReducibleModulus(poly_string(m, p)));
                }
                m.to_vec()
            }
            None => default_modulus(p, k),
        };
        let mut inner = Inner { p, k, q, id: field_id(p, &modulus), modulus, exp: Vec::new(), log: Vec::new() };
        build_tables(&mut inner);
        Ok(Field { inner: Arc::new(inner) })
    }

    /// Prime field GF(p).
    pub fn prime(p: u32) -> Result<Self, GfError> {
        Field::new(p, 1, None)
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn k(&self) -> u32 {
        self.inner.k
    }

    pub fn order(&self) -> u32 {
        self.inner.q
    }

    /// Modulus coefficients, least degree first (length k + 1).
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn modulus_string(&self) -> String {
        poly_string(&self.inner.modulus, self.inner.p)
    }

    /// The `p^k/c0,...,ck` spec string that reconstructs this field.
    pub fn spec_string(&self) -> String {
        let coeffs: Vec<String> = self.inner.modulus.iter().map(u32::to_string).collect();
        format!("{}^{}/{}", self.p(), self.k(), coeffs.join(","))
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// Image of an integer under `Z -> GF(p) -> F`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        self.wrap(n.rem_euclid(i64::from(self.p())) as u32)
    }

    /// Element with the given code. Panics if `code >= q`.
    pub fn elem(&self, code: u32) -> FieldElement {
        assert!(code < self.order(), "code {code} out of range for GF({})", self.order());
        self.wrap(code)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement, GfError> {
        if coeffs.len() > self.k() as usize || coeffs.iter().any(|&c| c >= self.p()) {
            return Err(GfError::InvalidCoefficients(self.order()));
        }
        let code = coeffs.iter().rev().fold(0u32, |acc, &c| acc * self.p() + c);
        Ok(self.wrap(code))
    }

    /// The k coefficients of `a`, least degree first.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        digits(a.code, self.p(), self.k())
    }

    /// All q elements, zero first, in code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |c| self.wrap(c))
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.field_id == self.inner.id && a.code < self.inner.q
    }

    fn wrap(&self, code: u32) -> FieldElement {
        FieldElement { code, field_id: self.inner.id }
    }

    fn check(&self, a: FieldElement) -> Result<u32, GfError> {
        if self.contains(a) {
            Ok(a.code)
        } else {
            Err(GfError::FieldMismatch)
        }
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        Ok(self.wrap(self.add_code(self.check(a)?, self.check(b)?)))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        Ok(self.wrap(self.sub_code(self.check(a)?, self.check(b)?)))
    }

    pub fn neg(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        Ok(self.wrap(self.neg_code(self.check(a)?)))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        Ok(self.wrap(self.mul_code(self.check(a)?, self.check(b)?)))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        let c = self.check(a)?;
        self.inv_code(c).map(|c| self.wrap(c))
    }

    /// `a^n`, with `pow(a, 0) = 1` for every `a` including zero.
    pub fn pow(&self, a: FieldElement, n: u64) -> Result<FieldElement, GfError> {
        Ok(self.wrap(self.pow_code(self.check(a)?, n)))
    }

    /// Human-readable polynomial form, e.g. `x+1` or `2x^2+1`.
    pub fn format(&self, a: FieldElement) -> String {
        poly_string(&self.coeffs(a), self.p())
    }

    // Code-level arithmetic. Callers guarantee every code is below q.

    #[inline]
    pub fn add_code(&self, a: u32, b: u32) -> u32 {
        let Inner { p, k, .. } = *self.inner;
        if p == 2 {
            return a ^ b;
        }
        if k == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b, mut out, mut scale) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            out += (a % p + b % p) % p * scale;
            a /= p;
            b /= p;
            scale *= p;
        }
        out
    }

    #[inline]
    pub fn neg_code(&self, a: u32) -> u32 {
        let Inner { p, k, .. } = *self.inner;
        if p == 2 {
            return a;
        }
        if k == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        let (mut a, mut out, mut scale) = (a, 0, 1);
        while a > 0 {
            out += (p - a % p) % p * scale;
            a /= p;
            scale *= p;
        }
        out
    }

    #[inline]
    pub fn sub_code(&self, a: u32, b: u32) -> u32 {
        self.add_code(a, self.neg_code(b))
    }

    #[inline]
    pub fn mul_code(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let inner = &*self.inner;
        inner.exp[(inner.log[a as usize] + inner.log[b as usize]) as usize]
    }

    pub fn inv_code(&self, a: u32) -> Result<u32, GfError> {
        if a == 0 {
            return Err(GfError::DivisionByZero);
        }
        let inner = &*self.inner;
        let l = inner.log[a as usize];
        Ok(inner.exp[((inner.q - 1 - l) % (inner.q - 1)) as usize])
    }

    pub fn pow_code(&self, a: u32, n: u64) -> u32 {
        if n == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let inner = &*self.inner;
        let e = (u64::from(inner.log[a as usize]) * (n % u64::from(inner.q - 1))) % u64::from(inner.q - 1);
        inner.exp[e as usize]
    }

    /// Product by schoolbook polynomial multiplication and reduction, independent of
    /// the log tables.
    pub fn mul_code_schoolbook(&self, a: u32, b: u32) -> u32 {
        mul_schoolbook(&self.inner, a, b)
    }
}

fn mul_schoolbook(inner: &Inner, a: u32, b: u32) -> u32 {
    let (p, k) = (inner.p, inner.k);
    let da = digits(a, p, k);
    let db = digits(b, p, k);
    let mut prod = vec![0u32; 2 * k as usize];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let r = poly_rem(&prod, &inner.modulus, p);
    r.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

fn build_tables(inner: &mut Inner) {
    let q = inner.q;
    let n = q - 1;
    let mut exp = vec![0u32; 2 * n as usize];
    for g in 1..q {
        let mut x = 1u32;
        let mut ok = true;
        for i in 0..n {
            if i > 0 && x == 1 {
                ok = false;
                break;
            }
            exp[i as usize] = x;
            x = mul_schoolbook(inner, x, g);
        }
        if ok {
            break;
        }
    }
    let mut log = vec![0u32; q as usize];
    for i in 0..n {
        let v = exp[i as usize];
        log[v as usize] = i;
        exp[(i + n) as usize] = v;
    }
    inner.exp = exp;
    inner.log = log;
}

fn poly_string(coeffs: &[u32], _p: u32) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
        let term = match i {
            0 => coef,
            1 => format!("{coef}x"),
            _ => format!("{coef}x^{i}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

impl FromStr for Field {
    type Err = GfError;

    /// Accepts `p`, `p^k`, or `p^k/c0,c1,...,ck`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GfError::BadSpec(s.to_string());
        let s = s.trim();
        let (order, modulus) = match s.split_once('/') {
            Some((o, m)) => (o, Some(m)),
            None => (s, None),
        };
        let (p, k) = match order.split_once('^') {
            Some((p, k)) => (p.trim().parse().map_err(|_| bad())?, k.trim().parse().map_err(|_| bad())?),
            None => (order.trim().parse().map_err(|_| bad())?, 1),
        };
        match modulus {
            Some(m) => {
                let coeffs =
                    m.split(',').map(|c| c.trim().parse::<u32>()).collect::<Result<Vec<_>, _>>().map_err(|_| bad())?;
                Field::new(p, k, Some(&coeffs))
            }
            None => Field::new(p, k, None),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, k: u32) -> Field {
        Field::new(p, k, None).unwrap()
    }

    #[test]
    fn constructs_small_fields() {
        assert_eq!(gf(2, 1).order(), 2);
        assert_eq!(gf(2, 2).modulus(), &[1, 1, 1]);
        // x^2 + 1 has no root among 0, 1, 2 over GF(3).
        for x in 0..3u32 {
            assert_ne!((x * x + 1) % 3, 0);
        }
        let f9 = Field::new(3, 2, Some(&[1, 0, 1])).unwrap();
        assert_eq!(f9.order(), 9);
        assert_eq!(gf(3, 2).modulus(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Field::new(4, 1, None).unwrap_err(), GfError::NonPrimeCharacteristic(4));
        assert_eq!(Field::new(1, 1, None).unwrap_err(), GfError::NonPrimeCharacteristic(1));
        assert!(matches!(Field::new(2, 2, Some(&[1, 0, 1])), Err(GfError::ReducibleModulus(_))));
        assert!(matches!(Field::new(2, 2, Some(&[1, 1])), Err(GfError::InvalidModulus { .. })));
        assert!(matches!(Field::new(2, 17, None), Err(GfError::FieldTooLarge { .. })));
        assert_eq!(Field::new(2, 0, None).unwrap_err(), GfError::InvalidDegree);
    }

    #[test]
    fn basic_examples() {
        let f4 = gf(2, 2);
        let x = f4.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f4.format(f4.mul(x, x).unwrap()), "x+1");
        let f3 = gf(3, 1);
        assert_eq!(f3.inv(f3.from_int(2)).unwrap(), f3.from_int(2));
        let f2 = gf(2, 1);
        assert_eq!(f2.pow(f2.one(), 5).unwrap(), f2.one());
        assert_eq!(f2.pow(f2.zero(), 0).unwrap(), f2.one());
        assert_eq!(f3.inv(f3.zero()).unwrap_err(), GfError::DivisionByZero);
    }

    #[test]
    fn enumeration_order() {
        let f4 = gf(2, 2);
        let names: Vec<String> = f4.elements().map(|a| f4.format(a)).collect();
        assert_eq!(names, ["0", "1", "x", "x+1"]);
        let f3 = gf(3, 1);
        let names: Vec<String> = f3.elements().map(|a| f3.format(a)).collect();
        assert_eq!(names, ["0", "1", "2"]);
        assert_eq!(gf(2, 1).elements().count(), 2);
    }

    #[test]
    fn mixing_fields_is_an_error() {
        let f4 = gf(2, 2);
        let f8 = gf(2, 3);
        assert_eq!(f4.add(f4.one(), f8.one()).unwrap_err(), GfError::FieldMismatch);
        // Independently built copies of the same field interoperate.
        let f4b = gf(2, 2);
        assert!(f4.mul(f4.one(), f4b.one()).is_ok());
    }

    #[test]
    fn table_arithmetic_matches_schoolbook() {
        for (p, k) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (5, 2), (7, 2), (3, 3)] {
            let f = gf(p, k);
            for a in 0..f.order() {
                for b in 0..f.order() {
                    assert_eq!(f.mul_code(a, b), f.mul_code_schoolbook(a, b), "GF({p}^{k}) {a}*{b}");
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, k) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (7, 1), (13, 1)] {
            let f = gf(p, k);
            let els: Vec<_> = f.elements().collect();
            assert_eq!(els.len() as u32, f.order());
            for &a in &els {
                assert_eq!(f.pow(a, u64::from(f.order())).unwrap(), a);
                assert_eq!(f.add(a, f.neg(a).unwrap()).unwrap(), f.zero());
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()).unwrap(), f.one());
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        let ab_c = f.add(f.add(a, b).unwrap(), c).unwrap();
                        assert_eq!(ab_c, f.add(a, f.add(b, c).unwrap()).unwrap());
                        let abc = f.mul(f.mul(a, b).unwrap(), c).unwrap();
                        assert_eq!(abc, f.mul(a, f.mul(b, c).unwrap()).unwrap());
                        let lhs = f.mul(a, f.add(b, c).unwrap()).unwrap();
                        let rhs = f.add(f.mul(a, b).unwrap(), f.mul(a, c).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn fermat_identity_up_to_64() {
        for (p, k) in [(2, 5), (2, 6), (3, 3), (5, 2), (7, 2), (31, 1), (61, 1)] {
            let f = gf(p, k);
            for a in f.elements() {
                assert_eq!(f.pow(a, u64::from(f.order())).unwrap(), a);
            }
        }
    }

    #[test]
    fn default_moduli_are_lexicographically_smallest() {
        // (c0, c1, c2) = (1, 0, 1) precedes (1, 1, 0).
        assert_eq!(gf(2, 3).modulus(), &[1, 0, 1, 1]);
        assert_eq!(gf(2, 4).modulus(), &[1, 0, 0, 1, 1]);
        // x^2 + 1 splits over GF(5); x^2 + x + 1 has no root there.
        assert_eq!(gf(5, 2).modulus(), &[1, 1, 1]);
        assert_eq!(gf(7, 1).modulus(), &[0, 1]);
    }

    #[test]
    fn largest_field_builds() {
        let f = gf(2, 16);
        assert_eq!(f.order(), MAX_ORDER);
        let a = f.elem(12345);
        assert_eq!(f.mul_code(a.code(), f.inv_code(a.code()).unwrap()), 1);
        assert_eq!(f.mul_code(0xbeef, 0x1234), f.mul_code_schoolbook(0xbeef, 0x1234));
    }

    #[test]
    fn parses_spec_strings() {
        let f: Field = "2^2".parse().unwrap();
        assert_eq!(f.order(), 4);
        let f: Field = "3^2/1,0,1".parse().unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        let f: Field = "5".parse().unwrap();
        assert_eq!(f.order(), 5);
        assert_eq!(f.spec_string().parse::<Field>().unwrap(), f);
        assert!(matches!("2^x".parse::<Field>(), Err(GfError::BadSpec(_))));
        assert!(matches!("2^2/1,0,1".parse::<Field>(), Err(GfError::ReducibleModulus(_))));
    }
}
