//! Exact arithmetic in `GF(p^r)`.
//!
//! Elements are integer codes in `[0, q)`. The base-`p` digits of a code,
//! least significant first, are the coefficients `c_0, ..., c_{r-1}` of the
//! representative polynomial modulo the field's modulus. Code `0` is zero and
//! code `1` is one.
//!
//! The modulus is canonical: among all monic irreducible polynomials of
//! degree `r` over `GF(p)`, the one whose lower coefficient vector encodes to
//! the smallest integer. Two fields built from the same `(p, r)` are therefore
//! identical, down to their multiplication tables.
//!
//! ```
//! use carlitz_core::{Elem, Field};
//!
//! let f9 = Field::new(3, 2).unwrap();
//! assert_eq!(f9.order(), 9);
//! let z = f9.primitive_element();
//! assert_eq!(f9.pow(z, 8), Elem::ONE);
//! ```

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::num::{is_prime, prime_factors};
use crate::{Error, Result};

/// Default upper bound on the field order.
pub const DEFAULT_SIZE_CAP: u64 = 1 << 20;
/// Hard ceiling for any cap, so codes fit in `u32` and products in `u64`.
pub const MAX_SIZE_CAP: u64 = 1 << 31;

const TABLE_LIMIT: u32 = 1 << 16;
const ADD_TABLE_LIMIT: u32 = 256;
const MAX_DEGREE: usize = 32;

/// A field element, identified by its integer code.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize), serde(transparent))]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A point of the projective line `F_q ∪ {∞}`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ProjectivePoint {
    Finite(Elem),
    Infinity,
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectivePoint::Finite(e) => write!(f, "{e}"),
            ProjectivePoint::Infinity => f.write_str("inf"),
        }
    }
}

/// The binary operations exposed through [`Field::arith`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// The finite field `GF(p^r)` with canonical modulus.
///
/// Immutable after construction and `Sync`, so it can be shared freely
/// between worker threads.
#[derive(Clone)]
pub struct Field {
    p: u32,
    r: u32,
    q: u32,
    /// Lower coefficients `c_0..c_{r-1}` of the monic modulus.
    modulus: Vec<u32>,
    primitive: Elem,
    /// `exp[i] = ζ^i` for `i < 2(q-1)`; empty above the table limit.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.r == other.r && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("r", &self.r)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl Field {
    /// Builds `GF(p^r)` under the default size cap.
    pub fn new(p: u64, r: u32) -> Result<Self> {
        Self::with_cap(p, r, DEFAULT_SIZE_CAP)
    }

    pub fn with_cap(p: u64, r: u32, cap: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if r == 0 {
            return Err(Error::ParameterOutOfRange("extension degree must be at least 1"));
        }
        let cap = cap.min(MAX_SIZE_CAP);
        let mut q: u64 = 1;
        for _ in 0..r {
            q = q.saturating_mul(p);
            if q > cap {
                return Err(Error::FieldTooLarge { q, cap });
            }
        }
        if q < 3 {
            return Err(Error::FieldTooSmall { q });
        }
        let (p, q) = (p as u32, q as u32);

        let mut field = Field {
            p,
            r,
            q,
            modulus: canonical_modulus(p, r as usize),
            primitive: Elem::ONE,
            exp: Vec::new(),
            log: Vec::new(),
            neg: Vec::new(),
            add: Vec::new(),
        };
        field.primitive = field.find_primitive();
        if q <= TABLE_LIMIT {
            field.build_tables();
        }
        Ok(field)
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.r
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Full coefficient vector of the modulus, constant term first, including
    /// the leading 1.
    pub fn modulus(&self) -> Vec<u32> {
        let mut m = self.modulus.clone();
        m.push(1);
        m
    }

    /// Validates an integer code.
    pub fn elem(&self, code: u64) -> Result<Elem> {
        if code < self.q as u64 {
            Ok(Elem(code as u32))
        } else {
            Err(Error::InvalidElementCode { code, q: self.q })
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u32)
    }

    /// All elements in increasing code order.
    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Elem> + ExactSizeIterator + Clone {
        (0..self.q).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl DoubleEndedIterator<Item = Elem> + ExactSizeIterator + Clone {
        (1..self.q).map(Elem)
    }

    /// Checked binary operation on codes.
    pub fn arith(&self, op: ArithOp, x: Elem, y: Elem) -> Result<Elem> {
        self.check(x)?;
        self.check(y)?;
        Ok(match op {
            ArithOp::Add => self.add(x, y),
            ArithOp::Sub => self.sub(x, y),
            ArithOp::Mul => self.mul(x, y),
        })
    }

    fn check(&self, x: Elem) -> Result<()> {
        self.elem(x.0 as u64).map(|_| ())
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        debug_assert!(x.0 < self.q && y.0 < self.q);
        if self.r == 1 {
            let s = x.0 + y.0;
            return Elem(if s >= self.p { s - self.p } else { s });
        }
        if self.p == 2 {
            return Elem(x.0 ^ y.0);
        }
        if !self.add.is_empty() {
            return Elem(self.add[(x.0 * self.q + y.0) as usize]);
        }
        Elem(self.add_digits(x.0, y.0))
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        if self.p == 2 {
            return x;
        }
        if self.r == 1 {
            return Elem(if x.0 == 0 { 0 } else { self.p - x.0 });
        }
        if !self.neg.is_empty() {
            return Elem(self.neg[x.0 as usize]);
        }
        Elem(self.neg_digits(x.0))
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        debug_assert!(x.0 < self.q && y.0 < self.q);
        if x.0 == 0 || y.0 == 0 {
            return Elem::ZERO;
        }
        if self.r == 1 {
            return Elem(((x.0 as u64 * y.0 as u64) % self.p as u64) as u32);
        }
        if !self.exp.is_empty() {
            let i = self.log[x.0 as usize] + self.log[y.0 as usize];
            return Elem(self.exp[i as usize]);
        }
        Elem(self.mul_digits(x.0, y.0))
    }

    /// `x^(q-2)`: the inverse of a nonzero `x`, and `0` at `0`.
    #[inline]
    pub fn inverse_or_zero(&self, x: Elem) -> Elem {
        if x.0 == 0 {
            return Elem::ZERO;
        }
        if !self.exp.is_empty() {
            let l = self.log[x.0 as usize];
            let i = if l == 0 { 0 } else { self.q - 1 - l };
            return Elem(self.exp[i as usize]);
        }
        self.pow(x, self.q as u64 - 2)
    }

    /// `x / y`, or `None` when `y = 0`.
    #[inline]
    pub fn checked_div(&self, x: Elem, y: Elem) -> Option<Elem> {
        if y.0 == 0 {
            None
        } else {
            Some(self.mul(x, self.inverse_or_zero(y)))
        }
    }

    /// `x^e` with `0^0 = 1`.
    pub fn pow(&self, x: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if x.0 == 0 {
            return Elem::ZERO;
        }
        let order = self.q as u64 - 1;
        if !self.exp.is_empty() {
            let l = self.log[x.0 as usize] as u64;
            return Elem(self.exp[((l * (e % order)) % order) as usize]);
        }
        let mut e = e % order;
        if e == 0 {
            return Elem::ONE;
        }
        let mut base = x;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative generator with the smallest code.
    #[inline]
    pub fn primitive_element(&self) -> Elem {
        self.primitive
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, x: Elem) -> Result<u64> {
        self.check(x)?;
        if x.is_zero() {
            return Err(Error::ZeroInput);
        }
        let mut order = self.q as u64 - 1;
        for l in prime_factors(order) {
            while order.is_multiple_of(l) && self.pow(x, order / l) == Elem::ONE {
                order /= l;
            }
        }
        Ok(order)
    }

    /// All generators of `F_q^*`, in increasing code order.
    pub fn generators(&self) -> Vec<Elem> {
        let group = self.q as u64 - 1;
        self.nonzero_elements().filter(|&x| self.multiplicative_order(x) == Ok(group)).collect()
    }

    /// Whether `v` is an `m`-th power in `F_q^*`, for `m | q-1`.
    pub fn is_mth_power(&self, v: Elem, m: u64) -> Result<bool> {
        self.check(v)?;
        if v.is_zero() {
            return Err(Error::ZeroInput);
        }
        let group = self.q as u64 - 1;
        if m == 0 || !group.is_multiple_of(m) {
            return Err(Error::MNotDividingGroupOrder { m, order: self.q - 1 });
        }
        if !self.log.is_empty() {
            return Ok((self.log[v.0 as usize] as u64).is_multiple_of(m));
        }
        Ok(self.pow(v, group / m) == Elem::ONE)
    }

    /// Nonzero square test; zero counts as a square.
    pub fn is_square(&self, v: Elem) -> bool {
        if v.is_zero() || self.p == 2 {
            return true;
        }
        self.is_mth_power(v, 2).unwrap_or(false)
    }

    fn digits(&self, mut code: u32) -> [u32; MAX_DEGREE] {
        let mut d = [0u32; MAX_DEGREE];
        for slot in d.iter_mut().take(self.r as usize) {
            *slot = code % self.p;
            code /= self.p;
        }
        d
    }

    fn encode(&self, digits: &[u32]) -> u32 {
        digits[..self.r as usize].iter().rev().fold(0u32, |acc, &c| acc * self.p + c)
    }

    fn add_digits(&self, x: u32, y: u32) -> u32 {
        let (a, b) = (self.digits(x), self.digits(y));
        let mut s = [0u32; MAX_DEGREE];
        for i in 0..self.r as usize {
            s[i] = (a[i] + b[i]) % self.p;
        }
        self.encode(&s)
    }

    fn neg_digits(&self, x: u32) -> u32 {
        let a = self.digits(x);
        let mut s = [0u32; MAX_DEGREE];
        for i in 0..self.r as usize {
            s[i] = (self.p - a[i]) % self.p;
        }
        self.encode(&s)
    }

    /// Schoolbook product of the representatives, reduced by the modulus.
    fn mul_digits(&self, x: u32, y: u32) -> u32 {
        let (a, b) = (self.digits(x), self.digits(y));
        let r = self.r as usize;
        let p = self.p as u64;
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..r {
            if a[i] == 0 {
                continue;
            }
            for j in 0..r {
                prod[i + j] = (prod[i + j] + a[i] as u64 * b[j] as u64) % p;
            }
        }
        for top in (r..2 * r - 1).rev() {
            let t = prod[top];
            if t == 0 {
                continue;
            }
            prod[top] = 0;
            // X^r = -(c_0 + ... + c_{r-1} X^{r-1})
            for (j, &c) in self.modulus.iter().enumerate() {
                let idx = top - r + j;
                prod[idx] = (prod[idx] + (p - t) * c as u64) % p;
            }
        }
        let mut out = [0u32; MAX_DEGREE];
        for i in 0..r {
            out[i] = prod[i] as u32;
        }
        self.encode(&out)
    }

    fn pow_digits(&self, x: u32, mut e: u64) -> u32 {
        let mut base = x;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_digits(acc, base);
            }
            base = self.mul_digits(base, base);
            e >>= 1;
        }
        acc
    }

    fn find_primitive(&self) -> Elem {
        let group = self.q as u64 - 1;
        let factors = prime_factors(group);
        (1..self.q)
            .find(|&x| factors.iter().all(|&l| self.pow_digits(x, group / l) != 1))
            .map(Elem)
            .expect("the multiplicative group of a finite field is cyclic")
    }

    fn build_tables(&mut self) {
        let group = (self.q - 1) as usize;
        let mut exp = vec![0u32; 2 * group];
        let mut log = vec![0u32; self.q as usize];
        let mut cur = 1u32;
        for i in 0..group {
            exp[i] = cur;
            exp[i + group] = cur;
            log[cur as usize] = i as u32;
            cur = self.mul_digits(cur, self.primitive.0);
        }
        self.exp = exp;
        self.log = log;
        if self.r > 1 && self.p != 2 {
            self.neg = (0..self.q).map(|x| self.neg_digits(x)).collect();
            if self.q <= ADD_TABLE_LIMIT {
                let q = self.q;
                self.add = (0..q * q).map(|i| self.add_digits(i / q, i % q)).collect();
            }
        }
    }
}

/// Lexicographically smallest monic irreducible of degree `r` over `GF(p)`,
/// as its lower coefficients `c_0..c_{r-1}`.
fn canonical_modulus(p: u32, r: usize) -> Vec<u32> {
    if r == 1 {
        return vec![0];
    }
    let count = (p as u64).pow(r as u32);
    (0..count)
        .map(|code| {
            let mut c = code;
            let mut poly: Vec<u32> = (0..r)
                .map(|_| {
                    let d = (c % p as u64) as u32;
                    c /= p as u64;
                    d
                })
                .collect();
            poly.push(1);
            poly
        })
        .find(|poly| poly[0] != 0 && is_irreducible(poly, p))
        .map(|mut poly| {
            poly.pop();
            poly
        })
        .expect("irreducible polynomials exist in every degree")
}

/// Trial division by every monic polynomial of degree at most `deg / 2`.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut c = code;
            let mut divisor: Vec<u32> = (0..d)
                .map(|_| {
                    let v = (c % p as u64) as u32;
                    c /= p as u64;
                    v
                })
                .collect();
            divisor.push(1);
            if remainder_is_zero(poly, &divisor, p) {
                return false;
            }
        }
    }
    true
}

fn remainder_is_zero(num: &[u32], monic: &[u32], p: u32) -> bool {
    let mut rem: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    let d = monic.len() - 1;
    let p = p as u64;
    for top in (d..rem.len()).rev() {
        let t = rem[top] % p;
        if t == 0 {
            continue;
        }
        for (j, &c) in monic.iter().enumerate() {
            let idx = top - d + j;
            rem[idx] = (rem[idx] + (p - t) * c as u64) % p;
        }
    }
    rem[..d].iter().all(|&c| c % p == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fields_up_to_49() -> Vec<Field> {
        [(3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4), (17, 1)]
            .iter()
            .chain([(19, 1), (23, 1), (5, 2), (3, 3), (29, 1), (31, 1), (2, 5), (37, 1)].iter())
            .chain([(41, 1), (43, 1), (47, 1), (7, 2)].iter())
            .map(|&(p, r)| Field::new(p, r).unwrap())
            .collect()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(3, 2).unwrap().order(), 9);
        assert_eq!(Field::new(2, 1).unwrap_err(), Error::FieldTooSmall { q: 2 });
        assert_eq!(Field::new(4, 1).unwrap_err(), Error::NonPrimeCharacteristic(4));
        assert!(matches!(Field::new(2, 21), Err(Error::FieldTooLarge { .. })));
        assert!(Field::with_cap(2, 21, 1 << 21).is_ok());
        assert!(matches!(Field::new(3, 0), Err(Error::ParameterOutOfRange(_))));
    }

    #[test]
    fn canonical_moduli() {
        // X^2 + 1 is the first irreducible quadratic over GF(3).
        assert_eq!(Field::new(3, 2).unwrap().modulus(), vec![1, 0, 1]);
        // X^2 + X + 1 over GF(2), X^3 + X + 1 over GF(2).
        assert_eq!(Field::new(2, 2).unwrap().modulus(), vec![1, 1, 1]);
        assert_eq!(Field::new(2, 3).unwrap().modulus(), vec![1, 1, 0, 1]);
        // X^2 + 2 over GF(5): 2 is a non-square mod 5.
        assert_eq!(Field::new(5, 2).unwrap().modulus(), vec![2, 0, 1]);
        assert_eq!(Field::new(7, 1).unwrap().modulus(), vec![0, 1]);
    }

    #[test]
    fn deterministic_construction() {
        let a = Field::new(3, 4).unwrap();
        let b = Field::new(3, 4).unwrap();
        assert_eq!(a, b);
        for x in a.elements() {
            for y in a.elements() {
                assert_eq!(a.mul(x, y), b.mul(x, y));
            }
        }
    }

    #[test]
    fn small_examples() {
        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(f5.mul(Elem(2), Elem(3)), Elem(1));
        assert_eq!(f5.inverse_or_zero(Elem(2)), Elem(3));
        assert_eq!(f5.primitive_element(), Elem(2));
        let f7 = Field::new(7, 1).unwrap();
        assert_eq!(f7.pow(Elem(3), 6), Elem::ONE);
        assert_eq!(f7.primitive_element(), Elem(3));
        assert!(f7.is_mth_power(Elem(2), 2).unwrap());
        assert!(!f7.is_mth_power(Elem(3), 2).unwrap());
        assert_eq!(f7.is_mth_power(Elem(0), 2), Err(Error::ZeroInput));
        assert!(matches!(f7.is_mth_power(Elem(2), 4), Err(Error::MNotDividingGroupOrder { .. })));
        assert_eq!(f5.elements().map(|e| e.0).collect::<Vec<_>>(), vec![0, 1, 2, 3, 4]);
        assert_eq!(f5.arith(ArithOp::Add, Elem(5), Elem(1)), Err(Error::InvalidElementCode { code: 5, q: 5 }));
        assert_eq!(f5.arith(ArithOp::Sub, Elem(1), Elem(3)), Ok(Elem(3)));
    }

    #[test]
    fn zero_and_one_inverse() {
        for f in fields_up_to_49() {
            assert_eq!(f.inverse_or_zero(Elem::ZERO), Elem::ZERO);
            assert_eq!(f.inverse_or_zero(Elem::ONE), Elem::ONE);
        }
    }

    /// Independent oracle: polynomials as digit vectors, schoolbook product,
    /// long division by the full modulus.
    fn oracle_mul(f: &Field, x: u32, y: u32) -> u32 {
        let (p, r) = (f.characteristic() as i64, f.degree() as usize);
        let mut a = vec![0i64; r];
        let mut b = vec![0i64; r];
        let (mut xx, mut yy) = (x as i64, y as i64);
        for i in 0..r {
            a[i] = xx % p;
            xx /= p;
            b[i] = yy % p;
            yy /= p;
        }
        let mut prod = vec![0i64; 2 * r];
        for i in 0..r {
            for j in 0..r {
                prod[i + j] += a[i] * b[j];
            }
        }
        let m: Vec<i64> = f.modulus().iter().map(|&c| c as i64).collect();
        for top in (r..2 * r).rev() {
            let t = prod[top].rem_euclid(p);
            for j in 0..=r {
                prod[top - r + j] -= t * m[j];
            }
        }
        (0..r).rev().fold(0i64, |acc, i| acc * p + prod[i].rem_euclid(p)) as u32
    }

    #[test]
    fn multiplication_matches_polynomial_oracle() {
        for (p, r) in [(3, 2), (2, 3), (2, 4), (5, 2), (3, 3), (7, 2)] {
            let f = Field::new(p, r).unwrap();
            for x in 0..f.order() {
                for y in 0..f.order() {
                    assert_eq!(f.mul(Elem(x), Elem(y)).0, oracle_mul(&f, x, y), "{p}^{r}: {x}*{y}");
                }
            }
        }
    }

    #[test]
    fn untabled_path_agrees_with_tables() {
        // Same field with and without log tables.
        let tabled = Field::new(3, 4).unwrap();
        let mut raw = tabled.clone();
        raw.exp.clear();
        raw.log.clear();
        raw.neg.clear();
        raw.add.clear();
        for x in tabled.elements() {
            assert_eq!(tabled.inverse_or_zero(x), raw.inverse_or_zero(x));
            assert_eq!(tabled.pow(x, 17), raw.pow(x, 17));
            for y in tabled.elements() {
                assert_eq!(tabled.mul(x, y), raw.mul(x, y));
                assert_eq!(tabled.add(x, y), raw.add(x, y));
                assert_eq!(tabled.sub(x, y), raw.sub(x, y));
            }
        }
    }

    #[test]
    fn large_field_without_tables() {
        let f = Field::new(2, 17).unwrap();
        assert!(f.exp.is_empty());
        let z = f.primitive_element();
        assert_eq!(f.pow(z, f.order() as u64 - 1), Elem::ONE);
        for code in [1u32, 2, 12345, 131071] {
            let x = Elem(code);
            assert_eq!(f.mul(x, f.inverse_or_zero(x)), Elem::ONE);
        }
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let f = Field::new(3, 2).unwrap();
        for x in f.elements() {
            let mut acc = Elem::ONE;
            for e in 0..=20u64 {
                assert_eq!(f.pow(x, e), acc, "x={x} e={e}");
                acc = f.mul(acc, x);
            }
        }
    }

    #[test]
    fn primitive_element_of_f9_is_exhaustively_minimal() {
        let f = Field::new(3, 2).unwrap();
        let order_of = |x: Elem| (1..=8).find(|&e| f.pow(x, e) == Elem::ONE).unwrap();
        let expected = (1..9).map(Elem).find(|&x| order_of(x) == 8).unwrap();
        assert_eq!(f.primitive_element(), expected);
        // 1 + i under X^2 + 1.
        assert_eq!(expected, Elem(4));
        assert_eq!(f.generators().len(), 4);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in fields_up_to_49() {
            let q = f.order() as u64;
            for x in f.elements() {
                assert_eq!(f.add(x, Elem::ZERO), x);
                assert_eq!(f.mul(x, Elem::ONE), x);
                assert_eq!(f.add(x, f.neg(x)), Elem::ZERO);
                assert_eq!(f.pow(x, q), x);
                if !x.is_zero() {
                    assert_eq!(f.pow(x, q - 1), Elem::ONE);
                    assert_eq!(f.mul(x, f.inverse_or_zero(x)), Elem::ONE);
                }
                for y in f.elements() {
                    assert_eq!(f.add(x, y), f.add(y, x));
                    assert_eq!(f.mul(x, y), f.mul(y, x));
                    assert_eq!(f.sub(f.add(x, y), y), x);
                }
            }
            // Associativity and distributivity on a stride to keep the cube small.
            let sample: Vec<Elem> = f.elements().step_by(1 + f.order() as usize / 12).collect();
            for &x in &sample {
                for &y in &sample {
                    for &z in &sample {
                        assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
                        assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
                        assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                    }
                }
            }
        }
    }

    #[test]
    fn full_associativity_small_fields() {
        for (p, r) in [(2, 3), (3, 2), (7, 1)] {
            let f = Field::new(p, r).unwrap();
            for x in f.elements() {
                for y in f.elements() {
                    for z in f.elements() {
                        assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
                        assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                    }
                }
            }
        }
    }

    #[test]
    fn power_residue_counts() {
        for f in fields_up_to_49() {
            let group = f.order() as u64 - 1;
            for m in (1..=group).filter(|m| group.is_multiple_of(*m)) {
                let hits = f.nonzero_elements().filter(|&v| f.is_mth_power(v, m).unwrap()).count();
                assert_eq!(hits as u64, group / m, "q={} m={m}", f.order());
                assert!(f.is_mth_power(Elem::ONE, m).unwrap());
            }
        }
    }
}
