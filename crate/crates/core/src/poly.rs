//! Polynomials over `GF(q)` and their image tables.
//!
//! A [`Poly`] is a dense coefficient vector, lowest degree first. A
//! [`PermMap`] is the length-`q` table `c ↦ f(c)` of any function
//! `F_q → F_q`; it is the representation every other module works with.
//! The two are linked by [`Poly::to_map`] and [`PermMap::interpolate`].

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::{Elem, Field};
use crate::{Error, Result};

/// Dense polynomial, index `i` holds the coefficient of `x^i`.
///
/// Never stores trailing zeros; the zero polynomial is the empty vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize), serde(transparent))]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Validates codes against `field`.
    pub fn from_codes(field: &Field, codes: &[u64]) -> Result<Self> {
        let coeffs = codes.iter().map(|&c| field.elem(c)).collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(coeffs))
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Elem) -> Self {
        Poly::new(vec![c])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Poly::monomial(Elem::ONE, 1)
    }

    /// `c x^k`.
    pub fn monomial(c: Elem, k: usize) -> Self {
        let mut coeffs = vec![Elem::ZERO; k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coefficient(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    /// Horner evaluation.
    pub fn eval(&self, field: &Field, x: Elem) -> Elem {
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
    }

    pub fn add(&self, field: &Field, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Poly, i: usize| p.coeffs.get(i).copied().unwrap_or(Elem::ZERO);
        Poly::new((0..len).map(|i| field.add(get(self, i), get(other, i))).collect())
    }

    pub fn neg(&self, field: &Field) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| field.neg(c)).collect())
    }

    pub fn sub(&self, field: &Field, other: &Poly) -> Poly {
        self.add(field, &other.neg(field))
    }

    /// Reduction modulo `x^q - x`: the canonical representative of degree
    /// below `q` inducing the same function.
    pub fn reduce(&self, field: &Field) -> Poly {
        let q = field.order() as usize;
        if self.coeffs.len() <= q {
            return self.clone();
        }
        let mut out = vec![Elem::ZERO; q];
        for (e, &c) in self.coeffs.iter().enumerate() {
            let slot = if e < q { e } else { (e - 1) % (q - 1) + 1 };
            out[slot] = field.add(out[slot], c);
        }
        Poly::new(out)
    }

    pub fn to_map(&self, field: &Field) -> PermMap {
        PermMap::from_fn(field, |x| self.eval(field, x))
    }
}

impl fmt::Display for Poly {
    /// Comma-separated codes, lowest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_codes(f, &self.coeffs)
    }
}

pub(crate) fn write_codes(f: &mut fmt::Formatter<'_>, codes: &[Elem]) -> fmt::Result {
    for (i, c) in codes.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{c}")?;
    }
    Ok(())
}

/// Parses comma-separated decimal codes.
pub fn parse_codes(field: &Field, s: &str) -> Result<Vec<Elem>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            let code = t.trim().parse::<u64>().map_err(|_| Error::Parse("expected decimal element code"))?;
            field.elem(code)
        })
        .collect()
}

/// Image table of a function `F_q → F_q`; `images[c]` is the value at code `c`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize), serde(transparent))]
pub struct PermMap {
    images: Vec<Elem>,
}

impl PermMap {
    pub fn new(field: &Field, images: Vec<Elem>) -> Result<Self> {
        let q = field.order() as usize;
        if images.len() != q {
            return Err(Error::LengthMismatch { expected: q, found: images.len() });
        }
        for &v in &images {
            field.elem(v.0 as u64)?;
        }
        Ok(PermMap { images })
    }

    pub fn from_codes(field: &Field, codes: &[Elem]) -> Result<Self> {
        PermMap::new(field, codes.to_vec())
    }

    pub fn from_fn(field: &Field, f: impl FnMut(Elem) -> Elem) -> Self {
        PermMap { images: field.elements().map(f).collect() }
    }

    pub fn identity(field: &Field) -> Self {
        PermMap::from_fn(field, |x| x)
    }

    /// Wraps an already validated table.
    pub(crate) fn from_images_unchecked(images: Vec<Elem>) -> Self {
        PermMap { images }
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    #[inline]
    pub fn get(&self, x: Elem) -> Elem {
        self.images[x.0 as usize]
    }

    pub fn is_permutation(&self) -> bool {
        all_distinct(self.images.len() as u32, self.images.iter().copied())
    }

    /// Both `f` and `c ↦ f(c) + c` are bijections.
    pub fn is_complete_mapping(&self, field: &Field) -> bool {
        self.is_permutation()
            && all_distinct(field.order(), self.images.iter().enumerate().map(|(c, &v)| field.add(v, Elem(c as u32))))
    }

    /// Pointwise sum with the function of `g`.
    pub fn add_poly(&self, field: &Field, g: &Poly) -> PermMap {
        PermMap::from_fn(field, |x| field.add(self.get(x), g.eval(field, x)))
    }

    pub fn add_map(&self, field: &Field, other: &PermMap) -> PermMap {
        PermMap::from_fn(field, |x| field.add(self.get(x), other.get(x)))
    }

    /// Whether `self + other` is a bijection, without materialising the sum.
    pub fn sum_is_permutation(&self, field: &Field, other: &PermMap) -> bool {
        all_distinct(field.order(), self.images.iter().zip(&other.images).map(|(&a, &b)| field.add(a, b)))
    }

    /// The unique polynomial of degree below `q` inducing this map.
    ///
    /// Uses `f(x) = Σ_c f(c) (1 - (x - c)^{q-1})`, whose coefficients reduce to
    /// `f(0)` in degree 0 and `-Σ_c f(c) c^{q-1-j}` in degree `j ≥ 1`.
    pub fn interpolate(&self, field: &Field) -> Poly {
        let q = field.order() as usize;
        let mut coeffs = vec![Elem::ZERO; q];
        coeffs[0] = self.images[0];
        for (j, slot) in coeffs.iter_mut().enumerate().skip(1) {
            let e = (q - 1 - j) as u64;
            let s = field.elements().fold(Elem::ZERO, |acc, c| field.add(acc, field.mul(self.get(c), field.pow(c, e))));
            *slot = field.neg(s);
        }
        Poly::new(coeffs)
    }

    /// Largest number of graph points on one non-vertical line `y = ax + b`.
    ///
    /// For every base point, tallies the slopes to all other points; a line
    /// through the base point with `t` further points has `t + 1` points.
    pub fn linearity(&self, field: &Field) -> usize {
        let q = field.order() as usize;
        let mut best = 1;
        let mut slopes = vec![0usize; q];
        for c1 in field.elements() {
            slopes.iter_mut().for_each(|s| *s = 0);
            let y1 = self.get(c1);
            for c2 in field.elements().filter(|&c| c != c1) {
                let rise = field.sub(self.get(c2), y1);
                let run = field.sub(c2, c1);
                let a = field.mul(rise, field.inverse_or_zero(run));
                slopes[a.0 as usize] += 1;
            }
            best = best.max(1 + slopes.iter().copied().max().unwrap_or(0));
        }
        best
    }

    pub fn value_multiset(&self) -> ValueSetSummary {
        ValueSetSummary::from_values(self.images.iter().copied())
    }
}

/// Degree of the canonical interpolant of `h - f`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum DiffDegree {
    Degree(usize),
    /// The difference is a constant function (degree 0 or the zero polynomial).
    Constant,
}

pub fn difference_degree(field: &Field, f: &PermMap, h: &PermMap) -> DiffDegree {
    let diff = PermMap::from_fn(field, |x| field.sub(h.get(x), f.get(x)));
    match diff.interpolate(field).degree() {
        Some(k) if k >= 1 => DiffDegree::Degree(k),
        _ => DiffDegree::Constant,
    }
}

/// Fiber sizes `n_u = |f^{-1}(u)|` over the evaluated inputs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ValueSetSummary {
    fibers: BTreeMap<Elem, usize>,
    total: usize,
}

impl ValueSetSummary {
    pub fn from_values(values: impl IntoIterator<Item = Elem>) -> Self {
        let mut fibers = BTreeMap::new();
        let mut total = 0;
        for v in values {
            *fibers.entry(v).or_insert(0) += 1;
            total += 1;
        }
        ValueSetSummary { fibers, total }
    }

    pub fn fibers(&self) -> &BTreeMap<Elem, usize> {
        &self.fibers
    }

    pub fn fiber(&self, u: Elem) -> usize {
        self.fibers.get(&u).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.total
    }

    /// Size of the value set.
    pub fn distinct(&self) -> usize {
        self.fibers.len()
    }

    pub fn max_fiber(&self) -> usize {
        self.fibers.values().copied().max().unwrap_or(0)
    }

    /// `Σ n_u (n_u - 1)`: ordered pairs of distinct inputs with equal value.
    pub fn ordered_collisions(&self) -> u64 {
        self.fibers.values().map(|&n| (n * (n - 1)) as u64).sum()
    }

    /// `Σ (n_u - 1)`.
    pub fn excess(&self) -> u64 {
        (self.total - self.fibers.len()) as u64
    }

    /// How many fibers have each size, keyed by size.
    pub fn size_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for &n in self.fibers.values() {
            *h.entry(n).or_insert(0) += 1;
        }
        h
    }
}

/// Bitset distinctness test; stack storage up to 256 values.
pub(crate) fn all_distinct(q: u32, values: impl Iterator<Item = Elem>) -> bool {
    let words = (q as usize).div_ceil(64);
    let mut stack = [0u64; 4];
    let mut heap;
    let seen: &mut [u64] = if words <= stack.len() {
        &mut stack[..words]
    } else {
        heap = vec![0u64; words];
        &mut heap
    };
    for v in values {
        let (w, b) = ((v.0 / 64) as usize, v.0 % 64);
        if seen[w] >> b & 1 == 1 {
            return false;
        }
        seen[w] |= 1 << b;
    }
    true
}
