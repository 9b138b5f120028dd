//! Carlitz forms and their fractional approximants.
//!
//! A form with coefficients `a_0, ..., a_{n+1}` denotes
//!
//! ```text
//! P_n(x) = (...((a_0 x + a_1)^{q-2} + a_2)^{q-2} ... + a_n)^{q-2} + a_{n+1}
//! ```
//!
//! with `a_0 ≠ 0` and `a_2, ..., a_n ≠ 0`. Every permutation of `F_q` has such
//! a representation. Attached to a form are the convergents
//! `α_0 = 0, α_1 = a_0, β_0 = 1, β_1 = a_1`,
//! `α_k = a_k α_{k-1} + α_{k-2}`, `β_k = a_k β_{k-1} + β_{k-2}`, the
//! approximants `R_k(x) = (α_{k+1} x + β_{k+1}) / (α_k x + β_k)` and the
//! poles `x_k = -β_k / α_k`. Off the poles, `P_n` agrees with `R_n`.

use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::field::{Elem, Field, ProjectivePoint};
use crate::poly::{parse_codes, write_codes, PermMap};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize), serde(transparent))]
pub struct CarlitzForm {
    coeffs: Vec<Elem>,
}

impl CarlitzForm {
    pub fn new(field: &Field, coeffs: Vec<Elem>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::MalformedForm("a form needs at least a_0 and a_1"));
        }
        for &c in &coeffs {
            field.elem(c.0 as u64)?;
        }
        if coeffs[0].is_zero() {
            return Err(Error::MalformedForm("a_0 must be nonzero"));
        }
        let n = coeffs.len() - 2;
        if (2..=n).any(|i| coeffs[i].is_zero()) {
            return Err(Error::MalformedForm("a_2, ..., a_n must be nonzero"));
        }
        Ok(CarlitzForm { coeffs })
    }

    /// Parses `"a_0,a_1,...,a_{n+1}"`.
    pub fn parse(field: &Field, s: &str) -> Result<Self> {
        CarlitzForm::new(field, parse_codes(field, s)?)
    }

    pub(crate) fn from_coeffs_unchecked(coeffs: Vec<Elem>) -> Self {
        debug_assert!(coeffs.len() >= 2 && !coeffs[0].is_zero());
        CarlitzForm { coeffs }
    }

    /// Number of inversion steps `n`.
    #[inline]
    pub fn inversions(&self) -> usize {
        self.coeffs.len() - 2
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Nested evaluation of `P_n(c)`.
    #[inline]
    pub fn eval(&self, field: &Field, c: Elem) -> Elem {
        let mut v = field.add(field.mul(self.coeffs[0], c), self.coeffs[1]);
        for &a in &self.coeffs[2..] {
            v = field.add(field.inverse_or_zero(v), a);
        }
        v
    }

    /// Image table of `P_n`; always a permutation.
    pub fn expand(&self, field: &Field) -> PermMap {
        PermMap::from_fn(field, |c| self.eval(field, c))
    }

    pub fn convergents(&self, field: &Field) -> Convergents {
        let n = self.inversions();
        let mut alpha = Vec::with_capacity(n + 2);
        let mut beta = Vec::with_capacity(n + 2);
        alpha.extend([Elem::ZERO, self.coeffs[0]]);
        beta.extend([Elem::ONE, self.coeffs[1]]);
        for k in 2..=n + 1 {
            let a = self.coeffs[k];
            alpha.push(field.add(field.mul(a, alpha[k - 1]), alpha[k - 2]));
            beta.push(field.add(field.mul(a, beta[k - 1]), beta[k - 2]));
        }
        Convergents { alpha, beta }
    }

    pub fn pole_set(&self, field: &Field) -> PoleSet {
        self.convergents(field).pole_set(field)
    }

    /// `R_k` for `0 ≤ k ≤ n`.
    pub fn approximant(&self, field: &Field, k: usize) -> Result<FracTransform> {
        let n = self.inversions();
        if k > n {
            return Err(Error::IndexOutOfRange { index: k, max: n });
        }
        Ok(self.convergents(field).transform(k))
    }

    pub fn classify(&self, field: &Field) -> FormClass {
        let n = self.inversions();
        if n == 0 {
            return FormClass::Rank0;
        }
        let conv = self.convergents(field);
        match (conv.alpha[n].is_zero(), conv.beta[n].is_zero()) {
            (true, _) => FormClass::LinearApproximant,
            (false, true) => FormClass::L1AndL2,
            (false, false) => FormClass::L1,
        }
    }

    /// Writes `R_n(z) = (a z + b) / (z + d)` and `b̃ = a d - b`.
    pub fn normalize_last(&self, field: &Field) -> Result<NormalizedLast> {
        let n = self.inversions();
        if n == 0 {
            return Err(Error::NotInL1);
        }
        let conv = self.convergents(field);
        let lead = conv.alpha[n];
        if lead.is_zero() {
            return Err(Error::NotInL1);
        }
        let inv = field.inverse_or_zero(lead);
        let a = field.mul(conv.alpha[n + 1], inv);
        let b = field.mul(conv.beta[n + 1], inv);
        let d = field.mul(conv.beta[n], inv);
        let b_tilde = field.sub(field.mul(a, d), b);
        debug_assert!(!b_tilde.is_zero());
        Ok(NormalizedLast { a, b, d, b_tilde })
    }
}

impl fmt::Display for CarlitzForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_codes(f, &self.coeffs)
    }
}

/// The `(α_k, β_k)` sequence for `k = 0, ..., n+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Convergents {
    pub alpha: Vec<Elem>,
    pub beta: Vec<Elem>,
}

impl Convergents {
    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    /// `α_{k+1} β_k - α_k β_{k+1}`, which alternates between `a_0` and `-a_0`.
    pub fn cross_determinant(&self, field: &Field, k: usize) -> Elem {
        field.sub(field.mul(self.alpha[k + 1], self.beta[k]), field.mul(self.alpha[k], self.beta[k + 1]))
    }

    pub fn transform(&self, k: usize) -> FracTransform {
        FracTransform { num: (self.alpha[k + 1], self.beta[k + 1]), den: (self.alpha[k], self.beta[k]) }
    }

    pub fn pole_set(&self, field: &Field) -> PoleSet {
        let n = self.alpha.len() - 2;
        let poles: Vec<ProjectivePoint> = (1..=n)
            .map(|k| match field.checked_div(field.neg(self.beta[k]), self.alpha[k]) {
                Some(x) => ProjectivePoint::Finite(x),
                None => ProjectivePoint::Infinity,
            })
            .collect();
        let mut distinct = poles.clone();
        distinct.sort_unstable();
        distinct.dedup();
        PoleSet { poles, distinct }
    }
}

/// `x ↦ (num.0 x + num.1) / (den.0 x + den.1)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FracTransform {
    pub num: (Elem, Elem),
    pub den: (Elem, Elem),
}

impl FracTransform {
    pub fn eval(&self, field: &Field, x: Elem) -> ProjectivePoint {
        let top = field.add(field.mul(self.num.0, x), self.num.1);
        let bottom = field.add(field.mul(self.den.0, x), self.den.1);
        match field.checked_div(top, bottom) {
            Some(v) => ProjectivePoint::Finite(v),
            None => ProjectivePoint::Infinity,
        }
    }

    pub fn is_affine(&self) -> bool {
        self.den.0.is_zero()
    }
}

/// Poles `x_1, ..., x_n` in order, plus their distinct values.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PoleSet {
    pub poles: Vec<ProjectivePoint>,
    pub distinct: Vec<ProjectivePoint>,
}

impl PoleSet {
    pub fn contains(&self, x: Elem) -> bool {
        self.distinct.binary_search(&ProjectivePoint::Finite(x)).is_ok()
    }

    pub fn last(&self) -> Option<ProjectivePoint> {
        self.poles.last().copied()
    }

    /// Number of distinct poles.
    pub fn size(&self) -> usize {
        self.distinct.len()
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum FormClass {
    /// `n = 0`: an affine map.
    Rank0,
    /// `n ≥ 1` and `α_n ≠ 0`, last pole nonzero.
    L1,
    /// `n ≥ 1`, `α_n ≠ 0` and last pole `x_n = 0`.
    L1AndL2,
    /// `n ≥ 1` and `α_n = 0`: `R_n` is affine.
    LinearApproximant,
}

impl FormClass {
    pub fn in_l1(self) -> bool {
        matches!(self, FormClass::L1 | FormClass::L1AndL2)
    }
}

/// `R_n(z) = (a z + b) / (z + d)` with `b̃ = a d - b ≠ 0`; `-d` is the last pole.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NormalizedLast {
    pub a: Elem,
    pub b: Elem,
    pub d: Elem,
    pub b_tilde: Elem,
}

/// All forms with exactly `n` inversions over a field of order `q`, in
/// lexicographic order of `(a_0, ..., a_{n+1})`.
///
/// The space is indexable, so disjoint index ranges can be handed to
/// separate workers and the results merged by index.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct FormSpace {
    q: u32,
    n: usize,
}

impl FormSpace {
    pub fn new(field: &Field, n: usize) -> Self {
        FormSpace { q: field.order(), n }
    }

    pub fn inversions(&self) -> usize {
        self.n
    }

    /// Positions `0` and `2..=n` are nonzero; `1` and `n+1` range over `F_q`.
    #[inline]
    fn nonzero_slot(&self, pos: usize) -> bool {
        pos == 0 || (pos >= 2 && pos <= self.n)
    }

    #[inline]
    fn radix(&self, pos: usize) -> u64 {
        if self.nonzero_slot(pos) {
            self.q as u64 - 1
        } else {
            self.q as u64
        }
    }

    /// `(q-1)^n q^2` for `n ≥ 1`, `(q-1) q` for `n = 0`.
    pub fn len(&self) -> u64 {
        (0..self.n + 2).map(|pos| self.radix(pos)).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn form_at(&self, index: u64) -> CarlitzForm {
        debug_assert!(index < self.len());
        let mut coeffs = alloc::vec![Elem::ZERO; self.n + 2];
        let mut rest = index;
        for pos in (0..self.n + 2).rev() {
            let radix = self.radix(pos);
            let digit = (rest % radix) as u32;
            rest /= radix;
            coeffs[pos] = Elem(digit + self.nonzero_slot(pos) as u32);
        }
        CarlitzForm::from_coeffs_unchecked(coeffs)
    }

    pub fn iter(&self) -> FormIter {
        self.iter_range(0..self.len())
    }

    pub fn iter_range(&self, range: Range<u64>) -> FormIter {
        let end = range.end.min(self.len());
        let start = range.start.min(end);
        FormIter {
            space: *self,
            next: if start < end { Some(self.form_at(start).coeffs) } else { None },
            remaining: end - start,
        }
    }

    /// Splits the index space into `parts` contiguous, nearly equal slices.
    pub fn slices(&self, parts: usize) -> Vec<Range<u64>> {
        let len = self.len();
        let parts = (parts.max(1) as u64).min(len.max(1));
        (0..parts).map(|i| (len * i / parts)..(len * (i + 1) / parts)).collect()
    }
}

/// Odometer over a contiguous slice of a [`FormSpace`].
#[derive(Clone, Debug)]
pub struct FormIter {
    space: FormSpace,
    next: Option<Vec<Elem>>,
    remaining: u64,
}

impl Iterator for FormIter {
    type Item = CarlitzForm;

    fn next(&mut self) -> Option<CarlitzForm> {
        if self.remaining == 0 {
            return None;
        }
        let current = self.next.take()?;
        self.remaining -= 1;
        if self.remaining > 0 {
            let mut succ = current.clone();
            for pos in (0..succ.len()).rev() {
                let low = self.space.nonzero_slot(pos) as u32;
                if succ[pos].0 + 1 < self.space.q {
                    succ[pos].0 += 1;
                    break;
                }
                succ[pos].0 = low;
            }
            self.next = Some(succ);
        }
        Some(CarlitzForm::from_coeffs_unchecked(current))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.remaining as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for FormIter {}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn form(field: &Field, codes: &[u32]) -> CarlitzForm {
        CarlitzForm::new(field, codes.iter().map(|&c| Elem(c)).collect()).unwrap()
    }

    #[test]
    fn validation() {
        let f5 = Field::new(5, 1).unwrap();
        assert!(form(&f5, &[1, 0]).inversions() == 0);
        assert!(matches!(CarlitzForm::new(&f5, vec![Elem(0), Elem(1)]), Err(Error::MalformedForm(_))));
        assert!(matches!(CarlitzForm::new(&f5, vec![Elem(1)]), Err(Error::MalformedForm(_))));
        // a_2 = 0 with n = 2 is illegal, a_{n+1} = 0 is fine.
        assert!(CarlitzForm::new(&f5, vec![Elem(1), Elem(0), Elem(0), Elem(0)]).is_err());
        assert!(CarlitzForm::new(&f5, vec![Elem(1), Elem(0), Elem(1), Elem(0)]).is_ok());
        assert!(CarlitzForm::parse(&f5, "1,7").is_err());
        assert_eq!(CarlitzForm::parse(&f5, "2,0,3").unwrap().to_string(), "2,0,3");
    }

    #[test]
    fn expansion_examples() {
        let f5 = Field::new(5, 1).unwrap();
        let affine = form(&f5, &[3, 2]);
        for c in f5.elements() {
            assert_eq!(affine.eval(&f5, c), f5.add(f5.mul(Elem(3), c), Elem(2)));
        }
        let inv = form(&f5, &[1, 0, 0]).expand(&f5);
        assert_eq!(inv, crate::Poly::monomial(Elem::ONE, 3).to_map(&f5));
    }

    #[test]
    fn convergent_examples() {
        let f5 = Field::new(5, 1).unwrap();
        let conv = form(&f5, &[1, 0, 0]).convergents(&f5);
        assert_eq!(conv.alpha, vec![Elem(0), Elem(1), Elem(0)]);
        assert_eq!(conv.beta, vec![Elem(1), Elem(0), Elem(1)]);
        let seeds = form(&f5, &[2, 3]).convergents(&f5);
        assert_eq!(seeds.alpha, vec![Elem(0), Elem(2)]);
        assert_eq!(seeds.beta, vec![Elem(1), Elem(3)]);
    }

    #[test]
    fn poles_and_approximants() {
        let f5 = Field::new(5, 1).unwrap();
        let fm = form(&f5, &[1, 0, 0]);
        let poles = fm.pole_set(&f5);
        assert_eq!(poles.poles, vec![ProjectivePoint::Finite(Elem(0))]);
        let r1 = fm.approximant(&f5, 1).unwrap();
        assert_eq!(r1, FracTransform { num: (Elem(0), Elem(1)), den: (Elem(1), Elem(0)) });
        assert_eq!(r1.eval(&f5, Elem(0)), ProjectivePoint::Infinity);
        assert_eq!(r1.eval(&f5, Elem(2)), ProjectivePoint::Finite(Elem(3)));
        assert!(matches!(fm.approximant(&f5, 2), Err(Error::IndexOutOfRange { index: 2, max: 1 })));

        let affine = form(&f5, &[4, 1]);
        assert!(affine.pole_set(&f5).poles.is_empty());
        let r0 = affine.approximant(&f5, 0).unwrap();
        assert!(r0.is_affine());
        assert_eq!(r0.eval(&f5, Elem(2)), ProjectivePoint::Finite(Elem(4)));
    }

    #[test]
    fn classification() {
        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(form(&f5, &[1, 0, 0]).classify(&f5), FormClass::L1AndL2);
        assert_eq!(form(&f5, &[1, 2]).classify(&f5), FormClass::Rank0);
        assert_eq!(form(&f5, &[1, 1, 0]).classify(&f5), FormClass::L1);

        // α_2 = a_2 a_0 never vanishes, so no n = 2 form has an affine R_2;
        // the first such forms appear at n = 3, where α_3 = a_0 (a_2 a_3 + 1).
        let f7 = Field::new(7, 1).unwrap();
        let class_of =
            |n| FormSpace::new(&f7, n).iter().filter(|fm| fm.classify(&f7) == FormClass::LinearApproximant).count();
        assert_eq!(class_of(2), 0);
        let linear: Vec<_> =
            FormSpace::new(&f7, 3).iter().filter(|fm| fm.classify(&f7) == FormClass::LinearApproximant).collect();
        // a_0 in F*, a_1 free, a_2 in F* with a_3 = -1/a_2 forced, a_4 free.
        assert_eq!(linear.len(), 6 * 7 * 6 * 7);
        for fm in &linear {
            assert!(fm.convergents(&f7).alpha[3].is_zero());
            assert!(fm.approximant(&f7, 3).unwrap().is_affine());
        }
    }

    #[test]
    fn normalization() {
        let f5 = Field::new(5, 1).unwrap();
        let nl = form(&f5, &[1, 0, 0]).normalize_last(&f5).unwrap();
        assert_eq!((nl.a, nl.b, nl.d, nl.b_tilde), (Elem(0), Elem(1), Elem(0), Elem(4)));
        assert_eq!(form(&f5, &[1, 0]).normalize_last(&f5), Err(Error::NotInL1));
    }

    #[test]
    fn form_space_counts_and_order() {
        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(FormSpace::new(&f5, 1).len(), 100);
        assert_eq!(FormSpace::new(&f5, 0).len(), 20);
        let f7 = Field::new(7, 1).unwrap();
        let s2 = FormSpace::new(&f7, 2);
        assert_eq!(s2.len(), 1764);
        let all: Vec<_> = s2.iter().collect();
        assert_eq!(all.len(), 1764);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for (i, fm) in all.iter().enumerate().step_by(37) {
            assert_eq!(&s2.form_at(i as u64), fm);
            assert!(CarlitzForm::new(&f7, fm.coeffs().to_vec()).is_ok());
        }
        let sliced: Vec<_> = s2.slices(7).into_iter().flat_map(|r| s2.iter_range(r)).collect();
        assert_eq!(sliced, all);
    }
}
