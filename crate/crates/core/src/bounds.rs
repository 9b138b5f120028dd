//! Exact evaluation of the degree bounds and the counting quantities behind
//! them.
//!
//! Every comparison involving `√q` is decided on integers by squaring, so
//! verdicts never depend on floating point.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;

use crate::field::{Elem, Field};
use crate::form::{CarlitzForm, NormalizedLast};
use crate::num::gcd;
use crate::poly::{Poly, ValueSetSummary};
use crate::{Error, Result};

/// The claim `a + b·√q ≥ c`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SqrtInequality {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub q: u64,
}

impl SqrtInequality {
    pub fn new(a: i64, b: i64, c: i64, q: u64) -> Self {
        SqrtInequality { a, b, c, q }
    }

    pub fn holds(&self) -> bool {
        sqrt_term_at_least(self.b, self.c as i128 - self.a as i128, self.q)
    }
}

/// `b·√q ≥ d`, exactly.
fn sqrt_term_at_least(b: i64, d: i128, q: u64) -> bool {
    let b = b as i128;
    let q = q as i128;
    if b >= 0 {
        d <= 0 || b * b * q >= d * d
    } else {
        // -|b|√q ≥ d  ⇔  |b|√q ≤ -d
        d <= 0 && b * b * q <= d * d
    }
}

/// `x - y·√q > 0` for `y ≥ 0`.
fn strictly_positive(x: i64, y: i64, q: u64) -> bool {
    debug_assert!(y >= 0);
    let (x, y, q) = (x as i128, y as i128, q as i128);
    x > 0 && x * x > y * y * q
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum BoundKind {
    /// `nk + k(k-1)√q ≥ q - ν - n` for an arbitrary difference of degree `k`.
    DifferenceDegree,
    /// `k(n+3) + (k-1)(m-1)√q ≥ q - n` for a monomial difference.
    MonomialDifference,
    /// `q ≥ k(k-1)√q + k + ν + 1`.
    Nontriviality,
    /// No complete mapping of degree `d` over `F_p` once `p > (d² - 3d + 4)²`.
    CompleteMappingDegree,
    /// `t ≥ 3d/5` for differences of equal-degree permutations of `F_p`.
    DifferenceOverPrime,
    /// `Crk(f) ≥ ⌊q/2⌋` for complete mappings with small linearity.
    CompleteMappingRank,
}

/// One evaluated inequality with its inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundReport {
    pub kind: BoundKind,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none", default))]
    pub q: Option<u64>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none", default))]
    pub p: Option<u64>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none", default))]
    pub n: Option<u64>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none", default))]
    pub k: Option<u64>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none", default))]
    pub d: Option<u64>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none", default))]
    pub t: Option<u64>,
    /// `gcd(k, q-1)`.
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none", default))]
    pub nu: Option<u64>,
    /// `gcd(k+1, q-1)`.
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none", default))]
    pub m: Option<u64>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none", default))]
    pub inequality: Option<SqrtInequality>,
    /// Kind-specific threshold: `(d²-3d+4)²`, `⌊q/2⌋`, or the least `k` with
    /// `k(n+3) ≥ q - n`.
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none", default))]
    pub threshold: Option<u64>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none", default))]
    pub hypothesis_bound: Option<u64>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none", default))]
    pub hypothesis_holds: Option<bool>,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

impl BoundReport {
    fn new(kind: BoundKind, lhs: String, rhs: String, holds: bool) -> Self {
        BoundReport {
            kind,
            q: None,
            p: None,
            n: None,
            k: None,
            d: None,
            t: None,
            nu: None,
            m: None,
            inequality: None,
            threshold: None,
            hypothesis_bound: None,
            hypothesis_holds: None,
            lhs,
            rhs,
            holds,
        }
    }
}

fn check_degree_range(q: u64, n: u64, k: u64) -> Result<()> {
    if q < 3 {
        return Err(Error::ParameterOutOfRange("q must be at least 3"));
    }
    if n < 1 {
        return Err(Error::ParameterOutOfRange("n must be at least 1"));
    }
    if k < 1 || k >= q - 1 {
        return Err(Error::ParameterOutOfRange("k must satisfy 1 <= k < q - 1"));
    }
    Ok(())
}

/// `nk + k(k-1)√q ≥ q - ν - n`, `ν = gcd(k, q-1)`.
pub fn main_bound(q: u64, n: u64, k: u64) -> Result<BoundReport> {
    check_degree_range(q, n, k)?;
    let nu = gcd(k, q - 1);
    let (a, b, c) = ((n * k) as i64, (k * (k - 1)) as i64, q as i64 - nu as i64 - n as i64);
    let ineq = SqrtInequality::new(a, b, c, q);
    let mut rep = BoundReport::new(
        BoundKind::DifferenceDegree,
        format!("nk + k(k-1)sqrt(q) = {a} + {b}*sqrt({q})"),
        format!("q - nu - n = {c}"),
        ineq.holds(),
    );
    rep.q = Some(q);
    rep.n = Some(n);
    rep.k = Some(k);
    rep.nu = Some(nu);
    rep.inequality = Some(ineq);
    Ok(rep)
}

/// `k(n+3) + (k-1)(m-1)√q ≥ q - n`, `m = gcd(k+1, q-1)`.
///
/// `threshold` carries the least `k` with `k(n+3) ≥ q - n`, which is the
/// whole bound when `m = 1`.
pub fn monomial_bound(q: u64, n: u64, k: u64) -> Result<BoundReport> {
    check_degree_range(q, n, k)?;
    let m = gcd(k + 1, q - 1);
    let (a, b, c) = ((k * (n + 3)) as i64, ((k - 1) * (m - 1)) as i64, q as i64 - n as i64);
    let ineq = SqrtInequality::new(a, b, c, q);
    let mut rep = BoundReport::new(
        BoundKind::MonomialDifference,
        format!("k(n+3) + (k-1)(m-1)sqrt(q) = {a} + {b}*sqrt({q})"),
        format!("q - n = {c}"),
        ineq.holds(),
    );
    rep.q = Some(q);
    rep.n = Some(n);
    rep.k = Some(k);
    rep.m = Some(m);
    rep.inequality = Some(ineq);
    rep.threshold = Some(min_k_when_m_is_one(q, n));
    Ok(rep)
}

/// `⌈(q - n) / (n + 3)⌉`, floored at 1.
pub fn min_k_when_m_is_one(q: u64, n: u64) -> u64 {
    q.saturating_sub(n).div_ceil(n + 3).max(1)
}

/// Whether the difference-degree bound can exclude anything:
/// `q ≥ k(k-1)√q + k + ν + 1`.
pub fn nontriviality(q: u64, k: u64) -> Result<BoundReport> {
    if q < 3 || k < 1 {
        return Err(Error::ParameterOutOfRange("need q >= 3 and k >= 1"));
    }
    let nu = gcd(k, q - 1);
    // q - k - ν - 1 - k(k-1)√q ≥ 0
    let ineq = SqrtInequality::new(q as i64 - k as i64 - nu as i64 - 1, -((k * (k - 1)) as i64), 0, q);
    let mut rep = BoundReport::new(
        BoundKind::Nontriviality,
        format!("q = {q}"),
        format!("k(k-1)sqrt(q) + k + nu + 1 = {}*sqrt({q}) + {}", k * (k - 1), k + nu + 1),
        ineq.holds(),
    );
    rep.q = Some(q);
    rep.k = Some(k);
    rep.nu = Some(nu);
    rep.inequality = Some(ineq);
    Ok(rep)
}

/// Inputs of the three earlier results the bounds generalise.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum LegacyInput {
    /// Degree `d` complete mappings over the prime field `F_p`.
    CompleteMappingDegree { p: u64, d: u64 },
    /// Difference degree `t` of two degree-`d` permutations.
    DifferenceOverPrime { d: u64, t: u64 },
    /// A complete mapping of `F_q` with the given rank and linearity.
    CompleteMappingRank { q: u64, crk: u64, linearity: u64 },
}

pub fn legacy_predicate(input: LegacyInput) -> Result<BoundReport> {
    match input {
        LegacyInput::CompleteMappingDegree { p, d } => {
            if d < 2 {
                return Err(Error::ParameterOutOfRange("degree must be at least 2"));
            }
            let base = d * d + 4 - 3 * d;
            let threshold = base * base;
            let mut rep = BoundReport::new(
                BoundKind::CompleteMappingDegree,
                format!("p = {p}"),
                format!("(d^2 - 3d + 4)^2 = {threshold}"),
                p > threshold,
            );
            rep.p = Some(p);
            rep.d = Some(d);
            rep.threshold = Some(threshold);
            Ok(rep)
        }
        LegacyInput::DifferenceOverPrime { d, t } => {
            if d < 3 || t < 1 {
                return Err(Error::ParameterOutOfRange("need d >= 3 and t >= 1"));
            }
            let mut rep = BoundReport::new(
                BoundKind::DifferenceOverPrime,
                format!("5t = {}", 5 * t),
                format!("3d = {}", 3 * d),
                5 * t >= 3 * d,
            );
            rep.d = Some(d);
            rep.t = Some(t);
            Ok(rep)
        }
        LegacyInput::CompleteMappingRank { q, crk, linearity } => {
            if q < 3 {
                return Err(Error::ParameterOutOfRange("q must be at least 3"));
            }
            let half = q / 2;
            let hyp = (q + 5) / 2;
            let hypothesis = linearity < hyp;
            let mut rep = BoundReport::new(
                BoundKind::CompleteMappingRank,
                format!("Crk = {crk}"),
                format!("floor(q/2) = {half}"),
                !hypothesis || crk >= half,
            );
            rep.q = Some(q);
            rep.n = Some(crk);
            rep.threshold = Some(half);
            rep.hypothesis_bound = Some(hyp);
            rep.hypothesis_holds = Some(hypothesis);
            Ok(rep)
        }
    }
}

/// Collision statistics of `H_n(x) = (a x - b̃)/x + g(x - d)` on `F_q^*`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CollisionReport {
    pub q: u64,
    pub n: u64,
    pub k: u64,
    pub normalized: NormalizedLast,
    /// Ordered pairs `x ≠ y` in `F_q^*` with `H_n(x) = H_n(y)`.
    pub mu: u64,
    /// Fiber size → number of values with that fiber size.
    pub fiber_profile: BTreeMap<usize, usize>,
    pub max_fiber: usize,
    /// `Σ (n_u - 1)`.
    pub excess: u64,
    /// Distinct poles of the form.
    pub distinct_poles: u64,
    /// `μ/(k+1) + 1` as a fraction.
    pub pole_bound_num: u64,
    pub pole_bound_den: u64,
    /// `(k+1)(n-1)`.
    pub pole_capacity: u64,
}

impl CollisionReport {
    pub fn fiber_bound_holds(&self) -> bool {
        self.max_fiber as u64 <= self.k + 1
    }
}

/// Tallies the fibers of `H_n` for an `L1` form and a non-constant `g`.
pub fn collision_count(field: &Field, form: &CarlitzForm, g: &Poly) -> Result<CollisionReport> {
    let nl = form.normalize_last(field)?;
    let g = g.reduce(field);
    let q = field.order() as u64;
    let k = match g.degree() {
        None | Some(0) => return Err(Error::ConstantG),
        Some(k) if k as u64 >= q - 1 => return Err(Error::ParameterOutOfRange("deg g must be below q - 1")),
        Some(k) => k as u64,
    };
    let summary = collision_fibers(field, &nl, &g);
    let n = form.inversions() as u64;
    let mu = summary.ordered_collisions();
    Ok(CollisionReport {
        q,
        n,
        k,
        normalized: nl,
        mu,
        fiber_profile: summary.size_histogram(),
        max_fiber: summary.max_fiber(),
        excess: summary.excess(),
        distinct_poles: form.pole_set(field).size() as u64,
        pole_bound_num: mu + k + 1,
        pole_bound_den: k + 1,
        pole_capacity: (k + 1) * (n - 1),
    })
}

/// Value multiset of `H_n` over `F_q^*`.
pub fn collision_fibers(field: &Field, nl: &NormalizedLast, g: &Poly) -> ValueSetSummary {
    ValueSetSummary::from_values(field.nonzero_elements().map(|x| {
        let frac = field.sub(nl.a, field.mul(nl.b_tilde, field.inverse_or_zero(x)));
        field.add(frac, g.eval(field, field.sub(x, nl.d)))
    }))
}

/// `n ≥ 1 + μ/(k+1)`, i.e. `(k+1)(n-1) ≥ μ`.
pub fn pole_consistency(report: &CollisionReport) -> bool {
    report.pole_capacity >= report.mu
}

/// Ordered pairs `x ≠ y` in `F_q^*` with `xy = b̃`.
///
/// With `g = x` the collisions of `H_n` are the pairs with `xy = -b̃`, so
/// `μ = k1_mu_formula(-b̃)`; the two agree unless `q ≡ 3 (mod 4)`.
pub fn k1_mu_formula(field: &Field, b_tilde: Elem) -> Result<u64> {
    if b_tilde.is_zero() {
        return Err(Error::ZeroInput);
    }
    let q = field.order() as u64;
    Ok(if q.is_multiple_of(2) {
        q - 2
    } else if field.is_square(b_tilde) {
        q - 3
    } else {
        q - 1
    })
}

/// `μ ≥ q + 1 - k(k-1)√q - (ν + k + 2)`, the collision floor behind the
/// difference-degree bound.
pub fn main_mu_floor(q: u64, k: u64, mu: u64) -> SqrtInequality {
    let nu = gcd(k, q - 1);
    SqrtInequality::new(mu as i64, (k * (k - 1)) as i64, q as i64 + 1 - (nu + k + 2) as i64, q)
}

/// `μ ≥ q - (k-1)(m-1)√q - (4k+1)`, the collision floor behind the monomial bound.
pub fn monomial_mu_floor(q: u64, k: u64, mu: u64) -> SqrtInequality {
    let m = gcd(k + 1, q - 1);
    SqrtInequality::new(mu as i64, ((k - 1) * (m - 1)) as i64, q as i64 - (4 * k + 1) as i64, q)
}

/// Affine point counts on `y^{k+1} = b(x-1) / (c x (x^k - 1))`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CurveCountReport {
    pub q: u64,
    pub k: u64,
    pub b: Elem,
    pub c: Elem,
    /// `gcd(k+1, q-1)`.
    pub m: u64,
    /// `(k-1)(m-1)/2`.
    pub genus: u64,
    /// Points in `F_q^* × F_q^*` with `x (x^k - 1) ≠ 0`. For a monomial
    /// difference this is exactly the collision count `μ`.
    pub affine_count: u64,
    /// Points in `F_q^* × F_q^*` of the reduced model
    /// `y^m = b / (c x (1 + x + ... + x^{k-1}))`, which also sees `x = 1`.
    pub kummer_affine_count: u64,
    /// `kummer_affine_count ≥ q - (k-1)(m-1)√q - k`.
    pub floor: SqrtInequality,
    /// `q - (k-1)(m-1)√q - k > 0`.
    pub floor_positive: bool,
    pub floor_holds: bool,
    /// The same floor applied to `affine_count`.
    pub literal_floor_holds: bool,
    /// `γ` with `(γ², γ)` on the curve.
    pub parabola_intersections: u64,
}

impl CurveCountReport {
    /// The floor is a claim only for `m ≥ 2` and a positive right-hand side.
    pub fn floor_applies(&self) -> bool {
        self.m >= 2 && self.floor_positive
    }
}

fn check_curve_params(field: &Field, k: u64, b: Elem, c: Elem) -> Result<()> {
    field.elem(b.0 as u64)?;
    field.elem(c.0 as u64)?;
    if b.is_zero() || c.is_zero() {
        return Err(Error::ZeroCoefficient);
    }
    if k < 1 || k >= field.order() as u64 - 1 {
        return Err(Error::ParameterOutOfRange("k must satisfy 1 <= k < q - 1"));
    }
    Ok(())
}

/// Counts points by the power-residue criterion: for fixed `x`, `y^{k+1} = v`
/// has `m` solutions in `F_q^*` when `v` is an `m`-th power and none otherwise.
pub fn curve_affine_count(field: &Field, k: u64, b: Elem, c: Elem) -> Result<CurveCountReport> {
    check_curve_params(field, k, b, c)?;
    let q = field.order() as u64;
    let m = gcd(k + 1, q - 1);
    let fiber = |v: Elem| -> u64 {
        if !v.is_zero() && field.is_mth_power(v, m).unwrap_or(false) {
            m
        } else {
            0
        }
    };

    let mut literal = 0;
    let mut kummer = 0;
    for x in field.nonzero_elements() {
        let xk = field.pow(x, k);
        if xk != Elem::ONE {
            let den = field.mul(c, field.mul(x, field.sub(xk, Elem::ONE)));
            let v = field.mul(field.mul(b, field.sub(x, Elem::ONE)), field.inverse_or_zero(den));
            literal += fiber(v);
        }
        let geometric = (0..k).fold((Elem::ZERO, Elem::ONE), |(s, pw), _| (field.add(s, pw), field.mul(pw, x))).0;
        let den = field.mul(c, field.mul(x, geometric));
        if !den.is_zero() {
            kummer += fiber(field.mul(b, field.inverse_or_zero(den)));
        }
    }

    let width = ((k - 1) * (m - 1)) as i64;
    let floor = SqrtInequality::new(kummer as i64, width, q as i64 - k as i64, q);
    let literal_floor = SqrtInequality::new(literal as i64, width, q as i64 - k as i64, q);
    Ok(CurveCountReport {
        q,
        k,
        b,
        c,
        m,
        genus: (k - 1) * (m - 1) / 2,
        affine_count: literal,
        kummer_affine_count: kummer,
        floor,
        floor_positive: strictly_positive(q as i64 - k as i64, width, q),
        floor_holds: floor.holds(),
        literal_floor_holds: literal_floor.holds(),
        parabola_intersections: parabola_intersections(field, k, b, c)?,
    })
}

/// Number of `γ ∈ F_q` with `(γ², γ)` on the curve, by substitution.
pub fn parabola_intersections(field: &Field, k: u64, b: Elem, c: Elem) -> Result<u64> {
    check_curve_params(field, k, b, c)?;
    Ok(field
        .nonzero_elements()
        .filter(|&gamma| {
            let x = field.mul(gamma, gamma);
            let xk = field.pow(x, k);
            if xk == Elem::ONE {
                return false;
            }
            let lhs = field.mul(field.pow(gamma, k + 1), field.mul(c, field.mul(x, field.sub(xk, Elem::ONE))));
            lhs == field.mul(b, field.sub(x, Elem::ONE))
        })
        .count() as u64)
}
