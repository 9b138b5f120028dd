//! Brute-force counterparts of the library's fast paths. These share only
//! field arithmetic with the code they check.

use carlitz_core::{CarlitzForm, Elem, Field, Poly, ProjectivePoint};

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Sorting check of bijectivity.
pub fn is_bijective(values: &[Elem]) -> bool {
    let mut v = values.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len() == values.len()
}

/// Ordered pairs `x ≠ y` in `F_q^*` with `xy = b`.
pub fn hyperbola_pairs(field: &Field, b: Elem) -> u64 {
    let mut count = 0;
    for x in field.nonzero_elements() {
        for y in field.nonzero_elements() {
            if x != y && field.mul(x, y) == b {
                count += 1;
            }
        }
    }
    count
}

/// Ordered collision pairs of `R_n + g` off the last pole, with `R_n`
/// evaluated from the convergents.
pub fn collision_pairs(field: &Field, form: &CarlitzForm, g: &Poly) -> u64 {
    let r = form.approximant(field, form.inversions()).expect("n is a valid index");
    let values: Vec<Option<Elem>> = field
        .elements()
        .map(|z| match r.eval(field, z) {
            ProjectivePoint::Finite(v) => Some(field.add(v, g.eval(field, z))),
            ProjectivePoint::Infinity => None,
        })
        .collect();
    let mut count = 0;
    for (i, u) in values.iter().enumerate() {
        for (j, w) in values.iter().enumerate() {
            if i != j && u.is_some() && u == w {
                count += 1;
            }
        }
    }
    count
}

/// Point counts on `y^{k+1} = b(x-1)/(c x (x^k - 1))` over `F_q^* × F_q^*`,
/// literally and on the reduced model `y^{k+1} c x (1 + ... + x^{k-1}) = b`.
pub fn curve_points(field: &Field, k: u64, b: Elem, c: Elem) -> (u64, u64) {
    let powers: Vec<Elem> = field.nonzero_elements().map(|y| field.pow(y, k + 1)).collect();
    let (mut literal, mut reduced) = (0, 0);
    for x in field.nonzero_elements() {
        let xk = field.pow(x, k);
        let lit_den = field.mul(c, field.mul(x, field.sub(xk, Elem::ONE)));
        let lit_rhs = field.mul(b, field.sub(x, Elem::ONE));
        let mut s = Elem::ZERO;
        for i in 0..k {
            s = field.add(s, field.pow(x, i));
        }
        let red_den = field.mul(c, field.mul(x, s));
        for &yk in &powers {
            if !lit_den.is_zero() && field.mul(yk, lit_den) == lit_rhs {
                literal += 1;
            }
            if !red_den.is_zero() && field.mul(yk, red_den) == b {
                reduced += 1;
            }
        }
    }
    (literal, reduced)
}

/// `γ ∈ F_q` with `(γ², γ)` on the literal curve.
pub fn parabola_points(field: &Field, k: u64, b: Elem, c: Elem) -> u64 {
    field
        .elements()
        .filter(|&g| {
            let x = field.mul(g, g);
            let den = field.mul(c, field.mul(x, field.sub(field.pow(x, k), Elem::ONE)));
            !den.is_zero() && field.mul(field.pow(g, k + 1), den) == field.mul(b, field.sub(x, Elem::ONE))
        })
        .count() as u64
}

pub fn genus(q: u64, k: u64) -> u64 {
    let m = gcd(k + 1, q - 1);
    (k - 1) * (m - 1) / 2
}

fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// `a + b√q ≥ c` via `⌊b√q⌋` for `b ≥ 0`, which is exact since the other
/// terms are integers.
pub fn sqrt_inequality(a: i64, b: i64, c: i64, q: u64) -> bool {
    assert!(b >= 0);
    let floor = isqrt((b as u128) * (b as u128) * q as u128) as i128;
    a as i128 + floor >= c as i128
}

/// `nk + k(k-1)√q ≥ q - gcd(k, q-1) - n`.
pub fn main_bound(q: u64, n: u64, k: u64) -> bool {
    let nu = gcd(k, q - 1);
    sqrt_inequality((n * k) as i64, (k * (k - 1)) as i64, q as i64 - nu as i64 - n as i64, q)
}

/// `k(n+3) + (k-1)(m-1)√q ≥ q - n`.
pub fn monomial_bound(q: u64, n: u64, k: u64) -> bool {
    let m = gcd(k + 1, q - 1);
    sqrt_inequality((k * (n + 3)) as i64, ((k - 1) * (m - 1)) as i64, q as i64 - n as i64, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_oracle() {
        assert!(sqrt_inequality(2, 1, 4, 4));
        assert!(!sqrt_inequality(2, 1, 5, 8));
        assert!(sqrt_inequality(2, 1, 4, 5));
        assert!(main_bound(9, 3, 2));
        assert!(!main_bound(25, 1, 1));
    }

    #[test]
    fn hyperbola_small() {
        let f7 = Field::new(7, 1).unwrap();
        assert_eq!(hyperbola_pairs(&f7, Elem(2)), 4);
        assert_eq!(hyperbola_pairs(&f7, Elem(3)), 6);
        let f8 = Field::new(2, 3).unwrap();
        assert!(f8.nonzero_elements().all(|b| hyperbola_pairs(&f8, b) == 6));
    }

    #[test]
    fn genus_small() {
        assert_eq!(genus(7, 2), 1);
        assert_eq!(genus(8, 2), 0);
    }
}
