use carlitz_core::bounds::{collision_count, SqrtInequality};
use carlitz_core::rank::carlitz_rank;
use carlitz_core::{CarlitzForm, Elem, Field, Poly, ProjectivePoint};
use proptest::prelude::*;

const FIELDS: &[(u64, u32)] = &[(2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (5, 2)];

fn field_strategy() -> impl Strategy<Value = Field> {
    prop::sample::select(FIELDS).prop_map(|(p, r)| Field::new(p, r).unwrap())
}

/// A field plus a valid form with up to `max_n` inversions.
fn form_strategy(max_n: usize) -> impl Strategy<Value = (Field, CarlitzForm)> {
    (field_strategy(), 0..=max_n).prop_flat_map(|(f, n)| {
        let q = f.order();
        let nonzero = prop::collection::vec(1..q, n.max(1));
        let free = prop::collection::vec(0..q, 2);
        (Just(f), nonzero, free).prop_map(move |(f, nz, free)| {
            let mut coeffs = vec![Elem(nz[0]), Elem(free[0])];
            if n >= 1 {
                coeffs.extend(nz[1..].iter().map(|&c| Elem(c)));
                coeffs.push(Elem(free[1]));
            }
            let form = CarlitzForm::new(&f, coeffs).unwrap();
            (f, form)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn sqrt_rule_matches_float(a in -1_000_000i64..=1_000_000, b in -1_000_000i64..=1_000_000,
                               c in -1_000_000i64..=1_000_000, q in 1u64..=1_000_000) {
        let exact = SqrtInequality::new(a, b, c, q).holds();
        let lhs = a as f64 + b as f64 * (q as f64).sqrt();
        let gap = lhs - c as f64;
        // Only near-ties are left to the exact rule.
        if gap.abs() > 1e-6 * (1.0 + lhs.abs()) {
            prop_assert_eq!(exact, gap >= 0.0);
        }
    }

    #[test]
    fn forms_expand_to_permutations((f, form) in form_strategy(6)) {
        prop_assert!(form.expand(&f).is_permutation());
    }

    #[test]
    fn expansion_agrees_with_approximant_off_poles((f, form) in form_strategy(6)) {
        let n = form.inversions();
        let poles = form.pole_set(&f);
        prop_assert!(poles.size() <= n);
        let r = form.approximant(&f, n).unwrap();
        let map = form.expand(&f);
        for x in f.elements() {
            if !poles.contains(x) {
                prop_assert_eq!(r.eval(&f, x), ProjectivePoint::Finite(map.get(x)));
            }
        }
    }

    #[test]
    fn cross_determinant_is_plus_minus_a0((f, form) in form_strategy(6)) {
        let conv = form.convergents(&f);
        let a0 = form.coeffs()[0];
        for k in 1..conv.len() - 1 {
            let d = conv.cross_determinant(&f, k);
            prop_assert!(d == a0 || d == f.neg(a0));
        }
    }

    #[test]
    fn collision_fibers_are_bounded((f, form) in form_strategy(4), k in 1usize..5, seed in any::<u64>()) {
        prop_assume!(form.classify(&f).in_l1());
        let q = f.order() as u64;
        prop_assume!((k as u64) < q - 1);
        let mut coeffs: Vec<Elem> = (0..=k as u64).map(|i| Elem(((seed >> (i * 4)) % q) as u32)).collect();
        if coeffs[k].is_zero() {
            coeffs[k] = Elem::ONE;
        }
        let rep = collision_count(&f, &form, &Poly::new(coeffs)).unwrap();
        let total: usize = rep.fiber_profile.iter().map(|(s, c)| s * c).sum();
        let mu: u64 = rep.fiber_profile.iter().map(|(&s, &c)| (s * (s - 1) * c) as u64).sum();
        prop_assert_eq!(total as u64, q - 1);
        prop_assert_eq!(rep.mu, mu);
        prop_assert!(rep.max_fiber as u64 <= rep.k + 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_never_exceeds_representation_length(codes in prop::collection::vec(1u32..5, 1..5), a1 in 0u32..5, last in 0u32..5) {
        let f = Field::new(5, 1).unwrap();
        let mut coeffs = vec![Elem(codes[0]), Elem(a1)];
        coeffs.extend(codes[1..].iter().map(|&c| Elem(c)));
        coeffs.push(Elem(last));
        let form = CarlitzForm::new(&f, coeffs).unwrap();
        let rank = carlitz_rank(&f, &form.expand(&f), form.inversions()).unwrap().rank();
        prop_assert!(rank.is_some_and(|r| r <= form.inversions()));
    }
}
