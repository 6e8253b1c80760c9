mod common;

use donaldson::asymptotics::vandermonde_recover;
use donaldson::cli::ManifoldDoc;
use donaldson::exact_algebra::{GaussianRational as G, Polynomial, Rational};
use donaldson::geography::{combo_threshold, linear_combo_search, stipsicz_profiles};
use donaldson::lattice::{signature, H2Class};
use donaldson::moves::{blowdown, blowup, fiber_sum_numerics, BettiTriple};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-10_000i64..10_000, 1i64..500).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn gaussian() -> impl Strategy<Value = G> {
    (rational(), rational()).prop_map(|(re, im)| G::new(re, im))
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(gaussian(), 0..7).prop_map(Polynomial::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn gaussian_ops_match_reference(a in gaussian(), b in gaussian()) {
        let sum = &a + &b;
        prop_assert_eq!(&sum.re, &(&a.re + &b.re));
        prop_assert_eq!(&sum.im, &(&a.im + &b.im));
        let diff = &a - &b;
        prop_assert_eq!(&diff.re, &(&a.re - &b.re));
        let prod = &a * &b;
        prop_assert_eq!(&prod.re, &(&a.re * &b.re - &a.im * &b.im));
        prop_assert_eq!(&prod.im, &(&a.re * &b.im + &a.im * &b.re));
        // results stay in lowest terms, so equality and hashing agree
        for r in [&sum.re, &sum.im, &prod.re, &prod.im] {
            let normal = Rational::new(r.numer().clone(), r.denom().clone());
            prop_assert_eq!(r.numer(), normal.numer());
            prop_assert_eq!(r.denom(), normal.denom());
        }
    }

    #[test]
    fn division_with_remainder(a in polynomial(), b in polynomial()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn gaussian_serde_round_trip(a in gaussian()) {
        let text = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<G>(&text).unwrap(), a);
    }

    #[test]
    fn combo_search_agrees_with_brute_force(g in 2i64..80, extra in 0i64..400, min_k1 in 0i64..4) {
        let (v1, v2) = stipsicz_profiles(g).unwrap();
        let (n1, n2) = (v1.n_plus(), v2.n_plus());
        let threshold = combo_threshold(n1, n2, min_k1).unwrap();
        let m = 2 * extra;
        let brute = (0..n1).find(|&k2| {
            let rest = m - k2 * n2;
            rest >= min_k1 * n1 && rest % n1 == 0
        });
        let found = linear_combo_search(n1, n2, m, min_k1).unwrap();
        prop_assert_eq!(found.map(|(_, k2)| k2), brute);
        if let Some((k1, k2)) = found {
            prop_assert_eq!(k1 * n1 + k2 * n2, m);
            prop_assert!(k1 >= min_k1 && (0..n1).contains(&k2));
        }
        if m >= threshold {
            prop_assert!(found.is_some(), "m = {} at or above threshold {} unreachable", m, threshold);
        }
    }

    #[test]
    fn repeated_fiber_sums_commute(
        g in 1i64..8,
        w in (0i64..10, 0i64..30),
        vs in prop::collection::vec((0i64..6, 1i64..20, 0i64..40), 1..6),
        seed in any::<u64>(),
    ) {
        let w = BettiTriple::new(0, 2 * w.0 + 1, w.1);
        let vs: Vec<BettiTriple> = vs.into_iter().map(|(b1, p, m)| BettiTriple::new(b1.min(2 * g), p, m)).collect();
        let run = |order: &[BettiTriple]| {
            order.iter().fold(w, |acc, v| fiber_sum_numerics(acc, *v, g).betti())
        };
        let mut shuffled = vs.clone();
        use rand::seq::SliceRandom;
        shuffled.shuffle(&mut common::rng(seed));
        prop_assert_eq!(run(&vs), run(&shuffled));
    }

    #[test]
    fn vandermonde_round_trip(c in prop::array::uniform4(gaussian()), genus in 2i64..12) {
        let top = G::from_int(2 * genus - 2);
        let vals: Vec<G> = (0..4u64)
            .map(|n| {
                let s = (0..4).fold(G::from_int(0), |acc, r| &acc + &(&G::i_pow(r * n as i64) * &c[r as usize]));
                &s * &top.pow(n)
            })
            .collect();
        let vals = [vals[0].clone(), vals[1].clone(), vals[2].clone(), vals[3].clone()];
        prop_assert_eq!(vandermonde_recover(&vals, genus).unwrap(), c);
    }

    #[test]
    fn manifold_documents_round_trip(seed in any::<u64>()) {
        let x = common::random_manifold(&mut common::rng(seed), 0);
        let text = serde_json::to_string(&ManifoldDoc::from_manifold(&x)).unwrap();
        let back = serde_json::from_str::<ManifoldDoc>(&text).unwrap().to_manifold().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn lattice_invariants_under_change_of_basis(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let l = common::random_lattice(&mut rng);
        prop_assert_eq!(signature(l.gram()).unwrap(), l.signature());
        prop_assert_eq!(l.b_plus() % 2, 1);
        let c = common::characteristic(&l);
        prop_assert!(l.is_characteristic(&c).unwrap());
        let v = common::random_class(&mut rng, l.rank(), 3);
        prop_assert!(l.is_characteristic(&(&c + &v.scale(2))).unwrap());
        // Wu: c² ≡ σ (mod 8)
        prop_assert_eq!((l.square(&c).unwrap() - l.signature()).rem_euclid(8), 0);
    }

    #[test]
    fn blowups_in_sequence_blow_down_in_reverse(seed in any::<u64>(), times in 1usize..4) {
        let x = common::random_manifold(&mut common::rng(seed), 0);
        let mut stack = vec![x.clone()];
        for _ in 0..times {
            stack.push(blowup(stack.last().unwrap()));
        }
        let mut current = stack.pop().unwrap();
        while let Some(expected) = stack.pop() {
            let e = H2Class::basis(current.rank(), current.rank() - 1);
            current = blowdown(&current, &e).unwrap();
            prop_assert_eq!(&current, &expected);
        }
    }
}
