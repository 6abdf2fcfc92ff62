use std::f64::consts::PI;

use cantorval::digits::{
    count_prefixes, cylinder_interval, membership_probe, pair_rewrite, to_restricted_digits,
    Membership, RewriteDirection,
};
use cantorval::distribution::{
    char_fn, classify, criteria_general, criteria_s4, decompose_uniform, limsup_lower_bound,
    multigeometric_law_exact, phi_k, Reason, VerdictKind,
};
use cantorval::geometry::{
    cylinder_cover, gaps, interior_measure_estimate, maximal_interval, symmetry_map,
};
use cantorval::rational::{inv_pow, ratio};
use cantorval::sampling::{
    cdf_bracket, digits_numerator, eta_block_digit, sample_many_digits, truncated_dist, AtomProbs,
};
use cantorval::{Base, DigitLaw, DigitString, EvalDepth, IntervalUnion, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn base(s: u32) -> Base {
    Base::new(s).unwrap()
}

fn weights(len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..50, len).prop_filter("two or more atoms", |w| {
        w.iter().filter(|&&x| x > 0).count() >= 2
    })
}

fn exact_law(s: u32, w: &[u32]) -> DigitLaw {
    let total: u32 = w.iter().sum();
    DigitLaw::exact(
        base(s),
        w.iter().map(|&x| ratio(x as i64, total as i64)).collect(),
    )
    .unwrap()
}

fn float_law(s: u32, w: &[u32]) -> DigitLaw {
    let total: u32 = w.iter().sum();
    let mut p: Vec<f64> = w.iter().map(|&x| x as f64 / total as f64).collect();
    let drift: f64 = 1.0 - p.iter().sum::<f64>();
    let j = p.iter().position(|&x| x > 0.0).unwrap();
    p[j] += drift;
    DigitLaw::float(base(s), p).unwrap()
}

fn even_base() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![4u32, 6, 8])
}

fn any_law() -> impl Strategy<Value = DigitLaw> {
    even_base()
        .prop_flat_map(|s| (Just(s), weights(s as usize + 2), any::<bool>()))
        .prop_map(|(s, w, exact)| {
            if exact {
                exact_law(s, &w)
            } else {
                float_law(s, &w)
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rewrite_preserves_value(
        s in even_base(),
        pre in prop::collection::vec(0u32..10, 0..6),
        period in prop::collection::vec(0u32..10, 0..4),
        pos in 1usize..8,
        down in any::<bool>(),
        pick in (0u32..100, 0u32..100),
    ) {
        let clamp = |d: u32| d % (s + 2);
        let mut pre: Vec<u32> = pre.into_iter().map(clamp).collect();
        let period: Vec<u32> = period.into_iter().map(clamp).collect();
        while pre.len() < pos + 1 {
            pre.push(0);
        }
        let (a, b) = if down {
            (pick.0 % (s + 1), s + pick.1 % 2)
        } else {
            (1 + pick.0 % (s + 1), pick.1 % 2)
        };
        pre[pos - 1] = a;
        pre[pos] = b;
        let x = DigitString::new(base(s), pre, period).unwrap();
        let dir = if down { RewriteDirection::Down } else { RewriteDirection::Up };
        let y = pair_rewrite(&x, pos, dir).unwrap();
        prop_assert_eq!(y.eval(EvalDepth::Full).value, x.eval(EvalDepth::Full).value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn conversion_is_sound(
        s in prop::sample::select(vec![4u32, 5, 6, 8]),
        lead in 0u32..100,
        rest in prop::collection::vec(0u32..100, 0..24),
        period in prop::collection::vec(0u32..100, 0..4),
    ) {
        let mut pre = vec![3 + lead % (s - 3)];
        pre.extend(rest.iter().map(|d| d % s));
        let period: Vec<u32> = period.iter().map(|d| d % s).collect();
        let x = DigitString::new(base(s), pre, period).unwrap();
        let value = x.value();
        prop_assume!(value <= Rational::one());
        let y = to_restricted_digits(&x).unwrap();
        prop_assert!(y.is_restricted());
        prop_assert_eq!(y.value(), value.clone());
        for m in 1..=x.preperiod().len() + 4 {
            let e = y.eval(EvalDepth::Prefix(m));
            let err = &value - &e.value;
            prop_assert!(err >= Rational::zero() && err <= e.tail_radius);
        }
    }

    #[test]
    fn cylinders_nest_and_tile(
        s in prop::sample::select(vec![4u32, 5, 6, 8]),
        prefix in prop::collection::vec(0u32..100, 0..6),
    ) {
        let b = base(s);
        let prefix: Vec<u32> = prefix.iter().map(|d| d % (s + 2)).collect();
        let parent = cylinder_interval(b, &prefix).unwrap();
        let mut children = Vec::new();
        for d in b.alphabet() {
            let mut p = prefix.clone();
            p.push(d);
            let c = cylinder_interval(b, &p).unwrap();
            prop_assert!(c.is_subset_of(&parent));
            children.push(c);
        }
        let union = IntervalUnion::from_intervals(children);
        prop_assert_eq!(union.parts(), &[parent]);
    }

    #[test]
    fn prefix_counts_grow_boundedly(
        s in prop::sample::select(vec![4u32, 6]),
        num in 0i64..200,
        den in 1i64..60,
        depth in 1usize..5,
        restricted in any::<bool>(),
    ) {
        let b = base(s);
        let x = ratio(num, den);
        let c0 = count_prefixes(b, &x, depth, restricted).unwrap();
        let c1 = count_prefixes(b, &x, depth + 1, restricted).unwrap();
        prop_assert!(c1 <= c0.clone() * (s + 2));
        if restricted && c0.is_zero() {
            let excluded = matches!(membership_probe(b, &x, depth).unwrap(), Membership::Excluded(_));
            prop_assert!(excluded);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exclusion_is_stable_in_depth(
        s in prop::sample::select(vec![4u32, 6]),
        num in 0i64..300,
        den in 1i64..200,
        depth in 1usize..4,
    ) {
        let b = base(s);
        let x = ratio(num, den);
        let first = membership_probe(b, &x, depth).unwrap();
        if let Membership::Excluded(_) = first {
            for extra in 1..4 {
                prop_assert_eq!(&membership_probe(b, &x, depth + extra).unwrap(), &first);
            }
        }
    }

    #[test]
    fn factors_are_bounded(law in any_law(), t in -50.0f64..50.0, k in 1u32..12) {
        let z = phi_k(&law, t, k);
        let s = law.base().s() as f64;
        prop_assert!(z.norm() <= 1.0 + 1e-12);
        prop_assert!((z - 1.0).norm() <= (s + 1.0) * t.abs() * s.powi(-(k as i32)) + 1e-12);
        prop_assert_eq!(phi_k(&law, 0.0, k), num_complex::Complex64::new(1.0, 0.0));
    }

    #[test]
    fn product_is_self_similar(law in any_law(), k in 20u32..45) {
        let s = law.base().s() as f64;
        let a = char_fn(&law, 2.0 * PI, k).unwrap();
        let b = char_fn(&law, 2.0 * PI * s, k + 1).unwrap();
        prop_assert!((a.value() - b.value()).norm() <= a.radius + b.radius);
    }

    #[test]
    fn general_criteria_reduce_at_base_four(w in weights(6), exact in any::<bool>()) {
        let law = if exact { exact_law(4, &w) } else { float_law(4, &w) };
        let a = criteria_s4(&law).unwrap();
        let g = criteria_general(&law).unwrap();
        prop_assert!((a.u - g.u).abs() <= 1e-14 && (a.v - g.v).abs() <= 1e-14);
    }

    #[test]
    fn classifier_is_sound(law in any_law()) {
        let v = classify(&law, 60).unwrap();
        if matches!(v.reason, Some(Reason::FirstFactorBase4 | Reason::FirstFactorEvenBase)) {
            let c = cantorval::distribution::criteria(&law).unwrap();
            if c.u.abs().max(c.v.abs()) > 1e-9 {
                prop_assert!(limsup_lower_bound(&law, 60).unwrap() > 0.0);
            }
        }
        if let Some(split) = decompose_uniform(&law) {
            prop_assert_eq!(v.kind, VerdictKind::AbsolutelyContinuous);
            if law.is_exact() {
                prop_assert_eq!(split.reconstruct(law.base()).unwrap(), law);
            }
        }
    }

    #[test]
    fn split_laws_round_trip(s in even_base(), u in 0u32..=60, v in 0u32..=60) {
        prop_assume!(u + v <= 60);
        let (u, v) = (ratio(u as i64, 60), ratio(v as i64, 60));
        let w = Rational::one() - &u - &v;
        let three = [u.clone(), v.clone(), w];
        let mut p = vec![Rational::zero(); s as usize + 2];
        for a in 0..s as usize {
            for (j, q) in three.iter().enumerate() {
                p[a + j] += q / Rational::from_integer(BigInt::from(s));
            }
        }
        let law = DigitLaw::exact(base(s), p).unwrap();
        let split = decompose_uniform(&law).unwrap();
        let exact = split.exact.clone().unwrap();
        prop_assert_eq!((exact.u, exact.v), (u, v));
        prop_assert_eq!(split.reconstruct(base(s)).unwrap(), law);
    }

    #[test]
    fn spectrum_is_confined_to_the_cover(
        s in even_base(),
        w in prop::collection::vec(1u32..20, 10),
        depth in 1usize..5,
        seed in any::<u64>(),
    ) {
        let mut full = vec![0u32; s as usize + 2];
        for (j, d) in cantorval::Base::new(s).unwrap().restricted_alphabet().into_iter().enumerate() {
            full[d as usize] = w[j % w.len()];
        }
        let law = exact_law(s, &full);
        let cover = cylinder_cover(base(s), depth).unwrap();
        for digits in sample_many_digits(&law, depth, 200, seed).unwrap() {
            let num = digits_numerator(base(s), &digits).unwrap();
            let x = Rational::new(BigInt::from(num), BigInt::from(s).pow(depth as u32));
            prop_assert!(cover.contains(&x));
        }
    }

    #[test]
    fn symmetric_laws_give_symmetric_atoms(
        s in even_base(),
        w in prop::collection::vec(1u32..20, 5),
        depth in 1usize..4,
    ) {
        let len = s as usize + 2;
        let mut full = vec![0u32; len];
        for j in 0..len / 2 {
            full[j] = w[j % w.len()];
            full[len - 1 - j] = full[j];
        }
        let law = exact_law(s, &full);
        let dist = truncated_dist(&law, depth).unwrap();
        let AtomProbs::Exact(p) = dist.probs() else { unreachable!() };
        let vals = dist.values();
        let n = vals.len();
        let twice_center = base(s).hull_max() * (Rational::one() - inv_pow(s, depth));
        for i in 0..n {
            prop_assert_eq!(&vals[i] + &vals[n - 1 - i], twice_center.clone());
            prop_assert_eq!(&p[i], &p[n - 1 - i]);
        }
    }
}

#[test]
fn covers_shrink_and_keep_the_maximal_interval() {
    for s in [4u32, 5, 6, 8] {
        let b = base(s);
        let m = maximal_interval(b);
        let mut prev = cylinder_cover(b, 0).unwrap();
        for k in 1..=6 {
            let cur = cylinder_cover(b, k).unwrap();
            assert!(cur.is_subset_of(&prev), "s={s} k={k}");
            assert!(cur.covers_interval(&m), "s={s} k={k}");
            prev = cur;
        }
    }
}

#[test]
fn gaps_are_symmetric() {
    for s in [4u32, 6, 8] {
        let b = base(s);
        for k in 0..=6 {
            let g = gaps(b, k).unwrap();
            assert_eq!(g.reflected(&b.hull_max()), g, "s={s} k={k}");
            assert_eq!(symmetry_map(b, &symmetry_map(b, &ratio(1, 3))), ratio(1, 3));
        }
    }
}

#[test]
fn gaps_accumulate_at_the_maximal_interval() {
    for s in [4u32, 6, 8] {
        let b = base(s);
        let left = maximal_interval(b).lo().clone();
        for k in 1..=7 {
            let reach = inv_pow(s, k - 1);
            let g = gaps(b, k).unwrap();
            let near = g
                .parts()
                .iter()
                .any(|p| p.hi() <= &left && &left - p.hi() <= reach);
            assert!(near, "s={s} k={k}");
        }
    }
}

#[test]
fn measure_estimates_decrease_to_one() {
    let mut prev = interior_measure_estimate(base(4), 0).unwrap();
    for k in 1..=9 {
        let cur = interior_measure_estimate(base(4), k).unwrap();
        assert!(cur < prev && cur >= Rational::one());
        prev = cur;
    }
}

#[test]
fn block_laws_match_enumeration() {
    for m in 1..=10u32 {
        for q0 in [ratio(3, 10), ratio(1, 2), ratio(7, 9)] {
            let law = multigeometric_law_exact(m, &q0).unwrap();
            let p = law.exact_probs().unwrap();
            assert!(p.iter().sum::<Rational>().is_one());
            let q1 = Rational::one() - &q0;
            let mut want = vec![Rational::zero(); 2 * m as usize + 4];
            for mask in 0u32..1 << (m + 1) {
                let bits: Vec<bool> = (0..=m).map(|i| mask >> i & 1 == 1).collect();
                let prob = bits
                    .iter()
                    .fold(Rational::one(), |acc, &b| acc * if b { &q1 } else { &q0 });
                want[eta_block_digit(&bits) as usize] += prob;
            }
            assert_eq!(p, &want[..], "m={m}");
            assert!(p[1].is_zero() && p[2 * m as usize + 2].is_zero());
        }
    }
}

#[test]
fn brackets_contain_the_deep_truncation() {
    let law = exact_law(4, &[9, 0, 21, 21, 0, 49]);
    let deep = truncated_dist(&law, 8).unwrap();
    let AtomProbs::Exact(p) = deep.probs() else {
        unreachable!()
    };
    let vals = deep.values();
    let hull = base(4).hull_max();
    for n in 1..=4 {
        for i in 0..100 {
            let x = &hull * ratio(i, 99);
            let f8: Rational = vals
                .iter()
                .zip(p)
                .filter(|(v, _)| *v <= &x)
                .map(|(_, q)| q.clone())
                .sum();
            let b = cdf_bracket(&law, n, &x).unwrap().exact.unwrap();
            assert!(b.lo <= f8 && f8 <= b.hi, "n={n} x={x}");
        }
    }
}
