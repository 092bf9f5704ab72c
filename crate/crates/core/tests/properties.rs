use ekrlab::binom::{choose, choose_u64};
use ekrlab::certificates::{
    ekr_certificate, simplex_min_index, simplex_witness, sqrt_product_inequality_check, Dichotomy, Outcome,
    SimplexFrame,
};
use ekrlab::constructions::{erdos_extremal, random_family};
use ekrlab::exact::{frac, int};
use ekrlab::fractional::{fractional_cover, fractional_matching, reduce_cover};
use ekrlab::io::{parse_family, serialize_family};
use ekrlab::matching::{find_matching_by_degree, has_matching_of_size, matching_number, Branch};
use ekrlab::search::{conjecture_scan, greedy_completion, is_maximal_intersecting, maximal_intersecting};
use ekrlab::spectral::{quadratic_form, MassEngine};
use ekrlab::subset::{k_subsets, rank_colex, unrank_colex, KSubset};
use ekrlab::{Family, Rational};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn family_strategy(max_n: u32) -> impl Strategy<Value = Family> {
    (4..=max_n)
        .prop_flat_map(|n| (Just(n), 2..=(n - 1).min(4)))
        .prop_flat_map(|(n, k)| {
            let slots = choose_u64(n, k) as usize;
            (Just(n), Just(k), proptest::collection::vec(any::<bool>(), slots))
        })
        .prop_map(|(n, k, bits)| {
            let edges = k_subsets(n, k).zip(bits).filter(|(_, b)| *b).map(|(e, _)| e);
            Family::from_edges(n, k, edges).unwrap()
        })
}

fn rational() -> impl Strategy<Value = Rational> {
    (0i64..2000, 1i64..60).prop_map(|(p, q)| frac(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn masses_sum_to_size_and_spectrum(f in family_strategy(9)) {
        let engine = MassEngine::new(f.n(), f.k()).unwrap();
        let m = engine.masses(&f).unwrap();
        let total: Rational = m.masses.iter().sum();
        prop_assert_eq!(total, int(f.edge_count() as i64));
        prop_assert_eq!(m.spectral_sum(engine.spectrum()), int(quadratic_form(&f)));
    }

    #[test]
    fn intersecting_iff_zero_quadratic_form(f in family_strategy(9)) {
        prop_assert_eq!(f.is_intersecting(), quadratic_form(&f) == 0.into());
    }

    #[test]
    fn witness_inequality_for_any_family(f in family_strategy(9)) {
        let w = simplex_witness(&f).unwrap();
        prop_assert!(w.outcome.holds(), "{:?}", w);
    }

    #[test]
    fn integral_below_fractional_equal_cover(f in family_strategy(8)) {
        let nu = matching_number(&f).unwrap().0;
        let m = fractional_matching(&f).unwrap();
        let c = fractional_cover(&f).unwrap();
        m.validate(&f).unwrap();
        c.validate(&f).unwrap();
        prop_assert!(int(nu as i64) <= m.objective);
        prop_assert_eq!(m.objective, c.objective);
    }

    #[test]
    fn colex_rank_round_trip(n in 1u32..=20, k in 0u32..=6, seed in any::<u64>()) {
        prop_assume!(k <= n);
        let total = choose_u64(n, k);
        let r = seed % total;
        let s = unrank_colex(r, k, n).unwrap();
        prop_assert_eq!(s.len(), k);
        prop_assert_eq!(rank_colex(s), r);
    }

    #[test]
    fn family_file_round_trip(f in family_strategy(8)) {
        let text = serialize_family(&f);
        let back = parse_family(text.as_bytes()).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(serialize_family(&back), text);
    }

    #[test]
    fn argmin_invariant_under_positive_scaling(
        n in 3usize..=12,
        coords in proptest::collection::vec(-10.0f64..10.0, 11),
        p in 1u32..1000,
        q in 1u32..1000,
    ) {
        let frame = SimplexFrame::canonical(n).unwrap();
        let v = &coords[..n - 1];
        let scaled: Vec<f64> = v.iter().map(|x| x * p as f64 / q as f64).collect();
        prop_assert_eq!(simplex_min_index(v, &frame).unwrap().0, simplex_min_index(&scaled, &frame).unwrap().0);
    }

    #[test]
    fn sqrt_product_inequality_on_random_quadruples(x1 in rational(), a in 0u32..=100, x2 in rational(), b in 0u32..=100) {
        let y1 = &x1 * frac(a as i64, 100);
        let y2 = &x2 * frac(b as i64, 100);
        prop_assert!(sqrt_product_inequality_check(&x1, &y1, &x2, &y2).unwrap());
    }

    #[test]
    fn reduced_cover_contains_the_link(f in family_strategy(8)) {
        prop_assume!(f.k() >= 3);
        let x = fractional_cover(&f).unwrap();
        let r = reduce_cover(&f, &x).unwrap();
        let link = f.link(r.removed).unwrap();
        prop_assert!(link.edges().all(|e| r.family.contains(e)));
        prop_assert!(r.family.edge_count() as u64 >= f.min_vertex_degree());
    }
}

#[test]
fn simplex_bound_on_random_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 3..=12 {
        let frame = SimplexFrame::canonical(n).unwrap();
        for _ in 0..1000 {
            let v: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            let (_, min) = simplex_min_index(&v, &frame).unwrap();
            assert!(min <= -norm / (n as f64 - 1.0) + 1e-10);
        }
    }
    let frame = SimplexFrame::canonical(4).unwrap();
    for seed in 0..1000 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let unit: Vec<f64> = v.iter().map(|x| x / norm).collect();
        assert!(simplex_min_index(&unit, &frame).unwrap().1 <= -1.0 / 3.0 + 1e-12);
    }
}

#[test]
fn sqrt_product_inequality_ten_thousand_quadruples() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let draw = |rng: &mut ChaCha8Rng| frac(rng.gen_range(0i64..10_000), rng.gen_range(1i64..500));
    for _ in 0..10_000 {
        let (a, b, c, d) = (draw(&mut rng), draw(&mut rng), draw(&mut rng), draw(&mut rng));
        let (x1, y1) = if a >= b { (a, b) } else { (b, a) };
        let (x2, y2) = if c >= d { (c, d) } else { (d, c) };
        assert!(sqrt_product_inequality_check(&x1, &y1, &x2, &y2).unwrap());
    }
}

#[test]
fn every_maximal_family_at_7_3_certifies() {
    let pair = choose_u64(5, 1);
    for f in maximal_intersecting(7, 3).unwrap() {
        let c = ekr_certificate(&f).unwrap();
        assert!(c.checks.iter().all(|x| x.outcome != Outcome::Violated), "{f:?}");
        if f.min_vertex_degree() >= pair {
            assert_eq!(c.dichotomy, Dichotomy::AtLeastStarCount);
            assert!(c.is_star);
        }
        if c.dichotomy != Dichotomy::Inconclusive {
            let gap = int(c.e as i64) - &c.threshold;
            let star_gap = int(c.e as i64) - int(c.star_count.clone());
            assert!(gap * star_gap >= int(0));
        }
    }
}

#[test]
fn greedy_completion_dominates_sampled_subfamilies() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let families: Vec<Family> = maximal_intersecting(7, 3).unwrap().collect();
    for _ in 0..300 {
        let f = &families[rng.gen_range(0..families.len())];
        let keep = f.edges().filter(|_| rng.gen_bool(0.7));
        let sub = Family::from_edges(7, 3, keep).unwrap();
        let done = greedy_completion(&sub);
        assert!(is_maximal_intersecting(&done));
        assert!(sub.min_vertex_degree() <= done.min_vertex_degree());
    }
}

#[test]
fn extremal_constructions_have_small_matchings() {
    for (n, k, s) in [(7, 2, 3), (8, 2, 3), (9, 3, 2), (10, 3, 3), (12, 3, 3)] {
        for i in 1..=k {
            let Ok(f) = erdos_extremal(n, k, s, i) else { continue };
            assert!(has_matching_of_size(&f, s as usize).unwrap().is_none(), "({n},{k},{s},{i})");
        }
    }
}

/// Recomputes each traced branch from the degrees inside the active set.
fn replay(f: &Family, s: usize, trace: &[ekrlab::matching::TraceStep]) {
    let k = f.k();
    let mut expected_s = s;
    for step in trace {
        assert_eq!(step.s, expected_s);
        let active = step.active;
        let sub: Vec<KSubset> = f.edges().filter(|e| e.is_subset_of(active)).collect();
        let mut deg: Vec<(u64, u32)> = active
            .iter()
            .map(|v| (sub.iter().filter(|e| e.contains(v)).count() as u64, v))
            .collect();
        deg.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let pair = choose(active.len() as i64 - 2, k as i64 - 2);
        let expected = match s {
            _ if step.s == 1 => Branch::Single,
            _ if step.s == 2 => Branch::Pair,
            _ if num_bigint::BigInt::from(deg[0].0) > &pair * (k as u64 * (step.s as u64 - 1)) => {
                Branch::HighDegree { vertex: deg[0].1 }
            }
            _ if num_bigint::BigInt::from(deg[step.s - 1].0) > &pair * (2 * (step.s as u64 - 1))
                && (k as usize) * step.s < active.len() as usize =>
            {
                Branch::Rainbow { vertices: deg[..step.s].iter().map(|d| d.1).collect() }
            }
            _ => Branch::Extend,
        };
        assert_eq!(step.branch, expected);
        expected_s -= 1;
        if matches!(step.branch, Branch::Rainbow { .. }) {
            break;
        }
    }
}

#[test]
fn degree_construction_trace_replays() {
    for seed in 0..12 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = loop {
            let f = random_family(37, 2, rng.gen_range(0.1..0.6), &mut rng).unwrap();
            if f.min_vertex_degree() >= 3 {
                break f;
            }
        };
        let r = find_matching_by_degree(&f, 3).unwrap();
        assert!(!r.outside_guarantee);
        assert_eq!(r.matching.len(), 3);
        replay(&f, 3, &r.trace);
    }
}

#[test]
fn conjecture_scan_is_deterministic_and_sound() {
    for (n, k, s, seed) in [(7, 3, 2, 1), (9, 2, 3, 2), (10, 2, 4, 3)] {
        let a = conjecture_scan(n, k, s, 1500, seed).unwrap();
        let b = conjecture_scan(n, k, s, 1500, seed).unwrap();
        assert_eq!(a, b);
        let best = a.best.unwrap();
        assert!(matching_number(&best.family).unwrap().0 < s as usize);
        assert!(a.counterexamples.is_empty());
    }
}
