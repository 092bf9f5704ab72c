//! Independent oracles for the exact spectral and matching code.

mod common;

use common::FloatProjector;

use ekrlab::binom::choose;
use ekrlab::constructions::{complete, erdos_extremal, fano, hilton_milner, random_family, remark_family, star};
use ekrlab::exact::{frac, int, to_f64};
use ekrlab::matching::matching_number;
use ekrlab::search::{is_maximal_intersecting, maximal_intersecting};
use ekrlab::spectral::MassEngine;
use ekrlab::subset::{k_subsets, KSubset};
use ekrlab::{Family, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Masses from the intersection-size distribution of ordered edge pairs and
/// the Johnson-scheme dual eigenmatrix:
/// `F_j = (m_j / C(n,k)) * sum_i E_i(j) / v_i * N_i`, where `N_i` counts
/// ordered pairs at distance `i` and `E_i` is the Eberlein polynomial.
fn eberlein_masses(f: &Family) -> Vec<Rational> {
    let (n, k) = (f.n() as i64, f.k() as i64);
    let top = k.min(n - k);
    let edges: Vec<KSubset> = f.edges().collect();
    let mut counts = vec![0i64; k as usize + 1];
    for a in &edges {
        for b in &edges {
            let shared = (a.mask() & b.mask()).count_ones() as i64;
            counts[(k - shared) as usize] += 1;
        }
    }
    let total = int(choose(n, k));
    (0..=top)
        .map(|j| {
            let m = choose(n, j) - choose(n, j - 1);
            let mut acc = Rational::default();
            for (i, &count) in counts.iter().enumerate() {
                if count == 0 {
                    continue;
                }
                let i = i as i64;
                let eberlein: num_bigint::BigInt = (0..=i)
                    .map(|t| {
                        let sign = if t % 2 == 0 { 1 } else { -1 };
                        sign * choose(j, t) * choose(k - j, i - t) * choose(n - k - j, i - t)
                    })
                    .sum();
                let valency = choose(k, i) * choose(n - k, i);
                acc += int(eberlein) / int(valency) * int(count);
            }
            acc * int(m) / &total
        })
        .collect()
}

fn sample_families(n: u32, k: u32, count: usize, seed: u64) -> Vec<Family> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let density = rng.gen_range(0.05..0.95);
            random_family(n, k, density, &mut rng).unwrap()
        })
        .collect()
}

#[test]
fn exact_masses_match_eberlein_route() {
    for (n, k) in [(5, 2), (6, 2), (7, 3), (8, 3), (6, 3), (6, 4), (9, 4), (8, 2), (10, 3)] {
        let engine = MassEngine::new(n, k).unwrap();
        let mut fixtures = sample_families(n, k, 25, 100 + n as u64 * 10 + k as u64);
        fixtures.push(complete(n, k).unwrap());
        fixtures.push(Family::empty(n, k).unwrap());
        if n > k {
            fixtures.push(star(n, k, 1).unwrap());
        }
        for f in fixtures {
            assert_eq!(engine.masses(&f).unwrap().masses, eberlein_masses(&f), "({n},{k}) {f:?}");
        }
    }
    assert_eq!(
        eberlein_masses(&remark_family()),
        vec![int(5), int(0), int(0), int(5)]
    );
}

#[test]
fn exact_masses_match_float_projection() {
    // Needs n >= 2k: below that the Kneser matrix is zero and levels coincide.
    for (n, k) in [(5, 2), (7, 3), (8, 3), (9, 4), (8, 2)] {
        let engine = MassEngine::new(n, k).unwrap();
        let proj = FloatProjector::new(n, k);
        for f in sample_families(n, k, 20, 7 * n as u64 + k as u64) {
            let exact = engine.masses(&f).unwrap().masses;
            for (x, y) in exact.iter().zip(proj.masses(&f)) {
                assert!((to_f64(x) - y).abs() < 1e-9, "({n},{k}): {x} vs {y}");
            }
        }
    }
}

#[test]
fn fixture_masses_from_both_routes() {
    let s = star(7, 3, 1).unwrap();
    assert_eq!(eberlein_masses(&s), vec![frac(45, 7), frac(60, 7), int(0), int(0)]);
    let h = hilton_milner(7, 3).unwrap();
    let engine = MassEngine::new(7, 3).unwrap();
    assert_eq!(engine.masses(&h).unwrap().masses, eberlein_masses(&h));
    assert_eq!(engine.masses(&fano()).unwrap().masses, eberlein_masses(&fano()));
}

fn brute_matching_number(f: &Family) -> usize {
    fn go(edges: &[u64], used: u64) -> usize {
        match edges.split_first() {
            None => 0,
            Some((&e, rest)) => {
                let skip = go(rest, used);
                if e & used == 0 {
                    skip.max(1 + go(rest, used | e))
                } else {
                    skip
                }
            }
        }
    }
    go(&f.edge_masks(), 0)
}

#[test]
fn branch_and_bound_matches_exhaustive_matching() {
    for (n, k) in [(6, 2), (7, 2), (8, 2), (7, 3), (8, 3), (9, 3)] {
        for f in sample_families(n, k, 30, 900 + n as u64 + 13 * k as u64) {
            if f.edge_count() > 40 {
                continue;
            }
            assert_eq!(matching_number(&f).unwrap().0, brute_matching_number(&f), "{f:?}");
        }
    }
    for (n, k, s) in [(9, 2, 3), (8, 3, 2), (10, 3, 3)] {
        let f = erdos_extremal(n, k, s, 1).unwrap();
        assert_eq!(matching_number(&f).unwrap().0, s as usize - 1);
    }
}

#[test]
fn maximal_count_5_2_by_subset_enumeration() {
    let sets: Vec<KSubset> = k_subsets(5, 2).collect();
    let mut brute = 0;
    for pick in 0u32..1 << sets.len() {
        let f = Family::from_edges(5, 2, (0..sets.len()).filter(|&i| pick >> i & 1 == 1).map(|i| sets[i])).unwrap();
        if is_maximal_intersecting(&f) {
            brute += 1;
        }
    }
    assert_eq!(brute, 15);
    assert_eq!(maximal_intersecting(5, 2).unwrap().count(), brute);
}
