//! Exhaustive and heuristic searches over intersecting families.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::binom::{choose, choose_u64};
use crate::constructions::erdos_extremal;
use crate::error::{ensure_domain, Error, Result};
use crate::family::Family;
use crate::matching::{masks_have_matching, matching_number};
use crate::subset::{k_subsets, rank_colex, unrank_colex_unchecked, KSubset};

/// Largest `C(n,k)` the clique enumeration accepts: candidate sets are `u64` masks.
pub const MAX_KNESER_VERTICES: u64 = 64;

/// Enumerates every maximal intersecting `k`-uniform family on `[n]` once.
///
/// Bron–Kerbosch with pivoting on the graph whose vertices are the `k`-sets
/// (by colex rank) and whose edges join intersecting pairs.
pub fn maximal_intersecting(n: u32, k: u32) -> Result<MaximalIntersecting> {
    maximal_intersecting_with_limit(n, k, MAX_KNESER_VERTICES)
}

pub fn maximal_intersecting_with_limit(n: u32, k: u32, limit: u64) -> Result<MaximalIntersecting> {
    ensure_domain!(k >= 1 && k <= n, "need 1 <= k <= n, got n = {n}, k = {k}");
    let total = if n <= 64 { choose_u64(n, k) } else { u64::MAX };
    let limit = limit.min(MAX_KNESER_VERTICES);
    if total > limit {
        return Err(Error::Resource(format!(
            "C({n},{k}) = {total} k-sets exceeds the enumeration limit of {limit}"
        )));
    }
    let sets: Vec<KSubset> = (0..total).map(|r| unrank_colex_unchecked(r, k, n)).collect();
    let meets: Vec<u64> = sets
        .iter()
        .enumerate()
        .map(|(i, a)| {
            sets.iter()
                .enumerate()
                .filter(|&(j, b)| i != j && a.meets(*b))
                .fold(0u64, |m, (j, _)| m | (1 << j))
        })
        .collect();
    let all = if total == 64 { u64::MAX } else { (1u64 << total) - 1 };
    let mut it = MaximalIntersecting {
        n,
        k,
        sets,
        meets,
        stack: Vec::new(),
        pending_root: None,
    };
    if all == 0 {
        it.pending_root = Some(0);
    } else {
        let root = it.frame(0, all, 0);
        it.stack.push(root);
    }
    Ok(it)
}

struct Frame {
    r: u64,
    p: u64,
    x: u64,
    todo: u64,
}

pub struct MaximalIntersecting {
    n: u32,
    k: u32,
    sets: Vec<KSubset>,
    meets: Vec<u64>,
    stack: Vec<Frame>,
    pending_root: Option<u64>,
}

impl MaximalIntersecting {
    fn frame(&self, r: u64, p: u64, x: u64) -> Frame {
        let mut pivot_nbrs = 0u64;
        let mut best = -1i64;
        let mut cand = p | x;
        while cand != 0 {
            let u = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let score = (p & self.meets[u]).count_ones() as i64;
            if score > best {
                best = score;
                pivot_nbrs = self.meets[u];
            }
        }
        Frame {
            r,
            p,
            x,
            todo: p & !pivot_nbrs,
        }
    }

    fn to_family(&self, r: u64) -> Family {
        let edges = (0..self.sets.len()).filter(|&i| r >> i & 1 == 1).map(|i| self.sets[i]);
        Family::from_edges(self.n, self.k, edges).expect("distinct k-sets")
    }
}

impl Iterator for MaximalIntersecting {
    type Item = Family;

    fn next(&mut self) -> Option<Family> {
        if let Some(r) = self.pending_root.take() {
            return Some(self.to_family(r));
        }
        loop {
            let top = self.stack.last_mut()?;
            if top.todo == 0 {
                self.stack.pop();
                continue;
            }
            let v = top.todo.trailing_zeros() as usize;
            let bit = 1u64 << v;
            top.todo &= !bit;
            let (r, p, x) = (top.r | bit, top.p & self.meets[v], top.x & self.meets[v]);
            top.p &= !bit;
            top.x |= bit;
            if p == 0 {
                if x == 0 {
                    return Some(self.to_family(r));
                }
                continue;
            }
            let child = self.frame(r, p, x);
            self.stack.push(child);
        }
    }
}

/// Adds `k`-sets in colex order while the family stays intersecting.
pub fn greedy_completion(f: &Family) -> Family {
    let mut g = f.clone();
    for e in k_subsets(f.n(), f.k()) {
        if !g.contains(e) && g.edges().all(|x| x.meets(e)) {
            g.insert(e).expect("k-set of the right shape");
        }
    }
    g
}

/// Whether no `k`-set can be added without breaking the intersecting property.
pub fn is_maximal_intersecting(f: &Family) -> bool {
    f.is_intersecting()
        && k_subsets(f.n(), f.k()).all(|e| f.contains(e) || f.edges().any(|x| !x.meets(e)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanKind {
    Ekr,
    Cross,
    Conjecture,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// Parameters where no pass/fail assertion is made.
    ReportOnly,
}

/// One examined family (or ordered pair of families).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRecord {
    pub index: u64,
    pub family: Family,
    pub partner: Option<Family>,
    /// `delta_1`, or the product of the two `delta_1` values for pairs.
    pub value: u64,
    pub is_star: bool,
    /// Both members are stars with the same center.
    pub same_center_stars: bool,
    pub matching_number: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub kind: ScanKind,
    pub n: u32,
    pub k: u32,
    pub s: Option<u32>,
    pub families_examined: u64,
    /// Pairs skipped because they are not cross-intersecting.
    pub skipped: u64,
    /// The claimed upper bound on `value`.
    pub bound: BigInt,
    pub best: Option<ScanRecord>,
    /// How many records attain the best value.
    pub maximizers: u64,
    /// Whether every maximizer is a star (or a same-center star pair).
    pub maximizers_are_stars: bool,
    /// Largest value over non-star records (non-same-center pairs).
    pub max_other: Option<u64>,
    pub records: Vec<ScanRecord>,
    pub counterexamples: Vec<ScanRecord>,
    pub verdict: Verdict,
}

impl ScanReport {
    fn new(kind: ScanKind, n: u32, k: u32, s: Option<u32>, bound: BigInt) -> Self {
        ScanReport {
            kind,
            n,
            k,
            s,
            families_examined: 0,
            skipped: 0,
            bound,
            best: None,
            maximizers: 0,
            maximizers_are_stars: true,
            max_other: None,
            records: Vec::new(),
            counterexamples: Vec::new(),
            verdict: Verdict::Pass,
        }
    }

    /// Keeps one record per isomorphism class (of the family, or the pair),
    /// in the original order. Summary fields are left untouched.
    pub fn dedup_records(&mut self) {
        let mut seen = std::collections::BTreeSet::new();
        self.records.retain(|r| {
            let key = (canonical_form(&r.family), r.partner.as_ref().map(canonical_form));
            seen.insert(key)
        });
    }

    fn observe(&mut self, rec: ScanRecord) {
        let starry = rec.is_star || rec.same_center_stars;
        if !starry {
            self.max_other = Some(self.max_other.map_or(rec.value, |m| m.max(rec.value)));
        }
        if BigInt::from(rec.value) > self.bound {
            self.counterexamples.push(rec.clone());
        }
        match &self.best {
            Some(b) if b.value > rec.value => {}
            Some(b) if b.value == rec.value => {
                self.maximizers += 1;
                self.maximizers_are_stars &= starry;
            }
            _ => {
                self.best = Some(rec.clone());
                self.maximizers = 1;
                self.maximizers_are_stars = starry;
            }
        }
        self.records.push(rec);
    }
}

/// Records `delta_1` of every maximal intersecting family and checks that the
/// maximum `C(n-2,k-2)` is attained exactly by the `n` stars.
pub fn ekr_degree_scan(n: u32, k: u32) -> Result<ScanReport> {
    ekr_degree_scan_with_limit(n, k, MAX_KNESER_VERTICES)
}

pub fn ekr_degree_scan_with_limit(n: u32, k: u32, limit: u64) -> Result<ScanReport> {
    ensure_domain!(k >= 2 && n >= 2 * k + 1, "ekr_degree_scan needs k >= 2 and n >= 2k + 1");
    let bound = choose(n as i64 - 2, k as i64 - 2);
    let mut report = ScanReport::new(ScanKind::Ekr, n, k, None, bound.clone());
    for (i, f) in maximal_intersecting_with_limit(n, k, limit)?.enumerate() {
        report.families_examined += 1;
        report.observe(ScanRecord {
            index: i as u64,
            value: f.min_vertex_degree(),
            is_star: f.is_star(),
            same_center_stars: false,
            partner: None,
            matching_number: None,
            family: f,
        });
    }
    let stars_only = report.maximizers_are_stars && report.maximizers == n as u64;
    let attained = report.best.as_ref().is_some_and(|b| BigInt::from(b.value) == bound);
    let others_below = report.max_other.is_none_or(|m| BigInt::from(m) < bound);
    report.verdict = if report.counterexamples.is_empty() && stars_only && attained && others_below {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(report)
}

/// Checks `delta_1(B) delta_1(C) <= C(n-2,k-2)^2` over ordered pairs of
/// maximal intersecting families that are cross-intersecting.
pub fn cross_pair_scan(n: u32, k: u32) -> Result<ScanReport> {
    cross_pair_scan_with_limit(n, k, MAX_KNESER_VERTICES)
}

pub fn cross_pair_scan_with_limit(n: u32, k: u32, limit: u64) -> Result<ScanReport> {
    ensure_domain!(k >= 2 && n >= 2 * k + 1, "cross_pair_scan needs k >= 2 and n >= 2k + 1");
    let pair = choose(n as i64 - 2, k as i64 - 2);
    let mut report = ScanReport::new(ScanKind::Cross, n, k, None, &pair * &pair);
    let families: Vec<Family> = maximal_intersecting_with_limit(n, k, limit)?.collect();
    let sets: Vec<KSubset> = k_subsets(n, k).collect();
    let rank_mask = |f: &Family| f.ranks().fold(0u64, |m, r| m | (1 << r));
    // Ranks of the k-sets meeting every edge of the family.
    let compatible: Vec<u64> = families
        .iter()
        .map(|f| {
            sets.iter()
                .enumerate()
                .filter(|(_, s)| f.edges().all(|e| e.meets(**s)))
                .fold(0u64, |m, (j, _)| m | (1 << j))
        })
        .collect();
    let masks: Vec<u64> = families.iter().map(rank_mask).collect();
    let mut index = 0u64;
    for (i, b) in families.iter().enumerate() {
        for (j, c) in families.iter().enumerate() {
            index += 1;
            if masks[j] & !compatible[i] != 0 {
                report.skipped += 1;
                continue;
            }
            report.families_examined += 1;
            let same_center = match (b.star_center(), c.star_center()) {
                (Some(x), Some(y)) => x == y,
                _ => false,
            };
            report.observe(ScanRecord {
                index: index - 1,
                family: b.clone(),
                partner: Some(c.clone()),
                value: b.min_vertex_degree() * c.min_vertex_degree(),
                is_star: false,
                same_center_stars: same_center,
                matching_number: None,
            });
        }
    }
    report.verdict = if report.counterexamples.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(report)
}

/// Starting temperature of the annealing schedule; it decays linearly to zero
/// over the budget.
pub const INITIAL_TEMPERATURE: f64 = 2.0;

/// Simulated annealing over families with `nu < s`, maximizing `delta_1`.
///
/// Each step draws a uniform `k`-set: present sets are removed, absent ones
/// are added when the matching number stays below `s`. The score is
/// `n * delta_1 - #{v : deg(v) = delta_1}`; worse moves are accepted with
/// probability `exp(delta / T)`. Starts from `erdos_extremal(n,k,s,1)`.
pub fn conjecture_scan(n: u32, k: u32, s: u32, budget: u64, seed: u64) -> Result<ScanReport> {
    ensure_domain!(k >= 1 && s >= 1, "conjecture_scan needs k >= 1 and s >= 1");
    ensure_domain!(
        (k as u64) * (s as u64) <= n as u64,
        "conjecture_scan needs s <= n/k, got n = {n}, k = {k}, s = {s}"
    );
    let bound = choose(n as i64 - 1, k as i64 - 1) - choose(n as i64 - s as i64, k as i64 - 1);
    let mut report = ScanReport::new(ScanKind::Conjecture, n, k, Some(s), bound.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = choose_u64(n, k);

    let mut current = erdos_extremal(n, k, s, 1)?;
    let mut score = score_of(&current);
    let mut best = current.clone();
    let mut best_degree = current.min_vertex_degree();
    let mut best_step = 0u64;

    for step in 0..budget {
        report.families_examined += 1;
        let e = unrank_colex_unchecked(rng.gen_range(0..total), k, n);
        let mut next = current.clone();
        if next.contains(e) {
            next.remove(e)?;
        } else {
            let disjoint: Vec<u64> = current.edge_masks().into_iter().filter(|&m| m & e.mask() == 0).collect();
            if masks_have_matching(&disjoint, k, s as usize - 1) {
                continue;
            }
            next.insert(e)?;
        }
        let next_score = score_of(&next);
        let t = INITIAL_TEMPERATURE * (1.0 - step as f64 / budget as f64);
        let accept = next_score >= score
            || (t > 0.0 && rng.gen::<f64>() < ((next_score - score) as f64 / t).exp());
        if !accept {
            continue;
        }
        current = next;
        score = next_score;
        let d = current.min_vertex_degree();
        if d > best_degree {
            best_degree = d;
            best = current.clone();
            best_step = step + 1;
        }
        if BigInt::from(d) > bound {
            let nu = matching_number(&current)?.0;
            if nu < s as usize {
                report.counterexamples.push(record(current.clone(), step + 1, Some(nu)));
            }
        }
    }

    let nu = matching_number(&best)?.0;
    if nu >= s as usize {
        return Err(Error::Contradiction(format!(
            "local search kept a family with matching number {nu} >= s = {s}"
        )));
    }
    let rec = record(best, best_step, Some(nu));
    report.best = Some(rec.clone());
    report.maximizers = 1;
    report.maximizers_are_stars = rec.is_star;
    report.records.push(rec);
    report.verdict = if (k as u64) * (s as u64) == n as u64 {
        Verdict::ReportOnly
    } else if report.counterexamples.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(report)
}

fn record(family: Family, index: u64, nu: Option<usize>) -> ScanRecord {
    ScanRecord {
        index,
        value: family.min_vertex_degree(),
        is_star: family.is_star(),
        same_center_stars: false,
        partner: None,
        matching_number: nu,
        family,
    }
}

fn score_of(f: &Family) -> i64 {
    let d = f.min_vertex_degree();
    let at_min = f.vertex_degrees().iter().filter(|&&x| x == d).count() as i64;
    f.n() as i64 * d as i64 - at_min
}

/// Lexicographically smallest sorted list of edge masks over all relabelings
/// of `[n]`. Equal for isomorphic families.
pub fn canonical_form(f: &Family) -> Vec<u64> {
    let n = f.n() as usize;
    let edges: Vec<KSubset> = f.edges().collect();
    let mut perm: Vec<u32> = (0..n as u32).collect();
    let mut best: Option<Vec<u64>> = None;
    loop {
        let mut image: Vec<u64> = edges
            .iter()
            .map(|e| e.iter().fold(0u64, |m, v| m | 1 << perm[v as usize - 1]))
            .collect();
        image.sort_unstable();
        if best.as_ref().is_none_or(|b| image < *b) {
            best = Some(image);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

fn next_permutation(p: &mut [u32]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("a larger element exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Keeps the first family of each isomorphism class, in input order.
pub fn dedup_isomorphic(families: Vec<Family>) -> Vec<Family> {
    let mut seen = std::collections::BTreeSet::new();
    families
        .into_iter()
        .filter(|f| seen.insert(canonical_form(f)))
        .collect()
}

/// Colex ranks of a family, for stable report ordering.
pub fn family_key(f: &Family) -> Vec<u64> {
    f.edges().map(rank_colex).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{fano, hilton_milner, star};

    fn brute_maximal(n: u32, k: u32) -> usize {
        let sets: Vec<KSubset> = k_subsets(n, k).collect();
        let mut count = 0;
        for pick in 0u32..(1 << sets.len()) {
            let f = Family::from_edges(n, k, (0..sets.len()).filter(|&i| pick >> i & 1 == 1).map(|i| sets[i])).unwrap();
            if is_maximal_intersecting(&f) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn small_counts_match_brute_force() {
        let fams: Vec<Family> = maximal_intersecting(5, 2).unwrap().collect();
        assert_eq!(fams.len(), 15);
        assert_eq!(fams.iter().filter(|f| f.is_star()).count(), 5);
        assert_eq!(fams.iter().filter(|f| f.edge_count() == 3 && !f.is_star()).count(), 10);
        for (n, k) in [(4, 2), (5, 2), (6, 2), (5, 3), (3, 1), (4, 4)] {
            let fams: Vec<Family> = maximal_intersecting(n, k).unwrap().collect();
            assert!(fams.iter().all(is_maximal_intersecting), "({n},{k})");
            assert_eq!(fams.len(), brute_maximal(n, k), "({n},{k})");
            let mut keys: Vec<Vec<u64>> = fams.iter().map(family_key).collect();
            keys.sort();
            keys.dedup();
            assert_eq!(keys.len(), fams.len());
        }
        assert!(maximal_intersecting(9, 4).is_err());
    }

    #[test]
    fn ekr_scan_5_2() {
        let r = ekr_degree_scan(5, 2).unwrap();
        assert_eq!(r.families_examined, 15);
        assert_eq!(r.best.as_ref().unwrap().value, 1);
        assert_eq!(r.maximizers, 5);
        assert_eq!(r.max_other, Some(0));
        assert_eq!(r.verdict, Verdict::Pass);
        let mut d = r.clone();
        d.dedup_records();
        assert_eq!(d.records.len(), 2);
        assert!(ekr_degree_scan(6, 3).is_err());
    }

    #[test]
    fn cross_scan_5_2() {
        let r = cross_pair_scan(5, 2).unwrap();
        assert_eq!(r.best.as_ref().unwrap().value, 1);
        assert_eq!(r.families_examined + r.skipped, 225);
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn conjecture_scan_small() {
        let r = conjecture_scan(9, 2, 3, 400, 5).unwrap();
        assert_eq!(r.best.as_ref().unwrap().value, 2);
        assert!(r.best.as_ref().unwrap().matching_number.unwrap() < 3);
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r, conjecture_scan(9, 2, 3, 400, 5).unwrap());
        assert_eq!(conjecture_scan(6, 2, 3, 50, 1).unwrap().verdict, Verdict::ReportOnly);
        assert!(conjecture_scan(5, 2, 3, 10, 1).is_err());
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(canonical_form(&star(6, 3, 1).unwrap()), canonical_form(&star(6, 3, 4).unwrap()));
        assert_ne!(canonical_form(&star(7, 3, 1).unwrap()), canonical_form(&hilton_milner(7, 3).unwrap()));
        let stars: Vec<Family> = (1..=5).map(|c| star(5, 2, c).unwrap()).collect();
        assert_eq!(dedup_isomorphic(stars).len(), 1);
        assert!(is_maximal_intersecting(&fano()));
    }

    #[test]
    fn greedy_completion_is_maximal() {
        let f = Family::from_lists(7, 3, &[[1, 2, 3], [1, 4, 5]]).unwrap();
        let g = greedy_completion(&f);
        assert!(is_maximal_intersecting(&g));
        assert!(f.edges().all(|e| g.contains(e)));
    }
}
