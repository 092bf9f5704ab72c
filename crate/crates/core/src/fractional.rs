//! Fractional matchings and covers by exact LP, and the cover reduction that
//! bounds the vertex-degree threshold by an edge-count threshold.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::binom::choose;
use crate::error::{ensure_domain, Error, Result};
use crate::family::Family;
use crate::lp::maximize;
use crate::subset::{k_subsets, rank_colex, KSubset, Vertex};
use crate::Rational;

/// Default cap on `e(H)` for the LP solvers.
pub const DEFAULT_LP_EDGE_LIMIT: usize = 5000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FractionalKind {
    Matching,
    Cover,
}

/// An optimal fractional matching (weights keyed by edge colex rank) or cover
/// (weights keyed by vertex).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalSolution {
    pub kind: FractionalKind,
    pub weights: BTreeMap<u64, Rational>,
    pub objective: Rational,
    /// The complementary optimum that certifies `objective`: a cover for a
    /// matching and a matching for a cover.
    pub certificate: BTreeMap<u64, Rational>,
}

impl FractionalSolution {
    /// Re-checks the feasibility invariants against `f`.
    pub fn validate(&self, f: &Family) -> Result<()> {
        let total: Rational = self.weights.values().sum();
        ensure_domain!(total == self.objective, "objective differs from the weight sum");
        ensure_domain!(
            self.weights.values().all(|w| !w.is_negative()),
            "negative weight"
        );
        match self.kind {
            FractionalKind::Matching => {
                ensure_domain!(self.weights.values().all(|w| *w <= Rational::one()), "weight above 1");
                let mut load = vec![Rational::zero(); f.n() as usize];
                for e in f.edges() {
                    let w = self.weights.get(&rank_colex(e)).cloned().unwrap_or_default();
                    for v in e.iter() {
                        load[v as usize - 1] += &w;
                    }
                }
                ensure_domain!(load.iter().all(|l| *l <= Rational::one()), "vertex overloaded");
            }
            FractionalKind::Cover => {
                ensure_domain!(cover_violation(f, &self.weights).is_none(), "edge not covered");
            }
        }
        Ok(())
    }
}

fn cover_violation(f: &Family, x: &BTreeMap<u64, Rational>) -> Option<KSubset> {
    f.edges().find(|e| {
        let load: Rational = e.iter().map(|v| x.get(&(v as u64)).cloned().unwrap_or_default()).sum();
        load < Rational::one()
    })
}

fn check_size(f: &Family, limit: usize) -> Result<()> {
    if f.edge_count() > limit {
        return Err(Error::Resource(format!(
            "LP on {} edges exceeds the limit of {limit}",
            f.edge_count()
        )));
    }
    Ok(())
}

/// `nu*(H)`: maximize the total edge weight with vertex loads at most 1.
pub fn fractional_matching(f: &Family) -> Result<FractionalSolution> {
    fractional_matching_with_limit(f, DEFAULT_LP_EDGE_LIMIT)
}

pub fn fractional_matching_with_limit(f: &Family, limit: usize) -> Result<FractionalSolution> {
    check_size(f, limit)?;
    let edges: Vec<KSubset> = f.edges().collect();
    let a: Vec<Vec<Rational>> = (1..=f.n())
        .map(|v| edges.iter().map(|e| indicator(e.contains(v))).collect())
        .collect();
    let b = vec![Rational::one(); f.n() as usize];
    let c = vec![Rational::one(); edges.len()];
    let sol = maximize(&a, &b, &c)?;
    Ok(FractionalSolution {
        kind: FractionalKind::Matching,
        weights: edges.iter().map(|&e| rank_colex(e)).zip(sol.primal).collect(),
        objective: sol.objective,
        certificate: (1..=f.n() as u64).zip(sol.dual).collect(),
    })
}

/// `tau*(H)`: minimize the total vertex weight with every edge load at least 1.
pub fn fractional_cover(f: &Family) -> Result<FractionalSolution> {
    fractional_cover_with_limit(f, DEFAULT_LP_EDGE_LIMIT)
}

pub fn fractional_cover_with_limit(f: &Family, limit: usize) -> Result<FractionalSolution> {
    check_size(f, limit)?;
    let edges: Vec<KSubset> = f.edges().collect();
    let a: Vec<Vec<Rational>> = edges
        .iter()
        .map(|e| (1..=f.n()).map(|v| -indicator(e.contains(v))).collect())
        .collect();
    let b = vec![-Rational::one(); edges.len()];
    let c = vec![-Rational::one(); f.n() as usize];
    let sol = maximize(&a, &b, &c)?;
    Ok(FractionalSolution {
        kind: FractionalKind::Cover,
        weights: (1..=f.n() as u64).zip(sol.primal).collect(),
        objective: -sol.objective,
        certificate: edges.iter().map(|&e| rank_colex(e)).zip(sol.dual).collect(),
    })
}

fn indicator(b: bool) -> Rational {
    if b {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// Solves both LPs separately and compares the optima.
pub fn verify_duality(f: &Family) -> Result<bool> {
    let m = fractional_matching(f)?;
    let c = fractional_cover(f)?;
    m.validate(f)?;
    c.validate(f)?;
    Ok(m.objective == c.objective)
}

/// The `(k-1)`-uniform family left after setting aside the lightest vertex of
/// a fractional cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedCover {
    /// Vertices sorted by non-increasing weight, stable by id.
    pub order: Vec<Vertex>,
    /// The last vertex of `order`.
    pub removed: Vertex,
    /// On `[n] \ {removed}`, relabeled order-preservingly to `[n-1]`.
    pub family: Family,
}

/// All `(k-1)`-sets `S` of the other vertices with `x(S) + x(removed) >= 1`.
///
/// Contains the link of `removed`, so its size is at least `delta_1(F)`.
pub fn reduce_cover(f: &Family, x: &FractionalSolution) -> Result<ReducedCover> {
    let (n, k) = (f.n(), f.k());
    ensure_domain!(k >= 3, "reduce_cover needs k >= 3");
    ensure_domain!(x.kind == FractionalKind::Cover, "reduce_cover needs a fractional cover");
    ensure_domain!(
        x.weights.keys().all(|&v| v >= 1 && v <= n as u64),
        "cover weights name a vertex outside [1, {n}]"
    );
    ensure_domain!(x.weights.values().all(|w| !w.is_negative()), "cover has a negative weight");
    if let Some(e) = cover_violation(f, &x.weights) {
        return Err(Error::Domain(format!("{e:?} is not covered")));
    }
    let weight = |v: Vertex| x.weights.get(&(v as u64)).cloned().unwrap_or_default();
    let mut order: Vec<Vertex> = (1..=n).collect();
    order.sort_by(|&a, &b| weight(b).cmp(&weight(a)));
    let removed = *order.last().expect("n >= 1");
    let base = weight(removed);
    let others: Vec<Vertex> = (1..=n).filter(|&v| v != removed).collect();
    let edges = k_subsets(n - 1, k - 1).filter(|s| {
        let load: Rational = s.iter().map(|i| weight(others[i as usize - 1])).sum();
        load + &base >= Rational::one()
    });
    let family = Family::from_edges(n - 1, k - 1, edges)?;
    Ok(ReducedCover {
        order,
        removed,
        family,
    })
}

/// Instance-level evidence for the fractional degree threshold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdReport {
    pub n: u32,
    pub k: u32,
    pub d: u32,
    pub s: u32,
    /// `C(n-1,k-1) - C(n-s,k-1) + 1`, the minimum degree that forces `nu* >= s`.
    pub threshold: BigInt,
    pub min_degree: u64,
    pub nu_star: Rational,
    pub holds: bool,
}

/// Checks `nu*(F) >= s` for a family above the degree threshold with
/// `n >= (2s-1)(k-1) - s + 2`.
pub fn fractional_threshold_check(f: &Family, s: u32) -> Result<ThresholdReport> {
    let (n, k) = (f.n() as i64, f.k() as i64);
    let si = s as i64;
    ensure_domain!(s >= 1 && k >= 2, "fractional_threshold_check needs s >= 1 and k >= 2");
    ensure_domain!(
        n >= (2 * si - 1) * (k - 1) - si + 2,
        "fractional_threshold_check needs n >= (2s-1)(k-1) - s + 2"
    );
    let threshold = choose(n - 1, k - 1) - choose(n - si, k - 1) + 1;
    let min_degree = f.min_vertex_degree();
    ensure_domain!(
        BigInt::from(min_degree) >= threshold,
        "delta_1 = {min_degree} does not exceed C(n-1,k-1) - C(n-s,k-1) = {}",
        &threshold - 1
    );
    let nu_star = fractional_matching(f)?.objective;
    let holds = nu_star >= Rational::from_integer(BigInt::from(s));
    Ok(ThresholdReport {
        n: f.n(),
        k: f.k(),
        d: 1,
        s,
        threshold,
        min_degree,
        nu_star,
        holds,
    })
}
