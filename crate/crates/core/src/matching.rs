//! Integral matchings: exact matching number, the rainbow step and the
//! degree-driven inductive construction.

use std::cmp::Reverse;

use crate::binom::{choose, choose_u64};
use crate::error::{ensure_domain, Error, Result};
use crate::family::Family;
use crate::subset::{KSubset, Vertex};

/// Default cap on `e(H)` for the exact matching search.
pub const DEFAULT_EDGE_LIMIT: usize = 100_000;

/// Pairwise disjoint edges of a source family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    edges: Vec<KSubset>,
}

impl Matching {
    /// Validates disjointness and membership in `f`.
    pub fn new(f: &Family, edges: Vec<KSubset>) -> Result<Self> {
        let mut used = 0u64;
        for &e in &edges {
            ensure_domain!(f.contains(e), "{e:?} is not an edge of the family");
            ensure_domain!(used & e.mask() == 0, "{e:?} meets an earlier edge of the matching");
            used |= e.mask();
        }
        Ok(Matching { edges })
    }

    pub fn edges(&self) -> &[KSubset] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn covered(&self) -> KSubset {
        KSubset::from_mask(self.edges.iter().fold(0, |m, e| m | e.mask()))
    }
}

/// Edge masks sorted lexicographically by their sorted vertex lists.
pub(crate) fn lex_sorted_masks(f: &Family) -> Vec<u64> {
    let mut masks = f.edge_masks();
    masks.sort_unstable_by_key(|m| Reverse(m.reverse_bits()));
    masks
}

fn to_subsets(masks: &[u64]) -> Vec<KSubset> {
    let mut v: Vec<KSubset> = masks.iter().map(|&m| KSubset::from_mask(m)).collect();
    v.sort_unstable_by_key(|e| Reverse(e.mask().reverse_bits()));
    v
}

struct Search {
    k: u32,
    best: Vec<u64>,
    stop_at: usize,
}

impl Search {
    fn run(&mut self, edges: &[u64], current: &mut Vec<u64>) {
        if self.best.len() >= self.stop_at {
            return;
        }
        if current.len() > self.best.len() {
            self.best = current.clone();
            if self.best.len() >= self.stop_at {
                return;
            }
        }
        if edges.is_empty() || current.len() + upper_bound(edges, self.k) <= self.best.len() {
            return;
        }
        let v = min_positive_degree_vertex(edges);
        let bit = 1u64 << v;
        for &e in edges.iter().filter(|&&e| e & bit != 0) {
            let rest: Vec<u64> = edges.iter().copied().filter(|&g| g & e == 0).collect();
            current.push(e);
            self.run(&rest, current);
            current.pop();
            if self.best.len() >= self.stop_at {
                return;
            }
        }
        let rest: Vec<u64> = edges.iter().copied().filter(|&g| g & bit == 0).collect();
        self.run(&rest, current);
    }
}

fn degrees(edges: &[u64]) -> [u32; 64] {
    let mut deg = [0u32; 64];
    for &e in edges {
        let mut m = e;
        while m != 0 {
            deg[m.trailing_zeros() as usize] += 1;
            m &= m - 1;
        }
    }
    deg
}

fn min_positive_degree_vertex(edges: &[u64]) -> u32 {
    let deg = degrees(edges);
    (0..64u32)
        .filter(|&v| deg[v as usize] > 0)
        .min_by_key(|&v| (deg[v as usize], v))
        .expect("nonempty edge list")
}

/// Minimum of `|active vertices| / k` and the size of a greedy vertex cover.
fn upper_bound(edges: &[u64], k: u32) -> usize {
    let active = edges.iter().fold(0u64, |m, &e| m | e);
    let by_vertices = (active.count_ones() / k) as usize;
    let mut rest: Vec<u64> = edges.to_vec();
    let mut cover = 0;
    while !rest.is_empty() && cover < by_vertices {
        let deg = degrees(&rest);
        let v = (0..64).max_by_key(|&v| (deg[v], Reverse(v))).unwrap();
        rest.retain(|&e| e & (1u64 << v) == 0);
        cover += 1;
    }
    by_vertices.min(cover)
}

fn search(f: &Family, stop_at: usize, limit: usize) -> Result<Vec<u64>> {
    if f.edge_count() > limit {
        return Err(Error::Resource(format!(
            "matching search on {} edges exceeds the limit of {limit}",
            f.edge_count()
        )));
    }
    let edges = lex_sorted_masks(f);
    let mut s = Search {
        k: f.k().max(1),
        best: Vec::new(),
        stop_at,
    };
    s.run(&edges, &mut Vec::new());
    Ok(s.best)
}

/// Whether `edges` (as vertex masks) contain `s` pairwise disjoint members.
pub(crate) fn masks_have_matching(edges: &[u64], k: u32, s: usize) -> bool {
    if s == 0 {
        return true;
    }
    let mut search = Search {
        k: k.max(1),
        best: Vec::new(),
        stop_at: s,
    };
    search.run(edges, &mut Vec::new());
    search.best.len() >= s
}

/// Exact matching number with a witness of that size.
pub fn matching_number(f: &Family) -> Result<(usize, Matching)> {
    matching_number_with_limit(f, DEFAULT_EDGE_LIMIT)
}

pub fn matching_number_with_limit(f: &Family, limit: usize) -> Result<(usize, Matching)> {
    let best = search(f, usize::MAX, limit)?;
    let m = Matching::new(f, to_subsets(&best))?;
    Ok((m.len(), m))
}

/// Searches for `s` disjoint edges, stopping at the first success.
pub fn has_matching_of_size(f: &Family, s: usize) -> Result<Option<Matching>> {
    if s == 0 {
        return Ok(Some(Matching { edges: Vec::new() }));
    }
    let best = search(f, s, DEFAULT_EDGE_LIMIT)?;
    if best.len() >= s {
        Ok(Some(Matching::new(f, to_subsets(&best[..s]))?))
    } else {
        Ok(None)
    }
}

/// Disjoint `e_1..e_s` with `v_i in e_i`, by complete backtracking.
///
/// Requires `deg(v_i) > 2(s-1) C(n-2,k-2)` for every `i` and `ks < n`.
pub fn rainbow_extension(f: &Family, vertices: &[Vertex]) -> Result<Matching> {
    let (n, k) = (f.n(), f.k());
    let s = vertices.len();
    ensure_domain!(s >= 1, "rainbow_extension needs at least one vertex");
    ensure_domain!(k >= 2, "rainbow_extension needs k >= 2");
    let mut seen = 0u64;
    for &v in vertices {
        ensure_domain!(v >= 1 && v <= n, "vertex {v} is outside [1, {n}]");
        ensure_domain!(seen & (1 << (v - 1)) == 0, "vertex {v} is repeated");
        seen |= 1 << (v - 1);
    }
    ensure_domain!((k as usize) * s < n as usize, "rainbow_extension needs ks < n");
    let bound = 2 * (s as u128 - 1) * choose_u64(n - 2, k - 2) as u128;
    for &v in vertices {
        let d = f.vertex_degrees()[v as usize - 1] as u128;
        ensure_domain!(d > bound, "deg({v}) = {d} does not exceed 2(s-1)C(n-2,k-2) = {bound}");
    }
    let edges = lex_sorted_masks(f);
    match rainbow_search(&edges, vertices) {
        Some(found) => Matching::new(f, found.into_iter().map(KSubset::from_mask).collect()),
        None => Err(Error::Contradiction(format!(
            "no rainbow matching through {vertices:?} despite the degree condition"
        ))),
    }
}

fn rainbow_search(edges: &[u64], vertices: &[Vertex]) -> Option<Vec<u64>> {
    let bits: Vec<u64> = vertices.iter().map(|&v| 1u64 << (v - 1)).collect();
    let all = bits.iter().fold(0, |m, b| m | b);
    let mut chosen = Vec::with_capacity(bits.len());
    fn go(edges: &[u64], bits: &[u64], all: u64, used: u64, chosen: &mut Vec<u64>) -> bool {
        let i = chosen.len();
        if i == bits.len() {
            return true;
        }
        let forbidden = used | (all & !bits[i]);
        for &e in edges {
            if e & bits[i] != 0 && e & forbidden == 0 {
                chosen.push(e);
                if go(edges, bits, all, used | e, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    go(edges, &bits, all, 0, &mut chosen).then_some(chosen)
}

/// Which step of the inductive construction produced a level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Branch {
    /// `s = 1`: the lexicographically first edge.
    Single,
    /// `s = 2`: the lexicographically first disjoint pair.
    Pair,
    /// A vertex of degree above `k(s-1)C(n-2,k-2)`; recurse without it.
    HighDegree { vertex: Vertex },
    /// The top `s` degrees exceed `2(s-1)C(n-2,k-2)`.
    Rainbow { vertices: Vec<Vertex> },
    /// Recurse at `s-1` and add any disjoint edge.
    Extend,
}

/// One recursion level: the active vertex set and the branch taken.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub s: usize,
    pub active: KSubset,
    pub branch: Branch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeMatching {
    pub matching: Matching,
    /// Outermost level first.
    pub trace: Vec<TraceStep>,
    /// Set when the degree or size preconditions failed and the exact search
    /// was used instead.
    pub outside_guarantee: bool,
}

/// Minimum vertex degree beyond which a matching of size `s` is guaranteed:
/// `C(n-1,k-1) - C(n-s,k-1)`.
pub fn degree_threshold(n: u32, k: u32, s: usize) -> num_bigint::BigInt {
    let (n, k, s) = (n as i64, k as i64, s as i64);
    choose(n - 1, k - 1) - choose(n - s, k - 1)
}

/// Builds a matching of size `s` by induction on `s`, following the degree
/// case split. Outside `n >= 3k^2 s` and `delta_1 > C(n-1,k-1) - C(n-s,k-1)`
/// falls back to the exact search and sets `outside_guarantee`.
pub fn find_matching_by_degree(f: &Family, s: usize) -> Result<DegreeMatching> {
    let (n, k) = (f.n(), f.k());
    ensure_domain!(s >= 1, "find_matching_by_degree needs s >= 1");
    ensure_domain!(k >= 2, "find_matching_by_degree needs k >= 2");
    let within = (n as u64) >= 3 * (k as u64) * (k as u64) * s as u64
        && num_bigint::BigInt::from(f.min_vertex_degree()) > degree_threshold(n, k, s);
    if !within {
        return match has_matching_of_size(f, s)? {
            Some(matching) => Ok(DegreeMatching {
                matching,
                trace: Vec::new(),
                outside_guarantee: true,
            }),
            None => Err(Error::Domain(format!(
                "outside the degree guarantee and the family has no matching of size {s}"
            ))),
        };
    }
    let edges = lex_sorted_masks(f);
    let mut trace = Vec::new();
    let found = build(&edges, f.ground_mask(), k, s, &mut trace)?;
    Ok(DegreeMatching {
        matching: Matching::new(f, found.into_iter().map(KSubset::from_mask).collect())?,
        trace,
        outside_guarantee: false,
    })
}

fn build(all: &[u64], active: u64, k: u32, s: usize, trace: &mut Vec<TraceStep>) -> Result<Vec<u64>> {
    let edges: Vec<u64> = all.iter().copied().filter(|&e| e & !active == 0).collect();
    let mut push = |branch| {
        trace.push(TraceStep {
            s,
            active: KSubset::from_mask(active),
            branch,
        })
    };
    let stuck = |what: &str| Error::Contradiction(format!("{what} at level s = {s}"));
    if s == 1 {
        push(Branch::Single);
        return edges.first().map(|&e| vec![e]).ok_or_else(|| stuck("no edge"));
    }
    if s == 2 {
        push(Branch::Pair);
        for (i, &a) in edges.iter().enumerate() {
            if let Some(&b) = edges[i + 1..].iter().find(|&&b| a & b == 0) {
                return Ok(vec![a, b]);
            }
        }
        return Err(stuck("no disjoint pair"));
    }

    let n_active = active.count_ones();
    let pair = choose_u64(n_active - 2, k - 2) as u128;
    let deg = degrees(&edges);
    let mut order: Vec<u32> = (0..64).filter(|&v| active & (1u64 << v) != 0).collect();
    order.sort_by_key(|&v| (Reverse(deg[v as usize]), v));
    let top = order[0];
    if deg[top as usize] as u128 > k as u128 * (s as u128 - 1) * pair {
        push(Branch::HighDegree { vertex: top + 1 });
        let bit = 1u64 << top;
        let mut m = build(all, active & !bit, k, s - 1, trace)?;
        let used = m.iter().fold(0, |a, &e| a | e);
        let e = edges
            .iter()
            .copied()
            .find(|&e| e & bit != 0 && e & used == 0)
            .ok_or_else(|| stuck("no edge through the high-degree vertex avoids the matching"))?;
        m.push(e);
        return Ok(m);
    }
    let sth = order[s - 1];
    if deg[sth as usize] as u128 > 2 * (s as u128 - 1) * pair && (k as usize) * s < n_active as usize {
        let vertices: Vec<Vertex> = order[..s].iter().map(|&v| v + 1).collect();
        let found = rainbow_search(&edges, &vertices).ok_or_else(|| stuck("rainbow search failed"))?;
        push(Branch::Rainbow { vertices });
        return Ok(found);
    }
    push(Branch::Extend);
    let mut m = build(all, active, k, s - 1, trace)?;
    let used = m.iter().fold(0, |a, &e| a | e);
    let e = edges
        .iter()
        .copied()
        .find(|&e| e & used == 0)
        .ok_or_else(|| stuck("no edge avoids the smaller matching"))?;
    m.push(e);
    Ok(m)
}
