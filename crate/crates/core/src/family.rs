//! k-uniform families on `[n]`, stored as a bitset over colex ranks.

use fixedbitset::FixedBitSet;

use crate::binom::choose_u64;
use crate::error::{domain, ensure_domain, Error, Result};
use crate::subset::{k_subsets, rank_colex, unrank_colex_unchecked, KSubset, Vertex, MAX_N};

/// Largest number of rank slots a family may allocate.
pub const MAX_SLOTS: u64 = 1 << 26;

/// A k-uniform hypergraph on the ground set `[n]`.
///
/// Vertex degrees are maintained eagerly; higher-order degrees are computed on
/// demand through [`Family::degree_profile`].
#[derive(Clone, PartialEq, Eq)]
pub struct Family {
    n: u32,
    k: u32,
    edges: FixedBitSet,
    edge_count: usize,
    vertex_degrees: Vec<u64>,
}

impl Family {
    /// The empty family.
    pub fn empty(n: u32, k: u32) -> Result<Self> {
        ensure_domain!(n <= MAX_N, "n = {n} exceeds the supported maximum {MAX_N}");
        ensure_domain!(k <= n, "uniformity k = {k} exceeds n = {n}");
        let slots = choose_u64(n, k);
        if slots > MAX_SLOTS {
            return Err(Error::Resource(format!(
                "C({n},{k}) = {slots} rank slots exceeds {MAX_SLOTS}"
            )));
        }
        Ok(Family {
            n,
            k,
            edges: FixedBitSet::with_capacity(slots as usize),
            edge_count: 0,
            vertex_degrees: vec![0; n as usize],
        })
    }

    /// Builds a family from edges; duplicates are rejected.
    pub fn from_edges<I>(n: u32, k: u32, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = KSubset>,
    {
        let mut family = Family::empty(n, k)?;
        for e in edges {
            if !family.insert(e)? {
                return Err(domain!("duplicate edge {e:?}"));
            }
        }
        Ok(family)
    }

    /// Convenience constructor from vertex lists such as `[[1, 2, 3], [2, 3, 4]]`.
    pub fn from_lists<E: AsRef<[Vertex]>>(n: u32, k: u32, edges: &[E]) -> Result<Self> {
        let sets = edges
            .iter()
            .map(|e| KSubset::from_vertices(e.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Family::from_edges(n, k, sets)
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    /// Number of rank slots, `C(n, k)`.
    pub fn slots(&self) -> usize {
        self.edges.len()
    }

    /// `e(H)`.
    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.edge_count == 0
    }

    fn check_edge(&self, e: KSubset) -> Result<()> {
        ensure_domain!(
            e.len() == self.k,
            "edge {e:?} has size {} but the family is {}-uniform",
            e.len(),
            self.k
        );
        ensure_domain!(
            e.max_vertex().unwrap_or(0) <= self.n,
            "edge {e:?} uses a vertex outside [1, {}]",
            self.n
        );
        Ok(())
    }

    /// Inserts an edge; returns `false` if it was already present.
    pub fn insert(&mut self, e: KSubset) -> Result<bool> {
        self.check_edge(e)?;
        let r = rank_colex(e) as usize;
        if self.edges.put(r) {
            return Ok(false);
        }
        self.edge_count += 1;
        for v in e.iter() {
            self.vertex_degrees[v as usize - 1] += 1;
        }
        Ok(true)
    }

    /// Removes an edge; returns `false` if it was absent.
    pub fn remove(&mut self, e: KSubset) -> Result<bool> {
        self.check_edge(e)?;
        let r = rank_colex(e) as usize;
        if !self.edges.contains(r) {
            return Ok(false);
        }
        self.edges.set(r, false);
        self.edge_count -= 1;
        for v in e.iter() {
            self.vertex_degrees[v as usize - 1] -= 1;
        }
        Ok(true)
    }

    pub fn contains(&self, e: KSubset) -> bool {
        e.len() == self.k
            && e.max_vertex().unwrap_or(0) <= self.n
            && self.edges.contains(rank_colex(e) as usize)
    }

    pub fn contains_rank(&self, rank: u64) -> bool {
        self.edges.contains(rank as usize)
    }

    /// Colex ranks of the edges, increasing.
    pub fn ranks(&self) -> impl Iterator<Item = u64> + '_ {
        self.edges.ones().map(|r| r as u64)
    }

    /// Edges in colex order.
    pub fn edges(&self) -> impl Iterator<Item = KSubset> + '_ {
        let (k, n) = (self.k, self.n);
        self.edges
            .ones()
            .map(move |r| unrank_colex_unchecked(r as u64, k, n))
    }

    /// Edges sorted lexicographically as vertex lists.
    pub fn edges_lex(&self) -> Vec<Vec<Vertex>> {
        let mut lists: Vec<Vec<Vertex>> = self.edges().map(KSubset::elements).collect();
        lists.sort();
        lists
    }

    /// Edge bit masks in colex order, the working form for tight loops.
    pub fn edge_masks(&self) -> Vec<u64> {
        self.edges().map(KSubset::mask).collect()
    }

    /// Degrees of vertices `1..=n`, index `v - 1`.
    pub fn vertex_degrees(&self) -> &[u64] {
        &self.vertex_degrees
    }

    /// Number of edges containing `s`; requires `|s| < k`.
    pub fn degree(&self, s: KSubset) -> Result<u64> {
        ensure_domain!(
            s.len() < self.k,
            "degree needs |S| < k, got |S| = {} with k = {}",
            s.len(),
            self.k
        );
        ensure_domain!(
            s.max_vertex().unwrap_or(0) <= self.n,
            "subset {s:?} is not contained in [1, {}]",
            self.n
        );
        Ok(match s.len() {
            0 => self.edge_count as u64,
            1 => self.vertex_degrees[s.max_vertex().unwrap() as usize - 1],
            _ => self.edges().filter(|e| s.is_subset_of(*e)).count() as u64,
        })
    }

    /// `delta_d(H)`: minimum degree over all d-subsets of `[n]`.
    pub fn min_degree(&self, d: u32) -> Result<u64> {
        ensure_domain!(d < self.k, "min_degree needs d < k, got d = {d}, k = {}", self.k);
        Ok(match d {
            0 => self.edge_count as u64,
            1 => self.vertex_degrees.iter().copied().min().unwrap_or(0),
            _ => self.degree_profile(d)?.degrees.iter().copied().min().unwrap_or(0),
        })
    }

    /// `delta_1(H)`, defined as 0 for `k <= 1` where vertex degrees are not in scope.
    pub fn min_vertex_degree(&self) -> u64 {
        self.vertex_degrees.iter().copied().min().unwrap_or(0)
    }

    /// Degrees of every d-subset of `[n]`, indexed by colex rank.
    pub fn degree_profile(&self, d: u32) -> Result<DegreeProfile> {
        ensure_domain!(d < self.k, "degree profile needs d < k");
        let degrees = if d == 1 {
            self.vertex_degrees.clone()
        } else {
            let mut counts = vec![0u64; choose_u64(self.n, d) as usize];
            for e in self.edges() {
                for sub in subsets_of(e, d) {
                    counts[rank_colex(sub) as usize] += 1;
                }
            }
            counts
        };
        Ok(DegreeProfile {
            n: self.n,
            k: self.k,
            d,
            degrees,
        })
    }

    /// True iff every two edges share a vertex.
    pub fn is_intersecting(&self) -> bool {
        let masks = self.edge_masks();
        masks
            .iter()
            .enumerate()
            .all(|(i, a)| masks[i + 1..].iter().all(|b| a & b != 0))
    }

    /// The vertex common to all edges, if this family is the full star at it.
    pub fn star_center(&self) -> Option<Vertex> {
        if self.k == 0 || self.edge_count as u64 != choose_u64(self.n - 1, self.k - 1) {
            return None;
        }
        let common = self.edges().fold(u64::MAX, |acc, e| acc & e.mask());
        (common != 0).then(|| common.trailing_zeros() + 1)
    }

    pub fn is_star(&self) -> bool {
        self.star_center().is_some()
    }

    /// Intersection of all edges (empty for the empty family).
    pub fn common_vertices(&self) -> KSubset {
        if self.is_empty() {
            return KSubset::EMPTY;
        }
        KSubset::from_mask(self.edges().fold(u64::MAX, |acc, e| acc & e.mask()))
    }

    /// The (k-1)-uniform link of `v` on `[n] \ {v}`, relabeled order-preservingly.
    pub fn link(&self, v: Vertex) -> Result<Family> {
        ensure_domain!(v >= 1 && v <= self.n, "vertex {v} outside [1, {}]", self.n);
        ensure_domain!(self.k >= 1, "link of a 0-uniform family is undefined");
        let mut out = Family::empty(self.n - 1, self.k - 1)?;
        for e in self.edges().filter(|e| e.contains(v)) {
            out.insert(e.delete_and_relabel(v))?;
        }
        Ok(out)
    }

    /// Edges contained in the vertex set `keep` (same labels, same ground set).
    pub fn induced(&self, keep: KSubset) -> Family {
        let mut out = Family::empty(self.n, self.k).expect("same shape");
        for e in self.edges().filter(|e| e.is_subset_of(keep)) {
            out.insert(e).expect("edge already validated");
        }
        out
    }

    /// Bit mask of all of `[n]`.
    pub fn ground_mask(&self) -> u64 {
        ground_mask(self.n)
    }
}

impl std::fmt::Debug for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Family")
            .field("n", &self.n)
            .field("k", &self.k)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

pub(crate) fn ground_mask(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// All `d`-element subsets of `set`.
pub fn subsets_of(set: KSubset, d: u32) -> impl Iterator<Item = KSubset> {
    let elems = set.elements();
    let size = elems.len() as u32;
    k_subsets(size, d).map(move |pick| {
        KSubset::from_mask(pick.iter().fold(0u64, |m, i| m | 1 << (elems[i as usize - 1] - 1)))
    })
}

/// True iff every edge of `b` meets every edge of `c`.
pub fn are_cross_intersecting(b: &Family, c: &Family) -> Result<bool> {
    ensure_domain!(
        b.n == c.n && b.k == c.k,
        "cross-intersection needs matching shapes, got (n,k) = ({},{}) and ({},{})",
        b.n,
        b.k,
        c.n,
        c.k
    );
    let cm = c.edge_masks();
    Ok(b.edges().all(|e| cm.iter().all(|f| e.mask() & f != 0)))
}

/// Degrees of all d-subsets of `[n]` in a k-uniform family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub n: u32,
    pub k: u32,
    pub d: u32,
    /// Indexed by colex rank of the d-subset.
    pub degrees: Vec<u64>,
}

impl DegreeProfile {
    pub fn get(&self, s: KSubset) -> Option<u64> {
        (s.len() == self.d)
            .then(|| self.degrees.get(rank_colex(s) as usize).copied())
            .flatten()
    }

    pub fn min(&self) -> u64 {
        self.degrees.iter().copied().min().unwrap_or(0)
    }
}
