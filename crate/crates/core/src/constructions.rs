//! Named families used as fixtures and extremal baselines.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_domain, Result};
use crate::family::{ground_mask, Family};
use crate::subset::{k_subsets, KSubset, Vertex};

/// A named construction together with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ConstructionSpec {
    Star { n: u32, k: u32, center: Vertex },
    ErdosExtremal { n: u32, k: u32, s: u32, i: u32 },
    HiltonMilner { n: u32, k: u32 },
    Remark,
    RandomHalved { k: u32, seed: u64 },
    Complete { n: u32, k: u32 },
    Fano,
}

impl ConstructionSpec {
    pub fn build(&self) -> Result<Family> {
        match *self {
            ConstructionSpec::Star { n, k, center } => star(n, k, center),
            ConstructionSpec::ErdosExtremal { n, k, s, i } => erdos_extremal(n, k, s, i),
            ConstructionSpec::HiltonMilner { n, k } => hilton_milner(n, k),
            ConstructionSpec::Remark => Ok(remark_family()),
            ConstructionSpec::RandomHalved { k, seed } => random_halved(k, seed),
            ConstructionSpec::Complete { n, k } => complete(n, k),
            ConstructionSpec::Fano => Ok(fano()),
        }
    }
}

/// All k-sets of `[n]` containing `center`.
pub fn star(n: u32, k: u32, center: Vertex) -> Result<Family> {
    ensure_domain!(center >= 1 && center <= n, "star center {center} outside [1, {n}]");
    ensure_domain!(k >= 1 && k <= n, "star needs 1 <= k <= n, got k = {k}, n = {n}");
    Family::from_edges(n, k, k_subsets(n, k).filter(|e| e.contains(center)))
}

/// Every k-subset of `[n]`.
pub fn complete(n: u32, k: u32) -> Result<Family> {
    ensure_domain!(k <= n, "complete family needs k <= n");
    Family::from_edges(n, k, k_subsets(n, k))
}

/// All k-sets meeting `S = {1, ..., s*i - 1}` in at least `i` vertices.
///
/// These families have no matching of size `s`.
pub fn erdos_extremal(n: u32, k: u32, s: u32, i: u32) -> Result<Family> {
    ensure_domain!(s >= 1, "erdos_extremal needs s >= 1");
    ensure_domain!(i >= 1 && i <= k, "erdos_extremal needs 1 <= i <= k, got i = {i}, k = {k}");
    ensure_domain!(k <= n, "erdos_extremal needs k <= n");
    ensure_domain!(s * i - 1 <= n, "erdos_extremal needs s*i - 1 <= n, got {} > {n}", s * i - 1);
    let core = ground_mask(s * i - 1);
    Family::from_edges(
        n,
        k,
        k_subsets(n, k).filter(|e| (e.mask() & core).count_ones() >= i),
    )
}

/// `S = {2, ..., k+1}` plus every k-set through vertex 1 that meets `S`.
pub fn hilton_milner(n: u32, k: u32) -> Result<Family> {
    ensure_domain!(k >= 1 && n >= k + 1, "hilton_milner needs n >= k + 1 >= 2, got n = {n}, k = {k}");
    let core = ground_mask(k + 1) & !1;
    Family::from_edges(
        n,
        k,
        k_subsets(n, k).filter(|e| e.mask() == core || (e.contains(1) && e.mask() & core != 0)),
    )
}

/// The ten-edge 3-uniform family on six vertices with every degree equal to 5.
pub fn remark_family() -> Family {
    Family::from_lists(
        6,
        3,
        &[
            [1, 2, 3],
            [2, 3, 4],
            [3, 4, 5],
            [4, 5, 1],
            [5, 1, 2],
            [1, 3, 6],
            [2, 4, 6],
            [3, 5, 6],
            [2, 5, 6],
            [1, 4, 6],
        ],
    )
    .expect("fixed edge list is valid")
}

/// The Fano plane.
pub fn fano() -> Family {
    Family::from_lists(
        7,
        3,
        &[
            [1, 2, 3],
            [1, 4, 5],
            [2, 4, 6],
            [1, 6, 7],
            [2, 5, 7],
            [3, 4, 7],
            [3, 5, 6],
        ],
    )
    .expect("fixed edge list is valid")
}

/// One k-set from each complementary pair of `[2k]`, chosen by a fair seeded coin.
pub fn random_halved(k: u32, seed: u64) -> Result<Family> {
    ensure_domain!(k >= 2, "random_halved needs k >= 2");
    let n = 2 * k;
    let full = ground_mask(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks = k_subsets(n, k)
        .filter(|e| e.contains(1))
        .map(|e| {
            if rng.gen::<bool>() {
                e
            } else {
                KSubset::from_mask(full & !e.mask())
            }
        })
        .collect::<Vec<_>>();
    Family::from_edges(n, k, picks)
}

/// Each k-set of `[n]` kept independently with probability `density`.
pub fn random_family<R: Rng + ?Sized>(n: u32, k: u32, density: f64, rng: &mut R) -> Result<Family> {
    ensure_domain!((0.0..=1.0).contains(&density), "density must lie in [0, 1]");
    let mut f = Family::empty(n, k)?;
    for e in k_subsets(n, k) {
        if rng.gen_bool(density) {
            f.insert(e)?;
        }
    }
    Ok(f)
}
