//! Kneser-graph spectrum and exact eigenspace masses of a family.
//!
//! The Kneser graph `KG(n, k)` joins two k-sets when they are disjoint. Its
//! eigenspaces `E_0, ..., E_t` (with `t = min(k, n - k)`) are nested through the
//! spans `U_d = span{f_S : |S| = d} = E_0 + ... + E_d`, where `f_S` is the
//! indicator of the k-sets containing `S`. The mass of a family in `E_d` is
//! `|P_{U_d} h|^2 - |P_{U_{d-1}} h|^2`, and `|P_{U_d} h|^2 = g^T M^{-1} g` where
//! `g` is the d-degree vector and `M` the Gram matrix of the `f_S`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::binom::{choose, choose_u64};
use crate::error::{ensure_domain, Error, Result};
use crate::exact::int;
use crate::family::Family;
use crate::linalg::{invert_fraction_free, ScaledInverse};
use crate::subset::k_subsets;
use crate::Rational;

/// Default cap on the size of a Gram system solved by [`MassEngine`].
pub const DEFAULT_GRAM_LIMIT: u64 = 5000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumLevel {
    pub j: u32,
    pub eigenvalue: BigInt,
    pub multiplicity: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KneserSpectrum {
    pub n: u32,
    pub k: u32,
    pub levels: Vec<SpectrumLevel>,
}

impl KneserSpectrum {
    pub fn eigenvalues(&self) -> Vec<BigInt> {
        self.levels.iter().map(|l| l.eigenvalue.clone()).collect()
    }
}

/// Number of nontrivial eigenspace levels, `min(k, n - k)`.
fn top_level(n: u32, k: u32) -> u32 {
    k.min(n - k)
}

/// Eigenvalues `(-1)^j C(n-k-j, k-j)` with multiplicities `C(n,j) - C(n,j-1)`.
pub fn kneser_spectrum(n: u32, k: u32) -> Result<KneserSpectrum> {
    ensure_domain!(k <= n, "kneser_spectrum needs k <= n, got k = {k}, n = {n}");
    let (n_i, k_i) = (n as i64, k as i64);
    let levels = (0..=top_level(n, k))
        .map(|j| {
            let j_i = j as i64;
            let magnitude = choose(n_i - k_i - j_i, k_i - j_i);
            let eigenvalue = if j % 2 == 0 { magnitude } else { -magnitude };
            SpectrumLevel {
                j,
                eigenvalue,
                multiplicity: choose(n_i, j_i) - choose(n_i, j_i - 1),
            }
        })
        .collect();
    Ok(KneserSpectrum { n, k, levels })
}

/// Number of unordered pairs of disjoint edges.
pub fn disjoint_pairs(f: &Family) -> BigInt {
    let masks = f.edge_masks();
    let count: u64 = masks
        .iter()
        .enumerate()
        .map(|(i, a)| masks[i + 1..].iter().filter(|&&b| a & b == 0).count() as u64)
        .sum();
    BigInt::from(count)
}

/// `h^T A h` for the Kneser adjacency `A`: twice the disjoint-pair count.
pub fn quadratic_form(f: &Family) -> BigInt {
    disjoint_pairs(f) * 2
}

/// Masses of a family in `E_0`, `E_1` and everything above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelMasses {
    pub f0: Rational,
    pub f1: Rational,
    pub residual: Rational,
}

/// `F_0`, `F_1` and the residual from the vertex degrees alone.
///
/// The star vectors have Gram matrix `aI + bJ` with `a = C(n-1,k-1) - C(n-2,k-2)`
/// and `b = C(n-2,k-2)`, whose inverse is `(I - b/(a + nb) J) / a`.
pub fn level_masses(f: &Family) -> Result<LevelMasses> {
    let (n, k) = (f.n() as i64, f.k() as i64);
    ensure_domain!(k >= 1, "level_masses needs k >= 1");
    let a = choose(n - 1, k - 1) - choose(n - 2, k - 2);
    ensure_domain!(!a.is_zero(), "star Gram matrix is singular (n = k = {n})");
    let b = choose(n - 2, k - 2);
    let e = BigInt::from(f.edge_count());
    let degrees = f.vertex_degrees();
    let sum: BigInt = degrees.iter().map(|&d| BigInt::from(d)).sum();
    let sum_sq: BigInt = degrees.iter().map(|&d| BigInt::from(d) * d).sum();
    let star_span = (int(sum_sq) - int(b.clone()) * int(&sum * &sum) / int(&a + &b * n)) / int(a);
    let f0 = Rational::new(&e * &e, choose(n, k));
    let f1 = star_span - &f0;
    let residual = int(e) - &f0 - &f1;
    Ok(LevelMasses { f0, f1, residual })
}

/// Eigenspace masses `F_0..F_t` of a family together with its quadratic form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralMass {
    pub masses: Vec<Rational>,
    pub quad_form: BigInt,
    pub total: Rational,
}

impl SpectralMass {
    /// `sum_j lambda_j F_j`.
    pub fn spectral_sum(&self, spectrum: &KneserSpectrum) -> Rational {
        self.masses
            .iter()
            .zip(&spectrum.levels)
            .map(|(m, l)| m * int(l.eigenvalue.clone()))
            .sum()
    }

    pub fn is_consistent(&self, f: &Family, spectrum: &KneserSpectrum) -> bool {
        self.total == int(f.edge_count())
            && self.spectral_sum(spectrum) == int(self.quad_form.clone())
            && self.masses.iter().all(|m| !m.is_negative())
    }
}

/// Cached Gram inverses for repeated mass computations at a fixed `(n, k)`.
#[derive(Clone, Debug)]
pub struct MassEngine {
    n: u32,
    k: u32,
    spectrum: KneserSpectrum,
    gram_inverses: Vec<ScaledInverse>,
}

impl MassEngine {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        Self::with_limit(n, k, DEFAULT_GRAM_LIMIT)
    }

    /// Fails with a resource error when the largest Gram system,
    /// `C(n, min(k, n-k) - 1)`, exceeds `limit`.
    pub fn with_limit(n: u32, k: u32, limit: u64) -> Result<Self> {
        let spectrum = kneser_spectrum(n, k)?;
        let top = top_level(n, k);
        let largest = if top == 0 { 1 } else { choose_u64(n, top - 1) };
        if largest > limit {
            return Err(Error::Resource(format!(
                "Gram system of size {largest} exceeds the limit {limit}"
            )));
        }
        let gram_inverses = (0..top)
            .map(|d| invert_fraction_free(&gram_matrix(n, k, d)))
            .collect::<Result<Vec<_>>>()?;
        Ok(MassEngine {
            n,
            k,
            spectrum,
            gram_inverses,
        })
    }

    pub fn spectrum(&self) -> &KneserSpectrum {
        &self.spectrum
    }

    /// `|P_{U_d} h|^2` for `d < min(k, n-k)`.
    fn projection_norm(&self, f: &Family, d: u32) -> Result<Rational> {
        let degrees: Vec<BigInt> = if d == 0 {
            vec![BigInt::from(f.edge_count())]
        } else {
            f.degree_profile(d)?
                .degrees
                .into_iter()
                .map(BigInt::from)
                .collect()
        };
        Ok(self.gram_inverses[d as usize].quadratic_form(&degrees))
    }

    pub fn masses(&self, f: &Family) -> Result<SpectralMass> {
        ensure_domain!(
            f.n() == self.n && f.k() == self.k,
            "engine built for ({}, {}) but family is ({}, {})",
            self.n,
            self.k,
            f.n(),
            f.k()
        );
        let e = int(f.edge_count());
        let mut masses = Vec::with_capacity(self.gram_inverses.len() + 1);
        let mut previous = Rational::zero();
        for d in 0..self.gram_inverses.len() as u32 {
            let norm = self.projection_norm(f, d)?;
            masses.push(&norm - &previous);
            previous = norm;
        }
        masses.push(&e - &previous);
        let total = masses.iter().sum();
        Ok(SpectralMass {
            masses,
            quad_form: quadratic_form(f),
            total,
        })
    }
}

/// `M[S][T] = C(n - |S u T|, k - |S u T|)` over d-subsets in colex order.
fn gram_matrix(n: u32, k: u32, d: u32) -> Vec<Vec<BigInt>> {
    let sets: Vec<_> = k_subsets(n, d).collect();
    sets.iter()
        .map(|s| {
            sets.iter()
                .map(|t| {
                    let u = (s.mask() | t.mask()).count_ones() as i64;
                    choose(n as i64 - u, k as i64 - u)
                })
                .collect()
        })
        .collect()
}

/// Full eigenspace decomposition of the characteristic vector of `f`.
pub fn eigen_mass_full(f: &Family) -> Result<SpectralMass> {
    MassEngine::new(f.n(), f.k())?.masses(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete, remark_family, star};
    use crate::exact::frac;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn spectrum_formulas() {
        let s = kneser_spectrum(5, 2).unwrap();
        assert_eq!(s.eigenvalues(), ints(&[3, -2, 1]));
        let m: Vec<_> = s.levels.iter().map(|l| l.multiplicity.clone()).collect();
        assert_eq!(m, ints(&[1, 4, 5]));
        let s = kneser_spectrum(6, 3).unwrap();
        assert_eq!(s.eigenvalues(), ints(&[1, -1, 1, -1]));
        let m: Vec<_> = s.levels.iter().map(|l| l.multiplicity.clone()).collect();
        assert_eq!(m, ints(&[1, 5, 9, 5]));
        assert!(kneser_spectrum(3, 4).is_err());
    }

    #[test]
    fn multiplicities_sum() {
        for n in 1..=20u32 {
            for k in 0..=n {
                let s = kneser_spectrum(n, k).unwrap();
                let total: BigInt = s.levels.iter().map(|l| l.multiplicity.clone()).sum();
                assert_eq!(total, choose(n as i64, k as i64), "({n},{k})");
            }
        }
    }

    #[test]
    fn eigenvalue_lower_bound_above_level_one() {
        // lambda_i >= -C(n-k-3, k-3) for i >= 2 and n >= 2k + 1
        for k in 2..=10u32 {
            for n in (2 * k + 1)..=30 {
                let bound = -choose(n as i64 - k as i64 - 3, k as i64 - 3);
                let s = kneser_spectrum(n, k).unwrap();
                for l in s.levels.iter().skip(2) {
                    assert!(l.eigenvalue >= bound, "({n},{k}) level {}", l.j);
                }
            }
        }
    }

    #[test]
    fn quadratic_forms() {
        assert!(quadratic_form(&star(7, 3, 1).unwrap()).is_zero());
        let two = Family::from_lists(6, 3, &[[1, 2, 3], [4, 5, 6]]).unwrap();
        assert_eq!(quadratic_form(&two), BigInt::from(2));
        let c = complete(6, 3).unwrap();
        assert_eq!(disjoint_pairs(&c), BigInt::from(10));
        assert_eq!(quadratic_form(&c), BigInt::from(20));
    }

    #[test]
    fn level_masses_fixtures() {
        let c = level_masses(&complete(7, 3).unwrap()).unwrap();
        assert_eq!((c.f0, c.f1, c.residual), (int(35), int(0), int(0)));
        let s = level_masses(&star(7, 3, 1).unwrap()).unwrap();
        assert_eq!((s.f0, s.f1, s.residual), (frac(45, 7), frac(60, 7), int(0)));
        let r = level_masses(&remark_family()).unwrap();
        assert_eq!((r.f0, r.f1, r.residual), (int(5), int(0), int(5)));
        let degenerate = Family::from_lists(3, 3, &[[1, 2, 3]]).unwrap();
        assert!(level_masses(&degenerate).is_err());
    }

    #[test]
    fn full_masses_fixtures() {
        let r = eigen_mass_full(&remark_family()).unwrap();
        assert_eq!(r.masses, vec![int(5), int(0), int(0), int(5)]);
        let s = eigen_mass_full(&star(7, 3, 1).unwrap()).unwrap();
        assert_eq!(s.masses, vec![frac(45, 7), frac(60, 7), int(0), int(0)]);
        let c = eigen_mass_full(&complete(6, 3).unwrap()).unwrap();
        assert_eq!(c.masses, vec![int(20), int(0), int(0), int(0)]);
        for (f, sp) in [
            (remark_family(), kneser_spectrum(6, 3).unwrap()),
            (star(7, 3, 1).unwrap(), kneser_spectrum(7, 3).unwrap()),
        ] {
            assert!(eigen_mass_full(&f).unwrap().is_consistent(&f, &sp));
        }
    }

    #[test]
    fn full_and_level_masses_agree() {
        let f = Family::from_lists(8, 3, &[[1, 2, 3], [4, 5, 6], [1, 7, 8], [2, 5, 8], [3, 4, 7]])
            .unwrap();
        let full = eigen_mass_full(&f).unwrap();
        let lv = level_masses(&f).unwrap();
        assert_eq!(full.masses[0], lv.f0);
        assert_eq!(full.masses[1], lv.f1);
        let rest: Rational = full.masses[2..].iter().sum();
        assert_eq!(rest, lv.residual);
    }

    #[test]
    fn gram_limit_is_enforced() {
        assert!(matches!(MassEngine::with_limit(9, 4, 10), Err(Error::Resource(_))));
        assert!(MassEngine::with_limit(9, 4, 84).is_ok());
    }

    #[test]
    fn small_n_relative_to_k() {
        // n < 2k: levels stop at n - k
        let f = Family::from_lists(5, 3, &[[1, 2, 3], [3, 4, 5], [1, 2, 5]]).unwrap();
        let sp = kneser_spectrum(5, 3).unwrap();
        assert_eq!(sp.levels.len(), 3);
        let m = eigen_mass_full(&f).unwrap();
        assert!(m.is_consistent(&f, &sp));
    }
}
