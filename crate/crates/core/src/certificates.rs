//! Exact evaluation of the spectral inequality chains behind the minimum-degree
//! EKR theorem and its cross-intersecting analogue.
//!
//! Every comparison involving a square root is decided by sign analysis and
//! squaring in exact rationals. The only floating-point surface is
//! [`SimplexFrame`], used for the standalone simplex-frame bound.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::binom::choose;
use crate::error::{ensure_domain, Result};
use crate::exact::{
    cmp_surd_sum_with_rational, cmp_surd_with_rational, cmp_two_surds_with_surd, frac, int, to_f64,
    to_fraction_string,
};
use crate::family::{are_cross_intersecting, Family};
use crate::spectral::{level_masses, quadratic_form, LevelMasses};
use crate::subset::Vertex;
use crate::Rational;

const FRAME_TOLERANCE: f64 = 1e-12;

/// `n` unit vectors in `R^{n-1}` with pairwise inner products `-1/(n-1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplexFrame {
    n: usize,
    vectors: Vec<Vec<f64>>,
}

impl SimplexFrame {
    /// Normalized `e_i - centroid`, written in the Helmert orthonormal basis of
    /// the hyperplane `sum x = 0`.
    pub fn canonical(n: usize) -> Result<Self> {
        ensure_domain!(n >= 2, "a simplex frame needs n >= 2");
        let scale = (n as f64 / (n as f64 - 1.0)).sqrt();
        let vectors = (1..=n)
            .map(|i| {
                (1..n)
                    .map(|j| {
                        let norm = ((j * (j + 1)) as f64).sqrt();
                        let coord = match i.cmp(&(j + 1)) {
                            Ordering::Less => 1.0,
                            Ordering::Equal => -(j as f64),
                            Ordering::Greater => 0.0,
                        };
                        coord / norm * scale
                    })
                    .collect()
            })
            .collect();
        Self::from_vectors(vectors)
    }

    /// Validates user-supplied frame vectors.
    pub fn from_vectors(vectors: Vec<Vec<f64>>) -> Result<Self> {
        let n = vectors.len();
        ensure_domain!(n >= 2, "a simplex frame needs at least two vectors");
        ensure_domain!(
            vectors.iter().all(|v| v.len() == n - 1),
            "frame vectors must live in dimension n - 1 = {}",
            n - 1
        );
        let target = -1.0 / (n as f64 - 1.0);
        for i in 0..n {
            let norm2 = dot(&vectors[i], &vectors[i]);
            ensure_domain!((norm2 - 1.0).abs() <= FRAME_TOLERANCE, "vector {} is not unit", i + 1);
            for j in i + 1..n {
                let ip = dot(&vectors[i], &vectors[j]);
                ensure_domain!(
                    (ip - target).abs() <= FRAME_TOLERANCE,
                    "vectors {} and {} have inner product {ip}, expected {target}",
                    i + 1,
                    j + 1
                );
            }
        }
        for c in 0..n - 1 {
            let s: f64 = vectors.iter().map(|v| v[c]).sum();
            ensure_domain!(s.abs() <= FRAME_TOLERANCE * n as f64, "frame vectors do not sum to zero");
        }
        Ok(SimplexFrame { n, vectors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `argmin_i <v, u_i>` (1-based, lowest index on ties) and the minimum value.
///
/// The minimum is at most `-|v| / (n - 1)`.
pub fn simplex_min_index(v: &[f64], frame: &SimplexFrame) -> Result<(usize, f64)> {
    ensure_domain!(
        v.len() == frame.n - 1,
        "vector has dimension {} but the frame needs {}",
        v.len(),
        frame.n - 1
    );
    let mut best = (1, dot(v, &frame.vectors[0]));
    for (i, u) in frame.vectors.iter().enumerate().skip(1) {
        let ip = dot(v, u);
        if ip < best.1 {
            best = (i + 1, ip);
        }
    }
    Ok(best)
}

/// Closed-form inner products of the star residual vectors `u_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarFrameReport {
    pub n: u32,
    pub k: u32,
    /// `<u_i, u_i> = (n-k)k/n^2 * C(n,k)`.
    pub norm_sq: Rational,
    /// `<u_i, u_j> = -k(n-k)/(n^2 (n-1)) * C(n,k)`.
    pub cross: Rational,
    /// Both closed forms agree with `<s_i,s_j> - <s_i,v_1><s_j,v_1>`.
    pub matches_gram: bool,
    /// `cross == -norm_sq / (n - 1)`: the `u_i` form a scaled regular simplex.
    pub is_simplex: bool,
}

pub fn star_frame_checks(n: u32, k: u32) -> Result<StarFrameReport> {
    ensure_domain!(k >= 1 && n >= 2 * k + 1, "star_frame_checks needs n >= 2k + 1");
    let (ni, ki) = (n as i64, k as i64);
    let total = int(choose(ni, ki));
    let norm_sq = frac((ni - ki) * ki, ni * ni) * &total;
    let cross = -frac(ki * (ni - ki), ni * ni * (ni - 1)) * &total;
    let star = int(choose(ni - 1, ki - 1));
    let star_sq_over_total = &star * &star / &total;
    let matches_gram =
        norm_sq == &star - &star_sq_over_total && cross == int(choose(ni - 2, ki - 2)) - &star_sq_over_total;
    let is_simplex = cross == -(&norm_sq / int(ni - 1));
    Ok(StarFrameReport {
        n,
        k,
        norm_sq,
        cross,
        matches_gram,
        is_simplex,
    })
}

/// How a checked inequality came out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Strict,
    Equality,
    Violated,
    /// Preconditions for this step were not met.
    NotApplicable,
}

impl Outcome {
    pub fn holds(self) -> bool {
        matches!(self, Outcome::Strict | Outcome::Equality)
    }

    /// From the ordering of `lhs` against `rhs` for a `lhs <= rhs` claim.
    fn from_le(ord: Ordering) -> Self {
        match ord {
            Ordering::Less => Outcome::Strict,
            Ordering::Equal => Outcome::Equality,
            Ordering::Greater => Outcome::Violated,
        }
    }

    fn from_ge(ord: Ordering) -> Self {
        Self::from_le(ord.reverse())
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Strict => "strict",
            Outcome::Equality => "equality",
            Outcome::Violated => "violated",
            Outcome::NotApplicable => "n/a",
        })
    }
}

/// One side of an inequality: an exact rational or a signed square root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Side {
    Exact(Rational),
    /// `offset + coef * sqrt(radicand)`.
    Surd {
        offset: Rational,
        coef: Rational,
        radicand: Rational,
    },
    /// `sum coef_i * sqrt(radicand_i)`.
    SurdSum(Vec<(Rational, Rational)>),
}

impl Side {
    /// Advisory floating-point value for display; never used in verdicts.
    pub fn approx(&self) -> f64 {
        match self {
            Side::Exact(r) => to_f64(r),
            Side::Surd { offset, coef, radicand } => to_f64(offset) + to_f64(coef) * to_f64(radicand).sqrt(),
            Side::SurdSum(terms) => terms.iter().map(|(c, r)| to_f64(c) * to_f64(r).sqrt()).sum(),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Exact(r) => f.write_str(&to_fraction_string(r)),
            Side::Surd { offset, coef, radicand } => {
                if !offset.is_zero() {
                    write!(f, "{} + ", to_fraction_string(offset))?;
                }
                if coef == &int(1) {
                    write!(f, "sqrt({})", to_fraction_string(radicand))
                } else if coef == &int(-1) {
                    write!(f, "-sqrt({})", to_fraction_string(radicand))
                } else {
                    write!(f, "{}*sqrt({})", to_fraction_string(coef), to_fraction_string(radicand))
                }
            }
            Side::SurdSum(terms) => {
                for (i, (coef, radicand)) in terms.iter().enumerate() {
                    let sign = if coef.is_negative() { "-" } else if i > 0 { "+" } else { "" };
                    let mag = coef.abs();
                    let sep = if i > 0 { " " } else { "" };
                    if mag == int(1) {
                        write!(f, "{sep}{sign}{}sqrt({})", sep, to_fraction_string(radicand))?;
                    } else {
                        write!(f, "{sep}{sign}{}{}*sqrt({})", sep, to_fraction_string(&mag), to_fraction_string(radicand))?;
                    }
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        })
    }
}

/// A single evaluated inequality with both sides kept exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: &'static str,
    pub lhs: Side,
    pub relation: Relation,
    pub rhs: Side,
    pub outcome: Outcome,
}

impl Check {
    fn exact(label: &'static str, lhs: Rational, relation: Relation, rhs: Rational) -> Self {
        let ord = lhs.cmp(&rhs);
        let outcome = match relation {
            Relation::Le => Outcome::from_le(ord),
            Relation::Ge => Outcome::from_ge(ord),
            Relation::Eq if ord == Ordering::Equal => Outcome::Equality,
            Relation::Eq => Outcome::Violated,
        };
        Check {
            label,
            lhs: Side::Exact(lhs),
            relation,
            rhs: Side::Exact(rhs),
            outcome,
        }
    }

    fn skipped(label: &'static str, lhs: Side, relation: Relation, rhs: Side) -> Self {
        Check {
            label,
            lhs,
            relation,
            rhs,
            outcome: Outcome::NotApplicable,
        }
    }

    pub fn holds(&self) -> bool {
        self.outcome.holds()
    }
}

/// The vertex witnessing the simplex-frame bound on a family's degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub witness_vertex: Vertex,
    /// `L = min_i deg(i) - k e / n`.
    pub lhs: Rational,
    /// `RHS^2 = C(n,k) k (n-k) / (n^2 (n-1)^2) * F_1`, with `RHS <= 0`.
    pub rhs_squared: Rational,
    pub f1: Rational,
    pub outcome: Outcome,
}

impl WitnessReport {
    pub fn check(&self) -> Check {
        Check {
            label: "simplex-witness",
            lhs: Side::Exact(self.lhs.clone()),
            relation: Relation::Le,
            rhs: Side::Surd {
                offset: Rational::zero(),
                coef: int(-1),
                radicand: self.rhs_squared.clone(),
            },
            outcome: self.outcome,
        }
    }
}

fn witness_from_masses(f: &Family, masses: &LevelMasses) -> WitnessReport {
    let (n, k) = (f.n() as i64, f.k() as i64);
    let mean = frac(k * f.edge_count() as i64, n);
    let (witness_vertex, min_deg) = f
        .vertex_degrees()
        .iter()
        .enumerate()
        .min_by_key(|&(i, &d)| (d, i))
        .map(|(i, &d)| (i as Vertex + 1, d))
        .expect("n >= 1");
    let lhs = int(min_deg) - mean;
    let weight = frac(choose(n, k) * k * (n - k), BigInt::from(n * n * (n - 1) * (n - 1)));
    let rhs_squared = weight * &masses.f1;
    // L <= -sqrt(RHS^2)  <=>  sqrt(RHS^2) <= -L
    let outcome = Outcome::from_le(cmp_surd_with_rational(&int(1), &rhs_squared, &-&lhs));
    WitnessReport {
        witness_vertex,
        lhs,
        rhs_squared,
        f1: masses.f1.clone(),
        outcome,
    }
}

/// Certifies `min_i (deg(i) - k e / n) <= -(1/(n-1)) sqrt(C(n,k) k(n-k)/n^2) sqrt(F_1)`.
///
/// This holds for every family, intersecting or not.
pub fn simplex_witness(f: &Family) -> Result<WitnessReport> {
    ensure_domain!(f.k() >= 2 && f.n() > f.k(), "simplex_witness needs n > k >= 2");
    let masses = level_masses(f)?;
    Ok(witness_from_masses(f, &masses))
}

/// Which side of the threshold gap a family was forced into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dichotomy {
    /// `e <= (n/k) C(n-2,k-2)`.
    AtMostThreshold,
    /// `e >= C(n-1,k-1)`.
    AtLeastStarCount,
    Inconclusive,
}

impl fmt::Display for Dichotomy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dichotomy::AtMostThreshold => "AtMostThreshold",
            Dichotomy::AtLeastStarCount => "AtLeastStarCount",
            Dichotomy::Inconclusive => "Inconclusive",
        })
    }
}

/// Every step of the spectral chain for one intersecting family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EkrCertificate {
    pub n: u32,
    pub k: u32,
    pub e: u64,
    pub min_degree: u64,
    pub masses: LevelMasses,
    /// `(n/k) C(n-2,k-2)`.
    pub threshold: Rational,
    /// `C(n-1,k-1)`.
    pub star_count: BigInt,
    /// Right side of `F_1 >= (n-1)/C(n,k) * e (e - threshold)`.
    pub lower_bound_rhs: Rational,
    /// Right side of `F_1 <= (e - threshold)^2 (n-1)^2 k / ((n-k) C(n,k))`.
    pub upper_bound_rhs: Rational,
    /// Whether `delta_1 >= C(n-2,k-2)`, required to square the witness bound.
    pub degree_condition: bool,
    pub witness: WitnessReport,
    pub dichotomy: Dichotomy,
    pub is_star: bool,
    pub checks: Vec<Check>,
}

impl EkrCertificate {
    pub fn check(&self, label: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.label == label)
    }

    /// True when every applicable step holds.
    pub fn all_hold(&self) -> bool {
        self.checks
            .iter()
            .all(|c| c.outcome != Outcome::Violated)
    }
}

pub fn ekr_certificate(f: &Family) -> Result<EkrCertificate> {
    let (n, k) = (f.n() as i64, f.k() as i64);
    ensure_domain!(k >= 2, "ekr_certificate needs k >= 2");
    ensure_domain!(n >= 2 * k + 1, "ekr_certificate needs n >= 2k + 1, got n = {n}, k = {k}");
    ensure_domain!(f.is_intersecting(), "ekr_certificate needs an intersecting family");

    let masses = level_masses(f)?;
    let e_count = f.edge_count() as u64;
    let e = int(e_count);
    let total = int(choose(n, k));
    let pair_degree = choose(n - 2, k - 2);
    let threshold = frac(n, k) * int(pair_degree.clone());
    let star_count = choose(n - 1, k - 1);
    let min_degree = f.min_vertex_degree();
    let degree_condition = BigInt::from(min_degree) >= pair_degree;
    let gap = &e - &threshold;

    let mut checks = Vec::new();
    checks.push(Check::exact(
        "quadratic-form-zero",
        int(quadratic_form(f)),
        Relation::Eq,
        int(0),
    ));

    let lam0 = int(choose(n - k, k));
    let lam1 = int(choose(n - k - 1, k - 1));
    let spectral_head = &lam0 * &masses.f0 - &lam1 * &masses.f1;
    checks.push(Check::exact(
        "hoffman-eigenvalue-floor",
        int(0),
        Relation::Ge,
        &spectral_head - int(choose(n - k - 3, k - 3)) * &masses.residual,
    ));
    checks.push(Check::exact(
        "hoffman-relaxed",
        int(0),
        Relation::Ge,
        &spectral_head - frac(k - 1, n - k) * &lam0 * &masses.residual,
    ));

    let lower_bound_rhs = frac(n - 1, 1) / &total * &e * &gap;
    checks.push(Check::exact(
        "star-mass-lower",
        masses.f1.clone(),
        Relation::Ge,
        lower_bound_rhs.clone(),
    ));

    let witness = witness_from_masses(f, &masses);
    checks.push(witness.check());

    let upper_bound_rhs = &gap * &gap * int((n - 1) * (n - 1) * k) / (int(n - k) * &total);
    let product = &gap * (&e - int(star_count.clone()));
    if degree_condition {
        checks.push(Check::exact(
            "star-mass-upper",
            masses.f1.clone(),
            Relation::Le,
            upper_bound_rhs.clone(),
        ));
        checks.push(Check::exact("gap-product", product.clone(), Relation::Ge, int(0)));
    } else {
        checks.push(Check::skipped(
            "star-mass-upper",
            Side::Exact(masses.f1.clone()),
            Relation::Le,
            Side::Exact(upper_bound_rhs.clone()),
        ));
        checks.push(Check::skipped(
            "gap-product",
            Side::Exact(product.clone()),
            Relation::Ge,
            Side::Exact(int(0)),
        ));
    }

    let dichotomy = if !degree_condition || product.is_negative() {
        Dichotomy::Inconclusive
    } else if e >= int(star_count.clone()) {
        Dichotomy::AtLeastStarCount
    } else {
        Dichotomy::AtMostThreshold
    };

    Ok(EkrCertificate {
        n: f.n(),
        k: f.k(),
        e: e_count,
        min_degree,
        masses,
        threshold,
        star_count,
        lower_bound_rhs,
        upper_bound_rhs,
        degree_condition,
        witness,
        dichotomy,
        is_star: f.is_star(),
        checks,
    })
}

/// Checks `sqrt((x1-y1)(x2-y2)) <= sqrt(x1 x2) - sqrt(y1 y2)` exactly.
pub fn sqrt_product_inequality_check(
    x1: &Rational,
    y1: &Rational,
    x2: &Rational,
    y2: &Rational,
) -> Result<bool> {
    Ok(sqrt_product_outcome(x1, y1, x2, y2)?.holds())
}

fn sqrt_product_outcome(x1: &Rational, y1: &Rational, x2: &Rational, y2: &Rational) -> Result<Outcome> {
    let zero = Rational::zero();
    ensure_domain!(
        x1 >= y1 && y1 >= &zero && x2 >= y2 && y2 >= &zero,
        "sqrt product inequality needs x1 >= y1 >= 0 and x2 >= y2 >= 0"
    );
    let one = int(1);
    let a = (x1 - y1) * (x2 - y2);
    // sqrt(a) + sqrt(y1 y2) <= sqrt(x1 x2)
    Ok(Outcome::from_le(cmp_two_surds_with_surd(
        &one,
        &a,
        &one,
        &(y1 * y2),
        &one,
        &(x1 * x2),
    )))
}

/// Spectral chain for a cross-intersecting pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCertificate {
    pub n: u32,
    pub k: u32,
    pub b_size: u64,
    pub c_size: u64,
    pub b_min_degree: u64,
    pub c_min_degree: u64,
    /// `F_1` masses of the two families.
    pub b_mass: Rational,
    pub c_mass: Rational,
    pub tail_bound: Check,
    pub ineq10: Check,
    pub product_bound: Check,
}

impl CrossCertificate {
    pub fn ineq10_holds(&self) -> bool {
        self.ineq10.holds()
    }

    pub fn product_bound_holds(&self) -> bool {
        self.product_bound.holds()
    }
}

pub fn cross_certificate(b: &Family, c: &Family) -> Result<CrossCertificate> {
    ensure_domain!(
        are_cross_intersecting(b, c)?,
        "cross_certificate needs cross-intersecting families"
    );
    let (n, k) = (b.n() as i64, b.k() as i64);
    ensure_domain!(k >= 2, "cross_certificate needs k >= 2");
    ensure_domain!(n >= 2 * k + 1, "cross_certificate needs n >= 2k + 1, got n = {n}, k = {k}");

    let mb = level_masses(b)?;
    let mc = level_masses(c)?;
    let total = int(choose(n, k));
    let (bs, cs) = (int(b.edge_count()), int(c.edge_count()));

    // sqrt of the tails above E_1 against |X| - |X|^2/C(n,k) and the E_1 masses
    let x1 = &bs - &bs * &bs / &total;
    let x2 = &cs - &cs * &cs / &total;
    let tail_outcome = sqrt_product_outcome(&x1, &mb.f1, &x2, &mc.f1)?;
    let tail_bound = Check {
        label: "sqrt-product",
        lhs: Side::Surd {
            offset: Rational::zero(),
            coef: int(1),
            radicand: (&x1 - &mb.f1) * (&x2 - &mc.f1),
        },
        relation: Relation::Le,
        rhs: Side::SurdSum(vec![(int(1), &x1 * &x2), (int(-1), &mb.f1 * &mc.f1)]),
        outcome: tail_outcome,
    };

    // sqrt(B C) >= c sqrt(P) (sqrt(P) - t), with P = |B||C|
    let p = &bs * &cs;
    let coef = frac(n - 1, 1) / &total;
    let threshold = frac(n, k) * int(choose(n - 2, k - 2));
    let bc = &mb.f1 * &mc.f1;
    let ord = cmp_surd_sum_with_rational(&int(1), &bc, &(&coef * &threshold), &p, &(&coef * &p));
    let ineq10 = Check {
        label: "cross-star-mass-lower",
        lhs: Side::Surd {
            offset: Rational::zero(),
            coef: int(1),
            radicand: bc,
        },
        relation: Relation::Ge,
        rhs: Side::Surd {
            offset: &coef * &p,
            coef: -(&coef * &threshold),
            radicand: p.clone(),
        },
        outcome: Outcome::from_ge(ord),
    };

    let pair = choose(n - 2, k - 2);
    let product_bound = Check::exact(
        "min-degree-product",
        int(b.min_vertex_degree()) * int(c.min_vertex_degree()),
        Relation::Le,
        int(&pair * &pair),
    );

    Ok(CrossCertificate {
        n: b.n(),
        k: b.k(),
        b_size: b.edge_count() as u64,
        c_size: c.edge_count() as u64,
        b_min_degree: b.min_vertex_degree(),
        c_min_degree: c.min_vertex_degree(),
        b_mass: mb.f1,
        c_mass: mc.f1,
        tail_bound,
        ineq10,
        product_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete, hilton_milner, remark_family, star};

    #[test]
    fn frame_example_in_the_plane() {
        let h = 3f64.sqrt() / 2.0;
        let frame = SimplexFrame::from_vectors(vec![vec![1.0, 0.0], vec![-0.5, h], vec![-0.5, -h]]).unwrap();
        let (i, v) = simplex_min_index(&[1.0, 0.0], &frame).unwrap();
        assert_eq!(i, 2);
        assert!((v + 0.5).abs() < 1e-15);
        let (_, zero) = simplex_min_index(&[0.0, 0.0], &frame).unwrap();
        assert_eq!(zero, 0.0);
        assert!(simplex_min_index(&[1.0], &frame).is_err());
    }

    #[test]
    fn canonical_frames_are_valid() {
        for n in 2..=20 {
            let f = SimplexFrame::canonical(n).unwrap();
            assert_eq!(f.vectors().len(), n);
        }
        assert!(SimplexFrame::from_vectors(vec![vec![1.0], vec![0.5]]).is_err());
    }

    #[test]
    fn star_frame_closed_forms() {
        let r = star_frame_checks(7, 3).unwrap();
        assert_eq!(r.norm_sq, frac(60, 7));
        assert_eq!(r.cross, frac(-10, 7));
        let r = star_frame_checks(9, 4).unwrap();
        assert_eq!(r.norm_sq, frac(280, 9));
        assert_eq!(r.cross, frac(-35, 9));
        for k in 1..=9u32 {
            for n in (2 * k + 1)..=30 {
                let r = star_frame_checks(n, k).unwrap();
                assert!(r.is_simplex && r.matches_gram, "({n},{k})");
            }
        }
        assert!(star_frame_checks(6, 3).is_err());
    }

    #[test]
    fn witness_fixtures() {
        let w = simplex_witness(&star(7, 3, 1).unwrap()).unwrap();
        assert_eq!(w.lhs, frac(-10, 7));
        assert_eq!(w.rhs_squared, frac(100, 49));
        assert_eq!(w.outcome, Outcome::Equality);
        assert_eq!(w.witness_vertex, 2);
        let w = simplex_witness(&remark_family()).unwrap();
        assert_eq!((w.lhs.clone(), w.f1.clone()), (int(0), int(0)));
        assert_eq!(w.outcome, Outcome::Equality);
        let w = simplex_witness(&complete(6, 3).unwrap()).unwrap();
        assert_eq!(w.lhs, int(0));
        assert_eq!(w.outcome, Outcome::Equality);
    }

    #[test]
    fn ekr_star_certificate() {
        let c = ekr_certificate(&star(7, 3, 1).unwrap()).unwrap();
        assert_eq!(c.dichotomy, Dichotomy::AtLeastStarCount);
        assert!(c.is_star);
        assert_eq!(c.lower_bound_rhs, frac(60, 7));
        assert_eq!(c.check("star-mass-lower").unwrap().outcome, Outcome::Equality);
        assert_eq!(c.masses.f1, frac(60, 7));
        assert!(c.all_hold());
        let c = ekr_certificate(&star(9, 4, 1).unwrap()).unwrap();
        assert_eq!(c.dichotomy, Dichotomy::AtLeastStarCount);
        assert!(c.checks.iter().all(Check::holds), "{:?}", c.checks);
    }

    #[test]
    fn ekr_rejects_out_of_range() {
        assert!(ekr_certificate(&remark_family()).is_err());
        let two = Family::from_lists(7, 3, &[[1, 2, 3], [4, 5, 6]]).unwrap();
        assert!(ekr_certificate(&two).is_err());
    }

    #[test]
    fn ekr_below_degree_condition_is_inconclusive() {
        let hm = hilton_milner(7, 3).unwrap();
        let c = ekr_certificate(&hm).unwrap();
        assert!(!c.degree_condition);
        assert_eq!(c.dichotomy, Dichotomy::Inconclusive);
        assert_eq!(c.check("star-mass-upper").unwrap().outcome, Outcome::NotApplicable);
        assert!(c.check("star-mass-lower").unwrap().holds());
        assert!(c.witness.outcome.holds());
    }

    #[test]
    fn sqrt_product_examples() {
        assert!(sqrt_product_inequality_check(&int(4), &int(1), &int(9), &int(1)).unwrap());
        assert_eq!(
            sqrt_product_outcome(&int(4), &int(1), &int(9), &int(1)).unwrap(),
            Outcome::Strict
        );
        assert_eq!(
            sqrt_product_outcome(&frac(7, 3), &frac(7, 3), &int(5), &int(5)).unwrap(),
            Outcome::Equality
        );
        assert_eq!(
            sqrt_product_outcome(&int(1), &int(0), &int(1), &int(0)).unwrap(),
            Outcome::Equality
        );
        assert!(sqrt_product_inequality_check(&int(1), &int(2), &int(1), &int(0)).is_err());
    }

    #[test]
    fn cross_fixtures() {
        let s = star(7, 3, 1).unwrap();
        let c = cross_certificate(&s, &s).unwrap();
        assert_eq!(c.product_bound.lhs, Side::Exact(int(25)));
        assert_eq!(c.product_bound.outcome, Outcome::Equality);
        assert_eq!(c.ineq10.outcome, Outcome::Equality);

        let pair = Family::from_edges(
            7,
            3,
            crate::subset::k_subsets(7, 3).filter(|e| e.contains(1) && e.contains(2)),
        )
        .unwrap();
        let c = cross_certificate(&s, &pair).unwrap();
        assert_eq!(c.c_min_degree, 1);
        assert!(c.product_bound_holds() && c.ineq10_holds());

        let hm = hilton_milner(7, 3).unwrap();
        let c = cross_certificate(&hm, &hm).unwrap();
        assert_eq!(c.product_bound.lhs, Side::Exact(int(9)));
        assert!(c.product_bound_holds() && c.ineq10_holds() && c.tail_bound.holds());
    }

    #[test]
    fn cross_preconditions() {
        let b = Family::from_lists(7, 3, &[[1, 2, 3]]).unwrap();
        let c = Family::from_lists(7, 3, &[[4, 5, 6]]).unwrap();
        assert!(cross_certificate(&b, &c).is_err());
        let r = remark_family();
        assert!(cross_certificate(&r, &r).is_err());
    }
}
