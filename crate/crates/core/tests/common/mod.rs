//! Dense floating-point eigenprojection shared by the integration tests.

use ekrlab::exact::{int, to_f64};
use ekrlab::spectral::kneser_spectrum;
use ekrlab::subset::{k_subsets, KSubset};
use ekrlab::Family;
use nalgebra::{DMatrix, DVector, SymmetricEigen};

/// Orthonormal eigenvectors of the Kneser adjacency matrix grouped by level.
pub struct FloatProjector {
    groups: Vec<DMatrix<f64>>,
}

impl FloatProjector {
    pub fn new(n: u32, k: u32) -> Self {
        let sets: Vec<KSubset> = k_subsets(n, k).collect();
        let size = sets.len();
        let adj = DMatrix::from_fn(size, size, |i, j| if sets[i].meets(sets[j]) { 0.0 } else { 1.0 });
        let eig = SymmetricEigen::new(adj);
        let spectrum = kneser_spectrum(n, k).unwrap();
        let targets: Vec<f64> = spectrum.levels.iter().map(|l| to_f64(&int(l.eigenvalue.clone()))).collect();
        let mut cols: Vec<Vec<usize>> = vec![Vec::new(); targets.len()];
        for (c, &val) in eig.eigenvalues.iter().enumerate() {
            let val: f64 = val;
            let j = (0..targets.len())
                .min_by(|&a, &b| (targets[a] - val).abs().total_cmp(&(targets[b] - val).abs()))
                .unwrap();
            assert!((targets[j] - val).abs() < 1e-6, "stray eigenvalue {val}");
            cols[j].push(c);
        }
        for (level, c) in spectrum.levels.iter().zip(&cols) {
            assert_eq!(int(level.multiplicity.clone()), int(c.len() as i64), "multiplicity at level {}", level.j);
        }
        let groups = cols
            .iter()
            .map(|c| DMatrix::from_fn(size, c.len(), |r, q| eig.eigenvectors[(r, c[q])]))
            .collect();
        FloatProjector { groups }
    }

    pub fn masses(&self, f: &Family) -> Vec<f64> {
        let size = self.groups[0].nrows();
        let h = DVector::from_fn(size, |r, _| if f.contains_rank(r as u64) { 1.0 } else { 0.0 });
        self.groups.iter().map(|g| (g.transpose() * &h).norm_squared()).collect()
    }
}
