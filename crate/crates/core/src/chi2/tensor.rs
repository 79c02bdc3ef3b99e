use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

use crate::error::{domain, Result};

const UNIT_TOL: f64 = 1e-9;

/// Rank-3 second-order susceptibility tensor χ_ijk (m/V).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chi2Tensor {
    pub entries: [[[f64; 3]; 3]; 3],
}

impl Chi2Tensor {
    pub fn zero() -> Self {
        Self {
            entries: [[[0.0; 3]; 3]; 3],
        }
    }

    pub fn from_entries(entries: [[[f64; 3]; 3]; 3]) -> Self {
        Self { entries }
    }

    /// Point group 4̄3m (zinc blende, GaAs): the six entries with all-distinct
    /// indices equal `magnitude`, everything else vanishes.
    pub fn zinc_blende(magnitude: f64) -> Self {
        let mut t = Self::zero();
        for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)] {
            t.entries[i][j][k] = magnitude;
        }
        t
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.entries[i][j][k]
    }

    /// Σ_ijk χ_ijk e1_i e2_j e3_k for unit polarization vectors.
    pub fn contract(&self, e1: &Vector3<f64>, e2: &Vector3<f64>, e3: &Vector3<f64>) -> Result<f64> {
        for (name, e) in [("e1", e1), ("e2", e2), ("e3", e3)] {
            if (e.norm() - 1.0).abs() > UNIT_TOL {
                return domain(format!("{name} is not a unit vector (norm {})", e.norm()));
            }
        }
        Ok(self.contract_real(e1, e2, e3))
    }

    pub(crate) fn contract_real(&self, e1: &Vector3<f64>, e2: &Vector3<f64>, e3: &Vector3<f64>) -> f64 {
        let mut acc = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let ij = e1[i] * e2[j];
                for k in 0..3 {
                    acc += self.entries[i][j][k] * ij * e3[k];
                }
            }
        }
        acc
    }

    /// Contraction with complex field vectors; no normalization is required.
    pub fn contract_complex(&self, e1: &[Complex64; 3], e2: &[Complex64; 3], e3: &[Complex64; 3]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (plane, a) in self.entries.iter().zip(e1) {
            for (row, b) in plane.iter().zip(e2) {
                let ab = a * b;
                for (&chi, c) in row.iter().zip(e3) {
                    if chi != 0.0 {
                        acc += ab * c * chi;
                    }
                }
            }
        }
        acc
    }

    /// χ'_ijk = Σ_lmn R_il R_jm R_kn χ_lmn for a proper rotation `r`.
    pub fn rotate(&self, r: &Matrix3<f64>) -> Result<Self> {
        let defect = (r.transpose() * r - Matrix3::identity()).abs().max();
        if defect > UNIT_TOL {
            return domain(format!("matrix is not orthogonal (|RᵀR - I| = {defect:e})"));
        }
        let det = r.determinant();
        if (det - 1.0).abs() > UNIT_TOL {
            return domain(format!("matrix is not a proper rotation (det = {det})"));
        }
        let mut out = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let mut acc = 0.0;
                    for l in 0..3 {
                        for m in 0..3 {
                            for n in 0..3 {
                                acc += r[(i, l)] * r[(j, m)] * r[(k, n)] * self.entries[l][m][n];
                            }
                        }
                    }
                    out.entries[i][j][k] = acc;
                }
            }
        }
        Ok(out)
    }
}

/// Rotation taking unit vector `from` onto unit vector `to` (Rodrigues formula).
pub fn rotation_aligning(from: &Vector3<f64>, to: &Vector3<f64>) -> Matrix3<f64> {
    let a = from.normalize();
    let b = to.normalize();
    let v = a.cross(&b);
    let c = a.dot(&b);
    if v.norm() < 1e-15 {
        if c > 0.0 {
            return Matrix3::identity();
        }
        // antiparallel: half turn about any axis orthogonal to `a`
        let trial = if a.x.abs() < 0.9 { Vector3::x() } else { Vector3::y() };
        let axis = a.cross(&trial).normalize();
        return 2.0 * axis * axis.transpose() - Matrix3::identity();
    }
    let k = v.cross_matrix();
    Matrix3::identity() + k + k * k * (1.0 / (1.0 + c))
}
