//! Analytic field profiles with closed-form overlaps, sampled onto grids.

use num_complex::Complex64;

use super::grid::{FieldGrid, FieldVector};
use crate::error::Result;

fn polarized(pol: [f64; 3], amp: Complex64) -> FieldVector {
    let n = (pol[0] * pol[0] + pol[1] * pol[1] + pol[2] * pol[2]).sqrt();
    [amp * (pol[0] / n), amp * (pol[1] / n), amp * (pol[2] / n)]
}

/// Uniform field with polarization `pol`.
pub fn constant(origin: [f64; 3], spacing: [f64; 3], dims: [usize; 3], pol: [f64; 3]) -> Result<FieldGrid> {
    FieldGrid::sample(origin, spacing, dims, |_| polarized(pol, Complex64::new(1.0, 0.0)))
}

/// Separable standing wave Π_d sin(m_d π (x_d - x0_d)/L_d) over the box
/// starting at `box_origin` with extent `box_len`.
pub fn standing_wave(
    origin: [f64; 3],
    spacing: [f64; 3],
    dims: [usize; 3],
    box_origin: [f64; 3],
    box_len: [f64; 3],
    orders: [u32; 3],
    pol: [f64; 3],
) -> Result<FieldGrid> {
    FieldGrid::sample(origin, spacing, dims, |p| {
        let amp: f64 = (0..3)
            .map(|d| (orders[d] as f64 * std::f64::consts::PI * (p[d] - box_origin[d]) / box_len[d]).sin())
            .product();
        polarized(pol, Complex64::new(amp, 0.0))
    })
}

/// Travelling wave exp(i k·r) with polarization `pol`.
pub fn plane_wave(
    origin: [f64; 3],
    spacing: [f64; 3],
    dims: [usize; 3],
    k: [f64; 3],
    pol: [f64; 3],
) -> Result<FieldGrid> {
    FieldGrid::sample(origin, spacing, dims, |p| {
        let phase = k[0] * p[0] + k[1] * p[1] + k[2] * p[2];
        polarized(pol, Complex64::from_polar(1.0, phase))
    })
}

/// Gaussian envelope exp(-|r - c|²/w²).
pub fn gaussian(
    origin: [f64; 3],
    spacing: [f64; 3],
    dims: [usize; 3],
    centre: [f64; 3],
    waist: f64,
    pol: [f64; 3],
) -> Result<FieldGrid> {
    FieldGrid::sample(origin, spacing, dims, |p| {
        let r2: f64 = (0..3).map(|d| (p[d] - centre[d]).powi(2)).sum();
        polarized(pol, Complex64::new((-r2 / (waist * waist)).exp(), 0.0))
    })
}
