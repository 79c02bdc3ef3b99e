//! Classical fixed-step fourth-order Runge–Kutta.

use nalgebra::{DMatrix, SVector};
use num_complex::Complex64;

/// A state that supports `self += a·x`.
pub trait LinearState: Clone {
    fn axpy(&mut self, a: f64, x: &Self);
}

impl<const N: usize> LinearState for SVector<f64, N> {
    fn axpy(&mut self, a: f64, x: &Self) {
        *self += x * a;
    }
}

impl LinearState for DMatrix<Complex64> {
    fn axpy(&mut self, a: f64, x: &Self) {
        self.zip_apply(x, |s, v| *s += v * a);
    }
}

/// One RK4 step of `y' = f(t, y)` from `t` to `t + h`.
pub fn rk4_step<S, F>(f: &F, t: f64, y: &S, h: f64) -> S
where
    S: LinearState,
    F: Fn(f64, &S) -> S,
{
    let k1 = f(t, y);
    let mut tmp = y.clone();
    tmp.axpy(0.5 * h, &k1);
    let k2 = f(t + 0.5 * h, &tmp);
    tmp = y.clone();
    tmp.axpy(0.5 * h, &k2);
    let k3 = f(t + 0.5 * h, &tmp);
    tmp = y.clone();
    tmp.axpy(h, &k3);
    let k4 = f(t + h, &tmp);
    let mut out = y.clone();
    out.axpy(h / 6.0, &k1);
    out.axpy(h / 3.0, &k2);
    out.axpy(h / 3.0, &k3);
    out.axpy(h / 6.0, &k4);
    out
}
