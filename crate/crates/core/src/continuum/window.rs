use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// Default number of Simpson panels used for the spatial profile.
pub const DEFAULT_QUADRATURE: usize = 2048;

/// Band-limited window `φ̂(ξ) = ∏_j g(ξ_j)` with the cosine profile
/// `g(t) = cos(π/2 · ν(|t|))`, `ν(s) = s²(3 − 2s)`, supported in `[−1, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Window {
    quadrature: usize,
}

pub fn make_window() -> Window {
    Window {
        quadrature: DEFAULT_QUADRATURE,
    }
}

fn smoothstep(s: f64) -> f64 {
    s * s * (3.0 - 2.0 * s)
}

impl Window {
    /// Window with a custom number of quadrature panels (rounded up to even).
    pub fn with_quadrature(panels: usize) -> Result<Self> {
        if panels < 2 {
            return Err(Error::arg(format!("quadrature needs at least 2 panels, got {panels}")));
        }
        Ok(Self {
            quadrature: panels + panels % 2,
        })
    }

    pub fn quadrature(&self) -> usize {
        self.quadrature
    }

    /// One-dimensional profile `g`.
    pub fn profile(&self, t: f64) -> f64 {
        let a = t.abs();
        if a >= 1.0 {
            0.0
        } else {
            (0.5 * PI * smoothstep(a)).cos()
        }
    }

    /// `φ̂(ξ)`.
    pub fn phi_hat(&self, xi: &[f64]) -> f64 {
        xi.iter().map(|&t| self.profile(t)).product()
    }

    /// `max |g(t−1)² + g(t)² + g(t+1)² − 1|` over `samples` points of `[−1, 1]`.
    pub fn partition_residual(&self, samples: usize) -> f64 {
        (0..samples)
            .map(|k| {
                let t = -1.0 + 2.0 * k as f64 / (samples.max(2) - 1) as f64;
                let s: f64 = [-1.0, 0.0, 1.0].iter().map(|n| self.profile(t + n).powi(2)).sum();
                (s - 1.0).abs()
            })
            .fold(0.0, f64::max)
    }

    /// One-dimensional inverse transform `∫ g(t) e^{2πixt} dt = 2∫_0^1 g(t) cos(2πxt) dt`
    /// by composite Simpson quadrature.
    pub fn profile_spatial(&self, x: f64) -> f64 {
        let n = self.quadrature;
        let step = 1.0 / n as f64;
        let f = |t: f64| self.profile(t) * (2.0 * PI * x * t).cos();
        let mut acc = f(0.0) + f(1.0);
        for k in 1..n {
            let w = if k % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(k as f64 * step);
        }
        2.0 * acc * step / 3.0
    }

    /// `φ(x)`, the inverse Fourier transform of [`Window::phi_hat`].
    pub fn phi_spatial(&self, x: &[f64]) -> f64 {
        x.iter().map(|&t| self.profile_spatial(t)).product()
    }
}
