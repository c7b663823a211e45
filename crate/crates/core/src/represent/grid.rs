use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Square `N × N` grid over `[-L, L]²` in the momenta `(p_0, p_1)`.
///
/// Storage is row-major with `p_0` as the slow index. Quadrature is the
/// periodic trapezoid rule, i.e. uniform weight `h²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    n: usize,
    extent: f64,
}

impl Grid {
    pub const MIN_POINTS: usize = 32;

    pub fn new(n: usize, extent: f64) -> Result<Grid> {
        if n < Grid::MIN_POINTS {
            return Err(Error::InvalidGrid(format!("{n} points per axis, need at least {}", Grid::MIN_POINTS)));
        }
        if !(extent.is_finite() && extent > 0.0) {
            return Err(Error::InvalidGrid(format!("extent {extent} must be positive")));
        }
        Ok(Grid { n, extent })
    }

    pub fn points(&self) -> usize {
        self.n
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.extent / (self.n - 1) as f64
    }

    pub fn coordinate(&self, i: usize) -> f64 {
        -self.extent + i as f64 * self.spacing()
    }

    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn weight(&self) -> f64 {
        self.spacing() * self.spacing()
    }

    pub fn inner(&self, a: &[Complex64], b: &[Complex64]) -> Complex64 {
        a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<Complex64>() * self.weight()
    }

    pub fn norm(&self, a: &[Complex64]) -> f64 {
        self.inner(a, a).re.sqrt()
    }
}

/// Parameters of `ψ ∝ exp(-Σ (p_μ - c_μ)²/(2σ_μ²)) · exp(i(q·p + χ p_0 p_1))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianParams {
    pub center: [f64; 2],
    pub width: [f64; 2],
    pub momentum: [f64; 2],
    pub chirp: f64,
}

impl GaussianParams {
    pub fn centered(width: f64) -> GaussianParams {
        GaussianParams { center: [0.0; 2], width: [width; 2], momentum: [0.0; 2], chirp: 0.0 }
    }
}

/// A normalized wave function on a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridState {
    grid: Grid,
    psi: Vec<Complex64>,
    params: Option<GaussianParams>,
}

impl GridState {
    /// Supports are kept this many widths inside the inner 90% of the box.
    pub const SUPPORT_WIDTHS: f64 = 6.0;

    pub fn gaussian(grid: Grid, g: GaussianParams) -> Result<GridState> {
        for ax in 0..2 {
            if !(g.width[ax] > 0.0) {
                return Err(Error::InvalidGrid(format!("width {} must be positive", g.width[ax])));
            }
            let reach = g.center[ax].abs() + GridState::SUPPORT_WIDTHS * g.width[ax];
            if reach > 0.9 * grid.extent() {
                return Err(Error::InvalidGrid(format!(
                    "state reaches {reach:.3} on axis {ax}, beyond 90% of the extent {}",
                    grid.extent()
                )));
            }
        }
        let n = grid.points();
        let mut psi = Vec::with_capacity(grid.len());
        for i0 in 0..n {
            let p0 = grid.coordinate(i0);
            for i1 in 0..n {
                let p1 = grid.coordinate(i1);
                let d0 = (p0 - g.center[0]) / g.width[0];
                let d1 = (p1 - g.center[1]) / g.width[1];
                let phase = g.momentum[0] * p0 + g.momentum[1] * p1 + g.chirp * p0 * p1;
                psi.push(Complex64::from_polar((-(d0 * d0 + d1 * d1) / 2.0).exp(), phase));
            }
        }
        let norm = grid.norm(&psi);
        psi.iter_mut().for_each(|z| *z /= norm);
        Ok(GridState { grid, psi, params: Some(g) })
    }

    /// Wraps raw values without normalizing them.
    pub fn from_values(grid: Grid, psi: Vec<Complex64>) -> Result<GridState> {
        if psi.len() != grid.len() {
            return Err(Error::InvalidGrid(format!("{} values for {} grid points", psi.len(), grid.len())));
        }
        Ok(GridState { grid, psi, params: None })
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.psi
    }

    pub fn params(&self) -> Option<GaussianParams> {
        self.params
    }

    pub fn norm_sq(&self) -> f64 {
        self.grid.inner(&self.psi, &self.psi).re
    }
}

/// How `∂/∂p_μ` is discretized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Differentiation {
    #[default]
    Spectral,
    /// Central differences of order 4, 6 or 8, periodic wrap.
    FiniteDifference(u8),
}

impl fmt::Display for Differentiation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Differentiation::Spectral => f.write_str("spectral"),
            Differentiation::FiniteDifference(o) => write!(f, "fd{o}"),
        }
    }
}

impl FromStr for Differentiation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "spectral" => Ok(Differentiation::Spectral),
            "fd4" => Ok(Differentiation::FiniteDifference(4)),
            "fd6" => Ok(Differentiation::FiniteDifference(6)),
            "fd8" => Ok(Differentiation::FiniteDifference(8)),
            other => Err(Error::InvalidFlag { flag: "diff", value: other.into() }),
        }
    }
}

fn fd_weights(order: u8) -> Result<&'static [f64]> {
    match order {
        4 => Ok(&[2.0 / 3.0, -1.0 / 12.0]),
        6 => Ok(&[3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0]),
        8 => Ok(&[4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0]),
        o => Err(Error::InvalidFlag { flag: "diff", value: format!("fd{o}") }),
    }
}

/// First derivative along one axis of a grid function.
#[derive(Clone)]
pub(crate) struct Differentiator {
    n: usize,
    h: f64,
    kind: Kind,
}

#[derive(Clone)]
enum Kind {
    Spectral { forward: Arc<dyn Fft<f64>>, inverse: Arc<dyn Fft<f64>>, ik: Vec<Complex64> },
    Stencil(&'static [f64]),
}

impl fmt::Debug for Differentiator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Differentiator").field("n", &self.n).field("h", &self.h).finish_non_exhaustive()
    }
}

impl Differentiator {
    pub(crate) fn new(grid: Grid, how: Differentiation) -> Result<Differentiator> {
        let n = grid.points();
        let h = grid.spacing();
        let kind = match how {
            Differentiation::Spectral => {
                let mut planner = FftPlanner::new();
                let period = n as f64 * h;
                let ik = (0..n)
                    .map(|j| {
                        // the unpaired Nyquist mode has no odd derivative
                        if 2 * j == n {
                            return Complex64::new(0.0, 0.0);
                        }
                        let m = if 2 * j < n { j as f64 } else { j as f64 - n as f64 };
                        Complex64::new(0.0, 2.0 * std::f64::consts::PI * m / period / n as f64)
                    })
                    .collect();
                Kind::Spectral { forward: planner.plan_fft_forward(n), inverse: planner.plan_fft_inverse(n), ik }
            }
            Differentiation::FiniteDifference(order) => Kind::Stencil(fd_weights(order)?),
        };
        Ok(Differentiator { n, h, kind })
    }

    fn line(&self, buf: &mut [Complex64], scratch: &mut Vec<Complex64>) {
        match &self.kind {
            Kind::Spectral { forward, inverse, ik } => {
                forward.process(buf);
                buf.iter_mut().zip(ik).for_each(|(z, k)| *z *= k);
                inverse.process(buf);
            }
            Kind::Stencil(w) => {
                scratch.clear();
                scratch.extend_from_slice(buf);
                let n = self.n;
                for (i, out) in buf.iter_mut().enumerate() {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (k, wk) in w.iter().enumerate() {
                        let s = k + 1;
                        acc += (scratch[(i + s) % n] - scratch[(i + n - s) % n]) * wk;
                    }
                    *out = acc / self.h;
                }
            }
        }
    }

    /// `∂ψ/∂p_axis`.
    pub(crate) fn apply(&self, psi: &[Complex64], axis: usize) -> Vec<Complex64> {
        let n = self.n;
        let mut out = psi.to_vec();
        let mut scratch = Vec::with_capacity(n);
        if axis == 1 {
            for row in out.chunks_mut(n) {
                self.line(row, &mut scratch);
            }
        } else {
            let mut col = vec![Complex64::new(0.0, 0.0); n];
            for i1 in 0..n {
                for i0 in 0..n {
                    col[i0] = out[i0 * n + i1];
                }
                self.line(&mut col, &mut scratch);
                for i0 in 0..n {
                    out[i0 * n + i1] = col[i0];
                }
            }
        }
        out
    }
}
