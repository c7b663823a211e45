//! Grid operators for the `P ⋊ X` phase spaces in 1+1 dimensions.
//!
//! Momenta act by multiplication. Positions are differential operators:
//!
//! - bicrossproduct basis: `x_0 = -iℏ∂_0`, `x_1 = iℏ e^{-p_0/κℏ} ∂_1`
//! - standard basis: `x_1 = iℏ e^{-p_0/2κℏ} ∂_1`,
//!   `x_0 = -iℏ∂_0 - (i/4κ)(p_1∂_1 + ∂_1 p_1)`
//!
//! Both sets are Hermitian under the grid inner product, so the Robertson
//! bound `Δ(a)Δ(b) ≥ ½|⟨[a, b]⟩|` applies state by state.

mod grid;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Element, Generator};
use crate::config::{Basis, Order, SmashConfig};
use crate::error::{Error, Result};
use crate::smash::{derive_table, DerivedTable};

pub use grid::{Differentiation, GaussianParams, Grid, GridState};
use grid::Differentiator;

/// Which phase space is represented; both use the `P ⋊ X` order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    Bicross,
    Standard,
}

impl Case {
    pub const ALL: [Case; 2] = [Case::Bicross, Case::Standard];

    pub fn basis(self) -> Basis {
        match self {
            Case::Bicross => Basis::Bicrossproduct,
            Case::Standard => Basis::Standard,
        }
    }

    pub fn config(self) -> SmashConfig {
        SmashConfig::new(self.basis(), Order::Px)
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::Bicross => "bicross",
            Case::Standard => "standard",
        })
    }
}

impl FromStr for Case {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.parse::<Basis>()? {
            Basis::Bicrossproduct => Ok(Case::Bicross),
            Basis::Standard => Ok(Case::Standard),
        }
    }
}

/// `x_0, x_1, P_0, P_1` and the exponentials on one grid.
#[derive(Debug, Clone)]
pub struct OperatorSet {
    case: Case,
    grid: Grid,
    hbar: f64,
    kappa: f64,
    diff: Differentiator,
    how: Differentiation,
}

/// `κ` may be `f64::INFINITY`, which gives the undeformed operators.
pub fn build_operators(case: Case, grid: Grid, hbar: f64, kappa: f64, how: Differentiation) -> Result<OperatorSet> {
    if !(hbar > 0.0 && hbar.is_finite()) {
        return Err(Error::InvalidGrid(format!("hbar = {hbar} must be positive")));
    }
    if !(kappa > 0.0) {
        return Err(Error::InvalidGrid(format!("kappa = {kappa} must be positive")));
    }
    let exponent = grid.extent() / (kappa * hbar);
    if exponent > f64::MAX.ln() {
        return Err(Error::Overflow(exponent));
    }
    Ok(OperatorSet { case, grid, hbar, kappa, diff: Differentiator::new(grid, how)?, how })
}

impl OperatorSet {
    pub fn case(&self) -> Case {
        self.case
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn differentiation(&self) -> Differentiation {
        self.how
    }

    fn kappa_inv(&self) -> f64 {
        1.0 / self.kappa
    }

    fn each(&self, psi: &[Complex64], f: impl Fn(f64, f64, Complex64) -> Complex64) -> Vec<Complex64> {
        let n = self.grid.points();
        psi.iter()
            .enumerate()
            .map(|(i, z)| f(self.grid.coordinate(i / n), self.grid.coordinate(i % n), *z))
            .collect()
    }

    /// `e^{-r p_0/(κℏ)}` at `p_0`.
    fn exp_factor(&self, r: f64, p0: f64) -> f64 {
        (-r * p0 * self.kappa_inv() / self.hbar).exp()
    }

    pub fn apply_generator(&self, g: Generator, psi: &[Complex64]) -> Result<Vec<Complex64>> {
        let i_hbar = Complex64::new(0.0, self.hbar);
        let out = match g {
            Generator::P(0) => self.each(psi, |p0, _, z| z * p0),
            Generator::P(1) => self.each(psi, |_, p1, z| z * p1),
            Generator::Exp(r) => {
                let r = *r.numer() as f64 / *r.denom() as f64;
                self.each(psi, |p0, _, z| z * self.exp_factor(r, p0))
            }
            Generator::X(0) => {
                let d0 = self.diff.apply(psi, 0);
                match self.case {
                    Case::Bicross => d0.into_iter().map(|z| -i_hbar * z).collect(),
                    Case::Standard => {
                        let d1 = self.diff.apply(psi, 1);
                        let p1psi = self.each(psi, |_, p1, z| z * p1);
                        let d1p1 = self.diff.apply(&p1psi, 1);
                        let c = Complex64::new(0.0, -self.kappa_inv() / 4.0);
                        let n = self.grid.points();
                        (0..psi.len())
                            .map(|i| {
                                let p1 = self.grid.coordinate(i % n);
                                -i_hbar * d0[i] + c * (p1 * d1[i] + d1p1[i])
                            })
                            .collect()
                    }
                }
            }
            Generator::X(1) => {
                let r = if self.case == Case::Bicross { 1.0 } else { 0.5 };
                let d1 = self.diff.apply(psi, 1);
                self.each(&d1, |p0, _, z| i_hbar * self.exp_factor(r, p0) * z)
            }
            other => return Err(Error::Unrepresented(other)),
        };
        Ok(out)
    }

    /// Applies a polynomial; letters act right to left.
    pub fn apply(&self, e: &Element, psi: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut out = vec![Complex64::new(0.0, 0.0); psi.len()];
        for (m, c) in e.terms() {
            let mut v = psi.to_vec();
            for g in m.letters().iter().rev() {
                v = self.apply_generator(*g, &v)?;
            }
            let c = c.to_complex(self.hbar, self.kappa_inv());
            out.iter_mut().zip(&v).for_each(|(o, z)| *o += c * z);
        }
        Ok(out)
    }

    pub fn expectation(&self, e: &Element, state: &GridState) -> Result<Complex64> {
        Ok(self.grid.inner(state.values(), &self.apply(e, state.values())?))
    }
}

fn check_normalized(state: &GridState) -> Result<()> {
    let n = state.norm_sq();
    if (n - 1.0).abs() > 1e-12 {
        return Err(Error::NotNormalized(n));
    }
    Ok(())
}

/// `√(⟨a²⟩ - ⟨a⟩²)` by quadrature, clamped at zero.
pub fn dispersion(ops: &OperatorSet, a: &Element, state: &GridState) -> Result<f64> {
    check_normalized(state)?;
    let psi = state.values();
    let apsi = ops.apply(a, psi)?;
    let aapsi = ops.apply(a, &apsi)?;
    let mean = ops.grid.inner(psi, &apsi).re;
    let second = ops.grid.inner(psi, &aapsi).re;
    Ok((second - mean * mean).max(0.0).sqrt())
}

/// Relative residual of `[a, b] = target` on `state`.
///
/// Normalized by `‖target ψ‖`, or by `‖abψ‖ + ‖baψ‖` when the target vanishes.
pub fn commutator_residual(ops: &OperatorSet, a: &Element, b: &Element, target: &Element, state: &GridState) -> Result<f64> {
    let psi = state.values();
    let ab = ops.apply(a, &ops.apply(b, psi)?)?;
    let ba = ops.apply(b, &ops.apply(a, psi)?)?;
    let c = ops.apply(target, psi)?;
    let diff: Vec<Complex64> = ab.iter().zip(&ba).zip(&c).map(|((x, y), z)| x - y - z).collect();
    let g = ops.grid;
    let scale = if target.is_zero() { g.norm(&ab) + g.norm(&ba) } else { g.norm(&c) };
    if scale == 0.0 {
        return Ok(g.norm(&diff));
    }
    Ok(g.norm(&diff) / scale)
}

/// Generators realized on the grid.
pub fn represented_generators() -> [Generator; 4] {
    [Generator::X(0), Generator::X(1), Generator::P(0), Generator::P(1)]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualEntry {
    pub case: Case,
    pub relation: String,
    pub target: String,
    pub residual: f64,
}

/// Worst residual over `states` of every derived relation among the
/// represented generators, plus `[x_ν, E]`.
pub fn residuals(ops: &OperatorSet, table: &DerivedTable, states: &[GridState]) -> Result<Vec<ResidualEntry>> {
    let gens = represented_generators();
    let mut pairs = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            pairs.push((*a, *b));
        }
    }
    pairs.push((Generator::X(0), Generator::e()));
    pairs.push((Generator::X(1), Generator::e()));
    let mut out = Vec::new();
    for (a, b) in pairs {
        let (ea, eb) = (Element::generator(a), Element::generator(b));
        let target = table.commutator(&ea, &eb)?;
        let mut worst: f64 = 0.0;
        for s in states {
            worst = worst.max(commutator_residual(ops, &ea, &eb, &target, s)?);
        }
        out.push(ResidualEntry {
            case: ops.case,
            relation: format!("[{a},{b}]"),
            target: target.to_string(),
            residual: worst,
        });
    }
    Ok(out)
}

/// A few smooth, well-resolved states for residual checks.
pub fn smooth_states(grid: Grid) -> Result<Vec<GridState>> {
    [
        GaussianParams::centered(1.0),
        GaussianParams { center: [0.4, -0.3], width: [0.9, 1.1], momentum: [0.5, -0.4], chirp: 0.1 },
        GaussianParams { center: [-0.5, 0.6], width: [1.2, 0.9], momentum: [-0.3, 0.6], chirp: -0.15 },
    ]
    .into_iter()
    .map(|p| GridState::gaussian(grid, p))
    .collect()
}

/// The four pairs `(a, b)` bounded in each uncertainty table.
pub fn uncertainty_pairs() -> [(Generator, Generator); 4] {
    [
        (Generator::X(0), Generator::X(1)),
        (Generator::P(1), Generator::X(1)),
        (Generator::P(0), Generator::X(0)),
        (Generator::P(1), Generator::X(0)),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UncertaintyEntry {
    pub case: Case,
    pub pair: String,
    pub kappa: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub pass: bool,
    /// The derived commutator whose expectation bounds the product.
    pub commutator: String,
    pub state: Option<GaussianParams>,
}

/// Relative slack allowed below the bound.
pub const MARGIN_TOLERANCE: f64 = 1e-9;

/// Evaluates every inequality of the case's table on one state.
pub fn check_uncertainty(ops: &OperatorSet, table: &DerivedTable, state: &GridState) -> Result<Vec<UncertaintyEntry>> {
    let mut out = Vec::new();
    for (a, b) in uncertainty_pairs() {
        let (ea, eb) = (Element::generator(a), Element::generator(b));
        let c = table.commutator(&ea, &eb)?;
        let lhs = dispersion(ops, &ea, state)? * dispersion(ops, &eb, state)?;
        let rhs = 0.5 * ops.expectation(&c, state)?.norm();
        let margin = lhs - rhs;
        out.push(UncertaintyEntry {
            case: ops.case,
            pair: format!("{a},{b}"),
            kappa: ops.kappa,
            lhs,
            rhs,
            margin,
            pass: margin >= -MARGIN_TOLERANCE * lhs.max(rhs),
            commutator: c.to_string(),
            state: state.params(),
        });
    }
    Ok(out)
}

/// Parameters of a randomized uncertainty sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    pub cases: Vec<Case>,
    pub kappas: Vec<f64>,
    pub states: usize,
    pub seed: u64,
    pub points: usize,
    pub extent: f64,
    pub hbar: f64,
    pub differentiation: Differentiation,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            cases: Case::ALL.to_vec(),
            kappas: vec![0.5, 1.0, 10.0, 1000.0],
            states: 100,
            seed: 1,
            points: 128,
            extent: 10.0,
            hbar: 1.0,
            differentiation: Differentiation::Spectral,
        }
    }
}

/// Draws a Gaussian well inside the box with moderate phase structure.
pub fn random_params(rng: &mut impl Rng) -> GaussianParams {
    GaussianParams {
        center: [rng.gen_range(-0.5..=0.5), rng.gen_range(-1.0..=1.0)],
        width: [rng.gen_range(0.6..=0.9), rng.gen_range(0.6..=0.9)],
        momentum: [rng.gen_range(-1.5..=1.5), rng.gen_range(-1.5..=1.5)],
        chirp: rng.gen_range(-0.3..=0.3),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub case: Case,
    pub kappa: f64,
    pub checks: usize,
    pub failures: usize,
    /// Smallest `margin / max(lhs, rhs)` seen.
    pub worst_relative_margin: f64,
    /// Largest `|rhs/(ℏ/2) - 1|` over the `(P_1, x_1)` bounds.
    pub bound_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UncertaintyReport {
    pub config: SweepConfig,
    pub summaries: Vec<SweepSummary>,
    pub entries: Vec<UncertaintyEntry>,
}

impl UncertaintyReport {
    pub fn passed(&self) -> bool {
        self.summaries.iter().all(|s| s.failures == 0)
    }

    pub fn to_csv(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Row<'a> {
            case: Case,
            pair: &'a str,
            kappa: f64,
            lhs: f64,
            rhs: f64,
            margin: f64,
            pass: bool,
            center0: f64,
            center1: f64,
            width0: f64,
            width1: f64,
            momentum0: f64,
            momentum1: f64,
            chirp: f64,
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        for e in &self.entries {
            let s = e.state.unwrap_or(GaussianParams::centered(f64::NAN));
            w.serialize(Row {
                case: e.case,
                pair: &e.pair,
                kappa: e.kappa,
                lhs: e.lhs,
                rhs: e.rhs,
                margin: e.margin,
                pass: e.pass,
                center0: s.center[0],
                center1: s.center[1],
                width0: s.width[0],
                width1: s.width[1],
                momentum0: s.momentum[0],
                momentum1: s.momentum[1],
                chirp: s.chirp,
            })
            .map_err(|e| Error::Io(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }
}

impl fmt::Display for UncertaintyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# {} states per case, seed {}, {}x{} grid", self.config.states, self.config.seed, self.config.points, self.config.points)?;
        writeln!(f, "case      kappa      checks  failures  worst-rel-margin  (P1,x1) bound vs hbar/2")?;
        for s in &self.summaries {
            writeln!(
                f,
                "{:<9} {:<10} {:<7} {:<9} {:<17.3e} {:.3e}",
                s.case.to_string(),
                s.kappa,
                s.checks,
                s.failures,
                s.worst_relative_margin,
                s.bound_deviation
            )?;
        }
        for e in self.entries.iter().filter(|e| !e.pass) {
            writeln!(f, "FAIL {} ({}) kappa={}: {} < {}", e.case, e.pair, e.kappa, e.lhs, e.rhs)?;
        }
        Ok(())
    }
}

/// Runs every case and `κ` over the same seeded set of random states.
pub fn sweep(cfg: &SweepConfig) -> Result<UncertaintyReport> {
    let grid = Grid::new(cfg.points, cfg.extent)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let states: Vec<GridState> =
        (0..cfg.states).map(|_| GridState::gaussian(grid, random_params(&mut rng))).collect::<Result<_>>()?;
    let mut summaries = Vec::new();
    let mut entries = Vec::new();
    for &case in &cfg.cases {
        let table = derive_table(case.config())?;
        for &kappa in &cfg.kappas {
            let ops = build_operators(case, grid, cfg.hbar, kappa, cfg.differentiation)?;
            let mut summary = SweepSummary {
                case,
                kappa,
                checks: 0,
                failures: 0,
                worst_relative_margin: f64::INFINITY,
                bound_deviation: 0.0,
            };
            for s in &states {
                for e in check_uncertainty(&ops, &table, s)? {
                    summary.checks += 1;
                    summary.failures += usize::from(!e.pass);
                    let scale = e.lhs.max(e.rhs);
                    if scale > 0.0 {
                        summary.worst_relative_margin = summary.worst_relative_margin.min(e.margin / scale);
                    }
                    if e.pair == "P1,x1" {
                        summary.bound_deviation = summary.bound_deviation.max((e.rhs / (cfg.hbar / 2.0) - 1.0).abs());
                    }
                    entries.push(e);
                }
            }
            summaries.push(summary);
        }
    }
    Ok(UncertaintyReport { config: cfg.clone(), summaries, entries })
}
