//! Photon loss and dephasing: dρ/dt = κ D[a]ρ + κ_φ D[a†a]ρ with D[A]ρ = 2AρA† − A†Aρ − ρA†A.

use std::io::Write;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::density::{DensityMatrix, StateRef};
use crate::error::{Error, Result, domain};
use crate::fock::{C64, FockKet};
use crate::metrics::fidelity;
use crate::optimize::{ALPHA_RANGE, Bound, GAMMA_RANGE, SearchOptions, refine_target};
use crate::phase_space::{PhaseGrid, complexity, negativity_volume, wigner_map};
use crate::states::TargetSpec;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseParams {
    pub kappa: f64,
    pub kappa_phi: f64,
    pub t: f64,
}

impl NoiseParams {
    pub fn new(kappa: f64, kappa_phi: f64, t: f64) -> Result<Self> {
        let p = Self { kappa, kappa_phi, t };
        p.validate()?;
        Ok(p)
    }

    /// Unit time with the given dimensionless κt and κ_φ t.
    pub fn from_products(kt: f64, kphi_t: f64) -> Result<Self> {
        Self::new(kt, kphi_t, 1.0)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("kappa", self.kappa), ("kappa_phi", self.kappa_phi), ("t", self.t)] {
            if !(v >= 0.0) || !v.is_finite() {
                return domain(format!("{name} must be finite and >= 0, got {v}"));
            }
        }
        Ok(())
    }

    pub fn kt(&self) -> f64 {
        self.kappa * self.t
    }

    pub fn kphi_t(&self) -> f64 {
        self.kappa_phi * self.t
    }

    /// Smallest step count with max(κ, κ_φ)·t/steps ≤ 1e−3.
    pub fn default_steps(&self) -> usize {
        ((self.kappa.max(self.kappa_phi) * self.t / 1e-3) - 1e-9).ceil().max(1.0) as usize
    }
}

fn liouvillian(rho: &DMatrix<C64>, kappa: f64, kappa_phi: f64, out: &mut DMatrix<C64>) {
    let d = rho.nrows();
    for n in 0..d {
        for m in 0..d {
            let mut v = -(kappa * (m + n) as f64 + kappa_phi * ((m as f64) - (n as f64)).powi(2)) * rho[(m, n)];
            if m + 1 < d && n + 1 < d {
                v += 2.0 * kappa * (((m + 1) * (n + 1)) as f64).sqrt() * rho[(m + 1, n + 1)];
            }
            out[(m, n)] = v;
        }
    }
}

/// Fixed-step RK4; `observe` sees the state after every step.
pub fn lindblad_evolve_with(
    rho0: &DensityMatrix,
    params: &NoiseParams,
    steps: usize,
    mut observe: impl FnMut(usize, &DMatrix<C64>),
) -> Result<DensityMatrix> {
    params.validate()?;
    if steps == 0 {
        return domain("steps must be >= 1");
    }
    let (k, kp) = (params.kappa, params.kappa_phi);
    let dt = params.t / steps as f64;
    let d = rho0.dim();
    let mut rho = rho0.matrix().clone();
    if k == 0.0 && kp == 0.0 {
        return Ok(rho0.clone());
    }
    let tr0 = rho0.trace();
    let mut k1 = DMatrix::zeros(d, d);
    let mut k2 = DMatrix::zeros(d, d);
    let mut k3 = DMatrix::zeros(d, d);
    let mut k4 = DMatrix::zeros(d, d);
    let h = C64::new(dt, 0.0);
    for s in 0..steps {
        liouvillian(&rho, k, kp, &mut k1);
        liouvillian(&(&rho + &k1 * (h * 0.5)), k, kp, &mut k2);
        liouvillian(&(&rho + &k2 * (h * 0.5)), k, kp, &mut k3);
        liouvillian(&(&rho + &k3 * h), k, kp, &mut k4);
        rho += (&k1 + &k2 * C64::new(2.0, 0.0) + &k3 * C64::new(2.0, 0.0) + &k4) * (h / 6.0);
        let tr: f64 = rho.diagonal().iter().map(|c| c.re).sum();
        let abs_tr: f64 = rho.diagonal().iter().map(|c| c.re.abs()).sum();
        let drift = (tr - tr0).abs().max(abs_tr - tr0);
        if !(drift <= 1e-6) {
            return Err(Error::Integrator { drift });
        }
        observe(s + 1, &rho);
    }
    let herm = (&rho + rho.adjoint()) * C64::new(0.5, 0.0);
    Ok(DensityMatrix::from_raw(rho0.spec(), herm))
}

pub fn lindblad_evolve(rho0: &DensityMatrix, params: &NoiseParams, steps: usize) -> Result<DensityMatrix> {
    lindblad_evolve_with(rho0, params, steps, |_, _| {})
}

/// Which target parameters are re-fitted at each noise point.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReoptMode {
    /// α stays at the zero-loss optimum.
    #[default]
    GammaOnly,
    AlphaGamma,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepOptions {
    pub reopt: ReoptMode,
    pub grid: PhaseGrid,
    /// Overrides the default step rule when set.
    pub steps: Option<usize>,
    pub search: SearchOptions,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self { reopt: ReoptMode::GammaOnly, grid: PhaseGrid::default(), steps: None, search: SearchOptions::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub kt: f64,
    pub kphi_t: f64,
    pub fidelity: f64,
    pub alpha_opt: f64,
    pub gamma_opt: f64,
    pub negativity: f64,
    pub complexity: f64,
}

pub const CURVE_HEADER: &str = "kt,kphi_t,F,alpha_opt,gamma_opt,negativity,complexity";

impl CurveRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{:.6},{:.6},{:.8},{:.6},{:.6},{:.8},{:.8}",
            self.kt, self.kphi_t, self.fidelity, self.alpha_opt, self.gamma_opt, self.negativity, self.complexity
        )
    }
}

pub fn write_curve_csv(records: &[CurveRecord], w: &mut impl Write) -> Result<()> {
    writeln!(w, "{CURVE_HEADER}")?;
    for r in records {
        writeln!(w, "{}", r.csv_row())?;
    }
    Ok(())
}

/// Re-fits the target to ρ starting from `start`.
pub fn reoptimize<'a>(
    rho: impl Into<StateRef<'a>>,
    start: &TargetSpec,
    mode: ReoptMode,
    search: &SearchOptions,
) -> Result<(f64, f64, f64)> {
    let alpha = match mode {
        ReoptMode::GammaOnly => Bound::fixed("alpha", start.alpha),
        ReoptMode::AlphaGamma => Bound::new("alpha", ALPHA_RANGE.0, ALPHA_RANGE.1),
    };
    let gamma = Bound::new("gamma", GAMMA_RANGE.0, GAMMA_RANGE.1);
    let rep = refine_target(rho, start, alpha, gamma, search)?;
    Ok((rep.best_value, rep.param("alpha"), rep.param("gamma")))
}

/// Evolves the heralded state to every noise point and records fidelity, negativity and complexity.
pub fn robustness_sweep(
    heralded: &FockKet,
    target: &TargetSpec,
    points: &[NoiseParams],
    opts: &SweepOptions,
) -> Result<Vec<CurveRecord>> {
    let rho0 = DensityMatrix::from_ket(heralded);
    points
        .par_iter()
        .map(|p| {
            let steps = opts.steps.unwrap_or_else(|| p.default_steps());
            let rho = lindblad_evolve(&rho0, p, steps)?;
            let (fidelity, alpha_opt, gamma_opt) = reoptimize(&rho, target, opts.reopt, &opts.search)?;
            let negativity = negativity_volume(&wigner_map(&rho, &opts.grid)?)?;
            let complexity = complexity(&rho, &opts.grid)?.complexity;
            Ok(CurveRecord { kt: p.kt(), kphi_t: p.kphi_t(), fidelity, alpha_opt, gamma_opt, negativity, complexity })
        })
        .collect()
}

/// Fidelity to a fixed target along a pure-loss trajectory, one value per κt.
pub fn fixed_target_curve(heralded: &FockKet, target: &FockKet, kts: &[f64]) -> Result<Vec<f64>> {
    let rho0 = DensityMatrix::from_ket(heralded);
    kts.par_iter()
        .map(|&kt| {
            let p = NoiseParams::from_products(kt, 0.0)?;
            Ok(fidelity(&lindblad_evolve(&rho0, &p, p.default_steps())?, target))
        })
        .collect()
}
