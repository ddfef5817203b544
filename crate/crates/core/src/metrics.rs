//! Fidelities, photon statistics and phase-estimation figures of merit.

use serde::{Deserialize, Serialize};

use crate::density::{DensityMatrix, StateRef};
use crate::fock::FockKet;

/// |⟨ψ|φ⟩|²; kets of different cutoffs are compared by zero extension.
pub fn fidelity_pure(psi: &FockKet, phi: &FockKet) -> f64 {
    psi.inner(phi).norm_sqr()
}

/// ⟨φ|ρ|φ⟩.
pub fn fidelity_mixed(rho: &DensityMatrix, phi: &FockKet) -> f64 {
    rho.overlap(phi)
}

pub fn fidelity<'a>(state: impl Into<StateRef<'a>>, target: &FockKet) -> f64 {
    match state.into() {
        StateRef::Pure(k) => fidelity_pure(k, target),
        StateRef::Mixed(r) => fidelity_mixed(r, target),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhotonStats {
    pub mean_n: f64,
    pub var_n: f64,
    /// (var − mean)/mean; `None` for the vacuum.
    pub mandel_q: Option<f64>,
}

pub fn photon_stats<'a>(state: impl Into<StateRef<'a>>) -> PhotonStats {
    let pops = state.into().populations();
    let total: f64 = pops.iter().sum();
    let mean_n: f64 = pops.iter().enumerate().map(|(n, p)| n as f64 * p).sum::<f64>() / total;
    let var_n: f64 =
        (pops.iter().enumerate().map(|(n, p)| (n as f64 - mean_n).powi(2) * p).sum::<f64>() / total).max(0.0);
    let mandel_q = (mean_n > 0.0).then(|| (var_n - mean_n) / mean_n);
    PhotonStats { mean_n, var_n, mandel_q }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QfiReport {
    /// 2 Var(n).
    pub qfi: f64,
    /// N(1 + Q), numerically equal to Var(n).
    pub qfi_mandel: f64,
    /// Mean photon number per arm.
    pub mean_n: f64,
    /// Photons summed over both arms, 2·mean_n.
    pub total_n: f64,
}

impl QfiReport {
    pub fn ratio(&self) -> f64 {
        self.qfi / self.qfi_mandel
    }
}

pub fn qfi_path_symmetric<'a>(state: impl Into<StateRef<'a>>) -> QfiReport {
    let s = photon_stats(state);
    let qfi_mandel = match s.mandel_q {
        Some(q) => s.mean_n * (1.0 + q),
        None => 0.0,
    };
    QfiReport { qfi: 2.0 * s.var_n, qfi_mandel, mean_n: s.mean_n, total_n: 2.0 * s.mean_n }
}

/// (SQL, HL) = (N, N²).
pub fn limit_lines(n: f64) -> (f64, f64) {
    (n, n * n)
}
