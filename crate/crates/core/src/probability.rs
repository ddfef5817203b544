//! Success probability per trial and heralding rate.

use serde::{Deserialize, Serialize};

use crate::error::{Result, domain};
use crate::herald::{HeraldConfig, herald_operator};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialBudget {
    /// Gain of the SPDC source preparing the idler Fock state.
    pub g_prime: f64,
    pub eta_det: f64,
    /// Repetition rate in Hz.
    pub f_rep: f64,
}

impl TrialBudget {
    pub fn new(g_prime: f64, eta_det: f64, f_rep: f64) -> Result<Self> {
        let b = Self { g_prime, eta_det, f_rep };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.g_prime >= 1.0) || !self.g_prime.is_finite() {
            return domain(format!("SPDC gain must be >= 1, got {}", self.g_prime));
        }
        if !(0.0..=1.0).contains(&self.eta_det) {
            return domain(format!("detector efficiency must lie in [0, 1], got {}", self.eta_det));
        }
        if !(self.f_rep >= 0.0) || !self.f_rep.is_finite() {
            return domain(format!("repetition rate must be >= 0, got {}", self.f_rep));
        }
        Ok(())
    }
}

/// P(m) = g′^{−2} ((g′² − 1)/g′²)^m.
pub fn p_fock_spdc(m: usize, g_prime: f64) -> Result<f64> {
    if !(g_prime >= 1.0) || !g_prime.is_finite() {
        return domain(format!("SPDC gain must be >= 1, got {g_prime}"));
    }
    let g2 = g_prime * g_prime;
    Ok(((g2 - 1.0) / g2).powi(m as i32) / g2)
}

/// η_det · P_Fock(m) · P_sv.
pub fn p_trial(config: &HeraldConfig, budget: &TrialBudget) -> Result<f64> {
    budget.validate()?;
    let p_sv = herald_operator(config)?.p_sv;
    Ok(budget.eta_det * p_fock_spdc(config.m, budget.g_prime)? * p_sv)
}

pub fn herald_rate(p_trial: f64, f_rep: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p_trial) || !(f_rep >= 0.0) || !f_rep.is_finite() {
        return domain(format!("invalid probability {p_trial} or rate {f_rep}"));
    }
    Ok(p_trial * f_rep)
}

/// One row of the success-probability table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityRow {
    pub m: usize,
    pub n: usize,
    pub p_fock: f64,
    pub p_sv: f64,
    pub p_trial: f64,
}

pub fn probability_row(config: &HeraldConfig, budget: &TrialBudget) -> Result<ProbabilityRow> {
    budget.validate()?;
    let p_sv = herald_operator(config)?.p_sv;
    let p_fock = p_fock_spdc(config.m, budget.g_prime)?;
    Ok(ProbabilityRow { m: config.m, n: config.n, p_fock, p_sv, p_trial: budget.eta_det * p_fock * p_sv })
}
