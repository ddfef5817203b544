//! Heralded signal states after an OPA with m idler photons in and n detected.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, domain};
use crate::fock::{
    C64, FockKet, HilbertSpec, TwoModeKet, ZERO, project_idler, two_mode_squeeze_unchecked, with_growing_dim,
};
use crate::states::{cat, coherent, squeezed_vacuum, squeezed_vacuum_xi, sv_parameter};

/// Signal input of the OPA.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InputState {
    Coherent { re: f64, im: f64 },
    SqueezedVacuum { r: f64, theta: f64 },
    Cat { theta: f64, alpha: f64 },
    Explicit { ket: FockKet },
}

impl InputState {
    pub fn sv(r: f64) -> Self {
        Self::SqueezedVacuum { r, theta: 0.0 }
    }

    pub fn coherent(alpha: C64) -> Self {
        Self::Coherent { re: alpha.re, im: alpha.im }
    }

    /// Builds the input at a cutoff of at least `min_dim`, growing until it is leakage-gated.
    fn working_ket(&self, base: HilbertSpec, min_dim: usize) -> Result<FockKet> {
        let start = base.resized(min_dim.max(base.dim()));
        match self {
            Self::Coherent { re, im } => with_growing_dim(start, |s| coherent(s, C64::new(*re, *im))),
            Self::SqueezedVacuum { r, theta } => with_growing_dim(start, |s| squeezed_vacuum(s, *r, *theta)),
            Self::Cat { theta, alpha } => with_growing_dim(start, |s| cat(s, *theta, *alpha)),
            Self::Explicit { ket } => {
                let norm = ket.norm_sqr();
                if (norm - 1.0).abs() > 1e-8 {
                    return domain(format!("explicit input must be normalized, norm² = {norm}"));
                }
                Ok(ket.resized(ket.dim().max(min_dim)))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeraldConfig {
    pub m: usize,
    pub n: usize,
    pub g: f64,
    pub input: InputState,
    pub spec: HilbertSpec,
}

impl HeraldConfig {
    pub fn new(m: usize, n: usize, g: f64, input: InputState, spec: HilbertSpec) -> Self {
        Self { m, n, g, input, spec }
    }

    /// Squeezed-vacuum input with real squeezing r at the default cutoff.
    pub fn sv(m: usize, n: usize, g: f64, r: f64) -> Self {
        Self::new(m, n, g, InputState::sv(r), HilbertSpec::default())
    }

    pub fn with_spec(mut self, spec: HilbertSpec) -> Self {
        self.spec = spec;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.g >= 1.0) || !self.g.is_finite() {
            return domain(format!("OPA gain must be >= 1, got {}", self.g));
        }
        Ok(())
    }

    fn min_working_dim(&self) -> usize {
        self.spec.dim() + self.n + 8
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Route {
    Oracle,
    Operator,
    Polynomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HeraldStatus {
    Heralded,
    /// Every amplitude vanishes identically; `p_sv` is 0 and the ket is the zero vector.
    Forbidden,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeraldResult {
    pub ket: FockKet,
    pub p_sv: f64,
    pub route: Route,
    pub status: HeraldStatus,
}

impl HeraldResult {
    pub fn is_forbidden(&self) -> bool {
        self.status == HeraldStatus::Forbidden
    }

    pub fn dump(&self, config: &HeraldConfig) -> HeraldDump {
        HeraldDump {
            m: config.m,
            n: config.n,
            g: config.g,
            p_sv: self.p_sv,
            dim: self.ket.dim(),
            amps: self.ket.amps().iter().map(|c| [c.re, c.im]).collect(),
            parity: parity_support(&self.ket),
        }
    }
}

/// JSON form of a heralded state; also readable as a plain ket.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeraldDump {
    pub m: usize,
    pub n: usize,
    pub g: f64,
    pub p_sv: f64,
    pub dim: usize,
    pub amps: Vec<[f64; 2]>,
    pub parity: Parity,
}

fn finish(raw: FockKet, spec: HilbertSpec, route: Route) -> Result<HeraldResult> {
    let p_sv = raw.norm_sqr();
    if raw.amps().iter().all(|c| *c == ZERO) {
        return Ok(HeraldResult { ket: FockKet::zero(spec), p_sv: 0.0, route, status: HeraldStatus::Forbidden });
    }
    if !(p_sv >= 1e-300) {
        return Err(Error::Degenerate(format!("heralding probability {p_sv:.3e} underflows")));
    }
    let ket = raw.truncated(spec)?.normalized()?;
    Ok(HeraldResult { ket, p_sv, route, status: HeraldStatus::Heralded })
}

/// G = √(g²−1)/g.
pub fn gain_g(g: f64) -> f64 {
    (g * g - 1.0).sqrt() / g
}

fn ln_fact(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// H(k,m,n) = G^{n−m+2k}/g^{m−k+1} · (−1)^{n−m+k} √(n!m!)/(k!(n−m+k)!(m−k)!), zero when n−m+k < 0.
pub fn herald_coefficient(k: usize, m: usize, n: usize, g: f64) -> f64 {
    if k > m || n + k < m {
        return 0.0;
    }
    let j = n + k - m;
    let pow_g_big = (n + 2 * k - m) as i32;
    let big = gain_g(g);
    let ln_mag =
        0.5 * (ln_fact(n) + ln_fact(m)) - ln_fact(k) - ln_fact(j) - ln_fact(m - k) - ((m - k + 1) as f64) * g.ln();
    let g_part = if pow_g_big == 0 { 1.0 } else { big.powi(pow_g_big) };
    let sign = if j.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * g_part * ln_mag.exp()
}

/// Builds |φ⟩⊗|m⟩, applies the OPA, projects the idler on |n⟩.
pub fn herald_oracle(config: &HeraldConfig) -> Result<HeraldResult> {
    config.validate()?;
    let phi = config.input.working_ket(config.spec, config.min_working_dim())?;
    let idler_spec = config.spec.resized(config.m.max(config.n) + 25);
    let idler = FockKet::basis(idler_spec, config.m)?;
    let two = TwoModeKet::product(&phi, &idler);
    let tau = C64::new(config.g.acosh(), 0.0);
    let out = two_mode_squeeze_unchecked(&two, tau);
    let (raw, _) = project_idler(&out, config.n)?;
    finish(raw, config.spec, Route::Oracle)
}

/// Σ_k H(k,m,n) (a†)^{n−m+k} g^{−a†a} a^k |φ⟩ with the attenuation applied diagonally.
pub fn herald_operator(config: &HeraldConfig) -> Result<HeraldResult> {
    config.validate()?;
    let phi = config.input.working_ket(config.spec, config.min_working_dim())?;
    let g = config.g;
    let mut acc = FockKet::zero(phi.spec());
    let mut lowered = phi.clone();
    for k in 0..=config.m {
        if k > 0 {
            lowered = lowered.lower();
        }
        let h = herald_coefficient(k, config.m, config.n, g);
        if h == 0.0 {
            continue;
        }
        let mut v = lowered.map_diag(|q| g.powi(-(q as i32)));
        for _ in 0..config.n + k - config.m {
            v = v.raise();
        }
        acc = FockKet::from_raw(acc.spec(), acc.amps() + v.amps() * C64::new(h, 0.0));
    }
    finish(acc, config.spec, Route::Operator)
}

/// Catalysis (m = n) as a polynomial in the number operator acting on S(ξ/g²)|0⟩.
pub fn catalysis_state(n: usize, g: f64, r: f64, theta: f64, spec: HilbertSpec) -> Result<HeraldResult> {
    if !(g >= 1.0) || !g.is_finite() {
        return domain(format!("OPA gain must be >= 1, got {g}"));
    }
    let xi = sv_parameter(r, theta);
    let xi_att = xi / (g * g);
    let scale = ((1.0 - xi.norm_sqr()) / (1.0 - xi_att.norm_sqr())).powf(0.25);
    let base = squeezed_vacuum_xi(spec, xi_att)?;
    let coef: Vec<f64> = (0..=n).map(|k| herald_coefficient(k, n, n, g) * g.powi(k as i32) * scale).collect();
    let raw = base.map_diag(|q| {
        let mut falling = 1.0;
        let mut total = 0.0;
        for (k, c) in coef.iter().enumerate() {
            if k > 0 {
                falling *= q as f64 - (k - 1) as f64;
            }
            total += c * falling;
        }
        total
    });
    finish(raw, spec, Route::Polynomial)
}

/// Reruns `f` with a doubled output cutoff after each truncation error.
pub fn herald_auto(config: &HeraldConfig, f: fn(&HeraldConfig) -> Result<HeraldResult>) -> Result<HeraldResult> {
    with_growing_dim(config.spec, |spec| f(&config.clone().with_spec(spec)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

pub fn parity_support(ket: &FockKet) -> Parity {
    let amps = ket.amps();
    let odd_zero = amps.iter().skip(1).step_by(2).all(|c| c.norm() < 1e-10);
    let even_zero = amps.iter().step_by(2).all(|c| c.norm() < 1e-10);
    if odd_zero {
        Parity::Even
    } else if even_zero {
        Parity::Odd
    } else {
        Parity::Mixed
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::ONE;

    fn spec(d: usize) -> HilbertSpec {
        HilbertSpec::new(d).unwrap()
    }

    fn close(a: &FockKet, b: &FockKet, tol: f64) -> bool {
        let d = a.dim().max(b.dim());
        (0..d).all(|n| (a.amp(n) - b.amp(n)).norm() < tol)
    }

    #[test]
    fn vacuum_herald_attenuates_coherent() {
        let alpha = C64::new(1.2, 0.3);
        let g = 1.7;
        let cfg = HeraldConfig::new(0, 0, g, InputState::coherent(alpha), spec(40));
        for f in [herald_oracle, herald_operator] {
            let res = f(&cfg).unwrap();
            let want = coherent(spec(40), alpha / g).unwrap();
            assert!(close(&res.ket, &want, 1e-12));
        }
    }

    #[test]
    fn single_detection_adds_a_photon() {
        let alpha = C64::new(0.9, 0.0);
        let g = 1.4;
        let cfg = HeraldConfig::new(0, 1, g, InputState::coherent(alpha), spec(40));
        let res = herald_oracle(&cfg).unwrap();
        let want = coherent(spec(40), alpha / g).unwrap().raise().normalized().unwrap();
        assert!(close(&res.ket, &want, 1e-12));
    }

    #[test]
    fn identity_opa() {
        let input = squeezed_vacuum(spec(60), 0.5, 0.0).unwrap();
        let cfg = HeraldConfig::new(1, 1, 1.0, InputState::Explicit { ket: input.clone() }, spec(60));
        for f in [herald_oracle, herald_operator] {
            let res = f(&cfg).unwrap();
            assert!((res.p_sv - 1.0).abs() < 1e-12);
            assert!(close(&res.ket, &input, 1e-12));
        }
    }

    #[test]
    fn four_one_keeps_two_terms() {
        let live: Vec<usize> = (0..=4).filter(|&k| herald_coefficient(k, 4, 1, 1.5) != 0.0).collect();
        assert_eq!(live, vec![3, 4]);
    }

    #[test]
    fn routes_agree() {
        for (m, n) in [(1, 2), (2, 0), (4, 1), (3, 3), (0, 5)] {
            let cfg = HeraldConfig::sv(m, n, 1.5, 1.0);
            let a = herald_oracle(&cfg).unwrap();
            let b = herald_operator(&cfg).unwrap();
            assert!(close(&a.ket, &b.ket, 1e-9), "({m},{n})");
            assert!((a.p_sv - b.p_sv).abs() <= 1e-9 * a.p_sv);
        }
    }

    #[test]
    fn catalysis_matches_operator() {
        for (n, g, r) in [(1, 1.5, 0.8), (2, 1.777, -1.3), (3, 2.5, 0.5)] {
            let cfg = HeraldConfig::sv(n, n, g, r).with_spec(spec(80));
            let op = herald_operator(&cfg).unwrap();
            let poly = catalysis_state(n, g, r, 0.0, spec(80)).unwrap();
            assert!(close(&op.ket, &poly.ket, 1e-9));
            assert!((op.p_sv - poly.p_sv).abs() <= 1e-9 * op.p_sv);
            assert_eq!(parity_support(&poly.ket), Parity::Even);
        }
    }

    #[test]
    fn parity_examples() {
        assert_eq!(parity_support(&squeezed_vacuum(spec(100), 1.0, 0.0).unwrap()), Parity::Even);
        let odd = herald_operator(&HeraldConfig::sv(1, 2, 1.5, 1.0)).unwrap();
        assert_eq!(parity_support(&odd.ket), Parity::Odd);
        let even = herald_operator(&HeraldConfig::sv(1, 3, 1.5, 1.0)).unwrap();
        assert_eq!(parity_support(&even.ket), Parity::Even);
        let mixed = FockKet::from_vec(spec(2), vec![ONE, ONE]).unwrap();
        assert_eq!(parity_support(&mixed), Parity::Mixed);
    }

    #[test]
    fn forbidden_herald_is_flagged() {
        let cfg = HeraldConfig::new(2, 0, 1.3, InputState::Explicit { ket: FockKet::vacuum(spec(20)) }, spec(20));
        for f in [herald_oracle, herald_operator] {
            let res = f(&cfg).unwrap();
            assert!(res.is_forbidden());
            assert_eq!(res.p_sv, 0.0);
        }
    }

    #[test]
    fn bad_gain_rejected() {
        assert!(matches!(herald_operator(&HeraldConfig::sv(1, 1, 0.5, 0.3)), Err(Error::Domain(_))));
    }

    #[test]
    fn auto_grows_output() {
        let cfg = HeraldConfig::sv(1, 2, 1.05, 0.74).with_spec(spec(40));
        assert!(matches!(herald_operator(&cfg), Err(Error::Truncation { .. })));
        let res = herald_auto(&cfg, herald_operator).unwrap();
        assert!(res.ket.dim() > 40);
        assert!(res.ket.is_normalized());
    }

    #[test]
    fn dump_reads_back_as_ket() {
        let cfg = HeraldConfig::sv(1, 2, 1.5, 1.0);
        let res = herald_operator(&cfg).unwrap();
        let json = serde_json::to_string(&res.dump(&cfg)).unwrap();
        assert!(json.contains("\"parity\":\"odd\""));
        let back = FockKet::from_json(&json).unwrap();
        assert!(back.is_normalized());
        assert!(close(&back, &res.ket, 1e-15));
    }
}
