//! Input and target state families.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, domain};
use crate::fock::{C64, FockKet, HilbertSpec, ONE, ZERO, squeeze_ket, with_growing_dim};

fn pad_dim(d: usize) -> usize {
    d + (d / 2).max(40)
}

/// e^{−|α|²/2} αⁿ/√n! for n < dim, phases untouched.
pub(crate) fn coherent_amps(dim: usize, alpha: C64) -> DVector<C64> {
    let mut v = DVector::zeros(dim);
    v[0] = C64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    for n in 1..dim {
        v[n] = v[n - 1] * alpha / (n as f64).sqrt();
    }
    v
}

pub fn coherent(spec: HilbertSpec, alpha: C64) -> Result<FockKet> {
    if !alpha.re.is_finite() || !alpha.im.is_finite() {
        return domain("coherent amplitude must be finite");
    }
    FockKet::from_raw(spec, coherent_amps(spec.dim(), alpha)).gated()?.normalized()
}

/// Squeezed-vacuum amplitudes for ξ = e^{iθ} tanh r without gating.
pub(crate) fn sv_amps(dim: usize, xi: C64) -> DVector<C64> {
    let mut v = DVector::zeros(dim);
    v[0] = C64::new((1.0 - xi.norm_sqr()).powf(0.25), 0.0);
    let mut n = 0;
    while 2 * n + 2 < dim {
        let ratio = (((2 * n + 1) * (2 * n + 2)) as f64).sqrt() / (2 * (n + 1)) as f64;
        v[2 * n + 2] = v[2 * n] * (-xi) * ratio;
        n += 1;
    }
    v
}

pub fn sv_parameter(r: f64, theta: f64) -> C64 {
    C64::from_polar(r.tanh(), theta)
}

pub fn squeezed_vacuum(spec: HilbertSpec, r: f64, theta: f64) -> Result<FockKet> {
    if !r.is_finite() || !theta.is_finite() {
        return domain("squeezing parameters must be finite");
    }
    FockKet::from_raw(spec, sv_amps(spec.dim(), sv_parameter(r, theta))).gated()?.normalized()
}

/// Squeezed vacuum with parameter ξ directly, |ξ| < 1.
pub fn squeezed_vacuum_xi(spec: HilbertSpec, xi: C64) -> Result<FockKet> {
    if !(xi.norm() < 1.0) {
        return domain(format!("|xi| must be below 1, got {}", xi.norm()));
    }
    FockKet::from_raw(spec, sv_amps(spec.dim(), xi)).gated()?.normalized()
}

/// Squeezing level in dB for squeezing parameter r.
pub fn squeezing_db(r: f64) -> f64 {
    -20.0 * (-r.abs()).exp().log10()
}

pub(crate) fn cat_amps(dim: usize, theta: f64, alpha: f64) -> DVector<C64> {
    let base = coherent_amps(dim, C64::new(alpha, 0.0));
    let phase = C64::from_polar(1.0, theta);
    let even = (theta.rem_euclid(2.0 * PI)).abs() < 1e-15;
    let odd = (theta.rem_euclid(2.0 * PI) - PI).abs() < 1e-15;
    DVector::from_iterator(
        dim,
        base.iter().enumerate().map(|(n, c)| {
            let w = if even {
                if n % 2 == 0 { C64::new(2.0, 0.0) } else { ZERO }
            } else if odd {
                if n % 2 == 1 { C64::new(2.0, 0.0) } else { ZERO }
            } else if n % 2 == 0 {
                ONE + phase
            } else {
                ONE - phase
            };
            c * w
        }),
    )
}

/// (|α⟩ + e^{iθ}|−α⟩)/√N_θ with N_θ = 2(1 + e^{−2α²} cos θ).
pub fn cat(spec: HilbertSpec, theta: f64, alpha: f64) -> Result<FockKet> {
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return domain(format!("cat amplitude must be finite and >= 0, got {alpha}"));
    }
    let n_theta = 2.0 * (1.0 + (-2.0 * alpha * alpha).exp() * theta.cos());
    if !(n_theta > 1e-300) {
        return Err(Error::Degenerate(format!("cat norm vanishes at theta={theta}, alpha={alpha}")));
    }
    let v = cat_amps(spec.dim(), theta, alpha) / C64::new(n_theta.sqrt(), 0.0);
    FockKet::from_raw(spec, v).gated()?.normalized()
}

/// Normalized S(γ)|Cat_{θ,α}⟩.
pub fn squeezed_cat(spec: HilbertSpec, gamma: f64, theta: f64, alpha: f64) -> Result<FockKet> {
    let work = spec.resized(pad_dim(spec.dim()));
    let c = cat(work, theta, alpha)?;
    let s = squeeze_ket(&c, C64::new(gamma, 0.0));
    s.truncated(spec)?.normalized()
}

/// Legendre polynomial Pₙ(x) by the three-term recurrence.
pub fn legendre(n: usize, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let (mut p0, mut p1) = (1.0, x);
    for k in 1..n {
        let p2 = ((2 * k + 1) as f64 * x * p1 - k as f64 * p0) / (k + 1) as f64;
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// Mₙ(|ξ|) = n!(1−|ξ|²)^{−n/2} Pₙ((1−|ξ|²)^{−1/2}), the squared norm of a†ⁿ|ξ⟩.
pub fn photon_added_norm(n: usize, xi_abs: f64) -> f64 {
    let s = 1.0 - xi_abs * xi_abs;
    let fact: f64 = (1..=n).map(|k| k as f64).product();
    fact * s.powf(-(n as f64) / 2.0) * legendre(n, s.powf(-0.5))
}

/// a†ⁿ|ξ⟩/√Mₙ.
pub fn photon_added_sv(spec: HilbertSpec, n_add: usize, r: f64, theta: f64) -> Result<FockKet> {
    let xi = sv_parameter(r, theta);
    let work = spec.resized(pad_dim(spec.dim()) + n_add);
    let mut k = FockKet::from_raw(work, sv_amps(work.dim(), xi)).gated()?;
    for _ in 0..n_add {
        k = k.raise();
    }
    let k = k.scaled(C64::new(photon_added_norm(n_add, xi.norm()).powf(-0.5), 0.0));
    k.truncated(spec)?.gated()?.normalized()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ladder {
    Lower,
    Raise,
}

/// Product of ladder operators, stored left to right as written.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OpWord(Vec<(Ladder, u32)>);

impl OpWord {
    pub fn new(factors: Vec<(Ladder, u32)>) -> Self {
        Self(factors.into_iter().filter(|f| f.1 > 0).collect())
    }

    pub fn factors(&self) -> &[(Ladder, u32)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn raises(&self) -> usize {
        self.0.iter().filter(|f| f.0 == Ladder::Raise).map(|f| f.1 as usize).sum()
    }

    /// Applies the word to a vector, rightmost factor first, without normalizing.
    pub fn act(&self, ket: &FockKet) -> FockKet {
        let mut k = ket.clone();
        for &(op, p) in self.0.iter().rev() {
            for _ in 0..p {
                k = match op {
                    Ladder::Lower => k.lower(),
                    Ladder::Raise => k.raise(),
                };
            }
        }
        k
    }
}

impl FromStr for OpWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        for tok in s.split_whitespace() {
            let (op, rest) = if let Some(r) = tok.strip_prefix("adag") {
                (Ladder::Raise, r)
            } else if let Some(r) = tok.strip_prefix('a') {
                (Ladder::Lower, r)
            } else {
                return domain(format!("unknown operator token {tok:?}"));
            };
            let p = if rest.is_empty() {
                1
            } else {
                rest.parse::<u32>().map_err(|_| Error::Domain(format!("bad power in {tok:?}")))?
            };
            out.push((op, p));
        }
        Ok(Self::new(out))
    }
}

impl fmt::Display for OpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self
            .0
            .iter()
            .map(|&(op, p)| {
                let name = if op == Ladder::Raise { "adag" } else { "a" };
                if p == 1 { name.to_string() } else { format!("{name}{p}") }
            })
            .collect();
        f.write_str(&toks.join(" "))
    }
}

impl Serialize for OpWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for OpWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Normalized word·ket; the word acts in a padded space so raising is exact.
pub fn apply_op_word(ket: &FockKet, word: &OpWord) -> Result<FockKet> {
    if word.is_empty() {
        return Ok(ket.clone());
    }
    let padded = ket.resized(ket.dim() + word.raises());
    let out = word.act(&padded);
    if !(out.norm_sqr() > 1e-300) {
        return Err(Error::Degenerate(format!("operator word {word} annihilates the state")));
    }
    out.truncated(ket.spec())?.normalized()
}

/// ⟨n|D(β)S(r)|0⟩ for real β and real r, by the Hermite recurrence.
fn displaced_squeezed_amps(dim: usize, beta: f64, r: f64) -> DVector<f64> {
    let t = r.tanh();
    let mut v = DVector::zeros(dim);
    let c0 = r.cosh().powf(-0.5) * (-0.5 * beta * beta * (1.0 + t)).exp();
    let b = beta * (1.0 + t);
    let mut h_prev = 1.0;
    let mut h = b;
    v[0] = c0;
    if dim > 1 {
        v[1] = c0 * h;
    }
    for n in 1..dim.saturating_sub(1) {
        let next = (b * h - t * (n as f64).sqrt() * h_prev) / ((n + 1) as f64).sqrt();
        h_prev = h;
        h = next;
        v[n + 1] = c0 * h;
    }
    v
}

/// Finite-energy GKP codeword: Gaussian peaks of width Δ at x = (2s + bit)√π, envelope e^{−πΔ²(2s+bit)²/2}.
pub fn gkp_logical(spec: HilbertSpec, bit: u8, delta: f64) -> Result<FockKet> {
    if bit > 1 {
        return domain(format!("GKP bit must be 0 or 1, got {bit}"));
    }
    if !(delta > 0.0) || !delta.is_finite() {
        return domain(format!("GKP width must be positive, got {delta}"));
    }
    let r = -delta.ln();
    let sqrt_pi = PI.sqrt();
    let mut acc = DVector::<f64>::zeros(spec.dim());
    let mut s: i64 = 0;
    loop {
        let mut any = false;
        for sign in [1i64, -1] {
            if s == 0 && sign == -1 {
                continue;
            }
            let j = (2 * sign * s + bit as i64) as f64;
            let w = (-0.5 * PI * delta * delta * j * j).exp();
            if w < 1e-12 {
                continue;
            }
            any = true;
            let beta = j * sqrt_pi / 2f64.sqrt();
            acc += displaced_squeezed_amps(spec.dim(), beta, r) * w;
        }
        if !any {
            break;
        }
        s += 1;
    }
    let v = acc.map(|x| C64::new(x, 0.0));
    FockKet::from_raw(spec, v).gated()?.normalized()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TargetFamily {
    #[serde(alias = "squeezed_cat")]
    SqueezedCat,
    #[serde(alias = "photon_op_on_squeezed_cat")]
    PhotonOpOnSqueezedCat,
    #[serde(rename = "GKPLogical", alias = "gkp_logical", alias = "GkpLogical")]
    GkpLogical,
}

fn default_delta() -> f64 {
    0.37
}

/// A target state description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TargetSpec {
    pub family: TargetFamily,
    #[serde(default)]
    pub theta: f64,
    #[serde(default)]
    pub alpha: f64,
    #[serde(default)]
    pub gamma: f64,
    #[serde(default)]
    pub op_word: OpWord,
    #[serde(default)]
    pub bit: u8,
    #[serde(default = "default_delta")]
    pub delta: f64,
}

impl TargetSpec {
    pub fn squeezed_cat(theta: f64, alpha: f64, gamma: f64) -> Self {
        Self {
            family: TargetFamily::SqueezedCat,
            theta,
            alpha,
            gamma,
            op_word: OpWord::default(),
            bit: 0,
            delta: default_delta(),
        }
    }

    pub fn photon_op(word: OpWord, theta: f64, alpha: f64, gamma: f64) -> Self {
        Self { family: TargetFamily::PhotonOpOnSqueezedCat, op_word: word, ..Self::squeezed_cat(theta, alpha, gamma) }
    }

    pub fn gkp(bit: u8, delta: f64) -> Self {
        Self { family: TargetFamily::GkpLogical, bit, delta, ..Self::squeezed_cat(0.0, 0.0, 0.0) }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha >= 0.0) {
            return domain(format!("target alpha must be >= 0, got {}", self.alpha));
        }
        if !self.op_word.is_empty() && self.family != TargetFamily::PhotonOpOnSqueezedCat {
            return domain("operator words are only allowed on PhotonOpOnSqueezedCat targets");
        }
        if self.family == TargetFamily::GkpLogical && !(self.delta > 0.0) {
            return domain("GKP width must be positive");
        }
        Ok(())
    }

    /// Builds the target at exactly `spec`.
    pub fn build(&self, spec: HilbertSpec) -> Result<FockKet> {
        self.validate()?;
        match self.family {
            TargetFamily::SqueezedCat => squeezed_cat(spec, self.gamma, self.theta, self.alpha),
            TargetFamily::PhotonOpOnSqueezedCat => {
                let work = spec.resized(spec.dim() + self.op_word.raises());
                let base = squeezed_cat(work, self.gamma, self.theta, self.alpha)?;
                let out = self.op_word.act(&base);
                if !(out.norm_sqr() > 1e-300) {
                    return Err(Error::Degenerate(format!("operator word {} annihilates the target", self.op_word)));
                }
                out.truncated(spec)?.normalized()
            }
            TargetFamily::GkpLogical => gkp_logical(spec, self.bit, self.delta),
        }
    }

    /// Builds the target, doubling the cutoff from `spec` until truncation leakage is acceptable.
    pub fn build_auto(&self, spec: HilbertSpec) -> Result<FockKet> {
        with_growing_dim(spec, |s| self.build(s))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let t: Self = serde_json::from_str(s)?;
        t.validate()?;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{ladder, single_mode_squeeze};
    use approx::assert_relative_eq;

    fn spec(d: usize) -> HilbertSpec {
        HilbertSpec::new(d).unwrap()
    }

    #[test]
    fn coherent_basics() {
        let v = coherent(spec(10), ZERO).unwrap();
        assert_eq!(v, FockKet::vacuum(spec(10)));
        let c = coherent(spec(40), ONE).unwrap();
        assert_relative_eq!((c.amp(1) / c.amp(0)).re, 1.0, epsilon = 1e-14);
        let s = spec(60);
        let c = coherent(s, C64::new(2.0, 0.0)).unwrap();
        let (a, _) = ladder(s);
        assert!((c.expect(&a).unwrap() - C64::new(2.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn sv_basics() {
        assert_eq!(squeezed_vacuum(spec(10), 0.0, 0.0).unwrap(), FockKet::vacuum(spec(10)));
        let s = spec(100);
        let v = squeezed_vacuum(s, 1.0, 0.0).unwrap();
        let n = v.expect(&crate::fock::FockOperator::number(s)).unwrap().re;
        assert_relative_eq!(n, 1f64.sinh().powi(2), epsilon = 1e-9);
        assert!((0..50).all(|k| v.amp(2 * k + 1) == ZERO));
        assert_relative_eq!(squeezing_db(1.0), 8.685889638, epsilon = 1e-8);
    }

    #[test]
    fn sv_matches_squeeze_operator() {
        let s = spec(80);
        let z = C64::new(0.7, 0.0) * C64::from_polar(1.0, 0.4);
        let from_op = single_mode_squeeze(s, z).unwrap().apply(&FockKet::vacuum(s)).unwrap();
        let direct = squeezed_vacuum(s, 0.7, 0.4).unwrap();
        for n in 0..80 {
            assert!((from_op.amp(n) - direct.amp(n)).norm() < 1e-10);
        }
    }

    #[test]
    fn attenuated_sv_is_sv() {
        let s = spec(120);
        let xi = sv_parameter(0.9, 0.0);
        let v = squeezed_vacuum(s, 0.9, 0.0).unwrap();
        let g: f64 = 1.6;
        let att = crate::fock::attenuator(s, g).unwrap().apply(&v).unwrap().normalized().unwrap();
        let want = squeezed_vacuum_xi(s, xi / (g * g)).unwrap();
        for n in 0..120 {
            assert!((att.amp(n) - want.amp(n)).norm() < 1e-12);
        }
    }

    #[test]
    fn cat_parities() {
        let s = spec(40);
        assert_eq!(cat(s, 0.0, 0.0).unwrap(), FockKet::vacuum(s));
        assert!(matches!(cat(s, PI, 0.0), Err(Error::Degenerate(_))));
        let odd = cat(s, PI, 1.0).unwrap();
        assert!((0..20).all(|k| odd.amp(2 * k) == ZERO));
        let n_pi = 2.0 * (1.0 - (-2.0f64).exp());
        let c1 = coherent_amps(40, ONE)[1].re;
        assert_relative_eq!(odd.amp(1).re, 2.0 * c1 / n_pi.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn squeezed_cat_reduces_and_keeps_parity() {
        let s = spec(60);
        let c = cat(s, PI, 1.3).unwrap();
        let sc = squeezed_cat(s, 0.0, PI, 1.3).unwrap();
        assert!((c.amps() - sc.amps()).norm() < 1e-12);
        for g in [0.2, 0.5, 0.9] {
            let sc = squeezed_cat(spec(120), g, PI, 1.795).unwrap();
            assert!((0..60).all(|k| sc.amp(2 * k) == ZERO));
        }
    }

    #[test]
    fn squeezed_cat_matches_operator_route() {
        let s = spec(160);
        let op = single_mode_squeeze(s, C64::new(0.706, 0.0)).unwrap();
        let want = op.apply(&cat(s, PI, 1.795).unwrap()).unwrap().normalized().unwrap();
        let got = squeezed_cat(s, 0.706, PI, 1.795).unwrap();
        assert!((want.amps() - got.amps()).norm() < 1e-9);
    }

    #[test]
    fn photon_added_norms() {
        let t = 1f64.tanh();
        assert_relative_eq!(photon_added_norm(1, t), 1f64.cosh().powi(2), epsilon = 1e-12);
        assert_eq!(photon_added_norm(0, t), 1.0);
        let s = spec(60);
        assert_eq!(photon_added_sv(s, 0, 0.5, 0.0).unwrap(), squeezed_vacuum(s, 0.5, 0.0).unwrap());
    }

    #[test]
    fn op_words() {
        let w: OpWord = "adag3 a".parse().unwrap();
        assert_eq!(w.factors(), &[(Ladder::Raise, 3), (Ladder::Lower, 1)]);
        assert_eq!(w.to_string(), "adag3 a");
        assert!("b2".parse::<OpWord>().is_err());
        let s = spec(8);
        let one = FockKet::basis(s, 1).unwrap();
        assert_eq!(apply_op_word(&one, &"a".parse().unwrap()).unwrap(), FockKet::vacuum(s));
        assert_eq!(apply_op_word(&one, &OpWord::default()).unwrap(), one);
        assert!(matches!(apply_op_word(&FockKet::vacuum(s), &"a".parse().unwrap()), Err(Error::Degenerate(_))));
    }

    #[test]
    fn number_word_on_sv() {
        let s = spec(80);
        let v = squeezed_vacuum(s, 0.8, 0.0).unwrap();
        let out = apply_op_word(&v, &"adag a".parse().unwrap()).unwrap();
        let raw = v.map_diag(|n| n as f64).normalized().unwrap();
        assert!((out.amps() - raw.amps()).norm() < 1e-12);
    }

    #[test]
    fn gkp_even_support_and_wide_limit() {
        let s = spec(100);
        let g = gkp_logical(s, 0, 0.37).unwrap();
        assert!((0..50).all(|k| g.amp(2 * k + 1).norm() < 1e-12));
        let wide = gkp_logical(spec(60), 0, 1.2).unwrap();
        let single = (2.0 * 1.2 / (1.0 + 1.2 * 1.2_f64)).sqrt();
        assert!(wide.amp(0).norm() > 0.99);
        assert!((wide.amp(0).norm() - single).abs() < 1e-3);
    }

    #[test]
    fn target_json() {
        let t = TargetSpec::from_json(
            r#"{"family":"PhotonOpOnSqueezedCat","theta":0.0,"alpha":0.5,"gamma":0.2,"op_word":"adag2"}"#,
        )
        .unwrap();
        assert_eq!(t.op_word.to_string(), "adag2");
        let g = TargetSpec::from_json(r#"{"family":"GKPLogical","bit":0,"delta":0.4}"#).unwrap();
        assert_eq!(g.family, TargetFamily::GkpLogical);
        assert!(TargetSpec::from_json(r#"{"family":"SqueezedCat","op_word":"a"}"#).is_err());
    }
}
