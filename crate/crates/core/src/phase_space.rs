//! Wigner and Husimi maps on rectangular grids and the scalars built from them.
//!
//! Phase-space points are α = (x + ip)/√2 and integrals use the measure d²α/π,
//! so W of the vacuum is 2 at the origin and Q of the vacuum is 1.

use std::f64::consts::PI;
use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::density::StateRef;
use crate::error::{Error, Result, domain};
use crate::fock::C64;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseGrid {
    pub x_max: f64,
    pub p_max: f64,
    pub nx: usize,
    pub np: usize,
}

impl Default for PhaseGrid {
    fn default() -> Self {
        Self { x_max: 6.0, p_max: 6.0, nx: 301, np: 301 }
    }
}

impl PhaseGrid {
    pub fn new(x_max: f64, p_max: f64, nx: usize, np: usize) -> Result<Self> {
        let g = Self { x_max, p_max, nx, np };
        g.validate()?;
        Ok(g)
    }

    pub fn square(extent: f64, n: usize) -> Result<Self> {
        Self::new(extent, extent, n, n)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.x_max > 0.0 && self.p_max > 0.0) || !self.x_max.is_finite() || !self.p_max.is_finite() {
            return domain("grid extents must be positive");
        }
        if self.nx < 32 || self.np < 32 {
            return domain(format!("grid needs at least 32 points per axis, got {}x{}", self.nx, self.np));
        }
        Ok(())
    }

    pub fn dx(&self) -> f64 {
        2.0 * self.x_max / (self.nx - 1) as f64
    }

    pub fn dp(&self) -> f64 {
        2.0 * self.p_max / (self.np - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        -self.x_max + i as f64 * self.dx()
    }

    pub fn p(&self, j: usize) -> f64 {
        -self.p_max + j as f64 * self.dp()
    }

    pub fn alpha(&self, i: usize, j: usize) -> C64 {
        C64::new(self.x(i), self.p(j)) / 2f64.sqrt()
    }

    /// Cell weight in the d²α/π measure.
    pub fn weight(&self) -> f64 {
        self.dx() * self.dp() / (2.0 * PI)
    }

    /// Same extents with the point count per axis roughly doubled.
    pub fn refined(&self) -> Self {
        Self { nx: 2 * self.nx - 1, np: 2 * self.np - 1, ..*self }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MapKind {
    Wigner,
    Husimi,
}

impl MapKind {
    fn magic(self) -> &'static [u8; 8] {
        match self {
            MapKind::Wigner => b"OPAMAPW1",
            MapKind::Husimi => b"OPAMAPQ1",
        }
    }
}

/// Values sampled on a grid, row-major with x as the row index.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseMap {
    pub grid: PhaseGrid,
    pub kind: MapKind,
    pub values: Vec<f64>,
}

impl PhaseMap {
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.grid.np + j]
    }

    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.grid.weight()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn write_csv(&self, w: &mut impl Write) -> Result<()> {
        writeln!(w, "x,p,value")?;
        for i in 0..self.grid.nx {
            for j in 0..self.grid.np {
                writeln!(w, "{:.6},{:.6},{:.12e}", self.grid.x(i), self.grid.p(j), self.value(i, j))?;
            }
        }
        Ok(())
    }

    /// 32-byte header (8-byte magic, nx and np as u32, x_max and p_max as f64), then f64 values, all little-endian.
    pub fn write_binary(&self, w: &mut impl Write) -> Result<()> {
        w.write_all(self.kind.magic())?;
        w.write_all(&(self.grid.nx as u32).to_le_bytes())?;
        w.write_all(&(self.grid.np as u32).to_le_bytes())?;
        w.write_all(&self.grid.x_max.to_le_bytes())?;
        w.write_all(&self.grid.p_max.to_le_bytes())?;
        for v in &self.values {
            w.write_all(&v.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_binary(r: &mut impl Read) -> Result<Self> {
        let mut head = [0u8; 32];
        r.read_exact(&mut head)?;
        let kind = if &head[..8] == MapKind::Wigner.magic() {
            MapKind::Wigner
        } else if &head[..8] == MapKind::Husimi.magic() {
            MapKind::Husimi
        } else {
            return domain("not a phase-map file");
        };
        let nx = u32::from_le_bytes(head[8..12].try_into().unwrap()) as usize;
        let np = u32::from_le_bytes(head[12..16].try_into().unwrap()) as usize;
        let x_max = f64::from_le_bytes(head[16..24].try_into().unwrap());
        let p_max = f64::from_le_bytes(head[24..32].try_into().unwrap());
        let grid = PhaseGrid::new(x_max, p_max, nx, np)?;
        let mut buf = vec![0u8; nx * np * 8];
        r.read_exact(&mut buf)?;
        let values = buf.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect();
        Ok(Self { grid, kind, values })
    }

    fn check_coverage(self) -> Result<Self> {
        let mass = (1.0 - self.integral()).abs();
        if mass > 1e-3 {
            return Err(Error::Coverage { mass });
        }
        Ok(self)
    }
}

/// Density-matrix diagonals ρ_{k,k+a}(−1)^k for a = 0..d−1.
fn signed_diagonals(state: &StateRef) -> Vec<Vec<C64>> {
    let d = state.dim();
    (0..d)
        .map(|a| {
            (0..d - a)
                .map(|k| {
                    let e = state.element(k, k + a);
                    if k % 2 == 0 { e } else { -e }
                })
                .collect()
        })
        .collect()
}

fn ln_fact_table(n: usize) -> Vec<f64> {
    let mut t = vec![0.0; n + 1];
    for k in 1..=n {
        t[k] = t[k - 1] + (k as f64).ln();
    }
    t
}

/// W(α) = 2 Σ_{m,n} (−1)ⁿ ρ_{nm} ⟨m|D(2α)|n⟩, with ⟨k+a|D(β)|k⟩ = β^a e^{−|β|²/2} √(k!/(k+a)!) L_k^{(a)}(|β|²).
fn wigner_point(diags: &[Vec<C64>], ln_fact: &[f64], alpha: C64) -> f64 {
    let beta = alpha * 2.0;
    let x = beta.norm_sqr();
    let ln_b = if x > 0.0 { 0.5 * x.ln() } else { f64::NEG_INFINITY };
    let arg = beta.arg();
    let mut total = 0.0;
    for (a, diag) in diags.iter().enumerate() {
        let ln_pref = if a == 0 { -0.5 * x } else { a as f64 * ln_b - 0.5 * x - 0.5 * ln_fact[a] };
        if ln_pref < -700.0 {
            continue;
        }
        let af = a as f64;
        let mut l_prev = 1.0;
        let mut l_cur = (1.0 + af - x) / (1.0 + af).sqrt();
        let mut s = diag[0] * l_prev;
        if diag.len() > 1 {
            s += diag[1] * l_cur;
        }
        for k in 1..diag.len().saturating_sub(1) {
            let kf = k as f64;
            let next = ((2.0 * kf + 1.0 + af - x) * l_cur - (kf * (kf + af)).sqrt() * l_prev)
                / ((kf + 1.0) * (kf + 1.0 + af)).sqrt();
            l_prev = l_cur;
            l_cur = next;
            s += diag[k + 1] * l_cur;
        }
        let pref = C64::from_polar(ln_pref.exp(), af * arg);
        let term = (s * pref).re;
        total += if a == 0 { term } else { 2.0 * term };
    }
    2.0 * total
}

pub fn wigner_map<'a>(state: impl Into<StateRef<'a>>, grid: &PhaseGrid) -> Result<PhaseMap> {
    let state = state.into();
    grid.validate()?;
    let diags = signed_diagonals(&state);
    let lf = ln_fact_table(state.dim());
    let values: Vec<f64> = (0..grid.nx)
        .into_par_iter()
        .flat_map_iter(|i| {
            let diags = &diags;
            let lf = &lf;
            (0..grid.np).map(move |j| wigner_point(diags, lf, grid.alpha(i, j)))
        })
        .collect();
    PhaseMap { grid: *grid, kind: MapKind::Wigner, values }.check_coverage()
}

/// Wigner function at a single point.
pub fn wigner_at<'a>(state: impl Into<StateRef<'a>>, alpha: C64) -> f64 {
    let state = state.into();
    wigner_point(&signed_diagonals(&state), &ln_fact_table(state.dim()), alpha)
}

fn coherent_bra(dim: usize, alpha: C64) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); dim];
    v[0] = C64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    let ac = alpha.conj();
    for n in 1..dim {
        v[n] = v[n - 1] * ac / (n as f64).sqrt();
    }
    v
}

/// ⟨α|ψ⟩ components, returning (⟨α|ρ|α⟩, ⟨α|aρ|α⟩).
fn husimi_point(state: &StateRef, alpha: C64) -> (f64, C64) {
    let d = state.dim();
    let bra = coherent_bra(d, alpha);
    match state {
        StateRef::Pure(k) => {
            let amps = k.amps();
            let mut ov = C64::new(0.0, 0.0);
            let mut ov_a = C64::new(0.0, 0.0);
            for n in 0..d {
                ov += bra[n] * amps[n];
                if n + 1 < d {
                    ov_a += bra[n] * amps[n + 1] * ((n + 1) as f64).sqrt();
                }
            }
            (ov.norm_sqr(), ov_a * ov.conj())
        }
        StateRef::Mixed(r) => {
            let m = r.matrix();
            let mut col = vec![C64::new(0.0, 0.0); d];
            for i in 0..d {
                let mut s = C64::new(0.0, 0.0);
                for j in 0..d {
                    s += m[(i, j)] * bra[j].conj();
                }
                col[i] = s;
            }
            let q: C64 = (0..d).map(|i| bra[i] * col[i]).sum();
            let qa: C64 = (0..d - 1).map(|i| bra[i] * col[i + 1] * ((i + 1) as f64).sqrt()).sum();
            (q.re, qa)
        }
    }
}

pub fn husimi_map<'a>(state: impl Into<StateRef<'a>>, grid: &PhaseGrid) -> Result<PhaseMap> {
    let state = state.into();
    grid.validate()?;
    let values: Vec<f64> = (0..grid.nx)
        .into_par_iter()
        .flat_map_iter(|i| (0..grid.np).map(move |j| husimi_point(&state, grid.alpha(i, j)).0))
        .collect();
    PhaseMap { grid: *grid, kind: MapKind::Husimi, values }.check_coverage()
}

pub fn husimi_at<'a>(state: impl Into<StateRef<'a>>, alpha: C64) -> f64 {
    husimi_point(&state.into(), alpha).0
}

/// ∫|W| d²α/π − 1, clamped at zero.
pub fn negativity_volume(wigner: &PhaseMap) -> Result<f64> {
    if wigner.kind != MapKind::Wigner {
        return domain("negativity volume needs a Wigner map");
    }
    let abs: f64 = wigner.values.iter().map(|v| v.abs()).sum::<f64>() * wigner.grid.weight();
    Ok((abs - 1.0).max(0.0))
}

fn require_husimi(map: &PhaseMap) -> Result<()> {
    if map.kind != MapKind::Husimi {
        return domain("this quantity needs a Husimi map");
    }
    Ok(())
}

/// −∫Q ln Q d²α/π.
pub fn wehrl_entropy(husimi: &PhaseMap) -> Result<f64> {
    require_husimi(husimi)?;
    let s: f64 = husimi.values.iter().filter(|&&q| q > 0.0).map(|&q| -q * q.ln()).sum();
    Ok(s * husimi.grid.weight())
}

/// ¼∫‖∇Q‖²/Q d²α/π with the gradient in (Re α, Im α) by finite differences.
pub fn husimi_fisher(husimi: &PhaseMap) -> Result<f64> {
    require_husimi(husimi)?;
    let g = husimi.grid;
    let du = g.dx() / 2f64.sqrt();
    let dv = g.dp() / 2f64.sqrt();
    let deriv = |get: &dyn Fn(usize) -> f64, i: usize, n: usize, h: f64| -> f64 {
        if i == 0 {
            (get(1) - get(0)) / h
        } else if i == n - 1 {
            (get(n - 1) - get(n - 2)) / h
        } else {
            (get(i + 1) - get(i - 1)) / (2.0 * h)
        }
    };
    let mut total = 0.0;
    for i in 0..g.nx {
        for j in 0..g.np {
            let q = husimi.value(i, j).max(1e-300);
            let qu = deriv(&|k| husimi.value(k, j), i, g.nx, du);
            let qv = deriv(&|k| husimi.value(i, k), j, g.np, dv);
            total += (qu * qu + qv * qv) / q;
        }
    }
    Ok(0.25 * total * g.weight())
}

/// Same integral with ∇Q from ∂Q/∂Re α = −2Re α Q + 2Re⟨α|aρ|α⟩ and ∂Q/∂Im α = −2Im α Q + 2Im⟨α|aρ|α⟩.
pub fn husimi_fisher_analytic<'a>(state: impl Into<StateRef<'a>>, grid: &PhaseGrid) -> Result<f64> {
    let state = state.into();
    grid.validate()?;
    let total: f64 = (0..grid.nx)
        .into_par_iter()
        .map(|i| {
            (0..grid.np)
                .map(|j| {
                    let alpha = grid.alpha(i, j);
                    let (q, qa) = husimi_point(&state, alpha);
                    let gu = -2.0 * alpha.re * q + 2.0 * qa.re;
                    let gv = -2.0 * alpha.im * q + 2.0 * qa.im;
                    (gu * gu + gv * gv) / q.max(1e-300)
                })
                .sum::<f64>()
        })
        .sum();
    Ok(0.25 * total * grid.weight())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexityReport {
    pub wehrl: f64,
    pub fisher: f64,
    pub complexity: f64,
}

/// C = e^{S_W − 1} I.
pub fn complexity_from_map(husimi: &PhaseMap) -> Result<ComplexityReport> {
    let wehrl = wehrl_entropy(husimi)?;
    let fisher = husimi_fisher(husimi)?;
    Ok(ComplexityReport { wehrl, fisher, complexity: (wehrl - 1.0).exp() * fisher })
}

pub fn complexity<'a>(state: impl Into<StateRef<'a>>, grid: &PhaseGrid) -> Result<ComplexityReport> {
    complexity_from_map(&husimi_map(state, grid)?)
}
