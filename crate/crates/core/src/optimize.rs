//! Coarse grid search followed by Nelder–Mead refinement.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::density::StateRef;
use crate::error::{Error, Result, domain};
use crate::fock::HilbertSpec;
use crate::herald::{HeraldConfig, herald_operator};
use crate::metrics::fidelity;
use crate::states::TargetSpec;

/// Closed interval for one named parameter; `lo == hi` pins it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bound {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
}

impl Bound {
    pub fn new(name: impl Into<String>, lo: f64, hi: f64) -> Self {
        Self { name: name.into(), lo, hi }
    }

    pub fn fixed(name: impl Into<String>, v: f64) -> Self {
        Self::new(name, v, v)
    }

    pub fn is_fixed(&self) -> bool {
        self.lo == self.hi
    }

    fn validate(&self) -> Result<()> {
        if !self.lo.is_finite() || !self.hi.is_finite() || self.lo > self.hi {
            return domain(format!("bound {} = [{}, {}] is empty or not finite", self.name, self.lo, self.hi));
        }
        Ok(())
    }

    fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }
}

pub const ALPHA_RANGE: (f64, f64) = (0.0, 3.5);
pub const GAMMA_RANGE: (f64, f64) = (0.0, 1.5);
/// Lower gain edge; g = 1 exactly is the identity OPA.
pub const G_RANGE: (f64, f64) = (1.0001, 10.0);
pub const R_RANGE: (f64, f64) = (0.0, 3.0);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchOptions {
    pub grid_density: usize,
    pub ftol: f64,
    pub xtol: f64,
    pub max_iter: usize,
    pub record_trace: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { grid_density: 41, ftol: 1e-6, xtol: 1e-4, max_iter: 200, record_trace: false }
    }
}

impl SearchOptions {
    pub fn with_density(mut self, n: usize) -> Self {
        self.grid_density = n;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub params: Vec<f64>,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimReport {
    pub best_params: BTreeMap<String, f64>,
    pub best_value: f64,
    pub evaluations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TracePoint>>,
}

impl OptimReport {
    pub fn param(&self, name: &str) -> f64 {
        self.best_params.get(name).copied().unwrap_or(f64::NAN)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn safe_eval<F: Fn(&[f64]) -> Result<f64>>(f: &F, x: &[f64]) -> f64 {
    match f(x) {
        Ok(v) if v.is_finite() => v,
        _ => f64::NEG_INFINITY,
    }
}

fn axis(b: &Bound, n: usize) -> Vec<f64> {
    if b.is_fixed() || n < 2 {
        return vec![if b.is_fixed() { b.lo } else { 0.5 * (b.lo + b.hi) }];
    }
    (0..n).map(|i| b.lo + (b.hi - b.lo) * i as f64 / (n - 1) as f64).collect()
}

fn validate_bounds(bounds: &[Bound], opts: &SearchOptions) -> Result<()> {
    if bounds.is_empty() {
        return domain("no parameters to optimize");
    }
    for b in bounds {
        b.validate()?;
    }
    if opts.grid_density == 0 {
        return domain("grid density must be positive");
    }
    Ok(())
}

fn report(bounds: &[Bound], x: &[f64], value: f64, evaluations: usize, trace: Option<Vec<TracePoint>>) -> OptimReport {
    let best_params = bounds.iter().zip(x).map(|(b, v)| (b.name.clone(), *v)).collect();
    OptimReport { best_params, best_value: value, evaluations, trace }
}

/// Grid stage then simplex refinement from the best cell; failed evaluations count as −∞.
pub fn maximize<F>(f: F, bounds: &[Bound], opts: &SearchOptions) -> Result<OptimReport>
where
    F: Fn(&[f64]) -> Result<f64> + Sync,
{
    validate_bounds(bounds, opts)?;
    let axes: Vec<Vec<f64>> = bounds.iter().map(|b| axis(b, opts.grid_density)).collect();
    let total: usize = axes.iter().map(Vec::len).product();
    let points: Vec<Vec<f64>> = (0..total)
        .map(|mut idx| {
            let mut p = vec![0.0; axes.len()];
            for d in (0..axes.len()).rev() {
                p[d] = axes[d][idx % axes[d].len()];
                idx /= axes[d].len();
            }
            p
        })
        .collect();
    let values: Vec<f64> = points.par_iter().map(|p| safe_eval(&f, p)).collect();
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = i;
        }
    }
    if values[best] == f64::NEG_INFINITY {
        return Err(Error::Degenerate("objective failed at every grid point".into()));
    }
    let step: Vec<f64> = bounds
        .iter()
        .zip(&axes)
        .map(|(b, a)| if a.len() > 1 { (b.hi - b.lo) / (a.len() - 1) as f64 } else { 0.0 })
        .collect();
    let mut trace = opts.record_trace.then(|| {
        points.iter().zip(&values).map(|(p, v)| TracePoint { params: p.clone(), value: *v }).collect::<Vec<_>>()
    });
    let (x, v, evals) = nelder_mead(&f, bounds, &points[best], values[best], &step, opts, trace.as_mut());
    Ok(report(bounds, &x, v, total + evals, trace))
}

/// Simplex refinement only, starting from `start` with initial edge `step` per axis.
pub fn refine<F>(f: F, bounds: &[Bound], start: &[f64], step: &[f64], opts: &SearchOptions) -> Result<OptimReport>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    validate_bounds(bounds, opts)?;
    if start.len() != bounds.len() || step.len() != bounds.len() {
        return domain("start and step must match the number of bounds");
    }
    if !bounds.iter().zip(start).all(|(b, x)| b.contains(*x)) {
        return domain("refinement start lies outside the bounds");
    }
    let v0 = safe_eval(&f, start);
    let mut trace = opts.record_trace.then(|| vec![TracePoint { params: start.to_vec(), value: v0 }]);
    let (x, v, evals) = nelder_mead(&f, bounds, start, v0, step, opts, trace.as_mut());
    Ok(report(bounds, &x, v, evals + 1, trace))
}

/// Maximizes over the free coordinates; points outside the bounds are rejected as −∞.
fn nelder_mead<F>(
    f: &F,
    bounds: &[Bound],
    start: &[f64],
    v0: f64,
    step: &[f64],
    opts: &SearchOptions,
    mut trace: Option<&mut Vec<TracePoint>>,
) -> (Vec<f64>, f64, usize)
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let free: Vec<usize> = (0..bounds.len()).filter(|&i| !bounds[i].is_fixed() && step[i] > 0.0).collect();
    if free.is_empty() {
        return (start.to_vec(), v0, 0);
    }
    let mut evals = 0;
    let mut eval = |x: &[f64], evals: &mut usize| -> f64 {
        if !bounds.iter().zip(x).all(|(b, v)| b.contains(*v)) {
            return f64::NEG_INFINITY;
        }
        *evals += 1;
        let v = safe_eval(f, x);
        if let Some(t) = trace.as_deref_mut() {
            t.push(TracePoint { params: x.to_vec(), value: v });
        }
        v
    };
    let mut simplex: Vec<(Vec<f64>, f64)> = vec![(start.to_vec(), v0)];
    for &d in &free {
        let mut x = start.to_vec();
        x[d] = if start[d] + step[d] <= bounds[d].hi { start[d] + step[d] } else { start[d] - step[d] };
        let v = eval(&x, &mut evals);
        simplex.push((x, v));
    }
    let n = free.len();
    let lerp = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> { a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect() };
    for _ in 0..opts.max_iter {
        // Descending by value; stable so earlier vertices win ties.
        simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
        let spread = simplex[0].1 - simplex[n].1;
        let diam = simplex[1..]
            .iter()
            .map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if spread.is_finite() && spread < opts.ftol && diam < opts.xtol {
            break;
        }
        let mut centroid = vec![0.0; start.len()];
        for (x, _) in &simplex[..n] {
            for (c, v) in centroid.iter_mut().zip(x) {
                *c += v / n as f64;
            }
        }
        let worst = simplex[n].clone();
        let xr = lerp(&centroid, &worst.0, -1.0);
        let vr = eval(&xr, &mut evals);
        if vr > simplex[0].1 {
            let xe = lerp(&centroid, &worst.0, -2.0);
            let ve = eval(&xe, &mut evals);
            simplex[n] = if ve > vr { (xe, ve) } else { (xr, vr) };
            continue;
        }
        if vr > simplex[n - 1].1 {
            simplex[n] = (xr, vr);
            continue;
        }
        let (xc, vc) = if vr > worst.1 {
            let xc = lerp(&centroid, &worst.0, -0.5);
            let vc = eval(&xc, &mut evals);
            (xc, vc)
        } else {
            let xc = lerp(&centroid, &worst.0, 0.5);
            let vc = eval(&xc, &mut evals);
            (xc, vc)
        };
        if vc > worst.1.max(vr) {
            simplex[n] = (xc, vc);
            continue;
        }
        let best = simplex[0].0.clone();
        for vert in simplex.iter_mut().skip(1) {
            let x = lerp(&best, &vert.0, 0.5);
            let v = eval(&x, &mut evals);
            *vert = (x, v);
        }
    }
    simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
    let (x, v) = simplex.swap_remove(0);
    (x, v, evals)
}

fn with_alpha_gamma(template: &TargetSpec, alpha: f64, gamma: f64) -> TargetSpec {
    TargetSpec { alpha, gamma, ..template.clone() }
}

/// Maximizes F(state, target(α, γ)) with the template's other fields held fixed.
pub fn optimize_target<'a>(
    state: impl Into<StateRef<'a>>,
    template: &TargetSpec,
    alpha: (f64, f64),
    gamma: (f64, f64),
    opts: &SearchOptions,
) -> Result<OptimReport> {
    let state = state.into();
    let spec = HilbertSpec::new(state.dim())?;
    let bounds = [Bound::new("alpha", alpha.0, alpha.1), Bound::new("gamma", gamma.0, gamma.1)];
    maximize(|p| Ok(fidelity(state, &with_alpha_gamma(template, p[0], p[1]).build_auto(spec)?)), &bounds, opts)
}

/// Simplex-only variant of [`optimize_target`] from a known starting point.
pub fn refine_target<'a>(
    state: impl Into<StateRef<'a>>,
    template: &TargetSpec,
    alpha: Bound,
    gamma: Bound,
    opts: &SearchOptions,
) -> Result<OptimReport> {
    let state = state.into();
    let spec = HilbertSpec::new(state.dim())?;
    let start = [template.alpha.clamp(alpha.lo, alpha.hi), template.gamma.clamp(gamma.lo, gamma.hi)];
    let step = [0.05, 0.05];
    let bounds = [Bound { name: "alpha".into(), ..alpha }, Bound { name: "gamma".into(), ..gamma }];
    refine(
        |p| Ok(fidelity(state, &with_alpha_gamma(template, p[0], p[1]).build_auto(spec)?)),
        &bounds,
        &start,
        &step,
        opts,
    )
}

/// Search box for protocol fits; pinned `alpha`/`gamma` keep the template value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProtocolBounds {
    pub g: (f64, f64),
    pub r: (f64, f64),
    pub alpha: Option<(f64, f64)>,
    pub gamma: Option<(f64, f64)>,
}

impl Default for ProtocolBounds {
    fn default() -> Self {
        Self { g: G_RANGE, r: R_RANGE, alpha: None, gamma: None }
    }
}

/// Maximizes F(herald(m, n; g, r), target) over the OPA gain, input squeezing and optionally α, γ.
pub fn optimize_protocol(
    target: &TargetSpec,
    m: usize,
    n: usize,
    bounds: &ProtocolBounds,
    spec: HilbertSpec,
    opts: &SearchOptions,
) -> Result<OptimReport> {
    target.validate()?;
    let pin = |name: &str, b: Option<(f64, f64)>, v: f64| match b {
        Some((lo, hi)) => Bound::new(name, lo, hi),
        None => Bound::fixed(name, v),
    };
    let bs = [
        Bound::new("g", bounds.g.0, bounds.g.1),
        Bound::new("r", bounds.r.0, bounds.r.1),
        pin("alpha", bounds.alpha, target.alpha),
        pin("gamma", bounds.gamma, target.gamma),
    ];
    if bs[0].lo < 1.0 {
        return domain("OPA gain bound must stay >= 1");
    }
    maximize(
        |p| {
            let h = herald_operator(&HeraldConfig::sv(m, n, p[0], p[1]).with_spec(spec))?;
            if h.is_forbidden() {
                return Ok(0.0);
            }
            let t = with_alpha_gamma(target, p[2], p[3]).build_auto(spec)?;
            Ok(fidelity(&h.ket, &t))
        },
        &bs,
        opts,
    )
}
