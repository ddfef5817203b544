//! Module invariants as proptest checks, shared by the property tests and the acceptance runner.

#![allow(dead_code)]

use std::f64::consts::PI;
use std::fmt::Debug;

use nalgebra::DMatrix;
use opa_herald::C64;
use opa_herald::density::DensityMatrix;
use opa_herald::dynamics::{NoiseParams, lindblad_evolve, lindblad_evolve_with};
use opa_herald::fock::{
    FockKet, FockOperator, HilbertSpec, TwoModeKet, attenuator, ladder, single_mode_squeeze, squeeze_ket,
    two_mode_squeeze_apply,
};
use opa_herald::herald::{
    HeraldConfig, InputState, Parity, catalysis_state, herald_auto, herald_coefficient, herald_operator, herald_oracle,
    parity_support,
};
use opa_herald::metrics::{fidelity, fidelity_pure, photon_stats, qfi_path_symmetric};
use opa_herald::optimize::{Bound, SearchOptions, maximize};
use opa_herald::phase_space::{PhaseGrid, complexity, husimi_map, negativity_volume, wigner_map};
use opa_herald::probability::{TrialBudget, herald_rate, p_fock_spdc, p_trial};
use opa_herald::states::{
    OpWord, apply_op_word, cat, coherent, photon_added_norm, photon_added_sv, squeezed_cat, squeezed_vacuum,
    squeezed_vacuum_xi, sv_parameter,
};
use proptest::prelude::*;
use proptest::test_runner::{TestCaseError, TestRunner};

pub type Property = fn(&mut TestRunner) -> Result<(), String>;

fn check<S>(
    runner: &mut TestRunner,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String>
where
    S: Strategy,
    S::Value: Debug,
{
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn ok<T>(r: opa_herald::Result<T>) -> Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(e.to_string()))
}

fn spec(d: usize) -> HilbertSpec {
    HilbertSpec::new(d).unwrap()
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn max_diff(a: &FockKet, b: &FockKet) -> f64 {
    a.amps().iter().zip(b.amps().iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn op_diff(a: &FockOperator, b: &FockOperator) -> f64 {
    (a.matrix() - b.matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Small random states used across the phase-space and dynamics checks.
#[derive(Clone, Debug)]
pub enum Sample {
    Coherent(f64, f64),
    Fock(usize),
    Cat(f64, f64),
    Squeezed(f64),
}

impl Sample {
    fn build(&self, s: HilbertSpec) -> opa_herald::Result<FockKet> {
        match *self {
            Sample::Coherent(re, im) => coherent(s, c(re, im)),
            Sample::Fock(k) => FockKet::basis(s, k),
            Sample::Cat(theta, a) => cat(s, theta, a),
            Sample::Squeezed(r) => squeezed_vacuum(s, r, 0.0),
        }
    }
}

fn sample() -> impl Strategy<Value = Sample> {
    prop_oneof![
        (-1.5..1.5f64, -1.5..1.5f64).prop_map(|(a, b)| Sample::Coherent(a, b)),
        (0usize..5).prop_map(Sample::Fock),
        (0.0..2.0 * PI, 0.3..1.6f64).prop_map(|(t, a)| Sample::Cat(t, a)),
        (0.0..0.6f64).prop_map(Sample::Squeezed),
    ]
}

// fock-core

pub fn ladder_commutator(runner: &mut TestRunner) -> Result<(), String> {
    check(runner, 3usize..40, |d| {
        let (a, ad) = ladder(spec(d));
        let comm = ok(a.compose(&ad))?.matrix() - ok(ad.compose(&a))?.matrix();
        for i in 0..d - 1 {
            for j in 0..d - 1 {
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((comm[(i, j)] - c(want, 0.0)).norm() < 1e-12, "[a,a†]({i},{j}) = {}", comm[(i, j)]);
            }
        }
        Ok(())
    })
}

pub fn attenuator_composes(runner: &mut TestRunner) -> Result<(), String> {
    check(runner, (1.0..5.0f64, 1.0..5.0f64, 2usize..40), |(g1, g2, d)| {
        let s = spec(d);
        let lhs = ok(ok(attenuator(s, g1))?.compose(&ok(attenuator(s, g2))?))?;
        let rhs = ok(attenuator(s, g1 * g2))?;
        prop_assert!(op_diff(&lhs, &rhs) < 1e-12);
        Ok(())
    })
}

pub fn two_mode_squeeze_inverts(runner: &mut TestRunner) -> Result<(), String> {
    check(runner, (-0.8..0.8f64, -0.8..0.8f64, 0usize..3, 0.0..0.35f64, 0.0..2.0 * PI), |(re, im, k, r, phi)| {
        let sig = ok(coherent(spec(40), c(re, im)))?;
        let idl = ok(FockKet::basis(spec(40), k))?;
        let psi = TwoModeKet::product(&sig, &idl);
        let tau = C64::from_polar(r, phi);
        let back = ok(two_mode_squeeze_apply(&ok(two_mode_squeeze_apply(&psi, tau))?, -tau))?;
        let err = (back.amps() - psi.amps()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert!(err < 1e-8, "round trip error {err}");
        Ok(())
    })
}

pub fn two_mode_squeeze_keeps_difference(runner: &mut TestRunner) -> Result<(), String> {
    check(runner, (0usize..4, 0usize..4, 0.0..0.4f64), |(j, k, r)| {
        let s = spec(30);
        let psi = TwoModeKet::product(&ok(FockKet::basis(s, j))?, &ok(FockKet::basis(s, k))?);
        let out = ok(two_mode_squeeze_apply(&psi, c(r, 0.0)))?;
        let amps: &DMatrix<C64> = out.amps();
        for a in 0..amps.nrows() {
            for b in 0..amps.ncols() {
                if a as i64 - b as i64 != j as i64 - k as i64 {
                    prop_assert!(amps[(a, b)].norm() == 0.0, "({a},{b}) populated");
                } else {
                    prop_assert!((a + b) % 2 == (j + k) % 2);
                }
            }
        }
        Ok(())
    })
}

pub fn squeeze_routes_agree(runner: &mut TestRunner) -> Result<(), String> {
    check(runner, (0.0..0.6f64, 0.0..2.0 * PI, 0usize..3), |(r, phi, k)| {
        let s = spec(80);
        let z = C64::from_polar(r, phi);
        let ket = ok(FockKet::basis(s, k))?;
        let series = squeeze_ket(&ket, z);
        let exact = ok(ok(single_mode_squeeze(s, z))?.apply(&ket))?;
        prop_assert!(max_diff(&series, &exact) < 1e-10, "diff {}", max_diff(&series, &exact));
        Ok(())
    })
}

pub fn ket_json_round_trip(runner: &mut TestRunner) -> Result<(), String> {
    check(runner, prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 2..20), |v| {
        let amps: Vec<C64> = v.iter().map(|&(a, b)| c(a, b)).collect();
        let ket = ok(FockKet::from_vec(spec(amps.len()), amps))?;
        let back = ok(FockKet::from_json(&ok(ket.to_json())?))?;
        prop_assert_eq!(back, ket);
        Ok(())
    })
}

// state-factory

pub fn factory_outputs_normalized(runner: &mut TestRunner) -> Result<(), String> {
    check(runner, (0.0..2.5f64, 0.0..2.0 * PI, 0.0..1.0f64, 0.0..0.8f64), |(a, theta, r, gamma)| {
        let s = spec(100);
        for k in [
            ok(coherent(s, C64::from_polar(a, theta)))?,
            ok(squeezed_vacuum(s, r, theta))?,
            ok(cat(s, theta, a.max(0.05)))?,
            ok(squeezed_cat(s, gamma, theta, a.max(0.05)))?,
        ] {
            prop_assert!((k.norm_sqr() - 1.0).abs() < 1e-10);
        }
        Ok(())
    })
}

pub fn parity_zeros(runner: &mut TestRunner) -> Result<(), String> {
    check(runner, (0.05..1.0f64, 0.0..2.0 * PI, 0.2..2.5f64), |(r, theta, a)| {
        let s = spec(100);
        prop_assert_eq!(parity_support(&ok(squeezed_vacuum(s, r, theta))?), Parity::Even);
        prop_assert_eq!(parity_support(&ok(cat(s, 0.0, a))?), Parity::Even);
        prop_assert_eq!(parity_support(&ok(cat(s, PI, a))?), Parity::Odd);
        for k in ok(squeezed_vacuum(s, r, theta))?.amps().iter().skip(1).step_by(2) {
            prop_assert!(k.norm() == 0.0);
        }
        Ok(())
    })
}

pub fn photon_added_matches_word(runner: &mut TestRunner) -> Result<(), String> {
    check(runner, (0usize..5, 0.0..0.9f64, 0.0..2.0 * PI), |(n, r, theta)| {
        let s = spec(120);
        let direct = ok(photon_added_sv(s, n, r, theta))?;
        let word: OpWord = ok(format!("adag{n}").parse())?;
        let via_word = ok(apply_op_word(&ok(squeezed_vacuum(s, r, theta))?, &word))?;
        let phase = via_word.inner(&direct);
        prop_assert!((phase.norm() - 1.0).abs() < 1e-10, "overlap {phase}");
        Ok(())
    })
}

pub fn legendre_norm_matches_expectation(runner: &mut TestRunner) -> Result<(), String> {
    check(runner, (0usize..6, 0.0..0.8f64), |(n, r)| {
        let xi = sv_parameter(r, 0.0);
        let mut k = ok(squeezed_vacuum_xi(spec(200), xi))?.resized(200 + n);
        for _ in 0..n {
            k = k.raise();
        }
        let numeric = k.norm_sqr();
        let closed = photon_added_norm(n, xi.norm());
        prop_assert!((numeric - closed).abs() < 1e-8 * closed, "{numeric} vs {closed}");
        Ok(())
    })
}

pub fn op_word_round_trip(runner: &mut TestRunner) -> Result<(), String> {
    let token = (any::<bool>(), 1u32..5).prop_map(|(up, p)| {
        let name = if up { "adag" } else { "a" };
        if p == 1 { name.to_string() } else { format!("{name}{p}") }
    });
    check(runner, prop::collection::vec(token, 0..5), |toks| {
        let text = toks.join(" ");
        let w: OpWord = ok(text.parse())?;
        prop_assert_eq!(w.to_string(), text);
        Ok(())
    })
}

// herald-engine

fn herald_case() -> impl Strategy<Value = (usize, usize, f64, f64)> {
    (0usize..4, 0usize..4, 1.01..3.0f64, 0.1..1.0f64)
}

pub fn herald_routes_agree(runner: &mut TestRunner) -> Result<(), String> {
    check(runner, herald_case(), |(m, n, g, r)| {
        let cfg = HeraldConfig::sv(m, n, g, r).with_spec(spec(40));
        let (a, b) = match (herald_oracle(&cfg), herald_operator(&cfg)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(_), Err(_)) => return Ok(()),
            (a, b) => return Err(TestCaseError::fail(format!("routes disagree on success: {a:?} {b:?}"))),
        };
        prop_assert!(max_diff(&a.ket, &b.ket) < 1e-9);
        prop_assert!((a.p_sv - b.p_sv).abs() <= 1e-9 * a.p_sv.max(1e-300));
        Ok(())
    })
}

pub fn herald_parity_rule(runner: &mut TestRunner) -> Result<(), String> {
    check(runner, (0usize..6, 0usize..6, 1.01..3.0f64, 0.1..1.0f64), |(m, n, g, r)| {
        let res = ok(herald_operator(&HeraldConfig::sv(m, n, g, r).with_spec(spec(200))))?;
        if res.is_forbidden() {
            return Ok(());
        }
        let want = if (m + n) % 2 == 0 { Parity::Even } else { Parity::Odd };
        prop_assert_eq!(parity_support(&res.ket), want);
        Ok(())
    })
}

pub fn herald_probabilities_sum(runner: &mut TestRunner) -> Result<(), String> {
    let input = prop_oneof![
        (0.0..0.7f64).prop_map(InputState::sv),
        (-1.2..1.2f64, -1.2..1.2f64).prop_map(|(a, b)| InputState::coherent(c(a, b))),
    ];
    check(runner, (0usize..3, 1.05..1.8f64, input), |(m, g, input)| {
        let mut total = 0.0;
        for n in 0..400 {
            let p = ok(herald_auto(&HeraldConfig::new(m, n, g, input.clone(), spec(60)), herald_operator))?.p_sv;
            prop_assert!((0.0..=1.0 + 1e-12).contains(&p), "p_sv = {p}");
            total += p;
            if n > m + 50 && p < 1e-16 {
                break;
            }
        }
        prop_assert!((total - 1.0).abs() < 1e-8, "sum = {total}");
        Ok(())
    })
}

pub fn single_photon_support(runner: &mut TestRunner) -> Result<(), String> {
    check(runner, (1usize..5, 1.05..3.0f64, 0.1..0.9f64), |(n, g, r)| {
        let s = spec(100);
        let h = ok(herald_operator(&HeraldConfig::sv(1, n, g, r).with_spec(s)))?.ket;
        let xi = sv_parameter(r, 0.0) / (g * g);
        let base = ok(squeezed_vacuum_xi(spec(200), xi))?;
        let raised = |p: usize| {
            let mut k = base.clone();
            for _ in 0..p {
                k = k.raise();
            }
            k.resized(s.dim())
        };
        let u = raised(n - 1);
        let v = raised(n + 1);
        let uu = u.norm_sqr();
        let v_perp = FockKet::new(s, v.amps() - u.amps() * (u.inner(&v) / uu)).unwrap();
        let mut resid = h.amps() - u.amps() * (u.inner(&h) / uu);
        let vv = v_perp.norm_sqr();
        resid -= v_perp.amps() * (v_perp.inner(&FockKet::new(s, resid.clone()).unwrap()) / vv);
        prop_assert!(resid.norm() < 1e-8, "residual {}", resid.norm());
        Ok(())
    })
}

pub fn catalysis_matches_operator(runner: &mut TestRunner) -> Result<(), String> {
    check(runner, (0usize..4, 1.05..3.0f64, 0.1..1.0f64), |(n, g, r)| {
        let s = spec(60);
        let poly = ok(catalysis_state(n, g, r, 0.0, s))?;
        let op = ok(herald_operator(&HeraldConfig::sv(n, n, g, r).with_spec(s)))?;
        prop_assert!(max_diff(&poly.ket, &op.ket) < 1e-9);
        prop_assert!((poly.p_sv - op.p_sv).abs() < 1e-9 * op.p_sv);
        Ok(())
    })
}

pub fn coefficient_zero_outside_range(runner: &mut TestRunner) -> Result<(), String> {
    check(runner, (0usize..6, 0usize..6, 1.01..3.0f64), |(m, n, g)| {
        for k in 0..8 {
            let h = herald_coefficient(k, m, n, g);
            if k > m || k + n < m {
                prop_assert!(h == 0.0, "H({k},{m},{n}) = {h}");
            } else {
                prop_assert!(h.is_finite() && h != 0.0);
            }
        }
        Ok(())
    })
}

// phase-space

fn small_grid() -> PhaseGrid {
    PhaseGrid::square(6.0, 121).unwrap()
}

pub fn maps_integrate_to_one(runner: &mut TestRunner) -> Result<(), String> {
    let grid = small_grid();
    check(runner, sample(), |st| {
        let k = ok(st.build(spec(40)))?;
        let w = ok(wigner_map(&k, &grid))?;
        let q = ok(husimi_map(&k, &grid))?;
        prop_assert!((w.integral() - 1.0).abs() < 1e-3, "∫W = {}", w.integral());
        prop_assert!((q.integral() - 1.0).abs() < 1e-3, "∫Q = {}", q.integral());
        prop_assert!(q.min() >= 0.0);
        Ok(())
    })
}

pub fn gaussian_negativity_vanishes(runner: &mut TestRunner) -> Result<(), String> {
    let grid = small_grid();
    let gaussian = prop_oneof![
        (-1.5..1.5f64, -1.5..1.5f64).prop_map(|(a, b)| Sample::Coherent(a, b)),
        (0.0..0.6f64).prop_map(Sample::Squeezed),
    ];
    check(runner, gaussian, |st| {
        let n = ok(negativity_volume(&ok(wigner_map(&ok(st.build(spec(40)))?, &grid))?))?;
        prop_assert!(n.abs() < 1e-3, "N = {n}");
        Ok(())
    })
}

pub fn complexity_floor(runner: &mut TestRunner) -> Result<(), String> {
    let grid = small_grid();
    check(runner, sample(), |st| {
        let rep = ok(complexity(&ok(st.build(spec(40)))?, &grid))?;
        prop_assert!(rep.complexity >= 1.0 - 5e-3, "C = {}", rep.complexity);
        Ok(())
    })
}

// metrics

pub fn fidelity_bounds_and_symmetry(runner: &mut TestRunner) -> Result<(), String> {
    check(runner, (sample(), sample()), |(a, b)| {
        let s = spec(40);
        let (x, y) = (ok(a.build(s))?, ok(b.build(s))?);
        let f = fidelity_pure(&x, &y);
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&f));
        prop_assert!((f - fidelity_pure(&y, &x)).abs() < 1e-12);
        prop_assert!((f - fidelity(&DensityMatrix::from_ket(&x), &y)).abs() < 1e-10);
        Ok(())
    })
}

pub fn qfi_is_twice_variance(runner: &mut TestRunner) -> Result<(), String> {
    check(runner, sample(), |st| {
        let k = ok(st.build(spec(40)))?;
        let q = qfi_path_symmetric(&k);
        let s = photon_stats(&k);
        prop_assert!(s.var_n >= -1e-12);
        prop_assert!((q.qfi - 2.0 * s.var_n).abs() < 1e-10 * (1.0 + q.qfi));
        prop_assert!((q.total_n - 2.0 * q.mean_n).abs() < 1e-12);
        if s.var_n > 1e-6 && s.mean_n > 1e-6 {
            prop_assert!((q.ratio() - 2.0).abs() < 1e-8, "ratio {}", q.ratio());
        }
        Ok(())
    })
}

// open-dynamics

/// (trace, max |ρ − ρ†|, smallest eigenvalue of the Hermitian part).
pub fn matrix_invariants(rho: &DMatrix<C64>) -> (f64, f64, f64) {
    let tr = rho.diagonal().iter().map(|z| z.re).sum();
    let herm = (rho - rho.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    let h = (rho + rho.adjoint()) * C64::new(0.5, 0.0);
    let min_eig = h.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min);
    (tr, herm, min_eig)
}

pub fn lindblad_keeps_state_valid(runner: &mut TestRunner) -> Result<(), String> {
    check(runner, (sample(), 0.0..0.5f64, 0.0..0.5f64), |(st, kt, kpt)| {
        let rho0 = DensityMatrix::from_ket(&ok(st.build(spec(40)))?);
        let p = ok(NoiseParams::from_products(kt, kpt))?;
        let mut worst = (0.0f64, 0.0f64, 0.0f64);
        let rho = ok(lindblad_evolve_with(&rho0, &p, p.default_steps().max(1), |step, r| {
            if step % 10 != 0 {
                return;
            }
            let (tr, herm, min_eig) = matrix_invariants(r);
            worst.0 = worst.0.max((tr - 1.0).abs());
            worst.1 = worst.1.max(herm);
            worst.2 = worst.2.min(min_eig);
        }))?;
        prop_assert!((rho.trace() - 1.0).abs() < 1e-9);
        prop_assert!(worst.0 < 1e-9 && worst.1 < 1e-9 && worst.2 > -1e-8, "{worst:?}");
        Ok(())
    })
}

pub fn dephasing_keeps_populations(runner: &mut TestRunner) -> Result<(), String> {
    check(runner, (sample(), 0.0..1.0f64), |(st, kpt)| {
        let rho0 = DensityMatrix::from_ket(&ok(st.build(spec(40)))?);
        let p = ok(NoiseParams::from_products(0.0, kpt))?;
        let rho = ok(lindblad_evolve(&rho0, &p, p.default_steps().max(1)))?;
        for (a, b) in rho.populations().iter().zip(rho0.populations()) {
            prop_assert!((a - b).abs() < 1e-10);
        }
        Ok(())
    })
}

pub fn loss_keeps_coherent_states_coherent(runner: &mut TestRunner) -> Result<(), String> {
    check(runner, (-1.5..1.5f64, -1.5..1.5f64, 0.0..1.0f64), |(re, im, kt)| {
        let s = spec(40);
        let a = c(re, im);
        let rho0 = DensityMatrix::from_ket(&ok(coherent(s, a))?);
        let p = ok(NoiseParams::from_products(kt, 0.0))?;
        let rho = ok(lindblad_evolve(&rho0, &p, p.default_steps().max(1)))?;
        let want = ok(coherent(s, a * (-kt).exp()))?;
        prop_assert!((fidelity(&rho, &want) - 1.0).abs() < 1e-6);
        Ok(())
    })
}

// optimizer

fn bump(x: &[f64], c0: f64, c1: f64) -> f64 {
    (-(x[0] - c0).powi(2) - 2.0 * (x[1] - c1).powi(2)).exp() + 0.3 * (3.0 * x[0]).sin() * (2.0 * x[1]).cos() * 0.1
}

pub fn optimizer_beats_probes(runner: &mut TestRunner) -> Result<(), String> {
    check(
        runner,
        (-2.0..2.0f64, -2.0..2.0f64, prop::collection::vec((-3.0..3.0f64, -3.0..3.0f64), 20)),
        |(c0, c1, probes)| {
            let bounds = [Bound::new("x", -3.0, 3.0), Bound::new("y", -3.0, 3.0)];
            let opts = SearchOptions::default().with_density(11);
            let f = |x: &[f64]| Ok(bump(x, c0, c1));
            let rep = ok(maximize(f, &bounds, &opts))?;
            for (x, y) in probes {
                prop_assert!(rep.best_value >= bump(&[x, y], c0, c1) - 1e-9);
            }
            let again = ok(maximize(f, &bounds, &opts))?;
            prop_assert_eq!(rep.best_params, again.best_params);
            Ok(())
        },
    )
}

// protocol-prob

pub fn spdc_probabilities_sum(runner: &mut TestRunner) -> Result<(), String> {
    check(runner, 1.001..3.0f64, |gp| {
        let mut total = 0.0;
        for m in 0..20000 {
            let p = ok(p_fock_spdc(m, gp))?;
            total += p;
            if p < 1e-18 {
                break;
            }
        }
        prop_assert!((total - 1.0).abs() < 1e-9, "sum = {total}");
        Ok(())
    })
}

pub fn trial_probability_linear_in_efficiency(runner: &mut TestRunner) -> Result<(), String> {
    check(runner, (0usize..3, 0usize..3, 1.01..2.0f64, 1.01..2.0f64, 0.0..1.0f64), |(m, n, g, gp, eta)| {
        let cfg = HeraldConfig::sv(m, n, g, 0.5).with_spec(spec(60));
        let full = ok(p_trial(&cfg, &ok(TrialBudget::new(gp, 1.0, 1e6))?))?;
        let part = ok(p_trial(&cfg, &ok(TrialBudget::new(gp, eta, 1e6))?))?;
        prop_assert!((0.0..=1.0).contains(&full));
        prop_assert!((part - eta * full).abs() < 1e-12);
        prop_assert!((ok(herald_rate(part, 1e6))? - part * 1e6).abs() < 1e-6);
        Ok(())
    })
}

pub const ALL: &[(&str, Property)] = &[
    ("ladder_commutator", ladder_commutator),
    ("attenuator_composes", attenuator_composes),
    ("two_mode_squeeze_inverts", two_mode_squeeze_inverts),
    ("two_mode_squeeze_keeps_difference", two_mode_squeeze_keeps_difference),
    ("squeeze_routes_agree", squeeze_routes_agree),
    ("ket_json_round_trip", ket_json_round_trip),
    ("factory_outputs_normalized", factory_outputs_normalized),
    ("parity_zeros", parity_zeros),
    ("photon_added_matches_word", photon_added_matches_word),
    ("legendre_norm_matches_expectation", legendre_norm_matches_expectation),
    ("op_word_round_trip", op_word_round_trip),
    ("herald_routes_agree", herald_routes_agree),
    ("herald_parity_rule", herald_parity_rule),
    ("herald_probabilities_sum", herald_probabilities_sum),
    ("single_photon_support", single_photon_support),
    ("catalysis_matches_operator", catalysis_matches_operator),
    ("coefficient_zero_outside_range", coefficient_zero_outside_range),
    ("maps_integrate_to_one", maps_integrate_to_one),
    ("gaussian_negativity_vanishes", gaussian_negativity_vanishes),
    ("complexity_floor", complexity_floor),
    ("fidelity_bounds_and_symmetry", fidelity_bounds_and_symmetry),
    ("qfi_is_twice_variance", qfi_is_twice_variance),
    ("lindblad_keeps_state_valid", lindblad_keeps_state_valid),
    ("dephasing_keeps_populations", dephasing_keeps_populations),
    ("loss_keeps_coherent_states_coherent", loss_keeps_coherent_states_coherent),
    ("optimizer_beats_probes", optimizer_beats_probes),
    ("spdc_probabilities_sum", spdc_probabilities_sum),
    ("trial_probability_linear_in_efficiency", trial_probability_linear_in_efficiency),
];
