//! Truncated single- and two-mode Fock spaces.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result, domain};

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Cutoff and leakage tolerance of a truncated mode.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HilbertSpec {
    dim: usize,
    leak_tol: f64,
}

impl HilbertSpec {
    pub const DEFAULT_DIM: usize = 60;
    pub const DEFAULT_LEAK_TOL: f64 = 1e-10;

    pub fn new(dim: usize) -> Result<Self> {
        Self::with_tol(dim, Self::DEFAULT_LEAK_TOL)
    }

    pub fn with_tol(dim: usize, leak_tol: f64) -> Result<Self> {
        if dim < 2 {
            return domain(format!("dim must be at least 2, got {dim}"));
        }
        if !(leak_tol > 0.0 && leak_tol < 1.0) {
            return domain(format!("leak_tol must lie in (0, 1), got {leak_tol}"));
        }
        Ok(Self { dim, leak_tol })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn leak_tol(&self) -> f64 {
        self.leak_tol
    }

    /// Same tolerance, different cutoff.
    pub fn resized(&self, dim: usize) -> Self {
        Self { dim: dim.max(2), leak_tol: self.leak_tol }
    }
}

impl Default for HilbertSpec {
    fn default() -> Self {
        Self { dim: Self::DEFAULT_DIM, leak_tol: Self::DEFAULT_LEAK_TOL }
    }
}

/// Fraction of the norm sitting in the top three levels of a truncated vector.
pub fn top_leakage(amps: &[C64]) -> f64 {
    let total: f64 = amps.iter().map(|c| c.norm_sqr()).sum();
    if total == 0.0 {
        return 0.0;
    }
    let start = amps.len().saturating_sub(3);
    amps[start..].iter().map(|c| c.norm_sqr()).sum::<f64>() / total
}

/// Amplitude vector over |0>..|dim-1>.
#[derive(Clone, Debug, PartialEq)]
pub struct FockKet {
    spec: HilbertSpec,
    amps: DVector<C64>,
}

impl FockKet {
    pub fn new(spec: HilbertSpec, amps: DVector<C64>) -> Result<Self> {
        if amps.len() != spec.dim() {
            return domain(format!("ket has {} amplitudes but dim is {}", amps.len(), spec.dim()));
        }
        if amps.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return domain("ket amplitudes must be finite");
        }
        Ok(Self { spec, amps })
    }

    pub fn from_vec(spec: HilbertSpec, amps: Vec<C64>) -> Result<Self> {
        Self::new(spec, DVector::from_vec(amps))
    }

    pub(crate) fn from_raw(spec: HilbertSpec, amps: DVector<C64>) -> Self {
        debug_assert_eq!(amps.len(), spec.dim());
        Self { spec, amps }
    }

    pub fn zero(spec: HilbertSpec) -> Self {
        Self { spec, amps: DVector::zeros(spec.dim()) }
    }

    pub fn vacuum(spec: HilbertSpec) -> Self {
        let mut k = Self::zero(spec);
        k.amps[0] = ONE;
        k
    }

    pub fn basis(spec: HilbertSpec, n: usize) -> Result<Self> {
        if n >= spec.dim() {
            return domain(format!("Fock level {n} outside dim {}", spec.dim()));
        }
        let mut k = Self::zero(spec);
        k.amps[n] = ONE;
        Ok(k)
    }

    pub fn spec(&self) -> HilbertSpec {
        self.spec
    }

    pub fn dim(&self) -> usize {
        self.spec.dim()
    }

    pub fn amps(&self) -> &DVector<C64> {
        &self.amps
    }

    /// Amplitude on |n>, zero beyond the cutoff.
    pub fn amp(&self, n: usize) -> C64 {
        if n < self.dim() { self.amps[n] } else { ZERO }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= 1e-10
    }

    pub fn leakage(&self) -> f64 {
        top_leakage(self.amps.as_slice())
    }

    /// Fails with a truncation error when the top three levels hold more than `leak_tol`.
    pub fn gated(self) -> Result<Self> {
        let leakage = self.leakage();
        if leakage > self.spec.leak_tol() {
            return Err(Error::Truncation { leakage, tol: self.spec.leak_tol(), dim: self.dim() });
        }
        Ok(self)
    }

    /// Unit norm, largest-magnitude amplitude real and positive.
    pub fn normalized(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if !(n2 > 1e-300) {
            return Err(Error::Degenerate(format!("ket norm {n2:.3e} too small to normalize")));
        }
        let mut best = 0;
        let mut best_mag = -1.0;
        for (i, c) in self.amps.iter().enumerate() {
            let m = c.norm_sqr();
            if m > best_mag * (1.0 + 1e-12) {
                best = i;
                best_mag = m;
            }
        }
        let pivot = self.amps[best];
        let phase = pivot.conj() / pivot.norm();
        let scale = phase / n2.sqrt();
        let mut amps = self.amps;
        amps.iter_mut().for_each(|c| *c *= scale);
        amps[best] = C64::new(amps[best].norm(), 0.0);
        Ok(Self { spec: self.spec, amps })
    }

    /// <self|other>, zero-extending whichever ket is shorter.
    pub fn inner(&self, other: &FockKet) -> C64 {
        let n = self.dim().min(other.dim());
        (0..n).map(|i| self.amps[i].conj() * other.amps[i]).sum()
    }

    pub fn scaled(&self, c: C64) -> Self {
        Self { spec: self.spec, amps: &self.amps * c }
    }

    /// Zero-pads or truncates without any check.
    pub fn resized(&self, dim: usize) -> Self {
        let spec = self.spec.resized(dim);
        let mut amps = DVector::zeros(spec.dim());
        let n = self.dim().min(spec.dim());
        amps.rows_mut(0, n).copy_from(&self.amps.rows(0, n));
        Self { spec, amps }
    }

    /// Truncates to `spec`, failing if the dropped levels plus the new top three hold more than `leak_tol`.
    pub fn truncated(&self, spec: HilbertSpec) -> Result<Self> {
        let total = self.norm_sqr();
        if total > 0.0 && spec.dim() < self.dim() + 3 {
            let start = spec.dim().saturating_sub(3);
            let tail: f64 = self.amps.iter().skip(start).map(|c| c.norm_sqr()).sum();
            let leakage = tail / total;
            if leakage > spec.leak_tol() {
                return Err(Error::Truncation { leakage, tol: spec.leak_tol(), dim: spec.dim() });
            }
        }
        let mut k = self.resized(spec.dim());
        k.spec = spec;
        Ok(k)
    }

    /// a|psi>.
    pub fn lower(&self) -> Self {
        let d = self.dim();
        let mut out = DVector::zeros(d);
        for n in 0..d - 1 {
            out[n] = self.amps[n + 1] * ((n + 1) as f64).sqrt();
        }
        Self { spec: self.spec, amps: out }
    }

    /// a†|psi>, dropping the amplitude pushed past the cutoff.
    pub fn raise(&self) -> Self {
        let d = self.dim();
        let mut out = DVector::zeros(d);
        for n in 1..d {
            out[n] = self.amps[n - 1] * (n as f64).sqrt();
        }
        Self { spec: self.spec, amps: out }
    }

    /// Multiplies amplitude n by f(n).
    pub fn map_diag(&self, f: impl Fn(usize) -> f64) -> Self {
        let mut amps = self.amps.clone();
        for (n, c) in amps.iter_mut().enumerate() {
            *c *= f(n);
        }
        Self { spec: self.spec, amps }
    }

    pub fn expect(&self, op: &FockOperator) -> Result<C64> {
        let v = op.apply(self)?;
        Ok(self.inner(&v))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

#[derive(Serialize, Deserialize)]
struct AmpsRepr {
    dim: usize,
    amps: Vec<[f64; 2]>,
}

fn pack(v: impl Iterator<Item = C64>) -> Vec<[f64; 2]> {
    v.map(|c| [c.re, c.im]).collect()
}

impl Serialize for FockKet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AmpsRepr { dim: self.dim(), amps: pack(self.amps.iter().copied()) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FockKet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = AmpsRepr::deserialize(d)?;
        let spec = HilbertSpec::new(r.dim).map_err(D::Error::custom)?;
        let amps = r.amps.iter().map(|p| C64::new(p[0], p[1])).collect();
        FockKet::from_vec(spec, amps).map_err(D::Error::custom)
    }
}

/// Dense operator on a truncated mode.
#[derive(Clone, Debug, PartialEq)]
pub struct FockOperator {
    spec: HilbertSpec,
    mat: DMatrix<C64>,
}

impl FockOperator {
    pub fn new(spec: HilbertSpec, mat: DMatrix<C64>) -> Result<Self> {
        if mat.nrows() != spec.dim() || mat.ncols() != spec.dim() {
            return domain(format!("operator is {}x{} but dim is {}", mat.nrows(), mat.ncols(), spec.dim()));
        }
        if mat.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return domain("operator entries must be finite");
        }
        Ok(Self { spec, mat })
    }

    pub fn identity(spec: HilbertSpec) -> Self {
        Self { spec, mat: DMatrix::identity(spec.dim(), spec.dim()) }
    }

    pub fn diagonal(spec: HilbertSpec, f: impl Fn(usize) -> f64) -> Self {
        let d = spec.dim();
        let mut mat = DMatrix::zeros(d, d);
        for n in 0..d {
            mat[(n, n)] = C64::new(f(n), 0.0);
        }
        Self { spec, mat }
    }

    pub fn number(spec: HilbertSpec) -> Self {
        Self::diagonal(spec, |n| n as f64)
    }

    pub fn spec(&self) -> HilbertSpec {
        self.spec
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.mat
    }

    pub fn adjoint(&self) -> Self {
        Self { spec: self.spec, mat: self.mat.adjoint() }
    }

    /// self · other.
    pub fn compose(&self, other: &FockOperator) -> Result<Self> {
        if self.spec.dim() != other.spec.dim() {
            return domain("operator dimensions differ");
        }
        Ok(Self { spec: self.spec, mat: &self.mat * &other.mat })
    }

    pub fn apply(&self, ket: &FockKet) -> Result<FockKet> {
        if ket.dim() != self.spec.dim() {
            return domain(format!("ket dim {} does not match operator dim {}", ket.dim(), self.spec.dim()));
        }
        Ok(FockKet { spec: ket.spec, amps: &self.mat * &ket.amps })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

impl Serialize for FockOperator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let d = self.spec.dim();
        let row_major = (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).map(|(i, j)| self.mat[(i, j)]);
        AmpsRepr { dim: d, amps: pack(row_major) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FockOperator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = AmpsRepr::deserialize(d)?;
        if r.amps.len() != r.dim * r.dim {
            return Err(D::Error::custom("operator entry count is not dim²"));
        }
        let spec = HilbertSpec::new(r.dim).map_err(D::Error::custom)?;
        let mat = DMatrix::from_row_iterator(r.dim, r.dim, r.amps.iter().map(|p| C64::new(p[0], p[1])));
        FockOperator::new(spec, mat).map_err(D::Error::custom)
    }
}

/// Annihilation and creation operators.
pub fn ladder(spec: HilbertSpec) -> (FockOperator, FockOperator) {
    let d = spec.dim();
    let mut a = DMatrix::zeros(d, d);
    for n in 1..d {
        a[(n - 1, n)] = C64::new((n as f64).sqrt(), 0.0);
    }
    let adag = a.adjoint();
    (FockOperator { spec, mat: a }, FockOperator { spec, mat: adag })
}

/// g^{-a†a}.
pub fn attenuator(spec: HilbertSpec, g: f64) -> Result<FockOperator> {
    if !(g >= 1.0) || !g.is_finite() {
        return domain(format!("attenuator gain must be >= 1, got {g}"));
    }
    Ok(FockOperator::diagonal(spec, |n| g.powi(-(n as i32))))
}

/// S(z) = exp[(z* a² − z a†²)/2] by exponentiating the generator on a padded space.
pub fn single_mode_squeeze(spec: HilbertSpec, z: C64) -> Result<FockOperator> {
    let d = spec.dim();
    if z == ZERO {
        return Ok(FockOperator::identity(spec));
    }
    let p = (2 * d).max(d + 40);
    let mut generator = DMatrix::<C64>::zeros(p, p);
    for n in 0..p - 2 {
        let c = ((n + 1) as f64 * (n + 2) as f64).sqrt() * 0.5;
        generator[(n, n + 2)] += z.conj() * c;
        generator[(n + 2, n)] -= z * c;
    }
    let full = generator.exp();
    let vac: Vec<C64> = full.column(0).iter().copied().collect();
    let tail: f64 = vac[d.saturating_sub(3)..].iter().map(|c| c.norm_sqr()).sum();
    if tail > spec.leak_tol() {
        return Err(Error::Truncation { leakage: tail, tol: spec.leak_tol(), dim: d });
    }
    Ok(FockOperator { spec, mat: full.view((0, 0), (d, d)).into_owned() })
}

/// Applies S(z) to a ket through the disentangled form
/// exp(−½e^{iθ}tanh r a†²) (cosh r)^{−(N+½)} exp(½e^{−iθ}tanh r a²).
/// Amplitudes below the cutoff are exact; mass pushed above it is lost and shows up as leakage.
pub fn squeeze_ket(ket: &FockKet, z: C64) -> FockKet {
    let r = z.norm();
    if r == 0.0 {
        return ket.clone();
    }
    let e = z / r;
    let t = r.tanh();
    let lower_coef = e.conj() * (0.5 * t);
    let raise_coef = -e * (0.5 * t);
    let d = ket.dim();

    let mut acc = ket.amps.clone();
    let mut term = ket.amps.clone();
    for k in 1..=d / 2 {
        let mut next = DVector::zeros(d);
        for n in 0..d.saturating_sub(2) {
            next[n] = term[n + 2] * (((n + 1) * (n + 2)) as f64).sqrt() * lower_coef / k as f64;
        }
        if next.iter().all(|c| *c == ZERO) {
            break;
        }
        acc += &next;
        term = next;
    }

    let c = r.cosh();
    for (n, v) in acc.iter_mut().enumerate() {
        *v *= c.powf(-(n as f64 + 0.5));
    }

    let mut out = acc.clone();
    let mut term = acc;
    for k in 1..=d / 2 {
        let mut next = DVector::zeros(d);
        for n in 2..d {
            next[n] = term[n - 2] * (((n - 1) * n) as f64).sqrt() * raise_coef / k as f64;
        }
        if next.iter().all(|c| *c == ZERO) {
            break;
        }
        out += &next;
        term = next;
    }
    FockKet { spec: ket.spec, amps: out }
}

/// Largest cutoff the adaptive builders will try.
pub const MAX_ADAPTIVE_DIM: usize = 1 << 16;

/// Calls `build` with the cutoff doubled after every truncation error, up to `MAX_ADAPTIVE_DIM`.
pub fn with_growing_dim<T>(start: HilbertSpec, mut build: impl FnMut(HilbertSpec) -> Result<T>) -> Result<T> {
    let mut spec = start;
    loop {
        match build(spec) {
            Err(Error::Truncation { .. }) if spec.dim() < MAX_ADAPTIVE_DIM => {
                spec = spec.resized((spec.dim() * 2).min(MAX_ADAPTIVE_DIM));
            }
            other => return other,
        }
    }
}

/// Signal ⊗ idler amplitudes, rows indexed by signal level.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoModeKet {
    signal: HilbertSpec,
    idler: HilbertSpec,
    amps: DMatrix<C64>,
}

impl TwoModeKet {
    pub fn new(signal: HilbertSpec, idler: HilbertSpec, amps: DMatrix<C64>) -> Result<Self> {
        if amps.nrows() != signal.dim() || amps.ncols() != idler.dim() {
            return domain("two-mode amplitude shape does not match the specs");
        }
        if amps.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return domain("two-mode amplitudes must be finite");
        }
        Ok(Self { signal, idler, amps })
    }

    pub fn product(signal: &FockKet, idler: &FockKet) -> Self {
        let amps = &signal.amps * idler.amps.transpose();
        Self { signal: signal.spec, idler: idler.spec, amps }
    }

    pub fn signal_spec(&self) -> HilbertSpec {
        self.signal
    }

    pub fn idler_spec(&self) -> HilbertSpec {
        self.idler
    }

    pub fn amps(&self) -> &DMatrix<C64> {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Population in the top three levels of either mode.
    pub fn leakage(&self) -> f64 {
        let total = self.norm_sqr();
        if total == 0.0 {
            return 0.0;
        }
        let (s, i) = self.amps.shape();
        let mut tail = 0.0;
        for r in 0..s {
            for c in 0..i {
                if r + 3 >= s || c + 3 >= i {
                    tail += self.amps[(r, c)].norm_sqr();
                }
            }
        }
        tail / total
    }
}

/// Applies exp(τ* ab − τ a†b†) through the factored form
/// exp(−e^{iδ}tanh ρ a†b†) (cosh ρ)^{−(N_a+N_b+1)} exp(e^{−iδ}tanh ρ ab), τ = ρe^{iδ}.
pub fn two_mode_squeeze_apply(state: &TwoModeKet, tau: C64) -> Result<TwoModeKet> {
    let result = two_mode_squeeze_unchecked(state, tau);
    let leakage = result.leakage();
    let tol = state.signal.leak_tol().min(state.idler.leak_tol());
    if leakage > tol {
        let (s, i) = result.amps.shape();
        return Err(Error::Truncation { leakage, tol, dim: s.max(i) });
    }
    Ok(result)
}

/// Same map without the leakage gate. Amplitudes below both cutoffs are exact.
pub(crate) fn two_mode_squeeze_unchecked(state: &TwoModeKet, tau: C64) -> TwoModeKet {
    let rho = tau.norm();
    if rho == 0.0 {
        return state.clone();
    }
    let e = tau / rho;
    let t = rho.tanh();
    let (s, i) = state.amps.shape();
    let steps = s.min(i);

    let lower = |m: &DMatrix<C64>, coef: C64| {
        let mut out = DMatrix::zeros(s, i);
        for a in 0..s - 1 {
            for b in 0..i - 1 {
                out[(a, b)] = m[(a + 1, b + 1)] * (((a + 1) * (b + 1)) as f64).sqrt() * coef;
            }
        }
        out
    };
    let raise = |m: &DMatrix<C64>, coef: C64| {
        let mut out = DMatrix::zeros(s, i);
        for a in 1..s {
            for b in 1..i {
                out[(a, b)] = m[(a - 1, b - 1)] * ((a * b) as f64).sqrt() * coef;
            }
        }
        out
    };

    let mut acc = state.amps.clone();
    let mut term = state.amps.clone();
    for k in 1..=steps {
        term = lower(&term, e.conj() * t / k as f64);
        if term.iter().all(|c| *c == ZERO) {
            break;
        }
        acc += &term;
    }

    let g = rho.cosh();
    for a in 0..s {
        for b in 0..i {
            acc[(a, b)] *= g.powi(-((a + b + 1) as i32));
        }
    }

    let mut out = acc.clone();
    let mut term = acc;
    for k in 1..=steps {
        term = raise(&term, -e * t / k as f64);
        if term.iter().all(|c| *c == ZERO) {
            break;
        }
        out += &term;
    }

    TwoModeKet { signal: state.signal, idler: state.idler, amps: out }
}

/// Unnormalized signal ket <n|_idler state and its squared norm.
pub fn project_idler(state: &TwoModeKet, n: usize) -> Result<(FockKet, f64)> {
    if n >= state.idler.dim() {
        return domain(format!("idler level {n} outside idler dim {}", state.idler.dim()));
    }
    let amps: DVector<C64> = state.amps.column(n).into_owned();
    let ket = FockKet { spec: state.signal, amps };
    let p = ket.norm_sqr();
    Ok((ket, p))
}
