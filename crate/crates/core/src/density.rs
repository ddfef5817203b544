//! Single-mode density matrices.

use nalgebra::DMatrix;

use crate::error::{Error, Result, domain};
use crate::fock::{C64, FockKet, HilbertSpec};

#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    spec: HilbertSpec,
    mat: DMatrix<C64>,
}

impl DensityMatrix {
    /// Validates Hermiticity (1e−10), unit trace (1e−8) and eigenvalues ≥ −1e−8.
    pub fn new(spec: HilbertSpec, mat: DMatrix<C64>) -> Result<Self> {
        if mat.nrows() != spec.dim() || mat.ncols() != spec.dim() {
            return domain("density matrix shape does not match dim");
        }
        let rho = Self { spec, mat };
        let h = rho.hermiticity_error();
        if h > 1e-10 {
            return domain(format!("density matrix not Hermitian (error {h:.2e})"));
        }
        let tr = rho.trace();
        if (tr - 1.0).abs() > 1e-8 {
            return domain(format!("density matrix trace {tr} differs from 1"));
        }
        let lo = rho.min_eigenvalue();
        if lo < -1e-8 {
            return domain(format!("density matrix has eigenvalue {lo:.2e}"));
        }
        Ok(rho)
    }

    pub(crate) fn from_raw(spec: HilbertSpec, mat: DMatrix<C64>) -> Self {
        Self { spec, mat }
    }

    pub fn from_ket(ket: &FockKet) -> Self {
        let v = ket.amps();
        Self { spec: ket.spec(), mat: v * v.adjoint() }
    }

    pub fn spec(&self) -> HilbertSpec {
        self.spec
    }

    pub fn dim(&self) -> usize {
        self.spec.dim()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.mat
    }

    pub fn trace(&self) -> f64 {
        self.mat.diagonal().iter().map(|c| c.re).sum()
    }

    pub fn hermiticity_error(&self) -> f64 {
        (&self.mat - self.mat.adjoint()).iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let herm = (&self.mat + self.mat.adjoint()) * C64::new(0.5, 0.0);
        herm.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn populations(&self) -> Vec<f64> {
        self.mat.diagonal().iter().map(|c| c.re).collect()
    }

    /// ⟨φ|ρ|φ⟩, zero-extending φ or ρ as needed.
    pub fn overlap(&self, phi: &FockKet) -> f64 {
        let d = self.dim().min(phi.dim());
        let v = phi.amps();
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..d {
            let mut row = C64::new(0.0, 0.0);
            for j in 0..d {
                row += self.mat[(i, j)] * v[j];
            }
            acc += v[i].conj() * row;
        }
        acc.re
    }

    pub fn check_valid(&self) -> Result<()> {
        Self::new(self.spec, self.mat.clone()).map(|_| ()).map_err(|e| match e {
            Error::Domain(s) => Error::Domain(format!("invalid state: {s}")),
            other => other,
        })
    }
}

/// Borrowed pure or mixed state.
#[derive(Clone, Copy, Debug)]
pub enum StateRef<'a> {
    Pure(&'a FockKet),
    Mixed(&'a DensityMatrix),
}

impl<'a> From<&'a FockKet> for StateRef<'a> {
    fn from(k: &'a FockKet) -> Self {
        StateRef::Pure(k)
    }
}

impl<'a> From<&'a DensityMatrix> for StateRef<'a> {
    fn from(r: &'a DensityMatrix) -> Self {
        StateRef::Mixed(r)
    }
}

impl StateRef<'_> {
    pub fn dim(&self) -> usize {
        match self {
            StateRef::Pure(k) => k.dim(),
            StateRef::Mixed(r) => r.dim(),
        }
    }

    /// ρ_{mn}.
    pub fn element(&self, m: usize, n: usize) -> C64 {
        match self {
            StateRef::Pure(k) => k.amp(m) * k.amp(n).conj(),
            StateRef::Mixed(r) => r.mat[(m, n)],
        }
    }

    pub fn populations(&self) -> Vec<f64> {
        match self {
            StateRef::Pure(k) => k.amps().iter().map(|c| c.norm_sqr()).collect(),
            StateRef::Mixed(r) => r.populations(),
        }
    }

    pub fn to_density(&self) -> DensityMatrix {
        match self {
            StateRef::Pure(k) => DensityMatrix::from_ket(k),
            StateRef::Mixed(r) => (*r).clone(),
        }
    }
}
