//! Closed-system dynamics: inner derivations, the Heisenberg flow of
//! amplitudes, a fixed-step fourth-order integrator, and Landau-von Neumann
//! evolution of density matrices.
//!
//! Sign conventions. Observables evolve by `df/dt = i[h, f]`, i.e.
//! `pi(f(t)) = e^{iHt} pi(f) e^{-iHt}`; density matrices evolve by
//! `d rho/dt = i[rho, H]`, i.e. `rho(t) = e^{-iHt} rho e^{iHt}`. The two are
//! dual: `rho(Phi_t(f)) = (evolved rho)(f)` identically, and the annihilation
//! function of the oscillator picks up the phase `e^{-it}` under `h_0`.
//!
//! The flow is computed by exponentiating the derivation on coefficient
//! space (scaling-and-squaring Pade), which also works when the fundamental
//! representation is unfaithful; unitary conjugation through `pi` serves as
//! an independent cross-check on pair groupoids.

use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::groupoid::{EventId, FiniteGroupoid};
use crate::linalg::{self, C64, CMatrix};
use crate::representation::{fundamental_rep, is_observable, Operator};

/// A Hamiltonian: an observable element of the amplitude algebra.
#[derive(Debug, Clone)]
pub struct Hamiltonian {
    element: AlgebraElement,
}

impl Hamiltonian {
    /// Fails unless `h* = h` within 1e-12.
    pub fn new(element: AlgebraElement) -> Result<Self> {
        if !is_observable(&element, 1e-12) {
            return Err(Error::Precondition(format!(
                "Hamiltonian must be an observable; self-adjointness defect {:.3e}",
                element.observable_defect()
            )));
        }
        Ok(Self { element })
    }

    pub fn element(&self) -> &AlgebraElement {
        &self.element
    }

    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        self.element.groupoid()
    }

    /// `pi(h)`, the Hamiltonian operator on the event space.
    pub fn operator(&self) -> Operator {
        fundamental_rep(&self.element)
    }
}

/// The inner derivation `D_h f = i[h, f] = i(h*f - f*h)`.
pub fn derivation(h: &Hamiltonian, f: &AlgebraElement) -> Result<AlgebraElement> {
    let hf = h.element.convolve(f)?;
    let fh = f.convolve(&h.element)?;
    Ok(hf.sub(&fh)?.scale(C64::i()))
}

/// Matrix of the derivation `i[h, .]` on transition coordinates.
pub fn derivation_matrix(h: &Hamiltonian) -> CMatrix {
    let g = h.groupoid();
    let nt = g.n_transitions();
    let mut m = CMatrix::zeros(nt, nt);
    // Left and right convolution by h, assembled from the composition table.
    for e in 0..g.n_events() {
        let ev = EventId(e);
        for &alpha in g.outgoing(ev) {
            let ha = h.element.coeff(alpha);
            if ha == C64::new(0.0, 0.0) {
                continue;
            }
            for &beta in g.incoming(ev) {
                let gamma = g.compose(alpha, beta).expect("composable");
                // (h * f)(gamma) picks up h(alpha) f(beta)
                m[(gamma.0, beta.0)] += C64::i() * ha;
            }
        }
        for &beta in g.incoming(ev) {
            let hb = h.element.coeff(beta);
            if hb == C64::new(0.0, 0.0) {
                continue;
            }
            for &alpha in g.outgoing(ev) {
                let gamma = g.compose(alpha, beta).expect("composable");
                // (f * h)(gamma) picks up f(alpha) h(beta)
                m[(gamma.0, alpha.0)] -= C64::i() * hb;
            }
        }
    }
    m
}

/// The one-parameter automorphism flow at time `t` as a matrix on
/// transition coordinates: `exp(t D_h)`.
pub fn flow_matrix(h: &Hamiltonian, t: f64) -> CMatrix {
    let d = derivation_matrix(h);
    linalg::expm(&(d * C64::new(t, 0.0)))
}

/// Evolve an amplitude for time `t` along the Hamiltonian flow.
pub fn flow(h: &Hamiltonian, t: f64, f: &AlgebraElement) -> Result<AlgebraElement> {
    let g = h.groupoid();
    if !(Arc::ptr_eq(g, f.groupoid()) || **g == **f.groupoid()) {
        return Err(Error::GroupoidMismatch);
    }
    let m = flow_matrix(h, t);
    let v = CMatrix::from_column_slice(f.coeffs().len(), 1, f.coeffs());
    let w = m * v;
    AlgebraElement::from_coeffs(g, w.iter().copied().collect())
}

/// Apply a precomputed flow matrix (useful when evaluating many times).
pub fn apply_flow_matrix(
    g: &Arc<FiniteGroupoid>,
    m: &CMatrix,
    f: &AlgebraElement,
) -> Result<AlgebraElement> {
    let v = CMatrix::from_column_slice(f.coeffs().len(), 1, f.coeffs());
    let w = m * v;
    AlgebraElement::from_coeffs(g, w.iter().copied().collect())
}

/// Integrate `df/dt = i[h, f]` with the classical fourth-order scheme,
/// one step per grid interval. The grid must be strictly increasing; the
/// caller controls accuracy through the grid spacing.
pub fn heisenberg_integrate(
    h: &Hamiltonian,
    f0: &AlgebraElement,
    t_grid: &[f64],
) -> Result<Vec<AlgebraElement>> {
    if t_grid.is_empty() {
        return Err(Error::Parameter("time grid is empty".into()));
    }
    if t_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Parameter(
            "time grid must be strictly increasing".into(),
        ));
    }
    let g = h.groupoid();
    if !(Arc::ptr_eq(g, f0.groupoid()) || **g == **f0.groupoid()) {
        return Err(Error::GroupoidMismatch);
    }
    let d = derivation_matrix(h);
    let nt = g.n_transitions();
    let mut current = CMatrix::from_column_slice(nt, 1, f0.coeffs());
    let mut series = Vec::with_capacity(t_grid.len());
    series.push(f0.clone());
    for w in t_grid.windows(2) {
        let dt = C64::new(w[1] - w[0], 0.0);
        let k1 = &d * &current;
        let k2 = &d * (&current + &k1 * (dt * 0.5));
        let k3 = &d * (&current + &k2 * (dt * 0.5));
        let k4 = &d * (&current + &k3 * dt);
        current += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
        series.push(AlgebraElement::from_coeffs(
            g,
            current.iter().copied().collect(),
        )?);
    }
    Ok(series)
}

/// A density matrix: self-adjoint, unit trace, positive semidefinite.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::Precondition("density matrix must be square".into()));
        }
        let herm = linalg::hermiticity_defect(&matrix);
        if herm > 1e-12 {
            return Err(Error::Precondition(format!(
                "density matrix must be self-adjoint; defect {herm:.3e}"
            )));
        }
        let trace_defect = (matrix.trace() - C64::new(1.0, 0.0)).norm();
        if trace_defect > 1e-12 {
            return Err(Error::Precondition(format!(
                "density matrix must have unit trace; defect {trace_defect:.3e}"
            )));
        }
        let (eigenvalues, _) = linalg::eigh(&matrix);
        if eigenvalues.first().copied().unwrap_or(0.0) < -1e-10 {
            return Err(Error::Precondition(format!(
                "density matrix must be positive semidefinite; min eigenvalue {:.3e}",
                eigenvalues[0]
            )));
        }
        Ok(Self { matrix })
    }

    pub fn diagonal(populations: &[f64]) -> Result<Self> {
        let n = populations.len();
        let mut m = CMatrix::zeros(n, n);
        for (i, &p) in populations.iter().enumerate() {
            m[(i, i)] = C64::new(p, 0.0);
        }
        Self::new(m)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::eigh(&self.matrix).0
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }
}

fn require_self_adjoint(h: &Operator) -> Result<()> {
    let defect = h.hermiticity_defect();
    if defect > 1e-12 {
        return Err(Error::Precondition(format!(
            "Hamiltonian operator must be self-adjoint; defect {defect:.3e}"
        )));
    }
    Ok(())
}

/// Landau-von Neumann evolution `d rho/dt = i[rho, H]`:
/// `rho(t) = e^{-iHt} rho e^{iHt}` for self-adjoint `H`.
pub fn evolve_density(h: &Operator, rho0: &DensityMatrix, t: f64) -> Result<DensityMatrix> {
    require_self_adjoint(h)?;
    if h.dim() != rho0.dim() {
        return Err(Error::Precondition(format!(
            "dimension mismatch: H is {}x{}, rho is {}x{}",
            h.dim(),
            h.dim(),
            rho0.dim(),
            rho0.dim()
        )));
    }
    let u = linalg::exp_i_hermitian(h.matrix(), -t);
    let evolved = &u * rho0.matrix() * u.adjoint();
    // Unitary conjugation preserves the invariants up to round-off; clean
    // the Hermitean part so the constructor accepts it.
    let symmetrized = (&evolved + evolved.adjoint()).scale(0.5);
    DensityMatrix::new(symmetrized)
}

/// Right-hand side of the Landau-von Neumann equation, `i[rho, H]`.
pub fn density_derivative(h: &Operator, rho: &DensityMatrix) -> Result<CMatrix> {
    require_self_adjoint(h)?;
    let commutator = rho.matrix() * h.matrix() - h.matrix() * rho.matrix();
    Ok(commutator * C64::i())
}

/// Report from sampling a candidate positive normalized map.
#[derive(Debug, Clone)]
pub struct PositiveMapReport {
    /// `max |Phi(1) - 1|` over coefficients.
    pub unit_defect: f64,
    /// Smallest eigenvalue of `pi(Phi(f* f))` seen across samples.
    pub worst_min_eigenvalue: f64,
    pub samples: usize,
}

impl PositiveMapReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.unit_defect <= tol && self.worst_min_eigenvalue >= -tol
    }
}

/// Sample random elements and check that `Phi` fixes the unit and maps
/// positive elements to elements with positive semidefinite image under the
/// fundamental representation.
pub fn check_positive_normalized_map<F>(
    g: &Arc<FiniteGroupoid>,
    phi: F,
    samples: usize,
    seed: u64,
) -> Result<PositiveMapReport>
where
    F: Fn(&AlgebraElement) -> Result<AlgebraElement>,
{
    if samples == 0 {
        return Err(Error::Parameter("samples must be >= 1".into()));
    }
    let unit = AlgebraElement::unit(g);
    let unit_defect = phi(&unit)?.distance(&unit)?;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut worst = f64::INFINITY;
    for _ in 0..samples {
        let coeffs: Vec<C64> = (0..g.n_transitions())
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let f = AlgebraElement::from_coeffs(g, coeffs)?;
        let positive = f.involution().convolve(&f)?;
        let image = phi(&positive)?;
        let (eigenvalues, _) = linalg::eigh(fundamental_rep(&image).matrix());
        worst = worst.min(eigenvalues.first().copied().unwrap_or(0.0));
    }
    Ok(PositiveMapReport {
        unit_defect,
        worst_min_eigenvalue: worst,
        samples,
    })
}
