//! States of the amplitude algebra and their GNS representations.
//!
//! A [`State`] is a linear functional given by one complex weight per
//! transition, `rho(f) = sum_alpha w_alpha f(alpha)`. Positivity is certified
//! through the Gram matrix `M[alpha][beta] = rho(delta_alpha* . delta_beta)`,
//! which must be positive semidefinite; its null space is the Gelfand ideal
//! and the GNS data lives on the quotient.

use std::sync::Arc;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::groupoid::{EventId, FiniteGroupoid, TransitionId};
use crate::linalg::{self, C64, CMatrix};
use crate::representation::Operator;

/// Relative eigenvalue threshold below which Gram directions count as null.
const IDEAL_THRESHOLD: f64 = 1e-10;

/// A linear functional on the amplitude algebra in transition coordinates.
#[derive(Debug, Clone)]
pub struct State {
    groupoid: Arc<FiniteGroupoid>,
    coeffs: Vec<C64>,
}

/// Diagnostics from [`State::check`].
#[derive(Debug, Clone)]
pub struct StateDiagnostics {
    pub normalization_defect: f64,
    pub min_gram_eigenvalue: f64,
    pub normalized: bool,
    pub positive: bool,
}

impl StateDiagnostics {
    pub fn is_state(&self) -> bool {
        self.normalized && self.positive
    }
}

impl State {
    pub fn from_coeffs(groupoid: &Arc<FiniteGroupoid>, coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.len() != groupoid.n_transitions() {
            return Err(Error::InvalidSpec(format!(
                "state has {} weights, groupoid has {} transitions",
                coeffs.len(),
                groupoid.n_transitions()
            )));
        }
        Ok(Self {
            groupoid: Arc::clone(groupoid),
            coeffs,
        })
    }

    /// The vector state of an outcome: `rho_a(f) = f(1_a)`.
    pub fn rho_event(groupoid: &Arc<FiniteGroupoid>, a: EventId) -> Result<Self> {
        groupoid.check_event(a)?;
        let mut coeffs = vec![C64::new(0.0, 0.0); groupoid.n_transitions()];
        coeffs[groupoid.unit(a).0] = C64::new(1.0, 0.0);
        Ok(Self {
            groupoid: Arc::clone(groupoid),
            coeffs,
        })
    }

    /// The inner-structure state at an outcome: uniform weight on every
    /// isotropy transition, so that `rho(f)` is the expected value
    /// `<a| pi(f) |a> = sum over G_a of f`. The weight must be 1 (not
    /// `1/|G_a|`) for `rho(unit) = 1`: only `1_a` among the isotropy
    /// transitions carries the algebra unit.
    pub fn rho_inner(groupoid: &Arc<FiniteGroupoid>, a: EventId) -> Result<Self> {
        let iso = groupoid.isotropy_group(a)?;
        let mut coeffs = vec![C64::new(0.0, 0.0); groupoid.n_transitions()];
        for t in iso {
            coeffs[t.0] = C64::new(1.0, 0.0);
        }
        Ok(Self {
            groupoid: Arc::clone(groupoid),
            coeffs,
        })
    }

    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        &self.groupoid
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Evaluate the functional on an element.
    pub fn evaluate(&self, f: &AlgebraElement) -> Result<C64> {
        if !(Arc::ptr_eq(&self.groupoid, f.groupoid()) || *self.groupoid == **f.groupoid()) {
            return Err(Error::GroupoidMismatch);
        }
        Ok(self
            .coeffs
            .iter()
            .zip(f.coeffs())
            .map(|(w, z)| w * z)
            .sum())
    }

    /// Gram matrix `M[alpha][beta] = rho(delta_alpha* . delta_beta)`.
    ///
    /// `delta_alpha* . delta_beta = delta_{alpha^{-1} . beta}` when the
    /// composition is defined, so each entry is a single weight lookup.
    pub fn gram_matrix(&self) -> CMatrix {
        let g = &self.groupoid;
        let nt = g.n_transitions();
        let mut m = CMatrix::zeros(nt, nt);
        for alpha in 0..nt {
            let inv = g.inverse(TransitionId(alpha));
            for beta in 0..nt {
                if let Some(gamma) = g.compose(inv, TransitionId(beta)) {
                    m[(alpha, beta)] = self.coeffs[gamma.0];
                }
            }
        }
        m
    }

    /// Check normalization and positivity, reporting the defects.
    pub fn check(&self, tol: f64) -> StateDiagnostics {
        let unit = AlgebraElement::unit(&self.groupoid);
        let normalization_defect =
            (self.evaluate(&unit).expect("same groupoid") - C64::new(1.0, 0.0)).norm();
        let gram = self.gram_matrix();
        let (eigenvalues, _) = linalg::eigh(&gram);
        let min_gram_eigenvalue = eigenvalues.first().copied().unwrap_or(0.0);
        StateDiagnostics {
            normalization_defect,
            min_gram_eigenvalue,
            normalized: normalization_defect <= tol,
            positive: min_gram_eigenvalue >= -tol,
        }
    }

    pub fn is_state(&self, tol: f64) -> bool {
        self.check(tol).is_state()
    }
}

/// The GNS construction for a state: quotient of the coefficient space by
/// the Gelfand ideal, carrying an inner product, a *-representation, and a
/// cyclic vector that reproduces the state.
#[derive(Debug, Clone)]
pub struct GnsData {
    groupoid: Arc<FiniteGroupoid>,
    /// Dimension of the GNS space.
    pub dim: usize,
    /// Basis of the Gelfand ideal in transition coordinates (columns of the
    /// null space of the Gram matrix).
    pub ideal_basis: Vec<Vec<C64>>,
    /// Map from transition coordinates to quotient coordinates (dim x |G|).
    pub quotient_map: CMatrix,
    /// Positive-definite Gram matrix of the quotient basis (dim x dim).
    pub inner_product: CMatrix,
    /// Quotient coordinates of `unit + ideal`.
    pub cyclic_vector: Vec<C64>,
    /// Isometric section used to lift quotient coordinates (|G| x dim).
    section: CMatrix,
}

/// Run the GNS construction. Fails when the input is not a state.
pub fn gns_construct(rho: &State) -> Result<GnsData> {
    let diagnostics = rho.check(IDEAL_THRESHOLD);
    if !diagnostics.is_state() {
        return Err(Error::Precondition(format!(
            "gns_construct needs a state: normalization defect {:.3e}, min Gram eigenvalue {:.3e}",
            diagnostics.normalization_defect, diagnostics.min_gram_eigenvalue
        )));
    }
    let g = rho.groupoid().clone();
    let gram = rho.gram_matrix();
    let (eigenvalues, vectors) = linalg::eigh(&gram);
    let lambda_max = eigenvalues.last().copied().unwrap_or(0.0).max(0.0);
    let cut = IDEAL_THRESHOLD * lambda_max;

    let mut ideal_basis = Vec::new();
    let mut kept = Vec::new();
    for (i, &lambda) in eigenvalues.iter().enumerate() {
        if lambda <= cut {
            ideal_basis.push(vectors.column(i).iter().copied().collect::<Vec<C64>>());
        } else {
            kept.push(i);
        }
    }
    let dim = kept.len();
    let nt = g.n_transitions();
    let mut quotient_map = CMatrix::zeros(dim, nt);
    let mut section = CMatrix::zeros(nt, dim);
    let mut inner_product = CMatrix::zeros(dim, dim);
    for (row, &i) in kept.iter().enumerate() {
        for t in 0..nt {
            quotient_map[(row, t)] = vectors[(t, i)].conj();
            section[(t, row)] = vectors[(t, i)];
        }
        inner_product[(row, row)] = C64::new(eigenvalues[i], 0.0);
    }
    let unit = AlgebraElement::unit(&g);
    let unit_vec = CMatrix::from_column_slice(nt, 1, unit.coeffs());
    let cyclic = &quotient_map * unit_vec;
    Ok(GnsData {
        groupoid: g,
        dim,
        ideal_basis,
        quotient_map,
        inner_product,
        cyclic_vector: cyclic.iter().copied().collect(),
        section,
    })
}

impl GnsData {
    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        &self.groupoid
    }

    /// Matrix of left convolution by `f` on transition coordinates.
    fn left_convolution_matrix(&self, f: &AlgebraElement) -> CMatrix {
        let g = &self.groupoid;
        let nt = g.n_transitions();
        let mut m = CMatrix::zeros(nt, nt);
        for e in 0..g.n_events() {
            let ev = EventId(e);
            for &alpha in g.outgoing(ev) {
                let fa = f.coeff(alpha);
                if fa == C64::new(0.0, 0.0) {
                    continue;
                }
                for &beta in g.incoming(ev) {
                    let gamma = g.compose(alpha, beta).expect("composable by construction");
                    m[(gamma.0, beta.0)] += fa;
                }
            }
        }
        m
    }

    /// The GNS representation of `f` on quotient coordinates.
    pub fn represent(&self, f: &AlgebraElement) -> Result<Operator> {
        if !(Arc::ptr_eq(&self.groupoid, f.groupoid()) || *self.groupoid == **f.groupoid()) {
            return Err(Error::GroupoidMismatch);
        }
        let l = self.left_convolution_matrix(f);
        Ok(Operator::new(&self.quotient_map * l * &self.section))
    }

    /// Quotient inner product `<x, y>` under the stored Gram matrix.
    pub fn quotient_inner(&self, x: &[C64], y: &[C64]) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..self.dim {
            acc += x[i].conj() * self.inner_product[(i, i)] * y[i];
        }
        acc
    }

    /// `<cyclic, pi(f) cyclic>`, which reproduces `rho(f)`.
    pub fn reproduce(&self, f: &AlgebraElement) -> Result<C64> {
        let rep = self.represent(f)?;
        let v = CMatrix::from_column_slice(self.dim, 1, &self.cyclic_vector);
        let w = rep.matrix() * v;
        Ok(self.quotient_inner(&self.cyclic_vector, w.as_slice()))
    }
}

/// The right action of the isotropy group on functions over the outgoing
/// spray: `[mu(gamma) psi](alpha) = psi(alpha . gamma)`. Returns each group
/// element with its permutation matrix in the `G_+(a)` basis (storage order).
pub fn isotropy_action(
    g: &Arc<FiniteGroupoid>,
    a: EventId,
) -> Result<Vec<(TransitionId, Operator)>> {
    let iso = g.isotropy_group(a)?;
    let spray: Vec<TransitionId> = g.outgoing(a).to_vec();
    let index_of = |t: TransitionId| spray.iter().position(|&s| s == t).expect("in spray");
    let mut action = Vec::with_capacity(iso.len());
    for gamma in iso {
        let mut m = CMatrix::zeros(spray.len(), spray.len());
        for (row, &alpha) in spray.iter().enumerate() {
            let moved = g
                .compose(alpha, gamma)
                .expect("gamma is a loop at the source of alpha");
            m[(row, index_of(moved))] = C64::new(1.0, 0.0);
        }
        action.push((gamma, Operator::new(m)));
    }
    Ok(action)
}

/// Group average of the isotropy action: the orthogonal projector onto the
/// trivial isotypic component of `mu_a`.
pub fn trivial_component_projector(g: &Arc<FiniteGroupoid>, a: EventId) -> Result<Operator> {
    let action = isotropy_action(g, a)?;
    let n = g.outgoing(a).len();
    let mut m = CMatrix::zeros(n, n);
    for (_, op) in &action {
        m += op.matrix();
    }
    m /= C64::new(action.len() as f64, 0.0);
    Ok(Operator::new(m))
}

/// Both sides of the isometry between the averaged GNS functions at `a` and
/// functions on the event space.
///
/// `phi` and `psi` are functions on `G_+(a)` in storage order. The left side
/// is the quotient inner product of their isotropy averages; the right side
/// pairs their projections to the event space, where the class of `alpha`
/// goes to `t(alpha)` and picks up a `sqrt(|G_a|)` weight so the map is an
/// isometry.
pub fn theorem1_isometry(
    g: &Arc<FiniteGroupoid>,
    a: EventId,
    phi: &[C64],
    psi: &[C64],
) -> Result<(C64, C64)> {
    g.check_event(a)?;
    if !g.is_connected() {
        return Err(Error::Disconnected(
            g.component_representatives().iter().map(|e| e.0).collect(),
        ));
    }
    let spray = g.outgoing(a);
    if phi.len() != spray.len() || psi.len() != spray.len() {
        return Err(Error::Parameter(format!(
            "functions on G_+(a) need {} values",
            spray.len()
        )));
    }
    let iso = g.isotropy_group(a)?;
    let m = iso.len() as f64;
    let index_of = |t: TransitionId| spray.iter().position(|&s| s == t).expect("in spray");

    let average = |x: &[C64]| -> Vec<C64> {
        spray
            .iter()
            .map(|&alpha| {
                let sum: C64 = iso
                    .iter()
                    .map(|&gamma| x[index_of(g.compose(alpha, gamma).expect("loop at source"))])
                    .sum();
                sum / C64::new(m.sqrt(), 0.0)
            })
            .collect()
    };
    let phi_avg = average(phi);
    let psi_avg = average(psi);
    let lhs: C64 = phi_avg
        .iter()
        .zip(&psi_avg)
        .map(|(p, q)| p.conj() * q)
        .sum();

    // Project to the event space through a representative per target.
    let mut rhs = C64::new(0.0, 0.0);
    for e in 0..g.n_events() {
        let target = EventId(e);
        let rep = spray
            .iter()
            .position(|&t| g.target(t) == target)
            .expect("connected groupoid reaches every event");
        let p = phi_avg[rep] * C64::new(m.sqrt(), 0.0);
        let q = psi_avg[rep] * C64::new(m.sqrt(), 0.0);
        rhs += p.conj() * q;
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn random_element(g: &Arc<FiniteGroupoid>, rng: &mut StdRng) -> AlgebraElement {
        let coeffs = (0..g.n_transitions())
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        AlgebraElement::from_coeffs(g, coeffs).unwrap()
    }

    #[test]
    fn rho_event_basics() {
        let g = FiniteGroupoid::pair(2).unwrap();
        let rho = State::rho_event(&g, EventId(0)).unwrap();
        let unit = AlgebraElement::unit(&g);
        assert_eq!(rho.evaluate(&unit).unwrap(), c(1.0, 0.0));

        // rho_+(f) = x0 + x3 for the Hermitean element.
        let alpha = g.pair_transition(EventId(1), EventId(0)).unwrap();
        let (x0, x1, x2, x3) = (0.3, 0.1, -0.4, 0.8);
        let mut f = AlgebraElement::zeros(&g);
        f.set_coeff(g.unit(EventId(0)), c(x0 + x3, 0.0));
        f.set_coeff(g.unit(EventId(1)), c(x0 - x3, 0.0));
        f.set_coeff(alpha, c(x1, x2));
        f.set_coeff(g.inverse(alpha), c(x1, -x2));
        assert_abs_diff_eq!(rho.evaluate(&f).unwrap().re, x0 + x3, epsilon = 1e-15);
    }

    #[test]
    fn rho_event_gram_rank() {
        let g = FiniteGroupoid::pair(3).unwrap();
        let rho = State::rho_event(&g, EventId(1)).unwrap();
        let gram = rho.gram_matrix();
        let (eigenvalues, _) = linalg::eigh(&gram);
        assert!(eigenvalues[0] >= -1e-12);
        let rank = eigenvalues.iter().filter(|&&l| l > 1e-10).count();
        assert_eq!(rank, 3);
    }

    #[test]
    fn rho_inner_matches_rho_event_without_isotropy() {
        let g = FiniteGroupoid::pair(4).unwrap();
        let a = EventId(2);
        let inner = State::rho_inner(&g, a).unwrap();
        let event = State::rho_event(&g, a).unwrap();
        assert_eq!(inner.coeffs(), event.coeffs());
    }

    #[test]
    fn rho_inner_uniform_weights() {
        let g = FiniteGroupoid::pair_times_group(1, 2).unwrap();
        let rho = State::rho_inner(&g, EventId(0)).unwrap();
        let nonzero: Vec<C64> = rho
            .coeffs()
            .iter()
            .copied()
            .filter(|z| z.norm() > 0.0)
            .collect();
        assert_eq!(nonzero, vec![c(1.0, 0.0), c(1.0, 0.0)]);
        assert!(rho.is_state(1e-10));

        let g2 = FiniteGroupoid::pair_times_group(2, 3).unwrap();
        let rho2 = State::rho_inner(&g2, EventId(1)).unwrap();
        assert!(rho2.is_state(1e-10));

        // rho_inner evaluates amplitudes to their expected value at `a`.
        let mut rng = StdRng::seed_from_u64(3);
        let f = random_element(&g2, &mut rng);
        let direct = crate::representation::expected_value(&f, EventId(1)).unwrap();
        assert!((rho2.evaluate(&f).unwrap() - direct).norm() < 1e-15);
    }

    #[test]
    fn is_state_diagnostics() {
        let g = FiniteGroupoid::pair(3).unwrap();
        assert!(State::rho_event(&g, EventId(0)).unwrap().is_state(1e-10));

        let mut coeffs = vec![c(0.0, 0.0); g.n_transitions()];
        coeffs[g.unit(EventId(0)).0] = c(-1.0, 0.0);
        let bad = State::from_coeffs(&g, coeffs).unwrap();
        let diag = bad.check(1e-10);
        assert!(!diag.is_state());
        assert_abs_diff_eq!(diag.normalization_defect, 2.0, epsilon = 1e-14);
    }

    #[test]
    fn convex_mixtures_are_states() {
        let g = FiniteGroupoid::pair(3).unwrap();
        let ra = State::rho_event(&g, EventId(0)).unwrap();
        let rb = State::rho_event(&g, EventId(2)).unwrap();
        for &p in &[0.0, 0.25, 0.5, 0.9, 1.0] {
            let coeffs: Vec<C64> = ra
                .coeffs()
                .iter()
                .zip(rb.coeffs())
                .map(|(x, y)| x * p + y * (1.0 - p))
                .collect();
            let mix = State::from_coeffs(&g, coeffs).unwrap();
            assert!(mix.is_state(1e-10), "p = {p}");
        }
    }

    #[test]
    fn gns_of_event_state_on_pair() {
        let n = 4;
        let g = FiniteGroupoid::pair(n).unwrap();
        let a = EventId(1);
        let rho = State::rho_event(&g, a).unwrap();
        let gns = gns_construct(&rho).unwrap();
        assert_eq!(gns.dim, n);
        assert_eq!(gns.ideal_basis.len(), g.n_transitions() - n);
        // Ideal = functions vanishing on G_+(a): every basis vector has
        // support off the outgoing spray.
        let spray = g.outgoing(a);
        for v in &gns.ideal_basis {
            for &t in spray {
                assert!(v[t.0].norm() < 1e-12);
            }
        }
    }

    #[test]
    fn gns_point_mass_on_trivial_groupoid() {
        let g = FiniteGroupoid::pair(1).unwrap();
        let rho = State::rho_event(&g, EventId(0)).unwrap();
        let gns = gns_construct(&rho).unwrap();
        assert_eq!(gns.dim, 1);
        let f = AlgebraElement::from_coeffs(&g, vec![c(0.3, -0.2)]).unwrap();
        let rep = gns.represent(&f).unwrap();
        assert_abs_diff_eq!((rep.entry(0, 0) - c(0.3, -0.2)).norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn gns_rejects_non_states() {
        let g = FiniteGroupoid::pair(2).unwrap();
        let bad = State::from_coeffs(&g, vec![c(0.0, 0.0); 4]).unwrap();
        assert!(matches!(gns_construct(&bad), Err(Error::Precondition(_))));
    }

    #[test]
    fn gns_representation_is_star_homomorphism() {
        let g = FiniteGroupoid::pair_times_group(2, 2).unwrap();
        let rho = State::rho_inner(&g, EventId(0)).unwrap();
        let gns = gns_construct(&rho).unwrap();
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let f = random_element(&g, &mut rng);
            let h = random_element(&g, &mut rng);
            let lhs = gns.represent(&f.convolve(&h).unwrap()).unwrap();
            let rhs = gns.represent(&f).unwrap().mul(&gns.represent(&h).unwrap());
            assert!(lhs.sub(&rhs).max_abs() < 1e-10);

            // Adjoint with respect to the quotient Gram matrix.
            let rf = gns.represent(&f).unwrap();
            let rf_star = gns.represent(&f.involution()).unwrap();
            let lam = &gns.inner_product;
            let left = lam * rf.matrix();
            let right = rf_star.matrix().adjoint() * lam;
            assert!(linalg::max_abs(&(left - right)) < 1e-10);
        }
    }

    #[test]
    fn gns_reproduces_the_state() {
        let g = FiniteGroupoid::pair_times_group(2, 2).unwrap();
        for rho in [
            State::rho_event(&g, EventId(1)).unwrap(),
            State::rho_inner(&g, EventId(0)).unwrap(),
        ] {
            let gns = gns_construct(&rho).unwrap();
            let mut rng = StdRng::seed_from_u64(11);
            for _ in 0..100 {
                let f = random_element(&g, &mut rng);
                let reproduced = gns.reproduce(&f).unwrap();
                let direct = rho.evaluate(&f).unwrap();
                assert!((reproduced - direct).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn gns_unitarily_equivalent_to_fundamental_on_pair() {
        use crate::representation::fundamental_rep;
        for n in [2usize, 3, 5] {
            let g = FiniteGroupoid::pair(n).unwrap();
            let a = EventId(0);
            let rho = State::rho_event(&g, a).unwrap();
            let gns = gns_construct(&rho).unwrap();
            assert_eq!(gns.dim, n);

            // Quotient coordinates of the delta functions over G_+(a),
            // ordered by target event, give an orthonormal intertwiner.
            let nt = g.n_transitions();
            let mut t_cols = CMatrix::zeros(n, n);
            for b in 0..n {
                let alpha = g.pair_transition(EventId(b), a).unwrap();
                let mut e = CMatrix::zeros(nt, 1);
                e[(alpha.0, 0)] = c(1.0, 0.0);
                let q = &gns.quotient_map * e;
                t_cols.set_column(b, &q.column(0));
            }
            // Orthonormality under the quotient Gram matrix.
            let gram = t_cols.adjoint() * &gns.inner_product * &t_cols;
            assert!(linalg::max_abs(&(gram - linalg::identity(n))) < 1e-10);

            // Intertwines the GNS and fundamental representations on the
            // delta basis: R(f) T = T pi(f).
            for t in 0..nt {
                let f = AlgebraElement::delta(&g, TransitionId(t)).unwrap();
                let lhs = gns.represent(&f).unwrap().matrix() * &t_cols;
                let rhs = &t_cols * fundamental_rep(&f).matrix();
                assert!(linalg::max_abs(&(lhs - rhs)) < 1e-10);
            }
        }
    }

    #[test]
    fn isotropy_action_trivial_on_pair() {
        let g = FiniteGroupoid::pair(3).unwrap();
        let action = isotropy_action(&g, EventId(1)).unwrap();
        assert_eq!(action.len(), 1);
        assert!(action[0].1.sub(&Operator::identity(3)).max_abs() == 0.0);
    }

    #[test]
    fn isotropy_action_is_regular_for_cyclic_group() {
        let g = FiniteGroupoid::pair_times_group(1, 3).unwrap();
        let action = isotropy_action(&g, EventId(0)).unwrap();
        assert_eq!(action.len(), 3);
        for (gamma, op) in &action {
            // Permutation matrix rows.
            for row in 0..3 {
                let ones = (0..3)
                    .filter(|&col| (op.entry(row, col) - c(1.0, 0.0)).norm() < 1e-15)
                    .count();
                assert_eq!(ones, 1);
            }
            // mu(gamma^{-1}) = mu(gamma)^{-1}.
            let inv = g.inverse(*gamma);
            let op_inv = &action.iter().find(|(t, _)| *t == inv).unwrap().1;
            assert!(op.mul(op_inv).sub(&Operator::identity(3)).max_abs() < 1e-15);
        }
        // Homomorphism: mu(gamma) mu(gamma') = mu(gamma . gamma').
        for (g1, m1) in &action {
            for (g2, m2) in &action {
                let composed = g.compose(*g1, *g2).unwrap();
                let expected = &action.iter().find(|(t, _)| *t == composed).unwrap().1;
                assert!(m1.mul(m2).sub(expected).max_abs() < 1e-15);
            }
        }
    }

    #[test]
    fn trivial_projector_properties() {
        let g = FiniteGroupoid::pair(3).unwrap();
        let p = trivial_component_projector(&g, EventId(0)).unwrap();
        assert!(p.sub(&Operator::identity(3)).max_abs() == 0.0);

        let g2 = FiniteGroupoid::pair_times_group(2, 2).unwrap();
        let p2 = trivial_component_projector(&g2, EventId(0)).unwrap();
        // Idempotent of rank |orbit| = 2.
        assert!(p2.mul(&p2).sub(&p2).max_abs() < 1e-12);
        let rank = p2
            .hermitian_eigenvalues()
            .iter()
            .filter(|&&l| l > 0.5)
            .count();
        assert_eq!(rank, 2);

        let g3 = FiniteGroupoid::pair_times_group(3, 4).unwrap();
        let p3 = trivial_component_projector(&g3, EventId(2)).unwrap();
        assert!(p3.mul(&p3).sub(&p3).max_abs() < 1e-12);
        let rank3 = p3
            .hermitian_eigenvalues()
            .iter()
            .filter(|&&l| l > 0.5)
            .count();
        assert_eq!(rank3, 3);
    }

    #[test]
    fn theorem1_on_pair_indicator() {
        let g = FiniteGroupoid::pair(2).unwrap();
        let spray_len = g.outgoing(EventId(0)).len();
        let mut phi = vec![c(0.0, 0.0); spray_len];
        phi[1] = c(1.0, 0.0);
        let (lhs, rhs) = theorem1_isometry(&g, EventId(0), &phi, &phi).unwrap();
        assert_abs_diff_eq!((lhs - c(1.0, 0.0)).norm(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!((rhs - c(1.0, 0.0)).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn theorem1_zero_function() {
        let g = FiniteGroupoid::pair(3).unwrap();
        let zero = vec![c(0.0, 0.0); 3];
        let (lhs, rhs) = theorem1_isometry(&g, EventId(0), &zero, &zero).unwrap();
        assert_eq!(lhs, c(0.0, 0.0));
        assert_eq!(rhs, c(0.0, 0.0));
    }

    #[test]
    fn theorem1_random_pairs_agree() {
        let g = FiniteGroupoid::pair_times_group(2, 2).unwrap();
        let len = g.outgoing(EventId(0)).len();
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..100 {
            let phi: Vec<C64> = (0..len)
                .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let psi: Vec<C64> = (0..len)
                .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let (lhs, rhs) = theorem1_isometry(&g, EventId(0), &phi, &psi).unwrap();
            assert!((lhs - rhs).norm() < 1e-10);
        }
    }

    #[test]
    fn theorem1_rejects_disconnected() {
        let g = FiniteGroupoid::from_graph(3, &[(0, 1)]).unwrap();
        let phi = vec![c(1.0, 0.0); g.outgoing(EventId(0)).len()];
        match theorem1_isometry(&g, EventId(0), &phi, &phi) {
            Err(Error::Disconnected(reps)) => {
                assert_eq!(reps, vec![0, 2]);
            }
            other => panic!("expected Disconnected, got {other:?}"),
        }
    }
}
