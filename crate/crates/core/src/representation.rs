//! The fundamental representation on the event Hilbert space.
//!
//! `pi(f)` acts on the span of the event basis `|a>` by
//! `pi(f)|a> = sum over alpha with source a of f(alpha) |t(alpha)>`, so the
//! matrix entry `(a', a)` is the summed amplitude of all transitions
//! `a -> a'`. Real elements map to Hermitean matrices; on complete pair
//! groupoids the representation is a bijection onto full matrix algebras.

use crate::algebra::AlgebraElement;
use crate::error::Result;
use crate::groupoid::{EventId, TransitionId};
use crate::linalg::{self, C64, CMatrix};

/// Dense complex matrix over the event basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    entries: CMatrix,
}

impl Operator {
    pub fn new(entries: CMatrix) -> Self {
        assert_eq!(entries.nrows(), entries.ncols(), "operators are square");
        Self { entries }
    }

    pub fn identity(dim: usize) -> Self {
        Self::new(linalg::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.entries[(row, col)]
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        Self::new(self.entries.adjoint())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.entries * &other.entries)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(&self.entries - &other.entries)
    }

    pub fn max_abs(&self) -> f64 {
        linalg::max_abs(&self.entries)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        linalg::hermiticity_defect(&self.entries)
    }

    pub fn operator_norm(&self) -> f64 {
        linalg::operator_norm(&self.entries)
    }

    /// Eigenvalues of a Hermitian operator, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        linalg::eigh(&self.entries).0
    }
}

/// Operator norm together with how it was obtained.
#[derive(Debug, Clone)]
pub struct NormReport {
    pub value: f64,
    pub method: String,
}

/// The fundamental representation `pi(f)`.
///
/// Entries accumulate one inverse pair at a time, in min-index order, so
/// that `pi(f*) = pi(f)†` holds exactly entrywise (conjugation distributes
/// over each grouped partial sum).
pub fn fundamental_rep(f: &AlgebraElement) -> Operator {
    let g = f.groupoid();
    let n = g.n_events();
    let mut m = CMatrix::zeros(n, n);
    for (i, tr) in g.transitions().iter().enumerate() {
        let inv = g.inverse(TransitionId(i));
        if inv.0 < i {
            continue;
        }
        if inv.0 == i {
            m[(tr.target.0, tr.source.0)] += f.coeffs()[i];
        } else if tr.source == tr.target {
            m[(tr.target.0, tr.source.0)] += f.coeffs()[i] + f.coeffs()[inv.0];
        } else {
            m[(tr.target.0, tr.source.0)] += f.coeffs()[i];
            let itr = g.transition(inv);
            m[(itr.target.0, itr.source.0)] += f.coeffs()[inv.0];
        }
    }
    Operator::new(m)
}

/// Summed amplitude `<a'| pi(f) |a>` of the transitions `a -> a'`.
pub fn amplitude(f: &AlgebraElement, a: EventId, a_prime: EventId) -> Result<C64> {
    let g = f.groupoid();
    g.check_event(a)?;
    g.check_event(a_prime)?;
    Ok(g.transitions_between(a, a_prime)
        .into_iter()
        .map(|t| f.coeff(t))
        .sum())
}

/// Expected value of `f` at the event `a`: the sum over the isotropy group.
pub fn expected_value(f: &AlgebraElement, a: EventId) -> Result<C64> {
    let g = f.groupoid();
    Ok(g.isotropy_group(a)?.into_iter().map(|t| f.coeff(t)).sum())
}

/// Largest singular value of `pi(f)`, computed through the eigendecomposition
/// of the Gram matrix. On groupoids with nontrivial isotropy `pi` is not
/// faithful and the value is only a seminorm; the report says so.
pub fn cstar_norm(f: &AlgebraElement) -> NormReport {
    let op = fundamental_rep(f);
    let faithful = representation_is_faithful(f);
    let method = if faithful {
        "largest singular value of the fundamental representation".to_string()
    } else {
        "largest singular value of the fundamental representation \
         (seminorm: representation is not faithful on this groupoid)"
            .to_string()
    };
    NormReport {
        value: op.operator_norm(),
        method,
    }
}

/// `pi` is faithful exactly when no two transitions share both endpoints.
fn representation_is_faithful(f: &AlgebraElement) -> bool {
    let g = f.groupoid();
    for a in 0..g.n_events() {
        let mut seen = vec![false; g.n_events()];
        for &t in g.outgoing(EventId(a)) {
            let to = g.target(t);
            if seen[to.0] {
                return false;
            }
            seen[to.0] = true;
        }
    }
    true
}

/// Whether `f` is an observable: `max |f - f*| <= tol`.
pub fn is_observable(f: &AlgebraElement, tol: f64) -> bool {
    f.observable_defect() <= tol
}

/// Pull an operator back to an algebra element on a complete pair groupoid,
/// where `pi` is a bijection.
pub fn element_from_operator(
    g: &std::sync::Arc<crate::groupoid::FiniteGroupoid>,
    op: &Operator,
) -> Result<AlgebraElement> {
    if !g.is_complete_pair() || g.n_events() != op.dim() {
        return Err(crate::error::Error::UnsupportedFrame(
            "operator pullback needs a complete pair groupoid of matching dimension".into(),
        ));
    }
    let mut f = AlgebraElement::zeros(g);
    for t in 0..g.n_transitions() {
        let id = TransitionId(t);
        let tr = g.transition(id);
        f.set_coeff(id, op.entry(tr.target.0, tr.source.0));
    }
    Ok(f)
}
