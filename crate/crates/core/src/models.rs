//! The concrete systems: the two-event qubit groupoid with its Pauli
//! coordinates and equations of motion, the N-level truncation of the
//! ladder-generated oscillator, and frame-change transition functions.

use std::sync::Arc;

use crate::algebra::AlgebraElement;
use crate::dynamics::Hamiltonian;
use crate::error::{Error, Result};
use crate::groupoid::{EventId, FiniteGroupoid, TransitionId};
use crate::linalg::{self, C64, CMatrix};
use crate::representation::{element_from_operator, fundamental_rep, is_observable, Operator};

/// Event index of `+` in [`qubit`].
pub const Q_PLUS: EventId = EventId(0);
/// Event index of `-` in [`qubit`].
pub const Q_MINUS: EventId = EventId(1);
/// Transition index of the unit at `+`.
pub const Q_UNIT_PLUS: TransitionId = TransitionId(0);
/// Transition index of the unit at `-`.
pub const Q_UNIT_MINUS: TransitionId = TransitionId(1);
/// Transition index of `alpha: + -> -`.
pub const Q_ALPHA: TransitionId = TransitionId(2);
/// Transition index of `alpha^{-1}: - -> +`.
pub const Q_ALPHA_INV: TransitionId = TransitionId(3);

/// The two-event groupoid with a single transition pair between the
/// outcomes `+` and `-`: the qubit.
pub fn qubit() -> Arc<FiniteGroupoid> {
    FiniteGroupoid::pair(2)
        .expect("two events is a valid pair groupoid")
        .with_labels(
            vec!["+".into(), "-".into()],
            vec!["1+".into(), "1-".into(), "alpha".into(), "alpha_inv".into()],
        )
}

fn check_qubit_shape(g: &Arc<FiniteGroupoid>) -> Result<()> {
    if g.n_events() == 2 && g.is_complete_pair() {
        Ok(())
    } else {
        Err(Error::Precondition(
            "expected the two-event pair groupoid".into(),
        ))
    }
}

/// Real coordinates of a qubit observable in the Pauli basis:
/// `pi(f) = x0 I + x1 s1 + x2 s2 + x3 s3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliCoordinates {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

/// The observable with the given Pauli coordinates:
/// `f(1+) = x0 + x3`, `f(1-) = x0 - x3`, `f(alpha) = x1 + i x2`,
/// `f(alpha_inv) = x1 - i x2`.
pub fn pauli_compose(g: &Arc<FiniteGroupoid>, x: &PauliCoordinates) -> Result<AlgebraElement> {
    check_qubit_shape(g)?;
    let mut f = AlgebraElement::zeros(g);
    f.set_coeff(Q_UNIT_PLUS, C64::new(x.x0 + x.x3, 0.0));
    f.set_coeff(Q_UNIT_MINUS, C64::new(x.x0 - x.x3, 0.0));
    f.set_coeff(Q_ALPHA, C64::new(x.x1, x.x2));
    f.set_coeff(Q_ALPHA_INV, C64::new(x.x1, -x.x2));
    Ok(f)
}

/// Inverse of [`pauli_compose`]; requires an observable.
pub fn pauli_decompose(f: &AlgebraElement) -> Result<PauliCoordinates> {
    check_qubit_shape(f.groupoid())?;
    if !is_observable(f, 1e-12) {
        return Err(Error::Precondition(format!(
            "pauli_decompose needs an observable; defect {:.3e}",
            f.observable_defect()
        )));
    }
    let fp = f.coeff(Q_UNIT_PLUS).re;
    let fm = f.coeff(Q_UNIT_MINUS).re;
    let fa = f.coeff(Q_ALPHA);
    Ok(PauliCoordinates {
        x0: (fp + fm) / 2.0,
        x1: fa.re,
        x2: fa.im,
        x3: (fp - fm) / 2.0,
    })
}

/// The four coefficients of a (not necessarily observable) qubit amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitAmplitudes {
    pub f_plus: C64,
    pub f_minus: C64,
    pub f_alpha: C64,
    pub f_alpha_inv: C64,
}

impl QubitAmplitudes {
    pub fn from_element(f: &AlgebraElement) -> Result<Self> {
        check_qubit_shape(f.groupoid())?;
        Ok(Self {
            f_plus: f.coeff(Q_UNIT_PLUS),
            f_minus: f.coeff(Q_UNIT_MINUS),
            f_alpha: f.coeff(Q_ALPHA),
            f_alpha_inv: f.coeff(Q_ALPHA_INV),
        })
    }

    pub fn into_element(self, g: &Arc<FiniteGroupoid>) -> Result<AlgebraElement> {
        check_qubit_shape(g)?;
        let mut f = AlgebraElement::zeros(g);
        f.set_coeff(Q_UNIT_PLUS, self.f_plus);
        f.set_coeff(Q_UNIT_MINUS, self.f_minus);
        f.set_coeff(Q_ALPHA, self.f_alpha);
        f.set_coeff(Q_ALPHA_INV, self.f_alpha_inv);
        Ok(f)
    }
}

/// Closed-form right-hand side of the qubit equations of motion under
/// `df/dt = i[h, f]`, with `h_z = h1 + i h2`:
///
/// ```text
/// df+/dt  = i(conj(h_z) f_alpha - f_alpha_inv h_z)
/// df-/dt  = i(h_z f_alpha_inv - conj(h_z) f_alpha)
/// dfa/dt  = i((f+ - f-) h_z - 2 h3 f_alpha)
/// dfa'/dt = i((f- - f+) conj(h_z) + 2 h3 f_alpha_inv)
/// ```
///
/// Coefficientwise equal to `dynamics::derivation` (tested).
pub fn qubit_eom_rhs(h: &PauliCoordinates, f: &QubitAmplitudes) -> QubitAmplitudes {
    let i = C64::i();
    let h_z = C64::new(h.x1, h.x2);
    let h3 = C64::new(h.x3, 0.0);
    QubitAmplitudes {
        f_plus: i * (h_z.conj() * f.f_alpha - f.f_alpha_inv * h_z),
        f_minus: i * (h_z * f.f_alpha_inv - h_z.conj() * f.f_alpha),
        f_alpha: i * ((f.f_plus - f.f_minus) * h_z - 2.0 * h3 * f.f_alpha),
        f_alpha_inv: i * ((f.f_minus - f.f_plus) * h_z.conj() + 2.0 * h3 * f.f_alpha_inv),
    }
}

/// The pair groupoid on the levels `0 .. levels-1`: the N-level truncation
/// of the ladder diagram. Needs at least two levels.
pub fn oscillator(levels: usize) -> Result<Arc<FiniteGroupoid>> {
    if levels < 2 {
        return Err(Error::Parameter(format!(
            "oscillator truncation needs at least 2 levels, got {levels}"
        )));
    }
    FiniteGroupoid::pair(levels)
}

fn oscillator_levels(g: &Arc<FiniteGroupoid>) -> Result<usize> {
    if g.is_complete_pair() && g.n_events() >= 2 {
        Ok(g.n_events())
    } else {
        Err(Error::Precondition(
            "expected a pair groupoid with at least two levels".into(),
        ))
    }
}

/// The ladder functions: `a` with `a((n, n+1)) = sqrt(n+1)` (lowering) and
/// its involution `a*`. `pi(a)|n+1> = sqrt(n+1)|n>`.
pub fn ladder(g: &Arc<FiniteGroupoid>) -> Result<(AlgebraElement, AlgebraElement)> {
    let n = oscillator_levels(g)?;
    let mut a = AlgebraElement::zeros(g);
    for level in 0..n - 1 {
        let t = g
            .pair_transition(EventId(level), EventId(level + 1))
            .expect("pair groupoid");
        a.set_coeff(t, C64::new(((level + 1) as f64).sqrt(), 0.0));
    }
    let a_star = a.involution();
    Ok((a, a_star))
}

/// `h = omega a*a + f a* + conj(f) a + beta 1`.
///
/// With `f = 0`, `beta = 1/2`, `omega = 1` this is the standard oscillator
/// Hamiltonian, diagonal with entries `n + 1/2` in the fundamental
/// representation.
pub fn oscillator_hamiltonian(
    g: &Arc<FiniteGroupoid>,
    omega: f64,
    f: C64,
    beta: f64,
) -> Result<Hamiltonian> {
    let (a, a_star) = ladder(g)?;
    let number = a_star.convolve(&a)?;
    let h = number
        .scale(C64::new(omega, 0.0))
        .add(&a_star.scale(f))?
        .add(&a.scale(f.conj()))?
        .add(&AlgebraElement::unit(g).scale(C64::new(beta, 0.0)))?;
    Hamiltonian::new(h)
}

/// Position and momentum functions `q = (a + a*)/sqrt(2)`,
/// `p = i(a* - a)/sqrt(2)`, with `[q, p] = i 1` on the truncation interior.
pub fn position_momentum(g: &Arc<FiniteGroupoid>) -> Result<(AlgebraElement, AlgebraElement)> {
    let (a, a_star) = ladder(g)?;
    let inv_sqrt2 = C64::new(1.0 / 2.0_f64.sqrt(), 0.0);
    let q = a.add(&a_star)?.scale(inv_sqrt2);
    let p = a_star.sub(&a)?.scale(inv_sqrt2 * C64::i());
    Ok((q, p))
}

/// A change of experimental frame: a unitary on the event space.
#[derive(Debug, Clone)]
pub struct FrameChange {
    u: CMatrix,
}

impl FrameChange {
    /// Fails unless `U† U = I` within 1e-12.
    pub fn new(u: CMatrix) -> Result<Self> {
        if u.nrows() != u.ncols() {
            return Err(Error::Precondition("frame unitary must be square".into()));
        }
        let defect = linalg::max_abs(&(u.adjoint() * &u - linalg::identity(u.nrows())));
        if defect > 1e-12 {
            return Err(Error::Precondition(format!(
                "frame matrix must be unitary; defect {defect:.3e}"
            )));
        }
        Ok(Self { u })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            u: linalg::identity(dim),
        }
    }

    /// The Hadamard frame on the qubit.
    pub fn hadamard() -> Self {
        let s = 1.0 / 2.0_f64.sqrt();
        Self {
            u: CMatrix::from_row_slice(
                2,
                2,
                &[
                    C64::new(s, 0.0),
                    C64::new(s, 0.0),
                    C64::new(s, 0.0),
                    C64::new(-s, 0.0),
                ],
            ),
        }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.u
    }

    pub fn dim(&self) -> usize {
        self.u.nrows()
    }
}

fn check_frame(g: &Arc<FiniteGroupoid>, tau: &FrameChange) -> Result<()> {
    if !g.is_complete_pair() {
        return Err(Error::UnsupportedFrame(
            "frame changes need a complete pair groupoid (faithful representation)".into(),
        ));
    }
    if g.n_events() != tau.dim() {
        return Err(Error::UnsupportedFrame(format!(
            "frame unitary is {}x{}, groupoid has {} events",
            tau.dim(),
            tau.dim(),
            g.n_events()
        )));
    }
    Ok(())
}

/// The frame-change automorphism: the element whose representation is
/// `U pi(f) U†`.
pub fn frame_change(tau: &FrameChange, f: &AlgebraElement) -> Result<AlgebraElement> {
    let g = f.groupoid();
    check_frame(g, tau)?;
    let conjugated = &tau.u * fundamental_rep(f).matrix() * tau.u.adjoint();
    element_from_operator(g, &Operator::new(conjugated))
}

/// Expansion coefficients `c(beta, .)` of the image of a basis transition
/// in the original frame: `tau(beta) = sum_alpha c(beta, alpha) alpha`.
pub fn expansion_coefficients(
    tau: &FrameChange,
    g: &Arc<FiniteGroupoid>,
    beta: TransitionId,
) -> Result<Vec<C64>> {
    g.check_transition(beta)?;
    let d = AlgebraElement::delta(g, beta)?;
    Ok(frame_change(tau, &d)?.coeffs().to_vec())
}

/// Outcome of composing selective measurements across frames.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompoundMeasurement {
    /// The transition amplitude `<b' | U | c'>` between the two frames.
    pub amplitude: C64,
    /// `|amplitude|^2`, the measured fraction.
    pub probability: f64,
    /// The symbol of the resulting compound measurement.
    pub symbol: (EventId, EventId),
}

/// The compound law for selective measurements across frames:
/// `M(a, b') M(c', d) = <b'|c'> M(a, d)` with `|c'>` read in the
/// `tau`-rotated frame, so `<b'|c'> = U[b'][c']`.
pub fn compound_measurement(
    tau: &FrameChange,
    g: &Arc<FiniteGroupoid>,
    a: EventId,
    b_prime: EventId,
    c_prime: EventId,
    d: EventId,
) -> Result<CompoundMeasurement> {
    check_frame(g, tau)?;
    for e in [a, b_prime, c_prime, d] {
        g.check_event(e)?;
    }
    let amplitude = tau.u[(b_prime.0, c_prime.0)];
    Ok(CompoundMeasurement {
        amplitude,
        probability: amplitude.norm_sqr(),
        symbol: (a, d),
    })
}
