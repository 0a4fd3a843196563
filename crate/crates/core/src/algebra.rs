//! The *-algebra of amplitudes on a finite groupoid.
//!
//! An [`AlgebraElement`] is a complex coefficient per transition. The product
//! is convolution, `(f * g)(gamma) = sum over alpha . beta = gamma of
//! f(alpha) g(beta)`; on a complete pair groupoid this is exactly the matrix
//! product of the coefficient matrices, and a fast path uses that. The
//! involution is `f*(gamma) = conj(f(gamma^{-1}))`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groupoid::{EventId, FiniteGroupoid, TransitionId};
use crate::linalg::C64;

/// A complex amplitude function on the transitions of a fixed groupoid.
#[derive(Debug, Clone)]
pub struct AlgebraElement {
    groupoid: Arc<FiniteGroupoid>,
    coeffs: Vec<C64>,
}

/// The distinguished elements of the algebra named in the groupoid picture.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distinguished {
    /// The incidence (total) transition: 1 on every transition.
    Incidence,
    /// Indicator of the isotropy group at an event.
    CharIsotropy(EventId),
    /// Indicator of the outgoing spray at an event.
    CharSprayPlus(EventId),
    /// Indicator of the incoming spray at an event.
    CharSprayMinus(EventId),
    /// Basis delta at a single transition.
    Delta(TransitionId),
}

impl AlgebraElement {
    pub fn zeros(groupoid: &Arc<FiniteGroupoid>) -> Self {
        Self {
            groupoid: Arc::clone(groupoid),
            coeffs: vec![C64::new(0.0, 0.0); groupoid.n_transitions()],
        }
    }

    pub fn from_coeffs(groupoid: &Arc<FiniteGroupoid>, coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.len() != groupoid.n_transitions() {
            return Err(Error::InvalidSpec(format!(
                "coefficient array has {} entries, groupoid has {} transitions",
                coeffs.len(),
                groupoid.n_transitions()
            )));
        }
        Ok(Self {
            groupoid: Arc::clone(groupoid),
            coeffs,
        })
    }

    /// Basis element `delta_alpha`.
    pub fn delta(groupoid: &Arc<FiniteGroupoid>, alpha: TransitionId) -> Result<Self> {
        groupoid.check_transition(alpha)?;
        let mut e = Self::zeros(groupoid);
        e.coeffs[alpha.0] = C64::new(1.0, 0.0);
        Ok(e)
    }

    /// The unit of the convolution algebra: 1 on every unit transition.
    pub fn unit(groupoid: &Arc<FiniteGroupoid>) -> Self {
        let mut e = Self::zeros(groupoid);
        for a in 0..groupoid.n_events() {
            e.coeffs[groupoid.unit(EventId(a)).0] = C64::new(1.0, 0.0);
        }
        e
    }

    /// One of the named indicator elements.
    pub fn distinguished(groupoid: &Arc<FiniteGroupoid>, which: Distinguished) -> Result<Self> {
        let mut e = Self::zeros(groupoid);
        let one = C64::new(1.0, 0.0);
        match which {
            Distinguished::Incidence => {
                e.coeffs.fill(one);
            }
            Distinguished::CharIsotropy(a) => {
                for t in groupoid.isotropy_group(a)? {
                    e.coeffs[t.0] = one;
                }
            }
            Distinguished::CharSprayPlus(a) => {
                let (plus, _) = groupoid.sprays(a)?;
                for t in plus {
                    e.coeffs[t.0] = one;
                }
            }
            Distinguished::CharSprayMinus(a) => {
                let (_, minus) = groupoid.sprays(a)?;
                for t in minus {
                    e.coeffs[t.0] = one;
                }
            }
            Distinguished::Delta(t) => {
                groupoid.check_transition(t)?;
                e.coeffs[t.0] = one;
            }
        }
        Ok(e)
    }

    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        &self.groupoid
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeff(&self, t: TransitionId) -> C64 {
        self.coeffs[t.0]
    }

    pub fn set_coeff(&mut self, t: TransitionId, value: C64) {
        self.coeffs[t.0] = value;
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [C64] {
        &mut self.coeffs
    }

    fn check_same_groupoid(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.groupoid, &other.groupoid) || *self.groupoid == *other.groupoid {
            Ok(())
        } else {
            Err(Error::GroupoidMismatch)
        }
    }

    /// Convolution product. Dispatches to the coefficient-matrix product on
    /// complete pair groupoids and to the composition table otherwise; the
    /// two routes agree (tested).
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check_same_groupoid(other)?;
        if self.groupoid.is_complete_pair() {
            Ok(self.convolve_pair_fast(other))
        } else {
            Ok(self.convolve_table(other))
        }
    }

    /// Table route: iterate all composable factorizations.
    pub(crate) fn convolve_table(&self, other: &Self) -> Self {
        let g = &self.groupoid;
        let mut out = Self::zeros(g);
        for e in 0..g.n_events() {
            let ev = EventId(e);
            for &alpha in g.outgoing(ev) {
                let fa = self.coeffs[alpha.0];
                if fa == C64::new(0.0, 0.0) {
                    continue;
                }
                for &beta in g.incoming(ev) {
                    let gb = other.coeffs[beta.0];
                    if gb == C64::new(0.0, 0.0) {
                        continue;
                    }
                    let gamma = g
                        .compose(alpha, beta)
                        .expect("source of alpha equals target of beta");
                    out.coeffs[gamma.0] += fa * gb;
                }
            }
        }
        out
    }

    /// Pair-groupoid route: multiply the coefficient matrices
    /// `F[t][s] = f((t, s))`.
    pub(crate) fn convolve_pair_fast(&self, other: &Self) -> Self {
        let g = &self.groupoid;
        let n = g.n_events();
        let mut out = Self::zeros(g);
        // out(t, s) = sum_j f(t, j) g(j, s)
        for t in 0..n {
            for j in 0..n {
                let f_tj = self.coeffs[g
                    .pair_transition(EventId(t), EventId(j))
                    .expect("complete pair groupoid")
                    .0];
                if f_tj == C64::new(0.0, 0.0) {
                    continue;
                }
                for s in 0..n {
                    let g_js = other.coeffs[g
                        .pair_transition(EventId(j), EventId(s))
                        .expect("complete pair groupoid")
                        .0];
                    out.coeffs[g
                        .pair_transition(EventId(t), EventId(s))
                        .expect("complete pair groupoid")
                        .0] += f_tj * g_js;
                }
            }
        }
        out
    }

    /// Involution `f*(gamma) = conj(f(gamma^{-1}))`.
    pub fn involution(&self) -> Self {
        let g = &self.groupoid;
        let mut out = Self::zeros(g);
        for i in 0..self.coeffs.len() {
            let inv = g.inverse(TransitionId(i));
            out.coeffs[i] = self.coeffs[inv.0].conj();
        }
        out
    }

    /// Pairing with a groupoid-algebra element given in the same coefficient
    /// coordinates: `<f, x> = sum f(alpha) c_alpha`. Bilinear, no conjugation.
    pub fn pairing(&self, x: &Self) -> Result<C64> {
        self.check_same_groupoid(x)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&x.coeffs)
            .map(|(f, c)| f * c)
            .sum())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_groupoid(other)?;
        let mut out = self.clone();
        for (o, x) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *o += x;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_groupoid(other)?;
        let mut out = self.clone();
        for (o, x) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *o -= x;
        }
        Ok(out)
    }

    pub fn scale(&self, z: C64) -> Self {
        let mut out = self.clone();
        for o in out.coeffs.iter_mut() {
            *o *= z;
        }
        out
    }

    /// `[f, g] = f * g - g * f`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        let fg = self.convolve(other)?;
        let gf = other.convolve(self)?;
        fg.sub(&gf)
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |f - f*|`, the self-adjointness defect.
    pub fn observable_defect(&self) -> f64 {
        self.sub(&self.involution())
            .expect("same groupoid")
            .max_abs()
    }

    /// Largest coefficient difference to another element.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.max_abs())
    }
}
