//! Finite groupoids: events, transitions, partial composition, inverses.
//!
//! A groupoid is stored explicitly: a list of events, a list of transitions
//! with source/target maps, a unit per event, an inverse per transition, and
//! a partial composition table. `compose(beta, alpha)` follows the
//! function-composition order: it is defined exactly when the source of
//! `beta` equals the target of `alpha`, and the result runs from the source
//! of `alpha` to the target of `beta`.
//!
//! Pair transitions are written `(t, s)` for the arrow `s -> t`, so that
//! `(n, m) . (m, k) = (n, k)` (the Ritz-Rydberg combination rule) and the
//! coefficient matrix of an amplitude multiplies like an ordinary matrix.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of an event (outcome) in the event list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EventId(pub usize);

/// Index of a transition in the transition list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TransitionId(pub usize);

/// One transition `source -> target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub source: EventId,
    pub target: EventId,
    pub label: String,
}

/// How a groupoid was constructed. Only used to pick fast paths; the tables
/// are always authoritative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupoidKind {
    Pair,
    Graph,
    PairTimesGroup,
    Explicit,
}

/// An explicit finite groupoid. Immutable after construction; safe to share
/// across threads behind an [`Arc`].
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteGroupoid {
    events: Vec<String>,
    transitions: Vec<Transition>,
    unit_of: Vec<TransitionId>,
    inverse_of: Vec<TransitionId>,
    compose_table: HashMap<(TransitionId, TransitionId), TransitionId>,
    by_source: Vec<Vec<TransitionId>>,
    by_target: Vec<Vec<TransitionId>>,
    /// For complete pair groupoids: `(target * n + source) -> transition`.
    pair_lookup: Option<Vec<TransitionId>>,
    kind: GroupoidKind,
}

impl FiniteGroupoid {
    /// Pair groupoid on `n` events: one transition `(a, b): b -> a` per
    /// ordered pair, with `(a, b) . (b, c) = (a, c)`.
    pub fn pair(n: usize) -> Result<Arc<Self>> {
        if n == 0 {
            return Err(Error::InvalidSpec(
                "pair groupoid needs at least one event (n >= 1)".into(),
            ));
        }
        let events = (0..n).map(|a| a.to_string()).collect();
        Ok(Arc::new(Self::pair_on_components(
            events,
            &vec![(0..n).collect::<Vec<_>>()],
            GroupoidKind::Pair,
        )))
    }

    /// Groupoid generated by an undirected graph on `n` events: the union of
    /// pair groupoids over the connected components. Within a component every
    /// ordered pair of events is a transition; isolated events keep only
    /// their unit.
    pub fn from_graph(n: usize, edges: &[(usize, usize)]) -> Result<Arc<Self>> {
        if n == 0 {
            return Err(Error::InvalidSpec(
                "graph groupoid needs at least one event (n >= 1)".into(),
            ));
        }
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidSpec(format!(
                    "edge ({a}, {b}) references an event outside 0..{n}"
                )));
            }
        }
        // Union-find over events.
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut c = x;
            while parent[c] != r {
                let next = parent[c];
                parent[c] = r;
                c = next;
            }
            r
        }
        for &(a, b) in edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
            }
        }
        let mut components: HashMap<usize, Vec<usize>> = HashMap::new();
        for e in 0..n {
            let root = find(&mut parent, e);
            components.entry(root).or_default().push(e);
        }
        let mut comps: Vec<Vec<usize>> = components.into_values().collect();
        comps.sort_by_key(|c| c[0]);
        let events = (0..n).map(|a| a.to_string()).collect();
        Ok(Arc::new(Self::pair_on_components(
            events,
            &comps,
            GroupoidKind::Graph,
        )))
    }

    /// Product of the pair groupoid on `n` events with the cyclic group
    /// `Z_m`: transitions `(a, b, g): b -> a` composing as
    /// `(a, b, g) . (b, c, h) = (a, c, g + h mod m)`. Every event has
    /// isotropy group `Z_m`.
    pub fn pair_times_group(n: usize, m: usize) -> Result<Arc<Self>> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidSpec(
                "pair_times_group needs n >= 1 and m >= 1".into(),
            ));
        }
        let events: Vec<String> = (0..n).map(|a| a.to_string()).collect();
        // Units first in event order, then the rest sorted by (source, target, g).
        let mut trans: Vec<(usize, usize, usize)> = Vec::with_capacity(n * n * m);
        for a in 0..n {
            trans.push((a, a, 0));
        }
        let mut rest: Vec<(usize, usize, usize)> = Vec::new();
        for t in 0..n {
            for s in 0..n {
                for g in 0..m {
                    if !(t == s && g == 0) {
                        rest.push((t, s, g));
                    }
                }
            }
        }
        rest.sort_by_key(|&(t, s, g)| (s, t, g));
        trans.extend(rest);

        let mut index: HashMap<(usize, usize, usize), TransitionId> = HashMap::new();
        let transitions: Vec<Transition> = trans
            .iter()
            .enumerate()
            .map(|(i, &(t, s, g))| {
                index.insert((t, s, g), TransitionId(i));
                Transition {
                    source: EventId(s),
                    target: EventId(t),
                    label: format!("({t},{s};{g})"),
                }
            })
            .collect();
        let unit_of: Vec<TransitionId> = (0..n).map(|a| index[&(a, a, 0)]).collect();
        let inverse_of: Vec<TransitionId> = trans
            .iter()
            .map(|&(t, s, g)| index[&(s, t, (m - g) % m)])
            .collect();
        let mut compose_table = HashMap::new();
        for (i, &(t1, s1, g1)) in trans.iter().enumerate() {
            for (j, &(t2, s2, g2)) in trans.iter().enumerate() {
                if s1 == t2 {
                    let result = index[&(t1, s2, (g1 + g2) % m)];
                    compose_table.insert((TransitionId(i), TransitionId(j)), result);
                }
            }
        }
        Ok(Arc::new(Self::assemble(
            events,
            transitions,
            unit_of,
            inverse_of,
            compose_table,
            GroupoidKind::PairTimesGroup,
        )))
    }

    /// Groupoid from fully explicit tables. Structural well-formedness
    /// (ranges, total unit/inverse maps) is enforced here; the groupoid
    /// axioms are *not*, so that [`FiniteGroupoid::validate`] can report
    /// violations in deliberately broken tables.
    pub fn from_tables(
        events: Vec<String>,
        transitions: Vec<Transition>,
        unit_of: Vec<TransitionId>,
        inverse_of: Vec<TransitionId>,
        compose: Vec<(TransitionId, TransitionId, TransitionId)>,
    ) -> Result<Arc<Self>> {
        let ne = events.len();
        let nt = transitions.len();
        if ne == 0 {
            return Err(Error::InvalidSpec("empty event list".into()));
        }
        for (i, tr) in transitions.iter().enumerate() {
            if tr.source.0 >= ne || tr.target.0 >= ne {
                return Err(Error::InvalidSpec(format!(
                    "transition {i} has endpoint outside 0..{ne}"
                )));
            }
        }
        if unit_of.len() != ne {
            return Err(Error::InvalidSpec(format!(
                "unit_of has {} entries, expected one per event ({ne})",
                unit_of.len()
            )));
        }
        if inverse_of.len() != nt {
            return Err(Error::InvalidSpec(format!(
                "inverse_of has {} entries, expected one per transition ({nt})",
                inverse_of.len()
            )));
        }
        for (a, u) in unit_of.iter().enumerate() {
            if u.0 >= nt {
                return Err(Error::InvalidSpec(format!(
                    "unit_of[{a}] = {} out of range",
                    u.0
                )));
            }
        }
        for (i, inv) in inverse_of.iter().enumerate() {
            if inv.0 >= nt {
                return Err(Error::InvalidSpec(format!(
                    "inverse_of[{i}] = {} out of range",
                    inv.0
                )));
            }
        }
        let mut compose_table = HashMap::new();
        for &(b, a, r) in &compose {
            if b.0 >= nt || a.0 >= nt || r.0 >= nt {
                return Err(Error::InvalidSpec(format!(
                    "compose entry ({}, {}) -> {} out of range",
                    b.0, a.0, r.0
                )));
            }
            if compose_table.insert((b, a), r).is_some() {
                return Err(Error::InvalidSpec(format!(
                    "duplicate compose entry for ({}, {})",
                    b.0, a.0
                )));
            }
        }
        Ok(Arc::new(Self::assemble(
            events,
            transitions,
            unit_of,
            inverse_of,
            compose_table,
            GroupoidKind::Explicit,
        )))
    }

    /// Union of complete pair groupoids over the given event components.
    fn pair_on_components(
        events: Vec<String>,
        components: &[Vec<usize>],
        kind: GroupoidKind,
    ) -> Self {
        let n = events.len();
        // Units first in event order, then non-units by (source, target).
        let mut pairs: Vec<(usize, usize)> = (0..n).map(|a| (a, a)).collect();
        let mut rest: Vec<(usize, usize)> = Vec::new();
        for comp in components {
            for &s in comp {
                for &t in comp {
                    if s != t {
                        rest.push((t, s));
                    }
                }
            }
        }
        rest.sort_by_key(|&(t, s)| (s, t));
        pairs.extend(rest);

        let mut index: HashMap<(usize, usize), TransitionId> = HashMap::new();
        let transitions: Vec<Transition> = pairs
            .iter()
            .enumerate()
            .map(|(i, &(t, s))| {
                index.insert((t, s), TransitionId(i));
                Transition {
                    source: EventId(s),
                    target: EventId(t),
                    label: format!("({t},{s})"),
                }
            })
            .collect();
        let unit_of: Vec<TransitionId> = (0..n).map(|a| index[&(a, a)]).collect();
        let inverse_of: Vec<TransitionId> = pairs.iter().map(|&(t, s)| index[&(s, t)]).collect();
        let mut compose_table = HashMap::new();
        for (i, &(t1, s1)) in pairs.iter().enumerate() {
            for (j, &(t2, s2)) in pairs.iter().enumerate() {
                if s1 == t2 {
                    // Both factors live in one component, so (t1, s2) exists.
                    compose_table.insert((TransitionId(i), TransitionId(j)), index[&(t1, s2)]);
                }
            }
        }
        Self::assemble(events, transitions, unit_of, inverse_of, compose_table, kind)
    }

    fn assemble(
        events: Vec<String>,
        transitions: Vec<Transition>,
        unit_of: Vec<TransitionId>,
        inverse_of: Vec<TransitionId>,
        compose_table: HashMap<(TransitionId, TransitionId), TransitionId>,
        kind: GroupoidKind,
    ) -> Self {
        let n = events.len();
        let mut by_source = vec![Vec::new(); n];
        let mut by_target = vec![Vec::new(); n];
        for (i, tr) in transitions.iter().enumerate() {
            by_source[tr.source.0].push(TransitionId(i));
            by_target[tr.target.0].push(TransitionId(i));
        }
        let pair_lookup = if transitions.len() == n * n {
            let mut lookup = vec![None; n * n];
            for (i, tr) in transitions.iter().enumerate() {
                let slot = &mut lookup[tr.target.0 * n + tr.source.0];
                if slot.is_some() {
                    lookup.clear();
                    break;
                }
                *slot = Some(TransitionId(i));
            }
            if lookup.len() == n * n {
                lookup.into_iter().collect::<Option<Vec<_>>>()
            } else {
                None
            }
        } else {
            None
        };
        Self {
            events,
            transitions,
            unit_of,
            inverse_of,
            compose_table,
            by_source,
            by_target,
            pair_lookup,
            kind,
        }
    }

    /// Replace event and transition labels (used by the named models).
    pub(crate) fn with_labels(mut self: Arc<Self>, events: Vec<String>, transitions: Vec<String>) -> Arc<Self> {
        let g = Arc::make_mut(&mut self);
        assert_eq!(events.len(), g.events.len());
        assert_eq!(transitions.len(), g.transitions.len());
        g.events = events;
        for (tr, label) in g.transitions.iter_mut().zip(transitions) {
            tr.label = label;
        }
        self
    }

    pub fn n_events(&self) -> usize {
        self.events.len()
    }

    pub fn n_transitions(&self) -> usize {
        self.transitions.len()
    }

    pub fn kind(&self) -> GroupoidKind {
        self.kind
    }

    pub fn event_label(&self, a: EventId) -> &str {
        &self.events[a.0]
    }

    pub fn transition(&self, t: TransitionId) -> &Transition {
        &self.transitions[t.0]
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn source(&self, t: TransitionId) -> EventId {
        self.transitions[t.0].source
    }

    pub fn target(&self, t: TransitionId) -> EventId {
        self.transitions[t.0].target
    }

    pub fn unit(&self, a: EventId) -> TransitionId {
        self.unit_of[a.0]
    }

    pub fn inverse(&self, t: TransitionId) -> TransitionId {
        self.inverse_of[t.0]
    }

    pub fn is_unit(&self, t: TransitionId) -> bool {
        self.unit_of[self.transitions[t.0].source.0] == t
    }

    pub fn check_event(&self, a: EventId) -> Result<()> {
        if a.0 < self.events.len() {
            Ok(())
        } else {
            Err(Error::RangeError {
                kind: "event",
                index: a.0,
                limit: self.events.len(),
            })
        }
    }

    pub fn check_transition(&self, t: TransitionId) -> Result<()> {
        if t.0 < self.transitions.len() {
            Ok(())
        } else {
            Err(Error::RangeError {
                kind: "transition",
                index: t.0,
                limit: self.transitions.len(),
            })
        }
    }

    /// `beta . alpha`, defined exactly when `s(beta) = t(alpha)`.
    /// `None` plays the role of the composability indicator.
    pub fn compose(&self, beta: TransitionId, alpha: TransitionId) -> Option<TransitionId> {
        self.compose_table.get(&(beta, alpha)).copied()
    }

    /// All transitions `source -> target`.
    pub fn transitions_between(&self, source: EventId, target: EventId) -> Vec<TransitionId> {
        self.by_source[source.0]
            .iter()
            .copied()
            .filter(|&t| self.target(t) == target)
            .collect()
    }

    /// Transition of a complete pair groupoid by its `(target, source)` pair.
    pub fn pair_transition(&self, target: EventId, source: EventId) -> Option<TransitionId> {
        let n = self.n_events();
        self.pair_lookup
            .as_ref()
            .map(|lookup| lookup[target.0 * n + source.0])
    }

    /// Whether the groupoid is a complete pair groupoid (exactly one
    /// transition for every ordered pair of events). On these the
    /// fundamental representation is faithful.
    pub fn is_complete_pair(&self) -> bool {
        self.pair_lookup.is_some()
    }

    /// The spray at `a`: transitions leaving `a` and transitions arriving
    /// at `a`, in storage order.
    pub fn sprays(&self, a: EventId) -> Result<(Vec<TransitionId>, Vec<TransitionId>)> {
        self.check_event(a)?;
        Ok((self.by_source[a.0].clone(), self.by_target[a.0].clone()))
    }

    pub(crate) fn outgoing(&self, a: EventId) -> &[TransitionId] {
        &self.by_source[a.0]
    }

    pub(crate) fn incoming(&self, a: EventId) -> &[TransitionId] {
        &self.by_target[a.0]
    }

    /// Isotropy group `G_a`: transitions from `a` to itself.
    pub fn isotropy_group(&self, a: EventId) -> Result<Vec<TransitionId>> {
        self.check_event(a)?;
        Ok(self.by_source[a.0]
            .iter()
            .copied()
            .filter(|&t| self.target(t) == a)
            .collect())
    }

    /// Orbit of `a`: every event connected to `a` by some transition,
    /// including `a` itself. Sorted by event index.
    pub fn orbit(&self, a: EventId) -> Result<Vec<EventId>> {
        self.check_event(a)?;
        let mut seen = vec![false; self.n_events()];
        let mut stack = vec![a];
        seen[a.0] = true;
        while let Some(e) = stack.pop() {
            for &t in &self.by_source[e.0] {
                let to = self.target(t);
                if !seen[to.0] {
                    seen[to.0] = true;
                    stack.push(to);
                }
            }
            for &t in &self.by_target[e.0] {
                let from = self.source(t);
                if !seen[from.0] {
                    seen[from.0] = true;
                    stack.push(from);
                }
            }
        }
        Ok((0..self.n_events())
            .filter(|&e| seen[e])
            .map(EventId)
            .collect())
    }

    /// One representative event per connected component, sorted.
    pub fn component_representatives(&self) -> Vec<EventId> {
        let mut assigned = vec![false; self.n_events()];
        let mut reps = Vec::new();
        for e in 0..self.n_events() {
            if !assigned[e] {
                reps.push(EventId(e));
                for ev in self.orbit(EventId(e)).expect("event in range") {
                    assigned[ev.0] = true;
                }
            }
        }
        reps
    }

    pub fn is_connected(&self) -> bool {
        self.component_representatives().len() <= 1
    }

    /// Exhaustively check the groupoid axioms and report every violation.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let nt = self.n_transitions();

        for (a, &u) in self.unit_of.iter().enumerate() {
            let tr = self.transition(u);
            if tr.source.0 != a || tr.target.0 != a {
                violations.push(Violation::UnitMap {
                    event: EventId(a),
                    unit: u,
                });
            }
        }
        for i in 0..nt {
            let t = TransitionId(i);
            let inv = self.inverse(t);
            if self.source(inv) != self.target(t) || self.target(inv) != self.source(t) {
                violations.push(Violation::InverseMap {
                    transition: t,
                    inverse: inv,
                });
            }
        }

        // Composability domain and result typing.
        for i in 0..nt {
            for j in 0..nt {
                let (b, a) = (TransitionId(i), TransitionId(j));
                let should = self.source(b) == self.target(a);
                match self.compose(b, a) {
                    Some(r) if !should => {
                        violations.push(Violation::ComposeDomain {
                            first: b,
                            second: a,
                            defined: true,
                            result: Some(r),
                        });
                    }
                    Some(r) => {
                        if self.source(r) != self.source(a) || self.target(r) != self.target(b) {
                            violations.push(Violation::ComposeTyping {
                                first: b,
                                second: a,
                                result: r,
                            });
                        }
                    }
                    None if should => {
                        violations.push(Violation::ComposeDomain {
                            first: b,
                            second: a,
                            defined: false,
                            result: None,
                        });
                    }
                    None => {}
                }
            }
        }

        // Associativity on every defined triple. Missing table entries on a
        // composable triple surface through the domain check above; here we
        // only compare the two association orders.
        for j in 0..nt {
            let b = TransitionId(j);
            for &g in self.outgoing(self.target(b)) {
                for &a in self.incoming(self.source(b)) {
                    let left = self.compose(g, b).and_then(|gb| self.compose(gb, a));
                    let right = self.compose(b, a).and_then(|ba| self.compose(g, ba));
                    if left != right {
                        violations.push(Violation::Associativity {
                            outer: g,
                            middle: b,
                            inner: a,
                            left,
                            right,
                        });
                    }
                }
            }
        }

        // Unit laws.
        for i in 0..nt {
            let t = TransitionId(i);
            if self.compose(t, self.unit(self.source(t))) != Some(t) {
                violations.push(Violation::UnitLaw {
                    transition: t,
                    left: false,
                });
            }
            if self.compose(self.unit(self.target(t)), t) != Some(t) {
                violations.push(Violation::UnitLaw {
                    transition: t,
                    left: true,
                });
            }
        }

        // Inverse laws.
        for i in 0..nt {
            let t = TransitionId(i);
            let inv = self.inverse(t);
            if self.compose(t, inv) != Some(self.unit(self.target(t))) {
                violations.push(Violation::InverseLaw {
                    transition: t,
                    left: false,
                });
            }
            if self.compose(inv, t) != Some(self.unit(self.source(t))) {
                violations.push(Violation::InverseLaw {
                    transition: t,
                    left: true,
                });
            }
        }

        ValidationReport { violations }
    }
}

/// A single axiom violation, with the offending transitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    UnitMap {
        event: EventId,
        unit: TransitionId,
    },
    InverseMap {
        transition: TransitionId,
        inverse: TransitionId,
    },
    ComposeDomain {
        first: TransitionId,
        second: TransitionId,
        defined: bool,
        result: Option<TransitionId>,
    },
    ComposeTyping {
        first: TransitionId,
        second: TransitionId,
        result: TransitionId,
    },
    Associativity {
        outer: TransitionId,
        middle: TransitionId,
        inner: TransitionId,
        left: Option<TransitionId>,
        right: Option<TransitionId>,
    },
    UnitLaw {
        transition: TransitionId,
        left: bool,
    },
    InverseLaw {
        transition: TransitionId,
        left: bool,
    },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::UnitMap { event, unit } => {
                write!(f, "unit_of[{}] = {} is not a loop at the event", event.0, unit.0)
            }
            Violation::InverseMap { transition, inverse } => write!(
                f,
                "inverse_of[{}] = {} does not swap source and target",
                transition.0, inverse.0
            ),
            Violation::ComposeDomain {
                first,
                second,
                defined,
                ..
            } => {
                if *defined {
                    write!(
                        f,
                        "compose({}, {}) defined although s(first) != t(second)",
                        first.0, second.0
                    )
                } else {
                    write!(
                        f,
                        "compose({}, {}) undefined although s(first) = t(second)",
                        first.0, second.0
                    )
                }
            }
            Violation::ComposeTyping { first, second, result } => write!(
                f,
                "compose({}, {}) = {} has wrong endpoints",
                first.0, second.0, result.0
            ),
            Violation::Associativity {
                outer,
                middle,
                inner,
                ..
            } => write!(
                f,
                "associativity fails on ({}, {}, {})",
                outer.0, middle.0, inner.0
            ),
            Violation::UnitLaw { transition, left } => write!(
                f,
                "{} unit law fails for transition {}",
                if *left { "left" } else { "right" },
                transition.0
            ),
            Violation::InverseLaw { transition, left } => write!(
                f,
                "{} inverse law fails for transition {}",
                if *left { "left" } else { "right" },
                transition.0
            ),
        }
    }
}

/// Result of [`FiniteGroupoid::validate`]. Violations are data, not errors.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_clean() {
            writeln!(f, "groupoid axioms hold (no violations)")
        } else {
            writeln!(f, "{} violation(s):", self.violations.len())?;
            for v in &self.violations {
                writeln!(f, "  - {v}")?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_counts_and_fig1_shape() {
        let g = FiniteGroupoid::pair(2).unwrap();
        assert_eq!(g.n_events(), 2);
        assert_eq!(g.n_transitions(), 4);
        // Units first, then (source, target)-ordered non-units.
        assert!(g.is_unit(TransitionId(0)));
        assert!(g.is_unit(TransitionId(1)));
        assert_eq!(g.source(TransitionId(2)), EventId(0));
        assert_eq!(g.target(TransitionId(2)), EventId(1));
        assert_eq!(g.inverse(TransitionId(2)), TransitionId(3));
    }

    #[test]
    fn trivial_groupoid() {
        let g = FiniteGroupoid::pair(1).unwrap();
        assert_eq!(g.n_events(), 1);
        assert_eq!(g.n_transitions(), 1);
        assert!(g.is_unit(TransitionId(0)));
        assert_eq!(g.isotropy_group(EventId(0)).unwrap(), vec![TransitionId(0)]);
    }

    #[test]
    fn pair_zero_rejected() {
        assert!(matches!(
            FiniteGroupoid::pair(0),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn ritz_rydberg_composition() {
        let g = FiniteGroupoid::pair(4).unwrap();
        assert_eq!(g.n_transitions(), 16);
        let t32 = g.pair_transition(EventId(3), EventId(2)).unwrap();
        let t20 = g.pair_transition(EventId(2), EventId(0)).unwrap();
        let t30 = g.pair_transition(EventId(3), EventId(0)).unwrap();
        assert_eq!(g.compose(t32, t20), Some(t30));
    }

    #[test]
    fn compose_mismatch_is_undefined() {
        let g = FiniteGroupoid::pair(3).unwrap();
        // (2,1): 1 -> 2 and (0,2): 2 -> 0 do not compose as (2,1) . (0,2).
        let t21 = g.pair_transition(EventId(2), EventId(1)).unwrap();
        let t02 = g.pair_transition(EventId(0), EventId(2)).unwrap();
        assert_eq!(g.compose(t21, t02), None);
    }

    #[test]
    fn compose_units() {
        let g = FiniteGroupoid::pair(3).unwrap();
        let u = g.unit(EventId(1));
        assert_eq!(g.compose(u, u), Some(u));
    }

    #[test]
    fn qubit_inverse_composes_to_unit_at_source() {
        let g = FiniteGroupoid::pair(2).unwrap();
        let alpha = g.pair_transition(EventId(1), EventId(0)).unwrap();
        let alpha_inv = g.inverse(alpha);
        assert_eq!(g.compose(alpha_inv, alpha), Some(g.unit(EventId(0))));
        assert_eq!(g.compose(alpha, alpha_inv), Some(g.unit(EventId(1))));
    }

    /// Brute-force component enumeration used as the oracle for graph builds.
    fn expected_graph_transition_count(n: usize, edges: &[(usize, usize)]) -> usize {
        let mut comp: Vec<usize> = (0..n).collect();
        loop {
            let mut changed = false;
            for &(a, b) in edges {
                let m = comp[a].min(comp[b]);
                if comp[a] != m || comp[b] != m {
                    comp[a] = m;
                    comp[b] = m;
                    changed = true;
                }
            }
            // Propagate until stable (labels are representative indices).
            for i in 0..n {
                let c = comp[comp[i]];
                if comp[i] != c {
                    comp[i] = c;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let mut sizes: HashMap<usize, usize> = HashMap::new();
        for i in 0..n {
            *sizes.entry(comp[i]).or_insert(0) += 1;
        }
        sizes.values().map(|s| s * s).sum()
    }

    #[test]
    fn graph_component_counts() {
        let g = FiniteGroupoid::from_graph(3, &[(0, 1)]).unwrap();
        assert_eq!(g.n_transitions(), 5);
        assert_eq!(
            g.n_transitions(),
            expected_graph_transition_count(3, &[(0, 1)])
        );
        assert_eq!(
            g.orbit(EventId(0)).unwrap(),
            vec![EventId(0), EventId(1)]
        );
        assert_eq!(g.orbit(EventId(2)).unwrap(), vec![EventId(2)]);
    }

    #[test]
    fn graph_no_edges_gives_units_only() {
        let g = FiniteGroupoid::from_graph(2, &[]).unwrap();
        assert_eq!(g.n_transitions(), 2);
        assert!(!g.is_connected());
    }

    #[test]
    fn graph_chain_is_truncated_pair() {
        let edges: Vec<(usize, usize)> = (0..10).map(|i| (i, i + 1)).collect();
        let g = FiniteGroupoid::from_graph(11, &edges).unwrap();
        assert_eq!(g.n_transitions(), 121);
        assert_eq!(
            g.n_transitions(),
            expected_graph_transition_count(11, &edges)
        );
        assert!(g.is_complete_pair());
    }

    #[test]
    fn graph_bad_edge_rejected() {
        assert!(matches!(
            FiniteGroupoid::from_graph(2, &[(0, 5)]),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn pair_times_group_isotropy() {
        let g = FiniteGroupoid::pair_times_group(1, 3).unwrap();
        assert_eq!(g.isotropy_group(EventId(0)).unwrap().len(), 3);

        let g = FiniteGroupoid::pair_times_group(2, 4).unwrap();
        for a in 0..2 {
            assert_eq!(g.isotropy_group(EventId(a)).unwrap().len(), 4);
        }
    }

    #[test]
    fn pair_times_group_trivial_group_matches_pair() {
        let g1 = FiniteGroupoid::pair_times_group(2, 1).unwrap();
        let g2 = FiniteGroupoid::pair(2).unwrap();
        assert_eq!(g1.n_transitions(), g2.n_transitions());
        for i in 0..g1.n_transitions() {
            let t = TransitionId(i);
            assert_eq!(g1.source(t), g2.source(t));
            assert_eq!(g1.target(t), g2.target(t));
            for j in 0..g1.n_transitions() {
                assert_eq!(g1.compose(t, TransitionId(j)), g2.compose(t, TransitionId(j)));
            }
        }
    }

    #[test]
    fn spray_quotient_counts() {
        // |G_+(a)| = |G_a| * |orbit(a)| on a groupoid with inner structure.
        let g = FiniteGroupoid::pair_times_group(2, 2).unwrap();
        assert_eq!(g.n_transitions(), 8);
        let (plus, _) = g.sprays(EventId(0)).unwrap();
        let iso = g.isotropy_group(EventId(0)).unwrap();
        let orbit = g.orbit(EventId(0)).unwrap();
        assert_eq!(plus.len(), 4);
        assert_eq!(iso.len() * orbit.len(), plus.len());
    }

    #[test]
    fn qubit_sprays() {
        let g = FiniteGroupoid::pair(2).unwrap();
        let plus = EventId(0);
        let (gp, gm) = g.sprays(plus).unwrap();
        let alpha = g.pair_transition(EventId(1), EventId(0)).unwrap();
        let alpha_inv = g.inverse(alpha);
        let unit_plus = g.unit(plus);
        assert_eq!(gp, vec![unit_plus, alpha]);
        assert_eq!(gm, vec![unit_plus, alpha_inv]);
    }

    #[test]
    fn constructors_validate_clean() {
        for g in [
            FiniteGroupoid::pair(3).unwrap(),
            FiniteGroupoid::from_graph(4, &[(0, 1), (2, 3)]).unwrap(),
            FiniteGroupoid::pair_times_group(2, 3).unwrap(),
        ] {
            let report = g.validate();
            assert!(report.is_clean(), "unexpected violations: {report}");
        }
    }

    #[test]
    fn corrupted_table_is_reported() {
        // Start from the qubit tables and inject alpha . alpha = alpha.
        let g = FiniteGroupoid::pair(2).unwrap();
        let mut compose = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                if let Some(r) = g.compose(TransitionId(i), TransitionId(j)) {
                    compose.push((TransitionId(i), TransitionId(j), r));
                }
            }
        }
        let alpha = g.pair_transition(EventId(1), EventId(0)).unwrap();
        compose.push((alpha, alpha, alpha));
        let broken = FiniteGroupoid::from_tables(
            (0..2).map(|e| e.to_string()).collect(),
            g.transitions().to_vec(),
            (0..2).map(|e| g.unit(EventId(e))).collect(),
            (0..4).map(|t| g.inverse(TransitionId(t))).collect(),
            compose,
        )
        .unwrap();
        let report = broken.validate();
        assert!(!report.is_clean());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::ComposeDomain { defined: true, .. })));
    }

    #[test]
    fn inverse_is_involution_and_swaps_endpoints() {
        let g = FiniteGroupoid::pair_times_group(3, 2).unwrap();
        for i in 0..g.n_transitions() {
            let t = TransitionId(i);
            let inv = g.inverse(t);
            assert_eq!(g.inverse(inv), t);
            assert_eq!(g.source(inv), g.target(t));
            assert_eq!(g.target(inv), g.source(t));
        }
    }

    #[test]
    fn orbit_contains_self_and_pair_is_connected() {
        let g = FiniteGroupoid::pair(5).unwrap();
        for a in 0..5 {
            let orbit = g.orbit(EventId(a)).unwrap();
            assert_eq!(orbit.len(), 5);
            assert!(orbit.contains(&EventId(a)));
        }
        assert!(g.is_connected());
    }
}
