//! States on finite effect algebras.
//!
//! A state is an exact rational valuation with `s(1) = 1` that is additive
//! over every defined sum. The full state space is a polytope; questions
//! about it are answered by the exact simplex in [`crate::lp`].

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::{EffectAlgebra, ElementId};
use crate::lp::{independent_rows, LinearProgram, LpOutcome, Row};
use crate::rational::{self, Rational};
use crate::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct State {
    values: Vec<Rational>,
}

impl State {
    pub fn new(values: Vec<Rational>) -> Self {
        State { values }
    }

    pub fn value(&self, e: ElementId) -> &Rational {
        &self.values[e.index()]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn is_one(&self, e: ElementId) -> bool {
        self.value(e).is_one()
    }

    pub fn is_two_valued(&self) -> bool {
        self.values.iter().all(|v| v.is_zero() || v.is_one())
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(rational::format).collect();
        write!(f, "[{}]", vals.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StateViolation {
    Length { expected: usize, found: usize },
    OutOfRange(ElementId),
    NotNormalized,
    NotAdditive(ElementId, ElementId, ElementId),
}

impl fmt::Display for StateViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateViolation::Length { expected, found } => {
                write!(f, "expected {expected} values, found {found}")
            }
            StateViolation::OutOfRange(e) => write!(f, "value of {e} outside [0,1]"),
            StateViolation::NotNormalized => write!(f, "s(1) != 1"),
            StateViolation::NotAdditive(a, b, c) => {
                write!(f, "s({a} ⊕ {b}) != s({a}) + s({b}) (sum is {c})")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StateError {
    #[error("weights and states differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("weights must be positive")]
    NonPositiveWeight,
    #[error("weights sum to {0}, not 1")]
    WeightSum(String),
    #[error("no states to combine")]
    Empty,
}

/// Checks the state axioms exactly, reporting the first violated constraint.
pub fn is_state(alg: &EffectAlgebra, values: &[Rational]) -> Result<(), StateViolation> {
    if values.len() != alg.n() {
        return Err(StateViolation::Length {
            expected: alg.n(),
            found: values.len(),
        });
    }
    if !values[alg.one().index()].is_one() {
        return Err(StateViolation::NotNormalized);
    }
    for e in alg.elements() {
        let v = &values[e.index()];
        if v.is_negative() || *v > Rational::one() {
            return Err(StateViolation::OutOfRange(e));
        }
    }
    for a in alg.elements() {
        for b in alg.elements().filter(|&b| b >= a) {
            if let Some(c) = alg.sum(a, b) {
                if values[a.index()].clone() + &values[b.index()] != values[c.index()] {
                    return Err(StateViolation::NotAdditive(a, b, c));
                }
            }
        }
    }
    Ok(())
}

/// All `{0,1}`-valued states, by backtracking with propagation. States are
/// produced in lexicographic order of their value vectors.
pub fn two_valued_states(alg: &EffectAlgebra) -> Vec<State> {
    let n = alg.n();
    let triples: Vec<(usize, usize, usize)> = alg
        .defined_sums()
        .map(|(a, b, c)| (a.index(), b.index(), c.index()))
        .collect();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (t, &(a, b, c)) in triples.iter().enumerate() {
        incident[a].push(t);
        if b != a {
            incident[b].push(t);
        }
        incident[c].push(t);
    }
    let mut assignment = vec![None; n];
    let mut out = Vec::new();
    let mut search = TwoValuedSearch {
        triples: &triples,
        incident: &incident,
        out: &mut out,
    };
    if search.assign(&mut assignment, alg.zero().index(), false)
        && search.assign(&mut assignment, alg.one().index(), true)
    {
        search.branch(assignment);
    }
    out
}

struct TwoValuedSearch<'a> {
    triples: &'a [(usize, usize, usize)],
    incident: &'a [Vec<usize>],
    out: &'a mut Vec<State>,
}

impl TwoValuedSearch<'_> {
    /// Sets `e` and propagates; false on conflict.
    fn assign(&self, assignment: &mut [Option<bool>], e: usize, v: bool) -> bool {
        let mut queue = vec![(e, v)];
        while let Some((e, v)) = queue.pop() {
            match assignment[e] {
                Some(old) if old == v => continue,
                Some(_) => return false,
                None => assignment[e] = Some(v),
            }
            for &t in &self.incident[e] {
                let (a, b, c) = self.triples[t];
                let (va, vb, vc) = (assignment[a], assignment[b], assignment[c]);
                // s(a) + s(b) = s(c) over {0,1}
                if a == b {
                    match (va, vc) {
                        (Some(true), _) => return false,
                        (Some(false), None) => queue.push((c, false)),
                        (Some(false), Some(true)) => return false,
                        (None, Some(_)) => queue.push((a, false)),
                        _ => {}
                    }
                    if vc == Some(true) {
                        return false;
                    }
                    continue;
                }
                if va == Some(true) && vb == Some(true) {
                    return false;
                }
                if va == Some(true) {
                    queue.push((b, false));
                    queue.push((c, true));
                }
                if vb == Some(true) {
                    queue.push((a, false));
                    queue.push((c, true));
                }
                if vc == Some(false) {
                    queue.push((a, false));
                    queue.push((b, false));
                }
                if va == Some(false) && vb == Some(false) {
                    queue.push((c, false));
                }
                if vc == Some(true) {
                    if va == Some(false) {
                        queue.push((b, true));
                    }
                    if vb == Some(false) {
                        queue.push((a, true));
                    }
                }
            }
        }
        true
    }

    fn branch(&mut self, assignment: Vec<Option<bool>>) {
        let Some(e) = assignment.iter().position(|v| v.is_none()) else {
            self.out.push(State::new(
                assignment
                    .iter()
                    .map(|v| {
                        if v.unwrap() {
                            rational::one()
                        } else {
                            rational::zero()
                        }
                    })
                    .collect(),
            ));
            return;
        };
        for v in [false, true] {
            let mut next = assignment.clone();
            if self.assign(&mut next, e, v) {
                self.branch(next);
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Minimize(ElementId),
    Maximize(ElementId),
}

/// Equality pins plus an optional objective over the state polytope.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StatePolytopeQuery {
    pub pins: Vec<(ElementId, Rational)>,
    pub objective: Option<Objective>,
}

impl StatePolytopeQuery {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pin(mut self, e: ElementId, v: Rational) -> Self {
        self.pins.push((e, v));
        self
    }

    pub fn minimize(mut self, e: ElementId) -> Self {
        self.objective = Some(Objective::Minimize(e));
        self
    }

    pub fn maximize(mut self, e: ElementId) -> Self {
        self.objective = Some(Objective::Maximize(e));
        self
    }
}

/// The state polytope of an algebra in LP form. Variables are `s(x)` for
/// every `x` other than zero and one; dependent additivity rows are removed
/// once up front.
#[derive(Debug, Clone)]
pub struct StateSpace<'a> {
    alg: &'a EffectAlgebra,
    var_of: Vec<Option<usize>>,
    num_vars: usize,
    /// `None` when the algebra has no states at all.
    base: Option<Vec<Row>>,
}

enum Term {
    Var(usize),
    Const(Rational),
}

impl<'a> StateSpace<'a> {
    pub fn new(alg: &'a EffectAlgebra) -> Self {
        let mut var_of = vec![None; alg.n()];
        let mut num_vars = 0;
        for e in alg.elements() {
            if e != alg.zero() && e != alg.one() {
                var_of[e.index()] = Some(num_vars);
                num_vars += 1;
            }
        }
        let mut space = StateSpace {
            alg,
            var_of,
            num_vars,
            base: None,
        };
        let mut rows = Vec::new();
        for (a, b, c) in alg.defined_sums() {
            let mut coeffs = Vec::new();
            let mut rhs = rational::zero();
            for (e, sign) in [(a, 1), (b, 1), (c, -1)] {
                match space.term(e) {
                    Term::Var(j) => coeffs.push((j, rational::int(sign))),
                    Term::Const(v) => rhs -= v * rational::int(sign),
                }
            }
            rows.push(Row::new(coeffs, rhs));
        }
        space.base = independent_rows(num_vars, &rows);
        space
    }

    pub fn algebra(&self) -> &'a EffectAlgebra {
        self.alg
    }

    fn term(&self, e: ElementId) -> Term {
        match self.var_of[e.index()] {
            Some(j) => Term::Var(j),
            None if e == self.alg.zero() => Term::Const(rational::zero()),
            None => Term::Const(rational::one()),
        }
    }

    fn program(&self, pins: &[(ElementId, Rational)]) -> Option<LinearProgram> {
        let base = self.base.as_ref()?;
        let mut lp = LinearProgram::with_rows(self.num_vars, base.clone());
        for (e, v) in pins {
            match self.term(*e) {
                Term::Var(j) => {
                    lp.add_row(Row::new(vec![(j, rational::one())], v.clone()));
                }
                Term::Const(c) if c == *v => {}
                Term::Const(_) => return None,
            }
        }
        Some(lp)
    }

    fn to_state(&self, point: &[Rational]) -> State {
        State::new(
            self.alg
                .elements()
                .map(|e| match self.term(e) {
                    Term::Var(j) => point[j].clone(),
                    Term::Const(c) => c,
                })
                .collect(),
        )
    }

    /// Some state satisfying the pins, if any.
    pub fn feasible(&self, pins: &[(ElementId, Rational)]) -> Option<State> {
        let point = self.program(pins)?.feasible_point()?;
        Some(self.to_state(&point))
    }

    /// Optimizes `Σ weight·s(e)` subject to the pins.
    pub fn optimize(
        &self,
        pins: &[(ElementId, Rational)],
        weights: &[(ElementId, Rational)],
        maximize: bool,
    ) -> Option<(Rational, State)> {
        let lp = self.program(pins)?;
        let mut objective = vec![rational::zero(); self.num_vars];
        let mut offset = rational::zero();
        for (e, w) in weights {
            match self.term(*e) {
                Term::Var(j) => objective[j] += w,
                Term::Const(c) => offset += w * c,
            }
        }
        let outcome = if maximize {
            lp.maximize(&objective)
        } else {
            lp.minimize(&objective)
        };
        match outcome {
            LpOutcome::Optimal { value, point } => Some((value + offset, self.to_state(&point))),
            LpOutcome::Infeasible => None,
            LpOutcome::Unbounded => unreachable!("the state polytope is bounded"),
        }
    }

    pub fn extremize(&self, query: &StatePolytopeQuery) -> Option<(Rational, State)> {
        let (target, maximize) = match query.objective {
            Some(Objective::Minimize(e)) => (e, false),
            Some(Objective::Maximize(e)) => (e, true),
            None => {
                return self.feasible(&query.pins).map(|s| (rational::zero(), s));
            }
        };
        self.optimize(&query.pins, &[(target, rational::one())], maximize)
    }

    pub fn pinned_one(&self, elements: &[ElementId]) -> Option<State> {
        let pins: Vec<_> = elements.iter().map(|&e| (e, rational::one())).collect();
        self.feasible(&pins)
    }
}

pub fn lp_feasible(alg: &EffectAlgebra, query: &StatePolytopeQuery) -> Option<State> {
    StateSpace::new(alg).feasible(&query.pins)
}

pub fn lp_extremize(alg: &EffectAlgebra, query: &StatePolytopeQuery) -> Option<(Rational, State)> {
    StateSpace::new(alg).extremize(query)
}

/// Every nonzero element is 1 under some state of `states`.
pub fn unital_set_check(alg: &EffectAlgebra, states: &[State]) -> Verdict<ElementId> {
    match alg
        .elements()
        .filter(|&a| a != alg.zero())
        .find(|&a| !states.iter().any(|s| s.is_one(a)))
    {
        Some(a) => Verdict::Fails(a),
        None => Verdict::Holds,
    }
}

/// Unitality of the full state space.
pub fn unital_full_check(alg: &EffectAlgebra) -> Verdict<ElementId> {
    unital_full_with(&StateSpace::new(alg)).0
}

/// Also returns the certifying states found along the way.
pub fn unital_full_with(space: &StateSpace) -> (Verdict<ElementId>, Vec<State>) {
    let alg = space.algebra();
    let mut found: Vec<State> = Vec::new();
    for a in alg.elements().filter(|&a| a != alg.zero()) {
        if found.iter().any(|s| s.is_one(a)) {
            continue;
        }
        match space.pinned_one(&[a]) {
            Some(s) => found.push(s),
            None => return (Verdict::Fails(a), found),
        }
    }
    (Verdict::Holds, found)
}

/// `a ≰ b` implies some `s` in `states` with `s(a) = 1 > s(b)`.
pub fn sod_set_check(alg: &EffectAlgebra, states: &[State]) -> Verdict<(ElementId, ElementId)> {
    for a in alg.elements() {
        for b in alg.elements() {
            if alg.leq(a, b) {
                continue;
            }
            if !states.iter().any(|s| s.is_one(a) && !s.is_one(b)) {
                return Verdict::Fails((a, b));
            }
        }
    }
    Verdict::Holds
}

/// Strong order determination of the full state space: for `a ≰ b` the
/// minimum of `s(b)` over `{s : s(a) = 1}` must exist and be below 1.
pub fn sod_full_check(alg: &EffectAlgebra) -> Verdict<(ElementId, ElementId)> {
    let space = StateSpace::new(alg);
    let mut pool: Vec<State> = Vec::new();
    for a in alg.elements() {
        for b in alg.elements() {
            if alg.leq(a, b) || pool.iter().any(|s| s.is_one(a) && !s.is_one(b)) {
                continue;
            }
            let pins = [(a, rational::one())];
            match space.optimize(&pins, &[(b, rational::one())], false) {
                Some((min, s)) if min < rational::one() => pool.push(s),
                _ => return Verdict::Fails((a, b)),
            }
        }
    }
    Verdict::Holds
}

/// For every `a, b` with `s(a) = s(b) = 1` some `c ≤ a, b` has `s(c) = 1`.
pub fn jp_state_check(alg: &EffectAlgebra, s: &State) -> Verdict<(ElementId, ElementId)> {
    let ones: Vec<ElementId> = alg.elements().filter(|&e| s.is_one(e)).collect();
    for (i, &a) in ones.iter().enumerate() {
        for &b in &ones[i + 1..] {
            if !alg.lower_cone(a, b).into_iter().any(|c| s.is_one(c)) {
                return Verdict::Fails((a, b));
            }
        }
    }
    Verdict::Holds
}

/// A state that is not Jauch–Piron, with the pair it fails on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JpFailure {
    pub a: ElementId,
    pub b: ElementId,
    pub state: State,
}

/// Decides whether every state is Jauch–Piron.
///
/// For each incomparable pair the face `F = {s : s(a) = s(b) = 1}` is a
/// polytope, and each `{s ∈ F : s(c) = 1}` is a face of it. A polytope is not
/// a finite union of proper faces, so `F` is covered iff a single `c ≤ a, b`
/// has `min_F s(c) = 1`. By monotonicity only maximal elements of the lower
/// cone need checking. On failure the average of the minimizers lies in `F`
/// with `s(c) < 1` for every `c ≤ a, b`.
pub fn jp_algebra_check(alg: &EffectAlgebra) -> Verdict<JpFailure> {
    let space = StateSpace::new(alg);
    let mut pool: Vec<State> = Vec::new();
    for a in alg.elements().filter(|&a| a != alg.zero()) {
        for b in alg.elements().filter(|&b| b > a) {
            if alg.leq(a, b) || alg.leq(b, a) {
                continue;
            }
            let on_face = |s: &State| s.is_one(a) && s.is_one(b);
            if !pool.iter().any(on_face) {
                match space.pinned_one(&[a, b]) {
                    Some(s) => pool.push(s),
                    None => continue,
                }
            }
            let pins = [(a, rational::one()), (b, rational::one())];
            let mut minimizers = Vec::new();
            let mut covered = false;
            for c in crate::classify::maximal_elements(alg, a, b) {
                let (min, s) = space
                    .optimize(&pins, &[(c, rational::one())], false)
                    .expect("face is nonempty");
                if min.is_one() {
                    covered = true;
                    break;
                }
                minimizers.push(s);
            }
            if !covered {
                let k = minimizers.len() as i64;
                let weights = vec![rational::ratio(1, k); minimizers.len()];
                let state = convex_combine(&minimizers, &weights).expect("uniform weights");
                debug_assert!(!jp_state_check(alg, &state).holds());
                return Verdict::Fails(JpFailure { a, b, state });
            }
        }
    }
    Verdict::Holds
}

/// Pointwise convex combination with positive weights summing to 1.
pub fn convex_combine(states: &[State], weights: &[Rational]) -> Result<State, StateError> {
    if states.len() != weights.len() {
        return Err(StateError::LengthMismatch(states.len(), weights.len()));
    }
    if states.is_empty() {
        return Err(StateError::Empty);
    }
    if weights.iter().any(|w| !w.is_positive()) {
        return Err(StateError::NonPositiveWeight);
    }
    let total: Rational = weights.iter().sum();
    if !total.is_one() {
        return Err(StateError::WeightSum(rational::format(&total)));
    }
    let n = states[0].values.len();
    let mut values = vec![rational::zero(); n];
    for (s, w) in states.iter().zip(weights) {
        for (v, x) in values.iter_mut().zip(&s.values) {
            *v += w * x;
        }
    }
    Ok(State::new(values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{validate, SumTable};
    use crate::concrete::{even_subsets, powerset};
    use crate::rational::{int, ratio};

    fn c3() -> EffectAlgebra {
        let mut t = SumTable::new(3, 0, 1);
        t.define(2, 2, 1);
        validate(&t).unwrap()
    }

    fn e(i: usize) -> ElementId {
        ElementId::new(i)
    }

    #[test]
    fn is_state_examples() {
        let sys = even_subsets(4).unwrap();
        let alg = sys.to_algebra().unwrap();
        assert!(is_state(&alg, sys.point_state(0).unwrap().values()).is_ok());
        assert_eq!(
            is_state(&alg, &vec![int(0); 8]),
            Err(StateViolation::NotNormalized)
        );
        let c3 = c3();
        assert!(is_state(&c3, &[int(0), int(1), ratio(1, 2)]).is_ok());
        assert_eq!(
            is_state(&c3, &[int(0), int(1), ratio(1, 3)]),
            Err(StateViolation::NotAdditive(e(2), e(2), e(1)))
        );
        assert_eq!(
            is_state(&c3, &[int(0), int(1)]),
            Err(StateViolation::Length {
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn two_valued_counts() {
        let sys = even_subsets(4).unwrap();
        let alg = sys.to_algebra().unwrap();
        let tv = two_valued_states(&alg);
        assert_eq!(tv.len(), 8);
        let points = sys.point_states();
        assert_eq!(points.iter().filter(|p| tv.contains(p)).count(), 4);
        assert!(two_valued_states(&c3()).is_empty());
        assert_eq!(
            two_valued_states(&powerset(2).unwrap().to_algebra().unwrap()).len(),
            2
        );
    }

    #[test]
    fn lp_examples() {
        let c3 = c3();
        assert!(lp_feasible(&c3, &StatePolytopeQuery::new().pin(e(2), int(1))).is_none());
        let s = lp_feasible(&c3, &StatePolytopeQuery::new()).unwrap();
        assert_eq!(s.value(e(2)), &ratio(1, 2));

        let alg = even_subsets(4).unwrap().to_algebra().unwrap();
        let ad = alg.resolve("ad").unwrap();
        let ab = alg.resolve("ab").unwrap();
        let (min, s) = lp_extremize(
            &alg,
            &StatePolytopeQuery::new().pin(ad, int(1)).minimize(ab),
        )
        .unwrap();
        assert_eq!(min, int(0));
        assert!(is_state(&alg, s.values()).is_ok());
    }

    #[test]
    fn unital_and_sod_examples() {
        let sys = even_subsets(4).unwrap();
        let alg = sys.to_algebra().unwrap();
        let sabc: Vec<State> = (0..3).map(|x| sys.point_state(x).unwrap()).collect();
        assert!(unital_set_check(&alg, &sabc).holds());
        assert_eq!(
            sod_set_check(&alg, &sabc),
            Verdict::Fails((alg.resolve("ad").unwrap(), alg.resolve("ab").unwrap()))
        );
        assert_eq!(unital_set_check(&alg, &[]), Verdict::Fails(e(1)));
        assert_eq!(
            unital_set_check(&alg, &sabc[..1]),
            Verdict::Fails(alg.resolve("bc").unwrap())
        );
        assert!(sod_set_check(&alg, &sys.point_states()).holds());

        assert_eq!(unital_full_check(&c3()), Verdict::Fails(e(2)));
        assert!(!sod_full_check(&c3()).holds());
        assert!(unital_full_check(&powerset(3).unwrap().to_algebra().unwrap()).holds());
        assert!(unital_full_check(&even_subsets(6).unwrap().to_algebra().unwrap()).holds());
    }

    #[test]
    fn jauch_piron_examples() {
        let sys = even_subsets(4).unwrap();
        let alg = sys.to_algebra().unwrap();
        let sa = sys.point_state(0).unwrap();
        assert_eq!(
            jp_state_check(&alg, &sa),
            Verdict::Fails((alg.resolve("ab").unwrap(), alg.resolve("ac").unwrap()))
        );
        let failure = jp_algebra_check(&alg);
        let w = failure.witness().expect("even-4 is not Jauch-Piron");
        assert!(is_state(&alg, w.state.values()).is_ok());
        assert!(!jp_state_check(&alg, &w.state).holds());

        let p3 = powerset(3).unwrap().to_algebra().unwrap();
        for s in two_valued_states(&p3) {
            assert!(jp_state_check(&p3, &s).holds());
        }
        assert!(jp_algebra_check(&p3).holds());

        let c3 = c3();
        let only = lp_feasible(&c3, &StatePolytopeQuery::new()).unwrap();
        assert!(jp_state_check(&c3, &only).holds());
        assert!(jp_algebra_check(&c3).holds());
    }

    #[test]
    fn convex_combinations() {
        let sys = even_subsets(4).unwrap();
        let alg = sys.to_algebra().unwrap();
        let pts = sys.point_states();
        let avg = convex_combine(&pts, &vec![ratio(1, 4); 4]).unwrap();
        for i in 1..7 {
            assert_eq!(avg.values()[i], ratio(1, 2));
        }
        assert!(is_state(&alg, avg.values()).is_ok());
        assert_eq!(convex_combine(&pts[..1], &[int(1)]).unwrap(), pts[0]);
        assert!(matches!(
            convex_combine(&pts[..2], &[ratio(1, 2), ratio(1, 3)]),
            Err(StateError::WeightSum(_))
        ));
        let half = convex_combine(&pts[..2], &[ratio(1, 2), ratio(1, 2)]).unwrap();
        assert!(is_state(&alg, half.values()).is_ok());
    }
}
