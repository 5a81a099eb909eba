//! Structural predicates of finite effect algebras: orthoalgebras,
//! orthomodular posets and lattices, the maximality property and the chain
//! conditions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::algebra::{EffectAlgebra, ElementId};
use crate::states::{self, JpFailure};
use crate::Verdict;
use num_traits::Zero;

/// `b, c ≤ a` and `b ⊥ c` imply `b ⊕ c ≤ a`. Fails with `(b, c)`.
pub fn is_principal(alg: &EffectAlgebra, a: ElementId) -> Verdict<(ElementId, ElementId)> {
    let below: Vec<ElementId> = alg.elements().filter(|&x| alg.leq(x, a)).collect();
    for (i, &b) in below.iter().enumerate() {
        for &c in &below[i..] {
            if let Some(d) = alg.sum(b, c) {
                if !alg.leq(d, a) {
                    return Verdict::Fails((b, c));
                }
            }
        }
    }
    Verdict::Holds
}

/// `a ⊕ a` defined forces `a = 0`.
pub fn is_orthoalgebra(alg: &EffectAlgebra) -> Verdict<ElementId> {
    match alg
        .elements()
        .find(|&a| a != alg.zero() && alg.orthogonal(a, a))
    {
        Some(a) => Verdict::Fails(a),
        None => Verdict::Holds,
    }
}

/// A non-principal element `a` with `b, c ≤ a`, `b ⊥ c`, `b ⊕ c ≰ a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NonPrincipal {
    pub a: ElementId,
    pub b: ElementId,
    pub c: ElementId,
}

/// Every element principal.
pub fn is_omp(alg: &EffectAlgebra) -> Verdict<NonPrincipal> {
    for a in alg.elements() {
        if let Verdict::Fails((b, c)) = is_principal(alg, a) {
            return Verdict::Fails(NonPrincipal { a, b, c });
        }
    }
    Verdict::Holds
}

/// Orthomodularity via `a ⊕ b = a ∨ b` for every orthogonal pair.
pub fn is_omp_by_joins(alg: &EffectAlgebra) -> Verdict<(ElementId, ElementId)> {
    for (a, b, c) in alg.defined_sums() {
        if join(alg, a, b) != Some(c) {
            return Verdict::Fails((a, b));
        }
    }
    Verdict::Holds
}

/// Greatest lower bound, if it exists.
pub fn meet(alg: &EffectAlgebra, a: ElementId, b: ElementId) -> Option<ElementId> {
    let lower = alg.lower_cone(a, b);
    lower
        .iter()
        .copied()
        .find(|&m| lower.iter().all(|&c| alg.leq(c, m)))
}

/// Least upper bound, if it exists.
pub fn join(alg: &EffectAlgebra, a: ElementId, b: ElementId) -> Option<ElementId> {
    let upper = alg.upper_cone(a, b);
    upper
        .iter()
        .copied()
        .find(|&j| upper.iter().all(|&c| alg.leq(j, c)))
}

/// Least upper bound of an arbitrary finite set.
pub fn supremum(alg: &EffectAlgebra, set: &[ElementId]) -> Option<ElementId> {
    let upper: Vec<ElementId> = alg
        .elements()
        .filter(|&u| set.iter().all(|&x| alg.leq(x, u)))
        .collect();
    upper
        .iter()
        .copied()
        .find(|&j| upper.iter().all(|&c| alg.leq(j, c)))
}

/// Fails with the first pair lacking a meet or a join.
pub fn is_lattice(alg: &EffectAlgebra) -> Verdict<(ElementId, ElementId)> {
    for a in alg.elements() {
        for b in alg.elements().filter(|&b| b > a) {
            if meet(alg, a, b).is_none() || join(alg, a, b).is_none() {
                return Verdict::Fails((a, b));
            }
        }
    }
    Verdict::Holds
}

pub fn is_oml(alg: &EffectAlgebra) -> bool {
    is_omp(alg).holds() && is_lattice(alg).holds()
}

/// Maximal elements of `[0,a] ∩ [0,b]`.
pub fn maximal_elements(alg: &EffectAlgebra, a: ElementId, b: ElementId) -> Vec<ElementId> {
    let cone = alg.lower_cone(a, b);
    cone.iter()
        .copied()
        .filter(|&c| !cone.iter().any(|&d| alg.lt(c, d)))
        .collect()
}

pub fn has_maximality(alg: &EffectAlgebra) -> Verdict<(ElementId, ElementId)> {
    for a in alg.elements() {
        for b in alg.elements().filter(|&b| b >= a) {
            if maximal_elements(alg, a, b).is_empty() {
                return Verdict::Fails((a, b));
            }
        }
    }
    Verdict::Holds
}

/// A longest chain, bottom to top.
pub fn longest_chain(alg: &EffectAlgebra) -> Vec<ElementId> {
    // Longest chain starting at each element, by decreasing height.
    let n = alg.n();
    let mut order: Vec<ElementId> = alg.elements().collect();
    order.sort_by_key(|&a| std::cmp::Reverse(alg.elements().filter(|&b| alg.leq(b, a)).count()));
    let mut best: Vec<Option<ElementId>> = vec![None; n];
    let mut len = vec![1usize; n];
    for &a in &order {
        for b in alg.elements() {
            if alg.lt(a, b) && len[b.index()] + 1 > len[a.index()] {
                len[a.index()] = len[b.index()] + 1;
                best[a.index()] = Some(b);
            }
        }
    }
    let mut chain = vec![alg.zero()];
    while let Some(next) = best[chain.last().unwrap().index()] {
        chain.push(next);
    }
    chain
}

/// Every chain is finite. On a finite carrier every chain lies in a maximal
/// chain, so this verifies the longest one is bounded by the carrier.
pub fn is_chain_finite(alg: &EffectAlgebra) -> Verdict<Vec<ElementId>> {
    let chain = longest_chain(alg);
    let is_chain = chain.windows(2).all(|w| alg.lt(w[0], w[1]));
    if is_chain && chain.len() <= alg.n() {
        Verdict::Holds
    } else {
        Verdict::Fails(chain)
    }
}

/// Maximal chains of `[0,a] ∩ [0,b]`: cover paths from zero to a maximal
/// element of the cone.
pub fn maximal_chains(alg: &EffectAlgebra, a: ElementId, b: ElementId) -> Vec<Vec<ElementId>> {
    let cone = alg.lower_cone(a, b);
    let covers = |x: ElementId| -> Vec<ElementId> {
        cone.iter()
            .copied()
            .filter(|&y| alg.lt(x, y) && !cone.iter().any(|&z| alg.lt(x, z) && alg.lt(z, y)))
            .collect()
    };
    let mut out = Vec::new();
    let mut stack = vec![vec![alg.zero()]];
    while let Some(path) = stack.pop() {
        let next = covers(*path.last().unwrap());
        if next.is_empty() {
            out.push(path);
            continue;
        }
        for y in next.into_iter().rev() {
            let mut p = path.clone();
            p.push(y);
            stack.push(p);
        }
    }
    out
}

/// A chain of a lower cone lacking an upper bound inside the cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnboundedChain {
    pub a: ElementId,
    pub b: ElementId,
    pub chain: Vec<ElementId>,
}

/// Every chain in `[0,a] ∩ [0,b]` has an upper bound in the cone. A chain
/// has an upper bound whenever a maximal chain containing it does, so the
/// maximal chains are checked.
pub fn has_chain_upper_bounds(alg: &EffectAlgebra) -> Verdict<UnboundedChain> {
    for a in alg.elements() {
        for b in alg.elements().filter(|&b| b >= a) {
            let cone = alg.lower_cone(a, b);
            for chain in maximal_chains(alg, a, b) {
                let bounded = cone.iter().any(|&u| chain.iter().all(|&c| alg.leq(c, u)));
                if !bounded {
                    return Verdict::Fails(UnboundedChain { a, b, chain });
                }
            }
        }
    }
    Verdict::Holds
}

/// Orthogonal systems of nonzero elements, as multisets in nondecreasing
/// index order, paired with their total sum. Repetition of `a` stops once
/// `k·a` is undefined, which happens in every finite algebra.
pub fn orthogonal_systems(alg: &EffectAlgebra) -> Vec<(Vec<ElementId>, ElementId)> {
    let nonzero: Vec<ElementId> = alg.elements().filter(|&a| a != alg.zero()).collect();
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<ElementId>, ElementId, usize)> = vec![(Vec::new(), alg.zero(), 0)];
    while let Some((system, total, from)) = stack.pop() {
        if !system.is_empty() {
            out.push((system.clone(), total));
        }
        for (k, &a) in nonzero.iter().enumerate().skip(from) {
            if let Some(t) = alg.sum(total, a) {
                let mut next = system.clone();
                next.push(a);
                stack.push((next, t, k));
            }
        }
    }
    out.sort();
    out
}

/// Sums of all sub-multisets of an orthogonal system.
pub fn partial_sums(alg: &EffectAlgebra, system: &[ElementId]) -> Vec<ElementId> {
    let mut sums = BTreeSet::from([alg.zero()]);
    for &a in system {
        let extended: Vec<ElementId> = sums.iter().filter_map(|&s| alg.sum(s, a)).collect();
        sums.extend(extended);
    }
    sums.into_iter().collect()
}

/// Every orthogonal system's set of finite partial sums has a supremum.
pub fn is_orthocomplete(alg: &EffectAlgebra) -> Verdict<Vec<ElementId>> {
    for (system, _) in orthogonal_systems(alg) {
        if supremum(alg, &partial_sums(alg, &system)).is_none() {
            return Verdict::Fails(system);
        }
    }
    Verdict::Holds
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    Finite,
    ChainFinite,
    Orthocomplete,
    ChainUpperBounds,
    Maximality,
    Orthoalgebra,
    Omp,
    Lattice,
    Oml,
    Unital,
    Sod,
    JauchPiron,
}

impl Property {
    pub const STRUCTURAL: [Property; 9] = [
        Property::Finite,
        Property::ChainFinite,
        Property::Orthocomplete,
        Property::ChainUpperBounds,
        Property::Maximality,
        Property::Orthoalgebra,
        Property::Omp,
        Property::Lattice,
        Property::Oml,
    ];

    pub const STATES: [Property; 3] = [Property::Unital, Property::Sod, Property::JauchPiron];

    pub fn key(self) -> &'static str {
        match self {
            Property::Finite => "finite",
            Property::ChainFinite => "chain_finite",
            Property::Orthocomplete => "orthocomplete",
            Property::ChainUpperBounds => "chain_upper_bounds",
            Property::Maximality => "maximality",
            Property::Orthoalgebra => "orthoalgebra",
            Property::Omp => "omp",
            Property::Lattice => "lattice",
            Property::Oml => "oml",
            Property::Unital => "unital",
            Property::Sod => "sod",
            Property::JauchPiron => "jp_algebra",
        }
    }

    fn description(self) -> &'static str {
        match self {
            Property::Finite => "finite (F)",
            Property::ChainFinite => "chain finite (CF)",
            Property::Orthocomplete => "orthocomplete (OC)",
            Property::ChainUpperBounds => "chains in lower cones bounded (CU)",
            Property::Maximality => "maximality property (M)",
            Property::Orthoalgebra => "orthoalgebra",
            Property::Omp => "orthomodular poset",
            Property::Lattice => "lattice (L)",
            Property::Oml => "orthomodular lattice",
            Property::Unital => "unital state space",
            Property::Sod => "strongly order determining state space",
            Property::JauchPiron => "Jauch-Piron",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Element(ElementId),
    Pair(ElementId, ElementId),
    NonPrincipal(NonPrincipal),
    Chain(Vec<ElementId>),
    ConeChain(UnboundedChain),
    System(Vec<ElementId>),
    NotOmp,
    JauchPiron(JpFailure),
}

impl Witness {
    pub fn render(&self, alg: &EffectAlgebra) -> String {
        let l = |e: &ElementId| alg.label(*e).to_string();
        let list = |v: &[ElementId]| v.iter().map(l).collect::<Vec<_>>().join(", ");
        match self {
            Witness::Element(a) => format!("element {}", l(a)),
            Witness::Pair(a, b) => format!("pair ({}, {})", l(a), l(b)),
            Witness::NonPrincipal(np) => format!(
                "{} not principal: {}, {} below it but {} ⊕ {} is not",
                l(&np.a),
                l(&np.b),
                l(&np.c),
                l(&np.b),
                l(&np.c)
            ),
            Witness::Chain(c) => format!("chain [{}]", list(c)),
            Witness::ConeChain(u) => {
                format!(
                    "chain [{}] in [0,{}]∩[0,{}]",
                    list(&u.chain),
                    l(&u.a),
                    l(&u.b)
                )
            }
            Witness::System(s) => format!("orthogonal system [{}]", list(s)),
            Witness::NotOmp => "not an orthomodular poset".to_string(),
            Witness::JauchPiron(f) => {
                let support: Vec<String> = alg
                    .elements()
                    .filter(|&e| !f.state.value(e).is_zero())
                    .map(|e| format!("{}={}", l(&e), crate::rational::format(f.state.value(e))))
                    .collect();
                format!(
                    "pair ({}, {}) under the state {}",
                    l(&f.a),
                    l(&f.b),
                    support.join(" ")
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClassificationReport {
    pub flags: BTreeMap<Property, bool>,
    pub witnesses: BTreeMap<Property, Witness>,
}

impl ClassificationReport {
    pub fn get(&self, p: Property) -> Option<bool> {
        self.flags.get(&p).copied()
    }

    fn record<W>(&mut self, p: Property, verdict: Verdict<W>, wrap: impl FnOnce(W) -> Witness) {
        match verdict {
            Verdict::Holds => {
                self.flags.insert(p, true);
            }
            Verdict::Fails(w) => {
                self.flags.insert(p, false);
                self.witnesses.insert(p, wrap(w));
            }
        }
    }

    /// Implications that must hold between the computed flags; returns the
    /// violated ones.
    pub fn implication_violations(&self) -> Vec<(Property, Property)> {
        use Property::*;
        let pairs = [
            (Finite, ChainFinite),
            (ChainFinite, Orthocomplete),
            (Orthocomplete, ChainUpperBounds),
            (ChainUpperBounds, Maximality),
            (Lattice, ChainUpperBounds),
            (Oml, Omp),
            (Omp, Orthoalgebra),
            (Oml, Lattice),
            (Unital, Orthoalgebra),
            (Sod, Omp),
            (Sod, Unital),
        ];
        pairs
            .into_iter()
            .filter(|&(p, q)| self.get(p) == Some(true) && self.get(q) == Some(false))
            .collect()
    }

    /// `key=bool` pairs on one line: chain conditions, then the orthomodular
    /// lattice and state flags, then `omp lattice jp_algebra`.
    pub fn render_kv(&self) -> String {
        use Property::*;
        const ORDER: [Property; 12] = [
            Finite,
            ChainFinite,
            Orthocomplete,
            ChainUpperBounds,
            Maximality,
            Orthoalgebra,
            Oml,
            Unital,
            Sod,
            Omp,
            Lattice,
            JauchPiron,
        ];
        ORDER
            .iter()
            .filter_map(|p| self.flags.get(p).map(|v| format!("{}={}", p.key(), v)))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn render_text(&self, alg: &EffectAlgebra) -> String {
        let mut out = format!("effect algebra with {} elements\n", alg.n());
        for (p, v) in &self.flags {
            out.push_str(&format!(
                "  {:<42} {}",
                p.description(),
                if *v { "yes" } else { "no" }
            ));
            if let Some(w) = self.witnesses.get(p) {
                out.push_str(&format!("  [{}]", w.render(alg)));
            }
            out.push('\n');
        }
        out
    }
}

/// Computes every structural flag, and the state-space flags when asked.
pub fn classify(alg: &EffectAlgebra, with_states: bool) -> ClassificationReport {
    let mut r = ClassificationReport::default();
    r.flags.insert(Property::Finite, true);
    r.record(Property::ChainFinite, is_chain_finite(alg), Witness::Chain);
    r.record(
        Property::Orthocomplete,
        is_orthocomplete(alg),
        Witness::System,
    );
    r.record(
        Property::ChainUpperBounds,
        has_chain_upper_bounds(alg),
        Witness::ConeChain,
    );
    r.record(Property::Maximality, has_maximality(alg), |(a, b)| {
        Witness::Pair(a, b)
    });
    r.record(
        Property::Orthoalgebra,
        is_orthoalgebra(alg),
        Witness::Element,
    );
    let omp = is_omp(alg);
    let omp_holds = omp.holds();
    r.record(Property::Omp, omp, Witness::NonPrincipal);
    let lattice = is_lattice(alg);
    let oml = if lattice.holds() && !omp_holds {
        Verdict::Fails(Witness::NotOmp)
    } else {
        lattice.clone().map(|(a, b)| Witness::Pair(a, b))
    };
    r.record(Property::Lattice, lattice, |(a, b)| Witness::Pair(a, b));
    r.record(Property::Oml, oml, |w| w);
    if with_states {
        r.record(
            Property::Unital,
            states::unital_full_check(alg),
            Witness::Element,
        );
        r.record(Property::Sod, states::sod_full_check(alg), |(a, b)| {
            Witness::Pair(a, b)
        });
        r.record(
            Property::JauchPiron,
            states::jp_algebra_check(alg),
            Witness::JauchPiron,
        );
    }
    r
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_kv())
    }
}
