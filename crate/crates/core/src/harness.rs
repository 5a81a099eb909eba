//! Implication checks over families of finite algebras.
//!
//! Each theorem is evaluated as `hypothesis ⇒ conclusion` using the decision
//! procedures of [`crate::classify`] and [`crate::states`]. State sets of
//! Jauch–Piron states are assembled from two-valued Jauch–Piron states and
//! from LP vertices that turn out to be Jauch–Piron; the full state space
//! counts as such a set whenever the algebra itself is Jauch–Piron.

use std::fmt;

use crate::algebra::EffectAlgebra;
use crate::classify::{classify, Property};
use crate::enumerate::{enumerate_all, EnumerateError};
use crate::format::write_ea;
use crate::states::{
    jp_state_check, sod_set_check, two_valued_states, unital_full_with, unital_set_check, State,
    StateSpace,
};

/// Subsets of two-valued Jauch–Piron states are tried exhaustively up to
/// this many states.
const SUBSET_LIMIT: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Theorem {
    SodImpliesUnital,
    UnitalImpliesOrthoalgebra,
    SodImpliesOmp,
    MaximalityUnitalJpImpliesOmp,
    UnitalIffSodForJpStates,
    JpUnitalImpliesMaximality,
    JpUnitalImpliesOml,
    FiniteImpliesChainFinite,
    ChainFiniteImpliesOrthocomplete,
    OrthocompleteImpliesChainBounds,
    ChainBoundsImpliesMaximality,
    JpUnitalImpliesLattice,
    LatticeImpliesChainBounds,
}

impl Theorem {
    pub const ALL: [Theorem; 13] = [
        Theorem::SodImpliesUnital,
        Theorem::UnitalImpliesOrthoalgebra,
        Theorem::SodImpliesOmp,
        Theorem::MaximalityUnitalJpImpliesOmp,
        Theorem::UnitalIffSodForJpStates,
        Theorem::JpUnitalImpliesMaximality,
        Theorem::JpUnitalImpliesOml,
        Theorem::FiniteImpliesChainFinite,
        Theorem::ChainFiniteImpliesOrthocomplete,
        Theorem::OrthocompleteImpliesChainBounds,
        Theorem::ChainBoundsImpliesMaximality,
        Theorem::JpUnitalImpliesLattice,
        Theorem::LatticeImpliesChainBounds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::SodImpliesUnital => "strongly order determining => unital",
            Theorem::UnitalImpliesOrthoalgebra => "unital states => orthoalgebra",
            Theorem::SodImpliesOmp => "strongly order determining states => orthomodular poset",
            Theorem::MaximalityUnitalJpImpliesOmp => {
                "maximality + unital Jauch-Piron states => orthomodular poset"
            }
            Theorem::UnitalIffSodForJpStates => {
                "maximality + Jauch-Piron states: unital <=> strongly order determining"
            }
            Theorem::JpUnitalImpliesMaximality => "Jauch-Piron + countable unital => maximality",
            Theorem::JpUnitalImpliesOml => "Jauch-Piron + countable unital => orthomodular lattice",
            Theorem::FiniteImpliesChainFinite => "(F) => (CF)",
            Theorem::ChainFiniteImpliesOrthocomplete => "(CF) => (OC)",
            Theorem::OrthocompleteImpliesChainBounds => "(OC) => (CU)",
            Theorem::ChainBoundsImpliesMaximality => "(CU) => (M)",
            Theorem::JpUnitalImpliesLattice => "(JPCU) => (L)",
            Theorem::LatticeImpliesChainBounds => "(L) => (CU)",
        }
    }
}

/// One evaluated implication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub theorem: Theorem,
    pub hypothesis: bool,
    pub conclusion: bool,
    pub context: String,
}

impl Instance {
    pub fn violated(&self) -> bool {
        self.hypothesis && !self.conclusion
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremStat {
    pub theorem: Theorem,
    pub instances: usize,
    pub hypothesis_held: usize,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarnessViolation {
    pub theorem: Theorem,
    pub context: String,
    /// The offending algebra in `.ea` form.
    pub table: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarnessReport {
    pub algebras: usize,
    pub per_size: Vec<(usize, usize)>,
    pub stats: Vec<TheoremStat>,
    pub violations: Vec<HarnessViolation>,
}

impl HarnessReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn stat(&self, theorem: Theorem) -> &TheoremStat {
        self.stats.iter().find(|s| s.theorem == theorem).unwrap()
    }
}

impl fmt::Display for HarnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "algebras checked: {}", self.algebras)?;
        for (n, c) in &self.per_size {
            write!(f, " n={n}:{c}")?;
        }
        writeln!(f)?;
        for s in &self.stats {
            writeln!(
                f,
                "  {:<72} instances={:<4} hypothesis={:<4} violations={}",
                s.theorem.name(),
                s.instances,
                s.hypothesis_held,
                s.violations
            )?;
        }
        for v in &self.violations {
            writeln!(
                f,
                "VIOLATION {} ({})\n{}",
                v.theorem.name(),
                v.context,
                v.table
            )?;
        }
        writeln!(f, "total violations: {}", self.violations.len())
    }
}

fn nonempty_subsets<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    (1u32..1 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

/// Evaluates every theorem on one algebra.
pub fn check_algebra(alg: &EffectAlgebra) -> Vec<Instance> {
    use Property::*;
    let report = classify(alg, true);
    let flag = |p: Property| report.get(p).unwrap_or(false);
    let mut out = Vec::new();
    let mut push = |theorem, hypothesis, conclusion, context: &str| {
        out.push(Instance {
            theorem,
            hypothesis,
            conclusion,
            context: context.to_string(),
        });
    };

    let space = StateSpace::new(alg);
    let two_valued = two_valued_states(alg);
    let (_, vertices) = unital_full_with(&space);
    let jp_two_valued: Vec<State> = two_valued
        .iter()
        .filter(|s| jp_state_check(alg, s).holds())
        .cloned()
        .collect();
    let mut jp_states = jp_two_valued.clone();
    for v in vertices {
        if jp_state_check(alg, &v).holds() && !jp_states.contains(&v) {
            jp_states.push(v);
        }
    }

    let unital = flag(Unital);
    let sod = flag(Sod);
    let jp = flag(JauchPiron);
    let m = flag(Maximality);
    let omp = flag(Omp);

    // Arbitrary state sets.
    let mut sets: Vec<(String, Vec<State>)> = vec![
        ("two-valued states".into(), two_valued.clone()),
        ("assembled Jauch-Piron states".into(), jp_states.clone()),
    ];
    for s in &sets {
        let set_unital = unital_set_check(alg, &s.1).holds();
        let set_sod = sod_set_check(alg, &s.1).holds();
        push(Theorem::SodImpliesUnital, set_sod, set_unital, &s.0);
        push(
            Theorem::UnitalImpliesOrthoalgebra,
            set_unital,
            flag(Orthoalgebra),
            &s.0,
        );
        push(Theorem::SodImpliesOmp, set_sod, omp, &s.0);
    }
    push(Theorem::SodImpliesUnital, sod, unital, "full state space");
    push(
        Theorem::UnitalImpliesOrthoalgebra,
        unital,
        flag(Orthoalgebra),
        "full state space",
    );
    push(Theorem::SodImpliesOmp, sod, omp, "full state space");

    // Sets of Jauch–Piron states.
    sets.remove(0);
    if jp_two_valued.len() <= SUBSET_LIMIT {
        for (k, subset) in nonempty_subsets(&jp_two_valued).into_iter().enumerate() {
            sets.push((format!("two-valued Jauch-Piron subset #{}", k + 1), subset));
        }
    }
    for (name, set) in &sets {
        let set_unital = unital_set_check(alg, set).holds();
        let set_sod = sod_set_check(alg, set).holds();
        push(Theorem::SodImpliesUnital, set_sod, set_unital, name);
        push(
            Theorem::MaximalityUnitalJpImpliesOmp,
            m && set_unital,
            omp,
            name,
        );
        push(
            Theorem::UnitalIffSodForJpStates,
            m,
            set_unital == set_sod,
            name,
        );
    }
    if jp {
        let ctx = "full state space (all states Jauch-Piron)";
        push(Theorem::MaximalityUnitalJpImpliesOmp, m && unital, omp, ctx);
        push(Theorem::UnitalIffSodForJpStates, m, unital == sod, ctx);
    }

    let jpcu = jp && unital;
    push(
        Theorem::JpUnitalImpliesMaximality,
        jpcu,
        m,
        "full state space",
    );
    push(
        Theorem::JpUnitalImpliesOml,
        jpcu,
        flag(Oml),
        "full state space",
    );

    push(
        Theorem::FiniteImpliesChainFinite,
        flag(Finite),
        flag(ChainFinite),
        "",
    );
    push(
        Theorem::ChainFiniteImpliesOrthocomplete,
        flag(ChainFinite),
        flag(Orthocomplete),
        "",
    );
    push(
        Theorem::OrthocompleteImpliesChainBounds,
        flag(Orthocomplete),
        flag(ChainUpperBounds),
        "",
    );
    push(
        Theorem::ChainBoundsImpliesMaximality,
        flag(ChainUpperBounds),
        m,
        "",
    );
    push(Theorem::JpUnitalImpliesLattice, jpcu, flag(Lattice), "");
    push(
        Theorem::LatticeImpliesChainBounds,
        flag(Lattice),
        flag(ChainUpperBounds),
        "",
    );
    out
}

/// Runs every theorem over the given algebras.
pub fn run_on(algebras: &[EffectAlgebra]) -> HarnessReport {
    let mut stats: Vec<TheoremStat> = Theorem::ALL
        .iter()
        .map(|&theorem| TheoremStat {
            theorem,
            instances: 0,
            hypothesis_held: 0,
            violations: 0,
        })
        .collect();
    let mut violations = Vec::new();
    let mut per_size: Vec<(usize, usize)> = Vec::new();
    for alg in algebras {
        match per_size.iter_mut().find(|(n, _)| *n == alg.n()) {
            Some((_, c)) => *c += 1,
            None => per_size.push((alg.n(), 1)),
        }
        for inst in check_algebra(alg) {
            let s = stats
                .iter_mut()
                .find(|s| s.theorem == inst.theorem)
                .unwrap();
            s.instances += 1;
            if inst.hypothesis {
                s.hypothesis_held += 1;
            }
            if inst.violated() {
                s.violations += 1;
                violations.push(HarnessViolation {
                    theorem: inst.theorem,
                    context: inst.context,
                    table: write_ea(alg),
                });
            }
        }
    }
    per_size.sort();
    HarnessReport {
        algebras: algebras.len(),
        per_size,
        stats,
        violations,
    }
}

/// Runs every theorem over all effect algebras with at most `n_max` elements.
pub fn theorem_harness(n_max: usize) -> Result<HarnessReport, EnumerateError> {
    let mut all = Vec::new();
    for n in 2..=n_max {
        all.extend(enumerate_all(n)?);
    }
    Ok(run_on(&all))
}
