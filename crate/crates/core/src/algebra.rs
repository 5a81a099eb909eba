//! Finite effect algebras given by partial sum tables.
//!
//! A [`SumTable`] is an unchecked list of defined sums. [`validate`] checks the
//! effect algebra axioms and, on success, derives the partial order, the
//! orthosupplement and the difference `b ⊖ a` into an immutable
//! [`EffectAlgebra`].

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

/// Largest carrier handled by the dense representation.
pub const MAX_CARRIER: usize = 4096;

const NONE: u16 = u16::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(u16);

impl ElementId {
    pub fn new(index: usize) -> Self {
        assert!(
            index < MAX_CARRIER,
            "element index {index} exceeds carrier cap"
        );
        ElementId(index as u16)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Raw partial sum table as authored. Indices are not checked until
/// [`validate`]; sums with zero are implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumTable {
    n: usize,
    zero: usize,
    one: usize,
    entries: Vec<(usize, usize, usize)>,
    labels: Vec<Option<String>>,
}

impl SumTable {
    pub fn new(n: usize, zero: usize, one: usize) -> Self {
        SumTable {
            n,
            zero,
            one,
            entries: Vec::new(),
            labels: vec![None; n.min(MAX_CARRIER)],
        }
    }

    /// Records `i ⊕ j = k`. The symmetric entry is implied.
    pub fn define(&mut self, i: usize, j: usize, k: usize) -> &mut Self {
        self.entries.push((i, j, k));
        self
    }

    pub fn set_label(&mut self, i: usize, label: impl Into<String>) -> &mut Self {
        if i < self.labels.len() {
            self.labels[i] = Some(label.into());
        }
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn entries(&self) -> &[(usize, usize, usize)] {
        &self.entries
    }

    pub fn label(&self, i: usize) -> Option<&str> {
        self.labels.get(i).and_then(|l| l.as_deref())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// Carrier size outside `2..=MAX_CARRIER`.
    Carrier,
    /// An index outside the carrier.
    Range,
    /// Zero and one coincide.
    ZeroIsOne,
    /// The same ordered entry given twice with different values.
    Conflict,
    /// `i ⊕ j` and `j ⊕ i` given with different values.
    Commutativity,
    /// An explicit sum with zero other than `a ⊕ 0 = a`.
    ZeroSum,
    Associativity,
    /// Missing or non-unique orthosupplement.
    Orthosupplement,
    /// `a ⊕ 1` defined for some `a ≠ 0`.
    ZeroOneLaw,
    /// Two different differences `b ⊖ a`.
    Cancellation,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Carrier => "carrier size",
            Axiom::Range => "index out of range",
            Axiom::ZeroIsOne => "zero equals one",
            Axiom::Conflict => "conflicting entries",
            Axiom::Commutativity => "commutativity (1)",
            Axiom::ZeroSum => "sum with zero",
            Axiom::Associativity => "associativity (2)",
            Axiom::Orthosupplement => "unique orthosupplement (3)",
            Axiom::ZeroOneLaw => "zero-one law (4)",
            Axiom::Cancellation => "cancellation",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Violation {
    pub axiom: Axiom,
    pub elements: Vec<usize>,
}

impl Violation {
    fn new(axiom: Axiom, elements: Vec<usize>) -> Self {
        Violation { axiom, elements }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.axiom)?;
        for e in &self.elements {
            write!(f, " {e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("element {0} is not below {1}")]
    NotBelow(ElementId, ElementId),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
}

/// A validated finite effect algebra. Immutable.
#[derive(Clone, PartialEq, Eq)]
pub struct EffectAlgebra {
    n: usize,
    zero: ElementId,
    one: ElementId,
    sums: Vec<u16>,
    leq: Vec<bool>,
    diff: Vec<u16>,
    supplement: Vec<ElementId>,
    labels: Vec<String>,
}

impl fmt::Debug for EffectAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EffectAlgebra")
            .field("n", &self.n)
            .field("zero", &self.zero)
            .field("one", &self.one)
            .field("sums", &self.defined_sums().collect::<Vec<_>>())
            .finish()
    }
}

/// Checks the effect algebra axioms, collecting every violation found.
pub fn validate(table: &SumTable) -> Result<EffectAlgebra, Vec<Violation>> {
    let n = table.n;
    if !(2..=MAX_CARRIER).contains(&n) {
        return Err(vec![Violation::new(Axiom::Carrier, vec![n])]);
    }
    let mut violations = BTreeSet::new();
    for &e in &[table.zero, table.one] {
        if e >= n {
            violations.insert(Violation::new(Axiom::Range, vec![e]));
        }
    }
    if !violations.is_empty() {
        return Err(violations.into_iter().collect());
    }
    if table.zero == table.one {
        return Err(vec![Violation::new(Axiom::ZeroIsOne, vec![table.zero])]);
    }
    let (zero, one) = (table.zero, table.one);

    let mut sums = vec![NONE; n * n];
    let mut first: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    for &(i, j, k) in &table.entries {
        if i >= n || j >= n || k >= n {
            violations.insert(Violation::new(Axiom::Range, vec![i, j, k]));
            continue;
        }
        if i == zero || j == zero {
            let other = if i == zero { j } else { i };
            if k != other {
                violations.insert(Violation::new(Axiom::ZeroSum, vec![i, j, k]));
            }
            continue;
        }
        let key = (i.min(j), i.max(j));
        let cell = sums[i * n + j];
        if cell == NONE {
            sums[i * n + j] = k as u16;
            sums[j * n + i] = k as u16;
            first.insert(key, (i, j));
        } else if cell as usize != k {
            let axiom = if first.get(&key) == Some(&(i, j)) {
                Axiom::Conflict
            } else {
                Axiom::Commutativity
            };
            violations.insert(Violation::new(axiom, vec![i, j, cell as usize, k]));
        }
    }
    for a in 0..n {
        sums[a * n + zero] = a as u16;
        sums[zero * n + a] = a as u16;
    }
    let get = |a: usize, b: usize| -> Option<usize> {
        let v = sums[a * n + b];
        (v != NONE).then_some(v as usize)
    };

    for a in 0..n {
        if a != zero && get(a, one).is_some() {
            violations.insert(Violation::new(Axiom::ZeroOneLaw, vec![a]));
        }
    }

    let mut supplement = vec![ElementId::new(0); n];
    for (a, slot) in supplement.iter_mut().enumerate() {
        let candidates: Vec<usize> = (0..n).filter(|&c| get(a, c) == Some(one)).collect();
        if candidates.len() == 1 {
            *slot = ElementId::new(candidates[0]);
        } else {
            let mut elements = vec![a];
            elements.extend(candidates);
            violations.insert(Violation::new(Axiom::Orthosupplement, elements));
        }
    }

    // partners[d] = [(c, d ⊕ c)] over nonzero c
    let partners: Vec<Vec<(usize, usize)>> = (0..n)
        .map(|d| {
            (0..n)
                .filter(|&c| c != zero)
                .filter_map(|c| get(d, c).map(|e| (c, e)))
                .collect()
        })
        .collect();
    for a in (0..n).filter(|&a| a != zero) {
        for &(b, d) in &partners[a] {
            // (a ⊕ b) ⊕ c exists  ⇒  a ⊕ (b ⊕ c) exists and agrees
            for &(c, e) in &partners[d] {
                match get(b, c).and_then(|f| get(a, f)) {
                    Some(e2) if e2 == e => {}
                    _ => {
                        violations.insert(Violation::new(Axiom::Associativity, vec![a, b, c]));
                    }
                }
            }
        }
    }
    for b in (0..n).filter(|&b| b != zero) {
        for &(c, f) in &partners[b] {
            // a ⊕ (b ⊕ c) exists  ⇒  (a ⊕ b) ⊕ c exists and agrees
            for &(a, e) in &partners[f] {
                match get(a, b).and_then(|d| get(d, c)) {
                    Some(e2) if e2 == e => {}
                    _ => {
                        violations.insert(Violation::new(Axiom::Associativity, vec![a, b, c]));
                    }
                }
            }
        }
    }

    if !violations.is_empty() {
        return Err(violations.into_iter().collect());
    }

    let mut leq = vec![false; n * n];
    let mut diff = vec![NONE; n * n];
    for a in 0..n {
        for c in 0..n {
            if let Some(s) = get(a, c) {
                leq[a * n + s] = true;
                let slot = &mut diff[s * n + a];
                if *slot == NONE {
                    *slot = c as u16;
                } else if *slot as usize != c {
                    violations.insert(Violation::new(
                        Axiom::Cancellation,
                        vec![s, a, *slot as usize, c],
                    ));
                }
            }
        }
    }
    if !violations.is_empty() {
        return Err(violations.into_iter().collect());
    }

    let labels = (0..n)
        .map(|i| match table.label(i) {
            Some(l) => l.to_string(),
            None if i == zero => "0".to_string(),
            None if i == one => "1".to_string(),
            None => format!("e{i}"),
        })
        .collect();

    Ok(EffectAlgebra {
        n,
        zero: ElementId::new(zero),
        one: ElementId::new(one),
        sums,
        leq,
        diff,
        supplement,
        labels,
    })
}

impl EffectAlgebra {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn zero(&self) -> ElementId {
        self.zero
    }

    pub fn one(&self) -> ElementId {
        self.one
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.n).map(ElementId::new)
    }

    pub fn element(&self, index: usize) -> Option<ElementId> {
        (index < self.n).then(|| ElementId::new(index))
    }

    pub fn sum(&self, a: ElementId, b: ElementId) -> Option<ElementId> {
        let v = self.sums[a.index() * self.n + b.index()];
        (v != NONE).then_some(ElementId(v))
    }

    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.leq[a.index() * self.n + b.index()]
    }

    pub fn lt(&self, a: ElementId, b: ElementId) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn supplement(&self, a: ElementId) -> ElementId {
        self.supplement[a.index()]
    }

    /// `b ⊖ a`, the unique `c` with `a ⊕ c = b`.
    pub fn ominus(&self, b: ElementId, a: ElementId) -> Result<ElementId, AlgebraError> {
        let v = self.diff[b.index() * self.n + a.index()];
        if v == NONE {
            Err(AlgebraError::NotBelow(a, b))
        } else {
            Ok(ElementId(v))
        }
    }

    pub fn orthogonal(&self, a: ElementId, b: ElementId) -> bool {
        self.sum(a, b).is_some()
    }

    /// `[0,a] ∩ [0,b]` in increasing index order.
    pub fn lower_cone(&self, a: ElementId, b: ElementId) -> Vec<ElementId> {
        self.elements()
            .filter(|&c| self.leq(c, a) && self.leq(c, b))
            .collect()
    }

    pub fn upper_cone(&self, a: ElementId, b: ElementId) -> Vec<ElementId> {
        self.elements()
            .filter(|&c| self.leq(a, c) && self.leq(b, c))
            .collect()
    }

    /// All covering pairs `a ⋖ b`.
    pub fn hasse_covers(&self) -> Vec<(ElementId, ElementId)> {
        let mut covers = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if self.lt(a, b) && !self.elements().any(|c| self.lt(a, c) && self.lt(c, b)) {
                    covers.push((a, b));
                }
            }
        }
        covers
    }

    /// Defined sums `a ⊕ b = c` with `a ≤ b` by index and both nonzero.
    pub fn defined_sums(&self) -> impl Iterator<Item = (ElementId, ElementId, ElementId)> + '_ {
        let z = self.zero;
        self.elements().filter(move |&a| a != z).flat_map(move |a| {
            self.elements()
                .filter(move |&b| b >= a && b != z)
                .filter_map(move |b| self.sum(a, b).map(|c| (a, b, c)))
        })
    }

    pub fn label(&self, a: ElementId) -> &str {
        &self.labels[a.index()]
    }

    /// Resolves a label, falling back to a decimal index.
    pub fn resolve(&self, name: &str) -> Result<ElementId, AlgebraError> {
        if let Some(i) = self.labels.iter().position(|l| l == name) {
            return Ok(ElementId::new(i));
        }
        name.parse::<usize>()
            .ok()
            .and_then(|i| self.element(i))
            .ok_or_else(|| AlgebraError::UnknownElement(name.to_string()))
    }

    /// Rebuilds a table that validates back to this algebra.
    pub fn to_sum_table(&self) -> SumTable {
        let mut t = SumTable::new(self.n, self.zero.index(), self.one.index());
        for (a, b, c) in self.defined_sums() {
            t.define(a.index(), b.index(), c.index());
        }
        for a in self.elements() {
            t.set_label(a.index(), self.label(a));
        }
        t
    }

    /// Same algebra with elements renamed.
    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = labels;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn c3() -> EffectAlgebra {
        let mut t = SumTable::new(3, 0, 1);
        t.define(2, 2, 1).set_label(2, "a");
        validate(&t).unwrap()
    }

    fn e(i: usize) -> ElementId {
        ElementId::new(i)
    }

    #[test]
    fn c3_is_valid() {
        let c3 = c3();
        let a = c3.resolve("a").unwrap();
        assert!(c3.leq(a, c3.one()));
        assert!(!c3.leq(c3.one(), a));
        assert_eq!(c3.supplement(a), a);
        assert_eq!(c3.ominus(a, c3.zero()).unwrap(), a);
        assert_eq!(c3.ominus(c3.one(), a).unwrap(), a);
        assert!(c3.orthogonal(a, a));
        assert_eq!(c3.hasse_covers(), vec![(e(0), a), (a, e(1))]);
    }

    #[test]
    fn two_element_algebra() {
        let alg = validate(&SumTable::new(2, 0, 1)).unwrap();
        assert_eq!(alg.hasse_covers(), vec![(e(0), e(1))]);
        assert_eq!(alg.supplement(e(0)), e(1));
        assert_eq!(alg.lower_cone(e(1), e(1)), vec![e(0), e(1)]);
    }

    #[test]
    fn ominus_requires_order() {
        let c3 = c3();
        assert_eq!(
            c3.ominus(e(2), e(1)),
            Err(AlgebraError::NotBelow(e(1), e(2)))
        );
    }

    #[test]
    fn duplicate_supplement_is_reported() {
        // a ⊕ a' = 1 and a ⊕ b' = 1 with b' ≠ a'
        let mut t = SumTable::new(5, 0, 1);
        t.define(2, 3, 1)
            .define(2, 4, 1)
            .define(3, 3, 1)
            .define(4, 4, 1);
        let err = validate(&t).unwrap_err();
        assert!(err
            .iter()
            .any(|v| v.axiom == Axiom::Orthosupplement && v.elements == vec![2, 3, 4]));
    }

    #[test]
    fn zero_one_law_and_zero_sums() {
        let mut t = SumTable::new(3, 0, 1);
        t.define(2, 2, 1).define(2, 1, 1).define(0, 2, 1);
        let err = validate(&t).unwrap_err();
        let axioms: Vec<Axiom> = err.iter().map(|v| v.axiom).collect();
        assert!(axioms.contains(&Axiom::ZeroOneLaw));
        assert!(axioms.contains(&Axiom::ZeroSum));
    }

    #[test]
    fn conflicting_entries() {
        let mut t = SumTable::new(4, 0, 1);
        t.define(2, 3, 1).define(3, 2, 2).define(2, 3, 3);
        let err = validate(&t).unwrap_err();
        let axioms: BTreeSet<Axiom> = err.iter().map(|v| v.axiom).collect();
        assert!(axioms.contains(&Axiom::Commutativity));
        assert!(axioms.contains(&Axiom::Conflict));
    }

    #[test]
    fn associativity_existence_direction() {
        // 4-chain 0 < a < b < 1 with a⊕a = b, a⊕b = 1 is valid; dropping a⊕b breaks it.
        let mut good = SumTable::new(4, 0, 1);
        good.define(2, 2, 3).define(2, 3, 1);
        assert!(validate(&good).is_ok());
        // a' = b, c' = c, a ⊕ a = c: (a ⊕ a) ⊕ c = 1 but a ⊕ c is undefined
        let mut bad = SumTable::new(5, 0, 1);
        bad.define(2, 3, 1).define(4, 4, 1).define(2, 2, 4);
        let err = validate(&bad).unwrap_err();
        assert!(err
            .iter()
            .any(|v| v.axiom == Axiom::Associativity && v.elements == vec![2, 2, 4]));
    }

    #[test]
    fn out_of_range_and_carrier() {
        assert_eq!(
            validate(&SumTable::new(1, 0, 0)).unwrap_err()[0].axiom,
            Axiom::Carrier
        );
        let mut t = SumTable::new(3, 0, 1);
        t.define(2, 2, 1).define(2, 7, 1);
        assert!(validate(&t)
            .unwrap_err()
            .iter()
            .any(|v| v.axiom == Axiom::Range));
        assert_eq!(
            validate(&SumTable::new(3, 1, 1)).unwrap_err()[0].axiom,
            Axiom::ZeroIsOne
        );
    }

    #[test]
    fn roundtrip_through_table() {
        let c3 = c3();
        assert_eq!(validate(&c3.to_sum_table()).unwrap(), c3);
    }
}
