//! Constructive refutations on the infinite constructions.
//!
//! Each refuter takes a candidate, produces a witness defeating it, and
//! recomputes the relevant inclusions with [`SymbolicAlgebra::leq_sym`]
//! before returning. A refutation that fails its own checks is reported as
//! [`SymbolicError::Verification`] instead of being returned.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::{
    Construction, Point, Region, RegionKind, SymbolicAlgebra, SymbolicElement, SymbolicError,
};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RefutationKind {
    NoMaximal,
    NoUpperBound,
    NoSupremum,
    NotSod,
    NotJauchPiron,
}

impl RefutationKind {
    pub fn token(self) -> &'static str {
        match self {
            RefutationKind::NoMaximal => "no-maximal",
            RefutationKind::NoUpperBound => "no-upper-bound",
            RefutationKind::NoSupremum => "no-supremum",
            RefutationKind::NotSod => "not-sod",
            RefutationKind::NotJauchPiron => "not-jauch-piron",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymbolicWitness {
    Element(SymbolicElement),
    ChainIndex { n: u64, member: SymbolicElement },
    Pair(SymbolicElement, SymbolicElement),
}

impl fmt::Display for SymbolicWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolicWitness::Element(e) => write!(f, "{e}"),
            SymbolicWitness::ChainIndex { n, member } => write!(f, "n={n} C_n={member}"),
            SymbolicWitness::Pair(a, b) => write!(f, "({a}, {b})"),
        }
    }
}

/// One recomputed fact backing a refutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub statement: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refutation {
    pub kind: RefutationKind,
    pub witness: SymbolicWitness,
    pub claim: String,
    pub checks: Vec<Check>,
}

impl Refutation {
    pub fn verified(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn element(&self) -> Option<&SymbolicElement> {
        match &self.witness {
            SymbolicWitness::Element(e) => Some(e),
            SymbolicWitness::ChainIndex { member, .. } => Some(member),
            SymbolicWitness::Pair(..) => None,
        }
    }
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kind: {}", self.kind.token())?;
        writeln!(f, "claim: {}", self.claim)?;
        writeln!(f, "witness: {}", self.witness)?;
        for c in &self.checks {
            writeln!(
                f,
                "check [{}] {}",
                if c.holds { "ok" } else { "FAILED" },
                c.statement
            )?;
        }
        Ok(())
    }
}

fn check(statement: impl Into<String>, holds: bool) -> Check {
    Check {
        statement: statement.into(),
        holds,
    }
}

fn finish(
    kind: RefutationKind,
    witness: SymbolicWitness,
    claim: String,
    checks: Vec<Check>,
) -> Result<Refutation, SymbolicError> {
    if let Some(bad) = checks.iter().find(|c| !c.holds) {
        return Err(SymbolicError::Verification(bad.statement.clone()));
    }
    Ok(Refutation {
        kind,
        witness,
        claim,
        checks,
    })
}

fn require(alg: &SymbolicAlgebra, expected: Construction) -> Result<(), SymbolicError> {
    if alg.construction() == expected {
        Ok(())
    } else {
        Err(SymbolicError::WrongConstruction {
            expected: expected.token(),
            found: alg.construction().token(),
        })
    }
}

fn require_member(alg: &SymbolicAlgebra, e: &SymbolicElement) -> Result<(), SymbolicError> {
    if alg.is_member(e) {
        Ok(())
    } else {
        Err(SymbolicError::NotMember(
            e.clone(),
            alg.construction().token(),
        ))
    }
}

fn precondition(candidate: &SymbolicElement, reason: &str) -> SymbolicError {
    SymbolicError::Precondition {
        candidate: candidate.to_string(),
        reason: reason.to_string(),
    }
}

fn fixed(alg: &SymbolicAlgebra, text: &str) -> SymbolicElement {
    alg.parse(text).expect("construction constant parses")
}

/// Least point of `region` that the element does not mention.
fn fresh_point(e: &SymbolicElement, region: Region, first: u64) -> Point {
    let used = e.corrections_in(region);
    let index = (first..).find(|i| !used.contains(i)).unwrap();
    Point::new(region, index)
}

/// Given a finite subset `c` of X1 in omp-not-m, returns a strictly larger
/// element of `[0, X1+X2] ∩ [0, X1+X4]`, so `c` is not maximal there.
pub fn no_maximal_refuter(
    alg: &SymbolicAlgebra,
    c: &SymbolicElement,
) -> Result<Refutation, SymbolicError> {
    require(alg, Construction::OmpNotM)?;
    require_member(alg, c)?;
    let a = fixed(alg, "X1+X2");
    let b = fixed(alg, "X1+X4");
    if !alg.leq_sym(c, &a) || !alg.leq_sym(c, &b) {
        return Err(precondition(c, "not in [0, X1+X2] ∩ [0, X1+X4]"));
    }
    let x = fresh_point(c, Region::X1, 0);
    let next = alg
        .oplus_sym(c, &alg.singleton(x)?)
        .ok_or_else(|| SymbolicError::Verification(format!("{c} ⊕ {{{x}}} undefined")))?;
    let checks = vec![
        check(format!("{next} is an element"), alg.is_member(&next)),
        check(format!("{c} <= {next}"), alg.leq_sym(c, &next)),
        check(format!("{next} is not <= {c}"), !alg.leq_sym(&next, c)),
        check(format!("{next} <= {a}"), alg.leq_sym(&next, &a)),
        check(format!("{next} <= {b}"), alg.leq_sym(&next, &b)),
    ];
    finish(
        RefutationKind::NoMaximal,
        SymbolicWitness::Element(next),
        format!("{c} is not maximal in [0, {a}] ∩ [0, {b}]"),
        checks,
    )
}

/// The chain member `{x_2..x_n, y_2..y_n}` of the balanced construction.
pub fn balanced_chain_member(
    alg: &SymbolicAlgebra,
    n: u64,
) -> Result<SymbolicElement, SymbolicError> {
    require(alg, Construction::Balanced)?;
    let pts = (2..=n).flat_map(|k| [Point::new(Region::X, k), Point::new(Region::Y, k)]);
    alg.element([], pts)
}

/// Given `u` in `[0, A] ∩ [0, B]` of the balanced construction, returns the
/// least chain index `n >= 2` with `C_n` not below `u`.
pub fn chain_no_upper_bound_refuter(
    alg: &SymbolicAlgebra,
    u: &SymbolicElement,
) -> Result<Refutation, SymbolicError> {
    require(alg, Construction::Balanced)?;
    require_member(alg, u)?;
    let a = fixed(alg, "X+Y^X:1,Y:1");
    let b = fixed(alg, "X+Y^X:1,Y:0");
    if !alg.leq_sym(u, &a) || !alg.leq_sym(u, &b) {
        return Err(precondition(u, "not in [0, A] ∩ [0, B]"));
    }
    let bound = u.correction().iter().map(|p| p.index).max().unwrap_or(0) + 2;
    for n in 2..=bound.max(2) {
        let member = balanced_chain_member(alg, n)?;
        if alg.leq_sym(&member, u) {
            continue;
        }
        let mut checks = vec![
            check(
                format!("C_{n} = {member} is an element"),
                alg.is_member(&member),
            ),
            check(format!("C_{n} <= A = {a}"), alg.leq_sym(&member, &a)),
            check(format!("C_{n} <= B = {b}"), alg.leq_sym(&member, &b)),
            check(format!("C_{n} is not <= {u}"), !alg.leq_sym(&member, u)),
        ];
        if n > 2 {
            let prev = balanced_chain_member(alg, n - 1)?;
            checks.push(check(
                format!("C_{} <= C_{n}", n - 1),
                alg.leq_sym(&prev, &member),
            ));
        }
        return finish(
            RefutationKind::NoUpperBound,
            SymbolicWitness::ChainIndex { n, member },
            format!("{u} is not an upper bound of the chain C_n in [0, A] ∩ [0, B]"),
            checks,
        );
    }
    Err(SymbolicError::Verification(format!(
        "every C_n up to n={bound} lies below {u}"
    )))
}

/// An infinite, co-infinite set of indices `{ i : i ≡ residue (mod modulus) }`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidueClass {
    modulus: u64,
    residue: u64,
}

impl ResidueClass {
    pub fn new(modulus: u64, residue: u64) -> Result<Self, SymbolicError> {
        if modulus < 2 || residue >= modulus {
            return Err(SymbolicError::Parse(format!(
                "residue class {residue} mod {modulus} is not infinite and co-infinite"
            )));
        }
        Ok(ResidueClass { modulus, residue })
    }

    pub fn contains(&self, i: u64) -> bool {
        i % self.modulus == self.residue
    }

    /// The first `k` members in increasing order.
    pub fn first(&self, k: usize) -> Vec<u64> {
        (0..k as u64)
            .map(|j| self.residue + j * self.modulus)
            .collect()
    }
}

impl FromStr for ResidueClass {
    type Err = SymbolicError;

    /// Accepts `even`, `odd`, or `MODULUS:RESIDUE`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "even" => ResidueClass::new(2, 0),
            "odd" => ResidueClass::new(2, 1),
            other => {
                let (m, r) = other
                    .split_once(':')
                    .ok_or_else(|| SymbolicError::Parse(format!("bad residue class `{other}`")))?;
                let parse = |t: &str| {
                    t.trim()
                        .parse::<u64>()
                        .map_err(|_| SymbolicError::Parse(format!("bad residue class `{other}`")))
                };
                ResidueClass::new(parse(m)?, parse(r)?)
            }
        }
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{X:i : i = {} mod {}}}", self.residue, self.modulus)
    }
}

const PARTIAL_SUM_SAMPLE: usize = 16;

/// Given the orthogonal system of singletons indexed by `d` and a cofinite
/// upper bound `u` of its partial sums, returns a strictly smaller upper
/// bound, so `u` is not their supremum.
pub fn no_supremum_refuter(
    alg: &SymbolicAlgebra,
    d: ResidueClass,
    u: &SymbolicElement,
) -> Result<Refutation, SymbolicError> {
    require(alg, Construction::FiniteCofinite)?;
    require_member(alg, u)?;
    let excluded = u.corrections_in(Region::X);
    if !u.base().contains(&Region::X) || excluded.iter().any(|&i| d.contains(i)) {
        return Err(precondition(u, "not an upper bound of the partial sums"));
    }
    let z = (0..)
        .find(|&i| !excluded.contains(&i) && !d.contains(i))
        .unwrap();
    let smaller = alg.element(
        [Region::X],
        u.correction()
            .iter()
            .copied()
            .chain([Point::new(Region::X, z)]),
    )?;
    let excluded_now = smaller.corrections_in(Region::X);
    let sample = d.first(PARTIAL_SUM_SAMPLE);
    let partial_ok = (1..=sample.len()).all(|k| {
        let s = alg.element([], sample[..k].iter().map(|&i| Point::new(Region::X, i)));
        s.map(|s| alg.leq_sym(&s, &smaller)).unwrap_or(false)
    });
    let checks = vec![
        check(format!("{smaller} is an element"), alg.is_member(&smaller)),
        check(format!("{smaller} <= {u}"), alg.leq_sym(&smaller, u)),
        check(
            format!("{u} is not <= {smaller}"),
            !alg.leq_sym(u, &smaller),
        ),
        check(
            format!("no point of {d} is missing from {smaller}"),
            excluded_now.iter().all(|&i| !d.contains(i)),
        ),
        check(
            format!("the first {PARTIAL_SUM_SAMPLE} partial sums of {d} are <= {smaller}"),
            partial_ok,
        ),
    ];
    finish(
        RefutationKind::NoSupremum,
        SymbolicWitness::Element(smaller),
        format!("{u} is not the supremum of the partial sums of {d}"),
        checks,
    )
}

/// The regions whose points carry the designated point states.
fn carrying_regions(alg: &SymbolicAlgebra) -> Vec<Region> {
    match alg.construction() {
        Construction::OmpUnotSod => vec![Region::X1, Region::X3],
        _ => alg.regions().iter().map(|s| s.region).collect(),
    }
}

/// A state-carrying point inside `e`, if any. For omp-unot-sod this
/// certifies that the point states from X1 ∪ X3 give `e` value one.
pub fn carrying_point(alg: &SymbolicAlgebra, e: &SymbolicElement) -> Option<Point> {
    for r in carrying_regions(alg) {
        let rs = alg.regions().iter().find(|s| s.region == r)?;
        if e.base().contains(&r) {
            let p = match rs.kind {
                RegionKind::Infinite => fresh_point(e, r, rs.first),
                RegionKind::SinglePoint => Point::new(r, rs.first),
            };
            return Some(p);
        }
        if let Some(p) = e.correction().iter().find(|p| p.region == r) {
            return Some(*p);
        }
    }
    None
}

/// Checks the Jauch–Piron condition for the point state at `x` on the pair
/// `(a, b)`: when `x` lies in both, `{x}` is an element below both carrying
/// value one. Returns `None` when the condition is vacuous.
pub fn point_state_jp_witness(
    alg: &SymbolicAlgebra,
    x: Point,
    a: &SymbolicElement,
    b: &SymbolicElement,
) -> Result<Option<SymbolicElement>, SymbolicError> {
    if !(a.contains(x) && b.contains(x)) {
        return Ok(None);
    }
    let c = alg.element([], [x])?;
    if alg.leq_sym(&c, a) && alg.leq_sym(&c, b) && c.contains(x) {
        Ok(Some(c))
    } else {
        Err(SymbolicError::Verification(format!(
            "{c} is not below both {a} and {b}"
        )))
    }
}

/// For omp-unot-sod: the pair `(X1+X4, X1+X2)` is not ordered, yet every
/// sampled point state with value one on the first has value one on the
/// second.
pub fn not_sod_witness(
    alg: &SymbolicAlgebra,
    sample: &[Point],
) -> Result<Refutation, SymbolicError> {
    require(alg, Construction::OmpUnotSod)?;
    for &x in sample {
        if !matches!(x.region, Region::X1 | Region::X3) {
            return Err(SymbolicError::Precondition {
                candidate: x.to_string(),
                reason: "sample points must come from X1 or X3".into(),
            });
        }
        alg.singleton(x)?;
    }
    let a = fixed(alg, "X1+X4");
    let b = fixed(alg, "X1+X2");
    let attained: Vec<&Point> = sample.iter().filter(|x| a.contains(**x)).collect();
    let checks = vec![
        check(format!("{a} is not <= {b}"), !alg.leq_sym(&a, &b)),
        check(
            format!(
                "all {} sampled point states with value 1 on {a} sit in X1 and give value 1 on {b}",
                attained.len()
            ),
            attained
                .iter()
                .all(|x| x.region == Region::X1 && b.contains(**x)),
        ),
        check(
            format!(
                "{} sampled X3 point states give value 0 on {a}",
                sample.iter().filter(|x| x.region == Region::X3).count()
            ),
            sample
                .iter()
                .filter(|x| x.region == Region::X3)
                .all(|x| !a.contains(*x)),
        ),
    ];
    finish(
        RefutationKind::NotSod,
        SymbolicWitness::Pair(a, b),
        "the point states carried by X1 ∪ X3 are not strongly order determining".into(),
        checks,
    )
}

/// For omp-not-m: shows that `c` in `[0, X1+X2] ∩ [0, X1+X4]` cannot serve
/// as the Jauch–Piron witness of a convex combination of X1 point states,
/// using the uniform state on the points of `c` plus one fresh X1 point.
pub fn jp_approximation_refuter(
    alg: &SymbolicAlgebra,
    c: &SymbolicElement,
) -> Result<Refutation, SymbolicError> {
    require(alg, Construction::OmpNotM)?;
    require_member(alg, c)?;
    let a = fixed(alg, "X1+X2");
    let b = fixed(alg, "X1+X4");
    if !alg.leq_sym(c, &a) || !alg.leq_sym(c, &b) {
        return Err(precondition(c, "not in [0, X1+X2] ∩ [0, X1+X4]"));
    }
    let mut support: BTreeSet<Point> = c.correction().clone();
    support.insert(fresh_point(c, Region::X1, 0));
    let weight = rational::ratio(1, support.len() as i64);
    let value = |e: &SymbolicElement| -> Rational {
        support
            .iter()
            .filter(|p| e.contains(**p))
            .fold(Rational::zero(), |acc, _| acc + &weight)
    };
    let supp = alg.element([], support.iter().copied())?;
    let checks = vec![
        check(format!("s({a}) = 1"), value(&a).is_one()),
        check(format!("s({b}) = 1"), value(&b).is_one()),
        check(
            format!("s({c}) = {} < 1", rational::format(&value(c))),
            value(c) < Rational::one(),
        ),
        check(
            format!("support {supp} <= {a} and <= {b}"),
            alg.leq_sym(&supp, &a) && alg.leq_sym(&supp, &b),
        ),
    ];
    finish(
        RefutationKind::NotJauchPiron,
        SymbolicWitness::Element(supp),
        format!("{c} is not a Jauch-Piron witness for the uniform state on the given support"),
        checks,
    )
}

/// Elements of chain-finite-lattice used for sampled checks: empty, `X+Y`,
/// and `{x_i, y}`, `X \ {x_i}` for `i < k`.
pub fn chain_lattice_sample(
    alg: &SymbolicAlgebra,
    k: u64,
) -> Result<Vec<SymbolicElement>, SymbolicError> {
    require(alg, Construction::ChainFiniteLattice)?;
    let mut out = vec![alg.zero(), alg.one()];
    for i in 0..k {
        out.push(alg.element([Region::Y], [Point::new(Region::X, i)])?);
        out.push(alg.element([Region::X], [Point::new(Region::X, i)])?);
    }
    Ok(out)
}

/// The maximum cardinality of a chain in chain-finite-lattice, which is 3.
/// The bound is checked against the longest strict chain inside `sample`.
pub fn chain_bound(
    alg: &SymbolicAlgebra,
    sample: &[SymbolicElement],
) -> Result<usize, SymbolicError> {
    const BOUND: usize = 3;
    require(alg, Construction::ChainFiniteLattice)?;
    for e in sample {
        require_member(alg, e)?;
    }
    let lt = |i: usize, j: usize| sample[i] != sample[j] && alg.leq_sym(&sample[i], &sample[j]);
    let mut memo: Vec<Option<usize>> = vec![None; sample.len()];
    fn longest(
        i: usize,
        n: usize,
        lt: &dyn Fn(usize, usize) -> bool,
        memo: &mut Vec<Option<usize>>,
    ) -> usize {
        if let Some(v) = memo[i] {
            return v;
        }
        let v = 1
            + (0..n)
                .filter(|&j| lt(i, j))
                .map(|j| longest(j, n, lt, memo))
                .max()
                .unwrap_or(0);
        memo[i] = Some(v);
        v
    }
    let best = (0..sample.len())
        .map(|i| longest(i, sample.len(), &lt, &mut memo))
        .max()
        .unwrap_or(0);
    if best > BOUND {
        return Err(SymbolicError::Verification(format!(
            "sample contains a chain of {best} elements"
        )));
    }
    Ok(BOUND)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::build;
    use Region::*;

    fn p(r: Region, i: u64) -> Point {
        Point::new(r, i)
    }

    #[test]
    fn no_maximal_steps() {
        let alg = build("omp-not-m").unwrap();
        let r = no_maximal_refuter(&alg, &alg.zero()).unwrap();
        assert_eq!(r.element().unwrap(), &alg.element([], [p(X1, 0)]).unwrap());
        let r2 = no_maximal_refuter(&alg, r.element().unwrap()).unwrap();
        assert_eq!(
            r2.element().unwrap(),
            &alg.element([], [p(X1, 0), p(X1, 1)]).unwrap()
        );
        let gap = alg.element([], [p(X1, 0), p(X1, 2)]).unwrap();
        let r3 = no_maximal_refuter(&alg, &gap).unwrap();
        assert!(r3.element().unwrap().contains(p(X1, 1)));
        let outside = alg.parse("X1+X2").unwrap();
        assert!(matches!(
            no_maximal_refuter(&alg, &outside),
            Err(SymbolicError::Precondition { .. })
        ));
        let other = build("balanced").unwrap();
        assert!(matches!(
            no_maximal_refuter(&other, &other.zero()),
            Err(SymbolicError::WrongConstruction { .. })
        ));
    }

    #[test]
    fn chain_refuter_examples() {
        let alg = build("balanced").unwrap();
        let c5 = balanced_chain_member(&alg, 5).unwrap();
        let idx = |u: &SymbolicElement| match chain_no_upper_bound_refuter(&alg, u).unwrap().witness
        {
            SymbolicWitness::ChainIndex { n, .. } => n,
            _ => unreachable!(),
        };
        assert_eq!(idx(&c5), 6);
        assert_eq!(idx(&alg.zero()), 2);
        let cof = alg
            .element([X, Y], [p(X, 1), p(X, 3), p(Y, 1), p(Y, 0)])
            .unwrap();
        assert_eq!(idx(&cof), 3);
        let top = alg.one();
        assert!(matches!(
            chain_no_upper_bound_refuter(&alg, &top),
            Err(SymbolicError::Precondition { .. })
        ));
    }

    #[test]
    fn supremum_refuter_examples() {
        let alg = build("finite-cofinite").unwrap();
        let even: ResidueClass = "even".parse().unwrap();
        let r = no_supremum_refuter(&alg, even, &alg.one()).unwrap();
        assert_eq!(r.element().unwrap(), &alg.element([X], [p(X, 1)]).unwrap());
        let u = alg.element([X], [p(X, 1)]).unwrap();
        let r = no_supremum_refuter(&alg, even, &u).unwrap();
        assert_eq!(
            r.element().unwrap(),
            &alg.element([X], [p(X, 1), p(X, 3)]).unwrap()
        );
        let bad = alg.element([X], [p(X, 2)]).unwrap();
        assert!(no_supremum_refuter(&alg, even, &bad).is_err());
        assert!(no_supremum_refuter(&alg, even, &alg.zero()).is_err());
        assert!("1:0".parse::<ResidueClass>().is_err());
        assert_eq!(
            "3:1".parse::<ResidueClass>().unwrap().first(3),
            vec![1, 4, 7]
        );
    }

    #[test]
    fn unot_sod_point_states() {
        let alg = build("omp-unot-sod").unwrap();
        let sample: Vec<Point> = (0..20).flat_map(|i| [p(X1, i), p(X3, i)]).collect();
        let r = not_sod_witness(&alg, &sample).unwrap();
        assert!(r.verified());
        assert!(not_sod_witness(&alg, &[p(X2, 0)]).is_err());
        let x3 = alg.element([], [p(X3, 4)]).unwrap();
        assert_eq!(carrying_point(&alg, &x3), Some(p(X3, 4)));
        let a = alg.parse("X1+X2^X1:0,X3:2").unwrap();
        assert_eq!(carrying_point(&alg, &a), Some(p(X1, 1)));
        assert_eq!(carrying_point(&alg, &alg.zero()), None);
        let b = alg.parse("X1+X4").unwrap();
        let c = point_state_jp_witness(&alg, p(X1, 5), &a, &b)
            .unwrap()
            .unwrap();
        assert_eq!(c, alg.element([], [p(X1, 5)]).unwrap());
        assert_eq!(
            point_state_jp_witness(&alg, p(X3, 5), &a, &b).unwrap(),
            None
        );
    }

    #[test]
    fn finite_support_states_defeat_each_candidate() {
        let alg = build("omp-not-m").unwrap();
        let c = alg.element([], [p(X1, 0), p(X1, 1)]).unwrap();
        let r = jp_approximation_refuter(&alg, &c).unwrap();
        assert!(r.checks.iter().any(|ch| ch.statement.contains("2/3")));
    }

    #[test]
    fn chain_lattice_height() {
        let alg = build("chain-finite-lattice").unwrap();
        let sample = chain_lattice_sample(&alg, 6).unwrap();
        assert_eq!(chain_bound(&alg, &sample).unwrap(), 3);
        assert_eq!(chain_bound(&alg, &[alg.zero()]).unwrap(), 3);
    }
}
