//! Finitely described infinite concrete orthomodular posets.
//!
//! Every construction lives on a ground set split into regions. A region is
//! either a countably infinite set of indexed points or a single point. An
//! element is written as a union of whole regions (the base) symmetrically
//! corrected by a finite set of points, so every set handled here is finite
//! or cofinite inside each region. Single-point regions are folded into the
//! base, which makes the representation canonical: two elements are equal as
//! sets exactly when they are equal as values.

mod refute;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use refute::{
    balanced_chain_member, carrying_point, chain_bound, chain_lattice_sample,
    chain_no_upper_bound_refuter, jp_approximation_refuter, no_maximal_refuter,
    no_supremum_refuter, not_sod_witness, point_state_jp_witness, Check, Refutation,
    RefutationKind, ResidueClass, SymbolicWitness,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Region {
    X1,
    X2,
    X3,
    X4,
    X,
    Y,
}

impl Region {
    pub fn name(self) -> &'static str {
        match self {
            Region::X1 => "X1",
            Region::X2 => "X2",
            Region::X3 => "X3",
            Region::X4 => "X4",
            Region::X => "X",
            Region::Y => "Y",
        }
    }
}

impl FromStr for Region {
    type Err = SymbolicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "X1" => Region::X1,
            "X2" => Region::X2,
            "X3" => Region::X3,
            "X4" => Region::X4,
            "X" => Region::X,
            "Y" => Region::Y,
            _ => return Err(SymbolicError::UnknownRegion(s.to_string())),
        })
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub region: Region,
    pub index: u64,
}

impl Point {
    pub fn new(region: Region, index: u64) -> Self {
        Point { region, index }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.region, self.index)
    }
}

impl FromStr for Point {
    type Err = SymbolicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (r, i) = s
            .split_once(':')
            .ok_or_else(|| SymbolicError::Parse(format!("point `{s}` is not REGION:INDEX")))?;
        let index = i
            .trim()
            .parse()
            .map_err(|_| SymbolicError::Parse(format!("bad point index in `{s}`")))?;
        Ok(Point::new(r.trim().parse()?, index))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolicError {
    #[error("unknown construction `{0}`")]
    UnknownConstruction(String),
    #[error("unknown region `{0}`")]
    UnknownRegion(String),
    #[error("region {0} is not part of construction {1}")]
    ForeignRegion(Region, &'static str),
    #[error("point {0} is not a valid point of its region")]
    InvalidPoint(Point),
    #[error("{0} is not an element of {1}")]
    NotMember(SymbolicElement, &'static str),
    #[error("operation needs construction {expected}, got {found}")]
    WrongConstruction {
        expected: &'static str,
        found: &'static str,
    },
    #[error("candidate {candidate} violates the precondition: {reason}")]
    Precondition { candidate: String, reason: String },
    #[error("witness failed re-verification: {0}")]
    Verification(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Construction {
    OmpUnotSod,
    OmpNotM,
    ChainFiniteLattice,
    FiniteCofinite,
    Balanced,
}

impl Construction {
    pub const ALL: [Construction; 5] = [
        Construction::OmpUnotSod,
        Construction::OmpNotM,
        Construction::ChainFiniteLattice,
        Construction::FiniteCofinite,
        Construction::Balanced,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Construction::OmpUnotSod => "omp-unot-sod",
            Construction::OmpNotM => "omp-not-m",
            Construction::ChainFiniteLattice => "chain-finite-lattice",
            Construction::FiniteCofinite => "finite-cofinite",
            Construction::Balanced => "balanced",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Construction::OmpUnotSod => {
                "E0-sets over X1..X4 (X2, X4 single points) corrected by finite subsets of X1 and X3"
            }
            Construction::OmpNotM => "E0-sets over infinite X1..X4 corrected by arbitrary finite sets",
            Construction::ChainFiniteLattice => {
                "empty, {x,y}, X minus {x}, and X plus y over an infinite X and one extra point y"
            }
            Construction::FiniteCofinite => "finite and cofinite subsets of an infinite X",
            Construction::Balanced => {
                "sets meeting X and Y in equally many points (finitely many), and their complements"
            }
        }
    }
}

impl FromStr for Construction {
    type Err = SymbolicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Construction::ALL
            .into_iter()
            .find(|c| c.token() == s)
            .ok_or_else(|| SymbolicError::UnknownConstruction(s.to_string()))
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionKind {
    Infinite,
    SinglePoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionSpec {
    pub region: Region,
    pub kind: RegionKind,
    /// Least valid point index.
    pub first: u64,
}

/// A finite or cofinite subset of one region, described by its finite side.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Part {
    Finite(BTreeSet<u64>),
    Cofinite(BTreeSet<u64>),
}

impl Part {
    fn subset(&self, other: &Part) -> bool {
        match (self, other) {
            (Part::Finite(a), Part::Finite(b)) => a.is_subset(b),
            (Part::Finite(a), Part::Cofinite(b)) => a.is_disjoint(b),
            (Part::Cofinite(_), Part::Finite(_)) => false,
            (Part::Cofinite(a), Part::Cofinite(b)) => b.is_subset(a),
        }
    }

    fn union(&self, other: &Part) -> Part {
        match (self, other) {
            (Part::Finite(a), Part::Finite(b)) => Part::Finite(a | b),
            (Part::Finite(a), Part::Cofinite(b)) | (Part::Cofinite(b), Part::Finite(a)) => {
                Part::Cofinite(b - a)
            }
            (Part::Cofinite(a), Part::Cofinite(b)) => Part::Cofinite(a & b),
        }
    }
}

/// A union of whole regions symmetrically corrected by finitely many points.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolicElement {
    base: BTreeSet<Region>,
    correction: BTreeSet<Point>,
}

impl SymbolicElement {
    pub fn empty() -> Self {
        SymbolicElement {
            base: BTreeSet::new(),
            correction: BTreeSet::new(),
        }
    }

    pub fn base(&self) -> &BTreeSet<Region> {
        &self.base
    }

    pub fn correction(&self) -> &BTreeSet<Point> {
        &self.correction
    }

    /// Whether the point belongs to the described set.
    pub fn contains(&self, p: Point) -> bool {
        self.base.contains(&p.region) != self.correction.contains(&p)
    }

    fn corrections_in(&self, r: Region) -> BTreeSet<u64> {
        self.correction
            .iter()
            .filter(|p| p.region == r)
            .map(|p| p.index)
            .collect()
    }

    fn count_in(&self, r: Region) -> usize {
        self.correction.iter().filter(|p| p.region == r).count()
    }

    fn part(&self, r: Region) -> Part {
        let c = self.corrections_in(r);
        if self.base.contains(&r) {
            Part::Cofinite(c)
        } else {
            Part::Finite(c)
        }
    }
}

impl fmt::Display for SymbolicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.base.is_empty() {
            f.write_str("empty")?;
        } else {
            let names: Vec<&str> = self.base.iter().map(|r| r.name()).collect();
            f.write_str(&names.join("+"))?;
        }
        if !self.correction.is_empty() {
            let pts: Vec<String> = self.correction.iter().map(|p| p.to_string()).collect();
            write!(f, "^{}", pts.join(","))?;
        }
        Ok(())
    }
}

/// One of the infinite constructions, with the set operations it supports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicAlgebra {
    construction: Construction,
    regions: Vec<RegionSpec>,
}

/// Builds a construction from its stable token.
pub fn build(id: &str) -> Result<SymbolicAlgebra, SymbolicError> {
    Ok(SymbolicAlgebra::new(id.parse()?))
}

const E0_PATTERNS: [&[Region]; 6] = [
    &[],
    &[Region::X1, Region::X2],
    &[Region::X2, Region::X3],
    &[Region::X3, Region::X4],
    &[Region::X1, Region::X4],
    &[Region::X1, Region::X2, Region::X3, Region::X4],
];

impl SymbolicAlgebra {
    pub fn new(construction: Construction) -> Self {
        use Region::*;
        use RegionKind::*;
        let region = |region, kind, first| RegionSpec {
            region,
            kind,
            first,
        };
        let regions = match construction {
            Construction::OmpUnotSod => vec![
                region(X1, Infinite, 0),
                region(X2, SinglePoint, 0),
                region(X3, Infinite, 0),
                region(X4, SinglePoint, 0),
            ],
            Construction::OmpNotM => vec![
                region(X1, Infinite, 0),
                region(X2, Infinite, 0),
                region(X3, Infinite, 0),
                region(X4, Infinite, 0),
            ],
            Construction::ChainFiniteLattice => {
                vec![region(X, Infinite, 0), region(Y, SinglePoint, 0)]
            }
            Construction::FiniteCofinite => vec![region(X, Infinite, 0)],
            Construction::Balanced => vec![region(X, Infinite, 1), region(Y, Infinite, 0)],
        };
        SymbolicAlgebra {
            construction,
            regions,
        }
    }

    pub fn construction(&self) -> Construction {
        self.construction
    }

    pub fn regions(&self) -> &[RegionSpec] {
        &self.regions
    }

    fn region_spec(&self, r: Region) -> Result<&RegionSpec, SymbolicError> {
        self.regions
            .iter()
            .find(|s| s.region == r)
            .ok_or(SymbolicError::ForeignRegion(r, self.construction.token()))
    }

    fn check_point(&self, p: Point) -> Result<(), SymbolicError> {
        let rs = self.region_spec(p.region)?;
        let ok = match rs.kind {
            RegionKind::Infinite => p.index >= rs.first,
            RegionKind::SinglePoint => p.index == rs.first,
        };
        if ok {
            Ok(())
        } else {
            Err(SymbolicError::InvalidPoint(p))
        }
    }

    /// The set `(union of base regions) Δ correction`, without checking
    /// membership in the algebra.
    pub fn set(
        &self,
        base: impl IntoIterator<Item = Region>,
        correction: impl IntoIterator<Item = Point>,
    ) -> Result<SymbolicElement, SymbolicError> {
        let mut e = SymbolicElement {
            base: BTreeSet::new(),
            correction: BTreeSet::new(),
        };
        for r in base {
            self.region_spec(r)?;
            e.base.insert(r);
        }
        for p in correction {
            self.check_point(p)?;
            if !e.correction.insert(p) {
                e.correction.remove(&p);
            }
        }
        Ok(self.normalize(e))
    }

    /// Like [`SymbolicAlgebra::set`] but rejects sets outside the algebra.
    pub fn element(
        &self,
        base: impl IntoIterator<Item = Region>,
        correction: impl IntoIterator<Item = Point>,
    ) -> Result<SymbolicElement, SymbolicError> {
        let e = self.set(base, correction)?;
        if self.is_member(&e) {
            Ok(e)
        } else {
            Err(SymbolicError::NotMember(e, self.construction.token()))
        }
    }

    fn normalize(&self, mut e: SymbolicElement) -> SymbolicElement {
        for rs in &self.regions {
            if rs.kind == RegionKind::SinglePoint {
                let p = Point::new(rs.region, rs.first);
                if e.correction.remove(&p) && !e.base.remove(&rs.region) {
                    e.base.insert(rs.region);
                }
            }
        }
        e
    }

    fn assemble(&self, parts: Vec<(Region, Part)>) -> SymbolicElement {
        let mut e = SymbolicElement::empty();
        for (r, part) in parts {
            let set = match part {
                Part::Finite(s) => s,
                Part::Cofinite(s) => {
                    e.base.insert(r);
                    s
                }
            };
            e.correction
                .extend(set.into_iter().map(|i| Point::new(r, i)));
        }
        self.normalize(e)
    }

    /// Parses `empty`, `X1+X2`, `X+Y^X:1,Y:1`, and similar.
    pub fn parse(&self, text: &str) -> Result<SymbolicElement, SymbolicError> {
        let text = text.trim();
        let (base_txt, corr_txt) = match text.split_once('^') {
            Some((b, c)) => (b.trim(), Some(c)),
            None => (text, None),
        };
        let base: Vec<Region> = if base_txt == "empty" || base_txt.is_empty() {
            Vec::new()
        } else {
            base_txt
                .split('+')
                .map(|t| t.trim().parse())
                .collect::<Result<_, _>>()?
        };
        let correction: Vec<Point> = match corr_txt {
            Some(c) if !c.trim().is_empty() => c
                .split(',')
                .map(|t| t.trim().parse())
                .collect::<Result<_, _>>()?,
            _ => Vec::new(),
        };
        self.element(base, correction)
    }

    pub fn zero(&self) -> SymbolicElement {
        SymbolicElement::empty()
    }

    pub fn one(&self) -> SymbolicElement {
        SymbolicElement {
            base: self.regions.iter().map(|s| s.region).collect(),
            correction: BTreeSet::new(),
        }
    }

    /// Whether the set is an element of the construction.
    pub fn is_member(&self, e: &SymbolicElement) -> bool {
        let regions_ok = e.base.iter().all(|r| self.region_spec(*r).is_ok())
            && e.correction.iter().all(|p| self.check_point(*p).is_ok());
        if !regions_ok || self.normalize(e.clone()) != *e {
            return false;
        }
        use Region::*;
        match self.construction {
            Construction::OmpUnotSod | Construction::OmpNotM => E0_PATTERNS
                .iter()
                .any(|pat| e.base.iter().copied().eq(pat.iter().copied())),
            Construction::ChainFiniteLattice => {
                let b: Vec<Region> = e.base.iter().copied().collect();
                match b.as_slice() {
                    [] | [X, Y] => e.correction.is_empty(),
                    [X] | [Y] => e.correction.len() == 1,
                    _ => false,
                }
            }
            Construction::FiniteCofinite => true,
            Construction::Balanced => {
                let b: Vec<Region> = e.base.iter().copied().collect();
                matches!(b.as_slice(), [] | [X, Y]) && e.count_in(X) == e.count_in(Y)
            }
        }
    }

    pub fn complement(&self, e: &SymbolicElement) -> SymbolicElement {
        let all = self.one().base;
        SymbolicElement {
            base: &all - &e.base,
            correction: e.correction.clone(),
        }
    }

    /// Set inclusion, which is the order of a concrete algebra.
    pub fn leq_sym(&self, u: &SymbolicElement, v: &SymbolicElement) -> bool {
        self.regions
            .iter()
            .all(|s| u.part(s.region).subset(&v.part(s.region)))
    }

    pub fn disjoint(&self, u: &SymbolicElement, v: &SymbolicElement) -> bool {
        self.leq_sym(u, &self.complement(v))
    }

    /// Disjoint union, defined when the sets are disjoint and the union is an
    /// element of the construction.
    pub fn oplus_sym(&self, u: &SymbolicElement, v: &SymbolicElement) -> Option<SymbolicElement> {
        if !self.disjoint(u, v) {
            return None;
        }
        let w = self.union(u, v);
        self.is_member(&w).then_some(w)
    }

    fn union(&self, u: &SymbolicElement, v: &SymbolicElement) -> SymbolicElement {
        let parts = self
            .regions
            .iter()
            .map(|s| (s.region, u.part(s.region).union(&v.part(s.region))))
            .collect();
        self.assemble(parts)
    }

    /// The singleton `{p}` as a set (not necessarily an element).
    pub fn singleton(&self, p: Point) -> Result<SymbolicElement, SymbolicError> {
        self.set([], [p])
    }
}
