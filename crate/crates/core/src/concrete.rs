//! Concrete orthomodular posets: families of subsets of a finite ground set
//! closed under complement and disjoint union, with `⊕` the disjoint union.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::algebra::{validate, EffectAlgebra, SumTable, MAX_CARRIER};
use crate::rational;
use crate::states::State;

/// Ground sets are bitmasks, so at most 64 points.
pub const MAX_GROUND: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConcreteError {
    #[error("ground set size {0} outside 1..={MAX_GROUND}")]
    GroundSize(usize),
    #[error("even-element subsets need an even ground set, got {0}")]
    OddGround(usize),
    #[error("{0} blocks exceed the carrier cap of {MAX_CARRIER}")]
    TooLarge(usize),
    #[error("point {0} outside the ground set")]
    PointOutOfRange(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SystemViolation {
    Empty,
    OutOfGround(u64),
    MissingComplement { block: u64, complement: u64 },
    MissingUnion { left: u64, right: u64, union: u64 },
}

impl fmt::Display for SystemViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SystemViolation::Empty => write!(f, "family is empty"),
            SystemViolation::OutOfGround(b) => {
                write!(f, "block {b:#b} uses points outside the ground set")
            }
            SystemViolation::MissingComplement { block, complement } => {
                write!(f, "complement of {block:#b} missing: {complement:#b}")
            }
            SystemViolation::MissingUnion { left, right, union } => {
                write!(
                    f,
                    "disjoint union of {left:#b} and {right:#b} missing: {union:#b}"
                )
            }
        }
    }
}

/// A validated family of subsets closed under complement and disjoint union.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem {
    ground: usize,
    blocks: Vec<u64>,
    labels: Vec<Option<String>>,
}

fn full_mask(m: usize) -> u64 {
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

fn check_ground(m: usize) -> Result<(), ConcreteError> {
    if m == 0 || m > MAX_GROUND {
        Err(ConcreteError::GroundSize(m))
    } else {
        Ok(())
    }
}

/// Orders blocks by size, then lexicographically by their sorted points.
fn block_order(a: u64, b: u64) -> Ordering {
    a.count_ones()
        .cmp(&b.count_ones())
        .then_with(|| b.reverse_bits().cmp(&a.reverse_bits()))
}

pub fn points(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

/// Checks closure under complement and disjoint union. Duplicate blocks keep
/// their first label.
pub fn validate_system(
    m: usize,
    blocks: &[(Option<String>, u64)],
) -> Result<SetSystem, Vec<SystemViolation>> {
    if check_ground(m).is_err() {
        return Err(vec![SystemViolation::OutOfGround(0)]);
    }
    let full = full_mask(m);
    let mut violations = Vec::new();
    let mut seen = HashSet::new();
    let mut kept = Vec::new();
    let mut labels = Vec::new();
    for (label, mask) in blocks {
        if mask & !full != 0 {
            violations.push(SystemViolation::OutOfGround(*mask));
            continue;
        }
        if seen.insert(*mask) {
            kept.push(*mask);
            labels.push(label.clone());
        }
    }
    if kept.is_empty() && violations.is_empty() {
        violations.push(SystemViolation::Empty);
    }
    for &a in &kept {
        let c = full & !a;
        if !seen.contains(&c) {
            violations.push(SystemViolation::MissingComplement {
                block: a,
                complement: c,
            });
        }
    }
    for (i, &a) in kept.iter().enumerate() {
        for &b in &kept[i..] {
            if a & b == 0 && !seen.contains(&(a | b)) {
                violations.push(SystemViolation::MissingUnion {
                    left: a,
                    right: b,
                    union: a | b,
                });
            }
        }
    }
    if violations.is_empty() {
        Ok(SetSystem {
            ground: m,
            blocks: kept,
            labels,
        })
    } else {
        Err(violations)
    }
}

/// Least family containing the seeds, `∅` and the ground set, closed under
/// complement and disjoint union. Seeds keep their order and labels; generated
/// blocks follow in block order.
pub fn closure(m: usize, seeds: &[(Option<String>, u64)]) -> Result<SetSystem, ConcreteError> {
    check_ground(m)?;
    let full = full_mask(m);
    let mut members: HashSet<u64> = HashSet::new();
    let mut order: Vec<(Option<String>, u64)> = Vec::new();
    for (label, mask) in seeds {
        if mask & !full != 0 {
            return Err(ConcreteError::PointOutOfRange(
                64 - mask.leading_zeros() as usize - 1,
            ));
        }
        if members.insert(*mask) {
            order.push((label.clone(), *mask));
        }
    }
    let mut frontier: Vec<u64> = Vec::new();
    for base in [0, full] {
        if members.insert(base) {
            frontier.push(base);
        }
    }
    frontier.extend(order.iter().map(|(_, m)| *m));
    let mut all: Vec<u64> = members.iter().copied().collect();
    while let Some(a) = frontier.pop() {
        let mut fresh = Vec::new();
        let c = full & !a;
        if !members.contains(&c) {
            fresh.push(c);
        }
        for &b in &all {
            if a & b == 0 && !members.contains(&(a | b)) {
                fresh.push(a | b);
            }
        }
        for f in fresh {
            if members.insert(f) {
                all.push(f);
                frontier.push(f);
            }
        }
        if members.len() > MAX_CARRIER {
            return Err(ConcreteError::TooLarge(members.len()));
        }
    }
    let seeded: HashSet<u64> = order.iter().map(|(_, m)| *m).collect();
    let mut generated: Vec<u64> = members
        .into_iter()
        .filter(|b| !seeded.contains(b))
        .collect();
    generated.sort_by(|&a, &b| block_order(a, b));
    let (labels, mut blocks): (Vec<_>, Vec<_>) = order.into_iter().unzip();
    let mut labels = labels;
    labels.extend(std::iter::repeat_n(None, generated.len()));
    blocks.extend(generated);
    Ok(SetSystem {
        ground: m,
        blocks,
        labels,
    })
}

fn sorted_family(m: usize, keep: impl Fn(u64) -> bool) -> SetSystem {
    let mut blocks: Vec<u64> = (0..=full_mask(m)).filter(|&b| keep(b)).collect();
    blocks.sort_by(|&a, &b| block_order(a, b));
    let labels = vec![None; blocks.len()];
    SetSystem {
        ground: m,
        blocks,
        labels,
    }
}

/// All even-element subsets of an `m`-set.
pub fn even_subsets(m: usize) -> Result<SetSystem, ConcreteError> {
    check_ground(m)?;
    if m % 2 == 1 {
        return Err(ConcreteError::OddGround(m));
    }
    if m > 13 {
        return Err(ConcreteError::TooLarge(1 << (m - 1)));
    }
    Ok(sorted_family(m, |b| b.count_ones() % 2 == 0))
}

/// All subsets of an `m`-set.
pub fn powerset(m: usize) -> Result<SetSystem, ConcreteError> {
    check_ground(m)?;
    if m > 12 {
        return Err(ConcreteError::TooLarge(1 << m));
    }
    Ok(sorted_family(m, |_| true))
}

impl SetSystem {
    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn full(&self) -> u64 {
        full_mask(self.ground)
    }

    pub fn index_of(&self, mask: u64) -> Option<usize> {
        self.blocks.iter().position(|&b| b == mask)
    }

    /// The author-supplied label, or a name built from point letters.
    pub fn label(&self, i: usize) -> String {
        if let Some(Some(l)) = self.labels.get(i) {
            return l.clone();
        }
        let mask = self.blocks[i];
        if mask == 0 {
            "0".to_string()
        } else if mask == self.full() {
            "X".to_string()
        } else if self.ground <= 26 {
            points(mask).map(|p| (b'a' + p as u8) as char).collect()
        } else {
            let ps: Vec<String> = points(mask).map(|p| p.to_string()).collect();
            format!("{{{}}}", ps.join(","))
        }
    }

    /// The effect algebra with `A ⊕ B = A ∪ B` for disjoint blocks. Element
    /// `i` is block `i`.
    pub fn to_algebra(&self) -> Result<EffectAlgebra, ConcreteError> {
        let k = self.blocks.len();
        if k > MAX_CARRIER {
            return Err(ConcreteError::TooLarge(k));
        }
        let index: HashMap<u64, usize> = self
            .blocks
            .iter()
            .enumerate()
            .map(|(i, &b)| (b, i))
            .collect();
        let zero = index[&0];
        let one = index[&self.full()];
        let mut table = SumTable::new(k, zero, one);
        for (i, &a) in self.blocks.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in self.blocks.iter().enumerate().skip(i) {
                if b != 0 && a & b == 0 {
                    table.define(i, j, index[&(a | b)]);
                }
            }
        }
        for i in 0..k {
            table.set_label(i, self.label(i));
        }
        Ok(validate(&table).expect("closed set systems satisfy the effect algebra axioms"))
    }

    /// The two-valued state carried by point `x`.
    pub fn point_state(&self, x: usize) -> Result<State, ConcreteError> {
        if x >= self.ground {
            return Err(ConcreteError::PointOutOfRange(x));
        }
        Ok(State::new(
            self.blocks
                .iter()
                .map(|b| {
                    if b >> x & 1 == 1 {
                        rational::one()
                    } else {
                        rational::zero()
                    }
                })
                .collect(),
        ))
    }

    pub fn point_states(&self) -> Vec<State> {
        (0..self.ground)
            .map(|x| self.point_state(x).unwrap())
            .collect()
    }
}
