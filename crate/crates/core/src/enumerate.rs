//! Exhaustive generation of small effect algebras up to isomorphism.
//!
//! Algebras are generated on the carrier `{0, 1, 2, .., n-1}` with zero = 0
//! and one = 1. Only sums of two middle elements are free: sums with zero are
//! implicit, sums with one are forbidden by the zero-one law, and a sum of
//! nonzero elements is never zero. Isomorphisms fix 0 and 1 and permute the
//! middle elements.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::algebra::{validate, EffectAlgebra, ElementId, SumTable};

pub const DEFAULT_CAP: usize = 6;
pub const ORACLE_CAP: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("carrier size {n} outside 2..={cap}")]
    OutOfRange { n: usize, cap: usize },
}

/// Lexicographically least encoding of the middle sum table over all
/// carrier permutations fixing 0 and 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub n: usize,
    pub code: Vec<u8>,
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n)?;
        for &c in &self.code {
            let ch = if c == 0 {
                '.'
            } else {
                std::char::from_digit(c as u32 - 1, 36).unwrap()
            };
            write!(f, "{ch}")?;
        }
        Ok(())
    }
}

/// Dense table of a generated candidate; `cells[i*n + j]` holds `i ⊕ j` for
/// middle elements, 0 meaning undefined.
#[derive(Clone)]
struct Grid {
    n: usize,
    cells: Vec<u8>,
}

impl Grid {
    fn get(&self, i: usize, j: usize) -> u8 {
        self.cells[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: u8) {
        self.cells[i * self.n + j] = v;
        self.cells[j * self.n + i] = v;
    }

    fn encode_with(&self, perm: &[usize]) -> Vec<u8> {
        // perm maps old index -> new index; build the inverse to read cells.
        let n = self.n;
        let mut inv = vec![0; n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let mut code = Vec::with_capacity((n - 2) * (n - 1) / 2);
        for i in 2..n {
            for j in i..n {
                let v = self.get(inv[i], inv[j]);
                code.push(if v == 0 {
                    0
                } else {
                    perm[v as usize - 1] as u8 + 1
                });
            }
        }
        code
    }

    fn canonical(&self) -> CanonicalForm {
        let n = self.n;
        let mut best: Option<Vec<u8>> = None;
        for_each_middle_permutation(n, |perm| {
            let code = self.encode_with(perm);
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        });
        CanonicalForm {
            n,
            code: best.unwrap(),
        }
    }

    fn identity_code(&self) -> Vec<u8> {
        let id: Vec<usize> = (0..self.n).collect();
        self.encode_with(&id)
    }

    fn to_table(&self) -> SumTable {
        let mut t = SumTable::new(self.n, 0, 1);
        for i in 2..self.n {
            for j in i..self.n {
                let v = self.get(i, j);
                if v != 0 {
                    t.define(i, j, v as usize - 1);
                }
            }
        }
        t
    }
}

/// Calls `f` with every permutation of `0..n` fixing 0 and 1.
fn for_each_middle_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    fn rec(perm: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
        if k == perm.len() {
            f(perm);
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            rec(perm, k + 1, f);
            perm.swap(k, i);
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    rec(&mut perm, 2.min(n), &mut f);
}

/// Relabels an algebra onto `{0,1,..}` with zero = 0, one = 1 and the rest
/// in index order.
fn grid_of(alg: &EffectAlgebra) -> Grid {
    let n = alg.n();
    let mut map = vec![0usize; n];
    map[alg.zero().index()] = 0;
    map[alg.one().index()] = 1;
    let mut next = 2;
    for e in alg.elements() {
        if e != alg.zero() && e != alg.one() {
            map[e.index()] = next;
            next += 1;
        }
    }
    let mut g = Grid {
        n,
        cells: vec![0; n * n],
    };
    for (a, b, c) in alg.defined_sums() {
        let (i, j) = (map[a.index()], map[b.index()]);
        if i >= 2 && j >= 2 {
            g.set(i, j, map[c.index()] as u8 + 1);
        }
    }
    g
}

pub fn canonical_form(alg: &EffectAlgebra) -> CanonicalForm {
    grid_of(alg).canonical()
}

fn check_range(n: usize, cap: usize) -> Result<(), EnumerateError> {
    if (2..=cap).contains(&n) {
        Ok(())
    } else {
        Err(EnumerateError::OutOfRange { n, cap })
    }
}

/// Every effect algebra on `n` elements, once per isomorphism class, in
/// increasing canonical order.
pub fn enumerate_all(n: usize) -> Result<Vec<EffectAlgebra>, EnumerateError> {
    enumerate_with_cap(n, DEFAULT_CAP)
}

pub fn enumerate_with_cap(n: usize, cap: usize) -> Result<Vec<EffectAlgebra>, EnumerateError> {
    check_range(n, cap)?;
    let cells: Vec<(usize, usize)> = (2..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut search = Search {
        n,
        cells,
        grid: Grid {
            n,
            cells: vec![0; n * n],
        },
        out: Vec::new(),
    };
    search.fill(0);
    search.out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(search.out.into_iter().map(|(_, a)| a).collect())
}

struct Search {
    n: usize,
    cells: Vec<(usize, usize)>,
    grid: Grid,
    out: Vec<(CanonicalForm, EffectAlgebra)>,
}

/// Value of `x ⊕ y` under a partial grid: `None` unknown, `Some(0)`
/// undefined, `Some(v)` defined as `v - 1`. `assigned` tells whether a
/// middle cell has been decided yet.
fn partial_sum(
    grid: &Grid,
    assigned: &dyn Fn(usize, usize) -> bool,
    x: usize,
    y: usize,
) -> Option<u8> {
    if x == 0 {
        return Some(y as u8 + 1);
    }
    if y == 0 {
        return Some(x as u8 + 1);
    }
    if x == 1 || y == 1 {
        return Some(0);
    }
    assigned(x, y).then(|| grid.get(x, y))
}

impl Search {
    fn assigned(&self, upto: usize) -> impl Fn(usize, usize) -> bool {
        let n = self.n;
        let mut known = vec![false; n * n];
        for &(i, j) in &self.cells[..upto] {
            known[i * n + j] = true;
            known[j * n + i] = true;
        }
        move |x, y| known[x * n + y]
    }

    /// Pruning rules implied by the axioms, checked after deciding cells
    /// `0..upto`.
    fn consistent(&self, upto: usize) -> bool {
        let n = self.n;
        let assigned = self.assigned(upto);
        let g = &self.grid;
        for a in 2..n {
            let mut ones = 0;
            let mut open = false;
            let mut seen = [false; 16];
            for b in 2..n {
                if !assigned(a, b) {
                    open = true;
                    continue;
                }
                let v = g.get(a, b);
                if v == 2 {
                    ones += 1;
                }
                // cancellation: a ⊕ b = a ⊕ c forces b = c
                if v != 0 {
                    if seen[v as usize] {
                        return false;
                    }
                    seen[v as usize] = true;
                }
            }
            if ones > 1 || (!open && ones == 0) {
                return false;
            }
        }
        for a in 2..n {
            for b in 2..n {
                for c in 2..n {
                    let lhs = match partial_sum(g, &assigned, a, b) {
                        None => None,
                        Some(0) => Some(0),
                        Some(d) => partial_sum(g, &assigned, d as usize - 1, c),
                    };
                    let rhs = match partial_sum(g, &assigned, b, c) {
                        None => None,
                        Some(0) => Some(0),
                        Some(f) => partial_sum(g, &assigned, a, f as usize - 1),
                    };
                    if let (Some(l), Some(r)) = (lhs, rhs) {
                        if l != r {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn fill(&mut self, k: usize) {
        if k == self.cells.len() {
            let code = self.grid.identity_code();
            let canon = self.grid.canonical();
            if code != canon.code {
                return;
            }
            if let Ok(alg) = validate(&self.grid.to_table()) {
                self.out.push((canon, alg));
            }
            return;
        }
        let (i, j) = self.cells[k];
        let mut options = vec![0u8, 2];
        options.extend(
            (2..self.n)
                .filter(|&v| v != i && v != j)
                .map(|v| v as u8 + 1),
        );
        for v in options {
            self.grid.set(i, j, v);
            if self.consistent(k + 1) {
                self.fill(k + 1);
            }
        }
        self.grid.set(i, j, 0);
    }
}

/// Brute-force reference: every partial table over all pairs of nonzero
/// elements with any value, validated in full and deduplicated by explicit
/// isomorphism tests against earlier representatives.
pub fn naive_oracle(n: usize) -> Result<Vec<EffectAlgebra>, EnumerateError> {
    check_range(n, ORACLE_CAP)?;
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let options = n + 1; // undefined, or any element
    let total = options.pow(pairs.len() as u32);
    let mut reps: Vec<EffectAlgebra> = Vec::new();
    for code in 0..total {
        let mut t = SumTable::new(n, 0, 1);
        let mut c = code;
        for &(i, j) in &pairs {
            let v = c % options;
            c /= options;
            if v > 0 {
                t.define(i, j, v - 1);
            }
        }
        let Ok(alg) = validate(&t) else { continue };
        if !reps.iter().any(|r| isomorphic(r, &alg)) {
            reps.push(alg);
        }
    }
    Ok(reps)
}

/// Tries every bijection fixing zero and one.
pub fn isomorphic(x: &EffectAlgebra, y: &EffectAlgebra) -> bool {
    if x.n() != y.n() {
        return false;
    }
    let n = x.n();
    let xs: Vec<ElementId> = x
        .elements()
        .filter(|&e| e != x.zero() && e != x.one())
        .collect();
    let ys: Vec<ElementId> = y
        .elements()
        .filter(|&e| e != y.zero() && e != y.one())
        .collect();
    let mut found = false;
    for_each_middle_permutation(n, |perm| {
        if found {
            return;
        }
        let mut map = vec![y.zero(); n];
        map[x.zero().index()] = y.zero();
        map[x.one().index()] = y.one();
        for (k, &e) in xs.iter().enumerate() {
            map[e.index()] = ys[perm[k + 2] - 2];
        }
        found = x.elements().all(|a| {
            x.elements().all(|b| {
                x.sum(a, b).map(|c| map[c.index()]) == y.sum(map[a.index()], map[b.index()])
            })
        });
    });
    found
}

pub fn canonical_set(algs: &[EffectAlgebra]) -> BTreeSet<CanonicalForm> {
    algs.iter().map(canonical_form).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_counts() {
        assert_eq!(enumerate_all(2).unwrap().len(), 1);
        let three = enumerate_all(3).unwrap();
        assert_eq!(three.len(), 1);
        let a = ElementId::new(2);
        assert_eq!(three[0].sum(a, a), Some(three[0].one()));
        assert!(enumerate_all(1).is_err());
        assert!(enumerate_all(7).is_err());
        assert!(naive_oracle(5).is_err());
    }

    #[test]
    fn oracle_agrees_up_to_four() {
        for n in 2..=4 {
            let fast = enumerate_all(n).unwrap();
            let slow = naive_oracle(n).unwrap();
            assert_eq!(canonical_set(&fast), canonical_set(&slow), "n = {n}");
            assert_eq!(fast.len(), slow.len());
        }
    }

    #[test]
    fn canonical_form_is_invariant() {
        for alg in enumerate_all(5).unwrap() {
            let cf = canonical_form(&alg);
            // relabel by reversing the middle elements
            let n = alg.n();
            let flip = |i: usize| if i < 2 { i } else { n + 1 - i };
            let mut t = SumTable::new(n, 0, 1);
            for (a, b, c) in alg.defined_sums() {
                t.define(flip(a.index()), flip(b.index()), flip(c.index()));
            }
            let other = validate(&t).unwrap();
            assert_eq!(canonical_form(&other), cf);
            assert!(isomorphic(&alg, &other));
        }
    }
}
