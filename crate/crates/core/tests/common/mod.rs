//! Independent oracles and fixtures shared by the integration tests.

#![allow(dead_code)]

use std::path::PathBuf;

use effectlab::concrete::{closure, even_subsets, powerset, SetSystem};
use effectlab::rational::{self, Rational};
use effectlab::{EffectAlgebra, ElementId};
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn data(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Concrete orthomodular posets used across the tests: even-subset and
/// powerset families plus closures of random seeds on small ground sets.
pub fn concrete_corpus(rng: &mut ChaCha8Rng, random_closures: usize) -> Vec<(String, SetSystem)> {
    let mut out = Vec::new();
    for m in [2, 4, 6] {
        out.push((format!("even({m})"), even_subsets(m).unwrap()));
    }
    for m in 1..=4 {
        out.push((format!("powerset({m})"), powerset(m).unwrap()));
    }
    while out.len() < 7 + random_closures {
        let m = rng.gen_range(3..=6);
        let seeds: Vec<(Option<String>, u64)> = (0..rng.gen_range(1..=3))
            .map(|_| (None, rng.gen_range(1..(1u64 << m) - 1)))
            .collect();
        let sys = closure(m, &seeds).unwrap();
        if sys.len() <= 40 {
            let desc: Vec<String> = seeds.iter().map(|(_, s)| format!("{s:#b}")).collect();
            out.push((format!("closure({m}; {})", desc.join(",")), sys));
        }
    }
    out
}

/// Unique solution of a square-or-taller linear system, if any.
fn solve_unique(mut rows: Vec<Vec<Rational>>, nvars: usize) -> Option<Vec<Rational>> {
    let mut pivot_row = 0;
    for col in 0..nvars {
        let r = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(pivot_row, r);
        let inv = Rational::one() / rows[pivot_row][col].clone();
        for x in rows[pivot_row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                let src = rows[pivot_row].clone();
                for (x, y) in rows[r].iter_mut().zip(src) {
                    *x -= &f * y;
                }
            }
        }
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|row| !row[nvars].is_zero()) {
        return None;
    }
    Some((0..nvars).map(|c| rows[c][nvars].clone()).collect())
}

/// Every vertex of the state polytope, found by fixing subsets of the
/// variables to zero and solving the additivity equations exactly.
pub fn polytope_vertices(alg: &EffectAlgebra) -> Vec<Vec<Rational>> {
    let vars: Vec<ElementId> = alg
        .elements()
        .filter(|&e| e != alg.zero() && e != alg.one())
        .collect();
    let k = vars.len();
    assert!(k <= 14, "vertex oracle limited to small carriers");
    let col = |e: ElementId| vars.iter().position(|&v| v == e);
    let mut base_rows = Vec::new();
    for a in alg.elements() {
        for b in alg.elements() {
            if let Some(c) = alg.sum(a, b) {
                let mut row = vec![Rational::zero(); k + 1];
                for (e, sign) in [(a, 1), (b, 1), (c, -1)] {
                    match col(e) {
                        Some(j) => row[j] += rational::int(sign),
                        None if e == alg.one() => row[k] -= rational::int(sign),
                        None => {}
                    }
                }
                base_rows.push(row);
            }
        }
    }
    let mut out: Vec<Vec<Rational>> = Vec::new();
    for mask in 0u32..1 << k {
        let mut rows = base_rows.clone();
        for j in (0..k).filter(|j| mask >> j & 1 == 1) {
            let mut row = vec![Rational::zero(); k + 1];
            row[j] = Rational::one();
            rows.push(row);
        }
        let Some(sol) = solve_unique(rows, k) else {
            continue;
        };
        if sol.iter().any(|v| v.is_negative()) {
            continue;
        }
        let mut full = vec![Rational::zero(); alg.n()];
        full[alg.one().index()] = Rational::one();
        for (j, v) in vars.iter().enumerate() {
            full[v.index()] = sol[j].clone();
        }
        if !out.contains(&full) {
            out.push(full);
        }
    }
    out
}

/// Jauch–Piron condition evaluated directly from the order.
pub fn jp_oracle(alg: &EffectAlgebra, values: &[Rational]) -> bool {
    let one = |e: ElementId| values[e.index()].is_one();
    alg.elements().filter(|&a| one(a)).all(|a| {
        alg.elements().filter(|&b| one(b)).all(|b| {
            alg.elements()
                .any(|c| alg.leq(c, a) && alg.leq(c, b) && one(c))
        })
    })
}

/// Additivity, normalization and range checked directly from the table.
pub fn state_oracle(alg: &EffectAlgebra, values: &[Rational]) -> bool {
    values.len() == alg.n()
        && values
            .iter()
            .all(|v| !v.is_negative() && *v <= Rational::one())
        && values[alg.one().index()].is_one()
        && alg.elements().all(|a| {
            alg.elements().all(|b| match alg.sum(a, b) {
                Some(c) => &values[a.index()] + &values[b.index()] == values[c.index()],
                None => true,
            })
        })
}

/// Random convex combination of a random nonempty subset of `pool`.
pub fn random_mixture(rng: &mut ChaCha8Rng, pool: &[Vec<Rational>]) -> Vec<Rational> {
    let n = pool[0].len();
    let mut acc = vec![Rational::zero(); n];
    let mut total = Rational::zero();
    for p in pool {
        if rng.gen_bool(0.5) {
            let w = rational::int(rng.gen_range(1..=9));
            for (a, v) in acc.iter_mut().zip(p) {
                *a += &w * v;
            }
            total += w;
        }
    }
    if total.is_zero() {
        return pool[rng.gen_range(0..pool.len())].clone();
    }
    acc.into_iter().map(|a| a / &total).collect()
}

/// Positive-weight mixture of every pool state that gives value one to both
/// of two random elements, so the result lies inside that face.
pub fn random_face_mixture(
    rng: &mut ChaCha8Rng,
    alg: &EffectAlgebra,
    pool: &[Vec<Rational>],
) -> Vec<Rational> {
    let a = rng.gen_range(0..alg.n());
    let b = rng.gen_range(0..alg.n());
    let face: Vec<Vec<Rational>> = pool
        .iter()
        .filter(|v| v[a].is_one() && v[b].is_one())
        .cloned()
        .collect();
    if face.is_empty() {
        return random_mixture(rng, pool);
    }
    let n = face[0].len();
    let mut acc = vec![Rational::zero(); n];
    let mut total = Rational::zero();
    for p in &face {
        let w = rational::int(rng.gen_range(1..=9));
        for (x, v) in acc.iter_mut().zip(p) {
            *x += &w * v;
        }
        total += w;
    }
    acc.into_iter().map(|x| x / &total).collect()
}
