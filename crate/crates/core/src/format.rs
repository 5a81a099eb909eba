//! Text formats.
//!
//! * `.ea`: `ea <n>`, `one <k>`, `sum <i> <j> <k>`, `name <i> <label>`; zero
//!   is element 0.
//! * `.omp`: `base <m>`, then `block <label>: <i> <j> ...` per block.
//! * `.st`: `state <name>` followed by `val <i> <p>/<q>` lines.
//!
//! All formats are whitespace separated with `#` comments.

use thiserror::Error;

use crate::algebra::{EffectAlgebra, ElementId, SumTable};
use crate::rational::{self, Rational};
use crate::states::{is_state, State, StateViolation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let words: Vec<&str> = l.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

fn number(line: usize, word: &str) -> Result<usize, ParseError> {
    word.parse()
        .map_err(|_| err(line, format!("expected a number, found `{word}`")))
}

pub fn parse_ea(text: &str) -> Result<SumTable, ParseError> {
    let mut table: Option<SumTable> = None;
    let mut one: Option<usize> = None;
    let mut last_line = 0;
    for (ln, words) in lines(text) {
        last_line = ln;
        match (words[0], table.as_mut()) {
            ("ea", None) => {
                if words.len() != 2 {
                    return Err(err(ln, "usage: ea <n>"));
                }
                table = Some(SumTable::new(number(ln, words[1])?, 0, 1));
            }
            ("ea", Some(_)) => return Err(err(ln, "duplicate `ea` header")),
            (_, None) => return Err(err(ln, "file must start with `ea <n>`")),
            ("one", Some(_)) => {
                if words.len() != 2 {
                    return Err(err(ln, "usage: one <k>"));
                }
                if one.is_some() {
                    return Err(err(ln, "duplicate `one`"));
                }
                one = Some(number(ln, words[1])?);
            }
            ("sum", Some(t)) => {
                if words.len() != 4 {
                    return Err(err(ln, "usage: sum <i> <j> <k>"));
                }
                t.define(
                    number(ln, words[1])?,
                    number(ln, words[2])?,
                    number(ln, words[3])?,
                );
            }
            ("name", Some(t)) => {
                if words.len() != 3 {
                    return Err(err(ln, "usage: name <i> <label>"));
                }
                let i = number(ln, words[1])?;
                if i >= t.n() {
                    return Err(err(ln, format!("element {i} out of range")));
                }
                t.set_label(i, words[2]);
            }
            (other, Some(_)) => return Err(err(ln, format!("unknown directive `{other}`"))),
        }
    }
    let table = table.ok_or_else(|| err(last_line, "missing `ea <n>` header"))?;
    let one = one.ok_or_else(|| err(last_line, "missing `one <k>`"))?;
    let mut out = SumTable::new(table.n(), 0, one);
    for &(i, j, k) in table.entries() {
        out.define(i, j, k);
    }
    for i in 0..table.n() {
        if let Some(l) = table.label(i) {
            out.set_label(i, l);
        }
    }
    Ok(out)
}

/// Writes an algebra in `.ea` form. Elements are renumbered so that zero is
/// element 0 when needed.
pub fn write_ea(alg: &EffectAlgebra) -> String {
    let z = alg.zero().index();
    let id = |e: ElementId| -> usize {
        let i = e.index();
        if i == z {
            0
        } else if i < z {
            i + 1
        } else {
            i
        }
    };
    let mut out = format!("ea {}\none {}\n", alg.n(), id(alg.one()));
    let mut sums: Vec<(usize, usize, usize)> = alg
        .defined_sums()
        .map(|(a, b, c)| {
            let (x, y) = (id(a), id(b));
            (x.min(y), x.max(y), id(c))
        })
        .collect();
    sums.sort();
    for (i, j, k) in sums {
        out.push_str(&format!("sum {i} {j} {k}\n"));
    }
    let mut named: Vec<(usize, &str)> = alg.elements().map(|e| (id(e), alg.label(e))).collect();
    named.sort();
    let one = id(alg.one());
    for (i, label) in named {
        let default =
            (i == 0 && label == "0") || (i == one && label == "1") || label == format!("e{i}");
        if !default && !label.is_empty() && !label.contains(char::is_whitespace) {
            out.push_str(&format!("name {i} {label}\n"));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmpFile {
    pub ground: usize,
    pub blocks: Vec<(Option<String>, u64)>,
}

pub fn parse_omp(text: &str) -> Result<OmpFile, ParseError> {
    let mut ground: Option<usize> = None;
    let mut blocks = Vec::new();
    let mut last_line = 0;
    for (ln, text_line) in text.lines().enumerate().map(|(i, l)| (i + 1, l)) {
        let body = text_line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        last_line = ln;
        let (head, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        match head {
            "base" => {
                if ground.is_some() {
                    return Err(err(ln, "duplicate `base`"));
                }
                let m = number(ln, rest.trim())?;
                if m == 0 || m > crate::concrete::MAX_GROUND {
                    return Err(err(ln, format!("ground size {m} outside 1..=64")));
                }
                ground = Some(m);
            }
            "block" => {
                let m = ground.ok_or_else(|| err(ln, "`block` before `base`"))?;
                let (label, pts) = rest
                    .split_once(':')
                    .ok_or_else(|| err(ln, "usage: block <label>: <i> <j> ..."))?;
                let label = label.trim();
                let mut mask = 0u64;
                for w in pts.split_whitespace() {
                    let p = number(ln, w)?;
                    if p >= m {
                        return Err(err(ln, format!("point {p} outside ground set of size {m}")));
                    }
                    mask |= 1 << p;
                }
                blocks.push(((!label.is_empty()).then(|| label.to_string()), mask));
            }
            other => return Err(err(ln, format!("unknown directive `{other}`"))),
        }
    }
    let ground = ground.ok_or_else(|| err(last_line, "missing `base <m>`"))?;
    Ok(OmpFile { ground, blocks })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StateFileError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("state `{state}`: value of element {element} neither given nor derivable")]
    Underdetermined { state: String, element: usize },
    #[error("state `{state}` is not a state: {violation}")]
    NotAState { state: String, violation: String },
}

/// Fills values derivable from the given ones: `s(0) = 0`, `s(1) = 1`,
/// `s(a') = 1 − s(a)` and additivity.
fn complete(alg: &EffectAlgebra, values: &mut [Option<Rational>]) {
    values[alg.zero().index()].get_or_insert_with(rational::zero);
    values[alg.one().index()].get_or_insert_with(rational::one);
    let sums: Vec<_> = alg.defined_sums().collect();
    loop {
        let mut changed = false;
        for a in alg.elements() {
            let s = alg.supplement(a);
            if values[s.index()].is_none() {
                if let Some(v) = values[a.index()].clone() {
                    values[s.index()] = Some(rational::one() - v);
                    changed = true;
                }
            }
        }
        for &(a, b, c) in &sums {
            let (va, vb, vc) = (
                values[a.index()].clone(),
                values[b.index()].clone(),
                values[c.index()].clone(),
            );
            match (va, vb, vc) {
                (Some(x), Some(y), None) => {
                    values[c.index()] = Some(x + y);
                    changed = true;
                }
                (Some(x), None, Some(z)) => {
                    values[b.index()] = Some(z - x);
                    changed = true;
                }
                (None, Some(y), Some(z)) => {
                    values[a.index()] = Some(z - y);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
}

/// Parses named states over `alg`. Elements may be given by index or label.
pub fn parse_states(
    text: &str,
    alg: &EffectAlgebra,
) -> Result<Vec<(String, State)>, StateFileError> {
    let mut raw: Vec<(String, Vec<Option<Rational>>)> = Vec::new();
    for (ln, words) in lines(text) {
        match words[0] {
            "state" => {
                if words.len() != 2 {
                    return Err(err(ln, "usage: state <name>").into());
                }
                raw.push((words[1].to_string(), vec![None; alg.n()]));
            }
            "val" => {
                let (_, values) = raw
                    .last_mut()
                    .ok_or_else(|| err(ln, "`val` before `state`"))?;
                if words.len() != 3 {
                    return Err(err(ln, "usage: val <i> <p>/<q>").into());
                }
                let e = alg.resolve(words[1]).map_err(|e| err(ln, e.to_string()))?;
                let v = rational::parse(words[2])
                    .ok_or_else(|| err(ln, format!("bad rational `{}`", words[2])))?;
                values[e.index()] = Some(v);
            }
            other => return Err(err(ln, format!("unknown directive `{other}`")).into()),
        }
    }
    raw.into_iter()
        .map(|(name, mut values)| {
            complete(alg, &mut values);
            if let Some(i) = values.iter().position(|v| v.is_none()) {
                return Err(StateFileError::Underdetermined {
                    state: name,
                    element: i,
                });
            }
            let values: Vec<Rational> = values.into_iter().map(Option::unwrap).collect();
            is_state(alg, &values).map_err(|v: StateViolation| StateFileError::NotAState {
                state: name.clone(),
                violation: v.to_string(),
            })?;
            Ok((name, State::new(values)))
        })
        .collect()
}

pub fn write_states(states: &[(String, State)]) -> String {
    let mut out = String::new();
    for (name, s) in states {
        out.push_str(&format!("state {name}\n"));
        for (i, v) in s.values().iter().enumerate() {
            out.push_str(&format!("val {i} {}\n", rational::format(v)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate;
    use crate::concrete::validate_system;
    use crate::rational::ratio;

    const C3: &str = "# the three-element chain\nea 3\none 1\nsum 2 2 1\nname 2 a\n";

    #[test]
    fn ea_roundtrip() {
        let alg = validate(&parse_ea(C3).unwrap()).unwrap();
        assert_eq!(alg.label(alg.resolve("a").unwrap()), "a");
        assert_eq!(write_ea(&alg), "ea 3\none 1\nsum 2 2 1\nname 2 a\n");
        assert_eq!(validate(&parse_ea(&write_ea(&alg)).unwrap()).unwrap(), alg);
    }

    #[test]
    fn ea_errors() {
        assert_eq!(parse_ea("one 1\n").unwrap_err().line, 1);
        assert_eq!(parse_ea("ea 3\nsum 1 2\n").unwrap_err().line, 2);
        assert!(parse_ea("ea 3\nsum 2 2 1\n")
            .unwrap_err()
            .message
            .contains("one"));
        assert!(parse_ea("ea 3\none 1\nfoo\n").is_err());
    }

    #[test]
    fn omp_parse() {
        let text = "base 2\nblock empty:\nblock a: 0\nblock b: 1 # comment\nblock : 0 1\n";
        let f = parse_omp(text).unwrap();
        assert_eq!(f.ground, 2);
        assert_eq!(
            f.blocks,
            vec![
                (Some("empty".into()), 0),
                (Some("a".into()), 1),
                (Some("b".into()), 2),
                (None, 3)
            ]
        );
        assert!(validate_system(f.ground, &f.blocks).is_ok());
        assert!(parse_omp("block a: 0\n").is_err());
        assert!(parse_omp("base 2\nblock a: 2\n").is_err());
    }

    #[test]
    fn states_file_derives_supplements() {
        let alg = validate(&parse_ea(C3).unwrap()).unwrap();
        let st = parse_states("state s\nval a 1/2\n", &alg).unwrap();
        assert_eq!(
            st[0].1.values(),
            &[rational::zero(), rational::one(), ratio(1, 2)]
        );

        let bad = parse_states("state s\nval 2 1/3\n", &alg).unwrap_err();
        assert!(matches!(bad, StateFileError::NotAState { .. }));

        let e4 = crate::concrete::even_subsets(4)
            .unwrap()
            .to_algebra()
            .unwrap();
        let under = parse_states("state s\nval ab 1\n", &e4).unwrap_err();
        assert!(matches!(under, StateFileError::Underdetermined { .. }));
        let text = write_states(&st);
        assert_eq!(parse_states(&text, &alg).unwrap(), st);
    }
}
