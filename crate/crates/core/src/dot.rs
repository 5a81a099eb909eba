//! Hasse diagrams in DOT syntax.

use crate::algebra::EffectAlgebra;

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Nodes labeled by element names; one edge per cover, drawn from the upper
/// element to the lower so that `dot` puts the top element first.
pub fn to_dot(alg: &EffectAlgebra) -> String {
    let mut out = String::from("digraph hasse {\n");
    for a in alg.elements() {
        out.push_str(&format!("  n{} [label=\"{}\"];\n", a, escape(alg.label(a))));
    }
    for (a, b) in alg.hasse_covers() {
        out.push_str(&format!("  n{b} -> n{a};\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{validate, SumTable};

    #[test]
    fn c3_diagram() {
        let mut t = SumTable::new(3, 0, 1);
        t.define(2, 2, 1).set_label(2, "a\"");
        let dot = to_dot(&validate(&t).unwrap());
        assert_eq!(
            dot,
            "digraph hasse {\n  n0 [label=\"0\"];\n  n1 [label=\"1\"];\n  n2 [label=\"a\\\"\"];\n  n2 -> n0;\n  n1 -> n2;\n}\n"
        );
    }
}
