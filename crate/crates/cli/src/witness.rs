use std::fmt::Write as _;

use anyhow::{bail, Result};
use effectlab::symbolic::{
    build, chain_bound, chain_lattice_sample, chain_no_upper_bound_refuter,
    jp_approximation_refuter, no_maximal_refuter, no_supremum_refuter, not_sod_witness,
    Construction, Point, Refutation, Region, ResidueClass,
};

const OPS: &[(Construction, &str)] = &[
    (Construction::OmpNotM, "no-maximal"),
    (Construction::OmpNotM, "jp-approximation"),
    (Construction::Balanced, "no-upper-bound"),
    (Construction::FiniteCofinite, "no-supremum"),
    (Construction::OmpUnotSod, "not-sod"),
    (Construction::ChainFiniteLattice, "chain-bound"),
];

pub fn run(
    construction: &str,
    op: &str,
    candidate: Option<String>,
    system: Option<String>,
    sample: Option<u64>,
    iterate: usize,
) -> Result<String> {
    let alg = build(construction)?;
    let c = alg.construction();
    let mut out = format!("construction: {c} ({})\n", c.description());
    let candidate_or = |default: &str| alg.parse(candidate.as_deref().unwrap_or(default));
    let mut push = |r: Refutation| {
        out.push_str(&r.to_string());
    };
    match (c, op) {
        (Construction::OmpNotM, "no-maximal") => {
            let mut current = candidate_or("empty")?;
            for step in 0..iterate.max(1) {
                if iterate > 1 {
                    writeln!(out, "step {}:", step + 1).unwrap();
                }
                let r = no_maximal_refuter(&alg, &current)?;
                current = r.element().cloned().expect("element witness");
                out.push_str(&r.to_string());
            }
        }
        (Construction::OmpNotM, "jp-approximation") => {
            push(jp_approximation_refuter(&alg, &candidate_or("empty")?)?);
        }
        (Construction::Balanced, "no-upper-bound") => {
            push(chain_no_upper_bound_refuter(&alg, &candidate_or("empty")?)?);
        }
        (Construction::FiniteCofinite, "no-supremum") => {
            let d: ResidueClass = system.as_deref().unwrap_or("even").parse()?;
            push(no_supremum_refuter(&alg, d, &candidate_or("X")?)?);
        }
        (Construction::OmpUnotSod, "not-sod") => {
            let k = sample.unwrap_or(8);
            let pts: Vec<Point> = (0..k)
                .flat_map(|i| [Point::new(Region::X1, i), Point::new(Region::X3, i)])
                .collect();
            push(not_sod_witness(&alg, &pts)?);
        }
        (Construction::ChainFiniteLattice, "chain-bound") => {
            let elems = chain_lattice_sample(&alg, sample.unwrap_or(8))?;
            let bound = chain_bound(&alg, &elems)?;
            writeln!(out, "chain bound: {bound}").unwrap();
            writeln!(
                out,
                "check [ok] no chain longer than {bound} among {} sampled elements",
                elems.len()
            )
            .unwrap();
        }
        _ => {
            let valid: Vec<&str> = OPS
                .iter()
                .filter(|(k, _)| *k == c)
                .map(|(_, o)| *o)
                .collect();
            bail!(
                "unknown operation `{op}` for {c}; expected one of: {}",
                valid.join(", ")
            );
        }
    }
    Ok(out)
}
