use std::path::Path;

use anyhow::{anyhow, Context, Result};
use effectlab::concrete::{points, validate_system};
use effectlab::format::{parse_ea, parse_omp};
use effectlab::rational;
use effectlab::states::State;
use effectlab::{validate, EffectAlgebra, ElementId, SetSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileKind {
    Ea,
    Omp,
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// By extension, falling back to the first directive in the file.
pub fn kind(path: &Path, text: &str) -> FileKind {
    match path.extension().and_then(|e| e.to_str()) {
        Some("ea") => FileKind::Ea,
        Some("omp") => FileKind::Omp,
        _ => {
            let first = text
                .lines()
                .map(|l| l.split('#').next().unwrap_or("").trim())
                .find(|l| !l.is_empty())
                .unwrap_or("");
            if first.starts_with("base") {
                FileKind::Omp
            } else {
                FileKind::Ea
            }
        }
    }
}

pub fn write_omp(sys: &SetSystem) -> String {
    let mut out = format!("base {}\n", sys.ground());
    for (i, &mask) in sys.blocks().iter().enumerate() {
        out.push_str(&format!("block {}:", sys.label(i)));
        for p in points(mask) {
            out.push_str(&format!(" {p}"));
        }
        out.push('\n');
    }
    out
}

/// A loaded algebra, remembering the set system when it came from one.
pub struct Input {
    pub alg: EffectAlgebra,
    pub system: Option<SetSystem>,
}

impl Input {
    pub fn load(path: &Path) -> Result<Input> {
        let text = read(path)?;
        let ctx = || path.display().to_string();
        match kind(path, &text) {
            FileKind::Ea => {
                let table = parse_ea(&text).with_context(ctx)?;
                let alg = validate(&table).map_err(|vs| {
                    let list: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
                    anyhow!("{}: not an effect algebra: {}", ctx(), list.join("; "))
                })?;
                Ok(Input { alg, system: None })
            }
            FileKind::Omp => {
                let omp = parse_omp(&text).with_context(ctx)?;
                let sys = validate_system(omp.ground, &omp.blocks).map_err(|vs| {
                    let list: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
                    anyhow!(
                        "{}: not a concrete orthomodular poset: {}",
                        ctx(),
                        list.join("; ")
                    )
                })?;
                let alg = sys.to_algebra()?;
                Ok(Input {
                    alg,
                    system: Some(sys),
                })
            }
        }
    }

    pub fn element(&self, name: &str) -> Result<ElementId> {
        Ok(self.alg.resolve(name.trim())?)
    }

    /// Set notation for concrete inputs, the label otherwise.
    pub fn name(&self, e: ElementId) -> String {
        match &self.system {
            Some(sys) => {
                let mask = sys.blocks()[e.index()];
                let pts: Vec<String> = points(mask)
                    .map(|p| {
                        if sys.ground() <= 26 {
                            ((b'a' + p as u8) as char).to_string()
                        } else {
                            p.to_string()
                        }
                    })
                    .collect();
                format!("{{{}}}", pts.join(","))
            }
            None => self.alg.label(e).to_string(),
        }
    }

    pub fn show_state(&self, s: &State) -> String {
        self.alg
            .elements()
            .map(|e| format!("{}={}", self.alg.label(e), rational::format(s.value(e))))
            .collect::<Vec<_>>()
            .join(" ")
    }
}
