//! Case files and matrix files: UTF-8 `key = value` lines with optional
//! `[algebra]`, `[expect]` and `[mode]` sections; `#` starts a comment.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::{parse_polynomial, Polynomial, Ring, VariableContext};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mode {
    /// Run the full pipeline (default on).
    pub pipeline: bool,
    /// The case is a cone over a smooth complete intersection.
    pub smooth_cone: bool,
    pub prop31: bool,
    pub rowops: usize,
    pub en_dump: bool,
    pub seed: Option<u64>,
}

/// A parsed case file; relations are kept as text until validated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseFile {
    pub name: String,
    pub variables: Vec<String>,
    pub weights: Vec<u32>,
    pub relations: Vec<String>,
    /// Expected verdicts keyed as in the `[expect]` section.
    pub expect: BTreeMap<String, String>,
    pub mode: Mode,
    /// Line of each relation, for error messages.
    #[serde(skip)]
    relation_lines: Vec<usize>,
}

/// Keys accepted in `[expect]`, with the kind of value they take.
pub const EXPECT_KEYS: &[(&str, &str)] = &[
    ("valid", "bool"),
    ("reduced", "bool"),
    ("f0_off_irrelevant", "bool"),
    ("f0", "bool"),
    ("f1", "bool"),
    ("f1_fail_index", "int"),
    ("linear_type", "bool"),
    ("torsion_witness", "poly"),
    ("cohen_macaulay", "bool"),
    ("rees_dim", "int"),
    ("depth", "int"),
    ("pd", "int"),
    ("spread", "int"),
    ("shortcut", "bool"),
    ("sym_complete_intersection", "bool"),
];

struct Line<'a> {
    number: usize,
    key: &'a str,
    value: &'a str,
}

/// Splits text into `(section, key = value)` lines.
fn lines(text: &str) -> Result<Vec<(String, Line<'_>)>> {
    let mut section = String::new();
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| Error::CaseFile(format!("line {}: unterminated section header", number)))?;
            section = name.trim().to_string();
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::CaseFile(format!("line {}: expected `key = value`", number)))?;
        out.push((section.clone(), Line { number, key: key.trim(), value: value.trim() }));
    }
    Ok(out)
}

fn list(value: &str) -> Vec<String> {
    value.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn parse_bool(line: &Line<'_>) -> Result<bool> {
    match line.value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => Err(Error::CaseFile(format!("line {}: `{}` is not a boolean", line.number, other))),
    }
}

fn parse_num<T: std::str::FromStr>(line: &Line<'_>) -> Result<T> {
    line.value
        .parse()
        .map_err(|_| Error::CaseFile(format!("line {}: `{}` is not a nonnegative integer", line.number, line.value)))
}

fn parse_weights(line: &Line<'_>) -> Result<Vec<u32>> {
    list(line.value)
        .iter()
        .map(|w| w.parse().map_err(|_| Error::CaseFile(format!("line {}: bad weight `{}`", line.number, w))))
        .collect()
}

impl CaseFile {
    pub fn parse(text: &str) -> Result<CaseFile> {
        let mut case = CaseFile {
            name: String::new(),
            variables: Vec::new(),
            weights: Vec::new(),
            relations: Vec::new(),
            expect: BTreeMap::new(),
            mode: Mode { pipeline: true, ..Mode::default() },
            relation_lines: Vec::new(),
        };
        for (section, line) in lines(text)? {
            match (section.as_str(), line.key) {
                ("" | "algebra", "name") => case.name = line.value.to_string(),
                ("" | "algebra", "variables") => case.variables.extend(list(line.value)),
                ("" | "algebra", "weights") => case.weights.extend(parse_weights(&line)?),
                ("" | "algebra", "relations" | "relation") => {
                    for r in list(line.value) {
                        case.relations.push(r);
                        case.relation_lines.push(line.number);
                    }
                }
                ("expect", key) => {
                    let Some((_, kind)) = EXPECT_KEYS.iter().find(|(k, _)| *k == key) else {
                        return Err(Error::CaseFile(format!("line {}: unknown expectation `{}`", line.number, key)));
                    };
                    match *kind {
                        "bool" => {
                            parse_bool(&line)?;
                        }
                        "int" => {
                            parse_num::<i64>(&line)?;
                        }
                        _ => {}
                    }
                    case.expect.insert(key.to_string(), line.value.to_string());
                }
                ("mode", "pipeline") => case.mode.pipeline = parse_bool(&line)?,
                ("mode", "smooth_cone") => case.mode.smooth_cone = parse_bool(&line)?,
                ("mode", "prop31") => case.mode.prop31 = parse_bool(&line)?,
                ("mode", "en_dump") => case.mode.en_dump = parse_bool(&line)?,
                ("mode", "rowops") => case.mode.rowops = parse_num(&line)?,
                ("mode", "seed") => case.mode.seed = Some(parse_num(&line)?),
                (s, k) => {
                    let place = if s.is_empty() { "top level".to_string() } else { format!("[{}]", s) };
                    return Err(Error::CaseFile(format!("line {}: unknown key `{}` at {}", line.number, k, place)));
                }
            }
        }
        if case.name.is_empty() {
            return Err(Error::CaseFile("missing `name`".into()));
        }
        if case.variables.is_empty() {
            return Err(Error::CaseFile("missing `variables`".into()));
        }
        Ok(case)
    }

    pub fn load(path: &Path) -> Result<CaseFile> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text).map_err(|e| match e {
            Error::CaseFile(m) => Error::CaseFile(format!("{}: {}", path.display(), m)),
            other => other,
        })
    }

    pub fn ring(&self) -> Result<Ring> {
        if self.weights.is_empty() {
            VariableContext::standard(self.variables.clone())
        } else {
            VariableContext::new(self.variables.clone(), self.weights.clone())
        }
    }

    /// Parses the relations, reporting the case-file line of any error.
    pub fn polynomials(&self, ring: &Ring) -> Result<Vec<Polynomial>> {
        self.relations
            .iter()
            .zip(&self.relation_lines)
            .map(|(r, &line)| parse_polynomial(ring, r).map_err(|e| e.at_line(line)))
            .collect()
    }

    /// Parses and validates the algebra.
    pub fn algebra(&self) -> Result<GradedAlgebra> {
        let ring = self.ring()?;
        let rels = self.polynomials(&ring)?;
        GradedAlgebra::validate(&ring, rels)
    }

    pub fn expects_invalid(&self) -> bool {
        self.expect.get("valid").map(|v| v == "false" || v == "no" || v == "0").unwrap_or(false)
    }

    pub fn seed(&self, default: u64) -> u64 {
        self.mode.seed.unwrap_or(default)
    }
}

/// A case file together with its validated algebra.
#[derive(Clone, Debug)]
pub struct LoadedCase {
    pub case: CaseFile,
    pub algebra: GradedAlgebra,
}

/// Reads, parses and validates a case file.
pub fn load_case(path: &Path) -> Result<LoadedCase> {
    let case = CaseFile::load(path)?;
    let algebra = case.algebra()?;
    Ok(LoadedCase { case, algebra })
}

/// A matrix file: `variables`, optional `weights`, and one `row = a, b, …`
/// line per row.
pub fn parse_matrix_file(text: &str) -> Result<PolyMatrix> {
    let mut variables = Vec::new();
    let mut weights = Vec::new();
    let mut rows: Vec<(usize, Vec<String>)> = Vec::new();
    for (section, line) in lines(text)? {
        if !section.is_empty() && section != "matrix" {
            return Err(Error::CaseFile(format!("line {}: unknown section [{}]", line.number, section)));
        }
        match line.key {
            "name" => {}
            "variables" => variables.extend(list(line.value)),
            "weights" => weights.extend(parse_weights(&line)?),
            "row" => rows.push((line.number, list(line.value))),
            k => return Err(Error::CaseFile(format!("line {}: unknown key `{}`", line.number, k))),
        }
    }
    let ring = if weights.is_empty() {
        VariableContext::standard(variables)?
    } else {
        VariableContext::new(variables, weights)?
    };
    let mut parsed = Vec::with_capacity(rows.len());
    for (number, row) in rows {
        let p = row
            .iter()
            .map(|s| parse_polynomial(&ring, s).map_err(|e| e.at_line(number)))
            .collect::<Result<Vec<_>>>()?;
        parsed.push(p);
    }
    PolyMatrix::from_rows(&ring, parsed)
}

/// Whether `text` looks like a matrix file rather than a case file.
pub fn is_matrix_file(text: &str) -> bool {
    lines(text).map(|ls| ls.iter().any(|(_, l)| l.key == "row")).unwrap_or(false)
}
