//! Case files, the embedded corpus and the verification pipeline.

mod case;
mod pipeline;

pub use case::{is_matrix_file, load_case, parse_matrix_file, CaseFile, LoadedCase, Mode, EXPECT_KEYS};
pub use pipeline::{
    en_matrix, overall_outcome, run_case, run_cases, run_pipeline, AlgebraSummary, Assertion, EnSummary,
    ExpectationCheck, Hypotheses, Outcome, PipelineOptions, Rejection, Report, ReesSummary, ShortcutVerdict,
    StageError, SymSummary, DEFAULT_ROWOPS, METHODS,
};

use std::path::Path;

use crate::error::{Error, Result};

/// Case files compiled into the binary, in name order.
const CORPUS: &[(&str, &str)] = &[
    ("curve_cone", include_str!("../../corpus/curve_cone.case")),
    ("normal_crossing", include_str!("../../corpus/normal_crossing.case")),
    ("plane_cubic", include_str!("../../corpus/plane_cubic.case")),
    ("polynomial_ring", include_str!("../../corpus/polynomial_ring.case")),
    ("quadric_cone", include_str!("../../corpus/quadric_cone.case")),
    ("reject_inhomogeneous", include_str!("../../corpus/reject_inhomogeneous.case")),
    ("reject_not_regular", include_str!("../../corpus/reject_not_regular.case")),
    ("surface_cone", include_str!("../../corpus/surface_cone.case")),
];

/// The embedded corpus.
pub fn corpus() -> Vec<CaseFile> {
    CORPUS.iter().map(|(_, text)| CaseFile::parse(text).expect("embedded case parses")).collect()
}

/// An embedded case by name.
pub fn corpus_case(name: &str) -> Option<CaseFile> {
    CORPUS.iter().find(|(n, _)| *n == name).map(|(_, text)| CaseFile::parse(text).expect("embedded case parses"))
}

/// Resolves a case argument: a file path, or the name of an embedded case.
pub fn resolve_case(arg: &str) -> Result<CaseFile> {
    let path = Path::new(arg);
    if path.is_file() {
        return CaseFile::load(path);
    }
    corpus_case(arg).ok_or_else(|| Error::CaseFile(format!("no such case file or corpus case: {}", arg)))
}

/// Every `*.case` file in `dir`, sorted by file name.
pub fn cases_in_dir(dir: &Path) -> Result<Vec<CaseFile>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().map(|e| e == "case").unwrap_or(false))
        .collect();
    paths.sort();
    paths.iter().map(|p| CaseFile::load(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_names_match_files() {
        for (name, text) in CORPUS {
            assert_eq!(&CaseFile::parse(text).unwrap().name, name);
        }
        assert!(CORPUS.windows(2).all(|w| w[0].0 < w[1].0));
        assert!(resolve_case("quadric_cone").is_ok());
        assert!(resolve_case("no_such_case").is_err());
    }
}
