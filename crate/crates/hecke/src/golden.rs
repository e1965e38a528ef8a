//! A fixed suite of invocations whose output must be reproducible.

use crate::cli::{run, Outcome};

const TWO_TERM: &str = r#"{"p":"3","exponent":"2","lo":"0","ranks":["1","1"],"d":[[["3"]]]}"#;
const SHIFT_OP: &str = r#"[{"maps":[[["0"]],[["3"]]]}]"#;
const DIAGONAL: &str = r#"{"p":"2","exponent":"2","lo":"0","ranks":["2","2"],"d":[[["2","0"],["0","2"]]]}"#;
const DIAGONAL_OP: &str = r#"[{"maps":[[["1","2"],["2","2"]],[["1","2"],["2","2"]]]}]"#;

pub const GOLDEN: &[&[&str]] = &[
    &["satake", "gl", "--n", "3"],
    &["satake", "unitary", "--n", "1", "--case", "inert"],
    &["satake", "transform", "--n", "3", "--partition", "1,2"],
    &["heckepoly", "build", "--n", "2", "--case", "split", "--side", "wc"],
    &["heckepoly", "dual", "--values", "3,5", "--q", "7"],
    &["heckepoly", "twist", "--values", "3,5,11", "--q", "7", "--cyclotomic", "2", "--character", "-4"],
    &["heckepoly", "eisenstein", "--partition", "2,1", "--z", "2,9,40", "--sqrt-q", "6", "--modulus", "103"],
    &["heckepoly", "verify-factorization", "--n", "2", "--case", "split"],
    &["heckepoly", "verify-factorization", "--n", "2", "--case", "inert", "--format", "tsv"],
    &["oracle", "enumerate", "--n", "2", "--p", "3", "--label", "0,2", "--list"],
    &["oracle", "convolve", "--n", "2", "--p", "3", "--a", "0,1", "--b", "0,1"],
    &["oracle", "convolve", "--n", "3", "--p", "2", "--a", "0,1,2", "--b", "0,1,1"],
    &["oracle", "constant-term", "--n", "2", "--p", "5", "--partition", "1,1", "--label", "0,1"],
    &["oracle", "compare", "--n", "2", "--p", "3", "--all"],
    &["oracle", "compare", "--n", "3", "--p", "2", "--a", "0,0,1", "--b", "0,1,2", "--format", "tsv"],
    &["weights", "dict", "--lambda", "2,1:-2,-3"],
    &["weights", "twist", "--lambda", "2,1:0,-3", "--lambda", "1,0:1,0", "--variant", "regular"],
    &["weights", "lan-suh", "--a", "3,2,1,0", "--d", "1", "--p", "13"],
    &["weights", "levi-check", "--lambda", "1,0:0,-1", "--p", "23"],
    &["complex", "cohomology", "--complex", TWO_TERM],
    &["complex", "nullhomotopy", "--complex", TWO_TERM, "--map", r#"{"maps":[[["3"]],[["3"]]]}"#],
    &["complex", "quotient", "--complex", TWO_TERM, "--ops", SHIFT_OP],
    &["complex", "square-zero", "--seed", "11", "--trials", "20", "--p", "3"],
    &["complex", "idempotents", "--complex", DIAGONAL, "--ops", DIAGONAL_OP],
    &["complex", "glue", "--seed", "5", "--exponent", "3"],
];

/// Runs the suite with `--threads threads`.
pub fn run_suite(threads: usize) -> Vec<Outcome> {
    let t = threads.to_string();
    GOLDEN
        .iter()
        .map(|args| run(["hecke", "--threads", t.as_str()].into_iter().chain(args.iter().copied())))
        .collect()
}
