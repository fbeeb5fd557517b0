//! Bundled examples with their expected output.
//!
//! Example inputs and golden outputs are compiled into the binary, so the
//! self test does not depend on the working directory. A case may run several
//! commands; its golden file is their concatenated output, with an
//! `exit: <code>` line and the error message after any command that fails.

use std::path::Path;

use serde_json::json;

use crate::error::CliError;
use crate::report::Report;
use crate::run::{run, Source};

macro_rules! embed {
    ($($name:literal),* $(,)?) => {
        &[$((concat!("examples/", $name), include_str!(concat!("../examples/", $name)))),*]
    };
}

static FILES: &[(&str, &str)] = embed!(
    "abc.json",
    "constant.json",
    "cumulative.json",
    "cumulative_0n1n.json",
    "even_odd.json",
    "ex1.json",
    "ex1_unary.json",
    "ex2.json",
    "ex3.json",
    "hypergraph.json",
    "hypergraph.txt",
    "pairwise_disjoint.json",
    "periodic_table.json",
    "prime_prefix.json",
    "prime_prefix_10.json",
);

static GOLDEN: &[(&str, &str)] = &[
    ("ex1", include_str!("../examples/golden/ex1.out")),
    ("ex2", include_str!("../examples/golden/ex2.out")),
    ("ex3", include_str!("../examples/golden/ex3.out")),
    ("abc", include_str!("../examples/golden/abc.out")),
    (
        "ex1_unary",
        include_str!("../examples/golden/ex1_unary.out"),
    ),
    (
        "multiples",
        include_str!("../examples/golden/multiples.out"),
    ),
    (
        "hypergraph",
        include_str!("../examples/golden/hypergraph.out"),
    ),
    (
        "hypergraph_text",
        include_str!("../examples/golden/hypergraph_text.out"),
    ),
    (
        "prime_prefix",
        include_str!("../examples/golden/prime_prefix.out"),
    ),
    (
        "prime_acceptance",
        include_str!("../examples/golden/prime_acceptance.out"),
    ),
    (
        "prime_estimate",
        include_str!("../examples/golden/prime_estimate.out"),
    ),
    ("zero_one", include_str!("../examples/golden/zero_one.out")),
    ("most", include_str!("../examples/golden/most.out")),
    (
        "periodic_table",
        include_str!("../examples/golden/periodic_table.out"),
    ),
    (
        "built_in_families",
        include_str!("../examples/golden/built_in_families.out"),
    ),
    ("even_odd", include_str!("../examples/golden/even_odd.out")),
    ("errors", include_str!("../examples/golden/errors.out")),
];

pub struct Embedded;

impl Source for Embedded {
    fn read(&self, path: &Path) -> Result<String, CliError> {
        FILES
            .iter()
            .find(|(name, _)| Path::new(name) == path)
            .map(|(_, text)| text.to_string())
            .ok_or_else(|| CliError::Io {
                path: path.to_path_buf(),
                source: std::io::ErrorKind::NotFound.into(),
            })
    }
}

pub struct Case {
    pub name: &'static str,
    pub commands: Vec<Vec<String>>,
}

fn cmd(args: &[&str]) -> Vec<String> {
    args.iter().map(|s| s.to_string()).collect()
}

fn periodic(threshold: usize, period: usize, residues: &[usize]) -> String {
    json!({
        "threshold": threshold,
        "prefix": vec![0; threshold],
        "period": period,
        "residues": residues,
    })
    .to_string()
}

pub fn cases() -> Vec<Case> {
    let case = |name, commands| Case { name, commands };
    let mut multiples: Vec<Vec<String>> = (1..=10)
        .map(|k| cmd(&["density", "--set", &periodic(1, k, &[0])]))
        .collect();
    multiples.push(cmd(&["density", "--set", &periodic(0, 3, &[0])]));
    let evens = periodic(0, 2, &[0]);
    let odds = periodic(0, 2, &[1]);
    let not_threes = periodic(0, 3, &[1, 2]);
    vec![
        case("ex1", vec![cmd(&["intersect-most", "examples/ex1.json"])]),
        case("ex2", vec![cmd(&["intersect-most", "examples/ex2.json"])]),
        case("ex3", vec![cmd(&["intersect-most", "examples/ex3.json"])]),
        case(
            "abc",
            vec![cmd(&["intersect-most", "--input", "examples/abc.json"])],
        ),
        case(
            "ex1_unary",
            vec![cmd(&[
                "density-language",
                "--dfas",
                "examples/ex1_unary.json",
            ])],
        ),
        case("multiples", multiples),
        case(
            "hypergraph",
            vec![cmd(&["average-state", "examples/hypergraph.json"])],
        ),
        case(
            "hypergraph_text",
            vec![cmd(&[
                "average-state",
                "examples/hypergraph.txt",
                "--format",
                "text",
            ])],
        ),
        case(
            "prime_prefix",
            vec![cmd(&[
                "intersect-most",
                "--family",
                "examples/prime_prefix.json",
            ])],
        ),
        case(
            "prime_acceptance",
            vec![
                cmd(&[
                    "acceptance",
                    "--family",
                    "examples/prime_prefix.json",
                    "--element",
                    "5",
                    "--n",
                    "8",
                ]),
                cmd(&[
                    "acceptance",
                    "--family",
                    "examples/prime_prefix.json",
                    "--element",
                    "4",
                    "--n",
                    "8",
                ]),
            ],
        ),
        case(
            "prime_estimate",
            vec![cmd(&[
                "estimate",
                "--family",
                "examples/prime_prefix_10.json",
                "--n",
                "1000",
                "--tol",
                "1/20",
            ])],
        ),
        case(
            "zero_one",
            vec![
                cmd(&[
                    "density-language",
                    "--family",
                    "examples/cumulative_0n1n.json",
                    "--element",
                    "0011",
                ]),
                cmd(&[
                    "density-language",
                    "--family",
                    "examples/cumulative_0n1n.json",
                    "--element",
                    "0101",
                ]),
                cmd(&[
                    "intersect-most",
                    "--family",
                    "examples/cumulative_0n1n.json",
                ]),
                cmd(&[
                    "acceptance",
                    "--family",
                    "examples/cumulative_0n1n.json",
                    "--element",
                    "000111",
                    "--n",
                    "6",
                ]),
            ],
        ),
        case(
            "most",
            vec![
                cmd(&["most", "--set", &not_threes]),
                cmd(&["most", "--set", &evens, "--format", "text"]),
                cmd(&["most", "--set", &evens, "--set", &periodic(0, 4, &[0])]),
                cmd(&["mostsim", "--set", &evens, "--set", &odds]),
                cmd(&["mostsim", "--set", &evens, "--set", &not_threes]),
                cmd(&["estimate", "--set", &not_threes, "--n", "999"]),
            ],
        ),
        case(
            "periodic_table",
            vec![
                cmd(&["intersect-most", "--family", "examples/periodic_table.json"]),
                cmd(&[
                    "average-state",
                    "--family",
                    "examples/periodic_table.json",
                    "--format",
                    "text",
                ]),
            ],
        ),
        case(
            "built_in_families",
            vec![
                cmd(&["intersect-most", "--family", "examples/constant.json"]),
                cmd(&[
                    "intersect-most",
                    "--family",
                    "examples/pairwise_disjoint.json",
                ]),
                cmd(&["intersect-most", "--family", "examples/cumulative.json"]),
            ],
        ),
        case(
            "even_odd",
            vec![cmd(&[
                "density-language",
                "--dfas",
                "examples/even_odd.json",
                "--element",
                "0110",
            ])],
        ),
        case(
            "errors",
            vec![
                cmd(&["intersect-most", "examples/missing.json"]),
                cmd(&[
                    "density-language",
                    "--dfas",
                    "examples/ex1_unary.json",
                    "--element",
                    "01",
                ]),
                cmd(&[
                    "density-language",
                    "--dfas",
                    "examples/ex1_unary.json",
                    "examples/even_odd.json",
                ]),
                cmd(&[
                    "density",
                    "--set",
                    "{\"threshold\":0,\"prefix\":[],\"period\":0,\"residues\":[]}",
                ]),
                cmd(&["density", "--set", "{\"threshold\":0,"]),
                cmd(&["most", "--set", &periodic(4, 1, &[]), "--set", &evens]),
            ],
        ),
    ]
}

/// The output of every command of `case`, as stored in its golden file.
pub fn render(case: &Case, max_states: usize) -> String {
    let limit = max_states.to_string();
    let mut out = String::new();
    for args in &case.commands {
        let argv = std::iter::once("mostset").chain(args.iter().map(String::as_str));
        let outcome = run(argv, &Embedded, Some(&limit));
        out.push_str(&outcome.stdout);
        if outcome.code != 0 {
            out.push_str(&format!("exit: {}\n{}", outcome.code, outcome.stderr));
        }
    }
    out
}

pub fn golden(name: &str) -> Option<&'static str> {
    GOLDEN.iter().find(|(n, _)| *n == name).map(|(_, g)| *g)
}

/// Runs every case; the flag is true when all of them match.
pub fn run_all(max_states: usize) -> (Report, bool) {
    let all = cases();
    let failed: Vec<&str> = all
        .iter()
        .filter(|c| golden(c.name) != Some(render(c, max_states).as_str()))
        .map(|c| c.name)
        .collect();
    let ok = failed.is_empty();
    let report = Report::new()
        .with("selftest", if ok { "pass" } else { "fail" })
        .with("cases", all.len())
        .with("failed", failed);
    (report, ok)
}
