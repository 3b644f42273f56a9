//! CLI golden tests: every fixture in the corpus is exercised by at
//! least one invocation, outputs are byte-identical across 1, 2 and 8
//! workers, and match the checked-in golden files.
//!
//! Regenerate goldens with:
//! `UPDATE_GOLDENS=1 cargo test -p quandles-cli --test golden`

use std::path::{Path, PathBuf};
use std::process::Command;

fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().unwrap()
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Runs the CLI with the given args plus `--workers N`, capturing exit
/// code, stdout and stderr into one comparable blob.
fn run_with_workers(args: &[&str], workers: usize) -> String {
    let output = Command::new(env!("CARGO_BIN_EXE_quandles"))
        .args(args)
        .args(["--workers", &workers.to_string()])
        .env_remove("QUANDLES_WORKERS")
        .current_dir(workspace_root())
        .output()
        .expect("binary runs");
    format!(
        "exit: {}\n--- stdout ---\n{}--- stderr ---\n{}",
        output.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&output.stdout),
        String::from_utf8_lossy(&output.stderr),
    )
}

fn cases() -> Vec<(&'static str, Vec<&'static str>)> {
    vec![
        (
            "colorings_unknot",
            vec!["colorings", "--pd", "fixtures/pd/unknot.pd", "--target", "dihedral:5", "--keep-colorings"],
        ),
        (
            "colorings_trefoil",
            vec!["colorings", "--pd", "fixtures/pd/trefoil.pd", "--target", "dihedral:3"],
        ),
        (
            "colorings_trefoil_json",
            vec!["colorings", "--pd", "fixtures/pd/trefoil.pd", "--target", "dihedral:3", "--format", "json", "--keep-colorings"],
        ),
        (
            "colorings_figure_eight",
            vec!["colorings", "--pd", "fixtures/pd/figure_eight.pd", "--target", "dihedral:5"],
        ),
        (
            "colorings_cinquefoil",
            vec!["colorings", "--pd", "fixtures/pd/cinquefoil.pd", "--target", "dihedral:5"],
        ),
        (
            "colorings_t53",
            vec!["colorings", "--pd", "fixtures/pd/t53.pd", "--target", "conj:s3"],
        ),
        (
            "colorings_square_knot",
            vec!["colorings", "--pd", "fixtures/pd/square_knot.pd", "--target", "dihedral:3"],
        ),
        (
            "colorings_stevedore",
            vec!["colorings", "--pd", "fixtures/pd/stevedore.pd", "--target", "dihedral:3"],
        ),
        (
            "colorings_presentation_file",
            vec!["colorings", "--presentation", "fixtures/presentation/trefoil.json", "--target", "dihedral:3"],
        ),
        (
            "colorings_table_target",
            vec!["colorings", "--pd", "fixtures/pd/trefoil.pd", "--target", "fixtures/quandle/dihedral3.json"],
        ),
        (
            "colorings_group_target",
            vec!["colorings", "--pd", "fixtures/pd/trefoil.pd", "--target", "conj:fixtures/group/s3.json"],
        ),
        (
            "colorings_parse_error",
            vec!["colorings", "--pd", "fixtures/pd/broken.pd", "--target", "dihedral:3"],
        ),
        (
            "braid_trefoil",
            vec!["braid", "--braid", "fixtures/braid/trefoil.braid", "--target", "dihedral:3", "--emit-pd"],
        ),
        (
            "braid_t52",
            vec!["braid", "--braid", "fixtures/braid/t52.braid", "--target", "dihedral:5"],
        ),
        (
            "braid_t53",
            vec!["braid", "--braid", "fixtures/braid/t53.braid", "--target", "dihedral:5"],
        ),
        (
            "braid_square_knot",
            vec!["braid", "--braid", "fixtures/braid/square_knot.braid", "--target", "dihedral:3"],
        ),
        ("simplify_cinquefoil", vec!["simplify", "--word", "2: 1 1 1 1 1"]),
        (
            "simplify_presentation_file",
            vec!["simplify", "--presentation", "fixtures/presentation/trefoil.json"],
        ),
        ("torus_52", vec!["torus", "--p", "5", "--q", "2", "--target", "dihedral:5"]),
        ("torus_53", vec!["torus", "--p", "5", "--q", "3", "--target", "dihedral:5"]),
        (
            "movie_sphere",
            vec!["movie", "--script", "fixtures/movie/sphere.json", "--target", "dihedral:3"],
        ),
        (
            "movie_torus",
            vec!["movie", "--script", "fixtures/movie/torus.json", "--target", "dihedral:7"],
        ),
        (
            "movie_trefoil_product",
            vec!["movie", "--script", "fixtures/movie/trefoil_product.json", "--target", "dihedral:3"],
        ),
        (
            "ch_sphere",
            vec!["ch", "--diagram", "fixtures/ch/sphere.ch", "--target", "dihedral:5"],
        ),
        (
            "ch_torus",
            vec!["ch", "--diagram", "fixtures/ch/torus.ch", "--target", "dihedral:5"],
        ),
        (
            "ch_spun_trefoil",
            vec!["ch", "--diagram", "fixtures/ch/spun_trefoil.ch", "--target", "dihedral:3"],
        ),
        (
            "ch_spun_trefoil_resolve",
            vec!["ch", "--diagram", "fixtures/ch/spun_trefoil.ch", "--resolve", "lower"],
        ),
        (
            "concordance_trivial_trefoil",
            vec!["concordance-check", "--input", "fixtures/concordance/trivial_trefoil.json"],
        ),
        (
            "concordance_trivial_figure_eight",
            vec!["concordance-check", "--input", "fixtures/concordance/trivial_figure_eight.json"],
        ),
        (
            "concordance_square_to_unknot",
            vec!["concordance-check", "--input", "fixtures/concordance/square_to_unknot.json"],
        ),
        (
            "concordance_square_k2",
            vec!["concordance-check", "--input", "fixtures/concordance/square_to_unknot_k2.json"],
        ),
        (
            "concordance_stevedore",
            vec!["concordance-check", "--input", "fixtures/concordance/stevedore_to_unknot.json"],
        ),
        (
            "concordance_neg_band_split",
            vec!["concordance-check", "--input", "fixtures/concordance/neg_band_split.json"],
        ),
        (
            "concordance_neg_bad_map",
            vec!["concordance-check", "--input", "fixtures/concordance/neg_bad_map.json"],
        ),
        (
            "concordance_neg_count",
            vec!["concordance-check", "--input", "fixtures/concordance/neg_count.json"],
        ),
        (
            "concordance_json",
            vec!["concordance-check", "--input", "fixtures/concordance/trivial_trefoil.json", "--format", "json"],
        ),
        (
            "obstruct_self",
            vec!["obstruct", "--k1", "fixtures/pd/trefoil.pd", "--k0", "fixtures/pd/trefoil.pd", "--budget", "2"],
        ),
        (
            "obstruct_unknot_vs_trefoil",
            vec!["obstruct", "--k1", "fixtures/pd/unknot.pd", "--k0", "fixtures/pd/trefoil.pd", "--budget", "2"],
        ),
        (
            "verify_dihedral3",
            vec!["verify-quandle", "--table", "fixtures/quandle/dihedral3.json"],
        ),
        (
            "verify_not_a_quandle",
            vec!["verify-quandle", "--table", "fixtures/quandle/not_a_quandle.json"],
        ),
    ]
}

#[test]
fn golden_outputs_are_worker_independent_and_stable() {
    let update = std::env::var("UPDATE_GOLDENS").is_ok();
    let mut failures = Vec::new();
    for (name, args) in cases() {
        let base = run_with_workers(&args, 1);
        for workers in [2, 8] {
            let other = run_with_workers(&args, workers);
            assert_eq!(
                base, other,
                "{name}: output differs between 1 and {workers} workers"
            );
        }
        let golden_path = golden_dir().join(format!("{name}.golden"));
        if update {
            std::fs::write(&golden_path, &base).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&golden_path)
            .unwrap_or_else(|e| panic!("{name}: missing golden ({e}); run with UPDATE_GOLDENS=1"));
        if base != expected {
            failures.push(format!(
                "{name}: output drifted from golden\n--- got ---\n{base}\n--- want ---\n{expected}"
            ));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n\n"));
    println!(
        "ACCEPTANCE 9: PASS — {} CLI invocations byte-identical across 1/2/8 workers and \
         stable against goldens",
        cases().len()
    );
}
