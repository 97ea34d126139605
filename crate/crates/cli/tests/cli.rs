//! End-to-end tests of the `dcartan` binary: run the compiled executable on
//! fixture files and check the emitted text, the records format, and the
//! documented exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_str()
        .expect("fixture path is valid UTF-8")
        .to_string()
}

fn dcartan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dcartan"))
        .args(args)
        .output()
        .expect("the binary should run")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn exit(out: &Output) -> i32 {
    out.status.code().expect("the binary should exit normally")
}

#[test]
fn validate_reports_the_derived_structure() {
    let out = dcartan(&["validate", &fixture("wild.toml")]);
    assert_eq!(exit(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("symmetrizer: diag(3, 2)"), "{text}");
    assert!(text.contains("type: infinite"), "{text}");
    assert!(text.contains("condf: false"), "{text}");
}

#[test]
fn deform_prints_the_affine_rank_two_matrix() {
    let out = dcartan(&["deform", &fixture("affine.toml")]);
    assert_eq!(exit(&out), 0);
    assert_eq!(
        stdout(&out),
        "C[1,1] = q t^-1 + q^-1 t\n\
         C[1,2] = -u[1,2,1] - u[1,2,2]\n\
         C[2,1] = -u[1,2,1]^-1 - u[1,2,2]^-1\n\
         C[2,2] = q t^-1 + q^-1 t\n"
    );
}

#[test]
fn invert_runs_every_applicable_method_and_reports_agreement() {
    let out = dcartan(&["invert", &fixture("a2.toml"), "--trunc", "4"]);
    assert_eq!(exit(&out), 0);
    assert_eq!(
        stdout(&out),
        "methods: series, coxeter, bipartite\n\
         agreement: all methods agree\n\
         trunc: 4\n\
         Ctilde[1,1] = q^-1 t\n\
         Ctilde[1,2] = q^-2 t^2 u[1,2,1] - q^-4 t^4 u[1,2,1]\n\
         Ctilde[2,1] = q^-2 t^2 u[1,2,1]^-1 - q^-4 t^4 u[1,2,1]^-1\n\
         Ctilde[2,2] = q^-1 t\n"
    );
}

#[test]
fn invert_with_a_word_adds_the_fourth_method() {
    let out = dcartan(&[
        "invert",
        &fixture("affine.toml"),
        "--trunc",
        "6",
        "--word",
        "1 2",
    ]);
    assert_eq!(exit(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("methods: series, coxeter, bipartite, word\n"), "{text}");
    assert!(text.contains("agreement: all methods agree"), "{text}");
}

#[test]
fn records_mode_is_tab_separated_terms_only() {
    let out = dcartan(&["deform", &fixture("a2.toml"), "--output", "records"]);
    assert_eq!(exit(&out), 0);
    assert_eq!(
        stdout(&out),
        "1\t1\tq t^-1\t1\n\
         1\t1\tq^-1 t\t1\n\
         1\t2\tu[1,2,1]\t-1\n\
         2\t1\tu[1,2,1]^-1\t-1\n\
         2\t2\tq t^-1\t1\n\
         2\t2\tq^-1 t\t1\n"
    );
}

#[test]
fn mu_one_specializes_every_parameter() {
    let out = dcartan(&["deform", &fixture("a2.toml"), "--mu", "one"]);
    assert_eq!(exit(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("C[1,2] = -1\n"), "{text}");
    assert!(!text.contains("u[1,2,1]"), "{text}");
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["invert", &fixture("affine.toml"), "--trunc", "8"];
    let first = dcartan(&args);
    let second = dcartan(&args);
    assert_eq!(exit(&first), 0);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn kp_inequality_is_a_result_not_an_error() {
    let out = dcartan(&["kp", &fixture("wild.toml")]);
    assert_eq!(exit(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("condf: false"), "{text}");
    assert!(text.ends_with("equal: false\n"), "{text}");

    let out = dcartan(&["kp", &fixture("a2.toml")]);
    assert_eq!(exit(&out), 0);
    assert!(stdout(&out).ends_with("equal: true\n"));
}

#[test]
fn longest_prints_the_global_factor_and_twist() {
    let out = dcartan(&["longest", &fixture("a2.toml")]);
    assert_eq!(exit(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("word: 1 2 1\n"), "{text}");
    assert!(text.contains("global factor: -q^-3 t^3\n"), "{text}");
    assert!(text.contains("star: 1 -> 2, 2 -> 1\n"), "{text}");
    assert!(text.contains("nu(alpha_1) = u[1,2,1]^-1 alpha_2\n"), "{text}");
}

#[test]
fn ep_prints_the_closed_form_and_its_expansion() {
    let out = dcartan(&["ep", &fixture("a2.toml"), "--i", "1", "--j", "2", "--trunc", "8"]);
    assert_eq!(exit(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("pairing: <E_1, S_2>\n"), "{text}");
    assert!(text.contains("/ (1 - q^-6 t^6) [t]"), "{text}");
    assert!(
        text.contains(
            "expansion through t^8: -q^-1 t u[1,2,1] - q^-3 t^3 u[1,2,1] - q^-5 t^5 u[1,2,1] \
             - q^-7 t^7 u[1,2,1]\n"
        ),
        "{text}"
    );
}

#[test]
fn ext_dim_reads_the_mesh_coefficient() {
    let out = dcartan(&[
        "ext-dim",
        &fixture("affine.toml"),
        "--i",
        "2",
        "--k",
        "1",
        "--j",
        "1",
        "--trunc",
        "10",
    ]);
    assert_eq!(exit(&out), 0);
    assert_eq!(stdout(&out), "distance: 2\ndim Ext^1((2, 1), (1, 0)) = 2\n");
}

#[test]
fn unreadable_or_malformed_input_exits_2() {
    let out = dcartan(&["validate", &fixture("nonexistent.toml")]);
    assert_eq!(exit(&out), 2);
    assert!(stderr(&out).starts_with("error: parse error:"));

    let out = dcartan(&["validate", &fixture("bad.toml")]);
    assert_eq!(exit(&out), 2);
}

#[test]
fn precondition_failures_exit_3() {
    // Bipartite inversion without a height function in the file.
    let out = dcartan(&["invert", &fixture("wild.toml"), "--method", "bipartite"]);
    assert_eq!(exit(&out), 3);
    assert!(stderr(&out).contains("height"), "{}", stderr(&out));

    // A word that misses a vertex is rejected by the summation method.
    let out =
        dcartan(&["invert", &fixture("a2.toml"), "--method", "word", "--word", "1 1"]);
    assert_eq!(exit(&out), 3);
    assert!(stderr(&out).contains("word rejected"), "{}", stderr(&out));

    // The longest element only exists in finite type.
    let out = dcartan(&["longest", &fixture("wild.toml")]);
    assert_eq!(exit(&out), 3);
    assert!(stderr(&out).contains("finite"), "{}", stderr(&out));

    // Out-of-range vertex argument.
    let out = dcartan(&["ep", &fixture("a2.toml"), "--i", "3", "--j", "1"]);
    assert_eq!(exit(&out), 3);
}

#[test]
fn malformed_word_text_exits_2() {
    let out =
        dcartan(&["invert", &fixture("a2.toml"), "--method", "word", "--word", "1 x"]);
    assert_eq!(exit(&out), 2);
    assert!(stderr(&out).contains("non-integer letter"), "{}", stderr(&out));
}
