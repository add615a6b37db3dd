mod common;

use std::io::Write;
use std::path::Path;

use tempfile::NamedTempFile;

fn config(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn code(path: &Path, extra: &[&str]) -> (i32, String) {
    let out = common::run(path, extra, 1);
    (
        out.status.code().unwrap(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

const GL3_HEADER: &str = r#"
mode = "continuous-unitary"

[group]
name = "GL3"

[field]
p = 5

[characters.chi]
coords = ["unr(a)", "unr(b)", "unr(c)"]
"#;

fn gl3(query: &str) -> NamedTempFile {
    config(&format!("{GL3_HEADER}\n[query]\n{query}\n"))
}

#[test]
fn malformed_toml_is_a_parse_error() {
    let f = config("mode = \n");
    let (c, err) = code(f.path(), &[]);
    assert_eq!(c, 1, "{err}");
    assert!(err.starts_with("ordinext: parse error"));
}

#[test]
fn unknown_keys_are_rejected() {
    let f = gl3("kind = \"weyl\"\ncolour = 1");
    assert_eq!(code(f.path(), &[]).0, 1);
}

#[test]
fn missing_config_is_a_parse_error() {
    assert_eq!(code(Path::new("/nonexistent/ordinext.toml"), &[]).0, 1);
}

#[test]
fn inner_outside_levi_is_a_validation_error() {
    let f = gl3("kind = \"wsigma\"\nlevi = [1]\ninner = [2]");
    let (c, err) = code(f.path(), &[]);
    assert_eq!(c, 2, "{err}");
}

#[test]
fn root_index_out_of_range() {
    let f = gl3("kind = \"wsigma\"\nlevi = [3]");
    assert_eq!(code(f.path(), &[]).0, 2);
}

#[test]
fn non_levi_character_is_a_validation_error() {
    let f = gl3("kind = \"hord\"\nlevi = [1]\nchi = \"chi\"\ndegree = 1");
    let (c, err) = code(f.path(), &[]);
    assert_eq!(c, 2);
    assert!(err.contains("α1"), "{err}");
}

#[test]
fn continuous_higher_degree_needs_override() {
    let f = gl3("kind = \"hord\"\nchi = \"chi\"\ndegree = 2");
    assert_eq!(code(f.path(), &[]).0, 3);
    let out = common::stdout(f.path(), &["--override-validity", "--format", "machine"], 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["validity"], "overridden");
    assert_eq!(v["result"]["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn weyl_bound_is_enforced() {
    let f = gl3("kind = \"weyl\"");
    assert_eq!(code(f.path(), &["--max-weyl", "5"]).0, 2);
    assert_eq!(code(f.path(), &["--max-weyl", "6"]).0, 0);
}

#[test]
fn query_flag_overrides_config() {
    let f = gl3("kind = \"weyl\"");
    let out = common::stdout(f.path(), &["--query", "roots"], 1);
    assert!(out.starts_with("query: roots\n"), "{out}");
    assert_eq!(code(f.path(), &["--query", "bogus"]).0, 1);
}

#[test]
fn torus_dimension_makes_symbolic_value_exact() {
    let cfg = common::golden_dir().join("extord_quadratic_st.toml");
    let out = common::stdout(&cfg, &["--format", "machine", "--torus-ext-dim", "12"], 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        v["result"]["value"],
        serde_json::json!({"status": "exact", "dim": 12})
    );
}
