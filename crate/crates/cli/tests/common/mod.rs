//! Helpers for driving the built binary.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

/// Every golden config, sorted by file name.
pub fn golden_configs() -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(golden_dir())
        .expect("golden directory")
        .map(|e| e.expect("directory entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "toml"))
        .collect();
    out.sort();
    out
}

pub fn run(config: &Path, extra: &[&str], threads: usize) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordinext"))
        .arg("--config")
        .arg(config)
        .args(extra)
        .env("RAYON_NUM_THREADS", threads.to_string())
        .output()
        .expect("spawn ordinext")
}

/// Stdout of a successful run; panics with stderr otherwise.
pub fn stdout(config: &Path, extra: &[&str], threads: usize) -> String {
    let out = run(config, extra, threads);
    assert!(
        out.status.success(),
        "{} exited with {:?}: {}",
        config.display(),
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

/// Path of the stored report for `config` in the given format.
pub fn golden_output(config: &Path, format: &str) -> PathBuf {
    config.with_extension(if format == "machine" { "json" } else { "txt" })
}
