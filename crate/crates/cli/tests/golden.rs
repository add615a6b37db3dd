//! Stored reports for the configs in `tests/golden`. Set `UPDATE_GOLDEN=1` to
//! rewrite them.

mod common;

use common::{golden_configs, golden_output, stdout};

#[test]
fn reports_match_stored_output() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some_and(|v| v == "1");
    let configs = golden_configs();
    assert_eq!(configs.len(), 12);
    for config in &configs {
        for format in ["human", "machine"] {
            let args = ["--format", format];
            let single = stdout(config, &args, 1);
            assert_eq!(
                single,
                stdout(config, &args, 8),
                "{} differs across thread counts",
                config.display()
            );
            let path = golden_output(config, format);
            if update {
                std::fs::write(&path, &single).unwrap();
                continue;
            }
            let stored = std::fs::read_to_string(&path).unwrap_or_else(|_| {
                panic!("missing {}; rerun with UPDATE_GOLDEN=1", path.display())
            });
            assert_eq!(single, stored, "{} changed", path.display());
            if format == "machine" {
                let v: serde_json::Value = serde_json::from_str(&single).unwrap();
                assert!(v.get("result").is_some());
            }
        }
    }
}
