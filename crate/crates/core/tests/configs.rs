//! The JSON files shipped in `configs/` must stay in sync with the presets
//! (regenerate with `cargo run -p ordlab-core --example dump_configs`).

use std::path::PathBuf;

use ordlab_core::biorder::OrderSpec;
use ordlab_core::{conelang, config, presets};

fn configs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn read(name: &str) -> String {
    let path = configs_dir().join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn order_configs_match_presets() {
    for (file, preset) in [
        ("m2lex.json", presets::m2_lex_order()),
        ("m3char.json", presets::m3_character_order()),
        ("nc3.json", presets::nonconvex3()),
        (
            "m2cone.json",
            OrderSpec::Quotient(conelang::matching_order()),
        ),
    ] {
        let parsed = config::order_from_json(&read(file)).unwrap();
        assert_eq!(parsed, preset, "{file} drifted from its preset");
    }
}

#[test]
fn zx_configs_match_presets() {
    for (name, preset) in presets::zx_specs() {
        let file = format!("zx_{}.json", name.replace('-', "_"));
        let parsed = config::zx_from_json(&read(&file)).unwrap();
        assert_eq!(parsed, preset, "{file} drifted from its preset");
    }
}

#[test]
fn tower_configs_match_presets() {
    for (name, preset) in presets::towers() {
        let file = format!("tower_{}.json", name.replace('-', "_"));
        let parsed = config::tower_from_json(&read(&file)).unwrap();
        assert_eq!(parsed, preset, "{file} drifted from its preset");
    }
}
