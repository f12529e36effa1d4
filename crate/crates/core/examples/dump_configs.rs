//! Regenerate the JSON configs shipped in `configs/`.
//!
//! Usage: `cargo run -p ordlab-core --example dump_configs -- <out-dir>`

use std::fs;
use std::path::PathBuf;

use ordlab_core::{config, conelang, presets};

fn main() {
    let out: PathBuf = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "configs".into())
        .into();
    fs::create_dir_all(&out).expect("create output dir");
    let write = |name: &str, value: serde_json::Value| {
        let path = out.join(name);
        let mut text = serde_json::to_string_pretty(&value).expect("serializable");
        text.push('\n');
        fs::write(&path, text).expect("write config");
        println!("wrote {}", path.display());
    };
    write("m2lex.json", config::order_to_json(&presets::m2_lex_order()));
    write(
        "m3char.json",
        config::order_to_json(&presets::m3_character_order()),
    );
    write("nc3.json", config::order_to_json(&presets::nonconvex3()));
    write(
        "m2cone.json",
        config::order_to_json(&ordlab_core::biorder::OrderSpec::Quotient(
            conelang::matching_order(),
        )),
    );
    for (name, spec) in presets::zx_specs() {
        write(&format!("zx_{}.json", name.replace('-', "_")), config::zx_to_json(&spec));
    }
    for (name, tower) in presets::towers() {
        write(
            &format!("tower_{}.json", name.replace('-', "_")),
            config::tower_to_json(&tower),
        );
    }
}
