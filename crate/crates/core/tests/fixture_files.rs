//! The shipped JSON fixtures must parse to exactly the built-in fixtures.
//! Run with `TRIPAT_BLESS=1` to rewrite them.

use std::path::PathBuf;

use tripat::fixtures;
use tripat::io::{model_to_json, parse_model, parse_spec, parse_triple, spec_to_json, triple_to_json};

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn read_or_bless(name: &str, expected: String) -> String {
    let path = dir().join(name);
    if std::env::var_os("TRIPAT_BLESS").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &expected).unwrap();
    }
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn specifications() {
    for (name, s) in [
        ("class2rel.json", fixtures::class2rel()),
        ("shared_b.json", fixtures::shared_b()),
        ("bijection.json", fixtures::bijection()),
        ("chains.json", fixtures::chains()),
    ] {
        let text = read_or_bless(name, spec_to_json(&s));
        assert_eq!(parse_spec(&text).unwrap(), s, "{name}");
    }
}

#[test]
fn class2rel_file_has_four_patterns() {
    let s = parse_spec(&std::fs::read_to_string(dir().join("class2rel.json")).unwrap()).unwrap();
    let names: Vec<_> = s.patterns.iter().map(|p| p.name.as_str()).collect();
    assert_eq!(names, ["C-T", "A-Co", "A-Co2", "notDupF"]);
}

#[test]
fn models_and_triples() {
    for (name, g) in fixtures::class2rel_sources() {
        let file = format!("class2rel/{name}.json");
        assert_eq!(
            parse_model(&read_or_bless(&file, model_to_json(&g))).unwrap(),
            g,
            "{file}"
        );
    }
    let two = fixtures::nodes("A", 2);
    assert_eq!(
        parse_model(&read_or_bless("shared_b/twoAs.json", model_to_json(&two))).unwrap(),
        two
    );
    let host = fixtures::subclass_host();
    assert_eq!(
        parse_triple(&read_or_bless("class2rel/subclass_host.json", triple_to_json(&host))).unwrap(),
        host
    );
}
