#![allow(dead_code)]

pub mod oracle;

use infodist::graph::{validate_network, Network, RawNetwork};

pub fn corpus_path(name: &str) -> String {
    format!("{}/../../corpus/{name}", env!("CARGO_MANIFEST_DIR"))
}

pub fn read_corpus(name: &str) -> String {
    std::fs::read_to_string(corpus_path(name)).unwrap()
}

pub fn load(name: &str) -> Network {
    let raw: RawNetwork = serde_json::from_str(&read_corpus(name)).unwrap();
    validate_network(&raw).unwrap()
}
