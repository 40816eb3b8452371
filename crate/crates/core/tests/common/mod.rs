#![allow(dead_code)]

pub mod oracles;

use std::fs;
use std::path::PathBuf;

use rxd_core::{IdsDictionary, MalformedPolicy};

pub fn data_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(rel)
}

pub fn read_data(rel: &str) -> String {
    fs::read_to_string(data_path(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

pub fn fixture_text() -> String {
    read_data("ids_fixture.txt")
}

pub fn fixture() -> IdsDictionary {
    rxd_core::parse_ids_file(fixture_text().as_bytes(), MalformedPolicy::Abort).expect("fixture parses")
}
