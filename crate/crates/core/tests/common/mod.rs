#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use serde::Deserialize;

use cplus2asp::ground::{ground_laws, GroundLawSet};
use cplus2asp::parser::parse_files;

#[derive(Debug, Deserialize)]
pub struct Case {
    pub name: String,
    pub file: String,
    pub query: String,
    pub found_step: u32,
    pub oracle: String,
}

#[derive(Deserialize)]
struct CaseFile {
    case: Vec<Case>,
}

pub fn examples_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples")
}

pub fn cases() -> Vec<Case> {
    let text = fs::read_to_string(examples_dir().join("expected/cases.toml")).unwrap();
    toml::from_str::<CaseFile>(&text).unwrap().case
}

/// Every bundled description, by file stem.
pub fn domain_names() -> Vec<String> {
    let mut names: Vec<String> = fs::read_dir(examples_dir().join("domains"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "cp"))
        .map(|p| p.file_stem().unwrap().to_string_lossy().into_owned())
        .collect();
    names.sort();
    names
}

pub fn load(file: &str) -> GroundLawSet {
    let path = examples_dir().join("domains").join(file);
    ground_laws(&parse_files(&[path]).unwrap()).unwrap()
}
