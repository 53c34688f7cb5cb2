#![allow(dead_code)]

use std::path::PathBuf;

use recollement::io::{load_category, load_instance};
use recollement::{ModCategory, RecollementInstance};

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn mod_a2() -> ModCategory {
    load_category(&data_dir().join("kA2.json"), None).unwrap()
}

pub fn t2() -> RecollementInstance {
    load_instance(&data_dir().join("t2_kA2.json"), None, true).unwrap()
}

pub fn product() -> RecollementInstance {
    load_instance(&data_dir().join("product_kA2.json"), None, true).unwrap()
}
