use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use recollement::io::{load_category, load_instance};
use recollement::{Error, Exec, ModCategory, RecollementInstance, Representation, Result};
use serde_json::Value;

pub const DEFAULT_INSTANCE: &str = "t2_kA2";

pub fn default_data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub struct Context {
    pub data_dir: PathBuf,
    pub algebra: String,
    pub instance: Option<String>,
    pub prime: Option<u32>,
    pub seed: u64,
    pub budget: usize,
    pub trials: usize,
    pub json: bool,
    pub exec: Exec,
}

/// The category a single-category command works in.
pub enum Loaded {
    Base(ModCategory),
    Lambda(Box<RecollementInstance>),
}

impl Loaded {
    pub fn cat(&self) -> &ModCategory {
        match self {
            Loaded::Base(c) => c,
            Loaded::Lambda(i) => i.lambda(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Loaded::Base(c) => format!("mod {}", c.algebra().name()),
            Loaded::Lambda(i) => format!("mod Λ ({}, {} mode)", i.name(), i.mode()),
        }
    }
}

impl Context {
    /// A file path as given, or `<data dir>/<name>.json`.
    pub fn resolve(&self, name: &str) -> PathBuf {
        let p = Path::new(name);
        if p.is_file() {
            return p.to_path_buf();
        }
        let candidate = self.data_dir.join(name);
        if candidate.is_file() {
            return candidate;
        }
        self.data_dir.join(format!("{name}.json"))
    }

    pub fn base(&self) -> Result<ModCategory> {
        load_category(&self.resolve(&self.algebra), self.prime)
    }

    pub fn instance(&self, certify: bool) -> Result<RecollementInstance> {
        let name = self.instance.as_deref().unwrap_or(DEFAULT_INSTANCE);
        load_instance(&self.resolve(name), self.prime, certify)
    }

    /// mod Λ of `--instance` when given, otherwise mod A of `--algebra`.
    pub fn category(&self) -> Result<Loaded> {
        Ok(match self.instance {
            Some(_) => Loaded::Lambda(Box::new(self.instance(true)?)),
            None => Loaded::Base(self.base()?),
        })
    }
}

/// Atom names of a direct sum, with repetition: `"P(1) ⊕ S(2), S(2)"`.
pub fn parse_sum(cat: &ModCategory, text: &str) -> Result<Representation> {
    let names: Vec<&str> = text
        .split([',', '⊕', '+'])
        .map(str::trim)
        .filter(|n| !n.is_empty() && *n != "0")
        .collect();
    let idx = names
        .iter()
        .map(|n| cat.atoms().index_of(n))
        .collect::<Result<Vec<_>>>()?;
    Ok(cat.sum_of(&idx))
}

pub fn input_error(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

/// Text and JSON renderings of one command's result plus its exit code.
pub struct Output {
    pub code: u8,
    pub text: String,
    pub json: Value,
}

impl Output {
    pub fn new() -> Self {
        Output {
            code: 0,
            text: String::new(),
            json: Value::Null,
        }
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        let _ = writeln!(self.text, "{}", s.as_ref());
    }

    pub fn fail(&mut self, code: u8) {
        self.code = self.code.max(code);
    }

    pub fn print(&self, json: bool) {
        if json {
            println!(
                "{}",
                serde_json::to_string_pretty(&self.json).expect("JSON values serialize")
            );
        } else {
            print!("{}", self.text);
        }
    }
}
