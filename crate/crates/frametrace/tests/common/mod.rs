//! Fixtures and a runner for the `frametrace` binary.
#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;

use frametrace::io::{self, SubspaceFile};
use frametrace_core::group::{builtin_group, FiniteGroup, GroupVector};
use frametrace_core::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    pub fn report(&self) -> serde_json::Value {
        serde_json::from_str(&self.stdout).expect("report is JSON")
    }

    /// Value recorded under `name` in the report.
    pub fn value(&self, name: &str) -> serde_json::Value {
        self.report()["values"]
            .as_array()
            .unwrap()
            .iter()
            .find(|v| v["name"] == name)
            .unwrap_or_else(|| panic!("no value {name}"))["value"]
            .clone()
    }

    pub fn check(&self, name: &str) -> serde_json::Value {
        self.report()["checks"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["name"] == name)
            .unwrap_or_else(|| panic!("no check {name}"))
            .clone()
    }
}

pub fn frametrace(args: &[&str]) -> Run {
    frametrace_env(args, None)
}

/// Runs with `FRAMETRACE_TOL` set to `tol` (or unset).
pub fn frametrace_env(args: &[&str], tol: Option<&str>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_frametrace"));
    cmd.args(args).env_remove("FRAMETRACE_TOL");
    if let Some(t) = tol {
        cmd.env("FRAMETRACE_TOL", t);
    }
    let out = cmd.output().expect("spawn frametrace");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

pub fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

pub struct Fixtures {
    pub dir: tempfile::TempDir,
    pub group: Arc<FiniteGroup>,
}

impl Fixtures {
    pub fn new(spec: &str) -> Self {
        Fixtures {
            dir: tempfile::tempdir().unwrap(),
            group: Arc::new(builtin_group(spec).unwrap()),
        }
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    pub fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.path(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    pub fn vector(&self, name: &str, data: Vec<frametrace_core::C64>) -> PathBuf {
        let p = self.path(name);
        let v = GroupVector::new(self.group.clone(), data).unwrap();
        io::write_json(&p, &io::vector_file(&v)).unwrap();
        p
    }

    pub fn random_vector(&self, name: &str, seed: u64) -> PathBuf {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.vector(name, sample::vector(&mut rng, self.group.order()))
    }

    pub fn group_file(&self, name: &str) -> PathBuf {
        let p = self.path(name);
        io::write_json(&p, &io::group_file(&self.group)).unwrap();
        p
    }

    pub fn subspace(&self, name: &str, vectors: &[Vec<frametrace_core::C64>]) -> PathBuf {
        let p = self.path(name);
        let file = SubspaceFile {
            group: self.group.label().to_string(),
            vectors: vectors.iter().map(|v| v.iter().map(io::to_pair).collect()).collect(),
        };
        io::write_json(&p, &file).unwrap();
        p
    }
}
