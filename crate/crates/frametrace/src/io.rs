//! JSON file formats. Complex numbers are always `[re, im]` pairs.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use frametrace_core::group::{builtin_group, group_from_cayley, FiniteGroup, GroupVector};
use frametrace_core::plancherel::{validate_irreps, IrrepTable};
use frametrace_core::{CMatrix, C64};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{path}: invalid JSON: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{path}: {message}")]
    Invalid { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Core {
        path: PathBuf,
        source: frametrace_core::Error,
    },
}

pub type Pair = [f64; 2];

pub fn to_c64(p: &Pair) -> C64 {
    C64::new(p[0], p[1])
}

pub fn to_pair(z: &C64) -> Pair {
    [z.re, z.im]
}

/// `{"label": str, "order": n, "cayley": [[int]]}`
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub label: String,
    pub order: usize,
    pub cayley: Vec<Vec<usize>>,
}

/// `{"group": label, "data": [[re, im], ...]}`
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct VectorFile {
    pub group: String,
    pub data: Vec<Pair>,
}

/// `{"group": label, "vectors": [[[re, im], ...], ...]}`; the invariant
/// subspace is the smallest one containing every listed vector.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SubspaceFile {
    pub group: String,
    pub vectors: Vec<Vec<Pair>>,
}

/// A matrix either as `d²` row-major pairs or as `d` rows of `d` pairs.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum MatrixData {
    Flat(Vec<Pair>),
    Rows(Vec<Vec<Pair>>),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct IrrepEntry {
    pub label: String,
    pub dim: usize,
    pub matrices: Vec<MatrixData>,
}

/// `{"group": label, "irreps": [{"label", "dim", "matrices"}]}`
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct IrrepFile {
    pub group: String,
    pub irreps: Vec<IrrepEntry>,
}

/// `{"L": int, "a": int, "b": int, "window": [[re, im], ...]}`
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct WindowFile {
    #[serde(rename = "L")]
    pub l: usize,
    pub a: usize,
    pub b: usize,
    pub window: Vec<Pair>,
}

/// A file that was read, with its SHA-256 for the report.
#[derive(Debug, Clone)]
pub struct Loaded<T> {
    pub value: T,
    pub name: String,
    pub sha256: String,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Loaded<T>, IoError> {
    let bytes = fs::read(path).map_err(|source| IoError::Read {
        path: path.into(),
        source,
    })?;
    let value = serde_json::from_slice(&bytes).map_err(|source| IoError::Json {
        path: path.into(),
        source,
    })?;
    Ok(Loaded {
        value,
        name: path.display().to_string(),
        sha256: format!("{:x}", Sha256::digest(&bytes)),
    })
}

/// Pretty JSON with a trailing newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), IoError> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    fs::write(path, text).map_err(|source| IoError::Write {
        path: path.into(),
        source,
    })
}

fn invalid(path: &Path, message: impl Into<String>) -> IoError {
    IoError::Invalid {
        path: path.into(),
        message: message.into(),
    }
}

fn complex_vec(path: &Path, data: &[Pair]) -> Result<Vec<C64>, IoError> {
    if let Some(i) = data.iter().position(|p| !p[0].is_finite() || !p[1].is_finite()) {
        return Err(invalid(path, format!("entry {i} is not finite")));
    }
    Ok(data.iter().map(to_c64).collect())
}

pub fn load_group(path: &Path) -> Result<Loaded<FiniteGroup>, IoError> {
    let file: Loaded<GroupFile> = read_json(path)?;
    let g = &file.value;
    if g.order != g.cayley.len() {
        return Err(invalid(
            path,
            format!("order {} does not match {} table rows", g.order, g.cayley.len()),
        ));
    }
    let group = group_from_cayley(&g.cayley, g.label.clone()).map_err(|source| IoError::Core {
        path: path.into(),
        source,
    })?;
    Ok(Loaded {
        value: group,
        name: file.name,
        sha256: file.sha256,
    })
}

pub fn group_file(group: &FiniteGroup) -> GroupFile {
    GroupFile {
        label: group.label().into(),
        order: group.order(),
        cayley: group.cayley_table(),
    }
}

fn check_label(path: &Path, found: &str, group: &FiniteGroup) -> Result<(), IoError> {
    if found != group.label() {
        return Err(invalid(
            path,
            format!("vector belongs to group '{found}', expected '{}'", group.label()),
        ));
    }
    Ok(())
}

/// Reads the group label of a vector or subspace file without validating the rest.
pub fn peek_group_label(path: &Path) -> Result<String, IoError> {
    #[derive(Deserialize)]
    struct Label {
        group: String,
    }
    Ok(read_json::<Label>(path)?.value.group)
}

/// Resolves a group from a built-in label.
pub fn group_from_label(path: &Path, label: &str) -> Result<FiniteGroup, IoError> {
    builtin_group(label).map_err(|_| {
        invalid(
            path,
            format!("group '{label}' is not a built-in spec; pass --builtin or --file"),
        )
    })
}

pub fn load_vector(path: &Path, group: &Arc<FiniteGroup>) -> Result<Loaded<GroupVector>, IoError> {
    let file: Loaded<VectorFile> = read_json(path)?;
    check_label(path, &file.value.group, group)?;
    let data = complex_vec(path, &file.value.data)?;
    let v = GroupVector::new(group.clone(), data).map_err(|source| IoError::Core {
        path: path.into(),
        source,
    })?;
    Ok(Loaded {
        value: v,
        name: file.name,
        sha256: file.sha256,
    })
}

pub fn vector_file(v: &GroupVector) -> VectorFile {
    VectorFile {
        group: v.group().label().into(),
        data: v.data().iter().map(to_pair).collect(),
    }
}

pub fn load_subspace(path: &Path, group: &Arc<FiniteGroup>) -> Result<Loaded<Vec<Vec<C64>>>, IoError> {
    let file: Loaded<SubspaceFile> = read_json(path)?;
    check_label(path, &file.value.group, group)?;
    if file.value.vectors.is_empty() {
        return Err(invalid(path, "no vectors"));
    }
    let mut vectors = Vec::with_capacity(file.value.vectors.len());
    for v in &file.value.vectors {
        if v.len() != group.order() {
            return Err(invalid(
                path,
                format!("vector of length {} for a group of order {}", v.len(), group.order()),
            ));
        }
        vectors.push(complex_vec(path, v)?);
    }
    Ok(Loaded {
        value: vectors,
        name: file.name,
        sha256: file.sha256,
    })
}

fn matrix(path: &Path, d: usize, m: &MatrixData) -> Result<CMatrix, IoError> {
    let flat: Vec<Pair> = match m {
        MatrixData::Flat(v) => v.clone(),
        MatrixData::Rows(rows) => {
            if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                return Err(invalid(path, format!("matrix is not {d}x{d}")));
            }
            rows.concat()
        }
    };
    if flat.len() != d * d {
        return Err(invalid(
            path,
            format!("matrix has {} entries, expected {}", flat.len(), d * d),
        ));
    }
    CMatrix::from_vec(d, d, complex_vec(path, &flat)?).map_err(|source| IoError::Core {
        path: path.into(),
        source,
    })
}

/// Reads and fully validates an irrep table.
pub fn load_irreps(path: &Path, group: &Arc<FiniteGroup>) -> Result<Loaded<IrrepTable>, IoError> {
    let file: Loaded<IrrepFile> = read_json(path)?;
    check_label(path, &file.value.group, group)?;
    let mut supplied = Vec::with_capacity(file.value.irreps.len());
    for entry in &file.value.irreps {
        if entry.matrices.len() != group.order() {
            return Err(invalid(
                path,
                format!(
                    "irrep '{}' has {} matrices for a group of order {}",
                    entry.label,
                    entry.matrices.len(),
                    group.order()
                ),
            ));
        }
        let mats = entry
            .matrices
            .iter()
            .map(|m| matrix(path, entry.dim, m))
            .collect::<Result<Vec<_>, _>>()?;
        supplied.push((entry.label.clone(), mats));
    }
    let table = validate_irreps(group, supplied).map_err(|source| IoError::Core {
        path: path.into(),
        source,
    })?;
    Ok(Loaded {
        value: table,
        name: file.name,
        sha256: file.sha256,
    })
}

pub fn irrep_file(table: &IrrepTable) -> IrrepFile {
    IrrepFile {
        group: table.group().label().into(),
        irreps: table
            .irreps()
            .iter()
            .map(|i| IrrepEntry {
                label: i.label.clone(),
                dim: i.rep.dim(),
                matrices: i
                    .rep
                    .matrices()
                    .iter()
                    .map(|m| MatrixData::Flat(m.as_slice().iter().map(to_pair).collect()))
                    .collect(),
            })
            .collect(),
    }
}

pub fn load_window(path: &Path) -> Result<Loaded<WindowFile>, IoError> {
    let file: Loaded<WindowFile> = read_json(path)?;
    complex_vec(path, &file.value.window)?;
    if file.value.window.len() != file.value.l {
        return Err(invalid(
            path,
            format!(
                "window has {} entries, expected L = {}",
                file.value.window.len(),
                file.value.l
            ),
        ));
    }
    Ok(file)
}

pub fn window_file(l: usize, a: usize, b: usize, window: &[C64]) -> WindowFile {
    WindowFile {
        l,
        a,
        b,
        window: window.iter().map(to_pair).collect(),
    }
}

pub fn window_data(w: &WindowFile) -> Vec<C64> {
    w.window.iter().map(to_c64).collect()
}
