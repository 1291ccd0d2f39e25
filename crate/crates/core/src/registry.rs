//! Named codes shipped with the crate.
//!
//! A registry is a directory with an `index.txt` of `name | file | note`
//! lines next to the code files. The built-in registry is compiled in; the
//! `QECC_FORGE_REGISTRY` environment variable points at a replacement
//! directory. Every entry is parsed and structurally checked at load.

use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::io::{parse_code_file, CodeFile, ParseError};

pub const REGISTRY_ENV: &str = "QECC_FORGE_REGISTRY";

const BUILTIN_INDEX: &str = include_str!("../registry/index.txt");
const BUILTIN_FILES: &[(&str, &str)] = &[
    ("fivequbit.code", include_str!("../registry/fivequbit.code")),
    ("bell.code", include_str!("../registry/bell.code")),
    ("steane.code", include_str!("../registry/steane.code")),
    ("shor.code", include_str!("../registry/shor.code")),
    ("qutrit-five.code", include_str!("../registry/qutrit-five.code")),
    ("hamming7.code", include_str!("../registry/hamming7.code")),
    ("cx-seed.code", include_str!("../registry/cx-seed.code")),
    ("c1-93.code", include_str!("../registry/c1-93.code")),
];

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("reading {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("index line {0}: expected `name | file | note`")]
    Index(usize),
    #[error("duplicate registry name `{0}`")]
    Duplicate(String),
    #[error("missing file `{0}`")]
    MissingFile(String),
    #[error("entry `{name}`: {source}")]
    Parse { name: String, source: ParseError },
    #[error("entry `{name}` fails its structural check: {reason}")]
    Structure { name: String, reason: String },
    #[error("no registry entry named `{0}`")]
    Unknown(String),
}

#[derive(Debug, Clone)]
pub struct RegistryEntry {
    pub name: String,
    pub note: String,
    pub text: String,
    pub code: CodeFile,
}

#[derive(Debug, Clone)]
pub struct Registry {
    entries: Vec<RegistryEntry>,
}

/// Additive entries must be symplectic self-orthogonal and linear entries
/// must be nonzero.
fn check(code: &CodeFile) -> Result<(), String> {
    match code {
        CodeFile::Additive(c) => {
            c.self_orthogonality().map_err(|(i, j)| format!("generators {i} and {j} are not symplectic orthogonal"))
        }
        CodeFile::Linear(c) if c.dimension() == 0 => Err("zero code".into()),
        _ => Ok(()),
    }
}

impl Registry {
    fn build(index: &str, mut read: impl FnMut(&str) -> Result<String, RegistryError>) -> Result<Self, RegistryError> {
        let mut entries: Vec<RegistryEntry> = Vec::new();
        for (i, line) in index.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.splitn(3, '|').map(str::trim).collect();
            let [name, file, note] = parts[..] else {
                return Err(RegistryError::Index(i + 1));
            };
            if name.is_empty() || file.is_empty() {
                return Err(RegistryError::Index(i + 1));
            }
            if entries.iter().any(|e| e.name == name) {
                return Err(RegistryError::Duplicate(name.to_string()));
            }
            let text = read(file)?;
            let code =
                parse_code_file(&text).map_err(|source| RegistryError::Parse { name: name.to_string(), source })?.code;
            check(&code).map_err(|reason| RegistryError::Structure { name: name.to_string(), reason })?;
            entries.push(RegistryEntry { name: name.to_string(), note: note.to_string(), text, code });
        }
        Ok(Registry { entries })
    }

    pub fn builtin() -> Result<Self, RegistryError> {
        Self::build(BUILTIN_INDEX, |file| {
            BUILTIN_FILES
                .iter()
                .find(|(f, _)| *f == file)
                .map(|(_, text)| text.to_string())
                .ok_or_else(|| RegistryError::MissingFile(file.to_string()))
        })
    }

    pub fn from_dir(dir: &Path) -> Result<Self, RegistryError> {
        let read = |path: PathBuf| std::fs::read_to_string(&path).map_err(|source| RegistryError::Io { path, source });
        let index = read(dir.join("index.txt"))?;
        Self::build(&index, |file| read(dir.join(file)))
    }

    /// The directory named by `QECC_FORGE_REGISTRY`, else the built-in set.
    pub fn load() -> Result<Self, RegistryError> {
        match std::env::var_os(REGISTRY_ENV) {
            Some(dir) => Self::from_dir(Path::new(&dir)),
            None => Self::builtin(),
        }
    }

    pub fn entries(&self) -> &[RegistryEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Result<&RegistryEntry, RegistryError> {
        self.entries.iter().find(|e| e.name == name).ok_or_else(|| RegistryError::Unknown(name.to_string()))
    }
}
