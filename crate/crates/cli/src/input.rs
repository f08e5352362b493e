use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use mixed_turan::format::{parse_family, parse_matrix};
use mixed_turan::{Error, MixedAdjacencyMatrix, MixedGraph};

/// A failure tied to the file it came from.
#[derive(Debug)]
pub struct InputError {
    pub path: String,
    pub error: InputErrorKind,
}

#[derive(Debug)]
pub enum InputErrorKind {
    Io(std::io::Error),
    Engine(Error),
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.error {
            InputErrorKind::Io(e) => write!(f, "{}: {e}", self.path),
            InputErrorKind::Engine(e) => write!(f, "{}: {e}", self.path),
        }
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    let shown = path.display().to_string();
    let mut text = String::new();
    let res = if shown == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| InputError {
        path: shown,
        error: InputErrorKind::Io(e),
    })?;
    Ok(text)
}

/// Expands directories into their regular files, sorted by name.
fn expand(paths: &[PathBuf]) -> Result<Vec<PathBuf>, InputError> {
    let mut out = vec![];
    for p in paths {
        if p.is_dir() {
            let entries = fs::read_dir(p).map_err(|e| InputError {
                path: p.display().to_string(),
                error: InputErrorKind::Io(e),
            })?;
            let mut files: Vec<PathBuf> = entries
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.is_file())
                .collect();
            files.sort();
            out.extend(files);
        } else {
            out.push(p.clone());
        }
    }
    Ok(out)
}

/// Every graph in every file; each file may hold several blocks.
pub fn load_family(paths: &[PathBuf]) -> Result<Vec<MixedGraph>, InputError> {
    let mut family = vec![];
    for p in expand(paths)? {
        let text = read(&p)?;
        let members = parse_family(&text).map_err(|e| InputError {
            path: p.display().to_string(),
            error: InputErrorKind::Engine(e),
        })?;
        family.extend(members);
    }
    if family.is_empty() {
        return Err(InputError {
            path: paths.iter().map(|p| p.display().to_string()).collect::<Vec<_>>().join(", "),
            error: InputErrorKind::Engine(Error::EmptyFamily),
        });
    }
    Ok(family)
}

pub fn load_matrix(path: &Path) -> Result<MixedAdjacencyMatrix, InputError> {
    let text = read(path)?;
    parse_matrix(&text).map_err(|e| InputError {
        path: path.display().to_string(),
        error: InputErrorKind::Engine(e),
    })
}
