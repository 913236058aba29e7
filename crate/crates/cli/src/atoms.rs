use std::env;
use std::fs;
use std::path::{Path, PathBuf};

use faraday_core::atom::{builtin, load_atom, AtomSpec};

use crate::Failure;

pub const ATOM_DIR_VAR: &str = "FARADAY_ATOM_DIR";

/// Builtin name, then a literal path, then `$FARADAY_ATOM_DIR/<name>` with
/// and without an `.atom` suffix.
pub fn resolve(spec: &str) -> Result<(AtomSpec, String), Failure> {
    if let Some(atom) = builtin(spec) {
        return Ok((atom, format!("builtin:{}", spec.to_ascii_lowercase())));
    }
    let mut tried = vec![PathBuf::from(spec)];
    if let Some(dir) = env::var_os(ATOM_DIR_VAR) {
        let dir = Path::new(&dir);
        tried.push(dir.join(spec));
        tried.push(dir.join(format!("{spec}.atom")));
    }
    for path in &tried {
        if path.is_file() {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            let atom = load_atom(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            return Ok((atom, path.display().to_string()));
        }
    }
    let tried: Vec<String> = tried.iter().map(|p| p.display().to_string()).collect();
    Err(Failure::usage(format!(
        "atom '{spec}' is not a builtin ({}) and no file was found (tried {})",
        faraday_core::atom::BUILTIN_NAMES.join(", "),
        tried.join(", ")
    )))
}
