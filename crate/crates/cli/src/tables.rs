use std::path::{Path, PathBuf};

use beatty_core::{cache, FunctionSpec, FunctionTable, Result};

pub const CACHE_ENV: &str = "BEATTY_LAB_CACHE";

/// File name of a cached table: the function name with anything outside
/// `[A-Za-z0-9.-]` replaced by `_`, then `-<N>.blab`.
pub fn cache_file_name(spec: &FunctionSpec, n: usize) -> String {
    let stem: String = spec
        .to_string()
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '.' || c == '-' { c } else { '_' })
        .collect();
    format!("{stem}-{n}.blab")
}

fn cache_path(spec: &FunctionSpec, n: usize) -> Option<PathBuf> {
    if spec.is_random() {
        return None;
    }
    let dir = std::env::var_os(CACHE_ENV).filter(|d| !d.is_empty())?;
    Some(Path::new(&dir).join(cache_file_name(spec, n)))
}

/// Tabulates `spec` on `1..=n`, going through the cache directory when one
/// is configured and the table is deterministic and integer-valued.
pub fn load(spec: &FunctionSpec, n: usize, seed: u64) -> Result<FunctionTable> {
    let Some(path) = cache_path(spec, n) else {
        return spec.build(n, seed);
    };
    if path.exists() {
        match cache::read_table(&path, &spec.to_string()) {
            Ok(t) if t.n() == n => return Ok(t),
            Ok(t) => eprintln!("warning: {} holds {} entries, expected {n}; rebuilding", path.display(), t.n()),
            Err(e) => eprintln!("warning: ignoring {}: {e}", path.display()),
        }
    }
    let table = spec.build(n, seed)?;
    if table.is_integer() {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        // write then rename, so a concurrent reader never sees a partial file
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(format!(".tmp{}", std::process::id()));
        cache::write_table(Path::new(&tmp), &table)?;
        std::fs::rename(&tmp, &path)?;
    }
    Ok(table)
}
