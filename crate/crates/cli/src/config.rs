//! `key=value` config files whose keys mirror long flag names.

use std::path::Path;

/// Reads `path` and appends `--key value` for every key not already given
/// on the command line. `true`/`false` values toggle switches.
pub fn merge(args: Vec<String>, path: &Path) -> Result<Vec<String>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut out = args.clone();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("{}:{}: expected key=value", path.display(), n + 1))?;
        let (key, value) = (key.trim(), value.trim());
        if key == "config" {
            return Err(format!("{}:{}: config files cannot nest", path.display(), n + 1));
        }
        let flag = format!("--{key}");
        let given = args.iter().any(|a| *a == flag || a.starts_with(&format!("{flag}=")));
        if given {
            continue;
        }
        match value {
            "true" => out.push(flag),
            "false" => {}
            _ => {
                out.push(flag);
                out.push(value.to_string());
            }
        }
    }
    Ok(out)
}

/// The value of `--config` in raw arguments, if any.
pub fn find(args: &[String]) -> Option<String> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(v) = a.strip_prefix("--config=") {
            return Some(v.to_string());
        }
    }
    None
}
