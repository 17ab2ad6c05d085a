use std::io::Read;
use std::path::Path;

/// Resolves a positional input: missing or `-` reads stdin, an existing
/// path reads the file, anything else is the text itself.
pub fn read(arg: Option<&str>) -> Result<String, String> {
    match arg {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| format!("reading stdin: {e}"))?;
            Ok(s)
        }
        Some(a) if Path::new(a).is_file() => {
            std::fs::read_to_string(a).map_err(|e| format!("reading {a}: {e}"))
        }
        Some(a) => Ok(a.to_string()),
    }
}

/// Reads a file argument; there is no inline fallback.
pub fn read_file(path: &str) -> Result<String, String> {
    if path == "-" {
        return read(None);
    }
    std::fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))
}
