//! Built-in theorem specs.

use std::path::Path;

use super::{parse_theorem_spec, TheoremSpec};
use crate::{Error, Result};

const BUILTINS: &[(&str, &str)] = &[
    ("madthm1", include_str!("../../theorems/madthm1.thm")),
    ("madthm2", include_str!("../../theorems/madthm2.thm")),
    ("madthm3", include_str!("../../theorems/madthm3.thm")),
    ("madthm4", include_str!("../../theorems/madthm4.thm")),
    ("madthm5", include_str!("../../theorems/madthm5.thm")),
    ("mad14_5", include_str!("../../theorems/mad14_5.thm")),
    ("girth7", include_str!("../../theorems/girth7.thm")),
    ("mad3", include_str!("../../theorems/mad3.thm")),
    ("mad3_variant", include_str!("../../theorems/mad3_variant.thm")),
    ("mad10_3", include_str!("../../theorems/mad10_3.thm")),
    ("delta3_avg4", include_str!("../../theorems/delta3_avg4.thm")),
    ("thmlast", include_str!("../../theorems/thmlast.thm")),
];

pub fn builtin_names() -> Vec<&'static str> {
    BUILTINS.iter().map(|(n, _)| *n).collect()
}

pub fn builtin_text(name: &str) -> Option<&'static str> {
    BUILTINS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn builtin(name: &str) -> Result<TheoremSpec> {
    let text = builtin_text(name).ok_or_else(|| {
        Error::input(format!("unknown theorem `{name}`; built-ins: {}", builtin_names().join(", ")))
    })?;
    parse_theorem_spec(text)
}

/// Loads a spec from a file, falling back to the built-in catalog when no
/// file exists at `arg`. A `.thm` suffix on a built-in name is accepted.
pub fn resolve(arg: &str) -> Result<TheoremSpec> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::input(format!("cannot read {arg}: {e}")))?;
        return parse_theorem_spec(&text);
    }
    let stem = path
        .file_name()
        .and_then(|f| f.to_str())
        .map_or(arg, |f| f.strip_suffix(".thm").unwrap_or(f));
    builtin(stem)
}
