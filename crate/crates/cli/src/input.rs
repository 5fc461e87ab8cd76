use std::path::Path;

use evolving_groups::perm::parse_group_spec;
use evolving_groups::{catalog, Caps, FiniteGroup};

use crate::{CliError, CliResult};

/// A group named by the user, either `catalog:NAME` or a spec file path.
pub struct LoadedGroup {
    pub name: String,
    pub group: FiniteGroup,
}

pub fn load(source: &str, caps: &Caps) -> CliResult<LoadedGroup> {
    if let Some(name) = source.strip_prefix("catalog:") {
        let entry = catalog::find(name)?;
        let group = catalog::build(&entry, caps.closure)?;
        return Ok(LoadedGroup {
            name: entry.name,
            group,
        });
    }
    let text = std::fs::read_to_string(source).map_err(|source_err| CliError::Io {
        path: source.to_string(),
        source: source_err,
    })?;
    let gens = parse_group_spec(&text, caps.degree)?;
    let group = FiniteGroup::closure(&gens, caps.closure)?;
    let name = Path::new(source)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| source.to_string());
    Ok(LoadedGroup { name, group })
}
