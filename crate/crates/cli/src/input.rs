use std::path::Path;

use hnngenus::group::{subgroup_closure, Group, Subgroup};
use hnngenus::hnn::{HnnData, HnnFile};
use hnngenus::{Error, GroupSpec};

use crate::CliError;

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// A group from inline syntax, inline JSON, or a JSON file path.
pub fn parse_base(text: &str) -> Result<Group, CliError> {
    let t = text.trim();
    let spec = if !t.starts_with('{') && Path::new(t).is_file() {
        GroupSpec::parse(&read(Path::new(t))?)
    } else {
        GroupSpec::parse(t)
    };
    let spec = spec.map_err(|e| CliError::Input { what: format!("base `{t}`"), source: e })?;
    let g = spec.build().map_err(|e| CliError::Input { what: format!("base `{t}`"), source: e })?;
    Ok(g.into_group())
}

fn element(g: &Group, token: &str, what: &str) -> Result<usize, CliError> {
    g.parse_element(token).ok_or_else(|| CliError::Input {
        what: what.to_string(),
        source: Error::Parse(format!("unknown element `{}`", token.trim())),
    })
}

/// The subgroup generated by a comma-separated list of element names or indices.
pub fn parse_subgroup(g: &Group, text: &str, what: &str) -> Result<Subgroup, CliError> {
    let seeds = text
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| element(g, t, what))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(subgroup_closure(g, &seeds))
}

/// `"a->b, c->d"` extended from generators to an isomorphism `H → K`.
pub fn parse_map(h: &Subgroup, k: &Subgroup, text: Option<&str>) -> Result<HnnData, CliError> {
    let g = h.parent();
    let input = |e| CliError::Input { what: "--f".into(), source: e };
    let Some(text) = text else {
        if h == k {
            return Ok(HnnData::identity(h.clone()));
        }
        return Err(input(Error::Parse("--f is required when K differs from H".into())));
    };
    let mut pairs = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (src, dst) = part
            .split_once("->")
            .ok_or_else(|| input(Error::Parse(format!("`{part}` is not of the form src->dst"))))?;
        pairs.push((element(g, src, "--f")?, element(g, dst, "--f")?));
    }
    HnnData::from_pairs(h.clone(), k.clone(), &pairs, "").map_err(input)
}

/// HNN data read from a file.
pub fn load_file(path: &Path) -> Result<HnnData, CliError> {
    let what = path.display().to_string();
    let file = HnnFile::parse(&read(path)?).map_err(|e| CliError::Input { what: what.clone(), source: e })?;
    let mut d = file.load().map_err(|e| CliError::Input { what: what.clone(), source: e })?;
    if d.label.is_empty() {
        d.label = what;
    }
    Ok(d)
}

/// Reads `b` into the base of `a`, rejecting different multiplication tables.
pub fn load_file_into(path: &Path, base: &Group) -> Result<HnnData, CliError> {
    let d = load_file(path)?;
    if !d.base.same_law(base) {
        return Err(CliError::Core(Error::BaseMismatch));
    }
    let rec = d.record();
    let what = path.display().to_string();
    let mut out = rec.resolve(base).map_err(|e| CliError::Input { what, source: e })?;
    out.label = d.label;
    Ok(out)
}
