//! Textual group specifications: the JSON input format and a compact inline syntax.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::group::{make_group_from_table, FiniteGroup};
use crate::named;

/// JSON group description.
///
/// ```json
/// {"kind":"table","n":2,"table":[[0,1],[1,0]]}
/// {"kind":"perm","degree":3,"generators":[[1,0,2],[1,2,0]]}
/// {"kind":"named","name":"dihedral","params":{"order":8}}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Table { n: usize, table: Vec<Vec<usize>> },
    Perm { degree: usize, generators: Vec<Vec<usize>> },
    Named {
        name: String,
        #[serde(default)]
        params: Value,
    },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Table { n, table } => make_group_from_table(*n, table),
            GroupSpec::Perm { degree, generators } => named::from_permutations(*degree, generators),
            GroupSpec::Named { name, params } => named_group(name, params),
        }
    }

    pub fn named(name: &str, params: Value) -> Self {
        GroupSpec::Named { name: name.to_string(), params }
    }

    /// Parses either JSON or the inline syntax, e.g. `named:dihedral:8`,
    /// `cyclic:5`, `semidirect_cyclic:11:5:3`, `direct_product(cyclic:11,cyclic:2)`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.starts_with('{') {
            return serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()));
        }
        parse_inline(t.strip_prefix("named:").unwrap_or(t))
    }
}

fn int_param(name: &str, v: &Value, keys: &[&str]) -> Result<usize> {
    if let Some(n) = v.as_u64() {
        return Ok(n as usize);
    }
    keys.iter()
        .find_map(|k| v.get(*k).and_then(Value::as_u64))
        .map(|n| n as usize)
        .ok_or_else(|| Error::BadParams { name: name.into(), reason: format!("missing integer parameter {}", keys[0]) })
}

fn sub_spec(name: &str, v: &Value, key: &str) -> Result<FiniteGroup> {
    let sub = v
        .get(key)
        .ok_or_else(|| Error::BadParams { name: name.into(), reason: format!("missing factor `{key}`") })?;
    let spec: GroupSpec = match sub {
        Value::String(s) => GroupSpec::parse(s)?,
        other => serde_json::from_value(other.clone()).map_err(|e| Error::Parse(e.to_string()))?,
    };
    spec.build()
}

/// Builds a catalog group by family name.
pub fn named_group(name: &str, params: &Value) -> Result<FiniteGroup> {
    match name {
        "cyclic" => named::cyclic(int_param(name, params, &["n", "order"])?),
        "dihedral" => named::dihedral(int_param(name, params, &["order", "n"])?),
        "dicyclic" => named::dicyclic(int_param(name, params, &["order", "n"])?),
        "symmetric" => named::symmetric(int_param(name, params, &["n", "degree"])?),
        "alternating" => named::alternating(int_param(name, params, &["n", "degree"])?),
        "elementary_abelian" => named::elementary_abelian(int_param(name, params, &["p"])?, int_param(name, params, &["k"])?),
        "direct_product" => named::direct_product(&sub_spec(name, params, "a")?, &sub_spec(name, params, "b")?),
        "semidirect_cyclic" => named::semidirect_cyclic(
            int_param(name, params, &["n"])?,
            int_param(name, params, &["m"])?,
            int_param(name, params, &["action", "s"])?,
        ),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(s[start..].trim());
    parts
}

fn parse_inline(s: &str) -> Result<GroupSpec> {
    if let Some(rest) = s.strip_prefix("direct_product(") {
        let inner = rest.strip_suffix(')').ok_or_else(|| Error::Parse(format!("unbalanced `{s}`")))?;
        let parts = split_top_level(inner);
        if parts.len() != 2 {
            return Err(Error::Parse(format!("direct_product needs two factors in `{s}`")));
        }
        let a = serde_json::to_value(GroupSpec::parse(parts[0])?).expect("serializable");
        let b = serde_json::to_value(GroupSpec::parse(parts[1])?).expect("serializable");
        return Ok(GroupSpec::named("direct_product", serde_json::json!({"a": a, "b": b})));
    }
    let mut fields = s.split(':');
    let name = fields.next().unwrap_or_default();
    let nums: Vec<u64> = fields
        .map(|f| f.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad number `{f}` in `{s}`"))))
        .collect::<Result<_>>()?;
    let params = match (name, nums.as_slice()) {
        ("cyclic", [n]) | ("symmetric", [n]) | ("alternating", [n]) => serde_json::json!({"n": n}),
        ("dihedral", [n]) | ("dicyclic", [n]) => serde_json::json!({"order": n}),
        ("elementary_abelian", [p, k]) => serde_json::json!({"p": p, "k": k}),
        ("semidirect_cyclic", [n, m, a]) => serde_json::json!({"n": n, "m": m, "action": a}),
        ("cyclic" | "symmetric" | "alternating" | "dihedral" | "dicyclic" | "elementary_abelian" | "semidirect_cyclic", _) => {
            return Err(Error::BadParams { name: name.into(), reason: format!("wrong parameter count in `{s}`") })
        }
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    Ok(GroupSpec::named(name, params))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_forms() {
        let g = GroupSpec::parse(r#"{"kind":"named","name":"dihedral","params":{"order":8}}"#).unwrap().build().unwrap();
        assert_eq!(g.order(), 8);
        let g = GroupSpec::parse(r#"{"kind":"table","n":2,"table":[[0,1],[1,0]]}"#).unwrap().build().unwrap();
        assert_eq!(g.order(), 2);
        let g = GroupSpec::parse(r#"{"kind":"perm","degree":3,"generators":[[1,0,2],[1,2,0]]}"#).unwrap().build().unwrap();
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn inline_forms() {
        assert_eq!(GroupSpec::parse("named:dihedral:8").unwrap().build().unwrap().order(), 8);
        assert_eq!(GroupSpec::parse("semidirect_cyclic:11:5:3").unwrap().build().unwrap().order(), 55);
        let g = GroupSpec::parse("direct_product(cyclic:11,cyclic:2)").unwrap().build().unwrap();
        assert_eq!(g.order(), 22);
        assert_eq!(g.parse_element("(g;1)"), Some(1));
        let nested = GroupSpec::parse("direct_product(direct_product(cyclic:2,cyclic:2),symmetric:3)").unwrap();
        assert_eq!(nested.build().unwrap().order(), 24);
        assert!(matches!(GroupSpec::parse("mystery:3"), Err(Error::UnknownName(_))));
        assert!(matches!(named_group("cyclic", &Value::Null), Err(Error::BadParams { .. })));
    }

    #[test]
    fn spec_roundtrip() {
        let s = GroupSpec::parse("direct_product(cyclic:3,dicyclic:8)").unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(GroupSpec::parse(&text).unwrap(), s);
    }
}
