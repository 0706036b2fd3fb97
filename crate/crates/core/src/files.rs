//! Group, variety and construction references: `builtin:NAME`, a bare
//! builtin name, or a path to a JSON file.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::freeprod::{builtin_construction, Factor, FreeConstruction, Kind};
use crate::group::{Builtin, FiniteGroup, Perm};
use crate::variety::VarietySpec;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    name: String,
    kind: GroupKind,
    builtin: Option<BuiltinRef>,
    generators: Option<Vec<String>>,
    table: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
enum GroupKind {
    Builtin,
    Permutations,
    Table,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BuiltinRef {
    family: String,
    param: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstructionFile {
    kind: String,
    #[serde(rename = "A")]
    a: Value,
    #[serde(rename = "B")]
    b: Value,
    pairing: Option<Vec<[usize; 2]>>,
    /// Generator names per factor; default `a1, a2, ..` and `b1, b2, ..`.
    names: Option<BTreeMap<String, Vec<String>>>,
}

fn json_error(what: &str, e: serde_json::Error) -> Error {
    Error::Format(format!("{what} line {} column {}: {e}", e.line(), e.column()))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

/// Resolves `builtin:NAME`, an existing file, or a bare builtin name.
pub fn load_group(reference: &str, limits: &Limits) -> Result<FiniteGroup> {
    if let Some(name) = reference.strip_prefix("builtin:") {
        return FiniteGroup::by_name(name, limits);
    }
    let path = Path::new(reference);
    if path.is_file() {
        return group_from_json(&read(path)?, limits);
    }
    FiniteGroup::by_name(reference, limits)
}

pub fn group_from_json(text: &str, limits: &Limits) -> Result<FiniteGroup> {
    let file: GroupFile = serde_json::from_str(text).map_err(|e| json_error("group file", e))?;
    group_from_file(file, limits)
}

fn group_from_file(file: GroupFile, limits: &Limits) -> Result<FiniteGroup> {
    let missing = |field: &str| Error::Format(format!("group `{}` of this kind needs `{field}`", file.name));
    let g = match file.kind {
        GroupKind::Builtin => {
            let b = file.builtin.as_ref().ok_or_else(|| missing("builtin"))?;
            FiniteGroup::builtin(Builtin::from_family(&b.family, b.param)?, limits)?
        }
        GroupKind::Permutations => {
            let gens = file.generators.as_ref().ok_or_else(|| missing("generators"))?;
            let perms = gens.iter().map(|s| Perm::parse(s)).collect::<Result<Vec<_>>>()?;
            FiniteGroup::from_permutations(file.name.clone(), &perms, limits)?
        }
        GroupKind::Table => {
            let rows = file.table.as_ref().ok_or_else(|| missing("table"))?;
            FiniteGroup::from_table(file.name.clone(), rows, None, limits)?
        }
    };
    Ok(g.with_name(file.name))
}

pub fn load_variety(reference: &str) -> Result<VarietySpec> {
    if let Some(name) = reference.strip_prefix("builtin:") {
        return VarietySpec::builtin(name);
    }
    let path = Path::new(reference);
    if path.is_file() {
        return VarietySpec::from_json(&read(path)?);
    }
    VarietySpec::builtin(reference)
}

/// `c3xc3`, `c2xc2`, `c5xc7`, `d2p:P` (optionally `builtin:`-prefixed) or a
/// construction file.
pub fn load_construction(reference: &str, limits: &Limits) -> Result<FreeConstruction> {
    if let Some(name) = reference.strip_prefix("builtin:") {
        return builtin_construction(name, limits);
    }
    let path = Path::new(reference);
    if path.is_file() {
        return construction_from_json(&read(path)?, limits);
    }
    builtin_construction(reference, limits)
}

pub fn construction_from_json(text: &str, limits: &Limits) -> Result<FreeConstruction> {
    let file: ConstructionFile = serde_json::from_str(text).map_err(|e| json_error("construction file", e))?;
    let kind = match file.kind.as_str() {
        "free" => Kind::Free,
        "amalgam" => Kind::Amalgam,
        other => return Err(Error::Format(format!("construction kind `{other}` is not free|amalgam"))),
    };
    let mut names = file.names.unwrap_or_default();
    if let Some(bad) = names.keys().find(|k| *k != "A" && *k != "B") {
        return Err(Error::Format(format!("names key `{bad}` is not A|B")));
    }
    let factor = |v: Value, side: &str, prefix: &str, names: Option<Vec<String>>| -> Result<Factor> {
        let g = match v {
            Value::String(s) => load_group(&s, limits)?,
            obj @ Value::Object(_) => group_from_file(
                serde_json::from_value(obj).map_err(|e| Error::Format(format!("factor {side}: {e}")))?,
                limits,
            )?,
            _ => return Err(Error::Format(format!("factor {side} must be a name or a group object"))),
        };
        match names {
            Some(n) => Factor::new(g, n),
            None => Factor::with_prefix(g, prefix),
        }
    };
    let a = factor(file.a, "A", "a", names.remove("A"))?;
    let b = factor(file.b, "B", "b", names.remove("B"))?;
    let pairing: Option<Vec<(usize, usize)>> = file.pairing.map(|p| p.into_iter().map(|[x, y]| (x, y)).collect());
    FreeConstruction::build(kind, a, b, pairing.as_deref())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_files() {
        let l = Limits::default();
        let g = group_from_json(r#"{"name": "K4", "kind": "permutations", "generators": ["(1 2)(3 4)", "(1 3)(2 4)"]}"#, &l)
            .unwrap();
        assert_eq!((g.name(), g.order()), ("K4", 4));
        let g = group_from_json(r#"{"name": "D", "kind": "builtin", "builtin": {"family": "dihedral", "param": 10}}"#, &l)
            .unwrap();
        assert_eq!(g.order(), 10);
        let g = group_from_json(r#"{"name": "Z2", "kind": "table", "table": [[0, 1], [1, 0]]}"#, &l).unwrap();
        assert_eq!(g.order(), 2);
        let err = group_from_json("{\"name\": \"x\",\n \"kind\": \"tabel\"}", &l).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(group_from_json(r#"{"name": "x", "kind": "table"}"#, &l).is_err());
        assert!(group_from_json(r#"{"name": "x", "kind": "table", "table": [[0, 1], [1, 1]]}"#, &l).is_err());
        assert_eq!(load_group("builtin:S4", &l).unwrap().order(), 24);
        assert_eq!(load_group("C2xC4", &l).unwrap().order(), 8);
    }

    #[test]
    fn construction_files() {
        let l = Limits::default();
        let d6 = FiniteGroup::by_name("D6", &l).unwrap();
        let s = d6.generators()[0];
        let text = format!(r#"{{"kind": "amalgam", "A": "D6", "B": "D6", "pairing": [[0, 0], [{s}, {s}]]}}"#);
        let k = construction_from_json(&text, &l).unwrap();
        assert_eq!(k.c_order(), 2);
        assert!(k.parse("a1 b1").unwrap().is_identity());
        let k = construction_from_json(
            r#"{"kind": "free", "A": "C3", "B": {"name": "T", "kind": "builtin", "builtin": {"family": "cyclic", "param": 3}}, "names": {"A": ["u"], "B": ["v"]}}"#,
            &l,
        )
        .unwrap();
        assert_eq!(k.parse("u v u^-1").unwrap().len(), 3);
        assert!(construction_from_json(r#"{"kind": "free", "A": "C3", "B": "C3", "pairing": [[0, 0]]}"#, &l).is_err());
        assert!(construction_from_json(r#"{"kind": "hnn", "A": "C3", "B": "C3"}"#, &l).is_err());
        assert_eq!(load_construction("builtin:d2p:5", &l).unwrap().factor(crate::freeprod::Side::A).group().order(), 10);
    }
}
