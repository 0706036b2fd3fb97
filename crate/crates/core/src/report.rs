//! Check reports and their JSON rendering.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::group::{FiniteGroup, SubgroupSet};
use crate::words::FreeWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Direct,
    Centralizer,
    Condition,
    Sentence,
    Definition,
    NormalCentralizer,
}

impl Method {
    pub fn parse(s: &str) -> Option<Method> {
        Some(match s {
            "direct" => Method::Direct,
            "centralizer" => Method::Centralizer,
            "condition" => Method::Condition,
            "sentence" => Method::Sentence,
            "definition" => Method::Definition,
            "normal-centralizer" => Method::NormalCentralizer,
            _ => return None,
        })
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Centralizer => "centralizer",
            Method::Condition => "condition",
            Method::Sentence => "sentence",
            Method::Definition => "definition",
            Method::NormalCentralizer => "normal-centralizer",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A structured counterexample. Elements are indices into the checked group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Two subgroups in the class meeting nontrivially whose join is not.
    SubgroupPair { a: SubgroupSet, b: SubgroupSet, join: SubgroupSet, law: Option<(FreeWord, Vec<usize>)> },
    /// `x, y` lie in `C_X(a)` but `xy` does not.
    NotClosed { a: usize, x: usize, y: usize },
    /// `C_X(a)` is a subgroup outside the variety.
    CentralizerNotInX { a: usize, law: FreeWord, tuple: Vec<usize> },
    /// `g` outside `subgroup`, `h != 1` with `g h g^-1` back inside.
    NotMalnormal { subgroup: SubgroupSet, g: usize, h: usize },
    /// `<a, a^z>` in X but `<a, z>` not.
    Condition { a: usize, z: usize },
    Sentence { sentence: String, tuple: Vec<usize> },
    /// `[x^g, y] = 1` for every `g`.
    ZeroDivisor { x: usize, y: usize },
    /// `y != 1` centralizes the nontrivial normal subgroup.
    NormalCentralizer { normal: SubgroupSet, y: usize },
    Law { word: FreeWord, tuple: Vec<usize> },
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::SubgroupPair { .. } => "subgroup-pair",
            Witness::NotClosed { .. } => "not-closed",
            Witness::CentralizerNotInX { .. } => "centralizer-not-in-x",
            Witness::NotMalnormal { .. } => "not-malnormal",
            Witness::Condition { .. } => "condition",
            Witness::Sentence { .. } => "sentence",
            Witness::ZeroDivisor { .. } => "zero-divisor",
            Witness::NormalCentralizer { .. } => "normal-centralizer",
            Witness::Law { .. } => "law",
        }
    }

    pub fn to_json(&self, g: &FiniteGroup) -> Value {
        let el = |x: &usize| Value::String(g.label(*x).to_string());
        let tuple = |t: &[usize]| Value::Array(t.iter().map(el).collect());
        let sub = |h: &SubgroupSet| subgroup_json(g, h);
        let mut v = match self {
            Witness::SubgroupPair { a, b, join, law } => {
                let mut v = json!({"a": sub(a), "b": sub(b), "join": sub(join)});
                if let Some((w, t)) = law {
                    v["law"] = json!({"word": w.to_string(), "tuple": tuple(t)});
                }
                v
            }
            Witness::NotClosed { a, x, y } => json!({"a": el(a), "x": el(x), "y": el(y)}),
            Witness::CentralizerNotInX { a, law, tuple: t } => {
                json!({"a": el(a), "law": {"word": law.to_string(), "tuple": tuple(t)}})
            }
            Witness::NotMalnormal { subgroup, g: x, h } => json!({"subgroup": sub(subgroup), "g": el(x), "h": el(h)}),
            Witness::Condition { a, z } => json!({"a": el(a), "z": el(z)}),
            Witness::Sentence { sentence, tuple: t } => json!({"sentence": sentence, "tuple": tuple(t)}),
            Witness::ZeroDivisor { x, y } => json!({"x": el(x), "y": el(y)}),
            Witness::NormalCentralizer { normal, y } => json!({"normal": sub(normal), "y": el(y)}),
            Witness::Law { word, tuple: t } => json!({"word": word.to_string(), "tuple": tuple(t)}),
        };
        v["kind"] = Value::String(self.kind().to_string());
        v
    }
}

pub fn subgroup_json(g: &FiniteGroup, h: &SubgroupSet) -> Value {
    json!({
        "order": h.order(),
        "generators": h.generators().iter().map(|&x| g.label(x)).collect::<Vec<_>>(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub check: String,
    pub group: String,
    pub variety: String,
    pub method: Method,
    pub verdict: bool,
    pub witness: Option<Witness>,
    pub stats: BTreeMap<String, u64>,
}

impl PropertyReport {
    pub fn new(check: &str, group: &FiniteGroup, variety: &str, method: Method) -> PropertyReport {
        PropertyReport {
            check: check.to_string(),
            group: group.name().to_string(),
            variety: variety.to_string(),
            method,
            verdict: true,
            witness: None,
            stats: BTreeMap::new(),
        }
    }

    pub fn fail(mut self, witness: Witness) -> PropertyReport {
        self.verdict = false;
        self.witness = Some(witness);
        self
    }

    pub fn stat(mut self, key: &str, value: u64) -> PropertyReport {
        self.stats.insert(key.to_string(), value);
        self
    }

    /// `{"check", "group", "variety", "method", "verdict", "witness"?, "stats"}`.
    pub fn to_json(&self, g: &FiniteGroup) -> Value {
        let mut v = json!({
            "check": self.check,
            "group": self.group,
            "variety": self.variety,
            "method": self.method.as_str(),
            "verdict": self.verdict,
            "stats": self.stats,
        });
        if let Some(w) = &self.witness {
            v["witness"] = w.to_json(g);
        }
        v
    }

    /// One line: `check group variety method: true|false`.
    pub fn to_text(&self, g: &FiniteGroup) -> String {
        let mut line = format!("{} {} {} {}: {}", self.check, self.group, self.variety, self.method, self.verdict);
        if let Some(w) = &self.witness {
            line.push_str(&format!(" witness={}", w.to_json(g)));
        }
        line
    }
}
