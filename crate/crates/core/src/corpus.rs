//! The built-in corpus of groups and varieties.

use crate::config::Limits;
use crate::error::Result;
use crate::group::FiniteGroup;
use crate::variety::VarietySpec;
use crate::words::FreeWord;

pub const GROUPS: &[&str] = &[
    "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12", "C2xC2", "C2xC4", "S3", "S4", "A4", "A5",
    "D8", "D10", "D12", "Q8", "frobenius21", "S3xC2",
];

/// Direct products with two nontrivial factors.
pub const PRODUCTS: &[&str] = &["C2xC2", "C2xC4", "S3xC2"];

pub const VARIETIES: &[&str] = &["abelian", "nilpotent-2", "nilpotent-3", "metabelian", "burnside-2"];

pub fn groups(limits: &Limits) -> Result<Vec<FiniteGroup>> {
    GROUPS.iter().map(|n| FiniteGroup::by_name(n, limits)).collect()
}

pub fn varieties() -> Result<Vec<VarietySpec>> {
    VARIETIES.iter().map(|n| VarietySpec::builtin(n)).collect()
}

/// Generators of `Var(A)` with a known finite basis: every abelian corpus
/// group `A` generates the abelian groups of exponent dividing `exp(A)`,
/// based by `[x1,x2]` and `x1^exp(A)`. `Var(C2)` is also `burnside-2`.
pub fn known_bases(limits: &Limits) -> Result<Vec<(FiniteGroup, VarietySpec)>> {
    let mut out = Vec::new();
    for g in groups(limits)? {
        if !g.is_abelian() {
            continue;
        }
        let e = g.exponent() as i64;
        let basis = vec![FreeWord::parse("[x1,x2]")?, FreeWord::var(1).pow(e)];
        let name = format!("var({})", g.name());
        out.push((g, VarietySpec::new(name, basis, true)));
    }
    let c2 = FiniteGroup::by_name("C2", limits)?;
    out.push((c2, VarietySpec::builtin("burnside-2")?));
    Ok(out)
}
