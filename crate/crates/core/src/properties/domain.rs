//! Zero divisors: `x != 1` admitting `y != 1` with `[x^g, y] = 1` for all `g`.

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Lattice, IDENTITY};
use crate::report::{Method, PropertyReport, Witness};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainReport {
    pub report: PropertyReport,
    /// Every zero divisor; filled by the definition method only.
    pub zero_divisors: Vec<usize>,
}

pub fn zero_divisor_scan(g: &FiniteGroup, method: Method, limits: &Limits) -> Result<DomainReport> {
    match method {
        Method::Definition => Ok(by_definition(g)),
        Method::NormalCentralizer => by_normal_centralizers(g, limits),
        other => Err(Error::InvalidParam(format!("zero_divisor_scan has no `{other}` method"))),
    }
}

fn by_definition(g: &FiniteGroup) -> DomainReport {
    let mut zero_divisors = Vec::new();
    let mut witness = None;
    for x in g.elements().skip(1) {
        let class = g.conjugacy_class(x);
        let y = g.elements().skip(1).find(|&y| class.iter().all(|&c| g.mul(c, y) == g.mul(y, c)));
        if let Some(y) = y {
            zero_divisors.push(x);
            witness.get_or_insert(Witness::ZeroDivisor { x, y });
        }
    }
    let mut report = PropertyReport::new("domain", g, "-", Method::Definition)
        .stat("zero_divisors", zero_divisors.len() as u64);
    if let Some(w) = witness {
        report = report.fail(w);
    }
    DomainReport { report, zero_divisors }
}

fn by_normal_centralizers(g: &FiniteGroup, limits: &Limits) -> Result<DomainReport> {
    let lat = Lattice::new(g, limits)?;
    let mut report = PropertyReport::new("domain", g, "-", Method::NormalCentralizer);
    let mut normals = 0;
    for i in 1..lat.len() {
        if !lat.is_normal(i) {
            continue;
        }
        normals += 1;
        let k = lat.get(i);
        let c = g.centralizer_of(k);
        if let Some(&y) = c.members().iter().find(|&&y| y != IDENTITY) {
            report = report.fail(Witness::NormalCentralizer { normal: k.clone(), y });
            break;
        }
    }
    Ok(DomainReport { report: report.stat("normal_subgroups", normals), zero_divisors: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scan(name: &str, m: Method) -> DomainReport {
        let l = Limits::default();
        zero_divisor_scan(&FiniteGroup::by_name(name, &l).unwrap(), m, &l).unwrap()
    }

    #[test]
    fn examples() {
        let c6 = scan("C6", Method::Definition);
        assert!(!c6.report.verdict);
        assert_eq!(c6.zero_divisors, (1..6).collect::<Vec<_>>());
        let s3 = scan("S3", Method::Definition);
        assert!(!s3.report.verdict);
        let g = FiniteGroup::by_name("S3", &Limits::default()).unwrap();
        assert!(s3.zero_divisors.contains(&g.element("(1 2 3)").unwrap()));
        assert!(scan("A5", Method::Definition).report.verdict);
        for name in ["C6", "S3", "A5", "S4", "Q8"] {
            assert_eq!(
                scan(name, Method::Definition).report.verdict,
                scan(name, Method::NormalCentralizer).report.verdict,
                "{name}"
            );
        }
    }
}
