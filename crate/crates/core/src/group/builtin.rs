//! Built-in group families.

use std::fmt;

use super::{FiniteGroup, Perm};
use crate::config::Limits;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Cyclic(usize),
    /// Dihedral group of the given order `2n`.
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Quaternion8,
    Frobenius21,
    /// Elementary abelian group of order `p^k`.
    ElementaryAbelian { p: usize, k: usize },
}

impl Builtin {
    /// Family names as used in group files.
    pub fn from_family(family: &str, param: Option<usize>) -> Result<Builtin> {
        let need = || param.ok_or_else(|| Error::InvalidParam(format!("family `{family}` needs a param")));
        let b = match family.to_ascii_lowercase().as_str() {
            "cyclic" => Builtin::Cyclic(need()?),
            "dihedral" => Builtin::Dihedral(need()?),
            "symmetric" => Builtin::Symmetric(need()?),
            "alternating" => Builtin::Alternating(need()?),
            "quaternion8" | "quaternion" => Builtin::Quaternion8,
            "frobenius21" | "frobenius" => Builtin::Frobenius21,
            "elementary-abelian" | "elementary_abelian" => {
                let order = need()?;
                let (p, k) = prime_power(order)
                    .ok_or_else(|| Error::InvalidParam(format!("{order} is not a prime power")))?;
                Builtin::ElementaryAbelian { p, k }
            }
            _ => return Err(Error::UnknownBuiltin(family.to_string())),
        };
        b.validate()?;
        Ok(b)
    }

    /// Short names: `C6`, `D8`, `S4`, `A5`, `Q8`, `F21`, `E8`.
    pub fn parse(name: &str) -> Result<Builtin> {
        let unknown = || Error::UnknownBuiltin(name.to_string());
        let lower = name.to_ascii_lowercase();
        match lower.as_str() {
            "q8" | "quaternion8" => return Ok(Builtin::Quaternion8),
            "f21" | "frobenius21" => return Ok(Builtin::Frobenius21),
            _ => {}
        }
        let (head, digits) = name.split_at(name.find(|c: char| c.is_ascii_digit()).ok_or_else(unknown)?);
        let n: usize = digits.parse().map_err(|_| unknown())?;
        let b = match head {
            "C" => Builtin::Cyclic(n),
            "D" => Builtin::Dihedral(n),
            "S" => Builtin::Symmetric(n),
            "A" => Builtin::Alternating(n),
            "E" => {
                let (p, k) = prime_power(n).ok_or_else(unknown)?;
                Builtin::ElementaryAbelian { p, k }
            }
            _ => return Err(unknown()),
        };
        b.validate()?;
        Ok(b)
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParam(m));
        match *self {
            Builtin::Cyclic(0) => bad("cyclic order must be positive".into()),
            Builtin::Dihedral(n) if n == 0 || n % 2 == 1 => bad(format!("dihedral order {n} must be even")),
            Builtin::Symmetric(n) | Builtin::Alternating(n) if n == 0 || n > 5 => {
                bad(format!("degree {n} must lie in 1..=5"))
            }
            Builtin::ElementaryAbelian { p, k } if k == 0 || !is_prime(p) => {
                bad(format!("{p}^{k} is not a nontrivial prime power"))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Builtin::Cyclic(n) => write!(f, "C{n}"),
            Builtin::Dihedral(n) => write!(f, "D{n}"),
            Builtin::Symmetric(n) => write!(f, "S{n}"),
            Builtin::Alternating(n) => write!(f, "A{n}"),
            Builtin::Quaternion8 => f.write_str("Q8"),
            Builtin::Frobenius21 => f.write_str("frobenius21"),
            Builtin::ElementaryAbelian { p, k } => write!(f, "E{}", p.pow(k as u32)),
        }
    }
}

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn prime_power(n: usize) -> Option<(usize, usize)> {
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let (mut m, mut k) = (n, 0);
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

pub(super) fn by_name(name: &str, limits: &Limits) -> Result<FiniteGroup> {
    let name = name.trim();
    let parts: Vec<&str> = name.split(['x', '×']).collect();
    // `frobenius21` contains no separator, so a single part is a plain builtin.
    if parts.len() > 1 && parts.iter().all(|p| Builtin::parse(p).is_ok()) {
        let mut g = build(Builtin::parse(parts[0])?, limits)?;
        for p in &parts[1..] {
            g = FiniteGroup::direct_product(&g, &build(Builtin::parse(p)?, limits)?, limits)?;
        }
        return Ok(g);
    }
    build(Builtin::parse(name)?, limits)
}

pub(super) fn build(b: Builtin, limits: &Limits) -> Result<FiniteGroup> {
    b.validate()?;
    let name = b.to_string();
    let perms = |gens: &[&str]| -> Result<FiniteGroup> {
        let gens: Vec<Perm> = gens.iter().map(|g| Perm::parse(g)).collect::<Result<_>>()?;
        FiniteGroup::from_permutations(name.clone(), &gens, limits)
    };
    match b {
        Builtin::Cyclic(n) => cyclic(n, limits),
        Builtin::Dihedral(2) => cyclic(2, limits).map(|g| g.with_name(name)),
        Builtin::Dihedral(4) => {
            let c2 = cyclic(2, limits)?;
            Ok(FiniteGroup::direct_product(&c2, &c2, limits)?.with_name(name))
        }
        Builtin::Dihedral(order) => {
            let n = order / 2;
            // s: i -> -i and r: i -> i + 1 on Z/n, written one-based.
            let s: Vec<u8> = (0..n).map(|i| ((n - i) % n) as u8).collect();
            let r: Vec<u8> = (0..n).map(|i| ((i + 1) % n) as u8).collect();
            let gens = [Perm::from_images(s)?, Perm::from_images(r)?];
            FiniteGroup::from_permutations(name, &gens, limits)
        }
        Builtin::Symmetric(1) | Builtin::Alternating(1..=2) => perms(&[]),
        Builtin::Symmetric(2) => perms(&["(1 2)"]),
        Builtin::Symmetric(n) => {
            let long = format!("({})", (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(" "));
            perms(&["(1 2)", &long])
        }
        Builtin::Alternating(n) => {
            let gens: Vec<String> = (3..=n).map(|k| format!("(1 2 {k})")).collect();
            perms(&gens.iter().map(String::as_str).collect::<Vec<_>>())
        }
        Builtin::Quaternion8 => quaternion8(limits),
        Builtin::Frobenius21 => {
            let r = Perm::from_images((0..7).map(|i| ((i + 1) % 7) as u8).collect())?;
            let t = Perm::from_images((0..7).map(|i| ((2 * i) % 7) as u8).collect())?;
            FiniteGroup::from_permutations(name, &[r, t], limits)
        }
        Builtin::ElementaryAbelian { p, k } => elementary_abelian(p, k, limits),
    }
}

fn cyclic(n: usize, limits: &Limits) -> Result<FiniteGroup> {
    if n > limits.cap_order {
        return Err(Error::OrderCap { order: n, cap: limits.cap_order });
    }
    let table = (0..n).flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32)).collect();
    let labels = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "a".to_string(),
            _ => format!("a^{i}"),
        })
        .collect();
    let gens = if n > 1 { vec![1] } else { vec![] };
    FiniteGroup::from_flat(format!("C{n}"), n, table, labels, Some(gens), limits)
}

fn quaternion8(limits: &Limits) -> Result<FiniteGroup> {
    // Element 2u + s is (-1)^s times the unit u in {1, i, j, k}.
    const UNIT: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let mut table = Vec::with_capacity(64);
    for a in 0..8 {
        for b in 0..8 {
            let (u, neg) = UNIT[a / 2][b / 2];
            let sign = (a % 2 == 1) ^ (b % 2 == 1) ^ neg;
            table.push((2 * u + sign as usize) as u32);
        }
    }
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].map(String::from).to_vec();
    FiniteGroup::from_flat("Q8".into(), 8, table, labels, Some(vec![2, 4]), limits)
}

fn elementary_abelian(p: usize, k: usize, limits: &Limits) -> Result<FiniteGroup> {
    let n = p.checked_pow(k as u32).filter(|&n| n <= limits.cap_order).ok_or(Error::OrderCap {
        order: p.saturating_pow(k as u32),
        cap: limits.cap_order,
    })?;
    let digits = |mut x: usize| {
        let mut d = vec![0; k];
        for slot in d.iter_mut().rev() {
            *slot = x % p;
            x /= p;
        }
        d
    };
    let undigits = |d: &[usize]| d.iter().fold(0, |acc, &x| acc * p + x);
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        let da = digits(a);
        for b in 0..n {
            let sum: Vec<usize> = da.iter().zip(digits(b)).map(|(x, y)| (x + y) % p).collect();
            table.push(undigits(&sum) as u32);
        }
    }
    let labels = (0..n)
        .map(|a| format!("({})", digits(a).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    let gens = (0..k).map(|i| p.pow((k - 1 - i) as u32)).collect();
    FiniteGroup::from_flat(format!("E{n}"), n, table, labels, Some(gens), limits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(name: &str) -> FiniteGroup {
        by_name(name, &Limits::default()).unwrap()
    }

    #[test]
    fn orders() {
        for (name, order) in [
            ("C1", 1),
            ("C12", 12),
            ("D6", 6),
            ("D8", 8),
            ("D10", 10),
            ("D12", 12),
            ("S4", 24),
            ("S5", 120),
            ("A4", 12),
            ("A5", 60),
            ("Q8", 8),
            ("frobenius21", 21),
            ("E8", 8),
            ("E9", 9),
            ("C2xC2", 4),
            ("S3xC2", 12),
        ] {
            assert_eq!(g(name).order(), order, "{name}");
        }
    }

    #[test]
    fn frobenius21_is_nonabelian_with_expected_element_orders() {
        let f = g("frobenius21");
        assert!(!f.is_abelian());
        let count = |k| f.elements().filter(|&x| f.element_order(x) == k).count();
        assert_eq!((count(1), count(3), count(7)), (1, 14, 6));
    }

    #[test]
    fn quaternion_relations() {
        let q = g("Q8");
        let e = |l: &str| q.element(l).unwrap();
        assert_eq!(q.mul(e("i"), e("j")), e("k"));
        assert_eq!(q.mul(e("j"), e("i")), e("-k"));
        assert_eq!(q.mul(e("i"), e("i")), e("-1"));
        assert_eq!(q.center().order(), 2);
    }

    #[test]
    fn dihedral_relation() {
        let d = g("D10");
        let (s, r) = (d.generators()[0], d.generators()[1]);
        assert_eq!(d.element_order(s), 2);
        assert_eq!(d.element_order(r), 5);
        assert_eq!(d.conj(r, s), d.inv(r));
    }

    #[test]
    fn family_form_and_errors() {
        assert_eq!(Builtin::from_family("symmetric", Some(4)).unwrap(), Builtin::Symmetric(4));
        assert_eq!(Builtin::from_family("elementary-abelian", Some(8)).unwrap(), Builtin::ElementaryAbelian { p: 2, k: 3 });
        assert!(Builtin::from_family("symmetric", Some(6)).is_err());
        assert!(Builtin::from_family("dihedral", Some(7)).is_err());
        assert!(Builtin::from_family("mystery", Some(1)).is_err());
        assert!(Builtin::parse("E12").is_err());
        assert!(Builtin::parse("Z5").is_err());
    }
}
