//! Permutations of `{1, ..., n}` in cycle notation.
//!
//! Composition applies the right factor first: `(p * q)(i) = p(q(i))`.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 12;

/// Images of the points `0..degree`, stored zero-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm((0..degree as u8).collect())
    }

    pub fn from_images(images: Vec<u8>) -> Result<Perm> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let i = i as usize;
            if i >= images.len() || seen[i] {
                return Err(Error::Permutation(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    /// Image of a zero-based point; points beyond the degree are fixed.
    pub fn apply(&self, point: usize) -> usize {
        self.0.get(point).map_or(point, |&p| p as usize)
    }

    pub fn padded(&self, degree: usize) -> Perm {
        let mut v = self.0.clone();
        v.extend(self.0.len() as u8..degree as u8);
        Perm(v)
    }

    /// `self * other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        let n = self.degree().max(other.degree());
        Perm((0..n).map(|i| self.apply(other.apply(i)) as u8).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p as usize] = i as u8;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    /// Disjoint cycles of length at least two, each starting at its least point,
    /// ordered by that point. Points are one-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start + 1];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.apply(p);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Parses cycle notation such as `(1 2)(3 4)` or `()`.
    pub fn parse(text: &str) -> Result<Perm> {
        let bytes = text.as_bytes();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        let err = |offset: usize, message: &str| Error::Parse { offset, message: message.to_string() };
        let skip_ws = |i: &mut usize| {
            while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
                *i += 1;
            }
        };
        skip_ws(&mut i);
        if i == bytes.len() {
            return Err(err(0, "empty permutation"));
        }
        while i < bytes.len() {
            if bytes[i] != b'(' {
                return Err(err(i, "expected `(`"));
            }
            i += 1;
            let mut cycle = Vec::new();
            loop {
                skip_ws(&mut i);
                if i >= bytes.len() {
                    return Err(err(i, "unterminated cycle"));
                }
                if bytes[i] == b')' {
                    i += 1;
                    break;
                }
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err(err(i, "expected a point"));
                }
                let point: usize = text[start..i].parse().map_err(|_| err(start, "bad point"))?;
                if point == 0 || point > MAX_DEGREE {
                    return Err(err(start, &format!("points must lie in 1..={MAX_DEGREE}")));
                }
                cycle.push(point);
            }
            cycles.push(cycle);
            skip_ws(&mut i);
        }
        let degree = cycles.iter().flatten().copied().max().unwrap_or(0);
        let mut images: Vec<u8> = (0..degree as u8).collect();
        let mut touched = vec![false; degree];
        for cycle in &cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if touched[p - 1] {
                    return Err(Error::Permutation(format!("point {p} repeated in `{text}`")));
                }
                touched[p - 1] = true;
                images[p - 1] = (cycle[(k + 1) % cycle.len()] - 1) as u8;
            }
        }
        Ok(Perm(images))
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}
