//! Subgroup lattice enumeration.

use std::collections::HashMap;

use dashmap::DashMap;
use fixedbitset::FixedBitSet;

use super::{FiniteGroup, SubgroupSet};
use crate::config::Limits;
use crate::error::{Error, Result};

/// Every subgroup of a group, sorted by `(order, members)`.
#[derive(Debug)]
pub struct Lattice {
    subgroups: Vec<SubgroupSet>,
    normal: Vec<bool>,
    index: HashMap<FixedBitSet, usize>,
    /// `supers[i]`: subgroups strictly containing subgroup `i`.
    supers: Vec<Vec<usize>>,
    joins: DashMap<(usize, usize), usize>,
}

/// All subgroups, obtained by closing the cyclic subgroups under joins.
pub fn all_subgroups(g: &FiniteGroup, limits: &Limits) -> Result<Vec<(SubgroupSet, bool)>> {
    let l = Lattice::new(g, limits)?;
    Ok(l.subgroups.into_iter().zip(l.normal).collect())
}

impl Lattice {
    pub fn new(g: &FiniteGroup, limits: &Limits) -> Result<Lattice> {
        if g.order() > limits.cap_lattice {
            return Err(Error::OrderCap { order: g.order(), cap: limits.cap_lattice });
        }
        let mut index: HashMap<FixedBitSet, usize> = HashMap::new();
        let mut subgroups: Vec<SubgroupSet> = Vec::new();
        let mut cyclics = Vec::new();
        for x in g.elements() {
            let c = g.generate(&[x])?;
            if !index.contains_key(c.bits()) {
                index.insert(c.bits().clone(), subgroups.len());
                subgroups.push(c.clone());
                cyclics.push(c);
            }
        }
        let mut head = 0;
        while head < subgroups.len() {
            let h = subgroups[head].clone();
            head += 1;
            for c in &cyclics {
                if c.is_subset(&h) {
                    continue;
                }
                let j = g.join(&h, c);
                if !index.contains_key(j.bits()) {
                    index.insert(j.bits().clone(), subgroups.len());
                    subgroups.push(j);
                }
            }
        }
        subgroups.sort();
        let index: HashMap<FixedBitSet, usize> =
            subgroups.iter().enumerate().map(|(i, h)| (h.bits().clone(), i)).collect();
        let normal = subgroups.iter().map(|h| g.is_normal(h)).collect();
        let supers = (0..subgroups.len())
            .map(|i| {
                (i + 1..subgroups.len())
                    .filter(|&j| {
                        subgroups[j].order() > subgroups[i].order() && subgroups[i].is_subset(&subgroups[j])
                    })
                    .collect()
            })
            .collect();
        Ok(Lattice { subgroups, normal, index, supers, joins: DashMap::new() })
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[SubgroupSet] {
        &self.subgroups
    }

    pub fn get(&self, i: usize) -> &SubgroupSet {
        &self.subgroups[i]
    }

    pub fn is_normal(&self, i: usize) -> bool {
        self.normal[i]
    }

    pub fn position(&self, h: &SubgroupSet) -> Option<usize> {
        self.index.get(h.bits()).copied()
    }

    pub fn position_bits(&self, bits: &FixedBitSet) -> Option<usize> {
        self.index.get(bits).copied()
    }

    pub fn supers(&self, i: usize) -> &[usize] {
        &self.supers[i]
    }

    /// Subgroups contained in subgroup `i`, including itself.
    pub fn subs(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..=i).filter(move |&j| j == i || self.supers[j].contains(&i))
    }

    pub fn join(&self, g: &FiniteGroup, i: usize, j: usize) -> usize {
        let key = (i.min(j), i.max(j));
        if let Some(k) = self.joins.get(&key) {
            return *k;
        }
        let h = g.join(&self.subgroups[i], &self.subgroups[j]);
        let k = self.index[h.bits()];
        self.joins.insert(key, k);
        k
    }

    /// Indices `i` with `pred[i]` and no strictly larger `j` with `pred[j]`.
    pub fn maximal_among(&self, pred: &[bool]) -> Vec<usize> {
        (0..self.len()).filter(|&i| pred[i] && !self.supers[i].iter().any(|&j| pred[j])).collect()
    }
}
