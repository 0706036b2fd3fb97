//! Decides `G in Var(A)` for a `d`-generated finite `G` by closing the
//! relatively free group `F_d(Var(A))`, realized inside `A^(A^d)`, together
//! with the candidate map onto `G`.

use std::collections::HashMap;

use serde::Serialize;

use crate::config::Limits;
use crate::error::Result;
use crate::group::{FiniteGroup, IDENTITY};
use crate::words::FreeWord;

/// Cells of `A^(A^d)` stored across all states before giving up.
const MAX_CELLS: usize = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum OracleVerdict {
    Member { free_order: usize },
    /// `law` holds in `A` but not at the generators of `G`.
    NonMember { law: FreeWord },
    Unknown { reason: String },
}

/// Coordinates, parent state and the generator that reached it.
type State = (Vec<u16>, usize, Option<(usize, usize)>);

pub fn var_gen_oracle(a: &FiniteGroup, g: &FiniteGroup, gens: &[usize], limits: &Limits) -> Result<OracleVerdict> {
    for &x in gens {
        g.check_index(x)?;
    }
    let d = gens.len();
    let coords = match a.order().checked_pow(d as u32) {
        Some(c) if c <= limits.oracle_coordinates => c,
        _ => return Ok(OracleVerdict::Unknown { reason: format!("|A|^{d} exceeds the coordinate cap") }),
    };
    let span = g.generate(gens)?;
    if !span.is_whole() {
        return Err(crate::Error::InvalidParam("gens do not generate G".into()));
    }
    // Coordinate c is the d-tuple of its base-|A| digits; the free generator
    // x_i projects each coordinate onto its i-th entry.
    let free_gens: Vec<Vec<u16>> = (0..d)
        .map(|i| {
            (0..coords)
                .map(|c| ((c / a.order().pow((d - 1 - i) as u32)) % a.order()) as u16)
                .collect()
        })
        .collect();

    // state -> (element of G, parent state, generator applied)
    let mut index: HashMap<Vec<u16>, usize> = HashMap::new();
    let mut states: Vec<State> = Vec::new();
    let start = vec![IDENTITY as u16; coords];
    index.insert(start.clone(), 0);
    states.push((start, IDENTITY, None));
    let mut head = 0;
    while head < states.len() {
        let (vec, ge) = (states[head].0.clone(), states[head].1);
        for (i, fg) in free_gens.iter().enumerate() {
            let next: Vec<u16> = vec.iter().zip(fg).map(|(&x, &y)| a.mul(x as usize, y as usize) as u16).collect();
            let ng = g.mul(ge, gens[i]);
            match index.get(&next) {
                Some(&s) => {
                    if states[s].1 != ng {
                        let lhs = word_of(&states, head).mul(&FreeWord::var(i + 1));
                        let law = lhs.mul(&word_of(&states, s).inverse());
                        return Ok(OracleVerdict::NonMember { law });
                    }
                }
                None => {
                    if states.len() >= limits.oracle_states || (states.len() + 1) * coords > MAX_CELLS {
                        return Ok(OracleVerdict::Unknown { reason: "relatively free object exceeds the state cap".into() });
                    }
                    index.insert(next.clone(), states.len());
                    states.push((next, ng, Some((head, i))));
                }
            }
        }
        head += 1;
    }
    Ok(OracleVerdict::Member { free_order: states.len() })
}

fn word_of(states: &[State], mut s: usize) -> FreeWord {
    let mut letters = Vec::new();
    while let Some((parent, i)) = states[s].2 {
        letters.push(i + 1);
        s = parent;
    }
    letters.reverse();
    FreeWord::from_syllables(letters.into_iter().map(|v| (v, 1))).expect("variables are one-based")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::is_identity;

    fn grp(name: &str) -> FiniteGroup {
        FiniteGroup::by_name(name, &Limits::default()).unwrap()
    }

    #[test]
    fn oracle_examples() {
        let l = Limits::default();
        let (s3, c2, c4, v4) = (grp("S3"), grp("C2"), grp("C4"), grp("C2xC2"));
        assert!(matches!(var_gen_oracle(&s3, &c2, c2.generators(), &l).unwrap(), OracleVerdict::Member { .. }));
        match var_gen_oracle(&s3, &c4, c4.generators(), &l).unwrap() {
            OracleVerdict::NonMember { law } => {
                assert!(is_identity(&s3, &law, &l).unwrap().holds);
                assert!(!is_identity(&c4, &law, &l).unwrap().holds);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            var_gen_oracle(&c2, &v4, v4.generators(), &l).unwrap(),
            OracleVerdict::Member { free_order: 4 }
        );
    }

    #[test]
    fn oracle_caps_give_unknown() {
        let l = Limits { oracle_coordinates: 10, ..Limits::default() };
        let s4 = grp("S4");
        assert!(matches!(var_gen_oracle(&s4, &s4, s4.generators(), &l).unwrap(), OracleVerdict::Unknown { .. }));
    }
}
