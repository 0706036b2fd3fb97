//! The universal sentences `Sub_X`, `Mal_X` and `X^n`, evaluated with
//! `Q(a, b) <=> <a, b> in X`.
//!
//! `X^n` reads: for `x != 1` and `x_1..x_n` in `C_X(x)`, every basis law holds
//! when its variables are filled from `x_1..x_n`. A law of arity `k` is thus
//! checked on the tuples of `C_X(x)^k` with at most `n` distinct entries.

use std::collections::HashMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::config::Limits;
use crate::error::Result;
use crate::group::{FiniteGroup, IDENTITY};
use crate::variety::{q_predicate, VarietyContext, VarietySpec};
use crate::words::{for_each_sparse_tuple, scan_cost};

pub const SUB_X: &str = "Sub_X";
pub const MAL_X: &str = "Mal_X";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SentenceVerdict {
    pub sentence: String,
    pub holds: bool,
    /// `(x, y, z)` for `Sub_X`, `(x, z)` for `Mal_X`, `(x, x_1, ..)` for `X^n`.
    pub counterexample: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SentenceReport {
    pub sub_x: SentenceVerdict,
    pub mal_x: SentenceVerdict,
    pub xn: Vec<SentenceVerdict>,
}

impl SentenceReport {
    /// `Sub_X` and every `X^n` evaluated.
    pub fn xt_axioms(&self) -> bool {
        self.sub_x.holds && self.xn.iter().all(|v| v.holds)
    }

    pub fn csx_axioms(&self) -> bool {
        self.xt_axioms() && self.mal_x.holds
    }

    pub fn to_json(&self, g: &FiniteGroup) -> Value {
        let one = |v: &SentenceVerdict| {
            let mut o = json!({"sentence": v.sentence, "holds": v.holds});
            if let Some(t) = &v.counterexample {
                o["counterexample"] = json!(t.iter().map(|&x| g.label(x)).collect::<Vec<_>>());
            }
            o
        };
        json!({
            "sub_x": one(&self.sub_x),
            "mal_x": one(&self.mal_x),
            "xn": self.xn.iter().map(one).collect::<Vec<_>>(),
        })
    }
}

fn xn_name(n: usize) -> String {
    format!("X^{n}")
}

pub(super) fn evaluate(ctx: &VarietyContext, n_max: usize) -> Result<SentenceReport> {
    if n_max == 0 {
        return Err(crate::Error::InvalidParam("n_max must be positive".into()));
    }
    let g = ctx.group();
    let n = g.order();
    let mut q = vec![false; n * n];
    for a in 0..n {
        for b in a..n {
            let v = ctx.q(a, b)?;
            q[a * n + b] = v;
            q[b * n + a] = v;
        }
    }
    let qa = |a: usize, b: usize| q[a * n + b];
    let mut meter = ctx.limits().meter((n as u128).pow(3));

    let mut sub = None;
    'sub: for x in 1..n {
        for y in 0..n {
            if !qa(x, y) {
                continue;
            }
            meter.charge(n as u64)?;
            let yi = g.inv(y);
            for z in 0..n {
                if qa(x, z) && !qa(x, g.mul(yi, z)) {
                    sub = Some(vec![x, y, z]);
                    break 'sub;
                }
            }
        }
    }
    let mal = (1..n).flat_map(|x| (0..n).map(move |z| (x, z))).find(|&(x, z)| qa(x, g.conj(x, z)) && !qa(x, z));

    let basis = &ctx.variety().basis;
    let mut xn: Vec<Option<Vec<usize>>> = vec![None; n_max];
    let mut memo: HashMap<Vec<usize>, Vec<Option<Vec<usize>>>> = HashMap::new();
    for x in 1..n {
        if xn.iter().all(Option::is_some) {
            break;
        }
        let cx: Vec<usize> = (0..n).filter(|&y| qa(x, y)).collect();
        if !memo.contains_key(&cx) {
            let mut best: Vec<Option<Vec<usize>>> = vec![None; n_max];
            for w in basis {
                let k = w.arity();
                let mut meter = ctx.limits().meter(scan_cost(cx.len(), k, w.len()));
                let cost = w.len().max(1) as u64;
                for_each_sparse_tuple(&cx, k, n_max, |t| {
                    meter.charge(cost)?;
                    if w.eval(g, t) != IDENTITY {
                        let mut d = t.to_vec();
                        d.sort_unstable();
                        d.dedup();
                        for slot in best.iter_mut().skip(d.len() - 1) {
                            if slot.as_ref().is_none_or(|s| t < s.as_slice()) {
                                *slot = Some(t.to_vec());
                            }
                        }
                        if best.iter().all(Option::is_some) {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                })?;
            }
            memo.insert(cx.clone(), best);
        }
        for (slot, found) in xn.iter_mut().zip(&memo[&cx]) {
            if slot.is_none() {
                if let Some(t) = found {
                    let mut v = vec![x];
                    v.extend(t);
                    *slot = Some(v);
                }
            }
        }
    }

    let verdict = |name: String, c: Option<Vec<usize>>| SentenceVerdict { sentence: name, holds: c.is_none(), counterexample: c };
    Ok(SentenceReport {
        sub_x: verdict(SUB_X.into(), sub),
        mal_x: verdict(MAL_X.into(), mal.map(|(x, z)| vec![x, z])),
        xn: xn.into_iter().enumerate().map(|(i, c)| verdict(xn_name(i + 1), c)).collect(),
    })
}

pub(super) fn replay(g: &FiniteGroup, x: &VarietySpec, limits: &Limits, sentence: &str, t: &[usize]) -> Result<bool> {
    for &e in t {
        g.check_index(e)?;
    }
    let q = |a: usize, b: usize| q_predicate(g, a, b, x, limits);
    Ok(match (sentence, t) {
        (SUB_X, &[a, y, z]) => a != IDENTITY && q(a, y)? && q(a, z)? && !q(a, g.mul(g.inv(y), z))?,
        (MAL_X, &[a, z]) => a != IDENTITY && q(a, g.conj(a, z))? && !q(a, z)?,
        (s, [a, ys @ ..]) if s.starts_with("X^") => {
            let n: usize = s[2..].parse().map_err(|_| crate::Error::Format(format!("bad sentence `{s}`")))?;
            let mut distinct = ys.to_vec();
            distinct.sort_unstable();
            distinct.dedup();
            let mut in_cx = *a != IDENTITY && distinct.len() <= n;
            for &y in ys {
                in_cx = in_cx && q(*a, y)?;
            }
            in_cx && x.basis.iter().any(|w| w.arity() == ys.len() && w.eval(g, ys) != IDENTITY)
        }
        _ => false,
    })
}
