//! The whisker state-sum.
//!
//! Each crossing resolves into two weighted local pictures made of marked
//! strands: an oriented smoothing and a disoriented one whose two caps
//! carry whiskers recording which component they sit on. Strands compose
//! whenever they share an arc end; a strand closing on itself becomes a
//! loop variable. Contracting nodes one at a time and merging states that
//! agree on their open strands keeps the live state count far below the
//! naive 2^c.
//!
//! Crossing rules, with `e(x)` the unit vector of arc `x`'s label slot
//! and `w[v](a,b)` a marked strand from `a` to `b`:
//!
//! ```text
//! Xp[a,b,c,d] -> A   w[0](a,b) w[e(c)-e(d)](d,c)
//!              + A^-1 w[e(a)](d,a) w[e(b)](c,b)
//! Xm[a,b,c,d] -> A^-1 w[0](b,c) w[e(d)-e(a)](a,d)
//!              + A   w[e(b)](a,b) w[e(c)](d,c)
//! ```
//!
//! A closed loop with whisker vector `v` contributes `delta * X[v]`
//! (`delta = -A^2 - A^-2`, `X[0] = 1`); under [`LoopWeight::XOnly`] a
//! nontrivial loop contributes the bare `X[v]` instead.

use crate::laurent::Laurent;
use crate::pd::{Arc, Node, PdCode, PdError};
use crate::poly::{ArrowPoly, HArrowPoly, IndexVector, SlotVec};
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Pd(#[from] PdError),
    #[error("live states exceeded the cap of {limit} while contracting node {node}")]
    StateCap { limit: usize, node: usize },
}

/// Scoring of a closed state loop with whisker vector `v`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LoopWeight {
    /// `delta * X[v]` for every loop: the bracket state sum.
    DeltaX,
    /// bare `X[v]` when `v != 0`, `delta` for trivial loops.
    XOnly,
}

#[derive(Clone, Copy, Debug)]
pub struct EngineOptions {
    /// Abort when one contraction step holds more live states than this.
    pub max_states: usize,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            max_states: 1 << 20,
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EngineStats {
    pub nodes: usize,
    pub peak_states: usize,
    pub merges: u64,
}

/// Open marked strand between arc ends `a < b`; `v` is read traveling
/// from `a` to `b`, so flipping the strand negates it.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PathTerm {
    pub a: Arc,
    pub b: Arc,
    pub v: SlotVec,
}

/// Live states: each key pairs up the open arc ends seen so far, each
/// value folds the smoothing weights and loop factors of every history
/// that reached that pairing.
pub(crate) type StateMap = HashMap<Vec<PathTerm>, HArrowPoly>;

#[derive(Clone, Debug)]
pub(crate) struct Dir {
    pub from: Arc,
    pub to: Arc,
    pub v: SlotVec,
}

fn expand(node: &Node, label_of: &dyn Fn(Arc) -> u32) -> Vec<(Laurent, Vec<Dir>)> {
    let unit = |x: Arc| SlotVec::unit(label_of(x));
    let dir = |from: Arc, to: Arc, v: SlotVec| Dir { from, to, v };
    match *node {
        Node::P(a, b) => vec![(Laurent::one(), vec![dir(a, b, SlotVec::default())])],
        Node::Xp(a, b, c, d) => vec![
            (
                Laurent::monomial(1, 1),
                vec![
                    dir(a, b, SlotVec::default()),
                    dir(d, c, unit(c).sub(&unit(d))),
                ],
            ),
            (
                Laurent::monomial(-1, 1),
                vec![dir(d, a, unit(a)), dir(c, b, unit(b))],
            ),
        ],
        Node::Xm(a, b, c, d) => vec![
            (
                Laurent::monomial(-1, 1),
                vec![
                    dir(b, c, SlotVec::default()),
                    dir(a, d, unit(d).sub(&unit(a))),
                ],
            ),
            (
                Laurent::monomial(1, 1),
                vec![dir(a, b, unit(b)), dir(d, c, unit(c))],
            ),
        ],
    }
}

fn close_loop(value: &mut HArrowPoly, v: SlotVec, mode: LoopWeight) {
    debug_assert!(
        v.entry_sum() % 2 == 0,
        "loop vector {v:?} has odd entry sum"
    );
    match IndexVector::from_slots(v) {
        None => value.mul_laurent(&Laurent::delta()),
        Some(iv) => {
            value.mul_factor(&iv);
            if mode == LoopWeight::DeltaX {
                value.mul_laurent(&Laurent::delta());
            }
        }
    }
}

/// Splice one directed strand into the open pairing, composing with
/// existing strands at shared ends and scoring any loop it closes.
pub(crate) fn insert_path(
    paths: &mut Vec<PathTerm>,
    value: &mut HArrowPoly,
    d: Dir,
    mode: LoopWeight,
) {
    let Dir {
        mut from,
        mut to,
        mut v,
    } = d;
    loop {
        if from == to {
            close_loop(value, v, mode);
            return;
        }
        let hit = paths
            .iter()
            .position(|p| p.a == to || p.b == to || p.a == from || p.b == from);
        match hit {
            Some(i) => {
                let q = paths.remove(i);
                if q.a == to {
                    to = q.b;
                    v = v.add(&q.v);
                } else if q.b == to {
                    to = q.a;
                    v = v.sub(&q.v);
                } else if q.b == from {
                    from = q.a;
                    v = v.add(&q.v);
                } else {
                    from = q.b;
                    v = v.sub(&q.v);
                }
            }
            None => {
                paths.push(if from < to {
                    PathTerm { a: from, b: to, v }
                } else {
                    PathTerm {
                        a: to,
                        b: from,
                        v: v.neg(),
                    }
                });
                return;
            }
        }
    }
}

/// Node order that keeps the open boundary small: greedily take the node
/// sharing the most arcs with what is already contracted.
pub fn contraction_order(pd: &PdCode) -> Vec<usize> {
    order_nodes(pd.nodes())
}

fn order_nodes(nodes: &[Node]) -> Vec<usize> {
    let n = nodes.len();
    let mut used = vec![false; n];
    let mut seen: std::collections::HashSet<Arc> = Default::default();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best = usize::MAX;
        let mut best_shared = -1i64;
        for (i, node) in nodes.iter().enumerate() {
            if used[i] {
                continue;
            }
            let shared = node.arcs().iter().filter(|a| seen.contains(a)).count() as i64;
            if shared > best_shared {
                best_shared = shared;
                best = i;
            }
        }
        used[best] = true;
        order.push(best);
        seen.extend(nodes[best].arcs());
    }
    order
}

/// Contract a node list, open boundary allowed. Returns every surviving
/// pairing of open ends with its accumulated value.
pub(crate) fn contract(
    nodes: &[Node],
    label_of: &dyn Fn(Arc) -> u32,
    mode: LoopWeight,
    opts: &EngineOptions,
) -> Result<(StateMap, EngineStats), EngineError> {
    let mut states: StateMap = HashMap::new();
    states.insert(Vec::new(), HArrowPoly::one());
    let mut stats = EngineStats {
        nodes: nodes.len(),
        ..Default::default()
    };
    for &ni in &order_nodes(nodes) {
        let terms = expand(&nodes[ni], label_of);
        let mut next: StateMap = HashMap::with_capacity(states.len() * terms.len());
        for (paths, value) in &states {
            for (weight, dirs) in &terms {
                let mut paths = paths.clone();
                let mut value = value.clone();
                value.mul_laurent(weight);
                for d in dirs {
                    insert_path(&mut paths, &mut value, d.clone(), mode);
                }
                paths.sort_unstable();
                match next.entry(paths) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        e.get_mut().add_assign_ref(&value);
                        stats.merges += 1;
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(value);
                    }
                }
            }
        }
        if next.len() > opts.max_states {
            return Err(EngineError::StateCap {
                limit: opts.max_states,
                node: ni,
            });
        }
        stats.peak_states = stats.peak_states.max(next.len());
        states = next;
    }
    Ok((states, stats))
}

/// State sum of a closed diagram with its component labels; every state
/// loop is scored by `mode`. With all labels 1 and [`LoopWeight::DeltaX`]
/// this is `delta` times the arrow polynomial.
pub fn compute_harrow(pd: &PdCode, mode: LoopWeight) -> Result<HArrowPoly, EngineError> {
    compute_harrow_with(pd, mode, &EngineOptions::default()).map(|(p, _)| p)
}

pub fn compute_harrow_with(
    pd: &PdCode,
    mode: LoopWeight,
    opts: &EngineOptions,
) -> Result<(HArrowPoly, EngineStats), EngineError> {
    pd.validate()?;
    let labels = pd.effective_labels();
    let slot_of: BTreeMap<Arc, u32> = pd
        .component_of()
        .into_iter()
        .map(|(a, c)| (a, labels[c]))
        .collect();
    let (states, stats) = contract(pd.nodes(), &|a| slot_of[&a], mode, opts)?;
    let mut out = HArrowPoly::zero();
    for (paths, value) in &states {
        debug_assert!(paths.is_empty(), "open ends left after closed contraction");
        out.add_assign_ref(value);
    }
    Ok((out, stats))
}

/// Arrow polynomial, normalized so the unknot gives 1. Labels are
/// ignored: all loop variables live in one slot and print as `K[n]`.
pub fn compute_arrow(pd: &PdCode) -> Result<ArrowPoly, EngineError> {
    compute_arrow_with(pd, &EngineOptions::default()).map(|(p, _)| p)
}

pub fn compute_arrow_with(
    pd: &PdCode,
    opts: &EngineOptions,
) -> Result<(ArrowPoly, EngineStats), EngineError> {
    pd.validate()?;
    // cut the strand at the largest arc id: the first of its two slot
    // occurrences becomes a fresh id, leaving one open strand whose final
    // whisker vector is scored without a delta
    let m = pd.max_arc();
    let cut = m + 1;
    let mut nodes = pd.nodes().to_vec();
    'hunt: for node in nodes.iter_mut() {
        for s in node.slots_mut() {
            if *s == m {
                *s = cut;
                break 'hunt;
            }
        }
    }
    let (states, stats) = contract(&nodes, &|_| 1, LoopWeight::DeltaX, opts)?;
    let mut out = HArrowPoly::zero();
    for (paths, value) in &states {
        debug_assert_eq!(paths.len(), 1, "cut diagram must leave one open strand");
        let p = &paths[0];
        debug_assert_eq!((p.a, p.b), (m, cut));
        match IndexVector::from_slots(p.v.clone()) {
            None => out.add_assign_ref(value),
            Some(iv) => {
                let mut value = value.clone();
                value.mul_factor(&iv);
                out.add_assign_ref(&value);
            }
        }
    }
    let arrow = out
        .to_arrow()
        .expect("scalar state sum produced a multi-slot variable");
    Ok((arrow, stats))
}

/// Arrow polynomial times `(-A^3)^-w`, invariant under all framed moves
/// plus the first Reidemeister move.
pub fn compute_arrow_normalized(pd: &PdCode) -> Result<ArrowPoly, EngineError> {
    Ok(compute_arrow(pd)?.writhe_normalize(pd.writhe()))
}
