//! Cabling: replace every strand of a diagram by `n` parallel copies.
//!
//! The cable of a crossing is an n-by-n grid of small crossings of the
//! same sign; the cable of a kink picks up all the copy-on-copy curls,
//! so diagrams are first brought to zero framing (every component gets
//! compensating curls until its self-writhe vanishes). The normalized
//! arrow polynomial of the zero-framed n-cable is then an invariant of
//! the underlying link.
//!
//! [`cable`] builds the cabled diagram explicitly. [`cabled_arrow`]
//! avoids the blowup: each crossing's grid is contracted once into a
//! reusable block (a sum of boundary pairings with values), and the
//! coarse diagram is contracted block by block.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc as Shared, Mutex, OnceLock};

use crate::engine::{
    self, contraction_order, insert_path, Dir, EngineError, EngineOptions, EngineStats,
    LoopWeight, PathTerm, StateMap,
};
use crate::pd::{Arc, Node, PdCode, PdError};
use crate::poly::{ArrowPoly, HArrowPoly, SlotVec};

/// Insert compensating curls until every component has self-writhe zero.
/// Curls go on the smallest arc of each component that needs them.
pub fn zero_framed(pd: &PdCode) -> Result<PdCode, PdError> {
    pd.validate()?;
    let mut out = pd.clone();
    for (ci, comp) in pd.components().iter().enumerate() {
        let k = pd.self_writhe(ci);
        for _ in 0..k.abs() {
            out = out.insert_kink(comp[0], -k.signum())?;
        }
    }
    Ok(out)
}

/// Emit the n-by-n grid replacing one crossing. Under copies run
/// bottom to top, copy `i` in column `i` from the strand's left; over
/// copies run across, stacked so copy 1 leaves nearest the under-out
/// side. Boundary ids come in as slot-ordered slices indexed by copy;
/// internal segments draw fresh ids from `fresh` (verticals first).
fn grid_nodes(positive: bool, n: usize, ends: [&[Arc]; 4], fresh: &mut Arc, out: &mut Vec<Node>) {
    let [a_ids, b_ids, c_ids, d_ids] = ends;
    // vseg[i-1][t]: segment t of under copy i, t = 0 entering, t = n leaving
    let mut vseg = vec![vec![0; n + 1]; n];
    let mut hseg = vec![vec![0; n + 1]; n];
    for (i, col) in vseg.iter_mut().enumerate() {
        col[0] = a_ids[i];
        col[n] = c_ids[i];
        for t in col.iter_mut().take(n).skip(1) {
            *fresh += 1;
            *t = *fresh;
        }
    }
    let (h_in, h_out) = if positive {
        (d_ids, b_ids)
    } else {
        (b_ids, d_ids)
    };
    for (j, row) in hseg.iter_mut().enumerate() {
        row[0] = h_in[j];
        row[n] = h_out[j];
        for t in row.iter_mut().take(n).skip(1) {
            *fresh += 1;
            *t = *fresh;
        }
    }
    for p in 1..=n {
        for q in 1..=n {
            out.push(if positive {
                // over strand runs left to right in row n-q+1
                let j = n - q + 1;
                Node::Xp(
                    vseg[p - 1][q - 1],
                    hseg[j - 1][p],
                    vseg[p - 1][q],
                    hseg[j - 1][p - 1],
                )
            } else {
                // over strand runs right to left in row q
                let j = q;
                Node::Xm(
                    vseg[p - 1][q - 1],
                    hseg[j - 1][n - p],
                    vseg[p - 1][q],
                    hseg[j - 1][n - p + 1],
                )
            });
        }
    }
}

/// The zero-framed n-cable as an explicit diagram. Arc ids: the framed
/// diagram's arcs in increasing order get blocks `rank*n+1 ..= rank*n+n`
/// (copy i keeps offset i); grid internals follow. Labels repeat per
/// copy, so each cabled component inherits its source component's slot.
pub fn cable(pd: &PdCode, n: u32) -> Result<PdCode, PdError> {
    assert!(n >= 1, "cable width must be at least 1");
    let framed = zero_framed(pd)?;
    let arcs: Vec<Arc> = framed.component_of().into_keys().collect();
    let rank: BTreeMap<Arc, u32> = arcs
        .iter()
        .enumerate()
        .map(|(r, &x)| (x, r as u32))
        .collect();
    let ids = |x: Arc| -> Vec<Arc> { (1..=n).map(|i| rank[&x] * n + i).collect() };
    let mut fresh = arcs.len() as u32 * n;
    let mut nodes = Vec::new();
    for node in framed.nodes() {
        match *node {
            Node::P(a, b) => {
                let (a, b) = (ids(a), ids(b));
                nodes.extend((0..n as usize).map(|i| Node::P(a[i], b[i])));
            }
            Node::Xp(a, b, c, d) | Node::Xm(a, b, c, d) => grid_nodes(
                node.sign() > 0,
                n as usize,
                [&ids(a), &ids(b), &ids(c), &ids(d)],
                &mut fresh,
                &mut nodes,
            ),
        }
    }
    let out = PdCode::new(nodes);
    match framed.labels() {
        Some(l) => out.with_labels(
            l.iter()
                .flat_map(|&s| std::iter::repeat_n(s, n as usize))
                .collect(),
        ),
        None => {
            out.validate()?;
            Ok(out)
        }
    }
}

/// One crossing's n-cable grid, fully contracted: every surviving
/// pairing of the 4n boundary ends with its accumulated value. Local
/// end ids by slot copy: `a_i = i`, `b_i = n+i`, `c_i = 2n+i`,
/// `d_i = 3n+i`. Marking vectors use two relative slots, 1 for the
/// under strand's copies and 2 for the over strand's.
pub struct CabledBlock {
    pub positive: bool,
    pub n: u32,
    states: Vec<(Vec<PathTerm>, HArrowPoly)>,
}

impl CabledBlock {
    /// Cached lookup; blocks are built once and shared.
    pub fn get(positive: bool, n: u32) -> Result<Shared<CabledBlock>, EngineError> {
        type Cache = Mutex<HashMap<(bool, u32), Shared<CabledBlock>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(b) = cache.lock().unwrap().get(&(positive, n)) {
            return Ok(b.clone());
        }
        let built = Shared::new(CabledBlock::build(positive, n)?);
        Ok(cache
            .lock()
            .unwrap()
            .entry((positive, n))
            .or_insert(built)
            .clone())
    }

    /// Boundary pairings with values, sorted by pairing.
    pub fn states(&self) -> &[(Vec<PathTerm>, HArrowPoly)] {
        &self.states
    }

    fn build(positive: bool, n: u32) -> Result<CabledBlock, EngineError> {
        assert!(n >= 1);
        let seq = |base: u32| -> Vec<Arc> { (1..=n).map(|i| base + i).collect() };
        let (a, b, c, d) = (seq(0), seq(n), seq(2 * n), seq(3 * n));
        let mut fresh = 4 * n;
        let mut nodes = Vec::new();
        grid_nodes(positive, n as usize, [&a, &b, &c, &d], &mut fresh, &mut nodes);
        let under_hi = 4 * n + n * (n - 1); // verticals were allocated first
        let label_of = move |x: Arc| -> u32 {
            let under = x <= n || (2 * n < x && x <= 3 * n) || (4 * n < x && x <= under_hi);
            if under {
                1
            } else {
                2
            }
        };
        let (map, _) = engine::contract(
            &nodes,
            &label_of,
            LoopWeight::DeltaX,
            &EngineOptions::default(),
        )?;
        let mut states: Vec<_> = map.into_iter().collect();
        states.sort_by(|x, y| x.0.cmp(&y.0));
        Ok(CabledBlock {
            positive,
            n,
            states,
        })
    }
}

/// Normalized arrow polynomial of the zero-framed n-cable, computed
/// from cached crossing blocks without expanding the cabled diagram.
pub fn cabled_arrow(pd: &PdCode, n: u32) -> Result<ArrowPoly, EngineError> {
    cabled_arrow_with(pd, n, &EngineOptions::default()).map(|(p, _)| p)
}

pub fn cabled_arrow_with(
    pd: &PdCode,
    n: u32,
    opts: &EngineOptions,
) -> Result<(ArrowPoly, EngineStats), EngineError> {
    assert!(n >= 1, "cable width must be at least 1");
    let framed = zero_framed(pd)?;
    let arcs: Vec<Arc> = framed.component_of().into_keys().collect();
    let rank: BTreeMap<Arc, u32> = arcs
        .iter()
        .enumerate()
        .map(|(r, &x)| (x, r as u32))
        .collect();
    let gid = |x: Arc, i: u32| rank[&x] * n + i;
    let max_arc = *arcs.last().expect("validated diagram is nonempty");
    // cut the last copy of the top arc open at its head, as in the
    // closed computation: the final states then hold one open strand
    let cut_from = gid(max_arc, n);
    let cut_to = arcs.len() as u32 * n + 1;
    let cut_site = framed
        .nodes()
        .iter()
        .enumerate()
        .find_map(|(ni, node)| {
            node.arcs()
                .into_iter()
                .zip(node.incoming())
                .position(|(x, inc)| inc && x == max_arc)
                .map(|s| (ni, s))
        })
        .expect("every arc has a head");

    let mut states: StateMap = HashMap::new();
    states.insert(Vec::new(), HArrowPoly::one());
    let mut stats = EngineStats {
        nodes: framed.nodes().len(),
        ..Default::default()
    };
    for ni in contraction_order(&framed) {
        let node = &framed.nodes()[ni];
        let ends = node.arcs();
        let gmap = |s: usize, i: u32| -> Arc {
            if (ni, s) == cut_site && i == n {
                cut_to
            } else {
                gid(ends[s], i)
            }
        };
        // this node's alternatives: open strands plus a value factor
        let mut terms: Vec<(Vec<Dir>, HArrowPoly)> = Vec::new();
        match *node {
            Node::P(..) => {
                let dirs = (1..=n)
                    .map(|i| Dir {
                        from: gmap(0, i),
                        to: gmap(1, i),
                        v: SlotVec::new(vec![]),
                    })
                    .collect();
                terms.push((dirs, HArrowPoly::one()));
            }
            Node::Xp(..) | Node::Xm(..) => {
                let block = CabledBlock::get(node.sign() > 0, n)?;
                let glob = |e: Arc| gmap(((e - 1) / n) as usize, (e - 1) % n + 1);
                for (paths, value) in block.states() {
                    let dirs = paths
                        .iter()
                        .map(|p| Dir {
                            from: glob(p.a),
                            to: glob(p.b),
                            // both relative slots land on the one real strand
                            v: SlotVec::new(vec![p.v.entries().iter().sum::<i32>()]),
                        })
                        .collect();
                    let value = value.pushforward(&[vec![1, 1]]).expect("blocks use two slots");
                    terms.push((dirs, value));
                }
            }
        }
        let mut next: StateMap = HashMap::with_capacity(states.len() * terms.len());
        for (paths, value) in &states {
            for (dirs, tv) in &terms {
                let mut paths = paths.clone();
                let mut value = value.mul_ref(tv);
                for d in dirs {
                    insert_path(&mut paths, &mut value, d.clone(), LoopWeight::DeltaX);
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

    let mut out = HArrowPoly::zero();
    for (paths, mut value) in states {
        debug_assert_eq!(paths.len(), 1, "one strand stays open");
        let p = &paths[0];
        debug_assert_eq!((p.a, p.b), (cut_from, cut_to));
        // the open strand closes into the marked loop: an X factor, no delta
        if let Some(iv) = crate::poly::IndexVector::from_slots(p.v.clone()) {
            value.mul_factor(&iv);
        }
        out.add_assign_ref(&value);
    }
    let arrow = out
        .to_arrow()
        .expect("single-slot vectors stay single-slot")
        .writhe_normalize(framed.writhe() * (n * n) as i32);
    Ok((arrow, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::compute_arrow_normalized;
    use crate::pd::parse_pd;

    #[test]
    fn framing_kinks_cancel_self_writhe() {
        let t = parse_pd("PD[Xp[3,1,4,6], Xp[1,5,2,4], Xp[5,3,6,2]]").unwrap();
        let f = zero_framed(&t).unwrap();
        f.validate().unwrap();
        assert_eq!(f.writhe(), 0);
        assert_eq!(f.crossing_count(), 6);
        assert_eq!(
            compute_arrow_normalized(&f).unwrap(),
            compute_arrow_normalized(&t).unwrap()
        );
    }

    #[test]
    fn one_cable_is_the_framed_diagram() {
        for text in [
            "PD[P[1,1]]",
            "PD[Xm[1,2,1,2]]",
            "PD[Xm[1,2,3,4], Xm[4,3,1,2]]",
        ] {
            let pd = parse_pd(text).unwrap();
            let want = compute_arrow_normalized(&pd).unwrap();
            let c = cable(&pd, 1).unwrap();
            assert_eq!(compute_arrow_normalized(&c).unwrap(), want, "{text}");
            assert_eq!(cabled_arrow(&pd, 1).unwrap(), want, "{text}");
        }
    }

    #[test]
    fn cable_structure() {
        let k = parse_pd("PD[Xm[1,2,3,4], Xm[4,3,1,2]]").unwrap();
        let c = cable(&k, 2).unwrap();
        c.validate().unwrap();
        assert_eq!(c.components().len(), 2);
        // two real crossings and two compensating curls, each a 2x2 grid
        assert_eq!(c.crossing_count(), 16);
        assert_eq!(c.writhe(), 0);

        let l = parse_pd("PD[Xm[11,22,11,22]]")
            .unwrap()
            .with_mod10_labels()
            .unwrap();
        let cl = cable(&l, 2).unwrap();
        assert_eq!(cl.labels(), Some(&[1, 1, 2, 2][..]));
    }

    #[test]
    fn single_crossing_block() {
        let b = CabledBlock::get(true, 1).unwrap();
        assert_eq!(b.states().len(), 2);
        for (paths, _) in b.states() {
            assert_eq!(paths.len(), 2);
        }
        let b = CabledBlock::get(false, 2).unwrap();
        assert!(b.states().len() > 2);
        for (paths, _) in b.states() {
            assert_eq!(paths.len(), 4);
        }
    }

    #[test]
    fn blocks_match_expanded_diagrams() {
        for text in ["PD[Xm[1,2,1,2]]", "PD[Xm[1,2,3,4], Xm[4,3,1,2]]"] {
            let pd = parse_pd(text).unwrap();
            for n in [2u32, 3] {
                let direct = compute_arrow_normalized(&cable(&pd, n).unwrap()).unwrap();
                let blocked = cabled_arrow(&pd, n).unwrap();
                assert_eq!(blocked, direct, "{text} n={n}");
            }
        }
    }
}
