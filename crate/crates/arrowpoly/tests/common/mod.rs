//! Shared test support: a brute force state-sum oracle and seeded
//! random diagram generators.
//!
//! The oracle enumerates all 2^c smoothing states and traces each
//! state's loops end by end. It shares only the polynomial types with
//! the contraction engine; the smoothing tables are spelled out from
//! scratch so the two implementations can check each other.

// each test target compiles its own copy and none uses every helper
#![allow(dead_code)]

use arrowpoly::engine::LoopWeight;
use arrowpoly::laurent::Laurent;
use arrowpoly::pd::{Arc, Node, PdCode};
use arrowpoly::poly::{HArrowPoly, IndexVector, SlotVec};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::{BTreeMap, BTreeSet};

/// One end of an arc: `true` is the head (where the arc runs into a
/// node), `false` the tail (where it leaves one).
type End = (Arc, bool);

const H: bool = true;
const T: bool = false;

/// A smoothing strand joining two node ports; `v` is picked up
/// traveling `p` to `q` and negated the other way.
struct Join {
    p: End,
    q: End,
    v: SlotVec,
}

fn join(p: End, q: End, v: SlotVec) -> Join {
    Join { p, q, v }
}

/// Closed state sum by full enumeration. Every loop of every state is
/// scored by `mode`, exactly as in the engine's definition, but states
/// are built by pairing arc ends and walking loops rather than by
/// frontier contraction.
pub fn naive_harrow(pd: &PdCode, mode: LoopWeight) -> HArrowPoly {
    pd.validate().expect("oracle input must be valid");
    let labels = pd.effective_labels();
    let comp_of = pd.component_of();
    let unit = |arc: Arc| SlotVec::unit(labels[comp_of[&arc]]);

    // Two smoothings per crossing: (exponent of A, strands).
    // The oriented smoothing keeps both strands running with the
    // diagram; the other turns them back at the node.
    let mut fixed: Vec<Join> = Vec::new();
    let mut choices: Vec<[(i32, Vec<Join>); 2]> = Vec::new();
    for node in pd.nodes() {
        match *node {
            Node::P(a, b) => fixed.push(join((a, H), (b, T), SlotVec::default())),
            Node::Xp(a, b, c, d) => choices.push([
                (
                    1,
                    vec![
                        join((a, H), (b, T), SlotVec::default()),
                        join((d, H), (c, T), unit(c).sub(&unit(d))),
                    ],
                ),
                (
                    -1,
                    vec![
                        join((d, H), (a, H), unit(a)),
                        join((c, T), (b, T), unit(b)),
                    ],
                ),
            ]),
            Node::Xm(a, b, c, d) => choices.push([
                (
                    -1,
                    vec![
                        join((b, H), (c, T), SlotVec::default()),
                        join((a, H), (d, T), unit(d).sub(&unit(a))),
                    ],
                ),
                (
                    1,
                    vec![
                        join((a, H), (b, H), unit(b)),
                        join((d, T), (c, T), unit(c)),
                    ],
                ),
            ]),
        }
    }

    let c = choices.len();
    assert!(c <= 16, "oracle is exponential; keep diagrams small");
    let mut total = HArrowPoly::zero();
    for bits in 0u32..1 << c {
        let mut exp = 0;
        let mut joins: Vec<&Join> = fixed.iter().collect();
        for (i, pair) in choices.iter().enumerate() {
            let (e, strands) = &pair[(bits >> i & 1) as usize];
            exp += e;
            joins.extend(strands);
        }

        let mut at: BTreeMap<End, usize> = BTreeMap::new();
        for (i, j) in joins.iter().enumerate() {
            assert!(at.insert(j.p, i).is_none());
            assert!(at.insert(j.q, i).is_none());
        }

        let mut value = HArrowPoly::scalar(Laurent::monomial(exp, 1));
        let mut seen: BTreeSet<End> = BTreeSet::new();
        for start in at.keys().copied().collect::<Vec<_>>() {
            if seen.contains(&start) {
                continue;
            }
            // Walk: cross the join, then run along the arc to its
            // other end, until the walk comes home.
            let mut v = SlotVec::default();
            let mut cur = start;
            loop {
                seen.insert(cur);
                let j = joins[at[&cur]];
                let out = if j.p == cur {
                    v = v.add(&j.v);
                    j.q
                } else {
                    v = v.sub(&j.v);
                    j.p
                };
                seen.insert(out);
                cur = (out.0, !out.1);
                if cur == start {
                    break;
                }
            }
            assert!(v.entry_sum() % 2 == 0, "odd loop vector {v:?}");
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
        total.add_assign_ref(&value);
    }
    total
}

/// Random virtual link diagram with `1..=max_crossings` crossings and
/// up to three components, built from a random signed chord pairing.
/// Roughly half the draws carry explicit labels; occasional crossing
/// free loops and pass nodes exercise the degenerate shapes.
pub fn random_pd(rng: &mut impl Rng, max_crossings: usize) -> PdCode {
    let c = rng.gen_range(1..=max_crossings);
    let comps = match rng.gen_range(0..10) {
        0..=5 => 1,
        6..=8 => 2,
        _ => 3,
    };

    // Scatter the 2c crossing passages over the components. A
    // component left empty becomes a disjoint circle.
    let mut sizes = vec![0usize; comps];
    for _ in 0..2 * c {
        sizes[rng.gen_range(0..comps)] += 1;
    }
    let base: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, &n| {
            let b = *acc;
            *acc += n;
            Some(b)
        })
        .collect();
    // Arc k+1 leaves passage k; in-arc wraps around the component.
    let out_arc = |comp: usize, pos: usize| (base[comp] + pos + 1) as Arc;
    let in_arc =
        |comp: usize, pos: usize| (base[comp] + (pos + sizes[comp] - 1) % sizes[comp] + 1) as Arc;

    let mut slots: Vec<(usize, usize)> = Vec::new();
    for (comp, &n) in sizes.iter().enumerate() {
        for pos in 0..n {
            slots.push((comp, pos));
        }
    }
    slots.shuffle(rng);

    let mut nodes = Vec::new();
    for pair in slots.chunks(2) {
        let (over, under) = if rng.gen() {
            (pair[0], pair[1])
        } else {
            (pair[1], pair[0])
        };
        let (oi, oo) = (in_arc(over.0, over.1), out_arc(over.0, over.1));
        let (ui, uo) = (in_arc(under.0, under.1), out_arc(under.0, under.1));
        nodes.push(if rng.gen() {
            Node::Xp(ui, oo, uo, oi)
        } else {
            Node::Xm(ui, oi, uo, oo)
        });
    }
    let mut fresh = 2 * c as Arc;
    for &n in &sizes {
        if n == 0 {
            fresh += 1;
            nodes.push(Node::P(fresh, fresh));
        }
    }

    let mut pd = PdCode::new(nodes);
    // Subdivide a couple of arcs with pass nodes now and then.
    for _ in 0..rng.gen_range(0..3) {
        if rng.gen_bool(0.3) {
            let arc = rng.gen_range(1..=2 * c) as Arc;
            pd = subdivide(&pd, arc);
        }
    }
    if rng.gen_bool(0.5) {
        let n = pd.components().len();
        let labels = (0..n).map(|_| rng.gen_range(1..=3)).collect();
        pd = pd.with_labels(labels).unwrap();
    }
    pd.validate().expect("generator must emit valid codes");
    pd
}

/// Split `arc` with a pass node; the far half gets a fresh id.
fn subdivide(pd: &PdCode, arc: Arc) -> PdCode {
    let fresh = pd.max_arc() + 1;
    let mut nodes: Vec<Node> = Vec::with_capacity(pd.nodes().len() + 1);
    let mut done = false;
    for node in pd.nodes() {
        let arcs = node.arcs();
        let incoming = node.incoming();
        let mut slots = arcs.clone();
        if !done {
            if let Some(i) = (0..arcs.len()).find(|&i| incoming[i] && arcs[i] == arc) {
                slots[i] = fresh;
                done = true;
            }
        }
        nodes.push(match *node {
            Node::P(..) => Node::P(slots[0], slots[1]),
            Node::Xp(..) => Node::Xp(slots[0], slots[1], slots[2], slots[3]),
            Node::Xm(..) => Node::Xm(slots[0], slots[1], slots[2], slots[3]),
        });
    }
    assert!(done, "arc {arc} not found");
    nodes.push(Node::P(arc, fresh));
    let labels = pd.labels().map(|l| l.to_vec());
    let out = PdCode::new(nodes);
    match labels {
        Some(l) => out.with_labels(l).unwrap(),
        None => out,
    }
}

/// Random poke of one face side across another. Redraws until the pair
/// is supported (a strand cannot be poked across its own other side),
/// which always terminates: using one dart twice is legal.
pub fn random_r2(rng: &mut impl Rng, pd: &PdCode) -> PdCode {
    let fd = pd.faces();
    loop {
        let face = rng.gen_range(0..fd.faces.len());
        let walk = &fd.faces[face];
        let s1 = walk[rng.gen_range(0..walk.len())];
        let s2 = walk[rng.gen_range(0..walk.len())];
        if s1.arc == s2.arc && s1.side != s2.side {
            continue;
        }
        return pd.r2_insert(face, s1, s2).unwrap();
    }
}

/// Random classical diagram: an unknot, trefoil, or figure eight
/// wrapped in random curls and pokes across disk faces. The result
/// stays planar, so its total genus is zero.
pub fn random_classical_pd(rng: &mut impl Rng, extra: usize) -> PdCode {
    let seeds = ["PD[P[1,1]]", arrowpoly::corpus::TREFOIL, arrowpoly::corpus::FIGURE_EIGHT];
    let mut pd = arrowpoly::pd::parse_pd(seeds[rng.gen_range(0..seeds.len())]).unwrap();
    for _ in 0..extra {
        if rng.gen_bool(0.5) {
            let arc = random_arc(rng, &pd);
            let sign = if rng.gen() { 1 } else { -1 };
            pd = pd.insert_kink(arc, sign).unwrap();
        } else {
            pd = random_r2(rng, &pd);
        }
    }
    let genus = pd.faces().total_genus();
    assert_eq!(genus, 0, "classical generator left the plane");
    pd
}

/// Uniform arc of `pd`.
pub fn random_arc(rng: &mut impl Rng, pd: &PdCode) -> Arc {
    let mut arcs: Vec<Arc> = pd.nodes().iter().flat_map(|n| n.arcs()).collect();
    arcs.sort_unstable();
    arcs.dedup();
    arcs[rng.gen_range(0..arcs.len())]
}
