//! PD codes for oriented virtual link diagrams.
//!
//! Nodes list their incident arcs counterclockwise. `Xp[a,b,c,d]` is a
//! positive crossing with under-strand `a -> c` and over-strand `d -> b`;
//! `Xm[a,b,c,d]` is negative with under `a -> c` and over `b -> d`;
//! `P[a,b]` passes `a -> b` with no crossing. Every arc id occurs exactly
//! once as an incoming slot and once as an outgoing slot.
//!
//! Virtual crossings are never encoded: the node list plus the
//! counterclockwise slot order is an abstract ribbon structure, and
//! [`PdCode::faces`] recovers the surface it embeds in.

mod faces;
mod parse;

pub use faces::{ArcSide, FaceData, Side};
pub use parse::{parse_label_lines, parse_pd};

use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

pub type Arc = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PdError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("arc {arc} occurs {incoming} time(s) incoming and {outgoing} outgoing; want 1 and 1")]
    ArcBalance {
        arc: Arc,
        incoming: usize,
        outgoing: usize,
    },
    #[error("component {component} (smallest arc {arc}) has no label")]
    MissingLabel { component: usize, arc: Arc },
    #[error("label {label} is not a positive slot index")]
    BadLabel { label: u32 },
    #[error("component {component} mixes arc ids {a} and {b} modulo 10")]
    ModTenMixed { component: usize, a: Arc, b: Arc },
    #[error("arc {arc} not in the diagram")]
    NoSuchArc { arc: Arc },
    #[error("face index {face} out of range ({count} faces)")]
    NoSuchFace { face: usize, count: usize },
    #[error("arc side {side:?} is not on face {face}")]
    SideNotOnFace { face: usize, side: ArcSide },
    #[error("cannot poke arc {arc} across its own other side")]
    SelfPokeSides { arc: Arc },
    #[error("diagram is empty")]
    Empty,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub enum Node {
    P(Arc, Arc),
    Xp(Arc, Arc, Arc, Arc),
    Xm(Arc, Arc, Arc, Arc),
}

impl Node {
    /// Crossing sign: `Xp` is +1, `Xm` is -1, `P` is 0.
    pub fn sign(&self) -> i32 {
        match self {
            Node::P(..) => 0,
            Node::Xp(..) => 1,
            Node::Xm(..) => -1,
        }
    }

    pub fn is_crossing(&self) -> bool {
        !matches!(self, Node::P(..))
    }

    /// Incident arcs in slot order (counterclockwise).
    pub fn arcs(&self) -> Vec<Arc> {
        match *self {
            Node::P(a, b) => vec![a, b],
            Node::Xp(a, b, c, d) | Node::Xm(a, b, c, d) => vec![a, b, c, d],
        }
    }

    pub(crate) fn slots_mut(&mut self) -> Vec<&mut Arc> {
        match self {
            Node::P(a, b) => vec![a, b],
            Node::Xp(a, b, c, d) | Node::Xm(a, b, c, d) => vec![a, b, c, d],
        }
    }

    /// For each slot: true if the arc is incoming there.
    pub fn incoming(&self) -> Vec<bool> {
        match self {
            Node::P(..) => vec![true, false],
            // under in at a, over out at b, under out at c, over in at d
            Node::Xp(..) => vec![true, false, false, true],
            // under in at a, over in at b, under out at c, over out at d
            Node::Xm(..) => vec![true, true, false, false],
        }
    }

    /// Pairs `(incoming slot, outgoing slot)` of the strands through this
    /// node.
    pub fn through(&self) -> Vec<(usize, usize)> {
        match self {
            Node::P(..) => vec![(0, 1)],
            Node::Xp(..) => vec![(0, 2), (3, 1)],
            Node::Xm(..) => vec![(0, 2), (1, 3)],
        }
    }
}

impl fmt::Debug for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Node::P(a, b) => write!(f, "P[{a},{b}]"),
            Node::Xp(a, b, c, d) => write!(f, "Xp[{a},{b},{c},{d}]"),
            Node::Xm(a, b, c, d) => write!(f, "Xm[{a},{b},{c},{d}]"),
        }
    }
}

/// An oriented virtual link diagram: a node list plus optional component
/// labels (component index -> label slot, 1-based).
#[derive(Clone, PartialEq, Eq)]
pub struct PdCode {
    nodes: Vec<Node>,
    labels: Option<Vec<u32>>,
}

impl PdCode {
    pub fn new(nodes: Vec<Node>) -> PdCode {
        PdCode {
            nodes,
            labels: None,
        }
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn labels(&self) -> Option<&[u32]> {
        self.labels.as_deref()
    }

    pub fn crossing_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.is_crossing()).count()
    }

    pub fn max_arc(&self) -> Arc {
        self.nodes
            .iter()
            .flat_map(|n| n.arcs())
            .max()
            .unwrap_or(0)
    }

    /// Every arc id occurs exactly once incoming and once outgoing, ids
    /// are positive, and labels (when present) cover every component.
    pub fn validate(&self) -> Result<(), PdError> {
        if self.nodes.is_empty() {
            return Err(PdError::Empty);
        }
        let mut balance: BTreeMap<Arc, (usize, usize)> = BTreeMap::new();
        for node in &self.nodes {
            for (arc, inc) in node.arcs().into_iter().zip(node.incoming()) {
                let e = balance.entry(arc).or_default();
                if inc {
                    e.0 += 1;
                } else {
                    e.1 += 1;
                }
            }
        }
        for (&arc, &(incoming, outgoing)) in &balance {
            if incoming != 1 || outgoing != 1 {
                return Err(PdError::ArcBalance {
                    arc,
                    incoming,
                    outgoing,
                });
            }
        }
        if let Some(labels) = &self.labels {
            let comps = self.components();
            for (i, comp) in comps.iter().enumerate() {
                match labels.get(i) {
                    None | Some(0) => {
                        return Err(PdError::MissingLabel {
                            component: i + 1,
                            arc: comp[0],
                        })
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(())
    }

    /// Arc cycles of the link components, each starting at its smallest
    /// arc id, listed in order of that smallest id.
    pub fn components(&self) -> Vec<Vec<Arc>> {
        // next[arc] = arc after it along the strand
        let mut next: BTreeMap<Arc, Arc> = BTreeMap::new();
        for node in &self.nodes {
            let arcs = node.arcs();
            for (i, o) in node.through() {
                next.insert(arcs[i], arcs[o]);
            }
        }
        let mut seen: BTreeMap<Arc, bool> = BTreeMap::new();
        let mut comps = Vec::new();
        for &start in next.keys() {
            if seen.get(&start).copied().unwrap_or(false) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut a = start;
            loop {
                cycle.push(a);
                seen.insert(a, true);
                a = next[&a];
                if a == start {
                    break;
                }
            }
            comps.push(cycle);
        }
        comps
    }

    /// Component index of each arc.
    pub fn component_of(&self) -> BTreeMap<Arc, usize> {
        let mut out = BTreeMap::new();
        for (i, comp) in self.components().iter().enumerate() {
            for &a in comp {
                out.insert(a, i);
            }
        }
        out
    }

    pub fn writhe(&self) -> i32 {
        self.nodes.iter().map(|n| n.sign()).sum()
    }

    /// Sum of signs over crossings where both strands belong to component
    /// `comp` (0-based).
    pub fn self_writhe(&self, comp: usize) -> i32 {
        let of = self.component_of();
        self.nodes
            .iter()
            .filter(|n| n.is_crossing())
            .filter(|n| {
                let arcs = n.arcs();
                n.through()
                    .iter()
                    .all(|&(i, _)| of.get(&arcs[i]) == Some(&comp))
            })
            .map(|n| n.sign())
            .sum()
    }

    /// Labels as a component-indexed vector, defaulting to all 1.
    pub fn effective_labels(&self) -> Vec<u32> {
        match &self.labels {
            Some(l) => l.clone(),
            None => vec![1; self.components().len()],
        }
    }

    /// Attach explicit labels (component index -> slot), replacing any
    /// existing assignment.
    pub fn with_labels(mut self, labels: Vec<u32>) -> Result<PdCode, PdError> {
        for &l in &labels {
            if l == 0 {
                return Err(PdError::BadLabel { label: l });
            }
        }
        self.labels = Some(labels);
        self.validate()?;
        Ok(self)
    }

    pub fn without_labels(mut self) -> PdCode {
        self.labels = None;
        self
    }

    /// Label every component by its arc ids modulo 10 (arc 12 -> slot 2,
    /// arc 30 -> slot 10). All arcs of a component must agree.
    pub fn with_mod10_labels(self) -> Result<PdCode, PdError> {
        let mod10 = |a: Arc| ((a - 1) % 10) + 1;
        let mut labels = Vec::new();
        for (i, comp) in self.components().iter().enumerate() {
            let l = mod10(comp[0]);
            for &a in comp {
                if mod10(a) != l {
                    return Err(PdError::ModTenMixed {
                        component: i + 1,
                        a: comp[0],
                        b: a,
                    });
                }
            }
            labels.push(l);
        }
        self.with_labels(labels)
    }

    /// True iff along every component the crossing passages alternate
    /// over/under (P nodes ignored).
    pub fn is_alternating(&self) -> bool {
        // role of each incoming arc at its head node: Some(true)=under
        let mut role: BTreeMap<Arc, Option<bool>> = BTreeMap::new();
        for node in &self.nodes {
            let arcs = node.arcs();
            match node {
                Node::P(..) => {
                    role.insert(arcs[0], None);
                }
                Node::Xp(..) => {
                    role.insert(arcs[0], Some(true));
                    role.insert(arcs[3], Some(false));
                }
                Node::Xm(..) => {
                    role.insert(arcs[0], Some(true));
                    role.insert(arcs[1], Some(false));
                }
            }
        }
        for comp in self.components() {
            let passes: Vec<bool> = comp.iter().filter_map(|a| role[a]).collect();
            if passes.is_empty() {
                continue;
            }
            if !passes.len().is_multiple_of(2) {
                return false;
            }
            for i in 0..passes.len() {
                if passes[i] == passes[(i + 1) % passes.len()] {
                    return false;
                }
            }
        }
        true
    }

    /// Mirror image: every crossing switches, orientations and the
    /// counterclockwise slot order are preserved.
    pub fn mirror(&self) -> PdCode {
        let nodes = self
            .nodes
            .iter()
            .map(|n| match *n {
                Node::P(a, b) => Node::P(a, b),
                Node::Xp(a, b, c, d) => Node::Xm(d, a, b, c),
                Node::Xm(a, b, c, d) => Node::Xp(b, c, d, a),
            })
            .collect();
        PdCode {
            nodes,
            labels: self.labels.clone(),
        }
    }

    /// Reverse the orientation of every component: each crossing keeps its
    /// sign and its slots rotate by two.
    pub fn reverse_all(&self) -> PdCode {
        let nodes = self
            .nodes
            .iter()
            .map(|n| match *n {
                Node::P(a, b) => Node::P(b, a),
                Node::Xp(a, b, c, d) => Node::Xp(c, d, a, b),
                Node::Xm(a, b, c, d) => Node::Xm(c, d, a, b),
            })
            .collect();
        PdCode {
            nodes,
            labels: self.labels.clone(),
        }
    }

    /// Disjoint union; arcs of `other` are shifted above `self.max_arc()`.
    pub fn disjoint_union(&self, other: &PdCode) -> PdCode {
        let shift = self.max_arc();
        let mut nodes = self.nodes.clone();
        nodes.extend(other.nodes.iter().map(|n| shift_node(n, shift)));
        let labels = match (&self.labels, &other.labels) {
            (Some(a), Some(b)) => {
                let mut l = a.clone();
                l.extend_from_slice(b);
                Some(l)
            }
            _ => None,
        };
        PdCode { nodes, labels }
    }

    /// Replace the single incoming occurrence of `arc` with `with`.
    fn replace_head(&mut self, arc: Arc, with: Arc) {
        for node in &mut self.nodes {
            let incoming = node.incoming();
            for (i, s) in node.slots_mut().into_iter().enumerate() {
                if incoming[i] && *s == arc {
                    *s = with;
                    return;
                }
            }
        }
        panic!("arc {arc} has no incoming occurrence");
    }

    /// Replace the single outgoing occurrence of `arc` with `with`.
    fn replace_tail(&mut self, arc: Arc, with: Arc) {
        for node in &mut self.nodes {
            let incoming = node.incoming();
            for (i, s) in node.slots_mut().into_iter().enumerate() {
                if !incoming[i] && *s == arc {
                    *s = with;
                    return;
                }
            }
        }
        panic!("arc {arc} has no outgoing occurrence");
    }

    /// Connected sum: cut `arc1` and `arc2` (of `other`) and cross-join,
    /// tail of each to head of the other. Labels are dropped.
    pub fn connect_sum(&self, arc1: Arc, other: &PdCode, arc2: Arc) -> Result<PdCode, PdError> {
        if !self.nodes.iter().any(|n| n.arcs().contains(&arc1)) {
            return Err(PdError::NoSuchArc { arc: arc1 });
        }
        if !other.nodes.iter().any(|n| n.arcs().contains(&arc2)) {
            return Err(PdError::NoSuchArc { arc: arc2 });
        }
        let shift = self.max_arc();
        let arc2 = arc2 + shift;
        let mut joined = self.disjoint_union(other).without_labels();
        let fresh = joined.max_arc() + 1;
        // tail of arc1 keeps id arc1 and flows into arc2's old head;
        // tail of arc2 becomes `fresh` and flows into arc1's old head.
        joined.replace_head(arc1, fresh);
        joined.replace_head(arc2, arc1);
        joined.replace_tail(arc2, fresh);
        Ok(joined)
    }

    /// Insert a curl of the given sign on `arc`, adding one crossing and
    /// two fresh arc ids; the writhe changes by exactly `sign`.
    pub fn insert_kink(&self, arc: Arc, sign: i32) -> Result<PdCode, PdError> {
        assert!(sign == 1 || sign == -1, "kink sign must be +1 or -1");
        if !self.nodes.iter().any(|n| n.arcs().contains(&arc)) {
            return Err(PdError::NoSuchArc { arc });
        }
        let g = self.max_arc() + 1;
        let h = g + 1;
        let mut out = self.clone();
        out.replace_head(arc, h);
        out.nodes.push(if sign > 0 {
            Node::Xp(arc, h, g, g)
        } else {
            Node::Xm(arc, g, g, h)
        });
        Ok(out)
    }

    /// Push the strand of `side1` across face `face` so it crosses the
    /// strand of `side2` twice (a second Reidemeister poke). Both sides
    /// must lie on the walk of `face`; the new crossings are over-passes
    /// of `side1`'s strand, cancel in writhe, and the poke stays on the
    /// carrying surface, so every face genus is preserved.
    pub fn r2_insert(
        &self,
        face: usize,
        side1: ArcSide,
        side2: ArcSide,
    ) -> Result<PdCode, PdError> {
        let fd = self.faces();
        let walk = fd
            .faces
            .get(face)
            .ok_or(PdError::NoSuchFace {
                face,
                count: fd.faces.len(),
            })?;
        for side in [side1, side2] {
            if !walk.contains(&side) {
                return Err(PdError::SideNotOnFace { face, side });
            }
        }
        let x = side1.arc;
        let y = side2.arc;
        if x == y && side1.side != side2.side {
            return Err(PdError::SelfPokeSides { arc: x });
        }
        let m = self.max_arc();
        // strand pieces after the poke: x -> e1 -> e2 over the finger,
        // y -> f1 -> f2 under it; a self poke chains e2 into the unders
        let (e1, e2, f1, f2) = (m + 1, m + 2, m + 3, m + 4);
        let selfpoke = side1 == side2;
        let mut out = self.clone();
        if !selfpoke {
            out.replace_head(x, e2);
        }
        out.replace_head(if selfpoke { x } else { y }, f2);
        let u = if selfpoke { e2 } else { y };
        // One case per pair of walk directions. Slots are read off the
        // disk picture of the face; counterclockwise order at the new
        // nodes is what keeps the poke flat on the surface.
        let (n1, n2) = match (side1.side, side2.side) {
            (Side::Right, Side::Right) => (Node::Xm(f1, x, f2, e1), Node::Xp(u, e2, f1, e1)),
            (Side::Right, Side::Left) => (Node::Xp(u, e1, f1, x), Node::Xm(f1, e1, f2, e2)),
            (Side::Left, Side::Right) => (Node::Xm(u, x, f1, e1), Node::Xp(f1, e2, f2, e1)),
            (Side::Left, Side::Left) => (Node::Xp(f1, e1, f2, x), Node::Xm(u, e1, f1, e2)),
        };
        out.nodes.push(n1);
        out.nodes.push(n2);
        Ok(out)
    }

    pub fn faces(&self) -> FaceData {
        faces::trace(self)
    }
}

fn shift_node(n: &Node, shift: Arc) -> Node {
    match *n {
        Node::P(a, b) => Node::P(a + shift, b + shift),
        Node::Xp(a, b, c, d) => Node::Xp(a + shift, b + shift, c + shift, d + shift),
        Node::Xm(a, b, c, d) => Node::Xm(a + shift, b + shift, c + shift, d + shift),
    }
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PD[")?;
        for (i, n) in self.nodes.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{n:?}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pd(text: &str) -> PdCode {
        parse_pd(text).unwrap()
    }

    #[test]
    fn unknot() {
        let u = pd("PD[P[1,1]]");
        u.validate().unwrap();
        assert_eq!(u.components(), vec![vec![1]]);
        assert_eq!(u.writhe(), 0);
        assert!(u.is_alternating());
    }

    #[test]
    fn virtual_trefoil() {
        let k = pd("PD[Xm[1,2,3,4], Xm[4,3,1,2]]");
        k.validate().unwrap();
        assert_eq!(k.components(), vec![vec![1, 3, 2, 4]]);
        assert_eq!(k.writhe(), -2);
        assert_eq!(k.self_writhe(0), -2);
        assert!(!k.is_alternating());
    }

    #[test]
    fn virtual_hopf() {
        let l = pd("PD[Xm[1,2,1,2]]");
        l.validate().unwrap();
        assert_eq!(l.components(), vec![vec![1], vec![2]]);
        assert_eq!(l.writhe(), -1);
        // the only crossing links the two components
        assert_eq!(l.self_writhe(0), 0);
        assert_eq!(l.self_writhe(1), 0);
    }

    #[test]
    fn validate_rejects_unbalanced() {
        let bad = PdCode::new(vec![Node::P(1, 2), Node::P(2, 3)]);
        assert!(matches!(
            bad.validate(),
            Err(PdError::ArcBalance { arc: 1, .. })
        ));
    }

    #[test]
    fn mod10_labels() {
        let l = pd("PD[Xm[82,31,72,21], Xm[72,41,62,31], Xm[21,52,11,82], Xm[11,62,41,52]]");
        let l = l.with_mod10_labels().unwrap();
        assert_eq!(l.labels(), Some(&[1, 2][..]));
        let bad = pd("PD[Xm[1,2,3,4], Xm[4,3,1,2]]").with_mod10_labels();
        assert!(matches!(bad, Err(PdError::ModTenMixed { .. })));
    }

    #[test]
    fn alternating_trefoil() {
        let t = pd("PD[Xp[3,1,4,6], Xp[1,5,2,4], Xp[5,3,6,2]]");
        t.validate().unwrap();
        assert_eq!(t.writhe(), 3);
        assert!(t.is_alternating());
        assert_eq!(t.components().len(), 1);
    }

    #[test]
    fn mirror_round_trip() {
        let k = pd("PD[Xm[1,2,3,4], Xm[4,3,1,2]]");
        let m = k.mirror();
        m.validate().unwrap();
        assert_eq!(m.writhe(), 2);
        assert_eq!(m.mirror(), k);
        let r = k.reverse_all();
        r.validate().unwrap();
        assert_eq!(r.reverse_all(), k);
        assert_eq!(r.writhe(), k.writhe());
    }

    #[test]
    fn union_and_sum() {
        let a = pd("PD[P[1,1]]");
        let b = pd("PD[Xm[1,2,3,4], Xm[4,3,1,2]]");
        let u = a.disjoint_union(&b);
        u.validate().unwrap();
        assert_eq!(u.components().len(), 2);
        let s = a.connect_sum(1, &b, 2).unwrap();
        s.validate().unwrap();
        assert_eq!(s.components().len(), 1);
        assert_eq!(s.crossing_count(), 2);
    }

    #[test]
    fn kink_changes_writhe() {
        let u = pd("PD[P[1,1]]");
        let k = u.insert_kink(1, 1).unwrap();
        k.validate().unwrap();
        assert_eq!(k.writhe(), 1);
        assert_eq!(k.components().len(), 1);
        let k2 = k.insert_kink(2, -1).unwrap();
        k2.validate().unwrap();
        assert_eq!(k2.writhe(), 0);
    }

    #[test]
    fn every_supported_poke_preserves_the_surface() {
        // sweep all side pairs on all faces, planar and genus one
        for text in [
            "PD[Xm[1,4,2,5], Xm[3,6,4,1], Xm[5,2,6,3]]",
            "PD[Xm[1,2,3,4], Xm[4,3,1,2]]",
            "PD[P[1,1]]",
        ] {
            let base = pd(text);
            let fd = base.faces();
            let genus = fd.total_genus();
            for (face, walk) in fd.faces.iter().enumerate() {
                for &s1 in walk {
                    for &s2 in walk {
                        let poked = match base.r2_insert(face, s1, s2) {
                            Ok(p) => p,
                            Err(PdError::SelfPokeSides { .. }) => {
                                assert_eq!(s1.arc, s2.arc);
                                continue;
                            }
                            Err(e) => panic!("{e}"),
                        };
                        poked.validate().unwrap();
                        assert_eq!(poked.writhe(), base.writhe(), "{text} {s1:?} {s2:?}");
                        assert_eq!(
                            poked.faces().total_genus(),
                            genus,
                            "{text} {s1:?} {s2:?}"
                        );
                    }
                }
            }
        }
    }
}
