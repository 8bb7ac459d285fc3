//! Face tracing on the ribbon structure of a diagram.
//!
//! Slot order at each node is a counterclockwise rotation, so the node
//! list is a combinatorial map. Its faces are recovered without any
//! planarity assumption, and Euler characteristic per connected piece
//! gives the genus of the thickened surface the diagram lives on.

use super::{Arc, PdCode};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Side {
    Left,
    Right,
}

/// One step of a face walk: `arc` traversed forward (`Right`, the face is
/// on the strand's right) or backward (`Left`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArcSide {
    pub arc: Arc,
    pub side: Side,
}

impl ArcSide {
    pub fn left(arc: Arc) -> ArcSide {
        ArcSide {
            arc,
            side: Side::Left,
        }
    }

    pub fn right(arc: Arc) -> ArcSide {
        ArcSide {
            arc,
            side: Side::Right,
        }
    }
}

impl fmt::Debug for ArcSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.side {
            Side::Left => "l",
            Side::Right => "r",
        };
        write!(f, "{}{}", self.arc, tag)
    }
}

pub struct FaceData {
    /// Face boundary walks, in order of first dart discovered.
    pub faces: Vec<Vec<ArcSide>>,
    /// Face on the left of each arc (looking along its orientation).
    pub left: BTreeMap<Arc, usize>,
    /// Face on the right of each arc.
    pub right: BTreeMap<Arc, usize>,
    /// Node indices grouped by connected piece of the diagram.
    pub pieces: Vec<Vec<usize>>,
    /// Genus of each connected piece's supporting surface.
    pub genus: Vec<usize>,
}

impl FaceData {
    pub fn total_genus(&self) -> usize {
        self.genus.iter().sum()
    }
}

/// Dart: one end of one arc occurrence, addressed as (node, slot).
type Dart = (usize, usize);

pub(super) fn trace(pd: &PdCode) -> FaceData {
    let nodes = pd.nodes();
    // the two darts of each arc
    let mut ends: BTreeMap<Arc, Vec<Dart>> = BTreeMap::new();
    let mut incoming: Vec<Vec<bool>> = Vec::with_capacity(nodes.len());
    let mut degree: Vec<usize> = Vec::with_capacity(nodes.len());
    for (n, node) in nodes.iter().enumerate() {
        let arcs = node.arcs();
        degree.push(arcs.len());
        incoming.push(node.incoming());
        for (s, arc) in arcs.into_iter().enumerate() {
            ends.entry(arc).or_default().push((n, s));
        }
    }
    let other = |d: Dart| -> Dart {
        let arc = nodes[d.0].arcs()[d.1];
        let pair = &ends[&arc];
        debug_assert_eq!(pair.len(), 2, "arc {arc} must occur exactly twice");
        if pair[0] == d {
            pair[1]
        } else {
            pair[0]
        }
    };

    // orbits of sigma . alpha, each started from its smallest dart
    let mut face_of: BTreeMap<Dart, usize> = BTreeMap::new();
    let mut faces: Vec<Vec<ArcSide>> = Vec::new();
    let mut face_node: Vec<usize> = Vec::new();
    for n in 0..nodes.len() {
        for s in 0..degree[n] {
            if face_of.contains_key(&(n, s)) {
                continue;
            }
            let id = faces.len();
            face_node.push(n);
            let mut walk = Vec::new();
            let mut d = (n, s);
            loop {
                face_of.insert(d, id);
                let arc = nodes[d.0].arcs()[d.1];
                let side = if incoming[d.0][d.1] {
                    Side::Left
                } else {
                    Side::Right
                };
                walk.push(ArcSide { arc, side });
                let (m, t) = other(d);
                d = (m, (t + 1) % degree[m]);
                if d == (n, s) {
                    break;
                }
            }
            faces.push(walk);
        }
    }

    let mut left = BTreeMap::new();
    let mut right = BTreeMap::new();
    for (&arc, pair) in &ends {
        for &d in pair {
            let f = face_of[&d];
            if incoming[d.0][d.1] {
                left.insert(arc, f);
            } else {
                right.insert(arc, f);
            }
        }
    }

    // connected pieces of the node graph
    let mut piece_of: Vec<Option<usize>> = vec![None; nodes.len()];
    let mut pieces: Vec<Vec<usize>> = Vec::new();
    for start in 0..nodes.len() {
        if piece_of[start].is_some() {
            continue;
        }
        let id = pieces.len();
        let mut queue = vec![start];
        piece_of[start] = Some(id);
        let mut members = Vec::new();
        while let Some(n) = queue.pop() {
            members.push(n);
            for s in 0..degree[n] {
                let (m, _) = other((n, s));
                if piece_of[m].is_none() {
                    piece_of[m] = Some(id);
                    queue.push(m);
                }
            }
        }
        members.sort_unstable();
        pieces.push(members);
    }

    // Euler characteristic per piece: V - E + F = 2 - 2g
    let mut genus = Vec::with_capacity(pieces.len());
    for (id, members) in pieces.iter().enumerate() {
        let v = members.len() as i64;
        let e = ends
            .values()
            .filter(|pair| piece_of[pair[0].0] == Some(id))
            .count() as i64;
        let f = face_node
            .iter()
            .filter(|&&n| piece_of[n] == Some(id))
            .count() as i64;
        let chi = v - e + f;
        debug_assert!(chi <= 2 && chi % 2 == 0, "bad Euler characteristic {chi}");
        genus.push(((2 - chi) / 2) as usize);
    }

    FaceData {
        faces,
        left,
        right,
        pieces,
        genus,
    }
}
