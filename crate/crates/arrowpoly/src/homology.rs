//! Dehn numberings of diagram faces.
//!
//! A Dehn numbering assigns a value to every face so that crossing any
//! arc from its right side to its left side increases the value by
//! exactly 1. Over Z/2 this is a checkerboard coloring. Existence only
//! depends on the cycle space of the face adjacency graph: a spanning
//! forest fixes candidate values, and each remaining arc either checks
//! out or yields a closed face cycle whose steps sum to something other
//! than zero. The gcd of those sums, the defect, decides every modulus
//! at once: a Z/n numbering exists iff n divides the defect, and an
//! integral one iff the defect is 0.

use crate::pd::{Arc, PdCode};
use num_integer::Integer;

/// Face values satisfying every arc constraint for the given modulus
/// (`modulus == 0` means the integers).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DehnNumbering {
    pub modulus: u32,
    /// value per face, indexed as in [`PdCode::faces`]
    pub values: Vec<i64>,
}

impl DehnNumbering {
    /// Check every arc: left face value = right face value + 1.
    pub fn verify(&self, pd: &PdCode) -> bool {
        let fd = pd.faces();
        fd.left.iter().all(|(arc, &l)| {
            let r = fd.right[arc];
            reduces_to_zero(self.values[l] - self.values[r] - 1, self.modulus)
        })
    }
}

/// A closed walk through faces whose crossing steps sum to a value the
/// modulus does not kill, certifying that no numbering exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DehnWitness {
    pub modulus: u32,
    /// each step crosses `arc`; +1 right-to-left, -1 left-to-right
    pub steps: Vec<(Arc, i8)>,
    pub sum: i64,
}

impl DehnWitness {
    /// Check the steps chain into a closed face walk and their sum is
    /// nonzero for the modulus.
    pub fn verify(&self, pd: &PdCode) -> bool {
        if self.steps.is_empty() {
            return false;
        }
        let fd = pd.faces();
        let ends = |&(arc, dir): &(Arc, i8)| match dir {
            1 => (fd.right[&arc], fd.left[&arc]),
            _ => (fd.left[&arc], fd.right[&arc]),
        };
        let closed = self
            .steps
            .iter()
            .zip(self.steps.iter().cycle().skip(1))
            .all(|(s, t)| ends(s).1 == ends(t).0);
        let sum: i64 = self.steps.iter().map(|&(_, d)| d as i64).sum();
        closed && sum == self.sum && !reduces_to_zero(sum, self.modulus)
    }
}

fn reduces_to_zero(x: i64, modulus: u32) -> bool {
    match modulus {
        0 => x == 0,
        n => x.rem_euclid(n as i64) == 0,
    }
}

struct Forest {
    /// per face: parent face, crossing arc, step sign parent -> child
    parent: Vec<Option<(usize, Arc, i8)>>,
    depth: Vec<usize>,
    values: Vec<i64>,
    /// non-tree constraints: (from face, to face, arc, sign, violation)
    violations: Vec<(usize, usize, Arc, i8, i64)>,
}

fn grow_forest(pd: &PdCode) -> Forest {
    let fd = pd.faces();
    let nf = fd.faces.len();
    // undirected adjacency: crossing `arc` from `face` with step `sign`
    let mut adj: Vec<Vec<(usize, Arc, i8)>> = vec![Vec::new(); nf];
    for (&arc, &l) in &fd.left {
        let r = fd.right[&arc];
        adj[r].push((l, arc, 1));
        adj[l].push((r, arc, -1));
    }
    let mut forest = Forest {
        parent: vec![None; nf],
        depth: vec![0; nf],
        values: vec![0; nf],
        violations: Vec::new(),
    };
    let mut assigned = vec![false; nf];
    for root in 0..nf {
        if assigned[root] {
            continue;
        }
        assigned[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(v, arc, sign) in &adj[u] {
                if !assigned[v] {
                    assigned[v] = true;
                    forest.parent[v] = Some((u, arc, sign));
                    forest.depth[v] = forest.depth[u] + 1;
                    forest.values[v] = forest.values[u] + sign as i64;
                    queue.push_back(v);
                } else if sign == 1 {
                    // each non-tree arc is checked once, via its
                    // right-to-left reading
                    let tree_edge = forest.parent[v] == Some((u, arc, 1))
                        || forest.parent[u] == Some((v, arc, -1));
                    if !tree_edge {
                        let gap = forest.values[u] + 1 - forest.values[v];
                        if gap != 0 {
                            forest.violations.push((u, v, arc, 1, gap));
                        }
                    }
                }
            }
        }
    }
    forest
}

/// Gcd of all cycle sums: 0 when an integral numbering exists, and a
/// Z/n numbering exists iff n divides it.
pub fn dehn_defect(pd: &PdCode) -> u64 {
    grow_forest(pd)
        .violations
        .iter()
        .fold(0u64, |g, &(_, _, _, _, gap)| g.gcd(&gap.unsigned_abs()))
}

/// Solve for a numbering over Z (`modulus == 0`) or Z/n, basing the
/// first face at 0, or produce a witness cycle.
pub fn solve_dehn(pd: &PdCode, modulus: u32) -> Result<DehnNumbering, DehnWitness> {
    let forest = grow_forest(pd);
    if let Some(&(u, v, arc, sign, gap)) = forest
        .violations
        .iter()
        .find(|&&(.., gap)| !reduces_to_zero(gap, modulus))
    {
        return Err(witness(&forest, u, v, arc, sign, gap, modulus));
    }
    let values = forest
        .values
        .iter()
        .map(|&x| match modulus {
            0 => x,
            n => x.rem_euclid(n as i64),
        })
        .collect();
    Ok(DehnNumbering { modulus, values })
}

/// Turn a bad non-tree arc into a closed face walk: the arc itself, then
/// the tree path from its far face back to its near face.
fn witness(
    forest: &Forest,
    u: usize,
    v: usize,
    arc: Arc,
    sign: i8,
    gap: i64,
    modulus: u32,
) -> DehnWitness {
    let mut steps = vec![(arc, sign)];
    // climb both endpoints to their common ancestor
    let (mut x, mut y) = (v, u); // walk x -> lca -> y to close the cycle
    let mut down = Vec::new(); // lca -> y, collected in reverse
    while forest.depth[x] > forest.depth[y] {
        let (p, a, s) = forest.parent[x].unwrap();
        steps.push((a, -s));
        x = p;
    }
    while forest.depth[y] > forest.depth[x] {
        let (p, a, s) = forest.parent[y].unwrap();
        down.push((a, s));
        y = p;
    }
    while x != y {
        let (px, ax, sx) = forest.parent[x].unwrap();
        steps.push((ax, -sx));
        x = px;
        let (py, ay, sy) = forest.parent[y].unwrap();
        down.push((ay, sy));
        y = py;
    }
    steps.extend(down.into_iter().rev());
    debug_assert_eq!(steps.iter().map(|&(_, d)| d as i64).sum::<i64>(), gap);
    DehnWitness {
        modulus,
        steps,
        sum: gap,
    }
}

/// Checkerboard colorability is Z/2 Dehn numberability.
pub fn checkerboard_colorable(pd: &PdCode) -> bool {
    solve_dehn(pd, 2).is_ok()
}

/// Shade the faces, value-0 faces black; `None` when not colorable.
pub fn checkerboard_coloring(pd: &PdCode) -> Option<Vec<bool>> {
    let numbering = solve_dehn(pd, 2).ok()?;
    Some(numbering.values.iter().map(|&x| x == 0).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pd::parse_pd;

    #[test]
    fn unknot_numberable_over_z() {
        let pd = parse_pd("PD[P[1,1]]").unwrap();
        assert_eq!(dehn_defect(&pd), 0);
        let numbering = solve_dehn(&pd, 0).unwrap();
        assert!(numbering.verify(&pd));
        assert_eq!(numbering.values.len(), 2);
        assert!(checkerboard_colorable(&pd));
    }

    #[test]
    fn classical_diagrams_have_no_defect() {
        for text in [
            "PD[Xm[1,4,2,5], Xm[3,6,4,1], Xm[5,2,6,3]]",
            "PD[Xp[3,1,4,6], Xp[1,5,2,4], Xp[5,3,6,2]]",
        ] {
            let pd = parse_pd(text).unwrap();
            assert_eq!(dehn_defect(&pd), 0, "{text}");
            let n = solve_dehn(&pd, 0).unwrap();
            assert!(n.verify(&pd));
            let n2 = solve_dehn(&pd, 2).unwrap();
            assert!(n2.verify(&pd));
            assert!(n2.values.iter().all(|&v| v == 0 || v == 1));
        }
    }

    #[test]
    fn one_crossing_link_is_obstructed() {
        let pd = parse_pd("PD[Xm[1,2,1,2]]").unwrap();
        assert_eq!(dehn_defect(&pd), 1);
        assert!(!checkerboard_colorable(&pd));
        assert_eq!(checkerboard_coloring(&pd), None);
        let w = solve_dehn(&pd, 2).unwrap_err();
        assert!(w.verify(&pd));
        let w = solve_dehn(&pd, 0).unwrap_err();
        assert!(w.verify(&pd));
    }

    #[test]
    fn two_crossing_knot_is_obstructed() {
        let pd = parse_pd("PD[Xm[1,2,3,4], Xm[4,3,1,2]]").unwrap();
        assert!(dehn_defect(&pd) % 2 == 1);
        assert!(!checkerboard_colorable(&pd));
        let w = solve_dehn(&pd, 2).unwrap_err();
        assert!(w.verify(&pd));
    }

    #[test]
    fn defect_decides_every_modulus() {
        for text in [
            "PD[P[1,1]]",
            "PD[Xm[1,2,1,2]]",
            "PD[Xm[1,2,3,4], Xm[4,3,1,2]]",
            "PD[Xm[2,5,1,4], Xp[4,6,3,1], Xp[6,2,5,3]]",
            "PD[Xp[8,4,7,5], Xp[4,8,3,1], Xp[2,6,1,7], Xp[6,2,5,3]]",
        ] {
            let pd = parse_pd(text).unwrap();
            let d = dehn_defect(&pd);
            for n in 0..=6u32 {
                let divides = d.is_multiple_of(n as u64);
                match solve_dehn(&pd, n) {
                    Ok(numbering) => {
                        assert!(divides, "{text} mod {n}");
                        assert!(numbering.verify(&pd), "{text} mod {n}");
                    }
                    Err(w) => {
                        assert!(!divides, "{text} mod {n}");
                        assert!(w.verify(&pd), "{text} mod {n}");
                    }
                }
            }
        }
    }

    #[test]
    fn disjoint_pieces_solved_independently() {
        let a = parse_pd("PD[Xm[1,4,2,5], Xm[3,6,4,1], Xm[5,2,6,3]]").unwrap();
        let b = parse_pd("PD[P[1,1]]").unwrap();
        let both = a.disjoint_union(&b);
        let n = solve_dehn(&both, 0).unwrap();
        assert!(n.verify(&both));
        let c = parse_pd("PD[Xm[1,2,1,2]]").unwrap();
        let mixed = a.disjoint_union(&c);
        assert_eq!(dehn_defect(&mixed), 1);
        assert!(solve_dehn(&mixed, 2).unwrap_err().verify(&mixed));
    }
}
