//! Arrow polynomial and homological arrow polynomial of framed oriented
//! virtual links, computed from PD codes by a whisker state-sum.
//!
//! A diagram is given as a PD code over nodes `P[a,b]`, `Xp[a,b,c,d]`,
//! `Xm[a,b,c,d]`. Crossings expand into weighted pairs of marked strands,
//! the strands compose until every state is a product of loop variables,
//! and the accumulated sum is the invariant:
//!
//! * [`engine::compute_arrow`] — the scalar arrow polynomial, normalized
//!   so the unknot gives 1; variables `K[n]`.
//! * [`engine::compute_harrow`] — the homological refinement for a choice
//!   of component labels; variables `X[i1,...,im]`.
//! * [`cabling::cabled_arrow`] — the arrow polynomial of the 0-framed
//!   `n`-cable.
//!
//! [`homology`] solves for Dehn numberings of the faces (checkerboard
//! colorability over Z/2), and [`analysis`] extracts diagram-independent
//! lower bounds and obstructions from the polynomials.

pub mod analysis;
pub mod cabling;
pub mod corpus;
pub mod engine;
pub mod homology;
pub mod laurent;
pub mod pd;
pub mod poly;
pub mod table;

pub use laurent::Laurent;
pub use pd::{Node, PdCode};
pub use poly::{ArrowPoly, HArrowPoly, IndexVector, Monomial, SlotVec};
