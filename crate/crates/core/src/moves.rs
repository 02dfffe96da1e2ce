//! Local Reidemeister modifications for invariance testing.
//!
//! These constructors splice a kink (R1) or a two-crossing poke (R2) into an
//! existing diagram. They are sampling tools: each produces a diagram of the
//! same link, so any polynomial invariant must agree before and after. A
//! general move-search or simplification engine is out of scope.
//!
//! Conventions: inserting into arc `e` keeps `e` as the segment leaving its
//! outgoing end; fresh arcs continue to `e`'s former incoming end. A poke
//! between arcs sharing a crossing corner is always planar-realizable; its
//! orientation pattern is parallel when both corner ends point the same way
//! (both into or both out of the crossing) and antiparallel otherwise.

use crate::diagram::{Diagram, OverDir};

/// The four one-crossing kink insertions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KinkStyle {
    /// Positive kink, strand passes under itself before the loop.
    PositiveUnderFirst,
    /// Positive kink, strand passes over itself before the loop.
    PositiveOverFirst,
    /// Negative kink, strand passes under itself before the loop.
    NegativeUnderFirst,
    /// Negative kink, strand passes over itself before the loop.
    NegativeOverFirst,
}

impl KinkStyle {
    /// All four styles.
    pub fn all() -> [KinkStyle; 4] {
        [
            KinkStyle::PositiveUnderFirst,
            KinkStyle::PositiveOverFirst,
            KinkStyle::NegativeUnderFirst,
            KinkStyle::NegativeOverFirst,
        ]
    }

    /// The writhe contribution of the inserted crossing.
    pub fn sign(self) -> i8 {
        match self {
            KinkStyle::PositiveUnderFirst | KinkStyle::PositiveOverFirst => 1,
            KinkStyle::NegativeUnderFirst | KinkStyle::NegativeOverFirst => -1,
        }
    }
}

/// Relative orientation of the two strands along a poke's bigon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PokeStyle {
    /// Both strands traverse the bigon in the same direction; the poked
    /// strand passes over.
    Parallel,
    /// The strands traverse the bigon in opposite directions; the poked
    /// strand passes under.
    Antiparallel,
}

/// Inserts a kink into arc `e`.
///
/// Panics when `e` is not an arc of the diagram.
pub fn insert_kink(d: &Diagram, e: u32, style: KinkStyle) -> Diagram {
    let g = max_arc(d) + 1;
    let h = g + 1;
    let mut crossings = relabel_in_end(d, e, h);
    crossings.push(match style {
        KinkStyle::PositiveUnderFirst => [e, h, g, g],
        KinkStyle::PositiveOverFirst => [g, g, h, e],
        KinkStyle::NegativeUnderFirst => [e, g, g, h],
        KinkStyle::NegativeOverFirst => [g, e, h, g],
    });
    Diagram::new(crossings, d.free_loops()).expect("kink insertion preserves validity")
}

/// Pokes arc `e` across arc `f`, adding a canceling pair of crossings.
///
/// Panics when `e` and `f` are not distinct arcs of the diagram.
pub fn poke(d: &Diagram, e: u32, f: u32, style: PokeStyle) -> Diagram {
    assert_ne!(e, f, "a poke needs two distinct arcs");
    let m = max_arc(d) + 1; // bigon piece of e
    let n = m + 1; // bigon piece of f
    let h = m + 2; // final piece of e
    let k = m + 3; // final piece of f
    let mut crossings = relabel_in_end(d, e, h);
    crossings = relabel_in_end_of(crossings, d, f, k);
    match style {
        // e: …→ c1 → m → c2 → h (over);  f: …→ c1 → n → c2 → k (under).
        PokeStyle::Parallel => {
            crossings.push([f, e, n, m]);
            crossings.push([n, h, k, m]);
        }
        // e: …→ c2 → m → c1 → h (under);  f: …→ c1 → n → c2 → k (over).
        PokeStyle::Antiparallel => {
            crossings.push([e, k, m, n]);
            crossings.push([m, f, h, n]);
        }
    }
    Diagram::new(crossings, d.free_loops()).expect("poke insertion preserves validity")
}

/// The four corners of crossing `i` as (arc, arc, realizable poke style);
/// corners whose two ends belong to the same arc are omitted.
///
/// A corner is bounded by the ends at counterclockwise-consecutive slots, so
/// poking one of its arcs across the other is a genuine planar move; the
/// style is read off the two end directions.
pub fn corner_pokes(d: &Diagram, i: usize) -> Vec<(u32, u32, PokeStyle)> {
    let cr = d.crossings()[i];
    (0..4)
        .filter(|&s| cr[s] != cr[(s + 1) % 4])
        .map(|s| {
            let style = if end_is_incoming(d, i, s) == end_is_incoming(d, i, (s + 1) % 4) {
                PokeStyle::Parallel
            } else {
                PokeStyle::Antiparallel
            };
            (cr[s], cr[(s + 1) % 4], style)
        })
        .collect()
}

/// Whether the strand end at `slot` of crossing `i` points into the crossing.
fn end_is_incoming(d: &Diagram, i: usize, slot: usize) -> bool {
    match (slot, d.component_map().over_dir[i]) {
        (0, _) => true,
        (2, _) => false,
        (1, od) => od == OverDir::BD,
        (3, od) => od == OverDir::DB,
        _ => unreachable!("slots are 0..4"),
    }
}

fn max_arc(d: &Diagram) -> u32 {
    d.crossings()
        .iter()
        .flat_map(|cr| cr.iter().copied())
        .max()
        .expect("insertion targets an arc, so the diagram has crossings")
}

/// Crossing tuples with the incoming end of arc `e` relabeled to `h`.
fn relabel_in_end(d: &Diagram, e: u32, h: u32) -> Vec<[u32; 4]> {
    relabel_in_end_of(d.crossings().to_vec(), d, e, h)
}

fn relabel_in_end_of(mut crossings: Vec<[u32; 4]>, d: &Diagram, e: u32, h: u32) -> Vec<[u32; 4]> {
    let (i, s) = d
        .crossings()
        .iter()
        .enumerate()
        .flat_map(|(i, _)| (0..4).map(move |s| (i, s)))
        .find(|&(i, s)| d.crossings()[i][s] == e && end_is_incoming(d, i, s))
        .unwrap_or_else(|| panic!("arc {e} has no incoming end"));
    crossings[i][s] = h;
    crossings
}
