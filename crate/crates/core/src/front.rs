//! Legendrian fronts as event words.
//!
//! A front is read left to right as a sequence of events acting on a stack of
//! open strands numbered from the top, starting at 1: a left cusp inserts two
//! adjacent strands, a crossing transposes two adjacent strands, and a right
//! cusp closes two adjacent strands. Cusps are the only points where a strand
//! changes horizontal direction, so strands split into *pieces* (maximal
//! runs between cusps) and each cusp constrains its two pieces to opposite
//! directions; components and orientations follow by 2-coloring that graph.
//!
//! Resolving a front to a topological diagram smooths the cusps and replaces
//! each front crossing by a transverse one in which the strand passing
//! downward (from position p to p + 1) is the over-strand.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::diagram::Diagram;

/// One step of a front word, positioned on 1-based strand slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrontEvent {
    /// Inserts two new strands at positions (pos, pos + 1).
    LeftCusp(u32),
    /// Transposes the strands at positions (pos, pos + 1); the strand moving
    /// down is the front's over-strand.
    Crossing(u32),
    /// Closes the strands at positions (pos, pos + 1).
    RightCusp(u32),
}

impl FrontEvent {
    fn pos(self) -> u32 {
        match self {
            FrontEvent::LeftCusp(p) | FrontEvent::Crossing(p) | FrontEvent::RightCusp(p) => p,
        }
    }
}

/// Errors from front parsing and validation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrontError {
    /// Malformed front text.
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    /// An event's position does not fit the current strand count.
    #[error("event {event}: {msg}")]
    Position { event: usize, msg: String },
    /// The word ends with strands still open.
    #[error("front leaves {count} strands open")]
    OpenStrands { count: usize },
    /// An orientation directive names a component that does not exist.
    #[error("orientation for component c{index}, but the front has {count} components")]
    UnknownComponent { index: usize, count: usize },
    /// Two orientation directives name the same component.
    #[error("duplicate orientation directive for component c{index}")]
    DuplicateOrientation { index: usize },
}

/// Cusp directions and crossing signs of an oriented front, with the
/// Thurston–Bennequin and rotation numbers they produce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LegendrianInvariants {
    /// positive crossings − negative crossings − cusps/2.
    pub tb: i64,
    /// (down cusps − up cusps) / 2.
    pub rotation: i64,
    /// Per component: self-crossing signs − own cusps/2.
    pub component_tb: Vec<i64>,
    /// Per component: (down − up)/2 over its own cusps.
    pub component_rotation: Vec<i64>,
    /// Cusps traversed moving upward.
    pub up_cusps: usize,
    /// Cusps traversed moving downward.
    pub down_cusps: usize,
    /// Sideward crossings: both strands run the same horizontal direction.
    pub positive_crossings: usize,
    /// Up/downward crossings: the strands run opposite directions.
    pub negative_crossings: usize,
}

/// Orientation-independent structure gathered in one validating sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Analysis {
    /// Component index per piece, in birth order of the components.
    piece_component: Vec<usize>,
    /// Piece direction under the default orientation; true means rightward.
    auto_rightward: Vec<bool>,
    component_count: usize,
    /// (is_left, upper piece) per cusp event.
    cusps: Vec<(bool, usize)>,
    /// Resolved crossing data in sweep convention.
    crossings: Vec<CrossingRec>,
    /// Components that meet no crossing resolve to crossingless circles.
    free_loops: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct CrossingRec {
    under_in: u32,
    over_out: u32,
    under_out: u32,
    over_in: u32,
    under_piece: usize,
    over_piece: usize,
}

/// A validated Legendrian front word with per-component orientations.
#[derive(Clone, PartialEq, Eq)]
pub struct FrontWord {
    events: Vec<FrontEvent>,
    /// Per component: true when the default orientation is reversed.
    reversed: Vec<bool>,
    analysis: Analysis,
}

impl FrontWord {
    /// Validates an event word under default orientations.
    pub fn new(events: Vec<FrontEvent>) -> Result<FrontWord, FrontError> {
        let analysis = analyze(&events)?;
        let reversed = vec![false; analysis.component_count];
        Ok(FrontWord {
            events,
            reversed,
            analysis,
        })
    }

    pub fn events(&self) -> &[FrontEvent] {
        &self.events
    }

    /// Components in birth order (first cusp first).
    pub fn component_count(&self) -> usize {
        self.analysis.component_count
    }

    pub fn crossing_count(&self) -> usize {
        self.analysis.crossings.len()
    }

    pub fn cusp_count(&self) -> usize {
        self.analysis.cusps.len()
    }

    /// The word with component `comp`'s orientation reversed.
    ///
    /// Panics when `comp` is out of range.
    pub fn reverse_component(&self, comp: usize) -> FrontWord {
        assert!(comp < self.component_count(), "no component {comp}");
        let mut out = self.clone();
        out.reversed[comp] = !out.reversed[comp];
        out
    }

    /// Whether component `comp` runs against the default orientation.
    pub fn component_reversed(&self, comp: usize) -> bool {
        self.reversed[comp]
    }

    /// The front of component `comp` alone: all other strands are deleted,
    /// which also drops every crossing involving them. Self-crossings, cusps,
    /// and the component's orientation are preserved, so the subfront has the
    /// same tb and rotation the component contributes to `self`.
    ///
    /// Panics when `comp` is out of range.
    pub fn component_front(&self, comp: usize) -> FrontWord {
        assert!(comp < self.component_count(), "no component {comp}");
        let owner = |piece: usize| self.analysis.piece_component[piece] == comp;
        let mut slots: Vec<usize> = Vec::new(); // piece per open strand
        let mut piece_count = 0usize;
        let mut kept = Vec::new();
        for &ev in &self.events {
            let p = ev.pos() as usize;
            // Position within the subfront: one past the kept strands above.
            let kept_pos =
                |slots: &[usize]| 1 + slots[..p - 1].iter().filter(|&&q| owner(q)).count() as u32;
            match ev {
                FrontEvent::LeftCusp(_) => {
                    let upper = piece_count;
                    piece_count += 2;
                    if owner(upper) {
                        kept.push(FrontEvent::LeftCusp(kept_pos(&slots)));
                    }
                    slots.insert(p - 1, upper);
                    slots.insert(p, upper + 1);
                }
                FrontEvent::Crossing(_) => {
                    if owner(slots[p - 1]) && owner(slots[p]) {
                        kept.push(FrontEvent::Crossing(kept_pos(&slots)));
                    }
                    slots.swap(p - 1, p);
                }
                FrontEvent::RightCusp(_) => {
                    if owner(slots[p - 1]) {
                        kept.push(FrontEvent::RightCusp(kept_pos(&slots)));
                    }
                    slots.drain(p - 1..p + 1);
                }
            }
        }
        let mut out = FrontWord::new(kept).expect("a single component stands alone");
        if self.reversed[comp] {
            out = out.reverse_component(0);
        }
        out
    }

    fn piece_rightward(&self, piece: usize) -> bool {
        let a = &self.analysis;
        a.auto_rightward[piece] != self.reversed[a.piece_component[piece]]
    }

    /// Cusp directions, crossing signs, tb, and rotation numbers.
    pub fn invariants(&self) -> LegendrianInvariants {
        let a = &self.analysis;
        let n = a.component_count;
        let mut component_tb = vec![0i64; n];
        let mut component_rotation = vec![0i64; n];
        let mut component_cusps = vec![0i64; n];
        let (mut up, mut down) = (0usize, 0usize);
        for &(is_left, upper) in &a.cusps {
            // A left cusp turns upward exactly when its upper branch leaves
            // rightward; a right cusp turns downward in that same case.
            let upward = is_left == self.piece_rightward(upper);
            let comp = a.piece_component[upper];
            component_cusps[comp] += 1;
            if upward {
                up += 1;
                component_rotation[comp] -= 1;
            } else {
                down += 1;
                component_rotation[comp] += 1;
            }
        }
        let (mut pos, mut neg) = (0usize, 0usize);
        let mut tb = 0i64;
        for cr in &a.crossings {
            let same = self.piece_rightward(cr.under_piece) == self.piece_rightward(cr.over_piece);
            let (uc, oc) = (
                a.piece_component[cr.under_piece],
                a.piece_component[cr.over_piece],
            );
            let sign: i64 = if same { 1 } else { -1 };
            if same {
                pos += 1;
            } else {
                neg += 1;
            }
            tb += sign;
            if uc == oc {
                component_tb[uc] += sign;
            }
        }
        tb -= a.cusps.len() as i64 / 2;
        for c in 0..n {
            component_tb[c] -= component_cusps[c] / 2;
            component_rotation[c] /= 2;
        }
        LegendrianInvariants {
            tb,
            rotation: (down as i64 - up as i64) / 2,
            component_tb,
            component_rotation,
            up_cusps: up,
            down_cusps: down,
            positive_crossings: pos,
            negative_crossings: neg,
        }
    }

    /// The Thurston–Bennequin number of the whole front.
    pub fn thurston_bennequin(&self) -> i64 {
        self.invariants().tb
    }

    /// The rotation number of the whole front.
    pub fn rotation(&self) -> i64 {
        self.invariants().rotation
    }

    /// Signs of the front's crossings in event order.
    pub fn crossing_signs(&self) -> Vec<i8> {
        self.analysis
            .crossings
            .iter()
            .map(|cr| {
                if self.piece_rightward(cr.under_piece) == self.piece_rightward(cr.over_piece) {
                    1
                } else {
                    -1
                }
            })
            .collect()
    }

    /// The topological diagram of the front: cusps smoothed, one transverse
    /// crossing per crossing event with the descending strand on top.
    pub fn resolve_to_diagram(&self) -> Diagram {
        let a = &self.analysis;
        let tuples: Vec<[u32; 4]> = a
            .crossings
            .iter()
            .map(|cr| {
                // Counterclockwise from the under-strand's incoming end; when
                // the under-strand runs right to left, its incoming end is
                // the sweep's outgoing one, a rotation by two slots.
                if self.piece_rightward(cr.under_piece) {
                    [cr.under_in, cr.over_out, cr.under_out, cr.over_in]
                } else {
                    [cr.under_out, cr.over_in, cr.under_in, cr.over_out]
                }
            })
            .collect();
        Diagram::new(tuples, a.free_loops).expect("front resolutions are valid diagrams")
    }

    /// Concatenates two fronts into a split union; the right word's
    /// components and orientations follow the left word's.
    pub fn split_union(&self, other: &FrontWord) -> FrontWord {
        let mut events = self.events.clone();
        events.extend_from_slice(&other.events);
        let mut out = FrontWord::new(events).expect("both halves validated");
        for (c, &rev) in self
            .reversed
            .iter()
            .chain(other.reversed.iter())
            .enumerate()
        {
            out.reversed[c] = rev;
        }
        out
    }

    /// Inserts a zigzag into the strand at slot `slot` just before event
    /// `at` (both cusps point into the strand from below when `above` is
    /// false, from above otherwise). tb drops by 1, rotation moves by ±1.
    ///
    /// Panics when no strand occupies `slot` at that moment.
    pub fn stabilize(&self, at: usize, slot: u32, above: bool) -> FrontWord {
        assert!(at <= self.events.len(), "event index out of range");
        let count = self.strand_count_before(at);
        assert!(
            slot >= 1 && (slot as usize) <= count,
            "no strand at slot {slot}"
        );
        let mut events = self.events.clone();
        let (cusp, join) = if above {
            (slot, slot + 1)
        } else {
            (slot + 1, slot)
        };
        events.insert(at, FrontEvent::LeftCusp(cusp));
        events.insert(at + 1, FrontEvent::RightCusp(join));
        let mut out = FrontWord::new(events).expect("zigzag insertion preserves validity");
        // Component birth order is unchanged: the zigzag adds no component.
        out.reversed = self.reversed.clone();
        out
    }

    fn strand_count_before(&self, at: usize) -> usize {
        let mut count = 0usize;
        for ev in &self.events[..at] {
            match ev {
                FrontEvent::LeftCusp(_) => count += 2,
                FrontEvent::Crossing(_) => {}
                FrontEvent::RightCusp(_) => count -= 2,
            }
        }
        count
    }

    /// Deterministic schematic SVG: one polyline run per strand piece, a
    /// `cusp` glyph per cusp, and a `crossing` marker per crossing with the
    /// under-strand drawn with a gap.
    pub fn render_svg(&self) -> String {
        render(self)
    }
}

impl fmt::Display for FrontWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut tokens: Vec<String> = self
            .events
            .iter()
            .map(|ev| match ev {
                FrontEvent::LeftCusp(p) => format!("u{p}"),
                FrontEvent::Crossing(p) => format!("x{p}"),
                FrontEvent::RightCusp(p) => format!("d{p}"),
            })
            .collect();
        for (c, &rev) in self.reversed.iter().enumerate() {
            if rev {
                tokens.push(format!("orient c{} -", c + 1));
            }
        }
        f.write_str(&tokens.join(" "))
    }
}

impl fmt::Debug for FrontWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FrontWord({self})")
    }
}

/// The validating sweep: tracks open slots, builds the piece graph, records
/// cusps and crossings, and 2-colors pieces into oriented components.
fn analyze(events: &[FrontEvent]) -> Result<Analysis, FrontError> {
    let mut slots: Vec<(u32, usize)> = Vec::new(); // (arc, piece) per open strand
    let mut next_arc = 1u32;
    let mut piece_count = 0usize;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut cusps = Vec::new();
    let mut crossings = Vec::new();
    let mut merges: Vec<(u32, u32)> = Vec::new();

    for (idx, &ev) in events.iter().enumerate() {
        let p = ev.pos() as usize;
        match ev {
            FrontEvent::LeftCusp(_) => {
                if p < 1 || p > slots.len() + 1 {
                    return Err(bad_pos(idx, p, "left cusp", slots.len() + 1));
                }
                let arc = next_arc;
                next_arc += 1;
                let (upper, lower) = (piece_count, piece_count + 1);
                piece_count += 2;
                edges.push((upper, lower));
                cusps.push((true, upper));
                slots.insert(p - 1, (arc, upper));
                slots.insert(p, (arc, lower));
            }
            FrontEvent::Crossing(_) => {
                if p < 1 || slots.len() < 2 || p > slots.len() - 1 {
                    return Err(bad_pos(idx, p, "crossing", slots.len().saturating_sub(1)));
                }
                let (over_in, over_piece) = slots[p - 1];
                let (under_in, under_piece) = slots[p];
                let under_out = next_arc;
                let over_out = next_arc + 1;
                next_arc += 2;
                crossings.push(CrossingRec {
                    under_in,
                    over_out,
                    under_out,
                    over_in,
                    under_piece,
                    over_piece,
                });
                slots[p - 1] = (under_out, under_piece);
                slots[p] = (over_out, over_piece);
            }
            FrontEvent::RightCusp(_) => {
                if p < 1 || slots.len() < 2 || p > slots.len() - 1 {
                    return Err(bad_pos(idx, p, "right cusp", slots.len().saturating_sub(1)));
                }
                let (upper_arc, upper) = slots[p - 1];
                let (lower_arc, lower) = slots[p];
                edges.push((upper, lower));
                cusps.push((false, upper));
                merges.push((upper_arc, lower_arc));
                slots.drain(p - 1..p + 1);
            }
        }
    }
    if !slots.is_empty() {
        return Err(FrontError::OpenStrands { count: slots.len() });
    }

    // 2-color the piece graph: cusp-joined pieces run opposite ways. Closed
    // front curves flip direction an even number of times, so no conflict
    // can arise. Default orientation: each component's first-born piece runs
    // rightward.
    let mut adjacency = vec![Vec::new(); piece_count];
    for &(a, b) in &edges {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    let mut piece_component = vec![usize::MAX; piece_count];
    let mut auto_rightward = vec![false; piece_count];
    let mut component_count = 0usize;
    for root in 0..piece_count {
        if piece_component[root] != usize::MAX {
            continue;
        }
        let comp = component_count;
        component_count += 1;
        piece_component[root] = comp;
        auto_rightward[root] = true;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &w in &adjacency[v] {
                if piece_component[w] == usize::MAX {
                    piece_component[w] = comp;
                    auto_rightward[w] = !auto_rightward[v];
                    stack.push(w);
                } else {
                    debug_assert_ne!(auto_rightward[w], auto_rightward[v]);
                }
            }
        }
    }

    // Right cusps merge the two arcs they join into one.
    let mut rep: BTreeMap<u32, u32> = BTreeMap::new();
    fn find(rep: &mut BTreeMap<u32, u32>, x: u32) -> u32 {
        let p = *rep.get(&x).unwrap_or(&x);
        if p == x {
            x
        } else {
            let r = find(rep, p);
            rep.insert(x, r);
            r
        }
    }
    for &(a, b) in &merges {
        let (ra, rb) = (find(&mut rep, a), find(&mut rep, b));
        if ra != rb {
            rep.insert(ra.max(rb), ra.min(rb));
        }
    }
    for cr in &mut crossings {
        cr.under_in = find(&mut rep, cr.under_in);
        cr.over_out = find(&mut rep, cr.over_out);
        cr.under_out = find(&mut rep, cr.under_out);
        cr.over_in = find(&mut rep, cr.over_in);
    }

    let mut touches_crossing = vec![false; component_count];
    for cr in &crossings {
        touches_crossing[piece_component[cr.under_piece]] = true;
        touches_crossing[piece_component[cr.over_piece]] = true;
    }
    let free_loops = touches_crossing.iter().filter(|&&t| !t).count() as u32;

    Ok(Analysis {
        piece_component,
        auto_rightward,
        component_count,
        cusps,
        crossings,
        free_loops,
    })
}

fn bad_pos(idx: usize, p: usize, what: &str, max: usize) -> FrontError {
    FrontError::Position {
        event: idx + 1,
        msg: format!("{what} at position {p}, but valid positions are 1..={max}"),
    }
}

impl FromStr for FrontWord {
    type Err = FrontError;

    /// Parses whitespace-separated tokens `u<pos>`, `x<pos>`, `d<pos>`, the
    /// directive `orient c<i> +|-` (components numbered from 1 in birth
    /// order), and `#` comments running to end of line.
    fn from_str(text: &str) -> Result<FrontWord, FrontError> {
        let mut events = Vec::new();
        let mut orients: Vec<(usize, bool, (usize, usize))> = Vec::new();
        let mut tokens = tokenize(text).into_iter().peekable();
        while let Some(tok) = tokens.next() {
            let Token { line, col, text } = tok;
            let syntax = |msg: &str| FrontError::Syntax {
                line,
                col,
                msg: msg.into(),
            };
            match text.as_str() {
                "orient" => {
                    let comp = tokens
                        .next()
                        .filter(|t| t.text.starts_with('c'))
                        .and_then(|t| t.text[1..].parse::<usize>().ok())
                        .ok_or_else(|| syntax("expected component c<i> after orient"))?;
                    if comp == 0 {
                        return Err(syntax("components are numbered from c1"));
                    }
                    let reversed = match tokens.next().as_ref().map(|t| t.text.as_str()) {
                        Some("+") => false,
                        Some("-") => true,
                        _ => return Err(syntax("expected + or - after the component")),
                    };
                    orients.push((comp - 1, reversed, (line, col)));
                }
                _ => {
                    let (kind, rest) = text.split_at(1);
                    let pos: u32 = rest
                        .parse()
                        .map_err(|_| syntax(&format!("expected a position in {text:?}")))?;
                    events.push(match kind {
                        "u" => FrontEvent::LeftCusp(pos),
                        "x" => FrontEvent::Crossing(pos),
                        "d" => FrontEvent::RightCusp(pos),
                        _ => return Err(syntax(&format!("unknown token {text:?}"))),
                    });
                }
            }
        }
        let mut front = FrontWord::new(events)?;
        let mut seen = vec![false; front.component_count()];
        for (comp, reversed, _) in orients {
            if comp >= front.component_count() {
                return Err(FrontError::UnknownComponent {
                    index: comp + 1,
                    count: front.component_count(),
                });
            }
            if seen[comp] {
                return Err(FrontError::DuplicateOrientation { index: comp + 1 });
            }
            seen[comp] = true;
            front.reversed[comp] = reversed;
        }
        Ok(front)
    }
}

struct Token {
    line: usize,
    col: usize,
    text: String,
}

fn tokenize(text: &str) -> Vec<Token> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        let mut col = 0usize;
        let mut chars = body.char_indices().peekable();
        while let Some(&(i, c)) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
                continue;
            }
            let start = i;
            let mut text = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if c.is_whitespace() {
                    break;
                }
                text.push(c);
                chars.next();
            }
            col = start + 1;
            out.push(Token {
                line: ln + 1,
                col,
                text,
            });
        }
        let _ = col;
    }
    out
}

/// Builds a random valid front of at most `max_events` events: weighted
/// event choices with a closing repair that caps every open strand.
pub fn random_front<R: Rng>(rng: &mut R, max_events: usize) -> FrontWord {
    assert!(
        max_events >= 2,
        "a nonempty front needs at least two events"
    );
    let mut events: Vec<FrontEvent> = Vec::new();
    let mut count = 0usize;
    loop {
        // Budget the events already emitted plus the right cusps a closing
        // repair would need.
        let used = events.len() + count / 2;
        if used >= max_events {
            break;
        }
        let mut choices: Vec<u8> = Vec::new();
        if used + 2 <= max_events {
            choices.push(b'u');
        }
        if count >= 2 {
            choices.extend_from_slice(b"xxd");
        }
        let Some(&choice) = choices.choose(rng) else {
            break;
        };
        match choice {
            b'u' => {
                events.push(FrontEvent::LeftCusp(rng.gen_range(1..=count as u32 + 1)));
                count += 2;
            }
            b'x' => {
                events.push(FrontEvent::Crossing(rng.gen_range(1..=count as u32 - 1)));
            }
            _ => {
                events.push(FrontEvent::RightCusp(rng.gen_range(1..=count as u32 - 1)));
                count -= 2;
            }
        }
    }
    while count > 0 {
        events.push(FrontEvent::RightCusp(rng.gen_range(1..=count as u32 - 1)));
        count -= 2;
    }
    FrontWord::new(events).expect("generated words are valid by construction")
}

const COLUMN: f64 = 48.0;
const ROW: f64 = 32.0;
const MARGIN: f64 = 24.0;

/// Schematic renderer. Strands are polylines through their slot heights per
/// event column; crossings interpolate the swap with the under-strand gapped.
fn render(front: &FrontWord) -> String {
    let events = &front.events;
    let mut slots: Vec<usize> = Vec::new(); // piece per open slot
    let mut piece_count = 0usize;
    // Point runs per piece; a piece may be split by under-gaps into several.
    let mut runs: Vec<Vec<Vec<(f64, f64)>>> = Vec::new();
    let mut glyphs: Vec<String> = Vec::new();
    let mut max_rows = 2usize;

    let x_of = |t: usize| MARGIN + COLUMN * t as f64;
    let y_of = |slot: usize| MARGIN + ROW * slot as f64;

    for (t, &ev) in events.iter().enumerate() {
        let p = ev.pos() as usize;
        let (x0, x1) = (x_of(t), x_of(t + 1));
        // Extend every untouched strand straight across this column.
        let extend = |runs: &mut Vec<Vec<Vec<(f64, f64)>>>, slots: &[usize], skip: &[usize]| {
            for (s, &piece) in slots.iter().enumerate() {
                if !skip.contains(&s) {
                    let y = y_of(s);
                    runs[piece]
                        .last_mut()
                        .expect("open piece has a run")
                        .push((x1, y));
                    let _ = y;
                }
            }
        };
        match ev {
            FrontEvent::LeftCusp(_) => {
                extend(&mut runs, &slots, &[]);
                let (upper, lower) = (piece_count, piece_count + 1);
                piece_count += 2;
                runs.push(vec![vec![
                    (x0 + COLUMN / 2.0, (y_of(p - 1) + y_of(p)) / 2.0),
                    (x1, y_of(p - 1)),
                ]]);
                runs.push(vec![vec![
                    (x0 + COLUMN / 2.0, (y_of(p - 1) + y_of(p)) / 2.0),
                    (x1, y_of(p)),
                ]]);
                glyphs.push(format!(
                    "<circle class=\"cusp\" cx=\"{:.1}\" cy=\"{:.1}\" r=\"2.5\"/>",
                    x0 + COLUMN / 2.0,
                    (y_of(p - 1) + y_of(p)) / 2.0
                ));
                slots.insert(p - 1, upper);
                slots.insert(p, lower);
                // Re-route strands below the insertion point.
                for (s, &piece) in slots.iter().enumerate() {
                    if s > p {
                        runs[piece].last_mut().expect("run").push((x1, y_of(s)));
                    }
                }
            }
            FrontEvent::Crossing(_) => {
                extend(&mut runs, &slots, &[p - 1, p]);
                let over = slots[p - 1];
                let under = slots[p];
                let (ya, yb) = (y_of(p - 1), y_of(p));
                // Over-strand: unbroken diagonal down.
                runs[over].last_mut().expect("run").push((x1, yb));
                // Under-strand: gap around the midpoint.
                runs[under]
                    .last_mut()
                    .expect("run")
                    .push((x0 + 0.35 * COLUMN, yb + 0.65 * (ya - yb)));
                runs[under].push(vec![(x0 + 0.65 * COLUMN, yb + 0.35 * (ya - yb)), (x1, ya)]);
                glyphs.push(format!(
                    "<circle class=\"crossing\" cx=\"{:.1}\" cy=\"{:.1}\" r=\"1.5\"/>",
                    x0 + COLUMN / 2.0,
                    (ya + yb) / 2.0
                ));
                slots.swap(p - 1, p);
            }
            FrontEvent::RightCusp(_) => {
                extend(&mut runs, &slots, &[p - 1, p]);
                let tip = (x0 + COLUMN / 2.0, (y_of(p - 1) + y_of(p)) / 2.0);
                runs[slots[p - 1]].last_mut().expect("run").push(tip);
                runs[slots[p]].last_mut().expect("run").push(tip);
                glyphs.push(format!(
                    "<circle class=\"cusp\" cx=\"{:.1}\" cy=\"{:.1}\" r=\"2.5\"/>",
                    tip.0, tip.1
                ));
                slots.drain(p - 1..p + 1);
                for (s, &piece) in slots.iter().enumerate() {
                    if s >= p - 1 {
                        runs[piece].last_mut().expect("run").push((x1, y_of(s)));
                    }
                }
            }
        }
        max_rows = max_rows.max(slots.len() + 1);
    }

    let width = MARGIN * 2.0 + COLUMN * (events.len() as f64 + 1.0);
    let height = MARGIN * 2.0 + ROW * max_rows as f64;
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" \
         viewBox=\"0 0 {width:.0} {height:.0}\">\n"
    ));
    svg.push_str(
        "<style>.strand{fill:none;stroke:#222;stroke-width:1.6}\
         .cusp{fill:#a33}.crossing{fill:none}</style>\n",
    );
    for piece_runs in &runs {
        for run in piece_runs {
            let points: Vec<String> = run.iter().map(|(x, y)| format!("{x:.1},{y:.1}")).collect();
            svg.push_str(&format!(
                "<polyline class=\"strand\" points=\"{}\"/>\n",
                points.join(" ")
            ));
        }
    }
    for g in &glyphs {
        svg.push_str(g);
        svg.push('\n');
    }
    svg.push_str("</svg>\n");
    svg
}
