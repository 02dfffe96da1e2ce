//! Oriented link diagrams as PD codes.
//!
//! A crossing is a 4-tuple of arc identifiers `(a, b, c, d)` listed
//! counterclockwise starting from the incoming under-strand arc `a`; the
//! under-strand runs `a → c`, the over-strand occupies `b` and `d` with its
//! direction derived from global traversal consistency. Crossingless circles,
//! which PD tuples cannot express, are carried in a separate `free_loops`
//! count.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Errors from PD parsing and diagram validation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    /// An arc identifier does not appear exactly twice.
    #[error("arc {arc} appears {count} times (each arc must appear exactly twice)")]
    ArcCount { arc: u32, count: usize },
    /// No consistent strand directions exist with each tuple's first entry
    /// incoming; the offending tuple needs to be written from its other
    /// under-strand end.
    #[error("inconsistent orientation through crossing {crossing}")]
    InconsistentOrientation { crossing: usize },
    /// Malformed PD text.
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
}

/// Direction of the over-strand through a crossing tuple `(a, b, c, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OverDir {
    /// Over-strand enters at `d` and leaves at `b`; the crossing is positive.
    DB,
    /// Over-strand enters at `b` and leaves at `d`; the crossing is negative.
    BD,
}

/// Derived component structure of a validated diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentMap {
    /// Traced component index per arc.
    pub arc_component: BTreeMap<u32, usize>,
    /// Number of traced (crossing-visiting) components.
    pub traced_count: usize,
    /// Traced plus crossingless components.
    pub component_count: usize,
    /// Over-strand direction per crossing.
    pub over_dir: Vec<OverDir>,
    /// Crossing sign per crossing (+1 when the over-strand runs `d → b`).
    pub signs: Vec<i8>,
    /// Arcs of each traced component in traversal order from its basepoint.
    pub traversal: Vec<Vec<u32>>,
    /// Self-crossing indices per traced component.
    pub self_crossings: Vec<Vec<usize>>,
    /// Inter-component crossing indices per traced component.
    pub inter_crossings: Vec<Vec<usize>>,
}

/// An oriented link diagram: PD crossings plus crossingless free loops.
///
/// Construction validates the PD invariants, so every `Diagram` value is
/// well-formed and carries its derived [`ComponentMap`].
#[derive(Clone, PartialEq, Eq)]
pub struct Diagram {
    crossings: Vec<[u32; 4]>,
    free_loops: u32,
    cmap: ComponentMap,
}

/// In/out status of one crossing end.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Status {
    Unknown,
    In,
    Out,
}

impl Status {
    fn flip(self) -> Status {
        match self {
            Status::In => Status::Out,
            Status::Out => Status::In,
            Status::Unknown => Status::Unknown,
        }
    }
}

impl Diagram {
    /// Validates a crossing list and builds the diagram.
    ///
    /// Checks that every arc appears exactly twice and that consistent strand
    /// directions exist with each tuple's `a` entry incoming. (A traversal
    /// over a finite diagram that passes both checks always closes, so no
    /// separate closure check is needed.) Components that pass over at every
    /// crossing are not directed by the PD data; they get a deterministic
    /// default direction.
    pub fn new(crossings: Vec<[u32; 4]>, free_loops: u32) -> Result<Diagram, DiagramError> {
        let cmap = derive_component_map(&crossings, free_loops)?;
        Ok(Diagram {
            crossings,
            free_loops,
            cmap,
        })
    }

    /// The 0-crossing unknot diagram.
    pub fn unknot() -> Diagram {
        Diagram::unlink(1)
    }

    /// The crossingless n-component unlink diagram.
    pub fn unlink(n: u32) -> Diagram {
        Diagram::new(Vec::new(), n).expect("crossingless diagrams are always valid")
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn free_loops(&self) -> u32 {
        self.free_loops
    }

    /// The derived component structure.
    pub fn component_map(&self) -> &ComponentMap {
        &self.cmap
    }

    /// Number of components, crossingless circles included.
    pub fn component_count(&self) -> usize {
        self.cmap.component_count
    }

    /// Sign of crossing `i` by the right-hand rule: +1 when the under-strand
    /// direction is the over-strand direction rotated 90° counterclockwise.
    ///
    /// Panics when `i` is out of range.
    pub fn crossing_sign(&self, i: usize) -> i8 {
        self.cmap.signs[i]
    }

    /// Sum of crossing signs.
    pub fn writhe(&self) -> i64 {
        self.cmap.signs.iter().map(|&s| s as i64).sum()
    }

    /// Symmetric matrix of pairwise linking numbers over traced components;
    /// entry `(i, j)` for `i ≠ j` is half the signed sum of crossings between
    /// components `i` and `j`, diagonal entries are zero.
    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.cmap.traced_count;
        let mut m = vec![vec![0i64; n]; n];
        for (idx, cr) in self.crossings.iter().enumerate() {
            let under = self.cmap.arc_component[&cr[0]];
            let over = self.cmap.arc_component[&cr[1]];
            if under != over {
                m[under][over] += self.cmap.signs[idx] as i64;
                m[over][under] += self.cmap.signs[idx] as i64;
            }
        }
        for row in &mut m {
            for v in row.iter_mut() {
                *v /= 2;
            }
        }
        m
    }

    /// Rotates the tuple of crossing `i` so the old over-strand becomes the
    /// under-strand, and transplants the component map (components, arcs,
    /// traversal, and strand directions are unchanged by a switch).
    fn switch_in_place(crossings: &mut [[u32; 4]], cmap: &mut ComponentMap, i: usize) {
        let [a, b, c, d] = crossings[i];
        match cmap.over_dir[i] {
            // Over enters at d: new tuple starts there; over becomes a→c.
            OverDir::DB => {
                crossings[i] = [d, a, b, c];
                cmap.over_dir[i] = OverDir::BD;
            }
            // Over enters at b: new tuple starts there; over becomes a→c.
            OverDir::BD => {
                crossings[i] = [b, c, d, a];
                cmap.over_dir[i] = OverDir::DB;
            }
        }
        cmap.signs[i] = -cmap.signs[i];
    }

    /// The diagram with over/under exchanged at crossing `i` only.
    pub fn switch_crossing(&self, i: usize) -> Diagram {
        let mut crossings = self.crossings.clone();
        let mut cmap = self.cmap.clone();
        Self::switch_in_place(&mut crossings, &mut cmap, i);
        Diagram {
            crossings,
            free_loops: self.free_loops,
            cmap,
        }
    }

    /// The mirror image: over/under exchanged at every crossing.
    pub fn mirror(&self) -> Diagram {
        let mut crossings = self.crossings.clone();
        let mut cmap = self.cmap.clone();
        for i in 0..crossings.len() {
            Self::switch_in_place(&mut crossings, &mut cmap, i);
        }
        Diagram {
            crossings,
            free_loops: self.free_loops,
            cmap,
        }
    }

    /// The orientation-respecting smoothing at crossing `i`: the incoming
    /// under-arc joins the over-strand's outgoing arc.
    pub fn smooth_0(&self, i: usize) -> Diagram {
        let [a, b, c, d] = self.crossings[i];
        match self.cmap.over_dir[i] {
            OverDir::DB => self.splice(i, (a, b), (c, d)),
            OverDir::BD => self.splice(i, (a, d), (c, b)),
        }
    }

    /// The other smoothing at crossing `i`; a strand segment reverses, so the
    /// result's orientations are re-derived from scratch.
    pub fn smooth_inf(&self, i: usize) -> Diagram {
        let [a, b, c, d] = self.crossings[i];
        match self.cmap.over_dir[i] {
            OverDir::DB => self.splice(i, (a, d), (c, b)),
            OverDir::BD => self.splice(i, (a, b), (c, d)),
        }
    }

    /// Deletes crossing `i` and merges the two arc pairs. A merge class whose
    /// arcs no longer touch any crossing closed into a crossingless circle.
    fn splice(&self, i: usize, p1: (u32, u32), p2: (u32, u32)) -> Diagram {
        let mut uf = UnionFind::new();
        uf.union(p1.0, p1.1);
        uf.union(p2.0, p2.1);
        let mut crossings: Vec<[u32; 4]> = Vec::with_capacity(self.crossings.len() - 1);
        for (j, cr) in self.crossings.iter().enumerate() {
            if j != i {
                crossings.push(cr.map(|arc| uf.find(arc)));
            }
        }
        let mut touched: Vec<u32> = [p1.0, p1.1, p2.0, p2.1]
            .iter()
            .map(|&arc| uf.find(arc))
            .collect();
        touched.sort_unstable();
        touched.dedup();
        let mut new_loops = 0;
        for root in touched {
            if !crossings.iter().any(|cr| cr.contains(&root)) {
                new_loops += 1;
            }
        }
        renormalize(crossings, self.free_loops + new_loops)
            .expect("smoothing a valid diagram yields a valid diagram")
    }

    /// Reverses the orientation of traced component `comp` by rewriting each
    /// of its under-strand passes from the other end (a rotation by two
    /// slots); revalidation then propagates the reversed direction through
    /// the component's over-strand passes. A component that passes over at
    /// every crossing carries no PD-expressible direction, so reversing it
    /// returns an equal diagram.
    ///
    /// Panics when `comp` is not a traced component index.
    pub fn reverse_component(&self, comp: usize) -> Diagram {
        assert!(comp < self.cmap.traced_count, "no traced component {comp}");
        let rotated: Vec<[u32; 4]> = self
            .crossings
            .iter()
            .map(|&[a, b, c, d]| {
                if self.cmap.arc_component[&a] == comp {
                    [c, d, a, b]
                } else {
                    [a, b, c, d]
                }
            })
            .collect();
        Diagram::new(rotated, self.free_loops)
            .expect("reversing one component keeps directions consistent")
    }

    /// Disjoint union with `other`, arcs of `other` relabeled past ours.
    pub fn split_union(&self, other: &Diagram) -> Diagram {
        let offset = self.max_arc_id();
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|cr| cr.map(|arc| arc + offset)));
        Diagram::new(crossings, self.free_loops + other.free_loops)
            .expect("disjoint union of valid diagrams is valid")
    }

    fn max_arc_id(&self) -> u32 {
        self.crossings
            .iter()
            .flat_map(|cr| cr.iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// A byte string equal for any two diagrams that differ only by arc
    /// relabeling and crossing-list permutation: the lexicographically least
    /// encoding over every (component order, basepoint arc) traversal start.
    pub fn canonical_key(&self) -> Vec<u8> {
        let n = self.cmap.traced_count;
        let mut best: Option<Vec<u8>> = None;
        let mut order: Vec<usize> = (0..n).collect();
        permute(&mut order, 0, &mut |order| {
            // Basepoint choices: one arc per component, in the chosen order.
            let mut choice = vec![0usize; n];
            loop {
                let enc = self.encode_with(order, &choice);
                if best.as_ref().is_none_or(|b| enc < *b) {
                    best = Some(enc);
                }
                // Advance the mixed-radix basepoint counter.
                let mut k = 0;
                loop {
                    if k == n {
                        return;
                    }
                    choice[k] += 1;
                    if choice[k] < self.cmap.traversal[order[k]].len() {
                        break;
                    }
                    choice[k] = 0;
                    k += 1;
                }
            }
        });
        let mut key = best.unwrap_or_default();
        key.extend_from_slice(&self.free_loops.to_be_bytes());
        key
    }

    /// Encodes the diagram after relabeling arcs 1.. in first-visit order
    /// along the chosen traversal starts.
    fn encode_with(&self, order: &[usize], choice: &[usize]) -> Vec<u8> {
        let mut relabel: BTreeMap<u32, u32> = BTreeMap::new();
        let mut next = 1u32;
        for (k, &comp) in order.iter().enumerate() {
            let arcs = &self.cmap.traversal[comp];
            for idx in 0..arcs.len() {
                let arc = arcs[(choice[k] + idx) % arcs.len()];
                relabel.entry(arc).or_insert_with(|| {
                    let id = next;
                    next += 1;
                    id
                });
            }
        }
        let mut tuples: Vec<[u32; 4]> = self
            .crossings
            .iter()
            .map(|cr| cr.map(|arc| relabel[&arc]))
            .collect();
        tuples.sort_unstable();
        let mut out = Vec::with_capacity(tuples.len() * 16);
        for t in tuples {
            for arc in t {
                out.extend_from_slice(&arc.to_be_bytes());
            }
        }
        out
    }
}

/// Calls `f` with every permutation of `items[at..]` (Heap-style recursion).
fn permute<F: FnMut(&[usize])>(items: &mut Vec<usize>, at: usize, f: &mut F) {
    if at == items.len() {
        f(items);
        return;
    }
    for k in at..items.len() {
        items.swap(at, k);
        permute(items, at + 1, f);
        items.swap(at, k);
    }
}

struct UnionFind {
    parent: BTreeMap<u32, u32>,
}

impl UnionFind {
    fn new() -> Self {
        UnionFind {
            parent: BTreeMap::new(),
        }
    }

    fn find(&mut self, x: u32) -> u32 {
        let p = *self.parent.get(&x).unwrap_or(&x);
        if p == x {
            return x;
        }
        let root = self.find(p);
        self.parent.insert(x, root);
        root
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        // Keep the smaller id as the class representative.
        if ra < rb {
            self.parent.insert(rb, ra);
        } else if rb < ra {
            self.parent.insert(ra, rb);
        }
    }
}

/// Strict validation: every arc twice, directions consistent with each
/// tuple's first entry incoming; derives components and traversals.
fn derive_component_map(
    crossings: &[[u32; 4]],
    free_loops: u32,
) -> Result<ComponentMap, DiagramError> {
    let mut occurrences: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, cr) in crossings.iter().enumerate() {
        for (s, &arc) in cr.iter().enumerate() {
            occurrences.entry(arc).or_default().push((i, s));
        }
    }
    for (&arc, occ) in &occurrences {
        if occ.len() != 2 {
            return Err(DiagramError::ArcCount {
                arc,
                count: occ.len(),
            });
        }
    }

    // Direction propagation. Under-strand ends are forced (a in, c out);
    // over-strand ends are linked to them through shared arcs.
    let mut status = vec![[Status::Unknown; 4]; crossings.len()];
    let mut queue: Vec<(usize, usize, Status)> = Vec::new();
    for i in 0..crossings.len() {
        queue.push((i, 0, Status::In));
        queue.push((i, 2, Status::Out));
    }
    loop {
        while let Some((i, s, st)) = queue.pop() {
            let cur = status[i][s];
            if cur == st {
                continue;
            }
            if cur != Status::Unknown {
                return Err(DiagramError::InconsistentOrientation { crossing: i });
            }
            status[i][s] = st;
            // The arc's other end has the opposite status.
            let occ = &occurrences[&crossings[i][s]];
            let (oi, os) = if occ[0] == (i, s) { occ[1] } else { occ[0] };
            queue.push((oi, os, st.flip()));
            // So does the other end of the same over-strand pass.
            if s == 1 || s == 3 {
                queue.push((i, 4 - s, st.flip()));
            }
        }
        // Components passing over everywhere are not forced by PD data;
        // direct the first undecided over-strand (d → b) and re-propagate.
        match status.iter().position(|sts| sts[3] == Status::Unknown) {
            Some(i) => queue.push((i, 3, Status::In)),
            None => break,
        }
    }

    // Trace components along derived directions, lowest arc id first.
    let mut arc_component: BTreeMap<u32, usize> = BTreeMap::new();
    let mut traversal: Vec<Vec<u32>> = Vec::new();
    for &start in occurrences.keys() {
        if arc_component.contains_key(&start) {
            continue;
        }
        let comp = traversal.len();
        let mut arcs = Vec::new();
        let mut arc = start;
        loop {
            arc_component.insert(arc, comp);
            arcs.push(arc);
            // Follow the arc to its incoming end and continue out of the
            // crossing along the same strand.
            let occ = &occurrences[&arc];
            let (i, s) = if status[occ[0].0][occ[0].1] == Status::In {
                occ[0]
            } else {
                occ[1]
            };
            debug_assert_eq!(status[i][s], Status::In);
            let exit = match s {
                0 => 2,
                1 => 3,
                3 => 1,
                _ => unreachable!("slot 2 is always outgoing"),
            };
            arc = crossings[i][exit];
            if arc == start {
                break;
            }
        }
        traversal.push(arcs);
    }

    let traced_count = traversal.len();
    let over_dir: Vec<OverDir> = status
        .iter()
        .map(|sts| {
            debug_assert!(sts[1] != Status::Unknown && sts[3] != Status::Unknown);
            if sts[3] == Status::In {
                OverDir::DB
            } else {
                OverDir::BD
            }
        })
        .collect();
    let signs: Vec<i8> = over_dir
        .iter()
        .map(|od| match od {
            OverDir::DB => 1,
            OverDir::BD => -1,
        })
        .collect();

    let mut self_crossings = vec![Vec::new(); traced_count];
    let mut inter_crossings = vec![Vec::new(); traced_count];
    for (i, cr) in crossings.iter().enumerate() {
        let under = arc_component[&cr[0]];
        let over = arc_component[&cr[1]];
        if under == over {
            self_crossings[under].push(i);
        } else {
            inter_crossings[under].push(i);
            inter_crossings[over].push(i);
        }
    }

    Ok(ComponentMap {
        arc_component,
        traced_count,
        component_count: traced_count + free_loops as usize,
        over_dir,
        signs,
        traversal,
        self_crossings,
        inter_crossings,
    })
}

/// Lenient reconstruction used after smoothings: finds consistent strand
/// directions allowing either under-strand end to be the incoming one, then
/// rewrites violating tuples from their other end (a rotation by two slots)
/// and validates strictly.
fn renormalize(crossings: Vec<[u32; 4]>, free_loops: u32) -> Result<Diagram, DiagramError> {
    let mut occurrences: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, cr) in crossings.iter().enumerate() {
        for (s, &arc) in cr.iter().enumerate() {
            occurrences.entry(arc).or_default().push((i, s));
        }
    }
    for (&arc, occ) in &occurrences {
        if occ.len() != 2 {
            return Err(DiagramError::ArcCount {
                arc,
                count: occ.len(),
            });
        }
    }
    // Orient each closed curve: walk undirected strand passes from the
    // lowest unvisited arc, marking each visited end as incoming.
    let mut status = vec![[Status::Unknown; 4]; crossings.len()];
    let all_arcs: Vec<u32> = occurrences.keys().copied().collect();
    for &start in &all_arcs {
        let first = occurrences[&start][0];
        if status[first.0][first.1] != Status::Unknown {
            continue;
        }
        // Direct `start` toward its first-listed occurrence.
        let mut head = first;
        loop {
            let (i, s) = head;
            if status[i][s] != Status::Unknown {
                break;
            }
            status[i][s] = Status::In;
            let exit = match s {
                0 => 2,
                2 => 0,
                1 => 3,
                _ => 1,
            };
            status[i][exit] = Status::Out;
            let next_arc = crossings[i][exit];
            let occ = &occurrences[&next_arc];
            head = if occ[0] == (i, exit) { occ[1] } else { occ[0] };
        }
    }
    let rotated = crossings
        .iter()
        .enumerate()
        .map(|(i, &[a, b, c, d])| {
            if status[i][0] == Status::In {
                [a, b, c, d]
            } else {
                [c, d, a, b]
            }
        })
        .collect();
    Diagram::new(rotated, free_loops)
}

impl fmt::Display for Diagram {
    /// PD text form: `X[a,b,c,d]` per crossing plus `O[n]` when free loops
    /// are present.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut tokens: Vec<String> = self
            .crossings
            .iter()
            .map(|[a, b, c, d]| format!("X[{a},{b},{c},{d}]"))
            .collect();
        if self.free_loops > 0 || self.crossings.is_empty() {
            tokens.push(format!("O[{}]", self.free_loops));
        }
        f.write_str(&tokens.join(" "))
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram({self})")
    }
}

impl FromStr for Diagram {
    type Err = DiagramError;

    /// Parses PD text: `X[a,b,c,d]` entries and optional `O[n]` tokens,
    /// separated by commas or whitespace.
    fn from_str(text: &str) -> Result<Diagram, DiagramError> {
        let mut crossings = Vec::new();
        let mut free_loops = 0u32;
        let mut scanner = PdScanner::new(text);
        while let Some((kind, line, col)) = scanner.next_token()? {
            let nums = scanner.bracket_numbers(line, col)?;
            match kind {
                b'X' => {
                    if nums.len() != 4 {
                        return Err(syntax(line, col, "X entry needs four arc identifiers"));
                    }
                    if nums.contains(&0) {
                        return Err(syntax(line, col, "arc identifiers are positive integers"));
                    }
                    crossings.push([nums[0], nums[1], nums[2], nums[3]]);
                }
                _ => {
                    if nums.len() != 1 {
                        return Err(syntax(line, col, "O entry needs one count"));
                    }
                    free_loops += nums[0];
                }
            }
        }
        Diagram::new(crossings, free_loops)
    }
}

fn syntax(line: usize, col: usize, msg: &str) -> DiagramError {
    DiagramError::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

struct PdScanner<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> PdScanner<'a> {
    fn new(text: &'a str) -> Self {
        PdScanner {
            chars: text.chars().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_separators(&mut self) {
        while matches!(self.chars.peek(), Some(c) if c.is_whitespace() || *c == ',') {
            self.bump();
        }
    }

    /// Returns the next entry's kind tag (`X` or `O`) and its position.
    fn next_token(&mut self) -> Result<Option<(u8, usize, usize)>, DiagramError> {
        self.skip_separators();
        let (line, col) = (self.line, self.col);
        match self.bump() {
            None => Ok(None),
            Some('X') => Ok(Some((b'X', line, col))),
            Some('O') => Ok(Some((b'O', line, col))),
            Some(c) => Err(syntax(
                line,
                col,
                &format!("expected X or O entry, found {c:?}"),
            )),
        }
    }

    fn bracket_numbers(&mut self, line: usize, col: usize) -> Result<Vec<u32>, DiagramError> {
        if self.bump() != Some('[') {
            return Err(syntax(line, col, "expected '[' after entry tag"));
        }
        let mut nums = Vec::new();
        loop {
            self.skip_separators();
            if self.chars.peek() == Some(&']') {
                self.bump();
                break;
            }
            let (nline, ncol) = (self.line, self.col);
            let mut digits = String::new();
            while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
                digits.push(self.bump().unwrap());
            }
            if digits.is_empty() {
                return Err(syntax(nline, ncol, "expected an integer or ']'"));
            }
            let value: u32 = digits
                .parse()
                .map_err(|_| syntax(nline, ncol, "integer out of range"))?;
            nums.push(value);
        }
        Ok(nums)
    }
}
