//! The Thurston–Bennequin bound from the Kauffman polynomial, and verdict
//! reports for Legendrian fronts.
//!
//! For a Legendrian link front with unreduced Kauffman polynomial K of its
//! resolved diagram, tb ≤ −max_deg_x K. A report combines the front's
//! classical invariants with that bound and the resulting slack.

use std::fmt;

use crate::front::FrontWord;
use crate::kauffman::kauffman_unreduced;
use crate::laurent2::Laurent2Poly;

/// −max_deg_x of a nonzero polynomial; `None` for the zero polynomial.
pub fn rudolph_bound(p: &Laurent2Poly) -> Option<i64> {
    p.max_deg_x().map(|d| -d)
}

/// A front checked against the bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    /// Caller-supplied identifier (usually a file name or fixture name).
    pub name: String,
    pub components: usize,
    pub tb: i64,
    pub rotation: i64,
    /// Per component: self-crossing signs minus half its own cusps.
    pub component_tb: Vec<i64>,
    pub component_rotation: Vec<i64>,
    /// Unreduced Kauffman polynomial of the resolved diagram.
    pub kauffman: Laurent2Poly,
    /// −max_deg_x of `kauffman`.
    pub bound: i64,
    /// bound − tb; nonnegative exactly when the bound is satisfied, zero
    /// when it is sharp.
    pub slack: i64,
    pub satisfied: bool,
}

/// Computes invariants and the bound for one front.
pub fn check_front(name: &str, front: &FrontWord) -> BoundReport {
    let inv = front.invariants();
    let kauffman = kauffman_unreduced(&front.resolve_to_diagram());
    let bound = rudolph_bound(&kauffman).expect("Kauffman polynomials are nonzero");
    BoundReport {
        name: name.to_owned(),
        components: front.component_count(),
        tb: inv.tb,
        rotation: inv.rotation,
        component_tb: inv.component_tb,
        component_rotation: inv.component_rotation,
        kauffman,
        bound,
        slack: bound - inv.tb,
        satisfied: inv.tb <= bound,
    }
}

/// True when the bound rules out representing every component as a
/// Legendrian unknot: n pairwise-unlinked Legendrian unknots have total
/// tb ≥ ... at best −n (each is at most −1), so bound < −n excludes them.
pub fn unknot_components_obstruction(front: &FrontWord) -> bool {
    let kauffman = kauffman_unreduced(&front.resolve_to_diagram());
    let bound = rudolph_bound(&kauffman).expect("Kauffman polynomials are nonzero");
    bound < -(front.component_count() as i64)
}

impl fmt::Display for BoundReport {
    /// Line-oriented `key: value` text.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "name: {}", self.name)?;
        writeln!(f, "components: {}", self.components)?;
        writeln!(f, "tb: {}", self.tb)?;
        writeln!(f, "rotation: {}", self.rotation)?;
        writeln!(f, "component_tb: {}", join(&self.component_tb))?;
        writeln!(f, "component_rotation: {}", join(&self.component_rotation))?;
        writeln!(f, "kauffman: {}", self.kauffman)?;
        writeln!(f, "bound: {}", self.bound)?;
        writeln!(f, "slack: {}", self.slack)?;
        write!(f, "satisfied: {}", self.satisfied)
    }
}

fn join(values: &[i64]) -> String {
    let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    parts.join(", ")
}
