//! The built-in fixture corpus: the text files under `fixtures/` embedded at
//! compile time, each with the values it is expected to produce.

use dubrovnik_core::{kauffman_unreduced, rudolph_bound, Diagram, FrontWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Pd,
    Front,
}

impl Kind {
    pub fn label(self) -> &'static str {
        match self {
            Kind::Pd => "pd",
            Kind::Front => "front",
        }
    }
}

/// Values a fixture must reproduce when re-checked.
#[derive(Debug, Clone, Copy)]
pub struct Expected {
    pub components: usize,
    /// Canonical text of the unreduced Kauffman polynomial (of the resolved
    /// diagram, for fronts).
    pub kauffman: &'static str,
    /// −max_deg_x of the polynomial.
    pub bound: i64,
    /// Front invariants; `None` for PD fixtures.
    pub tb: Option<i64>,
    pub rotation: Option<i64>,
}

#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    pub name: &'static str,
    pub kind: Kind,
    /// Repository-relative source path of the embedded text.
    pub path: &'static str,
    pub text: &'static str,
    pub expected: Expected,
}

const DELTA: &str = "y^-1*x + 1 - y^-1*x^-1";

const K_BORROMEAN: &str = "y^2*x^4 - 2*y^3*x^3 - 4*y*x^3 + y^-3*x^3 - y^4*x^2 - 4*y^2*x^2 + 3*y^-2*x^2 + 2*y^5*x + 10*y^3*x + 12*y*x + 3*y^-1*x - 3*y^-3*x + 2*y^4 + 6*y^2 + 1 - 6*y^-2 - 2*y^5*x^-1 - 10*y^3*x^-1 - 12*y*x^-1 - 3*y^-1*x^-1 + 3*y^-3*x^-1 - y^4*x^-2 - 4*y^2*x^-2 + 3*y^-2*x^-2 + 2*y^3*x^-3 + 4*y*x^-3 - y^-3*x^-3 + y^2*x^-4";

const K_WHITEHEAD: &str = "y*x^5 - y^2*x^4 - 2*x^4 - y^3*x^3 - 3*y*x^3 + y^4*x^2 + 5*y^2*x^2 + 6*x^2 + y^-2*x^2 + y^3*x + 3*y*x + 2*y^-1*x - y^4 - 5*y^2 - 5 - 2*y^-2 - y*x^-1 - 2*y^-1*x^-1 + y^2*x^-2 + 2*x^-2 + y^-2*x^-2";

const K_WHITEHEAD_MIRROR: &str = "y^2*x^2 + 2*x^2 + y^-2*x^2 + y*x + 2*y^-1*x - y^4 - 5*y^2 - 5 - 2*y^-2 - y^3*x^-1 - 3*y*x^-1 - 2*y^-1*x^-1 + y^4*x^-2 + 5*y^2*x^-2 + 6*x^-2 + y^-2*x^-2 + y^3*x^-3 + 3*y*x^-3 - y^2*x^-4 - 2*x^-4 - y*x^-5";

const K_FIGURE_EIGHT: &str = "y*x^3 + y^-1*x^3 - y^3*x - 4*y*x - 2*y^-1*x + 1 + y^3*x^-1 + 4*y*x^-1 + 2*y^-1*x^-1 - y*x^-3 - y^-1*x^-3";

const K_TREFOIL_LEFT: &str =
    "x^6 - y^-1*x^5 - y^2*x^4 - 3*x^4 + y*x^3 + 3*y^-1*x^3 + y^2*x^2 + 3*x^2 - y*x - 2*y^-1*x";

const K_TREFOIL_RIGHT: &str = "y*x^-1 + 2*y^-1*x^-1 + y^2*x^-2 + 3*x^-2 - y*x^-3 - 3*y^-1*x^-3 - y^2*x^-4 - 3*x^-4 + y^-1*x^-5 + x^-6";

const K_HOPF_POSITIVE: &str = "1 + y^-2 + y*x^-1 + 2*y^-1*x^-1 - x^-2 - 2*y^-2*x^-2 - y*x^-3 - 2*y^-1*x^-3 + x^-4 + y^-2*x^-4";

const K_HOPF_NEGATIVE: &str =
    "x^4 + y^-2*x^4 + y*x^3 + 2*y^-1*x^3 - x^2 - 2*y^-2*x^2 - y*x - 2*y^-1*x + 1 + y^-2";

macro_rules! pd {
    ($name:literal, $components:expr, $kauffman:expr, $bound:expr) => {
        Fixture {
            name: $name,
            kind: Kind::Pd,
            path: concat!("fixtures/", $name, ".pd"),
            text: include_str!(concat!("../../../fixtures/", $name, ".pd")),
            expected: Expected {
                components: $components,
                kauffman: $kauffman,
                bound: $bound,
                tb: None,
                rotation: None,
            },
        }
    };
}

macro_rules! front {
    ($name:literal, $components:expr, $kauffman:expr, $bound:expr, $tb:expr, $rot:expr) => {
        Fixture {
            name: $name,
            kind: Kind::Front,
            path: concat!("fixtures/", $name, ".front"),
            text: include_str!(concat!("../../../fixtures/", $name, ".front")),
            expected: Expected {
                components: $components,
                kauffman: $kauffman,
                bound: $bound,
                tb: Some($tb),
                rotation: Some($rot),
            },
        }
    };
}

/// Every fixture, in listing order.
pub const ALL: &[Fixture] = &[
    pd!("unknot", 1, DELTA, -1),
    pd!("kink_positive", 1, DELTA, -1),
    pd!("kink_negative", 1, DELTA, -1),
    pd!("hopf_positive", 2, K_HOPF_POSITIVE, 0),
    pd!("hopf_negative", 2, K_HOPF_NEGATIVE, -4),
    pd!("trefoil_left", 1, K_TREFOIL_LEFT, -6),
    pd!("trefoil_right", 1, K_TREFOIL_RIGHT, 1),
    pd!("figure_eight", 1, K_FIGURE_EIGHT, -3),
    pd!("whitehead", 2, K_WHITEHEAD, -5),
    pd!("whitehead_mirror", 2, K_WHITEHEAD_MIRROR, -2),
    pd!("borromean", 3, K_BORROMEAN, -4),
    pd!("borromean_mirror", 3, K_BORROMEAN, -4),
    front!("eye", 1, DELTA, -1, -1, 0),
    front!("stabilized_eye_positive", 1, DELTA, -1, -2, 1),
    front!("stabilized_eye_negative", 1, DELTA, -1, -2, -1),
    front!("whitehead_sharp_a", 2, K_WHITEHEAD, -5, -5, -1),
    front!("whitehead_sharp_b", 2, K_WHITEHEAD, -5, -5, -1),
    front!("whitehead_mirror_unknots", 2, K_WHITEHEAD_MIRROR, -2, -2, 0),
    front!("borromean_sharp", 3, K_BORROMEAN, -4, -4, -1),
];

/// Re-checks one fixture against its expected values; returns the first
/// mismatch as text.
pub fn verify(fixture: &Fixture) -> Result<(), String> {
    let exp = &fixture.expected;
    let (components, kauffman, invariants) = match fixture.kind {
        Kind::Pd => {
            let diagram: Diagram = fixture.text.parse().map_err(|e| format!("parse: {e}"))?;
            (
                diagram.component_count(),
                kauffman_unreduced(&diagram),
                None,
            )
        }
        Kind::Front => {
            let front: FrontWord = fixture.text.parse().map_err(|e| format!("parse: {e}"))?;
            (
                front.component_count(),
                kauffman_unreduced(&front.resolve_to_diagram()),
                Some(front.invariants()),
            )
        }
    };
    if components != exp.components {
        return Err(format!(
            "components: expected {}, got {components}",
            exp.components
        ));
    }
    let text = kauffman.to_string();
    if text != exp.kauffman {
        return Err(format!("kauffman: expected {}, got {text}", exp.kauffman));
    }
    let bound = rudolph_bound(&kauffman).expect("fixture polynomials are nonzero");
    if bound != exp.bound {
        return Err(format!("bound: expected {}, got {bound}", exp.bound));
    }
    if let Some(inv) = invariants {
        if Some(inv.tb) != exp.tb {
            return Err(format!("tb: expected {:?}, got {}", exp.tb, inv.tb));
        }
        if Some(inv.rotation) != exp.rotation {
            return Err(format!(
                "rotation: expected {:?}, got {}",
                exp.rotation, inv.rotation
            ));
        }
    }
    Ok(())
}
