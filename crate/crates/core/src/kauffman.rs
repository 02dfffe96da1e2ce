//! The unreduced Dubrovnik-version Kauffman polynomial.
//!
//! The regular-isotopy polynomial Λ satisfies the skein relation
//! Λ(L₊) − Λ(L₋) = y·(Λ(L₀) − Λ(L∞)), where L₊/L₋ differ by a crossing
//! switch, L₀ is the orientation-respecting smoothing and L∞ the other one;
//! a positive kink multiplies Λ by x, a negative kink by x⁻¹. The ambient
//! invariant is K = x^{−writhe}·Λ, normalized so the unknot evaluates to
//! δ = x·y⁻¹ − x⁻¹·y⁻¹ + 1 (each split component contributes a δ factor).
//!
//! Λ is computed by recursion on a pivot crossing: traversing the diagram
//! component by component, the first crossing met on its under-strand before
//! its over-strand breaks the descending order and gets switched and
//! smoothed. Descending diagrams are regular-isotopy split unions of framed
//! unknots, so they close the recursion with δ^{components}·x^{Σ self-writhe}.
//! Results are memoized on [`Diagram::canonical_key`], keyed to Λ rather
//! than K so entries are reusable under any framing.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{Diagram, OverDir};
use crate::laurent2::Laurent2Poly;

/// δ = x·y⁻¹ − x⁻¹·y⁻¹ + 1, the value of the unknot.
///
/// The skein relation applied at a kink site forces y·δ² = (x − x⁻¹ + y)·δ,
/// and δ is the unique solution with the kink factors x and x⁻¹.
pub fn delta() -> Laurent2Poly {
    let d = &Laurent2Poly::mono(1, 1, -1) - &Laurent2Poly::mono(1, -1, -1);
    &d + &Laurent2Poly::one()
}

/// Memoization table mapping [`Diagram::canonical_key`] to Λ values.
///
/// Writes are idempotent (Λ is diagram-intrinsic), so concurrent skein
/// branches may share one cache; a later insert under an existing key simply
/// stores the identical polynomial again.
#[derive(Default)]
pub struct SkeinCache {
    map: Mutex<HashMap<Vec<u8>, Laurent2Poly>>,
}

impl SkeinCache {
    pub fn new() -> SkeinCache {
        SkeinCache::default()
    }

    /// Number of distinct diagrams evaluated so far.
    pub fn len(&self) -> usize {
        self.map.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn get(&self, key: &[u8]) -> Option<Laurent2Poly> {
        self.map.lock().unwrap().get(key).cloned()
    }

    fn insert(&self, key: Vec<u8>, value: Laurent2Poly) {
        self.map.lock().unwrap().insert(key, value);
    }
}

/// Scan order for pivot selection: a component order plus a basepoint
/// rotation per component. Any scan gives the same polynomial; the choice
/// only steers which skein tree gets expanded.
#[derive(Clone)]
struct ScanSpec {
    order: Vec<usize>,
    offsets: Vec<usize>,
}

impl ScanSpec {
    /// The deterministic scan: components in trace order, basepoints as
    /// traced.
    fn canonical(d: &Diagram) -> ScanSpec {
        let n = d.component_map().traced_count;
        ScanSpec {
            order: (0..n).collect(),
            offsets: vec![0; n],
        }
    }

    /// A randomized but valid scan, for pivot-independence testing.
    fn random<R: Rng>(d: &Diagram, rng: &mut R) -> ScanSpec {
        let cmap = d.component_map();
        let mut order: Vec<usize> = (0..cmap.traced_count).collect();
        order.shuffle(rng);
        let offsets = order
            .iter()
            .map(|&comp| rng.gen_range(0..cmap.traversal[comp].len()))
            .collect();
        ScanSpec { order, offsets }
    }
}

/// Finds the first scan position whose crossing is met on its under-strand
/// before its over-strand; `None` means the diagram is descending.
fn find_pivot(d: &Diagram, spec: &ScanSpec) -> Option<usize> {
    let cmap = d.component_map();
    // The incoming end of each arc: (crossing, enters-under?).
    let mut entry: HashMap<u32, (usize, bool)> = HashMap::new();
    for (i, cr) in d.crossings().iter().enumerate() {
        entry.insert(cr[0], (i, true));
        let over_in = match cmap.over_dir[i] {
            OverDir::DB => cr[3],
            OverDir::BD => cr[1],
        };
        entry.insert(over_in, (i, false));
    }
    let mut over_seen = vec![false; d.crossings().len()];
    for (k, &comp) in spec.order.iter().enumerate() {
        let arcs = &cmap.traversal[comp];
        for idx in 0..arcs.len() {
            let arc = arcs[(spec.offsets[k] + idx) % arcs.len()];
            let (i, under) = entry[&arc];
            if under {
                if !over_seen[i] {
                    return Some(i);
                }
            } else {
                over_seen[i] = true;
            }
        }
    }
    None
}

/// Λ of a descending diagram: split framed unknots, one δ per component and
/// the self-crossing signs as the x-exponent. (Inter-component crossings of
/// a descending diagram cancel: each pair of split components has linking
/// number zero.)
fn descending_value(d: &Diagram) -> Laurent2Poly {
    let cmap = d.component_map();
    let self_writhe: i64 = cmap
        .self_crossings
        .iter()
        .flatten()
        .map(|&i| cmap.signs[i] as i64)
        .sum();
    poly_pow(&delta(), d.component_count()).mul_mono(1, self_writhe, 0)
}

fn poly_pow(p: &Laurent2Poly, n: usize) -> Laurent2Poly {
    let mut out = Laurent2Poly::one();
    for _ in 0..n {
        out = &out * p;
    }
    out
}

/// Core recursion. Repeatedly switches the scan's first descending-order
/// violation, accumulating ±y·(Λ(smooth₀) − Λ(smooth∞)) per switch, until
/// the working diagram descends; each switch pushes the first violation
/// strictly later in the scan, and both smoothings drop a crossing, so the
/// recursion terminates. Every intermediate switched diagram is cached too:
/// its Λ differs from the entry value by the sum accumulated before it.
fn eval(
    cache: &SkeinCache,
    d: &Diagram,
    make_spec: &mut dyn FnMut(&Diagram) -> ScanSpec,
) -> Laurent2Poly {
    let key = d.canonical_key();
    if let Some(hit) = cache.get(&key) {
        return hit;
    }
    let spec = make_spec(d);
    let mut work = d.clone();
    let mut acc = Laurent2Poly::zero();
    let mut trail: Vec<(Vec<u8>, Laurent2Poly)> = vec![(key, Laurent2Poly::zero())];
    let value = loop {
        match find_pivot(&work, &spec) {
            None => break &acc + &descending_value(&work),
            Some(i) => {
                let eps = BigInt::from(work.crossing_sign(i));
                let s0 = eval(cache, &work.smooth_0(i), make_spec);
                let sinf = eval(cache, &work.smooth_inf(i), make_spec);
                acc = &acc + &(&s0 - &sinf).mul_mono(eps, 0, 1);
                work = work.switch_crossing(i);
                let wkey = work.canonical_key();
                if let Some(hit) = cache.get(&wkey) {
                    break &acc + &hit;
                }
                trail.push((wkey, acc.clone()));
            }
        }
    };
    for (tkey, partial) in trail {
        cache.insert(tkey, &value - &partial);
    }
    value
}

/// The regular-isotopy polynomial Λ, with a private single-use cache.
pub fn lambda_regular(d: &Diagram) -> Laurent2Poly {
    lambda_regular_with(&SkeinCache::new(), d)
}

/// Λ with a caller-provided cache, reusable across related diagrams.
pub fn lambda_regular_with(cache: &SkeinCache, d: &Diagram) -> Laurent2Poly {
    eval(cache, d, &mut ScanSpec::canonical)
}

/// Λ computed with seeded-random pivot scans. The result must equal
/// [`lambda_regular`] for every seed; anything else is a bug.
pub fn lambda_regular_seeded(d: &Diagram, seed: u64) -> Laurent2Poly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    eval(&SkeinCache::new(), d, &mut |node| {
        ScanSpec::random(node, &mut rng)
    })
}

/// The unreduced Kauffman polynomial K = x^{−writhe}·Λ; the unknot gives δ.
pub fn kauffman_unreduced(d: &Diagram) -> Laurent2Poly {
    kauffman_unreduced_with(&SkeinCache::new(), d)
}

/// K with a caller-provided Λ cache.
pub fn kauffman_unreduced_with(cache: &SkeinCache, d: &Diagram) -> Laurent2Poly {
    lambda_regular_with(cache, d).mul_mono(1, -d.writhe(), 0)
}

/// The reduced companion normalization K/δ (unknot ↦ 1), for cross-checking
/// against published tables. The division is exact for every link; a
/// remainder would mean the skein conventions are broken, so it panics.
pub fn kauffman_reduced(d: &Diagram) -> Laurent2Poly {
    kauffman_unreduced(d)
        .div_exact(&delta())
        .expect("unreduced Kauffman polynomial is divisible by delta")
}
