//! Deterministic one-dimensional maximization: grid scan plus golden-section
//! refinement.

const INV_PHI: f64 = 0.618_033_988_749_894_9;
const MAX_ITERS: usize = 300;

/// Golden-section search for the maximum on `[lo, hi]`.
///
/// `prefer(x, y)` returns true when the objective at `x` is strictly larger
/// than at `y`. Passing a comparator instead of a value lets callers decide
/// the sign of `f(x) − f(y)` without cancellation near a flat maximum.
pub fn golden_section_max_by<P>(mut lo: f64, mut hi: f64, tol: f64, prefer: P) -> f64
where
    P: Fn(f64, f64) -> bool,
{
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    for _ in 0..MAX_ITERS {
        if hi - lo <= tol {
            break;
        }
        if prefer(c, d) {
            hi = d;
            d = c;
            c = hi - INV_PHI * (hi - lo);
        } else {
            lo = c;
            c = d;
            d = lo + INV_PHI * (hi - lo);
        }
    }
    0.5 * (lo + hi)
}

/// Golden-section search comparing objective values directly.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> f64 {
    golden_section_max_by(lo, hi, tol, |x, y| f(x) > f(y))
}

/// Index of the first maximal finite value.
pub fn argmax(values: &[f64]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &v) in values.iter().enumerate() {
        if !v.is_finite() {
            continue;
        }
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((i, v));
        }
    }
    best.map(|(i, _)| i)
}
