use super::Tracker;
use crate::rng::RngStream;
use crate::BitString;

/// Cyclic left-to-right single-bit hill climber.
pub(super) fn greedy_hill_climber(tracker: &mut Tracker, rng: &mut RngStream) {
    let n = tracker.dimension();
    let mut x = BitString::random(n, rng);
    let Some(mut fx) = tracker.evaluate(&x) else { return };
    if n == 0 {
        while tracker.evaluate(&x).is_some() {}
        return;
    }
    for cursor in (0..n).cycle() {
        x.flip(cursor);
        let Some(f) = tracker.evaluate(&x) else { return };
        if f >= fx {
            fx = f;
        } else {
            x.flip(cursor);
        }
    }
}

pub(super) fn random_search(tracker: &mut Tracker, rng: &mut RngStream) {
    let n = tracker.dimension();
    while !tracker.exhausted() {
        tracker.evaluate(&BitString::random(n, rng));
    }
}
