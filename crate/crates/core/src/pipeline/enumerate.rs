//! Bounded enumeration of weight systems, a stand-in for an external list.

use num_integer::Integer;

use crate::weights::{WeightSystem, RANK};

/// Nondecreasing 6-tuples with entries in `1..=max_weight` and gcd 1, in
/// lexicographic order.
#[derive(Debug, Clone)]
pub struct WeightEnumerator {
    max: u64,
    next: Option<[u64; RANK]>,
    prefix: Option<[u64; 2]>,
}

impl WeightEnumerator {
    pub fn new(max_weight: u64) -> Self {
        Self {
            max: max_weight,
            next: (max_weight >= 1).then_some([1; RANK]),
            prefix: None,
        }
    }

    /// Only the tuples starting with `a0, a1`.
    pub fn with_prefix(max_weight: u64, a0: u64, a1: u64) -> Self {
        let ok = 1 <= a0 && a0 <= a1 && a1 <= max_weight;
        Self {
            max: max_weight,
            next: ok.then_some([a0, a1, a1, a1, a1, a1]),
            prefix: Some([a0, a1]),
        }
    }

    fn advance(&self, mut w: [u64; RANK]) -> Option<[u64; RANK]> {
        let i = (0..RANK).rev().find(|&i| w[i] < self.max)?;
        let v = w[i] + 1;
        w[i..].fill(v);
        match self.prefix {
            Some(p) if p != [w[0], w[1]] => None,
            _ => Some(w),
        }
    }
}

impl Iterator for WeightEnumerator {
    type Item = [u64; RANK];

    fn next(&mut self) -> Option<[u64; RANK]> {
        loop {
            let cur = self.next?;
            self.next = self.advance(cur);
            if cur.iter().fold(0u64, |g, x| g.gcd(x)) == 1 {
                return Some(cur);
            }
        }
    }
}

pub fn enumerate_weight_systems(max_weight: u64) -> impl Iterator<Item = WeightSystem> {
    WeightEnumerator::new(max_weight).map(|w| WeightSystem::ordered(w).expect("gcd 1 and in range"))
}
