//! Weight systems of weighted projective 5-space and the well-formedness and
//! quasismoothness criteria for their generic degree-`d` hypersurface.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{gcd_all, Representability};

pub const RANK: usize = 6;

/// Upper bound on any single weight, keeping every degree and DP table small.
pub const MAX_WEIGHT: u64 = 1 << 20;

/// Six positive weights with gcd 1; the hypersurface degree is their sum.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightSystem {
    weights: [u64; RANK],
}

impl WeightSystem {
    /// Builds a weight system in ascending order. Rejects zero weights,
    /// weights above [`MAX_WEIGHT`] and a gcd other than 1.
    pub fn new(mut weights: [u64; RANK]) -> Result<Self> {
        validate(&weights)?;
        if gcd_all(&weights)? != 1 {
            return Err(Error::InvalidInput(format!("gcd of {weights:?} is not 1")));
        }
        weights.sort_unstable();
        Ok(Self { weights })
    }

    /// Keeps the given order. Used for the normal form `a0=a1, a2=a3, a4, a5`.
    pub fn ordered(weights: [u64; RANK]) -> Result<Self> {
        validate(&weights)?;
        if gcd_all(&weights)? != 1 {
            return Err(Error::InvalidInput(format!("gcd of {weights:?} is not 1")));
        }
        Ok(Self { weights })
    }

    /// Divides out the common factor instead of rejecting it.
    pub fn normalized(weights: [u64; RANK]) -> Result<Self> {
        validate(&weights)?;
        let g = gcd_all(&weights)?;
        Self::new(weights.map(|w| w / g))
    }

    pub fn weights(&self) -> &[u64; RANK] {
        &self.weights
    }

    pub fn degree(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn sorted(&self) -> Self {
        let mut w = self.weights;
        w.sort_unstable();
        Self { weights: w }
    }

    /// The `a0=a1 <= a2=a3` odd, `a4 <= a5` even ordering, when the multiset
    /// of weights admits it.
    pub fn normal_form(&self) -> Option<Self> {
        let mut odd: Vec<u64> = self
            .weights
            .iter()
            .copied()
            .filter(|w| w % 2 == 1)
            .collect();
        let mut even: Vec<u64> = self
            .weights
            .iter()
            .copied()
            .filter(|w| w % 2 == 0)
            .collect();
        if odd.len() != 4 || even.len() != 2 {
            return None;
        }
        odd.sort_unstable();
        even.sort_unstable();
        if odd[0] != odd[1] || odd[2] != odd[3] {
            return None;
        }
        Some(Self {
            weights: [odd[0], odd[1], odd[2], odd[3], even[0], even[1]],
        })
    }

    /// Normal form when it exists, ascending order otherwise.
    pub fn canonical(&self) -> Self {
        self.normal_form().unwrap_or_else(|| self.sorted())
    }

    pub fn label(&self) -> String {
        self.weights.map(|w| w.to_string()).join(",")
    }
}

fn validate(weights: &[u64]) -> Result<()> {
    if let Some(&w) = weights.iter().find(|&&w| w == 0 || w > MAX_WEIGHT) {
        return Err(Error::InvalidInput(format!(
            "weight {w} outside 1..={MAX_WEIGHT}"
        )));
    }
    Ok(())
}

impl fmt::Debug for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.label())
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.label())
    }
}

impl FromStr for WeightSystem {
    type Err = Error;

    /// Accepts comma- or whitespace-separated weights, keeping their order.
    fn from_str(s: &str) -> Result<Self> {
        let fields: Vec<&str> = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|f| !f.is_empty())
            .collect();
        if fields.len() != RANK {
            return Err(Error::InvalidInput(format!(
                "expected {RANK} weights, found {} in {s:?}",
                fields.len()
            )));
        }
        let mut w = [0u64; RANK];
        for (slot, f) in w.iter_mut().zip(&fields) {
            *slot = f
                .parse()
                .map_err(|_| Error::InvalidInput(format!("not a positive integer: {f:?}")))?;
        }
        Self::ordered(w)
    }
}

/// Iteratively divides out common factors of all-but-one weight until every
/// leave-one-out gcd is 1. The result defines an isomorphic variety.
pub fn reduce_to_well_formed(weights: &[u64]) -> Result<Vec<u64>> {
    if weights.is_empty() {
        return Err(Error::Usage("empty weight list".into()));
    }
    validate(weights)?;
    if gcd_all(weights)? != 1 {
        return Err(Error::InvalidInput(format!("gcd of {weights:?} is not 1")));
    }
    let mut w = weights.to_vec();
    if w.len() == 1 {
        return Ok(w);
    }
    loop {
        let mut changed = false;
        for i in 0..w.len() {
            let q = leave_out_gcd(&w, &[i]);
            if q > 1 {
                for (j, x) in w.iter_mut().enumerate() {
                    if j != i {
                        *x /= q;
                    }
                }
                changed = true;
            }
        }
        if !changed {
            return Ok(w);
        }
    }
}

fn leave_out_gcd(w: &[u64], skip: &[usize]) -> u64 {
    w.iter()
        .enumerate()
        .filter(|(i, _)| !skip.contains(i))
        .fold(0, |acc, (_, &x)| acc.gcd(&x))
}

pub fn is_ambient_well_formed(weights: &[u64]) -> bool {
    (0..weights.len()).all(|i| leave_out_gcd(weights, &[i]) == 1)
}

/// Generic degree-`d` hypersurface is well-formed: leave-two-out gcds divide
/// `d` and leave-one-out gcds are 1.
pub fn is_generic_hypersurface_well_formed(weights: &[u64], degree: u64) -> bool {
    let n = weights.len();
    is_ambient_well_formed(weights)
        && (0..n)
            .all(|i| (i + 1..n).all(|j| degree.is_multiple_of(leave_out_gcd(weights, &[i, j]))))
}

/// Result of the quasismoothness criterion for the generic hypersurface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quasismoothness {
    Quasismooth,
    /// Some weight equals the degree; passes the criterion trivially.
    LinearCone,
    /// Bitmask of the first coordinate subset failing both clauses.
    Fails {
        subset: u32,
    },
}

impl Quasismoothness {
    pub fn holds(self) -> bool {
        !matches!(self, Self::Fails { .. })
    }
}

pub fn quasismoothness(weights: &[u64], degree: u64) -> Quasismoothness {
    if weights.contains(&degree) {
        return Quasismoothness::LinearCone;
    }
    let n = weights.len();
    assert!(n < 32, "subset masks are u32");
    for mask in 1u32..(1 << n) {
        let subset: Vec<u64> = (0..n)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| weights[i])
            .collect();
        let table = Representability::new(&subset);
        if table.contains(degree) {
            continue;
        }
        let needed = mask.count_ones() as usize;
        let external = (0..n)
            .filter(|&e| mask >> e & 1 == 0)
            .filter(|&e| weights[e] <= degree && table.contains(degree - weights[e]))
            .count();
        if external < needed {
            return Quasismoothness::Fails { subset: mask };
        }
    }
    Quasismoothness::Quasismooth
}

/// True for a quasismooth generic hypersurface; linear cones count as passes.
pub fn is_generic_quasismooth(weights: &[u64], degree: u64) -> bool {
    quasismoothness(weights, degree).holds()
}

/// `d - sum a_i`; the canonical sheaf of a well-formed quasismooth
/// hypersurface is `O(d - sum a_i)`.
pub fn canonical_degree_shift(weights: &[u64], degree: u64) -> i64 {
    degree as i64 - weights.iter().sum::<u64>() as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduction_examples() {
        assert_eq!(reduce_to_well_formed(&[1, 2, 2]).unwrap(), vec![1, 1, 1]);
        assert_eq!(
            reduce_to_well_formed(&[1, 1, 1, 1, 4, 4]).unwrap(),
            vec![1, 1, 1, 1, 4, 4]
        );
        assert_eq!(
            reduce_to_well_formed(&[1, 2, 3, 6]).unwrap(),
            vec![1, 2, 3, 6]
        );
        assert!(is_ambient_well_formed(&[1, 2, 3, 6]));
        assert!(reduce_to_well_formed(&[2, 4]).is_err());
    }

    #[test]
    fn well_formed_examples() {
        assert!(is_ambient_well_formed(&[1, 1, 9, 9, 4, 4]));
        assert!(!is_ambient_well_formed(&[1, 2, 2]));
        assert!(is_ambient_well_formed(&[1; 6]));
        assert!(is_generic_hypersurface_well_formed(&[1, 1, 9, 9, 4, 4], 28));
        assert!(is_generic_hypersurface_well_formed(&[1; 6], 6));
        assert!(!is_generic_hypersurface_well_formed(&[1, 2, 2], 5));
    }

    #[test]
    fn quasismooth_examples() {
        assert_eq!(
            quasismoothness(&[1, 2, 2], 3),
            Quasismoothness::Fails { subset: 0b110 }
        );
        assert!(is_generic_quasismooth(&[1; 6], 6));
        assert!(is_generic_quasismooth(&[1, 1, 21, 21, 12, 28], 84));
        assert_eq!(quasismoothness(&[1, 1, 2], 2), Quasismoothness::LinearCone);
    }

    #[test]
    fn canonical_shift_examples() {
        assert_eq!(canonical_degree_shift(&[1, 1, 9, 9, 4, 4], 28), 0);
        assert_eq!(canonical_degree_shift(&[1; 6], 5), -1);
        assert_eq!(canonical_degree_shift(&[3, 5, 7, 1, 1, 1], 18), 0);
    }

    #[test]
    fn normal_form() {
        let ws = WeightSystem::new([4, 9, 1, 4, 9, 1]).unwrap();
        assert_eq!(ws.weights(), &[1, 1, 4, 4, 9, 9]);
        assert_eq!(ws.normal_form().unwrap().weights(), &[1, 1, 9, 9, 4, 4]);
        assert_eq!(ws.degree(), 28);
        assert!(WeightSystem::new([1, 1, 1, 1, 1, 2])
            .unwrap()
            .normal_form()
            .is_none());
        assert!(WeightSystem::new([2, 2, 4, 4, 6, 8]).is_err());
        assert_eq!(
            WeightSystem::normalized([2, 2, 2, 2, 8, 8])
                .unwrap()
                .weights(),
            &[1, 1, 1, 1, 4, 4]
        );
        let parsed: WeightSystem = "1,1,9,9,4,4".parse().unwrap();
        assert_eq!(parsed.weights(), &[1, 1, 9, 9, 4, 4]);
        assert!("1 1 9 9 4".parse::<WeightSystem>().is_err());
    }

    #[test]
    fn all_ones_quasismooth_in_every_degree() {
        for d in 1..=20 {
            assert!(is_generic_quasismooth(&[1; 6], d), "degree {d}");
        }
    }

    proptest! {
        #[test]
        fn reduction_is_idempotent(w in prop::collection::vec(1u64..=40, 2..=6)) {
            let g = gcd_all(&w).unwrap();
            let w: Vec<u64> = w.iter().map(|x| x / g).collect();
            let once = reduce_to_well_formed(&w).unwrap();
            prop_assert!(is_ambient_well_formed(&once));
            prop_assert_eq!(reduce_to_well_formed(&once).unwrap(), once);
        }

        #[test]
        fn predicates_are_permutation_invariant(
            w in prop::collection::vec(1u64..=30, 6),
            shift in 0usize..6,
            swap in (0usize..6, 0usize..6),
        ) {
            let d: u64 = w.iter().sum();
            let mut p = w.clone();
            p.rotate_left(shift);
            p.swap(swap.0, swap.1);
            prop_assert_eq!(is_ambient_well_formed(&w), is_ambient_well_formed(&p));
            prop_assert_eq!(
                is_generic_hypersurface_well_formed(&w, d),
                is_generic_hypersurface_well_formed(&p, d)
            );
            prop_assert_eq!(is_generic_quasismooth(&w, d), is_generic_quasismooth(&p, d));
        }
    }
}
