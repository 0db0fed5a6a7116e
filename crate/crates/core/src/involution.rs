//! Antiholomorphic involutions of the ambient weighted projective space.
//!
//! For weights grouped as distinct values `w_i` with multiplicities `k_i`, a
//! non-standard involution exists exactly when every `w_i * k_i` is even.
//! The pipeline only instantiates the canonical one,
//! `[z0..z5] -> [conj z1, -conj z0, conj z3, -conj z2, conj z4, conj z5]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weights::{WeightSystem, RANK};

/// Distinct weight values with their multiplicities, strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMultiset {
    pub classes: Vec<(u64, usize)>,
}

impl WeightMultiset {
    pub fn of(weights: &[u64]) -> Self {
        let mut sorted = weights.to_vec();
        sorted.sort_unstable();
        let mut classes: Vec<(u64, usize)> = Vec::new();
        for w in sorted {
            match classes.last_mut() {
                Some((v, k)) if *v == w => *k += 1,
                _ => classes.push((w, 1)),
            }
        }
        Self { classes }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InvolutionKind {
    Standard,
    NonStandard,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionDescriptor {
    pub kind: InvolutionKind,
    /// `(i, j)` sends `z_i -> conj z_j` and `z_j -> -conj z_i`.
    pub swapped: Vec<(usize, usize)>,
    pub conjugated: Vec<usize>,
}

impl InvolutionDescriptor {
    pub fn identity(n: usize) -> Self {
        Self {
            kind: InvolutionKind::Standard,
            swapped: vec![],
            conjugated: (0..n).collect(),
        }
    }

    /// Image index and sign of each coordinate: `z_i` maps to
    /// `sign * conj z_{image}` in the `i`-th slot.
    pub fn signed_permutation(&self) -> Vec<(usize, i8)> {
        let n = self.swapped.len() * 2 + self.conjugated.len();
        let mut out = vec![(usize::MAX, 0i8); n];
        for &i in &self.conjugated {
            out[i] = (i, 1);
        }
        for &(i, j) in &self.swapped {
            out[i] = (j, 1);
            out[j] = (i, -1);
        }
        out
    }

    /// The underlying coordinate permutation, forgetting signs.
    pub fn permutation(&self) -> Vec<usize> {
        self.signed_permutation()
            .into_iter()
            .map(|(p, _)| p)
            .collect()
    }

    /// Applying the map twice gives `z_i -> -z_i` on swapped coordinates,
    /// which is the `lambda = -1` scaling on the odd weights, so only
    /// the permutation part is checked.
    pub fn squares_to_identity(&self) -> bool {
        let p = self.signed_permutation();
        p.iter().enumerate().all(|(i, &(j, _))| p[j].0 == i)
    }
}

pub fn admits_nonstandard_involution(weights: &[u64]) -> bool {
    WeightMultiset::of(weights)
        .classes
        .iter()
        .all(|&(w, k)| (w * k as u64).is_multiple_of(2))
}

/// Complex dimension of the ambient fixed locus of the non-standard
/// involution; `-1` means empty.
pub fn fixed_locus_dimension(weights: &[u64]) -> Result<i64> {
    if !admits_nonstandard_involution(weights) {
        return Err(Error::NotAdmissible(format!("{weights:?} has an odd w*k")));
    }
    let even: usize = weights.iter().filter(|&&w| w % 2 == 0).count();
    Ok(even as i64 - 1)
}

/// The canonical involution on the normal form `a0=a1, a2=a3` odd and
/// `a4, a5` even.
pub fn canonical_tau(ws: &WeightSystem) -> Result<(WeightSystem, InvolutionDescriptor)> {
    let w = ws.weights();
    if !admits_nonstandard_involution(w) {
        return Err(Error::NotAdmissible(format!("{ws} has an odd w*k")));
    }
    let nf = ws
        .normal_form()
        .ok_or_else(|| Error::NotAdmissible(format!("{ws} has no paired-odd normal form")))?;
    let descriptor = InvolutionDescriptor {
        kind: InvolutionKind::NonStandard,
        swapped: vec![(0, 1), (2, 3)],
        conjugated: vec![4, 5],
    };
    debug_assert_eq!(descriptor.signed_permutation().len(), RANK);
    Ok((nf, descriptor))
}
