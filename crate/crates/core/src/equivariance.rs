//! The involution on the toric data: its lattice matrix on `N`, the induced
//! permutation of the divisors `D_ρ`, the class-group test for lifting to a
//! resolution, and the invariant count `h^{1,1}_τ`.

use std::cmp::Ordering;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rank_of_rows, Int, IntMatrix, IntVector};
use crate::hodge::divisor_components;
use crate::involution::InvolutionDescriptor;
use crate::polytope::toric::WeightLattice;
use crate::polytope::{LatticePolytope, PolytopePair};

/// Orientation convention for the torus term of `b^2_τ`. The torus
/// contribution is the dimension of one eigenspace of `t` on `M ⊗ Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TorusSign {
    /// Invariant classes are the `+1` eigenvectors of `t`.
    Preserving,
    /// Conjugation reverses the orientation of each circle factor, so the
    /// invariant classes are the `-1` eigenvectors of `t`.
    Reversing,
}

/// The convention fixed by the `(1,1,9,9,4,4)` family, where `b^2` has to run
/// through exactly the swapped-pair counts `0..=3`.
pub const CALIBRATED_TORUS_SIGN: TorusSign = TorusSign::Reversing;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeInvolution {
    pub matrix: IntMatrix,
    /// `point_image[i]` is the index of `t(points[i])` in `Δ*`.
    pub point_image: Vec<usize>,
    /// Dimensions of the `+1` and `-1` eigenspaces of `t` on `N ⊗ Q`,
    /// which agree with those on `M ⊗ Q` because `t` is an involution.
    pub eigen_plus: usize,
    pub eigen_minus: usize,
}

impl LatticeInvolution {
    /// Checks `t^2 = 1`, that `t` permutes the lattice points of `star`, and
    /// that each point keeps the dimension of its carrier face.
    pub fn from_matrix(matrix: IntMatrix, star: &LatticePolytope) -> Result<Self> {
        let n = star.dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::InvalidInput(format!("expected a {n}x{n} matrix")));
        }
        if matrix.mul(&matrix) != IntMatrix::identity(n) {
            return Err(Error::Inconsistent(
                "lattice map does not square to the identity".into(),
            ));
        }
        let mut point_image = Vec::with_capacity(star.points.len());
        for (i, p) in star.points.iter().enumerate() {
            let q = matrix.mul_vec(p);
            let j = star.point_index(&q).ok_or_else(|| {
                Error::Inconsistent(format!("{p:?} is sent outside the polytope"))
            })?;
            if star.faces.faces[star.carrier[i]].dim != star.faces.faces[star.carrier[j]].dim {
                return Err(Error::Inconsistent(format!(
                    "{p:?} changes carrier dimension"
                )));
            }
            point_image.push(j);
        }
        let eigen = |sign: i64| {
            let mut m = matrix.clone();
            for i in 0..n {
                m[(i, i)] -= Int::from(sign);
            }
            n - m.rank()
        };
        Ok(Self {
            eigen_plus: eigen(1),
            eigen_minus: eigen(-1),
            matrix,
            point_image,
        })
    }

    pub fn is_trivial_on_points(&self) -> bool {
        self.point_image.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn torus_invariant_dim(&self, sign: TorusSign) -> usize {
        match sign {
            TorusSign::Preserving => self.eigen_plus,
            TorusSign::Reversing => self.eigen_minus,
        }
    }
}

/// The lattice map induced by `τ`. Only the coordinate permutation matters
/// here; the signs and the conjugation live in the torus factor.
pub fn tau_on_lattice(
    lattice: &WeightLattice,
    pair: &PolytopePair,
    tau: &InvolutionDescriptor,
) -> Result<LatticeInvolution> {
    let matrix = lattice.permutation_on_n(&tau.permutation())?;
    LatticeInvolution::from_matrix(matrix, &pair.delta_star)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorEntry {
    pub point: Vec<i64>,
    pub codim: usize,
    pub components: usize,
    /// The index set `I` of the coordinate stratum `S_I` (only `z_i`,
    /// `i in I`, nonzero) that the divisor lies over.
    pub stratum: Vec<usize>,
    /// Index of the image under `t` within the inventory.
    pub image: usize,
}

impl DivisorEntry {
    pub fn is_fixed(&self, own_index: usize) -> bool {
        self.image == own_index
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorInventory {
    pub entries: Vec<DivisorEntry>,
}

impl DivisorInventory {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn fixed_count(&self) -> usize {
        self.entries
            .iter()
            .enumerate()
            .filter(|(i, e)| e.is_fixed(*i))
            .count()
    }

    /// Unordered pairs `{ρ, tρ}` with `ρ != tρ`.
    pub fn swapped_pairs(&self) -> Vec<(usize, usize)> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(i, e)| e.image > *i)
            .map(|(i, e)| (i, e.image))
            .collect()
    }

    /// Entries in the relative interior of codim-2 faces, meeting `Ŷ` in
    /// isolated points.
    pub fn point_families(&self) -> impl Iterator<Item = (usize, &DivisorEntry)> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.codim == 2)
    }

    /// The unique point family over the given stratum.
    pub fn family_over(&self, stratum: &[usize]) -> Result<usize> {
        let hits: Vec<usize> = self
            .point_families()
            .filter(|(_, e)| e.stratum == stratum)
            .map(|(i, _)| i)
            .collect();
        match hits.as_slice() {
            [i] => Ok(*i),
            [] => Err(Error::Profile(format!(
                "no codim-2 divisor over the stratum {stratum:?}"
            ))),
            _ => Err(Error::Profile(format!(
                "{} codim-2 divisors over the stratum {stratum:?}",
                hits.len()
            ))),
        }
    }

    /// Number of invariant classes contributed by divisors that `t` swaps.
    /// A swapped pair meeting `Ŷ` in `c` components each gives `c`.
    pub fn swapped_class_count(&self) -> usize {
        self.swapped_pairs()
            .iter()
            .map(|&(i, _)| self.entries[i].components)
            .sum()
    }
}

/// The stratum a divisor lies over: writing `ρ = sum c_i e_i` with all
/// `c_i >= 0` and some `c_i = 0`, the indices with `c_i = 0`.
pub fn stratum_of(lattice: &WeightLattice, n_point: &[Int]) -> Vec<usize> {
    let mu = lattice.n_lift(n_point);
    let a: Vec<Int> = lattice.weights().iter().map(|&w| Int::from(w)).collect();
    let ratio_cmp = |i: usize, j: usize| (&mu[i] * &a[j]).cmp(&(&mu[j] * &a[i]));
    let best = (1..mu.len()).fold(0, |b, i| {
        if ratio_cmp(i, b) == Ordering::Less {
            i
        } else {
            b
        }
    });
    (0..mu.len())
        .filter(|&i| ratio_cmp(i, best) == Ordering::Equal)
        .collect()
}

pub fn divisor_inventory(
    lattice: &WeightLattice,
    pair: &PolytopePair,
    t: &LatticeInvolution,
) -> Result<DivisorInventory> {
    let star = &pair.delta_star;
    let zero = vec![Int::zero(); star.dim()];
    let origin = star
        .point_index(&zero)
        .ok_or_else(|| Error::Inconsistent("origin missing".into()))?;
    let reindex = |i: usize| if i > origin { i - 1 } else { i };
    let mut entries = Vec::with_capacity(star.points.len() - 1);
    for (i, p) in star.points.iter().enumerate() {
        if i == origin {
            continue;
        }
        let point = p
            .iter()
            .map(|x| i64::try_from(x).map_err(|_| Error::Overflow("divisor coordinates")))
            .collect::<Result<_>>()?;
        entries.push(DivisorEntry {
            point,
            codim: star.faces.codim(star.carrier[i]),
            components: divisor_components(pair, i),
            stratum: stratum_of(lattice, p),
            image: reindex(t.point_image[i]),
        });
    }
    for (i, e) in entries.iter().enumerate() {
        let o = &entries[e.image];
        if o.image != i || o.codim != e.codim || o.components != e.components {
            return Err(Error::Inconsistent(format!(
                "orbit of divisor {i} is not a symmetric pair"
            )));
        }
    }
    Ok(DivisorInventory { entries })
}

/// Whether the permutation `image` of `points` acts trivially on the class
/// group: the free module on the points modulo the image of the dual lattice
/// `m -> (<m, ρ>)_ρ`. Points are in `N`-coordinates with `0` excluded by
/// the caller.
pub fn acts_trivially_on_class_group(points: &[IntVector], image: &[usize]) -> bool {
    let Some(first) = points.first() else {
        return true;
    };
    let n = first.len();
    let mut rows: Vec<IntVector> = (0..n)
        .map(|k| points.iter().map(|p| p[k].clone()).collect())
        .collect();
    let base = rank_of_rows(&rows);
    for (i, &j) in image.iter().enumerate() {
        if i != j {
            let mut diff = vec![Int::zero(); points.len()];
            diff[j] += Int::one();
            diff[i] -= Int::one();
            rows.push(diff);
        }
    }
    rank_of_rows(&rows) == base
}

/// Whether `t` fixes every class in `A_4(P̂_Δ) ⊗ Q`, hence the secondary
/// polytope of `Δ*`.
pub fn secondary_polytope_fixed(inventory: &DivisorInventory) -> bool {
    let points: Vec<IntVector> = inventory
        .entries
        .iter()
        .map(|e| e.point.iter().map(|&x| Int::from(x)).collect())
        .collect();
    let image: Vec<usize> = inventory.entries.iter().map(|e| e.image).collect();
    acts_trivially_on_class_group(&points, &image)
}

/// The admissible numbers of swapped point pairs in a family of `n` points
/// of which at least one must stay fixed.
pub fn swap_range(points: usize) -> Result<std::ops::RangeInclusive<usize>> {
    if points == 0 {
        return Err(Error::Profile("the fixed-point family is empty".into()));
    }
    Ok(0..=(points - 1) / 2)
}

/// `b^2` of the quotient: classes swapped by `t` plus the `j` chosen point
/// pairs, less the invariant part of the torus term.
pub fn h11_tau(
    inventory: &DivisorInventory,
    family: usize,
    j: usize,
    torus_invariant_dim: usize,
) -> Result<usize> {
    let range = swap_range(inventory.entries[family].components)?;
    if !range.contains(&j) {
        return Err(Error::InvalidInput(format!(
            "{j} swapped pairs is outside {range:?}"
        )));
    }
    let total = inventory.swapped_class_count() + j;
    total.checked_sub(torus_invariant_dim).ok_or_else(|| {
        Error::Inconsistent(format!(
            "torus term {torus_invariant_dim} exceeds the {total} swapped classes"
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int_vec;
    use crate::involution::canonical_tau;
    use crate::polytope::toric::pair_from_weights;
    use crate::weights::WeightSystem;

    fn setup(
        w: [u64; 6],
    ) -> (
        WeightLattice,
        PolytopePair,
        LatticeInvolution,
        DivisorInventory,
    ) {
        let ws = WeightSystem::ordered(w).unwrap();
        let (nf, tau) = canonical_tau(&ws).unwrap();
        let (lat, pair) = pair_from_weights(&nf).unwrap();
        let t = tau_on_lattice(&lat, &pair, &tau).unwrap();
        let inv = divisor_inventory(&lat, &pair, &t).unwrap();
        (lat, pair, t, inv)
    }

    #[test]
    fn running_example_inventory() {
        let (_, _, t, inv) = setup([1, 1, 9, 9, 4, 4]);
        assert_eq!(inv.len(), 11);
        assert_eq!(inv.fixed_count(), 7);
        assert_eq!(inv.swapped_pairs().len(), 2);
        let q = inv.family_over(&[4, 5]).unwrap();
        assert_eq!(inv.entries[q].components, 7);
        assert_eq!((t.eigen_plus, t.eigen_minus), (3, 2));
    }

    #[test]
    fn identity_descriptor_gives_identity() {
        let ws = WeightSystem::ordered([1, 1, 9, 9, 4, 4]).unwrap();
        let (lat, pair) = pair_from_weights(&ws).unwrap();
        let t = tau_on_lattice(&lat, &pair, &InvolutionDescriptor::identity(6)).unwrap();
        assert_eq!(t.matrix, IntMatrix::identity(5));
        assert!(t.is_trivial_on_points());
        let inv = divisor_inventory(&lat, &pair, &t).unwrap();
        assert!(secondary_polytope_fixed(&inv));
    }

    #[test]
    fn quartic_family_has_three_points() {
        let (_, _, _, inv) = setup([1, 1, 1, 1, 4, 4]);
        let q = inv.family_over(&[4, 5]).unwrap();
        assert_eq!(inv.entries[q].components, 3);
    }

    #[test]
    fn cone_over_square_is_not_fixed() {
        // Basis e1, e2, e3; the apex is -e1 - e3 and the fourth corner is
        // e1 - e2 + e3.
        let points = vec![
            int_vec(&[-1, 0, -1]),
            int_vec(&[1, 0, 0]),
            int_vec(&[0, 1, 0]),
            int_vec(&[0, 0, 1]),
            int_vec(&[1, -1, 1]),
        ];
        let t = IntMatrix::from_i64(&[&[0, 1, 1], &[1, 0, -1], &[0, 0, 1]]);
        assert_eq!(t.mul(&t), IntMatrix::identity(3));
        let image: Vec<usize> = points
            .iter()
            .map(|p| points.iter().position(|q| *q == t.mul_vec(p)).unwrap())
            .collect();
        assert_eq!(image, vec![0, 2, 1, 4, 3]);
        assert!(!acts_trivially_on_class_group(&points, &image));
        assert!(acts_trivially_on_class_group(&points, &[0, 1, 2, 3, 4]));
    }

    #[test]
    fn swap_ranges() {
        assert_eq!(swap_range(7).unwrap(), 0..=3);
        assert_eq!(swap_range(2).unwrap(), 0..=0);
        assert_eq!(swap_range(1).unwrap(), 0..=0);
        assert!(swap_range(0).is_err());
    }

    #[test]
    fn calibrated_sign_is_the_only_one_matching_the_running_example() {
        let (_, _, t, inv) = setup([1, 1, 9, 9, 4, 4]);
        let q = inv.family_over(&[4, 5]).unwrap();
        let reproduces = |sign| {
            (0..=3).all(|j| h11_tau(&inv, q, j, t.torus_invariant_dim(sign)).ok() == Some(j))
        };
        assert!(reproduces(TorusSign::Reversing));
        assert!(!reproduces(TorusSign::Preserving));
        assert_eq!(CALIBRATED_TORUS_SIGN, TorusSign::Reversing);
        assert!(h11_tau(&inv, q, 4, 2).is_err());
    }

    #[test]
    fn h11_tau_has_unit_increments() {
        let (_, _, t, inv) = setup([5, 5, 13, 13, 4, 4]);
        let q = inv.family_over(&[4, 5]).unwrap();
        let dim = t.torus_invariant_dim(CALIBRATED_TORUS_SIGN);
        let values: Vec<usize> = swap_range(inv.entries[q].components)
            .unwrap()
            .map(|j| h11_tau(&inv, q, j, dim).unwrap())
            .collect();
        assert!(values.windows(2).all(|w| w[1] == w[0] + 1));
    }
}
