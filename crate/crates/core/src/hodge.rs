//! Hodge numbers of the maximal crepant partial resolution of a Calabi-Yau
//! 4-fold hypersurface, from the face data of its reflexive pair.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::PolytopePair;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeNumbers {
    pub h11: i64,
    pub h21: i64,
    pub h31: i64,
    pub h22: i64,
}

/// How the unresolved `1/4(1,1,1,1)` points enter `h^{1,1}` and `h^{2,2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// Each unresolved point removes one class from `h^{1,1}` and one from `h^{2,2}`.
    #[default]
    Standard,
    /// The maximal-resolution numbers are used unchanged.
    Uncorrected,
}

impl Convention {
    pub const ALL: [Convention; 2] = [Convention::Standard, Convention::Uncorrected];

    pub fn name(self) -> &'static str {
        match self {
            Self::Standard => "standard",
            Self::Uncorrected => "uncorrected",
        }
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Self::Standard),
            "uncorrected" => Ok(Self::Uncorrected),
            _ => Err(Error::Usage(format!(
                "unknown convention {s:?}; expected standard or uncorrected"
            ))),
        }
    }
}

/// Maximal-resolution Hodge numbers together with the correction applied.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeData {
    pub max: HodgeNumbers,
    pub corrections: Vec<Correction>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Correction {
    pub convention: Convention,
    pub unresolved_points: u64,
    pub corrected: HodgeNumbers,
}

/// `h22 = 44 + 4 h11 + 4 h31 - 2 h21` for a smooth Calabi-Yau 4-fold.
pub fn h22_from_constraint(h11: i64, h21: i64, h31: i64) -> i64 {
    2 * (22 + 2 * h11 + 2 * h31 - h21)
}

/// `l(Δ*) - 6 - sum over facets l*(θ*) + sum over codim-2 faces l*(θ*) l*(θ)`.
fn h11_of(pair: &PolytopePair) -> i64 {
    let star = &pair.delta_star;
    let mut h = star.lattice_point_count() as i64 - 6;
    for (f, face) in star.faces.faces.iter().enumerate() {
        match star.faces.codim(f) {
            1 => h -= star.interior_count(f) as i64,
            2 => {
                let dual = pair.dual_of_star_face(f);
                h += (star.interior_count(f) * pair.delta.interior_count(dual)) as i64;
            }
            _ => {}
        }
        debug_assert!(face.dim <= star.dim());
    }
    h
}

fn h21_of(pair: &PolytopePair) -> i64 {
    let star = &pair.delta_star;
    (0..star.faces.faces.len())
        .filter(|&f| star.faces.codim(f) == 3)
        .map(|f| {
            (star.interior_count(f) * pair.delta.interior_count(pair.dual_of_star_face(f))) as i64
        })
        .sum()
}

pub fn hodge_numbers(pair: &PolytopePair) -> Result<HodgeNumbers> {
    if pair.delta.dim() != 5 {
        return Err(Error::InvalidInput(format!(
            "Hodge formulas need a rank-5 pair, got rank {}",
            pair.delta.dim()
        )));
    }
    if !pair.delta_star.polytope.is_lattice() || !pair.delta.polytope.is_lattice() {
        return Err(Error::InvalidInput("pair is not reflexive".into()));
    }
    let mirror = pair.mirror()?;
    let h11 = h11_of(pair);
    let h31 = h11_of(&mirror);
    let h21 = h21_of(pair);
    if h21 != h21_of(&mirror) {
        return Err(Error::Inconsistent("h21 is not mirror symmetric".into()));
    }
    Ok(HodgeNumbers {
        h11,
        h21,
        h31,
        h22: h22_from_constraint(h11, h21, h31),
    })
}

/// Components of `D_ρ ∩ Ŷ` for a nonzero point of `Δ*`: none inside a facet,
/// `l*(θ) + 1` inside a codim-2 face with dual edge `θ`, one otherwise.
pub fn divisor_components(pair: &PolytopePair, star_point: usize) -> usize {
    let star = &pair.delta_star;
    let f = star.carrier[star_point];
    match star.faces.codim(f) {
        0 | 1 => 0,
        2 => pair.delta.interior_count(pair.dual_of_star_face(f)) + 1,
        _ => 1,
    }
}

/// `h11` as a count of divisor components minus the rank of `M`.
pub fn h11_by_components(pair: &PolytopePair) -> i64 {
    let total: usize = (0..pair.delta_star.points.len())
        .map(|p| divisor_components(pair, p))
        .sum();
    total as i64 - pair.delta.dim() as i64
}

/// Removes `n` resolved classes from `h11` and `h22` under the standard
/// convention; the other convention leaves the numbers unchanged.
pub fn unresolved_point_correction(
    h: &HodgeNumbers,
    convention: Convention,
    n: u64,
    available: u64,
) -> Result<HodgeNumbers> {
    if n > available {
        return Err(Error::InvalidInput(format!(
            "{n} unresolved points but only {available} exist"
        )));
    }
    Ok(match convention {
        Convention::Standard => HodgeNumbers {
            h11: h.h11 - n as i64,
            h22: h.h22 - n as i64,
            ..*h
        },
        Convention::Uncorrected => *h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::toric::pair_from_weights;
    use crate::weights::WeightSystem;

    fn pair(w: [u64; 6]) -> PolytopePair {
        pair_from_weights(&WeightSystem::ordered(w).unwrap())
            .unwrap()
            .1
    }

    #[test]
    fn sextic() {
        let p = pair([1; 6]);
        assert_eq!(
            hodge_numbers(&p).unwrap(),
            HodgeNumbers {
                h11: 1,
                h21: 0,
                h31: 426,
                h22: 1752
            }
        );
        assert_eq!(h11_by_components(&p), 1);
    }

    #[test]
    fn table_rows() {
        let h = hodge_numbers(&pair([1, 1, 5, 5, 8, 20])).unwrap();
        assert_eq!(h.h21, 6);
        let h = hodge_numbers(&pair([1, 1, 1, 1, 4, 4])).unwrap();
        assert_eq!(h.h11 + h.h31, 808);
        assert_eq!(h.h22, 3276);
        let h = hodge_numbers(&pair([1, 1, 1, 1, 8, 12])).unwrap();
        assert_eq!(
            h,
            HodgeNumbers {
                h11: 2,
                h21: 0,
                h31: 3878,
                h22: 15564
            }
        );
    }

    #[test]
    fn corrections() {
        let h = HodgeNumbers {
            h11: 5,
            h21: 0,
            h31: 803,
            h22: 3276,
        };
        assert_eq!(
            unresolved_point_correction(&h, Convention::Standard, 0, 3).unwrap(),
            h
        );
        let c = unresolved_point_correction(&h, Convention::Standard, 3, 3).unwrap();
        assert_eq!((c.h11, c.h22, c.h31), (2, 3273, 803));
        assert_eq!(
            unresolved_point_correction(&h, Convention::Uncorrected, 3, 3).unwrap(),
            h
        );
        assert!(unresolved_point_correction(&h, Convention::Standard, 4, 3).is_err());
    }

    #[test]
    fn example_divisor_components() {
        let p = pair([1, 1, 9, 9, 4, 4]);
        let counts: Vec<usize> = (0..p.delta_star.points.len())
            .map(|i| divisor_components(&p, i))
            .collect();
        assert_eq!(counts.iter().filter(|&&c| c == 7).count(), 1);
        assert_eq!(h11_by_components(&p), hodge_numbers(&p).unwrap().h11);
    }
}
