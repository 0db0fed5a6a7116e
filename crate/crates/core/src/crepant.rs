//! Crepant resolvability of cyclic quotient singularities.
//!
//! For `1/m (b_1..b_r)` the lattice is `N = Z^r + Z (1/m) b` and the cone is
//! the positive orthant. Points of `N` are stored as integer numerators over
//! the fixed denominator `m`.

use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::exact::{smith_normal_form, IntMatrix, IntVector};
use crate::singularity::QuotientSingularityType;

/// A point `numerators / m` of the lattice `N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint {
    pub m: u64,
    pub numerators: Vec<u64>,
}

impl LatticePoint {
    pub fn unit(m: u64, r: usize, i: usize) -> Self {
        let mut numerators = vec![0; r];
        numerators[i] = m;
        Self { m, numerators }
    }

    pub fn age(&self) -> Ratio<u64> {
        Ratio::new(self.numerators.iter().sum(), self.m)
    }

    pub fn label(&self) -> String {
        let n: Vec<String> = self.numerators.iter().map(u64::to_string).collect();
        format!("1/{}({})", self.m, n.join(","))
    }

    pub fn is_zero(&self) -> bool {
        self.numerators.iter().all(|&x| x == 0)
    }

    fn dominated_by(&self, other: &Self) -> bool {
        self.numerators
            .iter()
            .zip(&other.numerators)
            .all(|(a, b)| a <= b)
    }
}

/// The box element `(1/m)(j b mod m)` for residue class `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedBoxElement {
    pub j: u64,
    pub point: LatticePoint,
}

impl GradedBoxElement {
    pub fn age(&self) -> Ratio<u64> {
        self.point.age()
    }
}

/// The quotient lattice with an explicit integer basis, scaled by `m`.
#[derive(Debug, Clone)]
pub struct QuotientCone {
    pub kind: QuotientSingularityType,
    /// Columns span `m N` inside `Z^r`.
    pub scaled_basis: IntMatrix,
}

impl QuotientCone {
    pub fn new(kind: &QuotientSingularityType) -> Self {
        let r = kind.rank();
        let m = kind.m as i64;
        let mut gens = IntMatrix::zeros(r, r + 1);
        for i in 0..r {
            gens[(i, i)] = m.into();
            gens[(i, r)] = (kind.b[i] as i64).into();
        }
        // gens = U^-1 D V^-1, so the column span is spanned by U^-1 D.
        let (u, d, _) = smith_normal_form(&gens);
        let u_inv = u.inverse().expect("unimodular");
        let mut basis = IntMatrix::zeros(r, r);
        for j in 0..r {
            let dj = d[(j, j)].clone();
            for i in 0..r {
                basis[(i, j)] = &u_inv[(i, j)] * &dj;
            }
        }
        Self {
            kind: kind.clone(),
            scaled_basis: basis,
        }
    }

    /// `[N : Z^r]`.
    pub fn index(&self) -> u64 {
        let r = self.kind.rank() as u32;
        let det = self.scaled_basis.determinant().magnitude().clone();
        let full = num_bigint::BigUint::from(self.kind.m).pow(r);
        u64::try_from(full / det).expect("index fits")
    }

    /// Whether `numerators / m` lies in `N`.
    pub fn contains(&self, numerators: &[u64]) -> bool {
        let v: IntVector = numerators.iter().map(|&x| (x as i64).into()).collect();
        let inv = self
            .scaled_basis
            .inverse_rational()
            .expect("basis is nonsingular");
        inv.iter().all(|row| {
            let s: num_rational::BigRational = row
                .iter()
                .zip(&v)
                .map(|(a, b)| a * num_rational::BigRational::from_integer(b.clone()))
                .sum();
            s.is_integer()
        })
    }
}

pub fn box_elements(t: &QuotientSingularityType) -> Vec<GradedBoxElement> {
    (0..t.m)
        .map(|j| GradedBoxElement {
            j,
            point: LatticePoint {
                m: t.m,
                numerators: t.b.iter().map(|&b| j * b % t.m).collect(),
            },
        })
        .collect()
}

/// Unit vectors followed by the nonzero box elements of age exactly 1.
pub fn age_one_set(t: &QuotientSingularityType) -> Vec<LatticePoint> {
    let mut out: Vec<LatticePoint> = (0..t.rank())
        .map(|i| LatticePoint::unit(t.m, t.rank(), i))
        .collect();
    let mut seen = BTreeSet::new();
    for e in box_elements(t) {
        if !e.point.is_zero() && e.age() == Ratio::from_integer(1) && seen.insert(e.point.clone()) {
            out.push(e.point);
        }
    }
    out
}

/// Hilbert basis of `sigma ∩ N`. Apart from the unit vectors it consists of
/// the nonzero box elements that do not dominate another nonzero box element
/// componentwise; `order` permutes the candidate scan.
pub fn hilbert_basis_in_order(
    t: &QuotientSingularityType,
    order: &[usize],
) -> BTreeSet<LatticePoint> {
    let candidates: Vec<LatticePoint> = {
        let set: BTreeSet<LatticePoint> = box_elements(t)
            .into_iter()
            .map(|e| e.point)
            .filter(|p| !p.is_zero())
            .collect();
        set.into_iter().collect()
    };
    let mut basis: BTreeSet<LatticePoint> = (0..t.rank())
        .map(|i| LatticePoint::unit(t.m, t.rank(), i))
        .collect();
    let scan: Vec<usize> = if order.len() == candidates.len() {
        order.to_vec()
    } else {
        (0..candidates.len()).collect()
    };
    for &i in &scan {
        let x = &candidates[i];
        let reducible = candidates.iter().any(|y| y != x && y.dominated_by(x));
        if !reducible {
            basis.insert(x.clone());
        }
    }
    basis
}

pub fn hilbert_basis(t: &QuotientSingularityType) -> BTreeSet<LatticePoint> {
    hilbert_basis_in_order(t, &[])
}

/// Number of distinct nonzero box points, the length of a valid `order`.
pub fn box_candidate_count(t: &QuotientSingularityType) -> usize {
    box_elements(t)
        .into_iter()
        .map(|e| e.point)
        .filter(|p| !p.is_zero())
        .collect::<BTreeSet<_>>()
        .len()
}

pub fn semigroup_generated_by_age_one(t: &QuotientSingularityType) -> bool {
    hilbert_basis(t)
        .iter()
        .all(|p| p.age() == Ratio::from_integer(1))
}

/// Codimension-4 cyclic quotients below this order are known to admit a
/// crepant resolution whenever the age-one test passes.
pub const SUFFICIENCY_ORDER_BOUND: u64 = 39;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CrepantVerdict {
    Yes,
    No,
    NecessaryConditionOnly,
}

impl CrepantVerdict {
    pub fn passes(self) -> bool {
        self != Self::No
    }
}

pub fn admits_crepant_resolution(t: &QuotientSingularityType) -> CrepantVerdict {
    if !semigroup_generated_by_age_one(t) {
        CrepantVerdict::No
    } else if t.rank() <= 3 || t.m < SUFFICIENCY_ORDER_BOUND {
        CrepantVerdict::Yes
    } else {
        CrepantVerdict::NecessaryConditionOnly
    }
}

/// Everything the crepant test looked at, with points written as
/// `1/m(n_1,..,n_r)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrepantReport {
    pub kind: String,
    pub age_one: Vec<String>,
    pub hilbert_basis: Vec<String>,
    pub verdict: CrepantVerdict,
}

impl CrepantReport {
    pub fn new(t: &QuotientSingularityType) -> Self {
        Self {
            kind: t.to_string(),
            age_one: age_one_set(t).iter().map(LatticePoint::label).collect(),
            hilbert_basis: hilbert_basis(t).iter().map(LatticePoint::label).collect(),
            verdict: admits_crepant_resolution(t),
        }
    }
}
