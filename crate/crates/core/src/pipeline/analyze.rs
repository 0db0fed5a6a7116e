//! Full analysis of one weight system: polytopes, Hodge numbers, the
//! involution on the toric data, and the resulting Betti number family.

use serde::{Deserialize, Serialize};

use crate::betti::{betti_numbers, lefschetz_h22_tau, SpinSevenInvariants};
use crate::equivariance::{
    divisor_inventory, h11_tau, secondary_polytope_fixed, swap_range, tau_on_lattice,
    DivisorInventory, TorusSign, CALIBRATED_TORUS_SIGN,
};
use crate::error::{Error, Result};
use crate::hodge::{
    h11_by_components, hodge_numbers, unresolved_point_correction, Convention, HodgeNumbers,
};
use crate::involution::{canonical_tau, InvolutionDescriptor};
use crate::pipeline::filter::{run_filter, FilterReport};
use crate::polytope::toric::{delta_from_weights, pair_from_weights, WeightLattice};
use crate::polytope::{LatticePolytope, PolytopePair};
use crate::singularity::count_quarter_points;
use crate::weights::{WeightSystem, RANK};

/// Bumped whenever the record layout or any computation changes, so stale
/// cache entries are never read back.
pub const ARTIFACT_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+r1");

/// The stratum of the quarter points in profile order.
pub const QUARTER_STRATUM: [usize; 2] = [4, 5];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AnalysisOptions {
    pub convention: Convention,
    /// Restrict the family to a single swapped-pair count.
    pub swapped_pairs: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeSide {
    pub lattice_points: usize,
    pub interior_points: usize,
    pub vertices: usize,
    pub facets: usize,
    pub f_vector: Vec<usize>,
}

impl PolytopeSide {
    fn of(p: &LatticePolytope) -> Self {
        Self {
            lattice_points: p.lattice_point_count(),
            interior_points: p.interior_lattice_points().len(),
            vertices: p.polytope.vertices().len(),
            facets: p.polytope.facets().len(),
            f_vector: p.faces.f_vector().0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeSummary {
    pub reflexive: bool,
    pub failure: Option<String>,
    pub delta: Option<PolytopeSide>,
    pub dual: Option<PolytopeSide>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeSummary {
    /// Maximal crepant partial resolution.
    pub maximal: HodgeNumbers,
    /// `h11` recounted as divisor components minus the rank; equals `maximal.h11`.
    pub h11_from_components: i64,
    pub convention: Convention,
    pub quarter_points: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusTerm {
    pub sign: TorusSign,
    pub eigen_plus: usize,
    pub eigen_minus: usize,
    pub invariant_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionSummary {
    pub descriptor: InvolutionDescriptor,
    /// Rows of `t` on `N`-coordinates.
    pub lattice_matrix: Vec<Vec<i64>>,
    pub fixed_divisors: usize,
    pub swapped_pairs: Vec<(usize, usize)>,
    /// Index into `divisors.entries` of the quarter-point family.
    pub quarter_family: usize,
    pub secondary_polytope_fixed: bool,
    pub torus: TorusTerm,
    pub swap_range: [usize; 2],
    pub divisors: DivisorInventory,
}

/// One member of the family. `swapped_pairs` is the `k` column of `table`;
/// tables; `fixed_points` is the count of unresolved fixed quarter points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiRow {
    pub swapped_pairs: u64,
    pub fixed_points: u64,
    pub corrected_hodge: HodgeNumbers,
    pub b2: u64,
    pub b3: u64,
    pub b4_plus: u64,
    pub b4_minus: u64,
    /// `h22_τ` from the Lefschetz relation, `None` if it is not integral.
    pub h22_tau: Option<i64>,
}

impl BettiRow {
    pub fn invariants(&self) -> SpinSevenInvariants {
        SpinSevenInvariants {
            b2: self.b2,
            b3: self.b3,
            b4_plus: self.b4_plus,
            b4_minus: self.b4_minus,
            j: self.swapped_pairs,
            n_fixed: self.fixed_points,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisRecord {
    pub weights: [u64; RANK],
    pub degree: u64,
    pub filters: FilterReport,
    pub polytope: PolytopeSummary,
    pub hodge: Option<HodgeSummary>,
    pub involution: Option<InvolutionSummary>,
    pub betti_rows: Vec<BettiRow>,
    pub assumptions: Vec<String>,
}

impl AnalysisRecord {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Everything needed to produce Betti rows for any convention.
#[derive(Debug, Clone)]
pub struct FamilyData {
    pub hodge: HodgeNumbers,
    pub inventory: DivisorInventory,
    pub quarter_family: usize,
    pub torus_invariant_dim: usize,
}

impl FamilyData {
    pub fn quarter_points(&self) -> usize {
        self.inventory.entries[self.quarter_family].components
    }

    pub fn row(&self, convention: Convention, j: usize) -> Result<BettiRow> {
        let n = self.quarter_points();
        let b2 = h11_tau(
            &self.inventory,
            self.quarter_family,
            j,
            self.torus_invariant_dim,
        )?;
        let n_fixed = (n - 2 * j) as u64;
        let corrected = unresolved_point_correction(&self.hodge, convention, n_fixed, n as u64)?;
        let inv = betti_numbers(&corrected, b2 as u64, n_fixed, j as u64)?;
        Ok(BettiRow {
            swapped_pairs: j as u64,
            fixed_points: n_fixed,
            corrected_hodge: corrected,
            b2: inv.b2,
            b3: inv.b3,
            b4_plus: inv.b4_plus,
            b4_minus: inv.b4_minus,
            h22_tau: lefschetz_h22_tau(corrected.h11, b2 as i64, corrected.h22, n_fixed as i64),
        })
    }

    pub fn rows(&self, convention: Convention) -> Result<Vec<BettiRow>> {
        swap_range(self.quarter_points())?
            .map(|j| self.row(convention, j))
            .collect()
    }
}

struct Computed {
    lattice: WeightLattice,
    pair: PolytopePair,
    tau: InvolutionDescriptor,
}

fn prepare(profile: &WeightSystem) -> Result<Computed> {
    let (nf, tau) = canonical_tau(profile)?;
    let (lattice, pair) = pair_from_weights(&nf)?;
    Ok(Computed { lattice, pair, tau })
}

fn family_data(
    c: &Computed,
    profile: &WeightSystem,
    sign: TorusSign,
) -> Result<(FamilyData, InvolutionSummary)> {
    let hodge = hodge_numbers(&c.pair)?;
    let t = tau_on_lattice(&c.lattice, &c.pair, &c.tau)?;
    let inventory = divisor_inventory(&c.lattice, &c.pair, &t)?;
    let quarter_family = inventory.family_over(&QUARTER_STRATUM)?;
    let expected = count_quarter_points(profile.weights())?;
    if inventory.entries[quarter_family].components as u128 != expected {
        return Err(Error::Inconsistent(format!(
            "the quarter divisor meets the hypersurface {} times, the stratum count is {expected}",
            inventory.entries[quarter_family].components
        )));
    }
    let range = swap_range(inventory.entries[quarter_family].components)?;
    let matrix = (0..t.matrix.rows())
        .map(|r| {
            t.matrix
                .row(r)
                .iter()
                .map(|x| i64::try_from(x).map_err(|_| Error::Overflow("lattice matrix")))
                .collect()
        })
        .collect::<Result<_>>()?;
    let summary = InvolutionSummary {
        descriptor: c.tau.clone(),
        lattice_matrix: matrix,
        fixed_divisors: inventory.fixed_count(),
        swapped_pairs: inventory.swapped_pairs(),
        quarter_family,
        secondary_polytope_fixed: secondary_polytope_fixed(&inventory),
        torus: TorusTerm {
            sign,
            eigen_plus: t.eigen_plus,
            eigen_minus: t.eigen_minus,
            invariant_dim: t.torus_invariant_dim(sign),
        },
        swap_range: [*range.start(), *range.end()],
        divisors: inventory.clone(),
    };
    let data = FamilyData {
        hodge,
        inventory,
        quarter_family,
        torus_invariant_dim: t.torus_invariant_dim(sign),
    };
    Ok((data, summary))
}

/// The family data of a system passing the filter, in profile order.
pub fn family(ws: &WeightSystem) -> Result<FamilyData> {
    let report = run_filter(ws);
    if !report.passed {
        return Err(Error::NotAdmissible(format!(
            "{ws} fails the filter at stage {:?}",
            report.first_failure()
        )));
    }
    let profile = WeightSystem::ordered(report.weights)?;
    Ok(family_data(&prepare(&profile)?, &profile, CALIBRATED_TORUS_SIGN)?.0)
}

/// One set of invariants per admissible number of swapped pairs.
pub fn family_scan(ws: &WeightSystem, convention: Convention) -> Result<Vec<SpinSevenInvariants>> {
    Ok(family(ws)?
        .rows(convention)?
        .iter()
        .map(BettiRow::invariants)
        .collect())
}

fn polytope_summary(ws: &WeightSystem) -> (PolytopeSummary, Option<Computed>) {
    let failed = |failure: String, delta: Option<PolytopeSide>| {
        (
            PolytopeSummary {
                reflexive: false,
                failure: Some(failure),
                delta,
                dual: None,
            },
            None,
        )
    };
    let delta = match delta_from_weights(ws) {
        Ok((_, d)) => d,
        Err(e) => return failed(e.to_string(), None),
    };
    if !delta.polytope.dual().is_lattice() {
        return failed(
            "the dual polytope has fractional vertices".into(),
            Some(PolytopeSide::of(&delta)),
        );
    }
    let computed =
        match WeightSystem::ordered(*ws.weights()).and_then(|p| match canonical_tau(&p) {
            Ok(_) => prepare(&p),
            Err(_) => pair_from_weights(&p).map(|(lattice, pair)| Computed {
                lattice,
                pair,
                tau: InvolutionDescriptor::identity(RANK),
            }),
        }) {
            Ok(c) => c,
            Err(e) => return failed(e.to_string(), Some(PolytopeSide::of(&delta))),
        };
    let summary = PolytopeSummary {
        reflexive: true,
        failure: None,
        delta: Some(PolytopeSide::of(&computed.pair.delta)),
        dual: Some(PolytopeSide::of(&computed.pair.delta_star)),
    };
    (summary, Some(computed))
}

pub fn analyze(ws: &WeightSystem, options: &AnalysisOptions) -> Result<AnalysisRecord> {
    let filters = run_filter(ws);
    let profile = WeightSystem::ordered(filters.weights)?;
    let (polytope, computed) = polytope_summary(&profile);
    let mut record = AnalysisRecord {
        weights: filters.weights,
        degree: filters.degree,
        filters,
        polytope,
        hodge: None,
        involution: None,
        betti_rows: Vec::new(),
        assumptions: Vec::new(),
    };
    let assume = |r: &mut AnalysisRecord, s: String| r.assumptions.push(s);

    if !record.filters.passed {
        let stage = record
            .filters
            .first_failure()
            .map(|s| s.numeral())
            .unwrap_or("?");
        assume(
            &mut record,
            format!("filter stage ({stage}) failed; no Spin(7) data is derived"),
        );
        return Ok(record);
    }
    let Some(computed) = computed else {
        assume(
            &mut record,
            "no reflexive pair; no Hodge data is derived".into(),
        );
        return Ok(record);
    };

    let (data, summary) = family_data(&computed, &profile, CALIBRATED_TORUS_SIGN)?;
    record.hodge = Some(HodgeSummary {
        maximal: data.hodge,
        h11_from_components: h11_by_components(&computed.pair),
        convention: options.convention,
        quarter_points: data.quarter_points() as u64,
    });
    let js: Vec<usize> = match options.swapped_pairs {
        Some(j) => {
            let range = swap_range(data.quarter_points())?;
            if !range.contains(&j) {
                return Err(Error::Usage(format!(
                    "--swapped-pairs {j} is outside the admissible range {range:?}"
                )));
            }
            vec![j]
        }
        None => swap_range(data.quarter_points())?.collect(),
    };
    for j in js {
        match data.row(options.convention, j) {
            Ok(row) => record.betti_rows.push(row),
            Err(e) => assume(
                &mut record,
                format!("no Betti row for {j} swapped pairs: {e}"),
            ),
        }
    }

    for w in record.filters.warnings.clone() {
        assume(&mut record, w);
    }
    assume(
        &mut record,
        "the resolved hypersurface is simply connected with h20 = 0 (not verified)".into(),
    );
    assume(
        &mut record,
        "swapped_pairs is the number of exchanged pairs of quarter points; fixed_points = quarter_points - 2 * swapped_pairs stay unresolved".into(),
    );
    assume(
        &mut record,
        format!(
            "torus term: {} sign, invariant dimension {} of the eigenspaces (+1: {}, -1: {})",
            match summary.torus.sign {
                TorusSign::Preserving => "orientation-preserving",
                TorusSign::Reversing => "orientation-reversing",
            },
            summary.torus.invariant_dim,
            summary.torus.eigen_plus,
            summary.torus.eigen_minus
        ),
    );
    assume(
        &mut record,
        format!("Hodge correction convention: {}", options.convention.name()),
    );
    let others: Vec<String> = data
        .inventory
        .point_families()
        .filter(|(i, _)| *i != data.quarter_family)
        .map(|(_, e)| format!("{} points over S_{{{}}}", e.components, join(&e.stratum)))
        .collect();
    if !others.is_empty() {
        assume(
            &mut record,
            format!(
                "other codim-2 divisor families are t-fixed and add no invariant classes: {}",
                others.join("; ")
            ),
        );
    }
    if !summary.secondary_polytope_fixed {
        assume(
            &mut record,
            "t moves classes in the class group; no t-invariant triangulation is guaranteed".into(),
        );
    }
    record.involution = Some(summary);
    Ok(record)
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(w: [u64; 6]) -> WeightSystem {
        WeightSystem::new(w).unwrap()
    }

    #[test]
    fn running_example_record() {
        let r = analyze(&ws([1, 1, 9, 9, 4, 4]), &AnalysisOptions::default()).unwrap();
        let inv = r.involution.as_ref().unwrap();
        assert_eq!(inv.divisors.len(), 11);
        assert_eq!(r.hodge.as_ref().unwrap().quarter_points, 7);
        assert_eq!(r.betti_rows.len(), 4);
        let b4p: Vec<u64> = r.betti_rows.iter().map(|b| b.b4_plus).collect();
        assert_eq!(b4p, vec![1415, 1414, 1413, 1412]);
        let back: AnalysisRecord = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn non_reflexive_is_recorded() {
        let r = analyze(&ws([1, 1, 1, 1, 1, 2]), &AnalysisOptions::default()).unwrap();
        assert!(!r.polytope.reflexive);
        assert!(r.hodge.is_none() && r.betti_rows.is_empty());
    }

    #[test]
    fn single_member() {
        let opts = AnalysisOptions {
            swapped_pairs: Some(2),
            ..Default::default()
        };
        let r = analyze(&ws([1, 1, 9, 9, 4, 4]), &opts).unwrap();
        assert_eq!(r.betti_rows.len(), 1);
        assert_eq!(r.betti_rows[0].b2, 2);
        let opts = AnalysisOptions {
            swapped_pairs: Some(4),
            ..Default::default()
        };
        assert!(analyze(&ws([1, 1, 9, 9, 4, 4]), &opts).is_err());
    }
}
