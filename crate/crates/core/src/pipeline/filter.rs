//! The four-stage admissibility filter. Stages run in order and stop at the
//! first failure, which is recorded with a witness.

use serde::{Deserialize, Serialize};

use crate::crepant::{admits_crepant_resolution, CrepantVerdict};
use crate::involution::{admits_nonstandard_involution, canonical_tau};
use crate::singularity::{
    count_quarter_points, hypersurface_singularities, profile_order, Intersection,
};
use crate::weights::{
    is_ambient_well_formed, is_generic_hypersurface_well_formed, quasismoothness, Quasismoothness,
    WeightSystem, RANK,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    WellFormedQuasismooth,
    SingularityProfile,
    Involution,
    CrepantResiduals,
}

impl Stage {
    pub const ALL: [Stage; 4] = [
        Stage::WellFormedQuasismooth,
        Stage::SingularityProfile,
        Stage::Involution,
        Stage::CrepantResiduals,
    ];

    pub fn numeral(self) -> &'static str {
        match self {
            Stage::WellFormedQuasismooth => "i",
            Stage::SingularityProfile => "ii",
            Stage::Involution => "iii",
            Stage::CrepantResiduals => "iv",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageOutcome {
    pub stage: Stage,
    pub passed: bool,
    /// Failure witness, or a warning attached to a pass.
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FilterReport {
    /// Profile order when stage (ii) passed, ascending order otherwise.
    pub weights: [u64; RANK],
    pub degree: u64,
    pub stages: Vec<StageOutcome>,
    pub passed: bool,
    /// Residual singularity types passing only the necessary condition.
    pub warnings: Vec<String>,
    /// Wall time, kept out of the serialized form so reports stay reproducible.
    #[serde(skip)]
    pub elapsed: std::time::Duration,
}

/// Equality ignores the timing.
impl PartialEq for FilterReport {
    fn eq(&self, other: &Self) -> bool {
        (
            self.weights,
            self.degree,
            &self.stages,
            self.passed,
            &self.warnings,
        ) == (
            other.weights,
            other.degree,
            &other.stages,
            other.passed,
            &other.warnings,
        )
    }
}

impl Eq for FilterReport {}

impl FilterReport {
    pub fn first_failure(&self) -> Option<Stage> {
        self.stages.iter().find(|s| !s.passed).map(|s| s.stage)
    }
}

struct Staged {
    stages: Vec<StageOutcome>,
}

impl Staged {
    fn check(&mut self, stage: Stage, result: Result<Option<String>, String>) -> bool {
        let (passed, detail) = match result {
            Ok(d) => (true, d),
            Err(w) => (false, Some(w)),
        };
        self.stages.push(StageOutcome {
            stage,
            passed,
            detail,
        });
        passed
    }
}

fn stage_one(w: &[u64], d: u64) -> Result<Option<String>, String> {
    if !is_ambient_well_formed(w) {
        return Err("some five weights share a common factor".into());
    }
    if !is_generic_hypersurface_well_formed(w, d) {
        let n = w.len();
        for i in 0..n {
            for j in i + 1..n {
                let g = (0..n)
                    .filter(|&l| l != i && l != j)
                    .fold(0u64, |g, l| num_integer::gcd(g, w[l]));
                if !d.is_multiple_of(g) {
                    return Err(format!(
                        "gcd {g} of the weights other than a{i}, a{j} does not divide {d}"
                    ));
                }
            }
        }
    }
    match quasismoothness(w, d) {
        Quasismoothness::Fails { subset } => {
            let idx: Vec<String> = (0..w.len())
                .filter(|&i| subset >> i & 1 == 1)
                .map(|i| i.to_string())
                .collect();
            Err(format!(
                "not quasismooth along the coordinate subset {{{}}}",
                idx.join(",")
            ))
        }
        Quasismoothness::LinearCone => Ok(Some("a weight equals the degree".into())),
        Quasismoothness::Quasismooth => Ok(None),
    }
}

/// Cheap necessary condition for stage (ii), used to skip most of a bulk
/// enumeration before any Diophantine work: four weights `= 1 mod 4` in two
/// equal pairs, two weights with gcd 4 dividing the degree.
pub fn profile_prefilter(w: &[u64; RANK]) -> bool {
    let (mut odd, mut even) = ([0u64; 4], [0u64; 2]);
    let (mut o, mut e) = (0, 0);
    for &x in w {
        match x % 4 {
            1 if o < 4 => {
                odd[o] = x;
                o += 1;
            }
            0 if e < 2 => {
                even[e] = x;
                e += 1;
            }
            _ => return false,
        }
    }
    odd.sort_unstable();
    let d: u64 = w.iter().sum();
    odd[0] == odd[1]
        && odd[2] == odd[3]
        && num_integer::gcd(even[0], even[1]) == 4
        && d.is_multiple_of(even[0])
        && d.is_multiple_of(even[1])
}

pub fn run_filter(ws: &WeightSystem) -> FilterReport {
    let start = web_time::Instant::now();
    let d = ws.degree();
    let mut report = FilterReport {
        weights: *ws.sorted().weights(),
        degree: d,
        stages: Vec::with_capacity(4),
        passed: false,
        warnings: Vec::new(),
        elapsed: Default::default(),
    };
    let mut staged = Staged { stages: Vec::new() };
    let w = ws.sorted();

    let ok = staged.check(Stage::WellFormedQuasismooth, stage_one(w.weights(), d));
    let profile = ok.then(|| profile_order(&w)).flatten();
    let ok = ok
        && staged.check(
            Stage::SingularityProfile,
            match &profile {
                None => Err("no split into two equal pairs of weights = 1 mod 4 and two weights with gcd 4 dividing d".into()),
                Some(p) => match count_quarter_points(p.weights()) {
                    Ok(0) => Err("the generic hypersurface misses the quarter-point stratum".into()),
                    Ok(n) => Ok(Some(format!("{n} points of type 1/4(1,1,1,1)"))),
                    Err(e) => Err(e.to_string()),
                },
            },
        );
    if let Some(p) = &profile {
        report.weights = *p.weights();
    }
    let ok = ok
        && staged.check(
            Stage::Involution,
            match &profile {
                Some(p) if admits_nonstandard_involution(p.weights()) => {
                    canonical_tau(p).map(|_| None).map_err(|e| e.to_string())
                }
                _ => Err("some weight value has w*k odd".into()),
            },
        );
    if ok {
        let p = profile.expect("profile passed");
        let result = residual_check(p.weights(), d, &mut report.warnings);
        report.passed = staged.check(Stage::CrepantResiduals, result);
    }
    report.stages = staged.stages;
    report.elapsed = start.elapsed();
    report
}

/// Every singularity of the generic hypersurface other than the quarter
/// points on `S_{4,5}` must admit a crepant resolution.
fn residual_check(w: &[u64], d: u64, warnings: &mut Vec<String>) -> Result<Option<String>, String> {
    let sings = hypersurface_singularities(w, d).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for s in sings.iter().filter(|s| s.meets()) {
        if s.stratum.indices == [4, 5] {
            continue;
        }
        let Some(t) = &s.local_type else { continue };
        checked += 1;
        let at = match &s.intersection {
            Intersection::Points { count } => format!("{count} points on {}", s.stratum.label()),
            Intersection::Transverse { dimension } | Intersection::Contained { dimension } => {
                format!("dimension-{dimension} locus on {}", s.stratum.label())
            }
            Intersection::Empty => unreachable!("filtered by meets"),
        };
        match admits_crepant_resolution(t) {
            CrepantVerdict::No => {
                return Err(format!("{t} along the {at} has no crepant resolution"))
            }
            CrepantVerdict::NecessaryConditionOnly => warnings.push(format!(
                "{t} along the {at} passes the age-one generation test only"
            )),
            CrepantVerdict::Yes => {}
        }
    }
    Ok(Some(format!(
        "{checked} residual singular strata resolved crepantly"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(w: [u64; 6]) -> FilterReport {
        run_filter(&WeightSystem::new(w).unwrap())
    }

    #[test]
    fn running_example_passes() {
        let r = report([1, 1, 9, 9, 4, 4]);
        assert!(r.passed, "{r:?}");
        assert_eq!(r.weights, [1, 1, 9, 9, 4, 4]);
        assert_eq!(r.degree, 28);
        assert_eq!(r.stages.len(), 4);
    }

    #[test]
    fn non_well_formed_fails_first_stage() {
        let r = report([1, 2, 2, 2, 2, 2]);
        assert_eq!(r.first_failure(), Some(Stage::WellFormedQuasismooth));
        assert_eq!(r.stages.len(), 1);
    }

    #[test]
    fn sextic_fails_profile() {
        let r = report([1; 6]);
        assert_eq!(r.first_failure(), Some(Stage::SingularityProfile));
    }

    #[test]
    fn prefilter_agrees_with_profile_stage() {
        for ws in crate::pipeline::enumerate::enumerate_weight_systems(14) {
            let w = *ws.weights();
            let r = run_filter(&ws);
            let reached_iii = r.stages.len() >= 3;
            assert!(!reached_iii || profile_prefilter(&w), "{w:?}");
        }
    }
}
