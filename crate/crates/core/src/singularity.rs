//! Singular strata of the ambient space, the cyclic quotient types they
//! induce on the generic Calabi-Yau hypersurface, and the singularity
//! profile that admissible weight systems must satisfy.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{count_representations, representable};
use crate::weights::WeightSystem;

/// `1/m (b_1, ..., b_r)`: the generator of `Z_m` acts on `C^r` with weights `b_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuotientSingularityType {
    pub m: u64,
    pub b: Vec<u64>,
}

impl QuotientSingularityType {
    /// Reduces exponents into `[0, m)`.
    pub fn new(m: u64, b: &[u64]) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput(
                "quotient order must be positive".into(),
            ));
        }
        if b.is_empty() {
            return Err(Error::InvalidInput(
                "quotient type needs at least one exponent".into(),
            ));
        }
        Ok(Self {
            m,
            b: b.iter().map(|x| x % m).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        self.b.len()
    }

    /// The type lies in `SL(r, C)`.
    pub fn is_special(&self) -> bool {
        self.b.iter().sum::<u64>() % self.m == 0
    }

    /// Drops zero exponents and sorts the rest, which gives the same
    /// singularity up to isomorphism.
    pub fn normalized(&self) -> Self {
        let mut b: Vec<u64> = self.b.iter().copied().filter(|&x| x != 0).collect();
        b.sort_unstable();
        Self { m: self.m, b }
    }
}

impl fmt::Display for QuotientSingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.b.iter().map(u64::to_string).collect();
        write!(f, "1/{}({})", self.m, b.join(","))
    }
}

impl FromStr for QuotientSingularityType {
    type Err = Error;

    /// Parses `m:b1,b2,...` or `1/m(b1,b2,...)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("cannot parse quotient type {s:?}"));
        let s = s.trim();
        let (m, rest) = if let Some(rest) = s.strip_prefix("1/") {
            let (m, rest) = rest.split_once('(').ok_or_else(bad)?;
            (m, rest.strip_suffix(')').ok_or_else(bad)?)
        } else {
            s.split_once(':').ok_or_else(bad)?
        };
        let m: u64 = m.trim().parse().map_err(|_| bad())?;
        let b = rest
            .split(',')
            .map(|x| x.trim().parse::<u64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        if m > 1 << 16 {
            return Err(Error::InvalidInput(format!("quotient order {m} too large")));
        }
        Self::new(m, &b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    /// Coordinate indices that may be nonzero on the stratum.
    pub indices: Vec<usize>,
    pub m: u64,
    /// Transverse type in the ambient space.
    pub transverse: QuotientSingularityType,
}

impl Stratum {
    pub fn dimension(&self) -> usize {
        self.indices.len() - 1
    }

    pub fn mask(&self) -> u32 {
        self.indices.iter().fold(0, |acc, &i| acc | 1 << i)
    }

    pub fn label(&self) -> String {
        let idx: Vec<String> = self.indices.iter().map(usize::to_string).collect();
        format!("S_{{{}}}", idx.join(","))
    }
}

fn subset(weights: &[u64], mask: u32) -> Vec<u64> {
    (0..weights.len())
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| weights[i])
        .collect()
}

fn complement_type(weights: &[u64], mask: u32, m: u64) -> QuotientSingularityType {
    let b: Vec<u64> = (0..weights.len())
        .filter(|&i| mask >> i & 1 == 0)
        .map(|i| weights[i] % m)
        .filter(|&x| x != 0)
        .collect();
    QuotientSingularityType { m, b }
}

/// Every maximal coordinate stratum with nontrivial stabilizer, largest
/// dimension first. `I` is maximal when it contains every index whose
/// weight is divisible by `gcd(a_I)`.
pub fn singular_strata(weights: &[u64]) -> Vec<Stratum> {
    let n = weights.len();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let m = subset(weights, mask).iter().fold(0u64, |g, x| g.gcd(x));
        if m <= 1 {
            continue;
        }
        let closure = (0..n)
            .filter(|&i| weights[i].is_multiple_of(m))
            .fold(0u32, |acc, i| acc | 1 << i);
        if closure != mask {
            continue;
        }
        out.push(Stratum {
            indices: (0..n).filter(|&i| mask >> i & 1 == 1).collect(),
            m,
            transverse: complement_type(weights, mask, m),
        });
    }
    out.sort_by(|a, b| {
        b.indices
            .len()
            .cmp(&a.indices.len())
            .then(a.indices.cmp(&b.indices))
    });
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Intersection {
    /// The generic hypersurface misses the open stratum.
    Empty,
    /// The stratum lies inside the hypersurface.
    Contained { dimension: usize },
    /// Transverse intersection of the given dimension.
    Transverse { dimension: usize },
    /// Finitely many points.
    Points { count: u128 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypersurfaceSingularity {
    pub stratum: Stratum,
    pub intersection: Intersection,
    /// Transverse type inside the hypersurface; absent when the stratum is missed.
    pub local_type: Option<QuotientSingularityType>,
}

impl HypersurfaceSingularity {
    pub fn meets(&self) -> bool {
        !matches!(self.intersection, Intersection::Empty)
    }
}

/// How the generic degree-`d` hypersurface meets each ambient stratum.
pub fn hypersurface_singularities(
    weights: &[u64],
    degree: u64,
) -> Result<Vec<HypersurfaceSingularity>> {
    let mut out = Vec::new();
    for stratum in singular_strata(weights) {
        let mask = stratum.mask();
        let inner = subset(weights, mask);
        let cnt = count_representations(degree, &inner)?;
        let k = inner.len();
        let (intersection, local_type) = match cnt {
            0 => {
                let e = (0..weights.len())
                    .filter(|&e| mask >> e & 1 == 0)
                    .find(|&e| weights[e] <= degree && representable(degree - weights[e], &inner))
                    .ok_or_else(|| {
                        Error::InvalidInput(format!(
                            "{} lies in the hypersurface and the hypersurface is singular along it",
                            stratum.label()
                        ))
                    })?;
                let local = complement_type(weights, mask | 1 << e, stratum.m);
                (Intersection::Contained { dimension: k - 1 }, Some(local))
            }
            1 => (Intersection::Empty, None),
            _ if k == 1 => (Intersection::Empty, None),
            _ if k == 2 => (
                Intersection::Points { count: cnt - 1 },
                Some(stratum.transverse.clone()),
            ),
            _ => (
                Intersection::Transverse { dimension: k - 2 },
                Some(stratum.transverse.clone()),
            ),
        };
        out.push(HypersurfaceSingularity {
            stratum,
            intersection,
            local_type,
        });
    }
    Ok(out)
}

fn profile_split(weights: &[u64]) -> Option<[u64; 6]> {
    if weights.len() != 6 {
        return None;
    }
    let d: u64 = weights.iter().sum();
    for i in 0..6 {
        for j in i + 1..6 {
            let (x, y) = (weights[i].min(weights[j]), weights[i].max(weights[j]));
            if x.gcd(&y) != 4 || !d.is_multiple_of(x) || !d.is_multiple_of(y) {
                continue;
            }
            let mut rest: Vec<u64> = (0..6)
                .filter(|&l| l != i && l != j)
                .map(|l| weights[l])
                .collect();
            rest.sort_unstable();
            if rest.iter().all(|w| w % 4 == 1) && rest[0] == rest[1] && rest[2] == rest[3] {
                return Some([rest[0], rest[1], rest[2], rest[3], x, y]);
            }
        }
    }
    None
}

/// `a0=a1`, `a2=a3`, each `≡ 1 mod 4`, `gcd(a4,a5)=4`, `a4 | d`, `a5 | d`
/// for some ordering of the weights.
pub fn satisfies_singularity_profile(weights: &[u64]) -> bool {
    profile_split(weights).is_some()
}

/// The weights in profile order, if the profile holds.
pub fn profile_order(ws: &WeightSystem) -> Option<WeightSystem> {
    profile_split(ws.weights()).and_then(|w| WeightSystem::ordered(w).ok())
}

/// Points where the generic hypersurface meets `S_{4,5}`, each of type
/// `1/4(1,1,1,1)`. Takes weights in profile order.
pub fn count_quarter_points(weights: &[u64]) -> Result<u128> {
    let [a4, a5] = [weights[4], weights[5]];
    let d: u64 = weights.iter().sum();
    if a4.gcd(&a5) != 4 || !d.is_multiple_of(a4) || !d.is_multiple_of(a5) {
        return Err(Error::Profile(format!(
            "need gcd(a4,a5)=4 with a4 | d and a5 | d, got {weights:?}"
        )));
    }
    Ok(count_representations(d, &[a4, a5])? - 1)
}
