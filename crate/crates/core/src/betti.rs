//! Betti numbers of the Spin(7)-manifold obtained by dividing the resolved
//! 4-fold by `τ` and gluing ALE pieces into the fixed `1/4(1,1,1,1)` points.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hodge::HodgeNumbers;

/// One member of a family. `j` is the number of swapped point pairs and
/// `n_fixed` the number of `τ`-fixed quarter points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinSevenInvariants {
    pub b2: u64,
    pub b3: u64,
    pub b4_plus: u64,
    pub b4_minus: u64,
    pub j: u64,
    pub n_fixed: u64,
}

impl SpinSevenInvariants {
    pub fn b4(&self) -> u64 {
        self.b4_plus + self.b4_minus
    }
}

fn nonnegative(name: &str, v: i64) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::Inconsistent(format!("{name} came out negative ({v})")))
}

/// `h` are the Hodge numbers of `Ŷ` after the convention's correction.
/// Each glued ALE piece adds one anti-self-dual class and nothing else,
/// which is where the `+ n_fixed - 1` and the `+1` come from.
pub fn betti_numbers(
    h: &HodgeNumbers,
    h11_tau: u64,
    n_fixed: u64,
    j: u64,
) -> Result<SpinSevenInvariants> {
    if n_fixed == 0 {
        return Err(Error::ConditionY("τ must fix at least one point".into()));
    }
    let (k, b2z) = (n_fixed as i64, h11_tau as i64);
    let twice_plus = h.h22 + k;
    if twice_plus % 2 != 0 {
        return Err(Error::Inconsistent(format!(
            "h22 + k = {twice_plus} is odd"
        )));
    }
    Ok(SpinSevenInvariants {
        b2: h11_tau,
        b3: nonnegative("b3", h.h21)?,
        b4_plus: nonnegative("b4+", twice_plus / 2 - b2z + 1)?,
        b4_minus: nonnegative("b4-", h.h31 + h.h11 - b2z + k - 1)?,
        j,
        n_fixed,
    })
}

/// Number of fixed points forced by the Lefschetz theorem.
pub fn lefschetz_fixed_points(h11: i64, h11_tau: i64, h22: i64, h22_tau: i64) -> i64 {
    2 + 4 * h11_tau - 2 * h11 + 2 * h22_tau - h22
}

/// Solves the Lefschetz relation for `h22_τ`; `None` when the fixed point
/// count is incompatible with the parity of the other terms.
pub fn lefschetz_h22_tau(h11: i64, h11_tau: i64, h22: i64, fixed: i64) -> Option<i64> {
    let twice = fixed - 2 - 4 * h11_tau + 2 * h11 + h22;
    (twice % 2 == 0).then_some(twice / 2)
}
