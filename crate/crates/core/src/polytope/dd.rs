//! Double description: extreme rays of a pointed polyhedral cone
//! `{x : <h, x> >= 0 for every constraint h}` in exact integers.

use fixedbitset::FixedBitSet;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{dot, primitive, Int, IntMatrix, IntVector};

#[derive(Clone)]
struct Ray {
    v: IntVector,
    zeros: FixedBitSet,
}

/// Extreme rays of the cone cut out by `constraints`, each primitive.
///
/// Constraints are inserted in the given order, so callers put the ones most
/// likely to be facets first. Fails when the cone is not pointed.
pub fn extreme_rays(constraints: &[IntVector]) -> Result<Vec<IntVector>> {
    let Some(first) = constraints.first() else {
        return Err(Error::Degenerate("no constraints".into()));
    };
    let dim = first.len();
    let n = constraints.len();

    let basis = independent_rows(constraints, dim);
    if basis.len() < dim {
        return Err(Error::Degenerate(format!(
            "constraints have rank {} in dimension {dim}",
            basis.len()
        )));
    }
    let b = IntMatrix::from_rows(
        &basis
            .iter()
            .map(|&i| constraints[i].clone())
            .collect::<Vec<_>>(),
    );
    let inv = b.inverse_rational().expect("independent rows");

    let mut rays: Vec<Ray> = (0..dim)
        .map(|k| {
            let lcm = inv.iter().fold(Int::from(1), |acc, row| {
                num_integer::lcm(acc, row[k].denom().clone())
            });
            let mut v: IntVector = inv
                .iter()
                .map(|row| (&row[k] * &lcm).to_integer())
                .collect();
            primitive(&mut v);
            let mut zeros = FixedBitSet::with_capacity(n);
            for (l, &i) in basis.iter().enumerate() {
                if l != k {
                    zeros.insert(i);
                }
            }
            Ray { v, zeros }
        })
        .collect();

    let mut done = FixedBitSet::with_capacity(n);
    for &i in &basis {
        done.insert(i);
    }

    for (i, h) in constraints.iter().enumerate() {
        if done.contains(i) {
            continue;
        }
        done.insert(i);
        let values: Vec<Int> = rays.iter().map(|r| dot(h, &r.v)).collect();
        if values.iter().all(|s| !s.is_negative()) {
            for (r, s) in rays.iter_mut().zip(&values) {
                if s.is_zero() {
                    r.zeros.insert(i);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len())
            .filter(|&k| values[k].is_positive())
            .collect();
        let neg: Vec<usize> = (0..rays.len())
            .filter(|&k| values[k].is_negative())
            .collect();

        let mut created = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let mut common = rays[p].zeros.clone();
                common.intersect_with(&rays[q].zeros);
                if common.count_ones(..) + 2 < dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == q || !common.is_subset(&r.zeros));
                if !adjacent {
                    continue;
                }
                let (sp, sq) = (&values[p], &values[q]);
                let mut v: IntVector = rays[q]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(x, y)| sp * x - sq * y)
                    .collect();
                primitive(&mut v);
                common.insert(i);
                created.push(Ray { v, zeros: common });
            }
        }

        let mut next = Vec::with_capacity(rays.len() + created.len());
        for (mut r, s) in rays.into_iter().zip(&values) {
            if s.is_zero() {
                r.zeros.insert(i);
                next.push(r);
            } else if s.is_positive() {
                next.push(r);
            }
        }
        next.extend(created);
        rays = next;
    }

    let mut out: Vec<IntVector> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

fn independent_rows(rows: &[IntVector], dim: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut current: Vec<IntVector> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        current.push(r.clone());
        if crate::exact::rank_of_rows(&current) == current.len() {
            chosen.push(i);
            if chosen.len() == dim {
                break;
            }
        } else {
            current.pop();
        }
    }
    chosen
}
