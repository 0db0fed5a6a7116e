//! The reflexive pair of a weight system.
//!
//! `M = {y in Z^6 : a.y = 0}` and `N = Z^6 / Z a`. A unimodular `V` with
//! `a V = e_1` gives coordinates on both: `y` has `M`-coordinates
//! `(V^-1 y)[1..]` and a class `mu` has `N`-coordinates `(V^T mu)[1..]`, so
//! the pairing is the ordinary dot product in `Z^5`.

use std::collections::BTreeSet;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{dd, LatticePolytope, Polytope, PolytopePair};
use crate::error::{Error, Result};
use crate::exact::{smith_normal_form, Int, IntMatrix, IntVector};
use crate::weights::{WeightSystem, RANK};

#[derive(Debug, Clone)]
pub struct WeightLattice {
    weights: [u64; RANK],
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl WeightLattice {
    pub fn new(ws: &WeightSystem) -> Self {
        let a = ws.weights();
        let row = IntMatrix::from_rows(&[a.iter().map(|&w| Int::from(w)).collect()]);
        let (u, _, mut v) = smith_normal_form(&row);
        if u[(0, 0)].is_negative() {
            for i in 0..RANK {
                let x = -&v[(i, 0)];
                v[(i, 0)] = x;
            }
        }
        let v_inv = v.inverse().expect("unimodular");
        debug_assert!(row
            .mul(&v)
            .row(0)
            .iter()
            .enumerate()
            .all(|(j, x)| *x == Int::from((j == 0) as i64)));
        Self {
            weights: *a,
            v,
            v_inv,
        }
    }

    pub fn weights(&self) -> &[u64; RANK] {
        &self.weights
    }

    pub fn m_coords(&self, y: &[Int]) -> IntVector {
        self.v_inv.mul_vec(y)[1..].to_vec()
    }

    /// The vector of `Z^6` with the given `M`-coordinates.
    pub fn m_lift(&self, m: &[Int]) -> IntVector {
        let mut full = vec![Int::zero()];
        full.extend_from_slice(m);
        self.v.mul_vec(&full)
    }

    pub fn n_coords(&self, mu: &[Int]) -> IntVector {
        self.v.transpose().mul_vec(mu)[1..].to_vec()
    }

    /// A representative in `Z^6` of the class with the given `N`-coordinates.
    pub fn n_lift(&self, n: &[Int]) -> IntVector {
        let mut full = vec![Int::zero()];
        full.extend_from_slice(n);
        self.v_inv.transpose().mul_vec(&full)
    }

    /// Image of the coordinate vector `e_j` in `N`.
    pub fn ray(&self, j: usize) -> IntVector {
        self.v.row(j)[1..].to_vec()
    }

    /// Matrix on `N`-coordinates induced by `e_i -> e_{perm[i]}`; the
    /// permutation must fix the weights.
    pub fn permutation_on_n(&self, perm: &[usize]) -> Result<IntMatrix> {
        self.check_perm(perm)?;
        let mut t = IntMatrix::zeros(RANK - 1, RANK - 1);
        for c in 0..RANK - 1 {
            let mut unit = vec![Int::zero(); RANK - 1];
            unit[c] = Int::one();
            let mu = self.n_lift(&unit);
            let mut moved = vec![Int::zero(); RANK];
            for i in 0..RANK {
                moved[perm[i]] = mu[i].clone();
            }
            for (r, x) in self.n_coords(&moved).into_iter().enumerate() {
                t[(r, c)] = x;
            }
        }
        Ok(t)
    }

    /// Matrix on `M`-coordinates induced by the same permutation.
    pub fn permutation_on_m(&self, perm: &[usize]) -> Result<IntMatrix> {
        self.check_perm(perm)?;
        let mut t = IntMatrix::zeros(RANK - 1, RANK - 1);
        for c in 0..RANK - 1 {
            let mut unit = vec![Int::zero(); RANK - 1];
            unit[c] = Int::one();
            let y = self.m_lift(&unit);
            let mut moved = vec![Int::zero(); RANK];
            for i in 0..RANK {
                moved[perm[i]] = y[i].clone();
            }
            for (r, x) in self.m_coords(&moved).into_iter().enumerate() {
                t[(r, c)] = x;
            }
        }
        Ok(t)
    }

    fn check_perm(&self, perm: &[usize]) -> Result<()> {
        let ok = perm.len() == RANK
            && (0..RANK).all(|i| perm.contains(&i))
            && (0..RANK).all(|i| self.weights[perm[i]] == self.weights[i]);
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "{perm:?} does not preserve the weights"
            )))
        }
    }
}

/// Exponent vectors of all degree-`d` monomials, `d = sum a_i`.
pub fn monomials(weights: &[u64], degree: u64) -> Vec<Vec<u64>> {
    fn rec(w: &[u64], left: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        match w.split_first() {
            None => {
                if left == 0 {
                    out.push(cur.clone());
                }
            }
            Some((&a, rest)) => {
                for e in 0..=left / a {
                    cur.push(e);
                    rec(rest, left - e * a, cur, out);
                    cur.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(weights, degree, &mut Vec::new(), &mut out);
    out
}

/// The Newton polytope `Δ` of the generic hypersurface, in `M`-coordinates.
pub fn delta_from_weights(ws: &WeightSystem) -> Result<(WeightLattice, LatticePolytope)> {
    let lattice = WeightLattice::new(ws);
    let points: Vec<IntVector> = monomials(ws.weights(), ws.degree())
        .into_iter()
        .map(|m| {
            lattice.m_coords(
                &m.iter()
                    .map(|&e| Int::from(e as i64 - 1))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let poly = Polytope::from_points(&points)?;
    Ok((lattice, LatticePolytope::new(poly, points)?))
}

/// Whether `Δ` of the weight system is reflexive.
pub fn weights_reflexive(ws: &WeightSystem) -> Result<bool> {
    let (_, delta) = delta_from_weights(ws)?;
    Ok(delta.polytope.dual().is_lattice())
}

/// The reflexive pair `(Δ, Δ*)`. Fails with an invalid-input error when `Δ`
/// is not reflexive.
pub fn pair_from_weights(ws: &WeightSystem) -> Result<(WeightLattice, PolytopePair)> {
    let (lattice, delta) = delta_from_weights(ws)?;
    let star = delta.polytope.dual();
    if !star.is_lattice() {
        return Err(Error::InvalidInput(format!(
            "{ws} does not give a reflexive polytope"
        )));
    }
    let points = dual_lattice_points(&lattice, &delta.vertices())?;
    let pair = PolytopePair::new(delta, LatticePolytope::new(star, points)?)?;
    Ok((lattice, pair))
}

/// Lattice points of `Δ*` cone by cone. Every point of `N` lies in some cone
/// `σ_i` spanned by the `e_j`, `j != i`, where it is `sum c_j e_j` with
/// `a_i c ≡ -k a_J (mod a_i)` for some `k`. Scaling by `a_i` keeps the
/// search in integers.
fn dual_lattice_points(
    lattice: &WeightLattice,
    delta_vertices: &[IntVector],
) -> Result<Vec<IntVector>> {
    let a = lattice.weights();
    let lifted: Vec<Vec<i64>> = delta_vertices
        .iter()
        .map(|m| {
            lattice
                .m_lift(m)
                .iter()
                .map(|x| x.to_i64().expect("small"))
                .collect()
        })
        .collect();
    let rays: Vec<Vec<i64>> = (0..RANK)
        .map(|j| {
            lattice
                .ray(j)
                .iter()
                .map(|x| x.to_i64().expect("small"))
                .collect()
        })
        .collect();
    let mut found: BTreeSet<Vec<i64>> = BTreeSet::new();

    for i in 0..RANK {
        let others: Vec<usize> = (0..RANK).filter(|&j| j != i).collect();
        let mut constraints: Vec<IntVector> = others
            .iter()
            .map(|&j| {
                let mut h: IntVector = others.iter().map(|&l| Int::from((l == j) as i64)).collect();
                h.push(Int::zero());
                h
            })
            .collect();
        for y in &lifted {
            let mut h: IntVector = others.iter().map(|&j| Int::from(y[j])).collect();
            h.push(Int::one());
            constraints.push(h);
        }
        let mut bound = vec![0i64; others.len()];
        for r in dd::extreme_rays(&constraints)? {
            let c0 = r[others.len()].to_i64().expect("small");
            if c0 <= 0 {
                return Err(Error::Degenerate("dual polytope is unbounded".into()));
            }
            for k in 0..others.len() {
                bound[k] = bound[k].max(r[k].to_i64().expect("small").div_euclid(c0));
            }
        }

        let ai = a[i] as i64;
        let scaled_bound: Vec<i64> = bound.iter().map(|b| b * ai).collect();
        let coeffs: Vec<Vec<i64>> = lifted
            .iter()
            .map(|y| others.iter().map(|&j| y[j]).collect())
            .collect();
        for k in 0..ai {
            let residue: Vec<i64> = others
                .iter()
                .map(|&j| (-k * a[j] as i64).rem_euclid(ai))
                .collect();
            if residue.iter().zip(&scaled_bound).any(|(r, b)| r > b) {
                continue;
            }
            let mut c = residue.clone();
            loop {
                if coeffs
                    .iter()
                    .all(|y| y.iter().zip(&c).map(|(p, q)| p * q).sum::<i64>() >= -ai)
                {
                    let mut x = [0i64; RANK - 1];
                    for (idx, &j) in others.iter().enumerate() {
                        for (xs, e) in x.iter_mut().zip(&rays[j]) {
                            *xs += c[idx] * e;
                        }
                    }
                    if x.iter().any(|v| v % ai != 0) {
                        return Err(Error::Inconsistent("cone point outside the lattice".into()));
                    }
                    found.insert(x.iter().map(|v| v / ai).collect());
                }
                let mut pos = 0;
                loop {
                    if pos == c.len() {
                        break;
                    }
                    if c[pos] + ai <= scaled_bound[pos] {
                        c[pos] += ai;
                        break;
                    }
                    c[pos] = residue[pos];
                    pos += 1;
                }
                if pos == c.len() {
                    break;
                }
            }
        }
    }
    Ok(found
        .into_iter()
        .map(|p| p.into_iter().map(Int::from).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::count_representations;

    fn ws(w: [u64; 6]) -> WeightSystem {
        WeightSystem::ordered(w).unwrap()
    }

    #[test]
    fn lattice_coordinates_pair_correctly() {
        let l = WeightLattice::new(&ws([1, 1, 9, 9, 4, 4]));
        let y: IntVector = [4, 0, -1, 1, -1, 0].iter().map(|&x| Int::from(x)).collect();
        let m = l.m_coords(&y);
        assert_eq!(l.m_lift(&m), y);
        for (j, yj) in y.iter().enumerate() {
            let dotp: Int = m.iter().zip(&l.ray(j)).map(|(p, q)| p * q).sum();
            assert_eq!(&dotp, yj);
        }
    }

    #[test]
    fn sextic_pair() {
        let w = ws([1; 6]);
        let (lattice, pair) = pair_from_weights(&w).unwrap();
        assert_eq!(pair.delta.lattice_point_count(), 462);
        assert_eq!(pair.delta.vertices().len(), 6);
        assert_eq!(pair.delta_star.lattice_point_count(), 7);
        let mut rays: Vec<IntVector> = (0..6).map(|j| lattice.ray(j)).collect();
        rays.sort();
        assert_eq!(pair.delta_star.vertices(), rays);
        assert_eq!(pair.delta.faces.f_vector().0, vec![6, 15, 20, 15, 6]);
        pair.check_biduality().unwrap();
    }

    #[test]
    fn point_count_matches_monomials() {
        let w = ws([1, 1, 9, 9, 4, 4]);
        let (_, delta) = delta_from_weights(&w).unwrap();
        assert_eq!(
            delta.lattice_point_count() as u128,
            count_representations(28, w.weights()).unwrap()
        );
    }

    #[test]
    fn reflexivity_examples() {
        assert!(!weights_reflexive(&ws([1, 1, 1, 1, 1, 2])).unwrap());
        assert!(weights_reflexive(&ws([1, 1, 1, 1, 4, 4])).unwrap());
        assert!(matches!(
            pair_from_weights(&ws([1, 1, 1, 1, 1, 2])),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn example_pair_has_eleven_divisors() {
        let (_, pair) = pair_from_weights(&ws([1, 1, 9, 9, 4, 4])).unwrap();
        assert_eq!(pair.delta_star.lattice_point_count(), 12);
        assert_eq!(pair.delta_star.interior_lattice_points().len(), 1);
        assert!(pair.delta.faces.satisfies_euler_relation());
        assert!(pair.delta_star.faces.satisfies_euler_relation());
    }
}
