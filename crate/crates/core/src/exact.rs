//! Exact integer and rational linear algebra, plus the small Diophantine
//! primitives (gcds, monomial counting) the filters are built on.
//!
//! Everything here is arbitrary precision. Weight arithmetic uses `u64` only
//! where the inputs are validated to keep sums far below the type's range.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rational = BigRational;
pub type IntVector = Vec<Int>;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn int_vec(values: &[i64]) -> IntVector {
    values.iter().map(|&v| Int::from(v)).collect()
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Divides a nonzero integer vector by the gcd of its entries.
pub fn primitive(v: &mut [Int]) {
    let g = v.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

pub fn gcd_all(values: &[u64]) -> Result<u64> {
    if values.is_empty() {
        return Err(Error::Usage("gcd of an empty list".into()));
    }
    Ok(values.iter().fold(0u64, |acc, &v| acc.gcd(&v)))
}

/// Dense integer matrix, row major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_rows(rows: &[IntVector]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(&rows.iter().map(|r| int_vec(r)).collect::<Vec<_>>())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> IntVector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> IntVector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> IntVector {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| dot(&self.data[i * self.cols..(i + 1) * self.cols], v))
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn diagonal(&self) -> IntVector {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .collect()
    }

    pub fn determinant(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let rat = to_rational_rows(self);
        let (_, det) = echelon(rat);
        debug_assert!(det.is_integer());
        det.to_integer()
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(&(0..self.rows).map(|i| self.row(i)).collect::<Vec<_>>())
    }

    /// Exact inverse; `None` when singular or when the inverse is not integral.
    pub fn inverse(&self) -> Option<Self> {
        let rat = self.inverse_rational()?;
        let n = self.rows;
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let x = &rat[i][j];
                if !x.is_integer() {
                    return None;
                }
                inv[(i, j)] = x.to_integer();
            }
        }
        Some(inv)
    }

    /// Exact rational inverse as rows; `None` when singular.
    #[allow(clippy::needless_range_loop)]
    pub fn inverse_rational(&self) -> Option<Vec<Vec<Rational>>> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rational> = (0..n)
                    .map(|j| Rational::from_integer(self[(i, j)].clone()))
                    .collect();
                row.extend((0..n).map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }));
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !aug[r][c].is_zero())?;
            aug.swap(c, p);
            let pivot = aug[c][c].clone();
            for x in aug[c].iter_mut() {
                *x /= &pivot;
            }
            for r in 0..n {
                if r != c && !aug[r][c].is_zero() {
                    let f = aug[r][c].clone();
                    for k in 0..2 * n {
                        let v = &aug[c][k] * &f;
                        aug[r][k] -= v;
                    }
                }
            }
        }
        Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row(&mut self, dst: usize, src: usize, factor: &Int) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * factor;
            self[(dst, j)] += v;
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, factor: &Int) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * factor;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(Int::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Smith normal form: returns `(u, d, v)` with `u * a * v == d`, `u` and `v`
/// unimodular and `d` diagonal with each entry dividing the next.
pub fn smith_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        // Pivot on the smallest nonzero entry of the remaining block.
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !d[(i, j)].is_zero()
                        && best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return (u, d, v);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if !d[(i, t)].is_zero() {
                    let q = d[(i, t)].div_floor(&d[(t, t)]);
                    d.add_row(i, t, &-&q);
                    u.add_row(i, t, &-&q);
                    clean &= d[(i, t)].is_zero();
                }
            }
            for j in t + 1..n {
                if !d[(t, j)].is_zero() {
                    let q = d[(t, j)].div_floor(&d[(t, t)]);
                    d.add_col(j, t, &-&q);
                    v.add_col(j, t, &-&q);
                    clean &= d[(t, j)].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold any offending row into the pivot row.
            let pivot = d[(t, t)].clone();
            let offender =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    d.add_row(t, i, &Int::one());
                    u.add_row(t, i, &Int::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    (u, d, v)
}

fn to_rational_rows(a: &IntMatrix) -> Vec<Vec<Rational>> {
    (0..a.rows())
        .map(|i| a.row(i).into_iter().map(Rational::from_integer).collect())
        .collect()
}

/// Gaussian elimination in place; returns (rank, determinant-if-square).
#[allow(clippy::needless_range_loop)]
fn echelon(mut rows: Vec<Vec<Rational>>) -> (usize, Rational) {
    let n_rows = rows.len();
    let n_cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut det = Rational::one();
    for c in 0..n_cols {
        let Some(p) = (rank..n_rows).find(|&r| !rows[r][c].is_zero()) else {
            det = Rational::zero();
            continue;
        };
        if p != rank {
            rows.swap(p, rank);
            det = -det;
        }
        let pivot = rows[rank][c].clone();
        det *= &pivot;
        for r in rank + 1..n_rows {
            if !rows[r][c].is_zero() {
                let f = &rows[r][c] / &pivot;
                for k in c..n_cols {
                    let v = &rows[rank][k] * &f;
                    rows[r][k] -= v;
                }
            }
        }
        rank += 1;
        if rank == n_rows {
            break;
        }
    }
    if rank < n_rows.min(n_cols) {
        det = Rational::zero();
    }
    (rank, det)
}

pub fn rank_of_rows(rows: &[IntVector]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    echelon(
        rows.iter()
            .map(|r| r.iter().cloned().map(Rational::from_integer).collect())
            .collect(),
    )
    .0
}

pub fn rank_of_rational_rows(rows: &[Vec<Rational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    echelon(rows.to_vec()).0
}

/// Nonnegative solvability of `target = sum w_i * d_i`.
///
/// Backed by a table of the smallest representable value in each residue
/// class modulo the smallest weight; one table answers every target.
#[derive(Debug, Clone)]
pub struct Representability {
    modulus: u64,
    smallest: Vec<Option<u64>>,
}

impl Representability {
    pub fn new(weights: &[u64]) -> Self {
        assert!(
            !weights.is_empty() && weights.iter().all(|&w| w > 0),
            "weights must be positive"
        );
        let modulus = *weights.iter().min().unwrap();
        let m = modulus as usize;
        let mut smallest: Vec<Option<u64>> = vec![None; m];
        smallest[0] = Some(0);
        // Round-robin relaxation: each weight's residue action splits the
        // classes into gcd-many cycles. Walking a cycle once from its
        // current minimum settles it.
        for &w in weights {
            let step = (w % modulus) as usize;
            if step == 0 {
                continue;
            }
            let g = m.gcd(&step);
            let cycle = m / g;
            for start in 0..g {
                let Some(mut best) = (0..cycle)
                    .filter_map(|k| smallest[(start + k * step) % m])
                    .min()
                else {
                    continue;
                };
                let mut pos = (0..cycle)
                    .map(|k| (start + k * step) % m)
                    .find(|&r| smallest[r] == Some(best))
                    .unwrap();
                for _ in 0..cycle {
                    best += w;
                    pos = (pos + step) % m;
                    match smallest[pos] {
                        Some(s) if s <= best => best = s,
                        _ => smallest[pos] = Some(best),
                    }
                }
            }
        }
        Self { modulus, smallest }
    }

    pub fn contains(&self, target: u64) -> bool {
        self.smallest[(target % self.modulus) as usize].is_some_and(|s| s <= target)
    }
}

pub fn representable(target: u64, weights: &[u64]) -> bool {
    Representability::new(weights).contains(target)
}

/// Number of nonnegative integer solutions of `target = sum w_i * d_i`.
pub fn count_representations(target: u64, weights: &[u64]) -> Result<u128> {
    let t = usize::try_from(target).map_err(|_| Error::Overflow("representation target"))?;
    let mut ways = vec![0u128; t + 1];
    ways[0] = 1;
    for &w in weights {
        let w = w as usize;
        if w == 0 {
            return Err(Error::InvalidInput("zero weight".into()));
        }
        for s in w..=t {
            ways[s] = ways[s]
                .checked_add(ways[s - w])
                .ok_or(Error::Overflow("representation count"))?;
        }
    }
    Ok(ways[t])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_count(target: u64, weights: &[u64]) -> u64 {
        fn go(t: u64, w: &[u64]) -> u64 {
            match w.split_first() {
                None => u64::from(t == 0),
                Some((&first, rest)) => (0..=t / first).map(|k| go(t - k * first, rest)).sum(),
            }
        }
        go(target, weights)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_all(&[8, 12]).unwrap(), 4);
        assert_eq!(gcd_all(&[21, 21, 49, 49]).unwrap(), 7);
        assert_eq!(gcd_all(&[5]).unwrap(), 5);
        assert!(gcd_all(&[]).is_err());
    }

    fn check_snf(a: &IntMatrix) -> IntMatrix {
        let (u, d, v) = smith_normal_form(a);
        assert_eq!(u.mul(a).mul(&v), d);
        assert!(d.is_diagonal());
        assert_eq!(u.determinant().abs(), Int::one());
        assert_eq!(v.determinant().abs(), Int::one());
        let diag = d.diagonal();
        for w in diag.windows(2) {
            if !w[0].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]), "{diag:?}");
            } else {
                assert!(w[1].is_zero());
            }
        }
        d
    }

    #[test]
    fn snf_examples() {
        assert_eq!(check_snf(&IntMatrix::identity(3)), IntMatrix::identity(3));
        let row = IntMatrix::from_i64(&[&[1, 1, 1, 1, 4, 4]]);
        assert_eq!(check_snf(&row).row(0), int_vec(&[1, 0, 0, 0, 0, 0]));
        let d = IntMatrix::from_i64(&[&[2, 0], &[0, 4]]);
        assert_eq!(check_snf(&d), d);
        let e = IntMatrix::from_i64(&[&[4, 0], &[0, 6]]);
        assert_eq!(check_snf(&e).diagonal(), int_vec(&[2, 12]));
    }

    #[test]
    fn representable_examples() {
        assert!(!representable(3, &[2, 2]));
        assert!(representable(0, &[7, 9]));
        assert!(representable(84, &[12, 28]));
        assert_eq!(
            (0..=3)
                .filter(|k| k * 28 <= 84 && (84 - k * 28) % 12 == 0)
                .count(),
            2
        );
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_representations(28, &[4, 4]).unwrap(), 8);
        assert_eq!(brute_count(28, &[4, 4]), 8);
        assert_eq!(count_representations(24, &[8, 12]).unwrap(), 2);
        assert_eq!(brute_count(24, &[8, 12]), 2);
        assert_eq!(count_representations(1, &[2]).unwrap(), 0);
        // degree-6 monomials in 6 variables
        assert_eq!(count_representations(6, &[1; 6]).unwrap(), 462);
    }

    #[test]
    fn inverse_and_rank() {
        let a = IntMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), IntMatrix::identity(2));
        assert!(IntMatrix::from_i64(&[&[2, 0], &[0, 1]]).inverse().is_none());
        assert_eq!(IntMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]).rank(), 1);
    }

    proptest! {
        #[test]
        fn snf_random(entries in prop::collection::vec(-9i64..=9, 12), shape in 0usize..3) {
            let (r, c) = [(3, 4), (4, 3), (2, 6)][shape];
            let rows: Vec<&[i64]> = entries.chunks(c).take(r).collect();
            check_snf(&IntMatrix::from_i64(&rows));
        }

        #[test]
        fn representable_matches_brute_force(
            t in 0u64..=200,
            w in prop::collection::vec(1u64..=30, 1..=4),
        ) {
            let brute = brute_count(t, &w);
            prop_assert_eq!(representable(t, &w), brute > 0);
            prop_assert_eq!(count_representations(t, &w).unwrap(), u128::from(brute));
        }
    }
}
