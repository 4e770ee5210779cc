//! Exact linear algebra: dense matrices with fraction-free elimination, and an
//! incremental sparse echelon basis.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        Matrix::from_fn(r, c, |i, j| Scalar::from_int(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * c).collect() }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[Matrix]) -> Matrix {
        let cols = parts.first().map_or(0, |m| m.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols);
            data.extend(p.data.iter().cloned());
            rows += p.rows;
        }
        Matrix { rows, cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn echelon(&self) -> Echelonized {
        bareiss(self.clone())
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right null space. Vector `k` has a 1 at the `k`-th free
    /// column and 0 at every other free column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let ech = self.echelon();
        let pivot_cols: Vec<usize> = ech.pivots.iter().map(|&(_, c)| c).collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_cols.contains(c)).collect();
        let mut out = Vec::with_capacity(free.len());
        for &f in &free {
            let mut x = vec![Scalar::zero(); self.cols];
            x[f] = Scalar::one();
            for &(r, c) in ech.pivots.iter().rev() {
                let mut acc = Scalar::zero();
                for (j, xj) in x.iter().enumerate().skip(c + 1) {
                    if !xj.is_zero() {
                        let a = ech.m.get(r, j);
                        if !a.is_zero() {
                            acc += &(a * xj);
                        }
                    }
                }
                if !acc.is_zero() {
                    x[c] = -(&acc / ech.m.get(r, c));
                }
            }
            out.push(x);
        }
        out
    }

    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return Scalar::one();
        }
        let ech = self.echelon();
        if ech.pivots.len() < self.rows {
            return Scalar::zero();
        }
        // Bareiss leaves the determinant of the row-scaled matrix in the last pivot.
        let last = ech.m.get(self.rows - 1, self.cols - 1).clone();
        let det = if ech.swaps.is_multiple_of(2) { last } else { -last };
        &det / &ech.row_scale
    }
}

struct Echelonized {
    m: Matrix,
    /// (row, column) of each pivot, in increasing order.
    pivots: Vec<(usize, usize)>,
    swaps: usize,
    /// Product of the factors used to clear denominators row by row.
    row_scale: Scalar,
}

/// Fraction-free Gaussian elimination. Rows are first scaled to Gaussian
/// integers; every Bareiss division is then exact and entries stay integral.
fn bareiss(mut m: Matrix) -> Echelonized {
    let (rows, cols) = (m.rows, m.cols);
    let mut row_scale = Scalar::one();
    for i in 0..rows {
        let l = m.row(i).iter().fold(BigInt::one(), |acc, v| acc.lcm(&v.denom_lcm()));
        if !l.is_one() {
            let f = BigRational::from_integer(l);
            for j in 0..cols {
                let idx = i * cols + j;
                m.data[idx] = m.data[idx].scale(&f);
            }
            row_scale = row_scale.scale(&f);
        }
    }
    let mut prev = Scalar::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
            swaps += 1;
        }
        let piv = m.get(r, c).clone();
        for i in r + 1..rows {
            let lead = m.get(i, c).clone();
            for j in c + 1..cols {
                let a = &piv * m.get(i, j);
                let b = if lead.is_zero() { Scalar::zero() } else { &lead * m.get(r, j) };
                let v = &(&a - &b) / &prev;
                m.set(i, j, v);
            }
            m.set(i, c, Scalar::zero());
        }
        pivots.push((r, c));
        prev = piv;
        r += 1;
    }
    Echelonized { m, pivots, swaps, row_scale }
}

/// An incrementally built basis kept in reduced row echelon form over sparse
/// vectors indexed by `K`. Each row remembers which combination of inserted
/// vectors produced it, so membership tests also yield coordinates.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Copy> {
    rows: BTreeMap<K, EchelonRow<K>>,
    inserted: usize,
}

#[derive(Clone, Debug)]
struct EchelonRow<K: Ord + Copy> {
    vec: BTreeMap<K, Scalar>,
    combo: BTreeMap<usize, Scalar>,
}

impl<K: Ord + Copy> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new(), inserted: 0 }
    }
}

impl<K: Ord + Copy> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduced basis rows in pivot order.
    pub fn basis(&self) -> impl Iterator<Item = &BTreeMap<K, Scalar>> {
        self.rows.values().map(|r| &r.vec)
    }

    /// Residual of `v` after elimination, plus the combination of inserted
    /// vectors that was subtracted.
    pub fn reduce(&self, v: &BTreeMap<K, Scalar>) -> (BTreeMap<K, Scalar>, BTreeMap<usize, Scalar>) {
        let mut res = v.clone();
        res.retain(|_, c| !c.is_zero());
        let mut combo: BTreeMap<usize, Scalar> = BTreeMap::new();
        // RREF rows vanish on every other pivot, so the pivots present in `res` only shrink.
        let hits: Vec<K> = res.keys().filter(|k| self.rows.contains_key(k)).copied().collect();
        for p in hits {
            let Some(c) = res.get(&p).cloned() else { continue };
            let row = &self.rows[&p];
            axpy(&mut res, &-&c, &row.vec);
            axpy(&mut combo, &c, &row.combo);
        }
        (res, combo)
    }

    pub fn contains(&self, v: &BTreeMap<K, Scalar>) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Coordinates of `v` over the inserted vectors (independent ones only), if `v` lies in the span.
    pub fn coordinates(&self, v: &BTreeMap<K, Scalar>) -> Option<BTreeMap<usize, Scalar>> {
        let (res, combo) = self.reduce(v);
        res.is_empty().then_some(combo)
    }

    /// Adds `v`; returns `true` if it enlarged the span. The insertion index
    /// counts every call, dependent or not.
    pub fn insert(&mut self, v: &BTreeMap<K, Scalar>) -> bool {
        let id = self.inserted;
        self.inserted += 1;
        let (mut res, combo) = self.reduce(v);
        let Some((&p, lead)) = res.iter().next() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero lead");
        let mut combo: BTreeMap<usize, Scalar> = combo.into_iter().map(|(k, c)| (k, -c)).collect();
        combo.insert(id, Scalar::one());
        for c in res.values_mut() {
            *c = &*c * &inv;
        }
        for c in combo.values_mut() {
            *c = &*c * &inv;
        }
        for row in self.rows.values_mut() {
            if let Some(c) = row.vec.get(&p).cloned() {
                axpy(&mut row.vec, &-&c, &res);
                axpy(&mut row.combo, &-&c, &combo);
            }
        }
        self.rows.insert(p, EchelonRow { vec: res, combo });
        true
    }
}

/// Right null space of a sparse matrix given by its rows, normalized as in
/// [`Matrix::kernel`]: 1 at the vector's own free column, 0 at the others.
pub fn sparse_kernel<'a>(rows: impl IntoIterator<Item = &'a BTreeMap<usize, Scalar>>, cols: usize) -> Vec<Vec<Scalar>> {
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r);
    }
    (0..cols)
        .filter(|c| !ech.rows.contains_key(c))
        .map(|f| {
            let mut x = vec![Scalar::zero(); cols];
            x[f] = Scalar::one();
            for (&p, row) in &ech.rows {
                if let Some(c) = row.vec.get(&f) {
                    x[p] = -c.clone();
                }
            }
            x
        })
        .collect()
}

fn axpy<K: Ord + Copy>(y: &mut BTreeMap<K, Scalar>, a: &Scalar, x: &BTreeMap<K, Scalar>) {
    for (k, v) in x {
        let e = y.entry(*k).or_insert_with(Scalar::zero);
        *e += &(a * v);
        if e.is_zero() {
            y.remove(k);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_rank_deficient_matrix() {
        let m = Matrix::from_int_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        assert!(m.mul_vec(&ker[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn sparse_kernel_matches_dense() {
        let m = Matrix::from_int_rows(&[
            vec![0, 2, 1, 0, 3],
            vec![0, 4, 2, 1, 6],
            vec![1, 0, 1, 0, 0],
            vec![1, 2, 2, 0, 3],
        ]);
        let rows: Vec<BTreeMap<usize, Scalar>> =
            (0..m.rows).map(|i| m.row(i).iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect()).collect();
        assert_eq!(sparse_kernel(&rows, 5), m.kernel());
        assert_eq!(sparse_kernel(&[], 2), Matrix::zeros(0, 2).kernel());
    }

    #[test]
    fn determinants() {
        let m = Matrix::from_int_rows(&[vec![0, 2, 1], vec![3, 1, 0], vec![1, 1, 1]]);
        // cofactor expansion: 0·1 − 2·(3−0) + 1·(3−1) = −4
        assert_eq!(m.determinant(), Scalar::from_int(-4));
        let half = m.scale(&Scalar::from_frac(1, 2));
        assert_eq!(half.determinant(), Scalar::from_frac(-1, 2));
        let c = Matrix::from_fn(2, 2, |i, j| if i == j { Scalar::i() } else { Scalar::from_int(1) });
        // i·i − 1 = −2
        assert_eq!(c.determinant(), Scalar::from_int(-2));
    }

    #[test]
    fn complex_kernel() {
        // [[i, 1]]: kernel spanned by (1, -i)
        let m = Matrix::from_fn(1, 2, |_, j| if j == 0 { Scalar::i() } else { Scalar::one() });
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        assert!(m.mul_vec(&ker[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn echelon_tracks_coordinates() {
        let v = |xs: &[i64]| -> BTreeMap<usize, Scalar> {
            xs.iter().enumerate().filter(|(_, x)| **x != 0).map(|(k, x)| (k, Scalar::from_int(*x))).collect()
        };
        let mut e = Echelon::new();
        assert!(e.insert(&v(&[1, 1, 0])));
        assert!(e.insert(&v(&[0, 1, 1])));
        assert!(!e.insert(&v(&[1, 2, 1])));
        assert_eq!(e.rank(), 2);
        let coords = e.coordinates(&v(&[2, 3, 1])).unwrap();
        assert_eq!(coords.get(&0), Some(&Scalar::from_int(2)));
        assert_eq!(coords.get(&1), Some(&Scalar::from_int(1)));
        assert!(e.coordinates(&v(&[0, 0, 1])).is_none());
    }
}
