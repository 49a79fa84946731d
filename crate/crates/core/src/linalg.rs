//! Exact rational linear algebra.
//!
//! Everything here works over [`Rational`] (arbitrary precision), so rank,
//! kernel and determinant computations never confuse a tiny value with zero.
//! Subspaces are stored by their reduced row-echelon basis, which makes
//! subspace equality a structural comparison.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

/// Exact rational number with arbitrary-precision numerator and denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed so that a matrix with zero
    /// rows still has a well-defined shape.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n_rows = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n_rows,
            cols,
            data,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Reduced row-echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = rref_in_place(&mut m.data, m.rows, m.cols);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Right kernel `{v : M v = 0}` in canonical form.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut rows = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, free).clone();
            }
            rows.push(v);
        }
        Subspace::from_independent_rows(self.cols, rows)
    }

    pub fn det(&self) -> Result<Rational, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != col {
                for c in 0..n {
                    a.swap(p * n + c, col * n + c);
                }
                det = -det;
            }
            let pivot = a[col * n + col].clone();
            det *= &pivot;
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let factor = &a[r * n + col] / &pivot;
                for c in col..n {
                    let delta = &factor * &a[col * n + c];
                    a[r * n + c] -= delta;
                }
            }
        }
        Ok(det)
    }

    /// Some solution of `M x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let w = self.cols + 1;
        let mut aug = Vec::with_capacity(self.rows * w);
        for r in 0..self.rows {
            aug.extend(self.row(r).iter().cloned());
            aug.push(b[r].clone());
        }
        let pivots = rref_in_place(&mut aug, self.rows, w);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = aug[i * w + self.cols].clone();
        }
        Ok(Some(x))
    }
}

/// Determinant of an integer matrix by Bareiss fraction-free elimination.
pub fn det_integer(rows: &[Vec<BigInt>]) -> Result<BigInt, LinalgError> {
    let n = rows.len();
    if let Some(bad) = rows.iter().find(|r| r.len() != n) {
        return Err(LinalgError::NonSquare {
            rows: n,
            cols: bad.len(),
        });
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(sign * &a[n - 1][n - 1])
}

fn rref_in_place(data: &mut [Rational], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut lead = 0;
    for col in 0..cols {
        if lead == rows {
            break;
        }
        let Some(p) = (lead..rows).find(|&r| !data[r * cols + col].is_zero()) else {
            continue;
        };
        if p != lead {
            for c in 0..cols {
                data.swap(p * cols + c, lead * cols + c);
            }
        }
        let inv = data[lead * cols + col].recip();
        for c in col..cols {
            if !data[lead * cols + c].is_zero() {
                data[lead * cols + c] *= &inv;
            }
        }
        for r in 0..rows {
            if r == lead || data[r * cols + col].is_zero() {
                continue;
            }
            let factor = data[r * cols + col].clone();
            for c in col..cols {
                if data[lead * cols + c].is_zero() {
                    continue;
                }
                let delta = &factor * &data[lead * cols + c];
                data[r * cols + c] -= delta;
            }
        }
        pivots.push(col);
        lead += 1;
    }
    pivots
}

/// A subspace of `Q^ambient`, stored as its reduced row-echelon basis.
///
/// Two subspaces are equal iff their canonical bases are identical, so the
/// derived `PartialEq` is subspace equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) [", self.dim(), self.ambient)?;
        for row in &self.basis {
            write!(f, "(")?;
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "]")
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_independent_rows(ambient, (0..ambient).map(|i| unit_vector(ambient, i)).collect())
    }

    /// Span of arbitrary vectors.
    pub fn span(ambient: usize, vectors: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let m = Matrix::from_rows(ambient, vectors)?;
        Ok(Self::from_rref(&m))
    }

    /// Span of a set of coordinate vectors `e_i`.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut idx: Vec<usize> = indices.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        Subspace {
            ambient,
            basis: idx.into_iter().map(|i| unit_vector(ambient, i)).collect(),
        }
    }

    fn from_rref(m: &Matrix) -> Self {
        let (r, pivots) = m.rref();
        Subspace {
            ambient: m.cols,
            basis: (0..pivots.len()).map(|i| r.row(i).to_vec()).collect(),
        }
    }

    fn from_independent_rows(ambient: usize, rows: Vec<Vec<Rational>>) -> Self {
        let m = Matrix::from_rows(ambient, rows).expect("rows built with ambient length");
        Self::from_rref(&m)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Canonical (reduced row-echelon) basis.
    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(self.ambient, self.basis.clone()).expect("basis rows have ambient length")
    }

    fn check_ambient(&self, n: usize) -> Result<(), LinalgError> {
        if self.ambient == n {
            Ok(())
        } else {
            Err(LinalgError::DimensionMismatch {
                expected: self.ambient,
                found: n,
            })
        }
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool, LinalgError> {
        self.check_ambient(v.len())?;
        // reduce v against the echelon basis
        let mut rest = v.to_vec();
        for row in &self.basis {
            let pivot = row
                .iter()
                .position(|x| !x.is_zero())
                .expect("basis rows are nonzero");
            if rest[pivot].is_zero() {
                continue;
            }
            let factor = rest[pivot].clone();
            for (r, b) in rest.iter_mut().zip(row) {
                if !b.is_zero() {
                    *r -= &factor * b;
                }
            }
        }
        Ok(rest.iter().all(Zero::is_zero))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, LinalgError> {
        other.check_ambient(self.ambient)?;
        for row in &self.basis {
            if !other.contains(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other.ambient)?;
        let rows = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::span(self.ambient, rows)
    }

    /// `{w : <u, w> = 0 for all u in self}` under the standard pairing.
    pub fn annihilator(&self) -> Subspace {
        self.basis_matrix().kernel()
    }

    /// Intersection, as the kernel of both annihilators stacked as constraints.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other.ambient)?;
        let constraints: Vec<Vec<Rational>> = self
            .annihilator()
            .basis
            .into_iter()
            .chain(other.annihilator().basis)
            .collect();
        Ok(Matrix::from_rows(self.ambient, constraints)?.kernel())
    }
}

/// `{v : L v ∈ W}`.
pub fn preimage(map: &Matrix, target: &Subspace) -> Result<Subspace, LinalgError> {
    target.check_ambient(map.rows())?;
    let constraints = target.annihilator().basis_matrix();
    Ok(constraints.mul(map)?.kernel())
}

pub fn unit_vector(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn identity_det_is_one() {
        assert_eq!(Matrix::identity(3).det().unwrap(), rat(1));
    }

    #[test]
    fn det_rejects_non_square() {
        let m = Matrix::from_i64(&[&[1, 2, 3]]).unwrap();
        assert_eq!(m.det(), Err(LinalgError::NonSquare { rows: 1, cols: 3 }));
    }

    #[test]
    fn det_needs_row_swap() {
        let m = Matrix::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(m.det().unwrap(), rat(-1));
        let m = Matrix::from_i64(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]]).unwrap();
        // 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(m.det().unwrap(), rat(0));
    }

    #[test]
    fn bareiss_matches_rational_det() {
        let rows = [[3i64, -1, 4, 1], [5, 9, -2, 6], [5, 3, 5, -8], [9, 7, 9, 3]];
        let m = Matrix::from_i64(&rows.iter().map(|r| &r[..]).collect::<Vec<_>>()).unwrap();
        let ints: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        assert_eq!(
            Rational::from_integer(det_integer(&ints).unwrap()),
            m.det().unwrap()
        );
        let zero_lead = vec![
            vec![BigInt::from(0), BigInt::from(2)],
            vec![BigInt::from(3), BigInt::from(1)],
        ];
        assert_eq!(det_integer(&zero_lead).unwrap(), BigInt::from(-6));
    }

    #[test]
    fn kernel_of_row_vector() {
        let m = Matrix::from_i64(&[&[1, 1]]).unwrap();
        let k = m.kernel();
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&[rat(1), rat(-1)]).unwrap());
    }

    #[test]
    fn rank_of_all_ones() {
        let m = Matrix::from_i64(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Matrix::from_i64(&[&[1, 2], &[2, 4]]).unwrap();
        let x = m.solve(&[rat(3), rat(6)]).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), vec![rat(3), rat(6)]);
        assert_eq!(m.solve(&[rat(3), rat(7)]).unwrap(), None);
        assert!(m.solve(&[rat(1)]).is_err());
    }

    #[test]
    fn subspace_identities() {
        let u = Subspace::span(2, vec![vec![rat(1), rat(0)]]).unwrap();
        let v = Subspace::span(2, vec![vec![rat(0), rat(1)]]).unwrap();
        assert_eq!(u.sum(&v).unwrap(), Subspace::full(2));
        assert_eq!(u.intersect(&Subspace::full(2)).unwrap(), u);
        assert!(u.intersect(&v).unwrap().is_zero());
        assert_eq!(preimage(&Matrix::identity(2), &u).unwrap(), u);
        assert!(u.sum(&Subspace::zero(3)).is_err());
    }

    #[test]
    fn canonical_form_ignores_spanning_set() {
        let a = Subspace::span(
            3,
            vec![vec![rat(1), rat(2), rat(3)], vec![rat(0), rat(1), rat(1)]],
        )
        .unwrap();
        let b = Subspace::span(
            3,
            vec![
                vec![rat(1), rat(3), rat(4)],
                vec![q(1, 2), rat(1), q(3, 2)],
                vec![rat(2), rat(5), rat(7)],
            ],
        )
        .unwrap();
        assert_eq!(a, b);
    }

    fn small_rows(ambient: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
        prop::collection::vec(
            prop::collection::vec((-3i64..=3, 1i64..=3).prop_map(|(n, d)| q(n, d)), ambient),
            0..=ambient + 1,
        )
    }

    proptest! {
        #[test]
        fn rebuilding_from_canonical_basis_is_identity(rows in small_rows(5)) {
            let s = Subspace::span(5, rows).unwrap();
            let again = Subspace::span(5, s.basis().to_vec()).unwrap();
            prop_assert_eq!(s, again);
        }

        #[test]
        fn dimension_formula(a in small_rows(4), b in small_rows(4)) {
            let u = Subspace::span(4, a).unwrap();
            let v = Subspace::span(4, b).unwrap();
            let s = u.sum(&v).unwrap();
            let i = u.intersect(&v).unwrap();
            prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
            prop_assert!(i.is_subspace_of(&u).unwrap() && i.is_subspace_of(&v).unwrap());
        }

        #[test]
        fn preimage_contains_kernel(l in small_rows(4), w in small_rows(3)) {
            let rows: Vec<Vec<Rational>> = (0..3)
                .map(|r| l.get(r).cloned().unwrap_or_else(|| vec![Rational::zero(); 4]))
                .collect();
            let map = Matrix::from_rows(4, rows).unwrap();
            let target = Subspace::span(3, w).unwrap();
            let pre = preimage(&map, &target).unwrap();
            prop_assert!(map.kernel().is_subspace_of(&pre).unwrap());
            for v in pre.basis() {
                prop_assert!(target.contains(&map.mul_vec(v).unwrap()).unwrap());
            }
        }

        #[test]
        fn kernel_vectors_are_annihilated(rows in small_rows(4)) {
            let m = Matrix::from_rows(4, rows).unwrap();
            let k = m.kernel();
            prop_assert_eq!(k.dim() + m.rank(), 4);
            for v in k.basis() {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
            }
        }
    }
}
