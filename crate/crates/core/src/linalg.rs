//! Dense exact matrices and the linear-algebra kernel: rank, nullspace,
//! symmetric LDLᵀ and inertia.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{sign_of, Rational, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix has an entry with nonzero imaginary part")]
    NotReal,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("I + A stayed singular after {0} Cayley draws")]
    SingularCayley(usize),
}

/// Row-major dense matrix over an exact field.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn diagonal(entries: &[F]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    /// Build from rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<F>>) -> Result<Self, LinalgError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(Self { rows: n, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[F] {
        &self.data
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

    /// Matrix product. Panics when the inner dimensions differ.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul inner dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.clone() * other[(k, j)].clone();
                    let cur = std::mem::replace(&mut out[(i, j)], F::zero());
                    out[(i, j)] = cur + prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "mul_vec dimension mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &F) -> Self {
        let data = self.data.iter().map(|a| a.clone() * c.clone()).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// The matrix over ℚ, if every entry is real.
    pub fn as_real(&self) -> Option<Matrix<Rational>> {
        let data = self.data.iter().map(|x| x.as_real()).collect::<Option<Vec<_>>>()?;
        Some(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out[(i, jj)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Exact inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = Self::identity(n).to_rows();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero()).ok_or(LinalgError::Singular)?;
            a.swap(c, p);
            inv.swap(c, p);
            let piv = a[c][c].clone();
            for j in 0..n {
                a[c][j] = a[c][j].clone() / piv.clone();
                inv[c][j] = inv[c][j].clone() / piv.clone();
            }
            for r in 0..n {
                if r == c || a[r][c].is_zero() {
                    continue;
                }
                let f = a[r][c].clone();
                for j in 0..n {
                    a[r][j] = a[r][j].clone() - f.clone() * a[c][j].clone();
                    inv[r][j] = inv[r][j].clone() - f.clone() * inv[c][j].clone();
                }
            }
        }
        Self::from_rows(n, inv)
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot<F: Scalar>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Exact rank by fraction-free (Bareiss) elimination.
///
/// Rows are first scaled to clear denominators, which leaves the rank unchanged
/// and keeps every intermediate value in the integral domain.
pub fn rank<F: Scalar>(m: &Matrix<F>) -> usize {
    let mut a: Vec<Vec<F::Integral>> = (0..m.rows()).map(|i| F::integral_row(m.row(i))).collect();
    bareiss_rank(&mut a, m.cols())
}

fn bareiss_rank<D: crate::scalar::IntegralDomain>(a: &mut [Vec<D>], cols: usize) -> usize {
    let rows = a.len();
    let mut prev = D::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c].clone();
        for i in r + 1..rows {
            let lead = a[i][c].clone();
            for j in c + 1..cols {
                let v = piv.clone() * a[i][j].clone() - lead.clone() * a[r][j].clone();
                a[i][j] = v.exact_div(&prev);
            }
            a[i][c] = D::zero();
        }
        prev = piv;
        r += 1;
    }
    r
}

/// Reduced row echelon form over the field; returns the pivot columns.
pub fn rref<F: Scalar>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c].clone();
        for j in c..cols {
            a[r][j] = a[r][j].clone() / piv.clone();
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..cols {
                a[i][j] = a[i][j].clone() - f.clone() * a[r][j].clone();
            }
        }
        pivots.push(c);
        r += 1;
    }
    (Matrix::from_rows(cols, a).expect("rref keeps shape"), pivots)
}

/// Basis of `{x : m·x = 0}`; one vector per free column, with that entry set to 1.
pub fn nullspace_basis<F: Scalar>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let (r, pivots) = rref(m);
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[(i, f)].clone();
            }
            v
        })
        .collect()
}

/// Counts of negative, positive and zero squares of a real symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InertiaSignature {
    pub neg: usize,
    pub pos: usize,
    pub zero: usize,
}

impl InertiaSignature {
    pub fn new(neg: usize, pos: usize, zero: usize) -> Self {
        Self { neg, pos, zero }
    }

    pub fn rank(&self) -> usize {
        self.neg + self.pos
    }

    pub fn side(&self) -> usize {
        self.neg + self.pos + self.zero
    }
}

impl std::fmt::Display for InertiaSignature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.neg, self.pos, self.zero)
    }
}

/// `m = bᵗ·diag(d)·b` with `b` invertible.
#[derive(Clone, Debug, PartialEq)]
pub struct LdlDecomposition {
    pub b: Matrix<Rational>,
    pub d: Vec<Rational>,
}

impl LdlDecomposition {
    pub fn signature(&self) -> InertiaSignature {
        let mut s = InertiaSignature::new(0, 0, 0);
        for x in &self.d {
            match sign_of(x) {
                -1 => s.neg += 1,
                1 => s.pos += 1,
                _ => s.zero += 1,
            }
        }
        s
    }

    pub fn reconstruct(&self) -> Matrix<Rational> {
        let bt = self.b.transpose();
        bt.matmul(&Matrix::diagonal(&self.d)).matmul(&self.b)
    }
}

fn check_real_symmetric<F: Scalar>(m: &Matrix<F>) -> Result<Matrix<Rational>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let real = m.as_real().ok_or(LinalgError::NotReal)?;
    if !real.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    Ok(real)
}

/// Symmetric-pivoted LDLᵀ over ℚ.
///
/// Diagonal pivots are used while one is nonzero; when the remaining diagonal
/// vanishes but an off-diagonal entry `c` does not, the 2×2 block
/// `[[0,c],[c,0]]` is split as `(c/2)(x+y)² − (c/2)(x−y)²`.
pub fn ldl_decomposition<F: Scalar>(m: &Matrix<F>) -> Result<LdlDecomposition, LinalgError> {
    let mut a = check_real_symmetric(m)?.to_rows();
    let n = a.len();
    let mut active: Vec<usize> = (0..n).collect();
    let mut b_rows: Vec<Vec<Rational>> = Vec::with_capacity(n);
    let mut d: Vec<Rational> = Vec::with_capacity(n);

    while !active.is_empty() {
        if let Some(pos) = active.iter().position(|&k| !a[k][k].is_zero()) {
            let k = active.remove(pos);
            let piv = a[k][k].clone();
            let mut row = vec![Rational::zero(); n];
            row[k] = Rational::one();
            for &j in &active {
                row[j] = a[k][j].clone() / piv.clone();
            }
            for &i in &active {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone() / piv.clone();
                for &j in &active {
                    a[i][j] = a[i][j].clone() - f.clone() * a[k][j].clone();
                }
            }
            b_rows.push(row);
            d.push(piv);
            continue;
        }

        let off = active.iter().enumerate().find_map(|(ii, &k)| {
            active[ii + 1..].iter().find(|&&l| !a[k][l].is_zero()).map(|&l| (k, l))
        });
        let Some((k, l)) = off else {
            for &k in &active {
                let mut row = vec![Rational::zero(); n];
                row[k] = Rational::one();
                b_rows.push(row);
                d.push(Rational::zero());
            }
            break;
        };

        active.retain(|&x| x != k && x != l);
        let c = a[k][l].clone();
        let mut u1 = vec![Rational::zero(); n];
        let mut u2 = vec![Rational::zero(); n];
        u1[k] = Rational::one();
        u2[l] = Rational::one();
        for &z in &active {
            u1[z] = a[l][z].clone() / c.clone();
            u2[z] = a[k][z].clone() / c.clone();
        }
        let two = Rational::from_integer(2.into());
        b_rows.push(u1.iter().zip(&u2).map(|(x, y)| x + y).collect());
        d.push(c.clone() / two.clone());
        b_rows.push(u1.iter().zip(&u2).map(|(x, y)| x - y).collect());
        d.push(-c.clone() / two);

        for &z in &active {
            for &w in &active {
                let corr = (a[k][z].clone() * a[l][w].clone() + a[l][z].clone() * a[k][w].clone()) / c.clone();
                a[z][w] = a[z][w].clone() - corr;
            }
        }
    }

    Ok(LdlDecomposition { b: Matrix::from_rows(n, b_rows)?, d })
}

/// Inertia of a real symmetric matrix (Sylvester's law), exact.
pub fn inertia<F: Scalar>(m: &Matrix<F>) -> Result<InertiaSignature, LinalgError> {
    Ok(ldl_decomposition(m)?.signature())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{complex, int, rat, ComplexRational};

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::<Rational>::identity(3)), 3);
        assert_eq!(rank(&Matrix::<Rational>::zeros(2, 2)), 0);
        assert_eq!(rank(&q(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&q(&[&[0, 1, 0], &[0, 0, 0], &[0, 2, 5]])), 2);
    }

    #[test]
    fn complex_rank_uses_no_conjugation() {
        // rows (1, i) and (i, -1) are proportional over ℂ
        let i = complex(int(0), int(1));
        let one = ComplexRational::from_integer(1);
        let m = Matrix::from_rows(2, vec![vec![one.clone(), i.clone()], vec![i.clone(), -one]]).unwrap();
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn nullspace_examples() {
        let b = nullspace_basis(&q(&[&[1, 1]]));
        assert_eq!(b.len(), 1);
        assert_eq!(b[0], vec![int(-1), int(1)]);

        assert!(nullspace_basis(&Matrix::<Rational>::identity(2)).is_empty());

        let m = q(&[&[1, 2, 3]]);
        let b = nullspace_basis(&m);
        assert_eq!(b.len(), 2);
        for v in &b {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn inertia_examples() {
        let d = Matrix::diagonal(&[int(2), int(-3)]);
        assert_eq!(inertia(&d).unwrap(), InertiaSignature::new(1, 1, 0));
        assert_eq!(inertia(&Matrix::<Rational>::zeros(3, 3)).unwrap(), InertiaSignature::new(0, 0, 3));
        // zero diagonal forces the 2x2 pivot path
        let h = q(&[&[0, 3, 1], &[3, 0, 2], &[1, 2, 0]]);
        let ldl = ldl_decomposition(&h).unwrap();
        assert_eq!(ldl.reconstruct(), h);
        assert_eq!(ldl.signature().rank(), rank(&h));
    }

    #[test]
    fn inertia_errors() {
        assert_eq!(inertia(&q(&[&[1, 2], &[3, 4]])), Err(LinalgError::NotSymmetric));
        let z = Matrix::from_rows(1, vec![vec![complex(int(1), int(1))]]).unwrap();
        assert_eq!(inertia(&z), Err(LinalgError::NotReal));
        assert!(matches!(inertia(&q(&[&[1, 2]])), Err(LinalgError::NotSquare { .. })));
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_rows(2, vec![vec![rat(1, 2), int(3)], vec![int(-1), int(4)]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.matmul(&inv), Matrix::identity(2));
        assert_eq!(q(&[&[1, 2], &[2, 4]]).inverse(), Err(LinalgError::Singular));
    }
}
