//! Dense exact linear algebra over a prime field `F_p`.
//!
//! Every basis returned from this module is canonical: column spaces come
//! back in reduced column echelon form and null spaces are read off the
//! reduced row echelon form, so two runs over the same input always agree.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Returns `true` when `p` is a prime.
pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Checks a modulus for primality, mapping failure to an input error.
pub fn check_prime(p: u32) -> Result<u32> {
    if is_prime(p) {
        Ok(p)
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Reduces an arbitrary integer into `[0, p)`.
pub fn reduce(value: i64, p: u32) -> u32 {
    value.rem_euclid(p as i64) as u32
}

fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + b as u64) % p as u64) as u32
}

fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + p as u64 - b as u64) % p as u64) as u32
}

fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p), "inverse of zero");
    // Fermat: a^(p-2)
    let mut base = a as u64 % p as u64;
    let mut exp = p as u64 - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// An element of `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    /// Builds `value mod p`; fails when `p` is not prime.
    pub fn new(value: i64, p: u32) -> Result<Self> {
        check_prime(p)?;
        Ok(Fp {
            value: reduce(value, p),
            modulus: p,
        })
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(self) -> Option<Self> {
        (!self.is_zero()).then(|| Fp {
            value: inv_mod(self.value, self.modulus),
            modulus: self.modulus,
        })
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        assert_eq!(self.modulus, rhs.modulus, "mixed moduli");
        Fp {
            value: add_mod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        assert_eq!(self.modulus, rhs.modulus, "mixed moduli");
        Fp {
            value: sub_mod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        assert_eq!(self.modulus, rhs.modulus, "mixed moduli");
        Fp {
            value: mul_mod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            value: sub_mod(0, self.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Row-major dense matrix over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    modulus: u32,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Matrix<{}x{} mod {}>[",
            self.rows, self.cols, self.modulus
        )?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    /// Builds a matrix from row-major integer data, reducing every entry mod `p`.
    pub fn new(p: u32, rows: usize, cols: usize, data: &[i64]) -> Result<Self> {
        check_prime(p)?;
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            modulus: p,
            data: data.iter().map(|&v| reduce(v, p)).collect(),
        })
    }

    /// Convenience constructor from nested rows. Panics on ragged input.
    pub fn from_rows(p: u32, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&v| reduce(v, p)));
        }
        Matrix {
            rows: rows.len(),
            cols,
            modulus: p,
            data,
        }
    }

    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            modulus: p,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Matrix::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Row-major entries, each in `[0, p)`.
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: i64) {
        self.data[r * self.cols + c] = reduce(value, self.modulus);
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Matrix {
        self.select_columns(&[c])
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.modulus, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.modulus, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m.data[r * cols.len() + j] = self.get(r, c);
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.modulus, rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            m.data[i * self.cols..(i + 1) * self.cols].copy_from_slice(self.row(r));
        }
        m
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        assert_eq!(self.modulus, other.modulus, "mixed moduli");
        let cols = self.cols + other.cols;
        let mut m = Matrix::zeros(self.modulus, self.rows, cols);
        for r in 0..self.rows {
            m.data[r * cols..r * cols + self.cols].copy_from_slice(self.row(r));
            m.data[r * cols + self.cols..(r + 1) * cols].copy_from_slice(other.row(r));
        }
        m
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        assert_eq!(self.modulus, other.modulus, "mixed moduli");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            modulus: self.modulus,
            data,
        }
    }

    /// Block-diagonal sum `diag(self, other)`.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.modulus, self.rows + other.rows, self.cols + other.cols);
        m.paste(0, 0, self);
        m.paste(self.rows, self.cols, other);
        m
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = block.get(r, c);
            }
        }
    }

    /// Sub-block of `rows` × `cols` starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(self.modulus, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.data[r * cols + c] = self.get(r0 + r, c0 + c);
            }
        }
        m
    }

    pub fn scale(&self, s: u32) -> Matrix {
        let p = self.modulus;
        Matrix {
            data: self.data.iter().map(|&v| mul_mod(v, s % p, p)).collect(),
            ..self.clone()
        }
    }

    pub fn try_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(self.mul_unchecked(rhs))
    }

    fn mul_unchecked(&self, rhs: &Matrix) -> Matrix {
        let p = self.modulus as u64;
        let mut out = Matrix::zeros(self.modulus, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] = ((out.data[idx] as u64 + a * rhs.get(k, j) as u64) % p) as u32;
                }
            }
        }
        out
    }

    /// Gauss-Jordan reduction. Only the first `pivot_limit` columns are
    /// eligible as pivots; the rest are carried along (augmented columns).
    pub fn rref_limited(&self, pivot_limit: usize) -> Echelon {
        let p = self.modulus;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..pivot_limit.min(m.cols) {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    m.data.swap(pr * m.cols + c, row * m.cols + c);
                }
            }
            let inv = inv_mod(m.get(row, col), p);
            for c in 0..m.cols {
                let idx = row * m.cols + c;
                m.data[idx] = mul_mod(m.data[idx], inv, p);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in 0..m.cols {
                    let sub = mul_mod(factor, m.get(row, c), p);
                    let idx = r * m.cols + c;
                    m.data[idx] = sub_mod(m.data[idx], sub, p);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { matrix: m, pivots }
    }

    pub fn rref(&self) -> Echelon {
        self.rref_limited(self.cols)
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Columns form a basis of `{x | self · x = 0}`.
    pub fn nullspace_basis(&self) -> Matrix {
        let Echelon { matrix, pivots } = self.rref();
        let p = self.modulus;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(p, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            basis.data[fc * free.len() + j] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                basis.data[pc * free.len() + j] = sub_mod(0, matrix.get(r, fc), p);
            }
        }
        basis
    }

    /// Columns in reduced column echelon form spanning the column space.
    pub fn column_space_basis(&self) -> Matrix {
        let Echelon { matrix, pivots } = self.transpose().rref();
        let rows: Vec<usize> = (0..pivots.len()).collect();
        matrix.select_rows(&rows).transpose()
    }

    /// Some `x` with `a · x = b`, or `None` when the system is inconsistent.
    pub fn solve(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
        if a.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: lhs has {} rows, rhs has {}",
                a.rows, b.rows
            )));
        }
        let Echelon { matrix, pivots } = a.hstack(b).rref_limited(a.cols);
        for r in pivots.len()..matrix.rows {
            if (a.cols..matrix.cols).any(|c| matrix.get(r, c) != 0) {
                return Ok(None);
            }
        }
        let mut x = Matrix::zeros(a.modulus, a.cols, b.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for c in 0..b.cols {
                x.data[pc * b.cols + c] = matrix.get(r, a.cols + c);
            }
        }
        Ok(Some(x))
    }

    /// A surjection `F_p^n → F_p^(n-k)` whose kernel is exactly the span of
    /// the (independent) columns of `subspace_basis`.
    pub fn quotient_map(subspace_basis: &Matrix, ambient_dim: usize) -> Result<Matrix> {
        if subspace_basis.rows != ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "quotient_map: basis vectors have length {}, ambient dimension is {ambient_dim}",
                subspace_basis.rows
            )));
        }
        if subspace_basis.rank() != subspace_basis.cols {
            return Err(Error::Input(
                "quotient_map: subspace basis columns are linearly dependent".into(),
            ));
        }
        Ok(subspace_basis.transpose().nullspace_basis().transpose())
    }

    /// Any right inverse `s` (`self · s = I`) of a surjective matrix.
    pub fn right_inverse(&self) -> Option<Matrix> {
        Matrix::solve(self, &Matrix::identity(self.modulus, self.rows))
            .ok()
            .flatten()
    }

    /// Flattens into a single column (row-major order).
    pub fn to_column(&self) -> Matrix {
        Matrix {
            rows: self.data.len(),
            cols: 1,
            modulus: self.modulus,
            data: self.data.clone(),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        assert_eq!(self.modulus, rhs.modulus, "mixed moduli");
        self.mul_unchecked(rhs)
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        let p = self.modulus;
        Matrix {
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| add_mod(a, b, p))
                .collect(),
            ..self.clone()
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            self.shape(),
            rhs.shape(),
            "matrix difference shape mismatch"
        );
        let p = self.modulus;
        Matrix {
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| sub_mod(a, b, p))
                .collect(),
            ..self.clone()
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        let p = self.modulus;
        Matrix {
            data: self.data.iter().map(|&a| sub_mod(0, a, p)).collect(),
            ..self.clone()
        }
    }
}

/// Every subspace of `F_p^n`, each as a canonical column basis
/// (reduced column echelon form), ordered by dimension then pivot pattern.
///
/// Stops with `Error::Budget` once more than `budget` subspaces would be
/// produced.
pub fn all_subspaces(p: u32, n: usize, budget: usize) -> Result<Vec<Matrix>> {
    let mut out = Vec::new();
    for k in 0..=n {
        // pivot sets of size k, in lexicographic order
        let mut pivots: Vec<usize> = (0..k).collect();
        loop {
            // free slots: row-echelon (transposed) entries right of each pivot, not in pivot columns
            let mut slots = Vec::new();
            for (i, &pc) in pivots.iter().enumerate() {
                for c in pc + 1..n {
                    if !pivots.contains(&c) {
                        slots.push((i, c));
                    }
                }
            }
            let total = (p as u64)
                .checked_pow(slots.len() as u32)
                .unwrap_or(u64::MAX);
            if out.len() as u64 + total > budget as u64 {
                return Err(Error::Budget { limit: budget });
            }
            for code in 0..total {
                let mut rows = Matrix::zeros(p, k, n);
                for (i, &pc) in pivots.iter().enumerate() {
                    rows.data[i * n + pc] = 1;
                }
                let mut rest = code;
                for &(i, c) in &slots {
                    rows.data[i * n + c] = (rest % p as u64) as u32;
                    rest /= p as u64;
                }
                out.push(rows.transpose());
            }
            // next combination
            let mut i = k;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if pivots[i] < n - k + i {
                    pivots[i] += 1;
                    for j in i + 1..k {
                        pivots[j] = pivots[j - 1] + 1;
                    }
                    i = usize::MAX;
                    break;
                }
            }
            if i != usize::MAX {
                break;
            }
        }
    }
    Ok(out)
}
