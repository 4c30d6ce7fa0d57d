use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Dense vector of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactVector(Vec<Rational>);

impl ExactVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        Self(entries)
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![Rational::zero(); len])
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.0[index] = Rational::one();
        v
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        Self(entries.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &Self) -> Rational {
        assert_eq!(self.len(), other.len(), "dot product length mismatch");
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(rational_to_f64).collect()
    }
}

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { Rational::zero() })
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

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> ExactVector {
        ExactVector((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    /// Matrix whose columns are `vectors`.
    pub fn from_columns(len: usize, vectors: &[ExactVector]) -> Self {
        Self::from_fn(len, vectors.len(), |i, j| vectors[j].0[i].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal_entries(&self) -> Vec<Rational> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * factor).collect(),
        }
    }

    pub fn mul_vec(&self, v: &ExactVector) -> ExactVector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        ExactVector(
            (0..self.rows)
                .map(|i| self.row(i).iter().zip(&v.0).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    /// `M v == 0`, exactly.
    pub fn annihilates(&self, v: &ExactVector) -> bool {
        self.mul_vec(v).is_zero()
    }

    /// Block transpose on the second tensor factor of a `dim_a * dim_b`
    /// square matrix: entry `((i,j),(k,l))` moves to `((i,l),(k,j))`.
    pub fn partial_transpose(&self, dim_a: usize, dim_b: usize) -> Result<Self> {
        let n = dim_a * dim_b;
        if self.rows != n || self.cols != n {
            return Err(Error::Shape(format!(
                "partial transpose of a {}x{} matrix over {dim_a}x{dim_b}",
                self.rows, self.cols
            )));
        }
        let mut out = Self::zeros(n, n);
        for i in 0..dim_a {
            for j in 0..dim_b {
                for k in 0..dim_a {
                    for l in 0..dim_b {
                        let src = self.get(i * dim_b + j, k * dim_b + l).clone();
                        out.set(i * dim_b + l, k * dim_b + j, src);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row-major `f64` copy.
    pub fn to_f64(&self) -> Vec<f64> {
        self.data.iter().map(rational_to_f64).collect()
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
            })
            .collect()
    }

    /// Fraction-free Gauss-Jordan reduction. Returns the reduced integer rows
    /// and the pivot column of each nonzero row, in order.
    fn reduce(&self) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        let mut rows = self.integer_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&p| !rows[p][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            normalize_row(&mut rows[r]);
            let pivot_row = rows[r].clone();
            let pivot = pivot_row[c].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let factor = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x * &pivot - p * &factor;
                }
                normalize_row(row);
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(pivots.len());
        (rows, pivots)
    }

    pub fn rank(&self) -> usize {
        self.reduce().1.len()
    }

    /// Exact null-space basis, one vector per free column (in column order),
    /// with a `1` in that free position.
    pub fn kernel_basis(&self) -> Result<Vec<ExactVector>> {
        if !self.is_square() {
            return Err(Error::Shape(format!("kernel of a non-square {}x{} matrix", self.rows, self.cols)));
        }
        Ok(self.null_space())
    }

    /// Null space of any shape.
    pub fn null_space(&self) -> Vec<ExactVector> {
        let (rows, pivots) = self.reduce();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                for (row, &c) in rows.iter().zip(&pivots) {
                    if !row[f].is_zero() {
                        x[c] = -Rational::new(row[f].clone(), row[c].clone());
                    }
                }
                ExactVector(x)
            })
            .collect()
    }
}

fn normalize_row(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return;
    }
    let lead_negative = row.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let g = if lead_negative { -g } else { g };
    if !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

pub fn rational_to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// `v` lies in the span of `basis`.
pub fn span_contains(basis: &[ExactVector], v: &ExactVector) -> bool {
    if v.is_zero() {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let a = ExactMatrix::from_columns(v.len(), basis);
    let mut with_v = basis.to_vec();
    with_v.push(v.clone());
    let b = ExactMatrix::from_columns(v.len(), &with_v);
    a.rank() == b.rank()
}

/// The two families span the same subspace (mutual containment).
pub fn same_span(a: &[ExactVector], b: &[ExactVector]) -> bool {
    a.iter().all(|x| span_contains(b, x)) && b.iter().all(|x| span_contains(a, x))
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;

    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape mismatch");
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;

    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape mismatch");
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;

    fn neg(self) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;

    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = ExactMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        *out.entry_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
