//! Dense exact-rational matrices.
//!
//! Row reduction is fraction-free: every row is scaled to a primitive
//! integer vector, eliminated with integer cross-multiplication, and only
//! turned back into rationals once the reduced echelon form is complete.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

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
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
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

    /// Builds a matrix from row vectors; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<Rational>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "row length mismatch");
            data.extend(row.iter().cloned());
        }
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        m
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

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
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

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
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
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "row count mismatch in hstack");
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend(self.row(r).iter().cloned());
            data.extend(other.row(r).iter().cloned());
        }
        Matrix {
            rows: self.rows,
            cols,
            data,
        }
    }

    pub fn scaled(&self, factor: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * factor).collect(),
        }
    }

    pub fn echelon(&self) -> Echelon {
        Echelon::of(self)
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Basis of the right nullspace, one vector per free column in
    /// ascending column order.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        self.echelon().nullspace()
    }
}

/// Reduced row echelon form: nonzero rows only, each pivot equal to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub cols: usize,
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
}

fn primitive(row: &mut [BigInt]) {
    let g = row
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let den = row
        .iter()
        .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    row.iter()
        .map(|x| x.numer() * (&den / x.denom()))
        .collect()
}

impl Echelon {
    pub fn of(m: &Matrix) -> Self {
        let mut work: Vec<Vec<BigInt>> = (0..m.rows())
            .map(|r| {
                let mut row = integer_row(m.row(r));
                primitive(&mut row);
                row
            })
            .filter(|row| row.iter().any(|x| !x.is_zero()))
            .collect();
        let mut pivots = Vec::new();
        let mut top = 0;
        for c in 0..m.cols() {
            if top == work.len() {
                break;
            }
            let Some(found) = (top..work.len()).find(|&r| !work[r][c].is_zero()) else {
                continue;
            };
            work.swap(top, found);
            let (head, tail) = work.split_at_mut(top);
            let (pivot_row, rest) = tail.split_first_mut().expect("pivot row");
            let p = pivot_row[c].clone();
            for row in head.iter_mut().chain(rest.iter_mut()) {
                if row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                    *x = &*x * &p - &f * y;
                }
                primitive(row);
            }
            pivots.push(c);
            top += 1;
        }
        work.truncate(top);
        let rows = work
            .into_iter()
            .zip(&pivots)
            .map(|(row, &c)| {
                let p = row[c].clone();
                row.into_iter()
                    .map(|x| Rational::new(x, p.clone()))
                    .collect()
            })
            .collect();
        Echelon {
            cols: m.cols(),
            rows,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut pivot_iter = self.pivots.iter().peekable();
        (0..self.cols)
            .filter(|c| {
                if pivot_iter.peek() == Some(&c) {
                    pivot_iter.next();
                    false
                } else {
                    true
                }
            })
            .collect()
    }

    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -row[f].clone();
                }
                v
            })
            .collect()
    }
}

/// Canonical basis of the span of `vectors`: the rows of its reduced echelon form.
pub fn span_basis(len: usize, vectors: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    Matrix::from_rows(len, vectors).echelon().rows
}

/// Incrementally grown subspace of `Q^len`, kept in reduced echelon form.
#[derive(Clone, Debug)]
pub struct Subspace {
    len: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(len: usize) -> Self {
        Subspace {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.len
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (x, y) in w.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].recip();
        for x in w.iter_mut() {
            *x *= &inv;
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&w) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, w);
        true
    }

    /// Rows `q` with `q . s = 0` for every `s` in the subspace; their common
    /// kernel is exactly the subspace.
    pub fn annihilator(&self) -> Matrix {
        let m = Matrix::from_rows(self.len, &self.rows);
        let null = m.nullspace();
        Matrix::from_rows(self.len, &null)
    }
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn abs_max(v: &[Rational]) -> Rational {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
}
