//! Exact rational linear algebra.
//!
//! Everything downstream (spans of semigroup samples, stabilizer systems,
//! torus kernels) reduces to ranks and kernels over `Q`. Elimination is
//! fraction-free: rational input is cleared to integer rows and reduced with
//! Bareiss updates, so no intermediate ever leaves `Z`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Dense matrix over `Q`. Entries are kept in lowest terms by `BigRational`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch {
                context: "ragged rows",
                expected: ncols,
                found: rows.iter().map(Vec::len).find(|&l| l != ncols).unwrap_or(0),
            });
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds from integer rows; panics on ragged input (test and fixture helper).
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let conv = rows
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect();
        Self::from_rows(conv).expect("rectangular integer rows")
    }

    pub fn from_int_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has wrong length");
            for (j, &x) in r.iter().enumerate() {
                if x != 0 {
                    m.set(i, j, rat(x));
                }
            }
        }
        m
    }

    /// Elementary matrix unit `E_{ij}` scaled by `c`.
    pub fn unit(n: usize, i: usize, j: usize, c: Rational) -> Self {
        let mut m = Self::zeros(n, n);
        m.set(i, j, c);
        m
    }

    pub fn diagonal(diag: &[Rational]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
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
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self.get(r, c).is_zero()))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * s).collect(),
        }
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, i| acc + self.get(i, i))
    }

    /// `[self, other] = self*other - other*self`.
    pub fn bracket(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// `trace(self * other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let b = other.get(k, i);
                if !b.is_zero() {
                    acc += a * b;
                }
            }
        }
        acc
    }

    /// Exact nilpotency test: `M^n = 0` for an `n x n` matrix.
    pub fn is_nilpotent(&self) -> bool {
        assert!(self.is_square());
        let mut p = self.clone();
        for _ in 1..self.rows.max(1) {
            if p.is_zero() {
                return true;
            }
            p = &p * self;
        }
        p.is_zero()
    }

    /// `exp(self)` for a nilpotent matrix; `None` if the series does not terminate.
    pub fn exp_nilpotent(&self) -> Option<Self> {
        let n = self.rows;
        let mut result = Self::identity(n);
        let mut term = Self::identity(n);
        for k in 1..=n {
            term = (&term * self).scale(&ratio(1, k as i64));
            if term.is_zero() {
                return Some(result);
            }
            result = &result + &term;
        }
        if (&term * self).is_zero() {
            Some(result)
        } else {
            None
        }
    }

    /// Row-major flattening, used to vectorise matrices for linear systems.
    pub fn flatten(&self) -> Vec<Rational> {
        self.entries.clone()
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
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

    /// Matrix with the given vectors as columns.
    pub fn from_columns(cols: &[Vec<Rational>], nrows: usize) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (c, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), nrows);
            for (r, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    m.set(r, c, x.clone());
                }
            }
        }
        m
    }

    /// Entries as `[numerator, denominator]` pairs (JSON-friendly).
    pub fn to_fraction_rows(&self) -> Vec<Vec<[String; 2]>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(fraction_pair).collect())
            .collect()
    }
}

pub fn fraction_pair(x: &Rational) -> [String; 2] {
    [x.numer().to_string(), x.denom().to_string()]
}

impl Add for &RationalMatrix {
    type Output = RationalMatrix;
    fn add(self, rhs: Self) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &RationalMatrix {
    type Output = RationalMatrix;
    fn sub(self, rhs: Self) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &RationalMatrix {
    type Output = RationalMatrix;
    fn neg(self) -> RationalMatrix {
        self.scale(&rat(-1))
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;
    fn mul(self, rhs: Self) -> RationalMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = RationalMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.entries[idx] += a * b;
                    }
                }
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Integer row helpers

/// Clears denominators: returns the primitive integer multiple of `v`
/// (zero vector stays zero).
pub fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    make_primitive(ints)
}

fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    v
}

fn leading_index(v: &[BigInt]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

/// Primitive with a positive leading entry.
fn normalize_sign(v: Vec<BigInt>) -> Vec<BigInt> {
    let mut v = make_primitive(v);
    if let Some(p) = leading_index(&v) {
        if v[p].is_negative() {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
    }
    v
}

/// Rank by Bareiss fraction-free elimination on the integer-cleared rows.
pub fn rank(m: &RationalMatrix) -> usize {
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|r| primitive_integer(m.row(r)))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    bareiss_rank(&mut rows, m.cols())
}

fn bareiss_rank(rows: &mut [Vec<BigInt>], cols: usize) -> usize {
    let nrows = rows.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = pivot_row[c].clone();
        for row in tail.iter_mut() {
            let f = row[c].clone();
            for j in c..cols {
                let v = &pivot * &row[j] - &f * &pivot_row[j];
                row[j] = v / &prev;
            }
            // Columns left of c are already zero below the pivot rows.
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// Incremental reduced row-echelon basis over `Z` (fraction-free Gauss-Jordan).
///
/// Rows are primitive, pivots positive, and every pivot column is zero in all
/// other rows, so the basis is a canonical function of the span.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let g = row[p].gcd(&v[p]);
            let a = &row[p] / &g;
            let b = &v[p] / &g;
            for j in 0..self.dim {
                if row[j].is_zero() && v[j].is_zero() {
                    continue;
                }
                v[j] = &a * &v[j] - &b * &row[j];
            }
            v = make_primitive(v);
        }
        v
    }

    /// Inserts `v`; returns `true` if it was independent of the current rows.
    pub fn insert_int(&mut self, v: Vec<BigInt>) -> bool {
        assert_eq!(
            v.len(),
            self.dim,
            "vector length differs from ambient dimension"
        );
        let v = self.reduce(v);
        let Some(p) = leading_index(&v) else {
            return false;
        };
        let v = normalize_sign(v);
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let g = v[p].gcd(&row[p]);
            let a = &v[p] / &g;
            let b = &row[p] / &g;
            for j in 0..self.dim {
                row[j] = &a * &row[j] - &b * &v[j];
            }
            *row = normalize_sign(std::mem::take(row));
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn insert(&mut self, v: &[Rational]) -> bool {
        self.insert_int(primitive_integer(v))
    }

    pub fn contains_int(&self, v: &[BigInt]) -> bool {
        self.reduce(v.to_vec()).iter().all(Zero::is_zero)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.contains_int(&primitive_integer(v))
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn into_rows(self) -> Vec<Vec<BigInt>> {
        self.rows
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Basis of the solution space of `row . x = 0` for all rows.
    pub fn null_space(&self) -> Vec<Vec<BigInt>> {
        let mut out = Vec::new();
        for f in 0..self.dim {
            if self.pivots.binary_search(&f).is_ok() {
                continue;
            }
            let lcm = self
                .rows
                .iter()
                .zip(&self.pivots)
                .filter(|(row, _)| !row[f].is_zero())
                .fold(BigInt::one(), |acc, (row, &p)| acc.lcm(&row[p]));
            let mut x = vec![BigInt::zero(); self.dim];
            x[f] = lcm.clone();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if !row[f].is_zero() {
                    x[p] = -(&row[f] * (&lcm / &row[p]));
                }
            }
            out.push(normalize_sign(x));
        }
        out
    }
}

/// Linear subspace of `Q^n` with a canonical basis (reduced echelon form,
/// primitive integer rows, positive pivots).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    ambient_dim: usize,
    #[serde(with = "bigint_rows")]
    basis: Vec<Vec<BigInt>>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|r| {
                let xs: Vec<String> = r.iter().map(ToString::to_string).collect();
                format!("({})", xs.join(","))
            })
            .collect();
        write!(f, "Subspace<{}>{{{}}}", self.ambient_dim, rows.join(", "))
    }
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let mut ech = Echelon::new(ambient_dim);
        for i in 0..ambient_dim {
            let mut v = vec![BigInt::zero(); ambient_dim];
            v[i] = BigInt::one();
            ech.insert_int(v);
        }
        Self::from_echelon(ech)
    }

    fn from_echelon(ech: Echelon) -> Self {
        Self {
            ambient_dim: ech.dim,
            basis: ech.into_rows(),
        }
    }

    pub fn span<'a, I>(ambient_dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = &'a [Rational]>,
    {
        let mut ech = Echelon::new(ambient_dim);
        for v in vectors {
            ech.insert(v);
        }
        Self::from_echelon(ech)
    }

    pub fn span_int<I>(ambient_dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<BigInt>>,
    {
        let mut ech = Echelon::new(ambient_dim);
        for v in vectors {
            ech.insert_int(v);
        }
        Self::from_echelon(ech)
    }

    pub fn span_i64<'a, I>(ambient_dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = &'a [i64]>,
    {
        Self::span_int(
            ambient_dim,
            vectors
                .into_iter()
                .map(|v| v.iter().map(|&x| BigInt::from(x)).collect()),
        )
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn basis_rational(&self) -> Vec<Vec<Rational>> {
        self.basis
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| Rational::from_integer(x.clone()))
                    .collect()
            })
            .collect()
    }

    fn echelon(&self) -> Echelon {
        let pivots = self
            .basis
            .iter()
            .map(|r| leading_index(r).expect("basis rows are nonzero"))
            .collect();
        Echelon {
            dim: self.ambient_dim,
            rows: self.basis.clone(),
            pivots,
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        self.echelon().contains(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        let ech = self.echelon();
        other.basis.iter().all(|v| ech.contains_int(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        check_ambient(self, other)?;
        let mut ech = self.echelon();
        for v in &other.basis {
            ech.insert_int(v.clone());
        }
        Ok(Self::from_echelon(ech))
    }

    /// Orthogonal complement under the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        Self::span_int(self.ambient_dim, self.echelon().null_space())
    }
}

fn check_ambient(a: &Subspace, b: &Subspace) -> Result<()> {
    if a.ambient_dim != b.ambient_dim {
        return Err(Error::DimensionMismatch {
            context: "subspace ambient dimension",
            expected: a.ambient_dim,
            found: b.ambient_dim,
        });
    }
    Ok(())
}

/// Basis of `{x : m x = 0}`.
pub fn kernel_basis(m: &RationalMatrix) -> Subspace {
    let mut ech = Echelon::new(m.cols());
    for r in 0..m.rows() {
        ech.insert(m.row(r));
    }
    Subspace::span_int(m.cols(), ech.null_space())
}

/// Basis of `a ∩ b`, via the kernel of `[A^T | -B^T]`.
pub fn span_intersection(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    check_ambient(a, b)?;
    let n = a.ambient_dim;
    if a.dim() == 0 || b.dim() == 0 {
        return Ok(Subspace::zero(n));
    }
    let (da, db) = (a.dim(), b.dim());
    let mut sys = RationalMatrix::zeros(n, da + db);
    for (j, v) in a.basis.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            sys.set(i, j, Rational::from_integer(x.clone()));
        }
    }
    for (j, v) in b.basis.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            sys.set(i, da + j, Rational::from_integer(-x.clone()));
        }
    }
    let ker = kernel_basis(&sys);
    let vectors = ker.basis.iter().map(|coef| {
        let mut v = vec![BigInt::zero(); n];
        for (c, row) in coef[..da].iter().zip(&a.basis) {
            if c.is_zero() {
                continue;
            }
            for (vi, ri) in v.iter_mut().zip(row) {
                *vi += c * ri;
            }
        }
        v
    });
    Ok(Subspace::span_int(n, vectors))
}

/// Rank of a list of integer vectors (rows).
pub fn rank_i64(rows: &[Vec<i64>], cols: usize) -> usize {
    let mut ech = Echelon::new(cols);
    for r in rows {
        ech.insert_int(r.iter().map(|&x| BigInt::from(x)).collect());
    }
    ech.rank()
}

/// Solves a homogeneous system given column vectors; returns kernel coefficient vectors.
pub fn column_relations(columns: &[Vec<Rational>], nrows: usize) -> Vec<Vec<Rational>> {
    let m = RationalMatrix::from_columns(columns, nrows);
    kernel_basis(&m).basis_rational()
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

mod bigint_rows {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(rows: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<Vec<String>> = rows
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        let strs: Vec<Vec<String>> = Vec::deserialize(d)?;
        strs.into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| x.parse().map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}
