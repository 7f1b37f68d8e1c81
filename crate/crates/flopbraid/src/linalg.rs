//! Exact linear algebra over the integers and rationals.
//!
//! Dimensions here are tiny (the number of contracted curves, constraint
//! counts in the dozens), so every routine favours exactness and determinism
//! over asymptotics: no floating point, no randomness.

use num::rational::BigRational;
use num::{BigInt, One, Signed, Zero};

/// Nonnegative gcd of two integers.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Scales an integer vector to a primitive one whose first nonzero entry is
/// positive. Returns `None` for the zero vector.
pub fn primitive_normalized(v: &[i64]) -> Option<Vec<i64>> {
    let g = v.iter().fold(0i64, |acc, &x| gcd(acc, x));
    if g == 0 {
        return None;
    }
    let mut w: Vec<i64> = v.iter().map(|x| x / g).collect();
    let lead = *w.iter().find(|&&x| x != 0).expect("nonzero vector");
    if lead < 0 {
        for x in &mut w {
            *x = -*x;
        }
    }
    Some(w)
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn rat_i64(x: i64) -> BigRational {
    BigRational::from_integer(big(x))
}

/// Square integer matrix, row-major. `apply` treats vectors as columns, so
/// `m.apply(x)` is the usual matrix-vector product.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    n: usize,
    a: Vec<i64>,
}

impl Mat {
    pub fn identity(n: usize) -> Self {
        let mut a = vec![0; n * n];
        for i in 0..n {
            a[i * n + i] = 1;
        }
        Mat { n, a }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Mat {
            n,
            a: rows.into_iter().flatten().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.a[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// Row-major entries, handy for serialization.
    pub fn entries(&self) -> &[i64] {
        &self.a
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat::identity(self.n)
    }

    /// `self * rhs` (compose: apply `rhs` first, then `self`).
    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut a = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let s = self.at(i, k);
                if s == 0 {
                    continue;
                }
                for j in 0..n {
                    a[i * n + j] += s * rhs.at(k, j);
                }
            }
        }
        Mat { n, a }
    }

    pub fn apply_i64(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.at(i, j) * x[j]).sum())
            .collect()
    }

    pub fn apply(&self, x: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| rat_i64(self.at(i, j)) * &x[j])
                    .fold(BigRational::zero(), |a, b| a + b)
            })
            .collect()
    }

    /// Pullback of a covector: returns `l^T * self`, the functional
    /// `x -> l(self * x)`.
    pub fn pullback(&self, l: &[i64]) -> Vec<i64> {
        assert_eq!(l.len(), self.n);
        (0..self.n)
            .map(|j| (0..self.n).map(|i| l[i] * self.at(i, j)).sum())
            .collect()
    }

    /// Exact inverse for matrices with determinant +-1; `None` otherwise.
    pub fn inverse_unimodular(&self) -> Option<Mat> {
        let n = self.n;
        // Gauss-Jordan over the rationals on [self | I].
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..2 * n)
                    .map(|j| {
                        if j < n {
                            rat_i64(self.at(i, j))
                        } else if j - n == i {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let mut det = BigRational::one();
        for col in 0..n {
            let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
            if piv != col {
                m.swap(piv, col);
                det = -det;
            }
            let p = m[col][col].clone();
            det *= &p;
            for j in 0..2 * n {
                m[col][j] = &m[col][j] / &p;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for j in 0..2 * n {
                        let sub = &f * &m[col][j];
                        m[r][j] = &m[r][j] - sub;
                    }
                }
            }
        }
        if !det.clone().abs().is_one() {
            return None;
        }
        let mut a = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                let v = &m[i][n + j];
                debug_assert!(v.is_integer());
                a[i * n + j] = i64::try_from(v.to_integer()).expect("entry fits i64");
            }
        }
        Some(Mat { n, a })
    }

    /// Determinant via rational elimination.
    pub fn det(&self) -> BigRational {
        let n = self.n;
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| rat_i64(self.at(i, j))).collect())
            .collect();
        let mut det = BigRational::one();
        for col in 0..n {
            let piv = match (col..n).find(|&r| !m[r][col].is_zero()) {
                Some(p) => p,
                None => return BigRational::zero(),
            };
            if piv != col {
                m.swap(piv, col);
                det = -det;
            }
            let p = m[col][col].clone();
            det *= &p;
            for r in col + 1..n {
                if !m[r][col].is_zero() {
                    let f = &m[r][col] / &p;
                    for j in col..n {
                        let sub = &f * &m[col][j];
                        m[r][j] = &m[r][j] - sub;
                    }
                }
            }
        }
        det
    }
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Mat{:?}", self.rows())
    }
}

/// Reduced row echelon form; returns the matrix and its pivot columns.
fn rref(mut m: Vec<Vec<BigRational>>) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let piv = match (r..rows).find(|&i| !m[i][c].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        m.swap(piv, r);
        let p = m[r][c].clone();
        for j in 0..cols {
            m[r][j] = &m[r][j] / &p;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let sub = &f * &m[r][j];
                    m[i][j] = &m[i][j] - sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

fn to_rat_rows(rows: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| rat_i64(x)).collect())
        .collect()
}

/// Rank of a set of integer row vectors.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    rref(to_rat_rows(rows)).1.len()
}

/// Whether `v` lies in the row span of `rows`.
pub fn in_rowspan(rows: &[Vec<i64>], v: &[i64]) -> bool {
    let base = rank(rows);
    let mut ext: Vec<Vec<i64>> = rows.to_vec();
    ext.push(v.to_vec());
    rank(&ext) == base
}

/// Integer basis (primitive columns) of `{ x : rows * x = 0 }` in `R^n`.
pub fn nullspace(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    if rows.is_empty() {
        return (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect();
    }
    assert!(rows.iter().all(|r| r.len() == n));
    let (m, pivots) = rref(to_rat_rows(rows));
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free {
        let mut v = vec![BigRational::zero(); n];
        v[fc] = BigRational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][fc].clone();
        }
        // Clear denominators, reduce to a primitive integer vector.
        let mut denom_lcm = BigInt::one();
        for x in &v {
            denom_lcm = num::integer::lcm(denom_lcm, x.denom().clone());
        }
        let ints: Vec<BigInt> = v.iter().map(|x| (x * rat_of(&denom_lcm)).to_integer()).collect();
        let mut g = BigInt::zero();
        for x in &ints {
            g = num::integer::gcd(g, x.clone());
        }
        let out: Vec<i64> = ints
            .iter()
            .map(|x| i64::try_from(x / &g).expect("basis entry fits i64"))
            .collect();
        basis.push(out);
    }
    basis
}

fn rat_of(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

// --- Strict feasibility of homogeneous systems (Fourier-Motzkin) ---

type FmRow = (Vec<BigInt>, BigInt); // a . x >= b

fn normalize_row(mut a: Vec<BigInt>, mut b: BigInt) -> FmRow {
    let mut g = b.clone().abs();
    for x in &a {
        g = num::integer::gcd(g, x.clone());
    }
    if !g.is_zero() && !g.is_one() {
        for x in &mut a {
            *x = &*x / &g;
        }
        b = &b / &g;
    }
    (a, b)
}

/// Finds a rational point with `row . x > 0` for every `row`, or `None` if the
/// open cone is empty. Homogeneity lets strictness be encoded as `row . x >= 1`.
pub fn strict_feasible(n: usize, rows: &[Vec<i64>]) -> Option<Vec<BigRational>> {
    let cons: Vec<FmRow> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), n);
            (r.iter().map(|&x| big(x)).collect(), BigInt::one())
        })
        .collect();
    fm_solve(n, cons)
}

fn fm_solve(n_vars: usize, cons: Vec<FmRow>) -> Option<Vec<BigRational>> {
    if n_vars == 0 {
        return if cons.iter().all(|(_, b)| *b <= BigInt::zero()) {
            Some(vec![])
        } else {
            None
        };
    }
    let k = n_vars - 1;
    let mut zeros: Vec<FmRow> = Vec::new();
    let mut lowers: Vec<FmRow> = Vec::new(); // coeff of x_k positive
    let mut uppers: Vec<FmRow> = Vec::new(); // coeff of x_k negative
    for (a, b) in &cons {
        if a[k].is_zero() {
            if a[..k].iter().all(|x| x.is_zero()) {
                if *b > BigInt::zero() {
                    return None;
                }
                continue;
            }
            zeros.push((a.clone(), b.clone()));
        } else if a[k] > BigInt::zero() {
            lowers.push((a.clone(), b.clone()));
        } else {
            uppers.push((a.clone(), b.clone()));
        }
    }

    let mut reduced: Vec<FmRow> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut push = |row: FmRow, out: &mut Vec<FmRow>| {
        if seen.insert(row.clone()) {
            out.push(row);
        }
    };
    for (a, b) in &zeros {
        push(normalize_row(a[..k].to_vec(), b.clone()), &mut reduced);
    }
    for (ap, bp) in &lowers {
        for (aq, bq) in &uppers {
            // lower (c_p > 0) combined with upper (c_q < 0):
            //   (c_p a_q - c_q a_p) . x' >= c_p b_q - c_q b_p
            let cp = &ap[k];
            let cq = &aq[k];
            let row: Vec<BigInt> = (0..k).map(|j| cp * &aq[j] - cq * &ap[j]).collect();
            let rhs = cp * bq - cq * bp;
            if row.iter().all(|x| x.is_zero()) {
                if rhs > BigInt::zero() {
                    return None;
                }
                continue;
            }
            push(normalize_row(row, rhs), &mut reduced);
        }
    }

    let sub = fm_solve(k, reduced)?;

    let eval = |a: &[BigInt], b: &BigInt| -> BigRational {
        // (b - a[..k] . sub) / a[k]
        let mut dot = BigRational::zero();
        for j in 0..k {
            dot += rat_of(&a[j]) * &sub[j];
        }
        (rat_of(b) - dot) / rat_of(&a[k])
    };
    let lo = lowers
        .iter()
        .map(|(a, b)| eval(a, b))
        .max();
    let hi = uppers
        .iter()
        .map(|(a, b)| eval(a, b))
        .min();
    let xk = match (lo, hi) {
        (None, None) => BigRational::zero(),
        (Some(l), None) => l + BigRational::one(),
        (None, Some(h)) => h - BigRational::one(),
        (Some(l), Some(h)) => {
            debug_assert!(l <= h, "Fourier-Motzkin bound inversion");
            (l + h) / rat_i64(2)
        }
    };
    let mut out = sub;
    out.push(xk);
    Some(out)
}

/// Exact dot product of an integer covector with a rational point.
pub fn eval_at(l: &[i64], x: &[BigRational]) -> BigRational {
    assert_eq!(l.len(), x.len());
    l.iter()
        .zip(x)
        .map(|(&c, v)| rat_i64(c) * v)
        .fold(BigRational::zero(), |a, b| a + b)
}
