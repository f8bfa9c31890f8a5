use std::fmt;

use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::FieldError;

/// Dense row-major matrix over Q(λ).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RatFunc>,
}

/// Result of [`RatMatrix::solve`]: one particular solution, the rank of the
/// coefficient matrix, and a basis of its right null space as columns.
#[derive(Clone, Debug)]
pub struct Solution {
    pub x: RatMatrix,
    pub rank: usize,
    pub null_space: Vec<RatMatrix>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![RatFunc::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, RatFunc::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RatFunc>>) -> Result<Self, FieldError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(FieldError::DimensionMismatch {
                left: (r, c),
                right: (1, bad.len()),
            });
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn<F: FnMut(usize, usize) -> RatFunc>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, entries }
    }

    pub fn row_vector(v: Vec<RatFunc>) -> Self {
        RatMatrix {
            rows: 1,
            cols: v.len(),
            entries: v,
        }
    }

    pub fn col_vector(v: Vec<RatFunc>) -> Self {
        RatMatrix {
            rows: v.len(),
            cols: 1,
            entries: v,
        }
    }

    pub fn diagonal(d: Vec<RatFunc>) -> Self {
        let n = d.len();
        let mut m = RatMatrix::zeros(n, n);
        for (i, x) in d.into_iter().enumerate() {
            m.set(i, i, x);
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFunc) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[RatFunc] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<RatFunc>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[RatFunc] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RatFunc::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j { e.is_one() } else { e.is_zero() }
                })
            })
    }

    pub fn transpose(&self) -> RatMatrix {
        RatMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    fn same_shape(&self, other: &RatMatrix) -> Result<(), FieldError> {
        if self.shape() != other.shape() {
            return Err(FieldError::DimensionMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &RatMatrix) -> Result<RatMatrix, FieldError> {
        self.same_shape(other)?;
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, other: &RatMatrix) -> Result<RatMatrix, FieldError> {
        self.same_shape(other)?;
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    pub fn scale(&self, c: &RatFunc) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix, FieldError> {
        if self.cols != other.rows {
            return Err(FieldError::DimensionMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = RatFunc::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Determinant by fraction-free (Bareiss) elimination. Each row is first
    /// cleared of denominators, so elimination runs over Laurent polynomials.
    pub fn det(&self) -> Result<RatFunc, FieldError> {
        if !self.is_square() {
            return Err(FieldError::DimensionMismatch {
                left: self.shape(),
                right: (self.cols, self.rows),
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(RatFunc::one());
        }
        let mut scale = RatFunc::one();
        let mut a: Vec<Vec<Poly>> = Vec::with_capacity(n);
        for i in 0..n {
            let row = self.row(i);
            let mut l = Poly::one();
            for e in row {
                let d = e.denom();
                if !d.is_one() {
                    let g = l.gcd(d);
                    l = l.mul(&d.div_exact(&g).expect("gcd divides"));
                }
            }
            scale = scale.mul(&RatFunc::from_poly(l.clone()));
            a.push(
                row.iter()
                    .map(|e| e.numer().mul(&l.div_exact(e.denom()).expect("lcm divisible")))
                    .collect(),
            );
        }
        let mut sign = false;
        let mut prev = Poly::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = !sign;
                    }
                    None => return Ok(RatFunc::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                    a[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
                }
                a[i][k] = Poly::zero();
            }
            prev = a[k][k].clone();
        }
        let mut d = RatFunc::from_poly(a[n - 1][n - 1].clone()).div(&scale)?;
        if sign {
            d = d.neg();
        }
        Ok(d)
    }

    /// Solves `self · X = b` by Gauss-Jordan elimination.
    pub fn solve(&self, b: &RatMatrix) -> Result<Solution, FieldError> {
        if self.rows != b.rows {
            return Err(FieldError::DimensionMismatch {
                left: self.shape(),
                right: b.shape(),
            });
        }
        let (n, m, k) = (self.rows, self.cols, b.cols);
        let mut aug: Vec<Vec<RatFunc>> = (0..n)
            .map(|i| self.row(i).iter().chain(b.row(i)).cloned().collect())
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m {
            let Some(p) = (r..n).find(|&i| !aug[i][c].is_zero()) else {
                continue;
            };
            aug.swap(r, p);
            let inv = aug[r][c].inv()?;
            for x in &mut aug[r][c..m + k] {
                *x = x.mul(&inv);
            }
            let pivot_row = aug[r].clone();
            for (i, row) in aug.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, p) in row[c..m + k].iter_mut().zip(&pivot_row[c..m + k]) {
                    if !p.is_zero() {
                        *x = x.sub(&f.mul(p));
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == n {
                break;
            }
        }
        let rank = r;
        if (rank..n).any(|i| (m..m + k).any(|j| !aug[i][j].is_zero())) {
            return Err(FieldError::SingularSystem { rank });
        }
        let mut x = RatMatrix::zeros(m, k);
        for (i, &c) in pivots.iter().enumerate() {
            for j in 0..k {
                x.set(c, j, aug[i][m + j].clone());
            }
        }
        let mut null_space = Vec::new();
        for free in (0..m).filter(|c| !pivots.contains(c)) {
            let mut v = vec![RatFunc::zero(); m];
            v[free] = RatFunc::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = aug[i][free].neg();
            }
            null_space.push(RatMatrix::col_vector(v));
        }
        Ok(Solution { x, rank, null_space })
    }

    /// Basis of `{x : self · x = 0}` as column vectors.
    pub fn null_space(&self) -> Vec<RatMatrix> {
        self.solve(&RatMatrix::zeros(self.rows, 1))
            .map(|s| s.null_space)
            .unwrap_or_default()
    }

    pub fn rank(&self) -> usize {
        self.solve(&RatMatrix::zeros(self.rows, 1)).map(|s| s.rank).unwrap_or(0)
    }

    pub fn inverse(&self) -> Result<RatMatrix, FieldError> {
        if !self.is_square() {
            return Err(FieldError::DimensionMismatch {
                left: self.shape(),
                right: (self.cols, self.rows),
            });
        }
        let s = self.solve(&RatMatrix::identity(self.rows))?;
        if s.rank < self.rows {
            return Err(FieldError::SingularSystem { rank: s.rank });
        }
        Ok(s.x)
    }

    /// Applies `f` entrywise.
    pub fn map<F: FnMut(&RatFunc) -> RatFunc>(&self, f: F) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| cells[i * self.cols + j].chars().count()).max().unwrap_or(0))
            .collect();
        for i in 0..self.rows {
            f.write_str("[ ")?;
            for j in 0..self.cols {
                let s = &cells[i * self.cols + j];
                write!(f, "{s:>w$}", w = widths[j])?;
                f.write_str(if j + 1 < self.cols { "  " } else { " ]" })?;
            }
            if i + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rf;

    fn mat(rows: &[&[&str]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|s| rf(s)).collect()).collect()).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let a = mat(&[&["s", "1/u", "0", "2"], &["1", "s-u", "3", "u"], &["0", "0", "s^2", "1"], &["u", "s", "1", "0"]]);
        let i = RatMatrix::identity(4);
        assert_eq!(i.mul(&a).unwrap(), a);
        assert_eq!(a.mul(&i).unwrap(), a);
    }

    #[test]
    fn dimension_errors() {
        let a = RatMatrix::zeros(2, 3);
        assert!(matches!(a.mul(&a), Err(FieldError::DimensionMismatch { .. })));
        assert!(matches!(a.det(), Err(FieldError::DimensionMismatch { .. })));
    }

    #[test]
    fn determinants() {
        assert!(RatMatrix::identity(5).det().unwrap().is_one());
        let d = RatMatrix::diagonal(vec![rf("s"), rf("u"), rf("s^-1*u^-1")]);
        assert!(d.det().unwrap().is_one());
        let a = mat(&[&["0", "1"], &["1", "0"]]);
        assert_eq!(a.det().unwrap(), rf("-1"));
        let b = mat(&[&["1/s", "1/(s-1)"], &["u", "1"]]);
        assert_eq!(b.det().unwrap(), rf("1/s - u/(s-1)"));
        let sing = mat(&[&["s", "u"], &["s^2", "s*u"]]);
        assert!(sing.det().unwrap().is_zero());
    }

    #[test]
    fn solve_and_inverse() {
        let a = mat(&[&["s", "1"], &["1", "u"]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        let b = mat(&[&["1"], &["s"]]);
        let s = a.solve(&b).unwrap();
        assert_eq!(a.mul(&s.x).unwrap(), b);
        assert_eq!(s.rank, 2);
        assert!(s.null_space.is_empty());
    }

    #[test]
    fn singular_systems() {
        let a = mat(&[&["s", "u"], &["s^2", "s*u"]]);
        let ns = a.null_space();
        assert_eq!(ns.len(), 1);
        assert!(a.mul(&ns[0]).unwrap().is_zero());
        let b = mat(&[&["1"], &["0"]]);
        assert_eq!(a.solve(&b).unwrap_err(), FieldError::SingularSystem { rank: 1 });
        assert!(a.inverse().is_err());
    }
}
