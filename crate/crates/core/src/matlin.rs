//! Dense exact matrices over a shared field context, with the handful of
//! linear-algebra routines everything else is built from: Gauss-Jordan
//! reduction with a recorded transform, solving, kernels, inverses, and
//! minimal polynomials.
//!
//! Pivoting is deterministic (first nonzero entry, scanning top down), so
//! every derived basis is a canonical function of the input.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::{FieldCtx, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    ctx: Arc<FieldCtx>,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.ctx.scalar_to_string(self.at(i, j)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Result of Gauss-Jordan reduction: `transform * a = reduced`.
pub struct Rref {
    pub reduced: Mat,
    pub transform: Mat,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zero(ctx: Arc<FieldCtx>, rows: usize, cols: usize) -> Mat {
        let z = ctx.zero();
        Mat { ctx, rows, cols, data: vec![z; rows * cols] }
    }

    pub fn identity(ctx: Arc<FieldCtx>, n: usize) -> Mat {
        let mut m = Mat::zero(ctx, n, n);
        for i in 0..n {
            let one = m.ctx.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn from_rows(ctx: Arc<FieldCtx>, rows: Vec<Vec<Scalar>>) -> Result<Mat> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for s in row {
                ctx.check(&s)?;
                data.push(s);
            }
        }
        Ok(Mat { ctx, rows: r, cols: c, data })
    }

    pub fn from_fn(
        ctx: Arc<FieldCtx>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { ctx, rows, cols, data }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        self.data[i * self.cols + j] = s;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mat(&self, i: usize) -> Mat {
        Mat {
            ctx: self.ctx.clone(),
            rows: 1,
            cols: self.cols,
            data: self.row(i).to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| self.ctx.is_zero(s))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Mat::identity(self.ctx.clone(), self.rows)
    }

    fn same_shape(&self, other: &Mat) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::FieldMismatch("matrices over different fields".into()));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.same_shape(other)?;
        let mut data = Vec::with_capacity(self.data.len());
        for (a, b) in self.data.iter().zip(&other.data) {
            data.push(self.ctx.add(a, b)?);
        }
        Ok(Mat { ctx: self.ctx.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.same_shape(other)?;
        let mut data = Vec::with_capacity(self.data.len());
        for (a, b) in self.data.iter().zip(&other.data) {
            data.push(self.ctx.sub(a, b)?);
        }
        Ok(Mat { ctx: self.ctx.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn neg(&self) -> Result<Mat> {
        let mut data = Vec::with_capacity(self.data.len());
        for a in &self.data {
            data.push(self.ctx.neg(a)?);
        }
        Ok(Mat { ctx: self.ctx.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: &Scalar) -> Result<Mat> {
        let mut data = Vec::with_capacity(self.data.len());
        for a in &self.data {
            data.push(self.ctx.mul(a, s)?);
        }
        Ok(Mat { ctx: self.ctx.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        if self.ctx != other.ctx {
            return Err(Error::FieldMismatch("matrices over different fields".into()));
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Mat::zero(self.ctx.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if self.ctx.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let t = self.ctx.mul(a, other.at(k, j))?;
                    let s = self.ctx.add(out.at(i, j), &t)?;
                    out.set(i, j, s);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.ctx.clone(), self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn trace(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("trace of a non-square matrix".into()));
        }
        let mut acc = self.ctx.zero();
        for i in 0..self.rows {
            acc = self.ctx.add(&acc, self.at(i, i))?;
        }
        Ok(acc)
    }

    pub fn hstack(&self, other: &Mat) -> Result<Mat> {
        if self.ctx != other.ctx || self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack shape mismatch".into()));
        }
        Ok(Mat::from_fn(self.ctx.clone(), self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        }))
    }

    pub fn vstack(&self, other: &Mat) -> Result<Mat> {
        if self.ctx != other.ctx || self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack shape mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat { ctx: self.ctx.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn take_rows(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.ctx.clone(), idx.len(), self.cols, |i, j| {
            self.at(idx[i], j).clone()
        })
    }

    pub fn take_cols(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.ctx.clone(), self.rows, idx.len(), |i, j| {
            self.at(i, idx[j]).clone()
        })
    }

    /// Flatten to a single row (row-major), for treating matrices as vectors.
    pub fn flatten_row(&self) -> Mat {
        Mat {
            ctx: self.ctx.clone(),
            rows: 1,
            cols: self.data.len(),
            data: self.data.clone(),
        }
    }

    // ------------------------------------------------------------------
    // elimination

    /// Gauss-Jordan to reduced row echelon form, recording the transform.
    pub fn rref(&self) -> Result<Rref> {
        let mut r = self.clone();
        let mut t = Mat::identity(self.ctx.clone(), self.rows);
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for col in 0..self.cols {
            let pivot = (lead..self.rows).find(|&i| !self.ctx.is_zero(r.at(i, col)));
            let pivot = match pivot {
                Some(p) => p,
                None => continue,
            };
            if pivot != lead {
                r.swap_rows(pivot, lead);
                t.swap_rows(pivot, lead);
            }
            let inv = self.ctx.inv(r.at(lead, col))?;
            r.scale_row(lead, &inv)?;
            t.scale_row(lead, &inv)?;
            for i in 0..self.rows {
                if i == lead || self.ctx.is_zero(r.at(i, col)) {
                    continue;
                }
                let factor = r.at(i, col).clone();
                r.axpy_row(i, lead, &factor)?;
                t.axpy_row(i, lead, &factor)?;
            }
            pivots.push(col);
            lead += 1;
            if lead == self.rows {
                break;
            }
        }
        Ok(Rref { reduced: r, transform: t, pivots })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, i: usize, s: &Scalar) -> Result<()> {
        for j in 0..self.cols {
            let v = self.ctx.mul(self.at(i, j), s)?;
            self.set(i, j, v);
        }
        Ok(())
    }

    /// row[i] -= factor * row[src]
    fn axpy_row(&mut self, i: usize, src: usize, factor: &Scalar) -> Result<()> {
        for j in 0..self.cols {
            let t = self.ctx.mul(self.at(src, j), factor)?;
            let v = self.ctx.sub(self.at(i, j), &t)?;
            self.set(i, j, v);
        }
        Ok(())
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.pivots.len())
    }

    /// Echelonized basis of the row space (nonzero rows of the rref).
    pub fn row_basis(&self) -> Result<Mat> {
        let rr = self.rref()?;
        let k = rr.pivots.len();
        let idx: Vec<usize> = (0..k).collect();
        Ok(rr.reduced.take_rows(&idx))
    }

    /// Echelonized basis of {v : v * self = 0}, one vector per row.
    pub fn left_kernel(&self) -> Result<Mat> {
        self.transpose().null_rows()
    }

    /// Echelonized basis of {x : self * x^T = 0}, one vector per row.
    pub fn null_rows(&self) -> Result<Mat> {
        let rr = self.rref()?;
        let pivots = &rr.pivots;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zero(self.ctx.clone(), free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, self.ctx.one());
            for (pi, &pc) in pivots.iter().enumerate() {
                let v = self.ctx.neg(rr.reduced.at(pi, fc))?;
                out.set(k, pc, v);
            }
        }
        Ok(out)
    }

    /// Solve self * X = rhs for X; Err(Inconsistent) when unsolvable.
    /// Free variables are set to zero, so the solution is canonical.
    pub fn solve_right(&self, rhs: &Mat) -> Result<Mat> {
        if self.ctx != rhs.ctx || self.rows != rhs.rows {
            return Err(Error::DimensionMismatch("solve_right shape mismatch".into()));
        }
        let aug = self.hstack(rhs)?;
        let rr = aug.rref()?;
        let mut x = Mat::zero(self.ctx.clone(), self.cols, rhs.cols);
        for (pi, &pc) in rr.pivots.iter().enumerate() {
            if pc >= self.cols {
                return Err(Error::Inconsistent);
            }
            for j in 0..rhs.cols {
                x.set(pc, j, rr.reduced.at(pi, self.cols + j).clone());
            }
        }
        Ok(x)
    }

    /// Solve X * self = rhs for X.
    pub fn solve_left(&self, rhs: &Mat) -> Result<Mat> {
        Ok(self.transpose().solve_right(&rhs.transpose())?.transpose())
    }

    /// Is the row vector v in the row space?
    pub fn row_space_contains(&self, v: &Mat) -> Result<bool> {
        match self.solve_left(v) {
            Ok(_) => Ok(true),
            Err(Error::Inconsistent) => Ok(false),
            Err(e) => Err(e),
        }
    }

    pub fn inverse(&self) -> Result<Mat> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let rr = self.rref()?;
        if rr.pivots.len() != self.rows {
            return Err(Error::Singular);
        }
        Ok(rr.transform)
    }

    pub fn det(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        // plain triangularization, tracking swaps and pivots
        let mut det = self.ctx.one();
        let mut m = self.clone();
        let n = self.rows;
        for col in 0..n {
            let pivot = (col..n).find(|&i| !self.ctx.is_zero(m.at(i, col)));
            let pivot = match pivot {
                Some(p) => p,
                None => return Ok(self.ctx.zero()),
            };
            if pivot != col {
                m.swap_rows(pivot, col);
                det = self.ctx.neg(&det)?;
            }
            let lead = m.at(col, col).clone();
            det = self.ctx.mul(&det, &lead)?;
            let inv = self.ctx.inv(&lead)?;
            for i in col + 1..n {
                if self.ctx.is_zero(m.at(i, col)) {
                    continue;
                }
                let factor = self.ctx.mul(m.at(i, col), &inv)?;
                m.axpy_row(i, col, &factor)?;
            }
        }
        Ok(det)
    }

    // ------------------------------------------------------------------
    // minimal polynomial

    /// Monic minimal polynomial, coefficients low degree first.
    pub fn min_poly(&self) -> Result<Vec<Scalar>> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("minimal polynomial of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(vec![self.ctx.one()]);
        }
        let mut powers: Vec<Mat> = vec![Mat::identity(self.ctx.clone(), n)];
        loop {
            // stack the flattened powers as rows and try to express the next
            // power in terms of them
            let k = powers.len();
            let next = powers[k - 1].mul(self)?;
            let mut stacked = powers[0].flatten_row();
            for p in &powers[1..] {
                stacked = stacked.vstack(&p.flatten_row())?;
            }
            match stacked.solve_left(&next.flatten_row()) {
                Ok(coeffs) => {
                    // x^k - sum coeffs[i] x^i
                    let mut poly = Vec::with_capacity(k + 1);
                    for i in 0..k {
                        poly.push(self.ctx.neg(coeffs.at(0, i))?);
                    }
                    poly.push(self.ctx.one());
                    return Ok(poly);
                }
                Err(Error::Inconsistent) => powers.push(next),
                Err(e) => return Err(e),
            }
        }
    }

    /// Evaluate a polynomial (low degree first) at this matrix.
    pub fn eval_poly(&self, poly: &[Scalar]) -> Result<Mat> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("polynomial of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut acc = Mat::zero(self.ctx.clone(), n, n);
        for c in poly.iter().rev() {
            acc = acc.mul(self)?;
            let scaled = Mat::identity(self.ctx.clone(), n).scale(c)?;
            acc = acc.add(&scaled)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qctx() -> Arc<FieldCtx> {
        Arc::new(FieldCtx::rationals())
    }

    fn f7() -> Arc<FieldCtx> {
        Arc::new(FieldCtx::prime_field(7).unwrap())
    }

    fn mat_i64(ctx: &Arc<FieldCtx>, rows: Vec<Vec<i64>>) -> Mat {
        Mat::from_rows(
            ctx.clone(),
            rows.into_iter()
                .map(|r| r.into_iter().map(|v| ctx.from_int(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rref_and_inverse() {
        let ctx = qctx();
        let a = mat_i64(&ctx, vec![vec![2, 1], vec![1, 1]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert_eq!(inv, mat_i64(&ctx, vec![vec![1, -1], vec![-1, 2]]));
        let rr = a.rref().unwrap();
        assert!(rr.reduced.is_identity());
        assert_eq!(rr.transform.mul(&a).unwrap(), rr.reduced);
    }

    #[test]
    fn kernels_and_solving() {
        let ctx = qctx();
        let a = mat_i64(&ctx, vec![vec![1, 2, 3], vec![2, 4, 6]]);
        assert_eq!(a.rank().unwrap(), 1);
        let lk = a.left_kernel().unwrap();
        assert_eq!(lk.rows(), 1);
        assert!(lk.mul(&a).unwrap().is_zero());
        let nr = a.null_rows().unwrap();
        assert_eq!(nr.rows(), 2);
        assert!(a.mul(&nr.transpose()).unwrap().is_zero());
        let b = mat_i64(&ctx, vec![vec![6], vec![12]]);
        let x = a.solve_right(&b).unwrap();
        assert_eq!(a.mul(&x).unwrap(), b);
        let bad = mat_i64(&ctx, vec![vec![1], vec![0]]);
        assert!(matches!(a.solve_right(&bad), Err(Error::Inconsistent)));
    }

    #[test]
    fn determinants() {
        let ctx = qctx();
        let a = mat_i64(&ctx, vec![vec![1, -1], vec![1, 2]]);
        assert_eq!(a.det().unwrap(), ctx.from_int(3));
        let s = mat_i64(&ctx, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(s.det().unwrap(), ctx.from_int(-1));
        let z = mat_i64(&ctx, vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(z.det().unwrap(), ctx.zero());
    }

    #[test]
    fn min_poly_of_projection_and_nilpotent() {
        let ctx = qctx();
        let p = mat_i64(&ctx, vec![vec![1, 0], vec![0, 0]]);
        // x^2 - x
        assert_eq!(
            p.min_poly().unwrap(),
            vec![ctx.zero(), ctx.from_int(-1), ctx.one()]
        );
        let n = mat_i64(&ctx, vec![vec![0, 1], vec![0, 0]]);
        assert_eq!(n.min_poly().unwrap(), vec![ctx.zero(), ctx.zero(), ctx.one()]);
        assert!(n.eval_poly(&n.min_poly().unwrap()).unwrap().is_zero());
    }

    #[test]
    fn eval_poly_horner() {
        let ctx = f7();
        let a = mat_i64(&ctx, vec![vec![1, 1], vec![0, 1]]);
        // a^2 - 2a + 1 = 0
        let poly = vec![ctx.one(), ctx.from_int(-2), ctx.one()];
        assert!(a.eval_poly(&poly).unwrap().is_zero());
    }

    proptest! {
        #[test]
        fn prop_rref_transform_consistent(seed in 0u64..500) {
            let ctx = f7();
            let mut s = seed;
            let mut next = || { s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); (s >> 33) % 7 };
            let a = Mat::from_fn(ctx.clone(), 4, 5, |_, _| ctx.from_int(next() as i64));
            let rr = a.rref().unwrap();
            prop_assert_eq!(rr.transform.mul(&a).unwrap(), rr.reduced.clone());
            // rref is idempotent
            let rr2 = rr.reduced.rref().unwrap();
            prop_assert_eq!(rr2.reduced, rr.reduced.clone());
            // kernel rows annihilate
            let lk = a.left_kernel().unwrap();
            prop_assert!(lk.mul(&a).unwrap().is_zero());
            prop_assert_eq!(lk.rows() + rr.pivots.len(), 4);
        }

        #[test]
        fn prop_min_poly_annihilates(seed in 0u64..200) {
            let ctx = f7();
            let mut s = seed.wrapping_add(17);
            let mut next = || { s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); (s >> 33) % 7 };
            let a = Mat::from_fn(ctx.clone(), 3, 3, |_, _| ctx.from_int(next() as i64));
            let mp = a.min_poly().unwrap();
            prop_assert!(a.eval_poly(&mp).unwrap().is_zero());
            prop_assert!(mp.len() <= 4);
            prop_assert_eq!(mp.last().unwrap().clone(), ctx.one());
        }
    }
}
