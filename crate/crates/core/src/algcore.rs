//! The Frobenius algebra itself: structure constants, trace form, dual
//! basis, and the Nakayama automorphism.
//!
//! An algebra is loaded once, validated (associativity, unit), and then
//! immutable; everything downstream borrows it through Arc.

use std::sync::Arc;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::exact::{FieldCtx, Scalar};
use crate::matlin::Mat;
use crate::DEFAULT_SEED;

/// Structure-constant presentation of a finite-dimensional algebra with a
/// chosen linear form tau.
#[derive(Debug, Clone)]
pub struct AlgebraData {
    ctx: Arc<FieldCtx>,
    name: String,
    dim: usize,
    basis_labels: Vec<String>,
    /// mult[i][j] = sparse coordinates of B_i * B_j, sorted by index.
    mult: Vec<Vec<Vec<(usize, Scalar)>>>,
    unit: Vec<Scalar>,
    tau: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusReport {
    pub is_frobenius: bool,
    pub is_symmetric: bool,
    pub gram_rank: usize,
}

#[derive(Debug, Clone)]
pub struct DualBasisData {
    pub gram: Mat,
    /// Rows: B_w^dual in the original basis.
    pub dual_vectors: Mat,
}

#[derive(Debug, Clone)]
pub struct NakayamaData {
    /// alpha(B_j) = sum_k alphaMatrix[j][k] B_k.
    pub alpha_matrix: Mat,
}

impl AlgebraData {
    pub fn new(
        ctx: Arc<FieldCtx>,
        name: impl Into<String>,
        basis_labels: Vec<String>,
        structure: Vec<(usize, usize, usize, Scalar)>,
        unit: Vec<Scalar>,
        tau: Vec<Scalar>,
    ) -> Result<AlgebraData> {
        let dim = basis_labels.len();
        if dim == 0 {
            return Err(Error::InvalidInput("algebra dimension must be positive".into()));
        }
        if unit.len() != dim || tau.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "unit/tau length must equal dim = {dim}"
            )));
        }
        for s in unit.iter().chain(tau.iter()) {
            ctx.check(s)?;
        }
        let mut mult: Vec<Vec<Vec<(usize, Scalar)>>> =
            vec![vec![Vec::new(); dim]; dim];
        for (i, j, k, s) in structure {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidInput(format!(
                    "structure index ({i},{j},{k}) out of range for dim {dim}"
                )));
            }
            ctx.check(&s)?;
            if ctx.is_zero(&s) {
                continue;
            }
            let row = &mut mult[i][j];
            match row.iter_mut().find(|(kk, _)| *kk == k) {
                Some((_, existing)) => *existing = ctx.add(existing, &s)?,
                None => row.push((k, s)),
            }
        }
        for rows in &mut mult {
            for row in rows.iter_mut() {
                row.retain(|(_, s)| !ctx.is_zero(s));
                row.sort_by_key(|(k, _)| *k);
            }
        }
        let a = AlgebraData { ctx, name: name.into(), dim, basis_labels, mult, unit, tau };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<()> {
        // unit is a two-sided identity
        for k in 0..self.dim {
            let bk = self.basis_vec(k);
            if self.mul_elements(&self.unit, &bk)? != bk {
                return Err(Error::VerificationFailed(format!(
                    "unit fails on the left of basis element {k}"
                )));
            }
            if self.mul_elements(&bk, &self.unit)? != bk {
                return Err(Error::VerificationFailed(format!(
                    "unit fails on the right of basis element {k}"
                )));
            }
        }
        // associativity: exhaustive at small dim, sampled above
        if self.dim <= 64 {
            for i in 0..self.dim {
                for j in 0..self.dim {
                    for k in 0..self.dim {
                        self.check_assoc_triple(i, j, k)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha20Rng::seed_from_u64(DEFAULT_SEED);
            for _ in 0..4096 {
                let i = (rng.next_u64() % self.dim as u64) as usize;
                let j = (rng.next_u64() % self.dim as u64) as usize;
                let k = (rng.next_u64() % self.dim as u64) as usize;
                self.check_assoc_triple(i, j, k)?;
            }
        }
        Ok(())
    }

    fn check_assoc_triple(&self, i: usize, j: usize, k: usize) -> Result<()> {
        let ij = self.mult_pair(i, j);
        let jk = self.mult_pair(j, k);
        let lhs = self.mul_sparse_right(&ij, k)?;
        let rhs = self.mul_sparse_left(i, &jk)?;
        if lhs != rhs {
            return Err(Error::VerificationFailed(format!(
                "associativity fails on basis triple ({i},{j},{k})"
            )));
        }
        Ok(())
    }

    /// (B_i B_j) as a dense vector from the sparse row.
    fn mult_pair(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut out = vec![self.ctx.zero(); self.dim];
        for (k, s) in &self.mult[i][j] {
            out[*k] = s.clone();
        }
        out
    }

    /// x (dense) * B_k.
    fn mul_sparse_right(&self, x: &[Scalar], k: usize) -> Result<Vec<Scalar>> {
        let mut out = vec![self.ctx.zero(); self.dim];
        for (l, c) in x.iter().enumerate() {
            if self.ctx.is_zero(c) {
                continue;
            }
            for (t, s) in &self.mult[l][k] {
                let v = self.ctx.mul(c, s)?;
                out[*t] = self.ctx.add(&out[*t], &v)?;
            }
        }
        Ok(out)
    }

    /// B_i * y (dense).
    fn mul_sparse_left(&self, i: usize, y: &[Scalar]) -> Result<Vec<Scalar>> {
        let mut out = vec![self.ctx.zero(); self.dim];
        for (l, c) in y.iter().enumerate() {
            if self.ctx.is_zero(c) {
                continue;
            }
            for (t, s) in &self.mult[i][l] {
                let v = self.ctx.mul(c, s)?;
                out[*t] = self.ctx.add(&out[*t], &v)?;
            }
        }
        Ok(out)
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn tau(&self) -> &[Scalar] {
        &self.tau
    }

    pub fn basis_vec(&self, k: usize) -> Vec<Scalar> {
        let mut v = vec![self.ctx.zero(); self.dim];
        v[k] = self.ctx.one();
        v
    }

    /// Sparse structure rows flattened back to (i, j, k, scalar).
    pub fn structure_entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, s) in &self.mult[i][j] {
                    out.push((i, j, *k, s.clone()));
                }
            }
        }
        out
    }

    pub fn mul_elements(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "element length must be {}",
                self.dim
            )));
        }
        let mut out = vec![self.ctx.zero(); self.dim];
        for (i, a) in x.iter().enumerate() {
            if self.ctx.is_zero(a) {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if self.ctx.is_zero(b) {
                    continue;
                }
                let ab = self.ctx.mul(a, b)?;
                for (k, s) in &self.mult[i][j] {
                    let v = self.ctx.mul(&ab, s)?;
                    out[*k] = self.ctx.add(&out[*k], &v)?;
                }
            }
        }
        Ok(out)
    }

    pub fn eval_tau(&self, x: &[Scalar]) -> Result<Scalar> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "element length must be {}",
                self.dim
            )));
        }
        let mut acc = self.ctx.zero();
        for (c, t) in x.iter().zip(&self.tau) {
            acc = self.ctx.add(&acc, &self.ctx.mul(c, t)?)?;
        }
        Ok(acc)
    }

    /// Matrix of right multiplication by B_j: row i = coordinates of B_i B_j.
    pub fn right_mult_basis(&self, j: usize) -> Mat {
        Mat::from_fn(self.ctx.clone(), self.dim, self.dim, |r, c| {
            self.mult[r][j]
                .iter()
                .find(|(k, _)| *k == c)
                .map(|(_, s)| s.clone())
                .unwrap_or_else(|| self.ctx.zero())
        })
    }

    /// Matrix of right multiplication by an arbitrary element.
    pub fn right_mult(&self, x: &[Scalar]) -> Result<Mat> {
        let mut rows = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            rows.push(self.mul_sparse_left(i, x)?);
        }
        Mat::from_rows(self.ctx.clone(), rows)
    }

    /// Matrix of left multiplication by x: row j = coordinates of x B_j.
    pub fn left_mult(&self, x: &[Scalar]) -> Result<Mat> {
        let mut rows = Vec::with_capacity(self.dim);
        for j in 0..self.dim {
            rows.push(self.mul_sparse_right(x, j)?);
        }
        Mat::from_rows(self.ctx.clone(), rows)
    }

    pub fn gram(&self) -> Result<Mat> {
        let mut g = Mat::zero(self.ctx.clone(), self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut acc = self.ctx.zero();
                for (k, s) in &self.mult[i][j] {
                    acc = self.ctx.add(&acc, &self.ctx.mul(s, &self.tau[*k])?)?;
                }
                g.set(i, j, acc);
            }
        }
        Ok(g)
    }

    pub fn check_frobenius(&self) -> Result<FrobeniusReport> {
        let g = self.gram()?;
        let rank = g.rank()?;
        Ok(FrobeniusReport {
            is_frobenius: rank == self.dim,
            is_symmetric: g == g.transpose(),
            gram_rank: rank,
        })
    }

    pub fn dual_basis(&self) -> Result<DualBasisData> {
        let gram = self.gram()?;
        let inv = gram.inverse().map_err(|_| {
            Error::NotFrobenius(format!("Gram matrix of {} is singular", self.name))
        })?;
        // row y of the inverse is B_y^dual: tau(B_y^dual B_w) = (G^-1 G)[y][w]
        let dual_vectors = inv;
        for y in 0..self.dim {
            for w in 0..self.dim {
                let prod = self.mul_elements(dual_vectors.row(y), &self.basis_vec(w))?;
                let t = self.eval_tau(&prod)?;
                let expect = if y == w { self.ctx.one() } else { self.ctx.zero() };
                if t != expect {
                    return Err(Error::VerificationFailed(format!(
                        "dual basis pairing fails at ({y},{w})"
                    )));
                }
            }
        }
        Ok(DualBasisData { gram, dual_vectors })
    }

    /// The Nakayama automorphism alpha with tau(ab) = tau(alpha(b) a),
    /// produced by solving the linear system and then verified to be an
    /// automorphism rather than assumed.
    pub fn nakayama(&self) -> Result<NakayamaData> {
        let g = self.gram()?;
        if g.rank()? != self.dim {
            return Err(Error::NotFrobenius(format!(
                "Gram matrix of {} is singular",
                self.name
            )));
        }
        // tau(B_u B_j) = sum_k alpha[j][k] tau(B_k B_u) for all u, j reads
        // alpha * G = G^T.
        let alpha = g.solve_left(&g.transpose())?;
        for i in 0..self.dim {
            for j in 0..self.dim {
                // tau(ab) = tau(alpha(b) a)
                let ab = self.mult_pair(i, j);
                let lhs = self.eval_tau(&ab)?;
                let alpha_bj: Vec<Scalar> = alpha.row(j).to_vec();
                let rhs_prod = self.mul_elements(&alpha_bj, &self.basis_vec(i))?;
                let rhs = self.eval_tau(&rhs_prod)?;
                if lhs != rhs {
                    return Err(Error::VerificationFailed(format!(
                        "Nakayama defining identity fails at ({i},{j})"
                    )));
                }
                // multiplicativity
                let lhs_m = self.apply_matrix(&alpha, &ab)?;
                let rhs_m = self.mul_elements(&alpha.row(i).to_vec(), &alpha_bj)?;
                if lhs_m != rhs_m {
                    return Err(Error::VerificationFailed(format!(
                        "Nakayama is not multiplicative at ({i},{j})"
                    )));
                }
            }
        }
        if alpha.rank()? != self.dim {
            return Err(Error::VerificationFailed("Nakayama matrix is singular".into()));
        }
        if self.apply_matrix(&alpha, &self.unit)? != self.unit {
            return Err(Error::VerificationFailed("Nakayama does not fix the unit".into()));
        }
        Ok(NakayamaData { alpha_matrix: alpha })
    }

    /// x as a row vector through a basis-endomorphism matrix.
    pub fn apply_matrix(&self, m: &Mat, x: &[Scalar]) -> Result<Vec<Scalar>> {
        let row = Mat::from_rows(self.ctx.clone(), vec![x.to_vec()])?;
        Ok(row.mul(m)?.row(0).to_vec())
    }

    /// The same algebra presented in the basis whose rows p gives in the
    /// old coordinates; tau and structure constants are transported.
    pub fn change_basis(&self, p: &Mat) -> Result<AlgebraData> {
        if p.rows() != self.dim || p.cols() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "basis change must be {0} x {0}",
                self.dim
            )));
        }
        let inv = p.inverse()?;
        let ctx = self.ctx.clone();
        let mut structure = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let prod = self.mul_elements(p.row(i), p.row(j))?;
                let coords = self.apply_matrix(&inv, &prod)?;
                for (k, s) in coords.into_iter().enumerate() {
                    if !ctx.is_zero(&s) {
                        structure.push((i, j, k, s));
                    }
                }
            }
        }
        let mut tau = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            tau.push(self.eval_tau(p.row(i))?);
        }
        let unit = self.apply_matrix(&inv, &self.unit)?;
        let labels = (0..self.dim).map(|i| format!("c{i}")).collect();
        AlgebraData::new(ctx, format!("{}~", self.name), labels, structure, unit, tau)
    }
}
