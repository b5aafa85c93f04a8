//! Right modules over a structure-constant algebra: hom spaces, spinning,
//! composition series, radicals and socles, and the catalog of simples.
//!
//! Everything here works with row vectors; the matrix of a acting on M
//! sends row i to the coordinates of b_i a.

use std::sync::Arc;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::algcore::AlgebraData;
use crate::error::{Error, Result};
use crate::exact::{FieldCtx, Scalar};
use crate::matlin::Mat;
use crate::DEFAULT_SEED;

#[derive(Debug, Clone)]
pub struct RightModule {
    algebra: Arc<AlgebraData>,
    name: String,
    dim: usize,
    /// action[w] = matrix of B_w, one per algebra basis element.
    action: Vec<Mat>,
}

impl RightModule {
    pub fn new(
        algebra: Arc<AlgebraData>,
        name: impl Into<String>,
        action: Vec<Mat>,
    ) -> Result<RightModule> {
        let m = RightModule::from_parts(algebra, name, action)?;
        m.validate()?;
        Ok(m)
    }

    /// Constructor without the structure-constant check, for actions that
    /// satisfy the relations by construction (restrictions, quotients, the
    /// regular module).
    fn from_parts(
        algebra: Arc<AlgebraData>,
        name: impl Into<String>,
        action: Vec<Mat>,
    ) -> Result<RightModule> {
        if action.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "need one action matrix per basis element, got {} of {}",
                action.len(),
                algebra.dim()
            )));
        }
        let dim = action.first().map(|a| a.rows()).unwrap_or(0);
        for a in &action {
            if a.rows() != dim || a.cols() != dim {
                return Err(Error::DimensionMismatch(
                    "action matrices must be square of equal size".into(),
                ));
            }
            if a.ctx() != algebra.ctx() {
                return Err(Error::FieldMismatch(
                    "action matrices must live over the algebra's field".into(),
                ));
            }
        }
        Ok(RightModule { algebra, name: name.into(), dim, action })
    }

    fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Ok(());
        }
        let n = self.algebra.dim();
        let id = Mat::identity(self.ctx().clone(), self.dim);
        if self.action_of(self.algebra.unit())? != id {
            return Err(Error::VerificationFailed(format!(
                "unit does not act as the identity on {}",
                self.name
            )));
        }
        // rho(B_i) rho(B_j) = sum_k c_ijk rho(B_k)
        let check_pair = |i: usize, j: usize| -> Result<()> {
            let lhs = self.action[i].mul(&self.action[j])?;
            let prod = self
                .algebra
                .mul_elements(&self.algebra.basis_vec(i), &self.algebra.basis_vec(j))?;
            let rhs = self.action_of(&prod)?;
            if lhs != rhs {
                return Err(Error::VerificationFailed(format!(
                    "action of {} breaks the structure constants at ({i},{j})",
                    self.name
                )));
            }
            Ok(())
        };
        if n <= 16 {
            for i in 0..n {
                for j in 0..n {
                    check_pair(i, j)?;
                }
            }
        } else {
            let mut rng = ChaCha20Rng::seed_from_u64(DEFAULT_SEED);
            for _ in 0..128 {
                let i = (rng.next_u64() % n as u64) as usize;
                let j = (rng.next_u64() % n as u64) as usize;
                check_pair(i, j)?;
            }
        }
        Ok(())
    }

    /// The right regular module; relations hold by associativity.
    pub fn regular(algebra: Arc<AlgebraData>) -> RightModule {
        let action: Vec<Mat> =
            (0..algebra.dim()).map(|w| algebra.right_mult_basis(w)).collect();
        let name = format!("{}-reg", algebra.name());
        RightModule::from_parts(algebra, name, action).expect("regular action is square")
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.algebra.ctx()
    }

    pub fn algebra(&self) -> &Arc<AlgebraData> {
        &self.algebra
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> RightModule {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, w: usize) -> &Mat {
        &self.action[w]
    }

    pub fn same_algebra(&self, other: &RightModule) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra)
            || (self.algebra.name() == other.algebra.name()
                && self.algebra.dim() == other.algebra.dim()
                && self.algebra.ctx() == other.algebra.ctx())
    }

    /// Matrix of an arbitrary algebra element.
    pub fn action_of(&self, x: &[Scalar]) -> Result<Mat> {
        if x.len() != self.algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "element length must be {}",
                self.algebra.dim()
            )));
        }
        let ctx = self.ctx();
        let mut acc = Mat::zero(ctx.clone(), self.dim, self.dim);
        for (w, c) in x.iter().enumerate() {
            if ctx.is_zero(c) {
                continue;
            }
            acc = acc.add(&self.action[w].scale(c)?)?;
        }
        Ok(acc)
    }

    /// Smallest submodule containing the row space of seeds, as canonical
    /// echelonized rows.
    pub fn spin(&self, seeds: &Mat) -> Result<Mat> {
        spin_with(&self.action, seeds)
    }

    /// Submodule on the row space of rows; returns the module and its
    /// echelonized basis inside self.
    pub fn submodule(&self, rows: &Mat, name: impl Into<String>) -> Result<(RightModule, Mat)> {
        let u = rows.row_basis()?;
        let mut acts = Vec::with_capacity(self.algebra.dim());
        for w in 0..self.algebra.dim() {
            let rhs = u.mul(&self.action[w])?;
            let a = u.solve_left(&rhs).map_err(|e| match e {
                Error::Inconsistent => {
                    Error::InvalidInput("rows do not span a submodule".into())
                }
                other => other,
            })?;
            acts.push(a);
        }
        Ok((RightModule::from_parts(self.algebra.clone(), name, acts)?, u))
    }

    /// Quotient by the submodule spanned by rows; returns the module and
    /// the full change of basis (submodule rows first, complement last).
    pub fn quotient(&self, rows: &Mat, name: impl Into<String>) -> Result<(RightModule, Mat)> {
        let ctx = self.ctx().clone();
        let u = rows.row_basis()?;
        let r = u.rows();
        // invariance check up front
        for w in 0..self.algebra.dim() {
            u.solve_left(&u.mul(&self.action[w])?).map_err(|e| match e {
                Error::Inconsistent => {
                    Error::InvalidInput("rows do not span a submodule".into())
                }
                other => other,
            })?;
        }
        let pivots = u.rref()?.pivots;
        let free: Vec<usize> = (0..self.dim).filter(|c| !pivots.contains(c)).collect();
        let mut comp = Mat::zero(ctx.clone(), free.len(), self.dim);
        for (k, &fc) in free.iter().enumerate() {
            comp.set(k, fc, ctx.one());
        }
        let c = if r == 0 { comp } else { u.vstack(&comp)? };
        let cinv = c.inverse()?;
        let q = self.dim - r;
        let mut acts = Vec::with_capacity(self.algebra.dim());
        for w in 0..self.algebra.dim() {
            let full = c.mul(&self.action[w])?.mul(&cinv)?;
            let block = full.take_rows(&(r..self.dim).collect::<Vec<_>>());
            acts.push(block.take_cols(&(r..self.dim).collect::<Vec<_>>()));
        }
        debug_assert!(acts.iter().all(|a| a.rows() == q));
        Ok((RightModule::from_parts(self.algebra.clone(), name, acts)?, c))
    }

    /// Basis of the space of module maps self -> other, each as a
    /// dim(self) x dim(other) matrix F with rho_M(a) F = F rho_N(a).
    pub fn hom_space(&self, other: &RightModule) -> Result<Vec<Mat>> {
        if !self.same_algebra(other) {
            return Err(Error::AlgebraMismatch);
        }
        let (m, n) = (self.dim, other.dim);
        if m == 0 || n == 0 {
            return Ok(Vec::new());
        }
        let ctx = self.ctx().clone();
        let nw = self.algebra.dim();
        let mut eqs = Mat::zero(ctx.clone(), nw * m * n, m * n);
        for w in 0..nw {
            let rm = &self.action[w];
            let rn = &other.action[w];
            for i in 0..m {
                for j in 0..n {
                    let row = (w * m + i) * n + j;
                    for k in 0..m {
                        let cur = eqs.at(row, k * n + j).clone();
                        eqs.set(row, k * n + j, ctx.add(&cur, rm.at(i, k))?);
                    }
                    for l in 0..n {
                        let cur = eqs.at(row, i * n + l).clone();
                        eqs.set(row, i * n + l, ctx.sub(&cur, rn.at(l, j))?);
                    }
                }
            }
        }
        let ker = eqs.null_rows()?;
        let mut out = Vec::with_capacity(ker.rows());
        for t in 0..ker.rows() {
            let mut f = Mat::zero(ctx.clone(), m, n);
            for i in 0..m {
                for j in 0..n {
                    f.set(i, j, ker.at(t, i * n + j).clone());
                }
            }
            out.push(f);
        }
        Ok(out)
    }

    /// Traces of all basis actions, the fingerprint used to order simples.
    pub fn trace_vector(&self) -> Result<Vec<Scalar>> {
        self.action.iter().map(|a| a.trace()).collect()
    }
}

/// Row-space closure under a list of square matrices.
fn spin_with(mats: &[Mat], seeds: &Mat) -> Result<Mat> {
    let mut basis = seeds.row_basis()?;
    loop {
        let mut stack = basis.clone();
        for m in mats {
            stack = stack.vstack(&basis.mul(m)?)?;
        }
        let next = stack.row_basis()?;
        if next.rows() == basis.rows() {
            return Ok(next);
        }
        basis = next;
    }
}

/// Radical of the trace form x, y -> trace of right multiplication by xy.
/// In characteristic zero this is the Jacobson radical.
pub fn trace_form_radical(algebra: &Arc<AlgebraData>) -> Result<Mat> {
    if algebra.ctx().characteristic() != 0 {
        return Err(Error::InvalidInput(
            "the trace form computes the radical only in characteristic zero".into(),
        ));
    }
    let n = algebra.dim();
    let reg: Vec<Mat> = (0..n).map(|w| algebra.right_mult_basis(w)).collect();
    let mut t = Mat::zero(algebra.ctx().clone(), n, n);
    for i in 0..n {
        for j in 0..n {
            t.set(i, j, reg[i].mul(&reg[j])?.trace()?);
        }
    }
    t.left_kernel()
}

/// Jacobson radical as the common kernel of the actions on all simples.
pub fn radical_algebra(algebra: &Arc<AlgebraData>) -> Result<Mat> {
    let catalog = SimpleCatalog::build(algebra)?;
    radical_from_simples(algebra, catalog.simples())
}

fn radical_from_simples(algebra: &Arc<AlgebraData>, simples: &[RightModule]) -> Result<Mat> {
    let ctx = algebra.ctx().clone();
    let n = algebra.dim();
    let mut flat: Option<Mat> = None;
    for s in simples {
        let mut block = Mat::zero(ctx.clone(), n, s.dim() * s.dim());
        for w in 0..n {
            let a = s.action(w).flatten_row();
            for c in 0..a.cols() {
                block.set(w, c, a.at(0, c).clone());
            }
        }
        flat = Some(match flat {
            None => block,
            Some(f) => f.hstack(&block)?,
        });
    }
    match flat {
        None => Ok(Mat::identity(ctx, n)),
        Some(f) => f.left_kernel(),
    }
}

/// Basis of M rad(A), given a row basis of the radical.
pub fn radical_submodule(m: &RightModule, radical_rows: &Mat) -> Result<Mat> {
    let ctx = m.ctx().clone();
    let mut stack = Mat::zero(ctx, 0, m.dim());
    for r in 0..radical_rows.rows() {
        stack = stack.vstack(&m.action_of(radical_rows.row(r))?)?;
    }
    stack.row_basis()
}

/// Largest submodule killed by the radical.
pub fn socle_submodule(m: &RightModule, radical_rows: &Mat) -> Result<Mat> {
    let ctx = m.ctx().clone();
    if radical_rows.rows() == 0 {
        return Ok(Mat::identity(ctx, m.dim()));
    }
    let mut wide = Mat::zero(ctx, m.dim(), 0);
    for r in 0..radical_rows.rows() {
        wide = wide.hstack(&m.action_of(radical_rows.row(r))?)?;
    }
    wide.left_kernel()
}

/// Composition factors with multiplicities, deduplicated up to isomorphism
/// and sorted by dimension then trace fingerprint.
pub fn chop(m: &RightModule) -> Result<Vec<(RightModule, usize)>> {
    let mut raw = Vec::new();
    chop_rec(m, &mut raw)?;
    let mut out: Vec<(RightModule, usize)> = Vec::new();
    for s in raw {
        let mut found = false;
        for (r, count) in out.iter_mut() {
            if r.dim() == s.dim() && !r.hom_space(&s)?.is_empty() {
                // a nonzero map between simples is an isomorphism
                *count += 1;
                found = true;
                break;
            }
        }
        if !found {
            out.push((s, 1));
        }
    }
    sort_by_fingerprint(&mut out)?;
    let renamed = out
        .into_iter()
        .enumerate()
        .map(|(i, (s, c))| (s.with_name(format!("{}-S{}", m.algebra().name(), i)), c))
        .collect();
    Ok(renamed)
}

fn sort_by_fingerprint(factors: &mut [(RightModule, usize)]) -> Result<()> {
    let mut keyed: Vec<(usize, Vec<Scalar>)> = Vec::with_capacity(factors.len());
    for (s, _) in factors.iter() {
        keyed.push((s.dim(), s.trace_vector()?));
    }
    let ctx = match factors.first() {
        Some((s, _)) => s.ctx().clone(),
        None => return Ok(()),
    };
    let mut idx: Vec<usize> = (0..factors.len()).collect();
    idx.sort_by(|&a, &b| {
        keyed[a].0.cmp(&keyed[b].0).then_with(|| {
            for (x, y) in keyed[a].1.iter().zip(keyed[b].1.iter()) {
                let c = ctx.cmp_scalars(x, y);
                if c != std::cmp::Ordering::Equal {
                    return c;
                }
            }
            std::cmp::Ordering::Equal
        })
    });
    let mut scratch: Vec<Option<(RightModule, usize)>> =
        factors.iter().cloned().map(Some).collect();
    for (pos, &src) in idx.iter().enumerate() {
        factors[pos] = scratch[src].take().expect("permutation");
    }
    Ok(())
}

fn chop_rec(m: &RightModule, out: &mut Vec<RightModule>) -> Result<()> {
    if m.dim() == 0 {
        return Ok(());
    }
    if m.dim() == 1 {
        out.push(m.clone());
        return Ok(());
    }
    if m.ctx().characteristic() == 0 {
        let rad = trace_form_radical(m.algebra())?;
        let w = radical_submodule(m, &rad)?;
        if w.rows() > 0 {
            let (sub, _) = m.submodule(&w, format!("{}.rad", m.name()))?;
            let (quot, _) = m.quotient(&w, format!("{}.head", m.name()))?;
            chop_rec(&sub, out)?;
            chop_rec(&quot, out)?;
            return Ok(());
        }
        split_semisimple_char0(m, out)
    } else {
        meataxe_rec(m, out)
    }
}

/// Split a semisimple characteristic-zero module along kernels of
/// endomorphisms.
fn split_semisimple_char0(m: &RightModule, out: &mut Vec<RightModule>) -> Result<()> {
    let ends = m.hom_space(m)?;
    if ends.len() == 1 {
        out.push(m.clone());
        return Ok(());
    }
    let ctx = m.ctx().clone();
    let id = Mat::identity(ctx.clone(), m.dim());
    let try_split = |phi: &Mat, out: &mut Vec<RightModule>| -> Result<bool> {
        if phi.is_zero() {
            return Ok(false);
        }
        let singular: Vec<Mat> = if phi.rank()? < m.dim() {
            vec![phi.clone()]
        } else {
            let mp = phi.min_poly()?;
            crate::spoly::char0_roots(&ctx, &mp)?
                .into_iter()
                .map(|(r, _)| phi.sub(&id.scale(&r)?))
                .collect::<Result<Vec<_>>>()?
        };
        for psi in singular {
            // kernel of the endomorphism v -> v psi, a submodule
            let ker = psi.left_kernel()?;
            if ker.rows() > 0 && ker.rows() < m.dim() {
                let (sub, _) = m.submodule(&ker, format!("{}.ker", m.name()))?;
                let (quot, _) = m.quotient(&ker, format!("{}.im", m.name()))?;
                chop_rec(&sub, out)?;
                chop_rec(&quot, out)?;
                return Ok(true);
            }
        }
        Ok(false)
    };
    for phi in &ends {
        if try_split(phi, out)? {
            return Ok(());
        }
    }
    for a in 0..ends.len() {
        for b in (a + 1)..ends.len() {
            for phi in [ends[a].add(&ends[b])?, ends[a].sub(&ends[b])?, ends[a].mul(&ends[b])?] {
                if try_split(&phi, out)? {
                    return Ok(());
                }
            }
        }
    }
    let mut rng = ChaCha20Rng::seed_from_u64(DEFAULT_SEED);
    for _ in 0..200 {
        let mut phi = Mat::zero(ctx.clone(), m.dim(), m.dim());
        for e in &ends {
            let c = ctx.from_int((rng.next_u64() % 17) as i64 - 8);
            phi = phi.add(&e.scale(&c)?)?;
        }
        if try_split(&phi, out)? {
            return Ok(());
        }
    }
    Err(Error::SplittingFailure(format!(
        "no splitting endomorphism found for {}",
        m.name()
    )))
}

/// Standard kernel-and-spin splitting over a finite field, with the dual
/// spin certificate for irreducibility.
fn meataxe_rec(m: &RightModule, out: &mut Vec<RightModule>) -> Result<()> {
    if m.dim() == 0 {
        return Ok(());
    }
    if m.dim() == 1 {
        out.push(m.clone());
        return Ok(());
    }
    let ctx = m.ctx().clone();
    let n = m.algebra().dim();
    let mut candidates: Vec<Vec<Scalar>> = Vec::new();
    for w in 0..n {
        candidates.push(m.algebra().basis_vec(w));
    }
    let few = n.min(6);
    for i in 0..few {
        for j in 0..few {
            let p = m
                .algebra()
                .mul_elements(&m.algebra().basis_vec(i), &m.algebra().basis_vec(j))?;
            candidates.push(p);
        }
    }
    let mut rng = ChaCha20Rng::seed_from_u64(DEFAULT_SEED);
    for _ in 0..40 {
        let mut z = vec![ctx.zero(); n];
        for c in z.iter_mut() {
            *c = random_scalar(&ctx, &mut rng)?;
        }
        candidates.push(z);
    }
    let transposed: Vec<Mat> = (0..n).map(|w| m.action(w).transpose()).collect();
    for z in &candidates {
        let a = m.action_of(z)?;
        let mp = a.min_poly()?;
        let factors = crate::spoly::factor(&ctx, &mp, &mut rng)?;
        for (f, _) in &factors {
            let nf = a.eval_poly(f)?;
            // module-side kernel: rows v with v nf = 0
            let ker = nf.left_kernel()?;
            if ker.rows() == 0 {
                continue;
            }
            let degree = f.len() - 1;
            if ker.rows() == degree {
                // minimal nullity: one spin each way decides
                let w = m.spin(&ker.row_mat(0))?;
                if w.rows() < m.dim() {
                    return split_at(m, &w, out);
                }
                let dual_ker = nf.null_rows()?;
                let dual_span = spin_with(&transposed, &dual_ker.row_mat(0))?;
                if dual_span.rows() < m.dim() {
                    let perp = dual_span.null_rows()?;
                    return split_at(m, &perp, out);
                }
                out.push(m.clone());
                return Ok(());
            }
            for v in 0..ker.rows() {
                let w = m.spin(&ker.row_mat(v))?;
                if w.rows() < m.dim() {
                    return split_at(m, &w, out);
                }
            }
        }
    }
    Err(Error::SplittingFailure(format!(
        "element schedule exhausted on {}",
        m.name()
    )))
}

fn split_at(m: &RightModule, rows: &Mat, out: &mut Vec<RightModule>) -> Result<()> {
    let (sub, _) = m.submodule(rows, format!("{}.sub", m.name()))?;
    let (quot, _) = m.quotient(rows, format!("{}.quot", m.name()))?;
    meataxe_rec(&sub, out)?;
    meataxe_rec(&quot, out)
}

fn random_scalar(ctx: &FieldCtx, rng: &mut ChaCha20Rng) -> Result<Scalar> {
    let d = ctx.degree();
    let p = ctx.characteristic();
    let small = |rng: &mut ChaCha20Rng| -> i64 {
        match p {
            0 => (rng.next_u64() % 17) as i64 - 8,
            q => (rng.next_u64() % q) as i64,
        }
    };
    if d == 1 {
        return Ok(ctx.from_int(small(rng)));
    }
    let g = ctx.generator()?;
    let mut acc = ctx.zero();
    let mut gp = ctx.one();
    for _ in 0..d {
        let c = ctx.from_int(small(rng));
        acc = ctx.add(&acc, &ctx.mul(&c, &gp)?)?;
        gp = ctx.mul(&gp, &g)?;
    }
    Ok(acc)
}

/// Does an isomorphism self -> other exist? Conclusive whenever either
/// module is indecomposable (a basis of Hom cannot consist of non-units
/// then); otherwise a bounded search that can only err toward false.
pub fn iso_test(m: &RightModule, n: &RightModule) -> Result<bool> {
    if m.dim() != n.dim() {
        return Ok(false);
    }
    if m.dim() == 0 {
        return Ok(true);
    }
    let homs = m.hom_space(n)?;
    if homs.is_empty() {
        return Ok(false);
    }
    for h in &homs {
        if h.rank()? == m.dim() {
            return Ok(true);
        }
    }
    let ctx = m.ctx().clone();
    let mut prefix = Mat::zero(ctx.clone(), m.dim(), n.dim());
    for h in &homs {
        prefix = prefix.add(h)?;
        if prefix.rank()? == m.dim() {
            return Ok(true);
        }
    }
    let mut rng = ChaCha20Rng::seed_from_u64(DEFAULT_SEED);
    for _ in 0..200 {
        let mut f = Mat::zero(ctx.clone(), m.dim(), n.dim());
        for h in &homs {
            f = f.add(&h.scale(&random_scalar(&ctx, &mut rng)?)?)?;
        }
        if f.rank()? == m.dim() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// All simple modules of a split algebra, from the regular module, sorted
/// by dimension then trace fingerprint.
#[derive(Debug, Clone)]
pub struct SimpleCatalog {
    algebra: Arc<AlgebraData>,
    simples: Vec<RightModule>,
    regular_multiplicities: Vec<usize>,
}

impl SimpleCatalog {
    pub fn build(algebra: &Arc<AlgebraData>) -> Result<SimpleCatalog> {
        let reg = RightModule::regular(algebra.clone());
        let factors = chop(&reg)?;
        let mut simples = Vec::with_capacity(factors.len());
        let mut mults = Vec::with_capacity(factors.len());
        for (i, (s, c)) in factors.into_iter().enumerate() {
            simples.push(s.with_name(format!("{}-S{}", algebra.name(), i)));
            mults.push(c);
        }
        Ok(SimpleCatalog { algebra: algebra.clone(), simples, regular_multiplicities: mults })
    }

    pub fn algebra(&self) -> &Arc<AlgebraData> {
        &self.algebra
    }

    pub fn len(&self) -> usize {
        self.simples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simples.is_empty()
    }

    pub fn simples(&self) -> &[RightModule] {
        &self.simples
    }

    pub fn regular_multiplicity(&self, i: usize) -> usize {
        self.regular_multiplicities[i]
    }

    /// Index of the unique catalog member isomorphic to a given simple.
    pub fn match_simple(&self, s: &RightModule) -> Result<usize> {
        for (i, t) in self.simples.iter().enumerate() {
            if t.dim() == s.dim() && !t.hom_space(s)?.is_empty() {
                return Ok(i);
            }
        }
        Err(Error::VerificationFailed(format!(
            "simple module {} missing from the catalog",
            s.name()
        )))
    }

    /// Err(NotSplit) unless every simple has a one-dimensional
    /// endomorphism ring.
    pub fn check_split(&self) -> Result<()> {
        for s in &self.simples {
            let d = s.hom_space(s)?.len();
            if d != 1 {
                return Err(Error::NotSplit(format!(
                    "End({}) has dimension {d}",
                    s.name()
                )));
            }
        }
        Ok(())
    }

    pub fn radical(&self) -> Result<Mat> {
        radical_from_simples(&self.algebra, &self.simples)
    }
}


#[cfg(test)]
mod tests {
    use super::test_modules::{c3_perms, perm_group_algebra, s3_perms};
    use super::*;
    use crate::algcore::test_algebras::{c2, nakayama2};

    fn q() -> Arc<FieldCtx> {
        Arc::new(FieldCtx::rationals())
    }

    fn one_dim(a: &Arc<AlgebraData>, signs: &[i64], name: &str) -> RightModule {
        let ctx = a.ctx().clone();
        let action = signs
            .iter()
            .map(|&s| {
                Mat::from_rows(ctx.clone(), vec![vec![ctx.from_int(s)]]).unwrap()
            })
            .collect();
        RightModule::new(a.clone(), name, action).unwrap()
    }

    #[test]
    fn qc2_regular_splits_into_trivial_and_sign() {
        let a = Arc::new(c2(q()));
        let reg = RightModule::regular(a.clone());
        let factors = chop(&reg).unwrap();
        assert_eq!(factors.len(), 2);
        assert!(factors.iter().all(|(s, c)| s.dim() == 1 && *c == 1));
        let triv = one_dim(&a, &[1, 1], "triv");
        let sign = one_dim(&a, &[1, -1], "sign");
        assert!(iso_test(&factors[0].0, &sign).unwrap() || iso_test(&factors[1].0, &sign).unwrap());
        assert!(!iso_test(&triv, &sign).unwrap());
        assert_eq!(reg.hom_space(&triv).unwrap().len(), 1);
        let rad = radical_algebra(&a).unwrap();
        assert_eq!(rad.rows(), 0);
        assert_eq!(socle_submodule(&reg, &rad).unwrap().rows(), 2);
    }

    #[test]
    fn f2c2_regular_is_uniserial() {
        let a = Arc::new(c2(Arc::new(FieldCtx::prime_field(2).unwrap())));
        let reg = RightModule::regular(a.clone());
        let factors = chop(&reg).unwrap();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].0.dim(), 1);
        assert_eq!(factors[0].1, 2);
        let rad = radical_algebra(&a).unwrap();
        // radical is spanned by 1 + g
        assert_eq!(rad.rows(), 1);
        let ctx = a.ctx();
        assert_eq!(rad.row(0).to_vec(), vec![ctx.one(), ctx.one()]);
        let soc = socle_submodule(&reg, &rad).unwrap();
        assert_eq!(soc, rad);
        assert_eq!(radical_submodule(&reg, &rad).unwrap(), rad);
    }

    #[test]
    fn f2c3_finds_the_two_dimensional_simple() {
        let a = Arc::new(perm_group_algebra(
            Arc::new(FieldCtx::prime_field(2).unwrap()),
            "F2C3",
            c3_perms(),
        ));
        let reg = RightModule::regular(a.clone());
        let factors = chop(&reg).unwrap();
        let dims: Vec<usize> = factors.iter().map(|(s, _)| s.dim()).collect();
        assert_eq!(dims, vec![1, 2]);
        assert!(factors.iter().all(|(_, c)| *c == 1));
        // the 2-dimensional factor is certified simple by the dual spin
        let two = &factors[1].0;
        let mut raw = Vec::new();
        super::meataxe_rec(two, &mut raw).unwrap();
        assert_eq!(raw.len(), 1);
        assert_eq!(raw[0].dim(), 2);
        let cat = SimpleCatalog::build(&a).unwrap();
        assert_eq!(cat.len(), 2);
        // F2 is not a splitting field for C3
        assert!(matches!(cat.check_split(), Err(Error::NotSplit(_))));
    }

    #[test]
    fn qs3_has_three_simples() {
        let a = Arc::new(perm_group_algebra(q(), "QS3", s3_perms()));
        let cat = SimpleCatalog::build(&a).unwrap();
        assert_eq!(cat.len(), 3);
        let dims: Vec<usize> = cat.simples().iter().map(|s| s.dim()).collect();
        assert_eq!(dims, vec![1, 1, 2]);
        assert_eq!(
            (0..3).map(|i| cat.regular_multiplicity(i)).collect::<Vec<_>>(),
            vec![1, 1, 2]
        );
        cat.check_split().unwrap();
        assert_eq!(radical_algebra(&a).unwrap().rows(), 0);
        // trivial and sign are distinguished by the trace fingerprint
        let t0 = cat.simples()[0].trace_vector().unwrap();
        let t1 = cat.simples()[1].trace_vector().unwrap();
        assert_ne!(t0, t1);
    }

    #[test]
    fn nakayama2_radical_socle_and_factors() {
        let a = Arc::new(nakayama2(q()));
        let reg = RightModule::regular(a.clone());
        let factors = chop(&reg).unwrap();
        assert_eq!(factors.len(), 2);
        assert!(factors.iter().all(|(s, c)| s.dim() == 1 && *c == 2));
        let rad = radical_algebra(&a).unwrap();
        assert_eq!(rad.rows(), 2);
        let dickson = trace_form_radical(&a).unwrap();
        assert_eq!(rad, dickson);
        let ctx = a.ctx();
        // radical = span(a, b)
        for r in 0..2 {
            assert!(ctx.is_zero(&rad.row(r)[0]) && ctx.is_zero(&rad.row(r)[1]));
        }
        let soc = socle_submodule(&reg, &rad).unwrap();
        assert_eq!(soc, rad);
        // spinning e1 gives the projective e1 A = span(e1, a)
        let mut seed = Mat::zero(ctx.clone(), 1, 4);
        seed.set(0, 0, ctx.one());
        let p1 = reg.spin(&seed).unwrap();
        assert_eq!(p1.rows(), 2);
        let mut seed_a = Mat::zero(ctx.clone(), 1, 4);
        seed_a.set(0, 2, ctx.one());
        assert_eq!(reg.spin(&seed_a).unwrap().rows(), 1);
    }

    #[test]
    fn radical_module_agrees_with_hom_kernel_route() {
        let q2 = Arc::new(c2(Arc::new(FieldCtx::prime_field(2).unwrap())));
        let n2 = Arc::new(nakayama2(q()));
        for a in [q2, n2] {
            let reg = RightModule::regular(a.clone());
            let cat = SimpleCatalog::build(&a).unwrap();
            let rad = radical_submodule(&reg, &cat.radical().unwrap()).unwrap();
            // oracle: intersection of kernels of all maps to simples
            let ctx = a.ctx().clone();
            let mut wide = Mat::zero(ctx.clone(), reg.dim(), 0);
            for s in cat.simples() {
                for f in reg.hom_space(s).unwrap() {
                    wide = wide.hstack(&f).unwrap();
                }
            }
            let oracle = wide.left_kernel().unwrap().row_basis().unwrap();
            assert_eq!(rad.row_basis().unwrap(), oracle);
        }
    }

    #[test]
    fn quotient_and_submodule_round_trip() {
        let a = Arc::new(nakayama2(q()));
        let reg = RightModule::regular(a.clone());
        let rad = radical_algebra(&a).unwrap();
        let w = radical_submodule(&reg, &rad).unwrap();
        let (sub, basis) = reg.submodule(&w, "radpart").unwrap();
        assert_eq!(sub.dim(), 2);
        assert_eq!(basis.rows(), 2);
        let (head, _) = reg.quotient(&w, "head").unwrap();
        assert_eq!(head.dim(), 2);
        // the head is semisimple: its own radical vanishes
        assert_eq!(radical_submodule(&head, &rad).unwrap().rows(), 0);
        // non-invariant rows are rejected
        let mut bad = Mat::zero(a.ctx().clone(), 1, 4);
        bad.set(0, 0, a.ctx().one());
        bad.set(0, 1, a.ctx().from_int(3));
        assert!(matches!(
            reg.submodule(&bad, "bad"),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn iso_test_conclusive_on_one_dimensionals() {
        let a = Arc::new(c2(q()));
        let triv = one_dim(&a, &[1, 1], "triv");
        let sign = one_dim(&a, &[1, -1], "sign");
        let triv2 = one_dim(&a, &[1, 1], "triv-copy");
        assert!(iso_test(&triv, &triv2).unwrap());
        assert!(!iso_test(&sign, &triv).unwrap());
        assert!(matches!(
            triv.hom_space(&one_dim(&Arc::new(nakayama2(q())), &[1, 0, 0, 0], "x")),
            Err(Error::AlgebraMismatch)
        ));
    }
}
