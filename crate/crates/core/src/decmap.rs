//! Modular reduction at a prime: reduced algebras and modules, the
//! decomposition matrix, its transpose realized by lifting idempotents
//! back to the local ring, and the trivial-column criteria that exclude
//! only finitely many primes.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algcore::AlgebraData;
use crate::error::{Error, Result};
use crate::exact::{FieldCtx, PrimeSpec, Scalar, Valuation};
use crate::matlin::Mat;
use crate::pimkit::{extract_pims, lift_polynomial, AdaptedPim};
use crate::repmod::{chop, RightModule, SimpleCatalog};

/// Entrywise reduction of an algebra with integral data to the residue
/// field; structure constants, unit, and trace vector travel together and
/// the result is revalidated from scratch.
pub fn reduce_algebra(a: &Arc<AlgebraData>, prime: &PrimeSpec) -> Result<Arc<AlgebraData>> {
    let ctx = a.ctx();
    ctx.validate_prime(prime)?;
    let rctx = Arc::new(ctx.residue_ctx(prime)?);
    let entries = a.structure_entries();
    let mut offenders: Vec<String> = Vec::new();
    let note = |label: String, s: &Scalar, offenders: &mut Vec<String>| -> Result<()> {
        if let Valuation::Finite(v) = ctx.valuation(s, prime)? {
            if v < 0 {
                offenders.push(format!("{label} = {}", ctx.scalar_to_string(s)));
            }
        }
        Ok(())
    };
    for (i, j, k, s) in &entries {
        let label = format!(
            "{}*{} at {}",
            a.basis_labels()[*i],
            a.basis_labels()[*j],
            a.basis_labels()[*k]
        );
        note(label, s, &mut offenders)?;
    }
    for (w, s) in a.unit().iter().enumerate() {
        note(format!("unit at {}", a.basis_labels()[w]), s, &mut offenders)?;
    }
    for (w, s) in a.tau().iter().enumerate() {
        note(format!("tau at {}", a.basis_labels()[w]), s, &mut offenders)?;
    }
    if !offenders.is_empty() {
        let shown = offenders.len().min(8);
        let mut msg = offenders[..shown].join(", ");
        if offenders.len() > shown {
            msg.push_str(&format!(", and {} more", offenders.len() - shown));
        }
        return Err(Error::NotIntegralAtPrime(format!(
            "{} at {}: {}",
            a.name(),
            prime.ell,
            msg
        )));
    }
    let structure = entries
        .into_iter()
        .map(|(i, j, k, s)| Ok((i, j, k, ctx.reduce_mod(&s, prime, &rctx)?)))
        .collect::<Result<Vec<_>>>()?;
    let unit = a
        .unit()
        .iter()
        .map(|s| ctx.reduce_mod(s, prime, &rctx))
        .collect::<Result<Vec<_>>>()?;
    let tau = a
        .tau()
        .iter()
        .map(|s| ctx.reduce_mod(s, prime, &rctx))
        .collect::<Result<Vec<_>>>()?;
    let name = format!("{} mod {}", a.name(), prime.ell);
    Ok(Arc::new(AlgebraData::new(
        rctx,
        name,
        a.basis_labels().to_vec(),
        structure,
        unit,
        tau,
    )?))
}

/// Reduce a module through the cyclic lattice spanned from the first
/// standard vector.
pub fn reduce_module(v: &RightModule, prime: &PrimeSpec) -> Result<RightModule> {
    let abar = reduce_algebra(v.algebra(), prime)?;
    reduce_module_seeded(v, &abar, prime, 0)
}

/// Same with a shared reduced algebra and a chosen start vector. The
/// lattice is the local-ring span of v0 * B_w over all w, echelonized with
/// minimal-valuation pivots so only integral multiples are subtracted; the
/// conjugated action is then integral and reduces entrywise. Composition
/// factors do not depend on the start vector.
pub fn reduce_module_seeded(
    v: &RightModule,
    abar: &Arc<AlgebraData>,
    prime: &PrimeSpec,
    seed: usize,
) -> Result<RightModule> {
    let ctx = v.ctx().clone();
    if v.dim() == 0 {
        return Err(Error::InvalidInput("cannot reduce a zero module".into()));
    }
    if seed >= v.dim() {
        return Err(Error::InvalidInput(format!(
            "start vector {seed} out of range for dimension {}",
            v.dim()
        )));
    }
    if abar.dim() != v.algebra().dim() {
        return Err(Error::AlgebraMismatch);
    }
    // v0 = e_seed, so v0 * rho(B_w) is row seed of the action matrix
    let rows: Vec<Vec<Scalar>> =
        (0..abar.dim()).map(|w| v.action(w).row(seed).to_vec()).collect();
    let basis = lattice_rows(&ctx, rows, prime)?;
    if basis.len() != v.dim() {
        return Err(Error::InvalidInput(format!(
            "{} is not cyclic from start vector {seed}",
            v.name()
        )));
    }
    let u = Mat::from_rows(ctx.clone(), basis)?;
    let rctx = abar.ctx().clone();
    let mut action = Vec::with_capacity(abar.dim());
    for w in 0..abar.dim() {
        let x = u.solve_left(&u.mul(v.action(w))?)?;
        let mut reduced = Vec::with_capacity(x.rows());
        for i in 0..x.rows() {
            let mut row = Vec::with_capacity(x.cols());
            for j in 0..x.cols() {
                // the lattice is stable, so every entry must be integral
                if let Valuation::Finite(val) = ctx.valuation(x.at(i, j), prime)? {
                    if val < 0 {
                        return Err(Error::VerificationFailed(format!(
                            "lattice action of basis element {w} is not integral at {}",
                            prime.ell
                        )));
                    }
                }
                row.push(ctx.reduce_mod(x.at(i, j), prime, &rctx)?);
            }
            reduced.push(row);
        }
        action.push(Mat::from_rows(rctx.clone(), reduced)?);
    }
    RightModule::new(
        abar.clone(),
        format!("{} mod {}", v.name(), prime.ell),
        action,
    )
}

/// Echelonize lattice generators over the local ring: pick the pivot of
/// minimal valuation in each column, subtract only integral multiples.
fn lattice_rows(
    ctx: &Arc<FieldCtx>,
    rows: Vec<Vec<Scalar>>,
    prime: &PrimeSpec,
) -> Result<Vec<Vec<Scalar>>> {
    let width = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pool = rows;
    let mut basis = Vec::new();
    for col in 0..width {
        let mut best: Option<(usize, i64)> = None;
        for (r, row) in pool.iter().enumerate() {
            if let Valuation::Finite(v) = ctx.valuation(&row[col], prime)? {
                if best.map_or(true, |(_, b)| v < b) {
                    best = Some((r, v));
                }
            }
        }
        let Some((pi, _)) = best else { continue };
        let pivot = pool.swap_remove(pi);
        for row in pool.iter_mut() {
            if ctx.is_zero(&row[col]) {
                continue;
            }
            let ratio = ctx.div(&row[col], &pivot[col])?;
            for (t, s) in row.iter_mut().zip(&pivot) {
                *t = ctx.sub(t, &ctx.mul(&ratio, s)?)?;
            }
        }
        basis.push(pivot);
    }
    for row in &pool {
        if row.iter().any(|s| !ctx.is_zero(s)) {
            return Err(Error::VerificationFailed(
                "echelonization left a nonzero dependent row".into(),
            ));
        }
    }
    Ok(basis)
}

/// Composition multiplicities of residue-field simples in the reductions
/// of the source-field simples; rows and columns in catalog order.
#[derive(Debug, Clone)]
pub struct DecompositionMatrix {
    pub prime: PrimeSpec,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub row_dims: Vec<usize>,
    pub col_dims: Vec<usize>,
    pub entries: Vec<Vec<usize>>,
}

impl DecompositionMatrix {
    /// Checked constructor: dimension-weighted row sums must reproduce the
    /// row dimensions.
    pub fn new(
        prime: PrimeSpec,
        rows: Vec<String>,
        cols: Vec<String>,
        row_dims: Vec<usize>,
        col_dims: Vec<usize>,
        entries: Vec<Vec<usize>>,
    ) -> Result<DecompositionMatrix> {
        if rows.len() != entries.len()
            || rows.len() != row_dims.len()
            || cols.len() != col_dims.len()
        {
            return Err(Error::DimensionMismatch(
                "decomposition matrix shape".into(),
            ));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != cols.len() {
                return Err(Error::DimensionMismatch(
                    "decomposition matrix row length".into(),
                ));
            }
            let total: usize = row.iter().zip(&col_dims).map(|(e, d)| e * d).sum();
            if total != row_dims[i] {
                return Err(Error::VerificationFailed(format!(
                    "factors of {} sum to dimension {total}, expected {}",
                    rows[i], row_dims[i]
                )));
            }
        }
        Ok(DecompositionMatrix { prime, rows, cols, row_dims, col_dims, entries })
    }

    pub fn entry(&self, i: usize, j: usize) -> usize {
        self.entries[i][j]
    }

    pub fn transpose_entries(&self) -> Vec<Vec<usize>> {
        let mut out = vec![vec![0usize; self.rows.len()]; self.cols.len()];
        for (i, row) in self.entries.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                out[j][i] = e;
            }
        }
        out
    }

    /// Some(sigma) when the matrix is a permutation matrix, with row i
    /// supported exactly at column sigma[i].
    pub fn permutation(&self) -> Option<Vec<usize>> {
        if self.rows.len() != self.cols.len() {
            return None;
        }
        let mut seen = vec![false; self.cols.len()];
        let mut sigma = Vec::with_capacity(self.rows.len());
        for row in &self.entries {
            let mut hit = None;
            for (j, &e) in row.iter().enumerate() {
                match e {
                    0 => {}
                    1 if hit.is_none() => hit = Some(j),
                    _ => return None,
                }
            }
            let j = hit?;
            if seen[j] {
                return None;
            }
            seen[j] = true;
            sigma.push(j);
        }
        Some(sigma)
    }

    pub fn is_identity(&self) -> bool {
        self.permutation()
            .map_or(false, |s| s.iter().enumerate().all(|(i, &j)| i == j))
    }
}

/// The decomposition matrix at a prime: reduce every simple and chop.
pub fn decomposition_matrix(
    a: &Arc<AlgebraData>,
    prime: &PrimeSpec,
) -> Result<DecompositionMatrix> {
    let kat = SimpleCatalog::build(a)?;
    kat.check_split()?;
    let abar = reduce_algebra(a, prime)?;
    let katbar = SimpleCatalog::build(&abar)?;
    katbar.check_split()?;
    let mut entries = Vec::with_capacity(kat.len());
    for v in kat.simples() {
        let vbar = reduce_module_seeded(v, &abar, prime, 0)?;
        let mut row = vec![0usize; katbar.len()];
        for (s, count) in chop(&vbar)? {
            row[katbar.match_simple(&s)?] += count;
        }
        entries.push(row);
    }
    DecompositionMatrix::new(
        prime.clone(),
        kat.simples().iter().map(|s| s.name().to_string()).collect(),
        katbar.simples().iter().map(|s| s.name().to_string()).collect(),
        kat.simples().iter().map(|s| s.dim()).collect(),
        katbar.simples().iter().map(|s| s.dim()).collect(),
        entries,
    )
}

/// Coefficient-wise section of the residue map: prime-field values lift to
/// small integers, extension-field values to the matching root-of-unity
/// combination.
fn lift_residue_scalar(src: &Arc<FieldCtx>, s: &Scalar) -> Result<Scalar> {
    match s {
        Scalar::Fp { val, .. } => Ok(src.from_int(*val as i64)),
        Scalar::Fq { coeffs, .. } => {
            let zeta = src.generator()?;
            let mut acc = src.zero();
            for (i, &c) in coeffs.iter().enumerate() {
                let term = src.mul(&src.from_int(c as i64), &src.pow(&zeta, i as u64)?)?;
                acc = src.add(&acc, &term)?;
            }
            Ok(acc)
        }
        _ => Err(Error::FieldMismatch("expected a residue-field scalar".into())),
    }
}

fn min_valuation(
    ctx: &Arc<FieldCtx>,
    xs: &[Scalar],
    prime: &PrimeSpec,
) -> Result<Valuation> {
    let mut out = Valuation::Infinity;
    for s in xs {
        if let Valuation::Finite(v) = ctx.valuation(s, prime)? {
            out = match out {
                Valuation::Finite(b) if b <= v => out,
                _ => Valuation::Finite(v),
            };
        }
    }
    Ok(out)
}

fn dot(ctx: &Arc<FieldCtx>, a: &[Scalar], b: &[Scalar]) -> Result<Scalar> {
    let mut acc = ctx.zero();
    for (x, y) in a.iter().zip(b) {
        acc = ctx.add(&acc, &ctx.mul(x, y)?)?;
    }
    Ok(acc)
}

/// The unique integer in 0..=bound within the given valuation radius of t.
fn round_trace(
    ctx: &Arc<FieldCtx>,
    t: &Scalar,
    prime: &PrimeSpec,
    radius: i64,
    bound: usize,
) -> Result<usize> {
    let mut hit = None;
    for cand in 0..=bound {
        let diff = ctx.sub(t, &ctx.from_int(cand as i64))?;
        let close = match ctx.valuation(&diff, prime)? {
            Valuation::Infinity => true,
            Valuation::Finite(v) => v >= radius,
        };
        if close {
            if hit.is_some() {
                return Err(Error::VerificationFailed(
                    "trace rounds to two different integers".into(),
                ));
            }
            hit = Some(cand);
        }
    }
    hit.ok_or_else(|| {
        Error::VerificationFailed(format!(
            "trace {} does not round to an integer",
            ctx.scalar_to_string(t)
        ))
    })
}

/// Lift every residue-field primitive idempotent to the local ring by
/// iterating the degree-2 lifting polynomial, read off the multiplicities
/// of source PIMs in the lifted projective from simple-module traces, and
/// compare the resulting matrix with the transposed decomposition matrix.
///
/// Traces of the iterates converge: each step at least doubles the
/// valuation of x^2 - x, and the limit trace is an integer between 0 and
/// dim A, so it is pinned down exactly once the defect valuation clears
/// the rounding radius plus the worst trace denominator.
pub fn reciprocity_check(a: &Arc<AlgebraData>, prime: &PrimeSpec) -> Result<bool> {
    let ctx = a.ctx().clone();
    let dmat = decomposition_matrix(a, prime)?;
    let kat = SimpleCatalog::build(a)?;
    let kpims = extract_pims(a)?;
    let abar = reduce_algebra(a, prime)?;
    let barpims = extract_pims(&abar)?;
    let rctx = abar.ctx().clone();

    // smallest N with ell^N exceeding every candidate integer
    let dim_a = a.dim();
    let mut precision: i64 = 1;
    let mut pw: u128 = prime.ell as u128;
    while pw <= dim_a as u128 {
        pw *= prime.ell as u128;
        precision += 1;
    }
    let ell_val = match ctx.valuation(&ctx.from_int(prime.ell as i64), prime)? {
        Valuation::Finite(v) => v,
        Valuation::Infinity => {
            return Err(Error::InvalidInput("prime reduces to zero".into()))
        }
    };
    let radius = precision * ell_val;

    // traces of the basis on every simple, and of left multiplication on
    // the algebra itself (the dimension count of the lifted projective)
    let mut traces: Vec<Vec<Scalar>> = Vec::with_capacity(kat.len());
    let mut allowance: i64 = 0;
    for s in kat.simples() {
        let tv = s.trace_vector()?;
        if let Valuation::Finite(v) = min_valuation(&ctx, &tv, prime)? {
            allowance = allowance.max(-v);
        }
        traces.push(tv);
    }
    let mut left_traces = Vec::with_capacity(dim_a);
    for w in 0..dim_a {
        left_traces.push(a.left_mult(&a.basis_vec(w))?.trace()?);
    }
    if let Valuation::Finite(v) = min_valuation(&ctx, &left_traces, prime)? {
        allowance = allowance.max(-v);
    }
    let target = radius + allowance;

    let lifter = lift_polynomial(2)?;
    let mut ematrix = Vec::with_capacity(barpims.len());
    for pim in &barpims {
        let mut x: Vec<Scalar> = pim
            .idempotent
            .iter()
            .map(|s| lift_residue_scalar(&ctx, s))
            .collect::<Result<_>>()?;
        let mut settled = false;
        for _ in 0..64 {
            if let Valuation::Finite(v) = min_valuation(&ctx, &x, prime)? {
                if v < 0 {
                    return Err(Error::VerificationFailed(
                        "idempotent lift left the local ring".into(),
                    ));
                }
            }
            for (s, f) in x.iter().zip(&pim.idempotent) {
                if ctx.reduce_mod(s, prime, &rctx)? != *f {
                    return Err(Error::VerificationFailed(
                        "idempotent lift changed its reduction".into(),
                    ));
                }
            }
            let sq = a.mul_elements(&x, &x)?;
            let delta: Vec<Scalar> = sq
                .iter()
                .zip(&x)
                .map(|(u, v)| ctx.sub(u, v))
                .collect::<Result<_>>()?;
            match min_valuation(&ctx, &delta, prime)? {
                Valuation::Infinity => {
                    settled = true;
                    break;
                }
                Valuation::Finite(v) if v >= target => {
                    settled = true;
                    break;
                }
                _ => {}
            }
            x = lifter.apply(a, &x)?;
        }
        if !settled {
            return Err(Error::PrecisionExhausted(64));
        }
        let mut row = vec![0usize; kat.len()];
        for (i, tv) in traces.iter().enumerate() {
            row[i] = round_trace(&ctx, &dot(&ctx, tv, &x)?, prime, radius, dim_a)?;
        }
        // dimension bookkeeping: the lifted projective splits into source
        // PIMs of matching total dimension
        let lifted_dim =
            round_trace(&ctx, &dot(&ctx, &left_traces, &x)?, prime, radius, dim_a)?;
        let total: usize =
            row.iter().zip(&kpims).map(|(e, p)| e * p.module.dim()).sum();
        if total != lifted_dim {
            return Err(Error::VerificationFailed(format!(
                "lifted projective has dimension {lifted_dim} but its PIM \
                 multiplicities sum to {total}"
            )));
        }
        ematrix.push(row);
    }
    Ok(ematrix == dmat.transpose_entries())
}

/// Excluded primes of one PIM: from the denominators feeding the
/// idempotent formula and from whole generator matrices.
#[derive(Debug, Clone)]
pub struct PimCriteria {
    pub pim: String,
    pub excluded_primes_i: Vec<u64>,
    pub excluded_primes_j: Vec<u64>,
}

#[derive(Debug, Clone)]
pub struct CriteriaReport {
    pub pims: Vec<PimCriteria>,
}

/// For every rational prime outside the reported sets, the decomposition
/// column of the PIM's head simple is trivial. Matrix entries are divided
/// by the corner constant before taking denominators, so the simple-PIM
/// case charges its Schur constant; an omitted generator list means the
/// whole basis.
pub fn trivial_column_criteria(
    a: &Arc<AlgebraData>,
    pims: &[AdaptedPim],
    generators: Option<&[usize]>,
) -> Result<CriteriaReport> {
    let ctx = a.ctx().clone();
    let n = a.dim();
    let gens: Vec<usize> = match generators {
        Some(g) => {
            for &x in g {
                if x >= n {
                    return Err(Error::InvalidInput(format!(
                        "generator index {x} out of range for dimension {n}"
                    )));
                }
            }
            if !generates_algebra(a, g)? {
                return Err(Error::InvalidInput(
                    "the chosen basis elements do not generate the algebra".into(),
                ));
            }
            g.to_vec()
        }
        None => (0..n).collect(),
    };
    let mut out = Vec::with_capacity(pims.len());
    for ap in pims {
        let cinv = ctx.inv(&ap.normalized_c)?;
        let mut iset = BTreeSet::new();
        for w in 0..n {
            let xw = ap.adapted_action(w)?;
            for i in 0..ap.d {
                let scaled = ctx.mul(xw.at(ap.m + i, i), &cinv)?;
                denominator_primes(&ctx, &scaled, &mut iset)?;
            }
        }
        let mut jset = BTreeSet::new();
        for &x in &gens {
            let xw = ap.adapted_action(x)?;
            for r in 0..xw.rows() {
                for c in 0..xw.cols() {
                    let scaled = ctx.mul(xw.at(r, c), &cinv)?;
                    denominator_primes(&ctx, &scaled, &mut jset)?;
                }
            }
        }
        out.push(PimCriteria {
            pim: ap.module.name().to_string(),
            excluded_primes_i: iset.into_iter().collect(),
            excluded_primes_j: jset.into_iter().collect(),
        });
    }
    Ok(CriteriaReport { pims: out })
}

fn denominator_primes(
    ctx: &Arc<FieldCtx>,
    s: &Scalar,
    set: &mut BTreeSet<u64>,
) -> Result<()> {
    let den = ctx.denominator(s)?;
    for p in factor_positive(&den)? {
        set.insert(p);
    }
    Ok(())
}

/// Trial division; the denominators seen here are small.
fn factor_positive(n: &BigInt) -> Result<Vec<u64>> {
    let mut m = n.abs();
    let mut out = Vec::new();
    let mut d: u64 = 2;
    while BigInt::from(d) * BigInt::from(d) <= m {
        let db = BigInt::from(d);
        if (&m % &db).is_zero() {
            out.push(d);
            while (&m % &db).is_zero() {
                m /= &db;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > BigInt::one() {
        out.push(m.to_u64().ok_or_else(|| {
            Error::InvalidInput("denominator prime does not fit in a machine word".into())
        })?);
    }
    Ok(out)
}

/// One desk instance of the simple-preservation statement: the
/// decomposition matrix of a Hecke algebra at a root of unity, reduced at
/// a prime, with the coprimality hypothesis recorded alongside.
#[derive(Debug, Clone)]
pub struct JamesReport {
    pub group_order: u64,
    /// The hypothesis of the statement: ell does not divide |W|.
    pub coprime_to_group_order: bool,
    pub matrix: DecompositionMatrix,
    /// Column of the single 1 in each row when the matrix is a
    /// permutation; the canonical simple ordering is only fixed up to
    /// the fingerprint key, so any permutation counts as the identity.
    pub permutation: Option<Vec<usize>>,
    pub is_identity: bool,
}

/// Build the Hecke algebra of a catalog type at v = zeta_e and compute
/// its decomposition matrix at the prime.
pub fn james_check(coxeter_type: &str, e: u32, prime: &PrimeSpec) -> Result<JamesReport> {
    let g = crate::heckegen::build_coxeter_named(coxeter_type)?;
    let spec = crate::heckegen::HeckeSpec::root_of_unity(
        format!("hecke-{coxeter_type}-zeta{e}"),
        e,
    );
    let h = crate::heckegen::build_hecke(&g, &spec)?;
    let matrix = decomposition_matrix(&h, prime)?;
    let permutation = matrix.permutation();
    let is_identity = permutation.is_some();
    Ok(JamesReport {
        group_order: g.order() as u64,
        coprime_to_group_order: g.order() as u64 % prime.ell != 0,
        matrix,
        permutation,
        is_identity,
    })
}

/// Closure of the span of all words in the chosen basis elements.
fn generates_algebra(a: &Arc<AlgebraData>, gens: &[usize]) -> Result<bool> {
    let ctx = a.ctx().clone();
    let mut rows = vec![a.unit().to_vec()];
    for &x in gens {
        rows.push(a.basis_vec(x));
    }
    let mut span = Mat::from_rows(ctx, rows)?.row_basis()?;
    loop {
        let mut next = span.clone();
        for &x in gens {
            next = next.vstack(&span.mul(&a.right_mult_basis(x))?)?;
        }
        let next = next.row_basis()?;
        if next.rows() == span.rows() {
            return Ok(span.rows() == a.dim());
        }
        span = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::test_algebras::{c2, nakayama2};
    use crate::pimkit::adapt_basis;
    use crate::repmod::test_modules::{perm_group_algebra, s3_perms};

    fn q() -> Arc<FieldCtx> {
        Arc::new(FieldCtx::rationals())
    }

    fn rat(n: i64, d: i64) -> Scalar {
        let ctx = FieldCtx::rationals();
        ctx.div(&ctx.from_int(n), &ctx.from_int(d)).unwrap()
    }

    fn qc2() -> Arc<AlgebraData> {
        Arc::new(c2(q()))
    }

    fn qs3() -> Arc<AlgebraData> {
        Arc::new(perm_group_algebra(q(), "qs3", s3_perms()))
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

    /// Index of the one-dimensional catalog simple on which a transposition
    /// acts as +1.
    fn trivial_index(kat: &SimpleCatalog) -> usize {
        (0..kat.len())
            .find(|&i| {
                let s = &kat.simples()[i];
                s.dim() == 1 && s.action(3).at(0, 0) == &s.ctx().one()
            })
            .unwrap()
    }

    #[test]
    fn qc2_reduces_to_the_mod2_group_algebra() {
        let a = qc2();
        let abar = reduce_algebra(&a, &PrimeSpec::rational(2)).unwrap();
        let expected = c2(Arc::new(FieldCtx::prime_field(2).unwrap()));
        assert_eq!(abar.dim(), 2);
        assert_eq!(abar.ctx().characteristic(), 2);
        for j in 0..2 {
            assert_eq!(abar.right_mult_basis(j), expected.right_mult_basis(j));
        }
        assert_eq!(abar.unit(), expected.unit());
        assert_eq!(abar.tau(), expected.tau());
    }

    #[test]
    fn non_integral_structure_constants_are_rejected() {
        let a = qc2();
        let p = Mat::from_rows(
            a.ctx().clone(),
            vec![vec![rat(1, 1), rat(0, 1)], vec![rat(0, 1), rat(1, 2)]],
        )
        .unwrap();
        let scaled = Arc::new(a.change_basis(&p).unwrap());
        match reduce_algebra(&scaled, &PrimeSpec::rational(2)) {
            Err(Error::NotIntegralAtPrime(_)) => {}
            other => panic!("expected NotIntegralAtPrime, got {other:?}"),
        }
        // the same denominators are invertible at 3
        let ok = reduce_algebra(&scaled, &PrimeSpec::rational(3)).unwrap();
        assert_eq!(ok.dim(), 2);
    }

    #[test]
    fn sign_module_reduces_to_the_trivial_module_mod_2() {
        let a = qc2();
        let sign = one_dim(&a, &[1, -1], "sign");
        let vbar = reduce_module(&sign, &PrimeSpec::rational(2)).unwrap();
        assert_eq!(vbar.dim(), 1);
        assert_eq!(vbar.action(1).at(0, 0), &vbar.ctx().one());
    }

    #[test]
    fn qc2_decomposition_matrix_mod_2_stacks_both_simples() {
        let d = decomposition_matrix(&qc2(), &PrimeSpec::rational(2)).unwrap();
        assert_eq!(d.entries, vec![vec![1], vec![1]]);
        assert_eq!(d.cols.len(), 1);
        assert_eq!(d.col_dims, vec![1]);
    }

    #[test]
    fn qs3_decomposition_matrix_mod_3_has_the_classical_shape() {
        let a = qs3();
        let p3 = PrimeSpec::rational(3);
        let d = decomposition_matrix(&a, &p3).unwrap();
        assert_eq!(d.rows.len(), 3);
        assert_eq!(d.cols.len(), 2);
        let kat = SimpleCatalog::build(&a).unwrap();
        let abar = reduce_algebra(&a, &p3).unwrap();
        let katbar = SimpleCatalog::build(&abar).unwrap();
        let bar_is_trivial: Vec<bool> = (0..katbar.len())
            .map(|j| {
                let s = &katbar.simples()[j];
                s.action(3).at(0, 0) == &s.ctx().one()
            })
            .collect();
        for i in 0..3 {
            let s = &kat.simples()[i];
            if s.dim() == 2 {
                assert_eq!(d.entries[i], vec![1, 1]);
                continue;
            }
            let is_trivial = s.action(3).at(0, 0) == &s.ctx().one();
            for j in 0..2 {
                let expect = usize::from(bar_is_trivial[j] == is_trivial);
                assert_eq!(d.entries[i][j], expect);
            }
        }
    }

    #[test]
    fn qs3_decomposition_matrix_mod_5_is_a_permutation() {
        let d = decomposition_matrix(&qs3(), &PrimeSpec::rational(5)).unwrap();
        let sigma = d.permutation().expect("semisimple reduction");
        for (i, &j) in sigma.iter().enumerate() {
            assert_eq!(d.row_dims[i], d.col_dims[j]);
        }
    }

    #[test]
    fn lattice_seed_does_not_change_the_factors() {
        let a = qs3();
        let p3 = PrimeSpec::rational(3);
        let kat = SimpleCatalog::build(&a).unwrap();
        let std_idx = (0..kat.len()).find(|&i| kat.simples()[i].dim() == 2).unwrap();
        let abar = reduce_algebra(&a, &p3).unwrap();
        let katbar = SimpleCatalog::build(&abar).unwrap();
        let mut rows = Vec::new();
        for seed in 0..2 {
            let vbar =
                reduce_module_seeded(&kat.simples()[std_idx], &abar, &p3, seed)
                    .unwrap();
            let mut row = vec![0usize; katbar.len()];
            for (s, c) in chop(&vbar).unwrap() {
                row[katbar.match_simple(&s).unwrap()] += c;
            }
            rows.push(row);
        }
        assert_eq!(rows[0], rows[1]);
        assert_eq!(rows[0].iter().sum::<usize>(), 2);
    }

    #[test]
    fn reciprocity_holds_on_the_group_algebra_corpus() {
        assert!(reciprocity_check(&qc2(), &PrimeSpec::rational(2)).unwrap());
        assert!(reciprocity_check(&qs3(), &PrimeSpec::rational(3)).unwrap());
        assert!(reciprocity_check(&qs3(), &PrimeSpec::rational(5)).unwrap());
    }

    #[test]
    fn excluded_primes_match_the_classical_idempotent_denominators() {
        let a = qc2();
        let pims = extract_pims(&a).unwrap();
        let adapted: Vec<AdaptedPim> = pims
            .iter()
            .map(|p| adapt_basis(&a, &p.module).unwrap())
            .collect();
        let report = trivial_column_criteria(&a, &adapted, None).unwrap();
        for pc in &report.pims {
            assert_eq!(pc.excluded_primes_i, vec![2]);
            assert_eq!(pc.excluded_primes_j, vec![2]);
        }

        let s3 = qs3();
        let pims = extract_pims(&s3).unwrap();
        let kat = SimpleCatalog::build(&s3).unwrap();
        let ap = adapt_basis(&s3, &pims[trivial_index(&kat)].module).unwrap();
        let report =
            trivial_column_criteria(&s3, std::slice::from_ref(&ap), None).unwrap();
        assert_eq!(report.pims[0].excluded_primes_i, vec![2, 3]);
        assert_eq!(report.pims[0].excluded_primes_j, vec![2, 3]);
    }

    #[test]
    fn integral_quiver_algebra_excludes_no_primes() {
        let a = Arc::new(nakayama2(q()));
        let pims = extract_pims(&a).unwrap();
        let adapted: Vec<AdaptedPim> = pims
            .iter()
            .map(|p| adapt_basis(&a, &p.module).unwrap())
            .collect();
        let report = trivial_column_criteria(&a, &adapted, None).unwrap();
        for pc in &report.pims {
            assert!(pc.excluded_primes_i.is_empty());
            assert!(pc.excluded_primes_j.is_empty());
        }
    }

    #[test]
    fn generator_subsets_and_generation_checking() {
        let s3 = qs3();
        let pims = extract_pims(&s3).unwrap();
        let kat = SimpleCatalog::build(&s3).unwrap();
        let ap = adapt_basis(&s3, &pims[trivial_index(&kat)].module).unwrap();
        // a rotation and a transposition generate the group
        let report =
            trivial_column_criteria(&s3, std::slice::from_ref(&ap), Some(&[1, 3]))
                .unwrap();
        assert_eq!(report.pims[0].excluded_primes_j, vec![2, 3]);
        // the identity alone does not
        assert!(trivial_column_criteria(&s3, &[ap], Some(&[0])).is_err());
    }

    #[test]
    fn james_instance_a2_at_seven_is_the_identity() {
        // zeta_3 -> 2 in F_7; 7 does not divide |W| = 6
        let prime = PrimeSpec::unramified(7, vec![5, 1]);
        let report = james_check("A2", 3, &prime).unwrap();
        assert_eq!(report.group_order, 6);
        assert!(report.coprime_to_group_order);
        assert!(report.is_identity);
        assert_eq!(report.matrix.rows.len(), 2);
        assert_eq!(report.matrix.cols.len(), 2);
        assert!(report.permutation.is_some());
    }

    #[test]
    fn james_hypothesis_fails_when_ell_divides_the_group_order() {
        // A1 at v = -1 is the C2 group algebra; 2 divides |W|
        let report = james_check("A1", 2, &PrimeSpec::ramified(2)).unwrap();
        assert_eq!(report.group_order, 2);
        assert!(!report.coprime_to_group_order);
        assert!(!report.is_identity);
        assert_eq!(report.matrix.entries, vec![vec![1], vec![1]]);
    }

    #[test]
    fn james_ramified_reduction_still_reports_a_matrix() {
        // zeta_3 -> 1 in F_3, so the reduction is the group algebra mod 3
        let report = james_check("A2", 3, &PrimeSpec::ramified(3)).unwrap();
        assert!(!report.coprime_to_group_order);
        assert_eq!(report.matrix.rows.len(), 2);
        assert_eq!(report.matrix.cols.len(), 2);
    }
}
