//! The averaging operator I(f) = sum_w f(. B_w) B_w^dual, the constants
//! c(i,j,s,t) attached to an adapted PIM basis, machine checks for the
//! block relations they satisfy, Gaschuetz projectivity certificates, and
//! the explicit primitive idempotents built from the lower-left block of
//! the representing matrices.

use std::collections::{BTreeMap, BTreeSet};

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use std::sync::Arc;

use crate::algcore::AlgebraData;
use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::matlin::Mat;
use crate::pimkit::{lift_polynomial, nilpotency_index, AdaptedPim};
use crate::repmod::{
    iso_test, radical_algebra, radical_submodule, socle_submodule, RightModule,
};
use crate::DEFAULT_SEED;

/// I(F) for a linear map F: M -> N between modules over one Frobenius
/// algebra. The result is always a module homomorphism; that is checked
/// exactly before returning.
pub fn average(m: &RightModule, n: &RightModule, f: &Mat) -> Result<Mat> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    if f.rows() != m.dim() || f.cols() != n.dim() {
        return Err(Error::DimensionMismatch(format!(
            "map must be {} x {}",
            m.dim(),
            n.dim()
        )));
    }
    let a = m.algebra();
    let ctx = a.ctx().clone();
    let duals = a.dual_basis()?.dual_vectors;
    let mut acc = Mat::zero(ctx, m.dim(), n.dim());
    for w in 0..a.dim() {
        let term = m.action(w).mul(f)?.mul(&n.action_of(duals.row(w))?)?;
        acc = acc.add(&term)?;
    }
    for w in 0..a.dim() {
        if m.action(w).mul(&acc)? != acc.mul(n.action(w))? {
            return Err(Error::VerificationFailed(
                "averaged map does not commute with the action".into(),
            ));
        }
    }
    Ok(acc)
}

/// A linear psi with I(psi) = id, when one exists; this is exactly
/// projectivity of the module.
pub fn gaschutz_certificate(m: &RightModule) -> Result<Option<Mat>> {
    let a = m.algebra();
    let ctx = a.ctx().clone();
    let duals = a.dual_basis()?.dual_vectors;
    let n = m.dim();
    // I is linear in psi: assemble the n^2 x n^2 coefficient matrix
    let mut sys = Mat::zero(ctx.clone(), n * n, n * n);
    for w in 0..a.dim() {
        let rho = m.action(w);
        let rho_dual = m.action_of(duals.row(w))?;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let add = ctx.mul(rho.at(i, k), rho_dual.at(l, j))?;
                        let cur = sys.at(i * n + j, k * n + l).clone();
                        sys.set(i * n + j, k * n + l, ctx.add(&cur, &add)?);
                    }
                }
            }
        }
    }
    let mut rhs = Mat::zero(ctx.clone(), n * n, 1);
    for i in 0..n {
        rhs.set(i * n + i, 0, ctx.one());
    }
    let sol = match sys.solve_right(&rhs) {
        Ok(s) => s,
        Err(Error::Inconsistent) => return Ok(None),
        Err(e) => return Err(e),
    };
    let psi = Mat::from_fn(ctx.clone(), n, n, |k, l| sol.at(k * n + l, 0).clone());
    if average(m, m, &psi)? != Mat::identity(ctx, n) {
        return Err(Error::VerificationFailed(
            "certificate does not average to the identity".into(),
        ));
    }
    Ok(Some(psi))
}

/// The scalar by which an endomorphism of a PIM acts on the head,
/// with the defining property im(psi - c id) inside rad verified.
pub fn identity_component(p: &AdaptedPim, psi: &Mat) -> Result<Scalar> {
    let module = &p.module;
    let a = module.algebra();
    let ctx = a.ctx().clone();
    let n = module.dim();
    if psi.rows() != n || psi.cols() != n {
        return Err(Error::DimensionMismatch(format!("endomorphism must be {n} x {n}")));
    }
    for w in 0..a.dim() {
        if module.action(w).mul(psi)? != psi.mul(module.action(w))? {
            return Err(Error::NotEndomorphism);
        }
    }
    let ad = p.basis_change.mul(psi)?.mul(&p.basis_change_inv)?;
    let c = ad.at(p.m, p.m).clone();
    let diff = ad.sub(&Mat::identity(ctx.clone(), n).scale(&c)?)?;
    for j in 0..n {
        for i in 0..p.d {
            if !ctx.is_zero(diff.at(i, j)) {
                return Err(Error::VerificationFailed(
                    "psi - c id does not kill the socle".into(),
                ));
            }
        }
        if j >= p.m {
            for i in 0..n {
                if !ctx.is_zero(diff.at(i, j)) {
                    return Err(Error::VerificationFailed(
                        "image of psi - c id leaves the radical".into(),
                    ));
                }
            }
        }
    }
    Ok(c)
}

/// Which (s,t) index pairs of the c-tensor to materialize.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverageMode {
    Full,
    /// Structured covering set plus this many seeded random pairs.
    Sampled(usize),
}

impl CoverageMode {
    /// Full below the desk-scale cutoff, sampled with 200 extras above.
    pub fn auto(dim: usize) -> CoverageMode {
        if dim <= 12 {
            CoverageMode::Full
        } else {
            CoverageMode::Sampled(200)
        }
    }
}

/// Stored values c(i,j,s,t) = entry (i,j) of I(f_{s,t}) in the adapted
/// basis, grouped per (s,t).
#[derive(Debug, Clone)]
pub struct CTensor {
    pub pim: AdaptedPim,
    /// Key (s,t), 1-based; entry (i-1, j-1) of the matrix is c(i,j,s,t).
    pub entries: BTreeMap<(usize, usize), Mat>,
    pub full: bool,
    pub seed: u64,
}

impl CTensor {
    pub fn value(&self, i: usize, j: usize, s: usize, t: usize) -> Option<&Scalar> {
        self.entries.get(&(s, t)).map(|m| m.at(i - 1, j - 1))
    }
}

pub fn c_tensor(p: &AdaptedPim, mode: CoverageMode) -> Result<CTensor> {
    c_tensor_seeded(p, mode, DEFAULT_SEED)
}

pub fn c_tensor_seeded(p: &AdaptedPim, mode: CoverageMode, seed: u64) -> Result<CTensor> {
    let module = &p.module;
    let a = module.algebra().clone();
    let ctx = a.ctx().clone();
    let n = module.dim();
    let (d, m) = (p.d, p.m);
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    let full = matches!(mode, CoverageMode::Full);
    match mode {
        CoverageMode::Full => {
            for s in 1..=n {
                for t in 1..=n {
                    pairs.insert((s, t));
                }
            }
        }
        CoverageMode::Sampled(extra) => {
            // every index family in the block relations appears here
            for s in 1..=n {
                for t in 1..=n {
                    if s <= d || t > m {
                        pairs.insert((s, t));
                    }
                }
            }
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            for _ in 0..extra {
                let s = (rng.next_u64() as usize % n) + 1;
                let t = (rng.next_u64() as usize % n) + 1;
                pairs.insert((s, t));
            }
        }
    }
    let duals = a.dual_basis()?.dual_vectors;
    let mut adapted: Vec<Mat> = Vec::with_capacity(a.dim());
    let mut adapted_dual: Vec<Mat> = Vec::with_capacity(a.dim());
    for w in 0..a.dim() {
        adapted.push(p.adapted_action(w)?);
        adapted_dual.push(p.adapted_action_of(duals.row(w))?);
    }
    let mut entries = BTreeMap::new();
    for &(s, t) in &pairs {
        // f_{s,t} picks off the b_s coordinate and sends it to b_t
        let mut f_ad = Mat::zero(ctx.clone(), n, n);
        f_ad.set(s - 1, t - 1, ctx.one());
        let f_mod = p.basis_change_inv.mul(&f_ad)?.mul(&p.basis_change)?;
        let avg = average(module, module, &f_mod)?;
        let avg_ad = p.basis_change.mul(&avg)?.mul(&p.basis_change_inv)?;
        // definition cross-check by the explicit double sum
        for i in 0..n {
            for j in 0..n {
                let mut direct = ctx.zero();
                for w in 0..a.dim() {
                    let prod =
                        ctx.mul(adapted[w].at(i, s - 1), adapted_dual[w].at(t - 1, j))?;
                    direct = ctx.add(&direct, &prod)?;
                }
                if direct != *avg_ad.at(i, j) {
                    return Err(Error::VerificationFailed(format!(
                        "c({},{},{s},{t}) disagrees with its defining sum",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        entries.insert((s, t), avg_ad);
    }
    Ok(CTensor { pim: p.clone(), entries, full, seed })
}

/// First failing quadruple of one relation family.
#[derive(Debug, Clone)]
pub struct FsCounterexample {
    pub i: usize,
    pub j: usize,
    pub s: usize,
    pub t: usize,
    pub expected: Scalar,
    pub got: Scalar,
}

#[derive(Debug, Clone)]
pub struct RelationCheck {
    pub name: String,
    pub checked: usize,
    pub skipped: usize,
    pub pass: bool,
    pub counterexample: Option<FsCounterexample>,
}

impl RelationCheck {
    fn new(name: &str) -> RelationCheck {
        RelationCheck {
            name: name.into(),
            checked: 0,
            skipped: 0,
            pass: true,
            counterexample: None,
        }
    }

    fn record(
        &mut self,
        quad: (usize, usize, usize, usize),
        expected: &Scalar,
        got: &Scalar,
    ) {
        self.checked += 1;
        if expected != got && self.counterexample.is_none() {
            self.pass = false;
            self.counterexample = Some(FsCounterexample {
                i: quad.0,
                j: quad.1,
                s: quad.2,
                t: quad.3,
                expected: expected.clone(),
                got: got.clone(),
            });
        }
    }
}

/// Outcome of checking every block relation on the stored c-values.
#[derive(Debug, Clone)]
pub struct FsReport {
    pub pim_name: String,
    pub n: usize,
    pub d: usize,
    pub m: usize,
    pub c: Scalar,
    pub soc_iso_head: bool,
    pub full_coverage: bool,
    pub seed: u64,
    pub relations: Vec<RelationCheck>,
    pub pass: bool,
}

/// Check the zero patterns, scalar blocks, shifting symmetry, corner
/// orthogonality, and the vanishing relations that apply when socle and
/// head are non-isomorphic.
pub fn verify_fs_relations(t: &CTensor) -> Result<FsReport> {
    let p = &t.pim;
    let module = &p.module;
    let a = module.algebra().clone();
    let ctx = a.ctx().clone();
    let n = module.dim();
    let (d, m) = (p.d, p.m);
    let rad_a = radical_algebra(&a)?;
    let soc_rows = socle_submodule(module, &rad_a)?;
    let (soc_mod, _) = module.submodule(&soc_rows, format!("{}-soc", module.name()))?;
    let rad_rows = radical_submodule(module, &rad_a)?;
    let (head_mod, _) = module.quotient(&rad_rows, format!("{}-head", module.name()))?;
    let soc_iso_head = iso_test(&soc_mod, &head_mod)?;
    let corner = t
        .value(1, 1, 1, 1 + m)
        .cloned()
        .ok_or_else(|| Error::VerificationFailed("corner pair (1, 1+m) not stored".into()))?;
    let zero = ctx.zero();
    let mut soc_into_soc = RelationCheck::new("socle_into_socle");
    let mut rad_into_rad = RelationCheck::new("radical_into_radical");
    let mut soc_scalar = RelationCheck::new("socle_block_is_scalar");
    let mut head_scalar = RelationCheck::new("head_block_is_scalar");
    let mut shift = RelationCheck::new("shift_symmetry");
    let mut rad_valued = RelationCheck::new("radical_valued_scalar_vanishes");
    let mut kills_soc = RelationCheck::new("socle_killing_scalar_vanishes");
    let mut corner_orth = RelationCheck::new("corner_orthogonality");
    let mut soc_valued = RelationCheck::new("socle_valued_average_zero");
    let mut head_factor = RelationCheck::new("head_factoring_average_zero");
    for (&(s, tt), mat) in &t.entries {
        let scalar_ref = mat.at(0, 0).clone();
        for i in 1..=n {
            for j in 1..=n {
                let v = mat.at(i - 1, j - 1);
                let quad = (i, j, s, tt);
                if i <= d && j > d {
                    soc_into_soc.record(quad, &zero, v);
                }
                if i <= m && j > m {
                    rad_into_rad.record(quad, &zero, v);
                }
                if i <= d && j <= d {
                    let expected = if i == j { scalar_ref.clone() } else { zero.clone() };
                    soc_scalar.record(quad, &expected, v);
                }
                if i > m && j > m {
                    let expected = if i == j { scalar_ref.clone() } else { zero.clone() };
                    head_scalar.record(quad, &expected, v);
                }
                let diag_block = (i <= d && j <= d) || (i > m && j > m);
                if tt <= m && diag_block {
                    rad_valued.record(quad, &zero, v);
                }
                if s > d && diag_block {
                    kills_soc.record(quad, &zero, v);
                }
                if s <= d && tt > m && i <= d && j <= d {
                    let expected = if s + m == tt && i == j {
                        corner.clone()
                    } else {
                        zero.clone()
                    };
                    corner_orth.record(quad, &expected, v);
                }
                if !soc_iso_head && tt <= d {
                    soc_valued.record(quad, &zero, v);
                }
                if !soc_iso_head && s > m {
                    head_factor.record(quad, &zero, v);
                }
                if s <= d && i <= d {
                    match t.value(tt, s + m, j, i + m) {
                        Some(partner) => shift.record(quad, partner, v),
                        None => shift.skipped += 1,
                    }
                }
            }
        }
    }
    let mut c_nonzero = RelationCheck::new("corner_constant_nonzero");
    c_nonzero.checked = 1;
    if ctx.is_zero(&corner) {
        c_nonzero.pass = false;
        c_nonzero.counterexample = Some(FsCounterexample {
            i: 1,
            j: 1,
            s: 1,
            t: 1 + m,
            expected: ctx.one(),
            got: corner.clone(),
        });
    }
    let relations = vec![
        soc_into_soc,
        rad_into_rad,
        soc_scalar,
        head_scalar,
        shift,
        rad_valued,
        kills_soc,
        corner_orth,
        soc_valued,
        head_factor,
        c_nonzero,
    ];
    let pass = relations.iter().all(|r| r.pass);
    Ok(FsReport {
        pim_name: module.name().to_string(),
        n,
        d,
        m,
        c: corner,
        soc_iso_head,
        full_coverage: t.full,
        seed: t.seed,
        relations,
        pass,
    })
}

#[derive(Debug, Clone)]
pub struct IdempotentChecks {
    pub square: bool,
    pub iso: bool,
    pub pairwise_rad: bool,
    pub cap_square: bool,
    pub cap_head_iso: bool,
    pub head_projection: bool,
}

/// One primitive idempotent from the lower-left block formulas, with the
/// dual-route companion built from the dual basis matrices.
#[derive(Debug, Clone)]
pub struct IdempotentReport {
    /// 1-based head coordinate this idempotent projects onto.
    pub index: usize,
    pub etilde: Vec<Scalar>,
    pub e: Vec<Scalar>,
    pub cap_etilde: Vec<Scalar>,
    pub cap_e: Vec<Scalar>,
    pub checks: IdempotentChecks,
}

/// The idempotents e_i = f(etilde_i) and E_i = f(capEtilde_i) of the
/// explicit-formula theorem, fully verified: squares, the module
/// isomorphisms, pairwise products in the radical, and the elementary
/// head projection.
pub fn make_idempotents(a: &Arc<AlgebraData>, p: &AdaptedPim) -> Result<Vec<IdempotentReport>> {
    if !Arc::ptr_eq(a, p.module.algebra()) && a.name() != p.module.algebra().name() {
        return Err(Error::AlgebraMismatch);
    }
    let ctx = a.ctx().clone();
    let n_a = a.dim();
    let (d, m) = (p.d, p.m);
    let duals = a.dual_basis()?.dual_vectors;
    let rad_a = radical_algebra(a)?;
    let lift = lift_polynomial(nilpotency_index(a, &rad_a)?)?;
    let cinv = ctx.inv(&p.normalized_c)?;
    let reg = RightModule::regular(a.clone());
    let soc_rows = socle_submodule(&p.module, &rad_a)?;
    let (soc_mod, _) =
        p.module.submodule(&soc_rows, format!("{}-soc", p.module.name()))?;
    let mut adapted: Vec<Mat> = Vec::with_capacity(n_a);
    let mut adapted_dual: Vec<Mat> = Vec::with_capacity(n_a);
    for w in 0..n_a {
        adapted.push(p.adapted_action(w)?);
        adapted_dual.push(p.adapted_action_of(duals.row(w))?);
    }
    let mut reports: Vec<IdempotentReport> = Vec::with_capacity(d);
    for i in 1..=d {
        let mut etilde = vec![ctx.zero(); n_a];
        let mut cap_etilde = vec![ctx.zero(); n_a];
        for w in 0..n_a {
            let coeff = ctx.mul(&cinv, adapted[w].at(m + i - 1, i - 1))?;
            for (acc, dv) in etilde.iter_mut().zip(duals.row(w)) {
                *acc = ctx.add(acc, &ctx.mul(&coeff, dv)?)?;
            }
            let cap_coeff = ctx.mul(&cinv, adapted_dual[w].at(m + i - 1, i - 1))?;
            let cur = cap_etilde[w].clone();
            cap_etilde[w] = ctx.add(&cur, &cap_coeff)?;
        }
        let e = lift.apply(a, &etilde)?;
        let cap_e = lift.apply(a, &cap_etilde)?;
        let square = a.mul_elements(&e, &e)? == e;
        let cap_square = a.mul_elements(&cap_e, &cap_e)? == cap_e;
        // head block of the etilde action is the elementary projection
        let head = p.adapted_action_of(&etilde)?;
        let mut head_projection = true;
        for r in 0..d {
            for c in 0..d {
                let expect = if r == i - 1 && c == i - 1 { ctx.one() } else { ctx.zero() };
                if *head.at(m + r, m + c) != expect {
                    head_projection = false;
                }
            }
        }
        let erow = Mat::from_rows(ctx.clone(), vec![e.clone()])?;
        let (mod_e, _) =
            reg.submodule(&reg.spin(&erow)?, format!("{}-e{}A", a.name(), i))?;
        let iso = iso_test(&mod_e, &p.module)?;
        let caprow = Mat::from_rows(ctx.clone(), vec![cap_e.clone()])?;
        let (mod_cap, _) =
            reg.submodule(&reg.spin(&caprow)?, format!("{}-E{}A", a.name(), i))?;
        let rad_cap = radical_submodule(&mod_cap, &rad_a)?;
        let (head_cap, _) =
            mod_cap.quotient(&rad_cap, format!("{}-E{}A-head", a.name(), i))?;
        let cap_head_iso = iso_test(&head_cap, &soc_mod)?;
        let checks = IdempotentChecks {
            square,
            iso,
            pairwise_rad: true,
            cap_square,
            cap_head_iso,
            head_projection,
        };
        if !(square && cap_square && head_projection && iso && cap_head_iso) {
            return Err(Error::VerificationFailed(format!(
                "idempotent {i} of {} fails verification: square {square}, iso {iso}, \
                 cap square {cap_square}, cap head iso {cap_head_iso}, \
                 head projection {head_projection}",
                p.module.name()
            )));
        }
        reports.push(IdempotentReport { index: i, etilde, e, cap_etilde, cap_e, checks });
    }
    for i in 0..d {
        for j in 0..d {
            if i == j {
                continue;
            }
            let prod = a.mul_elements(&reports[i].e, &reports[j].e)?;
            let inside = if rad_a.rows() == 0 {
                prod.iter().all(|s| ctx.is_zero(s))
            } else {
                let row = Mat::from_rows(ctx.clone(), vec![prod])?;
                rad_a.row_space_contains(&row)?
            };
            if !inside {
                return Err(Error::VerificationFailed(format!(
                    "product of idempotents {} and {} is not in the radical",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::test_algebras::{c2, nakayama2};
    use crate::exact::FieldCtx;
    use crate::pimkit::{adapt_basis, extract_pims};
    use crate::repmod::test_modules::{perm_group_algebra, s3_perms};
    use crate::repmod::SimpleCatalog;

    fn q() -> Arc<FieldCtx> {
        Arc::new(FieldCtx::rationals())
    }

    fn f2() -> Arc<FieldCtx> {
        Arc::new(FieldCtx::prime_field(2).unwrap())
    }

    fn rat(n: i64, d: i64) -> Scalar {
        let ctx = FieldCtx::rationals();
        ctx.div(&ctx.from_int(n), &ctx.from_int(d)).unwrap()
    }

    fn one_dim_module(a: &Arc<AlgebraData>, name: &str, signs: &[i64]) -> RightModule {
        let ctx = a.ctx().clone();
        let action = signs
            .iter()
            .map(|&s| Mat::from_rows(ctx.clone(), vec![vec![ctx.from_int(s)]]).unwrap())
            .collect();
        RightModule::new(a.clone(), name, action).unwrap()
    }

    fn f2c2_adapted() -> (Arc<AlgebraData>, AdaptedPim) {
        let a = Arc::new(c2(f2()));
        let pims = extract_pims(&a).unwrap();
        let ap = adapt_basis(&a, &pims[0].module).unwrap();
        (a, ap)
    }

    fn qc2_trivial_adapted() -> (Arc<AlgebraData>, AdaptedPim) {
        let a = Arc::new(c2(q()));
        let pims = extract_pims(&a).unwrap();
        let p = pims
            .iter()
            .find(|p| p.module.action(1).is_identity())
            .expect("trivial summand");
        let ap = adapt_basis(&a, &p.module).unwrap();
        (a, ap)
    }

    fn nakayama2_p1() -> (Arc<AlgebraData>, AdaptedPim) {
        let a = Arc::new(nakayama2(q()));
        let ctx = a.ctx().clone();
        let pims = extract_pims(&a).unwrap();
        let p = pims
            .iter()
            .find(|p| !ctx.is_zero(p.embedding.at(0, 0)))
            .expect("PIM at e1");
        let ap = adapt_basis(&a, &p.module).unwrap();
        (a, ap)
    }

    /// 2x2 matrix algebra over the rationals with the trace form.
    fn m2q() -> AlgebraData {
        let ctx = q();
        let one = ctx.one();
        AlgebraData::new(
            ctx.clone(),
            "M2Q",
            vec!["E11".into(), "E12".into(), "E21".into(), "E22".into()],
            vec![
                (0, 0, 0, one.clone()),
                (0, 1, 1, one.clone()),
                (1, 2, 0, one.clone()),
                (1, 3, 1, one.clone()),
                (2, 0, 2, one.clone()),
                (2, 1, 3, one.clone()),
                (3, 2, 2, one.clone()),
                (3, 3, 3, one.clone()),
            ],
            vec![ctx.one(), ctx.zero(), ctx.zero(), ctx.one()],
            vec![ctx.one(), ctx.zero(), ctx.zero(), ctx.one()],
        )
        .unwrap()
    }

    #[test]
    fn averaging_scales_identity_on_group_algebra() {
        let a = Arc::new(c2(q()));
        let ctx = a.ctx().clone();
        let reg = RightModule::regular(a.clone());
        let two_id = Mat::identity(ctx.clone(), 2).scale(&ctx.from_int(2)).unwrap();
        assert_eq!(average(&reg, &reg, &Mat::identity(ctx.clone(), 2)).unwrap(), two_id);
        for signs in [[1, 1], [1, -1]] {
            let m = one_dim_module(&a, "one-dim", &signs);
            let avg = average(&m, &m, &Mat::identity(ctx.clone(), 1)).unwrap();
            assert_eq!(*avg.at(0, 0), ctx.from_int(2));
        }
        let zero = Mat::zero(ctx.clone(), 2, 2);
        assert_eq!(average(&reg, &reg, &zero).unwrap(), zero);
    }

    #[test]
    fn averaging_is_natural() {
        let a = Arc::new(c2(q()));
        let ctx = a.ctx().clone();
        let reg = RightModule::regular(a.clone());
        let triv = one_dim_module(&a, "triv", &[1, 1]);
        // hom triv -> reg, 1 maps to 1 + g
        let pi = Mat::from_rows(ctx.clone(), vec![vec![ctx.one(), ctx.one()]]).unwrap();
        // hom reg -> triv, augmentation
        let psi =
            Mat::from_rows(ctx.clone(), vec![vec![ctx.one()], vec![ctx.one()]]).unwrap();
        let f = Mat::from_rows(
            ctx.clone(),
            vec![
                vec![ctx.from_int(1), ctx.from_int(2)],
                vec![ctx.from_int(3), ctx.from_int(4)],
            ],
        )
        .unwrap();
        let base = average(&reg, &reg, &f).unwrap();
        let pre = average(&triv, &reg, &pi.mul(&f).unwrap()).unwrap();
        assert_eq!(pre, pi.mul(&base).unwrap());
        let post = average(&reg, &triv, &f.mul(&psi).unwrap()).unwrap();
        assert_eq!(post, base.mul(&psi).unwrap());
    }

    #[test]
    fn averaging_matches_hand_computation_f2c2() {
        let (_, ap) = f2c2_adapted();
        let ctx = ap.module.ctx().clone();
        let mut f_ad = Mat::zero(ctx.clone(), 2, 2);
        f_ad.set(0, 1, ctx.one());
        let f_mod = ap.basis_change_inv.mul(&f_ad).unwrap().mul(&ap.basis_change).unwrap();
        let avg = average(&ap.module, &ap.module, &f_mod).unwrap();
        let avg_ad = ap.basis_change.mul(&avg).unwrap().mul(&ap.basis_change_inv).unwrap();
        let expect = Mat::from_rows(
            ctx.clone(),
            vec![vec![ctx.one(), ctx.zero()], vec![ctx.one(), ctx.one()]],
        )
        .unwrap();
        assert_eq!(avg_ad, expect);
    }

    #[test]
    fn averaging_ignores_algebra_basis() {
        let a = Arc::new(nakayama2(q()));
        let ctx = a.ctx().clone();
        let reg = RightModule::regular(a.clone());
        let rows: Vec<Vec<Scalar>> = [
            [1, 1, 0, 0],
            [0, 1, 0, 0],
            [0, 0, 1, 1],
            [1, 0, 0, 1],
        ]
        .iter()
        .map(|r| r.iter().map(|&x| ctx.from_int(x)).collect())
        .collect();
        let p = Mat::from_rows(ctx.clone(), rows).unwrap();
        assert_eq!(p.rank().unwrap(), 4);
        let b = Arc::new(a.change_basis(&p).unwrap());
        let action: Vec<Mat> =
            (0..4).map(|i| reg.action_of(p.row(i)).unwrap()).collect();
        let reg_b = RightModule::new(b, "reg-b", action).unwrap();
        let f = Mat::from_fn(ctx.clone(), 4, 4, |i, j| {
            ctx.from_int((2 * i + 3 * j) as i64 % 5)
        });
        assert_eq!(
            average(&reg, &reg, &f).unwrap(),
            average(&reg_b, &reg_b, &f).unwrap()
        );
    }

    #[test]
    fn gaschutz_certificates() {
        let a = Arc::new(c2(q()));
        let ctx = a.ctx().clone();
        let reg = RightModule::regular(a.clone());
        let half_id = Mat::identity(ctx.clone(), 2).scale(&rat(1, 2)).unwrap();
        assert_eq!(average(&reg, &reg, &half_id).unwrap(), Mat::identity(ctx.clone(), 2));
        assert!(gaschutz_certificate(&reg).unwrap().is_some());
        let triv_q = one_dim_module(&a, "triv", &[1, 1]);
        assert!(gaschutz_certificate(&triv_q).unwrap().is_some());

        let a2 = Arc::new(c2(f2()));
        let ctx2 = a2.ctx().clone();
        let reg2 = RightModule::regular(a2.clone());
        // psi fixing 1 and killing g averages to the identity
        let mut psi = Mat::zero(ctx2.clone(), 2, 2);
        psi.set(0, 0, ctx2.one());
        assert_eq!(average(&reg2, &reg2, &psi).unwrap(), Mat::identity(ctx2.clone(), 2));
        assert!(gaschutz_certificate(&reg2).unwrap().is_some());
        let triv2 = one_dim_module(&a2, "triv", &[1, 1]);
        assert!(gaschutz_certificate(&triv2).unwrap().is_none());
    }

    #[test]
    fn identity_component_reads_head_scalar() {
        let (_, ap) = f2c2_adapted();
        let ctx = ap.module.ctx().clone();
        let id = Mat::identity(ctx.clone(), 2);
        assert!(ctx.is_one(&identity_component(&ap, &id).unwrap()));
        let zero = Mat::zero(ctx.clone(), 2, 2);
        assert!(ctx.is_zero(&identity_component(&ap, &zero).unwrap()));
        // the averaged map I(f_{1,2}) has head scalar 1
        let mut psi_ad = Mat::zero(ctx.clone(), 2, 2);
        psi_ad.set(0, 0, ctx.one());
        psi_ad.set(1, 0, ctx.one());
        psi_ad.set(1, 1, ctx.one());
        let psi =
            ap.basis_change_inv.mul(&psi_ad).unwrap().mul(&ap.basis_change).unwrap();
        assert!(ctx.is_one(&identity_component(&ap, &psi).unwrap()));
        // f_{1,2} itself is not a homomorphism
        let mut f_ad = Mat::zero(ctx.clone(), 2, 2);
        f_ad.set(0, 1, ctx.one());
        let f_mod = ap.basis_change_inv.mul(&f_ad).unwrap().mul(&ap.basis_change).unwrap();
        assert_eq!(identity_component(&ap, &f_mod), Err(Error::NotEndomorphism));
    }

    #[test]
    fn c_tensor_corpus_values() {
        let (_, ap) = f2c2_adapted();
        let ct = c_tensor(&ap, CoverageMode::Full).unwrap();
        assert_eq!(ct.entries.len(), 4);
        assert!(ap.module.ctx().is_one(ct.value(1, 1, 1, 2).unwrap()));
        let sampled = c_tensor(&ap, CoverageMode::Sampled(0)).unwrap();
        for (key, mat) in &sampled.entries {
            assert_eq!(ct.entries[key], *mat);
        }
        assert!(sampled.entries.contains_key(&(1, 2)));

        let (_, triv) = qc2_trivial_adapted();
        let ct2 = c_tensor(&triv, CoverageMode::Full).unwrap();
        assert_eq!(*ct2.value(1, 1, 1, 1).unwrap(), rat(2, 1));
    }

    #[test]
    fn fs_relations_hold_on_corpus() {
        let (_, ap) = f2c2_adapted();
        let rep = verify_fs_relations(&c_tensor(&ap, CoverageMode::Full).unwrap()).unwrap();
        assert!(rep.pass);
        assert!(rep.soc_iso_head);
        assert!(ap.module.ctx().is_one(&rep.c));
        for r in &rep.relations {
            if r.name.ends_with("average_zero") {
                assert_eq!(r.checked, 0);
            }
        }

        let (a, p1) = nakayama2_p1();
        let rep = verify_fs_relations(&c_tensor(&p1, CoverageMode::Full).unwrap()).unwrap();
        assert!(rep.pass);
        assert!(!rep.soc_iso_head);
        assert!(a.ctx().is_one(&rep.c));
        for r in &rep.relations {
            if r.name.ends_with("average_zero") {
                assert!(r.checked > 0);
            }
        }

        let (_, triv) = qc2_trivial_adapted();
        let rep = verify_fs_relations(&c_tensor(&triv, CoverageMode::Full).unwrap()).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.c, rat(2, 1));
    }

    #[test]
    fn fs_relations_semisimple_standard_pim() {
        let a = Arc::new(perm_group_algebra(q(), "QS3", s3_perms()));
        let pims = extract_pims(&a).unwrap();
        let std_pim = pims.iter().find(|p| p.module.dim() == 2).unwrap();
        let ap = adapt_basis(&a, &std_pim.module).unwrap();
        assert_eq!((ap.d, ap.m), (2, 0));
        let rep = verify_fs_relations(&c_tensor(&ap, CoverageMode::Full).unwrap()).unwrap();
        assert!(rep.pass);
        assert!(rep.soc_iso_head);
        // Schur constant of the two-dimensional simple of S3
        assert_eq!(rep.c, rat(3, 1));
        assert_eq!(ap.normalized_c, rat(3, 1));
    }

    #[test]
    fn theorem_idempotents_qc2_trivial() {
        let (a, ap) = qc2_trivial_adapted();
        let reports = make_idempotents(&a, &ap).unwrap();
        assert_eq!(reports.len(), 1);
        let r = &reports[0];
        assert_eq!(r.etilde, vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(r.e, r.etilde);
        assert!(r.checks.square && r.checks.iso && r.checks.pairwise_rad);
    }

    #[test]
    fn theorem_idempotents_f2c2() {
        let (a, ap) = f2c2_adapted();
        let ctx = a.ctx().clone();
        let reports = make_idempotents(&a, &ap).unwrap();
        assert_eq!(reports.len(), 1);
        let r = &reports[0];
        assert_eq!(r.etilde, vec![ctx.zero(), ctx.one()]);
        assert_eq!(r.e, vec![ctx.one(), ctx.zero()]);
    }

    #[test]
    fn theorem_idempotents_nakayama2() {
        let (a, ap) = nakayama2_p1();
        let ctx = a.ctx().clone();
        let reports = make_idempotents(&a, &ap).unwrap();
        assert_eq!(reports.len(), 1);
        let r = &reports[0];
        let e1 = vec![ctx.one(), ctx.zero(), ctx.zero(), ctx.zero()];
        let e2 = vec![ctx.zero(), ctx.one(), ctx.zero(), ctx.zero()];
        assert_eq!(r.etilde, e1);
        assert_eq!(r.e, e1);
        assert_eq!(r.cap_etilde, e2);
        assert_eq!(r.cap_e, e2);
    }

    #[test]
    fn theorem_idempotents_matrix_algebra() {
        let a = Arc::new(m2q());
        let ctx = a.ctx().clone();
        let pims = extract_pims(&a).unwrap();
        assert_eq!(pims.len(), 1);
        let ap = adapt_basis(&a, &pims[0].module).unwrap();
        assert_eq!((ap.d, ap.m), (2, 0));
        assert!(ctx.is_one(&ap.normalized_c));
        let reports = make_idempotents(&a, &ap).unwrap();
        assert_eq!(reports.len(), 2);
        let diag: Vec<Vec<Scalar>> = reports.iter().map(|r| r.etilde.clone()).collect();
        let e11 = vec![ctx.one(), ctx.zero(), ctx.zero(), ctx.zero()];
        let e22 = vec![ctx.zero(), ctx.zero(), ctx.zero(), ctx.one()];
        assert!(diag.contains(&e11) && diag.contains(&e22));
        let rep = verify_fs_relations(&c_tensor(&ap, CoverageMode::Full).unwrap()).unwrap();
        assert!(rep.pass);
        assert!(ctx.is_one(&rep.c));
    }

    #[test]
    fn mismatched_simples_average_to_zero() {
        for a in [
            Arc::new(nakayama2(q())),
            Arc::new(perm_group_algebra(q(), "QS3", s3_perms())),
        ] {
            let ctx = a.ctx().clone();
            let catalog = SimpleCatalog::build(&a).unwrap();
            let rad_a = catalog.radical().unwrap();
            for pim in extract_pims(&a).unwrap() {
                let module = &pim.module;
                let soc_rows = socle_submodule(module, &rad_a).unwrap();
                let (soc_mod, _) = module.submodule(&soc_rows, "soc").unwrap();
                let rad_rows = radical_submodule(module, &rad_a).unwrap();
                let (head_mod, _) = module.quotient(&rad_rows, "head").unwrap();
                for s in catalog.simples() {
                    let into = Mat::from_fn(ctx.clone(), s.dim(), module.dim(), |i, j| {
                        if i == 0 && j == 0 { ctx.one() } else { ctx.zero() }
                    });
                    let avg = average(s, module, &into).unwrap();
                    if !iso_test(s, &soc_mod).unwrap() {
                        assert!(avg.is_zero());
                    }
                    let onto = Mat::from_fn(ctx.clone(), module.dim(), s.dim(), |i, j| {
                        if i == 0 && j == 0 { ctx.one() } else { ctx.zero() }
                    });
                    let avg = average(module, s, &onto).unwrap();
                    if !iso_test(s, &head_mod).unwrap() {
                        assert!(avg.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn idempotent_annihilates_other_simples() {
        let a = Arc::new(nakayama2(q()));
        let catalog = SimpleCatalog::build(&a).unwrap();
        let rad_a = catalog.radical().unwrap();
        for pim in extract_pims(&a).unwrap() {
            let ap = adapt_basis(&a, &pim.module).unwrap();
            let reports = make_idempotents(&a, &ap).unwrap();
            let rad_rows = radical_submodule(&pim.module, &rad_a).unwrap();
            let (head_mod, _) = pim.module.quotient(&rad_rows, "head").unwrap();
            for s in catalog.simples() {
                if iso_test(s, &head_mod).unwrap() {
                    continue;
                }
                for r in &reports {
                    assert!(s.action_of(&r.e).unwrap().is_zero());
                }
            }
        }
    }
}
