//! The six bundled example algebras: the C2 group algebra over Q and
//! F2, the rational group algebra of S3, a two-vertex quiver algebra
//! whose Nakayama automorphism swaps the arrows, and two Hecke algebras
//! at roots of unity.

use std::sync::Arc;

use crate::algcore::AlgebraData;
use crate::error::{Error, Result};
use crate::exact::FieldCtx;
use crate::heckegen::{build_coxeter_named, build_hecke, HeckeSpec};

/// Names accepted by `bundled`, in canonical order.
pub const BUNDLED: [&str; 6] =
    ["qc2", "f2c2", "qs3", "nakayama2", "hecke-A1-i", "hecke-A2-zeta3"];

fn c2_algebra(ctx: Arc<FieldCtx>, name: &str) -> Result<Arc<AlgebraData>> {
    let one = ctx.one();
    Ok(Arc::new(AlgebraData::new(
        ctx.clone(),
        name,
        vec!["1".into(), "g".into()],
        vec![
            (0, 0, 0, one.clone()),
            (0, 1, 1, one.clone()),
            (1, 0, 1, one.clone()),
            (1, 1, 0, one),
        ],
        vec![ctx.one(), ctx.zero()],
        vec![ctx.one(), ctx.zero()],
    )?))
}

/// Group algebra from a list of permutations closed under composition,
/// with the trace picking out the identity coefficient.
fn perm_algebra(
    ctx: Arc<FieldCtx>,
    name: &str,
    perms: &[Vec<usize>],
) -> Result<Arc<AlgebraData>> {
    let n = perms.len();
    let compose =
        |p: &[usize], q: &[usize]| -> Vec<usize> { p.iter().map(|&i| q[i]).collect() };
    let identity: Vec<usize> = (0..perms[0].len()).collect();
    let find = |t: &[usize]| -> Result<usize> {
        perms
            .iter()
            .position(|u| u.as_slice() == t)
            .ok_or_else(|| Error::InvalidInput(format!("{name} is not closed")))
    };
    let id = find(&identity)?;
    let mut structure = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let k = find(&compose(&perms[i], &perms[j]))?;
            structure.push((i, j, k, ctx.one()));
        }
    }
    let labels = (0..n).map(|i| format!("g{i}")).collect();
    let mut unit = vec![ctx.zero(); n];
    unit[id] = ctx.one();
    let tau = unit.clone();
    Ok(Arc::new(AlgebraData::new(ctx, name, labels, structure, unit, tau)?))
}

fn qs3_algebra() -> Result<Arc<AlgebraData>> {
    let perms: Vec<Vec<usize>> = vec![
        vec![0, 1, 2],
        vec![1, 2, 0],
        vec![2, 0, 1],
        vec![1, 0, 2],
        vec![0, 2, 1],
        vec![2, 1, 0],
    ];
    perm_algebra(Arc::new(FieldCtx::rationals()), "qs3", &perms)
}

/// Two vertices, arrows a: 1 -> 2 and b: 2 -> 1, paths of length two
/// zero; tau is supported on the arrows, so the form is Frobenius but
/// not symmetric.
fn nakayama2_algebra() -> Result<Arc<AlgebraData>> {
    let ctx = Arc::new(FieldCtx::rationals());
    let one = ctx.one();
    Ok(Arc::new(AlgebraData::new(
        ctx.clone(),
        "nakayama2",
        vec!["e1".into(), "e2".into(), "a".into(), "b".into()],
        vec![
            (0, 0, 0, one.clone()),
            (1, 1, 1, one.clone()),
            (0, 2, 2, one.clone()),
            (2, 1, 2, one.clone()),
            (1, 3, 3, one.clone()),
            (3, 0, 3, one),
        ],
        vec![ctx.one(), ctx.one(), ctx.zero(), ctx.zero()],
        vec![ctx.zero(), ctx.zero(), ctx.one(), ctx.one()],
    )?))
}

/// Build one bundled algebra by name.
pub fn bundled(name: &str) -> Result<Arc<AlgebraData>> {
    match name {
        "qc2" => c2_algebra(Arc::new(FieldCtx::rationals()), "qc2"),
        "f2c2" => c2_algebra(Arc::new(FieldCtx::prime_field(2)?), "f2c2"),
        "qs3" => qs3_algebra(),
        "nakayama2" => nakayama2_algebra(),
        "hecke-A1-i" => {
            let g = build_coxeter_named("A1")?;
            build_hecke(&g, &HeckeSpec::root_of_unity("hecke-A1-i", 4))
        }
        "hecke-A2-zeta3" => {
            let g = build_coxeter_named("A2")?;
            build_hecke(&g, &HeckeSpec::root_of_unity("hecke-A2-zeta3", 3))
        }
        _ => Err(Error::InvalidInput(format!("unknown bundled example: {name}"))),
    }
}

/// All six bundled algebras in canonical order.
pub fn bundled_all() -> Result<Vec<Arc<AlgebraData>>> {
    BUNDLED.iter().map(|name| bundled(name)).collect()
}
