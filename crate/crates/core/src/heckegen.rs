//! Finite Coxeter groups in ShortLex normal form and the one-parameter
//! Iwahori-Hecke algebras they carry, with v specialized to a root of
//! unity, a finite-field scalar, or 1.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algcore::AlgebraData;
use crate::decmap::reduce_algebra;
use crate::error::{Error, Result};
use crate::exact::{FieldCtx, PrimeSpec, Scalar};
use crate::matlin::Mat;

/// Closure abort threshold: past this many elements the matrix is treated
/// as presenting an infinite group.
const ENUMERATION_CAP: usize = 10000;

/// Largest group order the catalog admits; downstream verifications are
/// quartic in the dimension.
pub const MAX_GROUP_ORDER: usize = 1152;

/// A finite Coxeter group with every element stored as its ShortLex
/// normal form. Index 0 is the identity; indices are sorted ShortLex.
#[derive(Debug, Clone)]
pub struct CoxeterGroup {
    name: String,
    matrix: Vec<Vec<u32>>,
    words: Vec<Vec<usize>>,
    /// right_by_gen[w][s] = index of w s.
    right_by_gen: Vec<Vec<usize>>,
}

impl CoxeterGroup {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn order(&self) -> usize {
        self.words.len()
    }

    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.matrix
    }

    /// ShortLex normal form of element w, generators 0-based.
    pub fn word(&self, w: usize) -> &[usize] {
        &self.words[w]
    }

    pub fn length(&self, w: usize) -> usize {
        self.words[w].len()
    }

    /// Index of w s for a generator s.
    pub fn right_gen(&self, w: usize, s: usize) -> usize {
        self.right_by_gen[w][s]
    }

    /// Index of the product w w'.
    pub fn mult(&self, w: usize, wp: usize) -> usize {
        let mut x = w;
        for &s in &self.words[wp] {
            x = self.right_by_gen[x][s];
        }
        x
    }

    /// Index of the inverse: read the normal form backwards.
    pub fn inverse(&self, w: usize) -> usize {
        let mut x = 0;
        for &s in self.words[w].iter().rev() {
            x = self.right_by_gen[x][s];
        }
        x
    }

    /// Basis label for element w: "Te" for the identity, otherwise the
    /// 1-based generator string.
    pub fn label(&self, w: usize) -> String {
        if self.words[w].is_empty() {
            return "Te".to_string();
        }
        let sep = if self.rank() > 9 { "_" } else { "" };
        let digits: Vec<String> =
            self.words[w].iter().map(|s| (s + 1).to_string()).collect();
        format!("T{}", digits.join(sep))
    }
}

fn check_coxeter_matrix(matrix: &[Vec<u32>]) -> Result<()> {
    let n = matrix.len();
    if n == 0 {
        return Err(Error::InvalidMatrix("matrix is empty".into()));
    }
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidMatrix(format!(
                "row {i} has length {} in a rank-{n} matrix",
                row.len()
            )));
        }
        if row[i] != 1 {
            return Err(Error::InvalidMatrix(format!(
                "diagonal entry m[{i}][{i}] = {} must be 1",
                row[i]
            )));
        }
        for j in 0..n {
            if matrix[i][j] != matrix[j][i] {
                return Err(Error::InvalidMatrix(format!(
                    "m[{i}][{j}] = {} but m[{j}][{i}] = {}",
                    matrix[i][j], matrix[j][i]
                )));
            }
            if i != j && matrix[i][j] < 2 {
                return Err(Error::InvalidMatrix(format!(
                    "off-diagonal entry m[{i}][{j}] = {} must be at least 2",
                    matrix[i][j]
                )));
            }
        }
    }
    Ok(())
}

/// Ground field of the reflection representation: rational unless some
/// bond needs an irrational cosine.
fn reflection_ctx(matrix: &[Vec<u32>]) -> Result<(Arc<FieldCtx>, u32)> {
    let mut e: u32 = 1;
    for (i, row) in matrix.iter().enumerate() {
        for (j, &m) in row.iter().enumerate() {
            if i < j && m >= 4 {
                e = num_integer::lcm(e, 2 * m);
            }
        }
    }
    let ctx = if e == 1 { FieldCtx::rationals() } else { FieldCtx::cyclotomic(e)? };
    Ok((Arc::new(ctx), e))
}

/// 2 cos(pi/m) in the reflection field.
fn two_cos(ctx: &Arc<FieldCtx>, e: u32, m: u32) -> Result<Scalar> {
    match m {
        2 => Ok(ctx.zero()),
        3 => Ok(ctx.one()),
        _ => {
            // zeta_{2m} + zeta_{2m}^{-1} with zeta_{2m} = zeta_e^{e/2m}
            let g = ctx.generator()?;
            let k = (e / (2 * m)) as u64;
            ctx.add(&ctx.pow(&g, k)?, &ctx.pow(&g, (e as u64) - k)?)
        }
    }
}

/// Row w of the reflection matrix of generator s sends the simple root
/// a_w to a_w + 2 cos(pi/m_sw) a_s, and a_s to -a_s.
fn reflection_matrices(matrix: &[Vec<u32>]) -> Result<Vec<Mat>> {
    let (ctx, e) = reflection_ctx(matrix)?;
    let n = matrix.len();
    let mut gens = Vec::with_capacity(n);
    for s in 0..n {
        let mut rows = Vec::with_capacity(n);
        for w in 0..n {
            let mut row = vec![ctx.zero(); n];
            if w == s {
                row[s] = ctx.neg(&ctx.one())?;
            } else {
                row[w] = ctx.one();
                row[s] = two_cos(&ctx, e, matrix[s][w])?;
            }
            rows.push(row);
        }
        gens.push(Mat::from_rows(ctx.clone(), rows)?);
    }
    Ok(gens)
}

fn matrix_key(m: &Mat) -> String {
    let ctx = m.ctx();
    let mut parts = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            parts.push(ctx.scalar_to_string(m.at(i, j)));
        }
    }
    parts.join(";")
}

/// Enumerate the group presented by a Coxeter matrix. Elements are closed
/// under right multiplication in ShortLex order; the reflection
/// representation is faithful, so matrix equality decides element
/// equality and an infinite group overruns the enumeration cap.
pub fn build_coxeter(matrix: &[Vec<u32>], name: &str) -> Result<CoxeterGroup> {
    check_coxeter_matrix(matrix)?;
    let gens = reflection_matrices(matrix)?;
    let n = matrix.len();
    let identity = Mat::identity(gens[0].ctx().clone(), n);

    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut mats: Vec<Mat> = vec![identity];
    let mut index: HashMap<String, usize> = HashMap::new();
    index.insert(matrix_key(&mats[0]), 0);
    let mut right: Vec<Vec<usize>> = Vec::new();

    let mut cursor = 0;
    while cursor < words.len() {
        let mut row = Vec::with_capacity(n);
        for (s, gen) in gens.iter().enumerate() {
            let m = mats[cursor].mul(gen)?;
            let key = matrix_key(&m);
            let idx = match index.get(&key) {
                Some(&i) => i,
                None => {
                    if words.len() >= ENUMERATION_CAP {
                        return Err(Error::GroupTooLarge(ENUMERATION_CAP));
                    }
                    let mut w = words[cursor].clone();
                    w.push(s);
                    words.push(w);
                    mats.push(m);
                    let i = words.len() - 1;
                    index.insert(key, i);
                    i
                }
            };
            row.push(idx);
        }
        right.push(row);
        cursor += 1;
    }

    if words.len() > MAX_GROUP_ORDER {
        return Err(Error::GroupTooLarge(MAX_GROUP_ORDER));
    }
    // parity forces L(ws) != L(w); BFS keeps the gap at one
    for (w, row) in right.iter().enumerate() {
        for &ws in row {
            let gap = words[w].len().abs_diff(words[ws].len());
            if gap != 1 {
                return Err(Error::VerificationFailed(format!(
                    "length gap {gap} between element {w} and a neighbor"
                )));
            }
        }
    }

    Ok(CoxeterGroup { name: name.to_string(), matrix: matrix.to_vec(), words, right_by_gen: right })
}

fn chain_matrix(bonds: &[u32]) -> Vec<Vec<u32>> {
    let n = bonds.len() + 1;
    let mut m = vec![vec![2; n]; n];
    for i in 0..n {
        m[i][i] = 1;
    }
    for (i, &b) in bonds.iter().enumerate() {
        m[i][i + 1] = b;
        m[i + 1][i] = b;
    }
    m
}

/// Coxeter matrix for a catalog name: A1..A4, B2, B3, D4, H3, I2:m with
/// m between 2 and 12.
pub fn catalog_matrix(name: &str) -> Result<Vec<Vec<u32>>> {
    if let Some(rest) = name.strip_prefix("I2:") {
        let m: u32 = rest
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad dihedral bond: {name}")))?;
        if !(2..=12).contains(&m) {
            return Err(Error::InvalidInput(format!(
                "dihedral bond {m} outside the catalog range 2..=12"
            )));
        }
        return Ok(vec![vec![1, m], vec![m, 1]]);
    }
    match name {
        "A1" => Ok(vec![vec![1]]),
        "A2" => Ok(chain_matrix(&[3])),
        "A3" => Ok(chain_matrix(&[3, 3])),
        "A4" => Ok(chain_matrix(&[3, 3, 3])),
        "B2" => Ok(chain_matrix(&[4])),
        "B3" => Ok(chain_matrix(&[4, 3])),
        "H3" => Ok(chain_matrix(&[5, 3])),
        "D4" => Ok(vec![
            vec![1, 2, 2, 3],
            vec![2, 1, 2, 3],
            vec![2, 2, 1, 3],
            vec![3, 3, 3, 1],
        ]),
        _ => Err(Error::InvalidInput(format!("unknown Coxeter type: {name}"))),
    }
}

fn catalog_order(name: &str) -> Option<usize> {
    if let Some(rest) = name.strip_prefix("I2:") {
        return rest.parse::<usize>().ok().map(|m| 2 * m);
    }
    match name {
        "A1" => Some(2),
        "A2" => Some(6),
        "A3" => Some(24),
        "A4" => Some(120),
        "B2" => Some(8),
        "B3" => Some(48),
        "H3" => Some(120),
        "D4" => Some(192),
        _ => None,
    }
}

/// Build a catalog group and cross-check the classical order.
pub fn build_coxeter_named(name: &str) -> Result<CoxeterGroup> {
    let matrix = catalog_matrix(name)?;
    let g = build_coxeter(&matrix, name)?;
    if let Some(expected) = catalog_order(name) {
        if g.order() != expected {
            return Err(Error::VerificationFailed(format!(
                "{name} enumerated {} elements, expected {expected}",
                g.order()
            )));
        }
    }
    Ok(g)
}

/// The parameter v together with its ground field.
#[derive(Debug, Clone)]
pub enum HeckeParam {
    /// v = zeta_e over Q(zeta_e).
    RootOfUnity(u32),
    /// v = a nonzero scalar of a finite field.
    Finite { ctx: Arc<FieldCtx>, v: Scalar },
    /// v = 1 over Q.
    One,
}

/// Which algebra to build: a descriptor for reports plus the parameter.
#[derive(Debug, Clone)]
pub struct HeckeSpec {
    pub name: String,
    pub param: HeckeParam,
}

impl HeckeSpec {
    pub fn root_of_unity(name: impl Into<String>, e: u32) -> HeckeSpec {
        HeckeSpec { name: name.into(), param: HeckeParam::RootOfUnity(e) }
    }

    pub fn one(name: impl Into<String>) -> HeckeSpec {
        HeckeSpec { name: name.into(), param: HeckeParam::One }
    }

    pub fn finite(name: impl Into<String>, ctx: Arc<FieldCtx>, v: Scalar) -> HeckeSpec {
        HeckeSpec { name: name.into(), param: HeckeParam::Finite { ctx, v } }
    }
}

fn realize_param(param: &HeckeParam) -> Result<(Arc<FieldCtx>, Scalar)> {
    match param {
        HeckeParam::RootOfUnity(e) => {
            if *e == 0 {
                return Err(Error::InvalidInput("root order must be positive".into()));
            }
            let ctx = Arc::new(FieldCtx::cyclotomic(*e)?);
            let v = ctx.generator()?;
            Ok((ctx, v))
        }
        HeckeParam::Finite { ctx, v } => {
            if ctx.characteristic() == 0 {
                return Err(Error::InvalidInput(
                    "finite parameter requires a finite field".into(),
                ));
            }
            ctx.check(v)?;
            if ctx.is_zero(v) {
                return Err(Error::InvalidInput("parameter v must be invertible".into()));
            }
            Ok((ctx.clone(), v.clone()))
        }
        HeckeParam::One => {
            let ctx = Arc::new(FieldCtx::rationals());
            let one = ctx.one();
            Ok((ctx, one))
        }
    }
}

/// Coordinates of x T_s from the coordinates of x: T_w T_s = T_{ws} when
/// the length goes up, T_{ws} + (v - v^{-1}) T_w when it goes down.
fn apply_gen(
    ctx: &Arc<FieldCtx>,
    g: &CoxeterGroup,
    x: &[Scalar],
    s: usize,
    vmv: &Scalar,
) -> Result<Vec<Scalar>> {
    let mut y = vec![ctx.zero(); x.len()];
    for (w, c) in x.iter().enumerate() {
        if ctx.is_zero(c) {
            continue;
        }
        let ws = g.right_gen(w, s);
        y[ws] = ctx.add(&y[ws], c)?;
        if g.length(ws) < g.length(w) {
            y[w] = ctx.add(&y[w], &ctx.mul(c, vmv)?)?;
        }
    }
    Ok(y)
}

/// Build the Hecke algebra on the T-basis with trace T_e -> 1. The
/// returned algebra is verified symmetric Frobenius with dual basis
/// T_w^dual = T_{w^{-1}} exhaustively.
pub fn build_hecke(g: &CoxeterGroup, spec: &HeckeSpec) -> Result<Arc<AlgebraData>> {
    let (ctx, v) = realize_param(&spec.param)?;
    let n = g.order();
    let vmv = ctx.sub(&v, &ctx.inv(&v)?)?;

    let mut structure = Vec::new();
    for j in 0..n {
        for i in 0..n {
            let mut x = vec![ctx.zero(); n];
            x[i] = ctx.one();
            for &s in g.word(j) {
                x = apply_gen(&ctx, g, &x, s, &vmv)?;
            }
            for (k, c) in x.into_iter().enumerate() {
                if !ctx.is_zero(&c) {
                    structure.push((i, j, k, c));
                }
            }
        }
    }

    let labels: Vec<String> = (0..n).map(|w| g.label(w)).collect();
    let mut unit = vec![ctx.zero(); n];
    unit[0] = ctx.one();
    let tau = unit.clone();
    let a = Arc::new(AlgebraData::new(ctx, spec.name.clone(), labels, structure, unit, tau)?);

    let report = a.check_frobenius()?;
    if !report.is_frobenius || !report.is_symmetric {
        return Err(Error::VerificationFailed(format!(
            "{} is not symmetric Frobenius on the T-basis",
            spec.name
        )));
    }
    let dual = a.dual_basis()?;
    for w in 0..n {
        if dual.dual_vectors.row(w) != a.basis_vec(g.inverse(w)).as_slice() {
            return Err(Error::VerificationFailed(format!(
                "dual of basis element {w} is not the inverse element"
            )));
        }
    }
    Ok(a)
}

/// Reduce a characteristic-zero Hecke algebra at a prime and certify
/// functoriality: the reduction must agree, constant by constant, with
/// the algebra built directly over the residue field at the image of v.
pub fn specialize(
    g: &CoxeterGroup,
    spec: &HeckeSpec,
    prime: &PrimeSpec,
) -> Result<Arc<AlgebraData>> {
    if let HeckeParam::Finite { .. } = spec.param {
        return Err(Error::InvalidInput(
            "specialization starts from a characteristic-zero parameter".into(),
        ));
    }
    let h = build_hecke(g, spec)?;
    let reduced = reduce_algebra(&h, prime)?;
    let rctx = reduced.ctx().clone();
    let (ctx, v) = realize_param(&spec.param)?;
    let vbar = ctx.reduce_mod(&v, prime, &rctx)?;
    let direct = build_hecke(
        g,
        &HeckeSpec::finite(reduced.name().to_string(), rctx, vbar),
    )?;
    if reduced.structure_entries() != direct.structure_entries()
        || reduced.unit() != direct.unit()
        || reduced.tau() != direct.tau()
    {
        return Err(Error::VerificationFailed(format!(
            "reduction of {} disagrees with the direct residue construction",
            spec.name
        )));
    }
    Ok(reduced)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_enumerates_shortlex_normal_forms() {
        let g = build_coxeter_named("A2").unwrap();
        assert_eq!(g.order(), 6);
        let words: Vec<Vec<usize>> = (0..6).map(|w| g.word(w).to_vec()).collect();
        assert_eq!(
            words,
            vec![vec![], vec![0], vec![1], vec![0, 1], vec![1, 0], vec![0, 1, 0]]
        );
        let mut lengths: Vec<usize> = (0..6).map(|w| g.length(w)).collect();
        lengths.sort();
        assert_eq!(lengths, vec![0, 1, 1, 2, 2, 3]);
        // s1 s2 inverts to s2 s1; the long element is an involution
        assert_eq!(g.inverse(3), 4);
        assert_eq!(g.inverse(5), 5);
        assert_eq!(g.mult(1, 1), 0);
        assert_eq!(g.mult(3, 4), 0);
        assert_eq!(g.label(0), "Te");
        assert_eq!(g.label(5), "T121");
    }

    #[test]
    fn raw_matrix_agrees_with_the_named_catalog() {
        let raw = build_coxeter(&[vec![1, 3], vec![3, 1]], "raw").unwrap();
        let named = build_coxeter_named("A2").unwrap();
        let raw_words: Vec<Vec<usize>> = (0..raw.order()).map(|w| raw.word(w).to_vec()).collect();
        let named_words: Vec<Vec<usize>> =
            (0..named.order()).map(|w| named.word(w).to_vec()).collect();
        assert_eq!(raw_words, named_words);
    }

    #[test]
    fn catalog_orders_match_the_classical_counts() {
        for (name, expected) in [
            ("A1", 2),
            ("A2", 6),
            ("A3", 24),
            ("A4", 120),
            ("B2", 8),
            ("B3", 48),
            ("I2:5", 10),
            ("I2:12", 24),
            ("H3", 120),
            ("D4", 192),
        ] {
            let g = build_coxeter_named(name).unwrap();
            assert_eq!(g.order(), expected, "order of {name}");
        }
    }

    #[test]
    fn bad_matrices_are_rejected() {
        let asymmetric = vec![vec![1, 3], vec![4, 1]];
        assert!(matches!(
            build_coxeter(&asymmetric, "bad"),
            Err(Error::InvalidMatrix(_))
        ));
        let diagonal = vec![vec![2]];
        assert!(matches!(
            build_coxeter(&diagonal, "bad"),
            Err(Error::InvalidMatrix(_))
        ));
        let small_bond = vec![vec![1, 1], vec![1, 1]];
        assert!(matches!(
            build_coxeter(&small_bond, "bad"),
            Err(Error::InvalidMatrix(_))
        ));
        assert!(matches!(
            catalog_matrix("I2:13"),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            catalog_matrix("E8"),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn infinite_and_oversize_groups_hit_the_caps() {
        // affine triangle group: never closes
        let affine = vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]];
        assert_eq!(
            build_coxeter(&affine, "affine").err(),
            Some(Error::GroupTooLarge(ENUMERATION_CAP))
        );
        // D5 closes at 1920 elements, past the catalog cap
        let d5 = vec![
            vec![1, 2, 3, 2, 2],
            vec![2, 1, 3, 2, 2],
            vec![3, 3, 1, 3, 2],
            vec![2, 2, 3, 1, 3],
            vec![2, 2, 2, 3, 1],
        ];
        assert_eq!(
            build_coxeter(&d5, "D5").err(),
            Some(Error::GroupTooLarge(MAX_GROUP_ORDER))
        );
    }

    #[test]
    fn a1_hecke_obeys_the_quadratic_relation() {
        let g = build_coxeter_named("A1").unwrap();
        let h = build_hecke(&g, &HeckeSpec::root_of_unity("hecke-A1-i", 4)).unwrap();
        assert_eq!(h.dim(), 2);
        let ctx = h.ctx().clone();
        let v = ctx.generator().unwrap();
        let vmv = ctx.sub(&v, &ctx.inv(&v).unwrap()).unwrap();
        let ts = h.basis_vec(1);
        let square = h.mul_elements(&ts, &ts).unwrap();
        let expected = vec![ctx.one(), vmv];
        assert_eq!(square, expected);
        // x^2 - 2 i x - 1 = (x - i)^2
        let two_i = ctx.add(&v, &v).unwrap();
        let min_poly = h.right_mult_basis(1).min_poly().unwrap();
        assert_eq!(
            min_poly,
            vec![ctx.from_int(-1), ctx.neg(&two_i).unwrap(), ctx.one()]
        );
    }

    #[test]
    fn hecke_at_v_one_recovers_the_group_table() {
        let g = build_coxeter_named("A2").unwrap();
        let h = build_hecke(&g, &HeckeSpec::one("qs3-via-hecke")).unwrap();
        let ctx = h.ctx().clone();
        let mut expected = Vec::new();
        for i in 0..6 {
            for j in 0..6 {
                expected.push((i, j, g.mult(i, j), ctx.one()));
            }
        }
        let mut got = h.structure_entries();
        got.sort_by_key(|&(i, j, k, _)| (i, j, k));
        expected.sort_by_key(|&(i, j, k, _)| (i, j, k));
        assert_eq!(got, expected);
    }

    #[test]
    fn dual_basis_is_inversion_for_the_t_basis() {
        let g = build_coxeter_named("A2").unwrap();
        let h = build_hecke(&g, &HeckeSpec::root_of_unity("hecke-A2-zeta3", 3)).unwrap();
        let report = h.check_frobenius().unwrap();
        assert!(report.is_frobenius && report.is_symmetric);
        let dual = h.dual_basis().unwrap();
        for w in 0..h.dim() {
            assert_eq!(
                dual.dual_vectors.row(w),
                h.basis_vec(g.inverse(w)).as_slice(),
                "dual of element {w}"
            );
        }
    }

    #[test]
    fn specialization_commutes_with_reduction() {
        // zeta_3 -> 2 in F_7: x^2 + x + 1 = (x - 2)(x - 4), take x - 2
        let g = build_coxeter_named("A2").unwrap();
        let spec = HeckeSpec::root_of_unity("hecke-A2-zeta3", 3);
        let prime = PrimeSpec::unramified(7, vec![5, 1]);
        let h = specialize(&g, &spec, &prime).unwrap();
        assert_eq!(h.dim(), 6);
        assert_eq!(h.ctx().characteristic(), 7);
        // v = 2, v - v^{-1} = 2 - 4 = -2 = 5
        let ctx = h.ctx().clone();
        let ts = h.basis_vec(1);
        let square = h.mul_elements(&ts, &ts).unwrap();
        assert_eq!(square[0], ctx.one());
        assert_eq!(square[1], ctx.from_int(5));

        // zeta_4 -> 2 in F_5: x^2 + 1 = (x - 2)(x - 3), take x - 2
        let g1 = build_coxeter_named("A1").unwrap();
        let spec1 = HeckeSpec::root_of_unity("hecke-A1-i", 4);
        let prime1 = PrimeSpec::unramified(5, vec![3, 1]);
        let h1 = specialize(&g1, &spec1, &prime1).unwrap();
        let ctx1 = h1.ctx().clone();
        let ts1 = h1.basis_vec(1);
        let square1 = h1.mul_elements(&ts1, &ts1).unwrap();
        assert_eq!(square1[0], ctx1.one());
        assert_eq!(square1[1], ctx1.from_int(4));

        // v = 1: the group algebra reduces to F_3 S_3 both ways
        let spec_one = HeckeSpec::one("qs3-via-hecke");
        let h3 = specialize(&g, &spec_one, &PrimeSpec::rational(3)).unwrap();
        assert_eq!(h3.ctx().characteristic(), 3);
        assert_eq!(h3.dim(), 6);
    }
}
