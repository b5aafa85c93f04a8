//! Command handlers: parse inputs, delegate to the library, shape reports.
//!
//! Every handler returns an Outcome whose pass flag drives the exit code;
//! failures carry a phase so input problems exit 2 and runtime or
//! verification problems exit 1.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use frobenia_core::algcore::AlgebraData;
use frobenia_core::corpus;
use frobenia_core::decmap::{
    decomposition_matrix, james_check, reciprocity_check, trivial_column_criteria,
    DecompositionMatrix,
};
use frobenia_core::exact::{FieldCtx, FieldKind, PrimeSpec, Scalar};
use frobenia_core::fsavg::{
    c_tensor_seeded, gaschutz_certificate, make_idempotents, verify_fs_relations, CTensor,
    CoverageMode, FsReport, IdempotentReport,
};
use frobenia_core::heckegen::{build_coxeter, build_coxeter_named, build_hecke, specialize,
    CoxeterGroup, HeckeParam, HeckeSpec};
use frobenia_core::jsonio::{
    adapted_to_json, algebra_from_json, algebra_to_json, field_to_json, matrix_to_json,
    module_to_json, AlgebraJson,
};
use frobenia_core::matlin::Mat;
use frobenia_core::pimkit::{adapt_basis, extract_pims, AdaptedPim};
use frobenia_core::repmod::{radical_algebra, RightModule};
use frobenia_core::Error;

use crate::render;
use crate::Command;

pub struct Outcome {
    pub json: Value,
    pub table: String,
    pub pass: bool,
}

#[derive(Clone, Copy)]
pub enum Phase {
    Input,
    Run,
}

#[derive(Clone)]
pub struct Failure {
    pub phase: Phase,
    pub code: &'static str,
    pub message: String,
}

fn error_code(e: &Error) -> &'static str {
    match e {
        Error::DivisionByZero => "division-by-zero",
        Error::FieldMismatch(_) => "field-mismatch",
        Error::DimensionMismatch(_) => "dimension-mismatch",
        Error::Singular => "singular",
        Error::Inconsistent => "inconsistent",
        Error::UnsupportedPrime(_) => "unsupported-prime",
        Error::NegativeValuation(_) => "negative-valuation",
        Error::NotIntegralAtPrime(_) => "not-integral-at-prime",
        Error::AlgebraMismatch => "algebra-mismatch",
        Error::InvalidMatrix(_) => "invalid-matrix",
        Error::PrecisionExhausted(_) => "precision-exhausted",
        Error::NotFrobenius(_) => "not-frobenius",
        Error::NotSplit(_) => "not-split",
        Error::NotEndomorphism => "not-endomorphism",
        Error::NoIntertwiner(_) => "no-intertwiner",
        Error::SplittingFailure(_) => "splitting-failure",
        Error::FactorizationIncomplete(_) => "factorization-incomplete",
        Error::VerificationFailed(_) => "verification-failed",
        Error::GroupTooLarge(_) => "group-too-large",
        Error::InvalidInput(_) => "invalid-input",
    }
}

fn fail(phase: Phase, e: Error) -> Failure {
    Failure { phase, code: error_code(&e), message: e.to_string() }
}

fn input_msg(message: impl Into<String>) -> Failure {
    Failure { phase: Phase::Input, code: "invalid-input", message: message.into() }
}

trait OrFail<T> {
    /// Input phase: bad files, bad flags. Exits 2.
    fn input(self) -> Result<T, Failure>;
    /// Run phase: computation or verification trouble. Exits 1.
    fn run(self) -> Result<T, Failure>;
}

impl<T> OrFail<T> for Result<T, Error> {
    fn input(self) -> Result<T, Failure> {
        self.map_err(|e| fail(Phase::Input, e))
    }

    fn run(self) -> Result<T, Failure> {
        self.map_err(|e| fail(Phase::Run, e))
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report serializes")
}

fn load_algebra(path: &Path) -> Result<Arc<AlgebraData>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        phase: Phase::Input,
        code: "io",
        message: format!("{}: {e}", path.display()),
    })?;
    let parsed: AlgebraJson = serde_json::from_str(&text)
        .map_err(|e| input_msg(format!("{}: {e}", path.display())))?;
    algebra_from_json(&parsed).input()
}

fn scalar_strings(ctx: &FieldCtx, v: &[Scalar]) -> Vec<String> {
    v.iter().map(|s| ctx.scalar_to_string(s)).collect()
}

fn field_label(ctx: &FieldCtx) -> String {
    match ctx.kind() {
        FieldKind::Rationals => "Q".into(),
        FieldKind::PrimeField { p } => format!("F{p}"),
        FieldKind::ExtField { p, modulus } => format!("F{p}^{}", modulus.len() - 1),
        FieldKind::Cyclotomic { e, .. } => format!("Q(zeta{e})"),
    }
}

fn prime_value(p: &PrimeSpec) -> Value {
    json!({
        "ell": p.ell,
        "ramified": p.ramified,
        "residueFactor": p.residue_factor,
    })
}

fn prime_label(p: &PrimeSpec) -> String {
    match &p.residue_factor {
        Some(f) => format!("{},{f:?}", p.ell),
        None => p.ell.to_string(),
    }
}

/// Prime syntax: "L" bare, or "L,[c0,c1,...]" with an unramified residue
/// factor over a cyclotomic field. Bare L over a cyclotomic field means
/// the ramified prime.
fn parse_prime(spec: &str, ctx: &FieldCtx) -> Result<PrimeSpec, Failure> {
    let (ell_str, rest) = match spec.split_once(',') {
        Some((a, b)) => (a, Some(b)),
        None => (spec, None),
    };
    let ell: u64 = ell_str
        .trim()
        .parse()
        .map_err(|_| input_msg(format!("--prime expects a rational prime, got {ell_str:?}")))?;
    let prime = match ctx.kind() {
        FieldKind::Rationals => {
            if rest.is_some() {
                return Err(input_msg("rational algebras take a bare --prime L"));
            }
            PrimeSpec::rational(ell)
        }
        FieldKind::Cyclotomic { .. } => match rest {
            Some(poly) => {
                let coeffs: Vec<u64> = serde_json::from_str(poly.trim()).map_err(|e| {
                    input_msg(format!("residue factor must be a JSON list of coefficients: {e}"))
                })?;
                PrimeSpec::unramified(ell, coeffs)
            }
            None => PrimeSpec::ramified(ell),
        },
        _ => {
            return Err(input_msg(
                "positive characteristic algebras do not reduce further",
            ))
        }
    };
    ctx.validate_prime(&prime).input()?;
    Ok(prime)
}

fn coverage(full: bool, sample: Option<usize>, dim: usize) -> CoverageMode {
    if full {
        CoverageMode::Full
    } else {
        match sample {
            Some(n) => CoverageMode::Sampled(n),
            None => CoverageMode::auto(dim),
        }
    }
}

/// Map over items, through a thread pool when --jobs asks for one.
/// Collection preserves input order either way.
fn maybe_par<T, U, F>(jobs: Option<usize>, items: Vec<T>, f: F) -> Result<Vec<U>, Failure>
where
    T: Send,
    U: Send,
    F: Fn(T) -> Result<U, Failure> + Sync + Send,
{
    match jobs {
        None | Some(1) => items.into_iter().map(f).collect(),
        Some(0) => Err(input_msg("--jobs wants at least one thread")),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| input_msg(format!("cannot build a {n}-thread pool: {e}")))?;
            pool.install(|| items.into_par_iter().map(|t| f(t)).collect())
        }
    }
}

fn adapted_pims(a: &Arc<AlgebraData>) -> Result<Vec<AdaptedPim>, Failure> {
    let pims = extract_pims(a).run()?;
    pims.iter().map(|p| adapt_basis(a, &p.module)).collect::<Result<_, _>>().run()
}

pub fn dispatch(cmd: &Command, seed: u64, jobs: Option<usize>) -> Result<Outcome, Failure> {
    match cmd {
        Command::Check { file } => cmd_check(file),
        Command::DualBasis { file } => cmd_dual_basis(file),
        Command::Nakayama { file } => cmd_nakayama(file),
        Command::Radical { file } => cmd_radical(file),
        Command::Pims { file } => cmd_pims(file),
        Command::Adapt { file } => cmd_adapt(file),
        Command::CTensor { file, full, sample } => cmd_c_tensor(file, *full, *sample, seed, jobs),
        Command::FsVerify { file, full, sample } => cmd_fs_verify(file, *full, *sample, seed, jobs),
        Command::Idempotents { file } => cmd_idempotents(file, jobs),
        Command::Gaschutz { file } => cmd_gaschutz(file, jobs),
        Command::Decomp { file, prime } => cmd_decomp(file, prime),
        Command::Reciprocity { file, prime } => cmd_reciprocity(file, prime),
        Command::Criteria { file, generators } => cmd_criteria(file, generators.as_deref()),
        Command::Hecke { ctype, coxeter_matrix, param, prime } => {
            cmd_hecke(ctype.as_deref(), coxeter_matrix.as_deref(), param, prime.as_deref())
        }
        Command::JamesCheck { ctype, e, ell, root } => cmd_james_check(ctype, *e, *ell, *root),
        Command::Examples { out } => cmd_examples(out),
    }
}

fn cmd_check(file: &Path) -> Result<Outcome, Failure> {
    let a = load_algebra(file)?;
    let rep = a.check_frobenius().run()?;
    let field = field_to_json(a.ctx()).run()?;
    let json = json!({
        "name": a.name(),
        "field": to_value(&field),
        "dim": a.dim(),
        "isFrobenius": rep.is_frobenius,
        "isSymmetric": rep.is_symmetric,
        "gramRank": rep.gram_rank,
    });
    let table = render::kv(&[
        ("name", a.name().to_string()),
        ("field", field_label(a.ctx())),
        ("dim", a.dim().to_string()),
        ("frobenius", rep.is_frobenius.to_string()),
        ("symmetric", rep.is_symmetric.to_string()),
        ("gram rank", rep.gram_rank.to_string()),
    ]);
    Ok(Outcome { json, table, pass: rep.is_frobenius })
}

fn cmd_dual_basis(file: &Path) -> Result<Outcome, Failure> {
    let a = load_algebra(file)?;
    let db = a.dual_basis().run()?;
    let gram = matrix_to_json(&db.gram);
    let duals = matrix_to_json(&db.dual_vectors);
    let json = json!({
        "name": a.name(),
        "gram": to_value(&gram),
        "dualVectors": to_value(&duals),
    });
    let mut table = render::matrix("gram", &gram.entries);
    table.push('\n');
    table.push_str(&render::matrix("dual", &duals.entries));
    Ok(Outcome { json, table, pass: true })
}

fn cmd_nakayama(file: &Path) -> Result<Outcome, Failure> {
    let a = load_algebra(file)?;
    let nk = a.nakayama().run()?;
    let is_identity = nk.alpha_matrix == Mat::identity(a.ctx().clone(), a.dim());
    let alpha = matrix_to_json(&nk.alpha_matrix);
    let json = json!({
        "name": a.name(),
        "alpha": to_value(&alpha),
        "isIdentity": is_identity,
    });
    let mut table = render::kv(&[("identity", is_identity.to_string())]);
    table.push_str(&render::matrix("alpha", &alpha.entries));
    Ok(Outcome { json, table, pass: true })
}

fn cmd_radical(file: &Path) -> Result<Outcome, Failure> {
    let a = load_algebra(file)?;
    let rad = radical_algebra(&a).run()?;
    let basis = matrix_to_json(&rad);
    let json = json!({
        "name": a.name(),
        "dim": rad.rows(),
        "basis": to_value(&basis),
    });
    let mut table = render::kv(&[("radical dim", rad.rows().to_string())]);
    if rad.rows() > 0 {
        table.push_str(&render::matrix("basis", &basis.entries));
    }
    Ok(Outcome { json, table, pass: true })
}

fn cmd_pims(file: &Path) -> Result<Outcome, Failure> {
    let a = load_algebra(file)?;
    let ctx = a.ctx().clone();
    let pims = extract_pims(&a).run()?;
    let items: Vec<Value> = pims
        .iter()
        .enumerate()
        .map(|(i, p)| {
            json!({
                "index": i,
                "name": p.module.name(),
                "dim": p.module.dim(),
                "idempotent": scalar_strings(&ctx, &p.idempotent),
                "module": to_value(&module_to_json(&p.module)),
            })
        })
        .collect();
    let json = json!({ "algebra": a.name(), "count": pims.len(), "pims": items });
    let cells: Vec<Vec<String>> = pims
        .iter()
        .map(|p| {
            vec![
                p.module.dim().to_string(),
                format!("[{}]", scalar_strings(&ctx, &p.idempotent).join(", ")),
            ]
        })
        .collect();
    let rows: Vec<String> = pims.iter().map(|p| p.module.name().to_string()).collect();
    let table = render::grid(
        a.name(),
        &["dim".into(), "idempotent".into()],
        &rows,
        &cells,
    );
    Ok(Outcome { json, table, pass: true })
}

fn cmd_adapt(file: &Path) -> Result<Outcome, Failure> {
    let a = load_algebra(file)?;
    let ctx = a.ctx().clone();
    let adapted = adapted_pims(&a)?;
    let items: Vec<Value> = adapted.iter().map(|ap| to_value(&adapted_to_json(ap))).collect();
    let json = json!({ "algebra": a.name(), "pims": items });
    let rows: Vec<String> = adapted.iter().map(|ap| ap.module.name().to_string()).collect();
    let cells: Vec<Vec<String>> = adapted
        .iter()
        .map(|ap| {
            vec![
                ap.dim().to_string(),
                ap.d.to_string(),
                ap.m.to_string(),
                ctx.scalar_to_string(&ap.normalized_c),
            ]
        })
        .collect();
    let table = render::grid(
        a.name(),
        &["n".into(), "d".into(), "m".into(), "c".into()],
        &rows,
        &cells,
    );
    Ok(Outcome { json, table, pass: true })
}

fn tensor_value(ctx: &FieldCtx, t: &CTensor) -> Value {
    let entries: Vec<Value> = t
        .entries
        .iter()
        .map(|((s, tt), m)| {
            json!({ "s": s, "t": tt, "values": to_value(&matrix_to_json(m)) })
        })
        .collect();
    let corner = t.value(1, 1, 1, 1 + t.pim.m).map(|c| ctx.scalar_to_string(c));
    json!({
        "pim": t.pim.module.name(),
        "n": t.pim.dim(),
        "d": t.pim.d,
        "m": t.pim.m,
        "full": t.full,
        "seed": t.seed,
        "c": corner,
        "pairs": t.entries.len(),
        "entries": entries,
    })
}

fn cmd_c_tensor(
    file: &Path,
    full: bool,
    sample: Option<usize>,
    seed: u64,
    jobs: Option<usize>,
) -> Result<Outcome, Failure> {
    let a = load_algebra(file)?;
    let ctx = a.ctx().clone();
    let adapted = adapted_pims(&a)?;
    let tensors = maybe_par(jobs, adapted, |ap| {
        let mode = coverage(full, sample, ap.dim());
        c_tensor_seeded(&ap, mode, seed).run()
    })?;
    let items: Vec<Value> = tensors.iter().map(|t| tensor_value(&ctx, t)).collect();
    let json = json!({ "algebra": a.name(), "pims": items });
    let rows: Vec<String> = tensors.iter().map(|t| t.pim.module.name().to_string()).collect();
    let cells: Vec<Vec<String>> = tensors
        .iter()
        .map(|t| {
            vec![
                t.pim.d.to_string(),
                t.pim.m.to_string(),
                t.value(1, 1, 1, 1 + t.pim.m)
                    .map_or("?".into(), |c| ctx.scalar_to_string(c)),
                t.entries.len().to_string(),
                if t.full { "full".into() } else { "sampled".into() },
            ]
        })
        .collect();
    let table = render::grid(
        a.name(),
        &["d".into(), "m".into(), "c".into(), "pairs".into(), "coverage".into()],
        &rows,
        &cells,
    );
    Ok(Outcome { json, table, pass: true })
}

fn fs_report_value(ctx: &FieldCtx, r: &FsReport) -> Value {
    let relations: Vec<Value> = r
        .relations
        .iter()
        .map(|rel| {
            let cx = rel.counterexample.as_ref().map(|c| {
                json!({
                    "i": c.i, "j": c.j, "s": c.s, "t": c.t,
                    "expected": ctx.scalar_to_string(&c.expected),
                    "got": ctx.scalar_to_string(&c.got),
                })
            });
            json!({
                "name": rel.name,
                "checked": rel.checked,
                "skipped": rel.skipped,
                "pass": rel.pass,
                "counterexample": cx,
            })
        })
        .collect();
    json!({
        "pim": r.pim_name,
        "n": r.n,
        "d": r.d,
        "m": r.m,
        "c": ctx.scalar_to_string(&r.c),
        "socIsoHead": r.soc_iso_head,
        "fullCoverage": r.full_coverage,
        "seed": r.seed,
        "relations": relations,
        "pass": r.pass,
    })
}

fn cmd_fs_verify(
    file: &Path,
    full: bool,
    sample: Option<usize>,
    seed: u64,
    jobs: Option<usize>,
) -> Result<Outcome, Failure> {
    let a = load_algebra(file)?;
    let ctx = a.ctx().clone();
    let adapted = adapted_pims(&a)?;
    let reports = maybe_par(jobs, adapted, |ap| {
        let mode = coverage(full, sample, ap.dim());
        let t = c_tensor_seeded(&ap, mode, seed).run()?;
        verify_fs_relations(&t).run()
    })?;
    let pass = reports.iter().all(|r| r.pass);
    let items: Vec<Value> = reports.iter().map(|r| fs_report_value(&ctx, r)).collect();
    let json = json!({ "algebra": a.name(), "pass": pass, "pims": items });
    let mut lines = Vec::new();
    for r in &reports {
        for rel in &r.relations {
            lines.push(format!(
                "{}  {}  checked {}  skipped {}  {}",
                r.pim_name,
                rel.name,
                rel.checked,
                rel.skipped,
                if rel.pass { "ok" } else { "FAIL" },
            ));
        }
    }
    lines.push(format!("overall  {}", if pass { "ok" } else { "FAIL" }));
    let table = lines.join("\n") + "\n";
    Ok(Outcome { json, table, pass })
}

fn idempotent_value(ctx: &FieldCtx, r: &IdempotentReport) -> Value {
    let ch = &r.checks;
    let pass = ch.square && ch.iso && ch.pairwise_rad && ch.cap_square && ch.cap_head_iso
        && ch.head_projection;
    json!({
        "index": r.index,
        "etilde": scalar_strings(ctx, &r.etilde),
        "e": scalar_strings(ctx, &r.e),
        "capEtilde": scalar_strings(ctx, &r.cap_etilde),
        "capE": scalar_strings(ctx, &r.cap_e),
        "checks": {
            "square": ch.square,
            "iso": ch.iso,
            "pairwiseRad": ch.pairwise_rad,
            "capSquare": ch.cap_square,
            "capHeadIso": ch.cap_head_iso,
            "headProjection": ch.head_projection,
        },
        "pass": pass,
    })
}

fn cmd_idempotents(file: &Path, jobs: Option<usize>) -> Result<Outcome, Failure> {
    let a = load_algebra(file)?;
    let ctx = a.ctx().clone();
    let adapted = adapted_pims(&a)?;
    let names: Vec<String> = adapted.iter().map(|ap| ap.module.name().to_string()).collect();
    let per_pim = maybe_par(jobs, adapted, |ap| make_idempotents(&a, &ap).run())?;
    let mut pass = true;
    let mut items = Vec::new();
    let mut lines = Vec::new();
    for (name, reports) in names.iter().zip(&per_pim) {
        let vals: Vec<Value> = reports.iter().map(|r| idempotent_value(&ctx, r)).collect();
        for (r, v) in reports.iter().zip(&vals) {
            let ok = v["pass"].as_bool().unwrap_or(false);
            pass &= ok;
            lines.push(format!(
                "{}  e_{}  [{}]  {}",
                name,
                r.index,
                scalar_strings(&ctx, &r.e).join(", "),
                if ok { "ok" } else { "FAIL" },
            ));
        }
        items.push(json!({ "pim": name, "idempotents": vals }));
    }
    let json = json!({ "algebra": a.name(), "pass": pass, "pims": items });
    let table = lines.join("\n") + "\n";
    Ok(Outcome { json, table, pass })
}

fn cmd_gaschutz(file: &Path, jobs: Option<usize>) -> Result<Outcome, Failure> {
    let a = load_algebra(file)?;
    let pims = extract_pims(&a).run()?;
    let mut modules = vec![RightModule::regular(a.clone())];
    modules.extend(pims.into_iter().map(|p| p.module));
    let certs = maybe_par(jobs, modules, |m| {
        let cert = gaschutz_certificate(&m).run()?;
        Ok((m, cert))
    })?;
    let pass = certs.iter().all(|(_, c)| c.is_some());
    let items: Vec<Value> = certs
        .iter()
        .map(|(m, c)| {
            json!({
                "module": m.name(),
                "dim": m.dim(),
                "projective": c.is_some(),
                "certificate": c.as_ref().map(|mat| to_value(&matrix_to_json(mat))),
            })
        })
        .collect();
    let json = json!({ "algebra": a.name(), "pass": pass, "modules": items });
    let rows: Vec<String> = certs.iter().map(|(m, _)| m.name().to_string()).collect();
    let cells: Vec<Vec<String>> = certs
        .iter()
        .map(|(m, c)| {
            vec![m.dim().to_string(), if c.is_some() { "yes".into() } else { "no".into() }]
        })
        .collect();
    let table = render::grid(
        a.name(),
        &["dim".into(), "certificate".into()],
        &rows,
        &cells,
    );
    Ok(Outcome { json, table, pass })
}

fn decomp_value(d: &DecompositionMatrix) -> Value {
    json!({
        "prime": prime_value(&d.prime),
        "rows": d.rows,
        "cols": d.cols,
        "rowDims": d.row_dims,
        "colDims": d.col_dims,
        "matrix": d.entries,
    })
}

fn decomp_table(title: &str, d: &DecompositionMatrix) -> String {
    let cells: Vec<Vec<String>> = d
        .entries
        .iter()
        .map(|row| row.iter().map(|e| e.to_string()).collect())
        .collect();
    render::grid(title, &d.cols, &d.rows, &cells)
}

fn cmd_decomp(file: &Path, prime: &str) -> Result<Outcome, Failure> {
    let a = load_algebra(file)?;
    let p = parse_prime(prime, a.ctx())?;
    let d = decomposition_matrix(&a, &p).run()?;
    let json = json!({ "algebra": a.name(), "decomposition": decomp_value(&d) });
    let table = decomp_table(&format!("{} mod {}", a.name(), prime_label(&p)), &d);
    Ok(Outcome { json, table, pass: true })
}

fn cmd_reciprocity(file: &Path, prime: &str) -> Result<Outcome, Failure> {
    let a = load_algebra(file)?;
    let p = parse_prime(prime, a.ctx())?;
    let ok = reciprocity_check(&a, &p).run()?;
    let json = json!({
        "algebra": a.name(),
        "prime": prime_value(&p),
        "transposeIdentity": ok,
    });
    let table = render::kv(&[
        ("prime", prime_label(&p)),
        ("transpose identity", ok.to_string()),
    ]);
    Ok(Outcome { json, table, pass: ok })
}

fn parse_generators(spec: &str, dim: usize) -> Result<Vec<usize>, Failure> {
    let gens: Vec<usize> = spec
        .split(',')
        .map(|s| s.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| input_msg("--generators expects comma-separated basis indices"))?;
    for &g in &gens {
        if g >= dim {
            return Err(input_msg(format!("generator index {g} out of range for dimension {dim}")));
        }
    }
    Ok(gens)
}

fn cmd_criteria(file: &Path, generators: Option<&str>) -> Result<Outcome, Failure> {
    let a = load_algebra(file)?;
    let gens = generators.map(|g| parse_generators(g, a.dim())).transpose()?;
    let adapted = adapted_pims(&a)?;
    let rep = trivial_column_criteria(&a, &adapted, gens.as_deref()).run()?;
    let items: Vec<Value> = rep
        .pims
        .iter()
        .map(|p| {
            json!({
                "pim": p.pim,
                "excludedPrimesI": p.excluded_primes_i,
                "excludedPrimesJ": p.excluded_primes_j,
            })
        })
        .collect();
    let json = json!({ "algebra": a.name(), "pims": items });
    let rows: Vec<String> = rep.pims.iter().map(|p| p.pim.clone()).collect();
    let cells: Vec<Vec<String>> = rep
        .pims
        .iter()
        .map(|p| vec![format!("{:?}", p.excluded_primes_i), format!("{:?}", p.excluded_primes_j)])
        .collect();
    let table = render::grid(
        a.name(),
        &["denominator primes".into(), "entry primes".into()],
        &rows,
        &cells,
    );
    Ok(Outcome { json, table, pass: true })
}

/// Parameter syntax: root:e, fp:p,q, or one. The returned tag labels the
/// algebra, e.g. hecke-A2-zeta3.
fn parse_param(spec: &str) -> Result<(HeckeParam, String), Failure> {
    if spec == "one" {
        return Ok((HeckeParam::One, "v1".into()));
    }
    if let Some(e) = spec.strip_prefix("root:") {
        let e: u32 = e
            .trim()
            .parse()
            .map_err(|_| input_msg(format!("root:e expects an integer order, got {e:?}")))?;
        return Ok((HeckeParam::RootOfUnity(e), format!("zeta{e}")));
    }
    if let Some(rest) = spec.strip_prefix("fp:") {
        let (p, q) = rest
            .split_once(',')
            .ok_or_else(|| input_msg("fp takes a prime and a residue, as in fp:7,2"))?;
        let p: u64 = p
            .trim()
            .parse()
            .map_err(|_| input_msg(format!("bad characteristic {p:?}")))?;
        let q: i64 = q
            .trim()
            .parse()
            .map_err(|_| input_msg(format!("bad residue {q:?}")))?;
        let ctx = Arc::new(FieldCtx::prime_field(p).input()?);
        let v = ctx.from_int(q);
        return Ok((HeckeParam::Finite { ctx, v }, format!("q{q}mod{p}")));
    }
    Err(input_msg(format!("--param expects root:e, fp:p,q, or one, got {spec:?}")))
}

fn parse_group(
    ctype: Option<&str>,
    coxeter_matrix: Option<&str>,
) -> Result<CoxeterGroup, Failure> {
    match (ctype, coxeter_matrix) {
        (Some(t), None) => build_coxeter_named(t).input(),
        (None, Some(raw)) => {
            let m: Vec<Vec<u32>> = serde_json::from_str(raw)
                .map_err(|e| input_msg(format!("--coxeter-matrix must be a JSON matrix: {e}")))?;
            build_coxeter(&m, "W").input()
        }
        _ => Err(input_msg("give exactly one of --type and --coxeter-matrix")),
    }
}

fn cmd_hecke(
    ctype: Option<&str>,
    coxeter_matrix: Option<&str>,
    param: &str,
    prime: Option<&str>,
) -> Result<Outcome, Failure> {
    let g = parse_group(ctype, coxeter_matrix)?;
    let (param, tag) = parse_param(param)?;
    let spec = HeckeSpec { name: format!("hecke-{}-{}", g.name(), tag), param };
    let mut h = build_hecke(&g, &spec).run()?;
    if let Some(p) = prime {
        let p = parse_prime(p, h.ctx())?;
        h = specialize(&g, &spec, &p).run()?;
    }
    let out = algebra_to_json(&h).run()?;
    let json = to_value(&out);
    let table = render::kv(&[
        ("name", h.name().to_string()),
        ("group order", g.order().to_string()),
        ("field", field_label(h.ctx())),
        ("dim", h.dim().to_string()),
    ]);
    Ok(Outcome { json, table, pass: true })
}

/// The prime for a root-of-unity Hecke reduction: ramified when ell
/// divides e, else split by the factor x - root. Linear cyclotomic
/// polynomials fix the root without being told.
fn james_prime(e: u32, ell: u64, root: Option<u64>) -> Result<PrimeSpec, Failure> {
    if u64::from(e) % ell == 0 {
        if root.is_some() {
            return Err(input_msg("ramified primes determine the root, drop --root"));
        }
        return Ok(PrimeSpec::ramified(ell));
    }
    let root = match (root, e) {
        (Some(r), _) => r,
        (None, 1) => 1,
        (None, 2) => ell - 1,
        (None, _) => {
            return Err(input_msg("--root is required when e > 2 and ell is unramified"))
        }
    };
    Ok(PrimeSpec::unramified(ell, vec![(ell - root % ell) % ell, 1]))
}

fn cmd_james_check(ctype: &str, e: u32, ell: u64, root: Option<u64>) -> Result<Outcome, Failure> {
    if e == 0 {
        return Err(input_msg("--e wants a positive order"));
    }
    let prime = james_prime(e, ell, root)?;
    let ctx = FieldCtx::cyclotomic(e).input()?;
    ctx.validate_prime(&prime).input()?;
    let rep = james_check(ctype, e, &prime).run()?;
    let json = json!({
        "type": ctype,
        "e": e,
        "prime": prime_value(&prime),
        "groupOrder": rep.group_order,
        "coprimeToGroupOrder": rep.coprime_to_group_order,
        "isIdentity": rep.is_identity,
        "permutation": rep.permutation,
        "matrix": decomp_value(&rep.matrix),
    });
    let mut table = render::kv(&[
        ("type", ctype.to_string()),
        ("e", e.to_string()),
        ("ell", ell.to_string()),
        ("group order", rep.group_order.to_string()),
        ("coprime", rep.coprime_to_group_order.to_string()),
        ("identity", rep.is_identity.to_string()),
    ]);
    table.push('\n');
    table.push_str(&decomp_table(
        &format!("{ctype} mod {}", prime_label(&prime)),
        &rep.matrix,
    ));
    Ok(Outcome { json, table, pass: true })
}

fn cmd_examples(out: &Path) -> Result<Outcome, Failure> {
    std::fs::create_dir_all(out).map_err(|e| Failure {
        phase: Phase::Input,
        code: "io",
        message: format!("{}: {e}", out.display()),
    })?;
    let mut written = Vec::new();
    for name in corpus::BUNDLED {
        let a = corpus::bundled(name).run()?;
        let j = algebra_to_json(&a).run()?;
        let text = serde_json::to_string_pretty(&j).expect("algebra serializes") + "\n";
        let file = format!("{}.json", name.to_lowercase());
        let path: PathBuf = out.join(&file);
        std::fs::write(&path, text).map_err(|e| Failure {
            phase: Phase::Input,
            code: "io",
            message: format!("{}: {e}", path.display()),
        })?;
        written.push(file);
    }
    let json = json!({ "out": out.display().to_string(), "written": written });
    let table = written.join("\n") + "\n";
    Ok(Outcome { json, table, pass: true })
}
