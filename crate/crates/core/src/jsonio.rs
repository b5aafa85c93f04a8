//! JSON codecs for the artifact file formats. Scalars travel as exact
//! strings in the field's own surface syntax; indices are 0-based on
//! disk.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algcore::AlgebraData;
use crate::error::{Error, Result};
use crate::exact::{FieldCtx, FieldKind};
use crate::matlin::Mat;
use crate::pimkit::AdaptedPim;
use crate::repmod::RightModule;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldJson {
    Rationals,
    PrimeField { p: u64 },
    ExtField { p: u64, modulus: Vec<u64> },
    Cyclotomic { e: u32 },
}

pub fn field_to_json(ctx: &FieldCtx) -> Result<FieldJson> {
    match ctx.kind() {
        FieldKind::Rationals => Ok(FieldJson::Rationals),
        FieldKind::PrimeField { p } => Ok(FieldJson::PrimeField { p: *p }),
        FieldKind::ExtField { p, modulus } => {
            Ok(FieldJson::ExtField { p: *p, modulus: modulus.clone() })
        }
        FieldKind::Cyclotomic { e, .. } => {
            // a residue context can carry a proper divisor of Phi_e;
            // those are not file formats
            if FieldCtx::cyclotomic(*e)? != *ctx {
                return Err(Error::InvalidInput(
                    "only the full cyclotomic field has a file form".into(),
                ));
            }
            Ok(FieldJson::Cyclotomic { e: *e })
        }
    }
}

pub fn field_from_json(f: &FieldJson) -> Result<FieldCtx> {
    match f {
        FieldJson::Rationals => Ok(FieldCtx::rationals()),
        FieldJson::PrimeField { p } => FieldCtx::prime_field(*p),
        FieldJson::ExtField { p, modulus } => FieldCtx::ext_field(*p, modulus.clone()),
        FieldJson::Cyclotomic { e } => FieldCtx::cyclotomic(*e),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

pub fn matrix_to_json(m: &Mat) -> MatrixJson {
    let ctx = m.ctx();
    let entries = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| ctx.scalar_to_string(m.at(i, j))).collect())
        .collect();
    MatrixJson { rows: m.rows(), cols: m.cols(), entries }
}

pub fn matrix_from_json(ctx: &Arc<FieldCtx>, j: &MatrixJson) -> Result<Mat> {
    if j.entries.len() != j.rows {
        return Err(Error::InvalidInput(format!(
            "matrix claims {} rows but lists {}",
            j.rows,
            j.entries.len()
        )));
    }
    let mut rows = Vec::with_capacity(j.rows);
    for row in &j.entries {
        if row.len() != j.cols {
            return Err(Error::InvalidInput(format!(
                "matrix claims {} cols but a row lists {}",
                j.cols,
                row.len()
            )));
        }
        rows.push(row.iter().map(|s| ctx.scalar_from_str(s)).collect::<Result<Vec<_>>>()?);
    }
    Mat::from_rows(ctx.clone(), rows)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub name: String,
    pub field: FieldJson,
    pub dim: usize,
    pub basis_labels: Vec<String>,
    pub unit: Vec<String>,
    pub tau: Vec<String>,
    pub structure: Vec<(usize, usize, usize, String)>,
}

pub fn algebra_to_json(a: &AlgebraData) -> Result<AlgebraJson> {
    let ctx = a.ctx();
    let strings = |xs: &[crate::exact::Scalar]| -> Vec<String> {
        xs.iter().map(|s| ctx.scalar_to_string(s)).collect()
    };
    Ok(AlgebraJson {
        name: a.name().to_string(),
        field: field_to_json(ctx)?,
        dim: a.dim(),
        basis_labels: a.basis_labels().to_vec(),
        unit: strings(a.unit()),
        tau: strings(a.tau()),
        structure: a
            .structure_entries()
            .into_iter()
            .map(|(i, j, k, s)| (i, j, k, ctx.scalar_to_string(&s)))
            .collect(),
    })
}

pub fn algebra_from_json(j: &AlgebraJson) -> Result<Arc<AlgebraData>> {
    let ctx = Arc::new(field_from_json(&j.field)?);
    if j.basis_labels.len() != j.dim {
        return Err(Error::InvalidInput(format!(
            "algebra claims dim {} but labels {} elements",
            j.dim,
            j.basis_labels.len()
        )));
    }
    let parse = |xs: &[String]| -> Result<Vec<crate::exact::Scalar>> {
        xs.iter().map(|s| ctx.scalar_from_str(s)).collect()
    };
    let mut structure = Vec::with_capacity(j.structure.len());
    for (i, jj, k, s) in &j.structure {
        structure.push((*i, *jj, *k, ctx.scalar_from_str(s)?));
    }
    Ok(Arc::new(AlgebraData::new(
        ctx.clone(),
        j.name.clone(),
        j.basis_labels.clone(),
        structure,
        parse(&j.unit)?,
        parse(&j.tau)?,
    )?))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub algebra: String,
    pub dim: usize,
    pub action: Vec<MatrixJson>,
}

pub fn module_to_json(v: &RightModule) -> ModuleJson {
    ModuleJson {
        algebra: v.algebra().name().to_string(),
        dim: v.dim(),
        action: (0..v.algebra().dim()).map(|w| matrix_to_json(v.action(w))).collect(),
    }
}

pub fn module_from_json(a: &Arc<AlgebraData>, j: &ModuleJson) -> Result<RightModule> {
    if j.algebra != a.name() {
        return Err(Error::InvalidInput(format!(
            "module belongs to {} but was loaded against {}",
            j.algebra,
            a.name()
        )));
    }
    let ctx = a.ctx();
    let action = j
        .action
        .iter()
        .map(|m| matrix_from_json(ctx, m))
        .collect::<Result<Vec<_>>>()?;
    RightModule::new(a.clone(), format!("{}-module", j.algebra), action)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdaptedJson {
    #[serde(flatten)]
    pub module: ModuleJson,
    pub d: usize,
    pub m: usize,
    pub basis_change: MatrixJson,
    pub c: String,
}

pub fn adapted_to_json(ap: &AdaptedPim) -> AdaptedJson {
    AdaptedJson {
        module: module_to_json(&ap.module),
        d: ap.d,
        m: ap.m,
        basis_change: matrix_to_json(&ap.basis_change),
        c: ap.module.algebra().ctx().scalar_to_string(&ap.normalized_c),
    }
}

pub fn adapted_from_json(a: &Arc<AlgebraData>, j: &AdaptedJson) -> Result<AdaptedPim> {
    let module = module_from_json(a, &j.module)?;
    let basis_change = matrix_from_json(a.ctx(), &j.basis_change)?;
    let basis_change_inv = basis_change.inverse()?;
    let normalized_c = a.ctx().scalar_from_str(&j.c)?;
    Ok(AdaptedPim { module, d: j.d, m: j.m, basis_change, basis_change_inv, normalized_c })
}
