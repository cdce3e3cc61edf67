//! JSON matrix files: `{"n": k, "ring": "...", "rows": [[entry, ...], ...], "skew": bool}`.
//!
//! Ring descriptors: `q`, `qi`, `fp:<p>`, `dual:<field>` for dual numbers
//! over a field, and `<field>[x,y,...]` for polynomials.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::dual::DualNumber;
use crate::error::{AlgebraError, Result};
use crate::matrix::RingMat;
use crate::poly::{MultiPoly, VarTable};
use crate::ring::Ring;
use crate::scalar::{ExactScalar, FieldKind};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub n: usize,
    pub ring: String,
    pub rows: Vec<Vec<String>>,
    #[serde(default)]
    pub skew: bool,
}

#[derive(Clone, Debug)]
pub enum RingSpec {
    Field(FieldKind),
    Dual(FieldKind),
    Poly(FieldKind, Arc<VarTable>),
}

impl RingSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("dual:") {
            return Ok(RingSpec::Dual(rest.parse()?));
        }
        if let Some((field, vars)) = s.split_once('[') {
            let vars = vars.strip_suffix(']').ok_or_else(|| AlgebraError::Parse {
                what: "ring descriptor",
                input: s.to_string(),
            })?;
            let names: Vec<&str> = vars.split(',').map(str::trim).filter(|v| !v.is_empty()).collect();
            return Ok(RingSpec::Poly(field.trim().parse()?, VarTable::new(names)?));
        }
        Ok(RingSpec::Field(s.parse()?))
    }
}

/// A parsed matrix over one of the supported coefficient rings.
#[derive(Clone, Debug)]
pub enum AnyMatrix {
    Scalar(RingMat<ExactScalar>),
    Dual(RingMat<DualNumber<ExactScalar>>),
    Poly(RingMat<MultiPoly>),
}

fn build<R: Ring, F: Fn(&str) -> Result<R>>(file: &MatrixFile, one: R, parse: F) -> Result<RingMat<R>> {
    if file.rows.len() != file.n {
        return Err(AlgebraError::Dimension(format!(
            "{} rows for n = {}",
            file.rows.len(),
            file.n
        )));
    }
    let rows = file
        .rows
        .iter()
        .map(|r| r.iter().map(|e| parse(e)).collect::<Result<Vec<R>>>())
        .collect::<Result<Vec<_>>>()?;
    let m = RingMat::from_rows(rows, &one)?;
    if file.skew {
        m.mark_skew()
    } else {
        Ok(m)
    }
}

impl MatrixFile {
    pub fn from_json(v: &Value) -> Result<Self> {
        serde_json::from_value(v.clone()).map_err(|e| AlgebraError::Parse {
            what: "matrix file",
            input: e.to_string(),
        })
    }

    pub fn from_matrix<R: Ring>(m: &RingMat<R>, ring: &str) -> Self {
        MatrixFile {
            n: m.n(),
            ring: ring.to_string(),
            rows: matrix_rows(m),
            skew: m.is_skew(),
        }
    }

    pub fn to_matrix(&self) -> Result<AnyMatrix> {
        match RingSpec::parse(&self.ring)? {
            RingSpec::Field(f) => {
                build(self, f.one(), |e| f.parse_scalar(e)).map(AnyMatrix::Scalar)
            }
            RingSpec::Dual(f) => build(self, DualNumber::constant(f.one()), |e| {
                DualNumber::parse(e, f)
            })
            .map(AnyMatrix::Dual),
            RingSpec::Poly(f, vars) => build(self, MultiPoly::from_int(&vars, f, 1), |e| {
                MultiPoly::parse(e, &vars, f)
            })
            .map(AnyMatrix::Poly),
        }
    }
}

impl AnyMatrix {
    pub fn pf(&self) -> Result<String> {
        Ok(match self {
            AnyMatrix::Scalar(m) => m.pf()?.to_string(),
            AnyMatrix::Dual(m) => m.pf()?.to_string(),
            AnyMatrix::Poly(m) => m.pf()?.to_string(),
        })
    }

    pub fn det(&self) -> String {
        match self {
            AnyMatrix::Scalar(m) => m.det().to_string(),
            AnyMatrix::Dual(m) => m.det().to_string(),
            AnyMatrix::Poly(m) => m.det().to_string(),
        }
    }

    pub fn is_skew(&self) -> bool {
        match self {
            AnyMatrix::Scalar(m) => m.is_skew(),
            AnyMatrix::Dual(m) => m.is_skew(),
            AnyMatrix::Poly(m) => m.is_skew(),
        }
    }
}

pub fn matrix_rows<R: Ring>(m: &RingMat<R>) -> Vec<Vec<String>> {
    m.rows()
        .map(|r| r.iter().map(|e| e.to_string()).collect())
        .collect()
}

/// Rows of entry texts as a JSON value.
pub fn matrix_json<R: Ring>(m: &RingMat<R>) -> Value {
    serde_json::to_value(matrix_rows(m)).expect("strings serialize")
}
