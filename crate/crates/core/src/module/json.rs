//! The single-file JSON module format.
//!
//! ```json
//! {"format": 1, "m": 2, "p": 32003, "window": [3, 3],
//!  "dims": {"0,0": 1, ...},
//!  "transpositions": {"2,0": [[[[0, 1], [1, 0]]], []], ...},
//!  "inclusions": {"0,0": [[[1]], null], ...}}
//! ```
//!
//! `transpositions[n][j][i]` is the matrix of `s_i` in factor `j` and
//! `inclusions[n][j]` the map to `n + e_j` (`null` on the top face). Matrices
//! are lists of integer rows. Degrees of dimension zero may be omitted from
//! both maps.

use serde::{Deserialize, Serialize};

use crate::category::{degree_key, DegreeBox};
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Matrix};
use crate::report::{DimTable, OrderedMap};

use super::TruncatedModule;

type Rows = Vec<Vec<i64>>;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleFile {
    pub format: u32,
    pub m: usize,
    pub p: u32,
    pub window: Vec<usize>,
    pub dims: OrderedMap<usize>,
    #[serde(default)]
    pub transpositions: OrderedMap<Vec<Vec<Rows>>>,
    #[serde(default)]
    pub inclusions: OrderedMap<Vec<Option<Rows>>>,
}

impl ModuleFile {
    pub fn from_module(v: &TruncatedModule) -> Self {
        let f = v.field();
        let mut transpositions = Vec::new();
        let mut inclusions = Vec::new();
        for n in v.window().degrees() {
            if v.dim(&n) == 0 {
                continue;
            }
            let data = v.degree_data(&n);
            let key = degree_key(&n);
            transpositions.push((
                key.clone(),
                data.transpositions
                    .iter()
                    .map(|gs| gs.iter().map(|g| g.to_i64_rows(f)).collect())
                    .collect(),
            ));
            inclusions.push((
                key,
                data.inclusions
                    .iter()
                    .map(|i| i.as_ref().map(|x| x.to_i64_rows(f)))
                    .collect(),
            ));
        }
        ModuleFile {
            format: 1,
            m: v.m(),
            p: f.characteristic(),
            window: v.window().upper.clone(),
            dims: v.dims().to_ordered(),
            transpositions: OrderedMap(transpositions),
            inclusions: OrderedMap(inclusions),
        }
    }

    /// Builds the module, checking shapes; relations are left to
    /// [`TruncatedModule::validate`].
    pub fn to_module(&self) -> Result<TruncatedModule> {
        if self.format != 1 {
            return Err(Error::Format(format!("unsupported format version {}", self.format)));
        }
        if self.window.len() != self.m {
            return Err(Error::Format(format!("window has {} entries, m = {}", self.window.len(), self.m)));
        }
        let field = FieldSpec::new(self.p)?;
        let window = DegreeBox::new(self.window.clone());
        let dims = DimTable::from_ordered(window.clone(), &self.dims)?;
        let keys = self.transpositions.0.iter().map(|(k, _)| k);
        for k in keys.chain(self.inclusions.0.iter().map(|(k, _)| k)) {
            if !window.contains(&crate::category::parse_degree_key(k)?) {
                return Err(Error::Format(format!("degree `{k}` outside the window")));
            }
        }
        let matrix = |rows: &Rows, r: usize, c: usize, what: &str| -> Result<Matrix> {
            let mat = if rows.is_empty() {
                Matrix::zero(0, c)
            } else {
                Matrix::from_i64_rows(field, rows)?
            };
            if mat.rows() != r || mat.cols() != c {
                return Err(Error::Format(format!(
                    "{what} is {}x{}, expected {r}x{c}",
                    mat.rows(),
                    mat.cols()
                )));
            }
            Ok(mat)
        };
        let err = std::cell::RefCell::new(None);
        let module = TruncatedModule::from_generators(
            field,
            window.clone(),
            |n| dims.get(n),
            |n, j, i| {
                let key = degree_key(n);
                let what = format!("transposition s_{i} of factor {j} at \"{key}\"");
                let d = dims.get(n);
                let found = self
                    .transpositions
                    .get(&key)
                    .and_then(|t| t.get(j))
                    .and_then(|t| t.get(i))
                    .ok_or_else(|| Error::Format(format!("missing {what}")))
                    .and_then(|rows| matrix(rows, d, d, &what));
                found.unwrap_or_else(|e| {
                    err.borrow_mut().get_or_insert(e);
                    Matrix::zero(d, d)
                })
            },
            |n, j| {
                let key = degree_key(n);
                let mut up = n.to_vec();
                up[j] += 1;
                let what = format!("inclusion in direction {j} at \"{key}\"");
                let (r, c) = (dims.get(&up), dims.get(n));
                if r == 0 || c == 0 {
                    return Matrix::zero(r, c);
                }
                let found = self
                    .inclusions
                    .get(&key)
                    .and_then(|t| t.get(j))
                    .and_then(Option::as_ref)
                    .ok_or_else(|| Error::Format(format!("missing {what}")))
                    .and_then(|rows| matrix(rows, r, c, &what));
                found.unwrap_or_else(|e| {
                    err.borrow_mut().get_or_insert(e);
                    Matrix::zero(r, c)
                })
            },
        );
        if let Some(e) = err.into_inner() {
            return Err(e);
        }
        module
    }
}
