//! `FI^m`-modules truncated to a degree box.
//!
//! A [`TruncatedModule`] stores, for every degree `n` in its box, the
//! dimension of `V_n`, the matrices of the adjacent transpositions of each
//! factor of `S_n`, and the standard one-step inclusions `V_n -> V_{n+e_j}`.
//! Every other structure map is assembled on demand through
//! [`InjectionTuple::factorize`].

mod construct;
mod json;
mod map;
mod presets;
mod rep;
mod validate;

use std::collections::HashMap;
use std::sync::Arc;

pub use construct::{
    direct_sum, induced, induced_cover, induction_adjoint, shift, shift_one, shift_unit, shift_unit_to,
    truncate_above,
};
pub use json::ModuleFile;
pub use map::{hom_dimension, homology_of_pair, MapKind, ModuleMap};
pub use presets::{preset, PresetName};
pub use rep::SymmetricGroupRep;

use crate::category::{adjacent_word, DegreeBox, InjectionTuple, Perm};
use crate::error::{Error, Result};
use crate::linalg::{self, FieldSpec, Matrix};
use crate::report::DimTable;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct DegreeData {
    pub dim: usize,
    /// `[j][i]`: the matrix of `s_i` in factor `j`.
    pub transpositions: Vec<Vec<Matrix>>,
    /// `[j]`: the standard map `V_n -> V_{n+e_j}`, absent on the top face.
    pub inclusions: Vec<Option<Matrix>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedModule {
    field: FieldSpec,
    window: DegreeBox,
    data: Vec<DegreeData>,
}

impl TruncatedModule {
    /// Assembles a module from per-degree generator matrices. Shapes are
    /// checked here; relations are checked by [`TruncatedModule::validate`].
    pub fn from_generators<D, T, I>(
        field: FieldSpec,
        window: DegreeBox,
        dims: D,
        mut transposition: T,
        mut inclusion: I,
    ) -> Result<Self>
    where
        D: Fn(&[usize]) -> usize,
        T: FnMut(&[usize], usize, usize) -> Matrix,
        I: FnMut(&[usize], usize) -> Matrix,
    {
        let m = window.m();
        let dim_table: Vec<usize> = window.degrees().map(|n| dims(&n)).collect();
        let mut data = Vec::with_capacity(window.len());
        for (idx, n) in window.degrees().enumerate() {
            let dim = dim_table[idx];
            let mut transpositions = Vec::with_capacity(m);
            for j in 0..m {
                let mut gens = Vec::new();
                for i in 0..n[j].saturating_sub(1) {
                    let t = if dim == 0 {
                        Matrix::zero(0, 0)
                    } else {
                        transposition(&n, j, i)
                    };
                    if t.rows() != dim || t.cols() != dim {
                        return Err(Error::Shape(format!(
                            "transposition s_{i} of factor {j} at {n:?} is {}x{}, expected {dim}x{dim}",
                            t.rows(),
                            t.cols()
                        )));
                    }
                    gens.push(t);
                }
                transpositions.push(gens);
            }
            let mut inclusions = Vec::with_capacity(m);
            for j in 0..m {
                if n[j] == window.upper[j] {
                    inclusions.push(None);
                    continue;
                }
                let mut up = n.clone();
                up[j] += 1;
                let tdim = dim_table[window.index(&up)];
                let inc = if dim == 0 || tdim == 0 {
                    Matrix::zero(tdim, dim)
                } else {
                    inclusion(&n, j)
                };
                if inc.rows() != tdim || inc.cols() != dim {
                    return Err(Error::Shape(format!(
                        "inclusion {n:?} -> {up:?} is {}x{}, expected {tdim}x{dim}",
                        inc.rows(),
                        inc.cols()
                    )));
                }
                inclusions.push(Some(inc));
            }
            data.push(DegreeData {
                dim,
                transpositions,
                inclusions,
            });
        }
        Ok(TruncatedModule {
            field,
            window,
            data,
        })
    }

    pub fn zero(field: FieldSpec, window: DegreeBox) -> Self {
        Self::from_generators(
            field,
            window,
            |_| 0,
            |_, _, _| Matrix::zero(0, 0),
            |_, _| Matrix::zero(0, 0),
        )
        .expect("zero module shapes are consistent")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn window(&self) -> &DegreeBox {
        &self.window
    }

    pub fn m(&self) -> usize {
        self.window.m()
    }

    pub(crate) fn degree_data(&self, n: &[usize]) -> &DegreeData {
        &self.data[self.window.index(n)]
    }

    #[allow(dead_code)]
    pub(crate) fn degree_data_mut(&mut self, n: &[usize]) -> &mut DegreeData {
        let idx = self.window.index(n);
        &mut self.data[idx]
    }

    /// `dim V_n`; panics outside the window.
    pub fn dim(&self, n: &[usize]) -> usize {
        assert!(self.window.contains(n), "degree {n:?} outside window {:?}", self.window.upper);
        self.data[self.window.index(n)].dim
    }

    /// `dim V_n` for `n ∈ Z^m`: zero off `N^m`, `None` above the window.
    pub fn dim_z(&self, n: &[i64]) -> Option<usize> {
        if n.iter().any(|&x| x < 0) {
            return Some(0);
        }
        let nat: Vec<usize> = n.iter().map(|&x| x as usize).collect();
        self.window.contains(&nat).then(|| self.dim(&nat))
    }

    pub fn dims(&self) -> DimTable {
        DimTable::from_fn(&self.window, |n| self.dim(n))
    }

    pub fn total_dim(&self) -> usize {
        self.data.iter().map(|d| d.dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|d| d.dim == 0)
    }

    pub fn transposition(&self, n: &[usize], j: usize, i: usize) -> &Matrix {
        &self.degree_data(n).transpositions[j][i]
    }

    /// The standard map `V_n -> V_{n+e_j}`; panics if `n + e_j` leaves the window.
    pub fn inclusion(&self, n: &[usize], j: usize) -> &Matrix {
        self.degree_data(n).inclusions[j]
            .as_ref()
            .unwrap_or_else(|| panic!("no inclusion out of {n:?} in direction {j}: top of window"))
    }

    /// Composite of standard inclusions `V_a -> V_n` (direction 0 first).
    pub fn standard_map(&self, a: &[usize], n: &[usize]) -> Matrix {
        assert!(a.iter().zip(n).all(|(x, y)| x <= y), "{a:?} is not below {n:?}");
        let mut cur = a.to_vec();
        let mut acc = Matrix::identity(self.dim(a));
        for j in 0..self.m() {
            while cur[j] < n[j] {
                acc = self.inclusion(&cur, j).mul(self.field, &acc);
                cur[j] += 1;
            }
        }
        acc
    }

    /// `V(sigma) * x` for a permutation tuple `sigma ∈ S_n`.
    pub fn apply_permutation(&self, n: &[usize], sigma: &[Perm], x: &Matrix) -> Matrix {
        let data = self.degree_data(n);
        let mut acc = x.clone();
        for (j, perm) in sigma.iter().enumerate() {
            for i in adjacent_word(perm) {
                acc = data.transpositions[j][i].mul(self.field, &acc);
            }
        }
        acc
    }

    pub fn permutation_matrix(&self, n: &[usize], sigma: &[Perm]) -> Matrix {
        self.apply_permutation(n, sigma, &Matrix::identity(self.dim(n)))
    }

    /// `V(f)` for an arbitrary injection inside the window.
    pub fn transition(&self, f: &InjectionTuple) -> Matrix {
        let fz = f.factorize();
        let a = f.source();
        let std = self.standard_map(&a, &f.target);
        self.apply_permutation(&f.target, &fz.sigma, &std)
    }

    /// The `S_n`-representation carried by `V_n`.
    pub fn rep_at(&self, n: &[usize]) -> SymmetricGroupRep {
        let d = self.degree_data(n);
        SymmetricGroupRep {
            degree: n.to_vec(),
            dim: d.dim,
            generators: d.transpositions.clone(),
        }
    }

    /// Smallest `S_n`-stable subspace containing the columns of `span`,
    /// returned as independent columns.
    pub fn orbit_span(&self, n: &[usize], span: &Matrix) -> Matrix {
        let f = self.field;
        let mut basis = linalg::column_basis(f, span);
        let gens: Vec<&Matrix> = self.degree_data(n).transpositions.iter().flatten().collect();
        if gens.is_empty() {
            return basis;
        }
        loop {
            let before = basis.cols();
            if before == 0 || before == self.dim(n) {
                return basis;
            }
            let mut all = basis.clone();
            for g in &gens {
                all = all.hcat(&g.mul(f, &basis));
            }
            basis = linalg::column_basis(f, &all);
            if basis.cols() == before {
                return basis;
            }
        }
    }

    /// The same module on the smaller box `window`.
    pub fn restrict(&self, window: &DegreeBox) -> Result<TruncatedModule> {
        if !window.le(&self.window) || window.m() != self.m() {
            return Err(Error::Shape(format!(
                "cannot restrict window {:?} to {:?}",
                self.window.upper, window.upper
            )));
        }
        let data = window
            .degrees()
            .map(|n| {
                let mut d = self.degree_data(&n).clone();
                for j in 0..self.m() {
                    if n[j] == window.upper[j] {
                        d.inclusions[j] = None;
                    }
                }
                d
            })
            .collect();
        Ok(TruncatedModule {
            field: self.field,
            window: window.clone(),
            data,
        })
    }

    /// Submodule spanned by per-degree bases (independent columns of
    /// `V_n`), which must be stable under all structure maps. Returns the
    /// module in the given bases and the inclusion map.
    pub fn submodule(self: &Arc<Self>, bases: Vec<Matrix>) -> Result<(Arc<TruncatedModule>, ModuleMap)> {
        let f = self.field;
        let window = self.window.clone();
        let restrict = |outer: &Matrix, b_src: &Matrix, b_tgt: &Matrix| -> Result<Matrix> {
            let img = outer.mul(f, b_src);
            linalg::solve(f, b_tgt, &img).ok_or_else(|| {
                Error::NotWellDefined("subspace is not stable under a structure map".into())
            })
        };
        let mut trans: HashMap<(usize, usize, usize), Matrix> = HashMap::new();
        let mut incl: HashMap<(usize, usize), Matrix> = HashMap::new();
        for (idx, n) in window.degrees().enumerate() {
            let b = &bases[idx];
            if b.cols() == 0 {
                continue;
            }
            for j in 0..self.m() {
                for i in 0..n[j].saturating_sub(1) {
                    trans.insert((idx, j, i), restrict(self.transposition(&n, j, i), b, b)?);
                }
                if n[j] < window.upper[j] {
                    let mut up = n.clone();
                    up[j] += 1;
                    let bt = &bases[window.index(&up)];
                    incl.insert((idx, j), restrict(self.inclusion(&n, j), b, bt)?);
                }
            }
        }
        let sub = TruncatedModule::from_generators(
            f,
            window.clone(),
            |n| bases[window.index(n)].cols(),
            |n, j, i| trans.remove(&(window.index(n), j, i)).expect("computed above"),
            |n, j| incl.remove(&(window.index(n), j)).expect("computed above"),
        )?;
        let sub = Arc::new(sub);
        let map = ModuleMap::new(sub.clone(), self.clone(), bases)?;
        Ok((sub, map))
    }

    /// Quotient by per-degree stable subspaces, with the projection map.
    pub fn quotient(self: &Arc<Self>, subspaces: &[Matrix]) -> Result<(Arc<TruncatedModule>, ModuleMap)> {
        let f = self.field;
        let window = self.window.clone();
        let quotients: Vec<linalg::Quotient> = window
            .degrees()
            .enumerate()
            .map(|(idx, n)| linalg::Quotient::new(f, self.dim(&n), &subspaces[idx]))
            .collect();
        let mut trans = HashMap::new();
        let mut incl = HashMap::new();
        for (idx, n) in window.degrees().enumerate() {
            let q = &quotients[idx];
            if q.dim() == 0 {
                continue;
            }
            for j in 0..self.m() {
                for i in 0..n[j].saturating_sub(1) {
                    trans.insert((idx, j, i), q.induced(f, self.transposition(&n, j, i), q)?);
                }
                if n[j] < window.upper[j] {
                    let mut up = n.clone();
                    up[j] += 1;
                    let qt = &quotients[window.index(&up)];
                    incl.insert((idx, j), q.induced(f, self.inclusion(&n, j), qt)?);
                }
            }
        }
        let quot = TruncatedModule::from_generators(
            f,
            window.clone(),
            |n| quotients[window.index(n)].dim(),
            |n, j, i| trans.remove(&(window.index(n), j, i)).expect("computed above"),
            |n, j| incl.remove(&(window.index(n), j)).expect("computed above"),
        )?;
        let quot = Arc::new(quot);
        let proj = ModuleMap::new(
            self.clone(),
            quot.clone(),
            quotients.into_iter().map(|q| q.projection).collect(),
        )?;
        Ok((quot, proj))
    }

    /// Empty report iff every relation holds exactly.
    pub fn validate(&self) -> Vec<String> {
        validate::violations(self)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}
