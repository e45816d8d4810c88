use std::sync::Arc;

use crate::category::{degree_key, DegreeBox};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

use super::{shift, TruncatedModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Kernel,
    Image,
    Cokernel,
}

/// A natural transformation between modules on the same window.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    source: Arc<TruncatedModule>,
    target: Arc<TruncatedModule>,
    components: Vec<Matrix>,
}

impl ModuleMap {
    /// Checks shapes only; naturality is checked by [`ModuleMap::validate`].
    pub fn new(source: Arc<TruncatedModule>, target: Arc<TruncatedModule>, components: Vec<Matrix>) -> Result<Self> {
        if source.window() != target.window() || source.field() != target.field() {
            return Err(Error::InvalidMap(format!(
                "source window {:?} and target window {:?} differ",
                source.window().upper,
                target.window().upper
            )));
        }
        let window = source.window();
        if components.len() != window.len() {
            return Err(Error::InvalidMap("one component per degree expected".into()));
        }
        for (n, c) in window.degrees().zip(&components) {
            if c.rows() != target.dim(&n) || c.cols() != source.dim(&n) {
                return Err(Error::InvalidMap(format!(
                    "component at ({}) is {}x{}, expected {}x{}",
                    degree_key(&n),
                    c.rows(),
                    c.cols(),
                    target.dim(&n),
                    source.dim(&n)
                )));
            }
        }
        Ok(ModuleMap {
            source,
            target,
            components,
        })
    }

    pub fn identity(v: &Arc<TruncatedModule>) -> Self {
        let components = v.window().degrees().map(|n| Matrix::identity(v.dim(&n))).collect();
        ModuleMap {
            source: v.clone(),
            target: v.clone(),
            components,
        }
    }

    pub fn zero(source: &Arc<TruncatedModule>, target: &Arc<TruncatedModule>) -> Result<Self> {
        let components = source
            .window()
            .degrees()
            .map(|n| Matrix::zero(target.dim(&n), source.dim(&n)))
            .collect();
        Self::new(source.clone(), target.clone(), components)
    }

    /// The map out of a direct sum whose blocks are `parts`, in order.
    pub fn from_blocks(source: Arc<TruncatedModule>, target: Arc<TruncatedModule>, parts: &[&ModuleMap]) -> Result<Self> {
        let window = target.window().clone();
        let components = window
            .degrees()
            .enumerate()
            .map(|(idx, n)| {
                parts
                    .iter()
                    .fold(Matrix::zero(target.dim(&n), 0), |acc, p| acc.hcat(&p.components[idx]))
            })
            .collect();
        Self::new(source, target, components)
    }

    pub fn source(&self) -> &Arc<TruncatedModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<TruncatedModule> {
        &self.target
    }

    pub fn window(&self) -> &DegreeBox {
        self.source.window()
    }

    pub fn component(&self, n: &[usize]) -> &Matrix {
        &self.components[self.window().index(n)]
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    /// Naturality against every generator; empty when the map is valid.
    pub fn validate(&self) -> Vec<String> {
        let f = self.source.field();
        let window = self.window();
        let mut out = Vec::new();
        for (idx, n) in window.degrees().enumerate() {
            let phi = &self.components[idx];
            for j in 0..n.len() {
                for i in 0..n[j].saturating_sub(1) {
                    let lhs = self.target.transposition(&n, j, i).mul(f, phi);
                    let rhs = phi.mul(f, self.source.transposition(&n, j, i));
                    if lhs != rhs {
                        out.push(format!(
                            "map at ({}) does not commute with s_{i} of factor {j}",
                            degree_key(&n)
                        ));
                    }
                }
                if n[j] < window.upper[j] {
                    let mut up = n.clone();
                    up[j] += 1;
                    let lhs = self.target.inclusion(&n, j).mul(f, phi);
                    let rhs = self.component(&up).mul(f, self.source.inclusion(&n, j));
                    if lhs != rhs {
                        out.push(format!(
                            "map does not commute with the inclusion ({}) -> ({})",
                            degree_key(&n),
                            degree_key(&up)
                        ));
                    }
                }
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap) -> Result<ModuleMap> {
        if other.target.window() != self.source.window() || other.target.dims() != self.source.dims() {
            return Err(Error::InvalidMap("composed maps are not composable".into()));
        }
        let f = self.source.field();
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.mul(f, b))
            .collect();
        ModuleMap::new(other.source.clone(), self.target.clone(), components)
    }

    pub fn restrict(&self, window: &DegreeBox) -> Result<ModuleMap> {
        let source = Arc::new(self.source.restrict(window)?);
        let target = Arc::new(self.target.restrict(window)?);
        let components = window.degrees().map(|n| self.component(&n).clone()).collect();
        ModuleMap::new(source, target, components)
    }

    /// `Σ_a φ`, with components `φ_{n+a}`.
    pub fn shift(&self, a: &[usize]) -> Result<ModuleMap> {
        let source = Arc::new(shift(&self.source, a)?);
        let target = Arc::new(shift(&self.target, a)?);
        let components = source
            .window()
            .degrees()
            .map(|n| {
                let up: Vec<usize> = n.iter().zip(a).map(|(x, y)| x + y).collect();
                self.component(&up).clone()
            })
            .collect();
        ModuleMap::new(source, target, components)
    }

    pub fn rank_at(&self, n: &[usize]) -> usize {
        linalg::rank(self.source.field(), self.component(n))
    }

    pub fn is_injective(&self) -> bool {
        self.window().degrees().all(|n| self.rank_at(&n) == self.source.dim(&n))
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    /// Pointwise kernel, image or cokernel with its structural map: the
    /// inclusion for kernel and image, the projection for the cokernel.
    pub fn calculus(&self, kind: MapKind) -> Result<(Arc<TruncatedModule>, ModuleMap)> {
        let bad = self.validate();
        if !bad.is_empty() {
            return Err(Error::InvalidMap(bad.join("; ")));
        }
        self.calculus_unchecked(kind)
    }

    pub(crate) fn calculus_unchecked(&self, kind: MapKind) -> Result<(Arc<TruncatedModule>, ModuleMap)> {
        let f = self.source.field();
        match kind {
            MapKind::Kernel => self
                .source
                .submodule(self.components.iter().map(|c| linalg::kernel_basis(f, c)).collect()),
            MapKind::Image => self
                .target
                .submodule(self.components.iter().map(|c| linalg::column_basis(f, c)).collect()),
            MapKind::Cokernel => self.target.quotient(&self.components),
        }
    }

    pub fn kernel(&self) -> Result<(Arc<TruncatedModule>, ModuleMap)> {
        self.calculus_unchecked(MapKind::Kernel)
    }

    pub fn image(&self) -> Result<(Arc<TruncatedModule>, ModuleMap)> {
        self.calculus_unchecked(MapKind::Image)
    }

    pub fn cokernel(&self) -> Result<(Arc<TruncatedModule>, ModuleMap)> {
        self.calculus_unchecked(MapKind::Cokernel)
    }
}

/// `ker g / im f` for composable `f: A -> B`, `g: B -> C` with `g ∘ f = 0`.
pub fn homology_of_pair(f: &ModuleMap, g: &ModuleMap) -> Result<Arc<TruncatedModule>> {
    let field = f.source.field();
    if !g.compose(f)?.is_zero() {
        return Err(Error::InvalidMap("composite of consecutive maps is not zero".into()));
    }
    let (ker, incl) = g.kernel()?;
    let window = ker.window().clone();
    let images: Vec<Matrix> = window
        .degrees()
        .enumerate()
        .map(|(idx, _)| {
            let basis = &incl.components[idx];
            let img = &f.components[idx];
            linalg::solve(field, basis, img).expect("image lies in the kernel")
        })
        .collect();
    let (h, _) = ker.quotient(&images)?;
    Ok(h)
}

/// `dim Hom(V, U)`, the nullity of the naturality system in the unknown
/// components `φ_n` (row-major).
pub fn hom_dimension(v: &TruncatedModule, u: &TruncatedModule) -> Result<usize> {
    if v.window() != u.window() {
        return Err(Error::Shape("Hom needs modules on the same window".into()));
    }
    let f = v.field();
    let window = v.window();
    let mut offsets = Vec::with_capacity(window.len());
    let mut total = 0;
    for n in window.degrees() {
        offsets.push(total);
        total += u.dim(&n) * v.dim(&n);
    }
    let mut rows: Vec<Vec<u32>> = Vec::new();
    // Adds the equations `A φ_s - φ_t B = 0` (A: U_s -> U_t, B: V_s -> V_t).
    let mut equations = |s: &[usize], t: &[usize], a: &Matrix, b: &Matrix| {
        let (os, ot) = (offsets[window.index(s)], offsets[window.index(t)]);
        let (vs, vt) = (v.dim(s), v.dim(t));
        let (us, ut) = (u.dim(s), u.dim(t));
        for r in 0..ut {
            for c in 0..vs {
                let mut row = vec![0u32; total];
                for k in 0..us {
                    let x = a.get(r, k);
                    if x != 0 {
                        let e = &mut row[os + k * vs + c];
                        *e = f.add(*e, x);
                    }
                }
                for k in 0..vt {
                    let x = b.get(k, c);
                    if x != 0 {
                        let e = &mut row[ot + r * vt + k];
                        *e = f.sub(*e, x);
                    }
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    };
    for n in window.degrees() {
        for j in 0..n.len() {
            for i in 0..n[j].saturating_sub(1) {
                equations(&n, &n, u.transposition(&n, j, i), v.transposition(&n, j, i));
            }
            if n[j] < window.upper[j] {
                let mut up = n.clone();
                up[j] += 1;
                equations(&n, &up, u.inclusion(&n, j), v.inclusion(&n, j));
            }
        }
    }
    let system = Matrix::from_rows(rows.len(), total, rows.concat());
    Ok(total - linalg::rank(f, &system))
}
