//! `FI^m` homology: `H_0`, higher `H_i` through the Koszul complex, the
//! homological-degree sets `HD_i`, and semi-induced resolutions.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::category::{subsets_of_size, DegreeBox, DegreeVector, InjectionTuple, Window};
use crate::error::{Error, Result};
use crate::linalg::{self, FieldSpec, Matrix, Quotient};
use crate::module::{direct_sum, induced_cover, ModuleMap, TruncatedModule};
use crate::report::DimTable;
use crate::upset::UpSet;

/// `V_{<n}`: the `S_n`-span of the images of `V_{n-e_j}` for all `j`.
pub fn lower_span(v: &TruncatedModule, n: &[usize]) -> Matrix {
    let mut span = Matrix::zero(v.dim(n), 0);
    for j in 0..n.len() {
        if n[j] > 0 {
            let mut below = n.to_vec();
            below[j] -= 1;
            span = span.hcat(v.inclusion(&below, j));
        }
    }
    v.orbit_span(n, &span)
}

/// `H_0(V)` with, per degree, lifts of a basis of `V_n / V_{<n}`.
#[derive(Clone, Debug)]
pub struct H0 {
    pub dims: DimTable,
    pub lifts: Vec<Matrix>,
}

pub fn h0(v: &TruncatedModule) -> H0 {
    let window = v.window().clone();
    let degrees: Vec<Vec<usize>> = window.degrees().collect();
    let lifts: Vec<Matrix> = degrees
        .par_iter()
        .map(|n| Quotient::new(v.field(), v.dim(n), &lower_span(v, n)).lift)
        .collect();
    H0 {
        dims: DimTable::from_fn(&window, |n| lifts[window.index(n)].cols()),
        lifts,
    }
}

/// The Koszul complex `(S_{-•}V)_n` up to position `top`.
///
/// Position `a` is indexed by tuples `T = (T_1, .., T_m)`, `T_j ⊆ [n_j]`,
/// `Σ|T_j| = a`, each carrying `V_{n-|T|}`. The differential puts one point
/// `t` back with sign `(-1)^k`, `k` the position of `t` in the concatenation
/// of the increasing lists `T_1, .., T_m`.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    pub degree: Vec<usize>,
    pub dims: Vec<usize>,
    /// `differentials[a - 1] = d_a : C_a -> C_{a-1}`.
    pub differentials: Vec<Matrix>,
}

impl KoszulComplex {
    /// `dim H_i`; zero beyond the last built position's predecessor.
    pub fn homology(&self, field: FieldSpec, i: usize) -> usize {
        if i >= self.dims.len() {
            return 0;
        }
        let rank = |a: usize| {
            if a == 0 || a > self.differentials.len() {
                0
            } else {
                linalg::rank(field, &self.differentials[a - 1])
            }
        };
        self.dims[i] - rank(i) - rank(i + 1)
    }
}

fn subset_tuples(n: &[usize], a: usize) -> Vec<Vec<u64>> {
    fn rec(n: &[usize], j: usize, left: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if j == n.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for k in 0..=left.min(n[j]) {
            for s in subsets_of_size(n[j], k) {
                cur.push(s);
                rec(n, j + 1, left - k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, 0, a, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Builds positions `0..=top` (capped at `|n|`) and asserts `d² = 0`.
pub fn koszul_complex(v: &TruncatedModule, n: &[usize], top: usize) -> Result<KoszulComplex> {
    if !v.window().contains(n) {
        return Err(Error::OutsideWindow {
            degree: n.iter().map(|&x| x as i64).collect(),
            window: v.window().upper.clone(),
        });
    }
    let f = v.field();
    let top = top.min(n.iter().sum());
    let sizes = |t: &[u64]| -> Vec<usize> {
        n.iter().zip(t).map(|(&x, s)| x - s.count_ones() as usize).collect()
    };
    let tuples: Vec<Vec<Vec<u64>>> = (0..=top).map(|a| subset_tuples(n, a)).collect();
    let offsets: Vec<(HashMap<Vec<u64>, usize>, usize)> = tuples
        .iter()
        .map(|ts| {
            let mut map = HashMap::new();
            let mut total = 0;
            for t in ts {
                map.insert(t.clone(), total);
                total += v.dim(&sizes(t));
            }
            (map, total)
        })
        .collect();
    let mut cache: HashMap<(Vec<usize>, usize, usize), Matrix> = HashMap::new();
    let mut differentials = Vec::new();
    for a in 1..=top {
        let mut d = Matrix::zero(offsets[a - 1].1, offsets[a].1);
        for t in &tuples[a] {
            let src = sizes(t);
            let col = offsets[a].0[t];
            if v.dim(&src) == 0 {
                continue;
            }
            let mut k = 0;
            for j in 0..n.len() {
                for x in 0..n[j] {
                    if t[j] >> x & 1 == 0 {
                        continue;
                    }
                    let mut smaller = t.clone();
                    smaller[j] &= !(1 << x);
                    let tgt = sizes(&smaller);
                    // Points of the complement of T_j below x.
                    let p = x - (t[j] & ((1 << x) - 1)).count_ones() as usize;
                    let block = cache.entry((src.clone(), j, p)).or_insert_with(|| {
                        let images = src
                            .iter()
                            .enumerate()
                            .map(|(l, &len)| {
                                (0..len).map(|y| if l == j && y >= p { y + 1 } else { y }).collect()
                            })
                            .collect();
                        v.transition(&InjectionTuple::new(tgt.clone(), images).expect("skip map"))
                    });
                    let block = if k % 2 == 1 { block.neg(f) } else { block.clone() };
                    d.set_block(offsets[a - 1].0[&smaller], col, &block);
                    k += 1;
                }
            }
        }
        differentials.push(d);
    }
    for a in 1..differentials.len() {
        assert!(
            differentials[a - 1].mul(f, &differentials[a]).is_zero(),
            "Koszul differential does not square to zero at {n:?}, position {}",
            a + 1
        );
    }
    Ok(KoszulComplex {
        degree: n.to_vec(),
        dims: offsets.iter().map(|o| o.1).collect(),
        differentials,
    })
}

pub fn koszul_homology(v: &TruncatedModule, i: usize, n: &[usize]) -> Result<usize> {
    Ok(koszul_complex(v, n, i + 1)?.homology(v.field(), i))
}

/// `dim H_i(V)_n` for `i = 0..=imax` at every degree of the window.
pub fn homology_tables(v: &TruncatedModule, imax: usize) -> Vec<DimTable> {
    let window = v.window().clone();
    let degrees: Vec<Vec<usize>> = window.degrees().collect();
    let per_degree: Vec<Vec<usize>> = degrees
        .par_iter()
        .map(|n| {
            let c = koszul_complex(v, n, imax + 1).expect("degree in window");
            (0..=imax).map(|i| c.homology(v.field(), i)).collect()
        })
        .collect();
    (0..=imax)
        .map(|i| DimTable::from_fn(&window, |n| per_degree[window.index(n)][i]))
        .collect()
}

/// The default search box `[-D, D - 1]` for `HD_i`.
pub fn default_search(window: &DegreeBox) -> Window {
    let d = DegreeVector::from_naturals(&window.upper);
    Window {
        lower: d.scaled(-1),
        upper: d.minus(&DegreeVector(vec![1; window.m()])),
    }
}

/// Rejects search boxes reaching past `D - 1`, where the "one positive
/// step" condition would look only outside the stored degrees.
pub fn check_search(window: &DegreeBox, search: &Window, bound: &DegreeVector) -> Result<()> {
    if search.m() != window.m() || !search.upper.le(bound) {
        return Err(Error::OutsideWindow {
            degree: search.upper.0.clone(),
            window: window.upper.clone(),
        });
    }
    Ok(())
}

/// `r` is blocked by `n` when `n ∈ r + e_j + N^m` for some `j`.
pub fn one_step_above(n: &[usize], r: &DegreeVector) -> bool {
    let mut strict = false;
    for (&x, &y) in n.iter().zip(&r.0) {
        let x = x as i64;
        if x < y {
            return false;
        }
        strict |= x > y;
    }
    strict
}

/// `HD_i(V)` on `search`, deciding the vanishing of `H_i` on window degrees.
pub fn hd_set_from_table(table: &DimTable, search: Window) -> Result<UpSet> {
    let d = DegreeVector::from_naturals(&table.window.upper);
    check_search(&table.window, &search, &d.minus(&DegreeVector(vec![1; d.m()])))?;
    let support = table.support();
    UpSet::from_predicate(search, |r| !support.iter().any(|n| one_step_above(n, r)))
}

pub fn hd_set(v: &TruncatedModule, i: usize, search: Window) -> Result<UpSet> {
    let tables = homology_tables(v, i);
    hd_set_from_table(&tables[i], search)
}

/// A complex `... -> F^(1) -> F^(0) -> V` of direct sums of induced modules.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub modules: Vec<Arc<TruncatedModule>>,
    /// `maps[0] : F^(0) -> V`, `maps[i] : F^(i) -> F^(i-1)`.
    pub maps: Vec<ModuleMap>,
    /// `kernels[i] = ker maps[i]`.
    pub kernels: Vec<Arc<TruncatedModule>>,
    /// Degrees of the induced summands of each `F^(i)`.
    pub generator_degrees: Vec<Vec<Vec<usize>>>,
}

/// `S_n`-stable complement of the stable subspace `sub` in `V_n`, via the
/// Reynolds average of a projection onto `sub`.
fn stable_complement(v: &TruncatedModule, n: &[usize], sub: &Matrix) -> Result<Matrix> {
    let f = v.field();
    let dim = v.dim(n);
    let q = Quotient::new(f, dim, sub);
    if q.dim() == 0 {
        return Ok(Matrix::zero(dim, 0));
    }
    let full = q.subspace.hcat(&q.lift);
    let inv = linalg::inverse(f, &full).expect("basis completion");
    let rows: Vec<usize> = (0..q.subspace.cols()).collect();
    let mut avg = q.subspace.mul(f, &inv.select_rows(&rows));
    // Σ_{S_k} g X g^{-1} = Σ_i τ_i (Σ_{S_{k-1}} g X g^{-1}) τ_i, τ_i = (i k-1).
    let mut order: u64 = 1;
    for j in 0..n.len() {
        for k in 2..=n[j] {
            let mut sum = avg.clone();
            for i in 0..k - 1 {
                let mut perm: Vec<usize> = (0..n[j]).collect();
                perm.swap(i, k - 1);
                let mut sigma: Vec<Vec<usize>> = n.iter().map(|&x| (0..x).collect()).collect();
                sigma[j] = perm;
                let tau = v.permutation_matrix(n, &sigma);
                sum = sum.add(f, &tau.mul(f, &avg.mul(f, &tau)));
            }
            avg = sum;
            order = order * k as u64 % f.characteristic() as u64;
        }
    }
    if order == 0 {
        return Err(Error::InvalidField(f.characteristic()));
    }
    let avg = avg.scale(f, f.inv(order as u32));
    let complement = Matrix::identity(dim).sub(f, &avg);
    let basis = linalg::column_basis(f, &complement);
    debug_assert_eq!(basis.cols(), q.dim());
    Ok(basis)
}

/// Cover of `V` by `⊕_n M(W_n)`, `W_n` a stable complement of `V_{<n}`.
pub fn semi_induced_cover(v: &Arc<TruncatedModule>) -> Result<(Arc<TruncatedModule>, ModuleMap, Vec<Vec<usize>>)> {
    let mut parts = Vec::new();
    let mut degrees = Vec::new();
    for n in v.window().degrees() {
        let sub = lower_span(v, &n);
        if sub.cols() == v.dim(&n) {
            continue;
        }
        let w = stable_complement(v, &n, &sub)?;
        parts.push(induced_cover(v, &n, &w)?);
        degrees.push(n);
    }
    if parts.is_empty() {
        let zero = Arc::new(TruncatedModule::zero(v.field(), v.window().clone()));
        let map = ModuleMap::zero(&zero, v)?;
        return Ok((zero, map, degrees));
    }
    let modules: Vec<&TruncatedModule> = parts.iter().map(|(m, _)| m.as_ref()).collect();
    let sum = Arc::new(direct_sum(&modules)?);
    let maps: Vec<&ModuleMap> = parts.iter().map(|(_, m)| m).collect();
    let map = ModuleMap::from_blocks(sum.clone(), v.clone(), &maps)?;
    Ok((sum, map, degrees))
}

/// Iterated semi-induced covers of `V`, `length + 1` modules `F^(0..=length)`.
///
/// Each cover needs a generator degree strictly above the previous ones, so
/// a request longer than `|D|` cannot be met on the window.
pub fn semi_induced_resolution(v: &Arc<TruncatedModule>, length: usize) -> Result<Resolution> {
    let total: usize = v.window().upper.iter().sum();
    if length > total {
        return Err(Error::WindowExhausted {
            reason: format!("resolution of length {length} needs more than |D| = {total} steps"),
            largest_shift: None,
        });
    }
    let f = v.field();
    if v.window().upper.iter().any(|&d| d as u32 >= f.characteristic()) {
        return Err(Error::InvalidField(f.characteristic()));
    }
    let mut res = Resolution {
        modules: Vec::new(),
        maps: Vec::new(),
        kernels: Vec::new(),
        generator_degrees: Vec::new(),
    };
    let mut cur = v.clone();
    let mut into: Option<ModuleMap> = None;
    for _ in 0..=length {
        let (fmod, cover, degrees) = semi_induced_cover(&cur)?;
        let (ker, incl) = cover.kernel()?;
        let map = match &into {
            Some(i) => i.compose(&cover)?,
            None => cover,
        };
        res.modules.push(fmod);
        res.maps.push(map);
        res.kernels.push(ker.clone());
        res.generator_degrees.push(degrees);
        cur = ker;
        into = Some(incl);
    }
    Ok(res)
}

/// Serializable summary of a resolution.
#[derive(Clone, Debug, Serialize)]
pub struct ResolutionReport {
    pub dims: Vec<DimTable>,
    pub generator_degrees: Vec<Vec<Vec<usize>>>,
}

impl Resolution {
    pub fn report(&self) -> ResolutionReport {
        ResolutionReport {
            dims: self.modules.iter().map(|m| m.dims()).collect(),
            generator_degrees: self.generator_degrees.clone(),
        }
    }
}
