use std::collections::HashMap;
use std::sync::Arc;

use crate::category::{subsets_of_size, DegreeBox, InjectionTuple, Perm};
use crate::error::{Error, Result};
use crate::linalg::{self, FieldSpec, Matrix};

use super::rep::swap_point;
use super::{ModuleMap, SymmetricGroupRep, TruncatedModule};

/// Basis of `M(W)_n`: tuples of `r_j`-subsets of `[n_j]` (lexicographic in
/// the bitmasks), each carrying a copy of `W`.
struct SubsetBasis {
    lists: Vec<Vec<u64>>,
    positions: Vec<HashMap<u64, usize>>,
}

impl SubsetBasis {
    fn new(r: &[usize], n: &[usize]) -> Self {
        let lists: Vec<Vec<u64>> = r.iter().zip(n).map(|(&k, &nn)| subsets_of_size(nn, k)).collect();
        let positions = lists
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, &s)| (s, i)).collect())
            .collect();
        SubsetBasis { lists, positions }
    }

    fn len(&self) -> usize {
        self.lists.iter().map(Vec::len).product()
    }

    fn tuple(&self, mut idx: usize) -> Vec<u64> {
        let mut t = vec![0; self.lists.len()];
        for j in (0..self.lists.len()).rev() {
            let len = self.lists[j].len();
            t[j] = self.lists[j][idx % len];
            idx /= len;
        }
        t
    }

    fn index(&self, t: &[u64]) -> usize {
        let mut idx = 0;
        for (j, s) in t.iter().enumerate() {
            idx = idx * self.lists[j].len() + self.positions[j][s];
        }
        idx
    }
}

fn elements(mask: u64) -> Vec<usize> {
    (0..64).filter(|&b| mask >> b & 1 == 1).collect()
}

/// Image of `f_A` under an injection `g`: the image subsets and the
/// permutation `pi` with `g ∘ f_A = f_{g(A)} ∘ pi`.
fn push_subsets(g: &dyn Fn(usize, usize) -> usize, tuple: &[u64]) -> (Vec<u64>, Vec<Perm>) {
    let mut masks = Vec::with_capacity(tuple.len());
    let mut pis = Vec::with_capacity(tuple.len());
    for (j, &a) in tuple.iter().enumerate() {
        let imgs: Vec<usize> = elements(a).into_iter().map(|x| g(j, x)).collect();
        let mut sorted = imgs.clone();
        sorted.sort_unstable();
        pis.push(
            imgs.iter()
                .map(|y| sorted.binary_search(y).expect("present"))
                .collect(),
        );
        masks.push(imgs.iter().fold(0u64, |acc, &y| acc | 1 << y));
    }
    (masks, pis)
}

/// The induced module `M(W) = k[Hom(r, -)] ⊗_{k[S_r]} W` on `window`.
pub fn induced(field: FieldSpec, w: &SymmetricGroupRep, window: &DegreeBox) -> Result<TruncatedModule> {
    let r = w.degree.clone();
    if r.len() != window.m() || !window.contains(&r) {
        return Err(Error::OutsideWindow {
            degree: r.iter().map(|&x| x as i64).collect(),
            window: window.upper.clone(),
        });
    }
    let above = |n: &[usize]| n.iter().zip(&r).all(|(a, b)| a >= b);
    let mut w_cache: HashMap<Vec<Perm>, Matrix> = HashMap::new();
    let mut act = |n: &[usize], target: &[usize], g: &dyn Fn(usize, usize) -> usize| -> Matrix {
        let src = SubsetBasis::new(&r, n);
        let tgt = SubsetBasis::new(&r, target);
        let d = w.dim;
        let mut out = Matrix::zero(tgt.len() * d, src.len() * d);
        for c in 0..src.len() {
            let (masks, pis) = push_subsets(g, &src.tuple(c));
            let row = tgt.index(&masks);
            let block = w_cache
                .entry(pis.clone())
                .or_insert_with(|| w.action(field, &pis))
                .clone();
            out.set_block(row * d, c * d, &block);
        }
        out
    };
    let dims = |n: &[usize]| {
        if above(n) {
            SubsetBasis::new(&r, n).len() * w.dim
        } else {
            0
        }
    };
    TruncatedModule::from_generators(
        field,
        window.clone(),
        dims,
        |n, j, i| act(n, n, &|l, x| if l == j { swap_point(x, i) } else { x }),
        |n, j| {
            let mut up = n.to_vec();
            up[j] += 1;
            let src = SubsetBasis::new(&r, n);
            let tgt = SubsetBasis::new(&r, &up);
            let d = w.dim;
            let mut out = Matrix::zero(tgt.len() * d, src.len() * d);
            for c in 0..src.len() {
                let row = tgt.index(&src.tuple(c));
                out.set_block(row * d, c * d, &Matrix::identity(d));
            }
            out
        },
    )
}

/// The counit `M(W) -> V` for an `S_n`-stable subspace `W ⊆ V_n` spanned by
/// the independent columns of `basis`: `f_A ⊗ w ↦ V(f_A) w`.
pub fn induced_cover(v: &Arc<TruncatedModule>, n: &[usize], basis: &Matrix) -> Result<(Arc<TruncatedModule>, ModuleMap)> {
    let f = v.field();
    let gens = v
        .rep_at(n)
        .generators
        .iter()
        .map(|gs| {
            gs.iter()
                .map(|g| {
                    linalg::solve(f, basis, &g.mul(f, basis)).ok_or_else(|| {
                        Error::NotWellDefined("cover subspace is not S_n-stable".into())
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let w = SymmetricGroupRep::new(n.to_vec(), basis.cols(), gens)?;
    let mw = Arc::new(induced(f, &w, v.window())?);
    let window = v.window().clone();
    let components = window
        .degrees()
        .map(|target| {
            if !n.iter().zip(&target).all(|(a, b)| a <= b) {
                return Matrix::zero(v.dim(&target), 0);
            }
            let sb = SubsetBasis::new(n, &target);
            let d = basis.cols();
            let mut out = Matrix::zero(v.dim(&target), sb.len() * d);
            for c in 0..sb.len() {
                let images = sb.tuple(c).into_iter().map(elements).collect();
                let fa = InjectionTuple::new(target.clone(), images).expect("subset injection");
                let block = v.transition(&fa).mul(f, basis);
                out.set_block(0, c * d, &block);
            }
            out
        })
        .collect();
    let map = ModuleMap::new(mw.clone(), v.clone(), components)?;
    Ok((mw, map))
}

/// `Σ_j V`: precomposition with "append one point to factor `j`". The window
/// shrinks by `e_j`.
pub fn shift_one(v: &TruncatedModule, j: usize) -> Result<TruncatedModule> {
    let mut unit = vec![0; v.m()];
    unit[j] = 1;
    let window = v
        .window()
        .shrink(&unit)
        .ok_or_else(|| Error::DegenerateWindow(v.window().upper.clone()))?;
    let f = v.field();
    let up = |n: &[usize]| {
        let mut u = n.to_vec();
        u[j] += 1;
        u
    };
    TruncatedModule::from_generators(
        f,
        window,
        |n| v.dim(&up(n)),
        |n, l, i| v.transposition(&up(n), l, i).clone(),
        |n, l| {
            let nu = up(n);
            if l != j {
                v.inclusion(&nu, l).clone()
            } else {
                // ι_j(std) sends the appended point to the new appended point.
                let mut top = nu.clone();
                top[j] += 1;
                v.transposition(&top, j, n[j]).mul(f, v.inclusion(&nu, j))
            }
        },
    )
}

/// `Σ_a V = Σ_1^{a_1} ∘ ... ∘ Σ_m^{a_m} V`, so `(Σ_a V)_n = V_{n+a}`.
pub fn shift(v: &TruncatedModule, a: &[usize]) -> Result<TruncatedModule> {
    if a.len() != v.m() {
        return Err(Error::Shape("shift vector has the wrong length".into()));
    }
    if v.window().shrink(a).is_none() {
        return Err(Error::WindowExhausted {
            reason: format!("shift by {a:?} empties window {:?}", v.window().upper),
            largest_shift: Some(a.to_vec()),
        });
    }
    let mut cur = v.clone();
    for (j, &aj) in a.iter().enumerate().rev() {
        for _ in 0..aj {
            cur = shift_one(&cur, j)?;
        }
    }
    Ok(cur)
}

/// The unit `V -> Σ_j V` (on the shrunken window).
pub fn shift_unit(v: &Arc<TruncatedModule>, j: usize) -> Result<ModuleMap> {
    let mut a = vec![0; v.m()];
    a[j] = 1;
    shift_unit_to(v, &a)
}

/// The map `V -> Σ_a V` induced by the inclusions `[n] -> [n + a]`.
pub fn shift_unit_to(v: &Arc<TruncatedModule>, a: &[usize]) -> Result<ModuleMap> {
    let target = Arc::new(shift(v, a)?);
    let window = target.window().clone();
    let source = Arc::new(v.restrict(&window)?);
    let components = window
        .degrees()
        .map(|n| {
            let up: Vec<usize> = n.iter().zip(a).map(|(x, y)| x + y).collect();
            v.standard_map(&n, &up)
        })
        .collect();
    ModuleMap::new(source, target, components)
}

/// The left adjoint of `Σ_j`: `(Ind_j V)_n = Ind_{S_{n-e_j}}^{S_n} V_{n-e_j}`.
/// The window grows by `e_j`.
pub fn induction_adjoint(v: &TruncatedModule, j: usize) -> Result<TruncatedModule> {
    let f = v.field();
    let m = v.m();
    let mut upper = v.window().upper.clone();
    upper[j] += 1;
    let window = DegreeBox::new(upper);
    let down = |n: &[usize]| {
        let mut d = n.to_vec();
        d[j] -= 1;
        d
    };
    // (p, x) ↦ (g(p), V(u) x) with u = φ_{g(p)}^{-1} ∘ g ∘ φ_p.
    let act = |n: &[usize], target: &[usize], g: &dyn Fn(usize, usize) -> usize| -> Matrix {
        let src_lower = down(n);
        let tgt_lower = down(target);
        let d_src = v.dim(&src_lower);
        let d_tgt = v.dim(&tgt_lower);
        let mut out = Matrix::zero(target[j] * d_tgt, n[j] * d_src);
        for p in 0..n[j] {
            let q = g(j, p);
            let images = (0..m)
                .map(|l| {
                    (0..src_lower[l])
                        .map(|x| {
                            if l != j {
                                g(l, x)
                            } else {
                                let y = g(j, if x < p { x } else { x + 1 });
                                if y < q {
                                    y
                                } else {
                                    y - 1
                                }
                            }
                        })
                        .collect()
                })
                .collect();
            let u = InjectionTuple::new(tgt_lower.clone(), images).expect("restricted injection");
            out.set_block(q * d_tgt, p * d_src, &v.transition(&u));
        }
        out
    };
    TruncatedModule::from_generators(
        f,
        window,
        |n| if n[j] == 0 { 0 } else { n[j] * v.dim(&down(n)) },
        |n, l, i| act(n, n, &|ll, x| if ll == l { swap_point(x, i) } else { x }),
        |n, l| {
            let mut up = n.to_vec();
            up[l] += 1;
            act(n, &up, &|_, x| x)
        },
    )
}

/// `V|_{>= r}`, the submodule generated by `V_r`, with its inclusion.
pub fn truncate_above(v: &Arc<TruncatedModule>, r: &[usize]) -> Result<(Arc<TruncatedModule>, ModuleMap)> {
    let window = v.window().clone();
    if !window.contains(r) {
        return Err(Error::OutsideWindow {
            degree: r.iter().map(|&x| x as i64).collect(),
            window: window.upper.clone(),
        });
    }
    let f = v.field();
    let mut bases: Vec<Matrix> = Vec::with_capacity(window.len());
    for n in window.degrees() {
        let dim = v.dim(&n);
        let basis = if !r.iter().zip(&n).all(|(a, b)| a <= b) {
            Matrix::zero(dim, 0)
        } else if n == r {
            Matrix::identity(dim)
        } else {
            let mut span = Matrix::zero(dim, 0);
            for j in 0..n.len() {
                if n[j] > r[j] {
                    let mut below = n.clone();
                    below[j] -= 1;
                    let b: &Matrix = &bases[window.index(&below)];
                    span = span.hcat(&v.inclusion(&below, j).mul(f, b));
                }
            }
            v.orbit_span(&n, &span)
        };
        bases.push(basis);
    }
    v.submodule(bases)
}

/// Direct sum, blocks in argument order.
pub fn direct_sum(parts: &[&TruncatedModule]) -> Result<TruncatedModule> {
    let first = parts
        .first()
        .ok_or_else(|| Error::Shape("direct sum of no modules".into()))?;
    let f = first.field();
    let window = first.window().clone();
    if parts.iter().any(|p| p.window() != &window || p.field() != f) {
        return Err(Error::Shape("direct sum summands must share window and field".into()));
    }
    TruncatedModule::from_generators(
        f,
        window,
        |n| parts.iter().map(|p| p.dim(n)).sum(),
        |n, j, i| {
            let blocks: Vec<&Matrix> = parts.iter().map(|p| p.transposition(n, j, i)).collect();
            Matrix::block_diagonal(&blocks)
        },
        |n, j| {
            let blocks: Vec<&Matrix> = parts.iter().map(|p| p.inclusion(n, j)).collect();
            Matrix::block_diagonal(&blocks)
        },
    )
}
