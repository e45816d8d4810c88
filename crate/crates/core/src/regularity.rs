//! Castelnuovo–Mumford regularity sets and the constructions relating them
//! to syzygy degrees.

use std::sync::Arc;

use serde::Serialize;

use crate::category::{DegreeVector, Window};
use crate::cohomology::{nagpal_complex, torsion_split, NagpalComplex, NagpalOptions};
use crate::error::{Error, Result};
use crate::homology::{h0, hd_set_from_table, homology_tables, one_step_above};
use crate::linalg::Matrix;
use crate::module::{homology_of_pair, induced_cover, ModuleMap, TruncatedModule};
use crate::report::DimTable;
use crate::upset::UpSet;

/// `r` violates the degree-`i` condition at `n` iff
/// `n ∈ r - a + e_j + N^m` for some `a ∈ N^m` with `|a| = i` and some `j`.
///
/// With `d = n - r`, the smallest admissible `a` is `d⁻ = max(-d, 0)`; any
/// larger `a` of the right size can spend its excess to make `d + a` nonzero.
pub fn staggered_blocks(n: &[usize], r: &DegreeVector, i: usize) -> bool {
    let mut deficit = 0i64;
    let mut positive = false;
    for (&x, &y) in n.iter().zip(&r.0) {
        let d = x as i64 - y;
        if d < 0 {
            deficit -= d;
        } else if d > 0 {
            positive = true;
        }
    }
    deficit < i as i64 || (deficit == i as i64 && positive)
}

/// A `CMreg₊`/`CMreg` computation with the data it was read from.
#[derive(Clone, Debug, Serialize)]
pub struct RegularityReport {
    /// The set on the search window.
    pub set: UpSet,
    /// The part inside `N^m`.
    pub naturals: UpSet,
    /// Number of local cohomology modules inspected (`H^0_B ..`).
    pub cohomology_range: usize,
    /// False when the Nagpal complex stopped before its cokernels became
    /// torsion; higher `H^i_B` were then not inspected.
    pub complete: bool,
    pub policy: &'static str,
}

/// Largest search box on which all computed `H^i_B` supports are known one
/// step above every candidate: `[lower, R - 1]` with `R` the meet of the
/// reliable windows.
pub fn regularity_search(complex: &NagpalComplex, lower: Option<DegreeVector>) -> Result<Window> {
    let mut reliable = complex.split.reliable.clone();
    for s in &complex.steps {
        reliable = reliable.meet(&s.split.reliable);
    }
    let m = reliable.m();
    let upper = DegreeVector::from_naturals(&reliable.upper).minus(&DegreeVector(vec![1; m]));
    let lower = lower.unwrap_or_else(|| DegreeVector::from_naturals(&complex.window.upper).scaled(-1));
    Window::new(lower.meet(&upper), upper)
}

pub fn cmreg_plus_from(complex: &NagpalComplex, search: Window) -> Result<RegularityReport> {
    let tables = complex.cohomology_tables()?;
    let supports: Vec<Vec<Vec<usize>>> = tables.iter().map(DimTable::support).collect();
    let set = UpSet::from_predicate(search, |r| {
        !supports
            .iter()
            .enumerate()
            .any(|(i, s)| s.iter().any(|n| staggered_blocks(n, r, i)))
    })?;
    Ok(RegularityReport {
        naturals: set.naturals()?,
        set,
        cohomology_range: tables.len(),
        complete: complex.complete,
        policy: complex.options.policy.id(),
    })
}

pub fn cmreg_plus(v: &Arc<TruncatedModule>, lower: Option<DegreeVector>, opts: &NagpalOptions) -> Result<RegularityReport> {
    let complex = nagpal_complex(v, opts)?;
    let search = regularity_search(&complex, lower)?;
    cmreg_plus_from(&complex, search)
}

/// `CMreg = CMreg₊ ∩ HD_0`.
pub fn cmreg(v: &Arc<TruncatedModule>, lower: Option<DegreeVector>, opts: &NagpalOptions) -> Result<RegularityReport> {
    let plus = cmreg_plus(v, lower, opts)?;
    let hd0 = hd_set_from_table(&h0(v).dims, plus.set.window.clone())?;
    let set = plus.set.intersect(&hd0)?;
    Ok(RegularityReport {
        naturals: set.naturals()?,
        set,
        ..plus
    })
}

/// Verdicts for "`c - a ∈ CMreg₊` for all `|a| = i` implies `c ∈ HD_i`";
/// `None` when a needed point lies outside the corresponding window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SyzygyCheck {
    pub c: DegreeVector,
    pub i: usize,
    pub hypothesis: Option<bool>,
    pub conclusion: Option<bool>,
}

impl SyzygyCheck {
    /// The implication, where it could be evaluated.
    pub fn consistent(&self) -> bool {
        !matches!((self.hypothesis, self.conclusion), (Some(true), Some(false)))
    }
}

fn compositions(m: usize, total: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(m - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn check_regularity_syzygy(cmreg_plus: &UpSet, hd_i: &UpSet, i: usize, c: &DegreeVector) -> SyzygyCheck {
    let mut hypothesis = Some(true);
    for a in compositions(c.m(), i) {
        let p = c.minus(&DegreeVector::from_naturals(&a));
        if !cmreg_plus.window.contains(&p) {
            hypothesis = None;
            break;
        }
        if !cmreg_plus.contains(&p) {
            hypothesis = Some(false);
            break;
        }
    }
    let conclusion = hd_i.window.contains(c).then(|| hd_i.contains(c));
    SyzygyCheck {
        c: c.clone(),
        i,
        hypothesis,
        conclusion,
    }
}

/// `HD_i(V)` on `search` from the Koszul tables.
pub fn hd_set_i(v: &TruncatedModule, i: usize, search: Window) -> Result<UpSet> {
    hd_set_from_table(&homology_tables(v, i)[i], search)
}

/// Audit trail of the construction `.. -> F^(1) -> F^(0) -> V` with
/// `F^(i)` generated in degree `r + i·c`.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremAReport {
    pub r: Vec<usize>,
    pub c: Vec<usize>,
    pub length: usize,
    /// `r ∈ CMreg(V)` on the regularity search window.
    pub regular: bool,
    pub modules: Vec<DimTable>,
    pub generator_degrees: Vec<Vec<usize>>,
    /// `H_0(F^(i))` is concentrated in `r + i·c`.
    pub generation_checks: Vec<bool>,
    /// Homology at `V, F^(0), .., F^(length-1)`.
    pub homology: Vec<DimTable>,
    /// Each homology module is torsion on `reliable`.
    pub torsion_checks: Vec<bool>,
    pub reliable: Vec<usize>,
    pub passed: bool,
}

/// The constructed complex, kept for further inspection.
#[derive(Clone, Debug)]
pub struct TheoremAComplex {
    pub modules: Vec<Arc<TruncatedModule>>,
    /// `maps[0] : F^(0) -> V`, `maps[i] : F^(i) -> F^(i-1)`.
    pub maps: Vec<ModuleMap>,
    pub report: TheoremAReport,
}

pub fn theorem_a_complex(
    v: &Arc<TruncatedModule>,
    r: &[usize],
    c: &[usize],
    length: usize,
    opts: &NagpalOptions,
) -> Result<TheoremAComplex> {
    let m = v.m();
    if r.len() != m || c.len() != m {
        return Err(Error::Shape("r and c must have length m".into()));
    }
    if c.contains(&0) {
        return Err(Error::Shape("c must be positive in every coordinate".into()));
    }
    let window = v.window().clone();
    let degree = |i: usize| -> Vec<usize> { r.iter().zip(c).map(|(a, b)| a + i * b).collect() };
    if !window.contains(&degree(length)) {
        return Err(Error::WindowExhausted {
            reason: format!(
                "generator degree {:?} of step {length} leaves the window {:?}",
                degree(length),
                window.upper
            ),
            largest_shift: None,
        });
    }
    let reg = cmreg(v, None, opts)?;
    let rz = DegreeVector::from_naturals(r);
    if !reg.set.window.contains(&rz) {
        return Err(Error::NotRegular(format!(
            "{rz} lies outside the regularity search window [{}, {}]",
            reg.set.window.lower, reg.set.window.upper
        )));
    }
    if !reg.set.contains(&rz) {
        return Err(Error::NotRegular(format!("{rz} is not in CMreg(V)")));
    }

    let mut modules = Vec::new();
    let mut maps: Vec<ModuleMap> = Vec::new();
    let mut kernel: Arc<TruncatedModule> = v.clone();
    let mut kernel_incl = ModuleMap::identity(v);
    for i in 0..=length {
        let d = degree(i);
        let basis = Matrix::identity(kernel.dim(&d));
        let (f, cover) = induced_cover(&kernel, &d, &basis)?;
        let map = kernel_incl.compose(&cover)?;
        let (k, incl) = map.kernel()?;
        modules.push(f);
        maps.push(map);
        kernel = k;
        kernel_incl = incl;
    }

    let generation_checks: Vec<bool> = modules
        .iter()
        .enumerate()
        .map(|(i, f)| h0(f).dims.support().iter().all(|n| *n == degree(i)))
        .collect();
    let mut homology = Vec::new();
    let (coker, _) = maps[0].cokernel()?;
    homology.push(coker);
    for i in 0..length {
        homology.push(homology_of_pair(&maps[i + 1], &maps[i])?);
    }
    let mut reliable = window.clone();
    let mut torsion_checks = Vec::new();
    for h in &homology {
        let split = torsion_split(h, opts.margin)?;
        reliable = reliable.meet(&split.reliable);
        torsion_checks.push(split.free.restrict(&split.reliable)?.is_zero());
    }
    let passed = generation_checks.iter().all(|&b| b) && torsion_checks.iter().all(|&b| b);
    let report = TheoremAReport {
        r: r.to_vec(),
        c: c.to_vec(),
        length,
        regular: true,
        modules: modules.iter().map(|f| f.dims()).collect(),
        generator_degrees: (0..=length).map(degree).collect(),
        generation_checks,
        homology: homology.iter().map(|h| h.dims()).collect(),
        torsion_checks,
        reliable: reliable.upper,
        passed,
    };
    Ok(TheoremAComplex {
        modules,
        maps,
        report,
    })
}

/// `HD_0` restricted to `window`, for callers that only need generation
/// degrees.
pub fn generation_set(v: &TruncatedModule, search: Window) -> Result<UpSet> {
    hd_set_from_table(&h0(v).dims, search)
}

/// Whether `r` is "one positive step" below some degree of `support`.
pub fn blocked_by(support: &[Vec<usize>], r: &DegreeVector) -> bool {
    support.iter().any(|n| one_step_above(n, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::DegreeBox;

    fn brute_blocks(n: &[usize], r: &DegreeVector, i: usize) -> bool {
        compositions(r.m(), i).iter().any(|a| {
            let shifted: DegreeVector = r.minus(&DegreeVector::from_naturals(a));
            one_step_above(n, &shifted)
        })
    }

    #[test]
    fn staggered_condition_matches_enumeration() {
        for i in 0..4 {
            for n in DegreeBox::new(vec![3, 3]).degrees() {
                for r in Window::new(DegreeVector(vec![-2, -2]), DegreeVector(vec![4, 4])).unwrap().points() {
                    assert_eq!(staggered_blocks(&n, &r, i), brute_blocks(&n, &r, i), "n={n:?} r={r} i={i}");
                }
            }
        }
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(2, 3).len(), 4);
        assert_eq!(compositions(3, 2).len(), 6);
        assert_eq!(compositions(1, 0), vec![vec![0]]);
    }
}
