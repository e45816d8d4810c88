//! `B`-torsion, semi-induced certificates, the Nagpal complex, and local
//! cohomology read off from it.

use std::sync::Arc;

use serde::Serialize;

use crate::category::DegreeBox;
use crate::error::{Error, Result};
use crate::homology::homology_tables;
use crate::linalg::{self, Matrix};
use crate::module::{shift, shift_unit_to, ModuleMap, TruncatedModule};
use crate::report::DimTable;

/// `V = V_T + V_F`: the torsion submodule and the torsion-free quotient.
#[derive(Clone, Debug)]
pub struct TorsionSplit {
    pub torsion: Arc<TruncatedModule>,
    pub inclusion: ModuleMap,
    pub free: Arc<TruncatedModule>,
    pub projection: ModuleMap,
    /// Where "torsion" and "torsion-free" are certified.
    pub reliable: DegreeBox,
}

/// Torsion at `n` is the kernel of the standard map to the top corner `D`.
/// Closer than `margin` to the top, torsion may be missed.
pub fn torsion_split(v: &Arc<TruncatedModule>, margin: usize) -> Result<TorsionSplit> {
    let window = v.window().clone();
    if window.upper.contains(&0) {
        return Err(Error::DegenerateWindow(window.upper.clone()));
    }
    let reliable = window
        .shrink(&vec![margin; window.m()])
        .ok_or_else(|| Error::DegenerateWindow(window.upper.clone()))?;
    let f = v.field();
    let bases: Vec<Matrix> = window
        .degrees()
        .map(|n| linalg::kernel_basis(f, &v.standard_map(&n, &window.upper)))
        .collect();
    let (torsion, inclusion) = v.submodule(bases.clone())?;
    let (free, projection) = v.quotient(&bases)?;
    Ok(TorsionSplit {
        torsion,
        inclusion,
        free,
        projection,
        reliable,
    })
}

/// Verdict of the Koszul test `H_i = 0` for `1 <= i <= imax` on the window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemiInducedCertificate {
    pub semi_induced: bool,
    pub imax: usize,
    pub window: Vec<usize>,
    /// First `(i, n)` with `H_i(V)_n != 0`.
    pub witness: Option<(usize, Vec<usize>)>,
}

pub fn is_semi_induced(v: &TruncatedModule, imax: usize) -> SemiInducedCertificate {
    let tables = homology_tables(v, imax);
    let witness = (1..=imax).find_map(|i| tables[i].support().into_iter().next().map(|n| (i, n)));
    SemiInducedCertificate {
        semi_induced: witness.is_none(),
        imax,
        window: v.window().upper.clone(),
        witness,
    }
}

/// Order in which candidate shifts `a` are tried.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShiftPolicy {
    /// By `max_j a_j`, then lexicographically.
    GradedLex,
    /// `(N, .., N)` for `N = 0, 1, ..`.
    Uniform,
}

impl ShiftPolicy {
    pub fn id(self) -> &'static str {
        match self {
            ShiftPolicy::GradedLex => "graded-lex",
            ShiftPolicy::Uniform => "uniform",
        }
    }

    /// Shifts leaving at least `min_extent` in every coordinate of `window`.
    pub fn candidates(self, window: &DegreeBox, min_extent: usize) -> Vec<Vec<usize>> {
        let room: Vec<usize> = window.upper.iter().map(|&d| d.saturating_sub(min_extent)).collect();
        if window.upper.iter().any(|&d| d < min_extent) {
            return Vec::new();
        }
        match self {
            ShiftPolicy::GradedLex => {
                let mut all: Vec<Vec<usize>> = DegreeBox::new(room).degrees().collect();
                all.sort_by_key(|a| (a.iter().copied().max().unwrap_or(0), a.clone()));
                all
            }
            ShiftPolicy::Uniform => {
                let top = room.iter().copied().min().unwrap_or(0);
                (0..=top).map(|k| vec![k; window.m()]).collect()
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NagpalOptions {
    pub policy: ShiftPolicy,
    pub max_length: usize,
    pub margin: usize,
    pub imax: usize,
    pub min_extent: usize,
}

impl Default for NagpalOptions {
    fn default() -> Self {
        NagpalOptions {
            policy: ShiftPolicy::GradedLex,
            max_length: 4,
            margin: 1,
            imax: 2,
            min_extent: 2,
        }
    }
}

/// One embedding `X -> Σ_a X = F -> Q`, with `Q` split into torsion and
/// torsion-free parts.
#[derive(Clone, Debug)]
pub struct NagpalStep {
    pub shift: Vec<usize>,
    pub input: Arc<TruncatedModule>,
    pub unit: ModuleMap,
    pub certificate: SemiInducedCertificate,
    pub cokernel: Arc<TruncatedModule>,
    pub cokernel_projection: ModuleMap,
    pub split: TorsionSplit,
}

impl NagpalStep {
    pub fn semi_induced(&self) -> &Arc<TruncatedModule> {
        self.unit.target()
    }
}

/// `0 -> V -> F^(0) -> F^(1) -> ..`, built from `V_F` by iterated shifts.
#[derive(Clone, Debug)]
pub struct NagpalComplex {
    pub options: NagpalOptions,
    pub window: DegreeBox,
    pub split: TorsionSplit,
    pub steps: Vec<NagpalStep>,
    /// The last cokernel was torsion, so all later `H^i_B` vanish.
    pub complete: bool,
}

fn embed(x: &Arc<TruncatedModule>, opts: &NagpalOptions) -> Result<NagpalStep> {
    let candidates = opts.policy.candidates(x.window(), opts.min_extent);
    let mut last = None;
    for a in candidates {
        let shifted = shift(x, &a)?;
        let certificate = is_semi_induced(&shifted, opts.imax);
        last = Some(a.clone());
        if !certificate.semi_induced {
            continue;
        }
        let unit = shift_unit_to(x, &a)?;
        let (cokernel, cokernel_projection) = unit.cokernel()?;
        let split = torsion_split(&cokernel, opts.margin)?;
        return Ok(NagpalStep {
            shift: a,
            input: x.clone(),
            unit,
            certificate,
            cokernel,
            cokernel_projection,
            split,
        });
    }
    Err(Error::WindowExhausted {
        reason: format!(
            "no shift of the window {:?} certified semi-induced under policy {}",
            x.window().upper,
            opts.policy.id()
        ),
        largest_shift: last,
    })
}

pub fn nagpal_complex(v: &Arc<TruncatedModule>, opts: &NagpalOptions) -> Result<NagpalComplex> {
    let split = torsion_split(v, opts.margin)?;
    let mut cur = Arc::new(split.free.restrict(&split.reliable)?);
    let mut steps = Vec::new();
    let mut complete = cur.is_zero();
    while !complete && steps.len() < opts.max_length {
        let step = embed(&cur, opts)?;
        cur = Arc::new(step.split.free.restrict(&step.split.reliable)?);
        complete = cur.is_zero();
        steps.push(step);
    }
    Ok(NagpalComplex {
        options: opts.clone(),
        window: v.window().clone(),
        split,
        steps,
        complete,
    })
}

impl NagpalComplex {
    /// Number of cohomology modules `H^0_B, .., H^{len-1}_B` computed.
    pub fn len(&self) -> usize {
        self.steps.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `H^i_B(V)` on its reliable window, or `None` past the computed range
    /// of an incomplete complex.
    pub fn local_cohomology(&self, i: usize) -> Option<Result<Arc<TruncatedModule>>> {
        let restrict = |s: &TorsionSplit| s.torsion.restrict(&s.reliable).map(Arc::new);
        if i == 0 {
            return Some(restrict(&self.split));
        }
        match self.steps.get(i - 1) {
            Some(step) => Some(restrict(&step.split)),
            None if self.complete => {
                Some(Ok(Arc::new(TruncatedModule::zero(self.split.free.field(), self.window.clone()))))
            }
            None => None,
        }
    }

    /// Dimension tables of `H^0_B .. H^{len-1}_B`, each on its reliable window.
    pub fn cohomology_tables(&self) -> Result<Vec<DimTable>> {
        (0..self.len())
            .map(|i| self.local_cohomology(i).expect("within range").map(|m| m.dims()))
            .collect()
    }

    /// `dim H^s(C•)` with `C^{-1} = V_F`, `C^s = F^(s)`, computed from the
    /// differentials directly; should agree with `H^{s+1}_B`.
    pub fn complex_cohomology(&self) -> Vec<DimTable> {
        let mut out = Vec::new();
        for (s, step) in self.steps.iter().enumerate() {
            let f = step.unit.source().field();
            let next = self.steps.get(s + 1);
            let window = match next {
                Some(n) => n.unit.window().clone(),
                None => step.split.reliable.clone(),
            };
            out.push(DimTable::from_fn(&window, |n| {
                let incoming = linalg::rank(f, step.unit.component(n));
                let dim = step.semi_induced().dim(n);
                let outgoing = match next {
                    Some(nx) => {
                        let d = nx
                            .unit
                            .component(n)
                            .mul(f, &step.split.projection.component(n).mul(f, step.cokernel_projection.component(n)));
                        linalg::rank(f, &d)
                    }
                    None if self.complete => 0,
                    None => {
                        let d = step.split.projection.component(n).mul(f, step.cokernel_projection.component(n));
                        linalg::rank(f, &d)
                    }
                };
                dim - outgoing - incoming
            }));
        }
        out
    }

    pub fn trace(&self) -> NagpalTrace {
        NagpalTrace {
            policy: self.options.policy.id(),
            imax: self.options.imax,
            margin: self.options.margin,
            complete: self.complete,
            torsion: self.split.torsion.restrict(&self.split.reliable).map(|m| m.dims()).ok(),
            steps: self
                .steps
                .iter()
                .map(|s| TraceStep {
                    shift: s.shift.clone(),
                    input_window: s.input.window().upper.clone(),
                    semi_induced: s.semi_induced().dims(),
                    cokernel: s.cokernel.dims(),
                    reliable: s.split.reliable.upper.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub shift: Vec<usize>,
    pub input_window: Vec<usize>,
    pub semi_induced: DimTable,
    pub cokernel: DimTable,
    pub reliable: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NagpalTrace {
    pub policy: &'static str,
    pub imax: usize,
    pub margin: usize,
    pub complete: bool,
    pub torsion: Option<DimTable>,
    pub steps: Vec<TraceStep>,
}

/// `H^i_B(V)` with its reliable window.
pub fn local_cohomology(v: &Arc<TruncatedModule>, i: usize, opts: &NagpalOptions) -> Result<Arc<TruncatedModule>> {
    let complex = nagpal_complex(v, opts)?;
    complex.local_cohomology(i).unwrap_or_else(|| {
        Err(Error::WindowExhausted {
            reason: format!("Nagpal complex stopped after {} steps before H^{i}_B", complex.steps.len()),
            largest_shift: complex.steps.last().map(|s| s.shift.clone()),
        })
    })
}
