//! Acceptance suite: one line per criterion, non-zero exit on any failure.

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::sync::Arc;

use fim_core::category::Window;
use fim_core::cohomology::{nagpal_complex, NagpalOptions, ShiftPolicy};
use fim_core::homology::{default_search, h0, hd_set, koszul_complex, koszul_homology, semi_induced_resolution};
use fim_core::linalg::{self, FieldSpec, Matrix};
use fim_core::module::{direct_sum, homology_of_pair, induced, preset, shift_one, PresetName, SymmetricGroupRep};
use fim_core::regularity::{check_regularity_syzygy, cmreg_plus, theorem_a_complex};
use fim_core::{DegreeBox, DegreeVector, DimTable, TruncatedModule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn field() -> FieldSpec {
    FieldSpec::default()
}

fn named(name: &str, upper: &[usize]) -> Arc<TruncatedModule> {
    let p: PresetName = name.parse().unwrap();
    Arc::new(preset(&p, field(), &DegreeBox::new(upper.to_vec())).unwrap())
}

fn fim(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_fim")).args(args).output().expect("run fim");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn fim_json(args: &[&str]) -> Result<Value, String> {
    let (code, stdout) = fim(args);
    ensure!(code == 0, "fim {args:?} exited with {code}");
    serde_json::from_slice(&stdout).map_err(|e| e.to_string())
}

fn minimal(v: &Value) -> Vec<Vec<i64>> {
    serde_json::from_value(v["minimal"].clone()).unwrap()
}

fn on(t: &DimTable, w: &DegreeBox) -> DimTable {
    t.restrict(w)
}

/// Commuting involutions `P diag(±1) P^{-1}` give every representation of
/// `S_r` for `r ≤ (2, .., 2)` in odd characteristic.
fn random_rep(rng: &mut ChaCha8Rng, r: &[usize], dim: usize) -> SymmetricGroupRep {
    let f = field();
    let p = loop {
        let data = (0..dim * dim).map(|_| rng.gen_range(0..f.characteristic())).collect();
        let m = Matrix::from_rows(dim, dim, data);
        if linalg::rank(f, &m) == dim {
            break m;
        }
    };
    let p_inv = linalg::inverse(f, &p).unwrap();
    let generators = r
        .iter()
        .map(|&k| {
            (0..k.saturating_sub(1))
                .map(|_| {
                    let mut d = Matrix::zero(dim, dim);
                    for i in 0..dim {
                        d.set(i, i, if rng.gen_bool(0.5) { 1 } else { f.neg(1) });
                    }
                    p.mul(f, &d).mul(f, &p_inv)
                })
                .collect()
        })
        .collect();
    SymmetricGroupRep::new(r.to_vec(), dim, generators).unwrap()
}

struct Sample {
    w: SymmetricGroupRep,
    v: Arc<TruncatedModule>,
}

fn induced_family() -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..24)
        .map(|k| {
            let m = 1 + k % 2;
            let upper = if m == 1 { vec![6] } else { vec![4, 4] };
            let r: Vec<usize> = (0..m).map(|_| rng.gen_range(0..=2)).collect();
            let dim = rng.gen_range(1..=3);
            let w = random_rep(&mut rng, &r, dim);
            let v = Arc::new(induced(field(), &w, &DegreeBox::new(upper)).unwrap());
            Sample { w, v }
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let v = fim_json(&["cmreg", "--preset", "paper-example-V", "--window", "6,6"])?;
    let k = fim_json(&["cmreg", "--preset", "paper-example-K", "--window", "6,6"])?;
    let (mv, mk) = (minimal(&v["naturals"]), minimal(&k["naturals"]));
    ensure!(mv == vec![vec![0, 1]], "CMreg(V) ∩ N^2 has minimal elements {mv:?}");
    ensure!(mk == vec![vec![0, 2]], "CMreg(K) ∩ N^2 has minimal elements {mk:?}");
    Ok("CMreg(V) = (0,1) + N^2, CMreg(K) = (0,2) + N^2".into())
}

fn criterion_2() -> Outcome {
    let family = induced_family();
    for (idx, s) in family.iter().enumerate() {
        let cx = nagpal_complex(&s.v, &NagpalOptions::default()).map_err(|e| e.to_string())?;
        for i in 0..=3 {
            let h = cx
                .local_cohomology(i)
                .ok_or_else(|| format!("sample {idx}: H^{i}_B not computed"))?
                .map_err(|e| e.to_string())?;
            ensure!(h.is_zero(), "sample {idx} (r={:?}): H^{i}_B != 0", s.w.degree);
        }
        for n in s.v.window().degrees() {
            let c = koszul_complex(&s.v, &n, 4).map_err(|e| e.to_string())?;
            for i in 1..=3 {
                ensure!(c.homology(field(), i) == 0, "sample {idx}: H_{i} != 0 at {n:?}");
            }
        }
    }
    Ok(format!("{} induced modules acyclic", family.len()))
}

fn criterion_3() -> Outcome {
    let family = induced_family();
    let mut checked = 0;
    for (idx, s) in family.iter().enumerate() {
        for j in 0..s.v.m() {
            let shifted = shift_one(&s.v, j).map_err(|e| e.to_string())?;
            let window = shifted.window().clone();
            let base = s.v.restrict(&window).map_err(|e| e.to_string())?;
            let res = if s.w.degree[j] > 0 {
                let rw = s.w.restrict(j).map_err(|e| e.to_string())?;
                Some(induced(field(), &rw, &window).map_err(|e| e.to_string())?)
            } else {
                None
            };
            for n in window.degrees() {
                let expected = base.dim(&n) + res.as_ref().map_or(0, |m| m.dim(&n));
                ensure!(
                    shifted.dim(&n) == expected,
                    "sample {idx}, j={j}, n={n:?}: {} != {expected}",
                    shifted.dim(&n)
                );
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} degrees checked"))
}

fn criterion_4() -> Outcome {
    let sums = vec![
        (
            "point sum",
            Arc::new(
                direct_sum(&[
                    &named("point(0,0)", &[5, 5]),
                    &named("point(1,2)", &[5, 5]),
                    &named("point(3,1)", &[5, 5]),
                ])
                .unwrap(),
            ),
        ),
        ("point(2,2)", named("point(2,2)", &[5, 5])),
        ("point(0)", named("point(0)", &[6])),
        ("paper-example-V", named("paper-example-V", &[6, 6])),
        ("paper-example-V", named("paper-example-V", &[5, 5])),
    ];
    for (name, v) in sums {
        let cx = nagpal_complex(&v, &NagpalOptions::default()).map_err(|e| e.to_string())?;
        let h0 = cx.local_cohomology(0).unwrap().map_err(|e| e.to_string())?;
        ensure!(h0.dims() == on(&v.dims(), h0.window()), "{name}: H^0_B != V");
        for i in 1..=3 {
            let h = cx.local_cohomology(i).ok_or(format!("{name}: H^{i}_B missing"))?.map_err(|e| e.to_string())?;
            ensure!(h.is_zero(), "{name}: H^{i}_B != 0");
        }
    }
    Ok("H^0_B = V and H^i_B = 0 for 1 <= i <= 3".into())
}

fn criterion_5() -> Outcome {
    let h1 = fim_json(&["lc", "--preset", "paper-example-K", "--window", "6,6", "--i", "1"])?;
    let h0 = fim_json(&["lc", "--preset", "paper-example-K", "--window", "6,6", "--i", "0"])?;
    let reliable: Vec<usize> = serde_json::from_value(h1["reliable"].clone()).unwrap();
    let v = named("paper-example-V", &[6, 6]);
    let expected = on(&v.dims(), &DegreeBox::new(reliable.clone()));
    let got: DimTable = DimTable::from_ordered(
        DegreeBox::new(reliable.clone()),
        &serde_json::from_value(h1["dims"].clone()).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    ensure!(got == expected, "H^1_B(K) differs from V on {reliable:?}");
    ensure!(h0["support"].as_array().is_some_and(|s| s.is_empty()), "H^0_B(K) != 0");
    Ok(format!("H^1_B(K) = V up to {reliable:?}, H^0_B(K) = 0"))
}

fn criterion_6() -> Outcome {
    let opts = NagpalOptions::default();
    let p = named("point(0)", &[6]);
    let cx = theorem_a_complex(&p, &[0], &[1], 3, &opts).map_err(|e| e.to_string())?;
    for (i, f) in cx.modules.iter().enumerate() {
        let m = named(&format!("induced({i})"), &[6]);
        ensure!(f.dims() == m.dims(), "point(0): F^({i}) is not M({i})");
        let gens = h0(f).dims.support();
        ensure!(gens == vec![vec![i]], "point(0): H_0(F^({i})) supported on {gens:?}");
    }
    ensure!(cx.report.passed, "point(0): report failed {:?}", cx.report);
    let v = named("paper-example-V", &[6, 6]);
    let cx = theorem_a_complex(&v, &[0, 1], &[1, 1], 2, &opts).map_err(|e| e.to_string())?;
    ensure!(cx.report.passed, "paper-example-V: report failed {:?}", cx.report);
    Ok("point(0) and paper-example-V".into())
}

fn criterion_7() -> Outcome {
    let v = named("paper-example-V", &[6, 6]);
    let plus = cmreg_plus(&v, None, &NagpalOptions::default()).map_err(|e| e.to_string())?;
    let hd1 = hd_set(&v, 1, default_search(v.window())).map_err(|e| e.to_string())?;
    let sweep = Window::new(DegreeVector(vec![-3, -3]), DegreeVector(vec![3, 3])).unwrap();
    let mut applicable = 0;
    for c in sweep.points() {
        let check = check_regularity_syzygy(&plus.set, &hd1, 1, &c);
        ensure!(check.hypothesis.is_some() && check.conclusion.is_some(), "c={c} outside the computed windows");
        ensure!(check.consistent(), "counterexample at c={c}");
        applicable += usize::from(check.hypothesis == Some(true));
    }
    Ok(format!("49 points, hypothesis held at {applicable}"))
}

fn criterion_8() -> Outcome {
    let uniform = NagpalOptions {
        policy: ShiftPolicy::Uniform,
        ..NagpalOptions::default()
    };
    let presets = [
        ("paper-example-V", vec![6, 6]),
        ("paper-example-K", vec![6, 6]),
        ("constant", vec![5, 5]),
        ("point(1,2)", vec![5, 5]),
        ("induced(1,0)", vec![5, 5]),
        ("regular(1,1)", vec![4, 4]),
        ("regular(2)", vec![6]),
    ];
    for (name, upper) in &presets {
        let v = named(name, upper);
        let a = nagpal_complex(&v, &NagpalOptions::default()).and_then(|c| c.cohomology_tables());
        let b = nagpal_complex(&v, &uniform).and_then(|c| c.cohomology_tables());
        let (a, b) = (a.map_err(|e| e.to_string())?, b.map_err(|e| e.to_string())?);
        for i in 0..a.len().max(b.len()) {
            let same = match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => {
                    let w = x.window.meet(&y.window);
                    on(x, &w) == on(y, &w)
                }
                (Some(x), None) | (None, Some(x)) => x.is_zero(),
                (None, None) => true,
            };
            ensure!(same, "{name}: policies disagree on H^{i}_B");
        }
    }
    let runs: [&[&str]; 3] = [
        &["cmreg", "--preset", "paper-example-K", "--window", "6,6", "--trace"],
        &["lc", "--preset", "paper-example-K", "--window", "6,6", "--i", "1", "--trace"],
        &["theorem-a", "--preset", "paper-example-V", "--window", "6,6", "--r", "0,1", "--length", "2"],
    ];
    for args in runs {
        let first = fim(args);
        ensure!(first.0 == 0, "fim {args:?} exited with {}", first.0);
        for threads in ["1", "4"] {
            let out = Command::new(env!("CARGO_BIN_EXE_fim"))
                .args(args)
                .env("RAYON_NUM_THREADS", threads)
                .output()
                .expect("run fim");
            ensure!(out.stdout == first.1, "fim {args:?} output differs with {threads} threads");
        }
    }
    Ok(format!("{} presets, 3 commands repeated", presets.len()))
}

fn rank_nullity(m: &Matrix) -> bool {
    linalg::rank(field(), m) + linalg::kernel_basis(field(), m).cols() == m.cols()
}

fn criterion_9() -> Outcome {
    let presets = [
        ("paper-example-V", vec![5, 5]),
        ("paper-example-K", vec![5, 5]),
        ("constant", vec![5, 5]),
        ("point(1,2)", vec![5, 5]),
        ("point(2)", vec![5]),
        ("induced(1,1)", vec![5, 5]),
        ("regular(2,1)", vec![4, 4]),
        ("regular(2)", vec![5]),
    ];
    let mut matrices = 0;
    for (name, upper) in &presets {
        let v = named(name, upper);
        let h = h0(&v).dims;
        for n in v.window().degrees() {
            let k0 = koszul_homology(&v, 0, &n).map_err(|e| e.to_string())?;
            ensure!(h.get(&n) == k0, "{name}: h0 != Koszul H_0 at {n:?}");
            // Building the complex asserts d^2 = 0.
            let c = koszul_complex(&v, &n, 3).map_err(|e| e.to_string())?;
            for d in &c.differentials {
                ensure!(rank_nullity(d), "{name}: rank-nullity fails on a Koszul differential at {n:?}");
                matrices += 1;
            }
            for j in 0..v.m() {
                if n[j] < upper[j] {
                    ensure!(rank_nullity(v.inclusion(&n, j)), "{name}: rank-nullity fails on an inclusion");
                    matrices += 1;
                }
                for i in 0..n[j].saturating_sub(1) {
                    ensure!(rank_nullity(v.transposition(&n, j, i)), "{name}: rank-nullity fails on a transposition");
                    matrices += 1;
                }
            }
        }
        let cx = nagpal_complex(&v, &NagpalOptions::default()).map_err(|e| e.to_string())?;
        for (s, step) in cx.steps.iter().enumerate() {
            for comp in step.unit.components() {
                ensure!(rank_nullity(comp), "{name}: rank-nullity fails on a Nagpal map");
                matrices += 1;
            }
            let out = step.split.projection.compose(&step.cokernel_projection).map_err(|e| e.to_string())?;
            ensure!(out.compose(&step.unit).map_err(|e| e.to_string())?.is_zero(), "{name}: Nagpal d^2 != 0 at step {s}");
        }
        let res = semi_induced_resolution(&v, 1).map_err(|e| e.to_string())?;
        ensure!(
            res.maps[0].compose(&res.maps[1]).map_err(|e| e.to_string())?.is_zero(),
            "{name}: resolution d^2 != 0"
        );
        let h = homology_of_pair(&res.maps[1], &res.maps[0]).map_err(|e| e.to_string())?;
        ensure!(h.is_zero(), "{name}: resolution is not exact at F^(0)");
    }
    let p = named("point(0)", &[6]);
    let t = theorem_a_complex(&p, &[0], &[1], 3, &NagpalOptions::default()).map_err(|e| e.to_string())?;
    for i in 0..3 {
        ensure!(t.maps[i].compose(&t.maps[i + 1]).map_err(|e| e.to_string())?.is_zero(), "theorem-a complex d^2 != 0");
    }
    Ok(format!("{} presets, {matrices} matrices", presets.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("worked example cmreg", criterion_1),
        ("induced acyclicity", criterion_2),
        ("shift decomposition", criterion_3),
        ("torsion acyclicity", criterion_4),
        ("Nagpal identity on K", criterion_5),
        ("theorem-a complex", criterion_6),
        ("regularity implies HD_1 sweep", criterion_7),
        ("determinism and choice-independence", criterion_8),
        ("oracle cross-checks", criterion_9),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
