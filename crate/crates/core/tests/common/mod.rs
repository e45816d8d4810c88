#![allow(dead_code)]

use std::sync::Arc;

use fim_core::linalg::{self, FieldSpec, Matrix};
use fim_core::module::{induced, preset, truncate_above, PresetName, SymmetricGroupRep};
use fim_core::{DegreeBox, TruncatedModule};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn field() -> FieldSpec {
    FieldSpec::default()
}

pub fn boxed(upper: &[usize]) -> DegreeBox {
    DegreeBox::new(upper.to_vec())
}

pub fn named(name: &str, upper: &[usize]) -> Arc<TruncatedModule> {
    let p: PresetName = name.parse().unwrap();
    Arc::new(preset(&p, field(), &boxed(upper)).unwrap())
}

pub fn random_invertible(rng: &mut ChaCha8Rng, f: FieldSpec, d: usize) -> Matrix {
    loop {
        let data = (0..d * d).map(|_| rng.gen_range(0..f.characteristic())).collect();
        let m = Matrix::from_rows(d, d, data);
        if linalg::rank(f, &m) == d {
            return m;
        }
    }
}

/// A random representation of `S_r` for `r ≤ (2, .., 2)`: commuting
/// involutions `P diag(±1) P^{-1}`.
pub fn random_rep(rng: &mut ChaCha8Rng, r: &[usize], dim: usize) -> SymmetricGroupRep {
    assert!(r.iter().all(|&x| x <= 2));
    let f = field();
    let p = random_invertible(rng, f, dim);
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

/// A random degree `r ≤ (2, .., 2)` and representation of dimension ≤ 3.
pub fn random_induced(rng: &mut ChaCha8Rng, m: usize, upper: &[usize]) -> (SymmetricGroupRep, Arc<TruncatedModule>) {
    let r: Vec<usize> = (0..m).map(|_| rng.gen_range(0..=2)).collect();
    let dim = rng.gen_range(1..=3);
    let w = random_rep(rng, &r, dim);
    let v = Arc::new(induced(field(), &w, &boxed(upper)).unwrap());
    (w, v)
}

/// `M(W) / M(W)|_{>= c}`: a torsion module supported below `c`.
pub fn random_torsion(rng: &mut ChaCha8Rng, m: usize, upper: &[usize]) -> Arc<TruncatedModule> {
    let r: Vec<usize> = (0..m).map(|_| rng.gen_range(0..=1)).collect();
    let dim = rng.gen_range(1..=2);
    let w = random_rep(rng, &r, dim);
    let v = Arc::new(induced(field(), &w, &boxed(upper)).unwrap());
    let c: Vec<usize> = r
        .iter()
        .zip(upper)
        .map(|(&x, &d)| rng.gen_range(x..=(x + 2).min(d.saturating_sub(2))))
        .collect();
    let (_, incl) = truncate_above(&v, &c).unwrap();
    incl.cokernel().unwrap().0
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}
