mod common;

use common::*;
use fim_core::category::enumerate_injections;
use fim_core::homology::{
    default_search, h0, hd_set, homology_tables, koszul_complex, koszul_homology, semi_induced_resolution,
};
use fim_core::linalg::{self, Matrix};
use fim_core::module::homology_of_pair;
use fim_core::{DegreeVector, Error, TruncatedModule, Window};
use proptest::prelude::*;

fn dv(v: &[i64]) -> DegreeVector {
    DegreeVector(v.to_vec())
}

/// `dim V_n - dim Σ_{f : n - e_j -> n} im V(f)`, enumerating every injection.
fn h0_by_injections(v: &TruncatedModule, n: &[usize]) -> usize {
    let f = v.field();
    let mut span = Matrix::zero(v.dim(n), 0);
    for j in 0..n.len() {
        if n[j] == 0 {
            continue;
        }
        let mut below = n.to_vec();
        below[j] -= 1;
        for g in enumerate_injections(&below, n) {
            span = span.hcat(&v.transition(&g));
        }
    }
    v.dim(n) - linalg::rank(f, &span)
}

fn euler(v: &TruncatedModule, n: &[usize]) -> i64 {
    let top: usize = n.iter().sum();
    let c = koszul_complex(v, n, top).unwrap();
    c.dims.iter().enumerate().map(|(a, &d)| if a % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
}

#[test]
fn h0_matches_injection_oracle() {
    for name in ["paper-example-V", "paper-example-K", "constant", "regular(1,1)", "induced(2,0)", "point(1,1)"] {
        let v = named(name, &[3, 3]);
        let t = h0(&v).dims;
        for n in v.window().degrees() {
            assert_eq!(t.get(&n), h0_by_injections(&v, &n), "{name} at {n:?}");
        }
    }
}

#[test]
fn h0_is_koszul_degree_zero() {
    let mut rng = rng(21);
    let mut modules = vec![named("paper-example-V", &[4, 4]), named("paper-example-K", &[4, 4])];
    for _ in 0..4 {
        modules.push(random_torsion(&mut rng, 2, &[4, 4]));
    }
    for v in modules {
        assert_eq!(h0(&v).dims, homology_tables(&v, 0)[0]);
    }
}

#[test]
fn koszul_homology_of_the_worked_example() {
    let v = named("paper-example-V", &[4, 4]);
    let k = named("paper-example-K", &[4, 4]);
    let tv = homology_tables(&v, 3);
    let tk = homology_tables(&k, 2);
    for n in v.window().degrees() {
        for i in 0..=3 {
            assert_eq!(tv[i].get(&n), usize::from(n == vec![0, i]), "H_{i}(V) at {n:?}");
        }
        for i in 0..=2 {
            assert_eq!(tk[i].get(&n), usize::from(n == vec![0, i + 1]), "H_{i}(K) at {n:?}");
        }
    }
    assert_eq!(koszul_homology(&v, 1, &[0, 1]).unwrap(), 1);
    assert_eq!(koszul_homology(&v, 1, &[1, 0]).unwrap(), 0);
}

#[test]
fn induced_modules_are_koszul_acyclic() {
    let mut rng = rng(8);
    for _ in 0..5 {
        let (w, v) = random_induced(&mut rng, 2, &[3, 3]);
        let t = homology_tables(&v, 3);
        for n in v.window().degrees() {
            assert_eq!(t[0].get(&n), if n == w.degree { w.dim } else { 0 });
        }
        for table in &t[1..] {
            assert!(table.is_zero(), "r={:?}", w.degree);
        }
    }
}

#[test]
fn point_module_koszul_homology() {
    // k at 0 in FI: H_i is k at degree i, the exterior powers of the augmentation.
    let p = named("point(0)", &[5]);
    let t = homology_tables(&p, 4);
    for n in 0..=5 {
        for i in 0..=4 {
            assert_eq!(t[i].get(&[n]), usize::from(n == i), "H_{i} at {n}");
        }
    }
}

#[test]
fn euler_characteristic_is_additive() {
    let v = named("paper-example-V", &[3, 3]);
    let k = named("paper-example-K", &[3, 3]);
    let c = named("constant", &[3, 3]);
    for n in v.window().degrees() {
        assert_eq!(euler(&c, &n), euler(&v, &n) + euler(&k, &n), "n={n:?}");
        let top: usize = n.iter().sum();
        let cx = koszul_complex(&v, &n, top).unwrap();
        let from_h: i64 = (0..=top).map(|i| cx.homology(v.field(), i) as i64 * if i % 2 == 0 { 1 } else { -1 }).sum();
        assert_eq!(from_h, euler(&v, &n));
    }
}

#[test]
fn hd_sets_of_the_worked_example() {
    let v = named("paper-example-V", &[6, 6]);
    let k = named("paper-example-K", &[6, 6]);
    let search = default_search(v.window());
    let hd0v = hd_set(&v, 0, search.clone()).unwrap().naturals().unwrap();
    assert!(hd0v.is_full());
    let hd1v = hd_set(&v, 1, search.clone()).unwrap().naturals().unwrap();
    assert_eq!(hd1v.minimal, vec![dv(&[0, 1]), dv(&[1, 0])]);
    let hd0k = hd_set(&k, 0, search.clone()).unwrap().naturals().unwrap();
    assert_eq!(hd0k.minimal, vec![dv(&[0, 1]), dv(&[1, 0])]);
    let hd1k = hd_set(&k, 1, search).unwrap().naturals().unwrap();
    assert_eq!(hd1k.minimal, vec![dv(&[0, 2]), dv(&[1, 0])]);
}

#[test]
fn hd_search_past_the_window_is_rejected() {
    let v = named("paper-example-V", &[3, 3]);
    let w = Window::new(dv(&[0, 0]), dv(&[3, 3])).unwrap();
    assert!(matches!(hd_set(&v, 0, w), Err(Error::OutsideWindow { .. })));
}

#[test]
fn resolution_of_a_point() {
    let p = named("point(0)", &[6]);
    let res = semi_induced_resolution(&p, 2).unwrap();
    for i in 0..=2 {
        assert_eq!(res.modules[i].dims(), named(&format!("induced({i})"), &[6]).dims(), "F^{i}");
        assert_eq!(res.generator_degrees[i], vec![vec![i]]);
    }
    assert!(res.maps[0].cokernel().unwrap().0.is_zero());
    for i in 0..2 {
        assert!(res.maps[i].compose(&res.maps[i + 1]).unwrap().is_zero());
        assert!(homology_of_pair(&res.maps[i + 1], &res.maps[i]).unwrap().is_zero());
    }
}

#[test]
fn resolution_of_induced_and_zero_modules() {
    let m = named("regular(1,1)", &[3, 3]);
    let res = semi_induced_resolution(&m, 2).unwrap();
    assert_eq!(res.modules[0].dims(), m.dims());
    assert!(res.modules[1].is_zero() && res.modules[2].is_zero());
    let z = std::sync::Arc::new(TruncatedModule::zero(field(), boxed(&[2, 2])));
    let res = semi_induced_resolution(&z, 1).unwrap();
    assert!(res.modules.iter().all(|f| f.is_zero()));
}

#[test]
fn resolution_longer_than_the_window_fails() {
    let p = named("point(0)", &[2]);
    assert!(matches!(semi_induced_resolution(&p, 3), Err(Error::WindowExhausted { .. })));
}

#[test]
fn resolution_of_k_is_exact() {
    let k = named("paper-example-K", &[4, 4]);
    let res = semi_induced_resolution(&k, 2).unwrap();
    assert_eq!(res.generator_degrees[0], vec![vec![0, 1]]);
    assert!(res.maps[0].cokernel().unwrap().0.is_zero());
    for i in 0..2 {
        assert!(homology_of_pair(&res.maps[i + 1], &res.maps[i]).unwrap().is_zero());
    }
    for f in &res.modules {
        assert!(f.is_valid());
        let t = homology_tables(f, 2);
        assert!(t[1].is_zero() && t[2].is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn koszul_rank_nullity(seed in 0u64..10_000) {
        let mut rng = rng(seed);
        let t = random_torsion(&mut rng, 2, &[3, 3]);
        let f = t.field();
        for n in t.window().degrees() {
            let c = koszul_complex(&t, &n, 3).unwrap();
            for (a, d) in c.differentials.iter().enumerate() {
                prop_assert_eq!(d.cols(), c.dims[a + 1]);
                prop_assert_eq!(linalg::rank(f, d) + linalg::kernel_basis(f, d).cols(), d.cols());
            }
        }
    }

    #[test]
    fn h0_agrees_with_oracle_on_torsion(seed in 0u64..10_000) {
        let mut rng = rng(seed);
        let t = random_torsion(&mut rng, 2, &[3, 3]);
        let table = h0(&t).dims;
        for n in t.window().degrees() {
            prop_assert_eq!(table.get(&n), h0_by_injections(&t, &n));
        }
    }

    #[test]
    fn random_induced_in_one_variable_is_acyclic(seed in 0u64..10_000) {
        let mut rng = rng(seed);
        let (_, v) = random_induced(&mut rng, 1, &[6]);
        let t = homology_tables(&v, 3);
        prop_assert!(t[1..].iter().all(|x| x.is_zero()));
    }
}
