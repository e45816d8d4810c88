//! Functoriality audit on generators.
//!
//! `FI^m` restricted to a box is presented by the symmetric groups and the
//! standard one-step inclusions subject to:
//! * Coxeter relations in each factor, commutation across factors;
//! * equivariance: a permutation fixing the new point commutes with the
//!   inclusion;
//! * swapping the two points added by two consecutive inclusions in the same
//!   direction does not change the composite;
//! * inclusions in distinct directions commute.

use crate::category::{degree_key, DegreeBox};
use crate::linalg::Matrix;

use super::rep::coxeter_violations;
use super::TruncatedModule;

pub(super) fn violations(v: &TruncatedModule) -> Vec<String> {
    let f = v.field();
    let window: &DegreeBox = v.window();
    let m = v.m();
    let mut out = Vec::new();
    for n in window.degrees() {
        let data = v.degree_data(&n);
        let key = degree_key(&n);
        out.extend(coxeter_violations(f, data.dim, &data.transpositions, &format!("degree ({key})")));
        for j in 0..m {
            if n[j] == window.upper[j] {
                continue;
            }
            let mut up = n.clone();
            up[j] += 1;
            let inc = v.inclusion(&n, j);
            for l in 0..m {
                for i in 0..n[l].saturating_sub(1) {
                    let lhs = v.transposition(&up, l, i).mul(f, inc);
                    let rhs = inc.mul(f, v.transposition(&n, l, i));
                    if lhs != rhs {
                        out.push(format!(
                            "inclusion ({key}) -> ({}) is not equivariant for s_{i} of factor {l}",
                            degree_key(&up)
                        ));
                    }
                }
            }
            if up[j] < window.upper[j] {
                let mut up2 = up.clone();
                up2[j] += 1;
                let two = v.inclusion(&up, j).mul(f, inc);
                let swapped = v.transposition(&up2, j, n[j]).mul(f, &two);
                if swapped != two {
                    out.push(format!(
                        "double inclusion ({key}) -> ({}) is not fixed by swapping the new points of factor {j}",
                        degree_key(&up2)
                    ));
                }
            }
            for l in j + 1..m {
                if n[l] == window.upper[l] {
                    continue;
                }
                let mut side = n.clone();
                side[l] += 1;
                let a: Matrix = v.inclusion(&up, l).mul(f, inc);
                let b: Matrix = v.inclusion(&side, j).mul(f, v.inclusion(&n, l));
                if a != b {
                    out.push(format!(
                        "inclusion square at ({key}) in directions {j},{l} does not commute"
                    ));
                }
            }
        }
    }
    out
}
