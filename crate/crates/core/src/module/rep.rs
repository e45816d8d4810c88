use crate::category::{adjacent_word, enumerate_injections, Perm};
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Matrix};

/// A representation of `S_r = S_{r_1} x ... x S_{r_m}`, given by the matrices
/// of the adjacent transpositions `s_0, .., s_{r_j - 2}` of each factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricGroupRep {
    pub degree: Vec<usize>,
    pub dim: usize,
    pub generators: Vec<Vec<Matrix>>,
}

impl SymmetricGroupRep {
    pub fn new(degree: Vec<usize>, dim: usize, generators: Vec<Vec<Matrix>>) -> Result<Self> {
        if generators.len() != degree.len() {
            return Err(Error::Shape("one generator list per factor expected".into()));
        }
        for (j, (gens, &r)) in generators.iter().zip(&degree).enumerate() {
            if gens.len() != r.saturating_sub(1) {
                return Err(Error::Shape(format!(
                    "factor {j}: expected {} transpositions, found {}",
                    r.saturating_sub(1),
                    gens.len()
                )));
            }
            if gens.iter().any(|g| g.rows() != dim || g.cols() != dim) {
                return Err(Error::Shape(format!("factor {j}: generator is not {dim}x{dim}")));
            }
        }
        Ok(SymmetricGroupRep {
            degree,
            dim,
            generators,
        })
    }

    pub fn trivial(degree: &[usize]) -> Self {
        Self::one_dimensional(degree, |_| 1)
    }

    pub fn sign(field: FieldSpec, degree: &[usize]) -> Self {
        Self::one_dimensional(degree, |_| field.neg(1))
    }

    fn one_dimensional(degree: &[usize], value: impl Fn(usize) -> u32) -> Self {
        SymmetricGroupRep {
            degree: degree.to_vec(),
            dim: 1,
            generators: degree
                .iter()
                .enumerate()
                .map(|(j, &r)| {
                    (0..r.saturating_sub(1))
                        .map(|_| Matrix::from_rows(1, 1, vec![value(j)]))
                        .collect()
                })
                .collect(),
        }
    }

    /// The regular representation `k[S_r]`, basis ordered lexicographically
    /// by permutation tuples; `s` acts by left multiplication.
    pub fn regular(degree: &[usize]) -> Self {
        let elems = enumerate_injections(degree, degree);
        let index = |images: &Vec<Vec<usize>>| {
            elems
                .binary_search_by(|e| e.images.cmp(images))
                .expect("permutation tuple present")
        };
        let dim = elems.len();
        let generators = degree
            .iter()
            .enumerate()
            .map(|(j, &r)| {
                (0..r.saturating_sub(1))
                    .map(|i| {
                        let mut g = Matrix::zero(dim, dim);
                        for (c, e) in elems.iter().enumerate() {
                            let mut images = e.images.clone();
                            images[j] = images[j]
                                .iter()
                                .map(|&x| swap_point(x, i))
                                .collect();
                            g.set(index(&images), c, 1);
                        }
                        g
                    })
                    .collect()
            })
            .collect();
        SymmetricGroupRep {
            degree: degree.to_vec(),
            dim,
            generators,
        }
    }

    pub fn zero(degree: &[usize]) -> Self {
        SymmetricGroupRep {
            degree: degree.to_vec(),
            dim: 0,
            generators: degree
                .iter()
                .map(|&r| (0..r.saturating_sub(1)).map(|_| Matrix::zero(0, 0)).collect())
                .collect(),
        }
    }

    pub fn m(&self) -> usize {
        self.degree.len()
    }

    /// Matrix of a permutation tuple `sigma ∈ S_r`.
    pub fn action(&self, field: FieldSpec, sigma: &[Perm]) -> Matrix {
        let mut acc = Matrix::identity(self.dim);
        for (j, perm) in sigma.iter().enumerate() {
            for i in adjacent_word(perm) {
                acc = self.generators[j][i].mul(field, &acc);
            }
        }
        acc
    }

    /// Restriction to `S_{r - e_j}`, the stabiliser of the last point of
    /// factor `j`.
    pub fn restrict(&self, j: usize) -> Result<SymmetricGroupRep> {
        if self.degree[j] == 0 {
            return Err(Error::Shape(format!("cannot restrict along empty factor {j}")));
        }
        let mut degree = self.degree.clone();
        degree[j] -= 1;
        let mut generators = self.generators.clone();
        generators[j].truncate(degree[j].saturating_sub(1));
        Ok(SymmetricGroupRep {
            degree,
            dim: self.dim,
            generators,
        })
    }

    /// Coxeter relations of each factor and commutation across factors.
    pub fn relation_violations(&self, field: FieldSpec) -> Vec<String> {
        coxeter_violations(field, self.dim, &self.generators, "rep")
    }

    /// Conjugates every generator by the invertible `basis` (columns are the
    /// new basis vectors).
    pub fn change_basis(&self, field: FieldSpec, basis: &Matrix) -> Result<SymmetricGroupRep> {
        let inv = crate::linalg::inverse(field, basis)
            .ok_or_else(|| Error::Shape("change of basis is not invertible".into()))?;
        Ok(SymmetricGroupRep {
            degree: self.degree.clone(),
            dim: self.dim,
            generators: self
                .generators
                .iter()
                .map(|gs| gs.iter().map(|g| inv.mul(field, &g.mul(field, basis))).collect())
                .collect(),
        })
    }

    /// Direct sum.
    pub fn sum(&self, other: &SymmetricGroupRep) -> SymmetricGroupRep {
        assert_eq!(self.degree, other.degree);
        SymmetricGroupRep {
            degree: self.degree.clone(),
            dim: self.dim + other.dim,
            generators: self
                .generators
                .iter()
                .zip(&other.generators)
                .map(|(a, b)| {
                    a.iter()
                        .zip(b)
                        .map(|(x, y)| Matrix::block_diagonal(&[x, y]))
                        .collect()
                })
                .collect(),
        }
    }
}

pub(crate) fn swap_point(x: usize, i: usize) -> usize {
    if x == i {
        i + 1
    } else if x == i + 1 {
        i
    } else {
        x
    }
}

pub(crate) fn coxeter_violations(
    field: FieldSpec,
    dim: usize,
    generators: &[Vec<Matrix>],
    label: &str,
) -> Vec<String> {
    let mut out = Vec::new();
    let id = Matrix::identity(dim);
    for (j, gens) in generators.iter().enumerate() {
        for (i, s) in gens.iter().enumerate() {
            if s.mul(field, s) != id {
                out.push(format!("{label}: s_{i} of factor {j} is not an involution"));
            }
            if let Some(t) = gens.get(i + 1) {
                let sts = s.mul(field, &t.mul(field, s));
                let tst = t.mul(field, &s.mul(field, t));
                if sts != tst {
                    out.push(format!("{label}: braid relation fails for s_{i}, s_{} of factor {j}", i + 1));
                }
            }
            for (k, t) in gens.iter().enumerate().skip(i + 2) {
                if s.mul(field, t) != t.mul(field, s) {
                    out.push(format!("{label}: s_{i} and s_{k} of factor {j} do not commute"));
                }
            }
        }
    }
    for j in 0..generators.len() {
        for l in j + 1..generators.len() {
            for (i, s) in generators[j].iter().enumerate() {
                for (k, t) in generators[l].iter().enumerate() {
                    if s.mul(field, t) != t.mul(field, s) {
                        out.push(format!(
                            "{label}: s_{i} of factor {j} and s_{k} of factor {l} do not commute"
                        ));
                    }
                }
            }
        }
    }
    out
}
