//! Combinatorics of `FI^m`: degree vectors, degree boxes, and product
//! injections `[a_1] x ... x [a_m] -> [n_1] x ... x [n_m]`.
//!
//! Points of `[n]` are 0-based throughout: factor `j` of an object of degree
//! `n` is `{0, .., n_j - 1}`. The standard inclusion `[n] -> [n + e_j]` is the
//! identity on points and misses the new last point `n_j` of factor `j`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of `Z^m`. Module degrees live in `N^m`; regularity searches use
/// negative coordinates too.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeVector(pub Vec<i64>);

impl DegreeVector {
    pub fn zero(m: usize) -> Self {
        DegreeVector(vec![0; m])
    }

    /// `e_j`.
    pub fn unit(m: usize, j: usize) -> Self {
        let mut v = vec![0; m];
        v[j] = 1;
        DegreeVector(v)
    }

    pub fn from_naturals(n: &[usize]) -> Self {
        DegreeVector(n.iter().map(|&x| x as i64).collect())
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    /// `|r|`, the sum of the coordinates.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn plus(&self, other: &DegreeVector) -> DegreeVector {
        DegreeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn minus(&self, other: &DegreeVector) -> DegreeVector {
        DegreeVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, k: i64) -> DegreeVector {
        DegreeVector(self.0.iter().map(|a| a * k).collect())
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &DegreeVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn join(&self, other: &DegreeVector) -> DegreeVector {
        DegreeVector(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn meet(&self, other: &DegreeVector) -> DegreeVector {
        DegreeVector(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// `Some` when every coordinate is nonnegative.
    pub fn to_naturals(&self) -> Option<Vec<usize>> {
        self.0.iter().map(|&x| usize::try_from(x).ok()).collect()
    }

    /// `other` is at least one positive step from `self`, i.e.
    /// `other ∈ ∪_j (self + e_j + N^m)`.
    pub fn strictly_below(&self, other: &DegreeVector) -> bool {
        self.le(other) && self != other
    }
}

impl fmt::Debug for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Renders a degree as the `"x,y"` key used in JSON tables.
pub fn degree_key(n: &[usize]) -> String {
    n.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn parse_degree_key(s: &str) -> Result<Vec<usize>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Format(format!("bad degree key `{s}`")))
        })
        .collect()
}

/// A rectangular box `[lower, upper]` in `Z^m`, used for regularity searches.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub lower: DegreeVector,
    pub upper: DegreeVector,
}

impl Window {
    pub fn new(lower: DegreeVector, upper: DegreeVector) -> Result<Self> {
        if lower.m() != upper.m() {
            return Err(Error::Shape("window bounds have different lengths".into()));
        }
        if !lower.le(&upper) {
            return Err(Error::Shape(format!("empty window [{lower}, {upper}]")));
        }
        Ok(Window { lower, upper })
    }

    pub fn m(&self) -> usize {
        self.lower.m()
    }

    pub fn contains(&self, v: &DegreeVector) -> bool {
        self.lower.le(v) && v.le(&self.upper)
    }

    pub fn intersect(&self, other: &Window) -> Option<Window> {
        Window::new(self.lower.join(&other.lower), self.upper.meet(&other.upper)).ok()
    }

    pub fn translate(&self, v: &DegreeVector) -> Window {
        Window {
            lower: self.lower.plus(v),
            upper: self.upper.plus(v),
        }
    }

    /// All points in lexicographic order.
    pub fn points(&self) -> Vec<DegreeVector> {
        let m = self.m();
        let mut out = Vec::new();
        let mut cur = self.lower.clone();
        loop {
            out.push(cur.clone());
            let mut j = m;
            loop {
                if j == 0 {
                    return out;
                }
                j -= 1;
                if cur.0[j] < self.upper.0[j] {
                    cur.0[j] += 1;
                    for k in j + 1..m {
                        cur.0[k] = self.lower.0[k];
                    }
                    break;
                }
            }
        }
    }
}

/// The box `[0, upper]` in `N^m` on which a module is stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeBox {
    pub upper: Vec<usize>,
}

impl DegreeBox {
    pub fn new(upper: Vec<usize>) -> Self {
        DegreeBox { upper }
    }

    pub fn m(&self) -> usize {
        self.upper.len()
    }

    pub fn len(&self) -> usize {
        self.upper.iter().map(|d| d + 1).product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, n: &[usize]) -> bool {
        n.len() == self.m() && n.iter().zip(&self.upper).all(|(a, b)| a <= b)
    }

    pub fn contains_z(&self, n: &[i64]) -> bool {
        n.len() == self.m()
            && n
                .iter()
                .zip(&self.upper)
                .all(|(&a, &b)| a >= 0 && a as usize <= b)
    }

    /// Mixed-radix position of `n`; lexicographic order agrees with index order.
    pub fn index(&self, n: &[usize]) -> usize {
        debug_assert!(self.contains(n), "{n:?} outside {:?}", self.upper);
        let mut idx = 0;
        for (x, d) in n.iter().zip(&self.upper) {
            idx = idx * (d + 1) + x;
        }
        idx
    }

    pub fn degree(&self, mut idx: usize) -> Vec<usize> {
        let mut n = vec![0; self.m()];
        for j in (0..self.m()).rev() {
            let r = self.upper[j] + 1;
            n[j] = idx % r;
            idx /= r;
        }
        n
    }

    /// Degrees in lexicographic order.
    pub fn degrees(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.len()).map(move |i| self.degree(i))
    }

    /// `D - a`, or `None` if some coordinate would go negative.
    pub fn shrink(&self, a: &[usize]) -> Option<DegreeBox> {
        self.upper
            .iter()
            .zip(a)
            .map(|(d, x)| d.checked_sub(*x))
            .collect::<Option<Vec<_>>>()
            .map(DegreeBox::new)
    }

    pub fn meet(&self, other: &DegreeBox) -> DegreeBox {
        DegreeBox::new(
            self.upper
                .iter()
                .zip(&other.upper)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn le(&self, other: &DegreeBox) -> bool {
        self.upper.iter().zip(&other.upper).all(|(a, b)| a <= b)
    }

    pub fn as_window(&self) -> Window {
        Window {
            lower: DegreeVector::zero(self.m()),
            upper: DegreeVector::from_naturals(&self.upper),
        }
    }
}

/// A permutation of a finite set `{0, .., k-1}`, stored as its image list.
pub type Perm = Vec<usize>;

/// Adjacent transposition indices `i_1, .., i_L` (each `s_i` swaps `i, i+1`)
/// with `perm = s_{i_L} ∘ ... ∘ s_{i_1}`.
pub fn adjacent_word(perm: &[usize]) -> Vec<usize> {
    // Bubble sort on positions: perm ∘ s_{i_1} ∘ ... ∘ s_{i_L} = id.
    // Inverting gives perm = s_{i_L} ∘ ... ∘ s_{i_1}.
    let mut a = perm.to_vec();
    let mut word = Vec::new();
    let k = a.len();
    for pass in 0..k {
        let mut swapped = false;
        for i in 0..k.saturating_sub(1 + pass) {
            if a[i] > a[i + 1] {
                a.swap(i, i + 1);
                word.push(i);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    word
}

/// A morphism `[a] -> [n]` of `FI^m`: per factor, the list of images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InjectionTuple {
    pub target: Vec<usize>,
    pub images: Vec<Vec<usize>>,
}

impl fmt::Debug for InjectionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?}", self.images, self.target)
    }
}

/// `sigma ∘ (standard inclusion chain)`, see [`InjectionTuple::factorize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub sigma: Vec<Perm>,
    /// One-step inclusions `(degree, direction)` in the order they are applied.
    pub chain: Vec<(Vec<usize>, usize)>,
}

impl InjectionTuple {
    pub fn new(target: Vec<usize>, images: Vec<Vec<usize>>) -> Result<Self> {
        if target.len() != images.len() {
            return Err(Error::Shape("injection factor count mismatch".into()));
        }
        for (j, (img, &n)) in images.iter().zip(&target).enumerate() {
            let mut seen = vec![false; n];
            for &x in img {
                if x >= n || seen[x] {
                    return Err(Error::Shape(format!(
                        "factor {j} of {images:?} is not an injection into [{n}]"
                    )));
                }
                seen[x] = true;
            }
        }
        Ok(InjectionTuple { target, images })
    }

    pub fn identity(n: &[usize]) -> Self {
        InjectionTuple {
            target: n.to_vec(),
            images: n.iter().map(|&k| (0..k).collect()).collect(),
        }
    }

    /// The standard inclusion `[a] -> [n]`.
    pub fn standard(a: &[usize], n: &[usize]) -> Self {
        InjectionTuple {
            target: n.to_vec(),
            images: a.iter().map(|&k| (0..k).collect()).collect(),
        }
    }

    pub fn source(&self) -> Vec<usize> {
        self.images.iter().map(Vec::len).collect()
    }

    pub fn m(&self) -> usize {
        self.target.len()
    }

    pub fn is_bijective(&self) -> bool {
        self.source() == self.target
    }

    /// A transition map in the sense of at least one non-invertible factor.
    pub fn is_transition(&self) -> bool {
        !self.is_bijective()
    }

    pub fn apply(&self, j: usize, x: usize) -> usize {
        self.images[j][x]
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &InjectionTuple) -> Result<InjectionTuple> {
        if g.target != self.source() {
            return Err(Error::Shape(format!(
                "cannot compose {self:?} after {g:?}: target of g is not the source of f"
            )));
        }
        Ok(InjectionTuple {
            target: self.target.clone(),
            images: g
                .images
                .iter()
                .zip(&self.images)
                .map(|(gj, fj)| gj.iter().map(|&x| fj[x]).collect())
                .collect(),
        })
    }

    /// Writes `self = sigma ∘ std` where `std` is the composite of standard
    /// one-step inclusions `[a] -> [n]` (direction 0 first) and `sigma` is the
    /// lexicographically least permutation of `[n]` doing so: it agrees with
    /// `self` on the first `a_j` points and sends the remaining points to the
    /// complement of the image in increasing order.
    pub fn factorize(&self) -> Factorization {
        let a = self.source();
        let sigma = self
            .images
            .iter()
            .zip(&self.target)
            .map(|(img, &n)| {
                let mut used = vec![false; n];
                for &x in img {
                    used[x] = true;
                }
                let mut s = img.clone();
                s.extend((0..n).filter(|&x| !used[x]));
                s
            })
            .collect();
        let mut chain = Vec::new();
        let mut cur = a.clone();
        for j in 0..self.m() {
            while cur[j] < self.target[j] {
                chain.push((cur.clone(), j));
                cur[j] += 1;
            }
        }
        Factorization { sigma, chain }
    }
}

impl Factorization {
    /// Re-evaluates `sigma ∘ std` as an injection.
    pub fn evaluate(&self, source: &[usize]) -> InjectionTuple {
        InjectionTuple {
            target: self.sigma.iter().map(Vec::len).collect(),
            images: source
                .iter()
                .zip(&self.sigma)
                .map(|(&a, s)| s[..a].to_vec())
                .collect(),
        }
    }
}

/// All injections `[a] -> [n]` for one factor, in lexicographic order of the
/// image lists.
fn injections_1(a: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(a: usize, n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == a {
            out.push(cur.clone());
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(a, n, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    if a <= n {
        rec(a, n, &mut Vec::new(), &mut vec![false; n], &mut out);
    }
    out
}

/// `Hom_{FI^m}(a, n)` in lexicographic order (factor 0 most significant).
pub fn enumerate_injections(a: &[usize], n: &[usize]) -> Vec<InjectionTuple> {
    assert_eq!(a.len(), n.len());
    let per: Vec<Vec<Vec<usize>>> = a.iter().zip(n).map(|(&x, &y)| injections_1(x, y)).collect();
    if per.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; per.len()];
    loop {
        out.push(InjectionTuple {
            target: n.to_vec(),
            images: idx.iter().zip(&per).map(|(&i, p)| p[i].clone()).collect(),
        });
        let mut j = per.len();
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < per[j].len() {
                break;
            }
            idx[j] = 0;
        }
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `|Hom(a, n)| = prod_j n_j! / (n_j - a_j)!`.
pub fn injection_count(a: &[usize], n: &[usize]) -> usize {
    a.iter()
        .zip(n)
        .map(|(&x, &y)| if x > y { 0 } else { (y - x + 1..=y).product::<usize>() })
        .product()
}

/// Order-preserving enumeration of the `k`-element subsets of `{0..n}` as
/// bitmasks, in increasing numeric order.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<u64> {
    assert!(n < 64);
    (0u64..1 << n).filter(|s| s.count_ones() as usize == k).collect()
}
