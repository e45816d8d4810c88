use std::fmt;
use std::str::FromStr;

use crate::category::{parse_degree_key, DegreeBox};
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Matrix};

use super::{induced, SymmetricGroupRep, TruncatedModule};

/// Named modules accepted wherever a module file is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresetName {
    /// `FI^2`-module: `k` on the `x`-axis with identity transitions there.
    ExampleV,
    /// `FI^2`-module: `k` at every degree with `y >= 1`, identity transitions.
    ExampleK,
    /// `M(0)`: `k` everywhere, all maps identities.
    Constant,
    /// `k` at a single degree, all transitions zero.
    Point(Vec<usize>),
    /// `M(trivial)` generated in the given degree.
    Induced(Vec<usize>),
    /// `M(k[S_r])`.
    Regular(Vec<usize>),
}

impl FromStr for PresetName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "paper-example-V" => return Ok(PresetName::ExampleV),
            "paper-example-K" => return Ok(PresetName::ExampleK),
            "constant" => return Ok(PresetName::Constant),
            _ => {}
        }
        let (head, rest) = s.split_once('(').ok_or_else(|| Error::UnknownPreset(s.into()))?;
        let args = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::UnknownPreset(s.into()))?;
        let degree = parse_degree_key(args).map_err(|_| Error::UnknownPreset(s.into()))?;
        match head {
            "point" => Ok(PresetName::Point(degree)),
            "induced" => Ok(PresetName::Induced(degree)),
            "regular" => Ok(PresetName::Regular(degree)),
            _ => Err(Error::UnknownPreset(s.into())),
        }
    }
}

impl fmt::Display for PresetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let key = |n: &[usize]| crate::category::degree_key(n);
        match self {
            PresetName::ExampleV => write!(f, "paper-example-V"),
            PresetName::ExampleK => write!(f, "paper-example-K"),
            PresetName::Constant => write!(f, "constant"),
            PresetName::Point(n) => write!(f, "point({})", key(n)),
            PresetName::Induced(n) => write!(f, "induced({})", key(n)),
            PresetName::Regular(n) => write!(f, "regular({})", key(n)),
        }
    }
}

/// A module that is `k` on the degrees selected by `support` and has all
/// symmetric groups acting trivially. Transitions between supported degrees
/// are the identity; `support` must be upward closed for this to be a module
/// unless the transitions are zero (`connected = false`).
fn scalar_module(field: FieldSpec, window: DegreeBox, support: impl Fn(&[usize]) -> bool, connected: bool) -> Result<TruncatedModule> {
    TruncatedModule::from_generators(
        field,
        window,
        |n| usize::from(support(n)),
        |_, _, _| Matrix::identity(1),
        |n, j| {
            let mut up = n.to_vec();
            up[j] += 1;
            let (a, b) = (usize::from(support(n)), usize::from(support(&up)));
            if connected && a == 1 && b == 1 {
                Matrix::identity(1)
            } else {
                Matrix::zero(b, a)
            }
        },
    )
}

pub fn preset(name: &PresetName, field: FieldSpec, window: &DegreeBox) -> Result<TruncatedModule> {
    let m = window.m();
    let need = |len: usize| {
        if m == len {
            Ok(())
        } else {
            Err(Error::Shape(format!("preset {name} needs m = {len}, window has m = {m}")))
        }
    };
    match name {
        PresetName::ExampleV => {
            need(2)?;
            scalar_module(field, window.clone(), |n| n[1] == 0, true)
        }
        PresetName::ExampleK => {
            need(2)?;
            scalar_module(field, window.clone(), |n| n[1] >= 1, true)
        }
        PresetName::Constant => scalar_module(field, window.clone(), |_| true, true),
        PresetName::Point(p) => {
            need(p.len())?;
            scalar_module(field, window.clone(), |n| n == p.as_slice(), false)
        }
        PresetName::Induced(r) => {
            need(r.len())?;
            induced(field, &SymmetricGroupRep::trivial(r), window)
        }
        PresetName::Regular(r) => {
            need(r.len())?;
            induced(field, &SymmetricGroupRep::regular(r), window)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in ["paper-example-V", "paper-example-K", "constant", "point(1,1)", "induced(2)", "regular(1,0)"] {
            assert_eq!(s.parse::<PresetName>().unwrap().to_string(), s);
        }
        assert!("nonsense".parse::<PresetName>().is_err());
        assert!("point(a)".parse::<PresetName>().is_err());
    }

    #[test]
    fn example_dims() {
        let f = FieldSpec::default();
        let w = DegreeBox::new(vec![4, 4]);
        let v = preset(&PresetName::ExampleV, f, &w).unwrap();
        assert_eq!(v.dim(&[3, 0]), 1);
        assert_eq!(v.dim(&[0, 2]), 0);
        assert!(v.is_valid());
        let k = preset(&PresetName::ExampleK, f, &w).unwrap();
        assert_eq!(k.dim(&[0, 1]), 1);
        assert_eq!(k.dim(&[2, 0]), 0);
        assert!(k.is_valid());
        let p = preset(&PresetName::Point(vec![1, 1]), f, &w).unwrap();
        assert_eq!(p.total_dim(), 1);
        assert_eq!(p.dim(&[1, 1]), 1);
        assert!(p.is_valid());
    }
}
