//! Serializable tables shared by the engines and the command-line tool.

use std::fmt;
use std::marker::PhantomData;

use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::category::{degree_key, parse_degree_key, DegreeBox};
use crate::error::Result;

/// A JSON object whose keys keep their insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrderedMap<T>(pub Vec<(String, T)>);

impl<T> OrderedMap<T> {
    pub fn get(&self, key: &str) -> Option<&T> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

impl<T: Serialize> Serialize for OrderedMap<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for OrderedMap<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V<T>(PhantomData<T>);
        impl<'de, T: Deserialize<'de>> Visitor<'de> for V<T> {
            type Value = OrderedMap<T>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object keyed by degree strings")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut a: A) -> std::result::Result<Self::Value, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = a.next_entry()? {
                    out.push((k, v));
                }
                Ok(OrderedMap(out))
            }
        }
        d.deserialize_map(V(PhantomData))
    }
}

/// Dimensions per degree of a box, in lexicographic degree order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimTable {
    pub window: DegreeBox,
    dims: Vec<usize>,
}

impl DimTable {
    pub fn from_fn(window: &DegreeBox, mut f: impl FnMut(&[usize]) -> usize) -> Self {
        DimTable {
            window: window.clone(),
            dims: window.degrees().map(|n| f(&n)).collect(),
        }
    }

    pub fn get(&self, n: &[usize]) -> usize {
        self.dims[self.window.index(n)]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, usize)> + '_ {
        self.window.degrees().zip(self.dims.iter().copied())
    }

    /// Degrees with nonzero dimension.
    pub fn support(&self) -> Vec<Vec<usize>> {
        self.iter().filter(|(_, d)| *d > 0).map(|(n, _)| n).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    /// The same table on a sub-box.
    pub fn restrict(&self, window: &DegreeBox) -> DimTable {
        DimTable::from_fn(window, |n| self.get(n))
    }

    pub fn to_ordered(&self) -> OrderedMap<usize> {
        OrderedMap(self.iter().map(|(n, d)| (degree_key(&n), d)).collect())
    }

    pub fn from_ordered(window: DegreeBox, map: &OrderedMap<usize>) -> Result<Self> {
        let mut dims = vec![0; window.len()];
        for (k, d) in &map.0 {
            let n = parse_degree_key(k)?;
            if !window.contains(&n) {
                return Err(crate::Error::Format(format!("degree `{k}` outside the window")));
            }
            dims[window.index(&n)] = *d;
        }
        Ok(DimTable { window, dims })
    }
}

impl Serialize for DimTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_ordered().serialize(s)
    }
}
