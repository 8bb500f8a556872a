//! Decompositions bundled with the crate.

use crate::bgform::BGDecomposition;
use crate::error::{Error, Result};

const FILES: &[(&str, &str)] = &[
    ("level11", include_str!("../data/level11.json")),
    ("level23", include_str!("../data/level23.json")),
    ("level32", include_str!("../data/level32.json")),
    ("level35f", include_str!("../data/level35f.json")),
    ("level35g", include_str!("../data/level35g.json")),
    ("level35h", include_str!("../data/level35h.json")),
    ("level43", include_str!("../data/level43.json")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|(n, _)| *n)
}

/// Raw JSON of a bundled decomposition.
pub fn source(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn load(name: &str) -> Result<BGDecomposition> {
    let text = source(name).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "no bundled decomposition {name:?} (have {})",
            names().collect::<Vec<_>>().join(", ")
        ))
    })?;
    BGDecomposition::from_json(text)
}
