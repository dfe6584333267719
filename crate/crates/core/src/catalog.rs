//! Built-in codes. Stated parameters are re-derived by exhaustive
//! enumeration every time an entry is loaded.

use serde::Serialize;

use crate::construction::CssPair;
use crate::error::{Error, Result};
use crate::gf2::{Divisibility, LinearCode};
use crate::textio;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Stated {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    /// Divisibility exponent `m`: all weights are multiples of `2^m`.
    pub m: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub code: LinearCode,
    /// Present for entries that are nested pairs; `code` is then `C₁`.
    pub pair: Option<CssPair>,
    pub stated: Stated,
    pub notes: &'static str,
    /// The shipped file the entry was parsed from.
    pub text: &'static str,
}

struct Source {
    name: &'static str,
    text: &'static str,
    stated: Stated,
    is_pair: bool,
    notes: &'static str,
}

const SOURCES: [Source; 4] = [
    Source {
        name: "e8",
        text: include_str!("../data/e8.txt"),
        stated: Stated { n: 8, k: 4, d: 4, m: 2 },
        is_pair: false,
        notes: "extended Hamming code, self-dual doubly-even",
    },
    Source {
        name: "golay24",
        text: include_str!("../data/golay24.txt"),
        stated: Stated { n: 24, k: 12, d: 8, m: 2 },
        is_pair: false,
        notes: "extended Golay code, self-dual doubly-even",
    },
    Source {
        name: "rm_1_4",
        text: include_str!("../data/rm_1_4.txt"),
        stated: Stated { n: 16, k: 5, d: 8, m: 3 },
        is_pair: false,
        notes: "first-order Reed-Muller code RM(1,4), triply-even",
    },
    Source {
        name: "example1_36",
        text: include_str!("../data/example1_36.txt"),
        stated: Stated { n: 36, k: 6, d: 15, m: 0 },
        is_pair: true,
        notes: "nested pair with C2*C1 inside C1-dual that admits no CSS-T signature; C1 dimension 6, C2 dimension 5",
    },
];

#[must_use]
pub fn names() -> Vec<&'static str> {
    SOURCES.iter().map(|s| s.name).collect()
}

fn load(source: &Source) -> Result<CatalogEntry> {
    let (code, pair) = if source.is_pair {
        let (pair, _) = textio::read_pair(source.text)?;
        (pair.c1().clone(), Some(pair))
    } else {
        (textio::read_code(source.text)?, None)
    };
    let found = Stated {
        n: code.n(),
        k: code.dim(),
        d: code.min_weight()?,
        m: match code.divisibility()? {
            Divisibility::Exponent(m) => m,
            Divisibility::ZeroCode => 0,
        },
    };
    if found != source.stated {
        return Err(Error::Structure(format!(
            "catalog entry {} has {found:?}, stated {:?}",
            source.name, source.stated
        )));
    }
    Ok(CatalogEntry {
        name: source.name,
        code,
        pair,
        stated: source.stated,
        notes: source.notes,
        text: source.text,
    })
}

/// Load one entry by name, re-verifying its parameters.
pub fn entry(name: &str) -> Result<CatalogEntry> {
    let source = SOURCES
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::InvalidInput(format!("unknown catalog entry {name:?}; known: {}", names().join(", "))))?;
    load(source)
}

/// All entries, each re-verified.
pub fn catalog() -> Result<Vec<CatalogEntry>> {
    SOURCES.iter().map(load).collect()
}
