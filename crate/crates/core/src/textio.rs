//! Plain-text matrix and pair files.
//!
//! One codeword per line as a `0`/`1` string (index 1 is the leftmost
//! character), `#` comment lines, and blank lines between blocks. A pair
//! file holds a `C₁` block, a `C₂` block and an optional coset block; a
//! block may carry a label comment (`# C1`, `# C2`, `# coset`), and a
//! labelled paragraph without vectors is an empty block. Comments of the
//! form `# key: value` are metadata.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::construction::{CssPair, Provenance};
use crate::error::{Error, Result};
use crate::gf2::{BitVector, LinearCode};

const LABELS: [&str; 3] = ["c1", "c2", "coset"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub label: Option<String>,
    pub rows: Vec<BitVector>,
    /// 1-based line of the first line of the paragraph.
    pub line: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParsedFile {
    pub blocks: Vec<Block>,
    pub metadata: BTreeMap<String, String>,
}

impl ParsedFile {
    fn block(&self, label: &str, position: usize) -> Option<&Block> {
        if self.blocks.iter().any(|b| b.label.is_some()) {
            self.blocks.iter().find(|b| b.label.as_deref() == Some(label))
        } else {
            self.blocks.get(position)
        }
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse(text: &str) -> Result<ParsedFile> {
    let mut out = ParsedFile::default();
    let mut current: Option<Block> = None;
    let mut width: Option<usize> = None;
    let flush = |current: &mut Option<Block>, out: &mut ParsedFile| {
        if let Some(b) = current.take() {
            if !b.rows.is_empty() || b.label.is_some() {
                out.blocks.push(b);
            }
        }
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            flush(&mut current, &mut out);
            continue;
        }
        let block = current.get_or_insert_with(|| Block {
            label: None,
            rows: Vec::new(),
            line,
        });
        if let Some(comment) = trimmed.strip_prefix('#') {
            let comment = comment.trim();
            let lower = comment.to_ascii_lowercase();
            if LABELS.contains(&lower.as_str()) {
                if block.label.is_some() || !block.rows.is_empty() {
                    return Err(parse_error(line, "block label must open its block"));
                }
                block.label = Some(lower);
            } else if let Some((key, value)) = comment.split_once(':') {
                let key = key.trim();
                if !key.is_empty() && !key.contains(char::is_whitespace) {
                    out.metadata.insert(key.to_ascii_lowercase(), value.trim().to_string());
                }
            }
            continue;
        }
        let row: BitVector = trimmed
            .parse()
            .map_err(|_| parse_error(line, format!("not a 0/1 vector: {trimmed:?}")))?;
        match width {
            Some(w) if w != row.len() => {
                return Err(parse_error(
                    line,
                    format!("vector has length {}, expected {w}", row.len()),
                ))
            }
            _ => width = Some(row.len()),
        }
        block.rows.push(row);
    }
    flush(&mut current, &mut out);
    Ok(out)
}

/// A matrix file: the rows of the first block.
pub fn read_matrix(text: &str) -> Result<Vec<BitVector>> {
    let parsed = parse(text)?;
    let block = parsed
        .blocks
        .iter()
        .find(|b| !b.rows.is_empty())
        .ok_or_else(|| parse_error(0, "no vectors found"))?;
    Ok(block.rows.clone())
}

pub fn read_code(text: &str) -> Result<LinearCode> {
    let rows = read_matrix(text)?;
    LinearCode::from_generators(rows[0].len(), rows)
}

/// Signature vectors stored with a pair.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signatures {
    pub s_x: Option<BitVector>,
    pub s_z: Option<BitVector>,
}

fn metadata_vector(meta: &BTreeMap<String, String>, key: &str) -> Result<Option<BitVector>> {
    meta.get(key)
        .map(|v| {
            v.parse()
                .map_err(|_| parse_error(0, format!("metadata {key} is not a 0/1 vector")))
        })
        .transpose()
}

fn metadata_number<T: std::str::FromStr>(meta: &BTreeMap<String, String>, key: &str) -> Result<Option<T>> {
    meta.get(key)
        .map(|v| {
            v.parse()
                .map_err(|_| parse_error(0, format!("metadata {key} is not a number: {v:?}")))
        })
        .transpose()
}

fn provenance(meta: &BTreeMap<String, String>) -> Result<Option<Provenance>> {
    if !["source", "t", "p", "m", "permutation"].iter().any(|k| meta.contains_key(*k)) {
        return Ok(None);
    }
    let permutation = match meta.get("permutation") {
        Some(v) => v
            .split_whitespace()
            .map(|c| {
                c.parse()
                    .map_err(|_| parse_error(0, format!("bad permutation entry {c:?}")))
            })
            .collect::<Result<Vec<usize>>>()?,
        None => Vec::new(),
    };
    Ok(Some(Provenance {
        source: meta.get("source").cloned(),
        t: metadata_number(meta, "t")?.unwrap_or(0),
        p: metadata_number(meta, "p")?.unwrap_or(0),
        permutation,
        divisibility: metadata_number(meta, "m")?,
    }))
}

pub fn read_pair(text: &str) -> Result<(CssPair, Signatures)> {
    let parsed = parse(text)?;
    let c1 = parsed
        .block("c1", 0)
        .ok_or_else(|| parse_error(0, "missing C1 block"))?;
    let c2 = parsed
        .block("c2", 1)
        .ok_or_else(|| parse_error(0, "missing C2 block"))?;
    let coset = parsed.block("coset", 2).map(|b| b.rows.clone());
    let n = [c1, c2]
        .iter()
        .flat_map(|b| b.rows.first())
        .map(BitVector::len)
        .next()
        .ok_or_else(|| parse_error(c1.line, "C1 block has no vectors"))?;
    let c1_code = LinearCode::from_generators(n, c1.rows.clone())?;
    let mut pair = CssPair::from_parts(c1_code, c2.rows.clone(), coset)?;
    if let Some(p) = provenance(&parsed.metadata)? {
        pair = pair.with_provenance(p);
    }
    let signatures = Signatures {
        s_x: metadata_vector(&parsed.metadata, "s_x")?,
        s_z: metadata_vector(&parsed.metadata, "s_z")?,
    };
    for s in [&signatures.s_x, &signatures.s_z].into_iter().flatten() {
        if s.len() != n {
            return Err(Error::dimension(n, s.len()));
        }
    }
    Ok((pair, signatures))
}

pub fn write_matrix(rows: &[BitVector], comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(c) = comment {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    for r in rows {
        let _ = writeln!(out, "{r}");
    }
    out
}

pub fn write_code(code: &LinearCode, comment: Option<&str>) -> String {
    write_matrix(code.generator().rows(), comment)
}

/// Pair file with `C₁` written as the `C₂` basis followed by the coset generators.
pub fn write_pair(pair: &CssPair, signatures: &Signatures) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# CSS pair: n = {}, dim C1 = {}, dim C2 = {}",
        pair.n(),
        pair.c1().dim(),
        pair.c2().dim()
    );
    if let Some(p) = pair.provenance() {
        if let Some(s) = &p.source {
            let _ = writeln!(out, "# source: {s}");
        }
        if let Some(m) = p.divisibility {
            let _ = writeln!(out, "# m: {m}");
        }
        let _ = writeln!(out, "# t: {}", p.t);
        let _ = writeln!(out, "# p: {}", p.p);
        if !p.permutation.is_empty() {
            let perm: Vec<String> = p.permutation.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "# permutation: {}", perm.join(" "));
        }
    }
    if let Some(s) = &signatures.s_x {
        let _ = writeln!(out, "# s_x: {s}");
    }
    if let Some(s) = &signatures.s_z {
        let _ = writeln!(out, "# s_z: {s}");
    }
    let block = |out: &mut String, label: &str, rows: &[&BitVector]| {
        let _ = writeln!(out, "\n# {label}");
        for r in rows {
            let _ = writeln!(out, "{r}");
        }
    };
    let x: Vec<&BitVector> = pair.c2_basis().rows().iter().collect();
    let y: Vec<&BitVector> = pair.coset_gens().rows().iter().collect();
    let c1: Vec<&BitVector> = x.iter().chain(&y).copied().collect();
    block(&mut out, "C1", &c1);
    block(&mut out, "C2", &x);
    block(&mut out, "coset", &y);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_labelled_blocks_and_metadata() {
        let text = "# header\n# note: hello\n\n# C1\n110\n011\n\n# C2\n\n# coset\n110\n011\n";
        let parsed = parse(text).unwrap();
        assert_eq!(parsed.metadata.get("note").map(String::as_str), Some("hello"));
        assert_eq!(parsed.blocks.len(), 3);
        assert!(parsed.blocks[1].rows.is_empty());
        let (pair, _) = read_pair(text).unwrap();
        assert_eq!((pair.c1().dim(), pair.c2().dim(), pair.k()), (2, 0, 2));
    }

    #[test]
    fn unlabelled_blocks_are_positional() {
        let (pair, sig) = read_pair("# s_z: 001\n111\n\n111\n").unwrap();
        assert_eq!(pair.k(), 0);
        assert_eq!(sig.s_z, Some("001".parse().unwrap()));
    }

    #[test]
    fn reports_bad_lines() {
        assert!(matches!(parse("101\n1x1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse("101\n10\n"), Err(Error::Parse { line: 2, .. })));
        assert!(read_matrix("# only comments\n").is_err());
    }

    #[test]
    fn pair_round_trip() {
        let c1 = LinearCode::from_generators(4, ["1100".parse().unwrap(), "0011".parse().unwrap()]).unwrap();
        let pair = CssPair::from_parts(c1, vec!["1111".parse().unwrap()], None)
            .unwrap()
            .with_provenance(Provenance {
                source: Some("toy".into()),
                t: 1,
                p: 0,
                permutation: vec![1, 0, 2, 3],
                divisibility: Some(1),
            });
        let sig = Signatures {
            s_x: None,
            s_z: Some("1000".parse().unwrap()),
        };
        let text = write_pair(&pair, &sig);
        let (back, sig_back) = read_pair(&text).unwrap();
        assert_eq!(back, pair);
        assert_eq!(sig_back, sig);
    }
}
