//! Whitespace-delimited edge lists: one `src dst [weight]` arc per line,
//! `#` starts a comment line, ids are dense and 0-based.

use std::collections::HashSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::NetworkBuilder;
use crate::error::{Error, Result};

/// Graph topology as read from an edge list: node count plus weighted arcs.
#[derive(Debug, Clone, PartialEq)]
pub struct Topology {
    pub n: usize,
    pub arcs: Vec<(usize, usize, f64)>,
}

impl Topology {
    /// Builds a topology from arcs, rejecting out-of-range ids and duplicates.
    pub fn new(n: usize, arcs: Vec<(usize, usize, f64)>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(arcs.len());
        for &(src, dst, _) in &arcs {
            for id in [src, dst] {
                if id >= n {
                    return Err(Error::NodeOutOfRange { id, n });
                }
            }
            if !seen.insert((src, dst)) {
                return Err(Error::DuplicateEdge { src, dst });
            }
        }
        Ok(Topology { n, arcs })
    }

    /// Parses edge-list text. `origin` is only used in error messages.
    pub fn parse(text: &str, symmetrize: bool, default_weight: f64, origin: &Path) -> Result<Self> {
        let parse_err = |line: usize, message: String| Error::Parse {
            path: origin.to_path_buf(),
            line,
            message,
        };

        let mut arcs = Vec::new();
        let mut seen: HashSet<(usize, usize)> = HashSet::new();
        let mut max_id: Option<usize> = None;

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() < 2 || fields.len() > 3 {
                return Err(parse_err(
                    line_no,
                    format!("expected `src dst [weight]`, found {} fields", fields.len()),
                ));
            }
            let mut ids = [0usize; 2];
            for (slot, field) in ids.iter_mut().zip(&fields[..2]) {
                let id: i64 = field
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("invalid node id `{field}`")))?;
                if id < 0 {
                    return Err(parse_err(line_no, format!("negative node id {id}")));
                }
                *slot = id as usize;
            }
            let weight = match fields.get(2) {
                Some(field) => {
                    let w: f64 = field
                        .parse()
                        .map_err(|_| parse_err(line_no, format!("invalid weight `{field}`")))?;
                    if !w.is_finite() {
                        return Err(parse_err(line_no, format!("non-finite weight `{field}`")));
                    }
                    w
                }
                None => default_weight,
            };
            let [src, dst] = ids;
            max_id = Some(max_id.map_or(src.max(dst), |m| m.max(src).max(dst)));

            let mut push = |a: usize, b: usize| -> Result<()> {
                if !seen.insert((a, b)) {
                    return Err(parse_err(line_no, format!("duplicate edge ({a}, {b})")));
                }
                arcs.push((a, b, weight));
                Ok(())
            };
            push(src, dst)?;
            if symmetrize && src != dst {
                push(dst, src)?;
            }
        }

        let n = match max_id {
            Some(m) => m + 1,
            None => return Err(Error::NoNodes(origin.to_path_buf())),
        };
        Ok(Topology { n, arcs })
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(src, _, _) in &self.arcs {
            deg[src] += 1;
        }
        deg
    }

    /// Network builder carrying these arcs with their current weights.
    pub fn to_builder(&self) -> NetworkBuilder {
        NetworkBuilder::new(self.n).edges(self.arcs.iter().copied())
    }

    /// Writes `src dst weight` lines (no symmetrization on reload needed).
    /// Trailing isolated nodes are not representable in the format.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut out = std::io::BufWriter::new(fs::File::create(path)?);
        writeln!(out, "# nodes {} arcs {}", self.n, self.arcs.len())?;
        for &(src, dst, w) in &self.arcs {
            writeln!(out, "{src} {dst} {w}")?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Reads an edge list from disk. With `symmetrize`, each line is an
/// undirected edge and is stored as two arcs.
pub fn load_edge_list(path: impl AsRef<Path>, symmetrize: bool, default_weight: f64) -> Result<Topology> {
    let path: PathBuf = path.as_ref().to_path_buf();
    let text = fs::read_to_string(&path)?;
    Topology::parse(&text, symmetrize, default_weight, &path)
}
