//! Breadth-first export of an expanded fragment, one line per node.

use std::collections::VecDeque;
use std::fmt::Write;

use super::check::{Draw, Sampler};
use super::{Deriv, DerivError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRow {
    pub id: usize,
    /// The inference at the node, or `open` if it depends on a parameter.
    pub rule: String,
    pub main: String,
    pub bound: String,
    pub rank: u32,
    pub hull_size: usize,
    pub parent: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TraceFormat {
    #[default]
    Text,
    /// Tab-separated fields, one record per line.
    Records,
}

/// The nodes of `d` up to depth `k`, numbered breadth-first from 0.
pub fn trace(d: &Deriv, k: usize, sampler: &Sampler) -> Result<Vec<TraceRow>, DerivError> {
    let mut draw = Draw::new(sampler);
    let mut rows = Vec::new();
    let mut queue: VecDeque<(Deriv, usize, Option<usize>)> = VecDeque::from([(d.clone(), 0, None)]);
    while let Some((d, depth, parent)) = queue.pop_front() {
        let id = rows.len();
        let mut row = TraceRow {
            id,
            rule: "open".into(),
            main: String::new(),
            bound: d.bound().to_string(),
            rank: d.rank(),
            hull_size: d.hull().size(),
            parent,
        };
        let view = match d.rule() {
            Ok(v) => v,
            Err(DerivError::Open(_)) => {
                rows.push(row);
                continue;
            }
            Err(e) => return Err(e),
        };
        row.rule = view.tag().to_string();
        row.main = view.formula().to_string();
        rows.push(row);
        if depth == k {
            continue;
        }
        for i in draw.indices(&view).0 {
            match view.premise(&i) {
                Ok(p) => queue.push_back((p, depth + 1, Some(id))),
                Err(DerivError::Open(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(rows)
}

pub fn render(rows: &[TraceRow], format: TraceFormat) -> String {
    let mut out = String::new();
    for r in rows {
        let parent = r.parent.map_or_else(|| "-".to_string(), |p| p.to_string());
        let _ = match format {
            TraceFormat::Text => writeln!(
                out,
                "{:>5} {:<6} {:<24} rank {} hull {} parent {}  {}",
                r.id, r.rule, r.bound, r.rank, r.hull_size, parent, r.main
            ),
            TraceFormat::Records => writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                r.id, r.rule, r.main, r.bound, r.rank, r.hull_size, parent
            ),
        };
    }
    out
}
