//! Ingestion of bipartite networks from text.
//!
//! Two formats are supported:
//!
//! * **Incidence CSV** — one row per row-partition species, one column per
//!   column-partition species, comma-separated non-negative numeric cells.
//!   A cell value greater than zero records an interaction; magnitudes are
//!   discarded. An optional header row carries column labels and an optional
//!   leading label column carries row labels (with or without a corner cell).
//! * **Edge list** — one `row<sep>col[<sep>weight]` line per interaction,
//!   where `<sep>` is a tab if the line contains one, otherwise a comma.
//!   Blank lines and lines starting with `#` are skipped; the weight field
//!   must be numeric and is discarded; duplicate lines collapse to one edge.
//!
//! Labels are interned in first-appearance order (edge lists) or file order
//! (incidence), and all algorithmic tie-breaking downstream refers to these
//! indices, so a given file always produces the same node numbering.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, InteractionType};

/// Network id given to freshly parsed graphs until a manifest renames them.
pub const DEFAULT_NETWORK_ID: &str = "network";

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses an incidence-matrix CSV.
///
/// `header_row` marks the first line as column labels; `label_column` marks
/// the first field of each data row as the row label. With both set, the
/// header may or may not include a corner cell above the label column.
/// Every data row must have the same number of cells; cells must parse as
/// non-negative numbers. Zero rows or zero columns is an error, and isolated
/// (all-zero) rows and columns are kept as nodes.
pub fn parse_incidence_csv(
    text: &str,
    header_row: bool,
    label_column: bool,
) -> Result<BipartiteGraph> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();

    let mut rows = lines.as_slice();
    let mut header: Option<(usize, Vec<&str>)> = None;
    if header_row {
        let Some(((line_no, first), rest)) = rows.split_first() else {
            return Err(Error::EmptyNetwork("incidence file has no rows".into()));
        };
        header = Some((*line_no, first.split(',').map(str::trim).collect()));
        rows = rest;
    }
    if rows.is_empty() {
        return Err(Error::EmptyNetwork("incidence matrix has no data rows".into()));
    }

    let mut row_labels = Vec::new();
    let mut edges = Vec::new();
    let mut width: Option<usize> = None;
    for (data_index, &(line_no, line)) in rows.iter().enumerate() {
        let mut fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if label_column {
            row_labels.push(fields.remove(0).to_string());
        } else {
            row_labels.push(format!("row{}", data_index + 1));
        }
        match width {
            None => {
                if fields.is_empty() {
                    return Err(Error::EmptyNetwork(
                        "incidence matrix has no data columns".into(),
                    ));
                }
                width = Some(fields.len());
            }
            Some(w) if fields.len() != w => {
                return Err(parse_err(
                    line_no,
                    format!("row has {} cells but expected {}", fields.len(), w),
                ));
            }
            _ => {}
        }
        for (col, cell) in fields.iter().enumerate() {
            let value: f64 = cell
                .parse()
                .map_err(|_| parse_err(line_no, format!("cell {:?} is not a number", cell)))?;
            if value.is_nan() || value < 0.0 {
                return Err(parse_err(
                    line_no,
                    format!("cell value {value} must be non-negative"),
                ));
            }
            if value > 0.0 {
                edges.push((data_index, col));
            }
        }
    }
    let width = width.unwrap();

    let col_labels: Vec<String> = match header {
        Some((line_no, mut fields)) => {
            // Tolerate a corner cell above the label column.
            if label_column && fields.len() == width + 1 {
                fields.remove(0);
            }
            if fields.len() != width {
                return Err(parse_err(
                    line_no,
                    format!("header has {} labels but data has {} columns", fields.len(), width),
                ));
            }
            fields.into_iter().map(str::to_string).collect()
        }
        None => (1..=width).map(|j| format!("col{j}")).collect(),
    };

    BipartiteGraph::new(
        DEFAULT_NETWORK_ID,
        InteractionType::Other,
        row_labels,
        col_labels,
        edges,
    )
}

/// Parses an incidence CSV, detecting header row and label column by whether
/// the corresponding cells fail to parse as numbers.
pub fn parse_incidence_csv_auto(text: &str) -> Result<BipartiteGraph> {
    let lines: Vec<&str> = text
        .lines()
        .map(|l| l.trim_end_matches('\r'))
        .filter(|l| !l.trim().is_empty())
        .collect();
    let is_numeric = |s: &str| s.trim().parse::<f64>().is_ok();
    let header_row = lines
        .first()
        .map(|l| l.split(',').any(|cell| !is_numeric(cell)))
        .unwrap_or(false);
    let data = if header_row { &lines[1..] } else { &lines[..] };
    let label_column = data
        .iter()
        .any(|l| l.split(',').next().map(|c| !is_numeric(c)).unwrap_or(false));
    parse_incidence_csv(text, header_row, label_column)
}

/// Parses the edge-list format. Row and column labels live in separate
/// namespaces: a name appearing on both sides denotes two distinct nodes.
pub fn parse_edge_list(text: &str) -> Result<BipartiteGraph> {
    let mut row_labels: Vec<String> = Vec::new();
    let mut col_labels: Vec<String> = Vec::new();
    let mut row_index: HashMap<String, usize> = HashMap::new();
    let mut col_index: HashMap<String, usize> = HashMap::new();
    let mut edges = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let sep = if line.contains('\t') { '\t' } else { ',' };
        let fields: Vec<&str> = line.split(sep).map(str::trim).collect();
        if fields.len() != 2 && fields.len() != 3 {
            return Err(parse_err(
                line_no,
                format!("expected 2 or 3 fields, found {}", fields.len()),
            ));
        }
        if fields[0].is_empty() || fields[1].is_empty() {
            return Err(parse_err(line_no, "empty species name"));
        }
        if let Some(weight) = fields.get(2) {
            weight.parse::<f64>().map_err(|_| {
                parse_err(line_no, format!("weight {:?} is not a number", weight))
            })?;
        }
        let r = *row_index.entry(fields[0].to_string()).or_insert_with(|| {
            row_labels.push(fields[0].to_string());
            row_labels.len() - 1
        });
        let c = *col_index.entry(fields[1].to_string()).or_insert_with(|| {
            col_labels.push(fields[1].to_string());
            col_labels.len() - 1
        });
        edges.push((r, c));
    }

    if row_labels.is_empty() {
        return Err(Error::EmptyNetwork("edge list contains no interactions".into()));
    }
    BipartiteGraph::new(
        DEFAULT_NETWORK_ID,
        InteractionType::Other,
        row_labels,
        col_labels,
        edges,
    )
}
