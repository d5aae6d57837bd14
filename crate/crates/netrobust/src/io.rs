//! Manifest-driven ingestion and deterministic result emission.
//!
//! Output stability contract: fixed column order, LF line endings, floats
//! printed with Rust's shortest round-trip formatting. Identical runs are
//! byte-identical.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, InteractionType};
use crate::parse::{parse_edge_list, parse_incidence_csv_auto};
use crate::robustness::{AggregateCurve, MetricId, RobustnessRecord, SweepConfig};

/// On-disk format of one network file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NetworkFormat {
    IncidenceCsv,
    EdgeList,
}

impl NetworkFormat {
    pub fn parse_lenient(s: &str) -> Option<NetworkFormat> {
        let key: String = s
            .chars()
            .filter(|c| !matches!(c, '-' | '_' | ' '))
            .flat_map(|c| c.to_lowercase())
            .collect();
        match key.as_str() {
            "incidencecsv" | "incidence" | "csv" => Some(NetworkFormat::IncidenceCsv),
            "edgelist" | "edges" => Some(NetworkFormat::EdgeList),
            _ => None,
        }
    }
}

/// One row of a manifest: where a network lives and what it is.
#[derive(Debug, Clone)]
pub struct ManifestEntry {
    /// Resolved relative to the manifest's own directory.
    pub path: PathBuf,
    pub network_id: String,
    pub interaction_type: InteractionType,
    pub format: NetworkFormat,
}

/// Reads a manifest CSV with header `path,network_id,interaction_type,format`.
///
/// Unknown interaction types map to `other` with a warning (returned, not
/// printed). Duplicate network ids and missing files are hard errors; all
/// missing paths are listed at once.
pub fn load_manifest(path: &Path) -> Result<(Vec<ManifestEntry>, Vec<String>)> {
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let mut reader = csv::Reader::from_path(path)
        .map_err(|e| Error::Manifest(format!("cannot open {}: {e}", path.display())))?;
    let headers = reader
        .headers()
        .map_err(|e| Error::Manifest(e.to_string()))?
        .clone();
    let expected = ["path", "network_id", "interaction_type", "format"];
    let found: Vec<String> = headers.iter().map(|h| h.trim().to_lowercase()).collect();
    if found != expected {
        return Err(Error::Manifest(format!(
            "header must be {:?}, found {:?}",
            expected.join(","),
            found.join(",")
        )));
    }

    let mut entries = Vec::new();
    let mut warnings = Vec::new();
    let mut seen_ids = std::collections::BTreeSet::new();
    for (i, row) in reader.records().enumerate() {
        let row = row.map_err(|e| Error::Manifest(format!("row {}: {e}", i + 2)))?;
        if row.len() != 4 {
            return Err(Error::Manifest(format!(
                "row {}: expected 4 fields, found {}",
                i + 2,
                row.len()
            )));
        }
        let network_id = row[1].trim().to_string();
        if network_id.is_empty() {
            return Err(Error::Manifest(format!("row {}: empty network_id", i + 2)));
        }
        if !seen_ids.insert(network_id.clone()) {
            return Err(Error::Manifest(format!(
                "duplicate network_id {network_id:?}"
            )));
        }
        let interaction_type = match InteractionType::parse_lenient(row[2].trim()) {
            Some(t) => t,
            None => {
                warnings.push(format!(
                    "network {network_id}: unknown interaction type {:?}, using other",
                    row[2].trim()
                ));
                InteractionType::Other
            }
        };
        let format = NetworkFormat::parse_lenient(row[3].trim()).ok_or_else(|| {
            Error::Manifest(format!(
                "network {network_id}: unknown format {:?}",
                row[3].trim()
            ))
        })?;
        entries.push(ManifestEntry {
            path: base.join(row[0].trim()),
            network_id,
            interaction_type,
            format,
        });
    }

    let missing: Vec<String> = entries
        .iter()
        .filter(|e| !e.path.is_file())
        .map(|e| e.path.display().to_string())
        .collect();
    if !missing.is_empty() {
        return Err(Error::Manifest(format!(
            "missing network files: {}",
            missing.join(", ")
        )));
    }
    Ok((entries, warnings))
}

/// Reads and parses the network a manifest entry points at. Incidence files
/// go through header auto-detection.
pub fn load_network(entry: &ManifestEntry) -> Result<BipartiteGraph> {
    let text = fs::read_to_string(&entry.path)?;
    let graph = match entry.format {
        NetworkFormat::IncidenceCsv => parse_incidence_csv_auto(&text)?,
        NetworkFormat::EdgeList => parse_edge_list(&text)?,
    };
    Ok(graph.with_metadata(entry.network_id.clone(), entry.interaction_type))
}

/// Everything needed to reproduce a batch run, echoed into `report.json`.
#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub manifest: String,
    pub out_dir: String,
    pub sweep: SweepConfig,
    pub bin_count: usize,
    pub threads: usize,
    pub allow_failures: bool,
    pub drop_isolated: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FailureEntry {
    pub network_id: String,
    pub error: String,
}

/// Summary of one batch run.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub tool_version: String,
    pub networks_processed: usize,
    pub records_emitted: usize,
    pub failures: Vec<FailureEntry>,
    pub warnings: Vec<String>,
    pub config: ConfigEcho,
}

/// Shortest round-trip float formatting (what `{}` does for f64).
fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

pub const RECORDS_HEADER: [&str; 8] = [
    "network_id",
    "interaction_type",
    "k_added",
    "added_fraction",
    "replicate",
    "seed",
    "metric",
    "value",
];

/// Writes the long-form records CSV.
pub fn write_records_csv(path: &Path, records: &[RobustnessRecord]) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record(RECORDS_HEADER)?;
    for r in records {
        writer.write_record([
            r.network_id.as_str(),
            r.interaction_type.name(),
            &r.k_added.to_string(),
            &fmt_f64(r.added_fraction),
            &r.replicate.to_string(),
            &r.seed.to_string(),
            r.metric.name(),
            &fmt_f64(r.value),
        ])?;
    }
    writer.flush()?;
    Ok(())
}

/// Reads a records CSV produced by [`write_records_csv`].
pub fn read_records_csv(path: &Path) -> Result<Vec<RobustnessRecord>> {
    let mut reader = csv::Reader::from_path(path)
        .map_err(|e| Error::Manifest(format!("cannot open {}: {e}", path.display())))?;
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| Error::Manifest(e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    if headers != RECORDS_HEADER {
        return Err(Error::Manifest(format!(
            "records header must be {:?}",
            RECORDS_HEADER.join(",")
        )));
    }
    let mut records = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let row = row.map_err(|e| Error::Manifest(format!("row {}: {e}", i + 2)))?;
        let field = |j: usize| row.get(j).unwrap_or("").trim();
        let bad = |what: &str| Error::Manifest(format!("row {}: bad {what}", i + 2));
        records.push(RobustnessRecord {
            network_id: field(0).to_string(),
            interaction_type: InteractionType::parse_lenient(field(1))
                .ok_or_else(|| bad("interaction_type"))?,
            k_added: field(2).parse().map_err(|_| bad("k_added"))?,
            added_fraction: field(3).parse().map_err(|_| bad("added_fraction"))?,
            replicate: field(4).parse().map_err(|_| bad("replicate"))?,
            seed: field(5).parse().map_err(|_| bad("seed"))?,
            metric: field(6).parse().map_err(|_| bad("metric"))?,
            value: field(7).parse().map_err(|_| bad("value"))?,
        });
    }
    Ok(records)
}

pub const AGGREGATE_HEADER: [&str; 7] = [
    "interaction_type",
    "metric",
    "fraction_bin_center",
    "mean_normalized_value",
    "std",
    "n_samples",
    "unnormalized_networks",
];

/// Writes the binned curves CSV, one row per (curve, bin).
pub fn write_aggregate_csv(path: &Path, curves: &[AggregateCurve]) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record(AGGREGATE_HEADER)?;
    for curve in curves {
        let flagged = curve.unnormalized_networks.join(";");
        for bin in &curve.bins {
            writer.write_record([
                curve.interaction_type.name(),
                curve.metric.name(),
                &fmt_f64(bin.fraction_bin_center),
                &fmt_f64(bin.mean_normalized_value),
                &fmt_f64(bin.std),
                &bin.n_samples.to_string(),
                &flagged,
            ])?;
        }
    }
    writer.flush()?;
    Ok(())
}

/// Serializes the run report as pretty JSON with a trailing newline.
pub fn write_report_json(path: &Path, report: &RunReport) -> Result<()> {
    let mut text = serde_json::to_string_pretty(report)
        .map_err(|e| Error::Manifest(format!("report serialization: {e}")))?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

/// Table rows for the `metrics` command: label/value pairs in fixed order.
pub fn metrics_rows(
    g: &BipartiteGraph,
    values: &std::collections::BTreeMap<MetricId, f64>,
) -> Vec<(String, String)> {
    let mut rows = vec![
        ("nodes".to_string(), g.node_count().to_string()),
        ("edges".to_string(), g.edge_count().to_string()),
        ("connectance".to_string(), fmt_f64(g.connectance())),
    ];
    for metric in MetricId::ALL {
        let rendered = match values.get(&metric) {
            Some(&v) => fmt_f64(v),
            None => "NA".to_string(),
        };
        rows.push((metric.name().to_string(), rendered));
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_file(dir: &Path, name: &str, content: &str) -> PathBuf {
        let path = dir.join(name);
        let mut f = fs::File::create(&path).unwrap();
        f.write_all(content.as_bytes()).unwrap();
        path
    }

    #[test]
    fn manifest_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        write_file(dir.path(), "a.csv", "1,0\n0,1\n");
        write_file(dir.path(), "b.txt", "p,q\n");
        let manifest = write_file(
            dir.path(),
            "manifest.csv",
            "path,network_id,interaction_type,format\n\
             a.csv,net_a,pollination,incidence_csv\n\
             b.txt,net_b,mutualism,edge_list\n",
        );
        let (entries, warnings) = load_manifest(&manifest).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].interaction_type, InteractionType::Pollination);
        assert_eq!(entries[1].interaction_type, InteractionType::Other);
        assert_eq!(warnings.len(), 1);
        let g = load_network(&entries[0]).unwrap();
        assert_eq!(g.network_id(), "net_a");
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn manifest_duplicate_ids_rejected() {
        let dir = tempfile::tempdir().unwrap();
        write_file(dir.path(), "a.csv", "1\n");
        let manifest = write_file(
            dir.path(),
            "manifest.csv",
            "path,network_id,interaction_type,format\n\
             a.csv,dup,pollination,incidence_csv\n\
             a.csv,dup,pollination,incidence_csv\n",
        );
        assert!(matches!(load_manifest(&manifest), Err(Error::Manifest(_))));
    }

    #[test]
    fn manifest_lists_all_missing_files() {
        let dir = tempfile::tempdir().unwrap();
        let manifest = write_file(
            dir.path(),
            "manifest.csv",
            "path,network_id,interaction_type,format\n\
             gone1.csv,n1,pollination,incidence_csv\n\
             gone2.csv,n2,plant-ant,incidence_csv\n",
        );
        match load_manifest(&manifest) {
            Err(Error::Manifest(msg)) => {
                assert!(msg.contains("gone1.csv") && msg.contains("gone2.csv"), "{msg}");
            }
            other => panic!("expected manifest error, got {other:?}"),
        }
    }

    #[test]
    fn records_csv_round_trip() {
        let record = RobustnessRecord {
            network_id: "n".into(),
            interaction_type: InteractionType::PlantAnt,
            k_added: 3,
            added_fraction: 0.3,
            replicate: 2,
            seed: 42,
            metric: MetricId::LargestEigenvalue,
            value: 4.000000000000001,
        };
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("records.csv");
        write_records_csv(&path, &[record.clone()]).unwrap();
        let back = read_records_csv(&path).unwrap();
        assert_eq!(back, vec![record]);
        let text = fs::read_to_string(&path).unwrap();
        assert!(!text.contains('\r'));
    }
}
