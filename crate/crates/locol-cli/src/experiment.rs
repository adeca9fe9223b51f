//! Benchmark sweeps: one measurement row per (family, size) cell, every
//! coloring verified before it is recorded. Cells are independent and may run
//! on multiple threads (`LOCOL_WORKERS`); the worker count never affects the
//! rows, only wall-clock time.

use std::sync::Mutex;

use locol::{
    assign_ids, gps_vertex_coloring, parallel_vizing_edge_coloring, pr_baseline_edge_coloring,
    verify_edge_coloring, verify_vertex_coloring, Graph,
};

use crate::{Algorithm, Family, RunArgs};

pub(crate) struct ExperimentSpec {
    pub family: Family,
    pub sizes: Vec<usize>,
    pub algorithm: Algorithm,
    pub run: RunArgs,
}

pub(crate) const CSV_HEADER: &str = "family,n,delta,R,algorithm,palette_used,\
total_rounds_optimistic,total_rounds_faithful,escalations,max_chain_size,verified";

/// Runs every sweep cell and renders the CSV (header always present, rows in
/// size order). Any verification failure aborts the whole sweep.
pub(crate) fn run_experiment(spec: &ExperimentSpec) -> Result<String, String> {
    let workers = std::env::var("LOCOL_WORKERS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&w| w >= 1)
        .unwrap_or(1);
    let results: Mutex<Vec<(usize, Result<String, String>)>> = Mutex::new(Vec::new());
    let next: Mutex<usize> = Mutex::new(0);
    std::thread::scope(|scope| {
        for _ in 0..workers.min(spec.sizes.len().max(1)) {
            scope.spawn(|| loop {
                let idx = {
                    let mut next = next.lock().unwrap();
                    if *next >= spec.sizes.len() {
                        break;
                    }
                    *next += 1;
                    *next - 1
                };
                let row = run_cell(spec, spec.sizes[idx]);
                results.lock().unwrap().push((idx, row));
            });
        }
    });
    let mut rows = results.into_inner().unwrap();
    rows.sort_by_key(|&(idx, _)| idx);
    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for (_, row) in rows {
        csv.push_str(&row?);
        csv.push('\n');
    }
    Ok(csv)
}

fn run_cell(spec: &ExperimentSpec, size: usize) -> Result<String, String> {
    let g = spec.family.build(size)?;
    let ids = assign_ids(&g, spec.run.id_scheme());
    let delta = {
        use locol::Topology;
        g.max_degree()
    };
    let n = {
        use locol::Topology;
        g.vertex_count()
    };
    let (radius, palette_used, opt, faith, escalations, max_chain) = match spec.algorithm {
        Algorithm::Main => {
            let report = parallel_vizing_edge_coloring(&g, &ids, &spec.run.config())
                .map_err(|e| format!("n={size}: {e}"))?;
            check_edges(&g, &report.coloring, report.palette_size, size)?;
            (
                report.initial_radius,
                report.colors_used,
                report.total_rounds_optimistic,
                report.total_rounds_faithful,
                report.escalations,
                report.max_chain_size(),
            )
        }
        Algorithm::Baseline => {
            let (coloring, transcript) = pr_baseline_edge_coloring(&g, &ids);
            check_edges(&g, &coloring, coloring.palette_size(), size)?;
            let total = transcript.total_rounds();
            (0, coloring.colors_used(), total, total, 0, 0)
        }
        Algorithm::Gps => {
            let (vc, transcript) = gps_vertex_coloring(&g, &ids);
            let violations = verify_vertex_coloring(&g, &vc);
            if !violations.is_empty() {
                return Err(format!(
                    "n={size}: vertex coloring has {} violations",
                    violations.len()
                ));
            }
            let total = transcript.total_rounds();
            (0, vc.palette_size, total, total, 0, 0)
        }
    };
    Ok(format!(
        "{},{n},{delta},{radius},{},{palette_used},{opt},{faith},{escalations},{max_chain},true",
        spec.family.name(),
        spec.algorithm.name(),
    ))
}

fn check_edges(
    g: &Graph,
    coloring: &locol::PartialEdgeColoring,
    palette: usize,
    size: usize,
) -> Result<(), String> {
    let violations = verify_edge_coloring(g, coloring, palette, true);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(format!(
            "n={size}: edge coloring has {} violations: {:?}",
            violations.len(),
            violations.iter().take(5).collect::<Vec<_>>()
        ))
    }
}
