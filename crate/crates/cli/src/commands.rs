//! Subcommand bodies.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use plexmesh::distribute::{migrate, Migration};
use plexmesh::partition::{build_dual_graph, partition_stats, PartitionMethod};
use plexmesh::renumber::{apply_permutation, rcm_ordering};
use plexmesh::sparsity::p1_pattern;
use plexmesh::{Field, MeshBundle, RankLocalMesh, Section};

use crate::report::{
    BenchOutput, BenchReport, DistributeReport, InfoReport, Ordering, PartitionReport,
    ReorderReport, SpyReport, Timing, Workflow,
};
use crate::{emit, load, save, split, CliError, CliResult};

pub fn info(file: &Path, out: &mut dyn Write) -> CliResult<()> {
    let b = load(file)?;
    let plex = &b.plex;
    emit(
        &InfoReport {
            dim: plex.dim(),
            points: plex.chart_size(),
            depth_strata: plex.depth_stratum_sizes(),
            height_strata: plex.height_stratum_sizes(),
            cells: plex.num_cells(),
            vertices: plex.num_vertices(),
            regions: b.region.marker_counts(),
            boundary_markers: b.boundary.marker_counts(),
        },
        out,
    )
}

pub fn partition(
    file: &Path,
    nparts: usize,
    method: PartitionMethod,
    csv: Option<&Path>,
    out: &mut dyn Write,
) -> CliResult<()> {
    let b = load(file)?;
    let graph = build_dual_graph(&b.plex)?;
    let map = split(&b, nparts, method)?;
    let stats = partition_stats(&graph, &map)?;
    if let Some(path) = csv {
        let mut w = BufWriter::new(create(path)?);
        writeln!(w, "cell,rank")?;
        for (cell, rank) in map.ranks.iter().enumerate() {
            writeln!(w, "{cell},{rank}")?;
        }
        w.flush()?;
    }
    emit(
        &PartitionReport {
            nparts,
            method,
            cells: graph.num_nodes(),
            dual_edges: graph.num_edges(),
            edge_cut: stats.edge_cut,
            imbalance: stats.imbalance,
            part_sizes: map.part_sizes(),
        },
        out,
    )
}

pub fn distribute(
    file: &Path,
    nparts: usize,
    method: PartitionMethod,
    dir: Option<&Path>,
    out: &mut dyn Write,
) -> CliResult<()> {
    let b = load(file)?;
    let map = split(&b, nparts, method)?;
    let m = migrate(&b, &map, nparts, &[])?;
    let summary = DistributeReport {
        nparts,
        method,
        total_bytes: m.report.total(),
        migration: m.report.clone(),
        owned_cells: m.locals.iter().map(|l| l.owned_cells.len()).collect(),
        ghost_points: m.locals.iter().map(|l| l.ghost_points.len()).collect(),
    };
    if let Some(dir) = dir {
        fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
        for local in &m.locals {
            save(&local.bundle, &dir.join(format!("rank{}.msh", local.rank)))?;
        }
        write_json(&dir.join("sf.json"), &m.star_forest.to_sidecar())?;
        write_json(&dir.join("report.json"), &summary)?;
    }
    emit(&summary, out)
}

pub fn reorder(file: &Path, dest: Option<&Path>, out: &mut dyn Write) -> CliResult<()> {
    let b = load(file)?;
    let before = p1_pattern(&b);
    let reordered = apply_permutation(&b, &rcm_ordering(&b.plex))?;
    let after = p1_pattern(&reordered);
    if let Some(path) = dest {
        save(&reordered, path)?;
    }
    emit(
        &ReorderReport {
            vertices: before.n(),
            nnz: before.nnz(),
            bandwidth_before: before.bandwidth(),
            bandwidth_after: after.bandwidth(),
            profile_before: before.profile(),
            profile_after: after.profile(),
        },
        out,
    )
}

pub fn spy(file: &Path, rcm: bool, dest: Option<&Path>, out: &mut dyn Write) -> CliResult<()> {
    let mut b = load(file)?;
    if rcm {
        b = apply_permutation(&b, &rcm_ordering(&b.plex))?;
    }
    let pattern = p1_pattern(&b);
    match dest {
        None => {
            pattern.write_spy(&mut *out)?;
            Ok(())
        }
        Some(path) => {
            let mut w = BufWriter::new(create(path)?);
            pattern.write_spy(&mut w)?;
            w.flush()?;
            emit(
                &SpyReport {
                    ordering: if rcm { Ordering::Rcm } else { Ordering::Input },
                    rows: pattern.n(),
                    nnz: pattern.nnz(),
                    bandwidth: pattern.bandwidth(),
                    profile: pattern.profile(),
                },
                out,
            )
        }
    }
}

/// `k` P1 fields over `bundle`; field `i` at a vertex holds `i` plus the
/// sum of its coordinates.
pub fn synthetic_p1_fields(bundle: &MeshBundle, k: usize) -> CliResult<Vec<Field>> {
    let plex = &bundle.plex;
    let mut per_depth = vec![0; plex.dim() + 1];
    per_depth[0] = 1;
    let section = Section::from_depth_dofs(plex, &per_depth)?;
    (0..k)
        .map(|i| {
            let values = plex
                .vertices()
                .iter()
                .map(|&v| i as f64 + bundle.vertex_coordinates(v).iter().sum::<f64>())
                .collect();
            Ok(Field::new(format!("p1_{i}"), section.clone(), values)?)
        })
        .collect()
}

/// Runs one start-up workflow: read, partition, migrate, then renumber
/// every rank locally. Only the preprocessor path carries fields.
pub fn run_workflow(
    file: &Path,
    nparts: usize,
    nfields: usize,
    method: PartitionMethod,
    workflow: Workflow,
) -> CliResult<BenchReport> {
    let total = Instant::now();
    let t = Instant::now();
    let b = load(file)?;
    let read = t.elapsed().as_secs_f64();

    let t = Instant::now();
    let map = split(&b, nparts, method)?;
    let partition = t.elapsed().as_secs_f64();

    let t = Instant::now();
    let fields = match workflow {
        Workflow::Preprocessor => synthetic_p1_fields(&b, nfields)?,
        Workflow::RuntimeDistribute => Vec::new(),
    };
    let Migration { locals, report, .. } = migrate(&b, &map, nparts, &fields)?;
    let migrate_time = t.elapsed().as_secs_f64();

    let t = Instant::now();
    let renumbered = locals
        .iter()
        .map(|l| l.permute(&rcm_ordering(&l.bundle.plex)))
        .collect::<plexmesh::Result<Vec<RankLocalMesh>>>()?;
    drop(renumbered);
    let reorder = t.elapsed().as_secs_f64();

    Ok(BenchReport {
        workflow,
        nparts,
        fields: fields.len(),
        total_bytes: report.total(),
        migration: report,
        timing: Timing {
            read,
            partition,
            migrate: migrate_time,
            reorder,
            total: total.elapsed().as_secs_f64(),
        },
    })
}

pub fn bench(
    file: &Path,
    nparts: usize,
    nfields: usize,
    method: PartitionMethod,
    out: &mut dyn Write,
) -> CliResult<()> {
    let reports = [Workflow::Preprocessor, Workflow::RuntimeDistribute]
        .into_iter()
        .map(|w| run_workflow(file, nparts, nfields, method, w))
        .collect::<CliResult<Vec<_>>>()?;
    emit(&BenchOutput { reports }, out)
}

fn create(path: &Path) -> CliResult<File> {
    File::create(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write_json<S: serde::Serialize>(path: &Path, value: &S) -> CliResult<()> {
    let mut w = BufWriter::new(create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}
