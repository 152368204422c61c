use std::collections::HashSet;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

use super::commands::{default_l_range, dim_record, expected_label, sing_label};
use super::config::{parse_config, RunConfig};
use super::record::{append_new, field_name, read_records, RecordKey, SweepRecord};
use super::{usage, CliError, Outcome, EXIT_DISAGREEMENT, EXIT_OK};
use crate::algebra::{Field, Scalar};
use crate::interpolation::{random_member, sample_config, specialized_dim};
use crate::numerology::SpecializedSpec;

/// Slices tried by the surface probe inside a sweep.
const SWEEP_SLICES: usize = 4;

/// One unit of work: a spec, a field and a seed.
#[derive(Clone, Copy, Debug)]
struct Cell {
    d: u32,
    n: u32,
    l: u32,
    h: u32,
    field: Field,
    seed: u64,
}

impl Cell {
    fn key(&self) -> RecordKey {
        RecordKey {
            command: "sweep".into(),
            spec: (self.d, self.n, Some(self.l), Some(self.h), None),
            field: field_name(self.field),
            seed: self.seed,
        }
    }
}

/// Cells in a fixed order; trial `t` of the run uses seed `seed + t`.
fn cells(cfg: &RunConfig) -> Vec<Cell> {
    let mut out = Vec::new();
    for d in cfg.d.clone() {
        for n in cfg.n.clone() {
            for l in cfg.l.clone().unwrap_or_else(|| default_l_range(d, n)) {
                for h in cfg.h.clone().filter(|&h| h <= l) {
                    for field in cfg.fields() {
                        for t in 0..cfg.trials {
                            out.push(Cell {
                                d,
                                n,
                                l,
                                h,
                                field,
                                seed: cfg.seed + u64::from(t),
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

fn run_cell(c: Cell) -> SweepRecord {
    let t0 = Instant::now();
    let mut rec = match measure(c) {
        Ok(r) => r,
        Err(msg) => {
            let mut r = SweepRecord::new("sweep", c.d, c.n, c.field, c.seed).with("error", msg);
            r.l = Some(c.l);
            r.h = Some(c.h);
            r
        }
    };
    rec.wall_ms = t0.elapsed().as_millis() as u64;
    rec
}

fn measure(c: Cell) -> Result<SweepRecord, String> {
    let spec = SpecializedSpec::of(c.d, c.n, c.l, c.h).map_err(|e| e.to_string())?;
    let r = specialized_dim(spec, c.field, 1, c.seed).map_err(|e| e.to_string())?;
    let mut rec = dim_record("sweep", &r, 0);
    let probe = c.h == 0 && (2..=3).contains(&c.n) && c.d >= 2 && r.actual >= 0;
    if probe && matches!(c.field, Field::Prime(_)) {
        let config = sample_config(spec, c.field, c.seed).map_err(|e| e.to_string())?;
        let f = random_member(spec, &config, c.seed + 1).map_err(|e| e.to_string())?;
        let points: Vec<Vec<Scalar>> = config.points().cloned().collect();
        let label = sing_label(&f, &points, SWEEP_SLICES, c.seed).map_err(|e| e.to_string())?;
        rec = rec.with("sing", label);
        if let Some(e) = expected_label(spec.base) {
            rec = rec.with("sing_agreement", e == label);
        }
    }
    Ok(rec)
}

/// True when a dimension or a singularity label contradicts its prediction.
pub(super) fn disagrees(r: &SweepRecord) -> bool {
    let no = Some(&serde_json::Value::Bool(false));
    r.outcome.get("agreement") == no || r.outcome.get("sing_agreement") == no
}

pub(super) fn sweep(out: &mut dyn Write, config: &Path, path: Option<PathBuf>) -> Outcome {
    let text = std::fs::read_to_string(config)?;
    let cfg = parse_config(&text)?;
    let target = path
        .or_else(|| cfg.out.clone())
        .ok_or_else(|| usage("no output path: pass --out or set `out` in the config"))?;
    OpenOptions::new().create(true).append(true).open(&target)?;
    let seen: HashSet<RecordKey> = read_records(&target)?.iter().map(|r| r.key()).collect();

    let all = cells(&cfg);
    let todo: Vec<Cell> = all.iter().copied().filter(|c| !seen.contains(&c.key())).collect();
    let records: Vec<SweepRecord> = todo.par_iter().map(|&c| run_cell(c)).collect();
    let written = append_new(&target, &records).map_err(CliError::from)?;

    let failed = records.iter().filter(|r| r.outcome.contains_key("error")).count();
    let disagreements = records
        .iter()
        .filter(|r| disagrees(r))
        .count();
    writeln!(
        out,
        "cells: {}, new records: {written}, skipped: {}, failed: {failed}, disagreements: {disagreements}",
        all.len(),
        all.len() - todo.len()
    )?;
    Ok(if disagreements == 0 {
        EXIT_OK
    } else {
        EXIT_DISAGREEMENT
    })
}
