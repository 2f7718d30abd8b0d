//! Elliptic fibrations from primitive embeddings of M = D5 ⊕ A1 into
//! Niemeier lattices.
//!
//! For each embedding the frame W = M⊥ is computed inside the realized
//! Niemeier lattice. The Mordell-Weil rank is `18 − rank W_root` and the
//! torsion is `W̄_root / W_root`, with W̄_root the primitive closure in L.

mod embedding;
mod frame;
mod partner;
mod table;

use k3fib_lattice::{DynkinType, LatticeError};
use k3fib_niemeier::{find, realize, NiemeierError, HOST_ORDER};
use serde::Serialize;
use thiserror::Error;

pub use embedding::{all_placements, candidate_embeddings, m_gram, placement_classes, EmbeddingSpec, Placement};
pub use frame::{frame, mw_rank, mw_torsion, Frame};
pub use partner::{discriminant_forms_isomorphic, partner_matches};
pub use table::{match_table, normalize_fibers, rows_with_fibers, FibrationRow, RowMatch, FIBRATION_TABLE};

#[derive(Debug, Error)]
pub enum NishiyamaError {
    #[error("{host}, {embedding}: {what}")]
    Invariant { host: String, embedding: String, what: String },
    #[error("expected 30 fibrations, found {found}; {detail}")]
    Count { found: usize, detail: String },
    #[error(transparent)]
    Niemeier(#[from] NiemeierError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibrationRecord {
    pub host: String,
    pub embedding: String,
    pub placement: Placement,
    pub reducible_fibers: Vec<DynkinType>,
    pub fibers: String,
    pub mw_rank: usize,
    pub mw_torsion: Vec<u64>,
    pub det_n: String,
    pub wn_order: usize,
}

impl FibrationRecord {
    pub fn torsion_label(&self) -> String {
        k3fib_niemeier::group_label(&self.mw_torsion)
    }
}

pub fn record(f: &Frame, spec: &EmbeddingSpec) -> FibrationRecord {
    let types = f.w_root.types();
    FibrationRecord {
        host: f.host.clone(),
        embedding: spec.description.clone(),
        placement: spec.placement,
        fibers: types.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" "),
        reducible_fibers: types,
        mw_rank: mw_rank(f),
        mw_torsion: mw_torsion(f),
        det_n: f.n.det().to_string(),
        wn_order: f.wn_quotient.len(),
    }
}

/// All fibrations coming from one host, in candidate order.
pub fn host_records(id: &str) -> Result<Vec<FibrationRecord>, NishiyamaError> {
    let host = find(id)?;
    let r = realize(&host)?;
    candidate_embeddings(&host).iter().map(|s| Ok(record(&frame(&r, s)?, s))).collect()
}

fn check_count(records: Vec<FibrationRecord>) -> Result<Vec<FibrationRecord>, NishiyamaError> {
    if records.len() == 30 {
        return Ok(records);
    }
    let matches = match_table(&records);
    let extra: Vec<String> = matches.iter().filter(|m| m.row.is_none()).map(|m| format!("extra {} {}", m.host, m.fibers)).collect();
    let missing: Vec<String> = (0..FIBRATION_TABLE.len())
        .filter(|i| !matches.iter().any(|m| m.row == Some(*i)))
        .map(|i| format!("missing {} {}", FIBRATION_TABLE[i].host, FIBRATION_TABLE[i].fibers))
        .collect();
    Err(NishiyamaError::Count { found: records.len(), detail: [extra, missing].concat().join("; ") })
}

/// Every fibration, hosts in tabulation order. `jobs = 1` runs sequentially,
/// `jobs = 0` uses the default thread pool.
pub fn enumerate_all_with(jobs: usize) -> Result<Vec<FibrationRecord>, NishiyamaError> {
    let per_host: Vec<Vec<FibrationRecord>> = run_hosts(jobs)?;
    check_count(per_host.into_iter().flatten().collect())
}

pub fn enumerate_all() -> Result<Vec<FibrationRecord>, NishiyamaError> {
    enumerate_all_with(0)
}

#[cfg(feature = "parallel")]
fn run_hosts(jobs: usize) -> Result<Vec<Vec<FibrationRecord>>, NishiyamaError> {
    use rayon::prelude::*;
    if jobs == 1 {
        return HOST_ORDER.iter().map(|id| host_records(id)).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
    pool.install(|| HOST_ORDER.par_iter().map(|id| host_records(id)).collect())
}

#[cfg(not(feature = "parallel"))]
fn run_hosts(_jobs: usize) -> Result<Vec<Vec<FibrationRecord>>, NishiyamaError> {
    HOST_ORDER.iter().map(|id| host_records(id)).collect()
}
