use k3fib_lattice::DynkinType;
use serde::Serialize;

use crate::FibrationRecord;

/// One tabulated fibration.
#[derive(Clone, Debug, Serialize)]
pub struct FibrationRow {
    pub host: &'static str,
    pub embedding: &'static str,
    pub fibers: &'static str,
    pub rank: usize,
    pub torsion: &'static [u64],
}

impl FibrationRow {
    pub fn fiber_types(&self) -> Vec<DynkinType> {
        normalize_fibers(self.fibers)
    }
}

/// Parses "E7 A3 E8" into a sorted multiset, with D3 read as A3 and D2 as A1 A1.
pub fn normalize_fibers(s: &str) -> Vec<DynkinType> {
    let mut out = Vec::new();
    for t in s.split_whitespace() {
        match t {
            "D3" => out.push("A3".parse().unwrap()),
            "D2" => {
                out.push("A1".parse().unwrap());
                out.push("A1".parse().unwrap());
            }
            _ => out.push(t.parse().expect("Dynkin label in fixture")),
        }
    }
    out.sort();
    out
}

pub const FIBRATION_TABLE: [FibrationRow; 30] = [
    FibrationRow { host: "E8^3", embedding: "A1⊂E8, D5⊂E8", fibers: "E7 A3 E8", rank: 0, torsion: &[] },
    FibrationRow { host: "E8^3", embedding: "A1⊕D5⊂E8", fibers: "A1 E8 E8", rank: 1, torsion: &[] },
    FibrationRow { host: "E8D16", embedding: "A1⊂E8, D5⊂D16", fibers: "E7 D11", rank: 0, torsion: &[] },
    FibrationRow { host: "E8D16", embedding: "A1⊕D5⊂E8", fibers: "A1 D16", rank: 1, torsion: &[2] },
    FibrationRow { host: "E8D16", embedding: "D5⊂E8, A1⊂D16", fibers: "A3 A1 D14", rank: 0, torsion: &[2] },
    FibrationRow { host: "E8D16", embedding: "A1⊕D5⊂D16", fibers: "E8 A1 D9", rank: 0, torsion: &[] },
    FibrationRow { host: "E7^2D10", embedding: "A1⊂E7, D5⊂D10", fibers: "E7 D6 D5", rank: 0, torsion: &[2] },
    // Z/2, not (0): the model has the 2-torsion section (0,0) and the
    // discriminant identity 32 · (1/4) = 8 · |tors|² forces |tors| = 2.
    FibrationRow { host: "E7^2D10", embedding: "A1⊂E7, D5⊂E7", fibers: "D6 A1 D10", rank: 1, torsion: &[2] },
    FibrationRow { host: "E7^2D10", embedding: "A1⊕D5⊂E7", fibers: "E7 D10", rank: 1, torsion: &[2] },
    FibrationRow { host: "E7^2D10", embedding: "A1⊕D5⊂D10", fibers: "E7 E7 A1 A3", rank: 0, torsion: &[2] },
    FibrationRow { host: "E7^2D10", embedding: "D5⊂E7, A1⊂D10", fibers: "A1 A1 D8 E7", rank: 1, torsion: &[2] },
    FibrationRow { host: "E7A17", embedding: "A1⊕D5⊂E7", fibers: "A17", rank: 1, torsion: &[3] },
    FibrationRow { host: "E7A17", embedding: "D5⊂E7, A1⊂A17", fibers: "A1 A15", rank: 2, torsion: &[] },
    FibrationRow { host: "D24", embedding: "A1⊕D5⊂D24", fibers: "A1 D17", rank: 0, torsion: &[] },
    FibrationRow { host: "D12^2", embedding: "A1⊂D12, D5⊂D12", fibers: "A1 D10 D7", rank: 0, torsion: &[2] },
    FibrationRow { host: "D12^2", embedding: "A1⊕D5⊂D12", fibers: "A1 D5 D12", rank: 0, torsion: &[2] },
    FibrationRow { host: "D8^3", embedding: "A1⊂D8, D5⊂D8", fibers: "A1 D6 A3 D8", rank: 0, torsion: &[2, 2] },
    FibrationRow { host: "D8^3", embedding: "A1⊕D5⊂D8", fibers: "A1 D8 D8", rank: 1, torsion: &[2] },
    FibrationRow { host: "D9A15", embedding: "A1⊕D5⊂D9", fibers: "A1 A1 A1 A15", rank: 0, torsion: &[4] },
    FibrationRow { host: "D9A15", embedding: "D5⊂D9, A1⊂A15", fibers: "D4 A13", rank: 1, torsion: &[] },
    FibrationRow { host: "E6^4", embedding: "A1⊂E6, D5⊂E6", fibers: "A5 E6 E6", rank: 1, torsion: &[3] },
    FibrationRow { host: "A11E6D7", embedding: "A1⊂E6, D5⊂D7", fibers: "A5 A1 A1 A11", rank: 0, torsion: &[6] },
    FibrationRow { host: "A11E6D7", embedding: "A1⊂A11, D5⊂D7", fibers: "A9 A1 A1 E6", rank: 1, torsion: &[] },
    FibrationRow { host: "A11E6D7", embedding: "A1⊕D5⊂D7", fibers: "A11 E6 A1", rank: 0, torsion: &[3] },
    FibrationRow { host: "A11E6D7", embedding: "A1⊂A11, D5⊂E6", fibers: "A9 D7", rank: 2, torsion: &[] },
    FibrationRow { host: "A11E6D7", embedding: "D5⊂E6, A1⊂D7", fibers: "A11 A1 D5", rank: 1, torsion: &[4] },
    FibrationRow { host: "D6^4", embedding: "A1⊂D6, D5⊂D6", fibers: "A1 D4 D6 D6", rank: 1, torsion: &[2, 2] },
    FibrationRow { host: "D6A9^2", embedding: "D5⊂D6, A1⊂A9", fibers: "A7 A9", rank: 2, torsion: &[] },
    FibrationRow { host: "D5^2A7^2", embedding: "D5⊂D5, A1⊂D5", fibers: "A1 A3 A7 A7", rank: 0, torsion: &[8] },
    FibrationRow { host: "D5^2A7^2", embedding: "D5⊂D5, A1⊂A7", fibers: "D5 A5 A7", rank: 1, torsion: &[] },
];

/// Outcome of matching one computed record against the table.
#[derive(Clone, Debug, Serialize)]
pub struct RowMatch {
    pub host: String,
    pub embedding: String,
    pub fibers: String,
    /// Index into `FIBRATION_TABLE` of the row with the same host and fibers.
    pub row: Option<usize>,
    pub rank_ok: bool,
    pub torsion_ok: bool,
}

impl RowMatch {
    pub fn ok(&self) -> bool {
        self.row.is_some() && self.rank_ok && self.torsion_ok
    }
}

/// Matches each record to the table row with the same host and fiber multiset.
pub fn match_table(records: &[FibrationRecord]) -> Vec<RowMatch> {
    records
        .iter()
        .map(|r| {
            let row = FIBRATION_TABLE.iter().position(|t| t.host == r.host && t.fiber_types() == r.reducible_fibers);
            let (rank_ok, torsion_ok) = match row {
                Some(i) => (FIBRATION_TABLE[i].rank == r.mw_rank, FIBRATION_TABLE[i].torsion == r.mw_torsion.as_slice()),
                None => (false, false),
            };
            RowMatch { host: r.host.clone(), embedding: r.embedding.clone(), fibers: r.fibers.clone(), row, rank_ok, torsion_ok }
        })
        .collect()
}

/// Looks up the table row for a fiber multiset, across all hosts.
pub fn rows_with_fibers(fibers: &[DynkinType]) -> Vec<usize> {
    let mut f = fibers.to_vec();
    f.sort();
    (0..FIBRATION_TABLE.len()).filter(|&i| FIBRATION_TABLE[i].fiber_types() == f).collect()
}
