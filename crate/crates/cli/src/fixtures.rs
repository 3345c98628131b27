//! Data embedded at build time: the published popularity tables and the
//! OEIS prefixes. Both files carry provenance notes next to their values.

use airpocket::{FamilyId, GfId, StatId};
use serde::Deserialize;

const TABLES: &str = include_str!("../fixtures/tables.json");
const OEIS: &str = include_str!("../fixtures/oeis.json");

#[derive(Debug, Clone, Deserialize)]
pub struct TablesFixture {
    #[allow(dead_code)]
    pub provenance: String,
    pub tables: Vec<Table>,
    pub errata: Vec<Erratum>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Table {
    pub name: String,
    pub family: FamilyId,
    pub first_n: usize,
    pub rows: Vec<TableRow>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct TableRow {
    pub label: String,
    pub stat: StatId,
    pub gf: GfId,
    pub values: Vec<u64>,
}

/// A printed table entry that computation contradicts.
#[derive(Debug, Clone, Deserialize)]
pub struct Erratum {
    pub table: String,
    pub row: String,
    pub n: usize,
    pub printed: u64,
    pub computed: u64,
    pub note: String,
}

impl TablesFixture {
    pub fn erratum(&self, table: &str, row: &str, n: usize) -> Option<&Erratum> {
        self.errata
            .iter()
            .find(|e| e.table == table && e.row == row && e.n == n)
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct OeisFixture {
    pub id: String,
    pub name: String,
    /// `count FAMILY`, `series GFID` or `grading CATALAN|RIORDAN`.
    pub source: String,
    /// Our size parameter is the sequence index plus this.
    pub shift: i64,
    pub segments: Vec<Segment>,
}

/// Consecutive values starting at index `start`, all with one provenance.
#[derive(Debug, Clone, Deserialize)]
pub struct Segment {
    pub start: i64,
    pub provenance: String,
    pub values: Vec<String>,
}

impl OeisFixture {
    /// `(index, value)` pairs of the whole prefix.
    pub fn prefix(&self) -> Vec<(i64, String)> {
        self.segments
            .iter()
            .flat_map(|s| {
                s.values
                    .iter()
                    .enumerate()
                    .map(move |(i, v)| (s.start + i as i64, v.clone()))
            })
            .collect()
    }
}

pub fn tables() -> TablesFixture {
    serde_json::from_str(TABLES).expect("embedded tables fixture parses")
}

pub fn oeis() -> Vec<OeisFixture> {
    serde_json::from_str(OEIS).expect("embedded OEIS fixture parses")
}
