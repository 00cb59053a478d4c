//! Bundled reference data: the τ-case table, the expected classification
//! table and the worked examples, embedded at compile time from `data/`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::classifier::TauCase;

const TABLE2: &str = include_str!("../data/table2.json");
const TABLE1: &str = include_str!("../data/table1.json");
const FIXTURES: &str = include_str!("../data/fixtures.json");

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("{file}: {source}")]
    Json {
        file: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{file}: {message}")]
    Invalid { file: String, message: String },
}

/// One expected row of the classification table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Row {
    pub id: String,
    pub case: String,
    pub n_sigma: u32,
    pub k_sigma: u32,
    pub g_sigma: Option<u32>,
    pub r: u32,
    pub l: u32,
    /// `(a_{2,8}, a_{3,7}, a_{4,6}, a_{5,5})`, when stated.
    pub a: Option<[u32; 4]>,
    pub anchor: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BisectionExpectation {
    Genus { genus: u32 },
    Splits(SplitsTag),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitsTag {
    Splits,
}

/// A count stated in prose that is compared, not asserted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TextCount {
    pub kodaira: String,
    pub count: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationFixture {
    pub id: String,
    pub a: String,
    pub b: String,
    pub base_order: u32,
    /// Kodaira symbol to number of places, when the full census is expected.
    pub fibers: Option<BTreeMap<String, u32>>,
    pub infinity: String,
    pub euler_total: u32,
    pub bisection: Option<BisectionExpectation>,
    #[serde(default)]
    pub text_count: Option<TextCount>,
    pub anchor: String,
}

/// `Σ lhs = Σ rhs` with the key `"1"` for the constant term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationFixture {
    pub lhs: BTreeMap<String, i64>,
    pub rhs: BTreeMap<String, i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzFixture {
    pub id: String,
    pub order: u32,
    pub k: u32,
    pub curve_points: bool,
    pub cube_isolated_only: bool,
    pub curve_term: bool,
    /// Expected admissible types `(i, j)`.
    pub types: Vec<(u32, u32)>,
    /// `None` means the system is expected to be inconsistent.
    pub relations: Option<Vec<RelationFixture>>,
    pub anchor: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialFixture {
    pub id: String,
    pub order: u32,
    pub weights: Vec<u32>,
    pub degree: u32,
    pub character: u32,
    pub monomials: Option<Vec<Vec<u32>>>,
    /// Coordinate points expected to fail the screen.
    pub screen_singular: Vec<usize>,
    pub anchor: String,
}

#[derive(Debug, Deserialize)]
struct Table2File {
    version: u32,
    cases: Vec<TauCase>,
}

#[derive(Debug, Deserialize)]
struct Table1File {
    version: u32,
    rows: Vec<Table1Row>,
}

#[derive(Debug, Deserialize)]
struct FixturesFile {
    version: u32,
    lefschetz: Vec<LefschetzFixture>,
    fibrations: Vec<FibrationFixture>,
    monomials: Vec<MonomialFixture>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FileDigest {
    pub file: String,
    pub version: u32,
    pub sha256: String,
}

#[derive(Debug, Clone)]
pub struct PaperDataset {
    pub table2: Vec<TauCase>,
    pub table1: Vec<Table1Row>,
    pub lefschetz: Vec<LefschetzFixture>,
    pub fibrations: Vec<FibrationFixture>,
    pub monomials: Vec<MonomialFixture>,
    pub digests: Vec<FileDigest>,
}

fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn parse<T: serde::de::DeserializeOwned>(file: &str, text: &str) -> Result<T, DatasetError> {
    serde_json::from_str(text).map_err(|source| DatasetError::Json {
        file: file.to_string(),
        source,
    })
}

impl PaperDataset {
    /// Builds a dataset from the three JSON documents.
    pub fn from_json(table2: &str, table1: &str, fixtures: &str) -> Result<Self, DatasetError> {
        let t2: Table2File = parse("table2.json", table2)?;
        let t1: Table1File = parse("table1.json", table1)?;
        let fx: FixturesFile = parse("fixtures.json", fixtures)?;
        for tc in &t2.cases {
            tc.validate().map_err(|message| DatasetError::Invalid {
                file: "table2.json".into(),
                message,
            })?;
        }
        for row in &t1.rows {
            if !t2.cases.iter().any(|tc| tc.id == row.case) {
                return Err(DatasetError::Invalid {
                    file: "table1.json".into(),
                    message: format!("row {} refers to unknown case {}", row.id, row.case),
                });
            }
        }
        let digests = vec![
            FileDigest {
                file: "table2.json".into(),
                version: t2.version,
                sha256: sha256_hex(table2),
            },
            FileDigest {
                file: "table1.json".into(),
                version: t1.version,
                sha256: sha256_hex(table1),
            },
            FileDigest {
                file: "fixtures.json".into(),
                version: fx.version,
                sha256: sha256_hex(fixtures),
            },
        ];
        Ok(PaperDataset {
            table2: t2.cases,
            table1: t1.rows,
            lefschetz: fx.lefschetz,
            fibrations: fx.fibrations,
            monomials: fx.monomials,
            digests,
        })
    }

    /// The bundled data with `table1` replaced.
    pub fn with_table1(table1: &str) -> Result<Self, DatasetError> {
        PaperDataset::from_json(TABLE2, table1, FIXTURES)
    }

    pub fn case(&self, id: &str) -> Option<&TauCase> {
        self.table2.iter().find(|tc| tc.id == id)
    }
}

/// The dataset compiled into the crate.
pub fn bundled() -> &'static PaperDataset {
    static DATA: OnceLock<PaperDataset> = OnceLock::new();
    DATA.get_or_init(|| {
        PaperDataset::from_json(TABLE2, TABLE1, FIXTURES).expect("bundled data is valid")
    })
}

/// Raw text of the bundled expected classification table.
pub fn bundled_table1_json() -> &'static str {
    TABLE1
}
