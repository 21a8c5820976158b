//! Named verification suites. Every suite id maps to one module operation
//! chain; reports are deterministic given inputs.

mod dcat;
mod ez;
mod hammocks;
mod inj;
mod lc;
mod pure;
mod sdx;
mod tables;

use crate::report::Report;
use sct_core::error::Error;

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub corpus: String,
    pub dim: usize,
    pub max_size: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            corpus: "builtin".to_string(),
            dim: 4,
            max_size: 5,
            seed: 0x5eed,
        }
    }
}

pub const SUITE_IDS: &[&str] = &[
    "ez",
    "inj",
    "lem3",
    "lem4",
    "dm-pushout",
    "prop2",
    "li-table",
    "li-assoc",
    "lc-consistency",
    "hammock-discrete",
    "pure-split",
    "ex-sd",
];

pub fn run_suite(id: &str, opts: &SuiteOptions) -> Result<Report, Error> {
    match id {
        "ez" => Ok(ez::run(opts)),
        "inj" => Ok(inj::run(opts)),
        "lem3" => Ok(dcat::run_lem3(opts)),
        "lem4" => Ok(dcat::run_lem4(opts)),
        "dm-pushout" => Ok(dcat::run_dm_pushout(opts)),
        "prop2" => Ok(dcat::run_prop2(opts)),
        "li-table" => Ok(tables::run_table(opts)),
        "li-assoc" => Ok(tables::run_assoc(opts)),
        "lc-consistency" => Ok(lc::run(opts)),
        "hammock-discrete" => Ok(hammocks::run(opts)),
        "pure-split" => Ok(pure::run(opts)),
        "ex-sd" => Ok(sdx::run(opts)),
        other => Err(Error::Parameter(format!("unknown suite {other}"))),
    }
}
