//! Consistency of the two cone models at a single point: the glued cone is
//! the retraction nerve on the nose, it is a quasi-category, and its
//! homotopy category matches the explicit table.

use crate::report::Report;
use crate::suites::SuiteOptions;
use sct_core::constructions::{cone_with_retracts, localization_table, ret_category, ret_nerve};
use sct_core::fincat::{find_isomorphism, homotopy_category, Poset};
use sct_core::quasicat::is_quasicategory;
use sct_core::simpset::find_sset_isomorphism;

pub fn run(_opts: &SuiteOptions) -> Report {
    let mut report = Report::new("lc-consistency");
    report.check("cone-on-point-is-retraction-nerve", || {
        let l = cone_with_retracts(&Poset::point(), 4)?;
        let r = ret_nerve(4)?;
        Ok((
            find_sset_isomorphism(&l, &r)?.is_some(),
            String::new(),
        ))
    });
    report.check("cone-on-point-is-quasicategory", || {
        let l = cone_with_retracts(&Poset::point(), 4)?;
        let rep = is_quasicategory(&l, 3)?;
        Ok((
            rep.passed(),
            rep.first_unfilled().unwrap_or_default(),
        ))
    });
    report.check("homotopy-category-matches-table", || {
        let l = cone_with_retracts(&Poset::point(), 4)?;
        let ho = homotopy_category(&l)?;
        let table = localization_table(&Poset::point())?;
        let a = find_isomorphism(&ho, &table)?.is_some();
        let b = find_isomorphism(&table, &ret_category())?.is_some();
        Ok((
            a && b,
            format!("ho≅table: {a}; table≅Ret: {b}"),
        ))
    });
    report
}
