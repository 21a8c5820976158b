//! Suites around the one-free-arrow replacement: the explicit pushout at
//! stage zero, the filtration squares, the nerve comparison isomorphism,
//! and the quasi-category checks that stand in for the pushout of
//! categories.

use std::collections::BTreeMap;

use crate::corpus::{builtin_categories, builtin_marked_categories};
use crate::report::Report;
use crate::suites::SuiteOptions;
use sct_core::constructions::{d_category, d_filtration, dinfty, dinfty_iso, MarkedCategory};
use sct_core::fincat::{find_isomorphism, homotopy_category, nerve, terminal_category};
use sct_core::quasicat::is_quasicategory;
use sct_core::simpset::{
    find_sset_isomorphism, make_standard, pushout, SimplexRef, SimplicialMap, StandardKind,
};

fn plain_pushout_object(
    m: &MarkedCategory,
    dim: usize,
) -> Result<sct_core::simpset::SimplicialSet, sct_core::Error> {
    let c_nerve = nerve(&m.category, dim)?;
    let d0 = make_standard(StandardKind::Delta, 0)?.with_cap(dim)?;
    let d1 = make_standard(StandardKind::Delta, 1)?.with_cap(dim)?;
    let mark = c_nerve
        .lookup(m.category.object_name(m.mark))
        .expect("mark vertex");
    let to_c = SimplicialMap::new(
        d0.clone(),
        c_nerve.clone(),
        BTreeMap::from([(d0.lookup("0").unwrap(), SimplexRef::nondeg(mark))]),
    )?;
    let to_edge = SimplicialMap::new(
        d0.clone(),
        d1.clone(),
        BTreeMap::from([(
            d0.lookup("0").unwrap(),
            SimplexRef::nondeg(d1.lookup("0").unwrap()),
        )]),
    )?;
    Ok(pushout(&to_c, &to_edge)?.object)
}

/// Stage zero of the filtration is the plain pushout, level by level.
pub fn run_lem4(opts: &SuiteOptions) -> Report {
    let mut report = Report::new("lem4");
    let dim = opts.dim;
    for m in builtin_marked_categories() {
        let label = format!(
            "{}@{}",
            m.category.name,
            m.category.object_name(m.mark)
        );
        report.check(format!("pushout-vs-stage0[{label}]"), || {
            let po = plain_pushout_object(&m, dim)?;
            let f0 = d_filtration(&m, 0, dim)?.stage;
            for n in 0..=dim {
                let (a, b) = (po.level_count(n)?, f0.level_count(n)?);
                if a != b {
                    return Ok((false, format!("level {n}: {a} vs {b}")));
                }
            }
            if find_sset_isomorphism(&po, &f0)?.is_none() {
                return Ok((false, "level counts match but no isomorphism".to_string()));
            }
            Ok((true, format!("bijective through dimension {dim}")))
        });
    }
    report
}

/// The comparison isomorphism with the nerve of the gluing category.
pub fn run_lem3(opts: &SuiteOptions) -> Report {
    let mut report = Report::new("lem3");
    let dim = opts.dim;
    let marked = builtin_marked_categories();
    let count = marked.len();
    for m in marked {
        let label = format!(
            "{}@{}",
            m.category.name,
            m.category.object_name(m.mark)
        );
        report.check(format!("nerve-iso[{label}]"), || {
            // Self-verifying: errors when not bijective or incompatible.
            let map = dinfty_iso(&m, dim)?;
            Ok((true, format!("levels 0..={} bijective", map.source.dim_cap())))
        });
    }
    report.check("terminal-level-formula", || {
        let m = MarkedCategory::new(terminal_category(), "pt")?;
        let d = dinfty(&m, dim)?;
        for n in 0..=dim {
            if d.level_count(n)? != n + 2 {
                return Ok((false, format!("level {n} is {}", d.level_count(n)?)));
            }
        }
        Ok((true, format!("|level n| = n+2 for n ≤ {dim}")))
    });
    report.check("corpus-size", || {
        Ok((count == 6, format!("{count} marked categories checked")))
    });
    report
}

/// Every filtration square is a genuine pushout level-wise.
pub fn run_dm_pushout(_opts: &SuiteOptions) -> Report {
    let mut report = Report::new("dm-pushout");
    for m in builtin_marked_categories() {
        let label = format!(
            "{}@{}",
            m.category.name,
            m.category.object_name(m.mark)
        );
        for stage in 1..=3usize {
            report.check(format!("square[{label},m={stage}]"), || {
                let f = d_filtration(&m, stage, stage + 2)?;
                let sq = f.square.expect("stage ≥ 1");
                sct_core::constructions::dinfty::verify_filtration_square(&sq)?;
                Ok((
                    true,
                    format!("pushout verified through dimension {}", stage + 2),
                ))
            });
        }
    }
    report
}

/// Desk reading of the pushout of categories: the replacement is a
/// quasi-category whose homotopy category is the gluing category, nerves
/// fill inner horns uniquely, and the standard horn itself fails.
pub fn run_prop2(opts: &SuiteOptions) -> Report {
    let mut report = Report::new("prop2");
    let dim = opts.dim.max(4);
    for m in builtin_marked_categories() {
        let label = format!(
            "{}@{}",
            m.category.name,
            m.category.object_name(m.mark)
        );
        report.check(format!("replacement-is-quasicategory[{label}]"), || {
            let d = dinfty(&m, dim)?;
            let rep = is_quasicategory(&d, 3)?;
            Ok((
                rep.passed(),
                rep.first_unfilled().unwrap_or_else(|| "all inner horns fill".to_string()),
            ))
        });
        report.check(format!("homotopy-category-is-gluing[{label}]"), || {
            let d = dinfty(&m, dim)?;
            let ho = homotopy_category(&d)?;
            let target = d_category(&m)?;
            Ok((
                find_isomorphism(&ho, &target)?.is_some(),
                String::new(),
            ))
        });
    }
    for c in builtin_categories() {
        report.check(format!("nerve-unique-fillers[{}]", c.name), || {
            let n = nerve(&c, dim)?;
            let rep = is_quasicategory(&n, 3)?;
            Ok((
                rep.passed() && rep.unique_fillers(),
                format!(
                    "horn maps: {:?}",
                    rep.checks.iter().map(|ch| ch.horn_maps).collect::<Vec<_>>()
                ),
            ))
        });
    }
    report.check("standard-horn-fails", || {
        let h = make_standard(StandardKind::Horn(1), 2)?.with_cap(3)?;
        let rep = is_quasicategory(&h, 2)?;
        match rep.first_unfilled() {
            Some(w) => Ok((true, format!("witness {w}"))),
            None => Ok((false, "the horn filled its own inner horn".to_string())),
        }
    });
    report
}
